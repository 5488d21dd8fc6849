mod groups_basics_example {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/groups_basics.rs"));
}

#[test]
fn groups_basics_example_runs() {
    groups_basics_example::run_example().expect("groups_basics example should run");
}

mod automorphisms_example {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/automorphisms.rs"));
}

#[test]
fn automorphisms_example_runs() {
    automorphisms_example::run_example().expect("automorphisms example should run");
}

mod factor_systems_example {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/factor_systems.rs"));
}

#[test]
fn factor_systems_example_runs() {
    factor_systems_example::run_example().expect("factor_systems example should run");
}

mod cohomology_example {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/cohomology.rs"));
}

#[test]
fn cohomology_example_runs() {
    cohomology_example::run_example().expect("cohomology example should run");
}

mod compatible_pairs_example {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/compatible_pairs.rs"));
}

#[test]
fn compatible_pairs_example_runs() {
    compatible_pairs_example::run_example().expect("compatible_pairs example should run");
}

mod solvability_example {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/solvability.rs"));
}

#[test]
fn solvability_example_runs() {
    solvability_example::run_example().expect("solvability example should run");
}

mod catalog_io_example {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/catalog_io.rs"));
}

#[test]
fn catalog_io_example_runs() {
    catalog_io_example::run_example().expect("catalog_io example should run");
}
