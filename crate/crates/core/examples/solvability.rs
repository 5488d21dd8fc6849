// The four sufficient conditions for a solvable Aut(G,H), on extensions
// where each one fails in turn.

use extauto::compat::Analysis;
use extauto::corpus::example;
use extauto::Caps;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let caps = Caps::default();
    for name in ["d4_center", "z2cube_split", "z2cube_x_z3", "z3_x_z2cube"] {
        let r = Analysis::new(&example(name)?, &caps)?.solvability_report()?;
        println!(
            "{name}: conditions ({}, {:?}, {}, {}), |Aut G| = {:?} solvable {:?}",
            r.h_solvable, r.h_characteristic, r.normalizer_solvable, r.aut_ker_phi_solvable, r.aut_g_order, r.aut_g_solvable
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
