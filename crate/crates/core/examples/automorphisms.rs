// Automorphism and outer automorphism groups of D4 and Q8.

use extauto::autos::{aut_group, out_group};
use extauto::groups::is_isomorphic;
use extauto::{Caps, GroupSpec};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let caps = Caps::default();
    for (name, other) in [("dihedral(8)", "dihedral(8)"), ("quaternion(8)", "symmetric(4)")] {
        let g = name.parse::<GroupSpec>()?.build(&caps)?;
        let aut = aut_group(&g, &caps)?;
        let out = out_group(&aut, &caps)?;
        let target = other.parse::<GroupSpec>()?.build(&caps)?;
        let view = aut.group_view().ok_or("Aut table over cap")?;
        println!(
            "Aut {name}: order {}, |Inn| = {}, |Out| = {}, ≅ {other}: {}",
            aut.order(),
            aut.inner().len(),
            out.order(),
            is_isomorphic(view, &target, &caps)?.is_some()
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
