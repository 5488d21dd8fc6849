// H¹ and H² of V4 with trivial coefficients Z/2 on both engines, and the
// torsor of extension classes over it.

use extauto::cohomology::{cohomology_with, Fiber, Path, QModule};
use extauto::corpus::example;
use extauto::extensions::factor_system;
use extauto::{Caps, GroupSpec};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let caps = Caps::default();
    let v4 = "elem_abelian(2,2)".parse::<GroupSpec>()?.build(&caps)?;
    let z2 = "cyclic(2)".parse::<GroupSpec>()?.build(&caps)?;
    let m = QModule::trivial(&v4, &z2)?;
    for path in [Path::Enumeration, Path::Linear] {
        let h1 = cohomology_with(&m, 1, path, &caps)?;
        let h2 = cohomology_with(&m, 2, path, &caps)?;
        println!("{path:?}: |Z1| = {}, |H1| = {}, |Z2| = {}, |H2| = {}", h1.z_order(), h1.order(), h2.z_order(), h2.order());
    }
    let fs = factor_system(&example("d4_center")?);
    let fiber = Fiber::new(&fs, &caps)?;
    let labels: Vec<usize> = fiber.classes().iter().map(|c| fiber.label(c)).collect::<Result<_, _>>()?;
    println!("fiber of D4 over its center: {} classes, labels {labels:?}", fiber.classes().len());
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
