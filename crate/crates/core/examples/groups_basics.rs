// Builds D4 from its recipe, then takes its center, quotient and derived series.

use extauto::groups::is_isomorphic;
use extauto::{Caps, GroupSpec};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let caps = Caps::default();
    let d4 = "dihedral(8)".parse::<GroupSpec>()?.build(&caps)?;
    let z = d4.center();
    let (q, _) = d4.quotient(&z)?;
    let v4 = "elem_abelian(2,2)".parse::<GroupSpec>()?.build(&caps)?;
    println!("|D4| = {}, |Z(D4)| = {}, |D4/Z| = {}", d4.order(), z.order(), q.order());
    println!("D4/Z ≅ V4: {}", is_isomorphic(&q, &v4, &caps)?.is_some());
    let series: Vec<usize> = d4.derived_series().iter().map(|s| s.order()).collect();
    println!("derived series orders {series:?}, solvable {}", d4.is_solvable());
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
