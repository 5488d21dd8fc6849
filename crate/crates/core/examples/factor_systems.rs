// Extracts the factor system of Q8 over its center, realizes it again and
// moves it by a pullback along an automorphism of Q.

use extauto::autos::aut_group;
use extauto::corpus::example;
use extauto::extensions::{are_equivalent, factor_system, is_split, pullback, realize};
use extauto::groups::is_isomorphic;
use extauto::Caps;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let caps = Caps::default();
    let e = example("q8_center")?;
    let fs = factor_system(&e);
    let back = realize(&fs)?;
    println!("realized group ≅ Q8: {}", is_isomorphic(back.g(), e.g(), &caps)?.is_some());
    println!("split: {}", is_split(&fs, &caps)?);
    let aut_q = aut_group(e.q(), &caps)?;
    for beta in aut_q.elements() {
        let moved = pullback(&beta.images, e.q(), &fs)?;
        println!("beta = {:?}: equivalent to E: {}", beta.images, are_equivalent(&moved, &fs, &caps)?);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
