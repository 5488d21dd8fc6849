// The compatibility group S acting on the D4/Q8 fiber, with the exact
// sequences for Aut(G,H) and Out(G,H).

use extauto::compat::Analysis;
use extauto::corpus::example;
use extauto::Caps;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let caps = Caps::default();
    for name in ["d4_center", "q8_center"] {
        let a = Analysis::new(&example(name)?, &caps)?;
        let mut sizes: Vec<usize> = a.fiber_orbits()?.iter().map(Vec::len).collect();
        sizes.sort_unstable();
        let os = a.orbit_and_stabilizer()?;
        println!("{name}: |S| = {}, orbit sizes {sizes:?}, |Iso_S E| = {}", a.s().order(), os.stabilizer.len());
        print!("{}", a.cycle_sequence()?);
        print!("{}", a.basic_sequence()?);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
