// Lists the catalog, checks one entry's expected values and round-trips
// its group and factor system through JSON.

use extauto::corpus::{catalog, check_claims, example};
use extauto::extensions::{are_equivalent, factor_system};
use extauto::io::{from_json, group_from_json, group_to_json, group_to_text, to_json, FactorSystemRecord};
use extauto::Caps;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let caps = Caps::default();
    for d in catalog() {
        println!("{:<24} {}{}", d.name, d.description, if d.heavy { " (heavy)" } else { "" });
    }
    for o in check_claims("s3_a3", &caps)? {
        println!("{:?} = {} : {}", o.claim.quantity, o.claim.value, if o.passed { "ok" } else { "FAILED" });
    }
    let e = example("s3_a3")?;
    let g = group_from_json(&group_to_json(e.g())?)?;
    println!("JSON round trip keeps the table: {}", g.same_table(e.g()));
    print!("{}", group_to_text(e.g()));
    let fs = factor_system(&e);
    let rec: FactorSystemRecord = from_json(&to_json(&FactorSystemRecord::from(&fs))?)?;
    println!("factor system round trip equivalent: {}", are_equivalent(&rec.to_factor_system()?, &fs, &caps)?);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
