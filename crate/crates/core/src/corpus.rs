//! Named example extensions with their expected values.
//!
//! Every claim carries a tag: `Cited` for values quoted from the
//! source mathematics, `Derived` for values computed independently (and
//! cross-checked in tests), `Trivial` for values forced by definitions.

use serde::{Deserialize, Serialize};

use crate::caps::Caps;
use crate::compat::Analysis;
use crate::error::{Error, Result};
use crate::extensions::{is_split, make_extension, Extension};
use crate::groups::{is_isomorphic, semidirect, standard_group, Group, GroupSpec};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Tag {
    Cited,
    Derived,
    Trivial,
}

/// Quantities a claim can pin down.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Quantity {
    GOrder,
    AutGhOrder,
    AutGOrder,
    AutGSolvable,
    Z1Order,
    H1Order,
    H2Order,
    SOrder,
    FiberClasses,
    FiberOrbitSizes,
    OrbitSize,
    StabilizerOrder,
    Centric,
    AllClassesSplit,
    HSolvable,
    HCharacteristic,
    NormalizerSolvable,
    NormalizerOrder,
    AutKerPhiSolvable,
    KerPhiOrder,
    AutQOrder,
    OutGhOrder,
    CountingHolds,
    ConditionsHold,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Value {
    Bool(bool),
    Int(u64),
    List(Vec<u64>),
}

impl std::fmt::Display for Value {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Value::Bool(b) => write!(f, "{b}"),
            Value::Int(n) => write!(f, "{n}"),
            Value::List(v) => write!(f, "{v:?}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Claim {
    pub quantity: Quantity,
    pub value: Value,
    pub tag: Tag,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExampleDescriptor {
    pub name: &'static str,
    pub description: &'static str,
    /// Needs raised caps; skipped unless heavy runs are enabled.
    pub heavy: bool,
    pub claims: Vec<Claim>,
}

fn claim(quantity: Quantity, value: Value, tag: Tag) -> Claim {
    Claim { quantity, value, tag }
}

use Quantity as Qn;
use Tag::{Derived, Cited, Trivial};
use Value::{Bool, Int, List};

/// Names of every catalog entry, in listing order.
pub const NAMES: &[&str] = &[
    "d4_center",
    "q8_center",
    "v4fiber_z2cube",
    "v4fiber_z4z2",
    "s3_a3",
    "z4_z2",
    "d4_over_z2",
    "q8_over_z2",
    "q16_over_z2",
    "a5_x_z7",
    "z2cube_split",
    "z2cube_x_z3",
    "z3_x_z2cube",
    "metacyclic21_pullback",
    "y168_p_view",
    "gdh50",
    "c5_x_d5",
];

pub fn descriptor(name: &str) -> Result<ExampleDescriptor> {
    let (description, heavy, claims) = match name {
        "d4_center" => (
            "D4 over its center: H = Z/2, Q = V4, trivial action",
            false,
            vec![
                claim(Qn::AutGhOrder, Int(8), Cited),
                claim(Qn::Z1Order, Int(4), Cited),
                claim(Qn::H1Order, Int(4), Cited),
                claim(Qn::H2Order, Int(8), Cited),
                claim(Qn::SOrder, Int(6), Cited),
                claim(Qn::FiberClasses, Int(8), Cited),
                claim(Qn::FiberOrbitSizes, List(vec![1, 1, 3, 3]), Cited),
                claim(Qn::OrbitSize, Int(3), Cited),
                claim(Qn::StabilizerOrder, Int(2), Cited),
                claim(Qn::OutGhOrder, Int(2), Derived),
                claim(Qn::CountingHolds, Bool(true), Derived),
                claim(Qn::ConditionsHold, Bool(true), Derived),
            ],
        ),
        "q8_center" => (
            "Q8 over its center: H = Z/2, Q = V4, trivial action",
            false,
            vec![
                claim(Qn::AutGhOrder, Int(24), Cited),
                claim(Qn::Z1Order, Int(4), Cited),
                claim(Qn::H2Order, Int(8), Cited),
                claim(Qn::SOrder, Int(6), Cited),
                claim(Qn::OrbitSize, Int(1), Cited),
                claim(Qn::StabilizerOrder, Int(6), Cited),
                claim(Qn::CountingHolds, Bool(true), Derived),
            ],
        ),
        "v4fiber_z2cube" => (
            "(Z/2)^3 as a central extension of Z/2 by V4",
            false,
            vec![
                claim(Qn::FiberClasses, Int(8), Cited),
                claim(Qn::OrbitSize, Int(1), Cited),
                claim(Qn::AutGhOrder, Int(24), Derived),
                claim(Qn::CountingHolds, Bool(true), Derived),
            ],
        ),
        "v4fiber_z4z2" => (
            "Z/4 x Z/2 as a central extension of Z/2 by V4",
            false,
            vec![
                claim(Qn::FiberClasses, Int(8), Cited),
                claim(Qn::OrbitSize, Int(3), Cited),
                claim(Qn::CountingHolds, Bool(true), Derived),
            ],
        ),
        "s3_a3" => (
            "S3 over A3: centric, Q = Z/2 acting by inversion",
            false,
            vec![
                claim(Qn::SOrder, Int(2), Derived),
                claim(Qn::Centric, Bool(true), Derived),
                claim(Qn::AutGhOrder, Int(6), Derived),
                claim(Qn::H1Order, Int(1), Derived),
                claim(Qn::H2Order, Int(1), Derived),
                claim(Qn::CountingHolds, Bool(true), Derived),
            ],
        ),
        "z4_z2" => (
            "Z/4 over 2Z/4",
            false,
            vec![
                claim(Qn::AutGhOrder, Int(2), Derived),
                claim(Qn::H2Order, Int(2), Derived),
                claim(Qn::CountingHolds, Bool(true), Derived),
            ],
        ),
        "d4_over_z2" => (
            "D4 x Z/2 over D4: Q = Z/2, trivial outer action",
            false,
            vec![
                claim(Qn::FiberClasses, Int(2), Cited),
                claim(Qn::AllClassesSplit, Bool(true), Cited),
            ],
        ),
        "q8_over_z2" => (
            "Q8 x Z/2 over Q8: Q = Z/2, trivial outer action",
            false,
            vec![
                claim(Qn::FiberClasses, Int(2), Cited),
                claim(Qn::AllClassesSplit, Bool(true), Cited),
            ],
        ),
        "q16_over_z2" => (
            "Q16 x Z/2 over Q16: Q = Z/2, trivial outer action",
            false,
            vec![
                claim(Qn::FiberClasses, Int(2), Cited),
                claim(Qn::AllClassesSplit, Bool(true), Cited),
            ],
        ),
        "a5_x_z7" => (
            "A5 x Z/7 over A5: condition (1) fails",
            true,
            vec![
                claim(Qn::HSolvable, Bool(false), Cited),
                claim(Qn::HCharacteristic, Bool(true), Cited),
                claim(Qn::NormalizerSolvable, Bool(true), Cited),
                claim(Qn::AutKerPhiSolvable, Bool(true), Cited),
                claim(Qn::AutGOrder, Int(720), Cited),
                claim(Qn::AutGSolvable, Bool(false), Cited),
            ],
        ),
        "z2cube_split" => (
            "(Z/2)^3 = (Z/2)^2 x Z/2 over (Z/2)^2: condition (2) fails",
            false,
            vec![
                claim(Qn::HSolvable, Bool(true), Cited),
                claim(Qn::HCharacteristic, Bool(false), Cited),
                claim(Qn::NormalizerSolvable, Bool(true), Cited),
                claim(Qn::AutKerPhiSolvable, Bool(true), Cited),
                claim(Qn::AutGOrder, Int(168), Cited),
                claim(Qn::AutGSolvable, Bool(false), Cited),
            ],
        ),
        "z2cube_x_z3" => (
            "(Z/2)^3 x Z/3 over (Z/2)^3: condition (3) fails",
            false,
            vec![
                claim(Qn::HSolvable, Bool(true), Cited),
                claim(Qn::HCharacteristic, Bool(true), Cited),
                claim(Qn::NormalizerSolvable, Bool(false), Cited),
                claim(Qn::AutKerPhiSolvable, Bool(true), Cited),
                claim(Qn::AutGSolvable, Bool(false), Cited),
                claim(Qn::AutGOrder, Int(336), Derived),
            ],
        ),
        "z3_x_z2cube" => (
            "Z/3 x (Z/2)^3 over Z/3: condition (4) fails",
            false,
            vec![
                claim(Qn::HSolvable, Bool(true), Cited),
                claim(Qn::HCharacteristic, Bool(true), Cited),
                claim(Qn::NormalizerSolvable, Bool(true), Cited),
                claim(Qn::AutKerPhiSolvable, Bool(false), Cited),
                claim(Qn::AutGSolvable, Bool(false), Derived),
            ],
        ),
        "metacyclic21_pullback" => (
            "Y of order 168, the pullback of Z/7 -> M21 -> Z/3 along C2 x A4 -> Z/3, over Z/7",
            false,
            vec![
                claim(Qn::GOrder, Int(168), Cited),
                claim(Qn::KerPhiOrder, Int(8), Cited),
                claim(Qn::HSolvable, Bool(true), Cited),
                claim(Qn::HCharacteristic, Bool(true), Cited),
                claim(Qn::NormalizerSolvable, Bool(true), Cited),
                claim(Qn::AutKerPhiSolvable, Bool(false), Cited),
            ],
        ),
        "y168_p_view" => (
            "the same Y over its normal subgroup (Z/2)^3, with quotient M21",
            false,
            vec![
                claim(Qn::GOrder, Int(168), Cited),
                claim(Qn::NormalizerOrder, Int(6), Cited),
                claim(Qn::NormalizerSolvable, Bool(true), Cited),
                claim(Qn::AutQOrder, Int(42), Cited),
                claim(Qn::ConditionsHold, Bool(true), Cited),
                claim(Qn::AutGSolvable, Bool(true), Cited),
            ],
        ),
        "gdh50" => (
            "(Z/5)^2 x| Z/2 with Z/2 acting by inversion, over (Z/5)^2",
            false,
            vec![
                claim(Qn::GOrder, Int(50), Trivial),
                claim(Qn::KerPhiOrder, Int(1), Derived),
                claim(Qn::HCharacteristic, Bool(true), Derived),
                claim(Qn::NormalizerSolvable, Bool(false), Derived),
                claim(Qn::AutGOrder, Int(12000), Derived),
                claim(Qn::AutGSolvable, Bool(false), Derived),
            ],
        ),
        "c5_x_d5" => (
            "(Z/5)^2 x| Z/2 with Z/2 acting by diag(1,-1), i.e. Z/5 x D5, over (Z/5)^2",
            false,
            vec![
                claim(Qn::GOrder, Int(50), Trivial),
                claim(Qn::KerPhiOrder, Int(1), Derived),
                claim(Qn::HCharacteristic, Bool(true), Derived),
                claim(Qn::AutGOrder, Int(80), Derived),
                claim(Qn::AutGSolvable, Bool(true), Derived),
                claim(Qn::NormalizerSolvable, Bool(true), Derived),
            ],
        ),
        _ => return Err(Error::UnknownExample(name.to_string())),
    };
    let name = NAMES.iter().find(|&&n| n == name).copied().unwrap();
    Ok(ExampleDescriptor {
        name,
        description,
        heavy,
        claims,
    })
}

pub fn catalog() -> Vec<ExampleDescriptor> {
    NAMES.iter().map(|n| descriptor(n).unwrap()).collect()
}

fn spec(s: &str) -> Result<Group> {
    standard_group(&s.parse::<GroupSpec>()?)
}

fn with_subgroup(g: Group, members: &[usize]) -> Result<Extension> {
    let h = g.subgroup_generated(members);
    if h.order() != members.len() {
        return Err(Error::InvalidInput("listed elements do not form a subgroup".into()));
    }
    make_extension(&g, &h)
}

/// `(Z/5)^2 ⋊ Z/2` with the generator acting by `diag(a, b)`, `a, b = ±1`.
fn z5sq_by_diag(a_neg: bool, b_neg: bool, label: &str) -> Result<Group> {
    let n = spec("elem_abelian(5,2)")?;
    let neg = |x: usize, flip: bool| if flip { (5 - x) % 5 } else { x };
    let flip: Vec<usize> = (0..25).map(|x| neg(x % 5, a_neg) + 5 * neg(x / 5, b_neg)).collect();
    semidirect(&n, &spec("cyclic(2)")?, &[(0..25).collect(), flip], label)
}

/// `Y = {(m, q) ∈ M21 × (C2 × A4) : ρ(m) = π(q)}` and the positions of the
/// pairs in its element list.
pub fn pullback_y() -> Result<(Group, Vec<(usize, usize)>)> {
    let caps = Caps::default();
    let m21 = spec("metacyclic(7,3)")?;
    let q = spec("direct_product(cyclic(2),alternating(4))")?;
    // ρ: M21 → Z/3 reads off the Z/3 coordinate
    let rho = |m: usize| m % 3;
    let p = q.subgroup_generated(&(0..q.order()).filter(|&x| q.element_order(x) <= 2).collect::<Vec<_>>());
    let (qp, pi) = q.quotient(&p)?;
    let iso = is_isomorphic(&qp, &spec("cyclic(3)")?, &caps)?
        .ok_or_else(|| Error::InvalidInput("Q/P is not cyclic of order 3".into()))?;
    let mut pairs = Vec::new();
    for m in 0..m21.order() {
        for x in 0..q.order() {
            if rho(m) == iso.apply(pi.apply(x)) {
                pairs.push((m, x));
            }
        }
    }
    let index: std::collections::HashMap<(usize, usize), usize> =
        pairs.iter().enumerate().map(|(i, &p)| (p, i)).collect();
    let n = pairs.len();
    let table: Vec<Vec<usize>> = pairs
        .iter()
        .map(|&(m1, q1)| {
            pairs
                .iter()
                .map(|&(m2, q2)| index[&(m21.mul(m1, m2), q.mul(q1, q2))])
                .collect()
        })
        .collect();
    debug_assert_eq!(n, 168);
    Ok((Group::from_cayley_table(table, "Y168")?, pairs))
}

/// Builds the named extension.
pub fn example(name: &str) -> Result<Extension> {
    let d = descriptor(name)?;
    match d.name {
        "d4_center" | "q8_center" => {
            let g = spec(if name == "d4_center" { "dihedral(8)" } else { "quaternion(8)" })?;
            let z = g.center();
            make_extension(&g, &z)
        }
        "v4fiber_z2cube" => with_subgroup(spec("elem_abelian(2,3)")?, &[0, 1]),
        "v4fiber_z4z2" => with_subgroup(spec("direct_product(cyclic(4),cyclic(2))")?, &[0, 4]),
        "s3_a3" => {
            let g = spec("symmetric(3)")?;
            let a3: Vec<usize> = (0..6).filter(|&x| g.element_order(x) != 2).collect();
            with_subgroup(g, &a3)
        }
        "z4_z2" => with_subgroup(spec("cyclic(4)")?, &[0, 2]),
        "d4_over_z2" | "q8_over_z2" | "q16_over_z2" => {
            let h = match name {
                "d4_over_z2" => "dihedral(8)",
                "q8_over_z2" => "quaternion(8)",
                _ => "quaternion(16)",
            };
            let g = spec(&format!("direct_product({h},cyclic(2))"))?;
            let members: Vec<usize> = (0..g.order() / 2).map(|x| 2 * x).collect();
            with_subgroup(g, &members)
        }
        "a5_x_z7" => {
            let g = spec("direct_product(alternating(5),cyclic(7))")?;
            let members: Vec<usize> = (0..60).map(|x| 7 * x).collect();
            with_subgroup(g, &members)
        }
        "z2cube_split" => with_subgroup(spec("elem_abelian(2,3)")?, &[0, 1, 2, 3]),
        "z2cube_x_z3" => {
            let g = spec("direct_product(elem_abelian(2,3),cyclic(3))")?;
            let members: Vec<usize> = (0..8).map(|x| 3 * x).collect();
            with_subgroup(g, &members)
        }
        "z3_x_z2cube" => {
            let g = spec("direct_product(cyclic(3),elem_abelian(2,3))")?;
            with_subgroup(g, &[0, 8, 16])
        }
        "metacyclic21_pullback" | "y168_p_view" => {
            let (y, pairs) = pullback_y()?;
            let members: Vec<usize> = if name == "metacyclic21_pullback" {
                // Z/7 = {(a, 1)}: the Z/7 coordinate of M21 with trivial Q part
                (0..pairs.len()).filter(|&i| pairs[i].0 % 3 == 0 && pairs[i].1 == 0).collect()
            } else {
                (0..pairs.len()).filter(|&i| pairs[i].0 == 0).collect()
            };
            with_subgroup(y, &members)
        }
        "gdh50" | "c5_x_d5" => {
            let g = if name == "gdh50" {
                z5sq_by_diag(true, true, "gdh50")?
            } else {
                z5sq_by_diag(false, true, "c5_x_d5")?
            };
            let members: Vec<usize> = (0..25).map(|x| 2 * x).collect();
            with_subgroup(g, &members)
        }
        _ => unreachable!(),
    }
}

/// Candidate specs of order `n` built from small named factors.
fn candidates(n: usize) -> Vec<String> {
    let mut basic: Vec<(usize, String)> = Vec::new();
    for m in 2..=n {
        basic.push((m, format!("cyclic({m})")));
        if m >= 6 && m % 2 == 0 {
            basic.push((m, format!("dihedral({m})")));
        }
    }
    basic.push((8, "quaternion(8)".into()));
    basic.push((16, "quaternion(16)".into()));
    for (p, k) in [(2, 2), (2, 3), (2, 4), (3, 2), (5, 2)] {
        basic.push((p * usize::pow(p, k - 1), format!("elem_abelian({p},{k})")));
    }
    basic.push((6, "symmetric(3)".into()));
    basic.push((24, "symmetric(4)".into()));
    basic.push((12, "alternating(4)".into()));
    basic.push((60, "alternating(5)".into()));
    basic.push((21, "metacyclic(7,3)".into()));
    let mut out: Vec<String> = basic.iter().filter(|(m, _)| *m == n).map(|(_, s)| s.clone()).collect();
    for (a, sa) in &basic {
        for (b, sb) in &basic {
            if a * b == n && a >= b {
                out.push(format!("direct_product({sa},{sb})"));
            }
        }
    }
    out
}

/// Names `g` by the first small recipe it is isomorphic to, if any.
pub fn identify(g: &Group, caps: &Caps) -> Result<Option<String>> {
    if g.order() == 1 {
        return Ok(Some("trivial".into()));
    }
    let profile = g.order_profile();
    for c in candidates(g.order()) {
        let h = spec(&c)?;
        if h.order_profile() == profile && h.is_abelian() == g.is_abelian() && is_isomorphic(g, &h, caps)?.is_some() {
            return Ok(Some(c));
        }
    }
    Ok(None)
}

/// Outcome of checking one claim.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClaimOutcome {
    pub claim: Claim,
    pub observed: Option<Value>,
    pub passed: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

/// Computes one quantity for an analyzed extension.
pub fn measure(a: &Analysis, q: Quantity) -> Result<Value> {
    let e = a.extension();
    Ok(match q {
        Qn::GOrder => Int(e.g().order() as u64),
        Qn::AutGhOrder => Int(a.relative()?.perms.order() as u64),
        Qn::AutGOrder => Int(a.relative()?.aut_g.order() as u64),
        Qn::AutGSolvable => Bool(a.relative()?.aut_g.is_solvable()),
        Qn::Z1Order => Int(crate::cohomology::z1(a.module(), a.caps())?.len() as u64),
        Qn::H1Order => Int(a.h1().order() as u64),
        Qn::H2Order => Int(a.h2().order() as u64),
        Qn::SOrder => Int(a.s().order() as u64),
        Qn::FiberClasses => Int(a.fiber().classes().len() as u64),
        Qn::FiberOrbitSizes => {
            let mut sizes: Vec<u64> = a.fiber_orbits()?.iter().map(|o| o.len() as u64).collect();
            sizes.sort_unstable();
            List(sizes)
        }
        Qn::OrbitSize => Int(a.orbit_and_stabilizer()?.orbit.len() as u64),
        Qn::StabilizerOrder => Int(a.stabilizer()?.len() as u64),
        Qn::Centric => Bool(a.is_centric()),
        Qn::AllClassesSplit => {
            let mut all = true;
            for fs in a.fiber().classes() {
                all &= is_split(fs, a.caps())?;
            }
            Bool(all)
        }
        Qn::HSolvable => Bool(a.solvability_report()?.h_solvable),
        Qn::HCharacteristic => match a.solvability_report()?.h_characteristic {
            Some(b) => Bool(b),
            None => {
                return Err(Error::SearchCapExceeded {
                    what: "characteristic test (Aut G)",
                    size: e.g().order() as u128,
                    cap: a.caps().search_order as u128,
                })
            }
        },
        Qn::NormalizerSolvable => Bool(a.solvability_report()?.normalizer_solvable),
        Qn::NormalizerOrder => Int(a.decompose_sbar()?.normalizer_order as u64),
        Qn::AutKerPhiSolvable => Bool(a.solvability_report()?.aut_ker_phi_solvable),
        Qn::KerPhiOrder => Int(a.outer().kernel().len() as u64),
        Qn::AutQOrder => Int(a.aut_q().order() as u64),
        Qn::OutGhOrder => {
            let basic = a.basic_sequence()?;
            Int(basic.order_of("Out(G,H)").unwrap_or(0))
        }
        Qn::CountingHolds => {
            let c = a.counting_check()?;
            Bool(c.holds && c.orbit_bound)
        }
        Qn::ConditionsHold => Bool(a.solvability_report()?.all_conditions == Some(true)),
    })
}

/// Checks every claim of an example.
pub fn check_claims(name: &str, caps: &Caps) -> Result<Vec<ClaimOutcome>> {
    let d = descriptor(name)?;
    let e = example(name)?;
    let a = Analysis::new(&e, caps)?;
    Ok(d.claims
        .into_iter()
        .map(|c| match measure(&a, c.quantity) {
            Ok(v) => ClaimOutcome {
                passed: v == c.value,
                observed: Some(v),
                claim: c,
                note: None,
            },
            Err(err) => ClaimOutcome {
                passed: false,
                observed: None,
                claim: c,
                note: Some(err.to_string()),
            },
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_entries_build() {
        for d in catalog() {
            let e = example(d.name).unwrap();
            assert!(e.g().is_normal(e.h()), "{}", d.name);
            assert!(!d.claims.is_empty());
        }
        assert!(matches!(example("nope"), Err(Error::UnknownExample(_))));
    }

    #[test]
    fn pullback_shape() {
        let (y, _) = pullback_y().unwrap();
        assert_eq!(y.order(), 168);
        let e = example("metacyclic21_pullback").unwrap();
        assert_eq!((e.h().order(), e.q().order()), (7, 24));
        let e = example("y168_p_view").unwrap();
        assert_eq!((e.h().order(), e.q().order()), (8, 21));
    }

    #[test]
    fn identify_small_groups() {
        let caps = Caps::default();
        let d4 = spec("dihedral(8)").unwrap();
        assert_eq!(identify(&d4, &caps).unwrap().as_deref(), Some("dihedral(8)"));
        let z4z2 = spec("direct_product(cyclic(2),cyclic(4))").unwrap();
        assert_eq!(identify(&z4z2, &caps).unwrap().as_deref(), Some("direct_product(cyclic(4),cyclic(2))"));
    }
}

