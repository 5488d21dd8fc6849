//! One verdict per theorem check, in a shape the CLI and the acceptance
//! suite can print.

use serde::{Deserialize, Serialize};

use super::Analysis;
use crate::error::Result;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Theorem {
    Cycle,
    Basic,
    Counting,
    Series,
    Solvability,
    Orbits,
    Sbar,
}

impl Theorem {
    pub const ALL: [Theorem; 7] = [
        Theorem::Orbits,
        Theorem::Cycle,
        Theorem::Basic,
        Theorem::Sbar,
        Theorem::Counting,
        Theorem::Series,
        Theorem::Solvability,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Theorem::Cycle => "cycle",
            Theorem::Basic => "basic",
            Theorem::Counting => "counting",
            Theorem::Series => "series",
            Theorem::Solvability => "solvability",
            Theorem::Orbits => "orbits",
            Theorem::Sbar => "sbar",
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Verdict {
    pub theorem: Theorem,
    pub passed: bool,
    /// Human-readable report.
    pub summary: String,
    /// The underlying report as JSON.
    pub detail: serde_json::Value,
}

fn verdict<T: Serialize>(theorem: Theorem, passed: bool, summary: String, detail: &T) -> Verdict {
    Verdict {
        theorem,
        passed,
        summary,
        detail: serde_json::to_value(detail).unwrap_or(serde_json::Value::Null),
    }
}

fn join<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

impl Analysis {
    pub fn verify(&self, theorem: Theorem) -> Result<Verdict> {
        Ok(match theorem {
            Theorem::Cycle => {
                let r = self.cycle_sequence()?;
                verdict(theorem, r.is_exact(), r.to_string(), &r)
            }
            Theorem::Basic => {
                let r = self.basic_sequence()?;
                verdict(theorem, r.is_exact(), r.to_string(), &r)
            }
            Theorem::Counting => {
                let c = self.counting_check()?;
                let summary = format!(
                    "|Aut(G,H)|·|H0|·|O| = {}·{}·{} vs |H1|·|H|·|Shat| = {}·{}·{}: {}\n|O| = {} <= |H2| = {}: {}\n",
                    c.aut_gh,
                    c.h0,
                    c.orbit,
                    c.h1,
                    c.h,
                    c.shat,
                    if c.holds { "equal" } else { "DIFFERENT" },
                    c.orbit,
                    c.h2,
                    if c.orbit_bound { "ok" } else { "FAILED" }
                );
                verdict(theorem, c.holds && c.orbit_bound, summary, &c)
            }
            Theorem::Series => {
                let s = self.normal_series()?;
                let summary = format!(
                    "orders A0..A3 = {}; quotients A2/A3, A1/A2, A0/A1 = {}\nnormal {}, A2/A3 ≅ H/(zG∩H) {}, A1/A2 ≅ H1 {}, A0/A1 ≅ Iso_Shat {}\n",
                    join(&s.orders),
                    join(&s.quotients),
                    s.normal,
                    s.a2_iso,
                    s.a1_iso,
                    s.a0_iso
                );
                verdict(theorem, s.holds(), summary, &s)
            }
            Theorem::Solvability => {
                let r = self.solvability_report()?;
                let show = |b: Option<bool>| b.map_or("undetermined".to_string(), |b| b.to_string());
                let passed = r.consistent
                    && r.five_term.is_exact()
                    && r.presolv.forward_holds
                    && r.presolv.backward_holds;
                let mut summary = format!(
                    "(1) H solvable: {}\n(2) H characteristic: {}\n(3) N_OutH(PhiQ) solvable: {}\n(4) Aut(ker Phi) solvable: {}\nall conditions: {}\n|Aut G| = {}, solvable: {}\n|Aut(G,H)| = {}, solvable: {}\n|K| = {}\nS solvable: {} (forward {}, backward {})\n",
                    r.h_solvable,
                    show(r.h_characteristic),
                    r.normalizer_solvable,
                    r.aut_ker_phi_solvable,
                    show(r.all_conditions),
                    r.aut_g_order.map_or("undetermined".into(), |n| n.to_string()),
                    show(r.aut_g_solvable),
                    r.aut_gh_order.map_or("undetermined".into(), |n| n.to_string()),
                    show(r.aut_gh_solvable),
                    r.k_order,
                    r.presolv.s_solvable,
                    r.presolv.forward_holds,
                    r.presolv.backward_holds,
                );
                summary.push_str(&r.five_term.to_string());
                verdict(theorem, passed, summary, &r)
            }
            Theorem::Orbits => {
                let orbits = self.fiber_orbits()?;
                let mut sizes: Vec<usize> = orbits.iter().map(Vec::len).collect();
                sizes.sort_unstable();
                let os = self.orbit_and_stabilizer()?;
                let n = self.s.order();
                let total: usize = sizes.iter().sum();
                let own = orbits.iter().find(|o| o.contains(&self.h2_zero())).map_or(0, Vec::len);
                let passed = total == self.fiber.classes().len()
                    && sizes.iter().all(|s| n % s == 0)
                    && own == os.orbit.len();
                let summary = format!(
                    "|S| = {}, |H2| = {}\norbit sizes {}\norbit of E: {} classes, stabilizer order {}\n",
                    n,
                    self.h2().order(),
                    join(&sizes),
                    os.orbit.len(),
                    os.stabilizer.len()
                );
                #[derive(Serialize)]
                struct Detail {
                    orbits: Vec<Vec<usize>>,
                    sizes: Vec<usize>,
                    orbit: Vec<usize>,
                    stabilizer_order: usize,
                }
                let detail = Detail {
                    orbits,
                    sizes,
                    orbit: os.orbit,
                    stabilizer_order: os.stabilizer.len(),
                };
                verdict(theorem, passed, summary, &detail)
            }
            Theorem::Sbar => {
                let d = self.decompose_sbar()?;
                let mut summary = format!(
                    "|Sbar| = {}, |PhiQ| = {}, |N| = {}, |N/PhiQ| = {}, |image p| = {}\nker p = B·Aut_Phi Q: {}, p(B) = PhiQ: {}, lifting agrees: {}\n",
                    d.sbar_order,
                    d.phi_q_order,
                    d.normalizer_order,
                    d.target_order,
                    d.image_p.len(),
                    d.kernel_is_b_aut_phi,
                    d.p_of_b_is_phi_q,
                    d.lifting_agrees
                );
                if let Some(o) = &d.o_sequence {
                    summary.push_str(&o.to_string());
                }
                verdict(theorem, d.is_consistent(), summary, &d)
            }
        })
    }
}
