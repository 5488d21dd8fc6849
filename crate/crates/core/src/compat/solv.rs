//! Sufficient conditions for `Aut(G, H)` to be solvable, the five-term
//! sequence for `K = ker(Aut_Φ Q → Aut(ker Φ))` and the solvability
//! implications for `S`.

use serde::{Deserialize, Serialize};

use super::{sorted_set, Analysis, SequenceReport};
use crate::autos::{aut_group, relative_indices};
use crate::cohomology::{h0, h1, QModule};
use crate::error::Result;
use crate::groups::Group;
use crate::perm::Perm;

/// Both directions of the solvability criterion for `S`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PresolvCheck {
    pub s_solvable: bool,
    pub h_solvable: bool,
    pub aut_phi_q_solvable: bool,
    pub normalizer_solvable: bool,
    pub centralizer_solvable: bool,
    /// `H`, `Aut_Φ Q`, `N` solvable ⇒ `S` solvable.
    pub forward_holds: bool,
    /// `S` solvable ⇒ `H`, `Aut_Φ Q`, `C` solvable.
    pub backward_holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolvabilityReport {
    pub h_solvable: bool,
    /// `None` when `Aut G` is beyond the caps.
    pub h_characteristic: Option<bool>,
    pub normalizer_solvable: bool,
    pub aut_ker_phi_solvable: bool,
    pub all_conditions: Option<bool>,
    pub aut_g_order: Option<usize>,
    pub aut_g_solvable: Option<bool>,
    pub aut_gh_order: Option<usize>,
    pub aut_gh_solvable: Option<bool>,
    /// False only if all conditions hold and `Aut(G, H)` is not solvable.
    pub consistent: bool,
    pub k_order: usize,
    pub five_term: SequenceReport,
    pub presolv: PresolvCheck,
}

impl Analysis {
    pub fn solvability_report(&self) -> Result<SolvabilityReport> {
        let caps = &self.caps;
        let e = &self.e;
        let h_solvable = self.fs.h().is_solvable();

        // (2) and the direct computation, both needing Aut G
        let (h_characteristic, aut_g_order, aut_g_solvable, aut_gh_order, aut_gh_solvable) =
            match aut_group(e.g(), caps) {
                Ok(aut_g) => {
                    let rel = relative_indices(&aut_g, e.h());
                    let char_ = rel.len() == aut_g.order();
                    let rel_solvable = aut_g.perm_group().is_solvable_subgroup(&rel);
                    (
                        Some(char_),
                        Some(aut_g.order()),
                        Some(aut_g.is_solvable()),
                        Some(rel.len()),
                        Some(rel_solvable),
                    )
                }
                Err(err) if err.is_cap() => (None, None, None, None, None),
                Err(err) => return Err(err),
            };

        let od = self.outer_data()?;
        let normalizer_solvable = od.out.is_solvable_subgroup(&od.normalizer);
        let centralizer_solvable = od.out.is_solvable_subgroup(&od.centralizer);

        let q = e.q();
        let ker_phi = q.subgroup(&self.phi.kernel())?;
        let (kg, kemb) = q.subgroup_as_group(&ker_phi, "kerPhi");
        let aut_k = aut_group(&kg, caps)?;
        let aut_ker_phi_solvable = aut_k.is_solvable();

        let all_conditions = h_characteristic.map(|c| c && h_solvable && normalizer_solvable && aut_ker_phi_solvable);
        let consistent = match (all_conditions, aut_gh_solvable) {
            (Some(true), Some(s)) => s,
            _ => true,
        };

        // K and the five-term sequence over A = z ker Φ
        let aut_phi = self.aut_phi_q();
        let k: Vec<usize> = aut_phi
            .iter()
            .copied()
            .filter(|&i| kemb.iter().all(|&x| self.aut_q.element(i).apply(x) == x))
            .collect();
        let five_term = self.five_term(q, &ker_phi, &kg, &kemb, &k)?;

        let s_solvable = self.s.perms.is_solvable();
        let aut_phi_q_solvable = self.aut_q.perm_group().is_solvable_subgroup(&aut_phi);
        let forward_holds = !(h_solvable && aut_phi_q_solvable && normalizer_solvable) || s_solvable;
        let backward_holds = !s_solvable || (h_solvable && aut_phi_q_solvable && centralizer_solvable);
        Ok(SolvabilityReport {
            h_solvable,
            h_characteristic,
            normalizer_solvable,
            aut_ker_phi_solvable,
            all_conditions,
            aut_g_order,
            aut_g_solvable,
            aut_gh_order,
            aut_gh_solvable,
            consistent,
            k_order: k.len(),
            five_term,
            presolv: PresolvCheck {
                s_solvable,
                h_solvable,
                aut_phi_q_solvable,
                normalizer_solvable,
                centralizer_solvable,
                forward_holds,
                backward_holds,
            },
        })
    }

    /// `0 → H⁰(Q,A) → A → K → H¹(Q,A) → Hom(ker Φ, A)` with `A = z ker Φ`.
    fn five_term(
        &self,
        q: &Group,
        ker_phi: &crate::groups::Subgroup,
        kg: &Group,
        kemb: &[usize],
        k: &[usize],
    ) -> Result<SequenceReport> {
        let caps = &self.caps;
        // A = z ker Φ with Q acting by conjugation, embedded in Q
        let za = kg.center();
        let (ag, a_in_k) = kg.subgroup_as_group(&za, "A");
        let a_elems: Vec<usize> = a_in_k.iter().map(|&x| kemb[x]).collect();
        let a_pos = |x: usize| a_elems.iter().position(|&y| y == x);
        let action = (0..q.order())
            .map(|g| Perm::new(a_elems.iter().map(|&x| a_pos(q.conj(g, x)).expect("A is normal in Q")).collect()))
            .collect();
        let module = QModule::with_embedding(q.clone(), ag.clone(), action, a_elems.clone())?;
        let fixed = h0(&module);
        let h1a = h1(&module, caps)?;

        let mut r = SequenceReport::new("0 -> H0(Q,A) -> A -> K -> H1(Q,A) -> Hom(kerPhi,A)");
        r.term("H0(Q,A)", fixed.order());
        r.term("A", ag.order());
        r.term("K", k.len());
        r.term("H1(Q,A)", h1a.order());

        // A → K: w ↦ c_w
        let aut_q = &self.aut_q;
        let mut c_w_ok = true;
        let to_k: Vec<usize> = a_elems
            .iter()
            .map(|&w| {
                let c = aut_q.index_of(&q.inner(w)).expect("inner automorphism");
                if k.binary_search(&c).is_err() {
                    c_w_ok = false;
                }
                c
            })
            .collect();
        r.check("c_w lies in K", c_w_ok);
        r.junction("H0(Q,A)", &[], &[]);
        let ker_a = sorted_set((0..to_k.len()).filter(|&i| to_k[i] == 0));
        r.junction("A", &ker_a, fixed.members());

        // K → H¹(Q,A): β ↦ [q ↦ β(q)q⁻¹]
        let mut lambda_ok = true;
        let mut k_to_h1 = Vec::with_capacity(k.len());
        for &i in k {
            let b = aut_q.element(i);
            let lam: Vec<usize> = (0..q.order())
                .map(|x| a_pos(q.mul(b.apply(x), q.inv(x))).unwrap_or(usize::MAX))
                .collect();
            let valid = lam.iter().all(|&v| v != usize::MAX);
            match valid.then(|| h1a.class_of(&module, &lam)).flatten() {
                Some(c) => k_to_h1.push(c),
                None => {
                    lambda_ok = false;
                    k_to_h1.push(usize::MAX);
                }
            }
        }
        r.check("lambda_beta is a derivation Q -> A", lambda_ok);
        let image_a = sorted_set(to_k.iter().copied());
        let ker_k = sorted_set((0..k.len()).filter(|&j| k_to_h1[j] == 0).map(|j| k[j]));
        r.junction("K", &ker_k, &image_a);

        // H¹(Q,A) → Hom(ker Φ, A): restriction
        let restricts_to_zero =
            |c: &[usize]| ker_phi.members().iter().all(|&x| c[x] == 0);
        let image_k = sorted_set(k_to_h1.iter().copied().filter(|&c| c != usize::MAX));
        let ker_res = sorted_set((0..h1a.order()).filter(|&c| restricts_to_zero(&h1a.classes()[c])));
        r.junction("H1(Q,A)", &ker_res, &image_k);
        Ok(r)
    }
}
