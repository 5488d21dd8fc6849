//! `S̄` through the outer action: `Aut_Φ Q`, the map
//! `p: S̄ → N_{Out H}(ΦQ)/ΦQ` and the lifting test for its image.

use serde::{Deserialize, Serialize};

use super::{sorted_set, Analysis, SequenceReport};
use crate::error::{Error, Result};
use crate::groups::{Group, Hom, Subgroup};

/// Whether the element `[α]·ΦQ` of `N/ΦQ` is hit by `p`, decided twice:
/// by searching `Aut Q` for a `β` with `Φβ = c_[α]Φ`, and from `S` directly.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LiftCheck {
    pub target: usize,
    /// The induced automorphism of `Q/ker Φ ≅ ΦQ`, on the sorted members of `ΦQ`.
    pub beta_prime: Vec<usize>,
    pub liftable: bool,
    pub in_image: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SbarDecomposition {
    /// Indices into `Aut Q` of `{β : Φβ = Φ}`.
    pub aut_phi_q: Vec<usize>,
    pub phi_q_order: usize,
    pub normalizer_order: usize,
    pub target_order: usize,
    pub sbar_order: usize,
    /// `p` on `S̄` coset ids, valued in `N/ΦQ`.
    pub p: Vec<usize>,
    pub image_p: Vec<usize>,
    pub kernel_p_order: usize,
    pub kernel_is_b_aut_phi: bool,
    pub p_of_b_is_phi_q: bool,
    pub lifting: Vec<LiftCheck>,
    pub lifting_agrees: bool,
    pub centric: bool,
    pub p_injective: bool,
    /// `0 → H¹ → Out(G,H) → N/ΦQ → H²` in the centric case.
    pub o_sequence: Option<SequenceReport>,
}

impl SbarDecomposition {
    pub fn is_consistent(&self) -> bool {
        self.kernel_is_b_aut_phi
            && self.p_of_b_is_phi_q
            && self.lifting_agrees
            && (!self.centric || self.p_injective)
            && self.o_sequence.as_ref().is_none_or(|r| r.is_exact())
    }
}

/// `Out H` as a group with `ΦQ`, its normalizer and the quotient `N/ΦQ`.
pub(crate) struct OuterData {
    pub out: Group,
    pub phi_q: Subgroup,
    pub normalizer: Subgroup,
    pub centralizer: Subgroup,
    /// `N/ΦQ` and the projection from positions in `N`.
    pub target: Group,
    pub n_pos: Vec<usize>,
    pub proj: Hom,
}

impl OuterData {
    /// Image in `N/ΦQ` of an outer class lying in `N`.
    pub fn project(&self, class: usize) -> Option<usize> {
        let p = *self.n_pos.get(class)?;
        (p != usize::MAX).then(|| self.proj.apply(p))
    }
}

impl Analysis {
    pub(crate) fn outer_data(&self) -> Result<OuterData> {
        let out = self
            .out_h
            .group_view()
            .ok_or(Error::OrderCapExceeded {
                what: "Out(H) Cayley table",
                order: self.out_h.order() as u128,
                cap: self.caps.order as u128,
            })?
            .clone();
        let phi_q = out.subgroup(&self.phi.image())?;
        let normalizer = out.normalizer(&phi_q);
        let centralizer = out.centralizer(&phi_q);
        let (ng, _) = out.subgroup_as_group(&normalizer, "N");
        let n_pos = normalizer.positions();
        let inside: Vec<usize> = phi_q.members().iter().map(|&x| n_pos[x]).collect();
        let phi_in_n = ng.subgroup(&sorted_set(inside))?;
        let (target, proj) = ng.quotient(&phi_in_n)?;
        Ok(OuterData {
            out,
            phi_q,
            normalizer,
            centralizer,
            target,
            n_pos,
            proj,
        })
    }

    /// Outer class of the `α` component of `θ`.
    pub(crate) fn outer_class(&self, theta: usize) -> usize {
        let alpha = self.s.pair(theta).alpha;
        self.out_h
            .class_of(&self.aut_h, &alpha)
            .expect("α is an automorphism of H")
    }

    /// `Aut_Φ Q = {β : Φβ = Φ}` as indices into `Aut Q`.
    pub fn aut_phi_q(&self) -> Vec<usize> {
        let cls = &self.phi.classes;
        (0..self.aut_q.order())
            .filter(|&i| {
                let b = self.aut_q.element(i);
                (0..cls.len()).all(|q| cls[b.apply(q)] == cls[q])
            })
            .collect()
    }

    pub fn decompose_sbar(&self) -> Result<SbarDecomposition> {
        let od = self.outer_data()?;
        let sp = &self.s.perms;
        let nq = self.e.q().order();
        let (sbar_id, sbar_reps) = self.s.sbar();

        // p on S, then on S̄
        let p_on_s = (0..sp.order())
            .map(|t| {
                od.project(self.outer_class(t))
                    .ok_or_else(|| Error::InvalidInput("[α] does not normalize ΦQ".into()))
            })
            .collect::<Result<Vec<usize>>>()?;
        let mut p = vec![usize::MAX; sbar_reps.len()];
        let mut well_defined = true;
        for t in 0..sp.order() {
            let c = sbar_id[t];
            if p[c] != usize::MAX && p[c] != p_on_s[t] {
                well_defined = false;
            }
            p[c] = p_on_s[t];
        }
        if !well_defined {
            return Err(Error::InvalidInput("p is not constant on B-cosets".into()));
        }
        let image_p = sorted_set(p.iter().copied());

        // ker p against B·Aut_Φ Q
        let aut_phi = self.aut_phi_q();
        let ker_p_s = sorted_set((0..sp.order()).filter(|&t| p_on_s[t] == 0));
        let mut gens: Vec<usize> = self.s.b.clone();
        for &i in &aut_phi {
            let pair = super::SPair {
                alpha: crate::perm::Perm::identity(self.fs.h().order()),
                beta: self.aut_q.element(i).clone(),
            };
            gens.push(
                self.s
                    .index_of(&pair)
                    .ok_or_else(|| Error::InvalidInput("(1, β) with Φβ = Φ is not in S".into()))?,
            );
        }
        let b_aut_phi = sp.closure(&gens);
        let kernel_p_order = sorted_set(ker_p_s.iter().map(|&t| sbar_id[t])).len();
        let p_of_b = sorted_set(self.s.b.iter().map(|&t| self.outer_class(t)));

        // lifting: for each class [α] ∈ N, is there β with Φβ = c_[α]Φ?
        let out = &od.out;
        let cls = &self.phi.classes;
        let mut lifting: Vec<LiftCheck> = Vec::new();
        for &a in od.normalizer.members() {
            let target = od.project(a).unwrap();
            if lifting.iter().any(|l| l.target == target) {
                continue;
            }
            let wanted: Vec<usize> = (0..nq).map(|q| out.conj(a, cls[q])).collect();
            let liftable = (0..self.aut_q.order()).any(|i| {
                let b = self.aut_q.element(i);
                (0..nq).all(|q| cls[b.apply(q)] == wanted[q])
            });
            let members = od.phi_q.members();
            let beta_prime = members
                .iter()
                .map(|&c| members.binary_search(&out.conj(a, c)).expect("a normalizes ΦQ"))
                .collect();
            lifting.push(LiftCheck {
                target,
                beta_prime,
                liftable,
                in_image: image_p.binary_search(&target).is_ok(),
            });
        }
        lifting.sort_by_key(|l| l.target);
        let lifting_agrees = lifting.iter().all(|l| l.liftable == l.in_image);

        let centric = self.is_centric();
        let p_injective = image_p.len() == p.len();
        let o_sequence = if centric { Some(self.o_sequence(&od, &p)?) } else { None };
        Ok(SbarDecomposition {
            aut_phi_q: aut_phi,
            phi_q_order: od.phi_q.order(),
            normalizer_order: od.normalizer.order(),
            target_order: od.target.order(),
            sbar_order: sbar_reps.len(),
            p,
            image_p,
            kernel_p_order,
            kernel_is_b_aut_phi: ker_p_s == b_aut_phi,
            p_of_b_is_phi_q: p_of_b == od.phi_q.members(),
            lifting,
            lifting_agrees,
            centric,
            p_injective,
            o_sequence,
        })
    }

    /// `0 → H¹ → Out(G,H) → N/ΦQ → H²` for centric extensions, where the
    /// last map is defined on the image of `p` through `λ̄`.
    fn o_sequence(&self, od: &OuterData, p: &[usize]) -> Result<SequenceReport> {
        let basic = self.basic_sequence()?;
        let (sbar_id, _) = self.s.sbar();
        let lambda = self.lambda_table()?;
        let mut r = SequenceReport::new("0 -> H1(Q,zH) -> Out(G,H) -> N/PhiQ -> H2(Q,zH)");
        r.term("H1(Q,zH)", self.h1.order());
        r.term("Out(G,H)", basic.order_of("Out(G,H)").unwrap_or(0) as usize);
        r.term("N/PhiQ", od.target.order());
        r.term("H2(Q,zH)", self.h2().order());
        r.check("H1bar = H1", basic.order_of("H1bar(Q,zH)") == Some(self.h1.order() as u64));
        for j in &basic.junctions {
            if j.at != "Sbar" {
                r.junctions.push(j.clone());
            }
        }
        // at N/ΦQ: p(image of Out(G,H)) against p(ker λ̄)
        let iso = self.stabilizer()?;
        let image = sorted_set(iso.iter().map(|&t| p[sbar_id[t]]));
        let kernel = sorted_set(
            (0..lambda.len())
                .filter(|&t| lambda[t] == self.h2_zero())
                .map(|t| p[sbar_id[t]]),
        );
        r.junction("N/PhiQ", &kernel, &image);
        r.checks.extend(basic.checks);
        Ok(r)
    }
}
