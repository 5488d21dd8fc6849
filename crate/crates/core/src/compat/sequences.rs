//! The sequences `0 → Z¹ → Aut(G,H) → S → H²` and
//! `0 → H̄¹ → Out(G,H) → S̄ → H²`.

use std::collections::HashMap;

use rayon::prelude::*;

use super::{mu, sorted_set, Analysis, SequenceReport};
use crate::cohomology::{z1, Cochain};
use crate::error::{Error, Result};
use crate::extensions::Extension;

/// `[ḡ, u(q)]` for `ḡ ∈ C_G(H) ∩ π⁻¹(zQ)`, as module indices.
pub(crate) fn commutator_cocycle(a: &Analysis, gbar: usize) -> Cochain {
    let e: &Extension = &a.e;
    let g = e.g();
    let emb = a.module.embedding();
    e.section()
        .iter()
        .map(|&u| {
            let c = g.commutator(gbar, u);
            let hpos = e.h_index(c);
            emb.iter().position(|&x| x == hpos).expect("commutator lies in zH")
        })
        .collect()
}

impl Analysis {
    /// `C_G(H) ∩ π⁻¹(zQ)` as sorted elements of `G`.
    pub fn centralizer_over_center(&self) -> Vec<usize> {
        let e = &self.e;
        let g = e.g();
        let zq = e.q().center();
        g.centralizer(e.h())
            .members()
            .iter()
            .copied()
            .filter(|&x| zq.contains(e.proj().apply(x)))
            .collect()
    }

    /// `0 → Z¹(Q, zH) →μ Aut(G, H) →res S →λ H²(Q, zH)`.
    pub fn cycle_sequence(&self) -> Result<SequenceReport> {
        let rel = self.relative()?;
        let caps = &self.caps;
        let z = z1(&self.module, caps)?;
        let mus = z
            .par_iter()
            .map(|s| {
                let m = mu(&self.e, &self.module, s)?;
                rel.perms
                    .index_of(&m)
                    .ok_or_else(|| Error::InvalidInput("μ(σ) does not preserve H".into()))
            })
            .collect::<Result<Vec<usize>>>()?;
        let res_all = self.res_table()?;
        let lambda = self.lambda_table()?;
        let iso = self.stabilizer()?.to_vec();

        let mut r = SequenceReport::new("0 -> Z1(Q,zH) -> Aut(G,H) -> S -> H2(Q,zH)");
        r.term("Z1(Q,zH)", z.len());
        r.term("Aut(G,H)", rel.perms.order());
        r.term("S", self.s.order());
        r.term("H2(Q,zH)", self.h2().order());

        let ker_mu = sorted_set((0..z.len()).filter(|&i| mus[i] == 0));
        let zero_cochain = sorted_set((0..z.len()).filter(|&i| z[i].iter().all(|&x| x == 0)));
        r.junction("Z1(Q,zH)", &ker_mu, &zero_cochain);

        let image_mu = sorted_set(mus.iter().copied());
        let ker_res = sorted_set((0..res_all.len()).filter(|&i| res_all[i] == 0));
        r.junction("Aut(G,H)", &ker_res, &image_mu);

        let image_res = sorted_set(res_all.iter().copied());
        let ker_lambda = sorted_set((0..lambda.len()).filter(|&t| lambda[t] == self.h2_zero()));
        r.junction("S", &ker_lambda, &image_res);

        r.check(
            "res is a homomorphism",
            rel.perms.is_hom_into(&res_all, |x, y| self.s.perms.mul(x, y)),
        );
        r.check("Iso_S E = ker lambda", iso == ker_lambda);
        r.check(
            "mu is a homomorphism",
            (0..z.len()).all(|i| {
                (0..z.len()).all(|j| {
                    let sum: Cochain = z[i]
                        .iter()
                        .zip(&z[j])
                        .map(|(&x, &y)| self.module.m().mul(x, y))
                        .collect();
                    let k = z.binary_search(&sum).expect("Z1 is closed");
                    mus[k] == rel.perms.mul(mus[i], mus[j])
                })
            }),
        );
        r.witnesses
            .get_or_insert_with(Default::default)
            .insert("Iso_S".into(), iso);
        Ok(r)
    }

    /// `0 → H̄¹(Q, zH) → Out(G, H) → S̄ → H²(Q, zH)`, with the structure of
    /// `V` and of `ker(Inn G → B)` checked against their subgroup formulas.
    pub fn basic_sequence(&self) -> Result<SequenceReport> {
        let rel = self.relative()?;
        let e = &self.e;
        let g = e.g();
        let caps = &self.caps;
        let module = &self.module;
        let h1 = &self.h1;
        let mut r = SequenceReport::new("0 -> H1bar(Q,zH) -> Out(G,H) -> Sbar -> H2(Q,zH)");

        // Inn G inside Aut(G,H) and Out(G,H) = Aut(G,H)/Inn G
        let inn_of: Vec<usize> = (0..g.order())
            .map(|x| rel.perms.index_of(&g.inner(x)).expect("inner automorphisms preserve H"))
            .collect();
        let inn = sorted_set(inn_of.iter().copied());
        let (out_id, out_reps) = rel.perms.cosets(&inn);

        // σ_ḡ and V
        let cz = self.centralizer_over_center();
        let mut sigma_ok = true;
        let mut mu_ok = true;
        let mut v = Vec::new();
        for &x in &cz {
            let s = commutator_cocycle(self, x);
            match h1.class_of(module, &s) {
                Some(c) => v.push(c),
                None => sigma_ok = false,
            }
            if sigma_ok && mu(e, module, &s).ok().as_ref() != Some(&g.inner(x)) {
                mu_ok = false;
            }
        }
        let v = sorted_set(v);
        r.check("sigma_gbar is a derivation Q -> zH", sigma_ok);
        r.check("mu(sigma_gbar) = c_gbar", mu_ok);

        let zg = g.center();
        let zh_elems: Vec<usize> = module.embedding().iter().map(|&p| e.h_elem(p)).collect();
        let mut zh_zg_gens = zh_elems.clone();
        zh_zg_gens.extend(zg.members());
        let zh_zg = g.subgroup_generated(&zh_zg_gens);
        r.check(
            "|V| = |C_G H ∩ π⁻¹zQ| / |zH·zG|",
            v.len() * zh_zg.order() == cz.len(),
        );
        // ker u: the inner automorphisms c_g with θ_g trivial
        let ker_u = sorted_set(
            (0..g.order())
                .filter(|&x| self.s.index_of(&super::SPair {
                    alpha: e.conj_on_h(x),
                    beta: e.conj_on_q(x),
                }) == Some(0))
                .map(|x| inn_of[x]),
        );
        let from_cz = sorted_set(cz.iter().map(|&x| inn_of[x]));
        r.check("ker u = image of C_G H ∩ π⁻¹zQ", ker_u == from_cz);
        r.check("|ker u| = |C_G H ∩ π⁻¹zQ| / |zG|", ker_u.len() * zg.order() == cz.len());
        r.check("|B| = |Inn G| / |ker u|", self.s.b.len() * ker_u.len() == inn.len());

        // V-coset of an H¹ class: its minimal element
        let v_coset = |c: usize| v.iter().map(|&w| h1.add(module, c, w)).min().unwrap();
        let h1bar: Vec<usize> = sorted_set((0..h1.order()).map(v_coset));

        r.term("H1bar(Q,zH)", h1bar.len());
        r.term("Out(G,H)", out_reps.len());
        let (sbar_id, sbar_reps) = self.s.sbar();
        r.term("Sbar", sbar_reps.len());
        r.term("H2(Q,zH)", self.h2().order());

        // H̄¹ → Out(G,H)
        let z = z1(module, caps)?;
        let mut well_defined = true;
        let mut to_out: HashMap<usize, usize> = HashMap::new();
        for s in &z {
            let gamma = mu(e, module, s)?;
            let o = out_id[rel.perms.index_of(&gamma).expect("μ(σ) preserves H")];
            let key = v_coset(h1.class_of(module, s).ok_or(Error::NotACocycle)?);
            if *to_out.entry(key).or_insert(o) != o {
                well_defined = false;
            }
        }
        r.check("H1bar -> Out(G,H) is well defined", well_defined);
        let trivial_out = out_id[0];
        let ker_first = sorted_set(to_out.iter().filter(|(_, &o)| o == trivial_out).map(|(&k, _)| k));
        r.junction("H1bar(Q,zH)", &ker_first, &[v_coset(0)]);

        // Out(G,H) → S̄
        let res_all = self.res_table()?;
        r.check(
            "res(Inn G) ⊆ B",
            inn.iter().all(|&i| self.s.b.binary_search(&res_all[i]).is_ok()),
        );
        let mut res_bar_ok = true;
        let mut out_to_sbar = vec![usize::MAX; out_reps.len()];
        for (i, &rv) in res_all.iter().enumerate() {
            let o = out_id[i];
            let sb = sbar_id[rv];
            if out_to_sbar[o] != usize::MAX && out_to_sbar[o] != sb {
                res_bar_ok = false;
            }
            out_to_sbar[o] = sb;
        }
        r.check("Out(G,H) -> Sbar is well defined", res_bar_ok);
        let image_h1bar = sorted_set(to_out.values().copied());
        let ker_res_bar = sorted_set((0..out_reps.len()).filter(|&o| out_to_sbar[o] == sbar_id[0]));
        r.junction("Out(G,H)", &ker_res_bar, &image_h1bar);

        // S̄ → H²
        let lambda = self.lambda_table()?;
        let sp = &self.s.perms;
        let constant = (0..sp.order()).all(|t| {
            self.s
                .b
                .iter()
                .all(|&b| lambda[sp.mul(b, t)] == lambda[t] && lambda[sp.mul(t, b)] == lambda[t])
        });
        r.check("lambda is constant on B-cosets", constant);
        let image_out = sorted_set(out_to_sbar.iter().copied());
        let ker_lambda_bar = sorted_set(
            (0..sp.order())
                .filter(|&t| lambda[t] == self.h2_zero())
                .map(|t| sbar_id[t]),
        );
        r.junction("Sbar", &ker_lambda_bar, &image_out);
        let iso_bar = sorted_set(self.stabilizer()?.iter().map(|&t| sbar_id[t]));
        r.check("image in Sbar = Iso_S E / B", iso_bar == image_out);
        r.witnesses
            .get_or_insert_with(Default::default)
            .insert("V".into(), v.clone());
        if self.is_centric() {
            r.check("centric: H1bar = H1", h1bar.len() == h1.order());
        }
        Ok(r)
    }
}
