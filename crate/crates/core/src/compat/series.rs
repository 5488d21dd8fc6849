//! The counting formula for `|Aut(G, H)|` and the normal series
//! `Aut(G,H) = A₀ ⊇ A₁ ⊇ A₂ ⊇ A₃ = 1`.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::{mu, sorted_set, Analysis};
use crate::cohomology::{h0, Cochain};
use crate::error::{Error, Result};

/// `|Aut(G,H)|·|H⁰|·|O| = |H¹|·|H|·|Ŝ|` with every factor computed
/// independently, and the orbit bound `|O| ≤ |H²|`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountingReport {
    pub aut_gh: u64,
    pub h1: u64,
    pub h0: u64,
    pub h0_fixed_points: u64,
    pub orbit: u64,
    pub h: u64,
    pub shat: u64,
    pub h2: u64,
    pub predicted: Option<u64>,
    pub holds: bool,
    pub orbit_bound: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NormalSeriesReport {
    pub orders: [u64; 4],
    /// `(|A₂/A₃|, |A₁/A₂|, |A₀/A₁|)`.
    pub quotients: [u64; 3],
    pub normal: bool,
    /// `A₂/A₃ ≅ H/(zG ∩ H)` via `h ↦ c_h`.
    pub a2_iso: bool,
    /// `A₁/A₂ ≅ H¹(Q, zH)` via `γ ↦ [μ⁻¹(c_h⁻¹γ)]`.
    pub a1_iso: bool,
    /// `A₀/A₁ ≅ Iso_Ŝ E` via `res` modulo `Inn H`.
    pub a0_iso: bool,
}

impl NormalSeriesReport {
    pub fn holds(&self) -> bool {
        self.normal && self.a2_iso && self.a1_iso && self.a0_iso
    }
}

impl Analysis {
    pub fn counting_check(&self) -> Result<CountingReport> {
        let rel = self.relative()?;
        let aut_gh = rel.perms.order() as u64;
        let h0_center = self.h0_as_center().len() as u64;
        let h0_fixed = h0(&self.module).order() as u64;
        let orbit = self.orbit_and_stabilizer()?.orbit.len() as u64;
        let h = self.fs.h().order() as u64;
        let shat = (self.s.order() / self.s.inn_h.len()) as u64;
        let h1 = self.h1.order() as u64;
        let h2 = self.h2().order() as u64;
        let num = h1 * h * shat;
        let den = h0_center * orbit;
        let predicted = (num % den == 0).then_some(num / den);
        Ok(CountingReport {
            aut_gh,
            h1,
            h0: h0_center,
            h0_fixed_points: h0_fixed,
            orbit,
            h,
            shat,
            h2,
            predicted,
            holds: aut_gh * den == num && h0_center == h0_fixed,
            orbit_bound: orbit <= h2,
        })
    }

    pub fn normal_series(&self) -> Result<NormalSeriesReport> {
        let rel = self.relative()?;
        let perms = &rel.perms;
        let e = &self.e;
        let g = e.g();
        let module = &self.module;
        let res_all = self.res_table()?;
        let inn_h = &self.s.inn_h;
        let n0 = perms.order();

        let a1 = sorted_set((0..n0).filter(|&i| inn_h.binary_search(&res_all[i]).is_ok()));
        let c_of_h: Vec<usize> = (0..self.fs.h().order())
            .map(|x| perms.index_of(&g.inner(e.h_elem(x))).expect("c_h preserves H"))
            .collect();
        let a2 = sorted_set(c_of_h.iter().copied());
        let a3 = vec![0];
        let normal = [&a1, &a2, &a3].iter().all(|s| perms.is_normal(s))
            && a2.iter().all(|x| a1.binary_search(x).is_ok());

        // A₂ ≅ H/(zG ∩ H): h ↦ c_h has kernel zG ∩ H
        let zg_h = self.h0_as_center();
        let kernel: Vec<usize> = sorted_set((0..c_of_h.len()).filter(|&x| c_of_h[x] == 0).map(|x| e.h_elem(x)));
        let hom = (0..c_of_h.len()).all(|x| {
            (0..c_of_h.len()).all(|y| c_of_h[self.fs.h().mul(x, y)] == perms.mul(c_of_h[x], c_of_h[y]))
        });
        let a2_iso = hom && kernel == zg_h && a2.len() * zg_h.len() == c_of_h.len();

        // A₁ → H¹: strip the inner part on H, read off the cocycle
        let emb_pos: HashMap<usize, usize> = module.embedding().iter().enumerate().map(|(i, &p)| (p, i)).collect();
        let mut class_of = HashMap::new();
        let mut well_defined = true;
        for &i in &a1 {
            let alpha = self.s.pair(res_all[i]).alpha;
            let mut seen = None;
            for x in 0..c_of_h.len() {
                if self.fs.h().inner(x) != alpha {
                    continue;
                }
                let stripped = perms.mul(perms.inv(c_of_h[x]), i);
                let gamma = perms.element(stripped);
                let sigma: Option<Cochain> = e
                    .section()
                    .iter()
                    .map(|&u| emb_pos.get(&e.h_index(g.mul(gamma.apply(u), g.inv(u)))).copied())
                    .collect();
                let class = sigma
                    .filter(|s| mu(e, module, s).ok().as_ref() == Some(gamma))
                    .and_then(|s| self.h1.class_of(module, &s))
                    .ok_or(Error::NotACocycle)?;
                if *seen.get_or_insert(class) != class {
                    well_defined = false;
                }
            }
            class_of.insert(i, seen.ok_or_else(|| Error::InvalidInput("res(γ) is not (c_h, 1)".into()))?);
        }
        let image = sorted_set(class_of.values().copied());
        let ker = sorted_set(a1.iter().copied().filter(|i| class_of[i] == 0));
        let hom1 = a1.iter().all(|&i| {
            a1.iter().all(|&j| class_of[&perms.mul(i, j)] == self.h1.add(module, class_of[&i], class_of[&j]))
        });
        let a1_iso = well_defined && hom1 && ker == a2 && image.len() == self.h1.order();

        // A₀ → Iso_Ŝ E
        let (shat_id, _) = self.s.shat();
        let iso_hat = sorted_set(self.stabilizer()?.iter().map(|&t| shat_id[t]));
        let image0 = sorted_set(res_all.iter().map(|&t| shat_id[t]));
        let ker0 = sorted_set((0..n0).filter(|&i| shat_id[res_all[i]] == shat_id[0]));
        let a0_iso = image0 == iso_hat && ker0 == a1;

        Ok(NormalSeriesReport {
            orders: [n0 as u64, a1.len() as u64, a2.len() as u64, 1],
            quotients: [
                a2.len() as u64,
                (a1.len() / a2.len()) as u64,
                (n0 / a1.len()) as u64,
            ],
            normal,
            a2_iso,
            a1_iso,
            a0_iso,
        })
    }
}
