//! Compatible automorphism pairs `S ⊆ Aut H × Aut Q`, their right action
//! on the fiber `X_Φ(Q, H)`, the derivation `λ_E: S → H²(Q, zH)` and the
//! maps `res`, `μ` relating `Aut(G,H)` to `S` and `Z¹(Q, zH)`.
//!
//! [`Analysis`] bundles everything derived from one extension so the
//! sequence checks, the `S̄` decomposition, the solvability report and the
//! counting check share work.

mod report;
mod sbar;
mod sequences;
mod series;
mod solv;
mod verify;

use std::collections::BTreeSet;
use std::sync::OnceLock;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::autos::{aut_group, out_group, relative_indices, AutGroup, OutGroup};
use crate::caps::Caps;
use crate::cohomology::{center_module_of, CohomologyGroup, Fiber, QModule};
use crate::error::{Error, Result};
use crate::extensions::{
    are_equivalent, extends, factor_system, is_compatible_with, outer_action, pullback, pushout, Extension,
    FactorSystem, InnerTable, OuterAction,
};
use crate::groups::Group;
use crate::perm::{Automorphism, Perm, PermGroup};

pub use report::{Check, Junction, SequenceReport, Term};
pub use sbar::{LiftCheck, SbarDecomposition};
pub use series::{CountingReport, NormalSeriesReport};
pub use solv::{PresolvCheck, SolvabilityReport};
pub use verify::{Theorem, Verdict};

/// `θ = (α, β) ∈ Aut H × Aut Q`, composed componentwise: `θθ' = (αα', ββ')`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SPair {
    pub alpha: Automorphism,
    pub beta: Automorphism,
}

impl SPair {
    pub fn identity(nh: usize, nq: usize) -> SPair {
        SPair {
            alpha: Perm::identity(nh),
            beta: Perm::identity(nq),
        }
    }

    /// The pair as one permutation of `H ⊔ Q`.
    pub fn joint(&self) -> Perm {
        let nh = self.alpha.degree();
        let mut images = self.alpha.images.clone();
        images.extend(self.beta.images.iter().map(|&x| x + nh));
        Perm::new(images)
    }

    pub fn from_joint(p: &Perm, nh: usize) -> SPair {
        SPair {
            alpha: Perm::new(p.images[..nh].to_vec()),
            beta: Perm::new(p.images[nh..].iter().map(|&x| x - nh).collect()),
        }
    }

    pub fn compose(&self, other: &SPair) -> SPair {
        SPair {
            alpha: self.alpha.compose(&other.alpha),
            beta: self.beta.compose(&other.beta),
        }
    }
}

/// The group `S` of compatible pairs with its subgroups `B` (pairs induced
/// by conjugation in `G`) and `Inn H` (pairs `(c_h, 1)`).
#[derive(Clone, Debug)]
pub struct SGroup {
    nh: usize,
    perms: PermGroup,
    b: Vec<usize>,
    inn_h: Vec<usize>,
    group_view: Option<Group>,
}

impl SGroup {
    pub fn order(&self) -> usize {
        self.perms.order()
    }

    pub fn pair(&self, i: usize) -> SPair {
        SPair::from_joint(self.perms.element(i), self.nh)
    }

    pub fn pairs(&self) -> Vec<SPair> {
        (0..self.order()).map(|i| self.pair(i)).collect()
    }

    pub fn index_of(&self, theta: &SPair) -> Option<usize> {
        self.perms.index_of(&theta.joint())
    }

    pub fn perm_group(&self) -> &PermGroup {
        &self.perms
    }

    /// Sorted indices of `B`.
    pub fn b(&self) -> &[usize] {
        &self.b
    }

    /// Sorted indices of the pairs `(c_h, 1)`.
    pub fn inn_h(&self) -> &[usize] {
        &self.inn_h
    }

    pub fn group_view(&self) -> Option<&Group> {
        self.group_view.as_ref()
    }

    /// `S̄ = S/B` as coset ids and canonical representatives.
    pub fn sbar(&self) -> (Vec<usize>, Vec<usize>) {
        self.perms.cosets(&self.b)
    }

    /// `Ŝ = S/Inn H` as coset ids and canonical representatives.
    pub fn shat(&self) -> (Vec<usize>, Vec<usize>) {
        self.perms.cosets(&self.inn_h)
    }
}

/// `E·θ = α⁻¹_* β^* E`.
pub fn act(theta: &SPair, fs: &FactorSystem) -> Result<FactorSystem> {
    let pulled = pullback(&theta.beta.images, fs.q(), fs)?;
    pushout(&theta.alpha.inverse(), &pulled)
}

/// `res(γ) = (γ|H, γ mod H)` for `γ ∈ Aut(G, H)`.
pub fn res(e: &Extension, gamma: &Automorphism) -> Result<SPair> {
    let g = e.g();
    if !g.is_automorphism(gamma) {
        return Err(Error::InvalidInput("not an automorphism of G".into()));
    }
    if e.h().members().iter().any(|&x| !e.h().contains(gamma.apply(x))) {
        return Err(Error::NotRelative);
    }
    let nh = e.h_group().order();
    let alpha = Perm::new((0..nh).map(|i| e.h_index(gamma.apply(e.h_elem(i)))).collect());
    let beta = Perm::new(
        e.section()
            .iter()
            .map(|&u| e.proj().apply(gamma.apply(u)))
            .collect(),
    );
    Ok(SPair { alpha, beta })
}

/// `μ(σ)(g) = σ(πg)·g` for a 1-cocycle `σ: Q → zH`; checked to be an
/// automorphism acting trivially on `H` and on `Q`.
pub fn mu(e: &Extension, module: &QModule, sigma: &[usize]) -> Result<Automorphism> {
    if !module.is_cocycle1(sigma) {
        return Err(Error::NotACocycle);
    }
    let g = e.g();
    let gamma = Perm::new(
        (0..g.order())
            .map(|x| g.mul(e.h_elem(module.embedding()[sigma[e.proj().apply(x)]]), x))
            .collect(),
    );
    let fixes_h = e.h().members().iter().all(|&x| gamma.apply(x) == x);
    let fixes_q = (0..g.order()).all(|x| e.proj().apply(gamma.apply(x)) == e.proj().apply(x));
    if !g.is_automorphism(&gamma) || !fixes_h || !fixes_q {
        return Err(Error::InvalidInput("μ(σ) is not an automorphism over (1, 1)".into()));
    }
    Ok(gamma)
}

/// All pairs passing the outer-level test, with `B` and `Inn H`.
pub fn compatibility_group(e: &Extension, caps: &Caps) -> Result<SGroup> {
    let fs = factor_system(e);
    let aut_h = aut_group(fs.h(), caps)?;
    let aut_q = aut_group(fs.q(), caps)?;
    build_s(e, &fs, &aut_h, &aut_q, &InnerTable::new(fs.h()), caps)
}

fn build_s(
    e: &Extension,
    fs: &FactorSystem,
    aut_h: &AutGroup,
    aut_q: &AutGroup,
    inner: &InnerTable,
    caps: &Caps,
) -> Result<SGroup> {
    let space = aut_h.order() as u128 * aut_q.order() as u128;
    if space > caps.sigma {
        return Err(Error::SearchCapExceeded {
            what: "compatible pair scan",
            size: space,
            cap: caps.sigma,
        });
    }
    let (nh, nq) = (fs.h().order(), fs.q().order());
    let joints: Vec<Perm> = (0..aut_h.order())
        .into_par_iter()
        .flat_map_iter(|i| {
            let alpha = aut_h.element(i);
            aut_q
                .elements()
                .iter()
                .filter(move |beta| is_compatible_with(fs, alpha, beta, inner))
                .map(move |beta| {
                    SPair {
                        alpha: alpha.clone(),
                        beta: beta.clone(),
                    }
                    .joint()
                })
                .collect::<Vec<_>>()
        })
        .collect();
    let perms = PermGroup::from_elements(nh + nq, joints)?;
    let index = |alpha: Perm, beta: Perm| -> Result<usize> {
        perms
            .index_of(&SPair { alpha, beta }.joint())
            .ok_or_else(|| Error::InvalidInput("conjugation pair is not compatible".into()))
    };
    let mut b = (0..e.g().order())
        .map(|x| index(e.conj_on_h(x), e.conj_on_q(x)))
        .collect::<Result<Vec<_>>>()?;
    b.sort_unstable();
    b.dedup();
    let mut inn_h = (0..nh)
        .map(|x| index(fs.h().inner(x), Perm::identity(nq)))
        .collect::<Result<Vec<_>>>()?;
    inn_h.sort_unstable();
    inn_h.dedup();
    let group_view = if perms.order() <= caps.order {
        Some(perms.cayley("S", caps)?)
    } else {
        None
    };
    Ok(SGroup {
        nh,
        perms,
        b,
        inn_h,
        group_view,
    })
}

/// Orbit of `E` in the fiber (as `H²` labels), its stabilizer in `S` and
/// the orbit size under `Ŝ`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitStabilizer {
    pub orbit: Vec<usize>,
    pub stabilizer: Vec<usize>,
    pub shat_orbit_size: usize,
}

/// `Aut G` together with the indices of `Aut(G, H)` inside it.
#[derive(Clone, Debug)]
pub struct RelativeAut {
    pub aut_g: AutGroup,
    pub indices: Vec<usize>,
    pub perms: PermGroup,
}

/// Everything derived from one extension.
pub struct Analysis {
    e: Extension,
    fs: FactorSystem,
    caps: Caps,
    aut_h: AutGroup,
    out_h: OutGroup,
    aut_q: AutGroup,
    phi: OuterAction,
    module: QModule,
    h1: CohomologyGroup,
    fiber: Fiber,
    s: SGroup,
    relative: OnceLock<Result<RelativeAut>>,
    stabilizer: OnceLock<Result<Vec<usize>>>,
    lambda: OnceLock<Result<Vec<usize>>>,
}

impl Analysis {
    pub fn new(e: &Extension, caps: &Caps) -> Result<Analysis> {
        let fs = factor_system(e);
        let aut_h = aut_group(fs.h(), caps)?;
        let out_h = out_group(&aut_h, caps)?;
        let aut_q = aut_group(fs.q(), caps)?;
        let phi = outer_action(e, &aut_h, &out_h)?;
        let inner = InnerTable::new(fs.h());
        let module = center_module_of(&fs)?;
        let h1 = crate::cohomology::h1(&module, caps)?;
        let fiber = Fiber::new(&fs, caps)?;
        let s = build_s(e, &fs, &aut_h, &aut_q, &inner, caps)?;
        Ok(Analysis {
            e: e.clone(),
            fs,
            caps: caps.clone(),
            aut_h,
            out_h,
            aut_q,
            phi,
            module,
            h1,
            fiber,
            s,
            relative: OnceLock::new(),
            stabilizer: OnceLock::new(),
            lambda: OnceLock::new(),
        })
    }

    pub fn extension(&self) -> &Extension {
        &self.e
    }

    pub fn factor_system(&self) -> &FactorSystem {
        &self.fs
    }

    pub fn caps(&self) -> &Caps {
        &self.caps
    }

    pub fn aut_h(&self) -> &AutGroup {
        &self.aut_h
    }

    pub fn out_h(&self) -> &OutGroup {
        &self.out_h
    }

    pub fn aut_q(&self) -> &AutGroup {
        &self.aut_q
    }

    pub fn outer(&self) -> &OuterAction {
        &self.phi
    }

    pub fn module(&self) -> &QModule {
        &self.module
    }

    pub fn h1(&self) -> &CohomologyGroup {
        &self.h1
    }

    pub fn h2(&self) -> &CohomologyGroup {
        self.fiber.h2()
    }

    pub fn fiber(&self) -> &Fiber {
        &self.fiber
    }

    pub fn s(&self) -> &SGroup {
        &self.s
    }

    /// Whether `C_G(H) ⊆ H`.
    pub fn is_centric(&self) -> bool {
        let g = self.e.g();
        g.centralizer(self.e.h()).is_subset_of(self.e.h())
    }

    /// `Aut(G, H)`, computed on first use.
    pub fn relative(&self) -> Result<&RelativeAut> {
        self.relative
            .get_or_init(|| {
                let aut_g = aut_group(self.e.g(), &self.caps)?;
                let indices = relative_indices(&aut_g, self.e.h());
                let perms = PermGroup::from_elements(
                    self.e.g().order(),
                    indices.iter().map(|&i| aut_g.element(i).clone()).collect(),
                )?;
                Ok(RelativeAut { aut_g, indices, perms })
            })
            .as_ref()
            .map_err(Clone::clone)
    }

    pub fn act(&self, theta: usize, fs: &FactorSystem) -> Result<FactorSystem> {
        act(&self.s.pair(theta), fs)
    }

    /// `Iso_S E = {θ : E·θ ≡ E}`, tested directly by equivalence.
    pub fn stabilizer(&self) -> Result<&[usize]> {
        self.stabilizer
            .get_or_init(|| {
                let flags = (0..self.s.order())
                    .into_par_iter()
                    .map(|t| are_equivalent(&self.act(t, &self.fs)?, &self.fs, &self.caps))
                    .collect::<Result<Vec<bool>>>()?;
                Ok((0..flags.len()).filter(|&t| flags[t]).collect())
            })
            .as_ref()
            .map(|v| v.as_slice())
            .map_err(Clone::clone)
    }

    /// `λ_E(θ) = (E − E·θ)` for every `θ ∈ S`, as `H²` class indices.
    pub fn lambda_table(&self) -> Result<&[usize]> {
        self.lambda
            .get_or_init(|| {
                (0..self.s.order())
                    .into_par_iter()
                    .map(|t| self.fiber.diff(&self.fs, &self.act(t, &self.fs)?))
                    .collect::<Result<Vec<usize>>>()
            })
            .as_ref()
            .map(|v| v.as_slice())
            .map_err(Clone::clone)
    }

    pub fn lambda(&self, theta: usize) -> Result<usize> {
        Ok(self.lambda_table()?[theta])
    }

    /// Index of the zero class of `H²`.
    pub fn h2_zero(&self) -> usize {
        0
    }

    /// `θ*` on `H²`, as a class map.
    pub fn theta_star(&self, theta: usize) -> Result<Vec<usize>> {
        let pair = self.s.pair(theta);
        let alpha = crate::cohomology::restrict_to_module(&self.module, &pair.alpha)?;
        crate::cohomology::induced_h2(&self.module, self.h2(), &alpha, &pair.beta)
    }

    pub fn orbit_and_stabilizer(&self) -> Result<OrbitStabilizer> {
        let stab = self.stabilizer()?.to_vec();
        let perms = &self.s.perms;
        // E·θ only depends on the coset Iso·θ, i.e. on θ⁻¹·Iso
        let (_, reps) = perms.cosets(&stab);
        let mut orbit = reps
            .par_iter()
            .map(|&r| self.fiber.label(&self.act(perms.inv(r), &self.fs)?))
            .collect::<Result<Vec<usize>>>()?;
        orbit.sort_unstable();
        orbit.dedup();
        if orbit.len() * stab.len() != self.s.order() {
            return Err(Error::InvalidInput("orbit-stabilizer count fails".into()));
        }
        // Ŝ acts through S since Inn H fixes every class
        let shat_orbit_size = orbit.len();
        Ok(OrbitStabilizer {
            orbit,
            stabilizer: stab,
            shat_orbit_size,
        })
    }

    /// Orbits of `S` on the whole fiber, as sorted lists of `H²` labels.
    pub fn fiber_orbits(&self) -> Result<Vec<Vec<usize>>> {
        let classes = self.fiber.classes();
        let gens = self.s.perms.generators();
        // action table of the generators on labels
        let table = gens
            .par_iter()
            .map(|&t| {
                classes
                    .iter()
                    .map(|c| self.fiber.label(&self.act(t, c)?))
                    .collect::<Result<Vec<usize>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let mut seen = vec![false; classes.len()];
        let mut orbits = Vec::new();
        for start in 0..classes.len() {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut orbit = vec![start];
            let mut head = 0;
            while head < orbit.len() {
                let x = orbit[head];
                head += 1;
                for row in &table {
                    if !seen[row[x]] {
                        seen[row[x]] = true;
                        orbit.push(row[x]);
                    }
                }
            }
            orbit.sort_unstable();
            orbits.push(orbit);
        }
        Ok(orbits)
    }

    /// `res` on every element of `Aut(G, H)`, as indices into `S`.
    pub fn res_table(&self) -> Result<Vec<usize>> {
        let rel = self.relative()?;
        rel.perms
            .elements()
            .par_iter()
            .map(|gamma| {
                let pair = res(&self.e, gamma)?;
                self.s
                    .index_of(&pair)
                    .ok_or_else(|| Error::InvalidInput("res(γ) is not a compatible pair".into()))
            })
            .collect()
    }

    /// `S` indices of the pairs that extend to automorphisms of `G`.
    pub fn extendable(&self) -> Result<Vec<usize>> {
        let flags = (0..self.s.order())
            .into_par_iter()
            .map(|t| {
                let p = self.s.pair(t);
                Ok(extends(&self.e, &p.alpha, &p.beta, &self.caps)?.is_some())
            })
            .collect::<Result<Vec<bool>>>()?;
        Ok((0..flags.len()).filter(|&t| flags[t]).collect())
    }

    /// `H⁰(Q, zH)` computed as `zG ∩ H`, as elements of `G`.
    pub fn h0_as_center(&self) -> Vec<usize> {
        let zg = self.e.g().center();
        zg.intersect(self.e.h()).members().to_vec()
    }
}

pub(crate) fn sorted_set<I: IntoIterator<Item = usize>>(it: I) -> Vec<usize> {
    it.into_iter().collect::<BTreeSet<_>>().into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extensions::make_extension;
    use crate::groups::{standard_group, GroupSpec};

    fn g(s: &str) -> Group {
        standard_group(&s.parse::<GroupSpec>().unwrap()).unwrap()
    }

    fn center_ext(s: &str) -> Extension {
        let grp = g(s);
        make_extension(&grp, &grp.center()).unwrap()
    }

    #[test]
    fn s_group_orders() {
        let caps = Caps::default();
        assert_eq!(compatibility_group(&center_ext("dihedral(8)"), &caps).unwrap().order(), 6);
        let s3 = g("symmetric(3)");
        let x = (0..6).find(|&x| s3.element_order(x) == 3).unwrap();
        let e = make_extension(&s3, &s3.subgroup_generated(&[x])).unwrap();
        assert_eq!(compatibility_group(&e, &caps).unwrap().order(), 2);
    }

    #[test]
    fn dihedral_center_orbits() {
        let caps = Caps::default();
        let a = Analysis::new(&center_ext("dihedral(8)"), &caps).unwrap();
        let mut sizes: Vec<usize> = a.fiber_orbits().unwrap().iter().map(|o| o.len()).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![1, 1, 3, 3]);
        let os = a.orbit_and_stabilizer().unwrap();
        assert_eq!((os.orbit.len(), os.stabilizer.len()), (3, 2));
        let q8 = Analysis::new(&center_ext("quaternion(8)"), &caps).unwrap();
        assert_eq!(q8.orbit_and_stabilizer().unwrap().stabilizer.len(), 6);
    }

    #[test]
    fn res_and_mu() {
        let caps = Caps::default();
        let a = Analysis::new(&center_ext("dihedral(8)"), &caps).unwrap();
        let rel = a.relative().unwrap();
        assert_eq!(rel.perms.order(), 8);
        let res_all = a.res_table().unwrap();
        assert!(rel.perms.is_hom_into(&res_all, |x, y| a.s().perm_group().mul(x, y)));
        let z1 = crate::cohomology::z1(a.module(), &caps).unwrap();
        assert_eq!(z1.len(), 4);
        for s in &z1 {
            let m = mu(a.extension(), a.module(), s).unwrap();
            let i = rel.perms.index_of(&m).unwrap();
            assert_eq!(res_all[i], 0);
        }
    }

    #[test]
    fn sequences_on_center_extensions() {
        let caps = Caps::default();
        for (name, aut) in [("dihedral(8)", 8), ("quaternion(8)", 24)] {
            let a = Analysis::new(&center_ext(name), &caps).unwrap();
            let cyc = a.cycle_sequence().unwrap();
            assert!(cyc.is_exact(), "{name}: {:?}", cyc.failures());
            assert_eq!(cyc.order_of("Aut(G,H)"), Some(aut));
            let basic = a.basic_sequence().unwrap();
            assert!(basic.is_exact(), "{name}: {:?}", basic.failures());
            let c = a.counting_check().unwrap();
            assert!(c.holds && c.orbit_bound, "{name}: {c:?}");
            let ns = a.normal_series().unwrap();
            assert!(ns.holds(), "{name}: {ns:?}");
            let d = a.decompose_sbar().unwrap();
            assert!(d.is_consistent(), "{name}: {d:?}");
            let sr = a.solvability_report().unwrap();
            assert!(sr.consistent && sr.five_term.is_exact(), "{name}: {sr:?}");
        }
    }
}
