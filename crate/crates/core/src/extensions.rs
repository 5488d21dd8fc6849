//! Extensions `1 → H → G → Q → 1` as data: factor systems, their
//! realization, pullback and pushout, and morphisms between realized
//! extensions through connecting maps `σ: Q → H`.
//!
//! A realized extension `E_{φ,f}` has element set `H × Q` with
//! `(n,q)(n',q') = (n·φ(q)(n')·f(q,q'), qq')`; the pair `(n,q)` has index
//! `n·|Q| + q`.

use std::collections::HashMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::autos::{AutGroup, OutGroup};
use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::groups::{generator_chain, Group, Hom, Subgroup};
use crate::perm::{Automorphism, Perm};

/// A normal subgroup `H ⊴ G` with its quotient, projection and a
/// normalized section `Q → G`.
#[derive(Clone, Debug)]
pub struct Extension {
    g: Group,
    h: Subgroup,
    h_group: Group,
    h_pos: Vec<usize>,
    q: Group,
    proj: Hom,
    section: Vec<usize>,
}

pub fn make_extension(g: &Group, h: &Subgroup) -> Result<Extension> {
    let (q, proj) = g.quotient(h)?;
    let q = q.with_label(&format!("{}/{}", g.label(), h.order()));
    let mut section = vec![usize::MAX; q.order()];
    for x in 0..g.order() {
        let c = proj.apply(x);
        if section[c] == usize::MAX {
            section[c] = x;
        }
    }
    let (h_group, _) = g.subgroup_as_group(h, &format!("H{}", h.order()));
    Ok(Extension {
        g: g.clone(),
        h: h.clone(),
        h_pos: h.positions(),
        h_group,
        q,
        proj,
        section,
    })
}

impl Extension {
    pub fn g(&self) -> &Group {
        &self.g
    }

    /// `H` as a subgroup of `G`.
    pub fn h(&self) -> &Subgroup {
        &self.h
    }

    /// `H` as a group on the positions of its sorted member list.
    pub fn h_group(&self) -> &Group {
        &self.h_group
    }

    pub fn q(&self) -> &Group {
        &self.q
    }

    pub fn proj(&self) -> &Hom {
        &self.proj
    }

    pub fn section(&self) -> &[usize] {
        &self.section
    }

    /// Position in `H` of an element of `G` lying in `H`.
    pub fn h_index(&self, g: usize) -> usize {
        self.h_pos[g]
    }

    /// Element of `G` at position `i` of `H`.
    pub fn h_elem(&self, i: usize) -> usize {
        self.h.members()[i]
    }

    /// Replaces the section; it must be normalized and split the projection.
    pub fn with_section(mut self, section: Vec<usize>) -> Result<Extension> {
        if section.len() != self.q.order()
            || section[0] != 0
            || section
                .iter()
                .enumerate()
                .any(|(q, &x)| x >= self.g.order() || self.proj.apply(x) != q)
        {
            return Err(Error::InvalidInput("section does not split the projection".into()));
        }
        self.section = section;
        Ok(self)
    }

    /// `g ↦ (h, q)` with `g = h·u(q)`, as a realized index `h·|Q| + q`.
    pub fn to_pair_index(&self, g: usize) -> usize {
        let q = self.proj.apply(g);
        let h = self.g.mul(g, self.g.inv(self.section[q]));
        self.h_pos[h] * self.q.order() + q
    }

    pub fn from_pair_index(&self, x: usize) -> usize {
        let (h, q) = (x / self.q.order(), x % self.q.order());
        self.g.mul(self.h_elem(h), self.section[q])
    }

    /// Restriction to `H` of conjugation by `g`, on positions of `H`.
    pub fn conj_on_h(&self, g: usize) -> Perm {
        Perm::new(
            self.h
                .members()
                .iter()
                .map(|&x| self.h_pos[self.g.conj(g, x)])
                .collect(),
        )
    }

    /// Conjugation by `π(g)` on `Q`.
    pub fn conj_on_q(&self, g: usize) -> Perm {
        self.q.inner(self.proj.apply(g))
    }
}

/// Normalized factor system `(φ, f)` of an extension of `H` by `Q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorSystem {
    h: Group,
    q: Group,
    phi: Vec<Automorphism>,
    f: Vec<usize>,
}

impl FactorSystem {
    /// `f` is given row-major: `f[a·|Q| + b] = f(a, b)`.
    pub fn new(h: Group, q: Group, phi: Vec<Automorphism>, f: Vec<usize>) -> Result<FactorSystem> {
        let fs = FactorSystem { h, q, phi, f };
        fs.validate()?;
        Ok(fs)
    }

    fn new_unchecked(h: Group, q: Group, phi: Vec<Automorphism>, f: Vec<usize>) -> FactorSystem {
        FactorSystem { h, q, phi, f }
    }

    pub fn h(&self) -> &Group {
        &self.h
    }

    pub fn q(&self) -> &Group {
        &self.q
    }

    pub fn phi(&self, q: usize) -> &Automorphism {
        &self.phi[q]
    }

    pub fn phis(&self) -> &[Automorphism] {
        &self.phi
    }

    #[inline]
    pub fn f(&self, a: usize, b: usize) -> usize {
        self.f[a * self.q.order() + b]
    }

    pub fn f_values(&self) -> &[usize] {
        &self.f
    }

    pub fn validate(&self) -> Result<()> {
        let (h, q) = (&self.h, &self.q);
        let (nh, nq) = (h.order(), q.order());
        let bad = |m: &str| Err(Error::InvalidFactorSystem(m.to_string()));
        if self.phi.len() != nq || self.f.len() != nq * nq {
            return bad("array lengths do not match |Q|");
        }
        if self.f.iter().any(|&x| x >= nh) {
            return bad("f takes values outside H");
        }
        if !self.phi[0].is_identity() {
            return bad("φ(1) is not the identity");
        }
        if (0..nq).any(|a| self.f(0, a) != 0 || self.f(a, 0) != 0) {
            return bad("f is not normalized");
        }
        if let Some(a) = (0..nq).find(|&a| !h.is_automorphism(&self.phi[a])) {
            return bad(&format!("φ({a}) is not an automorphism of H"));
        }
        for a in 0..nq {
            for b in 0..nq {
                let fab = self.f(a, b);
                let ab = q.mul(a, b);
                for x in 0..nh {
                    let lhs = self.phi[a].apply(self.phi[b].apply(x));
                    let rhs = h.conj(fab, self.phi[ab].apply(x));
                    if lhs != rhs {
                        return bad(&format!("φ({a})φ({b}) ≠ c_f({a},{b})·φ({a}{b})"));
                    }
                }
                for c in 0..nq {
                    let lhs = h.mul(self.phi[a].apply(self.f(b, c)), self.f(a, q.mul(b, c)));
                    let rhs = h.mul(fab, self.f(ab, c));
                    if lhs != rhs {
                        return bad(&format!("cocycle identity fails at ({a},{b},{c})"));
                    }
                }
            }
        }
        Ok(())
    }

    /// Product in the realized extension, on pairs `(n, q)`.
    #[inline]
    pub fn mul_pairs(&self, (n, q): (usize, usize), (n2, q2): (usize, usize)) -> (usize, usize) {
        let h = &self.h;
        (
            h.mul(h.mul(n, self.phi[q].apply(n2)), self.f(q, q2)),
            self.q.mul(q, q2),
        )
    }

    /// Whether both systems are over the same `H` and `Q` tables.
    pub fn same_base(&self, other: &FactorSystem) -> bool {
        self.h.same_table(&other.h) && self.q.same_table(&other.q)
    }
}

pub fn factor_system(e: &Extension) -> FactorSystem {
    let (g, q) = (&e.g, &e.q);
    let u = &e.section;
    let phi = (0..q.order()).map(|a| e.conj_on_h(u[a])).collect();
    let mut f = vec![0; q.order() * q.order()];
    for a in 0..q.order() {
        for b in 0..q.order() {
            let x = g.mul(g.mul(u[a], u[b]), g.inv(u[q.mul(a, b)]));
            f[a * q.order() + b] = e.h_pos[x];
        }
    }
    FactorSystem::new_unchecked(e.h_group.clone(), q.clone(), phi, f)
}

/// The realized extension `E_{φ,f}` on `H × Q`.
pub fn realize(fs: &FactorSystem) -> Result<Extension> {
    fs.validate()?;
    let (nh, nq) = (fs.h.order(), fs.q.order());
    let n = nh * nq;
    let mut table = vec![0; n * n];
    for x in 0..n {
        for y in 0..n {
            let (a, b) = fs.mul_pairs((x / nq, x % nq), (y / nq, y % nq));
            table[x * n + y] = a * nq + b;
        }
    }
    let label = format!("E({},{})", fs.h.label(), fs.q.label());
    let g = Group::from_flat(table, n, &label)
        .map_err(|e| Error::InvalidFactorSystem(format!("realization is not a group: {e}")))?;
    let members: Vec<usize> = (0..nh).map(|h| h * nq).collect();
    let h = Subgroup::from_sorted(n, members);
    Ok(Extension {
        h_pos: h.positions(),
        h,
        h_group: fs.h.clone(),
        q: fs.q.clone(),
        proj: Hom {
            images: (0..n).map(|x| x % nq).collect(),
        },
        section: (0..nq).collect(),
        g,
    })
}

/// `β^*`: pulls back along a homomorphism `β: Q' → Q`.
pub fn pullback(beta: &[usize], q_prime: &Group, fs: &FactorSystem) -> Result<FactorSystem> {
    if !q_prime.is_hom_to(&fs.q, beta) {
        return Err(Error::InvalidInput("β is not a homomorphism Q' → Q".into()));
    }
    let n = q_prime.order();
    let phi = (0..n).map(|a| fs.phi[beta[a]].clone()).collect();
    let mut f = vec![0; n * n];
    for a in 0..n {
        for b in 0..n {
            f[a * n + b] = fs.f(beta[a], beta[b]);
        }
    }
    Ok(FactorSystem::new_unchecked(fs.h.clone(), q_prime.clone(), phi, f))
}

/// `α_*`: pushes out along an automorphism `α` of `H`.
pub fn pushout(alpha: &Automorphism, fs: &FactorSystem) -> Result<FactorSystem> {
    if !fs.h.is_automorphism(alpha) {
        return Err(Error::InvalidInput("α is not an automorphism of H".into()));
    }
    let ainv = alpha.inverse();
    let phi = fs
        .phi
        .iter()
        .map(|p| alpha.compose(p).compose(&ainv))
        .collect();
    let f = fs.f.iter().map(|&x| alpha.apply(x)).collect();
    Ok(FactorSystem::new_unchecked(fs.h.clone(), fs.q.clone(), phi, f))
}

/// Outer action `Φ: Q → Out(H)` as outer-class ids.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OuterAction {
    pub classes: Vec<usize>,
}

impl OuterAction {
    pub fn is_trivial(&self) -> bool {
        self.classes.iter().all(|&c| c == 0)
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = self.classes.clone();
        seen.sort_unstable();
        seen.dedup();
        seen.len() == self.classes.len()
    }

    /// Sorted distinct classes: the image `Φ(Q)`.
    pub fn image(&self) -> Vec<usize> {
        let mut seen = self.classes.clone();
        seen.sort_unstable();
        seen.dedup();
        seen
    }

    pub fn kernel(&self) -> Vec<usize> {
        (0..self.classes.len()).filter(|&q| self.classes[q] == 0).collect()
    }
}

/// `Φ(q)` = outer class of conjugation by a preimage of `q`. Recomputed with
/// the maximal-index section and compared, since the class must not depend
/// on the choice.
pub fn outer_action(e: &Extension, aut_h: &AutGroup, out_h: &OutGroup) -> Result<OuterAction> {
    let classes_for = |section: &[usize]| -> Vec<usize> {
        section
            .iter()
            .map(|&g| out_h.class_of(aut_h, &e.conj_on_h(g)).expect("conjugation is an automorphism"))
            .collect()
    };
    let classes = classes_for(&e.section);
    let mut other = vec![0; e.q.order()];
    for x in 0..e.g.order() {
        other[e.proj.apply(x)] = x;
    }
    other[0] = 0;
    if classes_for(&other) != classes {
        return Err(Error::InvalidInput("outer action depends on the section".into()));
    }
    Ok(OuterAction { classes })
}

/// Inner automorphisms of a group, grouped by automorphism.
pub(crate) struct InnerTable {
    by_perm: HashMap<Perm, Vec<usize>>,
}

impl InnerTable {
    pub(crate) fn new(h: &Group) -> Self {
        let mut by_perm: HashMap<Perm, Vec<usize>> = HashMap::new();
        for x in 0..h.order() {
            by_perm.entry(h.inner(x)).or_default().push(x);
        }
        InnerTable { by_perm }
    }

    /// All `x` with `c_x = p`, in increasing order.
    pub(crate) fn preimages(&self, p: &Perm) -> &[usize] {
        self.by_perm.get(p).map(|v| v.as_slice()).unwrap_or(&[])
    }

    pub(crate) fn is_inner(&self, p: &Perm) -> bool {
        self.by_perm.contains_key(p)
    }
}

/// A morphism of realized extensions over `(α, β)`:
/// `γ(h, q) = (α(h)·σ(q), β(q))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Connection {
    pub sigma: Vec<usize>,
    pub gamma: Perm,
}

/// Checks the two conditions making `γ(h,q) = (α(h)σ(q), β(q))` a
/// homomorphism `E_fs → E_fs2`, then the homomorphism law itself on a
/// generating set.
pub fn is_connecting(
    fs: &FactorSystem,
    fs2: &FactorSystem,
    alpha: &Automorphism,
    beta: &Automorphism,
    sigma: &[usize],
) -> bool {
    let (h, q) = (&fs.h, &fs.q);
    let (nh, nq) = (h.order(), q.order());
    if sigma.len() != nq || sigma[0] != 0 || sigma.iter().any(|&x| x >= nh) {
        return false;
    }
    for a in 0..nq {
        let s = sigma[a];
        let p2 = &fs2.phi[beta.apply(a)];
        if (0..nh).any(|x| h.conj(s, p2.apply(alpha.apply(x))) != alpha.apply(fs.phi[a].apply(x))) {
            return false;
        }
    }
    let gens = q.generators();
    for a in 0..nq {
        for &s in &gens {
            let lhs = h.mul(alpha.apply(fs.f(a, s)), sigma[q.mul(a, s)]);
            let ba = beta.apply(a);
            let rhs = h.mul(
                h.mul(sigma[a], fs2.phi[ba].apply(sigma[s])),
                fs2.f(ba, beta.apply(s)),
            );
            if lhs != rhs {
                return false;
            }
        }
    }
    let gamma = connection_map(fs, alpha, beta, sigma);
    let mut gen_pairs: Vec<(usize, usize)> = h.generators().into_iter().map(|x| (x, 0)).collect();
    gen_pairs.extend(gens.iter().map(|&s| (0, s)));
    (0..nh * nq).all(|x| {
        let xp = (x / nq, x % nq);
        gen_pairs.iter().all(|&y| {
            let (m0, m1) = fs.mul_pairs(xp, y);
            let gy = gamma.apply(y.0 * nq + y.1);
            let gx = gamma.apply(x);
            let prod = fs2.mul_pairs((gx / nq, gx % nq), (gy / nq, gy % nq));
            gamma.apply(m0 * nq + m1) == prod.0 * nq + prod.1
        })
    })
}

fn connection_map(fs: &FactorSystem, alpha: &Perm, beta: &Perm, sigma: &[usize]) -> Perm {
    let (h, nq) = (&fs.h, fs.q.order());
    Perm::new(
        (0..h.order() * nq)
            .map(|x| {
                let (n, q) = (x / nq, x % nq);
                h.mul(alpha.apply(n), sigma[q]) * nq + beta.apply(q)
            })
            .collect(),
    )
}

fn check_same_shape(fs: &FactorSystem, fs2: &FactorSystem) -> Result<()> {
    if !fs.same_base(fs2) {
        return Err(Error::InvalidInput("factor systems have different H or Q".into()));
    }
    Ok(())
}

/// The lexicographically smallest normalized `σ` connecting `fs` to `fs2`
/// over `(α, β)`, if any.
///
/// Values of `σ` on the generators of `Q` range over the `x ∈ H` with
/// `c_x·φ'(βs)·α = α·φ(s)`, the rest is forced by propagation along a
/// spanning tree; every candidate is verified in full.
pub fn find_connecting_sigma(
    fs: &FactorSystem,
    fs2: &FactorSystem,
    alpha: &Automorphism,
    beta: &Automorphism,
    caps: &Caps,
) -> Result<Option<Connection>> {
    check_same_shape(fs, fs2)?;
    let inner = InnerTable::new(&fs.h);
    find_connecting_sigma_with(fs, fs2, alpha, beta, caps, &inner)
}

pub(crate) fn find_connecting_sigma_with(
    fs: &FactorSystem,
    fs2: &FactorSystem,
    alpha: &Automorphism,
    beta: &Automorphism,
    caps: &Caps,
    inner: &InnerTable,
) -> Result<Option<Connection>> {
    let (h, q) = (&fs.h, &fs.q);
    let chain = generator_chain(q);
    let candidates: Vec<Vec<usize>> = chain
        .gens
        .iter()
        .map(|&s| {
            // c_x = α·φ(s)·(φ'(βs)·α)⁻¹
            let t = alpha
                .compose(&fs.phi[s])
                .compose(&fs2.phi[beta.apply(s)].compose(alpha).inverse());
            inner.preimages(&t).to_vec()
        })
        .collect();
    let space = candidates
        .iter()
        .fold(1u128, |acc, c| acc.saturating_mul(c.len() as u128));
    if space > caps.sigma {
        return Err(Error::SearchCapExceeded {
            what: "connecting-map search",
            size: space,
            cap: caps.sigma,
        });
    }
    let propagate = |gen_vals: &[usize]| -> Vec<usize> {
        let mut sigma = vec![0; q.order()];
        for &x in &chain.order[1..] {
            let (p, i) = chain.parent[x];
            let s = chain.gens[i];
            if p == 0 {
                sigma[x] = gen_vals[i];
                continue;
            }
            // σ(ps) = α(f(p,s))⁻¹·σ(p)·φ'(βp)(σ(s))·f'(βp,βs)
            let bp = beta.apply(p);
            sigma[x] = h.mul(
                h.mul(
                    h.inv(alpha.apply(fs.f(p, s))),
                    h.mul(sigma[p], fs2.phi[bp].apply(sigma[s])),
                ),
                fs2.f(bp, beta.apply(s)),
            );
        }
        sigma
    };
    let sizes: Vec<usize> = candidates.iter().map(|c| c.len()).collect();
    let best = (0..space as u64)
        .into_par_iter()
        .filter_map(|code| {
            let mut c = code;
            let mut vals = vec![0; sizes.len()];
            for j in (0..sizes.len()).rev() {
                vals[j] = candidates[j][(c % sizes[j] as u64) as usize];
                c /= sizes[j] as u64;
            }
            let sigma = propagate(&vals);
            is_connecting(fs, fs2, alpha, beta, &sigma).then_some(sigma)
        })
        .min();
    Ok(best.map(|sigma| Connection {
        gamma: connection_map(fs, alpha, beta, &sigma),
        sigma,
    }))
}

pub fn are_equivalent(fs: &FactorSystem, fs2: &FactorSystem, caps: &Caps) -> Result<bool> {
    check_same_shape(fs, fs2)?;
    let id_h = Perm::identity(fs.h.order());
    let id_q = Perm::identity(fs.q.order());
    Ok(find_connecting_sigma(fs, fs2, &id_h, &id_q, caps)?.is_some())
}

/// Whether `(α, β)` satisfies `Φβ = c_[α]Φ`, tested as
/// `α·φ(q)·α⁻¹·φ(βq)⁻¹` being inner for every `q`.
pub fn is_compatible(fs: &FactorSystem, alpha: &Automorphism, beta: &Automorphism) -> bool {
    let inner = InnerTable::new(&fs.h);
    is_compatible_with(fs, alpha, beta, &inner)
}

pub(crate) fn is_compatible_with(
    fs: &FactorSystem,
    alpha: &Automorphism,
    beta: &Automorphism,
    inner: &InnerTable,
) -> bool {
    let ainv = alpha.inverse();
    (0..fs.q.order()).all(|a| {
        let t = alpha
            .compose(&fs.phi[a])
            .compose(&ainv)
            .compose(&fs.phi[beta.apply(a)].inverse());
        inner.is_inner(&t)
    })
}

/// Decides whether `(α, β)` is induced by an automorphism of `G`, by testing
/// `α_*E ≡ β^*E`. On success returns `γ ∈ Aut(G)` with `γ|H = α` (on
/// positions of `H`) and `π·γ = β·π`.
pub fn extends(
    e: &Extension,
    alpha: &Automorphism,
    beta: &Automorphism,
    caps: &Caps,
) -> Result<Option<Automorphism>> {
    let fs = factor_system(e);
    if !e.q.is_automorphism(beta) || !fs.h.is_automorphism(alpha) {
        return Err(Error::InvalidInput("(α, β) are not automorphisms of (H, Q)".into()));
    }
    if !is_compatible(&fs, alpha, beta) {
        return Err(Error::IncompatiblePair);
    }
    let push = pushout(alpha, &fs)?;
    let pull = pullback(&beta.images, &e.q, &fs)?;
    let id_h = Perm::identity(fs.h.order());
    let id_q = Perm::identity(fs.q.order());
    let Some(conn) = find_connecting_sigma(&push, &pull, &id_h, &id_q, caps)? else {
        return Ok(None);
    };
    // E →(α,1)→ α_*E →σ→ β^*E →(1,β)→ E composes to (h,q) ↦ (α(h)σ(q), β(q))
    if !is_connecting(&fs, &fs, alpha, beta, &conn.sigma) {
        return Err(Error::InvalidFactorSystem("composed morphism is not a homomorphism".into()));
    }
    let gamma_pairs = connection_map(&fs, alpha, beta, &conn.sigma);
    let gamma = Perm::new(
        (0..e.g.order())
            .map(|x| e.from_pair_index(gamma_pairs.apply(e.to_pair_index(x))))
            .collect(),
    );
    debug_assert!(e.g.is_automorphism(&gamma));
    Ok(Some(gamma))
}

/// A normalized `τ: Q → H` with `τ(qq') = τ(q)·φ(q)(τ(q'))·f(q,q')`, the
/// lexicographically smallest one, if the extension splits.
pub fn splitting(fs: &FactorSystem, caps: &Caps) -> Result<Option<Vec<usize>>> {
    let (h, q) = (&fs.h, &fs.q);
    let chain = generator_chain(q);
    let k = chain.gens.len();
    let space = (h.order() as u128).saturating_pow(k as u32);
    if space > caps.sigma {
        return Err(Error::SearchCapExceeded {
            what: "splitting search",
            size: space,
            cap: caps.sigma,
        });
    }
    let nh = h.order() as u64;
    let best = (0..space as u64)
        .into_par_iter()
        .filter_map(|code| {
            let mut vals = vec![0usize; k];
            let mut c = code;
            for j in (0..k).rev() {
                vals[j] = (c % nh) as usize;
                c /= nh;
            }
            let mut tau = vec![0; q.order()];
            for &x in &chain.order[1..] {
                let (p, i) = chain.parent[x];
                let s = chain.gens[i];
                tau[x] = if p == 0 {
                    vals[i]
                } else {
                    h.mul(h.mul(tau[p], fs.phi[p].apply(tau[s])), fs.f(p, s))
                };
            }
            is_splitting(fs, &tau).then_some(tau)
        })
        .min();
    Ok(best)
}

pub fn is_splitting(fs: &FactorSystem, tau: &[usize]) -> bool {
    let (h, q) = (&fs.h, &fs.q);
    tau.len() == q.order()
        && tau[0] == 0
        && (0..q.order()).all(|a| {
            (0..q.order()).all(|b| {
                tau[q.mul(a, b)] == h.mul(h.mul(tau[a], fs.phi[a].apply(tau[b])), fs.f(a, b))
            })
        })
}

pub fn is_split(fs: &FactorSystem, caps: &Caps) -> Result<bool> {
    Ok(splitting(fs, caps)?.is_some())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{is_isomorphic, standard_group, GroupSpec};

    fn g(s: &str) -> Group {
        standard_group(&s.parse::<GroupSpec>().unwrap()).unwrap()
    }

    fn center_ext(s: &str) -> Extension {
        let grp = g(s);
        make_extension(&grp, &grp.center()).unwrap()
    }

    /// Every normalized map `Q → H`, by brute force.
    fn all_sigmas(nh: usize, nq: usize) -> Vec<Vec<usize>> {
        let mut out = vec![vec![0; nq]];
        for pos in 1..nq {
            out = out
                .into_iter()
                .flat_map(|v| {
                    (0..nh).map(move |x| {
                        let mut w = v.clone();
                        w[pos] = x;
                        w
                    })
                })
                .collect();
        }
        out
    }

    /// Brute-force oracle: does `γ(h,q) = (α(h)σ(q), β(q))` define a
    /// homomorphism of the realized groups?
    fn oracle_connects(fs: &FactorSystem, fs2: &FactorSystem, a: &Perm, b: &Perm, sigma: &[usize]) -> bool {
        let e1 = realize(fs).unwrap();
        let e2 = realize(fs2).unwrap();
        let gamma = connection_map(fs, a, b, sigma);
        e1.g().is_hom_to(e2.g(), &gamma.images)
    }

    #[test]
    fn make_extension_basics() {
        let d4 = center_ext("dihedral(8)");
        assert_eq!(d4.q().order(), 4);
        assert!(is_isomorphic(d4.q(), &g("elem_abelian(2,2)"), &Caps::default())
            .unwrap()
            .is_some());
        let s3 = g("symmetric(3)");
        let a3 = s3.subgroup_generated(&[(0..6).find(|&x| s3.element_order(x) == 3).unwrap()]);
        assert_eq!(make_extension(&s3, &a3).unwrap().q().order(), 2);
        let whole = make_extension(&s3, &s3.whole()).unwrap();
        assert_eq!(whole.q().order(), 1);
        assert_eq!(whole.section(), &[0]);
    }

    #[test]
    fn factor_system_round_trip() {
        let caps = Caps::default();
        for s in ["dihedral(8)", "quaternion(8)", "quaternion(16)", "cyclic(4)"] {
            let e = center_ext(s);
            let fs = factor_system(&e);
            fs.validate().unwrap();
            let r = realize(&fs).unwrap();
            assert!(is_isomorphic(r.g(), e.g(), &caps).unwrap().is_some());
            assert!(are_equivalent(&fs, &factor_system(&r), &caps).unwrap());
        }
    }

    #[test]
    fn cyclic_four_cocycle() {
        let z4 = g("cyclic(4)");
        let h = z4.subgroup_generated(&[2]);
        let fs = factor_system(&make_extension(&z4, &h).unwrap());
        assert_eq!(fs.f(1, 1), 1);
        assert!(!is_split(&fs, &Caps::default()).unwrap());
    }

    #[test]
    fn sigma_search_matches_brute_force() {
        let caps = Caps::default();
        let z2 = g("cyclic(2)");
        let trivial = FactorSystem::new(
            z2.clone(),
            z2.clone(),
            vec![Perm::identity(2); 2],
            vec![0; 4],
        )
        .unwrap();
        let z4 = FactorSystem::new(z2.clone(), z2.clone(), vec![Perm::identity(2); 2], vec![0, 0, 0, 1])
            .unwrap();
        let id = Perm::identity(2);
        for (a, b) in [(&trivial, &trivial), (&trivial, &z4), (&z4, &trivial), (&z4, &z4)] {
            let found = find_connecting_sigma(a, b, &id, &id, &caps).unwrap();
            let oracle = all_sigmas(2, 2)
                .into_iter()
                .filter(|s| oracle_connects(a, b, &id, &id, s))
                .min();
            assert_eq!(found.map(|c| c.sigma), oracle);
        }
        // D4 over its center with every (α,β)
        let e = center_ext("dihedral(8)");
        let fs = factor_system(&e);
        let aq = crate::groups::automorphisms(e.q(), &caps).unwrap();
        let idh = Perm::identity(2);
        for b in &aq {
            let pulled = pullback(&b.images, e.q(), &fs).unwrap();
            let found = find_connecting_sigma(&fs, &pulled, &idh, &Perm::identity(4), &caps).unwrap();
            let oracle = all_sigmas(2, 4)
                .into_iter()
                .filter(|s| oracle_connects(&fs, &pulled, &idh, &Perm::identity(4), s))
                .min();
            assert_eq!(found.map(|c| c.sigma), oracle);
        }
    }

    #[test]
    fn pullback_and_pushout_identities() {
        let e = center_ext("quaternion(8)");
        let fs = factor_system(&e);
        let idq: Vec<usize> = (0..4).collect();
        assert_eq!(pullback(&idq, e.q(), &fs).unwrap(), fs);
        assert_eq!(pushout(&Perm::identity(2), &fs).unwrap(), fs);
    }

    #[test]
    fn extends_on_d4_center() {
        let caps = Caps::default();
        let e = center_ext("dihedral(8)");
        let aq = crate::groups::automorphisms(e.q(), &caps).unwrap();
        let idh = Perm::identity(2);
        let mut extending = 0;
        for b in &aq {
            if let Some(gamma) = extends(&e, &idh, b, &caps).unwrap() {
                extending += 1;
                assert!(e.g().is_automorphism(&gamma));
                for x in 0..8 {
                    assert_eq!(e.proj().apply(gamma.apply(x)), b.apply(e.proj().apply(x)));
                }
            }
        }
        assert_eq!(extending, 2);
        let gamma = extends(&e, &idh, &Perm::identity(4), &caps).unwrap().unwrap();
        assert!(gamma.is_identity() || e.g().is_automorphism(&gamma));
    }

    #[test]
    fn incompatible_pair_is_an_error() {
        let caps = Caps::default();
        let s3 = g("symmetric(3)");
        let a3 = s3.subgroup_generated(&[(0..6).find(|&x| s3.element_order(x) == 3).unwrap()]);
        let e = make_extension(&s3, &a3).unwrap();
        // α = inversion on A3 with β = id violates Φβ = c_[α]Φ only if Out(H)
        // is non-abelian; here Out(Z/3) is abelian so every pair is compatible.
        let inv = Perm::new((0..3).map(|x| e.h_group().inv(x)).collect());
        assert!(extends(&e, &inv, &Perm::identity(2), &caps).unwrap().is_some());
        // a non-compatible pair: D4 as an extension of Z/2 by a Klein group
        let d4 = g("dihedral(8)");
        let v = d4.subgroup(&[0, 2, 4, 6]).unwrap();
        let e = make_extension(&d4, &v).unwrap();
        let fs = factor_system(&e);
        let ah = crate::groups::automorphisms(e.h_group(), &caps).unwrap();
        let idq = Perm::identity(2);
        let bad = ah.iter().find(|a| !is_compatible(&fs, a, &idq)).unwrap();
        assert_eq!(extends(&e, bad, &idq, &caps).unwrap_err(), Error::IncompatiblePair);
    }

    #[test]
    fn split_detection() {
        let caps = Caps::default();
        let s3 = g("symmetric(3)");
        let a3 = s3.subgroup_generated(&[(0..6).find(|&x| s3.element_order(x) == 3).unwrap()]);
        let fs = factor_system(&make_extension(&s3, &a3).unwrap());
        let tau = splitting(&fs, &caps).unwrap().unwrap();
        assert!(is_splitting(&fs, &tau));
        assert!(!is_split(&factor_system(&center_ext("quaternion(8)")), &caps).unwrap());
    }
}
