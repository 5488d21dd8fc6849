//! Q-modules and cohomology in degrees 0, 1 and 2, plus the torsor action of
//! `H²(Q, zH)` on extension classes.
//!
//! Modules are written multiplicatively like every other group here; the
//! action is on the left. A normalized 1-cochain is an array over `Q` with
//! value 0 at the identity, a normalized 2-cochain a row-major `|Q|×|Q|`
//! array vanishing on the first row and column.
//!
//! Two independent engines compute `Zⁿ`, `Bⁿ` and `Hⁿ`: exhaustive
//! enumeration of cochains, and linear algebra over the cyclic
//! decomposition of the module.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::abelian::{CyclicDecomposition, Echelon};
use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::extensions::{are_equivalent, factor_system, Extension, FactorSystem};
use crate::groups::{Group, Subgroup};
use crate::perm::{Automorphism, Perm};

pub type Cochain = Vec<usize>;

/// An abelian group `M` with a left action of `Q`, optionally embedded in a
/// larger group (for `zH ⊆ H` the embedding maps module indices to positions of `H`).
#[derive(Clone, Debug)]
pub struct QModule {
    q: Group,
    m: Group,
    action: Vec<Automorphism>,
    embedding: Vec<usize>,
}

impl QModule {
    pub fn new(q: Group, m: Group, action: Vec<Automorphism>) -> Result<QModule> {
        let n = m.order();
        QModule::with_embedding(q, m, action, (0..n).collect())
    }

    pub fn with_embedding(q: Group, m: Group, action: Vec<Automorphism>, embedding: Vec<usize>) -> Result<QModule> {
        if !m.is_abelian() {
            return Err(Error::InvalidInput("module is not abelian".into()));
        }
        if action.len() != q.order() || action.iter().any(|a| !m.is_automorphism(a)) {
            return Err(Error::InvalidInput("action is not a map into Aut(M)".into()));
        }
        for a in 0..q.order() {
            for b in 0..q.order() {
                if action[q.mul(a, b)] != action[a].compose(&action[b]) {
                    return Err(Error::InvalidInput("action is not a homomorphism".into()));
                }
            }
        }
        if embedding.len() != m.order() {
            return Err(Error::InvalidInput("embedding has the wrong length".into()));
        }
        Ok(QModule {
            q,
            m,
            action,
            embedding,
        })
    }

    pub fn trivial(q: &Group, m: &Group) -> Result<QModule> {
        QModule::new(q.clone(), m.clone(), vec![Perm::identity(m.order()); q.order()])
    }

    pub fn q(&self) -> &Group {
        &self.q
    }

    pub fn m(&self) -> &Group {
        &self.m
    }

    pub fn action(&self) -> &[Automorphism] {
        &self.action
    }

    pub fn embedding(&self) -> &[usize] {
        &self.embedding
    }

    pub fn is_trivial(&self) -> bool {
        self.action.iter().all(|a| a.is_identity())
    }

    #[inline]
    pub fn act(&self, q: usize, x: usize) -> usize {
        self.action[q].apply(x)
    }

    fn add(&self, a: &[usize], b: &[usize]) -> Cochain {
        a.iter().zip(b).map(|(&x, &y)| self.m.mul(x, y)).collect()
    }

    fn sub(&self, a: &[usize], b: &[usize]) -> Cochain {
        a.iter().zip(b).map(|(&x, &y)| self.m.mul(x, self.m.inv(y))).collect()
    }

    /// `δ⁰(m)(q) = q·m − m`.
    pub fn delta0(&self, x: usize) -> Cochain {
        (0..self.q.order())
            .map(|a| self.m.mul(self.act(a, x), self.m.inv(x)))
            .collect()
    }

    /// `δ¹(σ)(a,b) = a·σ(b) − σ(ab) + σ(a)`.
    pub fn delta1(&self, s: &[usize]) -> Cochain {
        let (q, m) = (&self.q, &self.m);
        let n = q.order();
        let mut out = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                out[a * n + b] = m.mul(m.mul(self.act(a, s[b]), m.inv(s[q.mul(a, b)])), s[a]);
            }
        }
        out
    }

    pub fn is_cocycle1(&self, s: &[usize]) -> bool {
        let (q, m) = (&self.q, &self.m);
        s.len() == q.order()
            && s[0] == 0
            && (0..q.order()).all(|a| {
                (0..q.order()).all(|b| s[q.mul(a, b)] == m.mul(s[a], self.act(a, s[b])))
            })
    }

    pub fn is_cocycle2(&self, f: &[usize]) -> bool {
        let (q, m) = (&self.q, &self.m);
        let n = q.order();
        if f.len() != n * n || (0..n).any(|a| f[a] != 0 || f[a * n] != 0) {
            return false;
        }
        (1..n).all(|a| {
            (1..n).all(|b| {
                (1..n).all(|c| {
                    let lhs = m.mul(self.act(a, f[b * n + c]), f[a * n + q.mul(b, c)]);
                    let rhs = m.mul(f[a * n + b], f[q.mul(a, b) * n + c]);
                    lhs == rhs
                })
            })
        })
    }

    pub fn is_cocycle(&self, degree: u8, c: &[usize]) -> bool {
        match degree {
            1 => self.is_cocycle1(c),
            2 => self.is_cocycle2(c),
            _ => false,
        }
    }

    fn positions(&self, degree: u8) -> Vec<usize> {
        let n = self.q.order();
        match degree {
            1 => (1..n).collect(),
            _ => (1..n).flat_map(|a| (1..n).map(move |b| a * n + b)).collect(),
        }
    }

    fn cochain_len(&self, degree: u8) -> usize {
        let n = self.q.order();
        if degree == 1 {
            n
        } else {
            n * n
        }
    }
}

/// `H⁰(Q, M)`: the fixed points, as a subgroup of `M`.
pub fn h0(module: &QModule) -> Subgroup {
    let fixed: Vec<usize> = (0..module.m.order())
        .filter(|&x| module.action.iter().all(|a| a.apply(x) == x))
        .collect();
    module.m.subgroup(&fixed).expect("fixed points form a subgroup")
}

/// `zH` with `Q` acting through `φ`, embedded in `H` by positions.
pub fn center_module_of(fs: &FactorSystem) -> Result<QModule> {
    let h = fs.h();
    let z = h.center();
    let (m, embedding) = h.subgroup_as_group(&z, &format!("z{}", h.label()));
    let pos = z.positions();
    let action = (0..fs.q().order())
        .map(|a| Perm::new(embedding.iter().map(|&x| pos[fs.phi(a).apply(x)]).collect()))
        .collect();
    QModule::with_embedding(fs.q().clone(), m, action, embedding)
}

/// `zH` as a `Q`-module via conjugation through the section; checked to
/// agree with conjugation through the maximal-index section.
pub fn center_module(e: &Extension) -> Result<QModule> {
    let module = center_module_of(&factor_system(e))?;
    let g = e.g();
    for x in 0..g.order() {
        let q = e.proj().apply(x);
        for (i, &hpos) in module.embedding.iter().enumerate() {
            let y = e.h_index(g.conj(x, e.h_elem(hpos)));
            if y != module.embedding[module.act(q, i)] {
                return Err(Error::InvalidInput("action on zH depends on the section".into()));
            }
        }
    }
    Ok(module)
}

/// Which engine produced a cohomology group.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Path {
    Enumeration,
    Linear,
}

/// `Hⁿ(Q, M)` for `n ∈ {1, 2}` with its cocycle and coboundary groups.
#[derive(Clone, Debug)]
pub struct CohomologyGroup {
    degree: u8,
    z_order: u128,
    b_order: u128,
    classes: Vec<Cochain>,
    group_view: Option<Group>,
    path: Path,
    boundaries: Boundaries,
}

impl CohomologyGroup {
    pub fn degree(&self) -> u8 {
        self.degree
    }

    pub fn z_order(&self) -> u128 {
        self.z_order
    }

    pub fn b_order(&self) -> u128 {
        self.b_order
    }

    pub fn order(&self) -> usize {
        self.classes.len()
    }

    /// Canonical (lexicographically minimal) cocycle of every class, sorted.
    pub fn classes(&self) -> &[Cochain] {
        &self.classes
    }

    pub fn group_view(&self) -> Option<&Group> {
        self.group_view.as_ref()
    }

    pub fn path(&self) -> Path {
        self.path
    }

    /// Canonical representative of the class of a cocycle.
    pub fn canonical(&self, c: &[usize]) -> Cochain {
        self.boundaries.canonical(c)
    }

    /// Index of the class of a cocycle; `None` if it is not a cocycle.
    pub fn class_of(&self, module: &QModule, c: &[usize]) -> Option<usize> {
        if !module.is_cocycle(self.degree, c) {
            return None;
        }
        self.classes.binary_search(&self.canonical(c)).ok()
    }

    /// Index of the sum of two classes.
    pub fn add(&self, module: &QModule, a: usize, b: usize) -> usize {
        let s = module.add(&self.classes[a], &self.classes[b]);
        self.classes.binary_search(&self.canonical(&s)).unwrap()
    }

    pub fn neg(&self, module: &QModule, a: usize) -> usize {
        let zero = vec![0; self.classes[a].len()];
        let s = module.sub(&zero, &self.classes[a]);
        self.classes.binary_search(&self.canonical(&s)).unwrap()
    }

    /// Whether a cochain is a coboundary.
    pub fn is_coboundary(&self, c: &[usize]) -> bool {
        self.boundaries.contains(c)
    }
}

/// Coboundaries `Bⁿ` in coordinates, able to produce lexicographically
/// minimal coset representatives.
#[derive(Clone, Debug)]
struct Boundaries {
    dec: CyclicDecomposition,
    positions: Vec<usize>,
    len: usize,
    ech: Echelon,
}

impl Boundaries {
    fn to_coords(&self, c: &[usize]) -> Vec<u64> {
        self.positions
            .iter()
            .flat_map(|&p| self.dec.coords(c[p]).to_vec())
            .collect()
    }

    fn from_coords(&self, v: &[u64]) -> Cochain {
        let r = self.dec.rank();
        let mut c = vec![0; self.len];
        for (i, &p) in self.positions.iter().enumerate() {
            c[p] = self.dec.element(&v[i * r..(i + 1) * r]);
        }
        c
    }

    fn contains(&self, c: &[usize]) -> bool {
        self.ech.contains(&self.to_coords(c))
    }

    /// Greedy position-by-position minimization over the coset `c + B`.
    fn canonical(&self, c: &[usize]) -> Cochain {
        let r = self.dec.rank();
        if r == 0 {
            return vec![0; self.len];
        }
        let moduli = self.ech.moduli();
        let mut v = self.to_coords(c);
        for i in 0..self.positions.len() {
            let (lo, hi) = (i * r, (i + 1) * r);
            let rows: Vec<&Vec<u64>> = self.ech.rows_in(lo, hi).collect();
            if rows.is_empty() {
                continue;
            }
            // all block values reachable by combinations of these rows
            let mut reached: Vec<(Vec<u64>, Vec<u64>)> = vec![(vec![0; r], vec![0; moduli.len()])];
            let mut seen: HashSet<Vec<u64>> = HashSet::new();
            seen.insert(vec![0; r]);
            let mut head = 0;
            while head < reached.len() {
                let (_, comb) = reached[head].clone();
                head += 1;
                for row in &rows {
                    let mut next = comb.clone();
                    self.ech.add_into(&mut next, row);
                    let block = next[lo..hi].to_vec();
                    if seen.insert(block.clone()) {
                        reached.push((block, next));
                    }
                }
            }
            let best = reached
                .iter()
                .min_by_key(|(block, _)| {
                    let val: Vec<u64> = v[lo..hi]
                        .iter()
                        .zip(block)
                        .zip(&moduli[lo..hi])
                        .map(|((&a, &b), &m)| (a + b) % m)
                        .collect();
                    self.dec.element(&val)
                })
                .unwrap();
            let comb = best.1.clone();
            self.ech.add_into(&mut v, &comb);
        }
        self.from_coords(&v)
    }
}

fn module_moduli(dec: &CyclicDecomposition, blocks: usize) -> Vec<u64> {
    (0..blocks).flat_map(|_| dec.moduli().to_vec()).collect()
}

fn boundaries(module: &QModule, degree: u8) -> Result<Boundaries> {
    let dec = CyclicDecomposition::new(&module.m)?;
    let positions = module.positions(degree);
    let len = module.cochain_len(degree);
    let moduli = module_moduli(&dec, positions.len());
    let mut b = Boundaries {
        dec,
        positions,
        len,
        ech: Echelon::new(moduli.clone()),
    };
    let gens: Vec<Cochain> = match degree {
        1 => b.dec.basis().iter().map(|&x| module.delta0(x)).collect(),
        _ => {
            let nq = module.q.order();
            let basis = b.dec.basis().to_vec();
            (1..nq)
                .flat_map(|p| {
                    basis.iter().map(move |&x| {
                        let mut s = vec![0; nq];
                        s[p] = x;
                        s
                    })
                })
                .map(|s| module.delta1(&s))
                .collect()
        }
    };
    let coords: Vec<Vec<u64>> = gens.iter().map(|c| b.to_coords(c)).collect();
    b.ech = Echelon::from_generators(moduli, coords);
    Ok(b)
}

/// Size of the normalized cochain space searched by the enumeration engine.
pub fn enumeration_space(module: &QModule, degree: u8) -> u128 {
    let positions = module.positions(degree).len() as u32;
    (module.m.order() as u128).saturating_pow(positions)
}

/// `Hⁿ` by whichever engine fits the caps: enumeration when the cochain
/// space is within `caps.cochain_enum`, linear algebra otherwise.
pub fn cohomology(module: &QModule, degree: u8, caps: &Caps) -> Result<CohomologyGroup> {
    if enumeration_space(module, degree) <= caps.cochain_enum {
        cohomology_with(module, degree, Path::Enumeration, caps)
    } else {
        cohomology_with(module, degree, Path::Linear, caps)
    }
}

pub fn h1(module: &QModule, caps: &Caps) -> Result<CohomologyGroup> {
    cohomology(module, 1, caps)
}

pub fn h2(module: &QModule, caps: &Caps) -> Result<CohomologyGroup> {
    cohomology(module, 2, caps)
}

/// All 1-cocycles, sorted.
pub fn z1(module: &QModule, caps: &Caps) -> Result<Vec<Cochain>> {
    cocycles(module, 1, caps)
}

/// All 1-coboundaries, sorted.
pub fn b1(module: &QModule) -> Vec<Cochain> {
    let mut out: Vec<Cochain> = (0..module.m.order()).map(|x| module.delta0(x)).collect();
    out.sort();
    out.dedup();
    out
}

/// All 2-cocycles, sorted.
pub fn z2(module: &QModule, caps: &Caps) -> Result<Vec<Cochain>> {
    cocycles(module, 2, caps)
}

/// All 2-coboundaries, sorted.
pub fn b2(module: &QModule, caps: &Caps) -> Result<Vec<Cochain>> {
    let b = boundaries(module, 2)?;
    let size = b.ech.order().unwrap_or(u128::MAX);
    if size > caps.cochain_enum {
        return Err(cap("coboundary listing", size, caps.cochain_enum));
    }
    let mut out = span_elements(&b.ech, caps)?
        .into_iter()
        .map(|v| b.from_coords(&v))
        .collect::<Vec<_>>();
    out.sort();
    Ok(out)
}

fn cap(what: &'static str, size: u128, cap: u128) -> Error {
    Error::SearchCapExceeded { what, size, cap }
}

/// Every element of the subgroup spanned by an echelon.
fn span_elements(e: &Echelon, caps: &Caps) -> Result<Vec<Vec<u64>>> {
    let size = e.order().unwrap_or(u128::MAX);
    if size > caps.cochain_enum {
        return Err(cap("subgroup listing", size, caps.cochain_enum));
    }
    let moduli = e.moduli().to_vec();
    let zero = vec![0; moduli.len()];
    let mut seen: HashSet<Vec<u64>> = HashSet::new();
    seen.insert(zero.clone());
    let mut out = vec![zero];
    let mut head = 0;
    while head < out.len() {
        let v = out[head].clone();
        head += 1;
        for row in e.rows() {
            let w: Vec<u64> = v.iter().zip(row).zip(&moduli).map(|((a, b), m)| (a + b) % m).collect();
            if seen.insert(w.clone()) {
                out.push(w);
            }
        }
    }
    Ok(out)
}

/// All cocycles of the given degree, sorted.
pub fn cocycles(module: &QModule, degree: u8, caps: &Caps) -> Result<Vec<Cochain>> {
    if enumeration_space(module, degree) <= caps.cochain_enum {
        return Ok(enumerate_cocycles(module, degree));
    }
    let z = cocycle_echelon(module, degree)?;
    let b = boundaries(module, degree)?;
    let mut out: Vec<Cochain> = span_elements(&z, caps)?
        .into_iter()
        .map(|v| b.from_coords(&v))
        .collect();
    out.sort();
    Ok(out)
}

/// Exhaustive depth-first enumeration of normalized cocycles in
/// lexicographic order. Each cocycle equation is tested as soon as all the
/// positions it mentions are assigned.
fn enumerate_cocycles(module: &QModule, degree: u8) -> Vec<Cochain> {
    let q = &module.q;
    let n = q.order();
    let positions = module.positions(degree);
    let len = module.cochain_len(degree);
    let mut rank = vec![usize::MAX; len];
    for (i, &p) in positions.iter().enumerate() {
        rank[p] = i;
    }
    // equations as (terms with +, terms with −, acting element for the first term)
    // degree 1: σ(ab) = σ(a) + a·σ(b);  degree 2: a·f(b,c) + f(a,bc) = f(a,b) + f(ab,c)
    #[derive(Clone)]
    struct Eq {
        a: usize,
        acted: usize,
        others: Vec<(usize, bool)>,
    }
    let mut eqs: Vec<Vec<Eq>> = vec![Vec::new(); positions.len()];
    let last_of = |ps: &[usize]| ps.iter().filter(|&&p| rank[p] != usize::MAX).map(|&p| rank[p]).max();
    if degree == 1 {
        for a in 1..n {
            for b in 1..n {
                // a·σ(b) − σ(ab) + σ(a) = 0
                let e = Eq {
                    a,
                    acted: b,
                    others: vec![(q.mul(a, b), false), (a, true)],
                };
                if let Some(k) = last_of(&[b, q.mul(a, b), a]) {
                    eqs[k].push(e);
                }
            }
        }
    } else {
        for a in 1..n {
            for b in 1..n {
                for c in 1..n {
                    // a·f(b,c) − f(ab,c) + f(a,bc) − f(a,b) = 0
                    let e = Eq {
                        a,
                        acted: b * n + c,
                        others: vec![
                            (q.mul(a, b) * n + c, false),
                            (a * n + q.mul(b, c), true),
                            (a * n + b, false),
                        ],
                    };
                    let ps = [b * n + c, q.mul(a, b) * n + c, a * n + q.mul(b, c), a * n + b];
                    if let Some(k) = last_of(&ps) {
                        eqs[k].push(e);
                    }
                }
            }
        }
    }
    let m = &module.m;
    let check = |c: &[usize], e: &Eq| -> bool {
        let mut acc = module.act(e.a, c[e.acted]);
        for &(p, plus) in &e.others {
            acc = if plus { m.mul(acc, c[p]) } else { m.mul(acc, m.inv(c[p])) };
        }
        acc == 0
    };
    let mut out = Vec::new();
    let mut c = vec![0; len];
    fn dfs(
        k: usize,
        c: &mut Vec<usize>,
        positions: &[usize],
        order: usize,
        eqs: &[Vec<Eq>],
        check: &dyn Fn(&[usize], &Eq) -> bool,
        out: &mut Vec<Cochain>,
    ) {
        if k == positions.len() {
            out.push(c.clone());
            return;
        }
        for v in 0..order {
            c[positions[k]] = v;
            if eqs[k].iter().all(|e| check(c, e)) {
                dfs(k + 1, c, positions, order, eqs, check, out);
            }
        }
        c[positions[k]] = 0;
    }
    dfs(0, &mut c, &positions, m.order(), &eqs, &check, &mut out);
    out
}

/// `Zⁿ` in coordinates, as the kernel of the cocycle map restricted to the
/// equations whose first (degree 2) or last (degree 1) argument is a
/// generator of `Q`; those equations already force all the others.
fn cocycle_echelon(module: &QModule, degree: u8) -> Result<Echelon> {
    let dec = CyclicDecomposition::new(&module.m)?;
    let r = dec.rank();
    let q = &module.q;
    let m = &module.m;
    let n = q.order();
    let gens = q.generators();
    let positions = module.positions(degree);
    let len = module.cochain_len(degree);
    // the defect of a cochain on each selected equation
    let defect = |c: &[usize]| -> Vec<usize> {
        let mut out = Vec::new();
        if degree == 1 {
            for a in 1..n {
                for &s in &gens {
                    // σ(as) − σ(a) − a·σ(s)
                    out.push(m.mul(
                        c[q.mul(a, s)],
                        m.inv(m.mul(c[a], module.act(a, c[s]))),
                    ));
                }
            }
        } else {
            for &s in &gens {
                for b in 1..n {
                    for cc in 1..n {
                        let lhs = m.mul(module.act(s, c[b * n + cc]), c[s * n + q.mul(b, cc)]);
                        let rhs = m.mul(c[s * n + b], c[q.mul(s, b) * n + cc]);
                        out.push(m.mul(lhs, m.inv(rhs)));
                    }
                }
            }
        }
        out
    };
    let targets = defect(&vec![0; len]).len();
    let mut moduli = module_moduli(&dec, targets);
    let src_moduli = module_moduli(&dec, positions.len());
    moduli.extend(&src_moduli);
    let mut graph = Echelon::new(moduli);
    for (i, &p) in positions.iter().enumerate() {
        for (j, &x) in dec.basis().iter().enumerate() {
            let mut c = vec![0; len];
            c[p] = x;
            let mut v: Vec<u64> = defect(&c).iter().flat_map(|&y| dec.coords(y).to_vec()).collect();
            let mut src = vec![0; positions.len() * r];
            src[i * r + j] = 1;
            v.extend(src);
            graph.insert(v);
        }
    }
    Ok(graph.tail(targets * r))
}

/// `Hⁿ` through a chosen engine.
pub fn cohomology_with(module: &QModule, degree: u8, path: Path, caps: &Caps) -> Result<CohomologyGroup> {
    if degree != 1 && degree != 2 {
        return Err(Error::InvalidInput(format!("degree {degree} is not supported")));
    }
    let b = boundaries(module, degree)?;
    let (z_order, b_order, classes) = match path {
        Path::Enumeration => {
            let space = enumeration_space(module, degree);
            if space > caps.cochain_enum {
                return Err(cap("cochain enumeration", space, caps.cochain_enum));
            }
            let z = enumerate_cocycles(module, degree);
            let bs: Vec<Cochain> = match degree {
                1 => b1(module),
                _ => {
                    let c1 = enumerate_all_cochains(module, 1);
                    let mut v: Vec<Cochain> = c1.iter().map(|s| module.delta1(s)).collect();
                    v.sort();
                    v.dedup();
                    v
                }
            };
            let mut seen: HashSet<Cochain> = HashSet::new();
            let mut classes = Vec::new();
            for c in &z {
                if seen.contains(c) {
                    continue;
                }
                classes.push(c.clone());
                for bb in &bs {
                    seen.insert(module.add(c, bb));
                }
            }
            (z.len() as u128, bs.len() as u128, classes)
        }
        Path::Linear => {
            let z = cocycle_echelon(module, degree)?;
            let z_order = z.order().ok_or_else(|| cap("cocycle group order", u128::MAX, u128::MAX))?;
            let b_order = b
                .ech
                .order()
                .ok_or_else(|| cap("coboundary group order", u128::MAX, u128::MAX))?;
            let h = z_order / b_order;
            if h > caps.cochain_enum {
                return Err(cap("cohomology class listing", h, caps.cochain_enum));
            }
            let zero = vec![0; module.cochain_len(degree)];
            let gens: Vec<Cochain> = z.rows().iter().map(|v| b.from_coords(v)).collect();
            let mut classes = vec![b.canonical(&zero)];
            let mut seen: HashSet<Cochain> = classes.iter().cloned().collect();
            let mut head = 0;
            while head < classes.len() {
                let c = classes[head].clone();
                head += 1;
                for g in &gens {
                    let next = b.canonical(&module.add(&c, g));
                    if seen.insert(next.clone()) {
                        classes.push(next);
                    }
                }
            }
            classes.sort();
            if classes.len() as u128 != h || z_order % b_order != 0 {
                return Err(Error::InvalidInput("class count disagrees with |Z|/|B|".into()));
            }
            (z_order, b_order, classes)
        }
    };
    let mut cg = CohomologyGroup {
        degree,
        z_order,
        b_order,
        classes,
        group_view: None,
        path,
        boundaries: b,
    };
    if cg.classes.len() <= caps.order {
        let k = cg.classes.len();
        let table: Vec<Vec<usize>> = (0..k)
            .map(|i| (0..k).map(|j| cg.add(module, i, j)).collect())
            .collect();
        cg.group_view = Some(Group::from_cayley_table(table, &format!("H{degree}"))?);
    }
    Ok(cg)
}

fn enumerate_all_cochains(module: &QModule, degree: u8) -> Vec<Cochain> {
    let positions = module.positions(degree);
    let mut out = vec![vec![0; module.cochain_len(degree)]];
    for &p in &positions {
        out = out
            .into_iter()
            .flat_map(|c| {
                (0..module.m.order()).map(move |x| {
                    let mut d = c.clone();
                    d[p] = x;
                    d
                })
            })
            .collect();
    }
    out
}

/// `E·ζ = (φ, f·c)` for a 2-cocycle `c` with values in `zH`.
pub fn torsor_act(fs: &FactorSystem, module: &QModule, c: &[usize]) -> Result<FactorSystem> {
    if !module.is_cocycle2(c) {
        return Err(Error::NotACocycle);
    }
    let h = fs.h();
    let f = fs
        .f_values()
        .iter()
        .zip(c)
        .map(|(&x, &z)| h.mul(x, module.embedding[z]))
        .collect();
    FactorSystem::new(h.clone(), fs.q().clone(), fs.phis().to_vec(), f)
}

/// The fiber `X_Φ(Q, H)` through a base factor system: one class per
/// element of `H²(Q, zH)`.
#[derive(Clone, Debug)]
pub struct Fiber {
    base: FactorSystem,
    module: QModule,
    h2: CohomologyGroup,
    classes: Vec<FactorSystem>,
    caps: Caps,
}

impl Fiber {
    pub fn new(fs: &FactorSystem, caps: &Caps) -> Result<Fiber> {
        let module = center_module_of(fs)?;
        let h2 = h2(&module, caps)?;
        let classes = h2
            .classes()
            .iter()
            .map(|c| torsor_act(fs, &module, c))
            .collect::<Result<Vec<_>>>()?;
        Ok(Fiber {
            base: fs.clone(),
            module,
            h2,
            classes,
            caps: caps.clone(),
        })
    }

    pub fn base(&self) -> &FactorSystem {
        &self.base
    }

    pub fn module(&self) -> &QModule {
        &self.module
    }

    pub fn h2(&self) -> &CohomologyGroup {
        &self.h2
    }

    /// `base·ζ` for every class `ζ`, in class order.
    pub fn classes(&self) -> &[FactorSystem] {
        &self.classes
    }

    pub fn caps(&self) -> &Caps {
        &self.caps
    }

    /// The class `ζ` with `fs ≡ fs2·ζ`.
    pub fn diff(&self, fs: &FactorSystem, fs2: &FactorSystem) -> Result<usize> {
        for (i, c) in self.h2.classes().iter().enumerate() {
            let moved = torsor_act(fs2, &self.module, c)?;
            if are_equivalent(fs, &moved, &self.caps)? {
                return Ok(i);
            }
        }
        Err(Error::NotSameFiber)
    }

    /// Position of a factor system in the fiber: `ζ` with `fs ≡ base·ζ`.
    pub fn label(&self, fs: &FactorSystem) -> Result<usize> {
        self.diff(fs, &self.base)
    }
}

/// One representative per class of `X_Φ(Q, H)`, checked pairwise inequivalent.
pub fn enumerate_classes(fs: &FactorSystem, caps: &Caps) -> Result<Vec<FactorSystem>> {
    let fiber = Fiber::new(fs, caps)?;
    let cls = fiber.classes().to_vec();
    for i in 0..cls.len() {
        for j in 0..i {
            if are_equivalent(&cls[i], &cls[j], caps)? {
                return Err(Error::InvalidInput("torsor action is not free".into()));
            }
        }
    }
    Ok(cls)
}

/// `ζ` with `fs ≡ fs2·ζ`, found by scanning `H²` representatives.
pub fn torsor_diff(fs: &FactorSystem, fs2: &FactorSystem, caps: &Caps) -> Result<usize> {
    if !fs.same_base(fs2) {
        return Err(Error::NotSameFiber);
    }
    Fiber::new(fs2, caps)?.diff(fs, fs2)
}

/// Restriction of an automorphism of `H` to the module `zH`, on module indices.
pub fn restrict_to_module(module: &QModule, alpha: &Automorphism) -> Result<Automorphism> {
    let mut inv = vec![usize::MAX; alpha.degree()];
    for (i, &x) in module.embedding.iter().enumerate() {
        inv[x] = i;
    }
    let images: Vec<usize> = module.embedding.iter().map(|&x| inv[alpha.apply(x)]).collect();
    if images.iter().any(|&x| x == usize::MAX) {
        return Err(Error::ActionIncompatible);
    }
    Ok(Perm::new(images))
}

/// `θ* = α⁻¹_* β^*` on `H²`: `[c] ↦ [α⁻¹ ∘ c ∘ (β×β)]`, for `α` an
/// automorphism of the module and `β` of `Q`. Returns the class map.
pub fn induced_h2(module: &QModule, h2: &CohomologyGroup, alpha: &Automorphism, beta: &Automorphism) -> Result<Vec<usize>> {
    let q = &module.q;
    let n = q.order();
    if !module.m.is_automorphism(alpha) || !q.is_automorphism(beta) {
        return Err(Error::ActionIncompatible);
    }
    let ainv = alpha.inverse();
    for a in 0..n {
        for x in 0..module.m.order() {
            if ainv.apply(module.act(beta.apply(a), alpha.apply(x))) != module.act(a, x) {
                return Err(Error::ActionIncompatible);
            }
        }
    }
    let map = |c: &[usize]| -> Cochain {
        (0..n * n)
            .map(|i| ainv.apply(c[beta.apply(i / n) * n + beta.apply(i % n)]))
            .collect()
    };
    // well defined: coboundaries go to coboundaries
    for row in h2.boundaries.ech.rows() {
        let c = h2.boundaries.from_coords(row);
        if !h2.is_coboundary(&map(&c)) {
            return Err(Error::ActionIncompatible);
        }
    }
    h2.classes()
        .iter()
        .map(|c| h2.class_of(module, &map(c)).ok_or(Error::NotACocycle))
        .collect()
}
