//! Independent brute-force computations on raw Cayley tables, used as
//! oracles for derived values. Nothing here calls the library's search,
//! cohomology or compatibility code.

#![allow(dead_code)]

use std::collections::{BTreeSet, HashSet, VecDeque};

pub type Table = Vec<Vec<usize>>;

pub fn inverse(t: &Table, x: usize) -> usize {
    (0..t.len()).find(|&y| t[x][y] == 0).unwrap()
}

pub fn order_of(t: &Table, x: usize) -> usize {
    let (mut y, mut k) = (x, 1);
    while y != 0 {
        y = t[y][x];
        k += 1;
    }
    k
}

pub fn closure(t: &Table, gens: &[usize]) -> BTreeSet<usize> {
    let mut seen: BTreeSet<usize> = [0].into();
    let mut queue: VecDeque<usize> = [0].into();
    while let Some(x) = queue.pop_front() {
        for &g in gens {
            let y = t[x][g];
            if seen.insert(y) {
                queue.push_back(y);
            }
        }
    }
    seen
}

/// Greedy generators with a spanning tree: `word[x] = (parent, gen index)`.
struct Words {
    gens: Vec<usize>,
    order: Vec<usize>,
    parent: Vec<(usize, usize)>,
}

fn words(t: &Table) -> Words {
    let n = t.len();
    let mut gens = Vec::new();
    let mut span = closure(t, &gens);
    while span.len() < n {
        let g = (0..n).find(|x| !span.contains(x)).unwrap();
        gens.push(g);
        span = closure(t, &gens);
    }
    let mut parent = vec![(usize::MAX, 0); n];
    parent[0] = (0, 0);
    let mut order = vec![0];
    let mut head = 0;
    while head < order.len() {
        let x = order[head];
        head += 1;
        for (i, &g) in gens.iter().enumerate() {
            let y = t[x][g];
            if parent[y].0 == usize::MAX {
                parent[y] = (x, i);
                order.push(y);
            }
        }
    }
    Words { gens, order, parent }
}

/// All automorphisms, as image arrays, by trying every assignment of
/// generator images with matching element orders.
pub fn automorphisms(t: &Table) -> Vec<Vec<usize>> {
    let n = t.len();
    let w = words(t);
    let cands: Vec<Vec<usize>> = w
        .gens
        .iter()
        .map(|&g| (0..n).filter(|&y| order_of(t, y) == order_of(t, g)).collect())
        .collect();
    let mut out = Vec::new();
    let mut idx = vec![0; cands.len()];
    'outer: loop {
        let imgs: Vec<usize> = idx.iter().zip(&cands).map(|(&i, c)| c[i]).collect();
        let mut f = vec![0; n];
        for &x in &w.order[1..] {
            let (p, i) = w.parent[x];
            f[x] = t[f[p]][imgs[i]];
        }
        let bijective = {
            let mut seen = vec![false; n];
            f.iter().all(|&y| !std::mem::replace(&mut seen[y], true))
        };
        if bijective && (0..n).all(|x| w.gens.iter().enumerate().all(|(i, &g)| f[t[x][g]] == t[f[x]][imgs[i]])) {
            out.push(f);
        }
        for k in (0..idx.len()).rev() {
            idx[k] += 1;
            if idx[k] < cands[k].len() {
                continue 'outer;
            }
            idx[k] = 0;
        }
        break;
    }
    out.sort();
    out
}

fn compose(a: &[usize], b: &[usize]) -> Vec<usize> {
    b.iter().map(|&x| a[x]).collect()
}

fn invert(a: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; a.len()];
    for (i, &x) in a.iter().enumerate() {
        inv[x] = i;
    }
    inv
}

fn perm_closure(gens: &[Vec<usize>], degree: usize) -> HashSet<Vec<usize>> {
    let id: Vec<usize> = (0..degree).collect();
    let mut seen: HashSet<Vec<usize>> = [id.clone()].into();
    let mut queue: VecDeque<Vec<usize>> = [id].into();
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = compose(&x, g);
            if seen.insert(y.clone()) {
                queue.push_back(y);
            }
        }
    }
    seen
}

/// Solvability of the permutation group generated by `gens`, by iterating
/// `G ↦ normal closure of commutators of generators`.
pub fn perm_group_solvable(gens: &[Vec<usize>], degree: usize) -> bool {
    let mut gens: Vec<Vec<usize>> = gens.to_vec();
    let mut size = perm_closure(&gens, degree).len();
    loop {
        if size == 1 {
            return true;
        }
        let mut comms: Vec<Vec<usize>> = Vec::new();
        for a in &gens {
            for b in &gens {
                let c = compose(&compose(&invert(a), &invert(b)), &compose(a, b));
                if !comms.contains(&c) {
                    comms.push(c);
                }
            }
        }
        // normal closure: add conjugates until the generated group is stable
        let mut derived = perm_closure(&comms, degree);
        loop {
            let mut grew = false;
            for g in &gens {
                let gi = invert(g);
                for c in comms.clone() {
                    let conj = compose(&compose(&gi, &c), g);
                    if !derived.contains(&conj) {
                        comms.push(conj);
                        grew = true;
                    }
                }
            }
            if !grew {
                break;
            }
            derived = perm_closure(&comms, degree);
        }
        if derived.len() == size {
            return false;
        }
        size = derived.len();
        gens = comms;
    }
}

/// Solvability through the left regular representation.
pub fn group_solvable(t: &Table) -> bool {
    let gens: Vec<Vec<usize>> = words(t).gens.iter().map(|&g| (0..t.len()).map(|x| t[g][x]).collect()).collect();
    perm_group_solvable(&gens, t.len())
}

/// A generating subset of a list of permutations forming a group.
pub fn generating_subset(elems: &[Vec<usize>], degree: usize) -> Vec<Vec<usize>> {
    let mut gens: Vec<Vec<usize>> = Vec::new();
    let mut span = perm_closure(&gens, degree);
    for e in elems {
        if !span.contains(e) {
            gens.push(e.clone());
            span = perm_closure(&gens, degree);
        }
    }
    gens
}

pub fn aut_solvable(t: &Table) -> bool {
    let auts = automorphisms(t);
    perm_group_solvable(&generating_subset(&auts, t.len()), t.len())
}

/// Conjugation by `g` restricted to the members `h`, on positions in `h`.
pub fn conj_on(t: &Table, h: &[usize], g: usize) -> Vec<usize> {
    let pos = |x: usize| h.iter().position(|&y| y == x).unwrap();
    let gi = inverse(t, g);
    h.iter().map(|&x| pos(t[t[g][x]][gi])).collect()
}

/// `C_G(H)`.
pub fn centralizer(t: &Table, h: &[usize]) -> Vec<usize> {
    (0..t.len()).filter(|&g| h.iter().all(|&x| t[g][x] == t[x][g])).collect()
}

/// `|ker Φ| = |π(C_G H)|`: `q` acts by an inner automorphism iff some
/// element over `q` centralizes `H`.
pub fn ker_phi_order(t: &Table, h: &[usize]) -> usize {
    let (proj, _) = quotient(t, h);
    centralizer(t, h).iter().map(|&g| proj[g]).collect::<BTreeSet<_>>().len()
}

/// For solvable `H`: solvability of `N_{Out H}(ΦQ)`, decided on its
/// preimage in `Aut H`, the normalizer of `{c_g|H : g ∈ G}`.
pub fn normalizer_solvable(t: &Table, h: &[usize]) -> bool {
    let ht = sub_table(t, h);
    assert!(group_solvable(&ht));
    let p: HashSet<Vec<usize>> = (0..t.len()).map(|g| conj_on(t, h, g)).collect();
    let n: Vec<Vec<usize>> = automorphisms(&ht)
        .into_iter()
        .filter(|a| {
            let ai = invert(a);
            p.iter().all(|c| p.contains(&compose(&compose(a, c), &ai)))
        })
        .collect();
    perm_group_solvable(&generating_subset(&n, h.len()), h.len())
}

/// Automorphisms of `G` mapping the member set `h` onto itself.
pub fn relative_automorphisms(t: &Table, h: &[usize]) -> Vec<Vec<usize>> {
    let hs: BTreeSet<usize> = h.iter().copied().collect();
    automorphisms(t).into_iter().filter(|f| h.iter().all(|x| hs.contains(&f[*x]))).collect()
}

/// Subgroup table on the sorted members `h`, indices relative to `h`.
pub fn sub_table(t: &Table, h: &[usize]) -> Table {
    let pos = |x: usize| h.iter().position(|&y| y == x).unwrap();
    h.iter().map(|&a| h.iter().map(|&b| pos(t[a][b])).collect()).collect()
}

/// Cosets of the normal subgroup `h`, as a projection and the quotient table.
pub fn quotient(t: &Table, h: &[usize]) -> (Vec<usize>, Table) {
    let n = t.len();
    let mut proj = vec![usize::MAX; n];
    let mut reps = Vec::new();
    for x in 0..n {
        if proj[x] == usize::MAX {
            for &y in h {
                proj[t[x][y]] = reps.len();
            }
            reps.push(x);
        }
    }
    let q = reps.iter().map(|&a| reps.iter().map(|&b| proj[t[a][b]]).collect()).collect();
    (proj, q)
}

/// `|S|`: pairs `(α, β) ∈ Aut H × Aut Q` such that for every `g ∈ G` some
/// `g'` over `β(π g)` has `α c_g α⁻¹ = c_{g'}` on `H`.
pub fn compatible_pairs(t: &Table, h: &[usize]) -> usize {
    let ht = sub_table(t, h);
    let (proj, qt) = quotient(t, h);
    let pos = |x: usize| h.iter().position(|&y| y == x).unwrap();
    let conj_on_h = |g: usize| -> Vec<usize> {
        let gi = inverse(t, g);
        h.iter().map(|&x| pos(t[t[g][x]][gi])).collect()
    };
    let n = t.len();
    let conj: Vec<Vec<usize>> = (0..n).map(conj_on_h).collect();
    let aut_h = automorphisms(&ht);
    let aut_q = automorphisms(&qt);
    let mut count = 0;
    for a in &aut_h {
        let ai = invert(a);
        for b in &aut_q {
            let ok = (0..n).all(|g| {
                let target = compose(&compose(a, &conj[g]), &ai);
                (0..n).any(|g2| proj[g2] == b[proj[g]] && conj[g2] == target)
            });
            if ok {
                count += 1;
            }
        }
    }
    count
}

/// `|H¹|` and `|H²|` for cyclic `Q = ⟨g⟩` of order `n` acting on an abelian
/// `M` through the automorphism `act`: `H¹ = ker N / im(t−1)`,
/// `H² = M^t / im N` with `N = 1 + t + … + t^(n−1)`.
pub fn cyclic_cohomology(m: &Table, act: &[usize], n: usize) -> (usize, usize) {
    let size = m.len();
    let minus = |x: usize| inverse(m, x);
    let norm = |x: usize| {
        let (mut acc, mut y) = (0, x);
        for _ in 0..n {
            acc = m[acc][y];
            y = act[y];
        }
        acc
    };
    let ker_n = (0..size).filter(|&x| norm(x) == 0).count();
    let im_t1: BTreeSet<usize> = (0..size).map(|x| m[act[x]][minus(x)]).collect();
    let fixed = (0..size).filter(|&x| act[x] == x).count();
    let im_n: BTreeSet<usize> = (0..size).map(norm).collect();
    (ker_n / im_t1.len(), fixed / im_n.len())
}

