//! Finite groups as Cayley tables over element indices `0..n`.
//!
//! Index 0 is always the identity. Products are `table[a][b] = a·b`.

mod search;
mod standard;

pub use search::{automorphisms, generator_chain, is_isomorphic, GeneratorChain};
pub use standard::{metacyclic_root, semidirect, standard_group, GroupSpec};

use std::fmt;

use crate::error::{Error, Result};
use crate::perm::Perm;

#[derive(Clone, PartialEq, Eq)]
pub struct Group {
    label: String,
    order: usize,
    table: Vec<usize>,
    inverses: Vec<usize>,
}

impl fmt::Debug for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Group({:?}, order {})", self.label, self.order)
    }
}

impl Group {
    /// Validates a Cayley table and relabels so that the identity sits at
    /// index 0 (by swapping it with the element currently at 0).
    pub fn from_cayley_table(table: Vec<Vec<usize>>, label: &str) -> Result<Group> {
        let n = table.len();
        if n == 0 {
            return Err(Error::NotAGroup("empty table".into()));
        }
        for (r, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(Error::NotAGroup(format!("row {r} has length {} instead of {n}", row.len())));
            }
            if let Some(&bad) = row.iter().find(|&&x| x >= n) {
                return Err(Error::NotAGroup(format!("row {r} contains out-of-range entry {bad}")));
            }
        }
        let e = (0..n)
            .find(|&e| (0..n).all(|b| table[e][b] == b && table[b][e] == b))
            .ok_or_else(|| Error::NotAGroup("no identity element".into()))?;
        // relabel: swap e and 0
        let relabel = |x: usize| {
            if x == e {
                0
            } else if x == 0 {
                e
            } else {
                x
            }
        };
        let mut flat = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                flat[relabel(a) * n + relabel(b)] = relabel(table[a][b]);
            }
        }
        Group::from_flat(flat, n, label)
    }

    /// Validates a row-major table whose identity is already at index 0.
    pub(crate) fn from_flat(table: Vec<usize>, n: usize, label: &str) -> Result<Group> {
        if table.len() != n * n || n == 0 {
            return Err(Error::NotAGroup("table is not square".into()));
        }
        for b in 0..n {
            if table[b] != b || table[b * n] != b {
                return Err(Error::NotAGroup("index 0 is not the identity".into()));
            }
        }
        let mut seen = vec![0usize; n];
        for a in 0..n {
            for b in 0..n {
                let x = table[a * n + b];
                if x >= n {
                    return Err(Error::NotAGroup(format!("row {a} contains out-of-range entry {x}")));
                }
                if seen[x] == a + 1 {
                    return Err(Error::NotAGroup(format!("row {a} is not a permutation")));
                }
                seen[x] = a + 1;
            }
        }
        let mut seen = vec![0usize; n];
        for b in 0..n {
            for a in 0..n {
                let x = table[a * n + b];
                if seen[x] == b + 1 {
                    return Err(Error::NotAGroup(format!("column {b} is not a permutation")));
                }
                seen[x] = b + 1;
            }
        }
        let mut inverses = vec![0; n];
        for a in 0..n {
            inverses[a] = (0..n).find(|&b| table[a * n + b] == 0).unwrap();
        }
        let g = Group {
            label: label.to_string(),
            order: n,
            table,
            inverses,
        };
        g.check_associative()?;
        Ok(g)
    }

    /// Light's test: a Latin square with identity is associative as soon as
    /// every generator lies in the middle nucleus.
    fn check_associative(&self) -> Result<()> {
        let gens = self.generators();
        for &s in &gens {
            for x in 0..self.order {
                let xs = self.mul(x, s);
                for y in 0..self.order {
                    if self.mul(xs, y) != self.mul(x, self.mul(s, y)) {
                        return Err(Error::NotAGroup(format!(
                            "associativity fails at ({x}, {s}, {y})"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn with_label(mut self, label: &str) -> Group {
        self.label = label.to_string();
        self
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Equality of multiplication tables, ignoring labels.
    pub fn same_table(&self, other: &Group) -> bool {
        self.table == other.table
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a]
    }

    /// `g·x·g⁻¹`.
    #[inline]
    pub fn conj(&self, g: usize, x: usize) -> usize {
        self.mul(self.mul(g, x), self.inverses[g])
    }

    /// `a·b·a⁻¹·b⁻¹`.
    pub fn commutator(&self, a: usize, b: usize) -> usize {
        self.mul(self.mul(a, b), self.mul(self.inverses[a], self.inverses[b]))
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.table.chunks(self.order).map(|r| r.to_vec()).collect()
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn element_orders(&self) -> Vec<usize> {
        (0..self.order).map(|a| self.element_order(a)).collect()
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (0..a).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Sorted members of the subgroup generated by `gens`.
    pub fn closure(&self, gens: &[usize]) -> Vec<usize> {
        let mut inside = vec![false; self.order];
        inside[0] = true;
        let mut out = vec![0];
        let mut head = 0;
        while head < out.len() {
            let x = out[head];
            head += 1;
            for &g in gens {
                let y = self.mul(x, g);
                if !inside[y] {
                    inside[y] = true;
                    out.push(y);
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// Greedy minimal generating sequence: repeatedly add the smallest
    /// element index not in the current closure.
    pub fn generators(&self) -> Vec<usize> {
        let all: Vec<usize> = (0..self.order).collect();
        self.generators_of(&all)
    }

    pub fn generators_of(&self, members: &[usize]) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut inside = vec![false; self.order];
        inside[0] = true;
        let mut size = 1;
        for &m in members {
            if size == members.len() {
                break;
            }
            if inside[m] {
                continue;
            }
            gens.push(m);
            let c = self.closure(&gens);
            size = c.len();
            for x in c {
                inside[x] = true;
            }
        }
        gens
    }

    pub fn trivial_subgroup(&self) -> Subgroup {
        Subgroup::from_sorted(self.order, vec![0])
    }

    pub fn whole(&self) -> Subgroup {
        Subgroup::from_sorted(self.order, (0..self.order).collect())
    }

    /// Subgroup generated by the given elements.
    pub fn subgroup_generated(&self, elems: &[usize]) -> Subgroup {
        Subgroup::from_sorted(self.order, self.closure(elems))
    }

    /// Validates a member list as a subgroup.
    pub fn subgroup(&self, members: &[usize]) -> Result<Subgroup> {
        let mut m: Vec<usize> = members.to_vec();
        m.sort_unstable();
        m.dedup();
        if m.iter().any(|&x| x >= self.order) {
            return Err(Error::InvalidInput("subgroup member out of range".into()));
        }
        let s = Subgroup::from_sorted(self.order, m);
        if !s.contains(0) {
            return Err(Error::InvalidInput("subgroup does not contain the identity".into()));
        }
        for &a in s.members() {
            if !s.contains(self.inv(a)) {
                return Err(Error::InvalidInput("subset is not closed under inverses".into()));
            }
            for &b in s.members() {
                if !s.contains(self.mul(a, b)) {
                    return Err(Error::InvalidInput("subset is not closed under products".into()));
                }
            }
        }
        Ok(s)
    }

    pub fn center(&self) -> Subgroup {
        self.centralizer(&self.whole())
    }

    /// Elements commuting with every member of `s`.
    pub fn centralizer(&self, s: &Subgroup) -> Subgroup {
        let gens = self.generators_of(s.members());
        let members = (0..self.order)
            .filter(|&g| gens.iter().all(|&x| self.mul(g, x) == self.mul(x, g)))
            .collect();
        Subgroup::from_sorted(self.order, members)
    }

    pub fn normalizer(&self, s: &Subgroup) -> Subgroup {
        let gens = self.generators_of(s.members());
        let members = (0..self.order)
            .filter(|&g| gens.iter().all(|&x| s.contains(self.conj(g, x))))
            .collect();
        Subgroup::from_sorted(self.order, members)
    }

    pub fn is_normal(&self, s: &Subgroup) -> bool {
        let sg = self.generators_of(s.members());
        self.generators()
            .iter()
            .all(|&g| sg.iter().all(|&x| s.contains(self.conj(g, x))))
    }

    /// Quotient on canonical coset representatives (minimal index per coset)
    /// together with the projection. Quotient element `i` is the coset whose
    /// representative is the `i`-th smallest representative.
    pub fn quotient(&self, n: &Subgroup) -> Result<(Group, Hom)> {
        if !self.is_normal(n) {
            return Err(Error::NotNormal);
        }
        let mut id = vec![usize::MAX; self.order];
        let mut reps = Vec::new();
        for x in 0..self.order {
            if id[x] != usize::MAX {
                continue;
            }
            let c = reps.len();
            reps.push(x);
            for &m in n.members() {
                id[self.mul(x, m)] = c;
            }
        }
        let k = reps.len();
        let mut flat = vec![0; k * k];
        for (i, &a) in reps.iter().enumerate() {
            for (j, &b) in reps.iter().enumerate() {
                flat[i * k + j] = id[self.mul(a, b)];
            }
        }
        let q = Group::from_flat(flat, k, &format!("{}/N{}", self.label, n.order()))?;
        Ok((q, Hom { images: id }))
    }

    /// The subgroup as a group in its own right, plus the embedding
    /// (own index → parent index). Own indices follow the sorted member list.
    pub fn subgroup_as_group(&self, s: &Subgroup, label: &str) -> (Group, Vec<usize>) {
        let members = s.members().to_vec();
        let pos = s.positions();
        let k = members.len();
        let mut flat = vec![0; k * k];
        for (i, &a) in members.iter().enumerate() {
            for (j, &b) in members.iter().enumerate() {
                flat[i * k + j] = pos[self.mul(a, b)];
            }
        }
        let g = Group::from_flat(flat, k, label).expect("subgroup closed under the group law");
        (g, members)
    }

    /// Subgroup generated by all commutators `[a,b]` with `a ∈ a_set`, `b ∈ b_set`.
    pub fn commutator_subgroup(&self, a_set: &Subgroup, b_set: &Subgroup) -> Subgroup {
        let ga = self.generators_of(a_set.members());
        let gb = self.generators_of(b_set.members());
        // [A,B] is normal in <A,B>; take the normal closure of generator commutators
        let seeds: Vec<usize> = ga
            .iter()
            .flat_map(|&a| gb.iter().map(move |&b| (a, b)))
            .map(|(a, b)| self.commutator(a, b))
            .filter(|&c| c != 0)
            .collect();
        let mut conj_by = ga.clone();
        conj_by.extend(&gb);
        self.normal_closure_under(&conj_by, &seeds)
    }

    fn normal_closure_under(&self, conj_by: &[usize], seeds: &[usize]) -> Subgroup {
        let mut gens: Vec<usize> = seeds.to_vec();
        gens.sort_unstable();
        gens.dedup();
        let mut current = Subgroup::from_sorted(self.order, self.closure(&gens));
        let mut i = 0;
        while i < gens.len() {
            let n = gens[i];
            for &g in conj_by {
                let c = self.conj(g, n);
                if !current.contains(c) {
                    gens.push(c);
                    current = Subgroup::from_sorted(self.order, self.closure(&gens));
                }
            }
            i += 1;
        }
        current
    }

    pub fn derived_subgroup(&self, s: &Subgroup) -> Subgroup {
        self.commutator_subgroup(s, s)
    }

    /// Derived series starting at the whole group, until it stabilizes.
    pub fn derived_series(&self) -> Vec<Subgroup> {
        self.derived_series_of(&self.whole())
    }

    pub fn derived_series_of(&self, s: &Subgroup) -> Vec<Subgroup> {
        let mut series = vec![s.clone()];
        loop {
            let next = self.derived_subgroup(series.last().unwrap());
            if next.order() == series.last().unwrap().order() {
                return series;
            }
            series.push(next);
        }
    }

    pub fn is_solvable(&self) -> bool {
        self.derived_series().last().unwrap().order() == 1
    }

    pub fn is_solvable_subgroup(&self, s: &Subgroup) -> bool {
        self.derived_series_of(s).last().unwrap().order() == 1
    }

    /// Left-regular action as permutations of element indices.
    pub fn left_regular(&self, g: usize) -> Perm {
        Perm::new((0..self.order).map(|x| self.mul(g, x)).collect())
    }

    /// Conjugation `x ↦ g x g⁻¹` as a permutation of all elements.
    pub fn inner(&self, g: usize) -> Perm {
        Perm::new((0..self.order).map(|x| self.conj(g, x)).collect())
    }

    /// Checks the homomorphism law for an image array into `cod`.
    pub fn is_hom_to(&self, cod: &Group, images: &[usize]) -> bool {
        if images.len() != self.order || images[0] != 0 || images.iter().any(|&x| x >= cod.order) {
            return false;
        }
        let gens = self.generators();
        (0..self.order).all(|x| {
            gens.iter()
                .all(|&s| images[self.mul(x, s)] == cod.mul(images[x], images[s]))
        })
    }

    pub fn is_automorphism(&self, p: &Perm) -> bool {
        p.degree() == self.order && p.is_bijection() && self.is_hom_to(self, &p.images)
    }

    pub fn direct_product(a: &Group, b: &Group, label: &str) -> Result<Group> {
        let (m, k) = (a.order, b.order);
        let n = m * k;
        let mut flat = vec![0; n * n];
        for x in 0..n {
            let (xa, xb) = (x / k, x % k);
            for y in 0..n {
                let (ya, yb) = (y / k, y % k);
                flat[x * n + y] = a.mul(xa, ya) * k + b.mul(xb, yb);
            }
        }
        Group::from_flat(flat, n, label)
    }

    /// Number of elements of each order, indexed by order.
    pub fn order_profile(&self) -> Vec<usize> {
        let mut prof = vec![0; self.order + 1];
        for o in self.element_orders() {
            prof[o] += 1;
        }
        prof
    }
}

/// A subgroup given by its sorted member list inside a parent of known order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subgroup {
    members: Vec<usize>,
    mask: Vec<bool>,
}

impl Subgroup {
    pub(crate) fn from_sorted(parent_order: usize, members: Vec<usize>) -> Subgroup {
        let mut mask = vec![false; parent_order];
        for &m in &members {
            mask[m] = true;
        }
        Subgroup { members, mask }
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn parent_order(&self) -> usize {
        self.mask.len()
    }

    #[inline]
    pub fn contains(&self, x: usize) -> bool {
        self.mask[x]
    }

    /// Parent index → position in the member list (usize::MAX outside).
    pub fn positions(&self) -> Vec<usize> {
        let mut pos = vec![usize::MAX; self.mask.len()];
        for (i, &m) in self.members.iter().enumerate() {
            pos[m] = i;
        }
        pos
    }

    pub fn intersect(&self, other: &Subgroup) -> Subgroup {
        let members = self
            .members
            .iter()
            .copied()
            .filter(|&x| other.contains(x))
            .collect();
        Subgroup::from_sorted(self.mask.len(), members)
    }

    pub fn is_subset_of(&self, other: &Subgroup) -> bool {
        self.members.iter().all(|&x| other.contains(x))
    }
}

/// A homomorphism given by its image array.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hom {
    pub images: Vec<usize>,
}

impl Hom {
    pub fn new(dom: &Group, cod: &Group, images: Vec<usize>) -> Result<Hom> {
        if !dom.is_hom_to(cod, &images) {
            return Err(Error::InvalidInput("map is not a homomorphism".into()));
        }
        Ok(Hom { images })
    }

    pub fn identity(g: &Group) -> Hom {
        Hom {
            images: (0..g.order()).collect(),
        }
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.images[x]
    }

    pub fn kernel(&self, dom: &Group) -> Subgroup {
        Subgroup::from_sorted(
            dom.order(),
            (0..dom.order()).filter(|&x| self.images[x] == 0).collect(),
        )
    }

    pub fn is_bijective(&self) -> bool {
        Perm::new(self.images.clone()).is_bijection()
    }
}
