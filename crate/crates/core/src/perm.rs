//! Permutations and finite permutation groups held as explicit element lists.
//!
//! Automorphism groups, compatible-pair groups and their quotients are all
//! handled here. Group elements are indexed by their position in a sorted
//! element list, so the identity is always index 0.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::groups::Group;

/// A bijection of `0..n`, stored as its image array.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Perm {
    pub images: Vec<usize>,
}

pub type Automorphism = Perm;

impl Perm {
    pub fn new(images: Vec<usize>) -> Self {
        Perm { images }
    }

    pub fn identity(n: usize) -> Self {
        Perm {
            images: (0..n).collect(),
        }
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.images[x]
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Perm) -> Perm {
        Perm {
            images: other.images.iter().map(|&x| self.images[x]).collect(),
        }
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x] = i;
        }
        Perm { images: inv }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x)
    }

    pub fn is_bijection(&self) -> bool {
        let mut seen = vec![false; self.images.len()];
        for &x in &self.images {
            if x >= seen.len() || seen[x] {
                return false;
            }
            seen[x] = true;
        }
        true
    }

    /// Conjugate `self ∘ other ∘ self⁻¹`.
    pub fn conjugate(&self, other: &Perm) -> Perm {
        self.compose(other).compose(&self.inverse())
    }
}

/// A finite group of permutations, stored as its sorted element list.
#[derive(Clone, Debug)]
pub struct PermGroup {
    degree: usize,
    elements: Vec<Perm>,
    index: HashMap<Perm, usize>,
}

impl PermGroup {
    /// Wraps a list that must already be closed under composition.
    pub fn from_elements(degree: usize, mut elements: Vec<Perm>) -> Result<Self> {
        elements.sort();
        elements.dedup();
        if elements.is_empty() || !elements[0].is_identity() {
            return Err(Error::InvalidInput(
                "permutation list lacks the identity".into(),
            ));
        }
        let index = elements
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, p)| (p, i))
            .collect();
        let g = PermGroup {
            degree,
            elements,
            index,
        };
        // every element lies in the closure of the greedy generators, so
        // closedness under those generators is closedness of the whole list
        let mut gens = Vec::new();
        let mut inside = vec![false; g.order()];
        inside[0] = true;
        for m in 0..g.order() {
            if inside[m] {
                continue;
            }
            gens.push(m);
            let closure = g.closure_checked(&gens).ok_or_else(|| {
                Error::InvalidInput("permutation list is not closed under composition".into())
            })?;
            for c in closure {
                inside[c] = true;
            }
        }
        Ok(g)
    }

    /// The group generated by `gens`, enumerated by breadth-first closure.
    pub fn generate(degree: usize, gens: &[Perm], cap: usize) -> Result<Self> {
        let mut elements = vec![Perm::identity(degree)];
        let mut seen: HashMap<Perm, ()> = HashMap::new();
        seen.insert(elements[0].clone(), ());
        let mut head = 0;
        while head < elements.len() {
            let x = elements[head].clone();
            head += 1;
            for g in gens {
                let y = x.compose(g);
                if !seen.contains_key(&y) {
                    if elements.len() >= cap {
                        return Err(Error::OrderCapExceeded {
                            what: "permutation group closure",
                            order: elements.len() as u128 + 1,
                            cap: cap as u128,
                        });
                    }
                    seen.insert(y.clone(), ());
                    elements.push(y);
                }
            }
        }
        elements.sort();
        let index = elements
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, p)| (p, i))
            .collect();
        Ok(PermGroup {
            degree,
            elements,
            index,
        })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Perm] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &Perm {
        &self.elements[i]
    }

    pub fn index_of(&self, p: &Perm) -> Option<usize> {
        self.index.get(p).copied()
    }

    fn try_mul(&self, a: usize, b: usize) -> Option<usize> {
        self.index_of(&self.elements[a].compose(&self.elements[b]))
    }

    /// Index of `a ∘ b`.
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.try_mul(a, b).expect("permutation group is closed")
    }

    pub fn inv(&self, a: usize) -> usize {
        self.index[&self.elements[a].inverse()]
    }

    /// Greedy generating sequence of the whole group.
    pub fn generators(&self) -> Vec<usize> {
        let all: Vec<usize> = (0..self.order()).collect();
        self.generators_of(&all)
    }

    /// Greedy generating sequence of a subgroup given by sorted members:
    /// repeatedly add the smallest member not yet in the closure.
    pub fn generators_of(&self, members: &[usize]) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut inside = vec![false; self.order()];
        inside[0] = true;
        for &m in members {
            if inside[m] {
                continue;
            }
            gens.push(m);
            let closure = self.closure(&gens);
            for &c in &closure {
                inside[c] = true;
            }
            if closure.len() == members.len() {
                break;
            }
        }
        gens
    }

    /// Sorted member list of the subgroup generated by element indices.
    pub fn closure(&self, gens: &[usize]) -> Vec<usize> {
        self.closure_checked(gens)
            .expect("permutation group is closed")
    }

    fn closure_checked(&self, gens: &[usize]) -> Option<Vec<usize>> {
        let mut inside = vec![false; self.order()];
        inside[0] = true;
        let mut out = vec![0];
        let mut head = 0;
        while head < out.len() {
            let x = out[head];
            head += 1;
            for &g in gens {
                let y = self.try_mul(x, g)?;
                if !inside[y] {
                    inside[y] = true;
                    out.push(y);
                }
            }
        }
        out.sort_unstable();
        Some(out)
    }

    pub fn is_normal(&self, members: &[usize]) -> bool {
        let mut inside = vec![false; self.order()];
        for &m in members {
            inside[m] = true;
        }
        let sub_gens = self.generators_of(members);
        self.generators().iter().all(|&g| {
            let gi = self.inv(g);
            sub_gens
                .iter()
                .all(|&n| inside[self.mul(self.mul(g, n), gi)])
        })
    }

    /// Smallest normal subgroup of `within` containing `seeds`.
    pub fn normal_closure(&self, within: &[usize], seeds: &[usize]) -> Vec<usize> {
        let conj_by = self.generators_of(within);
        let mut gens: Vec<usize> = seeds.iter().copied().filter(|&s| s != 0).collect();
        gens.sort_unstable();
        gens.dedup();
        let mut current = self.closure(&gens);
        let mut i = 0;
        while i < gens.len() {
            let n = gens[i];
            for &g in &conj_by {
                let c = self.mul(self.mul(g, n), self.inv(g));
                if current.binary_search(&c).is_err() {
                    gens.push(c);
                    current = self.closure(&gens);
                }
            }
            i += 1;
        }
        current
    }

    /// Commutator subgroup of a subgroup, as the normal closure of the
    /// commutators of its generators.
    pub fn derived_subgroup(&self, members: &[usize]) -> Vec<usize> {
        let gens = self.generators_of(members);
        let mut comms = Vec::new();
        for (i, &a) in gens.iter().enumerate() {
            for &b in &gens[i + 1..] {
                let c = self.mul(
                    self.mul(a, b),
                    self.mul(self.inv(a), self.inv(b)),
                );
                if c != 0 {
                    comms.push(c);
                }
            }
        }
        self.normal_closure(members, &comms)
    }

    pub fn derived_series(&self, members: &[usize]) -> Vec<Vec<usize>> {
        let mut series = vec![members.to_vec()];
        loop {
            let last = series.last().unwrap();
            let next = self.derived_subgroup(last);
            if next.len() == last.len() {
                return series;
            }
            series.push(next);
        }
    }

    pub fn is_solvable_subgroup(&self, members: &[usize]) -> bool {
        self.derived_series(members).last().unwrap().len() == 1
    }

    pub fn is_solvable(&self) -> bool {
        let all: Vec<usize> = (0..self.order()).collect();
        self.is_solvable_subgroup(&all)
    }

    /// Left cosets `xN` of a subgroup. Returns the coset id of every element
    /// and the canonical (minimal index) representative of every coset, in
    /// increasing order of representative.
    pub fn cosets(&self, members: &[usize]) -> (Vec<usize>, Vec<usize>) {
        let mut id = vec![usize::MAX; self.order()];
        let mut reps = Vec::new();
        for x in 0..self.order() {
            if id[x] != usize::MAX {
                continue;
            }
            let c = reps.len();
            reps.push(x);
            for &n in members {
                id[self.mul(x, n)] = c;
            }
        }
        (id, reps)
    }

    /// Quotient by a normal subgroup as a Cayley table on canonical coset
    /// representatives, with the projection from element indices.
    pub fn quotient(&self, members: &[usize], label: &str, caps: &Caps) -> Result<(Group, Vec<usize>)> {
        if !self.is_normal(members) {
            return Err(Error::NotNormal);
        }
        let (id, reps) = self.cosets(members);
        if reps.len() > caps.order {
            return Err(Error::OrderCapExceeded {
                what: "quotient Cayley table",
                order: reps.len() as u128,
                cap: caps.order as u128,
            });
        }
        let m = reps.len();
        let mut table = vec![vec![0; m]; m];
        for (i, &a) in reps.iter().enumerate() {
            for (j, &b) in reps.iter().enumerate() {
                table[i][j] = id[self.mul(a, b)];
            }
        }
        let q = Group::from_cayley_table(table, label)?;
        Ok((q, id))
    }

    /// The group as a Cayley table over its element indices.
    pub fn cayley(&self, label: &str, caps: &Caps) -> Result<Group> {
        if self.order() > caps.order {
            return Err(Error::OrderCapExceeded {
                what: "Cayley table of a permutation group",
                order: self.order() as u128,
                cap: caps.order as u128,
            });
        }
        let n = self.order();
        let table: Vec<Vec<usize>> = (0..n)
            .map(|a| (0..n).map(|b| self.mul(a, b)).collect())
            .collect();
        Group::from_cayley_table(table, label)
    }

    /// Checks that `f` (given on all elements) is a homomorphism into a
    /// group with multiplication `mul_target`, testing `f(xs) = f(x)f(s)` on
    /// generators only.
    pub fn is_hom_into(&self, f: &[usize], mul_target: impl Fn(usize, usize) -> usize) -> bool {
        let gens = self.generators();
        (0..self.order()).all(|x| gens.iter().all(|&s| f[self.mul(x, s)] == mul_target(f[x], f[s])))
    }
}
