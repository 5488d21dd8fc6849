//! Backtracking over generator images: isomorphism tests and full
//! automorphism enumeration.

use super::{Group, Hom};
use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::perm::Perm;

/// Greedy generators of a group plus a spanning tree expressing every
/// element as `parent · generator`, grown one generator at a time.
#[derive(Clone, Debug)]
pub struct GeneratorChain {
    pub gens: Vec<usize>,
    /// Elements in discovery order; the first `level_end[j]` of them form
    /// the subgroup generated by `gens[..=j]`.
    pub order: Vec<usize>,
    pub level_end: Vec<usize>,
    /// For each element, `(parent, generator position)`; the identity maps to itself.
    pub parent: Vec<(usize, usize)>,
}

pub fn generator_chain(g: &Group) -> GeneratorChain {
    let gens = g.generators();
    let n = g.order();
    let mut parent = vec![(usize::MAX, usize::MAX); n];
    parent[0] = (0, 0);
    let mut order = vec![0];
    let mut level_end = Vec::with_capacity(gens.len());
    for j in 0..gens.len() {
        let old_end = order.len();
        let mut head = 0;
        while head < order.len() {
            let x = order[head];
            let range = if head < old_end { j..=j } else { 0..=j };
            for i in range {
                let y = g.mul(x, gens[i]);
                if parent[y].0 == usize::MAX {
                    parent[y] = (x, i);
                    order.push(y);
                }
            }
            head += 1;
        }
        level_end.push(order.len());
    }
    if gens.is_empty() {
        level_end.clear();
    }
    GeneratorChain {
        gens,
        order,
        level_end,
        parent,
    }
}

struct HomSearch<'a> {
    src: &'a Group,
    dst: &'a Group,
    chain: GeneratorChain,
    candidates: Vec<Vec<usize>>,
    injective: bool,
    img: Vec<usize>,
    gen_img: Vec<usize>,
    used: Vec<bool>,
}

impl<'a> HomSearch<'a> {
    fn new(src: &'a Group, dst: &'a Group, injective: bool) -> Self {
        let chain = generator_chain(src);
        let dst_orders = dst.element_orders();
        let candidates = chain
            .gens
            .iter()
            .map(|&s| {
                let o = src.element_order(s);
                (0..dst.order())
                    .filter(|&c| {
                        if injective {
                            dst_orders[c] == o
                        } else {
                            o % dst_orders[c] == 0
                        }
                    })
                    .collect()
            })
            .collect();
        let mut img = vec![usize::MAX; src.order()];
        img[0] = 0;
        let mut used = vec![false; dst.order()];
        used[0] = true;
        HomSearch {
            src,
            dst,
            gen_img: vec![0; chain.gens.len()],
            chain,
            candidates,
            injective,
            img,
            used,
        }
    }

    /// Calls `visit` on every homomorphism in lexicographic order of the
    /// generator images; stops when `visit` returns false.
    fn run(&mut self, visit: &mut dyn FnMut(&[usize]) -> bool) {
        self.level(0, visit);
    }

    fn level(&mut self, j: usize, visit: &mut dyn FnMut(&[usize]) -> bool) -> bool {
        if j == self.chain.gens.len() {
            return visit(&self.img);
        }
        let start = if j == 0 { 1 } else { self.chain.level_end[j - 1] };
        let end = self.chain.level_end[j];
        for ci in 0..self.candidates[j].len() {
            let c = self.candidates[j][ci];
            if self.injective && self.used[c] {
                continue;
            }
            self.gen_img[j] = c;
            let mut ok = true;
            let mut assigned = start;
            for k in start..end {
                let x = self.chain.order[k];
                let (p, i) = self.chain.parent[x];
                let y = self.dst.mul(self.img[p], self.gen_img[i]);
                if self.injective && self.used[y] {
                    ok = false;
                    break;
                }
                self.img[x] = y;
                if self.injective {
                    self.used[y] = true;
                }
                assigned = k + 1;
            }
            if ok {
                ok = self.consistent(j, start, end);
            }
            let keep_going = if ok { self.level(j + 1, visit) } else { true };
            for k in start..assigned {
                let x = self.chain.order[k];
                if self.injective {
                    self.used[self.img[x]] = false;
                }
                self.img[x] = usize::MAX;
            }
            if !keep_going {
                return false;
            }
        }
        true
    }

    fn consistent(&self, j: usize, start: usize, end: usize) -> bool {
        for k in 0..end {
            let x = self.chain.order[k];
            let gens_to_check = if k >= start { 0..=j } else { j..=j };
            for i in gens_to_check {
                let y = self.src.mul(x, self.chain.gens[i]);
                if self.img[y] != self.dst.mul(self.img[x], self.gen_img[i]) {
                    return false;
                }
            }
        }
        true
    }
}

/// All automorphisms, sorted lexicographically by image array (identity first).
pub fn automorphisms(g: &Group, caps: &Caps) -> Result<Vec<Perm>> {
    if g.order() > caps.search_order {
        return Err(Error::SearchCapExceeded {
            what: "automorphism search (group order)",
            size: g.order() as u128,
            cap: caps.search_order as u128,
        });
    }
    let mut search = HomSearch::new(g, g, true);
    let mut out = Vec::new();
    search.run(&mut |img| {
        out.push(Perm::new(img.to_vec()));
        true
    });
    out.sort();
    Ok(out)
}

/// An explicit isomorphism `g1 → g2` if one exists.
pub fn is_isomorphic(g1: &Group, g2: &Group, caps: &Caps) -> Result<Option<Hom>> {
    if g1.order() != g2.order() {
        return Ok(None);
    }
    if g1.order() > caps.search_order {
        return Err(Error::SearchCapExceeded {
            what: "isomorphism search (group order)",
            size: g1.order() as u128,
            cap: caps.search_order as u128,
        });
    }
    if g1.order_profile() != g2.order_profile() {
        return Ok(None);
    }
    let mut search = HomSearch::new(g1, g2, true);
    let mut found = None;
    search.run(&mut |img| {
        found = Some(Hom { images: img.to_vec() });
        false
    });
    Ok(found)
}
