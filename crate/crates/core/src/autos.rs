//! Aut(G), Inn(G), Out(G) and relative automorphisms Aut(G,H).

use serde::{Deserialize, Serialize};

use crate::caps::Caps;
use crate::error::Result;
use crate::groups::{automorphisms, Group, Subgroup};
use crate::perm::{Automorphism, Perm, PermGroup};

/// The full automorphism group of a base group.
///
/// Elements are sorted image arrays, so index 0 is the identity and the
/// ordering is reproducible between runs.
#[derive(Clone, Debug)]
pub struct AutGroup {
    base: Group,
    perms: PermGroup,
    inner: Vec<usize>,
    group_view: Option<Group>,
}

pub fn aut_group(g: &Group, caps: &Caps) -> Result<AutGroup> {
    let elements = automorphisms(g, caps)?;
    AutGroup::from_elements(g, elements, caps)
}

impl AutGroup {
    /// Wraps an already enumerated, composition-closed automorphism list.
    pub fn from_elements(g: &Group, elements: Vec<Perm>, caps: &Caps) -> Result<AutGroup> {
        let perms = PermGroup::from_elements(g.order(), elements)?;
        let mut inner: Vec<usize> = (0..g.order())
            .map(|x| perms.index_of(&g.inner(x)).expect("inner automorphism is an automorphism"))
            .collect();
        inner.sort_unstable();
        inner.dedup();
        let group_view = if perms.order() <= caps.order {
            Some(perms.cayley(&format!("Aut({})", g.label()), caps)?)
        } else {
            None
        };
        Ok(AutGroup {
            base: g.clone(),
            perms,
            inner,
            group_view,
        })
    }

    pub fn base(&self) -> &Group {
        &self.base
    }

    pub fn order(&self) -> usize {
        self.perms.order()
    }

    pub fn elements(&self) -> &[Automorphism] {
        self.perms.elements()
    }

    pub fn element(&self, i: usize) -> &Automorphism {
        self.perms.element(i)
    }

    pub fn index_of(&self, a: &Automorphism) -> Option<usize> {
        self.perms.index_of(a)
    }

    pub fn perm_group(&self) -> &PermGroup {
        &self.perms
    }

    /// Sorted indices of the inner automorphisms.
    pub fn inner(&self) -> &[usize] {
        &self.inner
    }

    /// Index of conjugation by `g`.
    pub fn inner_of(&self, g: usize) -> usize {
        self.perms.index_of(&self.base.inner(g)).unwrap()
    }

    /// Cayley table of composition on element indices; absent above the order cap.
    pub fn group_view(&self) -> Option<&Group> {
        self.group_view.as_ref()
    }

    pub fn is_solvable(&self) -> bool {
        self.perms.is_solvable()
    }

    /// Explicit map `G/zG → Inn G` sending the coset of `g` to `c_g`, as
    /// indices into the quotient returned alongside.
    pub fn inner_from_center_quotient(&self) -> Result<(Group, Vec<usize>)> {
        let g = &self.base;
        let (q, pi) = g.quotient(&g.center())?;
        let mut map = vec![usize::MAX; q.order()];
        for x in 0..g.order() {
            let c = pi.apply(x);
            if map[c] == usize::MAX {
                map[c] = self.inner_of(x);
            }
        }
        Ok((q, map))
    }
}

/// Out(G) = Aut(G)/Inn(G) with canonical (minimal index) representatives.
#[derive(Clone, Debug)]
pub struct OutGroup {
    reps: Vec<usize>,
    class: Vec<usize>,
    group_view: Option<Group>,
}

pub fn out_group(a: &AutGroup, caps: &Caps) -> Result<OutGroup> {
    let (class, reps) = a.perms.cosets(&a.inner);
    let group_view = if reps.len() <= caps.order {
        Some(
            a.perms
                .quotient(&a.inner, &format!("Out({})", a.base.label()), caps)?
                .0,
        )
    } else {
        None
    };
    Ok(OutGroup {
        reps,
        class,
        group_view,
    })
}

impl OutGroup {
    pub fn order(&self) -> usize {
        self.reps.len()
    }

    /// Canonical representative (index into the parent) of every class.
    pub fn representatives(&self) -> &[usize] {
        &self.reps
    }

    /// Outer class of the automorphism with the given parent index.
    pub fn class_of_index(&self, i: usize) -> usize {
        self.class[i]
    }

    pub fn class_of(&self, parent: &AutGroup, a: &Automorphism) -> Option<usize> {
        parent.index_of(a).map(|i| self.class[i])
    }

    pub fn group_view(&self) -> Option<&Group> {
        self.group_view.as_ref()
    }
}

/// `{γ ∈ Aut G : γ(H) = H}` as a sublist of `aut_group(G)`.
pub fn relative_aut(g: &Group, h: &Subgroup, caps: &Caps) -> Result<Vec<Automorphism>> {
    let a = aut_group(g, caps)?;
    Ok(relative_indices(&a, h)
        .into_iter()
        .map(|i| a.element(i).clone())
        .collect())
}

/// Indices of the automorphisms in `a` that map `h` onto itself.
pub fn relative_indices(a: &AutGroup, h: &Subgroup) -> Vec<usize> {
    let gens = a.base.generators_of(h.members());
    (0..a.order())
        .filter(|&i| gens.iter().all(|&x| h.contains(a.element(i).apply(x))))
        .collect()
}

/// Serialized form of an automorphism group: the base label and the image arrays.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AutGroupRecord {
    pub base: String,
    pub elements: Vec<Automorphism>,
}

impl From<&AutGroup> for AutGroupRecord {
    fn from(a: &AutGroup) -> Self {
        AutGroupRecord {
            base: a.base.label().to_string(),
            elements: a.elements().to_vec(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{is_isomorphic, standard_group, GroupSpec};

    fn g(s: &str) -> Group {
        standard_group(&s.parse::<GroupSpec>().unwrap()).unwrap()
    }

    #[test]
    fn small_automorphism_groups() {
        let caps = Caps::default();
        assert_eq!(aut_group(&g("cyclic(2)"), &caps).unwrap().order(), 1);
        let v4 = aut_group(&g("elem_abelian(2,2)"), &caps).unwrap();
        assert_eq!(v4.order(), 6);
        assert!(is_isomorphic(v4.group_view().unwrap(), &g("symmetric(3)"), &caps)
            .unwrap()
            .is_some());
    }

    #[test]
    fn outer_automorphism_orders() {
        let caps = Caps::default();
        let d4 = aut_group(&g("dihedral(8)"), &caps).unwrap();
        assert_eq!(d4.inner().len(), 4);
        assert_eq!(out_group(&d4, &caps).unwrap().order(), 2);
        let s3 = aut_group(&g("symmetric(3)"), &caps).unwrap();
        assert_eq!(out_group(&s3, &caps).unwrap().order(), 1);
        let z5 = aut_group(&g("cyclic(5)"), &caps).unwrap();
        assert_eq!(out_group(&z5, &caps).unwrap().order(), z5.order());
    }

    #[test]
    fn relative_automorphisms() {
        let caps = Caps::default();
        let d4 = g("dihedral(8)");
        assert_eq!(relative_aut(&d4, &d4.center(), &caps).unwrap().len(), 8);
        assert_eq!(relative_aut(&d4, &d4.whole(), &caps).unwrap().len(), 8);
        let e8 = g("elem_abelian(2,3)");
        let h = e8.subgroup_generated(&[1]);
        assert_eq!(relative_aut(&e8, &h, &caps).unwrap().len(), 24);
    }

    #[test]
    fn inner_is_center_quotient() {
        let caps = Caps::default();
        for s in ["dihedral(8)", "quaternion(8)", "symmetric(4)", "metacyclic(7,3)"] {
            let a = aut_group(&g(s), &caps).unwrap();
            let (q, map) = a.inner_from_center_quotient().unwrap();
            let mut sorted = map.clone();
            sorted.sort_unstable();
            assert_eq!(sorted, a.inner().to_vec(), "{s}");
            let pg = a.perm_group();
            for x in 0..q.order() {
                for y in 0..q.order() {
                    assert_eq!(map[q.mul(x, y)], pg.mul(map[x], map[y]));
                }
            }
        }
    }
}
