//! Named group constructors with fixed element indexing.
//!
//! | spec | element `i` |
//! |---|---|
//! | `cyclic(n)` | `g^i` |
//! | `dihedral(2n)` | `r^i` for `i < n`, `r^(i-n)·s` for `i ≥ n` (`s r s = r⁻¹`) |
//! | `quaternion(2^m)` | `x^(i mod 2n)·y^(i div 2n)` with `x^(2n)=1`, `y²=x^n`, `y x y⁻¹ = x⁻¹` |
//! | `elem_abelian(p,k)` | base-`p` digits of `i`, least significant first |
//! | `symmetric(n)`, `alternating(n)` | permutations of `0..n` in lexicographic order of image tuples; product `a·b = a∘b` (apply `b` first) |
//! | `direct_product(A,B)` | `(a, b)` at `a·|B| + b` |
//! | `semidirect(N,K,act)` | `(n, k)` at `n·|K| + k`, `(n,k)(n',k') = (n·act[k](n'), k k')` |
//! | `metacyclic(p,q)` | `x^a y^b` at `a·q + b`, `y x y⁻¹ = x^r` with `r` the least integer `> 1` of multiplicative order `q` mod `p` |

use std::fmt;
use std::str::FromStr;

use super::Group;
use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::perm::Perm;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupSpec {
    Cyclic(usize),
    /// Dihedral group of the given order `2n`.
    Dihedral(usize),
    /// Generalized quaternion group of order 8 or 16.
    Quaternion(usize),
    ElemAbelian { p: usize, k: usize },
    Symmetric(usize),
    Alternating(usize),
    DirectProduct(Box<GroupSpec>, Box<GroupSpec>),
    /// `N ⋊ K`; `action[k]` is the image array of an automorphism of `N`.
    Semidirect {
        normal: Box<GroupSpec>,
        acting: Box<GroupSpec>,
        action: Vec<Vec<usize>>,
    },
    Metacyclic { p: usize, q: usize },
}

pub fn standard_group(spec: &GroupSpec) -> Result<Group> {
    spec.build(&Caps::default())
}

impl GroupSpec {
    /// Predicted order, without building anything.
    pub fn order(&self) -> Result<u128> {
        Ok(match self {
            GroupSpec::Cyclic(n) => *n as u128,
            GroupSpec::Dihedral(n) => *n as u128,
            GroupSpec::Quaternion(n) => *n as u128,
            GroupSpec::ElemAbelian { p, k } => (*p as u128)
                .checked_pow(*k as u32)
                .ok_or_else(|| Error::UnsupportedSpec("order overflows".into()))?,
            GroupSpec::Symmetric(n) => (1..=*n as u128).product(),
            GroupSpec::Alternating(n) => ((1..=*n as u128).product::<u128>() / 2).max(1),
            GroupSpec::DirectProduct(a, b) => a.order()? * b.order()?,
            GroupSpec::Semidirect { normal, acting, .. } => normal.order()? * acting.order()?,
            GroupSpec::Metacyclic { p, q } => (*p * *q) as u128,
        })
    }

    pub fn build(&self, caps: &Caps) -> Result<Group> {
        let order = self.order()?;
        if order > caps.order as u128 {
            return Err(Error::OrderCapExceeded {
                what: "standard group",
                order,
                cap: caps.order as u128,
            });
        }
        let label = self.to_string();
        match self {
            GroupSpec::Cyclic(n) => {
                if *n == 0 {
                    return Err(Error::UnsupportedSpec("cyclic(0)".into()));
                }
                let n = *n;
                table_from(n, &label, |a, b| (a + b) % n)
            }
            GroupSpec::Dihedral(m) => {
                if *m < 2 || m % 2 != 0 {
                    return Err(Error::UnsupportedSpec(format!("dihedral({m}) needs an even order")));
                }
                let n = m / 2;
                table_from(*m, &label, |a, b| {
                    let (ka, fa) = (a % n, a / n);
                    let (kb, fb) = (b % n, b / n);
                    let k = if fa == 0 { (ka + kb) % n } else { (ka + n - kb) % n };
                    k + n * ((fa + fb) % 2)
                })
            }
            GroupSpec::Quaternion(m) => {
                if *m != 8 && *m != 16 {
                    return Err(Error::UnsupportedSpec(format!("quaternion({m}): only 8 and 16")));
                }
                let two_n = m / 2;
                let n = two_n / 2;
                table_from(*m, &label, |a, b| {
                    let (ka, fa) = (a % two_n, a / two_n);
                    let (kb, fb) = (b % two_n, b / two_n);
                    let mut k = if fa == 0 { ka + kb } else { ka + two_n - kb };
                    if fa == 1 && fb == 1 {
                        k += n;
                    }
                    (k % two_n) + two_n * ((fa + fb) % 2)
                })
            }
            GroupSpec::ElemAbelian { p, k } => {
                if *p < 2 || !is_prime(*p) {
                    return Err(Error::UnsupportedSpec(format!("elem_abelian({p},{k}) needs a prime")));
                }
                let (p, n) = (*p, order as usize);
                table_from(n, &label, |a, b| {
                    let (mut x, mut y, mut out, mut place) = (a, b, 0, 1);
                    while place < n {
                        out += ((x % p + y % p) % p) * place;
                        x /= p;
                        y /= p;
                        place *= p;
                    }
                    out
                })
            }
            GroupSpec::Symmetric(n) | GroupSpec::Alternating(n) => {
                if *n > 5 {
                    return Err(Error::UnsupportedSpec(format!("{label}: degree above 5")));
                }
                let even_only = matches!(self, GroupSpec::Alternating(_));
                let perms: Vec<Perm> = permutations(*n)
                    .into_iter()
                    .filter(|p| !even_only || is_even(p))
                    .collect();
                perm_table(&perms, &label)
            }
            GroupSpec::DirectProduct(a, b) => {
                let ga = a.build(caps)?;
                let gb = b.build(caps)?;
                Group::direct_product(&ga, &gb, &label)
            }
            GroupSpec::Semidirect {
                normal,
                acting,
                action,
            } => {
                let n = normal.build(caps)?;
                let k = acting.build(caps)?;
                semidirect(&n, &k, action, &label)
            }
            GroupSpec::Metacyclic { p, q } => {
                let r = metacyclic_root(*p, *q).ok_or_else(|| {
                    Error::UnsupportedSpec(format!("metacyclic({p},{q}): no element of order {q} mod {p}"))
                })?;
                let (p, q) = (*p, *q);
                let mut pow = vec![1usize; q];
                for b in 1..q {
                    pow[b] = pow[b - 1] * r % p;
                }
                table_from(p * q, &label, |x, y| {
                    let (a1, b1) = (x / q, x % q);
                    let (a2, b2) = (y / q, y % q);
                    ((a1 + pow[b1] * a2) % p) * q + (b1 + b2) % q
                })
            }
        }
    }
}

/// Least `r > 1` with multiplicative order exactly `q` modulo `p`.
pub fn metacyclic_root(p: usize, q: usize) -> Option<usize> {
    if p < 3 || q < 2 || (p - 1) % q != 0 {
        return None;
    }
    (2..p).find(|&r| {
        let mut x = 1;
        for k in 1..=q {
            x = x * r % p;
            if x == 1 {
                return k == q;
            }
        }
        false
    })
}

/// `N ⋊ K` from the image arrays of `action[k] ∈ Aut(N)`.
pub fn semidirect(n: &Group, k: &Group, action: &[Vec<usize>], label: &str) -> Result<Group> {
    if action.len() != k.order() {
        return Err(Error::UnsupportedSpec("semidirect: one automorphism per element of K".into()));
    }
    let perms: Vec<Perm> = action.iter().map(|a| Perm::new(a.clone())).collect();
    for p in &perms {
        if !n.is_automorphism(p) {
            return Err(Error::UnsupportedSpec("semidirect: action entry is not an automorphism".into()));
        }
    }
    for a in 0..k.order() {
        for b in 0..k.order() {
            if perms[k.mul(a, b)] != perms[a].compose(&perms[b]) {
                return Err(Error::UnsupportedSpec("semidirect: action is not a homomorphism".into()));
            }
        }
    }
    let kk = k.order();
    table_from(n.order() * kk, label, |x, y| {
        let (n1, k1) = (x / kk, x % kk);
        let (n2, k2) = (y / kk, y % kk);
        n.mul(n1, perms[k1].apply(n2)) * kk + k.mul(k1, k2)
    })
}

fn table_from(n: usize, label: &str, mul: impl Fn(usize, usize) -> usize) -> Result<Group> {
    let mut flat = vec![0; n * n];
    for a in 0..n {
        for b in 0..n {
            flat[a * n + b] = mul(a, b);
        }
    }
    Group::from_flat(flat, n, label)
}

fn perm_table(perms: &[Perm], label: &str) -> Result<Group> {
    let index: std::collections::HashMap<&Perm, usize> =
        perms.iter().enumerate().map(|(i, p)| (p, i)).collect();
    table_from(perms.len(), label, |a, b| index[&perms[a].compose(&perms[b])])
}

fn permutations(n: usize) -> Vec<Perm> {
    fn rec(prefix: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Perm>) {
        if prefix.len() == used.len() {
            out.push(Perm::new(prefix.clone()));
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                prefix.push(i);
                rec(prefix, used, out);
                prefix.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

fn is_even(p: &Perm) -> bool {
    let n = p.degree();
    let mut inversions = 0;
    for i in 0..n {
        for j in i + 1..n {
            if p.apply(i) > p.apply(j) {
                inversions += 1;
            }
        }
    }
    inversions % 2 == 0
}

fn is_prime(p: usize) -> bool {
    p >= 2 && (2..p).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Cyclic(n) => write!(f, "cyclic({n})"),
            GroupSpec::Dihedral(n) => write!(f, "dihedral({n})"),
            GroupSpec::Quaternion(n) => write!(f, "quaternion({n})"),
            GroupSpec::ElemAbelian { p, k } => write!(f, "elem_abelian({p},{k})"),
            GroupSpec::Symmetric(n) => write!(f, "symmetric({n})"),
            GroupSpec::Alternating(n) => write!(f, "alternating({n})"),
            GroupSpec::DirectProduct(a, b) => write!(f, "direct_product({a},{b})"),
            GroupSpec::Semidirect {
                normal,
                acting,
                action,
            } => write!(
                f,
                "semidirect({normal},{acting},{})",
                serde_json::to_string(action).unwrap_or_default()
            ),
            GroupSpec::Metacyclic { p, q } => write!(f, "metacyclic({p},{q})"),
        }
    }
}

impl FromStr for GroupSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<GroupSpec> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let mut p = SpecParser {
            src: &compact,
            pos: 0,
        };
        let spec = p.spec()?;
        if p.pos != compact.len() {
            return Err(p.error("trailing input"));
        }
        Ok(spec)
    }
}

struct SpecParser<'a> {
    src: &'a str,
    pos: usize,
}

impl SpecParser<'_> {
    fn error(&self, msg: &str) -> Error {
        Error::Parse {
            location: format!("column {}", self.pos + 1),
            message: format!("{msg} in group spec `{}`", self.src),
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.src[self.pos..].starts_with(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(&format!("expected `{c}`")))
        }
    }

    fn ident(&mut self) -> &str {
        let start = self.pos;
        while self.src[self.pos..]
            .chars()
            .next()
            .is_some_and(|c| c.is_ascii_alphanumeric() || c == '_')
        {
            self.pos += 1;
        }
        &self.src[start..self.pos]
    }

    fn number(&mut self) -> Result<usize> {
        let digits = self.ident().to_string();
        digits.parse().map_err(|_| self.error("expected a number"))
    }

    fn spec(&mut self) -> Result<GroupSpec> {
        let name = self.ident().to_string();
        self.expect('(')?;
        let spec = match name.as_str() {
            "cyclic" => GroupSpec::Cyclic(self.number()?),
            "dihedral" => GroupSpec::Dihedral(self.number()?),
            "quaternion" => GroupSpec::Quaternion(self.number()?),
            "symmetric" => GroupSpec::Symmetric(self.number()?),
            "alternating" => GroupSpec::Alternating(self.number()?),
            "elem_abelian" => {
                let p = self.number()?;
                self.expect(',')?;
                GroupSpec::ElemAbelian { p, k: self.number()? }
            }
            "metacyclic" => {
                let p = self.number()?;
                self.expect(',')?;
                GroupSpec::Metacyclic { p, q: self.number()? }
            }
            "direct_product" => {
                let a = self.spec()?;
                self.expect(',')?;
                GroupSpec::DirectProduct(Box::new(a), Box::new(self.spec()?))
            }
            "semidirect" => {
                let normal = self.spec()?;
                self.expect(',')?;
                let acting = self.spec()?;
                self.expect(',')?;
                let start = self.pos;
                let mut depth = 0i32;
                for (i, c) in self.src[start..].char_indices() {
                    match c {
                        '[' => depth += 1,
                        ']' => depth -= 1,
                        _ => {}
                    }
                    if depth == 0 {
                        self.pos = start + i + 1;
                        break;
                    }
                }
                let action: Vec<Vec<usize>> = serde_json::from_str(&self.src[start..self.pos])
                    .map_err(|e| self.error(&format!("bad action list ({e})")))?;
                GroupSpec::Semidirect {
                    normal: Box::new(normal),
                    acting: Box::new(acting),
                    action,
                }
            }
            other => return Err(Error::UnsupportedSpec(other.to_string())),
        };
        self.expect(')')?;
        Ok(spec)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orders_and_centers() {
        let cases = [
            ("cyclic(1)", 1, 1),
            ("dihedral(8)", 8, 2),
            ("quaternion(8)", 8, 2),
            ("quaternion(16)", 16, 2),
            ("symmetric(3)", 6, 1),
            ("alternating(4)", 12, 1),
            ("elem_abelian(2,3)", 8, 8),
            ("metacyclic(7,3)", 21, 1),
            ("direct_product(cyclic(4),cyclic(2))", 8, 8),
        ];
        for (s, order, center) in cases {
            let g = standard_group(&s.parse().unwrap()).unwrap();
            assert_eq!(g.order(), order, "{s}");
            assert_eq!(g.center().order(), center, "{s}");
            assert_eq!(g.label(), s);
        }
    }

    #[test]
    fn dihedral_indexing() {
        let d4 = standard_group(&GroupSpec::Dihedral(8)).unwrap();
        // rotations 0..4 form a cyclic subgroup, reflections have order 2
        assert_eq!(d4.element_order(1), 4);
        assert!((4..8).all(|s| d4.element_order(s) == 2));
        // s r s = r⁻¹
        assert_eq!(d4.mul(d4.mul(4, 1), 4), 3);
    }

    #[test]
    fn quaternion_has_one_involution() {
        let q8 = standard_group(&GroupSpec::Quaternion(8)).unwrap();
        assert_eq!(q8.element_orders().iter().filter(|&&o| o == 2).count(), 1);
    }

    #[test]
    fn unsupported_and_capped() {
        assert!(matches!("cyclic(0)".parse::<GroupSpec>().unwrap().build(&Caps::default()), Err(Error::UnsupportedSpec(_))));
        assert!(matches!("symmetric(6)".parse::<GroupSpec>().unwrap().build(&Caps::default()), Err(Error::OrderCapExceeded { .. }) | Err(Error::UnsupportedSpec(_))));
        assert!(matches!("cyclic(1000)".parse::<GroupSpec>().unwrap().build(&Caps::default()), Err(Error::OrderCapExceeded { .. })));
        assert!(matches!("foo(3)".parse::<GroupSpec>(), Err(Error::UnsupportedSpec(_))));
        assert!(matches!("cyclic(3".parse::<GroupSpec>(), Err(Error::Parse { .. })));
    }

    #[test]
    fn semidirect_inversion_is_dihedral_like() {
        let spec: GroupSpec = "semidirect(cyclic(3),cyclic(2),[[0,1,2],[0,2,1]])".parse().unwrap();
        let g = standard_group(&spec).unwrap();
        assert_eq!(g.order(), 6);
        assert!(!g.is_abelian());
        assert_eq!(spec.to_string().parse::<GroupSpec>().unwrap(), spec);
    }
}
