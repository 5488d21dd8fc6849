//! Finite abelian groups as products of cyclic groups, and subgroups of
//! `⊕ Z/m_c` held in a Howell-style echelon form.

use crate::error::{Error, Result};
use crate::groups::Group;

/// An isomorphism `M ≅ ⊕ Z/d_i` for a finite abelian group `M`.
#[derive(Clone, Debug)]
pub struct CyclicDecomposition {
    moduli: Vec<u64>,
    basis: Vec<usize>,
    coords: Vec<Vec<u64>>,
    radix: Vec<usize>,
    from_code: Vec<usize>,
}

impl CyclicDecomposition {
    /// Diagonalizes the relation lattice of `m` over its greedy generators.
    pub fn new(m: &Group) -> Result<Self> {
        if !m.is_abelian() {
            return Err(Error::InvalidInput(format!("{} is not abelian", m.label())));
        }
        let n = m.order();
        let gens = m.generators();
        let k = gens.len();
        // spanning tree coordinates over the generators
        let mut vec_of: Vec<Option<Vec<i128>>> = vec![None; n];
        vec_of[0] = Some(vec![0; k]);
        let mut queue = vec![0];
        let mut head = 0;
        let mut relations: Vec<Vec<i128>> = Vec::new();
        while head < queue.len() {
            let x = queue[head];
            head += 1;
            for (i, &s) in gens.iter().enumerate() {
                let y = m.mul(x, s);
                let mut v = vec_of[x].clone().unwrap();
                v[i] += 1;
                match &vec_of[y] {
                    None => {
                        vec_of[y] = Some(v);
                        queue.push(y);
                    }
                    Some(w) => {
                        let r: Vec<i128> = v.iter().zip(w).map(|(a, b)| a - b).collect();
                        if r.iter().any(|&c| c != 0) {
                            relations.push(r);
                        }
                    }
                }
            }
        }
        let (diag, cinv, c) = diagonalize(relations, k);
        // keep the non-trivial factors
        let keep: Vec<usize> = (0..k).filter(|&i| diag[i] != 1).collect();
        let moduli: Vec<u64> = keep.iter().map(|&i| diag[i] as u64).collect();
        if moduli.iter().any(|&d| d == 0) {
            return Err(Error::InvalidInput("relation lattice is not of full rank".into()));
        }
        let power = |x: usize, e: i128| -> usize {
            let o = m.element_order(x) as i128;
            let e = e.rem_euclid(o);
            (0..e).fold(0, |acc, _| m.mul(acc, x))
        };
        let basis: Vec<usize> = keep
            .iter()
            .map(|&i| {
                (0..k).fold(0, |acc, j| m.mul(acc, power(gens[j], cinv[i][j])))
            })
            .collect();
        let coords: Vec<Vec<u64>> = (0..n)
            .map(|x| {
                let v = vec_of[x].as_ref().unwrap();
                keep.iter()
                    .map(|&i| {
                        let y: i128 = (0..k).map(|j| v[j] * c[j][i]).sum();
                        y.rem_euclid(diag[i]) as u64
                    })
                    .collect()
            })
            .collect();
        let mut radix = vec![1usize; moduli.len()];
        for i in (0..moduli.len()).rev().skip(1) {
            radix[i] = radix[i + 1] * moduli[i + 1] as usize;
        }
        let total: usize = moduli.iter().map(|&d| d as usize).product();
        if total != n {
            return Err(Error::InvalidInput("cyclic decomposition has the wrong order".into()));
        }
        let mut from_code = vec![usize::MAX; n];
        for x in 0..n {
            let code: usize = coords[x].iter().zip(&radix).map(|(&c, &r)| c as usize * r).sum();
            if from_code[code] != usize::MAX {
                return Err(Error::InvalidInput("cyclic decomposition is not injective".into()));
            }
            from_code[code] = x;
        }
        let d = CyclicDecomposition {
            moduli,
            basis,
            coords,
            radix,
            from_code,
        };
        // the basis elements must have the advertised coordinates
        for (i, &b) in d.basis.iter().enumerate() {
            let mut e = vec![0; d.moduli.len()];
            e[i] = 1;
            if d.coords[b] != e {
                return Err(Error::InvalidInput("cyclic decomposition basis mismatch".into()));
            }
        }
        Ok(d)
    }

    pub fn moduli(&self) -> &[u64] {
        &self.moduli
    }

    pub fn rank(&self) -> usize {
        self.moduli.len()
    }

    pub fn basis(&self) -> &[usize] {
        &self.basis
    }

    pub fn coords(&self, x: usize) -> &[u64] {
        &self.coords[x]
    }

    pub fn element(&self, coords: &[u64]) -> usize {
        let code: usize = coords
            .iter()
            .zip(&self.moduli)
            .zip(&self.radix)
            .map(|((&c, &d), &r)| (c % d) as usize * r)
            .sum();
        self.from_code[code]
    }
}

/// Diagonalizes an integer relation matrix by unimodular row and column
/// operations. Returns the diagonal (length `k`, zero-padded), the inverse
/// column transform and the column transform `C` with `R·C` row-equivalent
/// to the diagonal.
fn diagonalize(mut rows: Vec<Vec<i128>>, k: usize) -> (Vec<i128>, Vec<Vec<i128>>, Vec<Vec<i128>>) {
    let mut c: Vec<Vec<i128>> = (0..k).map(|i| unit(k, i)).collect();
    let mut cinv: Vec<Vec<i128>> = (0..k).map(|i| unit(k, i)).collect();
    let mut diag = vec![0i128; k];
    for t in 0..k {
        loop {
            // smallest non-zero entry in the remaining block
            let mut best: Option<(usize, usize)> = None;
            for (r, row) in rows.iter().enumerate().skip(t) {
                for (j, &x) in row.iter().enumerate().skip(t) {
                    if x != 0 && best.map_or(true, |(br, bj)| x.abs() < rows[br][bj].abs()) {
                        best = Some((r, j));
                    }
                }
            }
            let Some((br, bj)) = best else {
                break;
            };
            rows.swap(t, br);
            if bj != t {
                for row in rows.iter_mut() {
                    row.swap(t, bj);
                }
                for row in c.iter_mut() {
                    row.swap(t, bj);
                }
                cinv.swap(t, bj);
            }
            let p = rows[t][t];
            let mut clean = true;
            for r in t + 1..rows.len() {
                let q = rows[r][t].div_euclid(p);
                if q != 0 {
                    let pivot = rows[t].clone();
                    for (x, y) in rows[r].iter_mut().zip(&pivot) {
                        *x -= q * y;
                    }
                }
                if rows[r][t] != 0 {
                    clean = false;
                }
            }
            for j in t + 1..k {
                let q = rows[t][j].div_euclid(p);
                if q != 0 {
                    // column j -= q · column t
                    for row in rows.iter_mut() {
                        row[j] -= q * row[t];
                    }
                    for row in c.iter_mut() {
                        row[j] -= q * row[t];
                    }
                    // inverse: row t of cinv += q · row j
                    let rj = cinv[j].clone();
                    for (x, y) in cinv[t].iter_mut().zip(&rj) {
                        *x += q * y;
                    }
                }
                if rows[t][j] != 0 {
                    clean = false;
                }
            }
            if clean {
                break;
            }
        }
        if t < rows.len() {
            diag[t] = rows[t][t].abs();
        }
    }
    (diag, cinv, c)
}

fn unit(k: usize, i: usize) -> Vec<i128> {
    let mut v = vec![0; k];
    v[i] = 1;
    v
}

pub(crate) fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Extended gcd on non-negative integers: `(g, s, t)` with `s·a + t·b = g`.
fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    if b == 0 {
        (a, 1, 0)
    } else {
        let (g, s, t) = ext_gcd(b, a % b);
        (g, t, s - (a / b) * t)
    }
}

fn mod_inverse(a: u64, m: u64) -> u64 {
    let (_, s, _) = ext_gcd(a as i128, m as i128);
    s.rem_euclid(m as i128) as u64
}

/// A subgroup of `⊕ Z/m_c`, stored as rows with distinct pivot columns such
/// that for every column `j` the elements vanishing before `j` are spanned
/// by the rows whose pivot is at least `j`.
#[derive(Clone, Debug)]
pub struct Echelon {
    moduli: Vec<u64>,
    rows: Vec<Vec<u64>>,
    pivots: Vec<usize>,
}

impl Echelon {
    pub fn new(moduli: Vec<u64>) -> Self {
        Echelon {
            moduli,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn from_generators<I: IntoIterator<Item = Vec<u64>>>(moduli: Vec<u64>, gens: I) -> Self {
        let mut e = Echelon::new(moduli);
        for g in gens {
            e.insert(g);
        }
        e
    }

    pub fn moduli(&self) -> &[u64] {
        &self.moduli
    }

    pub fn width(&self) -> usize {
        self.moduli.len()
    }

    pub fn rows(&self) -> &[Vec<u64>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    fn first_nonzero(v: &[u64]) -> Option<usize> {
        v.iter().position(|&x| x != 0)
    }

    fn axpy(&self, v: &mut [u64], k: u64, row: &[u64], subtract: bool) {
        for (c, (x, &y)) in v.iter_mut().zip(row).enumerate() {
            if y == 0 {
                continue;
            }
            let m = self.moduli[c];
            let t = (k % m) * y % m;
            *x = if subtract { (*x + m - t) % m } else { (*x + t) % m };
        }
    }

    fn scale(&self, v: &[u64], k: u64) -> Vec<u64> {
        v.iter()
            .zip(&self.moduli)
            .map(|(&x, &m)| (k % m) * x % m)
            .collect()
    }

    pub fn insert(&mut self, v: Vec<u64>) {
        let mut pending = vec![v];
        while let Some(mut v) = pending.pop() {
            for (x, &m) in v.iter_mut().zip(&self.moduli) {
                *x %= m;
            }
            loop {
                let Some(p) = Self::first_nonzero(&v) else {
                    break;
                };
                match self.pivots.binary_search(&p) {
                    Err(pos) => {
                        let m = self.moduli[p];
                        let g = gcd(v[p], m);
                        self.rows.insert(pos, v.clone());
                        self.pivots.insert(pos, p);
                        pending.push(self.scale(&v, m / g));
                        break;
                    }
                    Ok(pos) => {
                        let m = self.moduli[p];
                        let a = self.rows[pos][p];
                        let b = v[p];
                        if b % a == 0 {
                            let row = self.rows[pos].clone();
                            self.axpy(&mut v, b / a, &row, true);
                            continue;
                        }
                        let (g, s, t) = ext_gcd(a as i128, b as i128);
                        let s = s.rem_euclid(m as i128) as u64;
                        let t = t.rem_euclid(m as i128) as u64;
                        let row = self.rows[pos].clone();
                        // new pivot row s·row + t·v, remainder (b/g)·row − (a/g)·v
                        let mut new_row = self.scale(&row, s);
                        self.axpy(&mut new_row, t, &v, false);
                        let mut rest = self.scale(&row, (b as i128 / g) as u64);
                        self.axpy(&mut rest, (a as i128 / g) as u64, &v, true);
                        let gm = gcd(new_row[p], m);
                        pending.push(self.scale(&new_row, m / gm));
                        self.rows[pos] = new_row;
                        v = rest;
                    }
                }
            }
        }
    }

    /// Exact number of elements, or `None` on overflow.
    pub fn order(&self) -> Option<u128> {
        let mut total: u128 = 1;
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            let m = self.moduli[p];
            total = total.checked_mul((m / gcd(row[p], m)) as u128)?;
        }
        Some(total)
    }

    /// Reduces `v` against the rows in pivot order; returns the remainder,
    /// which is zero iff `v` belongs to the subgroup.
    pub fn reduce(&self, v: &[u64]) -> Vec<u64> {
        let mut v: Vec<u64> = v.iter().zip(&self.moduli).map(|(&x, &m)| x % m).collect();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if let Some(f) = Self::first_nonzero(&v) {
                if f < p {
                    return v;
                }
            } else {
                return v;
            }
            let m = self.moduli[p];
            let g = gcd(row[p], m);
            if v[p] % g != 0 {
                return v;
            }
            let k = (v[p] / g) * mod_inverse(row[p] / g, m / g) % (m / g);
            self.axpy(&mut v, k, row, true);
        }
        v
    }

    pub fn contains(&self, v: &[u64]) -> bool {
        self.reduce(v).iter().all(|&x| x == 0)
    }

    /// Subgroup of vectors `(x_j)_{j ≥ col}` coming from elements that vanish
    /// before `col`, with the leading `col` coordinates dropped.
    pub fn tail(&self, col: usize) -> Echelon {
        let mut e = Echelon::new(self.moduli[col..].to_vec());
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if p >= col {
                e.rows.push(row[col..].to_vec());
                e.pivots.push(p - col);
            }
        }
        e
    }

    /// Rows whose pivot lies in `[lo, hi)`.
    pub fn rows_in(&self, lo: usize, hi: usize) -> impl Iterator<Item = &Vec<u64>> {
        self.rows
            .iter()
            .zip(&self.pivots)
            .filter(move |(_, &p)| p >= lo && p < hi)
            .map(|(r, _)| r)
    }

    pub(crate) fn add_into(&self, v: &mut [u64], w: &[u64]) {
        self.axpy(v, 1, w, false);
    }
}
