//! Exact linear algebra over the Gaussian rationals: dense matrices, an
//! incremental sparse solver, characteristic polynomials, Gaussian-rational
//! root search and lower Jordan decompositions.

use alloc::collections::BTreeMap;
use alloc::collections::BTreeSet;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;

use crate::exactnum::{gaussian_divisors, GaussianInteger, GaussianRational};

type GR = GaussianRational;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<GR>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries((0..self.rows).map(|r| self.row(r))).finish()
    }
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: alloc::vec![GR::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for k in 0..n {
            m.set(k, k, GR::one());
        }
        m
    }

    /// Builds a matrix from row vectors. Panics on ragged input.
    pub fn from_rows(rows: Vec<Vec<GR>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged matrix rows");
            data.extend(row);
        }
        Matrix { rows: r, cols: c, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &GR {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: GR) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[GR] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<GR> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn from_columns(cols: &[Vec<GR>]) -> Self {
        let c = cols.len();
        let r = cols.first().map_or(0, |x| x.len());
        let mut m = Self::zeros(r, c);
        for (j, col) in cols.iter().enumerate() {
            for (i, v) in col.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        m
    }

    pub fn mul(&self, o: &Matrix) -> Matrix {
        assert_eq!(self.cols, o.rows, "matrix dimension mismatch");
        let mut out = Matrix::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = o.get(k, j);
                    if !b.is_zero() {
                        let v = out.get(i, j) + &(a * b);
                        out.set(i, j, v);
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[GR]) -> Vec<GR> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut acc = GR::zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc += &(a * b);
                    }
                }
                acc
            })
            .collect()
    }

    pub fn sub(&self, o: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn scale(&self, s: &GR) -> Matrix {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| a * s).collect() }
    }

    /// `self - μ·I`.
    pub fn shift(&self, mu: &GR) -> Matrix {
        let mut m = self.clone();
        for k in 0..self.rows.min(self.cols) {
            let v = m.get(k, k) - mu;
            m.set(k, k, v);
        }
        m
    }

    pub fn trace(&self) -> GR {
        let mut t = GR::zero();
        for k in 0..self.rows.min(self.cols) {
            t += self.get(k, k);
        }
        t
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(GR::is_zero)
    }

    pub fn transpose(&self) -> Matrix {
        let mut m = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(j, i, self.get(i, j).clone());
            }
        }
        m
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m.get(r, c).inv().expect("pivot is nonzero");
            for j in c..m.cols {
                let v = m.get(r, j) * &inv;
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i != r && !m.get(i, c).is_zero() {
                    let f = m.get(i, c).clone();
                    for j in c..m.cols {
                        let rv = m.get(r, j);
                        if !rv.is_zero() {
                            let v = m.get(i, j) - &(&f * rv);
                            m.set(i, j, v);
                        }
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right kernel, one vector per free column (in column order).
    pub fn nullspace(&self) -> Vec<Vec<GR>> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = alloc::vec![GR::zero(); self.cols];
                v[f] = GR::one();
                for (row, &p) in pivots.iter().enumerate() {
                    v[p] = -r.get(row, f);
                }
                v
            })
            .collect()
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let mut aug = Matrix::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, GR::one());
        }
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let mut inv = Matrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, r.get(i, n + j).clone());
            }
        }
        Some(inv)
    }

    /// Exact determinant by fraction-based elimination.
    pub fn det(&self) -> GR {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let mut m = self.clone();
        let n = m.rows;
        let mut det = GR::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m.get(i, c).is_zero()) else {
                return GR::zero();
            };
            if p != c {
                m.swap_rows(p, c);
                det = -det;
            }
            let piv = m.get(c, c).clone();
            det = &det * &piv;
            let inv = piv.inv().expect("nonzero pivot");
            for i in c + 1..n {
                if m.get(i, c).is_zero() {
                    continue;
                }
                let f = m.get(i, c) * &inv;
                for j in c..n {
                    let v = m.get(i, j) - &(&f * m.get(c, j));
                    m.set(i, j, v);
                }
            }
        }
        det
    }

    /// Monic characteristic polynomial `det(xI - M)`, coefficients low to high.
    pub fn char_poly(&self) -> Vec<GR> {
        assert!(self.is_square());
        // Faddeev-LeVerrier
        let n = self.rows;
        let mut coeffs = alloc::vec![GR::zero(); n + 1];
        coeffs[n] = GR::one();
        let mut mk = Matrix::zeros(n, n);
        for k in 1..=n {
            mk = self.mul(&mk);
            for d in 0..n {
                let v = mk.get(d, d) + &coeffs[n - k + 1];
                mk.set(d, d, v);
            }
            let t = self.mul(&mk).trace();
            coeffs[n - k] = -(t / GR::from_integer(k as i64));
        }
        coeffs
    }

    pub fn is_lower_triangular(&self) -> bool {
        (0..self.rows).all(|i| (i + 1..self.cols).all(|j| self.get(i, j).is_zero()))
    }

    pub fn is_upper_triangular(&self) -> bool {
        (0..self.rows).all(|i| (0..i.min(self.cols)).all(|j| self.get(i, j).is_zero()))
    }

    pub fn diagonal(&self) -> Vec<GR> {
        (0..self.rows.min(self.cols)).map(|k| self.get(k, k).clone()).collect()
    }

    pub fn permuted(&self, perm: &[usize]) -> Matrix {
        // P^T M P with P the permutation matrix sending e_k to e_{perm[k]}
        let n = perm.len();
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                m.set(i, j, self.get(perm[i], perm[j]).clone());
            }
        }
        m
    }

    /// Row `k` of the result is row `perm[k]` of `self`.
    pub fn permuted_rows(&self, perm: &[usize]) -> Matrix {
        Matrix::from_rows(perm.iter().map(|&k| self.row(k).to_vec()).collect())
    }
}

/// Evaluates a univariate polynomial (coefficients low to high) at `x`.
pub fn poly_eval(coeffs: &[GR], x: &GR) -> GR {
    let mut acc = GR::zero();
    for c in coeffs.iter().rev() {
        acc = &(&acc * x) + c;
    }
    acc
}

/// Divides by `(x - r)`, assuming `r` is a root.
pub fn deflate(coeffs: &[GR], r: &GR) -> Vec<GR> {
    let n = coeffs.len() - 1;
    let mut out = alloc::vec![GR::zero(); n];
    let mut carry = GR::zero();
    for k in (0..n).rev() {
        carry = &coeffs[k + 1] + &(&carry * r);
        out[k] = carry.clone();
    }
    out
}

fn clear_denominators(coeffs: &[GR]) -> Vec<GaussianInteger> {
    let mut den = BigInt::one();
    for c in coeffs {
        den = den.lcm(&c.denominator_lcm());
    }
    let scale = GR::from_rational(crate::exactnum::Rational::from_integer(den));
    coeffs
        .iter()
        .map(|c| {
            let (g, d) = (c * &scale).to_gaussian_integer_over();
            debug_assert!(d.is_one());
            g
        })
        .collect()
}

/// Candidate Gaussian-rational roots `i^k·u/v` with `u | c_0` and `v | c_n`.
fn root_candidates(coeffs: &[GR]) -> Vec<GR> {
    let ints = clear_denominators(coeffs);
    let c0 = &ints[0];
    let cn = &ints[ints.len() - 1];
    let us = gaussian_divisors(c0);
    let vs = gaussian_divisors(cn);
    let mut set = BTreeSet::new();
    for u in &us {
        for v in &vs {
            let base = GR::from_gaussian_integer(u) / GR::from_gaussian_integer(v);
            let mut z = base;
            for _ in 0..4 {
                set.insert(z.clone());
                z = &z * &GR::i();
            }
        }
    }
    set.into_iter().collect()
}

/// Gaussian-rational roots of a polynomial, with multiplicity.
///
/// `preferred` candidates are tried first. Returns the roots found (in
/// discovery order) together with the remaining factor, which has no
/// Gaussian-rational root.
pub fn gaussian_rational_roots(coeffs: &[GR], preferred: &[GR]) -> (Vec<GR>, Vec<GR>) {
    let mut p: Vec<GR> = coeffs.to_vec();
    while p.len() > 1 && p.last().is_some_and(GR::is_zero) {
        p.pop();
    }
    let mut roots = Vec::new();
    while p.len() > 1 && p[0].is_zero() {
        roots.push(GR::zero());
        p = p[1..].to_vec();
    }
    let try_all = |cands: &[GR], p: &mut Vec<GR>, roots: &mut Vec<GR>| {
        for r in cands {
            while p.len() > 1 && poly_eval(p, r).is_zero() {
                *p = deflate(p, r);
                roots.push(r.clone());
            }
        }
    };
    try_all(preferred, &mut p, &mut roots);
    if p.len() > 1 {
        let cands = root_candidates(&p);
        try_all(&cands, &mut p, &mut roots);
    }
    (roots, p)
}

/// Incremental independence test for vectors of a fixed length.
#[derive(Clone, Debug, Default)]
pub struct SpanTracker {
    rows: Vec<(usize, Vec<GR>)>,
}

impl SpanTracker {
    fn reduce(&self, v: &[GR]) -> Vec<GR> {
        let mut v = v.to_vec();
        for (p, row) in &self.rows {
            if !v[*p].is_zero() {
                let f = v[*p].clone();
                for (x, y) in v.iter_mut().zip(row) {
                    if !y.is_zero() {
                        *x -= &(&f * y);
                    }
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[GR]) -> bool {
        self.reduce(v).iter().all(GR::is_zero)
    }

    /// Adds `v` and reports whether it was independent of the current span.
    pub fn insert(&mut self, v: &[GR]) -> bool {
        let mut r = self.reduce(v);
        let Some(p) = r.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = r[p].inv().expect("nonzero");
        for x in r.iter_mut() {
            *x = &*x * &inv;
        }
        for (_, row) in self.rows.iter_mut() {
            if !row[p].is_zero() {
                let f = row[p].clone();
                for (x, y) in row.iter_mut().zip(&r) {
                    if !y.is_zero() {
                        *x -= &(&f * y);
                    }
                }
            }
        }
        self.rows.push((p, r));
        true
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }
}

/// A Jordan block: eigenvalue and size.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JordanBlock {
    pub eigenvalue: GR,
    pub size: usize,
}

/// Lower Jordan decomposition `S⁻¹ M S = J`.
#[derive(Clone, Debug)]
pub struct JordanDecomposition {
    pub j: Matrix,
    pub s: Matrix,
    pub blocks: Vec<JordanBlock>,
}

impl JordanDecomposition {
    /// Diagonal of `J`.
    pub fn eigenvalues(&self) -> Vec<GR> {
        self.j.diagonal()
    }

    /// `flags[k]` is true when `J[k+1][k] = 1`.
    pub fn jordan_flags(&self) -> Vec<bool> {
        (1..self.j.rows()).map(|k| self.j.get(k, k - 1).is_one()).collect()
    }
}

/// Builds the lower Jordan form of `m` for the given distinct eigenvalues,
/// listed in the order the blocks should appear. Within one eigenvalue,
/// blocks are emitted by decreasing size.
///
/// Returns `None` if the algebraic multiplicities do not add up, i.e. the
/// eigenvalue list is incomplete.
pub fn lower_jordan(m: &Matrix, eigenvalues: &[(GR, usize)]) -> Option<JordanDecomposition> {
    let n = m.rows();
    let mut columns: Vec<Vec<GR>> = Vec::with_capacity(n);
    let mut blocks = Vec::new();
    for (mu, mult) in eigenvalues {
        let nm = m.shift(mu);
        // kernels of N^j until the generalized eigenspace is reached
        let mut kernels: Vec<Vec<Vec<GR>>> = alloc::vec![Vec::new()];
        let mut power = Matrix::identity(n);
        loop {
            power = nm.mul(&power);
            let k = power.nullspace();
            let done = k.len() >= *mult;
            let stalled = kernels.last().is_some_and(|prev| prev.len() == k.len()) && kernels.len() > 1;
            kernels.push(k);
            if done {
                break;
            }
            if stalled {
                return None;
            }
        }
        let depth = kernels.len() - 1;
        if kernels[depth].len() != *mult {
            return None;
        }
        let mut chains: Vec<(Vec<GR>, usize)> = Vec::new();
        for level in (1..=depth).rev() {
            let mut span = SpanTracker::default();
            for v in &kernels[level - 1] {
                span.insert(v);
            }
            for (top, len) in &chains {
                let mut v = top.clone();
                for _ in 0..(len - level) {
                    v = nm.mul_vec(&v);
                }
                span.insert(&v);
            }
            for cand in &kernels[level] {
                if span.insert(cand) {
                    chains.push((cand.clone(), level));
                }
            }
        }
        for (top, len) in chains {
            let mut v = top;
            for k in 0..len {
                columns.push(v.clone());
                if k + 1 < len {
                    v = nm.mul_vec(&v);
                }
            }
            blocks.push(JordanBlock { eigenvalue: mu.clone(), size: len });
        }
    }
    if columns.len() != n {
        return None;
    }
    let s = Matrix::from_columns(&columns);
    let s_inv = s.inverse()?;
    let j = s_inv.mul(m).mul(&s);
    debug_assert!(is_lower_jordan(&j));
    Some(JordanDecomposition { j, s, blocks })
}

/// Lower bidiagonal with sub-diagonal entries in `{0, 1}`, nonzero only
/// between equal diagonal entries.
pub fn is_lower_jordan(j: &Matrix) -> bool {
    let n = j.rows();
    if !j.is_square() {
        return false;
    }
    for r in 0..n {
        for c in 0..n {
            let v = j.get(r, c);
            if r == c {
                continue;
            }
            if r == c + 1 {
                if !(v.is_zero() || (v.is_one() && j.get(r, r) == j.get(c, c))) {
                    return false;
                }
            } else if !v.is_zero() {
                return false;
            }
        }
    }
    true
}

/// Groups eigenvalues into `(value, multiplicity)` keeping first-seen order.
pub fn group_eigenvalues(values: &[GR]) -> Vec<(GR, usize)> {
    let mut out: Vec<(GR, usize)> = Vec::new();
    for v in values {
        if let Some(slot) = out.iter_mut().find(|(w, _)| w == v) {
            slot.1 += 1;
        } else {
            out.push((v.clone(), 1));
        }
    }
    out
}

/// Pivot preference for [`SparseSystem`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PivotOrder {
    LowestColumn,
    HighestColumn,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Inconsistent {
    /// Index (in insertion order) of the equation that could not be satisfied.
    pub equation: usize,
}

/// Incrementally built sparse linear system with exact consistency checks.
#[derive(Clone, Debug)]
pub struct SparseSystem {
    ncols: usize,
    order: PivotOrder,
    pivots: Vec<(usize, BTreeMap<usize, GR>, GR)>,
    pivot_of: BTreeMap<usize, usize>,
    inserted: usize,
}

impl SparseSystem {
    pub fn new(ncols: usize, order: PivotOrder) -> Self {
        SparseSystem { ncols, order, pivots: Vec::new(), pivot_of: BTreeMap::new(), inserted: 0 }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    /// Adds the equation `Σ row[c]·x_c = rhs`.
    pub fn push(&mut self, row: BTreeMap<usize, GR>, rhs: GR) -> Result<(), Inconsistent> {
        let idx = self.inserted;
        self.inserted += 1;
        let mut row: BTreeMap<usize, GR> = row.into_iter().filter(|(_, v)| !v.is_zero()).collect();
        let mut rhs = rhs;
        for (p, prow, prhs) in &self.pivots {
            let Some(f) = row.get(p).cloned() else { continue };
            for (c, v) in prow {
                let nv = match row.get(c) {
                    Some(old) => old - &(&f * v),
                    None => -(&f * v),
                };
                if nv.is_zero() {
                    row.remove(c);
                } else {
                    row.insert(*c, nv);
                }
            }
            rhs -= &(&f * prhs);
        }
        let pick = match self.order {
            PivotOrder::LowestColumn => row.keys().next().copied(),
            PivotOrder::HighestColumn => row.keys().next_back().copied(),
        };
        match pick {
            None if rhs.is_zero() => Ok(()),
            None => Err(Inconsistent { equation: idx }),
            Some(p) => {
                let inv = row[&p].inv().expect("nonzero pivot");
                for v in row.values_mut() {
                    *v = &*v * &inv;
                }
                let rhs = &rhs * &inv;
                self.pivot_of.insert(p, self.pivots.len());
                self.pivots.push((p, row, rhs));
                Ok(())
            }
        }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// A particular solution with every free variable set to zero.
    pub fn solve(&self) -> Vec<GR> {
        let mut x = alloc::vec![GR::zero(); self.ncols];
        for (p, row, rhs) in self.pivots.iter().rev() {
            let mut v = rhs.clone();
            for (c, a) in row {
                if c != p && !x[*c].is_zero() {
                    v -= &(a * &x[*c]);
                }
            }
            x[*p] = v;
        }
        x
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gr(s: &str) -> GR {
        s.parse().unwrap()
    }

    fn m(rows: &[&[&str]]) -> Matrix {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|s| gr(s)).collect()).collect())
    }

    #[test]
    fn char_poly_and_roots() {
        let a = m(&[&["1/2", "1"], &["0", "1/3"]]);
        let cp = a.char_poly();
        assert_eq!(cp, alloc::vec![gr("1/6"), gr("-5/6"), gr("1")]);
        let (roots, rest) = gaussian_rational_roots(&cp, &[]);
        assert_eq!(rest.len(), 1);
        assert!(roots.contains(&gr("1/2")) && roots.contains(&gr("1/3")));
    }

    #[test]
    fn irreducible_quadratic_has_no_roots() {
        // x^2 - 2
        let (roots, rest) = gaussian_rational_roots(&[gr("-2"), gr("0"), gr("1")], &[]);
        assert!(roots.is_empty());
        assert_eq!(rest.len(), 3);
    }

    #[test]
    fn gaussian_roots_found() {
        // (x - i/2)^2 (x + 1/2)
        let p1 = [gr("-1/2*i"), gr("1")];
        let mut p = alloc::vec![gr("1/2"), gr("1")];
        for _ in 0..2 {
            let mut q = alloc::vec![GR::zero(); p.len() + 1];
            for (a, x) in p.iter().enumerate() {
                for (b, y) in p1.iter().enumerate() {
                    q[a + b] += &(x * y);
                }
            }
            p = q;
        }
        let (roots, rest) = gaussian_rational_roots(&p, &[]);
        assert_eq!(rest.len(), 1);
        assert_eq!(roots.iter().filter(|r| **r == gr("1/2*i")).count(), 2);
    }

    #[test]
    fn det_inverse_rank() {
        let a = m(&[&["1", "2"], &["3", "4"]]);
        assert_eq!(a.det(), gr("-2"));
        assert_eq!(a.mul(&a.inverse().unwrap()), Matrix::identity(2));
        let s = m(&[&["1", "2"], &["2", "4"]]);
        assert!(s.inverse().is_none());
        assert_eq!(s.rank(), 1);
        assert_eq!(s.nullspace(), alloc::vec![alloc::vec![gr("-2"), gr("1")]]);
    }

    #[test]
    fn jordan_of_upper_block_is_permutation() {
        let a = m(&[&["1/4", "1"], &["0", "1/4"]]);
        let jd = lower_jordan(&a, &[(gr("1/4"), 2)]).unwrap();
        assert_eq!(jd.j, m(&[&["1/4", "0"], &["1", "1/4"]]));
        assert_eq!(jd.s, m(&[&["0", "1"], &["1", "0"]]));
    }

    #[test]
    fn jordan_mixed_blocks() {
        // one 2-block and one 1-block for 1/2, plus 1/3, hidden by a conjugation
        let j = m(&[
            &["1/2", "0", "0", "0"],
            &["1", "1/2", "0", "0"],
            &["0", "0", "1/2", "0"],
            &["0", "0", "0", "1/3"],
        ]);
        let p = m(&[&["1", "1", "0", "2"], &["0", "1", "3", "0"], &["1", "0", "1", "0"], &["0", "0", "1", "1"]]);
        let a = p.mul(&j).mul(&p.inverse().unwrap());
        let jd = lower_jordan(&a, &[(gr("1/2"), 3), (gr("1/3"), 1)]).unwrap();
        assert_eq!(jd.j, j);
        assert_eq!(jd.s.inverse().unwrap().mul(&a).mul(&jd.s), j);
        assert_eq!(jd.blocks.iter().map(|b| b.size).collect::<Vec<_>>(), alloc::vec![2, 1, 1]);
    }

    #[test]
    fn sparse_system_detects_inconsistency_and_solves() {
        let mut sys = SparseSystem::new(2, PivotOrder::LowestColumn);
        let row = |a: &str, b: &str| {
            let mut r = BTreeMap::new();
            r.insert(0, gr(a));
            r.insert(1, gr(b));
            r
        };
        sys.push(row("1", "1"), gr("3")).unwrap();
        sys.push(row("1", "-1"), gr("1")).unwrap();
        assert_eq!(sys.solve(), alloc::vec![gr("2"), gr("1")]);
        assert_eq!(sys.push(row("2", "2"), gr("5")), Err(Inconsistent { equation: 2 }));
        sys.push(row("2", "2"), gr("6")).unwrap();
    }

    #[test]
    fn pivot_orders_agree_on_determined_unknowns() {
        // x0 + x1 = 1 leaves one free unknown; x2 = 5 is determined either way
        for order in [PivotOrder::LowestColumn, PivotOrder::HighestColumn] {
            let mut sys = SparseSystem::new(3, order);
            let mut r = BTreeMap::new();
            r.insert(0, gr("1"));
            r.insert(1, gr("1"));
            sys.push(r, gr("1")).unwrap();
            let mut r = BTreeMap::new();
            r.insert(2, gr("2"));
            sys.push(r, gr("10")).unwrap();
            assert_eq!(sys.solve()[2], gr("5"));
        }
    }
}
