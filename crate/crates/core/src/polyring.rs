//! Sparse multivariate polynomials over `Q(i)`, polynomial maps, truncated
//! composition and the λ-grading.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt::{self, Write as _};
use core::ops::{Add, Mul, Neg, Sub};

use num_traits::{Signed, Zero};

use crate::exactnum::GaussianRational;
use crate::linalg::Matrix;
use crate::spectrum::{Exponent, OrderedSpectrum, WeightClass};

type GR = GaussianRational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PolyError {
    DimensionMismatch { expected: usize, found: usize },
    ZeroPolynomial,
    /// A map component with a nonzero constant term.
    ConstantTerm { component: usize },
    /// The linear part of a map is not invertible.
    SingularLinearPart,
}

impl fmt::Display for PolyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PolyError::DimensionMismatch { expected, found } => {
                write!(f, "dimension mismatch: expected {expected}, found {found}")
            }
            PolyError::ZeroPolynomial => write!(f, "zero polynomial"),
            PolyError::ConstantTerm { component } => {
                write!(f, "component {} has a constant term", component + 1)
            }
            PolyError::SingularLinearPart => write!(f, "linear part is not invertible"),
        }
    }
}

impl core::error::Error for PolyError {}

fn check(expected: usize, found: usize) -> Result<(), PolyError> {
    if expected != found {
        return Err(PolyError::DimensionMismatch { expected, found });
    }
    Ok(())
}

/// A polynomial in `d` variables; zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    nvars: usize,
    terms: BTreeMap<Exponent, GR>,
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Polynomial {
    pub fn zero(nvars: usize) -> Self {
        Polynomial { nvars, terms: BTreeMap::new() }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, GR::one())
    }

    pub fn constant(nvars: usize, c: GR) -> Self {
        Self::monomial(Exponent::zero(nvars), c)
    }

    pub fn monomial(a: Exponent, c: GR) -> Self {
        let mut p = Polynomial::zero(a.dim());
        if !c.is_zero() {
            p.terms.insert(a, c);
        }
        p
    }

    /// The coordinate function `x_i`.
    pub fn variable(nvars: usize, i: usize) -> Self {
        Self::monomial(Exponent::unit(nvars, i), GR::one())
    }

    /// Builds a polynomial from terms, summing repeated exponents.
    pub fn from_terms<I>(nvars: usize, terms: I) -> Result<Self, PolyError>
    where
        I: IntoIterator<Item = (Exponent, GR)>,
    {
        let mut p = Polynomial::zero(nvars);
        for (a, c) in terms {
            check(nvars, a.dim())?;
            p.add_term(a, &c);
        }
        Ok(p)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// Terms in lexicographic order of exponents.
    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &GR)> {
        self.terms.iter()
    }

    pub fn support(&self) -> impl Iterator<Item = &Exponent> {
        self.terms.keys()
    }

    pub fn coeff(&self, a: &Exponent) -> GR {
        self.terms.get(a).cloned().unwrap_or_default()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn constant_term(&self) -> GR {
        self.coeff(&Exponent::zero(self.nvars))
    }

    /// Largest total degree, `None` for zero.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Exponent::degree).max()
    }

    /// Smallest total degree (the m-adic order), `None` for zero.
    pub fn order(&self) -> Option<u32> {
        self.terms.keys().map(Exponent::degree).min()
    }

    pub fn add_term(&mut self, a: Exponent, c: &GR) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(a) {
            alloc::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            alloc::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &GR) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.nvars);
        }
        Polynomial { nvars: self.nvars, terms: self.terms.iter().map(|(a, x)| (a.clone(), x * c)).collect() }
    }

    /// Drops every monomial of total degree `> n`.
    pub fn truncate(&self, n: u32) -> Polynomial {
        self.filter(|a| a.degree() <= n)
    }

    /// Keeps the monomials whose exponent satisfies `keep`.
    pub fn filter(&self, mut keep: impl FnMut(&Exponent) -> bool) -> Polynomial {
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().filter(|(a, _)| keep(a)).map(|(a, c)| (a.clone(), c.clone())).collect(),
        }
    }

    /// The homogeneous part of total degree `k`.
    pub fn homogeneous_part(&self, k: u32) -> Polynomial {
        self.filter(|a| a.degree() == k)
    }

    /// Product with every monomial of total degree `> n` dropped.
    pub fn mul_truncated(&self, o: &Polynomial, n: Option<u32>) -> Polynomial {
        let mut out = Polynomial::zero(self.nvars);
        for (a, x) in &self.terms {
            let da = a.degree();
            if n.is_some_and(|n| da > n) {
                continue;
            }
            for (b, y) in &o.terms {
                if n.is_some_and(|n| da + b.degree() > n) {
                    continue;
                }
                out.add_term(a.add(b), &(x * y));
            }
        }
        out
    }

    pub fn pow_truncated(&self, k: u32, n: Option<u32>) -> Polynomial {
        let mut acc = Polynomial::one(self.nvars);
        for _ in 0..k {
            acc = acc.mul_truncated(self, n);
        }
        acc
    }

    /// Evaluates at a point.
    pub fn eval(&self, x: &[GR]) -> GR {
        let mut acc = GR::zero();
        for (a, c) in &self.terms {
            let mut t = c.clone();
            for (xi, &k) in x.iter().zip(a.as_slice()) {
                if k > 0 {
                    t = &t * &xi.pow_u(k as u64);
                }
            }
            acc += &t;
        }
        acc
    }

    /// Terms sorted by increasing λ-order.
    pub fn terms_lambda_sorted(&self, spectrum: &OrderedSpectrum) -> Vec<(Exponent, GR)> {
        let mut v: Vec<(Exponent, GR)> = self.terms.iter().map(|(a, c)| (a.clone(), c.clone())).collect();
        v.sort_by(|(a, _), (b, _)| spectrum.lambda_compare(a, b));
        v
    }

    /// Renders with the given variable names; the default names are `x1, …, xd`.
    pub fn display_with(&self, names: &[String]) -> String {
        let mut s = String::new();
        let mut terms: Vec<(&Exponent, &GR)> = self.terms.iter().collect();
        terms.sort_by(|(a, _), (b, _)| display_order(a, b));
        if terms.is_empty() {
            return "0".to_string();
        }
        for (k, (a, c)) in terms.into_iter().enumerate() {
            let negative = if c.is_real() {
                c.re().is_negative()
            } else {
                c.re().is_zero() && c.im().is_negative()
            };
            let mag = if negative { -c.clone() } else { c.clone() };
            match (k == 0, negative) {
                (true, true) => s.push('-'),
                (true, false) => {}
                (false, true) => s.push_str(" - "),
                (false, false) => s.push_str(" + "),
            }
            let mono = monomial_text(a, names);
            if mono.is_empty() {
                if mag.is_real() || mag.re().is_zero() {
                    let _ = write!(s, "{mag}");
                } else {
                    let _ = write!(s, "({mag})");
                }
            } else if mag.is_one() {
                s.push_str(&mono);
            } else if mag.is_real() || mag.re().is_zero() {
                let _ = write!(s, "{mag}*{mono}");
            } else {
                let _ = write!(s, "({mag})*{mono}");
            }
        }
        s
    }

    pub fn default_names(nvars: usize) -> Vec<String> {
        (1..=nvars).map(|k| alloc::format!("x{k}")).collect()
    }
}

/// Descending total degree, then descending lexicographic exponent.
fn display_order(a: &Exponent, b: &Exponent) -> Ordering {
    b.degree().cmp(&a.degree()).then_with(|| b.cmp(a))
}

fn monomial_text(a: &Exponent, names: &[String]) -> String {
    let mut parts = Vec::new();
    for (k, &e) in a.as_slice().iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(names[k].clone()),
            _ => parts.push(alloc::format!("{}^{e}", names[k])),
        }
    }
    parts.join("*")
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with(&Polynomial::default_names(self.nvars)))
    }
}

impl Add<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn add(self, o: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (a, c) in &o.terms {
            out.add_term(a.clone(), c);
        }
        out
    }
}

impl Sub<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn sub(self, o: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (a, c) in &o.terms {
            out.add_term(a.clone(), &-c.clone());
        }
        out
    }
}

impl Mul<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn mul(self, o: &Polynomial) -> Polynomial {
        self.mul_truncated(o, None)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(&-GR::one())
    }
}

impl Add for Polynomial {
    type Output = Polynomial;
    fn add(self, o: Polynomial) -> Polynomial {
        &self + &o
    }
}

impl Sub for Polynomial {
    type Output = Polynomial;
    fn sub(self, o: Polynomial) -> Polynomial {
        &self - &o
    }
}

impl Mul for Polynomial {
    type Output = Polynomial;
    fn mul(self, o: Polynomial) -> Polynomial {
        &self * &o
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

/// A polynomial self-map `(F_1, …, F_d)` of `C^d` fixing the origin.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PolyMap {
    components: Vec<Polynomial>,
}

impl fmt::Debug for PolyMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.components).finish()
    }
}

impl PolyMap {
    pub fn new(components: Vec<Polynomial>) -> Result<Self, PolyError> {
        let d = components.len();
        for (k, c) in components.iter().enumerate() {
            check(d, c.nvars())?;
            if !c.constant_term().is_zero() {
                return Err(PolyError::ConstantTerm { component: k });
            }
        }
        Ok(PolyMap { components })
    }

    pub fn identity(d: usize) -> Self {
        PolyMap { components: (0..d).map(|i| Polynomial::variable(d, i)).collect() }
    }

    /// The linear map `x ↦ M x`.
    pub fn linear(m: &Matrix) -> Self {
        let d = m.rows();
        let components = (0..d)
            .map(|i| {
                let mut p = Polynomial::zero(d);
                for j in 0..d {
                    p.add_term(Exponent::unit(d, j), m.get(i, j));
                }
                p
            })
            .collect();
        PolyMap { components }
    }

    pub fn dim(&self) -> usize {
        self.components.len()
    }

    pub fn components(&self) -> &[Polynomial] {
        &self.components
    }

    pub fn component(&self, i: usize) -> &Polynomial {
        &self.components[i]
    }

    pub fn into_components(self) -> Vec<Polynomial> {
        self.components
    }

    /// Jacobian at the origin.
    pub fn linear_part(&self) -> Matrix {
        let d = self.dim();
        let mut m = Matrix::zeros(d, d);
        for (i, c) in self.components.iter().enumerate() {
            for j in 0..d {
                m.set(i, j, c.coeff(&Exponent::unit(d, j)));
            }
        }
        m
    }

    /// Components with the linear terms removed.
    pub fn nonlinear_part(&self) -> PolyMap {
        PolyMap { components: self.components.iter().map(|c| c.filter(|a| a.degree() >= 2)).collect() }
    }

    pub fn truncate(&self, n: u32) -> PolyMap {
        PolyMap { components: self.components.iter().map(|c| c.truncate(n)).collect() }
    }

    pub fn degree(&self) -> u32 {
        self.components.iter().filter_map(Polynomial::degree).max().unwrap_or(0)
    }
}

impl fmt::Display for PolyMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, c) in self.components.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// `g ∘ F`, optionally truncated at total degree `n`.
pub fn compose(g: &Polynomial, f: &PolyMap, n: Option<u32>) -> Result<Polynomial, PolyError> {
    substitute(g, f.components(), f.dim(), n)
}

/// `g(s_1, …, s_k)` where each `s_i` is a polynomial in `m` variables.
pub fn substitute(g: &Polynomial, s: &[Polynomial], m: usize, n: Option<u32>) -> Result<Polynomial, PolyError> {
    check(g.nvars(), s.len())?;
    for p in s {
        check(m, p.nvars())?;
    }
    let d = s.len();
    // powers[i][k] = s_i^k, truncated
    let mut max_exp = alloc::vec![0u32; d];
    for a in g.support() {
        for (e, &k) in max_exp.iter_mut().zip(a.as_slice()) {
            *e = (*e).max(k);
        }
    }
    let powers: Vec<Vec<Polynomial>> = (0..d)
        .map(|i| {
            let mut v = alloc::vec![Polynomial::one(m)];
            for k in 0..max_exp[i] as usize {
                let next = v[k].mul_truncated(&s[i], n);
                v.push(next);
            }
            v
        })
        .collect();
    let mut out = Polynomial::zero(m);
    // share partial products between monomials with a common prefix
    let mut cache: BTreeMap<Vec<u32>, Polynomial> = BTreeMap::new();
    for (a, c) in g.terms() {
        let mono = monomial_image(a.as_slice(), &powers, n, &mut cache, m);
        for (b, x) in mono.terms() {
            out.add_term(b.clone(), &(c * x));
        }
    }
    Ok(out)
}

fn monomial_image(
    a: &[u32],
    powers: &[Vec<Polynomial>],
    n: Option<u32>,
    cache: &mut BTreeMap<Vec<u32>, Polynomial>,
    d: usize,
) -> Polynomial {
    let Some(last) = a.iter().rposition(|&k| k > 0) else {
        return Polynomial::one(d);
    };
    if let Some(p) = cache.get(a) {
        return p.clone();
    }
    let mut prefix = a.to_vec();
    prefix[last] = 0;
    let head = monomial_image(&prefix, powers, n, cache, d);
    let p = head.mul_truncated(&powers[last][a[last] as usize], n);
    cache.insert(a.to_vec(), p.clone());
    p
}

/// `F ∘ G` truncated at total degree `n`.
pub fn map_compose(f: &PolyMap, g: &PolyMap, n: u32) -> Result<PolyMap, PolyError> {
    check(f.dim(), g.dim())?;
    let components = f.components().iter().map(|c| compose(c, g, Some(n))).collect::<Result<_, _>>()?;
    Ok(PolyMap { components })
}

/// The inverse jet of `F` to total degree `n`.
pub fn map_inverse(f: &PolyMap, n: u32) -> Result<PolyMap, PolyError> {
    let l = f.linear_part();
    let linv = l.inverse().ok_or(PolyError::SingularLinearPart)?;
    let linv_map = PolyMap::linear(&linv);
    let nonlinear = f.nonlinear_part();
    // G = L⁻¹ (x − f(G)); each pass fixes one more degree
    let mut g = linv_map.clone();
    for _ in 1..n {
        let fg = map_compose(&nonlinear, &g, n)?;
        let rhs = PolyMap {
            components: (0..f.dim()).map(|i| &Polynomial::variable(f.dim(), i) - fg.component(i)).collect(),
        };
        g = map_compose(&linv_map, &rhs, n)?;
    }
    Ok(g.truncate(n))
}

/// `φ = Σ φ_γ`, pieces in increasing class order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedDecomposition {
    pub pieces: Vec<(WeightClass, Polynomial)>,
}

impl GradedDecomposition {
    /// The piece in class `γ`, or zero.
    pub fn piece(&self, g: &WeightClass) -> Option<&Polynomial> {
        self.pieces.iter().find(|(c, _)| c == g).map(|(_, p)| p)
    }

    pub fn sum(&self, nvars: usize) -> Polynomial {
        self.pieces.iter().fold(Polynomial::zero(nvars), |acc, (_, p)| &acc + p)
    }
}

/// Groups the terms of `φ` by λ-weight class.
pub fn lambda_decompose(phi: &Polynomial, spectrum: &OrderedSpectrum) -> Result<GradedDecomposition, PolyError> {
    check(spectrum.dim(), phi.nvars())?;
    let mut by_value: BTreeMap<GR, Polynomial> = BTreeMap::new();
    for (a, c) in phi.terms() {
        by_value
            .entry(spectrum.value(a))
            .or_insert_with(|| Polynomial::zero(phi.nvars()))
            .add_term(a.clone(), c);
    }
    let mut pieces: Vec<(WeightClass, Polynomial)> = by_value
        .into_iter()
        .map(|(v, p)| (spectrum.class_of_value(&v).expect("value of an exponent"), p))
        .collect();
    pieces.sort_by(|(g, _), (h, _)| spectrum.lambda_compare(g.representative(), h.representative()));
    Ok(GradedDecomposition { pieces })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LambdaDegree {
    Class(WeightClass),
    Mixed,
}

pub fn lambda_degree(p: &Polynomial, spectrum: &OrderedSpectrum) -> Result<LambdaDegree, PolyError> {
    if p.is_zero() {
        return Err(PolyError::ZeroPolynomial);
    }
    let mut pieces = lambda_decompose(p, spectrum)?.pieces;
    Ok(if pieces.len() == 1 { LambdaDegree::Class(pieces.remove(0).0) } else { LambdaDegree::Mixed })
}

/// The common weighted degree `n·α` over the support, if there is one.
/// The zero polynomial has none.
pub fn is_weighted_homogeneous(p: &Polynomial, weights: &[u64]) -> Option<u64> {
    let mut degs = p.support().map(|a| a.as_slice().iter().zip(weights).map(|(&k, &w)| k as u64 * w).sum::<u64>());
    let first = degs.next()?;
    degs.all(|x| x == first).then_some(first)
}

/// Monomial basis of `H_γ` in increasing λ-order.
pub fn h_space_basis(spectrum: &OrderedSpectrum, g: &WeightClass) -> Vec<Polynomial> {
    let mut members = g.members().to_vec();
    members.sort_by(|a, b| spectrum.lambda_compare(a, b));
    members.into_iter().map(|a| Polynomial::monomial(a, GR::one())).collect()
}

/// Matrix of `φ ↦ φ ∘ F` on `H_γ` in the basis of [`h_space_basis`]:
/// column `j` holds the coordinates of `basis_j ∘ F`. Terms leaving `H_γ` are
/// ignored.
pub fn composition_matrix(spectrum: &OrderedSpectrum, g: &WeightClass, f: &PolyMap) -> Result<Matrix, PolyError> {
    let basis = h_space_basis(spectrum, g);
    let members: Vec<Exponent> = basis.iter().map(|b| b.support().next().expect("monomial").clone()).collect();
    let max_deg = members.iter().map(Exponent::degree).max().unwrap_or(0);
    let n = members.len();
    let mut m = Matrix::zeros(n, n);
    for (j, b) in basis.iter().enumerate() {
        let img = compose(b, f, Some(max_deg))?;
        for (i, a) in members.iter().enumerate() {
            m.set(i, j, img.coeff(a));
        }
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectrum::OrderedSpectrum;

    fn gr(s: &str) -> GR {
        s.parse().unwrap()
    }

    fn e(v: &[u32]) -> Exponent {
        Exponent::new(v.to_vec())
    }

    fn poly(d: usize, terms: &[(&[u32], &str)]) -> Polynomial {
        Polynomial::from_terms(d, terms.iter().map(|(a, c)| (e(a), gr(c)))).unwrap()
    }

    fn diag_map(xs: &[&str]) -> PolyMap {
        let d = xs.len();
        PolyMap::new(xs.iter().enumerate().map(|(i, c)| poly(d, &[(&Exponent::unit(d, i).0, c)])).collect()).unwrap()
    }

    fn spectrum_of(xs: &[&str]) -> OrderedSpectrum {
        OrderedSpectrum::diagonal(xs.iter().map(|s| gr(s)).collect()).unwrap()
    }

    #[test]
    fn compose_examples() {
        let f = diag_map(&["1/2", "1/4"]);
        let phi = poly(2, &[(&[2, 0], "1"), (&[0, 1], "-1")]);
        assert_eq!(compose(&phi, &f, None).unwrap(), phi.scale(&gr("1/4")));
        // x(x²−y) + x⁵ maps to (1/32)ψ + (3/32)·xφ
        let psi = poly(2, &[(&[3, 0], "1"), (&[1, 1], "-1"), (&[5, 0], "1")]);
        let x_phi = poly(2, &[(&[3, 0], "1"), (&[1, 1], "-1")]);
        let expected = &psi.scale(&gr("1/32")) + &x_phi.scale(&gr("3/32"));
        assert_eq!(compose(&psi, &f, None).unwrap(), expected);
        assert_eq!(compose(&psi, &PolyMap::identity(2), None).unwrap(), psi);
    }

    #[test]
    fn truncated_compose_matches_full() {
        let f = PolyMap::new(alloc::vec![
            poly(2, &[(&[1, 0], "1/2"), (&[1, 1], "3")]),
            poly(2, &[(&[0, 1], "1/4"), (&[2, 0], "1+i")]),
        ])
        .unwrap();
        let g = poly(2, &[(&[3, 0], "1"), (&[1, 2], "-2/3"), (&[0, 1], "i")]);
        let full = compose(&g, &f, None).unwrap();
        for n in 0..9 {
            assert_eq!(compose(&g, &f, Some(n)).unwrap(), full.truncate(n));
        }
    }

    #[test]
    fn map_compose_examples() {
        let f = PolyMap::new(alloc::vec![
            poly(2, &[(&[1, 0], "1/2")]),
            poly(2, &[(&[0, 1], "1/4"), (&[2, 0], "1")]),
        ])
        .unwrap();
        let ff = map_compose(&f, &f, 4).unwrap();
        assert_eq!(ff.component(0), &poly(2, &[(&[1, 0], "1/4")]));
        assert_eq!(ff.component(1), &poly(2, &[(&[0, 1], "1/16"), (&[2, 0], "1/2")]));
        assert_eq!(map_compose(&f, &PolyMap::identity(2), 1).unwrap(), f.truncate(1));
    }

    #[test]
    fn inverse_round_trip() {
        let f = PolyMap::new(alloc::vec![
            poly(2, &[(&[1, 0], "1/2"), (&[0, 1], "1"), (&[1, 1], "3")]),
            poly(2, &[(&[0, 1], "1/4"), (&[2, 0], "1+i"), (&[0, 3], "-1")]),
        ])
        .unwrap();
        let g = map_inverse(&f, 6).unwrap();
        assert_eq!(map_compose(&f, &g, 6).unwrap(), PolyMap::identity(2));
        assert_eq!(map_compose(&g, &f, 6).unwrap(), PolyMap::identity(2));
    }

    #[test]
    fn decompose_examples() {
        let s = spectrum_of(&["1/2", "1/4"]);
        let phi = poly(2, &[(&[2, 0], "1"), (&[0, 1], "-1"), (&[5, 0], "1")]);
        let dec = lambda_decompose(&phi, &s).unwrap();
        assert_eq!(dec.pieces.len(), 2);
        assert_eq!(dec.pieces[0].0.representative(), &e(&[0, 1]));
        assert_eq!(dec.pieces[0].1, poly(2, &[(&[2, 0], "1"), (&[0, 1], "-1")]));
        assert_eq!(dec.pieces[1].1, poly(2, &[(&[5, 0], "1")]));
        assert_eq!(dec.sum(2), phi);
        assert!(lambda_decompose(&Polynomial::zero(2), &s).unwrap().pieces.is_empty());
    }

    #[test]
    fn lambda_degree_examples() {
        let s = spectrum_of(&["1/2", "1/4"]);
        let phi = poly(2, &[(&[2, 0], "1"), (&[0, 1], "-1")]);
        assert_eq!(lambda_degree(&phi, &s).unwrap(), LambdaDegree::Class(s.weight_class(&e(&[2, 0])).unwrap()));
        let mixed = poly(2, &[(&[1, 0], "1"), (&[0, 1], "1")]);
        assert_eq!(lambda_degree(&mixed, &s).unwrap(), LambdaDegree::Mixed);
        assert_eq!(lambda_degree(&Polynomial::zero(2), &s), Err(PolyError::ZeroPolynomial));
    }

    #[test]
    fn weighted_homogeneity() {
        let phi = poly(2, &[(&[2, 0], "1"), (&[0, 1], "-1")]);
        assert_eq!(is_weighted_homogeneous(&phi, &[1, 2]), Some(2));
        assert_eq!(is_weighted_homogeneous(&poly(2, &[(&[5, 0], "1")]), &[1, 2]), Some(5));
        assert_eq!(is_weighted_homogeneous(&poly(2, &[(&[1, 0], "1"), (&[0, 1], "1")]), &[1, 2]), None);
        // substitution oracle: P(t x, t² y) = t² P(x, y)
        let t = gr("3/5");
        let (x, y) = (gr("2/7+i"), gr("-5"));
        let lhs = phi.eval(&[&t * &x, &(&t * &t) * &y]);
        assert_eq!(lhs, &(&t * &t) * &phi.eval(&[x, y]));
    }

    #[test]
    fn h_space_examples() {
        let s = spectrum_of(&["1/2", "1/4"]);
        let b = h_space_basis(&s, &s.weight_class(&e(&[2, 0])).unwrap());
        assert_eq!(b, alloc::vec![poly(2, &[(&[0, 1], "1")]), poly(2, &[(&[2, 0], "1")])]);
        assert_eq!(h_space_basis(&s, &s.weight_class(&e(&[1, 0])).unwrap()), alloc::vec![poly(2, &[(&[1, 0], "1")])]);
        assert_eq!(h_space_basis(&s, &s.weight_class(&e(&[0, 0])).unwrap()), alloc::vec![Polynomial::one(2)]);
        let l = spectrum_of(&["-1/2", "1/2*i", "1/2*i"]);
        let b = h_space_basis(&l, &l.weight_class(&e(&[0, 1, 0])).unwrap());
        assert_eq!(b, alloc::vec![poly(3, &[(&[0, 0, 1], "1")]), poly(3, &[(&[0, 1, 0], "1")])]);
    }

    #[test]
    fn display_form() {
        let phi = poly(2, &[(&[2, 0], "1"), (&[0, 1], "-1")]);
        assert_eq!(phi.to_string(), "x1^2 - x2");
        let q = poly(2, &[(&[1, 0], "1/2+i"), (&[0, 0], "-3"), (&[1, 1], "-1/2*i")]);
        assert_eq!(q.to_string(), "-1/2*i*x1*x2 + (1/2+1*i)*x1 - 3");
        assert_eq!(Polynomial::zero(1).to_string(), "0");
        let names = ["x".to_string(), "y".to_string()];
        assert_eq!(phi.display_with(&names), "x^2 - y");
    }
}
