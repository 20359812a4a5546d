//! Lower Jordan forms and Poincaré–Dulac normalization of contracting jets.
//!
//! The resonant coefficients left in a normal form are not unique across
//! conjugacies; [`poincare_dulac`] returns whatever the degree-by-degree
//! elimination produces, which is deterministic for a given input.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;

use crate::exactnum::GaussianRational;
use crate::linalg::{gaussian_rational_roots, group_eigenvalues, is_lower_jordan, lower_jordan, Matrix, PivotOrder, SparseSystem};
use crate::polyring::{compose, map_compose, substitute, PolyError, PolyMap, Polynomial};
use crate::spectrum::{nice_order_cmp, Exponent, OrderedSpectrum, SpectrumError};

type GR = GaussianRational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NormalFormError {
    /// The linear part has a zero eigenvalue.
    SingularLinearPart,
    /// The characteristic polynomial has a factor of this degree without
    /// Gaussian-rational roots.
    IrrationalSpectrum { residual_degree: usize },
    NotContracting { index: usize },
    /// The truncation degree is below the resonance bound.
    DegreeTooLow { required: usize, given: usize },
    DimensionMismatch { expected: usize, found: usize },
    /// A homological system turned out singular, contradicting non-resonance.
    SingularHomologicalSystem { degree: u32 },
}

impl fmt::Display for NormalFormError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NormalFormError::SingularLinearPart => write!(f, "linear part is singular"),
            NormalFormError::IrrationalSpectrum { residual_degree } => write!(
                f,
                "spectrum is not Gaussian-rational: a factor of degree {residual_degree} has no Gaussian-rational root"
            ),
            NormalFormError::NotContracting { index } => {
                write!(f, "eigenvalue {} has modulus >= 1: not contracting", index + 1)
            }
            NormalFormError::DegreeTooLow { required, given } => {
                write!(f, "truncation degree {given} is below the resonance bound {required}")
            }
            NormalFormError::DimensionMismatch { expected, found } => {
                write!(f, "dimension mismatch: expected {expected}, found {found}")
            }
            NormalFormError::SingularHomologicalSystem { degree } => {
                write!(f, "homological system in degree {degree} is singular")
            }
        }
    }
}

impl core::error::Error for NormalFormError {}

impl From<SpectrumError> for NormalFormError {
    fn from(e: SpectrumError) -> Self {
        match e {
            SpectrumError::NotContracting { index } => NormalFormError::NotContracting { index },
            SpectrumError::SingularLinearPart { .. } => NormalFormError::SingularLinearPart,
            SpectrumError::DimensionMismatch { expected, found } => {
                NormalFormError::DimensionMismatch { expected, found }
            }
            // a lower Jordan form built here is always nicely ordered
            other => unreachable!("unexpected spectrum error: {other}"),
        }
    }
}

impl From<PolyError> for NormalFormError {
    fn from(e: PolyError) -> Self {
        match e {
            PolyError::DimensionMismatch { expected, found } => NormalFormError::DimensionMismatch { expected, found },
            PolyError::SingularLinearPart => NormalFormError::SingularLinearPart,
            other => unreachable!("unexpected polynomial error: {other}"),
        }
    }
}

/// Lower Jordan form `J = S⁻¹ M S` with nicely ordered diagonal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JordanForm {
    pub j: Matrix,
    pub s: Matrix,
}

impl JordanForm {
    /// `flags[k]` is true when `J[k+1][k] = 1`.
    pub fn jordan_flags(&self) -> Vec<bool> {
        (1..self.j.rows()).map(|k| self.j.get(k, k - 1).is_one()).collect()
    }
}

fn is_nicely_ordered(diag: &[GR]) -> bool {
    diag.windows(2).all(|w| w[0].modulus_squared() >= w[1].modulus_squared())
}

/// Exact lower Jordan form over `Q(i)`.
///
/// A matrix that is already lower Jordan with nicely ordered diagonal is
/// returned unchanged with `S = I`.
pub fn jordan_lower(m: &Matrix) -> Result<JordanForm, NormalFormError> {
    let n = m.rows();
    if !m.is_square() {
        return Err(NormalFormError::DimensionMismatch { expected: m.rows(), found: m.cols() });
    }
    if m.det().is_zero() {
        return Err(NormalFormError::SingularLinearPart);
    }
    if is_lower_jordan(m) && is_nicely_ordered(&m.diagonal()) {
        return Ok(JordanForm { j: m.clone(), s: Matrix::identity(n) });
    }
    let (roots, residual) = gaussian_rational_roots(&m.char_poly(), &m.diagonal());
    if residual.len() > 1 {
        return Err(NormalFormError::IrrationalSpectrum { residual_degree: residual.len() - 1 });
    }
    let mut groups = group_eigenvalues(&roots);
    groups.sort_by(|(a, _), (b, _)| nice_order_cmp(a, b));
    let jd = lower_jordan(m, &groups).expect("eigenvalues are complete");
    Ok(JordanForm { j: jd.j, s: jd.s })
}

/// The spectrum read off a lower Jordan linear part.
pub fn spectrum_of_jordan(j: &Matrix) -> Result<OrderedSpectrum, NormalFormError> {
    let flags = (1..j.rows()).map(|k| j.get(k, k - 1).is_one()).collect();
    Ok(OrderedSpectrum::new(j.diagonal(), flags)?)
}

/// Linear part lower Jordan with diagonal `λ`, and only resonant nonlinear
/// terms.
pub fn is_normal_form(f: &PolyMap, spectrum: &OrderedSpectrum) -> bool {
    let d = spectrum.dim();
    if f.dim() != d {
        return false;
    }
    let l = f.linear_part();
    if !is_lower_jordan(&l) || l.diagonal() != spectrum.entries() {
        return false;
    }
    (0..d).all(|i| {
        let support = spectrum.normal_form_support(i);
        f.component(i).support().filter(|a| a.degree() >= 2).all(|a| support.contains(a))
    })
}

/// `H ∘ F = F̃ ∘ H` modulo terms of degree `> truncation_degree`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalFormCertificate {
    pub original: PolyMap,
    pub normalized: PolyMap,
    pub conjugacy: PolyMap,
    pub truncation_degree: u32,
}

impl NormalFormCertificate {
    /// The spectrum of the normalized map.
    pub fn spectrum(&self) -> Result<OrderedSpectrum, NormalFormError> {
        spectrum_of_jordan(&self.normalized.linear_part())
    }
}

/// Re-checks the conjugacy equation exactly.
pub fn verify_conjugacy(cert: &NormalFormCertificate) -> bool {
    let n = cert.truncation_degree;
    let d = cert.original.dim();
    if cert.normalized.dim() != d || cert.conjugacy.dim() != d {
        return false;
    }
    if cert.conjugacy.linear_part().det().is_zero() {
        return false;
    }
    match (map_compose(&cert.conjugacy, &cert.original, n), map_compose(&cert.normalized, &cert.conjugacy, n)) {
        (Ok(a), Ok(b)) => a == b,
        _ => false,
    }
}

/// All exponents of total degree `k` in `d` variables, lexicographically.
pub fn exponents_of_degree(d: usize, k: u32) -> Vec<Exponent> {
    fn rec(d: usize, k: u32, cur: &mut Vec<u32>, out: &mut Vec<Exponent>) {
        if cur.len() + 1 == d {
            cur.push(k);
            out.push(Exponent::new(cur.clone()));
            cur.pop();
            return;
        }
        for a in 0..=k {
            cur.push(a);
            rec(d, k - a, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if d == 0 {
        return out;
    }
    rec(d, k, &mut Vec::with_capacity(d), &mut out);
    out
}

/// Conjugates `F` to Poincaré–Dulac normal form modulo degree `n + 1`.
pub fn poincare_dulac(f: &PolyMap, n: u32) -> Result<NormalFormCertificate, NormalFormError> {
    let jf = jordan_lower(&f.linear_part())?;
    let spectrum = spectrum_of_jordan(&jf.j)?;
    let required = spectrum.resonance_bound();
    if (n as usize) < required {
        return Err(NormalFormError::DegreeTooLow { required, given: n as usize });
    }
    let d = f.dim();
    let s_map = PolyMap::linear(&jf.s);
    let s_inv = PolyMap::linear(&jf.s.inverse().expect("invertible"));
    // F' = S⁻¹∘F∘S has linear part J; find H, G with H∘F' = G∘H degree by degree
    let fp = map_compose(&s_inv, &map_compose(f, &s_map, n)?, n)?;
    let j_map = PolyMap::linear(&jf.j);
    let mut h: Vec<Polynomial> = (0..d).map(|i| Polynomial::variable(d, i)).collect();
    let mut g: Vec<Polynomial> = j_map.components().to_vec();
    for k in 2..=n {
        // E_k = [H∘F']_k − [G∘H]_k; then h_k∘J − J∘h_k = g_k − E_k
        let mut e = Vec::with_capacity(d);
        for i in 0..d {
            let hf = substitute(&h[i], fp.components(), d, Some(k))?.homogeneous_part(k);
            let gh = substitute(&g[i], &h, d, Some(k))?.homogeneous_part(k);
            e.push(&hf - &gh);
        }
        let e = PolyMap::new(e)?;
        let hk: Vec<Polynomial> = match homological_step(&e, &spectrum, &j_map, k)? {
            Some(comps) => comps.into_iter().enumerate().map(|(i, c)| &c - &Polynomial::variable(d, i)).collect(),
            None => (0..d).map(|_| Polynomial::zero(d)).collect(),
        };
        for i in 0..d {
            let mut gk = &e.component(i).clone() + &compose(&hk[i], &j_map, None)?;
            for (j, c) in jf.j.row(i).iter().enumerate() {
                if !c.is_zero() {
                    gk = &gk - &hk[j].scale(c);
                }
            }
            h[i] = &h[i] + &hk[i];
            g[i] = &g[i] + &gk;
        }
    }
    let g = PolyMap::new(g)?;
    let h = map_compose(&PolyMap::new(h)?, &s_inv, n)?;
    let cert = NormalFormCertificate { original: f.clone(), normalized: g, conjugacy: h, truncation_degree: n };
    debug_assert!(is_normal_form(&cert.normalized, &spectrum));
    Ok(cert)
}

/// Solves `h(Jx) − J h(x) = −f_k` on the non-resonant degree-`k` terms and
/// returns `x + h`, or `None` when nothing needs removing.
fn homological_step(
    g: &PolyMap,
    spectrum: &OrderedSpectrum,
    j_map: &PolyMap,
    k: u32,
) -> Result<Option<Vec<Polynomial>>, NormalFormError> {
    let d = spectrum.dim();
    let exps = exponents_of_degree(d, k);
    let mut index: BTreeMap<(usize, Exponent), usize> = BTreeMap::new();
    let mut unknowns: Vec<(usize, Exponent)> = Vec::new();
    for i in 0..d {
        for a in &exps {
            if spectrum.value(a) != spectrum.entries()[i] {
                index.insert((i, a.clone()), unknowns.len());
                unknowns.push((i, a.clone()));
            }
        }
    }
    let rhs: Vec<GR> = unknowns.iter().map(|(i, a)| -g.component(*i).coeff(a)).collect();
    if rhs.iter().all(GR::is_zero) {
        return Ok(None);
    }
    // rows[r] collects the operator entries of equation r
    let mut rows: Vec<BTreeMap<usize, GR>> = alloc::vec![BTreeMap::new(); unknowns.len()];
    let flags = spectrum.jordan_flags();
    for (c, (i, a)) in unknowns.iter().enumerate() {
        let mono = Polynomial::monomial(a.clone(), GR::one());
        let mut image = compose(&mono, j_map, None)?;
        image.add_term(a.clone(), &-spectrum.entries()[*i].clone());
        for (b, v) in image.terms() {
            if let Some(&r) = index.get(&(*i, b.clone())) {
                rows[r].insert(c, v.clone());
            }
        }
        if *i + 1 < d && flags[*i] {
            if let Some(&r) = index.get(&(*i + 1, a.clone())) {
                let e = rows[r].entry(c).or_insert_with(GR::zero);
                *e -= &GR::one();
            }
        }
    }
    let mut sys = SparseSystem::new(unknowns.len(), PivotOrder::LowestColumn);
    for (row, b) in rows.into_iter().zip(rhs) {
        sys.push(row, b).map_err(|_| NormalFormError::SingularHomologicalSystem { degree: k })?;
    }
    if sys.rank() != unknowns.len() {
        return Err(NormalFormError::SingularHomologicalSystem { degree: k });
    }
    let sol = sys.solve();
    let mut comps: Vec<Polynomial> = (0..d).map(|i| Polynomial::variable(d, i)).collect();
    for ((i, a), v) in unknowns.into_iter().zip(sol) {
        comps[i].add_term(a, &v);
    }
    Ok(Some(comps))
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn gr(s: &str) -> GR {
        s.parse().unwrap()
    }

    fn e(v: &[u32]) -> Exponent {
        Exponent::new(v.to_vec())
    }

    fn m(rows: &[&[&str]]) -> Matrix {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|s| gr(s)).collect()).collect())
    }

    fn poly(d: usize, terms: &[(&[u32], &str)]) -> Polynomial {
        Polynomial::from_terms(d, terms.iter().map(|(a, c)| (e(a), gr(c)))).unwrap()
    }

    fn map2(f1: &[(&[u32], &str)], f2: &[(&[u32], &str)]) -> PolyMap {
        PolyMap::new(vec![poly(2, f1), poly(2, f2)]).unwrap()
    }

    #[test]
    fn jordan_lower_examples() {
        let jf = jordan_lower(&m(&[&["1/4", "0"], &["0", "1/2"]])).unwrap();
        assert_eq!(jf.j, m(&[&["1/2", "0"], &["0", "1/4"]]));
        assert_eq!(jf.s, m(&[&["0", "1"], &["1", "0"]]));

        let a = m(&[&["1/2", "0"], &["1", "1/2"]]);
        let jf = jordan_lower(&a).unwrap();
        assert_eq!(jf.j, a);
        assert_eq!(jf.s, Matrix::identity(2));

        let b = m(&[&["1/2", "1"], &["0", "1/3"]]);
        let jf = jordan_lower(&b).unwrap();
        assert_eq!(jf.j, m(&[&["1/2", "0"], &["0", "1/3"]]));
        assert_eq!(jf.s.inverse().unwrap().mul(&b).mul(&jf.s), jf.j);
    }

    #[test]
    fn jordan_lower_failures() {
        // x² − 1/2 has no Gaussian-rational root
        let r = m(&[&["0", "1"], &["1/2", "0"]]);
        assert_eq!(jordan_lower(&r), Err(NormalFormError::IrrationalSpectrum { residual_degree: 2 }));
        assert_eq!(jordan_lower(&m(&[&["1", "2"], &["2", "4"]])), Err(NormalFormError::SingularLinearPart));
    }

    #[test]
    fn normal_form_recognition() {
        let s = OrderedSpectrum::diagonal(vec![gr("1/2"), gr("1/4")]).unwrap();
        assert!(is_normal_form(&map2(&[(&[1, 0], "1/2")], &[(&[0, 1], "1/4"), (&[2, 0], "1")]), &s));
        assert!(!is_normal_form(&map2(&[(&[1, 0], "1/2")], &[(&[0, 1], "1/4"), (&[3, 0], "1")]), &s));
        assert!(!is_normal_form(&map2(&[(&[1, 0], "1/2"), (&[0, 1], "1")], &[(&[0, 1], "1/4")]), &s));
    }

    #[test]
    fn removes_cubic_term() {
        let f = map2(&[(&[1, 0], "1/2")], &[(&[0, 1], "1/4"), (&[3, 0], "1")]);
        let cert = poincare_dulac(&f, 3).unwrap();
        assert_eq!(cert.normalized, map2(&[(&[1, 0], "1/2")], &[(&[0, 1], "1/4")]));
        assert_eq!(cert.conjugacy, map2(&[(&[1, 0], "1")], &[(&[0, 1], "1"), (&[3, 0], "8")]));
        assert!(verify_conjugacy(&cert));
    }

    #[test]
    fn resonant_map_is_fixed() {
        let f = map2(&[(&[1, 0], "1/2")], &[(&[0, 1], "1/4"), (&[2, 0], "1")]);
        let cert = poincare_dulac(&f, 2).unwrap();
        assert_eq!(cert.normalized, f);
        assert_eq!(cert.conjugacy, PolyMap::identity(2));
        let lin = PolyMap::linear(&m(&[&["1/2", "0"], &["1", "1/2"]]));
        let cert = poincare_dulac(&lin, 3).unwrap();
        assert_eq!(cert.normalized, lin);
        assert_eq!(cert.conjugacy, PolyMap::identity(2));
    }

    #[test]
    fn corrupted_certificate_fails() {
        let f = map2(&[(&[1, 0], "1/2")], &[(&[0, 1], "1/4"), (&[3, 0], "1")]);
        let mut cert = poincare_dulac(&f, 3).unwrap();
        cert.conjugacy = map2(&[(&[1, 0], "1")], &[(&[0, 1], "1"), (&[3, 0], "7")]);
        assert!(!verify_conjugacy(&cert));
    }

    #[test]
    fn too_low_degree() {
        let f = map2(&[(&[1, 0], "1/2")], &[(&[0, 1], "1/4")]);
        assert_eq!(poincare_dulac(&f, 1), Err(NormalFormError::DegreeTooLow { required: 2, given: 1 }));
    }

    #[test]
    fn non_contracting_rejected() {
        let f = map2(&[(&[1, 0], "2")], &[(&[0, 1], "1/4")]);
        assert_eq!(poincare_dulac(&f, 3), Err(NormalFormError::NotContracting { index: 0 }));
    }

    #[test]
    fn non_triangular_input_with_jordan_block() {
        // conjugate of a Jordan block with a non-resonant quadratic term
        let f = map2(&[(&[1, 0], "1/2"), (&[0, 1], "1"), (&[0, 2], "1")], &[(&[0, 1], "1/2"), (&[1, 1], "-3")]);
        let cert = poincare_dulac(&f, 4).unwrap();
        assert!(verify_conjugacy(&cert));
        let s = cert.spectrum().unwrap();
        assert!(is_normal_form(&cert.normalized, &s));
        // idempotence
        let again = poincare_dulac(&cert.normalized, 4).unwrap();
        assert_eq!(again.normalized, cert.normalized);
        assert_eq!(again.conjugacy, PolyMap::identity(2));
    }

    #[test]
    fn degree_enumeration() {
        assert_eq!(exponents_of_degree(2, 2), vec![e(&[0, 2]), e(&[1, 1]), e(&[2, 0])]);
        assert_eq!(exponents_of_degree(3, 3).len(), 10);
    }
}
