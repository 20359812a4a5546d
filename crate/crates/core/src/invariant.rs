//! Ideals invariant under a contracting map in normal form: minimal
//! generators, cofactor matrices, extraction of λ-homogeneous generators and
//! the certificates that the extracted ideal equals the input one.
//!
//! Membership in the input ideal is only ever decided up to a bound (a
//! λ-class or a total degree); membership in the extracted ideal, which is
//! λ-graded, is exact.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use num_traits::One;

use crate::exactnum::{GaussianRational, Rational};
use crate::linalg::{gaussian_rational_roots, group_eigenvalues, is_lower_jordan, lower_jordan, Matrix, PivotOrder, SparseSystem};
use crate::normalform::{is_normal_form, jordan_lower, poincare_dulac, spectrum_of_jordan, NormalFormCertificate, NormalFormError};
use crate::polyring::{compose, map_inverse, is_weighted_homogeneous, lambda_decompose, lambda_degree, LambdaDegree, PolyError, PolyMap, Polynomial};
use crate::spectrum::{Exponent, OrderedSpectrum, SpectrumError, WeightClass};

type GR = GaussianRational;

/// Square matrix of polynomials, indexed `[row][column]`.
pub type PolyMatrix = Vec<Vec<Polynomial>>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum InvariantError {
    DimensionMismatch { expected: usize, found: usize },
    EmptyIdeal,
    ZeroGenerator { index: usize },
    /// A generator that does not vanish at the origin.
    UnitGenerator { index: usize },
    NonHomogeneousGenerator { index: usize },
    /// `f` has a λ-graded piece outside the target ideal.
    NotMember { class: WeightClass },
    /// `φ_generator ∘ F` is not in the ideal; `class` is the first failing piece.
    NotInvariant { generator: usize, class: WeightClass },
    /// The cofactor system does not pin down `A₀` at the chosen bound.
    ConstantPartUndetermined { generator: usize },
    EigenvalueNotInSpectrumImage { eigenvalue: Option<GR>, residual_degree: usize },
    NotInImage { index: usize },
    ZeroExtractedGenerator { index: usize },
    /// The class of an extracted generator reaches past the truncation degree.
    TruncationTooLow { index: usize, degree: u32 },
    Mismatch { index: usize, detail: MismatchKind },
    FiltrationFailed { index: usize },
    NormalForm(NormalFormError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MismatchKind {
    NotInExtractedIdeal(WeightClass),
    ConstantPartNotUnitTriangular,
    WitnessResidual,
}

impl fmt::Display for InvariantError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InvariantError::DimensionMismatch { expected, found } => {
                write!(f, "dimension mismatch: expected {expected}, found {found}")
            }
            InvariantError::EmptyIdeal => write!(f, "the ideal has no nonzero generator"),
            InvariantError::ZeroGenerator { index } => write!(f, "generator {} is zero", index + 1),
            InvariantError::UnitGenerator { index } => {
                write!(f, "generator {} does not vanish at the origin", index + 1)
            }
            InvariantError::NonHomogeneousGenerator { index } => {
                write!(f, "generator {} is not λ-homogeneous", index + 1)
            }
            InvariantError::NotMember { class } => write!(f, "piece of class {class:?} is not in the ideal"),
            InvariantError::NotInvariant { generator, class } => write!(
                f,
                "ideal is not invariant: generator {} composed with the map fails in class {class:?}",
                generator + 1
            ),
            InvariantError::ConstantPartUndetermined { generator } => write!(
                f,
                "constant cofactors of generator {} are not determined at this bound",
                generator + 1
            ),
            InvariantError::EigenvalueNotInSpectrumImage { eigenvalue: Some(z), .. } => {
                write!(f, "eigenvalue {z} of A0 is not of the form λ^γ")
            }
            InvariantError::EigenvalueNotInSpectrumImage { eigenvalue: None, residual_degree } => write!(
                f,
                "A0 has a characteristic factor of degree {residual_degree} without Gaussian-rational roots"
            ),
            InvariantError::NotInImage { index } => {
                write!(f, "diagonal entry {} of A0 is not of the form λ^γ", index + 1)
            }
            InvariantError::ZeroExtractedGenerator { index } => {
                write!(f, "extracted generator {} is zero", index + 1)
            }
            InvariantError::TruncationTooLow { index, degree } => write!(
                f,
                "class of extracted generator {} has monomials above degree {degree}",
                index + 1
            ),
            InvariantError::Mismatch { index, detail } => write!(f, "equality check failed at generator {}: {detail:?}", index + 1),
            InvariantError::FiltrationFailed { index } => {
                write!(f, "P{} composed with the map is not in the ideal of P1..P{}", index + 1, index + 1)
            }
            InvariantError::NormalForm(e) => write!(f, "{e}"),
        }
    }
}

impl core::error::Error for InvariantError {}

impl From<NormalFormError> for InvariantError {
    fn from(e: NormalFormError) -> Self {
        InvariantError::NormalForm(e)
    }
}

impl From<PolyError> for InvariantError {
    fn from(e: PolyError) -> Self {
        match e {
            PolyError::DimensionMismatch { expected, found } => InvariantError::DimensionMismatch { expected, found },
            other => InvariantError::NormalForm(other.into()),
        }
    }
}

/// Generators of an ideal of `O_{C^d,0}`: polynomials vanishing at the origin.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealPresentation {
    nvars: usize,
    generators: Vec<Polynomial>,
}

impl IdealPresentation {
    pub fn new(nvars: usize, generators: Vec<Polynomial>) -> Result<Self, InvariantError> {
        for (k, g) in generators.iter().enumerate() {
            if g.nvars() != nvars {
                return Err(InvariantError::DimensionMismatch { expected: nvars, found: g.nvars() });
            }
            if g.is_zero() {
                return Err(InvariantError::ZeroGenerator { index: k });
            }
            if !g.constant_term().is_zero() {
                return Err(InvariantError::UnitGenerator { index: k });
            }
        }
        Ok(IdealPresentation { nvars, generators })
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn max_degree(&self) -> u32 {
        self.generators.iter().filter_map(Polynomial::degree).max().unwrap_or(0)
    }
}

fn poly_matrix_zero(rows: usize, cols: usize, d: usize) -> PolyMatrix {
    alloc::vec![alloc::vec![Polynomial::zero(d); cols]; rows]
}

/// `Σ_j m[i][j]·v[j]` for each row `i`, optionally truncated.
pub fn apply_poly_matrix(m: &PolyMatrix, v: &[Polynomial], n: Option<u32>, d: usize) -> Vec<Polynomial> {
    m.iter()
        .map(|row| row.iter().zip(v).fold(Polynomial::zero(d), |acc, (a, b)| &acc + &a.mul_truncated(b, n)))
        .collect()
}

fn poly_matrix_mul(a: &PolyMatrix, b: &PolyMatrix, n: u32, d: usize) -> PolyMatrix {
    let r = a.len();
    let c = b.first().map_or(0, Vec::len);
    let mut out = poly_matrix_zero(r, c, d);
    for i in 0..r {
        for j in 0..c {
            let mut acc = Polynomial::zero(d);
            for k in 0..b.len() {
                acc = &acc + &a[i][k].mul_truncated(&b[k][j], Some(n));
            }
            out[i][j] = acc;
        }
    }
    out
}

fn constant_matrix(m: &PolyMatrix) -> Matrix {
    Matrix::from_rows(m.iter().map(|row| row.iter().map(Polynomial::constant_term).collect()).collect())
}

fn from_constant_matrix(m: &Matrix, d: usize) -> PolyMatrix {
    (0..m.rows())
        .map(|i| (0..m.cols()).map(|j| Polynomial::constant(d, m.get(i, j).clone())).collect())
        .collect()
}

/// Every class member has total degree at most `n`.
fn class_within_degree(g: &WeightClass, n: Option<u32>) -> bool {
    n.is_none_or(|n| g.members().iter().all(|a| a.degree() <= n))
}

/// Cofactors `c` with `f = Σ c_j·gens_j`, found class by class.
///
/// Exact for λ-homogeneous generators. With `valid_degree = Some(n)`, only
/// pieces of `f` in classes whose members all have degree `≤ n` are matched.
pub fn graded_membership(
    f: &Polynomial,
    gens: &[Polynomial],
    spectrum: &OrderedSpectrum,
    valid_degree: Option<u32>,
) -> Result<Vec<Polynomial>, InvariantError> {
    let d = spectrum.dim();
    if f.nvars() != d {
        return Err(InvariantError::DimensionMismatch { expected: d, found: f.nvars() });
    }
    let mut values = Vec::with_capacity(gens.len());
    for (k, g) in gens.iter().enumerate() {
        if g.is_zero() {
            return Err(InvariantError::ZeroGenerator { index: k });
        }
        match lambda_degree(g, spectrum)? {
            LambdaDegree::Class(c) => values.push(c.value().clone()),
            LambdaDegree::Mixed => return Err(InvariantError::NonHomogeneousGenerator { index: k }),
        }
    }
    let mut cofactors = alloc::vec![Polynomial::zero(d); gens.len()];
    for (class, piece) in lambda_decompose(f, spectrum)?.pieces {
        if !class_within_degree(&class, valid_degree) {
            continue;
        }
        let mut columns: Vec<(usize, Exponent)> = Vec::new();
        for (j, v) in values.iter().enumerate() {
            let quotient = class.value() / v;
            if quotient.modulus_squared() > Rational::one() {
                continue;
            }
            if let Some(c) = spectrum.class_of_value(&quotient) {
                columns.extend(c.members().iter().map(|b| (j, b.clone())));
            }
        }
        let row_of: BTreeMap<&Exponent, usize> = class.members().iter().enumerate().map(|(k, a)| (a, k)).collect();
        let mut rows: Vec<BTreeMap<usize, GR>> = alloc::vec![BTreeMap::new(); class.len()];
        for (c, (j, b)) in columns.iter().enumerate() {
            for (a, x) in gens[*j].terms() {
                let r = row_of[&a.add(b)];
                let e = rows[r].entry(c).or_insert_with(GR::zero);
                *e += x;
            }
        }
        let mut sys = SparseSystem::new(columns.len(), PivotOrder::LowestColumn);
        for (r, a) in class.members().iter().enumerate() {
            sys.push(core::mem::take(&mut rows[r]), piece.coeff(a))
                .map_err(|_| InvariantError::NotMember { class: class.clone() })?;
        }
        for ((j, b), x) in columns.into_iter().zip(sys.solve()) {
            cofactors[j].add_term(b, &x);
        }
    }
    Ok(cofactors)
}

/// Cofactors with `f ≡ Σ c_j·gens_j` modulo `m^{n+1}`, if any.
pub fn truncated_membership(f: &Polynomial, gens: &[Polynomial], n: u32) -> Option<Vec<Polynomial>> {
    let d = f.nvars();
    let mut columns: Vec<(usize, Exponent)> = Vec::new();
    for (j, g) in gens.iter().enumerate() {
        let Some(ord) = g.order() else { continue };
        for k in 0..=n.saturating_sub(ord) {
            if ord + k > n {
                break;
            }
            columns.extend(crate::normalform::exponents_of_degree(d, k).into_iter().map(|b| (j, b)));
        }
    }
    let mut rows: BTreeMap<Exponent, BTreeMap<usize, GR>> = BTreeMap::new();
    for (c, (j, b)) in columns.iter().enumerate() {
        for (a, x) in gens[*j].terms() {
            let ab = a.add(b);
            if ab.degree() <= n {
                let e = rows.entry(ab).or_default().entry(c).or_insert_with(GR::zero);
                *e += x;
            }
        }
    }
    for a in f.support() {
        if a.degree() <= n {
            rows.entry(a.clone()).or_default();
        }
    }
    let mut sys = SparseSystem::new(columns.len(), PivotOrder::LowestColumn);
    for (a, row) in rows {
        sys.push(row, f.coeff(&a)).ok()?;
    }
    let mut cofactors = alloc::vec![Polynomial::zero(d); gens.len()];
    for ((j, b), x) in columns.into_iter().zip(sys.solve()) {
        cofactors[j].add_term(b, &x);
    }
    Some(cofactors)
}

/// Drops generators expressible in the others modulo `m^{n+1}`, scanning from
/// the last one. Returns the reduced presentation and the kept input indices.
pub fn minimal_generators(ideal: &IdealPresentation, n: u32) -> Result<(IdealPresentation, Vec<usize>), InvariantError> {
    let mut kept: Vec<usize> = (0..ideal.len()).collect();
    let gens = ideal.generators();
    for k in (0..ideal.len()).rev() {
        let others: Vec<Polynomial> = kept.iter().filter(|&&j| j != k).map(|&j| gens[j].clone()).collect();
        if truncated_membership(&gens[k], &others, n).is_some() {
            kept.retain(|&j| j != k);
        }
    }
    if kept.is_empty() {
        return Err(InvariantError::EmptyIdeal);
    }
    let reduced = IdealPresentation { nvars: ideal.nvars, generators: kept.iter().map(|&j| gens[j].clone()).collect() };
    Ok((reduced, kept))
}

/// `φ^(i) ∘ F ≡ Σ_j A^i_j φ^(j)` modulo the monomials of class above `bound`
/// (and, with `degree = Some(n)`, above total degree `n`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CofactorMatrix {
    pub entries: PolyMatrix,
    pub constant_part: Matrix,
    pub bound: WeightClass,
    pub degree: Option<u32>,
}

fn class_at_most(spectrum: &OrderedSpectrum, a: &Exponent, bound: &WeightClass, bound_mod: &Rational) -> bool {
    let m = spectrum.modulus_squared(a);
    match m.cmp(bound_mod) {
        Ordering::Greater => true,
        Ordering::Less => false,
        Ordering::Equal => {
            let c = spectrum.weight_class(a).expect("dimension checked");
            c.representative() <= bound.representative()
        }
    }
}

/// The largest class whose modulus equals the smallest modulus occurring in
/// any `φ^(i) ∘ F`.
pub fn default_class_bound(
    ideal: &IdealPresentation,
    f: &PolyMap,
    spectrum: &OrderedSpectrum,
    degree: Option<u32>,
) -> Result<WeightClass, InvariantError> {
    let mut smallest: Option<Rational> = None;
    for g in ideal.generators() {
        let img = compose(g, f, degree)?;
        for a in img.support() {
            let m = spectrum.modulus_squared(a);
            if smallest.as_ref().is_none_or(|s| m < *s) {
                smallest = Some(m);
            }
        }
    }
    let m = smallest.ok_or(InvariantError::EmptyIdeal)?;
    Ok(greatest_class_of_modulus(spectrum, &m))
}

fn greatest_class_of_modulus(spectrum: &OrderedSpectrum, m: &Rational) -> WeightClass {
    let reps = spectrum
        .exponents_with_modulus_at_least(m)
        .into_iter()
        .filter(|a| spectrum.modulus_squared(a) == *m)
        .map(|a| spectrum.weight_class(&a).expect("dimension checked"))
        .max_by(|g, h| g.representative().cmp(h.representative()));
    reps.expect("the modulus is attained")
}

/// Solves for the cofactor matrix class by class.
pub fn cofactor_matrix(
    ideal: &IdealPresentation,
    f: &PolyMap,
    spectrum: &OrderedSpectrum,
    bound: &WeightClass,
    degree: Option<u32>,
) -> Result<CofactorMatrix, InvariantError> {
    let d = spectrum.dim();
    if ideal.nvars() != d || f.dim() != d {
        return Err(InvariantError::DimensionMismatch { expected: d, found: ideal.nvars() });
    }
    let gens = ideal.generators();
    let r = gens.len();
    let bound_mod = spectrum.modulus_squared(bound.representative());
    let in_range = |a: &Exponent| degree.is_none_or(|n| a.degree() <= n) && class_at_most(spectrum, a, bound, &bound_mod);

    // unknown monomials x^β of A^i_j; shared by every row i
    let mut columns: Vec<(usize, Exponent)> = Vec::new();
    for (j, g) in gens.iter().enumerate() {
        let top = g.support().map(|a| spectrum.modulus_squared(a)).max().expect("nonzero generator");
        let lower = &bound_mod / &top;
        let mut betas = spectrum.exponents_with_modulus_at_least(&lower);
        betas.retain(|b| degree.is_none_or(|n| b.degree() <= n));
        betas.sort_by(|a, b| spectrum.lambda_compare(a, b));
        columns.extend(betas.into_iter().map(|b| (j, b)));
    }
    let mut products: BTreeMap<Exponent, BTreeMap<usize, GR>> = BTreeMap::new();
    for (c, (j, b)) in columns.iter().enumerate() {
        for (a, x) in gens[*j].terms() {
            let ab = a.add(b);
            if in_range(&ab) {
                let e = products.entry(ab).or_default().entry(c).or_insert_with(GR::zero);
                *e += x;
            }
        }
    }
    let constant_cols: Vec<usize> = (0..r)
        .map(|j| columns.iter().position(|(k, b)| *k == j && b.is_zero()).expect("constant column"))
        .collect();

    let mut entries = poly_matrix_zero(r, r, d);
    let mut a0 = Matrix::zeros(r, r);
    for (i, g) in gens.iter().enumerate() {
        let target = compose(g, f, degree)?;
        let mut by_class: BTreeMap<(core::cmp::Reverse<Rational>, Exponent), Vec<Exponent>> = BTreeMap::new();
        let mut keys: Vec<Exponent> = products.keys().cloned().collect();
        keys.extend(target.support().filter(|a| in_range(a)).cloned());
        keys.sort();
        keys.dedup();
        for a in keys {
            let class = spectrum.weight_class(&a).expect("dimension checked");
            by_class
                .entry((core::cmp::Reverse(spectrum.modulus_squared(&a)), class.representative().clone()))
                .or_default()
                .push(a);
        }
        let mut systems = [
            SparseSystem::new(columns.len(), PivotOrder::LowestColumn),
            SparseSystem::new(columns.len(), PivotOrder::HighestColumn),
        ];
        for ((_, rep), members) in &by_class {
            for a in members {
                let row = products.get(a).cloned().unwrap_or_default();
                for sys in systems.iter_mut() {
                    sys.push(row.clone(), target.coeff(a)).map_err(|_| InvariantError::NotInvariant {
                        generator: i,
                        class: spectrum.weight_class(rep).expect("dimension checked"),
                    })?;
                }
            }
        }
        let [low, high] = systems;
        let sol = low.solve();
        let alt = high.solve();
        for (j, &c) in constant_cols.iter().enumerate() {
            if sol[c] != alt[c] || !is_determined(&low, c, &sol[c]) {
                return Err(InvariantError::ConstantPartUndetermined { generator: i });
            }
            a0.set(i, j, sol[c].clone());
        }
        for ((j, b), x) in columns.iter().zip(sol) {
            entries[i][*j].add_term(b.clone(), &x);
        }
    }
    Ok(CofactorMatrix { entries, constant_part: a0, bound: bound.clone(), degree })
}

/// Whether the system forces `x_c = value`.
fn is_determined(sys: &SparseSystem, c: usize, value: &GR) -> bool {
    let mut probe = sys.clone();
    let mut row = BTreeMap::new();
    row.insert(c, GR::one());
    probe.push(row, value + &GR::one()).is_err()
}

/// Result of [`jordanize_a0`]: `new = transition · old`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Jordanized {
    pub ideal: IdealPresentation,
    pub cofactors: CofactorMatrix,
    pub transition: Matrix,
}

/// Changes generators linearly so that `A₀` becomes lower Jordan.
pub fn jordanize_a0(
    ideal: &IdealPresentation,
    cofactors: &CofactorMatrix,
    f: &PolyMap,
    spectrum: &OrderedSpectrum,
) -> Result<Jordanized, InvariantError> {
    let a0 = &cofactors.constant_part;
    let r = a0.rows();
    if is_lower_jordan(a0) {
        for k in 0..r {
            if spectrum.log_lambda(a0.get(k, k)).is_err() {
                return Err(InvariantError::EigenvalueNotInSpectrumImage { eigenvalue: Some(a0.get(k, k).clone()), residual_degree: 0 });
            }
        }
        return Ok(Jordanized { ideal: ideal.clone(), cofactors: cofactors.clone(), transition: Matrix::identity(r) });
    }
    let cp = a0.char_poly();
    // every eigenvalue has modulus at least the smallest nonzero coefficient's
    let smallest = cp.iter().filter(|c| !c.is_zero()).map(GR::modulus_squared).min().expect("monic");
    let floor = smallest.min(Rational::one());
    let mut preferred: Vec<GR> = spectrum.exponents_with_modulus_at_least(&floor).iter().map(|a| spectrum.value(a)).collect();
    preferred.sort();
    preferred.dedup();
    let (roots, residual) = gaussian_rational_roots(&cp, &preferred);
    if residual.len() > 1 {
        return Err(InvariantError::EigenvalueNotInSpectrumImage { eigenvalue: None, residual_degree: residual.len() - 1 });
    }
    let mut groups: Vec<(GR, usize, WeightClass)> = Vec::new();
    for (z, mult) in group_eigenvalues(&roots) {
        let class = spectrum.log_lambda(&z).map_err(|_| InvariantError::EigenvalueNotInSpectrumImage {
            eigenvalue: Some(z.clone()),
            residual_degree: 0,
        })?;
        groups.push((z, mult, class));
    }
    groups.sort_by(|a, b| spectrum.lambda_compare(a.2.representative(), b.2.representative()));
    let order: Vec<(GR, usize)> = groups.into_iter().map(|(z, m, _)| (z, m)).collect();
    let jd = lower_jordan(a0, &order).expect("complete eigenvalue list");
    let transition = jd.s.inverse().expect("invertible");
    let new_gens = apply_constant(&transition, ideal.generators(), ideal.nvars());
    let new_ideal = IdealPresentation::new(ideal.nvars(), new_gens)?;
    let new_cof = cofactor_matrix(&new_ideal, f, spectrum, &cofactors.bound, cofactors.degree)?;
    debug_assert!(is_lower_jordan(&new_cof.constant_part));
    Ok(Jordanized { ideal: new_ideal, cofactors: new_cof, transition })
}

fn apply_constant(t: &Matrix, gens: &[Polynomial], d: usize) -> Vec<Polynomial> {
    (0..t.rows())
        .map(|i| {
            gens.iter()
                .enumerate()
                .fold(Polynomial::zero(d), |acc, (j, g)| &acc + &g.scale(t.get(i, j)))
        })
        .collect()
}

/// Extracted λ-homogeneous generators and their grading data.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Extraction {
    /// Generators after Jordanization and the stable reorder.
    pub phi: Vec<Polynomial>,
    pub cofactors: CofactorMatrix,
    pub generators_p: Vec<Polynomial>,
    pub classes: Vec<WeightClass>,
    pub weights: Vec<u64>,
    pub degrees: Vec<u64>,
    /// Reordering applied: `phi[k]` is input generator `permutation[k]`.
    pub permutation: Vec<usize>,
}

/// `γ_i = log_λ(A^i_{i,0})`, stable reorder by `γ_i`, and `P^(i) = φ^(i)_{γ_i}`.
pub fn extract_generators(
    ideal: &IdealPresentation,
    cofactors: &CofactorMatrix,
    spectrum: &OrderedSpectrum,
    valid_degree: Option<u32>,
) -> Result<Extraction, InvariantError> {
    let r = ideal.len();
    let a0 = &cofactors.constant_part;
    let mut classes = Vec::with_capacity(r);
    for k in 0..r {
        classes.push(spectrum.log_lambda(a0.get(k, k)).map_err(|_| InvariantError::NotInImage { index: k })?);
    }
    let mut perm: Vec<usize> = (0..r).collect();
    perm.sort_by(|&a, &b| spectrum.lambda_compare(classes[a].representative(), classes[b].representative()));
    let phi: Vec<Polynomial> = perm.iter().map(|&k| ideal.generators()[k].clone()).collect();
    let classes: Vec<WeightClass> = perm.iter().map(|&k| classes[k].clone()).collect();
    let entries: PolyMatrix = perm.iter().map(|&i| perm.iter().map(|&j| cofactors.entries[i][j].clone()).collect()).collect();
    let cofactors = CofactorMatrix {
        constant_part: constant_matrix(&entries),
        entries,
        bound: cofactors.bound.clone(),
        degree: cofactors.degree,
    };
    let weights = spectrum.weight_vector().map_err(|_| InvariantError::NotInImage { index: 0 })?;
    let mut generators_p = Vec::with_capacity(r);
    let mut degrees = Vec::with_capacity(r);
    for (k, (g, class)) in phi.iter().zip(&classes).enumerate() {
        if let Some(n) = valid_degree {
            if !class_within_degree(class, Some(n)) {
                return Err(InvariantError::TruncationTooLow { index: k, degree: n });
            }
        }
        let p = g.filter(|a| class.contains(a));
        if p.is_zero() {
            return Err(InvariantError::ZeroExtractedGenerator { index: k });
        }
        degrees.push(is_weighted_homogeneous(&p, &weights).expect("λ-homogeneous pieces are weighted homogeneous"));
        generators_p.push(p);
    }
    Ok(Extraction { phi, cofactors, generators_p, classes, weights, degrees, permutation: perm })
}

/// Witnesses for `⟨φ⟩ = ⟨P⟩`: `φ = B·P` exactly (on the valid classes) and
/// `P ≡ W·φ` modulo `m^{degree+1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EqualityCertificate {
    pub b: PolyMatrix,
    pub b0: Matrix,
    pub inverse: PolyMatrix,
    pub degree: u32,
    pub valid_degree: Option<u32>,
}

/// Checks `I ⊆ J` by graded membership and `J ⊆ I` through the inverse of `B`.
pub fn verify_equality(
    phi: &[Polynomial],
    generators_p: &[Polynomial],
    spectrum: &OrderedSpectrum,
    degree: u32,
    valid_degree: Option<u32>,
) -> Result<EqualityCertificate, InvariantError> {
    let d = spectrum.dim();
    let r = phi.len();
    let mut b = Vec::with_capacity(r);
    for (i, f) in phi.iter().enumerate() {
        let row = graded_membership(f, generators_p, spectrum, valid_degree).map_err(|e| match e {
            InvariantError::NotMember { class } => {
                InvariantError::Mismatch { index: i, detail: MismatchKind::NotInExtractedIdeal(class) }
            }
            other => other,
        })?;
        b.push(row);
    }
    let b0 = constant_matrix(&b);
    for i in 0..r {
        if !b0.get(i, i).is_one() {
            return Err(InvariantError::Mismatch { index: i, detail: MismatchKind::ConstantPartNotUnitTriangular });
        }
        for j in i + 1..r {
            if !b0.get(i, j).is_zero() {
                return Err(InvariantError::Mismatch { index: i, detail: MismatchKind::ConstantPartNotUnitTriangular });
            }
        }
    }
    let inverse = truncated_inverse(&b, &b0, degree, d);
    let cert = EqualityCertificate { b, b0, inverse, degree, valid_degree };
    check_witness(&cert, phi, generators_p, d)?;
    Ok(cert)
}

/// `B⁻¹ = Σ_k (−B₀⁻¹ B₊)^k B₀⁻¹` truncated at degree `n`.
fn truncated_inverse(b: &PolyMatrix, b0: &Matrix, n: u32, d: usize) -> PolyMatrix {
    let r = b.len();
    let b0_inv = from_constant_matrix(&b0.inverse().expect("unit triangular"), d);
    let plus: PolyMatrix = b
        .iter()
        .map(|row| row.iter().map(|p| p.filter(|a| !a.is_zero())).collect())
        .collect();
    let step: PolyMatrix = poly_matrix_mul(&b0_inv, &plus, n, d)
        .into_iter()
        .map(|row| row.into_iter().map(|p| -p).collect())
        .collect();
    let mut term = b0_inv.clone();
    let mut acc = b0_inv;
    for _ in 0..n {
        term = poly_matrix_mul(&step, &term, n, d);
        if term.iter().flatten().all(Polynomial::is_zero) {
            break;
        }
        for i in 0..r {
            for j in 0..r {
                acc[i][j] = &acc[i][j] + &term[i][j];
            }
        }
    }
    acc
}

/// `W·φ ≡ P` modulo `m^{degree+1}`, compared on the valid classes only.
fn check_witness(
    cert: &EqualityCertificate,
    phi: &[Polynomial],
    generators_p: &[Polynomial],
    d: usize,
) -> Result<(), InvariantError> {
    let lhs = apply_poly_matrix(&cert.inverse, phi, Some(cert.degree), d);
    for (i, (l, p)) in lhs.iter().zip(generators_p).enumerate() {
        let diff = (l - p).truncate(cert.degree);
        let bad = match cert.valid_degree {
            None => !diff.is_zero(),
            Some(n) => diff.support().any(|a| a.degree() <= n),
        };
        if bad {
            return Err(InvariantError::Mismatch { index: i, detail: MismatchKind::WitnessResidual });
        }
    }
    Ok(())
}

/// Re-checks an equality certificate against the generators it was made for.
pub fn check_equality_certificate(
    cert: &EqualityCertificate,
    phi: &[Polynomial],
    generators_p: &[Polynomial],
    spectrum: &OrderedSpectrum,
) -> Result<(), InvariantError> {
    let d = spectrum.dim();
    let recombined = apply_poly_matrix(&cert.b, generators_p, None, d);
    for (i, (f, g)) in phi.iter().zip(&recombined).enumerate() {
        let diff = f - g;
        for (class, _) in lambda_decompose(&diff, spectrum)?.pieces {
            if class_within_degree(&class, cert.valid_degree) {
                return Err(InvariantError::Mismatch { index: i, detail: MismatchKind::NotInExtractedIdeal(class) });
            }
        }
    }
    if constant_matrix(&cert.b) != cert.b0 {
        return Err(InvariantError::Mismatch { index: 0, detail: MismatchKind::ConstantPartNotUnitTriangular });
    }
    let r = phi.len();
    for i in 0..r {
        if !cert.b0.get(i, i).is_one() || (i + 1..r).any(|j| !cert.b0.get(i, j).is_zero()) {
            return Err(InvariantError::Mismatch { index: i, detail: MismatchKind::ConstantPartNotUnitTriangular });
        }
    }
    check_witness(cert, phi, generators_p, d)
}

/// `P^(i) ∘ F = Σ_{j ≤ i} C^i_j P^(j)` for every `i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiltrationCertificate {
    pub cofactors: PolyMatrix,
}

pub fn verify_filtration(
    generators_p: &[Polynomial],
    f: &PolyMap,
    spectrum: &OrderedSpectrum,
) -> Result<FiltrationCertificate, InvariantError> {
    let d = spectrum.dim();
    let r = generators_p.len();
    let mut cofactors = poly_matrix_zero(r, r, d);
    for i in 0..r {
        let img = compose(&generators_p[i], f, None)?;
        let c = graded_membership(&img, &generators_p[..=i], spectrum, None)
            .map_err(|_| InvariantError::FiltrationFailed { index: i })?;
        for (j, p) in c.into_iter().enumerate() {
            cofactors[i][j] = p;
        }
    }
    Ok(FiltrationCertificate { cofactors })
}

/// Re-checks a filtration certificate.
pub fn check_filtration_certificate(
    cert: &FiltrationCertificate,
    generators_p: &[Polynomial],
    f: &PolyMap,
) -> Result<(), InvariantError> {
    let d = f.dim();
    for (i, p) in generators_p.iter().enumerate() {
        let img = compose(p, f, None)?;
        let row = &cert.cofactors[i];
        if row.iter().skip(i + 1).any(|c| !c.is_zero()) {
            return Err(InvariantError::FiltrationFailed { index: i });
        }
        let rhs = row.iter().zip(generators_p).fold(Polynomial::zero(d), |acc, (c, g)| &acc + &(c * g));
        if img != rhs {
            return Err(InvariantError::FiltrationFailed { index: i });
        }
    }
    Ok(())
}

/// Pipeline stage an error came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Stage {
    NormalForm,
    Transport,
    MinimalGenerators,
    CofactorMatrix,
    Jordanization,
    Extraction,
    Equality,
    Filtration,
}

impl fmt::Display for Stage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Stage::NormalForm => "normal form",
            Stage::Transport => "transport",
            Stage::MinimalGenerators => "minimal generators",
            Stage::CofactorMatrix => "cofactor matrix",
            Stage::Jordanization => "jordanization",
            Stage::Extraction => "extraction",
            Stage::Equality => "equality",
            Stage::Filtration => "filtration",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PipelineError {
    pub stage: Stage,
    pub error: InvariantError,
}

impl fmt::Display for PipelineError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.stage, self.error)
    }
}

impl core::error::Error for PipelineError {}

trait AtStage<T> {
    fn at(self, stage: Stage) -> Result<T, PipelineError>;
}

impl<T, E: Into<InvariantError>> AtStage<T> for Result<T, E> {
    fn at(self, stage: Stage) -> Result<T, PipelineError> {
        self.map_err(|e| PipelineError { stage, error: e.into() })
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct QhOptions {
    /// Total-degree truncation `N`; defaults to `resonance_bound + max generator degree + 2`.
    pub degree: Option<u32>,
    /// Representative of the class bound for cofactor solving.
    pub class_bound: Option<Exponent>,
}

/// Everything [`quasi_homogenize`] produces, with certificates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QhResult {
    pub spectrum: OrderedSpectrum,
    pub truncation_degree: u32,
    /// Conjugacy to normal form; `None` when the input map already was one.
    pub normal_form: Option<NormalFormCertificate>,
    /// Normal-form map the ideal is invariant under (in the new coordinates).
    pub map: PolyMap,
    /// Input generators expressed in normal-form coordinates.
    pub transported: Vec<Polynomial>,
    /// Indices of `transported` kept by [`minimal_generators`].
    pub minimal_indices: Vec<usize>,
    /// `phi = basis_change · (kept generators)`.
    pub basis_change: Matrix,
    pub phi: Vec<Polynomial>,
    pub cofactors: CofactorMatrix,
    pub generators_p: Vec<Polynomial>,
    pub classes: Vec<WeightClass>,
    pub weights: Vec<u64>,
    pub degrees: Vec<u64>,
    pub equality: EqualityCertificate,
    pub filtration: FiltrationCertificate,
}

impl QhResult {
    /// Degree up to which the results hold when generators were transported.
    pub fn valid_degree(&self) -> Option<u32> {
        self.normal_form.as_ref().map(|_| self.truncation_degree)
    }
}

pub fn default_degree(spectrum: &OrderedSpectrum, ideal: &IdealPresentation) -> u32 {
    spectrum.resonance_bound() as u32 + ideal.max_degree() + 2
}

/// Normal form of `F` (if needed), then the full extraction pipeline.
pub fn quasi_homogenize(ideal: &IdealPresentation, f: &PolyMap, options: &QhOptions) -> Result<QhResult, PipelineError> {
    let d = f.dim();
    if ideal.nvars() != d {
        return Err(PipelineError {
            stage: Stage::NormalForm,
            error: InvariantError::DimensionMismatch { expected: d, found: ideal.nvars() },
        });
    }
    let jf = jordan_lower(&f.linear_part()).at(Stage::NormalForm)?;
    let spectrum = spectrum_of_jordan(&jf.j).at(Stage::NormalForm)?;
    let n = options.degree.unwrap_or_else(|| default_degree(&spectrum, ideal));
    let already = jf.s == Matrix::identity(d) && is_normal_form(f, &spectrum);
    let (map, transported, nf) = if already {
        (f.clone(), ideal.generators().to_vec(), None)
    } else {
        let cert = poincare_dulac(f, n).at(Stage::NormalForm)?;
        let h_inv = map_inverse(&cert.conjugacy, n).at(Stage::Transport)?;
        let gens = ideal
            .generators()
            .iter()
            .map(|g| compose(g, &h_inv, Some(n)))
            .collect::<Result<Vec<_>, _>>()
            .at(Stage::Transport)?;
        (cert.normalized.clone(), gens, Some(cert))
    };
    let valid = nf.as_ref().map(|_| n);
    let moved = IdealPresentation::new(d, transported.clone()).at(Stage::Transport)?;
    let (minimal, kept) = minimal_generators(&moved, n).at(Stage::MinimalGenerators)?;

    let mut bound = match &options.class_bound {
        Some(rep) => spectrum.weight_class(rep).map_err(SpectrumError::into_invariant).at(Stage::CofactorMatrix)?,
        None => default_class_bound(&minimal, &map, &spectrum, valid).at(Stage::CofactorMatrix)?,
    };
    // widen the bound a few classes if A₀ is not yet pinned down
    let mut attempts = 0;
    let cof = loop {
        match cofactor_matrix(&minimal, &map, &spectrum, &bound, valid) {
            Err(InvariantError::ConstantPartUndetermined { .. }) if attempts < 8 && options.class_bound.is_none() => {
                bound = spectrum.class_successor(&bound);
                attempts += 1;
            }
            other => break other.at(Stage::CofactorMatrix)?,
        }
    };
    let jz = jordanize_a0(&minimal, &cof, &map, &spectrum).at(Stage::Jordanization)?;
    let ex = extract_generators(&jz.ideal, &jz.cofactors, &spectrum, valid).at(Stage::Extraction)?;
    let equality = verify_equality(&ex.phi, &ex.generators_p, &spectrum, n, valid).at(Stage::Equality)?;
    let filtration = verify_filtration(&ex.generators_p, &map, &spectrum).at(Stage::Filtration)?;
    let basis_change = jz.transition.permuted_rows(&ex.permutation);
    Ok(QhResult {
        spectrum,
        truncation_degree: n,
        normal_form: nf,
        map,
        transported,
        minimal_indices: kept,
        basis_change,
        phi: ex.phi,
        cofactors: ex.cofactors,
        generators_p: ex.generators_p,
        classes: ex.classes,
        weights: ex.weights,
        degrees: ex.degrees,
        equality,
        filtration,
    })
}

trait IntoInvariant {
    fn into_invariant(self) -> InvariantError;
}

impl IntoInvariant for SpectrumError {
    fn into_invariant(self) -> InvariantError {
        match self {
            SpectrumError::DimensionMismatch { expected, found } => InvariantError::DimensionMismatch { expected, found },
            other => InvariantError::NormalForm(other.into()),
        }
    }
}

/// Why a stored result failed re-verification.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerificationFailure {
    pub check: &'static str,
    pub detail: Option<InvariantError>,
}

impl fmt::Display for VerificationFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.detail {
            Some(e) => write!(f, "{}: {e}", self.check),
            None => write!(f, "{}", self.check),
        }
    }
}

impl core::error::Error for VerificationFailure {}

fn fail(check: &'static str) -> VerificationFailure {
    VerificationFailure { check, detail: None }
}

fn fail_with(check: &'static str) -> impl FnOnce(InvariantError) -> VerificationFailure {
    move |e| VerificationFailure { check, detail: Some(e) }
}

/// Re-checks every witness in `result` against the original problem and
/// re-runs the extraction from the stored cofactor data.
pub fn verify_result(ideal: &IdealPresentation, f: &PolyMap, result: &QhResult) -> Result<(), VerificationFailure> {
    let d = f.dim();
    let n = result.truncation_degree;
    let valid = result.valid_degree();
    let spectrum = &result.spectrum;
    if ideal.nvars() != d || spectrum.dim() != d {
        return Err(fail("dimensions"));
    }
    // normal form and transport
    match &result.normal_form {
        None => {
            if result.map != *f || result.transported != ideal.generators() {
                return Err(fail("untransported input differs"));
            }
        }
        Some(cert) => {
            if cert.original != *f || cert.normalized != result.map || cert.truncation_degree != n {
                return Err(fail("normal form certificate does not match the input"));
            }
            if !crate::normalform::verify_conjugacy(cert) {
                return Err(fail("conjugacy"));
            }
            let h_inv = map_inverse(&cert.conjugacy, n).map_err(|e| fail_with("transport")(e.into()))?;
            for (g, t) in ideal.generators().iter().zip(&result.transported) {
                if compose(g, &h_inv, Some(n)).map_err(|e| fail_with("transport")(e.into()))? != *t {
                    return Err(fail("transported generators"));
                }
            }
        }
    }
    if !is_normal_form(&result.map, spectrum) {
        return Err(fail("map is not in normal form for the stored spectrum"));
    }
    // generator change
    let kept: Vec<Polynomial> = result
        .minimal_indices
        .iter()
        .map(|&k| result.transported.get(k).cloned().ok_or_else(|| fail("minimal indices")))
        .collect::<Result<_, _>>()?;
    if result.basis_change.det().is_zero() || apply_constant(&result.basis_change, &kept, d) != result.phi {
        return Err(fail("basis change"));
    }
    for (k, g) in result.transported.iter().enumerate() {
        if !result.minimal_indices.contains(&k) {
            let others: Vec<Polynomial> = kept.clone();
            if truncated_membership(g, &others, n).is_none() {
                return Err(fail("dropped generator is not redundant"));
            }
        }
    }
    // cofactor identity modulo the bound
    let cof = &result.cofactors;
    let bound_mod = spectrum.modulus_squared(cof.bound.representative());
    let lhs: Vec<Polynomial> = result.phi.iter().map(|g| compose(g, &result.map, cof.degree)).collect::<Result<_, _>>().map_err(|e| fail_with("cofactor identity")(e.into()))?;
    let rhs = apply_poly_matrix(&cof.entries, &result.phi, cof.degree, d);
    for (l, r) in lhs.iter().zip(&rhs) {
        let diff = l - r;
        if diff.support().any(|a| cof.degree.is_none_or(|m| a.degree() <= m) && class_at_most(spectrum, a, &cof.bound, &bound_mod)) {
            return Err(fail("cofactor identity"));
        }
    }
    if constant_matrix(&cof.entries) != cof.constant_part || !is_lower_jordan(&cof.constant_part) {
        return Err(fail("constant cofactor matrix"));
    }
    // re-run extraction from the stored cofactor matrix
    let phi_ideal = IdealPresentation::new(d, result.phi.clone()).map_err(fail_with("generators"))?;
    let ex = extract_generators(&phi_ideal, cof, spectrum, valid).map_err(fail_with("extraction"))?;
    if ex.permutation.iter().enumerate().any(|(k, &p)| k != p)
        || ex.generators_p != result.generators_p
        || ex.classes != result.classes
        || ex.weights != result.weights
        || ex.degrees != result.degrees
    {
        return Err(fail("extraction"));
    }
    check_equality_certificate(&result.equality, &result.phi, &result.generators_p, spectrum).map_err(fail_with("equality"))?;
    check_filtration_certificate(&result.filtration, &result.generators_p, &result.map).map_err(fail_with("filtration"))?;
    Ok(())
}
