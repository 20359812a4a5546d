//! Ordered spectra, resonances, the λ-order on exponents and λ-weight classes.
//!
//! Every comparison of moduli is done on `|·|²` with exact rationals; no real
//! logarithm is evaluated anywhere except in the precision loop of
//! [`OrderedSpectrum::weight_vector`], whose result is re-checked exactly.
//!
//! Coordinates are 0-based throughout the API: `resonance_set(0)` is `R_1`.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::exactnum::{factor, factor_natural, GaussianRational, Rational};
use crate::lattice::{hermite_normal_form, integer_kernel};

type GR = GaussianRational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SpectrumError {
    /// Eigenvalue of modulus `≥ 1`.
    NotContracting { index: usize },
    /// Zero eigenvalue.
    SingularLinearPart { index: usize },
    /// Moduli are not non-increasing.
    NotNicelyOrdered { index: usize },
    /// A Jordan flag set between distinct eigenvalues.
    InvalidJordanFlag { index: usize },
    DimensionMismatch { expected: usize, found: usize },
    /// `log_λ` of a value outside `λ^Γ`.
    NotInImage,
    ZeroValue,
    /// The positive weight search ran out of precision.
    WeightPrecision,
}

impl fmt::Display for SpectrumError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpectrumError::NotContracting { index } => {
                write!(f, "eigenvalue {} has modulus >= 1: not contracting", index + 1)
            }
            SpectrumError::SingularLinearPart { index } => {
                write!(f, "eigenvalue {} is zero: linear part is singular", index + 1)
            }
            SpectrumError::NotNicelyOrdered { index } => {
                write!(f, "eigenvalue {} has larger modulus than its predecessor", index + 1)
            }
            SpectrumError::InvalidJordanFlag { index } => {
                write!(f, "Jordan flag {} joins distinct eigenvalues", index + 1)
            }
            SpectrumError::DimensionMismatch { expected, found } => {
                write!(f, "dimension mismatch: expected {expected}, found {found}")
            }
            SpectrumError::NotInImage => write!(f, "value is not of the form λ^α"),
            SpectrumError::ZeroValue => write!(f, "log_λ of zero"),
            SpectrumError::WeightPrecision => write!(f, "could not find a positive weight vector"),
        }
    }
}

impl core::error::Error for SpectrumError {}

/// A multi-index `α ∈ N^d`. The derived order is lexicographic.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Exponent(pub Vec<u32>);

impl Exponent {
    pub fn zero(d: usize) -> Self {
        Exponent(alloc::vec![0; d])
    }

    /// `1_i`, the exponent of the coordinate `x_i`.
    pub fn unit(d: usize, i: usize) -> Self {
        let mut v = alloc::vec![0; d];
        v[i] = 1;
        Exponent(v)
    }

    pub fn new(v: Vec<u32>) -> Self {
        Exponent(v)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    /// Total degree `|α|`.
    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&a| a == 0)
    }

    pub fn add(&self, o: &Exponent) -> Exponent {
        Exponent(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }

    /// `self - o` if every component stays non-negative.
    pub fn checked_sub(&self, o: &Exponent) -> Option<Exponent> {
        self.0.iter().zip(&o.0).map(|(a, b)| a.checked_sub(*b)).collect::<Option<Vec<_>>>().map(Exponent)
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }
}

impl fmt::Debug for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, a) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// A λ-weight class: every exponent `β` with `λ^β = value`, listed in
/// increasing λ-order. The first member is the class representative.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct WeightClass {
    members: Vec<Exponent>,
    value: GR,
}

impl fmt::Debug for WeightClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{:?}]", self.representative())
    }
}

impl WeightClass {
    pub fn representative(&self) -> &Exponent {
        &self.members[0]
    }

    pub fn members(&self) -> &[Exponent] {
        &self.members
    }

    /// `λ^γ`.
    pub fn value(&self) -> &GR {
        &self.value
    }

    pub fn contains(&self, a: &Exponent) -> bool {
        self.members.binary_search_by(|m| m.cmp(a)).is_ok() || self.members.contains(a)
    }

    /// `dim H_γ`.
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.members[0].dim()
    }
}

/// Lattice `{v ∈ Z^d : λ^v = 1}` in Hermite normal form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightLattice {
    pub basis: Vec<Vec<i64>>,
}

impl WeightLattice {
    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn contains(&self, v: &[i64]) -> bool {
        let basis: Vec<Vec<BigInt>> =
            self.basis.iter().map(|b| b.iter().map(|&x| BigInt::from(x)).collect()).collect();
        let v: Vec<BigInt> = v.iter().map(|&x| BigInt::from(x)).collect();
        crate::lattice::lattice_coordinates(&basis, &v).is_some()
    }
}

/// Eigenvalues `λ_1, …, λ_d` of a contracting linear part, ordered by
/// non-increasing modulus, together with the Jordan sub-diagonal flags.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct OrderedSpectrum {
    entries: Vec<GR>,
    jordan_flags: Vec<bool>,
    moduli: Vec<Rational>,
}

impl fmt::Debug for OrderedSpectrum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("OrderedSpectrum")
            .field("entries", &self.entries)
            .field("jordan_flags", &self.jordan_flags)
            .finish()
    }
}

impl OrderedSpectrum {
    /// Validates an already ordered spectrum. `jordan_flags[k]` marks a unit
    /// sub-diagonal entry between coordinates `k` and `k + 1`.
    pub fn new(entries: Vec<GR>, jordan_flags: Vec<bool>) -> Result<Self, SpectrumError> {
        let d = entries.len();
        if jordan_flags.len() != d.saturating_sub(1) {
            return Err(SpectrumError::DimensionMismatch {
                expected: d.saturating_sub(1),
                found: jordan_flags.len(),
            });
        }
        let moduli = check_contracting(&entries)?;
        for k in 1..d {
            if moduli[k] > moduli[k - 1] {
                return Err(SpectrumError::NotNicelyOrdered { index: k });
            }
        }
        for (k, &flag) in jordan_flags.iter().enumerate() {
            if flag && entries[k] != entries[k + 1] {
                return Err(SpectrumError::InvalidJordanFlag { index: k });
            }
        }
        Ok(OrderedSpectrum { entries, jordan_flags, moduli })
    }

    /// Diagonal spectrum without Jordan blocks.
    pub fn diagonal(entries: Vec<GR>) -> Result<Self, SpectrumError> {
        let n = entries.len().saturating_sub(1);
        Self::new(entries, alloc::vec![false; n])
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[GR] {
        &self.entries
    }

    pub fn jordan_flags(&self) -> &[bool] {
        &self.jordan_flags
    }

    /// `|λ_i|²`.
    pub fn modulus_squared_of(&self, i: usize) -> &Rational {
        &self.moduli[i]
    }

    /// `λ^α`.
    pub fn value(&self, a: &Exponent) -> GR {
        let mut acc = GR::one();
        for (l, &k) in self.entries.iter().zip(&a.0) {
            if k > 0 {
                acc = &acc * &l.pow_u(k as u64);
            }
        }
        acc
    }

    /// `|λ^α|²`.
    pub fn modulus_squared(&self, a: &Exponent) -> Rational {
        let mut acc = Rational::one();
        for (m, &k) in self.moduli.iter().zip(&a.0) {
            if k > 0 {
                acc *= num_traits::pow::pow(m.clone(), k as usize);
            }
        }
        acc
    }

    fn check_dim(&self, a: &Exponent) -> Result<(), SpectrumError> {
        if a.dim() != self.dim() {
            return Err(SpectrumError::DimensionMismatch { expected: self.dim(), found: a.dim() });
        }
        Ok(())
    }

    /// Least `M` such that `|α| > M` forces `|λ^α|² < |λ_d|²`.
    pub fn resonance_bound(&self) -> usize {
        let m1 = &self.moduli[0];
        let md = &self.moduli[self.dim() - 1];
        let mut p = m1.clone();
        let mut m = 0;
        // p = m1^(m+1)
        while p >= *md {
            p *= m1;
            m += 1;
        }
        m
    }

    /// All `α` with `|λ^α|² ≥ lower`, in lexicographic order.
    pub fn exponents_with_modulus_at_least(&self, lower: &Rational) -> Vec<Exponent> {
        let mut out = Vec::new();
        let mut cur = alloc::vec![0u32; self.dim()];
        self.dfs(0, Rational::one(), lower, &mut cur, &mut out);
        out
    }

    fn dfs(&self, k: usize, acc: Rational, lower: &Rational, cur: &mut Vec<u32>, out: &mut Vec<Exponent>) {
        if k == self.dim() {
            out.push(Exponent(cur.clone()));
            return;
        }
        let mut acc = acc;
        let mut a = 0;
        while acc >= *lower {
            cur[k] = a;
            self.dfs(k + 1, acc.clone(), lower, cur, out);
            acc *= &self.moduli[k];
            a += 1;
        }
        cur[k] = 0;
    }

    /// The class `{β : λ^β = z}`, or `None` if it is empty.
    pub fn class_of_value(&self, z: &GR) -> Option<WeightClass> {
        if z.is_zero() {
            return None;
        }
        let m = z.modulus_squared();
        if m > Rational::one() {
            return None;
        }
        let members: Vec<Exponent> = self
            .exponents_with_modulus_at_least(&m)
            .into_iter()
            .filter(|a| self.modulus_squared(a) == m && self.value(a) == *z)
            .collect();
        if members.is_empty() {
            return None;
        }
        // equal modulus: λ-order coincides with lexicographic order
        Some(WeightClass { members, value: z.clone() })
    }

    /// `R_i = {α : λ^α = λ_i}`, including `1_i`, in increasing λ-order.
    pub fn resonance_set(&self, i: usize) -> Vec<Exponent> {
        self.class_of_value(&self.entries[i]).map(|c| c.members).unwrap_or_default()
    }

    /// Exponents allowed in the `i`-th component of a normal form: nonlinear
    /// resonances, plus `1_{i-1}` when `λ_{i-1} = λ_i`.
    pub fn normal_form_support(&self, i: usize) -> Vec<Exponent> {
        let d = self.dim();
        self.resonance_set(i)
            .into_iter()
            .filter(|a| a.degree() >= 2 || (i > 0 && *a == Exponent::unit(d, i - 1)))
            .collect()
    }

    /// The λ-order: `α ≻ β` iff `|λ^α| < |λ^β|`, ties broken lexicographically.
    pub fn lambda_compare(&self, a: &Exponent, b: &Exponent) -> Ordering {
        let ma = self.modulus_squared(a);
        let mb = self.modulus_squared(b);
        mb.cmp(&ma).then_with(|| a.cmp(b))
    }

    pub fn weight_class(&self, a: &Exponent) -> Result<WeightClass, SpectrumError> {
        self.check_dim(a)?;
        Ok(self.class_of_value(&self.value(a)).expect("α belongs to its own class"))
    }

    /// Inverse of `γ ↦ λ^γ`.
    pub fn log_lambda(&self, z: &GR) -> Result<WeightClass, SpectrumError> {
        if z.is_zero() {
            return Err(SpectrumError::ZeroValue);
        }
        self.class_of_value(z).ok_or(SpectrumError::NotInImage)
    }

    /// Orders classes by their representatives.
    pub fn class_compare(&self, g: &WeightClass, h: &WeightClass) -> Result<Ordering, SpectrumError> {
        self.check_dim(g.representative())?;
        self.check_dim(h.representative())?;
        Ok(self.lambda_compare(g.representative(), h.representative()))
    }

    /// The least class strictly greater than `g`.
    pub fn class_successor(&self, g: &WeightClass) -> WeightClass {
        let rep = g.representative();
        let m = self.modulus_squared(rep);
        // the candidates live between m·|λ_1|² (reached by rep + 1_1) and m
        let lower = &m * &self.moduli[0];
        let cands = self.exponents_with_modulus_at_least(&lower);
        let mut tiers: BTreeMap<Rational, Vec<Exponent>> = BTreeMap::new();
        for a in cands {
            let ma = self.modulus_squared(&a);
            tiers.entry(ma).or_default().push(a);
        }
        // same tier first: lexicographically larger class minima
        if let Some(same) = tiers.get(&m) {
            let mut best: Option<WeightClass> = None;
            for a in same.iter().filter(|a| *a > rep) {
                let c = self.weight_class(a).expect("dimension checked");
                if c.representative() == a {
                    best = Some(c);
                    break;
                }
            }
            if let Some(c) = best {
                return c;
            }
        }
        let (_, below) = tiers.range(..m).next_back().expect("rep + 1_1 lies below");
        let first = below.iter().min().expect("non-empty tier");
        self.weight_class(first).expect("dimension checked")
    }

    /// Basis (Hermite normal form) of `{v ∈ Z^d : λ^v = 1}`.
    pub fn relation_lattice(&self) -> WeightLattice {
        let d = self.dim();
        let facts: Vec<_> = self.entries.iter().map(|l| factor(l).expect("nonzero eigenvalue")).collect();
        let mut primes = Vec::new();
        for f in &facts {
            for (p, _) in &f.factors {
                if !primes.contains(p) {
                    primes.push(p.clone());
                }
            }
        }
        let mut rows: Vec<Vec<BigInt>> = primes
            .iter()
            .map(|p| {
                let mut row: Vec<BigInt> = facts
                    .iter()
                    .map(|f| BigInt::from(f.factors.iter().find(|(q, _)| q == p).map_or(0, |(_, e)| *e)))
                    .collect();
                row.push(BigInt::zero());
                row
            })
            .collect();
        // units i^k multiply to 1 iff Σ k_j v_j ≡ 0 (mod 4)
        let mut unit_row: Vec<BigInt> = facts.iter().map(|f| BigInt::from(f.unit.0)).collect();
        unit_row.push(BigInt::from(4));
        rows.push(unit_row);
        let kernel = integer_kernel(&rows, d + 1);
        let projected: Vec<Vec<BigInt>> = kernel.into_iter().map(|mut v| {
            v.truncate(d);
            v
        }).collect();
        let basis: Vec<Vec<i64>> = hermite_normal_form(&projected)
            .into_iter()
            .map(|v| v.iter().map(|x| x.to_i64().expect("desk-scale lattice entries")).collect())
            .collect();
        debug_assert!(basis.iter().all(|v| self.signed_value(v).is_one()));
        WeightLattice { basis }
    }

    /// `λ^v` for an integer vector `v`.
    pub fn signed_value(&self, v: &[i64]) -> GR {
        let mut acc = GR::one();
        for (l, &k) in self.entries.iter().zip(v) {
            acc = &acc * &l.pow(k).expect("nonzero eigenvalue");
        }
        acc
    }

    /// Positive integer weights `n` with `n·v = 0` on the relation lattice,
    /// normalized to gcd 1; `(1, …, 1)` when the lattice is trivial.
    pub fn weight_vector(&self) -> Result<Vec<u64>, SpectrumError> {
        let d = self.dim();
        let lattice = self.relation_lattice();
        if lattice.rank() == 0 {
            return Ok(alloc::vec![1; d]);
        }
        // valuations of |λ_i|² at rational primes
        let mut vals: Vec<BTreeMap<BigUint, i64>> = Vec::with_capacity(d);
        for m in &self.moduli {
            let mut map = BTreeMap::new();
            let num = m.numer().to_biguint().expect("positive");
            let den = m.denom().to_biguint().expect("positive");
            for (p, e) in factor_natural(&num) {
                *map.entry(p).or_insert(0) += e as i64;
            }
            for (p, e) in factor_natural(&den) {
                *map.entry(p).or_insert(0) -= e as i64;
            }
            vals.push(map);
        }
        let primes: Vec<BigUint> = {
            let mut ps: Vec<BigUint> = vals.iter().flat_map(|m| m.keys().cloned()).collect();
            ps.sort();
            ps.dedup();
            ps
        };
        // w_i = -Σ_p v_{i,p}·c_p is orthogonal to the lattice for every choice
        // of c_p; c_p ≈ log2 p with increasing precision makes it positive
        for bits in 0..24u32 {
            let c: Vec<BigInt> = primes.iter().map(|p| BigInt::from(floor_log2_pow(p, bits))).collect();
            let w: Vec<BigInt> = vals
                .iter()
                .map(|m| {
                    let mut acc = BigInt::zero();
                    for (p, cp) in primes.iter().zip(&c) {
                        if let Some(e) = m.get(p) {
                            acc -= cp * BigInt::from(*e);
                        }
                    }
                    acc
                })
                .collect();
            if w.iter().all(|x| x.is_positive()) {
                let g = w.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
                let n: Vec<u64> = w.iter().map(|x| (x / &g).to_u64().ok_or(SpectrumError::WeightPrecision)).collect::<Result<_, _>>()?;
                debug_assert!(lattice.basis.iter().all(|v| {
                    v.iter().zip(&n).map(|(a, b)| a * *b as i64).sum::<i64>() == 0
                }));
                return Ok(n);
            }
        }
        Err(SpectrumError::WeightPrecision)
    }
}

/// `⌊2^bits · log2 p⌋`, computed as the bit length of `p^(2^bits)` minus one.
fn floor_log2_pow(p: &BigUint, bits: u32) -> u64 {
    let mut x = p.clone();
    for _ in 0..bits {
        x = &x * &x;
    }
    x.bits() - 1
}

fn check_contracting(entries: &[GR]) -> Result<Vec<Rational>, SpectrumError> {
    entries
        .iter()
        .enumerate()
        .map(|(k, l)| {
            if l.is_zero() {
                return Err(SpectrumError::SingularLinearPart { index: k });
            }
            let m = l.modulus_squared();
            if m >= Rational::one() {
                return Err(SpectrumError::NotContracting { index: k });
            }
            Ok(m)
        })
        .collect()
}

/// Sorts raw eigenvalues by non-increasing modulus, ties by `(re, im)`.
///
/// Returns the spectrum (without Jordan flags) and `perm` with
/// `sorted[k] = raw[perm[k]]`.
pub fn nicely_order(raw: &[GR]) -> Result<(OrderedSpectrum, Vec<usize>), SpectrumError> {
    let moduli = check_contracting(raw)?;
    let mut perm: Vec<usize> = (0..raw.len()).collect();
    perm.sort_by(|&a, &b| moduli[b].cmp(&moduli[a]).then_with(|| raw[a].cmp(&raw[b])));
    let sorted: Vec<GR> = perm.iter().map(|&k| raw[k].clone()).collect();
    Ok((OrderedSpectrum::diagonal(sorted)?, perm))
}

/// Comparison key that orders eigenvalues the way [`nicely_order`] does.
pub fn nice_order_cmp(a: &GR, b: &GR) -> Ordering {
    b.modulus_squared().cmp(&a.modulus_squared()).then_with(|| a.cmp(b))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gr(s: &str) -> GR {
        s.parse().unwrap()
    }

    fn spectrum_of(xs: &[&str]) -> OrderedSpectrum {
        OrderedSpectrum::diagonal(xs.iter().map(|s| gr(s)).collect()).unwrap()
    }

    fn e(v: &[u32]) -> Exponent {
        Exponent(v.to_vec())
    }

    fn es(vs: &[&[u32]]) -> Vec<Exponent> {
        vs.iter().map(|v| e(v)).collect()
    }

    #[test]
    fn nicely_order_examples() {
        let (s, p) = nicely_order(&[gr("1/4"), gr("1/2")]).unwrap();
        assert_eq!(s.entries(), &[gr("1/2"), gr("1/4")]);
        assert_eq!(p, alloc::vec![1, 0]);
        let raw = [gr("-1/2"), gr("1/2*i"), gr("1/2*i")];
        let (s, p) = nicely_order(&raw).unwrap();
        assert_eq!(s.entries(), &raw);
        assert_eq!(p, alloc::vec![0, 1, 2]);
        assert_eq!(nicely_order(&[gr("1/2"), gr("1")]).unwrap_err(), SpectrumError::NotContracting { index: 1 });
        assert_eq!(nicely_order(&[gr("0")]).unwrap_err(), SpectrumError::SingularLinearPart { index: 0 });
    }

    // brute force: the least M with |λ_1|^(2(M+1)) < |λ_d|², checked by scanning
    fn resonance_bound_oracle(s: &OrderedSpectrum) -> usize {
        (0..200)
            .find(|&m| {
                (m + 1..m + 40).all(|deg| {
                    let a = Exponent::unit(s.dim(), 0);
                    let mut big = a.clone();
                    for _ in 1..deg {
                        big = big.add(&a);
                    }
                    s.modulus_squared(&big) < *s.modulus_squared_of(s.dim() - 1)
                })
            })
            .unwrap()
    }

    #[test]
    fn resonance_bound_examples() {
        for (xs, expected) in [(&["1/2", "1/4"][..], 2), (&["1/2"][..], 1), (&["-1/2", "1/2*i", "1/2*i"][..], 1)] {
            let s = spectrum_of(xs);
            assert_eq!(resonance_bound_oracle(&s), expected);
            assert_eq!(s.resonance_bound(), expected);
        }
    }

    #[test]
    fn resonance_sets() {
        let s = spectrum_of(&["1/2", "1/4"]);
        assert_eq!(s.resonance_set(1), es(&[&[0, 1], &[2, 0]]));
        assert_eq!(s.resonance_set(0), es(&[&[1, 0]]));
        let t = spectrum_of(&["-1/2", "1/2*i", "1/2*i"]);
        assert_eq!(t.resonance_set(2), es(&[&[0, 0, 1], &[0, 1, 0]]));
    }

    #[test]
    fn normal_form_supports() {
        let s = spectrum_of(&["1/2", "1/4"]);
        assert_eq!(s.normal_form_support(1), es(&[&[2, 0]]));
        assert!(s.normal_form_support(0).is_empty());
        let j = OrderedSpectrum::new(alloc::vec![gr("1/2"), gr("1/2")], alloc::vec![true]).unwrap();
        assert_eq!(j.normal_form_support(1), es(&[&[1, 0]]));
    }

    #[test]
    fn jordan_flag_needs_equal_eigenvalues() {
        let err = OrderedSpectrum::new(alloc::vec![gr("1/2"), gr("1/4")], alloc::vec![true]).unwrap_err();
        assert_eq!(err, SpectrumError::InvalidJordanFlag { index: 0 });
        assert!(OrderedSpectrum::diagonal(alloc::vec![gr("1/4"), gr("1/2")]).is_err());
    }

    #[test]
    fn lambda_order_examples() {
        let s = spectrum_of(&["1/2", "1/4"]);
        assert_eq!(s.lambda_compare(&e(&[2, 0]), &e(&[0, 1])), Ordering::Greater);
        assert_eq!(s.lambda_compare(&e(&[0, 0]), &e(&[1, 0])), Ordering::Less);
        assert_eq!(s.lambda_compare(&e(&[3, 1]), &e(&[3, 1])), Ordering::Equal);
    }

    #[test]
    fn weight_class_examples() {
        let l = spectrum_of(&["-1/2", "1/2*i", "1/2*i"]);
        assert_eq!(l.weight_class(&e(&[0, 1, 0])).unwrap().members(), &es(&[&[0, 0, 1], &[0, 1, 0]])[..]);
        let mu = spectrum_of(&["1/2*i", "1/2*i", "-1/2"]);
        let c = mu.weight_class(&e(&[0, 1, 0])).unwrap();
        assert_eq!(c.members(), &es(&[&[0, 1, 0], &[1, 0, 0]])[..]);
        assert!(!c.contains(&e(&[0, 0, 1])));
        let s = spectrum_of(&["1/2", "1/4"]);
        assert_eq!(s.weight_class(&e(&[2, 0])).unwrap().members(), &es(&[&[0, 1], &[2, 0]])[..]);
    }

    #[test]
    fn log_lambda_examples() {
        let s = spectrum_of(&["1/2", "1/4"]);
        let c = s.log_lambda(&gr("1/32")).unwrap();
        assert_eq!(c.members(), &es(&[&[1, 2], &[3, 1], &[5, 0]])[..]);
        // brute force over a box
        let mut brute = Vec::new();
        for a in 0..8u32 {
            for b in 0..8u32 {
                if s.value(&e(&[a, b])) == gr("1/32") {
                    brute.push(e(&[a, b]));
                }
            }
        }
        assert_eq!(c.members(), &brute[..]);
        assert_eq!(s.log_lambda(&gr("1")).unwrap().members(), &es(&[&[0, 0]])[..]);
        assert_eq!(s.log_lambda(&gr("1/3")), Err(SpectrumError::NotInImage));
        assert_eq!(s.log_lambda(&gr("0")), Err(SpectrumError::ZeroValue));
    }

    #[test]
    fn class_order_and_successor() {
        let s = spectrum_of(&["1/2", "1/4"]);
        let c = |v: &[u32]| s.weight_class(&e(v)).unwrap();
        assert_eq!(s.class_compare(&c(&[0, 0]), &c(&[0, 1])).unwrap(), Ordering::Less);
        assert_eq!(s.class_compare(&c(&[1, 0]), &c(&[0, 1])).unwrap(), Ordering::Less);
        assert_eq!(s.class_compare(&c(&[2, 0]), &c(&[0, 1])).unwrap(), Ordering::Equal);
        assert_eq!(s.class_successor(&c(&[0, 0])), c(&[1, 0]));
        assert_eq!(s.class_successor(&c(&[1, 0])), c(&[2, 0]));
        let one = spectrum_of(&["1/2"]);
        for k in 0..5u32 {
            assert_eq!(one.class_successor(&one.weight_class(&e(&[k])).unwrap()).representative(), &e(&[k + 1]));
        }
        let other = spectrum_of(&["1/2", "1/3"]);
        assert!(other.class_compare(&c(&[0, 0]), &other.weight_class(&e(&[0, 1])).unwrap()).is_ok());
        let three = spectrum_of(&["1/2", "1/3", "1/5"]);
        assert!(s.class_compare(&c(&[1, 0]), &three.weight_class(&e(&[1, 0, 0])).unwrap()).is_err());
    }

    #[test]
    fn successor_oracle_by_sorting_all_classes() {
        // sort every class reachable below a modulus cut by representative
        let s = spectrum_of(&["1/2", "1/2*i", "-1/4"]);
        let all = s.exponents_with_modulus_at_least(&Rational::new(1.into(), (1 << 12).into()));
        let mut reps: Vec<Exponent> = all
            .iter()
            .filter(|a| s.weight_class(a).unwrap().representative() == *a)
            .cloned()
            .collect();
        reps.sort_by(|a, b| s.lambda_compare(a, b));
        for w in reps.windows(2).take(30) {
            let c = s.weight_class(&w[0]).unwrap();
            assert_eq!(s.class_successor(&c).representative(), &w[1]);
        }
    }

    #[test]
    fn relation_lattice_examples() {
        assert_eq!(spectrum_of(&["1/2", "1/4"]).relation_lattice().basis, alloc::vec![alloc::vec![2, -1]]);
        assert!(spectrum_of(&["1/2", "1/3"]).relation_lattice().basis.is_empty());
        let l = spectrum_of(&["-1/2", "1/2*i", "1/2*i"]).relation_lattice();
        assert!(l.basis.contains(&alloc::vec![0, 1, -1]));
        // completeness by brute force over small vectors
        let s = spectrum_of(&["1/2", "1/4"]);
        let lat = s.relation_lattice();
        for a in -6..=6 {
            for b in -6..=6 {
                assert_eq!(s.signed_value(&[a, b]).is_one(), lat.contains(&[a, b]));
            }
        }
    }

    fn weight_oracle(s: &OrderedSpectrum) -> Vec<Vec<u64>> {
        // positive vectors in a small box orthogonal to every λ^v = 1 relation
        let lat = s.relation_lattice();
        let d = s.dim();
        let mut out = Vec::new();
        let mut cur = alloc::vec![1u64; d];
        loop {
            if lat.basis.iter().all(|v| v.iter().zip(&cur).map(|(a, b)| a * *b as i64).sum::<i64>() == 0) {
                out.push(cur.clone());
            }
            let mut k = 0;
            while k < d && cur[k] == 6 {
                cur[k] = 1;
                k += 1;
            }
            if k == d {
                break;
            }
            cur[k] += 1;
        }
        out
    }

    #[test]
    fn weight_vector_examples() {
        let s = spectrum_of(&["1/2", "1/4"]);
        assert_eq!(weight_oracle(&s)[0], alloc::vec![1, 2]);
        assert_eq!(s.weight_vector().unwrap(), alloc::vec![1, 2]);
        assert_eq!(spectrum_of(&["1/2", "1/3"]).weight_vector().unwrap(), alloc::vec![1, 1]);
        assert_eq!(spectrum_of(&["1/2", "1/2"]).weight_vector().unwrap(), alloc::vec![1, 1]);
        let t = spectrum_of(&["-1/2", "1/2*i", "1/2*i"]);
        assert_eq!(t.weight_vector().unwrap(), alloc::vec![1, 1, 1]);
        // cancelling primes need a finer log approximation
        let u = spectrum_of(&["2/3", "4/9"]);
        assert_eq!(u.weight_vector().unwrap(), alloc::vec![1, 2]);
    }
}
