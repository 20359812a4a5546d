//! Exact arithmetic over the Gaussian rationals `Q(i)`.
//!
//! Every coefficient and every eigenvalue handled by this crate lives in
//! `Q(i)`. Restricting to this field keeps resonance tests (`λ^α = λ_i`) and
//! λ-weight comparisons (`λ^(α-β) = 1`) decidable by plain equality; spectra
//! with irrational or non-Gaussian algebraic eigenvalues are rejected upstream.
//!
//! The module also factors Gaussian rationals over the Gaussian primes, which
//! is how the multiplicative relation lattice of a spectrum is computed.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use core::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Arbitrary-precision rational number, always kept in lowest terms.
pub type Rational = num_rational::BigRational;

/// Errors raised by exact arithmetic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExactError {
    /// `0^k` with `k < 0`, or the inverse of zero.
    ZeroDivision,
    /// Factorization of zero was requested.
    FactorZero,
    /// A textual Gaussian rational could not be parsed.
    Parse(String),
}

impl fmt::Display for ExactError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExactError::ZeroDivision => write!(f, "division by zero"),
            ExactError::FactorZero => write!(f, "cannot factor zero"),
            ExactError::Parse(s) => write!(f, "invalid Gaussian rational: {s}"),
        }
    }
}

impl core::error::Error for ExactError {}

/// A complex number `re + im·i` with rational parts.
///
/// The derived ordering is lexicographic on `(re, im)`. It carries no
/// algebraic meaning and only serves deterministic tie-breaking and map keys.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct GaussianRational {
    re: Rational,
    im: Rational,
}

impl GaussianRational {
    pub fn new(re: Rational, im: Rational) -> Self {
        GaussianRational { re, im }
    }

    pub fn zero() -> Self {
        GaussianRational { re: Rational::zero(), im: Rational::zero() }
    }

    pub fn one() -> Self {
        Self::from_integer(1)
    }

    pub fn i() -> Self {
        GaussianRational { re: Rational::zero(), im: Rational::one() }
    }

    pub fn from_integer(n: i64) -> Self {
        GaussianRational { re: Rational::from_integer(BigInt::from(n)), im: Rational::zero() }
    }

    pub fn from_rational(re: Rational) -> Self {
        GaussianRational { re, im: Rational::zero() }
    }

    /// `num/den + 0i`. Panics if `den == 0`.
    pub fn ratio(num: i64, den: i64) -> Self {
        Self::from_rational(Rational::new(BigInt::from(num), BigInt::from(den)))
    }

    /// `(a/b) + (c/d)i`. Panics on a zero denominator.
    pub fn from_parts(a: i64, b: i64, c: i64, d: i64) -> Self {
        GaussianRational {
            re: Rational::new(BigInt::from(a), BigInt::from(b)),
            im: Rational::new(BigInt::from(c), BigInt::from(d)),
        }
    }

    pub fn re(&self) -> &Rational {
        &self.re
    }

    pub fn im(&self) -> &Rational {
        &self.im
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        GaussianRational { re: self.re.clone(), im: -self.im.clone() }
    }

    /// `re² + im²`, exactly.
    pub fn modulus_squared(&self) -> Rational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn inv(&self) -> Result<Self, ExactError> {
        if self.is_zero() {
            return Err(ExactError::ZeroDivision);
        }
        let n = self.modulus_squared();
        Ok(GaussianRational { re: &self.re / &n, im: -(&self.im / &n) })
    }

    /// Exact `self^k`; negative exponents invert first.
    pub fn pow(&self, k: i64) -> Result<Self, ExactError> {
        if k < 0 {
            return Ok(self.inv()?.pow_u(k.unsigned_abs()));
        }
        Ok(self.pow_u(k as u64))
    }

    pub fn pow_u(&self, mut k: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Least common multiple of the two component denominators.
    pub fn denominator_lcm(&self) -> BigInt {
        self.re.denom().lcm(self.im.denom())
    }

    /// Writes `self = g / den` with `g` a Gaussian integer and `den > 0`.
    pub fn to_gaussian_integer_over(&self) -> (GaussianInteger, BigInt) {
        let den = self.denominator_lcm();
        let re = self.re.numer() * (&den / self.re.denom());
        let im = self.im.numer() * (&den / self.im.denom());
        (GaussianInteger::new(re, im), den)
    }

    pub fn from_gaussian_integer(g: &GaussianInteger) -> Self {
        GaussianRational {
            re: Rational::from_integer(g.re.clone()),
            im: Rational::from_integer(g.im.clone()),
        }
    }
}

/// Free-function form of [`GaussianRational::modulus_squared`].
pub fn modulus_squared(z: &GaussianRational) -> Rational {
    z.modulus_squared()
}

/// Free-function form of [`GaussianRational::pow`].
pub fn power(z: &GaussianRational, k: i64) -> Result<GaussianRational, ExactError> {
    z.pow(k)
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $body:expr) => {
        impl<'a, 'b> $tr<&'b GaussianRational> for &'a GaussianRational {
            type Output = GaussianRational;
            fn $method(self, rhs: &'b GaussianRational) -> GaussianRational {
                let f: fn(&GaussianRational, &GaussianRational) -> GaussianRational = $body;
                f(self, rhs)
            }
        }
        impl $tr<GaussianRational> for GaussianRational {
            type Output = GaussianRational;
            fn $method(self, rhs: GaussianRational) -> GaussianRational {
                (&self).$method(&rhs)
            }
        }
        impl<'b> $tr<&'b GaussianRational> for GaussianRational {
            type Output = GaussianRational;
            fn $method(self, rhs: &'b GaussianRational) -> GaussianRational {
                (&self).$method(rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a, b| GaussianRational { re: &a.re + &b.re, im: &a.im + &b.im });
forward_binop!(Sub, sub, |a, b| GaussianRational { re: &a.re - &b.re, im: &a.im - &b.im });
forward_binop!(Mul, mul, |a, b| GaussianRational {
    re: &a.re * &b.re - &a.im * &b.im,
    im: &a.re * &b.im + &a.im * &b.re,
});
// Panics on division by zero, like the rational division it wraps.
forward_binop!(Div, div, |a, b| a * &b.inv().expect("division by zero Gaussian rational"));

impl Neg for GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational { re: -self.re, im: -self.im }
    }
}

impl Neg for &GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational { re: -self.re.clone(), im: -self.im.clone() }
    }
}

impl AddAssign<&GaussianRational> for GaussianRational {
    fn add_assign(&mut self, rhs: &GaussianRational) {
        self.re += &rhs.re;
        self.im += &rhs.im;
    }
}

impl SubAssign<&GaussianRational> for GaussianRational {
    fn sub_assign(&mut self, rhs: &GaussianRational) {
        self.re -= &rhs.re;
        self.im -= &rhs.im;
    }
}

impl MulAssign<&GaussianRational> for GaussianRational {
    fn mul_assign(&mut self, rhs: &GaussianRational) {
        *self = &*self * rhs;
    }
}

impl From<i64> for GaussianRational {
    fn from(n: i64) -> Self {
        Self::from_integer(n)
    }
}

impl From<Rational> for GaussianRational {
    fn from(r: Rational) -> Self {
        Self::from_rational(r)
    }
}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", self.re),
            (true, false) => write!(f, "{}*i", self.im),
            (false, false) => {
                if self.im.is_negative() {
                    write!(f, "{}-{}*i", self.re, -self.im.clone())
                } else {
                    write!(f, "{}+{}*i", self.re, self.im)
                }
            }
        }
    }
}

impl fmt::Debug for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    if s.is_empty() {
        return None;
    }
    let ok_digits = |t: &str| {
        let t = t.strip_prefix(['+', '-']).unwrap_or(t);
        !t.is_empty() && t.bytes().all(|b| b.is_ascii_digit())
    };
    match s.split_once('/') {
        Some((n, d)) => {
            if !ok_digits(n) || !d.bytes().all(|b| b.is_ascii_digit()) || d.is_empty() {
                return None;
            }
            let n = BigInt::from_str(n).ok()?;
            let d = BigInt::from_str(d).ok()?;
            if d.is_zero() {
                return None;
            }
            Some(Rational::new(n, d))
        }
        None => {
            if !ok_digits(s) {
                return None;
            }
            Some(Rational::from_integer(BigInt::from_str(s).ok()?))
        }
    }
}

/// Parses `"a/b"`, `"a/b*i"`, `"a/b+c/d*i"`, integer shorthand and bare `"i"`.
impl FromStr for GaussianRational {
    type Err = ExactError;

    fn from_str(src: &str) -> Result<Self, Self::Err> {
        let err = || ExactError::Parse(src.to_string());
        let s: String = src.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(err());
        }
        // split into signed terms at top-level '+'/'-' (never directly after '/')
        let bytes = s.as_bytes();
        let mut terms = Vec::new();
        let mut start = 0;
        for k in 1..bytes.len() {
            if (bytes[k] == b'+' || bytes[k] == b'-') && bytes[k - 1] != b'/' {
                terms.push(&s[start..k]);
                start = k;
            }
        }
        terms.push(&s[start..]);
        if terms.len() > 2 {
            return Err(err());
        }
        let mut re: Option<Rational> = None;
        let mut im: Option<Rational> = None;
        for t in terms {
            let (neg, body) = match t.as_bytes()[0] {
                b'-' => (true, &t[1..]),
                b'+' => (false, &t[1..]),
                _ => (false, t),
            };
            let (value, imag) = if body == "i" {
                (Rational::one(), true)
            } else if let Some(c) = body.strip_suffix("*i") {
                (parse_rational(c).ok_or_else(err)?, true)
            } else {
                (parse_rational(body).ok_or_else(err)?, false)
            };
            if body.starts_with(['+', '-']) {
                return Err(err());
            }
            let value = if neg { -value } else { value };
            let slot = if imag { &mut im } else { &mut re };
            if slot.is_some() {
                return Err(err());
            }
            *slot = Some(value);
        }
        Ok(GaussianRational { re: re.unwrap_or_default(), im: im.unwrap_or_default() })
    }
}

/// Element of `Z[i]`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GaussianInteger {
    pub re: BigInt,
    pub im: BigInt,
}

impl fmt::Debug for GaussianInteger {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for GaussianInteger {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&GaussianRational::from_gaussian_integer(self), f)
    }
}

impl GaussianInteger {
    pub fn new(re: BigInt, im: BigInt) -> Self {
        GaussianInteger { re, im }
    }

    pub fn from_i64(re: i64, im: i64) -> Self {
        GaussianInteger { re: BigInt::from(re), im: BigInt::from(im) }
    }

    pub fn one() -> Self {
        Self::from_i64(1, 0)
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn norm(&self) -> BigInt {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn mul(&self, o: &GaussianInteger) -> GaussianInteger {
        GaussianInteger {
            re: &self.re * &o.re - &self.im * &o.im,
            im: &self.re * &o.im + &self.im * &o.re,
        }
    }

    /// `self · i^k`.
    pub fn mul_unit(&self, k: u8) -> GaussianInteger {
        match k % 4 {
            0 => self.clone(),
            1 => GaussianInteger { re: -self.im.clone(), im: self.re.clone() },
            2 => GaussianInteger { re: -self.re.clone(), im: -self.im.clone() },
            _ => GaussianInteger { re: self.im.clone(), im: -self.re.clone() },
        }
    }

    /// Exact quotient, or `None` if `d` does not divide `self`.
    pub fn div_exact(&self, d: &GaussianInteger) -> Option<GaussianInteger> {
        let n = d.norm();
        if n.is_zero() {
            return None;
        }
        let re = &self.re * &d.re + &self.im * &d.im;
        let im = &self.im * &d.re - &self.re * &d.im;
        let (qr, rr) = re.div_rem(&n);
        let (qi, ri) = im.div_rem(&n);
        if rr.is_zero() && ri.is_zero() {
            Some(GaussianInteger { re: qr, im: qi })
        } else {
            None
        }
    }

    /// If `self` is a unit, returns `k` with `self = i^k`.
    pub fn as_unit(&self) -> Option<u8> {
        let one = BigInt::one();
        let m1 = -BigInt::one();
        match (&self.re, &self.im) {
            (r, i) if *r == one && i.is_zero() => Some(0),
            (r, i) if r.is_zero() && *i == one => Some(1),
            (r, i) if *r == m1 && i.is_zero() => Some(2),
            (r, i) if r.is_zero() && *i == m1 => Some(3),
            _ => None,
        }
    }

    /// Returns `(k, c)` with `self = i^k · c` and `c` the canonical associate:
    /// `re > 0`, `re ≥ |im|`, and `im ≥ 0` when `re = |im|`.
    pub fn canonical_associate(&self) -> (u8, GaussianInteger) {
        assert!(!self.is_zero(), "zero has no canonical associate");
        for k in 0..4u8 {
            // c = self · i^{-k}
            let c = self.mul_unit((4 - k) % 4);
            let abs_im = c.im.abs();
            let ok = c.re.is_positive()
                && c.re >= abs_im
                && (c.re != abs_im || !c.im.is_negative());
            if ok {
                return (k, c);
            }
        }
        unreachable!("every nonzero Gaussian integer has a canonical associate")
    }
}

/// A power of `i`, stored as the exponent `k ∈ {0,1,2,3}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Unit(pub u8);

impl Unit {
    pub fn value(self) -> GaussianRational {
        match self.0 % 4 {
            0 => GaussianRational::one(),
            1 => GaussianRational::i(),
            2 => -GaussianRational::one(),
            _ => -GaussianRational::i(),
        }
    }
}

/// `unit · Π π^e` over canonical Gaussian primes, with `e ∈ Z`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaussianFactorization {
    pub unit: Unit,
    /// Sorted by `(norm, re, im)`; exponents are nonzero.
    pub factors: Vec<(GaussianInteger, i64)>,
}

impl GaussianFactorization {
    /// Multiplies the factorization back out.
    pub fn product(&self) -> GaussianRational {
        let mut acc = self.unit.value();
        for (p, e) in &self.factors {
            let p = GaussianRational::from_gaussian_integer(p);
            acc = &acc * &p.pow(*e).expect("Gaussian primes are nonzero");
        }
        acc
    }
}

/// Trial-division factorization of a positive integer into rational primes.
pub fn factor_natural(n: &BigUint) -> Vec<(BigUint, u32)> {
    let mut out = Vec::new();
    let mut n = n.clone();
    if n.is_zero() {
        return out;
    }
    let mut push = |p: BigUint, e: u32| out.push((p, e));
    for p in [2u32, 3] {
        let mut e = 0;
        while (&n % p).is_zero() {
            n /= p;
            e += 1;
        }
        if e > 0 {
            push(BigUint::from(p), e);
        }
    }
    // 6k ± 1 wheel
    let mut d = BigUint::from(5u32);
    let mut step = 2u32;
    while &d * &d <= n {
        let mut e = 0;
        while (&n % &d).is_zero() {
            n /= &d;
            e += 1;
        }
        if e > 0 {
            push(d.clone(), e);
        }
        d += step;
        step = 6 - step;
    }
    if !n.is_one() {
        push(n, 1);
    }
    out
}

/// Finds `(a, b)` with `a² + b² = p` for a prime `p ≡ 1 (mod 4)`.
fn two_squares(p: &BigUint) -> (BigUint, BigUint) {
    // x² ≡ -1 (mod p) from a quadratic non-residue, then the Hermite-Serret descent
    let one = BigUint::one();
    let pm1 = p - &one;
    let half = &pm1 >> 1;
    let quarter = &pm1 >> 2;
    let mut c = BigUint::from(2u32);
    let x = loop {
        if c.modpow(&half, p) == pm1 {
            break c.modpow(&quarter, p);
        }
        c += 1u32;
    };
    let (mut a, mut b) = (p.clone(), x);
    while &b * &b > *p {
        let r = &a % &b;
        a = b;
        b = r;
    }
    let rest = p - &b * &b;
    let c = rest.sqrt();
    debug_assert!(&c * &c == rest);
    (b, c)
}

fn factor_gaussian_integer_into(
    g: &GaussianInteger,
    sign: i64,
    unit: &mut u8,
    acc: &mut Vec<(GaussianInteger, i64)>,
) {
    let mut g = g.clone();
    let norm = g.norm().to_biguint().expect("norm is non-negative");
    let bump = |acc: &mut Vec<(GaussianInteger, i64)>, p: &GaussianInteger, e: i64| {
        if let Some(slot) = acc.iter_mut().find(|(q, _)| q == p) {
            slot.1 += e;
        } else {
            acc.push((p.clone(), e));
        }
    };
    for (p, _) in factor_natural(&norm) {
        let pi = BigInt::from(p.clone());
        let p4 = (&p % 4u32).to_u32().unwrap_or(0);
        let primes: Vec<GaussianInteger> = if p4 == 2 {
            alloc::vec![GaussianInteger::from_i64(1, 1)]
        } else if p4 == 3 {
            alloc::vec![GaussianInteger::new(pi, BigInt::zero())]
        } else {
            let (a, b) = two_squares(&p);
            let (a, b) = (BigInt::from(a), BigInt::from(b));
            let pi1 = GaussianInteger::new(a.clone(), b.clone()).canonical_associate().1;
            let pi2 = GaussianInteger::new(a, -b).canonical_associate().1;
            alloc::vec![pi1, pi2]
        };
        for pr in primes {
            let mut k = 0i64;
            while let Some(q) = g.div_exact(&pr) {
                g = q;
                k += 1;
            }
            if k > 0 {
                bump(acc, &pr, sign * k);
            }
        }
    }
    let u = g.as_unit().expect("cofactor after removing all primes is a unit");
    *unit = if sign > 0 { (*unit + u) % 4 } else { (*unit + 4 - u) % 4 };
}

/// Factors a nonzero Gaussian rational over the Gaussian primes.
pub fn factor(z: &GaussianRational) -> Result<GaussianFactorization, ExactError> {
    if z.is_zero() {
        return Err(ExactError::FactorZero);
    }
    let (g, den) = z.to_gaussian_integer_over();
    let mut unit = 0u8;
    let mut acc = Vec::new();
    factor_gaussian_integer_into(&g, 1, &mut unit, &mut acc);
    factor_gaussian_integer_into(&GaussianInteger::new(den, BigInt::zero()), -1, &mut unit, &mut acc);
    acc.retain(|(_, e)| *e != 0);
    acc.sort_by(|(a, _), (b, _)| a.norm().cmp(&b.norm()).then_with(|| a.cmp(b)));
    Ok(GaussianFactorization { unit: Unit(unit), factors: acc })
}

/// All divisors of a nonzero Gaussian integer, up to units (canonical associates).
pub fn gaussian_divisors(g: &GaussianInteger) -> Vec<GaussianInteger> {
    let f = factor(&GaussianRational::from_gaussian_integer(g)).expect("nonzero");
    let mut divs = alloc::vec![GaussianInteger::one()];
    for (p, e) in &f.factors {
        let mut next = Vec::with_capacity(divs.len() * (*e as usize + 1));
        for d in &divs {
            let mut cur = d.clone();
            next.push(cur.clone());
            for _ in 0..*e {
                cur = cur.mul(p);
                next.push(cur.clone());
            }
        }
        divs = next;
    }
    divs
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gr(s: &str) -> GaussianRational {
        s.parse().unwrap()
    }

    #[test]
    fn modulus_squared_examples() {
        assert_eq!(modulus_squared(&gr("1/2*i")), Rational::new(1.into(), 4.into()));
        assert_eq!(modulus_squared(&gr("0")), Rational::zero());
        assert_eq!(modulus_squared(&gr("-1/2+1/2*i")), Rational::new(1.into(), 2.into()));
    }

    #[test]
    fn power_examples() {
        assert_eq!(power(&gr("1/2*i"), 2).unwrap(), gr("-1/4"));
        assert_eq!(power(&gr("3/7-2*i"), 0).unwrap(), gr("1"));
        assert_eq!(power(&gr("1/2"), -1).unwrap(), gr("2"));
        assert_eq!(power(&gr("0"), -1), Err(ExactError::ZeroDivision));
    }

    #[test]
    fn factor_examples() {
        let two = factor(&gr("2")).unwrap();
        assert_eq!(two.unit, Unit(3));
        assert_eq!(two.factors, alloc::vec![(GaussianInteger::from_i64(1, 1), 2)]);

        let i = factor(&gr("i")).unwrap();
        assert_eq!(i.unit, Unit(1));
        assert!(i.factors.is_empty());

        let half = factor(&gr("1/2")).unwrap();
        assert_eq!(half.unit, Unit(1));
        assert_eq!(half.factors, alloc::vec![(GaussianInteger::from_i64(1, 1), -2)]);
        // brute force: i · (1+i)^-2 = i / (2i) = 1/2
        let back = &GaussianRational::i() / &(&gr("1+1*i") * &gr("1+1*i"));
        assert_eq!(back, gr("1/2"));
        assert_eq!(factor(&gr("0")), Err(ExactError::FactorZero));
    }

    #[test]
    fn factor_splits_primes_one_mod_four() {
        let f = factor(&gr("5")).unwrap();
        assert_eq!(f.factors.len(), 2);
        assert_eq!(f.product(), gr("5"));
        let f = factor(&gr("3/65+7/13*i")).unwrap();
        assert_eq!(f.product(), gr("3/65+7/13*i"));
    }

    #[test]
    fn canonical_associate_convention() {
        for (re, im) in [(1, 1), (-1, 1), (-1, -1), (1, -1)] {
            assert_eq!(GaussianInteger::from_i64(re, im).canonical_associate().1, GaussianInteger::from_i64(1, 1));
        }
        assert_eq!(GaussianInteger::from_i64(-1, 2).canonical_associate().1, GaussianInteger::from_i64(2, 1));
        assert_eq!(GaussianInteger::from_i64(0, -3).canonical_associate().1, GaussianInteger::from_i64(3, 0));
    }

    #[test]
    fn parse_and_display() {
        assert_eq!(gr("2"), gr("2/1"));
        assert_eq!(gr("-1/2+1/3*i").to_string(), "-1/2+1/3*i");
        assert_eq!(gr("1/2 - 1/3*i").to_string(), "1/2-1/3*i");
        assert_eq!(gr("-i"), -GaussianRational::i());
        assert_eq!(gr("+3/6*i").to_string(), "1/2*i");
        for bad in ["", "1/0", "x", "1+2+3*i", "1/2/3", "--1", "1+2", "i*i"] {
            assert!(bad.parse::<GaussianRational>().is_err(), "{bad}");
        }
    }

    #[test]
    fn divisors_of_two() {
        let d = gaussian_divisors(&GaussianInteger::from_i64(2, 0));
        assert_eq!(d.len(), 3);
    }
}
