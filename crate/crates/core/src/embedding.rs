//! Embedding dimension: the `I ⊆ m²` test, elimination of a smooth variable,
//! and the decidable consequences of a good contracting embedding.

use alloc::vec::Vec;

use crate::exactnum::GaussianRational;
use crate::invariant::{truncated_membership, IdealPresentation, InvariantError};
use crate::linalg::{gaussian_rational_roots, Matrix};
use crate::polyring::{compose, substitute, PolyMap, Polynomial};
use crate::spectrum::Exponent;

type GR = GaussianRational;

/// Linear parts of the generators and whether they all vanish.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EmbeddingReport {
    pub in_m2: bool,
    /// First generator with a nonzero linear part.
    pub offending_generator: Option<usize>,
    /// Row `k` holds the linear coefficients of generator `k`.
    pub linear_part: Matrix,
}

pub fn check_m2(ideal: &IdealPresentation) -> EmbeddingReport {
    let d = ideal.nvars();
    let rows: Vec<Vec<GR>> = ideal
        .generators()
        .iter()
        .map(|g| (0..d).map(|j| g.coeff(&Exponent::unit(d, j))).collect())
        .collect();
    let offending_generator = rows.iter().position(|r| r.iter().any(|c| !c.is_zero()));
    let linear_part = if rows.is_empty() { Matrix::zeros(0, d) } else { Matrix::from_rows(rows) };
    EmbeddingReport { in_m2: offending_generator.is_none(), offending_generator, linear_part }
}

/// One elimination: `x_eliminated = jet(remaining variables)` on the germ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Elimination {
    /// Index of the generator that was solved.
    pub generator: usize,
    /// Index of the eliminated coordinate.
    pub eliminated: usize,
    /// The solution jet in the remaining `d − 1` variables.
    pub jet: Polynomial,
    /// The other generators after substitution, zeros dropped.
    pub ideal: IdealPresentation,
    pub truncation_degree: u32,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EmbeddingError {
    /// Every generator lies in `m²`.
    NoLinearPart,
    Invariant(InvariantError),
}

impl core::fmt::Display for EmbeddingError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            EmbeddingError::NoLinearPart => write!(f, "no generator has a nonzero linear part"),
            EmbeddingError::Invariant(e) => write!(f, "{e}"),
        }
    }
}

impl core::error::Error for EmbeddingError {}

impl From<InvariantError> for EmbeddingError {
    fn from(e: InvariantError) -> Self {
        EmbeddingError::Invariant(e)
    }
}

/// The coordinates of `C^d` in terms of `C^{d−1}` with `jet` at position `k`.
fn insertion(d: usize, k: usize, jet: &Polynomial) -> Vec<Polynomial> {
    (0..d)
        .map(|j| match j.cmp(&k) {
            core::cmp::Ordering::Less => Polynomial::variable(d - 1, j),
            core::cmp::Ordering::Equal => jet.clone(),
            core::cmp::Ordering::Greater => Polynomial::variable(d - 1, j - 1),
        })
        .collect()
}

/// Solves the chosen generator for the last variable with a nonzero linear
/// coefficient and substitutes the jet into the other generators.
pub fn eliminate_variable(ideal: &IdealPresentation, n: u32) -> Result<Elimination, EmbeddingError> {
    let d = ideal.nvars();
    let report = check_m2(ideal);
    let lin = &report.linear_part;
    let k = (0..d).rev().find(|&j| (0..lin.rows()).any(|r| !lin.get(r, j).is_zero())).ok_or(EmbeddingError::NoLinearPart)?;
    let gi = (0..lin.rows()).find(|&r| !lin.get(r, k).is_zero()).expect("column has a nonzero entry");
    let g = &ideal.generators()[gi];
    let c = lin.get(gi, k).clone();
    let c_inv = c.inv().expect("nonzero");
    // x_k = −(g − c·x_k)/c, iterated; each pass fixes one more degree
    let rest = &g.clone() - &Polynomial::monomial(Exponent::unit(d, k), c);
    let rest = rest.scale(&-c_inv);
    let mut jet = Polynomial::zero(d - 1);
    for _ in 0..n.max(1) {
        let next = substitute(&rest, &insertion(d, k, &jet), d - 1, Some(n)).map_err(InvariantError::from)?;
        if next == jet {
            break;
        }
        jet = next;
    }
    let sub = insertion(d, k, &jet);
    let mut gens = Vec::new();
    for (j, h) in ideal.generators().iter().enumerate() {
        if j == gi {
            continue;
        }
        let reduced = substitute(h, &sub, d - 1, Some(n)).map_err(InvariantError::from)?;
        if !reduced.is_zero() {
            gens.push(reduced);
        }
    }
    Ok(Elimination { generator: gi, eliminated: k, jet, ideal: IdealPresentation::new(d - 1, gens)?, truncation_degree: n })
}

/// Eliminates variables until the ideal lies in `m²`.
pub fn minimal_embedding(ideal: &IdealPresentation, n: u32) -> Result<(IdealPresentation, Vec<Elimination>), EmbeddingError> {
    let mut cur = ideal.clone();
    let mut steps = Vec::new();
    while !check_m2(&cur).in_m2 {
        let step = eliminate_variable(&cur, n)?;
        cur = step.ideal.clone();
        steps.push(step);
    }
    Ok((cur, steps))
}

/// Whether every root of `p` (coefficients low to high) lies in the open
/// unit disk, by the Schur–Cohn recursion.
pub fn roots_in_unit_disk(p: &[GR]) -> bool {
    let mut p: Vec<GR> = p.to_vec();
    while p.last().is_some_and(GR::is_zero) {
        p.pop();
    }
    while p.len() > 1 {
        let n = p.len() - 1;
        let a0 = p[0].clone();
        let an = p[n].clone();
        if a0.modulus_squared() >= an.modulus_squared() {
            return false;
        }
        // p₁(z) = (conj(a_n)·p(z) − a_0·p*(z)) / z with p*(z) = Σ conj(a_{n−k}) z^k
        let next: Vec<GR> = (1..=n).map(|k| &(&an.conj() * &p[k]) - &(&a0 * &p[n - k].conj())).collect();
        p = next;
        while p.last().is_some_and(GR::is_zero) {
            p.pop();
        }
    }
    true
}

/// Decidable consequences of a good contracting embedding.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtensionReport {
    pub invertible: bool,
    pub contracting: bool,
    /// All eigenvalues are Gaussian rationals (and were checked one by one).
    pub spectrum_rational: bool,
    /// Each `g ∘ F` lies in `I` modulo `m^{bound+1}`.
    pub invariant: bool,
    pub bound: u32,
}

pub fn check_extension(f: &PolyMap, ideal: &IdealPresentation, bound: u32) -> Result<ExtensionReport, EmbeddingError> {
    let l = f.linear_part();
    let invertible = !l.det().is_zero();
    let cp = l.char_poly();
    let (roots, residual) = gaussian_rational_roots(&cp, &l.diagonal());
    let spectrum_rational = residual.len() <= 1;
    let contracting = invertible
        && if spectrum_rational {
            roots.iter().all(|z| z.modulus_squared() < num_traits::One::one())
        } else {
            roots_in_unit_disk(&cp)
        };
    let gens = ideal.generators();
    let mut invariant = true;
    for g in gens {
        let img = compose(g, f, Some(bound)).map_err(InvariantError::from)?;
        if truncated_membership(&img, gens, bound).is_none() {
            invariant = false;
            break;
        }
    }
    Ok(ExtensionReport { invertible, contracting, spectrum_rational, invariant, bound })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn gr(s: &str) -> GR {
        s.parse().unwrap()
    }

    fn poly(d: usize, terms: &[(&[u32], &str)]) -> Polynomial {
        Polynomial::from_terms(d, terms.iter().map(|(a, c)| (Exponent::new(a.to_vec()), gr(c)))).unwrap()
    }

    fn ideal(d: usize, gens: Vec<Polynomial>) -> IdealPresentation {
        IdealPresentation::new(d, gens).unwrap()
    }

    #[test]
    fn m2_examples() {
        let r = check_m2(&ideal(2, vec![poly(2, &[(&[2, 0], "1"), (&[0, 1], "-1")])]));
        assert!(!r.in_m2);
        assert_eq!(r.offending_generator, Some(0));
        assert!(check_m2(&ideal(2, vec![poly(2, &[(&[2, 0], "1"), (&[0, 2], "-1")])])).in_m2);
        assert!(check_m2(&ideal(2, vec![poly(2, &[(&[2, 0], "1"), (&[0, 3], "1")]), poly(2, &[(&[1, 1], "1")])])).in_m2);
    }

    #[test]
    fn eliminate_smooth_curve() {
        let step = eliminate_variable(&ideal(2, vec![poly(2, &[(&[2, 0], "1"), (&[0, 1], "-1")])]), 4).unwrap();
        assert_eq!(step.eliminated, 1);
        assert_eq!(step.jet, poly(1, &[(&[2], "1")]));
        assert!(step.ideal.is_empty());
    }

    #[test]
    fn eliminate_then_cusp_remains() {
        let i = ideal(
            3,
            vec![poly(3, &[(&[0, 1, 0], "1"), (&[2, 0, 0], "-1")]), poly(3, &[(&[0, 0, 2], "1"), (&[3, 0, 0], "-1")])],
        );
        let (rest, steps) = minimal_embedding(&i, 5).unwrap();
        assert_eq!(steps.len(), 1);
        assert_eq!(steps[0].eliminated, 1);
        assert_eq!(rest.generators(), &[poly(2, &[(&[0, 2], "1"), (&[3, 0], "-1")])]);
    }

    #[test]
    fn implicit_jet_solves_generator() {
        // y + x² + x·y² = 0 has a genuinely infinite solution series
        let g = poly(2, &[(&[0, 1], "2"), (&[2, 0], "1"), (&[1, 2], "1")]);
        let n = 9;
        let step = eliminate_variable(&ideal(2, vec![g.clone()]), n).unwrap();
        let back = substitute(&g, &insertion(2, 1, &step.jet), 1, Some(n)).unwrap();
        assert!(back.is_zero());
    }

    #[test]
    fn no_linear_part_is_an_error() {
        let i = ideal(2, vec![poly(2, &[(&[2, 0], "1"), (&[0, 2], "1")])]);
        assert_eq!(eliminate_variable(&i, 3), Err(EmbeddingError::NoLinearPart));
    }

    #[test]
    fn schur_cohn() {
        // (z − 1/2)(z + 1/3)
        assert!(roots_in_unit_disk(&[gr("-1/6"), gr("-1/6"), gr("1")]));
        // z² − 2
        assert!(!roots_in_unit_disk(&[gr("-2"), gr("0"), gr("1")]));
        // z² − 1/2: irrational roots of modulus 0.707
        assert!(roots_in_unit_disk(&[gr("-1/2"), gr("0"), gr("1")]));
        // z² − z/2 + 1: product of roots has modulus 1
        assert!(!roots_in_unit_disk(&[gr("1"), gr("-1/2"), gr("1")]));
        // (z − i/2)(z − 3/4)
        assert!(roots_in_unit_disk(&[gr("3/8*i"), gr("-3/4-1/2*i"), gr("1")]));
    }

    #[test]
    fn extension_reports() {
        let f = PolyMap::new(vec![poly(2, &[(&[1, 0], "1/2")]), poly(2, &[(&[0, 1], "1/4")])]).unwrap();
        let i = ideal(2, vec![poly(2, &[(&[2, 0], "1"), (&[0, 1], "-1")])]);
        let r = check_extension(&f, &i, 4).unwrap();
        assert!(r.invertible && r.contracting && r.invariant);

        let g = PolyMap::new(vec![poly(2, &[(&[1, 0], "1/2")]), poly(2, &[(&[0, 1], "2")])]).unwrap();
        assert!(!check_extension(&g, &i, 4).unwrap().contracting);

        let h = PolyMap::new(vec![poly(2, &[(&[2, 0], "1")]), poly(2, &[(&[0, 1], "1")])]).unwrap();
        let r = check_extension(&h, &i, 4).unwrap();
        assert!(!r.invertible && !r.contracting);

        // x ↦ (y/2, x/4): eigenvalues ±1/(2√2) are not Gaussian rationals
        let rot = PolyMap::new(vec![poly(2, &[(&[0, 1], "1/2")]), poly(2, &[(&[1, 0], "1/4")])]).unwrap();
        let r = check_extension(&rot, &i, 4).unwrap();
        assert!(!r.spectrum_rational && r.contracting);
    }
}
