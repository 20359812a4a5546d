//! JSON output documents. Coefficients and polynomials are stored as strings
//! in the expression syntax of [`crate::expr`], so every document is exact
//! and can be read back for re-verification.

use serde::{Deserialize, Serialize};

use quasihom_core::exactnum::GaussianRational;
use quasihom_core::invariant::{CofactorMatrix, EqualityCertificate, FiltrationCertificate, PolyMatrix, QhResult};
use quasihom_core::linalg::Matrix;
use quasihom_core::normalform::NormalFormCertificate;
use quasihom_core::polyring::{PolyMap, Polynomial};
use quasihom_core::spectrum::{Exponent, OrderedSpectrum};

use crate::expr::{check_names, parse_coefficient, parse_polynomial};

pub const VERSION: u32 = 1;
pub const SPECTRUM_FORMAT: &str = "quasihom-spectrum";
pub const NORMAL_FORM_FORMAT: &str = "quasihom-normal-form";
pub const RESULT_FORMAT: &str = "quasihom-result";
pub const EMBEDDING_FORMAT: &str = "quasihom-embedding";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpectrumDoc {
    pub eigenvalues: Vec<String>,
    pub jordan_flags: Vec<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpectrumReport {
    pub format: String,
    pub version: u32,
    pub variables: Vec<String>,
    pub spectrum: SpectrumDoc,
    pub contracting: bool,
    pub resonance_bound: usize,
    /// All monomials `x^α` with `λ^α = λ_i`, per coordinate.
    pub resonance_sets: Vec<Vec<String>>,
    /// The members of degree at least two.
    pub nonlinear_resonances: Vec<Vec<String>>,
    pub relation_lattice: Vec<Vec<i64>>,
    pub weights: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NormalFormDoc {
    pub format: String,
    pub version: u32,
    pub variables: Vec<String>,
    pub truncation_degree: u32,
    pub original: Vec<String>,
    pub normalized: Vec<String>,
    pub conjugacy: Vec<String>,
    pub spectrum: SpectrumDoc,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CofactorDoc {
    pub entries: Vec<Vec<String>>,
    pub constant_part: Vec<Vec<String>>,
    /// Representative exponent of the bounding class.
    pub bound: Vec<u32>,
    pub degree: Option<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EqualityDoc {
    pub b: Vec<Vec<String>>,
    pub b0: Vec<Vec<String>>,
    pub inverse: Vec<Vec<String>>,
    pub degree: u32,
    pub valid_degree: Option<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TransportDoc {
    pub conjugacy: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtractionDoc {
    pub spectrum: SpectrumDoc,
    pub truncation_degree: u32,
    /// Present when the map had to be conjugated to normal form first.
    pub normal_form: Option<TransportDoc>,
    pub normalized_map: Vec<String>,
    pub transported: Vec<String>,
    pub minimal_indices: Vec<usize>,
    pub basis_change: Vec<Vec<String>>,
    pub phi: Vec<String>,
    pub cofactors: CofactorDoc,
    pub generators: Vec<String>,
    /// Representative exponents of the classes of the generators.
    pub classes: Vec<Vec<u32>>,
    pub weights: Vec<u64>,
    pub degrees: Vec<u64>,
    pub equality: EqualityDoc,
    pub filtration: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResultDoc {
    pub format: String,
    pub version: u32,
    pub variables: Vec<String>,
    pub map: Vec<String>,
    pub ideal: Vec<String>,
    /// `None` for the zero ideal.
    pub result: Option<ExtractionDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EliminationDoc {
    pub variable: String,
    pub generator: usize,
    pub jet: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtensionDoc {
    pub invertible: bool,
    pub contracting: bool,
    pub spectrum_rational: bool,
    pub invariant: bool,
    pub bound: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EmbeddingDoc {
    pub format: String,
    pub version: u32,
    pub variables: Vec<String>,
    pub truncation_degree: u32,
    pub in_m2: bool,
    pub offending_generator: Option<usize>,
    pub linear_part: Vec<Vec<String>>,
    pub eliminations: Vec<EliminationDoc>,
    pub remaining_variables: Vec<String>,
    pub ideal: Vec<String>,
    pub extension: Option<ExtensionDoc>,
}

/// Pretty JSON with a trailing newline.
pub fn to_json<T: Serialize>(doc: &T) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("documents serialize");
    s.push('\n');
    s
}

pub fn coeff_str(c: &GaussianRational) -> String {
    c.to_string()
}

pub fn poly_str(p: &Polynomial, names: &[String]) -> String {
    p.display_with(names)
}

pub fn map_strs(f: &PolyMap, names: &[String]) -> Vec<String> {
    f.components().iter().map(|c| poly_str(c, names)).collect()
}

pub fn polys_strs(ps: &[Polynomial], names: &[String]) -> Vec<String> {
    ps.iter().map(|c| poly_str(c, names)).collect()
}

pub fn matrix_strs(m: &Matrix) -> Vec<Vec<String>> {
    (0..m.rows()).map(|r| m.row(r).iter().map(coeff_str).collect()).collect()
}

pub fn poly_matrix_strs(m: &PolyMatrix, names: &[String]) -> Vec<Vec<String>> {
    m.iter().map(|row| polys_strs(row, names)).collect()
}

pub fn monomial_str(a: &Exponent, names: &[String]) -> String {
    poly_str(&Polynomial::monomial(a.clone(), GaussianRational::one()), names)
}

pub fn spectrum_doc(s: &OrderedSpectrum) -> SpectrumDoc {
    SpectrumDoc { eigenvalues: s.entries().iter().map(coeff_str).collect(), jordan_flags: s.jordan_flags().to_vec() }
}

pub fn normal_form_doc(cert: &NormalFormCertificate, names: &[String]) -> Result<NormalFormDoc, String> {
    let spectrum = cert.spectrum().map_err(|e| e.to_string())?;
    Ok(NormalFormDoc {
        format: NORMAL_FORM_FORMAT.into(),
        version: VERSION,
        variables: names.to_vec(),
        truncation_degree: cert.truncation_degree,
        original: map_strs(&cert.original, names),
        normalized: map_strs(&cert.normalized, names),
        conjugacy: map_strs(&cert.conjugacy, names),
        spectrum: spectrum_doc(&spectrum),
    })
}

pub fn extraction_doc(r: &QhResult, names: &[String]) -> ExtractionDoc {
    ExtractionDoc {
        spectrum: spectrum_doc(&r.spectrum),
        truncation_degree: r.truncation_degree,
        normal_form: r.normal_form.as_ref().map(|c| TransportDoc { conjugacy: map_strs(&c.conjugacy, names) }),
        normalized_map: map_strs(&r.map, names),
        transported: polys_strs(&r.transported, names),
        minimal_indices: r.minimal_indices.clone(),
        basis_change: matrix_strs(&r.basis_change),
        phi: polys_strs(&r.phi, names),
        cofactors: CofactorDoc {
            entries: poly_matrix_strs(&r.cofactors.entries, names),
            constant_part: matrix_strs(&r.cofactors.constant_part),
            bound: r.cofactors.bound.representative().as_slice().to_vec(),
            degree: r.cofactors.degree,
        },
        generators: polys_strs(&r.generators_p, names),
        classes: r.classes.iter().map(|c| c.representative().as_slice().to_vec()).collect(),
        weights: r.weights.clone(),
        degrees: r.degrees.clone(),
        equality: EqualityDoc {
            b: poly_matrix_strs(&r.equality.b, names),
            b0: matrix_strs(&r.equality.b0),
            inverse: poly_matrix_strs(&r.equality.inverse, names),
            degree: r.equality.degree,
            valid_degree: r.equality.valid_degree,
        },
        filtration: poly_matrix_strs(&r.filtration.cofactors, names),
    }
}

/// Reading documents back into core types.
pub struct Reader<'a> {
    pub names: &'a [String],
}

impl Reader<'_> {
    pub fn new(names: &[String]) -> Result<Reader<'_>, String> {
        check_names(names)?;
        Ok(Reader { names })
    }

    pub fn poly(&self, s: &str) -> Result<Polynomial, String> {
        parse_polynomial(s, self.names).map_err(|e| format!("`{s}`: {e}"))
    }

    pub fn polys(&self, v: &[String]) -> Result<Vec<Polynomial>, String> {
        v.iter().map(|s| self.poly(s)).collect()
    }

    pub fn map(&self, v: &[String]) -> Result<PolyMap, String> {
        if v.len() != self.names.len() {
            return Err(format!("map has {} components for {} variables", v.len(), self.names.len()));
        }
        PolyMap::new(self.polys(v)?).map_err(|e| e.to_string())
    }

    pub fn poly_matrix(&self, m: &[Vec<String>]) -> Result<PolyMatrix, String> {
        m.iter().map(|row| self.polys(row)).collect()
    }

    pub fn coeff(&self, s: &str) -> Result<GaussianRational, String> {
        parse_coefficient(s).map_err(|e| format!("`{s}`: {e}"))
    }

    pub fn matrix(&self, m: &[Vec<String>], cols: usize) -> Result<Matrix, String> {
        if m.iter().any(|r| r.len() != cols) {
            return Err("ragged matrix".into());
        }
        if m.is_empty() {
            return Ok(Matrix::zeros(0, cols));
        }
        let rows = m.iter().map(|r| r.iter().map(|c| self.coeff(c)).collect()).collect::<Result<Vec<Vec<_>>, _>>()?;
        Ok(Matrix::from_rows(rows))
    }

    pub fn spectrum(&self, s: &SpectrumDoc) -> Result<OrderedSpectrum, String> {
        let entries = s.eigenvalues.iter().map(|c| self.coeff(c)).collect::<Result<Vec<_>, _>>()?;
        OrderedSpectrum::new(entries, s.jordan_flags.clone()).map_err(|e| e.to_string())
    }

    pub fn exponent(&self, v: &[u32]) -> Result<Exponent, String> {
        if v.len() != self.names.len() {
            return Err(format!("exponent {v:?} has the wrong length"));
        }
        Ok(Exponent::new(v.to_vec()))
    }

    pub fn normal_form(&self, doc: &NormalFormDoc) -> Result<NormalFormCertificate, String> {
        Ok(NormalFormCertificate {
            original: self.map(&doc.original)?,
            normalized: self.map(&doc.normalized)?,
            conjugacy: self.map(&doc.conjugacy)?,
            truncation_degree: doc.truncation_degree,
        })
    }

    /// Rebuilds a [`QhResult`]; `original` is the input map of the problem.
    pub fn extraction(&self, doc: &ExtractionDoc, original: &PolyMap) -> Result<QhResult, String> {
        let spectrum = self.spectrum(&doc.spectrum)?;
        let map = self.map(&doc.normalized_map)?;
        let normal_form = match &doc.normal_form {
            Some(t) => Some(NormalFormCertificate {
                original: original.clone(),
                normalized: map.clone(),
                conjugacy: self.map(&t.conjugacy)?,
                truncation_degree: doc.truncation_degree,
            }),
            None => None,
        };
        let class = |v: &[u32]| -> Result<_, String> {
            spectrum.weight_class(&self.exponent(v)?).map_err(|e| e.to_string())
        };
        let phi = self.polys(&doc.phi)?;
        let kept = doc.minimal_indices.len();
        let r = phi.len();
        Ok(QhResult {
            truncation_degree: doc.truncation_degree,
            normal_form,
            map,
            transported: self.polys(&doc.transported)?,
            minimal_indices: doc.minimal_indices.clone(),
            basis_change: self.matrix(&doc.basis_change, kept)?,
            cofactors: CofactorMatrix {
                entries: self.poly_matrix(&doc.cofactors.entries)?,
                constant_part: self.matrix(&doc.cofactors.constant_part, r)?,
                bound: class(&doc.cofactors.bound)?,
                degree: doc.cofactors.degree,
            },
            phi,
            generators_p: self.polys(&doc.generators)?,
            classes: doc.classes.iter().map(|v| class(v)).collect::<Result<_, _>>()?,
            weights: doc.weights.clone(),
            degrees: doc.degrees.clone(),
            equality: EqualityCertificate {
                b: self.poly_matrix(&doc.equality.b)?,
                b0: self.matrix(&doc.equality.b0, r)?,
                inverse: self.poly_matrix(&doc.equality.inverse)?,
                degree: doc.equality.degree,
                valid_degree: doc.equality.valid_degree,
            },
            filtration: FiltrationCertificate { cofactors: self.poly_matrix(&doc.filtration)? },
            spectrum,
        })
    }
}
