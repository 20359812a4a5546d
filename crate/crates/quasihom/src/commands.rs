//! The five commands. Each returns the JSON document it produced (if any)
//! and a short human-readable summary, or an error carrying the exit code.

use std::fmt::Write as _;

use quasihom_core::embedding::{check_extension, check_m2, minimal_embedding, EmbeddingError};
use quasihom_core::invariant::{quasi_homogenize, verify_result, IdealPresentation, InvariantError, QhOptions, QhResult};
use quasihom_core::normalform::{is_normal_form, jordan_lower, poincare_dulac, spectrum_of_jordan, verify_conjugacy, NormalFormError};
use quasihom_core::polyring::{PolyMap, Polynomial};
use quasihom_core::spectrum::{Exponent, OrderedSpectrum, SpectrumError};

use crate::document::*;
use crate::problem::Problem;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    NotContracting(String),
    #[error("{0}")]
    IrrationalSpectrum(String),
    #[error("{0}")]
    NotInvariant(String),
    #[error("{0}")]
    Failed(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Input(_) => 1,
            CliError::NotContracting(_) => 2,
            CliError::IrrationalSpectrum(_) => 3,
            CliError::NotInvariant(_) => 4,
            CliError::Failed(_) => 5,
        }
    }
}

impl From<NormalFormError> for CliError {
    fn from(e: NormalFormError) -> Self {
        let msg = e.to_string();
        match e {
            NormalFormError::SingularLinearPart | NormalFormError::NotContracting { .. } => CliError::NotContracting(msg),
            NormalFormError::IrrationalSpectrum { .. } => CliError::IrrationalSpectrum(msg),
            NormalFormError::DegreeTooLow { .. } | NormalFormError::DimensionMismatch { .. } => CliError::Input(msg),
            _ => CliError::Failed(msg),
        }
    }
}

impl From<SpectrumError> for CliError {
    fn from(e: SpectrumError) -> Self {
        NormalFormError::from(e).into()
    }
}

fn invariant_error(e: InvariantError, context: String) -> CliError {
    let msg = format!("{context}{e}");
    match e {
        InvariantError::NormalForm(nf) => match CliError::from(nf) {
            CliError::Failed(_) => CliError::Failed(msg),
            CliError::Input(_) => CliError::Input(msg),
            CliError::NotContracting(_) => CliError::NotContracting(msg),
            CliError::IrrationalSpectrum(_) => CliError::IrrationalSpectrum(msg),
            CliError::NotInvariant(_) => CliError::NotInvariant(msg),
        },
        InvariantError::DimensionMismatch { .. }
        | InvariantError::ZeroGenerator { .. }
        | InvariantError::UnitGenerator { .. } => CliError::Input(msg),
        InvariantError::NotInvariant { .. } => CliError::NotInvariant(msg),
        InvariantError::EigenvalueNotInSpectrumImage { .. } | InvariantError::NotInImage { .. } => {
            CliError::IrrationalSpectrum(msg)
        }
        _ => CliError::Failed(msg),
    }
}

/// What a command produced.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub document: Option<String>,
    pub summary: String,
}

fn require_map(problem: &Problem) -> Result<&PolyMap, CliError> {
    problem.map.as_ref().ok_or_else(|| CliError::Input("the problem has no `map`".into()))
}

fn nonzero_generators(problem: &Problem) -> Vec<Polynomial> {
    problem.ideal.iter().filter(|g| !g.is_zero()).cloned().collect()
}

fn ideal_of(problem: &Problem) -> Result<IdealPresentation, CliError> {
    IdealPresentation::new(problem.dim(), nonzero_generators(problem)).map_err(|e| invariant_error(e, String::new()))
}

fn spectrum_of(f: &PolyMap) -> Result<OrderedSpectrum, CliError> {
    let jf = jordan_lower(&f.linear_part())?;
    Ok(spectrum_of_jordan(&jf.j)?)
}

fn tuple<T: ToString>(v: &[T]) -> String {
    format!("({})", v.iter().map(T::to_string).collect::<Vec<_>>().join(", "))
}

pub fn spectrum(problem: &Problem) -> Result<Outcome, CliError> {
    let f = require_map(problem)?;
    let names = &problem.variables;
    let s = spectrum_of(f)?;
    let weights = s.weight_vector().map_err(|e| CliError::Failed(e.to_string()))?;
    let sets: Vec<Vec<Exponent>> = (0..s.dim()).map(|i| s.resonance_set(i)).collect();
    let show = |keep: fn(&Exponent) -> bool| -> Vec<Vec<String>> {
        sets.iter().map(|r| r.iter().filter(|a| keep(a)).map(|a| monomial_str(a, names)).collect()).collect()
    };
    let report = SpectrumReport {
        format: SPECTRUM_FORMAT.into(),
        version: VERSION,
        variables: names.clone(),
        spectrum: spectrum_doc(&s),
        contracting: true,
        resonance_bound: s.resonance_bound(),
        resonance_sets: show(|_| true),
        nonlinear_resonances: show(|a| a.degree() >= 2),
        relation_lattice: s.relation_lattice().basis,
        weights,
    };
    let mut summary = String::new();
    let _ = writeln!(summary, "spectrum: {}", tuple(&report.spectrum.eigenvalues));
    let _ = writeln!(summary, "contracting: yes, resonance bound {}", report.resonance_bound);
    for (i, r) in report.nonlinear_resonances.iter().enumerate() {
        let _ = writeln!(summary, "nonlinear resonances for {}: {{{}}}", names[i], r.join(", "));
    }
    let _ = writeln!(summary, "weights: {}", tuple(&report.weights));
    Ok(Outcome { document: Some(to_json(&report)), summary })
}

pub fn normal_form(problem: &Problem, degree: Option<u32>) -> Result<Outcome, CliError> {
    let f = require_map(problem)?;
    let s = spectrum_of(f)?;
    let n = degree.or(problem.options.degree).unwrap_or_else(|| (s.resonance_bound() as u32 + 2).max(f.degree()));
    let cert = poincare_dulac(f, n)?;
    if !verify_conjugacy(&cert) || !is_normal_form(&cert.normalized, &s) {
        return Err(CliError::Failed("the computed conjugacy does not verify".into()));
    }
    let doc = normal_form_doc(&cert, &problem.variables).map_err(CliError::Failed)?;
    let mut summary = String::new();
    let _ = writeln!(summary, "normal form (mod degree {}): {}", n + 1, tuple(&doc.normalized));
    let _ = writeln!(summary, "conjugacy: {}", tuple(&doc.conjugacy));
    Ok(Outcome { document: Some(to_json(&doc)), summary })
}

pub fn qh_options(problem: &Problem, degree: Option<u32>, class_bound: Option<Exponent>) -> QhOptions {
    QhOptions { degree: degree.or(problem.options.degree), class_bound: class_bound.or_else(|| problem.options.class_bound.clone()) }
}

/// Runs the pipeline; the JSON is re-certified before it is returned.
pub fn quasi_homogenize_cmd(problem: &Problem, options: &QhOptions) -> Result<Outcome, CliError> {
    let f = require_map(problem)?;
    let names = &problem.variables;
    let ideal = ideal_of(problem)?;
    let result = if ideal.is_empty() {
        spectrum_of(f)?;
        None
    } else {
        Some(quasi_homogenize(&ideal, f, options).map_err(|e| invariant_error(e.error, format!("{}: ", e.stage)))?)
    };
    let doc = ResultDoc {
        format: RESULT_FORMAT.into(),
        version: VERSION,
        variables: names.clone(),
        map: map_strs(f, names),
        ideal: polys_strs(&problem.ideal, names),
        result: result.as_ref().map(|r| extraction_doc(r, names)),
    };
    let json = to_json(&doc);
    certify(&json).map_err(|e| CliError::Failed(format!("self-check failed: {e}")))?;
    Ok(Outcome { document: Some(json), summary: qh_summary(result.as_ref(), names) })
}

fn qh_summary(r: Option<&QhResult>, names: &[String]) -> String {
    let mut s = String::new();
    let Some(r) = r else {
        s.push_str("zero ideal: nothing to extract\n");
        return s;
    };
    let _ = writeln!(s, "spectrum: {}", tuple(r.spectrum.entries()));
    if let Some(n) = r.valid_degree() {
        let _ = writeln!(s, "generators transported to normal-form coordinates; valid modulo degree {}", n + 1);
    }
    let _ = writeln!(s, "weights: {}", tuple(&r.weights));
    for (k, (p, deg)) in r.generators_p.iter().zip(&r.degrees).enumerate() {
        let _ = writeln!(s, "P{} = {}  (weighted degree {deg})", k + 1, p.display_with(names));
    }
    s
}

pub fn embed_check(problem: &Problem, degree: Option<u32>) -> Result<Outcome, CliError> {
    let names = &problem.variables;
    let ideal = ideal_of(problem)?;
    let n = degree.or(problem.options.degree).unwrap_or_else(|| 2 * ideal.max_degree().max(1));
    let report = check_m2(&ideal);
    let (rest, steps) = minimal_embedding(&ideal, n).map_err(|e| match e {
        EmbeddingError::Invariant(e) => invariant_error(e, String::new()),
        other => CliError::Failed(other.to_string()),
    })?;
    let mut remaining = names.clone();
    let mut eliminations = Vec::new();
    for st in &steps {
        let var = remaining.remove(st.eliminated);
        eliminations.push(EliminationDoc { variable: var, generator: st.generator, jet: st.jet.display_with(&remaining) });
    }
    let extension = match &problem.map {
        Some(f) => {
            let r = check_extension(f, &ideal, n).map_err(|e| CliError::Failed(e.to_string()))?;
            Some(ExtensionDoc {
                invertible: r.invertible,
                contracting: r.contracting,
                spectrum_rational: r.spectrum_rational,
                invariant: r.invariant,
                bound: r.bound,
            })
        }
        None => None,
    };
    let doc = EmbeddingDoc {
        format: EMBEDDING_FORMAT.into(),
        version: VERSION,
        variables: names.clone(),
        truncation_degree: n,
        in_m2: report.in_m2,
        offending_generator: report.offending_generator,
        linear_part: matrix_strs(&report.linear_part),
        eliminations,
        remaining_variables: remaining.clone(),
        ideal: polys_strs(rest.generators(), &remaining),
        extension: extension.clone(),
    };
    let mut summary = String::new();
    if report.in_m2 {
        let _ = writeln!(summary, "ideal lies in m^2: the embedding is minimal");
    } else {
        for e in &doc.eliminations {
            let _ = writeln!(summary, "eliminated {} = {}", e.variable, e.jet);
        }
        let _ = writeln!(summary, "minimal embedding in {}: {{{}}}", tuple(&remaining), doc.ideal.join(", "));
    }
    if let Some(x) = &extension {
        let _ = writeln!(
            summary,
            "map: invertible {}, contracting {}, invariant mod degree {} {}",
            x.invertible,
            x.contracting,
            x.bound + 1,
            x.invariant
        );
        if !x.invertible || !x.contracting {
            return Err(CliError::NotContracting(format!("the map is not a contracting automorphism\n{summary}")));
        }
        if !x.invariant {
            return Err(CliError::NotInvariant(format!("the map does not preserve the ideal\n{summary}")));
        }
    }
    Ok(Outcome { document: Some(to_json(&doc)), summary })
}

/// Independently re-verifies a result or normal-form document.
pub fn certify(text: &str) -> Result<Outcome, CliError> {
    let value: serde_json::Value = serde_json::from_str(text).map_err(|e| CliError::Input(format!("not a JSON document: {e}")))?;
    let format = value.get("format").and_then(|v| v.as_str()).unwrap_or_default().to_string();
    let version = value.get("version").and_then(|v| v.as_u64());
    if version != Some(VERSION as u64) {
        return Err(CliError::Input(format!(
            "unsupported version {}; this build reads version {VERSION}",
            version.map_or("(missing)".to_string(), |v| v.to_string())
        )));
    }
    let malformed = |e: String| CliError::Failed(format!("malformed document: {e}"));
    match format.as_str() {
        RESULT_FORMAT => {
            let doc: ResultDoc = serde_json::from_value(value).map_err(|e| malformed(e.to_string()))?;
            let rd = Reader::new(&doc.variables).map_err(malformed)?;
            let f = rd.map(&doc.map).map_err(malformed)?;
            let gens: Vec<Polynomial> = rd.polys(&doc.ideal).map_err(malformed)?.into_iter().filter(|g| !g.is_zero()).collect();
            let ideal = IdealPresentation::new(doc.variables.len(), gens).map_err(|e| malformed(e.to_string()))?;
            match &doc.result {
                None if ideal.is_empty() => {
                    spectrum_of(&f).map_err(|e| CliError::Failed(format!("spectrum: {e}")))?;
                }
                None => return Err(CliError::Failed("missing result for a nonzero ideal".into())),
                Some(ex) => {
                    let r = rd.extraction(ex, &f).map_err(malformed)?;
                    verify_result(&ideal, &f, &r).map_err(|e| CliError::Failed(format!("check failed: {e}")))?;
                }
            }
            Ok(Outcome { document: None, summary: "result certified\n".into() })
        }
        NORMAL_FORM_FORMAT => {
            let doc: NormalFormDoc = serde_json::from_value(value).map_err(|e| malformed(e.to_string()))?;
            let rd = Reader::new(&doc.variables).map_err(malformed)?;
            let cert = rd.normal_form(&doc).map_err(malformed)?;
            let s = rd.spectrum(&doc.spectrum).map_err(malformed)?;
            if cert.spectrum().ok().as_ref() != Some(&s) {
                return Err(CliError::Failed("check failed: stored spectrum".into()));
            }
            if !is_normal_form(&cert.normalized, &s) {
                return Err(CliError::Failed("check failed: normalized map is not in normal form".into()));
            }
            if !verify_conjugacy(&cert) {
                return Err(CliError::Failed("check failed: conjugacy".into()));
            }
            Ok(Outcome { document: None, summary: "normal form certified\n".into() })
        }
        other => Err(CliError::Input(format!("unknown document format `{other}`"))),
    }
}
