//! Problem files: a TOML document naming the variables, the map and the ideal.
//!
//! ```toml
//! variables = ["x", "y"]
//! map = ["1/2*x", "1/4*y"]
//! ideal = ["x^2 - y", "x*(x^2 - y) + x^5"]
//!
//! [options]
//! degree = 8
//! class_bound = [5, 0]
//! output = "result.json"
//! ```

use std::fmt;
use std::path::PathBuf;

use serde::Deserialize;
use toml::Spanned;

use quasihom_core::polyring::{PolyMap, Polynomial};
use quasihom_core::spectrum::Exponent;

use crate::expr::{check_names, parse_polynomial};

/// A located diagnostic; line and column are 1-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProblemError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl fmt::Display for ProblemError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: {}", self.line, self.column, self.message)
    }
}

impl std::error::Error for ProblemError {}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Options {
    pub degree: Option<u32>,
    pub class_bound: Option<Exponent>,
    pub output: Option<PathBuf>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Problem {
    pub variables: Vec<String>,
    pub map: Option<PolyMap>,
    pub ideal: Vec<Polynomial>,
    pub options: Options,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawProblem {
    dimension: Option<Spanned<usize>>,
    variables: Option<Spanned<Vec<String>>>,
    map: Option<Spanned<Vec<Spanned<String>>>>,
    #[serde(default)]
    ideal: Vec<Spanned<String>>,
    #[serde(default)]
    options: RawOptions,
}

#[derive(Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawOptions {
    degree: Option<u32>,
    class_bound: Option<Spanned<Vec<u32>>>,
    output: Option<String>,
}

fn line_col(src: &str, offset: usize) -> (usize, usize) {
    let offset = offset.min(src.len());
    let before = &src[..offset];
    let line = before.matches('\n').count() + 1;
    let column = before.rfind('\n').map_or(offset, |k| offset - k - 1) + 1;
    (line, column)
}

fn at(src: &str, offset: usize, message: impl Into<String>) -> ProblemError {
    let (line, column) = line_col(src, offset);
    ProblemError { line, column, message: message.into() }
}

/// Offset of the first character inside a string literal starting at `start`.
fn content_start(src: &str, start: usize) -> usize {
    let rest = &src[start..];
    if rest.starts_with("\"\"\"") || rest.starts_with("'''") {
        start + 3
    } else {
        start + 1
    }
}

fn parse_entry(src: &str, s: &Spanned<String>, names: &[String], what: &str) -> Result<Polynomial, ProblemError> {
    parse_polynomial(s.get_ref(), names).map_err(|e| {
        at(src, content_start(src, s.span().start) + e.offset, format!("in {what}: {}", e.message))
    })
}

impl Problem {
    pub fn parse(src: &str) -> Result<Problem, ProblemError> {
        let raw: RawProblem = toml::from_str(src).map_err(|e| {
            let offset = e.span().map_or(0, |s| s.start);
            at(src, offset, e.message().to_string())
        })?;
        let inferred = raw
            .variables
            .as_ref()
            .map(|v| v.get_ref().len())
            .or_else(|| raw.map.as_ref().map(|m| m.get_ref().len()))
            .or_else(|| raw.dimension.as_ref().map(|d| *d.get_ref()));
        let Some(d) = inferred else {
            return Err(at(src, 0, "cannot infer the dimension: give `variables`, `map` or `dimension`"));
        };
        if let Some(dim) = &raw.dimension {
            if *dim.get_ref() != d {
                return Err(at(src, dim.span().start, format!("dimension {} does not match {d} variables", dim.get_ref())));
            }
        }
        let variables = match &raw.variables {
            Some(v) => {
                check_names(v.get_ref()).map_err(|m| at(src, v.span().start, m))?;
                v.get_ref().clone()
            }
            None => Polynomial::default_names(d),
        };
        let map = match &raw.map {
            Some(m) => {
                if m.get_ref().len() != d {
                    return Err(at(src, m.span().start, format!("map has {} components for {d} variables", m.get_ref().len())));
                }
                let comps = m
                    .get_ref()
                    .iter()
                    .enumerate()
                    .map(|(k, s)| parse_entry(src, s, &variables, &format!("map component {}", k + 1)))
                    .collect::<Result<Vec<_>, _>>()?;
                for (k, c) in comps.iter().enumerate() {
                    if !c.constant_term().is_zero() {
                        let s = &m.get_ref()[k];
                        return Err(at(src, s.span().start, format!("map component {} does not fix the origin", k + 1)));
                    }
                }
                Some(PolyMap::new(comps).expect("components checked"))
            }
            None => None,
        };
        let mut ideal = Vec::with_capacity(raw.ideal.len());
        for (k, s) in raw.ideal.iter().enumerate() {
            let p = parse_entry(src, s, &variables, &format!("generator {}", k + 1))?;
            if !p.constant_term().is_zero() {
                return Err(at(src, s.span().start, format!("generator {} does not vanish at the origin", k + 1)));
            }
            ideal.push(p);
        }
        let class_bound = match &raw.options.class_bound {
            Some(b) if b.get_ref().len() != d => {
                return Err(at(src, b.span().start, format!("class_bound has length {}, expected {d}", b.get_ref().len())))
            }
            Some(b) => Some(Exponent::new(b.get_ref().clone())),
            None => None,
        };
        let options = Options { degree: raw.options.degree, class_bound, output: raw.options.output.map(PathBuf::from) };
        Ok(Problem { variables, map, ideal, options })
    }

    pub fn dim(&self) -> usize {
        self.variables.len()
    }

    /// Canonical TOML text; parsing it gives back `self`.
    pub fn to_toml(&self) -> String {
        let quote = |s: &str| toml::Value::String(s.to_string()).to_string();
        let list = |items: Vec<String>| {
            if items.is_empty() {
                "[]".to_string()
            } else {
                format!("[\n{}]", items.iter().map(|s| format!("    {},\n", quote(s))).collect::<String>())
            }
        };
        let mut out = String::new();
        out.push_str(&format!("variables = [{}]\n", self.variables.iter().map(|s| quote(s)).collect::<Vec<_>>().join(", ")));
        if let Some(m) = &self.map {
            out.push_str(&format!("map = {}\n", list(m.components().iter().map(|c| c.display_with(&self.variables)).collect())));
        }
        out.push_str(&format!("ideal = {}\n", list(self.ideal.iter().map(|g| g.display_with(&self.variables)).collect())));
        let o = &self.options;
        if o.degree.is_some() || o.class_bound.is_some() || o.output.is_some() {
            out.push_str("\n[options]\n");
            if let Some(n) = o.degree {
                out.push_str(&format!("degree = {n}\n"));
            }
            if let Some(b) = &o.class_bound {
                let parts: Vec<String> = b.as_slice().iter().map(u32::to_string).collect();
                out.push_str(&format!("class_bound = [{}]\n", parts.join(", ")));
            }
            if let Some(p) = &o.output {
                out.push_str(&format!("output = {}\n", quote(&p.to_string_lossy())));
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const EXAMPLE: &str = r#"
variables = ["x", "y"]
map = ["1/2*x", "1/4*y"]
ideal = ["x^2 - y", "x*(x^2 - y) + x^5"]

[options]
degree = 8
"#;

    #[test]
    fn parses_example() {
        let p = Problem::parse(EXAMPLE).unwrap();
        assert_eq!(p.dim(), 2);
        assert_eq!(p.ideal.len(), 2);
        assert_eq!(p.options.degree, Some(8));
        assert_eq!(p.map.unwrap().component(1).display_with(&p.variables), "1/4*y");
    }

    #[test]
    fn round_trip() {
        let p = Problem::parse(EXAMPLE).unwrap();
        let text = p.to_toml();
        let q = Problem::parse(&text).unwrap();
        assert_eq!(p, q);
        assert_eq!(q.to_toml(), text);
    }

    #[test]
    fn located_errors() {
        let src = "variables = [\"x\", \"y\"]\nmap = [\"1/2*x\", \"1/4*q\"]\n";
        let e = Problem::parse(src).unwrap_err();
        assert_eq!((e.line, e.column), (2, 22));
        assert!(e.message.contains("unknown variable `q`"));

        let e = Problem::parse("variables = [\"x\"]\nmap = [\"1/2*x + 1\"]\n").unwrap_err();
        assert_eq!(e.line, 2);
        let e = Problem::parse("variables = [\"x\"]\nmap = [\"x\", \"x\"]\n").unwrap_err();
        assert!(e.message.contains("components"));
        let e = Problem::parse("variables = [\"x\"]\nmap = [\"1/2x\"]\n").unwrap_err();
        assert_eq!((e.line, e.column), (2, 12));
        let e = Problem::parse("variables = [\"x\"]\nfoo = 1\n").unwrap_err();
        assert_eq!(e.line, 2);
    }

    #[test]
    fn default_names_from_dimension() {
        let p = Problem::parse("dimension = 2\nideal = [\"x1*x2\"]\n").unwrap();
        assert_eq!(p.variables, ["x1", "x2"]);
        assert!(p.map.is_none());
    }
}
