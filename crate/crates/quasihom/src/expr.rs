//! Polynomial expressions over `Q(i)`.
//!
//! Grammar: sums and differences of products, `*` and `/` (division by
//! constants only), `^` with a nonnegative integer exponent, parentheses,
//! integer literals, the imaginary unit `i` and variable names.

use std::fmt;

use quasihom_core::exactnum::GaussianRational;
use quasihom_core::polyring::Polynomial;

type GR = GaussianRational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    /// Byte offset into the expression.
    pub offset: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "column {}: {}", self.offset + 1, self.message)
    }
}

impl std::error::Error for ParseError {}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Int(String),
    Ident(String),
    Op(char),
    End,
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
    tok: Tok,
    tok_start: usize,
    names: &'a [String],
}

impl<'a> Parser<'a> {
    fn new(src: &'a str, names: &'a [String]) -> Result<Self, ParseError> {
        let mut p = Parser { src, pos: 0, tok: Tok::End, tok_start: 0, names };
        p.bump()?;
        Ok(p)
    }

    fn err<T>(&self, offset: usize, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError { offset, message: message.into() })
    }

    fn bump(&mut self) -> Result<(), ParseError> {
        let bytes = self.src.as_bytes();
        while self.pos < bytes.len() && bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
        self.tok_start = self.pos;
        let Some(&c) = bytes.get(self.pos) else {
            self.tok = Tok::End;
            return Ok(());
        };
        if c.is_ascii_digit() {
            let start = self.pos;
            while self.pos < bytes.len() && bytes[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            self.tok = Tok::Int(self.src[start..self.pos].to_string());
        } else if c.is_ascii_alphabetic() || c == b'_' {
            let start = self.pos;
            while self.pos < bytes.len() && (bytes[self.pos].is_ascii_alphanumeric() || bytes[self.pos] == b'_') {
                self.pos += 1;
            }
            self.tok = Tok::Ident(self.src[start..self.pos].to_string());
        } else if b"+-*/^()".contains(&c) {
            self.pos += 1;
            self.tok = Tok::Op(c as char);
        } else {
            let ch = self.src[self.pos..].chars().next().unwrap_or('?');
            return self.err(self.pos, format!("unexpected character `{ch}`"));
        }
        Ok(())
    }

    fn nvars(&self) -> usize {
        self.names.len()
    }

    fn expr(&mut self) -> Result<Polynomial, ParseError> {
        let mut acc = match self.tok {
            Tok::Op('-') => {
                self.bump()?;
                -self.term()?
            }
            Tok::Op('+') => {
                self.bump()?;
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.tok {
                Tok::Op('+') => {
                    self.bump()?;
                    acc = &acc + &self.term()?;
                }
                Tok::Op('-') => {
                    self.bump()?;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial, ParseError> {
        let mut acc = self.power()?;
        loop {
            match self.tok {
                Tok::Op('*') => {
                    self.bump()?;
                    acc = &acc * &self.power()?;
                }
                Tok::Op('/') => {
                    self.bump()?;
                    let at = self.tok_start;
                    let den = self.power()?;
                    let c = den.constant_term();
                    if den.terms().any(|(a, _)| !a.is_zero()) {
                        return self.err(at, "division by a non-constant");
                    }
                    let Ok(inv) = c.inv() else {
                        return self.err(at, "division by zero");
                    };
                    acc = acc.scale(&inv);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn power(&mut self) -> Result<Polynomial, ParseError> {
        let base = self.atom()?;
        if self.tok != Tok::Op('^') {
            return Ok(base);
        }
        self.bump()?;
        let Tok::Int(k) = &self.tok else {
            return self.err(self.tok_start, "expected a nonnegative integer exponent");
        };
        let Ok(k) = k.parse::<u32>() else {
            return self.err(self.tok_start, "exponent is too large");
        };
        self.bump()?;
        let mut out = Polynomial::one(self.nvars());
        for _ in 0..k {
            out = &out * &base;
        }
        Ok(out)
    }

    fn atom(&mut self) -> Result<Polynomial, ParseError> {
        let d = self.nvars();
        match self.tok.clone() {
            Tok::Int(v) => {
                self.bump()?;
                let c: GR = v.parse().expect("digits parse as an integer");
                Ok(Polynomial::constant(d, c))
            }
            Tok::Ident(name) => {
                let at = self.tok_start;
                self.bump()?;
                if let Some(k) = self.names.iter().position(|n| *n == name) {
                    Ok(Polynomial::variable(d, k))
                } else if name == "i" {
                    Ok(Polynomial::constant(d, GR::i()))
                } else {
                    self.err(at, format!("unknown variable `{name}`"))
                }
            }
            Tok::Op('(') => {
                self.bump()?;
                let inner = self.expr()?;
                if self.tok != Tok::Op(')') {
                    return self.err(self.tok_start, "expected `)`");
                }
                self.bump()?;
                Ok(inner)
            }
            Tok::Op('-') => {
                self.bump()?;
                Ok(-self.power()?)
            }
            Tok::Op(c) => self.err(self.tok_start, format!("unexpected `{c}`")),
            Tok::End => self.err(self.tok_start, "unexpected end of expression"),
        }
    }
}

/// Parses `src` as a polynomial in the variables `names`.
pub fn parse_polynomial(src: &str, names: &[String]) -> Result<Polynomial, ParseError> {
    let mut p = Parser::new(src, names)?;
    let out = p.expr()?;
    if p.tok != Tok::End {
        return p.err(p.tok_start, "unexpected trailing input");
    }
    Ok(out)
}

/// Parses a single coefficient such as `-3/4+1/2*i`.
pub fn parse_coefficient(src: &str) -> Result<GR, ParseError> {
    let p = parse_polynomial(src, &[])?;
    Ok(p.constant_term())
}

/// Rejects empty, duplicate or reserved variable names.
pub fn check_names(names: &[String]) -> Result<(), String> {
    for (k, n) in names.iter().enumerate() {
        let valid = n.chars().next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
            && n.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
        if !valid {
            return Err(format!("invalid variable name `{n}`"));
        }
        if n == "i" {
            return Err("`i` is the imaginary unit and cannot name a variable".into());
        }
        if names[..k].contains(n) {
            return Err(format!("duplicate variable name `{n}`"));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use quasihom_core::spectrum::Exponent;

    fn names(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn basic_terms() {
        let xy = names(&["x", "y"]);
        let p = parse_polynomial("x^2 - y", &xy).unwrap();
        assert_eq!(p.coeff(&Exponent::new(vec![2, 0])), GR::one());
        assert_eq!(p.coeff(&Exponent::new(vec![0, 1])), GR::from_integer(-1));
        let q = parse_polynomial("x*(x^2-y) + x^5", &xy).unwrap();
        assert_eq!(q.len(), 3);
        let r = parse_polynomial("1/2*x", &xy).unwrap();
        assert_eq!(r.coeff(&Exponent::new(vec![1, 0])), GR::ratio(1, 2));
        let s = parse_polynomial("(1/2 + i)*y/3", &xy).unwrap();
        assert_eq!(s.coeff(&Exponent::new(vec![0, 1])), "1/6+1/3*i".parse().unwrap());
    }

    #[test]
    fn diagnostics() {
        let xy = names(&["x", "y"]);
        assert_eq!(parse_polynomial("x + z", &xy).unwrap_err().offset, 4);
        assert_eq!(parse_polynomial("x / y", &xy).unwrap_err().message, "division by a non-constant");
        assert_eq!(parse_polynomial("1/0", &xy).unwrap_err().message, "division by zero");
        assert!(parse_polynomial("x +", &xy).is_err());
        assert!(parse_polynomial("x $ y", &xy).is_err());
        assert!(parse_polynomial("(x", &xy).is_err());
        assert!(parse_polynomial("x^y", &xy).is_err());
        assert!(parse_polynomial("x y", &xy).is_err());
    }

    #[test]
    fn names_are_checked() {
        assert!(check_names(&names(&["x", "y"])).is_ok());
        assert!(check_names(&names(&["x", "x"])).is_err());
        assert!(check_names(&names(&["i"])).is_err());
        assert!(check_names(&names(&["2x"])).is_err());
    }

    #[test]
    fn display_round_trips() {
        let xyz = names(&["x", "y", "z"]);
        for src in ["x^2 - y", "-1/2*i*x*y + (1/2+1*i)*x - 3*z^4", "(x - i*y)^3 - 7/5*z", "0", "-(1/3-2/7*i)"] {
            let p = parse_polynomial(src, &xyz).unwrap();
            let printed = p.display_with(&xyz);
            assert_eq!(parse_polynomial(&printed, &xyz).unwrap(), p, "{src} -> {printed}");
            assert_eq!(parse_polynomial(&printed, &xyz).unwrap().display_with(&xyz), printed);
        }
    }
}
