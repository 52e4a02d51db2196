//! Polynomial text format: a small ASCII grammar with out-of-band symbol
//! declarations, and the canonical printer that inverts it.
//!
//! ```text
//! poly   := ['-'] term (('+'|'-') term)*
//! term   := factor ('*'? factor)*
//! factor := number | name ('^' uint)?
//! number := uint ('/' uint)?
//! ```
//!
//! Names are the declared variables and parameters; whitespace is
//! insignificant. Printing lists terms in descending graded lexicographic
//! order, suppresses unit coefficients, and writes parameters before
//! variables inside a term, so `print` output always reparses to an equal
//! polynomial.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::exponent::ExponentVector;
use super::polynomial::{Domain, Polynomial, Scalar};
use crate::error::{Error, Result};

/// Declared symbol table: ambient variables first, then parameters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Symbols {
    vars: Vec<String>,
    params: Vec<String>,
}

impl Symbols {
    pub fn new(
        vars: impl IntoIterator<Item = impl Into<String>>,
        params: impl IntoIterator<Item = impl Into<String>>,
    ) -> Result<Self> {
        let vars: Vec<String> = vars.into_iter().map(Into::into).collect();
        let params: Vec<String> = params.into_iter().map(Into::into).collect();
        if vars.is_empty() {
            return Err(Error::InvalidName("at least one variable required".into()));
        }
        let mut seen = std::collections::BTreeSet::new();
        for name in vars.iter().chain(params.iter()) {
            if !is_identifier(name) {
                return Err(Error::InvalidName(format!("invalid name `{name}`")));
            }
            if !seen.insert(name.clone()) {
                return Err(Error::InvalidName(format!("duplicate name `{name}`")));
            }
        }
        Ok(Symbols { vars, params })
    }

    /// Generic names x1..xn (and s1..sl) for display when the caller did not
    /// declare any.
    pub fn canonical(vars: usize, params: usize) -> Self {
        Symbols {
            vars: (1..=vars).map(|i| format!("x{i}")).collect(),
            params: (1..=params).map(|j| format!("s{j}")).collect(),
        }
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn params(&self) -> &[String] {
        &self.params
    }

    fn lookup(&self, name: &str) -> Option<SymbolKind> {
        if let Some(i) = self.vars.iter().position(|v| v == name) {
            return Some(SymbolKind::Var(i));
        }
        self.params
            .iter()
            .position(|p| p == name)
            .map(SymbolKind::Param)
    }

    fn domain(&self) -> Domain {
        if self.params.is_empty() {
            Domain::Rational
        } else {
            Domain::Parametric(self.params.len())
        }
    }

    // ---- parsing -------------------------------------------------------

    /// Parse `text` into a canonical polynomial over these symbols. The
    /// result is rational, or parametric when parameters are declared.
    pub fn parse(&self, text: &str) -> Result<Polynomial> {
        let tokens = tokenize(text)?;
        let mut parser = Parser {
            symbols: self,
            tokens: &tokens,
            pos: 0,
            text_len: text.len(),
        };
        parser.parse_polynomial()
    }

    // ---- printing ------------------------------------------------------

    /// Canonical text form; `parse` of the output reproduces the polynomial.
    pub fn print(&self, p: &Polynomial) -> Result<String> {
        if p.variable_count() != self.vars.len() {
            return Err(Error::ArityMismatch(format!(
                "polynomial has {} variables, symbols declare {}",
                p.variable_count(),
                self.vars.len()
            )));
        }
        if p.parameter_count() != self.params.len() {
            return Err(Error::ArityMismatch(format!(
                "polynomial has {} parameters, symbols declare {}",
                p.parameter_count(),
                self.params.len()
            )));
        }
        if p.is_zero() {
            return Ok("0".to_string());
        }
        let mut out = String::new();
        // descending graded lexicographic order
        for (idx, (e, scalar)) in p
            .raw_terms()
            .collect::<Vec<_>>()
            .into_iter()
            .rev()
            .enumerate()
        {
            let (negative, magnitude) = match scalar {
                Scalar::Rat(r) => (r.is_negative(), ratio_string(&r.abs())),
                Scalar::Mod(v) => (false, v.to_string()),
            };
            if idx == 0 {
                if negative {
                    out.push('-');
                }
            } else if negative {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            out.push_str(&self.term_body(e, &magnitude, p.variable_count()));
        }
        Ok(out)
    }

    fn term_body(&self, e: &ExponentVector, magnitude: &str, vars: usize) -> String {
        let mut factors: Vec<String> = Vec::new();
        // parameters take the coefficient position, before the variables
        for (j, name) in self.params.iter().enumerate() {
            let exp = e.get(vars + j);
            if exp == 1 {
                factors.push(name.clone());
            } else if exp > 1 {
                factors.push(format!("{name}^{exp}"));
            }
        }
        for (i, name) in self.vars.iter().enumerate() {
            let exp = e.get(i);
            if exp == 1 {
                factors.push(name.clone());
            } else if exp > 1 {
                factors.push(format!("{name}^{exp}"));
            }
        }
        if factors.is_empty() {
            magnitude.to_string()
        } else if magnitude == "1" {
            factors.join("*")
        } else {
            format!("{magnitude}*{}", factors.join("*"))
        }
    }
}

fn ratio_string(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

enum SymbolKind {
    Var(usize),
    Param(usize),
}

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Ident(String),
    Number(BigInt),
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
}

fn tokenize(text: &str) -> Result<Vec<(Token, usize)>> {
    let bytes = text.as_bytes();
    let mut tokens = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        match c {
            ' ' | '\t' | '\n' | '\r' => i += 1,
            '+' => {
                tokens.push((Token::Plus, i));
                i += 1;
            }
            '-' => {
                tokens.push((Token::Minus, i));
                i += 1;
            }
            '*' => {
                tokens.push((Token::Star, i));
                i += 1;
            }
            '^' => {
                tokens.push((Token::Caret, i));
                i += 1;
            }
            '/' => {
                tokens.push((Token::Slash, i));
                i += 1;
            }
            '0'..='9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let digits = &text[start..i];
                let n: BigInt = digits.parse().expect("digit run parses");
                tokens.push((Token::Number(n), start));
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let start = i;
                while i < bytes.len()
                    && ((bytes[i] as char).is_ascii_alphanumeric() || bytes[i] == b'_')
                {
                    i += 1;
                }
                tokens.push((Token::Ident(text[start..i].to_string()), start));
            }
            other => {
                return Err(Error::Syntax {
                    pos: i,
                    msg: format!("unexpected character `{other}`"),
                })
            }
        }
    }
    Ok(tokens)
}

struct Parser<'a> {
    symbols: &'a Symbols,
    tokens: &'a [(Token, usize)],
    pos: usize,
    text_len: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&(Token, usize)> {
        self.tokens.get(self.pos)
    }

    fn here(&self) -> usize {
        self.tokens
            .get(self.pos)
            .map(|(_, p)| *p)
            .unwrap_or(self.text_len)
    }

    fn parse_polynomial(&mut self) -> Result<Polynomial> {
        let vars = self.symbols.vars.len();
        let domain = self.symbols.domain();
        let mut result = Polynomial::zero(vars, &domain);
        let mut negate = false;
        if let Some((Token::Minus, _)) = self.peek() {
            negate = true;
            self.pos += 1;
        }
        loop {
            let term = self.parse_term()?;
            result = if negate {
                result.try_sub(&term)?
            } else {
                result.try_add(&term)?
            };
            match self.peek() {
                None => break,
                Some((Token::Plus, _)) => {
                    negate = false;
                    self.pos += 1;
                }
                Some((Token::Minus, _)) => {
                    negate = true;
                    self.pos += 1;
                }
                Some((_, p)) => {
                    return Err(Error::Syntax {
                        pos: *p,
                        msg: "expected `+` or `-` between terms".into(),
                    })
                }
            }
        }
        Ok(result)
    }

    fn parse_term(&mut self) -> Result<Polynomial> {
        let mut product = self.parse_factor()?;
        loop {
            match self.peek() {
                Some((Token::Star, _)) => {
                    self.pos += 1;
                    let f = self.parse_factor()?;
                    product = product.try_mul(&f)?;
                }
                // juxtaposition: `2x`, `x y`
                Some((Token::Ident(_), _)) | Some((Token::Number(_), _)) => {
                    let f = self.parse_factor()?;
                    product = product.try_mul(&f)?;
                }
                _ => break,
            }
        }
        Ok(product)
    }

    fn parse_factor(&mut self) -> Result<Polynomial> {
        let vars = self.symbols.vars.len();
        let domain = self.symbols.domain();
        match self.peek().cloned() {
            Some((Token::Number(n), _)) => {
                self.pos += 1;
                let mut value = BigRational::from_integer(n);
                if let Some((Token::Slash, slash_pos)) = self.peek().cloned() {
                    self.pos += 1;
                    match self.peek().cloned() {
                        Some((Token::Number(d), dpos)) => {
                            self.pos += 1;
                            if d.is_zero() {
                                return Err(Error::Syntax {
                                    pos: dpos,
                                    msg: "zero denominator".into(),
                                });
                            }
                            value /= BigRational::from_integer(d);
                        }
                        _ => {
                            return Err(Error::Syntax {
                                pos: slash_pos + 1,
                                msg: "expected denominator after `/`".into(),
                            })
                        }
                    }
                }
                Polynomial::constant(
                    vars,
                    &domain,
                    super::polynomial::Coefficient::Rational(value),
                )
            }
            Some((Token::Ident(name), pos)) => {
                self.pos += 1;
                let base = match self.symbols.lookup(&name) {
                    Some(SymbolKind::Var(i)) => Polynomial::variable(vars, &domain, i),
                    Some(SymbolKind::Param(j)) => Polynomial::parameter(vars, &domain, j),
                    None => return Err(Error::UnknownIdentifier { name, pos }),
                };
                if let Some((Token::Caret, _)) = self.peek() {
                    self.pos += 1;
                    match self.peek().cloned() {
                        Some((Token::Minus, mpos)) => Err(Error::NegativeExponent { pos: mpos }),
                        Some((Token::Number(n), npos)) => {
                            self.pos += 1;
                            let exp = u32::try_from(&n).map_err(|_| Error::Syntax {
                                pos: npos,
                                msg: "exponent too large".into(),
                            })?;
                            Ok(base.pow(exp))
                        }
                        _ => Err(Error::Syntax {
                            pos: self.here(),
                            msg: "expected exponent after `^`".into(),
                        }),
                    }
                } else {
                    Ok(base)
                }
            }
            Some((tok, pos)) => Err(Error::Syntax {
                pos,
                msg: format!("expected a factor, found `{tok:?}`"),
            }),
            None => Err(Error::Syntax {
                pos: self.text_len,
                msg: "expected a term".into(),
            }),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn syms(vars: &[&str], params: &[&str]) -> Symbols {
        Symbols::new(vars.iter().copied(), params.iter().copied()).unwrap()
    }

    #[test]
    fn fermat_quartic() {
        let s = syms(&["x1", "x2", "x3"], &[]);
        let f = s.parse("x1^4 + x2^4 + x3^4").unwrap();
        assert_eq!(
            f.exponent_support(),
            vec![vec![0, 0, 4], vec![0, 4, 0], vec![4, 0, 0]]
        );
        assert_eq!(s.print(&f).unwrap(), "x1^4 + x2^4 + x3^4");
    }

    #[test]
    fn zero_polynomial() {
        let s = syms(&["x"], &[]);
        let f = s.parse("0").unwrap();
        assert!(f.is_zero());
        assert_eq!(s.print(&f).unwrap(), "0");
    }

    #[test]
    fn binomial_square() {
        let s = syms(&["x1", "x2"], &[]);
        let f = s.parse("x1^2 + 2*x1*x2 + x2^2").unwrap();
        assert_eq!(f.term_count(), 3);
        assert_eq!(s.print(&f).unwrap(), "x1^2 + 2*x1*x2 + x2^2");
    }

    #[test]
    fn parameters_and_signs() {
        let s = syms(&["x", "y"], &["s"]);
        let f = s.parse("x^4 + y^4 - s*x*y").unwrap();
        assert_eq!(s.print(&f).unwrap(), "x^4 + y^4 - s*x*y");
        let g = s.parse("-x + 1/2").unwrap();
        assert_eq!(s.print(&g).unwrap(), "-x + 1/2");
        let reparsed = s.parse(&s.print(&f).unwrap()).unwrap();
        assert_eq!(f, reparsed);
    }

    #[test]
    fn juxtaposition_and_cancellation() {
        let s = syms(&["x", "y"], &[]);
        assert_eq!(s.parse("2x y").unwrap(), s.parse("2*x*y").unwrap());
        assert_eq!(s.parse("2x + 3x").unwrap(), s.parse("5x").unwrap());
        assert!(s.parse("x - x").unwrap().is_zero());
    }

    #[test]
    fn error_positions() {
        let s = syms(&["x"], &[]);
        match s.parse("x + w") {
            Err(Error::UnknownIdentifier { name, pos }) => {
                assert_eq!(name, "w");
                assert_eq!(pos, 4);
            }
            other => panic!("expected unknown identifier, got {other:?}"),
        }
        assert!(matches!(
            s.parse("x^-2"),
            Err(Error::NegativeExponent { pos: 2 })
        ));
        assert!(matches!(s.parse("x + + x"), Err(Error::Syntax { .. })));
        assert!(matches!(s.parse("1/0"), Err(Error::Syntax { .. })));
        assert!(matches!(s.parse(""), Err(Error::Syntax { .. })));
    }

    #[test]
    fn symbol_validation() {
        assert!(Symbols::new(["x", "x"], Vec::<String>::new()).is_err());
        assert!(Symbols::new(["x"], ["x"]).is_err());
        assert!(Symbols::new(["1bad"], Vec::<String>::new()).is_err());
        assert!(Symbols::new(Vec::<String>::new(), Vec::<String>::new()).is_err());
    }
}
