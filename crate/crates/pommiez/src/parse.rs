//! Text syntax for polynomials and functionals.
//!
//! Expression grammar:
//!   expr   := term (('+'|'-') term)*
//!   term   := factor ('*' factor)*
//!   factor := base ('^' uint)?
//!   base   := number | 'z' | 'i' | '(' expr ')' | '-' factor
//! with number := digits ('/' digits)?.
//!
//! Functional grammar: a sum of (coeff '*')? 'delta(' point ',' order ')'
//! where point is a scalar literal and coeff a product of scalar factors.
//!
//! The writers emit canonical strings that re-parse to equal values.

use crate::error::{Error, Result};
use crate::functional::{Atom, Functional};
use crate::poly::Poly;
use crate::scalar::GaussianRational;
use num::{Signed, Zero};

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        Self { src, pos: 0 }
    }

    fn err(&self, message: &str) -> Error {
        Error::Syntax {
            offset: self.pos,
            message: message.to_string(),
        }
    }

    fn rest(&self) -> &str {
        &self.src[self.pos..]
    }

    fn peek(&self) -> Option<char> {
        self.rest().chars().next()
    }

    fn bump(&mut self) {
        if let Some(c) = self.peek() {
            self.pos += c.len_utf8();
        }
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(c) if c.is_whitespace()) {
            self.bump();
        }
    }

    fn eat(&mut self, c: char) -> Result<()> {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.bump();
            Ok(())
        } else {
            Err(self.err(&format!("expected '{c}'")))
        }
    }

    fn digits(&mut self) -> Result<&'a str> {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.bump();
        }
        if self.pos == start {
            return Err(self.err("expected digits"));
        }
        Ok(&self.src[start..self.pos])
    }

    fn number(&mut self) -> Result<GaussianRational> {
        let start = self.pos;
        self.digits()?;
        if self.peek() == Some('/') {
            self.bump();
            self.digits()?;
        }
        self.src[start..self.pos]
            .parse()
            .map_err(|_| self.err("bad rational literal"))
    }

    fn uint(&mut self) -> Result<u32> {
        self.skip_ws();
        self.digits()?
            .parse()
            .map_err(|_| self.err("exponent out of range"))
    }

    fn expr(&mut self) -> Result<Poly> {
        let mut acc = self.term()?;
        loop {
            self.skip_ws();
            match self.peek() {
                Some('+') => {
                    self.bump();
                    acc = &acc + &self.term()?;
                }
                Some('-') => {
                    self.bump();
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Poly> {
        let mut acc = self.factor()?;
        loop {
            self.skip_ws();
            if self.peek() == Some('*') {
                self.bump();
                acc = &acc * &self.factor()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn factor(&mut self) -> Result<Poly> {
        let base = self.base()?;
        self.skip_ws();
        if self.peek() == Some('^') {
            self.bump();
            let e = self.uint()?;
            let mut acc = Poly::one();
            for _ in 0..e {
                acc = &acc * &base;
            }
            Ok(acc)
        } else {
            Ok(base)
        }
    }

    fn base(&mut self) -> Result<Poly> {
        self.skip_ws();
        match self.peek() {
            Some('(') => {
                self.bump();
                let e = self.expr()?;
                self.eat(')')?;
                Ok(e)
            }
            Some('z') => {
                self.bump();
                Ok(Poly::monomial(1))
            }
            Some('i') => {
                self.bump();
                Ok(Poly::constant(GaussianRational::i()))
            }
            Some('-') => {
                self.bump();
                Ok(-&self.factor()?)
            }
            Some(c) if c.is_ascii_digit() => Ok(Poly::constant(self.number()?)),
            _ => Err(self.err("expected a value")),
        }
    }

    fn end(&mut self) -> Result<()> {
        self.skip_ws();
        if self.pos == self.src.len() {
            Ok(())
        } else {
            Err(self.err("unexpected trailing input"))
        }
    }

    /// One functional summand; `negate` carries the sign from the sum level.
    fn functional_term(&mut self, negate: bool) -> Result<Functional> {
        let mut coeff = if negate {
            GaussianRational::from_int(-1)
        } else {
            GaussianRational::one()
        };
        loop {
            self.skip_ws();
            if self.rest().starts_with("delta") {
                self.pos += "delta".len();
                break;
            }
            match self.peek() {
                Some('-') => {
                    self.bump();
                    coeff = -coeff;
                    continue;
                }
                Some('(') => {
                    self.bump();
                    let start = self.pos;
                    while !matches!(self.peek(), Some(')') | None) {
                        self.bump();
                    }
                    let inner = &self.src[start..self.pos];
                    self.eat(')')?;
                    let value: GaussianRational =
                        inner.parse().map_err(|_| self.err("bad scalar literal"))?;
                    coeff = &coeff * &value;
                }
                Some('i') => {
                    self.bump();
                    coeff = &coeff * &GaussianRational::i();
                }
                Some(c) if c.is_ascii_digit() => {
                    let n = self.number()?;
                    coeff = &coeff * &n;
                }
                _ => return Err(self.err("expected a coefficient or 'delta'")),
            }
            self.skip_ws();
            if self.peek() == Some('*') {
                self.bump();
            } else if !self.rest().trim_start().starts_with("delta") {
                return Err(self.err("expected '*' or 'delta'"));
            }
        }
        self.eat('(')?;
        let start = self.pos;
        while !matches!(self.peek(), Some(',') | None) {
            self.bump();
        }
        let point: GaussianRational = self.src[start..self.pos]
            .trim()
            .parse()
            .map_err(|_| self.err("bad point literal"))?;
        self.eat(',')?;
        let order = self.uint()?;
        self.eat(')')?;
        Ok(Functional::new(vec![Atom { point, order, coeff }]))
    }

    fn functional(&mut self) -> Result<Functional> {
        // A bare "0" denotes the zero functional, matching the writer.
        self.skip_ws();
        if self.rest() == "0" {
            self.pos += 1;
            return Ok(Functional::zero());
        }
        let mut acc = self.functional_term(false)?;
        loop {
            self.skip_ws();
            match self.peek() {
                Some('+') => {
                    self.bump();
                    acc = acc.add(&self.functional_term(false)?);
                }
                Some('-') => {
                    self.bump();
                    acc = acc.add(&self.functional_term(true)?);
                }
                _ => return Ok(acc),
            }
        }
    }
}

/// Parses a polynomial expression in `z`.
pub fn parse_function(src: &str) -> Result<Poly> {
    let mut p = Parser::new(src);
    let e = p.expr()?;
    p.end()?;
    Ok(e)
}

/// Parses a sum of weighted delta functionals.
pub fn parse_functional(src: &str) -> Result<Functional> {
    let mut p = Parser::new(src);
    let f = p.functional()?;
    p.end()?;
    Ok(f)
}

/// Splits a scalar into a printed sign and a magnitude whose leading part
/// is nonnegative, so that writers can join terms with explicit signs.
fn sign_split(c: &GaussianRational) -> (bool, GaussianRational) {
    let negative = if c.im.is_zero() {
        c.re.is_negative()
    } else if c.re.is_zero() {
        c.im.is_negative()
    } else {
        false // mixed scalars are parenthesized whole
    };
    if negative {
        (true, -c)
    } else {
        (false, c.clone())
    }
}

/// A scalar as a multiplicative factor that re-parses under the
/// expression grammar.
fn scalar_factor(c: &GaussianRational) -> String {
    if c.im.is_zero() || c.re.is_zero() {
        c.to_string()
    } else {
        format!("({})", c)
    }
}

/// Canonical expression for a polynomial; `parse_function` inverts it.
pub fn poly_to_expr(p: &Poly) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (k, c) in p.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let (neg, mag) = sign_split(c);
        let zpart = match k {
            0 => String::new(),
            1 => "z".to_string(),
            _ => format!("z^{k}"),
        };
        let body = if zpart.is_empty() {
            scalar_factor(&mag)
        } else if mag.is_one() {
            zpart
        } else {
            format!("{}*{}", scalar_factor(&mag), zpart)
        };
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push(if neg { '-' } else { '+' });
        }
        out.push_str(&body);
    }
    out
}

/// Canonical expression for a functional; `parse_functional` inverts it.
pub fn functional_to_expr(phi: &Functional) -> String {
    if phi.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for a in phi.atoms() {
        let (neg, mag) = sign_split(&a.coeff);
        let delta = format!("delta({},{})", a.point, a.order);
        let body = if mag.is_one() {
            delta
        } else {
            format!("{}*{}", scalar_factor(&mag), delta)
        };
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push(if neg { '-' } else { '+' });
        }
        out.push_str(&body);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gr(s: &str) -> GaussianRational {
        s.parse().unwrap()
    }

    fn p(coeffs: &[i64]) -> Poly {
        Poly::from_coeffs(coeffs.iter().map(|&c| GaussianRational::from_int(c)).collect())
    }

    #[test]
    fn expression_examples() {
        assert_eq!(parse_function("(1-z)^2").unwrap(), p(&[1, -2, 1]));
        assert_eq!(
            parse_function("1/2*z+1").unwrap(),
            Poly::from_coeffs(vec![gr("1"), gr("1/2")])
        );
        assert_eq!(
            parse_function("(1-z)*(1-1/2*z)").unwrap(),
            Poly::from_coeffs(vec![gr("1"), gr("-3/2"), gr("1/2")])
        );
        assert_eq!(parse_function("-z").unwrap(), p(&[0, -1]));
        assert_eq!(parse_function(" z ^ 3 ").unwrap(), Poly::monomial(3));
        assert_eq!(
            parse_function("i*z+1").unwrap(),
            Poly::from_coeffs(vec![GaussianRational::one(), GaussianRational::i()])
        );
    }

    #[test]
    fn syntax_errors_carry_offsets() {
        for (src, offset) in [("1+", 2usize), ("(1-z", 4), ("1 z", 2), ("^2", 0)] {
            match parse_function(src) {
                Err(Error::Syntax { offset: o, .. }) => assert_eq!(o, offset, "input {src:?}"),
                other => panic!("expected syntax error for {src:?}, got {other:?}"),
            }
        }
        assert!(parse_functional("delta(1)").is_err());
        assert!(parse_functional("gamma(1,0)").is_err());
    }

    #[test]
    fn functional_examples() {
        assert_eq!(
            parse_functional("delta(1,0)").unwrap(),
            Functional::delta(gr("1"), 0)
        );
        let two_atoms = parse_functional("delta(0,1)+delta(0,0)").unwrap();
        assert_eq!(two_atoms.atoms().len(), 2);
        let weighted = parse_functional("2*delta(1/2,3)").unwrap();
        assert_eq!(
            weighted,
            Functional::delta(gr("1/2"), 3).scale(&gr("2"))
        );
        assert_eq!(
            parse_functional("-delta(0,0)").unwrap(),
            Functional::delta(gr("0"), 0).scale(&gr("-1"))
        );
        assert_eq!(
            parse_functional("delta(1,0)-2*delta(0,1)").unwrap(),
            Functional::delta(gr("1"), 0)
                .add(&Functional::delta(gr("0"), 1).scale(&gr("-2")))
        );
        assert_eq!(
            parse_functional("i*delta(i,0)").unwrap(),
            Functional::delta(GaussianRational::i(), 0).scale(&GaussianRational::i())
        );
        assert_eq!(
            parse_functional("(1/2+i)*delta(-1,2)").unwrap(),
            Functional::delta(gr("-1"), 2).scale(&gr("1/2+i"))
        );
    }

    #[test]
    fn poly_writer_round_trips() {
        let cases = vec![
            Poly::zero(),
            Poly::one(),
            p(&[1, -2, 1]),
            p(&[0, -1]),
            Poly::from_coeffs(vec![gr("1"), gr("-3/2"), gr("1/2")]),
            Poly::from_coeffs(vec![gr("1/2+i"), gr("0"), gr("-i")]),
            Poly::from_coeffs(vec![gr("0"), gr("-2/3")]),
        ];
        for q in cases {
            let s = poly_to_expr(&q);
            let back = parse_function(&s).unwrap();
            assert_eq!(back, q, "round trip through {s:?}");
        }
    }

    #[test]
    fn functional_writer_round_trips() {
        let cases = vec![
            Functional::zero(),
            Functional::delta(gr("1"), 0),
            Functional::delta(gr("0"), 1).scale(&gr("-1")),
            Functional::delta(gr("1/2"), 3)
                .scale(&gr("2"))
                .add(&Functional::delta(gr("-1"), 0).scale(&gr("-1/3"))),
            Functional::delta(GaussianRational::i(), 1).scale(&gr("1/2+i")),
            Functional::delta(gr("0"), 2).scale(&gr("-2/5+i")),
        ];
        for phi in cases {
            let s = functional_to_expr(&phi);
            let back = parse_functional(&s).unwrap();
            assert_eq!(back, phi, "round trip through {s:?}");
        }
    }
}
