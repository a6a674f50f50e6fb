//! Text form of polynomials and ideals.
//!
//! Polynomials: integer or rational coefficients (`3`, `-1/2`), the
//! variables `x y z w t u`, `*`, `^` with a non-negative integer exponent,
//! `+`, `-` and parentheses. Whitespace is ignored.
//!
//! Ideals: one polynomial per line; `#` starts a comment.

use num_bigint::BigInt;

use crate::error::{AlgebraError, Result};
use crate::field::Field;
use crate::monomial::{Monomial, Ring, Var};
use crate::poly::Polynomial;

struct Parser<'a, F> {
    src: &'a [u8],
    pos: usize,
    ring: Ring,
    _f: std::marker::PhantomData<F>,
}

impl<'a, F: Field> Parser<'a, F> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(AlgebraError::Syntax { pos: self.pos, msg: msg.into() })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<Polynomial<F>> {
        let mut acc = Polynomial::zero(self.ring);
        let mut first = true;
        loop {
            let sign = match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    false
                }
                Some(b'-') => {
                    self.pos += 1;
                    true
                }
                _ if first => false,
                _ => break,
            };
            let t = self.term()?;
            acc = if sign { &acc - &t } else { &acc + &t };
            first = false;
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Polynomial<F>> {
        let mut acc = self.factor()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            let f = self.factor()?;
            acc = &acc * &f;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Polynomial<F>> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let start = self.pos;
            let digits = self.digits();
            if digits.is_empty() {
                self.pos = start;
                return self.err("expected exponent after '^'");
            }
            let e: u32 = match digits.parse() {
                Ok(e) if e <= u16::MAX as u32 => e,
                _ => {
                    self.pos = start;
                    return self.err("exponent too large");
                }
            };
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn digits(&mut self) -> String {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        String::from_utf8_lossy(&self.src[start..self.pos]).into_owned()
    }

    fn atom(&mut self) -> Result<Polynomial<F>> {
        match self.peek() {
            None => self.err("unexpected end of input"),
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return self.err("expected ')'");
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(b'-') => {
                self.pos += 1;
                let f = self.factor()?;
                Ok(-f)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                let num: BigInt = self.digits().parse().expect("digits");
                let mut den = BigInt::from(1);
                if self.peek() == Some(b'/') {
                    self.pos += 1;
                    self.skip_ws();
                    let d = self.digits();
                    if d.is_empty() {
                        return self.err("expected denominator after '/'");
                    }
                    den = d.parse().expect("digits");
                }
                match F::from_ratio(&num, &den) {
                    Some(c) => Ok(Polynomial::constant(self.ring, c)),
                    None => {
                        self.pos = start;
                        Err(AlgebraError::BadCoefficient(format!("{}/{}", num, den)))
                    }
                }
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_alphanumeric() {
                    self.pos += 1;
                }
                let name = String::from_utf8_lossy(&self.src[start..self.pos]).into_owned();
                let var = if name.len() == 1 { Var::from_name(name.chars().next().unwrap()) } else { None };
                match var.and_then(|v| self.ring.index_of(v)) {
                    Some(slot) => Ok(Polynomial::term(self.ring, Monomial::var(slot), F::one())),
                    None => Err(AlgebraError::UnknownVariable { name, pos: start }),
                }
            }
            Some(c) => self.err(format!("unexpected character '{}'", c as char)),
        }
    }
}

impl<F: Field> Polynomial<F> {
    /// Parses `text` in `ring`. See the module docs for the grammar.
    pub fn parse(text: &str, ring: Ring) -> Result<Polynomial<F>> {
        let mut p = Parser { src: text.as_bytes(), pos: 0, ring, _f: std::marker::PhantomData };
        if p.peek().is_none() {
            return p.err("empty polynomial");
        }
        let out = p.expr()?;
        if p.peek().is_some() {
            return p.err("trailing input");
        }
        Ok(out)
    }
}

/// Parses the ideal text format into a generator list.
pub fn parse_generators<F: Field>(text: &str, ring: Ring) -> Result<Vec<Polynomial<F>>> {
    let mut out = Vec::new();
    let mut offset = 0;
    for line in text.lines() {
        let body = line.split('#').next().unwrap_or("");
        if !body.trim().is_empty() {
            let p = Polynomial::parse(body, ring).map_err(|e| match e {
                AlgebraError::Syntax { pos, msg } => AlgebraError::Syntax { pos: pos + offset, msg },
                AlgebraError::UnknownVariable { name, pos } => {
                    AlgebraError::UnknownVariable { name, pos: pos + offset }
                }
                other => other,
            })?;
            out.push(p);
        }
        offset += line.len() + 1;
    }
    Ok(out)
}

/// Writes generators in the ideal text format, one per line.
pub fn format_generators<F: Field>(gens: &[Polynomial<F>]) -> String {
    let mut s = String::new();
    for g in gens {
        s.push_str(&g.to_string());
        s.push('\n');
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{Fp32003, QQ};
    use num_traits::Zero;
    use proptest::prelude::*;

    fn parse(s: &str) -> Result<Polynomial<QQ>> {
        Polynomial::parse(s, Ring::geometric())
    }

    #[test]
    fn binomial() {
        let p = parse("x*w - y*z").unwrap();
        assert_eq!(p.len(), 2);
        assert_eq!(p.is_homogeneous(), (true, Some(2)));
    }

    #[test]
    fn like_terms_collect() {
        let p = parse("x^2 + x^2").unwrap();
        assert_eq!(p.len(), 1);
        assert_eq!(p.to_string(), "2*x^2");
    }

    #[test]
    fn family_generator_expands() {
        let p: Polynomial<QQ> = Polynomial::parse("z^0*t^2*(x*z - t*y*w) - x^2", Ring::family()).unwrap();
        assert_eq!(p.len(), 3);
        assert!(p.terms().iter().all(|(m, _)| m.geometric_degree() == 2));
    }

    #[test]
    fn rational_coefficients() {
        let p = parse("-1/2*x + 3").unwrap();
        assert_eq!(p.to_string(), "-1/2*x + 3");
        assert_eq!(parse("2/4*y").unwrap().to_string(), "1/2*y");
    }

    #[test]
    fn errors_carry_positions() {
        match parse("x + q") {
            Err(AlgebraError::UnknownVariable { name, pos }) => {
                assert_eq!(name, "q");
                assert_eq!(pos, 4);
            }
            other => panic!("{:?}", other),
        }
        assert!(matches!(parse("x + "), Err(AlgebraError::Syntax { .. })));
        assert!(matches!(parse("(x + y"), Err(AlgebraError::Syntax { .. })));
        assert!(matches!(parse("x^"), Err(AlgebraError::Syntax { pos: 2, .. })));
        assert!(matches!(parse("t"), Err(AlgebraError::UnknownVariable { .. })));
        assert!(matches!(parse("1/0"), Err(AlgebraError::BadCoefficient(_))));
    }

    #[test]
    fn ideal_text_format() {
        let text = "# twisted cubic\nx*z - y^2\n\ny*w - z^2  # second\nx*w - y*z\n";
        let gens: Vec<Polynomial<QQ>> = parse_generators(text, Ring::geometric()).unwrap();
        assert_eq!(gens.len(), 3);
        let again: Vec<Polynomial<QQ>> = parse_generators(&format_generators(&gens), Ring::geometric()).unwrap();
        assert_eq!(gens, again);
    }

    #[test]
    fn prime_field_parse() {
        let p: Polynomial<Fp32003> = Polynomial::parse("1/2*x - y", Ring::geometric()).unwrap();
        let two: Polynomial<Fp32003> = Polynomial::parse("2", Ring::geometric()).unwrap();
        assert_eq!((&p * &two).to_string(), "x - 2*y");
        assert!(Polynomial::<Fp32003>::parse("1/32003*x", Ring::geometric()).is_err());
    }

    fn arb_poly() -> impl Strategy<Value = Polynomial<QQ>> {
        prop::collection::vec((-5i64..=5, 1i64..=3, 0u16..3, 0u16..3, 0u16..3, 0u16..3), 0..6).prop_map(|terms| {
            Polynomial::from_terms(
                Ring::geometric(),
                terms
                    .into_iter()
                    .map(|(n, d, a, b, c, e)| (Monomial::from_exps(&[a, b, c, e]), QQ::new(n.into(), d.into()))),
            )
        })
    }

    proptest! {
        #[test]
        fn printer_parser_roundtrip(p in arb_poly()) {
            let text = p.to_string();
            let back = parse(&text).unwrap();
            prop_assert_eq!(back, p);
        }

        #[test]
        fn mod_p_agrees_with_rational(p in arb_poly(), q in arb_poly()) {
            // denominators are at most 3, so reduction mod 32003 is defined
            let red = |f: &Polynomial<QQ>| -> Polynomial<Fp32003> {
                Polynomial::from_terms(Ring::geometric(), f.terms().iter().map(|(m, c)| {
                    (*m, crate::field::reduce_rational::<Fp32003>(c).unwrap())
                }))
            };
            prop_assert_eq!(red(&(&p * &q)), &red(&p) * &red(&q));
            prop_assert_eq!(red(&(&p + &q)), &red(&p) + &red(&q));
            prop_assert!(red(&(&p - &p)).terms().iter().all(|(_, c)| c.is_zero()));
        }
    }
}
