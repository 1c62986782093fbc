//! Element syntax for the command line.
//!
//! ```text
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := factor (['*'] factor)*
//! factor := atom ['^' ['-'] int]
//! atom   := int ['/' int] | e0 | e1 | y<n> | X0 | X1 | Y<n>+ | Y<n>- | '(' expr ')'
//! ```
//!
//! Juxtaposition multiplies. `Y<n>` always carries its sign, so `Y2+X1` is
//! Y_2^+ times X1. Negative powers are allowed on single group words only.
//! de Rham letters (e0, e1, y<n>) and Betti letters (X0, X1, Y<n>±) cannot
//! be mixed in one expression.

use anyhow::{anyhow, bail, Result};
use dshuffle::betti_side::{ga_mul, ga_one, ga_word, y_value, F2Word, GroupAlg};
use dshuffle::dr_side::YMonomial;
use dshuffle::ncalg::{Series, E0, E1};
use dshuffle::scalar::qi;
use dshuffle::{Coeff, Q};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(Q),
    E(u8),
    Ylow(usize),
    X(i8),
    Yup(usize, bool),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
}

fn number(b: &[u8], i: &mut usize) -> Option<u64> {
    let start = *i;
    while *i < b.len() && b[*i].is_ascii_digit() {
        *i += 1;
    }
    std::str::from_utf8(&b[start..*i]).ok()?.parse().ok()
}

fn lex(s: &str) -> Result<Vec<Tok>> {
    let b = s.as_bytes();
    let mut i = 0;
    let mut out = Vec::new();
    let bad = |i: usize| anyhow!("malformed element at byte {} of {:?}", i, s);
    while i < b.len() {
        let c = b[i];
        match c {
            b' ' | b'\t' => i += 1,
            b'+' => {
                out.push(Tok::Plus);
                i += 1
            }
            b'-' => {
                out.push(Tok::Minus);
                i += 1
            }
            b'*' => {
                out.push(Tok::Star);
                i += 1
            }
            b'^' => {
                out.push(Tok::Caret);
                i += 1
            }
            b'(' => {
                out.push(Tok::LParen);
                i += 1
            }
            b')' => {
                out.push(Tok::RParen);
                i += 1
            }
            b'0'..=b'9' => {
                let n = number(b, &mut i).ok_or_else(|| bad(i))?;
                let mut v = Q::from_integer(n.into());
                if i < b.len() && b[i] == b'/' {
                    i += 1;
                    let d = number(b, &mut i).filter(|&d| d > 0).ok_or_else(|| bad(i))?;
                    v /= Q::from_integer(d.into());
                }
                out.push(Tok::Num(v));
            }
            b'e' | b'X' | b'y' | b'Y' => {
                i += 1;
                let n = number(b, &mut i).ok_or_else(|| bad(i))? as usize;
                out.push(match c {
                    b'e' if n <= 1 => Tok::E(n as u8),
                    b'X' if n <= 1 => Tok::X(n as i8 + 1),
                    b'y' if n >= 1 => Tok::Ylow(n),
                    b'Y' if n >= 1 => {
                        let sign = b.get(i).copied();
                        i += 1;
                        match sign {
                            Some(b'+') => Tok::Yup(n, true),
                            Some(b'-') => Tok::Yup(n, false),
                            _ => bail!("Y{} needs a sign suffix (+ or -) in {:?}", n, s),
                        }
                    }
                    _ => return Err(bad(i)),
                });
            }
            _ => return Err(bad(i)),
        }
    }
    Ok(out)
}

/// Parsed element: a scalar, a de Rham series or a Betti group-algebra element.
#[derive(Clone, Debug, PartialEq)]
pub enum Value {
    Scalar(Q),
    DeRham(Series),
    Betti(GroupAlg),
}

impl Value {
    pub fn into_de_rham(self, n: usize) -> Result<Series> {
        match self {
            Value::Scalar(c) => Ok(Series::scalar(c, n)),
            Value::DeRham(s) => Ok(s),
            Value::Betti(_) => bail!("expected a de Rham element (e0, e1, y<n>)"),
        }
    }
    pub fn into_betti(self) -> Result<GroupAlg> {
        match self {
            Value::Scalar(c) => Ok(ga_one().scale(&c)),
            Value::Betti(a) => Ok(a),
            Value::DeRham(_) => bail!("expected a Betti element (X0, X1, Y<n>+/-)"),
        }
    }
}

fn add(a: Value, b: Value, n: usize) -> Result<Value> {
    Ok(match (a, b) {
        (Value::Scalar(x), Value::Scalar(y)) => Value::Scalar(x + y),
        (Value::Betti(x), y) | (y, Value::Betti(x)) => Value::Betti(x.add(&y.into_betti()?)),
        (x, y) => Value::DeRham(x.into_de_rham(n)?.add(&y.into_de_rham(n)?)?),
    })
}

fn mul(a: Value, b: Value) -> Result<Value> {
    Ok(match (a, b) {
        (Value::Scalar(x), Value::Scalar(y)) => Value::Scalar(x * y),
        (Value::Scalar(c), Value::Betti(x)) | (Value::Betti(x), Value::Scalar(c)) => Value::Betti(x.scale(&c)),
        (Value::Betti(x), Value::Betti(y)) => Value::Betti(ga_mul(&x, &y)),
        (Value::Scalar(c), Value::DeRham(x)) | (Value::DeRham(x), Value::Scalar(c)) => Value::DeRham(x.scale(&c)),
        (Value::DeRham(x), Value::DeRham(y)) => Value::DeRham(x.mul(&y)?),
        _ => bail!("cannot mix de Rham and Betti letters"),
    })
}

fn neg(a: Value) -> Value {
    match a {
        Value::Scalar(x) => Value::Scalar(-x),
        Value::Betti(x) => Value::Betti(x.neg()),
        Value::DeRham(x) => Value::DeRham(x.neg()),
    }
}

fn one_like(a: &Value, n: usize) -> Value {
    match a {
        Value::Scalar(_) => Value::Scalar(qi(1)),
        Value::Betti(_) => Value::Betti(ga_one()),
        Value::DeRham(_) => Value::DeRham(Series::one(n)),
    }
}

struct Parser<'a> {
    toks: &'a [Tok],
    pos: usize,
    n: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn expr(&mut self) -> Result<Value> {
        let mut sign = false;
        match self.peek() {
            Some(Tok::Plus) => self.pos += 1,
            Some(Tok::Minus) => {
                self.pos += 1;
                sign = true
            }
            _ => {}
        }
        let mut acc = self.term()?;
        if sign {
            acc = neg(acc);
        }
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    let t = self.signed_term()?;
                    acc = add(acc, t, self.n)?;
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    let t = self.signed_term()?;
                    acc = add(acc, neg(t), self.n)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    // rendered output writes `a + -1*b`
    fn signed_term(&mut self) -> Result<Value> {
        if self.peek() == Some(&Tok::Minus) {
            self.pos += 1;
            return Ok(neg(self.term()?));
        }
        self.term()
    }

    fn term(&mut self) -> Result<Value> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.pos += 1;
                    let f = self.factor()?;
                    acc = mul(acc, f)?;
                }
                Some(Tok::Num(_) | Tok::E(_) | Tok::Ylow(_) | Tok::X(_) | Tok::Yup(..) | Tok::LParen) => {
                    let f = self.factor()?;
                    acc = mul(acc, f)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<Value> {
        let base = self.atom()?;
        if self.peek() != Some(&Tok::Caret) {
            return Ok(base);
        }
        self.pos += 1;
        let negative = self.peek() == Some(&Tok::Minus);
        if negative {
            self.pos += 1;
        }
        let e = match self.next() {
            Some(Tok::Num(q)) if q.is_integer() => q.to_integer(),
            _ => bail!("exponent must be an integer"),
        };
        let e: u32 = e.try_into().map_err(|_| anyhow!("exponent too large"))?;
        let base = if negative { invert(base)? } else { base };
        let mut acc = one_like(&base, self.n);
        for _ in 0..e {
            acc = mul(acc, base.clone())?;
        }
        Ok(acc)
    }

    fn atom(&mut self) -> Result<Value> {
        let n = self.n;
        match self.next() {
            Some(Tok::Num(q)) => Ok(Value::Scalar(q)),
            Some(Tok::E(l)) => Ok(Value::DeRham(Series::letter(if l == 0 { E0 } else { E1 }, n))),
            Some(Tok::Ylow(k)) => {
                let (w, s) = YMonomial(vec![k]).expand();
                Ok(Value::DeRham(Series::word(w, n).scale(&Q::from_i64(s))))
            }
            Some(Tok::X(g)) => Ok(Value::Betti(ga_word(F2Word::gen(g)))),
            Some(Tok::Yup(k, p)) => Ok(Value::Betti(y_value(k, p))),
            Some(Tok::LParen) => {
                let v = self.expr()?;
                match self.next() {
                    Some(Tok::RParen) => Ok(v),
                    _ => bail!("missing closing parenthesis"),
                }
            }
            t => bail!("unexpected token {:?}", t),
        }
    }
}

fn invert(v: Value) -> Result<Value> {
    match v {
        Value::Scalar(q) if !Coeff::is_zero(&q) => Ok(Value::Scalar(qi(1) / q)),
        Value::Betti(a) if a.len() == 1 => {
            let (w, c) = a.iter().next().expect("one term");
            if c != &qi(1) {
                bail!("only group words can be inverted");
            }
            Ok(Value::Betti(ga_word(w.inv())))
        }
        _ => bail!("only group words and nonzero scalars can be inverted"),
    }
}

/// Parse an element; de Rham series are truncated at `n`.
pub fn parse(s: &str, n: usize) -> Result<Value> {
    let toks = lex(s)?;
    if toks.is_empty() {
        bail!("empty element");
    }
    let mut p = Parser { toks: &toks, pos: 0, n };
    let v = p.expr()?;
    if p.pos != toks.len() {
        bail!("trailing input after position {} in {:?}", p.pos, s);
    }
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use dshuffle::betti_side::render_ga;
    use dshuffle::ncalg::Word;
    use dshuffle::scalar::q;

    #[test]
    fn de_rham_elements() {
        let v = parse("e0e1 - 1/2 e1*e0", 3).unwrap().into_de_rham(3).unwrap();
        assert_eq!(v.terms().get(&Word::parse("e0e1").unwrap()), qi(1));
        assert_eq!(v.terms().get(&Word::parse("e1e0").unwrap()), q(-1, 2));
        let y = parse("y2", 3).unwrap().into_de_rham(3).unwrap();
        assert_eq!(y.terms().get(&Word::parse("e0e1").unwrap()), qi(-1));
    }

    #[test]
    fn betti_elements() {
        let v = parse("X1^-1 X0^2 - 3", 0).unwrap().into_betti().unwrap();
        assert_eq!(render_ga(&v), "-3*1 + X1^-1 X0^2");
        let y = parse("Y1+", 0).unwrap().into_betti().unwrap();
        assert_eq!(y, y_value(1, true));
        let z = parse("Y2+X1", 0).unwrap().into_betti().unwrap();
        assert_eq!(z, ga_mul(&y_value(2, true), &ga_word(F2Word::gen(2))));
    }

    #[test]
    fn rendered_output_parses_back() {
        let a = parse("(X0 - 1)^2 (X1 - 1)", 0).unwrap().into_betti().unwrap();
        let b = parse(&render_ga(&a), 0).unwrap().into_betti().unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn malformed_inputs() {
        for s in ["", "e2", "Y2", "e0 X1", "(e0", "X0^(1)", "(e0+e1)^-1", "1/0"] {
            assert!(parse(s, 3).is_err(), "{:?} should be rejected", s);
        }
    }
}
