//! Recursive-descent parser for the polynomial text grammar.
//!
//! ```text
//! expr    := ['+'|'-'] term (('+'|'-') term)*
//! term    := factor (['*'|'/'] factor)*
//! factor  := '-' factor | primary ['^' integer]
//! primary := integer | identifier | '(' expr ')'
//! ```
//!
//! Identifiers are the polynomial variables, `t` for the extension
//! generator of `GF(p^k)` and `u` for the generator of `k[u]`.

use num_bigint::BigInt;

use super::{MultiPoly, VarSet};
use crate::error::{Error, Result};
use crate::rings::Ring;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Sym(char),
}

fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>> {
    let mut out = Vec::new();
    let mut it = text.char_indices().peekable();
    while let Some(&(pos, ch)) = it.peek() {
        if ch.is_whitespace() {
            it.next();
        } else if ch.is_ascii_digit() {
            let mut s = String::new();
            while let Some(&(_, c)) = it.peek() {
                if !c.is_ascii_digit() {
                    break;
                }
                s.push(c);
                it.next();
            }
            out.push((pos, Tok::Num(s.parse().unwrap())));
        } else if ch.is_ascii_alphabetic() || ch == '_' {
            let mut s = String::new();
            while let Some(&(_, c)) = it.peek() {
                if !(c.is_ascii_alphanumeric() || c == '_') {
                    break;
                }
                s.push(c);
                it.next();
            }
            out.push((pos, Tok::Ident(s)));
        } else {
            let sym = match ch {
                '\u{2212}' => '-',
                '+' | '-' | '*' | '/' | '^' | '(' | ')' => ch,
                _ => {
                    return Err(Error::Parse {
                        pos,
                        msg: format!("unexpected character `{ch}`"),
                    })
                }
            };
            out.push((pos, Tok::Sym(sym)));
            it.next();
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    at: usize,
    end: usize,
    ring: &'a Ring,
    vars: &'a VarSet,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(_, t)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(self.end, |(p, _)| *p)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            pos: self.pos(),
            msg: msg.into(),
        })
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<MultiPoly> {
        let mut acc = if self.eat('-') {
            -&self.term()?
        } else {
            self.eat('+');
            self.term()?
        };
        loop {
            if self.eat('+') {
                acc = &acc + &self.term()?;
            } else if self.eat('-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<MultiPoly> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(Tok::Sym('*')) => {
                    self.at += 1;
                    acc = &acc * &self.factor()?;
                }
                Some(Tok::Sym('/')) => {
                    self.at += 1;
                    let pos = self.pos();
                    let d = self.factor()?;
                    acc = self.divide(&acc, &d, pos)?;
                }
                // implicit product, as in `2x1` or `3(x+1)`
                Some(Tok::Ident(_)) | Some(Tok::Sym('(')) => {
                    acc = &acc * &self.factor()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn divide(&self, a: &MultiPoly, d: &MultiPoly, pos: usize) -> Result<MultiPoly> {
        if d.is_zero() {
            return Err(Error::Parse {
                pos,
                msg: "division by zero".into(),
            });
        }
        if d.is_constant() {
            if let Some(inv) = self.ring.inv(&d.constant_coeff()) {
                return Ok(a.scale(&inv));
            }
        }
        a.div_exact(d).ok_or_else(|| Error::NotInRing {
            ring: self.ring.to_string(),
            what: format!("({a})/({d})"),
        })
    }

    fn factor(&mut self) -> Result<MultiPoly> {
        if self.eat('-') {
            return Ok(-&self.factor()?);
        }
        let base = self.primary()?;
        if self.eat('^') {
            match self.peek().cloned() {
                Some(Tok::Num(n)) => {
                    self.at += 1;
                    let e: u32 = n
                        .try_into()
                        .map_err(|_| Error::Parse {
                            pos: self.pos(),
                            msg: "exponent too large".into(),
                        })?;
                    Ok(base.pow(e))
                }
                _ => self.err("expected a nonnegative integer exponent"),
            }
        } else {
            Ok(base)
        }
    }

    fn primary(&mut self) -> Result<MultiPoly> {
        let (ring, vars) = (self.ring, self.vars);
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.at += 1;
                Ok(MultiPoly::constant(ring, vars, ring.from_bigint(&n)))
            }
            Some(Tok::Ident(name)) => {
                if let Some(i) = vars.index_of(&name) {
                    self.at += 1;
                    return Ok(MultiPoly::var(ring, vars, i));
                }
                let special = match name.as_str() {
                    "t" => ring.t(),
                    "u" => ring.u(),
                    _ => None,
                };
                match special {
                    Some(c) => {
                        self.at += 1;
                        Ok(MultiPoly::constant(ring, vars, c))
                    }
                    None if name == "t" || name == "u" => Err(Error::NotInRing {
                        ring: ring.to_string(),
                        what: name,
                    }),
                    None => Err(Error::UnknownVariable(name)),
                }
            }
            Some(Tok::Sym('(')) => {
                self.at += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    return self.err("expected `)`");
                }
                Ok(e)
            }
            Some(t) => self.err(format!("unexpected {t:?}")),
            None => self.err("unexpected end of input"),
        }
    }
}

/// Parses `text` into a polynomial over `ring` in `vars`.
pub fn parse_poly(text: &str, ring: &Ring, vars: &VarSet) -> Result<MultiPoly> {
    let toks = tokenize(text)?;
    if toks.is_empty() {
        return Err(Error::Parse {
            pos: 0,
            msg: "empty input".into(),
        });
    }
    let mut p = Parser {
        toks,
        at: 0,
        end: text.len(),
        ring,
        vars,
    };
    let out = p.expr()?;
    if p.at != p.toks.len() {
        return p.err("trailing input");
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multipoly::Monomial;

    #[test]
    fn grammar_examples() {
        let f2 = Ring::prime_field(2).unwrap();
        let xy = VarSet::new(["x1", "y"]).unwrap();
        let swan = parse_poly("y^8 + x1^3", &f2, &xy).unwrap();
        assert_eq!(swan.nterms(), 2);
        assert_eq!(swan.coeff(&Monomial(vec![0, 8])), f2.one());

        let z = Ring::integers();
        assert!(parse_poly("0", &z, &xy).unwrap().is_zero());

        let r = Ring::parse("GF(2)[u]").unwrap();
        let v = VarSet::x(1);
        let f = parse_poly("(u+1)*x1 + u", &r, &v).unwrap();
        assert_eq!(f.nterms(), 2);
        assert_eq!(f.to_string(), "(u + 1)*x + u");
    }

    #[test]
    fn errors_carry_positions() {
        let z = Ring::integers();
        let v = VarSet::x(2);
        match parse_poly("x1 + * x2", &z, &v) {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 5),
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            parse_poly("x3", &z, &v),
            Err(Error::UnknownVariable(_))
        ));
        assert!(matches!(
            parse_poly("x1/2", &z, &v),
            Err(Error::NotInRing { .. })
        ));
        assert!(matches!(parse_poly("t", &z, &v), Err(Error::NotInRing { .. })));
        assert!(parse_poly("(x1", &z, &v).is_err());
        assert!(parse_poly("", &z, &v).is_err());
    }

    #[test]
    fn division_and_residues() {
        let z = Ring::integers();
        let v = VarSet::x(2);
        assert_eq!(
            parse_poly("(x1^2 - x2^2)/(x1 - x2)", &z, &v).unwrap(),
            parse_poly("x1 + x2", &z, &v).unwrap()
        );
        let f5 = Ring::prime_field(5).unwrap();
        assert_eq!(
            parse_poly("x1/2 + 7", &f5, &v).unwrap(),
            parse_poly("3*x1 + 2", &f5, &v).unwrap()
        );
        assert_eq!(
            parse_poly("2x1 − 3(x2+1)", &z, &v).unwrap(),
            parse_poly("2*x1 - 3*x2 - 3", &z, &v).unwrap()
        );
    }
}
