//! Parser for scalar expressions such as `(3 * q^(1/2) * vsh^-2 + -1) / (1 + z1^1)`.

use super::{Field, ParamSpec, Var};
use crate::error::{Error, Result};
use crate::vector::Rat;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(i64),
    Ident(String),
    Op(char),
}

fn lex(s: &str) -> Result<Vec<Tok>> {
    let cs: Vec<char> = s.chars().collect();
    let mut i = 0;
    let mut out = Vec::new();
    while i < cs.len() {
        let c = cs[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let st = i;
            while i < cs.len() && cs[i].is_ascii_digit() {
                i += 1;
            }
            let t: String = cs[st..i].iter().collect();
            out.push(Tok::Num(t.parse().map_err(|_| Error::Parse(format!("bad number {}", t)))?));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let st = i;
            while i < cs.len() && (cs[i].is_ascii_alphanumeric() || cs[i] == '_') {
                i += 1;
            }
            out.push(Tok::Ident(cs[st..i].iter().collect()));
        } else if "+-*/^()".contains(c) {
            out.push(Tok::Op(c));
            i += 1;
        } else {
            return Err(Error::Parse(format!("unexpected character {:?}", c)));
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<Tok>,
    pos: usize,
    spec: &'a ParamSpec,
}

enum Atom<S> {
    Value(S),
    Q,
    QRoot,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Op(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr<S: Field>(&mut self) -> Result<S> {
        let mut acc = self.term::<S>()?;
        loop {
            if self.eat('+') {
                acc = acc + self.term::<S>()?;
            } else if self.eat('-') {
                acc = acc - self.term::<S>()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term<S: Field>(&mut self) -> Result<S> {
        let mut acc = self.factor::<S>()?;
        loop {
            if self.eat('*') {
                acc = acc * self.factor::<S>()?;
            } else if self.eat('/') {
                let d = self.factor::<S>()?;
                acc = acc.div(&d)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn exponent(&mut self) -> Result<Rat> {
        let neg = self.eat('-');
        let r = if self.eat('(') {
            let neg2 = self.eat('-');
            let a = self.int()?;
            let r = if self.eat('/') { Rat::new(a, self.int()?) } else { Rat::from_integer(a) };
            if !self.eat(')') {
                return Err(Error::Parse("expected )".into()));
            }
            if neg2 {
                -r
            } else {
                r
            }
        } else {
            Rat::from_integer(self.int()?)
        };
        Ok(if neg { -r } else { r })
    }

    fn int(&mut self) -> Result<i64> {
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                Ok(n)
            }
            t => Err(Error::Parse(format!("expected integer, got {:?}", t))),
        }
    }

    fn factor<S: Field>(&mut self) -> Result<S> {
        if self.eat('-') {
            return Ok(-self.factor::<S>()?);
        }
        let atom = self.atom::<S>()?;
        let e = if self.eat('^') { Some(self.exponent()?) } else { None };
        match atom {
            Atom::Q => S::q_power(self.spec, e.unwrap_or(Rat::from_integer(1))),
            Atom::QRoot => {
                let e = e.unwrap_or(Rat::from_integer(1));
                if !e.is_integer() {
                    return Err(Error::Parse("qroot needs an integer exponent".into()));
                }
                S::qroot_pow(self.spec, *e.numer())
            }
            Atom::Value(v) => match e {
                None => Ok(v),
                Some(e) if e.is_integer() => v.powi(*e.numer()),
                Some(_) => Err(Error::Parse("fractional exponent on a non-q factor".into())),
            },
        }
    }

    fn atom<S: Field>(&mut self) -> Result<Atom<S>> {
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                Ok(Atom::Value(S::from_i64(n)))
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let v = self.expr::<S>()?;
                if !self.eat(')') {
                    return Err(Error::Parse("expected )".into()));
                }
                Ok(Atom::Value(v))
            }
            Some(Tok::Ident(id)) => {
                self.pos += 1;
                let var = match id.as_str() {
                    "q" => return Ok(Atom::Q),
                    "qroot" => return Ok(Atom::QRoot),
                    "vsh" => Var::Vsh,
                    "vlg" => Var::Vlg,
                    s if s.starts_with('z') => Var::Z(index(&s[1..])?),
                    s if s.starts_with('h') => Var::H(index(&s[1..])?),
                    s => return Err(Error::Parse(format!("unknown symbol {}", s))),
                };
                Ok(Atom::Value(S::var(self.spec, var)?))
            }
            t => Err(Error::Parse(format!("unexpected token {:?}", t))),
        }
    }
}

fn index(s: &str) -> Result<usize> {
    let i: usize = s.parse().map_err(|_| Error::Parse(format!("bad index {}", s)))?;
    if i == 0 {
        return Err(Error::Parse("indices start at 1".into()));
    }
    Ok(i - 1)
}

/// Parse a scalar expression into any coefficient field.
pub fn parse_scalar<S: Field>(s: &str, spec: &ParamSpec) -> Result<S> {
    let mut p = Parser { toks: lex(s)?, pos: 0, spec };
    let v = p.expr::<S>()?;
    if p.pos != p.toks.len() {
        return Err(Error::Parse(format!("trailing input in {:?}", s)));
    }
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::RatFunc;

    #[test]
    fn roundtrip_display() {
        let spec = ParamSpec::symbolic(4, 2, 1);
        let a: RatFunc = parse_scalar("(3*q^(1/2)*vsh^-2 - z2 + h1) / (1 - q^(3/4)*z1)", &spec).unwrap();
        let s = a.to_string();
        let b: RatFunc = parse_scalar(&s, &spec).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn rejects_fractional_exponent_on_symbol() {
        let spec = ParamSpec::symbolic(4, 0, 0);
        assert!(parse_scalar::<RatFunc>("vsh^(1/2)", &spec).is_err());
        assert!(parse_scalar::<RatFunc>("q^(1/3)", &spec).is_err());
    }
}
