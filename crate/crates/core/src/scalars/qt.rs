//! Rational functions in the single variable `qroot` over the prime field.
//!
//! Canonical form `qroot^sh * num / den` with `num(0) != 0`, `den(0) != 0`, `den` monic
//! and `gcd(num, den) = 1`, so structural equality is field equality.

use super::{Backend, Field, Fp, ParamSpec, Var};
use crate::error::{Error, Result};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

type Dense = Vec<Fp>;

fn trim(a: &mut Dense) {
    while a.last() == Some(&Fp(0)) {
        a.pop();
    }
}

fn dmul(a: &[Fp], b: &[Fp]) -> Dense {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut r = vec![Fp(0); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.0 == 0 {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            r[i + j] = r[i + j] + *x * *y;
        }
    }
    trim(&mut r);
    r
}

fn dadd_shifted(a: &[Fp], sa: usize, b: &[Fp], sb: usize) -> Dense {
    let n = (a.len() + sa).max(b.len() + sb);
    let mut r = vec![Fp(0); n];
    for (i, x) in a.iter().enumerate() {
        r[i + sa] = r[i + sa] + *x;
    }
    for (i, x) in b.iter().enumerate() {
        r[i + sb] = r[i + sb] + *x;
    }
    trim(&mut r);
    r
}

fn ddivrem(a: &[Fp], b: &[Fp]) -> (Dense, Dense) {
    let mut r = a.to_vec();
    trim(&mut r);
    if r.len() < b.len() {
        return (vec![], r);
    }
    let lead_inv = b.last().unwrap().inv().expect("nonzero leading coefficient");
    let mut q = vec![Fp(0); r.len() - b.len() + 1];
    while r.len() >= b.len() && !r.is_empty() {
        let shift = r.len() - b.len();
        let c = *r.last().unwrap() * lead_inv;
        q[shift] = c;
        for (i, y) in b.iter().enumerate() {
            r[i + shift] = r[i + shift] - c * *y;
        }
        trim(&mut r);
    }
    trim(&mut q);
    (q, r)
}

fn dgcd(a: &[Fp], b: &[Fp]) -> Dense {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    trim(&mut x);
    trim(&mut y);
    while !y.is_empty() {
        let (_, r) = ddivrem(&x, &y);
        x = y;
        y = r;
    }
    if let Some(&l) = x.last() {
        let li = l.inv().unwrap();
        for c in x.iter_mut() {
            *c = *c * li;
        }
    }
    x
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct QtFp {
    sh: i64,
    num: Dense,
    den: Dense,
}

impl QtFp {
    pub fn from_fp(c: Fp) -> Self {
        if c.0 == 0 {
            return QtFp::zero();
        }
        QtFp { sh: 0, num: vec![c], den: vec![Fp(1)] }
    }

    fn build(mut sh: i64, mut num: Dense, mut den: Dense) -> Self {
        trim(&mut num);
        trim(&mut den);
        assert!(!den.is_empty(), "zero denominator");
        if num.is_empty() {
            return QtFp::zero();
        }
        let lz = num.iter().position(|c| c.0 != 0).unwrap();
        num.drain(..lz);
        sh += lz as i64;
        let dz = den.iter().position(|c| c.0 != 0).unwrap();
        den.drain(..dz);
        sh -= dz as i64;
        let g = dgcd(&num, &den);
        if g.len() > 1 {
            num = ddivrem(&num, &g).0;
            den = ddivrem(&den, &g).0;
        }
        let li = den.last().unwrap().inv().unwrap();
        if li != Fp(1) {
            for c in num.iter_mut() {
                *c = *c * li;
            }
            for c in den.iter_mut() {
                *c = *c * li;
            }
        }
        QtFp { sh, num, den }
    }

    /// Degree in `qroot` (numerator minus denominator), `None` for zero.
    pub fn degree(&self) -> Option<i64> {
        if self.num.is_empty() {
            None
        } else {
            Some(self.sh + self.num.len() as i64 - self.den.len() as i64)
        }
    }

    /// Value at `qroot^{-1} = 0`.
    pub fn whittaker_value(&self) -> Result<Fp> {
        match self.degree() {
            None => Ok(Fp(0)),
            Some(d) if d < 0 => Ok(Fp(0)),
            Some(0) => Ok(*self.num.last().unwrap()),
            Some(_) => Err(Error::PoleAtInfinity),
        }
    }

    /// Evaluate at `qroot = x`.
    pub fn eval(&self, x: Fp) -> Result<Fp> {
        let ev = |p: &[Fp]| p.iter().rev().fold(Fp(0), |acc, c| acc * x + *c);
        let d = ev(&self.den);
        if d.0 == 0 {
            return Err(Error::UnluckySpecialization);
        }
        Ok(ev(&self.num) * d.inv()? * x.powi(self.sh)?)
    }

    fn add_impl(&self, o: &QtFp) -> QtFp {
        if o.num.is_empty() {
            return self.clone();
        }
        if self.num.is_empty() {
            return o.clone();
        }
        let m = self.sh.min(o.sh);
        let (a, b, den) = if self.den == o.den {
            (self.num.clone(), o.num.clone(), self.den.clone())
        } else {
            (dmul(&self.num, &o.den), dmul(&o.num, &self.den), dmul(&self.den, &o.den))
        };
        let num = dadd_shifted(&a, (self.sh - m) as usize, &b, (o.sh - m) as usize);
        QtFp::build(m, num, den)
    }

    fn mul_impl(&self, o: &QtFp) -> QtFp {
        if self.num.is_empty() || o.num.is_empty() {
            return QtFp::zero();
        }
        QtFp::build(self.sh + o.sh, dmul(&self.num, &o.num), dmul(&self.den, &o.den))
    }

    fn neg_impl(&self) -> QtFp {
        QtFp { sh: self.sh, num: self.num.iter().map(|c| -*c).collect(), den: self.den.clone() }
    }
}

fn fmt_dense(p: &[Fp], sh: i64) -> String {
    let mut terms = Vec::new();
    for (i, c) in p.iter().enumerate().rev() {
        if c.0 == 0 {
            continue;
        }
        let e = i as i64 + sh;
        if e == 0 {
            terms.push(format!("{}", c));
        } else {
            terms.push(format!("{} * qroot^{}", c, e));
        }
    }
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}

impl fmt::Display for QtFp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.len() == 1 {
            write!(f, "{}", fmt_dense(&self.num, self.sh))
        } else {
            write!(f, "({}) / ({})", fmt_dense(&self.num, self.sh), fmt_dense(&self.den, 0))
        }
    }
}

impl Add for QtFp {
    type Output = QtFp;
    fn add(self, o: QtFp) -> QtFp {
        self.add_impl(&o)
    }
}
impl<'a> Add<&'a QtFp> for QtFp {
    type Output = QtFp;
    fn add(self, o: &QtFp) -> QtFp {
        self.add_impl(o)
    }
}
impl Sub for QtFp {
    type Output = QtFp;
    fn sub(self, o: QtFp) -> QtFp {
        self.add_impl(&o.neg_impl())
    }
}
impl<'a> Sub<&'a QtFp> for QtFp {
    type Output = QtFp;
    fn sub(self, o: &QtFp) -> QtFp {
        self.add_impl(&o.neg_impl())
    }
}
impl Mul for QtFp {
    type Output = QtFp;
    fn mul(self, o: QtFp) -> QtFp {
        self.mul_impl(&o)
    }
}
impl<'a> Mul<&'a QtFp> for QtFp {
    type Output = QtFp;
    fn mul(self, o: &QtFp) -> QtFp {
        self.mul_impl(o)
    }
}
impl Neg for QtFp {
    type Output = QtFp;
    fn neg(self) -> QtFp {
        self.neg_impl()
    }
}

impl Field for QtFp {
    fn zero() -> Self {
        QtFp { sh: 0, num: vec![], den: vec![Fp(1)] }
    }
    fn one() -> Self {
        QtFp::from_fp(Fp(1))
    }
    fn from_i64(n: i64) -> Self {
        QtFp::from_fp(Fp::from_i64(n))
    }
    fn is_zero(&self) -> bool {
        self.num.is_empty()
    }
    fn inv(&self) -> Result<Self> {
        if self.num.is_empty() {
            return Err(Error::DivisionByZero);
        }
        Ok(QtFp::build(-self.sh, self.den.clone(), self.num.clone()))
    }
    fn var(spec: &ParamSpec, v: Var) -> Result<Self> {
        spec.check_var(v)?;
        if v == Var::QRoot {
            return Ok(QtFp { sh: 1, num: vec![Fp(1)], den: vec![Fp(1)] });
        }
        match &spec.backend {
            Backend::PrimeQ(a) => Ok(QtFp::from_fp(Fp::new(a.value(v).expect("checked variable")))),
            _ => Err(Error::Parse(format!("{:?} is not specialized in this backend", v))),
        }
    }
    fn qroot_pow(_spec: &ParamSpec, n: i64) -> Result<Self> {
        Ok(QtFp { sh: n, num: vec![Fp(1)], den: vec![Fp(1)] })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qt() -> QtFp {
        QtFp::qroot_pow(&ParamSpec::symbolic(1, 0, 0), 1).unwrap()
    }

    #[test]
    fn canonical_after_cancellation() {
        let one = QtFp::one();
        let a = (qt() * qt() - &one).div(&(qt() - &one)).unwrap();
        assert_eq!(a, qt() + &one);
    }

    #[test]
    fn whittaker_values() {
        let one = QtFp::one();
        let a = (qt() * qt() + &one).div(&(qt() * qt())).unwrap();
        assert_eq!(a.whittaker_value().unwrap(), Fp(1));
        assert_eq!((qt() - &one).inv().unwrap().whittaker_value().unwrap(), Fp(0));
        assert_eq!((qt() + &QtFp::from_i64(2)).whittaker_value(), Err(Error::PoleAtInfinity));
        let b = (QtFp::from_i64(3) * qt() + &one).div(&(QtFp::from_i64(2) * qt())).unwrap();
        assert_eq!(b.whittaker_value().unwrap(), Fp::from_i64(3).div(&Fp::from_i64(2)).unwrap());
    }

    #[test]
    fn laurent_shift() {
        let a = qt().inv().unwrap() + &qt();
        let b = (qt() * qt() + &QtFp::one()).div(&qt()).unwrap();
        assert_eq!(a, b);
    }
}
