//! The prime field of order `2^61 - 1`.

use super::{Field, ParamSpec, Var};
use crate::error::{Error, Result};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// The Mersenne prime `2^61 - 1`.
pub const P: u64 = (1u64 << 61) - 1;

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Fp(pub u64);

#[inline]
fn reduce128(x: u128) -> u64 {
    let lo = (x as u64) & P;
    let hi = (x >> 61) as u64;
    let mut s = lo + (hi & P) + (hi >> 61);
    while s >= P {
        s -= P;
    }
    s
}

impl Fp {
    pub fn new(x: u64) -> Self {
        Fp(x % P)
    }

    pub fn from_i128(x: i128) -> Self {
        let m = x.rem_euclid(P as i128);
        Fp(m as u64)
    }

    pub fn pow_u(self, mut e: u64) -> Fp {
        let mut b = self;
        let mut acc = Fp(1);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * b;
            }
            b = b * b;
            e >>= 1;
        }
        acc
    }

    pub fn value(self) -> u64 {
        self.0
    }
}

impl fmt::Debug for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Add for Fp {
    type Output = Fp;
    #[inline]
    fn add(self, o: Fp) -> Fp {
        let s = self.0 + o.0;
        Fp(if s >= P { s - P } else { s })
    }
}

impl Sub for Fp {
    type Output = Fp;
    #[inline]
    fn sub(self, o: Fp) -> Fp {
        Fp(if self.0 >= o.0 { self.0 - o.0 } else { self.0 + P - o.0 })
    }
}

impl Mul for Fp {
    type Output = Fp;
    #[inline]
    fn mul(self, o: Fp) -> Fp {
        Fp(reduce128(self.0 as u128 * o.0 as u128))
    }
}

impl Neg for Fp {
    type Output = Fp;
    #[inline]
    fn neg(self) -> Fp {
        Fp(if self.0 == 0 { 0 } else { P - self.0 })
    }
}

impl<'a> Add<&'a Fp> for Fp {
    type Output = Fp;
    fn add(self, o: &Fp) -> Fp {
        self + *o
    }
}

impl<'a> Sub<&'a Fp> for Fp {
    type Output = Fp;
    fn sub(self, o: &Fp) -> Fp {
        self - *o
    }
}

impl<'a> Mul<&'a Fp> for Fp {
    type Output = Fp;
    fn mul(self, o: &Fp) -> Fp {
        self * *o
    }
}

impl Field for Fp {
    fn zero() -> Self {
        Fp(0)
    }
    fn one() -> Self {
        Fp(1)
    }
    fn from_i64(n: i64) -> Self {
        Fp::from_i128(n as i128)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
    fn inv(&self) -> Result<Self> {
        if self.0 == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(self.pow_u(P - 2))
    }
    fn var(spec: &ParamSpec, v: Var) -> Result<Self> {
        spec.check_var(v)?;
        match &spec.backend {
            super::Backend::Prime(a) => Ok(Fp::new(a.value(v).expect("checked variable"))),
            _ => Err(Error::Parse(format!("{:?} is not specialized in this backend", v))),
        }
    }
    fn qroot_pow(spec: &ParamSpec, n: i64) -> Result<Self> {
        Fp::var(spec, Var::QRoot)?.powi(n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_roundtrip() {
        let a = Fp::new(123456789);
        assert_eq!(a * a.inv().unwrap(), Fp(1));
        assert_eq!(Fp(0).inv(), Err(Error::DivisionByZero));
    }

    #[test]
    fn reduction_at_edges() {
        let m = Fp(P - 1);
        assert_eq!(m * m, Fp(1));
        assert_eq!(m + Fp(1), Fp(0));
        assert_eq!(Fp(0) - Fp(1), m);
        assert!(P > 1u64 << 60);
    }
}
