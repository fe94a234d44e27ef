//! Exact coefficient arithmetic.
//!
//! Three coefficient fields share the [`Field`] interface:
//! [`RatFunc`] (symbolic rational functions over the integers),
//! [`Fp`] (all parameters specialized into a prime field) and
//! [`QtFp`] (rational functions in the single variable `qroot` over the prime field).

mod fp;
mod parse;
mod poly;
mod qt;
mod ratfunc;

pub use fp::{Fp, P};
pub use parse::parse_scalar;
pub use poly::{Mono, Poly};
pub use qt::QtFp;
pub use ratfunc::RatFunc;

use crate::error::{Error, Result};
use crate::vector::Rat;
use num_integer::Integer;
use rand::Rng;
use std::fmt::{Debug, Display};
use std::ops::{Add, Mul, Neg, Sub};

/// Formal parameters. `QRoot` stands for `q^{1/D}`, `Vsh`/`Vlg` for square roots
/// of the short/long multiplicities, `Z(i)` and `H(i)` are 0-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    QRoot,
    Vsh,
    Vlg,
    Z(usize),
    H(usize),
}

/// Values of all parameters in the prime field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Assignment {
    pub qroot: u64,
    pub vsh: u64,
    pub vlg: u64,
    pub z: Vec<u64>,
    pub h: Vec<u64>,
}

impl Assignment {
    pub fn random<R: Rng>(nz: usize, nh: usize, rng: &mut R) -> Self {
        let mut pick = || rng.gen_range(2..P - 1);
        let qroot = pick();
        let vsh = pick();
        let vlg = pick();
        let z = (0..nz).map(|_| pick()).collect();
        let h = (0..nh).map(|_| pick()).collect();
        Assignment { qroot, vsh, vlg, z, h }
    }

    pub fn value(&self, v: Var) -> Option<u64> {
        match v {
            Var::QRoot => Some(self.qroot),
            Var::Vsh => Some(self.vsh),
            Var::Vlg => Some(self.vlg),
            Var::Z(i) => self.z.get(i).copied(),
            Var::H(i) => self.h.get(i).copied(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Backend {
    Symbolic,
    /// Every parameter specialized.
    Prime(Assignment),
    /// Every parameter except `qroot` specialized.
    PrimeQ(Assignment),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParamSpec {
    /// All q-exponents are multiples of `1/d`.
    pub d: i64,
    pub nz: usize,
    pub nh: usize,
    pub backend: Backend,
}

impl ParamSpec {
    pub fn symbolic(d: i64, nz: usize, nh: usize) -> Self {
        ParamSpec { d, nz, nh, backend: Backend::Symbolic }
    }

    pub fn prime<R: Rng>(d: i64, nz: usize, nh: usize, rng: &mut R) -> Self {
        ParamSpec { d, nz, nh, backend: Backend::Prime(Assignment::random(nz, nh, rng)) }
    }

    pub fn prime_q<R: Rng>(d: i64, nz: usize, nh: usize, rng: &mut R) -> Self {
        ParamSpec { d, nz, nh, backend: Backend::PrimeQ(Assignment::random(nz, nh, rng)) }
    }

    pub fn assignment(&self) -> Option<&Assignment> {
        match &self.backend {
            Backend::Symbolic => None,
            Backend::Prime(a) | Backend::PrimeQ(a) => Some(a),
        }
    }

    pub fn with_d(&self, d: i64) -> Self {
        ParamSpec { d, ..self.clone() }
    }

    /// Exponent of `qroot` representing `q^e`.
    pub fn qroot_exponent(&self, e: Rat) -> Result<i64> {
        let den = *e.denom();
        if self.d % den != 0 {
            return Err(Error::DenominatorOverflow(format!(
                "q-exponent {} needs denominator {} not dividing D={}",
                e, den, self.d
            )));
        }
        Ok(e.numer() * (self.d / den))
    }

    pub fn check_var(&self, v: Var) -> Result<()> {
        match v {
            Var::Z(i) if i >= self.nz => Err(Error::Parse(format!("z{} not in roster", i + 1))),
            Var::H(i) if i >= self.nh => Err(Error::Parse(format!("h{} not in roster", i + 1))),
            _ => Ok(()),
        }
    }
}

/// A commutative field of coefficients tied to a [`ParamSpec`].
pub trait Field:
    Clone
    + PartialEq
    + Debug
    + Display
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(n: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn inv(&self) -> Result<Self>;
    /// The parameter `v` in this field.
    fn var(spec: &ParamSpec, v: Var) -> Result<Self>;
    /// `qroot^n`, i.e. `q^{n/D}`.
    fn qroot_pow(spec: &ParamSpec, n: i64) -> Result<Self>;

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    fn div(&self, o: &Self) -> Result<Self> {
        Ok(self.clone() * &o.inv()?)
    }

    fn powi(&self, e: i64) -> Result<Self> {
        let mut base = if e < 0 { self.inv()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = base.clone() * &base;
            }
        }
        Ok(acc)
    }

    /// `q^e` for a rational `e` whose denominator divides `D`.
    fn q_power(spec: &ParamSpec, e: Rat) -> Result<Self> {
        let n = spec.qroot_exponent(e)?;
        Self::qroot_pow(spec, n)
    }
}

/// Least common multiple helper used when sizing `D`.
pub fn lcm_all<I: IntoIterator<Item = i64>>(it: I) -> i64 {
    it.into_iter().fold(1, |a, b| a.lcm(&b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::vector::rat;

    #[test]
    fn q_power_checks_denominator() {
        let spec = ParamSpec::symbolic(2, 0, 0);
        assert!(matches!(
            RatFunc::q_power(&spec, rat(1, 3)),
            Err(Error::DenominatorOverflow(_))
        ));
        let a = RatFunc::q_power(&spec, rat(1, 2)).unwrap();
        let b = RatFunc::q_power(&spec, rat(1, 1)).unwrap();
        assert_eq!(a.clone() * &a, b);
        assert_eq!(RatFunc::q_power(&spec, rat(0, 1)).unwrap(), RatFunc::one());
    }
}
