//! Symbolic rational functions with factored denominators.
//!
//! A value is `num / (den * f_1^{m_1} * ... )` where `num` is a Laurent polynomial,
//! `den` a positive integer and each `f_i` a primitive polynomial with positive leading
//! coefficient and no monomial factor. No multivariate gcd is computed: common factors
//! are found by exact trial division against the denominator factors, which in turn are
//! split against a registry of previously seen factors.

use super::poly::{slot, Mono, Poly};
use super::{Backend, Field, Fp, ParamSpec, QtFp, Var, P};
use crate::error::{Error, Result};
use crate::vector::Rat;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::cell::RefCell;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

const REGISTRY_CAP: usize = 4096;

thread_local! {
    static REGISTRY: RefCell<Vec<Poly>> = const { RefCell::new(Vec::new()) };
}

#[derive(Clone, Debug)]
pub struct RatFunc {
    num: Poly,
    den: BigInt,
    fac: Vec<(Poly, u32)>,
}

/// Split `p = c * x^m * core` with `c` an integer carrying the sign, `core` primitive with
/// positive leading coefficient and no monomial content.
fn primitive_part(p: &Poly) -> (BigInt, Mono, Poly) {
    let mut c = p.content();
    let m = p.min_mono().unwrap();
    let mut core = p.shift(&Mono::one().div(&m)).div_int(&c);
    if core.leading().unwrap().1.is_negative() {
        core = core.neg();
        c = -c;
    }
    (c, m, core)
}

/// Split a primitive factor against the registry.
fn split_factor(p: Poly) -> Vec<Poly> {
    if p.t.len() <= 1 {
        return vec![];
    }
    REGISTRY.with(|reg| {
        let mut reg = reg.borrow_mut();
        let mut out = Vec::new();
        let mut rest = p;
        for f in reg.iter() {
            if rest.t.len() <= 1 {
                break;
            }
            if f.t.len() > rest.t.len() {
                continue;
            }
            while rest.t.len() > 1 {
                match rest.exact_div(f) {
                    Some(qt) => {
                        out.push(f.clone());
                        rest = qt;
                    }
                    None => break,
                }
            }
        }
        if rest.t.len() > 1 {
            let (_, _, core) = primitive_part(&rest);
            if reg.len() < REGISTRY_CAP && !reg.contains(&core) {
                reg.push(core.clone());
            }
            out.push(core);
        }
        out
    })
}

fn push_factor(fac: &mut Vec<(Poly, u32)>, f: Poly, m: u32) {
    if m == 0 {
        return;
    }
    for (g, k) in fac.iter_mut() {
        if *g == f {
            *k += m;
            return;
        }
    }
    fac.push((f, m));
}

impl RatFunc {
    pub fn from_poly(p: Poly) -> Self {
        RatFunc { num: p, den: BigInt::one(), fac: vec![] }
    }

    pub fn from_mono(m: Mono) -> Self {
        RatFunc::from_poly(Poly::mono(m, BigInt::one()))
    }

    pub fn numerator(&self) -> &Poly {
        &self.num
    }

    /// Expanded denominator.
    pub fn denominator(&self) -> Poly {
        let mut d = Poly::constant(self.den.clone());
        for (f, m) in &self.fac {
            d = d.mul(&f.pow(*m));
        }
        d
    }

    fn normalize(mut self) -> Self {
        if self.num.is_zero() {
            return RatFunc::zero();
        }
        self.fac.retain(|(_, m)| *m > 0);
        for i in 0..self.fac.len() {
            while self.fac[i].1 > 0 {
                match self.num.exact_div(&self.fac[i].0) {
                    Some(qt) => {
                        self.num = qt;
                        self.fac[i].1 -= 1;
                    }
                    None => break,
                }
            }
        }
        self.fac.retain(|(_, m)| *m > 0);
        let g = self.num.content().gcd(&self.den);
        if !g.is_one() {
            self.num = self.num.div_int(&g);
            self.den /= g;
        }
        self
    }

    fn inv_impl(&self) -> Result<Self> {
        if self.num.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let (c, m, core) = primitive_part(&self.num);
        let mut num = Poly::mono(Mono::one().div(&m), self.den.clone());
        for (f, k) in &self.fac {
            num = num.mul(&f.pow(*k));
        }
        let (num, den) = if c.is_negative() { (num.neg(), -c) } else { (num, c) };
        let mut fac = Vec::new();
        for f in split_factor(core) {
            push_factor(&mut fac, f, 1);
        }
        Ok(RatFunc { num, den, fac }.normalize())
    }

    /// Evaluate modulo an arbitrary prime `p` (which may differ from the built-in one).
    pub fn specialize_mod(
        &self,
        p: u64,
        val: &dyn Fn(Var) -> Option<u64>,
        d: i64,
    ) -> Result<u64> {
        let qexp = |e: Rat| -> Option<i64> {
            if d % e.denom() != 0 {
                None
            } else {
                Some(e.numer() * (d / e.denom()))
            }
        };
        let n = self
            .num
            .eval_mod(p, val, &qexp)
            .ok_or_else(|| Error::Parse("unassigned variable or bad q-exponent".into()))?;
        let den = self
            .denominator()
            .eval_mod(p, val, &qexp)
            .ok_or_else(|| Error::Parse("unassigned variable or bad q-exponent".into()))?;
        if den == 0 {
            return Err(Error::UnluckySpecialization);
        }
        let inv = super::poly::pow_mod(den, -1, p).ok_or(Error::UnluckySpecialization)?;
        Ok(((n as u128 * inv as u128) % p as u128) as u64)
    }

    /// Image in the prime field under the assignment of a `Prime` spec.
    pub fn specialize(&self, target: &ParamSpec) -> Result<Fp> {
        let a = match &target.backend {
            Backend::Prime(a) => a,
            _ => return Err(Error::Parse("specialize needs a Prime backend".into())),
        };
        let v = self.specialize_mod(P, &|x| a.value(x), target.d)?;
        Ok(Fp(v))
    }

    /// Image in `F_p(qroot)` under a `PrimeQ` spec.
    pub fn specialize_q(&self, target: &ParamSpec) -> Result<QtFp> {
        let a = match &target.backend {
            Backend::PrimeQ(a) => a,
            _ => return Err(Error::Parse("specialize_q needs a PrimeQ backend".into())),
        };
        let conv = |p: &Poly| -> Result<QtFp> {
            let mut acc = QtFp::zero();
            for (m, c) in &p.t {
                let mut term = QtFp::from_fp(Fp::from_i128(
                    (c % BigInt::from(P)).to_string().parse::<i128>().unwrap(),
                ));
                term = term * &QtFp::qroot_pow(target, target.qroot_exponent(m.q)?)?;
                for (s, &k) in m.e.iter().enumerate() {
                    if k != 0 {
                        let v = a
                            .value(super::poly::slot_var(s))
                            .ok_or_else(|| Error::Parse("unassigned variable".into()))?;
                        term = term * &QtFp::from_fp(Fp::new(v).powi(k as i64)?);
                    }
                }
                acc = acc + term;
            }
            Ok(acc)
        };
        let n = conv(&self.num)?;
        let d = conv(&self.denominator())?;
        if d.is_zero() {
            return Err(Error::UnluckySpecialization);
        }
        n.div(&d)
    }

    /// Value at `q^{-1} = 0` of a rational function in `q` whose other coefficients are
    /// treated as constants.
    pub fn whittaker_value(&self) -> Result<RatFunc> {
        if self.num.is_zero() {
            return Ok(RatFunc::zero());
        }
        let nq = self.num.by_q();
        let (ndeg, nlead) = nq.iter().next_back().map(|(d, p)| (*d, p.clone())).unwrap();
        let mut ddeg = Rat::zero();
        let mut dlead = Poly::constant(self.den.clone());
        for (f, m) in &self.fac {
            let fq = f.by_q();
            let (d, p) = fq.iter().next_back().unwrap();
            ddeg += d * Rat::from_integer(*m as i64);
            dlead = dlead.mul(&p.pow(*m));
        }
        if ndeg < ddeg {
            Ok(RatFunc::zero())
        } else if ndeg > ddeg {
            Err(Error::PoleAtInfinity)
        } else {
            RatFunc::from_poly(nlead).div(&RatFunc::from_poly(dlead))
        }
    }

    /// Limit as the variables `vars` tend to zero together (homogeneous scaling).
    /// Fails if the limit is infinite or still depends on the variables.
    pub fn limit_zero(&self, vars: &[Var]) -> Result<RatFunc> {
        if self.num.is_zero() {
            return Ok(RatFunc::zero());
        }
        let slots: Vec<usize> = vars.iter().filter_map(|v| slot(*v)).collect();
        let lowest = |p: &Poly| -> (i64, Poly) {
            let d = p.t.keys().map(|m| m.total_degree_in(&slots)).min().unwrap();
            let mut out = Poly::zero();
            for (m, c) in &p.t {
                if m.total_degree_in(&slots) == d {
                    out.t.insert(m.clone(), c.clone());
                }
            }
            (d, out)
        };
        let (nd, np) = lowest(&self.num);
        let (dd, dp) = lowest(&self.denominator());
        if nd > dd {
            return Ok(RatFunc::zero());
        }
        if nd < dd {
            return Err(Error::LimitUndefined("pole at zero".into()));
        }
        let r = RatFunc::from_poly(np.clone()).div(&RatFunc::from_poly(dp.clone()))?;
        let strip = |p: &Poly| -> Poly {
            let mut out = Poly::zero();
            for (m, c) in &p.t {
                out = out.add(&Poly::mono(m.without_slots(&slots), c.clone()));
            }
            out
        };
        let sd = strip(&dp);
        if sd.is_zero() {
            return Err(Error::LimitUndefined("degenerate leading part".into()));
        }
        let r1 = RatFunc::from_poly(strip(&np)).div(&RatFunc::from_poly(sd))?;
        if r1 != r {
            return Err(Error::LimitUndefined("direction-dependent limit".into()));
        }
        Ok(r1)
    }

    fn add_impl(&self, o: &RatFunc) -> RatFunc {
        if o.num.is_zero() {
            return self.clone();
        }
        if self.num.is_zero() {
            return o.clone();
        }
        if self.den == o.den && self.fac == o.fac {
            return RatFunc { num: self.num.add(&o.num), den: self.den.clone(), fac: self.fac.clone() }
                .normalize();
        }
        let mut fac: Vec<(Poly, u32)> = self.fac.clone();
        for (f, m) in &o.fac {
            match fac.iter_mut().find(|(g, _)| g == f) {
                Some((_, k)) => *k = (*k).max(*m),
                None => fac.push((f.clone(), *m)),
            }
        }
        let cof = |own: &[(Poly, u32)]| -> Poly {
            let mut c = Poly::constant(BigInt::one());
            for (f, m) in &fac {
                let have = own.iter().find(|(g, _)| g == f).map(|x| x.1).unwrap_or(0);
                if *m > have {
                    c = c.mul(&f.pow(*m - have));
                }
            }
            c
        };
        let den = self.den.lcm(&o.den);
        let a = self.num.mul(&cof(&self.fac)).scale(&(&den / &self.den));
        let b = o.num.mul(&cof(&o.fac)).scale(&(&den / &o.den));
        RatFunc { num: a.add(&b), den, fac }.normalize()
    }

    fn mul_impl(&self, o: &RatFunc) -> RatFunc {
        if self.num.is_zero() || o.num.is_zero() {
            return RatFunc::zero();
        }
        let a = RatFunc { num: self.num.clone(), den: BigInt::one(), fac: o.fac.clone() }.normalize();
        let b = RatFunc { num: o.num.clone(), den: BigInt::one(), fac: self.fac.clone() }.normalize();
        let mut fac = a.fac.clone();
        for (f, m) in b.fac {
            push_factor(&mut fac, f, m);
        }
        RatFunc { num: a.num.mul(&b.num), den: &self.den * &o.den, fac }.normalize()
    }
}

fn fmt_poly(p: &Poly) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut terms = Vec::new();
    for (m, c) in p.t.iter().rev() {
        let mut parts = vec![c.to_string()];
        if !m.q.is_zero() {
            if m.q.is_integer() {
                parts.push(format!("q^({})", m.q.numer()));
            } else {
                parts.push(format!("q^({}/{})", m.q.numer(), m.q.denom()));
            }
        }
        let mut named: Vec<(Var, i32)> = Vec::new();
        for (s, &k) in m.e.iter().enumerate() {
            if k != 0 {
                named.push((super::poly::slot_var(s), k));
            }
        }
        named.sort();
        for (v, k) in named {
            let name = match v {
                Var::Vsh => "vsh".to_string(),
                Var::Vlg => "vlg".to_string(),
                Var::Z(i) => format!("z{}", i + 1),
                Var::H(i) => format!("h{}", i + 1),
                Var::QRoot => unreachable!(),
            };
            parts.push(format!("{}^{}", name, k));
        }
        terms.push(parts.join(" * "));
    }
    terms.join(" + ")
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = self.denominator();
        if d.constant_value() == Some(BigInt::one()) {
            write!(f, "{}", fmt_poly(&self.num))
        } else {
            write!(f, "({}) / ({})", fmt_poly(&self.num), fmt_poly(&d))
        }
    }
}

impl PartialEq for RatFunc {
    fn eq(&self, o: &Self) -> bool {
        if self.num == o.num && self.den == o.den && self.fac == o.fac {
            return true;
        }
        self.add_impl(&o.neg_impl()).num.is_zero()
    }
}

impl RatFunc {
    fn neg_impl(&self) -> RatFunc {
        RatFunc { num: self.num.neg(), den: self.den.clone(), fac: self.fac.clone() }
    }
}

impl Add for RatFunc {
    type Output = RatFunc;
    fn add(self, o: RatFunc) -> RatFunc {
        self.add_impl(&o)
    }
}
impl<'a> Add<&'a RatFunc> for RatFunc {
    type Output = RatFunc;
    fn add(self, o: &RatFunc) -> RatFunc {
        self.add_impl(o)
    }
}
impl Sub for RatFunc {
    type Output = RatFunc;
    fn sub(self, o: RatFunc) -> RatFunc {
        self.add_impl(&o.neg_impl())
    }
}
impl<'a> Sub<&'a RatFunc> for RatFunc {
    type Output = RatFunc;
    fn sub(self, o: &RatFunc) -> RatFunc {
        self.add_impl(&o.neg_impl())
    }
}
impl Mul for RatFunc {
    type Output = RatFunc;
    fn mul(self, o: RatFunc) -> RatFunc {
        self.mul_impl(&o)
    }
}
impl<'a> Mul<&'a RatFunc> for RatFunc {
    type Output = RatFunc;
    fn mul(self, o: &RatFunc) -> RatFunc {
        self.mul_impl(o)
    }
}
impl Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        self.neg_impl()
    }
}

impl Field for RatFunc {
    fn zero() -> Self {
        RatFunc { num: Poly::zero(), den: BigInt::one(), fac: vec![] }
    }
    fn one() -> Self {
        RatFunc::from_poly(Poly::constant(BigInt::one()))
    }
    fn from_i64(n: i64) -> Self {
        RatFunc::from_poly(Poly::constant(BigInt::from(n)))
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    fn inv(&self) -> Result<Self> {
        self.inv_impl()
    }
    fn var(spec: &ParamSpec, v: Var) -> Result<Self> {
        spec.check_var(v)?;
        if v == Var::QRoot {
            return Self::qroot_pow(spec, 1);
        }
        Ok(RatFunc::from_mono(Mono::var(v, 1)))
    }
    fn qroot_pow(spec: &ParamSpec, n: i64) -> Result<Self> {
        Ok(RatFunc::from_mono(Mono { q: Rat::new(n, spec.d), e: vec![] }))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec() -> ParamSpec {
        ParamSpec::symbolic(2, 1, 0)
    }

    fn v(x: Var) -> RatFunc {
        RatFunc::var(&spec(), x).unwrap()
    }

    #[test]
    fn additive_inverse() {
        let s = spec();
        let a = RatFunc::q_power(&s, Rat::new(1, 2)).unwrap();
        assert!((a.clone() + (-a)).is_zero());
    }

    #[test]
    fn difference_of_squares() {
        let k = v(Var::Vsh) * v(Var::Vsh);
        let ki = k.inv().unwrap();
        let lhs = (k.clone() - &ki) * (k.clone() + &ki);
        let rhs = k.clone() * &k - &(ki.clone() * &ki);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn inverse_of_zero() {
        assert_eq!(RatFunc::zero().inv().unwrap_err(), Error::DivisionByZero);
    }

    #[test]
    fn cancellation_through_factors() {
        let s = spec();
        let q = RatFunc::q_power(&s, Rat::from_integer(1)).unwrap();
        let one = RatFunc::one();
        let a = (q.clone() * &q - &one).div(&(q.clone() - &one)).unwrap();
        assert_eq!(a.denominator().constant_value(), Some(BigInt::one()));
        assert_eq!(a, q + &one);
    }

    #[test]
    fn specialize_small_prime() {
        let k = v(Var::Vsh).powi(4).unwrap();
        let val = |x: Var| if x == Var::Vsh { Some(3) } else { Some(1) };
        assert_eq!(k.specialize_mod(101, &val, 2).unwrap(), 81);
        let s = spec();
        let q = RatFunc::q_power(&s, Rat::from_integer(1)).unwrap();
        let f = (q - &RatFunc::one()).inv().unwrap();
        let val1 = |_: Var| Some(1);
        assert_eq!(f.specialize_mod(101, &val1, 2).unwrap_err(), Error::UnluckySpecialization);
    }

    #[test]
    fn whittaker_values() {
        let s = ParamSpec::symbolic(1, 0, 0);
        let qt = RatFunc::var(&s, Var::QRoot).unwrap();
        let one = RatFunc::one();
        let a = (qt.clone() * &qt + &one).div(&(qt.clone() * &qt)).unwrap();
        assert_eq!(a.whittaker_value().unwrap(), one);
        let b = (qt.clone() - &one).inv().unwrap();
        assert!(b.whittaker_value().unwrap().is_zero());
        let c = qt + &RatFunc::from_i64(2);
        assert_eq!(c.whittaker_value().unwrap_err(), Error::PoleAtInfinity);
    }

    #[test]
    fn limit_at_zero() {
        let k = v(Var::Vsh);
        let one = RatFunc::one();
        let f = (one.clone() + &k).div(&(RatFunc::from_i64(2) - &(k.clone() * &k))).unwrap();
        assert_eq!(f.limit_zero(&[Var::Vsh, Var::Vlg]).unwrap(), RatFunc::from_i64(1).div(&RatFunc::from_i64(2)).unwrap());
        assert!(k.inv().unwrap().limit_zero(&[Var::Vsh]).is_err());
    }
}
