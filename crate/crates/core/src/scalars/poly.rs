//! Sparse multivariate Laurent polynomials over the integers.
//!
//! The exponent of `q` is a rational number; the remaining variables carry integer
//! exponents in slots `vsh, vlg, z1, h1, z2, h2, ...`.

use super::Var;
use crate::vector::Rat;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use std::cmp::Ordering;
use std::collections::BTreeMap;

pub fn slot(v: Var) -> Option<usize> {
    match v {
        Var::QRoot => None,
        Var::Vsh => Some(0),
        Var::Vlg => Some(1),
        Var::Z(i) => Some(2 + 2 * i),
        Var::H(i) => Some(3 + 2 * i),
    }
}

pub fn slot_var(s: usize) -> Var {
    match s {
        0 => Var::Vsh,
        1 => Var::Vlg,
        s if s % 2 == 0 => Var::Z((s - 2) / 2),
        s => Var::H((s - 3) / 2),
    }
}

/// A Laurent monomial; `e` never has trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Mono {
    pub q: Rat,
    pub e: Vec<i32>,
}

impl Mono {
    pub fn one() -> Self {
        Mono::default()
    }

    pub fn var(v: Var, k: i32) -> Self {
        match slot(v) {
            None => Mono { q: Rat::from_integer(k as i64), e: vec![] },
            Some(s) => {
                let mut e = vec![0; s + 1];
                e[s] = k;
                Mono::trimmed(Rat::zero(), e)
            }
        }
    }

    fn trimmed(q: Rat, mut e: Vec<i32>) -> Self {
        while e.last() == Some(&0) {
            e.pop();
        }
        Mono { q, e }
    }

    pub fn get(&self, s: usize) -> i32 {
        self.e.get(s).copied().unwrap_or(0)
    }

    pub fn is_one(&self) -> bool {
        self.q.is_zero() && self.e.is_empty()
    }

    pub fn mul(&self, o: &Mono) -> Mono {
        let n = self.e.len().max(o.e.len());
        let e = (0..n).map(|i| self.get(i) + o.get(i)).collect();
        Mono::trimmed(self.q + o.q, e)
    }

    pub fn div(&self, o: &Mono) -> Mono {
        let n = self.e.len().max(o.e.len());
        let e = (0..n).map(|i| self.get(i) - o.get(i)).collect();
        Mono::trimmed(self.q - o.q, e)
    }

    pub fn pow(&self, k: i32) -> Mono {
        Mono::trimmed(self.q * Rat::from_integer(k as i64), self.e.iter().map(|x| x * k).collect())
    }

    /// Componentwise minimum.
    pub fn meet(&self, o: &Mono) -> Mono {
        let n = self.e.len().max(o.e.len());
        let e = (0..n).map(|i| self.get(i).min(o.get(i))).collect();
        Mono::trimmed(self.q.min(o.q), e)
    }

    /// Componentwise maximum.
    pub fn join(&self, o: &Mono) -> Mono {
        let n = self.e.len().max(o.e.len());
        let e = (0..n).map(|i| self.get(i).max(o.get(i))).collect();
        Mono::trimmed(self.q.max(o.q), e)
    }

    /// Componentwise `lo <= self <= hi`.
    pub fn within(&self, lo: &Mono, hi: &Mono) -> bool {
        if self.q < lo.q || self.q > hi.q {
            return false;
        }
        let n = self.e.len().max(lo.e.len()).max(hi.e.len());
        (0..n).all(|i| lo.get(i) <= self.get(i) && self.get(i) <= hi.get(i))
    }

    pub fn total_degree_in(&self, slots: &[usize]) -> i64 {
        slots.iter().map(|&s| self.get(s) as i64).sum()
    }

    pub fn without_slots(&self, slots: &[usize]) -> Mono {
        let mut e = self.e.clone();
        for &s in slots {
            if s < e.len() {
                e[s] = 0;
            }
        }
        Mono::trimmed(self.q, e)
    }
}

impl Ord for Mono {
    fn cmp(&self, o: &Self) -> Ordering {
        match self.q.cmp(&o.q) {
            Ordering::Equal => {}
            c => return c,
        }
        let n = self.e.len().max(o.e.len());
        for i in 0..n {
            match self.get(i).cmp(&o.get(i)) {
                Ordering::Equal => {}
                c => return c,
            }
        }
        Ordering::Equal
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Poly {
    pub t: BTreeMap<Mono, BigInt>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn constant(c: BigInt) -> Self {
        let mut p = Poly::zero();
        if !c.is_zero() {
            p.t.insert(Mono::one(), c);
        }
        p
    }

    pub fn mono(m: Mono, c: BigInt) -> Self {
        let mut p = Poly::zero();
        if !c.is_zero() {
            p.t.insert(m, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.t.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.t.is_empty() || (self.t.len() == 1 && self.t.keys().next().unwrap().is_one())
    }

    pub fn constant_value(&self) -> Option<BigInt> {
        if self.t.is_empty() {
            return Some(BigInt::zero());
        }
        if self.is_constant() {
            return self.t.values().next().cloned();
        }
        None
    }

    pub fn leading(&self) -> Option<(&Mono, &BigInt)> {
        self.t.iter().next_back()
    }

    fn add_term(&mut self, m: Mono, c: BigInt) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.t.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, o: &Poly) -> Poly {
        let mut r = self.clone();
        for (m, c) in &o.t {
            r.add_term(m.clone(), c.clone());
        }
        r
    }

    pub fn sub(&self, o: &Poly) -> Poly {
        let mut r = self.clone();
        for (m, c) in &o.t {
            r.add_term(m.clone(), -c.clone());
        }
        r
    }

    pub fn neg(&self) -> Poly {
        Poly { t: self.t.iter().map(|(m, c)| (m.clone(), -c.clone())).collect() }
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        let mut r = Poly::zero();
        for (m1, c1) in &self.t {
            for (m2, c2) in &o.t {
                r.add_term(m1.mul(m2), c1 * c2);
            }
        }
        r
    }

    pub fn scale(&self, c: &BigInt) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly { t: self.t.iter().map(|(m, x)| (m.clone(), x * c)).collect() }
    }

    pub fn div_int(&self, c: &BigInt) -> Poly {
        Poly { t: self.t.iter().map(|(m, x)| (m.clone(), x / c)).collect() }
    }

    pub fn shift(&self, s: &Mono) -> Poly {
        Poly { t: self.t.iter().map(|(m, x)| (m.mul(s), x.clone())).collect() }
    }

    pub fn pow(&self, k: u32) -> Poly {
        let mut r = Poly::constant(BigInt::one());
        for _ in 0..k {
            r = r.mul(self);
        }
        r
    }

    /// Nonnegative gcd of the coefficients.
    pub fn content(&self) -> BigInt {
        self.t.values().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    pub fn min_mono(&self) -> Option<Mono> {
        let mut it = self.t.keys();
        let first = it.next()?.clone();
        Some(it.fold(first, |a, m| a.meet(m)))
    }

    pub fn max_mono(&self) -> Option<Mono> {
        let mut it = self.t.keys();
        let first = it.next()?.clone();
        Some(it.fold(first, |a, m| a.join(m)))
    }

    /// Exact quotient `self / d` in the Laurent ring, if it exists.
    pub fn exact_div(&self, d: &Poly) -> Option<Poly> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Poly::zero());
        }
        if d.t.len() == 1 {
            let (m, c) = d.leading().unwrap();
            let mut r = Poly::zero();
            for (mm, cc) in &self.t {
                let (qt, rem) = cc.div_rem(c);
                if !rem.is_zero() {
                    return None;
                }
                r.t.insert(mm.div(m), qt);
            }
            return Some(r);
        }
        let lo = self.min_mono().unwrap().div(&d.min_mono().unwrap());
        let hi = self.max_mono().unwrap().div(&d.max_mono().unwrap());
        let (dm, dc) = d.leading().map(|(m, c)| (m.clone(), c.clone())).unwrap();
        let mut rem = self.clone();
        let mut quot = Poly::zero();
        while let Some((rm, rc)) = rem.leading().map(|(m, c)| (m.clone(), c.clone())) {
            let m = rm.div(&dm);
            if !m.within(&lo, &hi) {
                return None;
            }
            let (c, r) = rc.div_rem(&dc);
            if !r.is_zero() {
                return None;
            }
            for (m2, c2) in &d.t {
                rem.add_term(m2.mul(&m), -(c2 * &c));
            }
            quot.add_term(m, c);
        }
        Some(quot)
    }

    /// Evaluate modulo `p` with values supplied per variable; `qroot_per_q` converts the
    /// rational q-exponent into a qroot exponent.
    pub fn eval_mod(
        &self,
        p: u64,
        val: &dyn Fn(Var) -> Option<u64>,
        qexp: &dyn Fn(Rat) -> Option<i64>,
    ) -> Option<u64> {
        let pb = BigInt::from(p);
        let mut acc: u128 = 0;
        for (m, c) in &self.t {
            let mut term = c.mod_floor(&pb).to_string().parse::<u128>().ok()?;
            let qe = qexp(m.q)?;
            if qe != 0 {
                term = term * pow_mod(val(Var::QRoot)?, qe, p)? as u128 % p as u128;
            }
            for (s, &k) in m.e.iter().enumerate() {
                if k != 0 {
                    term = term * pow_mod(val(slot_var(s))?, k as i64, p)? as u128 % p as u128;
                }
            }
            acc = (acc + term) % p as u128;
        }
        Some(acc as u64)
    }

    /// Split by the power of `q`: map from q-exponent to the coefficient polynomial.
    pub fn by_q(&self) -> BTreeMap<Rat, Poly> {
        let mut out: BTreeMap<Rat, Poly> = BTreeMap::new();
        for (m, c) in &self.t {
            let rest = Mono { q: Rat::zero(), e: m.e.clone() };
            out.entry(m.q).or_default().t.insert(rest, c.clone());
        }
        out
    }
}

pub fn pow_mod(b: u64, e: i64, p: u64) -> Option<u64> {
    let b = b % p;
    if b == 0 {
        return if e > 0 { Some(0) } else { None };
    }
    let mut base = if e < 0 { pow_mod_u(b, p - 2, p) } else { b };
    let mut e = e.unsigned_abs();
    let mut acc = 1u128;
    let pp = p as u128;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base as u128 % pp;
        }
        base = (base as u128 * base as u128 % pp) as u64;
        e >>= 1;
    }
    Some(acc as u64)
}

fn pow_mod_u(b: u64, mut e: u64, p: u64) -> u64 {
    let pp = p as u128;
    let mut base = b as u128 % pp;
    let mut acc = 1u128;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % pp;
        }
        base = base * base % pp;
        e >>= 1;
    }
    acc as u64
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x() -> Poly {
        Poly::mono(Mono::var(Var::Vsh, 1), BigInt::one())
    }

    #[test]
    fn exact_division_of_difference_of_squares() {
        let one = Poly::constant(BigInt::one());
        let a = x().mul(&x()).sub(&one);
        let b = x().sub(&one);
        let q = a.exact_div(&b).unwrap();
        assert_eq!(q, x().add(&one));
        assert!(x().add(&one).exact_div(&b).is_none());
    }

    #[test]
    fn laurent_division() {
        let one = Poly::constant(BigInt::one());
        let xinv = Poly::mono(Mono::var(Var::Vsh, -1), BigInt::one());
        let a = x().sub(&xinv);
        let b = x().mul(&x()).sub(&one);
        assert_eq!(a.exact_div(&b).unwrap(), xinv);
    }

    #[test]
    fn monomial_order_ignores_trailing_zeros() {
        let a = Mono::var(Var::Vsh, 1);
        let b = Mono::var(Var::Vsh, 1).mul(&Mono::var(Var::Vlg, -1));
        assert!(b < a);
        assert!(a.mul(&Mono::var(Var::Z(0), 1)) > a);
    }
}
