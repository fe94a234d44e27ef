//! Finite root systems with an explicit rational realization, affine roots and the
//! step functions `η`, `χ_ℤ` and `⌊·⌋`.
//!
//! The ambient space is `ℚ^N` with inner product `⟨u,v⟩ = s·(u·v)` for a fixed rational
//! scale `s`. Types C and G need `s ≠ 1` to keep a rational realization with long roots
//! of squared length `2/m_norm²`.

use crate::error::{Error, Result};
use crate::vector::{floor, rat, rint, solve, RVec, Rat};
use num_integer::Integer;
use num_traits::{Signed, Zero};
use std::collections::{HashMap, VecDeque};
use std::fmt::Write as _;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CartanType {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl CartanType {
    pub fn parse(s: &str) -> Result<(CartanType, usize)> {
        let s = s.trim();
        let (t, r) = s.split_at(1);
        let ty = match t.to_ascii_uppercase().as_str() {
            "A" => CartanType::A,
            "B" => CartanType::B,
            "C" => CartanType::C,
            "D" => CartanType::D,
            "E" => CartanType::E,
            "F" => CartanType::F,
            "G" => CartanType::G,
            _ => return Err(Error::UnsupportedType(s.into())),
        };
        let r: usize = r.parse().map_err(|_| Error::UnsupportedType(s.into()))?;
        Ok((ty, r))
    }
}

/// `(η(d), χ_ℤ(d), ⌊d⌋)`.
pub fn step_funcs(d: Rat) -> (i64, i64, i64) {
    (eta(d), chi_z(d), floor(d))
}

/// `η = χ_{ℤ>0} − χ_{ℤ≤0}`.
pub fn eta(d: Rat) -> i64 {
    if !d.is_integer() {
        0
    } else if d.is_positive() {
        1
    } else {
        -1
    }
}

pub fn chi_z(d: Rat) -> i64 {
    if d.is_integer() {
        1
    } else {
        0
    }
}

/// An affine root `(α, ℓ)`; `alpha` indexes [`RootDatum::roots`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AffineRoot {
    pub alpha: usize,
    pub level: i64,
}

#[derive(Clone, Debug)]
pub struct RootDatum {
    pub name: String,
    pub rank: usize,
    pub dim: usize,
    pub m_norm: i64,
    /// Scale `s` of the inner product.
    pub form: Rat,
    pub simple: Vec<RVec>,
    pub simple_co: Vec<RVec>,
    /// All roots: positive ones first (sorted by height), then their negatives in the
    /// same order.
    pub roots: Vec<RVec>,
    pub coroots: Vec<RVec>,
    pub long: Vec<bool>,
    pub height: Vec<i64>,
    pub npos: usize,
    pub phi: usize,
    pub theta: usize,
    /// `cartan[i][j] = α_i(α_j∨)`.
    pub cartan: Vec<Vec<i64>>,
    pub coxeter: usize,
    /// `α_i(ϖ_j∨) = δ_ij`.
    pub fund_co: Vec<RVec>,
    /// `ϖ_i(α_j∨) = δ_ij`.
    pub fund_w: Vec<RVec>,
    index: HashMap<RVec, usize>,
}

fn e(n: usize, i: usize) -> RVec {
    RVec::unit(n, i)
}

fn standard_model(ty: CartanType, r: usize) -> Result<(usize, Vec<RVec>, Rat)> {
    let bad = || Error::UnsupportedType(format!("{:?}{}", ty, r));
    let diff = |n: usize, i: usize, j: usize| &e(n, i) - &e(n, j);
    Ok(match ty {
        CartanType::A => {
            if r < 1 {
                return Err(bad());
            }
            let n = r + 1;
            (n, (0..r).map(|i| diff(n, i, i + 1)).collect(), rint(1))
        }
        CartanType::B => {
            if r < 2 {
                return Err(bad());
            }
            let mut s: Vec<RVec> = (0..r - 1).map(|i| diff(r, i, i + 1)).collect();
            s.push(e(r, r - 1));
            (r, s, rint(1))
        }
        CartanType::C => {
            if r < 2 {
                return Err(bad());
            }
            let mut s: Vec<RVec> = (0..r - 1).map(|i| diff(r, i, i + 1)).collect();
            s.push(e(r, r - 1).scale(rint(2)));
            (r, s, rat(1, 2))
        }
        CartanType::D => {
            if r < 4 {
                return Err(bad());
            }
            let mut s: Vec<RVec> = (0..r - 1).map(|i| diff(r, i, i + 1)).collect();
            s.push(&e(r, r - 2) + &e(r, r - 1));
            (r, s, rint(1))
        }
        CartanType::E => {
            if !(6..=8).contains(&r) {
                return Err(bad());
            }
            let n = 8;
            let h = rat(1, 2);
            let a1 = RVec(vec![h, -h, -h, -h, -h, -h, -h, h]);
            let mut s = vec![a1, &e(n, 0) + &e(n, 1)];
            for i in 0..6 {
                s.push(diff(n, i + 1, i));
            }
            s.truncate(r);
            (n, s, rint(1))
        }
        CartanType::F => {
            if r != 4 {
                return Err(bad());
            }
            let n = 4;
            let h = rat(1, 2);
            (n, vec![diff(n, 1, 2), diff(n, 2, 3), e(n, 3), RVec(vec![h, -h, -h, -h])], rint(1))
        }
        CartanType::G => {
            if r != 2 {
                return Err(bad());
            }
            let n = 3;
            (n, vec![diff(n, 0, 1), RVec::from_ints(&[-2, 1, 1])], rat(1, 3))
        }
    })
}

impl RootDatum {
    /// Standard realization of a Cartan type with long roots of squared length `2/m²`.
    pub fn build(ty: CartanType, rank: usize, m_norm: i64) -> Result<RootDatum> {
        if m_norm < 1 {
            return Err(Error::UnsupportedType(format!("m_norm {}", m_norm)));
        }
        let (n, simple, form) = standard_model(ty, rank)?;
        let simple: Vec<RVec> = simple.iter().map(|v| v.scale(rat(1, m_norm))).collect();
        let name = format!("{:?}{}", ty, rank);
        let mut d = RootDatum::from_simple_roots(&name, n, simple, form)?;
        d.m_norm = m_norm;
        Ok(d)
    }

    pub fn from_name(s: &str, m_norm: i64) -> Result<RootDatum> {
        let (t, r) = CartanType::parse(s)?;
        RootDatum::build(t, r, m_norm)
    }

    /// Root system generated by the given simple roots by reflection closure.
    pub fn from_simple_roots(name: &str, dim: usize, simple: Vec<RVec>, form: Rat) -> Result<RootDatum> {
        let rank = simple.len();
        let ip = |a: &RVec, b: &RVec| a.dot(b) * form;
        let co = |a: &RVec| a.scale(rint(2) / ip(a, a));
        let simple_co: Vec<RVec> = simple.iter().map(co).collect();
        let gram: Vec<Vec<Rat>> = simple.iter().map(|a| simple.iter().map(|b| ip(a, b)).collect()).collect();
        let gram_co: Vec<Vec<Rat>> =
            simple_co.iter().map(|a| simple_co.iter().map(|b| ip(a, b)).collect()).collect();
        let mut fund_co = Vec::new();
        let mut fund_w = Vec::new();
        for i in 0..rank {
            let rhs: Vec<Rat> = (0..rank).map(|k| if k == i { rint(1) } else { rint(0) }).collect();
            let c = solve(&gram, &rhs).ok_or_else(|| Error::UnsupportedType("singular".into()))?;
            let mut v = RVec::zero(dim);
            for (j, cj) in c.iter().enumerate() {
                v = v.add_scaled(&simple[j], *cj);
            }
            fund_co.push(v);
            let c = solve(&gram_co, &rhs).ok_or_else(|| Error::UnsupportedType("singular".into()))?;
            let mut v = RVec::zero(dim);
            for (j, cj) in c.iter().enumerate() {
                v = v.add_scaled(&simple_co[j], *cj);
            }
            fund_w.push(v);
        }
        let mut seen: HashMap<RVec, ()> = HashMap::new();
        let mut queue: VecDeque<RVec> = VecDeque::new();
        for s in &simple {
            if seen.insert(s.clone(), ()).is_none() {
                queue.push_back(s.clone());
            }
        }
        while let Some(v) = queue.pop_front() {
            for (a, ac) in simple.iter().zip(&simple_co) {
                let w = v.add_scaled(ac, -ip(&v, a));
                if seen.insert(w.clone(), ()).is_none() {
                    queue.push_back(w);
                }
            }
            if seen.len() > 1000 {
                return Err(Error::UnsupportedType("root closure does not terminate".into()));
            }
        }
        let coords = |v: &RVec| -> Vec<Rat> { fund_co.iter().map(|w| ip(v, w)).collect() };
        let mut pos: Vec<(i64, Vec<Rat>, RVec)> = Vec::new();
        for v in seen.keys() {
            let c = coords(v);
            if c.iter().any(|x| !x.is_integer()) {
                return Err(Error::UnsupportedType("root not in root lattice".into()));
            }
            if c.iter().all(|x| !x.is_negative()) {
                let ht: i64 = c.iter().map(|x| x.to_integer()).sum();
                pos.push((ht, c, v.clone()));
            }
        }
        pos.sort_by(|a, b| a.0.cmp(&b.0).then_with(|| b.1.cmp(&a.1)));
        let npos = pos.len();
        if 2 * npos != seen.len() {
            return Err(Error::UnsupportedType("not a reduced root system".into()));
        }
        let mut roots: Vec<RVec> = pos.iter().map(|p| p.2.clone()).collect();
        let negs: Vec<RVec> = roots.iter().map(|v| -v).collect();
        roots.extend(negs);
        let height: Vec<i64> = (0..2 * npos).map(|i| if i < npos { pos[i].0 } else { -pos[i - npos].0 }).collect();
        let coroots: Vec<RVec> = roots.iter().map(co).collect();
        let maxnorm = roots.iter().map(|v| ip(v, v)).max().unwrap();
        let long: Vec<bool> = roots.iter().map(|v| ip(v, v) == maxnorm).collect();
        let phi = (0..npos).max_by_key(|&i| height[i]).unwrap();
        let theta = (0..npos).filter(|&i| !long[i]).max_by_key(|&i| height[i]).unwrap_or(phi);
        let cartan = (0..rank)
            .map(|i| (0..rank).map(|j| ip(&simple[i], &simple_co[j]).to_integer()).collect())
            .collect();
        let coxeter = (height[phi] + 1) as usize;
        let index = roots.iter().enumerate().map(|(i, v)| (v.clone(), i)).collect();
        let d = RootDatum {
            name: name.to_string(),
            rank,
            dim,
            m_norm: 1,
            form,
            simple,
            simple_co,
            roots,
            coroots,
            long,
            height,
            npos,
            phi,
            theta,
            cartan,
            coxeter,
            fund_co,
            fund_w,
            index,
        };
        if d.npos * 2 != d.rank * d.coxeter {
            return Err(Error::UnsupportedType(format!("{}: root count does not match r·h/2", name)));
        }
        Ok(d)
    }

    pub fn ip(&self, a: &RVec, b: &RVec) -> Rat {
        a.dot(b) * self.form
    }

    /// `α(y)` for the root with index `a`.
    pub fn pair(&self, a: usize, y: &RVec) -> Rat {
        self.ip(&self.roots[a], y)
    }

    pub fn root_index(&self, v: &RVec) -> Option<usize> {
        self.index.get(v).copied()
    }

    pub fn neg(&self, a: usize) -> usize {
        if a < self.npos {
            a + self.npos
        } else {
            a - self.npos
        }
    }

    pub fn is_positive(&self, a: usize) -> bool {
        a < self.npos
    }

    pub fn is_long(&self, a: usize) -> bool {
        self.long[a]
    }

    pub fn is_simply_laced(&self) -> bool {
        self.long.iter().all(|&l| l)
    }

    /// `2/‖α‖²`, so that `q_α = q^{2/‖α‖²}`.
    pub fn q_exp(&self, a: usize) -> Rat {
        let v = &self.roots[a];
        rint(2) / self.ip(v, v)
    }

    /// Reflection `s_α(y) = y − α(y)α∨`.
    pub fn reflect(&self, a: usize, y: &RVec) -> RVec {
        y.add_scaled(&self.coroots[a], -self.pair(a, y))
    }

    /// Affine simple root `α_j` (`α_0 = (−φ, 1)`).
    pub fn affine_simple(&self, j: usize) -> AffineRoot {
        if j == 0 {
            AffineRoot { alpha: self.neg(self.phi), level: 1 }
        } else {
            AffineRoot { alpha: j - 1, level: 0 }
        }
    }

    /// `a(y) = α(y) + ℓ`.
    pub fn eval_affine(&self, a: AffineRoot, y: &RVec) -> Rat {
        self.pair(a.alpha, y) + rint(a.level)
    }

    pub fn affine_is_positive(&self, a: AffineRoot) -> bool {
        a.level > 0 || (a.level == 0 && self.is_positive(a.alpha))
    }

    pub fn affine_neg(&self, a: AffineRoot) -> AffineRoot {
        AffineRoot { alpha: self.neg(a.alpha), level: -a.level }
    }

    /// Simple-root index of the multiplicity class of affine simple root `j`
    /// (long or short).
    pub fn simple_is_long(&self, j: usize) -> bool {
        if j == 0 {
            true
        } else {
            self.long[j - 1]
        }
    }

    /// Affine reflection `s_j` on points.
    pub fn s_affine(&self, j: usize, y: &RVec) -> RVec {
        let a = self.affine_simple(j);
        y.add_scaled(&self.coroots[a.alpha], -self.eval_affine(a, y))
    }

    /// Coefficients `n_i` with `μ = Σ n_i α_i∨`.
    pub fn coroot_coords(&self, mu: &RVec) -> Vec<Rat> {
        self.fund_w.iter().map(|w| self.ip(w, mu)).collect()
    }

    /// Integer coroot coordinates, or `None` if `μ ∉ Q∨`.
    pub fn coroot_coords_int(&self, mu: &RVec) -> Option<Vec<i64>> {
        let c = self.coroot_coords(mu);
        let proj = self.from_coroot_coords_rat(&c);
        if proj != *mu {
            return None;
        }
        c.iter().map(|x| if x.is_integer() { Some(x.to_integer()) } else { None }).collect()
    }

    pub fn from_coroot_coords(&self, n: &[i64]) -> RVec {
        let mut v = RVec::zero(self.dim);
        for (i, &k) in n.iter().enumerate() {
            v = v.add_scaled(&self.simple_co[i], rint(k));
        }
        v
    }

    fn from_coroot_coords_rat(&self, n: &[Rat]) -> RVec {
        let mut v = RVec::zero(self.dim);
        for (i, &k) in n.iter().enumerate() {
            v = v.add_scaled(&self.simple_co[i], k);
        }
        v
    }

    /// Simple-root coordinates `α = Σ c_i α_i`.
    pub fn root_coords(&self, v: &RVec) -> Vec<Rat> {
        self.fund_co.iter().map(|w| self.ip(v, w)).collect()
    }

    /// Fundamental weights-style coordinates `α_i(y)`.
    pub fn simple_values(&self, y: &RVec) -> Vec<Rat> {
        (0..self.rank).map(|i| self.pair(i, y)).collect()
    }

    /// Component of `y` orthogonal to the span of the roots.
    pub fn co_part(&self, y: &RVec) -> RVec {
        let mut p = RVec::zero(self.dim);
        for (i, w) in self.fund_co.iter().enumerate() {
            p = p.add_scaled(w, self.pair(i, y));
        }
        y - &p
    }

    /// `ρ∨`, half the sum of the positive coroots.
    pub fn rho_co(&self) -> RVec {
        let mut v = RVec::zero(self.dim);
        for a in 0..self.npos {
            v = v.add_scaled(&self.coroots[a], rat(1, 2));
        }
        v
    }

    /// Is `y` in the closed fundamental alcove.
    pub fn in_closed_alcove(&self, y: &RVec) -> bool {
        (0..=self.rank).all(|j| !self.eval_affine(self.affine_simple(j), y).is_negative())
    }

    /// `J(c) = {j : α_j(c) = 0}`.
    pub fn face_of(&self, c: &RVec) -> Vec<usize> {
        (0..=self.rank).filter(|&j| self.eval_affine(self.affine_simple(j), c).is_zero()).collect()
    }

    /// Denominator needed for the q-exponents `⟨α_i∨, α_j∨⟩` and `2/‖α‖²`.
    pub fn q_denominator_base(&self) -> i64 {
        let mut d = 1i64;
        for a in &self.simple_co {
            for b in &self.simple_co {
                d = d.lcm(self.ip(a, b).denom());
            }
        }
        for a in 0..self.npos {
            d = d.lcm(self.q_exp(a).denom());
        }
        d
    }

    /// Dump used for golden-file comparisons.
    pub fn dump(&self) -> String {
        let mut s = String::new();
        writeln!(s, "type {} m_norm {} form {}", self.name, self.m_norm, crate::vector::fmt_rat(self.form)).unwrap();
        writeln!(s, "coxeter {}", self.coxeter).unwrap();
        for i in 0..self.rank {
            writeln!(s, "simple {} {} coroot {}", i + 1, self.simple[i], self.simple_co[i]).unwrap();
        }
        for a in 0..self.npos {
            writeln!(
                s,
                "positive {} height {} {}",
                self.roots[a],
                self.height[a],
                if self.long[a] { "long" } else { "short" }
            )
            .unwrap();
        }
        writeln!(s, "phi {}", self.roots[self.phi]).unwrap();
        writeln!(s, "theta {}", self.roots[self.theta]).unwrap();
        for row in &self.cartan {
            let r: Vec<String> = row.iter().map(|x| x.to_string()).collect();
            writeln!(s, "cartan {}", r.join(" ")).unwrap();
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn step_function_examples() {
        assert_eq!(step_funcs(rint(0)), (-1, 1, 0));
        assert_eq!(step_funcs(rat(1, 2)), (0, 0, 0));
        assert_eq!(step_funcs(rint(-3)), (-1, 1, -3));
    }

    #[test]
    fn rank_one() {
        let d = RootDatum::build(CartanType::A, 1, 1).unwrap();
        assert_eq!(d.npos, 1);
        assert_eq!(d.phi, 0);
        assert_eq!(d.theta, 0);
        assert_eq!(d.coxeter, 2);
    }

    #[test]
    fn b2_counts() {
        let d = RootDatum::build(CartanType::B, 2, 1).unwrap();
        assert_eq!(d.npos, 4);
        assert_eq!(d.coxeter, 4);
        assert!(!d.long[d.theta]);
        assert!(d.long[d.phi]);
    }

    #[test]
    fn all_supported_types_close() {
        for (t, r) in [
            (CartanType::A, 3),
            (CartanType::B, 3),
            (CartanType::C, 3),
            (CartanType::D, 4),
            (CartanType::E, 6),
            (CartanType::F, 4),
            (CartanType::G, 2),
        ] {
            let d = RootDatum::build(t, r, 1).unwrap();
            let v = &d.roots[d.phi];
            assert_eq!(d.ip(v, v), rint(2), "{:?}{}", t, r);
            for i in 0..d.rank {
                for j in 0..d.rank {
                    assert_eq!(rint(d.cartan[i][j]), d.ip(&d.simple[i], &d.simple_co[j]));
                }
            }
        }
    }

    #[test]
    fn m_norm_scales_long_roots() {
        let d = RootDatum::build(CartanType::B, 2, 2).unwrap();
        let v = &d.roots[d.phi];
        assert_eq!(d.ip(v, v), rat(1, 2));
    }
}
