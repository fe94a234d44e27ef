//! The quasi-polynomial representation `π_{c,t}` and operators built from any
//! representation of the double affine Hecke algebra given by its `T_j` action on
//! monomials: `Y^μ`, `δ(T_j)`, the intertwiners `S_j^Y`, and `T_w`.

use crate::affine_weyl::{self as aw, AffElt};
use crate::error::Result;
use crate::quasi::{Ctx, KData, QuasiPoly};
use crate::roots::RootDatum;
use crate::scalars::{Field, ParamSpec};
use crate::vector::{floor, rint, RVec};
use std::collections::HashMap;
use std::sync::Mutex;

/// A representation in which `T_0,…,T_r` act on monomials `x^y` and `x^μ` acts by
/// multiplication.
pub trait HeckeRep<S: Field>: KData<S> + Sync {
    fn spec(&self) -> &ParamSpec;
    /// `π(T_j)x^y`.
    fn t_mono(&self, j: usize, y: &RVec) -> Result<QuasiPoly<S>>;

    fn q_pow(&self, e: crate::vector::Rat) -> S {
        S::q_power(self.spec(), e).expect("session denominator covers this exponent")
    }

    fn q_phi(&self) -> S {
        let d = self.datum();
        self.q_pow(d.q_exp(d.phi))
    }
}

/// `∇_j x^y = x^y (1 − u^{−n})/(1 − u)` with `n = ⌊Dα_j(y)⌋`, `u = x^{α_j∨}` and
/// `x^{α_0∨} = q_φ x^{−φ∨}`.
pub fn nabla<S: Field>(d: &RootDatum, q_phi: &S, j: usize, y: &RVec) -> QuasiPoly<S> {
    let a = d.affine_simple(j);
    let n = floor(d.pair(a.alpha, y));
    let (g, uq) = if j == 0 { (-&d.coroots[d.phi], q_phi.clone()) } else { (d.simple_co[j - 1].clone(), S::one()) };
    let mut out = QuasiPoly::zero();
    let term = |s: i64| -> (RVec, S) { (y.add_scaled(&g, rint(s)), uq.powi(s).expect("q is a unit")) };
    if n > 0 {
        for s in 1..=n {
            let (e, c) = term(-s);
            out.add_term(e, -c);
        }
    } else if n < 0 {
        for s in 0..-n {
            let (e, c) = term(s);
            out.add_term(e, c);
        }
    }
    out
}

/// `π(T_j^{±1}) f`.
pub fn act_t<S: Field, R: HeckeRep<S> + ?Sized>(rep: &R, j: usize, sign: i32, f: &QuasiPoly<S>) -> Result<QuasiPoly<S>> {
    let mut out = QuasiPoly::zero();
    for (y, c) in &f.terms {
        out.add_scaled(&rep.t_mono(j, y)?, c);
    }
    if sign < 0 {
        let shift = rep.k_simple(j).clone() - rep.kinv_simple(j);
        out.add_scaled(f, &-shift);
    }
    Ok(out)
}

/// `π(T_{j_1}⋯T_{j_l}) f`, rightmost factor first.
pub fn act_t_word<S: Field, R: HeckeRep<S> + ?Sized>(rep: &R, word: &[usize], f: &QuasiPoly<S>) -> Result<QuasiPoly<S>> {
    let mut g = f.clone();
    for &j in word.iter().rev() {
        g = act_t(rep, j, 1, &g)?;
    }
    Ok(g)
}

/// `π(T_{j_1}⋯T_{j_l})^{-1} f = T_{j_l}^{-1}⋯T_{j_1}^{-1} f`, so `T_{j_1}^{-1}` first.
pub fn act_t_word_inv<S: Field, R: HeckeRep<S> + ?Sized>(
    rep: &R,
    word: &[usize],
    f: &QuasiPoly<S>,
) -> Result<QuasiPoly<S>> {
    let mut g = f.clone();
    for &j in word {
        g = act_t(rep, j, -1, &g)?;
    }
    Ok(g)
}

/// `π(T_w) f` through a reduced word of `w`.
pub fn act_tw<S: Field, R: HeckeRep<S> + ?Sized>(rep: &R, w: &AffElt, f: &QuasiPoly<S>) -> Result<QuasiPoly<S>> {
    act_t_word(rep, &aw::reduced_word(rep.datum(), w), f)
}

static WORDS: Mutex<Option<HashMap<(String, RVec), Vec<usize>>>> = Mutex::new(None);

/// Reduced word of `τ(μ)`, memoized by root system name.
pub fn translation_word(d: &RootDatum, mu: &RVec) -> Vec<usize> {
    let key = (format!("{}|{:?}", d.name, d.simple), mu.clone());
    if let Some(w) = WORDS.lock().unwrap().get_or_insert_with(HashMap::new).get(&key) {
        return w.clone();
    }
    let w = aw::reduced_word(d, &AffElt::translation(mu.clone()));
    WORDS.lock().unwrap().get_or_insert_with(HashMap::new).insert(key, w.clone());
    w
}

/// `μ = μ₊ − μ₋` with `μ₋` the smallest dominant element of `Q∨` making `μ₊` dominant.
pub fn dominant_split(d: &RootDatum, mu: &RVec) -> (RVec, RVec) {
    let base: Vec<i64> = (0..d.rank).map(|i| (-d.pair(i, mu)).to_integer().max(0)).collect();
    let build = |n: &[i64]| -> RVec {
        let mut v = RVec::zero(d.dim);
        for (i, &k) in n.iter().enumerate() {
            v = v.add_scaled(&d.fund_co[i], rint(k));
        }
        v
    };
    let mut frontier = vec![base];
    loop {
        let mut next = Vec::new();
        for n in &frontier {
            let m = build(n);
            if d.coroot_coords_int(&m).is_some() {
                return (mu + &m, m);
            }
            for i in 0..d.rank {
                let mut n2 = n.clone();
                n2[i] += 1;
                if !next.contains(&n2) {
                    next.push(n2);
                }
            }
        }
        frontier = next;
    }
}

/// `π(Y^μ) f` for `μ ∈ Q∨`.
pub fn act_y<S: Field, R: HeckeRep<S> + ?Sized>(rep: &R, mu: &RVec, f: &QuasiPoly<S>) -> Result<QuasiPoly<S>> {
    if mu.is_zero() {
        return Ok(f.clone());
    }
    let d = rep.datum();
    let (plus, minus) = dominant_split(d, mu);
    let mut g = f.clone();
    if !minus.is_zero() {
        g = act_t_word_inv(rep, &translation_word(d, &minus), &g)?;
    }
    if !plus.is_zero() {
        g = act_t_word(rep, &translation_word(d, &plus), &g)?;
    }
    Ok(g)
}

/// `π(Y^μ)` through an explicit decomposition `μ = λ − ν` into dominant parts.
pub fn act_y_split<S: Field, R: HeckeRep<S> + ?Sized>(
    rep: &R,
    lambda: &RVec,
    nu: &RVec,
    f: &QuasiPoly<S>,
) -> Result<QuasiPoly<S>> {
    let d = rep.datum();
    let g = act_t_word_inv(rep, &translation_word(d, nu), f)?;
    act_t_word(rep, &translation_word(d, lambda), &g)
}

/// `π(δ(T_j)^{±1})`; `δ(T_0) = Y^{−φ∨} T_0 x^{−φ∨}`.
pub fn act_delta_t<S: Field, R: HeckeRep<S> + ?Sized>(
    rep: &R,
    j: usize,
    sign: i32,
    f: &QuasiPoly<S>,
) -> Result<QuasiPoly<S>> {
    if j != 0 {
        return act_t(rep, j, sign, f);
    }
    let d = rep.datum();
    let phi = &d.coroots[d.phi];
    let g = f.shift(&-phi);
    let g = act_t(rep, 0, 1, &g)?;
    let mut g = act_y(rep, &-phi, &g)?;
    if sign < 0 {
        let shift = rep.k_simple(0).clone() - rep.kinv_simple(0);
        g.add_scaled(f, &-shift);
    }
    Ok(g)
}

/// `π(δ(T_0)) = π(T_{s_φ}^{-1} x^{−φ∨})`, the other expression for `δ(T_0)`.
pub fn act_delta_t0_alt<S: Field, R: HeckeRep<S> + ?Sized>(rep: &R, f: &QuasiPoly<S>) -> Result<QuasiPoly<S>> {
    let d = rep.datum();
    let g = f.shift(&-&d.coroots[d.phi]);
    let sphi = AffElt::finite(crate::vector::RMat::reflection(&d.roots[d.phi]));
    act_t_word_inv(rep, &aw::reduced_word(d, &sphi), &g)
}

/// `(Y^{-1})^{α_j∨}`, with `(Y^{-1})^{α_0∨} = q_φ Y^{φ∨}`.
pub fn act_yinv_simple<S: Field, R: HeckeRep<S> + ?Sized>(rep: &R, j: usize, f: &QuasiPoly<S>) -> Result<QuasiPoly<S>> {
    let d = rep.datum();
    if j == 0 {
        Ok(act_y(rep, &d.coroots[d.phi], f)?.scale(&rep.q_phi()))
    } else {
        act_y(rep, &-&d.simple_co[j - 1], f)
    }
}

/// `π(S_j^Y) = π(δ(T_j)((Y^{-1})^{α_j∨} − 1) + (k_j − k_j^{-1}))`.
pub fn act_sy<S: Field, R: HeckeRep<S> + ?Sized>(rep: &R, j: usize, f: &QuasiPoly<S>) -> Result<QuasiPoly<S>> {
    let g = act_yinv_simple(rep, j, f)?.sub(f);
    let mut out = act_delta_t(rep, j, 1, &g)?;
    out.add_scaled(f, &(rep.k_simple(j).clone() - rep.kinv_simple(j)));
    Ok(out)
}

/// `π(S^Y_{j_1}⋯S^Y_{j_l}) f`, rightmost first.
pub fn act_sy_word<S: Field, R: HeckeRep<S> + ?Sized>(rep: &R, word: &[usize], f: &QuasiPoly<S>) -> Result<QuasiPoly<S>> {
    let mut g = f.clone();
    for &j in word.iter().rev() {
        g = act_sy(rep, j, &g)?;
    }
    Ok(g)
}

/// `π(δ(T_{j_1})⋯δ(T_{j_l})) f`, rightmost first.
pub fn act_delta_word<S: Field, R: HeckeRep<S> + ?Sized>(
    rep: &R,
    word: &[usize],
    f: &QuasiPoly<S>,
) -> Result<QuasiPoly<S>> {
    let mut g = f.clone();
    for &j in word.iter().rev() {
        g = act_delta_t(rep, j, 1, &g)?;
    }
    Ok(g)
}

impl<S: Field> HeckeRep<S> for Ctx<S> {
    fn spec(&self) -> &ParamSpec {
        &self.spec
    }

    fn t_mono(&self, j: usize, y: &RVec) -> Result<QuasiPoly<S>> {
        let d = self.d();
        let mut out = QuasiPoly::zero();
        let coef = if self.chi_simple(j, y) == 1 { self.k_simple(j).clone() } else { S::one() };
        let (z, c) = self.s_t(j, y)?;
        out.add_term(z, c * &coef);
        let kk = self.k_simple(j).clone() - self.kinv_simple(j);
        out.add_scaled(&nabla(d, &HeckeRep::q_phi(self), j, y), &kk);
        Ok(out)
    }
}

impl<S: Field> Ctx<S> {
    /// `s_{j,𝔱} x^y`, as (exponent, coefficient).
    pub fn s_t(&self, j: usize, y: &RVec) -> Result<(RVec, S)> {
        let d = self.d();
        if j == 0 {
            let p = self.point(y)?;
            let c = p.t_goth.eval(d, &d.coroots[d.phi])?;
            Ok((d.reflect(d.phi, y), c))
        } else {
            self.point(y)?;
            Ok((d.reflect(j - 1, y), S::one()))
        }
    }

    /// The `𝔱`-twisted action of `W`: `v x^y = x^{vy}`, `τ(μ) x^y = 𝔱_y^{−μ} x^y`.
    pub fn act_w_t(&self, w: &AffElt, f: &QuasiPoly<S>) -> Result<QuasiPoly<S>> {
        let d = self.d();
        let mut out = QuasiPoly::zero();
        for (y, c) in &f.terms {
            self.point(y)?;
            let vy = w.v.apply(y);
            let tv = self.point(&vy)?.t_goth.eval(d, &w.mu)?;
            out.add_term(&vy + &w.mu, c.clone() * &tv.inv()?);
        }
        Ok(out)
    }
}

/// `(T_j − k_j)(T_j + k_j^{-1}) f`.
pub fn hecke_residual<S: Field, R: HeckeRep<S> + ?Sized>(rep: &R, j: usize, f: &QuasiPoly<S>) -> Result<QuasiPoly<S>> {
    let g = act_t(rep, j, 1, f)?;
    let mut g2 = g.clone();
    g2.add_scaled(f, rep.kinv_simple(j));
    let mut out = act_t(rep, j, 1, &g2)?;
    out.add_scaled(&g2, &-rep.k_simple(j).clone());
    Ok(out)
}

/// `T_iT_jT_i⋯ f − T_jT_iT_j⋯ f` with `m_ij` factors, `None` if `m_ij = ∞`.
pub fn braid_residual<S: Field, R: HeckeRep<S> + ?Sized>(
    rep: &R,
    i: usize,
    j: usize,
    f: &QuasiPoly<S>,
) -> Result<Option<QuasiPoly<S>>> {
    let Some(m) = braid_order(rep.datum(), i, j) else {
        return Ok(None);
    };
    let w1: Vec<usize> = (0..m).map(|s| if s % 2 == 0 { i } else { j }).collect();
    let w2: Vec<usize> = (0..m).map(|s| if s % 2 == 0 { j } else { i }).collect();
    Ok(Some(act_t_word(rep, &w1, f)?.sub(&act_t_word(rep, &w2, f)?)))
}

/// `T_j x^μ f − s_j(x^μ) T_j f − (k_j − k_j^{-1}) ((x^μ − s_j(x^μ))/(1 − x^{α_j∨})) f`
/// for `μ ∈ Q∨`.
pub fn cross_residual<S: Field, R: HeckeRep<S> + ?Sized>(
    rep: &R,
    j: usize,
    mu: &RVec,
    f: &QuasiPoly<S>,
) -> Result<QuasiPoly<S>> {
    let d = rep.datum();
    let q_phi = rep.q_phi();
    let (smu, c) = if j == 0 {
        (d.reflect(d.phi, mu), q_phi.powi(d.pair(d.phi, mu).to_integer())?)
    } else {
        (d.reflect(j - 1, mu), S::one())
    };
    let mut out = act_t(rep, j, 1, &f.shift(mu))?;
    out.add_scaled(&act_t(rep, j, 1, f)?.shift(&smu), &-c);
    let quot = nabla(d, &q_phi, j, mu);
    out.add_scaled(&quot.mul(f), &-(rep.k_simple(j).clone() - rep.kinv_simple(j)));
    Ok(out)
}

/// `Y^μ Y^ν f − Y^ν Y^μ f`.
pub fn y_commute_residual<S: Field, R: HeckeRep<S> + ?Sized>(
    rep: &R,
    mu: &RVec,
    nu: &RVec,
    f: &QuasiPoly<S>,
) -> Result<QuasiPoly<S>> {
    Ok(act_y(rep, mu, &act_y(rep, nu, f)?)?.sub(&act_y(rep, nu, &act_y(rep, mu, f)?)?))
}

/// Order of `s_i s_j` in `W`, `None` if infinite.
pub fn braid_order(d: &RootDatum, i: usize, j: usize) -> Option<usize> {
    let p = aw::simple_reflection(d, i).mul(&aw::simple_reflection(d, j));
    let mut w = p.clone();
    for m in 1..=6 {
        if w.is_identity() {
            return Some(m);
        }
        w = w.mul(&p);
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quasi::{needed_d, Mult, TorusChar};
    use crate::roots::CartanType;
    use crate::scalars::{parse_scalar, RatFunc};
    use crate::vector::rat;
    use std::sync::Arc;

    fn a1(c: crate::vector::Rat, t: &str) -> Ctx<RatFunc> {
        let d = Arc::new(RootDatum::build(CartanType::A, 1, 1).unwrap());
        let c = d.simple_co[0].scale(c);
        let spec = ParamSpec::symbolic(needed_d(&d, &[&c]) * 4, 1, 0);
        let t = TorusChar { vals: vec![parse_scalar(t, &spec).unwrap()] };
        let m = Mult::from_vars(&spec).unwrap();
        Ctx::new(d, spec, m, c, t).unwrap()
    }

    #[test]
    fn nabla_examples() {
        let ctx = a1(rat(1, 4), "z1");
        let d = ctx.d();
        let y = d.simple_co[0].scale(rat(-1, 4));
        let n = nabla(d, &RatFunc::one(), 1, &y);
        assert_eq!(n, QuasiPoly::x(&y));
        assert!(nabla(d, &RatFunc::one(), 1, &ctx.c).is_zero());
    }

    #[test]
    fn t_action_examples() {
        let ctx = a1(rat(1, 4), "z1");
        let d = ctx.d();
        let a = &d.simple_co[0];
        let r = act_t(&ctx, 1, 1, &QuasiPoly::x(&ctx.c)).unwrap();
        assert_eq!(r, QuasiPoly::x(&a.scale(rat(-1, 4))));
        let r = act_t(&ctx, 1, 1, &QuasiPoly::x(&a.scale(rat(-1, 4)))).unwrap();
        let k = ctx.k_simple(1).clone();
        let mut want = QuasiPoly::x(&a.scale(rat(1, 4)));
        want.add_term(a.scale(rat(-1, 4)), k.clone() - &k.inv().unwrap());
        assert_eq!(r, want);
    }

    #[test]
    fn cherednik_polynomial_representation() {
        let ctx = a1(rint(0), "1");
        let d = ctx.d();
        let k = ctx.k_simple(0).clone();
        for n in -3..=3 {
            let y = d.simple_co[0].scale(rint(n));
            for j in 0..=1 {
                let got = act_t(&ctx, j, 1, &QuasiPoly::x(&y)).unwrap();
                let nab = nabla(d, &ctx.q_phi(), j, &y);
                let u = if j == 0 {
                    QuasiPoly::monomial(-&d.coroots[d.phi], ctx.q_phi())
                } else {
                    QuasiPoly::x(&d.simple_co[0])
                };
                let mut want = QuasiPoly::monomial(y.clone(), k.clone());
                want.add_scaled(&nab, &-k.inv().unwrap());
                want.add_scaled(&u.mul(&nab), &k);
                assert_eq!(got, want, "j={} n={}", j, n);
            }
        }
    }

    #[test]
    fn y_on_cyclic_vector() {
        let ctx = a1(rat(1, 4), "z1");
        let d = ctx.d();
        let mu = d.simple_co[0].clone();
        let r = act_y(&ctx, &mu, &QuasiPoly::x(&ctx.c)).unwrap();
        let ev = ctx.base_char().eval(d, &mu).unwrap().inv().unwrap();
        assert_eq!(r, QuasiPoly::monomial(ctx.c.clone(), ev));
    }

    #[test]
    fn dominant_split_b2() {
        let d = RootDatum::build(CartanType::B, 2, 1).unwrap();
        for i in 0..d.npos {
            let mu = d.coroots[d.neg(i)].clone();
            let (p, m) = dominant_split(&d, &mu);
            assert!(d.coroot_coords_int(&m).is_some());
            assert_eq!(&p - &m, mu);
            for k in 0..2 {
                assert!(d.pair(k, &p) >= rint(0) && d.pair(k, &m) >= rint(0));
            }
        }
        assert_eq!(braid_order(&d, 1, 2), Some(4));
        assert_eq!(braid_order(&d, 0, 1), Some(2));
        assert_eq!(braid_order(&d, 0, 2), Some(4));
    }
}
