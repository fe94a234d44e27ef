//! The `q`-independent right action `◀` of the affine Hecke algebra on
//! quasi-polynomials, Whittaker limits of `E_y` and of their (anti)symmetrisations,
//! computed both in closed form and as a limit `q̃ → ∞`.

use crate::affine_weyl::{self as aw, AffElt};
use crate::daha_rep::nabla;
use crate::eigen::{Eigen, Method};
use crate::error::{Error, Result};
use crate::quasi::{free_char, is_antidominant, is_regular, needed_d, q_char, Ctx, KData, Mult, QuasiPoly};
use crate::roots::{chi_z, RootDatum};
use crate::scalars::{Assignment, Backend, Field, Fp, ParamSpec, QtFp, RatFunc, Var};
use crate::vector::{floor, rint, RMat, RVec};
use num_traits::Signed;
use std::collections::HashMap;
use std::sync::Arc;

/// Root datum and multiplicities over a field without `q`.
#[derive(Clone)]
pub struct Whit<S: Field> {
    pub datum: Arc<RootDatum>,
    pub mult: Mult<S>,
}

impl<S: Field> KData<S> for Whit<S> {
    fn datum(&self) -> &RootDatum {
        &self.datum
    }
    fn mult(&self) -> &Mult<S> {
        &self.mult
    }
}

impl<S: Field> Whit<S> {
    pub fn new(datum: Arc<RootDatum>, mult: Mult<S>) -> Self {
        Whit { datum, mult }
    }

    /// `x^y ◀ T_i` for `1 ≤ i ≤ r`.
    fn t_mono(&self, i: usize, y: &RVec) -> QuasiPoly<S> {
        let d = &*self.datum;
        let a = i - 1;
        let coef = if chi_z(d.pair(a, y)) == 1 { self.k_simple(i).clone() } else { S::one() };
        let mut out = QuasiPoly::monomial(d.reflect(a, y), coef);
        let kk = self.k_simple(i).clone() - self.kinv_simple(i);
        out.add_scaled(&nabla(d, &S::one(), i, y), &kk);
        out
    }

    /// `f ◀ T_j^{±1}`, `0 ≤ j ≤ r`.
    pub fn wact(&self, j: usize, sign: i32, f: &QuasiPoly<S>) -> QuasiPoly<S> {
        let d = &*self.datum;
        let mut out = if j == 0 {
            let g = f.shift(&-&d.coroots[d.phi]);
            let sphi = AffElt::finite(RMat::reflection(&d.roots[d.phi]));
            let word = aw::reduced_word(d, &sphi);
            self.wact_word_inv(&word, &g)
        } else {
            let mut out = QuasiPoly::zero();
            for (y, c) in &f.terms {
                out.add_scaled(&self.t_mono(j, y), c);
            }
            out
        };
        if sign < 0 {
            let shift = self.k_simple(j).clone() - self.kinv_simple(j);
            out.add_scaled(f, &-shift);
        }
        out
    }

    /// `f ◀ T_{j_1}⋯T_{j_l}`, so `T_{j_1}` acts first.
    pub fn wact_word(&self, word: &[usize], f: &QuasiPoly<S>) -> QuasiPoly<S> {
        word.iter().fold(f.clone(), |g, &j| self.wact(j, 1, &g))
    }

    /// `f ◀ (T_{j_1}⋯T_{j_l})^{-1}`, so `T_{j_l}^{-1}` acts first.
    pub fn wact_word_inv(&self, word: &[usize], f: &QuasiPoly<S>) -> QuasiPoly<S> {
        word.iter().rev().fold(f.clone(), |g, &j| self.wact(j, -1, &g))
    }

    /// `Ē_y = (k(y₋)/k(y)) x^{y₋} ◀ T_{g_y^{-1}}^{-1}`.
    pub fn wh_epoly(&self, y: &RVec) -> Result<QuasiPoly<S>> {
        let (ym, applied) = aw::antidominant(&self.datum, y);
        let c = self.k_of(&ym) * &self.k_of(y).inv()?;
        Ok(self.wact_word_inv(&applied, &QuasiPoly::monomial(ym, c)))
    }

    /// `f ◀ T_v^{-1}` for all `v ∈ W₀`, in the order of [`aw::finite_weyl_group`].
    pub fn tinv_images(&self, f: &QuasiPoly<S>) -> Vec<(AffElt, QuasiPoly<S>)> {
        let d = &*self.datum;
        let mut done: HashMap<AffElt, QuasiPoly<S>> = HashMap::new();
        let mut out = Vec::new();
        for (v, word) in aw::finite_weyl_group(d) {
            let g = if word.is_empty() {
                f.clone()
            } else {
                let parent = aw::simple_reflection(d, word[0]).mul(&v);
                self.wact(word[0], -1, &done[&parent])
            };
            done.insert(v.clone(), g.clone());
            out.push((v, g));
        }
        out
    }

    /// `Ē^{J,±}_y` from the `◀` formulas; `y ∈ Ē₋` for `+`, `y ∈ E₋` for `−`.
    pub fn wh_symm(&self, y: &RVec, sign: i32) -> Result<QuasiPoly<S>> {
        let d = &*self.datum;
        if !is_antidominant(d, y) || (sign < 0 && !is_regular(d, y)) {
            return Err(Error::DomainRestriction(format!("{} is outside the chamber", y)));
        }
        let zero = RVec::zero(d.dim);
        let w0 = aw::longest_element(d).v;
        let kw0 = self.kappa(&w0, &zero);
        let imgs = self.tinv_images(&QuasiPoly::x(y));
        let mut out = QuasiPoly::zero();
        if sign < 0 {
            for (v, g) in imgs {
                let l = aw::finite_inversions(d, &v.v).len();
                let s = if l % 2 == 0 { S::one() } else { -S::one() };
                out.add_scaled(&g, &(s * &self.kappa(&v.v, &zero)));
            }
            return Ok(out.scale(&kw0.powi(-2)?));
        }
        let mut stab = S::zero();
        let mut seen: Vec<RVec> = Vec::new();
        for (v, g) in imgs {
            let kv = self.kappa(&v.v, &zero);
            let vy = v.v.apply(y);
            if vy == *y {
                stab = stab + &kv.powi(-2)?;
            }
            if seen.contains(&vy) {
                continue;
            }
            seen.push(vy);
            out.add_scaled(&g, &kv.inv()?);
        }
        Ok(out.scale(&(kw0.clone() * &kw0 * &stab)))
    }

    /// `Ē^{J,−}_y` through the expansion in the `Ē_{vy}`, `y ∈ E₋`.
    pub fn wh_minus_expansion(&self, y: &RVec) -> Result<QuasiPoly<S>> {
        let d = &*self.datum;
        let zero = RVec::zero(d.dim);
        let w0 = aw::longest_element(d).v;
        let mut out = QuasiPoly::zero();
        for (v, _) in aw::finite_weyl_group(d) {
            let l = aw::finite_inversions(d, &v.v).len();
            let s = if l % 2 == 0 { S::one() } else { -S::one() };
            let c = s * &self.kappa(&v.v, &zero) * &self.kappa(&v.v, y);
            out.add_scaled(&self.wh_epoly(&v.v.apply(y))?, &c);
        }
        Ok(out.scale(&self.kappa(&w0, &zero).powi(-2)?))
    }
}

/// `ξ_y = y − Σ ⌊α_i(y)⌋ ϖ_i∨`.
pub fn xi(d: &RootDatum, y: &RVec) -> RVec {
    let mut z = y.clone();
    for i in 0..d.rank {
        z = z.add_scaled(&d.fund_co[i], -rint(floor(d.pair(i, y))));
    }
    z
}

/// `x^ξ Σ_v (−1)^{ℓ(v)} x^{−ρ∨+v(μ+ρ∨)}` and `Π_{α>0}(1 − x^{−α∨})`: numerator and
/// denominator of `x^ξ s_μ` by the Weyl character formula.
pub fn weyl_character_parts<S: Field>(d: &RootDatum, xi: &RVec, mu: &RVec) -> (QuasiPoly<S>, QuasiPoly<S>) {
    let rho = d.rho_co();
    let top = mu + &rho;
    let mut num = QuasiPoly::zero();
    for (v, _) in aw::finite_weyl_group(d) {
        let l = aw::finite_inversions(d, &v.v).len();
        let s = if l % 2 == 0 { S::one() } else { -S::one() };
        num.add_term(&(xi - &rho) + &v.v.apply(&top), s);
    }
    let mut den = QuasiPoly::x(&RVec::zero(d.dim));
    for a in 0..d.npos {
        let mut f = QuasiPoly::x(&RVec::zero(d.dim));
        f.add_term(-&d.coroots[a], -S::one());
        den = den.mul(&f);
    }
    (num, den)
}

/// Coefficientwise `k → 0` limit.
pub fn k_zero_limit(f: &QuasiPoly<RatFunc>) -> Result<QuasiPoly<RatFunc>> {
    f.map_coeffs(|c| c.limit_zero(&[Var::Vsh, Var::Vlg]))
}

/// A context over `F_p(q̃)` with `t = q^λ t′`, where `t′ ∈ T̄_J^red` has the given `z` values.
pub fn limit_ctx(
    datum: Arc<RootDatum>,
    c: &RVec,
    lambda: &RVec,
    vsh: u64,
    vlg: u64,
    z: &[u64],
) -> Result<Ctx<QtFp>> {
    let d = &*datum;
    let face = d.face_of(c);
    if d.face_of(lambda) != face {
        return Err(Error::NotInTJ(format!("λ={} is not on the face of c", lambda)));
    }
    let a = Assignment { qroot: 2, vsh, vlg, z: z.to_vec(), h: vec![] };
    let spec = ParamSpec { d: needed_d(d, &[c, lambda]), nz: z.len(), nh: 0, backend: Backend::PrimeQ(a) };
    let t = q_char::<QtFp>(d, &spec, lambda)?.mul(&free_char(d, &spec, &face)?);
    let m = Mult::from_vars(&spec)?;
    Ctx::new(datum.clone(), spec, m, c.clone(), t)
}

/// Whittaker limit of a quasi-polynomial over `F_p(q̃)`.
pub fn limit_of(f: &QuasiPoly<QtFp>) -> Result<QuasiPoly<Fp>> {
    f.map_coeffs(|c| c.whittaker_value())
}

/// `Ē_y` as the Whittaker limit of `E_y(x; q^λ t′)`.
pub fn wh_epoly_limit(eig: &Eigen<QtFp>, y: &RVec, method: Method) -> Result<QuasiPoly<Fp>> {
    limit_of(&*eig.e(y, method)?)
}

/// The field `F_p` with the same multiplicities as a limit context.
pub fn whit_for(ctx: &Ctx<QtFp>) -> Result<Whit<Fp>> {
    let a = ctx.spec.assignment().ok_or_else(|| Error::Parse("limit context needs an assignment".into()))?;
    let m = Mult::new(Fp::new(a.vsh), Fp::new(a.vlg))?;
    Ok(Whit::new(ctx.datum.clone(), m))
}

/// Is `α_j(y)` negative, zero or positive, `0 ≤ j ≤ r`.
pub fn simple_sign(d: &RootDatum, j: usize, y: &RVec) -> i32 {
    let v = d.eval_affine(d.affine_simple(j), y);
    if v.is_negative() {
        -1
    } else if v.is_positive() {
        1
    } else {
        0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::daha_rep::act_t;
    use crate::eigen::sym_pm;
    use crate::quasi::lambda_candidates;
    use crate::roots::CartanType;
    use crate::vector::rat;

    fn wfp(ty: CartanType, r: usize) -> Whit<Fp> {
        let d = Arc::new(RootDatum::build(ty, r, 1).unwrap());
        Whit::new(d, Mult::new(Fp::new(12345), Fp::new(678)).unwrap())
    }

    #[test]
    fn floor_zero_step() {
        let w = wfp(CartanType::A, 1);
        let d = w.datum.clone();
        let y = d.simple_co[0].scale(rat(1, 8));
        assert_eq!(w.wact(1, 1, &QuasiPoly::x(&y)), QuasiPoly::x(&d.reflect(0, &y)));
    }

    #[test]
    fn hecke_relation() {
        for (ty, r) in [(CartanType::A, 1), (CartanType::A, 2), (CartanType::B, 2)] {
            let w = wfp(ty, r);
            let d = w.datum.clone();
            let y = d.simple_co[0].scale(rat(-5, 3)).add_scaled(&d.simple_co[r - 1], rat(2, 7));
            for j in 0..=r {
                let f = QuasiPoly::x(&y);
                let a = w.wact(j, 1, &f);
                let b = w.wact(j, -1, &a);
                assert_eq!(b, f, "{:?}{} j={}", ty, r, j);
            }
        }
    }

    #[test]
    fn agrees_with_ctx_action() {
        let d = Arc::new(RootDatum::build(CartanType::A, 2, 1).unwrap());
        let c = RVec::zero(d.dim).add_scaled(&d.fund_co[0], rat(1, 4));
        let ctx = limit_ctx(d.clone(), &c, &lambda_candidates(&d, &d.face_of(&c), 1)[0], 11, 13, &[5, 7]).unwrap();
        let w = whit_for(&ctx).unwrap();
        let y = d.s_affine(0, &d.s_affine(1, &c));
        for i in 1..=2 {
            let a = act_t(&ctx, i, 1, &QuasiPoly::x(&y)).unwrap();
            assert_eq!(limit_of(&a).unwrap(), w.wact(i, 1, &QuasiPoly::x(&y)));
        }
    }

    #[test]
    fn dual_route_a1() {
        let d = Arc::new(RootDatum::build(CartanType::A, 1, 1).unwrap());
        let c = d.simple_co[0].scale(rat(1, 4));
        let lam = lambda_candidates(&d, &d.face_of(&c), 2);
        let ctx = limit_ctx(d.clone(), &c, &lam[0], 101, 103, &[107]).unwrap();
        let w = whit_for(&ctx).unwrap();
        let eig = Eigen::new(&ctx);
        for y in aw::orbit_ball(&d, &c, 5) {
            let lim = wh_epoly_limit(&eig, &y, Method::Intertwiner).unwrap();
            assert_eq!(lim, w.wh_epoly(&y).unwrap(), "at {}", y);
        }
        let y = d.simple_co[0].scale(rat(-1, 4));
        let e = eig.e(&y, Method::Intertwiner).unwrap();
        let em = limit_of(&sym_pm(&ctx, -1, &e).unwrap()).unwrap();
        assert_eq!(em, w.wh_symm(&y, -1).unwrap());
        assert_eq!(em, w.wh_minus_expansion(&y).unwrap());
    }

    #[test]
    fn weyl_character_k0() {
        let d = Arc::new(RootDatum::build(CartanType::A, 2, 1).unwrap());
        let spec = ParamSpec::symbolic(1, 0, 0);
        let w = Whit::new(d.clone(), Mult::from_vars(&spec).unwrap());
        let y = RVec::zero(d.dim).add_scaled(&d.fund_co[0], rat(-5, 4)).add_scaled(&d.fund_co[1], rat(-1, 1));
        let ep = k_zero_limit(&w.wh_symm(&y, 1).unwrap()).unwrap();
        let x = xi(&d, &y);
        let (num, den) = weyl_character_parts::<RatFunc>(&d, &x, &(&y - &x));
        assert_eq!(ep.mul(&den), num);
    }

    #[test]
    fn intertwining_recursion_and_plus_limit() {
        let d = Arc::new(RootDatum::build(CartanType::A, 2, 1).unwrap());
        let c = RVec::zero(d.dim).add_scaled(&d.fund_co[1], rat(1, 3));
        let lam = lambda_candidates(&d, &d.face_of(&c), 1);
        let ctx = limit_ctx(d.clone(), &c, &lam[0], 31, 37, &[41, 43]).unwrap();
        let w = whit_for(&ctx).unwrap();
        for y in aw::orbit_ball(&d, &c, 4) {
            for j in 0..=2 {
                let sg = simple_sign(&d, j, &y);
                if sg > 0 {
                    continue;
                }
                let lhs = w.wact(j, 1, &w.wh_epoly(&d.s_affine(j, &y)).unwrap());
                let f = if sg < 0 { w.kappa(&crate::eigen::ds(&ctx, j), &y).inv().unwrap() } else { w.k_simple(j).clone() };
                assert_eq!(lhs, w.wh_epoly(&y).unwrap().scale(&f), "y={} j={}", y, j);
            }
        }
        let y = aw::antidominant(&d, &c).0;
        let eig = Eigen::new(&ctx);
        let e = eig.e(&y, Method::Intertwiner).unwrap();
        let ep = limit_of(&sym_pm(&ctx, 1, &e).unwrap()).unwrap();
        assert_eq!(ep, w.wh_symm(&y, 1).unwrap());
    }
}
