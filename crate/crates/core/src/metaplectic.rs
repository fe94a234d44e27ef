//! Metaplectic data `(n, 𝐐)`, metaplectic parameters `h_s(α)`, the metaplectic basic
//! representation on Laurent polynomials, the rescaling `Γ^m`, metaplectic polynomials
//! `E^m_λ` and the Whittaker objects `Ē^m_λ`, `Ē^{m,−}_λ`, `W_{v,λ}`, `W_λ`.

use crate::affine_weyl::{self as aw, AffElt};
use crate::daha_rep::{act_t, act_y, HeckeRep};
use crate::eigen::{Eigen, Method};
use crate::error::{Error, Result};
use crate::quasi::{is_antidominant, is_regular, needed_d, q_char, Ctx, KData, Mult, QuasiPoly, TorusChar};
use crate::roots::{chi_z, RootDatum};
use crate::scalars::{lcm_all, Field, ParamSpec, Var};
use crate::vector::{rat, rint, RMat, RVec};
use crate::whittaker::Whit;
use num_integer::Integer;
use std::str::FromStr;
use std::sync::Arc;

/// The lattice `Λ` carrying the Laurent polynomials.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Lattice {
    /// `Q∨`.
    Coroot,
    /// `P∨`.
    Coweight,
    /// All `λ` with `α(λ) ∈ ℤ`, including a component orthogonal to the roots.
    Integral,
}

impl FromStr for Lattice {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "Q" | "coroot" => Ok(Lattice::Coroot),
            "P" | "coweight" => Ok(Lattice::Coweight),
            "Z" | "integral" => Ok(Lattice::Integral),
            _ => Err(Error::Parse(format!("unknown lattice {}", s))),
        }
    }
}

impl Lattice {
    pub fn name(&self) -> &'static str {
        match self {
            Lattice::Coroot => "Q",
            Lattice::Coweight => "P",
            Lattice::Integral => "Z",
        }
    }
}

/// A metaplectic datum over a root datum `Φ₀`, with `Φ₀^m = {α/m(α)}`.
#[derive(Clone, Debug)]
pub struct MetaDatum {
    pub base: Arc<RootDatum>,
    pub meta: Arc<RootDatum>,
    pub n: i64,
    /// `𝐐(α∨)` for short and long `α ∈ Φ₀`.
    pub kappa: [i64; 2],
    /// `m(α) = n/gcd(n, 𝐐(α∨))` for short and long `α`.
    pub m: [i64; 2],
    pub lattice: Lattice,
    /// `to_meta[a]` indexes `α/m(α)` in `meta.roots`.
    pub to_meta: Vec<usize>,
    pub to_base: Vec<usize>,
}

impl MetaDatum {
    pub fn new(base: Arc<RootDatum>, n: i64, kappa_sh: i64, kappa_lg: i64, lattice: Lattice) -> Result<MetaDatum> {
        let bad = |s: String| Error::InvalidQuadraticForm(s);
        if n < 1 || kappa_sh < 1 || kappa_lg < 1 {
            return Err(bad(format!("n={} κ_sh={} κ_lg={} must be positive", n, kappa_sh, kappa_lg)));
        }
        let d = &*base;
        if d.is_simply_laced() {
            if kappa_sh != kappa_lg {
                return Err(bad(format!("{} is simply laced but κ_sh={} ≠ κ_lg={}", d.name, kappa_sh, kappa_lg)));
            }
        } else {
            let sh = (0..d.rank).find(|&i| !d.long[i]).unwrap();
            let lg = (0..d.rank).find(|&i| d.long[i]).unwrap();
            let nsh = d.ip(&d.simple_co[sh], &d.simple_co[sh]);
            let nlg = d.ip(&d.simple_co[lg], &d.simple_co[lg]);
            if rint(kappa_sh) * nlg != rint(kappa_lg) * nsh {
                return Err(bad(format!(
                    "κ_sh/κ_lg = {}/{} is not |α_sh∨|²/|α_lg∨|² = {}, so 𝐐 is not W₀-invariant",
                    kappa_sh, kappa_lg,
                    nsh / nlg
                )));
            }
        }
        let kappa = [kappa_sh, kappa_lg];
        let m = [n / n.gcd(&kappa_sh), n / n.gcd(&kappa_lg)];
        let class = |a: usize| Mult::<crate::scalars::Fp>::class(d, a);
        let simple: Vec<RVec> = (0..d.rank).map(|i| d.simple[i].scale(rat(1, m[class(i)]))).collect();
        let meta = RootDatum::from_simple_roots(&format!("{}^m", d.name), d.dim, simple, d.form)
            .map_err(|e| bad(format!("metaplectic root system: {}", e)))?;
        let mut to_meta = Vec::with_capacity(d.roots.len());
        for (a, r) in d.roots.iter().enumerate() {
            let b = meta.root_index(&r.scale(rat(1, m[class(a)]))).ok_or_else(|| bad("Φ₀^m is not closed".into()))?;
            to_meta.push(b);
        }
        let mut to_base = vec![0; to_meta.len()];
        for (a, &b) in to_meta.iter().enumerate() {
            to_base[b] = a;
        }
        Ok(MetaDatum { meta: Arc::new(meta), base, n, kappa, m, lattice, to_meta, to_base })
    }

    /// Length class of `α ∈ Φ₀` (0 short, 1 long).
    pub fn class(&self, a: usize) -> usize {
        Mult::<crate::scalars::Fp>::class(&self.base, a)
    }

    /// Length class of `α^m` in `Φ₀^m`, which indexes `k_{α^m}`.
    pub fn meta_class(&self, a: usize) -> usize {
        Mult::<crate::scalars::Fp>::class(&self.meta, self.to_meta[a])
    }

    /// Classes of `Φ₀` that occur.
    pub fn classes(&self) -> Vec<usize> {
        if self.base.is_simply_laced() {
            vec![1]
        } else {
            vec![0, 1]
        }
    }

    fn rep_root(&self, cls: usize) -> usize {
        (0..self.base.npos).find(|&a| self.class(a) == cls).unwrap()
    }

    pub fn m_of(&self, a: usize) -> i64 {
        self.m[self.class(a)]
    }

    pub fn kappa_of(&self, a: usize) -> i64 {
        self.kappa[self.class(a)]
    }

    /// `lcm(n, 𝐐(α∨))` for the class.
    pub fn lcm(&self, cls: usize) -> i64 {
        self.kappa[cls] * self.m[cls]
    }

    /// `ϑ ∈ Φ₀⁺`, with `ϑ/m(ϑ)` the highest root of `Φ₀^m`.
    pub fn theta(&self) -> usize {
        self.to_base[self.meta.phi]
    }

    /// `α(λ)` as an integer.
    fn pair_int(&self, a: usize, y: &RVec) -> Result<i64> {
        let v = self.base.pair(a, y);
        if v.is_integer() {
            Ok(v.to_integer())
        } else {
            Err(Error::DomainRestriction(format!("{} is not in the lattice {}", y, self.lattice.name())))
        }
    }

    /// `𝐁(λ, α∨) = 𝐐(α∨)α(λ)`.
    pub fn bform(&self, y: &RVec, a: usize) -> Result<i64> {
        Ok(self.kappa_of(a) * self.pair_int(a, y)?)
    }

    pub fn contains(&self, y: &RVec) -> bool {
        let d = &*self.base;
        if y.dim() != d.dim || (0..d.rank).any(|i| !d.pair(i, y).is_integer()) {
            return false;
        }
        match self.lattice {
            Lattice::Coroot => d.coroot_coords_int(y).is_some(),
            Lattice::Coweight => d.co_part(y).is_zero(),
            Lattice::Integral => true,
        }
    }

    pub fn check_point(&self, y: &RVec) -> Result<()> {
        if self.contains(y) {
            Ok(())
        } else {
            Err(Error::DomainRestriction(format!("{} is not in the lattice {}", y, self.lattice.name())))
        }
    }

    /// `P∨ ⊆ Λ`.
    pub fn contains_coweights(&self) -> bool {
        self.base.fund_co.iter().all(|w| self.contains(w))
    }

    /// Free metaplectic parameters `(class, j)` standing for `h_{𝐐(α∨)j}(α)`, `0 < 2j < m`.
    pub fn free_h(&self) -> Vec<(usize, i64)> {
        let mut out = Vec::new();
        for c in self.classes() {
            for j in 1..self.m[c] {
                if 2 * j < self.m[c] {
                    out.push((c, j));
                }
            }
        }
        out
    }

    /// A `D` covering every q-exponent met on `P∨`.
    pub fn default_d(&self) -> i64 {
        let pts: Vec<&RVec> = self.base.fund_co.iter().collect();
        lcm_all([needed_d(&self.meta, &pts), needed_d(&self.base, &pts)])
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "n": self.n,
            "kappa_sh": self.kappa[0],
            "kappa_lg": self.kappa[1],
            "lattice": self.lattice.name(),
            "m_sh": self.m[0],
            "m_lg": self.m[1],
            "meta_cartan": self.meta.cartan,
        })
    }
}

/// Metaplectic parameters: `vals[c][j] = h_{𝐐(α∨)j}(α)` for `α` of class `c`, `j mod m(α)`.
#[derive(Clone, Debug, PartialEq)]
pub struct HTable<S> {
    pub vals: [Vec<S>; 2],
}

impl<S: Field> HTable<S> {
    /// Free entries are the variables `H(0), H(1), …` in the order of
    /// [`MetaDatum::free_h`]; the rest is forced, with the sign `+` at `j = m/2`.
    pub fn generic(md: &MetaDatum, spec: &ParamSpec, mult: &Mult<S>) -> Result<HTable<S>> {
        let free = md.free_h();
        let mut vals: [Vec<S>; 2] = [Vec::new(), Vec::new()];
        for c in md.classes() {
            let m = md.m[c] as usize;
            let k = mult.k[md.meta_class(md.rep_root(c))].clone();
            let mut v = vec![S::zero(); m];
            v[0] = -S::one();
            for j in 1..m {
                if 2 * j < m {
                    let idx = free.iter().position(|&p| p == (c, j as i64)).unwrap();
                    v[j] = S::var(spec, Var::H(idx))?;
                } else if 2 * j == m {
                    v[j] = k.inv()?;
                } else {
                    v[j] = k.powi(-2)? * &v[m - j].inv()?;
                }
            }
            vals[c] = v;
        }
        if md.base.is_simply_laced() {
            vals[0] = vals[1].clone();
        }
        Ok(HTable { vals })
    }

    /// `h_s(α)` for `α` of class `cls`, `s ∈ 𝐐(α∨)ℤ`.
    pub fn h(&self, md: &MetaDatum, cls: usize, s: i64) -> S {
        debug_assert_eq!(s % md.kappa[cls], 0);
        let j = (s / md.kappa[cls]).rem_euclid(md.m[cls]) as usize;
        self.vals[cls][j].clone()
    }

    /// Overwrite `h_s(α)`.
    pub fn set(&mut self, md: &MetaDatum, cls: usize, s: i64, v: S) -> Result<()> {
        if s % md.kappa[cls] != 0 {
            return Err(Error::InvalidHTable(format!("index {} is not in 𝐐(α∨)ℤ = {}ℤ", s, md.kappa[cls])));
        }
        let j = (s / md.kappa[cls]).rem_euclid(md.m[cls]) as usize;
        self.vals[cls][j] = v;
        if md.base.is_simply_laced() {
            self.vals[1 - cls][j] = self.vals[cls][j].clone();
        }
        Ok(())
    }

    /// `{"short": {s: h_s}, "long": {s: h_s}}` over residues `s mod lcm(n, 𝐐(α∨))`.
    pub fn to_json(&self, md: &MetaDatum) -> serde_json::Value {
        let mut out = serde_json::Map::new();
        for c in md.classes() {
            let m: serde_json::Map<String, serde_json::Value> = self.vals[c]
                .iter()
                .enumerate()
                .map(|(j, v)| ((md.kappa[c] * j as i64).to_string(), serde_json::Value::String(v.to_string())))
                .collect();
            out.insert(if c == 0 { "short" } else { "long" }.into(), serde_json::Value::Object(m));
        }
        serde_json::Value::Object(out)
    }

    pub fn validate(&self, md: &MetaDatum, mult: &Mult<S>) -> Result<()> {
        for c in md.classes() {
            let m = md.m[c] as usize;
            let v = &self.vals[c];
            if v.len() != m {
                return Err(Error::InvalidHTable(format!("class {} needs {} entries, got {}", c, m, v.len())));
            }
            if v[0] != -S::one() {
                return Err(Error::InvalidHTable(format!("h_0 = {} but must be −1", v[0])));
            }
            let k = &mult.k[md.meta_class(md.rep_root(c))];
            let target = k.powi(-2)?;
            for j in 1..m {
                if v[j].is_zero() {
                    return Err(Error::InvalidHTable(format!("h_{} is zero", md.kappa[c] * j as i64)));
                }
                if v[j].clone() * &v[m - j] != target {
                    let which = if 2 * j == m { "h_{lcm/2}² = k^{-2}" } else { "h_s h_{-s} = k^{-2}" };
                    return Err(Error::InvalidHTable(format!("{} fails at s={}", which, md.kappa[c] * j as i64)));
                }
            }
        }
        Ok(())
    }
}

/// The metaplectic basic representation `π^m_Λ` with the finite data it depends on.
pub struct MetaRep<S: Field> {
    pub md: Arc<MetaDatum>,
    pub spec: ParamSpec,
    pub mult: Mult<S>,
    pub h: HTable<S>,
}

impl<S: Field> KData<S> for MetaRep<S> {
    fn datum(&self) -> &RootDatum {
        &self.md.meta
    }
    fn mult(&self) -> &Mult<S> {
        &self.mult
    }
}

/// `x^y (1 − U^N)/(1 − U)` with `U = c·x^g`, expanded.
fn geometric<S: Field>(y: &RVec, n: i64, g: &RVec, c: &S) -> Result<QuasiPoly<S>> {
    let mut out = QuasiPoly::zero();
    if n > 0 {
        for s in 0..n {
            out.add_term(y.add_scaled(g, rint(s)), c.powi(s)?);
        }
    } else {
        for s in 1..=-n {
            out.add_term(y.add_scaled(g, rint(-s)), -c.powi(-s)?);
        }
    }
    Ok(out)
}

impl<S: Field + Sync> HeckeRep<S> for MetaRep<S> {
    fn spec(&self) -> &ParamSpec {
        &self.spec
    }

    fn t_mono(&self, j: usize, y: &RVec) -> Result<QuasiPoly<S>> {
        let md = &*self.md;
        md.check_point(y)?;
        let d = &*md.base;
        let kj = self.k_simple(j).clone();
        let kk = kj.clone() - self.kinv_simple(j);
        let mut out;
        if j == 0 {
            let th = md.theta();
            let l = md.m_of(th);
            let a = md.pair_int(th, y)?;
            let qt = d.q_exp(th);
            let hv = self.h.h(md, md.class(th), md.bform(y, th)?);
            let coef = -(kj * &hv) * &S::q_power(&self.spec, qt * rint(l * a))?;
            out = QuasiPoly::monomial(d.reflect(th, y), coef);
            let n = -Integer::div_floor(&-a, &l);
            let u = S::q_power(&self.spec, qt * rint(l * l))?;
            out.add_scaled(&geometric(y, n, &d.coroots[th].scale(rint(-l)), &u)?, &kk);
        } else {
            let a = j - 1;
            let l = md.m_of(a);
            let v = md.pair_int(a, y)?;
            let hv = self.h.h(md, md.class(a), -md.bform(y, a)?);
            out = QuasiPoly::monomial(d.reflect(a, y), -(kj * &hv));
            let n = -Integer::div_floor(&v, &l);
            out.add_scaled(&geometric(y, n, &d.simple_co[a].scale(rint(l)), &S::one())?, &kk);
        }
        Ok(out)
    }
}

/// How `Ē^m_λ` is computed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WhRoute {
    /// From `x^{λ₋} ◀^m T_v^{-1}`.
    Act,
    /// From `Γ^m` and the Whittaker limit over `Φ₀^m`.
    Gamma,
}

impl<S: Field + Sync> MetaRep<S> {
    pub fn new(md: Arc<MetaDatum>, spec: ParamSpec, mult: Mult<S>, h: HTable<S>) -> Result<MetaRep<S>> {
        h.validate(&md, &mult)?;
        Ok(MetaRep { md, spec, mult, h })
    }

    /// Multiplicities from the spec variables and generic `h`.
    pub fn generic(md: Arc<MetaDatum>, spec: ParamSpec) -> Result<MetaRep<S>> {
        let mult = Mult::from_vars(&spec)?;
        let h = HTable::generic(&md, &spec, &mult)?;
        MetaRep::new(md, spec, mult, h)
    }

    /// `−k_{α^m}^{1−χ_ℤ(α(y)/m(α))} h_{𝐐(α∨)α(y)}(α)`.
    pub fn factor(&self, a: usize, y: &RVec) -> Result<S> {
        let md = &*self.md;
        let v = md.pair_int(a, y)?;
        let k = &self.mult.k[md.meta_class(a)];
        let mut f = -self.h.h(md, md.class(a), md.kappa_of(a) * v);
        if chi_z(rat(v, md.m_of(a))) == 0 {
            f = f * k;
        }
        Ok(f)
    }

    /// `γ_λ = Π_{α∈Π(v_λ^{-1})} factor(α, c_λ)`.
    pub fn gamma(&self, y: &RVec) -> Result<S> {
        let md = &*self.md;
        let nf = aw::orbit_normal_form(&md.meta, y);
        let mut g = S::one();
        for b in aw::finite_inversions(&md.meta, &nf.w.v) {
            g = g * &self.factor(md.to_base[b], &nf.c)?;
        }
        Ok(g)
    }

    /// `x^λ ↦ γ_λ^{±1} x^λ`.
    pub fn gamma_apply(&self, f: &QuasiPoly<S>, sign: i32) -> Result<QuasiPoly<S>> {
        let mut out = QuasiPoly::zero();
        for (y, c) in &f.terms {
            let g = self.gamma(y)?;
            let g = if sign < 0 { g.inv()? } else { g };
            out.add_term(y.clone(), c.clone() * &g);
        }
        Ok(out)
    }

    /// `𝔱_λ(h)` on the simple coroots of `Φ₀^m`.
    pub fn t_goth(&self, y: &RVec) -> Result<TorusChar<S>> {
        let md = &*self.md;
        let meta = &*md.meta;
        let fs: Vec<S> = (0..md.base.npos).map(|a| self.factor(a, y)).collect::<Result<_>>()?;
        let mut vals = Vec::with_capacity(meta.rank);
        for i in 0..meta.rank {
            let mut r = S::one();
            for (a, f) in fs.iter().enumerate() {
                let e = meta.pair(md.to_meta[a], &meta.simple_co[i]).to_integer();
                if e != 0 {
                    r = r * &f.powi(e)?;
                }
            }
            vals.push(r);
        }
        Ok(TorusChar { vals })
    }

    /// `q^λ 𝔰_λ 𝔱_λ(h)`.
    pub fn spectrum(&self, y: &RVec) -> Result<TorusChar<S>> {
        Ok(q_char(&self.md.meta, &self.spec, y)?.mul(&self.frak_s(y)).mul(&self.t_goth(y)?))
    }

    /// The quasi-polynomial context over `Φ₀^m` for the orbit of `c ∈ C̄₊^m`, with
    /// `t = q^c 𝔱_c(h)`.
    pub fn orbit_ctx(&self, c: &RVec) -> Result<Ctx<S>> {
        let t = q_char(&self.md.meta, &self.spec, c)?.mul(&self.t_goth(c)?);
        Ctx::new(self.md.meta.clone(), self.spec.clone(), self.mult.clone(), c.clone(), t)
    }

    /// `E^m_λ = γ_λ Γ^{m,−1}(E^{J(c_λ)}_λ(x; q^{c_λ}𝔱_{c_λ}(h)))`.
    pub fn metapoly(&self, y: &RVec, method: Method) -> Result<QuasiPoly<S>> {
        self.md.check_point(y)?;
        let nf = aw::orbit_normal_form(&self.md.meta, y);
        let ctx = self.orbit_ctx(&nf.c)?;
        let e = Eigen::new(&ctx).e(y, method)?;
        Ok(self.gamma_apply(&e, -1)?.scale(&self.gamma(y)?))
    }

    /// `π^m(Y^μ) f − (q^λ𝔰_λ𝔱_λ(h))^{−μ} f`.
    pub fn eigen_residual(&self, y: &RVec, mu: &RVec, f: &QuasiPoly<S>) -> Result<QuasiPoly<S>> {
        let ev = self.spectrum(y)?.eval(&self.md.meta, &-mu)?;
        Ok(act_y(self, mu, f)?.sub(&f.scale(&ev)))
    }

    /// `Γ^m(π^m(T_j) x^λ) − π_{c,q^c𝔱_c(h)}(T_j) Γ^m(x^λ)`.
    pub fn conjugation_residual(&self, j: usize, y: &RVec) -> Result<QuasiPoly<S>> {
        let nf = aw::orbit_normal_form(&self.md.meta, y);
        let ctx = self.orbit_ctx(&nf.c)?;
        let lhs = self.gamma_apply(&act_t(self, j, 1, &QuasiPoly::x(y))?, 1)?;
        let rhs = act_t(&ctx, j, 1, &QuasiPoly::monomial(y.clone(), self.gamma(y)?))?;
        Ok(lhs.sub(&rhs))
    }

    /// `f ◀^m T_v^{-1}` for all `v ∈ W₀`, in the order of [`aw::finite_weyl_group`].
    pub fn tinv_images(&self, f: &QuasiPoly<S>) -> Result<Vec<(AffElt, QuasiPoly<S>)>> {
        let d = &*self.md.meta;
        let mut done: std::collections::HashMap<AffElt, QuasiPoly<S>> = Default::default();
        let mut out = Vec::new();
        for (v, word) in aw::finite_weyl_group(d) {
            let g = if word.is_empty() {
                f.clone()
            } else {
                let parent = aw::simple_reflection(d, word[0]).mul(&v);
                act_t(self, word[0], -1, &done[&parent])?
            };
            done.insert(v.clone(), g.clone());
            out.push((v, g));
        }
        Ok(out)
    }

    /// `Ē^m_λ`.
    pub fn wh_epoly(&self, y: &RVec, route: WhRoute) -> Result<QuasiPoly<S>> {
        let md = &*self.md;
        md.check_point(y)?;
        match route {
            WhRoute::Gamma => {
                let w = Whit::new(md.meta.clone(), self.mult.clone());
                Ok(self.gamma_apply(&w.wh_epoly(y)?, -1)?.scale(&self.gamma(y)?))
            }
            WhRoute::Act => {
                let (ym, applied) = aw::antidominant(&md.meta, y);
                if applied.is_empty() {
                    return Ok(QuasiPoly::x(y));
                }
                if !is_regular(&md.meta, &ym) {
                    return Err(Error::DomainRestriction(format!("{} is not regular", ym)));
                }
                let mut g = QuasiPoly::x(&ym);
                let mut v = RMat::identity(md.meta.dim);
                for &j in applied.iter().rev() {
                    g = act_t(self, j, -1, &g)?;
                }
                for &j in &applied {
                    v = v.mul(&aw::simple_reflection(&md.meta, j).v);
                }
                let c = self.gamma(y)? * &(self.kappa(&v, &ym) * &self.gamma(&ym)?).inv()?;
                Ok(g.scale(&c))
            }
        }
    }

    /// `Ē^{m,−}_λ` for `λ ∈ Λ ∩ E₋`, expanded in the `Ē^m_{vλ}`.
    pub fn wh_minus(&self, y: &RVec, route: WhRoute) -> Result<QuasiPoly<S>> {
        let d = &*self.md.meta;
        if !is_antidominant(d, y) || !is_regular(d, y) {
            return Err(Error::DomainRestriction(format!("{} is not in E₋", y)));
        }
        let zero = RVec::zero(d.dim);
        let gy = self.gamma(y)?;
        let mut out = QuasiPoly::zero();
        for (v, _) in aw::finite_weyl_group(d) {
            let vy = v.v.apply(y);
            let l = aw::finite_inversions(d, &v.v).len();
            let s = if l % 2 == 0 { S::one() } else { -S::one() };
            let c = s * &self.kappa(&v.v, &zero) * &self.kappa(&v.v, y) * &gy * &self.gamma(&vy)?.inv()?;
            out.add_scaled(&self.wh_epoly(&vy, route)?, &c);
        }
        let w0 = aw::longest_element(d).v;
        Ok(out.scale(&self.kappa(&w0, &zero).powi(-2)?))
    }

    fn rho_lambda(&self, lam: &RVec) -> Result<RVec> {
        let md = &*self.md;
        if !md.contains_coweights() {
            return Err(Error::LatticeTooSmall(format!("P∨ is not contained in {}", md.lattice.name())));
        }
        md.check_point(lam)?;
        if !crate::quasi::is_antidominant(&md.meta, &-lam) {
            return Err(Error::DomainRestriction(format!("{} is not dominant", lam)));
        }
        Ok(md.base.rho_co())
    }

    /// `W_{v,λ} = (−1)^{ℓ(v)} κ^m_v(0) x^{−ρ∨} I(x^{−λ−ρ∨} ◀^m T_v^{-1})` for all `v`.
    pub fn iwahori(&self, lam: &RVec) -> Result<Vec<(AffElt, QuasiPoly<S>)>> {
        let rho = self.rho_lambda(lam)?;
        let d = &*self.md.meta;
        let zero = RVec::zero(d.dim);
        let start = -&(lam + &rho);
        let mut out = Vec::new();
        for (v, g) in self.tinv_images(&QuasiPoly::x(&start))? {
            let l = aw::finite_inversions(d, &v.v).len();
            let s = if l % 2 == 0 { S::one() } else { -S::one() };
            let w = g.invert_exponents().shift(&-&rho).scale(&(s * &self.kappa(&v.v, &zero)));
            out.push((v, w));
        }
        Ok(out)
    }

    /// `W_λ = Σ_v W_{v,λ}`.
    pub fn spherical(&self, lam: &RVec) -> Result<QuasiPoly<S>> {
        let mut out = QuasiPoly::zero();
        for (_, w) in self.iwahori(lam)? {
            out = out.add(&w);
        }
        Ok(out)
    }

    /// `κ^m_{w₀}(0)² x^{−ρ∨} I(Ē^{m,−}_{−λ−ρ∨})`.
    pub fn spherical_via_minus(&self, lam: &RVec, route: WhRoute) -> Result<QuasiPoly<S>> {
        let rho = self.rho_lambda(lam)?;
        let d = &*self.md.meta;
        let e = self.wh_minus(&-&(lam + &rho), route)?;
        let k = self.kappa(&aw::longest_element(d).v, &RVec::zero(d.dim));
        Ok(e.invert_exponents().shift(&-&rho).scale(&(k.clone() * &k)))
    }

    /// `W_{v,λ}` through `Ē^m_{−v(λ+ρ∨)}`.
    pub fn iwahori_via_e(&self, v: &RMat, lam: &RVec, route: WhRoute) -> Result<QuasiPoly<S>> {
        let rho = self.rho_lambda(lam)?;
        let d = &*self.md.meta;
        let zero = RVec::zero(d.dim);
        let y = -&(lam + &rho);
        let vy = v.apply(&y);
        let l = aw::finite_inversions(d, v).len();
        let s = if l % 2 == 0 { S::one() } else { -S::one() };
        let c = s * &self.kappa(v, &zero) * &self.kappa(v, &y) * &self.gamma(&y)? * &self.gamma(&vy)?.inv()?;
        Ok(self.wh_epoly(&vy, route)?.invert_exponents().shift(&-&rho).scale(&c))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::daha_rep::{braid_residual, cross_residual, hecke_residual, nabla};
    use crate::eigen::epoly;
    use crate::roots::CartanType;
    use crate::scalars::{Assignment, Backend, Fp, QtFp, RatFunc};
    use rand::SeedableRng;

    fn md(ty: CartanType, r: usize, n: i64, ksh: i64, klg: i64, lat: Lattice) -> Arc<MetaDatum> {
        let d = Arc::new(RootDatum::build(ty, r, 1).unwrap());
        Arc::new(MetaDatum::new(d, n, ksh, klg, lat).unwrap())
    }

    fn rep_fp(md: Arc<MetaDatum>, seed: u64) -> MetaRep<Fp> {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let spec = ParamSpec::prime(md.default_d(), 0, md.free_h().len(), &mut rng);
        MetaRep::generic(md, spec).unwrap()
    }

    fn box_points(md: &MetaDatum, radius: i64) -> Vec<RVec> {
        let d = &*md.base;
        let basis: &Vec<RVec> = if md.lattice == Lattice::Coroot { &d.simple_co } else { &d.fund_co };
        let mut pts = vec![RVec::zero(d.dim)];
        for b in basis {
            let mut next = Vec::new();
            for p in &pts {
                for s in -radius..=radius {
                    next.push(p.add_scaled(b, rint(s)));
                }
            }
            pts = next;
        }
        pts
    }

    #[test]
    fn datum_examples() {
        let a = md(CartanType::A, 2, 1, 1, 1, Lattice::Coroot);
        assert_eq!(a.m, [1, 1]);
        assert_eq!(a.meta.roots, a.base.roots);
        let a = md(CartanType::A, 2, 2, 1, 1, Lattice::Coroot);
        assert_eq!(a.m, [2, 2]);
        let b = md(CartanType::B, 2, 2, 2, 1, Lattice::Coroot);
        assert_eq!(b.m, [1, 2]);
        let c = RootDatum::build(CartanType::C, 2, 1).unwrap();
        assert_eq!(b.meta.cartan, c.cartan);
        assert_eq!(b.theta(), b.base.theta);
        let d = Arc::new(RootDatum::build(CartanType::B, 2, 1).unwrap());
        let e = MetaDatum::new(d, 2, 1, 2, Lattice::Coroot).unwrap_err();
        assert_eq!(e.name(), "InvalidQuadraticForm");
    }

    #[test]
    fn h_tables() {
        let m1 = md(CartanType::A, 1, 1, 1, 1, Lattice::Coweight);
        let spec = ParamSpec::symbolic(1, 0, 0);
        let mult = Mult::<RatFunc>::from_vars(&spec).unwrap();
        let h = HTable::generic(&m1, &spec, &mult).unwrap();
        assert_eq!(h.vals[1], vec![-RatFunc::one()]);
        let mut bad = h.clone();
        bad.vals[1][0] = RatFunc::from_i64(2);
        assert_eq!(bad.validate(&m1, &mult).unwrap_err().name(), "InvalidHTable");

        let m3 = md(CartanType::A, 1, 3, 1, 1, Lattice::Coweight);
        assert_eq!(m3.free_h(), vec![(1, 1)]);
        let spec = ParamSpec::symbolic(1, 0, 1);
        let mult = Mult::<RatFunc>::from_vars(&spec).unwrap();
        let h = HTable::generic(&m3, &spec, &mult).unwrap();
        let h1 = RatFunc::var(&spec, Var::H(0)).unwrap();
        assert_eq!(h.vals[1][1], h1);
        assert_eq!(h.vals[1][2], mult.k[1].powi(-2).unwrap() * &h1.inv().unwrap());
        h.validate(&m3, &mult).unwrap();
        let mut bad = h.clone();
        bad.vals[1][2] = h1;
        assert_eq!(bad.validate(&m3, &mult).unwrap_err().name(), "InvalidHTable");

        let m2 = md(CartanType::A, 1, 2, 1, 1, Lattice::Coweight);
        let h = HTable::generic(&m2, &spec, &mult).unwrap();
        assert_eq!(h.vals[1][1], mult.kinv[1]);
    }

    #[test]
    fn n1_is_cherednik_representation() {
        for (ty, r) in [(CartanType::A, 1), (CartanType::A, 2)] {
            let m = md(ty, r, 1, 1, 1, Lattice::Coroot);
            let rep = rep_fp(m.clone(), 7);
            let zero = RVec::zero(m.base.dim);
            let ctx = Ctx::new(m.meta.clone(), rep.spec.clone(), rep.mult.clone(), zero, TorusChar::trivial(r)).unwrap();
            for y in box_points(&m, 2) {
                for j in 0..=r {
                    let a = act_t(&rep, j, 1, &QuasiPoly::x(&y)).unwrap();
                    assert_eq!(a, act_t(&ctx, j, 1, &QuasiPoly::x(&y)).unwrap());
                }
                assert!(rep.gamma(&y).unwrap().is_one());
            }
        }
    }

    #[test]
    fn truncated_sums_match_meta_nabla() {
        let m = md(CartanType::A, 2, 3, 1, 1, Lattice::Coweight);
        let rep = rep_fp(m.clone(), 3);
        let q_phi = HeckeRep::q_phi(&rep);
        for y in box_points(&m, 2) {
            for j in 0..=2 {
                let t = rep.t_mono(j, &y).unwrap();
                let mut rest = QuasiPoly::zero();
                let kk = rep.k_simple(j).clone() - rep.kinv_simple(j);
                rest.add_scaled(&nabla(&m.meta, &q_phi, j, &y), &kk);
                let diff = t.sub(&rest);
                assert_eq!(diff.len(), 1, "j={} y={}", j, y);
            }
        }
    }

    #[test]
    fn relations_hold() {
        for (ty, r, n) in [(CartanType::A, 1, 3), (CartanType::A, 2, 2), (CartanType::B, 2, 2)] {
            let ksh = if ty == CartanType::B { 2 } else { 1 };
            let m = md(ty, r, n, ksh, 1, Lattice::Coweight);
            let rep = rep_fp(m.clone(), 11);
            for y in box_points(&m, 1) {
                let f = QuasiPoly::x(&y);
                for j in 0..=r {
                    assert!(hecke_residual(&rep, j, &f).unwrap().is_zero());
                    for &mu in &[&m.meta.simple_co[0], &m.meta.coroots[m.meta.phi]] {
                        assert!(cross_residual(&rep, j, mu, &f).unwrap().is_zero(), "{:?} j={} y={}", ty, j, y);
                    }
                    for i in 0..j {
                        if let Some(b) = braid_residual(&rep, i, j, &f).unwrap() {
                            assert!(b.is_zero(), "{:?} braid {} {} at {}", ty, i, j, y);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn conjugation_and_metapoly() {
        let m = md(CartanType::A, 1, 3, 1, 1, Lattice::Coweight);
        let rep = rep_fp(m.clone(), 5);
        for y in box_points(&m, 3) {
            for j in 0..=1 {
                assert!(rep.conjugation_residual(j, &y).unwrap().is_zero(), "j={} y={}", j, y);
            }
        }
        for y in box_points(&m, 2) {
            let e = rep.metapoly(&y, Method::Intertwiner).unwrap();
            assert!(e.coeff(&y).is_one());
            for mu in [&m.meta.simple_co[0], &m.meta.coroots[m.meta.phi]] {
                assert!(rep.eigen_residual(&y, mu, &e).unwrap().is_zero(), "at {}", y);
            }
            let nf = aw::orbit_normal_form(&m.meta, &y);
            if nf.c == y {
                assert_eq!(e, QuasiPoly::x(&y));
            }
        }
    }

    #[test]
    fn n1_metapoly_is_macdonald() {
        let m = md(CartanType::A, 1, 1, 1, 1, Lattice::Coroot);
        let rep = rep_fp(m.clone(), 9);
        let zero = RVec::zero(m.base.dim);
        let ctx = Ctx::new(m.meta.clone(), rep.spec.clone(), rep.mult.clone(), zero, TorusChar::trivial(1)).unwrap();
        for y in box_points(&m, 3) {
            assert_eq!(rep.metapoly(&y, Method::Intertwiner).unwrap(), epoly(&ctx, &y, Method::Intertwiner).unwrap());
        }
    }

    #[test]
    fn whittaker_routes() {
        let m = md(CartanType::A, 1, 3, 1, 1, Lattice::Coweight);
        let a = Assignment { qroot: 2, vsh: 1234, vlg: 5678, z: vec![], h: vec![4321] };
        let sq = ParamSpec { d: m.default_d(), nz: 0, nh: 1, backend: Backend::PrimeQ(a.clone()) };
        let sp = ParamSpec { d: m.default_d(), nz: 0, nh: 1, backend: Backend::Prime(a) };
        let rq: MetaRep<QtFp> = MetaRep::generic(m.clone(), sq).unwrap();
        let rp: MetaRep<Fp> = MetaRep::generic(m.clone(), sp).unwrap();
        for y in box_points(&m, 3) {
            let lim = rq.metapoly(&y, Method::Intertwiner).unwrap().map_coeffs(|c| c.whittaker_value()).unwrap();
            let g = rp.wh_epoly(&y, WhRoute::Gamma).unwrap();
            assert_eq!(lim, g, "at {}", y);
            let (ym, _) = aw::antidominant(&m.meta, &y);
            if is_regular(&m.meta, &ym) || ym == y {
                assert_eq!(rp.wh_epoly(&y, WhRoute::Act).unwrap(), g, "at {}", y);
            }
        }
        let lam = m.base.fund_co[0].scale(rint(2));
        let ws = rp.iwahori(&lam).unwrap();
        assert_eq!(ws[0].1, QuasiPoly::x(&lam));
        for (v, w) in &ws {
            assert_eq!(*w, rp.iwahori_via_e(&v.v, &lam, WhRoute::Gamma).unwrap());
        }
        assert_eq!(rp.spherical(&lam).unwrap(), rp.spherical_via_minus(&lam, WhRoute::Gamma).unwrap());
    }
}
