//! Quasi-polynomials, torus characters, base points and representation contexts.

use crate::affine_weyl::{self as aw, AffElt, NormalForm};
use crate::error::{Error, Result};
use crate::roots::{chi_z, eta, AffineRoot, RootDatum};
use crate::scalars::{lcm_all, parse_scalar, Field, ParamSpec, Var};
use crate::vector::{fmt_rat, parse_rat, rat, rint, RMat, RVec, Rat};
use num_traits::{Signed, Zero};
use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};

/// Finite linear combination of exponentials `x^y`.
#[derive(Clone, Debug, PartialEq)]
pub struct QuasiPoly<S> {
    pub terms: BTreeMap<RVec, S>,
}

impl<S: Field> QuasiPoly<S> {
    pub fn zero() -> Self {
        QuasiPoly { terms: BTreeMap::new() }
    }

    pub fn monomial(y: RVec, c: S) -> Self {
        let mut p = QuasiPoly::zero();
        p.add_term(y, c);
        p
    }

    pub fn x(y: &RVec) -> Self {
        QuasiPoly::monomial(y.clone(), S::one())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, y: RVec, c: S) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&y) {
            Some(v) => {
                let s = v.clone() + &c;
                if s.is_zero() {
                    self.terms.remove(&y);
                } else {
                    *v = s;
                }
            }
            None => {
                self.terms.insert(y, c);
            }
        }
    }

    pub fn coeff(&self, y: &RVec) -> S {
        self.terms.get(y).cloned().unwrap_or_else(S::zero)
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut r = self.clone();
        for (y, c) in &o.terms {
            r.add_term(y.clone(), c.clone());
        }
        r
    }

    pub fn add_scaled(&mut self, o: &Self, s: &S) {
        if s.is_zero() {
            return;
        }
        for (y, c) in &o.terms {
            self.add_term(y.clone(), c.clone() * s);
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        let mut r = self.clone();
        r.add_scaled(o, &-S::one());
        r
    }

    pub fn scale(&self, s: &S) -> Self {
        if s.is_zero() {
            return QuasiPoly::zero();
        }
        QuasiPoly { terms: self.terms.iter().map(|(y, c)| (y.clone(), c.clone() * s)).collect() }
    }

    pub fn neg(&self) -> Self {
        QuasiPoly { terms: self.terms.iter().map(|(y, c)| (y.clone(), -c.clone())).collect() }
    }

    /// Multiplication by `x^μ`.
    pub fn shift(&self, mu: &RVec) -> Self {
        QuasiPoly { terms: self.terms.iter().map(|(y, c)| (y + mu, c.clone())).collect() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut r = QuasiPoly::zero();
        for (y, c) in &self.terms {
            for (z, e) in &o.terms {
                r.add_term(y + z, c.clone() * e);
            }
        }
        r
    }

    /// Exponent negation `x^y ↦ x^{-y}`.
    pub fn invert_exponents(&self) -> Self {
        QuasiPoly { terms: self.terms.iter().map(|(y, c)| (-y, c.clone())).collect() }
    }

    pub fn map_coeffs<T: Field, F: FnMut(&S) -> Result<T>>(&self, mut f: F) -> Result<QuasiPoly<T>> {
        let mut r = QuasiPoly::zero();
        for (y, c) in &self.terms {
            r.add_term(y.clone(), f(c)?);
        }
        Ok(r)
    }

    pub fn support(&self) -> Vec<RVec> {
        self.terms.keys().cloned().collect()
    }

    /// JSON terms `{"exp": [...], "coeff": "..."}` with exponents in simple-coroot
    /// coordinates, sorted by exponent.
    pub fn to_json(&self, d: &RootDatum) -> serde_json::Value {
        let mut rows: Vec<(Vec<Rat>, String)> =
            self.terms.iter().map(|(y, c)| (d.coroot_coords(y), c.to_string())).collect();
        rows.sort_by(|a, b| a.0.cmp(&b.0));
        serde_json::Value::Array(
            rows.into_iter()
                .map(|(e, c)| {
                    serde_json::json!({
                        "exp": e.iter().map(|x| fmt_rat(*x)).collect::<Vec<_>>(),
                        "coeff": c,
                    })
                })
                .collect(),
        )
    }

    pub fn from_json(d: &RootDatum, spec: &ParamSpec, v: &serde_json::Value) -> Result<Self> {
        let arr = v.as_array().ok_or_else(|| Error::Parse("expected a JSON array".into()))?;
        let mut p = QuasiPoly::zero();
        for t in arr {
            let exp = t["exp"].as_array().ok_or_else(|| Error::Parse("missing exp".into()))?;
            let coords: Vec<Rat> = exp
                .iter()
                .map(|x| x.as_str().and_then(parse_rat).ok_or_else(|| Error::Parse(format!("bad exponent {}", x))))
                .collect::<Result<_>>()?;
            if coords.len() != d.rank {
                return Err(Error::Parse("exponent has wrong length".into()));
            }
            let c = t["coeff"].as_str().ok_or_else(|| Error::Parse("missing coeff".into()))?;
            p.add_term(from_coroot_coords(d, &coords), parse_scalar(c, spec)?);
        }
        Ok(p)
    }
}

/// Point with the given simple-coroot coordinates.
pub fn from_coroot_coords(d: &RootDatum, n: &[Rat]) -> RVec {
    let mut v = RVec::zero(d.dim);
    for (i, &k) in n.iter().enumerate() {
        v = v.add_scaled(&d.simple_co[i], k);
    }
    v
}

/// A character of `Q∨`, stored by its values on the simple coroots.
#[derive(Clone, Debug, PartialEq)]
pub struct TorusChar<S> {
    pub vals: Vec<S>,
}

impl<S: Field> TorusChar<S> {
    pub fn trivial(rank: usize) -> Self {
        TorusChar { vals: vec![S::one(); rank] }
    }

    pub fn eval_coords(&self, n: &[i64]) -> Result<S> {
        let mut r = S::one();
        for (v, &k) in self.vals.iter().zip(n) {
            if k != 0 {
                r = r * &v.powi(k)?;
            }
        }
        Ok(r)
    }

    /// `t^μ` for `μ ∈ Q∨`.
    pub fn eval(&self, d: &RootDatum, mu: &RVec) -> Result<S> {
        let n = d
            .coroot_coords_int(mu)
            .ok_or_else(|| Error::DomainRestriction(format!("{} is not in the coroot lattice", mu)))?;
        self.eval_coords(&n)
    }

    /// `t^{μ + eK} = q^e t^μ`.
    pub fn eval_k(&self, d: &RootDatum, spec: &ParamSpec, mu: &RVec, e: Rat) -> Result<S> {
        Ok(self.eval(d, mu)? * &S::q_power(spec, e)?)
    }

    /// `t^{a∨}` for an affine root `a = (α,ℓ)`, i.e. `q_α^ℓ t^{α∨}`.
    pub fn eval_affine(&self, d: &RootDatum, spec: &ParamSpec, a: AffineRoot) -> Result<S> {
        self.eval_k(d, spec, &d.coroots[a.alpha], d.q_exp(a.alpha) * rint(a.level))
    }

    pub fn mul(&self, o: &Self) -> Self {
        TorusChar { vals: self.vals.iter().zip(&o.vals).map(|(a, b)| a.clone() * b).collect() }
    }

    pub fn inv(&self) -> Result<Self> {
        Ok(TorusChar { vals: self.vals.iter().map(|a| a.inv()).collect::<Result<_>>()? })
    }
}

/// `(wt)^μ = q^{−⟨ν′, v′μ⟩} t^{v′μ}` where `w⁻¹ = τ(ν′)v′`.
pub fn char_act<S: Field>(d: &RootDatum, spec: &ParamSpec, w: &AffElt, t: &TorusChar<S>) -> Result<TorusChar<S>> {
    let wi = w.inv();
    let mut vals = Vec::with_capacity(d.rank);
    for i in 0..d.rank {
        let m = wi.v.apply(&d.simple_co[i]);
        let e = -d.ip(&wi.mu, &m);
        vals.push(t.eval_k(d, spec, &m, e)?);
    }
    Ok(TorusChar { vals })
}

/// `q^λ` as a character: `(q^λ)^μ = q^{⟨λ,μ⟩}`.
pub fn q_char<S: Field>(d: &RootDatum, spec: &ParamSpec, lambda: &RVec) -> Result<TorusChar<S>> {
    Ok(TorusChar { vals: (0..d.rank).map(|i| S::q_power(spec, d.ip(lambda, &d.simple_co[i]))).collect::<Result<_>>()? })
}

/// Square roots of the multiplicities and the multiplicities themselves.
#[derive(Clone, Debug)]
pub struct Mult<S> {
    pub v: [S; 2],
    pub k: [S; 2],
    pub kinv: [S; 2],
}

impl<S: Field> Mult<S> {
    pub fn from_vars(spec: &ParamSpec) -> Result<Self> {
        Mult::new(S::var(spec, Var::Vsh)?, S::var(spec, Var::Vlg)?)
    }

    pub fn new(vsh: S, vlg: S) -> Result<Self> {
        let ksh = vsh.clone() * &vsh;
        let klg = vlg.clone() * &vlg;
        Ok(Mult { kinv: [ksh.inv()?, klg.inv()?], k: [ksh, klg], v: [vsh, vlg] })
    }

    pub fn class(d: &RootDatum, a: usize) -> usize {
        if d.is_long(a) {
            1
        } else {
            0
        }
    }
}

/// Everything that depends on the root datum and the multiplicities only.
pub trait KData<S: Field> {
    fn datum(&self) -> &RootDatum;
    fn mult(&self) -> &Mult<S>;

    fn k_root(&self, a: usize) -> &S {
        &self.mult().k[Mult::<S>::class(self.datum(), a)]
    }

    fn kinv_root(&self, a: usize) -> &S {
        &self.mult().kinv[Mult::<S>::class(self.datum(), a)]
    }

    fn v_root(&self, a: usize) -> &S {
        &self.mult().v[Mult::<S>::class(self.datum(), a)]
    }

    /// `k_j` for `0 ≤ j ≤ r`.
    fn k_simple(&self, j: usize) -> &S {
        let d = self.datum();
        if j == 0 {
            self.k_root(d.phi)
        } else {
            self.k_root(j - 1)
        }
    }

    fn kinv_simple(&self, j: usize) -> &S {
        let d = self.datum();
        if j == 0 {
            self.kinv_root(d.phi)
        } else {
            self.kinv_root(j - 1)
        }
    }

    /// `k_α^n` with `n ∈ ℤ`.
    fn k_pow(&self, a: usize, n: i64) -> S {
        let (b, e) = if n >= 0 { (self.k_root(a), n) } else { (self.kinv_root(a), -n) };
        b.powi(e).expect("nonnegative power")
    }

    /// `k(y) = Π_{α>0} k_α^{η(α(y))/2}`.
    fn k_of(&self, y: &RVec) -> S {
        let d = self.datum();
        let mut r = S::one();
        for a in 0..d.npos {
            let e = eta(d.pair(a, y));
            if e != 0 {
                r = r * &self.v_root(a).powi(e).expect("v is a unit");
            }
        }
        r
    }

    /// `κ_v(y) = Π_{α∈Π(v)} k_α^{−η(α(y))}`.
    fn kappa(&self, v: &RMat, y: &RVec) -> S {
        let d = self.datum();
        let mut r = S::one();
        for a in aw::finite_inversions(d, v) {
            let e = eta(d.pair(a, y));
            if e != 0 {
                r = r * &self.k_pow(a, -e);
            }
        }
        r
    }

    /// `k_w(y) = k(wy)/k(y)`.
    fn k_w(&self, w: &AffElt, y: &RVec) -> S {
        self.k_of(&w.act_point(y)) * &self.k_of(y).inv().expect("unit")
    }

    /// `𝔰_y` on the simple coroots: `Π_{α>0} k_α^{η(α(y))α(α_i∨)}`.
    fn frak_s(&self, y: &RVec) -> TorusChar<S> {
        let d = self.datum();
        let etas: Vec<i64> = (0..d.npos).map(|a| eta(d.pair(a, y))).collect();
        let vals = (0..d.rank)
            .map(|i| {
                let mut r = S::one();
                for a in 0..d.npos {
                    let p = d.pair(a, &d.simple_co[i]).to_integer();
                    let n = etas[a] * p;
                    if n != 0 {
                        r = r * &self.k_pow(a, n);
                    }
                }
                r
            })
            .collect();
        TorusChar { vals }
    }
}

/// Data attached to an orbit point.
#[derive(Clone, Debug)]
pub struct PointInfo<S> {
    pub nf: NormalForm,
    /// `𝔱_y = w_y 𝔱`.
    pub t_goth: TorusChar<S>,
    /// `𝔰_y`.
    pub s: TorusChar<S>,
    /// `t_y = 𝔰_y 𝔱_y`.
    pub t_rom: TorusChar<S>,
}

/// Genericity flags of a context.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Flags {
    pub level_bound: i64,
    pub j_regular: bool,
    pub j_generic: bool,
}

/// A validated triple (root datum, base point, character) fixing `π_{c,t}`.
pub struct Ctx<S: Field> {
    pub datum: Arc<RootDatum>,
    pub spec: ParamSpec,
    pub mult: Mult<S>,
    pub c: RVec,
    pub face: Vec<usize>,
    pub t: TorusChar<S>,
    /// `𝔰_J`.
    pub s_j: TorusChar<S>,
    cache: Mutex<HashMap<RVec, Arc<PointInfo<S>>>>,
}

impl<S: Field> KData<S> for Ctx<S> {
    fn datum(&self) -> &RootDatum {
        &self.datum
    }
    fn mult(&self) -> &Mult<S> {
        &self.mult
    }
}

impl<S: Field> Clone for Ctx<S> {
    fn clone(&self) -> Self {
        Ctx {
            datum: self.datum.clone(),
            spec: self.spec.clone(),
            mult: self.mult.clone(),
            c: self.c.clone(),
            face: self.face.clone(),
            t: self.t.clone(),
            s_j: self.s_j.clone(),
            cache: Mutex::new(HashMap::new()),
        }
    }
}

/// Base `D` large enough for a datum and a set of points whose pairings with the
/// coroots appear as q-exponents.
pub fn needed_d(d: &RootDatum, points: &[&RVec]) -> i64 {
    let mut ds = vec![d.q_denominator_base()];
    for p in points {
        for i in 0..d.rank {
            ds.push(*d.ip(p, &d.simple_co[i]).denom());
        }
    }
    lcm_all(ds)
}

/// Candidate points `λ ∈ C^J ∩ (1/2h)P∨`, in order of increasing size.
pub fn lambda_candidates(d: &RootDatum, face: &[usize], count: usize) -> Vec<RVec> {
    let h2 = 2 * d.coxeter as i64;
    let free: Vec<usize> = (1..=d.rank).filter(|i| !face.contains(i)).collect();
    let with0 = face.contains(&0);
    let mut out = Vec::new();
    let mut total = free.len() as i64;
    while out.len() < count && total <= 8 * h2 * free.len().max(1) as i64 {
        let mut comps = Vec::new();
        compositions(total, free.len(), &mut vec![], &mut comps);
        for b in comps {
            let mut lam = RVec::zero(d.dim);
            for (k, &i) in free.iter().enumerate() {
                lam = lam.add_scaled(&d.fund_co[i - 1], rat(b[k], h2));
            }
            let ph = d.pair(d.phi, &lam);
            let ok = if with0 { ph == rint(1) } else { ph < rint(1) };
            if ok && d.face_of(&lam) == face {
                out.push(lam);
                if out.len() == count {
                    break;
                }
            }
        }
        total += 1;
        if free.is_empty() {
            break;
        }
    }
    out
}

fn compositions(total: i64, parts: usize, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
    if parts == 0 {
        if total == 0 {
            out.push(cur.clone());
        }
        return;
    }
    if parts == 1 {
        if total >= 1 {
            cur.push(total);
            out.push(cur.clone());
            cur.pop();
        }
        return;
    }
    for first in 1..=total - (parts as i64 - 1) {
        cur.push(first);
        compositions(total - first, parts - 1, cur, out);
        cur.pop();
    }
}

/// Free character `t(z) = Π z_i^{ϖ_i}` on `J₀^co`, with `Π z_i^{m_i} = 1` solved by
/// eliminating one variable when `0 ∈ J`.
pub fn free_char<S: Field>(d: &RootDatum, spec: &ParamSpec, face: &[usize]) -> Result<TorusChar<S>> {
    let free: Vec<usize> = (1..=d.rank).filter(|i| !face.contains(i)).collect();
    let mut vals = vec![S::one(); d.rank];
    for &i in &free {
        vals[i - 1] = S::var(spec, Var::Z(i - 1))?;
    }
    if face.contains(&0) {
        let m = d.coroot_coords_int(&d.coroots[d.phi]).unwrap();
        match free.iter().find(|&&i| m[i - 1] == 1) {
            Some(&i0) => {
                let mut prod = S::one();
                for &i in &free {
                    if i != i0 {
                        prod = prod * &vals[i - 1].powi(-m[i - 1])?;
                    }
                }
                vals[i0 - 1] = prod;
            }
            None => {
                for &i in &free {
                    vals[i - 1] = S::one();
                }
            }
        }
    }
    Ok(TorusChar { vals })
}

/// The `--t auto` character: `q^λ t(z)` with `λ` the first candidate for the face.
pub fn auto_char<S: Field>(d: &RootDatum, spec: &ParamSpec, face: &[usize]) -> Result<TorusChar<S>> {
    let z = free_char::<S>(d, spec, face)?;
    if face.contains(&0) {
        let lam = lambda_candidates(d, face, 1)
            .pop()
            .ok_or_else(|| Error::NotInTJ("no rational point on the face".into()))?;
        Ok(q_char::<S>(d, spec, &lam)?.mul(&z))
    } else {
        Ok(z)
    }
}

impl<S: Field> Ctx<S> {
    /// Validate `c ∈ C̄₊` and `t ∈ T_J`.
    pub fn new(datum: Arc<RootDatum>, spec: ParamSpec, mult: Mult<S>, c: RVec, t: TorusChar<S>) -> Result<Ctx<S>> {
        let d = &*datum;
        if c.dim() != d.dim {
            return Err(Error::NotInFundamentalAlcove(format!("{} has the wrong dimension", c)));
        }
        if !d.in_closed_alcove(&c) {
            return Err(Error::NotInFundamentalAlcove(format!("{}", c)));
        }
        let face = d.face_of(&c);
        if face.len() == d.rank + 1 {
            return Err(Error::NotInFundamentalAlcove("empty alcove face".into()));
        }
        if t.vals.len() != d.rank {
            return Err(Error::NotInTJ("character has the wrong rank".into()));
        }
        for &j in &face {
            let ok = if j == 0 {
                t.eval(d, &d.coroots[d.phi])? == S::q_power(&spec, d.q_exp(d.phi))?
            } else {
                t.vals[j - 1].is_one()
            };
            if !ok {
                return Err(Error::NotInTJ(format!("condition at j={} fails", j)));
            }
        }
        let s_j = {
            struct K<'a, S: Field>(&'a RootDatum, &'a Mult<S>);
            impl<'a, S: Field> KData<S> for K<'a, S> {
                fn datum(&self) -> &RootDatum {
                    self.0
                }
                fn mult(&self) -> &Mult<S> {
                    self.1
                }
            }
            K(d, &mult).frak_s(&c)
        };
        Ok(Ctx { datum, spec, mult, c, face, t, s_j, cache: Mutex::new(HashMap::new()) })
    }

    pub fn d(&self) -> &RootDatum {
        &self.datum
    }

    pub fn q_pow(&self, e: Rat) -> S {
        S::q_power(&self.spec, e).expect("session denominator covers this exponent")
    }

    /// `q_φ`.
    pub fn q_phi(&self) -> S {
        self.q_pow(self.d().q_exp(self.d().phi))
    }

    /// `𝔰_J 𝔱`.
    pub fn base_char(&self) -> TorusChar<S> {
        self.s_j.mul(&self.t)
    }

    pub fn point(&self, y: &RVec) -> Result<Arc<PointInfo<S>>> {
        if let Some(p) = self.cache.lock().unwrap().get(y) {
            return Ok(p.clone());
        }
        let d = self.d();
        let nf = aw::orbit_normal_form(d, y);
        if nf.c != self.c {
            return Err(Error::NotInOrbit(format!("{} lies in the orbit of {}", y, nf.c)));
        }
        let t_goth = char_act(d, &self.spec, &nf.w, &self.t)?;
        let s = self.frak_s(y);
        let t_rom = s.mul(&t_goth);
        let info = Arc::new(PointInfo { nf, t_goth, s, t_rom });
        self.cache.lock().unwrap().insert(y.clone(), info.clone());
        Ok(info)
    }

    /// `t_y^{a∨}` (roman) or `𝔱_y^{a∨}` (gothic) for an affine root.
    pub fn ty_affine(&self, y: &RVec, a: AffineRoot, roman: bool) -> Result<S> {
        let p = self.point(y)?;
        let ch = if roman { &p.t_rom } else { &p.t_goth };
        ch.eval_affine(self.d(), &self.spec, a)
    }

    /// `t_y^{α_j∨}` for `0 ≤ j ≤ r`, roman.
    pub fn ty_simple(&self, y: &RVec, j: usize) -> Result<S> {
        self.ty_affine(y, self.d().affine_simple(j), true)
    }

    /// Spectral character `t_y` (roman), so `Y^μ E_y = t_y^{−μ} E_y`.
    pub fn spectrum(&self, y: &RVec) -> Result<TorusChar<S>> {
        Ok(self.point(y)?.t_rom.clone())
    }

    /// `(𝔰_J t)^{a∨}`.
    pub fn base_affine(&self, a: AffineRoot) -> Result<S> {
        self.base_char().eval_affine(self.d(), &self.spec, a)
    }

    fn affine_roots_up_to(&self, bound: i64, positive_only: bool) -> Vec<AffineRoot> {
        let d = self.d();
        let mut out = Vec::new();
        for level in -bound..=bound {
            for alpha in 0..d.roots.len() {
                let a = AffineRoot { alpha, level };
                if positive_only && !d.affine_is_positive(a) {
                    continue;
                }
                if d.eval_affine(a, &self.c).is_zero() {
                    continue;
                }
                out.push(a);
            }
        }
        out
    }

    /// J-regularity and J-genericity, scanned up to a level bound.
    pub fn flags(&self, bound: i64) -> Result<Flags> {
        let one = S::one();
        let mut reg = true;
        for a in self.affine_roots_up_to(bound, false) {
            if self.base_affine(a)? == one {
                reg = false;
                break;
            }
        }
        let mut gen = reg;
        if gen {
            for a in self.affine_roots_up_to(bound, true) {
                let k2 = self.kinv_root(a.alpha).clone() * self.kinv_root(a.alpha);
                if self.base_affine(a)? == k2 {
                    gen = false;
                    break;
                }
            }
        }
        Ok(Flags { level_bound: bound, j_regular: reg, j_generic: gen })
    }

    /// Pairwise distinctness of the spectra on a finite set of orbit points.
    pub fn spectrum_separates(&self, pts: &[RVec]) -> Result<bool> {
        let specs: Vec<TorusChar<S>> = pts.iter().map(|y| self.spectrum(y)).collect::<Result<_>>()?;
        for i in 0..specs.len() {
            for j in 0..i {
                if specs[i] == specs[j] {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// `χ_ℤ` of `α_j(y)`.
    pub fn chi_simple(&self, j: usize, y: &RVec) -> i64 {
        let d = self.d();
        chi_z(d.eval_affine(d.affine_simple(j), y))
    }
}

/// Convert simple-coroot coordinates given as text.
pub fn parse_point(d: &RootDatum, s: &str) -> Result<RVec> {
    let coords: Vec<Rat> = s
        .split(',')
        .map(|x| parse_rat(x.trim()).ok_or_else(|| Error::Parse(format!("bad rational {}", x))))
        .collect::<Result<_>>()?;
    if coords.len() != d.rank {
        return Err(Error::Parse(format!("expected {} coordinates", d.rank)));
    }
    Ok(from_coroot_coords(d, &coords))
}

/// Is `y` regular: `α(y) ≠ 0` for all roots.
pub fn is_regular(d: &RootDatum, y: &RVec) -> bool {
    (0..d.npos).all(|a| !d.pair(a, y).is_zero())
}

/// Is `y` in the closed antidominant chamber `Ē₋`.
pub fn is_antidominant(d: &RootDatum, y: &RVec) -> bool {
    (0..d.rank).all(|i| !d.pair(i, y).is_positive())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::roots::CartanType;
    use crate::scalars::{Fp, RatFunc};
    use rand::SeedableRng;

    fn a1_ctx(c: Rat, t: &str) -> Ctx<RatFunc> {
        let d = Arc::new(RootDatum::build(CartanType::A, 1, 1).unwrap());
        let c = d.simple_co[0].scale(c);
        let spec = ParamSpec::symbolic(needed_d(&d, &[&c]) * 4, 1, 0);
        let t = TorusChar { vals: vec![parse_scalar(t, &spec).unwrap()] };
        let m = Mult::from_vars(&spec).unwrap();
        Ctx::new(d, spec, m, c, t).unwrap()
    }

    #[test]
    fn base_points() {
        let ctx = a1_ctx(rat(1, 4), "z1");
        assert!(ctx.face.is_empty());
        assert!(ctx.s_j.vals[0].is_one());
        let ctx0 = a1_ctx(rint(0), "1");
        assert_eq!(ctx0.face, vec![1]);
        let k = ctx0.k_simple(1).clone();
        assert_eq!(ctx0.s_j.vals[0], k.inv().unwrap().powi(2).unwrap());
        let flags = ctx.flags(8).unwrap();
        assert!(flags.j_regular && flags.j_generic);
    }

    #[test]
    fn half_point_requires_q() {
        let ctx = a1_ctx(rat(1, 2), "q");
        assert_eq!(ctx.face, vec![0]);
        let d = ctx.datum.clone();
        let spec = ctx.spec.clone();
        let bad = TorusChar { vals: vec![RatFunc::one()] };
        assert!(matches!(
            Ctx::new(d, spec.clone(), ctx.mult.clone(), ctx.c.clone(), bad),
            Err(Error::NotInTJ(_))
        ));
    }

    #[test]
    fn spectrum_routes_agree() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
        for (t, r) in [(CartanType::A, 2), (CartanType::B, 2)] {
            let d = Arc::new(RootDatum::build(t, r, 1).unwrap());
            let c = d.fund_co[0].scale(rat(1, 3));
            let spec = ParamSpec::prime(needed_d(&d, &[&c]), r, 0, &mut rng);
            let m = Mult::<Fp>::from_vars(&spec).unwrap();
            let tc = auto_char::<Fp>(&d, &spec, &d.face_of(&c)).unwrap();
            let ctx = Ctx::new(d.clone(), spec.clone(), m, c.clone(), tc).unwrap();
            let y = aw::word_element(&d, &[0, 1, 2, 1]).act_point(&c);
            let p = ctx.point(&y).unwrap();
            let direct = char_act(&d, &spec, &p.nf.w, &ctx.base_char()).unwrap();
            assert_eq!(direct, p.t_rom);
            let mu = d.simple_co[1].clone();
            let shifted = ctx.point(&(&y + &mu)).unwrap();
            let qmu = q_char::<Fp>(&d, &spec, &mu).unwrap();
            assert_eq!(shifted.t_goth, qmu.mul(&p.t_goth));
        }
    }

    #[test]
    fn json_roundtrip() {
        let ctx = a1_ctx(rat(1, 4), "z1");
        let d = ctx.d();
        let mut p = QuasiPoly::<RatFunc>::x(&ctx.c);
        p.add_term(d.simple_co[0].scale(rat(-1, 4)), parse_scalar("q^(1/2) - vsh", &ctx.spec).unwrap());
        let j = p.to_json(d);
        assert_eq!(QuasiPoly::from_json(d, &ctx.spec, &j).unwrap(), p);
    }
}
