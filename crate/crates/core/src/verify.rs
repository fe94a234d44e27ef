//! Verification suites: operator identities, eigenfunction routes, duality,
//! symmetrisation, projections, Whittaker limits and the metaplectic checks, each run
//! as independent cases on a worker pool and reported as JSON lines.

use crate::affine_weyl as aw;
use crate::daha_rep::{act_t_word, act_y, braid_residual, cross_residual, hecke_residual, HeckeRep};
use crate::eigen::{
    check_coroots, eigen_residual, eval_products, face_target, hecke_eigen_residual, intertwiner_residual, minus_expansion,
    plus_expansion, project_face, pseudo_duality_residual, quadratic_intertwiner, sym_pm, y_triangular, Eigen, Method, Product,
};
use crate::error::{Error, Result};
use crate::metaplectic::{Lattice, MetaDatum, MetaRep, WhRoute};
use crate::quasi::{auto_char, free_char, is_antidominant, is_regular, lambda_candidates, needed_d, Ctx, KData, Mult, QuasiPoly, TorusChar};
use crate::roots::RootDatum;
use crate::scalars::{Assignment, Backend, Field, Fp, ParamSpec, QtFp, RatFunc};
use crate::vector::{rint, RVec};
use crate::whittaker::{k_zero_limit, limit_ctx, limit_of, weyl_character_parts, whit_for, xi, Whit};
use num_traits::Signed;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::{Arc, Mutex};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Relations,
    Eigen,
    Duality,
    Whittaker,
    Metaplectic,
    All,
}

impl std::str::FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "relations" => Ok(Suite::Relations),
            "eigen" => Ok(Suite::Eigen),
            "duality" => Ok(Suite::Duality),
            "whittaker" => Ok(Suite::Whittaker),
            "metaplectic" => Ok(Suite::Metaplectic),
            "all" => Ok(Suite::All),
            _ => Err(Error::Parse(format!("unknown suite {}", s))),
        }
    }
}

impl Suite {
    pub fn name(&self) -> &'static str {
        match self {
            Suite::Relations => "relations",
            Suite::Eigen => "eigen",
            Suite::Duality => "duality",
            Suite::Whittaker => "whittaker",
            Suite::Metaplectic => "metaplectic",
            Suite::All => "all",
        }
    }

    /// Numbered criteria covered by the suite.
    pub fn criteria(&self) -> Vec<usize> {
        match self {
            Suite::Relations => vec![1, 2],
            Suite::Eigen => vec![3, 4, 5],
            Suite::Duality => vec![6, 7, 8],
            Suite::Whittaker => vec![9, 12],
            Suite::Metaplectic => vec![10, 11, 12],
            Suite::All => (1..=12).collect(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

impl Status {
    pub fn as_str(&self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skipped => "SKIPPED",
        }
    }
}

#[derive(Clone, Debug)]
pub struct Record {
    pub suite: String,
    pub case: String,
    pub status: Status,
    pub witness: Option<String>,
}

impl Record {
    pub fn to_json(&self) -> serde_json::Value {
        let mut v = serde_json::json!({ "suite": self.suite, "case": self.case, "status": self.status.as_str() });
        if let Some(w) = &self.witness {
            v["witness"] = serde_json::Value::String(w.clone());
        }
        v
    }
}

/// Result of one check: `None` passes, `Some` carries a failure witness.
type Check = Box<dyn FnOnce() -> Result<Option<String>> + Send>;

pub struct Case {
    pub suite: &'static str,
    pub name: String,
    pub criterion: usize,
    check: Check,
}

impl Case {
    fn new<F: FnOnce() -> Result<Option<String>> + Send + 'static>(suite: &'static str, criterion: usize, name: String, f: F) -> Case {
        Case { suite, name, criterion, check: Box::new(f) }
    }
}

#[derive(Clone, Debug)]
pub struct Config {
    pub types: Vec<String>,
    pub trials: usize,
    pub seed: u64,
}

impl Default for Config {
    fn default() -> Self {
        Config { types: vec!["A1".into(), "A2".into(), "B2".into()], trials: 20, seed: 1 }
    }
}

/// Run cases on a pool of threads; records come back in case order.
pub fn run_cases(cases: Vec<Case>) -> Vec<Record> {
    let n = cases.len();
    let slots: Vec<Mutex<Option<Case>>> = cases.into_iter().map(|c| Mutex::new(Some(c))).collect();
    let out: Vec<Mutex<Option<Record>>> = (0..n).map(|_| Mutex::new(None)).collect();
    let next = AtomicUsize::new(0);
    let workers = std::thread::available_parallelism().map(|p| p.get()).unwrap_or(1).min(n.max(1));
    std::thread::scope(|s| {
        for _ in 0..workers {
            s.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::SeqCst);
                if i >= n {
                    break;
                }
                let case = slots[i].lock().unwrap().take().unwrap();
                let res = std::panic::catch_unwind(std::panic::AssertUnwindSafe(case.check))
                    .unwrap_or_else(|_| Err(Error::Parse("check panicked".into())));
                let (status, witness) = match res {
                    Ok(None) => (Status::Pass, None),
                    Ok(Some(w)) => (Status::Fail, Some(w)),
                    Err(Error::DomainRestriction(m)) if m.starts_with("skip: ") => (Status::Skipped, Some(m[6..].to_string())),
                    Err(e) => (Status::Fail, Some(e.to_string())),
                };
                *out[i].lock().unwrap() = Some(Record { suite: case.suite.into(), case: case.name, status, witness });
            });
        }
    });
    out.into_iter().map(|r| r.into_inner().unwrap().unwrap()).collect()
}

/// All cases of the listed criteria, in criterion order.
pub fn cases_for(criteria: &[usize], cfg: &Config) -> Result<Vec<Case>> {
    let mut types = Vec::new();
    for t in &cfg.types {
        types.push(Arc::new(RootDatum::from_name(t, 1)?));
    }
    let mut out = Vec::new();
    for &c in criteria {
        match c {
            1 => c1_relations(&types, cfg, &mut out),
            2 => c2_cyclic(&types, cfg, &mut out),
            3 => c3_triangular(&types, cfg, &mut out),
            4 => c4_routes(&types, cfg, &mut out),
            5 => c5_quadratic(&types, cfg, &mut out),
            6 => c6_duality(&types, cfg, &mut out),
            7 => c7_symmetrisation(&types, cfg, &mut out),
            8 => c8_projection(&types, cfg, &mut out),
            9 => c9_whittaker(&types, cfg, &mut out),
            10 => c10_degeneration(&types, cfg, &mut out),
            11 => c11_meta_relations(&types, cfg, &mut out),
            12 => c12_meta_whittaker(&types, cfg, &mut out),
            _ => return Err(Error::Parse(format!("no criterion {}", c))),
        }
    }
    Ok(out)
}

pub fn run_suite(suite: Suite, cfg: &Config) -> Result<Vec<Record>> {
    let cases = cases_for(&suite.criteria(), cfg)?;
    Ok(run_cases(cases))
}

// ---------------------------------------------------------------------------
// shared helpers

/// Two independent prime specialisations per check.
fn seeds(base: u64, salt: u64) -> [u64; 2] {
    let s = base.wrapping_mul(1_000_003).wrapping_add(salt.wrapping_mul(7919));
    [s, s.wrapping_add(0x9e37_79b9)]
}

fn salt(s: &str) -> u64 {
    s.bytes().fold(1469598103934665603u64, |h, b| (h ^ b as u64).wrapping_mul(1099511628211))
}

fn face_point(d: &RootDatum, face: &[usize]) -> Option<RVec> {
    lambda_candidates(d, face, 1).pop()
}

fn prime_ctx(datum: &Arc<RootDatum>, c: &RVec, seed: u64) -> Result<Ctx<Fp>> {
    let d = &**datum;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let spec = ParamSpec::prime(needed_d(d, &[c]), d.rank, 0, &mut rng);
    let t = auto_char(d, &spec, &d.face_of(c))?;
    let m = Mult::from_vars(&spec)?;
    Ctx::new(datum.clone(), spec, m, c.clone(), t)
}

fn symbolic_ctx(datum: &Arc<RootDatum>, c: &RVec) -> Result<Ctx<RatFunc>> {
    let d = &**datum;
    let spec = ParamSpec::symbolic(needed_d(d, &[c]), d.rank, 0);
    let t = auto_char(d, &spec, &d.face_of(c))?;
    let m = Mult::from_vars(&spec)?;
    Ctx::new(datum.clone(), spec, m, c.clone(), t)
}

/// The faces `∅, {1}, {0}, [1,r]∖{r}, [1,r]` without repeats.
fn faces(r: usize) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = Vec::new();
    for f in [vec![], vec![1], vec![0], (1..r).collect(), (1..=r).collect::<Vec<usize>>()] {
        if !out.contains(&f) {
            out.push(f);
        }
    }
    out
}

/// `x^{μ+vc}` for random `μ ∈ Q∨` with small coordinates and `v ∈ W₀`.
fn random_points(d: &RootDatum, c: &RVec, n: usize, rng: &mut ChaCha8Rng) -> Vec<RVec> {
    let group = aw::finite_weyl_group(d);
    (0..n)
        .map(|_| {
            let mu: Vec<i64> = (0..d.rank).map(|_| rng.gen_range(-2..=2)).collect();
            let v = &group[rng.gen_range(0..group.len())].0;
            &d.from_coroot_coords(&mu) + &v.v.apply(c)
        })
        .collect()
}

/// The largest length ball around `c` with at most `cap` points.
fn tested_points(d: &RootDatum, c: &RVec, cap: usize) -> Vec<RVec> {
    let mut best = vec![c.clone()];
    for n in 1..40 {
        let b = aw::orbit_ball(d, c, n);
        if b.len() > cap || b.len() == best.len() {
            break;
        }
        best = b;
    }
    best
}

fn nonzero<S: Field>(f: &QuasiPoly<S>, what: String) -> Option<String> {
    if f.is_zero() {
        None
    } else {
        Some(format!("{}: residual with {} terms", what, f.len()))
    }
}

fn differ<S: Field>(a: &QuasiPoly<S>, b: &QuasiPoly<S>, what: String) -> Option<String> {
    nonzero(&a.sub(b), what)
}

fn rank_le2(types: &[Arc<RootDatum>]) -> Vec<Arc<RootDatum>> {
    types.iter().filter(|d| d.rank <= 2).cloned().collect()
}

fn only_a(types: &[Arc<RootDatum>]) -> Vec<Arc<RootDatum>> {
    types.iter().filter(|d| d.name == "A1" || d.name == "A2").cloned().collect()
}

// ---------------------------------------------------------------------------
// criteria

fn relation_check<S: Field, R: HeckeRep<S>>(rep: &R, pts: &[RVec], mus: &[RVec], tag: &str) -> Result<Option<String>> {
    let r = rep.datum().rank;
    for y in pts {
        let f = QuasiPoly::x(y);
        for j in 0..=r {
            if let Some(w) = nonzero(&hecke_residual(rep, j, &f)?, format!("{} Hecke j={} y={}", tag, j, y)) {
                return Ok(Some(w));
            }
            for mu in mus {
                if let Some(w) = nonzero(&cross_residual(rep, j, mu, &f)?, format!("{} cross j={} μ={} y={}", tag, j, mu, y)) {
                    return Ok(Some(w));
                }
            }
            for i in 0..j {
                if let Some(b) = braid_residual(rep, i, j, &f)? {
                    if let Some(w) = nonzero(&b, format!("{} braid ({},{}) y={}", tag, i, j, y)) {
                        return Ok(Some(w));
                    }
                }
            }
        }
    }
    Ok(None)
}

fn c1_relations(types: &[Arc<RootDatum>], cfg: &Config, out: &mut Vec<Case>) {
    for datum in types {
        for face in faces(datum.rank) {
            let name = format!("hecke-braid-cross/{}/J={:?}", datum.name, face);
            let (datum, trials, seed) = (datum.clone(), cfg.trials.max(20), cfg.seed);
            let sl = salt(&name);
            out.push(Case::new("relations", 1, name, move || {
                let d = &*datum;
                let c = face_point(d, &face).ok_or_else(|| Error::NotInTJ(format!("no point on {:?}", face)))?;
                let mut rng = ChaCha8Rng::seed_from_u64(seed ^ sl);
                let pts = random_points(d, &c, trials, &mut rng);
                let mut mus = check_coroots(d);
                mus.extend(random_points(d, &RVec::zero(d.dim), 2, &mut rng));
                for s in seeds(seed, sl) {
                    let ctx = prime_ctx(&datum, &c, s)?;
                    if let Some(w) = relation_check(&ctx, &pts, &mus, "prime")? {
                        return Ok(Some(w));
                    }
                }
                if d.rank == 1 {
                    let ctx = symbolic_ctx(&datum, &c)?;
                    return relation_check(&ctx, &pts[..pts.len().min(8)], &mus, "symbolic");
                }
                Ok(None)
            }));
        }
    }
}

fn c2_cyclic(types: &[Arc<RootDatum>], cfg: &Config, out: &mut Vec<Case>) {
    for datum in types {
        for face in faces(datum.rank) {
            let name = format!("cyclic-vector/{}/J={:?}", datum.name, face);
            let (datum, trials, seed) = (datum.clone(), cfg.trials.max(50), cfg.seed);
            let sl = salt(&name);
            out.push(Case::new("relations", 2, name, move || {
                let d = &*datum;
                let c = face_point(d, &face).ok_or_else(|| Error::NotInTJ(format!("no point on {:?}", face)))?;
                let group = aw::finite_weyl_group(d);
                let mut rng = ChaCha8Rng::seed_from_u64(seed ^ sl);
                let zero = RVec::zero(d.dim);
                let triples: Vec<(RVec, usize, RVec)> = (0..trials)
                    .map(|_| {
                        let mu = random_points(d, &zero, 1, &mut rng).pop().unwrap();
                        let nu = random_points(d, &zero, 1, &mut rng).pop().unwrap();
                        (mu, rng.gen_range(0..group.len()), nu)
                    })
                    .collect();
                for s in seeds(seed, sl) {
                    let ctx = prime_ctx(&datum, &c, s)?;
                    let base = ctx.base_char();
                    for (mu, vi, nu) in &triples {
                        let (v, word) = &group[*vi];
                        let g = act_t_word(&ctx, word, &act_y(&ctx, nu, &QuasiPoly::x(&c))?)?.shift(mu);
                        let coef = ctx.kappa(&v.v, &c) * &base.eval(d, &-nu)?;
                        let want = QuasiPoly::monomial(mu + &v.v.apply(&c), coef);
                        if let Some(w) = differ(&g, &want, format!("μ={} v={:?} ν={}", mu, word, nu)) {
                            return Ok(Some(w));
                        }
                    }
                }
                Ok(None)
            }));
        }
    }
}

/// Base points for the eigenfunction criteria: one per face `∅`, `{1}` and `[1,r]`.
fn eigen_faces(d: &RootDatum) -> Vec<Vec<usize>> {
    let mut v: Vec<Vec<usize>> = vec![vec![], vec![1], (1..=d.rank).collect()];
    v.dedup();
    v
}

fn eigen_case<F>(types: &[Arc<RootDatum>], cfg: &Config, suite: &'static str, crit: usize, tag: &str, cap: usize, f: F, out: &mut Vec<Case>)
where
    F: Fn(&Ctx<Fp>, &[RVec]) -> Result<Option<String>> + Send + Sync + Clone + 'static,
{
    for datum in types {
        for face in eigen_faces(datum) {
            let name = format!("{}/{}/J={:?}", tag, datum.name, face);
            let (datum, seed, f) = (datum.clone(), cfg.seed, f.clone());
            let sl = salt(&name);
            out.push(Case::new(suite, crit, name, move || {
                let d = &*datum;
                let c = face_point(d, &face).ok_or_else(|| Error::NotInTJ(format!("no point on {:?}", face)))?;
                let pts = tested_points(d, &c, cap);
                for s in seeds(seed, sl) {
                    let ctx = prime_ctx(&datum, &c, s)?;
                    if let Some(w) = f(&ctx, &pts)? {
                        return Ok(Some(w));
                    }
                }
                Ok(None)
            }));
        }
    }
}

fn c3_triangular(types: &[Arc<RootDatum>], cfg: &Config, out: &mut Vec<Case>) {
    let f = |ctx: &Ctx<Fp>, pts: &[RVec]| -> Result<Option<String>> {
        for y in pts {
            for mu in check_coroots(ctx.d()) {
                if !y_triangular(ctx, y, &mu)? {
                    return Ok(Some(format!("Y^{} x^{} not triangular", mu, y)));
                }
            }
        }
        Ok(None)
    };
    eigen_case(types, cfg, "eigen", 3, "y-triangular", 40, f, out);
}

fn c4_routes(types: &[Arc<RootDatum>], cfg: &Config, out: &mut Vec<Case>) {
    let f = |ctx: &Ctx<Fp>, pts: &[RVec]| -> Result<Option<String>> {
        let eig = Eigen::new(ctx);
        for y in pts {
            let a = eig.e(y, Method::Intertwiner)?;
            let b = eig.e(y, Method::Solve)?;
            if let Some(w) = differ(&a, &b, format!("routes at {}", y)) {
                return Ok(Some(w));
            }
            for mu in check_coroots(ctx.d()) {
                if let Some(w) = nonzero(&eigen_residual(ctx, y, &mu, &a)?, format!("Y^{} at {}", mu, y)) {
                    return Ok(Some(w));
                }
            }
        }
        Ok(None)
    };
    eigen_case(types, cfg, "eigen", 4, "routes", 40, f, out);
    for datum in types.iter().filter(|d| d.rank == 1) {
        let name = format!("routes-symbolic/{}", datum.name);
        let datum = datum.clone();
        out.push(Case::new("eigen", 4, name, move || {
            let d = &*datum;
            let c = face_point(d, &[]).unwrap();
            let ctx = symbolic_ctx(&datum, &c)?;
            let eig = Eigen::new(&ctx);
            for y in tested_points(d, &c, 6) {
                let a = eig.e(&y, Method::Intertwiner)?;
                if let Some(w) = differ(&a, &*eig.e(&y, Method::Solve)?, format!("routes at {}", y)) {
                    return Ok(Some(w));
                }
            }
            Ok(None)
        }));
    }
}

fn c5_quadratic(types: &[Arc<RootDatum>], cfg: &Config, out: &mut Vec<Case>) {
    let f = |ctx: &Ctx<Fp>, _: &[RVec]| -> Result<Option<String>> {
        let d = ctx.d();
        let mut pts = aw::orbit_ball(d, &ctx.c, 8);
        pts.truncate(60);
        for y in pts {
            let w = ctx.point(&y)?.nf.w.clone();
            let lhs = quadratic_intertwiner(ctx, &y)?;
            let want = QuasiPoly::monomial(ctx.c.clone(), eval_products(ctx, &w, Product::N)?);
            if let Some(wit) = differ(&lhs, &want, format!("w_y for y={}", y)) {
                return Ok(Some(wit));
            }
        }
        Ok(None)
    };
    eigen_case(types, cfg, "eigen", 5, "quadratic-intertwiner", 1, f, out);
}

fn c6_duality(types: &[Arc<RootDatum>], cfg: &Config, out: &mut Vec<Case>) {
    let f = |ctx: &Ctx<Fp>, pts: &[RVec]| -> Result<Option<String>> {
        let eig = Eigen::new(ctx);
        for y in pts {
            for j in 0..=ctx.d().rank {
                if let Some(r) = pseudo_duality_residual(&eig, y, j)? {
                    if let Some(w) = nonzero(&r, format!("δ(T_{}) P at {}", j, y)) {
                        return Ok(Some(w));
                    }
                }
                if let Some(w) = nonzero(&intertwiner_residual(&eig, y, j)?, format!("S_{} P at {}", j, y)) {
                    return Ok(Some(w));
                }
                if let Some(r) = hecke_eigen_residual(&eig, y, j, Method::Intertwiner)? {
                    if let Some(w) = nonzero(&r, format!("δ(T_{}) E at {}", j, y)) {
                        return Ok(Some(w));
                    }
                }
            }
        }
        Ok(None)
    };
    eigen_case(types, cfg, "duality", 6, "pseudo-duality", 30, f, out);
}

fn c7_symmetrisation(types: &[Arc<RootDatum>], cfg: &Config, out: &mut Vec<Case>) {
    let f = |ctx: &Ctx<Fp>, pts: &[RVec]| -> Result<Option<String>> {
        let d = ctx.d();
        let eig = Eigen::new(ctx);
        for y in pts {
            let p = sym_pm(ctx, 1, &*eig.p(y)?)?;
            for i in 0..d.rank {
                let sy = d.reflect(i, y);
                let ps = sym_pm(ctx, 1, &*eig.p(&sy)?)?;
                if let Some(w) = differ(&ps, &p, format!("P+ at s_{} {} vs {}", i + 1, y, y)) {
                    return Ok(Some(w));
                }
            }
            let e = eig.e(y, Method::Intertwiner)?;
            let em = sym_pm(ctx, -1, &e)?;
            if !is_regular(d, y) {
                if let Some(w) = nonzero(&em, format!("E− at non-regular {}", y)) {
                    return Ok(Some(w));
                }
            }
            if is_antidominant(d, y) {
                let ep = sym_pm(ctx, 1, &e)?;
                if let Some(w) = differ(&ep, &plus_expansion(&eig, y, Method::Intertwiner)?, format!("E+ expansion at {}", y)) {
                    return Ok(Some(w));
                }
                if is_regular(d, y) {
                    if let Some(w) = differ(&em, &minus_expansion(&eig, y, Method::Intertwiner)?, format!("E− expansion at {}", y)) {
                        return Ok(Some(w));
                    }
                }
            }
        }
        Ok(None)
    };
    eigen_case(&rank_le2(types), cfg, "duality", 7, "symmetrisation", 25, f, out);
}

fn c8_projection(types: &[Arc<RootDatum>], cfg: &Config, out: &mut Vec<Case>) {
    for datum in only_a(types) {
        let targets: Vec<Vec<usize>> = if datum.rank == 1 { vec![vec![1]] } else { vec![vec![1], (1..=datum.rank).collect()] };
        for jt in targets {
            let name = format!("projection/{}/J=[]->{:?}", datum.name, jt);
            let (datum, seed) = (datum.clone(), cfg.seed);
            let sl = salt(&name);
            out.push(Case::new("duality", 8, name, move || {
                let d = &*datum;
                let c = face_point(d, &[]).unwrap();
                let c2 = face_point(d, &jt).unwrap();
                for s in seeds(seed, sl) {
                    let mut rng = ChaCha8Rng::seed_from_u64(s);
                    let spec = ParamSpec::prime(needed_d(d, &[&c, &c2]), d.rank, 0, &mut rng);
                    let m: Mult<Fp> = Mult::from_vars(&spec)?;
                    let t2 = free_char::<Fp>(d, &spec, &jt)?;
                    let probe = Ctx::new(datum.clone(), spec.clone(), m.clone(), c2.clone(), t2.clone())?;
                    let t = probe.frak_s(&c).inv()?.mul(&probe.frak_s(&c2)).mul(&t2);
                    let src = Ctx::new(datum.clone(), spec, m, c.clone(), t)?;
                    let tgt = face_target(&src, &c2)?;
                    if tgt.t != t2 {
                        return Ok(Some("target character differs from t′".into()));
                    }
                    let es = Eigen::new(&src);
                    let et = Eigen::new(&tgt);
                    for y in tested_points(d, &c, 30) {
                        let w = src.point(&y)?.nf.w.clone();
                        let lhs = project_face(&src, &tgt, &es.e(&y, Method::Intertwiner)?.scale(&src.k_w(&w, &c)))?;
                        let want = if aw::is_min_coset_rep(d, &w, &jt) {
                            et.e(&w.act_point(&c2), Method::Intertwiner)?.scale(&tgt.k_w(&w, &c2))
                        } else {
                            QuasiPoly::zero()
                        };
                        if let Some(wit) = differ(&lhs, &want, format!("pr E at {}", y)) {
                            return Ok(Some(wit));
                        }
                    }
                }
                Ok(None)
            }));
        }
    }
}

fn c9_whittaker(types: &[Arc<RootDatum>], cfg: &Config, out: &mut Vec<Case>) {
    for datum in only_a(types) {
        let mut fs: Vec<Vec<usize>> = vec![vec![]];
        if datum.rank >= 2 {
            fs.push(vec![1]);
        }
        for face in fs {
            let name = format!("dual-route/{}/J={:?}", datum.name, face);
            let (datum, seed) = (datum.clone(), cfg.seed);
            let sl = salt(&name);
            out.push(Case::new("whittaker", 9, name, move || {
                let d = &*datum;
                let lams = lambda_candidates(d, &face, 2);
                if lams.len() < 2 {
                    return Err(Error::DomainRestriction(format!("skip: one λ_J on {:?}", face)));
                }
                let c = lams[0].clone();
                let mut rng = ChaCha8Rng::seed_from_u64(seed ^ sl);
                let mut draw = || rng.gen_range(3..1_000_000u64);
                let (vsh, vlg) = (draw(), draw());
                let zs: Vec<Vec<u64>> = (0..2).map(|_| (0..d.rank).map(|_| draw()).collect()).collect();
                let pts = tested_points(d, &c, 20);
                let mut reference: Option<(Whit<Fp>, Vec<QuasiPoly<Fp>>)> = None;
                for lam in &lams {
                    for z in &zs {
                        let ctx = limit_ctx(datum.clone(), &c, lam, vsh, vlg, z)?;
                        let eig = Eigen::new(&ctx);
                        let lim: Vec<QuasiPoly<Fp>> = pts.iter().map(|y| limit_of(&*eig.e(y, Method::Intertwiner)?)).collect::<Result<_>>()?;
                        match &reference {
                            None => {
                                let w = whit_for(&ctx)?;
                                for (y, l) in pts.iter().zip(&lim) {
                                    if let Some(wit) = differ(l, &w.wh_epoly(y)?, format!("limit vs ◀ at {}", y)) {
                                        return Ok(Some(wit));
                                    }
                                }
                                reference = Some((w, lim));
                            }
                            Some((_, r)) => {
                                for ((y, l), e) in pts.iter().zip(&lim).zip(r) {
                                    if let Some(wit) = differ(l, e, format!("λ={} z={:?} at {}", lam, z, y)) {
                                        return Ok(Some(wit));
                                    }
                                }
                            }
                        }
                    }
                }
                Ok(None)
            }));
        }
    }
}

fn meta_rep(md: Arc<MetaDatum>, seed: u64) -> Result<MetaRep<Fp>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let spec = ParamSpec::prime(md.default_d(), 0, md.free_h().len(), &mut rng);
    MetaRep::generic(md, spec)
}

fn lattice_box(md: &MetaDatum, radius: i64, cap: usize) -> Vec<RVec> {
    let d = &*md.base;
    let basis = if md.lattice == Lattice::Coroot { &d.simple_co } else { &d.fund_co };
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
    pts.sort_by_key(|p| d.coroot_coords(p).iter().map(|x| x.abs()).sum::<crate::vector::Rat>());
    pts.truncate(cap);
    pts
}

fn c10_degeneration(types: &[Arc<RootDatum>], cfg: &Config, out: &mut Vec<Case>) {
    for datum in only_a(types) {
        let name = format!("n=1/{}", datum.name);
        let (datum, seed) = (datum.clone(), cfg.seed);
        let sl = salt(&name);
        out.push(Case::new("metaplectic", 10, name, move || {
            let md = Arc::new(MetaDatum::new(datum.clone(), 1, 1, 1, Lattice::Coroot)?);
            let radius = if datum.rank == 1 { 7 } else { 2 };
            let pts = lattice_box(&md, radius, 30);
            for s in seeds(seed, sl) {
                let rep = meta_rep(md.clone(), s)?;
                let zero = RVec::zero(datum.dim);
                let ctx = Ctx::new(md.meta.clone(), rep.spec.clone(), rep.mult.clone(), zero, TorusChar::trivial(datum.rank))?;
                let eig = Eigen::new(&ctx);
                for y in &pts {
                    let m = rep.metapoly(y, Method::Intertwiner)?;
                    if let Some(w) = differ(&m, &*eig.e(y, Method::Solve)?, format!("E^m vs E at {}", y)) {
                        return Ok(Some(w));
                    }
                }
            }
            Ok(None)
        }));
    }
}

/// The metaplectic data of the relation and Whittaker criteria for one base type.
fn meta_data(d: &RootDatum) -> Vec<(i64, i64, i64)> {
    match d.name.as_str() {
        "A1" => vec![(2, 1, 1), (3, 1, 1)],
        "A2" => vec![(2, 1, 1)],
        "B2" => vec![(2, 2, 1)],
        _ => vec![],
    }
}

fn c11_meta_relations(types: &[Arc<RootDatum>], cfg: &Config, out: &mut Vec<Case>) {
    for datum in types {
        for (n, ksh, klg) in meta_data(datum) {
            let name = format!("relations-conjugation/{}/n={},κ=({},{})", datum.name, n, ksh, klg);
            let (datum, seed, trials) = (datum.clone(), cfg.seed, cfg.trials.max(20));
            let sl = salt(&name);
            out.push(Case::new("metaplectic", 11, name, move || {
                let md = Arc::new(MetaDatum::new(datum.clone(), n, ksh, klg, Lattice::Coweight)?);
                let mut rng = ChaCha8Rng::seed_from_u64(seed ^ sl);
                let zero = RVec::zero(datum.dim);
                let mut pts = lattice_box(&md, if datum.rank == 1 { 3 * trials as i64 } else { 4 }, 400);
                let mut picked = Vec::new();
                for _ in 0..trials.min(pts.len()) {
                    picked.push(pts.swap_remove(rng.gen_range(0..pts.len())));
                }
                let mut mus = check_coroots(&md.meta);
                mus.extend(random_points(&md.meta, &zero, 1, &mut rng));
                let box_pts = lattice_box(&md, 2, 30);
                for s in seeds(seed, sl) {
                    let rep = meta_rep(md.clone(), s)?;
                    if let Some(w) = relation_check(&rep, &picked, &mus, "metaplectic")? {
                        return Ok(Some(w));
                    }
                    for y in &box_pts {
                        for j in 0..=datum.rank {
                            if let Some(w) = nonzero(&rep.conjugation_residual(j, y)?, format!("Γ conjugation T_{} at {}", j, y)) {
                                return Ok(Some(w));
                            }
                        }
                    }
                }
                Ok(None)
            }));
        }
    }
}

fn c12_meta_whittaker(types: &[Arc<RootDatum>], cfg: &Config, out: &mut Vec<Case>) {
    for datum in rank_le2(types) {
        for (n, ksh, klg) in meta_data(&datum) {
            let name = format!("spherical/{}/n={},κ=({},{})", datum.name, n, ksh, klg);
            let (datum2, seed) = (datum.clone(), cfg.seed);
            let sl = salt(&name);
            out.push(Case::new("metaplectic", 12, name, move || {
                let md = Arc::new(MetaDatum::new(datum2.clone(), n, ksh, klg, Lattice::Coweight)?);
                for s in seeds(seed, sl) {
                    let rep = meta_rep(md.clone(), s)?;
                    let mut lams = vec![RVec::zero(datum2.dim)];
                    lams.extend(datum2.fund_co.iter().cloned());
                    for lam in &lams {
                        let ws = rep.iwahori(lam)?;
                        if let Some(w) = differ(&ws[0].1, &QuasiPoly::x(lam), format!("W_e at {}", lam)) {
                            return Ok(Some(w));
                        }
                        for (v, w) in &ws {
                            let alt = rep.iwahori_via_e(&v.v, lam, WhRoute::Gamma)?;
                            if let Some(wit) = differ(w, &alt, format!("W_v via Ē at {}", lam)) {
                                return Ok(Some(wit));
                            }
                        }
                        let sum = rep.spherical(lam)?;
                        let alt = rep.spherical_via_minus(lam, WhRoute::Gamma)?;
                        if let Some(w) = differ(&sum, &alt, format!("W_λ at {}", lam)) {
                            return Ok(Some(w));
                        }
                    }
                }
                Ok(None)
            }));
            let name = format!("whittaker-limit/{}/n={},κ=({},{})", datum.name, n, ksh, klg);
            let (datum2, seed) = (datum.clone(), cfg.seed);
            let sl = salt(&name);
            out.push(Case::new("metaplectic", 12, name, move || {
                let md = Arc::new(MetaDatum::new(datum2.clone(), n, ksh, klg, Lattice::Coweight)?);
                let mut rng = ChaCha8Rng::seed_from_u64(seed ^ sl);
                let nh = md.free_h().len();
                let a = Assignment {
                    qroot: 2,
                    vsh: rng.gen_range(3..1_000_000),
                    vlg: rng.gen_range(3..1_000_000),
                    z: vec![],
                    h: (0..nh).map(|_| rng.gen_range(3..1_000_000)).collect(),
                };
                let sq = ParamSpec { d: md.default_d(), nz: 0, nh, backend: Backend::PrimeQ(a.clone()) };
                let sp = ParamSpec { d: md.default_d(), nz: 0, nh, backend: Backend::Prime(a) };
                let rq: MetaRep<QtFp> = MetaRep::generic(md.clone(), sq)?;
                let rp: MetaRep<Fp> = MetaRep::generic(md.clone(), sp)?;
                let cap = if datum2.rank == 1 { 9 } else { 12 };
                for y in lattice_box(&md, 2, cap) {
                    let lim = limit_of(&rq.metapoly(&y, Method::Intertwiner)?)?;
                    let g = rp.wh_epoly(&y, WhRoute::Gamma)?;
                    if let Some(w) = differ(&lim, &g, format!("limit vs Γ route at {}", y)) {
                        return Ok(Some(w));
                    }
                    let (ym, _) = aw::antidominant(&md.meta, &y);
                    if ym == y || is_regular(&md.meta, &ym) {
                        if let Some(w) = differ(&rp.wh_epoly(&y, WhRoute::Act)?, &g, format!("◀^m route at {}", y)) {
                            return Ok(Some(w));
                        }
                    }
                }
                Ok(None)
            }));
        }
        let name = format!("weyl-character-k0/{}", datum.name);
        let datum2 = datum.clone();
        out.push(Case::new("whittaker", 12, name, move || {
            let d = &*datum2;
            let spec = ParamSpec::symbolic(1, 0, 0);
            let w = Whit::new(datum2.clone(), Mult::<RatFunc>::from_vars(&spec)?);
            let mut ys = Vec::new();
            for face in [vec![], vec![1], (1..=d.rank).collect::<Vec<usize>>()] {
                if let Some(c) = face_point(d, &face) {
                    let y = aw::antidominant(d, &c).0;
                    ys.push(y.clone());
                    ys.push(aw::antidominant(d, &(&y - &d.rho_co())).0);
                }
            }
            ys.dedup();
            for y in ys {
                let ep = k_zero_limit(&w.wh_symm(&y, 1)?)?;
                let x = xi(d, &y);
                let (num, den) = weyl_character_parts::<RatFunc>(d, &x, &(&y - &x));
                if let Some(wit) = differ(&ep.mul(&den), &num, format!("k→0 at {}", y)) {
                    return Ok(Some(wit));
                }
            }
            Ok(None)
        }));
    }
}
