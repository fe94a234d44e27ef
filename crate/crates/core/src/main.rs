//! Command-line front end: compute polynomials and run the verification suites.

use clap::{Args, Parser, Subcommand, ValueEnum};
use quasidaha::affine_weyl as aw;
use quasidaha::eigen::{mpoly, sym_pm, Eigen, Method};
use quasidaha::metaplectic::{Lattice, MetaDatum, MetaRep, WhRoute};
use quasidaha::quasi::{auto_char, lambda_candidates, needed_d, parse_point, Ctx, Mult, QuasiPoly, TorusChar};
use quasidaha::roots::RootDatum;
use quasidaha::scalars::{parse_scalar, Field, Fp, ParamSpec, RatFunc};
use quasidaha::vector::{fmt_rat, RVec};
use quasidaha::verify::{run_suite, Config, Status, Suite};
use quasidaha::whittaker::Whit;
use quasidaha::{Error, Result};
use rand::SeedableRng;
use serde_json::{json, Value};
use std::process::ExitCode;
use std::sync::Arc;

#[derive(Parser)]
#[command(name = "quasidaha", version, about = "Quasi-polynomial DAHA representations, their eigenfunctions and metaplectic polynomials")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Compute one polynomial and print it as JSON.
    Compute(ComputeArgs),
    /// Run verification suites and print one JSON line per case.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Object {
    Mpoly,
    Epoly,
    Ppoly,
    #[value(name = "sym+")]
    SymPlus,
    #[value(name = "sym-")]
    SymMinus,
    Whittaker,
    Metapoly,
    Metawhittaker,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum BackendArg {
    Symbolic,
    Prime,
}

#[derive(Args)]
struct ComputeArgs {
    /// Cartan type with rank, e.g. A2.
    #[arg(long = "type")]
    ty: String,
    #[arg(long, default_value_t = 1)]
    m_norm: i64,
    /// Base point in simple-coroot coordinates; defaults to 0.
    #[arg(long, allow_hyphen_values = true)]
    c: Option<String>,
    /// Values of t on the simple coroots, or `auto`.
    #[arg(long, default_value = "auto", allow_hyphen_values = true)]
    t: String,
    #[arg(long, value_enum)]
    object: Object,
    /// Degree in simple-coroot coordinates; defaults to c.
    #[arg(long, allow_hyphen_values = true)]
    y: Option<String>,
    /// Metaplectic datum `n,κ_sh,κ_lg`.
    #[arg(long)]
    meta: Option<String>,
    /// Lattice for the metaplectic objects: Q, P or Z.
    #[arg(long)]
    lattice: Option<String>,
    /// Variant: E, E+ or E- for whittaker; E, E-, Wv or W for metawhittaker.
    #[arg(long, default_value = "E")]
    kind: String,
    /// Reduced word of v ∈ W₀ for `--kind Wv`, e.g. 1,2.
    #[arg(long)]
    v: Option<String>,
    #[arg(long, value_enum, default_value_t = BackendArg::Prime)]
    backend: BackendArg,
    #[arg(long, default_value = "intertwiner")]
    method: String,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Override the q-root denominator D.
    #[arg(long)]
    d: Option<i64>,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, default_value = "all")]
    suite: String,
    #[arg(long, default_value = "A1,A2,B2")]
    types: String,
    #[arg(long, default_value_t = 20)]
    trials: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
}

fn coords(d: &RootDatum, y: &RVec) -> Value {
    json!(d.coroot_coords(y).into_iter().map(fmt_rat).collect::<Vec<_>>())
}

fn spec_json(spec: &ParamSpec) -> Value {
    let mut v = json!({ "d": spec.d, "nz": spec.nz, "nh": spec.nh });
    match spec.assignment() {
        None => v["backend"] = json!("symbolic"),
        Some(a) => {
            v["backend"] = json!("prime");
            v["assignment"] = json!({ "qroot": a.qroot, "vsh": a.vsh, "vlg": a.vlg, "z": a.z, "h": a.h });
        }
    }
    v
}

fn make_spec(backend: BackendArg, d: i64, nz: usize, nh: usize, seed: u64) -> ParamSpec {
    match backend {
        BackendArg::Symbolic => ParamSpec::symbolic(d, nz, nh),
        BackendArg::Prime => ParamSpec::prime(d, nz, nh, &mut rand_chacha::ChaCha8Rng::seed_from_u64(seed)),
    }
}

fn char_json<S: Field>(t: &TorusChar<S>) -> Value {
    json!(t.vals.iter().map(|x| x.to_string()).collect::<Vec<_>>())
}

fn compute(a: &ComputeArgs) -> Result<Value> {
    let datum = Arc::new(RootDatum::from_name(&a.ty, a.m_norm)?);
    match a.object {
        Object::Metapoly | Object::Metawhittaker => match a.backend {
            BackendArg::Symbolic => compute_meta::<RatFunc>(a, datum),
            BackendArg::Prime => compute_meta::<Fp>(a, datum),
        },
        Object::Whittaker => match a.backend {
            BackendArg::Symbolic => compute_whittaker::<RatFunc>(a, datum),
            BackendArg::Prime => compute_whittaker::<Fp>(a, datum),
        },
        _ => match a.backend {
            BackendArg::Symbolic => compute_ctx::<RatFunc>(a, datum),
            BackendArg::Prime => compute_ctx::<Fp>(a, datum),
        },
    }
}

fn point_or_zero(d: &RootDatum, s: &Option<String>) -> Result<RVec> {
    match s {
        Some(s) => parse_point(d, s),
        None => Ok(RVec::zero(d.dim)),
    }
}

fn compute_ctx<S: Field + Sync>(a: &ComputeArgs, datum: Arc<RootDatum>) -> Result<Value> {
    let d = &*datum;
    let c = point_or_zero(d, &a.c)?;
    if !d.in_closed_alcove(&c) {
        return Err(Error::NotInFundamentalAlcove(format!("c = {} in simple-coroot coordinates", a.c.as_deref().unwrap_or("0"))));
    }
    let y = match &a.y {
        Some(s) => parse_point(d, s)?,
        None => c.clone(),
    };
    let face = d.face_of(&c);
    let mut pts = vec![&c];
    let lam = lambda_candidates(d, &face, 1);
    pts.extend(lam.iter());
    let dd = a.d.unwrap_or_else(|| needed_d(d, &pts));
    let spec = make_spec(a.backend, dd, d.rank, 0, a.seed);
    let t: TorusChar<S> = if a.t == "auto" {
        auto_char(d, &spec, &face)?
    } else {
        let vals: Vec<S> = a.t.split(',').map(|x| parse_scalar(x.trim(), &spec)).collect::<Result<_>>()?;
        if vals.len() != d.rank {
            return Err(Error::Parse(format!("--t needs {} values", d.rank)));
        }
        TorusChar { vals }
    };
    let mult = Mult::from_vars(&spec)?;
    let ctx = Ctx::new(datum.clone(), spec.clone(), mult, c.clone(), t)?;
    let method: Method = a.method.parse()?;
    let eig = Eigen::new(&ctx);
    let poly: QuasiPoly<S> = match a.object {
        Object::Mpoly => mpoly(&ctx, &y)?,
        Object::Epoly => (*eig.e(&y, method)?).clone(),
        Object::Ppoly => (*eig.p(&y)?).clone(),
        Object::SymPlus => sym_pm(&ctx, 1, &*eig.e(&y, method)?)?,
        Object::SymMinus => sym_pm(&ctx, -1, &*eig.e(&y, method)?)?,
        _ => unreachable!(),
    };
    let flags = ctx.flags(3)?;
    let header = json!({
        "type": d.name,
        "m_norm": a.m_norm,
        "object": a.object.to_possible_value().expect("named").get_name(),
        "method": a.method,
        "seed": a.seed,
        "spec": spec_json(&spec),
        "c": coords(d, &c),
        "face": face,
        "t": char_json(&ctx.t),
        "y": coords(d, &y),
        "spectrum": char_json(&ctx.spectrum(&y)?),
        "flags": { "level_bound": flags.level_bound, "j_regular": flags.j_regular, "j_generic": flags.j_generic },
    });
    Ok(json!({ "header": header, "terms": poly.to_json(d) }))
}

fn compute_whittaker<S: Field + Sync>(a: &ComputeArgs, datum: Arc<RootDatum>) -> Result<Value> {
    let d = &*datum;
    let y = point_or_zero(d, &a.y)?;
    let spec = make_spec(a.backend, 1, 0, 0, a.seed);
    let w = Whit::new(datum.clone(), Mult::<S>::from_vars(&spec)?);
    let poly = match a.kind.as_str() {
        "E" => w.wh_epoly(&y)?,
        "E+" => w.wh_symm(&y, 1)?,
        "E-" => w.wh_symm(&y, -1)?,
        k => return Err(Error::Parse(format!("unknown whittaker kind {}", k))),
    };
    let header = json!({
        "type": d.name,
        "m_norm": a.m_norm,
        "object": "whittaker",
        "kind": a.kind,
        "seed": a.seed,
        "spec": spec_json(&spec),
        "y": coords(d, &y),
    });
    Ok(json!({ "header": header, "terms": poly.to_json(d) }))
}

fn compute_meta<S: Field + Sync>(a: &ComputeArgs, datum: Arc<RootDatum>) -> Result<Value> {
    let d = &*datum;
    let m = a.meta.as_deref().ok_or_else(|| Error::Parse("--meta n,κ_sh,κ_lg is required".into()))?;
    let nk: Vec<i64> = m
        .split(',')
        .map(|x| x.trim().parse().map_err(|_| Error::Parse(format!("bad --meta entry {}", x))))
        .collect::<Result<_>>()?;
    if nk.len() != 3 {
        return Err(Error::Parse("--meta needs n,κ_sh,κ_lg".into()));
    }
    let default = if a.object == Object::Metawhittaker { "P" } else { "Q" };
    let lattice: Lattice = a.lattice.as_deref().unwrap_or(default).parse()?;
    let md = Arc::new(MetaDatum::new(datum.clone(), nk[0], nk[1], nk[2], lattice)?);
    let y = point_or_zero(d, &a.y)?;
    let dd = a.d.unwrap_or_else(|| quasidaha::scalars::lcm_all([md.default_d(), needed_d(&md.meta, &[&y])]));
    let spec = make_spec(a.backend, dd, 0, md.free_h().len(), a.seed);
    let rep: MetaRep<S> = MetaRep::generic(md.clone(), spec.clone())?;
    let method: Method = a.method.parse()?;
    let poly = if a.object == Object::Metapoly {
        rep.metapoly(&y, method)?
    } else {
        match a.kind.as_str() {
            "E" => rep.wh_epoly(&y, WhRoute::Act).or_else(|_| rep.wh_epoly(&y, WhRoute::Gamma))?,
            "E-" => rep.wh_minus(&y, WhRoute::Gamma)?,
            "W" => rep.spherical(&y)?,
            "Wv" => {
                let word: Vec<usize> = match &a.v {
                    Some(s) if !s.is_empty() => s
                        .split(',')
                        .map(|x| x.trim().parse().map_err(|_| Error::Parse(format!("bad letter {}", x))))
                        .collect::<Result<_>>()?,
                    _ => vec![],
                };
                if word.iter().any(|&j| j == 0 || j > d.rank) {
                    return Err(Error::Parse("letters of v are simple indices 1..r".into()));
                }
                let v = aw::word_element(&md.meta, &word);
                rep.iwahori(&y)?
                    .into_iter()
                    .find(|(u, _)| *u == v)
                    .map(|(_, w)| w)
                    .ok_or_else(|| Error::Parse("v is not in W₀".into()))?
            }
            k => return Err(Error::Parse(format!("unknown metawhittaker kind {}", k))),
        }
    };
    let header = json!({
        "type": d.name,
        "m_norm": a.m_norm,
        "object": a.object.to_possible_value().expect("named").get_name(),
        "kind": a.kind,
        "seed": a.seed,
        "spec": spec_json(&spec),
        "meta": md.to_json(),
        "h": rep.h.to_json(&md),
        "y": coords(d, &y),
        "gamma": rep.gamma(&y)?.to_string(),
    });
    Ok(json!({ "header": header, "terms": poly.to_json(d) }))
}

fn verify(a: &VerifyArgs) -> Result<bool> {
    let suite: Suite = a.suite.parse()?;
    let cfg = Config { types: a.types.split(',').map(|s| s.trim().to_string()).collect(), trials: a.trials, seed: a.seed };
    let records = run_suite(suite, &cfg)?;
    let mut ok = true;
    for r in &records {
        println!("{}", r.to_json());
        ok &= r.status != Status::Fail;
    }
    Ok(ok)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let res = match &cli.cmd {
        Cmd::Compute(a) => compute(a).map(|v| {
            println!("{}", serde_json::to_string_pretty(&v).expect("JSON"));
            true
        }),
        Cmd::Verify(a) => verify(a),
    };
    match res {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("{}", e);
            ExitCode::from(2)
        }
    }
}
