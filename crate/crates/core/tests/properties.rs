use num_traits::Signed;
use proptest::prelude::*;
use quasidaha::affine_weyl as aw;
use quasidaha::daha_rep::{act_t, act_y, act_y_split, braid_residual, cross_residual, dominant_split, hecke_residual};
use quasidaha::metaplectic::{HTable, Lattice, MetaDatum, MetaRep};
use quasidaha::quasi::{auto_char, lambda_candidates, needed_d, Ctx, Mult, QuasiPoly};
use quasidaha::roots::RootDatum;
use quasidaha::eigen::{Eigen, Method};
use quasidaha::scalars::{Backend, Field, Fp, ParamSpec, RatFunc, Var};
use quasidaha::vector::{rat, RVec};
use quasidaha::whittaker::Whit;
use rand::SeedableRng;
use std::sync::Arc;

const TYPES: [&str; 4] = ["A1", "A2", "B2", "G2"];

fn datum(i: usize) -> Arc<RootDatum> {
    Arc::new(RootDatum::from_name(TYPES[i], 1).unwrap())
}

fn ctx_on_face(d: &Arc<RootDatum>, face: &[usize], seed: u64) -> Ctx<Fp> {
    let c = lambda_candidates(d, face, 1).pop().unwrap();
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let spec = ParamSpec::prime(needed_d(d, &[&c]), d.rank, 0, &mut rng);
    let t = auto_char(d, &spec, face).unwrap();
    Ctx::new(d.clone(), spec.clone(), Mult::from_vars(&spec).unwrap(), c, t).unwrap()
}

fn orbit_point(d: &RootDatum, c: &RVec, mu: &[i64], v: usize) -> RVec {
    let g = aw::finite_weyl_group(d);
    &d.from_coroot_coords(&mu[..d.rank]) + &g[v % g.len()].0.v.apply(c)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn fp_field_axioms(a in 1u64..u64::MAX, b in 0u64..u64::MAX, c in 0u64..u64::MAX) {
        let (a, b, c) = (Fp::new(a), Fp::new(b), Fp::new(c));
        prop_assert_eq!(a * &(b + &c), a * &b + &(a * &c));
        if !a.is_zero() {
            prop_assert!((a * &a.inv().unwrap()).is_one());
        }
        prop_assert!((b - &b).is_zero());
    }

    #[test]
    fn reflections_are_involutions(t in 0usize..4, mu in proptest::collection::vec(-5i64..=5, 2), j in 0usize..3) {
        let d = datum(t);
        let y = d.from_coroot_coords(&mu[..d.rank]).scale(rat(1, 3));
        let j = j % (d.rank + 1);
        prop_assert_eq!(d.s_affine(j, &d.s_affine(j, &y)), y);
    }

    #[test]
    fn normal_form_maps_base_point(t in 0usize..4, mu in proptest::collection::vec(-3i64..=3, 2), v in 0usize..12, f in 0usize..3) {
        let d = datum(t);
        let faces: [Vec<usize>; 3] = [vec![], vec![1], (1..=d.rank).collect()];
        let c = lambda_candidates(&d, &faces[f], 1).pop().unwrap();
        let y = orbit_point(&d, &c, &mu, v);
        let nf = aw::orbit_normal_form(&d, &y);
        prop_assert_eq!(&nf.c, &c);
        prop_assert_eq!(nf.w.act_point(&nf.c), y.clone());
        prop_assert_eq!(nf.word.len(), aw::length(&d, &nf.w));
        let lower = aw::lower_set(&d, &y);
        prop_assert!(lower.contains(&y) && lower.contains(&c));
    }

    #[test]
    fn hecke_braid_cross_on_monomials(t in 0usize..3, f in 0usize..3, mu in proptest::collection::vec(-2i64..=2, 2), v in 0usize..8, seed in 0u64..1000) {
        let d = datum(t);
        let faces: [Vec<usize>; 3] = [vec![], vec![0], (1..=d.rank).collect()];
        let ctx = ctx_on_face(&d, &faces[f], seed);
        let y = orbit_point(&d, &ctx.c, &mu, v);
        let x = QuasiPoly::x(&y);
        for j in 0..=d.rank {
            prop_assert!(hecke_residual(&ctx, j, &x).unwrap().is_zero());
            prop_assert!(cross_residual(&ctx, j, &d.simple_co[0], &x).unwrap().is_zero());
            for i in 0..j {
                if let Some(b) = braid_residual(&ctx, i, j, &x).unwrap() {
                    prop_assert!(b.is_zero());
                }
            }
        }
    }

    #[test]
    fn y_action_is_independent_of_decomposition(t in 0usize..3, mu in proptest::collection::vec(-2i64..=2, 2), k in 1i64..3, v in 0usize..8, seed in 0u64..1000) {
        let d = datum(t);
        let ctx = ctx_on_face(&d, &[], seed);
        let x = QuasiPoly::x(&orbit_point(&d, &ctx.c, &[1, 0], v));
        let mu = d.from_coroot_coords(&mu[..d.rank]);
        let (plus, minus) = dominant_split(&d, &mu);
        prop_assert_eq!(&plus - &minus, mu.clone());
        prop_assert!((0..d.rank).all(|i| !d.pair(i, &plus).is_negative() && !d.pair(i, &minus).is_negative()));
        let extra = d.coroots[d.phi].scale(rat(k, 1));
        let other = act_y_split(&ctx, &(&plus + &extra), &(&minus + &extra), &x).unwrap();
        prop_assert_eq!(act_y(&ctx, &mu, &x).unwrap(), other);
    }

    #[test]
    fn json_roundtrip(t in 0usize..3, terms in proptest::collection::vec((proptest::collection::vec(-4i64..=4, 2), 1u64..1000), 0..6)) {
        let d = datum(t);
        let spec = ParamSpec::symbolic(1, 0, 0);
        let mut p: QuasiPoly<RatFunc> = QuasiPoly::zero();
        for (mu, c) in terms {
            p.add_term(d.from_coroot_coords(&mu[..d.rank]).scale(rat(1, 2)), RatFunc::from_i64(c as i64) * &RatFunc::var(&spec, Var::Vsh).unwrap());
        }
        let back = QuasiPoly::from_json(&d, &spec, &p.to_json(&d)).unwrap();
        prop_assert_eq!(back, p);
    }

    #[test]
    fn whittaker_action_is_hecke(t in 0usize..3, mu in proptest::collection::vec(-6i64..=6, 2), j in 0usize..3, a in 2u64..1_000_000, b in 2u64..1_000_000) {
        let d = datum(t);
        let w = Whit::new(d.clone(), Mult::new(Fp::new(a), Fp::new(b)).unwrap());
        let y = d.from_coroot_coords(&mu[..d.rank]).scale(rat(1, 5));
        let f = QuasiPoly::x(&y);
        let j = j % (d.rank + 1);
        prop_assert_eq!(w.wact(j, -1, &w.wact(j, 1, &f)), f);
    }

    #[test]
    fn metaplectic_h_table_and_gamma(n in 1i64..5, mu in proptest::collection::vec(-3i64..=3, 2), seed in 0u64..1000) {
        let base = datum(1);
        let md = Arc::new(MetaDatum::new(base.clone(), n, 1, 1, Lattice::Coroot).unwrap());
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let spec = ParamSpec::prime(md.default_d(), 0, md.free_h().len(), &mut rng);
        let mult = Mult::<Fp>::from_vars(&spec).unwrap();
        let h = HTable::generic(&md, &spec, &mult).unwrap();
        prop_assert!(h.validate(&md, &mult).is_ok());
        let rep = MetaRep::new(md.clone(), spec, mult, h).unwrap();
        let on_meta = md.meta.from_coroot_coords(&mu[..2]);
        prop_assert!(rep.gamma(&on_meta).unwrap().is_one());
        let y = base.from_coroot_coords(&mu[..2]);
        let x = QuasiPoly::x(&y);
        for j in 0..=2 {
            let g = act_t(&rep, j, 1, &x).unwrap();
            let back = act_t(&rep, j, -1, &g).unwrap();
            prop_assert_eq!(back, x.clone());
        }
    }
}

fn flip_v(spec: &ParamSpec) -> ParamSpec {
    let mut s = spec.clone();
    if let Backend::Prime(a) = &mut s.backend {
        a.vsh = (-Fp::new(a.vsh)).0;
        a.vlg = (-Fp::new(a.vlg)).0;
    }
    s
}

#[test]
fn e_polynomials_depend_on_v_only_through_k() {
    for t in 0..3 {
        let d = datum(t);
        for face in [vec![], vec![0], (1..=d.rank).collect::<Vec<_>>()] {
            let a = ctx_on_face(&d, &face, 11);
            let spec = flip_v(&a.spec);
            let tc = auto_char(&d, &spec, &face).unwrap();
            let b = Ctx::new(d.clone(), spec.clone(), Mult::from_vars(&spec).unwrap(), a.c.clone(), tc).unwrap();
            let (ea, eb) = (Eigen::new(&a), Eigen::new(&b));
            let pts = aw::orbit_ball(&d, &a.c, 3);
            assert!(pts.len() > 3);
            for y in pts {
                assert_eq!(*ea.e(&y, Method::Intertwiner).unwrap(), *eb.e(&y, Method::Intertwiner).unwrap(), "{} {:?} {}", TYPES[t], face, y);
            }
        }
    }
}
