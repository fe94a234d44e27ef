//! The affine Weyl group `W = W₀ ⋉ Q∨`: arithmetic, actions, lengths, reduced words,
//! orbit normal forms, Bruhat order and lower sets.

use crate::roots::{AffineRoot, RootDatum};
use crate::vector::{rint, RMat, RVec, Rat};
use num_traits::{Signed, Zero};
use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};

/// The element `τ(μ)v`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AffElt {
    pub mu: RVec,
    pub v: RMat,
}

impl AffElt {
    pub fn identity(dim: usize) -> AffElt {
        AffElt { mu: RVec::zero(dim), v: RMat::identity(dim) }
    }

    pub fn translation(mu: RVec) -> AffElt {
        let n = mu.dim();
        AffElt { mu, v: RMat::identity(n) }
    }

    pub fn finite(v: RMat) -> AffElt {
        AffElt { mu: RVec::zero(v.n), v }
    }

    pub fn mul(&self, o: &AffElt) -> AffElt {
        AffElt { mu: &self.mu + &self.v.apply(&o.mu), v: self.v.mul(&o.v) }
    }

    pub fn inv(&self) -> AffElt {
        let vi = self.v.transpose();
        AffElt { mu: -&vi.apply(&self.mu), v: vi }
    }

    pub fn is_identity(&self) -> bool {
        self.mu.is_zero() && self.v.is_identity()
    }

    pub fn is_finite(&self) -> bool {
        self.mu.is_zero()
    }

    pub fn act_point(&self, y: &RVec) -> RVec {
        &self.mu + &self.v.apply(y)
    }

    /// Finite part `v` as an element.
    pub fn finite_part(&self) -> AffElt {
        AffElt::finite(self.v.clone())
    }
}

/// Simple reflection `s_j`, `s_0 = τ(φ∨)s_φ`.
pub fn simple_reflection(d: &RootDatum, j: usize) -> AffElt {
    if j == 0 {
        AffElt { mu: d.coroots[d.phi].clone(), v: RMat::reflection(&d.roots[d.phi]) }
    } else {
        AffElt::finite(RMat::reflection(&d.simple[j - 1]))
    }
}

/// Product `s_{j_1}⋯s_{j_k}`.
pub fn word_element(d: &RootDatum, word: &[usize]) -> AffElt {
    let mut w = AffElt::identity(d.dim);
    for &j in word {
        w = w.mul(&simple_reflection(d, j));
    }
    w
}

/// Image of a finite root under `v`.
pub fn act_root(d: &RootDatum, v: &RMat, a: usize) -> usize {
    d.root_index(&v.apply(&d.roots[a])).expect("W₀ permutes the roots")
}

/// `(α,ℓ) ↦ (vα, ℓ − (vα)(μ))`.
pub fn act_affine_root(d: &RootDatum, w: &AffElt, a: AffineRoot) -> AffineRoot {
    let b = act_root(d, &w.v, a.alpha);
    let s = d.pair(b, &w.mu);
    debug_assert!(s.is_integer());
    AffineRoot { alpha: b, level: a.level - s.to_integer() }
}

fn level_bound(d: &RootDatum, mu: &RVec) -> i64 {
    (0..d.npos).map(|a| d.pair(a, mu).abs().ceil().to_integer()).max().unwrap_or(0) + 1
}

/// `Π(w) = {a ∈ Φ⁺ : wa ∈ Φ⁻}` by a bounded level scan.
pub fn inversion_set(d: &RootDatum, w: &AffElt) -> Vec<AffineRoot> {
    let bound = level_bound(d, &w.mu);
    let mut out = Vec::new();
    for level in 0..=bound {
        for alpha in 0..d.roots.len() {
            let a = AffineRoot { alpha, level };
            if d.affine_is_positive(a) && !d.affine_is_positive(act_affine_root(d, w, a)) {
                out.push(a);
            }
        }
    }
    out
}

pub fn length(d: &RootDatum, w: &AffElt) -> usize {
    inversion_set(d, w).len()
}

/// Closed length formula `Σ_{α∈Φ₀⁺∩vΦ₀⁻}|α(μ)−1| + Σ_{α∈Φ₀⁺∩vΦ₀⁺}|α(μ)|` for `w = τ(μ)v`.
pub fn length_formula(d: &RootDatum, w: &AffElt) -> usize {
    let vi = w.v.transpose();
    let mut l = 0i64;
    for a in 0..d.npos {
        let n = d.pair(a, &w.mu).to_integer();
        if d.is_positive(act_root(d, &vi, a)) {
            l += n.abs();
        } else {
            l += (n - 1).abs();
        }
    }
    l as usize
}

/// Does `w` have `s_j` as a left descent, i.e. `w⁻¹α_j ∈ Φ⁻`.
pub fn is_left_descent(d: &RootDatum, w: &AffElt, j: usize) -> bool {
    !d.affine_is_positive(act_affine_root(d, &w.inv(), d.affine_simple(j)))
}

/// Does `w` have `s_j` as a right descent, i.e. `wα_j ∈ Φ⁻`.
pub fn is_right_descent(d: &RootDatum, w: &AffElt, j: usize) -> bool {
    !d.affine_is_positive(act_affine_root(d, w, d.affine_simple(j)))
}

/// Reduced word, peeling off the smallest left descent each time.
pub fn reduced_word(d: &RootDatum, w: &AffElt) -> Vec<usize> {
    let mut w = w.clone();
    let mut word = Vec::new();
    while !w.is_identity() {
        let j = (0..=d.rank).find(|&j| is_left_descent(d, &w, j)).expect("non-identity element has a descent");
        word.push(j);
        w = simple_reflection(d, j).mul(&w);
    }
    word
}

/// Orbit normal form of a point `y`: `y = w_y c_y` with `c_y` in the closed alcove.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalForm {
    pub c: RVec,
    /// Reduced word of `w_y`.
    pub word: Vec<usize>,
    pub w: AffElt,
    /// `J(c_y)`.
    pub face: Vec<usize>,
}

/// Repeatedly reflect in the smallest simple affine root that is negative at the point.
pub fn orbit_normal_form(d: &RootDatum, y: &RVec) -> NormalForm {
    let mut z = y.clone();
    let mut word = Vec::new();
    loop {
        let j = (0..=d.rank).find(|&j| d.eval_affine(d.affine_simple(j), &z).is_negative());
        match j {
            Some(j) => {
                z = d.s_affine(j, &z);
                word.push(j);
            }
            None => break,
        }
    }
    let w = word_element(d, &word);
    let face = d.face_of(&z);
    NormalForm { c: z, word, w, face }
}

/// `ℓ(w_y) = #{a ∈ Φ⁺ : a(y) < 0}`.
pub fn point_length(d: &RootDatum, y: &RVec) -> usize {
    orbit_normal_form(d, y).word.len()
}

/// `{a ∈ Φ⁺ : a(y) < 0}` listed directly.
pub fn negative_affine_roots(d: &RootDatum, y: &RVec) -> Vec<AffineRoot> {
    let mut out = Vec::new();
    for alpha in 0..d.roots.len() {
        let v = d.pair(alpha, y);
        let start = if d.is_positive(alpha) { 0 } else { 1 };
        let mut level = start;
        while v + rint(level) < Rat::zero() {
            out.push(AffineRoot { alpha, level });
            level += 1;
        }
    }
    out
}

/// Minimal representative of `wW_J`.
pub fn min_coset_rep(d: &RootDatum, w: &AffElt, j_set: &[usize]) -> AffElt {
    let mut w = w.clone();
    loop {
        match j_set.iter().find(|&&j| is_right_descent(d, &w, j)) {
            Some(&j) => w = w.mul(&simple_reflection(d, j)),
            None => return w,
        }
    }
}

pub fn is_min_coset_rep(d: &RootDatum, w: &AffElt, j_set: &[usize]) -> bool {
    j_set.iter().all(|&j| !is_right_descent(d, w, j))
}

/// All products of subwords of `word`.
pub fn subword_elements(d: &RootDatum, word: &[usize]) -> HashSet<AffElt> {
    let mut s: HashSet<AffElt> = HashSet::new();
    s.insert(AffElt::identity(d.dim));
    for &j in word {
        let sj = simple_reflection(d, j);
        let new: Vec<AffElt> = s.iter().map(|x| x.mul(&sj)).collect();
        s.extend(new);
    }
    s
}

/// Bruhat order by the subword property.
pub fn bruhat_leq(d: &RootDatum, u: &AffElt, w: &AffElt) -> bool {
    subword_elements(d, &reduced_word(d, w)).contains(u)
}

/// Bruhat order by the lifting property; used as an independent check.
pub fn bruhat_leq_lifting(d: &RootDatum, u: &AffElt, w: &AffElt) -> bool {
    if u.is_identity() {
        return true;
    }
    if w.is_identity() {
        return false;
    }
    let j = (0..=d.rank).find(|&j| is_left_descent(d, w, j)).unwrap();
    let sj = simple_reflection(d, j);
    let sw = sj.mul(w);
    if is_left_descent(d, u, j) {
        bruhat_leq_lifting(d, &sj.mul(u), &sw)
    } else {
        bruhat_leq_lifting(d, u, &sw)
    }
}

/// Sort points by `ℓ(w_y)`, then by coordinates.
pub fn sort_by_length(d: &RootDatum, pts: &mut Vec<RVec>) {
    let mut keyed: Vec<(usize, RVec)> = pts.drain(..).map(|p| (point_length(d, &p), p)).collect();
    keyed.sort();
    pts.extend(keyed.into_iter().map(|x| x.1));
}

/// `{y′ ∈ O_{c_y} : y′ ≤ y}`, sorted so that the order is a linear extension of `≤`.
pub fn lower_set(d: &RootDatum, y: &RVec) -> Vec<RVec> {
    let nf = orbit_normal_form(d, y);
    let mut s: BTreeSet<RVec> = BTreeSet::new();
    s.insert(nf.c.clone());
    for &j in nf.word.iter().rev() {
        let new: Vec<RVec> = s.iter().map(|z| d.s_affine(j, z)).collect();
        s.extend(new);
    }
    let mut v: Vec<RVec> = s.into_iter().collect();
    sort_by_length(d, &mut v);
    v
}

/// Points `y` of the orbit of `c` with `ℓ(w_y) ≤ n`, sorted by length.
pub fn orbit_ball(d: &RootDatum, c: &RVec, n: usize) -> Vec<RVec> {
    let mut layers = vec![vec![c.clone()]];
    let mut seen: BTreeSet<RVec> = BTreeSet::from([c.clone()]);
    for l in 0..n {
        let mut next = Vec::new();
        for z in &layers[l] {
            for j in 0..=d.rank {
                if d.eval_affine(d.affine_simple(j), z).is_positive() {
                    let zz = d.s_affine(j, z);
                    if seen.insert(zz.clone()) {
                        next.push(zz);
                    }
                }
            }
        }
        next.sort();
        layers.push(next);
    }
    layers.concat()
}

/// `y′ ≤ y` in the parabolic Bruhat order on an orbit.
pub fn point_leq(d: &RootDatum, a: &RVec, b: &RVec) -> bool {
    lower_set(d, b).contains(a)
}

/// Down-closure of `y` under the relations `≺_α`; an independent description of
/// [`lower_set`].
pub fn prec_closure(d: &RootDatum, y: &RVec) -> BTreeSet<RVec> {
    let mut seen: BTreeSet<RVec> = BTreeSet::new();
    let mut queue = VecDeque::new();
    seen.insert(y.clone());
    queue.push_back(y.clone());
    while let Some(z) = queue.pop_front() {
        for alpha in 0..d.npos {
            let az = d.pair(alpha, &z);
            let bound = az.abs().ceil().to_integer() + 1;
            for level in -bound..=bound {
                let zz = z.add_scaled(&d.coroots[alpha], -(az + rint(level)));
                let a2 = d.pair(alpha, &zz);
                let ok = a2.abs() < az.abs() || (a2 == -az && a2.is_positive());
                if ok && seen.insert(zz.clone()) {
                    queue.push_back(zz);
                }
            }
        }
    }
    seen
}

/// The finite Weyl group with a reduced word for each element, sorted by length.
/// Words satisfy `word(s_i v) = [i] + word(v)`.
pub fn finite_weyl_group(d: &RootDatum) -> Vec<(AffElt, Vec<usize>)> {
    let mut seen: HashMap<AffElt, Vec<usize>> = HashMap::new();
    let id = AffElt::identity(d.dim);
    let mut order = vec![id.clone()];
    seen.insert(id.clone(), vec![]);
    let mut queue = VecDeque::from([id]);
    while let Some(v) = queue.pop_front() {
        let wv = seen[&v].clone();
        for i in 1..=d.rank {
            if is_left_descent(d, &v, i) {
                continue;
            }
            let u = simple_reflection(d, i).mul(&v);
            if !seen.contains_key(&u) {
                let mut w = vec![i];
                w.extend(&wv);
                seen.insert(u.clone(), w);
                order.push(u.clone());
                queue.push_back(u);
            }
        }
    }
    order.into_iter().map(|v| {
        let w = seen[&v].clone();
        (v, w)
    }).collect()
}

/// Finite inversion set `Π(v) = {α ∈ Φ₀⁺ : vα ∈ Φ₀⁻}`.
pub fn finite_inversions(d: &RootDatum, v: &RMat) -> Vec<usize> {
    (0..d.npos).filter(|&a| !d.is_positive(act_root(d, v, a))).collect()
}

/// Longest element of `W₀`.
pub fn longest_element(d: &RootDatum) -> AffElt {
    let mut w = AffElt::identity(d.dim);
    loop {
        match (1..=d.rank).find(|&i| !is_right_descent(d, &w, i)) {
            Some(i) => w = w.mul(&simple_reflection(d, i)),
            None => return w,
        }
    }
}

/// `(y₋, g_y)` with `y₋ = g_y y` antidominant and `g_y ∈ W₀` of minimal length; the
/// returned word lists the reflections in the order they are applied to `y`.
pub fn antidominant(d: &RootDatum, y: &RVec) -> (RVec, Vec<usize>) {
    let mut z = y.clone();
    let mut applied = Vec::new();
    loop {
        match (1..=d.rank).find(|&i| d.pair(i - 1, &z).is_positive()) {
            Some(i) => {
                z = d.reflect(i - 1, &z);
                applied.push(i);
            }
            None => return (z, applied),
        }
    }
}

/// `(y₊, word)` with `y₊` dominant, same conventions as [`antidominant`].
pub fn dominant(d: &RootDatum, y: &RVec) -> (RVec, Vec<usize>) {
    let mut z = y.clone();
    let mut applied = Vec::new();
    loop {
        match (1..=d.rank).find(|&i| d.pair(i - 1, &z).is_negative()) {
            Some(i) => {
                z = d.reflect(i - 1, &z);
                applied.push(i);
            }
            None => return (z, applied),
        }
    }
}

/// Serialized form: translation in coroot coordinates, and the images of the simple
/// roots as root indices.
pub fn serialize(d: &RootDatum, w: &AffElt) -> (Vec<Rat>, Vec<usize>) {
    (d.coroot_coords(&w.mu), (0..d.rank).map(|i| act_root(d, &w.v, i)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::roots::CartanType;
    use crate::vector::rat;

    fn a1() -> RootDatum {
        RootDatum::build(CartanType::A, 1, 1).unwrap()
    }

    #[test]
    fn a1_basics() {
        let d = a1();
        let s0 = simple_reflection(&d, 0);
        let s1 = simple_reflection(&d, 1);
        assert!(s0.mul(&s0).is_identity());
        let t = AffElt::translation(d.simple_co[0].clone());
        assert_eq!(s0.mul(&s1), t);
        assert_eq!(length(&d, &t), 2);
        assert_eq!(reduced_word(&d, &t), vec![0, 1]);
        assert_eq!(reduced_word(&d, &s1), vec![1]);
        let a0 = d.affine_simple(0);
        assert_eq!(act_affine_root(&d, &s0, a0), d.affine_neg(a0));
    }

    #[test]
    fn normal_forms_a1() {
        let d = a1();
        let ac = &d.simple_co[0];
        let nf = orbit_normal_form(&d, &ac.scale(rat(-1, 4)));
        assert_eq!(nf.c, ac.scale(rat(1, 4)));
        assert_eq!(nf.word, vec![1]);
        assert!(nf.face.is_empty());
        let nf = orbit_normal_form(&d, &ac.scale(rat(3, 4)));
        assert_eq!(nf.word, vec![0]);
        assert_eq!(lower_set(&d, &ac.scale(rat(3, 4))), vec![ac.scale(rat(1, 4)), ac.scale(rat(3, 4))]);
        let ls = lower_set(&d, &ac.scale(rint(-1)));
        assert_eq!(ls, vec![RVec::zero(2), ac.clone(), ac.scale(rint(-1))]);
    }

    #[test]
    fn bruhat_small() {
        let d = a1();
        let s0 = simple_reflection(&d, 0);
        let s1 = simple_reflection(&d, 1);
        assert!(bruhat_leq(&d, &s1, &s0.mul(&s1)));
        assert!(!bruhat_leq(&d, &s0, &s1));
    }

    #[test]
    fn length_of_phi_translation() {
        for (t, r) in [(CartanType::A, 2), (CartanType::B, 2), (CartanType::G, 2)] {
            let d = RootDatum::build(t, r, 1).unwrap();
            let tau = AffElt::translation(d.coroots[d.phi].clone());
            let sphi = AffElt::finite(RMat::reflection(&d.roots[d.phi]));
            assert_eq!(length(&d, &tau), 1 + length(&d, &sphi));
            assert_eq!(length_formula(&d, &tau), length(&d, &tau));
        }
    }

    #[test]
    fn finite_group_orders() {
        for (t, r, n) in [(CartanType::A, 2, 6), (CartanType::B, 2, 8), (CartanType::G, 2, 12), (CartanType::A, 3, 24)] {
            let d = RootDatum::build(t, r, 1).unwrap();
            let g = finite_weyl_group(&d);
            assert_eq!(g.len(), n);
            for (v, w) in &g {
                assert_eq!(&word_element(&d, w), v);
                assert_eq!(w.len(), length(&d, v));
            }
            assert_eq!(length(&d, &longest_element(&d)), d.npos);
        }
    }

    #[test]
    fn pi_of_s_phi_a2() {
        let d = RootDatum::build(CartanType::A, 2, 1).unwrap();
        let sphi = RMat::reflection(&d.roots[d.phi]);
        let inv = finite_inversions(&d, &sphi);
        assert_eq!(inv.len(), 3);
    }
}
