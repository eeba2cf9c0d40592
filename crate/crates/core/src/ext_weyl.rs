//! The extended affine Weyl group `W^b = Π ⋉ W^a`.
//!
//! An element is stored canonically as a pair `(w, c)` meaning `ŵ = w c′`,
//! acting by `ŵ([z, ζ]) = [w z, ζ - (z, c)]`. Affine nodes are numbered
//! `0..=n`, with `0` the affine node `α_0 = [-θ, 1]`; minuscule indices
//! `r ∈ O` use the same 1-based numbering, with `r = 0` for `π_0 = 1`.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use crate::error::{Error, Result};
use crate::root_datum::{Rat, RootDatum, Weight, WeylElt};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct GroupElt {
    w: WeylElt,
    c: Weight,
}

/// The affine root `[α, k]`, with `α` given by its index in
/// [`RootDatum::roots`].
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct AffineRoot {
    pub root: usize,
    pub level: i64,
}

impl AffineRoot {
    pub fn is_positive(&self, d: &RootDatum) -> bool {
        self.level > 0 || (self.level == 0 && self.root < d.num_positive_roots())
    }

    /// The affine simple root `α_j`.
    pub fn simple(d: &RootDatum, j: usize) -> AffineRoot {
        if j == 0 {
            AffineRoot { root: d.negate_root(d.theta_index()), level: 1 }
        } else {
            AffineRoot { root: d.simple_root_index(j - 1), level: 0 }
        }
    }

    pub fn class(&self, d: &RootDatum) -> Rat {
        d.root(self.root).norm
    }

    pub fn display(&self, d: &RootDatum) -> String {
        format!("[{}, {}]", Weight::from_slice(&d.root(self.root).coef), self.level)
    }
}

impl GroupElt {
    pub fn identity(n: usize) -> Self {
        GroupElt { w: WeylElt::identity(n), c: Weight::zero(n) }
    }

    pub fn new(w: WeylElt, c: Weight) -> Self {
        GroupElt { w, c }
    }

    pub fn finite(w: WeylElt) -> Self {
        let n = w.dim();
        GroupElt { w, c: Weight::zero(n) }
    }

    pub fn translation(b: Weight) -> Self {
        GroupElt { w: WeylElt::identity(b.rank()), c: b }
    }

    /// The element `b′ w`.
    pub fn from_left(b: &Weight, w: WeylElt) -> Self {
        let c = w.inverse().apply(b);
        GroupElt { w, c }
    }

    pub fn weyl(&self) -> &WeylElt {
        &self.w
    }

    /// The right translation part `c` of `ŵ = w c′`.
    pub fn right_translation(&self) -> &Weight {
        &self.c
    }

    /// The left translation part `b` of `ŵ = b′ w`, i.e. `b = w(c)`.
    pub fn left_translation(&self) -> Weight {
        self.w.apply(&self.c)
    }

    pub fn is_identity(&self) -> bool {
        self.w.is_identity() && self.c.is_zero()
    }

    pub fn mul(&self, o: &GroupElt) -> GroupElt {
        // (w1 c1′)(w2 c2′) = w1 w2 (w2^{-1} c1 + c2)′.
        GroupElt { w: self.w.mul(&o.w), c: o.w.inverse().apply(&self.c).add(&o.c) }
    }

    pub fn inverse(&self) -> GroupElt {
        GroupElt { w: self.w.inverse(), c: self.w.apply(&self.c).neg() }
    }

    pub fn pow(&self, k: u32) -> GroupElt {
        let mut acc = GroupElt::identity(self.c.rank());
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// `ŵ([λ, 0]) = [wλ, -(λ, c)]`, returned as `(wλ, -(λ, c))`.
    pub fn act_weight(&self, d: &RootDatum, lambda: &Weight) -> (Weight, Rat) {
        (self.w.apply(lambda), -d.pair_weights(lambda, &self.c))
    }

    pub fn act_root(&self, d: &RootDatum, a: &AffineRoot) -> AffineRoot {
        let r = d.root(a.root);
        AffineRoot { root: d.act_on_root(&self.w, a.root), level: a.level - d.pair_root(&self.c, r) }
    }
}

/// The simple reflection `s_j`, `0 ≤ j ≤ n`.
pub fn s(d: &RootDatum, j: usize) -> GroupElt {
    let n = d.rank();
    if j == 0 {
        // s_0 = s_θ (-θ^∨)′: s_0([z, ζ]) = [s_θ z, ζ + (z, θ^∨)].
        GroupElt { w: d.reflection(d.theta()), c: d.theta().coroot.neg() }
    } else {
        GroupElt { w: d.simple_reflection(j - 1), c: Weight::zero(n) }
    }
}

/// `π_r = b_r′ ω_r^{-1} = ω_r^{-1} (ω_r b_r)′` for `r ∈ O`.
pub fn pi(d: &RootDatum, r: usize) -> Result<GroupElt> {
    let n = d.rank();
    if r == 0 {
        return Ok(GroupElt::identity(n));
    }
    if r > n {
        return Err(Error::NotMinuscule(r));
    }
    let om = d.omega(r - 1)?;
    Ok(GroupElt { w: om.inverse(), c: om.apply(&Weight::basis(n, r - 1)) })
}

/// The index set `O` (0 together with the minuscule nodes), ascending.
pub fn pi_indices(d: &RootDatum) -> Vec<usize> {
    std::iter::once(0).chain(d.minuscule().iter().map(|&r| r + 1)).collect()
}

/// The diagram permutation of `π_r`: `π_r(α_j) = α_{perm[j]}`.
pub fn pi_permutation(d: &RootDatum, r: usize) -> Result<Vec<usize>> {
    let p = pi(d, r)?;
    let simple: Vec<AffineRoot> = (0..=d.rank()).map(|j| AffineRoot::simple(d, j)).collect();
    Ok(simple
        .iter()
        .map(|a| {
            let img = p.act_root(d, a);
            simple.iter().position(|x| *x == img).expect("π_r permutes the affine simple roots")
        })
        .collect())
}

/// `l_ν(g)` for each class in [`RootDatum::length_classes`] order.
pub fn length_vector(d: &RootDatum, g: &GroupElt) -> Vec<(Rat, u64)> {
    let mut out: Vec<(Rat, u64)> = d.length_classes().iter().map(|&nu| (nu, 0)).collect();
    let np = d.num_positive_roots();
    for (i, r) in d.roots().iter().enumerate() {
        // [α, k] > 0 with g[α, k] < 0 iff k_min ≤ k < (α, c) + [wα < 0].
        let k_min = if i < np { 0 } else { 1 };
        let flips = d.act_on_root(&g.w, i) >= np;
        let bound = d.pair_root(&g.c, r) + flips as i64;
        let count = (bound - k_min).max(0) as u64;
        let slot = out.iter_mut().find(|(nu, _)| *nu == r.norm).expect("class");
        slot.1 += count;
    }
    out
}

pub fn length(d: &RootDatum, g: &GroupElt) -> usize {
    length_vector(d, g).iter().map(|x| x.1 as usize).sum()
}

/// `λ(g) = {α̃ > 0 : g(α̃) < 0}`, sorted.
pub fn lambda_set(d: &RootDatum, g: &GroupElt) -> Vec<AffineRoot> {
    let np = d.num_positive_roots();
    let mut out = Vec::new();
    for (i, r) in d.roots().iter().enumerate() {
        let k_min = if i < np { 0 } else { 1 };
        let flips = d.act_on_root(&g.w, i) >= np;
        let bound = d.pair_root(&g.c, r) + flips as i64;
        for k in k_min..bound {
            out.push(AffineRoot { root: i, level: k });
        }
    }
    out.sort();
    out
}

/// `λ` computed from a word `s_{i_1} … s_{i_l}` (left to right):
/// `α̃^1 = α_{i_l}`, `α̃^2 = s_{i_l}(α_{i_{l-1}})`, ….
pub fn lambda_from_word(d: &RootDatum, word: &[usize]) -> Vec<AffineRoot> {
    let mut h = GroupElt::identity(d.rank());
    let mut out = Vec::with_capacity(word.len());
    for &j in word.iter().rev() {
        out.push(h.act_root(d, &AffineRoot::simple(d, j)));
        h = h.mul(&s(d, j));
    }
    out
}

/// Whether `l(g s_j) < l(g)`, i.e. `g(α_j) < 0`.
pub fn is_right_descent(d: &RootDatum, g: &GroupElt, j: usize) -> bool {
    !g.act_root(d, &AffineRoot::simple(d, j)).is_positive(d)
}

/// `g = π_r s_{word[0]} … s_{word[l-1]}` with `l = l(g)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ReducedWord {
    pub r: usize,
    pub word: Vec<usize>,
}

impl ReducedWord {
    pub fn to_element(&self, d: &RootDatum) -> Result<GroupElt> {
        let mut g = pi(d, self.r)?;
        for &j in &self.word {
            g = g.mul(&s(d, j));
        }
        Ok(g)
    }
}

impl fmt::Display for ReducedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "pi_{}", self.r)?;
        if !self.word.is_empty() {
            f.write_str(" .")?;
            for j in &self.word {
                write!(f, " s_{j}")?;
            }
        }
        Ok(())
    }
}

impl std::str::FromStr for ReducedWord {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("bad word '{text}'"));
        let mut parts = text.split_whitespace();
        let head = parts.next().ok_or_else(bad)?;
        let r = head.strip_prefix("pi_").ok_or_else(bad)?.parse().map_err(|_| bad())?;
        let mut word = Vec::new();
        match parts.next() {
            None => {}
            Some(".") => {
                for p in parts {
                    word.push(p.strip_prefix("s_").ok_or_else(bad)?.parse().map_err(|_| bad())?);
                }
            }
            Some(_) => return Err(bad()),
        }
        Ok(ReducedWord { r, word })
    }
}

/// Greedy reduced word: repeatedly strip the lowest-index right descent.
pub fn reduced_word(d: &RootDatum, g: &GroupElt) -> ReducedWord {
    let mut h = g.clone();
    let mut rev = Vec::new();
    'outer: loop {
        for j in 0..=d.rank() {
            if is_right_descent(d, &h, j) {
                h = h.mul(&s(d, j));
                rev.push(j);
                continue 'outer;
            }
        }
        break;
    }
    rev.reverse();
    let r = pi_indices(d)
        .into_iter()
        .find(|&r| pi(d, r).map(|p| p == h).unwrap_or(false))
        .expect("length-zero elements are the π_r");
    ReducedWord { r, word: rev }
}

/// All elements of length at most `max_len`, in breadth-first order.
pub fn elements_up_to_length(d: &RootDatum, max_len: usize) -> Vec<GroupElt> {
    let mut seen: BTreeSet<GroupElt> = BTreeSet::new();
    let mut order = Vec::new();
    let mut queue = VecDeque::new();
    for r in pi_indices(d) {
        let p = pi(d, r).expect("valid index");
        seen.insert(p.clone());
        queue.push_back((p, 0usize));
    }
    while let Some((g, l)) = queue.pop_front() {
        order.push(g.clone());
        if l == max_len {
            continue;
        }
        for j in 0..=d.rank() {
            if is_right_descent(d, &g, j) {
                continue;
            }
            let h = g.mul(&s(d, j));
            if seen.insert(h.clone()) {
                queue.push_back((h, l + 1));
            }
        }
    }
    order
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::root_datum::Family;
    use proptest::prelude::*;

    fn a1() -> RootDatum {
        RootDatum::new(Family::A, 1).unwrap()
    }

    fn datums() -> Vec<RootDatum> {
        vec![
            RootDatum::new(Family::A, 1).unwrap(),
            RootDatum::new(Family::A, 2).unwrap(),
            RootDatum::new(Family::B, 2).unwrap(),
            RootDatum::new(Family::C, 2).unwrap(),
            RootDatum::new(Family::G, 2).unwrap(),
        ]
    }

    /// Counts positive affine roots sent negative with levels in a window.
    fn brute_length(d: &RootDatum, g: &GroupElt) -> Vec<(Rat, u64)> {
        let mut out: Vec<(Rat, u64)> = d.length_classes().iter().map(|&nu| (nu, 0)).collect();
        for i in 0..d.roots().len() {
            for k in -40..=40 {
                let a = AffineRoot { root: i, level: k };
                if a.is_positive(d) && !g.act_root(d, &a).is_positive(d) {
                    out.iter_mut().find(|(nu, _)| *nu == a.class(d)).unwrap().1 += 1;
                }
            }
        }
        out
    }

    #[test]
    fn s0_matches_affine_reflection() {
        for d in datums() {
            let s0 = s(&d, 0);
            let a0 = AffineRoot::simple(&d, 0);
            let img = s0.act_root(&d, &a0);
            assert_eq!(img.root, d.theta_index());
            assert_eq!(img.level, -1);
            assert!(s0.mul(&s0).is_identity());
            // s_{α̃}([β, k]) = [β, k] - (β, α_0^∨) α_0 on every affine root.
            for i in 0..d.roots().len() {
                let beta = AffineRoot { root: i, level: 2 };
                let r = d.root(i);
                let theta = d.theta();
                let pair = d.pair_weight_rat(&theta.coroot, &d.root_vector(r));
                assert!(pair.is_integer());
                let p = -pair.to_integer();
                let expect_vec: Vec<i64> = r.coef.iter().zip(&theta.coef).map(|(b, t)| b + p * t).collect();
                let got = s0.act_root(&d, &beta);
                assert_eq!(d.root(got.root).coef, expect_vec);
                assert_eq!(got.level, 2 - p);
            }
        }
    }

    #[test]
    fn simple_lengths() {
        for d in datums() {
            for j in 0..=d.rank() {
                let lv = length_vector(&d, &s(&d, j));
                let nu = d.node_class(j);
                for (c, l) in lv {
                    assert_eq!(l, if c == nu { 1 } else { 0 });
                }
                assert_eq!(lambda_set(&d, &s(&d, j)), vec![AffineRoot::simple(&d, j)]);
            }
        }
    }

    #[test]
    fn a1_translations() {
        let d = a1();
        let a = GroupElt::translation(Weight::from_slice(&[2]));
        assert_eq!(length(&d, &a), 2);
        let w = reduced_word(&d, &a);
        assert_eq!(w.r, 0);
        assert_eq!(w.word.len(), 2);
        assert_eq!(lambda_set(&d, &a).len(), 2);
        let b = GroupElt::translation(Weight::from_slice(&[1]));
        let w = reduced_word(&d, &b);
        assert_eq!(w, ReducedWord { r: 1, word: vec![1] });
        assert_eq!(w.to_string(), "pi_1 . s_1");
        assert_eq!(reduced_word(&d, &GroupElt::identity(1)).to_string(), "pi_0");
    }

    #[test]
    fn dominant_translation_lengths() {
        for d in datums() {
            let n = d.rank();
            for coords in [[1i64, 0], [0, 1], [2, 1], [1, 3]] {
                let b = Weight::from_slice(&coords[..n]);
                let lv = length_vector(&d, &GroupElt::translation(b.clone()));
                for (nu, l) in lv {
                    let expected = d.pair_rho(&b, nu) * 2;
                    assert_eq!(Rat::from_integer(l as i64), expected);
                }
                // l_ν(b′) = Σ |(b, α)| over positive roots of class ν, for any b.
                let bneg = b.neg();
                for (nu, l) in length_vector(&d, &GroupElt::translation(bneg.clone())) {
                    let s: i64 =
                        d.positive_roots().iter().filter(|r| r.norm == nu).map(|r| d.pair_root(&bneg, r).abs()).sum();
                    assert_eq!(l as i64, s);
                }
            }
        }
    }

    #[test]
    fn length_formula_matches_brute_force() {
        for d in datums() {
            for g in elements_up_to_length(&d, 6) {
                assert_eq!(length_vector(&d, &g), brute_length(&d, &g));
                let lam = lambda_set(&d, &g);
                assert_eq!(lam.len(), length(&d, &g));
                let w = reduced_word(&d, &g);
                let mut from_word = lambda_from_word(&d, &w.word);
                from_word.sort();
                assert_eq!(from_word, lam);
            }
        }
    }

    #[test]
    fn pi_conjugation_permutes_simple_reflections() {
        for t in ["A1", "A2", "A3", "B2", "C3", "D4"] {
            let d: RootDatum = t.parse().unwrap();
            for r in pi_indices(&d) {
                let p = pi(&d, r).unwrap();
                assert_eq!(length(&d, &p), 0);
                let perm = pi_permutation(&d, r).unwrap();
                assert_eq!(perm[0], r);
                for (i, &j) in perm.iter().enumerate() {
                    assert_eq!(p.mul(&s(&d, i)).mul(&p.inverse()), s(&d, j), "{t} r={r}");
                }
            }
        }
        assert!(matches!(pi(&"G2".parse().unwrap(), 1), Err(Error::NotMinuscule(_))));
    }

    #[test]
    fn word_serialization_roundtrip() {
        let w = ReducedWord { r: 2, word: vec![0, 1, 2] };
        assert_eq!(w.to_string().parse::<ReducedWord>().unwrap(), w);
        assert!("pi_x".parse::<ReducedWord>().is_err());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(100))]

        #[test]
        fn reduced_word_reconstructs(t in 0usize..5, word in proptest::collection::vec(0usize..3, 0..10), r in 0usize..3) {
            let d = &datums()[t];
            let mut g = pi(d, pi_indices(d)[r % pi_indices(d).len()]).unwrap();
            for j in word {
                g = g.mul(&s(d, j % (d.rank() + 1)));
            }
            let w = reduced_word(d, &g);
            prop_assert_eq!(w.to_element(d).unwrap(), g.clone());
            prop_assert_eq!(w.word.len(), length(d, &g));
            prop_assert_eq!(g.mul(&g.inverse()), GroupElt::identity(d.rank()));
        }
    }
}
