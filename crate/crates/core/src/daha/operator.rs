//! Operators `Σ_g h_g · g` with `g ∈ W^b` and rational coefficients in `x`.

use std::collections::BTreeMap;

use super::ratfun::RatFunX;
use crate::error::Result;
use crate::ext_weyl::{reduced_word, GroupElt};
use crate::laurent::LaurentPoly;
use crate::param::{MonomialMap, ParamScalar};
use crate::root_datum::{RootDatum, Weight};

/// A difference-reflection operator in normal form, coefficients on the left.
///
/// Keys are group elements `ĝ = w c′`; the triple `h_{b,w} b′ w`
/// is recovered with `b = w(c)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct NormalFormOperator {
    n: usize,
    terms: BTreeMap<GroupElt, RatFunX>,
}

impl NormalFormOperator {
    pub fn zero(n: usize) -> Self {
        NormalFormOperator { n, terms: BTreeMap::new() }
    }

    pub fn identity(n: usize) -> Self {
        Self::group(GroupElt::identity(n))
    }

    pub fn group(g: GroupElt) -> Self {
        let n = g.right_translation().rank();
        Self::term(g, RatFunX::one(n))
    }

    pub fn term(g: GroupElt, h: RatFunX) -> Self {
        let n = g.right_translation().rank();
        let mut terms = BTreeMap::new();
        if !h.is_zero() {
            terms.insert(g, h);
        }
        NormalFormOperator { n, terms }
    }

    /// Multiplication by a function of `x`.
    pub fn multiplication(n: usize, h: RatFunX) -> Self {
        Self::term(GroupElt::identity(n), h)
    }

    /// Multiplication by `x_b`.
    pub fn x(b: &Weight) -> Self {
        Self::multiplication(b.rank(), RatFunX::from_poly(LaurentPoly::x(b.clone())))
    }

    pub fn scalar(n: usize, c: ParamScalar) -> Self {
        Self::multiplication(n, RatFunX::constant(n, c))
    }

    pub fn rank(&self) -> usize {
        self.n
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

    pub fn terms(&self) -> impl Iterator<Item = (&GroupElt, &RatFunX)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, g: &GroupElt) -> RatFunX {
        self.terms.get(g).cloned().unwrap_or_default()
    }

    fn add_term(&mut self, g: GroupElt, h: RatFunX) {
        if h.is_zero() {
            return;
        }
        match self.terms.remove(&g) {
            None => {
                self.terms.insert(g, h);
            }
            Some(old) => {
                let s = old.add(&h);
                if !s.is_zero() {
                    self.terms.insert(g, s);
                }
            }
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (g, h) in &o.terms {
            out.add_term(g.clone(), h.clone());
        }
        out
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        NormalFormOperator { n: self.n, terms: self.terms.iter().map(|(g, h)| (g.clone(), h.neg())).collect() }
    }

    pub fn scale(&self, c: &ParamScalar) -> Self {
        let mut out = Self::zero(self.n);
        for (g, h) in &self.terms {
            out.add_term(g.clone(), h.scale(c));
        }
        out
    }

    /// Left multiplication by a function of `x`.
    pub fn left_mul(&self, f: &RatFunX) -> Self {
        let mut out = Self::zero(self.n);
        for (g, h) in &self.terms {
            out.add_term(g.clone(), f.mul(h));
        }
        out
    }

    /// `(h_1 g_1)(h_2 g_2) = h_1 g_1(h_2) · g_1 g_2`.
    pub fn mul(&self, d: &RootDatum, o: &Self) -> Self {
        let mut out = Self::zero(self.n);
        for (g1, h1) in &self.terms {
            for (g2, h2) in &o.terms {
                out.add_term(g1.mul(g2), h1.mul(&h2.act(d, g1)));
            }
        }
        out
    }

    pub fn pow(&self, d: &RootDatum, k: u32) -> Self {
        let mut acc = Self::identity(self.n);
        for _ in 0..k {
            acc = acc.mul(d, self);
        }
        acc
    }

    /// `[A, B] = AB - BA`.
    pub fn commutator(&self, d: &RootDatum, o: &Self) -> Self {
        self.mul(d, o).sub(&o.mul(d, self))
    }

    /// Applies the operator to a Laurent polynomial; fails if the result
    /// keeps a denominator.
    pub fn apply(&self, d: &RootDatum, f: &LaurentPoly) -> Result<LaurentPoly> {
        self.apply_rational(d, f).into_poly()
    }

    pub fn apply_rational(&self, d: &RootDatum, f: &LaurentPoly) -> RatFunX {
        let mut acc = RatFunX::zero();
        for (g, h) in &self.terms {
            acc = acc.add(&h.mul_poly(&f.act(d, g)));
        }
        acc
    }

    /// Applies a parameter substitution to every coefficient.
    pub fn substitute(&self, map: &MonomialMap) -> Result<Self> {
        let mut out = Self::zero(self.n);
        for (g, h) in &self.terms {
            out.add_term(g.clone(), h.substitute(map)?);
        }
        Ok(out)
    }

    /// Terms grouped as `h_{b,w} b′ w`, keyed by the left translation `b`.
    pub fn by_left_translation(&self) -> BTreeMap<Weight, Vec<(&GroupElt, &RatFunX)>> {
        let mut out: BTreeMap<Weight, Vec<(&GroupElt, &RatFunX)>> = BTreeMap::new();
        for (g, h) in &self.terms {
            out.entry(g.left_translation()).or_default().push((g, h));
        }
        out
    }

    /// Canonical textual form: `(b-coords ; w-word ; coefficient)` triples.
    pub fn serialize(&self, d: &RootDatum) -> String {
        let mut parts = Vec::new();
        for (g, h) in &self.terms {
            let b = g.left_translation();
            let w = GroupElt::finite(g.weyl().clone());
            let word = reduced_word(d, &w);
            let letters: Vec<String> = word.word.iter().map(|j| format!("s_{j}")).collect();
            let word = if letters.is_empty() { "1".to_string() } else { letters.join(".") };
            parts.push(format!("({b} ; {word} ; {h})"));
        }
        format!("[{}]", parts.join(", "))
    }
}
