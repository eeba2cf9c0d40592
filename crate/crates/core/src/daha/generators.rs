//! Generators of the polynomial representation: Demazure–Lusztig operators
//! `T̂_j`, the diagram elements `π_r`, multiplications `X_b`, and the
//! commuting family `Y_b`.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use super::operator::NormalFormOperator;
use super::ratfun::{divide_binomial, RatFunX};
use crate::error::{Error, Result};
use crate::ext_weyl::{pi, pi_indices, reduced_word, s, GroupElt, ReducedWord};
use crate::laurent::LaurentPoly;
use crate::param::{MonomialMap, Param, ParamMonomial, ParamScalar};
use crate::root_datum::{RootDatum, Weight};

/// Deliberate defects used as negative controls for the relation checks.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Corruption {
    /// `T̂_0` built with `δ = 1`: `s_θ` in place of `s_0`, `X_θ^{-1}` in
    /// place of `δ X_θ^{-1}`.
    DropDeltaT0,
    /// `T̂_j` with `q_j^{-1/2}` in front of `s_j`.
    FlipT(usize),
    /// `π_r` replaced by its finite part `ω_r^{-1}`.
    PiWithoutDelta(usize),
}

#[derive(Clone, Debug)]
struct Node {
    /// `q_j^{1/2}` after the parameter map.
    t: ParamScalar,
    tm: ParamMonomial,
    /// Coefficient in front of `s_j`.
    t_front: ParamScalar,
    /// `q_j^{1/2} - q_j^{-1/2}`.
    c: ParamScalar,
    /// `X_{a_j} = m x_a`.
    m: ParamMonomial,
    a: Weight,
    g: GroupElt,
}

/// The polynomial representation for a fixed root datum and parameter map.
pub struct Daha<'a> {
    d: &'a RootDatum,
    params: MonomialMap,
    nodes: Vec<Node>,
    pis: Vec<(usize, GroupElt)>,
    y_words: Vec<ReducedWord>,
    y_gens: OnceLock<Vec<(NormalFormOperator, NormalFormOperator)>>,
    y_cache: RwLock<HashMap<Weight, Arc<NormalFormOperator>>>,
}

impl<'a> Daha<'a> {
    pub fn new(d: &'a RootDatum) -> Self {
        Self::build(d, MonomialMap::identity(), None).expect("generic parameters are representable")
    }

    /// The representation with the parameters `q_ν` specialized by `params`.
    pub fn with_params(d: &'a RootDatum, params: MonomialMap) -> Result<Self> {
        Self::build(d, params, None)
    }

    pub fn corrupted(d: &'a RootDatum, c: Corruption) -> Result<Self> {
        Self::build(d, MonomialMap::identity(), Some(c))
    }

    fn build(d: &'a RootDatum, params: MonomialMap, corruption: Option<Corruption>) -> Result<Self> {
        let n = d.rank();
        let mut nodes = Vec::with_capacity(n + 1);
        for j in 0..=n {
            let q = d.class_param(d.node_class(j));
            let tm = params.apply_monomial(&ParamMonomial::power(q, 1, 2))?;
            let t = ParamScalar::monomial(tm);
            let tinv = t.inv()?;
            let c = &t - &tinv;
            let (mut m, mut a, mut g) = if j == 0 {
                (ParamMonomial::power(Param::Delta, 1, 1), d.theta().coroot.neg(), s(d, 0))
            } else {
                (ParamMonomial::one(), d.coroot(j - 1), s(d, j))
            };
            let mut t_front = t.clone();
            match corruption {
                Some(Corruption::DropDeltaT0) if j == 0 => {
                    m = ParamMonomial::one();
                    a = d.theta().coroot.neg();
                    g = GroupElt::finite(d.reflection(d.theta()));
                }
                Some(Corruption::FlipT(k)) if k == j => t_front = tinv.clone(),
                _ => {}
            }
            nodes.push(Node { t, tm, t_front, c, m, a, g });
        }
        let mut pis = Vec::new();
        for r in pi_indices(d) {
            let mut p = pi(d, r)?;
            if corruption == Some(Corruption::PiWithoutDelta(r)) {
                p = GroupElt::finite(p.weyl().clone());
            }
            pis.push((r, p));
        }
        let y_words = (0..n).map(|i| reduced_word(d, &GroupElt::translation(Weight::basis(n, i)))).collect();
        Ok(Daha { d, params, nodes, pis, y_words, y_gens: OnceLock::new(), y_cache: RwLock::new(HashMap::new()) })
    }

    pub fn datum(&self) -> &'a RootDatum {
        self.d
    }

    pub fn rank(&self) -> usize {
        self.d.rank()
    }

    pub fn params(&self) -> &MonomialMap {
        &self.params
    }

    /// `q_j^{1/2}`.
    pub fn t_half(&self, j: usize) -> &ParamScalar {
        &self.nodes[j].t
    }

    /// `s_j = (q_j^{1/2} + c (X_{a_j} - 1)^{-1})^{-1} (T̂_j + c (X_{a_j} - 1)^{-1})`
    /// with `c = q_j^{1/2} - q_j^{-1/2}`, i.e. the reflection written through
    /// `T̂_j` and functions of `X`.
    pub fn reflection_via_t(&self, j: usize, t_j: &NormalFormOperator) -> Result<NormalFormOperator> {
        let nd = self.check_node(j)?;
        let n = self.rank();
        let frac = RatFunX::inv_binomial(nd.m, nd.a.clone())?.scale(&nd.c);
        // (t + c/(X-1))^{-1} = t (X - 1)/(t^2 X - 1)
        let ainv = RatFunX::inv_binomial(nd.tm.pow(2).mul(&nd.m), nd.a.clone())?
            .mul(&RatFunX::binomial(nd.m, nd.a.clone()))
            .scale(&nd.t);
        Ok(t_j.add(&NormalFormOperator::multiplication(n, frac)).left_mul(&ainv))
    }

    fn check_node(&self, j: usize) -> Result<&Node> {
        self.nodes.get(j).ok_or(Error::DimensionMismatch { expected: self.d.rank() + 1, got: j })
    }

    fn pi_elt(&self, r: usize) -> Result<&GroupElt> {
        self.pis.iter().find(|(k, _)| *k == r).map(|(_, p)| p).ok_or(Error::NotMinuscule(r))
    }

    /// The reduced word `π_r s_{j_1} … s_{j_l}` of the translation `b_i`.
    pub fn y_word(&self, i: usize) -> &ReducedWord {
        &self.y_words[i]
    }

    // ---- normal forms ----

    /// `T̂_j = q_j^{1/2} s_j + (q_j^{1/2} - q_j^{-1/2}) (X_{a_j} - 1)^{-1} (s_j - 1)`.
    pub fn demazure_lusztig(&self, j: usize) -> Result<NormalFormOperator> {
        let nd = self.check_node(j)?;
        let n = self.rank();
        let frac = RatFunX::inv_binomial(nd.m, nd.a.clone())?.scale(&nd.c);
        let front = frac.add(&RatFunX::constant(n, nd.t_front.clone()));
        Ok(NormalFormOperator::term(nd.g.clone(), front).add(&NormalFormOperator::multiplication(n, frac.neg())))
    }

    /// `T̂_j^{-1} = T̂_j - (q_j^{1/2} - q_j^{-1/2})`.
    pub fn demazure_lusztig_inv(&self, j: usize) -> Result<NormalFormOperator> {
        let nd = self.check_node(j)?;
        Ok(self.demazure_lusztig(j)?.sub(&NormalFormOperator::scalar(self.rank(), nd.c.clone())))
    }

    pub fn pi_operator(&self, r: usize) -> Result<NormalFormOperator> {
        Ok(NormalFormOperator::group(self.pi_elt(r)?.clone()))
    }

    pub fn pi_operator_inv(&self, r: usize) -> Result<NormalFormOperator> {
        Ok(NormalFormOperator::group(self.pi_elt(r)?.inverse()))
    }

    /// `T_ĝ = π_r T̂_{j_1} ⋯ T̂_{j_l}` along a reduced word of `g`.
    pub fn t_w_product(&self, g: &GroupElt) -> NormalFormOperator {
        self.t_word(&reduced_word(self.d, g)).expect("reduced words use valid nodes")
    }

    pub fn t_word(&self, w: &ReducedWord) -> Result<NormalFormOperator> {
        let mut acc = self.pi_operator(w.r)?;
        for &j in &w.word {
            acc = acc.mul(self.d, &self.demazure_lusztig(j)?);
        }
        Ok(acc)
    }

    fn y_generators(&self) -> &[(NormalFormOperator, NormalFormOperator)] {
        self.y_gens.get_or_init(|| {
            self.y_words
                .iter()
                .map(|w| {
                    let y = self.t_word(w).expect("valid word");
                    let mut yi = self.pi_operator_inv(w.r).expect("valid index");
                    for &j in &w.word {
                        yi = self.demazure_lusztig_inv(j).expect("valid node").mul(self.d, &yi);
                    }
                    (y, yi)
                })
                .collect()
        })
    }

    /// `Y_b = Π Y_i^{k_i}`.
    pub fn y_operator(&self, b: &Weight) -> Arc<NormalFormOperator> {
        if let Some(op) = self.y_cache.read().expect("cache lock").get(b) {
            return op.clone();
        }
        let gens = self.y_generators();
        let mut acc = NormalFormOperator::identity(self.rank());
        for (i, &k) in b.coords().iter().enumerate() {
            let g = if k > 0 { &gens[i].0 } else { &gens[i].1 };
            for _ in 0..k.unsigned_abs() {
                acc = acc.mul(self.d, g);
            }
        }
        let acc = Arc::new(acc);
        self.y_cache.write().expect("cache lock").insert(b.clone(), acc.clone());
        acc
    }

    /// `f(Y)` for `f = Σ g_b y_b` (stored as a Laurent polynomial in `y`).
    pub fn y_polynomial(&self, f: &LaurentPoly) -> NormalFormOperator {
        let mut acc = NormalFormOperator::zero(self.rank());
        for (b, c) in f.terms() {
            acc = acc.add(&self.y_operator(b).scale(c));
        }
        acc
    }

    // ---- direct action ----

    pub fn apply_t(&self, j: usize, f: &LaurentPoly) -> Result<LaurentPoly> {
        let nd = self.check_node(j)?;
        let sf = f.act(self.d, &nd.g);
        let diff = sf.sub(f);
        let q = divide_binomial(&diff, nd.m, &nd.a)?.ok_or(Error::NotPolynomial)?;
        Ok(sf.scale(&nd.t_front).add(&q.scale(&nd.c)))
    }

    pub fn apply_t_inv(&self, j: usize, f: &LaurentPoly) -> Result<LaurentPoly> {
        let nd = self.check_node(j)?;
        Ok(self.apply_t(j, f)?.sub(&f.scale(&nd.c)))
    }

    pub fn apply_pi(&self, r: usize, f: &LaurentPoly) -> Result<LaurentPoly> {
        Ok(f.act(self.d, self.pi_elt(r)?))
    }

    pub fn apply_pi_inv(&self, r: usize, f: &LaurentPoly) -> Result<LaurentPoly> {
        Ok(f.act(self.d, &self.pi_elt(r)?.inverse()))
    }

    /// `Y_i^{±1}(f)`.
    pub fn apply_y_generator(&self, i: usize, inverse: bool, f: &LaurentPoly) -> Result<LaurentPoly> {
        let w = &self.y_words[i];
        let mut g = f.clone();
        if inverse {
            g = self.apply_pi_inv(w.r, &g)?;
            for &j in &w.word {
                g = self.apply_t_inv(j, &g)?;
            }
        } else {
            for &j in w.word.iter().rev() {
                g = self.apply_t(j, &g)?;
            }
            g = self.apply_pi(w.r, &g)?;
        }
        Ok(g)
    }

    pub fn apply_y(&self, b: &Weight, f: &LaurentPoly) -> Result<LaurentPoly> {
        let mut g = f.clone();
        for (i, &k) in b.coords().iter().enumerate() {
            for _ in 0..k.unsigned_abs() {
                g = self.apply_y_generator(i, k < 0, &g)?;
            }
        }
        Ok(g)
    }

    /// `f(Y)(g)`.
    pub fn apply_y_polynomial(&self, f: &LaurentPoly, g: &LaurentPoly) -> Result<LaurentPoly> {
        let mut acc = LaurentPoly::zero();
        for (b, c) in f.terms() {
            acc = acc.add(&self.apply_y(b, g)?.scale(c));
        }
        Ok(acc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::root_datum::Family;

    fn w(c: &[i64]) -> Weight {
        Weight::from_slice(c)
    }

    fn q_half() -> ParamScalar {
        ParamScalar::monomial(ParamMonomial::power(Param::QLong, 1, 2))
    }

    #[test]
    fn t_fixes_constants_up_to_scale() {
        let d = RootDatum::new(Family::A, 2).unwrap();
        let h = Daha::new(&d);
        for j in 0..=2 {
            let one = LaurentPoly::one(2);
            assert_eq!(h.apply_t(j, &one).unwrap(), one.scale(h.t_half(j)));
            assert_eq!(h.demazure_lusztig(j).unwrap().apply(&d, &one).unwrap(), one.scale(h.t_half(j)));
        }
    }

    #[test]
    fn a1_t_on_x() {
        let d = RootDatum::new(Family::A, 1).unwrap();
        let h = Daha::new(&d);
        let x = LaurentPoly::x(w(&[1]));
        let expect = LaurentPoly::monomial(w(&[-1]), q_half().inv().unwrap());
        assert_eq!(h.apply_t(1, &x).unwrap(), expect);
        assert_eq!(h.demazure_lusztig(1).unwrap().apply(&d, &x).unwrap(), expect);
    }

    #[test]
    fn normal_form_and_direct_action_agree() {
        let d = RootDatum::new(Family::B, 2).unwrap();
        let h = Daha::new(&d);
        let f = LaurentPoly::from_terms([(w(&[1, -2]), 1.into()), (w(&[0, 1]), 3.into())]);
        for j in 0..=2 {
            let nf = h.demazure_lusztig(j).unwrap();
            assert_eq!(nf.apply(&d, &f).unwrap(), h.apply_t(j, &f).unwrap());
            let nfi = h.demazure_lusztig_inv(j).unwrap();
            assert_eq!(nfi.mul(&d, &nf), NormalFormOperator::identity(2));
        }
        for i in 0..2 {
            let b = Weight::basis(2, i);
            assert_eq!(h.y_operator(&b).apply(&d, &f).unwrap(), h.apply_y(&b, &f).unwrap());
            assert_eq!(h.y_operator(&b.neg()).apply(&d, &f).unwrap(), h.apply_y(&b.neg(), &f).unwrap());
        }
    }

    #[test]
    fn y_on_one_is_l_q() {
        let d = RootDatum::new(Family::A, 2).unwrap();
        let h = Daha::new(&d);
        let b = w(&[2, 1]);
        let one = LaurentPoly::one(2);
        let expect = one.scale(&ParamScalar::monomial(crate::laurent::q_rho_power(&d, &b, 1)));
        assert_eq!(h.apply_y(&b, &one).unwrap(), expect);
    }

    #[test]
    fn y_generators_commute() {
        let d = RootDatum::new(Family::A, 2).unwrap();
        let h = Daha::new(&d);
        let y1 = h.y_operator(&w(&[1, 0]));
        let y2 = h.y_operator(&w(&[0, 1]));
        assert!(y1.commutator(&d, &y2).is_zero());
        assert_eq!(*h.y_operator(&w(&[1, 1])), y1.mul(&d, &y2));
    }

    #[test]
    fn reflections_from_t() {
        let d = RootDatum::new(Family::B, 2).unwrap();
        let h = Daha::new(&d);
        for j in 0..=2 {
            let sj = h.reflection_via_t(j, &h.demazure_lusztig(j).unwrap()).unwrap();
            assert_eq!(sj, NormalFormOperator::group(s(&d, j)));
        }
    }

    #[test]
    fn a1_pi_squared_is_identity() {
        let d = RootDatum::new(Family::A, 1).unwrap();
        let h = Daha::new(&d);
        let p = h.pi_operator(1).unwrap();
        assert_eq!(p.mul(&d, &p), NormalFormOperator::identity(1));
        let t = h.demazure_lusztig(1).unwrap();
        let t0 = h.demazure_lusztig(0).unwrap();
        assert_eq!(p.mul(&d, &t).mul(&d, &h.pi_operator_inv(1).unwrap()), t0);
    }
}
