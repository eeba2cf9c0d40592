//! Symmetric Macdonald polynomials as joint eigenfunctions of the
//! `L`-operators, together with the identities they satisfy.

mod evaluation;
mod inner;
mod linalg;
mod shift;

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::sync::{Arc, OnceLock, RwLock};

use crate::daha::{Daha, NormalFormOperator};
use crate::error::{Error, Result};
use crate::laurent::{monomial_sym, orbit_sum, rho_point_monomial, LaurentPoly};
use crate::param::{MonomialMap, Param, ParamMonomial, ParamScalar};
use crate::root_datum::{Rat, RootDatum, Weight};

pub use evaluation::{
    duality_check, evaluation_value, evaluation_value_partial, specialized_evaluation_value, DualityReport,
};
pub use inner::{gram_schmidt, inner_product, mu_partial, mu_truncated};
pub use shift::{
    apply_shift, class_set_weight, d_term, d_term_monomial, g_factor, intertwining_check, key_lemma_check,
    shift_action_check, shift_operator, shift_params, x_factor, y_factor, KeyLemmaReport, ShiftSetting,
};

/// Whether parameters are formal or specialized at `q_ν = δ_ν^{k_ν}`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum ParamMode {
    Generic,
    /// One `k_ν` per length class, long first.
    Specialized(Vec<u32>),
}

impl ParamMode {
    pub fn map(&self, d: &RootDatum) -> Result<MonomialMap> {
        match self {
            ParamMode::Generic => Ok(MonomialMap::identity()),
            ParamMode::Specialized(k) => specialization(d, k),
        }
    }
}

impl fmt::Display for ParamMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParamMode::Generic => f.write_str("generic"),
            ParamMode::Specialized(k) => {
                let k: Vec<String> = k.iter().map(|x| x.to_string()).collect();
                write!(f, "k=({})", k.join(","))
            }
        }
    }
}

/// `q_ν ↦ δ^{2 k_ν / ν}`.
pub fn specialization(d: &RootDatum, k: &[u32]) -> Result<MonomialMap> {
    let classes = d.length_classes();
    if k.len() != classes.len() {
        return Err(Error::DimensionMismatch { expected: classes.len(), got: k.len() });
    }
    let mut map = MonomialMap::identity();
    for (&nu, &kv) in classes.iter().zip(k) {
        let e = Rat::from_integer(2 * kv as i64) / nu;
        map = map.set(d.class_param(nu), ParamMonomial::new(Param::Delta, e)?);
    }
    Ok(map)
}

/// The joint eigenvalue point `y_λ ↦ δ^{-(λ,b)} Π_ν q_ν^{(λ,ρ_ν)}`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SpectralPoint {
    pub b: Weight,
}

impl SpectralPoint {
    pub fn new(b: Weight) -> Self {
        SpectralPoint { b }
    }

    pub fn monomial(&self, d: &RootDatum, lambda: &Weight) -> ParamMonomial {
        rho_point_monomial(d, lambda, &self.b.neg(), 1)
    }

    /// `f(q^ρ δ^{-b})` under the representation's parameters.
    pub fn evaluate(&self, h: &Daha<'_>, f: &LaurentPoly) -> ParamScalar {
        let d = h.datum();
        f.evaluate_with(|l| {
            ParamScalar::monomial(
                h.params().apply_monomial(&self.monomial(d, l)).expect("spectral exponents stay representable"),
            )
        })
    }
}

/// `{c ∈ B_- : c - b ∈ A_+}`, ordered so that `b` comes first and every `c`
/// follows all weights below it.
///
/// Antidominant weights above `b` are connected to `b` by steps adding a
/// single positive coroot, which is what the walk uses.
pub fn dominance_cone(d: &RootDatum, b: &Weight) -> Result<Vec<Weight>> {
    check_antidominant(d, b)?;
    let pos: Vec<Weight> = d.positive_roots().iter().map(|r| r.coroot.clone()).collect();
    let mut seen = BTreeSet::from([b.clone()]);
    let mut queue = VecDeque::from([b.clone()]);
    while let Some(c) = queue.pop_front() {
        for a in &pos {
            let e = c.add(a);
            if e.is_antidominant() && seen.insert(e.clone()) {
                queue.push_back(e);
            }
        }
    }
    let mut out: Vec<Weight> = seen.into_iter().collect();
    let height = |c: &Weight| -> Rat { d.coroot_coordinates(&c.sub(b)).iter().copied().sum() };
    out.sort_by(|x, y| height(x).cmp(&height(y)).then_with(|| x.cmp(y)));
    Ok(out)
}

fn check_antidominant(d: &RootDatum, b: &Weight) -> Result<()> {
    if b.rank() != d.rank() {
        return Err(Error::DimensionMismatch { expected: d.rank(), got: b.rank() });
    }
    if !b.is_antidominant() {
        return Err(Error::NotAntidominant(b.to_string()));
    }
    Ok(())
}

/// `L_f = [f(Ŷ)]_†` for a `W`-invariant `f` in `y`.
pub fn l_operator(h: &Daha<'_>, f: &LaurentPoly) -> Result<NormalFormOperator> {
    if !f.is_w_invariant(h.datum()) {
        return Err(Error::NotInvariant);
    }
    Ok(h.dagger_restrict(&h.y_polynomial(f)))
}

/// `L_f(g)` for symmetric `g`, computed by applying `f(Y)` directly.
pub fn apply_l(h: &Daha<'_>, f: &LaurentPoly, g: &LaurentPoly) -> Result<LaurentPoly> {
    if !f.is_w_invariant(h.datum()) {
        return Err(Error::NotInvariant);
    }
    h.apply_y_polynomial(f, g)
}

/// Orbit sums `Σ_{c ∈ W(b_i)} y_c` of the fundamental weights, smallest
/// orbits first.
pub fn fundamental_orbit_sums(d: &RootDatum) -> Vec<LaurentPoly> {
    let mut sums: Vec<LaurentPoly> = (0..d.rank()).map(|i| orbit_sum(d, &Weight::basis(d.rank(), i))).collect();
    sums.sort_by_key(|s| s.len());
    sums
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MacdonaldPoly {
    pub b: Weight,
    pub mode: ParamMode,
    pub poly: LaurentPoly,
}

impl MacdonaldPoly {
    /// Coefficients on the `m_c` basis, in cone order.
    pub fn monomial_coefficients(&self, d: &RootDatum) -> Result<Vec<(Weight, ParamScalar)>> {
        Ok(dominance_cone(d, &self.b)?
            .into_iter()
            .map(|c| {
                let v = self.poly.coeff(&c);
                (c, v)
            })
            .filter(|(_, v)| !v.is_zero())
            .collect())
    }

    /// Serialized value preceded by a metadata header.
    pub fn export(&self, d: &RootDatum) -> String {
        format!("# type={} rank={} b={} mode={}\n{}", d.name(), d.rank(), self.b, self.mode, self.poly)
    }
}

/// The eigen-solve at the parameters of `h`: the `m_c`-coefficients `u_c`
/// of `p_b = Σ u_c m_c` satisfy
/// `(λ_b - L_{cc}) u_c = Σ_{c' < c} L_{c c'} u_{c'}`.
pub fn eigen_solve(h: &Daha<'_>, b: &Weight) -> Result<LaurentPoly> {
    let d = h.datum();
    let cone = dominance_cone(d, b)?;
    let fs = fundamental_orbit_sums(d);
    let index: HashMap<&Weight, usize> = cone.iter().enumerate().map(|(i, c)| (c, i)).collect();
    let mut mats: Vec<Vec<Vec<ParamScalar>>> = Vec::new();
    let mut u = vec![ParamScalar::zero(); cone.len()];
    u[0] = ParamScalar::one();
    for k in 1..cone.len() {
        let mut solved = false;
        for fi in 0..fs.len() {
            if mats.len() <= fi {
                mats.push(l_matrix(h, &fs[fi], &cone, &index)?);
            }
            let m = &mats[fi];
            let gap = &m[0][0] - &m[k][k];
            if gap.is_zero() {
                continue;
            }
            let rhs: ParamScalar = (0..k).map(|j| &m[j][k] * &u[j]).sum();
            u[k] = rhs.checked_div(&gap)?;
            solved = true;
            break;
        }
        if !solved {
            return Err(Error::EigenvalueCollision(b.to_string(), cone[k].to_string()));
        }
    }
    let mut p = LaurentPoly::zero();
    for (c, uc) in cone.iter().zip(&u) {
        if !uc.is_zero() {
            p = p.add(&monomial_sym(d, c)?.scale(uc));
        }
    }
    Ok(p)
}

/// Columns `L_f m_c` on the `m`-basis of the cone; checks triangularity and
/// the diagonal `f(q^ρ δ^{-c})`.
fn l_matrix(
    h: &Daha<'_>,
    f: &LaurentPoly,
    cone: &[Weight],
    index: &HashMap<&Weight, usize>,
) -> Result<Vec<Vec<ParamScalar>>> {
    let d = h.datum();
    let mut cols = Vec::with_capacity(cone.len());
    for (j, c) in cone.iter().enumerate() {
        let image = apply_l(h, f, &monomial_sym(d, c)?)?;
        let mut col = vec![ParamScalar::zero(); cone.len()];
        for (e, v) in image.terms() {
            if !e.is_antidominant() {
                continue;
            }
            match index.get(e) {
                Some(&k) if k == j || d.dominates(e, c) => col[k] = v.clone(),
                _ => return Err(Error::NotTriangular),
            }
        }
        if col[j] != SpectralPoint::new(c.clone()).evaluate(h, f) {
            return Err(Error::NotTriangular);
        }
        cols.push(col);
    }
    Ok(cols)
}

type CacheKey = (String, Weight, ParamMode);
type CacheSlot = Arc<OnceLock<Result<Arc<MacdonaldPoly>>>>;

fn cache() -> &'static RwLock<HashMap<CacheKey, CacheSlot>> {
    static CACHE: OnceLock<RwLock<HashMap<CacheKey, CacheSlot>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// `p_b`, memoized per `(datum, b, mode)`.
///
/// Specialized values are obtained from the generic polynomial when the
/// specialization has no pole, and otherwise by solving at the specialized
/// parameters directly.
pub fn macdonald_polynomial(d: &RootDatum, b: &Weight, mode: &ParamMode) -> Result<Arc<MacdonaldPoly>> {
    check_antidominant(d, b)?;
    let key = (d.name(), b.clone(), mode.clone());
    let slot = {
        let read = cache().read().expect("cache lock");
        read.get(&key).cloned()
    };
    let slot = match slot {
        Some(s) => s,
        None => cache().write().expect("cache lock").entry(key).or_default().clone(),
    };
    slot.get_or_init(|| compute(d, b, mode).map(Arc::new)).clone()
}

fn compute(d: &RootDatum, b: &Weight, mode: &ParamMode) -> Result<MacdonaldPoly> {
    let poly = match mode {
        ParamMode::Generic => eigen_solve(&Daha::new(d), b)?,
        ParamMode::Specialized(k) => {
            let map = specialization(d, k)?;
            let generic = macdonald_polynomial(d, b, &ParamMode::Generic)?;
            match generic.poly.substitute(&map) {
                Ok(p) => p,
                Err(Error::SpecializationPole) => eigen_solve(&Daha::with_params(d, map)?, b)?,
                Err(e) => return Err(e),
            }
        }
    };
    Ok(MacdonaldPoly { b: b.clone(), mode: mode.clone(), poly })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::root_datum::Family;

    fn w(c: &[i64]) -> Weight {
        Weight::from_slice(c)
    }

    fn q() -> ParamScalar {
        ParamScalar::param(Param::QLong)
    }

    fn delta() -> ParamScalar {
        ParamScalar::param(Param::Delta)
    }

    /// Antidominant weights `c` with `c - b ∈ A_+`, by scanning a box.
    fn cone_brute(d: &RootDatum, b: &Weight, bound: i64) -> BTreeSet<Weight> {
        let n = d.rank();
        let mut out = BTreeSet::new();
        let mut idx = vec![-bound; n];
        loop {
            let c = Weight::from_slice(&idx);
            if c.is_antidominant() && d.dominates(&c, b) {
                out.insert(c);
            }
            let mut i = 0;
            loop {
                if i == n {
                    return out;
                }
                idx[i] += 1;
                if idx[i] <= 0 {
                    break;
                }
                idx[i] = -bound;
                i += 1;
            }
        }
    }

    #[test]
    fn cone_matches_brute_force() {
        for t in ["A1", "A2", "B2", "C2", "G2", "A3", "B3"] {
            let d: RootDatum = t.parse().unwrap();
            let n = d.rank();
            for b in crate::daha::box_weights(n, 3) {
                if !b.is_antidominant() {
                    continue;
                }
                let cone = dominance_cone(&d, &b).unwrap();
                assert_eq!(cone[0], b);
                let set: BTreeSet<Weight> = cone.iter().cloned().collect();
                let bound = 3 * b.coords().iter().map(|x| x.abs()).max().unwrap_or(0) + 1;
                assert_eq!(set, cone_brute(&d, &b, bound), "{t} {b}");
                for (i, c) in cone.iter().enumerate() {
                    for e in &cone[..i] {
                        assert!(!d.dominates(e, c) || e == c, "order {t} {b}");
                    }
                }
            }
        }
    }

    #[test]
    fn a1_examples() {
        let d = RootDatum::new(Family::A, 1).unwrap();
        let p = macdonald_polynomial(&d, &w(&[-1]), &ParamMode::Generic).unwrap();
        assert_eq!(p.poly, monomial_sym(&d, &w(&[-1])).unwrap());
        let p = macdonald_polynomial(&d, &w(&[-2]), &ParamMode::Generic).unwrap();
        let one = ParamScalar::one();
        let coef = ((&one + &delta()) * (&one - &q())).checked_div(&(&one - &(&delta() * &q()))).unwrap();
        let expect = monomial_sym(&d, &w(&[-2])).unwrap().add(&LaurentPoly::constant(1, coef));
        assert_eq!(p.poly, expect);
        assert_eq!(p.monomial_coefficients(&d).unwrap().len(), 2);
    }

    #[test]
    fn l_operator_basics() {
        let d = RootDatum::new(Family::A, 1).unwrap();
        let h = Daha::new(&d);
        assert_eq!(l_operator(&h, &LaurentPoly::one(1)).unwrap(), NormalFormOperator::identity(1));
        assert_eq!(l_operator(&h, &LaurentPoly::x(w(&[1]))), Err(Error::NotInvariant));
        let f = orbit_sum(&d, &w(&[1]));
        let l1 = apply_l(&h, &f, &LaurentPoly::one(1)).unwrap();
        let t = ParamScalar::monomial(ParamMonomial::power(Param::QLong, 1, 2));
        assert_eq!(l1, LaurentPoly::constant(1, &t + &t.inv().unwrap()));
        assert_eq!(l1.as_constant().unwrap(), SpectralPoint::new(w(&[0])).evaluate(&h, &f));
        let nf = l_operator(&h, &f).unwrap();
        let m = monomial_sym(&d, &w(&[-2])).unwrap();
        assert_eq!(nf.apply(&d, &m).unwrap(), apply_l(&h, &f, &m).unwrap());
    }

    #[test]
    fn eigen_consistency_a1_a2() {
        for t in ["A1", "A2"] {
            let d: RootDatum = t.parse().unwrap();
            let h = Daha::new(&d);
            for b in crate::daha::box_weights(d.rank(), 3) {
                if !b.is_antidominant() || b.height().abs() > 3 {
                    continue;
                }
                let p = macdonald_polynomial(&d, &b, &ParamMode::Generic).unwrap();
                assert!(p.poly.is_w_invariant(&d));
                assert_eq!(p.poly.coeff(&b), ParamScalar::one());
                for f in fundamental_orbit_sums(&d) {
                    let lhs = apply_l(&h, &f, &p.poly).unwrap();
                    let ev = SpectralPoint::new(b.clone()).evaluate(&h, &f);
                    assert_eq!(lhs, p.poly.scale(&ev), "{t} {b}");
                }
            }
        }
    }

    #[test]
    fn shifted_rho_is_monomial_only_for_trivial_cones() {
        for t in ["A1", "A2", "B2", "G2"] {
            let d: RootDatum = t.parse().unwrap();
            for &nu in d.length_classes() {
                let r = d.r_nu(nu).neg();
                let p = macdonald_polynomial(&d, &r, &ParamMode::Generic).unwrap();
                let trivial = dominance_cone(&d, &r).unwrap().len() == 1;
                assert_eq!(p.poly == monomial_sym(&d, &r).unwrap(), trivial, "{t}");
            }
        }
        let a2 = RootDatum::new(Family::A, 2).unwrap();
        let p = macdonald_polynomial(&a2, &w(&[-1, -1]), &ParamMode::Generic).unwrap();
        assert!(!p.poly.coeff(&w(&[0, 0])).is_zero());
    }

    #[test]
    fn cache_returns_same_value() {
        let d = RootDatum::new(Family::B, 2).unwrap();
        let b = w(&[-1, -1]);
        let a = macdonald_polynomial(&d, &b, &ParamMode::Generic).unwrap();
        let handles: Vec<_> = (0..4)
            .map(|_| {
                let b = b.clone();
                std::thread::spawn(move || {
                    let d = RootDatum::new(Family::B, 2).unwrap();
                    macdonald_polynomial(&d, &b, &ParamMode::Generic).unwrap()
                })
            })
            .collect();
        for hd in handles {
            assert!(Arc::ptr_eq(&a, &hd.join().unwrap()));
        }
    }

    #[test]
    fn rejects_non_antidominant() {
        let d = RootDatum::new(Family::A, 1).unwrap();
        assert!(matches!(macdonald_polynomial(&d, &w(&[1]), &ParamMode::Generic), Err(Error::NotAntidominant(_))));
    }
}
