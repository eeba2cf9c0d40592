//! Shift operators `G_v = X_v^{-1} [Ŷ_v]_†` and the Key Lemma.

use super::{macdonald_polynomial, ParamMode};
use crate::daha::{Daha, NormalFormOperator, RatFunX};
use crate::error::{Error, Result};
use crate::laurent::{delta_power, monomial_sym, LaurentPoly, Sign};
use crate::param::{MonomialMap, Param, ParamMonomial, ParamScalar};
use crate::root_datum::{Rat, Root, RootDatum, Weight};

/// A non-empty set `v` of root lengths, optionally with `q_ν = 1` imposed
/// for `ν ∉ v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShiftSetting {
    pub v: Vec<Rat>,
    pub restrict: bool,
}

impl ShiftSetting {
    pub fn new(d: &RootDatum, v: &[Rat], restrict: bool) -> Result<Self> {
        if v.is_empty() {
            return Err(Error::EmptyClassSet);
        }
        let mut out: Vec<Rat> = Vec::new();
        for &nu in v {
            if !d.length_classes().contains(&nu) {
                return Err(Error::UnknownLengthClass(nu.to_string()));
            }
            if !out.contains(&nu) {
                out.push(nu);
            }
        }
        Ok(ShiftSetting { v: out, restrict })
    }

    /// All length classes (the hypothesis `q_ν = 1` off `v` is then vacuous).
    pub fn full(d: &RootDatum) -> Self {
        ShiftSetting { v: d.length_classes().to_vec(), restrict: false }
    }

    pub fn contains(&self, nu: Rat) -> bool {
        self.v.contains(&nu)
    }

    /// Whether `q_ν = 1` holds off `v`, as the shift theorem requires.
    pub fn hypothesis_holds(&self, d: &RootDatum) -> bool {
        self.restrict || d.length_classes().iter().all(|&nu| self.contains(nu))
    }

    /// The parameters `q` (identity, or `q_ν ↦ 1` off `v`).
    pub fn base_map(&self, d: &RootDatum) -> MonomialMap {
        let mut map = MonomialMap::identity();
        if self.restrict {
            for &nu in d.length_classes() {
                if !self.contains(nu) {
                    map = map.set(d.class_param(nu), ParamMonomial::one());
                }
            }
        }
        map
    }

    /// The parameters `q δ_v`.
    pub fn shifted_map(&self, d: &RootDatum) -> Result<MonomialMap> {
        self.base_map(d).then(&shift_params(d, &self.v)?)
    }

    fn roots<'d>(&'d self, d: &'d RootDatum) -> impl Iterator<Item = &'d Root> + 'd {
        d.positive_roots().iter().filter(move |r| self.contains(r.norm))
    }
}

/// `r_v = Σ_{ν ∈ v} r_ν`.
pub fn class_set_weight(d: &RootDatum, v: &[Rat]) -> Weight {
    v.iter().fold(Weight::zero(d.rank()), |acc, &nu| acc.add(&d.r_nu(nu)))
}

/// `q_ν ↦ q_ν δ^{2/ν}` for `ν ∈ v`.
pub fn shift_params(d: &RootDatum, v: &[Rat]) -> Result<MonomialMap> {
    let mut map = MonomialMap::identity();
    for &nu in v {
        let p = d.class_param(nu);
        let image = ParamMonomial::power(p, 1, 1).mul(&ParamMonomial::new(Param::Delta, Rat::from_integer(2) / nu)?);
        map = map.set(p, image);
    }
    Ok(map)
}

fn q_of(d: &RootDatum, r: &Root, num: i64, den: i64) -> ParamMonomial {
    ParamMonomial::power(d.class_param(r.norm), num, den)
}

/// `X_v = Π_{ν_a ∈ v} ((q_a x_a)^{1/2} - (q_a x_a)^{-1/2})
///      = Π q_a^{-1/2} · x_{-r_v} · Π (q_a x_a - 1)`.
pub fn x_factor(d: &RootDatum, s: &ShiftSetting) -> LaurentPoly {
    let n = d.rank();
    let mut out = LaurentPoly::x(class_set_weight(d, &s.v).neg());
    for r in s.roots(d) {
        let lin =
            LaurentPoly::monomial(r.coroot.clone(), ParamScalar::monomial(q_of(d, r, 1, 1))).sub(&LaurentPoly::one(n));
        out = out.mul(&lin).scale(&ParamScalar::monomial(q_of(d, r, -1, 2)));
    }
    out
}

fn x_factor_inv(d: &RootDatum, s: &ShiftSetting) -> Result<RatFunX> {
    let mut out = RatFunX::from_poly(LaurentPoly::x(class_set_weight(d, &s.v)));
    for r in s.roots(d) {
        out = out
            .mul(&RatFunX::inv_binomial(q_of(d, r, 1, 1), r.coroot.clone())?)
            .scale(&ParamScalar::monomial(q_of(d, r, 1, 2)));
    }
    Ok(out)
}

/// `Y_v = Π_{ν_a ∈ v} ((q_a y_a^{-1})^{1/2} - (q_a y_a^{-1})^{-1/2})
///      = Π q_a^{1/2} · y_{-r_v} · Π (1 - q_a^{-1} y_a)`, as a polynomial in `y`.
pub fn y_factor(d: &RootDatum, s: &ShiftSetting) -> LaurentPoly {
    let n = d.rank();
    let mut out = LaurentPoly::x(class_set_weight(d, &s.v).neg());
    for r in s.roots(d) {
        let lin =
            LaurentPoly::one(n).sub(&LaurentPoly::monomial(r.coroot.clone(), ParamScalar::monomial(q_of(d, r, -1, 1))));
        out = out.mul(&lin).scale(&ParamScalar::monomial(q_of(d, r, 1, 2)));
    }
    out
}

fn check_setting(d: &RootDatum, h: &Daha<'_>, s: &ShiftSetting) -> Result<()> {
    if s.v.is_empty() {
        return Err(Error::EmptyClassSet);
    }
    debug_assert!(std::ptr::eq(d, h.datum()));
    Ok(())
}

/// `G_v` in normal form, at the parameters of `h`.
pub fn shift_operator(h: &Daha<'_>, s: &ShiftSetting) -> Result<NormalFormOperator> {
    let d = h.datum();
    check_setting(d, h, s)?;
    let y = y_factor(d, s).substitute(h.params())?;
    let xinv = x_factor_inv(d, s)?.substitute(h.params())?;
    Ok(h.dagger_restrict(&h.y_polynomial(&y)).left_mul(&xinv))
}

/// `G_v(p)` for symmetric `p`, by direct action.
pub fn apply_shift(h: &Daha<'_>, s: &ShiftSetting, p: &LaurentPoly) -> Result<LaurentPoly> {
    let d = h.datum();
    check_setting(d, h, s)?;
    let y = y_factor(d, s).substitute(h.params())?;
    let xinv = x_factor_inv(d, s)?.substitute(h.params())?;
    xinv.mul_poly(&h.apply_y_polynomial(&y, p)?).into_poly()
}

/// `y_a(q^{sρ/2} δ^{-s b/2}) = δ^{-s(a,b)/2} Π_ν q_ν^{s(a,ρ_ν)/2}`.
fn y_half(d: &RootDatum, a: &Weight, b: &Weight, s: i64) -> ParamScalar {
    let mut m = delta_power(-d.pair_weights(a, b) * s / 2);
    for &nu in d.length_classes() {
        let e = d.pair_rho(a, nu) * s / 2;
        m = m.mul(&ParamMonomial::power(d.class_param(nu), *e.numer(), *e.denom()));
    }
    ParamScalar::monomial(m)
}

/// `g_v(b) = Π_{ν_a ∈ v} (y_a(q^{ρ/2} δ^{-b/2}) - q_a y_a(q^{-ρ/2} δ^{b/2}))`, generic.
pub fn g_factor(d: &RootDatum, s: &ShiftSetting, b: &Weight) -> ParamScalar {
    s.roots(d)
        .map(|r| {
            let a = &r.coroot;
            y_half(d, a, b, 1) - y_half(d, a, b, -1).mul_monomial(&q_of(d, r, 1, 1))
        })
        .product()
}

/// `Π_{ν_a ∈ v} (q_a^{-1} y_a(q^{-ρ/2} δ^{b/2}) - y_a(q^{ρ/2} δ^{-b/2}))`, generic.
fn key_product(d: &RootDatum, s: &ShiftSetting, b: &Weight) -> ParamScalar {
    s.roots(d)
        .map(|r| {
            let a = &r.coroot;
            y_half(d, a, b, -1).mul_monomial(&q_of(d, r, -1, 1)) - y_half(d, a, b, 1)
        })
        .product()
}

fn d_product(d: &RootDatum, s: &ShiftSetting) -> Result<ParamScalar> {
    let zero = Weight::zero(d.rank());
    let shift = shift_params(d, &s.v)?;
    let mut acc = ParamScalar::one();
    for r in s.roots(d) {
        let a = &r.coroot;
        let lo = y_half(d, a, &zero, -1).substitute(&shift)?.mul_monomial(&q_of(d, r, -1, 1));
        let hi = y_half(d, a, &zero, 1).substitute(&shift)?;
        acc = acc * (lo - hi);
    }
    Ok(acc)
}

/// `d_v = Π_{ν_a ∈ v} (q_a^{-1} y_a((qδ_v)^{-ρ/2}) - y_a((qδ_v)^{ρ/2})) p_{-r_v}(q^{-ρ})`,
/// at the setting's base parameters. This is what the lemma itself forces
/// at `b = -r_v`, where `p′ = 1`.
pub fn d_term(d: &RootDatum, s: &ShiftSetting) -> Result<ParamScalar> {
    let zero = Weight::zero(d.rank());
    let p = macdonald_polynomial(d, &class_set_weight(d, &s.v).neg(), &ParamMode::Generic)?;
    (d_product(d, s)? * p.poly.evaluate_at_rho_point(d, &zero, Sign::Minus)).substitute(&s.base_map(d))
}

/// The same product with `m_{-r_v}(q^{-ρ})` in place of `p_{-r_v}(q^{-ρ})`;
/// the two agree exactly when no antidominant weight lies strictly above
/// `-r_v`.
pub fn d_term_monomial(d: &RootDatum, s: &ShiftSetting) -> Result<ParamScalar> {
    let zero = Weight::zero(d.rank());
    let m = monomial_sym(d, &class_set_weight(d, &s.v).neg())?;
    (d_product(d, s)? * m.evaluate_at_rho_point(d, &zero, Sign::Minus)).substitute(&s.base_map(d))
}

/// `p_b` at the setting's base parameters.
fn base_poly(d: &RootDatum, s: &ShiftSetting, b: &Weight) -> Result<LaurentPoly> {
    macdonald_polynomial(d, b, &ParamMode::Generic)?.poly.substitute(&s.base_map(d))
}

/// `[L̂_f X_v]_† = X_v L_f^{qδ_v}` as normal forms.
pub fn intertwining_check(d: &RootDatum, f: &LaurentPoly, s: &ShiftSetting) -> Result<bool> {
    if !f.is_w_invariant(d) {
        return Err(Error::NotInvariant);
    }
    let h = Daha::with_params(d, s.base_map(d))?;
    let hs = Daha::with_params(d, s.shifted_map(d)?)?;
    let xv = RatFunX::from_poly(x_factor(d, s).substitute(&s.base_map(d))?);
    let lhs = h.dagger_restrict(&h.y_polynomial(f).mul(d, &NormalFormOperator::multiplication(d.rank(), xv.clone())));
    let rhs = hs.dagger_restrict(&hs.y_polynomial(f)).left_mul(&xv);
    Ok(lhs == rhs)
}

/// `G_v(p_b) = g_v(b) p_{b+r_v}^{qδ_v}`, with `p_c = 0` off `B_-`.
pub fn shift_action_check(d: &RootDatum, b: &Weight, s: &ShiftSetting) -> Result<bool> {
    let h = Daha::with_params(d, s.base_map(d))?;
    let lhs = apply_shift(&h, s, &base_poly(d, s, b)?)?;
    let c = b.add(&class_set_weight(d, &s.v));
    if !c.is_antidominant() {
        return Ok(lhs.is_zero());
    }
    let g = g_factor(d, s, b).substitute(&s.base_map(d))?;
    let shifted = macdonald_polynomial(d, &c, &ParamMode::Generic)?.poly.substitute(&s.shifted_map(d)?)?;
    Ok(lhs == shifted.scale(&g))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KeyLemmaReport {
    pub b: Weight,
    /// `d_v p′((qδ_v)^{-ρ})`.
    pub lhs: ParamScalar,
    /// `Π (q_a^{-1} y_a(q^{-ρ/2}δ^{b/2}) - y_a(q^{ρ/2}δ^{-b/2})) p(q^{-ρ})`.
    pub rhs: ParamScalar,
    /// `ε` with `d_v = ε [[Y_v X_v]]`, if `ε = ±1` works. Required only
    /// under the shift theorem's hypothesis, which the identity relies on.
    pub sign: Option<i64>,
    /// Whether `p′ = g_v(b)^{-1} G_v(p_b)`; only checked under the shift
    /// theorem's hypothesis.
    pub shift_path: Option<bool>,
    /// Whether `d_v` equals its variant built on `m_{-r_v}`.
    pub d_is_monomial: bool,
}

impl KeyLemmaReport {
    pub fn holds(&self) -> bool {
        let hyp = self.shift_path.is_some();
        self.lhs == self.rhs && (!hyp || self.sign.is_some()) && self.shift_path != Some(false)
    }
}

pub fn key_lemma_check(d: &RootDatum, b: &Weight, s: &ShiftSetting) -> Result<KeyLemmaReport> {
    let c = b.add(&class_set_weight(d, &s.v));
    if !b.is_antidominant() {
        return Err(Error::NotAntidominant(b.to_string()));
    }
    if !c.is_antidominant() {
        return Err(Error::ShiftOutOfRange(c.to_string()));
    }
    let zero = Weight::zero(d.rank());
    let base = s.base_map(d);
    let shifted = s.shifted_map(d)?;
    let pc = macdonald_polynomial(d, &c, &ParamMode::Generic)?;
    let p_prime_at = pc.poly.evaluate_at_rho_point(d, &zero, Sign::Minus).substitute(&shifted)?;
    let dv = d_term(d, s)?;
    let lhs = &dv * &p_prime_at;
    let pb = macdonald_polynomial(d, b, &ParamMode::Generic)?;
    let rhs = (key_product(d, s, b) * pb.poly.evaluate_at_rho_point(d, &zero, Sign::Minus)).substitute(&base)?;
    let pb = pb.poly.substitute(&base)?;

    let hyp = s.hypothesis_holds(d);
    let h = Daha::with_params(d, base.clone())?;
    // [[Y_v X_v]] = (Y_v(Y) X_v)(q^{-ρ}).
    let yx = h.apply_y_polynomial(&y_factor(d, s).substitute(&base)?, &x_factor(d, s).substitute(&base)?)?;
    let bracket = h.evaluate_rho(&yx, -1);
    let sign = [1, -1].into_iter().find(|&e| dv == bracket.mul_int(e));

    let shift_path = if hyp {
        let g = g_factor(d, s, b).substitute(&base)?;
        let via = apply_shift(&h, s, &pb)?.scale(&g.inv()?);
        Some(via == pc.poly.substitute(&shifted)?)
    } else {
        None
    };
    Ok(KeyLemmaReport { b: b.clone(), lhs, rhs, sign, shift_path, d_is_monomial: dv == d_term_monomial(d, s)? })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::macdonald::fundamental_orbit_sums;
    use crate::root_datum::Family;

    fn w(c: &[i64]) -> Weight {
        Weight::from_slice(c)
    }

    fn two() -> Rat {
        Rat::from_integer(2)
    }

    #[test]
    fn a1_shift_of_rho() {
        let d = RootDatum::new(Family::A, 1).unwrap();
        let s = ShiftSetting::new(&d, &[two()], false).unwrap();
        let h = Daha::new(&d);
        let m = monomial_sym(&d, &w(&[-1])).unwrap();
        let g = apply_shift(&h, &s, &m).unwrap();
        assert_eq!(g, LaurentPoly::constant(1, g_factor(&d, &s, &w(&[-1]))));
        assert!(apply_shift(&h, &s, &LaurentPoly::one(1)).unwrap().is_zero());
        let op = shift_operator(&h, &s).unwrap();
        assert_eq!(op.apply(&d, &m).unwrap(), g);
        assert_eq!(ShiftSetting::new(&d, &[], false), Err(Error::EmptyClassSet));
    }

    #[test]
    fn a1_intertwining_and_action() {
        let d = RootDatum::new(Family::A, 1).unwrap();
        let s = ShiftSetting::full(&d);
        for f in fundamental_orbit_sums(&d) {
            assert!(intertwining_check(&d, &f, &s).unwrap());
        }
        for b in [0, -1, -2, -3] {
            assert!(shift_action_check(&d, &w(&[b]), &s).unwrap(), "b={b}");
        }
    }

    #[test]
    fn a1_key_lemma() {
        let d = RootDatum::new(Family::A, 1).unwrap();
        let s = ShiftSetting::full(&d);
        for b in [-1, -2, -3] {
            let r = key_lemma_check(&d, &w(&[b]), &s).unwrap();
            assert!(r.holds(), "{r:?}");
        }
        assert!(matches!(key_lemma_check(&d, &w(&[0]), &s), Err(Error::ShiftOutOfRange(_))));
    }

    #[test]
    fn b2_key_lemma_two_classes() {
        let d = RootDatum::new(Family::B, 2).unwrap();
        let s = ShiftSetting::full(&d);
        let r = key_lemma_check(&d, &w(&[-1, -1]), &s).unwrap();
        assert!(r.holds(), "{r:?}");
    }
}
