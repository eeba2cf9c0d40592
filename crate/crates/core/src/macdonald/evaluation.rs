//! Closed-form values `p_b(q^{-ρ})` and the duality `[[p_b, p_c]] = [[p_c, p_b]]`.

use super::{check_antidominant, macdonald_polynomial, ParamMode};
use crate::daha::Daha;
use crate::error::{Error, Result};
use crate::laurent::{delta_power, q_rho_power, Sign};
use crate::param::{NumericPoint, ParamMonomial, ParamScalar};
use crate::root_datum::{Rat, Root, RootDatum, Weight};
use num_rational::BigRational;
use num_traits::{One, Zero};

/// `δ_a^j Q` with `Q = Π_ν q_ν^{(ρ_ν, a)}`, times `q_a` if asked.
fn ev_monomial(d: &RootDatum, r: &Root, j: i64, with_q: bool) -> ParamMonomial {
    let mut m = delta_power(Rat::from_integer(2 * j) / r.norm).mul(&q_rho_power(d, &r.coroot, 1));
    if with_q {
        m = m.mul(&ParamMonomial::power(d.class_param(r.norm), 1, 1));
    }
    m
}

fn one_minus(m: ParamMonomial) -> ParamScalar {
    ParamScalar::one() - ParamScalar::monomial(m)
}

/// `p_b(q^{-ρ})` in closed form: the `j`-product over each coroot
/// telescopes to `Π_{0 ≤ j < -(b, a^∨)} (1 - q_a δ_a^j Q)/(1 - δ_a^j Q)`.
pub fn evaluation_value(d: &RootDatum, b: &Weight) -> Result<ParamScalar> {
    check_antidominant(d, b)?;
    let mut acc = ParamScalar::monomial(q_rho_power(d, b, 1));
    for r in d.positive_roots() {
        for j in 0..-d.pair_root(b, r) {
            let num = one_minus(ev_monomial(d, r, j, true));
            let den = one_minus(ev_monomial(d, r, j, false));
            acc = &acc * &num.checked_div(&den)?;
        }
    }
    Ok(acc)
}

/// The untelescoped product with `0 ≤ j ≤ terms`, evaluated factor by
/// factor at a numeric point.
pub fn evaluation_value_partial(d: &RootDatum, b: &Weight, terms: i64, point: &NumericPoint) -> Result<BigRational> {
    check_antidominant(d, b)?;
    let at = |m: ParamMonomial| ParamScalar::monomial(m).evaluate_numeric(point);
    let one = BigRational::one();
    let mut acc = at(q_rho_power(d, b, 1))?;
    for r in d.positive_roots() {
        let shift = -d.pair_root(b, r);
        for j in 0..=terms {
            let num = (&one - at(ev_monomial(d, r, j + shift, false))?) * (&one - at(ev_monomial(d, r, j, true))?);
            let den = (&one - at(ev_monomial(d, r, j + shift, true))?) * (&one - at(ev_monomial(d, r, j, false))?);
            if den.is_zero() {
                return Err(Error::EvaluationPole);
            }
            acc = acc * num / den;
        }
    }
    Ok(acc)
}

/// `δ^{e/ν} - δ^{-e/ν}`.
fn sinh(e: i64, nu: Rat) -> ParamScalar {
    let x = Rat::from_integer(e) / nu;
    ParamScalar::monomial(delta_power(x)) - ParamScalar::monomial(delta_power(-x))
}

/// `p_b^{(k)}(q(k)^{-ρ})` at `q_ν = δ_ν^{k_ν}`, including the orbit-size
/// prefactor `|W(b - k·r)| / |W(k·r)|`.
pub fn specialized_evaluation_value(d: &RootDatum, b: &Weight, k: &[u32]) -> Result<ParamScalar> {
    check_antidominant(d, b)?;
    let classes = d.length_classes();
    if k.len() != classes.len() {
        return Err(Error::DimensionMismatch { expected: classes.len(), got: k.len() });
    }
    let mut kr = Weight::zero(d.rank());
    for (&nu, &kv) in classes.iter().zip(k) {
        kr = kr.add(&d.r_nu(nu).scale(kv as i64));
    }
    let shifted = kr.sub(b);
    let num_orbit = d.weyl_orbit(&b.sub(&kr)).len() as i64;
    let den_orbit = d.weyl_orbit(&kr).len() as i64;
    let mut acc = ParamScalar::from_int(num_orbit).checked_div(&ParamScalar::from_int(den_orbit))?;
    for r in d.positive_roots() {
        let ka = k[d.class_index(r.norm)] as i64;
        for j in 0..ka {
            let num = sinh(d.pair_root(&shifted, r) + j, r.norm);
            let den = sinh(d.pair_root(&kr, r) + j, r.norm);
            acc = &acc * &num.checked_div(&den)?;
        }
    }
    Ok(acc)
}

/// The three sides of the duality for a pair `(b, c)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualityReport {
    pub b: Weight,
    pub c: Weight,
    /// `p_b(q^{-ρ} δ^c) p_c(q^{-ρ})`.
    pub lhs: ParamScalar,
    /// `[[p_b, p_c]]`.
    pub pairing: ParamScalar,
    /// `p_c(q^{-ρ} δ^b) p_b(q^{-ρ})`.
    pub rhs: ParamScalar,
}

impl DualityReport {
    pub fn holds(&self) -> bool {
        self.lhs == self.pairing && self.pairing == self.rhs
    }
}

pub fn duality_check(d: &RootDatum, b: &Weight, c: &Weight) -> Result<DualityReport> {
    let pb = macdonald_polynomial(d, b, &ParamMode::Generic)?;
    let pc = macdonald_polynomial(d, c, &ParamMode::Generic)?;
    let zero = Weight::zero(d.rank());
    let lhs = pb.poly.evaluate_at_rho_point(d, c, Sign::Minus) * pc.poly.evaluate_at_rho_point(d, &zero, Sign::Minus);
    let rhs = pc.poly.evaluate_at_rho_point(d, b, Sign::Minus) * pb.poly.evaluate_at_rho_point(d, &zero, Sign::Minus);
    let pairing = Daha::new(d).fourier_pairing(&pb.poly, &pc.poly)?;
    Ok(DualityReport { b: b.clone(), c: c.clone(), lhs, pairing, rhs })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::param::Param;
    use crate::root_datum::Family;

    fn w(c: &[i64]) -> Weight {
        Weight::from_slice(c)
    }

    #[test]
    fn a1_values() {
        let d = RootDatum::new(Family::A, 1).unwrap();
        assert_eq!(evaluation_value(&d, &w(&[0])).unwrap(), ParamScalar::one());
        let t = ParamScalar::monomial(ParamMonomial::power(Param::QLong, 1, 2));
        assert_eq!(evaluation_value(&d, &w(&[-1])).unwrap(), &t + &t.inv().unwrap());
    }

    #[test]
    fn matches_polynomials() {
        for (t, h) in [("A1", 3), ("A2", 2), ("B2", 2)] {
            let d: RootDatum = t.parse().unwrap();
            for b in crate::daha::box_weights(d.rank(), h) {
                if !b.is_antidominant() {
                    continue;
                }
                let p = macdonald_polynomial(&d, &b, &ParamMode::Generic).unwrap();
                let at = p.poly.evaluate_at_rho_point(&d, &Weight::zero(d.rank()), Sign::Minus);
                assert_eq!(at, evaluation_value(&d, &b).unwrap(), "{t} {b}");
            }
        }
    }

    #[test]
    fn partial_products_approach_closed_form() {
        let d = RootDatum::new(Family::B, 2).unwrap();
        let b = w(&[-1, -1]);
        let exact = evaluation_value(&d, &b).unwrap();
        let half = BigRational::new(1.into(), 2.into());
        let third = BigRational::new(1.into(), 3.into());
        // Root orders large enough for every exponent that occurs.
        let pt = NumericPoint::new((2, half.clone()), (2, third.clone()), (2, third));
        let target = exact.evaluate_numeric(&pt).unwrap();
        let mut last: Option<BigRational> = None;
        for j in [2, 4, 6] {
            let v = evaluation_value_partial(&d, &b, j, &pt).unwrap();
            let err = num_traits::Signed::abs(&((v - &target) / &target));
            if let Some(prev) = &last {
                assert!(&err < prev);
            }
            last = Some(err);
        }
        assert!(last.unwrap() < BigRational::new(1.into(), 100.into()));
    }

    #[test]
    fn specialized_form_with_orbit_ratio() {
        for (t, ks) in [
            ("A1", vec![vec![0], vec![1], vec![2]]),
            ("A2", vec![vec![0], vec![1]]),
            ("B2", vec![vec![1, 0], vec![0, 1], vec![1, 1], vec![2, 1]]),
        ] {
            let d: RootDatum = t.parse().unwrap();
            for k in ks {
                let map = crate::macdonald::specialization(&d, &k).unwrap();
                for b in crate::daha::box_weights(d.rank(), 2) {
                    if !b.is_antidominant() {
                        continue;
                    }
                    let p = macdonald_polynomial(&d, &b, &ParamMode::Generic).unwrap();
                    let at = p.poly.evaluate_at_rho_point(&d, &Weight::zero(d.rank()), Sign::Minus);
                    let at = at.substitute(&map).unwrap();
                    assert_eq!(at, specialized_evaluation_value(&d, &b, &k).unwrap(), "{t} {k:?} {b}");
                }
            }
        }
    }

    #[test]
    fn duality_small() {
        let d = RootDatum::new(Family::A, 1).unwrap();
        let r = duality_check(&d, &w(&[0]), &w(&[0])).unwrap();
        assert!(r.holds());
        assert_eq!(r.lhs, ParamScalar::one());
        let r = duality_check(&d, &w(&[-1]), &w(&[-2])).unwrap();
        assert!(r.holds(), "{r:?}");
    }
}
