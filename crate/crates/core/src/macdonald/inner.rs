//! The truncated weight `μ` at integral `q_ν = δ_ν^{k_ν}`, the pairing
//! `⟨f, g⟩ = ct(μ f ḡ)` and Gram–Schmidt against it.

use super::linalg::solve;
use super::{check_antidominant, dominance_cone};
use crate::daha::RatFunX;
use crate::error::{Error, Result};
use crate::laurent::{delta_power, monomial_sym, LaurentPoly};
use crate::param::{ParamMonomial, ParamScalar};
use crate::root_datum::{Rat, RootDatum, Weight};

fn class_k(d: &RootDatum, k: &[u32], nu: Rat) -> Result<i64> {
    if k.len() != d.length_classes().len() {
        return Err(Error::DimensionMismatch { expected: d.length_classes().len(), got: k.len() });
    }
    Ok(k[d.class_index(nu)] as i64)
}

/// `δ_a^e = δ^{2e/ν}`.
fn delta_a(nu: Rat, e: i64) -> ParamMonomial {
    delta_power(Rat::from_integer(2 * e) / nu)
}

/// `1 - m x_a`.
fn one_minus(m: ParamMonomial, a: &Weight) -> LaurentPoly {
    let n = a.rank();
    LaurentPoly::one(n).sub(&LaurentPoly::monomial(a.clone(), ParamScalar::monomial(m)))
}

/// `Π_{a ∈ R_+^∨} Π_{0 ≤ i < k_a} (1 - x_a δ_a^i)(1 - x_a^{-1} δ_a^{i+1})`.
pub fn mu_truncated(d: &RootDatum, k: &[u32]) -> Result<LaurentPoly> {
    let mut mu = LaurentPoly::one(d.rank());
    for r in d.positive_roots() {
        let a = &r.coroot;
        for i in 0..class_k(d, k, r.norm)? {
            mu = mu.mul(&one_minus(delta_a(r.norm, i), a));
            mu = mu.mul(&one_minus(delta_a(r.norm, i + 1), &a.neg()));
        }
    }
    Ok(mu)
}

/// The first `terms` factors (in `i`) of the infinite product for `μ`
/// at `q_a = δ_a^{k_a}`, as a rational function of `x`.
pub fn mu_partial(d: &RootDatum, k: &[u32], terms: i64) -> Result<RatFunX> {
    let mut mu = RatFunX::one(d.rank());
    for r in d.positive_roots() {
        let a = &r.coroot;
        let ka = class_k(d, k, r.norm)?;
        for i in 0..terms {
            // (1 - m x) / (1 - m' x) = (m x - 1) / (m' x - 1).
            for (b, e) in [(a.clone(), i), (a.neg(), i + 1)] {
                let num = RatFunX::binomial(delta_a(r.norm, e), b.clone());
                let den = RatFunX::inv_binomial(delta_a(r.norm, e + ka), b)?;
                mu = mu.mul(&num).mul(&den);
            }
        }
    }
    Ok(mu)
}

/// `ct(μ h)` without forming the product.
fn ct_against(mu: &LaurentPoly, h: &LaurentPoly) -> ParamScalar {
    h.terms().map(|(b, c)| c * &mu.coeff(&b.neg())).sum()
}

/// `⟨f, g⟩ = ct(μ_k f ḡ)`.
pub fn inner_product(d: &RootDatum, f: &LaurentPoly, g: &LaurentPoly, k: &[u32]) -> Result<ParamScalar> {
    let mu = mu_truncated(d, k)?;
    Ok(ct_against(&mu, &f.mul(&g.bar())))
}

/// `p_b` at `q_ν = δ_ν^{k_ν}` from `⟨p_b, m_c⟩ = 0` for all `c` strictly
/// above `b` in the cone.
pub fn gram_schmidt(d: &RootDatum, b: &Weight, k: &[u32]) -> Result<LaurentPoly> {
    check_antidominant(d, b)?;
    let mu = mu_truncated(d, k)?;
    let cone = dominance_cone(d, b)?;
    let ms: Vec<LaurentPoly> = cone.iter().map(|c| monomial_sym(d, c)).collect::<Result<_>>()?;
    let pair = |f: &LaurentPoly, g: &LaurentPoly| ct_against(&mu, &f.mul(&g.bar()));
    let upper = &ms[1..];
    let a: Vec<Vec<ParamScalar>> = upper.iter().map(|e| upper.iter().map(|c| pair(c, e)).collect()).collect();
    let rhs: Vec<ParamScalar> = upper.iter().map(|e| -pair(&ms[0], e)).collect();
    let u = solve(a, rhs)?;
    let mut p = ms[0].clone();
    for (m, uc) in upper.iter().zip(&u) {
        p = p.add(&m.scale(uc));
    }
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::macdonald::{macdonald_polynomial, ParamMode};
    use crate::param::Param;
    use crate::root_datum::Family;

    fn w(c: &[i64]) -> Weight {
        Weight::from_slice(c)
    }

    #[test]
    fn a1_mu() {
        let d = RootDatum::new(Family::A, 1).unwrap();
        let a = w(&[2]);
        let delta = ParamScalar::param(Param::Delta);
        let expect = one_minus(ParamMonomial::one(), &a).mul(&one_minus(delta_power(1.into()), &a.neg()));
        assert_eq!(mu_truncated(&d, &[1]).unwrap(), expect);
        assert_eq!(mu_truncated(&d, &[0]).unwrap(), LaurentPoly::one(1));
        assert_eq!(mu_truncated(&d, &[1]).unwrap().constant_term(), &ParamScalar::one() + &delta);
    }

    #[test]
    fn truncation_matches_partial_products() {
        let terms = 4;
        for (t, ks) in [("A1", vec![vec![1], vec![2]]), ("A2", vec![vec![1]]), ("B2", vec![vec![1, 1], vec![1, 2]])] {
            let d: RootDatum = t.parse().unwrap();
            for k in ks {
                let partial = mu_partial(&d, &k, terms).unwrap();
                let mut tail = LaurentPoly::one(d.rank());
                for r in d.positive_roots() {
                    let ka = class_k(&d, &k, r.norm).unwrap();
                    for i in terms..terms + ka {
                        tail = tail.mul(&one_minus(delta_a(r.norm, i), &r.coroot));
                        tail = tail.mul(&one_minus(delta_a(r.norm, i + 1), &r.coroot.neg()));
                    }
                }
                let lhs = partial.mul_poly(&tail);
                assert_eq!(lhs, RatFunX::from_poly(mu_truncated(&d, &k).unwrap()), "{t} {k:?}");
            }
        }
    }

    #[test]
    fn pairing_trivial_and_orthogonal() {
        let d = RootDatum::new(Family::A, 1).unwrap();
        let one = LaurentPoly::one(1);
        assert_eq!(inner_product(&d, &one, &one, &[0]).unwrap(), ParamScalar::one());
        let p = gram_schmidt(&d, &w(&[-2]), &[1]).unwrap();
        assert!(inner_product(&d, &p, &one, &[1]).unwrap().is_zero());
    }

    #[test]
    fn gram_schmidt_agrees_with_eigen_solve_a1() {
        let d = RootDatum::new(Family::A, 1).unwrap();
        for k in [1u32, 2] {
            for b in [0, -1, -2, -3] {
                let b = w(&[b]);
                let gs = gram_schmidt(&d, &b, &[k]).unwrap();
                let p = macdonald_polynomial(&d, &b, &ParamMode::Specialized(vec![k])).unwrap();
                assert_eq!(gs, p.poly, "k={k} b={b}");
            }
        }
    }
}
