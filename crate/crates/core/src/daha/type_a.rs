//! Type `A_n` extras: the automorphism `τ` and conjugation by the Gaussian.
//!
//! `τ` fixes `X_b` and `T_1..T_n` and sends `Y_i ↦ X_i Y_i δ^{-c_i}`. The
//! images of `π_r` and `T_0` follow from `b_r = π_r ω_r` (so
//! `π_r = Y_r T_{ω_r}^{-1}`) and `T_0 = π_r T_i π_r^{-1}` for `π_r(α_i) = α_0`.

use super::generators::Daha;
use super::operator::NormalFormOperator;
use super::ratfun::RatFunX;
use super::relations::OperatorGenerators;
use crate::error::{Error, Result};
use crate::ext_weyl::{pi_indices, pi_permutation, reduced_word, s, GroupElt, ReducedWord};
use crate::laurent::{delta_power, LaurentPoly};
use crate::param::ParamScalar;
use crate::root_datum::{Rat, RootDatum, Weight};

/// `(b_i, b_i)/2`, the shift making `τ` an automorphism.
pub fn tau_constants(d: &RootDatum) -> Vec<Rat> {
    (0..d.rank()).map(|i| d.gram()[i][i] / 2).collect()
}

/// `(b_i, b_i)`, the unhalved constant; kept as a
/// negative control since it does not satisfy the relations.
pub fn tau_constants_unhalved(d: &RootDatum) -> Vec<Rat> {
    (0..d.rank()).map(|i| d.gram()[i][i]).collect()
}

fn require_a(d: &RootDatum) -> Result<()> {
    if d.is_type_a() {
        Ok(())
    } else {
        Err(Error::RequiresTypeA(d.name()))
    }
}

/// `τ` with a chosen family of constants `c_i`.
pub struct Tau<'h, 'a> {
    h: &'h Daha<'a>,
    c: Vec<Rat>,
    /// `(r, τ(π_r), τ(π_r^{-1}))`.
    pis: Vec<(usize, NormalFormOperator, NormalFormOperator)>,
    t0: NormalFormOperator,
    s0: NormalFormOperator,
}

impl<'h, 'a> Tau<'h, 'a> {
    pub fn new(h: &'h Daha<'a>) -> Result<Self> {
        Self::with_constants(h, tau_constants(h.datum()))
    }

    pub fn with_constants(h: &'h Daha<'a>, c: Vec<Rat>) -> Result<Self> {
        let d = h.datum();
        require_a(d)?;
        let n = d.rank();
        let mut tau = Tau { h, c, pis: Vec::new(), t0: NormalFormOperator::zero(n), s0: NormalFormOperator::zero(n) };
        tau.pis.push((0, NormalFormOperator::identity(n), NormalFormOperator::identity(n)));
        for r in pi_indices(d).into_iter().skip(1) {
            let i = r - 1;
            // b_r = π_r ω_r with ω_r finite.
            let word: &ReducedWord = h.y_word(i);
            debug_assert_eq!(word.r, r);
            let mut t_omega_inv = NormalFormOperator::identity(n);
            let mut t_omega = NormalFormOperator::identity(n);
            for &j in &word.word {
                t_omega_inv = h.demazure_lusztig_inv(j)?.mul(d, &t_omega_inv);
                t_omega = t_omega.mul(d, &h.demazure_lusztig(j)?);
            }
            let ty = tau.y(i);
            let ty_inv = tau.y_inv(i);
            tau.pis.push((r, ty.mul(d, &t_omega_inv), t_omega.mul(d, &ty_inv)));
        }
        let perm = pi_permutation(d, 1)?;
        let i = perm.iter().position(|&j| j == 0).expect("π_1 maps some α_i to α_0");
        let (_, p, pinv) = &tau.pis[1];
        tau.t0 = p.mul(d, &h.demazure_lusztig(i)?).mul(d, pinv);
        tau.s0 = h.reflection_via_t(0, &tau.t0)?;
        Ok(tau)
    }

    pub fn constants(&self) -> &[Rat] {
        &self.c
    }

    fn x_shift(&self, i: usize, sign: i64) -> RatFunX {
        let n = self.h.rank();
        let b = Weight::basis(n, i).scale(sign);
        RatFunX::from_poly(LaurentPoly::monomial(b, ParamScalar::monomial(delta_power(-self.c[i] * sign))))
    }

    /// `τ(Y_i) = X_i δ^{-c_i} Y_i`.
    pub fn y(&self, i: usize) -> NormalFormOperator {
        let n = self.h.rank();
        self.h.y_operator(&Weight::basis(n, i)).left_mul(&self.x_shift(i, 1))
    }

    /// `τ(Y_i)^{-1} = Y_i^{-1} X_i^{-1} δ^{c_i}`.
    pub fn y_inv(&self, i: usize) -> NormalFormOperator {
        let n = self.h.rank();
        let yi = self.h.y_operator(&Weight::basis(n, i).neg());
        yi.mul(self.h.datum(), &NormalFormOperator::multiplication(n, self.x_shift(i, -1)))
    }

    pub fn pi(&self, r: usize) -> Result<&NormalFormOperator> {
        self.pis.iter().find(|p| p.0 == r).map(|p| &p.1).ok_or(Error::NotMinuscule(r))
    }

    pub fn t0(&self) -> &NormalFormOperator {
        &self.t0
    }

    /// `τ(ĝ)` for a group element, through a reduced word.
    pub fn group_element(&self, g: &GroupElt) -> Result<NormalFormOperator> {
        let d = self.h.datum();
        let w = reduced_word(d, g);
        let mut acc = self.pi(w.r)?.clone();
        for &j in &w.word {
            let sj = if j == 0 { self.s0.clone() } else { NormalFormOperator::group(s(d, j)) };
            acc = acc.mul(d, &sj);
        }
        Ok(acc)
    }

    /// `τ(Σ h_g g) = Σ h_g τ(g)`.
    pub fn apply(&self, op: &NormalFormOperator) -> Result<NormalFormOperator> {
        let mut out = NormalFormOperator::zero(op.rank());
        for (g, h) in op.terms() {
            out = out.add(&self.group_element(g)?.left_mul(h));
        }
        Ok(out)
    }

    /// The `τ`-images of `T_0..T_n` and `π_r` as a generator set.
    pub fn generators(&self) -> Result<OperatorGenerators<'a>> {
        let d = self.h.datum();
        let mut t = vec![self.t0.clone()];
        for j in 1..=d.rank() {
            t.push(self.h.demazure_lusztig(j)?);
        }
        Ok(OperatorGenerators {
            datum: d,
            t_half: (0..=d.rank()).map(|j| self.h.t_half(j).clone()).collect(),
            t,
            pi: self.pis.clone(),
        })
    }
}

/// `τ` applied to an operator, with `c_i = (b_i, b_i)/2`.
pub fn tau_automorphism(h: &Daha<'_>, op: &NormalFormOperator) -> Result<NormalFormOperator> {
    Tau::new(h)?.apply(op)
}

/// `γ Ĥ γ^{-1}` for the Gaussian `γ`, using `b′(γ) = γ x_b^{-1} δ^{(b,b)/2}`:
/// each term `h b′ w` becomes `h x_b δ^{-(b,b)/2} b′ w`.
pub fn gaussian_conjugate(d: &RootDatum, op: &NormalFormOperator) -> Result<NormalFormOperator> {
    require_a(d)?;
    let mut out = NormalFormOperator::zero(op.rank());
    for (g, h) in op.terms() {
        let b = g.left_translation();
        let e = -d.pair_weights(&b, &b) / 2;
        let f = RatFunX::from_poly(LaurentPoly::monomial(b, ParamScalar::monomial(delta_power(e))));
        out = out.add(&NormalFormOperator::term(g.clone(), f.mul(h)));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::daha::verify_generators;
    use crate::root_datum::Family;

    #[test]
    fn a1_constant() {
        let d = RootDatum::new(Family::A, 1).unwrap();
        assert_eq!(tau_constants(&d), vec![Rat::new(1, 4)]);
    }

    #[test]
    fn tau_fixes_x_and_t() {
        let d = RootDatum::new(Family::A, 2).unwrap();
        let h = Daha::new(&d);
        let x = NormalFormOperator::x(&Weight::basis(2, 0));
        assert_eq!(tau_automorphism(&h, &x).unwrap(), x);
        let t1 = h.demazure_lusztig(1).unwrap();
        assert_eq!(tau_automorphism(&h, &t1).unwrap(), t1);
    }

    #[test]
    fn tau_on_y_matches_definition() {
        let d = RootDatum::new(Family::A, 1).unwrap();
        let h = Daha::new(&d);
        let tau = Tau::new(&h).unwrap();
        let y = h.y_operator(&Weight::basis(1, 0));
        assert_eq!(tau.apply(&y).unwrap(), tau.y(0));
    }

    #[test]
    fn a1_tau_relations() {
        let d = RootDatum::new(Family::A, 1).unwrap();
        let h = Daha::new(&d);
        let tau = Tau::new(&h).unwrap();
        let rep = verify_generators(&tau.generators().unwrap(), 2);
        assert!(rep.all_passed(), "{rep}");
        let wrong = Tau::with_constants(&h, tau_constants_unhalved(&d)).unwrap();
        let rep = verify_generators(&wrong.generators().unwrap(), 2);
        assert!(!rep.all_passed(), "{rep}");
    }

    #[test]
    fn gaussian_gives_tau() {
        let d = RootDatum::new(Family::A, 2).unwrap();
        let h = Daha::new(&d);
        let tau = Tau::new(&h).unwrap();
        for i in 0..2 {
            let y = h.y_operator(&Weight::basis(2, i));
            assert_eq!(gaussian_conjugate(&d, &y).unwrap(), tau.y(i));
            let t = h.demazure_lusztig(i + 1).unwrap();
            assert_eq!(gaussian_conjugate(&d, &t).unwrap(), t);
        }
        let b2 = RootDatum::new(Family::B, 2).unwrap();
        assert!(gaussian_conjugate(&b2, &NormalFormOperator::identity(2)).is_err());
    }
}
