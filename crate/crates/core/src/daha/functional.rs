//! Daggers, the bracket functional, the Harish-Chandra map and the
//! Fourier pairing.

use std::collections::BTreeMap;

use super::generators::Daha;
use super::operator::NormalFormOperator;
use super::ratfun::RatFunX;
use crate::error::Result;
use crate::ext_weyl::GroupElt;
use crate::laurent::{q_rho_power, LaurentPoly};
use crate::param::{ParamMonomial, ParamScalar};
use crate::root_datum::Weight;

impl Daha<'_> {
    /// `x_λ ↦ Π_ν q_ν^{s(λ, ρ_ν)}` under the representation's parameter map.
    pub fn rho_monomial(&self, lambda: &Weight, s: i64) -> ParamMonomial {
        self.params().apply_monomial(&q_rho_power(self.datum(), lambda, s)).expect("ρ-exponents stay representable")
    }

    /// `[Ĥ]_† = Σ h_{b,w} b′`: forgets the finite Weyl part of every term.
    pub fn dagger_restrict(&self, op: &NormalFormOperator) -> NormalFormOperator {
        let mut out = NormalFormOperator::zero(op.rank());
        for (b, group) in op.by_left_translation() {
            let h = group.iter().fold(RatFunX::zero(), |acc, (_, h)| acc.add(h));
            out = out.add(&NormalFormOperator::term(GroupElt::translation(b), h));
        }
        out
    }

    /// `[[Ĥ]] = Σ h_{b,w}(q^{-ρ})`.
    pub fn bracket(&self, op: &NormalFormOperator) -> Result<ParamScalar> {
        let mut acc = ParamScalar::zero();
        for (_, h) in op.terms() {
            acc += &h.evaluate_with(|l| self.rho_monomial(l, -1))?;
        }
        Ok(acc)
    }

    /// `χ(Σ h_{b,w} b′ w) = Σ h_{b,w}(◊) y_b`, a Laurent polynomial in `y`.
    pub fn harish_chandra_chi(&self, op: &NormalFormOperator) -> Result<LaurentPoly> {
        let d = self.datum();
        let mut out: BTreeMap<Weight, ParamScalar> = BTreeMap::new();
        for (b, group) in op.by_left_translation() {
            let mut v = ParamScalar::zero();
            for (_, h) in group {
                v += &h.limit_at_origin(d)?;
            }
            out.insert(b, v);
        }
        Ok(LaurentPoly::from_terms(out))
    }

    /// `[[f, g]] = {L_{f̄}(g)}(q^{-ρ})`.
    pub fn fourier_pairing(&self, f: &LaurentPoly, g: &LaurentPoly) -> Result<ParamScalar> {
        let lg = self.apply_y_polynomial(&f.bar(), g)?;
        Ok(self.evaluate_rho(&lg, -1))
    }

    /// `p(q^{sρ})`.
    pub fn evaluate_rho(&self, p: &LaurentPoly, s: i64) -> ParamScalar {
        p.evaluate_with(|l| ParamScalar::monomial(self.rho_monomial(l, s)))
    }
}
