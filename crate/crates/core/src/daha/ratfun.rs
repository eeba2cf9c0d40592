//! Rational functions in `x` whose denominators are products of binomials
//! `m x_a - 1`, the coefficient field of the normal-form calculus.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::ext_weyl::GroupElt;
use crate::laurent::{delta_power, LaurentPoly};
use crate::param::{MonomialMap, ParamMonomial, ParamScalar};
use crate::root_datum::{RootDatum, Weight};

/// The binomial `m x_a - 1` with `a ≠ 0` lexicographically positive.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Factor {
    pub m: ParamMonomial,
    pub a: Weight,
}

impl Factor {
    fn poly(&self) -> LaurentPoly {
        let mut p = LaurentPoly::monomial(self.a.clone(), ParamScalar::monomial(self.m));
        p.add_term(Weight::zero(self.a.rank()), &ParamScalar::from_int(-1));
        p
    }
}

/// Normalizes `m x_a - 1` into `unit · (m' x_{a'} - 1)` with `a'` positive.
/// Returns `None` for the factor when `a = 0`, in which case the unit is the
/// scalar `m - 1`.
fn orient(m: ParamMonomial, a: Weight) -> Result<(LaurentPoly, Option<Factor>)> {
    let n = a.rank();
    match a.coords().iter().find(|&&x| x != 0) {
        None => {
            let v = ParamScalar::monomial(m) - ParamScalar::one();
            if v.is_zero() {
                return Err(Error::DivisionByZero);
            }
            Ok((LaurentPoly::constant(n, v), None))
        }
        Some(&x) if x > 0 => Ok((LaurentPoly::one(n), Some(Factor { m, a }))),
        Some(_) => {
            // m x_a - 1 = -m x_a (m^{-1} x_{-a} - 1).
            let unit = LaurentPoly::monomial(a.clone(), -ParamScalar::monomial(m));
            Ok((unit, Some(Factor { m: m.inv(), a: a.neg() })))
        }
    }
}

fn unit_inverse(u: &LaurentPoly) -> LaurentPoly {
    let (b, c) = u.terms().next().expect("units are single terms");
    LaurentPoly::monomial(b.neg(), c.inv().expect("units are nonzero"))
}

fn div_floor(a: i64, b: i64) -> i64 {
    let q = a / b;
    if (a % b != 0) && ((a < 0) != (b < 0)) {
        q - 1
    } else {
        q
    }
}

/// Exact division of `p` by `m x_a - 1` (`a` positive), or `None`.
pub(crate) fn divide_by_factor(p: &LaurentPoly, f: &Factor) -> Option<LaurentPoly> {
    if p.is_zero() {
        return Some(LaurentPoly::zero());
    }
    let a = &f.a;
    let i0 = a.coords().iter().position(|&x| x != 0).expect("nonzero factor");
    let ai = a.coords()[i0];
    // Split the support into cosets λ + Z a, each a polynomial in t = x_a.
    let mut cosets: BTreeMap<Weight, BTreeMap<i64, ParamScalar>> = BTreeMap::new();
    for (lam, c) in p.terms() {
        let k = div_floor(lam.coords()[i0], ai);
        let base = lam.sub(&a.scale(k));
        cosets.entry(base).or_default().insert(k, c.clone());
    }
    let mut out = Vec::new();
    for (base, poly) in cosets {
        let kmin = *poly.keys().next().unwrap();
        let kmax = *poly.keys().next_back().unwrap();
        // Σ c_k t^k = (m t - 1) Σ q_k t^k: q_k = m q_{k-1} - c_k.
        let mut prev = ParamScalar::zero();
        for k in kmin..=kmax {
            let c = poly.get(&k).cloned().unwrap_or_else(ParamScalar::zero);
            let qk = prev.mul_monomial(&f.m) - c;
            if k == kmax {
                if !qk.is_zero() {
                    return None;
                }
            } else if !qk.is_zero() {
                out.push((base.add(&a.scale(k)), qk.clone()));
            }
            prev = qk;
        }
    }
    Some(LaurentPoly::from_terms(out))
}

/// Exact division of `p` by `m x_a - 1` for any `a`, or `None`.
pub(crate) fn divide_binomial(p: &LaurentPoly, m: ParamMonomial, a: &Weight) -> Result<Option<LaurentPoly>> {
    let (unit, f) = orient(m, a.clone())?;
    let uinv = unit_inverse(&unit);
    Ok(match f {
        None => Some(p.mul(&uinv)),
        Some(f) => divide_by_factor(p, &f).map(|q| q.mul(&uinv)),
    })
}

#[derive(Clone, Debug, Default)]
pub struct RatFunX {
    num: LaurentPoly,
    den: BTreeMap<Factor, u32>,
}

impl RatFunX {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one(n: usize) -> Self {
        Self::from_poly(LaurentPoly::one(n))
    }

    pub fn constant(n: usize, c: ParamScalar) -> Self {
        Self::from_poly(LaurentPoly::constant(n, c))
    }

    pub fn from_poly(p: LaurentPoly) -> Self {
        RatFunX { num: p, den: BTreeMap::new() }
    }

    /// `1 / (m x_a - 1)`.
    pub fn inv_binomial(m: ParamMonomial, a: Weight) -> Result<Self> {
        let (unit, f) = orient(m, a)?;
        // 1/(u F) = u^{-1}/F, and u is a monomial or a nonzero scalar.
        let uinv = unit_inverse(&unit);
        let mut den = BTreeMap::new();
        if let Some(f) = f {
            den.insert(f, 1);
        }
        Ok(RatFunX { num: uinv, den })
    }

    /// `m x_a - 1` as a function.
    pub fn binomial(m: ParamMonomial, a: Weight) -> Self {
        let n = a.rank();
        let mut p = LaurentPoly::monomial(a, ParamScalar::monomial(m));
        p.add_term(Weight::zero(n), &ParamScalar::from_int(-1));
        Self::from_poly(p)
    }

    pub fn numerator(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn denominator_factors(&self) -> impl Iterator<Item = (&Factor, u32)> {
        self.den.iter().map(|(f, &k)| (f, k))
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_empty()
    }

    pub fn as_poly(&self) -> Option<&LaurentPoly> {
        self.den.is_empty().then_some(&self.num)
    }

    pub fn into_poly(self) -> Result<LaurentPoly> {
        if self.den.is_empty() {
            Ok(self.num)
        } else {
            Err(Error::NotPolynomial)
        }
    }

    fn reduced(mut self) -> Self {
        if self.num.is_zero() {
            self.den.clear();
            return self;
        }
        let keys: Vec<Factor> = self.den.keys().cloned().collect();
        for f in keys {
            while let Some(k) = self.den.get(&f).copied() {
                match divide_by_factor(&self.num, &f) {
                    Some(q) => {
                        self.num = q;
                        if k == 1 {
                            self.den.remove(&f);
                        } else {
                            self.den.insert(f.clone(), k - 1);
                        }
                    }
                    None => break,
                }
            }
        }
        self
    }

    fn den_poly(den: &BTreeMap<Factor, u32>) -> Option<LaurentPoly> {
        let mut acc: Option<LaurentPoly> = None;
        for (f, &k) in den {
            for _ in 0..k {
                let fp = f.poly();
                acc = Some(match acc {
                    None => fp,
                    Some(p) => p.mul(&fp),
                });
            }
        }
        acc
    }

    /// Numerators rescaled onto the least common denominator.
    fn common(&self, o: &RatFunX) -> (LaurentPoly, LaurentPoly, BTreeMap<Factor, u32>) {
        let mut lcm = self.den.clone();
        for (f, &k) in &o.den {
            let e = lcm.entry(f.clone()).or_insert(0);
            *e = (*e).max(k);
        }
        let lift = |num: &LaurentPoly, den: &BTreeMap<Factor, u32>| {
            let missing: BTreeMap<Factor, u32> = lcm
                .iter()
                .filter_map(|(f, &k)| {
                    let have = den.get(f).copied().unwrap_or(0);
                    (k > have).then(|| (f.clone(), k - have))
                })
                .collect();
            match Self::den_poly(&missing) {
                Some(p) => num.mul(&p),
                None => num.clone(),
            }
        };
        (lift(&self.num, &self.den), lift(&o.num, &o.den), lcm)
    }

    pub fn add(&self, o: &RatFunX) -> RatFunX {
        if o.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return o.clone();
        }
        if self.den == o.den {
            return RatFunX { num: self.num.add(&o.num), den: self.den.clone() }.reduced();
        }
        let (a, b, den) = self.common(o);
        RatFunX { num: a.add(&b), den }.reduced()
    }

    pub fn sub(&self, o: &RatFunX) -> RatFunX {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> RatFunX {
        RatFunX { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn scale(&self, s: &ParamScalar) -> RatFunX {
        if s.is_zero() {
            return RatFunX::zero();
        }
        RatFunX { num: self.num.scale(s), den: self.den.clone() }
    }

    pub fn mul_poly(&self, p: &LaurentPoly) -> RatFunX {
        RatFunX { num: self.num.mul(p), den: self.den.clone() }.reduced()
    }

    pub fn mul(&self, o: &RatFunX) -> RatFunX {
        if self.is_zero() || o.is_zero() {
            return RatFunX::zero();
        }
        let mut den = self.den.clone();
        for (f, &k) in &o.den {
            *den.entry(f.clone()).or_insert(0) += k;
        }
        let reduce = !den.is_empty();
        let r = RatFunX { num: self.num.mul(&o.num), den };
        if reduce {
            r.reduced()
        } else {
            r
        }
    }

    /// The image under `ŵ(x_λ) = x_{wλ} δ^{-(λ, c)}`.
    pub fn act(&self, d: &RootDatum, g: &GroupElt) -> RatFunX {
        let mut num = self.num.act(d, g);
        let mut den = BTreeMap::new();
        for (f, &k) in &self.den {
            let (wa, e) = g.act_weight(d, &f.a);
            let (unit, nf) = orient(f.m.mul(&delta_power(e)), wa).expect("image of a factor is a factor");
            let nf = nf.expect("Weyl images of nonzero vectors are nonzero");
            // 1/(u F)^k: move u^{-k} into the numerator.
            let uinv = unit_inverse(&unit);
            for _ in 0..k {
                num = num.mul(&uinv);
            }
            *den.entry(nf).or_insert(0) += k;
        }
        RatFunX { num, den }
    }

    /// Evaluation at the point `x_λ ↦ point(λ)`.
    pub fn evaluate_with(&self, point: impl Fn(&Weight) -> ParamMonomial) -> Result<ParamScalar> {
        let mut d = ParamScalar::one();
        for (f, &k) in &self.den {
            let v = ParamScalar::monomial(f.m.mul(&point(&f.a))) - ParamScalar::one();
            if v.is_zero() {
                return Err(Error::EvaluationPole);
            }
            d *= &v.pow(k as i64);
        }
        let n = self.num.evaluate_with(|b| ParamScalar::monomial(point(b)));
        n.checked_div(&d)
    }

    /// Applies a parameter substitution.
    pub fn substitute(&self, map: &MonomialMap) -> Result<RatFunX> {
        let mut out = RatFunX::from_poly(self.num.substitute(map)?);
        for (f, &k) in &self.den {
            let m = map.apply_monomial(&f.m)?;
            let inv = RatFunX::inv_binomial(m, f.a.clone()).map_err(|_| Error::SpecializationPole)?;
            for _ in 0..k {
                out = out.mul(&inv);
            }
        }
        Ok(out)
    }

    /// The limit as `x_a → 0` for every positive coroot `a`, i.e. the value
    /// at `X_1 = … = X_n = 0` read in the positive chamber.
    pub fn limit_at_origin(&self, d: &RootDatum) -> Result<ParamScalar> {
        // A factor with positive `a` tends to -1; one with negative `a`
        // behaves like its leading term `m x_a`.
        let n = d.rank();
        let mut lead = Weight::zero(n);
        let mut scalar = ParamScalar::one();
        for (f, &k) in &self.den {
            if d.is_positive_vector(&f.a) {
                if k % 2 == 1 {
                    scalar = -scalar;
                }
            } else {
                lead = lead.add(&f.a.scale(k as i64));
                scalar = scalar.mul_monomial(&f.m.pow(k as i64));
            }
        }
        let mut value = ParamScalar::zero();
        for (lam, c) in self.num.terms() {
            let rest = lam.sub(&lead);
            if rest.is_zero() {
                value = c.clone();
                continue;
            }
            let coords = d.coroot_coordinates(&rest);
            if coords.iter().any(|x| *x < crate::root_datum::Rat::from_integer(0)) {
                return Err(Error::NotRegular);
            }
        }
        value.checked_div(&scalar)
    }
}

impl PartialEq for RatFunX {
    fn eq(&self, o: &RatFunX) -> bool {
        if self.den == o.den {
            return self.num == o.num;
        }
        let (a, b, _) = self.common(o);
        a == b
    }
}

impl Eq for RatFunX {}

impl fmt::Display for RatFunX {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.num)?;
        for (fac, &k) in &self.den {
            f.write_str(" / (")?;
            if !fac.m.is_one() {
                write!(f, "{}*", fac.m)?;
            }
            write!(f, "x{} - 1)", fac.a)?;
            if k > 1 {
                write!(f, "^{k}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ext_weyl::s;
    use crate::param::Param;

    fn w(c: &[i64]) -> Weight {
        Weight::from_slice(c)
    }

    #[test]
    fn synthetic_division() {
        let f = Factor { m: ParamMonomial::one(), a: w(&[2]) };
        // x^4 - 1 = (x^2 - 1)(x^2 + 1).
        let p = LaurentPoly::from_terms([(w(&[4]), 1.into()), (w(&[0]), (-1).into())]);
        let q = divide_by_factor(&p, &f).unwrap();
        assert_eq!(q, LaurentPoly::from_terms([(w(&[2]), 1.into()), (w(&[0]), 1.into())]));
        // x^3 - 1 is not divisible by x^2 - 1.
        let p = LaurentPoly::from_terms([(w(&[3]), 1.into()), (w(&[0]), (-1).into())]);
        assert!(divide_by_factor(&p, &f).is_none());
    }

    #[test]
    fn cancellation_and_orientation() {
        let d = ParamMonomial::power(Param::Delta, 1, 1);
        let a = w(&[1, -1]);
        let h = RatFunX::inv_binomial(d, a.neg()).unwrap();
        let back = h.mul(&RatFunX::binomial(d, a.neg()));
        assert_eq!(back, RatFunX::one(2));
        assert!(back.is_polynomial());
        assert!(RatFunX::inv_binomial(ParamMonomial::one(), w(&[0, 0])).is_err());
    }

    #[test]
    fn sums_over_common_denominators() {
        // 1/(x-1) - 1/(x^{-1}-1) ... = (1 + x)/(x - 1)
        let a = w(&[1]);
        let p = RatFunX::inv_binomial(ParamMonomial::one(), a.clone()).unwrap();
        let q = RatFunX::inv_binomial(ParamMonomial::one(), a.neg()).unwrap();
        let s = p.sub(&q);
        let expect = RatFunX::inv_binomial(ParamMonomial::one(), a.clone())
            .unwrap()
            .mul_poly(&LaurentPoly::from_terms([(w(&[1]), 1.into()), (w(&[0]), 1.into())]));
        assert_eq!(s, expect);
        // p + q = -1
        assert_eq!(p.add(&q), RatFunX::constant(1, (-1).into()));
    }

    #[test]
    fn action_moves_factors() {
        let dat = RootDatum::new(crate::root_datum::Family::A, 1).unwrap();
        let a = w(&[2]);
        let h = RatFunX::inv_binomial(ParamMonomial::one(), a.clone()).unwrap();
        let s1 = s(&dat, 1);
        let img = h.act(&dat, &s1);
        assert_eq!(img, RatFunX::inv_binomial(ParamMonomial::one(), a.neg()).unwrap());
        assert_eq!(img.act(&dat, &s1), h);
    }

    #[test]
    fn limits_at_origin() {
        let dat = RootDatum::new(crate::root_datum::Family::A, 1).unwrap();
        let a = w(&[2]);
        let t = ParamScalar::param(Param::QLong);
        // (t x^2 - 1/t)/(x^2 - 1) → 1/t
        let num = LaurentPoly::from_terms([(a.clone(), t.clone()), (w(&[0]), -t.inv().unwrap())]);
        let h = RatFunX::inv_binomial(ParamMonomial::one(), a.clone()).unwrap().mul_poly(&num);
        assert_eq!(h.limit_at_origin(&dat).unwrap(), t.inv().unwrap());
        // the same with the negative chamber factor tends to t
        let h2 = h.act(&dat, &s(&dat, 1));
        assert_eq!(h2.limit_at_origin(&dat).unwrap(), t);
        // x^{-1} has no limit
        let bad = RatFunX::from_poly(LaurentPoly::x(w(&[-1])));
        assert_eq!(bad.limit_at_origin(&dat), Err(Error::NotRegular));
    }
}
