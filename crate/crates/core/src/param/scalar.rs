use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::mpoly::{gcd, Exps, MPoly, NV};
use super::{fmt_exps, Param, ParamMonomial, EXP_DENOM};
use crate::error::{Error, Result};

/// An element of the parameter field, stored as a normalized fraction.
///
/// Normal form: the denominator is a polynomial not divisible by any
/// parameter, numerator and denominator are coprime, and the denominator's
/// leading coefficient is positive. The numerator may carry
/// negative exponents. The normal form is unique, so equality is structural.
/// The sign convention makes the first term (in ascending lexicographic order)
/// of the denominator positive, so `1 - d` rather than `d - 1`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ParamScalar {
    num: MPoly,
    den: MPoly,
}

/// A substitution sending every parameter to a monomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialMap {
    images: [ParamMonomial; NV],
}

impl Default for MonomialMap {
    fn default() -> Self {
        Self::identity()
    }
}

impl MonomialMap {
    pub fn identity() -> Self {
        let mut images = [ParamMonomial::one(); NV];
        for p in Param::ALL {
            images[p.index()] = ParamMonomial::power(p, 1, 1);
        }
        MonomialMap { images }
    }

    pub fn set(mut self, p: Param, image: ParamMonomial) -> Self {
        self.images[p.index()] = image;
        self
    }

    pub fn image(&self, p: Param) -> ParamMonomial {
        self.images[p.index()]
    }

    /// `self` followed by `after`.
    pub fn then(&self, after: &MonomialMap) -> Result<MonomialMap> {
        let mut images = self.images;
        for m in images.iter_mut() {
            *m = after.apply_monomial(m)?;
        }
        Ok(MonomialMap { images })
    }

    /// The image of a parameter monomial.
    pub fn apply_monomial(&self, m: &ParamMonomial) -> Result<ParamMonomial> {
        self.apply(&m.0).map(ParamMonomial)
    }

    fn apply(&self, e: &Exps) -> Result<Exps> {
        let mut out = [0i64; NV];
        for (i, &x) in e.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (v, o) in out.iter_mut().enumerate() {
                let prod = x as i128 * self.images[i].0[v] as i128;
                if prod % EXP_DENOM as i128 != 0 {
                    return Err(Error::UnrepresentableExponent(format!(
                        "{}/{}",
                        prod,
                        EXP_DENOM as i128 * EXP_DENOM as i128
                    )));
                }
                *o += (prod / EXP_DENOM as i128) as i64;
            }
        }
        Ok(out)
    }
}

/// A numeric point: for every parameter `p`, a root order `r` and the value
/// of `p^{1/r}`.
#[derive(Clone, Debug)]
pub struct NumericPoint {
    roots: [(i64, BigRational); NV],
}

impl NumericPoint {
    pub fn new(delta: (i64, BigRational), q_long: (i64, BigRational), q_short: (i64, BigRational)) -> Self {
        NumericPoint { roots: [delta, q_long, q_short] }
    }

    fn eval_monomial(&self, e: &Exps) -> Result<BigRational> {
        let mut acc = BigRational::one();
        for (i, &x) in e.iter().enumerate() {
            if x == 0 {
                continue;
            }
            let (r, ref val) = self.roots[i];
            let k = x as i128 * r as i128;
            if k % EXP_DENOM as i128 != 0 {
                return Err(Error::UnrepresentableExponent(format!(
                    "{} at root order {r}",
                    num_rational::Rational64::new(x, EXP_DENOM)
                )));
            }
            let k = (k / EXP_DENOM as i128) as i32;
            if val.is_zero() {
                return Err(Error::EvaluationPole);
            }
            acc *= num_traits::pow::Pow::pow(val, k);
        }
        Ok(acc)
    }

    fn eval_poly(&self, p: &MPoly) -> Result<BigRational> {
        let mut acc = BigRational::zero();
        for (e, c) in p.terms() {
            acc += self.eval_monomial(e)? * BigRational::from_integer(c.clone());
        }
        Ok(acc)
    }
}

impl ParamScalar {
    pub fn zero() -> Self {
        ParamScalar { num: MPoly::zero(), den: MPoly::one() }
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_bigint(BigInt::from(n))
    }

    pub fn from_bigint(n: BigInt) -> Self {
        ParamScalar { num: MPoly::constant(n), den: MPoly::one() }
    }

    pub fn from_rational(r: &BigRational) -> Self {
        Self::normalized(MPoly::constant(r.numer().clone()), MPoly::constant(r.denom().clone()))
    }

    pub fn monomial(m: ParamMonomial) -> Self {
        ParamScalar { num: MPoly::monomial(m.0, BigInt::one()), den: MPoly::one() }
    }

    /// `c · m` for an integer `c`.
    pub fn term(c: i64, m: ParamMonomial) -> Self {
        ParamScalar { num: MPoly::monomial(m.0, BigInt::from(c)), den: MPoly::one() }
    }

    pub fn param(p: Param) -> Self {
        Self::monomial(ParamMonomial::power(p, 1, 1))
    }

    fn normalized(num: MPoly, den: MPoly) -> Self {
        debug_assert!(!den.is_zero());
        if num.is_zero() {
            return Self::zero();
        }
        let shift = den.min_exps().map(|x| -x);
        let num = num.shift(&shift);
        let den = den.shift(&shift);
        if let Some(c) = den.constant_value() {
            let mut g = num.content().gcd(&c);
            if c.is_negative() {
                g = -g;
            }
            return ParamScalar { num: num.div_scalar(&g), den: MPoly::constant(c / g) };
        }
        let nmin = num.min_exps();
        let n0 = num.shift(&nmin.map(|x| -x));
        let mut scale = [0i64; NV];
        for (e, _) in n0.terms().iter().chain(den.terms()) {
            for v in 0..NV {
                scale[v] = scale[v].gcd(&e[v]);
            }
        }
        for s in scale.iter_mut() {
            if *s == 0 {
                *s = 1;
            }
        }
        let down = |e: &Exps| {
            let mut r = *e;
            for v in 0..NV {
                r[v] /= scale[v];
            }
            r
        };
        let up = |e: &Exps| {
            let mut r = *e;
            for v in 0..NV {
                r[v] = r[v] * scale[v] + nmin[v];
            }
            r
        };
        let mut n1 = n0.map_exps(down);
        let mut d1 = den.map_exps(down);
        let g = gcd(&n1, &d1);
        if !g.is_one() {
            n1 = n1.exact_div(&g).expect("gcd divides numerator");
            d1 = d1.exact_div(&g).expect("gcd divides denominator");
        }
        if d1.terms().first().map(|t| t.1.is_negative()).unwrap_or(false) {
            n1 = n1.neg();
            d1 = d1.neg();
        }
        let d1 = d1.map_exps(|e| {
            let mut r = *e;
            for v in 0..NV {
                r[v] *= scale[v];
            }
            r
        });
        ParamScalar { num: n1.map_exps(up), den: d1 }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    #[cfg(test)]
    pub(crate) fn denom(&self) -> &MPoly {
        &self.den
    }

    /// The value as a rational number, if it involves no parameter.
    pub fn as_rational(&self) -> Option<BigRational> {
        let n = self.num.constant_value()?;
        let d = self.den.constant_value()?;
        Some(BigRational::new(n, d))
    }

    /// Decomposes `c · m` with rational `c`, if the value is a single term.
    pub fn as_term(&self) -> Option<(BigRational, ParamMonomial)> {
        let d = self.den.constant_value()?;
        if self.num.len() != 1 {
            return None;
        }
        let (e, c) = &self.num.terms()[0];
        Some((BigRational::new(c.clone(), d), ParamMonomial(*e)))
    }

    pub fn mentions(&self, p: Param) -> bool {
        self.num.terms().iter().chain(self.den.terms()).any(|(e, _)| e[p.index()] != 0)
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalized(self.den.clone(), self.num.clone()))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        if other.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalized(self.num.mul(&other.den), self.den.mul(&other.num)))
    }

    pub fn pow(&self, k: i64) -> Self {
        if k < 0 {
            return self.inv().expect("negative power of zero").pow(-k);
        }
        let mut base = self.clone();
        let mut acc = Self::one();
        let mut k = k as u64;
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn mul_monomial(&self, m: &ParamMonomial) -> Self {
        ParamScalar { num: self.num.shift(&m.0), den: self.den.clone() }
    }

    pub fn mul_int(&self, c: i64) -> Self {
        if c == 0 {
            return Self::zero();
        }
        Self::normalized(self.num.scale(&BigInt::from(c)), self.den.clone())
    }

    /// Applies a monomial substitution to every parameter.
    pub fn substitute(&self, map: &MonomialMap) -> Result<Self> {
        let sub = |p: &MPoly| -> Result<MPoly> {
            let mut terms = Vec::with_capacity(p.len());
            for (e, c) in p.terms() {
                terms.push((map.apply(e)?, c.clone()));
            }
            Ok(MPoly::from_terms(terms))
        };
        let num = sub(&self.num)?;
        let den = sub(&self.den)?;
        if den.is_zero() {
            return Err(Error::SpecializationPole);
        }
        Ok(Self::normalized(num, den))
    }

    pub fn evaluate_numeric(&self, point: &NumericPoint) -> Result<BigRational> {
        let d = point.eval_poly(&self.den)?;
        if d.is_zero() {
            return Err(Error::EvaluationPole);
        }
        Ok(point.eval_poly(&self.num)? / d)
    }

    /// Cross-multiplication equality test; agrees with `==` on normal forms.
    pub fn equals_cross(&self, other: &Self) -> bool {
        self.num.mul(&other.den) == other.num.mul(&self.den)
    }
}

fn add_impl(a: &ParamScalar, b: &ParamScalar, negate: bool) -> ParamScalar {
    if b.is_zero() {
        return a.clone();
    }
    if a.is_zero() {
        return if negate { -b } else { b.clone() };
    }
    let combine = |x: &MPoly, y: &MPoly| if negate { x.sub(y) } else { x.add(y) };
    if a.den == b.den {
        return ParamScalar::normalized(combine(&a.num, &b.num), a.den.clone());
    }
    match (a.den.constant_value(), b.den.constant_value()) {
        (Some(_), Some(_)) | (Some(_), None) | (None, Some(_)) => {
            ParamScalar::normalized(combine(&a.num.mul(&b.den), &b.num.mul(&a.den)), a.den.mul(&b.den))
        }
        (None, None) => {
            let g = gcd(&a.den, &b.den);
            let bd = b.den.exact_div(&g).expect("gcd divides");
            let ad = a.den.exact_div(&g).expect("gcd divides");
            ParamScalar::normalized(combine(&a.num.mul(&bd), &b.num.mul(&ad)), a.den.mul(&bd))
        }
    }
}

fn mul_impl(a: &ParamScalar, b: &ParamScalar) -> ParamScalar {
    if a.is_zero() || b.is_zero() {
        return ParamScalar::zero();
    }
    if a.den.is_one() && b.num.is_monomial() && b.num.terms()[0].1.is_one() {
        return ParamScalar { num: a.num.shift(&b.num.terms()[0].0), den: MPoly::one() }.with_den(&b.den);
    }
    if b.den.is_one() && a.num.is_monomial() && a.num.terms()[0].1.is_one() {
        return ParamScalar { num: b.num.shift(&a.num.terms()[0].0), den: MPoly::one() }.with_den(&a.den);
    }
    if a.den.is_constant() && b.den.is_constant() {
        return ParamScalar::normalized(a.num.mul(&b.num), a.den.mul(&b.den));
    }
    // Cross-cancel so the final gcd works on smaller inputs.
    let cancel = |n: &MPoly, d: &MPoly| -> (MPoly, MPoly) {
        if d.is_constant() || n.is_monomial() {
            return (n.clone(), d.clone());
        }
        let nmin = n.min_exps();
        let n0 = n.shift(&nmin.map(|x| -x));
        let g = gcd(&n0, d);
        if g.is_constant() {
            return (n.clone(), d.clone());
        }
        (n0.exact_div(&g).expect("gcd divides").shift(&nmin), d.exact_div(&g).expect("gcd divides"))
    };
    let (an, bd) = cancel(&a.num, &b.den);
    let (bn, ad) = cancel(&b.num, &a.den);
    ParamScalar::normalized(an.mul(&bn), ad.mul(&bd))
}

impl ParamScalar {
    fn with_den(self, den: &MPoly) -> Self {
        if den.is_one() {
            self
        } else {
            ParamScalar::normalized(self.num, den.clone())
        }
    }
}

impl fmt::Display for ParamScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return fmt_poly(f, &self.num);
        }
        if self.num.len() > 1 {
            f.write_str("(")?;
            fmt_poly(f, &self.num)?;
            f.write_str(")")?;
        } else {
            fmt_poly(f, &self.num)?;
        }
        f.write_str("/")?;
        if self.den.len() > 1 {
            f.write_str("(")?;
            fmt_poly(f, &self.den)?;
            f.write_str(")")
        } else {
            fmt_poly(f, &self.den)
        }
    }
}

fn fmt_poly(f: &mut fmt::Formatter<'_>, p: &MPoly) -> fmt::Result {
    if p.is_zero() {
        return f.write_str("0");
    }
    for (i, (e, c)) in p.terms().iter().enumerate() {
        let neg = c.is_negative();
        match (i, neg) {
            (0, true) => f.write_str("-")?,
            (0, false) => {}
            (_, true) => f.write_str(" - ")?,
            (_, false) => f.write_str(" + ")?,
        }
        let a = c.abs();
        if *e == [0; NV] {
            write!(f, "{a}")?;
        } else {
            if !a.is_one() {
                write!(f, "{a}*")?;
            }
            fmt_exps(f, e)?;
        }
    }
    Ok(())
}

impl std::str::FromStr for ParamScalar {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        super::parse::parse_scalar(s)
    }
}

impl Neg for &ParamScalar {
    type Output = ParamScalar;
    fn neg(self) -> ParamScalar {
        ParamScalar { num: self.num.neg(), den: self.den.clone() }
    }
}

impl Neg for ParamScalar {
    type Output = ParamScalar;
    fn neg(self) -> ParamScalar {
        -&self
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $f:expr) => {
        impl $tr<&ParamScalar> for &ParamScalar {
            type Output = ParamScalar;
            fn $m(self, rhs: &ParamScalar) -> ParamScalar {
                $f(self, rhs)
            }
        }
        impl $tr<ParamScalar> for ParamScalar {
            type Output = ParamScalar;
            fn $m(self, rhs: ParamScalar) -> ParamScalar {
                $f(&self, &rhs)
            }
        }
        impl $tr<&ParamScalar> for ParamScalar {
            type Output = ParamScalar;
            fn $m(self, rhs: &ParamScalar) -> ParamScalar {
                $f(&self, rhs)
            }
        }
        impl $tr<ParamScalar> for &ParamScalar {
            type Output = ParamScalar;
            fn $m(self, rhs: ParamScalar) -> ParamScalar {
                $f(self, &rhs)
            }
        }
    };
}

binop!(Add, add, |a, b| add_impl(a, b, false));
binop!(Sub, sub, |a, b| add_impl(a, b, true));
binop!(Mul, mul, mul_impl);
binop!(Div, div, |a: &ParamScalar, b: &ParamScalar| a.checked_div(b).expect("division by zero"));

impl AddAssign<&ParamScalar> for ParamScalar {
    fn add_assign(&mut self, rhs: &ParamScalar) {
        *self = add_impl(self, rhs, false);
    }
}

impl SubAssign<&ParamScalar> for ParamScalar {
    fn sub_assign(&mut self, rhs: &ParamScalar) {
        *self = add_impl(self, rhs, true);
    }
}

impl MulAssign<&ParamScalar> for ParamScalar {
    fn mul_assign(&mut self, rhs: &ParamScalar) {
        *self = mul_impl(self, rhs);
    }
}

impl std::iter::Sum for ParamScalar {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(ParamScalar::zero(), |a, b| a + b)
    }
}

impl std::iter::Product for ParamScalar {
    fn product<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(ParamScalar::one(), |a, b| a * b)
    }
}

impl From<i64> for ParamScalar {
    fn from(n: i64) -> Self {
        ParamScalar::from_int(n)
    }
}

impl From<ParamMonomial> for ParamScalar {
    fn from(m: ParamMonomial) -> Self {
        ParamScalar::monomial(m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn s(x: &str) -> ParamScalar {
        x.parse().unwrap()
    }

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn self_quotient_is_one() {
        let q1 = s("q - 1");
        assert!((&q1 / &q1).is_one());
    }

    #[test]
    fn half_powers_multiply() {
        assert_eq!(s("d^(1/2)") * s("d^(1/2)"), s("d"));
    }

    #[test]
    fn additive_inverse() {
        let x = s("(1 - q^2*d)/(1 - q*d^(1/2))");
        assert!((&x + &(-&x)).is_zero());
    }

    #[test]
    fn cancels_common_factor() {
        let x = s("(1 - d^2)/(1 - d)");
        assert_eq!(x, s("1 + d"));
        assert!(x.denom().is_one());
        // Fractional exponents share a common factor too.
        let y = s("(1 - qL)/(1 - qL^(1/2))");
        assert_eq!(y, s("1 + qL^(1/2)"));
    }

    #[test]
    fn display_format() {
        assert_eq!(s("(1 - d^2*qL)/(1 - d)").to_string(), "(1 - d^2*qL)/(1 - d)");
        assert_eq!(s("qL^(1/2) + qL^(-1/2)").to_string(), "qL^(-1/2) + qL^(1/2)");
        assert_eq!(s("3/6").to_string(), "1/2");
        assert_eq!(s("d*(1 - d)^(-1)").to_string(), "d/(1 - d)");
    }

    #[test]
    fn division_by_zero_is_error() {
        assert_eq!(ParamScalar::one().checked_div(&ParamScalar::zero()), Err(Error::DivisionByZero));
        assert_eq!(ParamScalar::zero().inv(), Err(Error::DivisionByZero));
    }

    #[test]
    fn specialize_examples() {
        let k1 = MonomialMap::identity().set(Param::QLong, ParamMonomial::power(Param::Delta, 1, 1));
        assert_eq!(s("qL").substitute(&k1).unwrap(), s("d"));
        let k2 = MonomialMap::identity().set(Param::QShort, ParamMonomial::power(Param::Delta, 4, 1));
        assert_eq!(s("qS").substitute(&k2).unwrap(), s("d^4"));
        assert!(s("1").substitute(&k1).unwrap().is_one());
        let pole = s("1/(qL - d)");
        assert_eq!(pole.substitute(&k1), Err(Error::SpecializationPole));
    }

    #[test]
    fn numeric_examples() {
        let pt = NumericPoint::new((2, rat(2, 3)), (2, rat(2, 1)), (1, rat(1, 1)));
        assert_eq!(s("d").evaluate_numeric(&pt).unwrap(), rat(4, 9));
        assert_eq!(s("qL^(1/2) + qL^(-1/2)").evaluate_numeric(&pt).unwrap(), rat(5, 2));
        let k = MonomialMap::identity().set(Param::QLong, ParamMonomial::power(Param::Delta, 1, 1));
        assert!(s("(1 - qL)/(1 - d)").substitute(&k).unwrap().is_one());
        let pole = NumericPoint::new((1, rat(1, 1)), (1, rat(1, 1)), (1, rat(1, 1)));
        assert_eq!(s("1/(1 - d)").evaluate_numeric(&pole), Err(Error::EvaluationPole));
    }

    fn arb_poly() -> impl Strategy<Value = ParamScalar> {
        let term = (-3i64..=3, -2i64..=2, -2i64..=2, 0i64..=2).prop_map(|(c, a, b, h)| {
            ParamScalar::term(
                c,
                ParamMonomial::power(Param::Delta, a, 1).mul(&ParamMonomial::power(Param::QLong, b, 1 + h % 2)),
            )
        });
        proptest::collection::vec(term, 1..4).prop_map(|v| v.into_iter().sum())
    }

    fn arb_scalar() -> impl Strategy<Value = ParamScalar> {
        (arb_poly(), arb_poly()).prop_filter_map("nonzero denominator", |(n, d)| n.checked_div(&d).ok())
    }

    fn point() -> NumericPoint {
        NumericPoint::new((1, rat(3, 7)), (2, rat(5, 11)), (1, rat(2, 1)))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn field_axioms(a in arb_scalar(), b in arb_scalar(), c in arb_scalar()) {
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&a * &b, &b * &a);
            if !a.is_zero() {
                prop_assert!((&a * &a.inv().unwrap()).is_one());
            }
        }

        #[test]
        fn normalization_idempotent(a in arb_scalar()) {
            let again = ParamScalar::normalized(a.num.clone(), a.den.clone());
            prop_assert_eq!(&again, &a);
        }

        #[test]
        fn structural_equality_matches_cross_multiplication(a in arb_scalar(), b in arb_scalar()) {
            let x = &a * &b;
            let y = &b * &a;
            prop_assert_eq!(x == y, x.equals_cross(&y));
            prop_assert_eq!(a == b, a.equals_cross(&b));
        }

        #[test]
        fn evaluation_is_a_homomorphism(a in arb_scalar(), b in arb_scalar()) {
            let pt = point();
            if let (Ok(x), Ok(y)) = (a.evaluate_numeric(&pt), b.evaluate_numeric(&pt)) {
                prop_assert_eq!((&a + &b).evaluate_numeric(&pt).unwrap(), &x + &y);
                prop_assert_eq!((&a * &b).evaluate_numeric(&pt).unwrap(), &x * &y);
            }
        }

        #[test]
        fn display_roundtrip(a in arb_scalar()) {
            let back: ParamScalar = a.to_string().parse().unwrap();
            prop_assert_eq!(back, a);
        }
    }
}
