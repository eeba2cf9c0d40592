//! The coefficient field `Q(δ^{1/N}, q_L^{1/N}, q_S^{1/N})`.
//!
//! Exponents are rational with denominator dividing [`EXP_DENOM`]; internally
//! they are stored as integer multiples of `1/EXP_DENOM`.

mod mpoly;
mod parse;
mod scalar;

use std::fmt;

use num_rational::Rational64;

use crate::error::{Error, Result};

pub(crate) use mpoly::{Exps, NV};
pub use scalar::{MonomialMap, NumericPoint, ParamScalar};

/// Common denominator of every parameter exponent.
pub const EXP_DENOM: i64 = 10080;

/// Formal parameters: `δ` and one `q` per root length.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Param {
    Delta,
    QLong,
    QShort,
}

impl Param {
    pub const ALL: [Param; NV] = [Param::Delta, Param::QLong, Param::QShort];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            Param::Delta => "d",
            Param::QLong => "qL",
            Param::QShort => "qS",
        }
    }
}

impl fmt::Display for Param {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

pub(crate) fn scale_exponent(e: Rational64) -> Result<i64> {
    let scaled = e * Rational64::from_integer(EXP_DENOM);
    if scaled.is_integer() {
        Ok(scaled.to_integer())
    } else {
        Err(Error::UnrepresentableExponent(e.to_string()))
    }
}

/// A monomial `δ^a q_L^b q_S^c` with rational exponents.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct ParamMonomial(pub(crate) Exps);

impl ParamMonomial {
    pub fn one() -> Self {
        ParamMonomial([0; NV])
    }

    pub fn new(p: Param, e: Rational64) -> Result<Self> {
        let mut m = [0; NV];
        m[p.index()] = scale_exponent(e)?;
        Ok(ParamMonomial(m))
    }

    /// `p^(num/den)`; panics if the exponent is outside the lattice.
    pub fn power(p: Param, num: i64, den: i64) -> Self {
        Self::new(p, Rational64::new(num, den)).expect("exponent outside the parameter lattice")
    }

    pub fn exponent(&self, p: Param) -> Rational64 {
        Rational64::new(self.0[p.index()], EXP_DENOM)
    }

    pub fn is_one(&self) -> bool {
        self.0 == [0; NV]
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut r = self.0;
        for (x, y) in r.iter_mut().zip(other.0.iter()) {
            *x += y;
        }
        ParamMonomial(r)
    }

    pub fn inv(&self) -> Self {
        ParamMonomial(self.0.map(|x| -x))
    }

    pub fn pow(&self, k: i64) -> Self {
        ParamMonomial(self.0.map(|x| x * k))
    }
}

pub(crate) fn fmt_exps(f: &mut fmt::Formatter<'_>, e: &Exps) -> fmt::Result {
    let mut first = true;
    for p in Param::ALL {
        let x = e[p.index()];
        if x == 0 {
            continue;
        }
        if !first {
            f.write_str("*")?;
        }
        first = false;
        let r = Rational64::new(x, EXP_DENOM);
        if r.is_integer() && x > 0 {
            if r.to_integer() == 1 {
                write!(f, "{p}")?;
            } else {
                write!(f, "{p}^{}", r.to_integer())?;
            }
        } else if r.is_integer() {
            write!(f, "{p}^({})", r.to_integer())?;
        } else {
            write!(f, "{p}^({}/{})", r.numer(), r.denom())?;
        }
    }
    if first {
        f.write_str("1")?;
    }
    Ok(())
}

impl fmt::Display for ParamMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_exps(f, &self.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn monomial_display() {
        let m = ParamMonomial::power(Param::Delta, 2, 1).mul(&ParamMonomial::power(Param::QLong, 1, 1));
        assert_eq!(m.to_string(), "d^2*qL");
        assert_eq!(ParamMonomial::power(Param::Delta, 1, 2).to_string(), "d^(1/2)");
        assert_eq!(ParamMonomial::power(Param::QShort, -1, 1).to_string(), "qS^(-1)");
        assert_eq!(ParamMonomial::one().to_string(), "1");
    }

    #[test]
    fn unrepresentable_exponent() {
        assert!(ParamMonomial::new(Param::Delta, Rational64::new(1, 11)).is_err());
    }
}
