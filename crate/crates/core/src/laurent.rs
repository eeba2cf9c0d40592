//! Laurent polynomials in `x_1..x_n` with exponents in `B` and
//! coefficients in the parameter field.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::ext_weyl::GroupElt;
use crate::param::{MonomialMap, Param, ParamMonomial, ParamScalar};
use crate::root_datum::{Rat, RootDatum, Weight, WeylElt};

#[derive(Clone, PartialEq, Eq, Default, Debug)]
pub struct LaurentPoly {
    terms: BTreeMap<Weight, ParamScalar>,
}

/// Which of the two evaluation points `q^{±ρ} δ^c` to use.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Sign {
    Minus,
    Plus,
}

/// `δ^e` for a rational `e`.
pub fn delta_power(e: Rat) -> ParamMonomial {
    ParamMonomial::power(Param::Delta, *e.numer(), *e.denom())
}

/// `Π_ν q_ν^{s (b, ρ_ν)}` with `s = ±1`.
pub fn q_rho_power(d: &RootDatum, b: &Weight, s: i64) -> ParamMonomial {
    let mut m = ParamMonomial::one();
    for &nu in d.length_classes() {
        let e = d.pair_rho(b, nu) * s;
        m = m.mul(&ParamMonomial::power(d.class_param(nu), *e.numer(), *e.denom()));
    }
    m
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(n: usize, c: ParamScalar) -> Self {
        Self::monomial(Weight::zero(n), c)
    }

    pub fn one(n: usize) -> Self {
        Self::constant(n, ParamScalar::one())
    }

    pub fn monomial(b: Weight, c: ParamScalar) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(b, c);
        }
        LaurentPoly { terms }
    }

    /// `x_b`.
    pub fn x(b: Weight) -> Self {
        Self::monomial(b, ParamScalar::one())
    }

    pub fn from_terms(it: impl IntoIterator<Item = (Weight, ParamScalar)>) -> Self {
        let mut p = Self::zero();
        for (b, c) in it {
            p.add_term(b, &c);
        }
        p
    }

    pub fn add_term(&mut self, b: Weight, c: &ParamScalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(b) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let v = e.get() + c;
                if v.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = v;
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Weight, &ParamScalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, b: &Weight) -> ParamScalar {
        self.terms.get(b).cloned().unwrap_or_else(ParamScalar::zero)
    }

    pub fn support(&self) -> impl Iterator<Item = &Weight> {
        self.terms.keys()
    }

    /// The only coefficient, if the polynomial is a constant.
    pub fn as_constant(&self) -> Option<ParamScalar> {
        match self.terms.len() {
            0 => Some(ParamScalar::zero()),
            1 => {
                let (b, c) = self.terms.iter().next().expect("one term");
                b.is_zero().then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn add(&self, o: &LaurentPoly) -> LaurentPoly {
        let mut r = self.clone();
        for (b, c) in &o.terms {
            r.add_term(b.clone(), c);
        }
        r
    }

    pub fn sub(&self, o: &LaurentPoly) -> LaurentPoly {
        let mut r = self.clone();
        for (b, c) in &o.terms {
            r.add_term(b.clone(), &-c);
        }
        r
    }

    pub fn neg(&self) -> LaurentPoly {
        LaurentPoly { terms: self.terms.iter().map(|(b, c)| (b.clone(), -c)).collect() }
    }

    pub fn scale(&self, s: &ParamScalar) -> LaurentPoly {
        if s.is_zero() {
            return Self::zero();
        }
        LaurentPoly { terms: self.terms.iter().map(|(b, c)| (b.clone(), c * s)).collect() }
    }

    pub fn mul(&self, o: &LaurentPoly) -> LaurentPoly {
        let mut acc: BTreeMap<Weight, Vec<ParamScalar>> = BTreeMap::new();
        for (b, c) in &self.terms {
            for (b2, c2) in &o.terms {
                acc.entry(b.add(b2)).or_default().push(c * c2);
            }
        }
        LaurentPoly {
            terms: acc
                .into_iter()
                .filter_map(|(b, v)| {
                    let s: ParamScalar = v.into_iter().sum();
                    (!s.is_zero()).then_some((b, s))
                })
                .collect(),
        }
    }

    pub fn mul_monomial(&self, b: &Weight, c: &ParamScalar) -> LaurentPoly {
        if c.is_zero() {
            return Self::zero();
        }
        LaurentPoly { terms: self.terms.iter().map(|(k, v)| (k.add(b), v * c)).collect() }
    }

    pub fn pow(&self, n: usize, k: u32) -> LaurentPoly {
        let mut acc = Self::one(n);
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// `ŵ(x_λ) = x_{wλ} δ^{-(λ, c)}` extended linearly.
    pub fn act(&self, d: &RootDatum, g: &GroupElt) -> LaurentPoly {
        LaurentPoly::from_terms(self.terms.iter().map(|(b, c)| {
            let (wb, e) = g.act_weight(d, b);
            (wb, c.mul_monomial(&delta_power(e)))
        }))
    }

    pub fn act_weyl(&self, w: &WeylElt) -> LaurentPoly {
        LaurentPoly { terms: self.terms.iter().map(|(b, c)| (w.apply(b), c.clone())).collect() }
    }

    /// `x_b ↦ x_{-b}`.
    pub fn bar(&self) -> LaurentPoly {
        LaurentPoly { terms: self.terms.iter().map(|(b, c)| (b.neg(), c.clone())).collect() }
    }

    pub fn constant_term(&self) -> ParamScalar {
        self.terms.iter().find(|(b, _)| b.is_zero()).map(|(_, c)| c.clone()).unwrap_or_else(ParamScalar::zero)
    }

    pub fn is_w_invariant(&self, d: &RootDatum) -> bool {
        (0..d.rank()).all(|i| self.act_weyl(&d.simple_reflection(i)) == *self)
    }

    /// Substitutes every `x_λ` by a scalar.
    pub fn evaluate_with(&self, f: impl Fn(&Weight) -> ParamScalar) -> ParamScalar {
        self.terms.iter().map(|(b, c)| c * &f(b)).sum()
    }

    /// Evaluation at `q^{∓ρ} δ^c`:
    /// `x_λ ↦ δ^{(c, λ)} Π_ν q_ν^{∓(λ, ρ_ν)}` (upper sign for `Minus`).
    pub fn evaluate_at_rho_point(&self, d: &RootDatum, c: &Weight, sign: Sign) -> ParamScalar {
        let s = match sign {
            Sign::Minus => -1,
            Sign::Plus => 1,
        };
        self.evaluate_with(|b| ParamScalar::monomial(rho_point_monomial(d, b, c, s)))
    }

    /// Applies a parameter substitution to every coefficient.
    pub fn substitute(&self, map: &MonomialMap) -> Result<LaurentPoly> {
        let mut out = LaurentPoly::zero();
        for (b, c) in &self.terms {
            out.add_term(b.clone(), &c.substitute(map)?);
        }
        Ok(out)
    }

    pub fn map_coefficients(&self, f: impl Fn(&ParamScalar) -> ParamScalar) -> LaurentPoly {
        LaurentPoly::from_terms(self.terms.iter().map(|(b, c)| (b.clone(), f(c))))
    }

    /// The largest `|k_i|` over the support.
    pub fn max_abs_exponent(&self) -> i64 {
        self.terms.keys().flat_map(|b| b.coords().iter().map(|x| x.abs())).max().unwrap_or(0)
    }
}

pub(crate) fn rho_point_monomial(d: &RootDatum, b: &Weight, c: &Weight, s: i64) -> ParamMonomial {
    delta_power(d.pair_weights(c, b)).mul(&q_rho_power(d, b, s))
}

/// `m_b = Σ_{c ∈ W(b)} x_c` for `b ∈ B_-`.
pub fn monomial_sym(d: &RootDatum, b: &Weight) -> Result<LaurentPoly> {
    if b.rank() != d.rank() {
        return Err(Error::DimensionMismatch { expected: d.rank(), got: b.rank() });
    }
    if !b.is_antidominant() {
        return Err(Error::NotAntidominant(b.to_string()));
    }
    Ok(orbit_sum(d, b))
}

/// `Σ_{c ∈ W(b)} x_c` for any `b`.
pub fn orbit_sum(d: &RootDatum, b: &Weight) -> LaurentPoly {
    LaurentPoly { terms: d.weyl_orbit(b).into_iter().map(|c| (c, ParamScalar::one())).collect() }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, (b, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "({b} ; {c})")?;
        }
        f.write_str("]")
    }
}

impl std::str::FromStr for LaurentPoly {
    type Err = Error;

    /// Parses the serialization produced by `Display`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = |m: &str| Error::Parse(format!("{m} in polynomial '{s}'"));
        let body =
            s.trim().strip_prefix('[').and_then(|x| x.strip_suffix(']')).ok_or_else(|| bad("missing brackets"))?;
        let mut out = LaurentPoly::zero();
        let mut rest = body.trim();
        while !rest.is_empty() {
            rest = rest.strip_prefix('(').ok_or_else(|| bad("expected '('"))?;
            let close = rest.find(']').ok_or_else(|| bad("expected ']'"))?;
            let coords: Vec<i64> = rest[..close]
                .trim()
                .strip_prefix('[')
                .ok_or_else(|| bad("expected '['"))?
                .split(',')
                .filter(|t| !t.trim().is_empty())
                .map(|t| t.trim().parse().map_err(|_| bad("bad coordinate")))
                .collect::<Result<_>>()?;
            rest = rest[close + 1..].trim_start();
            rest = rest.strip_prefix(';').ok_or_else(|| bad("expected ';'"))?;
            // The coefficient ends at the ')' that balances the opening one.
            let mut depth = 0i32;
            let mut end = None;
            for (i, ch) in rest.char_indices() {
                match ch {
                    '(' => depth += 1,
                    ')' if depth == 0 => {
                        end = Some(i);
                        break;
                    }
                    ')' => depth -= 1,
                    _ => {}
                }
            }
            let end = end.ok_or_else(|| bad("unterminated term"))?;
            let c: ParamScalar = rest[..end].trim().parse()?;
            out.add_term(Weight::from_slice(&coords), &c);
            rest = rest[end + 1..].trim_start();
            if let Some(r) = rest.strip_prefix(',') {
                rest = r.trim_start();
            }
        }
        Ok(out)
    }
}
