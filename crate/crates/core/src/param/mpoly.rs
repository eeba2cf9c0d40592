//! Sparse multivariate polynomials over `Z` in a fixed number of variables.
//!
//! Terms are kept sorted ascending in lexicographic order of the exponent
//! vector (variable 0 most significant). Exponents may be negative when the
//! type is used as a Laurent polynomial; the gcd and exact-division routines
//! require non-negative exponents.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub(crate) const NV: usize = 3;
pub(crate) type Exps = [i64; NV];

#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub(crate) struct MPoly {
    terms: Vec<(Exps, BigInt)>,
}

fn add_exps(a: &Exps, b: &Exps) -> Exps {
    let mut r = *a;
    for i in 0..NV {
        r[i] += b[i];
    }
    r
}

fn sub_exps(a: &Exps, b: &Exps) -> Exps {
    let mut r = *a;
    for i in 0..NV {
        r[i] -= b[i];
    }
    r
}

impl MPoly {
    pub fn zero() -> Self {
        MPoly { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            MPoly { terms: vec![([0; NV], c)] }
        }
    }

    pub fn monomial(e: Exps, c: BigInt) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            MPoly { terms: vec![(e, c)] }
        }
    }

    /// Builds a polynomial from arbitrary (possibly repeated) terms.
    pub fn from_terms(mut terms: Vec<(Exps, BigInt)>) -> Self {
        terms.sort_unstable_by(|a, b| a.0.cmp(&b.0));
        let mut out: Vec<(Exps, BigInt)> = Vec::with_capacity(terms.len());
        for (e, c) in terms {
            match out.last_mut() {
                Some(last) if last.0 == e => last.1 += c,
                _ => {
                    if let Some(last) = out.last() {
                        if last.1.is_zero() {
                            out.pop();
                        }
                    }
                    out.push((e, c));
                }
            }
        }
        if let Some(last) = out.last() {
            if last.1.is_zero() {
                out.pop();
            }
        }
        MPoly { terms: out }
    }

    pub fn terms(&self) -> &[(Exps, BigInt)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0 == [0; NV] && self.terms[0].1.is_one()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0 == [0; NV])
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn constant_value(&self) -> Option<BigInt> {
        if self.terms.is_empty() {
            Some(BigInt::zero())
        } else if self.is_constant() {
            Some(self.terms[0].1.clone())
        } else {
            None
        }
    }

    pub fn neg(&self) -> Self {
        MPoly { terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect() }
    }

    fn merge(&self, other: &Self, negate_other: bool) -> Self {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    let c = if negate_other { -&b[j].1 } else { b[j].1.clone() };
                    out.push((b[j].0, c));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = if negate_other { &a[i].1 - &b[j].1 } else { &a[i].1 + &b[j].1 };
                    if !c.is_zero() {
                        out.push((a[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        for t in &b[j..] {
            let c = if negate_other { -&t.1 } else { t.1.clone() };
            out.push((t.0, c));
        }
        MPoly { terms: out }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.merge(other, false)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.merge(other, true)
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        if other.terms.len() == 1 {
            return self.mul_term(&other.terms[0].0, &other.terms[0].1);
        }
        if self.terms.len() == 1 {
            return other.mul_term(&self.terms[0].0, &self.terms[0].1);
        }
        let mut prod = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                prod.push((add_exps(ea, eb), ca * cb));
            }
        }
        Self::from_terms(prod)
    }

    pub fn mul_term(&self, e: &Exps, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        MPoly { terms: self.terms.iter().map(|(te, tc)| (add_exps(te, e), tc * c)).collect() }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        self.mul_term(&[0; NV], c)
    }

    pub fn shift(&self, e: &Exps) -> Self {
        MPoly { terms: self.terms.iter().map(|(te, tc)| (add_exps(te, e), tc.clone())).collect() }
    }

    /// Exact division of every coefficient by `c`.
    pub fn div_scalar(&self, c: &BigInt) -> Self {
        MPoly { terms: self.terms.iter().map(|(e, tc)| (*e, tc / c)).collect() }
    }

    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for (_, c) in &self.terms {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    pub fn min_exps(&self) -> Exps {
        let mut m = [i64::MAX; NV];
        for (e, _) in &self.terms {
            for i in 0..NV {
                m[i] = m[i].min(e[i]);
            }
        }
        if self.terms.is_empty() {
            [0; NV]
        } else {
            m
        }
    }

    pub fn degree(&self, v: usize) -> i64 {
        self.terms.iter().map(|(e, _)| e[v]).max().unwrap_or(0)
    }

    /// Applies `f` to every exponent vector. `f` must be injective.
    pub fn map_exps(&self, f: impl Fn(&Exps) -> Exps) -> Self {
        Self::from_terms(self.terms.iter().map(|(e, c)| (f(e), c.clone())).collect())
    }

    /// Groups the polynomial as a polynomial in variable `v`, returning
    /// `(degree, coefficient)` pairs with coefficients free of `v`.
    fn coefficients_in(&self, v: usize) -> Vec<(i64, MPoly)> {
        let mut groups: std::collections::BTreeMap<i64, Vec<(Exps, BigInt)>> = Default::default();
        for (e, c) in &self.terms {
            let mut e2 = *e;
            e2[v] = 0;
            groups.entry(e[v]).or_default().push((e2, c.clone()));
        }
        groups.into_iter().map(|(d, t)| (d, MPoly::from_terms(t))).collect()
    }

    fn leading_coefficient_in(&self, v: usize) -> (i64, MPoly) {
        let d = self.degree(v);
        let t: Vec<_> = self
            .terms
            .iter()
            .filter(|(e, _)| e[v] == d)
            .map(|(e, c)| {
                let mut e2 = *e;
                e2[v] = 0;
                (e2, c.clone())
            })
            .collect();
        (d, MPoly::from_terms(t))
    }

    fn uses_var(&self, v: usize) -> bool {
        self.terms.iter().any(|(e, _)| e[v] != 0)
    }

    /// Exact division for polynomials with non-negative exponents.
    pub fn exact_div(&self, b: &MPoly) -> Option<MPoly> {
        if b.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        if b.terms.len() == 1 {
            let (be, bc) = &b.terms[0];
            let mut out = Vec::with_capacity(self.terms.len());
            for (e, c) in &self.terms {
                let d = sub_exps(e, be);
                if d.iter().any(|&x| x < 0) {
                    return None;
                }
                let (q, r) = c.div_rem(bc);
                if !r.is_zero() {
                    return None;
                }
                out.push((d, q));
            }
            return Some(MPoly { terms: out });
        }
        let (lbe, lbc) = b.terms.last().unwrap().clone();
        let mut rem = self.clone();
        let mut quot: Vec<(Exps, BigInt)> = Vec::new();
        while let Some((re, rc)) = rem.terms.last().cloned() {
            let d = sub_exps(&re, &lbe);
            if d.iter().any(|&x| x < 0) {
                return None;
            }
            let (q, r) = rc.div_rem(&lbc);
            if !r.is_zero() {
                return None;
            }
            rem = rem.sub(&b.mul_term(&d, &q));
            quot.push((d, q));
        }
        Some(MPoly::from_terms(quot))
    }

    /// Sparse pseudo-remainder of `self` by `g` with respect to variable `v`.
    fn pseudo_rem(&self, g: &MPoly, v: usize) -> MPoly {
        let (dg, lcg) = g.leading_coefficient_in(v);
        let mut r = self.clone();
        loop {
            if r.is_zero() {
                return r;
            }
            let (dr, lcr) = r.leading_coefficient_in(v);
            if dr < dg {
                return r;
            }
            let mut shift = [0; NV];
            shift[v] = dr - dg;
            r = r.mul(&lcg).sub(&g.mul(&lcr).shift(&shift));
        }
    }

    fn normalize_sign(self) -> Self {
        match self.terms.last() {
            Some((_, c)) if c.is_negative() => self.neg(),
            _ => self,
        }
    }

    /// Content with respect to `v`: gcd of the coefficients in `v`.
    fn content_in(&self, v: usize) -> MPoly {
        let coeffs = self.coefficients_in(v);
        let mut g = MPoly::zero();
        // Constants first: they make the gcd cheap.
        let mut ordered: Vec<&MPoly> = coeffs.iter().map(|(_, c)| c).collect();
        ordered.sort_by_key(|c| c.len());
        for c in ordered {
            g = gcd(&g, c);
            if g.is_one() {
                break;
            }
        }
        g
    }
}

/// Greatest common divisor over `Z` of polynomials with non-negative
/// exponents. The result has positive leading coefficient.
pub(crate) fn gcd(a: &MPoly, b: &MPoly) -> MPoly {
    if a.is_zero() {
        return b.clone().normalize_sign();
    }
    if b.is_zero() {
        return a.clone().normalize_sign();
    }
    if a.is_constant() || b.is_constant() {
        let g = a.content().gcd(&b.content());
        return MPoly::constant(g);
    }
    if a.is_monomial() && b.is_monomial() {
        let (ea, ca) = &a.terms[0];
        let (eb, cb) = &b.terms[0];
        let mut e = [0; NV];
        for i in 0..NV {
            e[i] = ea[i].min(eb[i]);
        }
        return MPoly::monomial(e, ca.gcd(cb));
    }
    if a == b {
        return a.clone().normalize_sign();
    }
    // Work in the sublattice of exponents actually used.
    let mut scale = [0i64; NV];
    for (e, _) in a.terms.iter().chain(&b.terms) {
        for v in 0..NV {
            scale[v] = scale[v].gcd(&e[v]);
        }
    }
    if scale.iter().any(|&s| s > 1) {
        let s = scale.map(|x| x.max(1));
        let down = |e: &Exps| {
            let mut r = *e;
            for v in 0..NV {
                r[v] /= s[v];
            }
            r
        };
        let g = gcd(&a.map_exps(down), &b.map_exps(down));
        return g.map_exps(|e| {
            let mut r = *e;
            for v in 0..NV {
                r[v] *= s[v];
            }
            r
        });
    }
    match heuristic_gcd(a, b) {
        Some(h) => h.normalize_sign(),
        None => prs_gcd(a, b),
    }
}

fn max_norm(p: &MPoly) -> BigInt {
    p.terms.iter().map(|(_, c)| c.abs()).max().unwrap_or_default()
}

/// `p` with variable `v` replaced by the integer `x`.
fn eval_var(p: &MPoly, v: usize, x: &BigInt) -> MPoly {
    MPoly::from_terms(
        p.terms
            .iter()
            .map(|(e, c)| {
                let mut e2 = *e;
                let k = e2[v];
                e2[v] = 0;
                (e2, c * num_traits::pow(x.clone(), k as usize))
            })
            .collect(),
    )
}

/// Inverse of `eval_var`: reads every coefficient in balanced base `x`.
fn interpolate_var(p: &MPoly, v: usize, x: &BigInt) -> MPoly {
    let half = x / 2;
    let mut out = Vec::new();
    for (e, c) in &p.terms {
        let mut c = c.clone();
        let mut k = 0i64;
        while !c.is_zero() {
            let mut r = c.mod_floor(x);
            if r > half {
                r -= x;
            }
            c = (&c - &r) / x;
            if !r.is_zero() {
                let mut e2 = *e;
                e2[v] = k;
                out.push((e2, r));
            }
            k += 1;
        }
    }
    MPoly::from_terms(out)
}

/// Heuristic gcd (Char–Geddes–Gonnet): evaluate
/// one variable at a large integer, recurse, and lift by balanced `x`-adic
/// expansion, accepting the candidate only if it divides both inputs.
fn heuristic_gcd(a: &MPoly, b: &MPoly) -> Option<MPoly> {
    if a.is_constant() || b.is_constant() {
        return Some(MPoly::constant(a.content().gcd(&b.content())));
    }
    let v = (0..NV).find(|&v| a.uses_var(v) || b.uses_var(v))?;
    let common = a.content().gcd(&b.content());
    let a = &a.div_scalar(&common);
    let b = &b.div_scalar(&common);
    let na = max_norm(a);
    let nb = max_norm(b);
    let bound: BigInt = BigInt::from(2) * na.clone().min(nb.clone()) + BigInt::from(29);
    let mut x =
        bound.max(BigInt::from(2) * (na / a.terms.last()?.1.abs()).min(nb / b.terms.last()?.1.abs()) + BigInt::from(2));
    for _ in 0..6 {
        let ea = eval_var(a, v, &x);
        let eb = eval_var(b, v, &x);
        if !ea.is_zero() && !eb.is_zero() {
            if let Some(g) = heuristic_gcd(&ea, &eb) {
                let h = interpolate_var(&g, v, &x);
                if !h.is_zero() {
                    let h = h.div_scalar(&h.content());
                    if a.exact_div(&h).is_some() && b.exact_div(&h).is_some() {
                        return Some(h.scale(&common));
                    }
                }
            }
        }
        x = &x * BigInt::from(73794) * x.sqrt().sqrt() / BigInt::from(27011);
    }
    None
}

/// Primitive-remainder-sequence gcd; the slow but certain fallback.
fn prs_gcd(a: &MPoly, b: &MPoly) -> MPoly {
    // Pick a variable used by both if possible.
    let in_a: Vec<bool> = (0..NV).map(|v| a.uses_var(v)).collect();
    let in_b: Vec<bool> = (0..NV).map(|v| b.uses_var(v)).collect();
    if let Some(v) = (0..NV).find(|&v| in_a[v] != in_b[v]) {
        // Only one side depends on v: the gcd divides the content of that side.
        return if in_a[v] { gcd(&a.content_in(v), b) } else { gcd(a, &b.content_in(v)) };
    }
    let v = (0..NV)
        .filter(|&v| in_a[v])
        .min_by_key(|&v| a.degree(v).max(b.degree(v)))
        .expect("non-constant polynomial uses a variable");
    let ca = a.content_in(v);
    let cb = b.content_in(v);
    let cg = gcd(&ca, &cb);
    let pa = a.exact_div(&ca).expect("content divides");
    let pb = b.exact_div(&cb).expect("content divides");
    let (mut f, mut g) = if pa.degree(v) >= pb.degree(v) { (pa, pb) } else { (pb, pa) };
    let prim = loop {
        let r = f.pseudo_rem(&g, v);
        if r.is_zero() {
            break g;
        }
        if !r.uses_var(v) {
            break MPoly::one();
        }
        let cr = r.content_in(v);
        f = g;
        g = r.exact_div(&cr).expect("content divides");
    };
    let cp = prim.content_in(v);
    let prim = prim.exact_div(&cp).expect("content divides");
    cg.mul(&prim).normalize_sign()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(terms: &[([i64; 3], i64)]) -> MPoly {
        MPoly::from_terms(terms.iter().map(|(e, c)| (*e, BigInt::from(*c))).collect())
    }

    #[test]
    fn gcd_of_products() {
        // (x - 1)(x + y) and (x - 1)(y^2 + 3)
        let a = p(&[([1, 0, 0], 1), ([0, 0, 0], -1)]);
        let b = p(&[([1, 0, 0], 1), ([0, 1, 0], 1)]);
        let c = p(&[([0, 2, 0], 1), ([0, 0, 0], 3)]);
        let g = gcd(&a.mul(&b), &a.mul(&c));
        assert_eq!(g, a);
    }

    #[test]
    fn gcd_with_integer_content() {
        let a = p(&[([1, 0, 0], 6), ([0, 0, 0], 4)]);
        let b = p(&[([1, 0, 1], 9), ([0, 0, 1], 6)]);
        assert_eq!(gcd(&a, &b), p(&[([1, 0, 0], 3), ([0, 0, 0], 2)]));
    }

    #[test]
    fn coprime_is_one() {
        let a = p(&[([2, 0, 0], 1), ([0, 1, 0], -1)]);
        let b = p(&[([1, 1, 0], 1), ([0, 0, 0], 1)]);
        assert!(gcd(&a, &b).is_one());
    }

    #[test]
    fn exact_division_roundtrip() {
        let a = p(&[([1, 0, 0], 1), ([0, 2, 1], -3), ([0, 0, 0], 2)]);
        let b = p(&[([3, 1, 0], 5), ([0, 1, 2], 1)]);
        let ab = a.mul(&b);
        assert_eq!(ab.exact_div(&b), Some(a.clone()));
        assert_eq!(ab.exact_div(&a), Some(b));
        assert_eq!(a.exact_div(&p(&[([1, 0, 0], 1)])), None);
    }

    fn arb_poly() -> impl Strategy<Value = MPoly> {
        let term = ((0i64..3, 0i64..3, 0i64..2), -4i64..5).prop_map(|((a, b, c), k)| ([a, b, c], BigInt::from(k)));
        proptest::collection::vec(term, 1..4).prop_map(MPoly::from_terms)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn heuristic_agrees_with_prs(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
            prop_assume!(!a.is_zero() && !b.is_zero() && !c.is_zero());
            let (ac, bc) = (a.mul(&c), b.mul(&c));
            let slow = prs_gcd(&ac, &bc);
            prop_assert!(slow.exact_div(&c).is_some());
            if let Some(fast) = heuristic_gcd(&ac, &bc) {
                prop_assert_eq!(fast.normalize_sign(), slow.clone());
            }
            prop_assert_eq!(gcd(&ac, &bc), slow);
        }
    }
}
