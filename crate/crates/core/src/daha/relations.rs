//! Machine check of the defining relations (o)–(vi) on a monomial basis.

use std::fmt;

use super::generators::Daha;
use super::operator::NormalFormOperator;
use crate::error::Result;
use crate::ext_weyl::{pi, pi_indices, pi_permutation};
use crate::laurent::{delta_power, LaurentPoly};
use crate::param::{ParamMonomial, ParamScalar};
use crate::root_datum::{Rat, RootDatum, Weight};

/// Anything that realizes `T_j`, `π_r^{±1}` as operators on Laurent
/// polynomials; `X_b` always acts by multiplication.
pub trait Generators {
    fn datum(&self) -> &RootDatum;
    /// `q_j^{1/2}` as used in the quadratic relation.
    fn t_half(&self, j: usize) -> ParamScalar;
    fn t(&self, j: usize, f: &LaurentPoly) -> Result<LaurentPoly>;
    fn pi(&self, r: usize, f: &LaurentPoly) -> Result<LaurentPoly>;
    fn pi_inv(&self, r: usize, f: &LaurentPoly) -> Result<LaurentPoly>;
}

impl Generators for Daha<'_> {
    fn datum(&self) -> &RootDatum {
        Daha::datum(self)
    }
    fn t_half(&self, j: usize) -> ParamScalar {
        Daha::t_half(self, j).clone()
    }
    fn t(&self, j: usize, f: &LaurentPoly) -> Result<LaurentPoly> {
        self.apply_t(j, f)
    }
    fn pi(&self, r: usize, f: &LaurentPoly) -> Result<LaurentPoly> {
        self.apply_pi(r, f)
    }
    fn pi_inv(&self, r: usize, f: &LaurentPoly) -> Result<LaurentPoly> {
        self.apply_pi_inv(r, f)
    }
}

/// Generators given explicitly as normal-form operators.
pub struct OperatorGenerators<'a> {
    pub datum: &'a RootDatum,
    pub t_half: Vec<ParamScalar>,
    pub t: Vec<NormalFormOperator>,
    /// `(r, π_r, π_r^{-1})` for every `r ∈ O`.
    pub pi: Vec<(usize, NormalFormOperator, NormalFormOperator)>,
}

impl OperatorGenerators<'_> {
    fn pi_pair(&self, r: usize) -> &(usize, NormalFormOperator, NormalFormOperator) {
        self.pi.iter().find(|p| p.0 == r).expect("r ∈ O")
    }
}

impl Generators for OperatorGenerators<'_> {
    fn datum(&self) -> &RootDatum {
        self.datum
    }
    fn t_half(&self, j: usize) -> ParamScalar {
        self.t_half[j].clone()
    }
    fn t(&self, j: usize, f: &LaurentPoly) -> Result<LaurentPoly> {
        self.t[j].apply(self.datum, f)
    }
    fn pi(&self, r: usize, f: &LaurentPoly) -> Result<LaurentPoly> {
        self.pi_pair(r).1.apply(self.datum, f)
    }
    fn pi_inv(&self, r: usize, f: &LaurentPoly) -> Result<LaurentPoly> {
        self.pi_pair(r).2.apply(self.datum, f)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Relation {
    Quadratic,
    Braid,
    PiConjugation,
    PiGroup,
    TXT,
    T0XT0,
    Commutation,
    PiX,
}

impl Relation {
    pub const ALL: [Relation; 8] = [
        Relation::Quadratic,
        Relation::Braid,
        Relation::PiConjugation,
        Relation::PiGroup,
        Relation::TXT,
        Relation::T0XT0,
        Relation::Commutation,
        Relation::PiX,
    ];

    pub fn label(self) -> &'static str {
        match self {
            Relation::Quadratic => "(o) quadratic",
            Relation::Braid => "(i) braid",
            Relation::PiConjugation => "(ii) pi T pi^-1",
            Relation::PiGroup => "(ii') group law of Pi",
            Relation::TXT => "(iii) T_i X_b T_i",
            Relation::T0XT0 => "(iv) T_0 X_b T_0",
            Relation::Commutation => "(v) T_i X_b = X_b T_i",
            Relation::PiX => "(vi) pi X_b pi^-1",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationResult {
    pub relation: Relation,
    /// Number of (instance, monomial) pairs checked.
    pub checks: usize,
    /// First failing instance, if any.
    pub failure: Option<String>,
}

impl RelationResult {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationReport {
    pub datum: String,
    pub height: i64,
    pub results: Vec<RelationResult>,
}

impl RelationReport {
    pub fn all_passed(&self) -> bool {
        self.results.iter().all(RelationResult::passed)
    }

    pub fn get(&self, r: Relation) -> &RelationResult {
        self.results.iter().find(|x| x.relation == r).expect("every relation is reported")
    }
}

impl fmt::Display for RelationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.results {
            let status = if r.passed() { "pass" } else { "FAIL" };
            write!(
                f,
                "{} height={} {:<24} {} checks={}",
                self.datum,
                self.height,
                r.relation.label(),
                status,
                r.checks
            )?;
            if let Some(why) = &r.failure {
                write!(f, " first_failure={why}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// All weights with `|k_i| ≤ h`.
pub fn box_weights(n: usize, h: i64) -> Vec<Weight> {
    let mut out = vec![Weight::zero(n)];
    for i in 0..n {
        let mut next = Vec::new();
        for b in &out {
            for k in -h..=h {
                let mut c = b.clone();
                c.0[i] = k;
                next.push(c);
            }
        }
        out = next;
    }
    out
}

/// `m_ij` for affine nodes `i ≠ j`; `None` when the pair is unbounded.
pub fn braid_order(d: &RootDatum, i: usize, j: usize) -> Option<usize> {
    let vec = |k: usize| -> (Weight, Weight) {
        if k == 0 {
            let th = d.theta();
            (Weight::from_slice(&th.coef).neg(), th.coroot.neg())
        } else {
            let r = d.root(d.simple_root_index(k - 1));
            (Weight::from_slice(&r.coef), r.coroot.clone())
        }
    };
    let (ai, ci) = vec(i);
    let (aj, cj) = vec(j);
    // (α_i^∨, α_j)(α_j^∨, α_i)
    let p = ci.dot(aj.coords()) * cj.dot(ai.coords());
    match p {
        0 => Some(2),
        1 => Some(3),
        2 => Some(4),
        3 => Some(6),
        _ => None,
    }
}

fn finite_pairing(d: &RootDatum, b: &Weight, j: usize) -> i64 {
    if j == 0 {
        -d.pair_root(b, d.theta())
    } else {
        b.0[j - 1]
    }
}

struct Checker<'g, G: Generators> {
    g: &'g G,
    basis: Vec<LaurentPoly>,
}

impl<G: Generators> Checker<'_, G> {
    /// Runs `lhs == rhs` on every basis monomial.
    fn check(
        &self,
        result: &mut RelationResult,
        what: &str,
        lhs: impl Fn(&LaurentPoly) -> Result<LaurentPoly>,
        rhs: impl Fn(&LaurentPoly) -> Result<LaurentPoly>,
    ) {
        if result.failure.is_some() {
            return;
        }
        for f in &self.basis {
            result.checks += 1;
            let ok = match (lhs(f), rhs(f)) {
                (Ok(a), Ok(b)) => a == b,
                _ => false,
            };
            if !ok {
                result.failure = Some(format!("{what} on {f}"));
                return;
            }
        }
    }

    fn t_seq(&self, word: &[usize], f: &LaurentPoly) -> Result<LaurentPoly> {
        let mut g = f.clone();
        for &j in word.iter().rev() {
            g = self.g.t(j, &g)?;
        }
        Ok(g)
    }
}

/// Checks (o)–(vi) for the given generators on every `x_c` with `|c_i| ≤ height`.
pub fn verify_generators<G: Generators>(g: &G, height: i64) -> RelationReport {
    let d = g.datum();
    let n = d.rank();
    let basis: Vec<LaurentPoly> = box_weights(n, height).into_iter().map(LaurentPoly::x).collect();
    let ck = Checker { g, basis };
    let x_mul = |b: &Weight, f: &LaurentPoly| f.mul_monomial(b, &ParamScalar::one());
    // Test weights b for (iii)–(vi): a small box is enough to cover every
    // pairing value the relations distinguish.
    let probes = box_weights(n, 1);
    let mut results = Vec::new();

    let mut r = RelationResult { relation: Relation::Quadratic, checks: 0, failure: None };
    for j in 0..=n {
        let t = g.t_half(j);
        let c = &t - &t.inv().expect("nonzero");
        // T^2 - (t - t^{-1}) T - 1 = 0
        ck.check(
            &mut r,
            &format!("j={j}"),
            |f| {
                let tf = g.t(j, f)?;
                Ok(g.t(j, &tf)?.sub(&tf.scale(&c)).sub(f))
            },
            |_| Ok(LaurentPoly::zero()),
        );
    }
    results.push(r);

    let mut r = RelationResult { relation: Relation::Braid, checks: 0, failure: None };
    for i in 0..=n {
        for j in i + 1..=n {
            let Some(m) = braid_order(d, i, j) else { continue };
            let word = |a: usize, b: usize| -> Vec<usize> { (0..m).map(|k| if k % 2 == 0 { a } else { b }).collect() };
            let (wl, wr) = (word(i, j), word(j, i));
            ck.check(&mut r, &format!("i={i} j={j} m={m}"), |f| ck.t_seq(&wl, f), |f| ck.t_seq(&wr, f));
        }
    }
    results.push(r);

    let mut r = RelationResult { relation: Relation::PiConjugation, checks: 0, failure: None };
    for rr in pi_indices(d) {
        let perm = pi_permutation(d, rr).expect("r ∈ O");
        for (i, &j) in perm.iter().enumerate() {
            ck.check(&mut r, &format!("r={rr} i={i} j={j}"), |f| g.pi(rr, &g.t(i, &g.pi_inv(rr, f)?)?), |f| g.t(j, f));
        }
    }
    results.push(r);

    let mut r = RelationResult { relation: Relation::PiGroup, checks: 0, failure: None };
    let ps: Vec<(usize, crate::ext_weyl::GroupElt)> =
        pi_indices(d).into_iter().map(|k| (k, pi(d, k).expect("r ∈ O"))).collect();
    for (a, pa) in &ps {
        for (b, pb) in &ps {
            let prod = pa.mul(pb);
            let (c, _) = ps.iter().find(|(_, p)| *p == prod).expect("Π is a group");
            ck.check(&mut r, &format!("pi_{a} pi_{b} = pi_{c}"), |f| g.pi(*a, &g.pi(*b, f)?), |f| g.pi(*c, f));
        }
    }
    results.push(r);

    let mut r = RelationResult { relation: Relation::TXT, checks: 0, failure: None };
    for i in 1..=n {
        let ai = d.coroot(i - 1);
        for b in probes.iter().filter(|b| b.0[i - 1] == 1) {
            ck.check(
                &mut r,
                &format!("i={i} b={b}"),
                |f| g.t(i, &x_mul(b, &g.t(i, f)?)),
                |f| Ok(x_mul(&b.sub(&ai), f)),
            );
        }
    }
    results.push(r);

    let mut r = RelationResult { relation: Relation::T0XT0, checks: 0, failure: None };
    let theta = d.theta().coroot.clone();
    let dinv = ParamScalar::monomial(ParamMonomial::power(crate::param::Param::Delta, -1, 1));
    for b in probes.iter().filter(|b| d.pair_root(b, d.theta()) == -1) {
        ck.check(
            &mut r,
            &format!("b={b}"),
            |f| g.t(0, &x_mul(b, &g.t(0, f)?)),
            |f| Ok(f.mul_monomial(&b.add(&theta), &dinv)),
        );
    }
    results.push(r);

    let mut r = RelationResult { relation: Relation::Commutation, checks: 0, failure: None };
    for i in 0..=n {
        for b in probes.iter().filter(|b| finite_pairing(d, b, i) == 0 && !b.is_zero()) {
            ck.check(&mut r, &format!("i={i} b={b}"), |f| g.t(i, &x_mul(b, f)), |f| Ok(x_mul(b, &g.t(i, f)?)));
        }
    }
    results.push(r);

    let mut r = RelationResult { relation: Relation::PiX, checks: 0, failure: None };
    for rr in pi_indices(d) {
        let p = pi(d, rr).expect("r ∈ O");
        for b in &probes {
            let (img, e): (Weight, Rat) = p.act_weight(d, b);
            let coef = ParamScalar::monomial(delta_power(e));
            ck.check(
                &mut r,
                &format!("r={rr} b={b}"),
                |f| g.pi(rr, &x_mul(b, &g.pi_inv(rr, f)?)),
                |f| Ok(f.mul_monomial(&img, &coef)),
            );
        }
    }
    results.push(r);

    RelationReport { datum: d.name(), height, results }
}

/// Checks the relations for the standard polynomial representation.
pub fn verify_relations(d: &RootDatum, height: i64) -> RelationReport {
    verify_generators(&Daha::new(d), height)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::daha::Corruption;
    use crate::root_datum::Family;

    #[test]
    fn braid_orders() {
        let d = RootDatum::new(Family::A, 2).unwrap();
        assert_eq!(braid_order(&d, 1, 2), Some(3));
        assert_eq!(braid_order(&d, 0, 1), Some(3));
        let d = RootDatum::new(Family::B, 2).unwrap();
        assert_eq!(braid_order(&d, 1, 2), Some(4));
        let d = RootDatum::new(Family::G, 2).unwrap();
        assert_eq!(braid_order(&d, 1, 2), Some(6));
        let d = RootDatum::new(Family::A, 1).unwrap();
        assert_eq!(braid_order(&d, 0, 1), None);
    }

    #[test]
    fn a1_relations() {
        let d = RootDatum::new(Family::A, 1).unwrap();
        let rep = verify_relations(&d, 3);
        assert!(rep.all_passed(), "{rep}");
    }

    #[test]
    fn a2_relations() {
        let d = RootDatum::new(Family::A, 2).unwrap();
        let rep = verify_relations(&d, 2);
        assert!(rep.all_passed(), "{rep}");
        assert!(rep.get(Relation::Braid).checks > 0);
    }

    #[test]
    fn dropping_delta_breaks_iv() {
        let d = RootDatum::new(Family::A, 2).unwrap();
        let h = Daha::corrupted(&d, Corruption::DropDeltaT0).unwrap();
        let rep = verify_generators(&h, 1);
        assert!(!rep.get(Relation::T0XT0).passed());
    }
}
