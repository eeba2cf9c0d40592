//! Reduced irreducible root systems of types A–G.
//!
//! Normalization: long roots satisfy `(α,α) = 2`, and the fundamental
//! coweights satisfy `(b_i, α_j) = δ_ij`. Every vector is stored in the
//! `b`-basis, so its coordinates are its pairings with the simple roots.
//! The coweight lattice `B` is then `Z^n` and coroots have integer
//! coordinates (row `i` of the Cartan matrix is `a_i = α_i^∨`).

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;

use num_rational::Rational64;
use num_traits::{One, Signed, Zero};
use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::param::Param;

pub type Rat = Rational64;

/// Integer vector in the `b`-basis: the point `Σ k_i b_i` of `B`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Weight(pub SmallVec<[i64; 4]>);

impl Weight {
    pub fn zero(n: usize) -> Self {
        Weight(SmallVec::from_elem(0, n))
    }

    pub fn from_slice(c: &[i64]) -> Self {
        Weight(SmallVec::from_slice(c))
    }

    pub fn basis(n: usize, i: usize) -> Self {
        let mut w = Self::zero(n);
        w.0[i] = 1;
        w
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    /// Member of `B_+`.
    pub fn is_dominant(&self) -> bool {
        self.0.iter().all(|&x| x >= 0)
    }

    /// Member of `B_-`.
    pub fn is_antidominant(&self) -> bool {
        self.0.iter().all(|&x| x <= 0)
    }

    /// `Σ |k_i|`.
    pub fn height(&self) -> i64 {
        self.0.iter().map(|x| x.abs()).sum()
    }

    pub fn add(&self, o: &Weight) -> Weight {
        Weight(self.0.iter().zip(o.0.iter()).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, o: &Weight) -> Weight {
        Weight(self.0.iter().zip(o.0.iter()).map(|(a, b)| a - b).collect())
    }

    pub fn neg(&self) -> Weight {
        Weight(self.0.iter().map(|a| -a).collect())
    }

    pub fn scale(&self, k: i64) -> Weight {
        Weight(self.0.iter().map(|a| a * k).collect())
    }

    /// `Σ k_i λ_i`, i.e. the pairing of a `b`-coordinate vector with a
    /// vector given in the simple-root basis.
    pub fn dot(&self, o: &[i64]) -> i64 {
        self.0.iter().zip(o).map(|(a, b)| a * b).sum()
    }
}

impl fmt::Debug for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{x}")?;
        }
        f.write_str("]")
    }
}

/// Element of the finite Weyl group, as an integer matrix on `b`-coordinates.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct WeylElt {
    n: usize,
    m: SmallVec<[i64; 16]>,
    inv: SmallVec<[i64; 16]>,
}

impl WeylElt {
    pub fn identity(n: usize) -> Self {
        let mut m = SmallVec::from_elem(0, n * n);
        for i in 0..n {
            m[i * n + i] = 1;
        }
        WeylElt { n, inv: m.clone(), m }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.n)
    }

    pub fn entry(&self, i: usize, j: usize) -> i64 {
        self.m[i * self.n + j]
    }

    pub fn apply(&self, v: &Weight) -> Weight {
        let n = self.n;
        Weight((0..n).map(|i| (0..n).map(|j| self.m[i * n + j] * v.0[j]).sum()).collect())
    }

    pub fn apply_rat(&self, v: &[Rat]) -> Vec<Rat> {
        let n = self.n;
        (0..n).map(|i| (0..n).map(|j| v[j] * self.m[i * n + j]).sum()).collect()
    }

    pub fn mul(&self, o: &WeylElt) -> WeylElt {
        let n = self.n;
        WeylElt { n, m: matmul(n, &self.m, &o.m), inv: matmul(n, &o.inv, &self.inv) }
    }

    pub fn inverse(&self) -> WeylElt {
        WeylElt { n: self.n, m: self.inv.clone(), inv: self.m.clone() }
    }

    /// Builds an involution from its matrix.
    fn involution(n: usize, m: SmallVec<[i64; 16]>) -> WeylElt {
        debug_assert_eq!(matmul(n, &m, &m), WeylElt::identity(n).m);
        WeylElt { n, inv: m.clone(), m }
    }
}

fn matmul(n: usize, a: &[i64], b: &[i64]) -> SmallVec<[i64; 16]> {
    let mut m = SmallVec::from_elem(0, n * n);
    for i in 0..n {
        for k in 0..n {
            let x = a[i * n + k];
            if x == 0 {
                continue;
            }
            for j in 0..n {
                m[i * n + j] += x * b[k * n + j];
            }
        }
    }
    m
}

/// A root with its data in both bases.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Root {
    /// Coefficients in the simple-root basis.
    pub coef: Vec<i64>,
    /// The coroot `α^∨` in `b`-coordinates.
    pub coroot: Weight,
    /// `(α, α)`.
    pub norm: Rat,
}

impl Root {
    pub fn height(&self) -> i64 {
        self.coef.iter().sum()
    }

    pub fn is_positive(&self) -> bool {
        self.coef.iter().any(|&c| c > 0)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Family {
    pub fn letter(self) -> char {
        match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
            Family::E => 'E',
            Family::F => 'F',
            Family::G => 'G',
        }
    }

    pub fn from_letter(c: char) -> Option<Family> {
        Some(match c.to_ascii_uppercase() {
            'A' => Family::A,
            'B' => Family::B,
            'C' => Family::C,
            'D' => Family::D,
            'E' => Family::E,
            'F' => Family::F,
            'G' => Family::G,
            _ => return None,
        })
    }
}

/// A root system with all the derived data used downstream.
#[derive(Debug)]
pub struct RootDatum {
    family: Family,
    n: usize,
    /// `(α_i, α_j)`.
    alpha_gram: Vec<Vec<Rat>>,
    /// `(b_i, b_j)`.
    gram: Vec<Vec<Rat>>,
    /// `G · (1,…,1)`: pairing with `Σ b_j`, positive on positive roots.
    height_form: Vec<Rat>,
    cartan: Vec<Vec<i64>>,
    /// Positive roots first (by height), then their negatives in the same order.
    roots: Vec<Root>,
    root_index: HashMap<Weight, usize>,
    theta: usize,
    classes: Vec<Rat>,
    rho: Vec<(Rat, Vec<Rat>)>,
    diagram_m: i64,
    minuscule: Vec<usize>,
    w0: WeylElt,
    omegas: Vec<(usize, WeylElt)>,
}

fn simple_gram(family: Family, n: usize) -> Result<Vec<Vec<Rat>>> {
    let bad = Err(Error::InvalidRootSystem { family: family.letter(), rank: n });
    let valid = match family {
        Family::A => n >= 1,
        Family::B | Family::C => n >= 2,
        Family::D => n >= 4,
        Family::E => (6..=8).contains(&n),
        Family::F => n == 4,
        Family::G => n == 2,
    };
    if !valid {
        return bad;
    }
    let r = |a: i64, b: i64| Rat::new(a, b);
    let mut m = vec![vec![Rat::zero(); n]; n];
    let link = |m: &mut Vec<Vec<Rat>>, i: usize, j: usize, v: Rat| {
        m[i][j] = v;
        m[j][i] = v;
    };
    let mut diag = vec![r(2, 1); n];
    match family {
        Family::A => {
            for i in 0..n - 1 {
                link(&mut m, i, i + 1, r(-1, 1));
            }
        }
        Family::B => {
            diag[n - 1] = r(1, 1);
            for i in 0..n - 1 {
                link(&mut m, i, i + 1, r(-1, 1));
            }
        }
        Family::C => {
            for d in diag.iter_mut().take(n - 1) {
                *d = r(1, 1);
            }
            for i in 0..n - 2 {
                link(&mut m, i, i + 1, r(-1, 2));
            }
            link(&mut m, n - 2, n - 1, r(-1, 1));
        }
        Family::D => {
            for i in 0..n - 2 {
                link(&mut m, i, i + 1, r(-1, 1));
            }
            link(&mut m, n - 3, n - 1, r(-1, 1));
        }
        Family::E => {
            // 1-3-4-5-6-7-8 with 2 attached to 4.
            link(&mut m, 0, 2, r(-1, 1));
            link(&mut m, 1, 3, r(-1, 1));
            for i in 2..n - 1 {
                link(&mut m, i, i + 1, r(-1, 1));
            }
        }
        Family::F => {
            diag[2] = r(1, 1);
            diag[3] = r(1, 1);
            link(&mut m, 0, 1, r(-1, 1));
            link(&mut m, 1, 2, r(-1, 1));
            link(&mut m, 2, 3, r(-1, 2));
        }
        Family::G => {
            diag[0] = r(2, 3);
            link(&mut m, 0, 1, r(-1, 1));
        }
    }
    for i in 0..n {
        m[i][i] = diag[i];
    }
    Ok(m)
}

pub(crate) fn invert(m: &[Vec<Rat>]) -> Option<Vec<Vec<Rat>>> {
    let n = m.len();
    let mut a: Vec<Vec<Rat>> = m.to_vec();
    let mut inv = vec![vec![Rat::zero(); n]; n];
    for (i, row) in inv.iter_mut().enumerate() {
        row[i] = Rat::one();
    }
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, piv);
        inv.swap(col, piv);
        let p = a[col][col];
        for j in 0..n {
            a[col][j] /= p;
            inv[col][j] /= p;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col];
                for j in 0..n {
                    let (x, y) = (a[col][j], inv[col][j]);
                    a[r][j] -= f * x;
                    inv[r][j] -= f * y;
                }
            }
        }
    }
    Some(inv)
}

pub(crate) fn determinant(m: &[Vec<Rat>]) -> Rat {
    let n = m.len();
    let mut a = m.to_vec();
    let mut det = Rat::one();
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return Rat::zero();
        };
        if piv != col {
            a.swap(col, piv);
            det = -det;
        }
        let p = a[col][col];
        det *= p;
        for r in col + 1..n {
            let f = a[r][col] / p;
            for j in col..n {
                let x = a[col][j];
                a[r][j] -= f * x;
            }
        }
    }
    det
}

impl RootDatum {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let n = rank;
        let alpha_gram = simple_gram(family, n)?;
        let gram = invert(&alpha_gram).expect("Gram matrix of simple roots is invertible");
        let cartan: Vec<Vec<i64>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let v = alpha_gram[i][j] * 2 / alpha_gram[i][i];
                        debug_assert!(v.is_integer());
                        v.to_integer()
                    })
                    .collect()
            })
            .collect();
        let height_form: Vec<Rat> = (0..n).map(|i| gram[i].iter().copied().sum()).collect();

        // Positive roots by closure of the simple roots under reflections,
        // in the simple-root basis: s_i(c) = c - (Σ_k c_k A_ik) e_i.
        let mut seen: BTreeSet<Vec<i64>> = BTreeSet::new();
        let mut queue: VecDeque<Vec<i64>> = VecDeque::new();
        for i in 0..n {
            let mut e = vec![0; n];
            e[i] = 1;
            seen.insert(e.clone());
            queue.push_back(e);
        }
        while let Some(c) = queue.pop_front() {
            for i in 0..n {
                let p: i64 = (0..n).map(|k| c[k] * cartan[i][k]).sum();
                let mut d = c.clone();
                d[i] -= p;
                if d.iter().all(|&x| x >= 0) && d.iter().any(|&x| x > 0) && seen.insert(d.clone()) {
                    queue.push_back(d);
                }
            }
        }
        let mut pos: Vec<Vec<i64>> = seen.into_iter().collect();
        pos.sort_by(|a, b| {
            let ha: i64 = a.iter().sum();
            let hb: i64 = b.iter().sum();
            ha.cmp(&hb).then_with(|| b.cmp(a))
        });
        let make_root = |coef: Vec<i64>| -> Root {
            let mut norm = Rat::zero();
            for i in 0..n {
                for j in 0..n {
                    norm += alpha_gram[i][j] * coef[i] * coef[j];
                }
            }
            let coroot = Weight(
                (0..n)
                    .map(|k| {
                        let pair: Rat = (0..n).map(|j| alpha_gram[j][k] * coef[j]).sum();
                        let v = pair * 2 / norm;
                        debug_assert!(v.is_integer());
                        v.to_integer()
                    })
                    .collect(),
            );
            Root { coef, coroot, norm }
        };
        let mut roots: Vec<Root> = pos.iter().cloned().map(make_root).collect();
        let negs: Vec<Root> = pos.iter().map(|c| make_root(c.iter().map(|x| -x).collect())).collect();
        roots.extend(negs);
        let root_index: HashMap<Weight, usize> = roots.iter().enumerate().map(|(i, r)| (r.coroot.clone(), i)).collect();
        let npos = pos.len();
        let theta = npos - 1;
        debug_assert!((0..npos).all(|i| (0..n).all(|k| roots[i].coef[k] <= roots[theta].coef[k])));

        let mut classes: Vec<Rat> = roots[..npos].iter().map(|r| r.norm).collect();
        classes.sort_by(|a, b| b.cmp(a));
        classes.dedup();

        let rho = classes
            .iter()
            .map(|&nu| {
                let mut v = vec![Rat::zero(); n];
                for r in roots[..npos].iter().filter(|r| r.norm == nu) {
                    for (k, vk) in v.iter_mut().enumerate() {
                        let pair: Rat = (0..n).map(|j| alpha_gram[j][k] * r.coef[j]).sum();
                        *vk += pair / 2;
                    }
                }
                (nu, v)
            })
            .collect();

        let diagram_m = match family {
            Family::D if n % 2 == 0 => 2,
            Family::C if n % 2 == 1 => 2,
            Family::C | Family::B => 1,
            _ => 0,
        };

        let minuscule: Vec<usize> = (0..n).filter(|&r| roots[theta].coef[r] == 1).collect();

        let mut datum = RootDatum {
            family,
            n,
            alpha_gram,
            gram,
            height_form,
            cartan,
            roots,
            root_index,
            theta,
            classes,
            rho,
            diagram_m,
            minuscule,
            w0: WeylElt::identity(n),
            omegas: Vec::new(),
        };
        datum.w0 = datum.longest_element(&[]);
        let omegas = datum.minuscule.iter().map(|&r| (r, datum.w0.mul(&datum.longest_element(&[r])))).collect();
        datum.omegas = omegas;
        if datum.diagram_m == 0 {
            datum.diagram_m = 1 + datum.minuscule.len() as i64;
        }
        Ok(datum)
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn name(&self) -> String {
        format!("{}{}", self.family.letter(), self.n)
    }

    pub fn is_type_a(&self) -> bool {
        self.family == Family::A
    }

    pub fn gram(&self) -> &[Vec<Rat>] {
        &self.gram
    }

    pub fn alpha_gram(&self) -> &[Vec<Rat>] {
        &self.alpha_gram
    }

    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    /// `|B/A|`, the determinant of the Cartan matrix.
    pub fn index_of_coroot_lattice(&self) -> i64 {
        let m: Vec<Vec<Rat>> = self.cartan.iter().map(|r| r.iter().map(|&x| Rat::from_integer(x)).collect()).collect();
        determinant(&m).to_integer().abs()
    }

    /// Diagram constant `m`: the denominators of the δ-exponents of `W^b`.
    pub fn diagram_constant(&self) -> i64 {
        self.diagram_m
    }

    pub fn roots(&self) -> &[Root] {
        &self.roots
    }

    pub fn num_positive_roots(&self) -> usize {
        self.roots.len() / 2
    }

    pub fn positive_roots(&self) -> &[Root] {
        &self.roots[..self.num_positive_roots()]
    }

    pub fn root(&self, i: usize) -> &Root {
        &self.roots[i]
    }

    /// Index of the root whose coroot has the given coordinates.
    pub fn root_by_coroot(&self, c: &Weight) -> Option<usize> {
        self.root_index.get(c).copied()
    }

    pub fn negate_root(&self, i: usize) -> usize {
        let np = self.num_positive_roots();
        if i < np {
            i + np
        } else {
            i - np
        }
    }

    pub fn theta(&self) -> &Root {
        &self.roots[self.theta]
    }

    pub fn theta_index(&self) -> usize {
        self.theta
    }

    /// Index of the simple root `α_i` in [`Self::roots`].
    pub fn simple_root_index(&self, i: usize) -> usize {
        self.root_by_coroot(&self.coroot(i)).expect("simple root")
    }

    /// `a_i = α_i^∨`.
    pub fn coroot(&self, i: usize) -> Weight {
        Weight::from_slice(&self.cartan[i])
    }

    /// `b`-coordinates of the simple root `α_i` (rational in general).
    pub fn simple_root(&self, i: usize) -> Vec<Rat> {
        self.alpha_gram[i].clone()
    }

    /// `b`-coordinates of an arbitrary root.
    pub fn root_vector(&self, r: &Root) -> Vec<Rat> {
        (0..self.n).map(|k| (0..self.n).map(|j| self.alpha_gram[j][k] * r.coef[j]).sum()).collect()
    }

    /// Length classes `ν_R`, long first.
    pub fn length_classes(&self) -> &[Rat] {
        &self.classes
    }

    pub fn class_index(&self, nu: Rat) -> usize {
        self.classes.iter().position(|&c| c == nu).expect("length class")
    }

    /// The `q`-parameter attached to a length class.
    pub fn class_param(&self, nu: Rat) -> Param {
        if nu == Rat::from_integer(2) {
            Param::QLong
        } else {
            Param::QShort
        }
    }

    /// Length class of the simple root `α_i`; `i = 0` denotes `α_0`.
    pub fn node_class(&self, j: usize) -> Rat {
        if j == 0 {
            self.theta().norm
        } else {
            self.alpha_gram[j - 1][j - 1]
        }
    }

    /// `ρ_ν` in `b`-coordinates.
    pub fn rho(&self, nu: Rat) -> &[Rat] {
        &self.rho.iter().find(|(c, _)| *c == nu).expect("length class").1
    }

    /// `r_ν = (2/ν) ρ_ν`, which lies in `B`.
    pub fn r_nu(&self, nu: Rat) -> Weight {
        Weight(
            self.rho(nu)
                .iter()
                .map(|&x| {
                    let v = x * 2 / nu;
                    debug_assert!(v.is_integer());
                    v.to_integer()
                })
                .collect(),
        )
    }

    pub fn pairing(&self, u: &[Rat], v: &[Rat]) -> Result<Rat> {
        if u.len() != self.n || v.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: if u.len() != self.n { u.len() } else { v.len() },
            });
        }
        Ok(self.pair(u, v))
    }

    pub(crate) fn pair(&self, u: &[Rat], v: &[Rat]) -> Rat {
        let mut s = Rat::zero();
        for i in 0..self.n {
            if u[i].is_zero() {
                continue;
            }
            for j in 0..self.n {
                s += u[i] * self.gram[i][j] * v[j];
            }
        }
        s
    }

    /// `(b, c)` for two lattice points.
    pub fn pair_weights(&self, b: &Weight, c: &Weight) -> Rat {
        let mut s = Rat::zero();
        for i in 0..self.n {
            if b.0[i] == 0 {
                continue;
            }
            for j in 0..self.n {
                s += self.gram[i][j] * (b.0[i] * c.0[j]);
            }
        }
        s
    }

    /// `(b, v)` for a lattice point and a rational vector.
    pub fn pair_weight_rat(&self, b: &Weight, v: &[Rat]) -> Rat {
        let bv = to_rat(b);
        self.pair(&bv, v)
    }

    /// `(b, α)`, an integer for `b ∈ B`.
    pub fn pair_root(&self, b: &Weight, r: &Root) -> i64 {
        b.dot(&r.coef)
    }

    pub(crate) fn is_positive_vector(&self, v: &Weight) -> bool {
        let s: Rat = v.0.iter().zip(&self.height_form).map(|(&a, &h)| h * a).sum();
        s.is_positive()
    }

    /// `s_i` for `1 ≤ i ≤ n` (indices are 0-based here: `i` in `0..n`).
    pub fn simple_reflection(&self, i: usize) -> WeylElt {
        let n = self.n;
        let mut m = WeylElt::identity(n).m;
        // s_i(z) = z - z_i a_i, so column i is e_i - a_i.
        for k in 0..n {
            m[k * n + i] -= self.cartan[i][k];
        }
        WeylElt::involution(n, m)
    }

    /// The reflection in an arbitrary root.
    pub fn reflection(&self, r: &Root) -> WeylElt {
        let n = self.n;
        let mut m = WeylElt::identity(n).m;
        // s_α(z) = z - (z, α) α^∨ and (z, α) = Σ_j z_j coef_j.
        for k in 0..n {
            for j in 0..n {
                m[k * n + j] -= r.coroot.0[k] * r.coef[j];
            }
        }
        WeylElt::involution(n, m)
    }

    pub fn reflect(&self, i: usize, v: &Weight) -> Weight {
        let mut out = v.clone();
        let zi = v.0[i];
        if zi != 0 {
            for k in 0..self.n {
                out.0[k] -= zi * self.cartan[i][k];
            }
        }
        out
    }

    /// Root index of `w(α)` for the root with index `i`.
    pub fn act_on_root(&self, w: &WeylElt, i: usize) -> usize {
        self.root_by_coroot(&w.apply(&self.roots[i].coroot)).expect("Weyl group permutes roots")
    }

    /// Whether `w` preserves the form: `w^T G w = G`.
    pub fn is_orthogonal(&self, w: &WeylElt) -> bool {
        let n = self.n;
        (0..n).all(|i| {
            (0..n).all(|j| {
                let mut s = Rat::zero();
                for k in 0..n {
                    for l in 0..n {
                        s += self.gram[k][l] * (w.entry(k, i) * w.entry(l, j));
                    }
                }
                s == self.gram[i][j]
            })
        })
    }

    /// Longest element of the parabolic subgroup generated by the `s_i`
    /// with `i ∉ excluded`.
    fn longest_element(&self, excluded: &[usize]) -> WeylElt {
        let n = self.n;
        let mut v = Weight((0..n).map(|i| if excluded.contains(&i) { 0 } else { 1 }).collect());
        let mut w = WeylElt::identity(n);
        while let Some(i) = (0..n).find(|&i| !excluded.contains(&i) && v.0[i] > 0) {
            v = self.reflect(i, &v);
            w = self.simple_reflection(i).mul(&w);
        }
        w
    }

    pub fn longest(&self) -> &WeylElt {
        &self.w0
    }

    /// Minuscule indices `O^*` (0-based simple-root indices).
    pub fn minuscule(&self) -> &[usize] {
        &self.minuscule
    }

    /// `ω_r = w_0 w_0^{(r)}` for a minuscule index `r`.
    pub fn omega(&self, r: usize) -> Result<&WeylElt> {
        self.omegas.iter().find(|(i, _)| *i == r).map(|(_, w)| w).ok_or(Error::NotMinuscule(r + 1))
    }

    /// The dual minuscule index `r*` with `b_{r*} = -w_0(b_r)`.
    pub fn dual_minuscule(&self, r: usize) -> usize {
        let img = self.w0.apply(&Weight::basis(self.n, r)).neg();
        img.0.iter().position(|&x| x == 1).expect("w0 permutes fundamental coweights")
    }

    /// The `W`-orbit of `b`, sorted.
    pub fn weyl_orbit(&self, b: &Weight) -> Vec<Weight> {
        let mut seen: BTreeSet<Weight> = BTreeSet::new();
        let mut queue = VecDeque::new();
        seen.insert(b.clone());
        queue.push_back(b.clone());
        while let Some(v) = queue.pop_front() {
            for i in 0..self.n {
                if v.0[i] != 0 {
                    let u = self.reflect(i, &v);
                    if seen.insert(u.clone()) {
                        queue.push_back(u);
                    }
                }
            }
        }
        seen.into_iter().collect()
    }

    /// The antidominant element of `W(b)` and a `w` with `w(b)` equal to it.
    pub fn to_antidominant(&self, b: &Weight) -> (Weight, WeylElt) {
        let mut v = b.clone();
        let mut w = WeylElt::identity(self.n);
        while let Some(i) = (0..self.n).find(|&i| v.0[i] > 0) {
            v = self.reflect(i, &v);
            w = self.simple_reflection(i).mul(&w);
        }
        (v, w)
    }

    /// All elements of `W` (only sensible for small groups).
    pub fn weyl_group(&self) -> Vec<WeylElt> {
        let mut seen: BTreeSet<WeylElt> = BTreeSet::new();
        let id = WeylElt::identity(self.n);
        let mut queue = VecDeque::from([id.clone()]);
        seen.insert(id);
        let gens: Vec<WeylElt> = (0..self.n).map(|i| self.simple_reflection(i)).collect();
        while let Some(w) = queue.pop_front() {
            for g in &gens {
                let u = g.mul(&w);
                if seen.insert(u.clone()) {
                    queue.push_back(u);
                }
            }
        }
        seen.into_iter().collect()
    }

    /// Whether `b` lies in the coroot lattice `A`.
    pub fn in_coroot_lattice(&self, b: &Weight) -> bool {
        self.coroot_coordinates(b).iter().all(|x| x.is_integer())
    }

    /// Coordinates of `b` in the basis `a_1..a_n`.
    pub fn coroot_coordinates(&self, b: &Weight) -> Vec<Rat> {
        // b = Σ n_i a_i with a_i the rows of the Cartan matrix: b = n · A.
        let a: Vec<Vec<Rat>> = self.cartan.iter().map(|r| r.iter().map(|&x| Rat::from_integer(x)).collect()).collect();
        let inv = invert(&a).expect("Cartan matrix invertible");
        (0..self.n).map(|j| (0..self.n).map(|i| inv[i][j] * b.0[i]).sum()).collect()
    }

    /// Whether `c - b ∈ A_+`, i.e. `c ≥ b` in dominance order.
    pub fn dominates(&self, c: &Weight, b: &Weight) -> bool {
        self.coroot_coordinates(&c.sub(b)).iter().all(|x| x.is_integer() && !x.is_negative())
    }

    /// `(b, ρ_ν)`.
    pub fn pair_rho(&self, b: &Weight, nu: Rat) -> Rat {
        self.pair_weight_rat(b, self.rho(nu))
    }
}

pub(crate) fn to_rat(b: &Weight) -> Vec<Rat> {
    b.0.iter().map(|&x| Rat::from_integer(x)).collect()
}

pub fn build_root_datum(family: char, rank: usize) -> Result<RootDatum> {
    let f = Family::from_letter(family).ok_or(Error::InvalidRootSystem { family, rank })?;
    RootDatum::new(f, rank)
}

impl std::str::FromStr for RootDatum {
    type Err = Error;

    /// Parses tags such as `A2`, `b3`, `G2`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut chars = s.chars();
        let f = chars.next().ok_or(Error::Parse("empty root system tag".into()))?;
        let rank: usize = chars.as_str().parse().map_err(|_| Error::Parse(format!("bad root system tag '{s}'")))?;
        build_root_datum(f, rank)
    }
}
