//! The ambient space E: affine Cartan data, the form J, reflections and
//! Weyl-orbit bookkeeping.
//!
//! Basis order is fixed throughout the crate: indices `0..=l` are the simple
//! roots, then `Λ_δ`, `a`, `Λ_a`.

use crate::error::{Error, Result};
use crate::linalg;
use num_integer::Integer;
use num_rational::Rational64;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::ops::{Add, Index, Neg, Sub};
use std::str::FromStr;

pub type Q = Rational64;

/// Affine families (Kac's tables Aff 1-3).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A1,
    B1,
    C1,
    D1,
    E1,
    F1,
    G1,
    /// A_{2l}^{(2)}
    A2Even,
    /// A_{2l-1}^{(2)}
    A2Odd,
    /// D_{l+1}^{(2)}
    D2,
    /// E_6^{(2)}
    E2,
    /// D_4^{(3)}
    D3,
}

impl Family {
    pub const ALL: [Family; 12] = [
        Family::A1,
        Family::B1,
        Family::C1,
        Family::D1,
        Family::E1,
        Family::F1,
        Family::G1,
        Family::A2Even,
        Family::A2Odd,
        Family::D2,
        Family::E2,
        Family::D3,
    ];

    /// Allowed ranks; `None` upper bound means unbounded.
    pub fn rank_range(self) -> (usize, Option<usize>) {
        match self {
            Family::A1 => (2, None),
            Family::B1 => (3, None),
            Family::C1 => (2, None),
            Family::D1 => (4, None),
            Family::E1 => (6, Some(8)),
            Family::F1 => (4, Some(4)),
            Family::G1 => (2, Some(2)),
            Family::A2Even => (2, None),
            Family::A2Odd => (3, None),
            Family::D2 => (2, None),
            Family::E2 => (4, Some(4)),
            Family::D3 => (2, Some(2)),
        }
    }

    fn letter(self) -> char {
        match self {
            Family::A1 | Family::A2Even | Family::A2Odd => 'A',
            Family::B1 => 'B',
            Family::C1 => 'C',
            Family::D1 | Family::D2 | Family::D3 => 'D',
            Family::E1 | Family::E2 => 'E',
            Family::F1 => 'F',
            Family::G1 => 'G',
        }
    }

    fn twist(self) -> u32 {
        match self {
            Family::A2Even | Family::A2Odd | Family::D2 | Family::E2 => 2,
            Family::D3 => 3,
            _ => 1,
        }
    }
}

/// An affine Cartan type together with its rank l (number of nodes is l+1).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AffineType {
    family: Family,
    rank: usize,
}

impl AffineType {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let (lo, hi) = family.rank_range();
        if rank < lo || hi.is_some_and(|h| rank > h) {
            let bound = match hi {
                Some(h) if h == lo => format!("l = {lo}"),
                Some(h) => format!("{lo} <= l <= {h}"),
                None => format!("l >= {lo}"),
            };
            return Err(Error::config(format!(
                "rank l = {rank} violates the constraint {bound} for family {}",
                AffineType { family, rank }.family_label()
            )));
        }
        Ok(AffineType { family, rank })
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Number of simple roots, l+1.
    pub fn nodes(&self) -> usize {
        self.rank + 1
    }

    /// The subscript appearing in the conventional name.
    fn name_index(&self) -> usize {
        let l = self.rank;
        match self.family {
            Family::A2Even => 2 * l,
            Family::A2Odd => 2 * l - 1,
            Family::D2 => l + 1,
            Family::E2 => 6,
            Family::D3 => 4,
            _ => l,
        }
    }

    fn family_label(&self) -> String {
        match self.family {
            Family::A2Even => "A_{2l}^(2)".into(),
            Family::A2Odd => "A_{2l-1}^(2)".into(),
            Family::D2 => "D_{l+1}^(2)".into(),
            f => format!("{}^({})", f.letter(), f.twist()),
        }
    }

    /// The smallest rank representative of each family.
    pub fn minimal_ranks() -> Vec<AffineType> {
        Family::ALL
            .iter()
            .map(|&f| AffineType { family: f, rank: f.rank_range().0 })
            .collect()
    }

    /// `r = 2` exactly for A_{2l}^{(2)}.
    pub fn r(&self) -> i64 {
        if self.family == Family::A2Even {
            2
        } else {
            1
        }
    }

    pub fn is_simply_laced(&self) -> bool {
        matches!(self.family, Family::A1 | Family::D1 | Family::E1)
    }

    /// The generalized Cartan matrix `a_ij = J(α_i∨, α_j)`.
    pub fn cartan_matrix(&self) -> Vec<Vec<i64>> {
        let l = self.rank;
        let n = l + 1;
        let mut a = vec![vec![0i64; n]; n];
        for (i, row) in a.iter_mut().enumerate() {
            row[i] = 2;
        }
        // (i, j, a_ij, a_ji)
        let mut edges: Vec<(usize, usize, i64, i64)> = Vec::new();
        let chain = |from: usize, to: usize, edges: &mut Vec<_>| {
            for i in from..to {
                edges.push((i, i + 1, -1, -1));
            }
        };
        match self.family {
            Family::A1 => {
                chain(0, l, &mut edges);
                edges.push((l, 0, -1, -1));
            }
            Family::B1 => {
                edges.push((0, 2, -1, -1));
                chain(1, l - 1, &mut edges);
                edges.push((l, l - 1, -2, -1));
            }
            Family::C1 => {
                edges.push((0, 1, -1, -2));
                chain(1, l - 1, &mut edges);
                edges.push((l - 1, l, -2, -1));
            }
            Family::D1 => {
                edges.push((0, 2, -1, -1));
                chain(1, l - 1, &mut edges);
                edges.push((l, l - 2, -1, -1));
            }
            Family::E1 => match l {
                6 => {
                    chain(1, 5, &mut edges);
                    edges.push((6, 3, -1, -1));
                    edges.push((0, 6, -1, -1));
                }
                7 => {
                    chain(0, 6, &mut edges);
                    edges.push((7, 3, -1, -1));
                }
                _ => {
                    chain(0, 7, &mut edges);
                    edges.push((8, 5, -1, -1));
                }
            },
            Family::F1 => {
                chain(0, 2, &mut edges);
                edges.push((2, 3, -1, -2));
                edges.push((3, 4, -1, -1));
            }
            Family::G1 => {
                edges.push((0, 1, -1, -1));
                edges.push((1, 2, -1, -3));
            }
            Family::A2Even => {
                edges.push((0, 1, -2, -1));
                chain(1, l - 1, &mut edges);
                edges.push((l - 1, l, -2, -1));
            }
            Family::A2Odd => {
                edges.push((0, 2, -1, -1));
                chain(1, l - 1, &mut edges);
                edges.push((l - 1, l, -2, -1));
            }
            Family::D2 => {
                edges.push((0, 1, -2, -1));
                chain(1, l - 1, &mut edges);
                edges.push((l, l - 1, -2, -1));
            }
            Family::E2 => {
                chain(0, 2, &mut edges);
                edges.push((2, 3, -2, -1));
                edges.push((3, 4, -1, -1));
            }
            Family::D3 => {
                edges.push((0, 1, -1, -1));
                edges.push((1, 2, -3, -1));
            }
        }
        for (i, j, aij, aji) in edges {
            a[i][j] = aij;
            a[j][i] = aji;
        }
        a
    }
}

impl fmt::Display for AffineType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}^({})", self.family.letter(), self.name_index(), self.family.twist())
    }
}

impl FromStr for AffineType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let cleaned: String = s.chars().filter(|c| !matches!(c, '_' | '{' | '}' | ' ')).collect();
        let bad = |what: &str| Error::config(format!("cannot parse affine type {s:?}: {what}"));
        let mut chars = cleaned.chars();
        let letter = chars.next().ok_or_else(|| bad("empty name"))?;
        let rest: String = chars.collect();
        let (num, twist) = rest
            .split_once('^')
            .ok_or_else(|| bad(&format!("missing '^' in token {rest:?}")))?;
        let n: usize = num
            .parse()
            .map_err(|_| bad(&format!("bad index token {num:?}")))?;
        let twist_tok = twist.trim_start_matches('(').trim_end_matches(')');
        let twist: u32 = twist_tok
            .parse()
            .map_err(|_| bad(&format!("bad twist token {twist:?}")))?;
        let (family, rank) = match (letter.to_ascii_uppercase(), twist) {
            ('A', 1) => (Family::A1, n),
            ('B', 1) => (Family::B1, n),
            ('C', 1) => (Family::C1, n),
            ('D', 1) => (Family::D1, n),
            ('E', 1) => (Family::E1, n),
            ('F', 1) if n == 4 => (Family::F1, 4),
            ('G', 1) if n == 2 => (Family::G1, 2),
            ('A', 2) if n % 2 == 0 => (Family::A2Even, n / 2),
            ('A', 2) => (Family::A2Odd, n.div_ceil(2)),
            ('D', 2) if n >= 1 => (Family::D2, n - 1),
            ('E', 2) if n == 6 => (Family::E2, 4),
            ('D', 3) if n == 4 => (Family::D3, 2),
            ('F' | 'G' | 'E', _) | ('D', 3) => {
                return Err(bad(&format!("index token {num:?} not allowed with letter {letter:?}")))
            }
            (l, t) => {
                return Err(bad(&format!("no affine family for letter {l:?} with twist token {t:?}")))
            }
        };
        if family == Family::E1 && !(6..=8).contains(&n) {
            return Err(bad(&format!("index token {num:?}: E^(1) needs 6, 7 or 8")));
        }
        AffineType::new(family, rank)
    }
}

impl Serialize for AffineType {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for AffineType {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A vector of E in the distinguished basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Vector(pub Vec<Q>);

impl Vector {
    pub fn zero(dim: usize) -> Self {
        Vector(vec![Q::zero(); dim])
    }

    pub fn basis(dim: usize, i: usize) -> Self {
        let mut v = Self::zero(dim);
        v.0[i] = Q::one();
        v
    }

    pub fn from_ints(xs: &[i64]) -> Self {
        Vector(xs.iter().map(|&x| Q::from_integer(x)).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn scale(&self, c: Q) -> Self {
        Vector(self.0.iter().map(|x| x * c).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|x| x.is_zero())
    }

    /// Integer coordinates, if all are integral.
    pub fn to_ints(&self) -> Option<Vec<i64>> {
        self.0.iter().map(|x| x.is_integer().then(|| x.to_integer())).collect()
    }
}

impl Index<usize> for Vector {
    type Output = Q;
    fn index(&self, i: usize) -> &Q {
        &self.0[i]
    }
}

impl Add for &Vector {
    type Output = Vector;
    fn add(self, o: &Vector) -> Vector {
        Vector(self.0.iter().zip(&o.0).map(|(x, y)| x + y).collect())
    }
}

impl Sub for &Vector {
    type Output = Vector;
    fn sub(self, o: &Vector) -> Vector {
        Vector(self.0.iter().zip(&o.0).map(|(x, y)| x - y).collect())
    }
}

impl Neg for &Vector {
    type Output = Vector;
    fn neg(self) -> Vector {
        Vector(self.0.iter().map(|x| -x).collect())
    }
}

impl fmt::Display for Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

/// E with its form, built from an affine type.
#[derive(Clone, Debug)]
pub struct AmbientSpace {
    affine_type: AffineType,
    cartan: Vec<Vec<i64>>,
    symmetrizer: Vec<i64>,
    marks: Vec<i64>,
    gram: Vec<Vec<Q>>,
    node_class: Vec<usize>,
}

pub fn build_ambient(affine_type: AffineType) -> Result<AmbientSpace> {
    AmbientSpace::new(affine_type)
}

impl AmbientSpace {
    pub fn new(affine_type: AffineType) -> Result<Self> {
        // Re-check so hand-built values are rejected too.
        let affine_type = AffineType::new(affine_type.family, affine_type.rank)?;
        let cartan = affine_type.cartan_matrix();
        let n = cartan.len();
        let symmetrizer = symmetrize(&cartan)
            .ok_or_else(|| Error::internal(format!("{affine_type}: Cartan matrix not symmetrizable")))?;
        let sym: Vec<Vec<Q>> = (0..n)
            .map(|i| (0..n).map(|j| Q::from_integer(symmetrizer[i] * cartan[i][j])).collect())
            .collect();

        // Node 0 removed must be positive definite: all leading minors > 0.
        for k in 1..n {
            let minor: Vec<Vec<Q>> = (1..=k).map(|i| (1..=k).map(|j| sym[i][j]).collect()).collect();
            if linalg::det(&minor) <= Q::zero() {
                return Err(Error::internal(format!("{affine_type}: finite part not positive definite")));
            }
        }
        if linalg::rank(&sym) != n - 1 {
            return Err(Error::internal(format!("{affine_type}: Cartan matrix is not corank one")));
        }
        let kern = linalg::kernel(&sym, n);
        let marks = primitive_positive(&kern[0])
            .ok_or_else(|| Error::internal(format!("{affine_type}: null vector not positive")))?;

        let r = affine_type.r();
        let dim = n + 3;
        let mut gram = vec![vec![Q::zero(); dim]; dim];
        for i in 0..n {
            for j in 0..n {
                gram[i][j] = sym[i][j];
            }
        }
        let ld = n;
        let a = n + 1;
        let la = n + 2;
        gram[ld][0] = Q::new(1, r);
        gram[0][ld] = Q::new(1, r);
        gram[a][la] = Q::one();
        gram[la][a] = Q::one();

        if linalg::det(&gram).is_zero() {
            return Err(Error::internal(format!("{affine_type}: gram is degenerate")));
        }

        let node_class = simple_edge_classes(&cartan);
        let space = AmbientSpace { affine_type, cartan, symmetrizer, marks, gram, node_class };
        let delta = space.null_root();
        if space.pair(&space.lambda_delta(), &delta) != Q::one() {
            return Err(Error::internal(format!("{affine_type}: J(Λ_δ, δ) != 1")));
        }
        Ok(space)
    }

    pub fn affine_type(&self) -> AffineType {
        self.affine_type
    }

    /// l
    pub fn rank(&self) -> usize {
        self.affine_type.rank
    }

    /// l+1
    pub fn nodes(&self) -> usize {
        self.cartan.len()
    }

    /// l+4
    pub fn dim(&self) -> usize {
        self.gram.len()
    }

    pub fn r(&self) -> i64 {
        self.affine_type.r()
    }

    pub fn gram(&self) -> &[Vec<Q>] {
        &self.gram
    }

    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn cartan_entry(&self, i: usize, j: usize) -> i64 {
        self.cartan[i][j]
    }

    /// d_i with J(α_i, α_j) = d_i a_ij.
    pub fn symmetrizer(&self) -> &[i64] {
        &self.symmetrizer
    }

    /// Coefficients of δ on the simple roots.
    pub fn marks(&self) -> &[i64] {
        &self.marks
    }

    pub fn alpha(&self, i: usize) -> Vector {
        Vector::basis(self.dim(), i)
    }

    pub fn lambda_delta(&self) -> Vector {
        Vector::basis(self.dim(), self.nodes())
    }

    pub fn a(&self) -> Vector {
        Vector::basis(self.dim(), self.nodes() + 1)
    }

    pub fn lambda_a(&self) -> Vector {
        Vector::basis(self.dim(), self.nodes() + 2)
    }

    pub fn a_index(&self) -> usize {
        self.nodes() + 1
    }

    pub fn basis_label(&self, i: usize) -> String {
        let n = self.nodes();
        match i {
            i if i < n => format!("a{i}"),
            i if i == n => "Ld".into(),
            i if i == n + 1 => "a".into(),
            _ => "La".into(),
        }
    }

    /// J(x, y).
    pub fn pair(&self, x: &Vector, y: &Vector) -> Q {
        let mut acc = Q::zero();
        for (i, xi) in x.0.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.0.iter().enumerate() {
                if !yj.is_zero() && !self.gram[i][j].is_zero() {
                    acc += xi * yj * self.gram[i][j];
                }
            }
        }
        acc
    }

    pub fn norm(&self, x: &Vector) -> Q {
        self.pair(x, x)
    }

    /// J(x∨, y) = 2 J(x, y) / J(x, x).
    pub fn coroot_pair(&self, x: &Vector, y: &Vector) -> Result<Q> {
        let n = self.norm(x);
        if n.is_zero() {
            return Err(Error::domain(format!("isotropic vector {x} has no coroot")));
        }
        Ok(Q::from_integer(2) * self.pair(x, y) / n)
    }

    /// s_x(y) = y - J(x∨, y) x.
    pub fn reflect(&self, x: &Vector, y: &Vector) -> Result<Vector> {
        let c = self.coroot_pair(x, y)?;
        Ok(y - &x.scale(c))
    }

    /// The primitive positive null root δ.
    pub fn null_root(&self) -> Vector {
        let mut v = Vector::zero(self.dim());
        for (i, &m) in self.marks.iter().enumerate() {
            v.0[i] = Q::from_integer(m);
        }
        v
    }

    /// Orbit tag of a real root: its norm.
    pub fn orbit_key(&self, beta: &Vector) -> Result<Q> {
        let n = self.norm(beta);
        if n.is_zero() {
            return Err(Error::domain(format!("isotropic vector {beta} has no orbit key")));
        }
        Ok(n)
    }

    /// Class representative of simple root i under the (-1,-1) edges.
    pub fn node_class(&self, i: usize) -> usize {
        self.node_class[i]
    }

    pub fn node_classes(&self) -> &[usize] {
        &self.node_class
    }

    /// Whether `f` is constant on each W-orbit of simple roots.
    pub fn is_w_invariant<T: PartialEq>(&self, f: &[T]) -> bool {
        (0..self.nodes()).all(|i| f[i] == f[self.node_class[i]])
    }

    /// Pairs (i, j) with J(α_i∨, α_j) = J(α_i, α_j∨) = -1.
    pub fn minus_one_edges(&self) -> Vec<(usize, usize)> {
        let n = self.nodes();
        let mut out = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                if self.cartan[i][j] == -1 && self.cartan[j][i] == -1 {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// ⟨β, α_i∨⟩ for β given by integer Π-coordinates.
    pub fn simple_coroot_pairing(&self, i: usize, c: &[i64]) -> i64 {
        self.cartan[i].iter().zip(c).map(|(a, x)| a * x).sum()
    }

    /// If the Π-part `c` is a real affine root, the simple root its W-orbit
    /// descends to; `None` otherwise.
    pub fn descend_to_simple(&self, c: &[i64]) -> Option<usize> {
        descend(&self.cartan, &c[..self.nodes()])
    }

    /// W-orbit class of a real root given by Π-coordinates.
    pub fn real_root_class(&self, c: &[i64]) -> Option<usize> {
        self.descend_to_simple(c).map(|i| self.node_class[i])
    }
}

/// Descent to a simple root for an arbitrary affine or finite GCM `cartan`.
///
/// Returns the index of the simple root whose W-orbit contains the vector
/// with simple-root coordinates `c`, or `None` if `c` is not a real root.
pub fn descend(cartan: &[Vec<i64>], c: &[i64]) -> Option<usize> {
    let n = cartan.len();
    let mut c: Vec<i64> = c.to_vec();
    if c.iter().all(|&x| x <= 0) {
        c.iter_mut().for_each(|x| *x = -*x);
    }
    if c.iter().any(|&x| x < 0) || c.iter().all(|&x| x == 0) {
        return None;
    }
    let pairing = |i: usize, c: &[i64]| -> i64 { cartan[i].iter().zip(c).map(|(a, x)| a * x).sum() };
    loop {
        let mut nz = (0..n).filter(|&i| c[i] != 0);
        if let (Some(i), None) = (nz.next(), nz.next()) {
            return (c[i] == 1).then_some(i);
        }
        let i = (0..n).find(|&i| pairing(i, &c) > 0)?;
        c[i] -= pairing(i, &c);
        if c[i] < 0 {
            return None;
        }
    }
}

fn symmetrize(a: &[Vec<i64>]) -> Option<Vec<i64>> {
    let n = a.len();
    let mut d: Vec<Option<Q>> = vec![None; n];
    d[0] = Some(Q::one());
    let mut stack = vec![0];
    while let Some(i) = stack.pop() {
        for j in 0..n {
            if a[i][j] != 0 && i != j {
                // d_i a_ij = d_j a_ji
                let dj = d[i].unwrap() * Q::from_integer(a[i][j]) / Q::from_integer(a[j][i]);
                match d[j] {
                    None => {
                        d[j] = Some(dj);
                        stack.push(j);
                    }
                    Some(prev) if prev != dj => return None,
                    _ => {}
                }
            }
        }
    }
    let d: Vec<Q> = d.into_iter().collect::<Option<_>>()?;
    let lcm = d.iter().fold(1i64, |acc, x| acc.lcm(x.denom()));
    let ints: Vec<i64> = d.iter().map(|x| (x * Q::from_integer(lcm)).to_integer()).collect();
    let g = ints.iter().fold(0i64, |acc, &x| acc.gcd(&x));
    Some(ints.iter().map(|x| x / g).collect())
}

fn primitive_positive(v: &[Q]) -> Option<Vec<i64>> {
    let lcm = v.iter().fold(1i64, |acc, x| acc.lcm(x.denom()));
    let ints: Vec<i64> = v.iter().map(|x| (x * Q::from_integer(lcm)).to_integer()).collect();
    let g = ints.iter().fold(0i64, |acc, &x| acc.gcd(&x));
    let sign = if ints[0] < 0 { -1 } else { 1 };
    let out: Vec<i64> = ints.iter().map(|x| sign * x / g).collect();
    out.iter().all(|x| x.is_positive()).then_some(out)
}

fn simple_edge_classes(a: &[Vec<i64>]) -> Vec<usize> {
    let n = a.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        p[x] = r;
        r
    }
    for i in 0..n {
        for j in 0..n {
            if a[i][j] == -1 && a[j][i] == -1 {
                let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                // smallest index becomes the representative
                let (lo, hi) = if ri < rj { (ri, rj) } else { (rj, ri) };
                parent[hi] = lo;
            }
        }
    }
    (0..n).map(|i| find(&mut parent, i)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn space(name: &str) -> AmbientSpace {
        build_ambient(name.parse().unwrap()).unwrap()
    }

    #[test]
    fn a2_gram_block() {
        let s = space("A2^(1)");
        for i in 0..3 {
            for j in 0..3 {
                let want = if i == j { 2 } else { -1 };
                assert_eq!(s.gram()[i][j], Q::from_integer(want));
            }
        }
    }

    #[test]
    fn marking_pairs() {
        for t in AffineType::minimal_ranks() {
            let s = build_ambient(t).unwrap();
            assert_eq!(s.norm(&s.a()), Q::zero());
            assert_eq!(s.pair(&s.lambda_a(), &s.a()), Q::one());
            assert_eq!(s.norm(&s.lambda_a()), Q::zero());
            assert_eq!(s.norm(&s.lambda_delta()), Q::zero());
        }
    }

    #[test]
    fn a4_twisted_has_half_pairing() {
        let s = space("A4^(2)");
        assert_eq!(s.pair(&s.lambda_delta(), &s.alpha(0)), Q::new(1, 2));
        assert_eq!(s.symmetrizer(), &[1, 2, 4]);
    }

    #[test]
    fn null_roots() {
        assert_eq!(space("A2^(1)").marks(), &[1, 1, 1]);
        assert_eq!(space("D3^(2)").marks(), &[1, 1, 1]);
        assert_eq!(space("E6^(1)").marks(), &[1, 1, 2, 3, 2, 1, 2]);
        assert_eq!(space("E8^(1)").marks(), &[1, 2, 3, 4, 5, 6, 4, 2, 3]);
        assert_eq!(space("F4^(1)").marks(), &[1, 2, 3, 4, 2]);
        assert_eq!(space("G2^(1)").marks(), &[1, 2, 3]);
        assert_eq!(space("A4^(2)").marks(), &[2, 2, 1]);
        assert_eq!(space("E6^(2)").marks(), &[1, 2, 3, 2, 1]);
        assert_eq!(space("B3^(1)").marks(), &[1, 1, 2, 2]);
        assert_eq!(space("C2^(1)").marks(), &[1, 2, 1]);
        assert_eq!(space("D4^(1)").marks(), &[1, 1, 2, 1, 1]);
        assert_eq!(space("A5^(2)").marks(), &[1, 1, 2, 1]);
    }

    #[test]
    fn parse_rejects_bad_tokens() {
        let e = "X3^(1)".parse::<AffineType>().unwrap_err().to_string();
        assert!(e.contains("'X'"), "{e}");
        let e = "A2^(q)".parse::<AffineType>().unwrap_err().to_string();
        assert!(e.contains("(q)"), "{e}");
        let e = "A1^(1)".parse::<AffineType>().unwrap_err().to_string();
        assert!(e.contains("l >= 2"), "{e}");
        assert!("A2^(2)".parse::<AffineType>().is_err());
        assert!("D3^(1)".parse::<AffineType>().is_err());
        assert!("G3^(1)".parse::<AffineType>().is_err());
    }

    #[test]
    fn names_round_trip() {
        for t in AffineType::minimal_ranks() {
            assert_eq!(t.to_string().parse::<AffineType>().unwrap(), t);
        }
        assert_eq!("D3^(2)".parse::<AffineType>().unwrap().rank(), 2);
        assert_eq!("A5^(2)".parse::<AffineType>().unwrap().rank(), 3);
        assert_eq!("E6^(2)".parse::<AffineType>().unwrap().rank(), 4);
    }

    #[test]
    fn reflection_examples() {
        let s = space("A2^(1)");
        let a0 = s.alpha(0);
        let a1 = s.alpha(1);
        assert_eq!(s.reflect(&a1, &a1).unwrap(), -&a1);
        assert_eq!(s.reflect(&a1, &a0).unwrap(), &a0 + &a1);
        assert_eq!(s.reflect(&a1, &s.a()).unwrap(), s.a());
        assert!(s.reflect(&s.a(), &a0).is_err());
    }

    #[test]
    fn invariance_criterion() {
        let s = space("A2^(1)");
        assert!(s.is_w_invariant(&[1, 1, 1]));
        assert!(!s.is_w_invariant(&[1, 2, 1]));
        let d = space("D4^(2)");
        assert!(d.is_w_invariant(&[7, 1, 1, 9]));
        assert!(!d.is_w_invariant(&[7, 1, 2, 9]));
    }

    #[test]
    fn orbit_keys() {
        let s = space("D3^(2)");
        assert_ne!(s.orbit_key(&s.alpha(0)).unwrap(), s.orbit_key(&s.alpha(1)).unwrap());
        assert!(s.orbit_key(&s.null_root()).is_err());
    }

    #[test]
    fn descent_separates_short_orbits() {
        let s = space("D3^(2)");
        // same length, different orbits
        assert_eq!(s.real_root_class(&[1, 0, 0]), Some(0));
        assert_eq!(s.real_root_class(&[0, 0, 1]), Some(2));
        assert_eq!(s.real_root_class(&[1, 1, 0]), Some(0));
        assert_eq!(s.real_root_class(&[2, 1, 1]), Some(2));
        assert_eq!(s.real_root_class(&[1, 1, 1]), None);
        assert_eq!(s.real_root_class(&[2, 0, 0]), None);
        assert_eq!(s.real_root_class(&[1, -1, 0]), None);
    }
}
