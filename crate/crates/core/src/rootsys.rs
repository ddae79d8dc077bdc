//! Root systems and weight arithmetic for the simple Lie types.
//!
//! Weights are always carried in Dynkin coordinates (components on the
//! fundamental weights). A simple root `α_i` in these coordinates is row `i`
//! of the Cartan matrix, `A[i][j] = ⟨α_i, α_j^∨⟩`.
//!
//! Node ordering follows Bourbaki for the classical series. Two exceptions
//! keep the printed weight lists of the exceptional algebras reproducible:
//! `G2` puts the long root first, and `E6`/`E7`/`E8` use a chain
//! `1 - 2 - ... - (r-1)` with node `r` attached to node `r-3`.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Series {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

/// A simple Lie type such as `A4` or `G2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LieType {
    series: Series,
    rank: usize,
}

impl LieType {
    pub fn new(series: Series, rank: usize) -> Result<Self> {
        let ok = match series {
            Series::A => rank >= 1,
            Series::B | Series::C => rank >= 2,
            Series::D => rank >= 3,
            Series::E => (6..=8).contains(&rank),
            Series::F => rank == 4,
            Series::G => rank == 2,
        };
        if ok {
            Ok(LieType { series, rank })
        } else {
            Err(domain(format!("no simple Lie type {series:?}{rank}")))
        }
    }

    /// `A_{n-1}`, the Lie type of SU(n).
    pub fn su(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(domain(format!("SU({n}) is not a simple group")));
        }
        Self::new(Series::A, n - 1)
    }

    pub fn series(&self) -> Series {
        self.series
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Order of the Weyl group.
    pub fn weyl_group_order(&self) -> BigInt {
        let fact = |k: usize| -> BigInt { (1..=k).map(BigInt::from).product() };
        let r = self.rank;
        match self.series {
            Series::A => fact(r + 1),
            Series::B | Series::C => BigInt::from(2).pow(r as u32) * fact(r),
            Series::D => BigInt::from(2).pow(r as u32 - 1) * fact(r),
            Series::E => match r {
                6 => BigInt::from(51_840u64),
                7 => BigInt::from(2_903_040u64),
                _ => BigInt::from(696_729_600u64),
            },
            Series::F => BigInt::from(1152),
            Series::G => BigInt::from(12),
        }
    }

    /// Diagram bonds `(i, j, multiplicity)`; for multiple bonds `i` is the long node.
    fn bonds(&self) -> Vec<(usize, usize, i64)> {
        let r = self.rank;
        let chain = |len: usize| (1..len).map(|i| (i - 1, i, 1)).collect::<Vec<_>>();
        match self.series {
            Series::A => chain(r),
            Series::B => {
                let mut b = chain(r - 1);
                b.push((r - 2, r - 1, 2));
                b
            }
            Series::C => {
                let mut b = chain(r - 1);
                b.push((r - 1, r - 2, 2));
                b
            }
            Series::D => {
                let mut b = chain(r - 1);
                b.push((r - 3, r - 1, 1));
                b
            }
            Series::E => {
                let mut b = chain(r - 1);
                b.push((r - 4, r - 1, 1));
                b
            }
            Series::F => vec![(0, 1, 1), (1, 2, 2), (2, 3, 1)],
            Series::G => vec![(0, 1, 3)],
        }
    }

    /// Cartan matrix `A[i][j] = ⟨α_i, α_j^∨⟩`.
    pub fn cartan_matrix(&self) -> Vec<Vec<i64>> {
        let r = self.rank;
        let mut a = vec![vec![0i64; r]; r];
        for (i, row) in a.iter_mut().enumerate() {
            row[i] = 2;
        }
        for (long, short, m) in self.bonds() {
            // ⟨α_long, α_short^∨⟩ = -m, ⟨α_short, α_long^∨⟩ = -1
            a[long][short] = -m;
            a[short][long] = -1;
        }
        a
    }
}

impl fmt::Display for LieType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}{}", self.series, self.rank)
    }
}

impl FromStr for LieType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut chars = s.chars();
        let series = match chars.next().map(|c| c.to_ascii_uppercase()) {
            Some('A') => Series::A,
            Some('B') => Series::B,
            Some('C') => Series::C,
            Some('D') => Series::D,
            Some('E') => Series::E,
            Some('F') => Series::F,
            Some('G') => Series::G,
            _ => return Err(Error::Parse(format!("bad Lie type {s:?}"))),
        };
        let rank: usize = chars
            .as_str()
            .parse()
            .map_err(|_| Error::Parse(format!("bad Lie type rank in {s:?}")))?;
        LieType::new(series, rank)
    }
}

impl Serialize for LieType {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for LieType {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// An integral weight in Dynkin coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Weight(pub Vec<i64>);

impl Weight {
    pub fn new(coords: Vec<i64>) -> Self {
        Weight(coords)
    }

    pub fn zero(rank: usize) -> Self {
        Weight(vec![0; rank])
    }

    /// The weight with every Dynkin coordinate equal to 1.
    pub fn rho(rank: usize) -> Self {
        Weight(vec![1; rank])
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn is_dominant(&self) -> bool {
        self.0.iter().all(|&c| c >= 0)
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn scaled(&self, s: i64) -> Weight {
        Weight(self.0.iter().map(|c| c * s).collect())
    }

    pub fn reversed(&self) -> Weight {
        Weight(self.0.iter().rev().copied().collect())
    }

    /// Sum of the Dynkin coordinates.
    pub fn level(&self) -> i64 {
        self.0.iter().sum()
    }

    /// Young partition `ℓ_i = Σ_{j≥i} λ_j` with `n = rank + 1` parts, the last being 0.
    pub fn to_partition(&self) -> Vec<i64> {
        let mut parts = vec![0i64; self.rank() + 1];
        for i in (0..self.rank()).rev() {
            parts[i] = parts[i + 1] + self.0[i];
        }
        parts
    }

    /// Inverse of [`Weight::to_partition`]; a constant shift of all parts is ignored.
    pub fn from_partition(parts: &[i64]) -> Weight {
        Weight(parts.windows(2).map(|w| w[0] - w[1]).collect())
    }

    fn check_rank(&self, other: &Weight) {
        assert_eq!(self.rank(), other.rank(), "weights of different ranks");
    }
}

impl Add for &Weight {
    type Output = Weight;
    fn add(self, rhs: &Weight) -> Weight {
        self.check_rank(rhs);
        Weight(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &Weight {
    type Output = Weight;
    fn sub(self, rhs: &Weight) -> Weight {
        self.check_rank(rhs);
        Weight(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &Weight {
    type Output = Weight;
    fn neg(self) -> Weight {
        Weight(self.0.iter().map(|c| -c).collect())
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "}}")
    }
}

impl FromStr for Weight {
    type Err = Error;

    /// Accepts `3,4,3,5`, `{3,4,3,5}` or `[3,4,3,5]`.
    fn from_str(s: &str) -> Result<Self> {
        let inner = s
            .trim()
            .trim_start_matches(['{', '['])
            .trim_end_matches(['}', ']']);
        if inner.trim().is_empty() {
            return Err(Error::Parse("empty weight".into()));
        }
        inner
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<i64>()
                    .map_err(|_| Error::Parse(format!("bad weight coordinate {t:?} in {s:?}")))
            })
            .collect::<Result<Vec<_>>>()
            .map(Weight)
    }
}

/// A weight with rational Dynkin (or simple-root) coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RationalWeight(pub Vec<BigRational>);

impl RationalWeight {
    pub fn is_integral(&self) -> bool {
        self.0.iter().all(|c| c.is_integer())
    }

    pub fn to_weight(&self) -> Option<Weight> {
        self.0
            .iter()
            .map(|c| if c.is_integer() { c.to_integer().to_i64() } else { None })
            .collect::<Option<Vec<_>>>()
            .map(Weight)
    }
}

impl From<&Weight> for RationalWeight {
    fn from(w: &Weight) -> Self {
        RationalWeight(w.0.iter().map(|&c| BigRational::from_integer(c.into())).collect())
    }
}

/// Cartan data, positive roots and Weyl-group helpers for one simple type.
#[derive(Debug, Clone)]
pub struct RootSystem {
    lie_type: LieType,
    cartan: Vec<Vec<i64>>,
    inverse_cartan: Vec<Vec<BigRational>>,
    /// squared lengths of the simple roots, normalised so the shortest is 1
    simple_norms: Vec<BigRational>,
    positive_roots: Vec<Weight>,
    simple_root_expansion: Vec<Vec<i64>>,
}

impl RootSystem {
    pub fn new(lie_type: LieType) -> Self {
        let cartan = lie_type.cartan_matrix();
        let inverse_cartan = invert(&cartan);
        let simple_norms = simple_root_norms(&cartan);
        let simple_root_expansion = positive_root_expansions(&cartan);
        let positive_roots = simple_root_expansion
            .iter()
            .map(|c| dynkin_of_root(&cartan, c))
            .collect();
        RootSystem {
            lie_type,
            cartan,
            inverse_cartan,
            simple_norms,
            positive_roots,
            simple_root_expansion,
        }
    }

    /// Root system of SU(n).
    pub fn su(n: usize) -> Result<Self> {
        Ok(Self::new(LieType::su(n)?))
    }

    pub fn lie_type(&self) -> LieType {
        self.lie_type
    }

    pub fn rank(&self) -> usize {
        self.lie_type.rank
    }

    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn inverse_cartan(&self) -> &[Vec<BigRational>] {
        &self.inverse_cartan
    }

    /// Positive roots in Dynkin coordinates, sorted by height.
    pub fn positive_roots(&self) -> &[Weight] {
        &self.positive_roots
    }

    /// Simple-root coordinates of each entry of [`RootSystem::positive_roots`].
    pub fn simple_root_expansion(&self) -> &[Vec<i64>] {
        &self.simple_root_expansion
    }

    /// Simple root `α_i` in Dynkin coordinates.
    pub fn simple_root(&self, i: usize) -> Weight {
        Weight(self.cartan[i].clone())
    }

    pub fn weyl_vector(&self) -> Weight {
        Weight::rho(self.rank())
    }

    /// Rational weight `Σ_j coeffs[j] α_j` in Dynkin coordinates.
    pub fn from_simple_roots(&self, coeffs: &[BigRational]) -> RationalWeight {
        let r = self.rank();
        RationalWeight(
            (0..r)
                .map(|k| {
                    (0..r)
                        .map(|j| &coeffs[j] * BigRational::from_integer(self.cartan[j][k].into()))
                        .fold(BigRational::zero(), |a, b| a + b)
                })
                .collect(),
        )
    }

    /// Coordinates of `w` on the simple roots (`w · A^{-1}`).
    pub fn simple_root_coords(&self, w: &Weight) -> Vec<BigRational> {
        self.check(w);
        let r = self.rank();
        (0..r)
            .map(|j| {
                (0..r)
                    .map(|i| BigRational::from_integer(w.0[i].into()) * &self.inverse_cartan[i][j])
                    .fold(BigRational::zero(), |a, b| a + b)
            })
            .collect()
    }

    pub fn is_in_root_lattice(&self, w: &Weight) -> bool {
        self.simple_root_coords(w).iter().all(|c| c.is_integer())
    }

    /// True iff `w` is a nonnegative integer combination of simple roots.
    pub fn is_positive_root_combination(&self, w: &Weight) -> bool {
        self.simple_root_coords(w)
            .iter()
            .all(|c| c.is_integer() && !c.is_negative())
    }

    /// Height `⟨w, ρ^∨⟩` style ordering key: sum of simple-root coordinates.
    pub fn height(&self, w: &Weight) -> BigRational {
        self.simple_root_coords(w)
            .into_iter()
            .fold(BigRational::zero(), |a, b| a + b)
    }

    /// `⟨λ, α^∨⟩` for the positive root with simple-root expansion `root`.
    fn coroot_pairing(&self, lambda: &[BigRational], root: &[i64]) -> BigRational {
        let norm = self.root_norm(root);
        root.iter()
            .zip(lambda)
            .zip(&self.simple_norms)
            .map(|((&c, l), ni)| BigRational::from_integer(c.into()) * l * ni)
            .fold(BigRational::zero(), |a, b| a + b)
            / norm
    }

    fn root_norm(&self, root: &[i64]) -> BigRational {
        // (α_i, α_j) = A_ij |α_j|^2 / 2
        let r = self.rank();
        let mut total = BigRational::zero();
        for i in 0..r {
            for j in 0..r {
                if root[i] == 0 || root[j] == 0 || self.cartan[i][j] == 0 {
                    continue;
                }
                total += BigRational::from_integer((root[i] * root[j] * self.cartan[i][j]).into())
                    * &self.simple_norms[j]
                    / BigRational::from_integer(2.into());
            }
        }
        total
    }

    /// Weyl dimension formula `Π_{α>0} ⟨λ+ρ, α^∨⟩ / ⟨ρ, α^∨⟩`.
    pub fn dimension(&self, lambda: &Weight) -> Result<BigInt> {
        self.check(lambda);
        if !lambda.is_dominant() {
            return Err(domain(format!("dimension of non-dominant weight {lambda}")));
        }
        let shifted: Vec<BigRational> = lambda
            .0
            .iter()
            .map(|&c| BigRational::from_integer((c + 1).into()))
            .collect();
        let rho: Vec<BigRational> = vec![BigRational::one(); self.rank()];
        let mut num = BigRational::one();
        let mut den = BigRational::one();
        for root in &self.simple_root_expansion {
            num *= self.coroot_pairing(&shifted, root);
            den *= self.coroot_pairing(&rho, root);
        }
        let d = num / den;
        if !d.is_integer() {
            return Err(Error::Consistency(format!("non-integral dimension for {lambda}")));
        }
        Ok(d.to_integer())
    }

    /// Highest weight of the dual representation.
    ///
    /// For `A_r` this reverses the Dynkin coordinates; `D_r` with odd `r` and
    /// `E6` apply their diagram automorphism; every other type is self-dual.
    pub fn conjugate(&self, lambda: &Weight) -> Weight {
        self.check(lambda);
        let r = self.rank();
        match (self.lie_type.series, r) {
            (Series::A, _) => lambda.reversed(),
            (Series::D, r) if r % 2 == 1 => {
                let mut c = lambda.0.clone();
                c.swap(r - 2, r - 1);
                Weight(c)
            }
            (Series::E, 6) => {
                // chain 1-2-3-4-5 with 6 attached to 3: reverse the chain
                let c = &lambda.0;
                Weight(vec![c[4], c[3], c[2], c[1], c[0], c[5]])
            }
            _ => lambda.clone(),
        }
    }

    /// Simple reflection `s_i(w) = w - w_i α_i`.
    pub fn reflect(&self, w: &Weight, i: usize) -> Weight {
        let wi = w.0[i];
        Weight(
            w.0.iter()
                .zip(&self.cartan[i])
                .map(|(c, a)| c - wi * a)
                .collect(),
        )
    }

    /// The dominant element of the Weyl orbit of `w`.
    pub fn dominant_representative(&self, w: &Weight) -> Weight {
        self.check(w);
        let mut w = w.clone();
        while let Some(i) = w.0.iter().position(|&c| c < 0) {
            w = self.reflect(&w, i);
        }
        w
    }

    /// Full Weyl orbit by breadth-first closure under simple reflections.
    pub fn weyl_orbit(&self, lambda: &Weight) -> BTreeSet<Weight> {
        self.check(lambda);
        let mut seen = BTreeSet::new();
        let mut queue = VecDeque::new();
        seen.insert(lambda.clone());
        queue.push_back(lambda.clone());
        while let Some(w) = queue.pop_front() {
            for i in 0..self.rank() {
                if w.0[i] == 0 {
                    continue;
                }
                let next = self.reflect(&w, i);
                if seen.insert(next.clone()) {
                    queue.push_back(next);
                }
            }
        }
        seen
    }

    /// Dominant `μ` with `λ - μ` a nonnegative integer combination of simple roots.
    ///
    /// Walks down from `λ` by positive roots; the dominant weights of a weight
    /// system are connected under such steps.
    pub fn dominant_weights_below(&self, lambda: &Weight) -> Result<BTreeSet<Weight>> {
        self.check(lambda);
        if !lambda.is_dominant() {
            return Err(domain(format!("{lambda} is not dominant")));
        }
        let mut seen = BTreeSet::new();
        let mut queue = VecDeque::new();
        seen.insert(lambda.clone());
        queue.push_back(lambda.clone());
        while let Some(w) = queue.pop_front() {
            for root in &self.positive_roots {
                let next = &w - root;
                if next.is_dominant() && !seen.contains(&next) {
                    seen.insert(next.clone());
                    queue.push_back(next);
                }
            }
        }
        Ok(seen)
    }

    fn check(&self, w: &Weight) {
        assert_eq!(
            w.rank(),
            self.rank(),
            "weight {w} has the wrong rank for {}",
            self.lie_type
        );
    }
}

/// Exact inverse of an integer matrix by Gauss-Jordan elimination.
fn invert(m: &[Vec<i64>]) -> Vec<Vec<BigRational>> {
    let r = m.len();
    let mut a: Vec<Vec<BigRational>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut v: Vec<BigRational> = row
                .iter()
                .map(|&x| BigRational::from_integer(x.into()))
                .collect();
            v.extend((0..r).map(|j| {
                if i == j {
                    BigRational::one()
                } else {
                    BigRational::zero()
                }
            }));
            v
        })
        .collect();
    for col in 0..r {
        let pivot = (col..r)
            .find(|&i| !a[i][col].is_zero())
            .expect("Cartan matrices are invertible");
        a.swap(col, pivot);
        let p = a[col][col].clone();
        for x in a[col].iter_mut() {
            *x /= &p;
        }
        for i in 0..r {
            if i != col && !a[i][col].is_zero() {
                let f = a[i][col].clone();
                let pivot_row = a[col].clone();
                for (x, y) in a[i].iter_mut().zip(pivot_row) {
                    *x -= &f * y;
                }
            }
        }
    }
    a.into_iter().map(|row| row[r..].to_vec()).collect()
}

/// `|α_i|^2` from `A_ij |α_j|^2 = A_ji |α_i|^2`, shortest root normalised to 1.
fn simple_root_norms(cartan: &[Vec<i64>]) -> Vec<BigRational> {
    let r = cartan.len();
    let mut norms: Vec<Option<BigRational>> = vec![None; r];
    norms[0] = Some(BigRational::one());
    let mut stack = vec![0];
    while let Some(j) = stack.pop() {
        for i in 0..r {
            if norms[i].is_none() && cartan[i][j] != 0 {
                let nj = norms[j].clone().unwrap();
                norms[i] = Some(
                    nj * BigRational::from_integer(cartan[i][j].into())
                        / BigRational::from_integer(cartan[j][i].into()),
                );
                stack.push(i);
            }
        }
    }
    let norms: Vec<BigRational> = norms.into_iter().map(Option::unwrap).collect();
    let min = norms.iter().min().unwrap().clone();
    norms.into_iter().map(|x| x / &min).collect()
}

/// Positive roots on simple roots, generated by root strings, sorted by height.
fn positive_root_expansions(cartan: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let r = cartan.len();
    let mut roots: Vec<Vec<i64>> = (0..r)
        .map(|i| {
            let mut v = vec![0; r];
            v[i] = 1;
            v
        })
        .collect();
    let mut known: BTreeSet<Vec<i64>> = roots.iter().cloned().collect();
    let mut layer = roots.clone();
    while !layer.is_empty() {
        let mut next_layer = Vec::new();
        for beta in &layer {
            for i in 0..r {
                let pairing: i64 = (0..r).map(|j| beta[j] * cartan[j][i]).sum();
                let mut p = 0;
                loop {
                    let mut down = beta.clone();
                    down[i] -= p + 1;
                    if known.contains(&down) {
                        p += 1;
                    } else {
                        break;
                    }
                }
                if p - pairing > 0 {
                    let mut up = beta.clone();
                    up[i] += 1;
                    if known.insert(up.clone()) {
                        next_layer.push(up);
                    }
                }
            }
        }
        next_layer.sort();
        roots.extend(next_layer.iter().cloned());
        layer = next_layer;
    }
    roots
}

fn dynkin_of_root(cartan: &[Vec<i64>], coeffs: &[i64]) -> Weight {
    let r = cartan.len();
    Weight(
        (0..r)
            .map(|k| (0..r).map(|j| coeffs[j] * cartan[j][k]).sum())
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(c: &[i64]) -> Weight {
        Weight(c.to_vec())
    }

    fn a4() -> RootSystem {
        RootSystem::su(5).unwrap()
    }

    /// Product formula for SU(5) dimensions, written out factor by factor.
    fn su5_dimension_oracle(l: &[i64]) -> i64 {
        let (a, b, c, d) = (l[0], l[1], l[2], l[3]);
        (1 + a)
            * (1 + b)
            * (1 + c)
            * (1 + d)
            * (2 + a + b)
            * (2 + b + c)
            * (2 + c + d)
            * (3 + a + b + c)
            * (3 + b + c + d)
            * (4 + a + b + c + d)
            / 288
    }

    #[test]
    fn rank_constraints() {
        assert!(LieType::new(Series::A, 0).is_err());
        assert!(LieType::new(Series::B, 1).is_err());
        assert!(LieType::new(Series::D, 2).is_err());
        assert!(LieType::new(Series::E, 5).is_err());
        assert!(LieType::new(Series::E, 9).is_err());
        assert!(LieType::new(Series::F, 3).is_err());
        assert!(LieType::new(Series::G, 3).is_err());
        assert_eq!("B3".parse::<LieType>().unwrap().to_string(), "B3");
        assert!("X3".parse::<LieType>().is_err());
    }

    #[test]
    fn positive_root_counts() {
        let cases = [
            ("A1", 1),
            ("A4", 10),
            ("A6", 21),
            ("B2", 4),
            ("B3", 9),
            ("C3", 9),
            ("C4", 16),
            ("D4", 12),
            ("D5", 20),
            ("G2", 6),
            ("F4", 24),
            ("E6", 36),
            ("E7", 63),
            ("E8", 120),
        ];
        for (t, count) in cases {
            let rs = RootSystem::new(t.parse().unwrap());
            assert_eq!(rs.positive_roots().len(), count, "{t}");
        }
    }

    #[test]
    fn cartan_times_inverse_is_identity() {
        for t in ["A4", "B3", "C4", "D5", "E6", "E7", "E8", "F4", "G2"] {
            let rs = RootSystem::new(t.parse().unwrap());
            let r = rs.rank();
            for i in 0..r {
                for j in 0..r {
                    let s = (0..r)
                        .map(|k| BigRational::from_integer(rs.cartan[i][k].into()) * &rs.inverse_cartan[k][j])
                        .fold(BigRational::zero(), |a, b| a + b);
                    let expected = if i == j { BigRational::one() } else { BigRational::zero() };
                    assert_eq!(s, expected, "{t}");
                }
            }
        }
    }

    #[test]
    fn simple_roots_are_cartan_rows() {
        let rs = RootSystem::new("F4".parse().unwrap());
        for i in 0..4 {
            assert_eq!(rs.positive_roots()[i], Weight(rs.cartan()[i].clone()));
        }
    }

    #[test]
    fn weyl_vector_examples() {
        assert_eq!(a4().weyl_vector(), w(&[1, 1, 1, 1]));
        assert_eq!(RootSystem::su(2).unwrap().weyl_vector(), w(&[1]));
        assert_eq!(RootSystem::new("G2".parse().unwrap()).weyl_vector(), w(&[1, 1]));
    }

    #[test]
    fn su5_dimensions() {
        let rs = a4();
        assert_eq!(rs.dimension(&w(&[3, 4, 3, 5])).unwrap(), BigInt::from(5_001_750));
        assert_eq!(rs.dimension(&w(&[4, 3, 5, 4])).unwrap(), BigInt::from(9_281_250));
        assert_eq!(rs.dimension(&w(&[0, 0, 0, 0])).unwrap(), BigInt::from(1));
        assert_eq!(su5_dimension_oracle(&[1, 0, 0, 1]), 24);
        assert_eq!(rs.dimension(&w(&[1, 0, 0, 1])).unwrap(), BigInt::from(24));
        assert!(rs.dimension(&w(&[1, -1, 0, 0])).is_err());
    }

    #[test]
    fn fundamental_dimensions_of_other_types() {
        let dims = |t: &str, lam: &[i64]| {
            RootSystem::new(t.parse().unwrap())
                .dimension(&w(lam))
                .unwrap()
        };
        assert_eq!(dims("B2", &[1, 0]), BigInt::from(5));
        assert_eq!(dims("B2", &[0, 1]), BigInt::from(4));
        assert_eq!(dims("C3", &[1, 0, 0]), BigInt::from(6));
        assert_eq!(dims("G2", &[0, 1]), BigInt::from(7));
        assert_eq!(dims("G2", &[1, 0]), BigInt::from(14));
        assert_eq!(dims("G2", &[0, 2]), BigInt::from(27));
        assert_eq!(dims("F4", &[0, 0, 0, 1]), BigInt::from(26));
        assert_eq!(dims("E6", &[1, 0, 0, 0, 0, 0]), BigInt::from(27));
        assert_eq!(dims("E7", &[1, 0, 0, 0, 0, 0, 0]), BigInt::from(56));
        assert_eq!(dims("E7", &[0, 0, 0, 0, 0, 1, 0]), BigInt::from(133));
        assert_eq!(dims("E8", &[1, 0, 0, 0, 0, 0, 0, 0]), BigInt::from(248));
        assert_eq!(dims("E8", &[0, 0, 0, 0, 0, 0, 1, 0]), BigInt::from(3875));
    }

    #[test]
    fn root_lattice_membership() {
        let rs = a4();
        assert!(rs.is_in_root_lattice(&w(&[5, 5, 4, 7])));
        assert!(rs.is_in_root_lattice(&w(&[0, 0, 0, 0])));
        assert!(!RootSystem::su(2).unwrap().is_in_root_lattice(&w(&[1])));
    }

    #[test]
    fn conjugation_reverses_a_series() {
        let rs = a4();
        assert_eq!(rs.conjugate(&w(&[4, 3, 5, 4])), w(&[4, 5, 3, 4]));
        assert_eq!(rs.conjugate(&w(&[1, 1, 1, 1])), w(&[1, 1, 1, 1]));
        assert_eq!(rs.conjugate(&w(&[2, 2, 4, 2])), w(&[2, 4, 2, 2]));
    }

    #[test]
    fn orbit_examples() {
        let a1 = RootSystem::su(2).unwrap();
        assert_eq!(
            a1.weyl_orbit(&w(&[2])).into_iter().collect::<Vec<_>>(),
            vec![w(&[-2]), w(&[2])]
        );
        assert_eq!(RootSystem::su(3).unwrap().weyl_orbit(&w(&[1, 1])).len(), 6);
        assert_eq!(a4().weyl_orbit(&w(&[0, 0, 0, 0])).len(), 1);
        // regular orbits have the full group order
        let g2 = RootSystem::new("G2".parse().unwrap());
        assert_eq!(BigInt::from(g2.weyl_orbit(&w(&[1, 1])).len()), g2.lie_type().weyl_group_order());
    }

    #[test]
    fn dominant_weights_below_examples() {
        let a2 = RootSystem::su(3).unwrap();
        let below: Vec<_> = a2.dominant_weights_below(&w(&[1, 1])).unwrap().into_iter().collect();
        assert_eq!(below, vec![w(&[0, 0]), w(&[1, 1])]);
        assert_eq!(a4().dominant_weights_below(&w(&[0, 0, 0, 0])).unwrap().len(), 1);
        let below: BTreeSet<_> = a4().dominant_weights_below(&w(&[0, 1, 1, 0])).unwrap();
        let expected: BTreeSet<_> = [w(&[0, 1, 1, 0]), w(&[1, 0, 0, 1]), w(&[0, 0, 0, 0])]
            .into_iter()
            .collect();
        assert_eq!(below, expected);
    }

    #[test]
    fn dominant_representative_is_in_orbit() {
        let rs = a4();
        let x = w(&[-2, 3, -1, 1]);
        let dom = rs.dominant_representative(&x);
        assert!(dom.is_dominant());
        assert!(rs.weyl_orbit(&dom).contains(&x));
    }

    #[test]
    fn partitions_round_trip() {
        let lam = w(&[1, 0, 0, 1]);
        assert_eq!(lam.to_partition(), vec![2, 1, 1, 1, 0]);
        assert_eq!(Weight::from_partition(&lam.to_partition()), lam);
        assert_eq!("{3,4,3,5}".parse::<Weight>().unwrap(), w(&[3, 4, 3, 5]));
        assert_eq!("3, 4,3,5".parse::<Weight>().unwrap(), w(&[3, 4, 3, 5]));
        assert!("3,x".parse::<Weight>().is_err());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn small_weight(rank: usize, max: i64) -> impl Strategy<Value = Weight> {
            proptest::collection::vec(0..=max, rank).prop_map(Weight)
        }

        proptest! {
            #[test]
            fn su5_dimension_matches_product_formula(l in small_weight(4, 6)) {
                let d = a4().dimension(&l).unwrap();
                prop_assert_eq!(d, BigInt::from(su5_dimension_oracle(&l.0)));
            }

            #[test]
            fn dimension_is_conjugation_invariant(l in small_weight(3, 5)) {
                let rs = RootSystem::su(4).unwrap();
                prop_assert_eq!(rs.dimension(&l).unwrap(), rs.dimension(&rs.conjugate(&l)).unwrap());
            }

            #[test]
            fn orbit_size_divides_group_order(l in small_weight(3, 2)) {
                for t in ["A3", "B3", "C3"] {
                    let rs = RootSystem::new(t.parse().unwrap());
                    let size = BigInt::from(rs.weyl_orbit(&l).len());
                    let order = rs.lie_type().weyl_group_order();
                    prop_assert!((&order % &size).is_zero());
                    if l.0.iter().all(|&c| c >= 1) {
                        prop_assert_eq!(size, order);
                    }
                }
            }

            #[test]
            fn weights_below_differ_by_root_lattice(l in small_weight(3, 3)) {
                let rs = RootSystem::su(4).unwrap();
                for mu in rs.dominant_weights_below(&l).unwrap() {
                    prop_assert!(rs.is_in_root_lattice(&(&l - &mu)));
                    prop_assert!(rs.is_positive_root_combination(&(&l - &mu)));
                }
            }
        }
    }
}
