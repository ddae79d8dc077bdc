//! Weyl characters of SU(n) as Laurent polynomials on the maximal torus.
//!
//! Symmetric polynomials in `X_1..X_n` are specialised with `X_1 = y_1`,
//! `X_j = y_j / y_{j-1}` and `y_n = 1`. Under this substitution the exponent
//! vector of a monomial in `y_1..y_{n-1}` is exactly its weight in Dynkin
//! coordinates.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex};

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::rootsys::Weight;
use crate::tensor::Decomposition;

/// Coefficient ring of a [`LaurentPoly`].
pub trait Coeff:
    Clone + PartialEq + fmt::Debug + fmt::Display + Zero + One + Neg<Output = Self> + Sub<Output = Self>
{
}

impl<T> Coeff for T where
    T: Clone + PartialEq + fmt::Debug + fmt::Display + Zero + One + Neg<Output = Self> + Sub<Output = Self>
{
}

/// Sparse Laurent polynomial in `y_1..y_{nvars}` with no zero coefficients stored.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LaurentPoly<T> {
    nvars: usize,
    terms: BTreeMap<Vec<i64>, T>,
}

impl<T: Coeff> LaurentPoly<T> {
    pub fn zero(nvars: usize) -> Self {
        LaurentPoly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: T) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, T::one())
    }

    pub fn monomial(exponents: Vec<i64>, c: T) -> Self {
        let mut p = Self::zero(exponents.len());
        p.add_term(exponents, c);
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &BTreeMap<Vec<i64>, T> {
        &self.terms
    }

    pub fn coeff(&self, exponents: &[i64]) -> T {
        self.terms.get(exponents).cloned().unwrap_or_else(T::zero)
    }

    pub fn add_term(&mut self, exponents: Vec<i64>, c: T) {
        assert_eq!(exponents.len(), self.nvars, "exponent vector has the wrong length");
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&exponents) {
            Some(x) => {
                let sum = x.clone() + c;
                if sum.is_zero() {
                    self.terms.remove(&exponents);
                } else {
                    *x = sum;
                }
            }
            None => {
                self.terms.insert(exponents, c);
            }
        }
    }

    pub fn scale(&self, c: &T) -> Self {
        let mut out = Self::zero(self.nvars);
        if c.is_zero() {
            return out;
        }
        for (e, x) in &self.terms {
            out.add_term(e.clone(), x.clone() * c.clone());
        }
        out
    }

    pub fn map_coeffs<U: Coeff>(&self, f: impl Fn(&T) -> U) -> LaurentPoly<U> {
        let mut out = LaurentPoly::zero(self.nvars);
        for (e, x) in &self.terms {
            out.add_term(e.clone(), f(x));
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::one(self.nvars), |acc, _| &acc * self)
    }

    /// Value at `y = (1, ..., 1)`.
    pub fn sum_of_coefficients(&self) -> T {
        self.terms.values().fold(T::zero(), |a, b| a + b.clone())
    }

    /// `y_j ↦ y_{nvars+1-j}`.
    pub fn reversed_variables(&self) -> Self {
        let mut out = Self::zero(self.nvars);
        for (e, x) in &self.terms {
            out.add_term(e.iter().rev().copied().collect(), x.clone());
        }
        out
    }

    /// Terms in graded lexicographic order: total degree descending, then
    /// exponent vectors lexicographically descending.
    pub fn graded_terms(&self) -> Vec<(&Vec<i64>, &T)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| {
            let da: i64 = a.0.iter().sum();
            let db: i64 = b.0.iter().sum();
            db.cmp(&da).then_with(|| b.0.cmp(a.0))
        });
        v
    }

    /// Value at the torus point with angles `u_j = t_j - t_{j+1}`, as `(re, im)`.
    pub fn evaluate_torus(&self, u: &[f64], to_f64: impl Fn(&T) -> f64) -> (f64, f64) {
        let phases = torus_phases(u);
        let (mut re, mut im) = (0.0, 0.0);
        for (e, x) in &self.terms {
            let angle: f64 = e.iter().zip(&phases).map(|(&k, s)| k as f64 * s).sum();
            let c = to_f64(x);
            re += c * angle.cos();
            im += c * angle.sin();
        }
        (re, im)
    }
}

/// Partial sums `t_1 + ... + t_k` (k = 1..n-1) for the traceless torus
/// element with `u_j = t_j - t_{j+1}`.
pub fn torus_phases(u: &[f64]) -> Vec<f64> {
    let n = u.len() + 1;
    let mut theta = vec![0.0; n];
    for j in 1..n {
        theta[j] = theta[j - 1] - u[j - 1];
    }
    let mean = theta.iter().sum::<f64>() / n as f64;
    let mut acc = 0.0;
    theta[..n - 1]
        .iter()
        .map(|th| {
            acc += th - mean;
            acc
        })
        .collect()
}

impl<T: Coeff> Add for &LaurentPoly<T> {
    type Output = LaurentPoly<T>;
    fn add(self, rhs: &LaurentPoly<T>) -> LaurentPoly<T> {
        assert_eq!(self.nvars, rhs.nvars);
        let mut out = self.clone();
        for (e, x) in &rhs.terms {
            out.add_term(e.clone(), x.clone());
        }
        out
    }
}

impl<T: Coeff> Sub for &LaurentPoly<T> {
    type Output = LaurentPoly<T>;
    fn sub(self, rhs: &LaurentPoly<T>) -> LaurentPoly<T> {
        assert_eq!(self.nvars, rhs.nvars);
        let mut out = self.clone();
        for (e, x) in &rhs.terms {
            out.add_term(e.clone(), -x.clone());
        }
        out
    }
}

impl<T: Coeff> Mul for &LaurentPoly<T> {
    type Output = LaurentPoly<T>;
    fn mul(self, rhs: &LaurentPoly<T>) -> LaurentPoly<T> {
        assert_eq!(self.nvars, rhs.nvars);
        let mut acc: HashMap<Vec<i64>, T> = HashMap::new();
        for (a, x) in &self.terms {
            for (b, y) in &rhs.terms {
                let e: Vec<i64> = a.iter().zip(b).map(|(p, q)| p + q).collect();
                let c = x.clone() * y.clone();
                match acc.get_mut(&e) {
                    Some(v) => *v = v.clone() + c,
                    None => {
                        acc.insert(e, c);
                    }
                }
            }
        }
        LaurentPoly { nvars: self.nvars, terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect() }
    }
}

impl<T: Coeff> fmt::Display for LaurentPoly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.graded_terms().into_iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            let vars: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k != 0)
                .map(|(j, &k)| if k == 1 { format!("y{}", j + 1) } else { format!("y{}^{k}", j + 1) })
                .collect();
            if vars.is_empty() {
                write!(f, "{c}")?;
            } else if c.is_one() {
                write!(f, "{}", vars.join("*"))?;
            } else {
                write!(f, "({c})*{}", vars.join("*"))?;
            }
        }
        Ok(())
    }
}

/// Torus exponent of the monomial `X^a` in `n = a.len()` variables.
fn x_monomial(a: &[i64]) -> Vec<i64> {
    a.windows(2).map(|w| w[0] - w[1]).collect()
}

/// Elementary symmetric polynomial `e_k` in `n` variables on the torus.
pub fn elementary(n: usize, k: usize) -> LaurentPoly<i64> {
    let mut out = LaurentPoly::zero(n - 1);
    if k > n {
        return out;
    }
    for mask in 0u64..1 << n {
        if mask.count_ones() as usize == k {
            let a: Vec<i64> = (0..n).map(|i| ((mask >> i) & 1) as i64).collect();
            out.add_term(x_monomial(&a), 1);
        }
    }
    out
}

/// Power sum `p_k = Σ X_i^k` on the torus.
pub fn power_sum(n: usize, k: usize) -> LaurentPoly<i64> {
    let mut out = LaurentPoly::zero(n - 1);
    for i in 0..n {
        let mut a = vec![0i64; n];
        a[i] = k as i64;
        out.add_term(x_monomial(&a), 1);
    }
    out
}

/// Monomial symmetric polynomial `m_P`: the sum of the distinct permutations of `X^P`.
pub fn monomial_symmetric(n: usize, partition: &[i64]) -> LaurentPoly<i64> {
    let mut a: Vec<i64> = partition.to_vec();
    a.resize(n, 0);
    a.sort_unstable();
    let mut out = LaurentPoly::zero(n - 1);
    loop {
        out.add_term(x_monomial(&a), 1);
        if !next_permutation(&mut a) {
            break;
        }
    }
    out
}

fn next_permutation(a: &mut [i64]) -> bool {
    let Some(i) = (1..a.len()).rev().find(|&i| a[i - 1] < a[i]) else {
        return false;
    };
    let j = (i..a.len()).rev().find(|&j| a[j] > a[i - 1]).expect("pivot exists");
    a.swap(i - 1, j);
    a[i..].reverse();
    true
}

fn conjugate_partition(p: &[i64]) -> Vec<i64> {
    let first = p.first().copied().unwrap_or(0).max(0);
    (1..=first).map(|k| p.iter().filter(|&&x| x >= k).count() as i64).collect()
}

/// Determinant by Laplace expansion along rows, memoised on the set of used columns.
fn determinant<T: Coeff>(m: &[Vec<LaurentPoly<T>>], nvars: usize) -> LaurentPoly<T> {
    fn minor<T: Coeff>(
        m: &[Vec<LaurentPoly<T>>],
        row: usize,
        used: u64,
        memo: &mut HashMap<u64, LaurentPoly<T>>,
        nvars: usize,
    ) -> LaurentPoly<T> {
        if row == m.len() {
            return LaurentPoly::one(nvars);
        }
        if let Some(v) = memo.get(&used) {
            return v.clone();
        }
        let mut acc = LaurentPoly::zero(nvars);
        let mut free_before = 0;
        for c in 0..m.len() {
            if used >> c & 1 == 1 {
                continue;
            }
            let entry = &m[row][c];
            if !entry.is_zero() {
                let sub = minor(m, row + 1, used | 1 << c, memo, nvars);
                if !sub.is_zero() {
                    let term = entry * &sub;
                    acc = if free_before % 2 == 0 { &acc + &term } else { &acc - &term };
                }
            }
            free_before += 1;
        }
        memo.insert(used, acc.clone());
        acc
    }
    assert!(m.len() < 64, "matrix too large");
    minor(m, 0, 0, &mut HashMap::new(), nvars)
}

/// Schur polynomial `s_P` in `n` variables on the torus, via the dual
/// Jacobi–Trudi determinant `det(e_{P'_i - i + j})`.
pub fn schur(n: usize, partition: &[i64]) -> Result<LaurentPoly<i64>> {
    if partition.windows(2).any(|w| w[0] < w[1]) || partition.iter().any(|&x| x < 0) {
        return Err(domain(format!("{partition:?} is not a partition")));
    }
    if partition.iter().filter(|&&x| x > 0).count() > n {
        return Err(domain(format!("{partition:?} has more than {n} parts")));
    }
    let conj = conjugate_partition(partition);
    let m = conj.len();
    let es: Vec<LaurentPoly<i64>> = (0..=n).map(|k| elementary(n, k)).collect();
    let matrix: Vec<Vec<LaurentPoly<i64>>> = (0..m)
        .map(|i| {
            (0..m)
                .map(|j| {
                    let k = conj[i] - i as i64 + j as i64;
                    if (0..=n as i64).contains(&k) {
                        es[k as usize].clone()
                    } else {
                        LaurentPoly::zero(n - 1)
                    }
                })
                .collect()
        })
        .collect();
    Ok(determinant(&matrix, n - 1))
}

/// Weyl character `χ_λ` of SU(n): the Schur polynomial of the partition of `λ`.
pub fn weyl_character(n: usize, lambda: &Weight) -> Result<LaurentPoly<i64>> {
    if n < 2 || lambda.rank() + 1 != n {
        return Err(domain(format!("weight {lambda} is not an SU({n}) weight")));
    }
    if !lambda.is_dominant() {
        return Err(domain(format!("weight {lambda} is not dominant")));
    }
    schur(n, &lambda.to_partition())
}

/// Cache of characters of one SU(n), shared across decompositions.
#[derive(Debug)]
pub struct CharacterTable {
    n: usize,
    cache: Mutex<HashMap<Weight, Arc<LaurentPoly<i64>>>>,
}

impl CharacterTable {
    pub fn new(n: usize) -> Self {
        CharacterTable { n, cache: Mutex::new(HashMap::new()) }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn character(&self, lambda: &Weight) -> Result<Arc<LaurentPoly<i64>>> {
        if let Some(c) = self.cache.lock().expect("character cache poisoned").get(lambda) {
            return Ok(Arc::clone(c));
        }
        let c = Arc::new(weyl_character(self.n, lambda)?);
        self.cache
            .lock()
            .expect("character cache poisoned")
            .insert(lambda.clone(), Arc::clone(&c));
        Ok(c)
    }
}

/// Ordering key under which the maximum of a Weyl-invariant weight multiset
/// is a highest weight: the height `Σ_i w_i·i(n-i)`, ties broken lexicographically.
fn height_key(n: usize, w: &[i64]) -> (i64, Vec<i64>) {
    let h = w.iter().enumerate().map(|(i, &x)| x * ((i + 1) * (n - i - 1)) as i64).sum();
    (h, w.to_vec())
}

fn is_dominant(w: &[i64]) -> bool {
    w.iter().all(|&x| x >= 0)
}

/// Default cap on the number of monomial products in [`decompose_product`].
pub const DEFAULT_TERM_BUDGET: u64 = 50_000_000;

/// Decompose `χ_λ·χ_μ` into irreducible characters by repeatedly removing
/// the character of its highest remaining weight.
pub fn decompose_product(n: usize, lambda: &Weight, mu: &Weight) -> Result<Decomposition> {
    decompose_product_with(&CharacterTable::new(n), lambda, mu, DEFAULT_TERM_BUDGET)
}

pub fn decompose_product_with(table: &CharacterTable, lambda: &Weight, mu: &Weight, budget: u64) -> Result<Decomposition> {
    let n = table.n();
    let (a, b) = (table.character(lambda)?, table.character(mu)?);
    let work = a.len() as u64 * b.len() as u64;
    if work > budget {
        return Err(Error::Budget { budget });
    }
    // Both sides are Weyl invariant, so matching dominant terms suffices.
    let mut rest: HashMap<Vec<i64>, i64> = HashMap::new();
    for (x, cx) in a.terms() {
        for (y, cy) in b.terms() {
            let s: Vec<i64> = x.iter().zip(y).map(|(p, q)| p + q).collect();
            if is_dominant(&s) {
                *rest.entry(s).or_insert(0) += cx * cy;
            }
        }
    }
    rest.retain(|_, c| *c != 0);
    let mut entries = BTreeMap::new();
    while let Some(top) = rest.keys().max_by_key(|w| height_key(n, w)).cloned() {
        let c = rest[&top];
        if c < 0 {
            return Err(Error::Consistency(format!("negative multiplicity {c} at {top:?}")));
        }
        let nu = Weight(top);
        for (w, k) in table.character(&nu)?.terms() {
            if is_dominant(w) {
                let v = rest.entry(w.clone()).or_insert(0);
                *v -= c * k;
                if *v == 0 {
                    rest.remove(w);
                }
            }
        }
        entries.insert(nu, BigUint::from(c as u64));
    }
    Ok(Decomposition { entries })
}

/// Families of symmetric polynomials accepted by [`expand_basis`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SymmetricBasis {
    Schur,
    Elementary,
    Monomial,
    PowerSum,
}

/// `basis` indexed by a partition; products for `e` and `p`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SymmetricPolySpec {
    pub basis: SymmetricBasis,
    pub index: Vec<i64>,
}

impl SymmetricPolySpec {
    pub fn new(basis: SymmetricBasis, index: &[i64]) -> Self {
        SymmetricPolySpec { basis, index: index.to_vec() }
    }
}

/// The named symmetric polynomial in `n` variables on the torus.
pub fn expand_basis(spec: &SymmetricPolySpec, n: usize) -> Result<LaurentPoly<i64>> {
    let p = &spec.index;
    if p.windows(2).any(|w| w[0] < w[1]) || p.iter().any(|&x| x < 0) {
        return Err(domain(format!("{p:?} is not a partition")));
    }
    if p.iter().filter(|&&x| x > 0).count() > n {
        return Err(domain(format!("{p:?} has more than {n} parts")));
    }
    let product = |f: &dyn Fn(usize) -> LaurentPoly<i64>| {
        p.iter()
            .filter(|&&k| k > 0)
            .fold(LaurentPoly::one(n - 1), |acc, &k| &acc * &f(k as usize))
    };
    Ok(match spec.basis {
        SymmetricBasis::Schur => schur(n, p)?,
        SymmetricBasis::Elementary => product(&|k| elementary(n, k)),
        SymmetricBasis::PowerSum => product(&|k| power_sum(n, k)),
        SymmetricBasis::Monomial => monomial_symmetric(n, p),
    })
}

fn q(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

fn rational(p: &LaurentPoly<i64>) -> LaurentPoly<BigRational> {
    p.map_coeffs(|&c| BigRational::from(BigInt::from(c)))
}

/// `Σ c_i·term_i` for the listed specs, over the rationals.
fn combination(n: usize, parts: &[(BigRational, SymmetricBasis, &[i64])]) -> Result<LaurentPoly<BigRational>> {
    let mut acc = LaurentPoly::zero(n - 1);
    for (c, basis, index) in parts {
        let term = rational(&expand_basis(&SymmetricPolySpec::new(*basis, index), n)?);
        acc = &acc + &term.scale(c);
    }
    Ok(acc)
}

/// The four symmetric-function forms of the SU(5) R-polynomial together with
/// its character form `(45 + 10χ_{1,0,0,1} + χ_{0,1,1,0})/360`.
pub fn r5_forms() -> Result<Vec<(&'static str, LaurentPoly<BigRational>)>> {
    use SymmetricBasis::*;
    let n = 5;
    let chi = |w: &[i64]| -> Result<LaurentPoly<BigRational>> { Ok(rational(&weyl_character(n, &Weight(w.to_vec()))?)) };
    let one = LaurentPoly::one(n - 1);
    let character = &(&one.scale(&q(45, 360)) + &chi(&[1, 0, 0, 1])?.scale(&q(10, 360))) + &chi(&[0, 1, 1, 0])?.scale(&q(1, 360));
    let schur_form = combination(n, &[(q(1, 36), Schur, &[2, 1, 1, 1, 0]), (q(1, 360), Schur, &[2, 2, 1, 0, 0]), (q(1, 8), Schur, &[])])?;
    let elementary_form = combination(
        n,
        &[(q(1, 360), Elementary, &[3, 2]), (q(9, 360), Elementary, &[4, 1]), (q(-10, 360), Elementary, &[5]), (q(45, 360), Elementary, &[])],
    )?;
    let monomial_form = combination(
        n,
        &[
            (q(4, 36) + q(5, 360), Monomial, &[1, 1, 1, 1, 1]),
            (q(1, 36) + q(2, 360), Monomial, &[2, 1, 1, 1, 0]),
            (q(1, 360), Monomial, &[2, 2, 1, 0, 0]),
            (q(1, 8), Monomial, &[]),
        ],
    )?;
    let power_sum_form = combination(
        n,
        &[
            (q(3, 2880), PowerSum, &[1, 1, 1, 1, 1]),
            (q(-14, 2880), PowerSum, &[2, 1, 1, 1]),
            (q(12, 2880), PowerSum, &[3, 1, 1]),
            (q(1, 2880), PowerSum, &[2, 2, 1]),
            (q(2, 2880), PowerSum, &[4, 1]),
            (q(12, 2880), PowerSum, &[3, 2]),
            (q(-16, 2880), PowerSum, &[5]),
            (q(360, 2880), PowerSum, &[]),
        ],
    )?;
    Ok(vec![
        ("character", character),
        ("schur", schur_form),
        ("elementary", elementary_form),
        ("monomial", monomial_form),
        ("power_sum", power_sum_form),
    ])
}

/// True iff all symmetric-function forms of the SU(5) R-polynomial coincide
/// with its character form.
pub fn verify_alternative_r5_forms() -> Result<bool> {
    let forms = r5_forms()?;
    let reference = &forms[0].1;
    Ok(forms.iter().all(|(_, p)| p == reference))
}

/// Convert a rational coefficient to `f64` for torus evaluation.
pub fn rational_to_f64(c: &BigRational) -> f64 {
    let (n, d) = (c.numer(), c.denom());
    match (n.to_f64(), d.to_f64()) {
        (Some(a), Some(b)) => a / b,
        _ => f64::NAN,
    }
}

/// Whether a character has only nonnegative coefficients (as every character must).
pub fn has_nonnegative_coefficients(p: &LaurentPoly<i64>) -> bool {
    p.terms().values().all(|c| !c.is_negative())
}
