//! Stretching polynomials `s ↦ C_{sλ,sμ}^{sν}` and Horn volumes.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::oblade::{count_fillings_with, BranchingTriple, SearchConfig};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StretchOptions {
    pub search: SearchConfig,
    /// Also count at `s = degree + 1` and require the interpolant to match.
    pub guard: bool,
}

impl Default for StretchOptions {
    fn default() -> Self {
        StretchOptions { search: SearchConfig::default(), guard: true }
    }
}

/// Exact interpolant of the stretched LR coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StretchPolynomial {
    pub triple: BranchingTriple,
    /// Coefficients of `s^0, s^1, ...`.
    #[serde(with = "rational_strings")]
    pub coeffs: Vec<BigRational>,
    /// Counted values at `s = 0, 1, ...` including the guard point when used.
    #[serde(with = "uint_strings")]
    pub samples: Vec<BigUint>,
    pub guarded: bool,
}

/// Leading coefficient of the stretching polynomial.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VolumeValue {
    #[serde(with = "rational_string")]
    pub value: BigRational,
    /// False when the polynomial has lower degree than the generic one.
    pub generic: bool,
}

/// Degree of the generic SU(n) stretching polynomial.
pub fn generic_degree(n: usize) -> usize {
    (n - 1) * (n - 2) / 2
}

pub fn stretch_polynomial(triple: &BranchingTriple) -> Result<StretchPolynomial> {
    stretch_polynomial_with(triple, &StretchOptions::default())
}

pub fn stretch_polynomial_with(triple: &BranchingTriple, opts: &StretchOptions) -> Result<StretchPolynomial> {
    if !triple.is_compatible() {
        return Err(domain(format!(
            "{} + {} - {} is not in the root lattice",
            triple.lambda, triple.mu, triple.nu
        )));
    }
    let d = generic_degree(triple.n);
    let points = if opts.guard { d + 2 } else { d + 1 };
    let samples = (0..points)
        .map(|s| count_fillings_with(&triple.scaled(s as i64), &opts.search))
        .collect::<Result<Vec<_>>>()?;
    let values: Vec<BigRational> = samples.iter().map(|v| BigRational::from(BigInt::from(v.clone()))).collect();
    let coeffs = newton_to_monomial(&values[..=d]);
    let poly = StretchPolynomial { triple: triple.clone(), coeffs, samples, guarded: opts.guard };
    if opts.guard {
        let at = poly.evaluate(&BigInt::from(d + 1));
        if at != values[d + 1] {
            return Err(Error::Consistency(format!(
                "interpolant predicts {at} at s = {} but {} fillings were counted",
                d + 1,
                values[d + 1]
            )));
        }
    }
    Ok(poly)
}

/// Monomial coefficients of the polynomial through `(k, values[k])`, `k = 0..`.
pub fn newton_to_monomial(values: &[BigRational]) -> Vec<BigRational> {
    let m = values.len();
    if m == 0 {
        return Vec::new();
    }
    let mut diffs = values.to_vec();
    let mut newton = Vec::with_capacity(m);
    for k in 0..m {
        newton.push(diffs[0].clone());
        for i in 0..m - k - 1 {
            diffs[i] = &diffs[i + 1] - &diffs[i];
        }
    }
    // Σ Δ^k f(0) · C(s, k), with C(s, k) expanded as a polynomial in s.
    let mut coeffs = vec![BigRational::zero(); m];
    let mut falling = vec![BigRational::one()];
    let mut fact = BigRational::one();
    for (k, dk) in newton.iter().enumerate() {
        if k > 0 {
            fact *= BigRational::from(BigInt::from(k));
            let shift = BigRational::from(BigInt::from(k - 1));
            let mut next = vec![BigRational::zero(); falling.len() + 1];
            for (i, c) in falling.iter().enumerate() {
                next[i + 1] += c;
                next[i] -= c * &shift;
            }
            falling = next;
        }
        if !dk.is_zero() {
            for (i, c) in falling.iter().enumerate() {
                coeffs[i] += dk * c / &fact;
            }
        }
    }
    coeffs
}

impl StretchPolynomial {
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.iter().rposition(|c| !c.is_zero())
    }

    pub fn evaluate(&self, s: &BigInt) -> BigRational {
        let s = BigRational::from(s.clone());
        self.coeffs.iter().rev().fold(BigRational::zero(), |acc, c| acc * &s + c)
    }

    /// Value at an integer point, which is always a nonnegative integer.
    pub fn evaluate_integer(&self, s: u64) -> Result<BigUint> {
        let v = self.evaluate(&BigInt::from(s));
        if !v.is_integer() || v.is_negative() {
            return Err(Error::Consistency(format!("stretching polynomial takes the value {v} at {s}")));
        }
        Ok(v.to_integer().to_biguint().expect("nonnegative"))
    }

    pub fn horn_volume(&self) -> VolumeValue {
        let d = generic_degree(self.triple.n);
        let value = self.coeffs.get(d).cloned().unwrap_or_else(BigRational::zero);
        let generic = !value.is_zero();
        VolumeValue { value, generic }
    }
}

impl fmt::Display for StretchPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c.is_negative() { '-' } else { '+' })?;
            }
            first = false;
            match k {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag}*")?;
                    }
                    if k == 1 {
                        write!(f, "s")?;
                    } else {
                        write!(f, "s^{k}")?;
                    }
                }
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Horn volume of a triple: leading coefficient of its stretching polynomial.
pub fn horn_volume(triple: &BranchingTriple) -> Result<VolumeValue> {
    horn_volume_with(triple, &StretchOptions::default())
}

/// Horn volume of any triple of dominant weights.
///
/// When `λ + μ - ν` is outside the root lattice, the smallest multiple `k`
/// that is compatible is stretched instead, and homogeneity of degree `d`
/// gives `J(λ,μ,ν) = J(kλ,kμ,kν) / k^d`.
pub fn horn_volume_with(triple: &BranchingTriple, opts: &StretchOptions) -> Result<VolumeValue> {
    let k = (1..=triple.n as i64)
        .find(|&k| triple.scaled(k).is_compatible())
        .expect("n times any weight lies in the root lattice");
    let v = stretch_polynomial_with(&triple.scaled(k), opts)?.horn_volume();
    let scale = BigRational::from(BigInt::from(k).pow(generic_degree(triple.n) as u32));
    Ok(VolumeValue { value: v.value / scale, generic: v.generic })
}

pub(crate) fn parse_rational(s: &str) -> Result<BigRational> {
    let parse_int = |t: &str| t.trim().parse::<BigInt>().map_err(|e| Error::Parse(format!("{t:?}: {e}")));
    match s.split_once('/') {
        Some((a, b)) => {
            let den = parse_int(b)?;
            if den.is_zero() {
                return Err(Error::Parse(format!("{s:?}: zero denominator")));
            }
            Ok(BigRational::new(parse_int(a)?, den))
        }
        None => Ok(BigRational::from(parse_int(s)?)),
    }
}

mod rational_string {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(v)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<BigRational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map_err(serde::de::Error::custom)
    }
}

mod rational_strings {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[BigRational], s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(|c| c.to_string()))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Vec<BigRational>, D::Error> {
        Vec::<String>::deserialize(d)?
            .iter()
            .map(|s| parse_rational(s).map_err(serde::de::Error::custom))
            .collect()
    }
}

mod uint_strings {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[BigUint], s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(|c| c.to_string()))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Vec<BigUint>, D::Error> {
        Vec::<String>::deserialize(d)?
            .iter()
            .map(|s| s.parse::<BigUint>().map_err(serde::de::Error::custom))
            .collect()
    }
}
