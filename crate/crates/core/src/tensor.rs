//! Tensor-product decompositions and Kostka numbers for SU(n).

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};
use crate::oblade::{count_fillings_with, BranchingTriple, SearchConfig};
use crate::rootsys::{RootSystem, Weight};

/// Irreducible constituents of a tensor product with their multiplicities.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Decomposition {
    pub entries: BTreeMap<Weight, BigUint>,
}

impl Decomposition {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn multiplicity(&self, nu: &Weight) -> BigUint {
        self.entries.get(nu).cloned().unwrap_or_default()
    }

    pub fn total_multiplicity(&self) -> BigUint {
        self.entries.values().sum()
    }

    pub fn min_multiplicity(&self) -> Option<&BigUint> {
        self.entries.values().min()
    }

    pub fn max_multiplicity(&self) -> Option<&BigUint> {
        self.entries.values().max()
    }

    /// `Σ_ν mult(ν)·dim(ν)`.
    pub fn dimension_sum(&self, rs: &RootSystem) -> Result<BigInt> {
        let mut sum = BigInt::zero();
        for (nu, m) in &self.entries {
            sum += BigInt::from(m.clone()) * rs.dimension(nu)?;
        }
        Ok(sum)
    }
}

fn check_dominant(n: usize, w: &Weight) -> Result<()> {
    if w.rank() + 1 != n {
        return Err(domain(format!("weight {w} does not have {} coordinates", n - 1)));
    }
    if !w.is_dominant() {
        return Err(domain(format!("weight {w} is not dominant")));
    }
    Ok(())
}

/// Partitions with at most `parts` parts, sum `size`, first part at most
/// `first`, containing both `a` and `b`, as Dynkin labels.
fn candidates(parts: usize, size: i64, first: i64, a: &[i64], b: &[i64]) -> Vec<Weight> {
    fn rec(
        i: usize,
        parts: usize,
        left: i64,
        cap: i64,
        floor: &[i64],
        cur: &mut Vec<i64>,
        out: &mut Vec<Weight>,
    ) {
        if i == parts {
            if left == 0 {
                out.push(Weight(cur.windows(2).map(|w| w[0] - w[1]).collect()));
            }
            return;
        }
        // remaining parts are at most `cap` each and at least `floor`
        let rest_min: i64 = floor[i + 1..].iter().sum();
        let hi = cap.min(left - rest_min);
        let lo = floor[i].max(if i + 1 == parts { left } else { 0 });
        // parts after i can hold at most x each
        for x in (lo..=hi).rev() {
            if x * ((parts - i) as i64) < left {
                break;
            }
            cur.push(x);
            rec(i + 1, parts, left - x, x, floor, cur, out);
            cur.pop();
        }
    }
    let floor: Vec<i64> = a.iter().zip(b).map(|(x, y)| *x.max(y)).collect();
    let mut out = Vec::new();
    rec(0, parts, size, first, &floor, &mut Vec::with_capacity(parts), &mut out);
    out.sort();
    out
}

/// Full decomposition of `λ ⊗ μ` by counting O-blade fillings for every
/// admissible `ν`.
pub fn tensor_decompose(n: usize, lambda: &Weight, mu: &Weight) -> Result<Decomposition> {
    tensor_decompose_with(n, lambda, mu, &SearchConfig::default())
}

pub fn tensor_decompose_with(n: usize, lambda: &Weight, mu: &Weight, cfg: &SearchConfig) -> Result<Decomposition> {
    check_dominant(n, lambda)?;
    check_dominant(n, mu)?;
    let (pl, pm) = (lambda.to_partition(), mu.to_partition());
    let size = pl.iter().sum::<i64>() + pm.iter().sum::<i64>();
    let nus = candidates(n, size, pl[0] + pm[0], &pl, &pm);
    // each count is small; parallelise across candidates instead of inside them
    let inner = SearchConfig { parallel: false, ..*cfg };
    let counts: Vec<(Weight, BigUint)> = nus
        .into_par_iter()
        .map(|nu| {
            let t = BranchingTriple::new(n, lambda.clone(), mu.clone(), nu.clone())?;
            Ok((nu, count_fillings_with(&t, &inner)?))
        })
        .collect::<Result<_>>()?;
    Ok(Decomposition { entries: counts.into_iter().filter(|(_, c)| !c.is_zero()).collect() })
}

/// `b_λ`, the sum of the Dynkin labels.
pub fn kostka_bound(lambda: &Weight) -> i64 {
    lambda.level()
}

/// `C_{λ,pρ}^{δ+pρ}` for a dominant `δ`.
fn shifted_coefficient(n: usize, lambda: &Weight, delta: &Weight, p: i64, cfg: &SearchConfig) -> Result<BigUint> {
    let prho = Weight::rho(n - 1).scaled(p);
    let t = BranchingTriple::new(n, lambda.clone(), prho.clone(), delta + &prho)?;
    count_fillings_with(&t, cfg)
}

fn kostka_inputs(n: usize, lambda: &Weight, delta: &Weight) -> Result<Option<Weight>> {
    check_dominant(n, lambda)?;
    if delta.rank() + 1 != n {
        return Err(domain(format!("weight {delta} does not have {} coordinates", n - 1)));
    }
    let rs = RootSystem::su(n)?;
    let delta = rs.dominant_representative(delta);
    let diff = lambda - &delta;
    Ok(rs.is_positive_root_combination(&diff).then_some(delta))
}

/// Weight multiplicity `K_{λ,δ}` as the stabilised LR coefficient at `p = b_λ + 1`.
pub fn kostka(n: usize, lambda: &Weight, delta: &Weight) -> Result<BigUint> {
    kostka_with(n, lambda, delta, &SearchConfig::default())
}

pub fn kostka_with(n: usize, lambda: &Weight, delta: &Weight, cfg: &SearchConfig) -> Result<BigUint> {
    match kostka_inputs(n, lambda, delta)? {
        Some(delta) => shifted_coefficient(n, lambda, &delta, kostka_bound(lambda) + 1, cfg),
        None => Ok(BigUint::zero()),
    }
}

/// `[C_{λ,pρ}^{δ+pρ}]` for `p = 1..=p_max`.
pub fn kostka_sequence(n: usize, lambda: &Weight, delta: &Weight, p_max: u32) -> Result<Vec<BigUint>> {
    if p_max == 0 {
        return Err(domain("p_max must be at least 1"));
    }
    let Some(delta) = kostka_inputs(n, lambda, delta)? else {
        return Ok(vec![BigUint::zero(); p_max as usize]);
    };
    (1..=p_max as i64)
        .map(|p| shifted_coefficient(n, lambda, &delta, p, &SearchConfig::default()))
        .collect()
}

/// Weight system of `λ`: dominant `δ` with their multiplicities.
pub fn dominant_weight_multiplicities(n: usize, lambda: &Weight) -> Result<BTreeMap<Weight, BigUint>> {
    let rs = RootSystem::su(n)?;
    let mut out = BTreeMap::new();
    for delta in rs.dominant_weights_below(lambda)? {
        let k = kostka(n, lambda, &delta)?;
        if k >= BigUint::one() {
            out.insert(delta, k);
        }
    }
    Ok(out)
}
