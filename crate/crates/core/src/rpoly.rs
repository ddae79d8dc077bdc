//! R-polynomials: their character supports, coefficients, normalisation and
//! the iterated series they come from.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::characters::{rational_to_f64, weyl_character};
use crate::error::{domain, Error, Result};
use crate::oblade::{count_fillings_with, BranchingTriple, SearchConfig};
use crate::rootsys::{LieType, RootSystem, Series, Weight};
use crate::stretch::{horn_volume_with, StretchOptions};
use crate::tensor::tensor_decompose_with;

/// Which of the two R-polynomials.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Which {
    R,
    RHat,
}

/// `Σ_κ r_κ χ_κ` with exact rational coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharacterCombo {
    pub lie_type: LieType,
    #[serde(with = "combo_terms")]
    pub coeffs: BTreeMap<Weight, BigRational>,
    /// False when no reference table exists to compare against.
    pub confirmed: bool,
}

impl CharacterCombo {
    /// `Σ_κ r_κ·dim(κ)`, which is 1 for every R-polynomial.
    pub fn normalization(&self) -> Result<BigRational> {
        let rs = RootSystem::new(self.lie_type);
        let mut sum = BigRational::zero();
        for (k, r) in &self.coeffs {
            sum += r * BigRational::from(rs.dimension(k)?);
        }
        Ok(sum)
    }

    pub fn coefficient(&self, kappa: &Weight) -> BigRational {
        self.coeffs.get(kappa).cloned().unwrap_or_else(BigRational::zero)
    }

    /// Real value at the SU(n) torus point with angles `u`.
    pub fn evaluate_torus(&self, u: &[f64]) -> Result<f64> {
        let n = su_n(self.lie_type)?;
        if u.len() + 1 != n {
            return Err(domain(format!("expected {} angles, got {}", n - 1, u.len())));
        }
        let mut total = 0.0;
        for (k, r) in &self.coeffs {
            let (re, _) = weyl_character(n, k)?.evaluate_torus(u, |&c| c as f64);
            total += rational_to_f64(r) * re;
        }
        Ok(total)
    }
}

mod combo_terms {
    use super::*;
    use serde::{Deserializer, Serializer};

    #[derive(Serialize, Deserialize)]
    struct Term {
        kappa: Weight,
        coeff: String,
    }

    pub fn serialize<S: Serializer>(m: &BTreeMap<Weight, BigRational>, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(m.iter().map(|(k, c)| Term { kappa: k.clone(), coeff: c.to_string() }))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<BTreeMap<Weight, BigRational>, D::Error> {
        Vec::<Term>::deserialize(d)?
            .into_iter()
            .map(|t| {
                crate::stretch::parse_rational(&t.coeff)
                    .map(|c| (t.kappa, c))
                    .map_err(serde::de::Error::custom)
            })
            .collect()
    }
}

/// Character supports of `R` and `R̂`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KappaSets {
    pub lie_type: LieType,
    pub k: BTreeSet<Weight>,
    pub k_hat: BTreeSet<Weight>,
    /// `ρ - ξ`
    pub rho_ring: Weight,
    /// `ρ - ξ̂`; absent for `A_1`, whose `K̂ = {ρ}` is not of this form.
    pub rho_hat_ring: Option<Weight>,
    /// `R = R̂`, which holds exactly when `ρ` is in the root lattice.
    pub equal: bool,
}

impl KappaSets {
    pub fn support(&self, which: Which) -> &BTreeSet<Weight> {
        match which {
            Which::R => &self.k,
            Which::RHat => &self.k_hat,
        }
    }
}

fn shifted(rs: &RootSystem, rho: &Weight, xi: &[BigRational]) -> Result<Weight> {
    let xi = rs.from_simple_roots(xi).to_weight().ok_or_else(|| {
        Error::Consistency(format!("{}: ξ is not an integral weight", rs.lie_type()))
    })?;
    Ok(rho - &xi)
}

/// Dominant weights of the irreps with highest weights `ρ - ξ` and `ρ - ξ̂`.
///
/// `ξ = Σ f_j α_j` with `f_j = 1/2` where `⟨ρ, ω_j^∨⟩` is fractional and 1
/// otherwise; `ξ̂` is the plain sum of simple roots. When `ρ` lies in the root
/// lattice both coincide.
pub fn kappa_sets(lie_type: LieType) -> Result<KappaSets> {
    let rs = RootSystem::new(lie_type);
    let rho = rs.weyl_vector();
    let coords = rs.simple_root_coords(&rho);
    let equal = rs.is_in_root_lattice(&rho);
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let xi: Vec<BigRational> = coords
        .iter()
        .map(|c| if c.is_integer() { BigRational::one() } else { half.clone() })
        .collect();
    let rho_ring = shifted(&rs, &rho, &xi)?;
    let k = rs.dominant_weights_below(&rho_ring)?;
    if lie_type.rank() == 1 {
        return Ok(KappaSets {
            lie_type,
            k,
            k_hat: BTreeSet::from([rho]),
            rho_ring,
            rho_hat_ring: None,
            equal,
        });
    }
    let rho_hat_ring = shifted(&rs, &rho, &vec![BigRational::one(); rs.rank()])?;
    let k_hat = if equal { k.clone() } else { rs.dominant_weights_below(&rho_hat_ring)? };
    Ok(KappaSets { lie_type, k, k_hat, rho_ring, rho_hat_ring: Some(rho_hat_ring), equal })
}

fn su_n(lie_type: LieType) -> Result<usize> {
    match lie_type.series() {
        Series::A => Ok(lie_type.rank() + 1),
        _ => Err(Error::Unsupported(format!("{lie_type}: only SU(n) characters are available"))),
    }
}

/// Coefficients `r_κ = J(ρ, ρ, κ+ρ)` over the support of `R` or `R̂`.
///
/// Each coefficient is the leading term of a stretching polynomial, which
/// becomes expensive quickly: for SU(7) the counts exceed any reasonable
/// budget and [`verify_r7`] checks the reference table instead.
pub fn r_coefficients(lie_type: LieType, which: Which, cfg: &SearchConfig) -> Result<CharacterCombo> {
    let n = su_n(lie_type)?;
    if n == 2 {
        return Err(Error::Unsupported("SU(2) needs a separate treatment of its divergent series".into()));
    }
    let sets = kappa_sets(lie_type)?;
    let rho = Weight::rho(n - 1);
    let opts = StretchOptions { search: *cfg, guard: true };
    let mut coeffs = BTreeMap::new();
    for kappa in sets.support(which) {
        let t = BranchingTriple::new(n, rho.clone(), rho.clone(), kappa + &rho)?;
        coeffs.insert(kappa.clone(), horn_volume_with(&t, &opts)?.value);
    }
    Ok(CharacterCombo { lie_type, coeffs, confirmed: sets.equal })
}

/// `Σ_{κ,τ} r_κ C_{λμ}^τ C_{τκ}^ν`, which equals `J(λ+ρ, μ+ρ, ν+ρ)`.
pub fn local_average_volume(
    n: usize,
    lambda: &Weight,
    mu: &Weight,
    nu: &Weight,
    combo: &CharacterCombo,
) -> Result<BigRational> {
    if su_n(combo.lie_type)? != n {
        return Err(domain(format!("combination for {} used with SU({n})", combo.lie_type)));
    }
    BranchingTriple::new(n, lambda.clone(), mu.clone(), nu.clone())?;
    let cfg = SearchConfig::default();
    let taus = tensor_decompose_with(n, lambda, mu, &cfg)?;
    let inner = SearchConfig { parallel: false, ..cfg };
    let terms: Vec<(BigRational, BigUint)> = combo
        .coeffs
        .iter()
        .flat_map(|(kappa, r)| taus.entries.iter().map(move |(tau, c)| (kappa, r, tau, c)))
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|(kappa, r, tau, c)| {
            let t = BranchingTriple::new(n, tau.clone(), kappa.clone(), nu.clone())?;
            Ok((r.clone(), c * count_fillings_with(&t, &inner)?))
        })
        .collect::<Result<_>>()?;
    Ok(terms
        .into_iter()
        .map(|(r, m)| r * BigRational::from(BigInt::from(m)))
        .fold(BigRational::zero(), |a, b| a + b))
}

/// The reference G₂ combination, in the long-root-first node order.
pub fn g2_combo() -> CharacterCombo {
    let q = |a: i64, b: i64| BigRational::new(a.into(), b.into());
    CharacterCombo {
        lie_type: LieType::new(Series::G, 2).expect("G2 exists"),
        coeffs: BTreeMap::from([
            (Weight(vec![0, 0]), q(1, 9)),
            (Weight(vec![0, 1]), q(13, 144)),
            (Weight(vec![0, 2]), q(1, 432)),
            (Weight(vec![1, 0]), q(1, 72)),
        ]),
        confirmed: true,
    }
}

/// Reference SU(7) coefficients as `(numerator, weights, dimension)` over `3·13!`.
const R7_TABLE: &[(u64, &[[i64; 6]], u64)] = &[
    (87766794, &[[0, 0, 0, 0, 0, 0]], 1),
    (2, &[[0, 1, 1, 1, 1, 0]], 105840),
    (29, &[[0, 1, 2, 0, 0, 1], [1, 0, 0, 2, 1, 0]], 30870),
    (38, &[[0, 2, 0, 0, 2, 0]], 27000),
    (647, &[[0, 2, 0, 1, 0, 1], [1, 0, 1, 0, 2, 0]], 26460),
    (3575, &[[0, 0, 0, 1, 2, 0], [0, 2, 1, 0, 0, 0]], 3528),
    (13188, &[[1, 0, 1, 1, 0, 1]], 24500),
    (75599, &[[0, 0, 0, 2, 0, 1], [1, 0, 2, 0, 0, 0]], 2646),
    (88248, &[[1, 1, 0, 0, 1, 1]], 10240),
    (313706, &[[2, 0, 0, 0, 0, 2]], 735),
    (554727, &[[0, 0, 1, 0, 1, 1], [1, 1, 0, 1, 0, 0]], 2940),
    (2157704, &[[0, 1, 0, 0, 0, 2], [2, 0, 0, 0, 1, 0]], 540),
    (3601542, &[[0, 0, 1, 1, 0, 0]], 784),
    (15350862, &[[0, 1, 0, 0, 1, 0]], 392),
    (46669412, &[[1, 0, 0, 0, 0, 1]], 48),
];

/// `3·13!`
pub fn r7_denominator() -> BigInt {
    BigInt::from(3) * (1..=13u32).map(BigInt::from).product::<BigInt>()
}

/// The reference SU(7) R-polynomial.
pub fn r7_combo() -> CharacterCombo {
    let den = r7_denominator();
    let mut coeffs = BTreeMap::new();
    for (num, weights, _) in R7_TABLE {
        for w in *weights {
            coeffs.insert(Weight(w.to_vec()), BigRational::new(BigInt::from(*num), den.clone()));
        }
    }
    CharacterCombo { lie_type: LieType::su(7).expect("A6 exists"), coeffs, confirmed: true }
}

/// Structural checks of the SU(7) table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct R7Report {
    pub support_size: usize,
    pub support_matches_kappa_set: bool,
    pub conjugate_pairs_share_coefficients: bool,
    /// `(κ, computed dimension, listed dimension)`
    pub dimensions: Vec<(Weight, String, u64)>,
    pub dimensions_match: bool,
    pub nonnegative: bool,
    #[serde(with = "rational_str")]
    pub normalization: BigRational,
    pub denominator: String,
}

mod rational_str {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(v)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<BigRational, D::Error> {
        crate::stretch::parse_rational(&String::deserialize(d)?).map_err(serde::de::Error::custom)
    }
}

impl R7Report {
    pub fn passed(&self) -> bool {
        self.support_size == 21
            && self.support_matches_kappa_set
            && self.conjugate_pairs_share_coefficients
            && self.dimensions_match
            && self.nonnegative
            && self.normalization.is_one()
    }
}

pub fn verify_r7() -> Result<R7Report> {
    let combo = r7_combo();
    let rs = RootSystem::new(combo.lie_type);
    let sets = kappa_sets(combo.lie_type)?;
    let support: BTreeSet<Weight> = combo.coeffs.keys().cloned().collect();
    let conjugate_pairs_share_coefficients = combo
        .coeffs
        .iter()
        .all(|(k, r)| combo.coeffs.get(&rs.conjugate(k)) == Some(r));
    let mut dimensions = Vec::new();
    let mut dimensions_match = true;
    for (_, weights, listed) in R7_TABLE {
        for w in *weights {
            let w = Weight(w.to_vec());
            let d = rs.dimension(&w)?;
            dimensions_match &= d == BigInt::from(*listed);
            dimensions.push((w, d.to_string(), *listed));
        }
    }
    Ok(R7Report {
        support_size: support.len(),
        support_matches_kappa_set: support == sets.k && sets.equal,
        conjugate_pairs_share_coefficients,
        dimensions,
        dimensions_match,
        nonnegative: combo.coeffs.values().all(|r| !r.is_negative()),
        normalization: combo.normalization()?,
        denominator: r7_denominator().to_string(),
    })
}

/// Neumaier-compensated sum.
#[derive(Debug, Clone, Copy, Default)]
struct Compensated {
    sum: f64,
    carry: f64,
}

impl Compensated {
    fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.carry += (self.sum - t) + x;
        } else {
            self.carry += (x - t) + self.sum;
        }
        self.sum = t;
    }

    fn value(self) -> f64 {
        self.sum + self.carry
    }
}

/// `D_n·ϖ_n` with the lattice sum truncated to `|p_j| <= p_max`.
///
/// Terms are summed with compensation per value of `p_1`, and those partial
/// sums are combined in increasing `p_1` order, so the result does not depend
/// on the thread count.
pub fn series_r(n: usize, u: &[f64], p_max: u32) -> Result<f64> {
    if n == 2 {
        return Err(Error::Unsupported("the SU(2) series diverges".into()));
    }
    if n < 2 || u.len() + 1 != n {
        return Err(domain(format!("SU({n}) needs {} angles, got {}", n.saturating_sub(1), u.len())));
    }
    let tau = std::f64::consts::TAU;
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    // U_{ij} = u_i + ... + u_{j-1}
    let prefix: Vec<f64> = std::iter::once(0.0)
        .chain(u.iter().scan(0.0, |acc, x| {
            *acc += x;
            Some(*acc)
        }))
        .collect();
    let spans: Vec<f64> = pairs.iter().map(|&(i, j)| prefix[j] - prefix[i]).collect();
    let varpi: f64 = spans.iter().map(|s| 2.0 * (0.5 * s).sin()).product();

    let p = p_max as i64;
    let m = n - 1;
    let outer: Vec<i64> = (-p..=p).collect();
    let partials: Vec<Result<f64>> = outer
        .par_iter()
        .map(|&p1| {
            let mut acc = Compensated::default();
            let mut ps = vec![-p; m];
            ps[0] = p1;
            loop {
                let mut pre = vec![0i64; n];
                for k in 0..m {
                    pre[k + 1] = pre[k] + ps[k];
                }
                let mut term = 1.0;
                for (idx, &(i, j)) in pairs.iter().enumerate() {
                    let d = spans[idx] + (pre[j] - pre[i]) as f64 * tau;
                    if d.abs() < 1e-12 {
                        return Err(domain("angles make a denominator of the series vanish"));
                    }
                    term /= d;
                }
                let exponent: i64 = ps.iter().enumerate().map(|(j, &pj)| (j as i64 + 1) * pj).sum::<i64>() * (n as i64 - 1);
                if exponent.rem_euclid(2) == 1 {
                    term = -term;
                }
                acc.add(term);
                // odometer over p_2..p_{n-1}
                let mut k = m - 1;
                loop {
                    if k == 0 {
                        return Ok(acc.value());
                    }
                    if ps[k] < p {
                        ps[k] += 1;
                        break;
                    }
                    ps[k] = -p;
                    k -= 1;
                }
            }
        })
        .collect();
    let mut total = Compensated::default();
    for part in partials {
        total.add(part?);
    }
    Ok(total.value() * varpi)
}
