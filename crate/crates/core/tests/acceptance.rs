//! End-to-end acceptance run: one PASS/FAIL line per criterion, each under
//! its own time limit. Exits non-zero if any criterion fails.

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use hiveforge_core::characters::{decompose_product_with, verify_alternative_r5_forms, r5_forms, CharacterTable, DEFAULT_TERM_BUDGET};
use hiveforge_core::oblade::{
    count_fillings, count_fillings_with, enumerate_fillings, is_degenerate, kostant_vector_for, Direction,
};
use hiveforge_core::rpoly::{g2_combo, kappa_sets, local_average_volume, r7_denominator, r_coefficients, series_r, verify_r7};
use hiveforge_core::stretch::{horn_volume, stretch_polynomial};
use hiveforge_core::tensor::{kostka, kostka_bound, kostka_sequence, tensor_decompose};
use hiveforge_core::{BranchingTriple, LieType, RootSystem, SearchConfig, Series, Weight, Which};
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

type Check = Result<(), String>;

/// `(name, check, time limit in seconds)`
type Criterion = (&'static str, fn() -> Check, u64);

/// `(ν, C(s) for s = 0..=7, monomial coefficients)`
type RhoCase = (&'static [i64], [u64; 8], [(i64, i64); 7]);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        let ok: bool = $cond;
        if !ok {
            return Err(format!($($msg)+));
        }
    };
}

fn w(c: &[i64]) -> Weight {
    Weight(c.to_vec())
}

fn q(a: i64, b: i64) -> BigRational {
    BigRational::new(a.into(), b.into())
}

fn qs(v: &[(i64, i64)]) -> Vec<BigRational> {
    v.iter().map(|&(a, b)| q(a, b)).collect()
}

fn big(v: &[u64]) -> Vec<BigUint> {
    v.iter().map(|&x| BigUint::from(x)).collect()
}

fn lambda() -> Weight {
    w(&[3, 4, 3, 5])
}

fn mu() -> Weight {
    w(&[4, 3, 5, 4])
}

fn triple(nu: &[i64]) -> BranchingTriple {
    BranchingTriple::new(5, lambda(), mu(), w(nu)).unwrap()
}

fn lr_golden() -> Check {
    for (nu, expected) in [([2, 2, 4, 2], 371u32), ([7, 9, 8, 3], 3), ([3, 4, 4, 7], 1427)] {
        let c = count_fillings(&triple(&nu)).map_err(|e| e.to_string())?;
        ensure!(c == BigUint::from(expected), "ν={nu:?}: {c} instead of {expected}");
    }
    Ok(())
}

fn degeneracy() -> Check {
    let fs = enumerate_fillings(&triple(&[2, 2, 4, 2])).map_err(|e| e.to_string())?;
    ensure!(fs.len() == 371, "{} fillings", fs.len());
    let positive = fs.iter().filter(|f| !is_degenerate(f)).count();
    ensure!(positive == 1, "{positive} fillings with all inner edges positive");
    Ok(())
}

fn full_decomposition() -> Check {
    let d = tensor_decompose(5, &lambda(), &mu()).map_err(|e| e.to_string())?;
    let rs = RootSystem::su(5).unwrap();
    ensure!(d.len() == 5223, "{} distinct ν", d.len());
    ensure!(d.min_multiplicity() == Some(&BigUint::from(1u32)), "min {:?}", d.min_multiplicity());
    ensure!(d.max_multiplicity() == Some(&BigUint::from(1657u32)), "max {:?}", d.max_multiplicity());
    ensure!(d.total_multiplicity() == BigUint::from(1_043_606u32), "total {}", d.total_multiplicity());
    let (dl, dm) = (rs.dimension(&lambda()).unwrap(), rs.dimension(&mu()).unwrap());
    ensure!(dl == BigInt::from(5_001_750) && dm == BigInt::from(9_281_250), "dimensions {dl}, {dm}");
    let sum = d.dimension_sum(&rs).map_err(|e| e.to_string())?;
    ensure!(sum == dl * dm, "dimension sum {sum}");
    Ok(())
}

fn kostka_numbers() -> Check {
    let delta = w(&[0, 3, 0, 1]);
    let seq = kostka_sequence(5, &lambda(), &delta, 10).map_err(|e| e.to_string())?;
    let expected = big(&[0, 103, 685, 1198, 1424, 1468, 1473, 1473, 1473, 1473]);
    ensure!(seq == expected, "sequence {seq:?}");
    ensure!(kostka_bound(&lambda()) + 1 == 16, "stabilisation point {}", kostka_bound(&lambda()) + 1);
    let k = kostka(5, &lambda(), &delta).map_err(|e| e.to_string())?;
    ensure!(k == BigUint::from(1473u32), "K = {k}");
    Ok(())
}

fn stretching() -> Check {
    let p = stretch_polynomial(&triple(&[2, 2, 4, 2])).map_err(|e| e.to_string())?;
    ensure!(p.guarded, "guard sample missing");
    let samples = big(&[371, 7983, 60849, 277394, 930849, 2548764, 6037641]);
    ensure!(p.samples[1..=7] == samples[..], "samples {:?}", p.samples);
    let coeffs = qs(&[(1, 1), (167, 20), (2407, 72), (1921, 24), (8401, 72), (11593, 120), (314, 9)]);
    ensure!(p.coeffs == coeffs, "coefficients {:?}", p.coeffs);
    let at100 = p.evaluate_integer(100).map_err(|e| e.to_string())?;
    ensure!(at100 == BigUint::from(35_866_720_654_586u64), "C(100) = {at100}");
    Ok(())
}

fn rho_scaled_volumes() -> Check {
    let rho = w(&[1, 1, 1, 1]);
    let cases: [RhoCase; 3] = [
        (
            &[1, 1, 1, 1],
            [1, 16, 126, 616, 2200, 6336, 15631, 34336],
            [(1, 1), (13, 4), (37, 8), (4, 1), (9, 4), (3, 4), (1, 8)],
        ),
        (
            &[2, 1, 1, 2],
            [1, 12, 74, 304, 959, 2520, 5796, 12048],
            [(1, 1), (89, 30), (34, 9), (11, 4), (43, 36), (17, 60), (1, 36)],
        ),
        (
            &[1, 2, 2, 1],
            [1, 8, 35, 112, 294, 672, 1386, 2640],
            [(1, 1), (157, 60), (949, 360), (4, 3), (13, 36), (1, 20), (1, 360)],
        ),
    ];
    for (nu, seq, coeffs) in cases {
        let t = BranchingTriple::new(5, rho.clone(), rho.clone(), w(nu)).unwrap();
        let p = stretch_polynomial(&t).map_err(|e| e.to_string())?;
        ensure!(p.samples == big(&seq), "ν={nu:?}: samples {:?}", p.samples);
        ensure!(p.coeffs == qs(&coeffs), "ν={nu:?}: coefficients {:?}", p.coeffs);
    }
    Ok(())
}

fn r5() -> Check {
    let lt = LieType::su(5).unwrap();
    let r = r_coefficients(lt, Which::R, &SearchConfig::default()).map_err(|e| e.to_string())?;
    let expected = [(w(&[0, 0, 0, 0]), q(45, 360)), (w(&[1, 0, 0, 1]), q(10, 360)), (w(&[0, 1, 1, 0]), q(1, 360))];
    ensure!(r.coeffs.len() == 3, "support {:?}", r.coeffs.keys().collect::<Vec<_>>());
    for (k, c) in expected {
        ensure!(r.coefficient(&k) == c, "r_{k} = {}", r.coefficient(&k));
    }
    let rs = RootSystem::su(5).unwrap();
    let dims: Vec<BigInt> = [w(&[0, 0, 0, 0]), w(&[1, 0, 0, 1]), w(&[0, 1, 1, 0])].iter().map(|k| rs.dimension(k).unwrap()).collect();
    ensure!(dims == [1, 24, 75].map(BigInt::from), "dimensions {dims:?}");
    let norm = r.normalization().map_err(|e| e.to_string())?;
    ensure!(norm.is_one(), "Σ r·dim = {norm}");
    Ok(())
}

fn r3_local_average() -> Check {
    let lt = LieType::su(3).unwrap();
    let r3 = r_coefficients(lt, Which::R, &SearchConfig::default()).map_err(|e| e.to_string())?;
    ensure!(r3.coeffs.len() == 1 && r3.coefficient(&w(&[0, 0])).is_one(), "R3 = {:?}", r3.coeffs);
    let mut rng = StdRng::seed_from_u64(3);
    let mut done = 0;
    while done < 5 {
        let l = w(&[rng.gen_range(0..6), rng.gen_range(0..6)]);
        let m = w(&[rng.gen_range(0..6), rng.gen_range(0..6)]);
        let d = tensor_decompose(3, &l, &m).map_err(|e| e.to_string())?;
        let nus: Vec<&Weight> = d.entries.keys().collect();
        let nu = (*nus.choose(&mut rng).expect("nonempty decomposition")).clone();
        let t = BranchingTriple::new(3, l.clone(), m.clone(), nu.clone()).unwrap();
        let c = BigRational::from(BigInt::from(count_fillings(&t).map_err(|e| e.to_string())?));
        let avg = local_average_volume(3, &l, &m, &nu, &r3).map_err(|e| e.to_string())?;
        let j = horn_volume(&t.rho_shifted()).map_err(|e| e.to_string())?.value;
        ensure!(avg == c && j == c, "{l} {m} {nu}: average {avg}, C {c}, J {j}");
        done += 1;
    }
    Ok(())
}

fn parse_set(s: &str) -> BTreeSet<Weight> {
    s.split_whitespace()
        .map(|t| Weight(t.chars().map(|c| c.to_digit(10).unwrap() as i64).collect()))
        .collect()
}

fn kappa() -> Check {
    let listed: [(&str, &str, Option<&str>); 12] = [
        ("A1", "0", Some("1")),
        ("A2", "00", None),
        ("A3", "101 000", Some("010")),
        ("A4", "0110 1001 0000", None),
        (
            "A5",
            "10201 11011 00111 11100 20002 01002 20010 00200 01010 10001 00000",
            Some("00100 11000 00011 10101 02001 10020 01110"),
        ),
        (
            "A6",
            "011110 100210 020020 012001 101020 020101 101101 110011 000120 021000 102000 \
             000201 110100 001011 001100 200002 010002 200010 010010 100001 000000",
            None,
        ),
        ("D4", "0200 1011 0002 0020 2000 0100 0000", None),
        (
            "D5",
            "01200 02011 10111 11002 11020 03000 11100 00022 00102 00120 00200 20011 01011 \
             21000 02000 10002 10020 10100 00011 20000 01000 00000",
            None,
        ),
        ("G2", "02 10 01 00", None),
        ("B2", "10 00", Some("01")),
        ("B3", "000 100 010 200 002 110 102", Some("001 101 011")),
        ("C3", "020 101 200 010 000", None),
    ];
    for (t, k, k_hat) in listed {
        let sets = kappa_sets(t.parse().unwrap()).map_err(|e| e.to_string())?;
        let k = parse_set(k);
        ensure!(sets.k == k, "{t}: K = {:?}", sets.k);
        let k_hat = k_hat.map(parse_set).unwrap_or(k);
        ensure!(sets.k_hat == k_hat, "{t}: K̂ = {:?}", sets.k_hat);
    }
    for (t, ring, hat) in [
        ("F4", w(&[0, 1, 2, 0]), None),
        ("E6", w(&[0, 1, 2, 1, 0, 0]), None),
        ("E7", w(&[1, 0, 2, 1, 1, 0, 1]), Some(w(&[0, 1, 1, 2, 1, 0, 0]))),
        ("E8", w(&[0, 1, 1, 1, 2, 1, 0, 0]), None),
    ] {
        let sets = kappa_sets(t.parse().unwrap()).map_err(|e| e.to_string())?;
        ensure!(sets.rho_ring == ring, "{t}: ρ̊ = {}", sets.rho_ring);
        let hat = hat.unwrap_or(ring);
        ensure!(sets.rho_hat_ring.as_ref() == Some(&hat), "{t}: ρ̊̂ = {:?}", sets.rho_hat_ring);
    }
    for (s, min_rank) in [(Series::A, 1), (Series::B, 2), (Series::C, 2), (Series::D, 4)] {
        for r in min_rank..=16 {
            let lt = LieType::new(s, r).map_err(|e| e.to_string())?;
            let expected = match s {
                Series::A => r % 2 == 0,
                Series::B => false,
                Series::C => matches!(r % 4, 3 | 0),
                _ => matches!(r % 4, 0 | 1),
            };
            let equal = if r <= 9 {
                kappa_sets(lt).map_err(|e| e.to_string())?.equal
            } else {
                let rs = RootSystem::new(lt);
                rs.is_in_root_lattice(&rs.weyl_vector())
            };
            ensure!(equal == expected, "{lt}: R = R̂ is {equal}");
        }
    }
    for (t, expected) in [("E6", true), ("E7", false), ("E8", true), ("F4", true), ("G2", true)] {
        ensure!(kappa_sets(t.parse().unwrap()).map_err(|e| e.to_string())?.equal == expected, "{t}: equality flag");
    }
    Ok(())
}

fn r7() -> Check {
    let report = verify_r7().map_err(|e| e.to_string())?;
    ensure!(report.support_size == 21, "support size {}", report.support_size);
    ensure!(report.support_matches_kappa_set, "support differs from K(A6)");
    ensure!(report.conjugate_pairs_share_coefficients, "conjugate coefficients differ");
    ensure!(report.dimensions_match, "dimensions {:?}", report.dimensions);
    let listed: Vec<u64> = report.dimensions.iter().map(|d| d.2).collect();
    let expected = [1, 105840, 30870, 30870, 27000, 26460, 26460, 3528, 3528, 24500, 2646, 2646, 10240, 735, 2940, 2940, 540, 540, 784, 392, 48];
    ensure!(listed == expected, "listed dimensions {listed:?}");
    ensure!(report.normalization.is_one(), "Σ r·dim = {}", report.normalization);
    ensure!(r7_denominator() == BigInt::from(3u64 * 6_227_020_800), "denominator {}", r7_denominator());
    ensure!(report.passed(), "report {report:?}");
    Ok(())
}

fn g2() -> Check {
    let c = g2_combo();
    let rs = RootSystem::new(c.lie_type);
    let dims: Vec<BigInt> = c.coeffs.keys().map(|k| rs.dimension(k).unwrap()).collect();
    ensure!(dims == [1, 7, 27, 14].map(BigInt::from), "dimensions {dims:?}");
    let norm = c.normalization().map_err(|e| e.to_string())?;
    ensure!(norm.is_one(), "Σ r·dim = {norm}");
    Ok(())
}

fn alternative_forms() -> Check {
    let forms = r5_forms().map_err(|e| e.to_string())?;
    ensure!(forms.len() == 5, "{} forms", forms.len());
    ensure!(verify_alternative_r5_forms().map_err(|e| e.to_string())?, "forms differ");
    for (name, p) in &forms[1..] {
        ensure!(*p == forms[0].1, "{name} differs from the character form");
    }
    Ok(())
}

fn oracle_sweep() -> Check {
    let cfg = SearchConfig::sequential();
    for n in 2..=4usize {
        let table = CharacterTable::new(n);
        let rank = n as u32 - 1;
        let ws: Vec<Weight> = (0..4i64.pow(rank))
            .map(|i| Weight((0..rank).map(|k| (i / 4i64.pow(k)) % 4).collect()))
            .collect();
        for (a, l) in ws.iter().enumerate() {
            for m in &ws[a..] {
                let d = decompose_product_with(&table, l, m, DEFAULT_TERM_BUDGET).map_err(|e| e.to_string())?;
                for nu in &ws {
                    for (x, y) in [(l, m), (m, l)] {
                        let t = BranchingTriple::new(n, x.clone(), y.clone(), nu.clone()).unwrap();
                        let c = count_fillings_with(&t, &cfg).map_err(|e| e.to_string())?;
                        ensure!(c == d.multiplicity(nu), "SU({n}) {x} {y} {nu}: {c} vs {}", d.multiplicity(nu));
                    }
                }
            }
        }
    }
    Ok(())
}

fn series() -> Check {
    let mut rng = StdRng::seed_from_u64(14);
    for _ in 0..5 {
        let u = [rng.gen_range(0.2..1.6), rng.gen_range(0.2..1.6)];
        let v = series_r(3, &u, 400).map_err(|e| e.to_string())?;
        ensure!((v - 1.0).abs() < 1e-3, "SU(3) at {u:?}: {v}");
    }
    let r5 = r_coefficients(LieType::su(5).unwrap(), Which::R, &SearchConfig::default()).map_err(|e| e.to_string())?;
    let grid = [2, 4, 8, 16];
    for _ in 0..3 {
        let u: Vec<f64> = (0..4).map(|_| rng.gen_range(0.2..1.2)).collect();
        let exact = r5.evaluate_torus(&u).map_err(|e| e.to_string())?;
        let mut errors = Vec::new();
        for p in grid {
            errors.push((series_r(5, &u, p).map_err(|e| e.to_string())? - exact).abs());
        }
        println!("    SU(5) u={u:.3?} P={grid:?} errors={}", errors.iter().map(|e| format!("{e:.2e}")).collect::<Vec<_>>().join(" "));
        ensure!(errors.windows(2).all(|e| e[1] < e[0]), "SU(5) at {u:?}: errors {errors:?}");
        ensure!(errors[grid.len() - 1] < 1e-4, "SU(5) at {u:?}: final error {}", errors[grid.len() - 1]);
    }
    Ok(())
}

fn kostant_consistency() -> Check {
    let mut rng = StdRng::seed_from_u64(15);
    let mut checked = 0;
    while checked < 1000 {
        let n = rng.gen_range(3..=5usize);
        let rs = RootSystem::su(n).unwrap();
        let mut rand_weight = || Weight((0..n - 1).map(|_| rng.gen_range(0..4)).collect());
        let (l, m) = (rand_weight(), rand_weight());
        let d = tensor_decompose(n, &l, &m).map_err(|e| e.to_string())?;
        let nus: Vec<&Weight> = d.entries.keys().collect();
        let nu = (*nus.choose(&mut rng).expect("nonempty decomposition")).clone();
        let t = BranchingTriple::new(n, l, m, nu).unwrap();
        let mut fillings = enumerate_fillings(&t).map_err(|e| e.to_string())?;
        fillings.shuffle(&mut rng);
        for f in fillings.iter().take(20) {
            for dir in Direction::ALL {
                let k = kostant_vector_for(&t, dir).map_err(|e| e.to_string())?;
                let expected: Vec<i64> =
                    rs.simple_root_coords(&k).iter().map(|c| c.to_integer().to_i64().unwrap()).collect();
                ensure!(f.root_expansion(dir) == expected, "{t:?} {dir:?}: {:?} vs {expected:?}", f.root_expansion(dir));
            }
            checked += 1;
        }
    }
    Ok(())
}

fn main() {
    let criteria: [Criterion; 15] = [
        ("1 LR golden values", lr_golden, 5),
        ("2 degeneracy of the 371 fillings", degeneracy, 5),
        ("3 full decomposition", full_decomposition, 600),
        ("4 Kostka numbers", kostka_numbers, 300),
        ("5 stretching polynomial", stretching, 1800),
        ("6 rho-scaled volumes", rho_scaled_volumes, 60),
        ("7 R5 coefficients", r5, 120),
        ("8 R3 and local averages", r3_local_average, 60),
        ("9 kappa sets", kappa, 10),
        ("10 R7 verification", r7, 10),
        ("11 G2 normalization", g2, 1),
        ("12 alternative R5 forms", alternative_forms, 30),
        ("13 oracle sweep", oracle_sweep, 600),
        ("14 series convergence", series, 600),
        ("15 Kostant consistency", kostant_consistency, 60),
    ];
    let mut failed = 0;
    for (name, check, limit) in criteria {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(()) if elapsed > Duration::from_secs(limit) => Err(format!("took {elapsed:.2?}, limit {limit}s")),
            o => o,
        };
        match outcome {
            Ok(()) => println!("PASS  {name}  ({elapsed:.2?})"),
            Err(e) => {
                failed += 1;
                println!("FAIL  {name}  ({elapsed:.2?}): {e}");
            }
        }
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
