//! Random-code sampling, exact closed-form probabilities, exhaustive
//! censuses at tiny parameters, and seeded Monte Carlo estimation.
//!
//! The sampling model is uniform over the free blocks of a systematic
//! generator matrix: for a pivot row of scale p^b, every entry to the
//! right of its pivot block is p^b times a uniform residue mod p^(s-b),
//! and entries above a same-scale pivot are zero. Closed forms are exact
//! rationals under this model; Monte Carlo runs are reproducible from a
//! 64-bit seed with counter-derived per-trial streams.

use crate::bounds;
use crate::code::LinearCode;
use crate::error::{Error, Result};
use crate::matrix::GeneratorMatrix;
use crate::ring::Modulus;
use crate::weights::{self, Limits};
use num::{BigInt, BigRational, One, ToPrimitive};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

fn big_ratio(num: u64, den: u64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

fn pow_ratio(base: BigRational, exp: usize) -> BigRational {
    let mut out = BigRational::one();
    for _ in 0..exp {
        out *= base.clone();
    }
    out
}

/// P(every tail entry of a free rank-K systematic generator is a unit)
/// = (1 - 1/p)^(K (n - K)).
pub fn prob_ell_zero(p: u64, k_rank: usize, n: usize) -> Result<BigRational> {
    if k_rank > n {
        return Err(Error::InvalidParameter("rank exceeds length".into()));
    }
    Ok(pow_ratio(big_ratio(p - 1, p), k_rank * (n - k_rank)))
}

/// Probability that a systematic generator matrix realizes the maximal
/// column Lee weight in every one of its last n - K columns:
/// 2^(n-K) * prod_i (p^(i+1) / (p^s (p - 1)))^(mu_i).
///
/// The per-column factor counts a designated valuation-i entry hitting
/// one of the two Lee-weight maxima of the ideal of p^i, so the product
/// is exact only for odd p.
pub fn prob_column_optimal(
    p: u64,
    s: u32,
    k_rank: usize,
    n: usize,
    mu: &[usize],
) -> Result<BigRational> {
    if mu.len() != s as usize {
        return Err(Error::InvalidParameter(format!(
            "mu must have {s} entries, one per valuation below s"
        )));
    }
    if mu.iter().sum::<usize>() != n - k_rank {
        return Err(Error::InvalidParameter(
            "mu must account for all of the last n - K columns".into(),
        ));
    }
    let p_s = p.pow(s);
    let mut out = pow_ratio(big_ratio(2, 1), n - k_rank);
    for (i, &mu_i) in mu.iter().enumerate() {
        let factor = big_ratio(p.pow(i as u32 + 1), p_s * (p - 1));
        out *= pow_ratio(factor, mu_i);
    }
    Ok(out)
}

/// Probability that the tail block A of a free systematic generator has
/// its designated row entirely of valuation ell_tilde while every other
/// row keeps its first tail entry in the valuation band [1, ell_tilde]
/// and the rest at exactly ell_tilde:
/// (1/p^l - 1/p^(l+1))^((n-K-1)K + 1) * (1/p - 1/p^(l+1))^(K-1).
pub fn prob_full_row(
    p: u64,
    s: u32,
    k_rank: usize,
    n: usize,
    ell_tilde: u32,
) -> Result<BigRational> {
    if ell_tilde == 0 || ell_tilde >= s {
        return Err(Error::InvalidParameter(
            "ell_tilde must satisfy 0 < ell_tilde < s".into(),
        ));
    }
    if n <= k_rank || k_rank == 0 {
        return Err(Error::InvalidParameter("requires 0 < K < n".into()));
    }
    let exact = big_ratio(1, p.pow(ell_tilde)) - big_ratio(1, p.pow(ell_tilde + 1));
    let band = big_ratio(1, p) - big_ratio(1, p.pow(ell_tilde + 1));
    Ok(pow_ratio(exact, (n - k_rank - 1) * k_rank + 1) * pow_ratio(band, k_rank - 1))
}

/// Draws a code with the given subtype: pivots p^i in block order, free
/// entries uniform in the row's scale, zeros above same-scale pivots.
pub fn sample_systematic_code<R: Rng + ?Sized>(
    modulus: Modulus,
    n: usize,
    subtype: &[usize],
    rng: &mut R,
) -> Result<LinearCode> {
    let s = modulus.s() as usize;
    if subtype.len() != s {
        return Err(Error::InvalidSubtype(format!(
            "expected {s} block multiplicities, got {}",
            subtype.len()
        )));
    }
    let k_rank: usize = subtype.iter().sum();
    if k_rank > n {
        return Err(Error::InvalidSubtype(format!(
            "rank {k_rank} exceeds length {n}"
        )));
    }
    if k_rank == 0 {
        return Ok(LinearCode::zero(modulus, n));
    }
    let pivot_vals: Vec<u32> = subtype
        .iter()
        .enumerate()
        .flat_map(|(i, &k_i)| std::iter::repeat(i as u32).take(k_i))
        .collect();
    let mut rows = vec![vec![0i64; n]; k_rank];
    for (t, &v) in pivot_vals.iter().enumerate() {
        let scale = modulus.p_pow(v) as i64;
        let range = modulus.p_pow(modulus.s() - v) as i64;
        rows[t][t] = scale;
        for c in t + 1..n {
            let free = c >= k_rank || pivot_vals[c] > v;
            if free {
                rows[t][c] = scale * rng.random_range(0..range);
            }
        }
    }
    let g = GeneratorMatrix::from_rows(modulus, n, &rows)?;
    LinearCode::from_generators(&g)
}

/// Draws a code spanned by `rows` uniform random vectors; None when the
/// draw spans only zero.
pub fn sample_uniform_code<R: Rng + ?Sized>(
    modulus: Modulus,
    n: usize,
    rows: usize,
    rng: &mut R,
) -> Option<LinearCode> {
    let raw: Vec<Vec<i64>> = (0..rows)
        .map(|_| (0..n).map(|_| rng.random_range(0..modulus.q() as i64)).collect())
        .collect();
    let g = GeneratorMatrix::from_rows(modulus, n, &raw).ok()?;
    LinearCode::from_generators(&g).ok()
}

/// Which bound an attainment event or census tests.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum AttainBound {
    /// Equality in the inequality form floor((d-1)/M) = n - k.
    Shiromoto,
    Join,
    ColumnCancelling,
}

impl AttainBound {
    pub fn name(&self) -> &'static str {
        match self {
            AttainBound::Shiromoto => "shiromoto",
            AttainBound::Join => "join",
            AttainBound::ColumnCancelling => "column_cancelling",
        }
    }

    fn attained(&self, code: &LinearCode, d: u64) -> bool {
        match self {
            AttainBound::Shiromoto => bounds::shiromoto_attained(code, d),
            AttainBound::Join => bounds::bound_join(code).value == Some(d),
            AttainBound::ColumnCancelling => bounds::bound_column_cancelling(code).value == Some(d),
        }
    }
}

/// Events with exact or experimental probabilities under the systematic
/// sampling model.
#[derive(Clone, Debug, Serialize)]
pub enum Event {
    /// Every tail entry of a free rank-K code is a unit.
    EllZero { p: u64, s: u32, k_rank: usize, n: usize },
    /// `rows` uniform vectors span a free code of full rank.
    Free { p: u64, s: u32, rows: usize, n: usize },
    /// The literal counting event behind [`prob_full_row`].
    FullZeroRow {
        p: u64,
        s: u32,
        k_rank: usize,
        n: usize,
        ell_tilde: u32,
    },
    /// A sampled code of the given subtype attains the named bound.
    BoundAttainment {
        p: u64,
        s: u32,
        n: usize,
        subtype: Vec<usize>,
        bound: AttainBound,
    },
}

impl Event {
    fn sample<R: Rng + ?Sized>(&self, rng: &mut R, limits: &Limits) -> Result<bool> {
        match self {
            Event::EllZero { p, s, k_rank, n } => {
                let modulus = Modulus::new(*p, *s)?;
                let mut subtype = vec![0usize; *s as usize];
                subtype[0] = *k_rank;
                let code = sample_systematic_code(modulus, *n, &subtype, rng)?;
                Ok(bounds::filtration_profile(&code)?.ell == 0)
            }
            Event::Free { p, s, rows, n } => {
                let modulus = Modulus::new(*p, *s)?;
                Ok(match sample_uniform_code(modulus, *n, *rows, rng) {
                    Some(code) => code.is_free() && code.rank() == *rows,
                    None => false,
                })
            }
            Event::FullZeroRow {
                p,
                s,
                k_rank,
                n,
                ell_tilde,
            } => {
                let modulus = Modulus::new(*p, *s)?;
                if *ell_tilde == 0 || *ell_tilde >= *s || *n <= *k_rank {
                    return Err(Error::InvalidParameter(
                        "full-zero-row event needs 0 < ell_tilde < s and K < n".into(),
                    ));
                }
                let mut subtype = vec![0usize; *s as usize];
                subtype[0] = *k_rank;
                let code = sample_systematic_code(modulus, *n, &subtype, rng)?;
                let g = code.generator_matrix();
                let val = |r: usize, c: usize| modulus.valuation(g.entry(r, c));
                let designated_exact =
                    (*k_rank..*n).all(|c| val(0, c) == *ell_tilde);
                let others = (1..*k_rank).all(|r| {
                    let band = val(r, *k_rank);
                    (1..=*ell_tilde).contains(&band)
                        && (*k_rank + 1..*n).all(|c| val(r, c) == *ell_tilde)
                });
                Ok(designated_exact && others)
            }
            Event::BoundAttainment {
                p,
                s,
                n,
                subtype,
                bound,
            } => {
                let modulus = Modulus::new(*p, *s)?;
                let code = sample_systematic_code(modulus, *n, subtype, rng)?;
                let d = weights::min_lee_distance(&code, limits)?;
                Ok(bound.attained(&code, d))
            }
        }
    }

    /// Exact probability where a closed form exists.
    pub fn exact_probability(&self) -> Option<BigRational> {
        match self {
            Event::EllZero { p, k_rank, n, .. } => prob_ell_zero(*p, *k_rank, *n).ok(),
            Event::FullZeroRow {
                p,
                s,
                k_rank,
                n,
                ell_tilde,
            } => prob_full_row(*p, *s, *k_rank, *n, *ell_tilde).ok(),
            _ => None,
        }
    }
}

/// An empirical frequency with its binomial standard error.
#[derive(Clone, Debug, Serialize)]
pub struct MonteCarloEstimate {
    pub trials: u64,
    pub successes: u64,
    pub estimate: f64,
    pub stderr: f64,
    pub seed: u64,
    /// Exact probability when the event has a closed form, as "num/den".
    pub exact: Option<String>,
}

fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    let mut z = x;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Per-trial generator: a counter-derived ChaCha stream, so trials are
/// independent and the whole run is reproducible from one seed.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(splitmix64(seed ^ splitmix64(trial)))
}

/// Runs `trials` independent samples of the event in parallel.
pub fn monte_carlo_probability(
    event: &Event,
    trials: u64,
    seed: u64,
    limits: &Limits,
) -> Result<MonteCarloEstimate> {
    if trials == 0 {
        return Err(Error::InvalidParameter("trials must be at least 1".into()));
    }
    let successes = (0..trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = trial_rng(seed, t);
            event.sample(&mut rng, limits).map(u64::from)
        })
        .try_reduce(|| 0u64, |a, b| Ok(a + b))?;
    let estimate = successes as f64 / trials as f64;
    let stderr = (estimate * (1.0 - estimate) / trials as f64).sqrt();
    Ok(MonteCarloEstimate {
        trials,
        successes,
        estimate,
        stderr,
        seed,
        exact: event.exact_probability().map(|r| r.to_string()),
    })
}

/// Outcome of an exhaustive census over all systematic generator choices
/// of one subtype.
#[derive(Clone, Debug, Serialize)]
pub struct Census {
    pub bound: &'static str,
    pub total: u128,
    pub attaining: u64,
    /// Up to 32 attaining generator matrices, in enumeration order.
    pub examples: Vec<Vec<Vec<u64>>>,
}

/// Enumerates every systematic generator matrix of the subtype, computes
/// the exact minimum Lee distance of each code, and counts those
/// attaining the named bound.
pub fn census_optimal_codes(
    modulus: Modulus,
    n: usize,
    subtype: &[usize],
    bound: AttainBound,
    limits: &Limits,
) -> Result<Census> {
    let s = modulus.s() as usize;
    if subtype.len() != s {
        return Err(Error::InvalidSubtype(format!(
            "expected {s} block multiplicities, got {}",
            subtype.len()
        )));
    }
    let k_rank: usize = subtype.iter().sum();
    if k_rank == 0 || k_rank > n {
        return Err(Error::InvalidSubtype("rank must satisfy 1 <= K <= n".into()));
    }
    let pivot_vals: Vec<u32> = subtype
        .iter()
        .enumerate()
        .flat_map(|(i, &k_i)| std::iter::repeat(i as u32).take(k_i))
        .collect();
    // Free slots and their ranges.
    let mut slots: Vec<(usize, usize, u64)> = Vec::new();
    for (t, &v) in pivot_vals.iter().enumerate() {
        for c in t + 1..n {
            if c >= k_rank || pivot_vals[c] > v {
                slots.push((t, c, modulus.p_pow(modulus.s() - v)));
            }
        }
    }
    let total: u128 = slots
        .iter()
        .map(|&(_, _, range)| range as u128)
        .product();
    if total > limits.enumeration_cap {
        return Err(Error::EnumerationCapExceeded {
            count: total,
            cap: limits.enumeration_cap,
        });
    }

    let mut attaining = 0u64;
    let mut examples = Vec::new();
    let mut values = vec![0u64; slots.len()];
    loop {
        let mut rows = vec![vec![0i64; n]; k_rank];
        for (t, &v) in pivot_vals.iter().enumerate() {
            rows[t][t] = modulus.p_pow(v) as i64;
        }
        for (&(t, c, _), &u) in slots.iter().zip(&values) {
            rows[t][c] = (modulus.p_pow(pivot_vals[t]) * u) as i64;
        }
        let g = GeneratorMatrix::from_rows(modulus, n, &rows)?;
        let code = LinearCode::from_generators(&g)?;
        let d = weights::min_lee_distance(&code, limits)?;
        if bound.attained(&code, d) {
            attaining += 1;
            if examples.len() < 32 {
                examples.push(g.rows().to_vec());
            }
        }
        // Next assignment.
        let mut i = slots.len();
        loop {
            if i == 0 {
                return Ok(Census {
                    bound: bound.name(),
                    total,
                    attaining,
                    examples,
                });
            }
            i -= 1;
            values[i] += 1;
            if values[i] < slots[i].2 {
                break;
            }
            values[i] = 0;
        }
    }
}

/// Number of elements of the ideal of p^i attaining its maximal Lee
/// weight M_i (two for odd p^(s-i), one for even).
pub fn max_lee_count_in_ideal(modulus: Modulus, i: u32) -> u64 {
    let m_i = modulus.ideal_max_lee_weight(i).expect("i <= s");
    let step = modulus.p_pow(i);
    (0..modulus.p_pow(modulus.s() - i))
        .filter(|&u| modulus.lee_weight_of(u * step) == m_i)
        .count() as u64
}

/// Exhaustive per-column factor behind [`prob_column_optimal`]: among
/// columns whose designated entry has valuation exactly i (the other
/// entries are unconstrained and cancel out), the fraction whose
/// designated entry attains the maximal Lee weight of the ideal.
/// Returns (attaining count, valuation-exactly-i count).
pub fn census_column_optimal_factor(modulus: Modulus, i: u32) -> (u64, u64) {
    let s = modulus.s();
    let exact_count = modulus.p_pow(s - i) - modulus.p_pow(s - i - 1);
    (max_lee_count_in_ideal(modulus, i), exact_count)
}

/// Convergence helper: |estimate - exact| measured in standard errors.
pub fn sigma_distance(estimate: &MonteCarloEstimate, exact: &BigRational) -> f64 {
    let exact_f = exact.to_f64().expect("probability fits f64");
    if estimate.stderr == 0.0 {
        if (estimate.estimate - exact_f).abs() < f64::EPSILON {
            0.0
        } else {
            f64::INFINITY
        }
    } else {
        (estimate.estimate - exact_f).abs() / estimate.stderr
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num::FromPrimitive;

    fn lim() -> Limits {
        Limits::default()
    }

    #[test]
    fn ell_zero_closed_form() {
        let p = prob_ell_zero(3, 3, 6).unwrap();
        assert_eq!(p, big_ratio(512, 19683));
        // K = n: empty product.
        assert_eq!(prob_ell_zero(5, 4, 4).unwrap(), BigRational::one());
        // Monotone in p.
        let smaller = prob_ell_zero(3, 2, 4).unwrap();
        let larger = prob_ell_zero(5, 2, 4).unwrap();
        assert!(smaller < larger);
        assert!(prob_ell_zero(3, 5, 4).is_err());
    }

    #[test]
    fn column_optimal_closed_form() {
        // s = 1: the factor p/(p(p-1)) halves against 2^(n-K) exactly at p = 3.
        let p = prob_column_optimal(3, 1, 2, 4, &[2]).unwrap();
        assert_eq!(p, BigRational::one());

        let p = prob_column_optimal(3, 2, 3, 4, &[0, 1]).unwrap();
        assert_eq!(p, BigRational::one());

        // Any factor with p >= 5 drops below one.
        let p = prob_column_optimal(5, 2, 2, 3, &[1, 0]).unwrap();
        assert!(p < BigRational::one());

        assert!(prob_column_optimal(3, 2, 2, 4, &[1, 0]).is_err());
    }

    #[test]
    fn column_optimal_census_matches_factors() {
        // The census fraction equals the closed-form per-column factor
        // 2 p^(i+1) / (p^s (p-1)) for odd p.
        for (p, s) in [(3u64, 2u32), (5, 2), (3, 3), (7, 1)] {
            let modulus = Modulus::new(p, s).unwrap();
            for i in 0..s {
                let (hits, total) = census_column_optimal_factor(modulus, i);
                let formula = big_ratio(2 * p.pow(i + 1), p.pow(s) * (p - 1));
                assert_eq!(big_ratio(hits, total), formula, "factor mismatch at i={i}");
            }
        }
        // The printed factor assumes two maximal-weight elements, which
        // fails for p = 2 where the maximum is unique.
        let z8 = Modulus::new(2, 3).unwrap();
        let (hits, total) = census_column_optimal_factor(z8, 0);
        assert_ne!(big_ratio(hits, total), big_ratio(2 * 2, 8));
    }

    #[test]
    fn full_row_closed_form() {
        let p = prob_full_row(3, 2, 2, 3, 1).unwrap();
        assert_eq!(p, big_ratio(4, 81));
        // K = 1 collapses the band factor, leaving (n-K-1)K + 1 = 2 exact
        // factors.
        let p = prob_full_row(3, 2, 1, 3, 1).unwrap();
        assert_eq!(p, pow_ratio(big_ratio(2, 9), 2));
        assert!(prob_full_row(3, 2, 2, 3, 0).is_err());
        assert!(prob_full_row(3, 2, 2, 3, 2).is_err());
    }

    #[test]
    fn full_row_census_matches_closed_form() {
        // Exhaust all A blocks of a free rank-2 code of length 3 over Z/9:
        // a single tail column, 81 assignments.
        let modulus = Modulus::new(3, 2).unwrap();
        let mut hits = 0u64;
        for a in 0..9u64 {
            for b in 0..9u64 {
                let exact = modulus.valuation(a) == 1;
                let band = (1..=1).contains(&modulus.valuation(b));
                if exact && band {
                    hits += 1;
                }
            }
        }
        let expect = prob_full_row(3, 2, 2, 3, 1).unwrap();
        assert_eq!(big_ratio(hits, 81), expect);
    }

    #[test]
    fn sampling_is_deterministic_and_shaped() {
        let modulus = Modulus::new(3, 2).unwrap();
        let mut rng1 = trial_rng(99, 0);
        let mut rng2 = trial_rng(99, 0);
        let a = sample_systematic_code(modulus, 5, &[2, 1], &mut rng1).unwrap();
        let b = sample_systematic_code(modulus, 5, &[2, 1], &mut rng2).unwrap();
        assert_eq!(a.generator_matrix().rows(), b.generator_matrix().rows());
        assert_eq!(a.subtype(), vec![2, 1]);
        assert_eq!(a.rank(), 3);

        // Full-space subtype.
        let full = sample_systematic_code(modulus, 3, &[3, 0], &mut rng1).unwrap();
        assert_eq!(full.codeword_count(), 9u128.pow(3));

        assert!(sample_systematic_code(modulus, 2, &[2, 1], &mut rng1).is_err());
        assert!(sample_systematic_code(modulus, 2, &[1], &mut rng1).is_err());
    }

    #[test]
    fn monte_carlo_ell_zero_converges() {
        let event = Event::EllZero {
            p: 3,
            s: 2,
            k_rank: 3,
            n: 6,
        };
        let run = monte_carlo_probability(&event, 20_000, 7, &lim()).unwrap();
        let exact = prob_ell_zero(3, 3, 6).unwrap();
        assert!(sigma_distance(&run, &exact) <= 4.0, "estimate too far: {run:?}");
        // Reproducible bit for bit.
        let again = monte_carlo_probability(&event, 20_000, 7, &lim()).unwrap();
        assert_eq!(run.successes, again.successes);
    }

    #[test]
    fn monte_carlo_validates_trials() {
        let event = Event::EllZero {
            p: 3,
            s: 2,
            k_rank: 2,
            n: 4,
        };
        assert!(monte_carlo_probability(&event, 0, 1, &lim()).is_err());
        let one = monte_carlo_probability(&event, 1, 1, &lim()).unwrap();
        assert!(one.estimate == 0.0 || one.estimate == 1.0);
    }

    #[test]
    fn shiromoto_census_finds_only_the_known_class() {
        let modulus = Modulus::new(5, 1).unwrap();
        let census =
            census_optimal_codes(modulus, 2, &[1], AttainBound::Shiromoto, &lim()).unwrap();
        assert_eq!(census.total, 5);
        assert_eq!(census.attaining, 2);
        assert_eq!(
            census.examples,
            vec![vec![vec![1, 2]], vec![vec![1, 3]]]
        );
    }

    #[test]
    fn join_census_counts_max_weight_tails() {
        let modulus = Modulus::new(3, 2).unwrap();
        let census = census_optimal_codes(modulus, 4, &[0, 3], AttainBound::Join, &lim()).unwrap();
        assert_eq!(census.total, 27);
        // The tail entries must all have Lee weight 3: two choices each.
        assert_eq!(census.attaining, 8);
        for example in &census.examples {
            for row in example {
                assert_eq!(modulus.lee_weight_of(row[3]), 3);
            }
        }
    }

    #[test]
    fn empty_census_is_zero() {
        let modulus = Modulus::new(3, 2).unwrap();
        // Length equals rank: no free slots, a single all-pivot matrix.
        let census =
            census_optimal_codes(modulus, 2, &[2, 0], AttainBound::Join, &lim()).unwrap();
        assert_eq!(census.total, 1);
        assert!(census.attaining <= 1);
    }

    #[test]
    fn max_lee_counts() {
        let z9 = Modulus::new(3, 2).unwrap();
        assert_eq!(max_lee_count_in_ideal(z9, 0), 2); // 4 and 5
        assert_eq!(max_lee_count_in_ideal(z9, 1), 2); // 3 and 6
        let z8 = Modulus::new(2, 3).unwrap();
        assert_eq!(max_lee_count_in_ideal(z8, 0), 1); // only 4
    }

    #[test]
    fn sigma_distance_behaves() {
        let est = MonteCarloEstimate {
            trials: 100,
            successes: 50,
            estimate: 0.5,
            stderr: 0.05,
            seed: 0,
            exact: None,
        };
        let exact = BigRational::from_f64(0.6).unwrap();
        assert!((sigma_distance(&est, &exact) - 2.0).abs() < 1e-9);
    }
}
