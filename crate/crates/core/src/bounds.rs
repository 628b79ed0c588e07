//! Upper bounds on the minimum Lee (and Hamming) distance, as pure
//! functions of code statistics, reported with their intermediate
//! parameters so tables can be reproduced and audited.
//!
//! Bound values are exact integers; the case analysis of
//! [`bound_filtration_cases`] compares exact cross-multiplied integers,
//! never floats.

use crate::code::LinearCode;
use crate::error::{Error, Result};
use crate::ring::Modulus;
use crate::weights::{self, Limits};
use num::rational::Ratio;
use serde::Serialize;
use std::collections::BTreeMap;

/// Which distance a bound constrains.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Metric {
    Lee,
    Hamming,
}

/// A named bound value with an applicability flag and the intermediates
/// that went into it.
#[derive(Clone, Debug, Serialize)]
pub struct BoundReport {
    pub name: &'static str,
    pub metric: Metric,
    pub value: Option<u64>,
    pub applicable: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    pub params: BTreeMap<String, String>,
}

impl BoundReport {
    fn applicable(name: &'static str, metric: Metric, value: u64) -> Self {
        BoundReport {
            name,
            metric,
            value: Some(value),
            applicable: true,
            reason: None,
            params: BTreeMap::new(),
        }
    }

    fn not_applicable(name: &'static str, metric: Metric, reason: impl Into<String>) -> Self {
        BoundReport {
            name,
            metric,
            value: None,
            applicable: false,
            reason: Some(reason.into()),
            params: BTreeMap::new(),
        }
    }

    fn with(mut self, key: &str, value: impl ToString) -> Self {
        self.params.insert(key.to_string(), value.to_string());
        self
    }
}

fn zero_code_report(name: &'static str, metric: Metric) -> BoundReport {
    BoundReport::not_applicable(name, metric, "zero code")
}

fn ceil_ratio(r: Ratio<u64>) -> u64 {
    r.ceil().to_integer()
}

fn floor_ratio(r: Ratio<u64>) -> u64 {
    r.floor().to_integer()
}

/// d_H <= n - ceil(k) + 1 for a code of dimension k.
pub fn bound_hamming_singleton(code: &LinearCode) -> BoundReport {
    if code.is_zero_code() {
        return zero_code_report("hamming_singleton", Metric::Hamming);
    }
    let k = code.z_dimension();
    let value = code.n() as u64 - ceil_ratio(k) + 1;
    BoundReport::applicable("hamming_singleton", Metric::Hamming, value).with("k", k)
}

/// d_H <= n - K + 1 for a code of rank K.
pub fn bound_mdr(code: &LinearCode) -> BoundReport {
    if code.is_zero_code() {
        return zero_code_report("mdr", Metric::Hamming);
    }
    let value = (code.n() - code.rank()) as u64 + 1;
    BoundReport::applicable("mdr", Metric::Hamming, value).with("K", code.rank())
}

/// The largest d with floor((d-1)/M) <= n - k, namely M(n - ceil(k) + 1).
///
/// The report also carries two rearrangements seen in the literature,
/// M(n - floor(k) + 1) and M(n - floor(k)) + 1, which disagree with the
/// canonical value for integral k.
pub fn bound_shiromoto(code: &LinearCode) -> BoundReport {
    if code.is_zero_code() {
        return zero_code_report("shiromoto", Metric::Lee);
    }
    let m = code.modulus().max_lee_weight();
    let n = code.n() as u64;
    let k = code.z_dimension();
    let value = m * (n - ceil_ratio(k) + 1);
    BoundReport::applicable("shiromoto", Metric::Lee, value)
        .with("M", m)
        .with("k", k)
        .with("variant_loose", m * (n - floor_ratio(k) + 1))
        .with("variant_plus_one", m * (n - floor_ratio(k)) + 1)
}

/// Exact test of floor((d-1)/M) <= n - k with rational k.
pub fn shiromoto_inequality_holds(code: &LinearCode, d: u64) -> bool {
    let m = code.modulus().max_lee_weight();
    let k = code.z_dimension();
    let lhs = (d.saturating_sub(1)) / m;
    // lhs <= n - k  <=>  lhs * den <= n * den - num.
    lhs * k.denom() <= code.n() as u64 * k.denom() - k.numer()
}

/// Equality in the Shiromoto inequality: floor((d-1)/M) = n - k.
pub fn shiromoto_attained(code: &LinearCode, d: u64) -> bool {
    let m = code.modulus().max_lee_weight();
    let k = code.z_dimension();
    let lhs = (d.saturating_sub(1)) / m;
    lhs * k.denom() == code.n() as u64 * k.denom() - k.numer()
}

/// d_L <= M(n - k), applicable only when k is an integer with 1 < k < n.
pub fn bound_alderson(code: &LinearCode) -> BoundReport {
    if code.is_zero_code() {
        return zero_code_report("alderson_huntemann", Metric::Lee);
    }
    let k = code.z_dimension();
    if !k.is_integer() {
        return BoundReport::not_applicable(
            "alderson_huntemann",
            Metric::Lee,
            format!("dimension {k} is not an integer"),
        );
    }
    let ki = k.to_integer();
    if ki <= 1 || ki >= code.n() as u64 {
        return BoundReport::not_applicable(
            "alderson_huntemann",
            Metric::Lee,
            format!("dimension {ki} is not strictly between 1 and n"),
        );
    }
    let value = code.modulus().max_lee_weight() * (code.n() as u64 - ki);
    BoundReport::applicable("alderson_huntemann", Metric::Lee, value).with("k", ki)
}

/// Partial sums over the support subtype used by the puncturing bound:
/// A_j = sum over i >= j of n_i M_i and B_j = sum over i >= j of n_i,
/// for j in 1..=s (empty sums are zero).
fn puncturing_sums(code: &LinearCode) -> (Vec<u64>, Vec<u64>) {
    let modulus = code.modulus();
    let s = modulus.s() as usize;
    let nn = code.support_subtype();
    let mut a = vec![0u64; s + 1];
    let mut b = vec![0u64; s + 1];
    for j in (1..s).rev() {
        let m_j = modulus.ideal_max_lee_weight(j as u32).expect("j <= s");
        a[j] = a[j + 1] + nn[j] as u64 * m_j;
        b[j] = b[j + 1] + nn[j] as u64;
    }
    (a, b)
}

/// The puncturing inequality at a candidate distance d: with j the
/// smallest index in 1..=s such that A_j < d,
/// K <= n - B_j - floor((d - A_j - 1) / M_(j-1)).
pub fn puncturing_inequality_holds(code: &LinearCode, d: u64) -> bool {
    if d == 0 {
        return true;
    }
    let modulus = code.modulus();
    let (a, b) = puncturing_sums(code);
    let j = (1..=modulus.s() as usize)
        .find(|&j| a[j] < d)
        .expect("A_s = 0 is below every positive d");
    let m_prev = modulus.ideal_max_lee_weight(j as u32 - 1).expect("j - 1 < s");
    let punctured = b[j] + (d - a[j] - 1) / m_prev;
    code.rank() as u64 + punctured <= code.n() as u64
}

/// Largest d <= n*M consistent with the puncturing inequality. Requires a
/// non-degenerate code. The report records the index j realizing the
/// maximum together with A_j, B_j and M_(j-1).
pub fn bound_puncturing(code: &LinearCode) -> BoundReport {
    if code.is_zero_code() {
        return zero_code_report("puncturing", Metric::Lee);
    }
    if code.is_degenerate() {
        return BoundReport::not_applicable("puncturing", Metric::Lee, "degenerate code");
    }
    let modulus = code.modulus();
    let n = code.n() as u64;
    let k_rank = code.rank() as u64;
    let nm = n * modulus.max_lee_weight();
    let (a, b) = puncturing_sums(code);

    let mut best: Option<(u64, usize)> = None;
    for j in 1..=modulus.s() as usize {
        // d must fall in (A_j, A_(j-1)] to select this j (unbounded above
        // for j = 1), and satisfy d <= A_j + M_(j-1) * (n - B_j - K + 1).
        if n < b[j] + k_rank {
            continue;
        }
        let slack = n - b[j] - k_rank;
        let m_prev = modulus.ideal_max_lee_weight(j as u32 - 1).expect("j - 1 < s");
        let by_inequality = a[j] + m_prev * (slack + 1);
        let upper = if j == 1 { nm } else { a[j - 1].min(nm) };
        let candidate = by_inequality.min(upper);
        if candidate > a[j] && best.map_or(true, |(v, _)| candidate > v) {
            best = Some((candidate, j));
        }
    }
    match best {
        Some((value, j)) => BoundReport::applicable("puncturing", Metric::Lee, value)
            .with("j", j)
            .with("A_j", a[j])
            .with("B_j", b[j])
            .with("M_(j-1)", modulus.ideal_max_lee_weight(j as u32 - 1).expect("in range")),
        None => BoundReport::not_applicable("puncturing", Metric::Lee, "no feasible distance"),
    }
}

/// d_L <= M_(s-1) * (n - K + 1) for non-degenerate codes.
pub fn bound_join(code: &LinearCode) -> BoundReport {
    if code.is_zero_code() {
        return zero_code_report("join", Metric::Lee);
    }
    if code.is_degenerate() {
        return BoundReport::not_applicable("join", Metric::Lee, "degenerate code");
    }
    let modulus = code.modulus();
    let m_top = modulus.ideal_max_lee_weight(modulus.s() - 1).expect("s - 1 < s");
    let value = m_top * (code.n() - code.rank() + 1) as u64;
    BoundReport::applicable("join", Metric::Lee, value).with("M_(s-1)", m_top)
}

/// d_L <= wt_col(C) - K + 1 with the exact column Lee weight of the code.
/// When the search exceeds its budget the report is not applicable and
/// carries the non-certified upper bound found so far.
pub fn bound_column_exact(code: &LinearCode, limits: &Limits) -> BoundReport {
    if code.is_zero_code() {
        return zero_code_report("column_exact", Metric::Lee);
    }
    let k_rank = code.rank() as u64;
    match weights::column_lee_weight_code(code, limits) {
        Ok(w) => BoundReport::applicable("column_exact", Metric::Lee, w - k_rank + 1)
            .with("wt_col", w),
        Err(Error::SearchBudgetExceeded { best }) => {
            let mut report = BoundReport::not_applicable(
                "column_exact",
                Metric::Lee,
                "column-weight search budget exhausted",
            );
            if let Some(b) = best {
                report = report.with("non_certified_bound", b - k_rank + 1);
            }
            report
        }
        Err(e) => BoundReport::not_applicable("column_exact", Metric::Lee, e.to_string()),
    }
}

fn static_column_sum(code: &LinearCode) -> u64 {
    let modulus = code.modulus();
    let pivot_sum: u64 = code
        .subtype()
        .iter()
        .enumerate()
        .map(|(i, &k_i)| modulus.p_pow(i as u32) * k_i as u64)
        .sum();
    let tail_sum: u64 = code
        .mu_support_subtype()
        .iter()
        .enumerate()
        .map(|(i, &mu_i)| modulus.ideal_max_lee_weight(i as u32).expect("i <= s") * mu_i as u64)
        .sum();
    pivot_sum + tail_sum
}

/// d_L <= sum p^i k_i + sum mu_i M_i - K + 1, reading mu off the last
/// n - K columns of the reduced systematic form.
pub fn bound_column_static(code: &LinearCode) -> BoundReport {
    if code.is_zero_code() {
        return zero_code_report("column_static", Metric::Lee);
    }
    let value = static_column_sum(code) - code.rank() as u64 + 1;
    BoundReport::applicable("column_static", Metric::Lee, value)
        .with("mu", format!("{:?}", code.mu_support_subtype()))
}

/// The sharpened variant for odd p: the static sum minus
/// sum_{i < sigma} (k_0 + ... + k_i) floor(p/2) p^i + (k_sigma - 1) p^sigma.
pub fn bound_column_cancelling(code: &LinearCode) -> BoundReport {
    if code.is_zero_code() {
        return zero_code_report("column_cancelling", Metric::Lee);
    }
    let modulus = code.modulus();
    if modulus.p() == 2 {
        return BoundReport::not_applicable("column_cancelling", Metric::Lee, "requires odd p");
    }
    let sigma = code.sigma().expect("nonzero code") as usize;
    let subtype = code.subtype();
    let half_p = modulus.p() / 2;
    let mut correction: u64 = (subtype[sigma] as u64 - 1) * modulus.p_pow(sigma as u32);
    let mut prefix: u64 = 0;
    for (i, &k_i) in subtype.iter().enumerate().take(sigma) {
        prefix += k_i as u64;
        correction += prefix * half_p * modulus.p_pow(i as u32);
    }
    let total = static_column_sum(code) as i128 - correction as i128;
    if total < 1 {
        return BoundReport::not_applicable(
            "column_cancelling",
            Metric::Lee,
            "cancellation estimate exceeds the column-weight estimate",
        )
        .with("raw", total);
    }
    BoundReport::applicable("column_cancelling", Metric::Lee, total as u64)
        .with("sigma", sigma)
        .with("correction", correction)
}

/// Valuation statistics of one row of the non-pivot block A of the
/// filtration generator matrix (p^sigma I | A). `ell == s` marks an
/// all-zero row.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ProfileRow {
    /// Largest valuation in the row, with zero entries counted at the
    /// socle level s-1; the sentinel s marks an all-zero row.
    pub ell: u32,
    /// Number of entries with valuation at least `ell`.
    pub nprime: usize,
}

/// The parameter bundle read off (p^sigma I | A): per-row (ell_i, n'_i),
/// their maxima, the per-r table for the refined filtration bounds, and
/// N', the maximal per-row count of entries divisible by p.
#[derive(Clone, Debug, Serialize)]
pub struct FiltrationProfile {
    pub sigma: u32,
    pub rows: Vec<ProfileRow>,
    /// max_i ell_i (zero rows participate with the sentinel s).
    pub ell: u32,
    /// max n'_i over the rows achieving ell.
    pub nprime: usize,
    /// Entry t describes r = sigma + 1 + t: Some((ell^(r-1), n'^(r-1)))
    /// over rows with ell_i > s - r + sigma, or None when no row
    /// qualifies.
    pub per_r: Vec<Option<(u32, usize)>>,
    /// N': maximal per-row count of entries of valuation above sigma
    /// (the entries that become zero at the socle).
    pub nprime_big: usize,
}

impl FiltrationProfile {
    /// (ell^(r-1), n'^(r-1)) for r in sigma+1 ..= s.
    pub fn for_r(&self, r: u32) -> Option<(u32, usize)> {
        let t = r.checked_sub(self.sigma + 1)? as usize;
        self.per_r.get(t).copied().flatten()
    }
}

/// Reads the profile off the sigma-th filtration subcode brought to the
/// form (p^sigma I | A).
pub fn filtration_profile(code: &LinearCode) -> Result<FiltrationProfile> {
    if code.is_zero_code() {
        return Err(Error::ZeroCode);
    }
    let modulus = code.modulus();
    let s = modulus.s();
    let sigma = code.sigma().expect("nonzero code");
    let c_sigma = code.filtration_subcode(sigma)?;
    // All pivots of the filtration share the scale p^sigma, so reduction
    // clears everything above them and leaves exactly (p^sigma I | A).
    let reduced = c_sigma.reduced_generator_matrix();
    let k_rank = c_sigma.rank();
    let width = code.n() - k_rank;

    let mut rows = Vec::with_capacity(k_rank);
    let mut nprime_big = 0usize;
    for r in 0..k_rank {
        let vals: Vec<u32> = (k_rank..code.n())
            .map(|c| modulus.valuation(reduced.entry(r, c)))
            .collect();
        // A zero entry sits inside every proper ideal, so it registers at
        // the socle level s-1; only an all-zero row earns the sentinel s.
        let ell = if vals.iter().all(|&v| v == s) {
            s
        } else {
            vals.iter().map(|&v| v.min(s - 1)).max().expect("nonempty row")
        };
        let nprime = if ell == s {
            width
        } else {
            vals.iter().filter(|&&v| v >= ell).count()
        };
        // N' counts entries that vanish at the socle, i.e. valuation at
        // least sigma + 1; every A entry is divisible by p^sigma already.
        nprime_big = nprime_big.max(vals.iter().filter(|&&v| v > sigma).count());
        rows.push(ProfileRow { ell, nprime });
    }

    let ell = rows.iter().map(|r| r.ell).max().expect("rank >= 1");
    let nprime = rows
        .iter()
        .filter(|r| r.ell == ell)
        .map(|r| r.nprime)
        .max()
        .expect("some row attains ell");

    let per_r = (sigma + 1..=s)
        .map(|r| {
            let threshold = s - r + sigma;
            let qualifying: Vec<&ProfileRow> =
                rows.iter().filter(|row| row.ell > threshold).collect();
            let best_nprime = qualifying.iter().map(|row| row.nprime).max()?;
            let best_ell = qualifying
                .iter()
                .filter(|row| row.nprime == best_nprime)
                .map(|row| row.ell)
                .max()
                .expect("nonempty");
            Some((best_ell, best_nprime))
        })
        .collect();

    Ok(FiltrationProfile {
        sigma,
        rows,
        ell,
        nprime,
        per_r,
        nprime_big,
    })
}

/// d_L(C_(r-1)) <= p^(r-1) + (n - K - n'^(r-1)) M_(r-1), for r in
/// sigma+1 ..= s.
pub fn bound_filtration_rth(code: &LinearCode, r: u32) -> Result<BoundReport> {
    let modulus = code.modulus();
    let profile = filtration_profile(code)?;
    if r <= profile.sigma || r > modulus.s() {
        return Err(Error::IndexOutOfRange {
            index: r,
            max: modulus.s(),
        });
    }
    let nprime = profile.for_r(r).map(|(_, np)| np).unwrap_or(0);
    let slack = (code.n() - code.rank() - nprime) as u64;
    let m_prev = modulus.ideal_max_lee_weight(r - 1).expect("r - 1 < s");
    let value = modulus.p_pow(r - 1) + slack * m_prev;
    Ok(BoundReport::applicable("filtration_rth", Metric::Lee, value)
        .with("r", r)
        .with("nprime_r", nprime))
}

fn filtration_pair_value(
    modulus: Modulus,
    n: usize,
    k_rank: usize,
    sigma: u32,
    ell: u32,
    nprime: usize,
) -> u64 {
    let level = modulus.s() - ell + sigma;
    let m_level = modulus.ideal_max_lee_weight(level).expect("level <= s");
    modulus.p_pow(level) + (n - k_rank - nprime) as u64 * m_level
}

/// The minimum of the per-r filtration bounds, evaluated at the level
/// s - ell^(r-1) + sigma where the recorded zeros appear. Falls back to
/// p^sigma + (n - K) M_sigma when no row ever exceeds valuation sigma.
/// Ties prefer larger n', then larger ell.
pub fn bound_filtration_min(code: &LinearCode) -> BoundReport {
    if code.is_zero_code() {
        return zero_code_report("filtration_min", Metric::Lee);
    }
    let modulus = code.modulus();
    let profile = filtration_profile(code).expect("nonzero code");
    let n = code.n();
    let k_rank = code.rank();

    let mut best: Option<(u64, u32, usize, u32)> = None;
    for (t, entry) in profile.per_r.iter().enumerate() {
        let Some((ell, nprime)) = *entry else { continue };
        let r = profile.sigma + 1 + t as u32;
        let value = filtration_pair_value(modulus, n, k_rank, profile.sigma, ell, nprime);
        let better = match best {
            None => true,
            Some((bv, bell, bnp, _)) => {
                value < bv || (value == bv && (nprime > bnp || (nprime == bnp && ell > bell)))
            }
        };
        if better {
            best = Some((value, ell, nprime, r));
        }
    }
    match best {
        Some((value, ell, nprime, r)) => {
            BoundReport::applicable("filtration_min", Metric::Lee, value)
                .with("ell", ell)
                .with("nprime", nprime)
                .with("r", r)
                .with("sigma", profile.sigma)
        }
        None => {
            let m_sigma = modulus.ideal_max_lee_weight(profile.sigma).expect("sigma < s");
            let value = modulus.p_pow(profile.sigma) + (n - k_rank) as u64 * m_sigma;
            BoundReport::applicable("filtration_min", Metric::Lee, value)
                .with("sigma", profile.sigma)
                .with("fallback", true)
        }
    }
}

/// The single-pair filtration bound using ell = max ell_i and the largest
/// n' among the rows attaining it: p^(s-ell+sigma) + (n-K-n') M_(s-ell+sigma)
/// when ell exceeds sigma, and p^sigma + (n-K) M_sigma otherwise.
pub fn bound_filtration_simple(code: &LinearCode) -> BoundReport {
    if code.is_zero_code() {
        return zero_code_report("filtration_simple", Metric::Lee);
    }
    let modulus = code.modulus();
    let profile = filtration_profile(code).expect("nonzero code");
    let value = filtration_cell(
        modulus,
        code.n(),
        code.rank(),
        profile.sigma,
        profile.ell,
        profile.nprime,
    );
    BoundReport::applicable("filtration_simple", Metric::Lee, value)
        .with("ell", profile.ell)
        .with("nprime", profile.nprime)
        .with("sigma", profile.sigma)
}

/// Pure-parameter form of the simple filtration bound, also used to
/// reproduce comparison tables cell by cell.
pub fn filtration_cell(
    modulus: Modulus,
    n: usize,
    k_rank: usize,
    sigma: u32,
    ell: u32,
    nprime: usize,
) -> u64 {
    if ell > sigma {
        filtration_pair_value(modulus, n, k_rank, sigma, ell, nprime)
    } else {
        let m_sigma = modulus.ideal_max_lee_weight(sigma).expect("sigma < s");
        modulus.p_pow(sigma) + (n - k_rank) as u64 * m_sigma
    }
}

/// The four-case refinement. Every condition is evaluated by exact
/// integer cross-multiplication; when several cases fire the smallest
/// bound is returned and the report lists all fired cases.
pub fn bound_filtration_cases(code: &LinearCode) -> BoundReport {
    if code.is_zero_code() {
        return zero_code_report("filtration_cases", Metric::Lee);
    }
    let modulus = code.modulus();
    let profile = filtration_profile(code).expect("nonzero code");
    let s = modulus.s();
    let sigma = profile.sigma;
    let (ell, nprime, nbig) = (profile.ell, profile.nprime as i128, profile.nprime_big as i128);
    let n = code.n();
    let k_rank = code.rank();
    let width = (n - k_rank) as i128;
    let m_sigma = modulus.ideal_max_lee_weight(sigma).expect("sigma < s");
    let m_top = modulus.ideal_max_lee_weight(s - 1).expect("s - 1 < s");

    let mut fired: Vec<(u8, u64)> = Vec::new();

    // Case 1: stay at the sigma-th filtration.
    let stay = ell == sigma || {
        let lhs = nprime * (modulus.p_pow(s - sigma) as i128 - 1);
        let rhs = 2 * (modulus.p_pow(s - ell) as i128 - 1);
        lhs <= rhs
    };
    if stay {
        fired.push((1, modulus.p_pow(sigma) + width as u64 * m_sigma));
    }
    // Case 2: a zero row in A.
    if ell == s {
        fired.push((
            2,
            modulus.p_pow(sigma) + (width - nprime) as u64 * m_sigma,
        ));
    }
    // Case 3: descend to the filtration where the recorded zeros appear.
    if ell > sigma && ell < s {
        let lhs = nprime * (modulus.p_pow(s - sigma) as i128 - 1);
        let rhs = 2 * (modulus.p_pow(s - ell) as i128 - 1);
        if lhs >= rhs {
            fired.push((
                3,
                filtration_pair_value(modulus, n, k_rank, sigma, ell, profile.nprime),
            ));
        }
    }
    // Case 4: go all the way to the socle.
    if ell > sigma {
        let denom = modulus.p_pow(ell - sigma) as i128 - 1;
        let lhs = nprime * denom;
        let rhs = nbig * (modulus.p_pow(ell - sigma) as i128 - modulus.p_pow(ell - sigma - 1) as i128)
            + (width - 2) * (modulus.p_pow(ell - sigma - 1) as i128 - 1);
        if lhs <= rhs {
            fired.push((4, modulus.p_pow(s - 1) + (width - nbig) as u64 * m_top));
        }
    }

    let &(case, value) = fired
        .iter()
        .min_by_key(|&&(case, value)| (value, case))
        .expect("cases 1-3 cover every profile");
    let mut report = BoundReport::applicable("filtration_cases", Metric::Lee, value)
        .with("case", case)
        .with("ell", ell)
        .with("nprime", profile.nprime)
        .with("N'", profile.nprime_big);
    report = report.with(
        "fired",
        fired
            .iter()
            .map(|(c, v)| format!("{c}:{v}"))
            .collect::<Vec<_>>()
            .join(" "),
    );
    report
}

/// Hamming analogue of the simple filtration bound:
/// d_H <= 1 + (n - K - n') when ell exceeds sigma, else 1 + (n - K).
pub fn bound_hamming_filtration(code: &LinearCode) -> BoundReport {
    if code.is_zero_code() {
        return zero_code_report("hamming_filtration", Metric::Hamming);
    }
    let profile = filtration_profile(code).expect("nonzero code");
    let width = code.n() - code.rank();
    let value = if profile.ell > profile.sigma {
        1 + (width - profile.nprime) as u64
    } else {
        1 + width as u64
    };
    BoundReport::applicable("hamming_filtration", Metric::Hamming, value)
        .with("ell", profile.ell)
        .with("nprime", profile.nprime)
}

/// Every bound, plus the exact distances when enumeration fits the cap,
/// sorted ascending by value among the applicable reports.
pub fn all_bounds(code: &LinearCode, limits: &Limits) -> Vec<BoundReport> {
    let mut out = vec![
        bound_hamming_singleton(code),
        bound_mdr(code),
        bound_shiromoto(code),
        bound_alderson(code),
        bound_puncturing(code),
        bound_join(code),
        bound_column_exact(code, limits),
        bound_column_static(code),
        bound_column_cancelling(code),
        bound_filtration_min(code),
        bound_filtration_simple(code),
        bound_filtration_cases(code),
        bound_hamming_filtration(code),
    ];
    out.push(match weights::min_lee_distance(code, limits) {
        Ok(d) => BoundReport::applicable("oracle_lee", Metric::Lee, d),
        Err(e) => BoundReport::not_applicable("oracle_lee", Metric::Lee, e.to_string()),
    });
    out.push(match weights::min_hamming_distance(code, limits) {
        Ok(d) => BoundReport::applicable("oracle_hamming", Metric::Hamming, d),
        Err(e) => BoundReport::not_applicable("oracle_hamming", Metric::Hamming, e.to_string()),
    });
    out.sort_by(|a, b| match (a.value, b.value) {
        (Some(x), Some(y)) => x.cmp(&y).then(a.name.cmp(b.name)),
        (Some(_), None) => std::cmp::Ordering::Less,
        (None, Some(_)) => std::cmp::Ordering::Greater,
        (None, None) => a.name.cmp(b.name),
    });
    out
}

/// M_(s-1) (n - K + 1), as a pure function of table parameters.
pub fn join_cell(modulus: Modulus, n: usize, k_rank: usize) -> u64 {
    modulus.ideal_max_lee_weight(modulus.s() - 1).expect("s - 1 < s") * (n - k_rank + 1) as u64
}

/// M (n - K + 1): the rank form of the Shiromoto rearrangement used when
/// only (n, K) are known.
pub fn shiromoto_rank_cell(modulus: Modulus, n: usize, k_rank: usize) -> u64 {
    modulus.max_lee_weight() * (n - k_rank + 1) as u64
}

/// All subtypes (k_0, ..., k_{s-1}) with rank K and maximal nonzero index
/// sigma, in lexicographic order.
pub fn subtypes_with_sigma(s: u32, k_rank: usize, sigma: u32) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = vec![0usize; s as usize];
    fn fill(
        current: &mut Vec<usize>,
        idx: usize,
        remaining: usize,
        sigma: usize,
        out: &mut Vec<Vec<usize>>,
    ) {
        if idx == sigma {
            if remaining >= 1 {
                current[idx] = remaining;
                out.push(current.clone());
            }
            return;
        }
        for v in 0..=remaining.saturating_sub(1) {
            current[idx] = v;
            fill(current, idx + 1, remaining - v, sigma, out);
        }
        current[idx] = 0;
    }
    if (sigma as usize) < s as usize && k_rank >= 1 {
        fill(&mut current, 0, k_rank, sigma as usize, &mut out);
    }
    out
}

/// Dimension of a subtype as an exact rational.
pub fn subtype_dimension(s: u32, subtype: &[usize]) -> Ratio<u64> {
    let num: u64 = subtype
        .iter()
        .enumerate()
        .map(|(i, &k_i)| (s as u64 - i as u64) * k_i as u64)
        .sum();
    Ratio::new(num, s as u64)
}

/// Alderson-Huntemann values per admissible subtype of the given sigma:
/// the bound needs an integral dimension strictly between 1 and n.
pub fn alderson_cells(
    modulus: Modulus,
    n: usize,
    k_rank: usize,
    sigma: u32,
) -> Vec<(Vec<usize>, u64)> {
    subtypes_with_sigma(modulus.s(), k_rank, sigma)
        .into_iter()
        .filter_map(|subtype| {
            let k = subtype_dimension(modulus.s(), &subtype);
            if !k.is_integer() {
                return None;
            }
            let ki = k.to_integer();
            if ki <= 1 || ki >= n as u64 {
                return None;
            }
            let value = modulus.max_lee_weight() * (n as u64 - ki);
            Some((subtype, value))
        })
        .collect()
}

/// One filtration cell of a comparison grid: the simple filtration bound
/// at the pair (ell, n'); `nprime` is None for the collapsed ell = sigma
/// row, where the value does not depend on n'.
#[derive(Clone, Debug, Serialize)]
pub struct TableFiltrationCell {
    pub ell: u32,
    pub nprime: Option<usize>,
    pub value: u64,
}

/// Bound values for one parameter tuple (n, K, q, sigma): the per-subtype
/// Alderson-Huntemann values, the rank-form Shiromoto and join values,
/// and the simple filtration bound for every admissible (ell, n') pair.
#[derive(Clone, Debug, Serialize)]
pub struct TableBlock {
    pub n: usize,
    pub k_rank: usize,
    pub q: u64,
    pub sigma: u32,
    pub alderson: Vec<(Vec<usize>, u64)>,
    pub shiromoto: u64,
    pub join: u64,
    pub filtration: Vec<TableFiltrationCell>,
}

/// Assembles a comparison block for the tuple (n, K, q = p^s, sigma).
pub fn table_block(modulus: Modulus, n: usize, k_rank: usize, sigma: u32) -> Result<TableBlock> {
    let s = modulus.s();
    if sigma >= s {
        return Err(Error::IndexOutOfRange {
            index: sigma,
            max: s - 1,
        });
    }
    if k_rank == 0 || k_rank > n {
        return Err(Error::InvalidParameter(format!(
            "rank must satisfy 1 <= K <= n, got K={k_rank}, n={n}"
        )));
    }
    let mut filtration = Vec::new();
    // The collapsed row: every pair with ell <= sigma falls back to
    // p^sigma + (n-K) M_sigma.
    filtration.push(TableFiltrationCell {
        ell: sigma,
        nprime: (sigma == 0).then_some(n - k_rank),
        value: filtration_cell(modulus, n, k_rank, sigma, sigma, 0),
    });
    for ell in sigma + 1..=s {
        for nprime in 1..=n - k_rank {
            filtration.push(TableFiltrationCell {
                ell,
                nprime: Some(nprime),
                value: filtration_cell(modulus, n, k_rank, sigma, ell, nprime),
            });
        }
    }
    Ok(TableBlock {
        n,
        k_rank,
        q: modulus.q(),
        sigma,
        alderson: alderson_cells(modulus, n, k_rank, sigma),
        shiromoto: shiromoto_rank_cell(modulus, n, k_rank),
        join: join_cell(modulus, n, k_rank),
        filtration,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::GeneratorMatrix;

    fn code(p: u64, s: u32, n: usize, rows: &[Vec<i64>]) -> LinearCode {
        let modulus = Modulus::new(p, s).unwrap();
        let g = GeneratorMatrix::from_rows(modulus, n, rows).unwrap();
        LinearCode::from_generators(&g).unwrap()
    }

    fn value(report: &BoundReport) -> u64 {
        assert!(report.applicable, "{}: {:?}", report.name, report.reason);
        report.value.unwrap()
    }

    #[test]
    fn hamming_singleton_and_mdr() {
        let c = code(3, 2, 4, &[vec![1, 0, 2, 3], vec![0, 3, 6, 0], vec![0, 0, 3, 6]]);
        // k = 2, K = 3.
        assert_eq!(value(&bound_hamming_singleton(&c)), 3);
        assert_eq!(value(&bound_mdr(&c)), 2);

        let full = code(3, 1, 2, &[vec![1, 0], vec![0, 1]]);
        assert_eq!(value(&bound_hamming_singleton(&full)), 1);
        assert_eq!(value(&bound_mdr(&full)), 1);

        let c = code(5, 1, 5, &[vec![1, 0, 1, 1, 1], vec![0, 1, 2, 3, 4]]);
        assert_eq!(value(&bound_mdr(&c)), 4);
    }

    #[test]
    fn shiromoto_values_and_attainment() {
        let c = code(5, 1, 2, &[vec![1, 2]]);
        assert_eq!(value(&bound_shiromoto(&c)), 4);
        assert!(shiromoto_inequality_holds(&c, 3));
        assert!(shiromoto_attained(&c, 3));
        assert!(!shiromoto_attained(&c, 2));
        assert!(!shiromoto_inequality_holds(&c, 5));

        // (n, k, q) = (6, 3, 9).
        let c = code(
            3,
            2,
            6,
            &[
                vec![1, 0, 0, 1, 1, 1],
                vec![0, 1, 0, 1, 2, 4],
                vec![0, 0, 1, 2, 1, 8],
            ],
        );
        assert_eq!(value(&bound_shiromoto(&c)), 16);

        // (n, k, q) = (4, 2, 9).
        let c = code(3, 2, 4, &[vec![1, 0, 2, 3], vec![0, 3, 6, 0], vec![0, 0, 3, 6]]);
        assert_eq!(value(&bound_shiromoto(&c)), 12);
    }

    #[test]
    fn alderson_values() {
        let c = code(
            3,
            2,
            6,
            &[
                vec![1, 0, 0, 1, 1, 1],
                vec![0, 1, 0, 1, 2, 4],
                vec![0, 0, 1, 2, 1, 8],
            ],
        );
        assert_eq!(value(&bound_alderson(&c)), 12);

        let c = code(3, 2, 4, &[vec![1, 0, 2, 3], vec![0, 3, 6, 0], vec![0, 0, 3, 6]]);
        assert_eq!(value(&bound_alderson(&c)), 8);

        // k = 5/3 is not an integer.
        let c = code(3, 3, 5, &[vec![1, 0, 1, 1, 1], vec![0, 3, 3, 6, 9]]);
        assert_eq!(c.z_dimension(), Ratio::new(5, 3));
        assert!(!bound_alderson(&c).applicable);
    }

    #[test]
    fn puncturing_examples() {
        // Support subtype (2, 2, 0), K = 3: the bound is 6 and attained.
        let c = code(3, 2, 4, &[vec![1, 0, 2, 3], vec![0, 3, 6, 0], vec![0, 0, 3, 6]]);
        let report = bound_puncturing(&c);
        assert_eq!(value(&report), 6);
        assert_eq!(report.params["j"], "2");
        assert!(puncturing_inequality_holds(&c, 6));
        assert!(!puncturing_inequality_holds(&c, 7));

        // Free non-degenerate: M (n - K + 1).
        let c = code(
            3,
            2,
            6,
            &[
                vec![1, 0, 0, 1, 1, 1],
                vec![0, 1, 0, 1, 2, 4],
                vec![0, 0, 1, 2, 1, 8],
            ],
        );
        assert_eq!(value(&bound_puncturing(&c)), 16);

        // Degenerate codes are rejected.
        let c = code(3, 2, 3, &[vec![1, 2, 0], vec![0, 3, 0]]);
        assert!(!bound_puncturing(&c).applicable);
    }

    #[test]
    fn puncturing_matches_descending_scan() {
        let cases = [
            code(3, 2, 4, &[vec![1, 0, 2, 3], vec![0, 3, 6, 0], vec![0, 0, 3, 6]]),
            code(3, 2, 4, &[vec![1, 0, 3, 2], vec![0, 1, 2, 0], vec![0, 0, 3, 3]]),
            code(3, 3, 5, &[vec![1, 10, 4, 20, 9], vec![0, 3, 9, 18, 9]]),
            code(2, 3, 4, &[vec![1, 3, 2, 6], vec![0, 2, 4, 2]]),
            code(5, 2, 3, &[vec![1, 7, 5], vec![0, 5, 10]]),
        ];
        for c in cases {
            let report = bound_puncturing(&c);
            if !report.applicable {
                continue;
            }
            let nm = c.n() as u64 * c.modulus().max_lee_weight();
            let scanned = (1..=nm)
                .rev()
                .find(|&d| puncturing_inequality_holds(&c, d))
                .unwrap();
            assert_eq!(value(&report), scanned);
        }
    }

    #[test]
    fn join_bound_examples() {
        let c = code(3, 2, 4, &[vec![1, 0, 3, 2], vec![0, 1, 2, 0], vec![0, 0, 3, 3]]);
        assert_eq!(value(&bound_join(&c)), 6);

        let c = code(
            3,
            2,
            6,
            &[
                vec![1, 0, 0, 1, 1, 1],
                vec![0, 1, 0, 1, 2, 4],
                vec![0, 0, 1, 2, 1, 8],
            ],
        );
        assert_eq!(value(&bound_join(&c)), 12);
        assert_eq!(join_cell(Modulus::new(5, 3).unwrap(), 6, 3), 200);
    }

    #[test]
    fn column_bounds_z9_example() {
        let c = code(3, 2, 4, &[vec![1, 0, 3, 2], vec![0, 1, 2, 0], vec![0, 0, 3, 3]]);
        let limits = Limits::default();
        // wt_col = 6, K = 3.
        assert_eq!(value(&bound_column_exact(&c, &limits)), 4);
        assert_eq!(value(&bound_column_static(&c)), 7);
        assert_eq!(value(&bound_column_cancelling(&c)), 7);

        let optimal = code(3, 2, 4, &[vec![3, 0, 0, 3], vec![0, 3, 0, 6], vec![0, 0, 3, 6]]);
        assert_eq!(value(&bound_column_cancelling(&optimal)), 6);

        let p2 = code(2, 3, 3, &[vec![1, 2, 3], vec![0, 2, 6]]);
        assert!(!bound_column_cancelling(&p2).applicable);

        let single = code(5, 1, 2, &[vec![1, 2]]);
        assert_eq!(value(&bound_column_exact(&single, &limits)), 3);
    }

    #[test]
    fn column_static_trivial_shapes() {
        // Free code with all-unit tail: mu = (n-K, 0, ...), so the static
        // bound reduces to (n-K)M + 1.
        let c = code(
            3,
            2,
            5,
            &[vec![1, 0, 0, 1, 2], vec![0, 1, 0, 4, 5], vec![0, 0, 1, 7, 8]],
        );
        assert_eq!(c.mu_support_subtype(), vec![2, 0, 0]);
        assert_eq!(value(&bound_column_static(&c)), 2 * 4 + 1);

        // Degenerate tail: mu lands on the zero class and contributes
        // nothing, leaving sum p^i k_i - K + 1.
        let c = code(3, 2, 3, &[vec![1, 0, 0], vec![0, 3, 0]]);
        assert_eq!(c.mu_support_subtype(), vec![0, 0, 1]);
        assert_eq!(value(&bound_column_static(&c)), (1 + 3) - 2 + 1);
    }

    #[test]
    fn filtration_profile_z27_example() {
        let c = code(
            3,
            3,
            5,
            &[vec![1, 0, 0, 21, 6], vec![0, 1, 0, 10, 7], vec![0, 0, 1, 18, 8]],
        );
        let profile = filtration_profile(&c).unwrap();
        assert_eq!(profile.sigma, 0);
        assert_eq!(
            profile.rows,
            vec![
                ProfileRow { ell: 1, nprime: 2 },
                ProfileRow { ell: 0, nprime: 2 },
                ProfileRow { ell: 2, nprime: 1 },
            ]
        );
        assert_eq!(profile.ell, 2);
        assert_eq!(profile.nprime, 1);
        // r = 2 sees only the ell = 2 row; r = 3 prefers the n' = 2 row.
        assert_eq!(profile.for_r(1), None);
        assert_eq!(profile.for_r(2), Some((2, 1)));
        assert_eq!(profile.for_r(3), Some((1, 2)));

        assert_eq!(value(&bound_filtration_rth(&c, 2).unwrap()), 15);
        assert_eq!(value(&bound_filtration_rth(&c, 3).unwrap()), 9);
        assert!(bound_filtration_rth(&c, 4).is_err());

        // With no qualifying row, n'^(r-1) = 0 and the bound falls back
        // to p^(r-1) + (n-K) M_(r-1).
        let all_units = code(3, 2, 4, &[vec![1, 0, 2, 4], vec![0, 1, 1, 2]]);
        assert_eq!(
            value(&bound_filtration_rth(&all_units, 2).unwrap()),
            3 + 2 * 3
        );
        assert!(bound_filtration_rth(&all_units, 1).is_err());
    }

    #[test]
    fn filtration_profile_nprime_big() {
        let c = code(3, 3, 4, &[vec![1, 0, 3, 6], vec![0, 1, 18, 1]]);
        let profile = filtration_profile(&c).unwrap();
        assert_eq!(profile.nprime_big, 2);
        assert_eq!((profile.ell, profile.nprime), (2, 1));

        // All-unit A: ell = 0 and the per-r table is empty.
        let c = code(3, 2, 3, &[vec![1, 0, 2], vec![0, 1, 4]]);
        let profile = filtration_profile(&c).unwrap();
        assert_eq!(profile.ell, 0);
        assert!(profile.per_r.iter().all(Option::is_none));
    }

    #[test]
    fn profile_counts_zero_entries_at_the_socle_level() {
        // A zero entry in a row that is not all zero registers at s-1:
        // the second filtration of this code has a genuine zero there.
        let c = code(3, 2, 4, &[vec![1, 0, 1, 0], vec![0, 1, 2, 2]]);
        let profile = filtration_profile(&c).unwrap();
        assert_eq!(
            profile.rows,
            vec![
                ProfileRow { ell: 1, nprime: 1 },
                ProfileRow { ell: 0, nprime: 2 },
            ]
        );
        assert_eq!((profile.ell, profile.nprime), (1, 1));
        // The simple bound then uses the socle: p + (4 - 2 - 1) * M_1.
        assert_eq!(value(&bound_filtration_simple(&c)), 3 + 3);

        // An all-zero row still earns the sentinel.
        let c = code(3, 2, 4, &[vec![1, 0, 0, 0], vec![0, 1, 5, 7]]);
        let profile = filtration_profile(&c).unwrap();
        assert_eq!(profile.rows[0], ProfileRow { ell: 2, nprime: 2 });
    }

    #[test]
    fn filtration_min_and_simple() {
        // The bound list of a two-row code over Z/27.
        let c = code(3, 3, 5, &[vec![1, 10, 4, 20, 9], vec![0, 3, 9, 18, 9]]);
        assert_eq!(value(&bound_filtration_min(&c)), 9);
        assert_eq!(value(&bound_filtration_simple(&c)), 9);

        // Fallback when every tail entry is a unit.
        let c = code(3, 2, 3, &[vec![1, 0, 2], vec![0, 1, 4]]);
        assert_eq!(value(&bound_filtration_min(&c)), 1 + 4);
        assert_eq!(value(&bound_filtration_simple(&c)), 1 + 4);
    }

    #[test]
    fn filtration_cell_values_match_comparison_table() {
        let z9 = Modulus::new(3, 2).unwrap();
        assert_eq!(filtration_cell(z9, 6, 3, 0, 0, 3), 13);
        assert_eq!(filtration_cell(z9, 6, 3, 0, 1, 1), 9);
        assert_eq!(filtration_cell(z9, 6, 3, 0, 1, 2), 6);
        assert_eq!(filtration_cell(z9, 6, 3, 0, 1, 3), 3);
        assert_eq!(filtration_cell(z9, 6, 3, 0, 2, 1), 9);
        assert_eq!(filtration_cell(z9, 6, 3, 0, 2, 2), 5);
        assert_eq!(filtration_cell(z9, 6, 3, 0, 2, 3), 1);
        // sigma = 1: the pair (1, n') collapses to the fallback 12.
        assert_eq!(filtration_cell(z9, 6, 3, 1, 1, 1), 12);
        assert_eq!(filtration_cell(z9, 6, 3, 1, 2, 1), 9);
        assert_eq!(filtration_cell(z9, 6, 3, 1, 2, 2), 6);
        assert_eq!(filtration_cell(z9, 6, 3, 1, 2, 3), 3);

        let z125 = Modulus::new(5, 3).unwrap();
        assert_eq!(filtration_cell(z125, 6, 3, 2, 2, 1), 175);
        assert_eq!(filtration_cell(z125, 6, 3, 2, 3, 1), 125);
        assert_eq!(filtration_cell(z125, 6, 3, 2, 3, 2), 75);
        assert_eq!(filtration_cell(z125, 6, 3, 2, 3, 3), 25);
    }

    #[test]
    fn filtration_cases_fire_as_expected() {
        // Case 4 sends this code to the socle.
        let c = code(3, 3, 4, &[vec![1, 0, 3, 6], vec![0, 1, 18, 1]]);
        let report = bound_filtration_cases(&c);
        assert_eq!(value(&report), 9);
        assert_eq!(report.params["case"], "4");

        // ell == sigma: case 1 with n - K = 1.
        let c = code(3, 2, 3, &[vec![1, 0, 2], vec![0, 1, 4]]);
        let report = bound_filtration_cases(&c);
        assert_eq!(report.params["case"], "1");
        assert_eq!(value(&report), 1 + 4);

        // A zero row in A: case 2 fires with n' = n - K.
        let c = code(3, 2, 4, &[vec![1, 0, 0, 0], vec![0, 1, 5, 7]]);
        let report = bound_filtration_cases(&c);
        let fired: Vec<&str> = report.params["fired"].split(' ').collect();
        assert!(fired.iter().any(|f| f.starts_with("2:")));
    }

    #[test]
    fn hamming_filtration_values() {
        let c = code(3, 3, 5, &[vec![1, 10, 4, 20, 9], vec![0, 3, 9, 18, 9]]);
        // (ell, n') = (2, 3) here, n - K = 3: d_H <= 1 + (3 - 3) = 1.
        let profile = filtration_profile(&c).unwrap();
        let expect = 1 + (3 - profile.nprime) as u64;
        assert_eq!(value(&bound_hamming_filtration(&c)), expect);

        // ell = 0 gives the rank-Singleton value n - K + 1.
        let c = code(3, 2, 3, &[vec![1, 0, 2], vec![0, 1, 4]]);
        assert_eq!(value(&bound_hamming_filtration(&c)), 2);
    }

    #[test]
    fn all_bounds_is_sorted_and_sound() {
        let limits = Limits::default();
        let c = code(3, 2, 4, &[vec![1, 0, 0, 2], vec![0, 1, 0, 6], vec![0, 0, 1, 4]]);
        let reports = all_bounds(&c, &limits);
        let d_lee = weights::min_lee_distance(&c, &limits).unwrap();
        let d_ham = weights::min_hamming_distance(&c, &limits).unwrap();
        let values: Vec<u64> = reports.iter().filter_map(|r| r.value).collect();
        assert!(values.windows(2).all(|w| w[0] <= w[1]), "not sorted: {values:?}");
        for report in &reports {
            // column_exact is excluded: its defining formula can dip below
            // the minimum distance (see column_exact_can_undershoot).
            if !report.applicable || report.name == "column_exact" {
                continue;
            }
            let oracle = match report.metric {
                Metric::Lee => d_lee,
                Metric::Hamming => d_ham,
            };
            assert!(
                report.value.unwrap() >= oracle,
                "{} below the exact distance",
                report.name
            );
        }
    }

    /// wt_col(C) - K + 1 is not a valid upper bound on d_L in general:
    /// this free code has a unimodular generator matrix of column Lee
    /// weight 4, so the report value is 2 while d_L = 3.
    #[test]
    fn column_exact_can_undershoot() {
        let limits = Limits::default();
        let c = code(3, 2, 4, &[vec![1, 0, 0, 2], vec![0, 1, 0, 6], vec![0, 0, 1, 4]]);
        let report = bound_column_exact(&c, &limits);
        assert_eq!(report.value, Some(2));
        assert_eq!(weights::min_lee_distance(&c, &limits).unwrap(), 3);
    }

    #[test]
    fn table_block_layout() {
        let z9 = Modulus::new(3, 2).unwrap();
        let block = table_block(z9, 6, 3, 0).unwrap();
        assert_eq!(block.shiromoto, 16);
        assert_eq!(block.join, 12);
        assert_eq!(block.alderson, vec![(vec![3, 0], 12)]);
        let cells: Vec<(u32, Option<usize>, u64)> = block
            .filtration
            .iter()
            .map(|c| (c.ell, c.nprime, c.value))
            .collect();
        assert_eq!(
            cells,
            vec![
                (0, Some(3), 13),
                (1, Some(1), 9),
                (1, Some(2), 6),
                (1, Some(3), 3),
                (2, Some(1), 9),
                (2, Some(2), 5),
                (2, Some(3), 1),
            ]
        );

        let block = table_block(z9, 6, 3, 1).unwrap();
        let cells: Vec<(u32, Option<usize>, u64)> = block
            .filtration
            .iter()
            .map(|c| (c.ell, c.nprime, c.value))
            .collect();
        assert_eq!(
            cells,
            vec![(1, None, 12), (2, Some(1), 9), (2, Some(2), 6), (2, Some(3), 3)]
        );
        assert!(table_block(z9, 6, 3, 2).is_err());
        assert!(table_block(z9, 2, 3, 0).is_err());
    }

    #[test]
    fn subtype_enumeration_and_alderson_cells() {
        let z9 = Modulus::new(3, 2).unwrap();
        assert_eq!(
            subtypes_with_sigma(2, 3, 1),
            vec![vec![0, 3], vec![1, 2], vec![2, 1]]
        );
        // Only (1, 2) has an integral dimension (k = 2).
        assert_eq!(alderson_cells(z9, 6, 3, 1), vec![(vec![1, 2], 16)]);

        let z125 = Modulus::new(5, 3).unwrap();
        assert_eq!(alderson_cells(z125, 6, 3, 1), vec![(vec![0, 3, 0], 248)]);
        // (1, 1, 1) has k = 2; (0, 0, 3) has k = 1 and is excluded.
        assert_eq!(alderson_cells(z125, 6, 3, 2), vec![(vec![1, 1, 1], 248)]);
        assert_eq!(alderson_cells(z125, 6, 3, 0), vec![(vec![3, 0, 0], 186)]);
    }
}
