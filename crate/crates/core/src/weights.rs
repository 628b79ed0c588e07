//! Distance oracles and generalized weight hierarchies.
//!
//! Four hierarchies live here, all indexed by the rank r of a subcode:
//!
//! - join: minimal size of the per-position maximal Lee weight over
//!   rank-r subcodes; computed through the socle viewed as a prime-field
//!   code, with a direct search kept as an independent route;
//! - meet: minimal size of the per-position minimal nonzero Lee weight;
//!   has no Singleton-like chain but is computable on small codes;
//! - column: minimal column Lee weight of an r-row generator matrix of a
//!   rank-r subcode, by branch-and-bound over codeword tuples;
//! - filtration: the minimum Lee distance of the (r-1)-st filtration
//!   subcode.
//!
//! Minimum distances are exact brute-force minima over all nonzero
//! codewords, guarded by an enumeration cap.

use crate::code::LinearCode;
use crate::error::{Error, Result};
use crate::matrix::{span_rank, GeneratorMatrix};
use crate::ring::Modulus;
use std::collections::HashSet;

/// Resource limits for enumeration and subcode search.
#[derive(Clone, Copy, Debug)]
pub struct Limits {
    /// Maximum number of codewords any enumeration may touch.
    pub enumeration_cap: u128,
    /// Maximum number of search-tree nodes for rank-r subcode searches.
    pub search_budget: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            enumeration_cap: 1 << 24,
            search_budget: 50_000_000,
        }
    }
}

impl Limits {
    pub fn with_cap(cap: u128) -> Self {
        Limits {
            enumeration_cap: cap,
            ..Limits::default()
        }
    }
}

/// An n-tuple of nonnegative integers serving as a support; its size is
/// the entry sum.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SupportVector(Vec<u64>);

impl SupportVector {
    pub fn new(entries: Vec<u64>) -> Self {
        SupportVector(entries)
    }

    pub fn entries(&self) -> &[u64] {
        &self.0
    }

    pub fn size(&self) -> u64 {
        self.0.iter().sum()
    }
}

/// Exact minimum Lee distance, by enumeration of all nonzero codewords.
pub fn min_lee_distance(code: &LinearCode, limits: &Limits) -> Result<u64> {
    min_distance_by(code, limits, |m, w| m.lee_weight_slice(w))
}

/// Exact minimum Hamming distance, by enumeration.
pub fn min_hamming_distance(code: &LinearCode, limits: &Limits) -> Result<u64> {
    min_distance_by(code, limits, |m, w| m.hamming_weight_slice(w))
}

fn min_distance_by(
    code: &LinearCode,
    limits: &Limits,
    weight: impl Fn(Modulus, &[u64]) -> u64,
) -> Result<u64> {
    if code.is_zero_code() {
        return Err(Error::ZeroCode);
    }
    let modulus = code.modulus();
    let mut best = u64::MAX;
    for w in code.enumerate_codewords(limits.enumeration_cap)? {
        if w.iter().all(|&x| x == 0) {
            continue;
        }
        best = best.min(weight(modulus, &w));
    }
    Ok(best)
}

/// Join support of the code: position j carries the maximal Lee weight
/// attained there, which is M_i for a column whose entries generate the
/// ideal of p^i. Original coordinate order; size is sum n_i * M_i.
pub fn join_support(code: &LinearCode) -> SupportVector {
    support_from_column_valuations(code, |modulus, v| {
        modulus.ideal_max_lee_weight(v).expect("valuation in range")
    })
}

/// Meet support: position j carries the minimal nonzero Lee weight
/// attained there, p^i for an exact-ideal-p^i column and 0 for a zero
/// column. Original coordinate order; size is sum over i < s of n_i * p^i.
pub fn meet_support(code: &LinearCode) -> SupportVector {
    support_from_column_valuations(code, |modulus, v| {
        if v == modulus.s() {
            0
        } else {
            modulus.p_pow(v)
        }
    })
}

fn support_from_column_valuations(
    code: &LinearCode,
    value: impl Fn(Modulus, u32) -> u64,
) -> SupportVector {
    let modulus = code.modulus();
    let mut entries = vec![0u64; code.n()];
    for (j, &v) in code.column_valuations().iter().enumerate() {
        entries[code.col_permutation()[j]] = value(modulus, v);
    }
    SupportVector(entries)
}

/// Column Lee weight of a matrix: the sum over columns of the maximal
/// entry Lee weight.
pub fn column_lee_weight_matrix(m: &GeneratorMatrix) -> u64 {
    let modulus = m.modulus();
    (0..m.n())
        .map(|c| {
            m.rows()
                .iter()
                .map(|row| modulus.lee_weight_of(row[c]))
                .max()
                .unwrap_or(0)
        })
        .sum()
}

// ---------------------------------------------------------------------------
// Rank-r subcode search.
//
// Both the column and the join hierarchy minimize, over r-tuples of
// codewords spanning a rank-r subcode, a score that is a sum of
// per-column terms and can only grow as rows are added. That monotonicity
// makes the partial score a valid lower bound for branch-and-bound.
// ---------------------------------------------------------------------------

trait ColumnScore {
    /// Per-column state, folded over the rows of a tuple.
    fn init(&self, modulus: Modulus) -> u64;
    fn fold(&self, modulus: Modulus, state: u64, entry: u64) -> u64;
    fn weight(&self, modulus: Modulus, state: u64) -> u64;
}

/// score = sum_j max_i lee(entry_ij): the column Lee weight.
struct LeeColumnScore;

impl ColumnScore for LeeColumnScore {
    fn init(&self, _m: Modulus) -> u64 {
        0
    }
    fn fold(&self, m: Modulus, state: u64, entry: u64) -> u64 {
        state.max(m.lee_weight_of(entry))
    }
    fn weight(&self, _m: Modulus, state: u64) -> u64 {
        state
    }
}

/// score = sum_j M_(min valuation in column j): the join weight of the
/// spanned subcode, readable off any generating tuple.
struct JoinColumnScore;

impl ColumnScore for JoinColumnScore {
    fn init(&self, m: Modulus) -> u64 {
        m.s() as u64
    }
    fn fold(&self, m: Modulus, state: u64, entry: u64) -> u64 {
        state.min(m.valuation(entry) as u64)
    }
    fn weight(&self, m: Modulus, state: u64) -> u64 {
        m.ideal_max_lee_weight(state as u32).expect("valuation in range")
    }
}

struct TupleSearch<'a, S: ColumnScore> {
    modulus: Modulus,
    candidates: &'a [Vec<u64>],
    r: usize,
    score: S,
    budget: u64,
    nodes: u64,
    best: u64,
    best_tuple: Vec<usize>,
    chosen: Vec<usize>,
}

impl<S: ColumnScore> TupleSearch<'_, S> {
    fn tuple_weight(&self, states: &[u64]) -> u64 {
        states.iter().map(|&st| self.score.weight(self.modulus, st)).sum()
    }

    fn run(&mut self) -> Result<(u64, Vec<usize>)> {
        let init = vec![self.score.init(self.modulus); columns(self.candidates)];
        self.descend(0, &init)?;
        if self.best == u64::MAX {
            // A rank-r tuple always exists for r <= rank, so this is
            // unreachable for valid inputs.
            return Err(Error::RankOutOfRange {
                r: self.r,
                max: self.candidates.len(),
            });
        }
        Ok((self.best, self.best_tuple.clone()))
    }

    fn descend(&mut self, from: usize, states: &[u64]) -> Result<()> {
        let depth = self.chosen.len();
        if depth == self.r {
            let w = self.tuple_weight(states);
            if w < self.best || (w == self.best && self.chosen < self.best_tuple) {
                self.best = w;
                self.best_tuple = self.chosen.clone();
            }
            return Ok(());
        }
        // Leave room for the remaining picks.
        for i in from..=self.candidates.len().saturating_sub(self.r - depth) {
            self.nodes += 1;
            if self.nodes > self.budget {
                return Err(Error::SearchBudgetExceeded {
                    best: (self.best != u64::MAX).then_some(self.best),
                });
            }
            let cand = &self.candidates[i];
            let next: Vec<u64> = states
                .iter()
                .zip(cand)
                .map(|(&st, &x)| self.score.fold(self.modulus, st, x))
                .collect();
            // The partial weight only grows with further rows.
            if self.tuple_weight(&next) > self.best {
                continue;
            }
            // Each picked row must raise the rank by one.
            self.chosen.push(i);
            let rows: Vec<Vec<u64>> =
                self.chosen.iter().map(|&j| self.candidates[j].clone()).collect();
            if span_rank(&rows, self.modulus) == self.chosen.len() {
                self.descend(i + 1, &next)?;
            }
            self.chosen.pop();
        }
        Ok(())
    }
}

fn columns(candidates: &[Vec<u64>]) -> usize {
    candidates.first().map_or(0, Vec::len)
}

/// Nonzero codewords with one representative per {c, -c} pair, since
/// negation changes neither Lee weights nor spans. Sorted by the given
/// single-row weight, ties by the word itself.
fn sign_reduced_codewords(
    code: &LinearCode,
    limits: &Limits,
    single_weight: impl Fn(Modulus, &[u64]) -> u64,
) -> Result<Vec<Vec<u64>>> {
    let modulus = code.modulus();
    let q = modulus.q();
    let mut out = Vec::new();
    for w in code.enumerate_codewords(limits.enumeration_cap)? {
        if w.iter().all(|&x| x == 0) {
            continue;
        }
        let neg: Vec<u64> = w.iter().map(|&x| if x == 0 { 0 } else { q - x }).collect();
        if w <= neg {
            out.push(w);
        }
    }
    out.sort_by(|a, b| {
        single_weight(modulus, a)
            .cmp(&single_weight(modulus, b))
            .then_with(|| a.cmp(b))
    });
    Ok(out)
}

fn check_rank_range(code: &LinearCode, r: usize) -> Result<()> {
    if r == 0 || r > code.rank() {
        return Err(Error::RankOutOfRange {
            r,
            max: code.rank(),
        });
    }
    Ok(())
}

fn min_tuple_score<S: ColumnScore>(
    code: &LinearCode,
    r: usize,
    score: S,
    single_weight: impl Fn(Modulus, &[u64]) -> u64,
    limits: &Limits,
) -> Result<(u64, Vec<Vec<u64>>)> {
    check_rank_range(code, r)?;
    let candidates = sign_reduced_codewords(code, limits, single_weight)?;
    let mut search = TupleSearch {
        modulus: code.modulus(),
        candidates: &candidates,
        r,
        score,
        budget: limits.search_budget,
        nodes: 0,
        best: u64::MAX,
        best_tuple: Vec::new(),
        chosen: Vec::new(),
    };
    let (best, tuple) = search.run()?;
    Ok((best, tuple.into_iter().map(|i| candidates[i].clone()).collect()))
}

/// r-th generalized column Lee weight: the least column Lee weight of an
/// r-row matrix of codewords spanning a rank-r subcode. For r = 1 this is
/// the minimum Lee distance.
pub fn generalized_column_lee_weight(code: &LinearCode, r: usize, limits: &Limits) -> Result<u64> {
    Ok(generalized_column_lee_weight_with_witness(code, r, limits)?.0)
}

/// As [`generalized_column_lee_weight`], also returning the attaining
/// codeword tuple (the lexicographically smallest among minimizers, over
/// candidates ordered by Lee weight).
pub fn generalized_column_lee_weight_with_witness(
    code: &LinearCode,
    r: usize,
    limits: &Limits,
) -> Result<(u64, Vec<Vec<u64>>)> {
    min_tuple_score(code, r, LeeColumnScore, |m, w| m.lee_weight_slice(w), limits)
}

/// Column Lee weight of the code: the K-th generalized column Lee weight,
/// equivalently the least column Lee weight over all generator matrices.
/// The zero code has column weight 0.
pub fn column_lee_weight_code(code: &LinearCode, limits: &Limits) -> Result<u64> {
    if code.is_zero_code() {
        return Ok(0);
    }
    generalized_column_lee_weight(code, code.rank(), limits)
}

/// r-th generalized join-Lee weight through the socle: rank-r subcodes of
/// minimal join weight live in the socle, where join weights are M_(s-1)
/// times Hamming support sizes of the prime-field image.
pub fn generalized_join_lee_weight(code: &LinearCode, r: usize, limits: &Limits) -> Result<u64> {
    check_rank_range(code, r)?;
    let modulus = code.modulus();
    let fp = code.socle_fp_image()?;
    let dh = generalized_hamming_weight(&fp, r, limits)?;
    Ok(dh * modulus.ideal_max_lee_weight(modulus.s() - 1).expect("s-1 in range"))
}

/// Direct search route for the r-th generalized join-Lee weight,
/// independent of the socle reduction. Kept for cross-checking.
pub fn generalized_join_lee_weight_search(
    code: &LinearCode,
    r: usize,
    limits: &Limits,
) -> Result<u64> {
    min_tuple_score(
        code,
        r,
        JoinColumnScore,
        |m, w| {
            w.iter()
                .map(|&x| m.ideal_max_lee_weight(m.valuation(x)).expect("valuation in range"))
                .sum()
        },
        limits,
    )
    .map(|(best, _)| best)
}

/// Join weight of the whole code: size of the join support.
pub fn join_weight(code: &LinearCode) -> u64 {
    join_support(code).size()
}

/// Meet weight of the whole code: size of the meet support.
pub fn meet_weight(code: &LinearCode) -> u64 {
    meet_support(code).size()
}

/// r-th generalized meet-Lee weight: minimum meet-support size over
/// rank-r subcodes, by exhaustive enumeration of spans (deduplicated by
/// their canonical form). Exponential; small codes only.
pub fn generalized_meet_lee_weight(code: &LinearCode, r: usize, limits: &Limits) -> Result<u64> {
    check_rank_range(code, r)?;
    let modulus = code.modulus();
    let candidates = sign_reduced_codewords(code, limits, |m, w| m.lee_weight_slice(w))?;
    let mut seen: HashSet<Vec<Vec<u64>>> = HashSet::new();
    let mut best = u64::MAX;
    let mut chosen: Vec<usize> = Vec::new();
    let mut nodes = 0u64;

    // Depth-first over index-increasing tuples whose prefixes all raise
    // the rank; evaluate each distinct span once.
    fn descend(
        candidates: &[Vec<u64>],
        modulus: Modulus,
        r: usize,
        from: usize,
        chosen: &mut Vec<usize>,
        seen: &mut HashSet<Vec<Vec<u64>>>,
        best: &mut u64,
        nodes: &mut u64,
        limits: &Limits,
    ) -> Result<()> {
        if chosen.len() == r {
            let rows: Vec<Vec<i64>> = chosen
                .iter()
                .map(|&i| candidates[i].iter().map(|&x| x as i64).collect())
                .collect();
            let g = GeneratorMatrix::from_rows(modulus, columns(candidates), &rows)?;
            let key = crate::matrix::howell_form(&g);
            if seen.insert(key) {
                let sub = LinearCode::from_generators(&g)?;
                let w = meet_support(&sub).size();
                *best = (*best).min(w);
            }
            return Ok(());
        }
        for i in from..candidates.len() {
            *nodes += 1;
            if *nodes > limits.search_budget {
                return Err(Error::SearchBudgetExceeded {
                    best: (*best != u64::MAX).then_some(*best),
                });
            }
            chosen.push(i);
            let rows: Vec<Vec<u64>> = chosen.iter().map(|&j| candidates[j].clone()).collect();
            if span_rank(&rows, modulus) == chosen.len() {
                descend(candidates, modulus, r, i + 1, chosen, seen, best, nodes, limits)?;
            }
            chosen.pop();
        }
        Ok(())
    }

    descend(
        &candidates,
        modulus,
        r,
        0,
        &mut chosen,
        &mut seen,
        &mut best,
        &mut nodes,
        limits,
    )?;
    Ok(best)
}

/// r-th generalized Hamming weight of a prime-field code: minimum support
/// size over r-dimensional subspaces, enumerated through their unique
/// reduced-echelon bases.
pub fn generalized_hamming_weight(code: &LinearCode, r: usize, limits: &Limits) -> Result<u64> {
    let modulus = code.modulus();
    if modulus.s() != 1 {
        return Err(Error::InvalidParameter(
            "generalized Hamming weights are computed over a prime field".into(),
        ));
    }
    check_rank_range(code, r)?;
    let p = modulus.p();
    let dim = code.rank();
    let count = gaussian_binomial(p, dim, r);
    if count > limits.enumeration_cap {
        return Err(Error::SubspaceCapExceeded {
            count,
            cap: limits.enumeration_cap,
        });
    }

    let gens = code.original_generators();
    let n = code.n();
    let mut best = u64::MAX;
    let mut pivots: Vec<usize> = (0..r).collect();
    loop {
        // Free positions of the echelon pattern: to the right of each
        // pivot, excluding pivot columns.
        let free: Vec<(usize, usize)> = (0..r)
            .flat_map(|i| {
                (pivots[i] + 1..dim)
                    .filter(|c| !pivots.contains(c))
                    .map(move |c| (i, c))
            })
            .collect();
        let mut values = vec![0u64; free.len()];
        loop {
            // Assemble the r x dim coefficient matrix.
            let mut coeff = vec![vec![0u64; dim]; r];
            for (i, &pc) in pivots.iter().enumerate() {
                coeff[i][pc] = 1;
            }
            for (&(i, c), &v) in free.iter().zip(&values) {
                coeff[i][c] = v;
            }
            // Support size of the spanned subspace.
            let mut support = 0u64;
            for j in 0..n {
                let nonzero = coeff.iter().any(|row| {
                    let mut acc = 0u64;
                    for (c, &x) in row.iter().enumerate() {
                        acc = (acc + x * gens.entry(c, j)) % p;
                    }
                    acc != 0
                });
                if nonzero {
                    support += 1;
                }
            }
            best = best.min(support);

            // Next free-value assignment.
            let mut i = values.len();
            loop {
                if i == 0 {
                    break;
                }
                i -= 1;
                values[i] += 1;
                if values[i] < p {
                    break;
                }
                values[i] = 0;
            }
            if values.iter().all(|&v| v == 0) {
                break;
            }
        }
        // Next pivot combination.
        let mut i = r;
        loop {
            if i == 0 {
                return Ok(best);
            }
            i -= 1;
            if pivots[i] + 1 <= dim - (r - i) {
                pivots[i] += 1;
                for j in i + 1..r {
                    pivots[j] = pivots[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// Number of r-dimensional subspaces of F_p^dim, saturating at u128::MAX.
pub fn gaussian_binomial(p: u64, dim: usize, r: usize) -> u128 {
    if r > dim {
        return 0;
    }
    // Exact big-integer evaluation of prod_i (p^(dim-i) - 1) / (p^(i+1) - 1);
    // the quotient is an integer but the partial quotients are not.
    use num::{BigUint, One};
    let p = BigUint::from(p);
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for i in 0..r {
        num *= p.pow((dim - i) as u32) - 1u32;
        den *= p.pow((i + 1) as u32) - 1u32;
    }
    let q = num / den;
    q.try_into().unwrap_or(u128::MAX)
}

/// r-th generalized minimum Lee distance: the minimum Lee distance of the
/// (r-1)-st filtration subcode, for r in 1..=s.
pub fn generalized_filtration_distance(code: &LinearCode, r: u32, limits: &Limits) -> Result<u64> {
    let s = code.modulus().s();
    if r == 0 || r > s {
        return Err(Error::RankOutOfRange {
            r: r as usize,
            max: s as usize,
        });
    }
    min_lee_distance(&code.filtration_subcode(r - 1)?, limits)
}
