//! Generator matrices over Z/p^sZ and their normal forms.
//!
//! A generator matrix is brought to systematic form by column-permuted
//! Gaussian elimination: pivots are chosen by minimal p-valuation, ties
//! broken by leftmost column then topmost row, and every pivot is scaled
//! to be exactly a power of p. The result has block shape
//!
//! ```text
//!     ( I      A01    A02   | A0 )
//!     ( 0      p*I    p*A12 | p*A1 )
//!     ( 0      0      p^2*I | p^2*A2 )
//! ```
//!
//! with zero rows dropped and the column permutation recorded. Row spans
//! are preserved throughout (up to the recorded permutation).

use crate::error::{Error, Result};
use crate::ring::Modulus;

/// A rectangular grid of canonical residues sharing one modulus.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorMatrix {
    modulus: Modulus,
    n: usize,
    rows: Vec<Vec<u64>>,
}

impl GeneratorMatrix {
    /// Builds a matrix from signed integer rows, reducing entries mod q.
    pub fn from_rows(modulus: Modulus, n: usize, rows: &[Vec<i64>]) -> Result<Self> {
        let mut out = Vec::with_capacity(rows.len());
        for row in rows {
            if row.len() != n {
                return Err(Error::RowLengthMismatch {
                    expected: n,
                    found: row.len(),
                });
            }
            out.push(row.iter().map(|&x| modulus.reduce(x).value()).collect());
        }
        Ok(GeneratorMatrix {
            modulus,
            n,
            rows: out,
        })
    }

    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    /// Number of columns.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of rows.
    pub fn row_count(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<u64>] {
        &self.rows
    }

    pub fn row(&self, r: usize) -> &[u64] {
        &self.rows[r]
    }

    pub fn entry(&self, r: usize, c: usize) -> u64 {
        self.rows[r][c]
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(|row| row.iter().all(|&x| x == 0))
    }

    fn scale_row(&mut self, r: usize, factor: u64) {
        let q = self.modulus.q();
        for x in &mut self.rows[r] {
            *x = *x * factor % q;
        }
    }

    /// rows[dst] -= coeff * rows[src] (mod q).
    fn subtract_multiple(&mut self, dst: usize, src: usize, coeff: u64) {
        let q = self.modulus.q();
        for c in 0..self.n {
            let sub = coeff * self.rows[src][c] % q;
            self.rows[dst][c] = (self.rows[dst][c] + q - sub) % q;
        }
    }

    fn swap_columns(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for row in &mut self.rows {
            row.swap(a, b);
        }
    }
}

/// Systematic form of a generator matrix: the normalized matrix, the
/// column permutation applied (`col_permutation[j]` is the input column
/// shown at position `j`), and the pivot valuation of every row.
#[derive(Clone, Debug)]
pub struct SystematicForm {
    pub matrix: GeneratorMatrix,
    pub col_permutation: Vec<usize>,
    pub pivot_valuations: Vec<u32>,
}

impl SystematicForm {
    /// Rank: the number of pivot rows.
    pub fn rank(&self) -> usize {
        self.pivot_valuations.len()
    }

    /// Subtype (k_0, ..., k_{s-1}): multiplicities of the pivot scales.
    pub fn subtype(&self) -> Vec<usize> {
        let s = self.matrix.modulus().s() as usize;
        let mut counts = vec![0usize; s];
        for &v in &self.pivot_valuations {
            counts[v as usize] += 1;
        }
        counts
    }
}

/// Column-permuted Gaussian elimination over Z/p^sZ.
///
/// Errors on an all-zero (or empty) input since that spans only the zero
/// code.
pub fn systematic_form(input: &GeneratorMatrix) -> Result<SystematicForm> {
    if input.is_zero() {
        return Err(Error::ZeroCode);
    }
    let mut m = input.clone();
    let modulus = m.modulus;
    let n = m.n;
    let mut col_permutation: Vec<usize> = (0..n).collect();
    let mut pivot_valuations = Vec::new();
    let mut t = 0;

    while t < m.rows.len() && t < n {
        // Minimal valuation in the remaining submatrix, leftmost column
        // first, then topmost row.
        let mut best: Option<(u32, usize, usize)> = None;
        for c in t..n {
            for r in t..m.rows.len() {
                let val = modulus.valuation(m.rows[r][c]);
                if val < modulus.s() && best.map_or(true, |(bv, _, _)| val < bv) {
                    best = Some((val, c, r));
                }
            }
        }
        let Some((val, c, r)) = best else { break };

        m.rows.swap(t, r);
        m.swap_columns(t, c);
        col_permutation.swap(t, c);

        // Scale so the pivot is exactly p^val.
        let unit = m.rows[t][t] / modulus.p_pow(val);
        let inv = modulus
            .unit_inverse(unit)
            .expect("cofactor of a valuation-val entry is a unit");
        m.scale_row(t, inv);
        debug_assert_eq!(m.rows[t][t], modulus.p_pow(val));

        // Clear the pivot column below. Everything remaining is divisible
        // by p^val because val was minimal.
        for r in t + 1..m.rows.len() {
            let b = m.rows[r][t];
            if b != 0 {
                m.subtract_multiple(r, t, b / modulus.p_pow(val));
            }
        }
        pivot_valuations.push(val);
        t += 1;
    }

    m.rows.truncate(t);
    Ok(SystematicForm {
        matrix: m,
        col_permutation,
        pivot_valuations,
    })
}

/// Checks the block shape produced by [`systematic_form`]: row `t` has the
/// pivot `p^(v_t)` at column `t`, zeros to its left, zeros below it, and
/// non-decreasing pivot valuations.
pub fn check_systematic(m: &GeneratorMatrix) -> Result<Vec<u32>> {
    let modulus = m.modulus();
    let mut vals = Vec::with_capacity(m.row_count());
    for t in 0..m.row_count() {
        if t >= m.n() {
            return Err(Error::NotSystematic);
        }
        let val = modulus.valuation(m.entry(t, t));
        if val >= modulus.s() || m.entry(t, t) != modulus.p_pow(val) {
            return Err(Error::NotSystematic);
        }
        if vals.last().is_some_and(|&prev| val < prev) {
            return Err(Error::NotSystematic);
        }
        for c in 0..t {
            if m.entry(t, c) != 0 {
                return Err(Error::NotSystematic);
            }
        }
        for r in t + 1..m.row_count() {
            if m.entry(r, t) != 0 {
                return Err(Error::NotSystematic);
            }
        }
        vals.push(val);
    }
    Ok(vals)
}

/// Reduced systematic form: processing pivot columns left to right, every
/// entry above a `p^j` pivot is replaced by its centered representative
/// modulo `p^j` through row operations. Afterwards each such entry has
/// Lee weight at most `p^j / 2`, and the pass is idempotent.
pub fn reduced_systematic_form(sys: &GeneratorMatrix) -> Result<GeneratorMatrix> {
    let pivot_valuations = check_systematic(sys)?;
    let mut m = sys.clone();
    let modulus = m.modulus();
    let q = modulus.q() as i64;
    for t in 0..m.row_count() {
        let scale = modulus.p_pow(pivot_valuations[t]) as i64;
        for r in 0..t {
            let a = m.entry(r, t) as i64;
            let mut rem = a % scale;
            if rem * 2 > scale {
                rem -= scale;
            }
            // a - rem is divisible by the pivot scale; the quotient is the
            // row-operation coefficient.
            let coeff = ((a - rem) / scale).rem_euclid(q) as u64;
            if coeff != 0 {
                m.subtract_multiple(r, t, coeff);
            }
        }
    }
    Ok(m)
}

/// Rank of the row span: the number of pivots found by the same
/// minimal-valuation elimination as [`systematic_form`], without keeping
/// the normalized matrix.
pub fn span_rank(rows: &[Vec<u64>], modulus: Modulus) -> usize {
    let Some(n) = rows.first().map(Vec::len) else {
        return 0;
    };
    let mut m: Vec<Vec<u64>> = rows.to_vec();
    let q = modulus.q();
    let mut t = 0;
    while t < m.len() && t < n {
        let mut best: Option<(u32, usize, usize)> = None;
        for c in t..n {
            for r in t..m.len() {
                let val = modulus.valuation(m[r][c]);
                if val < modulus.s() && best.map_or(true, |(bv, _, _)| val < bv) {
                    best = Some((val, c, r));
                }
            }
        }
        let Some((val, c, r)) = best else { break };
        m.swap(t, r);
        for row in &mut m {
            row.swap(t, c);
        }
        // Normalize the pivot to exactly p^val before clearing below it.
        let scale = modulus.p_pow(val);
        let inv = modulus
            .unit_inverse(m[t][t] / scale)
            .expect("cofactor of a valuation-val entry is a unit");
        for j in 0..n {
            m[t][j] = m[t][j] * inv % q;
        }
        for r in t + 1..m.len() {
            let b = m[r][t];
            if b != 0 {
                let coeff = b / scale;
                for j in 0..n {
                    let sub = coeff * m[t][j] % q;
                    m[r][j] = (m[r][j] + q - sub) % q;
                }
            }
        }
        t += 1;
    }
    t
}

/// Canonical form of a row span over Z/p^sZ, without column permutations
/// (Howell normal form). Two matrices have equal row spans exactly when
/// their forms coincide, which is what makes this usable as a span key.
///
/// Shape: pivots p^v in strictly increasing columns, everything else in a
/// pivot column reduced modulo the pivot, and for every basis row with
/// pivot valuation v > 0 the annihilator multiple p^(s-v) * row is folded
/// back in so that trailing spans are fully represented.
pub fn howell_form(m: &GeneratorMatrix) -> Vec<Vec<u64>> {
    let modulus = m.modulus();
    let q = modulus.q();
    let n = m.n();
    // basis[c] = row with pivot p^v at column c and zeros before c.
    let mut basis: Vec<Option<Vec<u64>>> = vec![None; n];
    let mut pending: Vec<Vec<u64>> = m.rows().to_vec();

    while let Some(mut v) = pending.pop() {
        let mut col = 0;
        loop {
            match v.iter().skip(col).position(|&x| x != 0) {
                None => break,
                Some(offset) => col += offset,
            }
            let val = modulus.valuation(v[col]);
            match &mut basis[col] {
                slot @ None => {
                    // Normalize the leading entry to p^val.
                    let unit = v[col] / modulus.p_pow(val);
                    let inv = modulus.unit_inverse(unit).expect("leading cofactor is a unit");
                    for x in &mut v {
                        *x = *x * inv % q;
                    }
                    if val > 0 {
                        let ann = modulus.p_pow(modulus.s() - val);
                        pending.push(v.iter().map(|&x| x * ann % q).collect());
                    }
                    *slot = Some(v);
                    break;
                }
                Some(u) => {
                    let pivot_val = modulus.valuation(u[col]);
                    if modulus.valuation(v[col]) >= pivot_val {
                        let coeff = v[col] / modulus.p_pow(pivot_val);
                        for (x, &g) in v.iter_mut().zip(u.iter()) {
                            *x = (*x + q - coeff * g % q) % q;
                        }
                        // v[col] is now zero; continue to the right.
                    } else {
                        // The new row has the smaller valuation: swap it in
                        // and re-insert the displaced row.
                        let unit = v[col] / modulus.p_pow(val);
                        let inv = modulus.unit_inverse(unit).expect("leading cofactor is a unit");
                        for x in &mut v {
                            *x = *x * inv % q;
                        }
                        if val > 0 {
                            let ann = modulus.p_pow(modulus.s() - val);
                            pending.push(v.iter().map(|&x| x * ann % q).collect());
                        }
                        pending.push(std::mem::replace(u, v));
                        break;
                    }
                }
            }
        }
    }

    // Reduce entries above each pivot modulo the pivot scale.
    let pivot_cols: Vec<usize> = (0..n).filter(|&c| basis[c].is_some()).collect();
    for &c in &pivot_cols {
        let pivot_row = basis[c].clone().expect("pivot present");
        let scale = modulus.p_pow(modulus.valuation(pivot_row[c]));
        for &c2 in &pivot_cols {
            if c2 >= c {
                break;
            }
            let row = basis[c2].as_mut().expect("pivot present");
            let rem = row[c] % scale;
            let coeff = (row[c] - rem) / scale;
            if coeff != 0 {
                for (x, &g) in row.iter_mut().zip(pivot_row.iter()) {
                    *x = (*x + q - coeff * g % q) % q;
                }
            }
        }
    }
    basis.into_iter().flatten().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::span_closure_naive;
    use crate::ring::Modulus;

    fn gm(p: u64, s: u32, n: usize, rows: &[Vec<i64>]) -> GeneratorMatrix {
        GeneratorMatrix::from_rows(Modulus::new(p, s).unwrap(), n, rows).unwrap()
    }

    fn permuted(m: &GeneratorMatrix, perm: &[usize]) -> GeneratorMatrix {
        let rows: Vec<Vec<i64>> = m
            .rows()
            .iter()
            .map(|row| perm.iter().map(|&j| row[j] as i64).collect())
            .collect();
        GeneratorMatrix::from_rows(m.modulus(), m.n(), &rows).unwrap()
    }

    #[test]
    fn already_systematic_is_fixed() {
        let g = gm(3, 2, 4, &[vec![1, 0, 3, 2], vec![0, 1, 2, 0], vec![0, 0, 3, 3]]);
        let sys = systematic_form(&g).unwrap();
        assert_eq!(sys.matrix, g);
        assert_eq!(sys.col_permutation, vec![0, 1, 2, 3]);
        assert_eq!(sys.subtype(), vec![2, 1]);
        assert_eq!(sys.rank(), 3);
    }

    #[test]
    fn unit_scaling_normalizes() {
        let g = gm(5, 1, 2, &[vec![2, 4]]);
        let sys = systematic_form(&g).unwrap();
        assert_eq!(sys.matrix.rows(), &[vec![1, 2]]);
        assert_eq!(sys.subtype(), vec![1]);
    }

    #[test]
    fn pivot_reordering_swaps_columns() {
        let g = gm(3, 2, 2, &[vec![3, 0], vec![0, 1]]);
        let sys = systematic_form(&g).unwrap();
        assert_eq!(sys.matrix.rows(), &[vec![1, 0], vec![0, 3]]);
        assert_eq!(sys.col_permutation, vec![1, 0]);
        assert_eq!(sys.subtype(), vec![1, 1]);
        // Row span of the permuted input equals the row span of the output.
        let p = permuted(&g, &sys.col_permutation);
        assert_eq!(span_closure_naive(&p), span_closure_naive(&sys.matrix));
    }

    #[test]
    fn zero_matrix_rejected() {
        let g = gm(3, 2, 3, &[vec![0, 0, 0]]);
        assert!(matches!(systematic_form(&g), Err(Error::ZeroCode)));
    }

    #[test]
    fn zero_rows_dropped_and_span_kept() {
        let g = gm(3, 2, 3, &[vec![1, 2, 3], vec![2, 4, 6], vec![0, 3, 0]]);
        let sys = systematic_form(&g).unwrap();
        assert_eq!(sys.rank(), 2);
        let p = permuted(&g, &sys.col_permutation);
        assert_eq!(span_closure_naive(&p), span_closure_naive(&sys.matrix));
    }

    #[test]
    fn systematic_span_preserved_on_mixed_valuations() {
        let cases = [
            gm(3, 2, 4, &[vec![3, 1, 0, 5], vec![6, 2, 3, 1], vec![0, 0, 6, 3]]),
            gm(2, 3, 3, &[vec![4, 2, 6], vec![2, 1, 7]]),
            gm(5, 2, 3, &[vec![10, 5, 20], vec![0, 5, 15]]),
        ];
        for g in cases {
            let sys = systematic_form(&g).unwrap();
            check_systematic(&sys.matrix).unwrap();
            let p = permuted(&g, &sys.col_permutation);
            assert_eq!(span_closure_naive(&p), span_closure_naive(&sys.matrix));
        }
    }

    #[test]
    fn reduction_caps_entries_above_pivots() {
        let g = gm(
            3,
            3,
            4,
            &[vec![1, 14, 11, 0], vec![0, 9, 18, 0], vec![0, 0, 9, 18]],
        );
        let r = reduced_systematic_form(&g).unwrap();
        let modulus = r.modulus();
        // Entries above the two p^2 pivots must have Lee weight <= 9.
        for t in 1..3 {
            for row in 0..t {
                assert!(modulus.lee_weight_of(r.entry(row, t)) <= 9);
            }
        }
        // Span unchanged.
        assert_eq!(span_closure_naive(&g), span_closure_naive(&r));
        // Idempotent.
        assert_eq!(reduced_systematic_form(&r).unwrap(), r);
    }

    #[test]
    fn reduction_leaves_reduced_matrix_alone() {
        let g = gm(3, 2, 2, &[vec![1, 8], vec![0, 3]]);
        let r = reduced_systematic_form(&g).unwrap();
        assert_eq!(r, g);
        assert!(r.modulus().lee_weight_of(r.entry(0, 1)) <= 3);
        assert_eq!(span_closure_naive(&g), span_closure_naive(&r));
    }

    #[test]
    fn reduction_rejects_non_systematic() {
        let g = gm(3, 2, 2, &[vec![2, 1], vec![1, 0]]);
        assert!(matches!(
            reduced_systematic_form(&g),
            Err(Error::NotSystematic)
        ));
    }

    #[test]
    fn howell_form_identifies_spans() {
        // A multiple that shifts the leading position: span{(2,1)} over Z/4
        // contains (0,2), so both presentations must agree.
        let a = gm(2, 2, 2, &[vec![2, 1]]);
        let b = gm(2, 2, 2, &[vec![2, 1], vec![0, 2]]);
        assert_eq!(howell_form(&a), howell_form(&b));

        // Different spans must differ.
        let c = gm(2, 2, 2, &[vec![2, 1], vec![0, 1]]);
        assert_ne!(howell_form(&a), howell_form(&c));
    }

    #[test]
    fn howell_form_is_span_canonical_on_random_inputs() {
        use rand::rngs::StdRng;
        use rand::{Rng, SeedableRng};
        use std::collections::BTreeMap;
        let mut rng = StdRng::seed_from_u64(7);
        // Key by the naive span; every span must map to one unique form.
        let mut seen: BTreeMap<(u64, u32, Vec<Vec<u64>>), Vec<Vec<u64>>> = BTreeMap::new();
        for _ in 0..300 {
            let (p, s) = [(2, 2), (2, 3), (3, 2), (5, 1)][rng.random_range(0..4)];
            let modulus = Modulus::new(p, s).unwrap();
            let n = rng.random_range(1..4usize);
            let rows = rng.random_range(1..=3usize);
            let raw: Vec<Vec<i64>> = (0..rows)
                .map(|_| (0..n).map(|_| rng.random_range(0..modulus.q() as i64)).collect())
                .collect();
            let g = GeneratorMatrix::from_rows(modulus, n, &raw).unwrap();
            let span: Vec<Vec<u64>> = span_closure_naive(&g).into_iter().collect();
            let form = howell_form(&g);
            if let Some(prev) = seen.insert((p, s, span), form.clone()) {
                assert_eq!(prev, form);
            }
            // The form itself spans the same set.
            if !form.is_empty() {
                let back = GeneratorMatrix::from_rows(
                    modulus,
                    n,
                    &form.iter().map(|r| r.iter().map(|&x| x as i64).collect()).collect::<Vec<_>>(),
                )
                .unwrap();
                assert_eq!(span_closure_naive(&g), span_closure_naive(&back));
            }
        }
    }

    #[test]
    fn span_rank_matches_systematic_rank() {
        let g = gm(3, 2, 4, &[vec![1, 0, 3, 2], vec![0, 1, 2, 0], vec![0, 0, 3, 3]]);
        assert_eq!(span_rank(g.rows(), g.modulus()), 3);
        let g = gm(3, 2, 3, &[vec![1, 2, 3], vec![2, 4, 6], vec![0, 3, 0]]);
        assert_eq!(span_rank(g.rows(), g.modulus()), 2);
        assert_eq!(span_rank(&[], g.modulus()), 0);

        // Dependent set whose leading entries are units other than 1:
        // the third row is the sum of the first two.
        let g = gm(3, 2, 4, &[vec![0, 0, 1, 1], vec![2, 1, 0, 0], vec![2, 1, 1, 1]]);
        assert_eq!(span_rank(g.rows(), g.modulus()), 2);
    }

    #[test]
    fn span_rank_agrees_with_systematic_form_on_random_inputs() {
        use rand::rngs::StdRng;
        use rand::{Rng, SeedableRng};
        let mut rng = StdRng::seed_from_u64(23);
        for _ in 0..400 {
            let (p, s) = [(2, 2), (2, 3), (3, 2), (5, 2)][rng.random_range(0..4)];
            let modulus = Modulus::new(p, s).unwrap();
            let n = rng.random_range(1..5usize);
            let rows = rng.random_range(1..=4usize);
            let raw: Vec<Vec<i64>> = (0..rows)
                .map(|_| (0..n).map(|_| rng.random_range(0..modulus.q() as i64)).collect())
                .collect();
            let g = GeneratorMatrix::from_rows(modulus, n, &raw).unwrap();
            let expected = match systematic_form(&g) {
                Ok(sys) => sys.rank(),
                Err(_) => 0,
            };
            assert_eq!(span_rank(g.rows(), modulus), expected);
        }
    }

    /// The reduction cap holds for every block, not just the worked case.
    #[test]
    fn reduction_cap_on_random_systematic_inputs() {
        use rand::rngs::StdRng;
        use rand::{Rng, SeedableRng};
        let mut rng = StdRng::seed_from_u64(11);
        for _ in 0..200 {
            let (p, s) = [(2, 3), (3, 2), (3, 3), (5, 2)][rng.random_range(0..4)];
            let modulus = Modulus::new(p, s).unwrap();
            let n = rng.random_range(2..6usize);
            let rows = rng.random_range(1..=n.min(3));
            let raw: Vec<Vec<i64>> = (0..rows)
                .map(|_| (0..n).map(|_| rng.random_range(0..modulus.q() as i64)).collect())
                .collect();
            let g = GeneratorMatrix::from_rows(modulus, n, &raw).unwrap();
            let Ok(sys) = systematic_form(&g) else { continue };
            let red = reduced_systematic_form(&sys.matrix).unwrap();
            let vals = check_systematic(&red).unwrap();
            for t in 0..red.row_count() {
                let cap = modulus.p_pow(vals[t]);
                for r in 0..t {
                    assert!(
                        modulus.lee_weight_of(red.entry(r, t)) <= cap,
                        "entry above pivot p^{} exceeds cap",
                        vals[t]
                    );
                }
            }
            assert_eq!(reduced_systematic_form(&red).unwrap(), red);
            assert_eq!(span_closure_naive(&sys.matrix), span_closure_naive(&red));
        }
    }
}
