//! Linear codes over Z/p^sZ: normalized representation, codeword
//! enumeration, filtration and torsion subcodes, Lee isometries, and the
//! JSON interchange format.
//!
//! A `LinearCode` stores its generator matrix in systematic form together
//! with the column permutation chosen during normalization. Every public
//! operation speaks the *original* coordinate order of the input; the
//! permuted view is only exposed where the statistics are defined relative
//! to the normalization information set (see [`LinearCode::mu_support_subtype`]
//! and the filtration profile in the bounds module).

use crate::error::{Error, Result};
use crate::matrix::{reduced_systematic_form, systematic_form, GeneratorMatrix, SystematicForm};
use crate::ring::Modulus;
use num::rational::Ratio;
use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

/// A linear code, normalized at construction.
#[derive(Clone, Debug)]
pub struct LinearCode {
    sys: SystematicForm,
    support_subtype: Vec<usize>,
    /// Minimal p-valuation of every systematic column (s for zero columns).
    col_valuations: Vec<u32>,
}

impl LinearCode {
    /// Normalizes a generator matrix. Errors on a zero span.
    pub fn from_generators(generators: &GeneratorMatrix) -> Result<Self> {
        let sys = systematic_form(generators)?;
        Ok(Self::from_systematic(sys))
    }

    /// The zero code of length n: one codeword, rank 0.
    pub fn zero(modulus: Modulus, n: usize) -> Self {
        let matrix = GeneratorMatrix::from_rows(modulus, n, &[]).expect("empty rows");
        Self::from_systematic(SystematicForm {
            matrix,
            col_permutation: (0..n).collect(),
            pivot_valuations: Vec::new(),
        })
    }

    fn from_systematic(sys: SystematicForm) -> Self {
        let modulus = sys.matrix.modulus();
        let n = sys.matrix.n();
        let col_valuations: Vec<u32> = (0..n)
            .map(|c| {
                sys.matrix
                    .rows()
                    .iter()
                    .map(|row| modulus.valuation(row[c]))
                    .min()
                    .unwrap_or(modulus.s())
            })
            .collect();
        let mut support_subtype = vec![0usize; modulus.s() as usize + 1];
        for &v in &col_valuations {
            support_subtype[v as usize] += 1;
        }
        LinearCode {
            sys,
            support_subtype,
            col_valuations,
        }
    }

    pub fn modulus(&self) -> Modulus {
        self.sys.matrix.modulus()
    }

    pub fn n(&self) -> usize {
        self.sys.matrix.n()
    }

    /// Rank K: the number of generator rows.
    pub fn rank(&self) -> usize {
        self.sys.rank()
    }

    pub fn is_zero_code(&self) -> bool {
        self.rank() == 0
    }

    /// Subtype (k_0, ..., k_{s-1}).
    pub fn subtype(&self) -> Vec<usize> {
        self.sys.subtype()
    }

    /// Pivot valuation of each generator row, non-decreasing.
    pub fn pivot_valuations(&self) -> &[u32] {
        &self.sys.pivot_valuations
    }

    /// The dimension k = sum (s-i)/s * k_i, a rational with |C| = p^(s*k).
    pub fn z_dimension(&self) -> Ratio<u64> {
        let s = self.modulus().s() as u64;
        let num: u64 = self
            .sys
            .pivot_valuations
            .iter()
            .map(|&v| s - v as u64)
            .sum();
        Ratio::new(num, s)
    }

    /// Free means rank equals dimension, i.e. every pivot is a unit.
    pub fn is_free(&self) -> bool {
        self.sys.pivot_valuations.iter().all(|&v| v == 0)
    }

    /// Largest index i with k_i nonzero; None for the zero code.
    pub fn sigma(&self) -> Option<u32> {
        self.sys.pivot_valuations.iter().max().copied()
    }

    /// Support subtype (n_0, ..., n_s); n_s counts identically-zero columns.
    pub fn support_subtype(&self) -> &[usize] {
        &self.support_subtype
    }

    /// Non-degenerate means no identically-zero column.
    pub fn is_degenerate(&self) -> bool {
        self.support_subtype[self.modulus().s() as usize] > 0
    }

    /// Generator matrix in systematic form (permuted coordinates).
    pub fn generator_matrix(&self) -> &GeneratorMatrix {
        &self.sys.matrix
    }

    /// `col_permutation()[j]` is the original column shown at systematic
    /// position j.
    pub fn col_permutation(&self) -> &[usize] {
        &self.sys.col_permutation
    }

    /// Minimal p-valuation of each systematic column.
    pub fn column_valuations(&self) -> &[u32] {
        &self.col_valuations
    }

    /// Systematic generator rows carried back to the original coordinates.
    pub fn original_generators(&self) -> GeneratorMatrix {
        let n = self.n();
        let rows: Vec<Vec<i64>> = self
            .sys
            .matrix
            .rows()
            .iter()
            .map(|row| {
                let mut out = vec![0i64; n];
                for (j, &x) in row.iter().enumerate() {
                    out[self.sys.col_permutation[j]] = x as i64;
                }
                out
            })
            .collect();
        GeneratorMatrix::from_rows(self.modulus(), n, &rows).expect("row lengths match")
    }

    /// Systematic form with the entries above every pivot centered modulo
    /// the pivot scale.
    pub fn reduced_generator_matrix(&self) -> GeneratorMatrix {
        reduced_systematic_form(&self.sys.matrix).expect("stored matrix is systematic")
    }

    /// Support subtype of the last n-K columns of the reduced systematic
    /// matrix, (mu_0, ..., mu_s). Defined relative to the normalization
    /// information set.
    pub fn mu_support_subtype(&self) -> Vec<usize> {
        let modulus = self.modulus();
        let reduced = self.reduced_generator_matrix();
        let mut mu = vec![0usize; modulus.s() as usize + 1];
        for c in self.rank()..self.n() {
            let v = reduced
                .rows()
                .iter()
                .map(|row| modulus.valuation(row[c]))
                .min()
                .unwrap_or(modulus.s());
            mu[v as usize] += 1;
        }
        mu
    }

    /// Number of codewords, p^(s*k) = product of the pivot coefficient
    /// ranges. Saturates at u128::MAX.
    pub fn codeword_count(&self) -> u128 {
        let modulus = self.modulus();
        let mut count: u128 = 1;
        for &v in &self.sys.pivot_valuations {
            let range = modulus.p_pow(modulus.s() - v) as u128;
            count = count.saturating_mul(range);
        }
        count
    }

    /// Streams every codeword exactly once, in the original coordinates.
    /// Errors when the code has more than `cap` codewords.
    pub fn enumerate_codewords(&self, cap: u128) -> Result<Codewords<'_>> {
        let count = self.codeword_count();
        if count > cap {
            return Err(Error::EnumerationCapExceeded { count, cap });
        }
        Ok(Codewords::new(self))
    }

    /// Materialized codeword list (original coordinates).
    pub fn codewords(&self, cap: u128) -> Result<Vec<Vec<u64>>> {
        Ok(self.enumerate_codewords(cap)?.collect())
    }

    /// Membership test by reduction against the pivot columns.
    pub fn contains(&self, word: &[u64]) -> bool {
        if word.len() != self.n() {
            return false;
        }
        let modulus = self.modulus();
        let q = modulus.q();
        // Into systematic coordinates.
        let mut w: Vec<u64> = (0..self.n())
            .map(|j| word[self.sys.col_permutation[j]] % q)
            .collect();
        for (t, &v) in self.sys.pivot_valuations.iter().enumerate() {
            let scale = modulus.p_pow(v);
            if w[t] % scale != 0 {
                return false;
            }
            let coeff = w[t] / scale;
            if coeff != 0 {
                let row = self.sys.matrix.row(t);
                for (x, &g) in w.iter_mut().zip(row) {
                    *x = (*x + q - coeff * g % q) % q;
                }
            }
        }
        w.iter().all(|&x| x == 0)
    }

    /// The subcode of codewords with every entry divisible by p^i,
    /// generated by `p^max(i - j, 0)` times each pivot-valuation-j row.
    /// Rank is preserved.
    pub fn filtration_subcode(&self, i: u32) -> Result<LinearCode> {
        let modulus = self.modulus();
        if i >= modulus.s() {
            return Err(Error::IndexOutOfRange {
                index: i,
                max: modulus.s() - 1,
            });
        }
        if self.is_zero_code() {
            return Ok(self.clone());
        }
        let q = modulus.q() as i64;
        let scaled: Vec<Vec<i64>> = self
            .sys
            .matrix
            .rows()
            .iter()
            .zip(&self.sys.pivot_valuations)
            .map(|(row, &v)| {
                let factor = modulus.p_pow(i.saturating_sub(v)) as i64;
                let mut out = vec![0i64; self.n()];
                for (j, &x) in row.iter().enumerate() {
                    out[self.sys.col_permutation[j]] = x as i64 * factor % q;
                }
                out
            })
            .collect();
        let g = GeneratorMatrix::from_rows(modulus, self.n(), &scaled)?;
        LinearCode::from_generators(&g)
    }

    /// The bottom filtration subcode, C intersected with the ideal
    /// generated by p^(s-1).
    pub fn socle(&self) -> Result<LinearCode> {
        self.filtration_subcode(self.modulus().s() - 1)
    }

    /// The socle divided by p^(s-1), viewed as a code over the prime field.
    pub fn socle_fp_image(&self) -> Result<LinearCode> {
        let modulus = self.modulus();
        let fp = Modulus::new(modulus.p(), 1)?;
        let socle = self.socle()?;
        if socle.is_zero_code() {
            return Ok(LinearCode::zero(fp, self.n()));
        }
        let scale = modulus.p_pow(modulus.s() - 1);
        let rows: Vec<Vec<i64>> = socle
            .original_generators()
            .rows()
            .iter()
            .map(|row| row.iter().map(|&x| (x / scale) as i64).collect())
            .collect();
        let g = GeneratorMatrix::from_rows(fp, self.n(), &rows)?;
        LinearCode::from_generators(&g)
    }

    /// The code reduced modulo p^(s-i), over the smaller modulus. Lifting
    /// back with a factor p^i lands inside the i-th filtration subcode.
    pub fn torsion_code(&self, i: u32) -> Result<LinearCode> {
        let modulus = self.modulus();
        if i >= modulus.s() {
            return Err(Error::IndexOutOfRange {
                index: i,
                max: modulus.s() - 1,
            });
        }
        if i == 0 {
            return Ok(self.clone());
        }
        let smaller = Modulus::new(modulus.p(), modulus.s() - i)?;
        let rows: Vec<Vec<i64>> = self
            .original_generators()
            .rows()
            .iter()
            .map(|row| row.iter().map(|&x| (x % smaller.q()) as i64).collect())
            .collect();
        let g = GeneratorMatrix::from_rows(smaller, self.n(), &rows)?;
        if g.is_zero() {
            return Ok(LinearCode::zero(smaller, self.n()));
        }
        LinearCode::from_generators(&g)
    }

    /// The image code under a signed coordinate permutation.
    pub fn apply_isometry(&self, iso: &Isometry) -> Result<LinearCode> {
        if iso.n() != self.n() {
            return Err(Error::IsometryLengthMismatch {
                expected: self.n(),
                found: iso.n(),
            });
        }
        if self.is_zero_code() {
            return Ok(self.clone());
        }
        let modulus = self.modulus();
        let rows: Vec<Vec<i64>> = self
            .original_generators()
            .rows()
            .iter()
            .map(|row| iso.apply_word(modulus, row).iter().map(|&x| x as i64).collect())
            .collect();
        let g = GeneratorMatrix::from_rows(modulus, self.n(), &rows)?;
        LinearCode::from_generators(&g)
    }

    /// Codeword-set equality via the canonical span form in the original
    /// coordinates.
    pub fn same_codeword_set(&self, other: &LinearCode) -> bool {
        self.modulus() == other.modulus()
            && self.n() == other.n()
            && crate::matrix::howell_form(&self.original_generators())
                == crate::matrix::howell_form(&other.original_generators())
    }
}

/// Iterator over all codewords, odometer-style over the pivot coefficient
/// ranges, yielding original-coordinate words.
pub struct Codewords<'a> {
    code: &'a LinearCode,
    ranges: Vec<u64>,
    coeffs: Vec<u64>,
    current: Vec<u64>,
    done: bool,
}

impl<'a> Codewords<'a> {
    fn new(code: &'a LinearCode) -> Self {
        let modulus = code.modulus();
        let ranges = code
            .pivot_valuations()
            .iter()
            .map(|&v| modulus.p_pow(modulus.s() - v))
            .collect();
        Codewords {
            code,
            ranges,
            coeffs: vec![0; code.rank()],
            current: vec![0; code.n()],
            done: false,
        }
    }

    fn add_row(&mut self, r: usize, times: u64) {
        let q = self.code.modulus().q();
        let row = self.code.sys.matrix.row(r);
        let perm = &self.code.sys.col_permutation;
        for (j, &x) in row.iter().enumerate() {
            let c = &mut self.current[perm[j]];
            *c = (*c + times % q * x) % q;
        }
    }
}

impl Iterator for Codewords<'_> {
    type Item = Vec<u64>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.done {
            return None;
        }
        let word = self.current.clone();
        // Advance the odometer, updating the running sum.
        let q = self.code.modulus().q();
        let mut r = self.coeffs.len();
        loop {
            if r == 0 {
                self.done = true;
                break;
            }
            r -= 1;
            if self.coeffs[r] + 1 < self.ranges[r] {
                self.coeffs[r] += 1;
                self.add_row(r, 1);
                break;
            }
            // Reset digit r: subtract its accumulated contribution.
            let times = self.coeffs[r];
            self.coeffs[r] = 0;
            if times > 0 {
                self.add_row(r, q - times % q);
            }
        }
        Some(word)
    }
}

/// A linear Lee isometry: a coordinate permutation combined with signs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Isometry {
    /// perm[j] is the source position whose value lands at position j.
    perm: Vec<usize>,
    /// One of +1/-1 per position.
    signs: Vec<i8>,
}

impl Isometry {
    pub fn new(perm: Vec<usize>, signs: Vec<i8>) -> Result<Self> {
        let n = perm.len();
        if signs.len() != n {
            return Err(Error::IsometryLengthMismatch {
                expected: n,
                found: signs.len(),
            });
        }
        let mut seen = vec![false; n];
        for &p in &perm {
            if p >= n || seen[p] {
                return Err(Error::InvalidParameter(
                    "isometry permutation is not a bijection".into(),
                ));
            }
            seen[p] = true;
        }
        if signs.iter().any(|&s| s != 1 && s != -1) {
            return Err(Error::InvalidParameter("isometry signs must be +1 or -1".into()));
        }
        Ok(Isometry { perm, signs })
    }

    pub fn identity(n: usize) -> Self {
        Isometry {
            perm: (0..n).collect(),
            signs: vec![1; n],
        }
    }

    pub fn random<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Self {
        let mut perm: Vec<usize> = (0..n).collect();
        perm.shuffle(rng);
        let signs = (0..n).map(|_| if rng.random::<bool>() { 1 } else { -1 }).collect();
        Isometry { perm, signs }
    }

    pub fn n(&self) -> usize {
        self.perm.len()
    }

    pub fn permutation(&self) -> &[usize] {
        &self.perm
    }

    pub fn signs(&self) -> &[i8] {
        &self.signs
    }

    /// Image of a single word: out[j] = signs[j] * word[perm[j]].
    pub fn apply_word(&self, modulus: Modulus, word: &[u64]) -> Vec<u64> {
        let q = modulus.q();
        (0..word.len())
            .map(|j| {
                let x = word[self.perm[j]] % q;
                if self.signs[j] == 1 || x == 0 {
                    x
                } else {
                    q - x
                }
            })
            .collect()
    }
}

/// On-disk JSON description of a code: ring parameters, length, and
/// generator rows. Entries are reduced mod p^s on load.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct CodeFile {
    pub p: u64,
    pub s: u32,
    pub n: usize,
    pub generators: Vec<Vec<i64>>,
}

impl CodeFile {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn to_code(&self) -> Result<LinearCode> {
        let modulus = Modulus::new(self.p, self.s)?;
        let g = GeneratorMatrix::from_rows(modulus, self.n, &self.generators)?;
        LinearCode::from_generators(&g)
    }
}
