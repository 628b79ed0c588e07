//! Slow reference implementations used as independent test oracles.
//!
//! These deliberately avoid the normal-form machinery: spans are closed
//! by repeated addition, supports are read off enumerated word lists.
//! Keep inputs tiny; costs are exponential.

use crate::matrix::GeneratorMatrix;
use crate::ring::Modulus;
use std::collections::BTreeSet;

/// Every linear combination of the rows, by direct enumeration of all
/// coefficient tuples in [0, q)^rows. Exponential in the row count.
pub fn span_closure_naive(m: &GeneratorMatrix) -> BTreeSet<Vec<u64>> {
    let modulus = m.modulus();
    let q = modulus.q();
    let n = m.n();
    let mut out = BTreeSet::new();
    let rows = m.rows();
    let combos = (q as u128).pow(rows.len() as u32);
    assert!(combos <= 1 << 24, "naive span closure is for tiny inputs");
    let mut coeffs = vec![0u64; rows.len()];
    loop {
        let mut word = vec![0u64; n];
        for (c, row) in coeffs.iter().zip(rows) {
            for (w, &x) in word.iter_mut().zip(row) {
                *w = (*w + c * x) % q;
            }
        }
        out.insert(word);
        let mut i = rows.len();
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            coeffs[i] += 1;
            if coeffs[i] < q {
                break;
            }
            coeffs[i] = 0;
        }
    }
}

/// Per-position maximum Lee weight over a list of words.
pub fn join_support_of_words(modulus: Modulus, n: usize, words: &BTreeSet<Vec<u64>>) -> Vec<u64> {
    let mut out = vec![0u64; n];
    for w in words {
        for (m, &x) in out.iter_mut().zip(w) {
            *m = (*m).max(modulus.lee_weight_of(x));
        }
    }
    out
}

/// Per-position minimum nonzero Lee weight over a list of words
/// (0 where the position is identically zero).
pub fn meet_support_of_words(modulus: Modulus, n: usize, words: &BTreeSet<Vec<u64>>) -> Vec<u64> {
    let mut out = vec![0u64; n];
    for w in words {
        for (m, &x) in out.iter_mut().zip(w) {
            if x != 0 {
                let lw = modulus.lee_weight_of(x);
                *m = if *m == 0 { lw } else { (*m).min(lw) };
            }
        }
    }
    out
}
