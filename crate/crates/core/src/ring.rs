//! Exact arithmetic over the integer residue ring Z/p^sZ.
//!
//! Everything downstream works with canonical representatives in `[0, q)`
//! where `q = p^s`. The Lee weight of a residue `a` is `min(a, q - a)`,
//! and the largest Lee weight inside the ideal generated by `p^i` is
//! `M_i = floor(p^(s-i)/2) * p^i`.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// Ring parameters (p, s) together with the derived modulus q = p^s and
/// the maximal Lee weight M = floor(q/2).
///
/// Moduli are small copyable values; q is capped at 2^31 so that all
/// weight sums fit comfortably in 64-bit arithmetic.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Modulus {
    p: u64,
    s: u32,
    q: u64,
}

const MODULUS_LIMIT: u64 = 1 << 31;

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

impl Modulus {
    pub fn new(p: u64, s: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if s == 0 {
            return Err(Error::ZeroExponent);
        }
        let mut q: u64 = 1;
        for _ in 0..s {
            q = q
                .checked_mul(p)
                .filter(|&q| q <= MODULUS_LIMIT)
                .ok_or(Error::ModulusTooLarge { p, s })?;
        }
        Ok(Modulus { p, s, q })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn s(&self) -> u32 {
        self.s
    }

    /// The modulus q = p^s.
    pub fn q(&self) -> u64 {
        self.q
    }

    /// Maximal Lee weight of any residue, M = floor(q/2).
    pub fn max_lee_weight(&self) -> u64 {
        self.q / 2
    }

    /// p^i for 0 <= i <= s.
    pub fn p_pow(&self, i: u32) -> u64 {
        debug_assert!(i <= self.s);
        self.p.pow(i)
    }

    /// Maximal Lee weight inside the ideal generated by p^i:
    /// M_i = floor(p^(s-i)/2) * p^i. In particular M_0 = M and M_s = 0.
    pub fn ideal_max_lee_weight(&self, i: u32) -> Result<u64> {
        if i > self.s {
            return Err(Error::IndexOutOfRange { index: i, max: self.s });
        }
        Ok(self.p.pow(self.s - i) / 2 * self.p.pow(i))
    }

    /// Canonical representative of an arbitrary signed integer.
    pub fn reduce(&self, value: i64) -> Residue {
        let q = self.q as i64;
        Residue {
            value: value.rem_euclid(q) as u64,
            modulus: *self,
        }
    }

    /// Residue from a nonnegative value (reduced mod q).
    pub fn residue(&self, value: u64) -> Residue {
        Residue {
            value: value % self.q,
            modulus: *self,
        }
    }

    /// Largest i <= s with p^i dividing `value`; the valuation of 0 is s.
    pub fn valuation(&self, value: u64) -> u32 {
        debug_assert!(value < self.q);
        if value == 0 {
            return self.s;
        }
        let mut v = 0;
        let mut rest = value;
        while rest % self.p == 0 {
            rest /= self.p;
            v += 1;
        }
        v
    }

    /// Lee weight of a canonical value: min(a, q - a).
    pub fn lee_weight_of(&self, value: u64) -> u64 {
        debug_assert!(value < self.q);
        value.min(self.q - value)
    }

    /// Centered representative in (-q/2, q/2].
    pub fn centered_of(&self, value: u64) -> i64 {
        debug_assert!(value < self.q);
        if value * 2 > self.q {
            value as i64 - self.q as i64
        } else {
            value as i64
        }
    }

    /// Multiplicative inverse of a unit, by the extended Euclidean algorithm.
    pub fn unit_inverse(&self, value: u64) -> Option<u64> {
        if value % self.p == 0 {
            return None;
        }
        let (mut r0, mut r1) = (self.q as i64, (value % self.q) as i64);
        let (mut t0, mut t1) = (0i64, 1i64);
        while r1 != 0 {
            let quot = r0 / r1;
            (r0, r1) = (r1, r0 - quot * r1);
            (t0, t1) = (t1, t0 - quot * t1);
        }
        debug_assert_eq!(r0, 1);
        Some(t0.rem_euclid(self.q as i64) as u64)
    }

    /// Lee weight of a slice of canonical values.
    pub fn lee_weight_slice(&self, values: &[u64]) -> u64 {
        values.iter().map(|&v| self.lee_weight_of(v)).sum()
    }

    /// Hamming weight of a slice of canonical values.
    pub fn hamming_weight_slice(&self, values: &[u64]) -> u64 {
        values.iter().filter(|&&v| v != 0).count() as u64
    }
}

/// A canonical residue in [0, q) with its modulus attached.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Residue {
    value: u64,
    modulus: Modulus,
}

impl Residue {
    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0
    }
}

/// Lee weight of a residue: min(a, q - a). Always in [0, M].
pub fn lee_weight(a: Residue) -> u64 {
    a.modulus.lee_weight_of(a.value)
}

/// Largest i <= s with p^i dividing the residue; the valuation of 0 is s.
pub fn p_valuation(a: Residue) -> u32 {
    a.modulus.valuation(a.value)
}

/// Centered representative in (-q/2, q/2], e.g. 20 over Z/27 maps to -7.
pub fn centered(a: Residue) -> i64 {
    a.modulus.centered_of(a.value)
}

/// Sum of entry Lee weights. Errors when the entries disagree on the modulus.
pub fn lee_weight_vector(x: &[Residue]) -> Result<u64> {
    check_common_modulus(x)?;
    Ok(x.iter().map(|&a| lee_weight(a)).sum())
}

/// Number of nonzero entries. Errors when the entries disagree on the modulus.
pub fn hamming_weight_vector(x: &[Residue]) -> Result<u64> {
    check_common_modulus(x)?;
    Ok(x.iter().filter(|a| !a.is_zero()).count() as u64)
}

fn check_common_modulus(x: &[Residue]) -> Result<()> {
    if let Some(first) = x.first() {
        if x.iter().any(|a| a.modulus != first.modulus) {
            return Err(Error::MixedModuli);
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn m(p: u64, s: u32) -> Modulus {
        Modulus::new(p, s).unwrap()
    }

    #[test]
    fn modulus_construction_checks() {
        assert!(Modulus::new(4, 1).is_err());
        assert!(Modulus::new(1, 1).is_err());
        assert!(Modulus::new(3, 0).is_err());
        assert!(Modulus::new(2, 40).is_err());
        let z9 = m(3, 2);
        assert_eq!(z9.q(), 9);
        assert_eq!(z9.max_lee_weight(), 4);
    }

    #[test]
    fn lee_weight_examples() {
        assert_eq!(lee_weight(m(3, 2).residue(0)), 0);
        assert_eq!(lee_weight(m(3, 2).residue(5)), 4);
        assert_eq!(lee_weight(m(5, 1).residue(2)), 2);
    }

    #[test]
    fn lee_weight_vector_examples() {
        let z5 = m(5, 1);
        let v: Vec<_> = [1, 2].iter().map(|&x| z5.residue(x)).collect();
        assert_eq!(lee_weight_vector(&v).unwrap(), 3);

        let z9 = m(3, 2);
        let zeros: Vec<_> = (0..7).map(|_| z9.residue(0)).collect();
        assert_eq!(lee_weight_vector(&zeros).unwrap(), 0);

        let w: Vec<_> = [1, 0, 0, 8].iter().map(|&x| z9.residue(x)).collect();
        assert_eq!(lee_weight_vector(&w).unwrap(), 2);
        assert_eq!(hamming_weight_vector(&w).unwrap(), 2);
    }

    #[test]
    fn hamming_weight_vector_examples() {
        let z5 = m(5, 1);
        let v: Vec<_> = [1, 2].iter().map(|&x| z5.residue(x)).collect();
        assert_eq!(hamming_weight_vector(&v).unwrap(), 2);
        assert_eq!(hamming_weight_vector(&[]).unwrap(), 0);
    }

    #[test]
    fn mixed_moduli_rejected() {
        let v = [m(3, 2).residue(1), m(5, 1).residue(1)];
        assert!(matches!(lee_weight_vector(&v), Err(Error::MixedModuli)));
        assert!(matches!(hamming_weight_vector(&v), Err(Error::MixedModuli)));
    }

    #[test]
    fn valuation_examples() {
        let z27 = m(3, 3);
        assert_eq!(p_valuation(z27.residue(18)), 2);
        assert_eq!(p_valuation(z27.residue(0)), 3);
        assert_eq!(p_valuation(z27.residue(10)), 0);
    }

    #[test]
    fn ideal_max_lee_weight_examples() {
        assert_eq!(m(3, 2).ideal_max_lee_weight(0).unwrap(), 4);
        assert_eq!(m(3, 2).ideal_max_lee_weight(1).unwrap(), 3);
        assert_eq!(m(5, 3).ideal_max_lee_weight(2).unwrap(), 50);
        assert_eq!(m(5, 3).ideal_max_lee_weight(3).unwrap(), 0);
        assert!(m(3, 2).ideal_max_lee_weight(3).is_err());
    }

    #[test]
    fn centered_representatives() {
        let z27 = m(3, 3);
        assert_eq!(centered(z27.residue(20)), -7);
        assert_eq!(centered(z27.residue(13)), 13);
        assert_eq!(centered(z27.residue(14)), -13);
        let z4 = m(2, 2);
        assert_eq!(centered(z4.residue(2)), 2);
        assert_eq!(centered(z4.residue(3)), -1);
    }

    #[test]
    fn unit_inverse_works() {
        let z9 = m(3, 2);
        assert_eq!(z9.unit_inverse(2), Some(5));
        assert_eq!(z9.unit_inverse(3), None);
        for u in (1..9).filter(|u| u % 3 != 0) {
            let inv = z9.unit_inverse(u).unwrap();
            assert_eq!(u * inv % 9, 1);
        }
    }

    /// The M_i ladder: strictly decreasing for odd p, non-increasing for
    /// p = 2 (where M_0 = ... = M_{s-1}), and always ending in M_s = 0.
    #[test]
    fn ideal_weight_ladder_monotone() {
        for (p, s) in [(2, 3), (2, 4), (3, 3), (5, 2), (7, 2), (3, 1)] {
            let md = m(p, s);
            let ladder: Vec<u64> = (0..=s).map(|i| md.ideal_max_lee_weight(i).unwrap()).collect();
            assert_eq!(*ladder.last().unwrap(), 0);
            for w in ladder.windows(2) {
                if p == 2 && w[1] != 0 {
                    assert!(w[0] >= w[1], "p=2 ladder must be non-increasing: {ladder:?}");
                } else {
                    assert!(w[0] > w[1], "ladder not strictly decreasing: {ladder:?}");
                }
            }
        }
    }

    fn arb_modulus() -> impl Strategy<Value = Modulus> {
        prop_oneof![
            (1u32..=5).prop_map(|s| m(2, s)),
            (1u32..=3).prop_map(|s| m(3, s)),
            (1u32..=2).prop_map(|s| m(5, s)),
            Just(m(7, 1)),
            Just(m(11, 1)),
        ]
    }

    proptest! {
        #[test]
        fn lee_weight_symmetry(md in arb_modulus(), a in 0u64..1000) {
            let a = md.residue(a);
            let neg = md.reduce(-(a.value() as i64));
            prop_assert_eq!(lee_weight(a), lee_weight(neg));
        }

        #[test]
        fn lee_weight_triangle(md in arb_modulus(), a in 0u64..1000, b in 0u64..1000) {
            let a = md.residue(a);
            let b = md.residue(b);
            let sum = md.residue(a.value() + b.value());
            prop_assert!(lee_weight(sum) <= lee_weight(a) + lee_weight(b));
        }

        #[test]
        fn lee_weight_positive_definite(md in arb_modulus(), a in 0u64..1000) {
            let a = md.residue(a);
            let w = lee_weight(a);
            prop_assert!(w <= md.max_lee_weight());
            prop_assert_eq!(w == 0, a.is_zero());
        }

        /// A nonzero residue of valuation i has Lee weight between p^i and M_i.
        #[test]
        fn lee_weight_bounded_by_valuation(md in arb_modulus(), a in 1u64..1000) {
            let a = md.residue(a);
            prop_assume!(!a.is_zero());
            let i = p_valuation(a);
            prop_assert!(lee_weight(a) >= md.p_pow(i));
            prop_assert!(lee_weight(a) <= md.ideal_max_lee_weight(i).unwrap());
        }
    }
}
