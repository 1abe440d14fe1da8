//! Riemann-Roch for tensor products of symmetric powers of `Omega` on a
//! surface.
//!
//! With Chern roots `a, b` of `Omega`, `S^{l_1} Omega (x) ... (x) S^{l_k} Omega`
//! splits into line bundles `p a + q b`, one per tuple `0 <= i_j <= l_j`, with
//! `p = sum i_j` and `q = L - p` where `L = sum l_j`. For each line bundle
//! `chi = L.(L - K)/2 + chi(O)`. Summing over the tuples only needs the power
//! sums `S1 = sum p`, `S2 = sum p^2`, `S11 = sum p q` and the count `T`, and
//! the multiset of `p` is symmetric under `p <-> q`, so the result is a
//! polynomial in `c1^2 = (a + b)^2` and `c2 = ab`.

use num_bigint::BigInt;
use rayon::prelude::*;

use super::compositions::{compositions, Composition};
use super::CoeffForm;
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PowerSums {
    /// Number of line bundles (the rank).
    pub count: BigInt,
    pub s1: BigInt,
    pub s2: BigInt,
    pub s11: BigInt,
}

/// Power sums of the weight multiset `{p}` over all index tuples, computed by
/// convolving the per-factor moments rather than enumerating tuples.
pub fn power_sums(parts: &[u64]) -> PowerSums {
    let mut count = BigInt::from(1);
    let mut s1 = BigInt::from(0);
    let mut s2 = BigInt::from(0);
    for &l in parts {
        let l = BigInt::from(l);
        // moments of i over 0..=l
        let c = &l + 1;
        let m1 = &l * &c / 2;
        let m2 = &l * &c * (2 * &l + 1) / 6;
        s2 = &s2 * &c + 2 * &s1 * &m1 + &count * &m2;
        s1 = &s1 * &c + &count * &m1;
        count *= c;
    }
    let total = BigInt::from(parts.iter().sum::<u64>());
    let s11 = total * &s1 - &s2;
    PowerSums { count, s1, s2, s11 }
}

impl PowerSums {
    /// `(1/2)[(S2 - S1)(c1^2 - 2 c2) + 2 (S11 - S1) c2] + T chi(O)`.
    pub fn euler_characteristic(&self) -> CoeffForm {
        let a2 = Rational::from(&self.s2 - &self.s1) / Rational::from(2);
        let ab = Rational::from(&self.s11 - &self.s1);
        CoeffForm {
            beta: &ab - Rational::from(2) * &a2,
            alpha: a2,
            gamma: Rational::from(self.count.clone()),
        }
    }
}

pub fn chi_graded_term(comp: &Composition) -> CoeffForm {
    power_sums(comp.parts()).euler_characteristic()
}

/// Exact `chi(E^GG_{k,N} Omega)` summed over the graded pieces, in parallel
/// chunks.
pub fn chi_jet_exact(k: u32, n: u64) -> CoeffForm {
    compositions(k, n)
        .par_iter()
        .with_min_len(64)
        .map(chi_graded_term)
        .reduce(CoeffForm::zero, |a, b| a + b)
}

pub fn chi_jet_exact_sequential(k: u32, n: u64) -> CoeffForm {
    compositions(k, n).iter().map(chi_graded_term).sum()
}
