//! q-combinatorics and the exhaustive iterators every brute-force check is
//! built on.

mod codewords;
mod subspaces;

pub use codewords::{enumerate_codewords, Codewords};
pub(crate) use codewords::RankScanner;
pub use subspaces::{
    enumerate_subspaces, enumerate_subspaces_all, pivot_sets, subspaces_with_pivots, Subspaces,
};

use num_bigint::BigUint;
use num_traits::{One, Zero};

fn pow(q: u64, e: usize) -> BigUint {
    num_traits::pow(BigUint::from(q), e)
}

/// `prod_{i=0}^{count-1} (q^top - q^i)`.
pub(crate) fn falling_q_product(q: u64, top: usize, count: usize) -> BigUint {
    let qt = pow(q, top);
    let mut out = BigUint::one();
    for i in 0..count {
        let qi = pow(q, i);
        if qi > qt {
            return BigUint::zero();
        }
        out *= &qt - qi;
    }
    out
}

/// Gaussian binomial `[n choose r]_q`: the number of `r`-dimensional
/// subspaces of `F_q^n`. Zero when `r > n`.
pub fn gaussian_binomial(n: usize, r: usize, q: u64) -> BigUint {
    if r > n {
        return BigUint::zero();
    }
    let num = falling_q_product(q, n, r);
    let den = falling_q_product(q, r, r);
    debug_assert!((&num % &den).is_zero());
    num / den
}

/// Number of `n x m` matrices over `F_q` of rank exactly `r`.
pub fn count_rank_matrices(n: usize, m: usize, r: usize, q: u64) -> BigUint {
    if r > n.min(m) {
        return BigUint::zero();
    }
    gaussian_binomial(n, r, q) * falling_q_product(q, m, r)
}

/// `|GL_n(F_q)|`.
pub fn general_linear_order(n: usize, q: u64) -> BigUint {
    falling_q_product(q, n, n)
}

/// Total number of subspaces of `F_q^l`.
pub fn subspace_count(l: usize, q: u64) -> BigUint {
    (0..=l).map(|d| gaussian_binomial(l, d, q)).sum()
}

pub(crate) fn q_power(q: u64, e: usize) -> BigUint {
    pow(q, e)
}
