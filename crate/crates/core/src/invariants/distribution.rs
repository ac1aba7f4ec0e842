use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use crate::codes::RankMetricCode;
use crate::combinatorics::{count_rank_matrices, falling_q_product, gaussian_binomial, q_power, RankScanner};
use crate::error::{Error, Result};
use crate::Budget;

/// `A_r` for `r = 0..=min(n,m)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankDistribution(Vec<BigUint>);

impl RankDistribution {
    pub fn new(counts: Vec<BigUint>) -> RankDistribution {
        RankDistribution(counts)
    }

    pub fn counts(&self) -> &[BigUint] {
        &self.0
    }

    pub fn get(&self, r: usize) -> BigUint {
        self.0.get(r).cloned().unwrap_or_default()
    }

    pub fn total(&self) -> BigUint {
        self.0.iter().sum()
    }

    /// Largest `r` with `A_r > 0`.
    pub fn max_rank(&self) -> usize {
        self.0.iter().rposition(|c| !c.is_zero()).unwrap_or(0)
    }
}

impl Serialize for RankDistribution {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.0.iter().map(|c| c.to_string()))
    }
}

/// Rank histogram over every codeword.
pub fn rank_distribution_oracle(code: &RankMetricCode, budget: &Budget) -> Result<RankDistribution> {
    let hist = RankScanner::new(code, budget)?.histogram();
    Ok(RankDistribution(hist.into_iter().map(BigUint::from).collect()))
}

/// Rank distribution of `C_{s, n-s, k}`, `n <= m`.
pub fn rank_distribution_closed_form(s: usize, k: usize, n: usize, m: usize, q: u64) -> Result<RankDistribution> {
    if s > n || k > m || n > m {
        return Err(Error::Parameters(format!(
            "need s <= n <= m and k <= m (s={s}, k={k}, n={n}, m={m})"
        )));
    }
    let h = n - s;
    let mut a = vec![BigUint::zero(); n + 1];
    a[0] = BigUint::one();
    for (r, slot) in a.iter_mut().enumerate().take((s + k).min(n) + 1).skip(1) {
        let mut total = count_rank_matrices(s, m, r, q);
        for i in 1..=h.min(k).min(r) {
            total += gaussian_binomial(k, i, q)
                * gaussian_binomial(m - i, r - i, q)
                * q_power(q, s * i)
                * falling_q_product(q, h, i)
                * falling_q_product(q, s, r - i);
        }
        *slot = total;
    }
    Ok(RankDistribution(a))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::construct_cshk;
    use crate::field::{Field, FieldSpec};

    fn f(q: u32) -> Field {
        FieldSpec::with_order(q).unwrap().into_shared()
    }

    fn ints(d: &RankDistribution) -> Vec<u64> {
        d.counts().iter().map(|c| u64::try_from(c).unwrap()).collect()
    }

    #[test]
    fn oracle_examples() {
        let f2 = f(2);
        let b = Budget::default();
        assert_eq!(ints(&rank_distribution_oracle(&RankMetricCode::zero(&f2, 2, 2), &b).unwrap()), [1, 0, 0]);
        assert_eq!(ints(&rank_distribution_oracle(&RankMetricCode::full(&f2, 2, 2), &b).unwrap()), [1, 9, 6]);
        let c = construct_cshk(&f2, 2, 2, 1, 1, 1).unwrap();
        assert_eq!(ints(&rank_distribution_oracle(&c, &b).unwrap()), [1, 5, 2]);
    }

    #[test]
    fn closed_form_examples() {
        assert_eq!(ints(&rank_distribution_closed_form(1, 1, 2, 2, 2).unwrap()), [1, 5, 2]);
        // k = 0: the code is Mat of an s-dimensional space
        for r in 0..=2 {
            assert_eq!(
                rank_distribution_closed_form(2, 0, 3, 3, 2).unwrap().get(r),
                count_rank_matrices(2, 3, r, 2)
            );
        }
        // s = 0, k = m: the whole space
        for r in 0..=3 {
            assert_eq!(
                rank_distribution_closed_form(0, 3, 3, 3, 2).unwrap().get(r),
                count_rank_matrices(3, 3, r, 2)
            );
        }
        assert!(rank_distribution_closed_form(1, 1, 3, 2, 2).is_err());
    }

    #[test]
    fn closed_form_matches_oracle_small() {
        let b = Budget::default();
        for q in [2u32, 3] {
            let field = f(q);
            for n in 1..=3 {
                for m in n..=3 {
                    for s in 0..=n {
                        for k in 0..=m {
                            let h = n - s;
                            if s + h == 0 {
                                continue;
                            }
                            let c = construct_cshk(&field, n, m, s, h, k).unwrap();
                            if c.dim() > 12 {
                                continue;
                            }
                            let oracle = rank_distribution_oracle(&c, &b).unwrap();
                            let closed = rank_distribution_closed_form(s, k, n, m, q as u64).unwrap();
                            assert_eq!(oracle, closed, "q={q} n={n} m={m} s={s} k={k}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn serializes_as_strings() {
        let d = rank_distribution_closed_form(1, 1, 2, 2, 2).unwrap();
        assert_eq!(serde_json::to_string(&d).unwrap(), r#"["1","5","2"]"#);
    }
}
