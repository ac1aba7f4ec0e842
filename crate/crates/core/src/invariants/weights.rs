use serde::Serialize;

use crate::codes::RankMetricCode;
use crate::combinatorics::enumerate_subspaces_all;
use crate::error::{Error, Result};
use crate::linalg::{mat_support, mat_support_rows};
use crate::Budget;

/// `a_1, ..., a_dim`, stored zero-based.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct WeightProfile(Vec<usize>);

impl WeightProfile {
    pub fn new(a: Vec<usize>) -> WeightProfile {
        debug_assert!(a.windows(2).all(|w| w[0] <= w[1]));
        WeightProfile(a)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `a_i`, one-based like the definition.
    pub fn a(&self, i: usize) -> usize {
        self.0[i - 1]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }
}

/// Generalized weights straight from the definition.
///
/// Optimal anticodes are exactly `Mat(V)` (and, for square matrices, also
/// `Mat(U)^t`); for rectangular `n > m` only the transposed family. An
/// anticode built on a `d`-dimensional support has `dim = max(n,m) d`, so
/// `a_i` is the least `d` whose best anticode meets `C` in dimension `>= i`.
pub fn generalized_weights_oracle(code: &RankMetricCode, budget: &Budget) -> Result<WeightProfile> {
    let (n, m) = (code.n(), code.m());
    let short = n.min(m);
    let mut best = vec![0usize; short + 1];
    let field = code.field();
    if n <= m {
        for v in enumerate_subspaces_all(field, n, budget.subspaces)? {
            let d = v.dim();
            let meet = code.intersect(&mat_support(&v, m))?.dim();
            best[d] = best[d].max(meet);
        }
    }
    if n >= m {
        for u in enumerate_subspaces_all(field, m, budget.subspaces)? {
            let d = u.dim();
            let meet = code.intersect(&mat_support_rows(&u, n))?.dim();
            best[d] = best[d].max(meet);
        }
    }
    assert_eq!(best[short], code.dim());
    let a = (1..=code.dim())
        .map(|i| (0..=short).find(|&d| best[d] >= i).expect("full space meets C in C"))
        .collect();
    Ok(WeightProfile::new(a))
}

/// Closed form for `Mat(<e_1..e_s>) + Mat(<e_1..e_k>)^t`:
/// `a = i` on `(i-1)m+1 ..= im` for `i <= s`, then `a = s+i` on
/// `sm+(i-1)k+1 ..= sm+ik` for `i <= n-s`.
pub fn generalized_weights_closed_form(s: usize, k: usize, n: usize, m: usize) -> Result<WeightProfile> {
    if s > n || k > m {
        return Err(Error::Parameters(format!(
            "need s <= n and k <= m (s={s}, k={k}, n={n}, m={m})"
        )));
    }
    let mut a = Vec::with_capacity(s * m + (n - s) * k);
    for i in 1..=s {
        a.extend(std::iter::repeat(i).take(m));
    }
    for i in 1..=n - s {
        a.extend(std::iter::repeat(s + i).take(k));
    }
    Ok(WeightProfile::new(a))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::{code_from_matrices, construct_cshk};
    use crate::field::{Field, FieldElement, FieldSpec};
    use crate::linalg::{Matrix, Subspace};

    fn f(q: u32) -> Field {
        FieldSpec::with_order(q).unwrap().into_shared()
    }

    #[test]
    fn cshk_111_has_weights_112() {
        let c = construct_cshk(&f(2), 2, 2, 1, 1, 1).unwrap();
        let w = generalized_weights_oracle(&c, &Budget::default()).unwrap();
        assert_eq!(w.as_slice(), &[1, 1, 2]);
        assert_eq!(generalized_weights_closed_form(1, 1, 2, 2).unwrap().as_slice(), &[1, 1, 2]);
    }

    #[test]
    fn support_space_weights() {
        let f2 = f(2);
        for n in 1..=3 {
            for m in n..=3 {
                for r in 0..=n {
                    let c = mat_support(&Subspace::coordinate(&f2, n, 0..r), m);
                    let w = generalized_weights_oracle(&c, &Budget::default()).unwrap();
                    let expect: Vec<usize> = (1..=r).flat_map(|i| std::iter::repeat(i).take(m)).collect();
                    assert_eq!(w.as_slice(), &expect[..]);
                }
            }
        }
    }

    #[test]
    fn one_dimensional_code_has_weight_equal_to_rank() {
        let f2 = f(2);
        for r in 1..=3 {
            let a = Matrix::from_fn(&f2, 3, 3, |i, j| FieldElement((i == j && i < r) as u16));
            let c = code_from_matrices(&f2, 3, 3, &[a]).unwrap();
            assert_eq!(generalized_weights_oracle(&c, &Budget::default()).unwrap().as_slice(), &[r]);
        }
    }

    #[test]
    fn closed_form_shapes() {
        assert_eq!(
            generalized_weights_closed_form(2, 1, 3, 3).unwrap().as_slice(),
            &[1, 1, 1, 2, 2, 2, 3]
        );
        assert_eq!(
            generalized_weights_closed_form(0, 3, 2, 3).unwrap().as_slice(),
            &[1, 1, 1, 2, 2, 2]
        );
        assert!(generalized_weights_closed_form(3, 1, 2, 3).is_err());
    }

    #[test]
    fn tall_codes_use_transposed_anticodes() {
        let f2 = f(2);
        let c = construct_cshk(&f2, 2, 3, 1, 1, 1).unwrap();
        let w = generalized_weights_oracle(&c, &Budget::default()).unwrap();
        let wt = generalized_weights_oracle(&c.transpose(), &Budget::default()).unwrap();
        assert_eq!(w, wt);
    }
}
