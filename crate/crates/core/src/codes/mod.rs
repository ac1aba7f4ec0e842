//! Rank-metric codes: `F_q`-linear spaces of `n x m` matrices.
//!
//! A code is stored as a canonical [`Subspace`] of `F_q^{nm}` under the
//! row-major vectorization. With that identification the trace form
//! `Tr(M N^t)` is the ordinary dot product, so the dual code is the
//! orthogonal complement of the stored subspace.
//!
//! Predicates that depend on which side is longer (the anticode bound divides
//! by it) use `max(n, m)` and `min(n, m)`, so a code and its transpose always
//! get the same answers.

mod gallery;

pub use gallery::{
    construct_cshk, dually_qoac_form, gallery, split_row_family, upper_triangular_f2,
    zero_diagonal_family, CanonicalForm, GalleryCode,
};

use num_bigint::BigUint;
use serde::Serialize;

use crate::combinatorics::{q_power, RankScanner};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{mat_support, Matrix, Subspace};
use crate::Budget;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RankMetricCode {
    n: usize,
    m: usize,
    space: Subspace,
}

impl std::fmt::Debug for RankMetricCode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "RankMetricCode(F_{}, {}x{}, dim {})",
            self.field().q(),
            self.n,
            self.m,
            self.dim()
        )
    }
}

impl RankMetricCode {
    pub fn zero(field: &Field, n: usize, m: usize) -> RankMetricCode {
        RankMetricCode {
            n,
            m,
            space: Subspace::zero(field, n * m),
        }
    }

    pub fn full(field: &Field, n: usize, m: usize) -> RankMetricCode {
        RankMetricCode {
            n,
            m,
            space: Subspace::full(field, n * m),
        }
    }

    pub fn from_space(space: Subspace, n: usize, m: usize) -> Result<RankMetricCode> {
        if space.ambient_dim() != n * m {
            return Err(Error::Shape(format!(
                "subspace of F_q^{} is not a space of {n}x{m} matrices",
                space.ambient_dim()
            )));
        }
        Ok(RankMetricCode { n, m, space })
    }

    /// The span of the given matrices. An empty list gives the zero code.
    pub fn from_matrices(field: &Field, n: usize, m: usize, matrices: &[Matrix]) -> Result<RankMetricCode> {
        let mut rows = Vec::with_capacity(matrices.len());
        for a in matrices {
            if a.nrows() != n || a.ncols() != m {
                return Err(Error::Shape(format!(
                    "{}x{} matrix in a code of {n}x{m} matrices",
                    a.nrows(),
                    a.ncols()
                )));
            }
            if **a.field() != **field {
                return Err(Error::Shape("matrix over a different field".into()));
            }
            rows.push(a.vectorize().to_vec());
        }
        Ok(RankMetricCode {
            n,
            m,
            space: Subspace::from_elements(field, n * m, rows)?,
        })
    }

    pub fn field(&self) -> &Field {
        self.space.field()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    /// `min(n, m)`.
    pub fn short_side(&self) -> usize {
        self.n.min(self.m)
    }

    /// `max(n, m)`, the divisor in the anticode bound.
    pub fn long_side(&self) -> usize {
        self.n.max(self.m)
    }

    pub fn space(&self) -> &Subspace {
        &self.space
    }

    /// Number of codewords, `q^dim`.
    pub fn size(&self) -> BigUint {
        q_power(self.field().q() as u64, self.dim())
    }

    pub fn is_zero(&self) -> bool {
        self.space.is_zero()
    }

    pub fn basis_matrices(&self) -> Vec<Matrix> {
        self.space
            .basis()
            .iter()
            .map(|v| Matrix::from_vector(self.field(), self.n, self.m, v).expect("shape"))
            .collect()
    }

    pub fn contains(&self, a: &Matrix) -> bool {
        a.nrows() == self.n && a.ncols() == self.m && self.space.contains(a.vectorize())
    }

    pub fn is_subcode_of(&self, other: &RankMetricCode) -> bool {
        self.n == other.n && self.m == other.m && self.space.is_subspace_of(&other.space)
    }

    fn check_shape(&self, other: &RankMetricCode) -> Result<()> {
        if self.n != other.n || self.m != other.m {
            return Err(Error::Shape(format!(
                "codes of {}x{} and {}x{} matrices",
                self.n, self.m, other.n, other.m
            )));
        }
        Ok(())
    }

    /// Dual code for the trace form `(M, N) -> Tr(M N^t)`.
    pub fn dual(&self) -> RankMetricCode {
        RankMetricCode {
            n: self.n,
            m: self.m,
            space: self.space.orthogonal(),
        }
    }

    pub fn intersect(&self, other: &RankMetricCode) -> Result<RankMetricCode> {
        self.check_shape(other)?;
        Ok(RankMetricCode {
            n: self.n,
            m: self.m,
            space: self.space.intersect(&other.space)?,
        })
    }

    pub fn sum(&self, other: &RankMetricCode) -> Result<RankMetricCode> {
        self.check_shape(other)?;
        Ok(RankMetricCode {
            n: self.n,
            m: self.m,
            space: self.space.sum(&other.space)?,
        })
    }

    /// The code of transposed matrices, in `F_q^{m x n}`.
    pub fn transpose(&self) -> RankMetricCode {
        let mats: Vec<Matrix> = self.basis_matrices().iter().map(Matrix::transpose).collect();
        RankMetricCode::from_matrices(self.field(), self.m, self.n, &mats).expect("shape")
    }
}

/// The span of `matrices`, all `n x m` over `field`.
pub fn code_from_matrices(field: &Field, n: usize, m: usize, matrices: &[Matrix]) -> Result<RankMetricCode> {
    RankMetricCode::from_matrices(field, n, m, matrices)
}

/// `C(V) = C ∩ Mat(V)`: the codewords whose column space lies in `V`.
pub fn subcode_supported(code: &RankMetricCode, v: &Subspace) -> Result<RankMetricCode> {
    if v.ambient_dim() != code.n() {
        return Err(Error::Shape(format!(
            "support space in F_q^{} for a code of {}x{} matrices",
            v.ambient_dim(),
            code.n(),
            code.m()
        )));
    }
    code.intersect(&mat_support(v, code.m()))
}

/// Maximum rank of a codeword, by exhaustive enumeration.
pub fn maxrk(code: &RankMetricCode, budget: &Budget) -> Result<usize> {
    let scanner = RankScanner::new(code, budget)?;
    Ok(scanner.max_rank_capped(scanner.max_possible_rank()))
}

/// Minimum rank of a nonzero codeword. Undefined for the zero code.
pub fn min_distance(code: &RankMetricCode, budget: &Budget) -> Result<usize> {
    if code.is_zero() {
        return Err(Error::ZeroCode);
    }
    RankScanner::new(code, budget)?
        .min_nonzero_rank()
        .ok_or(Error::ZeroCode)
}

fn ceil_div(a: usize, b: usize) -> usize {
    a.div_ceil(b)
}

/// Meets the anticode bound: `dim = max(n,m) * maxrk`.
pub fn is_optimal_anticode(code: &RankMetricCode, budget: &Budget) -> Result<bool> {
    if code.dim() % code.long_side() != 0 {
        return Ok(false);
    }
    let target = code.dim() / code.long_side();
    let scanner = RankScanner::new(code, budget)?;
    Ok(scanner.max_rank_capped(target + 1) == target)
}

fn qoac_from(dim: usize, long: usize, maxrk: usize) -> bool {
    dim % long != 0 && maxrk == ceil_div(dim, long)
}

/// Quasi optimal anticode: `max(n,m)` does not divide the dimension and the
/// maximum rank is the least the anticode bound allows.
pub fn is_qoac(code: &RankMetricCode, budget: &Budget) -> Result<bool> {
    let long = code.long_side();
    if code.dim() % long == 0 {
        return Ok(false);
    }
    let target = ceil_div(code.dim(), long);
    // maxrk >= target always; one codeword above it settles the question.
    let scanner = RankScanner::new(code, budget)?;
    Ok(scanner.max_rank_capped(target + 1) == target)
}

/// Both `C` and `C^⊥` are quasi optimal anticodes.
///
/// Decided twice from the same two enumerations: from the definition, and
/// from `maxrk(C) + maxrk(C^⊥) = min(n,m) + 1`. The two must agree.
pub fn is_dually_qoac(code: &RankMetricCode, budget: &Budget) -> Result<bool> {
    let d = DualityProfile::compute(code, budget)?;
    Ok(d.is_dually_qoac())
}

/// Maximum ranks of a code and its dual, with the predicates they decide.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DualityProfile {
    pub dim: usize,
    pub dual_dim: usize,
    pub maxrk: usize,
    pub dual_maxrk: usize,
    pub short: usize,
    pub long: usize,
}

impl DualityProfile {
    pub fn compute(code: &RankMetricCode, budget: &Budget) -> Result<DualityProfile> {
        let dual = code.dual();
        Ok(DualityProfile {
            dim: code.dim(),
            dual_dim: dual.dim(),
            maxrk: maxrk(code, budget)?,
            dual_maxrk: maxrk(&dual, budget)?,
            short: code.short_side(),
            long: code.long_side(),
        })
    }

    pub fn maxrk_sum(&self) -> usize {
        self.maxrk + self.dual_maxrk
    }

    pub fn is_optimal_anticode(&self) -> bool {
        self.dim == self.long * self.maxrk
    }

    pub fn is_qoac(&self) -> bool {
        qoac_from(self.dim, self.long, self.maxrk)
    }

    pub fn dual_is_qoac(&self) -> bool {
        qoac_from(self.dual_dim, self.long, self.dual_maxrk)
    }

    pub fn is_dually_qoac(&self) -> bool {
        let by_definition = self.is_qoac() && self.dual_is_qoac();
        let by_sum = self.maxrk_sum() == self.short + 1;
        assert_eq!(
            by_definition, by_sum,
            "dually-qOAC routes disagree: {self:?}"
        );
        by_definition
    }
}

/// Summary of a code's basic parameters and predicates.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CodeReport {
    pub n: usize,
    pub m: usize,
    pub dim: usize,
    pub maxrk: usize,
    pub min_dist: Option<usize>,
    pub dual_maxrk: usize,
    pub is_optimal_anticode: bool,
    pub is_qoac: bool,
    pub is_dually_qoac: bool,
    /// `max(n,m) (min(n,m) - d + 1) - dim`; absent for the zero code.
    pub singleton_slack: Option<i64>,
    /// `max(n,m) maxrk - dim`.
    pub anticode_slack: i64,
}

pub fn code_report(code: &RankMetricCode, budget: &Budget) -> Result<CodeReport> {
    let d = DualityProfile::compute(code, budget)?;
    let min_dist = if code.is_zero() {
        None
    } else {
        Some(min_distance(code, budget)?)
    };
    let long = code.long_side() as i64;
    let dim = code.dim() as i64;
    Ok(CodeReport {
        n: code.n(),
        m: code.m(),
        dim: code.dim(),
        maxrk: d.maxrk,
        min_dist,
        dual_maxrk: d.dual_maxrk,
        is_optimal_anticode: d.is_optimal_anticode(),
        is_qoac: d.is_qoac(),
        is_dually_qoac: d.is_dually_qoac(),
        singleton_slack: min_dist.map(|dd| long * (code.short_side() as i64 - dd as i64 + 1) - dim),
        anticode_slack: long * d.maxrk as i64 - dim,
    })
}

/// Closed-form test for `C_{s,h,k}` being a quasi optimal anticode:
/// `0 < min(h,k) <= floor((m-1) / (m - max(h,k)))`.
pub fn cshk_is_qoac(s: usize, h: usize, k: usize, m: usize, n: usize) -> Result<bool> {
    if s + h == 0 || s + h > n || k >= m {
        return Err(Error::Parameters(format!(
            "need 0 < s+h <= n and k < m (s={s}, h={h}, k={k}, n={n}, m={m})"
        )));
    }
    let (lo, hi) = (h.min(k), h.max(k));
    if lo == 0 || hi >= m {
        // hi >= m means m divides hk
        return Ok(false);
    }
    Ok(lo <= (m - 1) / (m - hi))
}
