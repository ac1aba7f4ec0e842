//! Named code constructions.
//!
//! Block layouts are written top to bottom; "row i, columns a..b free" means
//! those entries range over all of `F_q` independently.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::field::{Field, FieldElement, FieldSpec};
use crate::linalg::Matrix;
use crate::Budget;

use super::{maxrk, RankMetricCode};

fn params(msg: String) -> Error {
    Error::Parameters(msg)
}

/// Span of the unit matrices `E_{i,j}` for the given positions.
fn from_cells(field: &Field, n: usize, m: usize, cells: impl IntoIterator<Item = (usize, usize)>) -> RankMetricCode {
    let mats: Vec<Matrix> = cells.into_iter().map(|(i, j)| Matrix::unit(field, n, m, i, j)).collect();
    RankMetricCode::from_matrices(field, n, m, &mats).expect("cells lie inside the shape")
}

/// `C_{s,h,k}`: the first `s` rows free, the next `h` rows free in their
/// first `k` columns, everything else zero.
pub fn construct_cshk(field: &Field, n: usize, m: usize, s: usize, h: usize, k: usize) -> Result<RankMetricCode> {
    if k > m || s + h == 0 || s + h > n {
        return Err(params(format!(
            "C_{{s,h,k}} needs k <= m and 0 < s+h <= n (s={s}, h={h}, k={k}, n={n}, m={m})"
        )));
    }
    let top = (0..s).flat_map(|i| (0..m).map(move |j| (i, j)));
    let band = (s..s + h).flat_map(|i| (0..k).map(move |j| (i, j)));
    Ok(from_cells(field, n, m, top.chain(band)))
}

/// The family `C_k`, `0 <= k <= m - rho`, of dimension `alpha m + rho`:
///
/// ```text
/// rows 1..alpha-1 : free
/// row  alpha      : columns 1..m-k free
/// row  alpha+1    : columns 1..rho+k free
/// remaining rows  : zero
/// ```
///
/// Requires `m >= max(2, n)`, `0 < alpha < n`, `0 < rho < m`.
/// `C_k` and `C_{m-rho-k}` are equivalent by swapping the two partial rows.
pub fn split_row_family(field: &Field, n: usize, m: usize, alpha: usize, rho: usize, k: usize) -> Result<RankMetricCode> {
    if m < 2 || m < n || alpha == 0 || alpha >= n || rho == 0 || rho >= m || k > m - rho {
        return Err(params(format!(
            "split-row family needs m >= max(2,n), 0 < alpha < n, 0 < rho < m, k <= m - rho \
             (n={n}, m={m}, alpha={alpha}, rho={rho}, k={k})"
        )));
    }
    let full = (0..alpha - 1).flat_map(|i| (0..m).map(move |j| (i, j)));
    let u = (0..m - k).map(|j| (alpha - 1, j));
    let w = (0..rho + k).map(|j| (alpha, j));
    Ok(from_cells(field, n, m, full.chain(u).chain(w)))
}

/// The four canonical shapes of a dually quasi optimal anticode of
/// dimension `alpha m + rho`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CanonicalForm {
    /// `alpha` free rows, then one row free in its first `rho` columns.
    A,
    /// `alpha` free rows, then `rho` rows free in the first column only.
    /// Needs `rho <= n - alpha`.
    B,
    /// `alpha + rho + 1 - m` free rows, then `m - rho` rows free in their
    /// first `m - 1` columns. Needs `rho >= m - alpha - 1`.
    C,
    /// All `n` rows free in the first `alpha + 1` columns.
    /// Needs `m = n + 1` and `rho = n - alpha`.
    D,
}

impl CanonicalForm {
    pub const ALL: [CanonicalForm; 4] = [CanonicalForm::A, CanonicalForm::B, CanonicalForm::C, CanonicalForm::D];

    /// `(s, h, k)` with the form equal to `C_{s,h,k}`, if its constraints hold.
    pub fn cshk_parameters(self, n: usize, m: usize, alpha: usize, rho: usize) -> Option<(usize, usize, usize)> {
        if alpha >= n || n > m || rho == 0 || rho >= m {
            return None;
        }
        match self {
            CanonicalForm::A => Some((alpha, 1, rho)),
            CanonicalForm::B => (rho <= n - alpha).then_some((alpha, rho, 1)),
            CanonicalForm::C => (alpha + rho + 1 >= m).then(|| (alpha + rho + 1 - m, m - rho, m - 1)),
            CanonicalForm::D => (m == n + 1 && rho == n - alpha).then_some((0, n, alpha + 1)),
        }
    }
}

impl fmt::Display for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            CanonicalForm::A => "a",
            CanonicalForm::B => "b",
            CanonicalForm::C => "c",
            CanonicalForm::D => "d",
        };
        f.write_str(s)
    }
}

impl FromStr for CanonicalForm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "a" => Ok(CanonicalForm::A),
            "b" => Ok(CanonicalForm::B),
            "c" => Ok(CanonicalForm::C),
            "d" => Ok(CanonicalForm::D),
            other => Err(params(format!("unknown canonical form {other:?} (expected a, b, c or d)"))),
        }
    }
}

/// Canonical dually quasi optimal anticode of the given form.
pub fn dually_qoac_form(
    field: &Field,
    n: usize,
    m: usize,
    alpha: usize,
    rho: usize,
    form: CanonicalForm,
) -> Result<RankMetricCode> {
    let (s, h, k) = form.cshk_parameters(n, m, alpha, rho).ok_or_else(|| {
        params(format!(
            "form ({form}) does not apply to n={n}, m={m}, alpha={alpha}, rho={rho}"
        ))
    })?;
    construct_cshk(field, n, m, s, h, k)
}

/// A quasi optimal anticode whose dual is not one. With `t = m - rho` and
/// `r = alpha + 1 - t`:
///
/// ```text
/// rows 1..t        : t x t block with zero diagonal | free t x rho block
/// rows t+1..t+r    : free
/// remaining rows   : zero
/// ```
///
/// Requires `1 <= alpha <= n - 1` and `m - alpha - 1 <= rho <= m - 2`.
pub fn zero_diagonal_family(field: &Field, n: usize, m: usize, alpha: usize, rho: usize) -> Result<RankMetricCode> {
    if alpha == 0 || alpha >= n || m < 2 || rho + 2 > m || rho + alpha + 1 < m {
        return Err(params(format!(
            "zero-diagonal family needs 1 <= alpha <= n-1 and m-alpha-1 <= rho <= m-2 \
             (n={n}, m={m}, alpha={alpha}, rho={rho})"
        )));
    }
    let t = m - rho;
    let r = alpha + 1 - t;
    let block = (0..t).flat_map(|i| (0..m).filter(move |&j| j != i).map(move |j| (i, j)));
    let rest = (t..t + r).flat_map(|i| (0..m).map(move |j| (i, j)));
    Ok(from_cells(field, n, m, block.chain(rest)))
}

/// The binary `4 x 4` code of dimension 9
///
/// ```text
/// a1 a4 a5    a6
/// 0  a2 a7    a8
/// 0  0  a2+a3 a9
/// 0  0  0     a3
/// ```
pub fn upper_triangular_f2() -> RankMetricCode {
    let field = FieldSpec::prime(2).expect("F_2").into_shared();
    let one = FieldElement::ONE;
    let mk = |cells: &[(usize, usize)]| {
        let mut a = Matrix::zeros(&field, 4, 4);
        for &(i, j) in cells {
            a.set(i, j, one);
        }
        a
    };
    let gens = [
        mk(&[(0, 0)]),
        mk(&[(1, 1), (2, 2)]),
        mk(&[(2, 2), (3, 3)]),
        mk(&[(0, 1)]),
        mk(&[(0, 2)]),
        mk(&[(0, 3)]),
        mk(&[(1, 2)]),
        mk(&[(1, 3)]),
        mk(&[(2, 3)]),
    ];
    RankMetricCode::from_matrices(&field, 4, 4, &gens).expect("shape")
}

/// A named construction with its parameters.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GalleryCode {
    Cshk { n: usize, m: usize, s: usize, h: usize, k: usize },
    SplitRow { n: usize, m: usize, alpha: usize, rho: usize, k: usize },
    DuallyQoac { form: CanonicalForm, n: usize, m: usize, alpha: usize, rho: usize },
    ZeroDiagonal { n: usize, m: usize, alpha: usize, rho: usize },
    UpperTriangularF2,
}

struct Expected {
    dim: usize,
    maxrk: usize,
    dual_maxrk: Option<usize>,
}

impl GalleryCode {
    fn expected(&self) -> Expected {
        match *self {
            GalleryCode::Cshk { s, h, k, .. } => Expected {
                dim: s * (self.shape().1) + h * k,
                maxrk: s + h.min(k),
                dual_maxrk: None,
            },
            GalleryCode::SplitRow { m, alpha, rho, .. } | GalleryCode::ZeroDiagonal { m, alpha, rho, .. } => Expected {
                dim: alpha * m + rho,
                maxrk: alpha + 1,
                dual_maxrk: None,
            },
            GalleryCode::DuallyQoac { n, m, alpha, rho, .. } => Expected {
                dim: alpha * m + rho,
                maxrk: alpha + 1,
                dual_maxrk: Some(n - alpha),
            },
            GalleryCode::UpperTriangularF2 => Expected {
                dim: 9,
                maxrk: 3,
                dual_maxrk: None,
            },
        }
    }

    fn shape(&self) -> (usize, usize) {
        match *self {
            GalleryCode::Cshk { n, m, .. }
            | GalleryCode::SplitRow { n, m, .. }
            | GalleryCode::DuallyQoac { n, m, .. }
            | GalleryCode::ZeroDiagonal { n, m, .. } => (n, m),
            GalleryCode::UpperTriangularF2 => (4, 4),
        }
    }
}

/// Builds a gallery code and checks its dimension and maximum rank (and
/// dual maximum rank where one is known) whenever enumeration fits `budget`.
pub fn gallery(field: &Field, code: &GalleryCode, budget: &Budget) -> Result<RankMetricCode> {
    let c = match *code {
        GalleryCode::Cshk { n, m, s, h, k } => construct_cshk(field, n, m, s, h, k)?,
        GalleryCode::SplitRow { n, m, alpha, rho, k } => split_row_family(field, n, m, alpha, rho, k)?,
        GalleryCode::DuallyQoac { form, n, m, alpha, rho } => dually_qoac_form(field, n, m, alpha, rho, form)?,
        GalleryCode::ZeroDiagonal { n, m, alpha, rho } => zero_diagonal_family(field, n, m, alpha, rho)?,
        GalleryCode::UpperTriangularF2 => {
            if field.q() != 2 {
                return Err(params("the upper-triangular code is defined over F_2 only".into()));
            }
            upper_triangular_f2()
        }
    };
    let exp = code.expected();
    assert_eq!(c.dim(), exp.dim, "{code:?}: dimension");
    let fits = |x: &RankMetricCode| budget.check_codewords(&x.size()).is_ok();
    if fits(&c) {
        let r = maxrk(&c, budget)?;
        if r != exp.maxrk {
            return Err(Error::Mismatch(format!(
                "{code:?} has maximum rank {r}, expected {}",
                exp.maxrk
            )));
        }
    }
    if let Some(dr) = exp.dual_maxrk {
        let dual = c.dual();
        if fits(&dual) {
            let r = maxrk(&dual, budget)?;
            if r != dr {
                return Err(Error::Mismatch(format!(
                    "{code:?} has dual maximum rank {r}, expected {dr}"
                )));
            }
        }
    }
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::{is_dually_qoac, is_qoac, DualityProfile};

    fn f(q: u32) -> Field {
        FieldSpec::with_order(q).unwrap().into_shared()
    }

    #[test]
    fn cshk_examples() {
        let f2 = f(2);
        let b = Budget::default();
        let c = construct_cshk(&f2, 2, 2, 1, 1, 1).unwrap();
        assert_eq!((c.dim(), maxrk(&c, &b).unwrap()), (3, 2));
        let c = construct_cshk(&f2, 3, 3, 0, 3, 1).unwrap();
        let first_col = crate::linalg::mat_support_rows(&crate::linalg::Subspace::coordinate(&f2, 3, [0]), 3);
        assert_eq!(c, first_col);
        assert_eq!(maxrk(&c, &b).unwrap(), 1);
        let c = construct_cshk(&f2, 2, 2, 2, 0, 0).unwrap();
        assert_eq!(c, RankMetricCode::full(&f2, 2, 2));
        assert!(construct_cshk(&f2, 2, 2, 0, 0, 1).is_err());
        assert!(construct_cshk(&f2, 2, 2, 2, 1, 1).is_err());
        assert!(construct_cshk(&f2, 2, 2, 1, 1, 3).is_err());
    }

    #[test]
    fn cshk_dimension_and_maxrank_formula() {
        let b = Budget::default();
        for q in [2, 3] {
            let field = f(q);
            for n in 1..=3 {
                for m in n..=3 {
                    for s in 0..=n {
                        for h in 0..=n - s {
                            for k in 0..=m {
                                let Ok(c) = construct_cshk(&field, n, m, s, h, k) else { continue };
                                assert_eq!(c.dim(), s * m + h * k);
                                assert_eq!(maxrk(&c, &b).unwrap(), s + h.min(k));
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn canonical_form_small_examples() {
        let f2 = f(2);
        let b = Budget::default();
        let a = dually_qoac_form(&f2, 2, 2, 1, 1, CanonicalForm::A).unwrap();
        assert_eq!(a.dim(), 3);
        assert!(is_dually_qoac(&a, &b).unwrap());
        assert!(dually_qoac_form(&f2, 2, 3, 1, 2, CanonicalForm::B).is_err());
        assert!(dually_qoac_form(&f2, 2, 4, 0, 1, CanonicalForm::C).is_err());
        assert!(dually_qoac_form(&f2, 2, 2, 1, 1, CanonicalForm::D).is_err());
    }

    #[test]
    fn every_applicable_canonical_form_is_dually_qoac() {
        let b = Budget::default();
        for q in [2, 3] {
            let field = f(q);
            for n in 1..=3 {
                for m in n.max(2)..=4 {
                    for alpha in 0..n {
                        for rho in 1..m {
                            for form in CanonicalForm::ALL {
                                let Ok(c) = dually_qoac_form(&field, n, m, alpha, rho, form) else { continue };
                                if q == 3 && c.dim().max(n * m - c.dim()) > 12 {
                                    continue;
                                }
                                let d = DualityProfile::compute(&c, &b).unwrap();
                                assert_eq!(c.dim(), alpha * m + rho);
                                assert_eq!(d.maxrk, alpha + 1, "{form} n={n} m={m} a={alpha} r={rho}");
                                assert_eq!(d.dual_maxrk, n - alpha);
                                assert!(d.is_dually_qoac());
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn split_row_family_shape() {
        let f2 = f(2);
        let c0 = split_row_family(&f2, 2, 3, 1, 1, 0).unwrap();
        let c2 = split_row_family(&f2, 2, 3, 1, 1, 2).unwrap();
        assert_eq!(c0.dim(), 4);
        assert_eq!(c2.dim(), 4);
        assert_ne!(c0, c2);
        assert!(split_row_family(&f2, 2, 3, 1, 1, 3).is_err());
        assert!(split_row_family(&f2, 2, 3, 0, 1, 0).is_err());
        assert!(split_row_family(&f2, 3, 2, 1, 1, 0).is_err());
    }

    #[test]
    fn zero_diagonal_small() {
        let f2 = f(2);
        let b = Budget::default();
        let c = zero_diagonal_family(&f2, 2, 3, 1, 1).unwrap();
        assert_eq!(c.dim(), 4);
        assert!(is_qoac(&c, &b).unwrap());
        let d = DualityProfile::compute(&c, &b).unwrap();
        assert!(!d.dual_is_qoac());
        // dual: diagonal 2x2 block, so maxrank m + n - rho - alpha - 1 = 2
        assert_eq!(d.dual_maxrk, 2);
        assert!(zero_diagonal_family(&f2, 2, 3, 1, 2).is_err());
        assert!(zero_diagonal_family(&f2, 3, 4, 1, 1).is_err());
    }

    #[test]
    fn upper_triangular_code() {
        let c = upper_triangular_f2();
        assert_eq!(c.dim(), 9);
        assert_eq!(maxrk(&c, &Budget::default()).unwrap(), 3);
        assert!(gallery(&f(3), &GalleryCode::UpperTriangularF2, &Budget::default()).is_err());
    }

    #[test]
    fn gallery_validates() {
        let f2 = f(2);
        let b = Budget::default();
        let g = GalleryCode::DuallyQoac { form: CanonicalForm::A, n: 2, m: 3, alpha: 1, rho: 1 };
        assert_eq!(gallery(&f2, &g, &b).unwrap().dim(), 4);
        let g = GalleryCode::ZeroDiagonal { n: 3, m: 4, alpha: 2, rho: 2 };
        assert_eq!(gallery(&f2, &g, &b).unwrap().dim(), 10);
    }
}
