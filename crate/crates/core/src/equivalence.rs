//! Isometry equivalence at small parameters.
//!
//! Every linear rank isometry of `F_q^{n x m}` is `A -> N A M`, or
//! `A -> N A^t M` when `n = m`, with `N`, `M` invertible. All searches here
//! run over that group exhaustively and are guarded by `Budget::group`.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigUint;
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::codes::{dually_qoac_form, CanonicalForm, DualityProfile, RankMetricCode};
use crate::combinatorics::{enumerate_subspaces, gaussian_binomial, general_linear_order};
use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};
use crate::invariants::{generalized_weights_oracle, rank_distribution_oracle};
use crate::linalg::{mat_support, mat_support_rows, Matrix, Subspace};
use crate::Budget;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Isometry {
    pub left: Matrix,
    pub right: Matrix,
    pub transpose: bool,
}

impl Serialize for Isometry {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("Isometry", 3)?;
        st.serialize_field("N", &self.left.to_index_rows())?;
        st.serialize_field("M", &self.right.to_index_rows())?;
        st.serialize_field("transpose", &self.transpose)?;
        st.end()
    }
}

impl Isometry {
    pub fn new(left: Matrix, right: Matrix, transpose: bool) -> Result<Isometry> {
        if left.nrows() != left.ncols() || right.nrows() != right.ncols() {
            return Err(Error::Shape("isometry factors must be square".into()));
        }
        if transpose && left.nrows() != right.nrows() {
            return Err(Error::Shape("transposing isometries need n = m".into()));
        }
        if !left.is_invertible() || !right.is_invertible() {
            return Err(Error::Parameters("isometry factors must be invertible".into()));
        }
        Ok(Isometry { left, right, transpose })
    }

    pub fn identity(field: &Field, n: usize, m: usize) -> Isometry {
        Isometry {
            left: Matrix::identity(field, n),
            right: Matrix::identity(field, m),
            transpose: false,
        }
    }

    pub fn apply(&self, a: &Matrix) -> Result<Matrix> {
        let a = if self.transpose { a.transpose() } else { a.clone() };
        self.left.mul(&a)?.mul(&self.right)
    }
}

/// `phi(C)`; every basis matrix keeps its rank.
pub fn apply_isometry(phi: &Isometry, code: &RankMetricCode) -> Result<RankMetricCode> {
    let (n, m) = (code.n(), code.m());
    if phi.left.nrows() != n || phi.right.nrows() != m {
        return Err(Error::Shape(format!(
            "isometry of {}x{} matrices applied to a code of {n}x{m} matrices",
            phi.left.nrows(),
            phi.right.nrows()
        )));
    }
    let images = code
        .basis_matrices()
        .iter()
        .map(|a| {
            let b = phi.apply(a)?;
            assert_eq!(a.rank(), b.rank(), "isometry changed a rank");
            Ok(b)
        })
        .collect::<Result<Vec<_>>>()?;
    RankMetricCode::from_matrices(code.field(), n, m, &images)
}

/// All of `GL_n(F_q)`, built a row at a time from vectors outside the span
/// of the rows chosen so far.
pub fn general_linear_group(field: &Field, n: usize, budget: &Budget) -> Result<Vec<Matrix>> {
    let order = general_linear_order(n, field.q() as u64);
    budget.check_group(&order)?;
    let q = field.q();
    let vectors: Vec<Vec<FieldElement>> = (0..q.pow(n as u32))
        .map(|mut x| {
            (0..n)
                .map(|_| {
                    let d = x % q;
                    x /= q;
                    FieldElement(d as u16)
                })
                .collect()
        })
        .collect();
    let mut out = Vec::new();
    let mut rows: Vec<Vec<FieldElement>> = Vec::with_capacity(n);
    extend_rows(field, n, &vectors, &mut rows, &mut out);
    assert_eq!(BigUint::from(out.len()), order, "GL_{n} count");
    Ok(out)
}

fn extend_rows(
    field: &Field,
    n: usize,
    vectors: &[Vec<FieldElement>],
    rows: &mut Vec<Vec<FieldElement>>,
    out: &mut Vec<Matrix>,
) {
    if rows.len() == n {
        let flat: Vec<FieldElement> = rows.concat();
        out.push(Matrix::from_vector(field, n, n, &flat).expect("shape"));
        return;
    }
    let span = Subspace::from_elements(field, n, rows.clone()).expect("shape");
    for v in vectors {
        if !span.contains(v) {
            rows.push(v.clone());
            extend_rows(field, n, vectors, rows, out);
            rows.pop();
        }
    }
}

fn group_size(field: &Field, n: usize, m: usize) -> BigUint {
    let q = field.q() as u64;
    let base = general_linear_order(n, q) * general_linear_order(m, q);
    if n == m {
        base * 2u32
    } else {
        base
    }
}

/// Every isometry of `F_q^{n x m}`, in a fixed order: transposition flag,
/// then `N`, then `M`.
pub fn isometries(field: &Field, n: usize, m: usize, budget: &Budget) -> Result<Vec<Isometry>> {
    budget.check_group(&group_size(field, n, m))?;
    let gl_n = general_linear_group(field, n, budget)?;
    let gl_m = if m == n { gl_n.clone() } else { general_linear_group(field, m, budget)? };
    let flags: &[bool] = if n == m { &[false, true] } else { &[false] };
    let mut out = Vec::new();
    for &transpose in flags {
        for a in &gl_n {
            for b in &gl_m {
                out.push(Isometry {
                    left: a.clone(),
                    right: b.clone(),
                    transpose,
                });
            }
        }
    }
    Ok(out)
}

/// Cheap invariants that every isometry preserves; `None` where the budget
/// does not allow computing one.
fn fingerprints_differ(c: &RankMetricCode, d: &RankMetricCode, budget: &Budget) -> bool {
    if c.dim() != d.dim() {
        return true;
    }
    if let (Ok(a), Ok(b)) = (rank_distribution_oracle(c, budget), rank_distribution_oracle(d, budget)) {
        if a != b {
            return true;
        }
    }
    if let (Ok(a), Ok(b)) = (generalized_weights_oracle(c, budget), generalized_weights_oracle(d, budget)) {
        if a != b {
            return true;
        }
    }
    false
}

/// An isometry mapping `c` onto `d`, or `None` if there is none.
pub fn are_equivalent(c: &RankMetricCode, d: &RankMetricCode, budget: &Budget) -> Result<Option<Isometry>> {
    if c.n() != d.n() || c.m() != d.m() {
        return Err(Error::Shape("codes of different shapes".into()));
    }
    if fingerprints_differ(c, d, budget) {
        return Ok(None);
    }
    let group = isometries(c.field(), c.n(), c.m(), budget)?;
    let found = group.par_iter().position_first(|phi| {
        apply_isometry(phi, c).map(|img| img == *d).unwrap_or(false)
    });
    Ok(found.map(|i| group[i].clone()))
}

/// `U` of dimension `s` and `W` of dimension `k` with
/// `C ⊆ Mat(U) + Mat(W)^t`, if any. No equivalence is applied to `C`.
pub fn contained_in_mat_sum(
    code: &RankMetricCode,
    s: usize,
    k: usize,
    budget: &Budget,
) -> Result<Option<(Subspace, Subspace)>> {
    let (n, m) = (code.n(), code.m());
    let q = code.field().q() as u64;
    let pairs = gaussian_binomial(n, s, q) * gaussian_binomial(m, k, q);
    budget.check_subspaces(&pairs)?;
    let field = code.field();
    let ws: Vec<Subspace> = enumerate_subspaces(field, m, k, budget.subspaces)?.collect();
    let basis = code.basis_matrices();
    for u in enumerate_subspaces(field, n, s, budget.subspaces)? {
        let left = mat_support(&u, m);
        for w in &ws {
            let sum = left.sum(&mat_support_rows(w, n))?;
            if basis.iter().all(|a| sum.contains(a)) {
                return Ok(Some((u, w.clone())));
            }
        }
    }
    Ok(None)
}

/// A dually quasi optimal anticode matched to a canonical form.
#[derive(Clone, Debug, Serialize)]
pub struct ClassifiedCode {
    pub basis: Vec<Vec<u32>>,
    pub form: String,
    /// Maps the canonical form onto the code.
    pub witness: Isometry,
}

#[derive(Clone, Debug, Serialize)]
pub struct AuditReport {
    pub q: usize,
    pub n: usize,
    pub m: usize,
    pub dim: usize,
    pub alpha: usize,
    pub rho: usize,
    /// Labels of the applicable canonical forms; forms that coincide as codes
    /// share one label such as `"a=b"`.
    pub forms: Vec<String>,
    pub scanned: usize,
    pub dually_qoac: usize,
    pub per_form: BTreeMap<String, usize>,
    pub classified: Vec<ClassifiedCode>,
    /// Dually quasi optimal anticodes equivalent to no canonical form.
    pub unclassified: Vec<Vec<Vec<u32>>>,
}

impl AuditReport {
    pub fn complete(&self) -> bool {
        self.unclassified.is_empty() && self.classified.len() == self.dually_qoac
    }
}

/// Scans every `dim`-dimensional code of `n x m` matrices (`n <= m`), keeps
/// the dually quasi optimal anticodes and matches each one against the orbits
/// of the canonical forms.
pub fn audit_dually_qoac_classification(
    field: &Field,
    n: usize,
    m: usize,
    dim: usize,
    budget: &Budget,
) -> Result<AuditReport> {
    if n > m || n == 0 || dim > n * m {
        return Err(Error::Parameters(format!(
            "audit needs 0 < n <= m and dim <= nm (n={n}, m={m}, dim={dim})"
        )));
    }
    let q = field.q() as u64;
    budget.check_subspaces(&gaussian_binomial(n * m, dim, q))?;
    let (alpha, rho) = (dim / m, dim % m);

    let mut forms: Vec<(String, RankMetricCode)> = Vec::new();
    for form in CanonicalForm::ALL {
        let Ok(c) = dually_qoac_form(field, n, m, alpha, rho, form) else { continue };
        match forms.iter_mut().find(|(_, d)| *d == c) {
            Some((label, _)) => *label = format!("{label}={form}"),
            None => forms.push((form.to_string(), c)),
        }
    }

    // Orbit of each form: canonical image -> (form index, isometry).
    let mut orbit: HashMap<Subspace, (usize, Isometry)> = HashMap::new();
    if !forms.is_empty() {
        for phi in isometries(field, n, m, budget)? {
            for (i, (_, c)) in forms.iter().enumerate() {
                let img = apply_isometry(&phi, c)?;
                orbit.entry(img.space().clone()).or_insert_with(|| (i, phi.clone()));
            }
        }
    }

    let candidates: Vec<Subspace> = enumerate_subspaces(field, n * m, dim, budget.subspaces)?.collect();
    let scanned = candidates.len();
    let hits: Vec<(Subspace, Option<(usize, Isometry)>)> = candidates
        .into_par_iter()
        .filter_map(|space| {
            let code = RankMetricCode::from_space(space.clone(), n, m).expect("shape");
            match DualityProfile::compute(&code, budget) {
                Ok(d) if d.is_dually_qoac() => Some(Ok((space.clone(), orbit.get(&space).cloned()))),
                Ok(_) => None,
                Err(e) => Some(Err(e)),
            }
        })
        .collect::<Result<_>>()?;

    let mut per_form: BTreeMap<String, usize> = forms.iter().map(|(l, _)| (l.clone(), 0)).collect();
    let mut classified = Vec::new();
    let mut unclassified = Vec::new();
    for (space, hit) in &hits {
        match hit {
            Some((i, phi)) => {
                let (label, form) = &forms[*i];
                let img = apply_isometry(phi, form)?;
                assert_eq!(img.space(), space, "witness does not reproduce the code");
                *per_form.get_mut(label).expect("label") += 1;
                classified.push(ClassifiedCode {
                    basis: space.basis_indices(),
                    form: label.clone(),
                    witness: phi.clone(),
                });
            }
            None => unclassified.push(space.basis_indices()),
        }
    }
    Ok(AuditReport {
        q: field.q(),
        n,
        m,
        dim,
        alpha,
        rho,
        forms: forms.into_iter().map(|(l, _)| l).collect(),
        scanned,
        dually_qoac: hits.len(),
        per_form,
        classified,
        unclassified,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::{construct_cshk, split_row_family, upper_triangular_f2};
    use crate::field::FieldSpec;

    fn f(q: u32) -> Field {
        FieldSpec::with_order(q).unwrap().into_shared()
    }

    #[test]
    fn gl_orders_match_enumeration() {
        let b = Budget::default();
        assert_eq!(general_linear_group(&f(2), 2, &b).unwrap().len(), 6);
        assert_eq!(general_linear_group(&f(2), 3, &b).unwrap().len(), 168);
        assert_eq!(general_linear_group(&f(3), 2, &b).unwrap().len(), 48);
        assert_eq!(general_linear_group(&f(4), 2, &b).unwrap().len(), 180);
        assert!(general_linear_group(&f(2), 3, &Budget::default().with_group(100)).is_err());
    }

    #[test]
    fn row_swap_moves_support() {
        let f2 = f(2);
        let swap = Matrix::from_rows(&f2, &[[0u32, 1], [1, 0]]).unwrap();
        let phi = Isometry::new(swap, Matrix::identity(&f2, 2), false).unwrap();
        let e1 = mat_support(&Subspace::coordinate(&f2, 2, [0]), 2);
        let e2 = mat_support(&Subspace::coordinate(&f2, 2, [1]), 2);
        assert_eq!(apply_isometry(&phi, &e1).unwrap(), e2);
        assert_eq!(apply_isometry(&Isometry::identity(&f2, 2, 2), &e1).unwrap(), e1);
    }

    #[test]
    fn transpose_isometry_keeps_dimension() {
        let f2 = f(2);
        let c = construct_cshk(&f2, 3, 3, 1, 1, 2).unwrap();
        let phi = Isometry::new(Matrix::identity(&f2, 3), Matrix::identity(&f2, 3), true).unwrap();
        let img = apply_isometry(&phi, &c).unwrap();
        assert_eq!(img.dim(), c.dim());
        assert_eq!(img, c.transpose());
        assert!(Isometry::new(Matrix::identity(&f2, 2), Matrix::identity(&f2, 3), true).is_err());
    }

    #[test]
    fn split_row_family_symmetry() {
        let f2 = f(2);
        let b = Budget::default();
        let c0 = split_row_family(&f2, 2, 3, 1, 1, 0).unwrap();
        let c2 = split_row_family(&f2, 2, 3, 1, 1, 2).unwrap();
        let phi = are_equivalent(&c0, &c2, &b).unwrap().expect("equivalent");
        assert_eq!(apply_isometry(&phi, &c0).unwrap(), c2);
        assert_eq!(are_equivalent(&c0, &c0, &b).unwrap().unwrap(), Isometry::identity(&f2, 2, 3));
    }

    #[test]
    fn different_invariants_are_rejected() {
        let f2 = f(2);
        let b = Budget::default().with_group(1);
        let a = construct_cshk(&f2, 2, 2, 1, 1, 1).unwrap();
        let full_row = construct_cshk(&f2, 2, 2, 1, 0, 0).unwrap();
        let col = construct_cshk(&f2, 2, 2, 0, 2, 1).unwrap();
        // group budget of 1 would fail if the search ran
        assert!(are_equivalent(&a, &full_row, &b).unwrap().is_none());
        assert!(are_equivalent(&a, &col, &b).unwrap().is_none());
    }

    #[test]
    fn mat_sum_containment() {
        let f2 = f(2);
        let b = Budget::default();
        let e1 = mat_support(&Subspace::coordinate(&f2, 2, [0]), 2);
        let (u, w) = contained_in_mat_sum(&e1, 1, 0, &b).unwrap().unwrap();
        assert_eq!(u, Subspace::coordinate(&f2, 2, [0]));
        assert!(w.is_zero());
        let c = construct_cshk(&f2, 2, 2, 1, 1, 1).unwrap();
        assert!(contained_in_mat_sum(&c, 1, 1, &b).unwrap().is_some());
        assert!(contained_in_mat_sum(&c, 1, 0, &b).unwrap().is_none());
    }

    #[test]
    fn upper_triangular_code_avoids_mat_sums() {
        let c = upper_triangular_f2();
        let b = Budget::default();
        for s in 0..=3 {
            assert!(contained_in_mat_sum(&c, s, 3 - s, &b).unwrap().is_none(), "s={s}");
        }
    }

    #[test]
    fn audit_two_by_two() {
        let r = audit_dually_qoac_classification(&f(2), 2, 2, 3, &Budget::default()).unwrap();
        assert_eq!(r.scanned, 15);
        assert!(r.dually_qoac > 0);
        assert!(r.complete(), "{:?}", r.unclassified);
        assert_eq!(r.forms, ["a=b=c"]);
    }

    #[test]
    fn audit_divisible_dimension_finds_nothing() {
        let r = audit_dually_qoac_classification(&f(2), 2, 2, 2, &Budget::default()).unwrap();
        assert_eq!(r.dually_qoac, 0);
        assert!(r.forms.is_empty());
    }
}
