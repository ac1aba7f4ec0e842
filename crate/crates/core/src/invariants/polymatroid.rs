use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Serialize, Serializer};

use crate::codes::{maxrk, RankMetricCode};
use crate::combinatorics::enumerate_subspaces_all;
use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};
use crate::linalg::{mat_support, mat_support_rows, Subspace};
use crate::Budget;

/// Exact value of a rank function.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RankValue(pub BigRational);

impl RankValue {
    pub fn new(num: i64, den: i64) -> RankValue {
        RankValue(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn integer(v: i64) -> RankValue {
        RankValue::new(v, 1)
    }

    pub fn ceil(&self) -> i64 {
        self.0.ceil().to_integer().to_i64().expect("small")
    }
}

impl fmt::Display for RankValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Serialize for RankValue {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("RankValue", 2)?;
        st.serialize_field("num", &self.0.numer().to_string())?;
        st.serialize_field("den", &self.0.denom().to_string())?;
        st.end()
    }
}

/// Which of the two q-polymatroids: `rho_c` lives on `F_q^n`, `rho_r` on `F_q^m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Columns,
    Rows,
}

impl Side {
    pub fn lattice_dim(self, code: &RankMetricCode) -> usize {
        match self {
            Side::Columns => code.n(),
            Side::Rows => code.m(),
        }
    }
}

/// `rho_c(C, J) = (dim C - dim(C ∩ Mat(J^⊥))) / m` for `J ⊆ F_q^n`.
pub fn rho_c(code: &RankMetricCode, j: &Subspace) -> Result<RankValue> {
    if j.ambient_dim() != code.n() {
        return Err(Error::Shape(format!("J in F_q^{}, need F_q^{}", j.ambient_dim(), code.n())));
    }
    let meet = code.intersect(&mat_support(&j.orthogonal(), code.m()))?.dim();
    Ok(RankValue::new((code.dim() - meet) as i64, code.m() as i64))
}

/// `rho_r(C, K) = (dim C - dim(C ∩ Mat(K^⊥)^t)) / n` for `K ⊆ F_q^m`.
pub fn rho_r(code: &RankMetricCode, k: &Subspace) -> Result<RankValue> {
    if k.ambient_dim() != code.m() {
        return Err(Error::Shape(format!("K in F_q^{}, need F_q^{}", k.ambient_dim(), code.m())));
    }
    let meet = code.intersect(&mat_support_rows(&k.orthogonal(), code.n()))?.dim();
    Ok(RankValue::new((code.dim() - meet) as i64, code.n() as i64))
}

fn check_cshk(s: usize, h: usize, k: usize, n: usize, m: usize) -> Result<()> {
    if k > m || s + h == 0 || s + h > n {
        return Err(Error::Parameters(format!(
            "need k <= m and 0 < s+h <= n (s={s}, h={h}, k={k}, n={n}, m={m})"
        )));
    }
    Ok(())
}

fn coord(field: &Field, l: usize, r: usize) -> Subspace {
    Subspace::coordinate(field, l, 0..r)
}

fn meet_dim(a: &Subspace, b: &Subspace) -> Result<usize> {
    Ok(a.intersect(b)?.dim())
}

/// `rho_c` of `C_{s,h,k}`:
/// `s - dim(V ∩ J^⊥) + k (h + dim(V ∩ J^⊥) - dim(V' ∩ J^⊥)) / m`
/// with `V = <e_1..e_s>`, `V' = <e_1..e_{s+h}>`.
pub fn rho_c_closed_form(s: usize, h: usize, k: usize, n: usize, m: usize, j: &Subspace) -> Result<RankValue> {
    check_cshk(s, h, k, n, m)?;
    if j.ambient_dim() != n {
        return Err(Error::Shape(format!("J in F_q^{}, need F_q^{n}", j.ambient_dim())));
    }
    let jp = j.orthogonal();
    let v = meet_dim(&coord(j.field(), n, s), &jp)? as i64;
    let vp = meet_dim(&coord(j.field(), n, s + h), &jp)? as i64;
    let (s, h, k, m) = (s as i64, h as i64, k as i64, m as i64);
    Ok(RankValue::new((s - v) * m + k * (h + v - vp), m))
}

/// `rho_r` of `C_{s,h,k}`: `(h (k - dim(U ∩ K^⊥)) + s dim K) / n` with `U = <e_1..e_k>`.
pub fn rho_r_closed_form(s: usize, h: usize, k: usize, n: usize, m: usize, kk: &Subspace) -> Result<RankValue> {
    check_cshk(s, h, k, n, m)?;
    if kk.ambient_dim() != m {
        return Err(Error::Shape(format!("K in F_q^{}, need F_q^{m}", kk.ambient_dim())));
    }
    let u = meet_dim(&coord(kk.field(), m, k), &kk.orthogonal())? as i64;
    let (s, h, k, n) = (s as i64, h as i64, k as i64, n as i64);
    Ok(RankValue::new(h * (k - u) + s * kk.dim() as i64, n))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AxiomMode {
    /// Every subspace and every pair.
    Exhaustive,
    /// `pairs` random pairs of random subspaces.
    Sampled { pairs: usize, seed: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomViolation {
    pub axiom: &'static str,
    pub a: Vec<Vec<u32>>,
    pub b: Option<Vec<Vec<u32>>>,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub subspaces: usize,
    pub pairs: usize,
    pub violation: Option<AxiomViolation>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.violation.is_none()
    }
}

/// Checks boundedness, monotonicity and submodularity of `rho` on the
/// subspace lattice of `F_q^l`.
///
/// `rho` is any rank function, so a deliberately broken one can be fed in
/// to make sure violations are caught.
pub fn verify_axioms_with<F>(field: &Field, l: usize, mode: AxiomMode, budget: &Budget, rho: F) -> Result<AxiomReport>
where
    F: Fn(&Subspace) -> Result<RankValue>,
{
    let mut memo: HashMap<Subspace, RankValue> = HashMap::new();
    let mut eval = |a: &Subspace| -> Result<RankValue> {
        if let Some(v) = memo.get(a) {
            return Ok(v.clone());
        }
        let v = rho(a)?;
        memo.insert(a.clone(), v.clone());
        Ok(v)
    };
    let violation = |axiom, a: &Subspace, b: Option<&Subspace>, detail: String| AxiomViolation {
        axiom,
        a: a.basis_indices(),
        b: b.map(Subspace::basis_indices),
        detail,
    };

    let (subspaces, pairs): (Vec<Subspace>, Vec<(usize, usize)>) = match mode {
        AxiomMode::Exhaustive => {
            let all: Vec<Subspace> = enumerate_subspaces_all(field, l, budget.subspaces)?.collect();
            let len = all.len();
            let pairs = (0..len).flat_map(|i| (0..len).map(move |j| (i, j))).collect();
            (all, pairs)
        }
        AxiomMode::Sampled { pairs, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let q = field.q() as u16;
            let random_subspace = |rng: &mut ChaCha8Rng| {
                let d = rng.gen_range(0..=l);
                let rows = (0..d)
                    .map(|_| (0..l).map(|_| FieldElement(rng.gen_range(0..q))).collect())
                    .collect();
                Subspace::from_elements(field, l, rows).expect("shape")
            };
            let subs: Vec<Subspace> = (0..2 * pairs).map(|_| random_subspace(&mut rng)).collect();
            let idx = (0..pairs).map(|i| (2 * i, 2 * i + 1)).collect();
            (subs, idx)
        }
    };

    for a in &subspaces {
        let r = eval(a)?;
        if r.0 < BigRational::zero() || r.0 > BigRational::from_integer(BigInt::from(a.dim())) {
            return Ok(AxiomReport {
                subspaces: subspaces.len(),
                pairs: 0,
                violation: Some(violation("bounded", a, None, format!("rho = {r}, dim = {}", a.dim()))),
            });
        }
    }
    for (done, &(i, j)) in pairs.iter().enumerate() {
        let (a, b) = (&subspaces[i], &subspaces[j]);
        let (ra, rb) = (eval(a)?, eval(b)?);
        if a.is_subspace_of(b) && ra > rb {
            return Ok(AxiomReport {
                subspaces: subspaces.len(),
                pairs: done,
                violation: Some(violation("monotone", a, Some(b), format!("rho(A) = {ra} > rho(B) = {rb}"))),
            });
        }
        let sum = eval(&a.sum(b)?)?;
        let meet = eval(&a.intersect(b)?)?;
        if &sum.0 + &meet.0 > &ra.0 + &rb.0 {
            return Ok(AxiomReport {
                subspaces: subspaces.len(),
                pairs: done,
                violation: Some(violation(
                    "submodular",
                    a,
                    Some(b),
                    format!("rho(A+B) + rho(A∩B) = {} > rho(A) + rho(B) = {}", sum.0 + meet.0, ra.0 + rb.0),
                )),
            });
        }
    }
    Ok(AxiomReport {
        subspaces: subspaces.len(),
        pairs: pairs.len(),
        violation: None,
    })
}

/// Axiom check for `rho_c` (columns) or `rho_r` (rows) of a code.
pub fn verify_qpolymatroid_axioms(
    code: &RankMetricCode,
    side: Side,
    mode: AxiomMode,
    budget: &Budget,
) -> Result<AxiomReport> {
    let l = side.lattice_dim(code);
    match side {
        Side::Columns => verify_axioms_with(code.field(), l, mode, budget, |j| rho_c(code, j)),
        Side::Rows => verify_axioms_with(code.field(), l, mode, budget, |k| rho_r(code, k)),
    }
}

/// A code whose dimension is not divisible by `max(n,m)` is a quasi optimal
/// anticode iff the rank of the whole lattice, rounded up, is its maximum rank.
pub fn qoac_via_polymatroid(code: &RankMetricCode, budget: &Budget) -> Result<bool> {
    if code.dim() % code.long_side() == 0 {
        return Err(Error::Parameters(format!(
            "dimension {} is divisible by {}",
            code.dim(),
            code.long_side()
        )));
    }
    let top = if code.n() <= code.m() {
        rho_c(code, &Subspace::full(code.field(), code.n()))?
    } else {
        rho_r(code, &Subspace::full(code.field(), code.m()))?
    };
    Ok(top.ceil() == maxrk(code, budget)? as i64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::{construct_cshk, is_qoac, zero_diagonal_family};
    use crate::field::FieldSpec;

    fn f2() -> Field {
        FieldSpec::prime(2).unwrap().into_shared()
    }

    #[test]
    fn rho_examples() {
        let f = f2();
        let c = construct_cshk(&f, 2, 2, 1, 1, 1).unwrap();
        assert_eq!(rho_c(&c, &Subspace::full(&f, 2)).unwrap(), RankValue::new(3, 2));
        assert_eq!(rho_c(&c, &Subspace::zero(&f, 2)).unwrap(), RankValue::integer(0));
        let f1 = Subspace::coordinate(&f, 2, [0]);
        assert_eq!(rho_r(&c, &f1).unwrap(), RankValue::integer(1));
        assert_eq!(rho_r_closed_form(1, 1, 1, 2, 2, &f1).unwrap(), RankValue::integer(1));
        assert_eq!(rho_c_closed_form(1, 1, 1, 2, 2, &Subspace::zero(&f, 2)).unwrap(), RankValue::integer(0));
        assert!(rho_c(&c, &Subspace::full(&f, 3)).is_err());
    }

    #[test]
    fn closed_forms_match_definition_on_every_subspace() {
        let f = f2();
        for n in 1..=3 {
            for m in n..=3 {
                for s in 0..=n {
                    for h in 0..=n - s {
                        for k in 0..=m {
                            let Ok(c) = construct_cshk(&f, n, m, s, h, k) else { continue };
                            for j in enumerate_subspaces_all(&f, n, 1 << 20).unwrap() {
                                assert_eq!(rho_c(&c, &j).unwrap(), rho_c_closed_form(s, h, k, n, m, &j).unwrap());
                            }
                            for kk in enumerate_subspaces_all(&f, m, 1 << 20).unwrap() {
                                assert_eq!(rho_r(&c, &kk).unwrap(), rho_r_closed_form(s, h, k, n, m, &kk).unwrap());
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn axioms_hold_for_small_codes() {
        let f = f2();
        let b = Budget::default();
        let c = construct_cshk(&f, 2, 2, 1, 1, 1).unwrap();
        for side in [Side::Columns, Side::Rows] {
            let r = verify_qpolymatroid_axioms(&c, side, AxiomMode::Exhaustive, &b).unwrap();
            assert!(r.passed(), "{r:?}");
            assert_eq!(r.subspaces, 5);
            assert_eq!(r.pairs, 25);
            let r = verify_qpolymatroid_axioms(&c, side, AxiomMode::Sampled { pairs: 50, seed: 7 }, &b).unwrap();
            assert!(r.passed());
        }
    }

    #[test]
    fn corrupted_rank_function_is_caught() {
        let f = f2();
        let b = Budget::default();
        let c = construct_cshk(&f, 2, 2, 1, 1, 1).unwrap();
        let line = Subspace::coordinate(&f, 2, [0]);
        // rho(<e_1>) raised above rho(F^2)
        let broken = |j: &Subspace| {
            if *j == line {
                Ok(RankValue::new(7, 4))
            } else {
                rho_c(&c, j)
            }
        };
        let r = verify_axioms_with(&f, 2, AxiomMode::Exhaustive, &b, broken).unwrap();
        let v = r.violation.expect("violation");
        assert_eq!(v.axiom, "bounded");

        let broken = |j: &Subspace| {
            if *j == line {
                Ok(RankValue::integer(1))
            } else if j.is_full() {
                Ok(RankValue::new(1, 2))
            } else {
                rho_c(&c, j)
            }
        };
        let r = verify_axioms_with(&f, 2, AxiomMode::Exhaustive, &b, broken).unwrap();
        let v = r.violation.expect("violation");
        assert_eq!(v.axiom, "monotone");
        assert_eq!(v.a, line.basis_indices());
    }

    #[test]
    fn polymatroid_qoac_test() {
        let f = f2();
        let b = Budget::default();
        let c = construct_cshk(&f, 2, 2, 1, 1, 1).unwrap();
        assert!(qoac_via_polymatroid(&c, &b).unwrap());
        let e1 = mat_support(&Subspace::coordinate(&f, 2, [0]), 2);
        assert!(qoac_via_polymatroid(&e1, &b).is_err());
        let z = zero_diagonal_family(&f, 2, 3, 1, 1).unwrap();
        assert!(qoac_via_polymatroid(&z, &b).unwrap());
        assert_eq!(qoac_via_polymatroid(&z, &b).unwrap(), is_qoac(&z, &b).unwrap());
    }
}
