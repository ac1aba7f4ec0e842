//! Codeword enumeration.
//!
//! Codewords are visited in a q-ary Gray order: stepping the coefficient
//! counter changes exactly one Gray digit by +1, so each codeword is the
//! previous one plus a single scaled basis matrix. Gray digit `g` stands for
//! the field element with index `g`; for prime `q` the step is always `+b`. Scans that only need ranks split
//! the coefficient space into prefix classes (the top coordinates fixed) and
//! hand each class to a rayon worker; results are merged by sum, max or min,
//! so they do not depend on the split.

use std::ops::ControlFlow;
use std::sync::atomic::{AtomicBool, Ordering};

use num_bigint::BigUint;
use rayon::prelude::*;

use crate::codes::RankMetricCode;
use crate::error::Result;
use crate::field::{Field, FieldElement, FieldSpec};
use crate::linalg::{rank_dense, rank_gf2_words, Matrix};
use crate::Budget;

use super::q_power;

/// Streams every codeword of a code exactly once.
pub struct Codewords {
    field: Field,
    n: usize,
    m: usize,
    basis: Vec<Vec<FieldElement>>,
    digits: Vec<usize>,
    gray: Vec<usize>,
    current: Vec<FieldElement>,
    started: bool,
    done: bool,
}

impl Iterator for Codewords {
    type Item = Matrix;

    fn next(&mut self) -> Option<Matrix> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
        } else {
            let q = self.field.q();
            let Some(t) = self.digits.iter().position(|&d| d != q - 1) else {
                self.done = true;
                return None;
            };
            for d in &mut self.digits[..t] {
                *d = 0;
            }
            self.digits[t] += 1;
            let f = &self.field;
            let c = step_delta(f, self.gray[t]);
            self.gray[t] = (self.gray[t] + 1) % q;
            for (x, &b) in self.current.iter_mut().zip(&self.basis[t]) {
                *x = f.add(*x, f.mul(c, b));
            }
        }
        Some(Matrix::from_vector(&self.field, self.n, self.m, &self.current).expect("shape"))
    }
}

/// All `q^dim` codewords, in deterministic Gray order starting at zero.
pub fn enumerate_codewords(code: &RankMetricCode, budget: &Budget) -> Result<Codewords> {
    budget.check_codewords(&code.size())?;
    Ok(Codewords {
        field: code.field().clone(),
        n: code.n(),
        m: code.m(),
        basis: code.space().basis().to_vec(),
        digits: vec![0; code.dim()],
        gray: vec![0; code.dim()],
        current: vec![FieldElement::ZERO; code.n() * code.m()],
        started: false,
        done: false,
    })
}

enum Repr {
    /// One word per row of the (possibly transposed) codeword.
    Gf2(Vec<u64>),
    /// Dense row-major element indices; `steps[(t q + g) size ..]` holds the
    /// change of the codeword when Gray digit `t` moves from `g` to `g + 1`.
    Dense { field: Field, dense: Vec<u16>, steps: Vec<u16> },
}

/// Rank-only scanner over all codewords of a code.
pub(crate) struct RankScanner {
    repr: Repr,
    rows: usize,
    cols: usize,
    dim: usize,
    q: usize,
}

const PARALLEL_THRESHOLD: u64 = 1 << 13;
const TARGET_TASKS: u64 = 512;
const STOP_POLL: u32 = 1024;

impl RankScanner {
    pub(crate) fn new(code: &RankMetricCode, budget: &Budget) -> Result<RankScanner> {
        budget.check_codewords(&code.size())?;
        let (n, m) = (code.n(), code.m());
        let transpose = n > m;
        let (rows, cols) = if transpose { (m, n) } else { (n, m) };
        let at = |v: &[FieldElement], r: usize, c: usize| -> FieldElement {
            if transpose {
                v[c * m + r]
            } else {
                v[r * m + c]
            }
        };
        let q = code.field().q();
        let basis = code.space().basis();
        let repr = if q == 2 && cols <= 64 {
            let mut words = Vec::with_capacity(basis.len() * rows);
            for v in basis {
                for r in 0..rows {
                    let w = (0..cols).fold(0u64, |w, c| w | ((at(v, r, c).0 as u64) << c));
                    words.push(w);
                }
            }
            Repr::Gf2(words)
        } else {
            let mut dense = Vec::with_capacity(basis.len() * rows * cols);
            for v in basis {
                for r in 0..rows {
                    for c in 0..cols {
                        dense.push(at(v, r, c).0);
                    }
                }
            }
            let field = code.field();
            let size = rows * cols;
            let mut steps = vec![0u16; basis.len() * q * size];
            for t in 0..basis.len() {
                for g in 0..q {
                    let at = (t * q + g) * size;
                    add_scaled(field, &mut steps[at..at + size], &dense[t * size..(t + 1) * size], step_delta(field, g));
                }
            }
            Repr::Dense { field: field.clone(), dense, steps }
        };
        Ok(RankScanner {
            repr,
            rows,
            cols,
            dim: basis.len(),
            q,
        })
    }

    pub(crate) fn max_possible_rank(&self) -> usize {
        self.rows
    }

    /// Number of leading coordinates fixed per task.
    fn split(&self) -> usize {
        let total = q_power(self.q as u64, self.dim);
        if total < BigUint::from(PARALLEL_THRESHOLD) {
            return 0;
        }
        let mut t = 0;
        let mut tasks = 1u64;
        while tasks < TARGET_TASKS && t < self.dim {
            tasks *= self.q as u64;
            t += 1;
        }
        t
    }

    /// Visits the rank of every codeword in the prefix class `task`, where
    /// the top `fixed` coefficients are the base-q digits of `task`.
    fn walk_task(&self, fixed: usize, task: u64, stop: &AtomicBool, visit: &mut impl FnMut(usize) -> ControlFlow<()>) {
        let low = self.dim - fixed;
        match &self.repr {
            Repr::Gf2(words) => {
                let rows = self.rows;
                let mut cur = [0u64; 64];
                let cur = &mut cur[..rows];
                for j in 0..fixed {
                    if (task >> j) & 1 == 1 {
                        let b = &words[(low + j) * rows..(low + j + 1) * rows];
                        for (x, y) in cur.iter_mut().zip(b) {
                            *x ^= y;
                        }
                    }
                }
                let mut scratch = [0u64; 64];
                let count = 1u64 << low;
                let mut i = 0u64;
                loop {
                    scratch[..rows].copy_from_slice(cur);
                    if visit(rank_gf2_words(&mut scratch[..rows])).is_break() {
                        return;
                    }
                    i += 1;
                    if i == count {
                        return;
                    }
                    if i as u32 % STOP_POLL == 0 && stop.load(Ordering::Relaxed) {
                        return;
                    }
                    let t = i.trailing_zeros() as usize;
                    let b = &words[t * rows..(t + 1) * rows];
                    for (x, y) in cur.iter_mut().zip(b) {
                        *x ^= y;
                    }
                }
            }
            Repr::Dense { field, dense, steps } => {
                let size = self.rows * self.cols;
                let q = self.q;
                let mut cur = vec![0u16; size];
                let mut w = task;
                for j in 0..fixed {
                    let digit = (w % q as u64) as u16;
                    w /= q as u64;
                    if digit != 0 {
                        let b = &dense[(low + j) * size..(low + j + 1) * size];
                        add_scaled(field, &mut cur, b, FieldElement(digit));
                    }
                }
                let mut digits = vec![0usize; low];
                let mut gray = vec![0usize; low];
                let mut scratch = vec![0u16; size];
                let add = field.add_table();
                let mut polled = 0u32;
                loop {
                    scratch.copy_from_slice(&cur);
                    if visit(rank_dense(field, &mut scratch, self.rows, self.cols)).is_break() {
                        return;
                    }
                    let Some(t) = digits.iter().position(|&d| d != q - 1) else {
                        return;
                    };
                    for d in &mut digits[..t] {
                        *d = 0;
                    }
                    digits[t] += 1;
                    let g = gray[t];
                    gray[t] = (g + 1) % q;
                    let at = (t * q + g) * size;
                    let b = &steps[at..at + size];
                    for (x, &y) in cur.iter_mut().zip(b) {
                        *x = add[*x as usize * q + y as usize];
                    }
                    polled += 1;
                    if polled % STOP_POLL == 0 && stop.load(Ordering::Relaxed) {
                        return;
                    }
                }
            }
        }
    }

    fn tasks(&self) -> (usize, u64) {
        let fixed = self.split();
        (fixed, (self.q as u64).pow(fixed as u32))
    }

    /// `hist[r]` = number of codewords of rank `r`.
    pub(crate) fn histogram(&self) -> Vec<u64> {
        let (fixed, ntasks) = self.tasks();
        let stop = AtomicBool::new(false);
        let width = self.rows + 1;
        (0..ntasks)
            .into_par_iter()
            .map(|task| {
                let mut h = vec![0u64; width];
                self.walk_task(fixed, task, &stop, &mut |r| {
                    h[r] += 1;
                    ControlFlow::Continue(())
                });
                h
            })
            .reduce(
                || vec![0u64; width],
                |mut a, b| {
                    for (x, y) in a.iter_mut().zip(b) {
                        *x += y;
                    }
                    a
                },
            )
    }

    /// `min(maxrk, stop_at)`; stops as soon as a codeword of rank `>= stop_at`
    /// turns up.
    pub(crate) fn max_rank_capped(&self, stop_at: usize) -> usize {
        let (fixed, ntasks) = self.tasks();
        let stop = AtomicBool::new(false);
        let best = (0..ntasks)
            .into_par_iter()
            .map(|task| {
                let mut best = 0;
                self.walk_task(fixed, task, &stop, &mut |r| {
                    best = best.max(r);
                    if best >= stop_at {
                        stop.store(true, Ordering::Relaxed);
                        ControlFlow::Break(())
                    } else {
                        ControlFlow::Continue(())
                    }
                });
                best
            })
            .max()
            .unwrap_or(0);
        best.min(stop_at)
    }

    /// Least nonzero rank, or `None` for the zero code.
    pub(crate) fn min_nonzero_rank(&self) -> Option<usize> {
        if self.dim == 0 {
            return None;
        }
        let (fixed, ntasks) = self.tasks();
        let stop = AtomicBool::new(false);
        (0..ntasks)
            .into_par_iter()
            .map(|task| {
                let mut best = usize::MAX;
                self.walk_task(fixed, task, &stop, &mut |r| {
                    if r > 0 && r < best {
                        best = r;
                        if r == 1 {
                            stop.store(true, Ordering::Relaxed);
                            return ControlFlow::Break(());
                        }
                    }
                    ControlFlow::Continue(())
                });
                best
            })
            .min()
            .filter(|&r| r != usize::MAX)
    }
}

/// `e_{g+1} - e_g`, indices taken mod q.
fn step_delta(field: &FieldSpec, g: usize) -> FieldElement {
    let q = field.q();
    field.sub(FieldElement(((g + 1) % q) as u16), FieldElement(g as u16))
}

fn add_scaled(field: &FieldSpec, acc: &mut [u16], v: &[u16], c: FieldElement) {
    for (x, &y) in acc.iter_mut().zip(v) {
        if y != 0 {
            *x = field.add(FieldElement(*x), field.mul(c, FieldElement(y))).0;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;
    use crate::linalg::Subspace;
    use std::collections::HashSet;

    fn cshk_111() -> RankMetricCode {
        let f2 = FieldSpec::prime(2).unwrap().into_shared();
        crate::codes::construct_cshk(&f2, 2, 2, 1, 1, 1).unwrap()
    }

    #[test]
    fn zero_code_has_one_codeword() {
        let f2 = FieldSpec::prime(2).unwrap().into_shared();
        let z = RankMetricCode::zero(&f2, 2, 3);
        let all: Vec<_> = enumerate_codewords(&z, &Budget::default()).unwrap().collect();
        assert_eq!(all.len(), 1);
        assert!(all[0].is_zero());
    }

    #[test]
    fn cshk_codewords_and_ranks() {
        let c = cshk_111();
        let words: Vec<_> = enumerate_codewords(&c, &Budget::default()).unwrap().collect();
        assert_eq!(words.len(), 8);
        let distinct: HashSet<_> = words.iter().map(|w| w.to_index_rows()).collect();
        assert_eq!(distinct.len(), 8);
        let mut hist = [0; 3];
        for w in &words {
            assert_eq!(w.get(1, 1), FieldElement::ZERO);
            hist[w.rank()] += 1;
        }
        assert_eq!(hist, [1, 5, 2]);
        let scanner = RankScanner::new(&c, &Budget::default()).unwrap();
        assert_eq!(scanner.histogram(), vec![1, 5, 2]);
    }

    #[test]
    fn scanner_agrees_with_stream_over_several_fields() {
        for q in [2u32, 3, 4, 5] {
            let field = FieldSpec::with_order(q).unwrap().into_shared();
            for (n, m) in [(2, 3), (3, 2), (3, 3)] {
                let v = Subspace::coordinate(&field, n, [0]);
                let u = Subspace::coordinate(&field, m, [0, 1]);
                let code = crate::linalg::mat_support(&v, m)
                    .sum(&crate::linalg::mat_support_rows(&u, n))
                    .unwrap();
                let budget = Budget::default();
                let mut expect = vec![0u64; n.min(m) + 1];
                for w in enumerate_codewords(&code, &budget).unwrap() {
                    expect[w.rank()] += 1;
                }
                let scanner = RankScanner::new(&code, &budget).unwrap();
                assert_eq!(scanner.histogram(), expect, "q={q} n={n} m={m}");
                let maxr = expect.iter().rposition(|&c| c > 0).unwrap();
                assert_eq!(scanner.max_rank_capped(n.min(m)), maxr);
                assert_eq!(scanner.min_nonzero_rank(), Some(1));
            }
        }
    }

    #[test]
    fn parallel_split_matches_sequential_count() {
        // 2^16 codewords: large enough to be split across tasks.
        let f2 = FieldSpec::prime(2).unwrap().into_shared();
        let full = RankMetricCode::full(&f2, 4, 4);
        let h = RankScanner::new(&full, &Budget::default()).unwrap().histogram();
        let expect: Vec<u64> = (0..=4)
            .map(|r| crate::combinatorics::count_rank_matrices(4, 4, r, 2).try_into().unwrap())
            .collect();
        assert_eq!(h, expect);
        let f3 = FieldSpec::prime(3).unwrap().into_shared();
        let full3 = RankMetricCode::full(&f3, 3, 3);
        let h3 = RankScanner::new(&full3, &Budget::default()).unwrap().histogram();
        let expect3: Vec<u64> = (0..=3)
            .map(|r| crate::combinatorics::count_rank_matrices(3, 3, r, 3).try_into().unwrap())
            .collect();
        assert_eq!(h3, expect3);
    }

    #[test]
    fn budget_enforced() {
        let c = cshk_111();
        assert!(enumerate_codewords(&c, &Budget::default().with_codewords(7)).is_err());
        assert!(RankScanner::new(&c, &Budget::default().with_codewords(8)).is_ok());
    }
}
