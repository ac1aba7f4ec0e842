use crate::error::Result;
use crate::field::{Field, FieldElement};
use crate::linalg::Subspace;
use crate::Budget;

use super::gaussian_binomial;

/// All `d`-subsets of `0..l` in lexicographic order.
pub fn pivot_sets(l: usize, d: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if d > l {
        return out;
    }
    let mut cur: Vec<usize> = (0..d).collect();
    loop {
        out.push(cur.clone());
        // Advance the rightmost index that still has room.
        let Some(i) = (0..d).rev().find(|&i| cur[i] < l - d + i) else {
            break;
        };
        cur[i] += 1;
        for j in i + 1..d {
            cur[j] = cur[j - 1] + 1;
        }
    }
    out
}

/// Iterator over subspaces of `F_q^l` in canonical form.
///
/// Order: pivot sets lexicographically, and within one pivot set the free
/// (non-pivot, right-of-pivot) entries as an odometer whose first free
/// position varies fastest.
pub struct Subspaces {
    field: Field,
    ambient: usize,
    patterns: std::vec::IntoIter<Vec<usize>>,
    pivots: Vec<usize>,
    free: Vec<(usize, usize)>,
    digits: Vec<u16>,
    fresh: bool,
    exhausted: bool,
}

impl Subspaces {
    fn new(field: &Field, ambient: usize, patterns: Vec<Vec<usize>>) -> Subspaces {
        let mut it = Subspaces {
            field: field.clone(),
            ambient,
            patterns: patterns.into_iter(),
            pivots: Vec::new(),
            free: Vec::new(),
            digits: Vec::new(),
            fresh: false,
            exhausted: false,
        };
        it.next_pattern();
        it
    }

    fn next_pattern(&mut self) {
        match self.patterns.next() {
            None => self.exhausted = true,
            Some(p) => {
                let mut is_pivot = vec![false; self.ambient];
                for &c in &p {
                    is_pivot[c] = true;
                }
                self.free = p
                    .iter()
                    .enumerate()
                    .flat_map(|(r, &pc)| (pc + 1..self.ambient).filter(|&c| !is_pivot[c]).map(move |c| (r, c)))
                    .collect::<Vec<_>>();
                self.digits = vec![0; self.free.len()];
                self.pivots = p;
                self.fresh = true;
            }
        }
    }

    fn build(&self) -> Subspace {
        let mut rows = vec![vec![FieldElement::ZERO; self.ambient]; self.pivots.len()];
        for (r, &c) in self.pivots.iter().enumerate() {
            rows[r][c] = FieldElement::ONE;
        }
        for (&(r, c), &d) in self.free.iter().zip(&self.digits) {
            rows[r][c] = FieldElement(d);
        }
        Subspace::from_canonical(&self.field, self.ambient, rows, self.pivots.clone())
    }
}

impl Iterator for Subspaces {
    type Item = Subspace;

    fn next(&mut self) -> Option<Subspace> {
        let q = self.field.q() as u16;
        loop {
            if self.exhausted {
                return None;
            }
            if self.fresh {
                self.fresh = false;
                return Some(self.build());
            }
            // Odometer step; on overflow move to the next pivot pattern.
            let mut i = 0;
            while i < self.digits.len() && self.digits[i] == q - 1 {
                self.digits[i] = 0;
                i += 1;
            }
            if i == self.digits.len() {
                self.next_pattern();
                continue;
            }
            self.digits[i] += 1;
            return Some(self.build());
        }
    }
}

/// Every `d`-dimensional subspace of `F_q^l`, each exactly once.
pub fn enumerate_subspaces(field: &Field, l: usize, d: usize, cap: u64) -> Result<Subspaces> {
    Budget::default()
        .with_subspaces(cap)
        .check_subspaces(&gaussian_binomial(l, d, field.q() as u64))?;
    Ok(Subspaces::new(field, l, pivot_sets(l, d)))
}

/// The subspaces of `F_q^l` with a fixed pivot pattern; used to split sweeps
/// across workers.
pub fn subspaces_with_pivots(field: &Field, l: usize, pivots: Vec<usize>) -> Subspaces {
    Subspaces::new(field, l, vec![pivots])
}

/// The whole lattice of subspaces of `F_q^l`, by increasing dimension.
pub fn enumerate_subspaces_all(field: &Field, l: usize, cap: u64) -> Result<Subspaces> {
    Budget::default()
        .with_subspaces(cap)
        .check_subspaces(&super::subspace_count(l, field.q() as u64))?;
    let patterns = (0..=l).flat_map(|d| pivot_sets(l, d)).collect();
    Ok(Subspaces::new(field, l, patterns))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;
    use num_bigint::BigUint;
    use std::collections::HashSet;

    #[test]
    fn pivot_sets_are_lexicographic() {
        assert_eq!(pivot_sets(3, 2), vec![vec![0, 1], vec![0, 2], vec![1, 2]]);
        assert_eq!(pivot_sets(3, 0), vec![Vec::<usize>::new()]);
        assert!(pivot_sets(2, 3).is_empty());
    }

    #[test]
    fn small_examples() {
        let f2 = FieldSpec::prime(2).unwrap().into_shared();
        assert_eq!(enumerate_subspaces(&f2, 2, 1, 100).unwrap().count(), 3);
        let zero: Vec<_> = enumerate_subspaces(&f2, 5, 0, 100).unwrap().collect();
        assert_eq!(zero.len(), 1);
        assert!(zero[0].is_zero());
        let all: Vec<_> = enumerate_subspaces(&f2, 4, 2, 100).unwrap().collect();
        assert_eq!(all.len(), 35);
        assert_eq!(all.iter().collect::<HashSet<_>>().len(), 35);
    }

    #[test]
    fn counts_match_gaussian_binomials() {
        for q in [2u32, 3] {
            let field = FieldSpec::prime(q).unwrap().into_shared();
            for l in 0..=5 {
                for d in 0..=l {
                    let subs: Vec<_> = enumerate_subspaces(&field, l, d, u64::MAX).unwrap().collect();
                    assert_eq!(BigUint::from(subs.len()), gaussian_binomial(l, d, q as u64));
                    let distinct: HashSet<_> = subs.iter().collect();
                    assert_eq!(distinct.len(), subs.len());
                    for s in &subs {
                        assert_eq!(s.dim(), d);
                        // canonical: re-reducing the basis changes nothing
                        let again = Subspace::from_elements(&field, l, s.basis().to_vec()).unwrap();
                        assert_eq!(&again, s);
                    }
                }
            }
        }
    }

    #[test]
    fn cap_is_enforced() {
        let f2 = FieldSpec::prime(2).unwrap().into_shared();
        let err = enumerate_subspaces(&f2, 4, 2, 34).err().unwrap();
        assert!(err.is_budget());
        assert!(enumerate_subspaces_all(&f2, 4, 66).is_err());
    }
}
