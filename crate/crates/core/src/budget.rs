use num_bigint::BigUint;

use crate::error::{Error, Result};

/// Caps on every exponential loop in the crate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    /// Codewords visited by one enumeration (`q^dim`).
    pub codewords: u64,
    /// Subspaces visited by one lattice or Grassmannian sweep.
    pub subspaces: u64,
    /// Group elements visited by one equivalence search.
    pub group: u64,
}

impl Budget {
    pub const DEFAULT_CODEWORDS: u64 = 1 << 24;
    pub const DEFAULT_SUBSPACES: u64 = 1 << 22;
    pub const DEFAULT_GROUP: u64 = 100_000_000;

    pub fn with_codewords(mut self, cap: u64) -> Self {
        self.codewords = cap;
        self
    }

    pub fn with_subspaces(mut self, cap: u64) -> Self {
        self.subspaces = cap;
        self
    }

    pub fn with_group(mut self, cap: u64) -> Self {
        self.group = cap;
        self
    }

    pub(crate) fn check_codewords(&self, required: &BigUint) -> Result<()> {
        check("codeword", required, self.codewords)
    }

    pub(crate) fn check_subspaces(&self, required: &BigUint) -> Result<()> {
        check("subspace", required, self.subspaces)
    }

    pub(crate) fn check_group(&self, required: &BigUint) -> Result<()> {
        check("group", required, self.group)
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            codewords: Self::DEFAULT_CODEWORDS,
            subspaces: Self::DEFAULT_SUBSPACES,
            group: Self::DEFAULT_GROUP,
        }
    }
}

fn check(what: &'static str, required: &BigUint, cap: u64) -> Result<()> {
    if *required > BigUint::from(cap) {
        Err(Error::budget(what, required, cap))
    } else {
        Ok(())
    }
}
