//! Exact arithmetic in small finite fields `F_q`, `q = p^e`.
//!
//! Elements are stored as indices in `[0, q)`: the coefficient vector of the
//! residue polynomial read in base `p`, constant term least significant. For a
//! prime field the index is the residue itself. Addition goes through a full
//! `q x q` table, multiplication through log/antilog tables relative to a
//! fixed primitive element. Everything is built once in [`FieldSpec::new`].

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest supported extension field.
pub const MAX_EXTENSION_ORDER: usize = 256;
/// Largest supported prime field.
pub const MAX_PRIME_ORDER: usize = 257;

/// An element of some [`FieldSpec`], by index.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElement(pub u16);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Shared handle to a field. Matrices, subspaces and codes all carry one.
pub type Field = Arc<FieldSpec>;

/// The wire description of a field: `{"p": .., "e": .., "modulus": [..]}`.
///
/// `modulus` lists coefficients from the constant term upwards, including the
/// leading 1, so `x^2 + x + 1` is `[1, 1, 1]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldDescription {
    pub p: u32,
    pub e: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub modulus: Option<Vec<u32>>,
}

pub struct FieldSpec {
    p: u32,
    e: u32,
    q: usize,
    modulus: Option<Vec<u32>>,
    add: Vec<u16>,
    neg: Vec<u16>,
    inv: Vec<u16>,
    // log[0] is unused; exp has length 2(q-1) so log a + log b never wraps.
    log: Vec<u16>,
    exp: Vec<u16>,
}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldSpec")
            .field("p", &self.p)
            .field("e", &self.e)
            .field("modulus", &self.modulus)
            .finish()
    }
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.e == other.e && self.modulus == other.modulus
    }
}

impl Eq for FieldSpec {}

pub(crate) fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Dense polynomials over `F_p`, lowest degree first, used only while
/// validating moduli and building tables.
mod poly {
    pub fn trim(mut a: Vec<u32>) -> Vec<u32> {
        while a.last() == Some(&0) {
            a.pop();
        }
        a
    }

    fn inv_mod(a: u32, p: u32) -> u32 {
        (1..p).find(|&x| (a * x) % p == 1).expect("nonzero residue")
    }

    /// Remainder of `a` modulo `b` (`b` nonzero).
    pub fn rem(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        let b = trim(b.to_vec());
        let mut r = trim(a.to_vec());
        let lead_inv = inv_mod(*b.last().unwrap(), p);
        while r.len() >= b.len() {
            let shift = r.len() - b.len();
            let c = (r[r.len() - 1] * lead_inv) % p;
            for (i, &bi) in b.iter().enumerate() {
                r[shift + i] = (r[shift + i] + p * p - c * bi % p) % p;
            }
            r = trim(r);
        }
        r
    }

    /// Monic polynomial of degree `deg` whose lower coefficients are the base-p
    /// digits of `code`.
    pub fn monic_from_code(code: usize, deg: usize, p: u32) -> Vec<u32> {
        let mut c = code;
        let mut out = Vec::with_capacity(deg + 1);
        for _ in 0..deg {
            out.push((c % p as usize) as u32);
            c /= p as usize;
        }
        out.push(1);
        out
    }

    /// Irreducible iff no monic polynomial of degree `1..=deg/2` divides it.
    pub fn is_irreducible(f: &[u32], p: u32) -> bool {
        let deg = f.len() - 1;
        for d in 1..=deg / 2 {
            let count = (p as usize).pow(d as u32);
            for code in 0..count {
                let g = monic_from_code(code, d, p);
                if rem(f, &g, p).is_empty() {
                    return false;
                }
            }
        }
        true
    }
}

impl FieldSpec {
    /// Builds `F_{p^e}`. With `e > 1` and no modulus, the lexicographically
    /// least monic irreducible of degree `e` is used.
    pub fn new(p: u32, e: u32, modulus: Option<&[u32]>) -> Result<FieldSpec> {
        if !is_prime(p) {
            return Err(Error::Field(format!("characteristic {p} is not prime")));
        }
        if e == 0 {
            return Err(Error::Field("extension degree must be at least 1".into()));
        }
        let q = (p as u64)
            .checked_pow(e)
            .filter(|&q| {
                if e == 1 {
                    q as usize <= MAX_PRIME_ORDER
                } else {
                    q as usize <= MAX_EXTENSION_ORDER
                }
            })
            .ok_or_else(|| {
                Error::Field(format!(
                    "field of order {p}^{e} exceeds the supported size (q <= {MAX_EXTENSION_ORDER} for extensions, q <= {MAX_PRIME_ORDER} for prime fields)"
                ))
            })? as usize;

        let modulus = if e == 1 {
            if let Some(m) = modulus {
                // Accept the degree-1 modulus `x` for uniformity, nothing else.
                if m != [0, 1] {
                    return Err(Error::Field(
                        "prime fields take no modulus other than x".into(),
                    ));
                }
            }
            None
        } else {
            let f = match modulus {
                Some(m) => {
                    if m.len() != e as usize + 1 {
                        return Err(Error::Field(format!(
                            "modulus must have degree {e} ({} coefficients given)",
                            m.len()
                        )));
                    }
                    if m[e as usize] != 1 {
                        return Err(Error::Field("modulus must be monic".into()));
                    }
                    if m.iter().any(|&c| c >= p) {
                        return Err(Error::Field(format!(
                            "modulus coefficients must lie in [0, {p})"
                        )));
                    }
                    if !poly::is_irreducible(m, p) {
                        return Err(Error::Field(format!(
                            "modulus {m:?} is reducible over F_{p}"
                        )));
                    }
                    m.to_vec()
                }
                None => {
                    let count = (p as usize).pow(e);
                    (0..count)
                        .map(|code| poly::monic_from_code(code, e as usize, p))
                        .find(|f| poly::is_irreducible(f, p))
                        .expect("irreducible polynomials exist in every degree")
                }
            };
            Some(f)
        };

        let mut spec = FieldSpec {
            p,
            e,
            q,
            modulus,
            add: Vec::new(),
            neg: Vec::new(),
            inv: Vec::new(),
            log: Vec::new(),
            exp: Vec::new(),
        };
        spec.build_tables();
        Ok(spec)
    }

    /// The prime field `F_p`.
    pub fn prime(p: u32) -> Result<FieldSpec> {
        FieldSpec::new(p, 1, None)
    }

    /// A field of order `q`, factoring `q` as a prime power.
    pub fn with_order(q: u32) -> Result<FieldSpec> {
        if q < 2 {
            return Err(Error::Field(format!("{q} is not a prime power")));
        }
        let p = (2..=q)
            .find(|d| q % d == 0)
            .expect("q >= 2 has a least divisor");
        let mut e = 0;
        let mut r = q;
        while r % p == 0 {
            r /= p;
            e += 1;
        }
        if r != 1 {
            return Err(Error::Field(format!("{q} is not a prime power")));
        }
        FieldSpec::new(p, e, None)
    }

    pub fn from_description(desc: &FieldDescription) -> Result<FieldSpec> {
        FieldSpec::new(desc.p, desc.e, desc.modulus.as_deref())
    }

    pub fn description(&self) -> FieldDescription {
        FieldDescription {
            p: self.p,
            e: self.e,
            modulus: self.modulus.clone(),
        }
    }

    pub fn into_shared(self) -> Field {
        Arc::new(self)
    }

    fn digits(&self, x: usize) -> Vec<u32> {
        let mut d = Vec::with_capacity(self.e as usize);
        let mut c = x;
        for _ in 0..self.e {
            d.push((c % self.p as usize) as u32);
            c /= self.p as usize;
        }
        d
    }

    fn from_digits(&self, d: &[u32]) -> usize {
        d.iter()
            .rev()
            .fold(0usize, |acc, &c| acc * self.p as usize + c as usize)
    }

    /// Schoolbook product used once to seed the tables.
    fn slow_mul(&self, a: usize, b: usize) -> usize {
        let p = self.p;
        match &self.modulus {
            None => (a * b) % self.q,
            Some(f) => {
                let (da, db) = (self.digits(a), self.digits(b));
                let mut prod = vec![0u32; da.len() + db.len()];
                for (i, &x) in da.iter().enumerate() {
                    for (j, &y) in db.iter().enumerate() {
                        prod[i + j] = (prod[i + j] + x * y) % p;
                    }
                }
                let mut r = poly::rem(&prod, f, p);
                r.resize(self.e as usize, 0);
                self.from_digits(&r)
            }
        }
    }

    fn build_tables(&mut self) {
        let q = self.q;
        let p = self.p;
        let mut add = vec![0u16; q * q];
        for a in 0..q {
            let da = self.digits(a);
            for b in 0..q {
                let db = self.digits(b);
                let s: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                add[a * q + b] = self.from_digits(&s) as u16;
            }
        }
        let neg = (0..q)
            .map(|a| (0..q).find(|&b| add[a * q + b] == 0).unwrap() as u16)
            .collect();

        // Find a primitive element by brute force: the first g whose powers
        // visit all q - 1 nonzero elements.
        let order = q - 1;
        let mut exp = vec![0u16; 2 * order.max(1)];
        let mut log = vec![0u16; q];
        for g in 1..q {
            let mut x = 1usize;
            let mut seen = vec![false; q];
            let mut ok = true;
            for i in 0..order {
                if seen[x] {
                    ok = false;
                    break;
                }
                seen[x] = true;
                exp[i] = x as u16;
                log[x] = i as u16;
                x = self.slow_mul(x, g);
            }
            if ok && x == 1 {
                break;
            }
        }
        for i in order..2 * order {
            exp[i] = exp[i - order];
        }
        let mut inv = vec![0u16; q];
        for a in 1..q {
            inv[a] = exp[(order - log[a] as usize) % order];
        }
        self.add = add;
        self.neg = neg;
        self.inv = inv;
        self.log = log;
        self.exp = exp;
    }

    #[inline]
    pub fn p(&self) -> u32 {
        self.p
    }

    #[inline]
    pub fn e(&self) -> u32 {
        self.e
    }

    /// Cardinality of the field.
    #[inline]
    pub fn q(&self) -> usize {
        self.q
    }

    pub fn modulus(&self) -> Option<&[u32]> {
        self.modulus.as_deref()
    }

    #[inline]
    pub fn element(&self, index: usize) -> Result<FieldElement> {
        if index < self.q {
            Ok(FieldElement(index as u16))
        } else {
            Err(Error::Field(format!(
                "element index {index} out of range for F_{}",
                self.q
            )))
        }
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElement> {
        (0..self.q as u16).map(FieldElement)
    }

    #[inline]
    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        FieldElement(self.add[a.index() * self.q + b.index()])
    }

    #[inline]
    pub fn neg(&self, a: FieldElement) -> FieldElement {
        FieldElement(self.neg[a.index()])
    }

    #[inline]
    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if a.is_zero() || b.is_zero() {
            return FieldElement::ZERO;
        }
        FieldElement(self.exp[self.log[a.index()] as usize + self.log[b.index()] as usize])
    }

    pub fn inv(&self, a: FieldElement) -> Result<FieldElement> {
        if a.is_zero() {
            return Err(Error::Field("zero has no multiplicative inverse".into()));
        }
        Ok(FieldElement(self.inv[a.index()]))
    }

    /// Inverse without the zero check, for elimination loops that have
    /// already selected a nonzero pivot.
    #[inline]
    pub(crate) fn inv_nonzero(&self, a: FieldElement) -> FieldElement {
        debug_assert!(!a.is_zero());
        FieldElement(self.inv[a.index()])
    }

    pub fn pow(&self, a: FieldElement, k: u64) -> FieldElement {
        if k == 0 {
            return FieldElement::ONE;
        }
        if a.is_zero() {
            return FieldElement::ZERO;
        }
        let order = (self.q - 1) as u64;
        let l = (self.log[a.index()] as u64 * (k % order)) % order;
        FieldElement(self.exp[l as usize])
    }

    /// The raw addition table, row-major `q x q`.
    #[inline]
    pub(crate) fn add_table(&self) -> &[u16] {
        &self.add
    }
}
