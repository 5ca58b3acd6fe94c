//! Gluing counts by the boundary-cutting recursion.
//!
//! Writing `Ñ = N * z!` for a signature with `z` punctures and `ñ = max(n, 1)`,
//!
//! ```text
//! (L + 2g - 1) Ñ_{g,L}(n) = Σ_{i<j} ñ_i ñ_j Ñ_{g,L-1}(n_i + n_j + 2, rest)
//!                         + 1/2 Σ_i ñ_i Σ_{x=1}^{n_i+1} Ñ_{g-1,L+1}(n_i + 2 - x, x, rest)
//! ```
//!
//! with `N_{0,1}(n) = 1` and zero outside `L >= 1, g >= 0`. The first sum
//! merges two boundaries at fixed genus, the second removes a handle, so the
//! recursion descends in `(g, L)` and terminates.
//!
//! Memo tables hold plain counts keyed by the normalized signature; the
//! punctured variant `Ñ` only exists inside this module.

mod store;

use std::sync::RwLock;

use num_bigint::BigUint;
use num_traits::Zero;

use crate::exact::{exact_div, factorial};
use crate::{BigCount, Error, Result, SurfaceSignature};

pub use store::{CountTable, CACHE_HEADER};

/// Genus plus boundary sizes sorted non-increasingly.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MemoKey {
    genus: usize,
    sizes: Vec<usize>,
}

impl MemoKey {
    pub fn new(genus: usize, mut sizes: Vec<usize>) -> Self {
        sizes.sort_unstable_by(|a, b| b.cmp(a));
        MemoKey { genus, sizes }
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn signature(&self) -> Result<SurfaceSignature> {
        SurfaceSignature::new(self.genus, self.sizes.clone())
    }

    fn punctures(&self) -> usize {
        self.sizes.iter().filter(|&&n| n == 0).count()
    }
}

impl From<&SurfaceSignature> for MemoKey {
    fn from(sig: &SurfaceSignature) -> Self {
        MemoKey::new(sig.genus(), sig.boundary_sizes().to_vec())
    }
}

impl std::fmt::Display for MemoKey {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let ns: Vec<String> = self.sizes.iter().map(|n| n.to_string()).collect();
        write!(f, "g={};ns={}", self.genus, ns.join(","))
    }
}

/// Storage for already computed counts.
pub trait Memo {
    fn lookup(&self, key: &MemoKey) -> Option<BigCount>;
    fn record(&mut self, key: MemoKey, value: BigCount) -> Result<()>;
}

impl Memo for CountTable {
    fn lookup(&self, key: &MemoKey) -> Option<BigCount> {
        self.get(key).cloned()
    }

    fn record(&mut self, key: MemoKey, value: BigCount) -> Result<()> {
        self.insert(key, value);
        Ok(())
    }
}

/// A count table behind a lock, shareable between threads.
///
/// Concurrent fills of the same key must agree; a disagreement is reported
/// as [`Error::MemoConflict`].
#[derive(Debug, Default)]
pub struct SharedCountTable(RwLock<CountTable>);

impl SharedCountTable {
    pub fn new(table: CountTable) -> Self {
        SharedCountTable(RwLock::new(table))
    }

    pub fn into_inner(self) -> CountTable {
        self.0.into_inner().expect("count table poisoned")
    }

    pub fn len(&self) -> usize {
        self.0.read().expect("count table poisoned").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

impl Memo for &SharedCountTable {
    fn lookup(&self, key: &MemoKey) -> Option<BigCount> {
        self.0
            .read()
            .expect("count table poisoned")
            .get(key)
            .cloned()
    }

    fn record(&mut self, key: MemoKey, value: BigCount) -> Result<()> {
        let mut table = self.0.write().expect("count table poisoned");
        match table.get(&key) {
            Some(existing) if *existing != value => Err(Error::MemoConflict {
                key: key.to_string(),
                first: existing.to_string(),
                second: value.to_string(),
            }),
            Some(_) => Ok(()),
            None => {
                table.insert(key, value);
                Ok(())
            }
        }
    }
}

pub fn count_recursive<M: Memo>(sig: &SurfaceSignature, memo: &mut M) -> Result<BigCount> {
    let key = MemoKey::from(sig);
    count_key(&key, memo)
}

fn count_key<M: Memo>(key: &MemoKey, memo: &mut M) -> Result<BigCount> {
    if let Some(hit) = memo.lookup(key) {
        return Ok(hit);
    }
    let tilde = tilde_count(key, memo)?;
    let count = exact_div(
        &tilde,
        &factorial(key.punctures()),
        &format!("Ñ -> N at {key}"),
    )?;
    let count = BigCount::from(count);
    memo.record(key.clone(), count.clone())?;
    Ok(count)
}

/// `Ñ` for a key with `L >= 1`; genus underflow is handled by the caller.
fn tilde_count<M: Memo>(key: &MemoKey, memo: &mut M) -> Result<BigUint> {
    let l = key.sizes.len();
    if key.genus == 0 && l == 1 {
        return Ok(BigUint::from(1u32));
    }
    let terms = cut_terms(key, memo)?;
    let weight = l + 2 * key.genus - 1;
    exact_div(
        &(terms.merge * 2u32 + terms.handle),
        &BigUint::from(2 * weight),
        &format!("recursion at {key}"),
    )
}

/// The two right-hand sums of the recursion before the overall `1/2` on the
/// handle term is applied.
pub(crate) struct CutTerms {
    pub(crate) merge: BigUint,
    pub(crate) handle: BigUint,
}

pub(crate) fn cut_terms<M: Memo>(key: &MemoKey, memo: &mut M) -> Result<CutTerms> {
    let ns = &key.sizes;
    let l = ns.len();
    let mark = |n: usize| BigUint::from(n.max(1));

    let mut merge = BigUint::zero();
    for i in 0..l {
        for j in i + 1..l {
            let mut sizes: Vec<usize> = ns
                .iter()
                .enumerate()
                .filter(|&(k, _)| k != i && k != j)
                .map(|(_, &n)| n)
                .collect();
            sizes.push(ns[i] + ns[j] + 2);
            let sub = MemoKey::new(key.genus, sizes);
            merge += mark(ns[i]) * mark(ns[j]) * tilde_of(&sub, memo)?;
        }
    }

    let mut handle = BigUint::zero();
    if key.genus > 0 {
        for i in 0..l {
            // equal sizes give identical inner sums
            if i > 0 && ns[i] == ns[i - 1] {
                continue;
            }
            let multiplicity = ns.iter().filter(|&&n| n == ns[i]).count();
            let rest: Vec<usize> = ns
                .iter()
                .enumerate()
                .filter(|&(k, _)| k != i)
                .map(|(_, &n)| n)
                .collect();
            let mut inner = BigUint::zero();
            for x in 1..=ns[i] + 1 {
                let mut sizes = rest.clone();
                sizes.push(ns[i] + 2 - x);
                sizes.push(x);
                inner += tilde_of(&MemoKey::new(key.genus - 1, sizes), memo)?;
            }
            handle += mark(ns[i]) * BigUint::from(multiplicity) * inner;
        }
    }
    Ok(CutTerms { merge, handle })
}

fn tilde_of<M: Memo>(key: &MemoKey, memo: &mut M) -> Result<BigUint> {
    let count = count_key(key, memo)?;
    Ok(count.into_biguint() * factorial(key.punctures()))
}
