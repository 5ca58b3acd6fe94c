//! Brute-force oracle: exhaustive enumeration of semi-Gaussian words.
//!
//! Every way of placing the free labels on the polygon's edges and pairing
//! the remaining edges is generated, glued, and classified. Two words are
//! equivalent when a rotation of the polygon together with a renaming of
//! the glued pairs maps one onto the other; free labels travel with their
//! edges and are never renamed.
//!
//! To count a signature, boundary `j` is given the consecutive labels
//! `f_{j,1}, ..., f_{j,n_j}` and a class is counted when its traced
//! boundaries carry exactly those cyclic sequences (in the traced
//! direction, no reflection), its genus matches and it has the right
//! number of punctures.

mod enumerate;
mod surface;
mod word;

use std::collections::BTreeMap;

pub use enumerate::{enumerate_classes, fold_words, raw_word_count};
pub use surface::{boundary_successor, glue, GluedSurface};
pub use word::{canonicalize, is_canonical, CanonicalWord, GluingWord, Slot};

use crate::{BigCount, Error, Execution, Result, SurfaceSignature};

/// Largest polygon the brute-force counter enumerates unless told otherwise.
pub const DEFAULT_CAP: usize = 12;

/// The boundary data a glued surface must show to count towards a
/// signature.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundaryTarget {
    genus: usize,
    punctures: usize,
    cycles: Vec<Vec<u16>>,
    labels: Vec<u16>,
}

impl BoundaryTarget {
    /// Labels `1..=Σn`, grouped per boundary in signature order.
    pub fn new(sig: &SurfaceSignature) -> Self {
        let mut next = 1u16;
        let mut cycles = Vec::new();
        for &n in sig.boundary_sizes() {
            if n > 0 {
                cycles.push((next..next + n as u16).collect::<Vec<_>>());
                next += n as u16;
            }
        }
        let labels = (1..next).collect();
        cycles.sort_unstable();
        BoundaryTarget {
            genus: sig.genus(),
            punctures: sig.puncture_count(),
            cycles,
            labels,
        }
    }

    pub fn labels(&self) -> &[u16] {
        &self.labels
    }

    pub fn matches(&self, surface: &GluedSurface) -> bool {
        surface.genus == self.genus
            && surface.puncture_count == self.punctures
            && surface.boundary_cycles == self.cycles
    }
}

fn check_cap(sig: &SurfaceSignature, cap: usize) -> Result<usize> {
    let size = sig.polygon_size();
    if size > cap {
        return Err(Error::CapExceeded { size, cap });
    }
    if sig.edge_total() >= 0x80 {
        return Err(Error::CapExceeded { size, cap: 0x7f });
    }
    Ok(size)
}

/// Counts gluing classes realising `sig` by exhaustive enumeration.
pub fn count_brute(sig: &SurfaceSignature, cap: usize, exec: Execution) -> Result<BigCount> {
    let counts = count_brute_many(std::slice::from_ref(sig), cap, exec)?;
    Ok(counts.into_iter().next().expect("one signature"))
}

/// [`count_brute`] for many signatures, enumerating each polygon size and
/// label count only once.
pub fn count_brute_many(
    sigs: &[SurfaceSignature],
    cap: usize,
    exec: Execution,
) -> Result<Vec<BigCount>> {
    let mut groups: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
    for (i, sig) in sigs.iter().enumerate() {
        let size = check_cap(sig, cap)?;
        groups.entry((size, sig.edge_total())).or_default().push(i);
    }

    let mut out = vec![BigCount::zero(); sigs.len()];
    for ((size, _), members) in groups {
        let targets: Vec<BoundaryTarget> = members
            .iter()
            .map(|&i| BoundaryTarget::new(&sigs[i]))
            .collect();
        let labels = targets[0].labels().to_vec();
        let parts = fold_words(
            size,
            &labels,
            exec,
            || vec![0u64; targets.len()],
            |hits, word| {
                if is_canonical(word) {
                    let surface = glue(word)?;
                    for (h, t) in hits.iter_mut().zip(&targets) {
                        if t.matches(&surface) {
                            *h += 1;
                        }
                    }
                }
                Ok(())
            },
        )?;
        for (k, &i) in members.iter().enumerate() {
            let total: u64 = parts.iter().map(|p| p[k]).sum();
            out[i] = BigCount::from(total);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute(g: usize, ns: &[usize]) -> BigCount {
        let sig = SurfaceSignature::new(g, ns.to_vec()).unwrap();
        count_brute(&sig, DEFAULT_CAP, Execution::default()).unwrap()
    }

    #[test]
    fn printed_values() {
        assert_eq!(brute(0, &[1, 1]), 1);
        assert_eq!(brute(0, &[1, 0, 0]), 2);
        assert_eq!(brute(1, &[1]), 1);
        assert_eq!(brute(0, &[1, 2]), 2);
        assert_eq!(brute(0, &[3, 1]), 3);
    }

    #[test]
    fn cap_is_enforced() {
        let sig = SurfaceSignature::new(1, vec![2, 2]).unwrap();
        assert_eq!(sig.polygon_size(), 10);
        assert!(matches!(
            count_brute(&sig, 9, Execution::Sequential),
            Err(Error::CapExceeded { size: 10, cap: 9 })
        ));
    }

    #[test]
    fn target_labels_are_consecutive_per_boundary() {
        let t = BoundaryTarget::new(&SurfaceSignature::new(0, vec![2, 0, 3]).unwrap());
        assert_eq!(t.labels(), &[1, 2, 3, 4, 5]);
        assert_eq!(t.cycles, vec![vec![1, 2], vec![3, 4, 5]]);
        assert_eq!(t.punctures, 1);
    }

    #[test]
    fn reflected_boundaries_would_overcount() {
        // mutant matcher that also accepts reversed cycles
        fn loose(t: &BoundaryTarget, s: &GluedSurface) -> bool {
            let norm = |c: &Vec<u16>| {
                let mut r = c.clone();
                r.reverse();
                let lead = (0..r.len()).min_by_key(|&i| r[i]).unwrap_or(0);
                r.rotate_left(lead);
                std::cmp::min(c.clone(), r)
            };
            let mut a: Vec<_> = s.boundary_cycles.iter().map(norm).collect();
            let mut b: Vec<_> = t.cycles.iter().map(norm).collect();
            a.sort();
            b.sort();
            s.genus == t.genus && s.puncture_count == t.punctures && a == b
        }
        let sig = SurfaceSignature::new(0, vec![3]).unwrap();
        let target = BoundaryTarget::new(&sig);
        let classes = enumerate_classes(3, target.labels(), Execution::Sequential).unwrap();
        let strict = classes.iter().filter(|(_, s)| target.matches(s)).count();
        let mutant = classes.iter().filter(|(_, s)| loose(&target, s)).count();
        assert_eq!(strict, 1);
        assert_eq!(mutant, 2);
        assert_eq!(brute(0, &[3]), 1);
    }
}
