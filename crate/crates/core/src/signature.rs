use std::fmt;

use crate::{Error, Result};

/// Target surface: genus `g` and the edge counts `n_1..n_L` of its
/// boundaries. A boundary with zero edges is a puncture.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SurfaceSignature {
    genus: usize,
    boundary_sizes: Vec<usize>,
}

impl SurfaceSignature {
    pub fn new(genus: usize, boundary_sizes: Vec<usize>) -> Result<Self> {
        if boundary_sizes.is_empty() {
            return Err(Error::NoBoundaries);
        }
        if boundary_sizes.iter().all(|&n| n == 0) {
            return Err(Error::AllPunctures);
        }
        Ok(SurfaceSignature {
            genus,
            boundary_sizes,
        })
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn boundary_sizes(&self) -> &[usize] {
        &self.boundary_sizes
    }

    /// Number of boundaries `L`, punctures included.
    pub fn boundaries(&self) -> usize {
        self.boundary_sizes.len()
    }

    pub fn edge_total(&self) -> usize {
        self.boundary_sizes.iter().sum()
    }

    pub fn puncture_count(&self) -> usize {
        self.boundary_sizes.iter().filter(|&&n| n == 0).count()
    }

    /// Size of the polygon whose gluings realise this surface:
    /// `sum(n) + 4g + 2L - 2`.
    pub fn polygon_size(&self) -> usize {
        self.edge_total() + 4 * self.genus + 2 * self.boundaries() - 2
    }

    /// Same surface with boundary sizes sorted non-increasingly.
    pub fn normalized(&self) -> Self {
        let mut ns = self.boundary_sizes.clone();
        ns.sort_unstable_by(|a, b| b.cmp(a));
        SurfaceSignature {
            genus: self.genus,
            boundary_sizes: ns,
        }
    }
}

impl fmt::Display for SurfaceSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "g={};ns=", self.genus)?;
        for (i, n) in self.boundary_sizes.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{n}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sig(g: usize, ns: &[usize]) -> SurfaceSignature {
        SurfaceSignature::new(g, ns.to_vec()).unwrap()
    }

    #[test]
    fn polygon_size_examples() {
        assert_eq!(sig(0, &[1, 1]).polygon_size(), 4);
        assert_eq!(sig(1, &[1]).polygon_size(), 5);
        assert_eq!(sig(0, &[1, 0, 0]).polygon_size(), 5);
    }

    #[test]
    fn rejects_degenerate() {
        assert!(matches!(
            SurfaceSignature::new(0, vec![]),
            Err(Error::NoBoundaries)
        ));
        assert!(matches!(
            SurfaceSignature::new(2, vec![0, 0]),
            Err(Error::AllPunctures)
        ));
    }

    #[test]
    fn normalization_and_display() {
        let s = sig(1, &[0, 3, 1]);
        assert_eq!(s.normalized().boundary_sizes(), &[3, 1, 0]);
        assert_eq!(s.puncture_count(), 1);
        assert_eq!(s.to_string(), "g=1;ns=0,3,1");
    }
}
