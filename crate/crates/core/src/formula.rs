//! Closed-form gluing counts.
//!
//! For a signature `(g; n_1..n_L)` with `z` punctures the count is
//!
//! ```text
//!   1/4^g * 1/z! * ñ_1..ñ_L * (Σn + 4g + 2L - 3)! / (Σn + 2g + L - 1)!
//!       * Σ_{λ_1+..+λ_L = g} Π_k (2λ_k + n_k)! / (n_k! (2λ_k + 1)!)
//! ```
//!
//! where `ñ = max(n, 1)`. The composition sum and the factorial ratio are
//! accumulated as exact rationals; the divisions by `4^g` and `z!` happen
//! last and must leave an integer.

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::exact::{compositions, factorial, pow4, ratio};
use crate::{BigCount, Result, SurfaceSignature};

/// `Σn + 4g + 2L - 2`.
pub fn polygon_size(sig: &SurfaceSignature) -> usize {
    sig.polygon_size()
}

pub fn count_closed(sig: &SurfaceSignature) -> Result<BigCount> {
    let g = sig.genus();
    let l = sig.boundaries();
    let total = sig.edge_total();
    let ns = sig.boundary_sizes();

    let marks: BigUint = ns.iter().map(|&n| BigUint::from(n.max(1))).product();
    let prefactor = ratio(
        marks * factorial(total + 4 * g + 2 * l - 3),
        factorial(total + 2 * g + l - 1),
    );

    let mut sum = BigRational::zero();
    for lambda in compositions(g, l) {
        let mut term = BigRational::one();
        for (&part, &n) in lambda.parts().iter().zip(ns) {
            term *= ratio(
                factorial(2 * part + n),
                factorial(n) * factorial(2 * part + 1),
            );
        }
        sum += term;
    }

    let divisor = pow4(g) * factorial(sig.puncture_count());
    let value = prefactor * sum / BigRational::from_integer(divisor.into());
    BigCount::from_rational(&value, &format!("closed form at {sig}"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Error;

    fn closed(g: usize, ns: &[usize]) -> BigCount {
        count_closed(&SurfaceSignature::new(g, ns.to_vec()).unwrap()).unwrap()
    }

    #[test]
    fn printed_values() {
        assert_eq!(closed(0, &[7]), 1);
        assert_eq!(closed(0, &[2, 3]), 6);
        assert_eq!(closed(1, &[1]), 1);
        // 2*3*4*5/24
        assert_eq!(closed(1, &[2]), 5);
        assert_eq!(closed(0, &[1, 0, 0]), 2);
        assert_eq!(closed(0, &[1, 0]), 1);
    }

    #[test]
    fn higher_genus_single_edge() {
        // ε_2(4)
        assert_eq!(closed(2, &[1]), 21);
    }

    #[test]
    fn polygon_size_examples() {
        let s = SurfaceSignature::new(1, vec![1]).unwrap();
        assert_eq!(polygon_size(&s), 5);
    }

    #[test]
    fn refuses_all_punctures() {
        assert!(matches!(
            SurfaceSignature::new(1, vec![0, 0, 0]),
            Err(Error::AllPunctures)
        ));
    }

    #[test]
    fn symmetric_in_boundary_order() {
        fn perms(v: &[usize]) -> Vec<Vec<usize>> {
            if v.len() <= 1 {
                return vec![v.to_vec()];
            }
            let mut out = Vec::new();
            for i in 0..v.len() {
                let mut rest = v.to_vec();
                let head = rest.remove(i);
                for mut p in perms(&rest) {
                    p.insert(0, head);
                    out.push(p);
                }
            }
            out
        }
        for g in 0..=2 {
            for l in 1..=4usize {
                for code in 0..5usize.pow(l as u32) {
                    let ns: Vec<usize> = (0..l).map(|i| code / 5usize.pow(i as u32) % 5).collect();
                    if ns.iter().all(|&n| n == 0) {
                        continue;
                    }
                    let base = closed(g, &ns);
                    assert!(!base.is_zero());
                    for p in perms(&ns) {
                        assert_eq!(closed(g, &p), base, "g={g} {ns:?} vs {p:?}");
                    }
                }
            }
        }
    }
}
