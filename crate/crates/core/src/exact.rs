//! Arbitrary-precision helpers shared by the counting modules.

use std::fmt;
use std::str::FromStr;
use std::sync::{OnceLock, RwLock};

use num_bigint::{BigInt, BigUint, ParseBigIntError};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::{Error, Result};

/// A non-negative count of arbitrary size.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BigCount(BigUint);

impl BigCount {
    pub fn zero() -> Self {
        BigCount(BigUint::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn as_biguint(&self) -> &BigUint {
        &self.0
    }

    pub fn into_biguint(self) -> BigUint {
        self.0
    }

    pub fn to_u64(&self) -> Option<u64> {
        self.0.to_u64()
    }

    /// Converts an exact rational into a count, failing unless it is a
    /// non-negative integer.
    pub fn from_rational(value: &BigRational, context: &str) -> Result<Self> {
        if !value.is_integer() || value.is_negative() {
            return Err(Error::InexactDivision(format!("{context}: {value}")));
        }
        Ok(BigCount(value.to_integer().magnitude().clone()))
    }
}

impl From<BigUint> for BigCount {
    fn from(v: BigUint) -> Self {
        BigCount(v)
    }
}

impl From<u64> for BigCount {
    fn from(v: u64) -> Self {
        BigCount(BigUint::from(v))
    }
}

impl PartialEq<u64> for BigCount {
    fn eq(&self, other: &u64) -> bool {
        self.0 == BigUint::from(*other)
    }
}

impl fmt::Display for BigCount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

impl FromStr for BigCount {
    type Err = ParseBigIntError;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        BigUint::from_str(s).map(BigCount)
    }
}

fn factorial_table() -> &'static RwLock<Vec<BigUint>> {
    static TABLE: OnceLock<RwLock<Vec<BigUint>>> = OnceLock::new();
    TABLE.get_or_init(|| RwLock::new(vec![BigUint::one()]))
}

/// `n!`, served from a process-wide table that only ever grows.
pub fn factorial(n: usize) -> BigUint {
    let table = factorial_table();
    {
        let read = table.read().expect("factorial table poisoned");
        if let Some(v) = read.get(n) {
            return v.clone();
        }
    }
    let mut write = table.write().expect("factorial table poisoned");
    while write.len() <= n {
        let k = write.len();
        let next = &write[k - 1] * BigUint::from(k);
        write.push(next);
    }
    write[n].clone()
}

/// `(2n - 1)!! = 1 * 3 * ... * (2n - 1)`; the empty product for `n = 0`.
pub fn double_factorial_odd(n: usize) -> BigUint {
    (1..n)
        .map(|k| BigUint::from(2 * k + 1))
        .fold(BigUint::one(), |acc, k| acc * k)
}

pub fn binomial(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    factorial(n) / (factorial(k) * factorial(n - k))
}

pub fn ratio(num: BigUint, den: BigUint) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn pow4(g: usize) -> BigUint {
    BigUint::from(4u32).pow(g as u32)
}

/// Exact quotient `num / den` or an internal-consistency error.
pub fn exact_div(num: &BigUint, den: &BigUint, context: &str) -> Result<BigUint> {
    let (q, r) = num.div_rem(den);
    if r.is_zero() {
        Ok(q)
    } else {
        Err(Error::InexactDivision(format!("{context}: {num} / {den}")))
    }
}

/// An ordered decomposition `parts[0] + ... + parts[L-1] = target`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Composition {
    parts: Vec<usize>,
    target: usize,
}

impl Composition {
    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn target(&self) -> usize {
        self.target
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }
}

/// Lazily yields every ordered `len`-tuple of non-negative integers summing
/// to `target`, in lexicographic order.
///
/// `len = 0` yields nothing.
pub fn compositions(target: usize, len: usize) -> Compositions {
    let current = (len > 0).then(|| {
        let mut parts = vec![0; len];
        parts[len - 1] = target;
        parts
    });
    Compositions { target, current }
}

#[derive(Clone, Debug)]
pub struct Compositions {
    target: usize,
    current: Option<Vec<usize>>,
}

impl Iterator for Compositions {
    type Item = Composition;

    fn next(&mut self) -> Option<Composition> {
        let parts = self.current.take()?;
        let out = Composition {
            parts: parts.clone(),
            target: self.target,
        };
        // successor: bump the rightmost slot that still has mass to its right
        let len = parts.len();
        let mut next = parts;
        let mut tail = next[len - 1];
        for i in (0..len - 1).rev() {
            if tail > 0 {
                next[i] += 1;
                for p in &mut next[i + 1..len - 1] {
                    *p = 0;
                }
                next[len - 1] = tail - 1;
                self.current = Some(next);
                break;
            }
            tail += next[i];
        }
        Some(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn iterated_product(n: usize) -> BigUint {
        let mut acc = BigUint::one();
        for k in 2..=n {
            acc *= BigUint::from(k);
        }
        acc
    }

    #[test]
    fn factorial_examples() {
        assert_eq!(factorial(0), BigUint::one());
        assert_eq!(factorial(6), BigUint::from(720u32));
        assert_eq!(iterated_product(20), BigUint::from(2432902008176640000u64));
        assert_eq!(factorial(20), BigUint::from(2432902008176640000u64));
    }

    #[test]
    fn factorial_step() {
        for n in 0..200 {
            assert_eq!(factorial(n + 1), BigUint::from(n + 1) * factorial(n));
        }
        // a cold lookup below the high-water mark must agree too
        assert_eq!(factorial(37), iterated_product(37));
    }

    #[test]
    fn double_factorial_examples() {
        assert_eq!(double_factorial_odd(0), BigUint::one());
        assert_eq!(double_factorial_odd(2), BigUint::from(3u32));
        let direct: u64 = [1u64, 3, 5, 7].iter().product();
        assert_eq!(double_factorial_odd(4), BigUint::from(direct));
    }

    #[test]
    fn double_factorial_identity() {
        for n in 0..50 {
            let lhs = double_factorial_odd(n) * BigUint::from(2u32).pow(n as u32) * factorial(n);
            assert_eq!(lhs, factorial(2 * n), "n = {n}");
        }
    }

    fn listed(g: usize, l: usize) -> Vec<Vec<usize>> {
        compositions(g, l).map(|c| c.parts().to_vec()).collect()
    }

    #[test]
    fn composition_examples() {
        assert_eq!(listed(0, 3), vec![vec![0, 0, 0]]);
        assert_eq!(listed(1, 2), vec![vec![0, 1], vec![1, 0]]);
        assert_eq!(listed(2, 2), vec![vec![0, 2], vec![1, 1], vec![2, 0]]);
        assert_eq!(listed(4, 1), vec![vec![4]]);
        assert!(listed(3, 0).is_empty());
    }

    #[test]
    fn composition_counts() {
        for g in 0..=6 {
            for l in 1..=6 {
                let all = listed(g, l);
                assert_eq!(BigUint::from(all.len()), binomial(g + l - 1, l - 1));
                assert!(all
                    .iter()
                    .all(|p| p.iter().sum::<usize>() == g && p.len() == l));
                assert!(all.windows(2).all(|w| w[0] < w[1]), "strictly increasing");
            }
        }
    }

    #[test]
    fn factorial_is_thread_safe() {
        let handles: Vec<_> = (0..8)
            .map(|t| std::thread::spawn(move || factorial(300 - t * 7)))
            .collect();
        for (t, h) in handles.into_iter().enumerate() {
            assert_eq!(h.join().unwrap(), iterated_product(300 - t * 7));
        }
    }

    #[test]
    fn rational_to_count() {
        assert_eq!(
            BigCount::from_rational(&ratio(BigUint::from(6u32), BigUint::from(3u32)), "t").unwrap(),
            2
        );
        assert!(
            BigCount::from_rational(&ratio(BigUint::from(5u32), BigUint::from(3u32)), "t").is_err()
        );
    }
}
