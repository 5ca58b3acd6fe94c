//! Harer-Zagier numbers `ε_g(N)`: rooted complete gluings of a `2N`-gon into
//! a closed genus-`g` surface.
//!
//! Three independent routes are provided: the composition sum
//! ([`hz_sum`]), the `tanh` coefficient formula ([`hz_tanh`]) and the
//! gluing count with one free edge and `N - 2g` punctures
//! ([`hz_from_gluing_counts`]). `ε_g(N) = 0` whenever `N < 2g`.

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::exact::{compositions, double_factorial_odd, exact_div, factorial, pow4, ratio};
use crate::formula::count_closed;
use crate::series::{rational, BivariateSeries, RationalSeries, YPoly};
use crate::{BigCount, Result, SurfaceSignature};

/// Genus `g` and half-size `N` of the glued `2N`-gon.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HzIndex {
    pub genus: usize,
    pub n: usize,
}

impl HzIndex {
    pub fn new(genus: usize, n: usize) -> Self {
        HzIndex { genus, n }
    }

    /// Whether `ε_g(N)` can be non-zero.
    pub fn in_support(&self) -> bool {
        self.n >= 2 * self.genus
    }

    /// Boundary count `N - 2g + 1` of the matching gluing signature.
    fn boundaries(&self) -> usize {
        self.n - 2 * self.genus + 1
    }
}

/// `1/4^g * (2N)! / ((N - 2g + 1)! N!) * Σ_{λ} Π_k 1/(2λ_k + 1)` over ordered
/// compositions of `g` into `N - 2g + 1` parts.
pub fn hz_sum(idx: HzIndex) -> Result<BigCount> {
    if !idx.in_support() {
        return Ok(BigCount::zero());
    }
    let n = idx.n;
    let l = idx.boundaries();
    let mut sum = BigRational::zero();
    for lambda in compositions(idx.genus, l) {
        let den: BigUint = lambda
            .parts()
            .iter()
            .map(|&p| BigUint::from(2 * p + 1))
            .product();
        sum += ratio(BigUint::one(), den);
    }
    let value = ratio(
        factorial(2 * n),
        factorial(l) * factorial(n) * pow4(idx.genus),
    ) * sum;
    BigCount::from_rational(&value, &format!("hz_sum at g={} N={n}", idx.genus))
}

/// `(x/2) / tanh(x/2)` through `x^order`, built as `cosh(x/2)` over
/// `sinh(x/2) / (x/2)` so that no pole is ever divided.
pub fn half_x_coth_half_x(order: usize) -> Result<RationalSeries> {
    let inv_pow2_fact = |k: usize| ratio(BigUint::one(), factorial(k) << k);
    let even = |f: &dyn Fn(usize) -> BigRational| {
        RationalSeries::from_fn(order, |k| {
            if k % 2 == 0 {
                f(k)
            } else {
                BigRational::zero()
            }
        })
    };
    let cosh = even(&|k| inv_pow2_fact(k));
    // sinh(x/2)/(x/2) = Σ (x/2)^{2m} / (2m+1)!
    let sinc = even(&|k| ratio(BigUint::one(), factorial(k + 1) << k));
    cosh.div(&sinc)
}

/// `(2N)! / ((N+1)! (N-2g)!)` times the `x^{2g}` coefficient of
/// `((x/2)/tanh(x/2))^{N+1}`, using series truncated at `order`.
pub fn hz_tanh(idx: HzIndex, order: usize) -> Result<BigCount> {
    let g2 = 2 * idx.genus;
    if order < g2 {
        return Err(crate::Error::Truncation {
            need: g2,
            have: order,
        });
    }
    if !idx.in_support() {
        return Ok(BigCount::zero());
    }
    let n = idx.n;
    let power = half_x_coth_half_x(order)?.pow(n as u64 + 1);
    let coeff = power.coefficient(g2)?.clone();
    let value = ratio(factorial(2 * n), factorial(n + 1) * factorial(n - g2)) * coeff;
    BigCount::from_rational(&value, &format!("hz_tanh at g={} N={n}", idx.genus))
}

/// Gluing count with one 1-gon boundary and `N - 2g` punctures.
pub fn hz_from_gluing_counts(idx: HzIndex) -> Result<BigCount> {
    if !idx.in_support() {
        return Ok(BigCount::zero());
    }
    let sig = SurfaceSignature::new(idx.genus, hz_holes(idx))?;
    count_closed(&sig)
}

/// Boundary sizes `[1, 0, ..., 0]` realising `ε_g(N)` as a gluing count.
pub fn hz_holes(idx: HzIndex) -> Vec<usize> {
    let mut ns = vec![0; idx.boundaries()];
    ns[0] = 1;
    ns
}

/// `(2N)! / ((N+1)! N!)`.
pub fn catalan(n: usize) -> BigCount {
    BigCount::from(factorial(2 * n) / (factorial(n + 1) * factorial(n)))
}

/// `(2N)! / (12 (N-2)! N!)`; zero below `N = 2`.
pub fn hz_toric(n: usize) -> Result<BigCount> {
    if n < 2 {
        return Ok(BigCount::zero());
    }
    let den = BigUint::from(12u32) * factorial(n - 2) * factorial(n);
    exact_div(&factorial(2 * n), &den, "hz_toric").map(BigCount::from)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GfReport {
    pub holds: bool,
    /// First `(x power, y power)` where the two sides differ.
    pub first_discrepancy: Option<(usize, usize)>,
}

/// Left side `1 + 2 Σ ε_g(N) x^{N+1} y^{N-2g+1} / (2N-1)!!` assembled from
/// [`hz_sum`], through `x^order`.
pub fn gf_lhs(order: usize) -> Result<BivariateSeries> {
    let mut coeffs = vec![vec![BigRational::zero(); order + 1]; order + 1];
    coeffs[0][0] = BigRational::one();
    for n in 0..order {
        for g in 0..=n / 2 {
            let eps = hz_sum(HzIndex::new(g, n))?;
            let term = ratio(eps.into_biguint() * 2u32, double_factorial_odd(n));
            coeffs[n + 1][n - 2 * g + 1] += term;
        }
    }
    Ok(BivariateSeries::from_coeffs(
        coeffs.into_iter().map(YPoly::new).collect(),
        order,
    ))
}

/// Right side `((1+x)/(1-x))^y = exp(y log((1+x)/(1-x)))`, through `x^order`.
pub fn gf_rhs(order: usize) -> Result<BivariateSeries> {
    let num = RationalSeries::from_coeffs(vec![rational(1, 1), rational(1, 1)], order);
    let den = RationalSeries::from_coeffs(vec![rational(1, 1), rational(-1, 1)], order);
    let log = num.div(&den)?.log()?;
    log.lift().scale_by(&YPoly::y()).exp()
}

/// Compares both sides of the Harer-Zagier generating function exactly.
pub fn gf_identity_check(order: usize) -> Result<GfReport> {
    let lhs = gf_lhs(order)?;
    let rhs = gf_rhs(order)?;
    let mut first = None;
    'outer: for x in 0..=order {
        let (a, b) = (lhs.coefficient(x)?, rhs.coefficient(x)?);
        let top = a.coeffs().len().max(b.coeffs().len());
        for y in 0..top {
            if a.coeff(y) != b.coeff(y) {
                first = Some((x, y));
                break 'outer;
            }
        }
    }
    Ok(GfReport {
        holds: first.is_none(),
        first_discrepancy: first,
    })
}
