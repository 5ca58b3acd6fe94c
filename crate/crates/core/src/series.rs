//! Exact truncated power series in `x`.
//!
//! A [`TruncatedSeries`] keeps the coefficients of `x^0..=x^K`. Coefficients
//! are either exact rationals or dense polynomials in a second variable `y`
//! ([`YPoly`]). Every operation is exact and correct through the order it
//! reports; nothing beyond `x^K` is ever consulted.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::{Error, Result};

/// Default truncation order.
pub const DEFAULT_ORDER: usize = 16;

/// Coefficient ring of a [`TruncatedSeries`].
pub trait Coefficient: Clone + PartialEq + fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn scale(&self, factor: &BigRational) -> Self;
    /// Multiplicative inverse, when it exists in the ring.
    fn inverse(&self) -> Option<Self>;

    fn is_one(&self) -> bool {
        *self == Self::one()
    }
}

impl Coefficient for BigRational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn scale(&self, factor: &BigRational) -> Self {
        self * factor
    }
    fn inverse(&self) -> Option<Self> {
        (!Zero::is_zero(self)).then(|| self.recip())
    }
}

/// Dense polynomial in `y` with rational coefficients, trailing zeros trimmed.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct YPoly(Vec<BigRational>);

impl YPoly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        YPoly(coeffs)
    }

    pub fn constant(c: BigRational) -> Self {
        YPoly::new(vec![c])
    }

    /// `y`.
    pub fn y() -> Self {
        YPoly::new(vec![
            num_traits::zero::<BigRational>(),
            num_traits::one::<BigRational>(),
        ])
    }

    pub fn coeff(&self, power: usize) -> BigRational {
        self.0
            .get(power)
            .cloned()
            .unwrap_or_else(num_traits::zero::<BigRational>)
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.0
    }
}

impl fmt::Debug for YPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("0");
        }
        let terms: Vec<String> = self
            .0
            .iter()
            .enumerate()
            .filter(|(_, c)| !Zero::is_zero(*c))
            .map(|(k, c)| format!("({c})y^{k}"))
            .collect();
        f.write_str(&terms.join(" + "))
    }
}

impl Coefficient for YPoly {
    fn zero() -> Self {
        YPoly(Vec::new())
    }
    fn one() -> Self {
        YPoly::constant(num_traits::one::<BigRational>())
    }
    fn is_zero(&self) -> bool {
        self.0.is_empty()
    }
    fn add(&self, other: &Self) -> Self {
        let n = self.0.len().max(other.0.len());
        YPoly::new((0..n).map(|k| self.coeff(k) + other.coeff(k)).collect())
    }
    fn sub(&self, other: &Self) -> Self {
        let n = self.0.len().max(other.0.len());
        YPoly::new((0..n).map(|k| self.coeff(k) - other.coeff(k)).collect())
    }
    fn mul(&self, other: &Self) -> Self {
        if self.0.is_empty() || other.0.is_empty() {
            return YPoly::zero();
        }
        let mut out = vec![num_traits::zero::<BigRational>(); self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if Zero::is_zero(a) {
                continue;
            }
            for (j, b) in other.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        YPoly::new(out)
    }
    fn neg(&self) -> Self {
        YPoly(self.0.iter().map(|c| -c).collect())
    }
    fn scale(&self, factor: &BigRational) -> Self {
        YPoly::new(self.0.iter().map(|c| c * factor).collect())
    }
    fn inverse(&self) -> Option<Self> {
        match self.0.as_slice() {
            [c] => Some(YPoly::constant(c.recip())),
            _ => None,
        }
    }
}

/// Power series in `x` truncated after `x^order`.
#[derive(Clone, PartialEq)]
pub struct TruncatedSeries<C> {
    coeffs: Vec<C>,
}

pub type RationalSeries = TruncatedSeries<BigRational>;
pub type BivariateSeries = TruncatedSeries<YPoly>;

pub fn rational(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

impl<C: Coefficient> TruncatedSeries<C> {
    pub fn zero(order: usize) -> Self {
        TruncatedSeries {
            coeffs: vec![C::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        Self::constant(C::one(), order)
    }

    pub fn constant(c: C, order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = c;
        s
    }

    /// `x`.
    pub fn x(order: usize) -> Self {
        Self::monomial(C::one(), 1, order)
    }

    /// `c * x^power`; vanishes when `power > order`.
    pub fn monomial(c: C, power: usize, order: usize) -> Self {
        let mut s = Self::zero(order);
        if power <= order {
            s.coeffs[power] = c;
        }
        s
    }

    /// Builds a series from the given leading coefficients, padding with
    /// zeros or dropping terms past `order`.
    pub fn from_coeffs(mut coeffs: Vec<C>, order: usize) -> Self {
        coeffs.resize(order + 1, C::zero());
        TruncatedSeries { coeffs }
    }

    pub fn from_fn(order: usize, f: impl FnMut(usize) -> C) -> Self {
        TruncatedSeries {
            coeffs: (0..=order).map(f).collect(),
        }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn coefficient(&self, power: usize) -> Result<&C> {
        self.coeffs.get(power).ok_or(Error::Truncation {
            need: power,
            have: self.order(),
        })
    }

    /// Index of the first non-zero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// Same series kept only through `x^order`.
    pub fn truncate(&self, order: usize) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs.truncate(order + 1);
        Self::from_coeffs(coeffs, order)
    }

    fn check_order(&self, other: &Self) -> Result<()> {
        if self.order() == other.order() {
            Ok(())
        } else {
            Err(Error::OrderMismatch(self.order(), other.order()))
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        Ok(self.zip_with(other, C::add))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        Ok(self.zip_with(other, C::sub))
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&C, &C) -> C) -> Self {
        TruncatedSeries {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| f(a, b))
                .collect(),
        }
    }

    pub fn neg(&self) -> Self {
        self.map(C::neg)
    }

    pub fn scale(&self, factor: &BigRational) -> Self {
        self.map(|c| c.scale(factor))
    }

    /// Multiplies every coefficient by `c`.
    pub fn scale_by(&self, c: &C) -> Self {
        self.map(|a| a.mul(c))
    }

    fn map(&self, f: impl Fn(&C) -> C) -> Self {
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }

    /// Cauchy product truncated at the common order.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        Ok(self.mul_unchecked(other))
    }

    fn mul_unchecked(&self, other: &Self) -> Self {
        let k = self.order();
        let mut out = vec![C::zero(); k + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs[..=k - i].iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] = out[i + j].add(&a.mul(b));
                }
            }
        }
        TruncatedSeries { coeffs: out }
    }

    /// Quotient `self / other`.
    ///
    /// When `other` starts at `x^v` with `v > 0` the leading `x^v` must cancel
    /// against `self`; the quotient is then known only through `x^(K - v)`
    /// and is returned at that order.
    pub fn div(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        let shift = other.valuation().ok_or(Error::NotInvertible)?;
        if self.coeffs[..shift].iter().any(|c| !c.is_zero()) {
            return Err(Error::NotInvertible);
        }
        let num = &self.coeffs[shift..];
        let den = &other.coeffs[shift..];
        let lead = den[0].inverse().ok_or(Error::NotInvertible)?;
        let mut q: Vec<C> = Vec::with_capacity(num.len());
        for k in 0..num.len() {
            let mut acc = num[k].clone();
            for i in 0..k {
                if !den[k - i].is_zero() {
                    acc = acc.sub(&q[i].mul(&den[k - i]));
                }
            }
            q.push(acc.mul(&lead));
        }
        Ok(TruncatedSeries { coeffs: q })
    }

    /// `self^m` by repeated squaring; `self^0 = 1`.
    pub fn pow(&self, mut m: u64) -> Self {
        let mut acc = Self::one(self.order());
        let mut base = self.clone();
        while m > 0 {
            if m & 1 == 1 {
                acc = acc.mul_unchecked(&base);
            }
            m >>= 1;
            if m > 0 {
                base = base.mul_unchecked(&base);
            }
        }
        acc
    }

    /// `Σ_m self^m / m!` for a series without constant term.
    pub fn exp(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::NonZeroConstant);
        }
        let k = self.order();
        let mut sum = Self::one(k);
        let mut term = Self::one(k);
        for m in 1..=k {
            term = term.mul_unchecked(self).scale(&rational(1, m as i64));
            if term.valuation().is_none() {
                break;
            }
            sum = sum.zip_with(&term, C::add);
        }
        Ok(sum)
    }

    /// `log(self)` for a series with constant term one, as the integral of
    /// `self' / self`.
    pub fn log(&self) -> Result<Self> {
        if !self.coeffs[0].is_one() {
            return Err(Error::LogConstant);
        }
        let k = self.order();
        let derivative = Self::from_fn(k, |i| {
            if i < k {
                self.coeffs[i + 1].scale(&rational(i as i64 + 1, 1))
            } else {
                C::zero()
            }
        });
        let ratio = derivative.div(self)?;
        Ok(Self::from_fn(k, |i| {
            if i == 0 {
                C::zero()
            } else {
                ratio.coeffs[i - 1].scale(&rational(1, i as i64))
            }
        }))
    }
}

impl RationalSeries {
    /// Embeds a rational series as a bivariate one with `y`-free coefficients.
    pub fn lift(&self) -> BivariateSeries {
        TruncatedSeries {
            coeffs: self.coeffs.iter().cloned().map(YPoly::constant).collect(),
        }
    }
}

impl BivariateSeries {
    /// Coefficient of `x^x_power y^y_power`.
    pub fn coefficient_xy(&self, x_power: usize, y_power: usize) -> Result<BigRational> {
        Ok(self.coefficient(x_power)?.coeff(y_power))
    }
}

impl<C: fmt::Debug> fmt::Debug for TruncatedSeries<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.coeffs).finish()?;
        write!(f, " + O(x^{})", self.coeffs.len())
    }
}
