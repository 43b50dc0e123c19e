//! Truncated formal power series in one variable `q` with exact coefficients.
//!
//! A [`Series`] stores the coefficients of `q^0 .. q^N` for an explicit
//! truncation order `N`. Binary operations require both operands to carry
//! the same order; mismatches are rejected rather than silently truncated.
//!
//! The integer flavour [`TruncatedSeries`] carries every generating series in
//! the crate. [`RationalSeries`] exposes the same operations over `BigRational`.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("truncation order mismatch: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },
    #[error("constant term is not a unit")]
    NonUnitConstant,
    #[error("q-binomial [{top} choose {bottom}] requires bottom <= top")]
    BinomialRange { top: usize, bottom: usize },
}

/// Coefficient ring of a [`Series`].
pub trait Coefficient:
    Clone
    + fmt::Debug
    + PartialEq
    + Zero
    + One
    + Neg<Output = Self>
    + for<'a> AddAssign<&'a Self>
    + for<'a> SubAssign<&'a Self>
    + Send
    + Sync
{
    fn mul_ref(&self, other: &Self) -> Self;

    /// Multiplicative inverse when `self` is a unit of the ring.
    fn unit_inverse(&self) -> Option<Self>;
}

impl Coefficient for BigInt {
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }

    fn unit_inverse(&self) -> Option<Self> {
        if self.abs().is_one() {
            Some(self.clone())
        } else {
            None
        }
    }
}

impl Coefficient for BigRational {
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }

    fn unit_inverse(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.recip())
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Series<C> {
    coeffs: Vec<C>,
}

pub type TruncatedSeries = Series<BigInt>;
pub type RationalSeries = Series<BigRational>;

impl<C: Coefficient> Series<C> {
    pub fn zero(order: usize) -> Self {
        Series {
            coeffs: vec![C::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        Self::monomial(0, C::one(), order)
    }

    /// `coeff * q^exponent`, or zero when the exponent exceeds the order.
    pub fn monomial(exponent: usize, coeff: C, order: usize) -> Self {
        let mut s = Self::zero(order);
        if exponent <= order {
            s.coeffs[exponent] = coeff;
        }
        s
    }

    /// Builds a series from leading coefficients; missing entries are zero and
    /// entries beyond `order` are dropped.
    pub fn from_coeffs(order: usize, coeffs: impl IntoIterator<Item = C>) -> Self {
        let mut s = Self::zero(order);
        for (slot, c) in s.coeffs.iter_mut().zip(coeffs) {
            *slot = c;
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn coeff(&self, n: usize) -> &C {
        &self.coeffs[n]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Smallest exponent with a non-zero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    fn check_order(&self, other: &Self) -> Result<(), SeriesError> {
        if self.order() == other.order() {
            Ok(())
        } else {
            Err(SeriesError::OrderMismatch {
                left: self.order(),
                right: other.order(),
            })
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check_order(other)?;
        let mut out = self.clone();
        for (a, b) in out.coeffs.iter_mut().zip(&other.coeffs) {
            *a += b;
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check_order(other)?;
        let mut out = self.clone();
        for (a, b) in out.coeffs.iter_mut().zip(&other.coeffs) {
            *a -= b;
        }
        Ok(out)
    }

    /// Schoolbook product; exponents above the order are discarded.
    pub fn checked_mul(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check_order(other)?;
        let n = self.order();
        let mut out = Self::zero(n);
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs[..=n - i].iter().enumerate() {
                if !b.is_zero() {
                    out.coeffs[i + j] += &a.mul_ref(b);
                }
            }
        }
        Ok(out)
    }

    /// Two-sided inverse up to the truncation order. The constant term must be
    /// a unit of the coefficient ring.
    pub fn invert(&self) -> Result<Self, SeriesError> {
        let c0_inv = self.coeffs[0]
            .unit_inverse()
            .ok_or(SeriesError::NonUnitConstant)?;
        let n = self.order();
        let mut out = Self::zero(n);
        out.coeffs[0] = c0_inv.clone();
        for k in 1..=n {
            let mut acc = C::zero();
            for j in 1..=k {
                let a = &self.coeffs[j];
                if !a.is_zero() {
                    acc += &a.mul_ref(&out.coeffs[k - j]);
                }
            }
            out.coeffs[k] = -acc.mul_ref(&c0_inv);
        }
        Ok(out)
    }

    pub fn scale(&self, factor: &C) -> Self {
        Series {
            coeffs: self.coeffs.iter().map(|c| c.mul_ref(factor)).collect(),
        }
    }

    /// Multiplication by `q^k`.
    pub fn shift(&self, k: usize) -> Self {
        let n = self.order();
        let mut out = Self::zero(n);
        if k <= n {
            out.coeffs[k..].clone_from_slice(&self.coeffs[..=n - k]);
        }
        out
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = Self::one(self.order());
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    /// Multiplies in place by `1 / (1 - q^j)`.
    pub fn mul_geometric(&mut self, j: usize) {
        if j == 0 {
            return;
        }
        for n in j..self.coeffs.len() {
            let prev = self.coeffs[n - j].clone();
            self.coeffs[n] += &prev;
        }
    }

    /// Multiplies in place by `(1 - q^j)`.
    pub fn mul_binomial_factor(&mut self, j: usize) {
        if j == 0 {
            self.coeffs.iter_mut().for_each(|c| *c = C::zero());
            return;
        }
        for n in (j..self.coeffs.len()).rev() {
            let prev = self.coeffs[n - j].clone();
            self.coeffs[n] -= &prev;
        }
    }
}

impl TruncatedSeries {
    pub fn to_rational(&self) -> RationalSeries {
        Series {
            coeffs: self
                .coeffs
                .iter()
                .map(|c| BigRational::from_integer(c.clone()))
                .collect(),
        }
    }

    /// Coefficients as `i128`, for compact comparisons in tests and reports.
    pub fn to_i128(&self) -> Vec<i128> {
        use num_traits::ToPrimitive;
        self.coeffs
            .iter()
            .map(|c| c.to_i128().expect("coefficient fits in i128"))
            .collect()
    }

    pub fn from_i64s(order: usize, coeffs: &[i64]) -> Self {
        Self::from_coeffs(order, coeffs.iter().map(|&c| BigInt::from(c)))
    }

    pub fn is_nonnegative(&self) -> bool {
        self.coeffs.iter().all(|c| !c.is_negative())
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl<'a, C: Coefficient> $trait<&'a Series<C>> for &'a Series<C> {
            type Output = Series<C>;

            /// Panics when the truncation orders differ; use the `checked_*`
            /// form to get a `Result`.
            fn $method(self, rhs: &'a Series<C>) -> Series<C> {
                self.$checked(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }

        impl<C: Coefficient> $trait for Series<C> {
            type Output = Series<C>;

            fn $method(self, rhs: Series<C>) -> Series<C> {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);

impl<C: Coefficient> Neg for &Series<C> {
    type Output = Series<C>;

    fn neg(self) -> Series<C> {
        Series {
            coeffs: self.coeffs.iter().cloned().map(Neg::neg).collect(),
        }
    }
}

impl<C: Coefficient> Neg for Series<C> {
    type Output = Series<C>;

    fn neg(self) -> Series<C> {
        -&self
    }
}

impl<C: Coefficient + fmt::Display> fmt::Display for Series<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (n, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match n {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}q")?,
                _ => write!(f, "{c}q^{n}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(q^{})", self.order() + 1)
    }
}

impl<C: fmt::Debug> fmt::Debug for Series<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.coeffs).finish()
    }
}

/// `(q)_n = (1-q)(1-q^2)...(1-q^n)`, with `(q)_0 = 1`.
pub fn pochhammer(n: usize, order: usize) -> TruncatedSeries {
    let mut s = TruncatedSeries::one(order);
    for j in 1..=n.min(order) {
        s.mul_binomial_factor(j);
    }
    s
}

/// `1 / (q)_n`.
pub fn inv_pochhammer(n: usize, order: usize) -> TruncatedSeries {
    let mut s = TruncatedSeries::one(order);
    for j in 1..=n.min(order) {
        s.mul_geometric(j);
    }
    s
}

/// `prod_{j >= k} 1 / (1 - q^j)`: partitions with every part at least `k`.
pub fn prod_inv_tail(k: usize, order: usize) -> TruncatedSeries {
    let mut s = TruncatedSeries::one(order);
    for j in k.max(1)..=order {
        s.mul_geometric(j);
    }
    s
}

/// The partition generating function `H = prod_{j >= 1} 1 / (1 - q^j)`.
pub fn partition_series(order: usize) -> TruncatedSeries {
    prod_inv_tail(1, order)
}

/// Gaussian binomial `(q)_a / ((q)_b (q)_{a-b})`.
pub fn q_binomial(a: usize, b: usize, order: usize) -> Result<TruncatedSeries, SeriesError> {
    if b > a {
        return Err(SeriesError::BinomialRange { top: a, bottom: b });
    }
    // Exact as a polynomial of degree b(a-b); compute at that degree and cut.
    let full = (b * (a - b)).max(order);
    let num = pochhammer(a, full);
    let den = &inv_pochhammer(b, full) * &inv_pochhammer(a - b, full);
    let exact = &num * &den;
    Ok(TruncatedSeries::from_coeffs(
        order,
        exact.coeffs().iter().cloned(),
    ))
}

/// Cache of `1/(q)_n` for `n = 0..=max`, shared by the D-type series builders.
#[derive(Debug, Clone)]
pub struct InvPochhammerTable {
    order: usize,
    table: Vec<TruncatedSeries>,
}

impl InvPochhammerTable {
    pub fn new(order: usize) -> Self {
        let mut table = Vec::with_capacity(order + 1);
        let mut cur = TruncatedSeries::one(order);
        table.push(cur.clone());
        for j in 1..=order {
            cur.mul_geometric(j);
            table.push(cur.clone());
        }
        InvPochhammerTable { order, table }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// `1/(q)_n`; for `n > order` the extra factors are invisible at this order.
    pub fn get(&self, n: usize) -> &TruncatedSeries {
        &self.table[n.min(self.order)]
    }
}
