//! Truncated power series `c_0 + c_1 T + ... + c_N T^N` over the rationals.
//!
//! The indeterminate `x` of a polynomial family is always specialized to a
//! number before any series work; identities between polynomials are pinned
//! by evaluating at several points instead of using a bivariate ring.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::arith::{ArithFn, Rational};
use crate::error::{Error, Result};

/// Below this order the convolution runs on the calling thread.
const PAR_MUL_ORDER: usize = 96;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Series {
    coeffs: Vec<Rational>,
}

impl Series {
    pub fn zero(order: usize) -> Self {
        Series {
            coeffs: vec![Rational::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = Rational::one();
        s
    }

    /// Takes `coeffs` as `c_0, c_1, ...`, padding with zeros or truncating to
    /// `order`.
    pub fn from_coeffs(order: usize, coeffs: impl IntoIterator<Item = Rational>) -> Self {
        let mut c: Vec<Rational> = coeffs.into_iter().take(order + 1).collect();
        c.resize(order + 1, Rational::zero());
        Series { coeffs: c }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, i: usize) -> &Rational {
        &self.coeffs[i]
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Rational> {
        self.coeffs
    }

    pub fn truncate(&self, order: usize) -> Series {
        Self::from_coeffs(order, self.coeffs.iter().cloned())
    }

    pub fn scale(&self, k: &Rational) -> Series {
        Series {
            coeffs: self.coeffs.iter().map(|c| c * k).collect(),
        }
    }

    pub fn neg(&self) -> Series {
        Series {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn add(&self, other: &Series) -> Result<Series> {
        self.check_order(other)?;
        Ok(Series {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn sub(&self, other: &Series) -> Result<Series> {
        self.check_order(other)?;
        Ok(Series {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    /// Formal derivative; the result has order `N - 1` (order 0 stays 0).
    pub fn derivative(&self) -> Series {
        let order = self.order().saturating_sub(1);
        Self::from_coeffs(
            order,
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * BigInt::from(k)),
        )
    }

    /// Truncated Cauchy product.
    pub fn mul(&self, other: &Series) -> Result<Series> {
        self.check_order(other)?;
        let (a, b) = (&self.coeffs, &other.coeffs);
        let term = |n: usize| -> Rational {
            let mut acc = Rational::zero();
            for k in 0..=n {
                if a[k].is_zero() || b[n - k].is_zero() {
                    continue;
                }
                acc += &a[k] * &b[n - k];
            }
            acc
        };
        let coeffs = if self.order() >= PAR_MUL_ORDER {
            (0..=self.order()).into_par_iter().map(term).collect()
        } else {
            (0..=self.order()).map(term).collect()
        };
        Ok(Series { coeffs })
    }

    /// `exp(a)` for `a` with zero constant term, from `E' = a' E`:
    /// `n e_n = sum_{k=1..n} k a_k e_{n-k}`.
    pub fn exp(&self) -> Result<Series> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::Domain(
                "exp needs a series with zero constant term".into(),
            ));
        }
        let n_max = self.order();
        let weighted: Vec<Rational> = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| c * BigInt::from(k))
            .collect();
        let mut e = Vec::with_capacity(n_max + 1);
        e.push(Rational::one());
        for n in 1..=n_max {
            let mut acc = Rational::zero();
            for k in 1..=n {
                if !weighted[k].is_zero() {
                    acc += &weighted[k] * &e[n - k];
                }
            }
            e.push(acc / BigInt::from(n));
        }
        Ok(Series { coeffs: e })
    }

    /// Multiplicative inverse; needs a nonzero constant term.
    pub fn inverse(&self) -> Result<Series> {
        let a0 = &self.coeffs[0];
        if a0.is_zero() {
            return Err(Error::NotInvertible);
        }
        let inv0 = a0.recip();
        let mut b = Vec::with_capacity(self.coeffs.len());
        b.push(inv0.clone());
        for n in 1..=self.order() {
            let mut acc = Rational::zero();
            for k in 1..=n {
                if !self.coeffs[k].is_zero() {
                    acc += &self.coeffs[k] * &b[n - k];
                }
            }
            b.push(-(acc * &inv0));
        }
        Ok(Series { coeffs: b })
    }

    /// `a^m` by binary exponentiation; `a^0 = 1`.
    pub fn pow_int(&self, m: u32) -> Series {
        let mut result = Series::one(self.order());
        let mut base = self.clone();
        let mut e = m;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base).expect("orders agree");
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base).expect("orders agree");
            }
        }
        result
    }

    fn check_order(&self, other: &Series) -> Result<()> {
        if self.order() != other.order() {
            return Err(Error::OrderMismatch(self.order(), other.order()));
        }
        Ok(())
    }
}

/// `G(T) = sum_{n=1..N} g(n) T^n`.
pub fn ordinary_series(g: &ArithFn, n_max: usize) -> Result<Series> {
    let values = g.values(n_max)?;
    Ok(Series::from_coeffs(
        n_max,
        std::iter::once(Rational::zero()).chain(values),
    ))
}

/// The modified Eichler integral `E_g(T) = sum_{n=1..N} g(n) T^n / n`.
pub fn eichler_integral(g: &ArithFn, n_max: usize) -> Result<Series> {
    ordinary_series(&g.tilde(), n_max)
}

/// Expansion of `prod_{n=1..N} (1 - T^n)^{e_n}` to order `N`, through
/// `exp(sum_n e_n log(1 - T^n))` with `log(1 - T^n) = -sum_j T^{nj} / j`.
///
/// `exponents[i]` is `e_{i+1}`; exponents past the end of the slice are zero.
pub fn euler_product(exponents: &[Rational], n_max: usize) -> Series {
    let mut log = vec![Rational::zero(); n_max + 1];
    for (i, e) in exponents.iter().enumerate().take(n_max) {
        if e.is_zero() {
            continue;
        }
        let n = i + 1;
        for j in 1..=n_max / n {
            log[n * j] -= e / BigInt::from(j);
        }
    }
    Series { coeffs: log }
        .exp()
        .expect("logarithm has zero constant term")
}
