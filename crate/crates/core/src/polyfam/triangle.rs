use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::{factorial, ArithFn, Rational};
use crate::error::{Error, Result};
use crate::poly::Poly;

/// Rows at least this long compute their columns in parallel.
const PAR_ROW_LEN: usize = 48;

/// The denominator function `h` of the recursion.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum HFn {
    One,
    Id,
}

impl HFn {
    pub fn value(self, n: usize) -> usize {
        match self {
            HFn::One => 1,
            HFn::Id => n,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            HFn::One => "one",
            HFn::Id => "id",
        }
    }

    pub fn from_name(name: &str) -> Result<Self> {
        match name.trim() {
            "one" | "1" => Ok(HFn::One),
            "id" => Ok(HFn::Id),
            other => Err(Error::UnknownFunction(other.to_string())),
        }
    }

    /// `prod_{k=1..n} h(k)`.
    pub fn product(self, n: usize) -> BigInt {
        match self {
            HFn::One => BigInt::one(),
            HFn::Id => factorial(n),
        }
    }
}

/// Row `n` of a triangle: `A_{n,m} = coeffs[m - 1] / scale`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScaledRow {
    scale: BigInt,
    coeffs: Vec<BigInt>,
}

impl ScaledRow {
    pub fn new(scale: BigInt, coeffs: Vec<BigInt>) -> Result<Self> {
        if !scale.is_positive() {
            return Err(Error::Domain(format!(
                "row scale must be positive, got {scale}"
            )));
        }
        Ok(ScaledRow { scale, coeffs })
    }

    pub fn scale(&self) -> &BigInt {
        &self.scale
    }

    /// Scaled coefficients for `m = 1, 2, ...`.
    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn value(&self, m: usize) -> Rational {
        Rational::new(self.coeffs[m - 1].clone(), self.scale.clone())
    }

    fn from_rationals(values: &[Rational]) -> Self {
        let scale = values
            .iter()
            .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
        let coeffs = values
            .iter()
            .map(|v| v.numer() * (&scale / v.denom()))
            .collect();
        ScaledRow { scale, coeffs }
    }
}

/// Which arithmetic the builder uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum BuildPath {
    /// Integer rows whenever `g` is integer-valued, rationals otherwise.
    #[default]
    Auto,
    /// Always recurse over reduced rationals.
    Rational,
}

/// The double sequence `A_{n,m}` of `P_n^{g,h}` for `1 <= m <= n <= N`,
/// optionally limited to the columns `m <= column_cap`.
#[derive(Debug, Clone)]
pub struct Triangle {
    g: ArithFn,
    h: HFn,
    n_max: usize,
    column_cap: Option<usize>,
    scale_kind: Option<HFn>,
    rows: Vec<ScaledRow>,
}

impl Triangle {
    pub fn builder(g: &ArithFn, h: HFn, n_max: usize) -> TriangleBuilder<'_> {
        TriangleBuilder {
            g,
            h,
            n_max,
            column_cap: None,
            path: BuildPath::Auto,
        }
    }

    /// Reassembles a triangle from stored rows; row `n` must hold
    /// `min(n, column_cap)` coefficients.
    pub fn from_parts(
        g: ArithFn,
        h: HFn,
        column_cap: Option<usize>,
        scale_kind: Option<HFn>,
        rows: Vec<ScaledRow>,
    ) -> Result<Self> {
        if rows.is_empty() {
            return Err(Error::Domain("a triangle needs at least row 0".into()));
        }
        let n_max = rows.len() - 1;
        for (n, row) in rows.iter().enumerate() {
            let want = column_cap.map_or(n, |c| c.min(n));
            if row.coeffs.len() != want {
                return Err(Error::Domain(format!(
                    "row {n} has {} coefficients, expected {want}",
                    row.coeffs.len()
                )));
            }
            if let Some(kind) = scale_kind {
                if row.scale != kind.product(n) {
                    return Err(Error::Domain(format!("row {n} scale is not canonical")));
                }
            }
        }
        Ok(Triangle {
            g,
            h,
            n_max,
            column_cap,
            scale_kind,
            rows,
        })
    }

    pub fn g(&self) -> &ArithFn {
        &self.g
    }

    pub fn h(&self) -> HFn {
        self.h
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    pub fn column_cap(&self) -> Option<usize> {
        self.column_cap
    }

    /// When set, every row scale equals `prod_{k<=n} kind(k)`.
    pub fn scale_kind(&self) -> Option<HFn> {
        self.scale_kind
    }

    /// Number of stored coefficients in row `n`.
    pub fn columns_in_row(&self, n: usize) -> usize {
        self.column_cap.map_or(n, |c| c.min(n))
    }

    pub fn rows(&self) -> &[ScaledRow] {
        &self.rows
    }

    pub fn row(&self, n: usize) -> Result<&ScaledRow> {
        self.rows
            .get(n)
            .ok_or_else(|| Error::out_of_range(n, format!("0..={}", self.n_max)))
    }

    /// `A_{n,m}`, zero outside the triangular shape (and `A_{0,0} = 1`).
    pub fn get(&self, n: usize, m: usize) -> Result<Rational> {
        let row = self.row(n)?;
        if m == 0 {
            return Ok(if n == 0 {
                Rational::one()
            } else {
                Rational::zero()
            });
        }
        if m > n {
            return Ok(Rational::zero());
        }
        if m > row.coeffs.len() {
            return Err(Error::out_of_range(
                m,
                format!("columns 1..={}", row.coeffs.len()),
            ));
        }
        Ok(row.value(m))
    }

    /// `A_{n,1}, ..., A_{n,n}` (or up to the column cap).
    pub fn row_values(&self, n: usize) -> Result<Vec<Rational>> {
        let row = self.row(n)?;
        Ok((1..=row.coeffs.len()).map(|m| row.value(m)).collect())
    }

    /// Keeps rows `0..=n_max`.
    pub fn truncate(&self, n_max: usize) -> Result<Triangle> {
        if n_max > self.n_max {
            return Err(Error::out_of_range(n_max, format!("0..={}", self.n_max)));
        }
        let mut t = self.clone();
        t.rows.truncate(n_max + 1);
        t.n_max = n_max;
        Ok(t)
    }

    /// Exact equality of every stored `A_{n,m}`, independent of row scales.
    pub fn same_values(&self, other: &Triangle) -> bool {
        self.n_max == other.n_max
            && self.rows.iter().zip(&other.rows).all(|(a, b)| {
                a.coeffs.len() == b.coeffs.len()
                    && a.coeffs
                        .iter()
                        .zip(&b.coeffs)
                        .all(|(x, y)| x * &b.scale == y * &a.scale)
            })
    }
}

pub struct TriangleBuilder<'a> {
    g: &'a ArithFn,
    h: HFn,
    n_max: usize,
    column_cap: Option<usize>,
    path: BuildPath,
}

impl TriangleBuilder<'_> {
    /// Only compute columns `m <= cap`.
    pub fn columns(mut self, cap: usize) -> Self {
        self.column_cap = Some(cap);
        self
    }

    pub fn path(mut self, path: BuildPath) -> Self {
        self.path = path;
        self
    }

    pub fn build(self) -> Result<Triangle> {
        if let Some(limit) = self.g.domain_limit().filter(|&l| l < self.n_max) {
            return Err(Error::Domain(format!(
                "{} is tabulated only up to n = {limit}, N = {} requested",
                self.g.label(),
                self.n_max
            )));
        }
        let integer_g = match self.path {
            BuildPath::Auto => self.g.integer_values(self.n_max)?,
            BuildPath::Rational => None,
        };
        let cap = self.column_cap.map_or(self.n_max, |c| c.min(self.n_max));
        let (rows, scale_kind) = match integer_g {
            Some(g) => (integer_rows(&g, self.h, self.n_max, cap), Some(self.h)),
            None => (
                rational_rows(&self.g.values(self.n_max)?, self.h, self.n_max, cap),
                None,
            ),
        };
        Ok(Triangle {
            g: self.g.clone(),
            h: self.h,
            n_max: self.n_max,
            column_cap: self.column_cap,
            scale_kind,
            rows,
        })
    }
}

/// Builds `A^{g,h}` for `1 <= m <= n <= n_max` by the defining recursion.
pub fn build_triangle(g: &ArithFn, h: HFn, n_max: usize) -> Result<Triangle> {
    Triangle::builder(g, h, n_max).build()
}

/// Integer rows `B_{n,m} = (prod_{k<=n} h(k)) A_{n,m}`.
///
/// For `h = 1`: `B_{n,m} = sum_k g(k) B_{n-k,m-1}`.
/// For `h = id`: `B_{n,m} = sum_k g(k) (n-1)!/(n-k)! B_{n-k,m-1}`, evaluated
/// Horner-style from the innermost `k` so every step multiplies by a word.
fn integer_rows(g: &[BigInt], h: HFn, n_max: usize, cap: usize) -> Vec<ScaledRow> {
    let mut rows: Vec<ScaledRow> = Vec::with_capacity(n_max + 1);
    rows.push(ScaledRow {
        scale: BigInt::one(),
        coeffs: Vec::new(),
    });
    let mut scale = BigInt::one();
    for n in 1..=n_max {
        scale *= h.value(n);
        let width = n.min(cap);
        let entry = |m: usize| -> BigInt {
            let prev = |j: usize| -> Option<&BigInt> {
                // B_{j, m-1}; B_{0,0} = 1 is handled by the caller.
                rows[j].coeffs.get(m - 2)
            };
            let k_max = n - m + 1;
            let mut acc = BigInt::zero();
            for k in (1..=k_max).rev() {
                let j = n - k;
                if h == HFn::Id && !acc.is_zero() {
                    acc *= j;
                }
                if m == 1 {
                    if j == 0 {
                        acc += &g[k - 1];
                    }
                } else if let Some(b) = prev(j) {
                    if !b.is_zero() {
                        acc += b * &g[k - 1];
                    }
                }
            }
            acc
        };
        let coeffs: Vec<BigInt> = if width >= PAR_ROW_LEN {
            (1..=width).into_par_iter().map(entry).collect()
        } else {
            (1..=width).map(entry).collect()
        };
        rows.push(ScaledRow {
            scale: scale.clone(),
            coeffs,
        });
    }
    rows
}

fn rational_rows(g: &[Rational], h: HFn, n_max: usize, cap: usize) -> Vec<ScaledRow> {
    let mut values: Vec<Vec<Rational>> = vec![Vec::new()];
    for n in 1..=n_max {
        let width = n.min(cap);
        let inv_h = Rational::new(BigInt::one(), BigInt::from(h.value(n)));
        let entry = |m: usize| -> Rational {
            let mut acc = Rational::zero();
            for k in 1..=n - m + 1 {
                let j = n - k;
                if m == 1 {
                    if j == 0 {
                        acc += &g[k - 1];
                    }
                } else if let Some(a) = values[j].get(m - 2) {
                    acc += a * &g[k - 1];
                }
            }
            acc * &inv_h
        };
        let row: Vec<Rational> = if width >= PAR_ROW_LEN {
            (1..=width).into_par_iter().map(entry).collect()
        } else {
            (1..=width).map(entry).collect()
        };
        values.push(row);
    }
    values
        .iter()
        .map(|v| ScaledRow::from_rationals(v))
        .collect()
}

/// `P_n^{g,h}(x)`; `P_0 = 1`.
pub fn row_poly(tri: &Triangle, n: usize) -> Result<Poly> {
    if n == 0 {
        tri.row(0)?;
        return Ok(Poly::constant(Rational::one()));
    }
    if tri.columns_in_row(n) < n {
        return Err(Error::Domain(format!(
            "row {n} is column-limited to {} entries",
            tri.columns_in_row(n)
        )));
    }
    let mut coeffs = vec![Rational::zero()];
    coeffs.extend(tri.row_values(n)?);
    Ok(Poly::new(coeffs))
}

/// Maps `A^{g,id}` to `A^{g~,1}` through `A'_{n,m} = m! A_{n,m}`.
pub fn convert(tri: &Triangle) -> Result<Triangle> {
    if tri.h != HFn::Id {
        return Err(Error::Domain(format!(
            "conversion needs an h = id triangle, got h = {}",
            tri.h.label()
        )));
    }
    let rows = tri
        .rows
        .iter()
        .map(|row| {
            let mut fact = BigInt::one();
            let coeffs = row
                .coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| {
                    fact *= i + 1;
                    c * &fact
                })
                .collect();
            ScaledRow {
                scale: row.scale.clone(),
                coeffs,
            }
        })
        .collect();
    Ok(Triangle {
        g: tri.g.tilde(),
        h: HFn::One,
        n_max: tri.n_max,
        column_cap: tri.column_cap,
        scale_kind: tri.scale_kind,
        rows,
    })
}
