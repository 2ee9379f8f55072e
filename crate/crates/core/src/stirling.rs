//! Unsigned Stirling numbers of the first kind and the harmonic-number
//! quantities attached to the rising-factorial family `P_n^{1,id}`.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::arith::{factorial, harmonic_numerators, harmonic_prefix, ArithFn, Rational};
use crate::error::{Error, Result};
use crate::polyfam::{convert, HFn, ScaledRow, Triangle};

/// `S(n, m)` for `0 <= m <= min(n, m_max)`, `n <= n_max`.
///
/// Only the first `m_max` columns are kept, so long scans hold a handful of
/// factorial-sized integers per row instead of the whole row.
#[derive(Debug, Clone)]
pub struct StirlingColumnTable {
    m_max: usize,
    rows: Vec<Vec<BigInt>>,
}

impl StirlingColumnTable {
    pub fn new(n_max: usize, m_max: usize) -> Self {
        let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(n_max + 1);
        rows.push(vec![BigInt::one()]);
        for n in 1..=n_max {
            let prev = &rows[n - 1];
            let width = n.min(m_max);
            let mut row = Vec::with_capacity(width + 1);
            for m in 0..=width {
                // S(n,m) = (n-1) S(n-1,m) + S(n-1,m-1)
                let mut v = prev.get(m).map_or_else(BigInt::zero, |s| s * (n - 1));
                if m >= 1 {
                    if let Some(s) = prev.get(m - 1) {
                        v += s;
                    }
                }
                row.push(v);
            }
            rows.push(row);
        }
        StirlingColumnTable { m_max, rows }
    }

    pub fn n_max(&self) -> usize {
        self.rows.len() - 1
    }

    pub fn m_max(&self) -> usize {
        self.m_max
    }

    pub fn get(&self, n: usize, m: usize) -> Result<BigInt> {
        let row = self
            .rows
            .get(n)
            .ok_or_else(|| Error::out_of_range(n, format!("0..={}", self.n_max())))?;
        if m > n {
            return Ok(BigInt::zero());
        }
        row.get(m)
            .cloned()
            .ok_or_else(|| Error::out_of_range(m, format!("0..={}", self.m_max)))
    }

    /// The column-limited triangle `A^{1,id}_{n,m} = S(n,m) / n!`.
    pub fn to_triangle(&self) -> Triangle {
        let mut scale = BigInt::one();
        let rows = self
            .rows
            .iter()
            .enumerate()
            .map(|(n, row)| {
                if n > 0 {
                    scale *= n;
                }
                ScaledRow::new(scale.clone(), row[1..].to_vec()).expect("n! > 0")
            })
            .collect();
        Triangle::from_parts(
            ArithFn::one(),
            HFn::Id,
            Some(self.m_max),
            Some(HFn::Id),
            rows,
        )
        .expect("rows have the column-limited shape")
    }
}

/// `S(n, 0..=n)`.
pub fn stirling_row(n: usize) -> Vec<BigInt> {
    let mut row = vec![BigInt::one()];
    for k in 1..=n {
        let mut next = vec![BigInt::zero(); k + 1];
        for m in 0..=k {
            if m < k {
                next[m] += &row[m] * (k - 1);
            }
            if m >= 1 {
                next[m] += &row[m - 1];
            }
        }
        row = next;
    }
    row
}

/// Unsigned Stirling number of the first kind.
pub fn stirling_first(n: usize, m: usize) -> BigInt {
    if m > n {
        return BigInt::zero();
    }
    StirlingColumnTable::new(n, m).rows[n][m].clone()
}

/// `m S(n,m)^2 > (m+1) S(n,m+1) S(n,m-1)` for every `2 <= m <= n-1`.
pub fn sibuya_strict_check(n: usize) -> Result<bool> {
    if n < 3 {
        return Err(Error::Domain(format!("needs n >= 3, got {n}")));
    }
    let s = stirling_row(n);
    Ok((2..n).all(|m| &s[m] * &s[m] * m > &s[m + 1] * &s[m - 1] * (m + 1)))
}

/// Checks `S(n,1) = (n-1)!`, `S(n,2) = (n-1)! H(n-1)` and
/// `A^{1~,1}_{n,2} = 2 H(n-1) / n` on the converted rising-factorial triangle.
pub fn harmonic_column_identity(n: usize) -> Result<bool> {
    if n < 2 {
        return Err(Error::Domain(format!("needs n >= 2, got {n}")));
    }
    let h = harmonic_prefix(n - 1);
    let fact = Rational::from_integer(factorial(n - 1));
    let s1 = Rational::from_integer(stirling_first(n, 1));
    let s2 = Rational::from_integer(stirling_first(n, 2));
    let tri = Triangle::builder(&ArithFn::one(), HFn::Id, n)
        .columns(2)
        .build()?;
    let converted = convert(&tri)?;
    let a2 = converted.get(n, 2)?;
    Ok(
        s1 == fact
            && s2 == &fact * &h[n - 1]
            && a2 == &h[n - 1] * BigInt::from(2) / BigInt::from(n),
    )
}

/// Both forms of `Delta(n)` from harmonic numbers `h[k] = H(k)`:
/// `(n^2 - 1) H(n-1)^2 - n^2 H(n) H(n-2)` and
/// `n / (n-1) (H(n-1) + 1) - H(n-1)^2`.
pub fn delta_forms_with(n: usize, h: &[Rational]) -> Result<(Rational, Rational)> {
    if n < 2 {
        return Err(Error::Domain(format!("Delta needs n >= 2, got {n}")));
    }
    if h.len() <= n {
        return Err(Error::out_of_range(
            n,
            format!("harmonic prefix 0..{}", h.len()),
        ));
    }
    let nn = BigInt::from(n);
    let n2 = &nn * &nn;
    let hm1 = &h[n - 1];
    let quadratic = Rational::from_integer(&n2 - 1) * hm1 * hm1
        - Rational::from_integer(n2) * &h[n] * &h[n - 2];
    let simplified = Rational::new(nn, BigInt::from(n - 1)) * (hm1 + Rational::one()) - hm1 * hm1;
    Ok((quadratic, simplified))
}

pub fn delta_forms(n: usize) -> Result<(Rational, Rational)> {
    delta_forms_with(n, &harmonic_prefix(n))
}

/// `Delta(n)`; the two closed forms are required to agree.
pub fn delta(n: usize) -> Result<Rational> {
    let (a, b) = delta_forms(n)?;
    assert_eq!(a, b, "Delta forms disagree at n = {n}");
    Ok(a)
}

/// `Delta(2..=n_max)`, sharing one harmonic prefix; entry `i` is `Delta(i + 2)`.
pub fn delta_sequence(n_max: usize) -> Vec<Rational> {
    let h = harmonic_prefix(n_max);
    (2..=n_max)
        .map(|n| {
            let (a, b) = delta_forms_with(n, &h).expect("prefix covers n");
            assert_eq!(a, b, "Delta forms disagree at n = {n}");
            a
        })
        .collect()
}

/// `sign(Delta(n))` for `2 <= n <= n_max`; entry `i` belongs to `n = i + 2`.
///
/// With `H(k) = a_k / L` both forms become integers over `(n-1) L^2`:
/// `(n-1) ((n^2-1) a_{n-1}^2 - n^2 a_n a_{n-2})` and
/// `n L (a_{n-1} + L) - (n-1) a_{n-1}^2`. They are required to agree.
pub fn delta_signs(n_max: usize) -> Vec<Ordering> {
    let (a, l) = harmonic_numerators(n_max);
    (2..=n_max)
        .map(|n| {
            let nn = BigInt::from(n);
            let n2 = &nn * &nn;
            let am1 = &a[n - 1];
            let sq = am1 * am1;
            let quadratic: BigInt = (&n2 - 1u32) * &sq - &n2 * &a[n] * &a[n - 2];
            let simplified = &nn * &l * (am1 + &l) - &sq * (n - 1);
            assert_eq!(
                &quadratic * (n - 1),
                simplified,
                "Delta forms disagree at n = {n}"
            );
            if quadratic.is_positive() {
                Ordering::Greater
            } else if quadratic.is_negative() {
                Ordering::Less
            } else {
                Ordering::Equal
            }
        })
        .collect()
}
