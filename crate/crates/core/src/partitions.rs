//! Integer partitions, hook lengths, and the hook-length polynomials
//! `Q_n(x) = sum_{lambda |- n} prod_{h in H(lambda)} (h^2 + x) / h^2`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::arith::{factorial, ArithFn, Rational};
use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::polyfam::{build_triangle, row_poly, HFn};
use crate::report::CheckReport;

/// Weakly decreasing positive parts.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) || parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Domain(format!(
                "partition parts must be positive and weakly decreasing: {parts:?}"
            )));
        }
        Ok(Partition { parts })
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn weight(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Column lengths of the Young diagram.
    pub fn conjugate(&self) -> Partition {
        let width = self.parts.first().copied().unwrap_or(0);
        let parts = (0..width)
            .map(|j| self.parts.iter().take_while(|&&p| p > j).count())
            .collect();
        Partition { parts }
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

/// Streams the partitions of `n` in descending lexicographic order.
///
/// Constant amortized time per partition (Zoghbi–Stojmenovic ZS1): `x[..m]`
/// is the current partition, `h` the index of its last part greater than 1,
/// and every slot past `h` holds a 1.
#[derive(Debug, Clone)]
pub struct Partitions {
    x: Vec<usize>,
    m: usize,
    h: usize,
    state: IterState,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum IterState {
    Fresh,
    Running,
    Done,
}

pub fn iter_partitions(n: usize) -> Partitions {
    let mut x = vec![1; n.max(1)];
    x[0] = n;
    Partitions {
        x,
        m: usize::from(n > 0),
        h: 0,
        state: IterState::Fresh,
    }
}

impl Partitions {
    fn advance(&mut self) -> bool {
        let x = &mut self.x;
        if self.m == 0 || x[0] == 1 {
            return false;
        }
        if x[self.h] == 2 {
            self.m += 1;
            x[self.h] = 1;
            self.h = self.h.saturating_sub(1);
        } else {
            let r = x[self.h] - 1;
            let mut t = self.m - self.h;
            x[self.h] = r;
            while t >= r {
                self.h += 1;
                x[self.h] = r;
                t -= r;
            }
            if t == 0 {
                self.m = self.h + 1;
            } else {
                self.m = self.h + 2;
                if t > 1 {
                    self.h += 1;
                    x[self.h] = t;
                }
            }
        }
        true
    }
}

impl Iterator for Partitions {
    type Item = Partition;

    fn next(&mut self) -> Option<Partition> {
        match self.state {
            IterState::Done => return None,
            IterState::Fresh => self.state = IterState::Running,
            IterState::Running => {
                if !self.advance() {
                    self.state = IterState::Done;
                    return None;
                }
            }
        }
        Some(Partition {
            parts: self.x[..self.m].to_vec(),
        })
    }
}

/// Multiset of hook lengths of a Young diagram, sorted descending.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HookMultiset {
    hooks: Vec<usize>,
}

impl HookMultiset {
    pub fn hooks(&self) -> &[usize] {
        &self.hooks
    }

    pub fn len(&self) -> usize {
        self.hooks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.hooks.is_empty()
    }

    /// `prod h`.
    pub fn product(&self) -> BigInt {
        self.hooks.iter().fold(BigInt::one(), |acc, &h| acc * h)
    }
}

/// Hook of cell `(i, j)` is `(lambda_i - j) + (lambda'_j - i) - 1` in 0-based
/// coordinates.
pub fn hook_lengths(lambda: &Partition) -> HookMultiset {
    let conj = lambda.conjugate();
    let mut hooks = Vec::with_capacity(lambda.weight());
    for (i, &row) in lambda.parts.iter().enumerate() {
        for j in 0..row {
            hooks.push((row - j) + (conj.parts[j] - i) - 1);
        }
    }
    hooks.sort_unstable_by(|a, b| b.cmp(a));
    HookMultiset { hooks }
}

fn add_into(acc: &mut [BigInt], p: &[BigInt]) {
    for (a, b) in acc.iter_mut().zip(p) {
        *a += b;
    }
}

/// `(f^lambda)^2 prod_h (x + h^2)` as ascending integer coefficients, where
/// `f^lambda = n! / prod h`.
fn weighted_hook_product(lambda: &Partition, n_fact: &BigInt) -> Vec<BigInt> {
    let hooks = hook_lengths(lambda);
    let n = hooks.len();
    let mut poly = vec![BigInt::zero(); n + 1];
    poly[0] = BigInt::one();
    for (deg, &h) in hooks.hooks.iter().enumerate() {
        let h2 = h * h;
        // multiply by (x + h^2), current degree `deg`
        for k in (0..=deg + 1).rev() {
            let mut v = if k > 0 {
                poly[k - 1].clone()
            } else {
                BigInt::zero()
            };
            if k <= deg {
                v += &poly[k] * h2;
            }
            poly[k] = v;
        }
    }
    let dim = n_fact / hooks.product();
    let weight = &dim * &dim;
    poly.iter().map(|c| c * &weight).collect()
}

/// `Q_n(x)`. Every term shares the denominator `(n!)^2`, so the sum is
/// accumulated over the integers and divided once at the end.
pub fn nekrasov_okounkov_poly(n: usize) -> Poly {
    let n_fact = factorial(n);
    let zero = || vec![BigInt::zero(); n + 1];
    let numer = iter_partitions(n)
        .par_bridge()
        .fold(zero, |mut acc, lambda| {
            add_into(&mut acc, &weighted_hook_product(&lambda, &n_fact));
            acc
        })
        .reduce(zero, |mut a, b| {
            add_into(&mut a, &b);
            a
        });
    let denom = &n_fact * &n_fact;
    Poly::new(
        numer
            .into_iter()
            .map(|c| Rational::new(c, denom.clone()))
            .collect(),
    )
}

/// `q(x) = p(x + a)`, by repeated synthetic division.
pub fn taylor_shift(p: &Poly, a: &Rational) -> Poly {
    let mut c: Vec<Rational> = p.coeffs().to_vec();
    let d = c.len();
    if a.is_zero() || d < 2 {
        return p.clone();
    }
    for i in 0..d - 1 {
        for j in (i..d - 1).rev() {
            let t = &c[j + 1] * a;
            c[j] += t;
        }
    }
    Poly::new(c)
}

/// Compares `Q_n` with `P_n^{sigma,id}(x + 1)` for every `n <= n_max`.
pub fn check_no_identity(n_max: usize) -> Result<CheckReport> {
    let tri = build_triangle(&ArithFn::sigma(), HFn::Id, n_max)?;
    let mut report = CheckReport::new("no-identity");
    let one = Rational::one();
    for n in 0..=n_max {
        let q = nekrasov_okounkov_poly(n);
        let shifted = taylor_shift(&row_poly(&tri, n)?, &one);
        let degree = q.degree().unwrap_or(0).max(shifted.degree().unwrap_or(0));
        for k in 0..=degree {
            if !report.compare(n, Some(k), None, &q.coeff(k), &shifted.coeff(k)) {
                break;
            }
        }
    }
    Ok(report)
}
