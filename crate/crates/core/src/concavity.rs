//! Log-concavity predicates over sequences and triangles.
//!
//! A sequence `a_0, a_1, ...` of non-negative numbers is log-concave when
//! `a_k^2 >= a_{k-1} a_{k+1}` for every `k >= 1`; finite sequences are
//! extended by zeros. A triangle is *horizontally* log-concave when each row
//! is, *vertically* log-concave when each column is, and *vertically
//! C-log-concave* when each column `m` is log-concave on `1 <= n <= C^m`.
//!
//! All comparisons cross-multiply exact integers. Triangle rows are stored
//! as integers over a per-row scale, so a vertical comparison folds the
//! scales of three consecutive rows into the inequality instead of reducing
//! any fraction.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::{ArithFn, Rational};
use crate::error::{Error, Result};
use crate::polyfam::{HFn, Triangle};
use crate::report::CheckReport;
use crate::series::eichler_integral;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    Horizontal,
    Vertical,
    CVertical,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Horizontal => "horizontal",
            Mode::Vertical => "vertical",
            Mode::CVertical => "c_vertical",
        })
    }
}

/// A center `(n, m)` of a log-concavity inequality.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Coord {
    pub n: usize,
    pub m: usize,
}

/// The `n` range scanned in column `m` of a C-scan.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColumnBound {
    pub m: usize,
    /// `floor(C^m)`.
    pub limit: usize,
    /// Last center actually checked.
    pub last_center: usize,
    /// The triangle ended before `limit + 1`.
    pub clipped: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConcavityReport {
    pub mode: Mode,
    pub n_from: usize,
    pub n_to: usize,
    pub m_from: usize,
    pub m_to: usize,
    /// `C` as `p/q`, C-scans only.
    pub c: Option<String>,
    pub passed: bool,
    /// Strict violations, ordered by coordinate.
    pub failures: Vec<Coord>,
    /// Centers where the inequality holds with equality (and both sides are
    /// nonzero).
    pub equalities: Vec<Coord>,
    pub bounds: Vec<ColumnBound>,
    pub clipped: bool,
}

impl ConcavityReport {
    fn new(mode: Mode, n_from: usize, n_to: usize, m_from: usize, m_to: usize) -> Self {
        ConcavityReport {
            mode,
            n_from,
            n_to,
            m_from,
            m_to,
            c: None,
            passed: true,
            failures: Vec::new(),
            equalities: Vec::new(),
            bounds: Vec::new(),
            clipped: false,
        }
    }

    fn absorb(&mut self, outcomes: Vec<(Coord, Ordering)>) {
        for (coord, ord) in outcomes {
            match ord {
                Ordering::Less => self.failures.push(coord),
                Ordering::Equal => self.equalities.push(coord),
                Ordering::Greater => {}
            }
        }
        self.failures.sort_unstable();
        self.equalities.sort_unstable();
        self.passed = self.failures.is_empty();
    }
}

/// `mid^2` against `left * right`; `None` stands for a structural zero.
/// `Equal` is reported only when both sides are nonzero.
fn center_cmp(left: Option<&BigInt>, mid: Option<&BigInt>, right: Option<&BigInt>) -> Ordering {
    let zero = BigInt::zero();
    let mid = mid.unwrap_or(&zero);
    match (left, right) {
        (Some(l), Some(r)) if !l.is_zero() && !r.is_zero() => (mid * mid).cmp(&(l * r)),
        _ => Ordering::Greater,
    }
}

fn rational_cmp(left: &Rational, mid: &Rational, right: &Rational) -> Ordering {
    if left.is_zero() || right.is_zero() {
        return Ordering::Greater;
    }
    (mid * mid).cmp(&(left * right))
}

/// Smallest index `k` with `a_k^2 < a_{k-1} a_{k+1}` (zero-extended at both
/// ends), or `None` when the sequence is log-concave.
pub fn is_logconcave(seq: &[Rational]) -> Result<Option<usize>> {
    if let Some(k) = seq.iter().position(|a| a.is_negative()) {
        return Err(Error::Domain(format!("negative entry at index {k}")));
    }
    let zero = Rational::zero();
    Ok((0..seq.len()).find(|&k| {
        let left = if k == 0 { &zero } else { &seq[k - 1] };
        let right = seq.get(k + 1).unwrap_or(&zero);
        rational_cmp(left, &seq[k], right) == Ordering::Less
    }))
}

/// [`is_logconcave`] for a sequence stored as integers over one positive
/// common denominator, which does not affect the verdict.
pub fn is_logconcave_scaled(seq: &[BigInt]) -> Result<Option<usize>> {
    if let Some(k) = seq.iter().position(Signed::is_negative) {
        return Err(Error::Domain(format!("negative entry at index {k}")));
    }
    Ok((0..seq.len()).find(|&k| {
        let left = if k == 0 { None } else { seq.get(k - 1) };
        center_cmp(left, seq.get(k), seq.get(k + 1)) == Ordering::Less
    }))
}

fn ensure_nonnegative(tri: &Triangle, n_to: usize) -> Result<()> {
    for n in 1..=n_to {
        if let Some(m) = tri.row(n)?.coeffs().iter().position(Signed::is_negative) {
            return Err(Error::Domain(format!("negative entry A_{{{n},{}}}", m + 1)));
        }
    }
    Ok(())
}

/// Row-wise check for `n_from <= n <= n_to`; every row is a finite,
/// zero-extended sequence `A_{n,1..n}`.
pub fn horizontal_check(tri: &Triangle, n_from: usize, n_to: usize) -> Result<ConcavityReport> {
    let n_from = n_from.max(1);
    if n_to > tri.n_max() {
        return Err(Error::out_of_range(
            n_to,
            format!("rows 1..={}", tri.n_max()),
        ));
    }
    if tri.columns_in_row(n_to) < n_to {
        return Err(Error::Domain("horizontal scans need full rows".into()));
    }
    ensure_nonnegative(tri, n_to)?;
    let outcomes: Vec<(Coord, Ordering)> = (n_from..=n_to)
        .into_par_iter()
        .flat_map_iter(|n| {
            let row = tri.row(n).expect("range checked").coeffs();
            (1..=n)
                .map(move |m| {
                    let left = if m >= 2 { row.get(m - 2) } else { None };
                    let ord = center_cmp(left, row.get(m - 1), row.get(m));
                    (Coord { n, m }, ord)
                })
                .filter(|(_, ord)| *ord != Ordering::Greater)
                .collect::<Vec<_>>()
        })
        .collect();
    let mut report = ConcavityReport::new(Mode::Horizontal, n_from, n_to, 1, n_to);
    report.absorb(outcomes);
    Ok(report)
}

/// Compares `A_{n,m}^2` with `A_{n-1,m} A_{n+1,m}`, folding the three row
/// scales into the integer inequality.
fn vertical_cmp(tri: &Triangle, n: usize, m: usize) -> Ordering {
    let entry = |j: usize| tri.rows()[j].coeffs().get(m - 1);
    let (left, mid, right) = (entry(n - 1), entry(n), entry(n + 1));
    let (l, b, r) = match (left, mid, right) {
        (Some(l), Some(b), Some(r)) if !l.is_zero() && !r.is_zero() => (l, b, r),
        _ => return Ordering::Greater,
    };
    match tri.scale_kind() {
        // L_{n-1} L_{n+1} / L_n^2 = k(n+1) / k(n)
        Some(kind) => (b * b * kind.value(n + 1)).cmp(&(l * r * kind.value(n))),
        None => {
            let rows = tri.rows();
            let lhs = b * b * rows[n - 1].scale() * rows[n + 1].scale();
            let rhs = l * r * rows[n].scale() * rows[n].scale();
            lhs.cmp(&rhs)
        }
    }
}

fn check_columns(tri: &Triangle, m_from: usize, m_to: usize) -> Result<()> {
    if m_from >= 1 && m_to >= m_from {
        if let Some(cap) = tri.column_cap() {
            if m_to > cap {
                return Err(Error::out_of_range(m_to, format!("columns 1..={cap}")));
            }
        }
    }
    Ok(())
}

fn column_outcomes(tri: &Triangle, m: usize, last_center: usize) -> Vec<(Coord, Ordering)> {
    (1..=last_center)
        .map(|n| (Coord { n, m }, vertical_cmp(tri, n, m)))
        .filter(|(_, ord)| *ord != Ordering::Greater)
        .collect()
}

/// Column-wise check for `m_from <= m <= m_to` on rows `0..=n_to`.
///
/// A column is a prefix of an infinite sequence, so the centers are
/// `1 <= n <= n_to - 1`; the last row only serves as a right neighbour.
pub fn vertical_check(
    tri: &Triangle,
    m_from: usize,
    m_to: usize,
    n_to: usize,
) -> Result<ConcavityReport> {
    let m_from = m_from.max(1);
    if n_to > tri.n_max() {
        return Err(Error::out_of_range(
            n_to,
            format!("rows 0..={}", tri.n_max()),
        ));
    }
    check_columns(tri, m_from, m_to)?;
    ensure_nonnegative(tri, n_to)?;
    let last_center = n_to.saturating_sub(1);
    let outcomes = (m_from..=m_to)
        .into_par_iter()
        .flat_map_iter(|m| column_outcomes(tri, m, last_center))
        .collect();
    let mut report = ConcavityReport::new(Mode::Vertical, 1, last_center, m_from, m_to);
    report.absorb(outcomes);
    Ok(report)
}

/// Smallest `n <= n_limit` with `A_{n,m}^2 < A_{n-1,m} A_{n+1,m}`.
/// The triangle must reach row `n_limit + 1`.
pub fn first_vertical_failure(tri: &Triangle, m: usize, n_limit: usize) -> Result<Option<usize>> {
    if m == 0 {
        return Err(Error::Domain("column index starts at 1".into()));
    }
    if n_limit + 1 > tri.n_max() {
        return Err(Error::out_of_range(
            n_limit + 1,
            format!("rows 0..={}", tri.n_max()),
        ));
    }
    check_columns(tri, m, m)?;
    ensure_nonnegative(tri, n_limit + 1)?;
    Ok((1..=n_limit).find(|&n| vertical_cmp(tri, n, m) == Ordering::Less))
}

/// `floor(c^m)`, saturating at `usize::MAX`.
pub fn floor_power(c: &Rational, m: usize) -> usize {
    let exp = i32::try_from(m).unwrap_or(i32::MAX);
    let v = num_traits::Pow::pow(c, exp).floor().to_integer();
    usize::try_from(v).unwrap_or(usize::MAX)
}

/// Vertical C-log-concavity on `m_from <= m <= m_to`: column `m` is checked at
/// every center `1 <= n <= floor(C^m)` against its true neighbours. Columns
/// whose range runs past the triangle are clipped and flagged.
pub fn c_vertical_check(
    tri: &Triangle,
    c: &Rational,
    m_from: usize,
    m_to: usize,
) -> Result<ConcavityReport> {
    if c <= &Rational::from_integer(1.into()) {
        return Err(Error::Domain(format!("C must exceed 1, got {c}")));
    }
    let m_from = m_from.max(1);
    check_columns(tri, m_from, m_to)?;
    ensure_nonnegative(tri, tri.n_max())?;
    let bounds: Vec<ColumnBound> = (m_from..=m_to)
        .map(|m| {
            let limit = floor_power(c, m);
            let last_center = limit.min(tri.n_max().saturating_sub(1));
            ColumnBound {
                m,
                limit,
                last_center,
                clipped: last_center < limit,
            }
        })
        .collect();
    let outcomes = bounds
        .par_iter()
        .flat_map_iter(|b| column_outcomes(tri, b.m, b.last_center))
        .collect();
    let n_to = bounds.iter().map(|b| b.last_center).max().unwrap_or(0);
    let mut report = ConcavityReport::new(Mode::CVertical, 1, n_to, m_from, m_to);
    report.c = Some(c.to_string());
    report.clipped = bounds.iter().any(|b| b.clipped);
    report.bounds = bounds;
    report.absorb(outcomes);
    Ok(report)
}

/// Coefficients `b_{m,n}` of `f(q)^m`, `f(q) = sum_n sigma(n) q^n / n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HZCoefficients {
    pub m: usize,
    /// `coeffs[n] = b_{m,n}` for `0 <= n <= N`.
    pub coeffs: Vec<Rational>,
}

pub fn hong_zhang_coefficients(m: usize, n_max: usize) -> Result<HZCoefficients> {
    if m == 0 {
        return Err(Error::Domain("power m starts at 1".into()));
    }
    let f = eichler_integral(&ArithFn::sigma(), n_max)?;
    let power = u32::try_from(m).map_err(|_| Error::Domain(format!("power {m} too large")))?;
    Ok(HZCoefficients {
        m,
        coeffs: f.pow_int(power).into_coeffs(),
    })
}

/// Ties `b_{m,n}` to both triangles: `b_{m,n} = A^{sigma~,1}_{n,m} =
/// m! A^{sigma,id}_{n,m}` for `m <= m_max`, `n <= n_max`.
pub fn hz_equivalence_check(n_max: usize, m_max: usize) -> Result<CheckReport> {
    let sigma = ArithFn::sigma();
    let darcais = crate::polyfam::build_triangle(&sigma, HFn::Id, n_max)?;
    let geometric = crate::polyfam::build_triangle(&sigma.tilde(), HFn::One, n_max)?;
    let mut report = CheckReport::new("hz-equivalence");
    let mut fact = BigInt::from(1);
    for m in 1..=m_max {
        fact *= m;
        let b = hong_zhang_coefficients(m, n_max)?;
        for n in 1..=n_max {
            let from_darcais = darcais.get(n, m)? * &fact;
            report.compare(n, Some(m), None, &b.coeffs[n], &geometric.get(n, m)?);
            report.compare(n, Some(m), None, &b.coeffs[n], &from_darcais);
        }
    }
    Ok(report)
}

/// Scans `b_{m,n}^2 >= b_{m,n-1} b_{m,n+1}` for `2 <= m <= m_max` and
/// `1 <= n <= floor(C^m)`, through the column-limited D'Arcais triangle
/// (the factor `m!` leaves each column's verdict unchanged).
pub fn hong_zhang_scan(c: &Rational, m_max: usize) -> Result<ConcavityReport> {
    if m_max < 2 {
        return Err(Error::Domain(format!(
            "m_max must be at least 2, got {m_max}"
        )));
    }
    let limit = floor_power(c, m_max);
    if c <= &Rational::from_integer(1.into()) || limit == usize::MAX {
        return Err(Error::Domain(format!("unusable C = {c}")));
    }
    let tri = Triangle::builder(&ArithFn::sigma(), HFn::Id, limit + 1)
        .columns(m_max)
        .build()?;
    c_vertical_check(&tri, c, 2, m_max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{factorial, harmonic_prefix, int, ratio};
    use crate::polyfam::{build_triangle, convert};
    use crate::stirling::delta_sequence;
    use proptest::prelude::*;

    fn ints(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn sequence_examples() {
        assert_eq!(is_logconcave(&ints(&[1, 3, 3, 1])).unwrap(), None);
        assert_eq!(is_logconcave(&ints(&[1, 1, 2])).unwrap(), Some(1));
        assert_eq!(is_logconcave(&[]).unwrap(), None);
        assert!(is_logconcave(&ints(&[1, -1])).is_err());
        let h = harmonic_prefix(100);
        assert_eq!(is_logconcave(&h[1..]).unwrap(), None);
    }

    #[test]
    fn zeros_never_fail() {
        assert_eq!(is_logconcave(&ints(&[0, 0, 5, 0, 0])).unwrap(), None);
        // A zero between positives does fail (internal zero).
        assert_eq!(is_logconcave(&ints(&[1, 0, 1])).unwrap(), Some(1));
        let t = build_triangle(&ArithFn::one(), HFn::Id, 30).unwrap();
        for m in 1..=10 {
            for n in 1..=m {
                assert_eq!(vertical_cmp(&t, n, m), Ordering::Greater);
            }
        }
    }

    #[test]
    fn horizontal_examples() {
        let t = build_triangle(&ArithFn::one(), HFn::One, 20).unwrap();
        assert!(horizontal_check(&t, 1, 20).unwrap().passed);
        let t = build_triangle(&ArithFn::one(), HFn::Id, 100).unwrap();
        assert!(horizontal_check(&t, 1, 100).unwrap().passed);
        assert!(horizontal_check(&t, 1, 101).is_err());
        let capped = Triangle::builder(&ArithFn::one(), HFn::Id, 10)
            .columns(2)
            .build()
            .unwrap();
        assert!(horizontal_check(&capped, 1, 10).is_err());
    }

    #[test]
    fn horizontal_records_failures() {
        // g = (1, 0, 10, ...) has an internal-zero style dip in row 3.
        let g = ArithFn::custom("dip", vec![int(1), int(0), int(10)]).unwrap();
        let t = build_triangle(&g, HFn::One, 3).unwrap();
        // row 3: [10, 0, 1]
        let r = horizontal_check(&t, 1, 3).unwrap();
        assert!(!r.passed);
        assert_eq!(r.failures, vec![Coord { n: 3, m: 2 }]);
    }

    #[test]
    fn binomial_columns_are_log_concave() {
        let t = build_triangle(&ArithFn::one(), HFn::One, 50).unwrap();
        let r = vertical_check(&t, 1, 10, 50).unwrap();
        assert!(r.passed);
        // column 1 is constant 1: equality everywhere past the start
        assert!(r.equalities.contains(&Coord { n: 2, m: 1 }));
        for m in 1..=10 {
            assert_eq!(first_vertical_failure(&t, m, 49).unwrap(), None);
        }
    }

    #[test]
    fn rising_factorial_columns() {
        let t = build_triangle(&ArithFn::one(), HFn::Id, 60).unwrap();
        assert_eq!(first_vertical_failure(&t, 1, 59).unwrap(), Some(2));
        assert_eq!(first_vertical_failure(&t, 2, 59).unwrap(), Some(5));
        assert_eq!(first_vertical_failure(&t, 3, 59).unwrap(), Some(17));
        assert_eq!(first_vertical_failure(&t, 4, 59).unwrap(), Some(54));
        assert!(first_vertical_failure(&t, 4, 60).is_err());

        let r = vertical_check(&t, 1, 1, 10).unwrap();
        assert_eq!(
            r.failures.iter().map(|c| c.n).collect::<Vec<_>>(),
            (2..=9).collect::<Vec<_>>()
        );
    }

    #[test]
    fn column_two_matches_delta_sign() {
        let t = convert(&build_triangle(&ArithFn::one(), HFn::Id, 202).unwrap()).unwrap();
        let deltas = delta_sequence(201);
        for n in 2..=200 {
            let a = |k: usize| t.get(k, 2).unwrap();
            let diff = a(n) * a(n) - a(n + 1) * a(n - 1);
            let nn = BigInt::from(n);
            let scaled = &deltas[n - 2] * BigInt::from(4) / (&nn * &nn * (&nn * &nn - 1));
            assert_eq!(diff, scaled, "n = {n}");
        }
    }

    #[test]
    fn c_scan_examples() {
        let t = build_triangle(&ArithFn::sigma(), HFn::Id, 257).unwrap();
        let r = c_vertical_check(&t, &int(2), 1, 8).unwrap();
        assert!(r.passed, "{:?}", r.failures);
        assert!(!r.clipped);
        assert_eq!(r.bounds.last().unwrap().limit, 256);

        let t = Triangle::builder(&ArithFn::one(), HFn::Id, 129)
            .columns(7)
            .build()
            .unwrap();
        let r = c_vertical_check(&t, &int(2), 2, 7).unwrap();
        assert!(r.passed);
        let with_m1 = c_vertical_check(&t, &int(2), 1, 7).unwrap();
        assert_eq!(with_m1.failures, vec![Coord { n: 2, m: 1 }]);

        let empty = c_vertical_check(&t, &int(2), 5, 4).unwrap();
        assert!(empty.passed && empty.bounds.is_empty());

        let short = build_triangle(&ArithFn::sigma(), HFn::Id, 10).unwrap();
        let r = c_vertical_check(&short, &int(2), 2, 4).unwrap();
        assert!(r.clipped);
        assert_eq!(r.bounds[2].last_center, 9);
        assert!(c_vertical_check(&short, &int(1), 2, 4).is_err());
    }

    #[test]
    fn floor_powers() {
        assert_eq!(floor_power(&int(2), 9), 512);
        assert_eq!(floor_power(&ratio(3, 2), 6), 11);
        assert_eq!(floor_power(&ratio(3, 2), 1), 1);
    }

    #[test]
    fn hz_coefficient_examples() {
        let b1 = hong_zhang_coefficients(1, 50).unwrap();
        for n in 1..=50 {
            assert_eq!(
                b1.coeffs[n],
                ArithFn::sigma().eval(n).unwrap() / BigInt::from(n)
            );
        }
        let b2 = hong_zhang_coefficients(2, 4).unwrap();
        assert_eq!(b2.coeffs[4], ratio(59, 12));
        assert_eq!(b2.coeffs[2], int(1));
        assert_eq!(b2.coeffs[3], int(3));
        assert_eq!(b2.coeffs[1], int(0));
        assert!(hong_zhang_coefficients(0, 4).is_err());
        let t = build_triangle(&ArithFn::sigma(), HFn::Id, 12).unwrap();
        for n in 1..=12 {
            assert_eq!(
                hong_zhang_coefficients(n, 12).unwrap().coeffs[n],
                t.get(n, n).unwrap() * factorial(n)
            );
        }
    }

    #[test]
    fn hz_equivalence_small() {
        let r = hz_equivalence_check(20, 6).unwrap();
        assert!(r.passed, "{:?}", r.mismatch);
    }

    #[test]
    fn hz_scan_small() {
        let r = hong_zhang_scan(&int(2), 2).unwrap();
        assert_eq!(r.n_to, 4);
        assert!(r.passed);
        assert!(hong_zhang_scan(&ratio(3, 2), 6).unwrap().passed);
        assert!(hong_zhang_scan(&int(2), 1).is_err());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn vertical_verdicts_survive_conversion(
            tail in prop::collection::vec(1i64..6, 11),
        ) {
            let g = ArithFn::custom("random", std::iter::once(int(1)).chain(tail.into_iter().map(int)).collect()).unwrap();
            let exponential = build_triangle(&g, HFn::Id, 12).unwrap();
            let converted = convert(&exponential).unwrap();
            let geometric = build_triangle(&g.tilde(), HFn::One, 12).unwrap();
            let a = vertical_check(&exponential, 1, 12, 12).unwrap();
            let b = vertical_check(&converted, 1, 12, 12).unwrap();
            let c = vertical_check(&geometric, 1, 12, 12).unwrap();
            prop_assert_eq!(&a.failures, &b.failures);
            prop_assert_eq!(&a.failures, &c.failures);
            prop_assert_eq!(&a.equalities, &c.equalities);
        }

        #[test]
        fn scaling_a_column_keeps_the_verdict(
            v in prop::collection::vec(0i64..40, 1..12),
            k in 1i64..50,
        ) {
            let a = ints(&v);
            let scaled: Vec<Rational> = a.iter().map(|x| x * ratio(k, 7)).collect();
            prop_assert_eq!(is_logconcave(&a).unwrap(), is_logconcave(&scaled).unwrap());
        }
    }
}
