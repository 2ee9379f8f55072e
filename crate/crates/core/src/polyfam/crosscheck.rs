use num_bigint::BigInt;
use num_traits::{One, Signed};

use crate::arith::{ratio, ArithFn, Rational};
use crate::error::Result;
use crate::poly::Poly;
use crate::report::{CheckReport, Mismatch};
use crate::series::{eichler_integral, euler_product, ordinary_series, Series};

use super::triangle::{build_triangle, row_poly, HFn, Triangle};

/// Sample points for evaluation cross-checks; `-1` exercises sign cancellation.
pub fn default_xs() -> Vec<Rational> {
    vec![
        ratio(1, 1),
        ratio(2, 1),
        ratio(3, 1),
        ratio(-1, 1),
        ratio(1, 2),
    ]
}

/// Builds `A^{g,id}` and `A^{g~,1}` independently and checks
/// `m! A^{g,id}_{n,m} = A^{g~,1}_{n,m}` for `1 <= m <= n <= n_max`.
pub fn check_conversion(g: &ArithFn, n_max: usize) -> Result<CheckReport> {
    let exponential = build_triangle(g, HFn::Id, n_max)?;
    let geometric = build_triangle(&g.tilde(), HFn::One, n_max)?;
    let mut report = CheckReport::new("conversion");
    for n in 1..=n_max {
        let mut fact = BigInt::one();
        for m in 1..=n {
            fact *= m;
            let expected = exponential.get(n, m)? * &fact;
            let actual = geometric.get(n, m)?;
            report.compare(n, Some(m), None, &expected, &actual);
        }
    }
    Ok(report)
}

fn rows_as_polys(tri: &Triangle) -> Result<Vec<Poly>> {
    (0..=tri.n_max()).map(|n| row_poly(tri, n)).collect()
}

fn compare_series(report: &mut CheckReport, series: &Series, rows: &[Poly], x: &Rational) {
    for (n, p) in rows.iter().enumerate() {
        report.compare(n, None, Some(x), series.coeff(n), &p.evaluate(x));
    }
}

/// Compares `P_n(x)` from the recursion with the `T^n` coefficient of
/// `exp(x E_g(T))` (for `h = id`) or `1 / (1 - x G(T))` (for `h = 1`).
pub fn genfun_crosscheck(
    g: &ArithFn,
    h: HFn,
    n_max: usize,
    xs: &[Rational],
) -> Result<CheckReport> {
    let tri = build_triangle(g, h, n_max)?;
    let rows = rows_as_polys(&tri)?;
    let mut report = CheckReport::new("genfun");
    let base = match h {
        HFn::Id => eichler_integral(g, n_max)?,
        HFn::One => ordinary_series(g, n_max)?,
    };
    for x in xs {
        let series = match h {
            HFn::Id => base.scale(x).exp()?,
            HFn::One => Series::one(n_max).sub(&base.scale(x))?.inverse()?,
        };
        compare_series(&mut report, &series, &rows, x);
    }
    Ok(report)
}

/// Compares `P_n^{g,id}(x)` with the expansion of
/// `prod_n (1 - T^n)^{-x f(n)/n}`, `f = mu * g`.
pub fn euler_product_crosscheck(g: &ArithFn, n_max: usize, x: &Rational) -> Result<CheckReport> {
    let tri = build_triangle(g, HFn::Id, n_max)?;
    let rows = rows_as_polys(&tri)?;
    let f = g.moebius_convolve(n_max)?.values(n_max)?;
    let exponents: Vec<Rational> = f
        .iter()
        .enumerate()
        .map(|(i, fv)| -(x * fv) / BigInt::from(i + 1))
        .collect();
    let series = euler_product(&exponents, n_max);
    let mut report = CheckReport::new("euler");
    compare_series(&mut report, &series, &rows, x);
    Ok(report)
}

/// For integer-valued `g` and `h`: `(prod_{k<=n} h(k)) A_{n,m}` is a positive
/// integer for every `1 <= m <= n`.
pub fn integrality_check(tri: &Triangle) -> Result<CheckReport> {
    let mut report = CheckReport::new("integrality");
    for n in 1..=tri.n_max() {
        let scale = tri.h().product(n);
        for (i, v) in tri.row_values(n)?.into_iter().enumerate() {
            report.checked += 1;
            let scaled = v * &scale;
            if report.passed && !(scaled.is_integer() && scaled.is_positive()) {
                report.passed = false;
                report.mismatch = Some(Mismatch {
                    n,
                    m: Some(i + 1),
                    x: None,
                    expected: "positive integer".into(),
                    actual: scaled.to_string(),
                });
            }
        }
    }
    Ok(report)
}
