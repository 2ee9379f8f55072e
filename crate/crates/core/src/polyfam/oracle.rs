use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::arith::{binomial, factorial, ArithFn, Rational};
use crate::error::{Error, Result};
use crate::report::CheckReport;
use crate::stirling::stirling_first;

use super::triangle::{build_triangle, HFn};

/// Families with a known closed form for `A_{n,m}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    /// `C(n-1, m-1)`
    OneOne,
    /// `C(n-1, m-1) / m!`
    IdId,
    /// `C(n+m-1, 2m-1) / m!`
    SId,
    /// `C(n+m-1, 2m-1)`
    IdOne,
    /// `S(n,m) / n!`
    OneId,
    /// `m! S(n,m) / n!`
    TildeOneOne,
}

impl Family {
    pub const ALL: [Family; 6] = [
        Family::OneOne,
        Family::IdId,
        Family::SId,
        Family::IdOne,
        Family::OneId,
        Family::TildeOneOne,
    ];

    pub fn g(self) -> ArithFn {
        match self {
            Family::OneOne | Family::OneId => ArithFn::one(),
            Family::IdId | Family::IdOne => ArithFn::id(),
            Family::SId => ArithFn::square(),
            Family::TildeOneOne => ArithFn::one().tilde(),
        }
    }

    pub fn h(self) -> HFn {
        match self {
            Family::OneOne | Family::IdOne | Family::TildeOneOne => HFn::One,
            Family::IdId | Family::SId | Family::OneId => HFn::Id,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Family::OneOne => "one_one",
            Family::IdId => "id_id",
            Family::SId => "s_id",
            Family::IdOne => "id_one",
            Family::OneId => "one_id",
            Family::TildeOneOne => "tilde_one_one",
        }
    }
}

/// Closed form of `A_{n,m}` for `1 <= m <= n`.
pub fn closed_form_oracle(family: Family, n: usize, m: usize) -> Result<Rational> {
    if m == 0 || m > n {
        return Err(Error::out_of_range(m, format!("1..={n}")));
    }
    let frac = |p: BigInt, q: BigInt| Rational::new(p, q);
    Ok(match family {
        Family::OneOne => Rational::from_integer(binomial(n - 1, m - 1)),
        Family::IdId => frac(binomial(n - 1, m - 1), factorial(m)),
        Family::SId => frac(binomial(n + m - 1, 2 * m - 1), factorial(m)),
        Family::IdOne => Rational::from_integer(binomial(n + m - 1, 2 * m - 1)),
        Family::OneId => frac(stirling_first(n, m), factorial(n)),
        Family::TildeOneOne => frac(factorial(m) * stirling_first(n, m), factorial(n)),
    })
}

/// Builds every family's triangle to `n_max` and compares it entrywise with
/// its closed form.
pub fn check_closed_forms(n_max: usize) -> Result<CheckReport> {
    let mut report = CheckReport::new("closed-forms");
    for family in Family::ALL {
        let tri = build_triangle(&family.g(), family.h(), n_max)?;
        for n in 1..=n_max {
            for m in 1..=n {
                let expected = closed_form_oracle(family, n, m)?;
                let actual = tri.get(n, m)?;
                report.compare(n, Some(m), Some(&family.name()), &expected, &actual);
            }
        }
    }
    Ok(report)
}
