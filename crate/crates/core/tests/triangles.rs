use lclab_core::arith::{factorial, int};
use lclab_core::polyfam::{
    check_closed_forms, closed_form_oracle, convert, integrality_check, row_poly, Family,
};
use lclab_core::stirling::{stirling_row, StirlingColumnTable};
use lclab_core::{build_triangle, ArithFn, HFn, Rational, Triangle};
use num_bigint::BigInt;

#[test]
fn stirling_rows_are_scaled_rising_factorial_rows() {
    let tri = build_triangle(&ArithFn::one(), HFn::Id, 12).unwrap();
    for n in 1..=12 {
        let row = tri.row(n).unwrap();
        assert_eq!(row.scale(), &factorial(n));
        assert_eq!(row.coeffs(), &stirling_row(n)[1..]);
    }
    let limited = StirlingColumnTable::new(12, 12).to_triangle();
    assert!(limited.same_values(&tri));
}

/// x (x+1) ... (x+n-1) / n! expanded directly.
#[test]
fn rising_factorial_polynomials() {
    let tri = build_triangle(&ArithFn::one(), HFn::Id, 10).unwrap();
    let mut poly = vec![int(1)];
    for n in 1..=10usize {
        // multiply by (x + n - 1) / n
        let mut next = vec![int(0); poly.len() + 1];
        for (i, c) in poly.iter().enumerate() {
            next[i] += c * int(n as i64 - 1);
            next[i + 1] += c;
        }
        poly = next.into_iter().map(|c| c / int(n as i64)).collect();
        let built = row_poly(&tri, n).unwrap();
        let mut want = poly.clone();
        while want.last().is_some_and(|c: &Rational| *c == int(0)) {
            want.pop();
        }
        assert_eq!(built.coeffs(), &want[..], "n = {n}");
    }
}

#[test]
fn closed_forms_to_thirty() {
    let r = check_closed_forms(30).unwrap();
    assert!(r.passed, "{:?}", r.mismatch);
    assert_eq!(r.checked, 6 * 30 * 31 / 2);
    assert_eq!(Family::ALL.len(), 6);
    assert_eq!(closed_form_oracle(Family::OneOne, 4, 2).unwrap(), int(3));
    assert!(closed_form_oracle(Family::OneOne, 3, 4).is_err());
}

#[test]
fn integer_families_are_integral() {
    for g in [
        ArithFn::one(),
        ArithFn::id(),
        ArithFn::square(),
        ArithFn::sigma(),
        ArithFn::sigma_k(2),
    ] {
        for h in [HFn::One, HFn::Id] {
            let tri = build_triangle(&g, h, 40).unwrap();
            let r = integrality_check(&tri).unwrap();
            assert!(r.passed, "{} {}: {:?}", g.label(), h.label(), r.mismatch);
        }
    }
}

#[test]
fn converted_triangle_matches_direct_build() {
    for g in [ArithFn::one(), ArithFn::sigma(), ArithFn::sigma_k(3)] {
        let direct = build_triangle(&g.tilde(), HFn::One, 25).unwrap();
        let converted = convert(&build_triangle(&g, HFn::Id, 25).unwrap()).unwrap();
        assert!(direct.same_values(&converted), "{}", g.label());
    }
}

#[test]
fn custom_tables_bound_the_triangle() {
    let g = ArithFn::custom("short", vec![int(1), int(2), int(3)]).unwrap();
    assert!(build_triangle(&g, HFn::Id, 3).is_ok());
    assert!(build_triangle(&g, HFn::Id, 4).is_err());
    let capped = Triangle::builder(&g, HFn::One, 3)
        .columns(1)
        .build()
        .unwrap();
    assert_eq!(capped.get(3, 1).unwrap(), int(3));
    assert_eq!(capped.rows()[3].coeffs(), &[BigInt::from(3)]);
}
