use std::cmp::Ordering;

use lclab_core::arith::{harmonic_numerators, harmonic_prefix};
use lclab_core::concavity::{is_logconcave, is_logconcave_scaled};
use lclab_core::stirling::{delta_forms, delta_sequence, delta_signs};
use num_traits::Zero;

#[test]
fn harmonic_numbers_are_logconcave_to_ten_thousand() {
    let (a, _) = harmonic_numerators(10_000);
    assert_eq!(is_logconcave_scaled(&a[1..]).unwrap(), None);
    for n in 2..10_000 {
        assert!(&a[n] * &a[n] > &a[n - 1] * &a[n + 1], "n = {n}");
    }
    let h = harmonic_prefix(300);
    assert_eq!(is_logconcave(&h[1..]).unwrap(), None);
}

#[test]
fn delta_is_negative_from_five_on() {
    for (i, s) in delta_signs(10_000).into_iter().enumerate() {
        let n = i + 2;
        let want = if n <= 4 {
            Ordering::Greater
        } else {
            Ordering::Less
        };
        assert_eq!(s, want, "n = {n}");
    }
    for (i, d) in delta_sequence(400).iter().enumerate() {
        assert_eq!(d.cmp(&Zero::zero()) == Ordering::Greater, i + 2 <= 4);
    }
}

#[test]
fn delta_forms_agree_with_a_float_estimate() {
    for n in [2usize, 3, 4, 5, 10, 100] {
        let (a, b) = delta_forms(n).unwrap();
        assert_eq!(a, b);
        let h = |k: usize| (1..=k).map(|j| 1.0 / j as f64).sum::<f64>();
        let n_f = n as f64;
        let approx = n_f / (n_f - 1.0) * (h(n - 1) + 1.0) - h(n - 1).powi(2);
        let exact = num_traits::ToPrimitive::to_f64(&a).unwrap();
        assert!(
            (exact - approx).abs() < 1e-9,
            "n = {n}: {exact} vs {approx}"
        );
    }
    assert!(delta_forms(1).is_err());
}
