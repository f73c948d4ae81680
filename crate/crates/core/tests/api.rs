use etabridge::cosets::{coset_enumerate, curve_data, SubgroupId};
use etabridge::modforms::{form_series, FormId};
use etabridge::numeric::{l0_lattice_in, wp_eval};
use etabridge::q8lattice::e8_count;
use etabridge::qseries::GRID;
use etabridge::{EllipticModel64, Lattice32, Lattice64, QSeries, C64};
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

fn product_power(k: usize, n: usize) -> Vec<i64> {
    let mut c = vec![0i64; n];
    c[0] = 1;
    for m in 1..n {
        for _ in 0..k {
            for i in (m..n).rev() {
                c[i] -= c[i - m];
            }
        }
    }
    c
}

fn integer_coeffs(s: &QSeries, shift: i64, n: usize) -> Vec<i64> {
    let mut out = vec![0i64; n];
    for (e, c) in s.terms() {
        let k = (e - shift) / GRID;
        assert_eq!((e - shift) % GRID, 0);
        if (0..n as i64).contains(&k) {
            assert!(c.is_integer());
            out[k as usize] = c.to_integer().try_into().unwrap();
        }
    }
    out
}

#[test]
fn delta_matches_product_expansion() {
    let d = form_series(FormId::Delta, 16).unwrap();
    assert_eq!(integer_coeffs(&d, GRID, 15), product_power(24, 15));
}

#[test]
fn e8_counts_agree_with_theta_series() {
    let th = form_series(FormId::ThetaE8, 9).unwrap();
    let counts: Vec<i64> = e8_count(8).unwrap().into_iter().map(|x| x as i64).collect();
    assert_eq!(integer_coeffs(&th, 0, 9), counts);
}

#[test]
fn series_arithmetic_through_alias() {
    let one = QSeries::one(10);
    let x = QSeries::monomial(GRID, BigRational::from_integer(BigInt::from(-1)), 10);
    let inv = (one.clone() + x.clone()).inv().unwrap();
    let prod = inv * (one.clone() + x);
    assert_eq!(prod.first_mismatch(&one), None);
}

#[test]
fn single_and_double_precision_agree() {
    let l64: Lattice64 = l0_lattice_in();
    let l32: Lattice32 = l0_lattice_in();
    let z64 = l64.omega1 * 0.3 + l64.omega2 * 0.45;
    let z32 = l32.omega1 * 0.3f32 + l32.omega2 * 0.45f32;
    let (p64, _) = wp_eval(z64, &l64).unwrap();
    let (p32, _) = wp_eval(z32, &l32).unwrap();
    assert!((p64.re - p32.re as f64).abs() < 1e-3 * p64.norm());
    assert!((p64.im - p32.im as f64).abs() < 1e-3 * p64.norm());
}

#[test]
fn elliptic_model_basics() {
    let m = EllipticModel64::new(C64::new(0.0, 0.0), C64::new(1.0, 0.0)).unwrap();
    assert!((m.discriminant() + 27.0).norm() < 1e-12);
    assert!(m.j_invariant().norm() < 1e-12);
    assert!(EllipticModel64::new(C64::new(3.0, 0.0), C64::new(1.0, 0.0)).is_err());
}

#[test]
fn principal_level_two_curve() {
    let d = curve_data(&coset_enumerate(SubgroupId::Gamma2)).unwrap();
    assert_eq!((d.index, d.genus), (6, 0));
    assert_eq!(d.cusp_widths, vec![2, 2, 2]);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn eta_powers_match_products(k in 1usize..30) {
        let s = form_series(FormId::EtaPow(k as i32), 12).unwrap();
        prop_assert_eq!(integer_coeffs(&s, k as i64, 11), product_power(k, 11));
    }
}
