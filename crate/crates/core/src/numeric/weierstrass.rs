use num_complex::Complex;
use num_traits::{One, Zero};

use super::{c, Lattice, NumericError, Real};

/// Relative distance to the nearest lattice point below which `z` counts as
/// a lattice point.
pub const ON_LATTICE_EPS: f64 = 1e-10;

/// `E₂(τ) = 1 − 24 Σ n qⁿ/(1 − qⁿ)`.
fn e2_lambert<T: Real>(tau: Complex<T>) -> Complex<T> {
    let q = (Complex::new(T::zero(), T::TAU()) * tau).exp();
    let mut s = Complex::<T>::zero();
    let mut qn = q;
    for n in 1..400 {
        let term: Complex<T> = qn * T::from_i32(n).unwrap() / (Complex::<T>::one() - qn);
        s += term;
        if term.norm() < T::epsilon() * T::epsilon() {
            break;
        }
        qn *= q;
    }
    Complex::<T>::one() - s * c::<T>(24.0)
}

/// `℘` and `℘′` on `[1, τ]` at `z` reduced to the centered cell:
/// `℘ = π² Σₙ csc²(π(z + nτ)) − (π²/3)E₂(τ)`.
fn wp_normalized<T: Real>(z: Complex<T>, tau: Complex<T>) -> (Complex<T>, Complex<T>) {
    let pi = T::PI();
    let mut p = Complex::<T>::zero();
    let mut dp = Complex::<T>::zero();
    let mut add = |w: Complex<T>| {
        let s = (w * pi).sin();
        let co = (w * pi).cos();
        let inv = Complex::<T>::one() / s;
        let t = inv * inv;
        p += t;
        dp += co * t * inv;
        t.norm()
    };
    add(z);
    for n in 1..400 {
        let nt = tau * T::from_i32(n).unwrap();
        let a = add(z + nt);
        let b = add(z - nt);
        if a + b < T::epsilon() * T::epsilon() {
            break;
        }
    }
    let wp = p * pi * pi - e2_lambert(tau) * (pi * pi / c(3.0));
    let wpp = dp * (-c::<T>(2.0) * pi.powi(3));
    (wp, wpp)
}

/// `(℘(z; L), ℘′(z; L))`.
pub fn wp_eval<T: Real>(z: Complex<T>, lat: &Lattice<T>) -> Result<(Complex<T>, Complex<T>), NumericError> {
    let red = lat.reduced();
    let w = red.reduce_centered(z);
    if w.norm() <= c::<T>(ON_LATTICE_EPS) * red.omega1.norm() {
        return Err(NumericError::OnLattice);
    }
    let (p, dp) = wp_normalized(w / red.omega1, red.tau());
    Ok((p / (red.omega1 * red.omega1), dp / (red.omega1 * red.omega1 * red.omega1)))
}

/// A `z` with `℘(z; L) = u0`, coordinates in `[0, 1)²`.
///
/// Newton's method from the best point of a coarse grid over the cell.
pub fn invert_wp<T: Real>(u0: Complex<T>, lat: &Lattice<T>) -> Result<Complex<T>, NumericError> {
    let scale = T::one() + u0.norm();
    let half = [lat.omega1 * c::<T>(0.5), lat.omega2 * c::<T>(0.5), (lat.omega1 + lat.omega2) * c::<T>(0.5)];
    for h in half {
        let (e, _) = wp_eval(h, lat)?;
        if (e - u0).norm() <= c::<T>(1e-9) * (T::one() + e.norm()) {
            return Err(NumericError::HalfPeriodSingularity);
        }
    }
    let grid = 12;
    let mut best: Option<(T, Complex<T>)> = None;
    for i in 0..grid {
        for j in 0..grid {
            let x = (T::from_i32(i).unwrap() + c(0.5)) / T::from_i32(grid).unwrap();
            let y = (T::from_i32(j).unwrap() + c(0.5)) / T::from_i32(grid).unwrap();
            let z = lat.omega1 * x + lat.omega2 * y;
            let (p, _) = wp_eval(z, lat)?;
            let r = (p - u0).norm();
            if best.map_or(true, |(b, _)| r < b) {
                best = Some((r, z));
            }
        }
    }
    let (mut res, mut z) = best.expect("nonempty grid");
    let tol = T::epsilon() * c(64.0) * scale;
    for _ in 0..100 {
        if res <= tol {
            break;
        }
        let (p, dp) = wp_eval(z, lat)?;
        if dp.is_zero() {
            return Err(NumericError::HalfPeriodSingularity);
        }
        let step = (p - u0) / dp;
        // halve the step until the residual decreases
        let mut lambda = T::one();
        loop {
            let cand = z - step * lambda;
            let r = match wp_eval(cand, lat) {
                Ok((pc, _)) => (pc - u0).norm(),
                Err(_) => T::infinity(),
            };
            if r < res || lambda < c(1e-6) {
                z = cand;
                res = r;
                break;
            }
            lambda = lambda * c(0.5);
        }
    }
    if !(res <= c::<T>(1e-12) * scale) {
        return Err(NumericError::NoConvergence { residual: res.to_f64().unwrap_or(f64::NAN) });
    }
    Ok(lat.reduce(z))
}

/// The orbit `{(ρᵏu, ±t)}` of a point of `t² = 4u³ − 1`, duplicates removed.
pub fn orbit_points<T: Real>(u: Complex<T>, t: Complex<T>) -> Result<Vec<(Complex<T>, Complex<T>)>, NumericError> {
    let residual = (t * t - u * u * u * c::<T>(4.0) + T::one()).norm();
    if residual > c(1e-9) {
        return Err(NumericError::NotOnCurve { residual: residual.to_f64().unwrap_or(f64::NAN) });
    }
    let rho = Complex::from_polar(T::one(), T::TAU() / c(3.0));
    let tol = c::<T>(1e-9) * (T::one() + u.norm() + t.norm());
    let mut out: Vec<(Complex<T>, Complex<T>)> = Vec::new();
    let mut rk = Complex::one();
    for _ in 0..3 {
        for s in [T::one(), -T::one()] {
            let p = (u * rk, t * s);
            if !out.iter().any(|q| (q.0 - p.0).norm() < tol && (q.1 - p.1).norm() < tol) {
                out.push(p);
            }
        }
        rk *= rho;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::{l0_lattice, lattice_invariants};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    type C = Complex<f64>;

    fn direct_wp(z: C, l: &Lattice<f64>) -> C {
        // symmetric partial sum, slowly convergent; good to ~1e-5 at this size
        let mut s = C::one() / (z * z);
        let n = 300i64;
        for a in -n..=n {
            for b in -n..=n {
                if a == 0 && b == 0 {
                    continue;
                }
                let w = l.point(a, b);
                s += C::one() / ((z - w) * (z - w)) - C::one() / (w * w);
            }
        }
        s
    }

    #[test]
    fn matches_direct_summation() {
        let l = Lattice::new(C::new(1.0, 0.0), C::new(0.2, 1.1)).unwrap();
        let z = C::new(0.31, 0.27);
        let (p, _) = wp_eval(z, &l).unwrap();
        assert!((p - direct_wp(z, &l)).norm() < 1e-4);
    }

    #[test]
    fn periodicity_and_parity() {
        let l = Lattice::new(C::new(1.2, 0.3), C::new(-0.4, 1.5)).unwrap();
        let z = C::new(0.37, 0.21);
        let (p, dp) = wp_eval(z, &l).unwrap();
        let (p1, dp1) = wp_eval(z + l.omega1, &l).unwrap();
        let (p2, dp2) = wp_eval(z + l.omega2 * 3.0, &l).unwrap();
        let (pm, dpm) = wp_eval(-z, &l).unwrap();
        for (a, b) in [(p, p1), (dp, dp1), (p, p2), (dp, dp2), (p, pm), (dp, -dpm)] {
            assert!((a - b).norm() < 1e-10 * (1.0 + a.norm()));
        }
    }

    #[test]
    fn differential_equation() {
        let l = Lattice::new(C::new(1.0, 0.1), C::new(0.3, 0.95)).unwrap();
        let m = lattice_invariants(&l, 20.0 * l.max_generator()).unwrap().model;
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..10 {
            let z = l.omega1 * rng.gen_range(0.05..0.95) + l.omega2 * rng.gen_range(0.05..0.95);
            let (p, dp) = wp_eval(z, &l).unwrap();
            let r = dp * dp - (p * p * p * 4.0 - m.g2 * p - m.g3);
            assert!(r.norm() < 1e-8 * (1.0 + p.norm().powi(3)), "{r}");
        }
    }

    #[test]
    fn curve_equation_on_l0() {
        let l0 = l0_lattice();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..20 {
            let z = l0.omega1 * rng.gen_range(0.02..0.98) + l0.omega2 * rng.gen_range(0.02..0.98);
            let (p, dp) = wp_eval(z, &l0).unwrap();
            assert!((dp * dp - (p * p * p * 4.0 - 1.0)).norm() < 1e-8);
        }
    }

    #[test]
    fn on_lattice_rejected() {
        let l = l0_lattice();
        assert_eq!(wp_eval(l.omega1 * 2.0 - l.omega2, &l), Err(NumericError::OnLattice));
    }

    #[test]
    fn inversion_recovers_plus_minus_z() {
        let l = l0_lattice();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..20 {
            let z0 = l.omega1 * rng.gen_range(0.05..0.95) + l.omega2 * rng.gen_range(0.05..0.95);
            let (u0, _) = wp_eval(z0, &l).unwrap();
            let z = invert_wp(u0, &l).unwrap();
            let (u, _) = wp_eval(z, &l).unwrap();
            assert!((u - u0).norm() < 1e-10 * (1.0 + u0.norm()));
            assert!(l.contains(z - z0, 1e-7) || l.contains(z + z0, 1e-7));
            let (x, y) = l.coords(z);
            assert!((0.0..1.0).contains(&x) && (0.0..1.0).contains(&y));
        }
    }

    #[test]
    fn inversion_of_random_values() {
        let l = l0_lattice();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..20 {
            let u0 = C::new(rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0));
            let z = invert_wp(u0, &l).unwrap();
            assert!((wp_eval(z, &l).unwrap().0 - u0).norm() < 1e-10 * (1.0 + u0.norm()));
        }
    }

    #[test]
    fn branch_value_rejected() {
        let l = l0_lattice();
        let (e1, dp) = wp_eval(l.omega1 * 0.5, &l).unwrap();
        assert!(dp.norm() < 1e-10);
        assert_eq!(invert_wp(e1, &l), Err(NumericError::HalfPeriodSingularity));
    }

    #[test]
    fn orbit_sizes() {
        let u = C::new(0.7, 0.3);
        let t = (u * u * u * 4.0 - 1.0).sqrt();
        assert_eq!(orbit_points(u, t).unwrap().len(), 6);
        assert_eq!(orbit_points(C::new(0.25f64.powf(1.0 / 3.0), 0.0), C::zero()).unwrap().len(), 3);
        assert_eq!(orbit_points(C::zero(), C::new(0.0, 1.0)).unwrap().len(), 2);
        assert!(matches!(orbit_points(C::new(1.0, 0.0), C::new(1.0, 0.0)), Err(NumericError::NotOnCurve { .. })));
    }
}
