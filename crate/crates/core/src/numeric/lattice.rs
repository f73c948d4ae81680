use std::sync::OnceLock;

use num_complex::Complex;
use num_traits::{One, Zero};

use super::{c, check_tau, cx, eval_form, NumericError, Real, DEFAULT_EVAL_ORDER};
use crate::modforms::FormId;

/// Rank-2 lattice `ℤω₁ + ℤω₂` with `Im(ω₂/ω₁) > 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Lattice<T> {
    pub omega1: Complex<T>,
    pub omega2: Complex<T>,
}

impl<T: Real> Lattice<T> {
    pub fn new(omega1: Complex<T>, omega2: Complex<T>) -> Result<Self, NumericError> {
        if omega1.is_zero() || omega2.is_zero() {
            return Err(NumericError::DegenerateLattice("zero generator".into()));
        }
        let tau = omega2 / omega1;
        if !(tau.im > T::epsilon() * tau.norm()) {
            return Err(NumericError::DegenerateLattice(format!("Im(omega2/omega1) = {} must be positive", tau.im)));
        }
        Ok(Self { omega1, omega2 })
    }

    /// `[1, τ]`.
    pub fn from_tau(tau: Complex<T>) -> Result<Self, NumericError> {
        check_tau(tau)?;
        Self::new(Complex::one(), tau)
    }

    pub fn tau(&self) -> Complex<T> {
        self.omega2 / self.omega1
    }

    pub fn point(&self, m: i64, n: i64) -> Complex<T> {
        self.omega1 * T::from_i64(m).unwrap() + self.omega2 * T::from_i64(n).unwrap()
    }

    pub fn scaled(&self, k: Complex<T>) -> Result<Self, NumericError> {
        Self::new(self.omega1 * k, self.omega2 * k)
    }

    pub fn max_generator(&self) -> T {
        self.omega1.norm().max(self.omega2.norm())
    }

    /// Real coordinates `(x, y)` with `z = xω₁ + yω₂`.
    pub fn coords(&self, z: Complex<T>) -> (T, T) {
        let det = (self.omega1.conj() * self.omega2).im;
        let x = (z.conj() * self.omega2).im / det;
        let y = (self.omega1.conj() * z).im / det;
        (x, y)
    }

    /// Representative of `z` with coordinates in `[0, 1)²`.
    pub fn reduce(&self, z: Complex<T>) -> Complex<T> {
        let (x, y) = self.coords(z);
        let (fx, fy) = (floor_frac(x), floor_frac(y));
        z - self.omega1 * (x - fx) - self.omega2 * (y - fy)
    }

    /// Representative of `z` with coordinates in `[-1/2, 1/2)²`.
    pub fn reduce_centered(&self, z: Complex<T>) -> Complex<T> {
        let (x, y) = self.coords(z);
        let h = c::<T>(0.5);
        z - self.omega1 * (x + h).floor() - self.omega2 * (y + h).floor()
    }

    /// Lagrange–Gauss reduced basis of the same lattice: `|ω₁| ≤ |ω₂|`,
    /// `|Re(ω₂/ω₁)| ≤ 1/2`, same orientation.
    pub fn reduced(&self) -> Self {
        let (mut a, mut b) = (self.omega1, self.omega2);
        for _ in 0..200 {
            if b.norm_sqr() < a.norm_sqr() {
                // (a, b) -> (b, -a) keeps orientation
                let t = a;
                a = b;
                b = -t;
            }
            let mu = (b / a).re.round();
            if mu.is_zero() {
                break;
            }
            b -= a * mu;
        }
        if (b / a).re > c(0.5) {
            b -= a;
        }
        Self { omega1: a, omega2: b }
    }

    /// Whether `z` is a lattice point up to a relative tolerance.
    pub fn contains(&self, z: Complex<T>, tol: T) -> bool {
        let (x, y) = self.coords(z);
        (x - x.round()).abs() < tol && (y - y.round()).abs() < tol
    }
}

fn floor_frac<T: Real>(x: T) -> T {
    let f = x - x.floor();
    if f >= T::one() {
        T::zero()
    } else {
        f
    }
}

/// Weierstrass invariants of a curve `Y² = 4X³ − g₂X − g₃`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EllipticModel<T> {
    pub g2: Complex<T>,
    pub g3: Complex<T>,
}

impl<T: Real> EllipticModel<T> {
    pub fn new(g2: Complex<T>, g3: Complex<T>) -> Result<Self, NumericError> {
        let m = Self { g2, g3 };
        let scale = g2.norm().powi(3).max(g3.norm_sqr()).max(T::min_positive_value());
        if m.discriminant().norm() <= T::epsilon() * c(64.0) * scale {
            return Err(NumericError::DegenerateModel);
        }
        Ok(m)
    }

    /// `g₂³ − 27 g₃²`.
    pub fn discriminant(&self) -> Complex<T> {
        self.g2 * self.g2 * self.g2 - self.g3 * self.g3 * c::<T>(27.0)
    }

    /// `j = 1728 g₂³ / Δ`.
    pub fn j_invariant(&self) -> Complex<T> {
        self.g2 * self.g2 * self.g2 * c::<T>(1728.0) / self.discriminant()
    }
}

/// Lattice-sum invariants with an absolute error bound for each.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InvariantEstimate<T> {
    pub model: EllipticModel<T>,
    pub g2_error: T,
    pub g3_error: T,
}

/// Rising factorial `k (k+1) ⋯ (k+r−1)`.
fn rising<T: Real>(k: u32, r: u32) -> T {
    (0..r).fold(T::one(), |acc, i| acc * T::from_u32(k + i).unwrap())
}

/// Bernoulli numbers `B_2, B_4, …, B_12`.
const BERNOULLI: [f64; 6] = [1.0 / 6.0, -1.0 / 30.0, 1.0 / 42.0, -1.0 / 30.0, 5.0 / 66.0, -691.0 / 2730.0];

/// `Σ_{m > M} (m + w)^{-k}` by Euler–Maclaurin, with a bound on the remainder.
fn row_tail<T: Real>(w: Complex<T>, big_m: T, k: u32) -> (Complex<T>, T) {
    let x = w + big_m;
    let kf = T::from_u32(k).unwrap();
    // ∫_M^∞ (t + w)^{-k} dt - f(M)/2
    let mut s = x.powf(T::one() - kf) / (kf - T::one()) - x.powf(-kf) * c::<T>(0.5);
    let mut fact = T::one();
    for (j, b) in BERNOULLI.iter().enumerate() {
        let r = 2 * j as u32 + 1;
        fact = fact * T::from_u32(r).unwrap() * T::from_u32(r + 1).unwrap();
        // f^{(r)}(M) = (-1)^r (k)_r (M + w)^{-k-r}
        let deriv = -x.powf(-(kf + T::from_u32(r).unwrap())) * rising::<T>(k, r);
        s -= deriv * (c::<T>(*b) / fact);
    }
    let p = BERNOULLI.len() as u32;
    // |R| ≤ 2ζ(2p)/(2π)^{2p} ∫_M^∞ |f^{(2p)}|, with |t + w| ≥ t − |w|
    let d = big_m - w.norm();
    let expo = kf + T::from_u32(2 * p).unwrap();
    let integral = rising::<T>(k, 2 * p) * d.powf(T::one() - expo) / (expo - T::one());
    let bound = c::<T>(2.0 * 1.000_246_2) / T::TAU().powi(2 * p as i32) * integral;
    (s, bound)
}

/// `Σ_{m ∈ ℤ} (m + w)^{-k}` for `w` off the real line, by direct summation
/// over `|m| ≤ M` and Euler–Maclaurin tails.
fn row_sum<T: Real>(w: Complex<T>, big_m: i64, k: u32) -> (Complex<T>, T) {
    let mut s = Complex::<T>::zero();
    let mut abs_sum = T::zero();
    for m in -big_m..=big_m {
        let t = (w + T::from_i64(m).unwrap()).powi(-(k as i32));
        abs_sum += t.norm();
        s += t;
    }
    let mf = T::from_i64(big_m).unwrap();
    let (right, e1) = row_tail(w, mf, k);
    let (left, e2) = row_tail(-w, mf, k);
    let round = T::epsilon() * T::from_i64(2 * big_m + 20).unwrap() * abs_sum;
    (s + right + left, e1 + e2 + round)
}

/// `Σ'_{w ∈ L} w^{-k}` for `k ∈ {4, 6}`, returned with an absolute error bound.
fn eisenstein_sum<T: Real>(lat: &Lattice<T>, radius: T, k: u32) -> (Complex<T>, T) {
    let tau = lat.tau();
    let r = radius / lat.omega1.norm();
    let n_rows = (r / tau.im).ceil().to_i64().unwrap();
    let zeta = if k == 4 { T::PI().powi(4) / c(90.0) } else { T::PI().powi(6) / c(945.0) };
    let mut total = Complex::new(zeta * c(2.0), T::zero());
    let mut err = T::epsilon() * zeta;
    for n in 1..=n_rows {
        let w = tau * T::from_i64(n).unwrap();
        let big_m = (r + w.norm()).ceil().to_i64().unwrap();
        let (s, e) = row_sum(w, big_m, k);
        // rows ±n contribute equally for even k
        total += s * c::<T>(2.0);
        err += e * c(2.0);
    }
    // rows |n| > N: |Σ_m (m + nτ)^{-k}| ≤ (2π)^k/(k−1)! Σ_d d^{k−1} e^{−2π d n Im τ}
    let lip = T::TAU().powi(k as i32) / rising::<T>(1, k - 1);
    let mut rows_tail = T::zero();
    for n in (n_rows + 1)..(n_rows + 200) {
        let mut row = T::zero();
        for d in 1..200i64 {
            let term = T::from_i64(d).unwrap().powi(k as i32 - 1) * (-T::TAU() * T::from_i64(d * n).unwrap() * tau.im).exp();
            row += term;
            if term < T::min_positive_value() {
                break;
            }
        }
        rows_tail += row;
        if row < T::min_positive_value() {
            break;
        }
    }
    err += c::<T>(2.0) * lip * rows_tail;
    let w1k = lat.omega1.powi(-(k as i32));
    (total * w1k, err * w1k.norm())
}

/// `g₂ = 60 Σ' w⁻⁴` and `g₃ = 140 Σ' w⁻⁶` by summing rows of the reduced
/// lattice out to `radius`, with Euler–Maclaurin row tails and a Lipschitz
/// bound for the remaining rows. Requires `radius ≥ 10·max|ωᵢ|`.
pub fn lattice_invariants<T: Real>(lat: &Lattice<T>, radius: T) -> Result<InvariantEstimate<T>, NumericError> {
    let min = lat.max_generator() * c(10.0);
    if !(radius >= min) {
        return Err(NumericError::RadiusTooSmall { radius: radius.to_f64().unwrap_or(f64::NAN), min: min.to_f64().unwrap_or(f64::NAN) });
    }
    let red = lat.reduced();
    let (s4, e4) = eisenstein_sum(&red, radius, 4);
    let (s6, e6) = eisenstein_sum(&red, radius, 6);
    let g2 = s4 * c::<T>(60.0);
    let g3 = s6 * c::<T>(140.0);
    Ok(InvariantEstimate { model: EllipticModel { g2, g3 }, g2_error: e4 * c(60.0), g3_error: e6 * c(140.0) })
}

/// Invariants from the q-expansions: `g₂ = (4π⁴/3)E₄(τ)ω₁⁻⁴`, `g₃ = (8π⁶/27)E₆(τ)ω₁⁻⁶`.
pub fn eisenstein_invariants<T: Real>(lat: &Lattice<T>, order: i64) -> Result<EllipticModel<T>, NumericError> {
    let red = lat.reduced();
    let tau = red.tau();
    let e4 = eval_form(FormId::E4, tau, order)?;
    let e6 = eval_form(FormId::E6, tau, order)?;
    let pi = T::PI();
    let g2 = e4 * (c::<T>(4.0) * pi.powi(4) / c(3.0)) * red.omega1.powi(-4);
    let g3 = e6 * (c::<T>(8.0) * pi.powi(6) / c(27.0)) * red.omega1.powi(-6);
    Ok(EllipticModel { g2, g3 })
}

/// `μ(τ)·[1, τ]` with `μ = 2π 3^{-1/4} η²`.
pub fn scaled_lattice<T: Real>(tau: Complex<T>, order: i64) -> Result<Lattice<T>, NumericError> {
    let eta = eval_form(FormId::Eta, tau, order)?;
    let mu = eta * eta * (T::TAU() * c::<T>(3.0).powf(c(-0.25)));
    Lattice::new(mu, mu * tau)
}

/// `c·[1, ρ]` with `c > 0` fixed by `g₃ = 1` (then `g₂ = 0`).
pub fn l0_lattice_in<T: Real>() -> Lattice<T> {
    let rho = cx::<T>(-0.5, 0.75f64.sqrt());
    let unit = Lattice::new(Complex::one(), rho).expect("hexagonal lattice");
    let g3 = eisenstein_invariants(&unit, DEFAULT_EVAL_ORDER).expect("E6 at rho").g3;
    let scale = g3.re.powf(c(1.0 / 6.0));
    unit.scaled(Complex::new(scale, T::zero())).expect("positive scale")
}

/// Cached `f64` copy of [`l0_lattice_in`].
pub fn l0_lattice() -> Lattice<f64> {
    static L0: OnceLock<Lattice<f64>> = OnceLock::new();
    *L0.get_or_init(l0_lattice_in::<f64>)
}

#[cfg(test)]
mod tests {
    use super::*;

    type C = Complex<f64>;

    #[test]
    fn square_lattice_kills_g3() {
        let l = Lattice::new(C::new(1.0, 0.0), C::new(0.0, 1.0)).unwrap();
        let est = lattice_invariants(&l, 20.0).unwrap();
        assert!(est.model.g3.norm() <= est.g3_error.max(1e-12));
        assert!(est.g3_error < 1e-10);
    }

    #[test]
    fn hexagonal_lattice_kills_g2() {
        let l = Lattice::new(C::new(1.0, 0.0), C::new(-0.5, 0.75f64.sqrt())).unwrap();
        let est = lattice_invariants(&l, 20.0).unwrap();
        assert!(est.model.g2.norm() <= est.g2_error.max(1e-12), "{:?}", est);
    }

    #[test]
    fn homogeneity() {
        let l = Lattice::new(C::new(1.0, 0.2), C::new(0.3, 1.3)).unwrap();
        let k = C::new(2.0, 1.0);
        let a = lattice_invariants(&l, 30.0).unwrap().model;
        let b = lattice_invariants(&l.scaled(k).unwrap(), 30.0 * k.norm()).unwrap().model;
        assert!((b.g2 - a.g2 * k.powi(-4)).norm() < 1e-9);
        assert!((b.g3 - a.g3 * k.powi(-6)).norm() < 1e-9);
    }

    #[test]
    fn lattice_sums_match_eisenstein_series() {
        for tau in [C::new(0.0, 1.0), C::new(0.3, 1.1), C::new(-0.45, 0.9)] {
            let l = Lattice::from_tau(tau).unwrap();
            let est = lattice_invariants(&l, 25.0).unwrap();
            let q = eisenstein_invariants(&l, 60).unwrap();
            assert!((est.model.g2 - q.g2).norm() < 1e-10 + est.g2_error);
            assert!((est.model.g3 - q.g3).norm() < 1e-10 + est.g3_error);
        }
    }

    #[test]
    fn error_bound_is_honest_under_halving() {
        let l = Lattice::new(C::new(0.7, -0.1), C::new(0.4, 0.9)).unwrap();
        let r = 30.0 * l.max_generator();
        let full = lattice_invariants(&l, r).unwrap();
        let half = lattice_invariants(&l, r / 2.0).unwrap();
        assert!((full.model.g2 - half.model.g2).norm() <= full.g2_error + half.g2_error);
        assert!((full.model.g3 - half.model.g3).norm() <= full.g3_error + half.g3_error);
    }

    #[test]
    fn radius_precondition() {
        let l = Lattice::from_tau(C::new(0.0, 2.0)).unwrap();
        assert!(matches!(lattice_invariants(&l, 5.0), Err(NumericError::RadiusTooSmall { .. })));
    }

    #[test]
    fn degenerate_inputs() {
        assert!(Lattice::new(C::new(1.0, 0.0), C::new(2.0, 0.0)).is_err());
        assert!(Lattice::new(C::new(0.0, 0.0), C::new(0.0, 1.0)).is_err());
        assert!(Lattice::new(C::new(1.0, 0.0), C::new(0.0, -1.0)).is_err());
        assert!(matches!(EllipticModel::new(C::new(3.0, 0.0), C::new(1.0, 0.0)), Err(NumericError::DegenerateModel)));
    }

    #[test]
    fn l0_invariants() {
        let l0 = l0_lattice();
        let q = eisenstein_invariants(&l0, 80).unwrap();
        assert!(q.g2.norm() < 1e-10);
        assert!((q.g3 - C::new(1.0, 0.0)).norm() < 1e-10);
        let est = lattice_invariants(&l0, 30.0 * l0.max_generator()).unwrap();
        assert!(est.model.g2.norm() < 1e-10);
        assert!((est.model.g3 - C::new(1.0, 0.0)).norm() < 1e-10);
        // ρ·L₀ = L₀
        let rho = C::new(-0.5, 0.75f64.sqrt());
        for p in [l0.omega1 * rho, l0.omega2 * rho] {
            assert!(l0.contains(p, 1e-12));
        }
        assert!(l0.omega1.im == 0.0 && l0.omega1.re > 0.0);
    }

    #[test]
    fn scaled_lattice_matches_g2l_g3l() {
        let tau = C::new(0.0, 1.0);
        let l = scaled_lattice(tau, 60).unwrap();
        let m = eisenstein_invariants(&l, 60).unwrap();
        assert!((m.g2 - eval_form::<f64>(FormId::G2L, tau, 60).unwrap()).norm() < 1e-8);
        let tau = C::new(0.0, 2.0);
        let l = scaled_lattice(tau, 60).unwrap();
        let m = lattice_invariants(&l, 20.0 * l.max_generator()).unwrap().model;
        assert!((m.g3 - eval_form::<f64>(FormId::G3L, tau, 60).unwrap()).norm() < 1e-8);
        let l = scaled_lattice(C::new(0.3, 1.1), 60).unwrap();
        let m = lattice_invariants(&l, 20.0 * l.max_generator()).unwrap().model;
        assert!((m.discriminant() - C::new(27.0, 0.0)).norm() < 1e-7);
    }

    #[test]
    fn reduction_preserves_lattice() {
        let l = Lattice::new(C::new(1.0, 0.0), C::new(7.3, 0.2)).unwrap();
        let r = l.reduced();
        assert!(r.tau().im > 0.0);
        assert!(r.tau().re.abs() <= 0.5 + 1e-12);
        assert!(l.contains(r.omega1, 1e-9) && l.contains(r.omega2, 1e-9));
        assert!(r.contains(l.omega1, 1e-9) && r.contains(l.omega2, 1e-9));
        let z = C::new(3.7, -2.1);
        let (x, y) = l.coords(l.reduce(z));
        assert!((0.0..1.0).contains(&x) && (0.0..1.0).contains(&y));
    }
}
