use num_complex::Complex;
use num_traits::One;
use serde::Serialize;

use super::{c, check_tau, eval_form, eval_form_with_derivative, invert_wp, l0_lattice_in, lattice_invariants, wp_eval, NumericError, Real};
use crate::modforms::hecke::{g_rule, theta_g_image, GAction};
use crate::modforms::{FormId, ThetaIndex};

/// The sixth root of `−1` fixed in `s = 2kπ·2^{1/3}/√3`: `k = −i`.
pub const BRIDGE_K: Complex<f64> = Complex { re: 0.0, im: -1.0 };

/// `s = 2kπ·2^{1/3}/√3` with `k = −i`.
pub fn bridge_constant<T: Real>() -> Complex<T> {
    let k = Complex::new(T::zero(), -T::one());
    k * (T::TAU() * c::<T>(2.0).cbrt() / c::<T>(3.0).sqrt())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RoundtripReport {
    pub tau: [f64; 2],
    pub u: [f64; 2],
    pub t: [f64; 2],
    pub z: [f64; 2],
    /// `|℘(z) − u|`.
    pub r1: f64,
    /// `min_± |℘′(z) ∓ t|`.
    pub r2: f64,
    /// `|t² − (4u³ − 1)|`.
    pub r3: f64,
    /// `|du/dτ − s η⁴ t| / |s η⁴ t|`.
    pub r4: f64,
    /// `(du/dτ)/(η⁴ t)`.
    pub bridge_ratio: [f64; 2],
}

fn pair<T: Real>(z: Complex<T>) -> [f64; 2] {
    [z.re.to_f64().unwrap_or(f64::NAN), z.im.to_f64().unwrap_or(f64::NAN)]
}

/// `τ ↦ (u, t) ↦ z = ℘⁻¹(u)` on `L₀`, with residuals of each step.
pub fn roundtrip_check<T: Real>(tau: Complex<T>, order: i64) -> Result<RoundtripReport, NumericError> {
    check_tau(tau)?;
    if tau.im <= c(0.5) {
        return Err(NumericError::PrecisionGuard(tau.im.to_f64().unwrap_or(f64::NAN)));
    }
    let (u, du) = eval_form_with_derivative(FormId::U, tau, order)?;
    let t = eval_form(FormId::Tt, tau, order)?;
    let eta = eval_form(FormId::Eta, tau, order)?;
    let l0 = l0_lattice_in::<T>();
    let z = invert_wp(u, &l0)?;
    let (p, dp) = wp_eval(z, &l0)?;
    let r1 = (p - u).norm();
    let r2 = (dp - t).norm().min((dp + t).norm());
    let r3 = (t * t - (u * u * u * c::<T>(4.0) - T::one())).norm();
    let eta4t = eta.powi(4) * t;
    let s = bridge_constant::<T>() * eta4t;
    let r4 = (du - s).norm() / s.norm();
    let f = |v: T| v.to_f64().unwrap_or(f64::NAN);
    Ok(RoundtripReport {
        tau: pair(tau),
        u: pair(u),
        t: pair(t),
        z: pair(z),
        r1: f(r1),
        r2: f(r2),
        r3: f(r3),
        r4: f(r4),
        bridge_ratio: pair(du / eta4t),
    })
}

/// `g^r τ` and `j_{g^r}(τ)` for `g = [[0,1],[−1,−1]]`, `r = 1, 2, 3`.
pub fn slash_g_power<T: Real>(tau: Complex<T>, r: u32) -> (Complex<T>, Complex<T>) {
    match r % 3 {
        1 => (-Complex::<T>::one() / (tau + T::one()), -(tau + T::one())),
        2 => (-Complex::<T>::one() - Complex::<T>::one() / tau, tau),
        _ => (tau, -Complex::one()),
    }
}

/// `|j_g(τ)^{-k} f(gτ) − λ f(τ)| / |f(τ)|` for the registered rule of `id`,
/// where for theta eighth powers `λ f` is the permuted image.
pub fn g_rule_residual<T: Real>(id: FormId, tau: Complex<T>, order: i64) -> Result<T, NumericError> {
    let rule = g_rule(id).ok_or_else(|| crate::modforms::ModformError::NoTransformationRule(id.to_string()))?;
    let k = id.double_weight().expect("registered forms have a weight") / 2;
    let (gt, j) = slash_g_power(tau, 1);
    let lhs = eval_form(id, gt, order)? * j.powi(-k);
    let f0 = eval_form(id, tau, order)?;
    let rhs = match rule {
        GAction::Eigen(l) => f0 * l.to_complex::<T>(),
        GAction::ThetaPermutation => {
            let FormId::ThetaNullPow8(l) = id else { unreachable!() };
            eval_form(FormId::ThetaNullPow8(theta_g_image(l)), tau, order)?
        }
    };
    Ok((lhs - rhs).norm() / f0.norm().max(rhs.norm()))
}

/// `|f(τ+1) − λ f(τ)| / |f(τ)|` with `λ` the measured translation eigenvalue.
pub fn translate_residual<T: Real>(id: FormId, tau: Complex<T>, order: i64) -> Result<T, NumericError> {
    let l = crate::modforms::translate_eigenvalue(id)?;
    let a = eval_form(id, tau + T::one(), order)?;
    let b = eval_form(id, tau, order)?;
    Ok((a - b * l.to_complex::<T>()).norm() / b.norm())
}

/// `Σ_{r=1}^{3} j_{g^r}(τ)^{-4} ϑ₃⁸(g^r τ)` and `2Θ_{E₈}(τ)`.
pub fn hecke_theta_residual<T: Real>(tau: Complex<T>, order: i64) -> Result<(Complex<T>, Complex<T>), NumericError> {
    let mut sum = Complex::new(T::zero(), T::zero());
    for r in 1..=3 {
        let (gt, j) = slash_g_power(tau, r);
        sum += eval_form(FormId::ThetaNullPow8(ThetaIndex::Three), gt, order)? * j.powi(-4);
    }
    let e8 = eval_form(FormId::ThetaE8, tau, order)? * c::<T>(2.0);
    Ok((sum, e8))
}

/// `T_{⟨g⟩,4} ϑ₃⁸(τ) / g₂([1, τ])` with `g₂` from the lattice sum.
pub fn hecke_theta_constant<T: Real>(tau: Complex<T>, order: i64) -> Result<Complex<T>, NumericError> {
    let (sum, _) = hecke_theta_residual(tau, order)?;
    let lat = super::Lattice::from_tau(tau)?;
    let g2 = lattice_invariants(&lat, c::<T>(20.0) * lat.max_generator())?.model.g2;
    Ok(sum / g2)
}
