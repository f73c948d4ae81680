//! Floating-point evaluation of the q-expansions and of Weierstrass
//! functions on explicit lattices.
//!
//! Everything here is generic over [`Real`]; `f64` is the working type of
//! the test suites and the CLI.

mod checks;
mod lattice;
mod weierstrass;

use std::fmt::{Debug, Display};

use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{Float, FloatConst, FromPrimitive, NumAssign, ToPrimitive, Zero};
use thiserror::Error;

use crate::modforms::{build_form, FormId, ModformError};
use crate::qseries::{PrefixedSeries, GRID};

pub use checks::{
    bridge_constant, hecke_theta_constant, g_rule_residual, hecke_theta_residual, roundtrip_check, slash_g_power, translate_residual,
    RoundtripReport, BRIDGE_K,
};
pub use lattice::{
    eisenstein_invariants, l0_lattice, l0_lattice_in, lattice_invariants, scaled_lattice, EllipticModel, InvariantEstimate, Lattice,
};
pub use weierstrass::{invert_wp, orbit_points, wp_eval, ON_LATTICE_EPS};

/// Scalar type for the numeric layer.
pub trait Real: Float + FloatConst + FromPrimitive + ToPrimitive + NumAssign + Debug + Display + Send + Sync + 'static {}
impl<T: Float + FloatConst + FromPrimitive + ToPrimitive + NumAssign + Debug + Display + Send + Sync + 'static> Real for T {}

/// Default truncation (q-powers) for evaluations near the real axis.
pub const DEFAULT_EVAL_ORDER: i64 = 120;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum NumericError {
    #[error("tau = {0} is not in the upper half-plane")]
    NotInUpperHalfPlane(String),
    #[error("Im tau = {im} is too small for order {order} (tail estimate {tail:e})")]
    PrecisionUnreachable { im: f64, order: i64, tail: f64 },
    #[error("degenerate lattice: {0}")]
    DegenerateLattice(String),
    #[error("degenerate curve: g2^3 - 27 g3^2 = 0")]
    DegenerateModel,
    #[error("summation radius {radius} below the minimum {min}")]
    RadiusTooSmall { radius: f64, min: f64 },
    #[error("point lies on the lattice")]
    OnLattice,
    #[error("target value is a branch value of the Weierstrass function")]
    HalfPeriodSingularity,
    #[error("Newton iteration did not converge (residual {residual:e})")]
    NoConvergence { residual: f64 },
    #[error("point is not on t^2 = 4u^3 - 1 (residual {residual:e})")]
    NotOnCurve { residual: f64 },
    #[error("Im tau = {0} is below the precision guard")]
    PrecisionGuard(f64),
    #[error(transparent)]
    Series(#[from] ModformError),
}

pub(crate) fn c<T: Real>(v: f64) -> T {
    T::from_f64(v).expect("representable constant")
}

pub(crate) fn cx<T: Real>(re: f64, im: f64) -> Complex<T> {
    Complex::new(c(re), c(im))
}

fn rational_to<T: Real>(r: &BigRational) -> T {
    c(r.to_f64().unwrap_or(f64::NAN))
}

pub(crate) fn check_tau<T: Real>(tau: Complex<T>) -> Result<(), NumericError> {
    if tau.im > T::zero() && tau.re.is_finite() && tau.im.is_finite() {
        Ok(())
    } else {
        Err(NumericError::NotInUpperHalfPlane(format!("{tau}")))
    }
}

/// Floating-point copy of a q-expansion, grouped by exponent residue mod 1
/// so that each group is a polynomial in `q` evaluated by Horner's rule.
#[derive(Debug, Clone)]
pub struct SeriesEvaluator<T> {
    prefactor: Complex<T>,
    /// `(first exponent in grid units, coefficients at steps of one q-power)`.
    blocks: Vec<(i64, Vec<T>)>,
    order: i64,
    tail_coeff: T,
}

impl<T: Real> SeriesEvaluator<T> {
    pub fn new(p: &PrefixedSeries) -> Self {
        let s = &p.series;
        let mut blocks = Vec::new();
        for r in 0..GRID {
            let exps: Vec<i64> = s.terms().map(|(e, _)| e).filter(|e| e.rem_euclid(GRID) == r).collect();
            let Some(&first) = exps.first() else { continue };
            let last = *exps.last().expect("nonempty");
            let coeffs = (0..=(last - first) / GRID).map(|j| rational_to::<T>(&s.coeff(first + j * GRID))).collect();
            blocks.push((first, coeffs));
        }
        let window = (s.order() - GRID).max(s.valuation());
        let tail_coeff = s
            .terms()
            .filter(|(e, _)| *e >= window)
            .map(|(_, v)| rational_to::<T>(v).abs())
            .fold(T::one(), T::max);
        Self { prefactor: p.scalar.to_complex(), blocks, order: s.order(), tail_coeff }
    }

    pub fn for_form(id: FormId, order: i64) -> Result<Self, NumericError> {
        Ok(Self::new(build_form(id, order)?.as_ref()))
    }

    /// Truncation order in grid units.
    pub fn order(&self) -> i64 {
        self.order
    }

    /// Bound on the omitted terms at `tau`, assuming coefficients near the
    /// cutoff are representative.
    pub fn tail_estimate(&self, tau: Complex<T>) -> T {
        let aq = (-T::TAU() * tau.im).exp();
        if aq >= T::one() {
            return T::infinity();
        }
        let e = T::from_i64(self.order).unwrap() / T::from_i64(GRID).unwrap();
        self.prefactor.norm() * self.tail_coeff * aq.powf(e) / (T::one() - aq)
    }

    fn check(&self, tau: Complex<T>, value: Complex<T>) -> Result<(), NumericError> {
        let tail = self.tail_estimate(tau);
        let tol = T::epsilon() * c(100.0) * value.norm().max(T::one());
        if tail > tol || !tail.is_finite() {
            return Err(NumericError::PrecisionUnreachable {
                im: tau.im.to_f64().unwrap_or(f64::NAN),
                order: self.order / GRID,
                tail: tail.to_f64().unwrap_or(f64::INFINITY),
            });
        }
        Ok(())
    }

    /// Value without the precision check.
    pub fn eval_unchecked(&self, tau: Complex<T>) -> Complex<T> {
        self.eval_impl(tau, false).0
    }

    pub fn eval(&self, tau: Complex<T>) -> Result<Complex<T>, NumericError> {
        check_tau(tau)?;
        let v = self.eval_unchecked(tau);
        self.check(tau, v)?;
        Ok(v)
    }

    /// Value and `d/dτ`.
    pub fn eval_with_derivative(&self, tau: Complex<T>) -> Result<(Complex<T>, Complex<T>), NumericError> {
        check_tau(tau)?;
        let (v, d) = self.eval_impl(tau, true);
        self.check(tau, v)?;
        Ok((v, d))
    }

    fn eval_impl(&self, tau: Complex<T>, deriv: bool) -> (Complex<T>, Complex<T>) {
        let two_pi_i = Complex::new(T::zero(), T::TAU());
        let q = (two_pi_i * tau).exp();
        let g = T::from_i64(GRID).unwrap();
        let mut v = Complex::zero();
        let mut d = Complex::zero();
        for (first, coeffs) in &self.blocks {
            let e0 = T::from_i64(*first).unwrap() / g;
            let mut acc = Complex::zero();
            let mut dacc = Complex::zero();
            for (j, &a) in coeffs.iter().enumerate().rev() {
                acc = acc * q + a;
                if deriv {
                    dacc = dacc * q + a * (e0 + T::from_usize(j).unwrap());
                }
            }
            let base = (two_pi_i * tau * e0).exp();
            v += base * acc;
            d += base * dacc;
        }
        (self.prefactor * v, self.prefactor * d * two_pi_i)
    }
}

/// `id` at `tau`, summed through `order` q-powers.
pub fn eval_form<T: Real>(id: FormId, tau: Complex<T>, order: i64) -> Result<Complex<T>, NumericError> {
    check_tau(tau)?;
    SeriesEvaluator::for_form(id, order)?.eval(tau)
}

/// `id` and its `τ`-derivative at `tau`.
pub fn eval_form_with_derivative<T: Real>(id: FormId, tau: Complex<T>, order: i64) -> Result<(Complex<T>, Complex<T>), NumericError> {
    check_tau(tau)?;
    SeriesEvaluator::for_form(id, order)?.eval_with_derivative(tau)
}
