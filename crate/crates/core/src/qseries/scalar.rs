use std::fmt;
use std::ops::{Div, Mul};

use num_bigint::BigInt;
use num_complex::Complex;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Float, FloatConst, FromPrimitive, One, Signed, ToPrimitive, Zero};

use super::{FracSeries, SeriesError};

/// Exact multiplicative prefactor `r · π^a · √3^b · 2^{c/3} · ζ₁₂^d`.
///
/// Canonical form: `r ≥ 0`, `b ∈ {0,1}`, `c ∈ {0,1,2}`, `d ∈ [0,12)`; signs
/// live in `d` (`-1 = ζ₁₂⁶`). The zero scalar has all exponents zero. In this
/// form equality of values is equality of fields.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Scalar {
    r: BigRational,
    pi: i32,
    sqrt3: u8,
    cbrt2: u8,
    zeta12: u8,
}

impl Scalar {
    pub fn new(r: BigRational, pi: i32, sqrt3: i64, cbrt2: i64, zeta12: i64) -> Self {
        let mut r = r;
        if r.is_zero() {
            return Self::zero();
        }
        let (q3, b) = sqrt3.div_mod_floor(&2);
        let (q2, c) = cbrt2.div_mod_floor(&3);
        r *= rational_pow(3, q3);
        r *= rational_pow(2, q2);
        let mut d = zeta12.rem_euclid(12);
        if r.is_negative() {
            r = -r;
            d = (d + 6) % 12;
        }
        Self { r, pi, sqrt3: b as u8, cbrt2: c as u8, zeta12: d as u8 }
    }

    pub fn zero() -> Self {
        Self { r: BigRational::zero(), pi: 0, sqrt3: 0, cbrt2: 0, zeta12: 0 }
    }

    pub fn one() -> Self {
        Self::rational(BigRational::one())
    }

    pub fn rational(r: BigRational) -> Self {
        Self::new(r, 0, 0, 0, 0)
    }

    pub fn ratio(n: i64, d: i64) -> Self {
        Self::rational(BigRational::new(n.into(), d.into()))
    }

    /// `ζ₁₂^d = e^{iπd/6}`.
    pub fn zeta12_pow(d: i64) -> Self {
        Self::new(BigRational::one(), 0, 0, 0, d)
    }

    pub fn is_zero(&self) -> bool {
        self.r.is_zero()
    }

    pub fn magnitude_rational(&self) -> &BigRational {
        &self.r
    }

    /// `(π, √3, 2^{1/3}, ζ₁₂)` exponents in canonical range.
    pub fn exponents(&self) -> (i32, u8, u8, u8) {
        (self.pi, self.sqrt3, self.cbrt2, self.zeta12)
    }

    /// The value as a rational number, if it is one.
    pub fn as_rational(&self) -> Option<BigRational> {
        if self.pi != 0 || self.sqrt3 != 0 || self.cbrt2 != 0 {
            return None;
        }
        match self.zeta12 {
            0 => Some(self.r.clone()),
            6 => Some(-self.r.clone()),
            _ => None,
        }
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        Some(Self::new(
            self.r.recip(),
            -self.pi,
            -(self.sqrt3 as i64),
            -(self.cbrt2 as i64),
            -(self.zeta12 as i64),
        ))
    }

    pub fn pow(&self, k: i64) -> Option<Self> {
        if k < 0 {
            return self.inv()?.pow(-k);
        }
        let r = num_traits::pow(self.r.clone(), k as usize);
        Some(Self::new(
            r,
            self.pi * k as i32,
            self.sqrt3 as i64 * k,
            self.cbrt2 as i64 * k,
            self.zeta12 as i64 * k,
        ))
    }

    pub fn to_complex<T: Float + FloatConst + FromPrimitive>(&self) -> Complex<T> {
        let t = |v: f64| T::from_f64(v).unwrap();
        let r = t(self.r.to_f64().unwrap_or(f64::NAN));
        let mag = r
            * T::PI().powi(self.pi)
            * t(3.0).sqrt().powi(self.sqrt3 as i32)
            * t(2.0).cbrt().powi(self.cbrt2 as i32);
        Complex::from_polar(mag, T::PI() * t(self.zeta12 as f64) / t(6.0))
    }
}

fn rational_pow(base: i64, e: i64) -> BigRational {
    let p = BigRational::from_integer(num_traits::pow(BigInt::from(base), e.unsigned_abs() as usize));
    if e < 0 {
        p.recip()
    } else {
        p
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        Scalar::new(
            &self.r * &rhs.r,
            self.pi + rhs.pi,
            (self.sqrt3 + rhs.sqrt3) as i64,
            (self.cbrt2 + rhs.cbrt2) as i64,
            (self.zeta12 + rhs.zeta12) as i64,
        )
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, rhs: Scalar) -> Scalar {
        &self * &rhs
    }
}

impl Div for &Scalar {
    type Output = Scalar;
    /// Panics on division by the zero scalar.
    fn div(self, rhs: &Scalar) -> Scalar {
        self * &rhs.inv().expect("division by zero scalar")
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.r)?;
        if self.pi != 0 {
            write!(f, "*pi^{}", self.pi)?;
        }
        if self.sqrt3 != 0 {
            write!(f, "*sqrt(3)")?;
        }
        if self.cbrt2 != 0 {
            write!(f, "*2^({}/3)", self.cbrt2)?;
        }
        if self.zeta12 != 0 {
            write!(f, "*zeta12^{}", self.zeta12)?;
        }
        Ok(())
    }
}

/// `scalar · series`, the carrier for forms with irrational normalization.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PrefixedSeries {
    pub scalar: Scalar,
    pub series: FracSeries<BigRational>,
}

impl PrefixedSeries {
    /// Builds and absorbs the series' leading coefficient into the scalar.
    pub fn new(scalar: Scalar, series: FracSeries<BigRational>) -> Self {
        let mut p = Self { scalar, series };
        p.normalize();
        p
    }

    pub fn plain(series: FracSeries<BigRational>) -> Self {
        Self::new(Scalar::one(), series)
    }

    fn normalize(&mut self) {
        if self.scalar.is_zero() {
            self.series = FracSeries::zero(self.series.order());
            return;
        }
        if let Some(lc) = self.series.leading_coeff().cloned() {
            if !lc.is_one() {
                self.scalar = &self.scalar * &Scalar::rational(lc.clone());
                self.series = self.series.scale(&lc.recip());
            }
        }
    }

    pub fn order(&self) -> i64 {
        self.series.order()
    }

    pub fn pow(&self, k: i64) -> Result<Self, SeriesError> {
        let scalar = self.scalar.pow(k).ok_or(SeriesError::ZeroSeries)?;
        Ok(Self::new(scalar, self.series.pow(k)?))
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::new(&self.scalar * &other.scalar, &self.series * &other.series)
    }

    /// Collapses the prefactor into the coefficients when it is rational.
    pub fn to_rational_series(&self) -> Option<FracSeries<BigRational>> {
        self.scalar.as_rational().map(|r| self.series.scale(&r))
    }

    /// Applies `q d/dq` to the series part; the prefactor is constant.
    pub fn theta_deriv(&self) -> Self {
        Self::new(self.scalar.clone(), self.series.theta_deriv())
    }
}
