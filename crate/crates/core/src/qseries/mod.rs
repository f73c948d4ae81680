//! Truncated q-series on the exponent grid (1/24)ℤ.
//!
//! A [`FracSeries`] stores `Σ c_i q^{(lead + i)/24} + O(q^{order/24})`. All
//! exponents, leads and orders are integers in units of 1/24, so `q^1` is
//! exponent `24`. Coefficients are generic over [`Coeff`]; the exact carrier
//! used by the identity checks is [`crate::QSeries`] (big rationals).

mod scalar;

pub use scalar::{PrefixedSeries, Scalar};

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{FromPrimitive, Num};
use thiserror::Error;

/// Exponent denominator shared by every series.
pub const GRID: i64 = 24;

/// Grid exponent of `q^n`.
pub const fn qpow(n: i64) -> i64 {
    n * GRID
}

/// Minimum requirements on series coefficients.
pub trait Coeff: Clone + fmt::Debug + Num + Neg<Output = Self> + FromPrimitive {}
impl<T: Clone + fmt::Debug + Num + Neg<Output = T> + FromPrimitive> Coeff for T {}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("the zero series has no inverse or root")]
    ZeroSeries,
    #[error("leading coefficient must be 1 to take a principal root")]
    NonUnitLeading,
    #[error("leading exponent {lead}/24 is not divisible by {n} on the 1/24 grid")]
    ExponentNotDivisible { lead: i64, n: u32 },
}

/// Truncated series in `q^{1/24}` with exact bookkeeping of the truncation
/// order.
///
/// Canonical form: either `coeffs` is empty and `lead == 0` (the zero
/// series), or both the first and the last stored coefficient are nonzero.
/// Equality is therefore structural.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FracSeries<C> {
    lead: i64,
    coeffs: Vec<C>,
    order: i64,
}

impl<C: Coeff> FracSeries<C> {
    /// `0 + O(q^{order/24})`.
    pub fn zero(order: i64) -> Self {
        Self { lead: 0, coeffs: Vec::new(), order }
    }

    /// `1 + O(q^{order/24})`; `order` must be positive.
    pub fn one(order: i64) -> Self {
        Self::monomial(0, C::one(), order)
    }

    pub fn monomial(exp: i64, c: C, order: i64) -> Self {
        Self::from_coeffs(exp, vec![c], order)
    }

    /// Dense constructor; normalizes and drops entries at or beyond `order`.
    pub fn from_coeffs(lead: i64, mut coeffs: Vec<C>, order: i64) -> Self {
        let keep = (order - lead).max(0) as usize;
        coeffs.truncate(keep);
        let mut s = Self { lead, coeffs, order };
        s.normalize();
        s
    }

    /// Sparse constructor from `(exponent, coefficient)` pairs; repeated
    /// exponents are summed and exponents at or beyond `order` are dropped.
    pub fn from_terms<I: IntoIterator<Item = (i64, C)>>(terms: I, order: i64) -> Self {
        let terms: Vec<(i64, C)> = terms.into_iter().filter(|(e, _)| *e < order).collect();
        let Some(lo) = terms.iter().map(|(e, _)| *e).min() else {
            return Self::zero(order);
        };
        let mut coeffs = vec![C::zero(); (order - lo) as usize];
        for (e, c) in terms {
            let slot = &mut coeffs[(e - lo) as usize];
            *slot = slot.clone() + c;
        }
        Self::from_coeffs(lo, coeffs, order)
    }

    fn normalize(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
        let skip = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if skip == self.coeffs.len() {
            self.coeffs.clear();
            self.lead = 0;
        } else if skip > 0 {
            self.coeffs.drain(..skip);
            self.lead += skip as i64;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Leading exponent (grid units); `0` for the zero series.
    pub fn lead(&self) -> i64 {
        self.lead
    }

    /// Exclusive truncation exponent (grid units).
    pub fn order(&self) -> i64 {
        self.order
    }

    /// Exponent of the first nonzero term, or `order` for the zero series.
    pub fn valuation(&self) -> i64 {
        if self.is_zero() {
            self.order
        } else {
            self.lead
        }
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn leading_coeff(&self) -> Option<&C> {
        self.coeffs.first()
    }

    /// Coefficient of `q^{exp/24}`; zero for exponents that are not stored.
    pub fn coeff(&self, exp: i64) -> C {
        let idx = exp - self.lead;
        if idx < 0 {
            return C::zero();
        }
        self.coeffs.get(idx as usize).cloned().unwrap_or_else(C::zero)
    }

    /// Nonzero terms as `(exponent, coefficient)`.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &C)> + '_ {
        let lead = self.lead;
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, c)| (lead + i as i64, c))
    }

    pub fn truncate(&self, order: i64) -> Self {
        if order >= self.order {
            return self.clone();
        }
        Self::from_coeffs(self.lead, self.coeffs.clone(), order)
    }

    pub fn scale(&self, k: &C) -> Self {
        Self::from_coeffs(self.lead, self.coeffs.iter().map(|c| c.clone() * k.clone()).collect(), self.order)
    }

    /// Multiplication by the exact monomial `q^{exp/24}`.
    pub fn shift(&self, exp: i64) -> Self {
        if self.is_zero() {
            return Self::zero(self.order + exp);
        }
        Self { lead: self.lead + exp, coeffs: self.coeffs.clone(), order: self.order + exp }
    }

    pub fn map_coeffs<D: Coeff>(&self, f: impl Fn(&C) -> D) -> FracSeries<D> {
        FracSeries::from_coeffs(self.lead, self.coeffs.iter().map(f).collect(), self.order)
    }

    fn add_impl(&self, other: &Self, negate_other: bool) -> Self {
        let order = self.order.min(other.order);
        let terms = self.terms().map(|(e, c)| (e, c.clone())).chain(other.terms().map(|(e, c)| {
            let c = c.clone();
            (e, if negate_other { -c } else { c })
        }));
        Self::from_terms(terms, order)
    }

    fn mul_impl(&self, other: &Self) -> Self {
        let order = (self.order + other.valuation()).min(other.order + self.valuation());
        if self.is_zero() || other.is_zero() {
            return Self::zero(order);
        }
        let lead = self.lead + other.lead;
        if lead >= order {
            return Self::zero(order);
        }
        let mut out = vec![C::zero(); (order - lead) as usize];
        let rhs: Vec<(usize, &C)> = other.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()).collect();
        for (i, a) in self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            for &(j, b) in &rhs {
                let k = i + j;
                if k >= out.len() {
                    break;
                }
                out[k] = out[k].clone() + a.clone() * b.clone();
            }
        }
        Self::from_coeffs(lead, out, order)
    }

    /// Multiplicative inverse. The result has lead `-lead(a)` and the same
    /// relative precision as `a`.
    pub fn inv(&self) -> Result<Self, SeriesError> {
        let a0 = self.leading_coeff().ok_or(SeriesError::ZeroSeries)?;
        let len = (self.order - self.lead) as usize;
        let a0_inv = C::one() / a0.clone();
        let tail: Vec<(usize, &C)> = self.coeffs.iter().enumerate().skip(1).filter(|(_, c)| !c.is_zero()).collect();
        let mut b: Vec<C> = Vec::with_capacity(len);
        b.push(a0_inv.clone());
        for n in 1..len {
            let mut acc = C::zero();
            for &(k, ak) in &tail {
                if k > n {
                    break;
                }
                acc = acc + ak.clone() * b[n - k].clone();
            }
            b.push(-(acc * a0_inv.clone()));
        }
        Ok(Self::from_coeffs(-self.lead, b, self.order - 2 * self.lead))
    }

    /// Integer power; negative exponents go through [`FracSeries::inv`].
    pub fn pow(&self, k: i64) -> Result<Self, SeriesError> {
        if k < 0 {
            return self.inv()?.pow(-k);
        }
        let mut result: Option<Self> = None;
        let mut base = self.clone();
        let mut e = k as u64;
        while e > 0 {
            if e & 1 == 1 {
                result = Some(match result {
                    None => base.clone(),
                    Some(r) => &r * &base,
                });
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        // a^0 is exactly 1 with the relative precision of a.
        Ok(result.unwrap_or_else(|| Self::one(self.order - self.valuation())))
    }

    /// Principal `n`-th root: the branch whose leading coefficient is `1`.
    pub fn nth_root(&self, n: u32) -> Result<Self, SeriesError> {
        assert!(n > 0, "root index must be positive");
        let a0 = self.leading_coeff().ok_or(SeriesError::ZeroSeries)?;
        if !a0.is_one() {
            return Err(SeriesError::NonUnitLeading);
        }
        let ni = n as i64;
        if self.lead % ni != 0 {
            return Err(SeriesError::ExponentNotDivisible { lead: self.lead, n });
        }
        let len = (self.order - self.lead) as usize;
        let tail: Vec<(usize, &C)> = self.coeffs.iter().enumerate().skip(1).filter(|(_, c)| !c.is_zero()).collect();
        let mut b: Vec<C> = Vec::with_capacity(len);
        b.push(C::one());
        // m b_m = Σ_k ((1/n + 1) k - m) a_k b_{m-k}
        for m in 1..len {
            let mut acc = C::zero();
            for &(k, ak) in &tail {
                if k > m {
                    break;
                }
                let w = (1 + ni) * k as i64 - ni * m as i64;
                acc = acc + from_i64::<C>(w) * ak.clone() * b[m - k].clone();
            }
            b.push(acc / from_i64::<C>(ni * m as i64));
        }
        let lead = self.lead / ni;
        Ok(Self::from_coeffs(lead, b, lead + len as i64))
    }

    /// The derivation `q d/dq`: the coefficient of `q^e` is multiplied by `e`.
    pub fn theta_deriv(&self) -> Self {
        let g = from_i64::<C>(GRID);
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| c.clone() * from_i64::<C>(self.lead + i as i64) / g.clone())
            .collect();
        Self::from_coeffs(self.lead, coeffs, self.order)
    }

    /// First exponent below the common order where `self` and `other`
    /// disagree.
    pub fn first_mismatch(&self, other: &Self) -> Option<i64> {
        let order = self.order.min(other.order);
        let lo = self.valuation().min(other.valuation());
        (lo..order).find(|&e| self.coeff(e) != other.coeff(e))
    }
}

fn from_i64<C: FromPrimitive>(v: i64) -> C {
    C::from_i64(v).expect("coefficient type must represent small integers")
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $body:expr) => {
        impl<'a, C: Coeff> $tr<&'a FracSeries<C>> for &'a FracSeries<C> {
            type Output = FracSeries<C>;
            fn $method(self, rhs: &'a FracSeries<C>) -> FracSeries<C> {
                $body(self, rhs)
            }
        }
        impl<C: Coeff> $tr for FracSeries<C> {
            type Output = FracSeries<C>;
            fn $method(self, rhs: FracSeries<C>) -> FracSeries<C> {
                $body(&self, &rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a: &FracSeries<C>, b: &FracSeries<C>| a.add_impl(b, false));
forward_binop!(Sub, sub, |a: &FracSeries<C>, b: &FracSeries<C>| a.add_impl(b, true));
forward_binop!(Mul, mul, |a: &FracSeries<C>, b: &FracSeries<C>| a.mul_impl(b));

impl<C: Coeff> Neg for &FracSeries<C> {
    type Output = FracSeries<C>;
    fn neg(self) -> FracSeries<C> {
        FracSeries { lead: self.lead, coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(), order: self.order }
    }
}

impl<C: Coeff> Neg for FracSeries<C> {
    type Output = FracSeries<C>;
    fn neg(self) -> FracSeries<C> {
        -&self
    }
}

/// Reduced exponent `e/24` as `(num, den)`.
pub fn reduced_exponent(e: i64) -> (i64, i64) {
    let g = num_integer::gcd(e, GRID);
    (e / g, GRID / g)
}

fn fmt_exponent(e: i64) -> String {
    match reduced_exponent(e) {
        (n, 1) => n.to_string(),
        (n, d) => format!("{n}/{d}"),
    }
}

impl<C: Coeff + fmt::Display> fmt::Display for FracSeries<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (e, c) in self.terms() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if e == 0 {
                write!(f, "{c}")?;
            } else {
                write!(f, "({c})*q^({})", fmt_exponent(e))?;
            }
        }
        if !first {
            write!(f, " + ")?;
        }
        write!(f, "O(q^({}))", fmt_exponent(self.order))
    }
}

impl<C: Coeff> fmt::Debug for FracSeries<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FracSeries")
            .field("lead", &self.lead)
            .field("order", &self.order)
            .field("coeffs", &self.coeffs)
            .finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use num_rational::BigRational;

    type S = FracSeries<BigRational>;

    fn r(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    fn ints(lead: i64, step: i64, cs: &[i64], order: i64) -> S {
        S::from_terms(cs.iter().enumerate().map(|(i, &c)| (lead + step * i as i64, r(c))), order)
    }

    fn geometric(order: i64) -> S {
        S::from_terms((0..).map(qpow).take_while(|&e| e < order).map(|e| (e, r(1))), order)
    }

    #[test]
    fn add_cancels_to_one() {
        let a = ints(0, 24, &[1, -1], 240);
        let b = S::monomial(24, r(1), 240);
        assert_eq!(&a + &b, S::one(240));
    }

    #[test]
    fn zero_is_additive_identity_and_canonical() {
        let a = ints(0, 24, &[1, 240, 2160], 72);
        assert_eq!(&S::zero(72) + &a, a);
        let z = &a - &a;
        assert!(z.is_zero());
        assert_eq!(z.lead(), 0);
        assert_eq!(z, S::zero(72));
    }

    #[test]
    fn order_is_min_of_operands() {
        let a = ints(0, 24, &[1, 2], 100);
        let b = ints(0, 24, &[3], 50);
        assert_eq!((&a + &b).order(), 50);
    }

    #[test]
    fn geometric_series_inverts_one_minus_q() {
        let a = ints(0, 24, &[1, -1], 24 * 30);
        assert_eq!(&a * &geometric(24 * 30), S::one(24 * 30));
        assert_eq!(a.inv().unwrap(), geometric(24 * 30));
    }

    #[test]
    fn leads_add_under_multiplication() {
        let eta_like = ints(1, 24, &[1, -1, -1], 24 * 10);
        let sq = &eta_like * &eta_like;
        assert_eq!(sq.lead(), 2);
    }

    #[test]
    fn negative_lead_order_bookkeeping() {
        // O(q^10)·q^{-1}(1 + ...) is valid through q^9.
        let j_like = ints(-24, 24, &[1, 744, 196884], 24 * 10);
        let e = S::one(24 * 10);
        let p = &j_like * &e;
        assert_eq!(p.order(), (24 * 10 - 24).min(24 * 10));
        let inv = j_like.inv().unwrap();
        assert_eq!(inv.lead(), 24);
        assert_eq!(inv.order(), 24 * 10 + 48);
    }

    #[test]
    fn inverse_of_zero_fails() {
        assert_eq!(S::zero(10).inv(), Err(SeriesError::ZeroSeries));
    }

    #[test]
    fn cube_root_of_perfect_cube() {
        let a = ints(0, 24, &[1, 1], 24 * 20);
        let cube = a.pow(3).unwrap();
        assert_eq!(cube.nth_root(3).unwrap(), a);
    }

    #[test]
    fn root_errors() {
        let a = ints(0, 24, &[2, 1], 240);
        assert_eq!(a.nth_root(2), Err(SeriesError::NonUnitLeading));
        let b = ints(1, 24, &[1, 1], 240);
        assert_eq!(b.nth_root(2), Err(SeriesError::ExponentNotDivisible { lead: 1, n: 2 }));
    }

    #[test]
    fn theta_derivative_scales_by_exponent() {
        let a = S::monomial(1, r(1), 240);
        let d = a.theta_deriv();
        assert_eq!(d.coeff(1), BigRational::new(BigInt::from(1), BigInt::from(24)));
        assert!(S::one(240).theta_deriv().is_zero());
    }

    #[test]
    fn first_mismatch_locates_difference() {
        let a = ints(0, 24, &[1, 2, 3], 240);
        let b = ints(0, 24, &[1, 2, 4], 240);
        assert_eq!(a.first_mismatch(&b), Some(48));
        assert_eq!(a.first_mismatch(&a), None);
    }

    #[test]
    fn float_coefficients_work_too() {
        let a = FracSeries::<f64>::from_coeffs(0, vec![1.0, -1.0], 24 * 4);
        let inv = a.inv().unwrap();
        // inverse is dense on the grid: 1 + x + x^2 + ...
        assert_eq!(inv.coeff(5), 1.0);
    }

    #[test]
    fn display_is_readable() {
        let a = ints(-8, 24, &[1, 248], 40);
        assert_eq!(a.to_string(), "(1)*q^(-1/3) + (248)*q^(2/3) + O(q^(5/3))");
    }
}
