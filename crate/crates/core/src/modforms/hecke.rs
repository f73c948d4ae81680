//! The three-term average `T_{⟨g⟩,k} f = Σ_{r=1}^{3} j_{g^r}^{-k} f(g^r τ)`
//! over the order-3 element `g = ST`, evaluated from a static table of
//! transformation rules.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul};

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{Float, FloatConst, FromPrimitive, One, ToPrimitive, Zero};

use super::{build_form, FormId, ModformError, RootOfUnity, ThetaIndex};
use crate::qseries::Scalar;
use crate::QSeries;

/// Element of `ℚ(ζ₁₂)`, stored as `a₀ + a₁ζ + a₂ζ² + a₃ζ³` with `ζ⁴ = ζ² − 1`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Cyclo12(pub [BigRational; 4]);

impl Cyclo12 {
    pub fn zero() -> Self {
        Self(std::array::from_fn(|_| BigRational::zero()))
    }

    pub fn rational(r: BigRational) -> Self {
        let mut c = Self::zero();
        c.0[0] = r;
        c
    }

    pub fn integer(n: i64) -> Self {
        Self::rational(BigRational::from_integer(BigInt::from(n)))
    }

    /// `ζ₁₂^d`.
    pub fn zeta(d: i64) -> Self {
        let mut c = Self::integer(1);
        for _ in 0..d.rem_euclid(12) {
            c = c.times_zeta();
        }
        c
    }

    pub fn from_root(r: RootOfUnity) -> Option<Self> {
        r.as_zeta12().map(|d| Self::zeta(d as i64))
    }

    fn times_zeta(&self) -> Self {
        let [a0, a1, a2, a3] = &self.0;
        Self([-a3.clone(), a0.clone(), a1 + a3, a2.clone()])
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn as_rational(&self) -> Option<BigRational> {
        self.0[1..].iter().all(Zero::is_zero).then(|| self.0[0].clone())
    }

    pub fn to_complex<T: Float + FloatConst + FromPrimitive>(&self) -> Complex<T> {
        let z = RootOfUnity(2).to_complex::<T>();
        let mut acc = Complex::new(T::zero(), T::zero());
        let mut p = Complex::new(T::one(), T::zero());
        for a in &self.0 {
            acc = acc + p * T::from_f64(a.to_f64().unwrap_or(f64::NAN)).unwrap();
            p = p * z;
        }
        acc
    }
}

impl Add for &Cyclo12 {
    type Output = Cyclo12;
    fn add(self, rhs: &Cyclo12) -> Cyclo12 {
        Cyclo12(std::array::from_fn(|i| &self.0[i] + &rhs.0[i]))
    }
}

impl Mul for &Cyclo12 {
    type Output = Cyclo12;
    fn mul(self, rhs: &Cyclo12) -> Cyclo12 {
        let mut acc = Cyclo12::zero();
        let mut shifted = rhs.clone();
        for a in &self.0 {
            let term = Cyclo12(std::array::from_fn(|i| a * &shifted.0[i]));
            acc = &acc + &term;
            shifted = shifted.times_zeta();
        }
        acc
    }
}

impl fmt::Display for Cyclo12 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .0
            .iter()
            .enumerate()
            .filter(|(_, a)| !a.is_zero())
            .map(|(i, a)| match i {
                0 => format!("{a}"),
                1 => format!("({a})*z12"),
                _ => format!("({a})*z12^{i}"),
            })
            .collect();
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

/// Monomial in the named forms; factors are kept sorted.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct FormExpr(BTreeMap<FormId, u32>);

impl FormExpr {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn single(id: FormId) -> Self {
        Self::one().times(id, 1)
    }

    pub fn times(mut self, id: FormId, k: u32) -> Self {
        if k > 0 {
            *self.0.entry(id).or_insert(0) += k;
        }
        self
    }

    pub fn product(&self, other: &Self) -> Self {
        other.0.iter().fold(self.clone(), |acc, (&id, &k)| acc.times(id, k))
    }

    pub fn factors(&self) -> impl Iterator<Item = (FormId, u32)> + '_ {
        self.0.iter().map(|(&id, &k)| (id, k))
    }

    /// Twice the total weight, if every factor has one.
    pub fn double_weight(&self) -> Option<i32> {
        self.factors().map(|(id, k)| id.double_weight().map(|w| w * k as i32)).sum()
    }

    /// Exact q-expansion of the product through `order` q-powers.
    pub fn expand(&self, order: i64) -> Result<crate::qseries::PrefixedSeries, ModformError> {
        let pad = order + 2 + self.0.values().map(|&k| k as i64).sum::<i64>();
        let mut acc = crate::qseries::PrefixedSeries::plain(QSeries::one(crate::qseries::qpow(pad)));
        for (id, k) in self.factors() {
            let f = build_form(id, pad)?;
            acc = acc.mul(&f.pow(k as i64).expect("nonnegative power"));
        }
        let target = crate::qseries::qpow(order);
        Ok(crate::qseries::PrefixedSeries::new(acc.scalar.clone(), acc.series.truncate(target)))
    }
}

impl fmt::Display for FormExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        let parts: Vec<String> = self
            .factors()
            .map(|(id, k)| if k == 1 { id.to_string() } else { format!("({id})^{k}") })
            .collect();
        f.write_str(&parts.join("*"))
    }
}

/// Finite linear combination `Σ c_i · expr_i` with `ℚ(ζ₁₂)` coefficients.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct FormCombo(BTreeMap<FormExpr, Cyclo12>);

impl FormCombo {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn term(c: Cyclo12, e: FormExpr) -> Self {
        let mut s = Self::zero();
        s.add_term(c, e);
        s
    }

    pub fn add_term(&mut self, c: Cyclo12, e: FormExpr) {
        let slot = self.0.entry(e.clone()).or_insert_with(Cyclo12::zero);
        *slot = &*slot + &c;
        if slot.is_zero() {
            self.0.remove(&e);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&FormExpr, &Cyclo12)> {
        self.0.iter()
    }

    pub fn coefficient(&self, e: &FormExpr) -> Cyclo12 {
        self.0.get(e).cloned().unwrap_or_else(Cyclo12::zero)
    }

    pub fn scaled(&self, c: &Cyclo12) -> Self {
        let mut out = Self::zero();
        for (e, a) in self.terms() {
            out.add_term(a * c, e.clone());
        }
        out
    }

    pub fn multiply_expr(&self, e: &FormExpr) -> Self {
        let mut out = Self::zero();
        for (f, a) in self.terms() {
            out.add_term(a.clone(), f.product(e));
        }
        out
    }

    /// Exact series of the combination, when every coefficient and every
    /// prefactor is rational.
    pub fn to_series(&self, order: i64) -> Result<QSeries, ModformError> {
        let mut acc = QSeries::zero(crate::qseries::qpow(order));
        for (e, c) in self.terms() {
            let c = c.as_rational().ok_or_else(|| ModformError::ScalarMismatch(format!("coefficient {c}")))?;
            let p = e.expand(order)?;
            let r = (&Scalar::rational(c) * &p.scalar)
                .as_rational()
                .ok_or_else(|| ModformError::ScalarMismatch(format!("{e}: prefactor {}", p.scalar)))?;
            acc = &acc + &p.series.scale(&r);
        }
        Ok(acc)
    }
}

impl fmt::Display for FormCombo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self.terms().map(|(e, c)| format!("[{c}]*{e}")).collect();
        f.write_str(&parts.join(" + "))
    }
}

/// How a form transforms under the weight-`k` slash action of `g = ST`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GAction {
    /// `f|g = λ f`.
    Eigen(RootOfUnity),
    /// `ϑ_l⁸|g = ϑ_{π(l)}⁸` with `π = (3 4 2)`.
    ThetaPermutation,
}

/// `ϑ_l⁸(gτ) (τ+1)^{-4}`: the S-swap `ϑ₂ ↔ ϑ₄` followed by the T-swap `ϑ₃ ↔ ϑ₄`.
pub fn theta_g_image(l: ThetaIndex) -> ThetaIndex {
    match l {
        ThetaIndex::Three => ThetaIndex::Four,
        ThetaIndex::Four => ThetaIndex::Two,
        ThetaIndex::Two => ThetaIndex::Three,
    }
}

/// The registered transformation rule of a single form, if any.
pub fn g_rule(id: FormId) -> Option<GAction> {
    let rho = |p: i64| Some(GAction::Eigen(RootOfUnity::from_grid_residue(8 * p)));
    match id {
        FormId::E4 | FormId::E6 | FormId::ThetaE8 | FormId::Delta | FormId::LittleJ | FormId::Jay => rho(0),
        FormId::Tt | FormId::G3L => rho(0),
        FormId::U | FormId::G2L | FormId::InvEta8 => rho(2),
        FormId::EtaPow(k) if k % 8 == 0 => rho((k / 8) as i64),
        FormId::ThetaNullPow8(_) => Some(GAction::ThetaPermutation),
        _ => None,
    }
}

/// `expr|g`: the image monomial and its multiplier.
fn slash_g(expr: &FormExpr) -> Result<(RootOfUnity, FormExpr), ModformError> {
    let mut lambda = RootOfUnity(0);
    let mut image = FormExpr::one();
    for (id, k) in expr.factors() {
        match g_rule(id).ok_or_else(|| ModformError::NoTransformationRule(id.to_string()))? {
            GAction::Eigen(l) => {
                lambda = RootOfUnity::from_grid_residue(lambda.0 as i64 + l.pow(k as i64).0 as i64);
                image = image.times(id, k);
            }
            GAction::ThetaPermutation => {
                let FormId::ThetaNullPow8(l) = id else { unreachable!() };
                image = image.times(FormId::ThetaNullPow8(theta_g_image(l)), k);
            }
        }
    }
    Ok((lambda, image))
}

/// `T_{⟨g⟩,k}` applied to a monomial of weight `weight`.
pub fn hecke_t_g(expr: &FormExpr, weight: i32) -> Result<FormCombo, ModformError> {
    if expr.double_weight() != Some(2 * weight) {
        return Err(ModformError::NoTransformationRule(format!("{expr} at weight {weight}")));
    }
    let mut out = FormCombo::zero();
    let mut current = expr.clone();
    let mut mult = RootOfUnity(0);
    for _ in 0..3 {
        let (l, next) = slash_g(&current)?;
        mult = RootOfUnity::from_grid_residue(mult.0 as i64 + l.0 as i64);
        let c = Cyclo12::from_root(mult)
            .ok_or_else(|| ModformError::NoTransformationRule(format!("{expr}: multiplier outside Q(zeta12)")))?;
        out.add_term(c, next.clone());
        current = next;
    }
    Ok(out)
}

/// Linear extension of [`hecke_t_g`].
pub fn hecke_t_g_combo(combo: &FormCombo, weight: i32) -> Result<FormCombo, ModformError> {
    let mut out = FormCombo::zero();
    for (e, c) in combo.terms() {
        for (f, a) in hecke_t_g(e, weight)?.terms() {
            out.add_term(a * c, f.clone());
        }
    }
    Ok(out)
}

impl One for Cyclo12 {
    fn one() -> Self {
        Self::integer(1)
    }
}

impl Mul for Cyclo12 {
    type Output = Cyclo12;
    fn mul(self, rhs: Cyclo12) -> Cyclo12 {
        &self * &rhs
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn e(id: FormId) -> FormExpr {
        FormExpr::single(id)
    }

    #[test]
    fn cyclotomic_arithmetic() {
        assert_eq!(Cyclo12::zeta(6), Cyclo12::integer(-1));
        assert_eq!(Cyclo12::zeta(12), Cyclo12::integer(1));
        let rho = Cyclo12::zeta(4);
        let s = &(&Cyclo12::integer(1) + &rho) + &(&rho * &rho);
        assert!(s.is_zero());
        let z = Cyclo12::zeta(5).to_complex::<f64>();
        assert!((z - Complex::from_polar(1.0, 5.0 * std::f64::consts::PI / 6.0)).norm() < 1e-14);
    }

    #[test]
    fn table_results() {
        assert!(hecke_t_g(&e(FormId::U), 0).unwrap().is_zero());
        assert_eq!(hecke_t_g(&e(FormId::Tt), 0).unwrap(), FormCombo::term(Cyclo12::integer(3), e(FormId::Tt)));
        assert!(hecke_t_g(&e(FormId::EtaPow(8)), 4).unwrap().is_zero());
        let th = hecke_t_g(&e(FormId::ThetaNullPow8(ThetaIndex::Three)), 4).unwrap();
        for l in ThetaIndex::ALL {
            assert_eq!(th.coefficient(&e(FormId::ThetaNullPow8(l))), Cyclo12::integer(1));
        }
        let uq = e(FormId::U).times(FormId::EtaPow(8), 1);
        assert_eq!(hecke_t_g(&uq, 4).unwrap(), FormCombo::term(Cyclo12::integer(3), uq));
    }

    #[test]
    fn theta_average_is_twice_e8() {
        let th = hecke_t_g(&e(FormId::ThetaNullPow8(ThetaIndex::Three)), 4).unwrap();
        let lhs = th.to_series(30).unwrap();
        let rhs = crate::modforms::form_series(FormId::ThetaE8, 30).unwrap().scale(&BigRational::from_integer(2.into()));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn missing_rules() {
        assert!(matches!(hecke_t_g(&e(FormId::E2), 1), Err(ModformError::NoTransformationRule(_))));
        assert!(matches!(hecke_t_g(&e(FormId::Eta), 0), Err(ModformError::NoTransformationRule(_))));
        assert!(matches!(hecke_t_g(&e(FormId::U), 4), Err(ModformError::NoTransformationRule(_))));
    }

    fn weight_zero() -> impl Strategy<Value = FormExpr> {
        proptest::collection::vec((prop::sample::select(vec![FormId::U, FormId::Tt, FormId::Jay]), 0u32..3), 0..3)
            .prop_map(|fs| fs.into_iter().fold(FormExpr::one(), |acc, (id, k)| acc.times(id, k)))
    }

    fn gamma_form() -> impl Strategy<Value = (FormExpr, i32)> {
        prop::sample::select(vec![
            (e(FormId::E4), 4),
            (e(FormId::E6), 6),
            (e(FormId::ThetaE8), 4),
            (e(FormId::Delta), 12),
            (e(FormId::E4).times(FormId::E6, 1), 10),
        ])
    }

    proptest! {
        // T_k(f φ) = φ T_0(f) for Γ-forms φ of weight k
        #[test]
        fn gamma_forms_factor_out((phi, k) in gamma_form(), f in weight_zero()) {
            let lhs = hecke_t_g(&f.product(&phi), k).unwrap();
            let rhs = hecke_t_g(&f, 0).unwrap().multiply_expr(&phi);
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn linear_over_cyclotomic_coefficients(a in 0i64..12, b in 0i64..12, f in weight_zero(), g in weight_zero()) {
            let mut combo = FormCombo::term(Cyclo12::zeta(a), f.clone());
            combo.add_term(Cyclo12::zeta(b), g.clone());
            let lhs = hecke_t_g_combo(&combo, 0).unwrap();
            let mut rhs = hecke_t_g(&f, 0).unwrap().scaled(&Cyclo12::zeta(a));
            for (e, c) in hecke_t_g(&g, 0).unwrap().scaled(&Cyclo12::zeta(b)).terms() {
                rhs.add_term(c.clone(), e.clone());
            }
            prop_assert_eq!(lhs, rhs);
        }
    }
}
