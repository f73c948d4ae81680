//! Named q-expansions (η, Eisenstein series, theta constants, the curve
//! coordinates `u`, `t`) and the exact identities relating them.
//!
//! Every series is in `q = e^{2πiτ}` on the 1/24 grid of [`crate::qseries`].
//! Orders passed to this module are in full q-powers: `order = 72` means the
//! result is exact through `O(q^72)`.

pub mod coefficients;
pub mod hecke;
pub mod identities;

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{Float, FloatConst, FromPrimitive};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::qseries::{qpow, PrefixedSeries, Scalar, GRID};
use crate::QSeries;

pub use hecke::{hecke_t_g, Cyclo12, FormCombo, FormExpr, GAction};
pub use identities::{verify_identity, IdentityId, IdentityReport};

/// Extra precision (grid units) carried while composing builders.
const WORK_PAD: i64 = 10 * GRID;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModformError {
    #[error("order {order} does not reach the leading term of {id}")]
    OrderTooSmall { id: FormId, order: i64 },
    #[error("identity checks need order >= {min}, got {order}")]
    IdentityOrderTooSmall { min: i64, order: i64 },
    #[error("prefactors do not cancel to a rational: {0}")]
    ScalarMismatch(String),
    #[error("no <g>-transformation rule registered for {0} at the requested weight")]
    NoTransformationRule(String),
    #[error("exponents of {0} lie in several residue classes mod 1")]
    MixedResidues(FormId),
    #[error("e8 enumeration: {0}")]
    Enumeration(String),
}

/// Index of a Jacobi theta constant `ϑ_l(0, τ)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ThetaIndex {
    Two,
    Three,
    Four,
}

impl ThetaIndex {
    pub const ALL: [ThetaIndex; 3] = [ThetaIndex::Two, ThetaIndex::Three, ThetaIndex::Four];

    pub fn from_l(l: u8) -> Option<Self> {
        match l {
            2 => Some(Self::Two),
            3 => Some(Self::Three),
            4 => Some(Self::Four),
            _ => None,
        }
    }

    pub fn l(self) -> u8 {
        match self {
            Self::Two => 2,
            Self::Three => 3,
            Self::Four => 4,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum FormId {
    Eta,
    EtaPow(i32),
    E2,
    E4,
    E6,
    /// `Δ = η²⁴`.
    Delta,
    /// `j = E₄³/Δ`.
    LittleJ,
    /// `J = j/1728`.
    Jay,
    /// `u = E₄/(12·2^{2/3}·η⁸)`, the ℘-coordinate of the curve `t² = 4u³ − 1`.
    U,
    /// `t = E₆/(24√3·η¹²)`, the ℘′-coordinate.
    Tt,
    /// `g₂` of the scaled lattice `μ(τ)[1,τ]`: `E₄/(4η⁸)`.
    G2L,
    /// `g₃` of the scaled lattice: `(√3/72)·E₆/η¹²` (equal to `t`).
    G3L,
    ThetaNull(ThetaIndex),
    ThetaNullPow8(ThetaIndex),
    /// Theta series of the E₈ lattice, `1 + 240 Σ σ₃(n) qⁿ`.
    ThetaE8,
    InvEta8,
}

impl FormId {
    /// Leading exponent in grid units.
    pub fn lead_exponent(self) -> i64 {
        match self {
            FormId::Eta => 1,
            FormId::EtaPow(k) => k as i64,
            FormId::Delta => 24,
            FormId::LittleJ | FormId::Jay => -24,
            FormId::U | FormId::G2L | FormId::InvEta8 => -8,
            FormId::Tt | FormId::G3L => -12,
            FormId::ThetaNull(ThetaIndex::Two) => 3,
            FormId::ThetaNullPow8(ThetaIndex::Two) => 24,
            _ => 0,
        }
    }

    /// Twice the weight, when the object has a definite weight.
    pub fn double_weight(self) -> Option<i32> {
        Some(match self {
            FormId::Eta | FormId::ThetaNull(_) => 1,
            FormId::EtaPow(k) => k,
            FormId::E2 => return None,
            FormId::E4 | FormId::ThetaNullPow8(_) | FormId::ThetaE8 => 8,
            FormId::E6 => 12,
            FormId::Delta => 24,
            FormId::InvEta8 => -8,
            FormId::LittleJ | FormId::Jay | FormId::U | FormId::Tt | FormId::G2L | FormId::G3L => 0,
        })
    }
}

impl fmt::Display for FormId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FormId::Eta => write!(f, "eta"),
            FormId::EtaPow(k) => write!(f, "eta^{k}"),
            FormId::E2 => write!(f, "e2"),
            FormId::E4 => write!(f, "e4"),
            FormId::E6 => write!(f, "e6"),
            FormId::Delta => write!(f, "delta"),
            FormId::LittleJ => write!(f, "j"),
            FormId::Jay => write!(f, "jay"),
            FormId::U => write!(f, "u"),
            FormId::Tt => write!(f, "t"),
            FormId::G2L => write!(f, "g2l"),
            FormId::G3L => write!(f, "g3l"),
            FormId::ThetaNull(l) => write!(f, "theta{}", l.l()),
            FormId::ThetaNullPow8(l) => write!(f, "theta{}^8", l.l()),
            FormId::ThetaE8 => write!(f, "theta-e8"),
            FormId::InvEta8 => write!(f, "inv-eta8"),
        }
    }
}

impl FromStr for FormId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let lower = s.to_ascii_lowercase();
        let fixed = match lower.as_str() {
            "eta" => Some(FormId::Eta),
            "e2" => Some(FormId::E2),
            "e4" => Some(FormId::E4),
            "e6" => Some(FormId::E6),
            "delta" => Some(FormId::Delta),
            "j" => Some(FormId::LittleJ),
            "jay" => Some(FormId::Jay),
            "u" => Some(FormId::U),
            "t" => Some(FormId::Tt),
            "g2l" => Some(FormId::G2L),
            "g3l" => Some(FormId::G3L),
            "theta-e8" => Some(FormId::ThetaE8),
            "inv-eta8" => Some(FormId::InvEta8),
            _ => None,
        };
        if let Some(id) = fixed {
            return Ok(id);
        }
        if let Some(k) = lower.strip_prefix("eta^") {
            return k.parse().map(FormId::EtaPow).map_err(|_| format!("bad eta power in {s:?}"));
        }
        if let Some(rest) = lower.strip_prefix("theta") {
            let (l, pow8) = match rest.strip_suffix("^8") {
                Some(l) => (l, true),
                None => (rest, false),
            };
            let idx = l.parse::<u8>().ok().and_then(ThetaIndex::from_l).ok_or_else(|| format!("unknown theta index in {s:?}"))?;
            return Ok(if pow8 { FormId::ThetaNullPow8(idx) } else { FormId::ThetaNull(idx) });
        }
        Err(format!("unknown form id {s:?}"))
    }
}

type Cache = RwLock<HashMap<(FormId, i64), Arc<PrefixedSeries>>>;

fn cache() -> &'static Cache {
    static CACHE: OnceLock<Cache> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// Deterministic q-expansion of `id`, exact through `O(q^order)`.
///
/// Results are memoized per process; the returned value is shared.
pub fn build_form(id: FormId, order: i64) -> Result<Arc<PrefixedSeries>, ModformError> {
    let grid_order = qpow(order);
    if grid_order <= id.lead_exponent() {
        return Err(ModformError::OrderTooSmall { id, order });
    }
    if let Some(hit) = cache().read().expect("form cache poisoned").get(&(id, order)) {
        return Ok(hit.clone());
    }
    let built = Arc::new(build_uncached(id, grid_order));
    let mut guard = cache().write().expect("form cache poisoned");
    Ok(guard.entry((id, order)).or_insert(built).clone())
}

/// Convenience for forms whose prefactor is rational: the bare series.
pub fn form_series(id: FormId, order: i64) -> Result<QSeries, ModformError> {
    let p = build_form(id, order)?;
    p.to_rational_series().ok_or_else(|| ModformError::ScalarMismatch(format!("{id} has prefactor {}", p.scalar)))
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn build_uncached(id: FormId, grid_order: i64) -> PrefixedSeries {
    let w = grid_order + WORK_PAD;
    let built = match id {
        FormId::Eta => PrefixedSeries::plain(eta_series(w)),
        FormId::EtaPow(k) => PrefixedSeries::plain(eta_power(k as i64, w)),
        FormId::E2 => PrefixedSeries::plain(eisenstein(1, -24, w)),
        FormId::E4 => PrefixedSeries::plain(eisenstein(3, 240, w)),
        FormId::E6 => PrefixedSeries::plain(eisenstein(5, -504, w)),
        FormId::Delta => PrefixedSeries::plain(eta_power(24, w)),
        FormId::LittleJ => PrefixedSeries::plain(little_j(w)),
        FormId::Jay => PrefixedSeries::plain(little_j(w).scale(&BigRational::new(1.into(), 1728.into()))),
        FormId::U => PrefixedSeries::new(
            Scalar::new(BigRational::new(1.into(), 12.into()), 0, 0, -2, 0),
            &eisenstein(3, 240, w) * &eta_power(-8, w),
        ),
        FormId::Tt | FormId::G3L => PrefixedSeries::new(
            Scalar::new(BigRational::new(1.into(), 24.into()), 0, -1, 0, 0),
            &eisenstein(5, -504, w) * &eta_power(-12, w),
        ),
        FormId::G2L => PrefixedSeries::new(Scalar::ratio(1, 4), &eisenstein(3, 240, w) * &eta_power(-8, w)),
        FormId::ThetaNull(l) => PrefixedSeries::plain(theta_null(l, w)),
        FormId::ThetaNullPow8(l) => PrefixedSeries::plain(theta_null(l, w).pow(8).expect("nonnegative power")),
        FormId::ThetaE8 => PrefixedSeries::plain(eisenstein(3, 240, w)),
        FormId::InvEta8 => PrefixedSeries::plain(eta_power(-8, w)),
    };
    assert!(built.order() >= grid_order, "working precision too small for {id}");
    PrefixedSeries::new(built.scalar, built.series.truncate(grid_order))
}

/// `η = q^{1/24} Σ_k (-1)^k q^{k(3k-1)/2}` (pentagonal number theorem).
pub fn eta_series(grid_order: i64) -> QSeries {
    let bound = (grid_order - 1 + GRID - 1) / GRID;
    let terms = coefficients::pentagonal_terms(bound.max(1)).into_iter().map(|(e, s)| (1 + qpow(e), rat(s)));
    QSeries::from_terms(terms, grid_order)
}

fn eta_power(k: i64, grid_order: i64) -> QSeries {
    // η^k loses |k|+1 grid units of order on inversion.
    let base = eta_series(grid_order + 2 * k.abs() + 2);
    base.pow(k).expect("eta is invertible").truncate(grid_order)
}

/// `1 + c Σ σ_k(n) qⁿ`.
fn eisenstein(k: u32, c: i64, grid_order: i64) -> QSeries {
    let n_max = (grid_order - 1).div_euclid(GRID);
    let terms = std::iter::once((0, rat(1)))
        .chain((1..=n_max).map(|n| (qpow(n), BigRational::from_integer(coefficients::sigma(k, n as u64) * c))));
    QSeries::from_terms(terms, grid_order)
}

fn little_j(grid_order: i64) -> QSeries {
    let e4 = eisenstein(3, 240, grid_order + 2 * GRID);
    &e4.pow(3).expect("power") * &eta_power(-24, grid_order + 2 * GRID)
}

/// Theta constants in `q = e^{2πiτ}`: `ϑ₃ = Σ q^{n²/2}`, `ϑ₄ = Σ (-1)ⁿ q^{n²/2}`,
/// `ϑ₂ = Σ q^{(2n+1)²/8}`.
pub fn theta_null(l: ThetaIndex, grid_order: i64) -> QSeries {
    let mut terms = Vec::new();
    match l {
        ThetaIndex::Three | ThetaIndex::Four => {
            for n in 0i64.. {
                let e = 12 * n * n;
                if e >= grid_order {
                    break;
                }
                let sign = if l == ThetaIndex::Four && n % 2 == 1 { -1 } else { 1 };
                terms.push((e, rat(if n == 0 { 1 } else { 2 * sign })));
            }
        }
        ThetaIndex::Two => {
            for m in (1i64..).step_by(2) {
                let e = 3 * m * m;
                if e >= grid_order {
                    break;
                }
                terms.push((e, rat(2)));
            }
        }
    }
    QSeries::from_terms(terms, grid_order)
}

/// `e^{2πi k/24}`, stored as `k mod 24`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RootOfUnity(pub u8);

impl RootOfUnity {
    pub fn from_grid_residue(e: i64) -> Self {
        Self(e.rem_euclid(GRID) as u8)
    }

    pub fn to_complex<T: Float + FloatConst + FromPrimitive>(self) -> Complex<T> {
        let angle = T::TAU() * T::from_u8(self.0).unwrap() / T::from_i64(GRID).unwrap();
        Complex::from_polar(T::one(), angle)
    }

    /// Multiplicative order.
    pub fn order(self) -> u8 {
        (GRID as u8) / num_integer::gcd(self.0, GRID as u8)
    }

    /// The same root as a power of `ζ₁₂ = e^{iπ/6}`, when it is one.
    pub fn as_zeta12(self) -> Option<u8> {
        (self.0 % 2 == 0).then_some(self.0 / 2)
    }

    pub fn pow(self, k: i64) -> Self {
        Self::from_grid_residue(self.0 as i64 * k)
    }
}

/// Eigenvalue of `f ↦ f(τ+1)`, read off from the common residue of the
/// exponents of the expansion.
pub fn translate_eigenvalue(id: FormId) -> Result<RootOfUnity, ModformError> {
    let p = build_form(id, 8)?;
    let mut residues = p.series.terms().map(|(e, _)| e.rem_euclid(GRID));
    let first = residues.next().unwrap_or(0);
    if residues.any(|r| r != first) {
        return Err(ModformError::MixedResidues(id));
    }
    Ok(RootOfUnity::from_grid_residue(first))
}

/// Whether every stored coefficient is an integer.
pub fn is_integral(s: &QSeries) -> bool {
    s.coeffs().iter().all(|c| c.is_integer())
}
