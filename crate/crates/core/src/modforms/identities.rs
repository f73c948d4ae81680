//! The exact identity suite. Each identity is a pair of rational q-series
//! that must agree coefficient by coefficient through the requested order.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use super::coefficients::{colored_partitions, sigma};
use super::{build_form, form_series, theta_null, FormId, ModformError, ThetaIndex};
use crate::q8lattice::e8_count;
use crate::qseries::{qpow, PrefixedSeries};
use crate::QSeries;

/// Smallest admissible order (in q-powers) for an identity check.
pub const MIN_IDENTITY_ORDER: i64 = 2;

/// Largest shell the enumeration cross-check will visit.
pub const CROSS_CHECK_SHELLS: i64 = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum IdentityId {
    /// `E₄³ − E₆² = 1728 η²⁴`.
    Discriminant,
    /// `ϑ₂⁸ + ϑ₃⁸ + ϑ₄⁸ = 2 Θ_{E₈}`.
    E8Sum,
    /// `ϑ₂⁴ + ϑ₄⁴ = ϑ₃⁴`.
    JacobiQuartic,
    /// `θ_q E₄ = (E₂E₄ − E₆)/3`.
    Ramanujan4,
    /// `η⁸ · θ_q(E₄/η⁸) = −E₆/3`.
    XiBridge,
    /// `Σ_{m≤n} r_{E₈}(m) p₈(n−m) = [q^{n−1/3}] E₄/η⁸`.
    P8Convolution,
    /// `4u³ − t² = 1`.
    CurveE,
    /// Shell counts of the E₈ lattice against `240 σ₃`.
    ThetaE8CrossCheck,
}

impl IdentityId {
    pub const ALL: [IdentityId; 8] = [
        IdentityId::Discriminant,
        IdentityId::E8Sum,
        IdentityId::JacobiQuartic,
        IdentityId::Ramanujan4,
        IdentityId::XiBridge,
        IdentityId::P8Convolution,
        IdentityId::CurveE,
        IdentityId::ThetaE8CrossCheck,
    ];

    /// The six identities of the standard exact suite, in report order.
    pub const EXACT_SUITE: [IdentityId; 6] = [
        IdentityId::Discriminant,
        IdentityId::E8Sum,
        IdentityId::CurveE,
        IdentityId::Ramanujan4,
        IdentityId::XiBridge,
        IdentityId::P8Convolution,
    ];

    pub fn name(self) -> &'static str {
        match self {
            IdentityId::Discriminant => "discriminant",
            IdentityId::E8Sum => "e8-sum",
            IdentityId::JacobiQuartic => "jacobi-quartic",
            IdentityId::Ramanujan4 => "ramanujan4",
            IdentityId::XiBridge => "xi-bridge",
            IdentityId::P8Convolution => "p8-convolution",
            IdentityId::CurveE => "curve-e",
            IdentityId::ThetaE8CrossCheck => "theta-e8-cross-check",
        }
    }
}

impl fmt::Display for IdentityId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for IdentityId {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        IdentityId::ALL.into_iter().find(|id| id.name() == s).ok_or_else(|| format!("unknown identity {s:?}"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IdentityReport {
    /// Both sides agree below `checked_order` (grid units).
    Pass { checked_order: i64 },
    Mismatch { exponent: i64, lhs: BigRational, rhs: BigRational },
}

impl IdentityReport {
    pub fn passed(&self) -> bool {
        matches!(self, IdentityReport::Pass { .. })
    }
}

/// Compares two series below `order` (grid units).
pub fn compare_sides(lhs: &QSeries, rhs: &QSeries, order: i64) -> IdentityReport {
    let (l, r) = (lhs.truncate(order), rhs.truncate(order));
    let checked_order = l.order().min(r.order());
    match l.first_mismatch(&r) {
        None => IdentityReport::Pass { checked_order },
        Some(e) => IdentityReport::Mismatch { exponent: e, lhs: l.coeff(e), rhs: r.coeff(e) },
    }
}

fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn collapse(p: &PrefixedSeries, what: &str) -> Result<QSeries, ModformError> {
    p.to_rational_series().ok_or_else(|| ModformError::ScalarMismatch(format!("{what}: prefactor {}", p.scalar)))
}

/// Grid order through which `id` is compared when asked for `order` q-powers.
pub fn comparison_order(id: IdentityId, order: i64) -> i64 {
    match id {
        // n ≤ order, at exponents n − 1/3
        IdentityId::P8Convolution => qpow(order) + 16,
        IdentityId::ThetaE8CrossCheck => qpow(order.min(CROSS_CHECK_SHELLS) + 1),
        _ => qpow(order),
    }
}

/// Both sides of `id`, each exact at least through [`comparison_order`].
pub fn identity_sides(id: IdentityId, order: i64) -> Result<(QSeries, QSeries), ModformError> {
    if order < MIN_IDENTITY_ORDER {
        return Err(ModformError::IdentityOrderTooSmall { min: MIN_IDENTITY_ORDER, order });
    }
    let pad = order + 2;
    let f = |id| form_series(id, pad);
    let sides = match id {
        IdentityId::Discriminant => {
            let lhs = &f(FormId::E4)?.pow(3).expect("power") - &f(FormId::E6)?.pow(2).expect("power");
            (lhs, f(FormId::Delta)?.scale(&int(1728)))
        }
        IdentityId::E8Sum => {
            let sum = ThetaIndex::ALL.into_iter().map(|l| f(FormId::ThetaNullPow8(l))).collect::<Result<Vec<_>, _>>()?;
            let lhs = sum.into_iter().reduce(|a, b| &a + &b).expect("three terms");
            (lhs, f(FormId::ThetaE8)?.scale(&int(2)))
        }
        IdentityId::JacobiQuartic => {
            let w = qpow(pad);
            let p4 = |l| theta_null(l, w).pow(4).expect("power");
            (&p4(ThetaIndex::Two) + &p4(ThetaIndex::Four), p4(ThetaIndex::Three))
        }
        IdentityId::Ramanujan4 => {
            let e4 = f(FormId::E4)?;
            let rhs = (&(&f(FormId::E2)? * &e4) - &f(FormId::E6)?).scale(&BigRational::new(1.into(), 3.into()));
            (e4.theta_deriv(), rhs)
        }
        IdentityId::XiBridge => {
            let ratio = &f(FormId::E4)? * &f(FormId::InvEta8)?;
            let lhs = &f(FormId::EtaPow(8))? * &ratio.theta_deriv();
            (lhs, f(FormId::E6)?.scale(&BigRational::new((-1).into(), 3.into())))
        }
        IdentityId::P8Convolution => {
            let n_max = order as usize;
            let p8 = colored_partitions(8, n_max + 1);
            let r: Vec<BigInt> = (0..=n_max as u64).map(|m| if m == 0 { BigInt::from(1) } else { sigma(3, m) * 240 }).collect();
            let terms = (0..=n_max).map(|n| {
                let c: BigInt = (0..=n).map(|m| &r[m] * &p8[n - m]).sum();
                (qpow(n as i64) - 8, BigRational::from_integer(c))
            });
            let lhs = QSeries::from_terms(terms, qpow(order) + 16);
            let u = build_form(FormId::U, pad)?;
            (lhs, u.series.clone())
        }
        IdentityId::CurveE => {
            let u = build_form(FormId::U, pad)?;
            let t = build_form(FormId::Tt, pad)?;
            let u3 = collapse(&u.pow(3).expect("power"), "u^3")?;
            let t2 = collapse(&t.pow(2).expect("power"), "t^2")?;
            let lhs = &u3.scale(&int(4)) - &t2;
            (lhs, QSeries::one(qpow(pad)))
        }
        IdentityId::ThetaE8CrossCheck => {
            let m_max = order.min(CROSS_CHECK_SHELLS);
            let counts = e8_count(m_max).map_err(|e| ModformError::Enumeration(e.to_string()))?;
            let terms = counts.into_iter().enumerate().map(|(m, c)| (qpow(m as i64), BigRational::from_integer(c.into())));
            (QSeries::from_terms(terms, qpow(m_max + 1)), f(FormId::ThetaE8)?)
        }
    };
    Ok(sides)
}

/// Checks `id` exactly through `order` q-powers.
pub fn verify_identity(id: IdentityId, order: i64) -> Result<IdentityReport, ModformError> {
    let (lhs, rhs) = identity_sides(id, order)?;
    let target = comparison_order(id, order);
    let report = compare_sides(&lhs, &rhs, target);
    if let IdentityReport::Pass { checked_order } = report {
        assert!(checked_order >= target, "{id}: sides lost precision ({checked_order} < {target})");
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_identity_holds_at_small_order() {
        for id in IdentityId::ALL {
            let report = verify_identity(id, 12).unwrap();
            assert!(report.passed(), "{id}: {report:?}");
        }
    }

    #[test]
    fn injected_fault_is_located() {
        let order = 20;
        let (_, rhs) = identity_sides(IdentityId::E8Sum, order).unwrap();
        let mut theta3 = form_series(FormId::ThetaNullPow8(ThetaIndex::Three), order + 2).unwrap();
        theta3 = &theta3 + &QSeries::monomial(24 * 7, int(1), theta3.order());
        let others: QSeries = [ThetaIndex::Two, ThetaIndex::Four]
            .into_iter()
            .map(|l| form_series(FormId::ThetaNullPow8(l), order + 2).unwrap())
            .fold(theta3, |a, b| &a + &b);
        match compare_sides(&others, &rhs, qpow(order)) {
            IdentityReport::Mismatch { exponent, lhs, rhs: r } => {
                assert_eq!(exponent, 24 * 7);
                assert_eq!(&lhs - &r, int(1));
            }
            other => panic!("expected mismatch, got {other:?}"),
        }
    }

    #[test]
    fn order_precondition() {
        assert!(matches!(verify_identity(IdentityId::CurveE, 1), Err(ModformError::IdentityOrderTooSmall { .. })));
        assert!(verify_identity(IdentityId::CurveE, 2).unwrap().passed());
    }

    #[test]
    fn wrong_branch_is_a_scalar_mismatch() {
        let u = build_form(FormId::U, 6).unwrap();
        assert!(collapse(&u, "u").is_err());
        assert!(collapse(&u.pow(3).unwrap(), "u^3").is_ok());
    }

    #[test]
    fn comparison_covers_all_convolution_indices() {
        let (lhs, _) = identity_sides(IdentityId::P8Convolution, 5).unwrap();
        assert_eq!(lhs.terms().count(), 6);
        assert!(lhs.terms().all(|(e, _)| e < comparison_order(IdentityId::P8Convolution, 5)));
        // 1, 8+240, ...
        assert_eq!(lhs.coeff(-8), int(1));
        assert_eq!(lhs.coeff(16), int(248));
    }

    #[test]
    fn identity_names_round_trip() {
        for id in IdentityId::ALL {
            assert_eq!(id.name().parse::<IdentityId>().unwrap(), id);
        }
    }
}
