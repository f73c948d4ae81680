use etabridge::modforms::{FormId, ThetaIndex};
use etabridge::numeric::{
    hecke_theta_constant, eval_form, g_rule_residual, hecke_theta_residual, l0_lattice, lattice_invariants, roundtrip_check, scaled_lattice,
    wp_eval, NumericError,
};
use etabridge::C64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::RunConfig;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NumericCheck {
    pub name: &'static str,
    pub passed: bool,
    pub max_residual: f64,
    pub tolerance: f64,
    pub points: usize,
    /// A measured constant, when the check has one.
    pub value: Option<[f64; 2]>,
    pub error: Option<String>,
}

fn check(name: &'static str, tolerance: f64, points: usize, r: Result<(f64, Option<[f64; 2]>), NumericError>) -> NumericCheck {
    match r {
        Ok((max_residual, value)) => NumericCheck {
            name,
            passed: max_residual < tolerance,
            max_residual,
            tolerance,
            points,
            value,
            error: None,
        },
        Err(e) => NumericCheck {
            name,
            passed: false,
            max_residual: f64::NAN,
            tolerance,
            points,
            value: None,
            error: Some(e.to_string()),
        },
    }
}

fn sample_taus(rng: &mut ChaCha8Rng, n: usize, im: (f64, f64)) -> Vec<C64> {
    (0..n).map(|_| C64::new(rng.gen_range(-0.5..0.5), rng.gen_range(im.0..im.1))).collect()
}

fn max_of(it: impl IntoIterator<Item = f64>) -> f64 {
    it.into_iter().fold(0.0, |a, b| if b.is_nan() || a.is_nan() { f64::NAN } else { a.max(b) })
}

/// The sampled residual checks, in a fixed order.
pub fn numeric_suite(cfg: &RunConfig) -> Vec<NumericCheck> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let order = cfg.order;
    let mut out = Vec::new();

    let l0 = l0_lattice();
    let zs: Vec<C64> = (0..20).map(|_| l0.omega1 * rng.gen_range(0.02..0.98) + l0.omega2 * rng.gen_range(0.02..0.98)).collect();
    out.push(check(
        "weierstrass-curve",
        1e-8,
        zs.len(),
        zs.iter()
            .map(|&z| wp_eval(z, &l0).map(|(p, dp)| (dp * dp - (p * p * p * 4.0 - 1.0)).norm()))
            .collect::<Result<Vec<_>, _>>()
            .map(|v| (max_of(v), None)),
    ));

    out.push(check(
        "l0-invariants",
        1e-10,
        1,
        lattice_invariants(&l0, 30.0 * l0.max_generator()).map(|e| (e.model.g2.norm().max((e.model.g3 - 1.0).norm()), None)),
    ));

    let lo = cfg.im_floor.max(1.0);
    let taus = sample_taus(&mut rng, 10, (lo, lo + 1.0));
    let reports = taus.iter().map(|&t| roundtrip_check(t, order)).collect::<Result<Vec<_>, _>>();
    out.push(check("roundtrip", 1e-8, taus.len(), reports.clone().map(|rs| (max_of(rs.iter().map(|r| r.r1.max(r.r2))), None))));
    out.push(check(
        "bridge-ratio-constant",
        1e-6,
        taus.len(),
        reports.clone().map(|rs| {
            let ratios: Vec<C64> = rs.iter().map(|r| C64::new(r.bridge_ratio[0], r.bridge_ratio[1])).collect();
            let r0 = ratios[0];
            (max_of(ratios.iter().map(|r| (r - r0).norm() / r0.norm())), Some([r0.re, r0.im]))
        }),
    ));
    let target = -(std::f64::consts::TAU * 2f64.cbrt() / 3f64.sqrt()).powi(6);
    out.push(check(
        "bridge-ratio-sixth-power",
        1e-6,
        taus.len(),
        reports.map(|rs| {
            let v = rs.iter().map(|r| (C64::new(r.bridge_ratio[0], r.bridge_ratio[1]).powi(6) - target).norm() / target.abs());
            (max_of(v), Some([target, 0.0]))
        }),
    ));

    let lo = cfg.im_floor.max(0.8);
    let taus = sample_taus(&mut rng, 5, (lo, lo + 0.8));
    let scaled = taus
        .iter()
        .map(|&tau| {
            let lat = scaled_lattice(tau, order)?;
            let m = lattice_invariants(&lat, 20.0 * lat.max_generator())?.model;
            let g2 = eval_form(FormId::G2L, tau, order)?;
            let g3 = eval_form(FormId::G3L, tau, order)?;
            Ok(((m.g2 - g2).norm().max((m.g3 - g3).norm()), (m.discriminant() - 27.0).norm()))
        })
        .collect::<Result<Vec<_>, NumericError>>();
    out.push(check("scaled-lattice-invariants", 1e-7, taus.len(), scaled.clone().map(|v| (max_of(v.iter().map(|x| x.0)), None))));
    out.push(check("scaled-lattice-discriminant", 1e-6, taus.len(), scaled.map(|v| (max_of(v.iter().map(|x| x.1)), Some([27.0, 0.0])))));

    let taus = sample_taus(&mut rng, 10, (1.0, 1.5));
    out.push(check(
        "hecke-theta-average",
        1e-9,
        taus.len(),
        taus.iter()
            .map(|&t| hecke_theta_residual(t, order).map(|(s, e)| (s - e).norm()))
            .collect::<Result<Vec<_>, _>>()
            .and_then(|v| {
                let k = hecke_theta_constant(taus[0], order)?;
                Ok((max_of(v), Some([k.re, k.im])))
            }),
    ));

    let ids = [
        FormId::U,
        FormId::Tt,
        FormId::E4,
        FormId::E6,
        FormId::EtaPow(8),
        FormId::Delta,
        FormId::ThetaNullPow8(ThetaIndex::Two),
        FormId::ThetaNullPow8(ThetaIndex::Three),
        FormId::ThetaNullPow8(ThetaIndex::Four),
    ];
    let lo = cfg.im_floor.max(0.9);
    let taus = sample_taus(&mut rng, 3, (lo, lo + 0.6));
    out.push(check(
        "g-transformation-rules",
        cfg.tol_numeric,
        taus.len() * ids.len(),
        ids.iter()
            .flat_map(|&id| taus.iter().map(move |&t| g_rule_residual(id, t, order)))
            .collect::<Result<Vec<_>, _>>()
            .map(|v| (max_of(v), None)),
    ));

    out.push(check(
        "s-action-u-t",
        cfg.tol_numeric,
        taus.len(),
        taus.iter()
            .map(|&tau| {
                let s = -C64::new(1.0, 0.0) / tau;
                let (u, us) = (eval_form(FormId::U, tau, order)?, eval_form(FormId::U, s, order)?);
                let (t, ts) = (eval_form(FormId::Tt, tau, order)?, eval_form(FormId::Tt, s, order)?);
                Ok(((us - u).norm() / u.norm()).max((ts + t).norm() / t.norm()))
            })
            .collect::<Result<Vec<_>, NumericError>>()
            .map(|v| (max_of(v), None)),
    ));
    out
}
