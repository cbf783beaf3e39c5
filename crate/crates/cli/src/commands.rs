//! The four commands: trajectory and sweep emit plot-ready tables,
//! periodicity emits fidelity tables, verify emits a JSON cross-check
//! report and drives the process exit code.

use std::f64::consts::PI;
use std::fmt::Write as _;

use anyhow::Result;
use num_complex::Complex64 as C64;
use serde_json::{json, Value};

use mobius_cs::geometry::{sample_trajectory, RadialProfile, StripConfig};
use mobius_cs::states::{ChiRule, CsParams, ScsKind, StateKind};
use mobius_cs::uncertainty::report;
use mobius_cs::verify::{
    closed_vs_direct, eigenvalue_entry, periodicity_report, poisson_check, Quantity,
};

use crate::config::{Format, RunConfig};

const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Full precision: 17 significant decimal digits round-trip any f64.
fn g17(x: f64) -> String {
    format!("{x:.16e}")
}

fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    let span = hi - lo;
    (0..n)
        .map(|i| lo + span * (i as f64 / (n - 1).max(1) as f64))
        .collect()
}

fn chi_label(chi: ChiRule) -> String {
    match chi {
        ChiRule::Fixed(x) => format!("{x}"),
        ChiRule::EqualsPhi => "phi".to_string(),
    }
}

fn state_label(kind: StateKind) -> &'static str {
    match kind {
        StateKind::Cs => "cs",
        StateKind::Scs(ScsKind::OppositeAngle) => "scs-angle",
        StateKind::Scs(ScsKind::OppositeXi) => "scs-xi",
        StateKind::Scs(ScsKind::OppositeXiMinus) => "scs-xi-minus",
    }
}

pub fn trajectory(cfg: &RunConfig) -> Result<String> {
    let points = sample_trajectory(&cfg.strip, cfg.phi_min, cfg.phi_max, cfg.steps)?;
    match cfg.format {
        Format::Csv => {
            let mut out = String::new();
            writeln!(out, "# mobius-cs {VERSION} trajectory")?;
            writeln!(
                out,
                "# profile={} l={} phi=[{},{}] steps={}",
                cfg.strip.profile, cfg.strip.l, cfg.phi_min, cfg.phi_max, cfg.steps
            )?;
            writeln!(out, "phi,x,y,z,r,l_prime")?;
            for p in &points {
                writeln!(
                    out,
                    "{},{},{},{},{},{}",
                    g17(p.phi),
                    g17(p.x),
                    g17(p.y),
                    g17(p.z),
                    g17(p.r),
                    g17(p.l_prime)
                )?;
            }
            Ok(out)
        }
        Format::Json => {
            let rows: Vec<Value> = points
                .iter()
                .map(|p| {
                    json!({
                        "phi": p.phi, "x": p.x, "y": p.y, "z": p.z,
                        "r": p.r, "l_prime": p.l_prime,
                    })
                })
                .collect();
            Ok(serde_json::to_string_pretty(&rows)? + "\n")
        }
    }
}

pub fn sweep(cfg: &RunConfig) -> Result<String> {
    let angles = linspace(cfg.phi_min, cfg.phi_max, cfg.steps);
    let rows: Vec<_> = angles
        .iter()
        .map(|&phi| {
            let lp = cfg.lp_override.unwrap_or_else(|| cfg.strip.l_prime(phi));
            (phi, report(lp, phi, cfg.convention))
        })
        .collect();
    match cfg.format {
        Format::Csv => {
            let mut out = String::new();
            writeln!(out, "# mobius-cs {VERSION} sweep")?;
            writeln!(out, "# convention={}", cfg.convention)?;
            writeln!(
                out,
                "# profile={} l={} lp_override={} tol={}",
                cfg.strip.profile,
                cfg.strip.l,
                cfg.lp_override
                    .map_or_else(|| "none".to_string(), |v| v.to_string()),
                cfg.tol
            )?;
            writeln!(out, "phi,l_prime,d2J,d2phi,sum,heis_lhs,heis_rhs")?;
            for (phi, r) in &rows {
                writeln!(
                    out,
                    "{},{},{},{},{},{},{}",
                    g17(*phi),
                    g17(r.l_prime),
                    g17(r.d2_j),
                    g17(r.d2_phi),
                    g17(r.sum),
                    g17(r.heis_lhs),
                    g17(r.heis_rhs)
                )?;
            }
            Ok(out)
        }
        Format::Json => {
            let rows: Vec<Value> = rows
                .iter()
                .map(|(phi, r)| {
                    json!({
                        "phi": phi, "l_prime": r.l_prime,
                        "d2J": r.d2_j, "d2phi": r.d2_phi, "sum": r.sum,
                        "heis_lhs": r.heis_lhs, "heis_rhs": r.heis_rhs,
                        "convention": cfg.convention.to_string(),
                    })
                })
                .collect();
            Ok(serde_json::to_string_pretty(&rows)? + "\n")
        }
    }
}

pub fn periodicity(cfg: &RunConfig) -> Result<String> {
    let phi0s = linspace(cfg.phi_min, cfg.phi_max, cfg.steps);
    let entries = periodicity_report(&cfg.strip, cfg.state, cfg.chi, &phi0s, &cfg.periods, 1e-18)?;
    match cfg.format {
        Format::Csv => {
            let mut out = String::new();
            writeln!(out, "# mobius-cs {VERSION} periodicity")?;
            writeln!(
                out,
                "# state={} chi={} l={} tol={}",
                state_label(cfg.state),
                chi_label(cfg.chi),
                cfg.strip.l,
                cfg.tol
            )?;
            writeln!(out, "profile,phi0,period,fidelity,pass")?;
            for e in &entries {
                writeln!(
                    out,
                    "{},{},{},{},{}",
                    e.profile,
                    g17(e.phi0),
                    g17(e.period),
                    g17(e.fidelity),
                    e.pass
                )?;
            }
            Ok(out)
        }
        Format::Json => {
            let rows: Vec<Value> = entries
                .iter()
                .map(|e| {
                    json!({
                        "profile": e.profile.to_string(),
                        "phi0": e.phi0, "period": e.period,
                        "fidelity": e.fidelity, "pass": e.pass,
                        "expected": e.expected,
                    })
                })
                .collect();
            Ok(serde_json::to_string_pretty(&rows)? + "\n")
        }
    }
}

fn complex_fields(prefix: &str, z: C64) -> [(String, Value); 2] {
    [
        (format!("{prefix}_re"), json!(z.re)),
        (format!("{prefix}_im"), json!(z.im)),
    ]
}

fn quantity_params(q: &Quantity) -> Value {
    match *q {
        Quantity::Norm { l_prime } => json!({ "l_prime": l_prime }),
        Quantity::Overlap { p1, p2 } => json!({
            "l_prime_1": p1.l_prime, "phi_1": p1.phi,
            "l_prime_2": p2.l_prime, "phi_2": p2.phi,
        }),
        Quantity::ExpectU { l_prime, phi } | Quantity::ExpectU2 { l_prime, phi } => {
            json!({ "l_prime": l_prime, "phi": phi })
        }
        Quantity::ExpectExpJ { l_prime, lambda } => {
            json!({ "l_prime": l_prime, "lambda": lambda })
        }
    }
}

/// Run the full default verification grid. Returns the JSON report and
/// whether every first-principles check passed; literal-reading flags are
/// informational only.
pub fn verify(cfg: &RunConfig) -> Result<(String, bool)> {
    let tol = cfg.tol;
    let mut all_ok = true;

    // Ladder eigenvalue identity.
    let mut eigen_rows = Vec::new();
    for lp in [-1.0, 0.0, 1.0, 2.0] {
        for phi in [0.0, 1.0, PI, 2.0 * PI] {
            let e = eigenvalue_entry(lp, phi, cfg.padding);
            let pass = e.residual <= tol && !e.truncation_warning;
            all_ok &= pass;
            eigen_rows.push(json!({
                "l_prime": e.l_prime,
                "phi": e.phi,
                "residual": e.residual,
                "truncation_warning": e.truncation_warning,
                "pass": pass,
            }));
        }
    }

    // Direct vs resummed lattice sums on the standard grid, plus analytic
    // continuation points away from the sum's zeros.
    let mut poisson_rows = Vec::new();
    let mut betas = Vec::new();
    for i in 0..11 {
        for k in 0..5 {
            betas.push(C64::new(-10.0 + 2.0 * i as f64, -PI + PI / 2.0 * k as f64));
        }
    }
    betas.push(C64::new(2.0 * 0.287682072451781, 0.0));
    betas.push(C64::new(1.3, PI));
    betas.push(C64::new(1.0, 2.0));
    for beta in betas {
        let dev = poisson_check(1.0, beta)?;
        let pass = dev <= tol;
        all_ok &= pass;
        poisson_rows.push(json!({
            "a": 1.0,
            "beta_re": beta.re,
            "beta_im": beta.im,
            "rel_deviation": dev,
            "pass": pass,
        }));
    }

    // Closed forms against the engine.
    let levels = [-0.5, 0.0, 0.69, 1.0, 2.5];
    let angles = [0.0, 1.0, PI];
    let mut quantities = Vec::new();
    for &lp in &levels {
        quantities.push(Quantity::Norm { l_prime: lp });
        for &phi in &angles {
            quantities.push(Quantity::ExpectU { l_prime: lp, phi });
            quantities.push(Quantity::ExpectU2 { l_prime: lp, phi });
        }
        for lambda in [1.0, -1.0] {
            quantities.push(Quantity::ExpectExpJ {
                l_prime: lp,
                lambda,
            });
        }
    }
    // One point deep in the regime where the literal phase moments blow
    // past the unitary bound.
    quantities.push(Quantity::ExpectU {
        l_prime: 4.0,
        phi: 0.0,
    });
    quantities.push(Quantity::ExpectU2 {
        l_prime: 4.0,
        phi: 0.0,
    });
    for pair in levels.windows(2) {
        quantities.push(Quantity::Overlap {
            p1: CsParams::new(pair[0], 0.0)?,
            p2: CsParams::new(pair[1], 0.0)?,
        });
    }
    let mut discrepancy_rows = Vec::new();
    for q in &quantities {
        let e = closed_vs_direct(q);
        let pass = e.rel_dev_normalized <= tol;
        all_ok &= pass;
        let mut flags = Vec::new();
        if e.unitarity_violation {
            flags.push("unitarity-violation");
        }
        if e.paper_unreproduced {
            flags.push("paper-unreproduced");
        }
        let mut row = serde_json::Map::new();
        row.insert("quantity".into(), json!(q.id()));
        row.insert("params".into(), quantity_params(q));
        for (k, v) in complex_fields("engine", e.engine) {
            row.insert(k, v);
        }
        for (k, v) in complex_fields("closed_normalized", e.closed_normalized) {
            row.insert(k, v);
        }
        for (k, v) in complex_fields("closed_paper_literal", e.closed_paper_literal) {
            row.insert(k, v);
        }
        row.insert("rel_dev_normalized".into(), json!(e.rel_dev_normalized));
        row.insert("flags".into(), json!(flags));
        row.insert("pass".into(), json!(pass));
        discrepancy_rows.push(Value::Object(row));
    }

    // Periodicity across profiles, state kinds, and both phase rules.
    let profiles = [
        RadialProfile::constant(0.0).expect("valid radius"),
        RadialProfile::constant(0.3).expect("valid radius"),
        RadialProfile::constant(0.5).expect("valid radius"),
        RadialProfile::constant(0.7).expect("valid radius"),
        RadialProfile::SinSquared,
        RadialProfile::CosSquared,
    ];
    let kinds = [
        StateKind::Cs,
        StateKind::Scs(ScsKind::OppositeAngle),
        StateKind::Scs(ScsKind::OppositeXi),
        StateKind::Scs(ScsKind::OppositeXiMinus),
    ];
    let mut periodicity_rows = Vec::new();
    for profile in profiles {
        let strip = StripConfig::new(cfg.strip.l, profile)?;
        for kind in kinds {
            let rules: &[ChiRule] = match kind {
                StateKind::Cs => &[ChiRule::Fixed(0.0)],
                _ => &[ChiRule::Fixed(0.0), ChiRule::EqualsPhi],
            };
            for &chi in rules {
                // Under the χ = φ rule the opposite-angle pair cancels
                // exactly at φ₀ = π on a cylinder; probe 2.5 instead.
                let phi0s: &[f64] = match chi {
                    ChiRule::EqualsPhi => &[0.0, 1.0, 2.5],
                    ChiRule::Fixed(_) => &[0.0, 1.0, PI],
                };
                let entries =
                    periodicity_report(&strip, kind, chi, phi0s, &[2.0 * PI, 4.0 * PI], 1e-18)?;
                for e in entries {
                    // The measured closure must agree with the
                    // parameter-level prediction in both directions: a 4π
                    // turn always closes, and a 2π closure is exactly the
                    // profile-conspiracy case.
                    let ok = e.pass == e.expected;
                    all_ok &= ok;
                    periodicity_rows.push(json!({
                        "profile": e.profile.to_string(),
                        "kind": state_label(kind),
                        "chi": chi_label(chi),
                        "l": e.l,
                        "phi0": e.phi0,
                        "period": e.period,
                        "fidelity": e.fidelity,
                        "pass": e.pass,
                        "expected": e.expected,
                    }));
                }
            }
        }
    }

    let report = json!({
        "eigenvalue_residuals": eigen_rows,
        "poisson_checks": poisson_rows,
        "discrepancies": discrepancy_rows,
        "periodicity": periodicity_rows,
    });
    Ok((serde_json::to_string_pretty(&report)? + "\n", all_ok))
}
