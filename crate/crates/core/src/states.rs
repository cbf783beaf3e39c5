//! Coherent states and their two-branch superpositions.
//!
//! The coherent state at effective level `l′` and angle `φ` is the
//! eigenstate of the ladder `X = e^{i(φ̂ + iĴ)}` with eigenvalue
//! `ξ = e^{−l′ + iφ}`, realized on the integer basis as
//!
//! ```text
//! |l′, φ⟩ = Σ_j e^{(l′ − iφ)j} e^{−j²/2} |j⟩ .
//! ```
//!
//! Superpositions come in three kinds: opposite angles
//! `|l′, φ⟩ + e^{−iχ} |l′, −φ⟩`, and opposite eigenvalues
//! `|ξ⟩ ± e^{iχ} |−ξ⟩`, where `|−ξ⟩` is the state at the same level and
//! angle `φ + π` (the unique basis realization of negating `ξ`).
//! Superpositions are kept unnormalized; fidelity and moments normalize
//! internally, so reported overlaps never silently change meaning.

use num_complex::Complex64 as C64;
// Inherent f64 methods shadow the trait when std is linked (tests).
#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};
use crate::fock::{inner_product, FockState};
use crate::geometry::StripConfig;
use crate::latticesum::{gauss_sum_direct, GaussSumSpec, DEFAULT_EPSILON};

/// Default relative tail mass allowed outside a built window.
pub const DEFAULT_EPSILON_TAIL: f64 = 1e-18;

/// Fidelity at or above which two states are reported as the same ray.
pub const SAME_STATE_FIDELITY: f64 = 1.0 - 1e-12;

/// Parameters of a single coherent state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CsParams {
    pub l_prime: f64,
    pub phi: f64,
    pub epsilon_tail: f64,
}

impl CsParams {
    pub fn new(l_prime: f64, phi: f64) -> Result<Self> {
        Self::with_tail(l_prime, phi, DEFAULT_EPSILON_TAIL)
    }

    pub fn with_tail(l_prime: f64, phi: f64, epsilon_tail: f64) -> Result<Self> {
        if !l_prime.is_finite() {
            return Err(Error::NonFinite("l_prime"));
        }
        if !phi.is_finite() {
            return Err(Error::NonFinite("phi"));
        }
        if !epsilon_tail.is_finite() || epsilon_tail <= 0.0 || epsilon_tail > 1e-6 {
            return Err(Error::TailTargetOutOfRange(epsilon_tail));
        }
        Ok(CsParams {
            l_prime,
            phi,
            epsilon_tail,
        })
    }

    /// Ladder eigenvalue `ξ = e^{−l′ + iφ}`.
    pub fn xi(&self) -> C64 {
        C64::from_polar((-self.l_prime).exp(), self.phi)
    }
}

/// Superposition kind.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScsKind {
    /// `|l′, φ⟩ + e^{−iχ} |l′, −φ⟩`
    OppositeAngle,
    /// `|ξ⟩ + e^{iχ} |−ξ⟩`
    OppositeXi,
    /// `|ξ⟩ − e^{iχ} |−ξ⟩`
    OppositeXiMinus,
}

/// Superposition of two coherent-state branches with relative phase `χ`.
///
/// The branch phase is called `χ` throughout: `φ` is reserved for the
/// strip angle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScsSpec {
    pub kind: ScsKind,
    pub base: CsParams,
    pub chi: f64,
}

impl ScsSpec {
    pub fn new(kind: ScsKind, base: CsParams, chi: f64) -> Result<Self> {
        if !chi.is_finite() {
            return Err(Error::NonFinite("chi"));
        }
        Ok(ScsSpec { kind, base, chi })
    }
}

/// Window half-width sufficient for a relative Gaussian tail below `eps`,
/// with margin for a couple of index shifts.
fn half_width(eps: f64) -> i64 {
    ((1.0 / eps).ln().sqrt().floor() as i64 + 2).max(3)
}

/// Build a coherent state on its default window.
pub fn build_cs(p: &CsParams) -> FockState {
    build_cs_with_half_width(p, half_width(p.epsilon_tail))
}

/// Build a coherent state on an explicit window `[floor(l′) − hw,
/// ceil(l′) + hw]`. Narrow windows yield honest (large) tail bounds.
pub fn build_cs_with_half_width(p: &CsParams, hw: i64) -> FockState {
    let lp = p.l_prime;
    let j_lo = lp.floor() as i64 - hw;
    let j_hi = lp.ceil() as i64 + hw;
    let amps = (j_lo..=j_hi)
        .map(|j| {
            let jf = j as f64;
            // c_j = e^{(l′ − iφ)j − j²/2}
            C64::new(lp * jf - jf * jf / 2.0, -p.phi * jf).exp()
        })
        .collect();
    let tail = crate::fock::envelope_tail(lp, j_lo, j_hi);
    FockState::from_parts(j_lo, amps, tail, Some(lp))
}

/// Closed-form squared norm `⟨ξ|ξ⟩ = S(1, 2l′)`.
pub fn norm_closed(l_prime: f64) -> f64 {
    let spec = GaussSumSpec::new(1.0, C64::new(2.0 * l_prime, 0.0), DEFAULT_EPSILON)
        .expect("fixed parameters are valid");
    gauss_sum_direct(&spec).value().re
}

/// Closed-form overlap `⟨ξ₁|ξ₂⟩ = Σ_j e^{(l′₁+l′₂)j} e^{i(φ₁−φ₂)j} e^{−j²}
/// = S(1, l′₁ + l′₂ + i(φ₁ − φ₂))`.
///
/// The relative angle enters per index, as forced by the coefficient map;
/// an overall 4π shift of either angle therefore drops out exactly.
pub fn overlap_closed(p1: &CsParams, p2: &CsParams) -> C64 {
    let beta = C64::new(p1.l_prime + p2.l_prime, p1.phi - p2.phi);
    let spec = GaussSumSpec::new(1.0, beta, DEFAULT_EPSILON).expect("fixed parameters are valid");
    gauss_sum_direct(&spec).value()
}

/// `|⟨a|b⟩|² / (‖a‖² ‖b‖²)`. Fails on a zero state.
pub fn fidelity(a: &FockState, b: &FockState) -> Result<f64> {
    if a.is_zero() || b.is_zero() {
        return Err(Error::ZeroState);
    }
    Ok(inner_product(a, b).norm_sqr() / (a.norm_sqr() * b.norm_sqr()))
}

/// Build a superposition, unnormalized. Exact cancellation yields the
/// flagged zero state.
pub fn build_scs(spec: &ScsSpec) -> FockState {
    let base = spec.base;
    match spec.kind {
        ScsKind::OppositeAngle => {
            let a = build_cs(&base);
            let mirrored = CsParams {
                phi: -base.phi,
                ..base
            };
            let b = build_cs(&mirrored);
            a.superpose(&b, C64::from_polar(1.0, -spec.chi))
        }
        ScsKind::OppositeXi | ScsKind::OppositeXiMinus => {
            let a = build_cs(&base);
            let negated = CsParams {
                phi: base.phi + core::f64::consts::PI,
                ..base
            };
            let b = build_cs(&negated);
            let sign = if spec.kind == ScsKind::OppositeXi {
                1.0
            } else {
                -1.0
            };
            a.superpose(&b, C64::from_polar(1.0, spec.chi) * sign)
        }
    }
}

/// Split a state into its even-`j` and odd-`j` components.
///
/// The two parts partition the window, so their squared norms add up to
/// the original one exactly.
pub fn parity_split(state: &FockState) -> (FockState, FockState) {
    let j_lo = state.j_lo();
    let keep = |parity: i64| -> FockState {
        let amps = state
            .iter()
            .map(|(j, a)| {
                if j.rem_euclid(2) == parity {
                    a
                } else {
                    C64::new(0.0, 0.0)
                }
            })
            .collect();
        let mut part = FockState::from_parts(j_lo, amps, 0.0, None);
        if state.tail_bound() > 0.0 {
            // The discarded-parity mass outside the window still bounds the
            // kept-parity mass; rescale to the part's own norm.
            let n_part = part.norm_sqr();
            let tail = if n_part > 0.0 {
                (state.tail_bound() * state.norm_sqr() / n_part).min(1.0)
            } else {
                0.0
            };
            part = FockState::from_parts(j_lo, part.amps().to_vec(), tail, None);
        }
        part
    };
    (keep(0), keep(1))
}

/// Apply the ladder to an opposite-`ξ` superposition.
///
/// Returns `(X|ψ⟩, ξ)`; since `X|±ξ⟩ = ±ξ|±ξ⟩`, the image is `ξ` times the
/// sign-flipped superposition, which the verification layer asserts.
pub fn ladder_on_scs(spec: &ScsSpec) -> Result<(FockState, C64)> {
    if spec.kind != ScsKind::OppositeXi {
        return Err(Error::WrongScsKind);
    }
    Ok((build_scs(spec).ladder_x(), spec.base.xi()))
}

/// Which state family to place on the strip.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StateKind {
    Cs,
    Scs(ScsKind),
}

/// Rule for the superposition phase in strip-coupled sweeps.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ChiRule {
    Fixed(f64),
    /// Tie the superposition phase to the strip angle, `χ = φ`.
    EqualsPhi,
}

impl ChiRule {
    fn at(&self, phi: f64) -> f64 {
        match self {
            ChiRule::Fixed(x) => *x,
            ChiRule::EqualsPhi => phi,
        }
    }
}

/// Build the state sitting at strip angle `φ`, deriving each branch's
/// effective level from the geometry.
///
/// The opposite-angle branches live at strip angles `φ` and `−φ` and pick
/// up their own `l′`; the opposite-`ξ` branches share the level `l′(φ)`
/// because negating `ξ` shifts only the angle, by π, at fixed level.
pub fn build_on_strip(
    strip: &StripConfig,
    kind: StateKind,
    chi: ChiRule,
    phi: f64,
    epsilon_tail: f64,
) -> Result<FockState> {
    let lp = strip.l_prime(phi);
    let chi_v = chi.at(phi);
    match kind {
        StateKind::Cs => Ok(build_cs(&CsParams::with_tail(lp, phi, epsilon_tail)?)),
        StateKind::Scs(ScsKind::OppositeAngle) => {
            let a = build_cs(&CsParams::with_tail(lp, phi, epsilon_tail)?);
            let lp_m = strip.l_prime(-phi);
            let b = build_cs(&CsParams::with_tail(lp_m, -phi, epsilon_tail)?);
            Ok(a.superpose(&b, C64::from_polar(1.0, -chi_v)))
        }
        StateKind::Scs(kind) => {
            let sign = if kind == ScsKind::OppositeXi {
                1.0
            } else {
                -1.0
            };
            let a = build_cs(&CsParams::with_tail(lp, phi, epsilon_tail)?);
            let b = build_cs(&CsParams::with_tail(
                lp,
                phi + core::f64::consts::PI,
                epsilon_tail,
            )?);
            Ok(a.superpose(&b, C64::from_polar(1.0, chi_v) * sign))
        }
    }
}
