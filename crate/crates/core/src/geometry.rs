//! Möbius strip embedding and the effective level `l′`.
//!
//! The strip is carved out of a torus of major radius `R = 1` by locking the
//! polar angle to the azimuthal one, `θ = (φ + π)/2`. A trajectory at offset
//! `l` and radial value `r(φ)` embeds as
//!
//! ```text
//! X = cos φ + r cos(φ/2) cos φ
//! Y = sin φ + r cos(φ/2) sin φ
//! Z = l + r sin(φ/2)
//! ```
//!
//! Half-angle factors make the surface close only after `φ` advances by 4π.
//! The coherent-state machinery consumes the geometry solely through the
//! effective level `l′ = l + r sin(φ/2) − ln(1 + r cos(φ/2))`.
//!
//! Angles are plain radians and are never reduced mod 2π here: the double
//! cover is the whole point.

use alloc::vec::Vec;
use core::f64::consts::PI;
use core::fmt;
// Inherent f64 methods shadow the trait when std is linked (tests).
#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};

/// Major radius of the underlying torus. Fixed; the geometry is expressed
/// in units of it.
pub const MAJOR_RADIUS: f64 = 1.0;

/// Radial profile `r(φ)` of a trajectory, constrained to `0 ≤ r < 1` so the
/// strip never self-intersects and `1 + r cos(φ/2)` stays positive.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RadialProfile {
    /// Fixed radial value.
    Constant(f64),
    /// `r(φ) = sin²(φ)/2`, vanishing at multiples of π.
    SinSquared,
    /// `r(φ) = cos²(φ)/2`, vanishing at odd multiples of π/2.
    CosSquared,
}

impl RadialProfile {
    /// A constant profile, validated against `0 ≤ r₀ < 1`.
    pub fn constant(r0: f64) -> Result<Self> {
        if !r0.is_finite() || !(0.0..1.0).contains(&r0) {
            return Err(Error::RadiusOutOfRange(r0));
        }
        Ok(RadialProfile::Constant(r0))
    }

    /// Evaluate `r(φ)`.
    pub fn eval(&self, phi: f64) -> f64 {
        match self {
            RadialProfile::Constant(r0) => *r0,
            RadialProfile::SinSquared => phi.sin().powi(2) / 2.0,
            RadialProfile::CosSquared => phi.cos().powi(2) / 2.0,
        }
    }
}

impl fmt::Display for RadialProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RadialProfile::Constant(r0) => write!(f, "const:{r0}"),
            RadialProfile::SinSquared => write!(f, "sin2"),
            RadialProfile::CosSquared => write!(f, "cos2"),
        }
    }
}

/// Axial offset plus radial profile: everything needed to place a
/// trajectory on the strip.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StripConfig {
    pub l: f64,
    pub profile: RadialProfile,
}

impl StripConfig {
    pub fn new(l: f64, profile: RadialProfile) -> Result<Self> {
        if !l.is_finite() {
            return Err(Error::NonFinite("l"));
        }
        Ok(StripConfig { l, profile })
    }

    /// Effective level `l′(φ)` for this configuration.
    pub fn l_prime(&self, phi: f64) -> f64 {
        // Profiles are constrained to [0, 1) at construction, so the
        // domain check cannot fire.
        effective_level(phi, self.profile.eval(phi), self.l).expect("profile stays inside [0, 1)")
    }
}

/// A sampled point of a strip trajectory.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StripPoint {
    pub x: f64,
    pub y: f64,
    pub z: f64,
    pub phi: f64,
    pub r: f64,
    pub l_prime: f64,
}

/// Torus polar angle locked to the azimuthal one: `θ = (φ + π)/2`.
///
/// A 4π advance in `φ` moves `θ` by 2π, which is the double cover in one
/// line.
pub fn torus_constraint(phi: f64) -> f64 {
    (phi + PI) / 2.0
}

/// Effective level `l′ = l + r sin(φ/2) − ln(1 + r cos(φ/2))`.
///
/// Requires `0 ≤ r < 1` so the logarithm argument stays positive.
pub fn effective_level(phi: f64, r: f64, l: f64) -> Result<f64> {
    if !r.is_finite() || !(0.0..1.0).contains(&r) {
        return Err(Error::RadiusOutOfRange(r));
    }
    let half = phi / 2.0;
    Ok(l + r * half.sin() - (r * half.cos()).ln_1p())
}

/// Embed a single point, filling in the effective level as well.
pub fn embed_point(phi: f64, r: f64, l: f64) -> Result<StripPoint> {
    let l_prime = effective_level(phi, r, l)?;
    let half = phi / 2.0;
    let ring = 1.0 + r * half.cos();
    Ok(StripPoint {
        x: ring * phi.cos(),
        y: ring * phi.sin(),
        z: l + r * half.sin(),
        phi,
        r,
        l_prime,
    })
}

/// Sample a trajectory at `n ≥ 2` uniformly spaced angles, endpoints
/// included.
pub fn sample_trajectory(
    config: &StripConfig,
    phi_min: f64,
    phi_max: f64,
    n: usize,
) -> Result<Vec<StripPoint>> {
    if n < 2 {
        return Err(Error::TooFewSamples(n));
    }
    if phi_min.is_nan() || phi_max.is_nan() || phi_min >= phi_max {
        return Err(Error::EmptyRange {
            lo: phi_min,
            hi: phi_max,
        });
    }
    let span = phi_max - phi_min;
    (0..n)
        .map(|i| {
            let t = i as f64 / (n - 1) as f64;
            let phi = phi_min + span * t;
            embed_point(phi, config.profile.eval(phi), config.l)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) {
        assert!((a - b).abs() <= tol, "{a} vs {b}");
    }

    #[test]
    fn profile_values() {
        let c = RadialProfile::constant(0.5).unwrap();
        close(c.eval(1.234), 0.5, 0.0);
        close(RadialProfile::SinSquared.eval(PI / 2.0), 0.5, 1e-15);
        close(RadialProfile::CosSquared.eval(0.0), 0.5, 0.0);
    }

    #[test]
    fn profile_range_enforced() {
        assert_eq!(
            RadialProfile::constant(1.0),
            Err(Error::RadiusOutOfRange(1.0))
        );
        assert!(RadialProfile::constant(-0.1).is_err());
        assert!(RadialProfile::constant(f64::NAN).is_err());
        assert!(RadialProfile::constant(0.0).is_ok());
    }

    #[test]
    fn torus_constraint_values() {
        close(torus_constraint(PI), PI, 0.0);
        close(torus_constraint(0.0), PI / 2.0, 0.0);
        // Double cover: 4π in φ is one full turn of θ.
        close(
            torus_constraint(4.0 * PI).rem_euclid(2.0 * PI),
            torus_constraint(0.0),
            1e-15,
        );
    }

    #[test]
    fn embed_examples() {
        let p = embed_point(0.0, 0.5, 0.0).unwrap();
        close(p.x, 1.5, 1e-15);
        close(p.y, 0.0, 1e-15);
        close(p.z, 0.0, 1e-15);

        // Same angle mod 2π, flipped side of the strip.
        let q = embed_point(2.0 * PI, 0.5, 0.0).unwrap();
        close(q.x, 0.5, 1e-14);
        close(q.y, 0.0, 1e-14);
        close(q.z, 0.0, 1e-14);

        let c = embed_point(PI, 0.0, 1.0).unwrap();
        close(c.x, -1.0, 1e-15);
        close(c.y, 0.0, 1e-15);
        close(c.z, 1.0, 0.0);
    }

    #[test]
    fn embed_rejects_wide_radius() {
        assert!(embed_point(0.0, 1.0, 0.0).is_err());
    }

    #[test]
    fn effective_level_examples() {
        // Cylinder limit.
        for phi in [0.0, 1.0, PI, 7.0] {
            close(effective_level(phi, 0.0, 0.75).unwrap(), 0.75, 0.0);
        }
        // Hand-computed: -ln(3/2) and -ln(1/2).
        close(
            effective_level(0.0, 0.5, 0.0).unwrap(),
            -0.4054651081081644,
            1e-15,
        );
        close(
            effective_level(2.0 * PI, 0.5, 0.0).unwrap(),
            core::f64::consts::LN_2,
            1e-14,
        );
    }

    #[test]
    fn four_pi_closure() {
        for phi0 in [0.0, 0.3, 1.0, PI, 5.0] {
            for r in [0.0, 0.3, 0.7] {
                let a = embed_point(phi0, r, 0.2).unwrap();
                let b = embed_point(phi0 + 4.0 * PI, r, 0.2).unwrap();
                close(a.x, b.x, 1e-12);
                close(a.y, b.y, 1e-12);
                close(a.z, b.z, 1e-12);
                close(a.l_prime, b.l_prime, 1e-12);
            }
        }
    }

    #[test]
    fn half_twist_moves_the_point() {
        for r in [0.1, 0.5, 0.9] {
            let a = embed_point(0.0, r, 0.0).unwrap();
            let b = embed_point(2.0 * PI, r, 0.0).unwrap();
            let d = (a.x - b.x)
                .abs()
                .max((a.y - b.y).abs())
                .max((a.z - b.z).abs());
            assert!(d >= r / 2.0, "r={r}: max diff {d}");
        }
    }

    #[test]
    fn l_prime_periodicity_all_profiles() {
        let profiles = [
            RadialProfile::constant(0.4).unwrap(),
            RadialProfile::SinSquared,
            RadialProfile::CosSquared,
        ];
        for profile in profiles {
            let cfg = StripConfig::new(0.3, profile).unwrap();
            for phi0 in [0.0, 1.0, 2.5, PI] {
                close(cfg.l_prime(phi0 + 4.0 * PI), cfg.l_prime(phi0), 1e-13);
            }
        }
    }

    #[test]
    fn trajectory_sampling() {
        let cfg = StripConfig::new(0.0, RadialProfile::constant(0.5).unwrap()).unwrap();
        let pts = sample_trajectory(&cfg, 0.0, 4.0 * PI, 2).unwrap();
        assert_eq!(pts.len(), 2);
        close(pts[0].x, pts[1].x, 1e-12);
        close(pts[0].y, pts[1].y, 1e-12);
        close(pts[0].z, pts[1].z, 1e-12);

        let pts = sample_trajectory(&cfg, 0.0, 2.0 * PI, 2).unwrap();
        close((pts[0].x - pts[1].x).abs(), 1.0, 1e-13);

        let sin2 = StripConfig::new(0.0, RadialProfile::SinSquared).unwrap();
        let pts = sample_trajectory(&sin2, 0.0, 2.0 * PI, 2).unwrap();
        close(pts[0].x, pts[1].x, 1e-13);
        close(pts[0].y, pts[1].y, 1e-13);
        close(pts[0].z, pts[1].z, 1e-13);
        close(pts[0].l_prime, pts[1].l_prime, 1e-13);
    }

    #[test]
    fn trajectory_argument_errors() {
        let cfg = StripConfig::new(0.0, RadialProfile::SinSquared).unwrap();
        assert_eq!(
            sample_trajectory(&cfg, 0.0, 1.0, 1),
            Err(Error::TooFewSamples(1))
        );
        assert!(sample_trajectory(&cfg, 1.0, 1.0, 5).is_err());
    }

    #[test]
    fn endpoints_are_exact() {
        let cfg = StripConfig::new(0.1, RadialProfile::CosSquared).unwrap();
        let pts = sample_trajectory(&cfg, 0.25, 9.75, 7).unwrap();
        assert_eq!(pts[0].phi, 0.25);
        assert_eq!(pts[6].phi, 9.75);
    }
}
