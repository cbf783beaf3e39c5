//! Truncated angular-momentum engine.
//!
//! States live on a finite window of the integer basis `|j⟩` and carry a
//! certified bound on the mass truncated away. The operators implemented
//! here are the ones the closed forms are checked against:
//!
//! - `Ĵ |j⟩ = j |j⟩` ([`FockState::apply_j`]),
//! - the raising unitary `U = e^{iφ̂}`, `U |j⟩ = |j+1⟩`
//!   ([`FockState::phase_shift`]), so that `[Ĵ, U] = U`,
//! - `e^{λĴ} |j⟩ = e^{λj} |j⟩` ([`FockState::scale_exp_j`]),
//! - the non-unitary ladder `X = e^{i(φ̂ + iĴ)}`, acting as
//!   `X |j⟩ = e^{−(j+1/2)} |j+1⟩` ([`FockState::ladder_x`]). This is the
//!   disentangling fixed by `[Ĵ, U] = U`; the standing eigenvalue tests in
//!   `verify` confirm `X |ξ⟩ = ξ |ξ⟩` rather than assume it.
//!
//! Windows travel with the amplitudes: a shift by `k` moves the window
//! bounds, so no mass is ever dropped at an edge and the commutation
//! relation holds exactly on the stored coefficients.

use alloc::vec;
use alloc::vec::Vec;
use num_complex::Complex64 as C64;
// Inherent f64 methods shadow the trait when std is linked (tests).
#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};

/// A state over a finite window `j ∈ [j_lo, j_hi]` of the angular-momentum
/// basis.
///
/// `tail_bound` certifies the squared-norm mass of the ideal (untruncated)
/// state lying outside the window, relative to the stored mass. States
/// assembled directly from amplitudes represent themselves exactly and
/// carry a zero bound; states built from coherent-state parameters carry
/// the Gaussian-tail certificate, which is re-derived after each operation
/// from the tracked envelope center.
#[derive(Debug, Clone, PartialEq)]
pub struct FockState {
    j_lo: i64,
    amps: Vec<C64>,
    tail_bound: f64,
    /// Center of the Gaussian envelope `|c_j|² ∝ e^{−(j − center)²}`, when
    /// the state is known to have one. `None` disables re-certification.
    center: Option<f64>,
}

/// Relative mass of a unit-rate Gaussian envelope outside the window.
///
/// Distances are measured to the first omitted index on each side; the
/// peak term of the retained sum is at least `e^{−1/4}`.
pub(crate) fn envelope_tail(center: f64, j_lo: i64, j_hi: i64) -> f64 {
    let one_sided = |d: f64| {
        if d <= 0.0 {
            return f64::INFINITY;
        }
        (-d * d).exp() / -(-2.0 * d).exp_m1()
    };
    let t = one_sided(center - (j_lo - 1) as f64) + one_sided((j_hi + 1) as f64 - center);
    (t * 0.25f64.exp()).min(1.0)
}

impl FockState {
    /// Build a state from explicit amplitudes on `[j_lo, j_lo + len − 1]`.
    ///
    /// The result represents exactly what was passed in: no tail.
    pub fn from_amps(j_lo: i64, amps: Vec<C64>) -> Result<Self> {
        if amps.is_empty() {
            return Err(Error::EmptyWindow);
        }
        for (i, a) in amps.iter().enumerate() {
            if !a.re.is_finite() || !a.im.is_finite() {
                return Err(Error::NonFiniteAmplitude(j_lo + i as i64));
            }
        }
        Ok(FockState {
            j_lo,
            amps,
            tail_bound: 0.0,
            center: None,
        })
    }

    /// The flagged zero state.
    pub fn zero() -> Self {
        FockState {
            j_lo: 0,
            amps: vec![C64::new(0.0, 0.0)],
            tail_bound: 0.0,
            center: None,
        }
    }

    /// Basis state `|j⟩`.
    pub fn basis(j: i64) -> Self {
        FockState {
            j_lo: j,
            amps: vec![C64::new(1.0, 0.0)],
            tail_bound: 0.0,
            center: None,
        }
    }

    pub(crate) fn from_parts(
        j_lo: i64,
        amps: Vec<C64>,
        tail_bound: f64,
        center: Option<f64>,
    ) -> Self {
        debug_assert!(!amps.is_empty());
        FockState {
            j_lo,
            amps,
            tail_bound,
            center,
        }
    }

    pub fn j_lo(&self) -> i64 {
        self.j_lo
    }

    pub fn j_hi(&self) -> i64 {
        self.j_lo + self.amps.len() as i64 - 1
    }

    /// Amplitude at index `j`; zero outside the window.
    pub fn amp(&self, j: i64) -> C64 {
        if j < self.j_lo || j > self.j_hi() {
            C64::new(0.0, 0.0)
        } else {
            self.amps[(j - self.j_lo) as usize]
        }
    }

    pub fn amps(&self) -> &[C64] {
        &self.amps
    }

    pub fn tail_bound(&self) -> f64 {
        self.tail_bound
    }

    /// True when every stored amplitude vanishes.
    pub fn is_zero(&self) -> bool {
        self.amps.iter().all(|a| a.re == 0.0 && a.im == 0.0)
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    /// Indices and amplitudes, in window order.
    pub fn iter(&self) -> impl Iterator<Item = (i64, C64)> + '_ {
        self.amps
            .iter()
            .enumerate()
            .map(move |(i, &a)| (self.j_lo + i as i64, a))
    }

    /// `Ĵ`: multiply each amplitude by its index.
    pub fn apply_j(&self) -> FockState {
        let amps = self.iter().map(|(j, a)| a * j as f64).collect();
        // Index weighting destroys the Gaussian envelope certificate.
        let tail = if self.tail_bound == 0.0 { 0.0 } else { 1.0 };
        FockState::from_parts(self.j_lo, amps, tail, None)
    }

    /// `U^k`: shift every index by `k`. The window moves with the
    /// amplitudes, so the operation is exact.
    pub fn phase_shift(&self, k: i64) -> FockState {
        FockState::from_parts(
            self.j_lo + k,
            self.amps.clone(),
            self.tail_bound,
            self.center.map(|c| c + k as f64),
        )
    }

    /// `e^{λĴ}`: multiply the amplitude at `j` by `e^{λj}`, evaluated in
    /// the log domain so a large factor never overflows before it is
    /// combined with a small amplitude.
    pub fn scale_exp_j(&self, lambda: f64) -> FockState {
        let amps = self
            .iter()
            .map(|(j, a)| {
                let n = a.norm();
                if n == 0.0 {
                    C64::new(0.0, 0.0)
                } else {
                    C64::from_polar((n.ln() + lambda * j as f64).exp(), a.arg())
                }
            })
            .collect();
        // e^{λj} translates a unit-rate Gaussian envelope by λ.
        let center = self.center.map(|c| c + lambda);
        let tail = self.recertified_tail(center, self.j_lo, self.j_hi());
        FockState::from_parts(self.j_lo, amps, tail, center)
    }

    /// Ladder `X = e^{i(φ̂ + iĴ)}`: `X |j⟩ = e^{−(j+1/2)} |j+1⟩`.
    pub fn ladder_x(&self) -> FockState {
        let amps = self
            .iter()
            .map(|(j, a)| {
                let n = a.norm();
                if n == 0.0 {
                    C64::new(0.0, 0.0)
                } else {
                    C64::from_polar((n.ln() - (j as f64 + 0.5)).exp(), a.arg())
                }
            })
            .collect();
        // The envelope center is preserved: the index shift and the decay
        // factor cancel each other's drift.
        let tail = self.recertified_tail(self.center, self.j_lo + 1, self.j_hi() + 1);
        FockState::from_parts(self.j_lo + 1, amps, tail, self.center)
    }

    /// `self + weight · other` on the union window.
    ///
    /// A resulting amplitude smaller than the roundoff bound of its own
    /// addition carries no information and is snapped to exact zero, so a
    /// cancelling superposition yields the flagged zero state instead of
    /// residue at the 1e−16 level.
    pub fn superpose(&self, other: &FockState, weight: C64) -> FockState {
        let j_lo = self.j_lo.min(other.j_lo);
        let j_hi = self.j_hi().max(other.j_hi());
        let amps: Vec<C64> = (j_lo..=j_hi)
            .map(|j| {
                let a = self.amp(j);
                let b = weight * other.amp(j);
                let sum = a + b;
                if sum.norm() <= 4.0 * f64::EPSILON * (a.norm() + b.norm()) {
                    C64::new(0.0, 0.0)
                } else {
                    sum
                }
            })
            .collect();

        let center = match (self.center, other.center) {
            (Some(a), Some(b)) if (a - b).abs() <= 1e-9 => Some(a),
            (None, None) if self.tail_bound == 0.0 && other.tail_bound == 0.0 => None,
            _ => None,
        };
        let tail = if self.tail_bound == 0.0 && other.tail_bound == 0.0 {
            0.0
        } else if let Some(c) = center {
            envelope_tail(c, j_lo, j_hi)
        } else {
            // |a + wb|² ≤ 2(|a|² + |w|²|b|²) bounds the combined outside
            // mass; relative to the combined inside mass.
            let out = 2.0
                * (self.tail_bound * self.norm_sqr()
                    + weight.norm_sqr() * other.tail_bound * other.norm_sqr());
            let inside: f64 = amps.iter().map(|a| a.norm_sqr()).sum();
            if inside > 0.0 {
                (out / inside).min(1.0)
            } else {
                0.0
            }
        };
        FockState::from_parts(j_lo, amps, tail, center)
    }

    fn recertified_tail(&self, center: Option<f64>, j_lo: i64, j_hi: i64) -> f64 {
        if self.tail_bound == 0.0 {
            0.0
        } else if let Some(c) = center {
            envelope_tail(c, j_lo, j_hi)
        } else {
            1.0
        }
    }

    /// Normalized expectation values. Fails on the zero state.
    pub fn moments(&self) -> Result<MomentSet> {
        if self.is_zero() {
            return Err(Error::ZeroState);
        }
        // Peak-scale the amplitudes so squared weights stay in range even
        // when the raw coefficients are astronomically large.
        let peak_log = self
            .amps
            .iter()
            .map(|a| a.norm())
            .fold(f64::NEG_INFINITY, f64::max)
            .ln();
        let scaled: Vec<C64> = self
            .amps
            .iter()
            .map(|a| {
                let n = a.norm();
                if n == 0.0 {
                    C64::new(0.0, 0.0)
                } else {
                    C64::from_polar((n.ln() - peak_log).exp(), a.arg())
                }
            })
            .collect();

        let norm: f64 = scaled.iter().map(|a| a.norm_sqr()).sum();
        let mut mean_j = 0.0;
        let mut mean_j2 = 0.0;
        for (i, a) in scaled.iter().enumerate() {
            let j = (self.j_lo + i as i64) as f64;
            let w = a.norm_sqr();
            mean_j += j * w;
            mean_j2 += j * j * w;
        }
        mean_j /= norm;
        mean_j2 /= norm;
        let raw_var = mean_j2 - mean_j * mean_j;
        let var_j = if (-1e-12..0.0).contains(&raw_var) {
            0.0
        } else {
            raw_var.max(0.0)
        };

        // ⟨U^k⟩ = Σ_j conj(c_{j+k}) c_j / Σ_j |c_j|²
        let mut exp_u = C64::new(0.0, 0.0);
        let mut exp_u2 = C64::new(0.0, 0.0);
        for i in 0..scaled.len() {
            if i + 1 < scaled.len() {
                exp_u += scaled[i + 1].conj() * scaled[i];
            }
            if i + 2 < scaled.len() {
                exp_u2 += scaled[i + 2].conj() * scaled[i];
            }
        }
        exp_u /= norm;
        exp_u2 /= norm;

        // ⟨e^{±2Ĵ}⟩ through log-sum-exp: the reweighted mass can dwarf the
        // stored one.
        let log_w = |a: &C64| 2.0 * a.norm().ln();
        let lse = |shift: f64| -> f64 {
            let mut m = f64::NEG_INFINITY;
            for (i, a) in scaled.iter().enumerate() {
                let j = (self.j_lo + i as i64) as f64;
                if a.norm() > 0.0 {
                    m = m.max(log_w(a) + shift * j);
                }
            }
            let mut s = 0.0;
            for (i, a) in scaled.iter().enumerate() {
                let j = (self.j_lo + i as i64) as f64;
                if a.norm() > 0.0 {
                    s += (log_w(a) + shift * j - m).exp();
                }
            }
            m + s.ln()
        };
        let log_norm = lse(0.0);
        let exp_exp_j_plus = (lse(2.0) - log_norm).exp();
        let exp_exp_j_minus = (lse(-2.0) - log_norm).exp();

        Ok(MomentSet {
            mean_j,
            mean_j2,
            var_j,
            exp_u,
            exp_u2,
            exp_exp_j_plus,
            exp_exp_j_minus,
        })
    }
}

/// Inner product `⟨a|b⟩ = Σ_j conj(a_j) b_j`, conjugate-linear in the first
/// argument. Windows may differ; the sum runs over their intersection.
pub fn inner_product(a: &FockState, b: &FockState) -> C64 {
    let lo = a.j_lo().max(b.j_lo());
    let hi = a.j_hi().min(b.j_hi());
    let mut s = C64::new(0.0, 0.0);
    let mut j = lo;
    while j <= hi {
        s += a.amp(j).conj() * b.amp(j);
        j += 1;
    }
    s
}

/// Normalized expectation values of a state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MomentSet {
    pub mean_j: f64,
    pub mean_j2: f64,
    /// `⟨Ĵ²⟩ − ⟨Ĵ⟩²`, clamped to zero when a rounding residue makes it
    /// negative by less than 1e−12.
    pub var_j: f64,
    /// `⟨e^{iφ̂}⟩`
    pub exp_u: C64,
    /// `⟨e^{2iφ̂}⟩`
    pub exp_u2: C64,
    /// `⟨e^{2Ĵ}⟩`
    pub exp_exp_j_plus: f64,
    /// `⟨e^{−2Ĵ}⟩`
    pub exp_exp_j_minus: f64,
}
