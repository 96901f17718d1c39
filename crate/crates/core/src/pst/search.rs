use std::f64::consts::{PI, TAU};

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::spectral::{eigenvalue_support, SpectralDecomposition};

use super::support::SupportClass;

/// Default declaration threshold on `|H(tau)[u][v]|`.
pub const DEFAULT_THRESHOLD: f64 = 1.0 - 1e-9;

/// Tolerance for the structural checks run on a found event.
pub const VERIFY_TOLERANCE: f64 = 1e-8;

/// A numerically detected transfer `|H(tau)[u][v]| >= threshold`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PstEvent {
    pub u: usize,
    pub v: usize,
    pub tau: f64,
    /// `H(tau)[v][u] / |H(tau)[v][u]|`.
    #[serde(serialize_with = "serialize_complex")]
    pub gamma: Complex64,
    pub fidelity: f64,
}

pub(crate) fn serialize_complex<S: serde::Serializer>(z: &Complex64, s: S) -> std::result::Result<S::Ok, S::Error> {
    [z.re, z.im].serialize(s)
}

/// `t -> H(t)[u][v]` as the trigonometric sum `sum_r exp(i theta_r t) (E_r)[u][v]`.
#[derive(Clone, Debug)]
pub struct Amplitude {
    freqs: Vec<f64>,
    coeffs: Vec<f64>,
}

impl Amplitude {
    pub fn new(sd: &SpectralDecomposition, u: usize, v: usize) -> Self {
        let (freqs, coeffs) = sd
            .eigenvalues()
            .iter()
            .enumerate()
            .map(|(r, &theta)| (theta, sd.idempotent_entry(r, u, v)))
            .unzip();
        Self { freqs, coeffs }
    }

    pub fn value(&self, t: f64) -> Complex64 {
        self.freqs
            .iter()
            .zip(&self.coeffs)
            .map(|(&theta, &c)| Complex64::from_polar(c, theta * t))
            .sum()
    }

    pub fn fidelity(&self, t: f64) -> f64 {
        self.value(t).norm()
    }

    /// `d/dt |h(t)|^2`.
    fn slope(&self, t: f64) -> f64 {
        let (h, dh) = self.freqs.iter().zip(&self.coeffs).fold(
            (Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0)),
            |(h, dh), (&theta, &c)| {
                let z = Complex64::from_polar(c, theta * t);
                (h + z, dh + Complex64::i() * theta * z)
            },
        );
        2.0 * (h.conj() * dh).re
    }
}

/// `|H(t)[u][v]|`.
pub fn fidelity(sd: &SpectralDecomposition, u: usize, v: usize, t: f64) -> f64 {
    sd.transition_entry(u, v, t).norm()
}

const INV_PHI: f64 = 0.618_033_988_749_894_9;

/// Refines a grid peak inside `[lo, hi]`: golden-section on `-|h|` until the
/// comparisons hit rounding noise, then bisection on the sign of
/// `d|h|^2/dt`, which stays well conditioned at the peak.
fn refine(amp: &Amplitude, lo: f64, hi: f64, grid_t: f64, grid_f: f64) -> (f64, f64) {
    let (mut a, mut b) = (lo, hi);
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let (mut fc, mut fd) = (amp.fidelity(c), amp.fidelity(d));
    while b - a > 1e-7 {
        if fc >= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = amp.fidelity(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = amp.fidelity(d);
        }
    }
    let golden = 0.5 * (a + b);
    let golden_f = amp.fidelity(golden);

    let (mut pa, mut pb) = ((golden - 1e-6).max(lo), (golden + 1e-6).min(hi));
    if amp.slope(pa) > 0.0 && amp.slope(pb) < 0.0 {
        for _ in 0..200 {
            if pb - pa <= 1e-14 * pb.max(1.0) {
                break;
            }
            let mid = 0.5 * (pa + pb);
            if amp.slope(mid) > 0.0 {
                pa = mid;
            } else {
                pb = mid;
            }
        }
        let polished = 0.5 * (pa + pb);
        let polished_f = amp.fidelity(polished);
        if polished_f >= grid_f.max(golden_f) - 1e-15 {
            return (polished, polished_f);
        }
    }
    if golden_f > grid_f {
        (golden, golden_f)
    } else {
        (grid_t, grid_f)
    }
}

/// Earliest `t` in `(0, t_max]` with `|h(t)| >= threshold`, located on the
/// grid `k * pi / (100 max(rho, 1))` and refined around local maxima.
fn earliest_peak(amp: &Amplitude, rho: f64, t_max: f64, threshold: f64, confirm: impl Fn(f64) -> f64) -> Option<(f64, f64)> {
    let step = PI / (100.0 * rho.max(1.0));
    let count = (t_max / step).ceil() as usize;
    let t_at = |k: usize| (k as f64 * step).min(t_max);
    let samples: Vec<f64> = (0..=count).map(|k| amp.fidelity(t_at(k))).collect();
    let prefilter = (threshold - 0.05).max(0.0);
    for k in 1..=count {
        let f = samples[k];
        let right = samples.get(k + 1).copied().unwrap_or(f64::NEG_INFINITY);
        if f < prefilter || f < samples[k - 1] || f < right {
            continue;
        }
        let lo = if k == 1 { 0.5 * t_at(1) } else { t_at(k - 1) };
        let hi = t_at((k + 1).min(count));
        let (t, _) = refine(amp, lo, hi, t_at(k), f);
        let confirmed = confirm(t);
        if confirmed >= threshold {
            return Some((t, confirmed));
        }
    }
    None
}

/// Earliest numeric PST from `u` to `v` within `(0, t_max]`.
///
/// The fidelity at the refined time is recomputed from the full `H(tau)`
/// before the event is declared.
pub fn search_pst(sd: &SpectralDecomposition, u: usize, v: usize, t_max: f64, threshold: f64) -> Option<PstEvent> {
    let amp = Amplitude::new(sd, u, v);
    let confirm = |t: f64| sd.transition_matrix(t)[(v, u)].norm();
    let (tau, fidelity) = earliest_peak(&amp, sd.spectral_radius().abs(), t_max, threshold, confirm)?;
    let h = sd.transition_matrix(tau)[(v, u)];
    Some(PstEvent {
        u,
        v,
        tau,
        gamma: h / h.norm(),
        fidelity,
    })
}

/// Earliest `tau` in `(0, t_max]` with `|H(tau)[u][u]| >= threshold`.
///
/// When the support class suggests a period (`2 pi` for integer supports,
/// `2 pi / sqrt(Delta)` for quadratic supports with `a = 0`) that time is
/// tried first; the grid scan then looks for anything earlier.
pub fn check_periodicity(
    sd: &SpectralDecomposition,
    u: usize,
    t_max: f64,
    threshold: f64,
    class: Option<&SupportClass>,
) -> Option<f64> {
    let amp = Amplitude::new(sd, u, u);
    let candidate = match class {
        Some(SupportClass::Integer { .. }) => Some(TAU),
        Some(SupportClass::Quadratic { a: 0, delta, .. }) => Some(TAU / (*delta as f64).sqrt()),
        _ => None,
    }
    .filter(|&t| t <= t_max && amp.fidelity(t) >= threshold);
    let horizon = candidate.unwrap_or(t_max);
    let confirm = |t: f64| amp.fidelity(t);
    let scanned = earliest_peak(&amp, sd.spectral_radius().abs(), horizon, threshold, confirm).map(|(t, _)| t);
    match (scanned, candidate) {
        (Some(s), Some(c)) => Some(s.min(c)),
        (s, c) => s.or(c),
    }
}

/// Sign of `exp(i theta_r tau) / gamma` on one support eigenvalue.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SupportSign {
    pub index: usize,
    pub eigenvalue: f64,
    /// `+1`, `-1`, or `0` when the phase is neither `gamma` nor `-gamma`.
    pub sign: i8,
}

/// Structural consequences of a PST event, checked numerically.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PstStructure {
    /// `max |H(tau) e_u - gamma e_v|`.
    pub forward_residual: f64,
    /// `max |H(tau) e_v - gamma e_u|`.
    pub backward_residual: f64,
    pub return_fidelity_u: f64,
    pub return_fidelity_v: f64,
    /// `|H(2 tau)[u][u] - gamma^2|`.
    pub return_phase_error: f64,
    pub signs: Vec<SupportSign>,
    /// `max |F_+ F_-|`.
    pub f_product: f64,
    pub f_plus_nonzero: bool,
    pub f_minus_nonzero: bool,
    pub passed: bool,
}

/// Re-checks `event` against `sd`: `H(tau)` swaps `e_u` and `e_v` up to
/// `gamma`, both vertices return at `2 tau`, and the support splits into
/// `F_+` / `F_-` with `F_+ F_- = 0`.
pub fn verify_pst_event(
    sd: &SpectralDecomposition,
    event: &PstEvent,
    threshold: f64,
    support_tolerance: f64,
    tol: f64,
) -> Result<PstStructure> {
    let (u, v, tau, gamma) = (event.u, event.v, event.tau, event.gamma);
    let n = sd.n();
    let h = sd.transition_matrix(tau);
    let fid = h[(v, u)].norm();
    if fid < threshold {
        return Err(Error::StaleEvent { fidelity: fid, threshold });
    }
    let residual = |from: usize, to: usize| {
        (0..n)
            .map(|w| {
                let target = if w == to { gamma } else { Complex64::new(0.0, 0.0) };
                (h[(w, from)] - target).norm()
            })
            .fold(0.0, f64::max)
    };
    let forward_residual = residual(u, v);
    let backward_residual = residual(v, u);

    let h2 = sd.transition_matrix(2.0 * tau);
    let return_fidelity_u = h2[(u, u)].norm();
    let return_fidelity_v = h2[(v, v)].norm();
    let return_phase_error = (h2[(u, u)] - gamma * gamma).norm();

    let signs: Vec<SupportSign> = eigenvalue_support(sd, u, support_tolerance)
        .into_iter()
        .map(|r| {
            let theta = sd.eigenvalues()[r];
            let s = Complex64::from_polar(1.0, theta * tau) / gamma;
            let sign = if (s - 1.0).norm() <= tol {
                1
            } else if (s + 1.0).norm() <= tol {
                -1
            } else {
                0
            };
            SupportSign { index: r, eigenvalue: theta, sign }
        })
        .collect();
    let sum_of = |want: i8| {
        signs
            .iter()
            .filter(|s| s.sign == want)
            .fold(DMatrix::<f64>::zeros(n, n), |acc, s| acc + sd.idempotent(s.index))
    };
    let (f_plus, f_minus) = (sum_of(1), sum_of(-1));
    let f_product = (&f_plus * &f_minus).amax();
    let f_plus_nonzero = f_plus.amax() > tol;
    let f_minus_nonzero = f_minus.amax() > tol;

    let passed = forward_residual <= tol
        && backward_residual <= tol
        && (return_fidelity_u - 1.0).abs() <= tol
        && (return_fidelity_v - 1.0).abs() <= tol
        && return_phase_error <= tol
        && signs.iter().all(|s| s.sign != 0)
        && f_product <= tol
        && f_plus_nonzero
        && f_minus_nonzero;
    Ok(PstStructure {
        forward_residual,
        backward_residual,
        return_fidelity_u,
        return_fidelity_v,
        return_phase_error,
        signs,
        f_product,
        f_plus_nonzero,
        f_minus_nonzero,
        passed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    /// `h(t) = i sin(c t)`: the K2 amplitude with frequencies scaled by `c`.
    fn scaled_k2(c: f64) -> Amplitude {
        Amplitude {
            freqs: vec![c, -c],
            coeffs: vec![0.5, -0.5],
        }
    }

    #[test]
    fn refinement_resolves_off_grid_peaks() {
        for c in [1.2345, 0.777, 2.0f64.sqrt() + 0.01] {
            let amp = scaled_k2(c);
            let (t, f) = earliest_peak(&amp, 1.0, 10.0, DEFAULT_THRESHOLD, |t| amp.fidelity(t)).unwrap();
            let exact = PI / (2.0 * c);
            assert!((t - exact).abs() < 1e-12, "c = {c}: {t} vs {exact}");
            assert!(f >= DEFAULT_THRESHOLD);
        }
    }

    #[test]
    fn slope_matches_finite_difference() {
        let amp = scaled_k2(1.3);
        for k in 1..20 {
            let t = 0.17 * k as f64;
            let h = 1e-6;
            let numeric = (amp.fidelity(t + h).powi(2) - amp.fidelity(t - h).powi(2)) / (2.0 * h);
            assert!((amp.slope(t) - numeric).abs() < 1e-6);
        }
    }

    #[test]
    fn window_end_is_a_candidate() {
        // The peak sits exactly at t_max.
        let amp = scaled_k2(1.0);
        let (t, _) = earliest_peak(&amp, 1.0, PI / 2.0, DEFAULT_THRESHOLD, |t| amp.fidelity(t)).unwrap();
        assert!((t - PI / 2.0).abs() < 1e-12);
    }
}
