//! Volkov action and complex saddle-point times.
//!
//! The ionisation burst is located by the saddle of the laser-driven action:
//! `(p + A(t_s))² = -2 I_p`, solved in the upper half of the complex time
//! plane. `Im(t_s)` is the Keldysh tunnelling time. For the flat
//! (monochromatic circular) pulse the saddle reduces to the scalar relation
//! `cosh(ω τ_T) = (p² + A0² + 2 I_p) / (2 p A0)` with `Re(ω t_s)` locked to
//! the emission angle, which supplies both the Newton seed and an independent
//! oracle for tests.

use num_complex::Complex64;
use thiserror::Error;

use crate::numerics::quad::{integrate_segment, QuadError};
use crate::pulse::{CVec2, Envelope, PulseSpec};

#[derive(Debug, Error)]
pub enum SaddleError {
    #[error("saddle solver requires a non-zero final momentum")]
    DegenerateMomentum,
    #[error("ionisation potential must be positive, got {0}")]
    NonPositiveIp(f64),
    #[error("Newton iteration did not converge: residual {residual:e} after {iterations} steps")]
    NonConvergence { residual: f64, iterations: u32 },
    #[error("no saddle with Im(t_s) > 0 inside the pulse window")]
    NoPhysicalRoot,
    #[error("observation time {t_obs} must exceed Re(t_s) = {re_ts}")]
    BadObservationTime { t_obs: f64, re_ts: f64 },
    #[error("fixed-point iteration for the characteristic momentum stalled at step {0}")]
    FixedPointStalled(u32),
    #[error(transparent)]
    Quadrature(#[from] QuadError),
}

/// Solver knobs; the defaults match the library-wide tolerances.
#[derive(Copy, Clone, Debug)]
pub struct SaddleConfig {
    /// Residual tolerance on |(p+A(t_s))² + 2 I_p|.
    pub saddle_tol: f64,
    pub max_iter: u32,
    /// Absolute tolerance for the Volkov-phase quadrature.
    pub quad_tol: f64,
    pub max_panels: usize,
}

impl Default for SaddleConfig {
    fn default() -> Self {
        SaddleConfig {
            saddle_tol: 1e-12,
            max_iter: 80,
            quad_tol: 1e-12,
            max_panels: 100_000,
        }
    }
}

/// Complex ionisation time for one final momentum.
#[derive(Copy, Clone, Debug)]
pub struct SaddleSolution {
    /// Final (detector) momentum in the polarisation plane.
    pub p: [f64; 2],
    /// Ionisation potential the saddle was solved for.
    pub ip: f64,
    /// Complex saddle time, Im(t_s) > 0.
    pub t_s: Complex64,
    /// Keldysh tunnelling time, exactly Im(t_s).
    pub tau_t: f64,
    /// Exit coordinate: real part of the vertical-contour displacement.
    pub r0: [f64; 2],
    /// |(p+A(t_s))² + 2 I_p| at the returned root.
    pub residual: f64,
}

fn cvec(p: [f64; 2]) -> CVec2 {
    CVec2::from_real(p[0], p[1])
}

/// v(t) = p + A(t).
fn velocity(spec: &PulseSpec, p: [f64; 2], t: Complex64) -> CVec2 {
    cvec(p).add(spec.vector_potential(t))
}

/// Saddle function (p+A(t))² + 2 I_p.
fn saddle_fn(spec: &PulseSpec, p: [f64; 2], ip: f64, t: Complex64) -> Complex64 {
    velocity(spec, p, t).norm2() + 2.0 * ip
}

/// d/dt (p+A(t))² = 2 (p+A)·A' with A' = -E(t).
fn saddle_fn_prime(spec: &PulseSpec, p: [f64; 2], t: Complex64) -> Complex64 {
    let v = velocity(spec, p, t);
    let e = spec.electric_field(t);
    -2.0 * v.dot(e)
}

/// Scalar flat-pulse relation: ω τ_T from cosh(ω τ_T) = (p²+A0²+2Ip)/(2 p A0).
pub fn flat_tunnelling_parameter(a0: f64, p: f64, ip: f64) -> f64 {
    let d = (p * p + a0 * a0 + 2.0 * ip) / (2.0 * p * a0);
    d.max(1.0).acosh()
}

fn wrap_angle(phi: f64) -> f64 {
    let mut x = phi.rem_euclid(std::f64::consts::TAU);
    if x > std::f64::consts::PI {
        x -= std::f64::consts::TAU;
    }
    x
}

/// Newton iteration from one seed. Returns the root and its residual.
fn newton_from(
    spec: &PulseSpec,
    p: [f64; 2],
    ip: f64,
    seed: Complex64,
    cfg: &SaddleConfig,
) -> Result<(Complex64, f64), SaddleError> {
    let mut t = seed;
    let mut best = (t, f64::INFINITY);
    for it in 0..cfg.max_iter {
        let f = saddle_fn(spec, p, ip, t);
        let res = f.norm();
        if res < best.1 {
            best = (t, res);
        }
        if res < cfg.saddle_tol {
            return Ok((t, res));
        }
        let fp = saddle_fn_prime(spec, p, t);
        if fp.norm() == 0.0 {
            return Err(SaddleError::NonConvergence {
                residual: res,
                iterations: it,
            });
        }
        let mut step = -f / fp;
        // keep the iterate in the physical half-plane
        let mut guard = 0;
        while (t + step).im <= 0.0 && guard < 60 {
            step *= 0.5;
            guard += 1;
        }
        t += step;
    }
    Err(SaddleError::NonConvergence {
        residual: best.1,
        iterations: cfg.max_iter,
    })
}

/// Complex root of (p + A(t_s))² + 2 I_p = 0 with Im(t_s) > 0.
///
/// The Newton seed is the analytic flat-pulse saddle evaluated with the local
/// envelope value; for the cos⁴ envelope neighbouring-cycle seeds are also
/// tried and the root with the smallest Im(t_s) (the least-suppressed burst)
/// inside the pulse window is kept.
pub fn solve_saddle(
    spec: &PulseSpec,
    p: [f64; 2],
    ip: f64,
    cfg: &SaddleConfig,
) -> Result<SaddleSolution, SaddleError> {
    if !(ip > 0.0) {
        return Err(SaddleError::NonPositiveIp(ip));
    }
    let pm = (p[0] * p[0] + p[1] * p[1]).sqrt();
    if pm < 1e-12 {
        return Err(SaddleError::DegenerateMomentum);
    }

    let s = spec.helicity().sign();
    let phi_p = wrap_angle(s * p[1].atan2(p[0]));
    let w = spec.omega();
    let a0 = spec.a0();

    let cycle_offsets: &[f64] = match spec.envelope() {
        Envelope::Flat => &[0.0],
        Envelope::Cos4 => &[0.0, -std::f64::consts::TAU, std::f64::consts::TAU],
    };

    let mut best: Option<(Complex64, f64)> = None;
    for &off in cycle_offsets {
        let t_re = (phi_p + off) / w;
        if let Some((lo, hi)) = spec.envelope_window() {
            if t_re < lo || t_re > hi {
                continue;
            }
        }
        let env = match spec.envelope() {
            Envelope::Flat => 1.0,
            Envelope::Cos4 => (w * t_re / 4.0).cos().powi(4),
        };
        if env < 1e-3 {
            continue;
        }
        let x = flat_tunnelling_parameter(a0 * env, pm, ip);
        let seed = Complex64::new(t_re, (x / w).max(1e-8));
        let Ok((root, res)) = newton_from(spec, p, ip, seed, cfg) else {
            continue;
        };
        if root.im <= 0.0 {
            continue;
        }
        if let Some((lo, hi)) = spec.envelope_window() {
            if root.re < lo || root.re > hi {
                continue;
            }
        }
        match best {
            Some((prev, _)) if root.im >= prev.im => {}
            _ => best = Some((root, res)),
        }
    }

    let (mut t_s, residual) = best.ok_or(SaddleError::NoPhysicalRoot)?;

    // canonical cycle for the monochromatic pulse
    if spec.envelope() == Envelope::Flat {
        let re = wrap_angle(t_s.re * w) / w;
        t_s = Complex64::new(re, t_s.im);
    }

    let r0 = exit_displacement(spec, p, t_s);
    Ok(SaddleSolution {
        p,
        ip,
        t_s,
        tau_t: t_s.im,
        r0: r0.re(),
        residual,
    })
}

/// Displacement accumulated on the vertical contour segment,
/// ∫_{t_s}^{Re t_s} v(ζ) dζ, in closed form.
pub fn exit_displacement(spec: &PulseSpec, p: [f64; 2], t_s: Complex64) -> CVec2 {
    let t_exit = Complex64::new(t_s.re, 0.0);
    let dt = t_exit - t_s;
    cvec(p)
        .scale(dt)
        .add(spec.vector_potential_integral(t_s, t_exit))
}

/// Exit coordinate of a solved saddle (real part of the displacement).
pub fn exit_point(spec: &PulseSpec, sol: &SaddleSolution) -> [f64; 2] {
    exit_displacement(spec, sol.p, sol.t_s).re()
}

/// Volkov phase S_V(T, p, t_s) = ½ ∫_{t_s}^{T} (p+A(t))² dt along the
/// vertical-then-horizontal contour, by adaptive quadrature.
pub fn volkov_phase(
    spec: &PulseSpec,
    p: [f64; 2],
    t_s: Complex64,
    t_obs: f64,
    cfg: &SaddleConfig,
) -> Result<Complex64, SaddleError> {
    if t_obs <= t_s.re {
        return Err(SaddleError::BadObservationTime {
            t_obs,
            re_ts: t_s.re,
        });
    }
    let corner = Complex64::new(t_s.re, 0.0);
    let end = Complex64::new(t_obs, 0.0);
    let f = |t: Complex64| saddle_fn(spec, p, 0.0, t); // (p+A)², no Ip term
    let mut total = integrate_segment(f, t_s, corner, cfg.quad_tol, cfg.max_panels)?;

    // split the real-time leg per half-cycle so the oscillatory integrand is
    // resolved panel by panel
    let half_cycle = spec.period() / 2.0;
    let mut t = corner;
    while t.re < t_obs {
        let next = (t.re + half_cycle).min(t_obs);
        let nextc = Complex64::new(next, 0.0);
        total += integrate_segment(f, t, nextc, cfg.quad_tol, cfg.max_panels)?;
        t = nextc;
    }
    let _ = end;
    Ok(0.5 * total)
}

/// Closed-form Volkov phase for the flat pulse (used as the quadrature
/// oracle and available as a fast path):
/// ½ ∫ (p+A)² dt = ½ [(p²+A0²) t - (2 p A0/ω) sin(ωt - s φ_p)].
pub fn volkov_phase_closed_flat(
    spec: &PulseSpec,
    p: [f64; 2],
    t_s: Complex64,
    t_obs: f64,
) -> Complex64 {
    assert_eq!(spec.envelope(), Envelope::Flat);
    let a0 = spec.a0();
    let w = spec.omega();
    let s = spec.helicity().sign();
    let pm = (p[0] * p[0] + p[1] * p[1]).sqrt();
    let phi_p = s * p[1].atan2(p[0]);
    let prim = |t: Complex64| {
        (pm * pm + a0 * a0) * t - (2.0 * pm * a0 / w) * (t * w - phi_p).sin()
    };
    0.5 * (prim(Complex64::new(t_obs, 0.0)) - prim(t_s))
}

/// Keldysh adiabaticity parameter γ = ω √(2 I_p) / F.
pub fn keldysh_gamma(spec: &PulseSpec, ip: f64) -> f64 {
    spec.omega() * (2.0 * ip).sqrt() / spec.field()
}

/// Characteristic momentum of the photoelectron distribution: the
/// self-consistent fixed point of p0 = A0 sinh(ω τ_T(p0)) / (ω τ_T(p0)),
/// with τ_T from the saddle solved at momentum p0 along the emission
/// direction of the envelope peak.
pub fn characteristic_momentum(
    spec: &PulseSpec,
    ip: f64,
    cfg: &SaddleConfig,
) -> Result<f64, SaddleError> {
    let a0 = spec.a0();
    let mut p = a0;
    for _ in 0..400 {
        let sol = solve_saddle(spec, [p, 0.0], ip, cfg)?;
        let x = spec.omega() * sol.tau_t;
        let target = if x < 1e-8 { a0 } else { a0 * x.sinh() / x };
        let next = 0.5 * (p + target);
        if (next - p).abs() < 1e-10 {
            return Ok(next);
        }
        p = next;
    }
    Err(SaddleError::FixedPointStalled(400))
}
