//! Circularly polarised laser pulse, evaluable at complex time.
//!
//! The field is defined through its vector potential
//! `A(t) = -A0 f(t) (cos ωt, s sin ωt)` with `A0 = F/ω`, helicity sign
//! `s = +1` (right) or `-1` (left) on the y component, and envelope
//! `f(t) = 1` (flat, monochromatic) or `f(t) = cos^4(ωt/4)` supported on
//! `t ∈ [-2π/ω, 2π/ω]` on the real axis. `cos^4(ωt/4)` is entire, so the
//! same closed form serves off the real axis where the saddle-point contours
//! live; the compact-support window is applied only to real-time evaluation.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::units::INTENSITY_AU_WCM2;

/// Complex 2-vector in the polarisation plane.
#[derive(Copy, Clone, Debug, PartialEq)]
pub struct CVec2 {
    pub x: Complex64,
    pub y: Complex64,
}

impl CVec2 {
    pub const fn new(x: Complex64, y: Complex64) -> Self {
        CVec2 { x, y }
    }

    pub fn zero() -> Self {
        CVec2::new(Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0))
    }

    pub fn from_real(x: f64, y: f64) -> Self {
        CVec2::new(Complex64::new(x, 0.0), Complex64::new(y, 0.0))
    }

    /// Unconjugated dot product x1 x2 + y1 y2 (analytic continuation of the
    /// Euclidean dot product).
    pub fn dot(self, other: CVec2) -> Complex64 {
        self.x * other.x + self.y * other.y
    }

    /// x^2 + y^2 (not |.|^2; complex for complex arguments).
    pub fn norm2(self) -> Complex64 {
        self.dot(self)
    }

    pub fn add(self, other: CVec2) -> CVec2 {
        CVec2::new(self.x + other.x, self.y + other.y)
    }

    pub fn sub(self, other: CVec2) -> CVec2 {
        CVec2::new(self.x - other.x, self.y - other.y)
    }

    pub fn scale(self, k: Complex64) -> CVec2 {
        CVec2::new(self.x * k, self.y * k)
    }

    pub fn re(self) -> [f64; 2] {
        [self.x.re, self.y.re]
    }

    pub fn im(self) -> [f64; 2] {
        [self.x.im, self.y.im]
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Envelope {
    /// Monochromatic field, f(t) = 1.
    Flat,
    /// f(t) = cos^4(ωt/4) over one fundamental window t ∈ [-2π/ω, 2π/ω].
    Cos4,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Helicity {
    Right,
    Left,
}

impl Helicity {
    pub fn sign(self) -> f64 {
        match self {
            Helicity::Right => 1.0,
            Helicity::Left => -1.0,
        }
    }
}

#[derive(Debug, Error)]
pub enum PulseError {
    #[error("field amplitude must be positive, got {0}")]
    NonPositiveField(f64),
    #[error("carrier frequency must be positive, got {0}")]
    NonPositiveFrequency(f64),
    #[error("intensity must be positive, got {0}")]
    NonPositiveIntensity(f64),
}

/// Circularly polarised pulse in atomic units.
#[derive(Copy, Clone, Debug, PartialEq)]
pub struct PulseSpec {
    /// Peak field amplitude F (a.u.).
    field: f64,
    /// Carrier angular frequency ω (a.u.).
    omega: f64,
    envelope: Envelope,
    helicity: Helicity,
}

impl PulseSpec {
    pub fn new(
        field: f64,
        omega: f64,
        envelope: Envelope,
        helicity: Helicity,
    ) -> Result<Self, PulseError> {
        if !(field > 0.0) {
            return Err(PulseError::NonPositiveField(field));
        }
        if !(omega > 0.0) {
            return Err(PulseError::NonPositiveFrequency(omega));
        }
        Ok(PulseSpec {
            field,
            omega,
            envelope,
            helicity,
        })
    }

    pub fn field(&self) -> f64 {
        self.field
    }

    pub fn omega(&self) -> f64 {
        self.omega
    }

    pub fn envelope(&self) -> Envelope {
        self.envelope
    }

    pub fn helicity(&self) -> Helicity {
        self.helicity
    }

    /// Vector-potential amplitude A0 = F/ω.
    pub fn a0(&self) -> f64 {
        self.field / self.omega
    }

    /// One carrier period 2π/ω.
    pub fn period(&self) -> f64 {
        std::f64::consts::TAU / self.omega
    }

    /// Real-axis support of the envelope; `None` for the flat pulse.
    pub fn envelope_window(&self) -> Option<(f64, f64)> {
        match self.envelope {
            Envelope::Flat => None,
            Envelope::Cos4 => {
                let half = std::f64::consts::TAU / self.omega;
                Some((-half, half))
            }
        }
    }

    fn envelope_at(&self, t: Complex64) -> Complex64 {
        match self.envelope {
            Envelope::Flat => Complex64::new(1.0, 0.0),
            Envelope::Cos4 => {
                if t.im == 0.0 {
                    let (lo, hi) = self.envelope_window().unwrap();
                    if t.re < lo || t.re > hi {
                        return Complex64::new(0.0, 0.0);
                    }
                }
                (t * self.omega / 4.0).cos().powi(4)
            }
        }
    }

    /// A(t) at complex time, analytically continued off the real axis.
    pub fn vector_potential(&self, t: Complex64) -> CVec2 {
        let f = self.envelope_at(t);
        if f == Complex64::new(0.0, 0.0) {
            return CVec2::zero();
        }
        let a0 = self.a0();
        let s = self.helicity.sign();
        let phase = t * self.omega;
        CVec2::new(-a0 * f * phase.cos(), -a0 * s * f * phase.sin())
    }

    /// Electric field F(t) = -dA/dt, as the exact analytic derivative.
    pub fn electric_field(&self, t: Complex64) -> CVec2 {
        let a0 = self.a0();
        let s = self.helicity.sign();
        let w = self.omega;
        let phase = t * w;
        match self.envelope {
            Envelope::Flat => {
                // -dA/dt = A0 ω (-sin ωt, s cos ωt)
                CVec2::new(-a0 * w * phase.sin(), a0 * s * w * phase.cos())
            }
            Envelope::Cos4 => {
                if t.im == 0.0 {
                    let (lo, hi) = self.envelope_window().unwrap();
                    if t.re < lo || t.re > hi {
                        return CVec2::zero();
                    }
                }
                let quarter = t * w / 4.0;
                let f = quarter.cos().powi(4);
                let fp = -w * quarter.cos().powi(3) * quarter.sin();
                // -dA/dt = A0 (f' u + f u'), u = (cos ωt, s sin ωt)
                let ux = phase.cos();
                let uy = s * phase.sin();
                let upx = -w * phase.sin();
                let upy = s * w * phase.cos();
                CVec2::new(a0 * (fp * ux + f * upx), a0 * (fp * uy + f * upy))
            }
        }
    }

    /// Antiderivative of A(t) (one fixed branch; differences of this give
    /// exact ∫ A dt between points that do not straddle the real-axis
    /// envelope window).
    fn potential_primitive(&self, t: Complex64) -> CVec2 {
        let a0 = self.a0();
        let s = self.helicity.sign();
        let w = self.omega;
        match self.envelope {
            Envelope::Flat => {
                let phase = t * w;
                CVec2::new(-a0 * phase.sin() / w, a0 * s * phase.cos() / w)
            }
            Envelope::Cos4 => {
                // cos^4(ωt/4) cos(ωt) = (1/16)[cos 0 + 4cos(ωt/2) + 6cos(ωt)
                //                              + 4cos(3ωt/2) + cos(2ωt)]
                // and the matching sine series for the y component.
                let h = |k: f64| t * (w * k / 2.0);
                let ix = t
                    + 8.0 / w * h(1.0).sin()
                    + 6.0 / w * h(2.0).sin()
                    + 8.0 / (3.0 * w) * h(3.0).sin()
                    + 1.0 / (2.0 * w) * h(4.0).sin();
                let iy = -8.0 / w * h(1.0).cos() - 6.0 / w * h(2.0).cos()
                    - 8.0 / (3.0 * w) * h(3.0).cos()
                    - 1.0 / (2.0 * w) * h(4.0).cos();
                CVec2::new(-a0 / 16.0 * ix, -s * a0 / 16.0 * iy)
            }
        }
    }

    /// Exact ∫_{t0}^{t1} A(ζ) dζ along the straight segment.
    ///
    /// Real segments are clamped to the envelope support (A ≡ 0 outside);
    /// segments with an endpoint off the real axis use the analytic
    /// continuation and must not cross the support boundary.
    pub fn vector_potential_integral(&self, t0: Complex64, t1: Complex64) -> CVec2 {
        if let Some((lo, hi)) = self.envelope_window() {
            if t0.im == 0.0 && t1.im == 0.0 {
                // possibly crossing the support boundary: clamp
                let (a, b, sign) = if t0.re <= t1.re {
                    (t0.re, t1.re, 1.0)
                } else {
                    (t1.re, t0.re, -1.0)
                };
                let a = a.clamp(lo, hi);
                let b = b.clamp(lo, hi);
                if a >= b {
                    return CVec2::zero();
                }
                let p0 = self.potential_primitive(Complex64::new(a, 0.0));
                let p1 = self.potential_primitive(Complex64::new(b, 0.0));
                return p1.sub(p0).scale(Complex64::new(sign, 0.0));
            }
        }
        let p0 = self.potential_primitive(t0);
        let p1 = self.potential_primitive(t1);
        p1.sub(p0)
    }
}

/// Peak field amplitude (a.u.) from cycle-averaged intensity in W/cm².
pub fn intensity_to_field(intensity_wcm2: f64) -> Result<f64, PulseError> {
    if !(intensity_wcm2 > 0.0) {
        return Err(PulseError::NonPositiveIntensity(intensity_wcm2));
    }
    Ok((intensity_wcm2 / INTENSITY_AU_WCM2).sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn flat(f: f64, w: f64) -> PulseSpec {
        PulseSpec::new(f, w, Envelope::Flat, Helicity::Right).unwrap()
    }

    fn cos4(f: f64, w: f64) -> PulseSpec {
        PulseSpec::new(f, w, Envelope::Cos4, Helicity::Right).unwrap()
    }

    #[test]
    fn flat_at_zero_is_minus_a0_x() {
        let p = flat(0.05, 0.05);
        let a = p.vector_potential(c(0.0, 0.0));
        assert_abs_diff_eq!(a.x.re, -1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(a.y.re, 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(a.x.im, 0.0, epsilon = 1e-15);
    }

    #[test]
    fn cos4_vanishes_at_window_edge() {
        let p = cos4(0.05, 0.057);
        let edge = std::f64::consts::TAU / 0.057;
        let a = p.vector_potential(c(edge, 0.0));
        assert_abs_diff_eq!(a.x.norm(), 0.0, epsilon = 1e-12);
        let beyond = p.vector_potential(c(edge + 5.0, 0.0));
        assert_eq!(beyond.x, c(0.0, 0.0));
        assert_eq!(beyond.y, c(0.0, 0.0));
    }

    #[test]
    fn flat_imaginary_time_is_hyperbolic() {
        // cos(iωτ) = cosh(ωτ), sin(iωτ) = i sinh(ωτ)
        let p = flat(0.06, 0.04);
        let tau = 3.7;
        let a = p.vector_potential(c(0.0, tau));
        let a0 = p.a0();
        assert_abs_diff_eq!(a.x.re, -a0 * (0.04 * tau).cosh(), epsilon = 1e-10);
        assert_abs_diff_eq!(a.x.im, 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(a.y.im, -a0 * (0.04 * tau).sinh(), epsilon = 1e-10);
        assert_abs_diff_eq!(a.y.re, 0.0, epsilon = 1e-12);
    }

    #[test]
    fn field_peak_magnitude_is_f() {
        let p = flat(0.0844, 0.05);
        let f = p.electric_field(c(0.0, 0.0));
        let mag = (f.x.norm_sqr() + f.y.norm_sqr()).sqrt();
        assert_abs_diff_eq!(mag, 0.0844, epsilon = 1e-14);
        // right helicity: field along +y at t = 0
        assert_abs_diff_eq!(f.y.re, 0.0844, epsilon = 1e-14);
        assert_abs_diff_eq!(f.x.re, 0.0, epsilon = 1e-14);
    }

    #[test]
    fn electric_field_matches_central_difference() {
        // 20 fixed pseudo-random complex samples, both envelopes
        let samples: Vec<Complex64> = (0..20)
            .map(|k| {
                let a = (k * 2654435761u64 % 1000) as f64 / 1000.0;
                let b = (k * 40503 % 997) as f64 / 997.0;
                c(40.0 * (a - 0.5), 16.0 * (b - 0.3))
            })
            .collect();
        let h = 1e-5;
        for spec in [flat(0.05, 0.0465), cos4(0.05, 0.0465)] {
            for &t in &samples {
                if t.im == 0.0 {
                    continue;
                }
                let f = spec.electric_field(t);
                let ap = spec.vector_potential(t + h);
                let am = spec.vector_potential(t - h);
                let fd_x = -(ap.x - am.x) / (2.0 * h);
                let fd_y = -(ap.y - am.y) / (2.0 * h);
                assert!((f.x - fd_x).norm() < 1e-8, "x component at {t}");
                assert!((f.y - fd_y).norm() < 1e-8, "y component at {t}");
            }
        }
    }

    #[test]
    fn primitive_differentiates_back_to_potential() {
        let h = 1e-5;
        for spec in [flat(0.08, 0.06), cos4(0.08, 0.06)] {
            for &t in &[c(3.0, 0.5), c(-20.0, 4.0), c(55.0, -2.0)] {
                let a = spec.vector_potential(t);
                let ip = spec.potential_primitive(t + h);
                let im_ = spec.potential_primitive(t - h);
                assert!(((ip.x - im_.x) / (2.0 * h) - a.x).norm() < 1e-8);
                assert!(((ip.y - im_.y) / (2.0 * h) - a.y).norm() < 1e-8);
            }
        }
    }

    #[test]
    fn real_axis_integral_clamps_outside_window() {
        let p = cos4(0.05, 0.057);
        let edge = std::f64::consts::TAU / 0.057;
        let inside = p.vector_potential_integral(c(0.0, 0.0), c(edge, 0.0));
        let overshoot = p.vector_potential_integral(c(0.0, 0.0), c(edge + 300.0, 0.0));
        assert!((inside.x - overshoot.x).norm() < 1e-12);
        assert!((inside.y - overshoot.y).norm() < 1e-12);
        // fully outside
        let outside = p.vector_potential_integral(c(edge + 1.0, 0.0), c(edge + 50.0, 0.0));
        assert_eq!(outside.x, c(0.0, 0.0));
    }

    #[test]
    fn left_helicity_flips_y() {
        let r = PulseSpec::new(0.05, 0.05, Envelope::Flat, Helicity::Right).unwrap();
        let l = PulseSpec::new(0.05, 0.05, Envelope::Flat, Helicity::Left).unwrap();
        let t = c(7.0, 0.0);
        let ar = r.vector_potential(t);
        let al = l.vector_potential(t);
        assert_eq!(ar.x, al.x);
        assert_eq!(ar.y, -al.y);
    }

    #[test]
    fn intensity_conversion() {
        assert_abs_diff_eq!(intensity_to_field(3.50945e16).unwrap(), 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(intensity_to_field(1.75e14).unwrap(), 0.0706, epsilon = 1e-4);
        assert_abs_diff_eq!(intensity_to_field(2.5e14).unwrap(), 0.0844, epsilon = 1e-4);
        assert!(intensity_to_field(0.0).is_err());
        assert!(intensity_to_field(-1.0).is_err());
    }
}
