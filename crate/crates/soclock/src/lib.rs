//! Spin-orbit Larmor clock for ionisation delays.
//!
//! The crate computes strong-field and one-photon ionisation time delays read
//! off the spin-orbit interferometer of a noble-gas ion:
//!
//! * [`angular`] — exact Wigner 3j / Clebsch-Gordan algebra and Legendre
//!   polynomials used by the channel potentials and pump-probe amplitudes.
//! * [`atomic`] — STO radial moments, channel core potentials
//!   `V_{L J M_J}(r, θ)` and the inter-channel potential difference.
//! * [`pulse`] — circularly polarised laser pulse, evaluable at complex time.
//! * [`saddle`] — Volkov action, complex saddle-point times `t_s`, the Keldysh
//!   tunnelling time, the characteristic momentum `p0` and the exit coordinate.
//! * [`armphase`] — contour phase integrals along complex trajectories, the
//!   channel phase differences `Δφ^c_13`, `Δφ^d_13`, the spin-orbit channel
//!   phase `ξ_SO` and their closed tunnelling-limit forms.
//! * [`clock`] — interferometer rotation angles and the delay extraction
//!   `τ_SI = −Δφ^c_13/ΔE_SO`, `τ_eh = −Δφ^d_13/ΔE_SO`.
//! * [`pumpprobe`] — pump-probe pathway amplitudes, the population modulation
//!   `w(τ)` and least-squares phase recovery.
//! * [`units`] — atomic-unit conversions.
//!
//! All quantities are in Hartree atomic units unless stated otherwise.

pub mod angular;
pub mod armphase;
pub mod atomic;
pub mod clock;
pub mod numerics;
pub mod pulse;
pub mod pumpprobe;
pub mod saddle;
pub mod units;

pub use angular::HalfInt;
pub use atomic::{ChannelPair, ChannelSpec};
pub use pulse::{Envelope, Helicity, PulseSpec};
pub use saddle::SaddleSolution;
