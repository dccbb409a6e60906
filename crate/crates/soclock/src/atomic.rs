//! Radial structure of the ion: STO radial moments, channel core potentials
//! `V_{L J M_J}(r, θ)` and the inter-channel potential difference.
//!
//! The hole-orbital density `|R(r')|²` built from Slater-type orbitals gives
//! the multipole moments
//!
//! ```text
//! R_L(r) = (1/r^{L+1}) ∫_0^r dr' r'^{2+L} |R|²  +  r^L ∫_r^∞ dr' r'^{1-L} |R|²
//! ```
//!
//! assembled from incomplete gamma functions of the pairwise exponents
//! κ_p + κ_q. The channel potential is the closed angular sum over
//! (M_L, M_S, L') with squared Clebsch-Gordan coefficients and two 3j
//! symbols; only even multipoles with M = 0 survive the selection rules, so
//! the angle enters through P_{2L'}(cos θ) alone. For a p-hole pair
//! (J = 3/2, 1/2 at |M_J| = 1/2) the difference collapses to
//! `(1/5) P_2(cos θ) R_2(r)`.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::angular::{clebsch_gordan, legendre_p_unchecked, wigner3j, HalfInt};
use crate::numerics::gamma;

#[derive(Debug, Error)]
pub enum AtomicError {
    #[error("STO exponent must be positive, got {0}")]
    BadExponent(f64),
    #[error("STO principal index must be >= 1")]
    BadPrincipalIndex,
    #[error("STO term list is empty")]
    EmptyTable,
    #[error("STO table norm is {norm}, expected 1 within {tol:e}")]
    NotNormalised { norm: f64, tol: f64 },
    #[error("failed to parse STO record {line:?}: {reason}")]
    Parse { line: String, reason: String },
    #[error("io error reading STO table: {0}")]
    Io(#[from] std::io::Error),
    #[error("radius must be positive, got {0}")]
    BadRadius(f64),
    #[error("ionisation potential must be positive, got {0}")]
    BadIp(f64),
    #[error("J = {j} is not L ± 1/2 for L = {l}")]
    BadJ { l: HalfInt, j: HalfInt },
    #[error("|M_J| = {mj} exceeds J = {j}")]
    BadMj { j: HalfInt, mj: HalfInt },
    #[error("channel pair must hold J = 3/2 (lower) and J = 1/2 (upper) at the same L, |M_J|")]
    BadPair,
    #[error("spin-orbit splitting must be positive, got {0}")]
    BadSplitting(f64),
    #[error("channel file: {0}")]
    ChannelFile(String),
    #[error(transparent)]
    Angular(#[from] crate::angular::AngularError),
}

/// One Slater-type orbital term c · r^{n-1} e^{-κ r}.
#[derive(Copy, Clone, Debug, PartialEq)]
pub struct StoTerm {
    pub coefficient: f64,
    pub exponent: f64,
    pub principal: u32,
}

impl StoTerm {
    pub fn new(coefficient: f64, exponent: f64, principal: u32) -> Result<Self, AtomicError> {
        if !(exponent > 0.0) {
            return Err(AtomicError::BadExponent(exponent));
        }
        if principal == 0 {
            return Err(AtomicError::BadPrincipalIndex);
        }
        Ok(StoTerm {
            coefficient,
            exponent,
            principal,
        })
    }
}

/// Radial hole orbital as an STO expansion with unit one-hole norm
/// ∫ r² |R(r)|² dr = 1.
#[derive(Clone, Debug, PartialEq)]
pub struct StoTable {
    terms: Vec<StoTerm>,
}

const NORM_TOL: f64 = 1e-8;

impl StoTable {
    /// Build a table, enforcing unit norm to 1e-8.
    pub fn new(terms: Vec<StoTerm>) -> Result<Self, AtomicError> {
        if terms.is_empty() {
            return Err(AtomicError::EmptyTable);
        }
        let table = StoTable { terms };
        let norm = table.norm();
        if (norm - 1.0).abs() > NORM_TOL {
            return Err(AtomicError::NotNormalised {
                norm,
                tol: NORM_TOL,
            });
        }
        Ok(table)
    }

    /// Build a table, rescaling the coefficients to unit norm first.
    pub fn normalised(mut terms: Vec<StoTerm>) -> Result<Self, AtomicError> {
        if terms.is_empty() {
            return Err(AtomicError::EmptyTable);
        }
        let raw = StoTable {
            terms: terms.clone(),
        };
        let scale = raw.norm().sqrt();
        for t in &mut terms {
            t.coefficient /= scale;
        }
        StoTable::new(terms)
    }

    pub fn terms(&self) -> &[StoTerm] {
        &self.terms
    }

    /// ∫_0^∞ r² |R(r)|² dr via the complete-gamma closed form.
    pub fn norm(&self) -> f64 {
        let mut s = 0.0;
        for p in &self.terms {
            for q in &self.terms {
                let n = p.principal + q.principal;
                let k = p.exponent + q.exponent;
                s += p.coefficient * q.coefficient * gamma::ln_gamma((n + 1) as f64).exp()
                    / k.powi(n as i32 + 1);
            }
        }
        s
    }

    /// Parse the text format: one `c κ n` record per line, `#` comments.
    pub fn parse(text: &str) -> Result<Self, AtomicError> {
        let mut terms = Vec::new();
        for raw in text.lines() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            if fields.len() != 3 {
                return Err(AtomicError::Parse {
                    line: raw.to_string(),
                    reason: format!("expected 3 fields `c kappa n`, got {}", fields.len()),
                });
            }
            let c: f64 = fields[0].parse().map_err(|e| AtomicError::Parse {
                line: raw.to_string(),
                reason: format!("coefficient: {e}"),
            })?;
            let kappa: f64 = fields[1].parse().map_err(|e| AtomicError::Parse {
                line: raw.to_string(),
                reason: format!("exponent: {e}"),
            })?;
            let n: u32 = fields[2].parse().map_err(|e| AtomicError::Parse {
                line: raw.to_string(),
                reason: format!("principal index: {e}"),
            })?;
            terms.push(StoTerm::new(c, kappa, n)?);
        }
        StoTable::new(terms)
    }

    pub fn load(path: &Path) -> Result<Self, AtomicError> {
        StoTable::parse(&std::fs::read_to_string(path)?)
    }
}

/// Multipole moment R_L(r) of the STO density (atomic units).
///
/// Inner piece: γ(n_p+n_q+L+1, κ_pq r) / (r^{L+1} κ_pq^{n_p+n_q+L+1});
/// outer piece: r^L Γ(n_p+n_q-L, κ_pq r) / κ_pq^{n_p+n_q-L}. These are the
/// unique gamma orders that reproduce the r-weighted density integrals, and
/// they are validated against direct quadrature in the test suite.
pub fn radial_moment(table: &StoTable, l: u32, r: f64) -> Result<f64, AtomicError> {
    if !(r > 0.0) {
        return Err(AtomicError::BadRadius(r));
    }
    let mut total = 0.0;
    for p in table.terms() {
        for q in table.terms() {
            let n = (p.principal + q.principal) as i32;
            let k = p.exponent + q.exponent;
            let c = p.coefficient * q.coefficient;
            let a_inner = (n + l as i32 + 1) as f64;
            let inner = gamma::lower(a_inner, k * r) / (r.powi(l as i32 + 1) * k.powf(a_inner));
            let a_outer = (n - l as i32) as f64;
            let outer = r.powi(l as i32) * gamma::upper(a_outer, k * r) / k.powf(a_outer);
            total += c * (inner + outer);
        }
    }
    Ok(total)
}

/// Radial source for the multipole moments entering the channel potential.
#[derive(Clone, Debug)]
pub enum MultipoleModel {
    /// Large-r forms: monopole Q/r and ⟨R_{2L'}⟩ / r^{2L'+1} from the given
    /// asymptotic constants, keyed by 2L'.
    Asymptotic(BTreeMap<u32, f64>),
    /// Full STO radial moments (validation mode).
    Sto(StoTable),
}

impl MultipoleModel {
    /// Kr-style single anisotropy constant ⟨R₂⟩.
    pub fn asymptotic_r2(r2: f64) -> Self {
        let mut map = BTreeMap::new();
        map.insert(2, r2);
        MultipoleModel::Asymptotic(map)
    }

    /// R_{2L'}(r); `q` scales the monopole only.
    fn radial(&self, two_lp: u32, q: f64, r: f64) -> Result<f64, AtomicError> {
        if !(r > 0.0) {
            return Err(AtomicError::BadRadius(r));
        }
        match self {
            MultipoleModel::Asymptotic(map) => {
                if two_lp == 0 {
                    return Ok(q / r);
                }
                let c = map.get(&two_lp).copied().unwrap_or(0.0);
                Ok(c / r.powi(two_lp as i32 + 1))
            }
            MultipoleModel::Sto(table) => {
                let m = radial_moment(table, two_lp, r)?;
                Ok(if two_lp == 0 { q * m } else { m })
            }
        }
    }
}

/// One ionisation channel: the residual ion state and its long-range data.
#[derive(Copy, Clone, Debug, PartialEq)]
pub struct ChannelSpec {
    /// Hole orbital momentum L (integer-valued).
    pub l: HalfInt,
    /// Total angular momentum J = L ± 1/2.
    pub j: HalfInt,
    /// Projection M_J.
    pub m_j: HalfInt,
    /// Ionisation potential (hartree).
    pub ip: f64,
    /// Long-range core charge Q (1 for a singly charged ion).
    pub q: f64,
    /// Asymptotic quadrupole constant ⟨R₂⟩ (a.u.).
    pub r2: f64,
}

impl ChannelSpec {
    pub fn new(
        l: HalfInt,
        j: HalfInt,
        m_j: HalfInt,
        ip: f64,
        q: f64,
        r2: f64,
    ) -> Result<Self, AtomicError> {
        if l.is_negative() || !l.is_integer() {
            return Err(AtomicError::BadJ { l, j });
        }
        if j != l + HalfInt::HALF && (l == HalfInt::ZERO || j != l - HalfInt::HALF) {
            return Err(AtomicError::BadJ { l, j });
        }
        if !m_j.is_projection_of(j) {
            return Err(AtomicError::BadMj { j, mj: m_j });
        }
        if !(ip > 0.0) {
            return Err(AtomicError::BadIp(ip));
        }
        Ok(ChannelSpec {
            l,
            j,
            m_j,
            ip,
            q,
            r2,
        })
    }
}

/// JSON record for a channel file.
#[derive(Debug, Serialize, Deserialize)]
pub struct ChannelRecord {
    #[serde(rename = "L")]
    pub l: i32,
    #[serde(rename = "J2")]
    pub j2: i32,
    #[serde(rename = "MJ2")]
    pub mj2: i32,
    #[serde(rename = "Ip_hartree")]
    pub ip_hartree: f64,
    #[serde(rename = "Q")]
    pub q: f64,
    #[serde(rename = "R2_au")]
    pub r2_au: f64,
}

impl ChannelRecord {
    pub fn to_spec(&self) -> Result<ChannelSpec, AtomicError> {
        ChannelSpec::new(
            HalfInt::from_int(self.l),
            HalfInt::from_twice(self.j2),
            HalfInt::from_twice(self.mj2),
            self.ip_hartree,
            self.q,
            self.r2_au,
        )
    }
}

/// Spin-orbit split channel pair: J = 3/2 below J = 1/2 by ΔE_SO.
#[derive(Copy, Clone, Debug, PartialEq)]
pub struct ChannelPair {
    lower: ChannelSpec,
    upper: ChannelSpec,
    de_so: f64,
}

impl ChannelPair {
    pub fn new(lower: ChannelSpec, upper: ChannelSpec) -> Result<Self, AtomicError> {
        if lower.j != HalfInt::THREE_HALVES
            || upper.j != HalfInt::HALF
            || lower.l != upper.l
            || lower.m_j.twice().abs() != upper.m_j.twice().abs()
        {
            return Err(AtomicError::BadPair);
        }
        let de_so = upper.ip - lower.ip;
        if !(de_so > 0.0) {
            return Err(AtomicError::BadSplitting(de_so));
        }
        Ok(ChannelPair {
            lower,
            upper,
            de_so,
        })
    }

    /// J = 3/2 channel (shallower, ground ionic state).
    pub fn lower(&self) -> &ChannelSpec {
        &self.lower
    }

    /// J = 1/2 channel (deeper by ΔE_SO).
    pub fn upper(&self) -> &ChannelSpec {
        &self.upper
    }

    /// ΔE_SO = Ip(J=1/2) - Ip(J=3/2) (hartree).
    pub fn de_so(&self) -> f64 {
        self.de_so
    }

    /// Average ionisation potential used for the shared trajectory.
    pub fn ip_mean(&self) -> f64 {
        0.5 * (self.lower.ip + self.upper.ip)
    }

    /// Load from a JSON file {"lower": {...}, "upper": {...}}.
    pub fn load(path: &Path) -> Result<Self, AtomicError> {
        #[derive(Deserialize)]
        struct PairFile {
            lower: ChannelRecord,
            upper: ChannelRecord,
        }
        let text = std::fs::read_to_string(path)?;
        let raw: PairFile =
            serde_json::from_str(&text).map_err(|e| AtomicError::ChannelFile(e.to_string()))?;
        ChannelPair::new(raw.lower.to_spec()?, raw.upper.to_spec()?)
    }
}

/// Channel core potential V_{L J M_J}(r, θ) from the closed angular sum,
/// including the L' = 0 Coulomb monopole. θ is measured from the laser
/// propagation direction.
pub fn channel_potential(
    ch: &ChannelSpec,
    multipoles: &MultipoleModel,
    r: f64,
    theta: f64,
) -> Result<f64, AtomicError> {
    if !(r > 0.0) {
        return Err(AtomicError::BadRadius(r));
    }
    let l = ch.l;
    let tl = l.twice() / 2; // integer L
    let half = HalfInt::HALF;
    let cos_t = theta.cos();

    let mut v = 0.0;
    for lp in 0..=tl {
        let two_lp = (2 * lp) as u32;
        let parity_3j = wigner3j(
            l,
            HalfInt::from_int(2 * lp),
            l,
            HalfInt::ZERO,
            HalfInt::ZERO,
            HalfInt::ZERO,
        )?;
        if parity_3j == 0.0 {
            continue;
        }
        let mut angular_sum = 0.0;
        for tm_l in (-l.twice()..=l.twice()).step_by(2) {
            let m_l = HalfInt::from_twice(tm_l);
            for tm_s in [-1i32, 1] {
                let m_s = HalfInt::from_twice(tm_s);
                let cg = clebsch_gordan(l, m_l, half, m_s, ch.j, ch.m_j)?;
                if cg == 0.0 {
                    continue;
                }
                let w3 = wigner3j(l, HalfInt::from_int(2 * lp), l, m_l, HalfInt::ZERO, -m_l)?;
                let sign = if (tm_l / 2).rem_euclid(2) == 0 {
                    1.0
                } else {
                    -1.0
                };
                angular_sum += sign * cg * cg * w3;
            }
        }
        let radial = multipoles.radial(two_lp, ch.q, r)?;
        v += (l.twice() + 1) as f64
            * angular_sum
            * parity_3j
            * legendre_p_unchecked(two_lp, cos_t)
            * radial;
    }
    Ok(v)
}

/// Inter-channel potential difference ΔU^d(r, θ) for a p-hole pair:
/// V_{1,3/2,1/2} - V_{1,1/2,1/2} = (1/5) P₂(cos θ) R₂(r). The L' = 0
/// monopole cancels identically between the channels.
pub fn potential_difference(
    pair: &ChannelPair,
    multipoles: &MultipoleModel,
    r: f64,
    theta: f64,
) -> Result<f64, AtomicError> {
    if !(r > 0.0) {
        return Err(AtomicError::BadRadius(r));
    }
    if pair.lower.l != HalfInt::ONE || pair.lower.m_j.twice().abs() != 1 {
        return Err(AtomicError::BadPair);
    }
    let r2 = multipoles.radial(2, pair.lower.q, r)?;
    Ok(0.2 * legendre_p_unchecked(2, theta.cos()) * r2)
}
