//! Exact angular-momentum algebra: Wigner 3j symbols, Clebsch-Gordan
//! coefficients and Legendre polynomials.
//!
//! Both coupling coefficients use the Racah single-sum formula with exact
//! integer factorials (`f64`-exact up to 22!, far beyond the j ≤ 9/2 design
//! range of this crate), so no arbitrary-precision arithmetic is needed at
//! these momenta. The Condon-Shortley phase convention is used throughout:
//! `C(j,j; j',j'-... )` highest-weight coefficients are positive and
//! `C = (-1)^(j1-j2+M) sqrt(2J+1) * 3j(j1, j2, J; m1, m2, -M)`.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use thiserror::Error;

use crate::numerics::factorial;

/// Exact half-integer quantum number, stored as twice its value.
#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct HalfInt {
    twice: i32,
}

impl HalfInt {
    pub const ZERO: HalfInt = HalfInt { twice: 0 };
    pub const HALF: HalfInt = HalfInt { twice: 1 };
    pub const ONE: HalfInt = HalfInt { twice: 2 };
    pub const THREE_HALVES: HalfInt = HalfInt { twice: 3 };
    pub const TWO: HalfInt = HalfInt { twice: 4 };

    /// Construct from twice the value (3 => 3/2).
    pub const fn from_twice(twice: i32) -> Self {
        HalfInt { twice }
    }

    /// Construct from an integer value.
    pub const fn from_int(n: i32) -> Self {
        HalfInt { twice: 2 * n }
    }

    pub const fn twice(self) -> i32 {
        self.twice
    }

    pub fn value(self) -> f64 {
        self.twice as f64 / 2.0
    }

    pub const fn is_integer(self) -> bool {
        self.twice % 2 == 0
    }

    pub const fn is_negative(self) -> bool {
        self.twice < 0
    }

    /// Valid projection: |m| <= j and m, j of the same (half-)integer kind.
    pub const fn is_projection_of(self, j: HalfInt) -> bool {
        self.twice.abs() <= j.twice && (j.twice - self.twice) % 2 == 0
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.twice % 2 == 0 {
            write!(f, "{}", self.twice / 2)
        } else {
            write!(f, "{}/2", self.twice)
        }
    }
}

impl Add for HalfInt {
    type Output = HalfInt;
    fn add(self, rhs: HalfInt) -> HalfInt {
        HalfInt {
            twice: self.twice + rhs.twice,
        }
    }
}

impl Sub for HalfInt {
    type Output = HalfInt;
    fn sub(self, rhs: HalfInt) -> HalfInt {
        HalfInt {
            twice: self.twice - rhs.twice,
        }
    }
}

impl Neg for HalfInt {
    type Output = HalfInt;
    fn neg(self) -> HalfInt {
        HalfInt { twice: -self.twice }
    }
}

#[derive(Debug, Error, PartialEq)]
pub enum AngularError {
    #[error("angular momentum must be non-negative, got {0}")]
    NegativeJ(HalfInt),
    #[error("projection {m} is not a valid projection of j = {j}")]
    InvalidProjection { j: HalfInt, m: HalfInt },
    #[error("legendre argument {0} outside [-1, 1]")]
    LegendreDomain(f64),
}

fn check_momentum(j: HalfInt, m: HalfInt) -> Result<(), AngularError> {
    if j.is_negative() {
        return Err(AngularError::NegativeJ(j));
    }
    if !m.is_projection_of(j) {
        return Err(AngularError::InvalidProjection { j, m });
    }
    Ok(())
}

/// (-1)^n for a twice-value that must be even.
fn phase_from_twice(twice: i32) -> f64 {
    debug_assert!(twice % 2 == 0);
    if (twice / 2).rem_euclid(2) == 0 {
        1.0
    } else {
        -1.0
    }
}

/// sqrt of the triangle coefficient
/// Δ(abc) = (a+b-c)! (a-b+c)! (-a+b+c)! / (a+b+c+1)!
/// All arguments are twice-values with even pairwise sums.
fn triangle_factor(tj1: i32, tj2: i32, tj3: i32) -> Option<f64> {
    let s1 = (tj1 + tj2 - tj3) / 2;
    let s2 = (tj1 - tj2 + tj3) / 2;
    let s3 = (-tj1 + tj2 + tj3) / 2;
    if s1 < 0 || s2 < 0 || s3 < 0 {
        return None;
    }
    let total = (tj1 + tj2 + tj3) / 2;
    Some(
        (factorial(s1 as u32) * factorial(s2 as u32) * factorial(s3 as u32)
            / factorial((total + 1) as u32))
        .sqrt(),
    )
}

/// The Racah alternating sum shared by the 3j and Clebsch-Gordan formulas.
/// Arguments are plain integers (not twice-values).
fn racah_sum(j1j2_j3: i32, j1_m1: i32, j2pm2: i32, j3_j2pm1: i32, j3_j1_m2: i32) -> f64 {
    let k_min = 0.max(-j3_j2pm1).max(-j3_j1_m2);
    let k_max = j1j2_j3.min(j1_m1).min(j2pm2);
    let mut sum = 0.0;
    for k in k_min..=k_max {
        let den = factorial(k as u32)
            * factorial((j1j2_j3 - k) as u32)
            * factorial((j1_m1 - k) as u32)
            * factorial((j2pm2 - k) as u32)
            * factorial((j3_j2pm1 + k) as u32)
            * factorial((j3_j1_m2 + k) as u32);
        let term = 1.0 / den;
        sum += if k % 2 == 0 { term } else { -term };
    }
    sum
}

/// Wigner 3j symbol (j1 j2 j3; m1 m2 m3).
///
/// Returns exactly 0 when the projection rule m1+m2+m3 = 0, the triangle
/// rule, or the integer-perimeter rule fails. Negative j or mismatched
/// projections are rejected as errors.
pub fn wigner3j(
    j1: HalfInt,
    j2: HalfInt,
    j3: HalfInt,
    m1: HalfInt,
    m2: HalfInt,
    m3: HalfInt,
) -> Result<f64, AngularError> {
    check_momentum(j1, m1)?;
    check_momentum(j2, m2)?;
    check_momentum(j3, m3)?;

    if (m1 + m2 + m3).twice() != 0 {
        return Ok(0.0);
    }
    // j1 + j2 + j3 must be an integer
    if (j1.twice() + j2.twice() + j3.twice()) % 2 != 0 {
        return Ok(0.0);
    }
    let triangle = match triangle_factor(j1.twice(), j2.twice(), j3.twice()) {
        Some(t) => t,
        None => return Ok(0.0),
    };

    let tj1 = j1.twice();
    let tj2 = j2.twice();
    let tj3 = j3.twice();
    let tm1 = m1.twice();
    let tm2 = m2.twice();
    let tm3 = m3.twice();

    let norm = (factorial(((tj1 + tm1) / 2) as u32)
        * factorial(((tj1 - tm1) / 2) as u32)
        * factorial(((tj2 + tm2) / 2) as u32)
        * factorial(((tj2 - tm2) / 2) as u32)
        * factorial(((tj3 + tm3) / 2) as u32)
        * factorial(((tj3 - tm3) / 2) as u32))
    .sqrt();

    let sum = racah_sum(
        (tj1 + tj2 - tj3) / 2,
        (tj1 - tm1) / 2,
        (tj2 + tm2) / 2,
        (tj3 - tj2 + tm1) / 2,
        (tj3 - tj1 - tm2) / 2,
    );

    let phase = phase_from_twice(tj1 - tj2 - tm3);
    Ok(phase * triangle * norm * sum)
}

/// Clebsch-Gordan coefficient C(j1 m1; j2 m2 | J M) in the Condon-Shortley
/// convention. Zero when M != m1 + m2 or the triangle rule fails.
pub fn clebsch_gordan(
    j1: HalfInt,
    m1: HalfInt,
    j2: HalfInt,
    m2: HalfInt,
    j: HalfInt,
    m: HalfInt,
) -> Result<f64, AngularError> {
    check_momentum(j1, m1)?;
    check_momentum(j2, m2)?;
    check_momentum(j, m)?;

    if (m1 + m2).twice() != m.twice() {
        return Ok(0.0);
    }
    if (j1.twice() + j2.twice() + j.twice()) % 2 != 0 {
        return Ok(0.0);
    }
    let triangle = match triangle_factor(j1.twice(), j2.twice(), j.twice()) {
        Some(t) => t,
        None => return Ok(0.0),
    };

    let tj1 = j1.twice();
    let tj2 = j2.twice();
    let tj = j.twice();
    let tm1 = m1.twice();
    let tm2 = m2.twice();
    let tm = m.twice();

    let norm = ((tj + 1) as f64
        * factorial(((tj1 + tm1) / 2) as u32)
        * factorial(((tj1 - tm1) / 2) as u32)
        * factorial(((tj2 + tm2) / 2) as u32)
        * factorial(((tj2 - tm2) / 2) as u32)
        * factorial(((tj + tm) / 2) as u32)
        * factorial(((tj - tm) / 2) as u32))
    .sqrt();

    let sum = racah_sum(
        (tj1 + tj2 - tj) / 2,
        (tj1 - tm1) / 2,
        (tj2 + tm2) / 2,
        (tj - tj2 + tm1) / 2,
        (tj - tj1 - tm2) / 2,
    );

    Ok(triangle * norm * sum)
}

/// Legendre polynomial P_n(x) on [-1, 1] by the three-term recurrence.
pub fn legendre_p(n: u32, x: f64) -> Result<f64, AngularError> {
    if !(-1.0..=1.0).contains(&x) {
        return Err(AngularError::LegendreDomain(x));
    }
    Ok(legendre_p_unchecked(n, x))
}

pub(crate) fn legendre_p_unchecked(n: u32, x: f64) -> f64 {
    match n {
        0 => 1.0,
        1 => x,
        _ => {
            let mut p_prev = 1.0;
            let mut p = x;
            for k in 1..n {
                let k = k as f64;
                let p_next = ((2.0 * k + 1.0) * x * p - k * p_prev) / (k + 1.0);
                p_prev = p;
                p = p_next;
            }
            p
        }
    }
}
