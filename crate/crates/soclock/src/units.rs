//! Unit conversions between Hartree atomic units and laboratory units.

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Electron volts per hartree.
pub const EV_PER_HARTREE: f64 = 27.211386;

/// Attoseconds per atomic unit of time.
pub const AS_PER_AU_TIME: f64 = 24.18884;

/// Atomic unit of intensity in W/cm²: I = INTENSITY_AU_WCM2 · F².
pub const INTENSITY_AU_WCM2: f64 = 3.50945e16;

/// ω(a.u.) = NM_OMEGA / λ(nm).
pub const NM_OMEGA: f64 = 45.5634;

/// Speed of light in atomic units (inverse fine-structure constant).
pub const SPEED_OF_LIGHT_AU: f64 = 137.035999;

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Unit {
    Hartree,
    ElectronVolt,
    AuTime,
    Attosecond,
    Femtosecond,
    AuField,
    WattPerCm2,
    Nanometer,
    AuFrequency,
}

#[derive(Debug, Error, PartialEq)]
pub enum UnitError {
    #[error("no conversion defined from {from:?} to {to:?}")]
    UnknownPair { from: Unit, to: Unit },
    #[error("value {0} out of domain for this conversion")]
    Domain(f64),
}

/// Convert `x` between unit pairs within the same dimension group:
/// energy {hartree, eV}, time {a.u., as, fs}, field {a.u., W/cm²} and
/// wavelength/frequency {nm, a.u.}.
pub fn convert_units(x: f64, from: Unit, to: Unit) -> Result<f64, UnitError> {
    use Unit::*;
    if from == to {
        return Ok(x);
    }
    match (from, to) {
        (Hartree, ElectronVolt) => Ok(x * EV_PER_HARTREE),
        (ElectronVolt, Hartree) => Ok(x / EV_PER_HARTREE),

        (AuTime, Attosecond) => Ok(x * AS_PER_AU_TIME),
        (Attosecond, AuTime) => Ok(x / AS_PER_AU_TIME),
        (AuTime, Femtosecond) => Ok(x * AS_PER_AU_TIME * 1e-3),
        (Femtosecond, AuTime) => Ok(x / (AS_PER_AU_TIME * 1e-3)),
        (Attosecond, Femtosecond) => Ok(x * 1e-3),
        (Femtosecond, Attosecond) => Ok(x * 1e3),

        (AuField, WattPerCm2) => Ok(x * x * INTENSITY_AU_WCM2),
        (WattPerCm2, AuField) => {
            if x <= 0.0 {
                return Err(UnitError::Domain(x));
            }
            Ok((x / INTENSITY_AU_WCM2).sqrt())
        }

        (Nanometer, AuFrequency) => {
            if x <= 0.0 {
                return Err(UnitError::Domain(x));
            }
            Ok(NM_OMEGA / x)
        }
        (AuFrequency, Nanometer) => {
            if x <= 0.0 {
                return Err(UnitError::Domain(x));
            }
            Ok(NM_OMEGA / x)
        }

        _ => Err(UnitError::UnknownPair { from, to }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn quoted_conversions() {
        assert_relative_eq!(
            convert_units(0.665, Unit::ElectronVolt, Unit::Hartree).unwrap(),
            0.024438,
            max_relative = 1e-4
        );
        assert_relative_eq!(
            convert_units(1.0, Unit::AuTime, Unit::Attosecond).unwrap(),
            24.18884,
            max_relative = 1e-12
        );
        assert_relative_eq!(
            convert_units(800.0, Unit::Nanometer, Unit::AuFrequency).unwrap(),
            0.056954,
            max_relative = 1e-4
        );
    }

    #[test]
    fn field_intensity_roundtrip() {
        let f = convert_units(2.5e14, Unit::WattPerCm2, Unit::AuField).unwrap();
        assert_relative_eq!(f, 0.0844, max_relative = 1e-3);
        let back = convert_units(f, Unit::AuField, Unit::WattPerCm2).unwrap();
        assert_relative_eq!(back, 2.5e14, max_relative = 1e-12);
    }

    #[test]
    fn unknown_pair_is_error() {
        assert_eq!(
            convert_units(1.0, Unit::Hartree, Unit::Nanometer),
            Err(UnitError::UnknownPair {
                from: Unit::Hartree,
                to: Unit::Nanometer
            })
        );
    }
}
