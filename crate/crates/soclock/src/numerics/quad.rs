//! Adaptive Gauss-Kronrod quadrature along straight segments in the complex
//! plane.
//!
//! The integrands produced by the trajectory machinery are analytic away from
//! the branch points of the complex radius, so plain G7/K15 panels with
//! worst-first bisection converge rapidly. All decisions are made on `f64`
//! comparisons in a fixed order, which keeps results bit-reproducible.

use num_complex::Complex64;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum QuadError {
    #[error(
        "quadrature did not reach tolerance {requested:e}: achieved {achieved:e} with {panels} panels"
    )]
    NonConvergence {
        requested: f64,
        achieved: f64,
        panels: usize,
    },
}

/// Abscissae of the 15-point Kronrod rule on [-1, 1]; odd entries are the
/// embedded 7-point Gauss nodes.
#[allow(clippy::excessive_precision)]
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_838_258_730,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.000_000_000_000_000_000_000_000_000_000_000,
];

#[allow(clippy::excessive_precision)]
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

#[allow(clippy::excessive_precision)]
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];

/// One G7/K15 evaluation on the straight segment from `a` to `b`.
/// Returns the Kronrod estimate and the |K15 - G7| error estimate.
fn gk15<F>(f: &mut F, a: Complex64, b: Complex64) -> (Complex64, f64)
where
    F: FnMut(Complex64) -> Complex64,
{
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);

    let f_center = f(center);
    let mut kronrod = WGK[7] * f_center;
    let mut gauss = WG[3] * f_center;

    for j in 0..7 {
        let x = XGK[j];
        let f_lo = f(center - half * x);
        let f_hi = f(center + half * x);
        let sum = f_lo + f_hi;
        kronrod += WGK[j] * sum;
        if j % 2 == 1 {
            gauss += WG[j / 2] * sum;
        }
    }

    let value = kronrod * half;
    let err = ((kronrod - gauss) * half).norm();
    (value, err)
}

/// Integrate `f` along the straight segment `a -> b` to absolute tolerance
/// `tol`, bisecting the panel with the largest error estimate first.
pub fn integrate_segment<F>(
    mut f: F,
    a: Complex64,
    b: Complex64,
    tol: f64,
    max_panels: usize,
) -> Result<Complex64, QuadError>
where
    F: FnMut(Complex64) -> Complex64,
{
    if a == b {
        return Ok(Complex64::new(0.0, 0.0));
    }

    struct Panel {
        a: Complex64,
        b: Complex64,
        value: Complex64,
        err: f64,
    }

    let (value, err) = gk15(&mut f, a, b);
    let mut panels = vec![Panel { a, b, value, err }];

    loop {
        let total_err: f64 = panels.iter().map(|p| p.err).sum();
        if total_err <= tol {
            return Ok(panels.iter().map(|p| p.value).sum());
        }
        if panels.len() >= max_panels {
            return Err(QuadError::NonConvergence {
                requested: tol,
                achieved: total_err,
                panels: panels.len(),
            });
        }

        // worst panel; first index wins ties so the refinement order is fixed
        let mut worst = 0;
        for (i, p) in panels.iter().enumerate() {
            if p.err > panels[worst].err {
                worst = i;
            }
        }

        let Panel { a, b, .. } = panels[worst];
        let mid = 0.5 * (a + b);
        let (v1, e1) = gk15(&mut f, a, mid);
        let (v2, e2) = gk15(&mut f, mid, b);
        panels[worst] = Panel {
            a,
            b: mid,
            value: v1,
            err: e1,
        };
        panels.push(Panel {
            a: mid,
            b,
            value: v2,
            err: e2,
        });
    }
}

/// Integrate along a polyline through `points`, each leg to tolerance `tol`.
pub fn integrate_polyline<F>(
    mut f: F,
    points: &[Complex64],
    tol: f64,
    max_panels: usize,
) -> Result<Complex64, QuadError>
where
    F: FnMut(Complex64) -> Complex64,
{
    let mut total = Complex64::new(0.0, 0.0);
    for pair in points.windows(2) {
        total += integrate_segment(&mut f, pair[0], pair[1], tol, max_panels)?;
    }
    Ok(total)
}
