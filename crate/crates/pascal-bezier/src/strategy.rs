//! Evaluation strategies over a parameter grid.
//!
//! The single-polynomial spectral form loses accuracy as `s` approaches 1
//! once the coefficient magnitudes (around `2^n`) outgrow the double
//! mantissa. Two stabilizations push the usable degree up:
//!
//! * reverse split — evaluate the curve directly for `s <= 1/2` and the
//!   reversed polygon at `1-s` for the rest, so the Horner pass never sees
//!   `s` near 1;
//! * piecewise with affine conditioning — split at 1/3 and 2/3, and in the
//!   middle region evaluate a conditioned copy of the coordinates
//!   (`T_m(v) = (v+m)/(m+1)`, applied as a cascade) whose transformed
//!   curve hugs the constant 1, then invert the transform per sample.
//!
//! [`default_strategy`] picks among them by degree, with the cascade
//! schedules that keep each range stable. Grid evaluation is data-parallel
//! under the `parallel` feature; points are pure functions of the inputs,
//! so results and operation counts are identical under any scheduling.

use crate::curve::{
    affine_forward_in_place, affine_inverse, casteljau_point_counted, compose_schedule,
    pascal_point_counted, ControlPolygon, MultiplyMode, TransformedCoefficients,
};
use crate::error::{Error, Result};
use crate::exec;
use crate::ops::OpCount;

/// Largest point count the strategy table has been validated against.
pub const VALIDATED_MAX_POINTS: usize = 64;

/// The evaluation pipelines.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StrategyKind {
    Casteljau,
    PascalSingle,
    PascalReverseSplit,
    PascalPiecewiseAffine,
}

/// An evaluation strategy: the pipeline plus its split points and, for the
/// piecewise pipeline, the affine conditioning cascade.
#[derive(Clone, Debug, PartialEq)]
pub struct EvalStrategy {
    kind: StrategyKind,
    split_points: Vec<f64>,
    affine_schedule: Vec<u64>,
}

impl EvalStrategy {
    pub fn casteljau() -> Self {
        EvalStrategy {
            kind: StrategyKind::Casteljau,
            split_points: Vec::new(),
            affine_schedule: Vec::new(),
        }
    }

    pub fn pascal_single() -> Self {
        EvalStrategy {
            kind: StrategyKind::PascalSingle,
            split_points: Vec::new(),
            affine_schedule: Vec::new(),
        }
    }

    /// Direct evaluation for `s <= 1/2`, reversed polygon at `1-s` beyond.
    pub fn reverse_split() -> Self {
        EvalStrategy {
            kind: StrategyKind::PascalReverseSplit,
            split_points: vec![0.5],
            affine_schedule: Vec::new(),
        }
    }

    /// Piecewise evaluation split at 1/3 and 2/3 with the given affine
    /// cascade (each entry is an `m >= 1`) conditioning the middle region.
    pub fn piecewise_affine(schedule: Vec<u64>) -> Result<Self> {
        if schedule.is_empty() {
            return Err(Error::EmptyInput);
        }
        if let Some(&bad) = schedule.iter().find(|&&m| m < 1) {
            return Err(Error::OutOfRange {
                name: "m",
                value: bad as f64,
                range: "[1, inf)",
            });
        }
        Ok(EvalStrategy {
            kind: StrategyKind::PascalPiecewiseAffine,
            split_points: vec![1.0 / 3.0, 2.0 / 3.0],
            affine_schedule: schedule,
        })
    }

    pub fn kind(&self) -> StrategyKind {
        self.kind
    }

    pub fn split_points(&self) -> &[f64] {
        &self.split_points
    }

    pub fn affine_schedule(&self) -> &[u64] {
        &self.affine_schedule
    }

    /// Stable identifier used in reports.
    pub fn name(&self) -> &'static str {
        match self.kind {
            StrategyKind::Casteljau => "casteljau",
            StrategyKind::PascalSingle => "pascal-single",
            StrategyKind::PascalReverseSplit => "pascal-reverse-split",
            StrategyKind::PascalPiecewiseAffine => "pascal-piecewise-affine",
        }
    }
}

/// The affine cascade used for `n` points under the piecewise strategy:
/// two passes of `m+1 = 2^15`, plus `m+1 = 2^10` from 55 points on, plus
/// `m+1 = 4` from 60 on. Above [`VALIDATED_MAX_POINTS`] the 64-point
/// schedule is reused.
pub fn affine_schedule_for(n: usize) -> Vec<u64> {
    let mut schedule = vec![32767, 32767];
    if n >= 55 {
        schedule.push(1023);
    }
    if n >= 60 {
        schedule.push(3);
    }
    schedule
}

/// Strategy by point count: single polynomial through 31 points, reverse
/// split through 41, piecewise affine beyond. Rejects `n < 2`.
pub fn default_strategy(n: usize) -> Result<EvalStrategy> {
    if n < 2 {
        return Err(Error::DegreeTooSmall { n, min: 2 });
    }
    Ok(if n <= 31 {
        EvalStrategy::pascal_single()
    } else if n <= 41 {
        EvalStrategy::reverse_split()
    } else {
        EvalStrategy::piecewise_affine(affine_schedule_for(n))?
    })
}

/// Curve samples in the original (denormalized) frame.
#[derive(Clone, Debug, PartialEq)]
pub struct CurveSamples {
    /// Strictly increasing parameters in `[0, 1]`.
    pub params: Vec<f64>,
    /// `points[i]` is the curve at `params[i]`.
    pub points: Vec<[f64; 2]>,
}

/// Samples plus the operations spent producing them (coefficient builds
/// included).
#[derive(Clone, Debug)]
pub struct CurveEvaluation {
    pub samples: CurveSamples,
    pub ops: OpCount,
}

/// The exact grid `s = i / 2^log2_den`, `i = 0..=2^log2_den`.
///
/// Every point is a dyadic rational, hence exactly representable; so is
/// `1 - s`, which the split strategies rely on.
pub fn power_of_two_grid(log2_den: u32) -> Vec<f64> {
    let den = 1u64 << log2_den;
    (0..=den).map(|i| i as f64 / den as f64).collect()
}

fn validate_grid(grid: &[f64]) -> Result<()> {
    for (i, &s) in grid.iter().enumerate() {
        if !s.is_finite() || !(0.0..=1.0).contains(&s) {
            return Err(Error::InvalidGrid);
        }
        if i > 0 && s <= grid[i - 1] {
            return Err(Error::InvalidGrid);
        }
    }
    Ok(())
}

fn map_grid<F>(grid: &[f64], eval: F) -> (Vec<[f64; 2]>, OpCount)
where
    F: Fn(f64) -> ([f64; 2], OpCount) + Sync + Send,
{
    let evaluated = exec::map_slice(grid, |&s| eval(s));
    let mut points = Vec::with_capacity(evaluated.len());
    let mut ops = OpCount::ZERO;
    for (pt, c) in evaluated {
        points.push(pt);
        ops += c;
    }
    (points, ops)
}

/// Evaluate a curve over a sorted grid with the given strategy, returning
/// samples in the original frame together with the total operation count.
///
/// Spectral coefficients are built once (per orientation/conditioning) with
/// `mode` and shared by every sample.
pub fn evaluate_curve(
    polygon: &ControlPolygon,
    strategy: &EvalStrategy,
    grid: &[f64],
    mode: MultiplyMode,
) -> Result<CurveEvaluation> {
    validate_grid(grid)?;
    let mut build_ops = OpCount::default();

    let (points, point_ops) = match strategy.kind {
        StrategyKind::Casteljau => map_grid(grid, |s| {
            let mut ops = OpCount::default();
            let pt = casteljau_point_counted(polygon, s, &mut ops)
                .expect("validated grid parameter");
            (pt, ops)
        }),
        StrategyKind::PascalSingle => {
            let tc = TransformedCoefficients::build_counted(polygon, mode, &mut build_ops)?;
            map_grid(grid, |s| {
                let mut ops = OpCount::default();
                let pt = pascal_point_counted(&tc, s, &mut ops)
                    .expect("validated grid parameter");
                (polygon.denormalize(pt), ops)
            })
        }
        StrategyKind::PascalReverseSplit => {
            let tc = TransformedCoefficients::build_counted(polygon, mode, &mut build_ops)?;
            let reversed = polygon.reverse();
            let tc_rev =
                TransformedCoefficients::build_counted(&reversed, mode, &mut build_ops)?;
            map_grid(grid, |s| {
                let mut ops = OpCount::default();
                let pt = if s <= 0.5 {
                    pascal_point_counted(&tc, s, &mut ops)
                } else {
                    pascal_point_counted(&tc_rev, 1.0 - s, &mut ops)
                }
                .expect("validated grid parameter");
                (polygon.denormalize(pt), ops)
            })
        }
        StrategyKind::PascalPiecewiseAffine => {
            let tc = TransformedCoefficients::build_counted(polygon, mode, &mut build_ops)?;
            let reversed = polygon.reverse();
            let tc_rev =
                TransformedCoefficients::build_counted(&reversed, mode, &mut build_ops)?;

            let mut xs = polygon.xs().to_vec();
            let mut ys = polygon.ys().to_vec();
            for &m in &strategy.affine_schedule {
                affine_forward_in_place(&mut xs, m, &mut build_ops)?;
                affine_forward_in_place(&mut ys, m, &mut build_ops)?;
            }
            let tc_mid =
                TransformedCoefficients::from_vectors_counted(&xs, &ys, mode, &mut build_ops)?;
            let m_total = compose_schedule(&strategy.affine_schedule);

            let lo = 1.0 / 3.0;
            let hi = 2.0 / 3.0;
            map_grid(grid, |s| {
                let mut ops = OpCount::default();
                let pt = if s <= lo {
                    pascal_point_counted(&tc, s, &mut ops).expect("validated grid parameter")
                } else if s < hi {
                    let conditioned =
                        pascal_point_counted(&tc_mid, s, &mut ops).expect("validated grid");
                    ops.adds += 2;
                    ops.muls += 2;
                    [
                        affine_inverse(conditioned[0], m_total),
                        affine_inverse(conditioned[1], m_total),
                    ]
                } else {
                    pascal_point_counted(&tc_rev, 1.0 - s, &mut ops)
                        .expect("validated grid parameter")
                };
                (polygon.denormalize(pt), ops)
            })
        }
    };

    Ok(CurveEvaluation {
        samples: CurveSamples {
            params: grid.to_vec(),
            points,
        },
        ops: build_ops + point_ops,
    })
}
