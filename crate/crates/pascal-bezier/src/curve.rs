//! Control polygons and the two point evaluators: the de Casteljau
//! baseline and the Pascal spectral form.
//!
//! A Bézier coordinate of degree `n-1` evaluates as
//! `x(s) = e_n^T P_n G_n(-s) P_n G_n(-1) x`. The inner product
//! `z = P_n G_n(-1) x` is built once per polygon; each sample then costs a
//! single Horner pass of length `n` whose binomial coefficients are folded
//! into the nesting. Control coordinates are kept in a normalized `[0, 1]`
//! frame (Bézier curves commute with translation and uniform scaling), and
//! results are mapped back to the original frame on output.

use crate::error::{Error, Result};
use crate::ops::OpCount;
use crate::pascal::{alternate_signs_in_place, bernstein_product_in_place, pascal_product_in_place};
use crate::toeplitz::BalancedFactorization;

/// Shift/scale pair mapping normalized coordinates back to the original
/// frame: `original = shift + scale * normalized`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Frame {
    pub shift: [f64; 2],
    pub scale: f64,
}

impl Frame {
    pub const IDENTITY: Frame = Frame {
        shift: [0.0, 0.0],
        scale: 1.0,
    };
}

/// Ordered 2-D control points stored in a normalized frame.
#[derive(Clone, Debug, PartialEq)]
pub struct ControlPolygon {
    xs: Vec<f64>,
    ys: Vec<f64>,
    frame: Frame,
}

fn validate_raw(points: &[[f64; 2]]) -> Result<()> {
    if points.len() < 2 {
        return Err(Error::DegreeTooSmall {
            n: points.len(),
            min: 2,
        });
    }
    if points.iter().flatten().any(|x| !x.is_finite()) {
        return Err(Error::NonFinite("control point coordinate"));
    }
    Ok(())
}

impl ControlPolygon {
    /// Min-max normalization: shift by the componentwise minimum, scale by
    /// the larger axis range (1 if the polygon is degenerate). Stored
    /// coordinates land in `[0, 1]`.
    pub fn normalize(points: &[[f64; 2]]) -> Result<Self> {
        validate_raw(points)?;
        let mut min = [f64::INFINITY; 2];
        let mut max = [f64::NEG_INFINITY; 2];
        for p in points {
            for axis in 0..2 {
                min[axis] = min[axis].min(p[axis]);
                max[axis] = max[axis].max(p[axis]);
            }
        }
        let range = (max[0] - min[0]).max(max[1] - min[1]);
        let scale = if range > 0.0 { range } else { 1.0 };
        let xs = points.iter().map(|p| (p[0] - min[0]) / scale).collect();
        let ys = points.iter().map(|p| (p[1] - min[1]) / scale).collect();
        Ok(ControlPolygon {
            xs,
            ys,
            frame: Frame {
                shift: min,
                scale,
            },
        })
    }

    /// Normalization by the spectral norm of the `n x 2` coordinate matrix
    /// (its largest singular value), no shift. For nonnegative input in
    /// `[0, 1]` the stored coordinates stay in `[0, 1]`, since the spectral
    /// norm dominates every entry.
    pub fn normalize_matrix_norm(points: &[[f64; 2]]) -> Result<Self> {
        validate_raw(points)?;
        let (mut xx, mut xy, mut yy) = (0.0f64, 0.0f64, 0.0f64);
        for p in points {
            xx += p[0] * p[0];
            xy += p[0] * p[1];
            yy += p[1] * p[1];
        }
        // Largest eigenvalue of the 2x2 Gram matrix.
        let mean = 0.5 * (xx + yy);
        let det_term = (0.25 * (xx - yy) * (xx - yy) + xy * xy).sqrt();
        let sigma = (mean + det_term).sqrt();
        let scale = if sigma > 0.0 { sigma } else { 1.0 };
        let xs = points.iter().map(|p| p[0] / scale).collect();
        let ys = points.iter().map(|p| p[1] / scale).collect();
        Ok(ControlPolygon {
            xs,
            ys,
            frame: Frame {
                shift: [0.0, 0.0],
                scale,
            },
        })
    }

    /// Wrap coordinates that are already normalized, keeping `frame` for
    /// the output mapping.
    pub fn from_normalized(xs: Vec<f64>, ys: Vec<f64>, frame: Frame) -> Result<Self> {
        if xs.len() != ys.len() {
            return Err(Error::LengthMismatch {
                expected: xs.len(),
                got: ys.len(),
            });
        }
        if xs.len() < 2 {
            return Err(Error::DegreeTooSmall {
                n: xs.len(),
                min: 2,
            });
        }
        Ok(ControlPolygon { xs, ys, frame })
    }

    /// Number of control points (`n`; the curve degree is `n-1`).
    pub fn len(&self) -> usize {
        self.xs.len()
    }

    pub fn is_empty(&self) -> bool {
        false // construction requires at least two points
    }

    /// Normalized x-coordinates.
    pub fn xs(&self) -> &[f64] {
        &self.xs
    }

    /// Normalized y-coordinates.
    pub fn ys(&self) -> &[f64] {
        &self.ys
    }

    pub fn frame(&self) -> Frame {
        self.frame
    }

    /// Map a normalized point back to the original frame.
    pub fn denormalize(&self, p: [f64; 2]) -> [f64; 2] {
        [
            self.frame.shift[0] + self.frame.scale * p[0],
            self.frame.shift[1] + self.frame.scale * p[1],
        ]
    }

    /// Control point `i` in the original frame.
    pub fn original_point(&self, i: usize) -> [f64; 2] {
        self.denormalize([self.xs[i], self.ys[i]])
    }

    /// The polygon with control points in reverse order, same frame. The
    /// reversed curve traces the same locus with `B_r(1-s) = B(s)`.
    pub fn reverse(&self) -> Self {
        let mut xs = self.xs.clone();
        let mut ys = self.ys.clone();
        xs.reverse();
        ys.reverse();
        ControlPolygon {
            xs,
            ys,
            frame: self.frame,
        }
    }
}

fn check_param(s: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&s) || !s.is_finite() {
        return Err(Error::OutOfRange {
            name: "s",
            value: s,
            range: "[0, 1]",
        });
    }
    Ok(())
}

/// One de Casteljau point in the original frame; the reference evaluator.
pub fn casteljau_point(polygon: &ControlPolygon, s: f64) -> Result<[f64; 2]> {
    casteljau_point_counted(polygon, s, &mut OpCount::default())
}

/// Counted form of [`casteljau_point`].
pub fn casteljau_point_counted(
    polygon: &ControlPolygon,
    s: f64,
    ops: &mut OpCount,
) -> Result<[f64; 2]> {
    check_param(s)?;
    let mut bx = polygon.xs.to_vec();
    let mut by = polygon.ys.to_vec();
    bernstein_product_in_place(&mut bx, s, ops);
    bernstein_product_in_place(&mut by, s, ops);
    Ok(polygon.denormalize([bx[bx.len() - 1], by[by.len() - 1]]))
}

/// `sum_j C(n-1, j) u^j c[j]`, i.e. `e_n^T P_n G_n(u) c`, evaluated by a
/// single Horner pass that folds the binomial coefficients into the
/// nesting: `r = c[j] + u * ((n-1-j)/(j+1)) * r`. Curve callers pass
/// `u = -s`.
pub fn horner_binomial_eval(c: &[f64], u: f64) -> f64 {
    assert!(!c.is_empty(), "horner_binomial_eval: empty input");
    let n = c.len();
    let mut r = c[n - 1];
    for j in (0..n - 1).rev() {
        let ratio = (n - 1 - j) as f64 / (j + 1) as f64;
        r = c[j] + u * ratio * r;
    }
    r
}

/// Horner pass with the binomial ratios precomputed (one multiply saved per
/// step and no divisions): `n-1` additions, `2(n-1)` multiplications.
pub(crate) fn horner_with_ratios(c: &[f64], u: f64, ratios: &[f64], ops: &mut OpCount) -> f64 {
    debug_assert_eq!(ratios.len() + 1, c.len());
    let n = c.len();
    let mut r = c[n - 1];
    for j in (0..n - 1).rev() {
        r = c[j] + u * ratios[j] * r;
    }
    ops.adds += (n - 1) as u64;
    ops.muls += 2 * (n - 1) as u64;
    r
}

/// Which Pascal product builds the coefficient vectors.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum MultiplyMode {
    /// Exact bidiagonal sweeps (additions only, error-free on the data
    /// sizes involved). The default: the one-time `O(n^2)` build is
    /// amortized over all sample points.
    #[default]
    ExactBidiagonal,
    /// The `O(n log n)` balanced Toeplitz/FFT route at the optimum `t`.
    FastBalanced,
}

/// The per-polygon coefficient vectors `z = P_n G_n(-1) x` and
/// `w = P_n G_n(-1) y`, plus the cached binomial ratios for the Horner
/// pass. Immutable once built; shareable across threads.
#[derive(Clone, Debug)]
pub struct TransformedCoefficients {
    z: Vec<f64>,
    w: Vec<f64>,
    ratios: Vec<f64>,
    mode: MultiplyMode,
}

fn transform_coordinate(v: &[f64], mode: MultiplyMode, ops: &mut OpCount) -> Result<Vec<f64>> {
    let mut buf = v.to_vec();
    alternate_signs_in_place(&mut buf);
    match mode {
        MultiplyMode::ExactBidiagonal => {
            pascal_product_in_place(&mut buf, ops);
            Ok(buf)
        }
        MultiplyMode::FastBalanced => {
            let fac = BalancedFactorization::new(buf.len())?;
            fac.multiply_counted(&buf, ops)
        }
    }
}

impl TransformedCoefficients {
    /// Build from a polygon's normalized coordinates.
    pub fn build(polygon: &ControlPolygon, mode: MultiplyMode) -> Result<Self> {
        Self::build_counted(polygon, mode, &mut OpCount::default())
    }

    /// Counted form of [`build`](Self::build).
    pub fn build_counted(
        polygon: &ControlPolygon,
        mode: MultiplyMode,
        ops: &mut OpCount,
    ) -> Result<Self> {
        Self::from_vectors_counted(polygon.xs(), polygon.ys(), mode, ops)
    }

    /// Build from raw coordinate vectors (used for conditioned copies).
    pub fn from_vectors(xs: &[f64], ys: &[f64], mode: MultiplyMode) -> Result<Self> {
        Self::from_vectors_counted(xs, ys, mode, &mut OpCount::default())
    }

    pub fn from_vectors_counted(
        xs: &[f64],
        ys: &[f64],
        mode: MultiplyMode,
        ops: &mut OpCount,
    ) -> Result<Self> {
        if xs.len() != ys.len() {
            return Err(Error::LengthMismatch {
                expected: xs.len(),
                got: ys.len(),
            });
        }
        if xs.is_empty() {
            return Err(Error::EmptyInput);
        }
        let n = xs.len();
        let z = transform_coordinate(xs, mode, ops)?;
        let w = transform_coordinate(ys, mode, ops)?;
        let ratios: Vec<f64> = (0..n - 1)
            .map(|j| (n - 1 - j) as f64 / (j + 1) as f64)
            .collect();
        ops.divs += (n - 1) as u64;
        Ok(TransformedCoefficients {
            z,
            w,
            ratios,
            mode,
        })
    }

    pub fn n(&self) -> usize {
        self.z.len()
    }

    pub fn z(&self) -> &[f64] {
        &self.z
    }

    pub fn w(&self) -> &[f64] {
        &self.w
    }

    pub fn mode(&self) -> MultiplyMode {
        self.mode
    }
}

/// One spectral-form point in the normalized frame:
/// `(e_n^T P_n G_n(-s) z, e_n^T P_n G_n(-s) w)`.
pub fn pascal_point(tc: &TransformedCoefficients, s: f64) -> Result<[f64; 2]> {
    pascal_point_counted(tc, s, &mut OpCount::default())
}

/// Counted form of [`pascal_point`].
pub fn pascal_point_counted(
    tc: &TransformedCoefficients,
    s: f64,
    ops: &mut OpCount,
) -> Result<[f64; 2]> {
    check_param(s)?;
    let u = -s;
    Ok([
        horner_with_ratios(&tc.z, u, &tc.ratios, ops),
        horner_with_ratios(&tc.w, u, &tc.ratios, ops),
    ])
}

/// Affine conditioning `T_m(v) = (v + m)/(m + 1)` applied entrywise,
/// pushing coordinates toward 1. Requires `m >= 1`.
pub fn affine_forward(v: &[f64], m: u64) -> Result<Vec<f64>> {
    let mut out = v.to_vec();
    affine_forward_in_place(&mut out, m, &mut OpCount::default())?;
    Ok(out)
}

/// In-place counted form of [`affine_forward`].
pub fn affine_forward_in_place(v: &mut [f64], m: u64, ops: &mut OpCount) -> Result<()> {
    if m < 1 {
        return Err(Error::OutOfRange {
            name: "m",
            value: m as f64,
            range: "[1, inf)",
        });
    }
    let mf = m as f64;
    let denom = mf + 1.0;
    for x in v.iter_mut() {
        *x = (*x + mf) / denom;
    }
    ops.adds += v.len() as u64;
    ops.divs += v.len() as u64;
    Ok(())
}

/// Invert a cascade of conditionings with composed total `m_total`:
/// `value -> (m_total + 1) * value - m_total`.
pub fn affine_inverse(value: f64, m_total: u64) -> f64 {
    let mf = m_total as f64;
    (mf + 1.0) * value - mf
}

/// Composed total of an affine schedule:
/// `T_m . T_m' = T_{(m+1)(m'+1)-1}`, folded over the whole cascade.
pub fn compose_schedule(schedule: &[u64]) -> u64 {
    schedule.iter().fold(1u64, |acc, &m| acc * (m + 1)) - 1
}
