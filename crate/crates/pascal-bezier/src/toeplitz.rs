//! Fast multiplication by the lower triangular Toeplitz factor `T_n(t)` via
//! circulant embedding, and the balanced Pascal product built from it.
//!
//! `T_n(t)` is fully described by its first column `c_i = t^i/i!`. Embedding
//! that column in a circulant of power-of-two size `m >= 2n-1` turns the
//! product into pointwise multiplication between DFTs, so one multiply
//! costs `O(m log m)`. The column DFT and the twiddle tables are
//! precomputed once per `(n, t)` and shared by every subsequent multiply
//! (and by both coordinates of a curve), so the per-product cost is the two
//! transforms plus the pointwise pass.

use num_complex::Complex64;

use crate::balancing::{scaling_diagonals, BalanceParameter};
use crate::error::{Error, Result};
use crate::fft::{fft_in_place, twiddles};
use crate::ops::OpCount;

/// Precomputed spectrum of the circulant embedding of `T_n(t)`.
#[derive(Clone, Debug)]
pub struct ToeplitzSpectrum {
    n: usize,
    t: f64,
    m: usize,
    column_dft: Vec<Complex64>,
    twiddles: Vec<Complex64>,
}

impl ToeplitzSpectrum {
    /// Build the spectrum for `T_n(t)`.
    ///
    /// The column entries follow the recurrence `c_0 = 1`,
    /// `c_i = c_{i-1} * (t/i)` — no explicit factorials. The embedding size
    /// is the smallest power of two at least `2n-1`.
    pub fn new(n: usize, t: f64) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyInput);
        }
        if !t.is_finite() {
            return Err(Error::NonFinite("t"));
        }
        let m = (2 * n - 1).next_power_of_two();
        let tw = twiddles(m);
        let mut column = vec![Complex64::new(0.0, 0.0); m];
        let mut c = 1.0;
        column[0] = Complex64::new(1.0, 0.0);
        for i in 1..n {
            c *= t / i as f64;
            column[i] = Complex64::new(c, 0.0);
        }
        fft_in_place(&mut column, &tw, false, &mut OpCount::default());
        Ok(ToeplitzSpectrum {
            n,
            t,
            m,
            column_dft: column,
            twiddles: tw,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn t(&self) -> f64 {
        self.t
    }

    /// Embedding size (power of two, `>= 2n-1`).
    pub fn embedding_size(&self) -> usize {
        self.m
    }

    pub fn column_dft(&self) -> &[Complex64] {
        &self.column_dft
    }

    /// `T_n(t) * v`.
    pub fn multiply(&self, v: &[f64]) -> Result<Vec<f64>> {
        self.multiply_counted(v, &mut OpCount::default())
            .map(|(out, _)| out)
    }

    /// `T_n(t) * v`, tallying flops and reporting the largest imaginary
    /// residue discarded when reading back the real result.
    pub fn multiply_counted(&self, v: &[f64], ops: &mut OpCount) -> Result<(Vec<f64>, f64)> {
        if v.len() != self.n {
            return Err(Error::LengthMismatch {
                expected: self.n,
                got: v.len(),
            });
        }
        let mut buf = vec![Complex64::new(0.0, 0.0); self.m];
        for (slot, &x) in buf.iter_mut().zip(v) {
            *slot = Complex64::new(x, 0.0);
        }
        fft_in_place(&mut buf, &self.twiddles, false, ops);
        for (x, &f) in buf.iter_mut().zip(&self.column_dft) {
            *x *= f;
        }
        ops.muls += 4 * self.m as u64;
        ops.adds += 2 * self.m as u64;
        fft_in_place(&mut buf, &self.twiddles, true, ops);

        let mut out = Vec::with_capacity(self.n);
        let mut residue = 0.0f64;
        for x in &buf[..self.n] {
            out.push(x.re);
            residue = residue.max(x.im.abs());
        }
        Ok((out, residue))
    }
}

/// The balanced factorization `P_n = D_n(t) T_n(t) D_n(t)^-1` with every
/// `t`-dependent piece precomputed.
///
/// Immutable after construction and freely shareable across threads.
#[derive(Clone, Debug)]
pub struct BalancedFactorization {
    param: BalanceParameter,
    d: Vec<f64>,
    d_inv: Vec<f64>,
    spectrum: ToeplitzSpectrum,
}

impl BalancedFactorization {
    /// Factorization at the optimum balance parameter for order `n`
    /// (`t = 1` for the trivial orders 1 and 2).
    pub fn new(n: usize) -> Result<Self> {
        let param = if n < 3 {
            BalanceParameter::fixed(n, 1.0)?
        } else {
            BalanceParameter::optimal(n)?
        };
        Self::with_parameter(param)
    }

    /// Factorization at a caller-chosen balance parameter.
    pub fn with_parameter(param: BalanceParameter) -> Result<Self> {
        let (d, d_inv) = scaling_diagonals(param.n, param.t)?;
        let spectrum = ToeplitzSpectrum::new(param.n, param.t)?;
        Ok(BalancedFactorization {
            param,
            d,
            d_inv,
            spectrum,
        })
    }

    pub fn n(&self) -> usize {
        self.param.n
    }

    pub fn parameter(&self) -> &BalanceParameter {
        &self.param
    }

    pub fn diagonal(&self) -> &[f64] {
        &self.d
    }

    pub fn diagonal_inverse(&self) -> &[f64] {
        &self.d_inv
    }

    pub fn spectrum(&self) -> &ToeplitzSpectrum {
        &self.spectrum
    }

    /// `P_n * v` in `O(n log n)` operations as
    /// `D_n(t) (T_n(t) (D_n(t)^-1 v))`.
    pub fn multiply(&self, v: &[f64]) -> Result<Vec<f64>> {
        self.multiply_counted(v, &mut OpCount::default())
    }

    /// Counted form of [`multiply`](Self::multiply).
    pub fn multiply_counted(&self, v: &[f64], ops: &mut OpCount) -> Result<Vec<f64>> {
        let n = self.param.n;
        if v.len() != n {
            return Err(Error::LengthMismatch {
                expected: n,
                got: v.len(),
            });
        }
        let scaled: Vec<f64> = v.iter().zip(&self.d_inv).map(|(x, d)| x * d).collect();
        ops.muls += n as u64;
        let (mut out, _residue) = self.spectrum.multiply_counted(&scaled, ops)?;
        for (x, d) in out.iter_mut().zip(&self.d) {
            *x *= d;
        }
        ops.muls += n as u64;
        Ok(out)
    }
}
