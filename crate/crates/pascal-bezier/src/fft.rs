//! In-place radix-2 complex FFT.
//!
//! Small and self-contained so the fast-multiply pipeline can tally its own
//! flops. Twiddle factors come straight from sin/cos per index (no repeated
//! multiplication), which keeps round-trip error near machine precision at
//! every size used here.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::ops::OpCount;

/// Twiddle factors `exp(-2 pi i k / m)` for `k < m/2`.
pub(crate) fn twiddles(m: usize) -> Vec<Complex64> {
    (0..m / 2)
        .map(|k| {
            let angle = -2.0 * PI * k as f64 / m as f64;
            Complex64::new(angle.cos(), angle.sin())
        })
        .collect()
}

/// Forward or inverse DFT of a power-of-two-length buffer, in place.
///
/// The inverse includes the `1/m` normalization. `tw` must hold the `m/2`
/// forward twiddles for `m = buf.len()`.
pub(crate) fn fft_in_place(
    buf: &mut [Complex64],
    tw: &[Complex64],
    inverse: bool,
    ops: &mut OpCount,
) {
    let m = buf.len();
    debug_assert!(m.is_power_of_two());
    debug_assert_eq!(tw.len(), m / 2);
    if m < 2 {
        return;
    }

    // Bit-reversal permutation.
    let shift = m.leading_zeros() + 1;
    for i in 0..m {
        let j = i.reverse_bits() >> shift;
        if i < j {
            buf.swap(i, j);
        }
    }

    let mut len = 2;
    while len <= m {
        let stride = m / len;
        let half = len / 2;
        for start in (0..m).step_by(len) {
            for k in 0..half {
                let w = if inverse {
                    tw[k * stride].conj()
                } else {
                    tw[k * stride]
                };
                let even = buf[start + k];
                let odd = w * buf[start + k + half];
                buf[start + k] = even + odd;
                buf[start + k + half] = even - odd;
            }
        }
        // Per stage: m/2 butterflies, each a complex multiply (4 mul + 2 add)
        // and a complex sum/difference pair (4 add).
        ops.muls += 4 * (m as u64 / 2);
        ops.adds += 6 * (m as u64 / 2);
        len <<= 1;
    }

    if inverse {
        let scale = 1.0 / m as f64;
        for x in buf.iter_mut() {
            *x *= scale;
        }
        ops.divs += 1;
        ops.muls += 2 * m as u64;
    }
}

/// Forward or inverse discrete Fourier transform.
///
/// Rejects non-power-of-two lengths. The inverse includes the `1/m`
/// normalization, so `dft(dft(v, false), true)` returns `v` up to rounding.
pub fn dft(v: &[Complex64], inverse: bool) -> Result<Vec<Complex64>> {
    if !v.len().is_power_of_two() {
        return Err(Error::NonPowerOfTwo(v.len()));
    }
    let mut buf = v.to_vec();
    let tw = twiddles(v.len());
    fft_in_place(&mut buf, &tw, inverse, &mut OpCount::default());
    Ok(buf)
}
