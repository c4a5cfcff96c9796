//! Matrix-vector products with the lower triangular Pascal matrix and its
//! relatives, computed through their bidiagonal factorizations.
//!
//! `P_n` is the lower triangular matrix of binomial coefficients
//! `C(i, j)` (0-based, `i >= j`). It factors as `P_n = E_{n-1} ... E_1`
//! where each `E_k` is bidiagonal with unit entries, so `P_n v` reduces to
//! `n-1` in-place sweeps of prefix additions: exactly `n(n-1)/2` additions
//! and no multiplications. The scaled variants `P_n G_n(t)` (with
//! `G_n(t) = diag(1, t, ..., t^{n-1})`) and the Bernstein matrix `B_n^e(t)`
//! factor the same way with per-sweep weights.
//!
//! The in-place functions are the performance primitives and tally their
//! operation counts; the copying wrappers are the convenient testing
//! surface. All of them reject empty input, since a silent no-op would mask
//! caller bugs. Everything here is pure or works on caller-owned buffers,
//! so concurrent use on distinct buffers is safe.

use crate::ops::OpCount;

/// Flip the sign of every odd-indexed entry: the action of `G_n(-1)`.
///
/// Applying it twice is the identity. Together with the Pascal product it
/// yields the exact inverse action, `P_n^-1 = G_n(-1) P_n G_n(-1)`.
pub fn alternate_signs_in_place(v: &mut [f64]) {
    for x in v.iter_mut().skip(1).step_by(2) {
        *x = -*x;
    }
}

/// Copying form of [`alternate_signs_in_place`].
pub fn alternate_signs(v: &[f64]) -> Vec<f64> {
    let mut out = v.to_vec();
    alternate_signs_in_place(&mut out);
    out
}

/// In-place `P_n * v` by forward sweeps of prefix additions.
///
/// Bit-exact on integer data while every intermediate stays below 2^53.
/// Panics on empty input.
pub fn pascal_product_in_place(v: &mut [f64], ops: &mut OpCount) {
    assert!(!v.is_empty(), "pascal_product_in_place: empty input");
    let n = v.len();
    for k in 1..n {
        for s in (k..n).rev() {
            v[s] += v[s - 1];
        }
        ops.adds += (n - k) as u64;
    }
}

/// `P_n * v`.
pub fn pascal_product(v: &[f64]) -> Vec<f64> {
    let mut out = v.to_vec();
    pascal_product_in_place(&mut out, &mut OpCount::default());
    out
}

/// In-place `P_n G_n(t) * v` via sweeps `v[s] = v[s-1] + t * v[s]`.
///
/// `n(n-1)/2` additions and as many multiplications. `t = 1` performs the
/// identical operations to [`pascal_product_in_place`] plus the unit
/// scalings. Panics on empty input.
pub fn pascal_g_product_in_place(v: &mut [f64], t: f64, ops: &mut OpCount) {
    assert!(!v.is_empty(), "pascal_g_product_in_place: empty input");
    let n = v.len();
    for k in 1..n {
        for s in (k..n).rev() {
            v[s] = v[s - 1] + t * v[s];
        }
        ops.adds += (n - k) as u64;
        ops.muls += (n - k) as u64;
    }
}

/// `P_n G_n(t) * v`.
pub fn pascal_g_product(v: &[f64], t: f64) -> Vec<f64> {
    let mut out = v.to_vec();
    pascal_g_product_in_place(&mut out, t, &mut OpCount::default());
    out
}

/// In-place `P_n^-1 * v = G_n(-1) P_n G_n(-1) v`.
///
/// Composes to the identity with [`pascal_product_in_place`] in exact
/// arithmetic. Panics on empty input.
pub fn pascal_inverse_action_in_place(v: &mut [f64], ops: &mut OpCount) {
    alternate_signs_in_place(v);
    pascal_product_in_place(v, ops);
    alternate_signs_in_place(v);
}

/// `P_n^-1 * v`.
pub fn pascal_inverse_action(v: &[f64]) -> Vec<f64> {
    let mut out = v.to_vec();
    pascal_inverse_action_in_place(&mut out, &mut OpCount::default());
    out
}

/// In-place `B_n^e(t) * v` via sweeps `v[s] = (1-t) * v[s-1] + t * v[s]`.
///
/// This performs the de Casteljau recurrence's operations in the same
/// order; after the sweeps `v[n-1]` is the Bézier coordinate at parameter
/// `t`. `n(n-1)/2` additions, `n(n-1)` multiplications. Panics on empty
/// input.
pub fn bernstein_product_in_place(v: &mut [f64], t: f64, ops: &mut OpCount) {
    assert!(!v.is_empty(), "bernstein_product_in_place: empty input");
    let n = v.len();
    let t1 = 1.0 - t;
    for k in 1..n {
        for s in (k..n).rev() {
            v[s] = t1 * v[s - 1] + t * v[s];
        }
        ops.adds += (n - k) as u64;
        ops.muls += 2 * (n - k) as u64;
    }
}

/// `B_n^e(t) * v`.
pub fn bernstein_product(v: &[f64], t: f64) -> Vec<f64> {
    let mut out = v.to_vec();
    bernstein_product_in_place(&mut out, t, &mut OpCount::default());
    out
}
