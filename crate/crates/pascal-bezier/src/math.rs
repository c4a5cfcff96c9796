//! Small numeric helpers shared across modules.

/// ln(m!) for nonnegative integer m.
///
/// Exact summation below 20, Stirling's series above. The series truncation
/// error at x >= 21 is below 1e-15 absolute, which keeps log-space
/// comparisons of factorial ratios well under the certificates used by the
/// balancing module.
pub(crate) fn ln_factorial(m: u64) -> f64 {
    if m < 20 {
        return (2..=m).map(|i| (i as f64).ln()).sum();
    }
    let x = (m + 1) as f64; // lnGamma(x) = ln((x-1)!)
    let inv = 1.0 / x;
    let inv2 = inv * inv;
    (x - 0.5) * x.ln() - x
        + 0.5 * (2.0 * std::f64::consts::PI).ln()
        + inv * (1.0 / 12.0 - inv2 * (1.0 / 360.0 - inv2 * (1.0 / 1260.0 - inv2 / 1680.0)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_factorials_exact() {
        assert_eq!(ln_factorial(0), 0.0);
        assert_eq!(ln_factorial(1), 0.0);
        assert!((ln_factorial(2) - 2.0f64.ln()).abs() < 1e-15);
        assert!((ln_factorial(5) - 120.0f64.ln()).abs() < 1e-13);
    }

    #[test]
    fn stirling_matches_exact_summation() {
        // Across the switch point the two evaluations must agree tightly.
        for m in 18..200u64 {
            let series = ln_factorial(m);
            let summed: f64 = (2..=m).map(|i| (i as f64).ln()).sum();
            assert!(
                (series - summed).abs() <= 1e-12 * summed.max(1.0),
                "m = {m}: {series} vs {summed}"
            );
        }
    }
}
