//! Summary statistics shared by the validators and experiment runners.

/// z for a two-sided 99% normal interval.
pub const Z99: f64 = 2.58;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Summary {
    pub mean: f64,
    /// Sample standard deviation over `sqrt(n)`; `NaN` when `n < 2`.
    pub stderr: f64,
    pub n: usize,
}

/// Mean and standard error, summed in slice order.
pub fn summarize(values: &[f64]) -> Summary {
    let n = values.len();
    let mean = values.iter().sum::<f64>() / n as f64;
    let stderr = if n < 2 {
        f64::NAN
    } else {
        let ss: f64 = values.iter().map(|v| (v - mean).powi(2)).sum();
        (ss / (n - 1) as f64).sqrt() / (n as f64).sqrt()
    };
    Summary { mean, stderr, n }
}

/// 99% half-width of a binomial proportion `p` estimated from `n` trials.
pub fn proportion_half_width(p: f64, n: usize) -> f64 {
    Z99 * (p * (1.0 - p) / n as f64).sqrt()
}

/// Standard error of a difference of independent estimates.
pub fn combined_stderr(a: f64, b: f64) -> f64 {
    a.hypot(b)
}
