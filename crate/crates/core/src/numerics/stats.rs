/// Pairwise (tree) summation in a fixed order, independent of thread count.
pub fn pairwise_sum(v: &[f64]) -> f64 {
    if v.len() <= 8 {
        return v.iter().sum();
    }
    let mid = v.len() / 2;
    pairwise_sum(&v[..mid]) + pairwise_sum(&v[mid..])
}

/// Sample mean and standard error `sd / sqrt(N)`.
///
/// Values are shifted by the first sample before summing, so a constant sample gives its value
/// exactly with zero error. A `-inf` sample makes the mean `-inf` and the error infinite.
pub fn mean_and_stderr(v: &[f64]) -> (f64, f64) {
    let n = v.len();
    if n == 0 {
        return (f64::NAN, f64::NAN);
    }
    if v.contains(&f64::NEG_INFINITY) {
        return (f64::NEG_INFINITY, f64::INFINITY);
    }
    let shift = v[0];
    let centered: Vec<f64> = v.iter().map(|x| x - shift).collect();
    let m = pairwise_sum(&centered) / n as f64;
    if n == 1 {
        return (shift + m, 0.0);
    }
    let sq: Vec<f64> = centered.iter().map(|x| (x - m) * (x - m)).collect();
    let var = pairwise_sum(&sq) / (n - 1) as f64;
    (shift + m, (var / n as f64).sqrt())
}
