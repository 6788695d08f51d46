//! Small numerical building blocks: Richardson-improved central
//! differences, Aitken sequence acceleration, and Halton low-discrepancy
//! sampling.

/// Central difference improved by one Richardson step: combines stencils at
/// h and h/2 for an O(h^4) derivative estimate. Returns (derivative,
/// error_estimate) where the error estimate is the difference between the
/// improved and the h/2 stencil values.
pub fn central_diff_richardson(f: &dyn Fn(f64) -> f64, x: f64, h: f64) -> (f64, f64) {
    let d_h = (f(x + h) - f(x - h)) / (2.0 * h);
    let d_h2 = (f(x + 0.5 * h) - f(x - 0.5 * h)) / h;
    let improved = (4.0 * d_h2 - d_h) / 3.0;
    (improved, (improved - d_h2).abs())
}

/// One Aitken delta-squared step on the last three terms of a sequence.
/// Returns None when the second difference is too small for the transform
/// to be numerically meaningful.
pub fn aitken_step(s0: f64, s1: f64, s2: f64) -> Option<f64> {
    let d1 = s1 - s0;
    let d2 = s2 - s1;
    let dd = d2 - d1;
    if dd.abs() <= 1e-12 * (s2.abs() + s1.abs() + s0.abs()).max(f64::MIN_POSITIVE) {
        return None;
    }
    let accel = s2 - d2 * d2 / dd;
    accel.is_finite().then_some(accel)
}

/// Accelerate the tail of a convergent sequence by Aitken delta-squared,
/// falling back to the last raw value when acceleration is unstable.
pub fn aitken_tail_limit(tail: &[f64]) -> f64 {
    let n = tail.len();
    if n == 0 {
        return f64::NAN;
    }
    if n < 3 {
        return tail[n - 1];
    }
    aitken_step(tail[n - 3], tail[n - 2], tail[n - 1]).unwrap_or(tail[n - 1])
}

/// Radical-inverse (van der Corput) value of `index` in the given base.
fn radical_inverse(mut index: u64, base: u64) -> f64 {
    let mut inv = 1.0 / base as f64;
    let mut value = 0.0;
    let mut scale = inv;
    while index > 0 {
        value += (index % base) as f64 * scale;
        index /= base;
        scale *= inv;
    }
    let _ = inv;
    value
}

const HALTON_BASES: [u64; 8] = [2, 3, 5, 7, 11, 13, 17, 19];

/// Deterministic low-discrepancy point set in the unit cube. The seed
/// offsets the start index, so distinct seeds give distinct but reproducible
/// space-filling samples.
pub fn halton_points(dim: usize, count: usize, seed: u64) -> Vec<Vec<f64>> {
    assert!(
        dim <= HALTON_BASES.len(),
        "halton sampling supports up to {} dimensions",
        HALTON_BASES.len()
    );
    let offset = seed.wrapping_mul(7919).wrapping_add(1);
    (0..count as u64)
        .map(|i| {
            (0..dim)
                .map(|d| radical_inverse(offset + i, HALTON_BASES[d]))
                .collect()
        })
        .collect()
}
