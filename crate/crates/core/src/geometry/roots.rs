//! Bracketed scalar root finding: bisection to safety, Newton to polish.

use crate::{Error, Result};

/// Find the root of `f` on [a, b], assuming f(a) and f(b) have opposite
/// signs. Bisection narrows the bracket; Newton steps (using `df`) polish
/// the root to `tol`, falling back to bisection whenever a step would leave
/// the bracket.
pub fn bracketed_root(
    f: &dyn Fn(f64) -> f64,
    df: &dyn Fn(f64) -> f64,
    a: f64,
    b: f64,
    tol: f64,
) -> Result<f64> {
    let (mut lo, mut hi) = if a <= b { (a, b) } else { (b, a) };
    let flo = f(lo);
    if flo == 0.0 {
        return Ok(lo);
    }
    let fhi = f(hi);
    if fhi == 0.0 {
        return Ok(hi);
    }
    if flo.signum() == fhi.signum() {
        return Err(Error::RootNotBracketed { a: lo, b: hi });
    }
    let sign_lo = flo.signum();

    // Bisect until the bracket is narrow enough for Newton to be safe.
    for _ in 0..80 {
        let mid = 0.5 * (lo + hi);
        if hi - lo <= tol.max(f64::EPSILON * mid.abs()) {
            break;
        }
        let fm = f(mid);
        if fm == 0.0 {
            return Ok(mid);
        }
        if fm.signum() == sign_lo {
            lo = mid;
        } else {
            hi = mid;
        }
    }

    let mut x = 0.5 * (lo + hi);
    for _ in 0..30 {
        let fx = f(x);
        let dfx = df(x);
        if dfx == 0.0 {
            break;
        }
        let step = fx / dfx;
        let next = x - step;
        if !(lo..=hi).contains(&next) {
            break;
        }
        x = next;
        if step.abs() <= tol {
            break;
        }
    }
    Ok(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sqrt_two() {
        let r = bracketed_root(&|x| x * x - 2.0, &|x| 2.0 * x, 0.0, 2.0, 1e-13).unwrap();
        assert!((r - 2f64.sqrt()).abs() < 1e-13);
    }

    #[test]
    fn endpoint_root() {
        let r = bracketed_root(&|x| x, &|_| 1.0, 0.0, 1.0, 1e-13).unwrap();
        assert_eq!(r, 0.0);
    }

    #[test]
    fn unbracketed_rejected() {
        assert!(matches!(
            bracketed_root(&|x| x * x + 1.0, &|x| 2.0 * x, -1.0, 1.0, 1e-13),
            Err(Error::RootNotBracketed { .. })
        ));
    }
}
