//! Complete elliptic integrals by arithmetic-geometric mean iteration.
//!
//! These serve as the high-precision oracle for pendulum actions and
//! periods. The modulus convention is K(k) = int_0^{pi/2} dth / sqrt(1 -
//! k^2 sin^2 th); callers that know the complementary modulus exactly
//! (near-separatrix asymptotics) should use the `_complement` entry points
//! to avoid forming 1 - k^2.

use std::f64::consts::FRAC_PI_2;

use crate::{Error, Result};

const MAX_ITER: usize = 40;
const AGM_EPS: f64 = 1e-17;

/// AGM of (a, b) with the c-sequence sum needed for E.
/// Returns (agm, sum of 2^{n-1} c_n^2 including the n = 0 term c_0 = k).
fn agm_with_sum(b0: f64, c0: f64) -> (f64, f64) {
    let mut a = 1.0_f64;
    let mut b = b0;
    let mut sum = 0.5 * c0 * c0;
    let mut pow2 = 1.0;
    for _ in 0..MAX_ITER {
        let c = 0.5 * (a - b);
        let a_next = 0.5 * (a + b);
        let b_next = (a * b).sqrt();
        sum += pow2 * c * c;
        pow2 *= 2.0;
        a = a_next;
        b = b_next;
        if (a - b).abs() <= AGM_EPS * a {
            break;
        }
    }
    (a, sum)
}

/// K and E from the complementary modulus kp = sqrt(1 - k^2), with the
/// modulus k supplied for the E sum. Requires kp > 0.
pub(crate) fn elliptic_ke_from_complement(k: f64, kp: f64) -> Result<(f64, f64)> {
    if !(kp > 0.0) {
        return Err(Error::EllipticModulus(k));
    }
    let (agm, sum) = agm_with_sum(kp, k);
    let big_k = FRAC_PI_2 / agm;
    let big_e = big_k * (1.0 - sum);
    Ok((big_k, big_e))
}

/// Complete elliptic integral of the first kind, 0 <= k < 1.
pub fn elliptic_k(k: f64) -> Result<f64> {
    if !(0.0..1.0).contains(&k) {
        return Err(Error::EllipticModulus(k));
    }
    if k == 0.0 {
        return Ok(FRAC_PI_2);
    }
    let kp = ((1.0 - k) * (1.0 + k)).sqrt();
    elliptic_ke_from_complement(k, kp).map(|(big_k, _)| big_k)
}

/// Complete elliptic integral of the second kind, 0 <= k <= 1.
pub fn elliptic_e(k: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&k) {
        return Err(Error::EllipticModulus(k));
    }
    if k == 0.0 {
        return Ok(FRAC_PI_2);
    }
    if k == 1.0 {
        return Ok(1.0);
    }
    let kp = ((1.0 - k) * (1.0 + k)).sqrt();
    elliptic_ke_from_complement(k, kp).map(|(_, big_e)| big_e)
}

/// Both complete elliptic integrals at once; requires 0 <= k < 1.
pub fn elliptic_ke(k: f64) -> Result<(f64, f64)> {
    if !(0.0..1.0).contains(&k) {
        return Err(Error::EllipticModulus(k));
    }
    if k == 0.0 {
        return Ok((FRAC_PI_2, FRAC_PI_2));
    }
    let kp = ((1.0 - k) * (1.0 + k)).sqrt();
    elliptic_ke_from_complement(k, kp)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::tanh_sinh::integrate_tanh_sinh;

    #[test]
    fn degenerate_modulus() {
        let (k, e) = elliptic_ke(0.0).unwrap();
        assert_eq!(k, FRAC_PI_2);
        assert_eq!(e, FRAC_PI_2);
    }

    #[test]
    fn endpoint_e_is_one() {
        assert_eq!(elliptic_e(1.0).unwrap(), 1.0);
        assert!(elliptic_k(1.0).is_err());
        assert!(elliptic_ke(1.0).is_err());
        assert!(elliptic_k(-0.5).is_err());
        assert!(elliptic_e(1.5).is_err());
    }

    #[test]
    fn reference_values() {
        // K(1/sqrt2) = Gamma(1/4)^2 / (4 sqrt pi) = 1.8540746773013719...
        let k = elliptic_k(0.5f64.sqrt()).unwrap();
        assert!((k - 1.854_074_677_301_371_9).abs() < 2e-15, "got {k}");
        // E(1/sqrt2) = 1.3506438810476755...
        let e = elliptic_e(0.5f64.sqrt()).unwrap();
        assert!((e - 1.350_643_881_047_675_5).abs() < 2e-15, "got {e}");
    }

    #[test]
    fn agm_matches_quadrature() {
        for &k in &[0.1, 0.3, 0.5, 0.7, 0.9, 0.99] {
            let (ka, ea) = elliptic_ke(k).unwrap();
            let kq = integrate_tanh_sinh(
                &move |th: f64| {
                    let s = th.sin();
                    1.0 / (1.0 - k * k * s * s).sqrt()
                },
                0.0,
                FRAC_PI_2,
                1e-14,
            )
            .unwrap();
            let eq = integrate_tanh_sinh(
                &move |th: f64| {
                    let s = th.sin();
                    (1.0 - k * k * s * s).sqrt()
                },
                0.0,
                FRAC_PI_2,
                1e-14,
            )
            .unwrap();
            assert!((ka - kq).abs() < 1e-12, "K mismatch at k={k}: {ka} vs {kq}");
            assert!((ea - eq).abs() < 1e-12, "E mismatch at k={k}: {ea} vs {eq}");
        }
    }

    #[test]
    fn legendre_relation() {
        for &k in &[0.2, 0.5, 0.8] {
            let kp = (1.0 - k * k).sqrt();
            let (bk, be) = elliptic_ke(k).unwrap();
            let (bkp, bep) = elliptic_ke(kp).unwrap();
            let legendre = be * bkp + bep * bk - bk * bkp;
            assert!((legendre - FRAC_PI_2).abs() < 1e-13);
        }
    }
}
