//! Floating-point log Γ for data export. Nothing in the verification path
//! calls into this module.

use crate::error::{Error, Result};
use crate::exact::{to_f64, GammaProduct};

const HALF_LN_2PI: f64 = 0.918_938_533_204_672_8;

/// Bernoulli numbers B_2k / (2k (2k-1)), k = 1..=8.
const STIRLING_COEFFS: [f64; 8] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360_360.0,
    1.0 / 156.0,
    -3617.0 / 122_400.0,
];

/// Digits an f64 can honour.
pub const MAX_PRECISION: u32 = 15;

/// `log Γ(x)` for `x > 0`, accurate to `precision` decimal digits (at most 15).
///
/// Shifts the argument to `x >= 16` with the recurrence `Γ(x+1) = xΓ(x)`
/// and sums the asymptotic Stirling series there.
pub fn log_gamma_approx(x: f64, precision: u32) -> Result<f64> {
    if x.is_nan() || x <= 0.0 || !x.is_finite() {
        return Err(Error::Domain(format!("log Γ({x}) requires a positive finite argument")));
    }
    if precision == 0 || precision > MAX_PRECISION {
        return Err(Error::Domain(format!(
            "precision {precision} outside 1..={MAX_PRECISION}"
        )));
    }
    if x == 1.0 || x == 2.0 {
        return Ok(0.0);
    }
    let mut z = x;
    let mut shift = 1.0;
    while z < 16.0 {
        shift *= z;
        z += 1.0;
    }
    let inv = 1.0 / z;
    let inv2 = inv * inv;
    let mut series = 0.0;
    let mut power = inv;
    for c in STIRLING_COEFFS {
        series += c * power;
        power *= inv2;
    }
    let stirling = (z - 0.5) * z.ln() - z + HALF_LN_2PI + series;
    Ok(stirling - shift.ln())
}

/// `Γ(x)` for `x > 0` through [`log_gamma_approx`].
pub fn gamma_approx(x: f64) -> Result<f64> {
    Ok(log_gamma_approx(x, MAX_PRECISION)?.exp())
}

/// `∏ Γ(a)^e` in floating point; negative non-integer arguments are shifted
/// up with `Γ(x) = Γ(x+1)/x`.
pub fn gamma_product_approx(g: &GammaProduct) -> Result<f64> {
    let mut log_abs = 0.0;
    let mut negative = false;
    for (arg, exp) in g.factors() {
        let mut x = to_f64(arg);
        if x <= 0.0 && x.fract() == 0.0 {
            return Err(Error::Domain(format!("Γ({arg}) is a pole")));
        }
        let mut log_div = 0.0;
        while x <= 0.0 {
            log_div += x.abs().ln();
            if x < 0.0 && exp % 2 != 0 {
                negative = !negative;
            }
            x += 1.0;
        }
        log_abs += exp as f64 * (log_gamma_approx(x, MAX_PRECISION)? - log_div);
    }
    let magnitude = log_abs.exp();
    Ok(if negative { -magnitude } else { magnitude })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, digits: i32) -> bool {
        (a - b).abs() <= 10f64.powi(-digits) * b.abs().max(1.0)
    }

    #[test]
    fn products() {
        use crate::exact::rat;
        let g = GammaProduct::from_factors([(rat(9, 2), 1), (rat(3, 2), -1)]);
        assert!(close(gamma_product_approx(&g).unwrap(), 13.125, 12));
        // Γ(-1/2) = -2√π
        let g = GammaProduct::gamma(rat(-1, 2));
        assert!(close(gamma_product_approx(&g).unwrap(), -2.0 * std::f64::consts::PI.sqrt(), 12));
        assert!(gamma_product_approx(&GammaProduct::gamma(rat(-2, 1))).is_err());
    }

    #[test]
    fn known_values() {
        assert_eq!(log_gamma_approx(1.0, 12).unwrap(), 0.0);
        assert!(close(log_gamma_approx(5.0, 12).unwrap(), 24f64.ln(), 12));
        let half = 0.5 * std::f64::consts::PI.ln();
        assert!(close(log_gamma_approx(0.5, 12).unwrap(), half, 12));
        assert!(close(gamma_approx(4.5).unwrap(), 11.631_728_396_567_448, 12));
    }

    #[test]
    fn against_statrs() {
        for k in 1..400 {
            let x = k as f64 * 0.137;
            let ours = log_gamma_approx(x, 12).unwrap();
            let theirs = statrs::function::gamma::ln_gamma(x);
            assert!(close(ours, theirs, 12), "x={x}: {ours} vs {theirs}");
        }
    }

    #[test]
    fn domain() {
        assert!(log_gamma_approx(0.0, 10).is_err());
        assert!(log_gamma_approx(-1.5, 10).is_err());
        assert!(log_gamma_approx(2.5, 16).is_err());
    }
}
