use num::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::{factorial, int, nonpositive_integer, pochhammer, sign, to_f64, ExactValue, GammaProduct, Rational};
use crate::families::{type2, Family, MultiIndex, WeightSystem};

fn product_shifted(ws: &WeightSystem, n: &MultiIndex, shift: i64) -> Rational {
    ws.alpha()
        .iter()
        .zip(n.as_slice())
        .map(|(a, &k)| pochhammer(&(a + int(1 + shift)), k as i64).unwrap())
        .product()
}

fn jp_denominator(ws: &WeightSystem, n: &MultiIndex) -> Rational {
    let total = n.total() as i64;
    let beta = ws.beta();
    ws.alpha()
        .iter()
        .zip(n.as_slice())
        .map(|(a, &k)| pochhammer(&(a + &beta + int(total + 1)), k as i64).unwrap())
        .product()
}

/// Constant in front of the type II inverse-Mellin integral.
pub fn type2_prefactor(ws: &WeightSystem, n: &MultiIndex) -> Result<ExactValue> {
    n.check(ws)?;
    let total = n.total() as i64;
    let s = sign(total);
    Ok(match ws.family() {
        Family::LaguerreFirstKind => ExactValue::rational(s),
        Family::JacobiPineiro => ExactValue::new(
            s / jp_denominator(ws, n),
            GammaProduct::gamma(ws.beta() + int(total + 1)),
        ),
        Family::Hahn => ExactValue::new(
            s / (factorial(ws.big_n() - n.total()) * jp_denominator(ws, n)),
            GammaProduct::gamma(ws.beta() + int(total + 1)),
        ),
    })
}

/// Residue of the type II integrand at `s = -k`, without the prefactor.
///
/// The value multiplies `x^k` for the continuous families and `(-x)_k` for
/// Hahn, where only `k <= N` are poles.
pub fn type2_residue_coefficient(ws: &WeightSystem, n: &MultiIndex, k: u64) -> Result<ExactValue> {
    n.check(ws)?;
    let total = n.total() as i64;
    let ki = k as i64;
    let base = product_shifted(ws, n, ki);
    Ok(match ws.family() {
        Family::LaguerreFirstKind => ExactValue::rational(sign(ki) / factorial(k) * base),
        Family::JacobiPineiro => {
            let arg = ws.beta() + int(total + 1 - ki);
            if nonpositive_integer(&arg).is_some() {
                ExactValue::zero()
            } else {
                ExactValue::new(sign(ki) / factorial(k) * base, GammaProduct::power(arg, -1))
            }
        }
        Family::Hahn => {
            let big_n = ws.big_n();
            if k > big_n {
                return Err(Error::Domain(format!("s = -{k} is not a pole: the contour encloses [-{big_n}, 0]")));
            }
            // Γ(N+β+1-k)/Γ(|n|+β+1-k) times (x-k+1)_k = (-1)^k (-x)_k
            let ratio = pochhammer(&(ws.beta() + int(total + 1 - ki)), big_n as i64 - total)?;
            ExactValue::rational(ratio / factorial(k) * base)
        }
    })
}

/// Coefficient of `x^k` (or `(-x)_k`) in the hypergeometric form of the
/// weighted type II function.
pub fn type2_series_coefficient(ws: &WeightSystem, n: &MultiIndex, k: u64) -> Result<ExactValue> {
    n.check(ws)?;
    let total = n.total() as i64;
    let ki = k as i64;
    let beta = ws.beta();
    let mut ratio = Rational::one();
    for (a, &m) in ws.alpha().iter().zip(n.as_slice()) {
        ratio *= pochhammer(&(a + int(m as i64 + 1)), ki)? / pochhammer(&(a + int(1)), ki)?;
    }
    let front = sign(total) * product_shifted(ws, n, 0);
    Ok(match ws.family() {
        Family::LaguerreFirstKind => ExactValue::rational(front * ratio * sign(ki) / factorial(k)),
        Family::JacobiPineiro => ExactValue::rational(
            front / jp_denominator(ws, n) * pochhammer(&(-&beta - int(total)), ki)? * ratio / factorial(k),
        ),
        Family::Hahn => {
            let big_n = ws.big_n();
            if k > big_n {
                return Err(Error::Domain(format!("series index {k} exceeds N = {big_n}")));
            }
            let series = pochhammer(&(-&beta - int(total)), ki)?
                / pochhammer(&(-&beta - int(big_n as i64)), ki)?
                * ratio
                / factorial(k);
            ExactValue::new(
                front / (factorial(big_n - n.total()) * jp_denominator(ws, n)) * series,
                GammaProduct::gamma(beta + int(big_n as i64 + 1)),
            )
        }
    })
}

/// Prefactor × residue equals the series coefficient for every `k <= k_max`
/// (capped at `N` for Hahn).
pub fn verify_type2_series_equivalence(ws: &WeightSystem, n: &MultiIndex, k_max: u64) -> Result<bool> {
    let pre = type2_prefactor(ws, n)?;
    let top = if ws.family() == Family::Hahn {
        k_max.min(ws.big_n())
    } else {
        k_max
    };
    for k in 0..=top {
        let lhs = pre.mul(&type2_residue_coefficient(ws, n, k)?);
        let rhs = type2_series_coefficient(ws, n, k)?;
        if !lhs.exact_eq(&rhs)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Residue sum over `s ∈ {0, …, N}` at a lattice point, divided by `Γ(β+1)`;
/// comparable with [`crate::families::hahn_type2_weighted_series`].
pub fn hahn_type2_residue_sum(ws: &WeightSystem, n: &MultiIndex, x: u64) -> Result<Rational> {
    ws.expect_hahn()?;
    if x > ws.big_n() {
        return Err(Error::Domain(format!("x = {x} is outside {{0, …, {}}}", ws.big_n())));
    }
    let pre = type2_prefactor(ws, n)?;
    let mut acc = Rational::zero();
    for l in 0..=ws.big_n() {
        let falling = pochhammer(&int(-(x as i64)), l as i64)?;
        if falling.is_zero() {
            continue;
        }
        acc += type2_residue_coefficient(ws, n, l)?.coeff * falling;
    }
    let total = ExactValue::new(acc * &pre.coeff, &pre.gamma * &GammaProduct::power(ws.beta() + int(1), -1));
    total.as_rational()
}

/// Partial sum of the first `terms` residues at a point `x` in the interior
/// of the support, in floating point (continuous families only).
pub fn partial_residue_sum_f64(ws: &WeightSystem, n: &MultiIndex, x: f64, terms: u64) -> Result<f64> {
    if ws.family() == Family::Hahn {
        return Err(Error::Precondition("the residue series is finite for Hahn".into()));
    }
    let mut acc = 0.0;
    let mut power = 1.0;
    for k in 0..terms {
        let c = type2_series_coefficient(ws, n, k)?.as_rational()?;
        acc += to_f64(&c) * power;
        power *= x;
    }
    Ok(acc)
}

/// `B(x)e^{-x}` or `B(x)(1-x)^β` evaluated directly in floating point.
pub fn weighted_type2_f64(ws: &WeightSystem, n: &MultiIndex, x: f64) -> Result<f64> {
    let b = type2(ws, n)?.to_monomial();
    let value = b.coefficients.iter().rev().fold(0.0, |acc, c| acc * x + to_f64(c));
    Ok(match ws.family() {
        Family::LaguerreFirstKind => value * (-x).exp(),
        Family::JacobiPineiro => value * (1.0 - x).powf(to_f64(&ws.beta())),
        Family::Hahn => return Err(Error::Precondition("continuous families only".into())),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;
    use crate::families::hahn_type2_weighted_series;

    #[test]
    fn constant_terms() {
        let alpha = vec![rat(1, 2), rat(1, 3)];
        let n = MultiIndex::new(vec![1, 1]);
        let ws = WeightSystem::laguerre(alpha.clone()).unwrap();
        assert_eq!(
            type2_residue_coefficient(&ws, &n, 0).unwrap(),
            ExactValue::rational(rat(3, 2) * rat(4, 3))
        );
        assert!(verify_type2_series_equivalence(&ws, &n, 6).unwrap());
        let ws = WeightSystem::jacobi_pineiro(alpha.clone(), rat(1, 4)).unwrap();
        assert!(verify_type2_series_equivalence(&ws, &n, 0).unwrap());
        let ws = WeightSystem::hahn(alpha, rat(1, 4), 4).unwrap();
        assert!(verify_type2_series_equivalence(&ws, &n, 4).unwrap());
        assert!(type2_residue_coefficient(&ws, &n, 5).is_err());
        for x in 0..=4 {
            assert_eq!(
                hahn_type2_residue_sum(&ws, &n, x).unwrap(),
                hahn_type2_weighted_series(&ws, &n, x).unwrap()
            );
        }
    }

    #[test]
    fn float_tail() {
        let alpha = vec![rat(1, 2), rat(1, 3)];
        let n = MultiIndex::new(vec![2, 1]);
        for ws in [
            WeightSystem::laguerre(alpha.clone()).unwrap(),
            WeightSystem::jacobi_pineiro(alpha, rat(1, 4)).unwrap(),
        ] {
            let x = 0.3;
            let direct = weighted_type2_f64(&ws, &n, x).unwrap();
            let partial = partial_residue_sum_f64(&ws, &n, x, 60).unwrap();
            assert!(((partial - direct) / direct).abs() < 1e-10, "{ws}: {partial} vs {direct}");
        }
    }
}
