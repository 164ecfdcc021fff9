use num::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::{factorial, int, nonpositive_integer, pochhammer, sign, ExactValue, GammaProduct, Rational};
use crate::families::{type2, Family, MultiIndex, WeightSystem};
use crate::hypergeo::{eval_pfq, HypergeometricSpec};

fn pole_at(arg: &Rational, what: &str) -> Result<()> {
    if nonpositive_integer(arg).is_some() {
        return Err(Error::Pole(format!("{what} has a pole at {arg}")));
    }
    Ok(())
}

/// Compares the moment-reduced Mellin transform of the weighted type II
/// function with its closed form at `s`.
///
/// Both sides share `Γ(s)` (Laguerre), `Γ(s)Γ(β+1)/Γ(s+β+1)` (Jacobi–Piñeiro)
/// or `Γ(s)Γ(β+1)` (Hahn, kernel `Γ(x+s)/Γ(x+1)`); the remaining rational
/// factors are compared exactly.
pub fn check_mellin_type2(ws: &WeightSystem, n: &MultiIndex, s: &Rational) -> Result<bool> {
    let (lhs, rhs) = mellin_type2_sides(ws, n, s)?;
    Ok(lhs == rhs)
}

/// The two rational sides compared by [`check_mellin_type2`].
pub fn mellin_type2_sides(ws: &WeightSystem, n: &MultiIndex, s: &Rational) -> Result<(Rational, Rational)> {
    n.check(ws)?;
    pole_at(s, "Γ(s)")?;
    let b = type2(ws, n)?;
    let alpha = ws.alpha();
    let nv = n.as_slice();
    let total = n.total() as i64;
    let beta = ws.beta();
    let zeros: Rational = alpha
        .iter()
        .zip(nv)
        .map(|(a, &k)| pochhammer(&(a + int(1) - s), k as i64).unwrap())
        .product();
    let jp_like = || -> Rational {
        alpha
            .iter()
            .zip(nv)
            .map(|(a, &k)| pochhammer(&(a + &beta + int(total + 1)), k as i64).unwrap())
            .product()
    };
    let (lhs, rhs) = match ws.family() {
        Family::LaguerreFirstKind => {
            let mono = b.to_monomial();
            let lhs: Rational = mono
                .coefficients
                .iter()
                .enumerate()
                .map(|(m, c)| c * pochhammer(s, m as i64).unwrap())
                .sum();
            (lhs, sign(total) * zeros)
        }
        Family::JacobiPineiro => {
            let shifted = s + &beta + int(1);
            pole_at(&shifted, "Γ(s+β+1)")?;
            let mono = b.to_monomial();
            let lhs: Rational = mono
                .coefficients
                .iter()
                .enumerate()
                .map(|(m, c)| c * pochhammer(s, m as i64).unwrap() / pochhammer(&shifted, m as i64).unwrap())
                .sum();
            let rhs = sign(total) * pochhammer(&(&beta + int(1)), total)? * zeros
                / (jp_like() * pochhammer(&shifted, total)?);
            (lhs, rhs)
        }
        Family::Hahn => {
            let big_n = ws.big_n();
            let lhs: Rational = (0..=big_n)
                .map(|x| {
                    let xr = int(x as i64);
                    pochhammer(s, x as i64).unwrap() / factorial(x)
                        * b.eval_unscaled(&xr)
                        * pochhammer(&(&beta + int(1)), (big_n - x) as i64).unwrap()
                        / factorial(big_n - x)
                })
                .sum();
            let rhs = sign(total) * pochhammer(&(&beta + int(1)), total)?
                * pochhammer(&(s + &beta + int(total + 1)), big_n as i64 - total)?
                * zeros
                / (factorial(big_n - n.total()) * jp_like());
            (lhs, rhs)
        }
    };
    Ok((lhs, rhs))
}

/// Recovers `f` on `{0, …, N}` from the residue-sum inversion formula and
/// compares with the input.
pub fn check_discrete_mellin_inversion(ws: &WeightSystem, f: &[Rational]) -> Result<bool> {
    let big_n = ws.big_n() as usize;
    if f.len() != big_n + 1 {
        return Err(Error::Precondition(format!(
            "lattice function has {} values, expected {}",
            f.len(),
            big_n + 1
        )));
    }
    Ok((0..=big_n).all(|x| recover(f, x) == f[x]))
}

/// `Σ_{k<=x} Σ_{l=k}^{x} f(k)/k! · (-1)^{l-k}/(l-k)! · x!/(x-l)!`.
pub fn recover(f: &[Rational], x: usize) -> Rational {
    let mut acc = Rational::zero();
    for (k, fk) in f.iter().enumerate().take(x + 1) {
        if fk.is_zero() {
            continue;
        }
        let mut inner = Rational::zero();
        for l in k..=x {
            inner += sign((l - k) as i64) / factorial((l - k) as u64) * factorial(x as u64)
                / factorial((x - l) as u64);
        }
        acc += fk / factorial(k as u64) * inner;
    }
    acc
}

/// Left side of the hypergeometric summation formula equivalent to the Hahn
/// type I orthogonality condition with index `j`, compared with `0` for
/// `j <= |n|-2` and `(-1)^{|n|-1}` for `j = |n|-1`.
pub fn check_hahn_summation_identity(ws: &WeightSystem, n: &MultiIndex, j: u64) -> Result<bool> {
    Ok(hahn_summation_lhs(ws, n, j)? == hahn_summation_target(n, j))
}

pub fn hahn_summation_target(n: &MultiIndex, j: u64) -> Rational {
    if j + 1 == n.total() {
        sign(n.total() as i64 - 1)
    } else {
        Rational::zero()
    }
}

pub fn hahn_summation_lhs(ws: &WeightSystem, n: &MultiIndex, j: u64) -> Result<Rational> {
    ws.expect_hahn()?;
    n.check(ws)?;
    let nv = n.as_slice();
    if nv.contains(&0) {
        return Err(Error::Precondition("summation formula needs all n_i >= 1".into()));
    }
    let total = n.total() as i64;
    let j = j as i64;
    if j > total - 1 {
        return Err(Error::Precondition(format!("j = {j} exceeds |n| - 1 = {}", total - 1)));
    }
    let alpha = ws.alpha();
    let beta = ws.beta();
    let big_n = ws.big_n() as i64;

    let mut front = sign(total - 1) * factorial((big_n + 1 - total) as u64)
        / (factorial(big_n as u64) * pochhammer(&(&beta + int(1 + j)), total - 1 - j)?);
    for (a, &k) in alpha.iter().zip(nv) {
        front *= pochhammer(&(a + &beta + int(total)), k as i64)?;
    }
    let mut sum = Rational::zero();
    for i in 0..nv.len() {
        let a_i = &alpha[i];
        let gamma = GammaProduct::from_factors([
            (a_i + &beta + int(total), 1),
            (a_i + &beta + int(2 + j), -1),
        ]);
        let ratio = ExactValue::new(Rational::one(), gamma).as_rational()?;
        let mut cross = Rational::one();
        let mut num = vec![
            int(1 - nv[i] as i64),
            a_i + &beta + int(big_n + 2 + j),
            a_i + &beta + int(total),
        ];
        let mut den = vec![a_i + &beta + int(big_n + 2), a_i + &beta + int(2 + j)];
        for (k, a_k) in alpha.iter().enumerate() {
            if k == i {
                continue;
            }
            cross *= pochhammer(&(a_k - a_i), nv[k] as i64)?;
            num.push(a_i + int(1) - a_k - int(nv[k] as i64));
            den.push(a_i + int(1) - a_k);
        }
        let series = eval_pfq(&HypergeometricSpec::new(num, den, Rational::one()))?;
        sum += ratio * pochhammer(&(a_i + &beta + int(big_n + 2)), j)? * series
            / (factorial(nv[i] - 1) * cross);
    }
    Ok(front * sum)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    #[test]
    fn laguerre_example() {
        let ws = WeightSystem::laguerre(vec![rat(1, 2)]).unwrap();
        assert!(check_mellin_type2(&ws, &MultiIndex::new(vec![1]), &int(1)).unwrap());
        assert!(check_mellin_type2(&ws, &MultiIndex::new(vec![1]), &int(0)).is_err());
    }

    #[test]
    fn hahn_example() {
        let ws = WeightSystem::hahn(vec![rat(1, 2), rat(1, 3)], rat(1, 4), 4).unwrap();
        assert!(check_mellin_type2(&ws, &MultiIndex::new(vec![1, 1]), &rat(1, 7)).unwrap());
    }

    #[test]
    fn inversion_delta() {
        let ws = WeightSystem::hahn(vec![rat(1, 2)], rat(1, 4), 3).unwrap();
        let f = vec![int(1), int(0), int(0), int(0)];
        assert!(check_discrete_mellin_inversion(&ws, &f).unwrap());
        assert!(check_discrete_mellin_inversion(&ws, &f[..2]).is_err());
    }

    #[test]
    fn summation_three_weights() {
        let ws = WeightSystem::hahn(vec![rat(1, 2), rat(1, 3), rat(1, 5)], rat(1, 4), 5).unwrap();
        let n = MultiIndex::new(vec![1, 1, 1]);
        for j in 0..3 {
            assert!(check_hahn_summation_identity(&ws, &n, j).unwrap());
        }
        assert_eq!(hahn_summation_target(&n, 2), int(1));
    }
}
