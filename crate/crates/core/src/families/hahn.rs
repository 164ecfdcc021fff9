use num::One;

use super::jacobi_pineiro::{jacobi_pineiro_type2, jp_like_coefficients};
use super::{
    checked_div, cross_parameters, cross_product, BasisKind, Family, MultiIndex,
    ScaledPolynomial, TypeIVector, WeightSystem,
};
use crate::error::{Error, Result};
use crate::exact::{factorial, int, pochhammer, sign, ExactValue, GammaProduct, Rational};
use crate::hypergeo::{eval_kdf, eval_pfq, HypergeometricSpec, KampeDeFerietSpec};

/// Monic type II Hahn polynomial in the `(-x)_k` basis.
pub fn hahn_type2(ws: &WeightSystem, n: &MultiIndex) -> Result<ScaledPolynomial> {
    ws.expect_family(Family::Hahn)?;
    n.check(ws)?;
    let coeffs = jp_like_coefficients(ws.alpha(), &ws.beta(), n.as_slice(), Some(ws.big_n()))?;
    Ok(ScaledPolynomial::rational(BasisKind::FallingFactorial, coeffs))
}

/// Type I Hahn vector for any `p`; component `i` lives in the
/// `(x+α_i+1)_l` basis with rational coefficients and unit scale.
pub fn hahn_type1(ws: &WeightSystem, n: &MultiIndex) -> Result<TypeIVector> {
    ws.expect_family(Family::Hahn)?;
    n.check_type1(ws)?;
    let alpha = ws.alpha();
    let beta = ws.beta();
    let big_n = ws.big_n() as i64;
    let nv = n.as_slice();
    let total = n.total() as i64;

    let mut common = sign(total - 1) * factorial((big_n + 1 - total) as u64)
        / pochhammer(&(&beta + int(1)), total - 1)?;
    for k in 0..nv.len() {
        common *= pochhammer(&(&alpha[k] + &beta + int(total)), nv[k] as i64)?;
    }
    let components = (0..nv.len())
        .map(|i| {
            let basis = BasisKind::ShiftedRising {
                alpha: alpha[i].clone(),
                weight: i,
            };
            if nv[i] == 0 {
                return Ok(ScaledPolynomial::zero(basis));
            }
            let top = &alpha[i] + &beta + int(total);
            let den = factorial(nv[i] - 1)
                * pochhammer(&top, big_n + 2 - total)?
                * cross_product(alpha, nv, i);
            let pre = checked_div(common.clone(), den, "(α_i+β+|n|)_{N+2-|n|}")?;
            let (mut num_p, mut den_p) = cross_parameters(alpha, nv, i);
            num_p.insert(0, top);
            num_p.insert(0, int(1 - nv[i] as i64));
            den_p.insert(0, &alpha[i] + int(1));
            den_p.push(&alpha[i] + &beta + int(big_n + 2));
            let series = HypergeometricSpec::new(num_p, den_p, Rational::one()).coefficients()?;
            Ok(ScaledPolynomial::rational(
                basis,
                series.into_iter().map(|c| c * &pre).collect(),
            ))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(TypeIVector { components })
}

/// `Q^{(i)}_{(n_1,n_2)}(x)` for two Hahn weights through its double-series
/// (Kampé de Fériet) form. `i` is the zero-based weight index.
pub fn hahn_type1_p2_kdf(ws: &WeightSystem, n: &MultiIndex, i: usize, x: u64) -> Result<Rational> {
    ws.expect_family(Family::Hahn)?;
    if ws.p() != 2 {
        return Err(Error::Precondition(format!("double-series form needs p = 2, got {}", ws.p())));
    }
    n.check(ws)?;
    let nv = n.as_slice();
    if nv.contains(&0) {
        return Err(Error::Precondition("double-series form needs n_1, n_2 >= 1".into()));
    }
    if i > 1 {
        return Err(Error::Precondition(format!("weight index {i} out of range")));
    }
    let big_n = ws.big_n();
    if x > big_n {
        return Err(Error::Domain(format!("x = {x} is outside {{0, …, {big_n}}}")));
    }
    let alpha = ws.alpha();
    let beta = ws.beta();
    let j = 1 - i;
    let (a_i, a_h) = (&alpha[i], &alpha[j]);
    let (n_i, n_h) = (nv[i] as i64, nv[j] as i64);
    let total = n_i + n_h;
    let big = big_n as i64;

    let a_h_top = a_h + &beta + int(n_h + 1);
    let cross = a_i - a_h + int(1 - n_h);
    let num = sign(n_i - 1)
        * factorial((big + 1 - total) as u64)
        * factorial((total - 2) as u64)
        * pochhammer(&a_h_top, total - 1)?;
    let den = factorial((n_i - 1) as u64)
        * factorial((n_h - 1) as u64)
        * pochhammer(&(&beta + int(1)), total - 1)?
        * pochhammer(&(a_i + &beta + int(total + n_i)), big + 1 - total)?
        * pochhammer(&cross, total - 1)?;
    let prefactor = checked_div(num, den, "double-series prefactor")?;

    let spec = KampeDeFerietSpec {
        joint_num: vec![int(1 - n_i), int(-big)],
        left_num: vec![a_h - a_i + int(1 - n_i)],
        right_num: vec![a_i + &beta + int(total), cross, int(-(x as i64))],
        joint_den: vec![int(2 - total), a_h_top],
        left_den: vec![],
        right_den: vec![a_i + int(1), int(-big)],
        x: Rational::one(),
        y: Rational::one(),
    };
    Ok(prefactor * eval_kdf(&spec)?)
}

/// `Q_n(x)·(β+1)_{N-x}/(N-x)!` at a lattice point, computed from the terminating
/// `p+2Fp+1` series of the weighted Hahn type II function (its Γ(β+1)
/// normalisation divided out).
pub fn hahn_type2_weighted_series(ws: &WeightSystem, n: &MultiIndex, x: u64) -> Result<Rational> {
    ws.expect_family(Family::Hahn)?;
    n.check(ws)?;
    let big_n = ws.big_n();
    if x > big_n {
        return Err(Error::Domain(format!("x = {x} is outside {{0, …, {big_n}}}")));
    }
    let alpha = ws.alpha();
    let beta = ws.beta();
    let nv = n.as_slice();
    let total = n.total() as i64;

    let mut prefactor = sign(total) / factorial(big_n - n.total());
    let mut num_p = vec![int(-(x as i64)), -&beta - int(total)];
    let mut den_p = vec![-&beta - int(big_n as i64)];
    for (a, &k) in alpha.iter().zip(nv) {
        let k = k as i64;
        prefactor *= checked_div(
            pochhammer(&(a + int(1)), k)?,
            pochhammer(&(a + &beta + int(total + 1)), k)?,
            "(α_i+β+|n|+1)_{n_i}",
        )?;
        num_p.push(a + int(k + 1));
        den_p.push(a + int(1));
    }
    let series = eval_pfq(&HypergeometricSpec::new(num_p, den_p, Rational::one()))?;
    let gamma = GammaProduct::from_factors([(&beta + int(big_n as i64 + 1), 1), (&beta + int(1), -1)]);
    ExactValue::new(prefactor * series, gamma).as_rational()
}

/// Checks `Q[k] = (-1)^k (N-k)!/(N-|n|)! · P[k]` between the Hahn type II
/// coefficients (`(-x)_k` basis) and the Jacobi–Piñeiro ones (monomial basis)
/// sharing `α⃗, β`.
pub fn hahn_jp_coefficient_relation(ws: &WeightSystem, n: &MultiIndex) -> Result<bool> {
    let q = hahn_type2(ws, n)?;
    let p = jacobi_pineiro_type2(&ws.to_jacobi_pineiro()?, n)?;
    if q.coefficients.len() != p.coefficients.len() {
        return Ok(false);
    }
    let big_n = ws.big_n();
    let base = factorial(big_n - n.total());
    Ok(q.coefficients
        .iter()
        .zip(&p.coefficients)
        .enumerate()
        .all(|(k, (qk, pk))| *qk == sign(k as i64) * factorial(big_n - k as u64) / &base * pk))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    fn ws(alpha: &[(i64, i64)], big_n: u64) -> WeightSystem {
        WeightSystem::hahn(alpha.iter().map(|&(a, b)| rat(a, b)).collect(), rat(1, 4), big_n).unwrap()
    }

    #[test]
    fn first_degree() {
        let w = ws(&[(1, 2)], 3);
        let q = hahn_type2(&w, &MultiIndex::new(vec![1])).unwrap();
        assert_eq!(q.to_monomial().coefficients, vec![rat(-18, 11), int(1)]);
        assert!(q.eval(&rat(18, 11)).unwrap().is_zero());
        assert_eq!(q.coefficients[0], rat(-18, 11));
    }

    #[test]
    fn single_weight_type1() {
        let v = hahn_type1(&ws(&[(1, 2)], 2), &MultiIndex::new(vec![1])).unwrap();
        assert_eq!(v.components[0].coefficients, vec![rat(32, 165)]);
    }

    #[test]
    fn double_series_matches() {
        let w = ws(&[(1, 2), (1, 3)], 3);
        for n in [[1, 1], [2, 1], [1, 2]] {
            let n = MultiIndex::new(n.to_vec());
            let v = hahn_type1(&w, &n).unwrap();
            for i in 0..2 {
                for x in 0..=3u64 {
                    let direct = v.components[i].eval_unscaled(&int(x as i64));
                    assert_eq!(hahn_type1_p2_kdf(&w, &n, i, x).unwrap(), direct, "n={n} i={i} x={x}");
                }
            }
        }
    }

    #[test]
    fn weighted_series_matches() {
        let w = ws(&[(1, 2), (1, 3)], 4);
        for n in [[0, 0], [1, 1], [2, 1], [0, 3]] {
            let n = MultiIndex::new(n.to_vec());
            let q = hahn_type2(&w, &n).unwrap();
            for x in 0..=4i64 {
                let expect = q.eval_unscaled(&int(x)) * pochhammer(&rat(5, 4), 4 - x).unwrap()
                    / factorial(4 - x as u64);
                assert_eq!(hahn_type2_weighted_series(&w, &n, x as u64).unwrap(), expect);
            }
        }
    }

    #[test]
    fn relation_to_continuous() {
        let w = ws(&[(1, 2), (1, 3)], 4);
        assert!(hahn_jp_coefficient_relation(&w, &MultiIndex::new(vec![1, 1])).unwrap());
        assert!(hahn_jp_coefficient_relation(&ws(&[(1, 2)], 3), &MultiIndex::new(vec![1])).unwrap());
    }
}
