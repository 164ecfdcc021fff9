use num::{One, Zero};

use super::{
    checked_div, cross_parameters, cross_product, for_each_box, tails, BasisKind, Family,
    MultiIndex, ScaledPolynomial, TypeIVector, WeightSystem,
};
use crate::error::Result;
use crate::exact::{factorial, int, pochhammer, sign, GammaProduct, Rational};
use crate::hypergeo::HypergeometricSpec;

/// Monic type II Jacobi–Piñeiro polynomial, monomial basis.
pub fn jacobi_pineiro_type2(ws: &WeightSystem, n: &MultiIndex) -> Result<ScaledPolynomial> {
    ws.expect_family(Family::JacobiPineiro)?;
    n.check(ws)?;
    let coeffs = jp_like_coefficients(ws.alpha(), &ws.beta(), n.as_slice(), None)?;
    let s = sign(n.total() as i64);
    Ok(ScaledPolynomial::rational(
        BasisKind::Monomial,
        coeffs.into_iter().map(|c| c * &s).collect(),
    ))
}

/// Shared double-sum for the Jacobi–Piñeiro and Hahn type II expansions.
/// With `big_n` set, the `(-N)_{|n|}/(-N)_{L_1}` factor of the Hahn case is
/// included and the sign prefactor is left to the caller.
pub(super) fn jp_like_coefficients(
    alpha: &[Rational],
    beta: &Rational,
    nv: &[u64],
    big_n: Option<u64>,
) -> Result<Vec<Rational>> {
    let p = nv.len();
    let total: u64 = nv.iter().sum();
    let mut prefix = Vec::with_capacity(p);
    let mut acc = 0i64;
    for &k in nv {
        acc += k as i64;
        prefix.push(acc);
    }
    let mut prefactor = Rational::one();
    for q in 0..p {
        let num = pochhammer(&(&alpha[q] + int(1)), nv[q] as i64)?;
        let den = pochhammer(&(&alpha[q] + beta + int(total as i64 + 1)), nv[q] as i64)?;
        prefactor *= checked_div(num, den, "(α_q+β+|n|+1)_{n_q}")?;
    }
    let mut coeffs = vec![Rational::zero(); total as usize + 1];
    let mut failure = None;
    for_each_box(nv, |l| {
        if failure.is_some() {
            return;
        }
        let t = tails(l);
        let mut num = Rational::one();
        let mut den = Rational::one();
        for q in 0..p {
            num *= pochhammer(&int(-(nv[q] as i64)), l[q] as i64).unwrap();
            den *= factorial(l[q]);
            let shifted = alpha[q].clone() + beta + int(prefix[q] + 1);
            num *= pochhammer(&shifted, t[q]).unwrap();
            den *= pochhammer(&(&alpha[q] + int(1)), t[q]).unwrap();
            if q + 1 < p {
                num *= pochhammer(&(&alpha[q] + int(nv[q] as i64 + 1)), t[q + 1]).unwrap();
                den *= pochhammer(&shifted, t[q + 1]).unwrap();
            }
        }
        if let Some(big_n) = big_n {
            let minus_n = int(-(big_n as i64));
            num *= pochhammer(&minus_n, total as i64).unwrap();
            den *= pochhammer(&minus_n, t[0]).unwrap();
        }
        match checked_div(num, den, "type II denominator") {
            Ok(v) => coeffs[t[0] as usize] += v,
            Err(e) => failure = Some(e),
        }
    });
    if let Some(e) = failure {
        return Err(e);
    }
    Ok(coeffs.into_iter().map(|c| c * &prefactor).collect())
}

/// Type I Jacobi–Piñeiro vector; component `i` carries the scale
/// `Γ(α_i+β+|n|) / (Γ(β+|n|) Γ(α_i+1))`.
pub fn jacobi_pineiro_type1(ws: &WeightSystem, n: &MultiIndex) -> Result<TypeIVector> {
    ws.expect_family(Family::JacobiPineiro)?;
    n.check_type1(ws)?;
    let alpha = ws.alpha();
    let beta = ws.beta();
    let nv = n.as_slice();
    let total = n.total() as i64;
    let mut common = sign(total - 1);
    for k in 0..nv.len() {
        common *= pochhammer(&(&alpha[k] + &beta + int(total)), nv[k] as i64)?;
    }
    let components = (0..nv.len())
        .map(|i| {
            if nv[i] == 0 {
                return Ok(ScaledPolynomial::zero(BasisKind::Monomial));
            }
            let pre = &common / (factorial(nv[i] - 1) * cross_product(alpha, nv, i));
            let (mut num, mut den) = cross_parameters(alpha, nv, i);
            num.insert(0, &alpha[i] + &beta + int(total));
            num.insert(0, int(1 - nv[i] as i64));
            den.insert(0, &alpha[i] + int(1));
            let series = HypergeometricSpec::new(num, den, Rational::one()).coefficients()?;
            let coeffs = series.into_iter().map(|c| c * &pre).collect();
            let scale = GammaProduct::from_factors([
                (&alpha[i] + &beta + int(total), 1),
                (&beta + int(total), -1),
                (&alpha[i] + int(1), -1),
            ]);
            Ok(ScaledPolynomial::new(BasisKind::Monomial, coeffs, scale))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(TypeIVector { components })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    #[test]
    fn first_degree() {
        let ws = WeightSystem::jacobi_pineiro(vec![rat(1, 2)], rat(1, 4)).unwrap();
        let b = jacobi_pineiro_type2(&ws, &MultiIndex::new(vec![1])).unwrap();
        assert_eq!(b.coefficients, vec![rat(-6, 11), int(1)]);
        let b = jacobi_pineiro_type2(&ws, &MultiIndex::zero(1)).unwrap();
        assert_eq!(b.coefficients, vec![int(1)]);
    }

    #[test]
    fn monic_and_degree() {
        let ws = WeightSystem::jacobi_pineiro(vec![rat(1, 2), rat(1, 3), rat(1, 5)], rat(1, 4)).unwrap();
        for n in [[1, 1, 1], [2, 0, 1], [0, 0, 4]] {
            let b = jacobi_pineiro_type2(&ws, &MultiIndex::new(n.to_vec())).unwrap();
            assert_eq!(b.leading_monomial(), int(1));
            assert_eq!(b.degree(), Some(n.iter().sum::<u64>() as usize));
        }
    }

    #[test]
    fn type1_slots() {
        let ws = WeightSystem::jacobi_pineiro(vec![rat(1, 2), rat(1, 3)], rat(1, 4)).unwrap();
        let v = jacobi_pineiro_type1(&ws, &MultiIndex::new(vec![3, 1])).unwrap();
        assert_eq!(v.components[0].coefficients.len(), 3);
        assert_eq!(v.components[0].degree(), Some(2));
        assert_eq!(v.components[1].degree(), Some(0));
    }
}
