use num::{One, Zero};

use super::{
    cross_parameters, cross_product, for_each_box, tails, BasisKind, Family, MultiIndex,
    ScaledPolynomial, TypeIVector, WeightSystem,
};
use crate::error::Result;
use crate::exact::{factorial, int, pochhammer, sign, GammaProduct, Rational};
use crate::hypergeo::HypergeometricSpec;

/// Monic type II Laguerre polynomial of the first kind, monomial basis.
pub fn laguerre1_type2(ws: &WeightSystem, n: &MultiIndex) -> Result<ScaledPolynomial> {
    ws.expect_family(Family::LaguerreFirstKind)?;
    n.check(ws)?;
    let alpha = ws.alpha();
    let nv = n.as_slice();
    let p = nv.len();
    let total = n.total() as usize;

    let mut prefactor = sign(n.total() as i64);
    for q in 0..p {
        prefactor *= pochhammer(&(&alpha[q] + int(1)), nv[q] as i64)?;
    }

    let mut coeffs = vec![Rational::zero(); total + 1];
    for_each_box(nv, |l| {
        let t = tails(l);
        let mut term = Rational::one();
        for q in 0..p {
            term *= pochhammer(&int(-(nv[q] as i64)), l[q] as i64).unwrap() / factorial(l[q]);
            term /= pochhammer(&(&alpha[q] + int(1)), t[q]).unwrap();
            if q + 1 < p {
                term *= pochhammer(&(&alpha[q] + int(nv[q] as i64 + 1)), t[q + 1]).unwrap();
            }
        }
        coeffs[t[0] as usize] += term;
    });
    for c in &mut coeffs {
        *c *= &prefactor;
    }
    Ok(ScaledPolynomial::rational(BasisKind::Monomial, coeffs))
}

/// Type I Laguerre vector; component `i` carries the scale `1/Γ(α_i+1)`.
pub fn laguerre1_type1(ws: &WeightSystem, n: &MultiIndex) -> Result<TypeIVector> {
    ws.expect_family(Family::LaguerreFirstKind)?;
    n.check_type1(ws)?;
    let alpha = ws.alpha();
    let nv = n.as_slice();
    let total = n.total() as i64;
    let components = (0..nv.len())
        .map(|i| {
            if nv[i] == 0 {
                return Ok(ScaledPolynomial::zero(BasisKind::Monomial));
            }
            let pre = sign(total - 1) / (factorial(nv[i] - 1) * cross_product(alpha, nv, i));
            let (mut num, mut den) = cross_parameters(alpha, nv, i);
            num.insert(0, int(1 - nv[i] as i64));
            den.insert(0, &alpha[i] + int(1));
            let series = HypergeometricSpec::new(num, den, Rational::one()).coefficients()?;
            let coeffs = series.into_iter().map(|c| c * &pre).collect();
            let scale = GammaProduct::power(&alpha[i] + int(1), -1);
            Ok(ScaledPolynomial::new(BasisKind::Monomial, coeffs, scale))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(TypeIVector { components })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    fn ws(alpha: &[(i64, i64)]) -> WeightSystem {
        WeightSystem::laguerre(alpha.iter().map(|&(a, b)| rat(a, b)).collect()).unwrap()
    }

    #[test]
    fn first_degree() {
        let b = laguerre1_type2(&ws(&[(1, 2)]), &MultiIndex::new(vec![1])).unwrap();
        assert_eq!(b.coefficients, vec![rat(-3, 2), int(1)]);
    }

    #[test]
    fn zero_index_is_one() {
        let b = laguerre1_type2(&ws(&[(1, 2), (1, 3), (1, 5)]), &MultiIndex::zero(3)).unwrap();
        assert_eq!(b.coefficients, vec![int(1)]);
    }

    #[test]
    fn monic() {
        let w = ws(&[(1, 2), (1, 3)]);
        for n in [[1, 1], [2, 1], [0, 3], [2, 2]] {
            let b = laguerre1_type2(&w, &MultiIndex::new(n.to_vec())).unwrap();
            assert_eq!(b.degree(), Some(n.iter().sum::<u64>() as usize));
            assert_eq!(b.leading_monomial(), int(1));
        }
    }

    #[test]
    fn single_component_constant() {
        let v = laguerre1_type1(&ws(&[(1, 2)]), &MultiIndex::new(vec![1])).unwrap();
        let c = &v.components[0];
        assert_eq!(c.coefficients, vec![int(1)]);
        assert_eq!(c.scale, GammaProduct::power(rat(3, 2), -1));
    }

    #[test]
    fn zero_slots() {
        let v = laguerre1_type1(&ws(&[(1, 2), (1, 3)]), &MultiIndex::new(vec![0, 2])).unwrap();
        assert!(v.components[0].is_zero());
        assert_eq!(v.components[1].coefficients.len(), 2);
        assert!(laguerre1_type1(&ws(&[(1, 2)]), &MultiIndex::zero(1)).is_err());
    }
}
