//! Independent verification: exact moments, orthogonality reports, and
//! reconstruction of the polynomials from their defining conditions.

mod linalg;
mod mellin;

pub use linalg::solve;
pub use mellin::{
    check_discrete_mellin_inversion, check_hahn_summation_identity, check_mellin_type2,
    hahn_summation_lhs, hahn_summation_target, mellin_type2_sides, recover,
};

use std::fmt;

use num::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::{factorial, int, pochhammer, sign, ExactValue, GammaProduct, Rational};
use crate::families::{
    type1, type2, BasisKind, Family, MultiIndex, ScaledPolynomial, TypeIVector, WeightSystem,
};

/// `∫ f w_i` (or the lattice sum) split as rational part × Γ product.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MomentValue {
    pub rational_part: Rational,
    pub gamma_part: GammaProduct,
}

impl MomentValue {
    pub fn to_exact(&self) -> ExactValue {
        ExactValue::new(self.rational_part.clone(), self.gamma_part.clone())
    }
}

/// Test functions accepted by [`moment`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MomentBasis {
    /// `x^j`
    Power(u64),
    /// `(β+N-x+1)_j (x+α_i+1)_l`, Hahn only.
    HahnPochhammer { backward: u64, shifted: u64 },
}

/// `⟨1, w_i⟩` up to the rational factor, i.e. the Γ part every moment of
/// weight `i` shares.
pub fn moment_base(ws: &WeightSystem, i: usize) -> GammaProduct {
    let a = &ws.alpha()[i];
    match ws.family() {
        Family::LaguerreFirstKind => GammaProduct::gamma(a + int(1)),
        Family::JacobiPineiro => {
            let b = ws.beta();
            GammaProduct::from_factors([(a + int(1), 1), (&b + int(1), 1), (a + &b + int(2), -1)])
        }
        Family::Hahn => GammaProduct::one(),
    }
}

/// Rational part of `⟨x^j, w_i⟩` relative to [`moment_base`].
pub fn power_moment(ws: &WeightSystem, i: usize, j: u64) -> Rational {
    let a = &ws.alpha()[i];
    let j = j as i64;
    match ws.family() {
        Family::LaguerreFirstKind => pochhammer(&(a + int(1)), j).unwrap(),
        Family::JacobiPineiro => {
            pochhammer(&(a + int(1)), j).unwrap()
                / pochhammer(&(a + ws.beta() + int(2)), j).unwrap()
        }
        Family::Hahn => lattice_sum(ws, i, |k| int(k as i64).pow(j as i32)),
    }
}

/// `Σ_{k=0}^N f(k) w_i(k)`.
pub fn lattice_sum(ws: &WeightSystem, i: usize, f: impl Fn(u64) -> Rational) -> Rational {
    (0..=ws.big_n()).map(|k| f(k) * ws.hahn_weight(i, k)).sum()
}

/// Brute-force `Σ_k (β+N-k+1)_j (k+α_i+1)_l w_i(k)`.
pub fn hahn_pochhammer_moment_direct(ws: &WeightSystem, i: usize, j: u64, l: u64) -> Rational {
    let top = ws.beta() + int(ws.big_n() as i64 + 1);
    let a = ws.alpha()[i].clone() + int(1);
    lattice_sum(ws, i, |k| {
        let k = int(k as i64);
        pochhammer(&(&top - &k), j as i64).unwrap() * pochhammer(&(&a + k), l as i64).unwrap()
    })
}

/// Closed form of [`hahn_pochhammer_moment_direct`]:
/// `(β+1)_j (α_i+1)_l (α_i+β+2+j+l)_N / N!`.
pub fn hahn_pochhammer_moment(ws: &WeightSystem, i: usize, j: u64, l: u64) -> Rational {
    let a = &ws.alpha()[i];
    let b = ws.beta();
    let big_n = ws.big_n();
    pochhammer(&(&b + int(1)), j as i64).unwrap()
        * pochhammer(&(a + int(1)), l as i64).unwrap()
        * pochhammer(&(a + &b + int(2 + (j + l) as i64)), big_n as i64).unwrap()
        / factorial(big_n)
}

/// Exact moment of weight `i` against a basis function.
pub fn moment(ws: &WeightSystem, i: usize, element: MomentBasis) -> Result<MomentValue> {
    if i >= ws.p() {
        return Err(Error::Admissibility(format!("weight index {i} out of range")));
    }
    let rational_part = match element {
        MomentBasis::Power(j) => power_moment(ws, i, j),
        MomentBasis::HahnPochhammer { backward, shifted } => {
            if ws.family() != Family::Hahn {
                return Err(Error::Admissibility(
                    "Pochhammer test functions need a Hahn weight".into(),
                ));
            }
            hahn_pochhammer_moment(ws, i, backward, shifted)
        }
    };
    Ok(MomentValue {
        rational_part,
        gamma_part: moment_base(ws, i),
    })
}

/// `⟨x^j · poly, w_i⟩` as an exact value, scale included.
pub fn weighted_integral(ws: &WeightSystem, i: usize, poly: &ScaledPolynomial, j: u64) -> ExactValue {
    let rational = if ws.family() == Family::Hahn {
        lattice_sum(ws, i, |k| {
            let x = int(k as i64);
            x.pow(j as i32) * poly.eval_unscaled(&x)
        })
    } else {
        let mono = poly.to_monomial();
        mono.coefficients
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(m, c)| c * power_moment(ws, i, m as u64 + j))
            .sum()
    };
    ExactValue::new(rational, &poly.scale * &moment_base(ws, i))
}

/// Product of two polynomials, in the monomial basis.
pub fn multiply(a: &ScaledPolynomial, b: &ScaledPolynomial) -> ScaledPolynomial {
    let a = a.to_monomial();
    let b = b.to_monomial();
    let mut out = vec![Rational::zero(); (a.coefficients.len() + b.coefficients.len()).saturating_sub(1)];
    for (i, x) in a.coefficients.iter().enumerate() {
        for (j, y) in b.coefficients.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    ScaledPolynomial::new(BasisKind::Monomial, out, &a.scale * &b.scale)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PolynomialType {
    TypeI,
    TypeII,
}

impl fmt::Display for PolynomialType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PolynomialType::TypeI => "I",
            PolynomialType::TypeII => "II",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Residual {
    /// Weight index for type II conditions; `None` for type I, whose
    /// conditions sum over all weights.
    pub weight: Option<usize>,
    pub j: u64,
    pub value: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Normalization {
    pub value: Rational,
    pub target: Rational,
}

/// Exact residuals of the orthogonality conditions.
///
/// Type II residuals of continuous families are reported relative to
/// `⟨1, w_i⟩`, so they are rational. Hahn type I conditions are tested in the
/// `(β+N-x+1)_j` basis; `power_residuals` carries the same conditions after
/// the triangular change to `x^j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrthogonalityReport {
    pub family: Family,
    pub kind: PolynomialType,
    pub n: MultiIndex,
    pub params: String,
    pub residuals: Vec<Residual>,
    pub normalization: Option<Normalization>,
    pub power_residuals: Vec<Residual>,
    pub power_normalization: Option<Normalization>,
}

impl OrthogonalityReport {
    /// No conditions to check at all.
    pub fn vacuous(&self) -> bool {
        self.residuals.is_empty() && self.normalization.is_none()
    }

    pub fn pass(&self) -> bool {
        let zero = |r: &Vec<Residual>| r.iter().all(|c| c.value.is_zero());
        let norm = |n: &Option<Normalization>| n.as_ref().is_none_or(|n| n.value == n.target);
        zero(&self.residuals)
            && zero(&self.power_residuals)
            && norm(&self.normalization)
            && norm(&self.power_normalization)
    }

    /// Residuals that are not zero.
    pub fn failures(&self) -> impl Iterator<Item = &Residual> {
        self.residuals
            .iter()
            .chain(&self.power_residuals)
            .filter(|r| !r.value.is_zero())
    }
}

/// `⟨x^j B, w_i⟩ = 0` for `j < n_i`.
pub fn check_type2_orthogonality(
    ws: &WeightSystem,
    n: &MultiIndex,
    b: &ScaledPolynomial,
) -> Result<OrthogonalityReport> {
    n.check(ws)?;
    if b.degree() != Some(n.total() as usize) {
        return Err(Error::Precondition(format!(
            "type II polynomial has degree {:?}, expected {}",
            b.degree(),
            n.total()
        )));
    }
    let mut residuals = Vec::new();
    for (i, &ni) in n.as_slice().iter().enumerate() {
        let base = moment_base(ws, i).inv();
        for j in 0..ni {
            let v = weighted_integral(ws, i, b, j);
            let value = ExactValue::new(v.coeff, &v.gamma * &base).as_rational()?;
            residuals.push(Residual {
                weight: Some(i),
                j,
                value,
            });
        }
    }
    Ok(OrthogonalityReport {
        family: ws.family(),
        kind: PolynomialType::TypeII,
        n: n.clone(),
        params: ws.to_string(),
        residuals,
        normalization: None,
        power_residuals: Vec::new(),
        power_normalization: None,
    })
}

fn check_components(n: &MultiIndex, a: &TypeIVector) -> Result<()> {
    if a.components.len() != n.len() {
        return Err(Error::Precondition(format!(
            "type I vector has {} components for {} weights",
            a.components.len(),
            n.len()
        )));
    }
    for (i, (c, &ni)) in a.components.iter().zip(n.as_slice()).enumerate() {
        if let Some(d) = c.degree() {
            if d as u64 >= ni {
                return Err(Error::Precondition(format!(
                    "component {i} has degree {d} but n_{i} = {ni}"
                )));
            }
        }
    }
    Ok(())
}

/// `Σ_i ⟨x^j A^(i), w_i⟩` for `j = 0..|n|`, exact.
fn type1_power_values(ws: &WeightSystem, n: &MultiIndex, a: &TypeIVector) -> Result<Vec<Rational>> {
    (0..n.total())
        .map(|j| {
            let mut acc = ExactValue::zero();
            for (i, c) in a.components.iter().enumerate() {
                if !c.is_zero() {
                    acc = acc.add(&weighted_integral(ws, i, c, j).normalized()?)?;
                }
            }
            acc.as_rational()
        })
        .collect()
}

/// `Σ_i Σ_k (β+N-k+1)_j A^(i)(k) w_i(k)` for `j = 0..|n|`.
fn hahn_pochhammer_values(ws: &WeightSystem, n: &MultiIndex, a: &TypeIVector) -> Result<Vec<Rational>> {
    let top = ws.beta() + int(ws.big_n() as i64 + 1);
    let mut scales = Vec::with_capacity(a.components.len());
    for c in &a.components {
        scales.push(ExactValue::new(Rational::one(), c.scale.clone()).as_rational()?);
    }
    Ok((0..n.total())
        .map(|j| {
            a.components
                .iter()
                .zip(&scales)
                .enumerate()
                .map(|(i, (c, s))| {
                    let raw = match &c.basis {
                        BasisKind::ShiftedRising { weight, .. } if *weight == i => c
                            .coefficients
                            .iter()
                            .enumerate()
                            .map(|(l, cl)| cl * hahn_pochhammer_moment(ws, i, j, l as u64))
                            .sum::<Rational>(),
                        _ => lattice_sum(ws, i, |k| {
                            let x = int(k as i64);
                            pochhammer(&(&top - &x), j as i64).unwrap() * c.eval_unscaled(&x)
                        }),
                    };
                    raw * s
                })
                .sum()
        })
        .collect())
}

/// Type I conditions: zero for `j <= |n|-2`, normalised at `j = |n|-1`.
pub fn check_type1_orthogonality(
    ws: &WeightSystem,
    n: &MultiIndex,
    a: &TypeIVector,
) -> Result<OrthogonalityReport> {
    n.check(ws)?;
    check_components(n, a)?;
    let total = n.total();
    let as_report = |values: Vec<Rational>, target: Rational| {
        let mut residuals = Vec::new();
        let mut normalization = None;
        for (j, value) in values.into_iter().enumerate() {
            if j as u64 + 1 == total {
                normalization = Some(Normalization {
                    value,
                    target: target.clone(),
                });
            } else {
                residuals.push(Residual { weight: None, j: j as u64, value });
            }
        }
        (residuals, normalization)
    };
    let (residuals, normalization, power_residuals, power_normalization) = if ws.family() == Family::Hahn {
        let poch = hahn_pochhammer_values(ws, n, a)?;
        let power = pochhammer_to_power(ws, &poch);
        let (r, nm) = as_report(poch, sign(total as i64 - 1));
        let (pr, pn) = as_report(power, Rational::one());
        (r, nm, pr, pn)
    } else {
        let (r, nm) = as_report(type1_power_values(ws, n, a)?, Rational::one());
        (r, nm, Vec::new(), None)
    };
    Ok(OrthogonalityReport {
        family: ws.family(),
        kind: PolynomialType::TypeI,
        n: n.clone(),
        params: ws.to_string(),
        residuals,
        normalization,
        power_residuals,
        power_normalization,
    })
}

/// Inverts the lower-triangular change `(β+N-x+1)_j = Σ_m T[j][m] x^m` on a
/// vector of pairings.
fn pochhammer_to_power(ws: &WeightSystem, poch: &[Rational]) -> Vec<Rational> {
    let top = ws.beta() + int(ws.big_n() as i64 + 1);
    let table = BasisKind::BackwardPochhammer { top }.monomial_table(poch.len());
    let mut power: Vec<Rational> = Vec::with_capacity(poch.len());
    for (j, row) in table.iter().enumerate() {
        let mut acc = poch[j].clone();
        for (m, t) in row.iter().enumerate().take(j) {
            acc -= t * &power[m];
        }
        power.push(acc / &row[j]);
    }
    power
}

/// Expected value of `Σ_i ⟨B_n A^(i)_m, w_i⟩`.
fn biorthogonality_target(n: &MultiIndex, m: &MultiIndex) -> Result<Rational> {
    let (tn, tm) = (n.total(), m.total());
    if m.as_slice().iter().zip(n.as_slice()).all(|(a, b)| a <= b) {
        Ok(Rational::zero())
    } else if tm == tn + 1 {
        Ok(Rational::one())
    } else if tm > tn + 1 {
        Ok(Rational::zero())
    } else {
        Err(Error::Precondition(format!(
            "pairing of n = {n} with m = {m} is not covered by the biorthogonality relations"
        )))
    }
}

/// `Σ_i ⟨B_n A^(i)_m, w_i⟩` for the generated polynomials.
pub fn biorthogonal_pairing(ws: &WeightSystem, n: &MultiIndex, m: &MultiIndex) -> Result<Rational> {
    let b = type2(ws, n)?;
    let a = type1(ws, m)?;
    let mut acc = ExactValue::zero();
    for (i, c) in a.components.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let prod = multiply(&b, c);
        acc = acc.add(&weighted_integral(ws, i, &prod, 0).normalized()?)?;
    }
    acc.as_rational()
}

/// Biorthogonality of the generated type II and type I families.
pub fn check_biorthogonality(ws: &WeightSystem, n: &MultiIndex, m: &MultiIndex) -> Result<bool> {
    n.check(ws)?;
    m.check_type1(ws)?;
    let target = biorthogonality_target(n, m)?;
    Ok(biorthogonal_pairing(ws, n, m)? == target)
}

/// Monic type II polynomial reconstructed from its orthogonality conditions.
pub fn oracle_solve_type2(ws: &WeightSystem, n: &MultiIndex) -> Result<ScaledPolynomial> {
    n.check(ws)?;
    let total = n.total() as usize;
    let mut matrix = Vec::with_capacity(total);
    let mut rhs = Vec::with_capacity(total);
    for (i, &ni) in n.as_slice().iter().enumerate() {
        let moments: Vec<Rational> = (0..ni + total as u64)
            .map(|t| power_moment(ws, i, t))
            .collect();
        for j in 0..ni as usize {
            matrix.push(moments[j..j + total].to_vec());
            rhs.push(-moments[j + total].clone());
        }
    }
    let mut coeffs = solve(matrix, rhs)?;
    coeffs.push(Rational::one());
    Ok(ScaledPolynomial::rational(BasisKind::Monomial, coeffs))
}

/// Type I vector reconstructed from its orthogonality and normalisation
/// conditions; component `i` carries the scale `1/⟨1, w_i⟩`.
pub fn oracle_solve_type1(ws: &WeightSystem, n: &MultiIndex) -> Result<TypeIVector> {
    n.check_type1(ws)?;
    let nv = n.as_slice();
    let total = n.total() as usize;
    let mut matrix = vec![Vec::with_capacity(total); total];
    for (i, &ni) in nv.iter().enumerate() {
        let moments: Vec<Rational> = (0..ni + total as u64)
            .map(|t| power_moment(ws, i, t))
            .collect();
        for (j, row) in matrix.iter_mut().enumerate() {
            row.extend_from_slice(&moments[j..j + ni as usize]);
        }
    }
    let mut rhs = vec![Rational::zero(); total];
    rhs[total - 1] = Rational::one();
    let solution = solve(matrix, rhs)?;
    let mut offset = 0;
    let components = nv
        .iter()
        .enumerate()
        .map(|(i, &ni)| {
            let coeffs = solution[offset..offset + ni as usize].to_vec();
            offset += ni as usize;
            ScaledPolynomial::new(BasisKind::Monomial, coeffs, moment_base(ws, i).inv())
        })
        .collect();
    Ok(TypeIVector { components })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;
    use crate::families::{hahn_type1, laguerre1_type2};

    fn hahn(alpha: Vec<Rational>, big_n: u64) -> WeightSystem {
        WeightSystem::hahn(alpha, rat(1, 4), big_n).unwrap()
    }

    #[test]
    fn base_moments() {
        let ws = WeightSystem::laguerre(vec![rat(1, 2)]).unwrap();
        let m = moment(&ws, 0, MomentBasis::Power(0)).unwrap();
        assert_eq!(m.rational_part, int(1));
        assert_eq!(m.gamma_part, GammaProduct::gamma(rat(3, 2)));
        let ws = WeightSystem::jacobi_pineiro(vec![rat(1, 2)], rat(1, 4)).unwrap();
        let m = moment(&ws, 0, MomentBasis::Power(1)).unwrap();
        assert_eq!(m.rational_part, rat(6, 11));
    }

    #[test]
    fn hahn_fast_path() {
        for big_n in 0..=8 {
            let ws = hahn(vec![rat(1, 2), rat(1, 3)], big_n);
            for j in 0..=4 {
                for l in 0..=4 {
                    assert_eq!(
                        hahn_pochhammer_moment(&ws, 1, j, l),
                        hahn_pochhammer_moment_direct(&ws, 1, j, l)
                    );
                }
            }
        }
    }

    #[test]
    fn solve_first_degree() {
        let ws = WeightSystem::laguerre(vec![rat(1, 2)]).unwrap();
        let b = oracle_solve_type2(&ws, &MultiIndex::new(vec![1])).unwrap();
        assert_eq!(b.coefficients, vec![rat(-3, 2), int(1)]);
        let b = oracle_solve_type2(&ws, &MultiIndex::zero(1)).unwrap();
        assert_eq!(b.coefficients, vec![int(1)]);
        let ws = hahn(vec![rat(1, 2)], 2);
        let a = oracle_solve_type1(&ws, &MultiIndex::new(vec![1])).unwrap();
        assert_eq!(a.components[0].coefficients, vec![rat(32, 165)]);
    }

    #[test]
    fn reports() {
        let ws = WeightSystem::laguerre(vec![rat(1, 2), rat(1, 3)]).unwrap();
        let n = MultiIndex::new(vec![2, 1]);
        let mut b = laguerre1_type2(&ws, &n).unwrap();
        assert!(check_type2_orthogonality(&ws, &n, &b).unwrap().pass());
        b.coefficients[0] += int(1);
        let report = check_type2_orthogonality(&ws, &n, &b).unwrap();
        assert!(!report.pass());
        assert!(report.failures().count() > 0);
        let zero = MultiIndex::zero(2);
        let one = laguerre1_type2(&ws, &zero).unwrap();
        let report = check_type2_orthogonality(&ws, &zero, &one).unwrap();
        assert!(report.vacuous() && report.pass());
    }

    #[test]
    fn hahn_type1_targets() {
        let ws = hahn(vec![rat(1, 2), rat(1, 3)], 5);
        let n = MultiIndex::new(vec![2, 1]);
        let a = hahn_type1(&ws, &n).unwrap();
        let report = check_type1_orthogonality(&ws, &n, &a).unwrap();
        assert!(report.pass());
        assert_eq!(report.normalization.unwrap().target, int(1));
        let zero = TypeIVector {
            components: vec![ScaledPolynomial::zero(BasisKind::Monomial); 2],
        };
        assert!(!check_type1_orthogonality(&ws, &n, &zero).unwrap().pass());
    }

    #[test]
    fn biorthogonality_cases() {
        let ws = WeightSystem::jacobi_pineiro(vec![rat(1, 2), rat(1, 3)], rat(1, 4)).unwrap();
        let mi = |v: &[u64]| MultiIndex::new(v.to_vec());
        assert!(check_biorthogonality(&ws, &mi(&[1, 1]), &mi(&[1, 1])).unwrap());
        assert!(check_biorthogonality(&ws, &mi(&[1, 1]), &mi(&[2, 1])).unwrap());
        assert!(check_biorthogonality(&ws, &mi(&[1, 0]), &mi(&[2, 2])).unwrap());
        assert!(check_biorthogonality(&ws, &mi(&[2, 0]), &mi(&[0, 2])).is_err());
    }
}
