//! Contour-integral representations realised as exact residue sums.
//!
//! Contours are never represented geometrically: each integral is the sum of
//! residues over its enumerated pole set.

mod type2;

pub use type2::{
    hahn_type2_residue_sum, partial_residue_sum_f64, type2_prefactor, type2_residue_coefficient,
    type2_series_coefficient, verify_type2_series_equivalence, weighted_type2_f64,
};

use std::fmt;

use num::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::{factorial, int, nonpositive_integer, pochhammer, sign, ExactValue, GammaProduct, Rational};
use crate::families::{BasisKind, Family, MultiIndex, ScaledPolynomial, TypeIVector, WeightSystem};
use crate::oracle::solve;

/// A simple pole of a contour integrand.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResiduePole {
    pub location: Rational,
    /// Weight the pole belongs to (type I poles only).
    pub weight_index: Option<usize>,
    pub order: u32,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearFormComponent {
    pub weight: usize,
    pub coefficient: Rational,
    pub residual: GammaProduct,
}

impl LinearFormComponent {
    pub fn value(&self) -> ExactValue {
        ExactValue::new(self.coefficient.clone(), self.residual.clone())
    }
}

/// `Σ_i c_i f_i(x)` at a fixed `x`, where `f_i(x) = x^{α_i}` for the
/// continuous families and `f_i = 1` for Hahn (whose `Γ(x+α_i+1)/Γ(α_i+1)`
/// factor is folded into `c_i`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearFormValue {
    pub x: Rational,
    pub components: Vec<LinearFormComponent>,
}

impl LinearFormValue {
    /// Decomposition of the linear form built from an explicit type I vector.
    pub fn from_type1(ws: &WeightSystem, a: &TypeIVector, x: &Rational) -> Result<Self> {
        let hahn_x = lattice_point(ws, x)?;
        let components = a
            .components
            .iter()
            .enumerate()
            .map(|(i, c)| {
                let mut coefficient = c.eval_unscaled(x);
                if let Some(k) = hahn_x {
                    coefficient *= pochhammer(&(&ws.alpha()[i] + int(1)), k as i64)?;
                }
                let v = ExactValue::new(coefficient, c.scale.clone()).normalized()?;
                Ok(LinearFormComponent {
                    weight: i,
                    coefficient: v.coeff,
                    residual: v.gamma,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            x: x.clone(),
            components,
        })
    }

    /// Componentwise exact equality; the `f_i` are linearly independent.
    pub fn same_as(&self, other: &LinearFormValue) -> Result<bool> {
        if self.x != other.x || self.components.len() != other.components.len() {
            return Ok(false);
        }
        for (a, b) in self.components.iter().zip(&other.components) {
            if a.weight != b.weight || !a.value().exact_eq(&b.value())? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

impl fmt::Display for LinearFormValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .components
            .iter()
            .map(|c| format!("[{}] {}", c.weight, c.value()))
            .collect();
        write!(f, "x={}: {}", self.x, parts.join(" + "))
    }
}

/// `p_{|n|-1}`, known to be constant for each family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalizationConstant {
    pub value: ExactValue,
}

fn lattice_point(ws: &WeightSystem, x: &Rational) -> Result<Option<u64>> {
    if ws.family() != Family::Hahn {
        return Ok(None);
    }
    let k = if x.is_integer() && *x >= Rational::zero() {
        x.to_integer().try_into().ok()
    } else {
        None
    };
    match k {
        Some(k) if k <= ws.big_n() => Ok(Some(k)),
        _ => Err(Error::Domain(format!("x = {x} is not in {{0, …, {}}}", ws.big_n()))),
    }
}

/// Constant numerator of the type I integrand.
pub fn normalization_constant(ws: &WeightSystem, n: &MultiIndex) -> Result<NormalizationConstant> {
    n.check_type1(ws)?;
    let total = n.total() as i64;
    let beta = ws.beta();
    let jp_like = || -> Result<Rational> {
        let mut acc = sign(total - 1) / pochhammer(&(&beta + int(1)), total - 1)?;
        for (a, &k) in ws.alpha().iter().zip(n.as_slice()) {
            acc *= pochhammer(&(a + &beta + int(total)), k as i64)?;
        }
        Ok(acc)
    };
    let value = match ws.family() {
        Family::LaguerreFirstKind => sign(total - 1),
        Family::JacobiPineiro => jp_like()?,
        Family::Hahn => jp_like()? * factorial(ws.big_n() + 1 - n.total()),
    };
    Ok(NormalizationConstant {
        value: ExactValue::rational(value),
    })
}

/// The family's `φ(t)` at a node.
pub fn phi(ws: &WeightSystem, n: &MultiIndex, t: &Rational) -> Result<ExactValue> {
    let beta = ws.beta();
    let total = n.total() as i64;
    let factors = match ws.family() {
        Family::LaguerreFirstKind => vec![(t + int(1), -1)],
        Family::JacobiPineiro => vec![(t + &beta + int(total), 1), (t + int(1), -1), (&beta + int(1), -1)],
        Family::Hahn => vec![
            (t + &beta + int(total), 1),
            (t + &beta + int(ws.big_n() as i64 + 2), -1),
            (t + int(1), -1),
        ],
    };
    for (arg, exp) in &factors {
        if *exp > 0 && nonpositive_integer(arg).is_some() {
            return Err(Error::Pole(format!("φ has a pole at t = {t}")));
        }
    }
    Ok(ExactValue::new(Rational::one(), GammaProduct::from_factors(factors)))
}

/// The `|n|` simple poles `t = α_i + k`, `k < n_i`.
pub fn type1_poles(ws: &WeightSystem, n: &MultiIndex) -> Vec<ResiduePole> {
    let mut out = Vec::with_capacity(n.total() as usize);
    for (i, (a, &ni)) in ws.alpha().iter().zip(n.as_slice()).enumerate() {
        for k in 0..ni {
            out.push(ResiduePole {
                location: a + int(k as i64),
                weight_index: Some(i),
                order: 1,
            });
        }
    }
    out
}

/// `(-1)^k / (k! (n_i-1-k)! ∏_{j≠i} (α_j-α_i-k)_{n_j})`, the residue of
/// `1/∏_j (α_j - t)_{n_j}` at `t = α_i + k` up to orientation.
fn node_factor(ws: &WeightSystem, n: &MultiIndex, i: usize, k: u64) -> Rational {
    let alpha = ws.alpha();
    let nv = n.as_slice();
    let mut den = factorial(k) * factorial(nv[i] - 1 - k);
    for j in 0..nv.len() {
        if j != i {
            den *= pochhammer(&(&alpha[j] - &alpha[i] - int(k as i64)), nv[j] as i64).unwrap();
        }
    }
    sign(k as i64) / den
}

/// Residue at each type I pole: the coefficient of `x^{α_i+k}` (continuous)
/// or of `Γ(x+α_i+k+1)` (Hahn).
pub fn type1_residues(ws: &WeightSystem, n: &MultiIndex) -> Result<Vec<(ResiduePole, ExactValue)>> {
    let c = normalization_constant(ws, n)?.value;
    type1_poles(ws, n)
        .into_iter()
        .map(|pole| {
            let i = pole.weight_index.unwrap();
            let k = (&pole.location - &ws.alpha()[i]).to_integer();
            let k: u64 = k.try_into().unwrap();
            let value = phi(ws, n, &pole.location)?.mul(&c).scale(&node_factor(ws, n, i, k));
            Ok((pole, value))
        })
        .collect()
}

/// Type I linear form at `x` as a sum of residues, split per weight.
pub fn type1_linear_form_residues(ws: &WeightSystem, n: &MultiIndex, x: &Rational) -> Result<LinearFormValue> {
    let hahn_x = lattice_point(ws, x)?;
    let residues = type1_residues(ws, n)?;
    let mut components: Vec<ExactValue> = vec![ExactValue::zero(); ws.p()];
    for (pole, value) in residues {
        let i = pole.weight_index.unwrap();
        let a = &ws.alpha()[i];
        let k = (&pole.location - a).to_integer();
        let k: i64 = k.try_into().unwrap();
        let term = match hahn_x {
            // Γ(x+α_i+k+1) = Γ(α_i+1) (α_i+1)_{x+k}
            Some(xl) => value
                .mul(&ExactValue::new(Rational::one(), GammaProduct::gamma(a + int(1))))
                .scale(&pochhammer(&(a + int(1)), xl as i64 + k)?),
            None => value.scale(&x.pow(k as i32)),
        };
        components[i] = components[i].add(&term.normalized()?)?;
    }
    let components = components
        .into_iter()
        .enumerate()
        .map(|(i, v)| LinearFormComponent {
            weight: i,
            coefficient: v.coeff,
            residual: v.gamma,
        })
        .collect();
    Ok(LinearFormValue {
        x: x.clone(),
        components,
    })
}

/// Recovers the numerator polynomial `p_{|n|-1}(t)` of the type I integrand
/// from a type I vector by interpolation at the nodes `α_i + k`.
/// Monomial coefficients in `t` are returned.
pub fn interpolation_recover_p(ws: &WeightSystem, n: &MultiIndex, form: &TypeIVector) -> Result<Vec<Rational>> {
    n.check_type1(ws)?;
    if form.components.len() != ws.p() {
        return Err(Error::Precondition("type I vector has the wrong number of components".into()));
    }
    let nodes = type1_poles(ws, n);
    let mut values = Vec::with_capacity(nodes.len());
    for pole in &nodes {
        let i = pole.weight_index.unwrap();
        let a = &ws.alpha()[i];
        let k = (&pole.location - a).to_integer();
        let k: u64 = k.try_into().unwrap();
        let comp = &form.components[i];
        // coefficient attached to x^{α_i+k} or Γ(x+α_i+k+1)
        let coeff = if ws.family() == Family::Hahn {
            let basis = BasisKind::ShiftedRising {
                alpha: a.clone(),
                weight: i,
            };
            let c = comp.to_basis(&basis)?;
            ExactValue::new(
                c.coefficients.get(k as usize).cloned().unwrap_or_else(Rational::zero),
                &c.scale * &GammaProduct::power(a + int(1), -1),
            )
        } else {
            let c = comp.to_monomial();
            ExactValue::new(
                c.coefficients.get(k as usize).cloned().unwrap_or_else(Rational::zero),
                c.scale,
            )
        };
        let phi_value = phi(ws, n, &pole.location)?;
        let ratio = ExactValue::new(
            &coeff.coeff / (&phi_value.coeff * node_factor(ws, n, i, k)),
            &coeff.gamma * &phi_value.gamma.inv(),
        );
        values.push(ratio.as_rational()?);
    }
    let matrix = nodes
        .iter()
        .map(|p| (0..nodes.len()).map(|d| p.location.pow(d as i32)).collect())
        .collect();
    let mut coeffs = solve(matrix, values)?;
    while coeffs.len() > 1 && coeffs.last().is_some_and(|c| c.is_zero()) {
        coeffs.pop();
    }
    Ok(coeffs)
}

/// `p` takes one value on all zeros of `∏_i (α_i - t)_{n_i}`; for
/// `deg p <= |n|-1` this means `p` is constant.
pub fn verify_ir_lemma(ws: &WeightSystem, n: &MultiIndex, p_poly: &[Rational]) -> bool {
    let poly = ScaledPolynomial::rational(BasisKind::Monomial, p_poly.to_vec());
    let mut values = type1_poles(ws, n).into_iter().map(|pole| poly.eval_unscaled(&pole.location));
    match values.next() {
        Some(first) => values.all(|v| v == first),
        None => true,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;
    use crate::families::{hahn_type1, jacobi_pineiro_type1, laguerre1_type1, type1};

    #[test]
    fn laguerre_single() {
        let ws = WeightSystem::laguerre(vec![rat(1, 2)]).unwrap();
        let n = MultiIndex::new(vec![1]);
        let form = type1_linear_form_residues(&ws, &n, &rat(3, 7)).unwrap();
        assert_eq!(form.components[0].coefficient, int(1));
        assert_eq!(form.components[0].residual, GammaProduct::power(rat(3, 2), -1));
        let direct = LinearFormValue::from_type1(&ws, &laguerre1_type1(&ws, &n).unwrap(), &rat(3, 7)).unwrap();
        assert!(form.same_as(&direct).unwrap());
    }

    #[test]
    fn jp_and_hahn_examples() {
        let ws = WeightSystem::jacobi_pineiro(vec![rat(1, 2), rat(1, 3)], rat(1, 4)).unwrap();
        let n = MultiIndex::new(vec![1, 1]);
        let x = rat(1, 2);
        let direct = LinearFormValue::from_type1(&ws, &jacobi_pineiro_type1(&ws, &n).unwrap(), &x).unwrap();
        assert!(type1_linear_form_residues(&ws, &n, &x).unwrap().same_as(&direct).unwrap());

        let ws = WeightSystem::hahn(vec![rat(1, 2), rat(1, 3)], rat(1, 4), 5).unwrap();
        let n = MultiIndex::new(vec![2, 1]);
        let x = int(3);
        let direct = LinearFormValue::from_type1(&ws, &hahn_type1(&ws, &n).unwrap(), &x).unwrap();
        assert!(type1_linear_form_residues(&ws, &n, &x).unwrap().same_as(&direct).unwrap());
        assert!(type1_linear_form_residues(&ws, &n, &rat(1, 2)).is_err());
    }

    #[test]
    fn recovered_constants() {
        let alpha = vec![rat(1, 2), rat(1, 3)];
        let systems = [
            WeightSystem::laguerre(alpha.clone()).unwrap(),
            WeightSystem::jacobi_pineiro(alpha.clone(), rat(1, 4)).unwrap(),
            WeightSystem::hahn(alpha, rat(1, 4), 6).unwrap(),
        ];
        let n = MultiIndex::new(vec![2, 1]);
        for ws in &systems {
            let p = interpolation_recover_p(ws, &n, &type1(ws, &n).unwrap()).unwrap();
            assert_eq!(p.len(), 1, "{ws}");
            let c = normalization_constant(ws, &n).unwrap().value.as_rational().unwrap();
            assert_eq!(p[0], c, "{ws}");
        }
        assert_eq!(
            normalization_constant(&systems[0], &n).unwrap().value,
            ExactValue::rational(int(1))
        );
    }

    #[test]
    fn lemma_examples() {
        let ws = WeightSystem::laguerre(vec![rat(1, 2), rat(1, 3)]).unwrap();
        let n = MultiIndex::new(vec![2, 1]);
        assert!(verify_ir_lemma(&ws, &n, &[int(7)]));
        assert!(!verify_ir_lemma(&ws, &n, &[int(0), int(1)]));
        // ∏(α_i - t)_{n_i} / (α_1 - t) + 5
        let roots = [rat(3, 2), rat(1, 3)];
        let mut poly = vec![int(1)];
        for r in roots {
            let mut next = vec![Rational::zero(); poly.len() + 1];
            for (d, c) in poly.iter().enumerate() {
                next[d] += c * &r;
                next[d + 1] -= c;
            }
            poly = next;
        }
        poly[0] += int(5);
        assert!(!verify_ir_lemma(&ws, &n, &poly));
    }
}
