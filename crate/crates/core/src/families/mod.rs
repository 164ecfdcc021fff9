//! Weight systems, multi-indices, polynomial containers and the explicit
//! type I / type II generators of the three families.

mod hahn;
mod jacobi_pineiro;
mod laguerre;

pub use hahn::{
    hahn_jp_coefficient_relation, hahn_type1, hahn_type1_p2_kdf, hahn_type2,
    hahn_type2_weighted_series,
};
pub use jacobi_pineiro::{jacobi_pineiro_type1, jacobi_pineiro_type2};
pub use laguerre::{laguerre1_type1, laguerre1_type2};

use std::fmt;

use num::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::{int, pochhammer, ExactValue, GammaProduct, Rational};
use crate::hypergeo::horner;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    LaguerreFirstKind,
    JacobiPineiro,
    Hahn,
}

impl Family {
    pub const ALL: [Family; 3] = [Family::LaguerreFirstKind, Family::JacobiPineiro, Family::Hahn];

    pub fn name(self) -> &'static str {
        match self {
            Family::LaguerreFirstKind => "laguerre",
            Family::JacobiPineiro => "jacobi-pineiro",
            Family::Hahn => "hahn",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "laguerre" | "laguerre1" | "laguerre-first-kind" => Ok(Family::LaguerreFirstKind),
            "jacobi-pineiro" | "jp" | "jacobi" => Ok(Family::JacobiPineiro),
            "hahn" => Ok(Family::Hahn),
            other => Err(Error::Precondition(format!("unknown family {other:?}"))),
        }
    }
}

/// A family together with its parameters `α⃗`, `β` and `N`.
///
/// Laguerre weights are `x^{α_i} e^{-x}` on `[0, ∞)`, Jacobi–Piñeiro weights
/// `x^{α_i} (1-x)^β` on `[0, 1]`, and Hahn weights
/// `(α_i+1)_x/x! · (β+1)_{N-x}/(N-x)!` on `{0, …, N}` (the Γ form with
/// `Γ(α_i+1)Γ(β+1)` divided out, which makes them rational).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightSystem {
    family: Family,
    alpha: Vec<Rational>,
    beta: Option<Rational>,
    big_n: Option<u64>,
}

impl WeightSystem {
    pub fn laguerre(alpha: Vec<Rational>) -> Result<Self> {
        Self::new(Family::LaguerreFirstKind, alpha, None, None)
    }

    pub fn jacobi_pineiro(alpha: Vec<Rational>, beta: Rational) -> Result<Self> {
        Self::new(Family::JacobiPineiro, alpha, Some(beta), None)
    }

    pub fn hahn(alpha: Vec<Rational>, beta: Rational, big_n: u64) -> Result<Self> {
        Self::new(Family::Hahn, alpha, Some(beta), Some(big_n))
    }

    /// Validates the AT-system conditions: `α_i, β > -1` and `α_i - α_j ∉ ℤ`.
    pub fn new(
        family: Family,
        alpha: Vec<Rational>,
        beta: Option<Rational>,
        big_n: Option<u64>,
    ) -> Result<Self> {
        let bad = |m: String| Err(Error::Admissibility(m));
        if alpha.is_empty() {
            return bad("at least one weight is required".into());
        }
        let minus_one = -Rational::one();
        for (i, a) in alpha.iter().enumerate() {
            if *a <= minus_one {
                return bad(format!("alpha[{i}] = {a} must exceed -1"));
            }
            for (j, b) in alpha.iter().enumerate().skip(i + 1) {
                if (a - b).is_integer() {
                    return bad(format!("alpha[{i}] - alpha[{j}] = {} is an integer", a - b));
                }
            }
        }
        let (beta, big_n) = match family {
            Family::LaguerreFirstKind => {
                if beta.is_some() || big_n.is_some() {
                    return bad("Laguerre weights take no beta or N".into());
                }
                (None, None)
            }
            Family::JacobiPineiro | Family::Hahn => {
                let Some(b) = beta else {
                    return bad(format!("{family} weights need beta"));
                };
                if b <= minus_one {
                    return bad(format!("beta = {b} must exceed -1"));
                }
                if family == Family::Hahn {
                    let Some(n) = big_n else {
                        return bad("Hahn weights need N".into());
                    };
                    (Some(b), Some(n))
                } else {
                    if big_n.is_some() {
                        return bad("Jacobi–Piñeiro weights take no N".into());
                    }
                    (Some(b), None)
                }
            }
        };
        Ok(Self {
            family,
            alpha,
            beta,
            big_n,
        })
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn p(&self) -> usize {
        self.alpha.len()
    }

    pub fn alpha(&self) -> &[Rational] {
        &self.alpha
    }

    /// `β`; zero for Laguerre systems, which have none.
    pub fn beta(&self) -> Rational {
        self.beta.clone().unwrap_or_else(Rational::zero)
    }

    /// `N`; zero unless the system is Hahn.
    pub fn big_n(&self) -> u64 {
        self.big_n.unwrap_or(0)
    }

    /// Same `α⃗`, `β` as a Jacobi–Piñeiro system.
    pub fn to_jacobi_pineiro(&self) -> Result<Self> {
        Self::jacobi_pineiro(self.alpha.clone(), self.beta())
    }

    pub(crate) fn expect_hahn(&self) -> Result<()> {
        self.expect_family(Family::Hahn)
    }

    pub(crate) fn expect_family(&self, family: Family) -> Result<()> {
        if self.family != family {
            return Err(Error::Admissibility(format!(
                "expected a {family} weight system, got {}",
                self.family
            )));
        }
        Ok(())
    }

    /// Hahn weight `w_i(k)` with the Γ(α_i+1)Γ(β+1) normalisation divided out.
    pub fn hahn_weight(&self, i: usize, k: u64) -> Rational {
        let n = self.big_n();
        debug_assert!(k <= n);
        let beta = self.beta();
        pochhammer(&(&self.alpha[i] + int(1)), k as i64).unwrap()
            / crate::exact::factorial(k)
            * pochhammer(&(beta + int(1)), (n - k) as i64).unwrap()
            / crate::exact::factorial(n - k)
    }
}

impl fmt::Display for WeightSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let alpha: Vec<String> = self.alpha.iter().map(ToString::to_string).collect();
        write!(f, "{} alpha=[{}]", self.family, alpha.join(","))?;
        if let Some(b) = &self.beta {
            write!(f, " beta={b}")?;
        }
        if let Some(n) = self.big_n {
            write!(f, " N={n}")?;
        }
        Ok(())
    }
}

/// Type II polynomial of whichever family `ws` belongs to.
pub fn type2(ws: &WeightSystem, n: &MultiIndex) -> Result<ScaledPolynomial> {
    match ws.family() {
        Family::LaguerreFirstKind => laguerre1_type2(ws, n),
        Family::JacobiPineiro => jacobi_pineiro_type2(ws, n),
        Family::Hahn => hahn_type2(ws, n),
    }
}

/// Type I vector of whichever family `ws` belongs to.
pub fn type1(ws: &WeightSystem, n: &MultiIndex) -> Result<TypeIVector> {
    match ws.family() {
        Family::LaguerreFirstKind => laguerre1_type1(ws, n),
        Family::JacobiPineiro => jacobi_pineiro_type1(ws, n),
        Family::Hahn => hahn_type1(ws, n),
    }
}

/// `n⃗ = (n_1, …, n_p)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultiIndex(pub Vec<u64>);

impl MultiIndex {
    pub fn new(n: Vec<u64>) -> Self {
        Self(n)
    }

    pub fn zero(p: usize) -> Self {
        Self(vec![0; p])
    }

    pub fn total(&self) -> u64 {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[u64] {
        &self.0
    }

    /// Shape check against `ws`; Hahn requires `|n⃗| <= N`.
    pub fn check(&self, ws: &WeightSystem) -> Result<()> {
        if self.len() != ws.p() {
            return Err(Error::Admissibility(format!(
                "multi-index {self} has {} entries for {} weights",
                self.len(),
                ws.p()
            )));
        }
        if ws.family() == Family::Hahn && self.total() > ws.big_n() {
            return Err(Error::Admissibility(format!(
                "|n| = {} exceeds N = {}",
                self.total(),
                ws.big_n()
            )));
        }
        Ok(())
    }

    pub(crate) fn check_type1(&self, ws: &WeightSystem) -> Result<()> {
        self.check(ws)?;
        if self.total() == 0 {
            return Err(Error::Precondition("type I needs |n| >= 1".into()));
        }
        Ok(())
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl From<Vec<u64>> for MultiIndex {
    fn from(v: Vec<u64>) -> Self {
        Self(v)
    }
}

/// Polynomial bases used by the generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BasisKind {
    /// `x^k`
    Monomial,
    /// `(-x)_k`
    FallingFactorial,
    /// `(x + α_i + 1)_k`, tied to weight `weight` with `alpha = α_i`.
    ShiftedRising { alpha: Rational, weight: usize },
    /// `(β + N - x + 1)_k`, with `top = β + N + 1`.
    BackwardPochhammer { top: Rational },
}

impl BasisKind {
    pub fn tag(&self) -> String {
        match self {
            BasisKind::Monomial => "monomial".into(),
            BasisKind::FallingFactorial => "falling-factorial".into(),
            BasisKind::ShiftedRising { alpha, weight } => {
                format!("shifted-rising(alpha[{weight}]={alpha})")
            }
            BasisKind::BackwardPochhammer { top } => format!("backward-pochhammer(top={top})"),
        }
    }

    /// The `k`-th basis element evaluated at `x`.
    pub fn element(&self, k: usize, x: &Rational) -> Rational {
        let k = k as i64;
        match self {
            BasisKind::Monomial => x.pow(k as i32),
            BasisKind::FallingFactorial => pochhammer(&-x, k).unwrap(),
            BasisKind::ShiftedRising { alpha, .. } => {
                pochhammer(&(x + alpha + int(1)), k).unwrap()
            }
            BasisKind::BackwardPochhammer { top } => pochhammer(&(top - x), k).unwrap(),
        }
    }

    /// Monomial coefficients of the first `len` basis elements.
    pub fn monomial_table(&self, len: usize) -> Vec<Vec<Rational>> {
        // each basis element is a product of linear factors (c + s·x)
        let factor = |m: i64| -> (Rational, Rational) {
            match self {
                BasisKind::Monomial => (Rational::zero(), Rational::one()),
                BasisKind::FallingFactorial => (int(m), -Rational::one()),
                BasisKind::ShiftedRising { alpha, .. } => (alpha + int(1 + m), Rational::one()),
                BasisKind::BackwardPochhammer { top } => (top + int(m), -Rational::one()),
            }
        };
        let mut table = Vec::with_capacity(len);
        let mut current = vec![Rational::one()];
        for k in 0..len {
            table.push(current.clone());
            let (c, s) = factor(k as i64);
            let mut next = vec![Rational::zero(); current.len() + 1];
            for (d, coef) in current.iter().enumerate() {
                next[d] += coef * &c;
                next[d + 1] += coef * &s;
            }
            current = next;
        }
        table
    }
}

/// `scale · Σ_k coefficients[k] · basis_k(x)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScaledPolynomial {
    pub basis: BasisKind,
    pub coefficients: Vec<Rational>,
    pub scale: GammaProduct,
}

impl ScaledPolynomial {
    pub fn new(basis: BasisKind, coefficients: Vec<Rational>, scale: GammaProduct) -> Self {
        Self {
            basis,
            coefficients,
            scale,
        }
    }

    pub fn rational(basis: BasisKind, coefficients: Vec<Rational>) -> Self {
        Self::new(basis, coefficients, GammaProduct::one())
    }

    pub fn one() -> Self {
        Self::rational(BasisKind::Monomial, vec![Rational::one()])
    }

    pub fn zero(basis: BasisKind) -> Self {
        Self::rational(basis, Vec::new())
    }

    /// Degree of the represented polynomial, `None` for zero.
    pub fn degree(&self) -> Option<usize> {
        self.coefficients.iter().rposition(|c| !c.is_zero())
    }

    pub fn is_zero(&self) -> bool {
        self.degree().is_none()
    }

    /// Rewrites the coefficients in the monomial basis (scale untouched).
    pub fn to_monomial(&self) -> ScaledPolynomial {
        if self.basis == BasisKind::Monomial {
            return self.clone();
        }
        let table = self.basis.monomial_table(self.coefficients.len());
        let mut out = vec![Rational::zero(); self.coefficients.len()];
        for (c, row) in self.coefficients.iter().zip(&table) {
            for (d, r) in row.iter().enumerate() {
                out[d] += c * r;
            }
        }
        ScaledPolynomial::new(BasisKind::Monomial, out, self.scale.clone())
    }

    /// Rewrites the coefficients in `basis` (scale untouched).
    pub fn to_basis(&self, basis: &BasisKind) -> Result<ScaledPolynomial> {
        if *basis == self.basis {
            return Ok(self.clone());
        }
        let mono = self.to_monomial();
        let len = mono.coefficients.len();
        let table = basis.monomial_table(len);
        let mut rest = mono.coefficients;
        let mut out = vec![Rational::zero(); len];
        for k in (0..len).rev() {
            let lead = &table[k][k];
            if lead.is_zero() {
                return Err(Error::Precondition(format!("{} is not a basis", basis.tag())));
            }
            let c = &rest[k] / lead;
            for (d, t) in table[k].iter().enumerate() {
                rest[d] -= &c * t;
            }
            out[k] = c;
        }
        Ok(ScaledPolynomial::new(basis.clone(), out, self.scale.clone()))
    }

    /// Value of the bare coefficient sum, without the scale.
    pub fn eval_unscaled(&self, x: &Rational) -> Rational {
        if self.basis == BasisKind::Monomial {
            return horner(&self.coefficients, x);
        }
        self.coefficients
            .iter()
            .enumerate()
            .map(|(k, c)| c * self.basis.element(k, x))
            .sum()
    }

    /// Exact value at `x` as rational part × residual Γ product.
    pub fn eval(&self, x: &Rational) -> Result<ExactValue> {
        ExactValue::new(self.eval_unscaled(x), self.scale.clone()).normalized()
    }

    /// Equality of the represented functions, allowing different bases and
    /// scales that differ by a rational factor.
    pub fn same_as(&self, other: &ScaledPolynomial) -> Result<bool> {
        let a = self.to_monomial();
        let b = other.to_monomial();
        let ratio = ExactValue::new(Rational::one(), &b.scale * &a.scale.inv());
        let r = match ratio.as_rational() {
            Ok(r) => r,
            Err(Error::IrreducibleGamma(_)) => return Ok(a.is_zero() && b.is_zero()),
            Err(e) => return Err(e),
        };
        let len = a.coefficients.len().max(b.coefficients.len());
        let zero = Rational::zero();
        Ok((0..len).all(|k| {
            let ca = a.coefficients.get(k).unwrap_or(&zero);
            let cb = b.coefficients.get(k).unwrap_or(&zero);
            *ca == cb * &r
        }))
    }

    /// Monomial leading coefficient, for type II polynomials.
    pub fn leading_monomial(&self) -> Rational {
        let m = self.to_monomial();
        m.degree()
            .map(|d| m.coefficients[d].clone())
            .unwrap_or_else(Rational::zero)
    }
}

impl fmt::Display for ScaledPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let coeffs: Vec<String> = self.coefficients.iter().map(ToString::to_string).collect();
        write!(f, "{} · [{}] in {}", self.scale, coeffs.join(", "), self.basis.tag())
    }
}

/// `(A^(1), …, A^(p))` with `deg A^(i) <= n_i - 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TypeIVector {
    pub components: Vec<ScaledPolynomial>,
}

impl TypeIVector {
    pub fn same_as(&self, other: &TypeIVector) -> Result<bool> {
        if self.components.len() != other.components.len() {
            return Ok(false);
        }
        for (a, b) in self.components.iter().zip(&other.components) {
            if !a.same_as(b)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Calls `f` with every `l⃗` satisfying `0 <= l_q <= n_q`.
pub(crate) fn for_each_box(n: &[u64], mut f: impl FnMut(&[u64])) {
    let mut l = vec![0u64; n.len()];
    loop {
        f(&l);
        let mut q = 0;
        loop {
            if q == n.len() {
                return;
            }
            if l[q] < n[q] {
                l[q] += 1;
                break;
            }
            l[q] = 0;
            q += 1;
        }
    }
}

/// Suffix sums `l_q + … + l_p`, one per position.
pub(crate) fn tails(l: &[u64]) -> Vec<i64> {
    let mut out = vec![0i64; l.len() + 1];
    for q in (0..l.len()).rev() {
        out[q] = out[q + 1] + l[q] as i64;
    }
    out
}

/// `num / den`, mapping a zero denominator to an admissibility error.
pub(crate) fn checked_div(num: Rational, den: Rational, what: &str) -> Result<Rational> {
    if den.is_zero() {
        return Err(Error::Admissibility(format!("{what} vanishes")));
    }
    Ok(num / den)
}

/// `∏_{k≠i} (α_k - α_i)_{n_k}`, nonzero under the AT condition.
pub(crate) fn cross_product(alpha: &[Rational], n: &[u64], i: usize) -> Rational {
    (0..alpha.len())
        .filter(|&k| k != i)
        .map(|k| pochhammer(&(&alpha[k] - &alpha[i]), n[k] as i64).unwrap())
        .product()
}

/// Numerator / denominator parameter lists shared by all type I formulas:
/// `(α_i+1) - α_k - n_k` over `(α_i+1) - α_k`, `k ≠ i`.
pub(crate) fn cross_parameters(alpha: &[Rational], n: &[u64], i: usize) -> (Vec<Rational>, Vec<Rational>) {
    let shifted = &alpha[i] + int(1);
    (0..alpha.len())
        .filter(|&k| k != i)
        .map(|k| {
            (
                &shifted - &alpha[k] - int(n[k] as i64),
                &shifted - &alpha[k],
            )
        })
        .unzip()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    #[test]
    fn admissibility() {
        assert!(WeightSystem::laguerre(vec![rat(1, 2), rat(3, 2)]).is_err());
        assert!(WeightSystem::laguerre(vec![int(-1)]).is_err());
        assert!(WeightSystem::jacobi_pineiro(vec![rat(1, 2)], int(-2)).is_err());
        assert!(WeightSystem::hahn(vec![rat(1, 2), rat(1, 3)], rat(1, 4), 3).is_ok());
        let ws = WeightSystem::hahn(vec![rat(1, 2)], rat(1, 4), 2).unwrap();
        assert!(MultiIndex::new(vec![3]).check(&ws).is_err());
        assert!(MultiIndex::new(vec![1, 1]).check(&ws).is_err());
    }

    #[test]
    fn box_enumeration() {
        let mut seen = Vec::new();
        for_each_box(&[1, 2], |l| seen.push(l.to_vec()));
        assert_eq!(seen.len(), 6);
        let mut empty = 0;
        for_each_box(&[], |_| empty += 1);
        assert_eq!(empty, 1);
    }

    #[test]
    fn monomial_conversion() {
        // (-x)_2 = x^2 - x
        let p = ScaledPolynomial::rational(BasisKind::FallingFactorial, vec![int(0), int(0), int(1)]);
        assert_eq!(p.to_monomial().coefficients, vec![int(0), int(-1), int(1)]);
        // (x + 3/2)_2 = x^2 + 4x + 15/4
        let basis = BasisKind::ShiftedRising { alpha: rat(1, 2), weight: 0 };
        let p = ScaledPolynomial::rational(basis, vec![int(0), int(0), int(1)]);
        assert_eq!(p.to_monomial().coefficients, vec![rat(15, 4), int(4), int(1)]);
        for x in [rat(1, 3), int(2), rat(-7, 2)] {
            assert_eq!(p.eval_unscaled(&x), p.to_monomial().eval_unscaled(&x));
        }
        let b = BasisKind::BackwardPochhammer { top: rat(17, 4) };
        let p = ScaledPolynomial::rational(b, vec![int(1), int(2), int(3)]);
        for x in [rat(1, 3), int(2)] {
            assert_eq!(p.eval_unscaled(&x), p.to_monomial().eval_unscaled(&x));
        }
    }

    #[test]
    fn eval_examples() {
        let c = ScaledPolynomial::rational(BasisKind::Monomial, vec![rat(5, 7)]);
        assert_eq!(c.eval(&rat(9, 2)).unwrap(), ExactValue::rational(rat(5, 7)));
        let p = ScaledPolynomial::rational(BasisKind::Monomial, vec![rat(-3, 2), int(1)]);
        assert!(p.eval(&rat(3, 2)).unwrap().is_zero());
        let s = ScaledPolynomial::new(
            BasisKind::Monomial,
            vec![int(2)],
            GammaProduct::from_factors([(rat(5, 2), 1), (rat(1, 2), -1)]),
        );
        assert_eq!(s.eval(&int(0)).unwrap(), ExactValue::rational(rat(3, 2)));
    }
}
