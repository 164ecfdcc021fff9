use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Mul, MulAssign};

use num::{One, Zero};

use super::{factorial, gamma_ratio, nonpositive_integer, Rational};
use crate::error::{Error, Result};

/// Formal product `∏ Γ(arg)^exp` over rational arguments.
///
/// Equal arguments are merged and zero exponents dropped, so the empty
/// product is the scalar 1.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct GammaProduct {
    factors: BTreeMap<Rational, i64>,
}

impl GammaProduct {
    pub fn one() -> Self {
        Self::default()
    }

    /// `Γ(arg)^exp`.
    pub fn power(arg: Rational, exp: i64) -> Self {
        let mut g = Self::default();
        g.push(arg, exp);
        g
    }

    pub fn gamma(arg: Rational) -> Self {
        Self::power(arg, 1)
    }

    pub fn from_factors<I: IntoIterator<Item = (Rational, i64)>>(factors: I) -> Self {
        let mut g = Self::default();
        for (a, e) in factors {
            g.push(a, e);
        }
        g
    }

    pub fn push(&mut self, arg: Rational, exp: i64) {
        if exp == 0 {
            return;
        }
        let slot = self.factors.entry(arg.clone()).or_insert(0);
        *slot += exp;
        if *slot == 0 {
            self.factors.remove(&arg);
        }
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn factors(&self) -> impl Iterator<Item = (&Rational, i64)> {
        self.factors.iter().map(|(a, e)| (a, *e))
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn inv(&self) -> Self {
        Self {
            factors: self.factors.iter().map(|(a, e)| (a.clone(), -e)).collect(),
        }
    }

    /// Splits `self` into a rational multiplier and a normalized remainder.
    pub fn reduce(&self) -> Result<(Rational, GammaProduct)> {
        reduce(self)
    }
}

impl Mul<&GammaProduct> for &GammaProduct {
    type Output = GammaProduct;
    fn mul(self, rhs: &GammaProduct) -> GammaProduct {
        let mut out = self.clone();
        out *= rhs;
        out
    }
}

impl Mul for GammaProduct {
    type Output = GammaProduct;
    fn mul(self, rhs: GammaProduct) -> GammaProduct {
        &self * &rhs
    }
}

impl MulAssign<&GammaProduct> for GammaProduct {
    fn mul_assign(&mut self, rhs: &GammaProduct) {
        for (a, e) in rhs.factors() {
            self.push(a.clone(), e);
        }
    }
}

impl fmt::Display for GammaProduct {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return f.write_str("1");
        }
        let parts: Vec<String> = self
            .factors()
            .map(|(a, e)| {
                if e == 1 {
                    format!("Γ({a})")
                } else {
                    format!("Γ({a})^{e}")
                }
            })
            .collect();
        f.write_str(&parts.join("·"))
    }
}

fn fractional_part(a: &Rational) -> Rational {
    a - a.floor()
}

/// Cancels every pair of Γ factors whose arguments differ by an integer.
///
/// Arguments are grouped by their class modulo 1. Each non-integer class is
/// rewritten on its smallest argument through [`gamma_ratio`]; the integer
/// class is evaluated outright as factorials. A nonpositive-integer argument
/// with positive exponent is a pole; with negative exponent the whole product
/// is zero (`1/Γ` vanishes there).
pub fn reduce(g: &GammaProduct) -> Result<(Rational, GammaProduct)> {
    let mut classes: BTreeMap<Rational, Vec<(Rational, i64)>> = BTreeMap::new();
    for (a, e) in g.factors() {
        classes
            .entry(fractional_part(a))
            .or_default()
            .push((a.clone(), e));
    }

    let mut scalar = Rational::one();
    let mut rest = GammaProduct::one();
    let mut vanishes = false;
    for (frac, members) in classes {
        if frac.is_zero() {
            for (a, e) in members {
                if nonpositive_integer(&a).is_some() {
                    if e > 0 {
                        return Err(Error::Pole(format!("Γ({a})^{e}")));
                    }
                    vanishes = true;
                } else {
                    // Γ(n) = (n-1)!
                    let n = a.to_integer() - 1u8;
                    let n: u64 = n.try_into().expect("factorial argument too large");
                    scalar *= pow_i(&factorial(n), e);
                }
            }
            continue;
        }
        // members are sorted by argument (BTreeMap order), so the first is the anchor
        let anchor = members[0].0.clone();
        let mut anchor_exp = 0;
        for (a, e) in members {
            let offset = (&a - &anchor).to_integer();
            let offset: i64 = offset.try_into().expect("gamma argument offset too large");
            scalar *= pow_i(&gamma_ratio(&anchor, offset)?, e);
            anchor_exp += e;
        }
        rest.push(anchor, anchor_exp);
    }
    if vanishes {
        return Ok((Rational::zero(), GammaProduct::one()));
    }
    Ok((scalar, rest))
}

fn pow_i(r: &Rational, e: i64) -> Rational {
    let mut acc = Rational::one();
    for _ in 0..e.unsigned_abs() {
        acc *= r;
    }
    if e < 0 {
        acc.recip()
    } else {
        acc
    }
}

/// A rational times a formal Γ product: `coeff · gamma`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactValue {
    pub coeff: Rational,
    pub gamma: GammaProduct,
}

impl ExactValue {
    pub fn new(coeff: Rational, gamma: GammaProduct) -> Self {
        Self { coeff, gamma }
    }

    pub fn rational(coeff: Rational) -> Self {
        Self::new(coeff, GammaProduct::one())
    }

    pub fn zero() -> Self {
        Self::rational(Rational::zero())
    }

    /// Reduced form; a zero coefficient drops the Γ part.
    pub fn normalized(&self) -> Result<Self> {
        if self.coeff.is_zero() {
            return Ok(Self::zero());
        }
        let (r, g) = reduce(&self.gamma)?;
        let coeff = &self.coeff * r;
        if coeff.is_zero() {
            return Ok(Self::zero());
        }
        Ok(Self::new(coeff, g))
    }

    pub fn is_zero(&self) -> bool {
        self.coeff.is_zero()
    }

    /// The rational value, if the Γ part cancels completely.
    pub fn as_rational(&self) -> Result<Rational> {
        let n = self.normalized()?;
        if n.gamma.is_one() {
            Ok(n.coeff)
        } else {
            Err(Error::IrreducibleGamma(format!("{} · {}", n.coeff, n.gamma)))
        }
    }

    pub fn scale(&self, r: &Rational) -> Self {
        Self::new(&self.coeff * r, self.gamma.clone())
    }

    pub fn mul(&self, other: &ExactValue) -> Self {
        Self::new(&self.coeff * &other.coeff, &self.gamma * &other.gamma)
    }

    /// `self + other`, defined when the two Γ parts differ by a rational factor.
    pub fn add(&self, other: &ExactValue) -> Result<Self> {
        if other.is_zero() {
            return Ok(self.clone());
        }
        if self.is_zero() {
            return Ok(other.clone());
        }
        let ratio = ExactValue::new(Rational::one(), &other.gamma * &self.gamma.inv());
        let r = ratio.as_rational().map_err(|_| {
            Error::IrreducibleGamma(format!("cannot add {} and {}", self.gamma, other.gamma))
        })?;
        Ok(Self::new(&self.coeff + &other.coeff * r, self.gamma.clone()))
    }

    /// Exact equality, treating Γ values of distinct classes mod 1 as independent.
    pub fn exact_eq(&self, other: &ExactValue) -> Result<bool> {
        if self.is_zero() || other.is_zero() {
            return Ok(self.normalized()?.is_zero() && other.normalized()?.is_zero());
        }
        let ratio = ExactValue::new(Rational::one(), &self.gamma * &other.gamma.inv());
        match ratio.as_rational() {
            Ok(r) => Ok(&self.coeff * r == other.coeff),
            Err(Error::IrreducibleGamma(_)) => Ok(false),
            Err(e) => Err(e),
        }
    }
}

impl fmt::Display for ExactValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.gamma.is_one() {
            write!(f, "{}", self.coeff)
        } else {
            write!(f, "{} · {}", self.coeff, self.gamma)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, pochhammer, rat};
    use proptest::prelude::*;

    #[test]
    fn reduce_examples() {
        let g = GammaProduct::from_factors([(rat(5, 2), 1), (rat(1, 2), -1)]);
        assert_eq!(reduce(&g).unwrap(), (rat(3, 4), GammaProduct::one()));

        let g = GammaProduct::gamma(rat(1, 3));
        assert_eq!(reduce(&g).unwrap(), (int(1), g.clone()));
    }

    #[test]
    fn reduce_offset_class_against_pochhammer() {
        // Γ(α+β+|n|)/Γ(α+β+2+j), α=1/2, β=1/4, |n|=3, j=0
        let s = rat(1, 2) + rat(1, 4);
        let g = GammaProduct::from_factors([(&s + int(3), 1), (&s + int(2), -1)]);
        let expected = pochhammer(&(&s + int(2)), 1).unwrap();
        assert_eq!(expected, rat(11, 4));
        assert_eq!(reduce(&g).unwrap(), (expected, GammaProduct::one()));
    }

    #[test]
    fn integer_class_and_poles() {
        let g = GammaProduct::from_factors([(int(5), 1), (int(3), -1)]);
        assert_eq!(reduce(&g).unwrap().0, int(12));
        assert!(matches!(reduce(&GammaProduct::gamma(int(-2))), Err(Error::Pole(_))));
        let zero = GammaProduct::from_factors([(int(-2), -1), (rat(1, 3), 1)]);
        assert_eq!(reduce(&zero).unwrap(), (int(0), GammaProduct::one()));
    }

    #[test]
    fn anchor_is_smallest_member() {
        let g = GammaProduct::from_factors([(rat(7, 3), 2), (rat(-2, 3), -1)]);
        let (r, h) = reduce(&g).unwrap();
        assert_eq!(h, GammaProduct::power(rat(-2, 3), 1));
        // Γ(7/3)^2/Γ(-2/3) = ((-2/3)_3)^2 Γ(-2/3)
        assert_eq!(r, pochhammer(&rat(-2, 3), 3).unwrap().pow(2));
    }

    #[test]
    fn exact_value_arithmetic() {
        let a = ExactValue::new(int(2), GammaProduct::gamma(rat(1, 2)));
        let b = ExactValue::new(int(1), GammaProduct::gamma(rat(3, 2)));
        let s = a.add(&b).unwrap();
        assert_eq!(s.coeff, rat(5, 2));
        assert!(s.exact_eq(&ExactValue::new(int(5), GammaProduct::gamma(rat(3, 2)))).unwrap());
        let c = ExactValue::new(int(1), GammaProduct::gamma(rat(1, 3)));
        assert!(a.add(&c).is_err());
        assert!(!a.exact_eq(&c).unwrap());
    }

    fn factor() -> impl Strategy<Value = (Rational, i64)> {
        ((-30i64..30), prop::sample::select(vec![2i64, 3, 4, 5, 6]), -2i64..=2)
            .prop_filter("non-integer", |(n, d, _)| n % d != 0)
            .prop_map(|(n, d, e)| (rat(n, d), e))
    }

    proptest! {
        #[test]
        fn reduce_idempotent(fs in prop::collection::vec(factor(), 0..6)) {
            let g = GammaProduct::from_factors(fs);
            let (_, h) = reduce(&g).unwrap();
            let (r2, h2) = reduce(&h).unwrap();
            prop_assert_eq!(r2, int(1));
            prop_assert_eq!(&h2, &h);
            let classes: std::collections::BTreeSet<_> =
                h.factors().map(|(a, _)| fractional_part(a)).collect();
            prop_assert_eq!(classes.len(), h.len());
        }
    }
}
