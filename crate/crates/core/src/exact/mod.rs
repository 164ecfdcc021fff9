//! Exact rational arithmetic: Pochhammer symbols, factorials, Γ-ratios and
//! formal products of Γ values.
//!
//! Every quantity in the crate is a [`Rational`]. Transcendental Γ values are
//! never evaluated; they are carried in a [`GammaProduct`] and cancelled by
//! [`GammaProduct::reduce`] whenever arguments differ by integers.

mod float;
mod gamma;

pub use float::{gamma_approx, gamma_product_approx, log_gamma_approx, MAX_PRECISION};
pub use gamma::{reduce, ExactValue, GammaProduct};

use num::{BigInt, One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always in lowest terms with positive denominator.
pub type Rational = num::BigRational;

/// `n/d` as a [`Rational`]. Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `"num/den"`, `"num"` or `"-num/den"`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Precondition(format!("cannot parse rational from {s:?}"));
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(Error::DivisionByZero(format!("denominator of {s:?}")));
    }
    Ok(Rational::new(n, d))
}

/// `Some(k)` when `a` is an integer `<= 0`, with `a = -k`.
pub fn nonpositive_integer(a: &Rational) -> Option<u64> {
    if a.is_integer() && !a.is_positive() {
        (-a.to_integer()).to_u64()
    } else {
        None
    }
}

pub fn is_integer(a: &Rational) -> bool {
    a.is_integer()
}

/// Rising factorial `(a)_n`, extended to `n < 0` by `1/(a+n)_{-n}`.
pub fn pochhammer(a: &Rational, n: i64) -> Result<Rational> {
    if n >= 0 {
        let mut acc = Rational::one();
        let mut x = a.clone();
        for _ in 0..n {
            if x.is_zero() {
                return Ok(Rational::zero());
            }
            acc *= &x;
            x += Rational::one();
        }
        Ok(acc)
    } else {
        let start = a + int(n);
        let den = pochhammer(&start, -n)?;
        if den.is_zero() {
            return Err(Error::DivisionByZero(format!("({a})_{n}")));
        }
        Ok(den.recip())
    }
}

/// `Γ(a+m)/Γ(a)` as an exact rational.
pub fn gamma_ratio(a: &Rational, m: i64) -> Result<Rational> {
    let shifted = a + int(m);
    for arg in [a, &shifted] {
        if nonpositive_integer(arg).is_some() {
            return Err(Error::Pole(format!("Γ({arg}) in Γ({shifted})/Γ({a})")));
        }
    }
    pochhammer(a, m)
}

pub fn factorial(n: u64) -> Rational {
    let mut acc = BigInt::one();
    for k in 2..=n {
        acc *= k;
    }
    Rational::from_integer(acc)
}

pub fn binomial(n: u64, k: u64) -> Rational {
    if k > n {
        return Rational::zero();
    }
    let mut acc = Rational::one();
    for j in 0..k {
        acc = acc * int((n - j) as i64) / int((j + 1) as i64);
    }
    acc
}

/// `(-1)^k`.
pub fn sign(k: i64) -> Rational {
    if k.rem_euclid(2) == 0 {
        Rational::one()
    } else {
        -Rational::one()
    }
}

pub fn to_f64(r: &Rational) -> f64 {
    // Rational::to_f64 rounds correctly even for huge numerators.
    r.to_f64().unwrap_or(f64::NAN)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn pochhammer_examples() {
        assert_eq!(pochhammer(&rat(1, 2), 3).unwrap(), rat(15, 8));
        assert_eq!(pochhammer(&rat(7, 3), 0).unwrap(), int(1));
        assert_eq!(pochhammer(&int(-3), 5).unwrap(), int(0));
        assert_eq!(pochhammer(&int(5), -2).unwrap(), rat(1, 12));
    }

    #[test]
    fn negative_order_hitting_zero() {
        assert!(matches!(pochhammer(&int(2), -3), Err(Error::DivisionByZero(_))));
        assert!(matches!(pochhammer(&int(1), -1), Err(Error::DivisionByZero(_))));
    }

    #[test]
    fn gamma_ratio_examples() {
        assert_eq!(gamma_ratio(&rat(1, 2), 2).unwrap(), rat(3, 4));
        assert_eq!(gamma_ratio(&rat(9, 7), 0).unwrap(), int(1));
        assert_eq!(gamma_ratio(&rat(5, 3), -1).unwrap(), rat(3, 2));
        assert!(matches!(gamma_ratio(&int(0), 2), Err(Error::Pole(_))));
        assert!(matches!(gamma_ratio(&int(2), -3), Err(Error::Pole(_))));
    }

    #[test]
    fn parsing() {
        assert_eq!(parse_rational("-3/6").unwrap(), rat(-1, 2));
        assert_eq!(parse_rational(" 4 ").unwrap(), int(4));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
        assert_eq!(int(1).to_string(), "1");
        assert_eq!(rat(32, 165).to_string(), "32/165");
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(6, 2), int(15));
        assert_eq!(binomial(3, 5), int(0));
        assert_eq!(factorial(5), int(120));
    }

    fn small_rational() -> impl Strategy<Value = Rational> {
        (-40i64..40, 1i64..12).prop_map(|(n, d)| rat(n, d))
    }

    proptest! {
        #[test]
        fn pochhammer_splits(a in small_rational(), m in -6i64..8, n in -6i64..8) {
            let whole = pochhammer(&a, m + n);
            let left = pochhammer(&a, m);
            let right = pochhammer(&(&a + int(m)), n);
            if let (Ok(w), Ok(l), Ok(r)) = (whole, left, right) {
                prop_assert_eq!(w, l * r);
            }
        }

        #[test]
        fn chu_vandermonde_exact(a in small_rational(), b in small_rational(), n in 0u64..=12) {
            let lhs = pochhammer(&(&a + &b), n as i64).unwrap();
            let rhs = (0..=n).fold(Rational::zero(), |acc, k| {
                acc + binomial(n, k)
                    * pochhammer(&a, k as i64).unwrap()
                    * pochhammer(&b, (n - k) as i64).unwrap()
            });
            prop_assert_eq!(lhs, rhs);
        }
    }
}
