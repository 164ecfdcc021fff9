//! Terminating generalized hypergeometric and Kampé de Fériet series.

mod identities;

pub use identities::{
    check_chu_vandermonde, check_karp_prilepkina, check_kummer, check_rakha_rathie,
    hahn_summation_kp_instance, KpParams,
};

use num::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::{int, nonpositive_integer, Rational};

/// `pFq(numerator; denominator; argument)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HypergeometricSpec {
    pub numerator: Vec<Rational>,
    pub denominator: Vec<Rational>,
    pub argument: Rational,
}

impl HypergeometricSpec {
    pub fn new(numerator: Vec<Rational>, denominator: Vec<Rational>, argument: Rational) -> Self {
        Self {
            numerator,
            denominator,
            argument,
        }
    }

    /// Index of the last non-vanishing term, forced by the smallest
    /// `-a` over nonpositive-integer numerator parameters.
    pub fn truncation_order(&self) -> Option<u64> {
        truncation(&self.numerator)
    }

    /// Coefficients `c_l = ∏(a)_l / ∏(b)_l / l!`, so the series is `Σ c_l x^l`.
    pub fn coefficients(&self) -> Result<Vec<Rational>> {
        let order = match self.truncation_order() {
            Some(m) => m,
            None if self.argument.is_zero() => 0,
            None => {
                return Err(Error::NonTerminating(format!(
                    "no nonpositive integer among numerator parameters {:?}",
                    display_list(&self.numerator)
                )))
            }
        };
        check_denominators(&self.denominator, order)?;
        Ok(ratio_products(&self.numerator, &self.denominator, order, true))
    }
}

/// `pFq` summed exactly.
pub fn eval_pfq(spec: &HypergeometricSpec) -> Result<Rational> {
    let coeffs = spec.coefficients()?;
    Ok(horner(&coeffs, &spec.argument))
}

/// Kampé de Fériet double series
/// `Σ_{l,m} [joint]_{l+m} [left]_l [right]_m x^l/l! y^m/m!`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct KampeDeFerietSpec {
    pub joint_num: Vec<Rational>,
    pub left_num: Vec<Rational>,
    pub right_num: Vec<Rational>,
    pub joint_den: Vec<Rational>,
    pub left_den: Vec<Rational>,
    pub right_den: Vec<Rational>,
    pub x: Rational,
    pub y: Rational,
}

pub fn eval_kdf(spec: &KampeDeFerietSpec) -> Result<Rational> {
    let joint = truncation(&spec.joint_num);
    let bound = |own: Option<u64>, arg: &Rational, side: &str| -> Result<u64> {
        if arg.is_zero() {
            return Ok(0);
        }
        match (own, joint) {
            (Some(a), Some(b)) => Ok(a.min(b)),
            (Some(a), None) | (None, Some(a)) => Ok(a),
            (None, None) => Err(Error::NonTerminating(format!("{side} index is unbounded"))),
        }
    };
    let l_max = bound(truncation(&spec.left_num), &spec.x, "left")?;
    let m_max = bound(truncation(&spec.right_num), &spec.y, "right")?;
    let j_max = joint.map_or(l_max + m_max, |j| j.min(l_max + m_max));

    check_denominators(&spec.left_den, l_max)?;
    check_denominators(&spec.right_den, m_max)?;
    check_denominators(&spec.joint_den, j_max)?;

    let joint_terms = ratio_products(&spec.joint_num, &spec.joint_den, j_max, false);
    let left = ratio_products(&spec.left_num, &spec.left_den, l_max, true);
    let right = ratio_products(&spec.right_num, &spec.right_den, m_max, true);

    let mut total = Rational::zero();
    let mut x_pow = Rational::one();
    for (l, left_l) in left.iter().enumerate() {
        let mut y_pow = Rational::one();
        for (m, right_m) in right.iter().enumerate() {
            if l + m > j_max as usize {
                break;
            }
            total += &joint_terms[l + m] * left_l * right_m * &x_pow * &y_pow;
            y_pow *= &spec.y;
        }
        x_pow *= &spec.x;
    }
    Ok(total)
}

fn truncation(params: &[Rational]) -> Option<u64> {
    params.iter().filter_map(nonpositive_integer).min()
}

/// A denominator parameter `-d` kills the term of index `d+1` onwards.
fn check_denominators(den: &[Rational], order: u64) -> Result<()> {
    for b in den {
        if let Some(d) = nonpositive_integer(b) {
            if d < order {
                return Err(Error::Pole(format!(
                    "denominator parameter {b} vanishes inside the summation range 0..={order}"
                )));
            }
        }
    }
    Ok(())
}

/// `∏(a)_l / ∏(b)_l` (divided by `l!` when `factorial`) for `l = 0..=order`.
fn ratio_products(
    num: &[Rational],
    den: &[Rational],
    order: u64,
    factorial: bool,
) -> Vec<Rational> {
    let mut out = Vec::with_capacity(order as usize + 1);
    let mut term = Rational::one();
    out.push(term.clone());
    for l in 0..order {
        let li = int(l as i64);
        for a in num {
            term *= a + &li;
        }
        for b in den {
            term /= b + &li;
        }
        if factorial {
            term /= int(l as i64 + 1);
        }
        out.push(term.clone());
    }
    out
}

pub(crate) fn horner(coeffs: &[Rational], x: &Rational) -> Rational {
    coeffs
        .iter()
        .rev()
        .fold(Rational::zero(), |acc, c| acc * x + c)
}

fn display_list(v: &[Rational]) -> Vec<String> {
    v.iter().map(ToString::to_string).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{pochhammer, rat};
    use proptest::prelude::*;

    fn pfq(num: Vec<Rational>, den: Vec<Rational>, x: Rational) -> Result<Rational> {
        eval_pfq(&HypergeometricSpec::new(num, den, x))
    }

    #[test]
    fn pfq_examples() {
        assert_eq!(pfq(vec![int(-1), rat(1, 2)], vec![rat(1, 3)], int(1)).unwrap(), rat(-1, 2));
        assert_eq!(pfq(vec![int(0), rat(3, 7)], vec![rat(2, 9)], rat(5, 4)).unwrap(), int(1));
        assert_eq!(pfq(vec![int(-3)], vec![], rat(1, 2)).unwrap(), rat(1, 8));
    }

    #[test]
    fn pfq_errors() {
        assert!(matches!(
            pfq(vec![rat(1, 2)], vec![rat(1, 3)], int(1)),
            Err(Error::NonTerminating(_))
        ));
        // (-1)_l vanishes at l = 2 while the sum runs to l = 3
        assert!(matches!(
            pfq(vec![int(-3)], vec![int(-1)], int(1)),
            Err(Error::Pole(_))
        ));
        // denominator -3 with truncation 3 is fine: (-3)_l ≠ 0 for l ≤ 3
        assert_eq!(
            pfq(vec![int(-3)], vec![int(-3)], int(1)).unwrap(),
            // Σ_{l≤3} 1/l!
            rat(8, 3)
        );
    }

    #[test]
    fn kdf_trivial_cases() {
        let spec = KampeDeFerietSpec::default();
        assert_eq!(eval_kdf(&spec).unwrap(), int(1));
        let spec = KampeDeFerietSpec {
            left_num: vec![int(0)],
            right_num: vec![int(0)],
            x: rat(3, 2),
            y: int(7),
            ..Default::default()
        };
        assert_eq!(eval_kdf(&spec).unwrap(), int(1));
        let spec = KampeDeFerietSpec {
            x: int(1),
            ..Default::default()
        };
        assert!(matches!(eval_kdf(&spec), Err(Error::NonTerminating(_))));
    }

    #[test]
    fn kdf_brute_force() {
        let spec = KampeDeFerietSpec {
            joint_num: vec![int(-3), rat(1, 2)],
            joint_den: vec![rat(5, 3)],
            left_num: vec![rat(2, 7)],
            left_den: vec![rat(-1, 4)],
            right_num: vec![int(-2), rat(4, 5)],
            right_den: vec![rat(1, 6)],
            x: rat(2, 3),
            y: rat(-5, 2),
        };
        let p = |v: &[Rational], n: usize| -> Rational {
            v.iter().map(|a| pochhammer(a, n as i64).unwrap()).product()
        };
        let mut expected = Rational::zero();
        for l in 0..6usize {
            for m in 0..6usize {
                let t = p(&spec.joint_num, l + m) / p(&spec.joint_den, l + m) * p(&spec.left_num, l)
                    / p(&spec.left_den, l)
                    * p(&spec.right_num, m)
                    / p(&spec.right_den, m)
                    * spec.x.pow(l as i32)
                    / crate::exact::factorial(l as u64)
                    * spec.y.pow(m as i32)
                    / crate::exact::factorial(m as u64);
                expected += t;
            }
        }
        assert_eq!(eval_kdf(&spec).unwrap(), expected);
    }

    fn r() -> impl Strategy<Value = Rational> {
        (1i64..60, 2i64..9)
            .prop_filter("non-integer", |(n, d)| n % d != 0)
            .prop_map(|(n, d)| rat(n, d))
    }

    proptest! {
        #[test]
        fn argument_zero_gives_one(m in 0i64..6, a in r(), b in r()) {
            prop_assert_eq!(pfq(vec![int(-m), a], vec![b], int(0)).unwrap(), int(1));
        }

        #[test]
        fn permutation_invariance(m in 0i64..6, a in r(), c in r(), b in r(), d in r(), x in r()) {
            let v1 = pfq(vec![int(-m), a.clone(), c.clone()], vec![b.clone(), d.clone()], x.clone()).unwrap();
            let v2 = pfq(vec![c, int(-m), a], vec![d, b], x).unwrap();
            prop_assert_eq!(v1, v2);
        }

        #[test]
        fn kdf_degenerates_to_pfq(m in 0i64..6, a in r(), b in r(), x in r()) {
            let spec = KampeDeFerietSpec {
                left_num: vec![int(-m), a.clone()],
                left_den: vec![b.clone()],
                x: x.clone(),
                y: int(0),
                ..Default::default()
            };
            prop_assert_eq!(eval_kdf(&spec).unwrap(), pfq(vec![int(-m), a], vec![b], x).unwrap());
        }
    }
}
