//! Exact checks of classical summation and transformation formulas.
//!
//! Each check fixes one parameter to a nonpositive integer so that every
//! series terminates and every Γ prefactor collapses to a rational.

use num::{One, Zero};

use super::{eval_kdf, eval_pfq, HypergeometricSpec, KampeDeFerietSpec};
use crate::error::{Error, Result};
use crate::exact::{
    binomial, factorial, int, nonpositive_integer, pochhammer, sign, ExactValue, GammaProduct,
    Rational,
};

/// `(a+b)_n = Σ_k C(n,k) (a)_k (b)_{n-k}`.
pub fn check_chu_vandermonde(a: &Rational, b: &Rational, n: u64) -> bool {
    let lhs = pochhammer(&(a + b), n as i64).expect("nonnegative order");
    let rhs = (0..=n).fold(Rational::zero(), |acc, k| {
        acc + binomial(n, k)
            * pochhammer(a, k as i64).expect("nonnegative order")
            * pochhammer(b, (n - k) as i64).expect("nonnegative order")
    });
    lhs == rhs
}

fn gamma_quotient(num: [Rational; 2], den: [Rational; 2]) -> Result<Rational> {
    let g = GammaProduct::from_factors(
        num.into_iter()
            .map(|a| (a, 1))
            .chain(den.into_iter().map(|a| (a, -1))),
    );
    ExactValue::new(Rational::one(), g).as_rational()
}

fn require_nonpositive(name: &str, a: &Rational) -> Result<()> {
    if nonpositive_integer(a).is_none() {
        return Err(Error::Precondition(format!(
            "{name} = {a} must be a nonpositive integer"
        )));
    }
    Ok(())
}

/// Kummer's `3F2(1)` transformation with `a1` a nonpositive integer.
pub fn check_kummer(
    a1: &Rational,
    a2: &Rational,
    a3: &Rational,
    b1: &Rational,
    b2: &Rational,
) -> Result<bool> {
    require_nonpositive("a1", a1)?;
    let lhs = eval_pfq(&HypergeometricSpec::new(
        vec![a1.clone(), a2.clone(), a3.clone()],
        vec![b1.clone(), b2.clone()],
        int(1),
    ))?;
    let s = b1 + b2 - a2 - a3;
    let prefactor = gamma_quotient([b2.clone(), &s - a1], [b2 - a1, s.clone()])?;
    let rhs = eval_pfq(&HypergeometricSpec::new(
        vec![a1.clone(), b1 - a2, b1 - a3],
        vec![b1.clone(), s],
        int(1),
    ))?;
    Ok(lhs == prefactor * rhs)
}

/// Rakha–Rathie reduction of a `KdF^{2:1;2}_{2:0;1}(1,1)` to a `4F3(1)`,
/// with `alpha` a nonpositive integer.
#[allow(clippy::too_many_arguments)]
pub fn check_rakha_rathie(
    alpha: &Rational,
    lambda: &Rational,
    epsilon: &Rational,
    beta: &Rational,
    gamma: &Rational,
    mu: &Rational,
    delta: &Rational,
) -> Result<bool> {
    require_nonpositive("alpha", alpha)?;
    let lhs = eval_kdf(&KampeDeFerietSpec {
        joint_num: vec![alpha.clone(), lambda.clone()],
        joint_den: vec![beta.clone(), mu.clone()],
        left_num: vec![epsilon.clone()],
        left_den: vec![],
        right_num: vec![beta - epsilon, gamma.clone()],
        right_den: vec![delta.clone()],
        x: int(1),
        y: int(1),
    })?;
    let prefactor = gamma_quotient(
        [mu.clone(), mu - alpha - lambda],
        [mu - alpha, mu - lambda],
    )?;
    let rhs = eval_pfq(&HypergeometricSpec::new(
        vec![alpha.clone(), lambda.clone(), beta - epsilon, delta - gamma],
        vec![beta.clone(), delta.clone(), int(1) - mu + alpha + lambda],
        int(1),
    ))?;
    Ok(lhs == prefactor * rhs)
}

/// Parameters of the Karp–Prilepkina decomposition of
/// `F(a, f+m, b; f, b+k; 1)` into `l` terminating series.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KpParams {
    pub a: i64,
    pub f: Vec<Rational>,
    pub m: Vec<u64>,
    pub b: Vec<Rational>,
    pub k: Vec<u64>,
}

impl KpParams {
    fn validate(&self) -> Result<()> {
        let fail = |msg: String| Err(Error::Precondition(msg));
        if self.a > 0 {
            return fail(format!("a = {} must be a nonpositive integer", self.a));
        }
        if self.f.len() != self.m.len() || self.b.len() != self.k.len() {
            return fail("f/m and b/k must have matching lengths".into());
        }
        if self.b.is_empty() {
            return fail("at least one b parameter is required".into());
        }
        if self.k.contains(&0) {
            return fail("k components must be positive".into());
        }
        for (q, bq) in self.b.iter().enumerate() {
            for bj in &self.b[q + 1..] {
                if (bj - bq).is_integer() {
                    return fail(format!("b components {bq} and {bj} differ by an integer"));
                }
            }
        }
        let excess = self.k.iter().sum::<u64>() as i64 - self.a - self.m.iter().sum::<u64>() as i64;
        if excess <= 0 {
            return fail(format!("Σk - a - Σm = {excess} must be positive"));
        }
        Ok(())
    }
}

/// Karp–Prilepkina: the `(r+l+1)F(r+l)` at unit argument as a sum of `l`
/// terminating series. `m` components may be zero (the pair `f_j, f_j+m_j`
/// then cancels on both sides).
pub fn check_karp_prilepkina(params: &KpParams) -> Result<bool> {
    params.validate()?;
    let a = int(params.a);
    let KpParams { f, m, b, k, .. } = params;

    let mut num = vec![a.clone()];
    num.extend(f.iter().zip(m).map(|(fj, &mj)| fj + int(mj as i64)));
    num.extend(b.iter().cloned());
    let mut den: Vec<Rational> = f.clone();
    den.extend(b.iter().zip(k).map(|(bj, &kj)| bj + int(kj as i64)));
    let lhs = eval_pfq(&HypergeometricSpec::new(num, den, int(1)))?;

    let mut outer = factorial((-params.a) as u64);
    for (bj, &kj) in b.iter().zip(k) {
        outer *= pochhammer(bj, kj as i64)?;
    }
    for (fj, &mj) in f.iter().zip(m) {
        outer /= pochhammer(fj, mj as i64)?;
    }

    let mut sum = Rational::zero();
    for (q, (bq, &kq)) in b.iter().zip(k).enumerate() {
        let kq_i = kq as i64;
        let shift = bq + int(kq_i - 1);
        let f_tilde: Vec<Rational> = f
            .iter()
            .zip(m)
            .map(|(fj, &mj)| fj - bq + int(1 - kq_i + mj as i64))
            .collect();

        let mut term = sign(kq_i - 1) / factorial(kq - 1);
        for (ft, &mj) in f_tilde.iter().zip(m) {
            term *= pochhammer(&(ft - int(mj as i64)), mj as i64)?;
        }
        for (j, (bj, &kj)) in b.iter().zip(k).enumerate() {
            if j != q {
                let p = pochhammer(&(bj - &shift), kj as i64)?;
                if p.is_zero() {
                    return Err(Error::Precondition(format!(
                        "({bj} - {shift})_{kj} vanishes"
                    )));
                }
                term /= p;
            }
        }
        // Γ(b_q + k_q - 1) / Γ(b_q + k_q - a)
        let g = GammaProduct::from_factors([(shift.clone(), 1), (bq + int(kq_i) - &a, -1)]);
        term *= ExactValue::new(Rational::one(), g)
            .as_rational()
            .map_err(|e| Error::Precondition(format!("Γ ratio at q={q}: {e}")))?;

        let mut num = vec![int(1 - kq_i), -bq + int(1 - kq_i) + &a];
        num.extend(f_tilde.iter().cloned());
        let mut den = vec![-bq + int(2 - kq_i)];
        den.extend(f_tilde.iter().zip(m).map(|(ft, &mj)| ft - int(mj as i64)));
        for (j, (bj, &kj)) in b.iter().zip(k).enumerate() {
            if j != q {
                num.push(bj - &shift);
                den.push(bj + int(kj as i64) - &shift);
            }
        }
        term *= eval_pfq(&HypergeometricSpec::new(num, den, int(1)))?;
        sum += term;
    }
    Ok(lhs == outer * sum)
}

/// The Karp–Prilepkina instantiation that evaluates the `i = 1` summand of
/// the Hahn type I orthogonality sum at Pochhammer degree `j`.
pub fn hahn_summation_kp_instance(
    alpha: &[Rational],
    beta: &Rational,
    big_n: u64,
    n: &[u64],
    j: u64,
) -> Result<KpParams> {
    if alpha.len() != n.len() || n.is_empty() {
        return Err(Error::Precondition("alpha and n must have equal, nonzero length".into()));
    }
    let total: u64 = n.iter().sum();
    if n.contains(&0) || j + 1 > total {
        return Err(Error::Precondition(format!(
            "need all n_i >= 1 and j <= |n|-1, got n={n:?}, j={j}"
        )));
    }
    let a1 = &alpha[0];
    let base = a1 + beta;
    let others = || {
        alpha[1..]
            .iter()
            .zip(&n[1..])
            .map(|(ak, &nk)| a1 - ak - int(nk as i64) + int(1))
    };
    let a = 1 - n[0] as i64;
    if j + 2 <= total {
        Ok(KpParams {
            a,
            f: vec![&base + int(big_n as i64 + 2), &base + int(j as i64 + 2)],
            m: vec![j, total - 2 - j],
            b: others().collect(),
            k: n[1..].to_vec(),
        })
    } else {
        let mut b = vec![&base + int(total as i64)];
        b.extend(others());
        let mut k = vec![1];
        k.extend_from_slice(&n[1..]);
        Ok(KpParams {
            a,
            f: vec![&base + int(big_n as i64 + 2)],
            m: vec![total - 1],
            b,
            k,
        })
    }
}
