//! Exact remainder analysis for the binomial expansion of `(1+x)^(-m)`.
//!
//! Stopping the long division of `1` by `(1+x)^m` at index `k` leaves an
//! exact rational remainder `R_k^m(x)`; this module computes the truncated
//! partial sum, the remainder in closed form, the exact identity
//! `partial_sum + remainder = (1+x)^(-m)`, and the degree-(m-1) polynomial in
//! `k` that the remainder becomes at `x = 1`. It also evaluates `(1+x)^a`
//! itself, the value the framework assigns to the series on `-1 < x <= 1`.

use crate::exactnum::{generalized_binomial, Polynomial, Rational};
use crate::{Error, Result};

/// A truncation query: exponent `-m` (m >= 1), truncation index `k`, and an
/// argument `x` with `-1 < x <= 1` (the pole at `x = -1` is excluded
/// structurally).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RemainderQuery {
    m: u32,
    k: u32,
    x: Rational,
}

fn check_argument(x: &Rational) -> Result<()> {
    let lo = Rational::from_int(-1);
    let hi = Rational::one();
    if *x <= lo || *x > hi {
        return Err(Error::InvalidParameters(format!(
            "argument x = {x} outside (-1, 1]"
        )));
    }
    Ok(())
}

impl RemainderQuery {
    pub fn new(m: u32, k: u32, x: Rational) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidParameters("m must be >= 1".into()));
        }
        check_argument(&x)?;
        Ok(RemainderQuery { m, k, x })
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn x(&self) -> &Rational {
        &self.x
    }
}

/// Integer binomial coefficient as an exact rational.
fn binom_u(n: u32, k: u32) -> Rational {
    generalized_binomial(&Rational::from_int(i64::from(n)), k)
}

/// The expansion coefficients of `(1+x)^(-m)` as a polynomial in `n`:
/// the unsigned coefficient of `x^n` is `C(m+n-1, n)`, a polynomial in `n`
/// of degree `m - 1`. Used by the regularization oracles.
pub fn series_coefficient_polynomial(m: u32) -> Polynomial {
    // C(m+n-1, n) = (n+1)(n+2)...(n+m-1) / (m-1)!
    let mut acc = Polynomial::constant(Rational::one());
    let mut fact = Rational::one();
    for i in 1..=i64::from(m) - 1 {
        acc = &acc * &Polynomial::new(vec![Rational::from_int(i), Rational::one()]);
        fact *= Rational::from_int(i);
    }
    acc.scale(&fact.recip())
}

/// Partial sum of the expansion: `sum_{n=0}^{k} (-1)^n C(m+n-1, n) x^n`.
pub fn binomial_partial_sum(q: &RemainderQuery) -> Rational {
    let mut sum = Rational::one();
    let mut coeff = Rational::one(); // C(m+n-1, n)
    let mut x_pow = Rational::one();
    for n in 0..q.k {
        let n_i = i64::from(n);
        coeff = coeff * Rational::from_int(i64::from(q.m) + n_i) / Rational::from_int(n_i + 1);
        x_pow *= &q.x;
        let signed = if (n + 1) % 2 == 0 {
            &coeff * &x_pow
        } else {
            -(&coeff * &x_pow)
        };
        sum += signed;
    }
    sum
}

/// The exact division remainder
/// `R_k^m(x) = (-1)^(k+1)/(1+x)^m * sum_{u=0}^{m-1} C(k+u, u) C(m+k, m-1-u) x^(k+1+u)`.
pub fn remainder(q: &RemainderQuery) -> Rational {
    let mut sum = Rational::zero();
    let mut x_pow = q.x.pow(q.k as i32 + 1);
    for u in 0..q.m {
        sum += binom_u(q.k + u, u) * binom_u(q.m + q.k, q.m - 1 - u) * &x_pow;
        x_pow *= &q.x;
    }
    let one_plus_x = Rational::one() + &q.x;
    let scale = one_plus_x.pow(-(q.m as i32));
    if q.k.is_multiple_of(2) {
        -(scale * sum)
    } else {
        scale * sum
    }
}

/// Whether `binomial_partial_sum(q) + remainder(q) = (1+x)^(-m)` holds as an
/// exact rational identity.
pub fn remainder_identity_check(q: &RemainderQuery) -> bool {
    let target = (Rational::one() + &q.x).pow(-(q.m as i32));
    binomial_partial_sum(q) + remainder(q) == target
}

/// The polynomial `P_m` with `R_k^m(1) = (-1)^(k+1) P_m(k) / 2^m`, of degree
/// `m - 1`, recovered by exact interpolation from `m` sample points and
/// verified on `m` further points.
pub fn remainder_polynomial(m: u32) -> Result<Polynomial> {
    if m == 0 {
        return Err(Error::InvalidParameters("m must be >= 1".into()));
    }
    let two_pow_m = Rational::from_int(2).pow(m as i32);
    let normalized = |k: u32| -> Rational {
        let q = RemainderQuery {
            m,
            k,
            x: Rational::one(),
        };
        let sign = if (k + 1).is_multiple_of(2) {
            Rational::one()
        } else {
            Rational::from_int(-1)
        };
        remainder(&q) * sign * &two_pow_m
    };
    let points: Vec<(Rational, Rational)> = (0..m)
        .map(|k| (Rational::from_int(i64::from(k)), normalized(k)))
        .collect();
    let poly = Polynomial::interpolate(&points);
    for k in m..2 * m {
        let expected = normalized(k);
        let actual = poly.eval_int(i64::from(k));
        if actual != expected {
            return Err(Error::InterpolationMismatch {
                k,
                expected: expected.to_string(),
                actual: actual.to_string(),
            });
        }
    }
    Ok(poly)
}

/// `(1+x)^a` exactly, for nonzero integer `a` and `-1 < x <= 1`. For `a < 0`
/// at `x = 1` this is the value the framework assigns to the divergent
/// series.
pub fn endpoint_value(a: i64, x: &Rational) -> Result<Rational> {
    if a == 0 {
        return Err(Error::InvalidParameters("exponent a must be nonzero".into()));
    }
    check_argument(x)?;
    let a32 = i32::try_from(a)
        .map_err(|_| Error::InvalidParameters(format!("exponent a = {a} out of range")))?;
    Ok((Rational::one() + x).pow(a32))
}
