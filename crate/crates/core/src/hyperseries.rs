//! Generalized hypergeometric series: term generation, exact partial sums,
//! and the two convergence classifiers (parameter-count radius rule and the
//! unit-endpoint rule driven by `s = sum(lower) - sum(upper)`).
//!
//! Parameters are real rationals, so every branch comparison in the
//! classifiers is exact.

use std::fmt;

use crate::exactnum::{pochhammer, Rational};
use crate::{Error, Result};

/// Upper and lower parameter lists of a pFq series.
///
/// Construction rejects a lower parameter that is zero or a negative integer
/// unless some upper parameter is a nonpositive integer of strictly smaller
/// absolute value, in which case the series terminates before the offending
/// factor can vanish.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HypergeometricParams {
    upper: Vec<Rational>,
    lower: Vec<Rational>,
}

/// First index `n` at which the Pochhammer factor `(a)_n` contains a zero,
/// i.e. `n = 1 - a` for a nonpositive integer `a`.
fn vanish_index(a: &Rational) -> Option<u32> {
    if !a.is_nonpositive_integer() {
        return None;
    }
    let idx = Rational::one() - a;
    u32::try_from(idx.as_integer().expect("integer by construction"))
        .ok()
        .or(Some(u32::MAX))
}

impl HypergeometricParams {
    pub fn new(upper: Vec<Rational>, lower: Vec<Rational>) -> Result<Self> {
        let params = HypergeometricParams { upper, lower };
        if let Some(lo) = params.lower_vanish_index() {
            match params.termination_index() {
                Some(hi) if hi < lo => {}
                _ => {
                    let bad = params
                        .lower
                        .iter()
                        .find(|b| vanish_index(b) == Some(lo))
                        .expect("index came from this list");
                    return Err(Error::InvalidParameters(format!(
                        "lower parameter {bad} is zero or a negative integer and the series does not terminate first"
                    )));
                }
            }
        }
        Ok(params)
    }

    pub fn upper(&self) -> &[Rational] {
        &self.upper
    }

    pub fn lower(&self) -> &[Rational] {
        &self.lower
    }

    pub fn p(&self) -> usize {
        self.upper.len()
    }

    pub fn q(&self) -> usize {
        self.lower.len()
    }

    /// First index from which every term is zero, when some upper parameter
    /// is a nonpositive integer.
    pub fn termination_index(&self) -> Option<u32> {
        self.upper.iter().filter_map(vanish_index).min()
    }

    fn lower_vanish_index(&self) -> Option<u32> {
        self.lower.iter().filter_map(vanish_index).min()
    }

    pub fn is_terminating(&self) -> bool {
        self.termination_index().is_some()
    }

    /// `sum(lower) - sum(upper)`, the quantity steering the endpoint rule.
    pub fn parameter_excess(&self) -> Rational {
        let lower: Rational = self.lower.iter().cloned().sum();
        let upper: Rational = self.upper.iter().cloned().sum();
        lower - upper
    }

    /// Exact coefficient `prod (a_i)_n / (prod (b_j)_n * n!)`.
    pub fn term_coefficient(&self, n: u32) -> Result<Rational> {
        if let Some(t) = self.termination_index() {
            if n >= t {
                return Ok(Rational::zero());
            }
        }
        if let Some(v) = self.lower_vanish_index() {
            if n >= v {
                // Unreachable through the validated constructor; kept as the
                // operation-level contract.
                let bad = self
                    .lower
                    .iter()
                    .find(|b| vanish_index(b) == Some(v))
                    .expect("index came from this list");
                return Err(Error::UndefinedTerm {
                    param: bad.to_string(),
                    index: v,
                });
            }
        }
        let mut num = Rational::one();
        for a in &self.upper {
            num *= pochhammer(a, n);
        }
        let mut den = Rational::one();
        for b in &self.lower {
            den *= pochhammer(b, n);
        }
        let mut n_fact = Rational::one();
        for i in 1..=i64::from(n) {
            n_fact *= Rational::from_int(i);
        }
        Ok(num / (den * n_fact))
    }

    /// Exact partial sum `sum_{n=0}^{n_max} c_n x^n`, computed by an
    /// incremental term recurrence.
    pub fn partial_sum(&self, x: &Rational, n_max: u32) -> Result<Rational> {
        // Surface the undefined-term contract up front.
        let _ = self.term_coefficient(n_max)?;
        let termination = self.termination_index();
        let mut sum = Rational::one();
        let mut term = Rational::one(); // c_n x^n, starting at n = 0
        for n in 0..n_max {
            if termination.is_some_and(|t| n + 1 >= t) {
                break;
            }
            let n_rat = Rational::from_int(i64::from(n));
            for a in &self.upper {
                term *= a + &n_rat;
            }
            for b in &self.lower {
                term /= b + &n_rat;
            }
            term = term * x / (&n_rat + &Rational::one());
            sum += &term;
        }
        Ok(sum)
    }

    /// Floating-point partial sum via the same term recurrence; for
    /// desk-scale empirical tail checks where exact arithmetic would be
    /// needlessly heavy.
    pub fn partial_sum_f64(&self, x: f64, n_max: u32) -> Result<f64> {
        let _ = self.term_coefficient(0)?;
        let termination = self.termination_index();
        let mut sum = 1.0;
        let mut term = 1.0;
        for n in 0..n_max {
            if termination.is_some_and(|t| n + 1 >= t) {
                break;
            }
            let nf = f64::from(n);
            for a in &self.upper {
                term *= a.to_f64() + nf;
            }
            for b in &self.lower {
                term /= b.to_f64() + nf;
            }
            term *= x / (nf + 1.0);
            sum += term;
        }
        Ok(sum)
    }
}

/// Convergence domain implied by the parameter counts alone.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RadiusRule {
    /// `p <= q`: converges for every x.
    ConvergesAllX,
    /// `p = q + 1`: converges for |x| < 1.
    ConvergesUnitDisk,
    /// `p > q + 1`: diverges for every x != 0.
    ConvergesOnlyAtZero,
}

impl fmt::Display for RadiusRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            RadiusRule::ConvergesAllX => "converges for all x (p <= q)",
            RadiusRule::ConvergesUnitDisk => "converges for |x| < 1 (p = q + 1)",
            RadiusRule::ConvergesOnlyAtZero => "diverges for all x != 0 (p > q + 1)",
        };
        f.write_str(s)
    }
}

pub fn classify_radius(p: usize, q: usize) -> RadiusRule {
    if p <= q {
        RadiusRule::ConvergesAllX
    } else if p == q + 1 {
        RadiusRule::ConvergesUnitDisk
    } else {
        RadiusRule::ConvergesOnlyAtZero
    }
}

/// One of the two unit-circle evaluation points handled by the endpoint rule.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Endpoint {
    PlusOne,
    MinusOne,
}

impl Endpoint {
    pub fn value(self) -> Rational {
        match self {
            Endpoint::PlusOne => Rational::one(),
            Endpoint::MinusOne => Rational::from_int(-1),
        }
    }
}

impl fmt::Display for Endpoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Endpoint::PlusOne => "+1",
            Endpoint::MinusOne => "-1",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    AbsolutelyConvergent,
    ConditionallyConvergent,
    Divergent,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::AbsolutelyConvergent => "AbsolutelyConvergent",
            Verdict::ConditionallyConvergent => "ConditionallyConvergent",
            Verdict::Divergent => "Divergent",
        })
    }
}

/// Which branch of the endpoint rule fired.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RuleBranch {
    /// `s > 0`: absolute convergence at both endpoints.
    PositiveExcess,
    /// `x = -1` with `0 >= s > -1`: conditional convergence.
    ConditionalAtMinusOne,
    /// `s <= -1`: divergence.
    ExcessAtMostMinusOne,
    /// `x = +1` with `0 >= s > -1`: the terms compare against the harmonic
    /// series, which diverges. This case sits outside the statement of the
    /// endpoint rule proper and is classified by that comparison.
    HarmonicComparisonAtPlusOne,
}

impl fmt::Display for RuleBranch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            RuleBranch::PositiveExcess => "s > 0: absolutely convergent",
            RuleBranch::ConditionalAtMinusOne => "x = -1, 0 >= s > -1: conditionally convergent",
            RuleBranch::ExcessAtMostMinusOne => "s <= -1: divergent",
            RuleBranch::HarmonicComparisonAtPlusOne => {
                "x = +1, 0 >= s > -1: divergent by comparison with the harmonic series"
            }
        };
        f.write_str(s)
    }
}

/// Endpoint verdict together with the rule branch that produced it and the
/// exact value of `s`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConvergenceVerdict {
    pub verdict: Verdict,
    pub branch: RuleBranch,
    pub parameter_excess: Rational,
}

/// Classifies a nonterminating series with `p = q + 1` at `x = +1` or
/// `x = -1`. Terminating series are rejected with
/// [`Error::TerminatingSeries`]; their finite sum converges trivially.
pub fn classify_endpoint(
    params: &HypergeometricParams,
    endpoint: Endpoint,
) -> Result<ConvergenceVerdict> {
    if params.p() != params.q() + 1 {
        return Err(Error::InvalidParameters(format!(
            "endpoint rule needs p = q + 1, got p = {}, q = {}",
            params.p(),
            params.q()
        )));
    }
    if params.is_terminating() {
        let bad = params
            .upper
            .iter()
            .find(|a| a.is_nonpositive_integer())
            .expect("terminating implies such a parameter");
        return Err(Error::TerminatingSeries {
            param: bad.to_string(),
        });
    }
    let s = params.parameter_excess();
    let zero = Rational::zero();
    let minus_one = Rational::from_int(-1);
    let (verdict, branch) = if s > zero {
        (Verdict::AbsolutelyConvergent, RuleBranch::PositiveExcess)
    } else if s <= minus_one {
        (Verdict::Divergent, RuleBranch::ExcessAtMostMinusOne)
    } else {
        match endpoint {
            Endpoint::MinusOne => (
                Verdict::ConditionallyConvergent,
                RuleBranch::ConditionalAtMinusOne,
            ),
            Endpoint::PlusOne => (Verdict::Divergent, RuleBranch::HarmonicComparisonAtPlusOne),
        }
    };
    Ok(ConvergenceVerdict {
        verdict,
        branch,
        parameter_excess: s,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::generalized_binomial;
    use proptest::prelude::*;

    fn int(n: i64) -> Rational {
        Rational::from_int(n)
    }

    fn params(upper: &[Rational], lower: &[Rational]) -> HypergeometricParams {
        HypergeometricParams::new(upper.to_vec(), lower.to_vec()).unwrap()
    }

    #[test]
    fn term_zero_is_one() {
        let p = params(&[Rational::new(1, 3), int(4)], &[Rational::new(7, 2)]);
        assert_eq!(p.term_coefficient(0).unwrap(), int(1));
    }

    #[test]
    fn gauss_series_with_matching_parameters() {
        // alpha = 1, beta = gamma: coefficient collapses to (1)_n / n! = 1.
        let p = params(&[int(1), Rational::new(5, 3)], &[Rational::new(5, 3)]);
        assert_eq!(p.term_coefficient(3).unwrap(), int(1));
    }

    #[test]
    fn terminating_series_coefficients_vanish() {
        let p = params(&[int(-2)], &[]);
        assert_eq!(p.term_coefficient(2).unwrap(), int(1)); // (-2)_2 / 2! = 1
        assert_eq!(p.term_coefficient(3).unwrap(), int(0));
        assert_eq!(p.term_coefficient(9).unwrap(), int(0));
    }

    #[test]
    fn invalid_lower_parameter_rejected() {
        let err = HypergeometricParams::new(vec![int(1)], vec![int(-3)]).unwrap_err();
        assert!(matches!(err, Error::InvalidParameters(_)));
        // Terminating first (|-1| < |-3|) is fine.
        let p = params(&[int(-1)], &[int(-3)]);
        assert_eq!(p.term_coefficient(5).unwrap(), int(0));
        // Equal magnitude is not "strictly smaller" and stays invalid.
        assert!(HypergeometricParams::new(vec![int(-3)], vec![int(-3)]).is_err());
    }

    #[test]
    fn partial_sum_examples() {
        // x = 0 keeps only the n = 0 term.
        let p = params(&[Rational::new(1, 4), int(2)], &[int(3)]);
        assert_eq!(p.partial_sum(&Rational::zero(), 17).unwrap(), int(1));

        // Geometric: 2F1(1, b; b; 1/2) partial sums approach 2.
        let g = params(&[int(1), int(5)], &[int(5)]);
        let s30 = g.partial_sum(&Rational::new(1, 2), 30).unwrap();
        assert!((s30.to_f64() - 2.0).abs() < 1e-8);
        // Exact geometric partial sum: (1 - (1/2)^31) / (1 - 1/2).
        assert_eq!(s30, int(2) - Rational::new(1, 2).pow(30));

        // Terminating binomial (1 - 1)^2 = 0 once past the truncation order.
        let t = params(&[int(-2)], &[]);
        assert_eq!(t.partial_sum(&int(1), 2).unwrap(), int(0));
        assert_eq!(t.partial_sum(&int(1), 7).unwrap(), int(0));
    }

    #[test]
    fn radius_rule_branches() {
        assert_eq!(classify_radius(1, 1), RadiusRule::ConvergesAllX);
        assert_eq!(classify_radius(2, 1), RadiusRule::ConvergesUnitDisk);
        assert_eq!(classify_radius(3, 1), RadiusRule::ConvergesOnlyAtZero);
        assert_eq!(classify_radius(0, 0), RadiusRule::ConvergesAllX);
    }

    #[test]
    fn endpoint_branch_examples() {
        let abs = params(
            &[Rational::new(1, 4), Rational::new(1, 4)],
            &[int(1)],
        );
        let v = classify_endpoint(&abs, Endpoint::PlusOne).unwrap();
        assert_eq!(v.verdict, Verdict::AbsolutelyConvergent);
        assert_eq!(v.parameter_excess, Rational::new(1, 2));

        let cond = params(
            &[Rational::new(1, 2), Rational::new(1, 2)],
            &[int(1)],
        );
        let v = classify_endpoint(&cond, Endpoint::MinusOne).unwrap();
        assert_eq!(v.verdict, Verdict::ConditionallyConvergent);
        assert_eq!(v.parameter_excess, Rational::zero());

        let div = params(&[int(2), int(1)], &[int(1)]);
        let v = classify_endpoint(&div, Endpoint::MinusOne).unwrap();
        assert_eq!(v.verdict, Verdict::Divergent);
        assert_eq!(v.parameter_excess, int(-2));

        // x = +1 with 0 >= s > -1 diverges by harmonic comparison.
        let v = classify_endpoint(&cond, Endpoint::PlusOne).unwrap();
        assert_eq!(v.verdict, Verdict::Divergent);
        assert_eq!(v.branch, RuleBranch::HarmonicComparisonAtPlusOne);
    }

    #[test]
    fn endpoint_rejects_terminating_and_wrong_order() {
        let t = params(&[int(-4), int(1)], &[int(2)]);
        assert!(matches!(
            classify_endpoint(&t, Endpoint::PlusOne),
            Err(Error::TerminatingSeries { .. })
        ));
        let wrong = params(&[int(1)], &[int(2)]);
        assert!(matches!(
            classify_endpoint(&wrong, Endpoint::PlusOne),
            Err(Error::InvalidParameters(_))
        ));
    }

    #[test]
    fn one_f_zero_matches_generalized_binomial() {
        // (alpha)_n / n! = (-1)^n C(-alpha, n) for alpha in {1, -1, 2, -2, 1/2}.
        for alpha in [int(1), int(-1), int(2), int(-2), Rational::new(1, 2)] {
            let p = HypergeometricParams::new(vec![alpha.clone()], vec![]).unwrap();
            for n in 0..=20u32 {
                let lhs = p.term_coefficient(n).unwrap();
                let sign = if n % 2 == 0 { int(1) } else { int(-1) };
                let rhs = sign * generalized_binomial(&-&alpha, n);
                assert_eq!(lhs, rhs, "alpha={alpha}, n={n}");
            }
        }
    }

    #[test]
    fn cancelling_parameter_pair_leaves_terms_unchanged() {
        let beta = Rational::new(7, 3);
        let two_f_one = params(&[Rational::new(1, 2), beta.clone()], &[beta]);
        let one_f_zero = params(&[Rational::new(1, 2)], &[]);
        for n in 0..=15 {
            assert_eq!(
                two_f_one.term_coefficient(n).unwrap(),
                one_f_zero.term_coefficient(n).unwrap()
            );
        }
    }

    proptest! {
        #[test]
        fn endpoint_invariant_under_parameter_permutation(
            swap_upper in proptest::bool::ANY,
            swap_lower in proptest::bool::ANY,
            nums in proptest::collection::vec(-9i64..9, 5),
        ) {
            // 3F2 with denominators fixed at 4 so nothing is an integer.
            let r = |i: usize| Rational::new(nums[i] * 4 + 1, 4);
            let mut upper = vec![r(0), r(1), r(2)];
            let mut lower = vec![r(3), r(4)];
            let base = HypergeometricParams::new(upper.clone(), lower.clone()).unwrap();
            if swap_upper { upper.swap(0, 2); }
            if swap_lower { lower.swap(0, 1); }
            let permuted = HypergeometricParams::new(upper, lower).unwrap();
            for ep in [Endpoint::PlusOne, Endpoint::MinusOne] {
                let a = classify_endpoint(&base, ep).unwrap();
                let b = classify_endpoint(&permuted, ep).unwrap();
                prop_assert_eq!(a.verdict, b.verdict);
                prop_assert_eq!(a.parameter_excess, b.parameter_excess);
            }
        }
    }
}
