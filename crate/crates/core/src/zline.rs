//! The reordered integer line and generating-function summation over it.
//!
//! Integers are ordered by the key `a -> -1/a`, with `0 -> -infinity` (the
//! reciprocal of zero is taken as +infinity, so its negative sits below every
//! other key). Sorting any finite set under this order lists the nonnegative
//! integers ascending and then the negative integers ascending:
//! `[0, 1, 2, ..., -2, -1]`.
//!
//! A summation range `Z_{a,b}` is the order interval `[a, b]` when `a` comes
//! no later than `b`, and otherwise the wrapped complement
//! `[a, -1] ∪ [0, b]`. Sums are assigned through a caller-supplied closed
//! form `F` with `F(z+1) - F(z) = f(z)`: the sum over `Z_{a,b}` is
//! `F(b+1) - F(a)` whether the range is finite or not. For finite ranges
//! this telescopes to the direct sum; for infinite ranges it is the
//! framework's assigned value, taken on the caller's `F` as authoritative
//! (two closed forms for the same `f` can disagree there by a nonconstant
//! period-1 term; the probe check below is the only guard).

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use crate::exactnum::{Polynomial, Rational};
use crate::{Error, Result};

/// Total order: compare `-1/a` with `-1/b`, taking `-1/0 = -infinity`.
///
/// Concretely: 0 first, then positives ascending, then negatives ascending.
pub fn zorder_cmp(a: i64, b: i64) -> Ordering {
    match (a < 0, b < 0) {
        (false, false) | (true, true) => a.cmp(&b),
        (false, true) => Ordering::Less,
        (true, false) => Ordering::Greater,
    }
}

/// Strict precedence `a ≺ b` in the reordered line.
pub fn precedes(a: i64, b: i64) -> bool {
    zorder_cmp(a, b) == Ordering::Less
}

/// `a ≼ b`.
pub fn precedes_or_equal(a: i64, b: i64) -> bool {
    zorder_cmp(a, b) != Ordering::Greater
}

/// How a summation range resolves.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RangeResolution {
    /// Explicit member list, sorted by the reordered-line order.
    Finite(Vec<i64>),
    /// Infinitely many members; carries a deterministic description.
    Infinite { description: String },
}

/// A resolved summation range `Z_{a,b}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZRange {
    pub start: i64,
    pub end: i64,
    pub resolution: RangeResolution,
}

impl ZRange {
    /// Membership test, valid for both finite and infinite resolutions.
    pub fn contains(&self, u: i64) -> bool {
        let (a, b) = (self.start, self.end);
        if precedes_or_equal(a, b) {
            precedes_or_equal(a, u) && precedes_or_equal(u, b)
        } else {
            precedes_or_equal(a, u) || precedes_or_equal(u, b)
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self.resolution, RangeResolution::Finite(_))
    }
}

/// Resolves `Z_{a,b}`: the order interval `[a, b]` when `a ≼ b`, else the
/// wrapped set `[a, -1] ∪ [0, b]`.
pub fn resolve_range(a: i64, b: i64) -> ZRange {
    let resolution = if precedes_or_equal(a, b) {
        match (a < 0, b < 0) {
            // Same side of the order: a classical integer interval.
            (false, false) | (true, true) => RangeResolution::Finite((a..=b).collect()),
            // From the nonnegative ray into the negative ray: spans infinity.
            (false, true) => RangeResolution::Infinite {
                description: format!("all integers u with u >= {a} or u <= {b}"),
            },
            (true, false) => unreachable!("negative a never precedes nonnegative b"),
        }
    } else {
        match (a < 0, b < 0) {
            // Wrapped complement with both pieces finite.
            (true, false) => {
                let mut members: Vec<i64> = (0..=b).collect();
                members.extend(a..=-1);
                RangeResolution::Finite(members)
            }
            // Complement of the open order interval (b, a), which here is a
            // finite classical gap.
            (false, false) | (true, true) => RangeResolution::Infinite {
                description: if b + 1 > a - 1 {
                    "all integers".to_string()
                } else {
                    format!("all integers except u with {} <= u <= {}", b + 1, a - 1)
                },
            },
            (false, true) => unreachable!("nonnegative a never succeeds negative b"),
        }
    };
    ZRange {
        start: a,
        end: b,
        resolution,
    }
}

type ExactFn = Arc<dyn Fn(i64) -> Rational + Send + Sync>;

/// A summand `f` together with a caller-supplied closed form `F` satisfying
/// `F(z+1) - F(z) = f(z)`, spot-checked at 32 probe points spanning both
/// signs when constructed.
#[derive(Clone)]
pub struct GeneratingFunction {
    description: String,
    antidifference: ExactFn,
    term: ExactFn,
}

impl fmt::Debug for GeneratingFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GeneratingFunction({})", self.description)
    }
}

impl GeneratingFunction {
    pub fn new(
        description: impl Into<String>,
        antidifference: impl Fn(i64) -> Rational + Send + Sync + 'static,
        term: impl Fn(i64) -> Rational + Send + Sync + 'static,
    ) -> Result<Self> {
        let g = GeneratingFunction {
            description: description.into(),
            antidifference: Arc::new(antidifference),
            term: Arc::new(term),
        };
        for z in -16..16 {
            let difference = g.antidifference(z + 1) - g.antidifference(z);
            let term = g.term(z);
            if difference != term {
                return Err(Error::GeneratingFunctionMismatch {
                    z,
                    difference: difference.to_string(),
                    term: term.to_string(),
                });
            }
        }
        Ok(g)
    }

    /// Builds the pair (p, indefinite sum of p) for a polynomial summand.
    pub fn from_polynomial(p: Polynomial) -> Self {
        let f_closed = p.indefinite_sum();
        let desc = format!("f(u) = {}", p.display_with("u"));
        let term = p;
        GeneratingFunction::new(
            desc,
            move |z| f_closed.eval_int(z),
            move |z| term.eval_int(z),
        )
        .expect("indefinite sum satisfies the difference identity")
    }

    /// `f(u) = u`, `F(u) = u(u-1)/2`.
    pub fn identity() -> Self {
        Self::from_polynomial(Polynomial::from_ints(&[0, 1]))
    }

    /// `f(u) = 1`, `F(u) = u`.
    pub fn one() -> Self {
        Self::from_polynomial(Polynomial::from_ints(&[1]))
    }

    /// `f(u) = u^2`.
    pub fn square() -> Self {
        Self::from_polynomial(Polynomial::from_ints(&[0, 0, 1]))
    }

    /// `f(u) = u^3`.
    pub fn cube() -> Self {
        Self::from_polynomial(Polynomial::from_ints(&[0, 0, 0, 1]))
    }

    /// `f(u) = (-1)^u`, `F(u) = -(-1)^u / 2`.
    pub fn alternating() -> Self {
        let sign = |z: i64| {
            if z.rem_euclid(2) == 0 {
                Rational::one()
            } else {
                Rational::from_int(-1)
            }
        };
        GeneratingFunction::new(
            "f(u) = (-1)^u",
            move |z| sign(z) * Rational::new(-1, 2),
            sign,
        )
        .expect("difference identity holds for the alternating closed form")
    }

    pub fn description(&self) -> &str {
        &self.description
    }

    pub fn antidifference(&self, z: i64) -> Rational {
        (self.antidifference)(z)
    }

    pub fn term(&self, z: i64) -> Rational {
        (self.term)(z)
    }
}

/// The sum assigned to `Z_{a,b}`: `F(b+1) - F(a)`. Telescopes to the direct
/// sum on finite ranges; on infinite ranges it is the framework's value.
pub fn sum_over_range(g: &GeneratingFunction, a: i64, b: i64) -> Rational {
    g.antidifference(b + 1) - g.antidifference(a)
}

/// Direct summation over the explicit member list of a finite range.
pub fn direct_sum(g: &GeneratingFunction, members: &[i64]) -> Rational {
    members.iter().map(|&u| g.term(u)).sum()
}

/// Sum over a disjoint union of two classical intervals. An interval with
/// `lo > hi` is empty.
pub fn split_sum(
    g: &GeneratingFunction,
    first: (i64, i64),
    second: (i64, i64),
) -> Result<Rational> {
    let nonempty = |(lo, hi): (i64, i64)| lo <= hi;
    if nonempty(first) && nonempty(second) {
        let overlap = first.0.max(second.0) <= first.1.min(second.1);
        if overlap {
            return Err(Error::OverlappingIntervals(
                first.0, first.1, second.0, second.1,
            ));
        }
    }
    let piece = |iv: (i64, i64)| {
        if nonempty(iv) {
            sum_over_range(g, iv.0, iv.1)
        } else {
            Rational::zero()
        }
    };
    Ok(piece(first) + piece(second))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn int(n: i64) -> Rational {
        Rational::from_int(n)
    }

    #[test]
    fn precedence_examples() {
        assert!(precedes(1, 2));
        assert!(precedes(2, -2));
        for n in [-5, -1, 1, 3, 100] {
            assert!(precedes(0, n), "0 must precede {n}");
        }
        assert!(!precedes(3, 3));
        assert!(precedes(-3, -1));
    }

    #[test]
    fn sorting_reorders_the_integers() {
        let mut v: Vec<i64> = (-5..=5).collect();
        v.sort_by(|&a, &b| zorder_cmp(a, b));
        assert_eq!(v, vec![0, 1, 2, 3, 4, 5, -5, -4, -3, -2, -1]);
    }

    #[test]
    fn range_resolution_cases() {
        // Classical interval.
        let r = resolve_range(2, 5);
        assert_eq!(r.resolution, RangeResolution::Finite(vec![2, 3, 4, 5]));

        // Wrapped finite: [a, -1] ∪ [0, b] in the new order.
        let r = resolve_range(-2, 1);
        assert_eq!(r.resolution, RangeResolution::Finite(vec![0, 1, -2, -1]));

        // Order interval spanning infinity: everything except 0.
        let r = resolve_range(1, -1);
        assert!(!r.is_finite());
        assert!(!r.contains(0));
        for u in [1, 2, 50, -1, -50] {
            assert!(r.contains(u));
        }

        // Wrapped infinite on the nonnegative side: complement of (2, 5).
        let r = resolve_range(5, 2);
        assert!(!r.is_finite());
        assert!(r.contains(5) && r.contains(2) && r.contains(-7) && r.contains(0));
        assert!(!r.contains(3) && !r.contains(4));

        // Singleton.
        let r = resolve_range(3, 3);
        assert_eq!(r.resolution, RangeResolution::Finite(vec![3]));
    }

    #[test]
    fn finite_contains_matches_member_list() {
        for (a, b) in [(2, 5), (-2, 1), (-6, -3), (0, 0), (3, 3)] {
            let r = resolve_range(a, b);
            if let RangeResolution::Finite(members) = &r.resolution {
                for u in -12..12 {
                    assert_eq!(r.contains(u), members.contains(&u), "a={a}, b={b}, u={u}");
                }
            } else {
                panic!("expected finite range for ({a}, {b})");
            }
        }
    }

    #[test]
    fn generating_function_probe_rejects_bad_closed_form() {
        let err = GeneratingFunction::new("bad", |z| int(z * z), int).unwrap_err();
        assert!(matches!(err, Error::GeneratingFunctionMismatch { .. }));
    }

    #[test]
    fn sum_examples() {
        let g = GeneratingFunction::identity();
        // Wrapped finite range {-2, -1, 0, 1}: F(2) - F(-2) = 1 - 3 = -2.
        assert_eq!(sum_over_range(&g, -2, 1), int(-2));
        // Infinite range over all nonzero integers: F(0) - F(1) = 0.
        assert_eq!(sum_over_range(&g, 1, -1), int(0));
        // Singleton.
        assert_eq!(sum_over_range(&g, 3, 3), int(3));
        assert_eq!(sum_over_range(&g, -7, -7), int(-7));
    }

    #[test]
    fn finite_ranges_match_direct_sums() {
        let gens = [
            GeneratingFunction::identity(),
            GeneratingFunction::square(),
            GeneratingFunction::cube(),
            GeneratingFunction::alternating(),
            GeneratingFunction::from_polynomial(Polynomial::from_ints(&[2, -3, 1])),
        ];
        for g in &gens {
            for (a, b) in [(2, 9), (-2, 1), (-6, -3), (0, 0), (-1, 0), (-5, 4)] {
                let r = resolve_range(a, b);
                if let RangeResolution::Finite(members) = &r.resolution {
                    assert_eq!(
                        sum_over_range(g, a, b),
                        direct_sum(g, members),
                        "{} on ({a}, {b})",
                        g.description()
                    );
                }
            }
        }
    }

    #[test]
    fn split_sum_examples() {
        let g = GeneratingFunction::identity();
        assert_eq!(split_sum(&g, (-2, -1), (0, 1)).unwrap(), int(-2));
        // Empty second part.
        assert_eq!(split_sum(&g, (2, 4), (5, 4)).unwrap(), int(9));
        let sq = GeneratingFunction::square();
        assert_eq!(split_sum(&sq, (0, 0), (1, 1)).unwrap(), int(1));
        assert!(matches!(
            split_sum(&g, (0, 5), (3, 8)),
            Err(Error::OverlappingIntervals(..))
        ));
    }

    #[test]
    fn adjacent_ranges_telescope() {
        let g = GeneratingFunction::from_polynomial(Polynomial::from_ints(&[1, 0, 2]));
        for (a, b, c) in [(0i64, 4i64, 9i64), (-7, -3, -1), (2, 2, 8)] {
            assert_eq!(
                sum_over_range(&g, a, b) + sum_over_range(&g, b + 1, c),
                sum_over_range(&g, a, c)
            );
        }
    }

    proptest! {
        #[test]
        fn order_axioms(a in -200i64..200, b in -200i64..200, c in -200i64..200) {
            // Irreflexivity.
            prop_assert!(!precedes(a, a));
            // Asymmetry + connectedness.
            if a != b {
                prop_assert!(precedes(a, b) ^ precedes(b, a));
            }
            // Transitivity.
            if precedes(a, b) && precedes(b, c) {
                prop_assert!(precedes(a, c));
            }
        }

        #[test]
        fn key_comparison_matches_rational_keys(a in -500i64..500, b in -500i64..500) {
            // Independent oracle: compare -1/a and -1/b as exact rationals,
            // with the 0 -> -infinity convention.
            let key = |n: i64| -> Option<Rational> {
                (n != 0).then(|| Rational::new(-1, n))
            };
            let expected = match (key(a), key(b)) {
                (None, None) => Ordering::Equal,
                (None, Some(_)) => Ordering::Less,
                (Some(_), None) => Ordering::Greater,
                (Some(x), Some(y)) => x.cmp(&y),
            };
            prop_assert_eq!(zorder_cmp(a, b), expected);
        }
    }
}
