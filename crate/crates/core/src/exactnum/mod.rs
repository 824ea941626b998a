//! Exact rational arithmetic, generalized binomial coefficients, Pochhammer
//! symbols, and exact-coefficient polynomials.
//!
//! Everything here is pure, immutable, and deterministic; values never leave
//! reduced form. Binomials and Pochhammer symbols are computed by iterated
//! exact multiplication (no Gamma function is involved anywhere).

mod polynomial;
mod rational;

pub use polynomial::{binomial_basis, Polynomial};
pub use rational::Rational;

/// Generalized binomial coefficient `C(a, u) = a(a-1)...(a-u+1) / u!` for an
/// arbitrary rational upper argument; `C(a, 0) = 1`.
pub fn generalized_binomial(a: &Rational, u: u32) -> Rational {
    let mut acc = Rational::one();
    for i in 0..u as i64 {
        acc = acc * (a - &Rational::from_int(i)) / Rational::from_int(i + 1);
    }
    acc
}

/// Rising factorial `(w)_n = w(w+1)...(w+n-1)`, with `(w)_0 = 1`.
pub fn pochhammer(w: &Rational, n: u32) -> Rational {
    let mut acc = Rational::one();
    for i in 0..n as i64 {
        acc *= w + &Rational::from_int(i);
    }
    acc
}

/// `n!` as an exact rational.
pub fn factorial(n: u32) -> Rational {
    pochhammer(&Rational::one(), n)
}
