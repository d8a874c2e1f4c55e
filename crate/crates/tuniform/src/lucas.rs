//! Lucas sequences of the first and second kind over arbitrary-precision
//! integers, their degenerate closed forms, partial sums, and the exact
//! limiting value of the partial-sum ratio.
//!
//! Terms are always computed by the defining recurrences with exact
//! integers. The closed forms involving the characteristic roots are used
//! only as identities to verify (integrally, e.g. `V² − D·U² = 4Qⁿ`), never
//! to produce terms.

use crate::exact::{ExactRatio, SqrtVal};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;
use std::fmt;
use thiserror::Error;

/// Integer parameters of the recurrence `x_n = P·x_{n-1} − Q·x_{n-2}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct LucasParams {
    pub p: i64,
    pub q: i64,
}

impl LucasParams {
    pub fn new(p: i64, q: i64) -> Self {
        LucasParams { p, q }
    }

    /// Discriminant `P² − 4Q` of the characteristic equation.
    pub fn discriminant(&self) -> i128 {
        (self.p as i128) * (self.p as i128) - 4 * (self.q as i128)
    }

    pub fn classify(&self) -> RootClass {
        match self.discriminant().cmp(&0) {
            Ordering::Greater => RootClass::DistinctReal,
            Ordering::Less => RootClass::ComplexPair,
            Ordering::Equal => {
                // P² = 4Q forces P even for integer P, Q.
                assert!(self.p % 2 == 0, "double root with odd P cannot occur");
                RootClass::DoubleRoot { s: self.p / 2 }
            }
        }
    }
}

/// Root structure of `x² − Px + Q = 0`, by the sign of the discriminant.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RootClass {
    DistinctReal,
    /// Both roots equal `s`, with `P = 2s` and `Q = s²`.
    DoubleRoot { s: i64 },
    ComplexPair,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LucasError {
    #[error("partial sums are defined here only for Q = 1, got Q = {0}")]
    UnsupportedQ(i64),
    #[error("P must exceed 2, got P = {0}")]
    InvalidP(i64),
    #[error("U_{n}({p}, 1) = 0; the ratio is undefined")]
    DivisionByZero { p: i64, n: u32 },
}

/// `U_n(P, Q)` with `U_0 = 0`, `U_1 = 1`.
pub fn lucas_u(params: LucasParams, n: u32) -> BigInt {
    lucas_term(params, n, BigInt::zero(), BigInt::one())
}

/// `V_n(P, Q)` with `V_0 = 2`, `V_1 = P`.
pub fn lucas_v(params: LucasParams, n: u32) -> BigInt {
    lucas_term(params, n, BigInt::from(2), BigInt::from(params.p))
}

fn lucas_term(params: LucasParams, n: u32, x0: BigInt, x1: BigInt) -> BigInt {
    let p = BigInt::from(params.p);
    let q = BigInt::from(params.q);
    let mut prev = x0;
    let mut cur = x1;
    if n == 0 {
        return prev;
    }
    for _ in 1..n {
        let next = &p * &cur - &q * &prev;
        prev = std::mem::replace(&mut cur, next);
    }
    cur
}

/// Terms `U_0 ..= U_n` in one pass.
pub fn lucas_u_seq(params: LucasParams, n: u32) -> Vec<BigInt> {
    let p = BigInt::from(params.p);
    let q = BigInt::from(params.q);
    let mut terms = Vec::with_capacity(n as usize + 1);
    terms.push(BigInt::zero());
    if n == 0 {
        return terms;
    }
    terms.push(BigInt::one());
    for k in 2..=n as usize {
        let next = &p * &terms[k - 1] - &q * &terms[k - 2];
        terms.push(next);
    }
    terms
}

/// Degenerate closed form `U_n(2S, S²) = n·S^(n−1)`; returns 0 at `n = 0`.
pub fn degenerate_u(s: i64, n: u32) -> BigInt {
    if n == 0 {
        return BigInt::zero();
    }
    BigInt::from(n) * BigInt::from(s).pow(n - 1)
}

/// Degenerate closed form `V_n(2S, S²) = 2·S^n`.
pub fn degenerate_v(s: i64, n: u32) -> BigInt {
    BigInt::from(2) * BigInt::from(s).pow(n)
}

/// `Σ_{k=0..n} U_k(P, 1)`, by exact accumulation.
pub fn lucas_u_sum(params: LucasParams, n: u32) -> Result<BigInt, LucasError> {
    if params.q != 1 {
        return Err(LucasError::UnsupportedQ(params.q));
    }
    Ok(lucas_u_seq(params, n).iter().sum())
}

/// The exact rational `Σ_{k=0..n} U_k(P, 1) / U_n(P, 1)` for `P > 2`.
pub fn sum_over_last(params: LucasParams, n: u32) -> Result<ExactRatio, LucasError> {
    if params.q != 1 {
        return Err(LucasError::UnsupportedQ(params.q));
    }
    if params.p <= 2 {
        return Err(LucasError::InvalidP(params.p));
    }
    let terms = lucas_u_seq(params, n);
    let last = terms.last().expect("nonempty").clone();
    if last.is_zero() {
        return Err(LucasError::DivisionByZero { p: params.p, n });
    }
    let sum: BigInt = terms.iter().sum();
    Ok(ExactRatio::new(sum, last))
}

/// Limit of `Σ U_k / U_n` as `n → ∞` for `Q = 1`, `P > 2`: the exact value
/// `(1 + √((P+2)/(P−2))) / 2`, held symbolically.
#[derive(Clone, Debug)]
pub struct SumRatioLimit {
    root: SqrtVal,
}

impl SumRatioLimit {
    pub fn radicand(&self) -> &BigRational {
        self.root.radicand()
    }

    /// Compares a rational `x` with `(1 + √r)/2`, i.e. `2x − 1` with `√r`.
    pub fn cmp_ratio(&self, x: &ExactRatio) -> Ordering {
        let shifted = ExactRatio::new(
            x.numer() * 2 - x.denom(),
            x.denom().clone(),
        );
        self.root.cmp_ratio(&shifted)
    }

    /// True when the limit strictly exceeds `x`.
    pub fn exceeds(&self, x: &ExactRatio) -> bool {
        self.cmp_ratio(x) == Ordering::Greater
    }

    /// Decimal expansion truncated to `digits` fractional digits.
    ///
    /// Computed from the integer square root of the scaled radicand; when the
    /// floor is ambiguous at the requested scale, the boundary is settled by
    /// one exact integer comparison.
    pub fn decimal_trunc(&self, digits: usize) -> String {
        let numer = self.radicand().numer();
        let denom = self.radicand().denom();
        let scale = BigInt::from(10u32).pow(digits as u32);
        // value·10^k = (10^k·d + √(n·d·10^2k)) / (2d)
        let y: BigInt = numer * denom * (&scale * &scale);
        let s = num_integer::Roots::sqrt(&y);
        let a = &scale * denom;
        let b = BigInt::from(2) * denom;
        let f1: BigInt = (&a + &s) / &b;
        let f2: BigInt = (&a + &s + 1u32) / &b;
        let floor = if f1 == f2 {
            f1
        } else {
            // √y is inside (f1·b − a, f1·b − a + 1]; compare against the
            // integer boundary exactly.
            let boundary = &f2 * &b - &a;
            if y >= &boundary * &boundary {
                f2
            } else {
                f1
            }
        };
        let (int_part, frac_part) = num_integer::Integer::div_rem(&floor, &scale);
        if digits == 0 {
            return int_part.to_string();
        }
        format!("{int_part}.{:0>width$}", frac_part.to_string(), width = digits)
    }
}

impl fmt::Display for SumRatioLimit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(1 + sqrt({}))/2", self.radicand())
    }
}

/// Constructs `(1 + √((P+2)/(P−2)))/2` for `P > 2`.
pub fn limit_sum_over_last(p: i64) -> Result<SumRatioLimit, LucasError> {
    if p <= 2 {
        return Err(LucasError::InvalidP(p));
    }
    let radicand = BigRational::new(BigInt::from(p + 2), BigInt::from(p - 2));
    Ok(SumRatioLimit {
        root: SqrtVal::new(radicand),
    })
}

/// `F_n = U_n(1, −1)`.
pub fn fibonacci(n: u32) -> BigInt {
    lucas_u(LucasParams::new(1, -1), n)
}

/// Even-indexed Fibonacci numbers: `B_n = U_n(3, 1) = F_{2n}`.
pub fn bisection(n: u32) -> BigInt {
    lucas_u(LucasParams::new(3, 1), n)
}

/// `Σ_{k=0..n} B_k`, returned through the identity `F_{2n+1} − 1` and
/// checked against the direct accumulation.
pub fn bisection_sum(n: u32) -> BigInt {
    let closed = fibonacci(2 * n + 1) - 1;
    let direct: BigInt = (0..=n).map(bisection).sum();
    assert_eq!(closed, direct, "bisection sum identity failed at n = {n}");
    closed
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Independent oracle: the recurrence written as literally as possible.
    fn oracle_u(p: i64, q: i64, n: u32) -> BigInt {
        match n {
            0 => BigInt::zero(),
            1 => BigInt::one(),
            _ => p * oracle_u(p, q, n - 1) - q * oracle_u(p, q, n - 2),
        }
    }

    fn oracle_v(p: i64, q: i64, n: u32) -> BigInt {
        match n {
            0 => BigInt::from(2),
            1 => BigInt::from(p),
            _ => p * oracle_v(p, q, n - 1) - q * oracle_v(p, q, n - 2),
        }
    }

    fn params(p: i64, q: i64) -> LucasParams {
        LucasParams::new(p, q)
    }

    #[test]
    fn u_initial_conditions() {
        for (p, q) in [(3, 1), (0, 0), (-7, 5), (2, 1)] {
            assert_eq!(lucas_u(params(p, q), 0), BigInt::zero());
            assert_eq!(lucas_u(params(p, q), 1), BigInt::one());
            assert_eq!(lucas_v(params(p, q), 0), BigInt::from(2));
            assert_eq!(lucas_v(params(p, q), 1), BigInt::from(p));
        }
    }

    #[test]
    fn u_known_values() {
        // Fibonacci: 0, 1, 1, 2, 3, 5, 8, 13
        assert_eq!(lucas_u(params(1, -1), 6), BigInt::from(8));
        // bisection: 0, 1, 3, 8, 21, 55
        assert_eq!(lucas_u(params(3, 1), 4), BigInt::from(21));
        // period-4 sequence 0, 1, 0, -1
        assert_eq!(lucas_u(params(0, 1), 3), BigInt::from(-1));
    }

    #[test]
    fn v_known_values() {
        // V_n(2, 1) = 2·1^n = 2 for all n
        assert_eq!(lucas_v(params(2, 1), 5), BigInt::from(2));
        // oracle gives 2, 3, 7, 18, 47
        assert_eq!(oracle_v(3, 1, 4), BigInt::from(47));
        assert_eq!(lucas_v(params(3, 1), 4), BigInt::from(47));
    }

    #[test]
    fn root_classification() {
        assert_eq!(params(3, 1).classify(), RootClass::DistinctReal);
        assert_eq!(params(2, 1).classify(), RootClass::DoubleRoot { s: 1 });
        assert_eq!(params(1, 1).classify(), RootClass::ComplexPair);
        assert_eq!(params(-6, 9).classify(), RootClass::DoubleRoot { s: -3 });
    }

    #[test]
    fn degenerate_closed_forms() {
        assert_eq!(degenerate_u(1, 7), BigInt::from(7));
        assert_eq!(degenerate_u(5, 0), BigInt::zero());
        assert_eq!(degenerate_u(-3, 0), BigInt::zero());
        // oracle for U_4(6, 9): 0, 1, 6, 27, 108
        assert_eq!(oracle_u(6, 9, 4), BigInt::from(108));
        assert_eq!(degenerate_u(3, 4), BigInt::from(108));

        for s in -5..=5i64 {
            for n in 0..=50u32 {
                let p = params(2 * s, s * s);
                assert_eq!(degenerate_u(s, n), lucas_u(p, n), "U, s={s} n={n}");
                assert_eq!(degenerate_v(s, n), lucas_v(p, n), "V, s={s} n={n}");
            }
        }
    }

    #[test]
    fn partial_sums() {
        assert_eq!(lucas_u_sum(params(3, 1), 4).unwrap(), BigInt::from(33));
        assert_eq!(lucas_u_sum(params(2, 1), 8).unwrap(), BigInt::from(36));
        assert_eq!(lucas_u_sum(params(0, 1), 2).unwrap(), BigInt::from(1));
        assert_eq!(
            lucas_u_sum(params(3, -1), 4),
            Err(LucasError::UnsupportedQ(-1))
        );
    }

    #[test]
    fn sum_over_last_values() {
        let one = ExactRatio::from_u64(1, 1);
        assert_eq!(sum_over_last(params(3, 1), 1).unwrap(), one);
        assert_eq!(
            sum_over_last(params(3, 1), 3).unwrap(),
            ExactRatio::from_u64(12, 8)
        );
        assert_eq!(
            sum_over_last(params(4, 1), 3).unwrap(),
            ExactRatio::from_u64(20, 15)
        );
        assert_eq!(
            sum_over_last(params(3, 1), 0),
            Err(LucasError::DivisionByZero { p: 3, n: 0 })
        );
        assert_eq!(sum_over_last(params(2, 1), 3), Err(LucasError::InvalidP(2)));
        assert_eq!(
            sum_over_last(params(3, 2), 3),
            Err(LucasError::UnsupportedQ(2))
        );
    }

    #[test]
    fn limit_requires_p_above_two() {
        assert!(matches!(limit_sum_over_last(2), Err(LucasError::InvalidP(2))));
        assert!(matches!(limit_sum_over_last(-5), Err(LucasError::InvalidP(-5))));
    }

    #[test]
    fn limit_decimal_rendering() {
        // golden ratio (1+√5)/2
        let phi = limit_sum_over_last(3).unwrap();
        assert_eq!(phi.decimal_trunc(10), "1.6180339887");
        // (1+√3)/2
        let p4 = limit_sum_over_last(4).unwrap();
        assert_eq!(p4.decimal_trunc(10), "1.3660254037");
        // (1+√2)/2
        let p6 = limit_sum_over_last(6).unwrap();
        assert_eq!(p6.decimal_trunc(10), "1.2071067811");
        // perfect-square radicand: (1+√4)/2 = 3/2 for the degenerate check
        let sq = SumRatioLimit {
            root: SqrtVal::new(BigRational::from_integer(BigInt::from(4))),
        };
        assert_eq!(sq.decimal_trunc(3), "1.500");
    }

    #[test]
    fn sum_over_last_monotone_below_limit() {
        for p in 3..=8i64 {
            let limit = limit_sum_over_last(p).unwrap();
            let mut prev: Option<ExactRatio> = None;
            for n in 1..=100u32 {
                let ratio = sum_over_last(params(p, 1), n).unwrap();
                if let Some(prev) = &prev {
                    assert!(ratio > *prev, "not increasing at P={p}, n={n}");
                }
                assert!(limit.exceeds(&ratio), "limit not exceeded at P={p}, n={n}");
                prev = Some(ratio);
            }
        }
    }

    #[test]
    fn fibonacci_and_bisection() {
        let fib_prefix: Vec<i64> = vec![0, 1, 1, 2, 3, 5, 8, 13, 21, 34, 55];
        for (n, expected) in fib_prefix.iter().enumerate() {
            assert_eq!(fibonacci(n as u32), BigInt::from(*expected));
        }
        assert_eq!(bisection(0), BigInt::zero());
        assert_eq!(bisection(5), BigInt::from(55));
        for n in 0..=100u32 {
            assert_eq!(bisection(n), fibonacci(2 * n), "n = {n}");
        }
    }

    #[test]
    fn bisection_sum_values() {
        assert_eq!(bisection_sum(0), BigInt::zero());
        // brute-force: 0 + 1 + 3 + 8 = 12 = F_7 − 1
        assert_eq!(bisection_sum(3), BigInt::from(12));
        assert_eq!(bisection_sum(4), BigInt::from(33));
    }

    #[test]
    fn periodicity_small_p() {
        let t4: Vec<BigInt> = lucas_u_seq(params(0, 1), 19);
        for n in 0..16 {
            assert_eq!(t4[n], t4[n + 4], "period 4 at n={n}");
        }
        assert_eq!(t4[..4].to_vec(), vec![
            BigInt::zero(),
            BigInt::one(),
            BigInt::zero(),
            BigInt::from(-1)
        ]);
        let t5: Vec<BigInt> = lucas_u_seq(params(1, 1), 23);
        for n in 0..18 {
            assert_eq!(t5[n], t5[n + 6], "period 6 at n={n}");
        }
        assert_eq!(t5[..6].to_vec(), vec![
            BigInt::zero(),
            BigInt::one(),
            BigInt::one(),
            BigInt::zero(),
            BigInt::from(-1),
            BigInt::from(-1)
        ]);
    }

    #[test]
    fn quadratic_identity_fixed_params() {
        for (p, q) in [(1, -1), (3, 1), (2, 1), (4, 1), (0, 1), (1, 1)] {
            let pr = params(p, q);
            let d = BigInt::from(pr.discriminant());
            let q_big = BigInt::from(q);
            for n in 0..=100u32 {
                let u = lucas_u(pr, n);
                let v = lucas_v(pr, n);
                let lhs = &v * &v - &d * &u * &u;
                let rhs = BigInt::from(4) * q_big.pow(n);
                assert_eq!(lhs, rhs, "P={p} Q={q} n={n}");
            }
        }
    }

    proptest! {
        #[test]
        fn recurrence_holds_termwise(p in -10i64..=10, q in -10i64..=10, n in 2u32..=200) {
            let pr = params(p, q);
            let expected = BigInt::from(p) * lucas_u(pr, n - 1) - BigInt::from(q) * lucas_u(pr, n - 2);
            prop_assert_eq!(lucas_u(pr, n), expected);
            let expected_v = BigInt::from(p) * lucas_v(pr, n - 1) - BigInt::from(q) * lucas_v(pr, n - 2);
            prop_assert_eq!(lucas_v(pr, n), expected_v);
        }

        #[test]
        fn quadratic_identity(p in -8i64..=8, q in -8i64..=8, n in 0u32..=100) {
            let pr = params(p, q);
            let u = lucas_u(pr, n);
            let v = lucas_v(pr, n);
            let d = BigInt::from(pr.discriminant());
            let lhs = &v * &v - d * &u * &u;
            let rhs = BigInt::from(4) * BigInt::from(q).pow(n);
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn seq_matches_single_terms(p in -6i64..=6, q in -6i64..=6, n in 0u32..=60) {
            let pr = params(p, q);
            let seq = lucas_u_seq(pr, n);
            prop_assert_eq!(seq.len(), n as usize + 1);
            prop_assert_eq!(&seq[n as usize], &lucas_u(pr, n));
        }
    }
}
