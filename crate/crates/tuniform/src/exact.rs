//! Exact rational values and comparisons against square roots.
//!
//! Every verdict in this crate is an integer comparison: ratios are kept as
//! arbitrary-precision fractions, and a comparison against `√r` is decided by
//! sign analysis followed by cross-multiplied squaring. Decimal strings are
//! produced with integer square roots of scaled numerators, so the printed
//! digits are exact truncations, never float roundings.

use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};
use std::cmp::Ordering;
use std::fmt;

/// Fraction of two arbitrary-precision integers, kept in lowest terms with a
/// positive denominator.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExactRatio(BigRational);

impl ExactRatio {
    /// Panics if `denom` is zero.
    pub fn new(numer: BigInt, denom: BigInt) -> Self {
        assert!(!denom.is_zero(), "zero denominator");
        ExactRatio(BigRational::new(numer, denom))
    }

    pub fn from_integer(value: BigInt) -> Self {
        ExactRatio(BigRational::from_integer(value))
    }

    pub fn from_u64(numer: u64, denom: u64) -> Self {
        Self::new(BigInt::from(numer), BigInt::from(denom))
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn as_rational(&self) -> &BigRational {
        &self.0
    }

    pub fn into_rational(self) -> BigRational {
        self.0
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    /// Compares `self` with `√r` for a rational `r ≥ 0`.
    ///
    /// Negative values are smaller than any square root; otherwise the
    /// comparison squares `self` and cross-multiplies, so no rounding is
    /// involved.
    pub fn cmp_sqrt(&self, radicand: &BigRational) -> Ordering {
        assert!(
            !radicand.is_negative(),
            "cannot compare against the square root of a negative rational"
        );
        if self.0.is_negative() {
            return Ordering::Less;
        }
        let square = &self.0 * &self.0;
        // a/b vs c/d  <=>  a*d vs c*b  (all denominators positive)
        let lhs = square.numer() * radicand.denom();
        let rhs = radicand.numer() * square.denom();
        lhs.cmp(&rhs)
    }

    /// Decimal expansion truncated toward zero to `digits` fractional digits.
    pub fn decimal_trunc(&self, digits: usize) -> String {
        let sign = if self.0.is_negative() { "-" } else { "" };
        let numer = self.0.numer().abs();
        let denom = self.0.denom().clone();
        let scale = BigInt::from(10u32).pow(digits as u32);
        let scaled = (&numer * &scale) / &denom;
        let (int_part, frac_part) = scaled.div_rem(&scale);
        if digits == 0 {
            return format!("{sign}{int_part}");
        }
        format!("{sign}{int_part}.{:0>width$}", frac_part.to_string(), width = digits)
    }

    /// Number of fractional digits of a terminating expansion, or `None` if
    /// the expansion repeats. Zero means the value is an integer.
    pub fn terminating_digits(&self) -> Option<usize> {
        let (twos, fives, rest) = split_denominator(self.0.denom());
        if rest.is_one() {
            Some(twos.max(fives) as usize)
        } else {
            None
        }
    }

    /// For expansions that repeat a single digit from the first fractional
    /// place (denominator 3 or 9 after reduction), returns the integer part
    /// and that digit. Used for the `w.(d)` display form.
    pub fn pure_single_period(&self) -> Option<(BigInt, u8)> {
        let (twos, fives, rest) = split_denominator(self.0.denom());
        if twos != 0 || fives != 0 || rest.is_one() {
            return None;
        }
        // period 1 <=> 10 ≡ 1 (mod rest) <=> rest divides 9
        if !(BigInt::from(9) % &rest).is_zero() {
            return None;
        }
        let numer = self.0.numer().abs();
        let denom = self.0.denom();
        let int_part = &numer / denom;
        let digit = ((&numer * 10) / denom) % 10;
        let mut int_part = int_part;
        if self.0.is_negative() {
            int_part = -int_part;
        }
        Some((int_part, digit.to_u8().expect("single digit")))
    }
}

impl fmt::Display for ExactRatio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl Serialize for ExactRatio {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

fn split_denominator(denom: &BigInt) -> (u32, u32, BigInt) {
    let mut rest = denom.clone();
    let two = BigInt::from(2);
    let five = BigInt::from(5);
    let mut twos = 0;
    let mut fives = 0;
    while (&rest % &two).is_zero() {
        rest /= &two;
        twos += 1;
    }
    while (&rest % &five).is_zero() {
        rest /= &five;
        fives += 1;
    }
    (twos, fives, rest)
}

/// The exact value `√radicand` for a rational `radicand ≥ 0`.
#[derive(Clone, Debug)]
pub struct SqrtVal {
    radicand: BigRational,
}

impl SqrtVal {
    pub fn new(radicand: BigRational) -> Self {
        assert!(!radicand.is_negative(), "negative radicand");
        SqrtVal { radicand }
    }

    pub fn of_integer(n: i64) -> Self {
        Self::new(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn radicand(&self) -> &BigRational {
        &self.radicand
    }

    /// `√radicand` compared with an exact ratio.
    pub fn cmp_ratio(&self, x: &ExactRatio) -> Ordering {
        x.cmp_sqrt(&self.radicand).reverse()
    }

    /// Largest integer `s` with `s ≤ √radicand · 10^digits`. The value then
    /// lies in `[s·10^-digits, (s+1)·10^-digits)`.
    fn floor_scaled(&self, digits: usize) -> BigInt {
        let numer = self.radicand.numer();
        let denom = self.radicand.denom();
        let scale = BigInt::from(10u32).pow(2 * digits as u32);
        // √(n/d)·10^k = √(n·d·10^2k)/d, and ⌊√N/d⌋ = ⌊⌊√N⌋/d⌋.
        (numer * denom * scale).sqrt() / denom
    }

    pub fn lower_bound(&self, digits: usize) -> ExactRatio {
        ExactRatio::new(self.floor_scaled(digits), BigInt::from(10u32).pow(digits as u32))
    }

    pub fn upper_bound(&self, digits: usize) -> ExactRatio {
        ExactRatio::new(
            self.floor_scaled(digits) + 1,
            BigInt::from(10u32).pow(digits as u32),
        )
    }

    /// Decimal expansion truncated to `digits` fractional digits.
    pub fn decimal_trunc(&self, digits: usize) -> String {
        let scaled = self.floor_scaled(digits);
        let scale = BigInt::from(10u32).pow(digits as u32);
        let (int_part, frac_part) = scaled.div_rem(&scale);
        if digits == 0 {
            return int_part.to_string();
        }
        format!("{int_part}.{:0>width$}", frac_part.to_string(), width = digits)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ratio(n: i64, d: i64) -> ExactRatio {
        ExactRatio::new(BigInt::from(n), BigInt::from(d))
    }

    fn rational(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn lowest_terms_positive_denominator() {
        let r = ratio(12, 8);
        assert_eq!(r.numer(), &BigInt::from(3));
        assert_eq!(r.denom(), &BigInt::from(2));
        let r = ratio(4, -4);
        assert_eq!(r.numer(), &BigInt::from(-1));
        assert_eq!(r.denom(), &BigInt::from(1));
        assert_eq!(r.to_string(), "-1");
    }

    #[test]
    fn sqrt_comparison_by_squaring() {
        assert_eq!(ratio(3, 2).cmp_sqrt(&rational(2, 1)), Ordering::Greater);
        assert_eq!(ratio(7, 5).cmp_sqrt(&rational(2, 1)), Ordering::Less);
        assert_eq!(ratio(2, 1).cmp_sqrt(&rational(4, 1)), Ordering::Equal);
        assert_eq!(ratio(-1, 1).cmp_sqrt(&rational(0, 1)), Ordering::Less);
        assert_eq!(ratio(0, 1).cmp_sqrt(&rational(0, 1)), Ordering::Equal);
    }

    #[test]
    fn truncated_decimals() {
        assert_eq!(ratio(15, 7).decimal_trunc(2), "2.14");
        assert_eq!(ratio(105, 47).decimal_trunc(3), "2.234");
        assert_eq!(ratio(-29, 19).decimal_trunc(3), "-1.526");
        assert_eq!(ratio(11, 5).decimal_trunc(1), "2.2");
        assert_eq!(ratio(1, 97).decimal_trunc(4), "0.0103");
        assert_eq!(ratio(5, 1).decimal_trunc(0), "5");
    }

    #[test]
    fn expansion_classification() {
        assert_eq!(ratio(11, 5).terminating_digits(), Some(1));
        assert_eq!(ratio(3, 8).terminating_digits(), Some(3));
        assert_eq!(ratio(7, 1).terminating_digits(), Some(0));
        assert_eq!(ratio(5, 3).terminating_digits(), None);

        assert_eq!(ratio(5, 3).pure_single_period(), Some((BigInt::from(1), 6)));
        assert_eq!(ratio(20, 9).pure_single_period(), Some((BigInt::from(2), 2)));
        assert_eq!(ratio(4, 3).pure_single_period(), Some((BigInt::from(1), 3)));
        // period 2: not a single-digit repetend
        assert_eq!(ratio(19, 11).pure_single_period(), None);
        // prefix before the repetend disqualifies as well
        assert_eq!(ratio(84, 55).pure_single_period(), None);
        assert_eq!(ratio(3, 2).pure_single_period(), None);
    }

    #[test]
    fn sqrt_decimal_bounds_bracket_the_root() {
        for (n, d, digits) in [(2i64, 1i64, 50usize), (3, 1, 50), (5, 1, 50), (7, 3, 40)] {
            let root = SqrtVal::new(rational(n, d));
            let lo = root.lower_bound(digits);
            let hi = root.upper_bound(digits);
            assert_eq!(lo.cmp_sqrt(root.radicand()), Ordering::Less);
            assert_ne!(hi.cmp_sqrt(root.radicand()), Ordering::Less);
        }
    }

    #[test]
    fn sqrt_decimal_known_prefixes() {
        assert_eq!(SqrtVal::of_integer(2).decimal_trunc(10), "1.4142135623");
        assert_eq!(SqrtVal::of_integer(3).decimal_trunc(10), "1.7320508075");
        assert_eq!(SqrtVal::of_integer(5).decimal_trunc(10), "2.2360679774");
        assert_eq!(SqrtVal::new(rational(7, 3)).decimal_trunc(10), "1.5275252316");
        assert_eq!(SqrtVal::of_integer(4).decimal_trunc(3), "2.000");
    }

    #[test]
    fn sqrt_cmp_ratio() {
        let root5 = SqrtVal::of_integer(5);
        assert_eq!(root5.cmp_ratio(&ratio(105, 47)), Ordering::Greater);
        assert_eq!(root5.cmp_ratio(&ratio(9, 4)), Ordering::Less);
    }
}
