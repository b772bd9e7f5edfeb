//! Exact radix conversion and the digit-tuple data model.
//!
//! A [`Representation`] stores its digits most-significant first, so
//! `(7,14,7)_16` is `digits == [7, 14, 7]`. Values are arbitrary precision
//! ([`Natural`]); digits and bases are machine words.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Largest accepted base, `2^63 - 1`.
pub const MAX_BASE: u64 = i64::MAX as u64;

/// Arbitrary-precision non-negative integer.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Natural(BigUint);

impl Natural {
    pub fn zero() -> Self {
        Natural(BigUint::zero())
    }

    pub fn one() -> Self {
        Natural(BigUint::one())
    }

    /// `2^exp`.
    pub fn pow2(exp: u32) -> Self {
        Natural(BigUint::one() << exp as usize)
    }

    /// `base^exp`.
    pub fn pow(base: u64, exp: u32) -> Self {
        Natural(BigUint::from(base).pow(exp))
    }

    pub fn as_biguint(&self) -> &BigUint {
        &self.0
    }

    pub fn into_biguint(self) -> BigUint {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn to_u64(&self) -> Option<u64> {
        self.0.to_u64()
    }

    pub fn to_u128(&self) -> Option<u128> {
        self.0.to_u128()
    }

    pub fn bits(&self) -> u64 {
        self.0.bits()
    }

    /// Returns `e` when the value is exactly `2^e`.
    pub fn power_of_two_exponent(&self) -> Option<u32> {
        if self.0.is_zero() {
            return None;
        }
        let tz = self.0.trailing_zeros()?;
        (self.0.bits() == tz + 1).then_some(tz as u32)
    }

    /// `⌊√n⌋`.
    pub fn isqrt(&self) -> Natural {
        Natural(self.0.sqrt())
    }

    /// Remainder modulo a machine word.
    pub fn rem_u64(&self, m: u64) -> u64 {
        (&self.0 % m).to_u64().expect("remainder below a u64 modulus")
    }

    pub fn is_multiple_of(&self, m: u64) -> bool {
        m != 0 && self.rem_u64(m) == 0
    }
}

impl std::ops::Add<u64> for Natural {
    type Output = Natural;

    fn add(self, rhs: u64) -> Natural {
        Natural(self.0 + rhs)
    }
}

impl std::ops::Sub<u64> for Natural {
    type Output = Natural;

    /// Panics on underflow.
    fn sub(self, rhs: u64) -> Natural {
        Natural(self.0 - rhs)
    }
}

impl From<u32> for Natural {
    fn from(v: u32) -> Self {
        Natural(BigUint::from(v))
    }
}

impl From<u64> for Natural {
    fn from(v: u64) -> Self {
        Natural(BigUint::from(v))
    }
}

impl From<u128> for Natural {
    fn from(v: u128) -> Self {
        Natural(BigUint::from(v))
    }
}

impl From<BigUint> for Natural {
    fn from(v: BigUint) -> Self {
        Natural(v)
    }
}

impl FromStr for Natural {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
            return Err(Error::InvalidArgument(format!("not a decimal natural: {s:?}")));
        }
        s.parse::<BigUint>()
            .map(Natural)
            .map_err(|e| Error::InvalidArgument(e.to_string()))
    }
}

impl fmt::Display for Natural {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

pub(crate) fn check_base(base: u64) -> Result<()> {
    if base < 2 {
        Err(Error::InvalidBase(base))
    } else if base > MAX_BASE {
        Err(Error::BaseTooLarge(base))
    } else {
        Ok(())
    }
}

/// A base together with its digits, most significant first.
///
/// The leading digit is nonzero, except for the single-digit representation
/// of zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Representation {
    base: u64,
    digits: Vec<u64>,
}

impl Representation {
    pub fn new(base: u64, digits: Vec<u64>) -> Result<Self> {
        check_base(base)?;
        let Some(&lead) = digits.first() else {
            return Err(Error::EmptyDigits);
        };
        if let Some(&digit) = digits.iter().find(|&&d| d >= base) {
            return Err(Error::InvalidDigit { digit, base });
        }
        if lead == 0 && digits.len() > 1 {
            return Err(Error::LeadingZero);
        }
        Ok(Representation { base, digits })
    }

    /// Caller guarantees the invariants.
    pub(crate) fn from_parts_unchecked(base: u64, digits: Vec<u64>) -> Self {
        debug_assert!(Representation::new(base, digits.clone()).is_ok());
        Representation { base, digits }
    }

    pub fn base(&self) -> u64 {
        self.base
    }

    pub fn digits(&self) -> &[u64] {
        &self.digits
    }

    pub fn digit_count(&self) -> usize {
        self.digits.len()
    }

    /// The least significant digit, `c_0`.
    pub fn last_digit(&self) -> u64 {
        *self.digits.last().expect("representations are never empty")
    }

    pub fn value(&self) -> Natural {
        evaluate(self.base, &self.digits)
    }

    pub fn is_palindrome(&self) -> bool {
        is_palindrome_digits(&self.digits)
    }
}

impl fmt::Display for Representation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, d) in self.digits.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{d}")?;
        }
        write!(f, ")_{}", self.base)
    }
}

fn evaluate(base: u64, digits: &[u64]) -> Natural {
    if let Some(v) = evaluate_u128(base, digits) {
        return Natural::from(v);
    }
    let b = BigUint::from(base);
    let mut acc = BigUint::zero();
    for &d in digits {
        acc *= &b;
        acc += d;
    }
    Natural(acc)
}

fn evaluate_u128(base: u64, digits: &[u64]) -> Option<u128> {
    digits.iter().try_fold(0u128, |acc, &d| {
        acc.checked_mul(base as u128)?.checked_add(d as u128)
    })
}

/// Digits of `n` in `base`, most significant first.
pub fn to_digits(n: &Natural, base: u64) -> Result<Representation> {
    check_base(base)?;
    let mut digits = Vec::new();
    digits_into(n, base, &mut digits);
    Ok(Representation { base, digits })
}

/// Fills `out` with the digits of `n` (most significant first). `base` must
/// already be validated.
pub(crate) fn digits_into(n: &Natural, base: u64, out: &mut Vec<u64>) {
    out.clear();
    if let Some(mut v) = n.to_u64() {
        if v == 0 {
            out.push(0);
        }
        while v > 0 {
            out.push(v % base);
            v /= base;
        }
    } else if let Some(mut v) = n.to_u128() {
        let b = base as u128;
        while v > 0 {
            out.push((v % b) as u64);
            v /= b;
        }
    } else {
        let b = BigUint::from(base);
        let mut v = n.0.clone();
        while !v.is_zero() {
            let (q, r) = v.div_rem(&b);
            out.push(r.to_u64().expect("digit below base"));
            v = q;
        }
    }
    out.reverse();
}

/// `Σ c_i b^i` for a digit list given most significant first. Leading zeros
/// are allowed here.
pub fn from_digits(base: u64, digits: &[u64]) -> Result<Natural> {
    check_base(base)?;
    if let Some(&digit) = digits.iter().find(|&&d| d >= base) {
        return Err(Error::InvalidDigit { digit, base });
    }
    Ok(evaluate(base, digits))
}

pub fn is_palindrome(rep: &Representation) -> bool {
    rep.is_palindrome()
}

pub fn is_palindrome_digits(digits: &[u64]) -> bool {
    digits.iter().eq(digits.iter().rev())
}

/// Strips symmetric zero padding from a palindromic digit list.
///
/// Returns the number `z` of zeros removed from each end and the inner core,
/// with `value(input) = base^z * value(core)`.
pub fn reduce_leading_zeros(base: u64, digits: &[u64]) -> Result<(usize, Representation)> {
    check_base(base)?;
    if digits.is_empty() {
        return Err(Error::EmptyDigits);
    }
    if let Some(&digit) = digits.iter().find(|&&d| d >= base) {
        return Err(Error::InvalidDigit { digit, base });
    }
    if !is_palindrome_digits(digits) {
        return Err(Error::NotPalindromic);
    }
    let z = digits.iter().take_while(|&&d| d == 0).count();
    if z == digits.len() {
        return Err(Error::UndefinedInput("all-zero digit list"));
    }
    let core = digits[z..digits.len() - z].to_vec();
    Ok((z, Representation { base, digits: core }))
}

/// A representation whose digits are all `multiplier` times the digits of
/// `core`, in the same base.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ScaledRepresentation {
    multiplier: u64,
    core: Representation,
}

impl ScaledRepresentation {
    /// Present only when `multiplier * c < base` for every core digit.
    pub fn new(multiplier: u64, core: Representation) -> Option<Self> {
        if multiplier == 0 {
            return None;
        }
        let base = core.base;
        core.digits
            .iter()
            .all(|&d| d.checked_mul(multiplier).is_some_and(|p| p < base))
            .then_some(ScaledRepresentation { multiplier, core })
    }

    /// Factors the gcd of the digits out of `rep`.
    pub fn factor_common(rep: &Representation) -> Self {
        let g = rep.digits.iter().fold(0u64, |g, &d| g.gcd(&d));
        if g <= 1 {
            return ScaledRepresentation {
                multiplier: 1,
                core: rep.clone(),
            };
        }
        ScaledRepresentation {
            multiplier: g,
            core: Representation {
                base: rep.base,
                digits: rep.digits.iter().map(|d| d / g).collect(),
            },
        }
    }

    pub fn multiplier(&self) -> u64 {
        self.multiplier
    }

    pub fn core(&self) -> &Representation {
        &self.core
    }

    pub fn expand(&self) -> Representation {
        Representation {
            base: self.core.base,
            digits: self.core.digits.iter().map(|d| d * self.multiplier).collect(),
        }
    }
}

impl fmt::Display for ScaledRepresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.multiplier > 1 {
            write!(f, "{}*", self.multiplier)?;
        }
        self.core.fmt(f)
    }
}

/// The digit-wise `alpha` multiple of `rep`, if no digit overflows the base.
pub fn try_scale(rep: &Representation, alpha: u64) -> Option<Representation> {
    ScaledRepresentation::new(alpha, rep.clone()).map(|s| s.expand())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rep(base: u64, digits: &[u64]) -> Representation {
        Representation::new(base, digits.to_vec()).unwrap()
    }

    #[test]
    fn to_digits_examples() {
        let n = Natural::from(2023u64);
        assert_eq!(to_digits(&n, 16).unwrap(), rep(16, &[7, 14, 7]));
        assert_eq!(to_digits(&n, 23).unwrap(), rep(23, &[3, 18, 22]));
        assert_eq!(to_digits(&n, 10).unwrap(), rep(10, &[2, 0, 2, 3]));
        assert_eq!(to_digits(&n, 7).unwrap(), rep(7, &[5, 6, 2, 0]));
        assert_eq!(to_digits(&Natural::zero(), 7).unwrap(), rep(7, &[0]));
        assert_eq!(to_digits(&Natural::from(5u64), 9).unwrap(), rep(9, &[5]));
    }

    #[test]
    fn base_validation() {
        let n = Natural::from(10u64);
        assert_eq!(to_digits(&n, 1), Err(Error::InvalidBase(1)));
        assert_eq!(to_digits(&n, 0), Err(Error::InvalidBase(0)));
        assert_eq!(to_digits(&n, MAX_BASE + 1), Err(Error::BaseTooLarge(MAX_BASE + 1)));
        assert!(to_digits(&n, MAX_BASE).is_ok());
    }

    #[test]
    fn from_digits_examples() {
        assert_eq!(from_digits(16, &[7, 14, 7]).unwrap(), Natural::from(2023u64));
        assert_eq!(from_digits(19, &[11, 6, 11]).unwrap(), Natural::from(4096u64));
        for b in [2, 3, 10, 1 << 40] {
            assert_eq!(from_digits(b, &[1]).unwrap(), Natural::one());
        }
        assert_eq!(
            from_digits(3, &[1, 3]),
            Err(Error::InvalidDigit { digit: 3, base: 3 })
        );
    }

    #[test]
    fn wide_values_are_exact() {
        let n = Natural::pow2(128) + 12345u64;
        let r = to_digits(&n, 1_000_003).unwrap();
        assert_eq!(r.value(), n);
        let n = Natural::pow2(100);
        assert_eq!(to_digits(&n, 2).unwrap().digit_count(), 101);
    }

    #[test]
    fn representation_invariants() {
        assert_eq!(Representation::new(3, vec![0, 1]), Err(Error::LeadingZero));
        assert_eq!(Representation::new(3, vec![]), Err(Error::EmptyDigits));
        assert_eq!(
            Representation::new(3, vec![1, 5]),
            Err(Error::InvalidDigit { digit: 5, base: 3 })
        );
        assert!(Representation::new(3, vec![0]).is_ok());
    }

    #[test]
    fn palindrome_examples() {
        assert!(rep(3, &[1, 2, 1]).is_palindrome());
        assert!(!rep(3, &[1, 0, 1, 2]).is_palindrome());
        assert!(rep(9, &[5]).is_palindrome());
        assert!(rep(127, &[1, 9, 36, 84, 126, 126, 84, 36, 9, 1]).is_palindrome());
    }

    #[test]
    fn leading_zero_reduction() {
        let (z, core) = reduce_leading_zeros(3, &[0, 1, 2, 1, 0]).unwrap();
        assert_eq!((z, core.clone()), (1, rep(3, &[1, 2, 1])));
        // 48 = 3 * 16: the stripped count is the exponent of the base factor.
        assert_eq!(from_digits(3, &[0, 1, 2, 1, 0]).unwrap(), Natural::from(48u64));
        assert_eq!(core.value(), Natural::from(16u64));

        let (z, core) = reduce_leading_zeros(3, &[1, 2, 1]).unwrap();
        assert_eq!((z, core), (0, rep(3, &[1, 2, 1])));

        let (z, core) = reduce_leading_zeros(7, &[0, 0, 5, 0, 0]).unwrap();
        assert_eq!((z, core.clone()), (2, rep(7, &[5])));
        assert_eq!(from_digits(7, &[0, 0, 5, 0, 0]).unwrap(), Natural::from(245u64));

        assert_eq!(reduce_leading_zeros(3, &[0, 1, 2, 1]), Err(Error::NotPalindromic));
        assert!(reduce_leading_zeros(3, &[0, 0]).is_err());
    }

    #[test]
    fn scaling() {
        let base = rep(16, &[1, 2, 1]);
        assert_eq!(try_scale(&base, 7), Some(rep(16, &[7, 14, 7])));
        assert_eq!(try_scale(&base, 1), Some(base.clone()));
        assert_eq!(try_scale(&rep(3, &[1, 2, 1]), 2), None);
        assert_eq!(try_scale(&base, 0), None);
    }

    #[test]
    fn common_factor_display() {
        let r = rep(3, &[2, 0, 0, 2, 2, 2]);
        let s = ScaledRepresentation::factor_common(&r);
        assert_eq!(s.to_string(), "2*(1,0,0,1,1,1)_3");
        assert_eq!(s.expand(), r);
        assert_eq!(ScaledRepresentation::factor_common(&rep(3, &[2])).to_string(), "2*(1)_3");
        assert_eq!(ScaledRepresentation::factor_common(&rep(24, &[3, 19, 3])).to_string(), "(3,19,3)_24");
    }

    #[test]
    fn natural_helpers() {
        assert_eq!(Natural::pow2(12).power_of_two_exponent(), Some(12));
        assert_eq!(Natural::from(12u64).power_of_two_exponent(), None);
        assert_eq!(Natural::zero().power_of_two_exponent(), None);
        assert_eq!("2023".parse::<Natural>().unwrap(), Natural::from(2023u64));
        assert!("-1".parse::<Natural>().is_err());
        assert!("".parse::<Natural>().is_err());
        assert_eq!(Natural::pow2(13).isqrt(), Natural::from(90u64));
    }
}
