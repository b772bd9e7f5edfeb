//! Palindromic representation search.
//!
//! The minimal palindromic base `b(N)`, bounded and complete enumeration of
//! palindromic representations, and the closed forms for 2- and 3-digit
//! palindromes (including the `(1,c,1)` family of `2^n`).

mod scan;

pub use scan::{complete_scan, complete_scan_bound, enumerate_palindromes, scan_bases, scan_pow2};

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::arith::divisors;
use crate::binomial::{classify_binomial, mersenne_exponent, BinomialClassification};
use crate::error::{Error, Result};
use crate::radix::{self, Natural, Representation, MAX_BASE};

/// A palindromic representation of a value, with its derived annotations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PalindromeRecord {
    pub value: Natural,
    pub rep: Representation,
    pub digit_count: usize,
    /// `x` when the base is `2^x - 1`.
    pub mersenne_exponent: Option<u32>,
    pub binomial: Option<BinomialClassification>,
}

impl PalindromeRecord {
    /// Panics if `rep` is not a palindrome or an even-length palindrome's
    /// `base + 1` does not divide the value.
    pub fn new(value: Natural, rep: Representation) -> Self {
        assert!(rep.is_palindrome(), "{rep} is not palindromic");
        debug_assert_eq!(rep.value(), value);
        let digit_count = rep.digit_count();
        if digit_count % 2 == 0 {
            // b + 1 | N; the base is at most 2^63 - 1 so b + 1 fits.
            assert!(
                value.is_multiple_of(rep.base() + 1),
                "even-length palindrome {rep} with base + 1 not dividing {value}"
            );
        }
        PalindromeRecord {
            mersenne_exponent: mersenne_exponent(rep.base()),
            binomial: classify_binomial(&rep),
            value,
            rep,
            digit_count,
        }
    }

    pub fn base(&self) -> u64 {
        self.rep.base()
    }

    pub fn is_binomial(&self) -> bool {
        self.binomial.is_some()
    }
}

/// Outcome of a search over a base range.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScanReport {
    pub target: Natural,
    /// Inclusive.
    pub base_range: (u64, u64),
    /// Sorted by `(base, digit_count)`.
    pub records: Vec<PalindromeRecord>,
    pub min_base: Option<u64>,
    /// Whether every base in `base_range` was tested.
    pub exhaustive: bool,
}

impl ScanReport {
    /// Records that are neither binomial nor 3-digit.
    pub fn claim_violations(&self) -> impl Iterator<Item = &PalindromeRecord> {
        self.records
            .iter()
            .filter(|r| r.binomial.is_none() && r.digit_count != 3)
    }

    pub(crate) fn finish(mut self) -> Self {
        self.records.sort_by_key(|r| (r.base(), r.digit_count));
        self.records.dedup_by_key(|r| r.base());
        self.min_base = self.records.first().map(|r| r.base());
        self
    }
}

/// The least base in which `n` is palindromic, with that representation.
///
/// Single digits count, so `b(1) = 2` and `b(2) = 3`.
pub fn min_pal_base(n: &Natural) -> Result<(u64, Representation)> {
    min_pal_base_capped(n, MAX_BASE)
}

/// [`min_pal_base`] that refuses to test bases above `cap` one by one.
///
/// Bases above `⌊√n⌋` are not scanned: there `n` has at most two digits and
/// the two-digit palindromes come from the divisors of `n`.
pub fn min_pal_base_capped(n: &Natural, cap: u64) -> Result<(u64, Representation)> {
    if n.is_zero() {
        return Err(Error::UndefinedInput("b(0)"));
    }
    let root = n.isqrt().to_u64().unwrap_or(u64::MAX);
    let top = root.min(cap).min(MAX_BASE);
    let mut buf = Vec::new();
    for base in 2..=top {
        radix::digits_into(n, base, &mut buf);
        if radix::is_palindrome_digits(&buf) {
            return Ok((base, Representation::from_parts_unchecked(base, buf)));
        }
    }
    if root > top {
        return Err(Error::BaseCapExceeded(top));
    }
    if let Some(&(base, c)) = two_digit_reps(n)?.first() {
        if base > cap {
            return Err(Error::BaseCapExceeded(cap));
        }
        return Ok((base, Representation::from_parts_unchecked(base, vec![c, c])));
    }
    // Only n = 1 and n = 2 get here.
    let v = n.to_u64().expect("small value");
    let base = (v + 1).max(2);
    Ok((base, Representation::from_parts_unchecked(base, vec![v])))
}

/// The 3-digit palindrome `(c,d,c)_base` of `n`, via the closed form
/// `c = n mod b`, `d = ⌊n/b⌋ - cb`. Returns zero or one `(c, d)` pair.
pub fn three_digit_reps(n: &Natural, base: u64) -> Vec<(u64, u64)> {
    if !(2..=MAX_BASE).contains(&base) {
        return Vec::new();
    }
    let n = n.as_biguint();
    let b = BigUint::from(base);
    let b2 = &b * &b;
    if *n < &b2 + 1u32 || *n >= &b2 * &b {
        return Vec::new();
    }
    let (q, c) = n.div_rem(&b);
    if c.is_zero() {
        return Vec::new();
    }
    let cb = &c * &b;
    if q < cb {
        return Vec::new();
    }
    let d = q - cb;
    if d >= b {
        return Vec::new();
    }
    vec![(c.to_u64().unwrap(), d.to_u64().unwrap())]
}

/// A representation `2^n = (1, middle, 1)_base`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct OneCOne {
    pub base: u64,
    pub middle: u64,
    /// `n` even and `base = 2^(n/2) - 1`, i.e. `(1,2,1)`.
    pub binomial: bool,
}

/// All `(1,c,1)_b` representations of `2^n`, from the factorizations
/// `2^n - 1 = kb` with `b <= k <= 2b - 1`, sorted by base.
pub fn one_c_one_reps(n_exp: u32) -> Result<Vec<OneCOne>> {
    if n_exp < 2 {
        return Err(Error::InvalidArgument(format!("exponent {n_exp} below 2")));
    }
    let m = Natural::pow2(n_exp) - 1;
    let mut out = Vec::new();
    for b in divisors(&m)? {
        let k = m.as_biguint() / &b;
        if k < b {
            break;
        }
        if k >= &b * 2u32 {
            continue;
        }
        let (Some(base), Some(k)) = (b.to_u64(), k.to_u64()) else {
            continue;
        };
        if !(2..=MAX_BASE).contains(&base) {
            continue;
        }
        let binomial = n_exp % 2 == 0 && n_exp / 2 < 64 && base == (1u64 << (n_exp / 2)) - 1;
        out.push(OneCOne { base, middle: k - base, binomial });
    }
    Ok(out)
}

/// All `(c,c)_b` representations of `n`, as `(base, c)` sorted by base:
/// `c(b + 1) = n` with `1 <= c < b`.
pub fn two_digit_reps(n: &Natural) -> Result<Vec<(u64, u64)>> {
    if n < &Natural::from(3u64) {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    for d in divisors(n)?.into_iter().rev() {
        let c = n.as_biguint() / &d;
        // d = b + 1, c < b  <=>  c + 2 <= d
        if &c + 2u32 > d {
            break;
        }
        let (Some(b1), Some(c)) = (d.to_u64(), c.to_u64()) else {
            continue;
        };
        let base = b1 - 1;
        if base <= MAX_BASE {
            out.push((base, c));
        }
    }
    out.reverse();
    Ok(out)
}
