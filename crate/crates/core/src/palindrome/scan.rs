//! Base-range scanning, sharded over contiguous chunks.

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use rayon::prelude::*;

use super::{two_digit_reps, PalindromeRecord, ScanReport};
use crate::error::{Error, Result};
use crate::radix::{self, Natural, Representation, MAX_BASE};

/// The target in the narrowest integer type that holds it.
enum Target<'a> {
    Small(u64),
    Wide(u128),
    Big(&'a Natural),
}

impl<'a> Target<'a> {
    fn new(n: &'a Natural) -> Self {
        if let Some(v) = n.to_u64() {
            Target::Small(v)
        } else if let Some(v) = n.to_u128() {
            Target::Wide(v)
        } else {
            Target::Big(n)
        }
    }

    #[inline]
    fn rem(&self, m: u64) -> u64 {
        match self {
            Target::Small(v) => v % m,
            Target::Wide(v) => (v % m as u128) as u64,
            Target::Big(n) => n.rem_u64(m),
        }
    }

    #[inline]
    fn digits(&self, base: u64, out: &mut Vec<u64>) {
        out.clear();
        match *self {
            Target::Small(mut v) => {
                while v > 0 {
                    out.push(v % base);
                    v /= base;
                }
                out.reverse();
            }
            Target::Wide(mut v) => {
                let b = base as u128;
                while v > 0 {
                    out.push((v % b) as u64);
                    v /= b;
                }
                out.reverse();
            }
            Target::Big(n) => radix::digits_into(n, base, out),
        }
    }
}

/// Runs of consecutive bases in which the target has a fixed digit count.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Band {
    digits: usize,
    lo: u64,
    hi: u64,
}

/// Largest base in which `n` has at least `d` digits (`d >= 2`), i.e.
/// `⌊n^(1/(d-1))⌋`, saturated to `u64::MAX`.
fn max_base_with_digits(n: &BigUint, d: usize) -> u64 {
    n.nth_root((d - 1) as u32).to_u64().unwrap_or(u64::MAX)
}

fn bands(n: &Natural, lo: u64, hi: u64) -> Vec<Band> {
    let big = n.as_biguint();
    let mut out = Vec::new();
    // d = 1 covers bases above n
    let mut upper = hi;
    let mut d = 1usize;
    loop {
        let top_next = if n.is_zero() { 0 } else { max_base_with_digits(big, d + 1) };
        // bases in (top_next, upper] have exactly d digits
        let band_lo = top_next.saturating_add(1).max(lo);
        if band_lo <= upper {
            out.push(Band { digits: d, lo: band_lo, hi: upper });
        }
        if top_next < lo {
            break;
        }
        upper = upper.min(top_next);
        d += 1;
    }
    out.reverse();
    out
}

fn scan_chunk(n: &Natural, target: &Target, band: Band, lo: u64, hi: u64) -> Vec<PalindromeRecord> {
    let mut out = Vec::new();
    let mut buf = Vec::with_capacity(band.digits);
    let (lo, hi) = (lo.max(band.lo), hi.min(band.hi));
    if lo > hi {
        return out;
    }
    if band.digits == 1 {
        let v = target.rem(u64::MAX);
        for base in lo..=hi {
            let rep = Representation::from_parts_unchecked(base, vec![v]);
            out.push(PalindromeRecord::new(n.clone(), rep));
        }
        return out;
    }
    let even = band.digits % 2 == 0;
    for base in lo..=hi {
        // leading digit equals the last one, so it cannot be zero
        if target.rem(base) == 0 {
            continue;
        }
        // even length forces b + 1 | n
        if even && target.rem(base + 1) != 0 {
            continue;
        }
        target.digits(base, &mut buf);
        if radix::is_palindrome_digits(&buf) {
            let rep = Representation::from_parts_unchecked(base, buf.clone());
            out.push(PalindromeRecord::new(n.clone(), rep));
        }
    }
    out
}

fn check_range(lo: u64, hi: u64) -> Result<()> {
    if lo < 2 || lo > hi {
        return Err(Error::InvalidRange { lo, hi });
    }
    if hi > MAX_BASE {
        return Err(Error::BaseTooLarge(hi));
    }
    Ok(())
}

/// Tests every base in `[lo, hi]`, keeping palindromes with at least
/// `min_digits` digits. With `jobs > 1` the range is split into contiguous
/// chunks scanned on a dedicated pool; the merged report does not depend on
/// the schedule.
pub fn scan_bases(n: &Natural, lo: u64, hi: u64, min_digits: usize, jobs: usize) -> Result<ScanReport> {
    check_range(lo, hi)?;
    let mut scan_hi = hi;
    if min_digits >= 2 {
        scan_hi = scan_hi.min(max_base_with_digits(n.as_biguint(), min_digits));
    }
    let target = Target::new(n);
    let mut work: Vec<(Band, u64, u64)> = Vec::new();
    if lo <= scan_hi {
        let shards = if jobs > 1 { jobs * 16 } else { 1 };
        for band in bands(n, lo, scan_hi).into_iter().filter(|b| b.digits >= min_digits) {
            let width = band.hi - band.lo + 1;
            let step = width.div_ceil(shards as u64).max(1);
            let mut start = band.lo;
            loop {
                let end = start.saturating_add(step - 1).min(band.hi);
                work.push((band, start, end));
                if end == band.hi {
                    break;
                }
                start = end + 1;
            }
        }
    }

    let chunks: Vec<Vec<PalindromeRecord>> = if jobs > 1 && work.len() > 1 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .map_err(|e| Error::InvalidArgument(format!("thread pool: {e}")))?;
        pool.install(|| {
            work.par_iter()
                .map(|&(band, a, b)| scan_chunk(n, &target, band, a, b))
                .collect()
        })
    } else {
        work.iter()
            .map(|&(band, a, b)| scan_chunk(n, &target, band, a, b))
            .collect()
    };

    Ok(ScanReport {
        target: n.clone(),
        base_range: (lo, hi),
        records: chunks.into_iter().flatten().collect(),
        min_base: None,
        exhaustive: true,
    }
    .finish())
}

/// Single-threaded [`scan_bases`]; `min_digits` defaults to 2.
pub fn enumerate_palindromes(n: &Natural, lo: u64, hi: u64, min_digits: Option<usize>) -> Result<ScanReport> {
    scan_bases(n, lo, hi, min_digits.unwrap_or(2), 1)
}

/// `⌊2^(n/2)⌋`: the largest base in which `2^n` has three or more digits.
pub fn complete_scan_bound(n_exp: u32) -> u64 {
    Natural::pow2(n_exp).isqrt().to_u64().unwrap_or(u64::MAX)
}

/// Every palindromic representation of `n` with at least `min_digits >= 2`
/// digits: a scan of bases up to `⌊√n⌋` plus the two-digit family, which
/// lives above that bound and comes from the divisors of `n`.
pub fn complete_scan(n: &Natural, min_digits: usize, jobs: usize) -> Result<ScanReport> {
    if min_digits < 2 {
        return Err(Error::InvalidArgument(
            "a complete scan needs min_digits >= 2".into(),
        ));
    }
    let root = n.isqrt().to_u64().unwrap_or(u64::MAX);
    let top = n.to_u64().unwrap_or(u64::MAX).clamp(2, MAX_BASE);
    // the two-digit family reaches base n - 1
    let exhaustive = root <= MAX_BASE
        && (min_digits > 2 || n.to_u64().is_some_and(|v| v.saturating_sub(1) <= MAX_BASE));
    let mut records = Vec::new();
    if root >= 2 {
        records = scan_bases(n, 2, root.min(MAX_BASE), min_digits, jobs)?.records;
    }
    if min_digits <= 2 {
        let pairs = two_digit_reps(n)?;
        for (base, c) in pairs {
            let rep = Representation::from_parts_unchecked(base, vec![c, c]);
            records.push(PalindromeRecord::new(n.clone(), rep));
        }
    }
    Ok(ScanReport {
        target: n.clone(),
        base_range: (2, top),
        records,
        min_base: None,
        exhaustive,
    }
    .finish())
}

/// [`complete_scan`] of `2^n_exp`.
pub fn scan_pow2(n_exp: u32, min_digits: usize, jobs: usize) -> Result<ScanReport> {
    complete_scan(&Natural::pow2(n_exp), min_digits, jobs)
}
