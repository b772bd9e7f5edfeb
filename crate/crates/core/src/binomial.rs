//! Binomial-form representations: digits `α·C(k,k), …, α·C(k,0)` in a base
//! `b`, whose value is `α(b+1)^k`.
//!
//! All coefficients are exact; nothing here touches floating point.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};

use crate::error::{Error, Result};
use crate::radix::{Representation, MAX_BASE};

/// Verdict that a representation is `alpha` times the degree-`degree`
/// binomial row in its base.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BinomialClassification {
    pub alpha: u64,
    pub degree: usize,
    /// `x` when the base is `2^x - 1`.
    pub mersenne_exponent: Option<u32>,
    /// `r = n - kx` when the represented value is `2^n` and the base is
    /// `2^x - 1`.
    pub remainder: Option<u32>,
}

/// `C(k, i)` by the multiplicative formula.
pub fn binomial_coefficient(k: u64, i: u64) -> BigUint {
    if i > k {
        return BigUint::ZERO;
    }
    let i = i.min(k - i);
    let mut acc = BigUint::one();
    for j in 0..i {
        acc *= k - j;
        acc /= j + 1;
    }
    acc
}

/// The central coefficient `C(k, ⌈k/2⌉)`, the largest digit of a binomial row.
pub fn central_coefficient(k: u64) -> BigUint {
    binomial_coefficient(k, k.div_ceil(2))
}

/// Returns `x` when `base = 2^x - 1`.
pub fn mersenne_exponent(base: u64) -> Option<u32> {
    let next = base.checked_add(1)?;
    next.is_power_of_two().then(|| next.trailing_zeros())
}

fn passes_gate(alpha: &BigUint, k: u64, base: u64) -> bool {
    alpha * central_coefficient(k) < BigUint::from(base)
}

/// The `(k+1)`-digit binomial form `α(C(k,k), …, C(k,0))_base`, present iff
/// `α·C(k,⌈k/2⌉) < base`.
pub fn construct_binomial(alpha: u64, k: usize, base: u64) -> Option<Representation> {
    if alpha == 0 || !(2..=MAX_BASE).contains(&base) {
        return None;
    }
    if !passes_gate(&BigUint::from(alpha), k as u64, base) {
        return None;
    }
    let k = k as u64;
    let digits = (0..=k)
        .rev()
        .map(|i| {
            (binomial_coefficient(k, i) * alpha)
                .to_u64()
                .expect("gated digits fit below the base")
        })
        .collect();
    Some(Representation::from_parts_unchecked(base, digits))
}

/// Recognizes binomial form. The multiplier is forced to be the last digit.
///
/// For a power-of-two value the base/multiplier structure is checked, not
/// assumed: a degree of one or more forces `base + 1 = 2^x` and
/// `alpha = 2^(n - kx)`.
pub fn classify_binomial(rep: &Representation) -> Option<BinomialClassification> {
    let alpha = rep.last_digit();
    if alpha == 0 {
        return None;
    }
    let k = rep.digit_count() - 1;
    let digits = rep.digits();
    let mut coeff: u128 = 1;
    for i in 0..=k {
        let expected = coeff.checked_mul(alpha as u128)?;
        if digits[k - i] as u128 != expected {
            return None;
        }
        if i < k {
            // coeff <= u64::MAX here, so the product fits.
            coeff = coeff * (k - i) as u128 / (i + 1) as u128;
        }
    }

    let mersenne = mersenne_exponent(rep.base());
    let mut remainder = None;
    if let Some(n) = rep.value().power_of_two_exponent() {
        if k >= 1 {
            let x = mersenne.unwrap_or_else(|| {
                panic!("binomial power of two in base {} not of the form 2^x - 1", rep.base())
            });
            let r = n as i64 - k as i64 * x as i64;
            assert!(
                r >= 0 && alpha == 1u64 << r,
                "multiplier {alpha} of 2^{n} is not 2^(n - kx)"
            );
            remainder = Some(r as u32);
        } else if mersenne.is_some() {
            remainder = Some(n);
        }
    }
    Some(BinomialClassification {
        alpha,
        degree: k,
        mersenne_exponent: mersenne,
        remainder,
    })
}

/// One way of writing `2^n = 2^r (b+1)^k` with `b = 2^x - 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pow2Candidate {
    pub k: usize,
    pub x: u32,
    pub r: u32,
    pub base: u64,
    pub rep: Representation,
}

/// Every `(k, x, r)` with `n = xk + r`, `r >= 0`, `x >= 2` and
/// `2^r·C(k,⌈k/2⌉) < 2^x - 1`, sorted by base then degree. Bases are limited
/// to `x <= 63`.
pub fn pow2_binomial_candidates(n_exp: u32) -> Vec<Pow2Candidate> {
    let mut out = Vec::new();
    for x in 2..=63u32 {
        let base = (1u64 << x) - 1;
        for k in 0..=(n_exp / x) {
            let r = n_exp - k * x;
            // 2^r < b already fails once r >= x
            if r >= x {
                continue;
            }
            if let Some(rep) = construct_binomial(1u64 << r, k as usize, base) {
                out.push(Pow2Candidate {
                    k: k as usize,
                    x,
                    r,
                    base,
                    rep,
                });
            }
        }
    }
    out.sort_by_key(|c| (c.base, c.k));
    out
}

/// The 3-digit binomial forms `2^i(1,2,1)` in base `2^((n-i)/2) - 1`, as
/// `(i, base)` pairs: all `i` with `0 <= 3i < n - 2` and `i ≡ n (mod 2)`.
pub fn three_digit_binomial_family(n_exp: u32) -> Vec<(u32, u64)> {
    let n = n_exp as i64;
    (0..)
        .take_while(|&i: &i64| 3 * i < n - 2)
        .filter(|i| (n - i) % 2 == 0)
        .filter(|i| (n - i) / 2 <= 63)
        .map(|i| (i as u32, (1u64 << ((n - i) / 2)) - 1))
        .collect()
}

/// Outcome of checking the numerical hypotheses that force binomial form in a
/// Mersenne base `2^x - 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum L23Verdict {
    /// `k <= x - r`: the representation is `2^r` times the binomial row.
    AppliesCase1,
    /// `3 <= k <= x - r + 1` with `x >= 3`: same conclusion.
    AppliesCase2,
    /// `n <= k(x - 1)`: no `(k+1)`-digit palindrome of `2^n` exists in
    /// base `2^x - 1`.
    BoundViolated,
    /// Neither case applies (or `r < 0`); nothing is concluded.
    Silent,
}

pub fn lemma_l2_3_check(n_exp: u32, k: u32, x: u32) -> Result<L23Verdict> {
    if x < 2 || k < 1 {
        return Err(Error::InvalidArgument(format!(
            "need x >= 2 and k >= 1, got k = {k}, x = {x}"
        )));
    }
    let (n, k, x) = (n_exp as i64, k as i64, x as i64);
    if n <= k * (x - 1) {
        return Ok(L23Verdict::BoundViolated);
    }
    let r = n - k * x;
    if r < 0 {
        return Ok(L23Verdict::Silent);
    }
    Ok(if k <= x - r {
        L23Verdict::AppliesCase1
    } else if 3 <= k && k <= x - r + 1 && x >= 3 {
        L23Verdict::AppliesCase2
    } else {
        L23Verdict::Silent
    })
}

/// A small Mersenne base hosting a binomial form of `2^n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SmallBinomialBase {
    /// The base is `2^y - 1`.
    pub y: u32,
    pub k: u32,
    pub r: u32,
}

impl SmallBinomialBase {
    /// Whether `2^r·C(k,⌈k/2⌉) < 2^y - 1`.
    pub fn passes_gate(&self) -> bool {
        let lhs = (BigUint::one() << self.r as usize) * central_coefficient(self.k as u64);
        let base = (BigUint::one() << self.y as usize) - 1u32;
        lhs < base
    }
}

fn ceil_sqrt(v: u64) -> u64 {
    let s = num_integer::Roots::sqrt(&v);
    if s * s < v {
        s + 1
    } else {
        s
    }
}

/// Constructive witness that `2^n` has a binomial form in a base at most
/// `2^(⌈√(2n)⌉+1) - 1`.
pub fn small_binomial_base(n_exp: u32) -> Result<SmallBinomialBase> {
    if n_exp < 2 {
        return Err(Error::InvalidArgument(format!("exponent {n_exp} below 2")));
    }
    let x = ceil_sqrt(2 * n_exp as u64) as u32;
    let k = n_exp / x;
    let r = n_exp - k * x;
    Ok(if r + k <= x {
        SmallBinomialBase { y: x, k, r }
    } else {
        SmallBinomialBase { y: x + 1, k, r: r - k }
    })
}
