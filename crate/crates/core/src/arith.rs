//! Integer arithmetic support: primality, factorization, divisors and
//! perfect-power detection.
//!
//! Factorization strips primes below [`TRIAL_LIMIT`] by trial division, then
//! splits any remaining 64-bit cofactor with Brent's variant of Pollard rho.
//! Composite cofactors wider than 64 bits are reported as unsupported.

use std::sync::OnceLock;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::radix::Natural;

/// Trial division bound.
pub const TRIAL_LIMIT: u32 = 1_000_000;

/// The first twelve primes; as Miller-Rabin witnesses they are deterministic
/// below 3.317e24.
const MR_BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
const MR_EXTRA_BASES: [u64; 8] = [41, 43, 47, 53, 59, 61, 67, 71];

fn small_primes() -> &'static [u32] {
    static PRIMES: OnceLock<Vec<u32>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let n = TRIAL_LIMIT as usize;
        let mut sieve = vec![true; n + 1];
        sieve[0] = false;
        sieve[1] = false;
        let mut i = 2;
        while i * i <= n {
            if sieve[i] {
                (i * i..=n).step_by(i).for_each(|j| sieve[j] = false);
            }
            i += 1;
        }
        (0..=n as u32).filter(|&i| sieve[i as usize]).collect()
    })
}

#[inline]
fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic primality test for 64-bit integers.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &MR_BASES {
        if n % p == 0 {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &MR_BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Miller-Rabin on arbitrary precision.
///
/// Exact below 3.317e24; above that the extra witnesses make it a strong
/// probable-prime test.
pub fn is_probable_prime(n: &BigUint) -> bool {
    if let Some(v) = n.to_u64() {
        return is_prime_u64(v);
    }
    if n.is_even() {
        return false;
    }
    let one = BigUint::one();
    let n_minus_1 = n - &one;
    let s = n_minus_1.trailing_zeros().unwrap_or(0);
    let d = &n_minus_1 >> s as usize;
    'witness: for &a in MR_BASES.iter().chain(MR_EXTRA_BASES.iter()) {
        let mut x = BigUint::from(a).modpow(&d, n);
        if x == one || x == n_minus_1 {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == n_minus_1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Brent's cycle-finding Pollard rho. `n` must be odd and composite.
fn pollard_brent(n: u64) -> u64 {
    const BATCH: u64 = 128;
    for c in 1..n {
        let f = |x: u64| ((mul_mod(x, x, n) as u128 + c as u128) % n as u128) as u64;
        let (mut x, mut y, mut ys) = (2u64, 2u64, 2u64);
        let mut g = 1u64;
        let mut q = 1u64;
        let mut r = 1u64;
        while g == 1 {
            x = y;
            for _ in 0..r {
                y = f(y);
            }
            let mut k = 0;
            while k < r && g == 1 {
                ys = y;
                for _ in 0..BATCH.min(r - k) {
                    y = f(y);
                    q = mul_mod(q, x.abs_diff(y), n);
                }
                g = q.gcd(&n);
                k += BATCH;
            }
            r <<= 1;
        }
        if g == n {
            loop {
                ys = f(ys);
                g = x.abs_diff(ys).gcd(&n);
                if g > 1 {
                    break;
                }
            }
        }
        if g != n {
            return g;
        }
    }
    unreachable!("pollard rho exhausted every increment for {n}")
}

fn split_u64(n: u64, out: &mut Vec<BigUint>) {
    if n == 1 {
        return;
    }
    if is_prime_u64(n) {
        out.push(BigUint::from(n));
        return;
    }
    if n % 2 == 0 {
        out.push(BigUint::from(2u32));
        split_u64(n / 2, out);
        return;
    }
    let d = pollard_brent(n);
    split_u64(d, out);
    split_u64(n / d, out);
}

/// Prime factorization as `(prime, exponent)` pairs in increasing order.
pub fn factorize(n: &Natural) -> Result<Vec<(BigUint, u32)>> {
    let mut rest = n.as_biguint().clone();
    if rest.is_zero() {
        return Err(Error::UndefinedInput("factorization of zero"));
    }
    let table = small_primes();
    let mut primes: Vec<BigUint> = Vec::new();
    let mut idx = 0;
    while rest.to_u64().is_none() && idx < table.len() {
        let pb = BigUint::from(table[idx]);
        loop {
            let (q, r) = rest.div_rem(&pb);
            if !r.is_zero() {
                break;
            }
            primes.push(pb.clone());
            rest = q;
        }
        idx += 1;
    }
    if let Some(mut v) = rest.to_u64() {
        for &p in &table[idx..] {
            let p = p as u64;
            if p * p > v {
                break;
            }
            while v % p == 0 {
                primes.push(BigUint::from(p));
                v /= p;
            }
        }
        split_u64(v, &mut primes);
    } else if is_probable_prime(&rest) {
        primes.push(rest);
    } else {
        return Err(Error::FactorizationUnsupported(n.to_string()));
    }
    primes.sort();
    let mut grouped: Vec<(BigUint, u32)> = Vec::new();
    for p in primes {
        match grouped.last_mut() {
            Some((q, e)) if *q == p => *e += 1,
            _ => grouped.push((p, 1)),
        }
    }
    Ok(grouped)
}

/// Every positive divisor of `n`, ascending.
pub fn divisors(n: &Natural) -> Result<Vec<BigUint>> {
    let mut divs = vec![BigUint::one()];
    for (p, e) in factorize(n)? {
        let mut next = Vec::with_capacity(divs.len() * (e as usize + 1));
        for d in &divs {
            let mut term = d.clone();
            next.push(term.clone());
            for _ in 0..e {
                term *= &p;
                next.push(term.clone());
            }
        }
        divs = next;
    }
    divs.sort();
    Ok(divs)
}

/// Writes `v = y^q` with `q >= 2` maximal, if `v` is a perfect power.
pub fn perfect_power(v: &BigUint) -> Option<(BigUint, u32)> {
    if v <= &BigUint::one() {
        return None;
    }
    let max_q = (v.bits() as u32).max(2);
    let mut found: Option<(BigUint, u32)> = None;
    for q in (2..=max_q).filter(|&q| is_prime_u64(q as u64)) {
        let y = v.nth_root(q);
        if y.pow(q) == *v {
            found = Some((y, q));
            break;
        }
    }
    let (y, q) = found?;
    // A perfect power of a perfect power: fold the exponents.
    match perfect_power(&y) {
        Some((z, e)) => Some((z, e * q)),
        None => Some((y, q)),
    }
}
