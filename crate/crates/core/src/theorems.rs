//! Checks that tie search output back to the known results: Brown's
//! characterization of `b(N) = N - 1`, the Mersenne-base law for prime
//! powers, the trivial `z^n ± 1` forms, the Nagell-Ljunggren repunit census
//! and the conjecture sweeps over powers of two.
//!
//! Sweeps are evidence in a finite range. `Verdict::Holds` means no
//! counterexample was found, nothing more.

use std::fmt;

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use rayon::prelude::*;

use crate::arith::{factorize, is_prime_u64, perfect_power};
use crate::binomial::{classify_binomial, mersenne_exponent};
use crate::error::{Error, Result};
use crate::palindrome::{min_pal_base, min_pal_base_capped, scan_bases};
use crate::radix::{to_digits, Natural, Representation, MAX_BASE};

/// A palindrome of `n` in a base below `n - 1`, for composite `n > 6`:
/// `(a,a)_(b-1)` from `n = ab` with `a < b - 1`, or `(1,2,1)_(a-1)` for a
/// prime square `a^2`. The square case degenerates at `9`, where
/// `(1,2,1)_2` is not a valid representation; `(1,0,0,1)_2` is used instead.
pub fn brown_witness(n: &Natural) -> Option<Representation> {
    let v = n.to_u64()?;
    if v <= 6 {
        return None;
    }
    let factors = factorize(n).ok()?;
    let (p, e) = factors.first()?;
    let a = p.to_u64()?;
    if factors.len() == 1 && *e == 1 {
        return None;
    }
    let b = v / a;
    if a + 1 < b {
        return Representation::new(b - 1, vec![a, a]).ok();
    }
    // b = a: v is the square of a prime
    match a {
        _ if b != a => None,
        3 => Representation::new(2, vec![1, 0, 0, 1]).ok(),
        _ => Representation::new(a - 1, vec![1, 2, 1]).ok(),
    }
}

/// Result of sweeping `1 <= N <= n_max` for Brown's theorem.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BrownSweep {
    pub checked: u64,
    /// The `N` with `b(N) = N - 1`.
    pub maximal: Vec<u64>,
    /// `N` where `b(N) = N - 1` but `N` is neither prime nor 3, 4, 6.
    pub theorem_failures: Vec<u64>,
    /// Composite `N > 6` without a valid witness below base `N - 1`.
    pub witness_failures: Vec<u64>,
}

pub fn brown_sweep(n_max: u64) -> Result<BrownSweep> {
    let mut out = BrownSweep::default();
    for v in 1..=n_max {
        let n = Natural::from(v);
        let (b, _) = min_pal_base(&n)?;
        out.checked += 1;
        if v >= 3 && b == v - 1 {
            out.maximal.push(v);
            if !(matches!(v, 3 | 4 | 6) || is_prime_u64(v)) {
                out.theorem_failures.push(v);
            }
        }
        if v > 6 && !is_prime_u64(v) {
            let ok = brown_witness(&n)
                .is_some_and(|w| w.is_palindrome() && w.base() < v - 1 && w.value() == n);
            if !ok {
                out.witness_failures.push(v);
            }
        }
    }
    Ok(out)
}

/// Scans bases `2..=scan_bound` for even-length palindromes of `p^n` and
/// reports whether every one sits in a base `p^x - 1`.
pub fn check_mersenne_base_law(p: u64, n_exp: u32, scan_bound: u64) -> Result<bool> {
    if !is_prime_u64(p) {
        return Err(Error::NotPrime(p));
    }
    if n_exp < 1 {
        return Err(Error::InvalidArgument("exponent must be at least 1".into()));
    }
    let n = Natural::pow(p, n_exp);
    let report = scan_bases(&n, 2, scan_bound.clamp(2, MAX_BASE), 2, 1)?;
    Ok(report
        .records
        .iter()
        .filter(|r| r.digit_count % 2 == 0)
        .all(|r| is_power_of(r.base() + 1, p)))
}

fn is_power_of(mut v: u64, p: u64) -> bool {
    while v > 1 && v % p == 0 {
        v /= p;
    }
    v == 1
}

/// The three forms `z^n`, `z^n + 1`, `z^n - 1` written in base `z`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EasyForms {
    /// `(1,0,…,0)_z`, `n + 1` digits, not palindromic.
    pub power: Representation,
    /// `(1,0,…,0,1)_z`, `n + 1` digits.
    pub power_plus_one: Representation,
    /// `(z-1,…,z-1)_z`, `n` digits; for `z = 2` this is the repunit.
    pub power_minus_one: Representation,
}

pub fn easy_forms(z: u64, n_exp: u32) -> Result<EasyForms> {
    if !(2..=MAX_BASE).contains(&z) {
        return Err(Error::InvalidBase(z));
    }
    if n_exp < 1 {
        return Err(Error::InvalidArgument("exponent must be at least 1".into()));
    }
    let len = n_exp as usize;
    let mut power = vec![0; len + 1];
    power[0] = 1;
    let mut plus = power.clone();
    plus[len] = 1;
    Ok(EasyForms {
        power: Representation::new(z, power)?,
        power_plus_one: Representation::new(z, plus)?,
        power_minus_one: Representation::new(z, vec![z - 1; len])?,
    })
}

/// `(x^n - 1)/(x - 1)`, i.e. `(1,1,…,1)_x` with `n` ones.
pub fn repunit(x: u64, n: u32) -> Natural {
    let x = BigUint::from(x);
    let mut acc = BigUint::ZERO;
    for _ in 0..n {
        acc = acc * &x + 1u32;
    }
    Natural::from(acc)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepunitEntry {
    pub x: u64,
    pub n: u32,
    pub value: Natural,
    /// `(y, q)` with `value = y^q`, `q >= 2` maximal.
    pub perfect_power: Option<(BigUint, u32)>,
}

/// Every repunit `(1,…,1)_x` for `2 <= x <= x_max`, `3 <= n <= n_max`, tagged
/// with its perfect-power decomposition when it has one.
pub fn repunit_palindromes(x_max: u64, n_max: u32) -> Result<Vec<RepunitEntry>> {
    if x_max < 2 || n_max < 3 {
        return Err(Error::InvalidArgument(format!(
            "need x_max >= 2 and n_max >= 3, got {x_max}, {n_max}"
        )));
    }
    let grid: Vec<(u64, u32)> = (2..=x_max).flat_map(|x| (3..=n_max).map(move |n| (x, n))).collect();
    Ok(grid
        .into_par_iter()
        .map(|(x, n)| {
            let value = repunit(x, n);
            let perfect_power = perfect_power(value.as_biguint());
            RepunitEntry { x, n, value, perfect_power }
        })
        .collect())
}

/// The repunits that are perfect powers.
pub fn nagell_ljunggren_solutions(x_max: u64, n_max: u32) -> Result<Vec<RepunitEntry>> {
    Ok(repunit_palindromes(x_max, n_max)?
        .into_iter()
        .filter(|e| e.perfect_power.is_some())
        .collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ConjectureId {
    A,
    B,
    C,
    D,
    E,
}

impl ConjectureId {
    pub const ALL: [ConjectureId; 5] =
        [ConjectureId::A, ConjectureId::B, ConjectureId::C, ConjectureId::D, ConjectureId::E];

    pub fn statement(self) -> &'static str {
        match self {
            ConjectureId::A => "b(2^n) = 2^x - 1 for some x",
            ConjectureId::B => "the minimal-base representation of 2^n has binomial form",
            ConjectureId::C => "b(2^(a^2)) = 2^a - 1",
            ConjectureId::D => "each base b is the minimal base of only finitely many 2^n",
            ConjectureId::E => "b(2^n) = 3 if and only if n is 1, 2, 3 or 4",
        }
    }
}

impl fmt::Display for ConjectureId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self {
            ConjectureId::A => 'a',
            ConjectureId::B => 'b',
            ConjectureId::C => 'c',
            ConjectureId::D => 'd',
            ConjectureId::E => 'e',
        };
        write!(f, "{c}")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    /// No counterexample in the tested range.
    Holds,
    Counterexample,
    /// Part of the range could not be covered.
    Inconclusive,
    /// Observations only; the statement cannot be decided by a finite sweep.
    Census,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Holds => "holds in range",
            Verdict::Counterexample => "counterexample",
            Verdict::Inconclusive => "inconclusive",
            Verdict::Census => "census only",
        })
    }
}

/// A representation of `2^n` offered as evidence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub n: u32,
    pub rep: Representation,
    pub violates: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjectureReport {
    pub id: ConjectureId,
    pub range_tested: String,
    pub verdict: Verdict,
    pub witnesses: Vec<Witness>,
    /// Conjecture (d) only: for each base, the exponents `n` with
    /// `b(2^n) = base`.
    pub census: Vec<(u64, Vec<u32>)>,
    /// Exponents whose minimal base could not be determined under the cap.
    pub uncovered: Vec<u32>,
}

impl ConjectureReport {
    fn new(id: ConjectureId, range_tested: String, witnesses: Vec<Witness>, uncovered: Vec<u32>) -> Self {
        let verdict = if witnesses.iter().any(|w| w.violates) {
            Verdict::Counterexample
        } else if !uncovered.is_empty() {
            Verdict::Inconclusive
        } else {
            Verdict::Holds
        };
        ConjectureReport { id, range_tested, verdict, witnesses, census: Vec::new(), uncovered }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SweepOptions {
    pub jobs: usize,
    /// Largest base the minimal-base search may test.
    pub base_cap: u64,
}

impl Default for SweepOptions {
    fn default() -> Self {
        SweepOptions { jobs: 1, base_cap: MAX_BASE }
    }
}

/// `b(2^n)` for `1 <= n <= n_max`; `None` where the cap was hit.
fn pow2_min_bases(n_max: u32, opts: &SweepOptions) -> Result<Vec<Option<Representation>>> {
    let one = |n: u32| match min_pal_base_capped(&Natural::pow2(n), opts.base_cap) {
        Ok((_, rep)) => Ok(Some(rep)),
        Err(Error::BaseCapExceeded(_)) => Ok(None),
        Err(e) => Err(e),
    };
    if opts.jobs > 1 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(opts.jobs)
            .build()
            .map_err(|e| Error::InvalidArgument(format!("thread pool: {e}")))?;
        pool.install(|| (1..=n_max).into_par_iter().map(one).collect())
    } else {
        (1..=n_max).map(one).collect()
    }
}

pub fn check_conjectures(n_max: u32, extra_base_budget: u64) -> Result<Vec<ConjectureReport>> {
    check_conjectures_with(n_max, extra_base_budget, &SweepOptions::default())
}

/// Sweeps conjectures (a)–(e) over `1 <= n <= n_max`. Conjecture (d) is
/// reported as a census over bases up to `extra_base_budget`.
pub fn check_conjectures_with(
    n_max: u32,
    extra_base_budget: u64,
    opts: &SweepOptions,
) -> Result<Vec<ConjectureReport>> {
    if n_max < 4 {
        return Err(Error::InvalidArgument(format!("n_max must be at least 4, got {n_max}")));
    }
    let mins = pow2_min_bases(n_max, opts)?;
    let by_exp = |n: u32| mins[(n - 1) as usize].as_ref();
    let uncovered: Vec<u32> = (1..=n_max).filter(|&n| by_exp(n).is_none()).collect();
    let range = format!("1 <= n <= {n_max}");
    let mut reports = Vec::with_capacity(5);

    let a: Vec<Witness> = (1..=n_max)
        .filter_map(|n| by_exp(n).map(|rep| (n, rep)))
        .map(|(n, rep)| Witness { n, rep: rep.clone(), violates: mersenne_exponent(rep.base()).is_none() })
        .collect();
    let b: Vec<Witness> = a
        .iter()
        .map(|w| Witness { violates: classify_binomial(&w.rep).is_none(), ..w.clone() })
        .collect();
    reports.push(ConjectureReport::new(ConjectureId::A, range.clone(), a, uncovered.clone()));
    reports.push(ConjectureReport::new(ConjectureId::B, range.clone(), b, uncovered.clone()));

    let roots: Vec<u32> = (2..).take_while(|a| a * a <= n_max).collect();
    let c_uncovered: Vec<u32> = roots.iter().map(|a| a * a).filter(|n| by_exp(*n).is_none()).collect();
    let c: Vec<Witness> = roots
        .iter()
        .filter_map(|&a| by_exp(a * a).map(|rep| (a, rep)))
        .map(|(a, rep)| Witness {
            n: a * a,
            rep: rep.clone(),
            violates: a >= 64 || rep.base() != (1u64 << a) - 1,
        })
        .collect();
    let c_range = format!("2 <= a <= {}", roots.last().copied().unwrap_or(1));
    reports.push(ConjectureReport::new(ConjectureId::C, c_range, c, c_uncovered));

    let mut d = ConjectureReport::new(
        ConjectureId::D,
        format!("{range}, bases 2..={extra_base_budget}"),
        Vec::new(),
        uncovered.clone(),
    );
    let mut census: Vec<(u64, Vec<u32>)> = Vec::new();
    for n in 1..=n_max {
        let Some(rep) = by_exp(n) else { continue };
        if rep.base() > extra_base_budget {
            continue;
        }
        match census.iter_mut().find(|(b, _)| *b == rep.base()) {
            Some((_, ns)) => ns.push(n),
            None => census.push((rep.base(), vec![n])),
        }
    }
    census.sort();
    d.census = census;
    d.verdict = Verdict::Census;
    reports.push(d);

    let e: Vec<Witness> = (1..=n_max)
        .map(|n| {
            let rep = to_digits(&Natural::pow2(n), 3).expect("valid base");
            let expected = n <= 4;
            let min_is_3 = by_exp(n).map(|r| r.base() == 3);
            let violates = rep.is_palindrome() != expected || min_is_3.is_some_and(|m| m != expected);
            Witness { n, rep, violates }
        })
        .filter(|w| w.violates || w.n <= 4)
        .collect();
    reports.push(ConjectureReport::new(ConjectureId::E, range, e, Vec::new()));
    Ok(reports)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn nat(v: u64) -> Natural {
        Natural::from(v)
    }

    #[test]
    fn brown_examples() {
        assert_eq!(brown_witness(&nat(15)), Some(Representation::new(4, vec![3, 3]).unwrap()));
        assert_eq!(brown_witness(&nat(49)), Some(Representation::new(6, vec![1, 2, 1]).unwrap()));
        assert_eq!(brown_witness(&nat(11)), None);
        assert_eq!(min_pal_base(&nat(11)).unwrap().0, 10);
        for v in 1..=6 {
            assert_eq!(brown_witness(&nat(v)), None);
        }
        assert_eq!(brown_witness(&nat(9)), Some(Representation::new(2, vec![1, 0, 0, 1]).unwrap()));
        assert_eq!(brown_witness(&nat(25)), Some(Representation::new(4, vec![1, 2, 1]).unwrap()));
        assert_eq!(brown_witness(&nat(8)), Some(Representation::new(3, vec![2, 2]).unwrap()));
        assert_eq!(brown_witness(&nat(3)), None);
    }

    #[test]
    fn brown_small_sweep() {
        let s = brown_sweep(100).unwrap();
        assert_eq!(s.maximal, vec![3, 4, 6, 11, 19, 47, 53, 79]);
        assert!(s.theorem_failures.is_empty());
        assert!(s.witness_failures.is_empty());
    }

    #[test]
    fn mersenne_law_examples() {
        assert!(check_mersenne_base_law(3, 6, 1000).unwrap());
        assert!(check_mersenne_base_law(5, 3, 200).unwrap());
        assert!(check_mersenne_base_law(2, 4, 16).unwrap());
        assert_eq!(check_mersenne_base_law(4, 3, 10), Err(Error::NotPrime(4)));
        let r = scan_bases(&Natural::pow(3, 6), 2, 1000, 2, 1).unwrap();
        assert!(r.records.iter().any(|p| p.base() == 8 && p.rep.digits() == [1, 3, 3, 1]));
    }

    #[test]
    fn easy_form_examples() {
        let f = easy_forms(2, 5).unwrap();
        assert_eq!(f.power_plus_one.value(), nat(33));
        assert_eq!(f.power_plus_one.digits(), &[1, 0, 0, 0, 0, 1]);
        assert_eq!(f.power_minus_one.value(), nat(31));
        assert_eq!(f.power_minus_one.digits(), &[1, 1, 1, 1, 1]);
        let f = easy_forms(3, 2).unwrap();
        assert_eq!(f.power_plus_one.value(), nat(10));
        assert!(f.power_plus_one.is_palindrome());
        assert_eq!(min_pal_base(&nat(10)).unwrap().0, 3);
        assert_eq!(repunit(18, 3), nat(343));
        for z in 2..12 {
            for n in 1..8 {
                let f = easy_forms(z, n).unwrap();
                assert_eq!(f.power.value(), Natural::pow(z, n));
                assert!(!f.power.is_palindrome());
                assert!(f.power_plus_one.is_palindrome());
                assert!(f.power_minus_one.is_palindrome());
                assert_eq!(f.power_minus_one.value(), Natural::pow(z, n) - 1);
                if z == 2 {
                    assert_eq!(min_pal_base(&(Natural::pow2(n) + 1)).unwrap().0, 2);
                    assert_eq!(min_pal_base(&(Natural::pow2(n) - 1)).unwrap().0, 2);
                }
            }
        }
        assert!(easy_forms(1, 3).is_err());
    }

    #[test]
    fn repunit_examples() {
        assert_eq!(repunit(3, 5), nat(121));
        assert_eq!(repunit(7, 4), nat(400));
        assert_eq!(repunit(2, 5), nat(31));
        let sols = nagell_ljunggren_solutions(20, 6).unwrap();
        let found: Vec<(u64, u32)> = sols.iter().map(|e| (e.x, e.n)).collect();
        assert_eq!(found, vec![(3, 5), (7, 4), (18, 3)]);
        assert!(repunit_palindromes(1, 5).is_err());
    }

    #[test]
    fn conjectures_small() {
        let reports = check_conjectures(4, 100).unwrap();
        assert_eq!(reports.len(), 5);
        assert!(reports.iter().all(|r| r.verdict == Verdict::Holds || r.id == ConjectureId::D));
        let d = &reports[3];
        assert_eq!(d.verdict, Verdict::Census);
        assert_eq!(d.census, vec![(3, vec![1, 2, 3, 4])]);
        assert!(check_conjectures(3, 10).is_err());
    }

    #[test]
    fn capped_sweep_is_inconclusive() {
        let opts = SweepOptions { jobs: 1, base_cap: 10 };
        let reports = check_conjectures_with(12, 100, &opts).unwrap();
        assert_eq!(reports[0].verdict, Verdict::Inconclusive);
        assert!(reports[0].uncovered.contains(&8));
        assert_eq!(reports[4].verdict, Verdict::Holds);
    }
}
