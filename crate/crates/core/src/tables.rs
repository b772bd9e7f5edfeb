//! Recomputation of the reference tables.
//!
//! Every row is derived from a search; nothing here is stored data. Rows
//! expose their CSV fields through [`TableRow`] so front ends and tests emit
//! identical text.

use crate::arith::is_prime_u64;
use crate::binomial::{classify_binomial, lemma_l2_3_check, mersenne_exponent, L23Verdict};
use crate::error::Result;
use crate::palindrome::{min_pal_base, three_digit_reps};
use crate::radix::{to_digits, Natural, Representation, ScaledRepresentation};

pub trait TableRow {
    const HEADER: &'static [&'static str];
    fn fields(&self) -> Vec<String>;
}

/// `b(N)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Table1Row {
    pub n: u64,
    pub b: u64,
    pub rep: Representation,
}

impl Table1Row {
    /// `b(N) = N - 1`.
    pub fn is_maximal(&self) -> bool {
        self.n >= 3 && self.b == self.n - 1
    }
}

impl TableRow for Table1Row {
    const HEADER: &'static [&'static str] = &["N", "b"];
    fn fields(&self) -> Vec<String> {
        vec![self.n.to_string(), self.b.to_string()]
    }
}

pub fn table1(n_max: u64) -> Result<Vec<Table1Row>> {
    (1..=n_max)
        .map(|n| {
            let (b, rep) = min_pal_base(&Natural::from(n))?;
            Ok(Table1Row { n, b, rep })
        })
        .collect()
}

/// A non-binomial `(c,d,c)_b` representation of `2^n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Table2Row {
    pub n: u32,
    pub b: u64,
    pub c: u64,
    pub d: u64,
}

impl TableRow for Table2Row {
    const HEADER: &'static [&'static str] = &["n", "b", "c", "d"];
    fn fields(&self) -> Vec<String> {
        vec![self.n.to_string(), self.b.to_string(), self.c.to_string(), self.d.to_string()]
    }
}

/// All 3-digit palindromes of `2^n`, `n <= n_max`, that are not of binomial
/// form, by `(n, b)`.
pub fn table2(n_max: u32) -> Vec<Table2Row> {
    let mut rows = Vec::new();
    for n in 1..=n_max.min(126) {
        let v = Natural::pow2(n);
        let root = v.isqrt().to_u64().unwrap_or(u64::MAX);
        // b^3 > 2^n
        let start = (2..).find(|&b: &u64| (b as u128).pow(3) > 1u128 << n).unwrap_or(2);
        for b in start..=root {
            for (c, d) in three_digit_reps(&v, b) {
                if d != 2 * c {
                    rows.push(Table2Row { n, b, c, d });
                }
            }
        }
    }
    rows
}

/// The minimal-base representation of `2^n` with its binomial parameters
/// `2^n = 2^r (1 + b)^k`, `b = 2^x - 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Table3Row {
    pub n: u32,
    pub k: usize,
    pub x: u32,
    pub r: u32,
    pub b: u64,
    pub representation: ScaledRepresentation,
    pub l23: Option<L23Verdict>,
}

impl TableRow for Table3Row {
    const HEADER: &'static [&'static str] = &["n", "k", "x", "r", "b", "representation"];
    fn fields(&self) -> Vec<String> {
        vec![
            self.n.to_string(),
            self.k.to_string(),
            self.x.to_string(),
            self.r.to_string(),
            self.b.to_string(),
            self.representation.to_string(),
        ]
    }
}

/// Exponents whose minimal-base representation does not fit the table.
pub type Table3Anomalies = Vec<(u32, Representation)>;

/// Rows for `1 <= n <= n_max`. A minimal base that is not `2^x - 1` or a
/// representation that is not binomial would be a counterexample to the
/// powers-of-two conjectures; such rows are skipped and returned separately.
pub fn table3(n_max: u32) -> Result<(Vec<Table3Row>, Table3Anomalies)> {
    let mut rows = Vec::new();
    let mut odd = Vec::new();
    for n in 1..=n_max {
        let (b, rep) = min_pal_base(&Natural::pow2(n))?;
        match (mersenne_exponent(b), classify_binomial(&rep)) {
            (Some(x), Some(cls)) => {
                let k = cls.degree;
                let r = n - k as u32 * x;
                let l23 = (k >= 1).then(|| lemma_l2_3_check(n, k as u32, x)).transpose()?;
                rows.push(Table3Row {
                    n,
                    k,
                    x,
                    r,
                    b,
                    representation: ScaledRepresentation::factor_common(&rep),
                    l23,
                });
            }
            _ => odd.push((n, rep)),
        }
    }
    Ok((rows, odd))
}

/// The minimal-base representation of `p^n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Table4Row {
    pub p: u64,
    pub n: u32,
    pub b: u64,
    pub representation: ScaledRepresentation,
    pub binomial: bool,
}

impl TableRow for Table4Row {
    const HEADER: &'static [&'static str] = &["p", "n", "b", "representation", "binomial"];
    fn fields(&self) -> Vec<String> {
        vec![
            self.p.to_string(),
            self.n.to_string(),
            self.b.to_string(),
            self.representation.to_string(),
            self.binomial.to_string(),
        ]
    }
}

/// Odd primes `p <= p_max` and exponents with `p^n < limit`.
pub fn table4(p_max: u64, limit: u64) -> Result<Vec<Table4Row>> {
    let mut rows = Vec::new();
    for p in (3..=p_max).filter(|&p| is_prime_u64(p)) {
        let mut n = 1u32;
        let mut v = p;
        while v < limit {
            let (b, rep) = min_pal_base(&Natural::from(v))?;
            rows.push(Table4Row {
                p,
                n,
                b,
                binomial: classify_binomial(&rep).is_some(),
                representation: ScaledRepresentation::factor_common(&rep),
            });
            n += 1;
            match v.checked_mul(p) {
                Some(next) => v = next,
                None => break,
            }
        }
    }
    Ok(rows)
}

/// `2^n` written in base 3.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Table5Row {
    pub n: u32,
    pub representation: ScaledRepresentation,
    pub palindromic: bool,
}

impl TableRow for Table5Row {
    const HEADER: &'static [&'static str] = &["n", "representation", "palindromic"];
    fn fields(&self) -> Vec<String> {
        vec![self.n.to_string(), self.representation.to_string(), self.palindromic.to_string()]
    }
}

pub fn table5(n_max: u32) -> Vec<Table5Row> {
    (1..=n_max)
        .map(|n| {
            let rep = to_digits(&Natural::pow2(n), 3).expect("base 3 is valid");
            Table5Row {
                n,
                palindromic: rep.is_palindrome(),
                representation: ScaledRepresentation::factor_common(&rep),
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_rows() {
        let t1 = table1(12).unwrap();
        let maximal: Vec<u64> = t1.iter().filter(|r| r.is_maximal()).map(|r| r.n).collect();
        assert_eq!(maximal, vec![3, 4, 6, 11]);
        assert_eq!(t1[0].fields(), vec!["1", "2"]);

        let t2 = table2(13);
        assert_eq!(t2, vec![Table2Row { n: 12, b: 19, c: 11, d: 6 }, Table2Row { n: 13, b: 27, c: 11, d: 6 }]);

        let (t3, odd) = table3(6).unwrap();
        assert!(odd.is_empty());
        assert_eq!(t3[0].fields(), vec!["1", "0", "2", "1", "3", "2*(1)_3"]);
        assert_eq!(t3[3].representation.to_string(), "(1,2,1)_3");
        assert_eq!(t3[5].fields(), vec!["6", "2", "3", "0", "7", "(1,2,1)_7"]);

        let t4 = table4(3, 3u64.pow(8)).unwrap();
        assert_eq!(t4.len(), 7);
        assert_eq!(t4[6].representation.to_string(), "(3,19,3)_24");
        assert!(!t4[6].binomial);

        let t5 = table5(6);
        assert!(t5.iter().all(|r| r.palindromic == (r.n <= 4)));
        assert_eq!(t5[4].representation.to_string(), "(1,0,1,2)_3");
    }
}
