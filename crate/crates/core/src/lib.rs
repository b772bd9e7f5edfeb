//! Palindromic radix representations of integers.
//!
//! - [`radix`]: exact base conversion and the digit-tuple model
//! - [`palindrome`]: minimal palindromic base `b(N)`, exhaustive scans and
//!   closed forms for 2- and 3-digit palindromes
//! - [`binomial`]: construction and recognition of `α(1+b)^k` digit rows
//! - [`theorems`]: checks tying scan output to the known results, the
//!   repunit census and the conjecture sweeps for powers of two
//! - [`tables`]: recomputation of the reference tables
//! - [`arith`]: primality, factorization, divisors, perfect powers

pub mod arith;
pub mod binomial;
pub mod error;
pub mod palindrome;
pub mod radix;
pub mod tables;
pub mod theorems;

pub use binomial::BinomialClassification;
pub use error::{Error, Result};
pub use palindrome::{PalindromeRecord, ScanReport};
pub use radix::{Natural, Representation, ScaledRepresentation, MAX_BASE};
