//! Exact rational weights on a ground set, with decidable genericity.
//!
//! A weight w = (w_1, .., w_n) evaluates on a subset s as the sum of its
//! entries over the elements of s. It is generic when no proper nonempty
//! subset evaluates to zero; that is decided by full enumeration of the
//! 2^n - 2 proper nonempty subsets, exactly.

use crate::subset::Subset;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::fmt;
use std::str::FromStr;

/// An exact rational weight vector on {1..n}.
#[derive(Clone, PartialEq, Eq)]
pub struct Weight {
    entries: Vec<BigRational>,
}

/// Parse error for rational strings like "4" or "-3/2".
#[derive(Debug, thiserror::Error)]
#[error("invalid rational literal: {0}")]
pub struct RationalParseError(pub String);

pub fn parse_rational(s: &str) -> Result<BigRational, RationalParseError> {
    let s = s.trim();
    let bad = || RationalParseError(s.to_string());
    if let Some((num, den)) = s.split_once('/') {
        let n = BigInt::from_str(num.trim()).map_err(|_| bad())?;
        let d = BigInt::from_str(den.trim()).map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        Ok(BigRational::new(n, d))
    } else {
        let n = BigInt::from_str(s).map_err(|_| bad())?;
        Ok(BigRational::from_integer(n))
    }
}

/// Renders a rational without spaces, as "p" or "p/q".
pub fn show_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl Weight {
    pub fn new(entries: Vec<BigRational>) -> Self {
        Weight { entries }
    }

    pub fn from_integers(v: &[i64]) -> Self {
        Weight {
            entries: v
                .iter()
                .map(|&x| BigRational::from_integer(BigInt::from(x)))
                .collect(),
        }
    }

    pub fn parse_list(parts: &[String]) -> Result<Self, RationalParseError> {
        let entries = parts
            .iter()
            .map(|p| parse_rational(p))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Weight { entries })
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[BigRational] {
        &self.entries
    }

    pub fn entry(&self, e: u32) -> &BigRational {
        &self.entries[(e - 1) as usize]
    }

    /// Evaluation w . s = sum of entries over the elements of s.
    pub fn dot(&self, s: &Subset) -> BigRational {
        debug_assert_eq!(s.ground_size() as usize, self.entries.len());
        let mut acc = BigRational::zero();
        for e in s.elems() {
            acc += self.entry(e);
        }
        acc
    }

    /// w . {1..n}, the total weight.
    pub fn total(&self) -> BigRational {
        let mut acc = BigRational::zero();
        for e in &self.entries {
            acc += e;
        }
        acc
    }

    /// Integer vector equal to the weight after clearing denominators.
    fn scaled_integers(&self) -> Vec<BigInt> {
        let mut lcm = BigInt::one();
        for e in &self.entries {
            lcm = lcm.lcm(e.denom());
        }
        self.entries
            .iter()
            .map(|e| e.numer() * (&lcm / e.denom()))
            .collect()
    }

    /// Returns a proper nonempty subset with zero evaluation, if one exists.
    /// `None` means the weight is generic.
    pub fn nongeneric_witness(&self) -> Option<Subset> {
        let n = self.entries.len() as u32;
        if n == 0 {
            return None;
        }
        let scaled = self.scaled_integers();
        // Fast path in i128 when every partial sum provably fits.
        let as_i128: Option<Vec<i128>> = scaled
            .iter()
            .map(|b| i128::try_from(b.clone()).ok())
            .collect();
        if let Some(v) = as_i128 {
            let mag = v
                .iter()
                .try_fold(0i128, |a, b| a.checked_add(b.unsigned_abs().try_into().ok()?));
            if mag.is_some() {
                return gray_zero_subset(&v, n);
            }
        }
        gray_zero_subset(&scaled, n)
    }

    pub fn is_generic(&self) -> bool {
        self.nongeneric_witness().is_none()
    }
}

/// Gray-code walk over all subsets, maintaining the running sum with one
/// addition or subtraction per step. Returns a proper nonempty zero subset.
fn gray_zero_subset<T>(v: &[T], n: u32) -> Option<Subset>
where
    T: Clone + Zero + std::ops::AddAssign + std::ops::SubAssign,
{
    let full: u32 = if n == 0 { 0 } else { (1u32 << n) - 1 };
    let mut sum = T::zero();
    let mut gray: u32 = 0;
    for k in 1u64..(1u64 << n) {
        let bit = k.trailing_zeros();
        let mask = 1u32 << bit;
        if gray & mask == 0 {
            sum += v[bit as usize].clone();
        } else {
            sum -= v[bit as usize].clone();
        }
        gray ^= mask;
        if gray != 0 && gray != full && sum.is_zero() {
            return Some(Subset::new(gray, n));
        }
    }
    None
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, e) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", show_rational(e))?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dot_and_total() {
        let w = Weight::from_integers(&[1, 1, -3, -3, -3, 1, 1]);
        assert_eq!(w.total(), BigRational::from_integer(BigInt::from(-5)));
        let s = Subset::from_elems(&[1, 2], 7);
        assert_eq!(w.dot(&s), BigRational::from_integer(BigInt::from(2)));
    }

    #[test]
    fn genericity_witness() {
        // 1 + 1 - 3 + 1 = 0 on {1,2,3,6}: not generic.
        let w = Weight::from_integers(&[1, 1, -3, -3, -3, 1, 1]);
        let witness = w.nongeneric_witness().expect("zero subset exists");
        assert!(w.dot(&witness).is_zero());
        assert!(!witness.is_empty() && !witness.is_full());
        assert!(!w.is_generic());
    }

    #[test]
    fn generic_examples() {
        assert!(Weight::from_integers(&[5, -1, -3]).is_generic());
        // 2-1-1 = 0 only on the full set, which genericity does not exclude.
        assert!(Weight::from_integers(&[2, -1, -1]).is_generic());
        // 1-1 = 0 on the proper subset {1,2}.
        assert!(!Weight::from_integers(&[1, -1, 5]).is_generic());
        // 4+4+4-3-3-3-3 has no proper zero subset (only 3*4 = 4*3 uses all).
        assert!(Weight::from_integers(&[4, 4, 4, -3, -3, -3, -3]).is_generic());
    }

    #[test]
    fn rational_parsing() {
        assert_eq!(
            parse_rational("-3/2").unwrap(),
            BigRational::new(BigInt::from(-3), BigInt::from(2))
        );
        assert_eq!(show_rational(&parse_rational("4").unwrap()), "4");
        assert!(parse_rational("1/0").is_err());
        let w = Weight::parse_list(&["1/2".into(), "-1/3".into()]).unwrap();
        assert!(w.is_generic());
        assert_eq!(
            w.total(),
            BigRational::new(BigInt::from(1), BigInt::from(6))
        );
    }
}
