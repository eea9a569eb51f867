//! Half-integer degrees and graded dimension tables.

use std::fmt;
use std::ops::Add;
use std::str::FromStr;

use crate::error::{Error, Result};

/// An exact element of `½ℤ`, stored as twice its value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct HalfInt(i64);

impl HalfInt {
    pub const ZERO: HalfInt = HalfInt(0);

    pub fn from_twice(twice: i64) -> Self {
        HalfInt(twice)
    }

    pub fn from_int(n: i64) -> Self {
        HalfInt(2 * n)
    }

    pub fn twice(self) -> i64 {
        self.0
    }

    pub fn is_integer(self) -> bool {
        self.0 % 2 == 0
    }
}

impl Add for HalfInt {
    type Output = HalfInt;
    fn add(self, rhs: HalfInt) -> HalfInt {
        HalfInt(self.0 + rhs.0)
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

impl FromStr for HalfInt {
    type Err = Error;

    /// Accepts `"3"`, `"3/2"`, `"1.5"` and `"1.0"`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Domain(format!("'{s}' is not a half-integer"));
        let s = s.trim();
        if let Some((num, den)) = s.split_once('/') {
            let num: i64 = num.trim().parse().map_err(|_| bad())?;
            let den: i64 = den.trim().parse().map_err(|_| bad())?;
            return match den {
                1 => Ok(HalfInt(2 * num)),
                2 => Ok(HalfInt(num)),
                _ => Err(bad()),
            };
        }
        if let Some((int, frac)) = s.split_once('.') {
            let neg = int.starts_with('-');
            let int: i64 = if int == "-" || int.is_empty() {
                0
            } else {
                int.parse().map_err(|_| bad())?
            };
            let frac = frac.trim_end_matches('0');
            let half = match frac {
                "" => 0,
                "5" => 1,
                _ => return Err(bad()),
            };
            return Ok(HalfInt(2 * int + if neg { -half } else { half }));
        }
        s.parse::<i64>().map(HalfInt::from_int).map_err(|_| bad())
    }
}

/// Graded dimensions in steps of ½, from degree 0 up to `max_deg` inclusive.
///
/// Entry `k` of [`coefficients`](Self::coefficients) is the dimension in degree `k/2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedDims {
    coeffs: Vec<u64>,
}

impl GradedDims {
    pub fn zeros(max_deg: HalfInt) -> Self {
        let len = max_deg.twice().max(-1) + 1;
        GradedDims {
            coeffs: vec![0; len as usize],
        }
    }

    pub fn from_coefficients(coeffs: Vec<u64>) -> Self {
        GradedDims { coeffs }
    }

    pub fn max_deg(&self) -> HalfInt {
        HalfInt::from_twice(self.coeffs.len() as i64 - 1)
    }

    pub fn coefficients(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn get(&self, deg: HalfInt) -> u64 {
        usize::try_from(deg.twice())
            .ok()
            .and_then(|i| self.coeffs.get(i).copied())
            .unwrap_or(0)
    }

    pub(crate) fn add_at(&mut self, twice_deg: usize, n: u64) {
        if let Some(c) = self.coeffs.get_mut(twice_deg) {
            *c += n;
        }
    }

    /// `(degree, dimension)` pairs in increasing degree.
    pub fn iter(&self) -> impl Iterator<Item = (HalfInt, u64)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(i, &c)| (HalfInt::from_twice(i as i64), c))
    }

    /// Coefficients at integer degrees only.
    pub fn integer_part(&self) -> Vec<u64> {
        self.coeffs.iter().step_by(2).copied().collect()
    }

    /// Largest degree `d` such that both tables agree on every degree `≤ d`,
    /// or `None` if they already differ in degree 0.
    pub fn agree_up_to(&self, other: &GradedDims) -> Option<HalfInt> {
        let n = self.coeffs.len().min(other.coeffs.len());
        let agree = self.coeffs[..n]
            .iter()
            .zip(&other.coeffs[..n])
            .take_while(|(a, b)| a == b)
            .count();
        (agree > 0).then(|| HalfInt::from_twice(agree as i64 - 1))
    }
}
