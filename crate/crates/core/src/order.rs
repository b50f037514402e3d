use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest denominator accepted for an order.
pub const MAX_DENOMINATOR: u32 = 64;

/// Stability index α = l/k in lowest terms with 0 < α < 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct RationalOrder {
    l: u32,
    k: u32,
}

fn gcd(mut a: u32, mut b: u32) -> u32 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

impl RationalOrder {
    /// Strict constructor: `l/k` must already be in lowest terms.
    pub fn new(l: u32, k: u32) -> Result<Self> {
        Self::check_range(l, k)?;
        if gcd(l, k) != 1 {
            return Err(Error::InvalidOrder(format!("l and k must be coprime, got {l}/{k}")));
        }
        Self::check_denominator(k)?;
        Ok(Self { l, k })
    }

    /// Reduces `l/k` to lowest terms. The flag reports whether a reduction
    /// happened.
    pub fn reduced(l: u32, k: u32) -> Result<(Self, bool)> {
        Self::check_range(l, k)?;
        let g = gcd(l, k);
        let (l, k) = (l / g, k / g);
        Self::check_denominator(k)?;
        Ok((Self { l, k }, g != 1))
    }

    fn check_range(l: u32, k: u32) -> Result<()> {
        if l == 0 || k == 0 || l >= k {
            return Err(Error::InvalidOrder(format!(
                "alpha must satisfy 0 < l/k < 1, got {l}/{k}"
            )));
        }
        Ok(())
    }

    fn check_denominator(k: u32) -> Result<()> {
        if k > MAX_DENOMINATOR {
            return Err(Error::InvalidOrder(format!(
                "denominator {k} exceeds the supported maximum {MAX_DENOMINATOR}"
            )));
        }
        Ok(())
    }

    /// Parses `"l/k"`, reducing to lowest terms. Returns the original pair
    /// when a reduction took place so callers can warn about it.
    pub fn parse_reducing(s: &str) -> Result<(Self, Option<(u32, u32)>)> {
        let (l, k) = parse_pair(s)?;
        let (order, changed) = Self::reduced(l, k)?;
        Ok((order, changed.then_some((l, k))))
    }

    pub fn numerator(&self) -> u32 {
        self.l
    }

    pub fn denominator(&self) -> u32 {
        self.k
    }

    pub fn value(&self) -> f64 {
        self.l as f64 / self.k as f64
    }

    /// αβ in lowest terms.
    pub fn product(&self, other: &Self) -> Result<Self> {
        let l = self.l * other.l;
        let k = self.k * other.k;
        Self::reduced(l, k).map(|(o, _)| o)
    }

    /// sin(π n α), exact zero when n·l is a multiple of k.
    pub(crate) fn sin_pi_multiple(&self, n: u64) -> f64 {
        let two_k = 2 * self.k as u64;
        let m = (n * self.l as u64) % two_k;
        if m.is_multiple_of(self.k as u64) {
            return 0.0;
        }
        (std::f64::consts::PI * m as f64 / self.k as f64).sin()
    }

    pub fn is_half(&self) -> bool {
        self.l == 1 && self.k == 2
    }
}

fn parse_pair(s: &str) -> Result<(u32, u32)> {
    let (l, k) = s
        .trim()
        .split_once('/')
        .ok_or_else(|| Error::InvalidOrder(format!("expected \"l/k\", got {s:?}")))?;
    let parse = |part: &str| {
        part.trim()
            .parse::<u32>()
            .map_err(|_| Error::InvalidOrder(format!("expected \"l/k\" with integers, got {s:?}")))
    };
    Ok((parse(l)?, parse(k)?))
}

impl FromStr for RationalOrder {
    type Err = Error;

    /// Strict parse; use [`RationalOrder::parse_reducing`] to accept
    /// non-reduced fractions.
    fn from_str(s: &str) -> Result<Self> {
        let (l, k) = parse_pair(s)?;
        Self::new(l, k)
    }
}

impl TryFrom<String> for RationalOrder {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<RationalOrder> for String {
    fn from(o: RationalOrder) -> String {
        o.to_string()
    }
}

impl fmt::Display for RationalOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.l, self.k)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn invariants() {
        assert!(RationalOrder::new(1, 2).is_ok());
        assert!(RationalOrder::new(2, 4).is_err());
        assert!(RationalOrder::new(3, 2).is_err());
        assert!(RationalOrder::new(0, 2).is_err());
        assert!(RationalOrder::new(1, 65).is_err());
        assert!(RationalOrder::new(63, 64).is_ok());
    }

    #[test]
    fn reduction() {
        let (o, changed) = RationalOrder::reduced(2, 4).unwrap();
        assert_eq!(o, RationalOrder::new(1, 2).unwrap());
        assert!(changed);
        let (o, orig) = RationalOrder::parse_reducing(" 6/9 ").unwrap();
        assert_eq!(o.to_string(), "2/3");
        assert_eq!(orig, Some((6, 9)));
        // a reducible fraction with a large denominator is fine once reduced
        assert_eq!(RationalOrder::reduced(50, 100).unwrap().0.to_string(), "1/2");
    }

    #[test]
    fn parse_errors() {
        assert!("3/2".parse::<RationalOrder>().is_err());
        assert!("1/2/3".parse::<RationalOrder>().is_err());
        assert!("half".parse::<RationalOrder>().is_err());
        assert!("-1/2".parse::<RationalOrder>().is_err());
    }

    #[test]
    fn product_reduces() {
        let a: RationalOrder = "2/3".parse().unwrap();
        let b: RationalOrder = "3/4".parse().unwrap();
        assert_eq!(a.product(&b).unwrap().to_string(), "1/2");
    }

    #[test]
    fn sine_multiples() {
        let a: RationalOrder = "1/3".parse().unwrap();
        assert_eq!(a.sin_pi_multiple(3), 0.0);
        assert_eq!(a.sin_pi_multiple(6), 0.0);
        assert!((a.sin_pi_multiple(1) - (std::f64::consts::PI / 3.0).sin()).abs() < 1e-16);
        assert!((a.sin_pi_multiple(4) + (std::f64::consts::PI / 3.0).sin()).abs() < 1e-15);
    }
}
