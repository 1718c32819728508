//! Inclusive `a..b` ranges with documented caps.

use std::fmt;
use std::str::FromStr;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Span {
    pub lo: u64,
    pub hi: u64,
}

impl Span {
    pub fn iter(&self) -> impl Iterator<Item = u64> {
        self.lo..=self.hi
    }

    pub fn len(&self) -> u64 {
        self.hi - self.lo + 1
    }

    /// Checks `min <= lo` and `hi <= max`.
    pub fn check(&self, name: &str, min: u64, max: u64) -> Result<(), String> {
        if self.lo < min {
            return Err(format!("--{name} must be >= {min}, got {}", self.lo));
        }
        if self.hi > max {
            return Err(format!("--{name} is capped at {max}, got {}", self.hi));
        }
        Ok(())
    }
}

impl fmt::Display for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.lo == self.hi {
            write!(f, "{}", self.lo)
        } else {
            write!(f, "{}..{}", self.lo, self.hi)
        }
    }
}

impl FromStr for Span {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parse = |t: &str| t.trim().parse::<u64>().map_err(|_| format!("invalid integer `{t}` in range `{s}`"));
        let (lo, hi) = match s.split_once("..") {
            Some((a, b)) => (parse(a)?, parse(b)?),
            None => {
                let v = parse(s)?;
                (v, v)
            }
        };
        if lo > hi {
            return Err(format!("empty range `{s}`"));
        }
        Ok(Span { lo, hi })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_forms() {
        assert_eq!("3".parse::<Span>().unwrap(), Span { lo: 3, hi: 3 });
        assert_eq!("1..10".parse::<Span>().unwrap(), Span { lo: 1, hi: 10 });
        assert!("5..2".parse::<Span>().is_err());
        assert!("a..2".parse::<Span>().is_err());
        assert_eq!("2..5".parse::<Span>().unwrap().len(), 4);
    }
}
