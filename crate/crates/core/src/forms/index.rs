use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Orbit label: an odd rank, or an even rank together with a type τ = ±1.
///
/// Ordered by rank, and within an even rank hyperbolic (+1) before
/// elliptic (−1). Every table in the crate uses this order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OrbitIndex {
    Odd(usize),
    Even(usize, i8),
}

impl OrbitIndex {
    pub const ZERO: OrbitIndex = OrbitIndex::Even(0, 1);

    pub fn odd(r: usize) -> OrbitIndex {
        assert!(r % 2 == 1, "odd rank expected, got {r}");
        OrbitIndex::Odd(r)
    }

    pub fn even(r: usize, tau: i8) -> OrbitIndex {
        assert!(r % 2 == 0 && (tau == 1 || tau == -1), "bad even index ({r}, {tau})");
        OrbitIndex::Even(r, tau)
    }

    pub fn rank(self) -> usize {
        match self {
            OrbitIndex::Odd(r) | OrbitIndex::Even(r, _) => r,
        }
    }

    /// `s` with rank `2s` or `2s+1`.
    pub fn half(self) -> usize {
        self.rank() / 2
    }

    pub fn tau(self) -> Option<i8> {
        match self {
            OrbitIndex::Odd(_) => None,
            OrbitIndex::Even(_, t) => Some(t),
        }
    }

    pub fn is_zero(self) -> bool {
        self == OrbitIndex::ZERO
    }

    /// Whether the orbit is nonempty in dimension `m`.
    pub fn is_admissible(self, m: usize) -> bool {
        match self {
            OrbitIndex::Odd(r) => r % 2 == 1 && r <= m,
            OrbitIndex::Even(r, t) => {
                r % 2 == 0 && r <= m && (t == 1 || (t == -1 && r > 0))
            }
        }
    }

    pub fn check_admissible(self, m: usize) -> Result<()> {
        if self.is_admissible(m) {
            Ok(())
        } else {
            Err(Error::InadmissibleIndex { index: self, m })
        }
    }

    /// All `⌊3m/2⌋ + 1` indices for dimension m, in table order.
    pub fn all(m: usize) -> Vec<OrbitIndex> {
        let mut out = vec![OrbitIndex::ZERO];
        for r in 1..=m {
            if r % 2 == 1 {
                out.push(OrbitIndex::Odd(r));
            } else {
                out.push(OrbitIndex::Even(r, 1));
                out.push(OrbitIndex::Even(r, -1));
            }
        }
        out
    }

    /// Position of this index in [`OrbitIndex::all`].
    pub fn position(self) -> usize {
        let r = self.rank();
        let below = if r == 0 { 0 } else { 1 + r / 2 + 2 * ((r - 1) / 2) };
        match self {
            OrbitIndex::Even(_, -1) => below + 1,
            _ => below,
        }
    }

    /// Membership in `I_ℓ`: nonzero rank at most ℓ.
    pub fn in_low_set(self, l: usize) -> bool {
        let r = self.rank();
        r >= 1 && r <= l
    }

    fn sort_key(self) -> (usize, bool) {
        (self.rank(), self.tau() == Some(-1))
    }
}

impl PartialOrd for OrbitIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for OrbitIndex {
    fn cmp(&self, other: &Self) -> Ordering {
        self.sort_key().cmp(&other.sort_key())
    }
}

impl fmt::Display for OrbitIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            OrbitIndex::Odd(r) => write!(f, "{r}"),
            OrbitIndex::Even(r, t) => write!(f, "{r}{}", if t == 1 { '+' } else { '-' }),
        }
    }
}

impl FromStr for OrbitIndex {
    type Err = Error;

    fn from_str(s: &str) -> Result<OrbitIndex> {
        let s = s.trim();
        let bad = || Error::Parse(format!("bad orbit index {s:?}"));
        let (digits, tau) = if let Some(d) = s.strip_suffix('+') {
            (d, Some(1))
        } else if let Some(d) = s.strip_suffix('-').or_else(|| s.strip_suffix('\u{2212}')) {
            (d, Some(-1))
        } else {
            (s, None)
        };
        let r: usize = digits.parse().map_err(|_| bad())?;
        match (r % 2, tau) {
            (1, None) => Ok(OrbitIndex::Odd(r)),
            (0, Some(t)) => Ok(OrbitIndex::Even(r, t)),
            _ => Err(bad()),
        }
    }
}

impl Serialize for OrbitIndex {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for OrbitIndex {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
