use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::linalg::AbelianGroup;

/// A spectral-sequence entry known exactly or only up to bounds.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Value {
    Exact(AbelianGroup),
    /// Free of the given rank plus an undetermined finite group; rank 0 is
    /// printed `T`, rank 1 `Z⊕T`.
    Bounded(usize),
    /// Rank at least the given value, otherwise undetermined; printed `?`
    /// or `Z⊕?`.
    AtLeast(usize),
}

impl Value {
    pub fn zero() -> Self {
        Self::Exact(AbelianGroup::zero())
    }

    pub fn finite() -> Self {
        Self::Bounded(0)
    }

    pub fn unknown() -> Self {
        Self::AtLeast(0)
    }

    pub fn exact(&self) -> Option<&AbelianGroup> {
        match self {
            Self::Exact(g) => Some(g),
            _ => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Self::Exact(g) if g.is_zero())
    }

    /// Rational rank when determined.
    pub fn rank(&self) -> Option<usize> {
        match self {
            Self::Exact(g) => Some(g.free_rank()),
            Self::Bounded(r) => Some(*r),
            Self::AtLeast(_) => None,
        }
    }

    pub fn min_rank(&self) -> usize {
        match self {
            Self::Exact(g) => g.free_rank(),
            Self::Bounded(r) | Self::AtLeast(r) => *r,
        }
    }

    pub fn is_finite(&self) -> bool {
        self.rank() == Some(0)
    }

    pub fn is_torsion_free_exact(&self) -> bool {
        matches!(self, Self::Exact(g) if g.is_free())
    }

    /// Same rank information with the torsion forgotten.
    pub fn blur(&self) -> Self {
        match self.rank() {
            Some(r) => Self::Bounded(r),
            None => self.clone(),
        }
    }

    /// True when every homomorphism from `self` to `target` vanishes.
    pub fn hom_is_zero(&self, target: &Self) -> bool {
        if self.is_zero() || target.is_zero() {
            return true;
        }
        if self.is_finite() && target.is_torsion_free_exact() {
            return true;
        }
        match (self, target) {
            (Self::Exact(a), Self::Exact(b)) => a.hom_is_zero(b),
            _ => false,
        }
    }

    /// Middle term `E` of `0 → self → E → quotient → 0` when forced;
    /// otherwise the best bound.
    pub fn extend(&self, quotient: &Self) -> Self {
        if let (Self::Exact(a), Self::Exact(b)) = (self, quotient) {
            if let Some(g) = a.forced_extension(b) {
                return Self::Exact(g);
            }
        }
        if self.is_zero() {
            return quotient.clone();
        }
        if quotient.is_zero() {
            return self.clone();
        }
        match (self.rank(), quotient.rank()) {
            (Some(a), Some(b)) => Self::Bounded(a + b),
            _ => Self::AtLeast(self.min_rank() + quotient.min_rank()),
        }
    }

    /// Rational dimension, as `Value` over `Q`: exact rank or a lower bound.
    pub fn rational(&self) -> Self {
        match self.rank() {
            Some(r) => Self::Exact(AbelianGroup::free(r)),
            None => Self::AtLeast(self.min_rank()),
        }
    }
}

impl From<AbelianGroup> for Value {
    fn from(g: AbelianGroup) -> Self {
        Self::Exact(g)
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let free = |r: usize| match r {
            0 => String::new(),
            1 => "Z⊕".to_string(),
            r => format!("Z^{r}⊕"),
        };
        match self {
            Self::Exact(g) => write!(f, "{g}"),
            Self::Bounded(r) => write!(f, "{}T", free(*r)),
            Self::AtLeast(r) => write!(f, "{}?", free(*r)),
        }
    }
}

impl FromStr for Value {
    type Err = String;

    /// Accepts group notation plus a trailing `T` or `?` summand, e.g.
    /// `Z⊕T`, `Z+?`, `T`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let terms: Vec<&str> = compact.split(['⊕', '+']).collect();
        let (last, rest) = terms.split_last().ok_or_else(|| format!("empty value {s:?}"))?;
        let head = || -> Result<AbelianGroup, String> {
            if rest.is_empty() {
                return Ok(AbelianGroup::zero());
            }
            let g: AbelianGroup = rest.join("⊕").parse().map_err(|e| format!("{e}"))?;
            if !g.is_free() {
                return Err(format!("bounded value {s:?} must list only free summands"));
            }
            Ok(g)
        };
        match *last {
            "T" => Ok(Self::Bounded(head()?.free_rank())),
            "?" => Ok(Self::AtLeast(head()?.free_rank())),
            _ => compact.parse::<AbelianGroup>().map(Self::Exact).map_err(|e| format!("{e}")),
        }
    }
}

impl Serialize for Value {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Value {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(s: &str) -> Value {
        s.parse().unwrap()
    }

    #[test]
    fn notation() {
        for s in ["0", "Z_2", "Z⊕Z_3", "T", "Z⊕T", "?", "Z⊕?", "Z^2⊕T"] {
            assert_eq!(v(s).to_string(), s);
        }
        assert_eq!(v("Z+T"), Value::Bounded(1));
        assert!("Z_2+T".parse::<Value>().is_err());
    }

    #[test]
    fn extensions() {
        assert_eq!(v("Z_3").extend(&v("Z")), v("Z⊕Z_3"));
        assert_eq!(v("T").extend(&v("Z")), v("Z⊕T"));
        assert_eq!(v("Z_2").extend(&v("Z_2")), v("T"));
        assert_eq!(v("Z_2").extend(&v("Z_3")), v("Z_6"));
        assert_eq!(v("Z⊕?").extend(&v("T")), v("Z⊕?"));
    }

    #[test]
    fn forced_zero_maps() {
        assert!(v("T").hom_is_zero(&v("Z")));
        assert!(!v("T").hom_is_zero(&v("Z_2")));
        assert!(v("Z_2").hom_is_zero(&v("Z_3")));
        assert!(!v("Z").hom_is_zero(&v("Z_3")));
    }
}
