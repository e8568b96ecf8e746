use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::de::{self, Deserializer};
use serde::ser::{SerializeMap, Serializer};
use serde::{Deserialize, Serialize};

use super::LinalgError;

/// A finitely generated abelian group `Z^rank ⊕ Z_{t1} ⊕ … ⊕ Z_{tm}` in
/// invariant-factor form: every `ti ≥ 2` and `ti | t(i+1)`.
///
/// The canonical form is unique, so derived equality is isomorphism.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct AbelianGroup {
    free_rank: usize,
    torsion: Vec<BigUint>,
}

impl AbelianGroup {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn free(rank: usize) -> Self {
        Self { free_rank: rank, torsion: Vec::new() }
    }

    /// `Z_n`; `n = 0` gives `Z` and `n = 1` the zero group.
    pub fn cyclic(n: u64) -> Self {
        match n {
            0 => Self::free(1),
            _ => Self::new(0, [n]),
        }
    }

    /// Builds a group from arbitrary cyclic orders; entries `0` count as free
    /// summands and entries `1` are dropped.
    pub fn new(free_rank: usize, orders: impl IntoIterator<Item = u64>) -> Self {
        Self::from_orders(free_rank, orders.into_iter().map(BigUint::from))
    }

    pub fn from_orders(free_rank: usize, orders: impl IntoIterator<Item = BigUint>) -> Self {
        let mut rank = free_rank;
        let mut finite = Vec::new();
        for o in orders {
            if o.is_zero() {
                rank += 1;
            } else if !o.is_one() {
                finite.push(o);
            }
        }
        Self { free_rank: rank, torsion: invariant_factor_chain(finite) }
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn torsion(&self) -> &[BigUint] {
        &self.torsion
    }

    pub fn is_zero(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    pub fn is_free(&self) -> bool {
        self.torsion.is_empty()
    }

    /// Order of the torsion subgroup.
    pub fn torsion_order(&self) -> BigUint {
        self.torsion.iter().fold(BigUint::one(), |acc, t| acc * t)
    }

    /// Exponent of the torsion subgroup (the largest invariant factor).
    pub fn exponent(&self) -> BigUint {
        self.torsion.last().cloned().unwrap_or_else(BigUint::one)
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        Self::from_orders(
            self.free_rank + other.free_rank,
            self.torsion.iter().chain(other.torsion.iter()).cloned(),
        )
    }

    pub fn sum<'a>(groups: impl IntoIterator<Item = &'a AbelianGroup>) -> Self {
        groups.into_iter().fold(Self::zero(), |acc, g| acc.direct_sum(g))
    }

    /// True when every homomorphism `self → target` is zero.
    pub fn hom_is_zero(&self, target: &Self) -> bool {
        if self.is_zero() || target.is_zero() {
            return true;
        }
        if self.free_rank > 0 {
            return false;
        }
        // finite source: only the torsion of the target can be hit
        self.exponent().gcd(&target.exponent()).is_one()
    }

    /// Extension `0 → self → E → quotient → 0` when it is forced: one side
    /// vanishes, the quotient is free, or both sides are finite of coprime
    /// order.
    pub fn forced_extension(&self, quotient: &Self) -> Option<Self> {
        if self.is_zero() || quotient.is_zero() || quotient.is_free() {
            return Some(self.direct_sum(quotient));
        }
        if self.is_finite()
            && quotient.is_finite()
            && self.torsion_order().gcd(&quotient.torsion_order()).is_one()
        {
            return Some(self.direct_sum(quotient));
        }
        None
    }
}

fn invariant_factor_chain(mut orders: Vec<BigUint>) -> Vec<BigUint> {
    for i in 0..orders.len() {
        for j in (i + 1)..orders.len() {
            let g = orders[i].gcd(&orders[j]);
            let l = orders[i].lcm(&orders[j]);
            orders[i] = g;
            orders[j] = l;
        }
    }
    orders.retain(|o| !o.is_one());
    orders
}

impl fmt::Display for AbelianGroup {
    /// Notation: `0`, `Z`, `Z^2`, `Z_2`, `(Z_2)^2`, `Z⊕Z_3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        let mut i = 0;
        while i < self.torsion.len() {
            let t = &self.torsion[i];
            let run = self.torsion[i..].iter().take_while(|x| *x == t).count();
            if run == 1 {
                parts.push(format!("Z_{t}"));
            } else {
                parts.push(format!("(Z_{t})^{run}"));
            }
            i += run;
        }
        write!(f, "{}", parts.join("⊕"))
    }
}

impl FromStr for AbelianGroup {
    type Err = LinalgError;

    /// Parses the notation produced by `Display`, also accepting `+` for `⊕`,
    /// `Z2` for `Z_2` and `Z_2^2` for `(Z_2)^2`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || LinalgError::GroupSyntax(s.to_string());
        let cleaned: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if cleaned == "0" || cleaned.is_empty() {
            return Ok(Self::zero());
        }
        let mut group = Self::zero();
        for term in cleaned.split(['⊕', '+']) {
            let (base, power) = match term.rsplit_once('^') {
                Some((b, p)) => (b, p.parse::<usize>().map_err(|_| bad())?),
                None => (term, 1),
            };
            let base = base.trim_start_matches('(').trim_end_matches(')');
            let rest = base.strip_prefix('Z').ok_or_else(bad)?;
            let rest = rest.trim_start_matches('_');
            let summand = if rest.is_empty() {
                Self::free(1)
            } else {
                let n: BigUint = rest.parse().map_err(|_| bad())?;
                Self::from_orders(0, [n])
            };
            for _ in 0..power {
                group = group.direct_sum(&summand);
            }
        }
        Ok(group)
    }
}

impl Serialize for AbelianGroup {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let torsion: Vec<serde_json::Value> = self
            .torsion
            .iter()
            .map(|t| match t.to_u64() {
                Some(v) => serde_json::Value::from(v),
                None => serde_json::Value::from(t.to_string()),
            })
            .collect();
        let mut map = serializer.serialize_map(Some(2))?;
        map.serialize_entry("rank", &self.free_rank)?;
        map.serialize_entry("torsion", &torsion)?;
        map.end()
    }
}

impl<'de> Deserialize<'de> for AbelianGroup {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            rank: usize,
            #[serde(default)]
            torsion: Vec<serde_json::Value>,
        }
        let raw = Raw::deserialize(deserializer)?;
        let mut orders = Vec::with_capacity(raw.torsion.len());
        for v in raw.torsion {
            let n = match &v {
                serde_json::Value::Number(n) => n
                    .as_u64()
                    .map(BigUint::from)
                    .ok_or_else(|| de::Error::custom("torsion entries must be positive integers"))?,
                serde_json::Value::String(s) => s.parse().map_err(de::Error::custom)?,
                _ => return Err(de::Error::custom("torsion entries must be integers")),
            };
            if n < BigUint::from(2u8) {
                return Err(de::Error::custom("torsion entries must be at least 2"));
            }
            orders.push(n);
        }
        let g = AbelianGroup::from_orders(raw.rank, orders.iter().cloned());
        if g.torsion != orders {
            return Err(de::Error::custom("torsion must be in divisibility order"));
        }
        Ok(g)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coprime_cyclics_merge() {
        assert_eq!(AbelianGroup::new(0, [2, 3]), AbelianGroup::cyclic(6));
        assert_eq!(AbelianGroup::new(0, [2, 3]).to_string(), "Z_6");
    }

    #[test]
    fn invariant_factor_order() {
        let g = AbelianGroup::new(1, [4, 6, 1]);
        assert_eq!(g.torsion(), &[BigUint::from(2u8), BigUint::from(12u8)]);
        assert_eq!(g.to_string(), "Z⊕Z_2⊕Z_12");
    }

    #[test]
    fn display_and_parse() {
        for s in ["0", "Z", "Z^2", "Z_2", "(Z_2)^2", "Z⊕Z_3", "Z⊕Z_2"] {
            let g: AbelianGroup = s.parse().unwrap();
            assert_eq!(g.to_string(), s);
        }
        assert_eq!("Z+Z2".parse::<AbelianGroup>().unwrap(), AbelianGroup::new(1, [2]));
        assert_eq!("Z_3+Z_2".parse::<AbelianGroup>().unwrap(), AbelianGroup::cyclic(6));
        assert!("Q".parse::<AbelianGroup>().is_err());
    }

    #[test]
    fn json_shape() {
        let g = AbelianGroup::new(0, [2]);
        assert_eq!(serde_json::to_string(&g).unwrap(), r#"{"rank":0,"torsion":[2]}"#);
        let back: AbelianGroup = serde_json::from_str(r#"{"rank":1,"torsion":[2,4]}"#).unwrap();
        assert_eq!(back, AbelianGroup::new(1, [2, 4]));
        assert!(serde_json::from_str::<AbelianGroup>(r#"{"rank":0,"torsion":[4,2]}"#).is_err());
        assert!(serde_json::from_str::<AbelianGroup>(r#"{"rank":0,"torsion":[1]}"#).is_err());
    }

    #[test]
    fn extensions() {
        let z2 = AbelianGroup::cyclic(2);
        let z3 = AbelianGroup::cyclic(3);
        let z = AbelianGroup::free(1);
        assert_eq!(z3.forced_extension(&z2), Some(AbelianGroup::cyclic(6)));
        assert_eq!(z3.forced_extension(&z), Some(AbelianGroup::new(1, [3])));
        assert_eq!(z2.forced_extension(&z2), None);
        assert_eq!(z.forced_extension(&z3), None);
    }

    #[test]
    fn hom_vanishing() {
        let z = AbelianGroup::free(1);
        let z2 = AbelianGroup::cyclic(2);
        let z3 = AbelianGroup::cyclic(3);
        assert!(z2.hom_is_zero(&z));
        assert!(z2.hom_is_zero(&z3));
        assert!(!z.hom_is_zero(&z3));
        assert!(!z2.hom_is_zero(&AbelianGroup::cyclic(6)));
    }
}
