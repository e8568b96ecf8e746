use std::collections::BTreeMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::One;
use rayon::prelude::*;
use serde::ser::SerializeMap;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::group::AbelianGroup;
use super::smith::{cokernel, rank, smith_invariants};
use super::sparse::SparseMatrix;
use super::LinalgError;
use crate::scalar::Scalar;

/// Finite chain complex of free modules in degrees `lo..=hi`, with
/// `boundary(d): C_d → C_{d-1}` stored as a `rank(d-1) × rank(d)` matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainComplex<T: Scalar> {
    lo: i64,
    ranks: Vec<usize>,
    boundaries: BTreeMap<i64, SparseMatrix<T>>,
    labels: BTreeMap<i64, Vec<String>>,
}

impl<T: Scalar> ChainComplex<T> {
    /// Complex with the given ranks starting at degree `lo` and zero
    /// boundaries.
    pub fn new(lo: i64, ranks: Vec<usize>) -> Self {
        Self { lo, ranks, boundaries: BTreeMap::new(), labels: BTreeMap::new() }
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    /// Highest degree; `lo - 1` for the empty complex.
    pub fn hi(&self) -> i64 {
        self.lo + self.ranks.len() as i64 - 1
    }

    pub fn degrees(&self) -> impl Iterator<Item = i64> {
        self.lo..=self.hi()
    }

    pub fn rank_at(&self, d: i64) -> usize {
        if d < self.lo || d > self.hi() {
            0
        } else {
            self.ranks[(d - self.lo) as usize]
        }
    }

    pub fn set_boundary(&mut self, d: i64, m: SparseMatrix<T>) -> Result<(), LinalgError> {
        let expected = (self.rank_at(d - 1), self.rank_at(d));
        if (m.rows(), m.cols()) != expected {
            return Err(LinalgError::BoundaryShape {
                degree: d,
                expected,
                found: (m.rows(), m.cols()),
            });
        }
        self.boundaries.insert(d, m);
        Ok(())
    }

    pub fn boundary(&self, d: i64) -> SparseMatrix<T> {
        self.boundaries
            .get(&d)
            .cloned()
            .unwrap_or_else(|| SparseMatrix::zeros(self.rank_at(d - 1), self.rank_at(d)))
    }

    pub fn boundary_ref(&self, d: i64) -> Option<&SparseMatrix<T>> {
        self.boundaries.get(&d)
    }

    pub fn set_labels(&mut self, d: i64, labels: Vec<String>) {
        assert_eq!(labels.len(), self.rank_at(d), "one label per generator");
        self.labels.insert(d, labels);
    }

    pub fn labels(&self, d: i64) -> Option<&[String]> {
        self.labels.get(&d).map(Vec::as_slice)
    }

    /// Degrees `d` at which `boundary(d-1) ∘ boundary(d)` is nonzero.
    pub fn verify(&self) -> Vec<i64> {
        self.degrees()
            .filter(|&d| {
                let (Some(a), Some(b)) = (self.boundaries.get(&(d - 1)), self.boundaries.get(&d))
                else {
                    return false;
                };
                !a.mul(b).expect("shapes checked on insertion").is_zero()
            })
            .collect()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.degrees()
            .map(|d| sign(d) * self.rank_at(d) as i64)
            .sum()
    }

    pub fn homology(&self) -> Result<GradedGroup, LinalgError> {
        if let Some(&d) = self.verify().first() {
            return Err(LinalgError::NotAComplex { degree: d });
        }
        let reduced: BTreeMap<i64, Vec<BigUint>> = self
            .boundaries
            .par_iter()
            .map(|(&d, m)| (d, smith_invariants(m)))
            .collect();
        let empty = Vec::new();
        let mut out = GradedGroup::default();
        for d in self.degrees() {
            let incoming = reduced.get(&(d + 1)).unwrap_or(&empty);
            let outgoing = reduced.get(&d).map_or(0, Vec::len);
            let free = self.rank_at(d) - outgoing - incoming.len();
            let torsion = incoming.iter().filter(|x| !x.is_one()).cloned();
            out.insert(d, AbelianGroup::from_orders(free, torsion));
        }
        Ok(out)
    }

    /// True when the given degree-`d` cycles, together with the boundaries,
    /// generate `H_d`. Chains are dense coefficient vectors.
    pub fn spans_homology(&self, d: i64, chains: &[Vec<T>]) -> Result<bool, LinalgError> {
        let n = self.rank_at(d);
        let outgoing = self.boundary(d);
        for c in chains {
            assert_eq!(c.len(), n, "chain length must match the rank");
            let col = SparseMatrix::from_triplets(n, 1, c.iter().cloned().enumerate().map(|(i, v)| (i, 0, v)))?;
            if !outgoing.mul(&col)?.is_zero() {
                return Ok(false);
            }
        }
        let incoming = self.boundary(d + 1);
        let offset = incoming.cols();
        let mut triplets = incoming.triplets();
        for (j, c) in chains.iter().enumerate() {
            triplets.extend(c.iter().cloned().enumerate().map(|(i, v)| (i, offset + j, v)));
        }
        let generated = SparseMatrix::from_triplets(n, offset + chains.len(), triplets)?;
        let quotient = cokernel(&generated);
        Ok(quotient.is_free() && quotient.free_rank() == rank(&outgoing))
    }

    /// Euler characteristic of the chains equals that of the homology.
    pub fn euler_check(&self) -> Result<bool, LinalgError> {
        let h = self.homology()?;
        let homological: i64 = h.iter().map(|(d, g)| sign(d) * g.free_rank() as i64).sum();
        Ok(homological == self.euler_characteristic())
    }

    pub fn shift(&self, by: i64) -> Self {
        Self {
            lo: self.lo + by,
            ranks: self.ranks.clone(),
            boundaries: self.boundaries.iter().map(|(&d, m)| (d + by, m.clone())).collect(),
            labels: self.labels.iter().map(|(&d, l)| (d + by, l.clone())).collect(),
        }
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        if self.ranks.is_empty() {
            return other.clone();
        }
        if other.ranks.is_empty() {
            return self.clone();
        }
        let lo = self.lo.min(other.lo);
        let hi = self.hi().max(other.hi());
        let ranks = (lo..=hi).map(|d| self.rank_at(d) + other.rank_at(d)).collect();
        let mut out = Self::new(lo, ranks);
        for d in (lo + 1)..=hi {
            let m = self.boundary(d).block_sum(&other.boundary(d));
            if !m.is_zero() {
                out.boundaries.insert(d, m);
            }
        }
        out
    }

    /// Same complex over `BigInt`.
    pub fn to_bigint(&self) -> ChainComplex<BigInt> {
        ChainComplex {
            lo: self.lo,
            ranks: self.ranks.clone(),
            boundaries: self
                .boundaries
                .iter()
                .map(|(&d, m)| {
                    let t = m.iter().map(|(r, c, v)| (r, c, v.to_bigint()));
                    (d, SparseMatrix::from_triplets(m.rows(), m.cols(), t).expect("same shape"))
                })
                .collect(),
            labels: self.labels.clone(),
        }
    }
}

fn sign(d: i64) -> i64 {
    if d.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

#[derive(Serialize, Deserialize)]
struct ComplexJson {
    degrees: [i64; 2],
    ranks: BTreeMap<String, usize>,
    boundaries: BTreeMap<String, Vec<(usize, usize, serde_json::Value)>>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    labels: BTreeMap<String, Vec<String>>,
}

impl<T: Scalar> Serialize for ChainComplex<T> {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let json = ComplexJson {
            degrees: [self.lo, self.hi()],
            ranks: self.degrees().map(|d| (d.to_string(), self.rank_at(d))).collect(),
            boundaries: self
                .boundaries
                .iter()
                .map(|(d, m)| {
                    let entries = m
                        .iter()
                        .map(|(r, c, v)| {
                            let v = match v.to_i64() {
                                Some(x) => serde_json::Value::from(x),
                                None => serde_json::Value::from(v.to_string()),
                            };
                            (r, c, v)
                        })
                        .collect();
                    (d.to_string(), entries)
                })
                .collect(),
            labels: self.labels.iter().map(|(d, l)| (d.to_string(), l.clone())).collect(),
        };
        json.serialize(serializer)
    }
}

impl<'de, T: Scalar> Deserialize<'de> for ChainComplex<T> {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let json = ComplexJson::deserialize(deserializer)?;
        let [lo, hi] = json.degrees;
        let parse_deg = |s: &str| s.parse::<i64>().map_err(D::Error::custom);
        let ranks = (lo..=hi)
            .map(|d| json.ranks.get(&d.to_string()).copied().unwrap_or(0))
            .collect();
        let mut out = Self::new(lo, ranks);
        for (d, entries) in json.boundaries {
            let d = parse_deg(&d)?;
            let mut triplets = Vec::with_capacity(entries.len());
            for (r, c, v) in entries {
                let big: BigInt = match v {
                    serde_json::Value::Number(n) => n
                        .as_i64()
                        .map(BigInt::from)
                        .ok_or_else(|| D::Error::custom("matrix entries must be integers"))?,
                    serde_json::Value::String(s) => s.parse().map_err(D::Error::custom)?,
                    _ => return Err(D::Error::custom("matrix entries must be integers")),
                };
                let v = T::from_bigint_checked(&big)
                    .ok_or_else(|| D::Error::custom("matrix entry out of range"))?;
                triplets.push((r, c, v));
            }
            let m = SparseMatrix::from_triplets(out.rank_at(d - 1), out.rank_at(d), triplets)
                .map_err(D::Error::custom)?;
            out.set_boundary(d, m).map_err(D::Error::custom)?;
        }
        for (d, l) in json.labels {
            let d = parse_deg(&d)?;
            if l.len() != out.rank_at(d) {
                return Err(D::Error::custom("label count does not match rank"));
            }
            out.labels.insert(d, l);
        }
        Ok(out)
    }
}

/// Graded abelian group with finitely many nonzero degrees; absent degrees
/// are zero.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct GradedGroup(BTreeMap<i64, AbelianGroup>);

impl GradedGroup {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (i64, AbelianGroup)>) -> Self {
        let mut g = Self::new();
        for (d, a) in pairs {
            g.add(d, &a);
        }
        g
    }

    pub fn get(&self, d: i64) -> AbelianGroup {
        self.0.get(&d).cloned().unwrap_or_default()
    }

    pub fn insert(&mut self, d: i64, g: AbelianGroup) {
        if g.is_zero() {
            self.0.remove(&d);
        } else {
            self.0.insert(d, g);
        }
    }

    /// Direct-sums `g` into degree `d`.
    pub fn add(&mut self, d: i64, g: &AbelianGroup) {
        let sum = self.get(d).direct_sum(g);
        self.insert(d, sum);
    }

    /// Nonzero degrees in increasing order.
    pub fn iter(&self) -> impl DoubleEndedIterator<Item = (i64, &AbelianGroup)> {
        self.0.iter().map(|(&d, g)| (d, g))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn shift(&self, by: i64) -> Self {
        Self(self.0.iter().map(|(&d, g)| (d + by, g.clone())).collect())
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (d, g) in other.iter() {
            out.add(d, g);
        }
        out
    }

    pub fn min_degree(&self) -> Option<i64> {
        self.0.keys().next().copied()
    }

    pub fn max_degree(&self) -> Option<i64> {
        self.0.keys().next_back().copied()
    }
}

impl fmt::Display for GradedGroup {
    /// Nonzero degrees from the top down, e.g. `Z_2@5, Z_3@4`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.iter().rev().map(|(d, g)| format!("{g}@{d}")).collect();
        write!(f, "{}", parts.join(", "))
    }
}

impl Serialize for GradedGroup {
    /// Degree keys as strings, highest degree first.
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(self.0.len()))?;
        for (d, g) in self.iter().rev() {
            map.serialize_entry(&d.to_string(), g)?;
        }
        map.end()
    }
}

impl<'de> Deserialize<'de> for GradedGroup {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let raw = BTreeMap::<String, AbelianGroup>::deserialize(deserializer)?;
        let mut out = Self::new();
        for (d, g) in raw {
            out.add(d.parse().map_err(D::Error::custom)?, &g);
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn circle() -> ChainComplex<i64> {
        ChainComplex::new(0, vec![1, 1])
    }

    fn chain_of_maps(lo: i64, maps: &[i64]) -> ChainComplex<i64> {
        let mut c = ChainComplex::new(lo, vec![1; maps.len() + 1]);
        for (i, &v) in maps.iter().enumerate() {
            let m = SparseMatrix::from_dense(&[vec![v]]);
            c.set_boundary(lo + i as i64 + 1, m).unwrap();
        }
        c
    }

    #[test]
    fn circle_homology() {
        let h = circle().homology().unwrap();
        assert_eq!(h.get(0), AbelianGroup::free(1));
        assert_eq!(h.get(1), AbelianGroup::free(1));
        assert_eq!(circle().euler_characteristic(), 0);
        assert!(circle().verify().is_empty());
    }

    #[test]
    fn projective_three_space() {
        let h = chain_of_maps(0, &[2, 0, 2]).homology().unwrap();
        assert_eq!(h, GradedGroup::from_pairs([(0, AbelianGroup::cyclic(2)), (2, AbelianGroup::cyclic(2))]));
    }

    #[test]
    fn square_violation_reported() {
        let c = chain_of_maps(0, &[1, 1]);
        assert_eq!(c.verify(), vec![2]);
        assert!(matches!(c.homology(), Err(LinalgError::NotAComplex { degree: 2 })));
    }

    #[test]
    fn shape_checked() {
        let mut c = ChainComplex::<i64>::new(0, vec![1, 2]);
        assert!(c.set_boundary(1, SparseMatrix::zeros(2, 1)).is_err());
    }

    #[test]
    fn json_round_trip() {
        let mut c = chain_of_maps(3, &[2, 0, -2]);
        c.set_labels(3, vec!["a".into()]);
        let s = serde_json::to_string(&c).unwrap();
        assert!(s.starts_with(r#"{"degrees":[3,6],"ranks":{"3":1,"4":1,"5":1,"6":1},"boundaries":{"4":[[0,0,2]]"#));
        let back: ChainComplex<i64> = serde_json::from_str(&s).unwrap();
        assert_eq!(back, c);
    }

    #[test]
    fn graded_json_descending() {
        let g = GradedGroup::from_pairs([(4, AbelianGroup::cyclic(3)), (5, AbelianGroup::cyclic(2))]);
        assert_eq!(
            serde_json::to_string(&g).unwrap(),
            r#"{"5":{"rank":0,"torsion":[2]},"4":{"rank":0,"torsion":[3]}}"#
        );
        assert_eq!(g.to_string(), "Z_2@5, Z_3@4");
    }
}
