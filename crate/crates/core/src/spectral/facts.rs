use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::engine::KnownMap;
use super::formulas::Affine;
use super::value::Value;
use crate::linalg::{AbelianGroup, GradedGroup};

const BUNDLED: &str = include_str!("../../data/facts.json");

#[derive(Debug, thiserror::Error)]
pub enum FactError {
    #[error("cannot read facts file {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("malformed facts file: {0}")]
    Json(#[from] serde_json::Error),
    #[error("fact {id}: {message}")]
    Invalid { id: String, message: String },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FactKind {
    AuxD1Iso,
    AuxD1FreeToInfinite,
    HomologyValues,
}

/// One externally asserted input, as stored in the registry file.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GeometricFact {
    pub id: String,
    pub rho: Option<i64>,
    pub kind: FactKind,
    pub data: serde_json::Value,
    pub provenance: String,
}

#[derive(Deserialize)]
struct Differential {
    source: [i64; 2],
    target: [i64; 2],
}

#[derive(Deserialize)]
#[serde(tag = "target", rename_all = "kebab-case")]
enum Homology {
    TriangleSubspace {
        #[serde(deserialize_with = "group_map")]
        values: BTreeMap<i64, AbelianGroup>,
    },
    /// `degree` is affine in ρ.
    SignTopDegree {
        degree: Affine,
        #[serde(deserialize_with = "group")]
        value: AbelianGroup,
        min_rho: i64,
    },
    MainEntry { q: Affine, value: Value },
    RationalRank { q: Affine, rank: usize, min_k: i64 },
    MainColumn {
        #[serde(deserialize_with = "value_map")]
        values: BTreeMap<i64, Value>,
    },
}

fn group<'de, D: serde::Deserializer<'de>>(d: D) -> Result<AbelianGroup, D::Error> {
    String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
}

/// Object keyed by integer strings with values in group notation.
fn keyed<'de, D, T>(d: D) -> Result<BTreeMap<i64, T>, D::Error>
where
    D: serde::Deserializer<'de>,
    T: std::str::FromStr<Err: std::fmt::Display>,
{
    use serde::de::Error;
    BTreeMap::<String, String>::deserialize(d)?
        .into_iter()
        .map(|(k, v)| Ok((k.parse().map_err(D::Error::custom)?, v.parse().map_err(D::Error::custom)?)))
        .collect()
}

fn group_map<'de, D: serde::Deserializer<'de>>(d: D) -> Result<BTreeMap<i64, AbelianGroup>, D::Error> {
    keyed(d)
}

fn value_map<'de, D: serde::Deserializer<'de>>(d: D) -> Result<BTreeMap<i64, Value>, D::Error> {
    keyed(d)
}

enum Parsed {
    Differential(KnownMap, Differential),
    Homology(Homology),
}

/// Typed view of a fact file. Lookups record which facts were read.
pub struct Facts {
    facts: Vec<(GeometricFact, Parsed)>,
}

/// Ids of the facts an assembly step relied on.
pub type Consumed = BTreeSet<String>;

impl Facts {
    pub fn bundled() -> Self {
        Self::parse(BUNDLED).expect("bundled facts are valid")
    }

    pub fn load(path: &Path) -> Result<Self, FactError> {
        let text = std::fs::read_to_string(path)
            .map_err(|source| FactError::Io { path: path.display().to_string(), source })?;
        Self::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Self, FactError> {
        let raw: Vec<GeometricFact> = serde_json::from_str(text)?;
        Self::from_facts(raw)
    }

    pub fn from_facts(raw: Vec<GeometricFact>) -> Result<Self, FactError> {
        let mut seen = BTreeSet::new();
        let mut facts = Vec::new();
        for f in raw {
            let invalid = |message: String| FactError::Invalid { id: f.id.clone(), message };
            if !seen.insert(f.id.clone()) {
                return Err(invalid("duplicate id".into()));
            }
            let parsed = match f.kind {
                FactKind::AuxD1Iso | FactKind::AuxD1FreeToInfinite => {
                    let d: Differential =
                        serde_json::from_value(f.data.clone()).map_err(|e| invalid(e.to_string()))?;
                    if d.source[0] != d.target[0] + 1 || d.source[1] != d.target[1] {
                        return Err(invalid("a first differential goes from (j, 𝔮) to (j−1, 𝔮)".into()));
                    }
                    if f.rho.is_none() {
                        return Err(invalid("differential facts need rho".into()));
                    }
                    let map = if f.kind == FactKind::AuxD1Iso { KnownMap::Iso } else { KnownMap::FreeToInfinite };
                    Parsed::Differential(map, d)
                }
                FactKind::HomologyValues => {
                    let h: Homology = serde_json::from_value(f.data.clone()).map_err(|e| invalid(e.to_string()))?;
                    let needs_rho = !matches!(h, Homology::SignTopDegree { .. });
                    if needs_rho && f.rho.is_none() {
                        return Err(invalid("this target needs rho".into()));
                    }
                    Parsed::Homology(h)
                }
            };
            facts.push((f, parsed));
        }
        Ok(Self { facts })
    }

    pub fn all(&self) -> impl Iterator<Item = &GeometricFact> {
        self.facts.iter().map(|(f, _)| f)
    }

    pub fn get(&self, id: &str) -> Option<&GeometricFact> {
        self.all().find(|f| f.id == id)
    }

    /// Configured first differentials of the auxiliary sequence of rank
    /// `ρ`, as `(source (j, 𝔮), target (j, 𝔮)) → map`.
    pub fn aux_d1(&self, rho: i64) -> Vec<(String, (i64, i64), (i64, i64), KnownMap)> {
        self.facts
            .iter()
            .filter(|(f, _)| f.rho == Some(rho))
            .filter_map(|(f, p)| match p {
                Parsed::Differential(m, d) => {
                    Some((f.id.clone(), (d.source[0], d.source[1]), (d.target[0], d.target[1]), *m))
                }
                _ => None,
            })
            .collect()
    }

    fn homology(&self, rho: Option<i64>) -> impl Iterator<Item = (&str, &Homology)> {
        self.facts.iter().filter(move |(f, _)| rho.is_none() || f.rho == rho).filter_map(|(f, p)| match p {
            Parsed::Homology(h) => Some((f.id.as_str(), h)),
            _ => None,
        })
    }

    /// Borel–Moore homology of the triangle subspace with ±Z coefficients.
    pub fn triangle_homology(&self, used: &mut Consumed) -> Option<GradedGroup> {
        self.homology(Some(3)).find_map(|(id, h)| match h {
            Homology::TriangleSubspace { values } => {
                used.insert(id.to_string());
                Some(GradedGroup::from_pairs(values.iter().map(|(&d, g)| (d, g.clone()))))
            }
            _ => None,
        })
    }

    /// The group of B(ℝ⁴, ρ) with ±Z coefficients in its top nonzero
    /// degree, `(degree, group)`.
    pub fn sign_top_degree(&self, rho: i64, used: &mut Consumed) -> Option<(i64, AbelianGroup)> {
        self.homology(None).find_map(|(id, h)| match h {
            Homology::SignTopDegree { degree, value, min_rho } if rho >= *min_rho => {
                used.insert(id.to_string());
                Some((degree.at(rho), value.clone()))
            }
            _ => None,
        })
    }

    /// Individually asserted main-page entries of column `p = −ρ`.
    pub fn main_entries(&self, rho: i64, used: &mut Consumed) -> Vec<(Affine, Value)> {
        self.homology(Some(rho))
            .filter_map(|(id, h)| match h {
                Homology::MainEntry { q, value } => {
                    used.insert(id.to_string());
                    Some((*q, value.clone()))
                }
                _ => None,
            })
            .collect()
    }

    /// Asserted rational ranks of main-page entries at this `k`, as `(q, rank)`.
    pub fn rational_ranks(&self, rho: i64, k: i64, used: &mut Consumed) -> Vec<(i64, usize)> {
        self.homology(Some(rho))
            .filter_map(|(id, h)| match h {
                Homology::RationalRank { q, rank, min_k } if k >= *min_k => {
                    used.insert(id.to_string());
                    Some((q.at(k), *rank))
                }
                _ => None,
            })
            .collect()
    }

    /// Asserted full column `p = −ρ`, keyed by the constant `c` of
    /// `q = 2ρk + c`.
    pub fn main_column(&self, rho: i64, used: &mut Consumed) -> Option<BTreeMap<i64, Value>> {
        self.homology(Some(rho)).find_map(|(id, h)| match h {
            Homology::MainColumn { values } => {
                used.insert(id.to_string());
                Some(values.clone())
            }
            _ => None,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_facts_parse() {
        let f = Facts::bundled();
        assert_eq!(f.all().count(), 10);
        let mut used = Consumed::new();
        let t = f.triangle_homology(&mut used).unwrap();
        assert_eq!(t.to_string(), "Z⊕Z_2@5, Z@4");
        assert_eq!(f.sign_top_degree(3, &mut used), Some((11, AbelianGroup::cyclic(2))));
        assert_eq!(f.sign_top_degree(1, &mut used), None);
        assert_eq!(f.aux_d1(3).len(), 2);
        assert_eq!(f.main_column(3, &mut used).unwrap().len(), 7);
        assert_eq!(f.rational_ranks(4, 3, &mut used), vec![]);
        assert_eq!(f.rational_ranks(4, 5, &mut used), vec![(27, 1)]);
        assert_eq!(used.len(), 4);
    }

    #[test]
    fn rejects_bad_facts() {
        let bad = r#"[{"id":"x","rho":2,"kind":"aux-d1-iso","data":{"source":[1,6],"target":[0,5]},"provenance":""}]"#;
        assert!(matches!(Facts::parse(bad), Err(FactError::Invalid { .. })));
        let dup = r#"[{"id":"x","rho":2,"kind":"aux-d1-iso","data":{"source":[1,6],"target":[0,6]},"provenance":""},
                     {"id":"x","rho":2,"kind":"aux-d1-iso","data":{"source":[1,6],"target":[0,6]},"provenance":""}]"#;
        assert!(Facts::parse(dup).is_err());
        let unknown = r#"[{"id":"x","rho":2,"kind":"homology-values","data":{"target":"nowhere"},"provenance":""}]"#;
        assert!(Facts::parse(unknown).is_err());
    }
}
