//! Propagation of a spectral sequence from its first page when most
//! differentials are forced by the shape of their ends.
//!
//! Positions are `(s, t)`: `s` the filtration index and `t` the total
//! degree. `d^r` maps `(s, t)` to `(s − r, t + dir)`, so `dir = −1` for the
//! homological auxiliary sequences and `+1` for the cohomological main one
//! (with `s = −p`). In both the smallest `s` is the subgroup of the
//! abutment's filtration.

use std::collections::BTreeMap;

use serde::Serialize;

use super::value::Value;

/// What is known about a differential beyond the groups at its ends.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KnownMap {
    Iso,
    /// A free generator of the source goes to an element of infinite order.
    FreeToInfinite,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Unresolved {
    pub r: i64,
    pub source: (i64, i64),
    pub target: (i64, i64),
    pub source_value: String,
    pub target_value: String,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum EngineError {
    #[error("d^{r} from {from:?} to {to:?} is configured as {known} but the ends are {source_value} and {target_value}")]
    Conflict { r: i64, from: (i64, i64), to: (i64, i64), known: String, source_value: String, target_value: String },
}

pub struct Page {
    dir: i64,
    entries: BTreeMap<(i64, i64), Value>,
    /// Positions with `t` beyond this are not tabulated and read as unknown.
    t_limit: Option<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub limit: BTreeMap<(i64, i64), Value>,
    pub totals: BTreeMap<i64, Value>,
    pub unresolved: Vec<Unresolved>,
}

impl Page {
    pub fn new(dir: i64) -> Self {
        assert!(dir == 1 || dir == -1);
        Self { dir, entries: BTreeMap::new(), t_limit: None }
    }

    /// Declares positions with total degree above `t` unknown.
    pub fn with_limit(mut self, t: i64) -> Self {
        self.t_limit = Some(t);
        self
    }

    pub fn set(&mut self, s: i64, t: i64, v: Value) {
        if !v.is_zero() {
            self.entries.insert((s, t), v);
        }
    }

    fn read(entries: &BTreeMap<(i64, i64), Value>, limit: Option<i64>, pos: (i64, i64)) -> Value {
        match entries.get(&pos) {
            Some(v) => v.clone(),
            None if limit.is_some_and(|l| pos.1 > l) => Value::unknown(),
            None => Value::zero(),
        }
    }

    /// Runs all differentials. `known(r, source, target)` supplies
    /// configured maps.
    pub fn run(
        &self,
        mut known: impl FnMut(i64, (i64, i64), (i64, i64)) -> Option<KnownMap>,
    ) -> Result<Outcome, EngineError> {
        let mut cur = self.entries.clone();
        let mut unresolved = Vec::new();
        let (Some(s_lo), Some(s_hi)) =
            (cur.keys().map(|p| p.0).min(), cur.keys().map(|p| p.0).max())
        else {
            return Ok(Outcome { limit: cur, totals: BTreeMap::new(), unresolved });
        };
        for r in 1..=(s_hi - s_lo) {
            let mut kernel: BTreeMap<(i64, i64), Value> = BTreeMap::new();
            let mut incoming: BTreeMap<(i64, i64), (Option<KnownMap>, Value)> = BTreeMap::new();
            for (&src, v) in &cur {
                let dst = (src.0 - r, src.1 + self.dir);
                if dst.0 < s_lo {
                    continue;
                }
                let w = Self::read(&cur, self.t_limit, dst);
                let conflict = |k: KnownMap| EngineError::Conflict {
                    r,
                    from: src,
                    to: dst,
                    known: format!("{k:?}"),
                    source_value: v.to_string(),
                    target_value: w.to_string(),
                };
                match known(r, src, dst) {
                    Some(KnownMap::Iso) => {
                        let same = matches!((v, &w), (Value::Exact(a), Value::Exact(b)) if a == b);
                        if !same {
                            return Err(conflict(KnownMap::Iso));
                        }
                        kernel.insert(src, Value::zero());
                        incoming.insert(dst, (Some(KnownMap::Iso), v.clone()));
                    }
                    Some(KnownMap::FreeToInfinite) => {
                        if v.min_rank() == 0 || w.min_rank() == 0 {
                            return Err(conflict(KnownMap::FreeToInfinite));
                        }
                        kernel.insert(src, drop_rank(v));
                        incoming.insert(dst, (Some(KnownMap::FreeToInfinite), v.clone()));
                    }
                    None if v.hom_is_zero(&w) => {}
                    None => {
                        unresolved.push(Unresolved {
                            r,
                            source: src,
                            target: dst,
                            source_value: v.to_string(),
                            target_value: w.to_string(),
                        });
                        kernel.insert(src, unknown_kernel(v, &w));
                        incoming.insert(dst, (None, v.clone()));
                    }
                }
            }
            let mut next = BTreeMap::new();
            let positions: Vec<(i64, i64)> = cur.keys().chain(incoming.keys()).copied().collect();
            for pos in positions {
                let mut v = kernel.get(&pos).cloned().unwrap_or_else(|| Self::read(&cur, self.t_limit, pos));
                if let Some((map, source)) = incoming.get(&pos) {
                    v = match map {
                        _ if v.is_zero() => v,
                        Some(KnownMap::Iso) => Value::zero(),
                        Some(KnownMap::FreeToInfinite) => drop_rank(&v),
                        None => unknown_cokernel(source, &v),
                    };
                }
                if !v.is_zero() {
                    next.insert(pos, v);
                }
            }
            cur = next;
        }
        let mut totals: BTreeMap<i64, Value> = BTreeMap::new();
        for (&(_, t), v) in &cur {
            if self.t_limit.is_some_and(|l| t > l) {
                continue;
            }
            let acc = totals.entry(t).or_insert_with(Value::zero);
            *acc = acc.extend(v);
        }
        totals.retain(|_, v| !v.is_zero());
        Ok(Outcome { limit: cur, totals, unresolved })
    }
}

fn drop_rank(v: &Value) -> Value {
    match v {
        Value::AtLeast(r) => Value::AtLeast(r.saturating_sub(1)),
        _ => Value::Bounded(v.min_rank().saturating_sub(1)),
    }
}

/// Kernel of an undetermined map `v → w`.
fn unknown_kernel(v: &Value, w: &Value) -> Value {
    if w.is_finite() {
        if v.is_torsion_free_exact() {
            // a finite-index subgroup of a free group is free of the same rank
            v.clone()
        } else {
            v.blur()
        }
    } else if v.is_finite() {
        Value::finite()
    } else {
        Value::unknown()
    }
}

/// Cokernel of an undetermined map `v → w`.
fn unknown_cokernel(v: &Value, w: &Value) -> Value {
    if v.is_finite() {
        w.blur()
    } else if w.is_finite() {
        Value::finite()
    } else {
        Value::unknown()
    }
}
