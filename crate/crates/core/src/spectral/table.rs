use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value as Json};

use super::value::Value;

/// How an entry was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Annotation {
    Computed,
    Configured,
    BoundOnly,
    Unknown,
}

impl fmt::Display for Annotation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Computed => "computed",
            Self::Configured => "configured",
            Self::BoundOnly => "bound-only",
            Self::Unknown => "unknown",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Entry {
    pub value: Value,
    pub annotation: Annotation,
}

impl Entry {
    pub fn new(value: Value, annotation: Annotation) -> Self {
        Self { value, annotation }
    }
}

/// A sparse two-index table of groups. Missing entries are zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SSTable {
    name: String,
    axes: [String; 2],
    entries: BTreeMap<(i64, i64), Entry>,
}

impl SSTable {
    pub fn new(name: impl Into<String>, x: &str, y: &str) -> Self {
        Self { name: name.into(), axes: [x.to_string(), y.to_string()], entries: BTreeMap::new() }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn axes(&self) -> [&str; 2] {
        [&self.axes[0], &self.axes[1]]
    }

    /// Stores a nonzero entry; zero values clear the position.
    pub fn insert(&mut self, x: i64, y: i64, value: Value, annotation: Annotation) {
        if value.is_zero() {
            self.entries.remove(&(x, y));
        } else {
            self.entries.insert((x, y), Entry::new(value, annotation));
        }
    }

    pub fn get(&self, x: i64, y: i64) -> Option<&Entry> {
        self.entries.get(&(x, y))
    }

    pub fn value(&self, x: i64, y: i64) -> Value {
        self.get(x, y).map_or_else(Value::zero, |e| e.value.clone())
    }

    pub fn iter(&self) -> impl Iterator<Item = ((i64, i64), &Entry)> {
        self.entries.iter().map(|(&k, v)| (k, v))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Entries of the column `x`, keyed by `y`.
    pub fn column(&self, x: i64) -> BTreeMap<i64, &Entry> {
        self.entries.range((x, i64::MIN)..=(x, i64::MAX)).map(|(&(_, y), e)| (y, e)).collect()
    }

    pub fn to_json(&self) -> Json {
        let entries: Vec<Json> = self
            .iter()
            .map(|((x, y), e)| {
                let mut obj = serde_json::Map::new();
                obj.insert(self.axes[0].clone(), json!(x));
                obj.insert(self.axes[1].clone(), json!(y));
                obj.insert("value".into(), json!(e.value.to_string()));
                obj.insert("annotation".into(), json!(e.annotation));
                if let Some(g) = e.value.exact() {
                    obj.insert("group".into(), serde_json::to_value(g).expect("groups serialize"));
                }
                Json::Object(obj)
            })
            .collect();
        json!({ "name": self.name, "axes": self.axes, "entries": entries })
    }

    /// Grid with `y` descending down the rows and `x` ascending across.
    pub fn to_markdown(&self) -> String {
        let xs: BTreeSet<i64> = self.entries.keys().map(|&(x, _)| x).collect();
        let ys: BTreeSet<i64> = self.entries.keys().map(|&(_, y)| y).collect();
        let mut rows = vec![std::iter::once(format!("{}\\{}", self.axes[1], self.axes[0]))
            .chain(xs.iter().map(ToString::to_string))
            .collect::<Vec<_>>()];
        if let (Some(&lo), Some(&hi)) = (ys.first(), ys.last()) {
            for y in (lo..=hi).rev() {
                let mut row = vec![y.to_string()];
                for &x in &xs {
                    row.push(self.get(x, y).map_or_else(String::new, |e| e.value.to_string()));
                }
                rows.push(row);
            }
        }
        format!("**{}**\n\n{}", self.name, markdown_grid(&rows))
    }
}

/// Pipe table with padded columns; the first row is the header.
pub fn markdown_grid(rows: &[Vec<String>]) -> String {
    let ncols = rows.iter().map(Vec::len).max().unwrap_or(0);
    let width: Vec<usize> = (0..ncols)
        .map(|c| rows.iter().filter_map(|r| r.get(c)).map(|s| s.chars().count()).max().unwrap_or(0).max(3))
        .collect();
    let line = |r: &[String]| {
        let cells: Vec<String> = (0..ncols)
            .map(|c| {
                let s = r.get(c).map_or("", String::as_str);
                format!("{s}{}", " ".repeat(width[c] - s.chars().count()))
            })
            .collect();
        format!("| {} |", cells.join(" | "))
    };
    let mut out = Vec::new();
    if let Some((head, body)) = rows.split_first() {
        out.push(line(head));
        out.push(format!("|{}|", width.iter().map(|w| "-".repeat(w + 2)).collect::<Vec<_>>().join("|")));
        out.extend(body.iter().map(|r| line(r)));
    }
    out.join("\n") + "\n"
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_entries_are_absent() {
        let mut t = SSTable::new("t", "j", "q");
        t.insert(0, 8, "Z_2".parse().unwrap(), Annotation::Computed);
        t.insert(0, 7, Value::zero(), Annotation::Computed);
        assert_eq!(t.len(), 1);
        assert!(t.value(0, 7).is_zero());
        assert_eq!(t.column(0).len(), 1);
    }

    #[test]
    fn renders() {
        let mut t = SSTable::new("t", "j", "q");
        t.insert(0, 8, "Z_2".parse().unwrap(), Annotation::Computed);
        t.insert(1, 6, "T".parse().unwrap(), Annotation::BoundOnly);
        let md = t.to_markdown();
        assert!(md.contains("| q\\j | 0   | 1   |"));
        assert_eq!(md.lines().count(), 7);
        let js = t.to_json();
        assert_eq!(js["entries"][0]["annotation"], "computed");
        assert_eq!(js["entries"][1]["value"], "T");
        assert!(js["entries"][1].get("group").is_none());
    }
}
