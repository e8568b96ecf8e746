use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

/// Largest rank for which [`symbols_for`] enumerates.
pub const MAX_SYMBOL_RANK: usize = 6;

/// An unordered collection of group sizes `a_i ≥ 2` together with a count
/// `b` of marked points. Parts are kept in non-increasing order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct SymbolA {
    parts: Vec<usize>,
    b: usize,
}

impl SymbolA {
    pub fn new(parts: &[usize], b: usize) -> Self {
        assert!(parts.iter().all(|&a| a >= 2), "symbol parts must be at least 2");
        let mut parts = parts.to_vec();
        parts.sort_unstable_by(|x, y| y.cmp(x));
        Self { parts, b }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn b(&self) -> usize {
        self.b
    }

    /// `|A|`.
    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    /// `#(A)`.
    pub fn count(&self) -> usize {
        self.parts.len()
    }

    pub fn complexity(&self) -> usize {
        self.parts.iter().map(|a| a - 1).sum::<usize>() + self.b
    }

    pub fn defect(&self) -> usize {
        self.complexity() - self.count()
    }

    /// Dimension and rank of the single nonzero homology group of the
    /// fiber simplex complex: `(2|A| − 3#A − 1, ∏ (a_i − 2)!)`.
    pub fn block_fiber(&self) -> (i64, u64) {
        let dim = 2 * self.size() as i64 - 3 * self.count() as i64 - 1;
        let rank = self.parts.iter().map(|&a| (1..=(a as u64 - 2)).product::<u64>()).product();
        (dim, rank)
    }
}

impl fmt::Display for SymbolA {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.parts.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(","))?;
        if self.b > 0 {
            write!(f, "+{}", self.b)?;
        }
        Ok(())
    }
}

fn partitions(n: usize, max: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    (1..=max.min(n))
        .rev()
        .flat_map(|first| {
            partitions(n - first, first).into_iter().map(move |mut rest| {
                rest.insert(0, first);
                rest
            })
        })
        .collect()
}

/// All symbols with `|A| − #A = ρ` and no marked points, grouped by defect.
pub fn symbols_for(rho: usize) -> BTreeMap<usize, Vec<SymbolA>> {
    assert!((1..=MAX_SYMBOL_RANK).contains(&rho), "symbol enumeration supports 1 ≤ ρ ≤ {MAX_SYMBOL_RANK}");
    let mut out: BTreeMap<usize, Vec<SymbolA>> = BTreeMap::new();
    for p in partitions(rho, rho) {
        let parts: Vec<usize> = p.iter().map(|x| x + 1).collect();
        let a = SymbolA::new(&parts, 0);
        out.entry(a.defect()).or_default().push(a);
    }
    for v in out.values_mut() {
        v.sort();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complexity_and_defect() {
        let a = SymbolA::new(&[3, 2], 0);
        assert_eq!((a.complexity(), a.defect()), (3, 1));
        let a = SymbolA::new(&[4], 0);
        assert_eq!((a.complexity(), a.defect()), (3, 2));
        assert_eq!(SymbolA::new(&[2], 1).complexity(), 2);
    }

    #[test]
    fn fibers() {
        assert_eq!(SymbolA::new(&[4], 0).block_fiber(), (4, 2));
        assert_eq!(SymbolA::new(&[2, 2, 2], 0).block_fiber(), (2, 1));
        assert_eq!(SymbolA::new(&[3, 2], 0).block_fiber(), (3, 1));
        assert_eq!(SymbolA::new(&[2, 2], 0).block_fiber(), (1, 1));
        assert_eq!(SymbolA::new(&[3], 0).block_fiber(), (2, 1));
    }

    #[test]
    fn inventories() {
        let s = symbols_for(3);
        assert_eq!(s.len(), 3);
        assert_eq!(s[&0], vec![SymbolA::new(&[2, 2, 2], 0)]);
        assert_eq!(s[&1], vec![SymbolA::new(&[3, 2], 0)]);
        assert_eq!(s[&2], vec![SymbolA::new(&[4], 0)]);
        let s = symbols_for(2);
        assert_eq!(s[&0], vec![SymbolA::new(&[2, 2], 0)]);
        assert_eq!(s[&1], vec![SymbolA::new(&[3], 0)]);
        assert_eq!(symbols_for(4)[&2], vec![SymbolA::new(&[3, 3], 0), SymbolA::new(&[4, 2], 0)]);
        // number of partitions of 6
        assert_eq!(symbols_for(6).values().map(Vec::len).sum::<usize>(), 11);
    }
}
