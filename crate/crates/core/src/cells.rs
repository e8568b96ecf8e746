//! Fox–Neuwirth–Fuks cells of the configuration spaces B(ℝᵏ, n) and their
//! cellular chain complexes with local coefficients.
//!
//! A cell is a nested ordered composition with `k - 1` levels: points are
//! grouped by their first coordinate, each group by the second, and so on;
//! inside a last-level group the points are totally ordered by the last
//! coordinate. For `k = 2` these are the Fuks cells `e(a₁, …, a_m)` of
//! B(ℂ, n): columns of `aᵢ` points on vertical lines.
//!
//! Points are labeled lexicographically: by first-level group, then by
//! second-level group, and so on, then top to bottom inside the last group.
//! A cell is oriented by the ordered wedge of its coordinates: the
//! first-level values in increasing order, then the second-level values in
//! label order of their groups, and so on, then the last coordinate of every
//! point in label order.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use rayon::prelude::*;
use serde::Serialize;

use crate::linalg::{ChainComplex, GradedGroup, LinalgError, SparseMatrix};
use crate::local_systems::{
    matching_of_pair, perm_sign, Perm, RepError, SmallMatrix, SnRepresentation,
};
use crate::{Int, IntChainComplex};

/// Global sign applied to every boundary term. `+1` reproduces the printed
/// differentials of the matching cover of B(ℂ, 4) term by term.
pub const ORIENTATION_CONSTANT: i64 = 1;

pub const MAX_PLANAR_POINTS: usize = 6;
pub const MAX_SPATIAL_POINTS: usize = 3;
pub const MAX_DEPTH: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CellError {
    #[error("unsupported configuration space B(R^{k}, {n}); need k = 2 with n ≤ 6 or 3 ≤ k ≤ 8 with n ≤ 3")]
    Unsupported { k: usize, n: usize },
    #[error("local system acts on {rep} points but the space has {n}")]
    PointMismatch { rep: usize, n: usize },
    #[error("malformed cell {0:?}")]
    Syntax(String),
    #[error(transparent)]
    Rep(#[from] RepError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// One group of a nested composition: a last-level group of `Leaf(size)`
/// points or a group of subgroups.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Block {
    Leaf(usize),
    Node(Vec<Block>),
}

impl Block {
    fn points(&self) -> usize {
        match self {
            Self::Leaf(a) => *a,
            Self::Node(c) => c.iter().map(Block::points).sum(),
        }
    }

    fn groups(&self) -> usize {
        match self {
            Self::Leaf(_) => 1,
            Self::Node(c) => 1 + c.iter().map(Block::groups).sum::<usize>(),
        }
    }

    fn depth(&self) -> Option<usize> {
        match self {
            Self::Leaf(a) if *a >= 1 => Some(1),
            Self::Leaf(_) => None,
            Self::Node(c) => uniform_depth(c).map(|d| d + 1),
        }
    }
}

fn uniform_depth(blocks: &[Block]) -> Option<usize> {
    let depths: Vec<Option<usize>> = blocks.iter().map(Block::depth).collect();
    match depths.first() {
        Some(Some(d)) if depths.iter().all(|x| *x == Some(*d)) => Some(*d),
        _ => None,
    }
}

impl fmt::Display for Block {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Leaf(a) => write!(f, "{a}"),
            Self::Node(c) => write!(f, "[{}]", c.iter().join(",")),
        }
    }
}

/// Cell of B(ℝᵏ, n).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NestedCell {
    k: usize,
    parts: Vec<Block>,
}

impl NestedCell {
    pub fn new(k: usize, parts: Vec<Block>) -> Result<Self, CellError> {
        let cell = Self { k, parts };
        if k < 2 || uniform_depth(&cell.parts) != Some(k - 1) {
            return Err(CellError::Syntax(cell.to_string()));
        }
        Ok(cell)
    }

    /// Fuks cell `e(a₁, …, a_m)` of B(ℂ, n).
    pub fn planar(parts: &[usize]) -> Result<Self, CellError> {
        Self::new(2, parts.iter().map(|&a| Block::Leaf(a)).collect())
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn parts(&self) -> &[Block] {
        &self.parts
    }

    pub fn points(&self) -> usize {
        self.parts.iter().map(Block::points).sum()
    }

    /// `n` plus the number of groups at all levels.
    pub fn dimension(&self) -> usize {
        self.points() + self.parts.iter().map(Block::groups).sum::<usize>()
    }

    fn labeled(&self) -> Vec<LBlock> {
        let mut next = 0;
        self.parts.iter().map(|b| LBlock::label(b, &mut next)).collect()
    }
}

impl fmt::Display for NestedCell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e({})", self.parts.iter().join(","))
    }
}

impl FromStr for NestedCell {
    type Err = CellError;

    /// Parses `e(2,1,1)` or the bracket notation `e([1],[1,1])`; `k` is one
    /// more than the nesting depth.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || CellError::Syntax(s.to_string());
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let inner = compact
            .strip_prefix("e(")
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(bad)?;
        let mut pos = 0;
        let bytes = inner.as_bytes();
        let parts = parse_blocks(bytes, &mut pos).ok_or_else(bad)?;
        if pos != bytes.len() || parts.is_empty() {
            return Err(bad());
        }
        let depth = uniform_depth(&parts).ok_or_else(bad)?;
        Self::new(depth + 1, parts)
    }
}

fn parse_blocks(s: &[u8], pos: &mut usize) -> Option<Vec<Block>> {
    let mut out = Vec::new();
    loop {
        match s.get(*pos)? {
            b'[' => {
                *pos += 1;
                let children = parse_blocks(s, pos)?;
                if s.get(*pos) != Some(&b']') {
                    return None;
                }
                *pos += 1;
                out.push(Block::Node(children));
            }
            c if c.is_ascii_digit() => {
                let start = *pos;
                while s.get(*pos).is_some_and(u8::is_ascii_digit) {
                    *pos += 1;
                }
                let v: usize = std::str::from_utf8(&s[start..*pos]).ok()?.parse().ok()?;
                out.push(Block::Leaf(v));
            }
            _ => return None,
        }
        match s.get(*pos) {
            Some(b',') => *pos += 1,
            _ => return Some(out),
        }
    }
}

/// Ordered compositions of `n`, lexicographic.
pub fn compositions(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    (1..=n)
        .flat_map(|a| {
            compositions(n - a).into_iter().map(move |mut rest| {
                rest.insert(0, a);
                rest
            })
        })
        .collect()
}

fn structures(n: usize, levels: usize) -> Vec<Vec<Block>> {
    compositions(n)
        .into_iter()
        .flat_map(|comp| {
            if levels == 1 {
                return vec![comp.into_iter().map(Block::Leaf).collect()];
            }
            comp.iter()
                .map(|&a| structures(a, levels - 1).into_iter().map(Block::Node).collect::<Vec<_>>())
                .multi_cartesian_product()
                .collect()
        })
        .collect()
}

fn check_supported(k: usize, n: usize) -> Result<(), CellError> {
    let ok = match k {
        2 => (1..=MAX_PLANAR_POINTS).contains(&n),
        3..=MAX_DEPTH => (1..=MAX_SPATIAL_POINTS).contains(&n),
        _ => false,
    };
    if ok {
        Ok(())
    } else {
        Err(CellError::Unsupported { k, n })
    }
}

/// All cells of B(ℝᵏ, n).
pub fn nested_cells(k: usize, n: usize) -> Result<Vec<NestedCell>, CellError> {
    check_supported(k, n)?;
    Ok(structures(n, k - 1).into_iter().map(|parts| NestedCell { k, parts }).collect())
}

/// Fuks cells of B(ℂ, n), one per ordered composition.
pub fn fuks_cells(n: usize) -> Result<Vec<NestedCell>, CellError> {
    if !(2..=MAX_PLANAR_POINTS).contains(&n) {
        return Err(CellError::Unsupported { k: 2, n });
    }
    nested_cells(2, n)
}

/// Cell with point labels attached.
#[derive(Clone, Debug, PartialEq, Eq)]
enum LBlock {
    Leaf(Vec<usize>),
    Node(Vec<LBlock>),
}

impl LBlock {
    fn label(b: &Block, next: &mut usize) -> Self {
        match b {
            Block::Leaf(a) => {
                let labels = (*next..*next + a).collect();
                *next += a;
                Self::Leaf(labels)
            }
            Block::Node(c) => Self::Node(c.iter().map(|x| Self::label(x, next)).collect()),
        }
    }

    fn shape(&self) -> Block {
        match self {
            Self::Leaf(l) => Block::Leaf(l.len()),
            Self::Node(c) => Block::Node(c.iter().map(Self::shape).collect()),
        }
    }

    fn leaf_mask(&self) -> u32 {
        match self {
            Self::Leaf(l) => l.iter().fold(0, |m, &p| m | 1 << p),
            Self::Node(c) => c.iter().fold(0, |m, x| m | x.leaf_mask()),
        }
    }

    fn push_leaves(&self, out: &mut Vec<usize>) {
        match self {
            Self::Leaf(l) => out.extend(l),
            Self::Node(c) => c.iter().for_each(|x| x.push_leaves(out)),
        }
    }

    /// Every merge of two adjacent groups: all shuffles of their contents.
    fn merges(a: &Self, b: &Self) -> Vec<Self> {
        match (a, b) {
            (Self::Leaf(x), Self::Leaf(y)) => shuffles(x, y).into_iter().map(Self::Leaf).collect(),
            (Self::Node(x), Self::Node(y)) => shuffles(x, y).into_iter().map(Self::Node).collect(),
            _ => unreachable!("siblings have equal depth"),
        }
    }
}

fn shuffles<X: Clone>(a: &[X], b: &[X]) -> Vec<Vec<X>> {
    let total = a.len() + b.len();
    (0..total)
        .combinations(a.len())
        .map(|left| {
            let (mut ai, mut bi) = (a.iter(), b.iter());
            (0..total)
                .map(|q| if left.contains(&q) { ai.next() } else { bi.next() }.expect("counts match").clone())
                .collect()
        })
        .collect()
}

/// Codimension-one faces of a labeled forest, tagged with the level at
/// which two groups merged.
fn labeled_faces(children: &[LBlock], depth: usize) -> Vec<(Vec<LBlock>, usize)> {
    let mut out = Vec::new();
    for i in 0..children.len().saturating_sub(1) {
        for merged in LBlock::merges(&children[i], &children[i + 1]) {
            let mut new = children[..i].to_vec();
            new.push(merged);
            new.extend_from_slice(&children[i + 2..]);
            out.push((new, depth));
        }
    }
    for (j, child) in children.iter().enumerate() {
        if let LBlock::Node(inner) = child {
            for (sub, d) in labeled_faces(inner, depth + 1) {
                let mut new = children.to_vec();
                new[j] = LBlock::Node(sub);
                out.push((new, d));
            }
        }
    }
    out
}

/// Groups at each level, in label order, as point-set bitmasks.
fn level_groups(children: &[LBlock]) -> Vec<Vec<u32>> {
    fn walk(children: &[LBlock], depth: usize, levels: &mut Vec<Vec<u32>>) {
        if levels.len() <= depth {
            levels.push(Vec::new());
        }
        for c in children {
            levels[depth].push(c.leaf_mask());
            if let LBlock::Node(inner) = c {
                walk(inner, depth + 1, levels);
            }
        }
    }
    let mut levels = Vec::new();
    walk(children, 0, &mut levels);
    levels
}

fn leaves(children: &[LBlock]) -> Vec<usize> {
    let mut out = Vec::new();
    children.iter().for_each(|c| c.push_leaves(&mut out));
    out
}

/// One term of a cellular boundary: `sign · ρ(σ)` times the face, where
/// `σ` sends the label of a point in the cell to its label in the face.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundaryTerm {
    pub face: NestedCell,
    pub sign: i64,
    pub sigma: Perm,
}

/// Boundary of a cell, one term per merge and shuffle.
pub fn boundary_terms(cell: &NestedCell) -> Vec<BoundaryTerm> {
    let labeled = cell.labeled();
    let e_levels = level_groups(&labeled);
    labeled_faces(&labeled, 0)
        .into_iter()
        .map(|(face, depth)| {
            let f_levels = level_groups(&face);
            let f_set = &f_levels[depth];
            // the right one of the two merged groups loses its coordinate
            let right = e_levels[depth]
                .iter()
                .rposition(|g| !f_set.contains(g))
                .expect("two groups merged");
            let before: usize = e_levels[..depth].iter().map(Vec::len).sum::<usize>() + right;
            let mut sign = if before % 2 == 0 { -1 } else { 1 };
            for t in (depth + 1)..e_levels.len() {
                let moved: Vec<usize> = e_levels[t]
                    .iter()
                    .map(|g| f_levels[t].iter().position(|h| h == g).expect("deeper groups survive"))
                    .collect();
                sign *= perm_sign(&moved);
            }
            let f_leaves = leaves(&face);
            let mut sigma = vec![0; f_leaves.len()];
            for (pos, &p) in f_leaves.iter().enumerate() {
                sigma[p] = pos;
            }
            sign *= perm_sign(&sigma) * ORIENTATION_CONSTANT;
            BoundaryTerm {
                face: NestedCell { k: cell.k, parts: face.iter().map(LBlock::shape).collect() },
                sign,
                sigma,
            }
        })
        .collect()
}

/// Boundary of a cell with coefficients in `rep`, summed per face:
/// `∂(e ⊗ v) = Σ face ⊗ (coefficient · v)`.
pub fn fuks_boundary(cell: &NestedCell, rep: &SnRepresentation) -> Result<Vec<(NestedCell, SmallMatrix)>, CellError> {
    if rep.n() != cell.points() {
        return Err(CellError::PointMismatch { rep: rep.n(), n: cell.points() });
    }
    let mut sums: BTreeMap<NestedCell, SmallMatrix> = BTreeMap::new();
    for term in boundary_terms(cell) {
        let m = rep.evaluate(&term.sigma).scale(term.sign);
        match sums.get_mut(&term.face) {
            Some(acc) => *acc = add(acc, &m),
            None => {
                sums.insert(term.face, m);
            }
        }
    }
    Ok(sums.into_iter().filter(|(_, m)| !m.is_zero()).collect())
}

fn add(a: &SmallMatrix, b: &SmallMatrix) -> SmallMatrix {
    SmallMatrix::from_rows(
        a.rows().iter().zip(b.rows()).map(|(x, y)| x.iter().zip(y).map(|(u, v)| u + v).collect()).collect(),
    )
}

/// Cellular chain complex of B(ℝᵏ, n) with coefficients in `rep`, in
/// absolute Borel–Moore degrees. Generators are cell ⊗ basis vector,
/// cells in enumeration order.
pub fn config_complex(k: usize, n: usize, rep: &SnRepresentation) -> Result<IntChainComplex, CellError> {
    check_supported(k, n)?;
    if rep.n() != n {
        return Err(CellError::PointMismatch { rep: rep.n(), n });
    }
    let cells = nested_cells(k, n)?;
    let dim = rep.dim();
    let by_dim = group_by_dimension(cells);
    let lo = *by_dim.keys().next().expect("at least one cell");
    let hi = *by_dim.keys().next_back().expect("at least one cell");
    let ranks = (lo..=hi).map(|d| by_dim.get(&d).map_or(0, Vec::len) * dim).collect();
    let mut complex = ChainComplex::new(lo as i64, ranks);

    for (&d, cells) in &by_dim {
        let labels = cells
            .iter()
            .flat_map(|c| (0..dim).map(move |i| if dim == 1 { c.to_string() } else { format!("{c}[{i}]") }))
            .collect();
        complex.set_labels(d as i64, labels);
        let Some(faces) = by_dim.get(&(d - 1)) else { continue };
        let row_of: BTreeMap<&NestedCell, usize> = faces.iter().enumerate().map(|(i, c)| (c, i)).collect();
        let blocks: Vec<Vec<(usize, usize, Int)>> = cells
            .par_iter()
            .enumerate()
            .map(|(j, cell)| {
                let mut out = Vec::new();
                for (face, m) in fuks_boundary(cell, rep)? {
                    let r = row_of[&face];
                    for (a, row) in m.rows().iter().enumerate() {
                        for (b, &v) in row.iter().enumerate() {
                            if v != 0 {
                                out.push((r * dim + a, j * dim + b, Int::from(v)));
                            }
                        }
                    }
                }
                Ok(out)
            })
            .collect::<Result<_, CellError>>()?;
        let m = SparseMatrix::from_triplets(faces.len() * dim, cells.len() * dim, blocks.into_iter().flatten())?;
        complex.set_boundary(d as i64, m)?;
    }
    Ok(complex)
}

fn group_by_dimension(cells: Vec<NestedCell>) -> BTreeMap<usize, Vec<NestedCell>> {
    let mut by_dim: BTreeMap<usize, Vec<NestedCell>> = BTreeMap::new();
    for c in cells {
        by_dim.entry(c.dimension()).or_default().push(c);
    }
    by_dim
}

/// Borel–Moore homology of B(ℝᵏ, n) with coefficients in `rep`.
pub fn config_homology(k: usize, n: usize, rep: &SnRepresentation) -> Result<GradedGroup, CellError> {
    Ok(config_complex(k, n, rep)?.homology()?)
}

/// Cell of the threefold matching cover of B(ℂ, 4): the base cell and the
/// 1-based label of the point matched with point 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct LabeledCell {
    #[serde(serialize_with = "crate::cells::serialize_display")]
    pub base: NestedCell,
    pub label: usize,
}

pub(crate) fn serialize_display<S: serde::Serializer, T: fmt::Display>(v: &T, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(v)
}

impl fmt::Display for LabeledCell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}_{}", self.base, self.label)
    }
}

impl FromStr for LabeledCell {
    type Err = CellError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (base, label) = s.rsplit_once('_').ok_or_else(|| CellError::Syntax(s.to_string()))?;
        let label: usize = label.parse().map_err(|_| CellError::Syntax(s.to_string()))?;
        let base: NestedCell = base.parse()?;
        if !(2..=4).contains(&label) || base.points() != 4 || base.k() != 2 {
            return Err(CellError::Syntax(s.to_string()));
        }
        Ok(Self { base, label })
    }
}

pub const COVER_LABELS: [usize; 3] = [2, 3, 4];

/// Boundary in the cover: each term lifts to the sheet whose matching is
/// carried along by the relabeling of points.
pub fn covering_boundary(cell: &LabeledCell) -> BTreeMap<LabeledCell, i64> {
    let mut out = BTreeMap::new();
    for term in boundary_terms(&cell.base) {
        let matched = matching_of_pair(term.sigma[0], term.sigma[cell.label - 1]);
        // partner of the first point of the face within the carried matching
        let partner = (1..4).find(|&q| matching_of_pair(0, q) == matched).expect("point 0 has a partner");
        *out.entry(LabeledCell { base: term.face, label: partner + 1 }).or_insert(0) += term.sign;
    }
    out.retain(|_, v| *v != 0);
    out
}

/// Generators of the cover per degree, in enumeration order.
pub fn covering_cells() -> BTreeMap<usize, Vec<LabeledCell>> {
    let mut out: BTreeMap<usize, Vec<LabeledCell>> = BTreeMap::new();
    for base in fuks_cells(4).expect("n = 4 supported") {
        for label in COVER_LABELS {
            out.entry(base.dimension()).or_default().push(LabeledCell { base: base.clone(), label });
        }
    }
    out
}

/// Constant-coefficient cellular complex of the threefold cover of B(ℂ, 4)
/// whose sheets over a configuration are the matchings of its points.
pub fn covering_complex() -> IntChainComplex {
    let cells = covering_cells();
    let lo = *cells.keys().next().expect("cells exist");
    let hi = *cells.keys().next_back().expect("cells exist");
    let mut complex = ChainComplex::new(lo as i64, (lo..=hi).map(|d| cells[&d].len()).collect());
    for (&d, gens) in &cells {
        complex.set_labels(d as i64, gens.iter().map(ToString::to_string).collect());
        let Some(faces) = cells.get(&(d - 1)) else { continue };
        let row_of: BTreeMap<&LabeledCell, usize> = faces.iter().enumerate().map(|(i, c)| (c, i)).collect();
        let triplets = gens.iter().enumerate().flat_map(|(j, c)| {
            covering_boundary(c).into_iter().map(|(f, v)| (row_of[&f], j, Int::from(v))).collect::<Vec<_>>()
        });
        let m = SparseMatrix::from_triplets(faces.len(), gens.len(), triplets).expect("indices in range");
        complex.set_boundary(d as i64, m).expect("shapes match");
    }
    complex
}

/// A linear combination of cover cells, e.g. `e(3,1)_3 - e(2,2)_3 + e(2,2)_4`
/// or `2(e(4)_2 - e(4)_3)`.
pub fn parse_cover_chain(s: &str) -> Result<BTreeMap<LabeledCell, i64>, CellError> {
    let bad = || CellError::Syntax(s.to_string());
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let (factor, body) = match compact.find('(') {
        Some(i) if i > 0 && compact[..i].chars().all(|c| c.is_ascii_digit()) && compact.ends_with(')') && !compact[..i].is_empty() => {
            (compact[..i].parse::<i64>().map_err(|_| bad())?, compact[i + 1..compact.len() - 1].to_string())
        }
        _ => (1, compact.clone()),
    };
    let mut out = BTreeMap::new();
    if body == "0" {
        return Ok(out);
    }
    let mut rest = body.as_str();
    while !rest.is_empty() {
        let (sign, after) = match rest.as_bytes()[0] {
            b'+' => (1, &rest[1..]),
            b'-' => (-1, &rest[1..]),
            _ => (1, rest),
        };
        let digits = after.chars().take_while(|c| c.is_ascii_digit()).count();
        let coeff: i64 = if digits == 0 { 1 } else { after[..digits].parse().map_err(|_| bad())? };
        let after = &after[digits..];
        let close = after.find(')').ok_or_else(bad)?;
        let label_len = after[close + 1..].chars().take_while(|&c| c == '_' || c.is_ascii_digit()).count();
        let term = &after[..close + 1 + label_len];
        let cell: LabeledCell = term.parse()?;
        *out.entry(cell).or_insert(0) += sign * coeff * factor;
        rest = &after[term.len()..];
    }
    out.retain(|_, v| *v != 0);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::local_systems::{matching_rep, matching_rep_hat, sign, trivial};
    use crate::AbelianGroup;

    fn graded(pairs: &[(i64, &str)]) -> GradedGroup {
        GradedGroup::from_pairs(pairs.iter().map(|(d, s)| (*d, s.parse::<AbelianGroup>().unwrap())))
    }

    #[test]
    fn planar_cell_counts() {
        let cells = fuks_cells(4).unwrap();
        assert_eq!(cells.len(), 8);
        let dims: Vec<usize> = cells.iter().map(NestedCell::dimension).collect();
        assert_eq!(dims.iter().filter(|&&d| d == 7).count(), 3);
        assert_eq!(NestedCell::planar(&[4]).unwrap().dimension(), 5);
        let two: Vec<String> = fuks_cells(2).unwrap().iter().map(|c| format!("{c}:{}", c.dimension())).collect();
        assert_eq!(two, vec!["e(1,1):4", "e(2):3"]);
        assert!(fuks_cells(7).is_err());
    }

    #[test]
    fn cell_names_round_trip() {
        for k in 2..=4 {
            for c in nested_cells(k, 3).unwrap() {
                assert_eq!(c.to_string().parse::<NestedCell>().unwrap(), c);
            }
        }
        let c: NestedCell = "e([[1],[1,1]])".parse().unwrap();
        assert_eq!((c.k(), c.points(), c.dimension()), (4, 3, 3 + 1 + 2 + 3));
        assert!("e([1],2)".parse::<NestedCell>().is_err());
    }

    #[test]
    fn spatial_cell_counts() {
        let mut counts = BTreeMap::new();
        for c in nested_cells(4, 3).unwrap() {
            *counts.entry(c.dimension()).or_insert(0) += 1;
        }
        assert_eq!(counts.into_iter().collect::<Vec<_>>(), vec![(6, 1), (7, 2), (8, 3), (9, 4), (10, 3), (11, 2), (12, 1)]);
    }

    #[test]
    fn planar_homology() {
        assert_eq!(config_homology(2, 3, &sign(3).unwrap()).unwrap(), graded(&[(5, "Z_2"), (4, "Z_3")]));
        assert_eq!(config_homology(2, 2, &sign(2).unwrap()).unwrap(), graded(&[(3, "Z_2")]));
        assert_eq!(config_homology(2, 4, &trivial(4).unwrap()).unwrap(), graded(&[(8, "Z"), (7, "Z"), (5, "Z_2")]));
        assert_eq!(config_homology(2, 4, &matching_rep().clone()).unwrap(), graded(&[(7, "Z"), (6, "Z+Z_2"), (5, "Z_2")]));
        assert_eq!(
            config_homology(2, 4, &matching_rep_hat()).unwrap(),
            graded(&[(8, "Z"), (7, "Z^2"), (6, "Z+Z_2"), (5, "Z_2^2")])
        );
    }

    #[test]
    fn spatial_homology() {
        assert_eq!(config_homology(4, 2, &sign(2).unwrap()).unwrap(), graded(&[(7, "Z_2"), (5, "Z_2")]));
        assert_eq!(
            config_homology(4, 3, &sign(3).unwrap()).unwrap(),
            graded(&[(11, "Z_2"), (10, "Z_3"), (9, "Z_2"), (6, "Z_3")])
        );
        assert!(config_homology(3, 4, &sign(4).unwrap()).is_err());
    }

    #[test]
    fn cover_matches_hat_coefficients() {
        let cover = covering_complex().homology().unwrap();
        assert_eq!(cover, config_homology(2, 4, &matching_rep_hat()).unwrap());
    }

    #[test]
    fn printed_examples() {
        let e = |s: &str| s.parse::<LabeledCell>().unwrap();
        assert_eq!(covering_boundary(&e("e(2,1,1)_3")), parse_cover_chain("e(3,1)_3 - e(2,2)_3 + e(2,2)_4").unwrap());
        assert_eq!(covering_boundary(&e("e(2,2)_3")), parse_cover_chain("2e(4)_3").unwrap());
        assert!(covering_boundary(&e("e(3,1)_3")).is_empty());
        assert_eq!(
            parse_cover_chain("2(e(4)_2 - e(4)_3 + e(4)_4)").unwrap().values().copied().collect::<Vec<_>>(),
            vec![2, -2, 2]
        );
    }
}
