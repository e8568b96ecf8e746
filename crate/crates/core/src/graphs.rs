//! Complexes of connected and two-connected graphs on labeled vertices.
//!
//! A graph with `e` edges on vertices `1..=a` is a face of dimension `e - 1`
//! of the simplex spanned by all `C(a, 2)` edges. Faces are oriented by the
//! lexicographic order of their edges, and the complex keeps only graphs
//! satisfying the predicate (deleting an edge that breaks it contributes
//! zero).

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::linalg::{ChainComplex, LinalgError, SparseMatrix};
use crate::{Int, IntChainComplex};
use crate::local_systems::{self, perm_sign, Perm, SmallMatrix, SnRepresentation, MATCHINGS};

/// Largest vertex count handled at all.
pub const MAX_VERTICES: usize = 7;
/// Largest vertex count built without opting in.
pub const DEFAULT_MAX_VERTICES: usize = 5;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GraphError {
    #[error("vertex count {0} outside 2..=7")]
    OutOfRange(usize),
    #[error("vertex count {0} needs the large-graph opt-in")]
    NeedsOptIn(usize),
    #[error("unknown graph predicate {0:?}; expected connected or 2connected")]
    UnknownPredicate(String),
    #[error("malformed graph {0:?}")]
    Syntax(String),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error("{0}")]
    NotInSpan(String),
}

/// Edge `i` of the lexicographic list `12, 13, …, 1a, 23, …`.
pub fn edge_list(a: usize) -> Vec<(usize, usize)> {
    (0..a).flat_map(|i| ((i + 1)..a).map(move |j| (i, j))).collect()
}

fn edge_index(a: usize, i: usize, j: usize) -> usize {
    let (i, j) = if i < j { (i, j) } else { (j, i) };
    // edges before row i, then offset within the row
    i * a - i * (i + 1) / 2 + (j - i - 1)
}

/// Simple graph on vertices `0..a`, edges as a bitmask over [`edge_list`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SimpleGraph {
    a: usize,
    edges: u32,
}

impl SimpleGraph {
    pub fn new(a: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        if !(2..=MAX_VERTICES).contains(&a) {
            return Err(GraphError::OutOfRange(a));
        }
        let mut mask = 0u32;
        for &(i, j) in edges {
            if i == j || i >= a || j >= a {
                return Err(GraphError::Syntax(format!("edge ({i}, {j}) on {a} vertices")));
            }
            mask |= 1 << edge_index(a, i, j);
        }
        Ok(Self { a, edges: mask })
    }

    pub fn complete(a: usize) -> Self {
        let n = a * (a - 1) / 2;
        Self { a, edges: ((1u64 << n) - 1) as u32 }
    }

    pub fn vertex_count(&self) -> usize {
        self.a
    }

    pub fn edge_count(&self) -> usize {
        self.edges.count_ones() as usize
    }

    /// Edges in lexicographic order, 0-based endpoints.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        edge_list(self.a)
            .into_iter()
            .enumerate()
            .filter(|(k, _)| self.edges >> k & 1 == 1)
            .map(|(_, e)| e)
            .collect()
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.edges >> edge_index(self.a, i, j) & 1 == 1
    }

    pub fn without_edge(&self, i: usize, j: usize) -> Self {
        Self { a: self.a, edges: self.edges & !(1 << edge_index(self.a, i, j)) }
    }

    fn adjacency(&self) -> Vec<u32> {
        let mut adj = vec![0u32; self.a];
        for (i, j) in self.edges() {
            adj[i] |= 1 << j;
            adj[j] |= 1 << i;
        }
        adj
    }

    /// Connectivity of the graph induced on the vertices of `alive`.
    fn connected_on(&self, adj: &[u32], alive: u32) -> bool {
        if alive == 0 {
            return true;
        }
        let start = alive.trailing_zeros();
        let mut seen = 1u32 << start;
        let mut frontier = seen;
        while frontier != 0 {
            let v = frontier.trailing_zeros() as usize;
            frontier &= frontier - 1;
            let new = adj[v] & alive & !seen;
            seen |= new;
            frontier |= new;
        }
        seen == alive
    }

    pub fn is_connected(&self) -> bool {
        let all = (1u32 << self.a) - 1;
        self.connected_on(&self.adjacency(), all)
    }

    /// Connected, and stays connected after deleting any one vertex.
    pub fn is_two_connected(&self) -> bool {
        let adj = self.adjacency();
        let all = (1u32 << self.a) - 1;
        self.connected_on(&adj, all) && (0..self.a).all(|v| self.connected_on(&adj, all & !(1 << v)))
    }

    /// Image under a vertex permutation, with the sign of the reordering of
    /// edges needed to restore lexicographic orientation.
    pub fn permuted(&self, sigma: &[usize]) -> (Self, i64) {
        let moved: Vec<usize> = self
            .edges()
            .into_iter()
            .map(|(i, j)| edge_index(self.a, sigma[i], sigma[j]))
            .collect();
        let mut sorted = moved.clone();
        sorted.sort_unstable();
        let order: Vec<usize> = moved.iter().map(|e| sorted.binary_search(e).expect("present")).collect();
        let mask = moved.iter().fold(0u32, |m, &e| m | 1 << e);
        (Self { a: self.a, edges: mask }, perm_sign(&order))
    }
}

impl fmt::Display for SimpleGraph {
    /// Edge-list notation with 1-based vertices, e.g. `12,13,24`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.edges().iter().map(|(i, j)| format!("{}{}", i + 1, j + 1)).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl SimpleGraph {
    /// Parses edge-list notation on `a` vertices.
    pub fn parse(a: usize, s: &str) -> Result<Self, GraphError> {
        let bad = || GraphError::Syntax(s.to_string());
        let mut edges = Vec::new();
        for tok in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            let digits: Vec<usize> = tok
                .chars()
                .map(|c| c.to_digit(10).map(|d| d as usize).ok_or_else(bad))
                .collect::<Result<_, _>>()?;
            match digits[..] {
                [i, j] if i >= 1 && j >= 1 => edges.push((i - 1, j - 1)),
                _ => return Err(bad()),
            }
        }
        Self::new(a, &edges)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum GraphPredicate {
    Connected,
    TwoConnected,
}

impl GraphPredicate {
    pub fn holds(self, g: &SimpleGraph) -> bool {
        match self {
            Self::Connected => g.is_connected(),
            Self::TwoConnected => g.is_two_connected(),
        }
    }
}

impl FromStr for GraphPredicate {
    type Err = GraphError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "connected" => Ok(Self::Connected),
            "2connected" | "two-connected" | "two_connected" => Ok(Self::TwoConnected),
            _ => Err(GraphError::UnknownPredicate(s.to_string())),
        }
    }
}

impl fmt::Display for GraphPredicate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Connected => "connected",
            Self::TwoConnected => "2connected",
        })
    }
}

/// Graph complex together with its generators per degree.
#[derive(Clone, Debug)]
pub struct GraphComplex {
    pub a: usize,
    pub predicate: GraphPredicate,
    pub generators: Vec<Vec<SimpleGraph>>,
    pub complex: IntChainComplex,
}

impl GraphComplex {
    /// Generators of degree `d` (graphs with `d + 1` edges).
    pub fn generators_at(&self, d: i64) -> &[SimpleGraph] {
        usize::try_from(d).ok().and_then(|d| self.generators.get(d)).map_or(&[], Vec::as_slice)
    }

    pub fn index_of(&self, g: &SimpleGraph) -> Option<usize> {
        self.generators_at(g.edge_count() as i64 - 1).binary_search_by(|h| edge_order(h).cmp(&edge_order(g))).ok()
    }
}

fn edge_order(g: &SimpleGraph) -> Vec<(usize, usize)> {
    g.edges()
}

/// Builds the complex of graphs on `a` vertices satisfying `predicate`.
/// Vertex counts 6 and 7 require `allow_large`.
pub fn graph_complex(a: usize, predicate: GraphPredicate, allow_large: bool) -> Result<GraphComplex, GraphError> {
    if !(2..=MAX_VERTICES).contains(&a) {
        return Err(GraphError::OutOfRange(a));
    }
    if a > DEFAULT_MAX_VERTICES && !allow_large {
        return Err(GraphError::NeedsOptIn(a));
    }
    let n_edges = a * (a - 1) / 2;
    let masks: Vec<u32> = (1u32..(1u32 << n_edges)).collect();
    let mut kept: Vec<SimpleGraph> = masks
        .par_iter()
        .map(|&edges| SimpleGraph { a, edges })
        .filter(|g| predicate.holds(g))
        .collect();
    kept.sort_by_cached_key(|g| (g.edge_count(), edge_order(g)));

    let mut generators: Vec<Vec<SimpleGraph>> = vec![Vec::new(); n_edges];
    for g in kept {
        generators[g.edge_count() - 1].push(g);
    }
    while generators.last().is_some_and(Vec::is_empty) {
        generators.pop();
    }
    let lo = generators.iter().position(|v| !v.is_empty()).unwrap_or(0);
    let ranks: Vec<usize> = generators[lo..].iter().map(Vec::len).collect();
    let mut complex = ChainComplex::new(lo as i64, ranks);

    for d in (lo + 1)..generators.len() {
        let targets: HashMap<u32, usize> =
            generators[d - 1].iter().enumerate().map(|(i, g)| (g.edges, i)).collect();
        let triplets: Vec<(usize, usize, Int)> = generators[d]
            .par_iter()
            .enumerate()
            .flat_map_iter(|(col, g)| {
                let targets = &targets;
                g.edges().into_iter().enumerate().filter_map(move |(pos, (i, j))| {
                    let face = g.without_edge(i, j);
                    let sign = if pos % 2 == 0 { 1 } else { -1 };
                    targets.get(&face.edges).map(|&row| (row, col, Int::from(sign)))
                })
            })
            .collect();
        let m = SparseMatrix::from_triplets(generators[d - 1].len(), generators[d].len(), triplets)?;
        complex.set_boundary(d as i64, m)?;
    }
    for (d, gens) in generators.iter().enumerate().skip(lo) {
        complex.set_labels(d as i64, gens.iter().map(ToString::to_string).collect());
    }
    Ok(GraphComplex { a, predicate, generators, complex })
}

/// Chain on graphs as `(graph, coefficient)` terms.
pub type GraphChain = Vec<(SimpleGraph, i64)>;

/// The three degree-4 cycles of the two-connected complex on four vertices,
/// one per matching (basis order `12|34`, `13|24`, `14|23`): the part of
/// the boundary of the complete graph that deletes an edge of the matching.
pub fn matching_basis() -> [GraphChain; 3] {
    let k4 = SimpleGraph::complete(4);
    let edges = k4.edges();
    MATCHINGS.map(|m| {
        m.iter()
            .map(|&[x, y]| {
                let pos = edges.iter().position(|&e| e == (x, y)).expect("edge of K4");
                (k4.without_edge(x, y), if pos % 2 == 0 { 1 } else { -1 })
            })
            .collect()
    })
}

/// Boundary of the complete graph on four vertices, as a chain.
pub fn complete_graph_boundary() -> GraphChain {
    let k4 = SimpleGraph::complete(4);
    k4.edges()
        .into_iter()
        .enumerate()
        .map(|(pos, (x, y))| (k4.without_edge(x, y), if pos % 2 == 0 { 1 } else { -1 }))
        .collect()
}

/// Dense coefficient vector of a chain in degree `d` of `gc`.
pub fn chain_vector(gc: &GraphComplex, chain: &GraphChain) -> Vec<Int> {
    let d = chain.first().map_or(0, |(g, _)| g.edge_count() as i64 - 1);
    let mut v = vec![Int::from(0); gc.generators_at(d).len()];
    for (g, c) in chain {
        let i = gc.index_of(g).expect("graph is a generator");
        v[i] += *c;
    }
    v
}

#[derive(Clone, Debug, Serialize)]
pub struct SymmetryAction {
    pub permutation: Perm,
    /// Action on the three matching chains.
    pub chain_matrix: SmallMatrix,
    /// Action on H₄ in the basis of the first two matching chains.
    pub homology_matrix: SmallMatrix,
}

/// Action of a vertex permutation on the matching chains.
pub fn act_on_matching_chains(sigma: &[usize]) -> Result<SymmetryAction, GraphError> {
    let basis = matching_basis();
    // each five-edge graph lies in exactly one matching chain
    let owner = |g: &SimpleGraph| -> (usize, i64) {
        for (m, chain) in basis.iter().enumerate() {
            if let Some((_, c)) = chain.iter().find(|(h, _)| h == g) {
                return (m, *c);
            }
        }
        unreachable!("five-edge graph on four vertices")
    };
    let mut rows = vec![vec![0i64; 3]; 3];
    for (j, chain) in basis.iter().enumerate() {
        let mut coeff: Option<(usize, i64)> = None;
        for (g, c) in chain {
            let (h, s) = g.permuted(sigma);
            let (m, base) = owner(&h);
            let k = c * s * base;
            match coeff {
                None => coeff = Some((m, k)),
                Some(prev) if prev == (m, k) => {}
                Some(_) => {
                    return Err(GraphError::NotInSpan(format!(
                        "image of matching chain {j} under {sigma:?} is not a multiple of one chain"
                    )))
                }
            }
        }
        let (m, k) = coeff.expect("chains are nonempty");
        rows[m][j] = k;
    }
    let chain_matrix = SmallMatrix::from_rows(rows);
    // quotient by the sum of the three chains, which is a boundary
    let q = |v: [i64; 3]| [v[0] - v[2], v[1] - v[2]];
    let c0 = q([chain_matrix.get(0, 0), chain_matrix.get(1, 0), chain_matrix.get(2, 0)]);
    let c1 = q([chain_matrix.get(0, 1), chain_matrix.get(1, 1), chain_matrix.get(2, 1)]);
    let homology_matrix = SmallMatrix::from_rows(vec![vec![c0[0], c1[0]], vec![c0[1], c1[1]]]);
    Ok(SymmetryAction { permutation: sigma.to_vec(), chain_matrix, homology_matrix })
}

/// Action of every transposition of S(4) on H₄ of the two-connected complex.
pub fn symmetry_action_on_homology() -> Result<Vec<SymmetryAction>, GraphError> {
    let mut out = Vec::new();
    for x in 0..4 {
        for y in (x + 1)..4 {
            let mut t: Perm = (0..4).collect();
            t.swap(x, y);
            out.push(act_on_matching_chains(&t)?);
        }
    }
    Ok(out)
}

/// The homology action packaged as a representation of S(4).
pub fn homology_representation() -> Result<SnRepresentation, GraphError> {
    let generators = (0..3)
        .map(|i| act_on_matching_chains(&local_systems::adjacent(4, i)).map(|a| a.homology_matrix))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(SnRepresentation::new(4, "H4(two-connected graphs)", generators).expect("n = 4"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::AbelianGroup;

    #[test]
    fn edge_indices_match_list() {
        for a in 2..=7 {
            for (k, (i, j)) in edge_list(a).into_iter().enumerate() {
                assert_eq!(edge_index(a, i, j), k);
            }
        }
    }

    #[test]
    fn predicates() {
        let cycle = SimpleGraph::parse(4, "12,23,34,14").unwrap();
        assert!(cycle.is_two_connected());
        let path = SimpleGraph::parse(3, "12,23").unwrap();
        assert!(path.is_connected() && !path.is_two_connected());
        let pair = SimpleGraph::parse(4, "12,34").unwrap();
        assert!(!pair.is_connected());
        assert_eq!(cycle.to_string(), "12,14,23,34");
    }

    #[test]
    fn small_complexes() {
        let gc = graph_complex(2, GraphPredicate::Connected, false).unwrap();
        assert_eq!(gc.complex.homology().unwrap().get(0), AbelianGroup::free(1));
        let gc = graph_complex(4, GraphPredicate::Connected, false).unwrap();
        let h = gc.complex.homology().unwrap();
        assert_eq!(h.iter().collect::<Vec<_>>(), vec![(2, &AbelianGroup::free(6))]);
        let gc = graph_complex(4, GraphPredicate::TwoConnected, false).unwrap();
        let h = gc.complex.homology().unwrap();
        assert_eq!(h.iter().collect::<Vec<_>>(), vec![(4, &AbelianGroup::free(2))]);
        assert!(matches!(graph_complex(6, GraphPredicate::Connected, false), Err(GraphError::NeedsOptIn(6))));
        assert!(matches!(graph_complex(8, GraphPredicate::Connected, true), Err(GraphError::OutOfRange(8))));
    }

    #[test]
    fn matching_chains() {
        let gc = graph_complex(4, GraphPredicate::TwoConnected, false).unwrap();
        let basis = matching_basis();
        let names: Vec<String> = basis.iter().map(|c| format!("{}|{}", c[0].0, c[1].0)).collect();
        assert_eq!(names[0], "13,14,23,24,34|12,13,14,23,24");
        let vs: Vec<Vec<Int>> = basis.iter().map(|c| chain_vector(&gc, c)).collect();
        let sum: Vec<Int> = (0..vs[0].len()).map(|i| vs.iter().map(|v| v[i].clone()).sum()).collect();
        assert_eq!(sum, chain_vector(&gc, &complete_graph_boundary()));
        for pair in [[0, 1], [0, 2], [1, 2]] {
            let chosen = [vs[pair[0]].clone(), vs[pair[1]].clone()];
            assert!(gc.complex.spans_homology(4, &chosen).unwrap());
        }
        assert!(!gc.complex.spans_homology(4, &[vs[0].clone()]).unwrap());
    }

    #[test]
    fn action_matches_matching_representation() {
        let rep = homology_representation().unwrap();
        assert!(rep.validate().is_empty());
        assert_eq!(rep, SnRepresentation::new(4, rep.name(), (0..3).map(|i| local_systems::matching_rep().generator(i).clone()).collect()).unwrap());
        for act in symmetry_action_on_homology().unwrap() {
            assert_eq!(act.chain_matrix, local_systems::matching_rep_hat().evaluate(&act.permutation));
        }
        let id = act_on_matching_chains(&[0, 1, 2, 3]).unwrap();
        assert_eq!(id.homology_matrix, SmallMatrix::identity(2));
    }
}
