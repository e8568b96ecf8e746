//! Integer representations of the symmetric groups, presented by the images
//! of the adjacent transpositions. Every local system on a configuration
//! space used here factors through such a representation.

use std::fmt;

use itertools::Itertools;
use serde::Serialize;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RepError {
    #[error("unknown local system {0:?}; expected one of Z, sign, A2, A2hat, sign⊗A2")]
    UnknownName(String),
    #[error("{name} is defined on S(4) only, got n = {n}")]
    NeedsFourPoints { name: String, n: usize },
    #[error("cannot combine representations of S({0}) and S({1})")]
    DegreeMismatch(usize, usize),
    #[error("S(n) needs n ≥ 2, got {0}")]
    TooFewPoints(usize),
}

/// Square integer matrix, row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct SmallMatrix(Vec<Vec<i64>>);

impl SmallMatrix {
    pub fn identity(n: usize) -> Self {
        Self((0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect())
    }

    pub fn from_rows(rows: Vec<Vec<i64>>) -> Self {
        assert!(rows.iter().all(|r| r.len() == rows.len()), "matrix must be square");
        Self(rows)
    }

    pub fn scalar(v: i64) -> Self {
        Self(vec![vec![v]])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.0[i][j]
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.0
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let n = self.dim();
        Self(
            (0..n)
                .map(|i| (0..n).map(|j| (0..n).map(|k| self.0[i][k] * rhs.0[k][j]).sum()).collect())
                .collect(),
        )
    }

    pub fn scale(&self, s: i64) -> Self {
        Self(self.0.iter().map(|r| r.iter().map(|v| v * s).collect()).collect())
    }

    pub fn trace(&self) -> i64 {
        (0..self.dim()).map(|i| self.0[i][i]).sum()
    }

    pub fn kron(&self, rhs: &Self) -> Self {
        let (a, b) = (self.dim(), rhs.dim());
        Self(
            (0..a * b)
                .map(|i| (0..a * b).map(|j| self.0[i / b][j / b] * rhs.0[i % b][j % b]).collect())
                .collect(),
        )
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().flatten().all(|&v| v == 0)
    }
}

/// A permutation of `0..n`, `p[i]` the image of `i`.
pub type Perm = Vec<usize>;

/// Composition `a ∘ b` (apply `b` first).
pub fn compose(a: &[usize], b: &[usize]) -> Perm {
    b.iter().map(|&x| a[x]).collect()
}

pub fn perm_sign(p: &[usize]) -> i64 {
    let inversions = (0..p.len())
        .flat_map(|i| ((i + 1)..p.len()).map(move |j| (i, j)))
        .filter(|&(i, j)| p[i] > p[j])
        .count();
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Adjacent transposition swapping `i` and `i + 1`.
pub fn adjacent(n: usize, i: usize) -> Perm {
    let mut p: Perm = (0..n).collect();
    p.swap(i, i + 1);
    p
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SnRepresentation {
    n: usize,
    name: String,
    generators: Vec<SmallMatrix>,
}

impl SnRepresentation {
    /// `generators[i]` is the image of the transposition `(i, i+1)`.
    pub fn new(n: usize, name: impl Into<String>, generators: Vec<SmallMatrix>) -> Result<Self, RepError> {
        if n < 2 {
            return Err(RepError::TooFewPoints(n));
        }
        assert_eq!(generators.len(), n - 1, "one generator per adjacent transposition");
        let d = generators[0].dim();
        assert!(generators.iter().all(|g| g.dim() == d), "generators must share a dimension");
        Ok(Self { n, name: name.into(), generators })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.generators[0].dim()
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn generator(&self, i: usize) -> &SmallMatrix {
        &self.generators[i]
    }

    /// Image of an arbitrary permutation, through a bubble-sort factorization
    /// into adjacent transpositions.
    pub fn evaluate(&self, sigma: &[usize]) -> SmallMatrix {
        assert_eq!(sigma.len(), self.n, "permutation of the wrong degree");
        let mut current = sigma.to_vec();
        let mut word = Vec::new();
        // current ∘ s_i swaps the values at positions i and i+1
        while let Some(i) = (0..self.n - 1).find(|&i| current[i] > current[i + 1]) {
            current.swap(i, i + 1);
            word.push(i);
        }
        // sigma = s_{w_m} ∘ … ∘ s_{w_1}
        word.iter()
            .rev()
            .fold(SmallMatrix::identity(self.dim()), |acc, &i| acc.mul(&self.generators[i]))
    }

    /// Violated defining relations of S(n); empty when the generators
    /// define a representation.
    pub fn validate(&self) -> Vec<String> {
        let id = SmallMatrix::identity(self.dim());
        let g = &self.generators;
        let mut out = Vec::new();
        for i in 0..g.len() {
            if g[i].mul(&g[i]) != id {
                out.push(format!("s{}^2 != 1", i + 1));
            }
            if i + 1 < g.len() {
                let lhs = g[i].mul(&g[i + 1]).mul(&g[i]);
                let rhs = g[i + 1].mul(&g[i]).mul(&g[i + 1]);
                if lhs != rhs {
                    out.push(format!("s{0} s{1} s{0} != s{1} s{0} s{1}", i + 1, i + 2));
                }
            }
            for j in (i + 2)..g.len() {
                if g[i].mul(&g[j]) != g[j].mul(&g[i]) {
                    out.push(format!("s{} s{} != s{} s{}", i + 1, j + 1, j + 1, i + 1));
                }
            }
        }
        out
    }

    pub fn tensor(&self, other: &Self) -> Result<Self, RepError> {
        if self.n != other.n {
            return Err(RepError::DegreeMismatch(self.n, other.n));
        }
        let generators = self.generators.iter().zip(&other.generators).map(|(a, b)| a.kron(b)).collect();
        Self::new(self.n, format!("{}⊗{}", self.name, other.name), generators)
    }

    pub fn character(&self, sigma: &[usize]) -> i64 {
        self.evaluate(sigma).trace()
    }
}

impl fmt::Display for SnRepresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (S({}), rank {})", self.name, self.n, self.dim())
    }
}

pub fn trivial(n: usize) -> Result<SnRepresentation, RepError> {
    SnRepresentation::new(n, "Z", vec![SmallMatrix::scalar(1); n.saturating_sub(1).max(1)])
}

pub fn sign(n: usize) -> Result<SnRepresentation, RepError> {
    SnRepresentation::new(n, "sign", vec![SmallMatrix::scalar(-1); n.saturating_sub(1).max(1)])
}

/// The three perfect matchings of `{0, 1, 2, 3}`, in the basis order
/// `01|23`, `02|13`, `03|12`.
pub const MATCHINGS: [[[usize; 2]; 2]; 3] = [[[0, 1], [2, 3]], [[0, 2], [1, 3]], [[0, 3], [1, 2]]];

/// Index of the matching containing the pair `{x, y}`.
pub fn matching_of_pair(x: usize, y: usize) -> usize {
    let (a, b) = if x < y { (x, y) } else { (y, x) };
    MATCHINGS
        .iter()
        .position(|m| m.contains(&[a, b]))
        .expect("every pair of distinct points in 0..4 lies in one matching")
}

/// Image of matching `m` under `sigma`: the induced map S(4) → S(3).
pub fn matching_permutation(sigma: &[usize]) -> Perm {
    (0..3)
        .map(|m| {
            let [x, y] = MATCHINGS[m][0];
            matching_of_pair(sigma[x], sigma[y])
        })
        .collect()
}

fn permutation_matrix(p: &[usize]) -> SmallMatrix {
    let n = p.len();
    let mut rows = vec![vec![0; n]; n];
    for (j, &i) in p.iter().enumerate() {
        rows[i][j] = 1;
    }
    SmallMatrix(rows)
}

/// Permutation action of S(4) on the three matchings (Â₂).
pub fn matching_rep_hat() -> SnRepresentation {
    let generators = (0..3).map(|i| permutation_matrix(&matching_permutation(&adjacent(4, i)))).collect();
    SnRepresentation::new(4, "A2hat", generators).expect("n = 4")
}

/// Reduction of a vector of Z³ to the quotient lattice Z³/(1,1,1) in the
/// basis given by the images of the first two basis vectors.
fn to_quotient(v: &[i64]) -> [i64; 2] {
    [v[0] - v[2], v[1] - v[2]]
}

fn quotient_matrix(m: &SmallMatrix) -> SmallMatrix {
    let cols: Vec<[i64; 2]> = (0..2)
        .map(|j| to_quotient(&[m.get(0, j), m.get(1, j), m.get(2, j)]))
        .collect();
    SmallMatrix(vec![vec![cols[0][0], cols[1][0]], vec![cols[0][1], cols[1][1]]])
}

/// The rank-2 lattice A₂: Â₂ modulo its invariant all-ones vector.
pub fn matching_rep() -> SnRepresentation {
    let hat = matching_rep_hat();
    let generators = hat.generators.iter().map(quotient_matrix).collect();
    SnRepresentation::new(4, "A2", generators).expect("n = 4")
}

pub const REGISTRY_NAMES: [&str; 5] = ["Z", "sign", "A2", "A2hat", "sign⊗A2"];

/// Looks up a local system by its CLI name. ASCII spellings `trivial`,
/// `sign*A2` and `sign(x)A2` are accepted as aliases.
pub fn by_name(name: &str, n: usize) -> Result<SnRepresentation, RepError> {
    let four = |rep: SnRepresentation| {
        if n == 4 {
            Ok(rep)
        } else {
            Err(RepError::NeedsFourPoints { name: name.to_string(), n })
        }
    };
    match name {
        "Z" | "trivial" => trivial(n),
        "sign" | "±Z" => sign(n),
        "A2" => four(matching_rep()),
        "A2hat" => four(matching_rep_hat()),
        "sign⊗A2" | "sign*A2" | "sign(x)A2" => {
            if n != 4 {
                return four(matching_rep());
            }
            sign(4)?.tensor(&matching_rep())
        }
        _ => Err(RepError::UnknownName(name.to_string())),
    }
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct ExactTripleReport {
    pub diagonal_fixed: bool,
    pub quotient_matches: bool,
    pub characters_add: bool,
}

impl ExactTripleReport {
    pub fn ok(&self) -> bool {
        self.diagonal_fixed && self.quotient_matches && self.characters_add
    }
}

/// Checks `0 → Z → Â₂ → A₂ → 0` for the matching representations.
pub fn exact_triple_check() -> ExactTripleReport {
    let hat = matching_rep_hat();
    let quotient = matching_rep();
    let triv = trivial(4).expect("n = 4");
    let diagonal_fixed = hat.generators.iter().all(|g| {
        (0..3).all(|i| (0..3).map(|j| g.get(i, j)).sum::<i64>() == 1)
    });
    let quotient_matches = hat
        .generators
        .iter()
        .zip(&quotient.generators)
        .all(|(g, q)| {
            // q(π(e_j)) = π(g e_j) for each basis vector of Z³
            (0..3).all(|j| {
                let column: Vec<i64> = (0..3).map(|i| g.get(i, j)).collect();
                let unit: Vec<i64> = (0..3).map(|i| i64::from(i == j)).collect();
                let pj = to_quotient(&unit);
                let lhs = [q.get(0, 0) * pj[0] + q.get(0, 1) * pj[1], q.get(1, 0) * pj[0] + q.get(1, 1) * pj[1]];
                lhs == to_quotient(&column)
            })
        });
    let characters_add = (0..4).tuple_combinations().all(|(x, y)| {
        let mut t: Perm = (0..4).collect();
        t.swap(x, y);
        hat.character(&t) == triv.character(&t) + quotient.character(&t)
    });
    ExactTripleReport { diagonal_fixed, quotient_matches, characters_add }
}

/// All permutations of `0..n` in lexicographic order.
pub fn all_permutations(n: usize) -> Vec<Perm> {
    (0..n).permutations(n).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtins_validate() {
        for n in 2..=6 {
            assert!(trivial(n).unwrap().validate().is_empty());
            assert!(sign(n).unwrap().validate().is_empty());
        }
        for name in REGISTRY_NAMES {
            assert!(by_name(name, 4).unwrap().validate().is_empty(), "{name}");
        }
    }

    #[test]
    fn non_involution_rejected() {
        let bad = SnRepresentation::new(2, "bad", vec![SmallMatrix::from_rows(vec![vec![1, 1], vec![0, 1]])]).unwrap();
        assert_eq!(bad.validate(), vec!["s1^2 != 1".to_string()]);
    }

    #[test]
    fn hat_generator_fixes_matching_of_swapped_pair() {
        let s1 = matching_rep_hat().generator(0).clone();
        assert_eq!(s1, SmallMatrix::from_rows(vec![vec![1, 0, 0], vec![0, 0, 1], vec![0, 1, 0]]));
    }

    #[test]
    fn evaluate_is_a_homomorphism() {
        let hat = matching_rep_hat();
        let perms = all_permutations(4);
        for a in &perms {
            for b in &perms {
                assert_eq!(hat.evaluate(&compose(a, b)), hat.evaluate(a).mul(&hat.evaluate(b)));
            }
        }
    }

    #[test]
    fn matching_map_is_onto_s3() {
        let hat = matching_rep_hat();
        let images: std::collections::BTreeSet<Perm> =
            all_permutations(4).iter().map(|p| matching_permutation(p)).collect();
        assert_eq!(images.len(), 6);
        for p in all_permutations(4) {
            assert_eq!(hat.evaluate(&p), permutation_matrix(&matching_permutation(&p)));
        }
    }

    #[test]
    fn tensor_unit_and_sign() {
        let s = sign(4).unwrap();
        let t = s.tensor(&trivial(4).unwrap()).unwrap();
        assert_eq!(t.generators, s.generators);
        assert_eq!(s.evaluate(&[1, 2, 0, 3]), SmallMatrix::scalar(1));
        assert!(sign(3).unwrap().tensor(&sign(4).unwrap()).is_err());
    }

    #[test]
    fn exact_triple() {
        assert!(exact_triple_check().ok());
    }

    #[test]
    fn registry_errors() {
        assert!(matches!(by_name("A2", 3), Err(RepError::NeedsFourPoints { .. })));
        assert!(matches!(by_name("Q", 3), Err(RepError::UnknownName(_))));
    }
}
