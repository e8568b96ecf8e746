use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use super::complex::GradedGroup;

/// Something the long exact sequence of a pair leaves undetermined.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum PairAmbiguity {
    /// The restriction map `H_i(C) → H_i(X)` is not forced to vanish.
    Map { degree: i64 },
    /// `0 → coker → H_i(U) → ker → 0` has more than one solution.
    Extension { degree: i64, sub: String, quotient: String },
}

impl fmt::Display for PairAmbiguity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Map { degree } => write!(f, "map H_{degree}(closed) -> H_{degree}(total) not forced"),
            Self::Extension { degree, sub, quotient } => {
                write!(f, "extension of {quotient} by {sub} in degree {degree} not forced")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PairSolution {
    Solved(GradedGroup),
    Ambiguous(Vec<PairAmbiguity>),
}

/// Borel–Moore homology of the open complement `U = X ∖ C` from the exact
/// sequence `… → H_i(C) → H_i(X) → H_i(U) → H_{i-1}(C) → …`.
///
/// Only maps that vanish for every choice (Hom between the groups is zero)
/// are treated as known.
pub fn pair_sequence_solve(closed: &GradedGroup, total: &GradedGroup) -> PairSolution {
    let mut degrees = BTreeSet::new();
    for (d, _) in closed.iter() {
        degrees.insert(d);
        degrees.insert(d + 1);
    }
    for (d, _) in total.iter() {
        degrees.insert(d);
    }

    let mut problems: Vec<PairAmbiguity> = degrees
        .iter()
        .copied()
        .filter(|&d| !closed.get(d).hom_is_zero(&total.get(d)))
        .map(|degree| PairAmbiguity::Map { degree })
        .collect();
    if !problems.is_empty() {
        return PairSolution::Ambiguous(problems);
    }

    // Every map vanishes: 0 → H_i(X) → H_i(U) → H_{i-1}(C) → 0.
    let mut out = GradedGroup::new();
    for &d in &degrees {
        let sub = total.get(d);
        let quotient = closed.get(d - 1);
        match sub.forced_extension(&quotient) {
            Some(g) => out.insert(d, g),
            None => problems.push(PairAmbiguity::Extension {
                degree: d,
                sub: sub.to_string(),
                quotient: quotient.to_string(),
            }),
        }
    }
    if problems.is_empty() {
        PairSolution::Solved(out)
    } else {
        PairSolution::Ambiguous(problems)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::AbelianGroup;

    fn g(pairs: &[(i64, &str)]) -> GradedGroup {
        GradedGroup::from_pairs(pairs.iter().map(|(d, s)| (*d, s.parse().unwrap())))
    }

    #[test]
    fn coprime_extension_forced() {
        let closed = g(&[(5, "Z_2"), (4, "Z_3")]);
        let total = g(&[(11, "Z_2"), (10, "Z_3"), (9, "Z_2"), (6, "Z_3")]);
        let expected = g(&[(11, "Z_2"), (10, "Z_3"), (9, "Z_2"), (6, "Z_6"), (5, "Z_3")]);
        assert_eq!(pair_sequence_solve(&closed, &total), PairSolution::Solved(expected));
    }

    #[test]
    fn empty_closed_set() {
        let total = g(&[(3, "Z"), (1, "Z_2")]);
        assert_eq!(pair_sequence_solve(&GradedGroup::new(), &total), PairSolution::Solved(total));
    }

    #[test]
    fn unknown_restriction() {
        let z = g(&[(5, "Z")]);
        assert_eq!(
            pair_sequence_solve(&z, &z),
            PairSolution::Ambiguous(vec![PairAmbiguity::Map { degree: 5 }])
        );
    }

    #[test]
    fn non_coprime_extension() {
        let closed = g(&[(2, "Z_2")]);
        let total = g(&[(3, "Z_2")]);
        match pair_sequence_solve(&closed, &total) {
            PairSolution::Ambiguous(v) => assert!(matches!(v[0], PairAmbiguity::Extension { degree: 3, .. })),
            other => panic!("{other:?}"),
        }
        let _ = AbelianGroup::zero();
    }
}
