//! First pages of the sequences computing the Borel–Moore homology of
//! `Λ_ρ∖Λ_{ρ−1}`, filtered by the defect `j`, and their collapse.

use std::collections::BTreeMap;

use serde::Serialize;

use super::engine::{Page, Unresolved};
use super::facts::{Consumed, Facts};
use super::symbols::SymbolA;
use super::table::{Annotation, SSTable};
use super::value::Value;
use super::SpectralError;
use crate::cells::{config_homology, nested_cells};
use crate::linalg::{pair_sequence_solve, GradedGroup, PairSolution};
use crate::local_systems::{matching_rep, sign};

/// Homology groups that do not depend on `k`, all computed from cells.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Inputs {
    /// B(ℝ⁴, 1) = ℝ⁴ with constant coefficients.
    pub space: GradedGroup,
    /// B(ℝ⁴, 2), ±Z.
    pub sign_r4_2: GradedGroup,
    /// B(ℂ, 3), ±Z.
    pub sign_c_3: GradedGroup,
    /// B(ℝ⁴, 3), ±Z.
    pub sign_r4_3: GradedGroup,
    /// B(ℂ, 4) with the two-dimensional matching system.
    pub a2_c_4: GradedGroup,
}

impl Inputs {
    pub fn compute() -> Result<Self, SpectralError> {
        let sign_bm = |k: usize, n: usize| -> Result<GradedGroup, SpectralError> {
            Ok(config_homology(k, n, &sign(n).expect("n ≥ 2"))?)
        };
        let ((sign_r4_2, sign_c_3), (sign_r4_3, a2_c_4)) = rayon::join(
            || rayon::join(|| sign_bm(4, 2), || sign_bm(2, 3)),
            || rayon::join(|| sign_bm(4, 3), || Ok::<_, SpectralError>(config_homology(2, 4, &matching_rep())?)),
        );
        let mut space = GradedGroup::new();
        for cell in nested_cells(4, 1)? {
            space.add(cell.dimension() as i64, &crate::AbelianGroup::free(1));
        }
        Ok(Self { space, sign_r4_2: sign_r4_2?, sign_c_3: sign_c_3?, sign_r4_3: sign_r4_3?, a2_c_4: a2_c_4? })
    }
}

/// Base homology of one A-block, before the fiber shift.
fn block_base(
    rho: i64,
    symbol: &SymbolA,
    inputs: &Inputs,
    facts: &Facts,
    used: &mut Consumed,
) -> Result<(GradedGroup, Annotation), SpectralError> {
    let block = symbol.to_string();
    let solve = |closed: &GradedGroup, total: &GradedGroup| match pair_sequence_solve(closed, total) {
        PairSolution::Solved(g) => Ok(g),
        PairSolution::Ambiguous(a) => Err(SpectralError::Ambiguous {
            block: block.clone(),
            details: a.iter().map(ToString::to_string).collect(),
        }),
    };
    match (rho, symbol.parts()) {
        (2, [2, 2]) => Ok((inputs.sign_r4_2.clone(), Annotation::Computed)),
        (2, [3]) => Ok((inputs.sign_c_3.clone(), Annotation::Computed)),
        // complement of the planar configurations in B(ℝ⁴, 3)
        (3, [2, 2, 2]) => Ok((solve(&inputs.sign_c_3, &inputs.sign_r4_3)?, Annotation::Computed)),
        // complement of the triangle subspace in B(ℂ, 3) × ℝ⁴
        (3, [3, 2]) => {
            let triangle = facts.triangle_homology(used).ok_or_else(|| SpectralError::MissingInput {
                block: block.clone(),
                input: "homology of the triangle subspace".into(),
            })?;
            Ok((solve(&triangle, &inputs.sign_c_3.shift(4))?, Annotation::Configured))
        }
        (3, [4]) => Ok((inputs.a2_c_4.clone(), Annotation::Computed)),
        _ => Err(SpectralError::MissingInput { block, input: format!("no block model for ρ = {rho}") }),
    }
}

/// First page over `(j, 𝔮)` with total degree `j + 𝔮`.
pub fn aux_e1(rho: i64, inputs: &Inputs, facts: &Facts, used: &mut Consumed) -> Result<SSTable, SpectralError> {
    if !(2..=3).contains(&rho) {
        return Err(SpectralError::Unsupported(format!("auxiliary pages exist for ρ = 2, 3, not {rho}")));
    }
    let mut table = SSTable::new(format!("auxiliary E¹, ρ = {rho}"), "j", "𝔮");
    for (j, symbols) in super::symbols::symbols_for(rho as usize) {
        let j = j as i64;
        for symbol in symbols {
            let (base, annotation) = block_base(rho, &symbol, inputs, facts, used)?;
            let (shift, _) = symbol.block_fiber();
            for (m, g) in base.shift(shift).iter() {
                let v = table.value(j, m - j).extend(&Value::Exact(g.clone()));
                table.insert(j, m - j, v, annotation);
            }
        }
    }
    Ok(table)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Collapse {
    pub rho: i64,
    /// Borel–Moore homology of `Λ_ρ∖Λ_{ρ−1}` by degree.
    pub homology: BTreeMap<i64, Value>,
    pub unresolved: Vec<Unresolved>,
}

impl Collapse {
    pub fn is_exact(&self) -> bool {
        self.homology.values().all(|v| v.exact().is_some())
    }
}

/// Runs the auxiliary sequence to its limit using the configured first
/// differentials. Entries not pinned down are returned as bounds and the
/// differentials responsible are listed.
pub fn collapse_aux(rho: i64, table: &SSTable, facts: &Facts, used: &mut Consumed) -> Result<Collapse, SpectralError> {
    let mut page = Page::new(-1);
    for ((j, q), e) in table.iter() {
        page.set(j, j + q, e.value.clone());
    }
    let configured = facts.aux_d1(rho);
    let outcome = page.run(|r, (js, ts), (jt, tt)| {
        if r != 1 {
            return None;
        }
        configured.iter().find(|(_, s, t, _)| *s == (js, ts - js) && *t == (jt, tt - jt)).map(|(id, _, _, m)| {
            used.insert(id.clone());
            *m
        })
    })?;
    let unresolved = outcome
        .unresolved
        .into_iter()
        .map(|u| Unresolved {
            source: (u.source.0, u.source.1 - u.source.0),
            target: (u.target.0, u.target.1 - u.target.0),
            ..u
        })
        .collect();
    Ok(Collapse { rho, homology: outcome.totals, unresolved })
}

/// Like [`collapse_aux`] but fails unless every degree is determined.
pub fn collapse_aux_exact(rho: i64, table: &SSTable, facts: &Facts, used: &mut Consumed) -> Result<Collapse, SpectralError> {
    let c = collapse_aux(rho, table, facts, used)?;
    if c.is_exact() {
        Ok(c)
    } else {
        Err(SpectralError::Undetermined(c.unresolved.iter().map(|u| format!("{u:?}")).collect()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table_string(t: &SSTable) -> Vec<String> {
        t.iter().map(|((j, q), e)| format!("{j},{q}:{}", e.value)).collect()
    }

    #[test]
    fn pages_and_collapses() {
        let inputs = Inputs::compute().unwrap();
        assert_eq!(inputs.space.to_string(), "Z@4");
        let facts = Facts::bundled();
        let mut used = Consumed::new();
        let t2 = aux_e1(2, &inputs, &facts, &mut used).unwrap();
        assert_eq!(table_string(&t2), ["0,6:Z_2", "0,8:Z_2", "1,5:Z_3", "1,6:Z_2"]);
        let c2 = collapse_aux_exact(2, &t2, &facts, &mut used).unwrap();
        assert_eq!(c2.homology.iter().map(|(m, v)| format!("{m}:{v}")).collect::<Vec<_>>(), ["6:Z_3", "8:Z_2"]);

        let t3 = aux_e1(3, &inputs, &facts, &mut used).unwrap();
        assert_eq!(
            table_string(&t3),
            [
                "0,7:Z_3", "0,8:Z_6", "0,11:Z_2", "0,12:Z_3", "0,13:Z_2", "1,7:Z", "1,8:Z⊕Z_2", "1,10:Z_3",
                "1,11:Z_2", "2,7:Z_2", "2,8:Z⊕Z_2", "2,9:Z"
            ]
        );
        let c3 = collapse_aux(3, &t3, &facts, &mut used).unwrap();
        let got: Vec<String> = c3.homology.iter().map(|(m, v)| format!("{m}:{v}")).collect();
        assert_eq!(got, ["7:T", "8:Z⊕T", "9:T", "10:T", "11:Z⊕Z_3", "12:Z_3", "13:Z_2"]);
        assert!(!c3.unresolved.is_empty());
        assert!(collapse_aux_exact(3, &t3, &facts, &mut used).is_err());
        assert_eq!(used.len(), 4);
    }

    #[test]
    fn missing_triangle_names_the_block() {
        let inputs = Inputs::compute().unwrap();
        let facts = Facts::parse("[]").unwrap();
        let err = aux_e1(3, &inputs, &facts, &mut Consumed::new()).unwrap_err();
        assert!(err.to_string().contains("(3,2)"), "{err}");
    }
}
