//! Main page of the cohomological sequence and the resulting stable
//! cohomology tables.
//!
//! Column `p = −ρ` carries the Borel–Moore homology of `Λ_ρ∖Λ_{ρ−1}`; a
//! degree `m` there lands in row `q = ρ(2k+1) − 1 − m`. Columns `ρ ≤ 3` are
//! either computed or read from the facts registry; higher columns are
//! known only through bounds.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use serde_json::{json, Value as Json};

use super::aux::{aux_e1, collapse_aux, Inputs};
use super::engine::{Page, Unresolved};
use super::facts::{Consumed, Facts};
use super::formulas::{column_bounds, q_of, Affine};
use super::symbols::SymbolA;
use super::table::{markdown_grid, Annotation, Entry, SSTable};
use super::value::Value;
use super::SpectralError;
use crate::linalg::AbelianGroup;

/// Largest column read off the first page from computation or facts.
pub const LOW_COLUMNS: i64 = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    Paper,
    Computed,
}

impl FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "paper" => Ok(Self::Paper),
            "computed" => Ok(Self::Computed),
            _ => Err(format!("unknown mode {s:?}; expected paper or computed")),
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Paper => "paper",
            Self::Computed => "computed",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ColumnEntry {
    pub q: Affine,
    pub value: Value,
    pub annotation: Annotation,
}

/// Columns `p = −1, −2, −3` with rows affine in `k`. A column is `None`
/// when its source was unavailable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LowColumns {
    pub mode: Mode,
    pub columns: BTreeMap<i64, Option<Vec<ColumnEntry>>>,
    pub missing: Vec<String>,
}

fn annotate(v: &Value, exact: Annotation) -> Annotation {
    match v {
        Value::Exact(_) => exact,
        Value::Bounded(_) => Annotation::BoundOnly,
        Value::AtLeast(_) => Annotation::Unknown,
    }
}

pub fn low_columns(
    mode: Mode,
    inputs: Option<&Inputs>,
    facts: &Facts,
    used: &mut Consumed,
) -> Result<LowColumns, SpectralError> {
    let mut columns = BTreeMap::new();
    let mut missing = Vec::new();
    for rho in 1..=LOW_COLUMNS {
        let column = match mode {
            Mode::Paper => match facts.main_column(rho, used) {
                Some(values) => Some(
                    values
                        .into_iter()
                        .map(|(c, value)| ColumnEntry {
                            q: Affine::new(2 * rho, c),
                            annotation: annotate(&value, Annotation::Configured),
                            value,
                        })
                        .collect(),
                ),
                None => {
                    missing.push(format!("main-column values for ρ = {rho}"));
                    None
                }
            },
            Mode::Computed => {
                let inputs = inputs.ok_or_else(|| SpectralError::Unsupported("computed mode needs inputs".into()))?;
                let homology: BTreeMap<i64, Value> = if rho == 1 {
                    inputs.space.iter().map(|(m, g)| (m, Value::Exact(g.clone()))).collect()
                } else {
                    let table = aux_e1(rho, inputs, facts, used)?;
                    collapse_aux(rho, &table, facts, used)?.homology
                };
                let mut entries: Vec<ColumnEntry> = homology
                    .into_iter()
                    .map(|(m, value)| ColumnEntry {
                        q: q_of(rho, m),
                        annotation: annotate(&value, Annotation::Computed),
                        value,
                    })
                    .collect();
                entries.sort_by_key(|e| e.q);
                Some(entries)
            }
        };
        columns.insert(rho, column);
    }
    Ok(LowColumns { mode, columns, missing })
}

/// Explicit entries of a column `ρ > 3` at `k`, keyed by `q`. Rows above
/// the finite range that carry no entry are unknown.
fn upper_column(
    rho: i64,
    k: i64,
    facts: &Facts,
    used: &mut Consumed,
    missing: &mut Vec<String>,
) -> BTreeMap<i64, (Entry, Affine)> {
    let (_, z2, finite) = column_bounds(-rho, k);
    let mut out = BTreeMap::new();
    let deuces = SymbolA::new(&vec![2; rho as usize], 0);
    match facts.sign_top_degree(rho, used) {
        Some((degree, group)) => {
            let m = degree + deuces.block_fiber().0;
            let q = q_of(rho, m);
            out.insert(q.at(k), (Entry::new(Value::Exact(group), Annotation::Configured), q));
        }
        None => {
            missing.push(format!("top sign-homology degree of B(ℝ⁴, {rho})"));
            out.insert(z2, (Entry::new(Value::unknown(), Annotation::Unknown), Affine::new(2 * rho, -4 * rho + 1)));
        }
    }
    out.insert(finite, (Entry::new(Value::finite(), Annotation::BoundOnly), Affine::new(2 * rho, -4 * rho + 2)));
    for (q, value) in facts.main_entries(rho, used) {
        let annotation = match value {
            Value::Bounded(_) => Annotation::BoundOnly,
            _ => Annotation::Configured,
        };
        out.insert(q.at(k), (Entry::new(value, annotation), q));
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MainPage {
    pub k: i64,
    pub table: SSTable,
    /// For columns beyond the computed ones: rows above this are unknown
    /// unless an entry is present.
    pub unknown_above: BTreeMap<i64, i64>,
    pub missing: Vec<String>,
}

impl MainPage {
    pub fn to_json(&self) -> Json {
        json!({
            "k": self.k,
            "table": self.table.to_json(),
            "unknown_above": self.unknown_above.iter().map(|(p, q)| (p.to_string(), json!(q))).collect::<serde_json::Map<_, _>>(),
            "missing_facts": self.missing,
        })
    }

    pub fn to_markdown(&self) -> String {
        let mut out = self.table.to_markdown();
        for (p, q) in &self.unknown_above {
            out.push_str(&format!("\ncolumn p={p}: rows q>{q} undetermined except as listed"));
        }
        out.push('\n');
        out
    }
}

/// First page of the main sequence at `k` for columns `p = −1 … −ρ_max`.
pub fn main_page(k: i64, rho_max: i64, low: &LowColumns, facts: &Facts, used: &mut Consumed) -> MainPage {
    let mut table = SSTable::new(format!("main E₁, k = {k} ({} mode)", low.mode), "p", "q");
    let mut unknown_above = BTreeMap::new();
    let mut missing = low.missing.clone();
    for rho in 1..=rho_max {
        if rho <= LOW_COLUMNS {
            match &low.columns[&rho] {
                Some(entries) => {
                    for e in entries {
                        table.insert(-rho, e.q.at(k), e.value.clone(), e.annotation);
                    }
                }
                None => {
                    unknown_above.insert(-rho, column_bounds(-rho, k).0);
                }
            }
        } else {
            for (q, (e, _)) in upper_column(rho, k, facts, used, &mut missing) {
                table.insert(-rho, q, e.value, e.annotation);
            }
            unknown_above.insert(-rho, column_bounds(-rho, k).2);
        }
    }
    MainPage { k, table, unknown_above, missing }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CohomologyTable {
    pub k: i64,
    pub mode: Mode,
    pub rational: bool,
    pub max_degree: i64,
    /// Nonzero groups by cohomological degree; over `Q` the value records
    /// the dimension as a free rank.
    pub degrees: BTreeMap<i64, Value>,
    /// Symbolic degrees of the first-page entries contributing to each
    /// degree.
    pub labels: BTreeMap<i64, Vec<String>>,
    pub unresolved: Vec<Unresolved>,
    pub missing: Vec<String>,
}

impl CohomologyTable {
    pub fn get(&self, i: i64) -> Value {
        self.degrees.get(&i).cloned().unwrap_or_else(Value::zero)
    }

    pub fn render_value(&self, v: &Value) -> String {
        if !self.rational {
            return v.to_string();
        }
        match v {
            Value::Exact(g) => g.free_rank().to_string(),
            _ => format!("≥{}", v.min_rank()),
        }
    }

    pub fn to_json(&self) -> Json {
        let degrees: serde_json::Map<String, Json> = self
            .degrees
            .iter()
            .map(|(i, v)| {
                let mut obj = json!({ "value": self.render_value(v), "labels": self.labels.get(i).cloned().unwrap_or_default() });
                if let (Some(g), false) = (v.exact(), self.rational) {
                    obj["group"] = serde_json::to_value(g).expect("groups serialize");
                }
                (i.to_string(), obj)
            })
            .collect();
        json!({
            "k": self.k,
            "mode": self.mode,
            "coefficients": if self.rational { "Q" } else { "Z" },
            "max_degree": self.max_degree,
            "degrees": degrees,
            "unresolved": self.unresolved,
            "missing_facts": self.missing,
        })
    }

    pub fn to_markdown(&self) -> String {
        let coeffs = if self.rational { "Q (dimensions)" } else { "Z" };
        let mut rows = vec![vec!["i".to_string(), "degree".to_string(), "group".to_string()]];
        for (i, v) in &self.degrees {
            let label = self.labels.get(i).map(|l| l.join(" = ")).unwrap_or_default();
            rows.push(vec![i.to_string(), label, self.render_value(v)]);
        }
        format!(
            "**H^i, k = {}, i ≤ {}, coefficients {coeffs} ({} mode)**\n\n{}",
            self.k,
            self.max_degree,
            self.mode,
            markdown_grid(&rows)
        )
    }
}

/// Cohomology in degrees `0 ..= max_degree` read off the main page.
/// Differentials are only used when forced to vanish; anything else is
/// reported unresolved and the affected degrees are bounds.
pub fn cohomology(
    k: i64,
    max_degree: i64,
    rational: bool,
    low: &LowColumns,
    facts: &Facts,
    used: &mut Consumed,
) -> CohomologyTable {
    let limit = max_degree + 1;
    let mut page = Page::new(1).with_limit(limit);
    let mut labels: BTreeMap<i64, Vec<String>> = BTreeMap::new();
    let mut missing = low.missing.clone();
    let prepare = |v: Value| if rational { v.rational() } else { v };
    page.set(0, 0, Value::Exact(AbelianGroup::free(1)));
    labels.entry(0).or_default().push("0".into());
    let mut place = |page: &mut Page, rho: i64, q: i64, v: Value, label: Option<Affine>| {
        let t = q - rho;
        if t <= limit {
            let v = prepare(v);
            if let (Some(l), false, true) = (label, v.is_zero(), t <= max_degree) {
                labels.entry(t).or_default().push(l.add(-rho).to_string());
            }
            page.set(rho, t, v);
        }
    };
    let mut rho = 1;
    // a column can reach total degree `limit` only if its lowest possible
    // nonzero degree `ρ(2k−5)+1` does
    while rho * (2 * k - 5) < limit {
        let (trivial, _, finite) = column_bounds(-rho, k);
        if rho <= LOW_COLUMNS {
            match &low.columns[&rho] {
                Some(entries) => {
                    for e in entries {
                        place(&mut page, rho, e.q.at(k), e.value.clone(), Some(e.q));
                    }
                }
                None => {
                    for q in trivial + 1..=limit + rho {
                        place(&mut page, rho, q, Value::unknown(), None);
                    }
                }
            }
        } else {
            let explicit = upper_column(rho, k, facts, used, &mut missing);
            let ranks: BTreeMap<i64, usize> =
                if rational { facts.rational_ranks(rho, k, used).into_iter().collect() } else { BTreeMap::new() };
            for q in trivial + 1..=limit + rho {
                let (value, label) = match explicit.get(&q) {
                    Some((e, a)) => (e.value.clone(), Some(*a)),
                    None if q > finite => (Value::unknown(), None),
                    None => (Value::zero(), None),
                };
                let value = match ranks.get(&q) {
                    Some(&r) => Value::Exact(AbelianGroup::free(r)),
                    None => value,
                };
                place(&mut page, rho, q, value, label);
            }
        }
        rho += 1;
    }
    let outcome = page.run(|_, _, _| None).expect("no configured maps, so no conflicts");
    let unresolved = outcome.unresolved.into_iter().filter(|u| u.source.1 <= max_degree).collect();
    let mut degrees = outcome.totals;
    degrees.retain(|&i, _| i <= max_degree);
    labels.retain(|i, _| degrees.contains_key(i));
    CohomologyTable {
        k,
        mode: low.mode,
        rational,
        max_degree,
        degrees,
        labels,
        unresolved,
        missing,
    }
}

/// Degree range of the integral table: `6k−12` for `k > 3`, `4` for `k = 3`.
pub fn integral_range(k: i64) -> i64 {
    if k == 3 {
        4
    } else {
        6 * k - 12
    }
}

/// Degree range of the rational summary: `8k−17` for `k > 3`, `7` for `k = 3`.
pub fn rational_range(k: i64) -> i64 {
    if k == 3 {
        7
    } else {
        8 * k - 17
    }
}

/// Line items where the computed low columns differ from the asserted ones.
pub fn discrepancies(computed: &LowColumns, paper: &LowColumns) -> Vec<String> {
    let mut out = Vec::new();
    for (rho, c) in &computed.columns {
        let p = paper.columns.get(rho).cloned().flatten();
        let (Some(c), Some(p)) = (c, p) else {
            out.push(format!("p=−{rho}: column unavailable in one mode"));
            continue;
        };
        let key = |e: &ColumnEntry| (e.q, e.value.clone());
        let mut only_c: Vec<&ColumnEntry> = c.iter().filter(|e| !p.iter().any(|x| key(x) == key(e))).collect();
        let mut only_p: Vec<&ColumnEntry> = p.iter().filter(|e| !c.iter().any(|x| key(x) == key(e))).collect();
        only_c.retain(|e| {
            if let Some(i) = only_p.iter().position(|x| x.value == e.value) {
                let x = only_p.remove(i);
                out.push(format!("p=−{rho}: {} at q={} (computed) vs q={} (paper)", e.value, e.q, x.q));
                false
            } else {
                true
            }
        });
        for e in only_c {
            match only_p.iter().position(|x| x.q == e.q) {
                Some(i) => {
                    let x = only_p.remove(i);
                    out.push(format!("p=−{rho}, q={}: {} (computed) vs {} (paper)", e.q, e.value, x.value));
                }
                None => out.push(format!("p=−{rho}, q={}: {} (computed) vs 0 (paper)", e.q, e.value)),
            }
        }
        for x in only_p {
            out.push(format!("p=−{rho}, q={}: 0 (computed) vs {} (paper)", x.q, x.value));
        }
    }
    out
}

/// Everything assembled for one `k`.
#[derive(Clone, Debug)]
pub struct Assembly {
    pub main: MainPage,
    pub integral: CohomologyTable,
    pub rational: CohomologyTable,
    /// Empty in paper mode.
    pub discrepancies: Vec<String>,
    pub consumed: Consumed,
}

impl Assembly {
    pub fn to_json(&self) -> Json {
        json!({
            "main_page": self.main.to_json(),
            "integral": self.integral.to_json(),
            "rational": self.rational.to_json(),
            "discrepancies": self.discrepancies,
            "consumed_facts": self.consumed,
        })
    }
}

pub fn assemble(
    k: i64,
    rho_max: i64,
    facts: &Facts,
    mode: Mode,
    inputs: Option<&Inputs>,
) -> Result<Assembly, SpectralError> {
    if k < 3 {
        return Err(SpectralError::Unsupported(format!("k must be at least 3, got {k}")));
    }
    let mut used = Consumed::new();
    let low = low_columns(mode, inputs, facts, &mut used)?;
    let discrepancies = match mode {
        Mode::Paper => Vec::new(),
        Mode::Computed => discrepancies(&low, &low_columns(Mode::Paper, None, facts, &mut Consumed::new())?),
    };
    let main = main_page(k, rho_max, &low, facts, &mut used);
    let integral = cohomology(k, integral_range(k), false, &low, facts, &mut used);
    let rational = cohomology(k, rational_range(k), true, &low, facts, &mut used);
    Ok(Assembly { main, integral, rational, discrepancies, consumed: used })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::formulas::wedge_ok;

    fn shown(t: &CohomologyTable) -> Vec<String> {
        t.degrees.iter().map(|(i, v)| format!("{i}:{}", t.render_value(v))).collect()
    }

    #[test]
    fn pinned_tables() {
        let facts = Facts::bundled();
        let a = assemble(4, 5, &facts, Mode::Paper, None).unwrap();
        assert_eq!(shown(&a.integral), ["0:Z", "3:Z", "7:Z_2", "10:Z_6", "11:Z_3", "12:Z⊕Z_3"]);
        assert_eq!(a.integral.labels[&10], ["4k−6", "6k−14"]);
        assert_eq!(shown(&a.rational), ["0:1", "3:1", "12:1", "15:2"]);
        let a = assemble(3, 6, &facts, Mode::Paper, None).unwrap();
        assert_eq!(shown(&a.integral), ["0:Z", "1:Z", "3:Z_2", "4:Z_2"]);
        assert_eq!(shown(&a.rational), ["0:1", "1:1", "6:1", "7:≥1"]);
        for ((p, q), _) in a.main.table.iter() {
            assert!(wedge_ok(p, q, 3), "({p},{q})");
        }
    }

    #[test]
    fn computed_mode_differs_once() {
        let facts = Facts::bundled();
        let inputs = Inputs::compute().unwrap();
        let a = assemble(4, 5, &facts, Mode::Computed, Some(&inputs)).unwrap();
        assert_eq!(a.discrepancies, ["p=−2: Z_3 at q=4k−5 (computed) vs q=4k−4 (paper)"]);
        assert_eq!(shown(&a.integral), ["0:Z", "3:Z", "7:Z_2", "9:Z_3", "10:Z_2", "11:Z_3", "12:Z⊕Z_3"]);
        assert_eq!(shown(&a.rational), ["0:1", "3:1", "12:1", "15:2"]);
    }

    #[test]
    fn upper_columns_match_bounds() {
        let facts = Facts::bundled();
        for rho in 4..8 {
            for k in 3..7 {
                let col = upper_column(rho, k, &facts, &mut Consumed::new(), &mut Vec::new());
                let (_, z2, _) = column_bounds(-rho, k);
                assert_eq!(col[&z2].0.value.to_string(), "Z_2");
            }
        }
    }
}
