//! Statistics on trapezoids, their distributions, and searches for
//! instances where the bijection fails to carry a statistic across.
//!
//! Two families of candidate statistics are provided:
//!
//! * counts of entries equal to 1 and of entries sitting at their per-cell
//!   maximum ([`cell_upper_bound`]), per row;
//! * the rightmost entries of the rows.
//!
//! Both are explicit stand-ins: they are concrete, labelled choices and the
//! searches below only claim non-preservation for these choices.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::bijection::magog_to_gog_with_case;
use crate::enumeration::{enumerate, enumerate_magog};
use crate::error::Result;
use crate::trapezoid::{cell_upper_bound, Entry, GogTrapezoid, Kind, MagogTrapezoid, Trapezoid, TrapezoidParams};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StatComponent {
    OnesRow1,
    OnesRow2,
    MaxedRow1,
    MaxedRow2,
    /// Rightmost entry of row 1.
    LastRow1,
    /// Rightmost entry of row 2.
    LastRow2,
    /// Second rightmost entry of row 1.
    PenultRow1,
    /// Second rightmost entry of row 2.
    PenultRow2,
    /// Always 0.
    Zero,
}

impl StatComponent {
    pub const ALL: [StatComponent; 9] = [
        StatComponent::OnesRow1,
        StatComponent::OnesRow2,
        StatComponent::MaxedRow1,
        StatComponent::MaxedRow2,
        StatComponent::LastRow1,
        StatComponent::LastRow2,
        StatComponent::PenultRow1,
        StatComponent::PenultRow2,
        StatComponent::Zero,
    ];

    pub fn name(self) -> &'static str {
        match self {
            StatComponent::OnesRow1 => "ones_row1",
            StatComponent::OnesRow2 => "ones_row2",
            StatComponent::MaxedRow1 => "maxed_row1",
            StatComponent::MaxedRow2 => "maxed_row2",
            StatComponent::LastRow1 => "last_row1",
            StatComponent::LastRow2 => "last_row2",
            StatComponent::PenultRow1 => "penult_row1",
            StatComponent::PenultRow2 => "penult_row2",
            StatComponent::Zero => "zero",
        }
    }

    fn extract(self, t: &Trapezoid) -> Entry {
        let params = t.params();
        let ones = |row: &[Entry]| row.iter().filter(|&&v| v == 1).count() as Entry;
        let maxed = |r: usize| {
            t.row(r)
                .iter()
                .enumerate()
                .filter(|&(idx, &v)| cell_upper_bound(t.kind(), r, idx + 1, params).is_ok_and(|cap| v == cap))
                .count() as Entry
        };
        let from_end = |row: &[Entry], back: usize| row[row.len() - 1 - back];
        match self {
            StatComponent::OnesRow1 => ones(t.row1()),
            StatComponent::OnesRow2 => ones(t.row2()),
            StatComponent::MaxedRow1 => maxed(1),
            StatComponent::MaxedRow2 => maxed(2),
            StatComponent::LastRow1 => from_end(t.row1(), 0),
            StatComponent::LastRow2 => from_end(t.row2(), 0),
            StatComponent::PenultRow1 => from_end(t.row1(), 1),
            StatComponent::PenultRow2 => from_end(t.row2(), 1),
            StatComponent::Zero => 0,
        }
    }
}

impl fmt::Display for StatComponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for StatComponent {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        StatComponent::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| format!("unknown statistic component `{s}`"))
    }
}

/// Ordered list of components to extract.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct StatSelector(pub Vec<StatComponent>);

impl StatSelector {
    pub fn mrr() -> Self {
        StatSelector(vec![
            StatComponent::OnesRow1,
            StatComponent::OnesRow2,
            StatComponent::MaxedRow1,
            StatComponent::MaxedRow2,
        ])
    }

    /// `(g(1,n), g(2,n-1))` on a Gog trapezoid, and the last entry of each
    /// row in general.
    pub fn right_gog() -> Self {
        StatSelector(vec![StatComponent::LastRow1, StatComponent::LastRow2])
    }

    /// `(m(1,n-2), m(1,n-1), m(2,n-1), m(2,n))` on a Magog trapezoid.
    pub fn right_magog() -> Self {
        StatSelector(vec![
            StatComponent::PenultRow1,
            StatComponent::LastRow1,
            StatComponent::PenultRow2,
            StatComponent::LastRow2,
        ])
    }

    pub fn constant() -> Self {
        StatSelector(vec![StatComponent::Zero])
    }

    pub fn components(&self) -> &[StatComponent] {
        &self.0
    }

    pub fn extract(&self, t: &Trapezoid) -> StatVector {
        StatVector(self.0.iter().map(|&c| (c, c.extract(t))).collect())
    }
}

impl FromStr for StatSelector {
    type Err = String;

    /// Accepts a preset name (`mrr`, `right_gog`, `right_magog`, `constant`)
    /// or a comma-separated component list.
    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "mrr" => Ok(Self::mrr()),
            "right_gog" => Ok(Self::right_gog()),
            "right_magog" => Ok(Self::right_magog()),
            "constant" => Ok(Self::constant()),
            list => list
                .split(',')
                .map(|c| c.trim().parse())
                .collect::<std::result::Result<Vec<_>, _>>()
                .map(StatSelector),
        }
    }
}

/// Named integer components.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct StatVector(pub Vec<(StatComponent, Entry)>);

impl StatVector {
    pub fn values(&self) -> Vec<Entry> {
        self.0.iter().map(|&(_, v)| v).collect()
    }

    pub fn get(&self, c: StatComponent) -> Option<Entry> {
        self.0.iter().find(|(k, _)| *k == c).map(|&(_, v)| v)
    }
}

impl fmt::Display for StatVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (idx, (c, v)) in self.0.iter().enumerate() {
            if idx > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{c}={v}")?;
        }
        Ok(())
    }
}

/// Ones and maxed-out entries per row.
pub fn mrr_stats(t: &Trapezoid) -> Result<StatVector> {
    t.ensure_valid()?;
    Ok(StatSelector::mrr().extract(t))
}

/// Rightmost entries: `right_gog` for Gog, `right_magog` for Magog.
pub fn bc_stats(t: &Trapezoid) -> Result<StatVector> {
    t.ensure_valid()?;
    let selector = match t.kind() {
        Kind::Gog => StatSelector::right_gog(),
        Kind::Magog => StatSelector::right_magog(),
    };
    Ok(selector.extract(t))
}

/// Exact counts per statistic value: selector components, then the count.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Distribution {
    pub kind: Kind,
    pub params: TrapezoidParams,
    pub components: Vec<StatComponent>,
    pub rows: BTreeMap<Vec<Entry>, u64>,
}

impl Distribution {
    pub fn total(&self) -> u64 {
        self.rows.values().sum()
    }

    /// Merges another table over the same family.
    pub fn merge(&mut self, other: &Distribution) {
        for (k, v) in &other.rows {
            *self.rows.entry(k.clone()).or_insert(0) += v;
        }
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for c in &self.components {
            out.push_str(c.name());
            out.push(',');
        }
        out.push_str("count\n");
        for (values, n) in &self.rows {
            for v in values {
                out.push_str(&v.to_string());
                out.push(',');
            }
            out.push_str(&n.to_string());
            out.push('\n');
        }
        out
    }

    /// `{"kind":..,"n":..,"ell":..,"components":[..],"rows":[{"values":[..],"count":..}]}`
    pub fn to_json(&self) -> serde_json::Value {
        let rows: Vec<_> = self
            .rows
            .iter()
            .map(|(values, n)| serde_json::json!({ "values": values, "count": n }))
            .collect();
        serde_json::json!({
            "kind": self.kind,
            "n": self.params.n,
            "ell": self.params.ell,
            "components": self.components.iter().map(|c| c.name()).collect::<Vec<_>>(),
            "rows": rows,
        })
    }
}

pub fn distribution(kind: Kind, params: TrapezoidParams, selector: &StatSelector) -> Result<Distribution> {
    let mut rows = BTreeMap::new();
    for t in enumerate(kind, params)? {
        *rows.entry(selector.extract(&t).values()).or_insert(0u64) += 1;
    }
    Ok(Distribution {
        kind,
        params,
        components: selector.0.clone(),
        rows,
    })
}

/// Statistic on each side of the bijection; preserved when both sides
/// produce the same values.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Pairing {
    pub magog: StatSelector,
    pub gog: StatSelector,
}

impl Pairing {
    pub fn mrr() -> Self {
        Pairing {
            magog: StatSelector::mrr(),
            gog: StatSelector::mrr(),
        }
    }

    /// Rightmost entry of each row on both sides.
    pub fn bc() -> Self {
        Pairing {
            magog: StatSelector::right_gog(),
            gog: StatSelector::right_gog(),
        }
    }

    pub fn constant() -> Self {
        Pairing {
            magog: StatSelector::constant(),
            gog: StatSelector::constant(),
        }
    }

    pub fn preserved_on(&self, m: &MagogTrapezoid, g: &GogTrapezoid) -> bool {
        let (ms, gs) = self.sides(m, g);
        ms.values() == gs.values()
    }

    fn sides(&self, m: &MagogTrapezoid, g: &GogTrapezoid) -> (StatVector, StatVector) {
        (
            self.magog.extract(&Trapezoid::Magog(m.clone())),
            self.gog.extract(&Trapezoid::Gog(g.clone())),
        )
    }
}

impl FromStr for Pairing {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "mrr" => Ok(Pairing::mrr()),
            "bc" => Ok(Pairing::bc()),
            "constant" => Ok(Pairing::constant()),
            other => Err(format!("unknown pairing `{other}` (expected mrr, bc or constant)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Counterexample {
    pub magog: MagogTrapezoid,
    pub gog: GogTrapezoid,
    pub magog_stat: StatVector,
    pub gog_stat: StatVector,
}

/// First Magog trapezoid in canonical order whose statistic differs from
/// that of its image.
pub fn find_statistic_counterexample(params: TrapezoidParams, pairing: &Pairing) -> Result<Option<Counterexample>> {
    for m in enumerate_magog(params)? {
        let (g, _) = magog_to_gog_with_case(&m);
        let (ms, gs) = pairing.sides(&m, &g);
        if ms.values() != gs.values() {
            return Ok(Some(Counterexample {
                magog: m,
                gog: g,
                magog_stat: ms,
                gog_stat: gs,
            }));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(n: usize, ell: i64) -> TrapezoidParams {
        TrapezoidParams { n, ell }
    }

    fn sample_magog() -> Trapezoid {
        Trapezoid::new(
            Kind::Magog,
            p(8, 0),
            vec![1, 1, 2, 4, 4, 5, 7],
            vec![1, 2, 2, 4, 4, 6, 7, 7],
        )
    }

    fn sample_gog() -> Trapezoid {
        Trapezoid::new(
            Kind::Gog,
            p(8, 0),
            vec![1, 1, 2, 4, 4, 5, 7, 7],
            vec![2, 2, 4, 5, 6, 7, 8],
        )
    }

    #[test]
    fn mrr_on_fixtures() {
        let g = mrr_stats(&sample_gog()).unwrap();
        assert_eq!(g.get(StatComponent::OnesRow1), Some(2));
        assert_eq!(g.get(StatComponent::OnesRow2), Some(0));

        // every cell m(2,j) against its cap j: equal at j = 1, 2, 4, 6, 7
        let m = mrr_stats(&sample_magog()).unwrap();
        assert_eq!(m.get(StatComponent::MaxedRow2), Some(5));

        let minimal = Trapezoid::new(Kind::Magog, p(3, 0), vec![1, 1], vec![1, 1, 1]);
        let s = mrr_stats(&minimal).unwrap();
        assert_eq!(s.values(), vec![2, 3, 1, 1]);
    }

    #[test]
    fn rightmost_on_fixtures() {
        assert_eq!(bc_stats(&sample_gog()).unwrap().values(), vec![7, 8]);
        assert_eq!(bc_stats(&sample_magog()).unwrap().values(), vec![5, 7, 7, 7]);
        let minimal = Trapezoid::new(Kind::Magog, p(3, 0), vec![1, 1], vec![1, 1, 1]);
        assert_eq!(bc_stats(&minimal).unwrap().values(), vec![1, 1, 1, 1]);
    }

    #[test]
    fn invalid_instances_are_refused() {
        let bad = Trapezoid::new(Kind::Magog, p(3, 0), vec![2, 2], vec![1, 1, 1]);
        assert!(mrr_stats(&bad).is_err());
        assert!(bc_stats(&bad).is_err());
        assert!(distribution(Kind::Gog, p(2, 0), &StatSelector::mrr()).is_err());
        assert!(find_statistic_counterexample(p(3, -1), &Pairing::mrr()).is_err());
    }

    #[test]
    fn selector_parsing() {
        assert_eq!("mrr".parse::<StatSelector>().unwrap(), StatSelector::mrr());
        let custom: StatSelector = "ones_row2,last_row1".parse().unwrap();
        assert_eq!(custom.0, vec![StatComponent::OnesRow2, StatComponent::LastRow1]);
        assert!("ones".parse::<StatSelector>().is_err());
        assert!("nope".parse::<Pairing>().is_err());
    }

    #[test]
    fn constant_pairing_is_preserved() {
        assert_eq!(
            find_statistic_counterexample(p(4, 0), &Pairing::constant()).unwrap(),
            None
        );
    }

    #[test]
    fn csv_layout() {
        let d = distribution(Kind::Magog, p(3, 0), &StatSelector(vec![StatComponent::OnesRow2])).unwrap();
        assert_eq!(d.total(), 7);
        let csv = d.to_csv();
        assert!(csv.starts_with("ones_row2,count\n"));
        assert_eq!(csv.lines().count(), d.rows.len() + 1);
    }
}
