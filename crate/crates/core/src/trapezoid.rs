//! Two-row Gog and Magog trapezoids, their per-cell bounds and validation.
//!
//! All indices at the public surface are 1-based: `row` is 1 or 2, and `j`
//! runs over `1..=row_len`. Internally rows are stored as dense vectors.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A single trapezoid entry. Valid entries never exceed `n + ell + 2`.
pub type Entry = i64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Magog,
    Gog,
}

impl Kind {
    pub const ALL: [Kind; 2] = [Kind::Magog, Kind::Gog];

    pub fn as_str(self) -> &'static str {
        match self {
            Kind::Magog => "magog",
            Kind::Gog => "gog",
        }
    }

    /// Length of row `row` (1 or 2) for shape size `n`.
    pub fn row_len(self, row: usize, n: usize) -> usize {
        match (self, row) {
            (Kind::Magog, 1) | (Kind::Gog, 2) => n.saturating_sub(1),
            _ => n,
        }
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Kind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "magog" => Ok(Kind::Magog),
            "gog" => Ok(Kind::Gog),
            other => Err(format!("unknown trapezoid kind `{other}` (expected `gog` or `magog`)")),
        }
    }
}

/// Shape size `n` and ceiling offset `ell`.
///
/// Arbitrary values can be held so that malformed inputs can be reported
/// by validation; [`TrapezoidParams::new`] is the checked constructor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TrapezoidParams {
    pub n: usize,
    pub ell: i64,
}

impl TrapezoidParams {
    pub fn new(n: usize, ell: i64) -> Result<Self> {
        let params = TrapezoidParams { n, ell };
        params.check()?;
        Ok(params)
    }

    pub fn is_valid(&self) -> bool {
        self.n >= 3 && self.ell >= 0
    }

    pub fn check(&self) -> Result<()> {
        if self.is_valid() {
            Ok(())
        } else {
            Err(Error::InvalidParams {
                n: self.n,
                ell: self.ell,
            })
        }
    }
}

impl fmt::Display for TrapezoidParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n={}, ell={}", self.n, self.ell)
    }
}

/// Largest value cell `(row, j)` can hold in a valid trapezoid of `kind`.
///
/// Magog rows are both capped at `j + ell` (row 1 through the column rule).
/// Gog row 2 is capped at `j + 1 + ell`; Gog row 1 at `j + ell`, through the
/// strict column rule for `j < n` and through the diagonal for `j = n`.
pub fn cell_upper_bound(kind: Kind, row: usize, j: usize, params: TrapezoidParams) -> Result<Entry> {
    params.check()?;
    let len = kind.row_len(row, params.n);
    if !(1..=2).contains(&row) || j == 0 || j > len {
        return Err(Error::CellOutOfRange {
            kind,
            row,
            j,
            n: params.n,
        });
    }
    let j = j as Entry;
    Ok(match (kind, row) {
        (Kind::Gog, 2) => j + 1 + params.ell,
        _ => j + params.ell,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Rule {
    /// Magog rows weakly increase.
    M1,
    /// Magog column: `m(1,j) <= m(2,j)`.
    M2,
    /// Magog ceiling: `m(2,j) <= j + ell`.
    M3,
    /// Gog rows weakly increase.
    G1,
    /// Gog strict column `g(1,j) < g(2,j)` and ceiling `g(2,j) < j + 2 + ell`.
    G2,
    /// Gog diagonal: `g(1,j+1) <= g(2,j)`.
    G3,
    #[serde(rename = "POS")]
    Pos,
    #[serde(rename = "SHAPE")]
    Shape,
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Rule::M1 => "M1",
            Rule::M2 => "M2",
            Rule::M3 => "M3",
            Rule::G1 => "G1",
            Rule::G2 => "G2",
            Rule::G3 => "G3",
            Rule::Pos => "POS",
            Rule::Shape => "SHAPE",
        };
        f.write_str(s)
    }
}

/// One broken rule instance.
///
/// `cell` names the cell carrying the rule's index `j`: `(i, j)` for row
/// monotonicity between `j` and `j+1`, `(1, j)` for column rules, `(2, j)`
/// for ceilings and for the Gog diagonal. Shape problems carry no cell.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Violation {
    pub rule: Rule,
    pub cell: Option<(usize, usize)>,
    pub observed: Vec<Entry>,
    pub detail: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.cell {
            Some((i, j)) => write!(f, "{} at ({},{}): {}", self.rule, i, j, self.detail),
            None => write!(f, "{}: {}", self.rule, self.detail),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn rules(&self) -> impl Iterator<Item = (Rule, Option<(usize, usize)>)> + '_ {
        self.violations.iter().map(|v| (v.rule, v.cell))
    }

    fn push(&mut self, rule: Rule, cell: Option<(usize, usize)>, observed: Vec<Entry>, detail: String) {
        self.violations.push(Violation {
            rule,
            cell,
            observed,
            detail,
        });
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return f.write_str("valid");
        }
        for (idx, v) in self.violations.iter().enumerate() {
            if idx > 0 {
                f.write_str("; ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// An `(ell, n, 2)`-Magog trapezoid: row 1 has `n-1` entries, row 2 has `n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MagogTrapezoid {
    params: TrapezoidParams,
    row1: Vec<Entry>,
    row2: Vec<Entry>,
}

/// An `(ell, n, 2)`-Gog trapezoid: row 1 has `n` entries, row 2 has `n-1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GogTrapezoid {
    params: TrapezoidParams,
    row1: Vec<Entry>,
    row2: Vec<Entry>,
}

macro_rules! trapezoid_impl {
    ($ty:ident, $kind:expr, $validate:ident) => {
        impl $ty {
            pub const KIND: Kind = $kind;

            /// Wraps the rows without checking them. Use [`Self::try_new`]
            /// or [`Self::validate`] to check membership.
            pub fn new(params: TrapezoidParams, row1: Vec<Entry>, row2: Vec<Entry>) -> Self {
                $ty { params, row1, row2 }
            }

            pub fn try_new(params: TrapezoidParams, row1: Vec<Entry>, row2: Vec<Entry>) -> Result<Self> {
                let t = Self::new(params, row1, row2);
                t.ensure_valid()?;
                Ok(t)
            }

            pub fn params(&self) -> TrapezoidParams {
                self.params
            }

            pub fn n(&self) -> usize {
                self.params.n
            }

            pub fn row1(&self) -> &[Entry] {
                &self.row1
            }

            pub fn row2(&self) -> &[Entry] {
                &self.row2
            }

            pub fn row(&self, row: usize) -> &[Entry] {
                match row {
                    1 => &self.row1,
                    2 => &self.row2,
                    _ => panic!("row index {row} out of range"),
                }
            }

            /// Entry at 1-based `(row, j)`. Panics when out of range.
            pub fn at(&self, row: usize, j: usize) -> Entry {
                self.row(row)[j - 1]
            }

            pub fn into_rows(self) -> (Vec<Entry>, Vec<Entry>) {
                (self.row1, self.row2)
            }

            pub fn validate(&self) -> ValidationReport {
                $validate(self)
            }

            pub fn is_valid(&self) -> bool {
                self.validate().is_valid()
            }

            pub fn ensure_valid(&self) -> Result<()> {
                let report = self.validate();
                if report.is_valid() {
                    Ok(())
                } else {
                    Err(Error::Invalid {
                        kind: Self::KIND,
                        report,
                    })
                }
            }
        }
    };
}

trapezoid_impl!(MagogTrapezoid, Kind::Magog, validate_magog);
trapezoid_impl!(GogTrapezoid, Kind::Gog, validate_gog);

/// Either kind of trapezoid, as read from or written to files.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Trapezoid {
    Magog(MagogTrapezoid),
    Gog(GogTrapezoid),
}

impl Trapezoid {
    pub fn new(kind: Kind, params: TrapezoidParams, row1: Vec<Entry>, row2: Vec<Entry>) -> Self {
        match kind {
            Kind::Magog => Trapezoid::Magog(MagogTrapezoid::new(params, row1, row2)),
            Kind::Gog => Trapezoid::Gog(GogTrapezoid::new(params, row1, row2)),
        }
    }

    pub fn kind(&self) -> Kind {
        match self {
            Trapezoid::Magog(_) => Kind::Magog,
            Trapezoid::Gog(_) => Kind::Gog,
        }
    }

    pub fn params(&self) -> TrapezoidParams {
        match self {
            Trapezoid::Magog(m) => m.params(),
            Trapezoid::Gog(g) => g.params(),
        }
    }

    pub fn row1(&self) -> &[Entry] {
        match self {
            Trapezoid::Magog(m) => m.row1(),
            Trapezoid::Gog(g) => g.row1(),
        }
    }

    pub fn row2(&self) -> &[Entry] {
        match self {
            Trapezoid::Magog(m) => m.row2(),
            Trapezoid::Gog(g) => g.row2(),
        }
    }

    pub fn row(&self, row: usize) -> &[Entry] {
        match row {
            1 => self.row1(),
            2 => self.row2(),
            _ => panic!("row index {row} out of range"),
        }
    }

    pub fn validate(&self) -> ValidationReport {
        match self {
            Trapezoid::Magog(m) => m.validate(),
            Trapezoid::Gog(g) => g.validate(),
        }
    }

    pub fn ensure_valid(&self) -> Result<()> {
        match self {
            Trapezoid::Magog(m) => m.ensure_valid(),
            Trapezoid::Gog(g) => g.ensure_valid(),
        }
    }
}

impl From<MagogTrapezoid> for Trapezoid {
    fn from(m: MagogTrapezoid) -> Self {
        Trapezoid::Magog(m)
    }
}

impl From<GogTrapezoid> for Trapezoid {
    fn from(g: GogTrapezoid) -> Self {
        Trapezoid::Gog(g)
    }
}

/// Shape checks shared by both kinds. Returns false when the remaining
/// rules cannot be indexed consistently.
fn check_shape(
    kind: Kind,
    params: TrapezoidParams,
    row1: &[Entry],
    row2: &[Entry],
    report: &mut ValidationReport,
) -> bool {
    if !params.is_valid() {
        report.push(
            Rule::Shape,
            None,
            vec![params.n as Entry, params.ell],
            format!("parameters {params} need n >= 3 and ell >= 0"),
        );
        return false;
    }
    let mut ok = true;
    for (row, values) in [(1, row1), (2, row2)] {
        let want = kind.row_len(row, params.n);
        if values.len() != want {
            report.push(
                Rule::Shape,
                None,
                vec![values.len() as Entry],
                format!("row {row} has {} entries, expected {want}", values.len()),
            );
            ok = false;
        }
    }
    ok
}

fn check_positive_and_monotone(rule: Rule, rows: [&[Entry]; 2], report: &mut ValidationReport) {
    for (i, values) in rows.into_iter().enumerate() {
        let row = i + 1;
        for (idx, &v) in values.iter().enumerate() {
            if v < 1 {
                report.push(
                    Rule::Pos,
                    Some((row, idx + 1)),
                    vec![v],
                    format!("entry {v} is not positive"),
                );
            }
        }
        for (idx, pair) in values.windows(2).enumerate() {
            if pair[0] > pair[1] {
                let j = idx + 1;
                report.push(
                    rule,
                    Some((row, j)),
                    pair.to_vec(),
                    format!(
                        "row {row} decreases: ({row},{j})={} > ({row},{})={}",
                        pair[0],
                        j + 1,
                        pair[1]
                    ),
                );
            }
        }
    }
}

pub fn validate_magog(m: &MagogTrapezoid) -> ValidationReport {
    let mut report = ValidationReport::default();
    let (params, row1, row2) = (m.params, &m.row1[..], &m.row2[..]);
    if !check_shape(Kind::Magog, params, row1, row2, &mut report) {
        return report;
    }
    check_positive_and_monotone(Rule::M1, [row1, row2], &mut report);
    for j in 1..params.n {
        let (top, bottom) = (row1[j - 1], row2[j - 1]);
        if top > bottom {
            report.push(
                Rule::M2,
                Some((1, j)),
                vec![top, bottom],
                format!("m(1,{j})={top} > m(2,{j})={bottom}"),
            );
        }
    }
    for j in 1..=params.n {
        let bottom = row2[j - 1];
        let cap = j as Entry + params.ell;
        if bottom > cap {
            report.push(
                Rule::M3,
                Some((2, j)),
                vec![bottom],
                format!("m(2,{j})={bottom} exceeds {cap}"),
            );
        }
    }
    report
}

pub fn validate_gog(g: &GogTrapezoid) -> ValidationReport {
    let mut report = ValidationReport::default();
    let (params, row1, row2) = (g.params, &g.row1[..], &g.row2[..]);
    if !check_shape(Kind::Gog, params, row1, row2, &mut report) {
        return report;
    }
    check_positive_and_monotone(Rule::G1, [row1, row2], &mut report);
    for j in 1..params.n {
        let (top, bottom) = (row1[j - 1], row2[j - 1]);
        if top >= bottom {
            report.push(
                Rule::G2,
                Some((1, j)),
                vec![top, bottom],
                format!("g(1,{j})={top} is not below g(2,{j})={bottom}"),
            );
        }
        let cap = j as Entry + 2 + params.ell;
        if bottom >= cap {
            report.push(
                Rule::G2,
                Some((2, j)),
                vec![bottom],
                format!("g(2,{j})={bottom} is not below {cap}"),
            );
        }
        let next_top = row1[j];
        if next_top > bottom {
            report.push(
                Rule::G3,
                Some((2, j)),
                vec![next_top, bottom],
                format!("g(1,{})={next_top} > g(2,{j})={bottom}", j + 1),
            );
        }
    }
    report
}
