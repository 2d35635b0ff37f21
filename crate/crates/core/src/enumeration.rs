//! Exhaustive generation, exact counting and ranking of trapezoids.
//!
//! Everything here works column by column. Column `j < n` carries the pair
//! (row 1 entry, row 2 entry); column `n` carries the single leftover entry
//! (`m(2,n)` for Magog, `g(1,n)` for Gog). Every defining rule couples
//! entries of one column or of two adjacent columns, so a sweep over column
//! states is exact.
//!
//! The canonical order compares the column-major linearization
//! `t(1,1), t(2,1), t(1,2), t(2,2), ..., <end entry>` lexicographically.
//! Enumeration, rank and unrank all follow it.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::trapezoid::{Entry, GogTrapezoid, Kind, MagogTrapezoid, Trapezoid, TrapezoidParams};

/// Entries held by one column.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ColumnCells {
    Pair {
        top: Entry,
        bottom: Entry,
    },
    /// The end column, which holds a single entry.
    Single(Entry),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ColumnState {
    /// 1-based column index.
    pub column: usize,
    pub cells: ColumnCells,
}

// Internal state encoding; the end column uses (value, 0).
type State = (Entry, Entry);

#[derive(Debug, Clone, Copy)]
struct Layout {
    kind: Kind,
    n: usize,
    ell: Entry,
}

impl Layout {
    fn new(kind: Kind, params: TrapezoidParams) -> Result<Self> {
        params.check()?;
        Ok(Layout {
            kind,
            n: params.n,
            ell: params.ell,
        })
    }

    fn params(&self) -> TrapezoidParams {
        TrapezoidParams {
            n: self.n,
            ell: self.ell,
        }
    }

    /// Largest value appearing in column `j`.
    fn cap(&self, j: usize) -> Entry {
        let j = j as Entry;
        match self.kind {
            Kind::Gog if j < self.n as Entry => j + 1 + self.ell,
            _ => j + self.ell,
        }
    }

    fn top_range(&self, j: usize, prev: Option<State>) -> (Entry, Entry) {
        if j == self.n {
            let (pa, pb) = prev.expect("end column always has a predecessor");
            return match self.kind {
                Kind::Magog => (pb, self.cap(j)),
                Kind::Gog => (pa, pb),
            };
        }
        let lo = prev.map_or(1, |p| p.0);
        match self.kind {
            Kind::Magog => (lo, self.cap(j)),
            Kind::Gog => {
                let hi = self.cap(j) - 1;
                (lo, prev.map_or(hi, |p| hi.min(p.1)))
            }
        }
    }

    fn bottom_range(&self, j: usize, prev: Option<State>, top: Entry) -> (Entry, Entry) {
        if j == self.n {
            return (0, 0);
        }
        let pb = prev.map_or(1, |p| p.1);
        match self.kind {
            Kind::Magog => (top.max(pb), self.cap(j)),
            Kind::Gog => ((top + 1).max(pb), self.cap(j)),
        }
    }

    fn first(&self, j: usize, prev: Option<State>) -> Option<State> {
        let (lo, hi) = self.top_range(j, prev);
        (lo..=hi).find_map(|a| {
            let (blo, bhi) = self.bottom_range(j, prev, a);
            (blo <= bhi).then_some((a, blo))
        })
    }

    fn next_after(&self, j: usize, prev: Option<State>, cur: State) -> Option<State> {
        let (a, b) = cur;
        let (_, bhi) = self.bottom_range(j, prev, a);
        if b < bhi {
            return Some((a, b + 1));
        }
        let (_, hi) = self.top_range(j, prev);
        (a + 1..=hi).find_map(|a| {
            let (blo, bhi) = self.bottom_range(j, prev, a);
            (blo <= bhi).then_some((a, blo))
        })
    }

    /// Admissible states of column `j` after `prev`, in canonical order.
    fn states(&self, j: usize, prev: Option<State>) -> impl Iterator<Item = State> + '_ {
        let (lo, hi) = self.top_range(j, prev);
        (lo..=hi).flat_map(move |a| {
            let (blo, bhi) = self.bottom_range(j, prev, a);
            (blo..=bhi).map(move |b| (a, b))
        })
    }

    fn decompose(&self, t: &Trapezoid) -> Vec<State> {
        let n = self.n;
        let mut out: Vec<State> = (0..n - 1).map(|i| (t.row1()[i], t.row2()[i])).collect();
        let end = match self.kind {
            Kind::Magog => t.row2()[n - 1],
            Kind::Gog => t.row1()[n - 1],
        };
        out.push((end, 0));
        out
    }

    fn assemble(&self, states: &[State]) -> Trapezoid {
        let n = self.n;
        let mut row1: Vec<Entry> = states[..n - 1].iter().map(|s| s.0).collect();
        let mut row2: Vec<Entry> = states[..n - 1].iter().map(|s| s.1).collect();
        match self.kind {
            Kind::Magog => row2.push(states[n - 1].0),
            Kind::Gog => row1.push(states[n - 1].0),
        }
        Trapezoid::new(self.kind, self.params(), row1, row2)
    }

    fn column_state(&self, j: usize, s: State) -> ColumnState {
        let cells = if j == self.n {
            ColumnCells::Single(s.0)
        } else {
            ColumnCells::Pair { top: s.0, bottom: s.1 }
        };
        ColumnState { column: j, cells }
    }
}

/// Column-major linearization used as the canonical sort key.
pub fn canonical_key(t: &Trapezoid) -> Vec<Entry> {
    let n = t.params().n;
    let mut key = Vec::with_capacity(2 * n - 1);
    for i in 0..n - 1 {
        key.push(t.row1()[i]);
        key.push(t.row2()[i]);
    }
    match t.kind() {
        Kind::Magog => key.push(t.row2()[n - 1]),
        Kind::Gog => key.push(t.row1()[n - 1]),
    }
    key
}

/// Column states of a trapezoid, columns `1..=n`.
pub fn column_states(t: &Trapezoid) -> Result<Vec<ColumnState>> {
    t.ensure_valid()?;
    let layout = Layout::new(t.kind(), t.params())?;
    Ok(layout
        .decompose(t)
        .into_iter()
        .enumerate()
        .map(|(idx, s)| layout.column_state(idx + 1, s))
        .collect())
}

/// Backtracking walk over the canonical order.
#[derive(Debug, Clone)]
pub struct Enumeration {
    layout: Layout,
    current: Option<Vec<State>>,
    fresh: bool,
    remaining: Option<u64>,
}

impl Enumeration {
    fn from_state(layout: Layout, start: Option<Vec<State>>, remaining: Option<u64>) -> Self {
        Enumeration {
            layout,
            current: start,
            fresh: true,
            remaining,
        }
    }

    pub fn kind(&self) -> Kind {
        self.layout.kind
    }

    pub fn params(&self) -> TrapezoidParams {
        self.layout.params()
    }

    /// Fills columns `from..=n` with their smallest admissible states.
    fn fill(layout: &Layout, states: &mut Vec<State>, from: usize) -> bool {
        states.truncate(from - 1);
        for j in from..=layout.n {
            match layout.first(j, states.last().copied()) {
                Some(s) => states.push(s),
                None => return false,
            }
        }
        true
    }

    fn smallest(layout: &Layout) -> Option<Vec<State>> {
        let mut states = Vec::with_capacity(layout.n);
        Self::fill(layout, &mut states, 1).then_some(states)
    }

    fn advance(&mut self) -> bool {
        let layout = self.layout;
        let Some(states) = self.current.as_mut() else {
            return false;
        };
        let mut j = layout.n;
        loop {
            let prev = if j > 1 { Some(states[j - 2]) } else { None };
            let mut cursor = layout.next_after(j, prev, states[j - 1]);
            while let Some(s) = cursor {
                states[j - 1] = s;
                if Self::fill(&layout, states, j + 1) {
                    return true;
                }
                states.truncate(j);
                cursor = layout.next_after(j, prev, s);
            }
            if j == 1 {
                self.current = None;
                return false;
            }
            j -= 1;
        }
    }
}

impl Iterator for Enumeration {
    type Item = Trapezoid;

    fn next(&mut self) -> Option<Trapezoid> {
        if let Some(left) = self.remaining.as_mut() {
            if *left == 0 {
                return None;
            }
            *left -= 1;
        }
        if self.fresh {
            self.fresh = false;
        } else if !self.advance() {
            return None;
        }
        self.current.as_ref().map(|s| self.layout.assemble(s))
    }
}

/// All valid trapezoids of `kind` in canonical order.
pub fn enumerate(kind: Kind, params: TrapezoidParams) -> Result<Enumeration> {
    let layout = Layout::new(kind, params)?;
    Ok(Enumeration::from_state(layout, Enumeration::smallest(&layout), None))
}

pub fn enumerate_magog(params: TrapezoidParams) -> Result<impl Iterator<Item = MagogTrapezoid>> {
    Ok(enumerate(Kind::Magog, params)?.map(|t| match t {
        Trapezoid::Magog(m) => m,
        Trapezoid::Gog(_) => unreachable!(),
    }))
}

pub fn enumerate_gog(params: TrapezoidParams) -> Result<impl Iterator<Item = GogTrapezoid>> {
    Ok(enumerate(Kind::Gog, params)?.map(|t| match t {
        Trapezoid::Gog(g) => g,
        Trapezoid::Magog(_) => unreachable!(),
    }))
}

/// Rank bounds `[lo, hi)` of shard `index` out of `parts`.
pub fn partition_bounds(total: &BigUint, index: usize, parts: usize) -> Result<(BigUint, BigUint)> {
    if parts == 0 || index >= parts {
        return Err(Error::InvalidPartition { index, parts });
    }
    let lo = total * BigUint::from(index) / BigUint::from(parts);
    let hi = total * BigUint::from(index + 1) / BigUint::from(parts);
    Ok((lo, hi))
}

/// Shard `index` of `parts`: a contiguous run of the canonical order, so
/// concatenating shards `0..parts` reproduces the full enumeration.
pub fn enumerate_partition(kind: Kind, params: TrapezoidParams, index: usize, parts: usize) -> Result<Enumeration> {
    let ranker = Ranker::new(kind, params)?;
    ranker.enumerate_range_of_shard(index, parts)
}

/// Suffix counts for one column: the number of ways to complete a
/// trapezoid given the state of this column.
#[derive(Debug, Clone)]
pub struct CountTable {
    column: usize,
    width: usize,
    data: Vec<BigUint>,
}

impl CountTable {
    fn zeros(column: usize, cap: Entry) -> Self {
        let width = cap as usize + 2;
        CountTable {
            column,
            width,
            data: vec![BigUint::zero(); width * width],
        }
    }

    fn idx(&self, a: Entry, b: Entry) -> usize {
        a as usize * self.width + b as usize
    }

    fn at(&self, s: State) -> &BigUint {
        &self.data[self.idx(s.0, s.1)]
    }

    pub fn column(&self) -> usize {
        self.column
    }

    /// Completions counted from `state`; zero for states outside the column.
    pub fn get(&self, state: &ColumnState) -> BigUint {
        if state.column != self.column {
            return BigUint::zero();
        }
        let (a, b) = match state.cells {
            ColumnCells::Pair { top, bottom } => (top, bottom),
            ColumnCells::Single(v) => (v, 0),
        };
        let w = self.width as Entry;
        if a < 0 || b < 0 || a >= w || b >= w {
            return BigUint::zero();
        }
        self.at((a, b)).clone()
    }

    /// Turns the table into 2D suffix sums `T(a,b) = sum over a'>=a, b'>=b`.
    fn into_suffix_sums(mut self) -> Self {
        let w = self.width;
        for a in 0..w {
            for b in (0..w - 1).rev() {
                let i = a * w + b;
                let (lo, hi) = self.data.split_at_mut(i + 1);
                lo[i] += &hi[0];
            }
        }
        for a in (0..w - 1).rev() {
            let (lo, hi) = self.data.split_at_mut((a + 1) * w);
            for b in 0..w {
                lo[a * w + b] += &hi[b];
            }
        }
        self
    }
}

/// Runs the column sweep from the end column back to column 1. Calls `keep`
/// with each finished table, last column first.
fn sweep(layout: &Layout, mut keep: impl FnMut(&CountTable)) -> BigUint {
    let n = layout.n;
    let end_cap = layout.cap(n);
    // The end column stores c at (c, 0); E[x] = #{c >= x} lives in row 0 of
    // a 1D suffix.
    let mut end = CountTable::zeros(n, end_cap);
    for c in 1..=end_cap {
        let i = end.idx(c, 0);
        end.data[i] = BigUint::one();
    }
    keep(&end);
    let width = end.width;
    let mut suffix_end = vec![BigUint::zero(); width + 1];
    for c in (1..=end_cap as usize).rev() {
        suffix_end[c] = &suffix_end[c + 1] + end.at((c as Entry, 0));
    }

    let j = n - 1;
    let mut table = CountTable::zeros(j, layout.cap(j));
    for (a, b) in valid_pairs(layout, j) {
        let value = match layout.kind {
            Kind::Magog => suffix_end[b as usize].clone(),
            Kind::Gog => &suffix_end[a as usize] - &suffix_end[b as usize + 1],
        };
        let i = table.idx(a, b);
        table.data[i] = value;
    }
    keep(&table);

    for j in (1..n - 1).rev() {
        let sums = table.into_suffix_sums();
        let mut next = CountTable::zeros(j, layout.cap(j));
        for (a, b) in valid_pairs(layout, j) {
            let value = match layout.kind {
                Kind::Magog => sums.at((a, b)).clone(),
                Kind::Gog => sums.at((a, b)) - sums.at((b + 1, b)),
            };
            let i = next.idx(a, b);
            next.data[i] = value;
        }
        keep(&next);
        table = next;
    }

    valid_pairs(layout, 1)
        .map(|s| table.at(s))
        .fold(BigUint::zero(), |acc, v| acc + v)
}

/// States satisfying the within-column rules of pair column `j`.
fn valid_pairs(layout: &Layout, j: usize) -> impl Iterator<Item = State> {
    let cap = layout.cap(j);
    let strict = Entry::from(layout.kind == Kind::Gog);
    (1..=cap).flat_map(move |a| (a + strict..=cap).map(move |b| (a, b)))
}

/// Exact number of valid trapezoids of `kind`.
pub fn count(kind: Kind, params: TrapezoidParams) -> Result<BigUint> {
    let layout = Layout::new(kind, params)?;
    Ok(sweep(&layout, |_| {}))
}

/// Suffix-count tables for every column, used to rank and unrank.
#[derive(Debug, Clone)]
pub struct Ranker {
    layout: Layout,
    tables: Vec<CountTable>,
    total: BigUint,
}

impl Ranker {
    pub fn new(kind: Kind, params: TrapezoidParams) -> Result<Self> {
        let layout = Layout::new(kind, params)?;
        let mut tables = Vec::with_capacity(layout.n);
        let total = sweep(&layout, |t| tables.push(t.clone()));
        tables.reverse();
        Ok(Ranker { layout, tables, total })
    }

    pub fn kind(&self) -> Kind {
        self.layout.kind
    }

    pub fn params(&self) -> TrapezoidParams {
        self.layout.params()
    }

    pub fn total(&self) -> &BigUint {
        &self.total
    }

    /// Table for 1-based column `j`.
    pub fn table(&self, j: usize) -> &CountTable {
        &self.tables[j - 1]
    }

    /// 0-based position of `t` in the canonical order.
    pub fn rank(&self, t: &Trapezoid) -> Result<BigUint> {
        if t.kind() != self.layout.kind {
            return Err(Error::KindMismatch {
                expected: self.layout.kind,
                found: t.kind(),
            });
        }
        if t.params() != self.params() {
            return Err(Error::InvalidParams {
                n: t.params().n,
                ell: t.params().ell,
            });
        }
        t.ensure_valid()?;
        Ok(self.rank_states(&self.layout.decompose(t)))
    }

    fn rank_states(&self, states: &[State]) -> BigUint {
        let mut rank = BigUint::zero();
        let mut prev = None;
        for (idx, &s) in states.iter().enumerate() {
            let j = idx + 1;
            let table = &self.tables[idx];
            for cand in self.layout.states(j, prev) {
                if cand >= s {
                    break;
                }
                rank += table.at(cand);
            }
            prev = Some(s);
        }
        rank
    }

    fn unrank_states(&self, rank: &BigUint) -> Result<Vec<State>> {
        if rank >= &self.total {
            return Err(Error::RankOutOfRange {
                rank: rank.clone(),
                count: self.total.clone(),
            });
        }
        let mut rest = rank.clone();
        let mut states: Vec<State> = Vec::with_capacity(self.layout.n);
        for j in 1..=self.layout.n {
            let table = &self.tables[j - 1];
            let prev = states.last().copied();
            let mut chosen = None;
            for cand in self.layout.states(j, prev) {
                let here = table.at(cand);
                if &rest < here {
                    chosen = Some(cand);
                    break;
                }
                rest -= here;
            }
            states.push(chosen.expect("suffix counts cover every rank below the total"));
        }
        Ok(states)
    }

    pub fn unrank(&self, rank: &BigUint) -> Result<Trapezoid> {
        Ok(self.layout.assemble(&self.unrank_states(rank)?))
    }

    /// Canonical-order stream over ranks `lo..hi`.
    pub fn enumerate_range(&self, lo: &BigUint, hi: &BigUint) -> Result<Enumeration> {
        let hi = hi.min(&self.total);
        if lo >= hi {
            return Ok(Enumeration::from_state(self.layout, None, Some(0)));
        }
        let start = self.unrank_states(lo)?;
        let len = (hi - lo).to_u64().unwrap_or(u64::MAX);
        Ok(Enumeration::from_state(self.layout, Some(start), Some(len)))
    }

    pub fn enumerate_range_of_shard(&self, index: usize, parts: usize) -> Result<Enumeration> {
        let (lo, hi) = partition_bounds(&self.total, index, parts)?;
        self.enumerate_range(&lo, &hi)
    }
}

pub fn rank(t: &Trapezoid) -> Result<BigUint> {
    Ranker::new(t.kind(), t.params())?.rank(t)
}

pub fn unrank(kind: Kind, params: TrapezoidParams, rank: &BigUint) -> Result<Trapezoid> {
    Ranker::new(kind, params)?.unrank(rank)
}
