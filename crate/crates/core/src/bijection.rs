//! The block-moving bijection between Magog and Gog trapezoids.
//!
//! [`magog_to_gog`] splits on the smallest *bug* of the Magog trapezoid, an
//! index `j` with `m(1,j+1) > m(2,j) + 1`. [`gog_to_magog`] splits on the
//! *pivot*, the largest `j` with `g(2,j-1) <= g(1,j+1) + 1`. In both
//! directions the three cases correspond, so the case tag of `M` equals the
//! case tag of its image.
//!
//! The pivot is searched over `1..=n-1` with `j = 1` always admissible. For
//! `ell = 0` the search never gets below 2 (`g(2,1) = 2` makes `j = 2`
//! admissible); for `ell >= 1` a Magog trapezoid may have its smallest bug
//! at 1, and its image then needs pivot 1 to come back.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::trapezoid::{Entry, GogTrapezoid, MagogTrapezoid};

/// Which branch of the bijection applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CaseTag {
    /// A bug (Magog) or pivot (Gog) at `k`, with `1 <= k <= n - 2`.
    Case1(usize),
    /// Bug-free with `m(2,n-1) < m(2,n)`; pivot `n-1` with `g(1,n) < g(2,n-1)`.
    Case2,
    /// Bug-free with `m(2,n-1) = m(2,n)`; pivot `n-1` with `g(1,n) = g(2,n-1)`.
    Case3,
}

impl fmt::Display for CaseTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CaseTag::Case1(k) => write!(f, "Case1({k})"),
            CaseTag::Case2 => f.write_str("Case2"),
            CaseTag::Case3 => f.write_str("Case3"),
        }
    }
}

// 1-based views over the rows, so the formulas read like their definitions.
struct Rows<'a> {
    top: &'a [Entry],
    bottom: &'a [Entry],
}

impl Rows<'_> {
    fn top(&self, j: usize) -> Entry {
        self.top[j - 1]
    }
    fn bottom(&self, j: usize) -> Entry {
        self.bottom[j - 1]
    }
}

pub(crate) fn smallest_bug(m: &MagogTrapezoid) -> Option<usize> {
    let r = Rows {
        top: m.row1(),
        bottom: m.row2(),
    };
    (1..=m.n() - 2).find(|&j| r.top(j + 1) > r.bottom(j) + 1)
}

pub(crate) fn pivot(g: &GogTrapezoid) -> usize {
    let r = Rows {
        top: g.row1(),
        bottom: g.row2(),
    };
    (2..=g.n() - 1)
        .rev()
        .find(|&j| r.bottom(j - 1) <= r.top(j + 1) + 1)
        .unwrap_or(1)
}

/// Least bug of a valid Magog trapezoid, if any.
pub fn find_smallest_bug(m: &MagogTrapezoid) -> Result<Option<usize>> {
    m.ensure_valid()?;
    Ok(smallest_bug(m))
}

pub fn classify_magog(m: &MagogTrapezoid) -> Result<CaseTag> {
    m.ensure_valid()?;
    Ok(magog_case(m))
}

pub(crate) fn magog_case(m: &MagogTrapezoid) -> CaseTag {
    let n = m.n();
    match smallest_bug(m) {
        Some(k) => CaseTag::Case1(k),
        None if m.at(2, n - 1) < m.at(2, n) => CaseTag::Case2,
        None => CaseTag::Case3,
    }
}

/// Pivot index `k` of a valid Gog trapezoid, in `1..=n-1`.
pub fn compute_pivot(g: &GogTrapezoid) -> Result<usize> {
    g.ensure_valid()?;
    Ok(pivot(g))
}

pub fn classify_gog(g: &GogTrapezoid) -> Result<CaseTag> {
    g.ensure_valid()?;
    Ok(gog_case(g))
}

pub(crate) fn gog_case(g: &GogTrapezoid) -> CaseTag {
    let n = g.n();
    let k = pivot(g);
    if k <= n - 2 {
        CaseTag::Case1(k)
    } else if g.at(1, n) < g.at(2, n - 1) {
        CaseTag::Case2
    } else {
        CaseTag::Case3
    }
}

/// Maps a valid Magog trapezoid to its Gog image.
pub fn magog_to_gog(m: &MagogTrapezoid) -> Result<GogTrapezoid> {
    m.ensure_valid()?;
    Ok(magog_to_gog_with_case(m).0)
}

/// Like [`magog_to_gog`] but skips validation and also returns the case.
/// The input must be valid.
pub fn magog_to_gog_with_case(m: &MagogTrapezoid) -> (GogTrapezoid, CaseTag) {
    let n = m.n();
    let r = Rows {
        top: m.row1(),
        bottom: m.row2(),
    };
    let case = magog_case(m);
    let mut top = Vec::with_capacity(n);
    let mut bottom = Vec::with_capacity(n - 1);
    match case {
        CaseTag::Case1(k) => {
            bottom.extend((1..k).map(|j| r.bottom(j) + 1));
            bottom.extend((k..n).map(|j| r.bottom(j + 1)));
            top.extend((1..=k).map(|j| r.top(j)));
            top.push(r.bottom(k));
            top.extend((k + 2..=n).map(|j| r.top(j - 1) - 2));
        }
        CaseTag::Case2 => {
            bottom.extend((1..=n - 2).map(|j| r.bottom(j) + 1));
            bottom.push(r.bottom(n));
            top.extend_from_slice(r.top);
            top.push(r.bottom(n - 1));
        }
        CaseTag::Case3 => {
            bottom.extend((1..n).map(|j| r.bottom(j) + 1));
            top.extend_from_slice(r.top);
            top.push(r.bottom(n) + 1);
        }
    }
    (GogTrapezoid::new(m.params(), top, bottom), case)
}

/// Maps a valid Gog trapezoid to its Magog preimage.
pub fn gog_to_magog(g: &GogTrapezoid) -> Result<MagogTrapezoid> {
    g.ensure_valid()?;
    Ok(gog_to_magog_with_case(g).0)
}

/// Like [`gog_to_magog`] but skips validation and also returns the case.
/// The input must be valid.
pub fn gog_to_magog_with_case(g: &GogTrapezoid) -> (MagogTrapezoid, CaseTag) {
    let n = g.n();
    let r = Rows {
        top: g.row1(),
        bottom: g.row2(),
    };
    let case = gog_case(g);
    let mut top = Vec::with_capacity(n - 1);
    let mut bottom = Vec::with_capacity(n);
    match case {
        CaseTag::Case1(k) => {
            bottom.extend((1..k).map(|j| r.bottom(j) - 1));
            bottom.push(r.top(k + 1));
            bottom.extend((k + 1..=n).map(|j| r.bottom(j - 1)));
            top.extend((1..=k).map(|j| r.top(j)));
            top.extend((k + 1..n).map(|j| r.top(j + 1) + 2));
        }
        CaseTag::Case2 => {
            bottom.extend((1..=n - 2).map(|j| r.bottom(j) - 1));
            bottom.push(r.top(n));
            bottom.push(r.bottom(n - 1));
            top.extend_from_slice(&r.top[..n - 1]);
        }
        CaseTag::Case3 => {
            bottom.extend((1..n).map(|j| r.bottom(j) - 1));
            bottom.push(r.top(n) - 1);
            top.extend_from_slice(&r.top[..n - 1]);
        }
    }
    (MagogTrapezoid::new(g.params(), top, bottom), case)
}
