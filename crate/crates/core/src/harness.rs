//! Exhaustive verification that the two maps are mutually inverse
//! bijections between equinumerous families.
//!
//! Each verifier walks the canonical enumeration in rank-contiguous shards
//! on the rayon pool and merges per-shard results in shard order, so the
//! failure list is always sorted by canonical order regardless of
//! scheduling. Checks that need enumeration are reported as `skipped` when
//! the family is larger than [`HarnessConfig::enumeration_cap`].

use std::time::Instant;

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::Serialize;

use crate::bijection::{gog_case, gog_to_magog_with_case, magog_to_gog_with_case, pivot, smallest_bug};
use crate::enumeration::{count, enumerate, Ranker};
use crate::error::Result;
use crate::format::to_json_value;
use crate::trapezoid::{Kind, Trapezoid, TrapezoidParams};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HarnessConfig {
    /// Largest family that enumeration-backed checks will walk.
    pub enumeration_cap: u64,
    /// Failures kept in full detail; the total is always counted.
    pub failure_cap: usize,
}

impl Default for HarnessConfig {
    fn default() -> Self {
        HarnessConfig {
            enumeration_cap: 10_000_000,
            failure_cap: 100,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    Passed,
    Failed,
    Skipped,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckId {
    Roundtrip,
    CaseCorrespondence,
    PivotAgreement,
    Equinumerosity,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Failure {
    pub check: String,
    pub instance: Option<serde_json::Value>,
    pub detail: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct PerKind<T> {
    pub magog: T,
    pub gog: T,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyReport {
    pub check: CheckId,
    pub params: TrapezoidParams,
    pub status: CheckStatus,
    pub instances_checked: PerKind<u64>,
    /// Exact family sizes in decimal.
    pub counts: PerKind<String>,
    pub failure_count: u64,
    pub failures: Vec<Failure>,
    pub notes: Vec<String>,
    pub elapsed_seconds: f64,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.status != CheckStatus::Failed
    }
}

#[derive(Default)]
struct Tally {
    checked: u64,
    failure_count: u64,
    failures: Vec<Failure>,
}

impl Tally {
    fn fail(&mut self, cap: usize, check: &str, t: &Trapezoid, detail: String) {
        self.failure_count += 1;
        if self.failures.len() < cap {
            self.failures.push(Failure {
                check: check.to_string(),
                instance: Some(to_json_value(t)),
                detail,
            });
        }
    }

    fn absorb(&mut self, other: Tally, cap: usize) {
        self.checked += other.checked;
        self.failure_count += other.failure_count;
        let room = cap.saturating_sub(self.failures.len());
        self.failures.extend(other.failures.into_iter().take(room));
    }
}

fn shard_count(total: u64) -> usize {
    let threads = rayon::current_num_threads().max(1);
    (threads * 4).min(total.max(1) as usize)
}

/// Runs `check` over every member of a family, in parallel shards.
fn scan<F>(ranker: &Ranker, config: &HarnessConfig, check: F) -> Result<Tally>
where
    F: Fn(&Trapezoid, &mut Tally) + Sync,
{
    let total = ranker.total().to_u64().unwrap_or(u64::MAX);
    let parts = shard_count(total);
    let shards: Vec<Result<Tally>> = (0..parts)
        .into_par_iter()
        .map(|i| {
            let mut tally = Tally::default();
            for t in ranker.enumerate_range_of_shard(i, parts)? {
                tally.checked += 1;
                check(&t, &mut tally);
            }
            Ok(tally)
        })
        .collect();
    let mut merged = Tally::default();
    for shard in shards {
        merged.absorb(shard?, config.failure_cap);
    }
    Ok(merged)
}

struct Families {
    counts: PerKind<BigUint>,
    rankers: Option<PerKind<Ranker>>,
}

fn families(params: TrapezoidParams, config: &HarnessConfig) -> Result<Families> {
    params.check()?;
    let counts = PerKind {
        magog: count(Kind::Magog, params)?,
        gog: count(Kind::Gog, params)?,
    };
    let cap = BigUint::from(config.enumeration_cap);
    let rankers = if counts.magog <= cap && counts.gog <= cap {
        Some(PerKind {
            magog: Ranker::new(Kind::Magog, params)?,
            gog: Ranker::new(Kind::Gog, params)?,
        })
    } else {
        None
    };
    Ok(Families { counts, rankers })
}

fn report(check: CheckId, params: TrapezoidParams, counts: &PerKind<BigUint>, started: Instant) -> VerifyReport {
    VerifyReport {
        check,
        params,
        status: CheckStatus::Passed,
        instances_checked: PerKind::default(),
        counts: PerKind {
            magog: counts.magog.to_string(),
            gog: counts.gog.to_string(),
        },
        failure_count: 0,
        failures: Vec::new(),
        notes: Vec::new(),
        elapsed_seconds: started.elapsed().as_secs_f64(),
    }
}

fn skipped(mut r: VerifyReport, config: &HarnessConfig) -> VerifyReport {
    r.status = CheckStatus::Skipped;
    r.notes.push(format!(
        "family larger than the enumeration cap of {}; not checked",
        config.enumeration_cap
    ));
    r
}

fn finish(
    mut r: VerifyReport,
    magog: Tally,
    gog: Option<Tally>,
    config: &HarnessConfig,
    started: Instant,
) -> VerifyReport {
    let mut all = Tally::default();
    r.instances_checked.magog = magog.checked;
    all.absorb(magog, config.failure_cap);
    if let Some(gog) = gog {
        r.instances_checked.gog = gog.checked;
        all.absorb(gog, config.failure_cap);
    }
    r.failure_count = all.failure_count;
    r.failures = all.failures;
    if r.failure_count > 0 {
        r.status = CheckStatus::Failed;
    }
    r.elapsed_seconds = started.elapsed().as_secs_f64();
    r
}

/// Every Magog trapezoid maps to a valid Gog trapezoid that maps back, and
/// vice versa.
pub fn verify_roundtrip(params: TrapezoidParams, config: &HarnessConfig) -> Result<VerifyReport> {
    let started = Instant::now();
    let fam = families(params, config)?;
    let r = report(CheckId::Roundtrip, params, &fam.counts, started);
    let Some(rankers) = fam.rankers else {
        return Ok(skipped(r, config));
    };
    let cap = config.failure_cap;
    let magog = scan(&rankers.magog, config, |t, tally| {
        let Trapezoid::Magog(m) = t else { unreachable!() };
        if !m.is_valid() {
            tally.fail(cap, "enumerated_valid", t, m.validate().to_string());
            return;
        }
        let (g, _) = magog_to_gog_with_case(m);
        let report = g.validate();
        if !report.is_valid() {
            tally.fail(cap, "image_valid", t, format!("image is not a Gog trapezoid: {report}"));
            return;
        }
        let (back, _) = gog_to_magog_with_case(&g);
        if &back != m {
            tally.fail(
                cap,
                "inverse",
                t,
                format!("maps back to {:?} / {:?}", back.row1(), back.row2()),
            );
        }
    })?;
    let gog = scan(&rankers.gog, config, |t, tally| {
        let Trapezoid::Gog(g) = t else { unreachable!() };
        if !g.is_valid() {
            tally.fail(cap, "enumerated_valid", t, g.validate().to_string());
            return;
        }
        let (m, _) = gog_to_magog_with_case(g);
        let report = m.validate();
        if !report.is_valid() {
            tally.fail(
                cap,
                "image_valid",
                t,
                format!("image is not a Magog trapezoid: {report}"),
            );
            return;
        }
        let (back, _) = magog_to_gog_with_case(&m);
        if &back != g {
            tally.fail(
                cap,
                "inverse",
                t,
                format!("maps back to {:?} / {:?}", back.row1(), back.row2()),
            );
        }
    })?;
    Ok(finish(r, magog, Some(gog), config, started))
}

/// The case of every Magog trapezoid equals the case of its image,
/// including the split index.
pub fn verify_case_correspondence(params: TrapezoidParams, config: &HarnessConfig) -> Result<VerifyReport> {
    let started = Instant::now();
    let fam = families(params, config)?;
    let r = report(CheckId::CaseCorrespondence, params, &fam.counts, started);
    let Some(rankers) = fam.rankers else {
        return Ok(skipped(r, config));
    };
    let cap = config.failure_cap;
    let magog = scan(&rankers.magog, config, |t, tally| {
        let Trapezoid::Magog(m) = t else { unreachable!() };
        let (g, case) = magog_to_gog_with_case(m);
        let image_case = gog_case(&g);
        if case != image_case {
            tally.fail(cap, "case_correspondence", t, format!("{case} maps to {image_case}"));
        }
    })?;
    Ok(finish(r, magog, None, config, started))
}

/// The pivot of every image equals the smallest bug, or `n - 1` when the
/// Magog trapezoid has no bug.
pub fn verify_pivot_agreement(params: TrapezoidParams, config: &HarnessConfig) -> Result<VerifyReport> {
    let started = Instant::now();
    let fam = families(params, config)?;
    let r = report(CheckId::PivotAgreement, params, &fam.counts, started);
    let Some(rankers) = fam.rankers else {
        return Ok(skipped(r, config));
    };
    let cap = config.failure_cap;
    let n = params.n;
    let magog = scan(&rankers.magog, config, |t, tally| {
        let Trapezoid::Magog(m) = t else { unreachable!() };
        let expected = smallest_bug(m).unwrap_or(n - 1);
        let (g, _) = magog_to_gog_with_case(m);
        let k = pivot(&g);
        if k != expected {
            tally.fail(cap, "pivot_agreement", t, format!("pivot {k}, expected {expected}"));
        }
    })?;
    Ok(finish(r, magog, None, config, started))
}

/// Both families have the same size, by the column sweep and, below the
/// cap, by enumeration.
pub fn verify_equinumerosity(params: TrapezoidParams, config: &HarnessConfig) -> Result<VerifyReport> {
    let started = Instant::now();
    let fam = families(params, config)?;
    let mut r = report(CheckId::Equinumerosity, params, &fam.counts, started);
    let mut failures = Tally::default();
    if fam.counts.magog != fam.counts.gog {
        failures.failure_count += 1;
        failures.failures.push(Failure {
            check: "dp_equal".into(),
            instance: None,
            detail: format!("magog count {} != gog count {}", fam.counts.magog, fam.counts.gog),
        });
    }
    match fam.rankers {
        None => r.notes.push(format!(
            "enumeration skipped above the cap of {}; counts compared by column sweep only",
            config.enumeration_cap
        )),
        Some(_) => {
            // a plain walk, so the tally does not lean on the sweep's totals
            for (kind, dp) in [(Kind::Magog, &fam.counts.magog), (Kind::Gog, &fam.counts.gog)] {
                let walked = enumerate(kind, params)?.count() as u64;
                match kind {
                    Kind::Magog => r.instances_checked.magog = walked,
                    Kind::Gog => r.instances_checked.gog = walked,
                }
                if BigUint::from(walked) != *dp {
                    failures.failure_count += 1;
                    failures.failures.push(Failure {
                        check: "dp_matches_enumeration".into(),
                        instance: None,
                        detail: format!("{kind}: column sweep gives {dp}, enumeration yields {walked}"),
                    });
                }
            }
        }
    }
    r.failure_count = failures.failure_count;
    r.failures = failures.failures;
    if r.failure_count > 0 {
        r.status = CheckStatus::Failed;
    }
    r.elapsed_seconds = started.elapsed().as_secs_f64();
    Ok(r)
}

/// All four verifiers at one parameter point.
pub fn verify_all(params: TrapezoidParams, config: &HarnessConfig) -> Result<Vec<VerifyReport>> {
    Ok(vec![
        verify_roundtrip(params, config)?,
        verify_case_correspondence(params, config)?,
        verify_pivot_agreement(params, config)?,
        verify_equinumerosity(params, config)?,
    ])
}

pub fn verify_grid(
    ns: impl IntoIterator<Item = usize>,
    ells: impl IntoIterator<Item = i64> + Clone,
    config: &HarnessConfig,
) -> Result<Vec<VerifyReport>> {
    let mut out = Vec::new();
    for n in ns {
        for ell in ells.clone() {
            out.extend(verify_all(TrapezoidParams::new(n, ell)?, config)?);
        }
    }
    Ok(out)
}
