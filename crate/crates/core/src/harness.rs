// Copyright 2026 The mwspoil Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

//! Experiment orchestration: Monte Carlo campaigns, corpus audits and the
//! tables they produce.

use std::fs;
use std::path::{Path, PathBuf};

use rayon::prelude::*;

use crate::extend::{extend_profile, ExtensionConfig};
use crate::io::{read_blt_file, Cell, ResultsTable};
use crate::methods::{Method, MethodError, TiePolicy};
use crate::profile::Profile;
use crate::simgen::{CultureSpec, Sampler, SimError};
use crate::spoiler::{
    analyze_spoilers, clone_statistics, stability_summary, weakness_flags, CloneSummary, SpoilerReport,
};
use crate::subelections::enumerate_subelections;

/// 95% Wilson score interval for `successes` out of `n`.
pub fn wilson_interval(successes: u64, n: u64) -> (f64, f64) {
    if n == 0 {
        return (0.0, 1.0);
    }
    const Z: f64 = 1.959_963_984_540_054;
    let (n, p) = (n as f64, successes as f64 / n as f64);
    let denom = 1.0 + Z * Z / n;
    let centre = (p + Z * Z / (2.0 * n)) / denom;
    let half = Z * (p * (1.0 - p) / n + Z * Z / (4.0 * n * n)).sqrt() / denom;
    ((centre - half).max(0.0), (centre + half).min(1.0))
}

/// Per-method counters. Every field is a sum or a max, so tallies merge in
/// any order to the same result.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct MethodTally {
    /// Trials (or elections) that entered the statistics.
    pub used: u64,
    /// Left out because a tie could not be resolved.
    pub ties_discarded: u64,
    /// Left out because the rule failed for another reason.
    pub errors: u64,
    /// Used trials in which some tie was broken by the policy.
    pub ties_broken: u64,
    /// Used trials in which a removal ended in an unresolved tie. Each counts
    /// as a spoiler trial; the strict columns leave them out instead.
    pub rerun_ties: u64,
    /// Spoiler trials without an unresolved re-run tie.
    pub strict_spoiler: u64,
    pub spoiler: u64,
    pub multiple: u64,
    /// Trials with at least one spoiler among the plurality losers.
    pub plurality_loser: u64,
    /// Trials with at least one spoiler among the top-k losers.
    pub topk_loser: u64,
    /// Largest number of distinct alternate outcomes in one trial.
    pub max_alt_sets: u64,
    /// Largest number of seats changed by one removal.
    pub max_changed: u64,
    /// Spoiler trials where some removal changed more than one seat.
    pub multi_seat_changes: u64,
    pub clones: CloneSummary,
}

impl MethodTally {
    fn record(&mut self, p: &Profile, report: Result<SpoilerReport, MethodError>, clones: bool) {
        let report = match report {
            Ok(r) => r,
            Err(MethodError::Tie(_)) => {
                self.ties_discarded += 1;
                return;
            }
            Err(_) => {
                self.errors += 1;
                return;
            }
        };
        self.used += 1;
        self.ties_broken += report.tie_encountered() as u64;
        let unresolved = report.has_unresolved_tie();
        self.rerun_ties += unresolved as u64;
        let spoilers: Vec<_> = report.spoilers().collect();
        if spoilers.is_empty() {
            return;
        }
        self.strict_spoiler += !unresolved as u64;
        let flags = weakness_flags(p);
        self.spoiler += 1;
        self.multiple += (spoilers.len() >= 2) as u64;
        self.plurality_loser += spoilers.iter().any(|&c| flags.is_plurality_loser(c)) as u64;
        self.topk_loser += spoilers.iter().any(|&c| flags.is_top_k_loser(c)) as u64;
        let s = stability_summary(&report);
        self.max_alt_sets = self.max_alt_sets.max(s.num_alt_sets as u64);
        self.max_changed = self.max_changed.max(s.max_changed as u64);
        self.multi_seat_changes += (s.max_changed > 1) as u64;
        if clones {
            self.clones = self.clones.merge(clone_statistics([(p, &report)]));
        }
    }

    pub fn merge(self, o: MethodTally) -> MethodTally {
        MethodTally {
            used: self.used + o.used,
            ties_discarded: self.ties_discarded + o.ties_discarded,
            errors: self.errors + o.errors,
            ties_broken: self.ties_broken + o.ties_broken,
            rerun_ties: self.rerun_ties + o.rerun_ties,
            strict_spoiler: self.strict_spoiler + o.strict_spoiler,
            spoiler: self.spoiler + o.spoiler,
            multiple: self.multiple + o.multiple,
            plurality_loser: self.plurality_loser + o.plurality_loser,
            topk_loser: self.topk_loser + o.topk_loser,
            max_alt_sets: self.max_alt_sets.max(o.max_alt_sets),
            max_changed: self.max_changed.max(o.max_changed),
            multi_seat_changes: self.multi_seat_changes + o.multi_seat_changes,
            clones: self.clones.merge(o.clones),
        }
    }

    fn fraction(&self, count: u64) -> f64 {
        if self.used == 0 {
            0.0
        } else {
            count as f64 / self.used as f64
        }
    }

    pub fn p_spoiler(&self) -> f64 {
        self.fraction(self.spoiler)
    }

    pub fn p_multiple(&self) -> f64 {
        self.fraction(self.multiple)
    }

    pub fn p_plurality_loser(&self) -> f64 {
        self.fraction(self.plurality_loser)
    }

    pub fn p_topk_loser(&self) -> f64 {
        self.fraction(self.topk_loser)
    }

    /// Spoiler rate with unresolved re-run ties dropped rather than counted.
    pub fn p_spoiler_strict(&self) -> f64 {
        let used = self.used - self.rerun_ties;
        if used == 0 {
            0.0
        } else {
            self.strict_spoiler as f64 / used as f64
        }
    }

    pub fn spoiler_interval(&self) -> (f64, f64) {
        wilson_interval(self.spoiler, self.used)
    }
}

/// Aggregated outcome of one experiment, one tally per method in request
/// order.
#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentResult {
    pub requested: u64,
    pub methods: Vec<(Method, MethodTally)>,
}

impl ExperimentResult {
    fn empty(methods: &[Method]) -> Self {
        ExperimentResult {
            requested: 0,
            methods: methods.iter().map(|&m| (m, MethodTally::default())).collect(),
        }
    }

    fn merge(mut self, o: ExperimentResult) -> Self {
        self.requested += o.requested;
        for ((_, a), (_, b)) in self.methods.iter_mut().zip(o.methods) {
            *a = a.merge(b);
        }
        self
    }

    pub fn tally(&self, method: Method) -> Option<&MethodTally> {
        self.methods.iter().find(|(m, _)| *m == method).map(|(_, t)| t)
    }

    /// One row per method. Percentages have one decimal; the loser columns
    /// count trials in which at least one spoiler is a plurality (top-k)
    /// loser. `spoiler_strict` drops trials where a removal tied instead of
    /// counting them as changed.
    pub fn to_table(&self) -> ResultsTable {
        let mut t = ResultsTable::new([
            "method",
            "spoiler",
            "spoiler_ci_low",
            "spoiler_ci_high",
            "multiple_spoilers",
            "plurality_loser_is_spoiler",
            "topk_loser_is_spoiler",
            "spoiler_strict",
            "trials_used",
            "ties_discarded",
            "rerun_ties",
            "errors",
        ]);
        for (m, tally) in &self.methods {
            let (lo, hi) = tally.spoiler_interval();
            t.push(vec![
                m.label().into(),
                Cell::Percent(tally.p_spoiler()),
                Cell::Percent(lo),
                Cell::Percent(hi),
                Cell::Percent(tally.p_multiple()),
                Cell::Percent(tally.p_plurality_loser()),
                Cell::Percent(tally.p_topk_loser()),
                Cell::Percent(tally.p_spoiler_strict()),
                tally.used.into(),
                tally.ties_discarded.into(),
                tally.rerun_ties.into(),
                tally.errors.into(),
            ]);
        }
        t
    }

    /// Counts for audits: spoiler elections, stability and clone buckets.
    pub fn to_audit_table(&self) -> ResultsTable {
        let mut t = ResultsTable::new([
            "method",
            "elections",
            "spoiler_elections",
            "multiple_spoiler_elections",
            "plurality_loser_is_spoiler",
            "topk_loser_is_spoiler",
            "max_winning_sets",
            "max_seats_changed",
            "multi_seat_changes",
            "ties_discarded",
            "rerun_ties",
            "b_as_gt_b_ws",
            "b_as_lt_b_ws",
            "b_as_eq_b_ws",
            "ratio",
        ]);
        for (m, x) in &self.methods {
            t.push(vec![
                m.label().into(),
                x.used.into(),
                x.spoiler.into(),
                x.multiple.into(),
                x.plurality_loser.into(),
                x.topk_loser.into(),
                // The original outcome plus each distinct alternate.
                (x.max_alt_sets + (x.used > 0) as u64).into(),
                x.max_changed.into(),
                x.multi_seat_changes.into(),
                x.ties_discarded.into(),
                x.rerun_ties.into(),
                x.clones.a_closer.into(),
                x.clones.w_closer.into(),
                x.clones.equal.into(),
                match x.clones.ratio() {
                    Some(r) => Cell::Number(r, 2),
                    None => "undefined".into(),
                },
            ]);
        }
        t
    }
}

fn run_all(p: &Profile, methods: &[Method], tie: TiePolicy, clones: bool) -> ExperimentResult {
    let mut out = ExperimentResult::empty(methods);
    out.requested = 1;
    for (method, tally) in out.methods.iter_mut() {
        tally.record(p, analyze_spoilers(p, *method, tie), clones);
    }
    out
}

fn in_pool<T: Send>(threads: usize, f: impl FnOnce() -> T + Send) -> T {
    rayon::ThreadPoolBuilder::new().num_threads(threads).build().expect("thread pool").install(f)
}

#[derive(Clone, Copy, Debug)]
pub struct SimulationOptions {
    pub trials: u64,
    pub tie: TiePolicy,
    /// Worker threads; 0 lets the pool decide. Results do not depend on it.
    pub threads: usize,
}

/// Draws `trials` profiles and audits each under every method.
pub fn run_simulation(
    spec: CultureSpec,
    methods: &[Method],
    opts: SimulationOptions,
) -> Result<ExperimentResult, SimError> {
    let sampler = Sampler::new(spec)?;
    Ok(in_pool(opts.threads, || {
        (0..opts.trials)
            .into_par_iter()
            .map(|t| run_all(&sampler.sample(t), methods, opts.tie, false))
            .reduce(|| ExperimentResult::empty(methods), ExperimentResult::merge)
    }))
}

/// The per-method verdicts of a single simulation trial.
pub fn simulate_trial(
    spec: CultureSpec,
    trial: u64,
    methods: &[Method],
    tie: TiePolicy,
) -> Result<(Profile, Vec<Result<SpoilerReport, MethodError>>), SimError> {
    let p = Sampler::new(spec)?.sample(trial);
    let reports = methods.iter().map(|&m| analyze_spoilers(&p, m, tie)).collect();
    Ok((p, reports))
}

/// `.blt` files under `root` (or `root` itself), sorted by path.
pub fn collect_blt_files(root: &Path) -> std::io::Result<Vec<PathBuf>> {
    fn walk(dir: &Path, out: &mut Vec<PathBuf>) -> std::io::Result<()> {
        for entry in fs::read_dir(dir)? {
            let path = entry?.path();
            if path.is_dir() {
                walk(&path, out)?;
            } else if path.extension().is_some_and(|e| e.eq_ignore_ascii_case("blt")) {
                out.push(path);
            }
        }
        Ok(())
    }
    let mut out = Vec::new();
    if root.is_dir() {
        walk(root, &mut out)?;
    } else {
        out.push(root.to_path_buf());
    }
    out.sort();
    Ok(out)
}

#[derive(Clone, Copy, Debug, Default)]
pub struct AuditOptions {
    /// Replace each election's seat count before filtering.
    pub k_override: Option<usize>,
    pub tie: TiePolicy,
    /// Complete partial ballots first.
    pub extend: Option<ExtensionConfig>,
    pub threads: usize,
}

/// One audited (election, method) pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ElectionDetail {
    pub file: String,
    pub title: String,
    pub candidates: usize,
    pub seats: usize,
    pub voters: u64,
    pub method: Method,
    /// `ok`, `tie` or the error text.
    pub status: String,
    pub winners: String,
    pub spoilers: String,
    pub alternates: String,
}

#[derive(Clone, Debug)]
pub struct CorpusAudit {
    pub result: ExperimentResult,
    pub details: Vec<ElectionDetail>,
    /// Files that failed to parse, with the reason.
    pub failures: Vec<(PathBuf, String)>,
    /// Parsed elections outside `m > k + 1`, `k > 1`.
    pub filtered_out: usize,
}

impl CorpusAudit {
    pub fn detail_table(&self) -> ResultsTable {
        let mut t = ResultsTable::new([
            "file",
            "title",
            "m",
            "k",
            "n",
            "method",
            "status",
            "winners",
            "spoilers",
            "alternates",
        ]);
        for d in &self.details {
            t.push(vec![
                d.file.clone().into(),
                d.title.clone().into(),
                (d.candidates as u64).into(),
                (d.seats as u64).into(),
                d.voters.into(),
                d.method.label().into(),
                d.status.clone().into(),
                d.winners.clone().into(),
                d.spoilers.clone().into(),
                d.alternates.clone().into(),
            ]);
        }
        t
    }
}

fn detail(
    file: &Path,
    p: &Profile,
    method: Method,
    report: &Result<SpoilerReport, MethodError>,
) -> ElectionDetail {
    let (status, winners, spoilers, alternates) = match report {
        Ok(r) => {
            let names: Vec<&str> = r.spoilers().map(|c| p.name(c)).collect();
            let alts: Vec<String> = r.alternate_outcomes().iter().map(|o| o.display_names(p)).collect();
            let status = if r.has_unresolved_tie() { "removal_tie" } else { "ok" };
            (status.to_string(), r.original.display_names(p), names.join("; "), alts.join(" / "))
        }
        Err(MethodError::Tie(_)) => ("tie".into(), String::new(), String::new(), String::new()),
        Err(e) => (e.to_string(), String::new(), String::new(), String::new()),
    };
    ElectionDetail {
        file: file.display().to_string(),
        title: p.title().to_string(),
        candidates: p.num_candidates(),
        seats: p.seats(),
        voters: p.total_weight(),
        method,
        status,
        winners,
        spoilers,
        alternates,
    }
}

enum Loaded {
    Audit(Profile),
    Filtered,
    Failed(String),
}

fn load(path: &Path, opts: &AuditOptions) -> Loaded {
    let mut p = match read_blt_file(path) {
        Ok(p) => p,
        Err(e) => return Loaded::Failed(e),
    };
    if let Some(k) = opts.k_override {
        if k == 0 || k >= p.num_candidates() {
            return Loaded::Filtered;
        }
        p = p.with_seats(k).expect("seat count checked");
    }
    if p.seats() <= 1 || p.num_candidates() <= p.seats() + 1 {
        return Loaded::Filtered;
    }
    if let Some(cfg) = &opts.extend {
        match extend_profile(&p, cfg) {
            Ok(e) => p = e,
            Err(e) => return Loaded::Failed(e.to_string()),
        }
    }
    Loaded::Audit(p)
}

/// Audits every election in `files` under each method.
pub fn run_corpus_audit(files: &[PathBuf], methods: &[Method], opts: AuditOptions) -> CorpusAudit {
    let per_file: Vec<(ExperimentResult, Vec<ElectionDetail>, Option<String>, bool)> =
        in_pool(opts.threads, || {
            files
                .par_iter()
                .map(|path| match load(path, &opts) {
                    Loaded::Failed(e) => (ExperimentResult::empty(methods), Vec::new(), Some(e), false),
                    Loaded::Filtered => (ExperimentResult::empty(methods), Vec::new(), None, true),
                    Loaded::Audit(p) => {
                        let mut result = ExperimentResult::empty(methods);
                        result.requested = 1;
                        let mut details = Vec::with_capacity(methods.len());
                        for (method, tally) in result.methods.iter_mut() {
                            let report = analyze_spoilers(&p, *method, opts.tie);
                            details.push(detail(path, &p, *method, &report));
                            tally.record(&p, report, true);
                        }
                        (result, details, None, false)
                    }
                })
                .collect()
        });
    let mut audit = CorpusAudit {
        result: ExperimentResult::empty(methods),
        details: Vec::new(),
        failures: Vec::new(),
        filtered_out: 0,
    };
    for (path, (result, details, failure, filtered)) in files.iter().zip(per_file) {
        audit.result = audit.result.merge(result);
        audit.details.extend(details);
        if let Some(e) = failure {
            audit.failures.push((path.clone(), e));
        }
        audit.filtered_out += filtered as usize;
    }
    audit
}

#[derive(Clone, Debug)]
pub struct SubelectionAudit {
    pub result: ExperimentResult,
    /// Sub-elections dropped because no ballot ranked any kept candidate.
    pub empty: usize,
    pub failures: Vec<(PathBuf, String)>,
    /// Elections with fewer candidates than the subset size.
    pub too_small: usize,
}

/// Audits every `size`-candidate sub-election of every file with `seats`
/// seats.
pub fn run_subelection_audit(
    files: &[PathBuf],
    size: usize,
    seats: usize,
    methods: &[Method],
    tie: TiePolicy,
    threads: usize,
) -> SubelectionAudit {
    let per_file: Vec<(ExperimentResult, usize, Option<String>, bool)> = in_pool(threads, || {
        files
            .par_iter()
            .map(|path| {
                let p = match read_blt_file(path) {
                    Ok(p) => p,
                    Err(e) => return (ExperimentResult::empty(methods), 0, Some(e), false),
                };
                let Ok(mut subs) = enumerate_subelections(&p, size, seats) else {
                    return (ExperimentResult::empty(methods), 0, None, true);
                };
                let result = subs
                    .by_ref()
                    .map(|s| run_all(&s, methods, tie, false))
                    .fold(ExperimentResult::empty(methods), ExperimentResult::merge);
                (result, subs.skipped(), None, false)
            })
            .collect()
    });
    let mut audit = SubelectionAudit {
        result: ExperimentResult::empty(methods),
        empty: 0,
        failures: Vec::new(),
        too_small: 0,
    };
    for (path, (result, empty, failure, small)) in files.iter().zip(per_file) {
        audit.result = audit.result.merge(result);
        audit.empty += empty;
        if let Some(e) = failure {
            audit.failures.push((path.clone(), e));
        }
        audit.too_small += small as usize;
    }
    audit
}
