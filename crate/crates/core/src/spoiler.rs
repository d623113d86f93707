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

//! Spoiler analysis by single-candidate removal.
//!
//! A candidate in no winning committee is a spoiler when deleting it from
//! every ballot changes the set of winning committees.

use crate::methods::{Committee, Method, MethodError, OutcomeSet, TiePolicy};
use crate::profile::{CandidateId, Profile};

/// What happened when one losing candidate was removed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub candidate: CandidateId,
    pub is_spoiler: bool,
    /// Outcome without the candidate, in the original profile's indices.
    /// `None` when the re-run ended in a tie the policy could not resolve;
    /// such a removal still changes the (unique) outcome, so it is a spoiler.
    pub alternate: Option<OutcomeSet>,
    /// The re-run tied, whether or not the tie was broken.
    pub tie_encountered: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpoilerReport {
    pub method: Method,
    pub tie: TiePolicy,
    pub original: OutcomeSet,
    /// One entry per candidate outside every winning committee, by index.
    pub verdicts: Vec<Verdict>,
}

impl SpoilerReport {
    pub fn spoilers(&self) -> impl Iterator<Item = CandidateId> + '_ {
        self.verdicts.iter().filter(|v| v.is_spoiler).map(|v| v.candidate)
    }

    pub fn spoiler_count(&self) -> usize {
        self.spoilers().count()
    }

    /// True if the base run or any re-run tied.
    pub fn tie_encountered(&self) -> bool {
        self.original.is_tied() || self.verdicts.iter().any(|v| v.tie_encountered)
    }

    /// Some removal ended in a tie the policy left unresolved (error mode).
    pub fn has_unresolved_tie(&self) -> bool {
        self.verdicts.iter().any(|v| v.alternate.is_none())
    }

    /// Distinct resolved outcomes produced by spoiler removals.
    pub fn alternate_outcomes(&self) -> Vec<&OutcomeSet> {
        let mut seen: Vec<&OutcomeSet> = Vec::new();
        for alt in self.verdicts.iter().filter(|v| v.is_spoiler).filter_map(|v| v.alternate.as_ref()) {
            if !seen.iter().any(|s| s.same_winners(alt)) {
                seen.push(alt);
            }
        }
        seen
    }
}

fn reinsert(removed: CandidateId) -> impl Fn(CandidateId) -> CandidateId + Copy {
    move |c| if c >= removed { CandidateId(c.0 + 1) } else { c }
}

/// Runs `method` on `p`, then again without each losing candidate.
///
/// A tie in the base run under [`TiePolicy::Error`] is returned as an error.
/// An unresolved tie in a re-run means the outcome is no longer a single
/// committee: the removal changed it, and the verdict records the tie.
pub fn analyze_spoilers(p: &Profile, method: Method, tie: TiePolicy) -> Result<SpoilerReport, MethodError> {
    let original = method.run(p, tie)?;
    let m = p.num_candidates();
    let mut verdicts = Vec::new();
    for c in p.candidates().filter(|&c| !original.in_any(c)) {
        let rerun = if m - 1 == p.seats() {
            // Removal forces the committee of everyone else.
            Ok(OutcomeSet::single(Committee::new(p.candidates().filter(|&x| x != c).collect()), false))
        } else {
            method.run(&p.remove_candidate(c)?, tie).map(|o| o.map(reinsert(c)))
        };
        let verdict = match rerun {
            Ok(alt) => Verdict {
                candidate: c,
                is_spoiler: !alt.same_winners(&original),
                tie_encountered: alt.is_tied(),
                alternate: Some(alt),
            },
            Err(MethodError::Tie(_)) => {
                Verdict { candidate: c, is_spoiler: true, alternate: None, tie_encountered: true }
            }
            Err(e) => return Err(e),
        };
        verdicts.push(verdict);
    }
    Ok(SpoilerReport { method, tie, original, verdicts })
}

/// Candidates that are weakest by first-place and by top-k support.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeaknessFlags {
    pub plurality_loser: Vec<CandidateId>,
    pub top_k_loser: Vec<CandidateId>,
}

impl WeaknessFlags {
    pub fn is_plurality_loser(&self, c: CandidateId) -> bool {
        self.plurality_loser.contains(&c)
    }

    pub fn is_top_k_loser(&self, c: CandidateId) -> bool {
        self.top_k_loser.contains(&c)
    }
}

pub fn weakness_flags(p: &Profile) -> WeaknessFlags {
    WeaknessFlags {
        plurality_loser: p.first_place_counts().argmin(),
        top_k_loser: p.top_k_counts(p.seats()).argmin(),
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Stability {
    pub num_spoilers: usize,
    pub num_alt_sets: usize,
    /// Largest number of seats that change hands after a spoiler removal.
    pub max_changed: usize,
}

/// Seats changing hands are measured from each alternate committee to the
/// nearest original one, so a tie that adds a committee without moving any
/// seat counts as zero.
pub fn stability_summary(report: &SpoilerReport) -> Stability {
    let alternates = report.alternate_outcomes();
    let max_changed = alternates
        .iter()
        .flat_map(|alt| alt.committees())
        .map(|alt| report.original.committees().iter().map(|o| alt.difference_size(o)).min().unwrap_or(0))
        .max()
        .unwrap_or(0);
    Stability { num_spoilers: report.spoiler_count(), num_alt_sets: alternates.len(), max_changed }
}

/// A spoiler `s` whose removal hands `a`'s seat to `w`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CloneTriple {
    pub a: CandidateId,
    pub w: CandidateId,
    pub s: CandidateId,
    pub b_as: u64,
    pub b_ws: u64,
}

/// Weight of ballots ranking `x` and `y` in consecutive positions.
pub fn adjacency_count(p: &Profile, x: CandidateId, y: CandidateId) -> u64 {
    p.ballots()
        .iter()
        .filter(|b| b.ranking().windows(2).any(|w| (w[0] == x && w[1] == y) || (w[0] == y && w[1] == x)))
        .map(|b| b.weight())
        .sum()
}

/// Triples for every spoiler whose removal swaps exactly one seat. Tied
/// outcomes and multi-seat changes yield nothing.
pub fn clone_triples(p: &Profile, report: &SpoilerReport) -> Vec<CloneTriple> {
    let Some(original) = report.original.unique() else {
        return Vec::new();
    };
    report
        .verdicts
        .iter()
        .filter(|v| v.is_spoiler)
        .filter_map(|v| {
            let alt = v.alternate.as_ref()?.unique()?;
            let lost: Vec<_> = original.members().iter().filter(|c| !alt.contains(**c)).collect();
            let gained: Vec<_> = alt.members().iter().filter(|c| !original.contains(**c)).collect();
            let (&[&a], &[&w]) = (lost.as_slice(), gained.as_slice()) else {
                return None;
            };
            let s = v.candidate;
            Some(CloneTriple { a, w, s, b_as: adjacency_count(p, a, s), b_ws: adjacency_count(p, w, s) })
        })
        .collect()
}

/// Counts of triples by which of A and W the spoiler sits closer to.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct CloneSummary {
    /// B_AS > B_WS.
    pub a_closer: u64,
    /// B_AS < B_WS: classic vote splitting.
    pub w_closer: u64,
    pub equal: u64,
    /// Spoilers whose removal changed more than one seat (or a tie).
    pub skipped: u64,
}

impl CloneSummary {
    /// `w_closer / a_closer`, undefined without any `a_closer` triple.
    pub fn ratio(&self) -> Option<f64> {
        (self.a_closer > 0).then(|| self.w_closer as f64 / self.a_closer as f64)
    }

    pub fn merge(self, o: CloneSummary) -> CloneSummary {
        CloneSummary {
            a_closer: self.a_closer + o.a_closer,
            w_closer: self.w_closer + o.w_closer,
            equal: self.equal + o.equal,
            skipped: self.skipped + o.skipped,
        }
    }
}

pub fn clone_statistics<'a>(
    items: impl IntoIterator<Item = (&'a Profile, &'a SpoilerReport)>,
) -> CloneSummary {
    let mut out = CloneSummary::default();
    for (p, report) in items {
        let triples = clone_triples(p, report);
        out.skipped += (report.spoiler_count() - triples.len()) as u64;
        for t in triples {
            match t.b_as.cmp(&t.b_ws) {
                std::cmp::Ordering::Greater => out.a_closer += 1,
                std::cmp::Ordering::Less => out.w_closer += 1,
                std::cmp::Ordering::Equal => out.equal += 1,
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::profile::tests::plurality_example;
    use crate::profile::Ballot;

    const A: CandidateId = CandidateId(0);
    const W: CandidateId = CandidateId(1);
    const S: CandidateId = CandidateId(2);

    #[test]
    fn plurality_example_sntv_both_losers_spoil() {
        let p = plurality_example(1);
        let r = analyze_spoilers(&p, Method::Sntv, TiePolicy::Error).unwrap();
        assert_eq!(r.original.unique().unwrap().members(), &[A]);
        assert_eq!(r.spoilers().collect::<Vec<_>>(), vec![W, S]);
        let alt = |c: CandidateId| r.verdicts.iter().find(|v| v.candidate == c).unwrap().alternate.clone();
        assert_eq!(alt(S).unwrap().unique().unwrap().members(), &[W]);
        assert_eq!(alt(W).unwrap().unique().unwrap().members(), &[S]);
        assert_eq!(stability_summary(&r), Stability { num_spoilers: 2, num_alt_sets: 2, max_changed: 1 });
    }

    #[test]
    fn plurality_example_clone_counts() {
        let p = plurality_example(1);
        let r = analyze_spoilers(&p, Method::Sntv, TiePolicy::Error).unwrap();
        let triples = clone_triples(&p, &r);
        let t = triples.iter().find(|t| t.s == S).unwrap();
        assert_eq!((t.a, t.w, t.b_as, t.b_ws), (A, W, 90, 230));
        let summary = clone_statistics([(&p, &r)]);
        assert_eq!(summary.a_closer + summary.w_closer + summary.equal, 2);
        assert!(summary.w_closer >= 1);
    }

    #[test]
    fn adjacency_needs_consecutive_positions() {
        let p = Profile::with_generated_names(
            3,
            vec![Ballot::from_indices(&[0, 2], 4), Ballot::from_indices(&[0, 1, 2], 7)],
            1,
        )
        .unwrap();
        assert_eq!(adjacency_count(&p, A, S), 4);
        assert_eq!(adjacency_count(&p, S, W), 7);
    }

    #[test]
    fn no_spoilers_means_zero_stability() {
        let r = analyze_spoilers(&plurality_example(1), Method::Stv, TiePolicy::Error).unwrap();
        assert_eq!(r.spoiler_count(), 0);
        assert_eq!(stability_summary(&r), Stability::default());
        assert_eq!(clone_statistics([(&plurality_example(1), &r)]), CloneSummary::default());
    }

    #[test]
    fn single_loser_with_forced_committee() {
        let r = analyze_spoilers(&plurality_example(2), Method::Sntv, TiePolicy::Error).unwrap();
        assert_eq!(r.verdicts.len(), 1);
        assert!(!r.verdicts[0].is_spoiler);
    }

    #[test]
    fn weakness() {
        let f = weakness_flags(&plurality_example(1));
        assert_eq!(f.plurality_loser, vec![S]);
        assert_eq!(f.top_k_loser, vec![S]);
        let uniform = Profile::with_generated_names(
            3,
            vec![
                Ballot::from_indices(&[0, 1, 2], 1),
                Ballot::from_indices(&[1, 2, 0], 1),
                Ballot::from_indices(&[2, 0, 1], 1),
            ],
            1,
        )
        .unwrap();
        assert_eq!(weakness_flags(&uniform).plurality_loser.len(), 3);
    }

    #[test]
    fn rerun_tie_is_a_change() {
        // Without C, A and B tie 3-3 for the single seat.
        let p = Profile::with_generated_names(
            3,
            vec![
                Ballot::from_indices(&[0], 3),
                Ballot::from_indices(&[1], 2),
                Ballot::from_indices(&[2, 1], 1),
            ],
            1,
        )
        .unwrap();
        let r = analyze_spoilers(&p, Method::Sntv, TiePolicy::Error).unwrap();
        let c = r.verdicts.iter().find(|v| v.candidate == S).unwrap();
        assert!(c.tie_encountered && c.alternate.is_none() && c.is_spoiler);
        assert!(r.has_unresolved_tie());
        assert_eq!(stability_summary(&r).num_alt_sets, 0);
        let alpha = analyze_spoilers(&p, Method::Sntv, TiePolicy::Alphabetical).unwrap();
        assert!(!alpha.has_unresolved_tie());
        // Alphabetical mode reports both tied committees: a changed outcome.
        assert_eq!(alpha.spoilers().collect::<Vec<_>>(), vec![S]);
    }
}
