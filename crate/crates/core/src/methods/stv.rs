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

//! Single transferable vote with the Droop quota and fractional (weighted
//! inclusive Gregory) surplus transfers, as used in Scottish local
//! elections, plus the sequential single-winner variant.

use std::fmt::Write as _;

use super::{check_seats, Committee, FixedPoint5, MethodError, OutcomeSet, TiePolicy};
use crate::profile::{CandidateId, Profile};

/// What happened in one round of the count.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RoundAction {
    /// First-preference count.
    FirstCount,
    /// Surplus of an elected candidate moved on at a reduced value.
    Surplus { from: CandidateId, surplus: FixedPoint5 },
    /// Lowest candidate excluded; ballots move on at full current value.
    Exclusion(CandidateId),
}

/// Vote totals after one round.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Round {
    pub action: RoundAction,
    /// Totals for candidates still in the count after this round's transfer
    /// (including any elected in this round); `None` for the rest.
    pub totals: Vec<Option<FixedPoint5>>,
    /// Candidates elected at the end of this round.
    pub elected: Vec<CandidateId>,
    /// Cumulative value of ballots with no further continuing preference.
    pub exhausted: FixedPoint5,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TabulationTrace {
    pub quota: FixedPoint5,
    pub rounds: Vec<Round>,
}

impl TabulationTrace {
    /// Total for `c` after `round` (0-based), if it was still in the count.
    pub fn total(&self, round: usize, c: CandidateId) -> Option<FixedPoint5> {
        self.rounds.get(round).and_then(|r| r.totals[c.index()])
    }

    /// Round in which `c` was elected (0-based).
    pub fn elected_in(&self, c: CandidateId) -> Option<usize> {
        self.rounds.iter().position(|r| r.elected.contains(&c))
    }

    /// Aligned text table: one row per candidate, one column per round,
    /// elected totals marked with `*`.
    pub fn render(&self, p: &Profile) -> String {
        let width = p.names().iter().map(|n| n.len()).max().unwrap_or(0).max(9);
        let mut out = String::new();
        let _ = writeln!(out, "Quota = {}", self.quota.display_1dp());
        let _ = write!(out, "{:<width$}", "Candidate");
        for r in 1..=self.rounds.len() {
            let _ = write!(out, " | {:>9}", format!("R{r}"));
        }
        out.push('\n');
        for c in p.candidates() {
            let _ = write!(out, "{:<width$}", p.name(c));
            for round in &self.rounds {
                let cell = match round.totals[c.index()] {
                    Some(v) if round.elected.contains(&c) => format!("{}*", v.display_1dp()),
                    Some(v) => v.display_1dp(),
                    None => String::new(),
                };
                let _ = write!(out, " | {cell:>9}");
            }
            out.push('\n');
        }
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Status {
    Hopeful,
    Elected,
    Excluded,
    Withdrawn,
}

/// Result of one engine run.
pub(crate) struct Count {
    pub elected: Vec<CandidateId>,
    pub tie_broken: bool,
    pub trace: Option<TabulationTrace>,
}

struct Tally<'a> {
    p: &'a Profile,
    status: Vec<Status>,
    /// Parcels held by each candidate: (ballot type index, value per voter).
    piles: Vec<Vec<(usize, FixedPoint5)>>,
    totals: Vec<FixedPoint5>,
    exhausted: FixedPoint5,
}

impl Tally<'_> {
    fn next_hopeful(&self, ballot: usize) -> Option<CandidateId> {
        self.p.ballots()[ballot].ranking().iter().copied().find(|c| self.status[c.index()] == Status::Hopeful)
    }

    fn place(&mut self, ballot: usize, value: FixedPoint5) {
        let weight = self.p.ballots()[ballot].weight();
        match self.next_hopeful(ballot) {
            Some(c) => {
                self.piles[c.index()].push((ballot, value));
                self.totals[c.index()] += value.times(weight);
            }
            None => self.exhausted += value.times(weight),
        }
    }

    fn hopefuls(&self) -> Vec<CandidateId> {
        (0..self.status.len()).filter(|&c| self.status[c] == Status::Hopeful).map(CandidateId).collect()
    }

    fn snapshot(&self) -> Vec<Option<FixedPoint5>> {
        (0..self.status.len())
            .map(|c| (self.status[c] == Status::Hopeful).then_some(self.totals[c]))
            .collect()
    }
}

/// Runs the count for `seats` seats, ignoring `withdrawn` candidates
/// entirely (ballots skip over them, and ballots naming only withdrawn
/// candidates do not count towards the quota).
pub(crate) fn count(
    p: &Profile,
    seats: usize,
    withdrawn: &[bool],
    tie: TiePolicy,
    record: bool,
) -> Result<Count, MethodError> {
    let m = p.num_candidates();
    let mut tally = Tally {
        p,
        status: (0..m).map(|c| if withdrawn[c] { Status::Withdrawn } else { Status::Hopeful }).collect(),
        piles: vec![Vec::new(); m],
        totals: vec![FixedPoint5::ZERO; m],
        exhausted: FixedPoint5::ZERO,
    };
    let active: u64 = p
        .ballots()
        .iter()
        .filter(|b| b.ranking().iter().any(|c| !withdrawn[c.index()]))
        .map(|b| b.weight())
        .sum();
    let quota = FixedPoint5::from_integer(active / (seats as u64 + 1) + 1);
    for b in 0..p.ballots().len() {
        tally.place(b, FixedPoint5::ONE);
    }

    let mut elected: Vec<CandidateId> = Vec::with_capacity(seats);
    let mut pending: Vec<CandidateId> = Vec::new();
    let mut tie_broken = false;
    let mut rounds = Vec::new();

    let mut action = RoundAction::FirstCount;
    loop {
        // Elect everyone at or above quota, largest first.
        let totals_before = record.then(|| tally.snapshot());
        let mut newly: Vec<CandidateId> =
            tally.hopefuls().into_iter().filter(|c| tally.totals[c.index()] >= quota).collect();
        newly.sort_by(|a, b| tally.totals[b.index()].cmp(&tally.totals[a.index()]).then(a.cmp(b)));
        for &c in &newly {
            tally.status[c.index()] = Status::Elected;
            elected.push(c);
            pending.push(c);
        }
        if let Some(totals) = totals_before {
            rounds.push(Round { action: action.clone(), totals, elected: newly, exhausted: tally.exhausted });
        }

        if elected.len() >= seats {
            break;
        }
        let hopeful = tally.hopefuls();
        if hopeful.len() <= seats - elected.len() {
            elected.extend(hopeful.iter().copied());
            if let Some(last) = rounds.last_mut() {
                last.elected.extend(hopeful.iter().copied());
            }
            break;
        }

        pending.retain(|c| tally.totals[c.index()] > quota);
        if !pending.is_empty() {
            let largest = pending.iter().map(|c| tally.totals[c.index()]).max().unwrap();
            let tied: Vec<CandidateId> =
                pending.iter().copied().filter(|c| tally.totals[c.index()] == largest).collect();
            let (from, broke) = tie.pick(&tied, p, "equal surpluses")?;
            tie_broken |= broke;
            pending.retain(|&c| c != from);
            let total = tally.totals[from.index()];
            let surplus = total - quota;
            let parcels = std::mem::take(&mut tally.piles[from.index()]);
            for (ballot, value) in parcels {
                let moved = value.mul_div(surplus, total);
                if moved > FixedPoint5::ZERO {
                    tally.place(ballot, moved);
                }
            }
            tally.totals[from.index()] = quota;
            action = RoundAction::Surplus { from, surplus };
        } else {
            let lowest = hopeful.iter().map(|c| tally.totals[c.index()]).min().unwrap();
            let tied: Vec<CandidateId> =
                hopeful.iter().copied().filter(|c| tally.totals[c.index()] == lowest).collect();
            let (out, broke) = tie.pick(&tied, p, "lowest candidate")?;
            tie_broken |= broke;
            tally.status[out.index()] = Status::Excluded;
            let parcels = std::mem::take(&mut tally.piles[out.index()]);
            for (ballot, value) in parcels {
                tally.place(ballot, value);
            }
            tally.totals[out.index()] = FixedPoint5::ZERO;
            action = RoundAction::Exclusion(out);
        }
    }

    Ok(Count { elected, tie_broken, trace: record.then_some(TabulationTrace { quota, rounds }) })
}

/// STV with the Droop quota `⌊n/(k+1)⌋ + 1`, fixed for the whole count.
pub fn stv(p: &Profile, tie: TiePolicy) -> Result<(OutcomeSet, TabulationTrace), MethodError> {
    check_seats(p)?;
    let withdrawn = vec![false; p.num_candidates()];
    let result = count(p, p.seats(), &withdrawn, tie, true)?;
    Ok((
        OutcomeSet::single(Committee::new(result.elected), result.tie_broken),
        result.trace.expect("trace requested"),
    ))
}

/// [`stv`] without recording the trace.
pub(crate) fn stv_winners(p: &Profile, tie: TiePolicy) -> Result<OutcomeSet, MethodError> {
    check_seats(p)?;
    let withdrawn = vec![false; p.num_candidates()];
    let result = count(p, p.seats(), &withdrawn, tie, false)?;
    Ok(OutcomeSet::single(Committee::new(result.elected), result.tie_broken))
}

/// Sequential ranked-choice voting: fill one seat at a time with a
/// single-winner STV count, then drop that winner from the ballots.
pub fn srcv(p: &Profile, tie: TiePolicy) -> Result<OutcomeSet, MethodError> {
    check_seats(p)?;
    let mut withdrawn = vec![false; p.num_candidates()];
    let mut winners = Vec::with_capacity(p.seats());
    let mut tie_broken = false;
    for _ in 0..p.seats() {
        let result = count(p, 1, &withdrawn, tie, false)?;
        let w = result.elected[0];
        tie_broken |= result.tie_broken;
        withdrawn[w.index()] = true;
        winners.push(w);
    }
    Ok(OutcomeSet::single(Committee::new(winners), tie_broken))
}
