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

//! Winner-selection rules. Every rule maps a [`Profile`] to an
//! [`OutcomeSet`]; STV also yields a round-by-round [`TabulationTrace`].

mod cc;
mod fixed;
mod irv;
mod mcc;
mod scoring;
mod stv;

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::profile::{CandidateId, PartialModel, Profile, ProfileError};

pub use cc::{
    chamberlin_courant, chamberlin_courant_with_budget, committee_satisfaction, greedy_cc, DEFAULT_CC_BUDGET,
};
pub use fixed::FixedPoint5;
pub use irv::top_k_irv;
pub use mcc::{condorcet_committee, is_condorcet_committee, mcc};
pub use scoring::{bloc, k_borda, sntv};
pub use stv::{srcv, stv, Round, RoundAction, TabulationTrace};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MethodError {
    #[error("unresolved tie ({0})")]
    Tie(&'static str),
    #[error(
        "{committees} candidate committees exceed the enumeration budget of {budget}; use the greedy variant"
    )]
    BudgetExceeded { committees: u128, budget: u128 },
    #[error("rule needs 1 <= k < m, got k = {seats}, m = {candidates}")]
    InvalidSeats { seats: usize, candidates: usize },
    #[error(transparent)]
    Profile(#[from] ProfileError),
}

/// How a rule resolves ties it cannot settle from the ballots.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum TiePolicy {
    /// Report the tie as an error.
    #[default]
    Error,
    /// Prefer the alphabetically first candidate name.
    Alphabetical,
    /// Prefer the lowest candidate index.
    LowestIndex,
}

impl TiePolicy {
    /// Chooses one of `tied`. `tied` must be non-empty; a single entry is not
    /// a tie.
    pub(crate) fn pick(
        self,
        tied: &[CandidateId],
        p: &Profile,
        context: &'static str,
    ) -> Result<(CandidateId, bool), MethodError> {
        match tied {
            [] => panic!("pick from an empty candidate set"),
            [only] => Ok((*only, false)),
            _ => match self {
                TiePolicy::Error => Err(MethodError::Tie(context)),
                TiePolicy::Alphabetical => Ok((
                    *tied.iter().min_by(|a, b| p.name(**a).cmp(p.name(**b)).then(a.cmp(b))).unwrap(),
                    true,
                )),
                TiePolicy::LowestIndex => Ok((*tied.iter().min().unwrap(), true)),
            },
        }
    }

    /// Orders `tied` by preference under this policy (error mode keeps index
    /// order; callers check for ties separately).
    pub(crate) fn sort(self, tied: &mut [CandidateId], p: &Profile) {
        match self {
            TiePolicy::Alphabetical => tied.sort_by(|a, b| p.name(*a).cmp(p.name(*b)).then(a.cmp(b))),
            TiePolicy::Error | TiePolicy::LowestIndex => tied.sort(),
        }
    }
}

impl FromStr for TiePolicy {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "error" => Ok(TiePolicy::Error),
            "alphabetical" => Ok(TiePolicy::Alphabetical),
            "lowest_index" | "lowest-index" => Ok(TiePolicy::LowestIndex),
            _ => Err(format!("unknown tie policy `{s}` (error, alphabetical, lowest_index)")),
        }
    }
}

impl fmt::Display for TiePolicy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TiePolicy::Error => "error",
            TiePolicy::Alphabetical => "alphabetical",
            TiePolicy::LowestIndex => "lowest_index",
        })
    }
}

/// A winning committee, kept sorted.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Committee(Vec<CandidateId>);

impl Committee {
    pub fn new(mut members: Vec<CandidateId>) -> Self {
        members.sort_unstable();
        members.dedup();
        Committee(members)
    }

    pub fn members(&self) -> &[CandidateId] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, c: CandidateId) -> bool {
        self.0.binary_search(&c).is_ok()
    }

    /// Number of members of `self` missing from `other`.
    pub fn difference_size(&self, other: &Committee) -> usize {
        self.0.iter().filter(|c| !other.contains(**c)).count()
    }

    /// Maps every member through `f` (e.g. into another profile's indices).
    pub fn map(&self, f: impl Fn(CandidateId) -> CandidateId) -> Committee {
        Committee::new(self.0.iter().map(|&c| f(c)).collect())
    }

    /// Member names joined with `sep`.
    pub fn display_names(&self, p: &Profile, sep: &str) -> String {
        self.0.iter().map(|&c| p.name(c)).collect::<Vec<_>>().join(sep)
    }
}

/// All winning committees a rule produced. More than one committee (or a
/// tie-break along the way) sets the tie flag.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OutcomeSet {
    committees: Vec<Committee>,
    tie: bool,
}

impl OutcomeSet {
    pub fn single(committee: Committee, tie_broken: bool) -> Self {
        OutcomeSet { committees: vec![committee], tie: tie_broken }
    }

    pub fn from_committees(mut committees: Vec<Committee>) -> Self {
        assert!(!committees.is_empty(), "an outcome needs a committee");
        committees.sort();
        committees.dedup();
        let tie = committees.len() > 1;
        OutcomeSet { committees, tie }
    }

    pub fn committees(&self) -> &[Committee] {
        &self.committees
    }

    /// The unique committee, if there is exactly one.
    pub fn unique(&self) -> Option<&Committee> {
        match self.committees.as_slice() {
            [only] => Some(only),
            _ => None,
        }
    }

    pub fn is_tied(&self) -> bool {
        self.tie
    }

    pub fn in_any(&self, c: CandidateId) -> bool {
        self.committees.iter().any(|s| s.contains(c))
    }

    pub fn in_all(&self, c: CandidateId) -> bool {
        self.committees.iter().all(|s| s.contains(c))
    }

    /// Set-of-sets equality; tie flags are ignored.
    pub fn same_winners(&self, other: &OutcomeSet) -> bool {
        self.committees == other.committees
    }

    pub fn map(&self, f: impl Fn(CandidateId) -> CandidateId + Copy) -> OutcomeSet {
        let mut out = OutcomeSet::from_committees(self.committees.iter().map(|s| s.map(f)).collect());
        out.tie = self.tie;
        out
    }

    pub fn display_names(&self, p: &Profile) -> String {
        self.committees
            .iter()
            .map(|s| format!("{{{}}}", s.display_names(p, ", ")))
            .collect::<Vec<_>>()
            .join(" | ")
    }
}

/// The rules studied here, by name.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Method {
    Bloc,
    Borda(PartialModel),
    ChamberlinCourant(PartialModel),
    GreedyCc(PartialModel),
    Srcv,
    Sntv,
    Stv,
    Mcc,
    TopKIrv,
}

impl Method {
    /// The ten rules of the simulation tables, in table order.
    pub const TABLE: [Method; 10] = [
        Method::Bloc,
        Method::Borda(PartialModel::Optimistic),
        Method::Borda(PartialModel::Pessimistic),
        Method::ChamberlinCourant(PartialModel::Optimistic),
        Method::ChamberlinCourant(PartialModel::Pessimistic),
        Method::GreedyCc(PartialModel::Optimistic),
        Method::GreedyCc(PartialModel::Pessimistic),
        Method::Srcv,
        Method::Sntv,
        Method::Stv,
    ];

    /// Every implemented rule.
    pub const ALL: [Method; 12] = [
        Method::Bloc,
        Method::Borda(PartialModel::Optimistic),
        Method::Borda(PartialModel::Pessimistic),
        Method::ChamberlinCourant(PartialModel::Optimistic),
        Method::ChamberlinCourant(PartialModel::Pessimistic),
        Method::GreedyCc(PartialModel::Optimistic),
        Method::GreedyCc(PartialModel::Pessimistic),
        Method::Srcv,
        Method::Sntv,
        Method::Stv,
        Method::Mcc,
        Method::TopKIrv,
    ];

    pub fn id(self) -> &'static str {
        use PartialModel::*;
        match self {
            Method::Bloc => "bloc",
            Method::Borda(Optimistic) => "borda-om",
            Method::Borda(Pessimistic) => "borda-pm",
            Method::ChamberlinCourant(Optimistic) => "cc-om",
            Method::ChamberlinCourant(Pessimistic) => "cc-pm",
            Method::GreedyCc(Optimistic) => "greedy-cc-om",
            Method::GreedyCc(Pessimistic) => "greedy-cc-pm",
            Method::Srcv => "srcv",
            Method::Sntv => "sntv",
            Method::Stv => "stv",
            Method::Mcc => "mcc",
            Method::TopKIrv => "topk-irv",
        }
    }

    /// Human-readable row label.
    pub fn label(self) -> String {
        match self {
            Method::Bloc => "Bloc".into(),
            Method::Borda(m) => format!("Borda ({})", m.short_name()),
            Method::ChamberlinCourant(m) => format!("Cham-Cour ({})", m.short_name()),
            Method::GreedyCc(m) => format!("Greedy-CC ({})", m.short_name()),
            Method::Srcv => "SRCV".into(),
            Method::Sntv => "SNTV".into(),
            Method::Stv => "STV".into(),
            Method::Mcc => "MCC".into(),
            Method::TopKIrv => "Top-k IRV".into(),
        }
    }

    pub fn run(self, p: &Profile, tie: TiePolicy) -> Result<OutcomeSet, MethodError> {
        match self {
            Method::Bloc => bloc(p, tie),
            Method::Borda(model) => k_borda(p, model, tie),
            Method::ChamberlinCourant(model) => chamberlin_courant(p, model, tie),
            Method::GreedyCc(model) => greedy_cc(p, model, tie),
            Method::Srcv => srcv(p, tie),
            Method::Sntv => sntv(p, tie),
            Method::Stv => stv::stv_winners(p, tie),
            Method::Mcc => mcc(p, tie),
            Method::TopKIrv => top_k_irv(p, tie),
        }
    }

    /// Parses a comma-separated method list; `all` and `table` expand.
    pub fn parse_list(s: &str) -> Result<Vec<Method>, String> {
        let mut out = Vec::new();
        for part in s.split(',').map(str::trim).filter(|x| !x.is_empty()) {
            match part {
                "all" => out.extend(Method::ALL),
                "table" => out.extend(Method::TABLE),
                _ => out.push(part.parse()?),
            }
        }
        if out.is_empty() {
            return Err("no methods given".into());
        }
        Ok(out)
    }
}

impl FromStr for Method {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Method::ALL.into_iter().find(|m| m.id() == s).ok_or_else(|| {
            let known: Vec<_> = Method::ALL.iter().map(|m| m.id()).collect();
            format!("unknown method `{s}` (known: {})", known.join(", "))
        })
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

pub(crate) fn check_seats(p: &Profile) -> Result<(), MethodError> {
    if p.seats() == 0 || p.seats() > p.num_candidates() {
        return Err(MethodError::InvalidSeats { seats: p.seats(), candidates: p.num_candidates() });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn method_ids_round_trip() {
        for m in Method::ALL {
            assert_eq!(m.id().parse::<Method>(), Ok(m));
        }
        assert!("plurality".parse::<Method>().is_err());
        assert_eq!(Method::parse_list("stv, sntv").unwrap(), vec![Method::Stv, Method::Sntv]);
        assert_eq!(Method::parse_list("table").unwrap().len(), 10);
    }

    #[test]
    fn outcome_equality_is_set_of_sets() {
        let a = Committee::new(vec![CandidateId(2), CandidateId(0)]);
        let b = Committee::new(vec![CandidateId(1), CandidateId(0)]);
        let x = OutcomeSet::from_committees(vec![a.clone(), b.clone()]);
        let y = OutcomeSet::from_committees(vec![b, a.clone()]);
        assert!(x.same_winners(&y));
        assert!(x.is_tied());
        assert!(!x.same_winners(&OutcomeSet::single(a, false)));
        assert!(x.in_all(CandidateId(0)));
        assert!(!x.in_all(CandidateId(1)));
        assert!(x.in_any(CandidateId(1)));
    }
}
