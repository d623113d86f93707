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

//! Rules that take the k highest scores: SNTV, Bloc, and k-Borda.

use itertools::Itertools;

use super::{check_seats, Committee, MethodError, OutcomeSet, TiePolicy};
use crate::profile::{CandidateId, PartialModel, Profile, ScoreVector};

/// The `k` highest-scoring candidates. A tie straddling the k-th place is an
/// error under [`TiePolicy::Error`]; otherwise every way of completing the
/// committee from the tied group is returned.
pub(crate) fn top_k_by_score(
    scores: &ScoreVector,
    k: usize,
    tie: TiePolicy,
) -> Result<OutcomeSet, MethodError> {
    let mut order: Vec<CandidateId> = (0..scores.len()).map(CandidateId).collect();
    order.sort_by(|a, b| scores.get(*b).cmp(&scores.get(*a)).then(a.cmp(b)));
    if k >= order.len() {
        return Ok(OutcomeSet::single(Committee::new(order), false));
    }
    let cutoff = scores.get(order[k - 1]);
    let above: Vec<CandidateId> = order.iter().copied().filter(|&c| scores.get(c) > cutoff).collect();
    let tied: Vec<CandidateId> = order.iter().copied().filter(|&c| scores.get(c) == cutoff).collect();
    let need = k - above.len();
    if tied.len() == need {
        return Ok(OutcomeSet::single(Committee::new(order[..k].to_vec()), false));
    }
    if tie == TiePolicy::Error {
        return Err(MethodError::Tie("scores tied at the last seat"));
    }
    let committees = tied
        .into_iter()
        .combinations(need)
        .map(|extra| {
            let mut members = above.clone();
            members.extend(extra);
            Committee::new(members)
        })
        .collect();
    Ok(OutcomeSet::from_committees(committees))
}

/// Single non-transferable vote: the k largest first-place counts.
pub fn sntv(p: &Profile, tie: TiePolicy) -> Result<OutcomeSet, MethodError> {
    check_seats(p)?;
    top_k_by_score(&p.first_place_counts(), p.seats(), tie)
}

/// Bloc voting: the k largest k-approval scores.
pub fn bloc(p: &Profile, tie: TiePolicy) -> Result<OutcomeSet, MethodError> {
    check_seats(p)?;
    top_k_by_score(&p.top_k_counts(p.seats()), p.seats(), tie)
}

/// k-Borda: the k largest Borda totals under the given partial-ballot model.
pub fn k_borda(p: &Profile, model: PartialModel, tie: TiePolicy) -> Result<OutcomeSet, MethodError> {
    check_seats(p)?;
    top_k_by_score(&p.borda_scores(model), p.seats(), tie)
}
