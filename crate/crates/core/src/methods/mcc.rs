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

//! Minimax Condorcet committees.
//!
//! A Condorcet committee beats every outsider head-to-head. Two distinct
//! committees of one size cannot both qualify (a member of one outside the
//! other would have to beat and lose to the same rival), so the search only
//! has to find the committee, never choose between several.

use super::scoring::top_k_by_score;
use super::{check_seats, Committee, MethodError, OutcomeSet, TiePolicy};
use crate::profile::{CandidateId, Profile, ScoreKind, ScoreVector};

fn beats_all_outsiders(pw: &[Vec<i64>], members: &[bool]) -> bool {
    let m = members.len();
    (0..m).filter(|&a| members[a]).all(|a| (0..m).filter(|&b| !members[b]).all(|b| pw[a][b] > 0))
}

/// True when every member strictly beats every non-member pairwise.
pub fn is_condorcet_committee(p: &Profile, committee: &Committee) -> bool {
    let mut members = vec![false; p.num_candidates()];
    for c in committee.members() {
        members[c.index()] = true;
    }
    beats_all_outsiders(&p.pairwise_matrix(), &members)
}

fn find_condorcet(pw: &[Vec<i64>], size: usize) -> Option<Vec<CandidateId>> {
    let m = pw.len();
    // A member beats all m - size outsiders; an outsider beats fewer.
    let wins: Vec<usize> = (0..m).map(|a| (0..m).filter(|&b| pw[a][b] > 0).count()).collect();
    let members: Vec<bool> = wins.iter().map(|&w| w >= m - size).collect();
    let count = members.iter().filter(|&&x| x).count();
    (count == size && beats_all_outsiders(pw, &members))
        .then(|| (0..m).filter(|&c| members[c]).map(CandidateId).collect())
}

/// The Condorcet committee of exactly `size` members, if there is one.
pub fn condorcet_committee(p: &Profile, size: usize) -> Option<Committee> {
    if size == 0 || size > p.num_candidates() {
        return None;
    }
    find_condorcet(&p.pairwise_matrix(), size).map(Committee::new)
}

/// Finds the smallest Condorcet committee with at least k members, then
/// discards its weakest members. A member's score is its worst pairwise
/// margin against another member; the lowest scores go first, with a tie at
/// the cut resolved by `tie`.
pub fn mcc(p: &Profile, tie: TiePolicy) -> Result<OutcomeSet, MethodError> {
    check_seats(p)?;
    let (m, k) = (p.num_candidates(), p.seats());
    let pw = p.pairwise_matrix();
    let big = (k..=m)
        .find_map(|size| find_condorcet(&pw, size))
        .expect("the full candidate set is always a Condorcet committee");
    if big.len() == k {
        return Ok(OutcomeSet::single(Committee::new(big), false));
    }
    let scores: Vec<i64> = big
        .iter()
        .map(|a| big.iter().filter(|b| *b != a).map(|b| pw[a.index()][b.index()]).min().unwrap())
        .collect();
    let mut keep = top_k_by_score(&ScoreVector::new(ScoreKind::PairwiseMarginMin, scores.clone()), k, tie)?;
    if keep.is_tied() {
        // Sequential cut: keep the members the policy prefers.
        let cutoff = {
            let mut sorted = scores.clone();
            sorted.sort_unstable_by(|a, b| b.cmp(a));
            sorted[k - 1]
        };
        let mut chosen: Vec<CandidateId> =
            (0..big.len()).filter(|&i| scores[i] > cutoff).map(|i| big[i]).collect();
        let mut tied: Vec<CandidateId> =
            (0..big.len()).filter(|&i| scores[i] == cutoff).map(|i| big[i]).collect();
        tie.sort(&mut tied, p);
        chosen.extend(tied.into_iter().take(k - chosen.len()));
        return Ok(OutcomeSet::single(Committee::new(chosen), true));
    }
    keep = keep.map(|i| big[i.index()]);
    Ok(keep)
}
