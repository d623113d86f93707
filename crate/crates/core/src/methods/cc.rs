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

//! Chamberlin-Courant with Borda satisfaction: the exhaustive rule and its
//! greedy approximation.

use itertools::Itertools;

use super::{check_seats, Committee, MethodError, OutcomeSet, TiePolicy};
use crate::profile::{CandidateId, PartialModel, Profile};

/// Largest number of committees the exhaustive rule will score by default.
pub const DEFAULT_CC_BUDGET: u128 = 1_000_000;

fn binomial(n: usize, k: usize) -> u128 {
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// Sum over voters of the Borda points of their favourite committee member;
/// a voter ranking no member contributes the `model` default.
pub fn committee_satisfaction(p: &Profile, members: &[CandidateId], model: PartialModel) -> i64 {
    let mut in_committee = vec![false; p.num_candidates()];
    for c in members {
        in_committee[c.index()] = true;
    }
    satisfaction(p, &in_committee, model)
}

fn satisfaction(p: &Profile, in_committee: &[bool], model: PartialModel) -> i64 {
    let m = p.num_candidates();
    p.ballots()
        .iter()
        .map(|b| {
            let points = match b.ranking().iter().position(|c| in_committee[c.index()]) {
                Some(pos) => (m - 1 - pos) as i64,
                None => model.unranked_points(m, b.len()),
            };
            points * b.weight() as i64
        })
        .sum()
}

/// Exhaustive Chamberlin-Courant with the default enumeration budget.
pub fn chamberlin_courant(
    p: &Profile,
    model: PartialModel,
    tie: TiePolicy,
) -> Result<OutcomeSet, MethodError> {
    chamberlin_courant_with_budget(p, model, tie, DEFAULT_CC_BUDGET)
}

/// Scores every size-k committee and returns all maximizers. More than one
/// maximizer is a tie error under [`TiePolicy::Error`].
pub fn chamberlin_courant_with_budget(
    p: &Profile,
    model: PartialModel,
    tie: TiePolicy,
    budget: u128,
) -> Result<OutcomeSet, MethodError> {
    check_seats(p)?;
    let (m, k) = (p.num_candidates(), p.seats());
    let committees = binomial(m, k);
    if committees > budget {
        return Err(MethodError::BudgetExceeded { committees, budget });
    }
    let mut best = i64::MIN;
    let mut winners: Vec<Vec<usize>> = Vec::new();
    let mut in_committee = vec![false; m];
    for subset in (0..m).combinations(k) {
        subset.iter().for_each(|&c| in_committee[c] = true);
        let score = satisfaction(p, &in_committee, model);
        subset.iter().for_each(|&c| in_committee[c] = false);
        if score > best {
            best = score;
            winners.clear();
            winners.push(subset);
        } else if score == best {
            winners.push(subset);
        }
    }
    if winners.len() > 1 && tie == TiePolicy::Error {
        return Err(MethodError::Tie("several optimal committees"));
    }
    Ok(OutcomeSet::from_committees(
        winners.into_iter().map(|s| Committee::new(s.into_iter().map(CandidateId).collect())).collect(),
    ))
}

/// Greedy Chamberlin-Courant: seed with the Borda winner, then repeatedly add
/// the candidate giving the largest satisfaction.
pub fn greedy_cc(p: &Profile, model: PartialModel, tie: TiePolicy) -> Result<OutcomeSet, MethodError> {
    check_seats(p)?;
    let m = p.num_candidates();
    let mut in_committee = vec![false; m];
    let mut members = Vec::with_capacity(p.seats());
    let mut tie_broken = false;
    for _ in 0..p.seats() {
        let mut best = i64::MIN;
        let mut tied = Vec::new();
        let open: Vec<usize> = (0..m).filter(|&c| !in_committee[c]).collect();
        for c in open {
            in_committee[c] = true;
            let score = satisfaction(p, &in_committee, model);
            in_committee[c] = false;
            if score > best {
                best = score;
                tied.clear();
            }
            if score == best {
                tied.push(CandidateId(c));
            }
        }
        let (pick, broke) = tie.pick(&tied, p, "greedy step")?;
        tie_broken |= broke;
        in_committee[pick.index()] = true;
        members.push(pick);
    }
    Ok(OutcomeSet::single(Committee::new(members), tie_broken))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::profile::tests::plurality_example;
    use crate::profile::Ballot;

    fn committee(ids: &[usize]) -> Committee {
        Committee::new(ids.iter().copied().map(CandidateId).collect())
    }

    #[test]
    fn single_seat_is_borda_winner() {
        let p = plurality_example(1);
        let ids = |v: &[usize]| v.iter().copied().map(CandidateId).collect::<Vec<_>>();
        assert_eq!(committee_satisfaction(&p, &ids(&[1]), PartialModel::Optimistic), 320);
        assert_eq!(committee_satisfaction(&p, &ids(&[0]), PartialModel::Optimistic), 200);
        assert_eq!(committee_satisfaction(&p, &ids(&[2]), PartialModel::Optimistic), 170);
        let out = chamberlin_courant(&p, PartialModel::Optimistic, TiePolicy::Error).unwrap();
        assert_eq!(out.unique(), Some(&committee(&[1])));
    }

    #[test]
    fn two_seats_plurality_example() {
        for model in [PartialModel::Optimistic, PartialModel::Pessimistic] {
            let exact = chamberlin_courant(&plurality_example(2), model, TiePolicy::Error).unwrap();
            assert_eq!(exact.unique(), Some(&committee(&[0, 1])));
            let greedy = greedy_cc(&plurality_example(2), model, TiePolicy::Error).unwrap();
            assert_eq!(greedy.unique(), Some(&committee(&[0, 1])));
        }
    }

    #[test]
    fn full_committee_is_unique() {
        let p = Profile::with_generated_names(3, vec![Ballot::from_indices(&[2], 1)], 3).unwrap();
        let out = chamberlin_courant(&p, PartialModel::Pessimistic, TiePolicy::Error).unwrap();
        assert_eq!(out.unique(), Some(&committee(&[0, 1, 2])));
    }

    #[test]
    fn unranked_committee_default_points() {
        let p = Profile::with_generated_names(5, vec![Ballot::from_indices(&[0], 1)], 2).unwrap();
        let x = [CandidateId(1), CandidateId(2)];
        assert_eq!(committee_satisfaction(&p, &x, PartialModel::Optimistic), 3);
        assert_eq!(committee_satisfaction(&p, &x, PartialModel::Pessimistic), 0);
    }

    #[test]
    fn budget_is_enforced() {
        let p = Profile::with_generated_names(30, vec![Ballot::from_indices(&[0], 1)], 15).unwrap();
        assert!(matches!(
            chamberlin_courant(&p, PartialModel::Optimistic, TiePolicy::Error),
            Err(MethodError::BudgetExceeded { .. })
        ));
        assert_eq!(binomial(30, 15), 155_117_520);
    }

    #[test]
    fn optimum_ties_follow_policy() {
        let p = Profile::with_generated_names(
            3,
            vec![Ballot::from_indices(&[0, 1, 2], 1), Ballot::from_indices(&[1, 0, 2], 1)],
            1,
        )
        .unwrap();
        assert!(chamberlin_courant(&p, PartialModel::Optimistic, TiePolicy::Error).is_err());
        let out = chamberlin_courant(&p, PartialModel::Optimistic, TiePolicy::Alphabetical).unwrap();
        assert_eq!(out.committees().len(), 2);
        let greedy = greedy_cc(&p, PartialModel::Optimistic, TiePolicy::LowestIndex).unwrap();
        assert_eq!(greedy.unique(), Some(&committee(&[0])));
        assert!(greedy.is_tied());
    }
}
