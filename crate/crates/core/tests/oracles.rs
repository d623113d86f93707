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

//! Library rules against brute-force references on small random elections.

mod common;

use common::{cc_oracle, committee, condorcet_oracle, random_profile, spoiler_oracle};
use mwspoil_core::methods::{
    chamberlin_courant, committee_satisfaction, condorcet_committee, mcc, Method, MethodError, TiePolicy,
};
use mwspoil_core::profile::{CandidateId, PartialModel};
use mwspoil_core::spoiler::analyze_spoilers;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const MODELS: [PartialModel; 2] = [PartialModel::Optimistic, PartialModel::Pessimistic];

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn cc_matches_enumeration(seed in any::<u64>()) {
        let p = random_profile(&mut ChaCha8Rng::seed_from_u64(seed), 6, 50);
        for model in MODELS {
            let (best, argmax) = cc_oracle(&p, model);
            let all = chamberlin_courant(&p, model, TiePolicy::Alphabetical).unwrap();
            let got: Vec<_> = all.committees().iter().map(|c| c.members().iter().map(|x| x.0).collect::<Vec<_>>()).collect();
            prop_assert_eq!(&got, &argmax);
            for c in all.committees() {
                prop_assert_eq!(committee_satisfaction(&p, c.members(), model), best);
            }
            match chamberlin_courant(&p, model, TiePolicy::Error) {
                Ok(o) => prop_assert_eq!(o.unique(), Some(&committee(&argmax[0]))),
                Err(e) => {
                    prop_assert_eq!(e, MethodError::Tie("several optimal committees"));
                    prop_assert!(argmax.len() > 1);
                }
            }
        }
    }

    #[test]
    fn condorcet_committees_match_enumeration(seed in any::<u64>()) {
        let p = random_profile(&mut ChaCha8Rng::seed_from_u64(seed), 6, 50);
        for size in 1..=p.num_candidates() {
            let brute = condorcet_oracle(&p, size);
            prop_assert!(brute.len() <= 1, "two Condorcet committees of one size");
            prop_assert_eq!(condorcet_committee(&p, size), brute.first().map(|c| committee(c)));
        }
        if let Some(exact) = condorcet_oracle(&p, p.seats()).first() {
            let got = mcc(&p, TiePolicy::Error).unwrap();
            prop_assert_eq!(got.unique(), Some(&committee(exact)));
        }
    }

    #[test]
    fn spoiler_reports_match_definition(seed in any::<u64>()) {
        let p = random_profile(&mut ChaCha8Rng::seed_from_u64(seed), 6, 50);
        for method in Method::ALL {
            for tie in [TiePolicy::Error, TiePolicy::Alphabetical] {
                let expected = spoiler_oracle(&p, method, tie);
                match analyze_spoilers(&p, method, tie) {
                    Ok(report) => {
                        let got: Vec<(String, bool)> = report
                            .verdicts
                            .iter()
                            .map(|v| (p.name(v.candidate).to_string(), v.is_spoiler))
                            .collect();
                        prop_assert_eq!(Ok(got), expected, "{} {}", method, tie);
                        for c in report.spoilers() {
                            prop_assert!(!report.original.in_any(c));
                        }
                    }
                    Err(e) => prop_assert_eq!(Err(e), expected.map(|_| ())),
                }
            }
        }
    }

    #[test]
    fn top_k_irv_never_spoiled_by_plurality_loser(seed in any::<u64>()) {
        let p = random_profile(&mut ChaCha8Rng::seed_from_u64(seed), 6, 50);
        let losers = p.first_place_counts().argmin();
        if let Ok(report) = analyze_spoilers(&p, Method::TopKIrv, TiePolicy::Error) {
            for s in report.spoilers() {
                prop_assert!(!(losers.len() == 1 && losers[0] == s));
            }
            if losers.len() == 1 {
                prop_assert!(!report.original.in_any(losers[0]));
            }
        }
    }
}

#[test]
fn plurality_example_cc_scores() {
    let p = mwspoil_core::io::parse_blt(
        b"3 2\n100 1 2 3 0\n90 2 3 1 0\n40 3 2 1 0\n0\n\"A\"\n\"W\"\n\"S\"\n\"Example\"\n",
    )
    .unwrap();
    let score = |ids: &[usize]| {
        let ids: Vec<CandidateId> = ids.iter().copied().map(CandidateId).collect();
        committee_satisfaction(&p, &ids, PartialModel::Optimistic)
    };
    assert_eq!((score(&[0, 1]), score(&[0, 2]), score(&[1, 2])), (420, 370, 360));
    assert_eq!(cc_oracle(&p, PartialModel::Optimistic), (420, vec![vec![0, 1]]));
}
