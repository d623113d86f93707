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

//! Top-k instant runoff: drop the last-placed candidate until k remain.

use super::{check_seats, Committee, MethodError, OutcomeSet, TiePolicy};
use crate::profile::{CandidateId, Profile};

/// Eliminates the candidate with the fewest first-place votes among those
/// still continuing, one at a time, until `k` survive. Ballots move at full
/// value; an eliminated candidate is chosen from tied minimizers by `tie`.
pub fn top_k_irv(p: &Profile, tie: TiePolicy) -> Result<OutcomeSet, MethodError> {
    check_seats(p)?;
    let m = p.num_candidates();
    let mut continuing = vec![true; m];
    let mut remaining = m;
    let mut tie_broken = false;
    while remaining > p.seats() {
        let mut counts = vec![0u64; m];
        for b in p.ballots() {
            if let Some(c) = b.ranking().iter().find(|c| continuing[c.index()]) {
                counts[c.index()] += b.weight();
            }
        }
        let lowest = (0..m).filter(|&c| continuing[c]).map(|c| counts[c]).min().unwrap();
        let tied: Vec<CandidateId> =
            (0..m).filter(|&c| continuing[c] && counts[c] == lowest).map(CandidateId).collect();
        let (out, broke) = tie.pick(&tied, p, "lowest candidate")?;
        tie_broken |= broke;
        continuing[out.index()] = false;
        remaining -= 1;
    }
    let winners = (0..m).filter(|&c| continuing[c]).map(CandidateId).collect();
    Ok(OutcomeSet::single(Committee::new(winners), tie_broken))
}
