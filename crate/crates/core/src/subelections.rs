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

//! Every election obtained by keeping a fixed-size subset of the candidates.

use itertools::{Combinations, Itertools};
use std::ops::Range;

use crate::profile::{CandidateId, Profile, ProfileError};

/// Restricted profiles in lexicographic subset order. Subsets on which no
/// ballot ranks anyone are skipped and counted.
pub struct Subelections<'a> {
    profile: &'a Profile,
    seats: usize,
    subsets: Combinations<Range<usize>>,
    skipped: usize,
}

impl Subelections<'_> {
    /// Subsets skipped so far for lack of ballots.
    pub fn skipped(&self) -> usize {
        self.skipped
    }
}

impl Iterator for Subelections<'_> {
    type Item = Profile;

    fn next(&mut self) -> Option<Profile> {
        loop {
            let subset: Vec<CandidateId> = self.subsets.next()?.into_iter().map(CandidateId).collect();
            match self.profile.restrict_to_subset(&subset, self.seats) {
                Ok(p) => return Some(p),
                Err(ProfileError::NoBallots) => self.skipped += 1,
                Err(e) => unreachable!("subset arguments were checked up front: {e}"),
            }
        }
    }
}

/// All C(m, size) sub-elections with `seats` seats each.
pub fn enumerate_subelections(
    p: &Profile,
    size: usize,
    seats: usize,
) -> Result<Subelections<'_>, ProfileError> {
    if size < 2 || size > p.num_candidates() || seats == 0 || seats >= size {
        return Err(ProfileError::InvalidSeats { seats, candidates: size });
    }
    Ok(Subelections { profile: p, seats, subsets: (0..p.num_candidates()).combinations(size), skipped: 0 })
}
