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

//! Brute-force reference implementations, written from the definitions
//! without reusing library internals.
#![allow(dead_code)]

pub mod corpus;

use mwspoil_core::methods::{Committee, Method, MethodError, OutcomeSet, TiePolicy};
use mwspoil_core::profile::{Ballot, CandidateId, PartialModel, Profile};
use rand::seq::SliceRandom;
use rand::Rng;

/// Random election with `3..=max_m` candidates, `1..=max_n` unit ballots of
/// random length and a valid seat count.
pub fn random_profile<R: Rng>(rng: &mut R, max_m: usize, max_n: usize) -> Profile {
    let m = rng.random_range(3..=max_m);
    let k = rng.random_range(1..m);
    let n = rng.random_range(1..=max_n);
    let ballots = (0..n)
        .map(|_| {
            let mut order: Vec<usize> = (0..m).collect();
            order.shuffle(rng);
            order.truncate(rng.random_range(1..=m));
            Ballot::from_indices(&order, 1)
        })
        .collect();
    Profile::with_generated_names(m, ballots, k).unwrap()
}

fn members(mask: u32, m: usize) -> Vec<usize> {
    (0..m).filter(|&c| mask >> c & 1 == 1).collect()
}

/// Best committee score and every committee achieving it.
pub fn cc_oracle(p: &Profile, model: PartialModel) -> (i64, Vec<Vec<usize>>) {
    let (m, k) = (p.num_candidates(), p.seats());
    let mut best = (i64::MIN, Vec::new());
    for mask in 0u32..1 << m {
        if mask.count_ones() as usize != k {
            continue;
        }
        let mut score = 0i64;
        for b in p.ballots() {
            let r = b.ranking();
            let ranked_best = r
                .iter()
                .enumerate()
                .filter(|(_, c)| mask >> c.0 & 1 == 1)
                .map(|(pos, _)| (m - 1 - pos) as i64)
                .max();
            let default = match model {
                PartialModel::Optimistic => (m - r.len()) as i64 - 1,
                PartialModel::Pessimistic => 0,
            };
            score += b.weight() as i64 * ranked_best.unwrap_or(default);
        }
        if score > best.0 {
            best = (score, vec![members(mask, m)]);
        } else if score == best.0 {
            best.1.push(members(mask, m));
        }
    }
    best.1.sort();
    best
}

/// Voters preferring `a` to `b` minus the reverse; ranked beats unranked.
pub fn margin(p: &Profile, a: usize, b: usize) -> i64 {
    p.ballots()
        .iter()
        .map(|bal| {
            let pos = |c: usize| bal.ranking().iter().position(|x| x.0 == c).unwrap_or(usize::MAX);
            let w = bal.weight() as i64;
            match pos(a).cmp(&pos(b)) {
                std::cmp::Ordering::Less => w,
                std::cmp::Ordering::Greater => -w,
                std::cmp::Ordering::Equal => 0,
            }
        })
        .sum()
}

/// Every committee of `size` whose members all strictly beat every outsider.
pub fn condorcet_oracle(p: &Profile, size: usize) -> Vec<Vec<usize>> {
    let m = p.num_candidates();
    (0u32..1 << m)
        .filter(|mask| mask.count_ones() as usize == size)
        .map(|mask| members(mask, m))
        .filter(|inside| {
            inside.iter().all(|&a| (0..m).filter(|b| !inside.contains(b)).all(|b| margin(p, a, b) > 0))
        })
        .collect()
}

fn by_name(p: &Profile, o: &OutcomeSet) -> Vec<Vec<String>> {
    let mut v: Vec<Vec<String>> = o
        .committees()
        .iter()
        .map(|c| {
            let mut names: Vec<String> = c.members().iter().map(|&x| p.name(x).to_string()).collect();
            names.sort();
            names
        })
        .collect();
    v.sort();
    v
}

/// Removes `drop` by rebuilding the profile from names.
fn without(p: &Profile, drop: usize) -> Option<Profile> {
    let keep: Vec<usize> = (0..p.num_candidates()).filter(|&c| c != drop).collect();
    let names: Vec<String> = keep.iter().map(|&c| p.name(CandidateId(c)).to_string()).collect();
    let ballots: Vec<Ballot> = p
        .ballots()
        .iter()
        .filter_map(|b| {
            let r: Vec<CandidateId> = b
                .ranking()
                .iter()
                .filter(|c| c.0 != drop)
                .map(|c| CandidateId(keep.iter().position(|&k| k == c.0).unwrap()))
                .collect();
            (!r.is_empty()).then(|| Ballot::new(r, b.weight()))
        })
        .collect();
    Profile::new(names, ballots, p.seats()).ok()
}

/// Spoiler verdict per losing candidate (by name) straight from the
/// definition: re-run without the candidate and compare winning sets.
pub fn spoiler_oracle(
    p: &Profile,
    method: Method,
    tie: TiePolicy,
) -> Result<Vec<(String, bool)>, MethodError> {
    let original = method.run(p, tie)?;
    let orig_names = by_name(p, &original);
    let mut out = Vec::new();
    for c in 0..p.num_candidates() {
        let name = p.name(CandidateId(c)).to_string();
        if orig_names.iter().any(|s| s.contains(&name)) {
            continue;
        }
        let q = without(p, c).expect("ballots remain");
        let changed = if q.num_candidates() == q.seats() {
            let all: Vec<String> = {
                let mut v: Vec<String> = q.names().to_vec();
                v.sort();
                v
            };
            vec![all] != orig_names
        } else {
            match method.run(&q, tie) {
                Ok(alt) => by_name(&q, &alt) != orig_names,
                Err(MethodError::Tie(_)) => true,
                Err(e) => return Err(e),
            }
        };
        out.push((name, changed));
    }
    Ok(out)
}

pub fn committee(ids: &[usize]) -> Committee {
    Committee::new(ids.iter().copied().map(CandidateId).collect())
}
