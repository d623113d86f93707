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

//! Completing partial ballots from observed continuations.
//!
//! Pass `j` looks at every ballot of length exactly `j`. Longer ballots
//! sharing its first `j` preferences vote on how it continues: the short
//! ballots' weight is split across the observed next choices in proportion to
//! their weight, rounded by largest remainders. Statistics are frozen at the
//! start of each pass, and a pass is skipped when longer ballots are too
//! scarce relative to length-`j` ones.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::profile::{Ballot, CandidateId, Profile};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ExtendError {
    #[error("stop ratio must lie in (0, 1], got {0}")]
    StopRatio(f64),
    #[error("quota {0} is negative or not finite")]
    BadQuota(f64),
    #[error("quotas sum to {sum}, not {total}")]
    QuotaSum { sum: f64, total: u64 },
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ExtensionConfig {
    /// A pass runs only if ballots longer than `j` weigh at least this
    /// fraction of the length-`j` ballots.
    pub stop_ratio: f64,
    /// Ballots are not extended beyond this length (default: complete).
    pub max_length: Option<usize>,
}

impl Default for ExtensionConfig {
    fn default() -> Self {
        ExtensionConfig { stop_ratio: 0.10, max_length: None }
    }
}

/// Largest-remainder rounding of real quotas summing to `total`. Remainder
/// ties go to the larger quota, then the lower index.
pub fn hamilton_apportion(quotas: &[f64], total: u64) -> Result<Vec<u64>, ExtendError> {
    if let Some(&q) = quotas.iter().find(|q| !q.is_finite() || **q < 0.0) {
        return Err(ExtendError::BadQuota(q));
    }
    let sum: f64 = quotas.iter().sum();
    if (sum - total as f64).abs() > 1e-9 * (total as f64).max(1.0) {
        return Err(ExtendError::QuotaSum { sum, total });
    }
    let mut seats: Vec<u64> = quotas.iter().map(|q| q.floor() as u64).collect();
    let assigned: u64 = seats.iter().sum();
    let mut order: Vec<usize> = (0..quotas.len()).collect();
    let frac = |i: usize| quotas[i] - quotas[i].floor();
    order.sort_by(|&a, &b| frac(b).total_cmp(&frac(a)).then(quotas[b].total_cmp(&quotas[a])).then(a.cmp(&b)));
    for &i in order.iter().take(total.saturating_sub(assigned) as usize) {
        seats[i] += 1;
    }
    Ok(seats)
}

/// Exact-arithmetic Hamilton split of `total` in proportion to `shares`
/// (same tie rules as [`hamilton_apportion`]).
pub fn hamilton_split(shares: &[u64], total: u64) -> Vec<u64> {
    let denom: u128 = shares.iter().map(|&s| s as u128).sum();
    assert!(denom > 0, "cannot split in proportion to zero shares");
    let exact: Vec<u128> = shares.iter().map(|&s| s as u128 * total as u128).collect();
    let mut seats: Vec<u64> = exact.iter().map(|e| (e / denom) as u64).collect();
    let assigned: u64 = seats.iter().sum();
    let mut order: Vec<usize> = (0..shares.len()).collect();
    order.sort_by(|&a, &b| {
        (exact[b] % denom).cmp(&(exact[a] % denom)).then(shares[b].cmp(&shares[a])).then(a.cmp(&b))
    });
    for &i in order.iter().take((total - assigned) as usize) {
        seats[i] += 1;
    }
    seats
}

/// Lengthens partial ballots pass by pass; total weight and every ballot's
/// existing preferences are preserved.
pub fn extend_profile(p: &Profile, cfg: &ExtensionConfig) -> Result<Profile, ExtendError> {
    if !(cfg.stop_ratio > 0.0 && cfg.stop_ratio <= 1.0) {
        return Err(ExtendError::StopRatio(cfg.stop_ratio));
    }
    let m = p.num_candidates();
    // Length m-1 already determines the full order.
    let limit = cfg.max_length.unwrap_or(m).min(m.saturating_sub(1));
    let mut ballots: Vec<Ballot> = p.ballots().to_vec();
    for j in 1..limit {
        let at_j: u64 = ballots.iter().filter(|b| b.len() == j).map(Ballot::weight).sum();
        let longer: u64 = ballots.iter().filter(|b| b.len() > j).map(Ballot::weight).sum();
        if at_j == 0 || (longer as f64) < cfg.stop_ratio * at_j as f64 {
            continue;
        }
        let mut next: BTreeMap<&[CandidateId], BTreeMap<CandidateId, u64>> = BTreeMap::new();
        for b in ballots.iter().filter(|b| b.len() > j) {
            *next.entry(&b.ranking()[..j]).or_default().entry(b.ranking()[j]).or_default() += b.weight();
        }
        let mut out = Vec::with_capacity(ballots.len());
        for b in &ballots {
            let Some(options) = next.get(b.ranking()).filter(|_| b.len() == j) else {
                out.push(b.clone());
                continue;
            };
            let shares: Vec<u64> = options.values().copied().collect();
            for ((&c, _), w) in options.iter().zip(hamilton_split(&shares, b.weight())) {
                if w > 0 {
                    let mut ranking = b.ranking().to_vec();
                    ranking.push(c);
                    out.push(Ballot::new(ranking, w));
                }
            }
        }
        ballots = out;
    }
    let extended =
        Profile::new(p.names().to_vec(), ballots, p.seats()).expect("extension keeps ballots valid");
    Ok(extended.with_title(p.title()))
}
