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

//! Random preference profiles: impartial culture (IC), impartial anonymous
//! culture (IAC) and a one-dimensional spatial model, each with complete or
//! partial ballots.
//!
//! Every draw is a pure function of `(spec, trial)`: trial `t` reads stream
//! `t` of a ChaCha8 generator keyed by the master seed, so trials can run in
//! any order on any number of threads.

use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use thiserror::Error;

use crate::profile::{Ballot, Profile};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Culture {
    Ic,
    Iac,
    Spatial1d,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Regime {
    Complete,
    Partial,
}

impl FromStr for Culture {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "ic" => Ok(Culture::Ic),
            "iac" => Ok(Culture::Iac),
            "spatial1d" | "spatial" => Ok(Culture::Spatial1d),
            _ => Err(format!("unknown model `{s}` (ic, iac, spatial1d)")),
        }
    }
}

impl fmt::Display for Culture {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Culture::Ic => "ic",
            Culture::Iac => "iac",
            Culture::Spatial1d => "spatial1d",
        })
    }
}

impl FromStr for Regime {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "complete" => Ok(Regime::Complete),
            "partial" => Ok(Regime::Partial),
            _ => Err(format!("unknown regime `{s}` (complete, partial)")),
        }
    }
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Regime::Complete => "complete",
            Regime::Partial => "partial",
        })
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SimError {
    #[error("need at least 2 candidates, got {0}")]
    TooFewCandidates(usize),
    #[error("need at least one voter")]
    NoVoters,
    #[error("need 1 <= k < m, got k = {seats}, m = {candidates}")]
    InvalidSeats { seats: usize, candidates: usize },
    #[error("IAC enumerates every ballot type; m = {0} is above the limit of 8")]
    TooManyTypes(usize),
}

/// Everything needed to draw the profiles of one experiment.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CultureSpec {
    pub culture: Culture,
    pub regime: Regime,
    pub candidates: usize,
    pub seats: usize,
    pub voters: u64,
    pub seed: u64,
}

impl CultureSpec {
    pub fn validate(&self) -> Result<(), SimError> {
        let m = self.candidates;
        if m < 2 {
            return Err(SimError::TooFewCandidates(m));
        }
        if self.voters == 0 {
            return Err(SimError::NoVoters);
        }
        if self.seats == 0 || self.seats >= m {
            return Err(SimError::InvalidSeats { seats: self.seats, candidates: m });
        }
        if self.culture == Culture::Iac && m > 8 {
            return Err(SimError::TooManyTypes(m));
        }
        Ok(())
    }

    /// The generator for one trial.
    pub fn rng(&self, trial: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(trial);
        rng
    }
}

/// Every ballot type of the regime: the m! full rankings, or all rankings
/// of length 1..m-1 (a length-m ballot says nothing more than its length
/// m-1 prefix).
pub fn ballot_universe(candidates: usize, regime: Regime) -> Vec<Vec<usize>> {
    match regime {
        Regime::Complete => (0..candidates).permutations(candidates).collect(),
        Regime::Partial => (1..candidates).flat_map(|len| (0..candidates).permutations(len)).collect(),
    }
}

/// Draws profiles for a validated spec; holds the ballot universe so it is
/// built once per experiment.
#[derive(Clone, Debug)]
pub struct Sampler {
    spec: CultureSpec,
    universe: Vec<Vec<usize>>,
}

impl Sampler {
    pub fn new(spec: CultureSpec) -> Result<Sampler, SimError> {
        spec.validate()?;
        let universe = match spec.culture {
            Culture::Spatial1d => Vec::new(),
            _ => ballot_universe(spec.candidates, spec.regime),
        };
        Ok(Sampler { spec, universe })
    }

    pub fn spec(&self) -> &CultureSpec {
        &self.spec
    }

    /// The profile of trial `trial`.
    pub fn sample(&self, trial: u64) -> Profile {
        self.sample_with(&mut self.spec.rng(trial))
    }

    pub fn sample_with<R: Rng>(&self, rng: &mut R) -> Profile {
        match self.spec.culture {
            Culture::Ic => self.ic(rng),
            Culture::Iac => self.iac(rng),
            Culture::Spatial1d => self.spatial(rng),
        }
    }

    fn profile_from_counts(&self, counts: &[u64]) -> Profile {
        let ballots = counts
            .iter()
            .zip(&self.universe)
            .filter(|(&w, _)| w > 0)
            .map(|(&w, r)| Ballot::from_indices(r, w))
            .collect();
        Profile::with_generated_names(self.spec.candidates, ballots, self.spec.seats)
            .expect("sampled ballots are valid")
    }

    fn ic<R: Rng>(&self, rng: &mut R) -> Profile {
        let mut counts = vec![0u64; self.universe.len()];
        for _ in 0..self.spec.voters {
            counts[rng.random_range(0..self.universe.len())] += 1;
        }
        self.profile_from_counts(&counts)
    }

    /// Stars and bars: T-1 bars among n+T-1 slots split n voters into T
    /// types, uniformly over all such splits.
    fn iac<R: Rng>(&self, rng: &mut R) -> Profile {
        let types = self.universe.len();
        let n = self.spec.voters as usize;
        let mut bars = index::sample(rng, n + types - 1, types - 1).into_vec();
        bars.sort_unstable();
        let mut counts = Vec::with_capacity(types);
        let mut prev = 0usize;
        for &b in &bars {
            counts.push((b - prev) as u64);
            prev = b + 1;
        }
        counts.push((n + types - 1 - prev) as u64);
        self.profile_from_counts(&counts)
    }

    fn spatial<R: Rng>(&self, rng: &mut R) -> Profile {
        let m = self.spec.candidates;
        let positions: Vec<f64> = loop {
            let xs: Vec<f64> = (0..m).map(|_| rng.sample(StandardNormal)).collect();
            if xs.iter().tuple_combinations().all(|(a, b)| a != b) {
                break xs;
            }
        };
        let mut ballots = Vec::with_capacity(self.spec.voters as usize);
        for _ in 0..self.spec.voters {
            let order = loop {
                if let Some(order) = distance_order(&positions, rng.sample(StandardNormal)) {
                    break order;
                }
            };
            let len = match self.spec.regime {
                Regime::Complete => m - 1,
                Regime::Partial => rng.random_range(1..m),
            };
            ballots.push(Ballot::from_indices(&order[..len], 1));
        }
        Profile::with_generated_names(m, ballots, self.spec.seats).expect("sampled ballots are valid")
    }
}

/// Candidates ordered by distance from a voter at `voter`; `None` when two
/// candidates are equidistant.
pub fn distance_order(positions: &[f64], voter: f64) -> Option<Vec<usize>> {
    let dist: Vec<f64> = positions.iter().map(|c| (voter - c).abs()).collect();
    if dist.iter().tuple_combinations().any(|(a, b)| a == b) {
        return None;
    }
    let mut order: Vec<usize> = (0..positions.len()).collect();
    order.sort_by(|&a, &b| dist[a].total_cmp(&dist[b]));
    Some(order)
}
