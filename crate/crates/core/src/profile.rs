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

//! Election data model: candidates, weighted partial rankings, and the
//! aggregate scores every rule is built from.
//!
//! A [`Profile`] stores ballots de-duplicated into ballot types with integer
//! weights. Candidates left off a ballot are tied last for that voter.

use std::cmp::Ordering;
use std::fmt;

use thiserror::Error;

/// Index of a candidate within a [`Profile`]. Indices are dense: `0..m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CandidateId(pub usize);

impl CandidateId {
    #[inline]
    pub fn index(self) -> usize {
        self.0
    }
}

impl fmt::Display for CandidateId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

/// Errors raised while building or transforming a profile.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ProfileError {
    #[error("candidate index {index} is out of range for {candidates} candidates")]
    InvalidCandidate { index: usize, candidates: usize },
    #[error("ballot ranks candidate index {0} more than once")]
    DuplicateCandidate(usize),
    #[error("ballot ranks no candidates")]
    EmptyBallot,
    #[error("ballot weight must be positive")]
    ZeroWeight,
    #[error("profile contains no ballots")]
    NoBallots,
    #[error("{seats} seats cannot be filled from {candidates} candidates")]
    InvalidSeats { seats: usize, candidates: usize },
    #[error("removal would leave {remaining} candidates for {seats} seats")]
    TooFewCandidates { remaining: usize, seats: usize },
    #[error("expected {expected} candidate names, got {got}")]
    NameCount { expected: usize, got: usize },
    #[error("a pairwise margin needs two distinct candidates")]
    SameCandidate,
}

/// A strict partial ranking cast by `weight` identical voters.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Ballot {
    ranking: Vec<CandidateId>,
    weight: u64,
}

impl Ballot {
    pub fn new(ranking: Vec<CandidateId>, weight: u64) -> Self {
        Ballot { ranking, weight }
    }

    /// Builds a ballot from raw candidate indices.
    pub fn from_indices(indices: &[usize], weight: u64) -> Self {
        Ballot { ranking: indices.iter().copied().map(CandidateId).collect(), weight }
    }

    #[inline]
    pub fn ranking(&self) -> &[CandidateId] {
        &self.ranking
    }

    #[inline]
    pub fn weight(&self) -> u64 {
        self.weight
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.ranking.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.ranking.is_empty()
    }

    /// Zero-based position of `c` on this ballot, if ranked.
    pub fn position(&self, c: CandidateId) -> Option<usize> {
        self.ranking.iter().position(|&x| x == c)
    }

    fn validate(&self, candidates: usize) -> Result<(), ProfileError> {
        if self.weight == 0 {
            return Err(ProfileError::ZeroWeight);
        }
        if self.ranking.is_empty() {
            return Err(ProfileError::EmptyBallot);
        }
        let mut seen = vec![false; candidates];
        for &c in &self.ranking {
            if c.0 >= candidates {
                return Err(ProfileError::InvalidCandidate { index: c.0, candidates });
            }
            if std::mem::replace(&mut seen[c.0], true) {
                return Err(ProfileError::DuplicateCandidate(c.0));
            }
        }
        Ok(())
    }
}

/// How candidates missing from a partial ballot are scored by Borda-based
/// rules.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PartialModel {
    /// Unranked candidates receive `m - l - 1` points from a length-`l` ballot.
    Optimistic,
    /// Unranked candidates receive nothing.
    Pessimistic,
}

impl PartialModel {
    pub fn short_name(self) -> &'static str {
        match self {
            PartialModel::Optimistic => "OM",
            PartialModel::Pessimistic => "PM",
        }
    }

    /// Points an unranked candidate (or a committee with no ranked member)
    /// receives from a ballot of length `len` when there are `m` candidates.
    #[inline]
    pub fn unranked_points(self, m: usize, len: usize) -> i64 {
        match self {
            PartialModel::Optimistic => m as i64 - len as i64 - 1,
            PartialModel::Pessimistic => 0,
        }
    }
}

/// What a [`ScoreVector`] measures.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ScoreKind {
    FirstPlace,
    KApproval(usize),
    Borda(PartialModel),
    PairwiseMarginMin,
}

/// Per-candidate integer scores.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScoreVector {
    kind: ScoreKind,
    values: Vec<i64>,
}

impl ScoreVector {
    pub fn new(kind: ScoreKind, values: Vec<i64>) -> Self {
        ScoreVector { kind, values }
    }

    pub fn kind(&self) -> ScoreKind {
        self.kind
    }

    pub fn values(&self) -> &[i64] {
        &self.values
    }

    pub fn get(&self, c: CandidateId) -> i64 {
        self.values[c.0]
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn total(&self) -> i64 {
        self.values.iter().sum()
    }

    /// All candidates sharing the minimum score.
    pub fn argmin(&self) -> Vec<CandidateId> {
        self.arg_by(Ordering::Less)
    }

    /// All candidates sharing the maximum score.
    pub fn argmax(&self) -> Vec<CandidateId> {
        self.arg_by(Ordering::Greater)
    }

    fn arg_by(&self, better: Ordering) -> Vec<CandidateId> {
        let Some(&first) = self.values.first() else {
            return Vec::new();
        };
        let best =
            self.values.iter().copied().fold(first, |acc, v| if v.cmp(&acc) == better { v } else { acc });
        (0..self.values.len()).filter(|&i| self.values[i] == best).map(CandidateId).collect()
    }
}

/// An election: candidate roster, weighted ballot types, and seat count.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Profile {
    names: Vec<String>,
    /// Roster index of each candidate in the profile this one was derived from
    /// by removals; identity for freshly built profiles.
    origin: Vec<usize>,
    ballots: Vec<Ballot>,
    seats: usize,
    total: u64,
    title: String,
}

impl Profile {
    /// Builds a profile, validating every ballot and merging identical
    /// rankings into a single weighted ballot type.
    pub fn new(names: Vec<String>, ballots: Vec<Ballot>, seats: usize) -> Result<Profile, ProfileError> {
        let m = names.len();
        if seats == 0 || seats > m {
            return Err(ProfileError::InvalidSeats { seats, candidates: m });
        }
        for b in &ballots {
            b.validate(m)?;
        }
        let origin = (0..m).collect();
        Profile::assemble(names, origin, ballots, seats, String::new())
    }

    /// Builds a profile with generated names `A`, `B`, ... (or `C01`, ...
    /// beyond 26 candidates).
    pub fn with_generated_names(
        candidates: usize,
        ballots: Vec<Ballot>,
        seats: usize,
    ) -> Result<Profile, ProfileError> {
        Profile::new(generated_names(candidates), ballots, seats)
    }

    fn assemble(
        names: Vec<String>,
        origin: Vec<usize>,
        mut ballots: Vec<Ballot>,
        seats: usize,
        title: String,
    ) -> Result<Profile, ProfileError> {
        ballots.sort_unstable_by(|a, b| a.ranking.cmp(&b.ranking));
        let mut merged: Vec<Ballot> = Vec::with_capacity(ballots.len());
        for b in ballots {
            match merged.last_mut() {
                Some(last) if last.ranking == b.ranking => last.weight += b.weight,
                _ => merged.push(b),
            }
        }
        let total: u64 = merged.iter().map(|b| b.weight).sum();
        if total == 0 {
            return Err(ProfileError::NoBallots);
        }
        Ok(Profile { names, origin, ballots: merged, seats, total, title })
    }

    #[inline]
    pub fn num_candidates(&self) -> usize {
        self.names.len()
    }

    #[inline]
    pub fn seats(&self) -> usize {
        self.seats
    }

    /// Total ballot weight `n`.
    #[inline]
    pub fn total_weight(&self) -> u64 {
        self.total
    }

    /// Ballot types in canonical (lexicographic ranking) order.
    #[inline]
    pub fn ballots(&self) -> &[Ballot] {
        &self.ballots
    }

    pub fn name(&self, c: CandidateId) -> &str {
        &self.names[c.0]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn candidates(&self) -> impl Iterator<Item = CandidateId> + '_ {
        (0..self.names.len()).map(CandidateId)
    }

    /// Looks a candidate up by display name.
    pub fn candidate_by_name(&self, name: &str) -> Option<CandidateId> {
        self.names.iter().position(|n| n == name).map(CandidateId)
    }

    /// Roster index this candidate had before any removals.
    pub fn original_index(&self, c: CandidateId) -> usize {
        self.origin[c.0]
    }

    pub fn title(&self) -> &str {
        &self.title
    }

    pub fn with_title(mut self, title: impl Into<String>) -> Profile {
        self.title = title.into();
        self
    }

    /// Same ballots with a different number of seats.
    pub fn with_seats(&self, seats: usize) -> Result<Profile, ProfileError> {
        if seats == 0 || seats > self.num_candidates() {
            return Err(ProfileError::InvalidSeats { seats, candidates: self.num_candidates() });
        }
        let mut p = self.clone();
        p.seats = seats;
        Ok(p)
    }

    /// Deletes `c` from the election. Remaining candidates keep their relative
    /// order (indices above `c` shift down by one); ballots left empty are
    /// dropped.
    pub fn remove_candidate(&self, c: CandidateId) -> Result<Profile, ProfileError> {
        let m = self.num_candidates();
        if c.0 >= m {
            return Err(ProfileError::InvalidCandidate { index: c.0, candidates: m });
        }
        if m - 1 <= self.seats {
            return Err(ProfileError::TooFewCandidates { remaining: m - 1, seats: self.seats });
        }
        let mut keep = vec![true; m];
        keep[c.0] = false;
        self.retain_candidates(&keep, self.seats)
    }

    /// The election restricted to `subset`, filling `seats` seats. Equivalent
    /// to removing every candidate outside `subset` one at a time.
    pub fn restrict_to_subset(&self, subset: &[CandidateId], seats: usize) -> Result<Profile, ProfileError> {
        let m = self.num_candidates();
        let mut keep = vec![false; m];
        for &c in subset {
            if c.0 >= m {
                return Err(ProfileError::InvalidCandidate { index: c.0, candidates: m });
            }
            if std::mem::replace(&mut keep[c.0], true) {
                return Err(ProfileError::DuplicateCandidate(c.0));
            }
        }
        let size = subset.len();
        if size < 2 || seats == 0 || seats >= size {
            return Err(ProfileError::InvalidSeats { seats, candidates: size });
        }
        self.retain_candidates(&keep, seats)
    }

    fn retain_candidates(&self, keep: &[bool], seats: usize) -> Result<Profile, ProfileError> {
        let mut remap = vec![usize::MAX; keep.len()];
        let mut names = Vec::new();
        let mut origin = Vec::new();
        for (i, _) in keep.iter().enumerate().filter(|(_, &k)| k) {
            remap[i] = names.len();
            names.push(self.names[i].clone());
            origin.push(self.origin[i]);
        }
        let ballots = self
            .ballots
            .iter()
            .filter_map(|b| {
                let ranking: Vec<CandidateId> =
                    b.ranking.iter().filter(|c| keep[c.0]).map(|c| CandidateId(remap[c.0])).collect();
                (!ranking.is_empty()).then(|| Ballot::new(ranking, b.weight))
            })
            .collect();
        Profile::assemble(names, origin, ballots, seats, self.title.clone())
    }

    /// Weight of ballots whose first choice is each candidate.
    pub fn first_place_counts(&self) -> ScoreVector {
        let mut v = vec![0i64; self.num_candidates()];
        for b in &self.ballots {
            v[b.ranking[0].0] += b.weight as i64;
        }
        ScoreVector::new(ScoreKind::FirstPlace, v)
    }

    /// Weight of ballots ranking each candidate within their first `k`
    /// positions.
    pub fn top_k_counts(&self, k: usize) -> ScoreVector {
        let mut v = vec![0i64; self.num_candidates()];
        for b in &self.ballots {
            for c in b.ranking.iter().take(k) {
                v[c.0] += b.weight as i64;
            }
        }
        ScoreVector::new(ScoreKind::KApproval(k), v)
    }

    /// Borda totals: rank `r` (1-based) earns `m - r`; unranked candidates
    /// earn according to `model`.
    pub fn borda_scores(&self, model: PartialModel) -> ScoreVector {
        let m = self.num_candidates();
        let mut v = vec![0i64; m];
        let mut unranked_total = 0i64;
        for b in &self.ballots {
            let w = b.weight as i64;
            for (pos, c) in b.ranking.iter().enumerate() {
                v[c.0] += w * (m - 1 - pos) as i64;
            }
            let extra = model.unranked_points(m, b.len());
            if extra != 0 {
                // Credit every candidate, then take it back from the ranked.
                unranked_total += w * extra;
                for c in &b.ranking {
                    v[c.0] -= w * extra;
                }
            }
        }
        for x in &mut v {
            *x += unranked_total;
        }
        ScoreVector::new(ScoreKind::Borda(model), v)
    }

    /// Voters ranking `a` above `b` minus voters ranking `b` above `a`. A
    /// ranked candidate beats an unranked one; two unranked candidates tie.
    pub fn pairwise_margin(&self, a: CandidateId, b: CandidateId) -> Result<i64, ProfileError> {
        let m = self.num_candidates();
        for c in [a, b] {
            if c.0 >= m {
                return Err(ProfileError::InvalidCandidate { index: c.0, candidates: m });
            }
        }
        if a == b {
            return Err(ProfileError::SameCandidate);
        }
        let mut margin = 0i64;
        for ballot in &self.ballots {
            let pa = ballot.position(a).unwrap_or(usize::MAX);
            let pb = ballot.position(b).unwrap_or(usize::MAX);
            match pa.cmp(&pb) {
                Ordering::Less => margin += ballot.weight as i64,
                Ordering::Greater => margin -= ballot.weight as i64,
                Ordering::Equal => {}
            }
        }
        Ok(margin)
    }

    /// Full antisymmetric pairwise margin matrix, `matrix[a][b] = PW(a, b)`.
    pub fn pairwise_matrix(&self) -> Vec<Vec<i64>> {
        let m = self.num_candidates();
        let mut matrix = vec![vec![0i64; m]; m];
        let mut ranked = vec![false; m];
        for ballot in &self.ballots {
            let w = ballot.weight as i64;
            ranked.iter_mut().for_each(|r| *r = false);
            for (i, &a) in ballot.ranking.iter().enumerate() {
                for &b in &ballot.ranking[i + 1..] {
                    matrix[a.0][b.0] += w;
                    matrix[b.0][a.0] -= w;
                }
                ranked[a.0] = true;
            }
            for &a in &ballot.ranking {
                for (b, _) in ranked.iter().enumerate().filter(|(_, &r)| !r) {
                    matrix[a.0][b] += w;
                    matrix[b][a.0] -= w;
                }
            }
        }
        matrix
    }
}

/// Default roster names for synthetic elections.
pub fn generated_names(candidates: usize) -> Vec<String> {
    (0..candidates)
        .map(
            |i| {
                if candidates <= 26 {
                    char::from(b'A' + i as u8).to_string()
                } else {
                    format!("C{:02}", i + 1)
                }
            },
        )
        .collect()
}
