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

//! The `.blt` dialect used by the Scottish local-election corpus.
//!
//! ```text
//! 3 1              candidates, seats
//! 100 1 2 3 0      weight, 1-based preferences, terminating 0
//! 0                end of ballots
//! "A"              one quoted name per candidate
//! "W"
//! "S"
//! "Example"        title
//! ```
//!
//! Windows line endings and trailing whitespace are accepted; anything else
//! out of grammar is an error carrying its line number. Lines after the
//! title are ignored.

use std::fmt::Write as _;
use std::path::Path;

use thiserror::Error;

use crate::profile::{Ballot, CandidateId, Profile, ProfileError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BltErrorKind {
    #[error("input is not valid UTF-8")]
    Utf8,
    #[error("malformed header: {0}")]
    Header(String),
    #[error("expected a non-negative integer, found `{0}`")]
    BadNumber(String),
    #[error("ballot weight must be positive")]
    ZeroWeight,
    #[error("ballot ranks no candidates")]
    EmptyBallot,
    #[error("candidate {index} is out of range 1..={candidates}")]
    IndexOutOfRange { index: usize, candidates: usize },
    #[error("candidate {0} appears twice in one ballot")]
    DuplicateCandidate(usize),
    #[error("ballot line does not end with 0")]
    MissingTerminator,
    #[error("input ended before the `0` line closing the ballots")]
    MissingSentinel,
    #[error("expected {expected} candidate names, found {found}")]
    MissingName { expected: usize, found: usize },
    #[error("missing title line")]
    MissingTitle,
    #[error("expected a double-quoted string")]
    BadString,
    #[error("the ballots carry zero total weight")]
    NoBallots,
}

/// A parse failure at a 1-based line (0 when the input as a whole is bad).
#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("line {line}: {kind}")]
pub struct BltError {
    pub line: usize,
    pub kind: BltErrorKind,
}

impl BltError {
    fn at(line: usize, kind: BltErrorKind) -> Self {
        BltError { line, kind }
    }
}

/// A `.blt` file as written: ballot lines keep their file order and are not
/// merged.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BltDocument {
    pub candidates: usize,
    pub seats: usize,
    /// `(weight, 0-based preferences)` per ballot line.
    pub ballots: Vec<(u64, Vec<usize>)>,
    pub names: Vec<String>,
    pub title: String,
}

impl BltDocument {
    /// Total declared weight.
    pub fn total_weight(&self) -> u64 {
        self.ballots.iter().map(|(w, _)| w).sum()
    }

    pub fn into_profile(self) -> Result<Profile, ProfileError> {
        let ballots = self
            .ballots
            .into_iter()
            .map(|(w, r)| Ballot::new(r.into_iter().map(CandidateId).collect(), w))
            .collect();
        Ok(Profile::new(self.names, ballots, self.seats)?.with_title(self.title))
    }
}

fn number(token: &str, line: usize) -> Result<u64, BltError> {
    token.parse::<u64>().map_err(|_| BltError::at(line, BltErrorKind::BadNumber(token.to_string())))
}

fn quoted(text: &str, line: usize) -> Result<String, BltError> {
    let bad = || BltError::at(line, BltErrorKind::BadString);
    let inner = text.strip_prefix('"').ok_or_else(bad)?;
    let mut out = String::new();
    let mut chars = inner.chars();
    while let Some(ch) = chars.next() {
        match ch {
            '\\' => match chars.next() {
                Some(esc @ ('"' | '\\')) => out.push(esc),
                _ => return Err(bad()),
            },
            '"' => {
                return if chars.as_str().is_empty() { Ok(out) } else { Err(bad()) };
            }
            _ => out.push(ch),
        }
    }
    Err(bad())
}

fn escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for ch in s.chars() {
        if matches!(ch, '"' | '\\') {
            out.push('\\');
        }
        out.push(ch);
    }
    out.push('"');
    out
}

/// Parses a document without building a [`Profile`].
pub fn parse_blt_document(text: &str) -> Result<BltDocument, BltError> {
    // `lines()` already strips a trailing `\r`.
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim_end()));

    let (line, header) =
        lines.next().ok_or_else(|| BltError::at(1, BltErrorKind::Header("empty input".into())))?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    let [m, k] = fields.as_slice() else {
        return Err(BltError::at(line, BltErrorKind::Header(format!("expected `m k`, found `{header}`"))));
    };
    let (m, k) = (number(m, line)? as usize, number(k, line)? as usize);
    if m == 0 || k == 0 || k >= m {
        return Err(BltError::at(
            line,
            BltErrorKind::Header(format!("need 1 <= k < m, found m = {m}, k = {k}")),
        ));
    }

    let mut ballots = Vec::new();
    let mut last_line = line;
    loop {
        let Some((line, text)) = lines.next() else {
            return Err(BltError::at(last_line + 1, BltErrorKind::MissingSentinel));
        };
        last_line = line;
        let tokens: Vec<&str> = text.split_whitespace().collect();
        match tokens.as_slice() {
            [] => return Err(BltError::at(line, BltErrorKind::EmptyBallot)),
            ["0"] => break,
            [weight, rest @ ..] => {
                let weight = number(weight, line)?;
                if weight == 0 {
                    return Err(BltError::at(line, BltErrorKind::ZeroWeight));
                }
                let Some((&"0", prefs)) = rest.split_last() else {
                    return Err(BltError::at(line, BltErrorKind::MissingTerminator));
                };
                if prefs.is_empty() {
                    return Err(BltError::at(line, BltErrorKind::EmptyBallot));
                }
                let mut seen = vec![false; m];
                let mut ranking = Vec::with_capacity(prefs.len());
                for tok in prefs {
                    let index = number(tok, line)? as usize;
                    if index == 0 || index > m {
                        return Err(BltError::at(
                            line,
                            BltErrorKind::IndexOutOfRange { index, candidates: m },
                        ));
                    }
                    if std::mem::replace(&mut seen[index - 1], true) {
                        return Err(BltError::at(line, BltErrorKind::DuplicateCandidate(index)));
                    }
                    ranking.push(index - 1);
                }
                ballots.push((weight, ranking));
            }
        }
    }

    let mut names = Vec::with_capacity(m);
    while names.len() < m {
        let Some((line, text)) = lines.next() else {
            return Err(BltError::at(
                last_line + 1,
                BltErrorKind::MissingName { expected: m, found: names.len() },
            ));
        };
        last_line = line;
        names.push(quoted(text.trim_start(), line)?);
    }
    let (line, text) = lines.next().ok_or_else(|| BltError::at(last_line + 1, BltErrorKind::MissingTitle))?;
    let title = quoted(text.trim_start(), line)?;

    let doc = BltDocument { candidates: m, seats: k, ballots, names, title };
    if doc.total_weight() == 0 {
        return Err(BltError::at(0, BltErrorKind::NoBallots));
    }
    Ok(doc)
}

/// Parses a `.blt` byte stream into a profile with merged ballot types.
pub fn parse_blt(bytes: &[u8]) -> Result<Profile, BltError> {
    let text = std::str::from_utf8(bytes).map_err(|_| BltError::at(0, BltErrorKind::Utf8))?;
    let doc = parse_blt_document(text)?;
    // The grammar checks already cover everything `Profile::new` validates.
    Ok(doc.into_profile().expect("validated document"))
}

/// Reads and parses a `.blt` file; errors name the path.
pub fn read_blt_file(path: &Path) -> Result<Profile, String> {
    let bytes = std::fs::read(path).map_err(|e| format!("{}: {e}", path.display()))?;
    parse_blt(&bytes).map_err(|e| format!("{}: {e}", path.display()))
}

/// Canonical `.blt` text: ballot types in lexicographic order, identical
/// rankings aggregated. A profile with as many seats as candidates has no
/// valid header and will not parse back.
pub fn emit_blt(p: &Profile) -> String {
    let mut out = String::new();
    writeln!(out, "{} {}", p.num_candidates(), p.seats()).unwrap();
    for b in p.ballots() {
        write!(out, "{}", b.weight()).unwrap();
        for c in b.ranking() {
            write!(out, " {}", c.index() + 1).unwrap();
        }
        out.push_str(" 0\n");
    }
    out.push_str("0\n");
    for name in p.names() {
        out.push_str(&escape(name));
        out.push('\n');
    }
    out.push_str(&escape(p.title()));
    out.push('\n');
    out
}
