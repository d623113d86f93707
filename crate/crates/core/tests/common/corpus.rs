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

//! Checks against published Scottish council election files. The files are
//! not vendored: point `MWSPOIL_CORPUS_DIR` at a checkout of the corpus (or
//! `MWSPOIL_EDINBURGH_BLT` / `MWSPOIL_FORMARTINE_BLT` at single files) and the
//! callers turn a `None` locate result into a skip.

#![allow(dead_code)]

use std::path::{Path, PathBuf};

use mwspoil_core::harness::collect_blt_files;
use mwspoil_core::io::read_blt_file;
use mwspoil_core::methods::{mcc, stv, top_k_irv, Method, TiePolicy};
use mwspoil_core::profile::{CandidateId, Profile};
use mwspoil_core::spoiler::{analyze_spoilers, stability_summary, weakness_flags};

pub const CORPUS_VAR: &str = "MWSPOIL_CORPUS_DIR";

pub const EDINBURGH_NAMES: [&str; 10] = [
    "Bandel",
    "Herring",
    "Holden",
    "Laird",
    "McNamara",
    "Mitchell",
    "Munro-Brian",
    "Nicolson",
    "Osler",
    "Wood",
];
pub const FORMARTINE_NAMES: [&str; 6] = ["Hassan", "Hutchison", "Johnston", "Nicol", "Powell", "Ritchie"];

type Table = &'static [(&'static str, &'static [f64])];

/// Ward 5 count, round by round; a row stops where the candidate leaves the
/// count (or is shown elected).
pub const EDINBURGH_ACTUAL: Table = &[
    ("Bandel", &[1714.0, 1740.1, 1740.1, 1741.4, 1751.5, 1767.8, 2221.6, 2379.8, 2383.7, 2959.0]),
    ("Herring", &[853.0, 863.1, 863.1, 867.1, 889.3]),
    ("Holden", &[96.0, 97.4, 98.4, 109.4]),
    ("Laird", &[53.0, 53.6, 53.6]),
    ("McNamara", &[17.0, 17.3]),
    ("Mitchell", &[1836.0, 1877.5, 1878.7, 1883.8, 1896.8, 2643.6, 2767.6]),
    ("Munro-Brian", &[1684.0, 1713.0, 1715.0, 1721.0, 1736.2, 1755.3]),
    ("Nicolson", &[2641.0, 2657.3, 2659.3, 2663.3, 2668.4, 2683.4, 2936.8]),
    ("Osler", &[3117.0]),
    ("Wood", &[1405.0, 1700.6, 1702.7, 1711.7, 1725.3, 1765.1, 2275.5, 2303.0, 2337.8]),
];

pub const EDINBURGH_NO_HERRING: Table = &[
    ("Bandel", &[1728.0, 1757.5, 1757.5, 1759.8, 1760.4, 1773.6, 2331.8, 2336.0]),
    ("Holden", &[108.0, 110.0, 111.0, 124.0, 124.0]),
    ("Laird", &[60.0, 60.8, 60.8]),
    ("McNamara", &[18.0, 18.3]),
    ("Mitchell", &[2530.0, 2585.3, 2586.5, 2595.6, 2595.7, 2635.8, 2768.4]),
    ("Munro-Brian", &[1698.0, 1730.7, 1732.7, 1741.7, 1741.9, 1760.0]),
    ("Nicolson", &[2654.0, 2672.1, 2674.1, 2678.1]),
    ("Osler", &[3168.0]),
    ("Wood", &[1418.0, 1754.0, 1757.2, 1767.2, 1767.2, 1783.9, 2344.7, 2382.5, 3342.3]),
];

pub const EDINBURGH_NO_WOOD: Table = &[
    ("Bandel", &[1726.0, 1991.3, 2036.3, 2036.3, 2041.6, 2059.6, 2082.9, 2108.4]),
    ("Herring", &[886.0, 1028.8, 1029.3, 1029.7, 1035.5, 1061.0]),
    ("Holden", &[98.0, 113.9, 114.6, 115.6, 129.2]),
    ("Laird", &[53.0, 64.1, 64.4, 65.8]),
    ("McNamara", &[17.0, 21.4, 21.5]),
    ("Mitchell", &[1845.0, 2227.4, 2228.8, 2230.6, 2238.2, 2257.4, 3151.1]),
    ("Munro-Brian", &[1706.0, 2054.3, 2065.7, 2068.7, 2077.7, 2101.9, 2128.2, 2218.0, 3436.0]),
    ("Nicolson", &[2645.0, 2756.1]),
    ("Osler", &[4447.0]),
];

/// The candidate whose name contains `surname` (case-insensitive).
pub fn find(p: &Profile, surname: &str) -> Option<CandidateId> {
    let needle = surname.to_lowercase();
    let hits: Vec<CandidateId> = p
        .candidates()
        .filter(|&c| {
            let name = p.name(c).to_lowercase();
            name.split(|ch: char| !ch.is_alphanumeric() && ch != '-').any(|w| w == needle)
        })
        .collect();
    (hits.len() == 1).then(|| hits[0])
}

fn has_roster(p: &Profile, names: &[&str]) -> bool {
    p.num_candidates() == names.len() && names.iter().all(|n| find(p, n).is_some())
}

/// Path to the election whose roster is exactly `names`: the explicit file
/// variable if set, otherwise a scan of the corpus.
pub fn locate(file_var: &str, names: &[&str]) -> Option<PathBuf> {
    if let Some(path) = std::env::var_os(file_var) {
        return Some(PathBuf::from(path));
    }
    let root = PathBuf::from(std::env::var_os(CORPUS_VAR)?);
    collect_blt_files(&root).ok()?.into_iter().find(|f| read_blt_file(f).is_ok_and(|p| has_roster(&p, names)))
}

pub fn corpus_files() -> Option<Vec<PathBuf>> {
    let root = PathBuf::from(std::env::var_os(CORPUS_VAR)?);
    collect_blt_files(&root).ok().filter(|v| !v.is_empty())
}

fn check_count(p: &Profile, quota: u64, table: Table, expect_winners: &[&str]) -> Result<(), String> {
    let (outcome, trace) = stv(p, TiePolicy::Error).map_err(|e| e.to_string())?;
    if trace.quota.to_f64() != quota as f64 {
        return Err(format!("quota {} != {quota}", trace.quota));
    }
    let cols = table.iter().map(|(_, r)| r.len()).max().unwrap_or(0);
    if trace.rounds.len() != cols {
        return Err(format!("{} rounds, expected {cols}", trace.rounds.len()));
    }
    for &(name, row) in table {
        let c = find(p, name).ok_or_else(|| format!("no candidate {name}"))?;
        for (r, &want) in row.iter().enumerate() {
            let got = trace.total(r, c).ok_or_else(|| format!("{name} missing in round {}", r + 1))?;
            let ok = if r == 0 { got.to_f64() == want } else { (got.to_f64() - want).abs() <= 0.05 };
            if !ok {
                return Err(format!("{name} round {}: {got} vs {want}", r + 1));
            }
        }
    }
    let mut got: Vec<CandidateId> = outcome.unique().map(|c| c.members().to_vec()).unwrap_or_default();
    got.sort();
    let mut want: Vec<CandidateId> = expect_winners.iter().filter_map(|n| find(p, n)).collect();
    want.sort();
    if got != want {
        return Err(format!("winners {}", outcome.display_names(p)));
    }
    Ok(())
}

/// The full Ward 5 check: original count, the two removal counts, and the
/// spoiler summary.
pub fn check_edinburgh(path: &Path) -> Result<(), String> {
    let p = read_blt_file(path)?;
    if !has_roster(&p, &EDINBURGH_NAMES) || p.seats() != 4 {
        return Err(format!("{} is not the Ward 5 roster", path.display()));
    }
    check_count(&p, 2684, EDINBURGH_ACTUAL, &["Bandel", "Mitchell", "Nicolson", "Osler"])?;
    let without = |name: &str| p.remove_candidate(find(&p, name).unwrap()).map_err(|e| e.to_string());
    let q = without("Herring")?;
    check_count(&q, 2677, EDINBURGH_NO_HERRING, &["Wood", "Mitchell", "Nicolson", "Osler"])?;
    let q = without("Wood")?;
    check_count(&q, 2681, EDINBURGH_NO_WOOD, &["Munro-Brian", "Mitchell", "Nicolson", "Osler"])?;

    let report = analyze_spoilers(&p, Method::Stv, TiePolicy::Error).map_err(|e| e.to_string())?;
    let s = stability_summary(&report);
    if (s.num_spoilers, s.num_alt_sets, s.max_changed) != (6, 2, 1) {
        return Err(format!("stability {s:?}"));
    }
    Ok(())
}

/// Mid-Formartine: first-place and top-4 counts, weak candidates, and the
/// absence of size-4/5 Condorcet committees.
pub fn check_formartine(path: &Path) -> Result<(), String> {
    let p = read_blt_file(path)?;
    if !has_roster(&p, &FORMARTINE_NAMES) || p.seats() != 4 {
        return Err(format!("{} is not the Mid-Formartine roster", path.display()));
    }
    let first = [752, 728, 916, 971, 803, 876];
    let top4 = [2837, 2147, 2790, 2238, 2170, 2246];
    let (fp, tk) = (p.first_place_counts(), p.top_k_counts(4));
    for (i, name) in FORMARTINE_NAMES.iter().enumerate() {
        let c = find(&p, name).unwrap();
        if (fp.get(c), tk.get(c)) != (first[i], top4[i]) {
            return Err(format!("{name}: {} first, {} top-4", fp.get(c), tk.get(c)));
        }
    }
    let hutchison = find(&p, "Hutchison").unwrap();
    let flags = weakness_flags(&p);
    if flags.plurality_loser != [hutchison] || flags.top_k_loser != [hutchison] {
        return Err("Hutchison is not the unique weak candidate".into());
    }
    for size in [4, 5] {
        if mwspoil_core::methods::condorcet_committee(&p, size).is_some() {
            return Err(format!("unexpected Condorcet committee of size {size}"));
        }
    }
    // Both rules must at least run cleanly on this close election.
    mcc(&p, TiePolicy::Error).map_err(|e| e.to_string())?;
    top_k_irv(&p, TiePolicy::Error).map_err(|e| e.to_string())?;
    Ok(())
}
