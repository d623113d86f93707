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

//! File formats: `.blt` ballot files and CSV result tables.

mod blt;
mod results;

pub use blt::{emit_blt, parse_blt, parse_blt_document, read_blt_file, BltDocument, BltError, BltErrorKind};
pub use results::{emit_results_csv, Cell, ResultsTable};
