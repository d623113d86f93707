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

//! Multiwinner ranked-choice rules, spoiler audits and the simulation
//! harness around them.

pub mod extend;
pub mod harness;
pub mod io;
pub mod methods;
pub mod profile;
pub mod simgen;
pub mod spoiler;
pub mod subelections;
