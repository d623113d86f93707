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

//! Exact decimal arithmetic for transferable-vote counts.

use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Sub, SubAssign};

/// Vote value in units of 10⁻⁵. Sums are exact; scaling truncates toward
/// zero at the fifth decimal.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FixedPoint5(u64);

impl FixedPoint5 {
    pub const SCALE: u64 = 100_000;
    pub const ZERO: FixedPoint5 = FixedPoint5(0);
    pub const ONE: FixedPoint5 = FixedPoint5(Self::SCALE);

    pub fn from_units(units: u64) -> Self {
        FixedPoint5(units)
    }

    pub fn from_integer(votes: u64) -> Self {
        FixedPoint5(votes * Self::SCALE)
    }

    pub fn units(self) -> u64 {
        self.0
    }

    /// `self * weight` for an integer ballot multiplicity.
    pub fn times(self, weight: u64) -> Self {
        FixedPoint5(self.0 * weight)
    }

    /// `self * num / den`, truncated.
    pub fn mul_div(self, num: FixedPoint5, den: FixedPoint5) -> Self {
        assert!(den.0 > 0, "division by a zero vote total");
        FixedPoint5((self.0 as u128 * num.0 as u128 / den.0 as u128) as u64)
    }

    pub fn is_integer(self) -> bool {
        self.0.is_multiple_of(Self::SCALE)
    }

    pub fn to_f64(self) -> f64 {
        self.0 as f64 / Self::SCALE as f64
    }

    /// Rounded (half up) to one decimal place, as count sheets print it.
    pub fn display_1dp(self) -> String {
        let tenths = (self.0 + Self::SCALE / 20) / (Self::SCALE / 10);
        format!("{}.{}", tenths / 10, tenths % 10)
    }
}

impl fmt::Display for FixedPoint5 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}.{:05}", self.0 / Self::SCALE, self.0 % Self::SCALE)
    }
}

impl Add for FixedPoint5 {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        FixedPoint5(self.0 + rhs.0)
    }
}

impl AddAssign for FixedPoint5 {
    fn add_assign(&mut self, rhs: Self) {
        self.0 += rhs.0;
    }
}

impl Sub for FixedPoint5 {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        FixedPoint5(self.0 - rhs.0)
    }
}

impl SubAssign for FixedPoint5 {
    fn sub_assign(&mut self, rhs: Self) {
        self.0 -= rhs.0;
    }
}

impl Sum for FixedPoint5 {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        FixedPoint5(iter.map(|x| x.0).sum())
    }
}
