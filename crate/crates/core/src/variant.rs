//! Variant nomenclature: base vector / number of difference pairs / crossover.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::Error;

/// Differential mutation strategy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Mutation {
    Rand1,
    Best1,
    Rand2,
    Best2,
    CurrentToRand1,
    CurrentToBest1,
    RandToBest1,
}

impl Mutation {
    pub const ALL: [Mutation; 7] = [
        Mutation::Rand1,
        Mutation::Best1,
        Mutation::Rand2,
        Mutation::Best2,
        Mutation::CurrentToRand1,
        Mutation::CurrentToBest1,
        Mutation::RandToBest1,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Mutation::Rand1 => "rand/1",
            Mutation::Best1 => "best/1",
            Mutation::Rand2 => "rand/2",
            Mutation::Best2 => "best/2",
            Mutation::CurrentToRand1 => "current-to-rand/1",
            Mutation::CurrentToBest1 => "current-to-best/1",
            Mutation::RandToBest1 => "rand-to-best/1",
        }
    }

    /// Number of random population members the strategy draws, all distinct
    /// from each other and from the target.
    pub fn random_members(self) -> usize {
        match self {
            Mutation::Rand1 => 3,
            Mutation::Best1 => 2,
            Mutation::Rand2 => 5,
            Mutation::Best2 => 4,
            Mutation::CurrentToRand1 => 3,
            Mutation::CurrentToBest1 => 2,
            Mutation::RandToBest1 => 3,
        }
    }

    pub fn uses_best(self) -> bool {
        matches!(
            self,
            Mutation::Best1 | Mutation::Best2 | Mutation::CurrentToBest1 | Mutation::RandToBest1
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Crossover {
    Binomial,
    Exponential,
}

impl Crossover {
    pub const ALL: [Crossover; 2] = [Crossover::Binomial, Crossover::Exponential];

    pub fn suffix(self) -> &'static str {
        match self {
            Crossover::Binomial => "bin",
            Crossover::Exponential => "exp",
        }
    }
}

/// One of the fourteen mutation × crossover combinations.
///
/// Renders and parses as the usual DE nomenclature, e.g. `rand/1/bin` or
/// `current-to-best/1/exp`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VariantSpec {
    pub mutation: Mutation,
    pub crossover: Crossover,
}

impl VariantSpec {
    pub const fn new(mutation: Mutation, crossover: Crossover) -> Self {
        Self {
            mutation,
            crossover,
        }
    }

    /// All fourteen variants, ordered as rand/1/bin, rand/1/exp, best/1/bin, ...
    pub fn all() -> Vec<VariantSpec> {
        Mutation::ALL
            .iter()
            .flat_map(|&m| Crossover::ALL.iter().map(move |&c| VariantSpec::new(m, c)))
            .collect()
    }

    pub fn name(&self) -> String {
        self.to_string()
    }

    /// Smallest population that leaves enough members besides the target.
    pub fn min_population(&self) -> usize {
        self.mutation.random_members() + 1
    }
}

impl fmt::Display for VariantSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.mutation.name(), self.crossover.suffix())
    }
}

impl FromStr for VariantSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        VariantSpec::all()
            .into_iter()
            .find(|v| v.to_string().eq_ignore_ascii_case(s))
            .ok_or_else(|| {
                let names: Vec<String> = VariantSpec::all().iter().map(|v| v.to_string()).collect();
                Error::config(format!(
                    "unknown variant `{s}`; valid variants are: {}",
                    names.join(", ")
                ))
            })
    }
}

impl Serialize for VariantSpec {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for VariantSpec {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
