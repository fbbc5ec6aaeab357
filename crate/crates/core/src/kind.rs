use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::Error;

/// Which of the three graph operators: `A`, `L = D − A` or `Q = D + A`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Kind {
    #[serde(rename = "A")]
    Adjacency,
    #[serde(rename = "L")]
    Laplacian,
    #[serde(rename = "Q")]
    Signless,
}

impl Kind {
    pub const ALL: [Kind; 3] = [Kind::Adjacency, Kind::Laplacian, Kind::Signless];

    /// Coefficient of the degree part.
    pub fn degree_coefficient(self) -> i64 {
        match self {
            Kind::Adjacency => 0,
            Kind::Laplacian | Kind::Signless => 1,
        }
    }

    /// Sign in front of the adjacency part.
    pub fn adjacency_sign(self) -> i64 {
        match self {
            Kind::Laplacian => -1,
            Kind::Adjacency | Kind::Signless => 1,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Kind::Adjacency => "A",
            Kind::Laplacian => "L",
            Kind::Signless => "Q",
        }
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

impl FromStr for Kind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "A" | "a" => Ok(Kind::Adjacency),
            "L" | "l" => Ok(Kind::Laplacian),
            "Q" | "q" => Ok(Kind::Signless),
            other => Err(Error::Parse(format!("unknown kind {other:?}, expected A, L or Q"))),
        }
    }
}
