use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

/// Permutation statistic under study.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Statistic {
    /// Number of descents `D_n`, normalized by `n`.
    Descents,
    /// Major index `M_n`, normalized by `n²`.
    #[serde(rename = "major")]
    MajorIndex,
}

impl Statistic {
    /// Open interval of normalized levels `x` above the mean for which the
    /// sharp tail expansion holds.
    pub fn admissible(self) -> (f64, f64) {
        match self {
            Statistic::Descents => (0.5, 1.0),
            Statistic::MajorIndex => (0.25, 0.5),
        }
    }

    /// Largest value of the statistic on `S_n`.
    pub fn support_max(self, n: usize) -> usize {
        match self {
            Statistic::Descents => n.saturating_sub(1),
            Statistic::MajorIndex => n * n.saturating_sub(1) / 2,
        }
    }

    /// Scale turning a normalized level into a raw threshold (`n` or `n²`).
    pub fn scale(self, n: usize) -> f64 {
        match self {
            Statistic::Descents => n as f64,
            Statistic::MajorIndex => (n * n) as f64,
        }
    }

    pub fn tag(self) -> u8 {
        match self {
            Statistic::Descents => 0,
            Statistic::MajorIndex => 1,
        }
    }

    pub fn from_tag(tag: u8) -> Option<Self> {
        match tag {
            0 => Some(Statistic::Descents),
            1 => Some(Statistic::MajorIndex),
            _ => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Statistic::Descents => "descents",
            Statistic::MajorIndex => "major",
        }
    }
}

impl fmt::Display for Statistic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Statistic {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "descents" | "descent" | "d" => Ok(Statistic::Descents),
            "major" | "major-index" | "maj" | "m" => Ok(Statistic::MajorIndex),
            other => Err(format!(
                "unknown statistic `{other}` (expected descents or major)"
            )),
        }
    }
}
