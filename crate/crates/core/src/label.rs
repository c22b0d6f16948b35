use std::fmt;

use serde::{Deserialize, Serialize};

/// LISA cluster/outlier label.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Label {
    HighHigh,
    LowLow,
    HighLow,
    LowHigh,
    NotSignificant,
    Isolated,
}

impl Label {
    pub const ALL: [Label; 6] = [
        Label::HighHigh,
        Label::LowLow,
        Label::HighLow,
        Label::LowHigh,
        Label::NotSignificant,
        Label::Isolated,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Label::HighHigh => "high-high",
            Label::LowLow => "low-low",
            Label::HighLow => "high-low",
            Label::LowHigh => "low-high",
            Label::NotSignificant => "not-significant",
            Label::Isolated => "isolated",
        }
    }

    /// One of the four quadrant labels.
    pub fn is_significant(self) -> bool {
        matches!(
            self,
            Label::HighHigh | Label::LowLow | Label::HighLow | Label::LowHigh
        )
    }

    /// Fixed palette shared by every view (colorblind-safe, grey for
    /// isolated regions).
    pub fn color_key(self) -> &'static str {
        match self {
            Label::HighHigh => "#d7191c",
            Label::LowLow => "#2c7bb6",
            Label::HighLow => "#fdae61",
            Label::LowHigh => "#abd9e9",
            Label::NotSignificant => "#eeeeee",
            Label::Isolated => "#999999",
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Quadrant label for a significant result. Exact zeros in either the value
/// or the lag have no quadrant and are reported as not significant.
pub fn assign_label(z: f64, lag: f64, pseudo_p: f64, alpha: f64) -> Label {
    if pseudo_p > alpha || z == 0.0 || lag == 0.0 {
        return Label::NotSignificant;
    }
    match (z > 0.0, lag > 0.0) {
        (true, true) => Label::HighHigh,
        (false, false) => Label::LowLow,
        (true, false) => Label::HighLow,
        (false, true) => Label::LowHigh,
    }
}
