//! Indicator codebooks: network indices `N1`–`N11` and economic indicators `E1`–`E8`.

use core::fmt;
use core::str::FromStr;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown indicator code {code:?}; valid codes are {valid}")]
pub struct UnknownIndicator {
    pub code: alloc::string::String,
    pub valid: &'static str,
}

macro_rules! codebook {
    (
        $(#[$meta:meta])*
        $name:ident, $valid:literal {
            $($variant:ident => ($code:literal, $label:literal)),+ $(,)?
        }
    ) => {
        $(#[$meta])*
        #[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
        #[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
        pub enum $name {
            $($variant),+
        }

        impl $name {
            /// All codes in table order.
            pub const ALL: &'static [$name] = &[$($name::$variant),+];

            pub fn code(self) -> &'static str {
                match self {
                    $($name::$variant => $code),+
                }
            }

            pub fn description(self) -> &'static str {
                match self {
                    $($name::$variant => $label),+
                }
            }

            /// Zero-based position in table order.
            pub fn position(self) -> usize {
                self as usize
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(self.code())
            }
        }

        impl FromStr for $name {
            type Err = UnknownIndicator;

            fn from_str(s: &str) -> Result<Self, Self::Err> {
                let s = s.trim();
                $name::ALL
                    .iter()
                    .copied()
                    .find(|c| c.code().eq_ignore_ascii_case(s))
                    .ok_or_else(|| UnknownIndicator {
                        code: alloc::string::String::from(s),
                        valid: $valid,
                    })
            }
        }
    };
}

codebook! {
    /// Network indices computed per node and year.
    NetworkIndicator, "N1..N11" {
        N1 => ("N1", "In-Degree"),
        N2 => ("N2", "Out-Degree"),
        N3 => ("N3", "Degree"),
        N4 => ("N4", "Weighted Degree"),
        N5 => ("N5", "Weighted In-Degree"),
        N6 => ("N6", "Weighted Out-Degree"),
        N7 => ("N7", "Eccentricity"),
        N8 => ("N8", "Closeness Centrality"),
        N9 => ("N9", "Betweenness Centrality"),
        N10 => ("N10", "Clustering Coefficient"),
        N11 => ("N11", "Strength"),
    }
}

codebook! {
    /// Economic indicators supplied per country and year.
    EconIndicator, "E1, E2, E3, E4, E5, E6, E7, E8" {
        E1 => ("E1", "Gross domestic product, current prices"),
        E2 => ("E2", "Gross domestic product, deflator"),
        E3 => ("E3", "Gross domestic product per capita, current prices"),
        E4 => ("E4", "Gross domestic product based on purchasing-power-parity (PPP) share of world total"),
        E5 => ("E5", "Inflation, average consumer prices"),
        E6 => ("E6", "General government revenue"),
        E7 => ("E7", "General government gross debt"),
        E8 => ("E8", "Current account balance"),
    }
}

/// Either kind of indicator code.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum IndicatorCode {
    Network(NetworkIndicator),
    Economic(EconIndicator),
}

impl fmt::Display for IndicatorCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IndicatorCode::Network(n) => n.fmt(f),
            IndicatorCode::Economic(e) => e.fmt(f),
        }
    }
}

impl FromStr for IndicatorCode {
    type Err = UnknownIndicator;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.parse::<NetworkIndicator>()
            .map(IndicatorCode::Network)
            .or_else(|_| s.parse::<EconIndicator>().map(IndicatorCode::Economic))
            .map_err(|_| UnknownIndicator {
                code: alloc::string::String::from(s.trim()),
                valid: "N1..N11, E1..E8",
            })
    }
}
