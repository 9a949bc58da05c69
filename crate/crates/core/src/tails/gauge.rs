use crate::error::{Error, Result};
use crate::index::StableIndex;
use std::f64::consts::E;
use std::fmt;
use std::str::FromStr;

/// The normalising functions for extremal ball masses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GaugeKind {
    /// `r^{γ/(γ-1)} / (log log 1/r)^{1/(γ-1)}` on `(0, e^{-1})`.
    GGamma,
    /// `r^{γ/(γ-1)} / (log 1/r)^{1/(γ-1)}` on `(0, 1)`.
    FGamma,
    /// `r² log log 1/r` on `(0, e^{-1})`.
    GBrownian,
    /// `r² log 1/r` on `(0, e^{-1}]`.
    FBrownian,
}

impl GaugeKind {
    pub const ALL: [GaugeKind; 4] = [Self::GGamma, Self::FGamma, Self::GBrownian, Self::FBrownian];

    pub fn as_str(self) -> &'static str {
        match self {
            Self::GGamma => "g_gamma",
            Self::FGamma => "f_gamma",
            Self::GBrownian => "g_brownian",
            Self::FBrownian => "f_brownian",
        }
    }
}

impl fmt::Display for GaugeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for GaugeKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL.into_iter().find(|k| k.as_str() == s).ok_or_else(|| {
            Error::Parse(format!(
                "unknown gauge kind '{s}' (expected g_gamma, f_gamma, g_brownian or f_brownian)"
            ))
        })
    }
}

pub fn gauge_eval(kind: GaugeKind, idx: StableIndex, r: f64) -> Result<f64> {
    let inside = match kind {
        GaugeKind::GGamma | GaugeKind::GBrownian => r > 0.0 && r < 1.0 / E,
        GaugeKind::FGamma => r > 0.0 && r < 1.0,
        GaugeKind::FBrownian => r > 0.0 && r <= 1.0 / E,
    };
    if !inside {
        return Err(Error::domain(
            "gauge_eval",
            format!("r={r} outside the domain of {kind}"),
        ));
    }
    let l = -r.ln();
    Ok(match kind {
        GaugeKind::GGamma => r.powf(idx.alpha_mass()) / l.ln().powf(idx.alpha_inv()),
        GaugeKind::FGamma => r.powf(idx.alpha_mass()) / l.powf(idx.alpha_inv()),
        GaugeKind::GBrownian => r * r * l.ln(),
        GaugeKind::FBrownian => r * r * l,
    })
}
