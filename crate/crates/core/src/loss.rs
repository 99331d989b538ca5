//! Margin-based loss functions.

use serde::{Deserialize, Serialize};

/// The two margin losses used throughout: hinge and logistic.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MarginLossKind {
    /// `max(0, 1 - z)`
    Hinge,
    /// `ln(1 + exp(-z))`, evaluated with overflow-safe branching.
    Logistic,
}

impl MarginLossKind {
    pub fn value(self, z: f64) -> f64 {
        match self {
            MarginLossKind::Hinge => (1.0 - z).max(0.0),
            MarginLossKind::Logistic => {
                if z >= 0.0 {
                    (-z).exp().ln_1p()
                } else {
                    -z + z.exp().ln_1p()
                }
            }
        }
    }

    /// d/dz of the loss. For hinge this is the subgradient that is -1 on the
    /// active side (z < 1) and 0 at and beyond the margin.
    pub fn dvalue_dz(self, z: f64) -> f64 {
        match self {
            MarginLossKind::Hinge => {
                if z < 1.0 {
                    -1.0
                } else {
                    0.0
                }
            }
            // -sigma(-z), computed without overflow for large |z|.
            MarginLossKind::Logistic => {
                if z >= 0.0 {
                    let e = (-z).exp();
                    -e / (1.0 + e)
                } else {
                    -1.0 / (1.0 + z.exp())
                }
            }
        }
    }

    pub fn cli_name(self) -> &'static str {
        match self {
            MarginLossKind::Hinge => "hinge",
            MarginLossKind::Logistic => "logistic",
        }
    }

    pub fn from_cli_name(name: &str) -> Option<Self> {
        match name {
            "hinge" => Some(MarginLossKind::Hinge),
            "logistic" => Some(MarginLossKind::Logistic),
            _ => None,
        }
    }
}

/// Evaluate the margin loss at margin `z`.
pub fn margin_loss(kind: MarginLossKind, z: f64) -> f64 {
    kind.value(z)
}
