use serde::Serialize;

/// Which candidate state achieved the reported energy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Winner {
    Product,
    Matching,
    Entangled,
}

#[derive(Debug, Clone, Serialize)]
pub struct EnergyBreakdown {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub product: Option<f64>,
    pub matching: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub entangled: Option<f64>,
}

/// Per-edge diagnostics of a rounding run.
#[derive(Debug, Clone, Serialize)]
pub struct EdgeDiag {
    pub h: f64,
    pub h_plus: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub theta: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gamma_prime: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub matched: Option<bool>,
    /// Set when the phase-steering matrix element vanished and the
    /// `arg(0) = 0` convention was applied.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub phase_degenerate: Option<bool>,
}

/// Result of one rounding run: the winning state's exact energy with
/// per-edge diagnostics and the per-candidate energies.
#[derive(Debug, Clone, Serialize)]
pub struct RoundedOutcome {
    pub winner: Winner,
    pub energy: f64,
    pub energies: EnergyBreakdown,
    pub edges: Vec<EdgeDiag>,
    /// Bloch vectors of the rounded product state, when one was drawn.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub blochs: Option<Vec<[f64; 3]>>,
}
