use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TraceKind {
    PhaseStart,
    Expansion,
    LayerBuilt,
    Collapse,
    PhaseDone,
    Signature,
}

/// One step of a solver run. Sizes refer to the state after the step.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceEvent {
    pub kind: TraceKind,
    pub phase: usize,
    pub iteration: u64,
    /// `|S|`
    pub basis: usize,
    /// `|M|`
    pub matching: usize,
    /// `|C|`
    pub discovered: usize,
    /// current number of layers `ℓ`
    pub layers: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub exposed: Option<u32>,
    /// `|H|` of an expansion
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hyper: Option<usize>,
    /// `|B_{ℓ+1}|` of a new layer
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub blocking_new: Option<usize>,
    /// collapsed layer `ℓ̃`
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub target_layer: Option<usize>,
    /// `|B_{≤ℓ̃}|` before and after a collapse
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub blocking_before: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub blocking_after: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub signature: Option<Vec<i64>>,
}

impl TraceEvent {
    pub(crate) fn new(kind: TraceKind) -> Self {
        Self {
            kind,
            phase: 0,
            iteration: 0,
            basis: 0,
            matching: 0,
            discovered: 0,
            layers: 0,
            exposed: None,
            hyper: None,
            blocking_new: None,
            target_layer: None,
            blocking_before: None,
            blocking_after: None,
            signature: None,
        }
    }
}

/// Receives trace events in causal order.
pub trait TraceSink {
    fn record(&mut self, event: TraceEvent);
}

impl TraceSink for Vec<TraceEvent> {
    fn record(&mut self, event: TraceEvent) {
        self.push(event);
    }
}
