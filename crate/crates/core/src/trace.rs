//! Machine-readable reduction trace.
//!
//! When enabled, every rule application is recorded with its trigger and the
//! clique it produced (if any), in application order. Replaying the events
//! against a fresh state must reproduce the same covered set; a test does
//! exactly that.

use crate::graph::Vertex;
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TraceRule {
    /// ECC rule 1: removal of a vertex whose incident edges are all covered.
    EccCoveredVertex,
    /// ECC rule 2: edge contained in exactly one maximal clique.
    EccUniqueMaxClique,
    /// ECC rule 5: uncovered-edge neighborhood forms a clique.
    EccEdgeSimplicial,
    /// Clique applied directly by the caller (warm start, replay).
    External,
    VccSimplicial,
    VccCrown,
    VccFold,
}

#[derive(Debug, Clone, Serialize)]
pub struct TraceEvent {
    pub step: u64,
    pub rule: TraceRule,
    /// Vertex that triggered the rule, for vertex-triggered rules.
    pub trigger_vertex: Option<Vertex>,
    /// Edge that triggered the rule, for edge-triggered rules.
    pub trigger_edge: Option<(Vertex, Vertex)>,
    /// Clique forced or taken by the rule. Empty for plain removals.
    pub clique: Vec<Vertex>,
}
