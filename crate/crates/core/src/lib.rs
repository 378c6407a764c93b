//! Exact solver and verification toolkit for circular flows in signed
//! multigraphs: flow and tension indices, orientation certificates, planar
//! duality, folding, and homomorphisms to negative cycles. All decision
//! arithmetic is exact rational.

pub mod error;
pub mod graph;
pub mod solver;
pub mod flow;
pub mod maxflow;
pub mod orient;

pub use error::{Error, Result};
pub use flow::{
    boundary, find_tight_cut, hoffman_feasible, hoffman_feasible_by_cuts, modulo_to_integer,
    negate_edge, nonnegative_form, tight_cut_index, verify_flow, vertex_boundary, FlowAssignment,
    FlowCheck, FlowKind, NegativePartition, TightCutReport,
};
pub use graph::{
    negative_subdivision, Cut, CutBound, CutTypeProfile, Edge, Orientation, Sign, SignedGraph,
};
pub use solver::{
    circular_chromatic_number, circular_flow_index, decide_circular_mod_r_flow,
    decide_circular_r_flow, decide_mod_pq_flow, decide_pq_flow, even_lift, flow_candidates,
    oracle_pq_flow, verify_tension_potentials, ChromaticResult, IndexResult, IndexValue,
    SearchBudget, SearchOutcome,
};
pub use orient::{
    convert_eulerian_certificate, find_eulerian_certificate, find_mod_orientation,
    orientation_to_partition, verify_eulerian_certificate, verify_mod_orientation,
    verify_partition_certificate, EulerianCertificate, EulerianForm, EulerianPayload,
    ModOrientationCertificate, PartitionCertificate,
};
