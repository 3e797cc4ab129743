//! Exact constructions around arithmetic progressions in images of subsets of
//! the unit interval.
//!
//! Given a nowhere dense set, presented by refining interval covers, the crate
//! builds increasing piecewise-linear homeomorphisms of `[0,1]` whose images
//! of the set contain no 3-term arithmetic progressions above a step
//! threshold, and it emits certificates that can be replayed independently.
//! For sets of positive measure it produces long progressions in every image
//! instead. All arithmetic is exact over the rationals.
//!
//! Modules, bottom-up:
//!
//! * [`rat`], [`interval`]: rationals and canonical unions of closed intervals.
//! * [`plh`]: the piecewise-linear homeomorphism algebra.
//! * [`ap_search`]: exact AP queries and the brute-force grid oracle.
//! * [`apfree_points`]: AP-free anchor sets.
//! * [`nd_gen`]: nowhere dense cover generators.
//! * [`construct`], [`certificate`]: the destruction step, the scheduler and
//!   certificate replay.

pub mod ap_search;
pub mod apfree_points;
pub mod certificate;
pub mod construct;
pub mod error;
pub mod interval;
pub mod nd_gen;
pub mod plh;
pub mod rat;

pub use ap_search::{
    ap3_exists, ap_witness_long, brute_force_ap3, brute_force_ap3_with, has_ap3, min_defect, stability_radius,
    APWitness, DefectReport,
};
pub use apfree_points::{defect, pick_apfree, stanley_points, PointConfig};
pub use certificate::{
    verify_certificate, FapCertificate, Guarantee, LedgerEntry, StageCertificate, VerificationReport,
};
pub use construct::{
    build_fap, default_schedule, destroy_step, destroy_step_with, in_h_eps, rap_demo, DestroyOutcome, Limits,
    PartitionPlan,
};
pub use error::{Error, ErrorKind, Result};
pub use interval::{ClosedInterval, IntervalUnion};
pub use nd_gen::{GenSpec, NDGenerator};
pub use plh::PLHomeo;
pub use rat::{rat, Rat};
