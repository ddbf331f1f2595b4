//! Head-movement sensing and inference pipeline.
//!
//! The crate covers the full path from an emulated earable's byte stream to
//! trait/emotion predictions and report rendering:
//!
//! * [`wire`] — 20-byte binary packet format, stream reframing, raw-to-physical
//!   unit conversion.
//! * [`session`] — timestamped sample sessions, experiment timelines, emotion
//!   labeling by timestamp merge, JSONL persistence.
//! * [`features`] — per-segment magnitude moments (the 4-feature vector).
//! * [`learn`] — native classifier pool, stratified k-fold cross-validation,
//!   best-success-rate selection, weighted classification metrics.
//! * [`matrix`] — the 7-trait x 5-emotion model grid plus the emotion model,
//!   best-accuracy aggregation and report rendering.
//! * [`synth`] — seeded synthetic cohort generator with plantable effect sizes.

pub mod features;
pub mod learn;
pub mod matrix;
pub mod session;
pub mod synth;
pub mod wire;

pub use features::{FeatureVector, StdMode};
pub use learn::{ClassifierSpec, ConfusionMatrix, Dataset, Fraction, MetricsReport, Model, SelectionResult};
pub use matrix::{CohortFeatures, ModelMatrix, ParticipantRecord, TraitId, TraitValue};
pub use session::{EmotionState, ImuSample, LabeledSession, Session, Timeline, Vec3};
pub use synth::SynthConfig;
pub use wire::{RawImuPacket, ScaleConfig};
