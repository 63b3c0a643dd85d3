//! Finite-scale models of measured groupoids, their quotients by normal subgroupoids, treeings
//! and the lazy treed groupoid attached to descent data of an HNN extension.

pub mod commands;
pub mod fixtures;
pub mod graph;
pub mod group;
pub mod groupoid;
pub mod hnn_model;
pub mod instance;
pub mod quotient;
pub mod random;
pub mod rational;
pub mod report;
pub mod splitting;
pub mod treeing;

pub use groupoid::{ArrowId, FiniteGroupoid, MeasureMode, UnitId};
pub use rational::Rational;
