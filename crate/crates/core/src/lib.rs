//! Pattern avoidance in multiset permutations and integer compositions.

pub mod bijections;
pub mod classify;
pub mod containment;
pub mod enumerate;
pub mod error;
pub mod ferrers;
pub mod golden;
pub mod matrix;
pub mod pattern;
pub mod shape;
pub mod succession;
pub mod word;

pub use containment::{avoids, contains, IncrementalChecker};
pub use enumerate::{
    composition_series, count_compositions, count_multiset, enumerate_multiset, fingerprint, CompositionSeries,
    Count, Fingerprint,
};
pub use error::{Error, Result};
pub use matrix::{word_to_matrix, BinaryMatrix};
pub use pattern::{set, Pattern, PatternSet};
pub use shape::MultisetShape;
pub use word::{Letter, Word};
