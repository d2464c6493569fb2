//! Channel zoo, JSON formats and incapacity reports behind the `incapax`
//! binary.

pub mod json;
pub mod report;
pub mod verify;
pub mod zoo;

pub use json::{channel_from_json, channel_to_json, superoperator_from_json, NamedChannel};
pub use report::{analyze, AnalyzeOptions, ChannelSource, ChannelSpec, Classification, IncapacityReport};
pub use zoo::zoo_build;

use crate::error::Error;

/// Exit status for input problems (bad files, unknown names, bad parameters).
pub const EXIT_INPUT: i32 = 2;
/// Exit status for numerical failures.
pub const EXIT_NUMERICAL: i32 = 3;

pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::NotPsd { .. } | Error::NotInvertible { .. } => EXIT_NUMERICAL,
        _ => EXIT_INPUT,
    }
}
