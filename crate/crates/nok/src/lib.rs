//! IO companion to `nok-core`: JSON interchange formats, the OFF exporter,
//! and plain-text report rendering. The `nok` binary dispatches onto these.

pub mod json;
pub mod off;
pub mod text;
