//! JSON emission with full-precision floats.
//!
//! Every floating-point value is printed with 17 significant digits
//! (`{:.16e}`), enough for a lossless `f64` round trip, so identical jobs
//! produce byte-identical reports.

use std::io;

use serde::Serialize;
use serde_json::ser::{CompactFormatter, Formatter};

struct SciFloatFormatter;

impl Formatter for SciFloatFormatter {
    fn write_f64<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        write!(writer, "{value:.16e}")
    }

    fn write_f32<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f32) -> io::Result<()> {
        CompactFormatter.write_f32(writer, value)
    }
}

/// Serialises to a single JSON line with 17-significant-digit floats and a
/// trailing newline.
pub fn to_json_line<T: Serialize>(value: &T) -> serde_json::Result<String> {
    let mut out = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut out, SciFloatFormatter);
    value.serialize(&mut ser)?;
    let mut s = String::from_utf8(out).expect("serde_json emits UTF-8");
    s.push('\n');
    Ok(s)
}
