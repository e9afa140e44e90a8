//! Deterministic text output: floats at 15 significant digits in lowercase
//! scientific notation, and a JSON serializer that uses it.

use std::io;

use serde::Serialize;
use serde_json::ser::{Formatter, PrettyFormatter};

/// `1.00000000000000e0`, `-2.50000000000000e-3`. Negative zero prints as zero.
pub fn sci(v: f64) -> String {
    let v = if v == 0.0 { 0.0 } else { v };
    format!("{v:.14e}")
}

/// Pretty JSON with every float written by [`sci`].
pub fn to_json<T: Serialize + ?Sized>(value: &T) -> crate::Result<String> {
    let mut out = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut out, SciFormatter::default());
    value.serialize(&mut ser)?;
    out.push(b'\n');
    Ok(String::from_utf8(out).expect("serde_json emits UTF-8"))
}

#[derive(Default)]
struct SciFormatter<'a> {
    inner: PrettyFormatter<'a>,
}

impl Formatter for SciFormatter<'_> {
    fn write_f64<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        if value.is_finite() {
            writer.write_all(sci(value).as_bytes())
        } else {
            writer.write_all(b"null")
        }
    }

    fn write_f32<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f32) -> io::Result<()> {
        self.write_f64(writer, value as f64)
    }

    fn begin_array<W: ?Sized + io::Write>(&mut self, writer: &mut W) -> io::Result<()> {
        self.inner.begin_array(writer)
    }

    fn end_array<W: ?Sized + io::Write>(&mut self, writer: &mut W) -> io::Result<()> {
        self.inner.end_array(writer)
    }

    fn begin_array_value<W: ?Sized + io::Write>(&mut self, writer: &mut W, first: bool) -> io::Result<()> {
        self.inner.begin_array_value(writer, first)
    }

    fn end_array_value<W: ?Sized + io::Write>(&mut self, writer: &mut W) -> io::Result<()> {
        self.inner.end_array_value(writer)
    }

    fn begin_object<W: ?Sized + io::Write>(&mut self, writer: &mut W) -> io::Result<()> {
        self.inner.begin_object(writer)
    }

    fn end_object<W: ?Sized + io::Write>(&mut self, writer: &mut W) -> io::Result<()> {
        self.inner.end_object(writer)
    }

    fn begin_object_key<W: ?Sized + io::Write>(&mut self, writer: &mut W, first: bool) -> io::Result<()> {
        self.inner.begin_object_key(writer, first)
    }

    fn begin_object_value<W: ?Sized + io::Write>(&mut self, writer: &mut W) -> io::Result<()> {
        self.inner.begin_object_value(writer)
    }

    fn end_object_value<W: ?Sized + io::Write>(&mut self, writer: &mut W) -> io::Result<()> {
        self.inner.end_object_value(writer)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fifteen_significant_digits() {
        assert_eq!(sci(1.0), "1.00000000000000e0");
        assert_eq!(sci(-0.0025), "-2.50000000000000e-3");
        assert_eq!(sci(-0.0), "0.00000000000000e0");
        assert_eq!(sci(std::f64::consts::PI), "3.14159265358979e0");
    }

    #[test]
    fn json_uses_sci_floats_and_parses_back() {
        #[derive(Serialize)]
        struct Row {
            e: f64,
            n: u32,
            v: Vec<f64>,
        }
        let text = to_json(&Row { e: 0.5, n: 3, v: vec![1e-20, 2.0] }).unwrap();
        assert!(text.contains("\"e\": 5.00000000000000e-1"));
        assert!(text.contains("\"n\": 3"));
        let back: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert!((back["v"][0].as_f64().unwrap() / 1e-20 - 1.0).abs() < 1e-14);
    }
}
