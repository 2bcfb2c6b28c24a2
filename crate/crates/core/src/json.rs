//! JSON output with every float written to 17 significant digits.

use std::io;

use serde::Serialize;
use serde_json::ser::{CompactFormatter, Formatter, PrettyFormatter};

use crate::error::{Error, Result};

/// Wraps a serde_json formatter and writes `f64` as `d.dddddddddddddddde±x`.
struct Digits17<F>(F);

macro_rules! delegate {
    ($($name:ident($($arg:ident: $ty:ty),*);)*) => {
        $(
            fn $name<W: ?Sized + io::Write>(&mut self, writer: &mut W $(, $arg: $ty)*) -> io::Result<()> {
                self.0.$name(writer $(, $arg)*)
            }
        )*
    };
}

impl<F: Formatter> Formatter for Digits17<F> {
    fn write_f64<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        write!(writer, "{value:.16e}")
    }

    delegate! {
        begin_array();
        end_array();
        begin_array_value(first: bool);
        end_array_value();
        begin_object();
        end_object();
        begin_object_key(first: bool);
        end_object_key();
        begin_object_value();
        end_object_value();
    }
}

fn write_with<F: Formatter, T: Serialize + ?Sized>(value: &T, formatter: F) -> Result<String> {
    let mut out = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut out, Digits17(formatter));
    value.serialize(&mut ser)?;
    String::from_utf8(out).map_err(|e| Error::Internal(e.to_string()))
}

/// Indented JSON; non-finite floats become `null`.
pub fn to_string_pretty<T: Serialize + ?Sized>(value: &T) -> Result<String> {
    write_with(value, PrettyFormatter::with_indent(b"  "))
}

/// Single-line JSON; non-finite floats become `null`.
pub fn to_string_compact<T: Serialize + ?Sized>(value: &T) -> Result<String> {
    write_with(value, CompactFormatter)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn floats_have_17_significant_digits() {
        let s = to_string_compact(&[3f64.sqrt(), 1.0, -0.1, f64::NAN]).unwrap();
        assert_eq!(
            s,
            "[1.7320508075688772e0,1.0000000000000000e0,-1.0000000000000001e-1,null]"
        );
        let back: Vec<Option<f64>> = serde_json::from_str(&s).unwrap();
        assert_eq!(back[0], Some(3f64.sqrt()));
        assert_eq!(back[2], Some(-0.1));
    }

    #[test]
    fn pretty_output_is_indented() {
        let s = to_string_pretty(&serde_json::json!({"a": [1, 2.5]})).unwrap();
        assert_eq!(s, "{\n  \"a\": [\n    1,\n    2.5000000000000000e0\n  ]\n}");
    }
}
