//! Result rows and their CSV / JSON-lines encodings.
//!
//! Floats are written with 10 significant digits in the style of C's `%g`,
//! independent of locale. Missing values are empty in CSV and `null` in JSON.

use std::io::{self, Write};

use clap::ValueEnum;
use serde::Deserialize;

pub const COLUMNS: [&str; 15] = [
    "n",
    "m",
    "l",
    "k",
    "c",
    "t",
    "estimator",
    "tv",
    "stderr",
    "clustered_freq",
    "theory_poisson",
    "theory_gaussian",
    "samples",
    "seed",
    "wall_time_ms",
];

const SIGNIFICANT: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Jsonl,
}

/// One emitted measurement.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct ResultRow {
    pub n: Option<usize>,
    pub m: Option<usize>,
    pub l: Option<usize>,
    pub k: Option<usize>,
    pub c: Option<f64>,
    pub t: Option<u64>,
    pub estimator: &'static str,
    pub tv: f64,
    pub stderr: Option<f64>,
    pub clustered_freq: Option<f64>,
    pub theory_poisson: Option<f64>,
    pub theory_gaussian: Option<f64>,
    pub samples: Option<u64>,
    pub seed: Option<u64>,
    pub wall_time_ms: u64,
}

/// A field value before encoding.
enum Field {
    Missing,
    Int(u64),
    Float(f64),
    Text(&'static str),
}

impl ResultRow {
    fn fields(&self) -> [Field; 15] {
        let int = |x: Option<usize>| x.map_or(Field::Missing, |v| Field::Int(v as u64));
        let big = |x: Option<u64>| x.map_or(Field::Missing, Field::Int);
        let float = |x: Option<f64>| x.map_or(Field::Missing, Field::Float);
        [
            int(self.n),
            int(self.m),
            int(self.l),
            int(self.k),
            float(self.c),
            big(self.t),
            Field::Text(self.estimator),
            Field::Float(self.tv),
            float(self.stderr),
            float(self.clustered_freq),
            float(self.theory_poisson),
            float(self.theory_gaussian),
            big(self.samples),
            big(self.seed),
            Field::Int(self.wall_time_ms),
        ]
    }
}

/// `%.10g`: the shorter of fixed and scientific notation, trailing zeros removed.
pub fn format_float(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return "0".into();
    }
    let sci = format!("{:.*e}", SIGNIFICANT - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("scientific format has an exponent");
    let exp: i32 = exp.parse().expect("exponent is an integer");
    if exp < -4 || exp >= SIGNIFICANT as i32 {
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{}e{sign}{:02}", trim_zeros(mantissa), exp.abs())
    } else {
        let decimals = (SIGNIFICANT as i32 - 1 - exp) as usize;
        trim_zeros(&format!("{x:.decimals$}")).to_string()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// Writes rows in one format, header first for CSV.
pub struct RowWriter<W: Write> {
    out: W,
    format: Format,
    started: bool,
}

impl<W: Write> RowWriter<W> {
    pub fn new(out: W, format: Format) -> Self {
        RowWriter { out, format, started: false }
    }

    pub fn write(&mut self, row: &ResultRow) -> io::Result<()> {
        match self.format {
            Format::Csv => {
                if !self.started {
                    writeln!(self.out, "{}", COLUMNS.join(","))?;
                }
                let cells: Vec<String> = row
                    .fields()
                    .into_iter()
                    .map(|f| match f {
                        Field::Missing => String::new(),
                        Field::Int(v) => v.to_string(),
                        Field::Float(v) => format_float(v),
                        Field::Text(s) => s.to_string(),
                    })
                    .collect();
                writeln!(self.out, "{}", cells.join(","))?;
            }
            Format::Jsonl => {
                let cells: Vec<String> = COLUMNS
                    .iter()
                    .zip(row.fields())
                    .map(|(name, f)| {
                        let value = match f {
                            Field::Missing => "null".to_string(),
                            Field::Int(v) => v.to_string(),
                            Field::Float(v) if v.is_finite() => format_float(v),
                            Field::Float(_) => "null".to_string(),
                            Field::Text(s) => format!("\"{s}\""),
                        };
                        format!("\"{name}\":{value}")
                    })
                    .collect();
                writeln!(self.out, "{{{}}}", cells.join(","))?;
            }
        }
        self.started = true;
        Ok(())
    }

    pub fn finish(mut self) -> io::Result<W> {
        if !self.started && self.format == Format::Csv {
            writeln!(self.out, "{}", COLUMNS.join(","))?;
        }
        self.out.flush()?;
        Ok(self.out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn g_style_formatting() {
        assert_eq!(format_float(0.0), "0");
        assert_eq!(format_float(-0.0), "0");
        assert_eq!(format_float(1.0), "1");
        assert_eq!(format_float(-2.5), "-2.5");
        assert_eq!(format_float(0.3829249225480261), "0.3829249225");
        assert_eq!(format_float(1.0 / 3.0), "0.3333333333");
        assert_eq!(format_float(123456.789), "123456.789");
        assert_eq!(format_float(1234567890.0), "1234567890");
        assert_eq!(format_float(12345678901.0), "1.23456789e+10");
        assert_eq!(format_float(0.0001), "0.0001");
        assert_eq!(format_float(0.00001234), "1.234e-05");
        assert_eq!(format_float(9.99999999999), "10");
        assert_eq!(format_float(-2.9000000000000004), "-2.9");
        assert_eq!(format_float(1e-300), "1e-300");
        assert_eq!(format_float(f64::NAN), "nan");
    }

    #[test]
    fn csv_and_json_rows() {
        let row = ResultRow {
            n: Some(8),
            m: Some(4),
            l: Some(2),
            k: Some(2),
            c: Some(-1.0),
            t: Some(4),
            estimator: "exact-enumeration",
            tv: 0.5,
            stderr: None,
            seed: Some(7),
            ..Default::default()
        };
        let mut w = RowWriter::new(Vec::new(), Format::Csv);
        w.write(&row).unwrap();
        let csv = String::from_utf8(w.finish().unwrap()).unwrap();
        assert_eq!(
            csv,
            "n,m,l,k,c,t,estimator,tv,stderr,clustered_freq,theory_poisson,theory_gaussian,samples,seed,wall_time_ms\n\
             8,4,2,2,-1,4,exact-enumeration,0.5,,,,,,7,0\n"
        );
        let mut w = RowWriter::new(Vec::new(), Format::Jsonl);
        w.write(&row).unwrap();
        let json = String::from_utf8(w.finish().unwrap()).unwrap();
        assert!(json.starts_with("{\"n\":8,\"m\":4,"));
        assert!(json.contains("\"stderr\":null"));
        assert!(json.ends_with("\"wall_time_ms\":0}\n"));
    }

    #[test]
    fn empty_csv_has_header() {
        let w = RowWriter::new(Vec::new(), Format::Csv);
        assert_eq!(String::from_utf8(w.finish().unwrap()).unwrap().lines().count(), 1);
    }
}
