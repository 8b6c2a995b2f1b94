//! Output records and their text, JSON and CSV renderings.

use bernest_core::numfmt::{fmt_sig, round_sig};
use serde::{Deserialize, Serialize, Serializer};

/// Significant digits in machine-readable output.
pub const MACHINE_DIGITS: usize = 12;
/// Significant digits in human-readable output.
pub const TEXT_DIGITS: usize = 6;

fn sig12<S: Serializer>(x: &f64, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_f64(round_sig(*x, MACHINE_DIGITS))
}

fn sig12_opt<S: Serializer>(x: &Option<f64>, s: S) -> Result<S::Ok, S::Error> {
    match x {
        Some(v) => sig12(v, s),
        None => s.serialize_none(),
    }
}

/// One estimate. Field order is the serialization order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OutputRecord {
    pub method: String,
    pub n: u64,
    pub m: u64,
    #[serde(serialize_with = "sig12")]
    pub c: f64,
    #[serde(serialize_with = "sig12")]
    pub mean: f64,
    #[serde(serialize_with = "sig12")]
    pub lower: f64,
    #[serde(serialize_with = "sig12")]
    pub upper: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none", serialize_with = "sig12_opt")]
    pub sd: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none", serialize_with = "sig12_opt")]
    pub se: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none", serialize_with = "sig12_opt")]
    pub z: Option<f64>,
}

pub const CSV_HEADER: &str = "method,n,m,c,mean,lower,upper,k,sd,se,z";

impl OutputRecord {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("record serializes")
    }

    pub fn to_csv_row(&self) -> String {
        let opt = |v: Option<f64>| v.map(|x| fmt_sig(x, MACHINE_DIGITS)).unwrap_or_default();
        format!(
            "{},{},{},{},{},{},{},{},{},{},{}",
            self.method,
            self.n,
            self.m,
            fmt_sig(self.c, MACHINE_DIGITS),
            fmt_sig(self.mean, MACHINE_DIGITS),
            fmt_sig(self.lower, MACHINE_DIGITS),
            fmt_sig(self.upper, MACHINE_DIGITS),
            self.k.map(|k| k.to_string()).unwrap_or_default(),
            opt(self.sd),
            opt(self.se),
            opt(self.z),
        )
    }

    pub fn to_text(&self) -> String {
        let g = |x: f64| fmt_sig(x, TEXT_DIGITS);
        let mut lines = vec![
            format!("method  {}", self.method),
            format!("n       {}", self.n),
            format!("m       {}", self.m),
            format!("c       {}", g(self.c)),
            format!("mean    {}", g(self.mean)),
            format!("lower   {}", g(self.lower)),
            format!("upper   {}", g(self.upper)),
        ];
        if let Some(k) = self.k {
            lines.push(format!("k       {k}"));
        }
        for (label, v) in [("sd", self.sd), ("se", self.se), ("z", self.z)] {
            if let Some(v) = v {
                lines.push(format!("{label:<8}{}", g(v)));
            }
        }
        lines.join("\n")
    }

    pub fn width(&self) -> f64 {
        self.upper - self.lower
    }
}

/// Exact and standard records side by side.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Comparison {
    pub exact: OutputRecord,
    pub standard: OutputRecord,
    /// `standard.lower - exact.lower`
    #[serde(serialize_with = "sig12")]
    pub delta_lower: f64,
    /// `standard.upper - exact.upper`
    #[serde(serialize_with = "sig12")]
    pub delta_upper: f64,
    pub standard_degenerate: bool,
}

impl Comparison {
    pub fn new(exact: OutputRecord, standard: OutputRecord) -> Self {
        Comparison {
            delta_lower: standard.lower - exact.lower,
            delta_upper: standard.upper - exact.upper,
            standard_degenerate: standard.width() == 0.0,
            exact,
            standard,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("comparison serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = format!(
            "{}\n\n{}\n\ndelta lower  {}\ndelta upper  {}",
            self.exact.to_text(),
            self.standard.to_text(),
            fmt_sig(self.delta_lower, TEXT_DIGITS),
            fmt_sig(self.delta_upper, TEXT_DIGITS),
        );
        if self.standard_degenerate {
            out.push_str("\nstandard interval DEGENERATE (zero width)");
        }
        out
    }
}
