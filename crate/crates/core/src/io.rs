//! Report documents, their CSV and JSON renderings, and batch diagram files.
//!
//! CSV output is a sequence of tables separated by one blank line; the first
//! table of each report has the fixed header for its kind, and the bound
//! table always comes last. Reals are written with 17 significant digits.
//! JSON carries the same fields under `metadata`, `rows`, and `bounds`.

use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::diagram::{parse_diagram, PartialDiagram};
use crate::error::Result;
use crate::procedure::GENERATOR;
use crate::stats::{
    exact_report, plug_report, sample_report, BoundReport, BoundRow, ExactStats, McStats, PlugStats,
};

pub const EXACT_HEADER: &str = "n,count,d_mean_num,d_mean_den,genus,genus_count";
pub const EXACT_LOOPS_HEADER: &str = "n,k,Lk_num,Lk_den,Pk_num,Pk_den";
pub const SAMPLE_HEADER: &str = "n,samples,seed,d_mean,d_stddev,ci99_lo,ci99_hi";
pub const SAMPLE_LOOPS_HEADER: &str = "n,k,Lk_hat,Lk_se,bound_3_over_k,lower_1_over_9k,Pk_hat,Pk_se";
pub const PLUGS_HEADER: &str = "n,runs,k,mean_plugs,Gp,Gp_se,Gm,Gm_se,Hp,Hp_se,Hm,Hm_se";
pub const BOUNDS_HEADER: &str = "check,k,direction,measured,bound,se,slack,status";

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Metadata {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: &'static str,
    pub n: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub samples: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub runs: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k_max: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub generator: Option<&'static str>,
}

impl Metadata {
    fn new(command: &'static str, n: usize) -> Metadata {
        Metadata {
            tool: env!("CARGO_PKG_NAME"),
            version: env!("CARGO_PKG_VERSION"),
            command,
            n,
            samples: None,
            runs: None,
            k_max: None,
            seed: None,
            generator: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Payload {
    Exact(ExactStats),
    Sample(McStats),
    Plugs(PlugStats),
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReportDocument {
    pub metadata: Metadata,
    pub payload: Payload,
    pub bounds: BoundReport,
}

impl ReportDocument {
    pub fn exact(stats: ExactStats) -> ReportDocument {
        ReportDocument {
            metadata: Metadata::new("enumerate", stats.n),
            bounds: exact_report(&stats),
            payload: Payload::Exact(stats),
        }
    }

    pub fn sample(stats: McStats) -> ReportDocument {
        let mut metadata = Metadata::new("sample", stats.n);
        metadata.samples = Some(stats.samples);
        metadata.seed = Some(stats.seed);
        metadata.generator = Some(GENERATOR);
        ReportDocument { metadata, bounds: sample_report(&stats), payload: Payload::Sample(stats) }
    }

    pub fn plugs(stats: PlugStats) -> ReportDocument {
        let mut metadata = Metadata::new("plugs", stats.n);
        metadata.runs = Some(stats.runs);
        metadata.k_max = Some(stats.k_max);
        metadata.seed = Some(stats.seed);
        metadata.generator = Some(GENERATOR);
        ReportDocument { metadata, bounds: plug_report(&stats), payload: Payload::Plugs(stats) }
    }
}

/// `x` with 17 significant digits.
pub fn real(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else if x.is_nan() {
        "NaN".into()
    } else if x > 0.0 {
        "inf".into()
    } else {
        "-inf".into()
    }
}

fn status_str(r: &BoundRow) -> &'static str {
    match r.status {
        crate::stats::Status::Pass => "pass",
        crate::stats::Status::Fail => "fail",
        crate::stats::Status::Insufficient => "insufficient",
    }
}

fn direction_str(r: &BoundRow) -> &'static str {
    match r.direction {
        crate::stats::report::Direction::AtMost => "at_most",
        crate::stats::report::Direction::AtLeast => "at_least",
        crate::stats::report::Direction::Equal => "equal",
    }
}

fn opt<T: ToString>(x: Option<T>) -> String {
    x.map(|v| v.to_string()).unwrap_or_default()
}

pub fn write_csv(doc: &ReportDocument) -> String {
    let mut out = String::new();
    let mut line = |s: String| {
        out.push_str(&s);
        out.push('\n');
    };
    match &doc.payload {
        Payload::Exact(s) => {
            line(EXACT_HEADER.into());
            for (g, c) in &s.genus_histogram {
                line(format!(
                    "{},{},{},{},{},{}",
                    s.n,
                    s.count,
                    s.d_mean.numer(),
                    s.d_mean.denom(),
                    g,
                    c
                ));
            }
            line(String::new());
            line(EXACT_LOOPS_HEADER.into());
            for (k, l) in &s.loops {
                let p = s.edge_share.get(k).copied().unwrap_or_default();
                line(format!("{},{},{},{},{},{}", s.n, k, l.numer(), l.denom(), p.numer(), p.denom()));
            }
        }
        Payload::Sample(s) => {
            line(SAMPLE_HEADER.into());
            line(format!(
                "{},{},{},{},{},{},{}",
                s.n,
                s.samples,
                s.seed,
                real(s.d_mean),
                real(s.d_stddev),
                real(s.ci99.0),
                real(s.ci99.1)
            ));
            line(String::new());
            line(SAMPLE_LOOPS_HEADER.into());
            for (&k, l) in &s.loops {
                let p = s.edge_share[&k];
                line(format!(
                    "{},{},{},{},{},{},{},{}",
                    s.n,
                    k,
                    real(l.mean),
                    real(l.se),
                    real(3.0 / k as f64),
                    real(1.0 / (9.0 * k as f64)),
                    real(p.mean),
                    real(p.se)
                ));
            }
        }
        Payload::Plugs(s) => {
            line(PLUGS_HEADER.into());
            for r in &s.rows {
                line(format!(
                    "{},{},{},{},{},{},{},{},{},{},{},{}",
                    s.n,
                    s.runs,
                    r.k,
                    real(r.plugs.mean),
                    real(r.completed_positive.mean),
                    real(r.completed_positive.se),
                    real(r.completed_negative.mean),
                    real(r.completed_negative.se),
                    real(r.at_pointer_positive.mean),
                    real(r.at_pointer_positive.se),
                    real(r.at_pointer_negative.mean),
                    real(r.at_pointer_negative.se)
                ));
            }
        }
    }
    line(String::new());
    line(BOUNDS_HEADER.into());
    for r in &doc.bounds.rows {
        line(format!(
            "{},{},{},{},{},{},{},{}",
            r.check,
            opt(r.k),
            direction_str(r),
            real(r.measured),
            real(r.bound),
            r.se.map(real).unwrap_or_default(),
            real(r.slack),
            status_str(r)
        ));
    }
    out
}

fn object(pairs: Vec<(&str, Value)>) -> Value {
    Value::Object(pairs.into_iter().map(|(k, v)| (k.to_string(), v)).collect::<Map<_, _>>())
}

pub fn write_json(doc: &ReportDocument) -> String {
    let mut root = Map::new();
    root.insert("metadata".into(), serde_json::to_value(&doc.metadata).expect("plain struct"));
    match &doc.payload {
        Payload::Exact(s) => {
            let rows = s
                .genus_histogram
                .iter()
                .map(|(g, c)| {
                    object(vec![
                        ("n", json!(s.n)),
                        ("count", json!(s.count)),
                        ("d_mean_num", json!(s.d_mean.numer())),
                        ("d_mean_den", json!(s.d_mean.denom())),
                        ("genus", json!(g)),
                        ("genus_count", json!(c)),
                    ])
                })
                .collect();
            let loops = s
                .loops
                .iter()
                .map(|(k, l)| {
                    let p = s.edge_share.get(k).copied().unwrap_or_default();
                    object(vec![
                        ("n", json!(s.n)),
                        ("k", json!(k)),
                        ("Lk_num", json!(l.numer())),
                        ("Lk_den", json!(l.denom())),
                        ("Pk_num", json!(p.numer())),
                        ("Pk_den", json!(p.denom())),
                    ])
                })
                .collect();
            root.insert("rows".into(), Value::Array(rows));
            root.insert("loop_rows".into(), Value::Array(loops));
        }
        Payload::Sample(s) => {
            let summary = object(vec![
                ("n", json!(s.n)),
                ("samples", json!(s.samples)),
                ("seed", json!(s.seed)),
                ("d_mean", json!(s.d_mean)),
                ("d_stddev", json!(s.d_stddev)),
                ("ci99_lo", json!(s.ci99.0)),
                ("ci99_hi", json!(s.ci99.1)),
            ]);
            let loops = s
                .loops
                .iter()
                .map(|(&k, l)| {
                    let p = s.edge_share[&k];
                    object(vec![
                        ("n", json!(s.n)),
                        ("k", json!(k)),
                        ("Lk_hat", json!(l.mean)),
                        ("Lk_se", json!(l.se)),
                        ("bound_3_over_k", json!(3.0 / k as f64)),
                        ("lower_1_over_9k", json!(1.0 / (9.0 * k as f64))),
                        ("Pk_hat", json!(p.mean)),
                        ("Pk_se", json!(p.se)),
                    ])
                })
                .collect();
            root.insert("rows".into(), Value::Array(vec![summary]));
            root.insert("loop_rows".into(), Value::Array(loops));
        }
        Payload::Plugs(s) => {
            let rows = s
                .rows
                .iter()
                .map(|r| {
                    object(vec![
                        ("n", json!(s.n)),
                        ("runs", json!(s.runs)),
                        ("k", json!(r.k)),
                        ("mean_plugs", json!(r.plugs.mean)),
                        ("Gp", json!(r.completed_positive.mean)),
                        ("Gp_se", json!(r.completed_positive.se)),
                        ("Gm", json!(r.completed_negative.mean)),
                        ("Gm_se", json!(r.completed_negative.se)),
                        ("Hp", json!(r.at_pointer_positive.mean)),
                        ("Hp_se", json!(r.at_pointer_positive.se)),
                        ("Hm", json!(r.at_pointer_negative.mean)),
                        ("Hm_se", json!(r.at_pointer_negative.se)),
                    ])
                })
                .collect();
            root.insert("rows".into(), Value::Array(rows));
        }
    }
    root.insert("bounds".into(), serde_json::to_value(&doc.bounds.rows).expect("plain struct"));
    let mut s = serde_json::to_string_pretty(&Value::Object(root)).expect("valid json");
    s.push('\n');
    s
}

/// One non-blank, non-comment line of a batch file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BatchLine {
    /// 1-based line number.
    pub line: usize,
    pub text: String,
    pub diagram: Result<PartialDiagram>,
}

/// Parses one diagram per line; blank lines and `#` comments are skipped.
pub fn parse_batch(text: &str) -> Vec<BatchLine> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| {
            let t = l.trim();
            !t.is_empty() && !t.starts_with('#')
        })
        .map(|(i, l)| BatchLine { line: i + 1, text: l.trim().to_string(), diagram: parse_diagram(l) })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stats::exact_stats;

    #[test]
    fn real_has_17_significant_digits() {
        assert_eq!(real(0.1), "1.0000000000000001e-1");
        assert_eq!(real(3.0), "3.0000000000000000e0");
        assert_eq!(real(f64::INFINITY), "inf");
        for x in [0.1, 1.0 / 3.0, 2.5e-7, 12345.678] {
            assert_eq!(real(x).parse::<f64>().unwrap(), x);
        }
    }

    #[test]
    fn exact_n1_row() {
        let doc = ReportDocument::exact(exact_stats(1).unwrap());
        let csv = write_csv(&doc);
        let mut lines = csv.lines();
        assert_eq!(lines.next(), Some(EXACT_HEADER));
        assert_eq!(lines.next(), Some("1,2,3,1,0,2"));
    }

    #[test]
    fn batch_skips_comments() {
        let lines = parse_batch("# header\n\n(1,2)\n  # indented\n(1,1)\nn=2;(1,3)\n");
        assert_eq!(lines.iter().map(|l| l.line).collect::<Vec<_>>(), vec![3, 5, 6]);
        assert!(lines[0].diagram.is_ok());
        assert!(lines[1].diagram.is_err());
        assert_eq!(lines[2].diagram.as_ref().unwrap().k(), 1);
    }
}
