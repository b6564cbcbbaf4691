//! Evaluation statistics over manually labeled finding sets, and cross-run
//! comparisons.
//!
//! All arithmetic is exact (rationals over 64-bit integers); rounding happens
//! only when a percentage is rendered. Identities, for every group:
//! `TP = P − FP`, `UTP = TP − |DUP labels|`, `precision = TP/P` when `P > 0`
//! (else N/A), `NR = (TP − UTP)/TP` when `TP > 0` (else N/A).

use std::collections::{BTreeMap, BTreeSet};

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

pub type Rational = Ratio<i64>;

/// Manual verdict on one finding fingerprint.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Label {
    Tp,
    Fp,
    /// A true positive that duplicates another (canonical) true positive.
    Dup { canonical: String },
}

/// The labeled ground truth: fingerprint → verdict.
#[derive(Clone, Debug, Default)]
pub struct LabelSet {
    entries: BTreeMap<String, Label>,
}

impl LabelSet {
    pub fn get(&self, fingerprint: &str) -> Option<&Label> {
        self.entries.get(fingerprint)
    }

    pub fn insert(&mut self, fingerprint: String, label: Label) -> Result<()> {
        if self.entries.contains_key(&fingerprint) {
            return Err(Error::Analysis(format!(
                "fingerprint {fingerprint} labeled twice"
            )));
        }
        self.entries.insert(fingerprint, label);
        Ok(())
    }

    /// Parse the label file: a `fingerprint,label[,canonical]` header line,
    /// then one row per labeled finding. Blank lines and `#` comments are
    /// skipped. Labels are `TP`, `FP`, or `DUP` (the latter requiring the
    /// canonical fingerprint in the third column).
    pub fn parse(text: &str) -> Result<LabelSet> {
        let mut rows = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

        let bad = |line: usize, message: String| Error::BadRecord {
            path: "<labels>".to_string(),
            line,
            message,
        };

        let Some((hline, header)) = rows.next() else {
            return Err(bad(1, "empty label file".to_string()));
        };
        let normalized = header.replace(' ', "");
        if normalized != "fingerprint,label" && normalized != "fingerprint,label,canonical" {
            return Err(bad(
                hline,
                format!("expected header `fingerprint,label[,canonical]`, found `{header}`"),
            ));
        }

        let mut set = LabelSet::default();
        for (lineno, row) in rows {
            let cols: Vec<&str> = row.split(',').map(str::trim).collect();
            if cols.len() < 2 || cols.len() > 3 || cols[0].is_empty() {
                return Err(bad(lineno, format!("malformed row `{row}`")));
            }
            let label = match (cols[1].to_ascii_uppercase().as_str(), cols.get(2)) {
                ("TP", None) => Label::Tp,
                ("FP", None) => Label::Fp,
                ("DUP", Some(c)) if !c.is_empty() => Label::Dup {
                    canonical: c.to_string(),
                },
                ("DUP", _) => {
                    return Err(bad(lineno, "DUP row lacks a canonical fingerprint".into()))
                }
                (other, _) => {
                    return Err(bad(lineno, format!("unknown label `{other}`")));
                }
            };
            set.insert(cols[0].to_string(), label)
                .map_err(|e| bad(lineno, e.to_string()))?;
        }
        set.validate()?;
        Ok(set)
    }

    /// Every DUP must point at a fingerprint labeled TP.
    pub fn validate(&self) -> Result<()> {
        for (fp, label) in &self.entries {
            if let Label::Dup { canonical } = label {
                match self.entries.get(canonical) {
                    Some(Label::Tp) => {}
                    Some(_) => {
                        return Err(Error::Analysis(format!(
                            "DUP {fp} points at {canonical}, which is not labeled TP"
                        )))
                    }
                    None => {
                        return Err(Error::Analysis(format!(
                            "DUP {fp} points at unlabeled fingerprint {canonical}"
                        )))
                    }
                }
            }
        }
        Ok(())
    }
}

/// One row of a metrics report.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct GroupMetrics {
    pub p: i64,
    pub fp: i64,
    pub tp: i64,
    pub utp: i64,
    /// `None` encodes N/A (P = 0).
    pub precision: Option<Rational>,
    /// `None` encodes N/A (TP = 0).
    pub nr: Option<Rational>,
    /// Findings excluded under `--allow-unlabeled`.
    pub unlabeled: i64,
}

impl GroupMetrics {
    fn from_counts(p: i64, fp: i64, dup: i64, unlabeled: i64) -> GroupMetrics {
        let tp = p - fp;
        let utp = tp - dup;
        GroupMetrics {
            p,
            fp,
            tp,
            utp,
            precision: (p > 0).then(|| Rational::new(tp, p)),
            nr: (tp > 0).then(|| Rational::new(tp - utp, tp)),
            unlabeled,
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct MetricsReport {
    /// `rule` or `project`.
    pub group_by: String,
    pub groups: BTreeMap<String, GroupMetrics>,
    pub totals: GroupMetrics,
}

/// A finding reduced to what evaluation needs.
#[derive(Clone, Debug)]
pub struct LabeledItem {
    pub group: String,
    pub fingerprint: String,
}

/// Compute the per-group statistics. Unlabeled findings are fatal unless
/// `allow_unlabeled`, in which case they are excluded from every count except
/// the `unlabeled` column.
pub fn compute_metrics(
    items: &[LabeledItem],
    labels: &LabelSet,
    group_by: &str,
    allow_unlabeled: bool,
) -> Result<MetricsReport> {
    labels.validate()?;

    let mut missing: Vec<&str> = Vec::new();
    let mut counts: BTreeMap<&str, (i64, i64, i64, i64)> = BTreeMap::new(); // p, fp, dup, unlabeled
    let mut total = (0i64, 0i64, 0i64, 0i64);

    for item in items {
        let slot = counts.entry(item.group.as_str()).or_default();
        match labels.get(&item.fingerprint) {
            Some(Label::Tp) => {
                slot.0 += 1;
                total.0 += 1;
            }
            Some(Label::Fp) => {
                slot.0 += 1;
                slot.1 += 1;
                total.0 += 1;
                total.1 += 1;
            }
            Some(Label::Dup { .. }) => {
                slot.0 += 1;
                slot.2 += 1;
                total.0 += 1;
                total.2 += 1;
            }
            None => {
                if !allow_unlabeled {
                    missing.push(&item.fingerprint);
                } else {
                    slot.3 += 1;
                    total.3 += 1;
                }
            }
        }
    }

    if !missing.is_empty() {
        missing.sort_unstable();
        missing.dedup();
        return Err(Error::Analysis(format!(
            "{} unlabeled finding(s); label them or pass --allow-unlabeled: {}",
            missing.len(),
            missing.join(", ")
        )));
    }

    let groups = counts
        .into_iter()
        .map(|(g, (p, fp, dup, un))| (g.to_string(), GroupMetrics::from_counts(p, fp, dup, un)))
        .collect();
    Ok(MetricsReport {
        group_by: group_by.to_string(),
        groups,
        totals: GroupMetrics::from_counts(total.0, total.1, total.2, total.3),
    })
}

// ---------------------------------------------------------------------------
// Comparison
// ---------------------------------------------------------------------------

/// Per-group deltas, second run minus first. Lower is better for `ΔFP` and
/// `ΔNR`; higher is better for `ΔUTP` and `ΔPrec`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct GroupDelta {
    pub fp: i64,
    pub utp: i64,
    /// `None` when either side is N/A.
    pub nr: Option<Rational>,
    pub precision: Option<Rational>,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct ComparisonReport {
    pub groups: BTreeMap<String, GroupDelta>,
    pub totals: GroupDelta,
}

fn delta_of(first: &GroupMetrics, second: &GroupMetrics, fp_only_gain: bool) -> GroupDelta {
    let opt_delta = |a: Option<Rational>, b: Option<Rational>| match (a, b) {
        (Some(a), Some(b)) => Some(b - a),
        _ => None,
    };
    let mut precision = opt_delta(first.precision, second.precision);
    // Convention for groups the second run cleared entirely: when the first
    // run produced only false positives and the second produced nothing, the
    // precision gain is reported as the full 100% rather than N/A.
    if fp_only_gain && precision.is_none() && second.p == 0 && first.p > 0 && first.tp == 0 {
        precision = Some(Rational::from_integer(1));
    }
    GroupDelta {
        fp: second.fp - first.fp,
        utp: second.utp - first.utp,
        nr: opt_delta(first.nr, second.nr),
        precision,
    }
}

/// Compare two reports over identical group sets.
pub fn compare(
    first: &MetricsReport,
    second: &MetricsReport,
    fp_only_gain: bool,
) -> Result<ComparisonReport> {
    let a: BTreeSet<&String> = first.groups.keys().collect();
    let b: BTreeSet<&String> = second.groups.keys().collect();
    if a != b {
        let only_first: Vec<&str> = a.difference(&b).map(|s| s.as_str()).collect();
        let only_second: Vec<&str> = b.difference(&a).map(|s| s.as_str()).collect();
        return Err(Error::Analysis(format!(
            "group sets differ; only in first: [{}], only in second: [{}]",
            only_first.join(", "),
            only_second.join(", ")
        )));
    }
    let groups = first
        .groups
        .iter()
        .map(|(g, fm)| (g.clone(), delta_of(fm, &second.groups[g], fp_only_gain)))
        .collect();
    Ok(ComparisonReport {
        groups,
        totals: delta_of(&first.totals, &second.totals, fp_only_gain),
    })
}

// ---------------------------------------------------------------------------
// Rendering
// ---------------------------------------------------------------------------

/// Render a ratio as a percentage with exactly two decimals, rounding half
/// away from zero, e.g. `38.46%`, `-33.33%`. `None` renders as `N/A`.
pub fn format_pct(r: Option<Rational>) -> String {
    let Some(r) = r else {
        return "N/A".to_string();
    };
    // r is a fraction of 1; scale to hundredths of a percent and round.
    let scaled = (r * Rational::from_integer(10_000)).round().to_integer();
    let sign = if scaled < 0 { "-" } else { "" };
    let abs = scaled.abs();
    format!("{sign}{}.{:02}%", abs / 100, abs % 100)
}

fn render_table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.len()).collect();
    for row in rows {
        for (i, cell) in row.iter().enumerate() {
            widths[i] = widths[i].max(cell.len());
        }
    }
    let mut out = String::new();
    let emit = |cells: &[String], out: &mut String| {
        let line: Vec<String> = cells
            .iter()
            .enumerate()
            .map(|(i, c)| format!("{:<w$}", c, w = widths[i]))
            .collect();
        out.push_str(line.join("  ").trim_end());
        out.push('\n');
    };
    emit(
        &header.iter().map(|s| s.to_string()).collect::<Vec<_>>(),
        &mut out,
    );
    for row in rows {
        emit(row, &mut out);
    }
    out
}

/// Aligned text table for an evaluation report.
pub fn render_metrics(report: &MetricsReport) -> String {
    let any_unlabeled = report.totals.unlabeled > 0;
    let mut header = vec![
        report.group_by.as_str(),
        "P",
        "FP",
        "TP",
        "UTP",
        "precision",
        "NR",
    ];
    if any_unlabeled {
        header.push("unlabeled");
    }
    let mut rows: Vec<Vec<String>> = Vec::new();
    let push_row = |name: &str, m: &GroupMetrics, rows: &mut Vec<Vec<String>>| {
        let mut row = vec![
            name.to_string(),
            m.p.to_string(),
            m.fp.to_string(),
            m.tp.to_string(),
            m.utp.to_string(),
            format_pct(m.precision),
            format_pct(m.nr),
        ];
        if any_unlabeled {
            row.push(m.unlabeled.to_string());
        }
        rows.push(row);
    };
    for (g, m) in &report.groups {
        push_row(g, m, &mut rows);
    }
    push_row("TOTAL", &report.totals, &mut rows);
    render_table(&header, &rows)
}

/// Aligned text table for a comparison report.
pub fn render_comparison(report: &ComparisonReport) -> String {
    let header = ["group", "dFP", "dUTP", "dNR", "dPrec"];
    let signed = |n: i64| {
        if n > 0 {
            format!("+{n}")
        } else {
            n.to_string()
        }
    };
    let signed_pct = |r: Option<Rational>| {
        let s = format_pct(r);
        if r.map_or(false, |v| v > Rational::from_integer(0)) {
            format!("+{s}")
        } else {
            s
        }
    };
    let mut rows: Vec<Vec<String>> = Vec::new();
    let push_row = |name: &str, d: &GroupDelta, rows: &mut Vec<Vec<String>>| {
        rows.push(vec![
            name.to_string(),
            signed(d.fp),
            signed(d.utp),
            signed_pct(d.nr),
            signed_pct(d.precision),
        ]);
    };
    for (g, d) in &report.groups {
        push_row(g, d, &mut rows);
    }
    push_row("TOTAL", &report.totals, &mut rows);
    render_table(&header, &rows)
}
