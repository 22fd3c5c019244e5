//! Line formats for rankings, judgments, and evaluation reports.
//!
//! Run lines: `<query_id> Q0 <conf_key> <rank> <score> <run_tag>` with
//! single spaces and six-decimal scores; qrels lines:
//! `<query_id> 0 <conf_key> <grade>`. Query ids are `YYYY-MM` reference
//! months. Everything is UTF-8 with LF line endings.

use std::io::{BufRead, BufReader, Read, Write};

use crate::calendar::CalendarDate;
use crate::error::FormatError;
use crate::evaluation::{EvalReport, QrelSet, YearEvaluation};
use crate::scoring::{Factor, RankedEntry, RankedList};

/// Appends one ranking to `w` in run format.
pub fn write_run<W: Write>(w: &mut W, run: &RankedList) -> std::io::Result<()> {
    let query = run.query_id();
    let tag = run.factor.name();
    for entry in &run.entries {
        writeln!(
            w,
            "{query} Q0 {} {} {:.6} {tag}",
            entry.conf_key, entry.rank, entry.score
        )?;
    }
    Ok(())
}

/// Parses a run file into rankings, one per (query, tag) pair in order
/// of first appearance. Entries keep their file order.
pub fn parse_runs<R: Read>(file: &str, reader: R) -> Result<Vec<RankedList>, FormatError> {
    let mut runs: Vec<RankedList> = Vec::new();
    for (idx, line) in BufReader::new(reader).lines().enumerate() {
        let line_no = idx + 1;
        let malformed = |reason: String| FormatError::Malformed {
            file: file.to_string(),
            line: line_no,
            reason,
        };
        let line = line.map_err(|e| malformed(e.to_string()))?;
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(' ').collect();
        let [query, literal, key, rank, score, tag] = fields.as_slice() else {
            return Err(malformed(format!(
                "expected 6 space-separated fields, got {}",
                fields.len()
            )));
        };
        if *literal != "Q0" {
            return Err(malformed(format!("expected literal Q0, got {literal:?}")));
        }
        let now: CalendarDate = query
            .parse()
            .map_err(|e| malformed(format!("bad query id: {e}")))?;
        let factor: Factor = tag.parse().map_err(&malformed)?;
        let entry = RankedEntry {
            conf_key: (*key).into(),
            rank: rank
                .parse()
                .map_err(|_| malformed(format!("bad rank {rank:?}")))?,
            score: score
                .parse()
                .map_err(|_| malformed(format!("bad score {score:?}")))?,
        };
        match runs.iter_mut().find(|r| r.now == now && r.factor == factor) {
            Some(run) => run.entries.push(entry),
            None => runs.push(RankedList {
                now,
                factor,
                entries: vec![entry],
            }),
        }
    }
    Ok(runs)
}

/// Appends one judgment set to `w` in qrels format.
pub fn write_qrels<W: Write>(w: &mut W, qrels: &QrelSet) -> std::io::Result<()> {
    let query = qrels.query_id();
    for (key, grade) in &qrels.judgments {
        writeln!(w, "{query} 0 {key} {grade}")?;
    }
    Ok(())
}

/// Parses a qrels file, one set per query id in order of first
/// appearance.
pub fn parse_qrels<R: Read>(file: &str, reader: R) -> Result<Vec<QrelSet>, FormatError> {
    let mut sets: Vec<QrelSet> = Vec::new();
    for (idx, line) in BufReader::new(reader).lines().enumerate() {
        let line_no = idx + 1;
        let malformed = |reason: String| FormatError::Malformed {
            file: file.to_string(),
            line: line_no,
            reason,
        };
        let line = line.map_err(|e| malformed(e.to_string()))?;
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(' ').collect();
        let [query, literal, key, grade] = fields.as_slice() else {
            return Err(malformed(format!(
                "expected 4 space-separated fields, got {}",
                fields.len()
            )));
        };
        if *literal != "0" {
            return Err(malformed(format!("expected literal 0, got {literal:?}")));
        }
        let now: CalendarDate = query
            .parse()
            .map_err(|e| malformed(format!("bad query id: {e}")))?;
        let grade: u8 = grade
            .parse()
            .map_err(|_| malformed(format!("bad grade {grade:?}")))?;
        if grade > 4 {
            return Err(malformed(format!("grade {grade} outside 0..=4")));
        }
        match sets.iter_mut().find(|s| s.now == now) {
            Some(set) => {
                set.judgments.insert((*key).into(), grade);
            }
            None => sets.push(QrelSet {
                now,
                judgments: std::iter::once(((*key).into(), grade)).collect(),
            }),
        }
    }
    Ok(sets)
}

/// Header of the evaluation report CSV.
pub const REPORT_HEADER: &str =
    "factor,cutoff,m01,m02,m03,m04,m05,m06,m07,m08,m09,m10,m11,m12,average,p_vs_baseline";

/// Writes the year evaluation as a CSV: one row per factor and cutoff,
/// twelve monthly nDCG columns, the yearly average, and the p-value
/// against the baseline, all with four decimals.
pub fn write_report<W: Write>(w: &mut W, eval: &YearEvaluation) -> std::io::Result<()> {
    writeln!(w, "{REPORT_HEADER}")?;
    for report in &eval.reports {
        write_report_rows(w, eval.eval_year, &eval.cutoffs, report)?;
    }
    Ok(())
}

fn write_report_rows<W: Write>(
    w: &mut W,
    eval_year: i32,
    cutoffs: &[usize],
    report: &EvalReport,
) -> std::io::Result<()> {
    for &k in cutoffs {
        write!(w, "{},{k}", report.factor)?;
        for month in 1..=12u32 {
            let query = format!("{eval_year:04}-{month:02}");
            let value = report
                .per_month_ndcg
                .get(&query)
                .and_then(|by_cutoff| by_cutoff.get(&k))
                .copied()
                .unwrap_or(0.0);
            write!(w, ",{value:.4}")?;
        }
        writeln!(
            w,
            ",{:.4},{:.4}",
            report.yearly_average[&k], report.p_value_vs_baseline[&k]
        )?;
    }
    Ok(())
}
