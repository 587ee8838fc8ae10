//! Text rendering of distributions and attack reports.
//!
//! The human report looks like
//!
//! ```text
//! blocks 447 distinct 32 candidates 122 confidence normal
//! offset=300952 score=31.220488 text=ThegoalofthisstudyistopresentavariantofNTRUwhichisbasedontheringo
//! offset=300920 score=...
//! ```
//!
//! and the machine report (`--machine`) holds one tab-separated record per
//! line:
//!
//! ```text
//! summary   <blocks> <distinct> <candidates> <low_confidence: 0|1>
//! candidate <rank> <offset> <score> <letters> <plaintext as lowercase hex, two digits per symbol>
//! ```
//!
//! Candidate records come best first, ranks start at 1. Symbols above 255
//! cannot be hex-encoded in two digits and are written as `[<decimal>]`.

use std::fmt::Write as _;

use crate::attack::{AttackReport, BlockDistribution};
use crate::scheme::Plaintext;

/// Longest `text=` preview in the human report, in characters.
pub const PREVIEW_CHARS: usize = 64;

/// `x` rounded to `digits` significant digits in positional notation,
/// keeping trailing zeros. Intended for values in `(0, 1]`.
pub fn format_significant(x: f64, digits: usize) -> String {
    assert!(digits >= 1);
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    // Scientific formatting rounds correctly and reports the exponent
    // after rounding.
    let sci = format!("{:.*e}", digits - 1, x);
    let (mantissa, exponent) = sci.split_once('e').unwrap();
    let exponent: i32 = exponent.parse().unwrap();
    let negative = mantissa.starts_with('-');
    let digit_str: String = mantissa.chars().filter(char::is_ascii_digit).collect();

    let mut out = String::new();
    if negative {
        out.push('-');
    }
    if exponent < 0 {
        out.push_str("0.");
        out.extend(std::iter::repeat_n('0', (-exponent - 1) as usize));
        out.push_str(&digit_str);
    } else {
        let int_len = exponent as usize + 1;
        if int_len >= digit_str.len() {
            out.push_str(&digit_str);
            out.extend(std::iter::repeat_n('0', int_len - digit_str.len()));
        } else {
            out.push_str(&digit_str[..int_len]);
            out.push('.');
            out.push_str(&digit_str[int_len..]);
        }
    }
    out
}

/// `block count frequency` per line, ascending by block, frequencies to
/// 15 significant digits.
pub fn render_distribution(dist: &BlockDistribution) -> String {
    let mut out = String::new();
    for e in &dist.entries {
        writeln!(out, "{} {} {}", e.block, e.count, format_significant(e.frequency, 15)).unwrap();
    }
    out
}

fn escape_symbol(s: u64) -> String {
    match s {
        0x5c => "\\\\".into(),
        0x0a => "\\n".into(),
        0x09 => "\\t".into(),
        0x0d => "\\r".into(),
        0x20..=0x7e => (s as u8 as char).to_string(),
        0..=0xff => format!("\\x{s:02x}"),
        _ => format!("\\u{{{s:x}}}"),
    }
}

/// Escaped rendering of `pt`, cut before the escape that would exceed
/// `max_chars`.
pub fn escape_preview(pt: &Plaintext, max_chars: usize) -> String {
    let mut out = String::new();
    for &s in &pt.0 {
        let piece = escape_symbol(s);
        if out.len() + piece.len() > max_chars {
            break;
        }
        out.push_str(&piece);
    }
    out
}

pub fn render_report(report: &AttackReport) -> String {
    let confidence = if report.low_confidence { "low" } else { "normal" };
    let mut out = format!(
        "blocks {} distinct {} candidates {} confidence {}\n",
        report.distribution.total,
        report.distribution.distinct(),
        report.candidates.len(),
        confidence
    );
    for c in &report.candidates {
        writeln!(
            out,
            "offset={} score={:.6} text={}",
            c.offset,
            c.score,
            escape_preview(&c.plaintext, PREVIEW_CHARS)
        )
        .unwrap();
    }
    out
}

fn hex_symbols(pt: &Plaintext) -> String {
    let mut out = String::with_capacity(pt.len() * 2);
    for &s in &pt.0 {
        if s <= 0xff {
            write!(out, "{s:02x}").unwrap();
        } else {
            write!(out, "[{s}]").unwrap();
        }
    }
    out
}

pub fn render_machine_report(report: &AttackReport) -> String {
    let mut out = format!(
        "summary\t{}\t{}\t{}\t{}\n",
        report.distribution.total,
        report.distribution.distinct(),
        report.candidates.len(),
        u8::from(report.low_confidence)
    );
    for (rank, c) in report.candidates.iter().enumerate() {
        writeln!(
            out,
            "candidate\t{}\t{}\t{:.6}\t{}\t{}",
            rank + 1,
            c.offset,
            c.score,
            c.letters,
            hex_symbols(&c.plaintext)
        )
        .unwrap();
    }
    out
}
