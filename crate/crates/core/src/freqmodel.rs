//! Single-symbol frequency tables, the language model behind the attack.
//!
//! Tables keep integer counts rather than floats so that a saved table
//! loads back bit-for-bit. The file format is
//!
//! ```text
//! itru-freq v1
//! a 8139 104553
//! b 1495 104553
//! ...
//! ```
//!
//! with one `symbol count total` line per alphabet symbol, in alphabet
//! order. Every line repeats the same total and the counts must add up to it.

use std::collections::HashSet;
use std::fmt::Write as _;

use crate::error::{Error, Result};

pub const TABLE_MAGIC: &str = "itru-freq v1";

/// The shipped English model, built from the training half of the bundled
/// corpus with `itru build-table --in data/alice-train.txt`.
pub const ENGLISH_TABLE: &str = include_str!("../data/english.freq");

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrequencyTable {
    alphabet: Vec<char>,
    counts: Vec<u64>,
    total: u64,
}

/// `'a'..='z'`.
pub fn latin_alphabet() -> Vec<char> {
    ('a'..='z').collect()
}

fn check_alphabet(alphabet: &[char]) -> Result<()> {
    if alphabet.is_empty() {
        return Err(Error::InvalidAlphabet("alphabet is empty".into()));
    }
    let mut seen = HashSet::new();
    for &ch in alphabet {
        if ch.is_whitespace() || ch.is_control() {
            return Err(Error::InvalidAlphabet(format!("{ch:?} cannot be a symbol")));
        }
        if ch.is_ascii_uppercase() {
            return Err(Error::InvalidAlphabet(format!("{ch:?} is not case-folded")));
        }
        if !seen.insert(ch) {
            return Err(Error::InvalidAlphabet(format!("{ch:?} appears twice")));
        }
    }
    Ok(())
}

impl FrequencyTable {
    /// Builds a table directly from counts.
    pub fn from_counts(alphabet: Vec<char>, counts: Vec<u64>) -> Result<Self> {
        check_alphabet(&alphabet)?;
        if alphabet.len() != counts.len() {
            return Err(Error::InvalidAlphabet(format!(
                "{} symbols but {} counts",
                alphabet.len(),
                counts.len()
            )));
        }
        let total = counts
            .iter()
            .try_fold(0u64, |acc, &c| acc.checked_add(c))
            .ok_or(Error::Overflow("frequency total"))?;
        if total == 0 {
            return Err(Error::NoAlphabetSymbols);
        }
        Ok(FrequencyTable { alphabet, counts, total })
    }

    /// The bundled English model.
    pub fn english() -> Self {
        load_table(ENGLISH_TABLE).expect("bundled English table is well formed")
    }

    pub fn alphabet(&self) -> &[char] {
        &self.alphabet
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub fn total(&self) -> u64 {
        self.total
    }

    pub fn len(&self) -> usize {
        self.alphabet.len()
    }

    pub fn is_empty(&self) -> bool {
        self.alphabet.is_empty()
    }

    /// Position of `ch` after ASCII case folding.
    pub fn index_of(&self, ch: char) -> Option<usize> {
        let folded = ch.to_ascii_lowercase();
        self.alphabet.iter().position(|&s| s == folded)
    }

    pub fn frequency(&self, ch: char) -> Option<f64> {
        self.index_of(ch).map(|i| self.frequency_at(i))
    }

    pub fn frequency_at(&self, index: usize) -> f64 {
        self.counts[index] as f64 / self.total as f64
    }

    pub fn frequencies(&self) -> impl Iterator<Item = (char, f64)> + '_ {
        (0..self.len()).map(|i| (self.alphabet[i], self.frequency_at(i)))
    }
}

/// Counts alphabet symbols in `text` after folding `A`-`Z` to lowercase.
/// Everything outside the alphabet is ignored.
pub fn build_table(text: &str, alphabet: &[char]) -> Result<FrequencyTable> {
    check_alphabet(alphabet)?;
    let mut counts = vec![0u64; alphabet.len()];
    for ch in text.chars() {
        let folded = ch.to_ascii_lowercase();
        if let Some(i) = alphabet.iter().position(|&s| s == folded) {
            counts[i] += 1;
        }
    }
    FrequencyTable::from_counts(alphabet.to_vec(), counts)
}

pub fn save_table(table: &FrequencyTable) -> String {
    let mut out = format!("{TABLE_MAGIC}\n");
    for (ch, count) in table.alphabet.iter().zip(&table.counts) {
        writeln!(out, "{ch} {count} {}", table.total).unwrap();
    }
    out
}

pub fn load_table(text: &str) -> Result<FrequencyTable> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, line)| (i + 1, line.trim_end_matches('\r')))
        .filter(|(_, line)| !line.trim().is_empty());

    match lines.next() {
        Some((_, line)) if line.trim() == TABLE_MAGIC => {}
        Some((n, _)) => return Err(Error::malformed(n, format!("expected {TABLE_MAGIC:?}"))),
        None => return Err(Error::malformed(1, "empty table file")),
    }

    let mut alphabet = Vec::new();
    let mut counts = Vec::new();
    let mut declared_total = None;
    let mut last_line = 1;
    for (n, line) in lines {
        last_line = n;
        let fields: Vec<&str> = line.split_whitespace().collect();
        let [symbol, count, total] = fields[..] else {
            return Err(Error::malformed(n, "expected `symbol count total`"));
        };
        let mut chars = symbol.chars();
        let (Some(ch), None) = (chars.next(), chars.next()) else {
            return Err(Error::malformed(n, format!("symbol {symbol:?} is not one character")));
        };
        let number = |s: &str| {
            s.parse::<u64>()
                .map_err(|_| Error::malformed(n, format!("{s:?} is not a decimal integer")))
        };
        let (count, total) = (number(count)?, number(total)?);
        match declared_total {
            None => declared_total = Some(total),
            Some(t) if t != total => {
                return Err(Error::malformed(n, format!("total {total} differs from {t}")));
            }
            Some(_) => {}
        }
        if count > total {
            return Err(Error::malformed(n, format!("count {count} exceeds total {total}")));
        }
        alphabet.push(ch);
        counts.push(count);
    }

    let declared_total = declared_total.ok_or_else(|| Error::malformed(last_line, "table has no symbols"))?;
    let table = FrequencyTable::from_counts(alphabet, counts).map_err(|e| Error::malformed(last_line, e.to_string()))?;
    if table.total != declared_total {
        return Err(Error::malformed(
            last_line,
            format!("counts sum to {} but the declared total is {declared_total}", table.total),
        ));
    }
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_symbol_text() {
        let t = build_table("aaa", &['a', 'b']).unwrap();
        assert_eq!(t.frequency('a'), Some(1.0));
        assert_eq!(t.frequency('b'), Some(0.0));
        assert_eq!(t.frequency('A'), Some(1.0));
        assert_eq!(t.frequency('c'), None);
    }

    #[test]
    fn case_folding_and_filtering() {
        let t = build_table("Hello, World! 123", &latin_alphabet()).unwrap();
        assert_eq!(t.total(), 10);
        assert_eq!(t.counts()[t.index_of('l').unwrap()], 3);
        assert_eq!(t.counts()[t.index_of('h').unwrap()], 1);
    }

    #[test]
    fn nothing_to_count() {
        assert_eq!(build_table("", &latin_alphabet()), Err(Error::NoAlphabetSymbols));
        assert_eq!(build_table("123 ,.!", &latin_alphabet()), Err(Error::NoAlphabetSymbols));
    }

    #[test]
    fn bad_alphabets() {
        for alphabet in [vec![], vec!['a', 'a'], vec!['A'], vec![' ']] {
            assert!(matches!(build_table("a", &alphabet), Err(Error::InvalidAlphabet(_))), "{alphabet:?}");
        }
    }

    #[test]
    fn paragraph_letters() {
        let paragraph = include_str!("../data/itru-paragraph.txt");
        let t = build_table(paragraph, &latin_alphabet()).unwrap();
        let (top, _) = t
            .frequencies()
            .fold(('?', -1.0), |best, (ch, f)| if f > best.1 { (ch, f) } else { best });
        assert_eq!(top, 'e');
        assert_eq!(t.counts()[t.index_of('e').unwrap()], 49);
    }

    #[test]
    fn file_format() {
        let t = build_table("abba c", &['a', 'b', 'c']).unwrap();
        let text = save_table(&t);
        assert_eq!(text, "itru-freq v1\na 2 5\nb 2 5\nc 1 5\n");
        assert_eq!(load_table(&text).unwrap(), t);
    }

    #[test]
    fn malformed_files() {
        let line_of = |text: &str| match load_table(text) {
            Err(Error::Malformed { line, .. }) => line,
            other => panic!("expected Malformed, got {other:?}"),
        };
        assert_eq!(line_of("a 1 1\n"), 1);
        assert_eq!(line_of(""), 1);
        assert_eq!(line_of("itru-freq v1\n"), 1);
        // sums disagree with the total
        assert_eq!(line_of("itru-freq v1\na 1 4\nb 1 4\n"), 3);
        assert_eq!(line_of("itru-freq v1\na 1 2\nb 1 3\n"), 3);
        assert_eq!(line_of("itru-freq v1\na 1 2 3\n"), 2);
        assert_eq!(line_of("itru-freq v1\nab 1 1\n"), 2);
        assert_eq!(line_of("itru-freq v1\na x 1\n"), 2);
        assert_eq!(line_of("itru-freq v1\na 0 0\n"), 2);
        assert_eq!(line_of("itru-freq v1\na 1 2\na 1 2\n"), 3);
    }

    #[test]
    fn bundled_model_matches_its_corpus() {
        let rebuilt = build_table(include_str!("../data/alice-train.txt"), &latin_alphabet()).unwrap();
        assert_eq!(FrequencyTable::english(), rebuilt);
        assert_eq!(save_table(&rebuilt), ENGLISH_TABLE);
    }
}
