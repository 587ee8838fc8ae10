//! Ciphertext-only plaintext recovery.
//!
//! Every block of an ITRU ciphertext is `symbol + offset mod q` for one
//! unknown `offset = r * h mod q`. Since symbols lie in `[0, m_max]`, the
//! offset is confined to the intersection of the windows
//! `[block - m_max, block]` (mod q) over all blocks, which holds at most
//! `m_max + 1` values. Each surviving offset is decoded and scored with a
//! chi-squared statistic against a letter-frequency model; the lowest
//! score wins.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::freqmodel::FrequencyTable;
use crate::scheme::{Ciphertext, Plaintext};

/// Multiplied by the model's alphabet size to get the per-symbol penalty
/// for non-printable decodings.
pub const PENALTY_FACTOR: f64 = 10.0;

/// Candidates whose decoding holds fewer alphabet letters than this are
/// reported as low confidence.
pub const LOW_CONFIDENCE_LETTERS: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlockCount {
    pub block: u64,
    pub count: u64,
    /// `count / total`.
    pub frequency: f64,
}

/// Exact counts of every distinct block, ascending by block value.
#[derive(Debug, Clone, PartialEq)]
pub struct BlockDistribution {
    pub entries: Vec<BlockCount>,
    pub total: u64,
}

impl BlockDistribution {
    pub fn distinct(&self) -> usize {
        self.entries.len()
    }

    /// Highest count, smallest block on ties.
    pub fn most_frequent(&self) -> &BlockCount {
        self.entries
            .iter()
            .reduce(|best, e| if e.count > best.count { e } else { best })
            .expect("distribution is never empty")
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct OffsetCandidate {
    pub offset: u64,
    /// Chi-squared statistic plus penalties; lower is better.
    pub score: f64,
    /// Alphabet letters in the decoding.
    pub letters: usize,
    pub plaintext: Plaintext,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AttackReport {
    pub distribution: BlockDistribution,
    /// Ascending by score, then by offset.
    pub candidates: Vec<OffsetCandidate>,
    pub low_confidence: bool,
}

impl AttackReport {
    pub fn chosen(&self) -> &OffsetCandidate {
        &self.candidates[0]
    }
}

pub fn frequency_distribution(ct: &Ciphertext) -> Result<BlockDistribution> {
    if ct.is_empty() {
        return Err(Error::EmptyCiphertext);
    }
    let mut counts = BTreeMap::new();
    for &block in ct.blocks() {
        *counts.entry(block).or_insert(0u64) += 1;
    }
    let total = ct.len() as u64;
    let entries = counts
        .into_iter()
        .map(|(block, count)| BlockCount {
            block,
            count,
            frequency: count as f64 / total as f64,
        })
        .collect();
    Ok(BlockDistribution { entries, total })
}

#[inline]
fn sub_mod(a: u64, b: u64, q: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        q - (b - a)
    }
}

/// Every offset under which all blocks decode into `[0, m_max]`, ascending.
pub fn feasible_offsets(ct: &Ciphertext, m_max: u64) -> Result<Vec<u64>> {
    if ct.is_empty() {
        return Err(Error::EmptyCiphertext);
    }
    let q = ct.q();
    let mut distinct = ct.blocks().to_vec();
    distinct.sort_unstable();
    distinct.dedup();

    // Any feasible offset is (first - v) mod q for some symbol v.
    let anchor = distinct[0];
    let widest = m_max.min(q - 1);
    let mut offsets: Vec<u64> = (0..=widest)
        .map(|v| sub_mod(anchor, v, q))
        .filter(|&t| distinct.iter().all(|&b| sub_mod(b, t, q) <= m_max))
        .collect();
    offsets.sort_unstable();

    if offsets.is_empty() {
        return Err(Error::NoFeasibleOffset { m_max });
    }
    Ok(offsets)
}

/// Subtracts `offset` from every block.
pub fn decode_with_offset(ct: &Ciphertext, offset: u64) -> Plaintext {
    let q = ct.q();
    let offset = offset % q;
    Plaintext(ct.blocks().iter().map(|&b| sub_mod(b, offset, q)).collect())
}

fn is_printable(symbol: u64) -> bool {
    (9..=13).contains(&symbol) || (32..=126).contains(&symbol)
}

/// Score of a decoded symbol sequence, with the number of alphabet
/// letters it contains.
///
/// Letters are case-folded and compared with the model by chi-squared.
/// Printable non-letters are ignored. Each non-printable symbol adds
/// [`PENALTY_FACTOR`] times the alphabet size, as does each letter the
/// model gives zero probability. A decoding with no letters at all scores
/// the penalty once per symbol in place of the statistic.
pub fn score_symbols(symbols: &[u64], model: &FrequencyTable) -> (f64, usize) {
    let penalty = PENALTY_FACTOR * model.len() as f64;
    let mut observed = vec![0u64; model.len()];
    let mut letters = 0usize;
    let mut penalties = 0u64;
    for &s in symbols {
        if !is_printable(s) {
            penalties += 1;
        } else if let Some(i) = model.index_of(s as u8 as char) {
            observed[i] += 1;
            letters += 1;
        }
    }
    if letters == 0 {
        return ((penalties + symbols.len() as u64) as f64 * penalty, 0);
    }

    let mut chi2 = 0.0;
    for (i, &o) in observed.iter().enumerate() {
        let expected = model.frequency_at(i) * letters as f64;
        if expected > 0.0 {
            let d = o as f64 - expected;
            chi2 += d * d / expected;
        } else {
            penalties += o;
        }
    }
    (chi2 + penalties as f64 * penalty, letters)
}

pub fn score_offset(ct: &Ciphertext, offset: u64, model: &FrequencyTable) -> f64 {
    score_symbols(&decode_with_offset(ct, offset).0, model).0
}

/// Scores every feasible offset and ranks them.
pub fn recover(ct: &Ciphertext, model: &FrequencyTable, m_max: u64) -> Result<AttackReport> {
    let distribution = frequency_distribution(ct)?;
    let mut candidates: Vec<OffsetCandidate> = feasible_offsets(ct, m_max)?
        .into_iter()
        .map(|offset| {
            let plaintext = decode_with_offset(ct, offset);
            let (score, letters) = score_symbols(&plaintext.0, model);
            OffsetCandidate { offset, score, letters, plaintext }
        })
        .collect();
    candidates.sort_by(|a, b| a.score.total_cmp(&b.score).then(a.offset.cmp(&b.offset)));
    let low_confidence = candidates[0].letters < LOW_CONFIDENCE_LETTERS;
    Ok(AttackReport { distribution, candidates, low_confidence })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freqmodel::build_table;

    fn brute_force_offsets(ct: &Ciphertext, m_max: u64) -> Vec<u64> {
        let q = ct.q();
        (0..q)
            .filter(|&t| ct.blocks().iter().all(|&b| (b + q - t) % q <= m_max))
            .collect()
    }

    #[test]
    fn distribution_of_one_block() {
        let ct = Ciphertext::new(97, vec![42]).unwrap();
        let d = frequency_distribution(&ct).unwrap();
        assert_eq!(d.entries, vec![BlockCount { block: 42, count: 1, frequency: 1.0 }]);
        assert_eq!(d.total, 1);
    }

    #[test]
    fn empty_inputs() {
        let ct = Ciphertext::new(97, vec![]).unwrap();
        assert_eq!(frequency_distribution(&ct), Err(Error::EmptyCiphertext));
        assert_eq!(feasible_offsets(&ct, 255), Err(Error::EmptyCiphertext));
    }

    #[test]
    fn two_block_window() {
        let q = 5003;
        let ct = Ciphertext::new(q, vec![5, 10]).unwrap();
        let expected = brute_force_offsets(&ct, 255);
        // {(10 - 255) mod q, ..., q - 1} ∪ {0, ..., 5}
        let mut interval: Vec<u64> = ((10 + q - 255)..q).chain(0..=5).collect();
        interval.sort_unstable();
        assert_eq!(expected, interval);
        assert_eq!(feasible_offsets(&ct, 255).unwrap(), expected);
    }

    #[test]
    fn windows_match_brute_force() {
        let cases: &[(u64, &[u64], u64)] = &[
            (1009, &[1000, 3, 500], 600),
            (1009, &[0, 1008], 10),
            (263, &[1, 2, 3], 255),
            (263, &[1, 2, 3], 300),
            (7, &[1, 4], 2),
        ];
        for &(q, blocks, m_max) in cases {
            let ct = Ciphertext::new(q, blocks.to_vec()).unwrap();
            let expected = brute_force_offsets(&ct, m_max);
            match feasible_offsets(&ct, m_max) {
                Ok(got) => assert_eq!(got, expected, "q={q} blocks={blocks:?}"),
                Err(e) => assert!(expected.is_empty(), "{e}"),
            }
        }
    }

    #[test]
    fn too_wide_a_spread() {
        let ct = Ciphertext::new(1_000_003, vec![10, 300, 600]).unwrap();
        assert_eq!(feasible_offsets(&ct, 255), Err(Error::NoFeasibleOffset { m_max: 255 }));
    }

    #[test]
    fn perfect_fit_scores_zero() {
        let model = build_table("e", &['e']).unwrap();
        let (score, letters) = score_symbols(&[101, 101, 69, 101], &model);
        assert_eq!((score, letters), (0.0, 4));

        let latin = build_table("eeee", &crate::freqmodel::latin_alphabet()).unwrap();
        assert_eq!(score_symbols(b"eeee".map(u64::from).as_slice(), &latin).0, 0.0);
    }

    #[test]
    fn garbage_pays_the_penalty() {
        let model = FrequencyTable::english();
        let penalty = PENALTY_FACTOR * 26.0;
        let junk = [0u64, 1, 2, 200, 255, 127];
        assert!(score_symbols(&junk, &model).0 >= junk.len() as f64 * penalty);
    }

    #[test]
    fn zero_probability_letters_are_penalised() {
        let model = build_table("aaa", &['a', 'b']).unwrap();
        let penalty = PENALTY_FACTOR * 2.0;
        let (score, _) = score_symbols(&[97, 98], &model);
        // chi2 over 'a': (1 - 2)^2 / 2, plus one penalty for 'b'
        assert_eq!(score, 0.5 + penalty);
    }

    #[test]
    fn ranking_and_ties() {
        // every symbol decodes to a letter-free printable byte under many offsets
        let ct = Ciphertext::new(10_007, vec![500; 5]).unwrap();
        let report = recover(&ct, &FrequencyTable::english(), 255).unwrap();
        assert_eq!(report.candidates.len(), 256);
        for pair in report.candidates.windows(2) {
            let (a, b) = (&pair[0], &pair[1]);
            assert!(a.score < b.score || (a.score == b.score && a.offset < b.offset));
        }
        assert!(report.low_confidence);
    }
}
