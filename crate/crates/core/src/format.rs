//! Line-oriented text formats for keys and ciphertexts.
//!
//! Every file starts with a magic line, followed by LF-terminated
//! `name value` lines holding decimal integers:
//!
//! ```text
//! itru-public v1        itru-private v1       itru-ct v1
//! q 6186617             p 1000                q 6186617
//! h 180058              q 6186617             1440531
//! rmax 8                f 73                  1440578
//! mmax 255              fp 137                ...
//!                       g 771
//!                       rmax 8
//!                       mmax 255
//! ```
//!
//! Ciphertext files carry one block per line after the `q` line. Parsers
//! reject unknown magic, unknown or repeated fields, missing fields, and
//! blocks that are not below `q`. Blank lines and a trailing CR are ignored.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::scheme::{Ciphertext, PrivateKey, PublicKey};

pub const PUBLIC_MAGIC: &str = "itru-public v1";
pub const PRIVATE_MAGIC: &str = "itru-private v1";
pub const CIPHERTEXT_MAGIC: &str = "itru-ct v1";

const PUBLIC_FIELDS: [&str; 4] = ["q", "h", "rmax", "mmax"];
const PRIVATE_FIELDS: [&str; 7] = ["p", "q", "f", "fp", "g", "rmax", "mmax"];

pub fn write_public_key(pk: &PublicKey) -> String {
    format!(
        "{PUBLIC_MAGIC}\nq {}\nh {}\nrmax {}\nmmax {}\n",
        pk.q, pk.h, pk.r_max, pk.m_max
    )
}

pub fn write_private_key(sk: &PrivateKey) -> String {
    format!(
        "{PRIVATE_MAGIC}\np {}\nq {}\nf {}\nfp {}\ng {}\nrmax {}\nmmax {}\n",
        sk.p, sk.q, sk.f, sk.f_p, sk.g, sk.r_max, sk.m_max
    )
}

pub fn write_ciphertext(ct: &Ciphertext) -> String {
    let mut out = format!("{CIPHERTEXT_MAGIC}\nq {}\n", ct.q());
    for block in ct.blocks() {
        writeln!(out, "{block}").unwrap();
    }
    out
}

/// Non-blank lines with their 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, line)| (i + 1, line.trim_end_matches('\r')))
        .filter(|(_, line)| !line.trim().is_empty())
}

fn expect_magic<'a>(
    lines: &mut impl Iterator<Item = (usize, &'a str)>,
    magic: &str,
) -> Result<()> {
    match lines.next() {
        Some((_, line)) if line.trim() == magic => Ok(()),
        Some((n, line)) => Err(Error::malformed(n, format!("expected {magic:?}, found {line:?}"))),
        None => Err(Error::malformed(1, format!("empty file, expected {magic:?}"))),
    }
}

fn parse_number(line: usize, value: &str) -> Result<u64> {
    value
        .parse()
        .map_err(|_| Error::malformed(line, format!("{value:?} is not a decimal integer")))
}

/// Reads `name value` pairs for exactly the listed fields, in any order.
fn parse_fields<const N: usize>(text: &str, magic: &str, names: [&str; N]) -> Result<[u64; N]> {
    let mut lines = content_lines(text);
    expect_magic(&mut lines, magic)?;
    let mut values: [Option<u64>; N] = [None; N];
    let mut last_line = 1;
    for (n, line) in lines {
        last_line = n;
        let mut parts = line.split_whitespace();
        let (Some(name), Some(value), None) = (parts.next(), parts.next(), parts.next()) else {
            return Err(Error::malformed(n, "expected `name value`"));
        };
        let slot = names
            .iter()
            .position(|&known| known == name)
            .ok_or_else(|| Error::malformed(n, format!("unknown field {name:?}")))?;
        if values[slot].is_some() {
            return Err(Error::malformed(n, format!("field {name:?} repeated")));
        }
        values[slot] = Some(parse_number(n, value)?);
    }
    let mut out = [0; N];
    for (i, value) in values.iter().enumerate() {
        out[i] = value.ok_or_else(|| Error::malformed(last_line, format!("missing field {:?}", names[i])))?;
    }
    Ok(out)
}

pub fn parse_public_key(text: &str) -> Result<PublicKey> {
    let [q, h, r_max, m_max] = parse_fields(text, PUBLIC_MAGIC, PUBLIC_FIELDS)?;
    if q < 2 || h == 0 || h >= q {
        return Err(Error::malformed(0, format!("h = {h} must lie in (0, q = {q})")));
    }
    if r_max < 1 {
        return Err(Error::malformed(0, "rmax must be at least 1"));
    }
    Ok(PublicKey { q, h, r_max, m_max })
}

/// Parses and validates a private key.
pub fn parse_private_key(text: &str) -> Result<PrivateKey> {
    let [p, q, f, f_p, g, r_max, m_max] = parse_fields(text, PRIVATE_MAGIC, PRIVATE_FIELDS)?;
    let key = PrivateKey { p, q, f, f_p, g, r_max, m_max };
    key.validate().map_err(|e| Error::malformed(0, e.to_string()))?;
    Ok(key)
}

pub fn parse_ciphertext(text: &str) -> Result<Ciphertext> {
    let mut lines = content_lines(text);
    expect_magic(&mut lines, CIPHERTEXT_MAGIC)?;
    let q = match lines.next() {
        Some((n, line)) => match line.split_whitespace().collect::<Vec<_>>()[..] {
            ["q", value] => parse_number(n, value)?,
            _ => return Err(Error::malformed(n, "expected `q <decimal>`")),
        },
        None => return Err(Error::malformed(1, "missing field \"q\"")),
    };
    if q < 2 {
        return Err(Error::malformed(2, format!("q = {q} is not a modulus")));
    }
    let mut blocks = Vec::new();
    for (n, line) in lines {
        let block = parse_number(n, line.trim())?;
        if block >= q {
            return Err(Error::malformed(n, format!("block {block} is not below q = {q}")));
        }
        blocks.push(block);
    }
    Ciphertext::new(q, blocks)
}
