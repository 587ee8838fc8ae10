//! The ITRU cryptosystem over the integers.
//!
//! Keys are plain integers. With a small modulus `p`, a secret unit `f`
//! of `Z_p` and a secret `g`, the large prime `q` is chosen above
//! `p * r_max * g + m_max * f`. The public value is `h = p * f^-1 * g mod q`
//! and a message symbol `m` encrypts to `r * h + m mod q`. Decryption
//! multiplies by `f` modulo `q`, which leaves the unreduced integer
//! `r * p * g + f * m`, and then by `f^-1` modulo `p`, which leaves `m`.
//!
//! One blinding value `r` is drawn per message and shared by every symbol,
//! so every block of a ciphertext carries the same additive offset
//! `r * h mod q`. The [`attack`](crate::attack) module exploits exactly that.

use crate::error::{Error, Result};
use crate::numtheory::{gcd, is_prime, mod_inverse, mul_mod, next_prime, sample_invertible, sample_range, SeededRng};

/// Range `g` is drawn from during key generation.
pub const G_RANGE: (u64, u64) = (2, 1000);

/// Public scheme parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SystemParams {
    /// Small modulus.
    pub p: u64,
    /// Largest blinding value a sender may use.
    pub r_max: u64,
    /// Largest plaintext symbol.
    pub m_max: u64,
}

impl Default for SystemParams {
    fn default() -> Self {
        SystemParams {
            p: 1000,
            r_max: 8,
            m_max: 255,
        }
    }
}

impl SystemParams {
    pub fn validate(&self) -> Result<()> {
        if self.p < 3 {
            return Err(Error::InvalidParams(format!("p = {} must be at least 3", self.p)));
        }
        if self.r_max < 1 {
            return Err(Error::InvalidParams("r_max must be at least 1".into()));
        }
        if self.m_max < 1 || self.m_max >= self.p {
            return Err(Error::InvalidParams(format!(
                "m_max = {} must lie in [1, p - 1] = [1, {}]",
                self.m_max,
                self.p - 1
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PublicKey {
    pub q: u64,
    pub h: u64,
    pub r_max: u64,
    pub m_max: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrivateKey {
    pub p: u64,
    pub q: u64,
    pub f: u64,
    /// `f^-1 mod p`.
    pub f_p: u64,
    pub g: u64,
    pub r_max: u64,
    pub m_max: u64,
}

impl PrivateKey {
    pub fn params(&self) -> SystemParams {
        SystemParams {
            p: self.p,
            r_max: self.r_max,
            m_max: self.m_max,
        }
    }

    /// Checks every relation a well-formed key satisfies.
    pub fn validate(&self) -> Result<()> {
        self.params().validate()?;
        if self.f < 2 || self.f >= self.p || gcd(self.f, self.p) != 1 {
            return Err(Error::InvalidSecret(format!("f = {} is not a unit in [2, p)", self.f)));
        }
        if mul_mod(self.f, self.f_p, self.p) != 1 {
            return Err(Error::InvalidSecret("f * fp is not 1 mod p".into()));
        }
        if self.g < 2 {
            return Err(Error::InvalidSecret(format!("g = {} must be at least 2", self.g)));
        }
        if !is_prime(self.q) {
            return Err(Error::InvalidParams(format!("q = {} is not prime", self.q)));
        }
        if self.q <= decryption_bound(&self.params(), self.f, self.g)? {
            return Err(Error::InvalidParams("q is too small for exact decryption".into()));
        }
        Ok(())
    }

    /// The matching public key.
    pub fn public_key(&self) -> Result<PublicKey> {
        let f_q = mod_inverse(self.f, self.q)?;
        Ok(PublicKey {
            q: self.q,
            h: mul_mod(mul_mod(self.p % self.q, f_q, self.q), self.g % self.q, self.q),
            r_max: self.r_max,
            m_max: self.m_max,
        })
    }
}

/// Symbols of a message, each in `[0, m_max]`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Plaintext(pub Vec<u64>);

impl Plaintext {
    pub fn from_bytes(bytes: &[u8]) -> Self {
        Plaintext(bytes.iter().map(|&b| b as u64).collect())
    }

    /// The symbols as bytes, if they all fit.
    pub fn to_bytes(&self) -> Option<Vec<u8>> {
        self.0.iter().map(|&s| u8::try_from(s).ok()).collect()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn check_bound(&self, m_max: u64) -> Result<()> {
        match self.0.iter().position(|&s| s > m_max) {
            Some(index) => Err(Error::SymbolOutOfRange {
                index,
                value: self.0[index],
                m_max,
            }),
            None => Ok(()),
        }
    }
}

/// Residues modulo `q`, one per plaintext symbol.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ciphertext {
    q: u64,
    blocks: Vec<u64>,
}

impl Ciphertext {
    pub fn new(q: u64, blocks: Vec<u64>) -> Result<Self> {
        if q < 2 {
            return Err(Error::InvalidModulus(q));
        }
        if let Some(index) = blocks.iter().position(|&b| b >= q) {
            return Err(Error::BlockOutOfRange {
                index,
                value: blocks[index],
                q,
            });
        }
        Ok(Ciphertext { q, blocks })
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn blocks(&self) -> &[u64] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }
}

/// Fixed secrets for key generation. Only useful for reproducing known keys.
#[derive(Debug, Clone, Copy, Default)]
pub struct SecretOverrides {
    pub f: Option<u64>,
    pub g: Option<u64>,
}

/// `p * r_max * g + m_max * f`, the largest value `a = f * e mod q` may take.
fn decryption_bound(params: &SystemParams, f: u64, g: u64) -> Result<u64> {
    let overflow = || Error::Overflow("p * r_max * g + m_max * f");
    params
        .p
        .checked_mul(params.r_max)
        .and_then(|x| x.checked_mul(g))
        .and_then(|x| x.checked_add(params.m_max.checked_mul(f)?))
        .ok_or_else(overflow)
}

pub fn keygen(params: &SystemParams, rng: &mut SeededRng) -> Result<(PublicKey, PrivateKey)> {
    keygen_with(params, rng, SecretOverrides::default())
}

/// Key generation, with optionally fixed `f` and `g`.
pub fn keygen_with(
    params: &SystemParams,
    rng: &mut SeededRng,
    overrides: SecretOverrides,
) -> Result<(PublicKey, PrivateKey)> {
    params.validate()?;
    let p = params.p;

    let f = match overrides.f {
        Some(f) if !(2..p).contains(&f) => {
            return Err(Error::InvalidSecret(format!("f = {f} outside [2, {p})")));
        }
        Some(f) if gcd(f, p) != 1 => return Err(Error::NotInvertible { value: f, modulus: p }),
        Some(f) => f,
        None => sample_invertible(p, rng)?,
    };
    let g = match overrides.g {
        Some(g) if g < 2 => return Err(Error::InvalidSecret(format!("g = {g} must be at least 2"))),
        Some(g) => g,
        None => sample_range(G_RANGE.0, G_RANGE.1, rng)?,
    };

    let bound = decryption_bound(params, f, g)?;
    let q = next_prime(bound)?;
    assert!(q > bound);

    let private = PrivateKey {
        p,
        q,
        f,
        f_p: mod_inverse(f, p)?,
        g,
        r_max: params.r_max,
        m_max: params.m_max,
    };
    let public = private.public_key()?;
    Ok((public, private))
}

/// Encrypts every symbol under the same blinding value `r`.
pub fn encrypt(pk: &PublicKey, r: u64, msg: &Plaintext) -> Result<Ciphertext> {
    if r < 1 || r > pk.r_max {
        return Err(Error::BlindingOutOfRange { r, r_max: pk.r_max });
    }
    if msg.is_empty() {
        return Err(Error::EmptyMessage);
    }
    msg.check_bound(pk.m_max)?;
    let offset = mul_mod(r, pk.h, pk.q);
    let blocks = msg.0.iter().map(|&m| ((offset as u128 + m as u128) % pk.q as u128) as u64).collect();
    Ciphertext::new(pk.q, blocks)
}

/// Encrypts with `r` drawn uniformly from `[1, r_max]`. Returns the `r` used.
pub fn encrypt_random(pk: &PublicKey, msg: &Plaintext, rng: &mut SeededRng) -> Result<(Ciphertext, u64)> {
    let r = sample_range(1, pk.r_max, rng)?;
    Ok((encrypt(pk, r, msg)?, r))
}

pub fn decrypt(sk: &PrivateKey, ct: &Ciphertext) -> Result<Plaintext> {
    if ct.q() != sk.q {
        return Err(Error::ModulusMismatch {
            key: sk.q,
            ciphertext: ct.q(),
        });
    }
    let symbols = ct
        .blocks()
        .iter()
        .map(|&e| {
            let a = mul_mod(sk.f, e, sk.q);
            mul_mod(sk.f_p, a % sk.p, sk.p)
        })
        .collect();
    Ok(Plaintext(symbols))
}

/// Code point of every character. Fails on the first one above `m_max`.
pub fn encode_text(s: &str, m_max: u64) -> Result<Plaintext> {
    s.chars()
        .enumerate()
        .map(|(index, ch)| {
            let code = ch as u64;
            if code > m_max {
                Err(Error::UnencodableCharacter { index, ch, m_max })
            } else {
                Ok(code)
            }
        })
        .collect::<Result<_>>()
        .map(Plaintext)
}

pub fn decode_text(pt: &Plaintext) -> Result<String> {
    pt.0.iter()
        .enumerate()
        .map(|(index, &value)| {
            u32::try_from(value)
                .ok()
                .and_then(char::from_u32)
                .ok_or(Error::UndecodableSymbol { index, value })
        })
        .collect()
}
