//! The ITRU public-key cryptosystem over the ring of integers, and a
//! ciphertext-only attack that recovers plaintext from the public key and
//! ciphertext alone.
//!
//! ```
//! use itru::{decrypt, encode_text, encrypt, keygen, recover, FrequencyTable, SeededRng, SystemParams};
//!
//! let mut rng = SeededRng::new(7);
//! let (pk, sk) = keygen(&SystemParams::default(), &mut rng).unwrap();
//!
//! let text = "Alice was beginning to get very tired of sitting by her sister on the bank";
//! let ct = encrypt(&pk, 5, &encode_text(text, pk.m_max).unwrap()).unwrap();
//! assert_eq!(decrypt(&sk, &ct).unwrap(), encode_text(text, 255).unwrap());
//!
//! // No private key needed.
//! let report = recover(&ct, &FrequencyTable::english(), pk.m_max).unwrap();
//! assert_eq!(report.chosen().offset, 5 * pk.h % pk.q);
//! ```

pub mod attack;
pub mod error;
pub mod format;
pub mod freqmodel;
pub mod numtheory;
pub mod report;
pub mod scheme;

pub use attack::{
    decode_with_offset, feasible_offsets, frequency_distribution, recover, score_offset, AttackReport,
    BlockCount, BlockDistribution, OffsetCandidate,
};
pub use error::{Error, Result};
pub use freqmodel::{build_table, latin_alphabet, load_table, save_table, FrequencyTable};
pub use numtheory::{is_prime, mod_inverse, next_prime, sample_invertible, sample_range, SeededRng};
pub use scheme::{
    decode_text, decrypt, encode_text, encrypt, encrypt_random, keygen, keygen_with, Ciphertext, Plaintext,
    PrivateKey, PublicKey, SecretOverrides, SystemParams,
};
