use itru::attack::score_offset;
use itru::{
    decode_text, encode_text, encrypt, feasible_offsets, frequency_distribution, keygen_with, recover,
    FrequencyTable, PublicKey, SecretOverrides, SeededRng, SystemParams,
};

const PARAGRAPH: &str = include_str!("../data/itru-paragraph.txt");

fn paragraph_key() -> PublicKey {
    PublicKey { q: 1_104_427, h: 37_619, r_max: 8, m_max: 255 }
}

#[test]
fn paragraph_fixture_shape() {
    assert_eq!(PARAGRAPH.len(), 447);
    assert!(PARAGRAPH.starts_with("Thegoalofthisstudy"));
    assert!(PARAGRAPH.ends_with("incomparisontoNTRU."));
    assert_eq!(8 * 37_619, 300_952);
}

#[test]
fn paragraph_distribution() {
    let ct = encrypt(&paragraph_key(), 8, &encode_text(PARAGRAPH, 255).unwrap()).unwrap();
    let dist = frequency_distribution(&ct).unwrap();
    assert_eq!(dist.distinct(), 32);
    assert_eq!(dist.entries.first().unwrap().block, 300_992);
    assert_eq!(dist.entries.last().unwrap().block, 301_073);
    let top = dist.most_frequent();
    assert_eq!((top.block, top.count), (301_053, 49));
    assert!((top.frequency - 0.109619686800895).abs() <= 1e-12);
    let smallest = dist.entries.iter().map(|e| e.frequency).fold(1.0, f64::min);
    assert_eq!(smallest, 1.0 / 447.0);
    let sum: f64 = dist.entries.iter().map(|e| e.frequency).sum();
    assert!((sum - 1.0).abs() <= 1e-12);
}

#[test]
fn paragraph_attack() {
    let ct = encrypt(&paragraph_key(), 8, &encode_text(PARAGRAPH, 255).unwrap()).unwrap();
    let model = FrequencyTable::english();

    let offsets = feasible_offsets(&ct, 255).unwrap();
    assert!(offsets.contains(&300_952));
    // The three anchors tried by hand ('e', 'a', 't' for the top block).
    for letter in *b"eat" {
        assert!(offsets.contains(&(301_053 - letter as u64)));
    }

    let right = score_offset(&ct, 300_952, &model);
    for neighbour in [300_951, 300_953] {
        assert!(offsets.contains(&neighbour));
        assert!(right < score_offset(&ct, neighbour, &model));
    }

    let report = recover(&ct, &model, 255).unwrap();
    let chosen = report.chosen();
    assert_eq!(chosen.offset, 300_952);
    assert_eq!(&chosen.plaintext.0[..9], &[84, 104, 101, 103, 111, 97, 108, 111, 102]);
    assert_eq!(decode_text(&chosen.plaintext).unwrap(), PARAGRAPH);
    assert!(!report.low_confidence);
}

#[test]
fn short_ciphertext_contains_true_offset() {
    let (pk, _) = keygen_with(
        &SystemParams::default(),
        &mut SeededRng::new(0),
        SecretOverrides { f: Some(73), g: Some(771) },
    )
    .unwrap();
    let ct = encrypt(&pk, 8, &encode_text("Cryptanalysis", 255).unwrap()).unwrap();
    assert_eq!(8 * 180_058, 1_440_464); // already below q
    assert_eq!(1_440_531 - 1_440_464, 67);

    let report = recover(&ct, &FrequencyTable::english(), 255).unwrap();
    assert!(report.candidates.iter().any(|c| c.offset == 1_440_464));
    assert!(report.low_confidence);
}
