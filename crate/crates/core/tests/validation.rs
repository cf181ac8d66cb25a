mod common;

use common::{backends, oracle_first_error, oracle_utf16_to_utf8};
use vtrans::validate::{self, Utf8BlockState};

#[test]
fn whole_input_agrees_with_rules_up_to_two_bytes() {
    for be in backends() {
        for a in 0..=255u8 {
            assert_eq!(validate::validate_utf8_with(be, &[a]), oracle_first_error(&[a]).is_none());
            for b in 0..=255u8 {
                let s = [a, b];
                assert_eq!(validate::validate_utf8_with(be, &s), oracle_first_error(&s).is_none(), "{s:02x?}");
            }
        }
    }
}

#[test]
fn block_composition_with_seam_in_every_phase() {
    let samples = ["é", "鏡", "😀", "\u{10FFFF}", "\u{FFFF}"];
    for s in samples {
        let enc = s.as_bytes();
        for start in 60..64 {
            let mut buf = vec![b' '; 128];
            buf[start..start + enc.len()].copy_from_slice(enc);
            for be in backends() {
                let (ok, st) = validate::validate_utf8_block_with(be, buf[..64].try_into().unwrap(), Utf8BlockState::default());
                let (ok2, st2) = validate::validate_utf8_block_with(be, buf[64..].try_into().unwrap(), st);
                assert!(ok && ok2 && st2.finalize(), "{s} at {start}");
                // drop the final byte of the character: must fail
                if start + enc.len() > 64 {
                    let mut bad = buf.clone();
                    bad[start + enc.len() - 1] = b' ';
                    let (ok, st) = validate::validate_utf8_block_with(be, bad[..64].try_into().unwrap(), Utf8BlockState::default());
                    let (ok2, _) = validate::validate_utf8_block_with(be, bad[64..].try_into().unwrap(), st);
                    assert!(!(ok && ok2), "{s} at {start} truncated");
                }
            }
        }
    }
}

#[test]
fn incomplete_at_end_of_input() {
    let mut block = [b'a'; 64];
    block[62] = 0xE9;
    block[63] = 0x8F;
    let (ok, st) = validate::validate_utf8_block(&block, Utf8BlockState::default());
    assert!(ok);
    assert!(!st.finalize());
    assert!(!validate::validate_utf8(&block));
}

#[test]
fn utf16_pairs_over_class_representatives() {
    let reps = [0x0041u16, 0x93E1, 0xFFFF, 0xD800, 0xDBFF, 0xDC00, 0xDFFF];
    for be in backends() {
        for &a in &reps {
            for &b in &reps {
                let units = [a, b];
                let got = validate::validate_utf16_with(be, &units).err().map(|e| e.at);
                assert_eq!(got, oracle_utf16_to_utf8(&units).1, "{units:04x?}");
            }
        }
    }
}
