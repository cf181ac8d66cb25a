// Checking UTF-8 and UTF-16 without converting, whole-buffer or one 64-byte
// block at a time.

use std::error::Error;

use vtrans::validate::{self, Utf8BlockState};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    assert!(validate::validate_utf8("naïve text".as_bytes()));
    // a UTF-8 encoded surrogate is rejected
    assert!(!validate::validate_utf8(&[0xED, 0xA0, 0x80]));
    // so is anything above U+10FFFF
    assert!(!validate::validate_utf8(&[0xF4, 0x90, 0x80, 0x80]));

    // Streaming: state carries the last bytes of each block into the next.
    let text = "ж".repeat(64);
    let bytes = text.as_bytes();
    let mut state = Utf8BlockState::default();
    for block in bytes.chunks_exact(64) {
        let (ok, next) = validate::validate_utf8_block(block.try_into()?, state);
        assert!(ok);
        state = next;
    }
    assert!(state.finalize(), "no character left dangling");

    // Cut the text in the middle of a character and the final check fails.
    let mut block = [b' '; 64];
    block[63] = 0xD0;
    let (ok, state) = validate::validate_utf8_block(&block, Utf8BlockState::default());
    println!("block ending in a lead byte: ok={ok}, complete={}", state.finalize());

    assert!(validate::validate_utf16(&[0xD800, 0xDC00]).is_ok());
    let err = validate::validate_utf16(&[0xDC00, 0xD800]).unwrap_err();
    println!("reversed surrogate pair rejected at unit {}", err.at);
    Ok(())
}

fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
