use sha2::{Digest, Sha256};
use vtrans::tables;

// Update deliberately when the table layout changes.
const DUMP_SHA256: &str = "ff9b6fff3841f07493fe96ffb14bca6d76a9c9b77151cb822901059e0677841d";

#[test]
fn dump_is_stable() {
    let dump = tables::tables().dump();
    let digest = hex::encode(Sha256::digest(dump.as_bytes()));
    assert_eq!(digest, DUMP_SHA256, "table dump changed");
}

#[test]
fn dump_is_deterministic_and_complete() {
    let a = tables::Tables::build().dump();
    assert_eq!(a, tables::tables().dump());
    let count = |prefix: &str| a.lines().filter(|l| l.starts_with(prefix)).count();
    assert_eq!(count("main "), 4096);
    assert_eq!(count("mask "), tables::tables().utf8.masks.len());
    assert_eq!(count("pack2 "), 256);
    assert_eq!(count("pack3 "), 256);
}
