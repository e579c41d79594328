#![no_main]

use libfuzzer_sys::fuzz_target;
use spiked_runner::parse_tokens;

// Tokens are separated by NUL bytes, mirroring how argv reaches a process.
fuzz_target!(|data: &[u8]| {
    let tokens = std::iter::once("spiked".to_string())
        .chain(data.split(|&b| b == 0).map(|t| String::from_utf8_lossy(t).into_owned()));
    let _ = parse_tokens(tokens);
});
