#![no_main]

use libfuzzer_sys::fuzz_target;
use spiked_runner::config::parse_config;
use spiked_runner::{merge_config_text, parse_tokens};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if parse_config(text).is_err() {
        return;
    }
    // a parsed file must merge and then either parse or fail cleanly
    if let Ok(tokens) = merge_config_text(vec!["spiked".into()], "fuzz.cfg", text) {
        let _ = parse_tokens(tokens);
    }
});
