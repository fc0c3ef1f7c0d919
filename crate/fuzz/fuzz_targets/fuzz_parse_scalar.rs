#![no_main]

use libfuzzer_sys::fuzz_target;
use m2pn_cli::scalar::parse_scalar;

// The scalar token decoder must reject garbage without panicking,
// including overlong digits, stray signs, and division tokens.
fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        let _ = parse_scalar(text);
    }
});
