#![no_main]

use libfuzzer_sys::fuzz_target;
use m2pn_cli::parser::parse_document;

// Parsing and validation must never panic or hang on arbitrary input;
// errors are the expected outcome for almost every mutation.
fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok(doc) = parse_document(text) {
            let _ = doc.validate();
        }
    }
});
