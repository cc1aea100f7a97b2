#![no_main]

use circsing::polycyc::IntPolynomial;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(p) = IntPolynomial::from_json(s) {
        assert_eq!(IntPolynomial::from_json(&p.to_json()).expect("round trip"), p);
    }
});
