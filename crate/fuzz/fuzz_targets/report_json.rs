#![no_main]

use circsing::singexact::ProbabilityReport;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(r) = ProbabilityReport::from_json(s) {
        let _ = ProbabilityReport::from_json(&r.to_json()).expect("round trip");
    }
});
