#![no_main]

use circsing::binomstats::QParam;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(q) = s.parse::<QParam>() {
        assert!(q.value() > 0.0 && q.value() < 1.0);
        if let Some(exact) = q.as_exact() {
            let again: QParam = q.to_string().parse().expect("display re-parses");
            assert_eq!(again.as_exact(), Some(exact));
        }
    }
});
