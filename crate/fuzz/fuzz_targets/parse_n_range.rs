#![no_main]

use circsing::io::NRange;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(r) = s.parse::<NRange>() {
        assert!(r.step > 0 && r.start <= r.end);
        let mut it = r.values();
        assert_eq!(it.next(), Some(r.start));
        assert!(r.len() >= 1);
    }
});
