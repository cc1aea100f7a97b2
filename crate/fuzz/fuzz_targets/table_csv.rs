#![no_main]

use circsing::io::{read_table_csv, table_csv_string};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(rows) = read_table_csv(data) {
        // NaN never equals itself; compare the re-emitted text instead.
        let text = table_csv_string(&rows);
        let again = read_table_csv(text.as_bytes()).expect("own output parses");
        assert_eq!(table_csv_string(&again), text);
    }
});
