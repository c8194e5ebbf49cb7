#![no_main]

use libfuzzer_sys::fuzz_target;
use mpav::golden::GoldenTable;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(t) = s.parse::<GoldenTable>() {
        let again: GoldenTable = t.to_string().parse().expect("canonical form parses");
        assert_eq!(again, t);
    }
});
