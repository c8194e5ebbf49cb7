#![no_main]

use libfuzzer_sys::fuzz_target;
use mpav::{Pattern, PatternSet};

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(p) = s.parse::<Pattern>() {
        // reduced patterns survive a print/parse round trip
        assert_eq!(p.to_string().parse::<Pattern>().unwrap(), p);
        assert_eq!(p.reverse().reverse(), p);
    }
    if let Ok(set) = s.parse::<PatternSet>() {
        assert_eq!(set.to_string().parse::<PatternSet>().unwrap(), set);
    }
});
