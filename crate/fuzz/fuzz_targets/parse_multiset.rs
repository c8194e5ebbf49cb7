#![no_main]

use libfuzzer_sys::fuzz_target;
use mpav::MultisetShape;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(shape) = s.parse::<MultisetShape>() {
        assert_eq!(shape.to_string().parse::<MultisetShape>().unwrap(), shape);
        assert_eq!(shape.sorted_word().len(), shape.size());
    }
});
