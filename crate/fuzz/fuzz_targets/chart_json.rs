#![no_main]

use libfuzzer_sys::fuzz_target;
use parity_groups::abelian::Chart;

fuzz_target!(|data: &[u8]| {
    if let Ok(c) = serde_json::from_slice::<Chart>(data) {
        let text = serde_json::to_string(&c).unwrap();
        assert_eq!(serde_json::from_str::<Chart>(&text).unwrap(), c);
        let _ = c.add(&c);
    }
});
