#![no_main]

use libfuzzer_sys::fuzz_target;
use parity_groups::lie::{factor_monomial, RationalMatrix};

fuzz_target!(|data: &[u8]| {
    if let Ok(m) = serde_json::from_slice::<RationalMatrix>(data) {
        let text = serde_json::to_string(&m).unwrap();
        assert_eq!(serde_json::from_str::<RationalMatrix>(&text).unwrap(), m);
        if let Ok(f) = factor_monomial(&m) {
            assert_eq!(f.reconstruct(), m);
        }
    }
});
