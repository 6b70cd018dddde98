#![no_main]

use libfuzzer_sys::fuzz_target;
use parity_groups::lie::{odo_decompose, ComplexMatrix, Tolerances};

fuzz_target!(|data: &[u8]| {
    if let Ok(u) = serde_json::from_slice::<ComplexMatrix>(data) {
        let text = serde_json::to_string(&u).unwrap();
        assert_eq!(serde_json::from_str::<ComplexMatrix>(&text).unwrap(), u);
        // non-unitary input must be rejected, never panic
        let _ = odo_decompose(&u, &Tolerances::default());
    }
});
