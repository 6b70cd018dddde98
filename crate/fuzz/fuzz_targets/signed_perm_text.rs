#![no_main]

use libfuzzer_sys::fuzz_target;
use parity_groups::SignedPermutation;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(g) = text.parse::<SignedPermutation>() {
        assert_eq!(g.to_string().parse::<SignedPermutation>().unwrap(), g);
        assert_eq!(SignedPermutation::from_matrix(&g.to_matrix()).unwrap(), g);
    }
});
