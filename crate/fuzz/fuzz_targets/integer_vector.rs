#![no_main]

use libfuzzer_sys::fuzz_target;
use parity_groups::abelian::{membership, IntegerVector, Sublattice};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(v) = text.parse::<IntegerVector>() {
        assert_eq!(v.to_string().parse::<IntegerVector>().unwrap(), v);
        let _ = membership(&v, &Sublattice::A).unwrap();
        let _ = membership(&v, &Sublattice::B).unwrap();
    }
});
