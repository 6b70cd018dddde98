#![no_main]

use libfuzzer_sys::fuzz_target;
use parity_groups::abelian::{chart, RationalVector};
use parity_groups::PartitionSpec;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(v) = text.parse::<RationalVector>() {
        assert_eq!(v.to_string().parse::<RationalVector>().unwrap(), v);
        if !v.is_empty() && v.len() <= 64 {
            let j = PartitionSpec::from_sizes(&[v.len()]).unwrap();
            let _ = chart(&v, &j).unwrap();
        }
    }
});
