#![no_main]

use libfuzzer_sys::fuzz_target;
use parity_groups::PartitionSpec;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(j) = text.parse::<PartitionSpec>() {
        assert_eq!(j.to_string().parse::<PartitionSpec>().unwrap(), j);
        assert_eq!(j.block_sizes().iter().sum::<usize>(), j.degree());
    }
});
