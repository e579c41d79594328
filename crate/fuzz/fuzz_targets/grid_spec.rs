#![no_main]

use libfuzzer_sys::fuzz_target;
use spiked_runner::grid::{parse_grid, parse_interval};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(grid) = parse_grid(text) {
        let points = grid.points();
        assert_eq!(points.len(), grid.count);
        assert!(points.windows(2).all(|w| w[0] <= w[1]));
        assert_eq!(parse_grid(&grid.to_string()), Ok(grid));
    }
    let _ = parse_interval(text);
});
