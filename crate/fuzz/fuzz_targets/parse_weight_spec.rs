#![no_main]

use bandspec_core::parse::parse_weight_spec;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(v) = parse_weight_spec(text) else {
        return;
    };
    // anything that parses must have usable ratio data or refuse cleanly
    if let Ok(asym) = v.ratio_asymptotics() {
        assert!(asym.liminf <= asym.limsup);
        assert!(asym.limsup <= asym.sup);
    }
});
