#![no_main]

use bandspec::config::RunConfig;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(config) = RunConfig::from_json(text) else {
        return;
    };
    // validation must reject or accept, never panic
    let _ = config.validate();
});
