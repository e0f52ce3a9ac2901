//! Brute-force reference implementations used to cross-check the library,
//! plus the acceptance suite under `tests/`.

pub mod oracle;
