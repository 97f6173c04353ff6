//! Brute-force minimisation of `c_k` over all families of a given size, the
//! equality-case classification, and seeded local-search probes on posets
//! too large to sweep.

mod exhaustive;
mod mask;
mod probe;

pub use exhaustive::{
    erdos_katona_check, exhaustive_minimize, verify_kleitman_suite, Counterexample, ErdosKatonaReport,
    ErdosKatonaRow, MinimizationResult, SuiteReport, ERDOS_KATONA_EXHAUSTIVE_N, MAX_FAMILIES,
    MAX_SUITE_ELEMENTS, MINIMIZER_SAMPLE,
};
pub use mask::{combinations, MaskPoset, MAX_MASK_K};
pub use probe::{probe_minimize, SearchProbe, Strategy, AUDIT_INTERVAL};
