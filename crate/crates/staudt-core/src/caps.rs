/// Resource caps for the enumeration-heavy operations.
///
/// Every cap can be raised or lowered by the caller; the defaults keep all
/// catalog rings comfortably inside laptop budgets.
#[derive(Debug, Clone)]
pub struct Caps {
    /// Largest ring that `build_ring` will materialize.
    pub ring_size: usize,
    /// Full GL₂ enumeration runs only for rings with at most this many
    /// elements (the scan is |R|⁴ matrices).
    pub gl2_ring_size: usize,
    /// Group BFS (E₂, GE₂) aborts beyond this many elements.
    pub group_size: usize,
    /// The five-units condition is exhausted only while |R|⁵ stays at or
    /// below this bound; beyond it the covering heuristic runs.
    pub five_units_exhaustive: u64,
    /// Restart budget for the covering heuristic on large rings.
    pub covering_restarts: usize,
    /// Jordan enumeration requires at most this many additive generators on
    /// the source.
    pub jordan_generators: usize,
    /// Jordan enumeration requires a target of at most this size.
    pub jordan_target_size: usize,
    /// Node budget for the preserver classification search.
    pub node_budget: u64,
    /// The raw map-filter oracle runs only up to this many candidate maps.
    pub oracle_maps: u64,
    /// Maximum word length for the randomized well-definedness pass.
    pub random_word_len: usize,
    /// Number of random words per well-definedness pass.
    pub random_word_count: usize,
    /// Directory for cached generated groups (keyed by ring label and crate
    /// version); `None` disables caching.
    pub cache_dir: Option<std::path::PathBuf>,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            ring_size: 4096,
            gl2_ring_size: 16,
            group_size: 1_000_000,
            five_units_exhaustive: 100_000_000,
            covering_restarts: 200,
            jordan_generators: 4,
            jordan_target_size: 128,
            node_budget: 100_000_000,
            oracle_maps: 10_000_000,
            random_word_len: 8,
            random_word_count: 200,
            cache_dir: None,
        }
    }
}
