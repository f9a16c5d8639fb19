//! Resource limits shared by constructors and searches.
//!
//! Every cap is a plain field so callers can build custom budgets; `Caps::default`
//! matches the documented defaults and `Caps::from_env` applies `DETSET_CAPS`
//! overrides (comma-separated `key=value` pairs).

/// Budgets for group construction and the various searches.
///
/// Search routines treat a configured cap as a hard policy line: exceeding it
/// yields a capped/skipped result, never a silent partial answer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Caps {
    /// Largest group order that may be materialized as a Cayley table.
    pub order_cap: usize,
    /// Largest order for which associativity of a table is checked exhaustively.
    pub assoc_check_cap: usize,
    /// Largest order for which the full subgroup lattice is scanned.
    pub subgroup_scan_cap: usize,
    /// Maximum number of automorphisms enumerated and stored.
    pub aut_enumeration_cap: u64,
    /// Maximum total permutation entries (automorphism count x group order)
    /// held in memory by an enumeration.
    pub aut_memory_cap: u64,
    /// Maximum product of candidate-image pool sizes in a homomorphism search.
    pub hom_candidate_cap: u64,
    /// Maximum candidate matrices tested by the product-automorphism enumeration.
    pub bidwell_candidate_cap: u64,
    /// Node budget for subset searches (determining/generating numbers).
    pub node_budget: u64,
    /// Largest order accepted by the exhaustive oracles.
    pub oracle_cap: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            order_cap: 10_000,
            assoc_check_cap: 256,
            subgroup_scan_cap: 200,
            aut_enumeration_cap: 1_000_000,
            aut_memory_cap: 30_000_000,
            hom_candidate_cap: 1_000_000,
            bidwell_candidate_cap: 1_000_000,
            node_budget: 100_000_000,
            oracle_cap: 24,
        }
    }
}

impl Caps {
    /// Applies `DETSET_CAPS` style overrides, e.g. `"order_cap=20000,node_budget=1000000"`.
    /// Unknown keys and malformed pairs are reported as errors so typos do not
    /// silently run with default budgets.
    pub fn with_overrides(mut self, spec: &str) -> Result<Self, String> {
        for pair in spec.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (key, value) = pair
                .split_once('=')
                .ok_or_else(|| format!("expected key=value, got `{pair}`"))?;
            let parse = |v: &str| -> Result<u64, String> {
                v.trim().parse().map_err(|_| format!("invalid number `{v}` for `{key}`"))
            };
            let v = parse(value)?;
            match key.trim() {
                "order_cap" => self.order_cap = v as usize,
                "assoc_check_cap" => self.assoc_check_cap = v as usize,
                "subgroup_scan_cap" => self.subgroup_scan_cap = v as usize,
                "aut_enumeration_cap" => self.aut_enumeration_cap = v,
                "aut_memory_cap" => self.aut_memory_cap = v,
                "hom_candidate_cap" => self.hom_candidate_cap = v,
                "bidwell_candidate_cap" => self.bidwell_candidate_cap = v,
                "node_budget" => self.node_budget = v,
                "oracle_cap" => self.oracle_cap = v as usize,
                other => return Err(format!("unknown cap `{other}`")),
            }
        }
        Ok(self)
    }

    /// Reads overrides from the `DETSET_CAPS` environment variable if present.
    pub fn from_env() -> Result<Self, String> {
        match std::env::var("DETSET_CAPS") {
            Ok(spec) => Caps::default().with_overrides(&spec),
            Err(_) => Ok(Caps::default()),
        }
    }
}
