//! File formats, enumeration of small hypergraphs, brute-force oracles and
//! seeded verification campaigns.

mod campaign;
mod enumerate;
mod format;
mod oracle;
mod random;

pub use campaign::{
    instance_rng, run_campaign, verify_bound, verify_lift_exhaustive, BoundKind, CampaignConfig, CampaignReport,
    Corpus, Failure, Tally,
};
pub use enumerate::{enumerate_hypergraphs, Enumeration, MAX_ENUM_EDGES};
pub use format::HypergraphFile;
pub use oracle::{oracle_exists_avoiding_partition, oracle_has_mono};
pub use random::{random_host_with_chi, random_hypergraph, random_order, random_partition};
