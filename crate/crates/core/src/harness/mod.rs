//! Byte payloads through simulated storage nodes.

mod chunk;
mod sim;

pub use chunk::{bytes_to_dits, chunk_dits, chunk_payload, dits_to_bytes, unchunk_dits, unchunk_payload};
pub use sim::{
    run_sim, ErasurePolicy, Failure, PatternStats, SimConfig, SimReport, SrLogEntry, Throughput,
    MAX_FAILURE_RECORDS,
};
