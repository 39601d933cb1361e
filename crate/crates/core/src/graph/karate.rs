//! Bundled Zachary karate-club network.

use super::Graph;
use crate::error::{Error, Result};
use crate::seeding::fnv1a64;

/// Canonical 78-edge karate-club edge list, 0-indexed.
const KARATE_EDGES: &str = include_str!("../../data/karate_edges.txt");

/// FNV-1a 64 checksum of [`KARATE_EDGES`].
const KARATE_CHECKSUM: u64 = 0xc06b_5cb3_0f01_293b;

/// Node 1 in the canonical 1-indexed numbering.
pub const INSTRUCTOR: usize = 0;
/// Node 34 in the canonical 1-indexed numbering.
pub const PRESIDENT: usize = 33;

/// Load the karate-club graph (34 nodes, 78 edges) with the instructor
/// labelled `"I"` and the president labelled `"P"`.
///
/// The bundled data is verified against a checksum before parsing.
pub fn load_karate() -> Result<Graph> {
    let checksum = fnv1a64(KARATE_EDGES.as_bytes());
    if checksum != KARATE_CHECKSUM {
        return Err(Error::Data(format!(
            "karate edge data corrupted: checksum {checksum:#018x} != {KARATE_CHECKSUM:#018x}"
        )));
    }
    let mut graph = Graph::from_edge_list_str(KARATE_EDGES)?;
    if graph.node_count() != 34 {
        return Err(Error::Data(format!(
            "karate data has {} nodes, expected 34",
            graph.node_count()
        )));
    }
    graph.set_label(INSTRUCTOR, "I");
    graph.set_label(PRESIDENT, "P");
    Ok(graph)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn loads_34_nodes_78_edges() {
        let g = load_karate().unwrap();
        assert_eq!(g.node_count(), 34);
        assert_eq!(g.edge_count(), 78);
        assert!(g.is_connected());
        assert_eq!(g.label(INSTRUCTOR), Some("I"));
        assert_eq!(g.label(PRESIDENT), Some("P"));
        assert_eq!(g.find_label("P"), Some(PRESIDENT));
    }

    #[test]
    fn checksum_detects_corruption() {
        let mut bytes = KARATE_EDGES.as_bytes().to_vec();
        bytes[0] ^= 1;
        assert_ne!(fnv1a64(&bytes), KARATE_CHECKSUM);
        assert_eq!(fnv1a64(KARATE_EDGES.as_bytes()), KARATE_CHECKSUM);
    }
}
