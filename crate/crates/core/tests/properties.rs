use std::sync::OnceLock;

use leech_borsuk::confgraph::{export_dimacs, import_dimacs, ConflictGraph};
use leech_borsuk::golay::{build_golay, Codeword, GolayCode};
use leech_borsuk::hset::{decode_vector, encode_vector};
use leech_borsuk::leech::{enumerate_minimal_vectors, leech_member, MinimalVectorSet};
use proptest::prelude::*;

fn shell() -> &'static (GolayCode, MinimalVectorSet) {
    static CELL: OnceLock<(GolayCode, MinimalVectorSet)> = OnceLock::new();
    CELL.get_or_init(|| {
        let code = build_golay().unwrap();
        let m = enumerate_minimal_vectors(&code);
        (code, m)
    })
}

proptest! {
    #[test]
    fn golay_is_linear(a in 0usize..4096, b in 0usize..4096) {
        let code = &shell().0;
        let (x, y) = (code.words()[a], code.words()[b]);
        prop_assert!(code.contains(x.xor(y)));
        prop_assert!((x.xor(y).weight()) % 4 == 0);
    }

    #[test]
    fn self_dual_membership(bits in 0u32..(1 << 24)) {
        let code = &shell().0;
        let w = Codeword::from_bits(bits);
        let orthogonal = code.generator().iter().all(|g| (g.bits() & bits).count_ones() % 2 == 0);
        prop_assert_eq!(code.contains(w), orthogonal);
    }

    #[test]
    fn record_roundtrip(i in 0usize..196_560) {
        let v = shell().1.vectors()[i];
        let shape = v.shape().unwrap();
        let record = encode_vector(&v, shape).unwrap();
        prop_assert_eq!(decode_vector(&record, shape).unwrap(), v);
    }

    #[test]
    fn lattice_closed_under_sum_of_pairs(i in 0usize..196_560, j in 0usize..196_560) {
        let (code, m) = shell();
        let (x, y) = (m.vectors()[i], m.vectors()[j]);
        let s: Vec<i64> = x.add_wide(&y).iter().map(|&c| i64::from(c)).collect();
        prop_assert!(leech_borsuk::leech::is_leech_vector(&s, code));
        prop_assert!(leech_member(&x.neg(), code));
    }

    #[test]
    fn dimacs_roundtrip(n in 1usize..40, raw in prop::collection::vec((0u32..40, 0u32..40), 0..120)) {
        let edges: Vec<(u32, u32)> = raw
            .into_iter()
            .map(|(a, b)| (a % n as u32, b % n as u32))
            .filter(|(a, b)| a != b)
            .collect();
        let g = ConflictGraph::from_edges(n, &edges);
        let mut buf = Vec::new();
        export_dimacs(&g, &mut buf).unwrap();
        let h = import_dimacs(buf.as_slice()).unwrap();
        prop_assert_eq!(h.vertex_count(), n);
        prop_assert_eq!(h.edge_count(), g.edge_count());
        for u in 0..n {
            prop_assert_eq!(h.neighbors(u), g.neighbors(u));
        }
    }
}
