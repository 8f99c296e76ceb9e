use clique_core::comm::{broadcast_bits, route, Demand, DirectRouter};
use clique_core::engine::{run_with, RunOptions};
use clique_core::{id_bits, Bits, Graph};
use proptest::prelude::*;

fn bitvec(len: usize) -> impl Strategy<Value = Bits> {
    proptest::collection::vec(any::<bool>(), len).prop_map(Bits::from_bools)
}

proptest! {
    #[test]
    fn broadcast_delivers_every_vector(
        (n, vs) in (2usize..=16, 0usize..40)
            .prop_flat_map(|(n, len)| (Just(n), proptest::collection::vec(bitvec(len), n)))
    ) {
        let g = Graph::empty(n);
        let len = vs[0].len();
        let r = broadcast_bits(&g, &vs).unwrap();
        prop_assert_eq!(r.rounds, len.div_ceil(id_bits(n)));
        for out in &r.outputs {
            prop_assert_eq!(out, &Bits::concat(&vs));
        }
        prop_assert!(r.link_load.iter().all(|l| l.messages as usize <= r.rounds));
    }

    #[test]
    fn route_delivers_the_demand_multiset(
        (n, raw) in (2usize..=9).prop_flat_map(|n| {
            (Just(n), proptest::collection::vec((1..=n, 1..=n, any::<u64>()), 0..60))
        })
    ) {
        let w = id_bits(n);
        let demands: Vec<Demand> = raw
            .into_iter()
            .filter(|(s, d, _)| s != d)
            .map(|(src, dst, x)| Demand { src, dst, payload: Bits::from_uint(x % (1 << w), w) })
            .collect();
        let expected_rounds = DirectRouter::new(demands.clone()).rounds(n);
        let out = route(&Graph::empty(n), demands.clone()).unwrap();
        let mut want = demands;
        want.sort();
        prop_assert_eq!(out.delivered, want);
        prop_assert_eq!(out.report.rounds, expected_rounds);
    }
}

#[test]
fn sequential_and_parallel_reports_are_identical() {
    let n = 13;
    let vs: Vec<_> = (0..n as u64).map(|i| Bits::from_uint(i * 2654435761 % (1 << 30), 30)).collect();
    let g = Graph::build(n, &[(1, 2), (4, 9), (13, 3)]).unwrap();
    let p = clique_core::comm::BroadcastBits { bits_per_node: 30 };
    let seq = run_with(&p, &g, Some(&vs), &RunOptions::new(100)).unwrap();
    let par = run_with(&p, &g, Some(&vs), &RunOptions::new(100).parallel()).unwrap();
    assert_eq!(seq, par);
    assert_eq!(serde_json::to_string(&seq).unwrap(), serde_json::to_string(&par).unwrap());
}
