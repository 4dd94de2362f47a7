mod common;

use bratteli_core::dimensions::{dims_up_to, m_table, BranchingRatios, Cone};
use bratteli_core::export::{decimal, graph_to_json, load_json_graph};
use bratteli_core::family::{doubled_young, walled_young, young};
use bratteli_core::measures::{cylinder_decay_report, ergodic_estimate, sample_path};
use bratteli_core::{pascalize, BigRational, BigUint, Family, GraphPath, VertexId, WalkTrajectory};
use num_traits::ToPrimitive;
use proptest::prelude::*;

use common::weighted_walks;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn walks_and_paths_correspond(choices in prop::collection::vec(any::<usize>(), 1..12)) {
        let base = walled_young(12);
        let pg = pascalize(&base, 12).unwrap();
        let mut walk = vec![VertexId::ROOT];
        for c in &choices {
            let v = *walk.last().unwrap();
            let neighbours: Vec<VertexId> = base.up(v).chain(base.down(v)).collect();
            walk.push(neighbours[c % neighbours.len()]);
        }
        let walk = WalkTrajectory::new(walk);
        let path = pg.path_of_walk(&walk).unwrap();
        prop_assert!(GraphPath::new(pg.graph(), path.vertices().to_vec()).is_ok());
        prop_assert_eq!(pg.walk_of_path(&path), walk);
    }

    #[test]
    fn m_table_counts_weighted_walks(a in prop::collection::vec(1u64..5, 12)) {
        let mt = m_table(&BranchingRatios::from_values(a.clone()), 12).unwrap();
        for n in 0..=12 {
            for l in (n % 2..=n).step_by(2) {
                prop_assert_eq!(mt.get(n, l).unwrap(), &BigUint::from(weighted_walks(&a, n, l)));
            }
        }
    }

    #[test]
    fn shift_preserves_counts_on_doubled(level in 2usize..10, pick in any::<usize>()) {
        let pg = pascalize(&doubled_young(10), 10).unwrap();
        let g = pg.graph();
        let sources: Vec<VertexId> = g.vertices(level).filter(|&v| !pg.is_diagonal(v)).collect();
        prop_assume!(!sources.is_empty());
        let source = sources[pick % sources.len()];
        let shifted = pg.lift(level - 2, pg.base_vertex(source)).unwrap();
        let cone = Cone::new(g, source, 10).unwrap();
        let lower = Cone::new(g, shifted, 10).unwrap();
        for n in level..=10 {
            for w in g.vertices(n) {
                if let Some(w2) = pg.lift(n - 2, pg.base_vertex(w)) {
                    prop_assert_eq!(cone.get(w), lower.get(w2));
                }
            }
        }
    }

    #[test]
    fn sampled_estimates_respect_the_decay_bound(level in 2usize..8, pick in any::<usize>(), seed in any::<u64>()) {
        const TOP: usize = 20;
        let pg = pascalize(&young(TOP), TOP).unwrap();
        let g = pg.graph();
        let dims = dims_up_to(g, TOP).unwrap();
        let mt = m_table(&BranchingRatios::from_family(Family::Young, TOP + 1), TOP + 1).unwrap();
        let targets: Vec<VertexId> = g.vertices(level).filter(|&v| !pg.is_diagonal(v)).collect();
        let target = targets[pick % targets.len()];
        let path = sample_path(g, &dims, TOP, seed).unwrap();
        let report = cylinder_decay_report(&pg, &dims, &mt, target, TOP, Some(&path)).unwrap();
        prop_assert_eq!(report.first_bound_violation(), None);
        let direct = ergodic_estimate(g, &dims, target, &path, TOP).unwrap();
        for row in &report.rows {
            prop_assert_eq!(row.estimate.as_ref(), direct.at(row.level));
            prop_assert!(*direct.at(row.level).unwrap() <= BigRational::from_integer(1.into()));
        }
    }

    #[test]
    fn sampling_is_reproducible(seed in any::<u64>()) {
        let pg = pascalize(&young(12), 12).unwrap();
        let dims = dims_up_to(pg.graph(), 12).unwrap();
        let a = sample_path(pg.graph(), &dims, 12, seed).unwrap();
        let b = sample_path(pg.graph(), &dims, 12, seed).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn decimal_rendering_is_close(num in 1i64..1_000_000_000_000, den in 1i64..1_000_000_000) {
        let q = BigRational::new(num.into(), den.into());
        let text = decimal(&q, 12);
        let parsed: f64 = text.parse().unwrap();
        let exact = q.to_f64().unwrap();
        prop_assert!(((parsed - exact) / exact).abs() < 1e-11, "{} vs {}", text, exact);
    }
}

#[test]
fn json_round_trip_keeps_dimensions() {
    let pg = pascalize(&walled_young(6), 6).unwrap();
    let loaded = load_json_graph(&graph_to_json(pg.graph()).unwrap()).unwrap();
    let a = dims_up_to(pg.graph(), 6).unwrap();
    let b = dims_up_to(&loaded, 6).unwrap();
    for k in 0..=6 {
        assert_eq!(a.level(k), b.level(k));
    }
}
