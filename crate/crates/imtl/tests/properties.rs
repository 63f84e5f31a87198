// Randomized laws over the whole crate. Structured inputs come from the
// crate's own seeded generators, so proptest shrinks the seed and size
// rather than the structure; the formula strategy is a genuine recursive
// tree so connective shapes shrink normally.

use imtl::gen::{random_model, random_mt2, random_mt3, random_topology, seeded_rng};
use imtl::mt2::Mt2Model;
use imtl::mt3::Mt3Model;
use imtl::nimodel::truth_set_in;
use imtl::search::{find_countermodel, SearchConfig, SearchOutcome};
use imtl::topology::{w_min_topology, w_topology, FiniteTopology};
use imtl::transform::{mt2_to_nim, nim_to_mt1, nim_to_mt3};
use imtl::{parse_model, render_model, Formula, Model, NimModel, WorldSet};
use proptest::prelude::*;

fn formula_over(vars: &'static [&'static str], depth: u32) -> impl Strategy<Value = Formula> {
    let leaf = prop_oneof![
        4 => proptest::sample::select(vars).prop_map(Formula::var),
        1 => Just(Formula::Bottom),
    ];
    leaf.prop_recursive(depth, 24, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| a.and(b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| a.or(b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| a.implies(b)),
            inner.clone().prop_map(Formula::not),
            inner.prop_map(Formula::boxed),
        ]
    })
}

fn formula() -> impl Strategy<Value = Formula> {
    formula_over(&["p", "q", "r"], 4)
}

fn nim_model() -> impl Strategy<Value = NimModel> {
    (any::<u64>(), 1usize..=6).prop_map(|(seed, worlds)| {
        random_model(&mut seeded_rng(seed), worlds, &["p", "q", "r"])
    })
}

fn mt2_model() -> impl Strategy<Value = Mt2Model> {
    (any::<u64>(), 1usize..=6).prop_map(|(seed, worlds)| {
        random_mt2(&mut seeded_rng(seed), worlds, &["p", "q", "r"])
    })
}

fn mt3_model() -> impl Strategy<Value = Mt3Model> {
    (any::<u64>(), 1usize..=6).prop_map(|(seed, worlds)| {
        random_mt3(&mut seeded_rng(seed), worlds, &["p", "q", "r"])
    })
}

fn topology() -> impl Strategy<Value = FiniteTopology> {
    (any::<u64>(), 1usize..=5)
        .prop_map(|(seed, n)| random_topology(&mut seeded_rng(seed), WorldSet::full(n)))
}

fn world_set() -> impl Strategy<Value = WorldSet> {
    prop::collection::btree_set(0usize..8, 0..=6).prop_map(|worlds| {
        worlds
            .into_iter()
            .fold(WorldSet::EMPTY, |mut acc, w| {
                acc.insert(w);
                acc
            })
    })
}

/// Carves a subset out of `from` using `mask` as a membership oracle.
fn subset_of(from: WorldSet, mask: u32) -> WorldSet {
    from.iter()
        .filter(|&w| mask & (1 << w) != 0)
        .fold(WorldSet::EMPTY, |mut acc, w| {
            acc.insert(w);
            acc
        })
}

// Formula syntax.

proptest! {
    #[test]
    fn printing_then_parsing_is_identity(f in formula()) {
        let reparsed: Formula = f.to_string().parse().unwrap();
        prop_assert_eq!(reparsed, f);
    }

    #[test]
    fn substituting_variables_for_themselves_changes_nothing(f in formula()) {
        let bindings: Vec<(String, Formula)> = f
            .variables()
            .into_iter()
            .map(|v| (v.clone(), Formula::var(&v)))
            .collect();
        prop_assert_eq!(f.substitute(&bindings), f);
    }
}

// World sets.

proptest! {
    #[test]
    fn subset_enumeration_walks_the_whole_powerset(s in world_set(), mask in any::<u32>()) {
        let subsets: Vec<WorldSet> = s.subsets().collect();
        prop_assert_eq!(subsets.len(), 1usize << s.len());
        prop_assert!(subsets.iter().all(|x| x.is_subset_of(s)));
        let mut dedup = subsets.clone();
        dedup.sort();
        dedup.dedup();
        prop_assert_eq!(dedup.len(), subsets.len());

        let base = subset_of(s, mask);
        let including: Vec<WorldSet> = s.subsets_including(base).collect();
        prop_assert_eq!(including.len(), 1usize << (s.len() - base.len()));
        prop_assert!(including.iter().all(|x| base.is_subset_of(*x) && x.is_subset_of(s)));
    }

    #[test]
    fn set_algebra_behaves(a in world_set(), b in world_set()) {
        prop_assert_eq!(a.union(b), b.union(a));
        prop_assert_eq!(a.intersection(b), b.intersection(a));
        prop_assert_eq!(a.difference(b).intersection(b), WorldSet::EMPTY);
        prop_assert_eq!(a.difference(b).union(a.intersection(b)), a);
        prop_assert!(a.intersection(b).is_subset_of(a));
        prop_assert!(a.is_subset_of(a.union(b)));
    }
}

// Finite topologies.

proptest! {
    #[test]
    fn interior_is_deflationary_idempotent_and_monotone(
        t in topology(),
        mask_x in any::<u32>(),
        mask_y in any::<u32>(),
    ) {
        prop_assert!(t.validate().is_empty());
        let x = subset_of(t.universe(), mask_x);
        let y = x.union(subset_of(t.universe(), mask_y));
        let int_x = t.interior(x);
        prop_assert!(int_x.is_subset_of(x));
        prop_assert!(t.is_open(int_x));
        prop_assert_eq!(t.interior(int_x), int_x);
        prop_assert!(int_x.is_subset_of(t.interior(y)));
        prop_assert_eq!(t.interior(t.universe()), t.universe());
        for &open in t.opens() {
            prop_assert_eq!(t.interior(open), open);
        }
    }

    #[test]
    fn minimal_neighborhoods_nest(t in topology()) {
        for v in t.universe().iter() {
            let around_v = t.min_open_nbhd(v).unwrap();
            prop_assert!(around_v.contains(v));
            prop_assert!(t.is_open(around_v));
            for u in around_v.iter() {
                prop_assert!(t.min_open_nbhd(u).unwrap().is_subset_of(around_v));
            }
        }
    }

    #[test]
    fn least_nonempty_open_is_least(t in topology()) {
        let nonempty: Vec<WorldSet> =
            t.opens().iter().copied().filter(|o| !o.is_empty()).collect();
        match t.least_nonempty_open() {
            Some(least) => {
                prop_assert!(!least.is_empty());
                prop_assert!(t.is_open(least));
                prop_assert!(nonempty.iter().all(|o| least.is_subset_of(*o)));
            }
            None => {
                let has_bottom = nonempty
                    .iter()
                    .any(|b| nonempty.iter().all(|o| b.is_subset_of(*o)));
                prop_assert!(!has_bottom);
            }
        }
    }

    #[test]
    fn frame_topologies_validate_and_pin_the_minimal_neighborhood(m in nim_model()) {
        for w in 0..m.frame.world_count() {
            let wide = w_topology(&m.frame, w).unwrap();
            let narrow = w_min_topology(&m.frame, w).unwrap();
            prop_assert!(wide.validate().is_empty());
            prop_assert!(narrow.validate().is_empty());
            prop_assert_eq!(narrow.min_open_nbhd(w).unwrap(), m.frame.min(w));
        }
    }
}

// Neighborhood-model semantics.

proptest! {
    #[test]
    fn random_models_are_valid(m in nim_model()) {
        prop_assert!(m.frame.validate().is_empty());
        prop_assert!(m.validate().is_empty());
    }

    #[test]
    fn forcing_matches_the_truth_set(m in nim_model(), f in formula()) {
        let truth = m.truth_set(&f);
        prop_assert!(truth.is_subset_of(m.frame.universe()));
        prop_assert_eq!(truth_set_in(&m.frame, &m.valuation, &f), truth);
        for w in 0..m.frame.world_count() {
            prop_assert_eq!(m.forces(w, &f), truth.contains(w));
        }
    }

    #[test]
    fn forcing_is_hereditary(m in nim_model(), f in formula()) {
        let truth = m.truth_set(&f);
        for w in truth.iter() {
            prop_assert!(m.frame.min(w).is_subset_of(truth));
        }
    }

    #[test]
    fn truth_everywhere_survives_the_box(m in nim_model(), f in formula()) {
        for candidate in [f.clone(), f.clone().implies(f)] {
            if m.truth_set(&candidate) == m.frame.universe() {
                prop_assert_eq!(
                    m.truth_set(&candidate.boxed()),
                    m.frame.universe()
                );
            }
        }
    }

    #[test]
    fn axiom_instances_hold_in_every_model(m in nim_model(), f in formula(), g in formula()) {
        let k = f
            .clone()
            .implies(g.clone())
            .boxed()
            .implies(f.clone().boxed().implies(g.clone().boxed()));
        let t = f.clone().boxed().implies(f.clone());
        let weakening = f.clone().implies(g.clone().implies(f.clone()));
        let projection = f.clone().and(g.clone()).implies(f.clone());
        let injection = f.clone().implies(f.or(g));
        for instance in [k, t, weakening, projection, injection] {
            prop_assert!(
                m.is_satisfied(&instance),
                "instance {} fails in {:?}",
                instance,
                m
            );
        }
    }
}

// Conversions between the model shapes.

proptest! {
    #[test]
    fn space_family_translations_preserve_truth(m in nim_model(), f in formula()) {
        let truth = m.truth_set(&f);
        prop_assert_eq!(nim_to_mt1(&m).unwrap().eval(&f), truth);
        prop_assert_eq!(nim_to_mt3(&m).unwrap().eval(&f), truth);
    }

    #[test]
    fn derived_frame_preserves_family_truth(m in mt2_model(), f in formula()) {
        prop_assert!(m.validate().is_empty());
        let nim = mt2_to_nim(&m).unwrap();
        prop_assert!(nim.frame.t_condition());
        prop_assert!(nim.validate().is_empty());
        prop_assert_eq!(nim.truth_set(&f), m.eval(&f));
    }

    #[test]
    fn random_inventory_models_are_valid(m in mt3_model()) {
        prop_assert!(m.validate().is_empty());
    }
}

// Countermodel search.

proptest! {
    #[test]
    fn search_outcome_survives_worker_count(f in formula_over(&["p", "q"], 2)) {
        let outcome = |jobs: usize| {
            let mut cfg = SearchConfig::new(2);
            cfg.jobs = jobs;
            find_countermodel(&f, &cfg).unwrap()
        };
        let sequential = outcome(1);
        prop_assert_eq!(&outcome(2), &sequential);
        prop_assert_eq!(&outcome(0), &sequential);

        if let SearchOutcome::Countermodel { model, world } = sequential {
            prop_assert!(world < model.frame.world_count());
            prop_assert!(model.frame.t_condition());
            prop_assert!(model.validate().is_empty());
            prop_assert!(!model.forces(world, &f));
        }
    }
}

// Model files.

proptest! {
    #[test]
    fn rendering_then_parsing_is_identity_for_every_kind(
        seed in any::<u64>(),
        worlds in 1usize..=6,
    ) {
        let mut rng = seeded_rng(seed);
        let nim = random_model(&mut rng, worlds, &["p", "q"]);
        let models = [
            Model::Mt1(nim_to_mt1(&nim).unwrap()),
            Model::Nim(nim),
            Model::Mt2(random_mt2(&mut rng, worlds, &["p", "q"])),
            Model::Mt3(random_mt3(&mut rng, worlds, &["p", "q"])),
        ];
        for model in models {
            prop_assert!(model.validate_rendered().is_empty());
            let text = render_model(&model);
            let reparsed = parse_model(&text).unwrap();
            prop_assert_eq!(&reparsed, &model);
            prop_assert_eq!(render_model(&reparsed), text);
        }
    }
}
