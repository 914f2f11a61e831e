use std::collections::{BTreeMap, BTreeSet};

use gqt::check::{check_laws, generate_model, minimize, GeneratorParams};
use gqt::compat::{common_eigenstates, compatible};
use gqt::entangle::entangled_states;
use gqt::io::{parse_model, serialize_model};
use gqt::prelude::*;
use proptest::prelude::*;

fn params() -> impl Strategy<Value = GeneratorParams> {
    (
        1usize..=10,
        0usize..=6,
        0usize..=4,
        2usize..=5,
        any::<u64>(),
    )
        .prop_map(
            |(n_states, n_props, n_obs, max_spectrum, seed)| GeneratorParams {
                n_states,
                n_props,
                n_obs,
                max_spectrum,
                seed,
            },
        )
}

fn model() -> impl Strategy<Value = Model> {
    params().prop_map(|p| generate_model(&p).unwrap())
}

/// A generated model with one yes- or no-map entry redirected to a
/// different proper state.
fn mutated() -> impl Strategy<Value = (Model, Model)> {
    (
        model(),
        any::<prop::sample::Index>(),
        any::<prop::sample::Index>(),
        any::<bool>(),
        any::<prop::sample::Index>(),
    )
        .prop_filter_map(
            "needs a proposition and two states",
            |(m, pi, si, yes, ti)| {
                let props: Vec<Proposition> = m.propositions().cloned().collect();
                if props.is_empty() || m.space().len() < 2 {
                    return None;
                }
                let p = &props[pi.index(props.len())];
                let ids: Vec<StateId> = m.space().ids().collect();
                let z = ids[si.index(ids.len())];
                let map = if yes { p.yes() } else { p.no() };
                let others: Vec<StateId> = ids
                    .iter()
                    .copied()
                    .filter(|&t| StateRef::Proper(t) != map.at(z))
                    .collect();
                let t = others[ti.index(others.len())];
                let changed = map.with_entry(z, StateRef::Proper(t));
                let q = if yes {
                    Proposition::new(p.name(), changed, p.no().clone())
                } else {
                    Proposition::new(p.name(), p.yes().clone(), changed)
                }
                .unwrap();
                Some((m.clone(), m.with_proposition(q).unwrap()))
            },
        )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn generated_models_pass_validation_and_every_law(m in model()) {
        let report = validate_model(&m);
        prop_assert!(report.is_empty(), "{:?}", report.iter().next());
        let violations = check_laws(&m);
        prop_assert!(violations.is_empty(), "{}", violations[0]);
    }

    #[test]
    fn generation_is_deterministic(p in params()) {
        let a = serialize_model(&generate_model(&p).unwrap());
        let b = serialize_model(&generate_model(&p).unwrap());
        prop_assert_eq!(a, b);
    }

    #[test]
    fn serialization_round_trips(m in model()) {
        let text = serialize_model(&m);
        let back = parse_model(&text).unwrap();
        prop_assert_eq!(serialize_model(&back), text);
        prop_assert_eq!(back.space().names(), m.space().names());
        for p in m.propositions() {
            let q = back.proposition(p.name()).unwrap();
            prop_assert_eq!(q.yes().targets(), p.yes().targets());
            prop_assert_eq!(q.no().targets(), p.no().targets());
        }
    }

    #[test]
    fn negation_is_an_involution(m in model()) {
        for p in m.resolvable_propositions() {
            let nn = negate(&negate(&p));
            prop_assert!(nn.same_maps(&p));
            prop_assert_eq!(nn.name(), p.name());
            prop_assert!(compatible(&p, &negate(&p)).unwrap());
            prop_assert!(compatible(m.one(), &p).unwrap());
            prop_assert!(compatible(m.zero(), &p).unwrap());
        }
    }

    #[test]
    fn compatibility_is_symmetric_and_conjunction_commutes(m in model()) {
        let props = m.resolvable_propositions();
        for p in &props {
            for q in &props {
                let pq = compatible(p, q).unwrap();
                prop_assert_eq!(pq, compatible(q, p).unwrap());
                if pq {
                    prop_assert_eq!(
                        conjunction(p, q).unwrap().known_map,
                        conjunction(q, p).unwrap().known_map
                    );
                    prop_assert_eq!(
                        adjunction(p, q).unwrap().known_map,
                        adjunction(q, p).unwrap().known_map
                    );
                } else {
                    prop_assert!(conjunction(p, q).is_err());
                }
            }
        }
    }

    #[test]
    fn eigenstates_are_fixed_points(m in model()) {
        for p in m.resolvable_propositions() {
            let eig = eigenstates_of_proposition(&p);
            for z in m.space().ids() {
                for outcome in [Outcome::Yes, Outcome::No] {
                    let fixed = p.map(outcome).at(z) == StateRef::Proper(z);
                    prop_assert_eq!(fixed, eig.contains(&(z, outcome)));
                }
            }
        }
    }

    #[test]
    fn every_value_image_is_an_eigenstate(m in model()) {
        for a in m.observables() {
            for z in m.space().refs().filter(|z| !z.is_zero()) {
                let mut possible = 0;
                for p in a.family() {
                    let w = p.yes().apply(z);
                    if !w.is_zero() {
                        possible += 1;
                        prop_assert_eq!(p.yes().apply(w), w);
                    }
                }
                prop_assert!(possible >= 1);
            }
        }
    }

    #[test]
    fn compatible_pairs_commute_and_share_eigenstates(m in model()) {
        let obs: Vec<&Observable> = m.observables().collect();
        for a in &obs {
            for b in &obs {
                let (class, _) = classify_pair(a, b).unwrap();
                let common = common_eigenstates(a, b).unwrap();
                if common.is_empty() {
                    prop_assert_ne!(class, PairClass::Compatible);
                }
                if class != PairClass::Compatible {
                    continue;
                }
                for z in m.space().refs().filter(|z| !z.is_zero()) {
                    let mut reached = false;
                    for va in a.spectrum() {
                        for vb in b.spectrum() {
                            let ab = measure_sequence(&m, z, &[(a.name(), va), (b.name(), vb)]).unwrap();
                            let ba = measure_sequence(&m, z, &[(b.name(), vb), (a.name(), va)]).unwrap();
                            prop_assert_eq!(ab, ba);
                            if let StateRef::Proper(w) = ab {
                                reached = true;
                                let ia = a.value_index(va).unwrap();
                                let ib = b.value_index(vb).unwrap();
                                prop_assert!(common.iter().any(|c| c.state == w && c.a == ia && c.b == ib));
                            }
                        }
                    }
                    prop_assert!(reached);
                }
            }
        }
    }

    #[test]
    fn entangled_states_are_global_eigenstates_of_no_local(m in model(), split in any::<prop::sample::Index>()) {
        let obs: Vec<Observable> = m.observables().cloned().collect();
        prop_assume!(obs.len() >= 2);
        let g = split.index(obs.len());
        let locals: Vec<&str> = obs.iter().enumerate().filter(|&(i, _)| i != g).map(|(_, a)| a.name()).collect();
        let partition = Partition {
            subsystems: locals.iter().map(|l| format!("sub_{l}")).collect(),
            local: locals.iter().map(|l| (l.to_string(), format!("sub_{l}"))).collect::<BTreeMap<_, _>>(),
            global: BTreeSet::from([obs[g].name().to_string()]),
        };
        let m = m.with_observables(obs.clone(), Some(partition)).unwrap();
        if let Ok(e) = entangled_states(&m, obs[g].name(), &locals) {
            let global: BTreeSet<StateId> = eigenstates_of_observable(&obs[g]).into_iter().map(|(z, _)| z).collect();
            for z in &e.states {
                prop_assert!(global.contains(z));
                for l in &locals {
                    let local = eigenstates_of_observable(m.observable(l).unwrap());
                    prop_assert!(local.iter().all(|(w, _)| w != z));
                }
            }
        }
    }

    #[test]
    fn violations_replay_and_survive_minimization((_, broken) in mutated()) {
        for v in check_laws(&broken) {
            prop_assert!(v.replay(&broken), "{}", v);
            let small = minimize(&broken, &v).unwrap();
            prop_assert!(small.space().len() <= broken.space().len());
            prop_assert!(v.replay(&small), "{} after minimization", v);
        }
    }

    #[test]
    fn redirects_are_caught_or_harmless((valid, broken) in mutated()) {
        prop_assert!(validate_model(&valid).is_empty());
        // Validation and the law check must agree: the theorems hold on every
        // valid model, and every structural failure is also a law failure.
        let structural = validate_model(&broken).is_empty();
        let laws = check_laws(&broken).is_empty();
        prop_assert_eq!(structural, laws);
    }
}
