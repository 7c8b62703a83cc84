//! Cross-module invariants on randomized games and behaviors.

use bellgame_core::bell::{combine_payoffs, payoff_to_bell};
use bellgame_core::classical::{enumerate_deterministic, local_bound, ClassicalMixture};
use bellgame_core::game::{average_payoffs, Behavior, Game, Player};
use bellgame_core::nosignaling::{ns_maximize, pr_box};
use bellgame_core::quantum::{quantum_behavior, seesaw_maximize};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_game(rng: &mut ChaCha8Rng) -> Game {
    let mut prior: Vec<f64> = (0..4).map(|_| rng.gen_range(0.05..1.0)).collect();
    let s: f64 = prior.iter().sum();
    prior.iter_mut().for_each(|v| *v /= s);
    let leftover = 1.0 - prior.iter().sum::<f64>();
    prior[0] += leftover;
    let payoff = |rng: &mut ChaCha8Rng| -> Vec<f64> {
        (0..16).map(|_| rng.gen_range(-5.0..5.0)).collect()
    };
    Game::new(
        "random",
        [2, 2],
        [2, 2],
        prior,
        payoff(rng),
        payoff(rng),
    )
    .expect("random games are valid")
}

fn random_mixture(rng: &mut ChaCha8Rng, game: &Game) -> ClassicalMixture {
    let profiles: Vec<_> = enumerate_deterministic(game)
        .unwrap()
        .map(|(s, _)| s)
        .collect();
    let k = rng.gen_range(1..=profiles.len());
    let chosen: Vec<_> = (0..k)
        .map(|_| profiles[rng.gen_range(0..profiles.len())].clone())
        .collect();
    let mut weights: Vec<f64> = (0..k).map(|_| rng.gen_range(0.01..1.0)).collect();
    let s: f64 = weights.iter().sum();
    weights.iter_mut().for_each(|w| *w /= s);
    let leftover = 1.0 - weights.iter().sum::<f64>();
    weights[0] += leftover;
    ClassicalMixture::new(chosen, weights).unwrap()
}

#[test]
fn bound_chain_holds_on_random_games() {
    // classical <= quantum <= no-signaling for per-player payoffs and for
    // random payoff combinations, within the payoff comparison tolerance.
    let mut rng = ChaCha8Rng::seed_from_u64(90);
    for round in 0..6 {
        let game = random_game(&mut rng);
        let expressions = [
            payoff_to_bell(&game, Player::One),
            payoff_to_bell(&game, Player::Two),
            combine_payoffs(
                &game,
                [rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)],
            ),
        ];
        for (i, e) in expressions.iter().enumerate() {
            let (classical, _) = local_bound(e).unwrap();
            let quantum = seesaw_maximize(e, 40, 1000 + round * 10 + i as u64)
                .unwrap()
                .value;
            let (ns, ns_behavior) = ns_maximize(e).unwrap();
            assert!(
                quantum >= classical - 1e-6,
                "round {round} expr {i}: quantum {quantum} < classical {classical}"
            );
            assert!(
                ns >= quantum - 1e-6,
                "round {round} expr {i}: no-signaling {ns} < quantum {quantum}"
            );
            assert!(ns_behavior.is_no_signaling(1e-9).no_signaling);
        }
    }
}

#[test]
fn every_produced_behavior_is_no_signaling() {
    let mut rng = ChaCha8Rng::seed_from_u64(91);
    assert!(pr_box().is_no_signaling(1e-7).no_signaling);
    for round in 0..10 {
        let game = random_game(&mut rng);
        let mixture = random_mixture(&mut rng, &game);
        assert!(mixture
            .behavior(game.n_actions())
            .is_no_signaling(1e-7)
            .no_signaling);

        let e = payoff_to_bell(&game, Player::One);
        let result = seesaw_maximize(&e, 5, round).unwrap();
        assert!(quantum_behavior(&result.strategy)
            .is_no_signaling(1e-10)
            .no_signaling);

        let (_, lp_behavior) = ns_maximize(&e).unwrap();
        assert!(lp_behavior.is_no_signaling(1e-7).no_signaling);
    }
}

#[test]
fn seesaw_traces_are_monotone_on_random_games() {
    let mut rng = ChaCha8Rng::seed_from_u64(92);
    for round in 0..8 {
        let game = random_game(&mut rng);
        let e = payoff_to_bell(&game, Player::Two);
        let result = seesaw_maximize(&e, 3, 7000 + round).unwrap();
        for w in result.trace.windows(2) {
            assert!(w[1] >= w[0] - 1e-12, "trace decreased: {:?}", w);
        }
    }
}

proptest! {
    #[test]
    fn bell_round_trip_matches_average_payoffs(
        payoff1 in prop::collection::vec(-5.0f64..5.0, 16),
        payoff2 in prop::collection::vec(-5.0f64..5.0, 16),
        raw_behavior in prop::collection::vec(0.01f64..1.0, 16),
        raw_prior in prop::collection::vec(0.05f64..1.0, 4),
    ) {
        let mut prior = raw_prior;
        let s: f64 = prior.iter().sum();
        prior.iter_mut().for_each(|v| *v /= s);
        prior[0] += 1.0 - prior.iter().sum::<f64>();
        let game = Game::new("prop", [2, 2], [2, 2], prior, payoff1, payoff2).unwrap();

        let mut data = raw_behavior;
        for block in 0..4 {
            let s: f64 = data[block * 4..(block + 1) * 4].iter().sum();
            for v in &mut data[block * 4..(block + 1) * 4] {
                *v /= s;
            }
        }
        let behavior = Behavior::new([2, 2], [2, 2], data).unwrap();

        let f = average_payoffs(&game, &behavior).unwrap();
        let e1 = payoff_to_bell(&game, Player::One).evaluate(&behavior).unwrap();
        let e2 = payoff_to_bell(&game, Player::Two).evaluate(&behavior).unwrap();
        prop_assert!((e1 - f.f1).abs() < 1e-9);
        prop_assert!((e2 - f.f2).abs() < 1e-9);
    }

    #[test]
    fn payoffs_are_linear_under_behavior_mixing(
        lambda in 0.0f64..1.0,
        raw_a in prop::collection::vec(0.01f64..1.0, 16),
        raw_b in prop::collection::vec(0.01f64..1.0, 16),
    ) {
        let normalize = |mut data: Vec<f64>| {
            for block in 0..4 {
                let s: f64 = data[block * 4..(block + 1) * 4].iter().sum();
                for v in &mut data[block * 4..(block + 1) * 4] {
                    *v /= s;
                }
            }
            Behavior::new([2, 2], [2, 2], data).unwrap()
        };
        let a = normalize(raw_a);
        let b = normalize(raw_b);
        let game = bellgame_core::games::example2();
        let mixed = a.mix(&b, lambda).unwrap();
        let fm = average_payoffs(&game, &mixed).unwrap();
        let fa = average_payoffs(&game, &a).unwrap();
        let fb = average_payoffs(&game, &b).unwrap();
        prop_assert!((fm.f1 - (lambda * fa.f1 + (1.0 - lambda) * fb.f1)).abs() < 1e-9);
        prop_assert!((fm.f2 - (lambda * fa.f2 + (1.0 - lambda) * fb.f2)).abs() < 1e-9);
    }

    #[test]
    fn deterministic_correlators_are_plus_minus_one(
        m1 in prop::collection::vec(0usize..2, 2),
        m2 in prop::collection::vec(0usize..2, 2),
        x1 in 0usize..2,
        x2 in 0usize..2,
    ) {
        let strategy = bellgame_core::classical::DeterministicStrategy { map1: m1, map2: m2 };
        let behavior = strategy.behavior([2, 2]);
        let e = behavior.correlator(x1, x2).unwrap();
        prop_assert!((e.abs() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn correlators_stay_in_range_on_random_behaviors(
        raw in prop::collection::vec(0.0f64..1.0, 16),
    ) {
        let mut data = raw;
        for block in 0..4 {
            let s: f64 = data[block * 4..(block + 1) * 4].iter().sum();
            prop_assume!(s > 1e-9);
            for v in &mut data[block * 4..(block + 1) * 4] {
                *v /= s;
            }
        }
        let behavior = Behavior::new([2, 2], [2, 2], data).unwrap();
        for x1 in 0..2 {
            for x2 in 0..2 {
                let e = behavior.correlator(x1, x2).unwrap();
                prop_assert!((-1.0 - 1e-9..=1.0 + 1e-9).contains(&e));
            }
        }
    }
}
