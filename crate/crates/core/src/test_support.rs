//! Shared fixtures for unit tests.

use crate::game::Behavior;
use rand::Rng;

/// Behavior with correlators (−1)^{X1 X2}/√2 and uniform marginals, the
/// statistics of the CHSH-optimal singlet strategy.
pub(crate) fn tsirelson_behavior() -> Behavior {
    let mut data = Vec::with_capacity(16);
    for x1 in 0..2usize {
        for x2 in 0..2usize {
            let e = if x1 * x2 == 1 { -1.0 } else { 1.0 } / 2f64.sqrt();
            for a1 in 0..2usize {
                for a2 in 0..2usize {
                    let sign = if a1 == a2 { 1.0 } else { -1.0 };
                    data.push((1.0 + sign * e) / 4.0);
                }
            }
        }
    }
    Behavior::new([2, 2], [2, 2], data).unwrap()
}

/// Random local (product of per-type conditionals) behavior; always
/// no-signaling by construction.
pub(crate) fn random_product_behavior(
    rng: &mut impl Rng,
    n_types: [usize; 2],
    n_actions: [usize; 2],
) -> Behavior {
    let conditional = |rng: &mut dyn rand::RngCore, nt: usize, na: usize| -> Vec<Vec<f64>> {
        (0..nt)
            .map(|_| {
                let mut row: Vec<f64> = (0..na).map(|_| rng.gen_range(0.0..1.0)).collect();
                let s: f64 = row.iter().sum();
                row.iter_mut().for_each(|v| *v /= s);
                row
            })
            .collect()
    };
    let p1 = conditional(rng, n_types[0], n_actions[0]);
    let p2 = conditional(rng, n_types[1], n_actions[1]);
    let mut data = Vec::with_capacity(n_types[0] * n_types[1] * n_actions[0] * n_actions[1]);
    for x1 in 0..n_types[0] {
        for x2 in 0..n_types[1] {
            for a1 in 0..n_actions[0] {
                for a2 in 0..n_actions[1] {
                    data.push(p1[x1][a1] * p2[x2][a2]);
                }
            }
        }
    }
    Behavior::new(n_types, n_actions, data).unwrap()
}
