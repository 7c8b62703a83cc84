//! Classical advice: deterministic strategy enumeration, local bounds, and
//! the classical payoff polytope.
//!
//! Classical advice is a shared random variable; by convexity the reachable
//! payoff set is the convex hull of the finitely many deterministic strategy
//! profiles, so exhaustive enumeration gives exact bounds. Enumeration work
//! is split across threads when the `parallel` feature is enabled; the merge
//! is order-independent, so both paths agree bit for bit.

use crate::bell::{BellExpression, FacetInequality};
use crate::error::{Error, Result};
use crate::exec;
use crate::game::{Behavior, Game, PayoffVector, Player};
use crate::tensor::Tensor4;
use crate::tolerances;

/// One pure strategy per player: an action for every own type.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct DeterministicStrategy {
    pub map1: Vec<usize>,
    pub map2: Vec<usize>,
}

impl DeterministicStrategy {
    /// The behavior induced by the profile: a point mass per type pair.
    pub fn behavior(&self, n_actions: [usize; 2]) -> Behavior {
        let dims = [self.map1.len(), self.map2.len(), n_actions[0], n_actions[1]];
        let mut p = Tensor4::zeros(dims);
        for (x1, &a1) in self.map1.iter().enumerate() {
            for (x2, &a2) in self.map2.iter().enumerate() {
                *p.at_mut(x1, x2, a1, a2) = 1.0;
            }
        }
        Behavior::from_tensor_unchecked(p)
    }
}

/// Shared-randomness strategy: a distribution over deterministic profiles.
#[derive(Clone, Debug)]
pub struct ClassicalMixture {
    profiles: Vec<DeterministicStrategy>,
    weights: Vec<f64>,
}

impl ClassicalMixture {
    pub fn new(profiles: Vec<DeterministicStrategy>, weights: Vec<f64>) -> Result<Self> {
        if profiles.len() != weights.len() || profiles.is_empty() {
            return Err(Error::Contract(
                "mixture needs one weight per profile".to_string(),
            ));
        }
        let sum: f64 = weights.iter().sum();
        if (sum - 1.0).abs() > tolerances::WEIGHT_SUM || weights.iter().any(|&w| w < 0.0) {
            return Err(Error::Contract(format!(
                "mixture weights must be nonnegative and sum to 1, got {sum}"
            )));
        }
        Ok(ClassicalMixture { profiles, weights })
    }

    pub fn point(profile: DeterministicStrategy) -> Self {
        ClassicalMixture {
            profiles: vec![profile],
            weights: vec![1.0],
        }
    }

    pub fn profiles(&self) -> &[DeterministicStrategy] {
        &self.profiles
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn behavior(&self, n_actions: [usize; 2]) -> Behavior {
        let dims = [
            self.profiles[0].map1.len(),
            self.profiles[0].map2.len(),
            n_actions[0],
            n_actions[1],
        ];
        let mut t = Tensor4::zeros(dims);
        for (profile, &w) in self.profiles.iter().zip(&self.weights) {
            let b = profile.behavior(n_actions);
            for (dst, src) in t.data_mut().iter_mut().zip(b.flat()) {
                *dst += w * src;
            }
        }
        Behavior::from_tensor_unchecked(t)
    }
}

/// Number of deterministic profiles for the scenario, checked against `cap`.
fn profile_count(n_types: [usize; 2], n_actions: [usize; 2], cap: u128) -> Result<(u128, u128)> {
    let per_player = |na: usize, nt: usize| -> u128 { (na as u128).pow(nt as u32) };
    let c1 = per_player(n_actions[0], n_types[0]);
    let c2 = per_player(n_actions[1], n_types[1]);
    let total = c1.checked_mul(c2).unwrap_or(u128::MAX);
    if total > cap {
        return Err(Error::ResourceLimit {
            what: "deterministic strategy profiles",
            count: total,
            cap,
        });
    }
    Ok((c1, total))
}

fn decode_map(mut index: u128, n_actions: usize, n_types: usize) -> Vec<usize> {
    let mut map = vec![0usize; n_types];
    for slot in map.iter_mut() {
        *slot = (index % n_actions as u128) as usize;
        index /= n_actions as u128;
    }
    map
}

fn profile_at(index: u128, c1: u128, n_types: [usize; 2], n_actions: [usize; 2]) -> DeterministicStrategy {
    DeterministicStrategy {
        map1: decode_map(index % c1, n_actions[0], n_types[0]),
        map2: decode_map(index / c1, n_actions[1], n_types[1]),
    }
}

fn profile_payoff(game: &Game, profile: &DeterministicStrategy) -> PayoffVector {
    let [nt1, nt2] = game.n_types();
    let mut f1 = 0.0;
    let mut f2 = 0.0;
    for x1 in 0..nt1 {
        for x2 in 0..nt2 {
            let mu = game.prior(x1, x2);
            let (a1, a2) = (profile.map1[x1], profile.map2[x2]);
            f1 += mu * game.payoff(Player::One, x1, x2, a1, a2);
            f2 += mu * game.payoff(Player::Two, x1, x2, a1, a2);
        }
    }
    PayoffVector::new(f1, f2)
}

/// Iterator over all deterministic profiles with their exact payoff pairs.
pub struct DeterministicEnumeration<'a> {
    game: &'a Game,
    c1: u128,
    total: u128,
    next: u128,
}

impl<'a> Iterator for DeterministicEnumeration<'a> {
    type Item = (DeterministicStrategy, PayoffVector);

    fn next(&mut self) -> Option<Self::Item> {
        if self.next >= self.total {
            return None;
        }
        let profile = profile_at(
            self.next,
            self.c1,
            self.game.n_types(),
            self.game.n_actions(),
        );
        self.next += 1;
        let payoff = profile_payoff(self.game, &profile);
        Some((profile, payoff))
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let rem = (self.total - self.next) as usize;
        (rem, Some(rem))
    }
}

impl ExactSizeIterator for DeterministicEnumeration<'_> {}

/// Enumerates all (nActions1^nTypes1)·(nActions2^nTypes2) deterministic
/// profiles exactly once, with the default cap.
pub fn enumerate_deterministic(game: &Game) -> Result<DeterministicEnumeration<'_>> {
    enumerate_deterministic_with_cap(game, tolerances::PROFILE_CAP)
}

pub fn enumerate_deterministic_with_cap(
    game: &Game,
    cap: u128,
) -> Result<DeterministicEnumeration<'_>> {
    let (c1, total) = profile_count(game.n_types(), game.n_actions(), cap)?;
    Ok(DeterministicEnumeration {
        game,
        c1,
        total,
        next: 0,
    })
}

/// Exact classical bound of a Bell expression: the maximum over all
/// deterministic profiles, with one maximizing profile as witness. Mixtures
/// cannot exceed it by linearity.
pub fn local_bound(expression: &BellExpression) -> Result<(f64, DeterministicStrategy)> {
    local_bound_with_cap(expression, tolerances::PROFILE_CAP)
}

pub fn local_bound_with_cap(
    expression: &BellExpression,
    cap: u128,
) -> Result<(f64, DeterministicStrategy)> {
    let n_types = expression.n_types();
    let n_actions = expression.n_actions();
    let (c1, total) = profile_count(n_types, n_actions, cap)?;
    let (_, value, witness) = exec::argmax_by_key(total as usize, |i| {
        let profile = profile_at(i as u128, c1, n_types, n_actions);
        let value = expression.evaluate_deterministic(&profile.map1, &profile.map2);
        (value, profile)
    })
    .expect("at least one profile exists");
    Ok((value, witness))
}

/// Convex polytope of classically reachable payoff pairs.
#[derive(Clone, Debug, serde::Serialize, serde::Deserialize)]
pub struct PayoffPolytope {
    /// Hull vertices in counterclockwise order (two entries for a segment,
    /// one for a point).
    pub vertices: Vec<PayoffVector>,
    pub facets: Vec<FacetInequality>,
}

impl PayoffPolytope {
    /// Membership test: true when `v` satisfies every facet within the hull
    /// tolerance.
    pub fn facet_check(&self, v: &PayoffVector) -> bool {
        self.facets
            .iter()
            .all(|f| f.satisfied_by(v, tolerances::HULL_GEOMETRY))
    }
}

/// Hull of all deterministic payoff pairs, with facet inequalities read off
/// consecutive hull edges.
pub fn classical_payoff_polytope(game: &Game) -> Result<PayoffPolytope> {
    classical_payoff_polytope_with_cap(game, tolerances::PROFILE_CAP)
}

pub fn classical_payoff_polytope_with_cap(game: &Game, cap: u128) -> Result<PayoffPolytope> {
    let (c1, total) = profile_count(game.n_types(), game.n_actions(), cap)?;
    let points = exec::map_collect(total as usize, |i| {
        let profile = profile_at(i as u128, c1, game.n_types(), game.n_actions());
        let p = profile_payoff(game, &profile);
        [p.f1, p.f2]
    });
    Ok(hull_polytope(&points))
}

/// 2D convex hull (monotone chain) with facet extraction. Points within
/// [`tolerances::HULL_GEOMETRY`] of each other are treated as duplicates and
/// collinear hull points are dropped; ties are broken by lexicographic
/// ordering so the result does not depend on input order.
pub fn convex_hull_2d(points: &[[f64; 2]]) -> PayoffPolytope {
    hull_polytope(points)
}

fn hull_polytope(points: &[[f64; 2]]) -> PayoffPolytope {
    let tol = tolerances::HULL_GEOMETRY;
    let mut sorted: Vec<[f64; 2]> = points.to_vec();
    sorted.sort_by(|a, b| {
        a[0].partial_cmp(&b[0])
            .unwrap()
            .then(a[1].partial_cmp(&b[1]).unwrap())
    });
    sorted.dedup_by(|a, b| (a[0] - b[0]).abs() <= tol && (a[1] - b[1]).abs() <= tol);

    if sorted.is_empty() {
        return PayoffPolytope {
            vertices: vec![],
            facets: vec![],
        };
    }
    if sorted.len() == 1 {
        return PayoffPolytope {
            vertices: vec![PayoffVector::new(sorted[0][0], sorted[0][1])],
            facets: vec![],
        };
    }

    let cross = |o: [f64; 2], a: [f64; 2], b: [f64; 2]| -> f64 {
        (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])
    };

    // Lower and upper chains; keeping only strict left turns drops collinear
    // interior points. For a collinear input each chain reduces to one
    // endpoint, so the hull is the extreme segment.
    let chain = |iter: &mut dyn Iterator<Item = [f64; 2]>| -> Vec<[f64; 2]> {
        let mut out: Vec<[f64; 2]> = Vec::new();
        for p in iter {
            while out.len() >= 2 && cross(out[out.len() - 2], out[out.len() - 1], p) <= tol {
                out.pop();
            }
            out.push(p);
        }
        out.pop();
        out
    };
    let mut vertices = chain(&mut sorted.iter().copied());
    vertices.extend(chain(&mut sorted.iter().rev().copied()));

    let facets = if vertices.len() == 2 {
        segment_facets(vertices[0], vertices[1])
    } else {
        polygon_facets(&vertices)
    };

    PayoffPolytope {
        vertices: vertices
            .into_iter()
            .map(|p| PayoffVector::new(p[0], p[1]))
            .collect(),
        facets,
    }
}

/// Outward facet of the directed edge p -> q of a counterclockwise polygon,
/// with the normal scaled so max(|β1|, |β2|) = 1.
fn edge_facet(p: [f64; 2], q: [f64; 2]) -> FacetInequality {
    let normal = [q[1] - p[1], p[0] - q[0]];
    let scale = normal[0].abs().max(normal[1].abs());
    let beta = [normal[0] / scale, normal[1] / scale];
    FacetInequality {
        beta,
        beta0: beta[0] * p[0] + beta[1] * p[1],
    }
}

fn polygon_facets(vertices: &[[f64; 2]]) -> Vec<FacetInequality> {
    (0..vertices.len())
        .map(|i| edge_facet(vertices[i], vertices[(i + 1) % vertices.len()]))
        .collect()
}

/// A degenerate (segment) hull is pinned by four inequalities: the two
/// opposite line constraints and the two endpoint caps.
fn segment_facets(p: [f64; 2], q: [f64; 2]) -> Vec<FacetInequality> {
    let line = edge_facet(p, q);
    let reverse = edge_facet(q, p);
    let direction = [q[0] - p[0], q[1] - p[1]];
    let scale = direction[0].abs().max(direction[1].abs());
    let along = [direction[0] / scale, direction[1] / scale];
    let cap_q = FacetInequality {
        beta: along,
        beta0: along[0] * q[0] + along[1] * q[1],
    };
    let cap_p = FacetInequality {
        beta: [-along[0], -along[1]],
        beta0: -(along[0] * p[0] + along[1] * p[1]),
    };
    vec![line, reverse, cap_q, cap_p]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bell::{chsh_expression, combine_payoffs};
    use crate::games;
    use approx::assert_abs_diff_eq;

    #[test]
    fn example1_has_sixteen_profiles() {
        let g = games::example1();
        assert_eq!(enumerate_deterministic(&g).unwrap().count(), 16);
    }

    #[test]
    fn example2_distinct_payoff_points() {
        // Brute-force oracle: the only deterministic payoff pairs are
        // (±2, 0) and (0, ±2); F1 and F2 cannot both be nonzero since they
        // require player 2's responses to agree and differ respectively.
        let g = games::example2();
        let mut points: Vec<(i64, i64)> = enumerate_deterministic(&g)
            .unwrap()
            .map(|(_, p)| (p.f1.round() as i64, p.f2.round() as i64))
            .collect();
        for (_, p) in enumerate_deterministic(&g).unwrap() {
            assert_abs_diff_eq!(p.f1, p.f1.round(), epsilon = 1e-12);
            assert_abs_diff_eq!(p.f2, p.f2.round(), epsilon = 1e-12);
        }
        points.sort_unstable();
        points.dedup();
        assert_eq!(points, vec![(-2, 0), (0, -2), (0, 2), (2, 0)]);
    }

    #[test]
    fn trivial_game_has_one_profile() {
        let g = Game::new("unit", [1, 1], [1, 1], vec![1.0], vec![7.0], vec![7.0]).unwrap();
        let profiles: Vec<_> = enumerate_deterministic(&g).unwrap().collect();
        assert_eq!(profiles.len(), 1);
        assert_eq!(profiles[0].1, PayoffVector::new(7.0, 7.0));
    }

    #[test]
    fn chsh_local_bound_is_two() {
        let (bound, witness) = local_bound(&chsh_expression()).unwrap();
        assert_eq!(bound, 2.0);
        let value = chsh_expression().evaluate(&witness.behavior([2, 2])).unwrap();
        assert_eq!(value, 2.0);
    }

    #[test]
    fn example2_combined_local_bound_is_two() {
        let g = games::example2();
        let (bound, _) = local_bound(&combine_payoffs(&g, [1.0, 1.0])).unwrap();
        assert_eq!(bound, 2.0);
    }

    #[test]
    fn zero_expression_local_bound_is_zero() {
        let e = crate::bell::BellExpression::new([2, 2], [2, 2], vec![0.0; 16]).unwrap();
        assert_eq!(local_bound(&e).unwrap().0, 0.0);
    }

    #[test]
    fn cap_violation_names_the_count() {
        let g = games::example1();
        match enumerate_deterministic_with_cap(&g, 10) {
            Err(Error::ResourceLimit { count, cap, .. }) => {
                assert_eq!(count, 16);
                assert_eq!(cap, 10);
            }
            Err(other) => panic!("expected resource limit, got {other:?}"),
            Ok(_) => panic!("expected resource limit, enumeration succeeded"),
        }
    }

    #[test]
    fn example2_polytope_is_the_square() {
        let g = games::example2();
        let p = classical_payoff_polytope(&g).unwrap();
        let mut vs: Vec<(i64, i64)> = p
            .vertices
            .iter()
            .map(|v| (v.f1.round() as i64, v.f2.round() as i64))
            .collect();
        assert_eq!(p.vertices.len(), 4);
        vs.sort_unstable();
        assert_eq!(vs, vec![(-2, 0), (0, -2), (0, 2), (2, 0)]);
        assert_eq!(p.facets.len(), 4);
        // Counterclockwise orientation: consecutive cross products positive.
        for i in 0..4 {
            let a = &p.vertices[i];
            let b = &p.vertices[(i + 1) % 4];
            let c = &p.vertices[(i + 2) % 4];
            let cross = (b.f1 - a.f1) * (c.f2 - a.f2) - (b.f2 - a.f2) * (c.f1 - a.f1);
            assert!(cross > 0.0);
        }
    }

    #[test]
    fn example1_polytope_is_the_diagonal_segment() {
        // Brute-force oracle: deterministic CHSH values are exactly ±2 and
        // both players score identically, so the hull is the segment from
        // (−2,−2) to (2,2).
        let g = games::example1();
        for (_, p) in enumerate_deterministic(&g).unwrap() {
            assert_eq!(p.f1, p.f2);
            assert!(p.f1 == 2.0 || p.f1 == -2.0);
        }
        let p = classical_payoff_polytope(&g).unwrap();
        assert_eq!(p.vertices.len(), 2);
        let mut vs: Vec<(i64, i64)> = p
            .vertices
            .iter()
            .map(|v| (v.f1.round() as i64, v.f2.round() as i64))
            .collect();
        vs.sort_unstable();
        assert_eq!(vs, vec![(-2, -2), (2, 2)]);
        assert_eq!(p.facets.len(), 4);
        // The segment membership test accepts the endpoints and interior...
        assert!(p.facet_check(&PayoffVector::new(0.0, 0.0)));
        assert!(p.facet_check(&PayoffVector::new(2.0, 2.0)));
        // ...and rejects points off the line or beyond the caps.
        assert!(!p.facet_check(&PayoffVector::new(1.0, 0.0)));
        assert!(!p.facet_check(&PayoffVector::new(3.0, 3.0)));
    }

    #[test]
    fn constant_game_collapses_to_a_point() {
        let g = Game::new(
            "constant",
            [2, 2],
            [2, 2],
            vec![0.25; 4],
            vec![3.0; 16],
            vec![3.0; 16],
        )
        .unwrap();
        let p = classical_payoff_polytope(&g).unwrap();
        assert_eq!(p.vertices.len(), 1);
        assert_abs_diff_eq!(p.vertices[0].f1, 3.0, epsilon = 1e-12);
        assert!(p.facets.is_empty());
    }

    #[test]
    fn facet_check_matches_paper_points_on_example2() {
        let g = games::example2();
        let p = classical_payoff_polytope(&g).unwrap();
        let r = 2f64.sqrt();
        assert!(!p.facet_check(&PayoffVector::new(r, r)));
        assert!(p.facet_check(&PayoffVector::new(2.0, 0.0)));
        assert!(p.facet_check(&PayoffVector::new(0.0, 0.0)));
    }

    #[test]
    fn every_enumerated_point_passes_facet_check() {
        for g in [games::example1(), games::example2(), games::example3()] {
            let p = classical_payoff_polytope(&g).unwrap();
            for (_, point) in enumerate_deterministic(&g).unwrap() {
                assert!(p.facet_check(&point), "point {point:?} fails in {}", g.label());
            }
        }
    }

    #[test]
    fn local_bound_equals_best_hull_vertex_in_direction() {
        let g = games::example2();
        for beta in [[1.0, 1.0], [1.0, 0.0], [-0.3, 0.8], [0.5, -0.5]] {
            let (bound, _) = local_bound(&combine_payoffs(&g, beta)).unwrap();
            let p = classical_payoff_polytope(&g).unwrap();
            let best = p
                .vertices
                .iter()
                .map(|v| beta[0] * v.f1 + beta[1] * v.f2)
                .fold(f64::NEG_INFINITY, f64::max);
            assert_abs_diff_eq!(bound, best, epsilon = 1e-9);
        }
    }

    #[test]
    fn mixtures_never_beat_the_local_bound() {
        use rand::prelude::*;
        use rand_chacha::ChaCha8Rng;
        let g = games::example2();
        let e = combine_payoffs(&g, [1.0, 1.0]);
        let (bound, _) = local_bound(&e).unwrap();
        let profiles: Vec<_> = enumerate_deterministic(&g)
            .unwrap()
            .map(|(s, _)| s)
            .collect();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..10_000 {
            let k = rng.gen_range(1..=4usize);
            let chosen: Vec<_> = (0..k)
                .map(|_| profiles[rng.gen_range(0..profiles.len())].clone())
                .collect();
            let mut w: Vec<f64> = (0..k).map(|_| rng.gen_range(0.0..1.0)).collect();
            let s: f64 = w.iter().sum();
            w.iter_mut().for_each(|x| *x /= s);
            // Exact renormalization so the weight-sum invariant holds.
            let correction: f64 = 1.0 - w.iter().sum::<f64>();
            w[0] += correction;
            let m = ClassicalMixture::new(chosen, w).unwrap();
            let v = e.evaluate(&m.behavior([2, 2])).unwrap();
            assert!(v <= bound + 1e-9);
        }
    }

    #[test]
    fn hull_is_invariant_under_point_order() {
        use rand::prelude::*;
        use rand_chacha::ChaCha8Rng;
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let mut points: Vec<[f64; 2]> = (0..200)
            .map(|_| [rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0)])
            .collect();
        let reference = convex_hull_2d(&points);
        for _ in 0..5 {
            points.shuffle(&mut rng);
            let shuffled = convex_hull_2d(&points);
            assert_eq!(reference.vertices.len(), shuffled.vertices.len());
            for v in &reference.vertices {
                assert!(shuffled
                    .vertices
                    .iter()
                    .any(|w| (v.f1 - w.f1).abs() < 1e-9 && (v.f2 - w.f2).abs() < 1e-9));
            }
        }
    }
}
