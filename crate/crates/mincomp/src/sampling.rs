//! Seeded generators for randomized oracles and the invariance corpus.
//!
//! Everything here is deterministic for a fixed seed.

use crate::setalg::{ApComponent, IntSetExpr, Part, PowerIntervalFamily};
use crate::Int;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random exact expression with at most `max_components` components, steps
/// up to `max_step`, and starts/values in `[-span, span]`.
pub fn random_exact_expr(
    rng: &mut ChaCha8Rng,
    max_components: usize,
    max_step: u32,
    span: i64,
) -> IntSetExpr {
    let count = rng.gen_range(1..=max_components);
    let mut parts = Vec::with_capacity(count);
    for _ in 0..count {
        let step = rng.gen_range(1..=max_step);
        let start = rng.gen_range(-span..=span);
        parts.push(Part::Ap(match rng.gen_range(0..4u8) {
            0 => {
                let len = rng.gen_range(1..=6usize);
                let vals: Vec<Int> = (0..len)
                    .map(|_| Int::from(rng.gen_range(-span..=span)))
                    .collect();
                ApComponent::finite(vals)
            }
            1 => ApComponent::up_ray(start, step),
            2 => ApComponent::down_ray(start, step),
            _ => ApComponent::line(start, step),
        }));
    }
    IntSetExpr::from_parts(parts).expect("generated components are valid")
}

/// Random candidate `G` for the absorber check: a down-ray with optional
/// finite perturbations and an optional second down-ray.
pub fn random_left_heavy_set(rng: &mut ChaCha8Rng) -> IntSetExpr {
    let mut parts = vec![Part::Ap(ApComponent::down_ray(
        rng.gen_range(-10..=10i64),
        rng.gen_range(1..=4u32),
    ))];
    if rng.gen_bool(0.4) {
        parts.push(Part::Ap(ApComponent::down_ray(
            rng.gen_range(-10..=10i64),
            rng.gen_range(1..=4u32),
        )));
    }
    let extras = rng.gen_range(0..=4usize);
    if extras > 0 {
        let vals: Vec<Int> = (0..extras)
            .map(|_| Int::from(rng.gen_range(-30..=30i64)))
            .collect();
        parts.push(Part::Ap(ApComponent::finite(vals)));
    }
    IntSetExpr::from_parts(parts).expect("generated components are valid")
}

/// Deterministic corpus of sets spanning every representation tier: exact
/// unions, power families, and oracle complement wrappers.
pub fn invariance_corpus() -> Vec<IntSetExpr> {
    let mut out: Vec<IntSetExpr> = Vec::new();

    // exact tier
    out.push(ApComponent::line(0, 2).into());
    out.push(ApComponent::line(1, 3).into());
    out.push(ApComponent::up_ray(1, 1).into());
    out.push(ApComponent::up_ray(0, 2).into());
    out.push(ApComponent::up_ray(5, 3).into());
    out.push(ApComponent::down_ray(0, 2).into());
    out.push(ApComponent::down_ray(-7, 5).into());
    out.push(ApComponent::finite([0]).into());
    out.push(ApComponent::finite([1, 2, 3]).into());
    out.push(ApComponent::finite([-9, 0, 4, 17]).into());
    for (a, s, b, t) in [(0i64, 2u32, 1i64, 4u32), (0, 3, 1, 3), (2, 4, 0, 6), (1, 2, 0, 8)] {
        out.push(
            IntSetExpr::from_parts(vec![
                Part::Ap(ApComponent::up_ray(a, s)),
                Part::Ap(ApComponent::up_ray(b, t)),
            ])
            .unwrap(),
        );
    }
    out.push(
        IntSetExpr::from_parts(vec![
            Part::Ap(ApComponent::up_ray(0, 4)),
            Part::Ap(ApComponent::finite([2, 5])),
        ])
        .unwrap(),
    );
    out.push(
        IntSetExpr::from_parts(vec![
            Part::Ap(ApComponent::down_ray(0, 3)),
            Part::Ap(ApComponent::up_ray(1, 3)),
        ])
        .unwrap(),
    );
    out.push(
        IntSetExpr::from_parts(vec![
            Part::Ap(ApComponent::line(0, 6)),
            Part::Ap(ApComponent::up_ray(2, 6)),
        ])
        .unwrap(),
    );

    // family tier
    out.push(crate::reference::dyadic_band_set());
    out.push(crate::reference::decade_band_set());
    out.push(PowerIntervalFamily::new(2, 1, 0, 1, 0, 1, true, vec![]).unwrap().into());
    out.push(PowerIntervalFamily::new(3, 1, 0, 1, 5, 2, true, vec![]).unwrap().into());
    out.push(PowerIntervalFamily::new(2, 1, 0, 2, -1, 1, true, vec![]).unwrap().into());
    out.push(
        PowerIntervalFamily::new(5, 2, 1, 3, 0, 1, false, vec![Int::from(2)])
            .unwrap()
            .into(),
    );
    out.push(PowerIntervalFamily::new(10, 1, -3, 1, 3, 1, true, vec![]).unwrap().into());

    // oracle tier: positive-complement wrappers over mixed unions
    let mixed = IntSetExpr::from_parts(vec![
        Part::Ap(ApComponent::up_ray(0, 2)),
        Part::Power(crate::reference::dyadic_band_family()),
    ])
    .unwrap();
    out.push(crate::setalg::complement_positive(&mixed).unwrap());
    let mixed2 = IntSetExpr::from_parts(vec![
        Part::Ap(ApComponent::up_ray(1, 3)),
        Part::Power(crate::reference::decade_band_family()),
    ])
    .unwrap();
    out.push(crate::setalg::complement_positive(&mixed2).unwrap());

    // seeded exact fillers up to 50 entries
    let mut r = rng(0x5eed_c0de);
    while out.len() < 50 {
        out.push(random_exact_expr(&mut r, 3, 6, 24));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_has_fifty_sets() {
        assert_eq!(invariance_corpus().len(), 50);
    }

    #[test]
    fn generators_are_deterministic() {
        let mut a = rng(7);
        let mut b = rng(7);
        for _ in 0..20 {
            assert_eq!(
                random_exact_expr(&mut a, 4, 6, 50),
                random_exact_expr(&mut b, 4, 6, 50)
            );
        }
    }
}
