//! Symbolic and windowed sumsets.
//!
//! The exact class is closed under sumsets: finite parts shift, two up-rays
//! combine over the numerical semigroup generated by their reduced steps, an
//! up-ray against a down-ray fills a full line on the gcd lattice, and lines
//! absorb everything to the gcd lattice.

use super::component::ApComponent;
use super::{IntSetExpr, Part, Window};
use crate::{Error, Int, Result};
use num_integer::Integer;
use num_traits::{One, ToPrimitive};
use std::collections::BTreeSet;

const FINITE_PAIR_BUDGET: u64 = 1 << 22;
const SEMIGROUP_BUDGET: u64 = 1 << 20;

/// Soundness of a windowed sumset.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Soundness {
    /// Both operands exact: membership and absence are both certain.
    Exact,
    /// An oracle operand was enumerated under a budget: reported members are
    /// certainly in the sumset, absences are certain only for representations
    /// inside the recorded budget window.
    PositiveOnly,
}

#[derive(Clone, Debug)]
pub struct WindowSumset {
    pub members: Vec<Int>,
    pub soundness: Soundness,
    /// Enumeration window used for non-finite oracle operands.
    pub budget: Option<Window>,
}

/// Symbolic sumset `{x + y : x ∈ a, y ∈ b}` of two exact expressions.
pub fn sumset(a: &IntSetExpr, b: &IntSetExpr) -> Result<IntSetExpr> {
    let ca = a.exact_components().map_err(|_| {
        Error::Unsupported("sumset requires exact operands; use window_sumset instead".into())
    })?;
    let cb = b.exact_components().map_err(|_| {
        Error::Unsupported("sumset requires exact operands; use window_sumset instead".into())
    })?;
    if a.is_empty_set() || b.is_empty_set() {
        return Ok(IntSetExpr::empty());
    }
    let mut parts = Vec::new();
    for x in &ca {
        for y in &cb {
            parts.extend(component_sum(x, y)?);
        }
    }
    let traces = super::Traces::from_components(&parts)?;
    IntSetExpr::from_components(traces.to_components()?)
}

fn component_sum(x: &ApComponent, y: &ApComponent) -> Result<Vec<ApComponent>> {
    use ApComponent::*;
    Ok(match (x, y) {
        (Finite(a), Finite(b)) => {
            if (a.len() as u64).saturating_mul(b.len() as u64) > FINITE_PAIR_BUDGET {
                return Err(Error::Budget {
                    what: "finite × finite sumset".into(),
                    limit: FINITE_PAIR_BUDGET,
                });
            }
            let mut sums: Vec<Int> = Vec::with_capacity(a.len() * b.len());
            for u in a {
                for v in b {
                    sums.push(u + v);
                }
            }
            sums.sort();
            sums.dedup();
            vec![Finite(sums)]
        }
        (Finite(a), other) | (other, Finite(a)) => {
            a.iter().map(|f| other.shifted(f)).collect()
        }
        (UpRay { start: a, step: s }, UpRay { start: b, step: t }) => up_up(&(a + b), s, t)?,
        (DownRay { start: a, step: s }, DownRay { start: b, step: t }) => {
            // mirror of the up-up case
            let mirrored = up_up(&(-(a + b)), s, t)?;
            mirrored.into_iter().map(|c| c.reflected()).collect()
        }
        (UpRay { start: a, step: s }, DownRay { start: b, step: t })
        | (DownRay { start: b, step: t }, UpRay { start: a, step: s }) => {
            let g = s.gcd(t);
            vec![Line {
                residue: (a + b).mod_floor(&g),
                step: g,
            }]
        }
        (Line { residue, step }, other) | (other, Line { residue, step }) => {
            // other is a ray or line here; lines absorb to the gcd lattice
            let (shift, ostep) = match other {
                UpRay { start, step } | DownRay { start, step } => (start, step),
                Line {
                    residue: r2,
                    step: s2,
                } => (r2, s2),
                Finite(_) => unreachable!("finite handled above"),
            };
            let g = step.gcd(ostep);
            vec![Line {
                residue: (residue + shift).mod_floor(&g),
                step: g,
            }]
        }
    })
}

/// `{a} + sℕ + tℕ` as components: the numerical semigroup generated by the
/// reduced steps, scaled back by their gcd and shifted to `a`.
fn up_up(a: &Int, s: &Int, t: &Int) -> Result<Vec<ApComponent>> {
    let g = s.gcd(t);
    let s1 = s / &g;
    let t1 = t / &g;
    if s1.is_one() || t1.is_one() {
        return Ok(vec![ApComponent::UpRay {
            start: a.clone(),
            step: g,
        }]);
    }
    // conductor of ⟨s1, t1⟩ with gcd 1: every value ≥ (s1−1)(t1−1) is hit
    let conductor = (&s1 - Int::one()) * (&t1 - Int::one());
    let Some(c) = conductor.to_u64().filter(|&c| c <= SEMIGROUP_BUDGET) else {
        return Err(Error::Budget {
            what: format!("numerical semigroup ⟨{s1},{t1}⟩ sieve"),
            limit: SEMIGROUP_BUDGET,
        });
    };
    let (s1u, t1u) = (s1.to_u64().unwrap() as usize, t1.to_u64().unwrap() as usize);
    let c = c as usize;
    let mut hit = vec![false; c];
    if c > 0 {
        hit[0] = true;
        for i in 0..c {
            if hit[i] {
                if i + s1u < c {
                    hit[i + s1u] = true;
                }
                if i + t1u < c {
                    hit[i + t1u] = true;
                }
            }
        }
    }
    let sporadic: Vec<Int> = (0..c)
        .filter(|&i| hit[i])
        .map(|i| a + Int::from(i as u64) * &g)
        .collect();
    let mut out = Vec::new();
    if !sporadic.is_empty() {
        out.push(ApComponent::Finite(sporadic));
    }
    out.push(ApComponent::UpRay {
        start: a + Int::from(c as u64) * &g,
        step: g,
    });
    Ok(out)
}

/// Members of `a + b` inside `target`.
///
/// With two exact operands this delegates to the symbolic sumset and is
/// exact. Otherwise finite parts are enumerated in full, every other part is
/// enumerated over the target padded by twice its width, and the result is
/// positive-only sound under that recorded budget.
pub fn window_sumset(a: &IntSetExpr, b: &IntSetExpr, target: &Window) -> Result<WindowSumset> {
    if a.is_exact() && b.is_exact() {
        let s = sumset(a, b)?;
        return Ok(WindowSumset {
            members: s.enumerate(target)?,
            soundness: Soundness::Exact,
            budget: None,
        });
    }
    let pad = Int::from(2) * target.width() + 128;
    let budget = Window::new(&target.lo - &pad, &target.hi + &pad)?;
    let xs = operand_candidates(a, &budget)?;
    let ys = operand_candidates(b, &budget)?;
    let mut members: BTreeSet<Int> = BTreeSet::new();
    for x in &xs {
        // y must land in [lo − x, hi − x]
        let from = &target.lo - x;
        let to = &target.hi - x;
        let lo_idx = ys.partition_point(|y| y < &from);
        for y in &ys[lo_idx..] {
            if y > &to {
                break;
            }
            members.insert(x + y);
        }
    }
    Ok(WindowSumset {
        members: members.into_iter().collect(),
        soundness: Soundness::PositiveOnly,
        budget: Some(budget),
    })
}

fn operand_candidates(e: &IntSetExpr, budget: &Window) -> Result<Vec<Int>> {
    // fully enumerable expressions contribute all their members
    if e.is_exact() {
        if let (super::ExprBound::Finite(lo), super::ExprBound::Finite(hi)) =
            (e.min_extent(), e.max_extent())
        {
            return e.enumerate(&Window::new(lo, hi)?);
        }
    }
    let mut parts_window = e.enumerate(budget)?;
    // finite components may extend beyond the budget window; include them
    for p in e.parts() {
        if let Part::Ap(ApComponent::Finite(v)) = p {
            parts_window.extend(v.iter().cloned());
        }
    }
    parts_window.sort();
    parts_window.dedup();
    Ok(parts_window)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::setalg::PowerIntervalFamily;

    fn int(n: i64) -> Int {
        Int::from(n)
    }

    fn expr(c: ApComponent) -> IntSetExpr {
        IntSetExpr::from(c)
    }

    #[test]
    fn even_plus_odd_rays() {
        let s = sumset(
            &expr(ApComponent::up_ray(0, 2)),
            &expr(ApComponent::up_ray(1, 2)),
        )
        .unwrap();
        assert_eq!(s.parts(), &[Part::Ap(ApComponent::up_ray(1, 2))]);
    }

    #[test]
    fn up_plus_down_fills_line() {
        let s = sumset(
            &expr(ApComponent::up_ray(3, 4)),
            &expr(ApComponent::down_ray(2, 4)),
        )
        .unwrap();
        assert_eq!(s.parts(), &[Part::Ap(ApComponent::line(1, 4))]);
    }

    #[test]
    fn finite_plus_line() {
        let s = sumset(
            &expr(ApComponent::finite([0, 1])),
            &expr(ApComponent::line(0, 3)),
        )
        .unwrap();
        assert_eq!(
            s.parts(),
            &[
                Part::Ap(ApComponent::line(0, 3)),
                Part::Ap(ApComponent::line(1, 3)),
            ]
        );
    }

    #[test]
    fn semigroup_sporadics() {
        // 2ℕ + 3ℕ = {0, 2, 3, 4, …}: conductor 2, sporadic {0}
        let s = sumset(
            &expr(ApComponent::up_ray(0, 2)),
            &expr(ApComponent::up_ray(0, 3)),
        )
        .unwrap();
        assert_eq!(
            s.parts(),
            &[
                Part::Ap(ApComponent::finite([0])),
                Part::Ap(ApComponent::up_ray(2, 1)),
            ]
        );
    }

    #[test]
    fn windowed_full_coverage() {
        let ws = window_sumset(
            &expr(ApComponent::down_ray(0, 1)),
            &expr(ApComponent::up_ray(1, 1)),
            &Window::new(-5, 5).unwrap(),
        )
        .unwrap();
        assert_eq!(ws.soundness, Soundness::Exact);
        assert_eq!(ws.members.len(), 11);
    }

    #[test]
    fn windowed_oracle_matches_brute_force() {
        let family = IntSetExpr::from(
            PowerIntervalFamily::new(2, 1, 9, 2, 0, 4, false, vec![int(1)]).unwrap(),
        );
        let finite = expr(ApComponent::finite(
            (0..=9).map(|i| int(-10 * i)).collect::<Vec<_>>(),
        ));
        let target = Window::new(0, 50).unwrap();
        let ws = window_sumset(&finite, &family, &target).unwrap();
        assert_eq!(ws.soundness, Soundness::PositiveOnly);

        // brute force from padded enumerations
        let pad = Window::new(-200, 250).unwrap();
        let xs = finite.enumerate(&pad).unwrap();
        let ys = family.enumerate(&pad).unwrap();
        let mut expect = BTreeSet::new();
        for x in &xs {
            for y in &ys {
                let s = x + y;
                if target.contains(&s) {
                    expect.insert(s);
                }
            }
        }
        assert_eq!(ws.members, expect.into_iter().collect::<Vec<_>>());
    }
}
