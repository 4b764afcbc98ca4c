//! Arithmetic-progression components: finite parts, rays and full lines.

use crate::{Error, Int, Result};
use num_integer::Integer;
use num_traits::{One, Zero};

/// One component of an exact set expression.
///
/// - `Finite(v)` is the finite set `v` (sorted, duplicate-free).
/// - `UpRay { start, step }` is `{start + step·t : t ≥ 0}`.
/// - `DownRay { start, step }` is `{start − step·t : t ≥ 0}`.
/// - `Line { residue, step }` is `{residue + step·t : t ∈ ℤ}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ApComponent {
    Finite(Vec<Int>),
    UpRay { start: Int, step: Int },
    DownRay { start: Int, step: Int },
    Line { residue: Int, step: Int },
}

/// Directional extent of a set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Extent {
    Unbounded,
    Bounded(Int),
}

impl ApComponent {
    /// Finite component from arbitrary values; sorts and deduplicates.
    pub fn finite<I: Into<Int>, T: IntoIterator<Item = I>>(values: T) -> Self {
        let mut v: Vec<Int> = values.into_iter().map(Into::into).collect();
        v.sort();
        v.dedup();
        ApComponent::Finite(v)
    }

    pub fn up_ray(start: impl Into<Int>, step: impl Into<Int>) -> Self {
        ApComponent::UpRay {
            start: start.into(),
            step: step.into(),
        }
    }

    pub fn down_ray(start: impl Into<Int>, step: impl Into<Int>) -> Self {
        ApComponent::DownRay {
            start: start.into(),
            step: step.into(),
        }
    }

    pub fn line(residue: impl Into<Int>, step: impl Into<Int>) -> Self {
        ApComponent::Line {
            residue: residue.into(),
            step: step.into(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            ApComponent::Finite(v) => {
                if v.windows(2).any(|w| w[0] >= w[1]) {
                    return Err(Error::Invalid(
                        "finite component must be sorted and duplicate-free".into(),
                    ));
                }
                Ok(())
            }
            ApComponent::UpRay { step, .. }
            | ApComponent::DownRay { step, .. }
            | ApComponent::Line { step, .. } => {
                if step < &Int::one() {
                    Err(Error::Invalid(format!("step must be ≥ 1, got {step}")))
                } else {
                    Ok(())
                }
            }
        }
    }

    /// Ray/line step, `None` for finite components.
    pub fn step(&self) -> Option<&Int> {
        match self {
            ApComponent::Finite(_) => None,
            ApComponent::UpRay { step, .. }
            | ApComponent::DownRay { step, .. }
            | ApComponent::Line { step, .. } => Some(step),
        }
    }

    pub fn is_empty(&self) -> bool {
        matches!(self, ApComponent::Finite(v) if v.is_empty())
    }

    pub fn member(&self, n: &Int) -> bool {
        match self {
            ApComponent::Finite(v) => v.binary_search(n).is_ok(),
            ApComponent::UpRay { start, step } => n >= start && (n - start).mod_floor(step).is_zero(),
            ApComponent::DownRay { start, step } => {
                n <= start && (start - n).mod_floor(step).is_zero()
            }
            ApComponent::Line { residue, step } => (n - residue).mod_floor(step).is_zero(),
        }
    }

    /// Pushes every member in `[lo, hi]`, in ascending order.
    pub fn enumerate_into(&self, lo: &Int, hi: &Int, out: &mut Vec<Int>) {
        match self {
            ApComponent::Finite(v) => {
                for x in v {
                    if x >= lo && x <= hi {
                        out.push(x.clone());
                    }
                }
            }
            ApComponent::UpRay { start, step } => {
                let from = if lo > start { lo } else { start };
                if from > hi {
                    return;
                }
                // first ray element ≥ from
                let mut x = start + (from - start).div_ceil(step) * step;
                while &x <= hi {
                    out.push(x.clone());
                    x += step;
                }
            }
            ApComponent::DownRay { start, step } => {
                let to = if hi < start { hi } else { start };
                if lo > &to {
                    return;
                }
                // first ray element ≥ lo (ascending enumeration)
                let mut x = start - (start - lo).div_floor(step) * step;
                while &x <= &to {
                    out.push(x.clone());
                    x += step;
                }
            }
            ApComponent::Line { residue, step } => {
                if lo > hi {
                    return;
                }
                let mut x = residue + (lo - residue).div_ceil(step) * step;
                while &x <= hi {
                    out.push(x.clone());
                    x += step;
                }
            }
        }
    }

    pub fn min_extent(&self) -> Option<Extent> {
        match self {
            ApComponent::Finite(v) => v.first().cloned().map(Extent::Bounded),
            ApComponent::UpRay { start, .. } => Some(Extent::Bounded(start.clone())),
            ApComponent::DownRay { .. } | ApComponent::Line { .. } => Some(Extent::Unbounded),
        }
    }

    pub fn max_extent(&self) -> Option<Extent> {
        match self {
            ApComponent::Finite(v) => v.last().cloned().map(Extent::Bounded),
            ApComponent::DownRay { start, .. } => Some(Extent::Bounded(start.clone())),
            ApComponent::UpRay { .. } | ApComponent::Line { .. } => Some(Extent::Unbounded),
        }
    }

    pub fn shifted(&self, by: &Int) -> Self {
        match self {
            ApComponent::Finite(v) => ApComponent::Finite(v.iter().map(|x| x + by).collect()),
            ApComponent::UpRay { start, step } => ApComponent::UpRay {
                start: start + by,
                step: step.clone(),
            },
            ApComponent::DownRay { start, step } => ApComponent::DownRay {
                start: start + by,
                step: step.clone(),
            },
            ApComponent::Line { residue, step } => ApComponent::Line {
                residue: residue + by,
                step: step.clone(),
            },
        }
    }

    /// The component of `{−x : x ∈ self}`.
    pub fn reflected(&self) -> Self {
        match self {
            ApComponent::Finite(v) => {
                let mut out: Vec<Int> = v.iter().map(|x| -x).collect();
                out.reverse();
                ApComponent::Finite(out)
            }
            ApComponent::UpRay { start, step } => ApComponent::DownRay {
                start: -start,
                step: step.clone(),
            },
            ApComponent::DownRay { start, step } => ApComponent::UpRay {
                start: -start,
                step: step.clone(),
            },
            ApComponent::Line { residue, step } => ApComponent::Line {
                residue: -residue,
                step: step.clone(),
            },
        }
    }
}

impl std::fmt::Display for ApComponent {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ApComponent::Finite(v) => {
                write!(f, "{{")?;
                for (i, x) in v.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{x}")?;
                }
                write!(f, "}}")
            }
            ApComponent::UpRay { start, step } => write!(f, "upray({start},{step})"),
            ApComponent::DownRay { start, step } => write!(f, "downray({start},{step})"),
            ApComponent::Line { residue, step } => write!(f, "line({residue},{step})"),
        }
    }
}

/// least common multiple of the steps appearing in `comps` (1 when none).
pub(crate) fn step_lcm(comps: &[ApComponent]) -> Int {
    let mut m = Int::one();
    for c in comps {
        if let Some(s) = c.step() {
            m = m.lcm(s);
        }
    }
    m
}

/// Positive divisors of `n` in ascending order. `n` must fit in `u64`.
pub(crate) fn divisors_ascending(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            small.push(d);
            if d != n / d {
                large.push(n / d);
            }
        }
        d += 1;
    }
    large.reverse();
    small.extend(large);
    small
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(n: i64) -> Int {
        Int::from(n)
    }

    #[test]
    fn membership_examples() {
        assert!(ApComponent::up_ray(0, 2).member(&int(4)));
        assert!(!ApComponent::down_ray(-1, 3).member(&int(2)));
        assert!(ApComponent::down_ray(-1, 3).member(&int(-7)));
        assert!(ApComponent::line(0, 3).member(&int(-9)));
        assert!(!ApComponent::line(1, 3).member(&int(-9)));
    }

    #[test]
    fn enumerate_line_is_all_integers_at_step_one() {
        let mut out = Vec::new();
        ApComponent::line(0, 1).enumerate_into(&int(-2), &int(2), &mut out);
        assert_eq!(out, vec![int(-2), int(-1), int(0), int(1), int(2)]);
    }

    #[test]
    fn enumerate_down_ray() {
        let mut out = Vec::new();
        ApComponent::down_ray(5, 5).enumerate_into(&int(-12), &int(20), &mut out);
        assert_eq!(out, vec![int(-10), int(-5), int(0), int(5)]);
    }

    #[test]
    fn divisors() {
        assert_eq!(divisors_ascending(12), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(divisors_ascending(1), vec![1]);
    }
}
