//! Exact symbolic algebra for a closed class of integer sets.
//!
//! The class has two tiers. The *exact* tier is finite unions of arithmetic
//! progressions (finite parts, up/down rays, full lines); it is closed under
//! union, point deletion, sumset and positive complement, and admits a unique
//! normal form. The *oracle* tier adds generator-backed
//! [`PowerIntervalFamily`] parts and positive-complement wrappers; oracle
//! sets support exact membership and window enumeration, but only
//! evidence-level verdicts downstream.

mod component;
mod document;
mod family;
mod sumset;
mod traces;

pub use component::ApComponent;
pub(crate) use component::divisors_ascending;
pub use document::{parse_set_document, set_document_value, set_to_document};
pub use family::{FamilyComplement, PowerIntervalFamily};
pub use sumset::{sumset, window_sumset, Soundness, WindowSumset};

use crate::docint::int_str;
use crate::{Error, Int, Result};
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

pub(crate) use traces::Traces;

/// Inclusive integer interval `[lo, hi]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Window {
    #[serde(with = "int_str")]
    pub lo: Int,
    #[serde(with = "int_str")]
    pub hi: Int,
}

impl Window {
    pub fn new(lo: impl Into<Int>, hi: impl Into<Int>) -> Result<Window> {
        let (lo, hi) = (lo.into(), hi.into());
        if lo > hi {
            return Err(Error::Invalid(format!("window [{lo}, {hi}] is empty")));
        }
        Ok(Window { lo, hi })
    }

    pub fn width(&self) -> Int {
        &self.hi - &self.lo + 1
    }

    pub fn contains(&self, n: &Int) -> bool {
        n >= &self.lo && n <= &self.hi
    }
}

impl std::fmt::Display for Window {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

/// Hard cap on materialized window enumerations.
const ENUM_BUDGET: u64 = 1 << 22;
/// Scan budget when locating the least element of an oracle wrapper.
const WRAPPER_SCAN_BUDGET: u64 = 200_000;

/// One part of a set expression.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Part {
    Ap(ApComponent),
    Power(PowerIntervalFamily),
    /// `shift + (ℤ⁺ ∖ inner)`: oracle wrapper for positive complements that
    /// leave the representable class. Supports membership and enumeration
    /// only, and has no document form.
    Complement { inner: Box<IntSetExpr>, shift: Int },
}

/// Symbolic integer set: a union of parts.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct IntSetExpr {
    parts: Vec<Part>,
}

/// Representation tier, decided after folding loose finite parts into a
/// lone power family.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Tier {
    Exact,
    Family,
    Oracle,
}

/// One-sided extent of a set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExprBound {
    Empty,
    Finite(Int),
    Unbounded,
    /// Not structurally decidable (oracle wrappers).
    Unknown,
}

impl From<ApComponent> for IntSetExpr {
    fn from(c: ApComponent) -> Self {
        IntSetExpr {
            parts: vec![Part::Ap(c)],
        }
    }
}

impl From<PowerIntervalFamily> for IntSetExpr {
    fn from(f: PowerIntervalFamily) -> Self {
        IntSetExpr {
            parts: vec![Part::Power(f)],
        }
    }
}

impl IntSetExpr {
    pub fn empty() -> Self {
        IntSetExpr::default()
    }

    pub fn from_parts(parts: Vec<Part>) -> Result<Self> {
        let e = IntSetExpr { parts };
        e.validate()?;
        Ok(e)
    }

    pub fn from_components(comps: Vec<ApComponent>) -> Result<Self> {
        Self::from_parts(comps.into_iter().map(Part::Ap).collect())
    }

    pub fn parts(&self) -> &[Part] {
        &self.parts
    }

    pub fn validate(&self) -> Result<()> {
        for p in &self.parts {
            match p {
                Part::Ap(c) => c.validate()?,
                Part::Power(f) => f.validate()?,
                Part::Complement { inner, .. } => inner.validate()?,
            }
        }
        Ok(())
    }

    pub fn union(mut self, other: IntSetExpr) -> IntSetExpr {
        self.parts.extend(other.parts);
        self
    }

    pub fn is_exact(&self) -> bool {
        self.parts.iter().all(|p| matches!(p, Part::Ap(_)))
    }

    pub fn is_empty_set(&self) -> bool {
        self.parts.iter().all(|p| match p {
            Part::Ap(c) => c.is_empty(),
            _ => false,
        })
    }

    /// Folds loose finite components into a lone power family so that
    /// `{1} ∪ family` and the family with `1` as an extra point are treated
    /// alike.
    pub fn coalesced(&self) -> IntSetExpr {
        let mut family: Option<&PowerIntervalFamily> = None;
        let mut finites: Vec<Int> = Vec::new();
        for p in &self.parts {
            match p {
                Part::Power(f) if family.is_none() => family = Some(f),
                Part::Ap(ApComponent::Finite(v)) => finites.extend(v.iter().cloned()),
                _ => return self.clone(),
            }
        }
        match family {
            Some(f) => IntSetExpr {
                parts: vec![Part::Power(f.with_extra(&finites))],
            },
            None => self.clone(),
        }
    }

    pub fn tier(&self) -> Tier {
        if self.is_exact() {
            return Tier::Exact;
        }
        let c = self.coalesced();
        if c.parts.len() == 1 && matches!(c.parts[0], Part::Power(_)) {
            Tier::Family
        } else {
            Tier::Oracle
        }
    }

    /// The family behind a family-tier expression.
    pub fn as_family(&self) -> Option<PowerIntervalFamily> {
        let c = self.coalesced();
        match c.parts.as_slice() {
            [Part::Power(f)] => Some(f.clone()),
            _ => None,
        }
    }

    pub fn member(&self, n: &Int) -> bool {
        self.parts.iter().any(|p| match p {
            Part::Ap(c) => c.member(n),
            Part::Power(f) => f.member(n),
            Part::Complement { inner, shift } => {
                let y = n - shift;
                y >= Int::one() && !inner.member(&y)
            }
        })
    }

    /// Exactly the members in the window, ascending and duplicate-free.
    pub fn enumerate(&self, w: &Window) -> Result<Vec<Int>> {
        let width = w.width();
        if width > Int::from(ENUM_BUDGET) {
            return Err(Error::Budget {
                what: format!("enumerating window {w}"),
                limit: ENUM_BUDGET,
            });
        }
        let mut out = Vec::new();
        for p in &self.parts {
            match p {
                Part::Ap(c) => c.enumerate_into(&w.lo, &w.hi, &mut out),
                Part::Power(f) => {
                    for (a, b) in f.pieces(&w.lo, &w.hi) {
                        let mut x = a;
                        while x <= b {
                            out.push(x.clone());
                            x += 1;
                        }
                    }
                }
                Part::Complement { inner, shift } => {
                    let mut x = w.lo.clone();
                    while x <= w.hi {
                        let y = &x - shift;
                        if y >= Int::one() && !inner.member(&y) {
                            out.push(x.clone());
                        }
                        x += 1;
                    }
                }
            }
        }
        out.sort();
        out.dedup();
        Ok(out)
    }

    pub fn min_extent(&self) -> ExprBound {
        if self.is_empty_set() {
            return ExprBound::Empty;
        }
        let mut best: Option<Int> = None;
        let mut unknown = false;
        for p in &self.parts {
            let cand = match p {
                Part::Ap(c) => match c.min_extent() {
                    None => continue,
                    Some(component::Extent::Unbounded) => return ExprBound::Unbounded,
                    Some(component::Extent::Bounded(v)) => Some(v),
                },
                Part::Power(f) => f.min_element().ok(),
                Part::Complement { inner, shift } => {
                    let mut y = Int::one();
                    let mut found = None;
                    for _ in 0..WRAPPER_SCAN_BUDGET {
                        if !inner.member(&y) {
                            found = Some(&y + shift);
                            break;
                        }
                        y += 1;
                    }
                    if found.is_none() {
                        unknown = true;
                    }
                    found
                }
            };
            if let Some(v) = cand {
                best = Some(match best {
                    Some(b) => b.min(v),
                    None => v,
                });
            }
        }
        match (best, unknown) {
            (_, true) => ExprBound::Unknown,
            (Some(v), false) => ExprBound::Finite(v),
            (None, false) => ExprBound::Empty,
        }
    }

    pub fn max_extent(&self) -> ExprBound {
        if self.is_empty_set() {
            return ExprBound::Empty;
        }
        let mut best: Option<Int> = None;
        let mut unknown = false;
        for p in &self.parts {
            match p {
                Part::Ap(c) => match c.max_extent() {
                    None => continue,
                    Some(component::Extent::Unbounded) => return ExprBound::Unbounded,
                    Some(component::Extent::Bounded(v)) => {
                        best = Some(match best.take() {
                            Some(b) => b.max(v),
                            None => v,
                        });
                    }
                },
                Part::Power(_) => return ExprBound::Unbounded,
                Part::Complement { inner, .. } => match inner.max_extent() {
                    // complement of an upward-bounded set is upward unbounded
                    ExprBound::Finite(_) | ExprBound::Empty => return ExprBound::Unbounded,
                    _ => unknown = true,
                },
            }
        }
        match (best, unknown) {
            (_, true) => ExprBound::Unknown,
            (Some(v), false) => ExprBound::Finite(v),
            (None, false) => ExprBound::Empty,
        }
    }

    pub fn shifted(&self, by: &Int) -> IntSetExpr {
        IntSetExpr {
            parts: self
                .parts
                .iter()
                .map(|p| match p {
                    Part::Ap(c) => Part::Ap(c.shifted(by)),
                    Part::Power(f) => Part::Power(f.shifted(by)),
                    Part::Complement { inner, shift } => Part::Complement {
                        inner: inner.clone(),
                        shift: shift + by,
                    },
                })
                .collect(),
        }
    }

    /// `{−x : x ∈ self}`; exact expressions only.
    pub fn reflected(&self) -> Result<IntSetExpr> {
        let mut parts = Vec::new();
        for p in &self.parts {
            match p {
                Part::Ap(c) => parts.push(Part::Ap(c.reflected())),
                _ => {
                    return Err(Error::Unsupported(
                        "reflection is only defined for exact expressions".into(),
                    ))
                }
            }
        }
        Ok(IntSetExpr { parts })
    }

    pub(crate) fn exact_components(&self) -> Result<Vec<ApComponent>> {
        self.parts
            .iter()
            .map(|p| match p {
                Part::Ap(c) => Ok(c.clone()),
                _ => Err(Error::Unsupported(
                    "operation requires an exact (arithmetic-progression) expression".into(),
                )),
            })
            .collect()
    }

    pub(crate) fn traces(&self) -> Result<Traces> {
        Traces::from_components(&self.exact_components()?)
    }
}

impl std::fmt::Display for IntSetExpr {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.parts.is_empty() {
            return write!(f, "∅");
        }
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, " ∪ ")?;
            }
            match p {
                Part::Ap(c) => write!(f, "{c}")?,
                Part::Power(fam) => write!(f, "{fam}")?,
                Part::Complement { inner, shift } => {
                    if shift.is_zero() {
                        write!(f, "ℤ⁺∖({inner})")?;
                    } else {
                        write!(f, "{shift}+(ℤ⁺∖({inner}))")?;
                    }
                }
            }
        }
        Ok(())
    }
}

/// Canonical normal form of an exact expression. Idempotent; two exact
/// expressions denote the same set iff their normal forms are equal.
pub fn normalize(s: &IntSetExpr) -> Result<IntSetExpr> {
    let comps = s.traces()?.to_components()?;
    IntSetExpr::from_components(comps)
}

/// `s ∖ {n}` within the exact class. The boolean reports whether `n` was a
/// member; deleting a non-member is a flagged no-op.
pub fn point_delete(s: &IntSetExpr, n: &Int) -> Result<(IntSetExpr, bool)> {
    let t = s.traces()?;
    if !t.member(n) {
        return Ok((s.clone(), false));
    }
    let single = Traces::from_components(&[ApComponent::Finite(vec![n.clone()])])?;
    let d = t.difference(&single)?;
    Ok((IntSetExpr::from_components(d.to_components()?)?, true))
}

/// `ℤ⁺ ∖ s`. Exact for exact inputs; a power family whose complement is
/// again a power family (or a finite set) stays symbolic; anything else is
/// wrapped as a membership oracle.
pub fn complement_positive(s: &IntSetExpr) -> Result<IntSetExpr> {
    if s.is_exact() {
        let t = s.traces()?.complement_in_positives()?;
        return IntSetExpr::from_components(t.to_components()?);
    }
    let c = s.coalesced();
    if let [Part::Power(f)] = c.parts.as_slice() {
        match f.complement_positive() {
            Ok(FamilyComplement::Finite(v)) => {
                return IntSetExpr::from_components(vec![ApComponent::Finite(v)])
            }
            Ok(FamilyComplement::Family(g)) => return Ok(IntSetExpr::from(g)),
            Err(Error::Budget { .. }) => {}
            Err(e) => return Err(e),
        }
    }
    Ok(IntSetExpr {
        parts: vec![Part::Complement {
            inner: Box::new(s.clone()),
            shift: Int::zero(),
        }],
    })
}

/// Denoted-set equality for exact expressions, via normal forms.
pub fn exact_set_eq(a: &IntSetExpr, b: &IntSetExpr) -> Result<bool> {
    Ok(normalize(a)?.parts() == normalize(b)?.parts())
}

/// Eventual behavior of consecutive-element gaps of an upward-infinite set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GapBound {
    Unbounded,
    Constant(Int),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GapAsymptotics {
    /// Eventual supremum of gaps.
    pub sup: GapBound,
    /// Eventual infimum of gaps beyond any tail.
    pub tail_min: GapBound,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GapStructure {
    Infinite(GapAsymptotics),
    /// The set has only finitely many elements above any point.
    UpwardFinite,
    /// No closed form available (oracle tier).
    Opaque,
}

/// Closed-form gap behavior, decided from the symbolic structure.
pub fn gap_structure(s: &IntSetExpr) -> Result<GapStructure> {
    if s.is_exact() {
        let t = s.traces()?;
        let pattern = upward_pattern(&t);
        return Ok(match pattern {
            None => GapStructure::UpwardFinite,
            Some(gaps) => {
                let sup = gaps.iter().max().cloned().expect("nonempty pattern");
                let min = gaps.iter().min().cloned().expect("nonempty pattern");
                GapStructure::Infinite(GapAsymptotics {
                    sup: GapBound::Constant(sup),
                    tail_min: GapBound::Constant(min),
                })
            }
        });
    }
    if let Some(f) = s.as_family() {
        let wide = f.width_lead() > Int::zero()
            || (f.width_lead().is_zero() && f.width_const() >= Int::one());
        let sup = if f.gap_lead() > Int::zero() {
            GapBound::Unbounded
        } else {
            GapBound::Constant(f.gap_const())
        };
        let tail_min = if wide {
            GapBound::Constant(Int::one())
        } else if f.gap_lead() > Int::zero() {
            GapBound::Unbounded
        } else {
            GapBound::Constant(f.gap_const())
        };
        return Ok(GapStructure::Infinite(GapAsymptotics { sup, tail_min }));
    }
    Ok(GapStructure::Opaque)
}

/// Gap multiset of one upward period, or `None` when the set is eventually
/// finite upward.
fn upward_pattern(t: &Traces) -> Option<Vec<Int>> {
    let m = &t.modulus;
    let residues: Vec<Int> = (0..t.classes.len())
        .filter(|&i| t.classes[i].full || t.classes[i].up.is_some())
        .map(|i| Int::from(i as u64))
        .collect();
    if residues.is_empty() {
        return None;
    }
    let mut gaps: Vec<Int> = residues.windows(2).map(|w| &w[1] - &w[0]).collect();
    gaps.push(residues.first().unwrap() + m - residues.last().unwrap());
    Some(gaps)
}

/// Point above which membership in an exact set is purely periodic.
fn stabilization_point(t: &Traces) -> Int {
    let m = &t.modulus;
    let mut x = Int::one();
    for cls in &t.classes {
        if let Some(u) = &cls.up {
            x = x.max(u.clone());
        }
        if let Some(d) = &cls.down {
            x = x.max(d + m);
        }
        if let Some(p) = cls.pts.last() {
            x = x.max(p + m);
        }
    }
    x
}

/// Exact supremum of gaps between consecutive elements of `s ∩ [1, hi]`,
/// `None` when fewer than two elements exist there. Works structurally, so
/// `hi` may be astronomically large for exact and family tiers.
pub fn sup_gap_within(s: &IntSetExpr, hi: &Int) -> Result<Option<Int>> {
    if hi < &Int::one() {
        return Ok(None);
    }
    if s.is_exact() {
        let t = s.traces()?;
        let stab = stabilization_point(&t) + Int::from(2) * &t.modulus;
        if hi <= &stab {
            let els = s.enumerate(&Window::new(Int::one(), hi.clone())?)?;
            return Ok(max_gap(&els));
        }
        let els = s.enumerate(&Window::new(Int::one(), stab)?)?;
        let prefix = max_gap(&els);
        let pattern = upward_pattern(&t).and_then(|g| g.into_iter().max());
        return Ok(match (prefix, pattern) {
            (Some(a), Some(b)) => Some(a.max(b)),
            (a, b) => a.or(b),
        });
    }
    if let Some(f) = s.as_family() {
        return Ok(piece_sup_gap(&f.pieces(&Int::one(), hi)));
    }
    // oracle tier: direct scan (subject to the enumeration budget)
    let els = s.enumerate(&Window::new(Int::one(), hi.clone())?)?;
    Ok(max_gap(&els))
}

/// Exact infimum of gaps between consecutive elements that are both ≥ `from`,
/// `None` when the set is eventually finite upward.
pub fn min_gap_beyond(s: &IntSetExpr, from: &Int) -> Result<Option<Int>> {
    let lo = if from > &Int::one() {
        from.clone()
    } else {
        Int::one()
    };
    if s.is_exact() {
        let t = s.traces()?;
        let Some(pattern) = upward_pattern(&t) else {
            // finitely many elements beyond: report their minimum gap
            let stab = stabilization_point(&t);
            if lo > stab {
                return Ok(None);
            }
            let els = s.enumerate(&Window::new(lo, stab)?)?;
            return Ok(min_gap(&els));
        };
        let pattern_min = pattern.into_iter().min().expect("nonempty");
        let stab = stabilization_point(&t) + Int::from(2) * &t.modulus;
        if lo >= stab {
            return Ok(Some(pattern_min));
        }
        let els = s.enumerate(&Window::new(lo, stab)?)?;
        return Ok(Some(match min_gap(&els) {
            Some(g) => g.min(pattern_min),
            None => pattern_min,
        }));
    }
    if let Some(f) = s.as_family() {
        let wide = f.width_lead() > Int::zero()
            || (f.width_lead().is_zero() && f.width_const() >= Int::one());
        if wide {
            return Ok(Some(Int::one()));
        }
        // single-point blocks: scan past the first regular block above `from`
        let kstar = f.regular_from()?;
        let mut k = kstar;
        while f.low(k) <= lo {
            k += 1;
        }
        let probe_hi = f.low(k + 2);
        let pieces = f.pieces(&lo, &probe_hi);
        let scanned = piece_min_gap(&pieces);
        return Ok(match (scanned, f.gap_lead().is_zero()) {
            (Some(g), true) => Some(g.min(f.gap_const())),
            (Some(g), false) => Some(g),
            (None, true) => Some(f.gap_const()),
            (None, false) => Some(f.gap_after(k)),
        });
    }
    Err(Error::Unsupported(
        "tail gap analysis needs an exact or family-tier set".into(),
    ))
}

fn max_gap(els: &[Int]) -> Option<Int> {
    els.windows(2).map(|w| &w[1] - &w[0]).max()
}

fn min_gap(els: &[Int]) -> Option<Int> {
    els.windows(2).map(|w| &w[1] - &w[0]).min()
}

fn piece_sup_gap(pieces: &[(Int, Int)]) -> Option<Int> {
    let mut best: Option<Int> = None;
    for p in pieces {
        if p.1 > p.0 {
            best = Some(match best.take() {
                Some(b) => b.max(Int::one()),
                None => Int::one(),
            });
        }
    }
    for w in pieces.windows(2) {
        let g = &w[1].0 - &w[0].1;
        best = Some(match best.take() {
            Some(b) => b.max(g),
            None => g,
        });
    }
    best
}

fn piece_min_gap(pieces: &[(Int, Int)]) -> Option<Int> {
    let mut best: Option<Int> = None;
    for p in pieces {
        if p.1 > p.0 {
            best = Some(Int::one());
        }
    }
    for w in pieces.windows(2) {
        let g = &w[1].0 - &w[0].1;
        best = Some(match best.take() {
            Some(b) => b.min(g),
            None => g,
        });
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(n: i64) -> Int {
        Int::from(n)
    }

    fn dyadic_w() -> IntSetExpr {
        IntSetExpr::from(
            PowerIntervalFamily::new(2, 1, 9, 2, 0, 4, false, vec![int(1)]).unwrap(),
        )
    }

    #[test]
    fn enumerate_mixed_parts() {
        let e = IntSetExpr::from_parts(vec![
            Part::Ap(ApComponent::finite([5])),
            Part::Ap(ApComponent::up_ray(10, 4)),
        ])
        .unwrap();
        let w = Window::new(0, 20).unwrap();
        assert_eq!(
            e.enumerate(&w).unwrap(),
            vec![int(5), int(10), int(14), int(18)]
        );
    }

    #[test]
    fn enumerate_dyadic_window() {
        let w = Window::new(1, 30).unwrap();
        assert_eq!(
            dyadic_w().enumerate(&w).unwrap(),
            vec![int(1), int(25), int(26), int(27), int(28), int(29), int(30)]
        );
    }

    #[test]
    fn normalize_spec_cases() {
        let e = IntSetExpr::from_components(vec![
            ApComponent::up_ray(0, 2),
            ApComponent::up_ray(1, 2),
        ])
        .unwrap();
        let n = normalize(&e).unwrap();
        assert_eq!(n.parts(), &[Part::Ap(ApComponent::up_ray(0, 1))]);
    }

    #[test]
    fn point_delete_spec_cases() {
        let (d, hit) = point_delete(&ApComponent::line(0, 3).into(), &int(0)).unwrap();
        assert!(hit);
        assert_eq!(
            d.parts(),
            &[
                Part::Ap(ApComponent::up_ray(3, 3)),
                Part::Ap(ApComponent::down_ray(-3, 3)),
            ]
        );

        let (d, hit) = point_delete(&ApComponent::finite([1, 2]).into(), &int(2)).unwrap();
        assert!(hit);
        assert_eq!(d.parts(), &[Part::Ap(ApComponent::finite([1]))]);

        let (_, hit) = point_delete(&ApComponent::finite([1, 2]).into(), &int(7)).unwrap();
        assert!(!hit);
    }

    #[test]
    fn complement_positive_exact() {
        // ℤ⁺ ∖ {evens ≥ 2} = odds ≥ 1
        let c = complement_positive(&ApComponent::up_ray(2, 2).into()).unwrap();
        assert_eq!(c.parts(), &[Part::Ap(ApComponent::up_ray(1, 2))]);
        // ℤ⁺ ∖ ℤ⁺ = ∅
        let c = complement_positive(&ApComponent::up_ray(1, 1).into()).unwrap();
        assert!(c.is_empty_set());
    }

    #[test]
    fn complement_positive_family_is_family() {
        let c = complement_positive(&dyadic_w()).unwrap();
        let f = c.as_family().expect("family complement");
        assert_eq!(f.width_const(), int(8));
        assert!(c.member(&int(2)));
        assert!(c.member(&int(24)));
        assert!(!c.member(&int(25)));
        assert!(c.member(&int(32)));
        assert!(!c.member(&int(31)));
    }

    #[test]
    fn gap_structure_of_dyadic() {
        match gap_structure(&dyadic_w()).unwrap() {
            GapStructure::Infinite(a) => {
                assert_eq!(a.sup, GapBound::Constant(int(10)));
                assert_eq!(a.tail_min, GapBound::Constant(int(1)));
            }
            _ => panic!("dyadic family is infinite"),
        }
    }

    #[test]
    fn sup_gap_structural_matches_scan() {
        let w = dyadic_w();
        for hi in [40i64, 64, 100, 1000] {
            let els = w.enumerate(&Window::new(1, hi).unwrap()).unwrap();
            let scan = els
                .windows(2)
                .map(|p| &p[1] - &p[0])
                .max();
            assert_eq!(sup_gap_within(&w, &int(hi)).unwrap(), scan, "hi = {hi}");
        }
        // the transient gap 1 → 25 dominates every window, even huge ones
        let big = Int::from(2u64).pow(60);
        assert_eq!(sup_gap_within(&w, &big).unwrap(), Some(int(24)));
    }

    #[test]
    fn min_gap_beyond_dyadic_complement_is_one() {
        let wbar = complement_positive(&dyadic_w()).unwrap();
        for from in [1i64, 100, 100_000] {
            assert_eq!(min_gap_beyond(&wbar, &int(from)).unwrap(), Some(int(1)));
        }
    }
}
