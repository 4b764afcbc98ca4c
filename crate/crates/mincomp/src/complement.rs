//! Additive-complement predicates: coverage, essentiality and removability of
//! elements, greedy window complements, and pruning to window-minimal form.
//!
//! Soundness discipline: symbolic answers on exact operands are certified;
//! anything computed from a finite window on oracle operands is reported as
//! evidence with the window attached.

use crate::setalg::{
    complement_positive, point_delete, set_to_document, sumset, window_sumset, ApComponent,
    IntSetExpr, Soundness, Window,
};
use crate::verdict::{Certificate, Status, Verdict};
use crate::{Error, Int, Result};
use num_traits::{One, ToPrimitive, Zero};

/// Window scan padding for oracle-tier representation searches.
fn padded(budget: &Window) -> Window {
    let pad = budget.width() + 128;
    Window {
        lo: &budget.lo - &pad,
        hi: &budget.hi + &pad,
    }
}

fn docs(c: &IntSetExpr, w: &IntSetExpr) -> Result<(String, String)> {
    Ok((set_to_document(c)?, set_to_document(w)?))
}

/// Does `c + w = ℤ`?
///
/// Exact operands are decided symbolically: full residue coverage is
/// certified, and an uncovered point inside the probe refutes. When the
/// probe itself is fully covered but ℤ is not, the answer stays
/// evidence-level, reporting an uncovered point outside the probe. Oracle
/// operands always yield evidence on the probe.
pub fn is_complement(c: &IntSetExpr, w: &IntSetExpr, probe: &Window) -> Result<Verdict> {
    if c.is_empty_set() || w.is_empty_set() {
        let (cd, wd) = docs(c, w)?;
        return Ok(Verdict::certified_no(
            "an empty operand admits no coverage of ℤ",
            Certificate::UncoveredPoint {
                n: Int::zero(),
                complement_doc: cd,
                base_doc: wd,
            },
        ));
    }
    if c.is_exact() && w.is_exact() {
        let s = sumset(c, w)?;
        let t = s.traces()?;
        if t.is_all_integers() {
            let (cd, wd) = docs(c, w)?;
            return Ok(Verdict::certified_yes(
                "sumset covers every residue class, hence all of ℤ",
                Certificate::FullCoverage {
                    complement_doc: cd,
                    base_doc: wd,
                    modulus: t.modulus.clone(),
                },
            ));
        }
        // some point is uncovered; prefer one inside the probe
        let covered = s.enumerate(probe)?;
        if let Some(n) = first_missing(probe, &covered) {
            let (cd, wd) = docs(c, w)?;
            return Ok(Verdict::certified_no(
                format!("{n} has no representation c + w"),
                Certificate::UncoveredPoint {
                    n,
                    complement_doc: cd,
                    base_doc: wd,
                },
            ));
        }
        let outside = full_complement_witness(&t)?;
        return Ok(Verdict::evidence(
            format!(
                "probe {probe} is fully covered, but the sumset is not all of ℤ \
                 (e.g. {outside} is uncovered)"
            ),
            Some(probe.clone()),
        ));
    }
    // oracle tier: windowed report only
    let ws = window_sumset(c, w, probe)?;
    debug_assert_eq!(ws.soundness, Soundness::PositiveOnly);
    let note = match first_missing(probe, &ws.members) {
        None => format!("probe {probe} fully covered (oracle evidence)"),
        Some(n) => format!(
            "no representation of {n} found within budget {}",
            ws.budget.as_ref().expect("oracle budget")
        ),
    };
    Ok(Verdict::evidence(note, Some(probe.clone())))
}

/// Smallest point of `w` missing from the ascending members list.
fn first_missing(w: &Window, covered: &[Int]) -> Option<Int> {
    let mut expect = w.lo.clone();
    for x in covered {
        if x > &expect {
            return Some(expect);
        }
        expect = x + 1;
    }
    if expect <= w.hi {
        Some(expect)
    } else {
        None
    }
}

/// A point of `ℤ ∖ s` for a non-covering exact sumset.
fn full_complement_witness(t: &crate::setalg::Traces) -> Result<Int> {
    let z = crate::setalg::Traces::from_components(&[ApComponent::line(0, 1)])?;
    let diff = z.difference(t)?;
    diff.nearest_to_zero()
        .ok_or_else(|| Error::Inconsistency("non-covering sumset with empty complement".into()))
}

/// Is `c0` essential in `c` (as a complement of `w`)?
///
/// With exact operands this is decided symbolically: the set of integers
/// representable only through `c0` is `sumset(c, w) ∖ sumset(c∖{c0}, w)`,
/// and any member yields a unique-representation certificate.
pub fn essential(c0: &Int, c: &IntSetExpr, w: &IntSetExpr, budget: &Window) -> Result<Verdict> {
    if !c.member(c0) {
        return Err(Error::Precondition(format!(
            "{c0} is not a member of the candidate complement"
        )));
    }
    if c.is_exact() && w.is_exact() {
        let full = sumset(c, w)?;
        let (deleted, _) = point_delete(c, c0)?;
        let reduced = sumset(&deleted, w)?;
        let diff = full.traces()?.difference(&reduced.traces()?)?;
        let (cd, wd) = docs(c, w)?;
        return Ok(match diff.nearest_to_zero() {
            Some(n) => {
                let witness_w = &n - c0;
                debug_assert!(w.member(&witness_w));
                let search = essentiality_search_window(&n, c0, budget);
                Verdict::certified_yes(
                    format!("{n} = {c0} + {witness_w} is the only representation of {n}"),
                    Certificate::Essentiality {
                        n,
                        c0: c0.clone(),
                        w: witness_w,
                        search_window: search,
                        complement_doc: cd,
                        base_doc: wd,
                    },
                )
            }
            None => Verdict::certified_no(
                format!("every representation through {c0} has an alternative"),
                Certificate::Removability {
                    c0: c0.clone(),
                    complement_doc: cd,
                    base_doc: wd,
                    window: budget.clone(),
                },
            ),
        });
    }
    // oracle tier: look for a window point whose only in-budget representation
    // goes through c0
    let scan = padded(budget);
    let cands = c.enumerate(&scan)?;
    let mut n = budget.lo.clone();
    while n <= budget.hi {
        let through = &n - c0;
        if w.member(&through) {
            let alternative = cands
                .iter()
                .filter(|cc| *cc != c0)
                .any(|cc| w.member(&(&n - cc)));
            if !alternative {
                return Ok(Verdict::evidence(
                    format!(
                        "{n} = {c0} + {through} has no alternative representation within {scan}"
                    ),
                    Some(budget.clone()),
                ));
            }
        }
        n += 1;
    }
    Ok(Verdict::evidence(
        format!("every representation through {c0} in {budget} has an in-budget alternative"),
        Some(budget.clone()),
    ))
}

fn essentiality_search_window(n: &Int, c0: &Int, budget: &Window) -> Window {
    let lo = budget.lo.clone().min(n.clone()).min(c0.clone()) - 16;
    let hi = budget.hi.clone().max(n.clone()).max(c0.clone()) + 16;
    Window { lo, hi }
}

/// Logical negation of [`essential`], with the same certificate discipline.
pub fn removable(c0: &Int, c: &IntSetExpr, w: &IntSetExpr, budget: &Window) -> Result<Verdict> {
    let mut v = essential(c0, c, w, budget)?;
    v.status = match v.status {
        Status::CertifiedYes => Status::CertifiedNo,
        Status::CertifiedNo => Status::CertifiedYes,
        Status::EvidenceOnly => Status::EvidenceOnly,
    };
    v.note = format!("removability is the negation of essentiality: {}", v.note);
    Ok(v)
}

/// Deterministic greedy complement for a window.
///
/// Scans the target descending; each uncovered point `n` is covered by
/// `c = n − w*`, where `w*` stretches along the contiguous run of `w` from
/// its minimum so the new element covers a maximal suffix down toward the
/// window's low end.
pub fn greedy_complement(w: &IntSetExpr, target: &Window) -> Result<Vec<Int>> {
    if w.is_empty_set() {
        return Err(Error::Uncoverable(target.hi.clone()));
    }
    let w_min = match w.min_extent() {
        crate::setalg::ExprBound::Finite(v) => v,
        crate::setalg::ExprBound::Empty => return Err(Error::Uncoverable(target.hi.clone())),
        _ => {
            return Err(Error::Precondition(
                "greedy complement needs a base set bounded below".into(),
            ))
        }
    };
    let width = target.width().to_usize().ok_or_else(|| Error::Budget {
        what: "greedy complement window".into(),
        limit: 1 << 22,
    })?;
    // contiguous run of members starting at the minimum
    let mut run = Int::zero();
    while run < target.width() && w.member(&(&w_min + &run + Int::one())) {
        run += 1;
    }
    let mut covered = vec![false; width];
    let mut out = Vec::new();
    let mut n = target.hi.clone();
    while n >= target.lo {
        let idx = (&n - &target.lo).to_usize().expect("window index");
        if !covered[idx] {
            let reach = &n - &target.lo; // how far down coverage is useful
            let stretch = if run < reach { run.clone() } else { reach };
            let c = &n - (&w_min + &stretch);
            // mark everything this element covers inside the target
            let wnd = Window {
                lo: &target.lo - &c,
                hi: &target.hi - &c,
            };
            for y in w.enumerate(&wnd)? {
                let i = (&c + &y - &target.lo).to_usize().expect("cover index");
                covered[i] = true;
            }
            debug_assert!(covered[idx]);
            out.push(c);
        }
        n -= 1;
    }
    out.sort();
    Ok(out)
}

/// Per-element record of a pruning/removability pass.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RemovabilityRecord {
    pub c0: Int,
    pub removable: bool,
    pub witness: Option<Int>,
    pub window: Window,
}

impl RemovabilityRecord {
    /// Line format: `c0 <int> verdict <status> witness <int?> window <lo> <hi>`.
    pub fn to_line(&self) -> String {
        format!(
            "c0 {} verdict {} witness {} window {} {}",
            self.c0,
            if self.removable {
                "removable"
            } else {
                "essential"
            },
            match &self.witness {
                Some(w) => w.to_string(),
                None => "-".to_string(),
            },
            self.window.lo,
            self.window.hi
        )
    }

    pub fn parse_line(line: &str) -> Result<RemovabilityRecord> {
        let toks: Vec<&str> = line.split_whitespace().collect();
        let bad = || Error::Document(format!("bad removability record: {line:?}"));
        if toks.len() != 9
            || toks[0] != "c0"
            || toks[2] != "verdict"
            || toks[4] != "witness"
            || toks[6] != "window"
        {
            return Err(bad());
        }
        let int = |s: &str| crate::docint::parse_int(s).map_err(|_| bad());
        Ok(RemovabilityRecord {
            c0: int(toks[1])?,
            removable: match toks[3] {
                "removable" => true,
                "essential" => false,
                _ => return Err(bad()),
            },
            witness: if toks[5] == "-" {
                None
            } else {
                Some(int(toks[5])?)
            },
            window: Window::new(int(toks[7])?, int(toks[8])?)?,
        })
    }
}

#[derive(Clone, Debug)]
pub struct PruneResult {
    pub kept: Vec<Int>,
    pub log: Vec<RemovabilityRecord>,
}

/// Prunes a finite covering list down to a window-minimal one: ascending
/// passes remove any element whose coverage is redundant, until a fixpoint;
/// every kept element has a witness point it alone covers.
pub fn prune_to_window_minimal(c: &[Int], w: &IntSetExpr, target: &Window) -> Result<PruneResult> {
    let width = target.width().to_usize().ok_or_else(|| Error::Budget {
        what: "pruning window".into(),
        limit: 1 << 22,
    })?;
    let mut kept: Vec<Int> = c.to_vec();
    kept.sort();
    kept.dedup();

    // coverage multiplicity per target point
    let mut cover = vec![0u32; width];
    let mut contribution: Vec<Vec<usize>> = Vec::with_capacity(kept.len());
    for ci in &kept {
        let wnd = Window {
            lo: &target.lo - ci,
            hi: &target.hi - ci,
        };
        let pts: Vec<usize> = w
            .enumerate(&wnd)?
            .into_iter()
            .map(|y| (ci + &y - &target.lo).to_usize().expect("cover index"))
            .collect();
        for &i in &pts {
            cover[i] += 1;
        }
        contribution.push(pts);
    }
    if let Some(i) = cover.iter().position(|&k| k == 0) {
        return Err(Error::Precondition(format!(
            "candidate list does not cover the target: {} is uncovered",
            &target.lo + Int::from(i as u64)
        )));
    }

    let mut log = Vec::new();
    let mut active: Vec<bool> = vec![true; kept.len()];
    loop {
        let mut removed_any = false;
        for i in 0..kept.len() {
            if !active[i] {
                continue;
            }
            let redundant = contribution[i].iter().all(|&p| cover[p] >= 2);
            if redundant {
                for &p in &contribution[i] {
                    cover[p] -= 1;
                }
                active[i] = false;
                removed_any = true;
                log.push(RemovabilityRecord {
                    c0: kept[i].clone(),
                    removable: true,
                    witness: None,
                    window: target.clone(),
                });
            }
        }
        if !removed_any {
            break;
        }
    }
    for i in 0..kept.len() {
        if active[i] {
            let witness = contribution[i]
                .iter()
                .find(|&&p| cover[p] == 1)
                .map(|&p| &target.lo + Int::from(p as u64));
            log.push(RemovabilityRecord {
                c0: kept[i].clone(),
                removable: false,
                witness,
                window: target.clone(),
            });
        }
    }
    log.sort_by(|a, b| a.c0.cmp(&b.c0));
    let kept: Vec<Int> = kept
        .into_iter()
        .zip(active)
        .filter_map(|(v, a)| a.then_some(v))
        .collect();
    Ok(PruneResult { kept, log })
}

/// Windowed removability of one element of a finite complement list:
/// does `(C ∖ {c0}) + W` still cover the target?
pub fn window_removable(
    c0: &Int,
    c: &[Int],
    w: &IntSetExpr,
    target: &Window,
) -> Result<(bool, Option<Int>)> {
    let width = target.width().to_usize().ok_or_else(|| Error::Budget {
        what: "removability window".into(),
        limit: 1 << 22,
    })?;
    let mut covered = vec![false; width];
    for ci in c {
        if ci == c0 {
            continue;
        }
        let wnd = Window {
            lo: &target.lo - ci,
            hi: &target.hi - ci,
        };
        for y in w.enumerate(&wnd)? {
            covered[(ci + &y - &target.lo).to_usize().expect("index")] = true;
        }
    }
    match covered.iter().position(|&b| !b) {
        None => Ok((true, None)),
        Some(i) => Ok((false, Some(&target.lo + Int::from(i as u64)))),
    }
}

/// `w` shifted so its minimum is 1, as the classical normalization demands.
/// Returns the shifted set and the applied shift.
pub fn normalized_to_min_one(w: &IntSetExpr) -> Result<(IntSetExpr, Int)> {
    match w.min_extent() {
        crate::setalg::ExprBound::Finite(m) => {
            let shift = Int::one() - &m;
            Ok((w.shifted(&shift), shift))
        }
        _ => Err(Error::Precondition(
            "normalization needs a nonempty set bounded below".into(),
        )),
    }
}

/// `ℤ⁺ ∖ w` after normalization to minimum 1.
pub fn normalized_complement(w: &IntSetExpr) -> Result<IntSetExpr> {
    let (shifted, _) = normalized_to_min_one(w)?;
    complement_positive(&shifted)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::setalg::ApComponent;

    fn int(n: i64) -> Int {
        Int::from(n)
    }

    fn ints(v: &[i64]) -> Vec<Int> {
        v.iter().map(|&x| int(x)).collect()
    }

    fn w(lo: i64, hi: i64) -> Window {
        Window::new(lo, hi).unwrap()
    }

    #[test]
    fn downray_plus_positives_is_certified_complement() {
        let v = is_complement(
            &ApComponent::down_ray(0, 1).into(),
            &ApComponent::up_ray(1, 1).into(),
            &w(-5, 5),
        )
        .unwrap();
        assert_eq!(v.status, Status::CertifiedYes);
    }

    #[test]
    fn parity_obstruction_is_certified_no() {
        let v = is_complement(
            &ApComponent::line(0, 2).into(),
            &ApComponent::finite([0]).into(),
            &w(0, 3),
        )
        .unwrap();
        assert_eq!(v.status, Status::CertifiedNo);
        match v.certificate.unwrap() {
            Certificate::UncoveredPoint { n, .. } => assert_eq!(n, int(1)),
            other => panic!("unexpected certificate {other:?}"),
        }
    }

    #[test]
    fn window_slice_coverage_stays_evidence() {
        // finite slices cover the probe but of course not all of ℤ
        let c = ApComponent::finite((0..=9).map(|i| int(-10 * i)).collect::<Vec<_>>());
        let base = ApComponent::finite((0..=9).map(int).collect::<Vec<_>>());
        let v = is_complement(&c.into(), &base.into(), &w(-90, 9)).unwrap();
        assert_eq!(v.status, Status::EvidenceOnly);
        assert!(v.note.contains("fully covered"));
    }

    #[test]
    fn essentiality_spec_cases() {
        // C = 10ℤ, W = {0..9}: 0 has the unique representation 0 + 0
        let c: IntSetExpr = ApComponent::line(0, 10).into();
        let base: IntSetExpr = ApComponent::finite((0..=9).map(int).collect::<Vec<_>>()).into();
        let v = essential(&int(0), &c, &base, &w(-50, 50)).unwrap();
        assert_eq!(v.status, Status::CertifiedYes);
        match v.certificate.unwrap() {
            Certificate::Essentiality { n, .. } => assert_eq!(n, int(0)),
            other => panic!("unexpected certificate {other:?}"),
        }

        // C = (−∞, 0], W = ℤ⁺: every element is removable
        let c: IntSetExpr = ApComponent::down_ray(0, 1).into();
        let base: IntSetExpr = ApComponent::up_ray(1, 1).into();
        let v = essential(&int(0), &c, &base, &w(-50, 50)).unwrap();
        assert_eq!(v.status, Status::CertifiedNo);
        let v = removable(&int(0), &c, &base, &w(-50, 50)).unwrap();
        assert_eq!(v.status, Status::CertifiedYes);

        // C = ℤ, W = {0}: coverage is bijective, nothing is removable
        let c: IntSetExpr = ApComponent::line(0, 1).into();
        let base: IntSetExpr = ApComponent::finite([0]).into();
        let v = removable(&int(5), &c, &base, &w(-20, 20)).unwrap();
        assert_eq!(v.status, Status::CertifiedNo);

        // singleton complement: certainly essential
        let c: IntSetExpr = ApComponent::finite([0]).into();
        let base: IntSetExpr = ApComponent::line(0, 1).into();
        let v = essential(&int(0), &c, &base, &w(-20, 20)).unwrap();
        assert_eq!(v.status, Status::CertifiedYes);
    }

    #[test]
    fn greedy_spec_cases() {
        let base: IntSetExpr = ApComponent::finite([0, 1]).into();
        assert_eq!(greedy_complement(&base, &w(0, 5)).unwrap(), ints(&[0, 2, 4]));

        let base: IntSetExpr = ApComponent::finite([0]).into();
        assert_eq!(greedy_complement(&base, &w(0, 2)).unwrap(), ints(&[0, 1, 2]));

        let base: IntSetExpr = ApComponent::up_ray(1, 1).into();
        assert_eq!(greedy_complement(&base, &w(-10, 10)).unwrap(), ints(&[-11]));

        assert!(matches!(
            greedy_complement(&IntSetExpr::empty(), &w(0, 5)),
            Err(Error::Uncoverable(_))
        ));
    }

    #[test]
    fn greedy_output_always_covers() {
        let base: IntSetExpr = ApComponent::finite((0..=9).map(int).collect::<Vec<_>>()).into();
        let target = w(-50, 9);
        let c = greedy_complement(&base, &target).unwrap();
        assert_eq!(c, ints(&[-50, -40, -30, -20, -10, 0]));
        for i in -50..=9i64 {
            assert!(
                c.iter().any(|ci| base.member(&(int(i) - ci))),
                "{i} uncovered"
            );
        }
    }

    #[test]
    fn prune_spec_case() {
        let base: IntSetExpr = ApComponent::finite([0, 1]).into();
        let r = prune_to_window_minimal(&ints(&[0, 1, 2, 3]), &base, &w(0, 3)).unwrap();
        assert_eq!(r.kept, ints(&[0, 2]));
        for rec in r.log.iter().filter(|r| !r.removable) {
            assert!(rec.witness.is_some());
        }
    }

    #[test]
    fn prune_is_idempotent() {
        let base: IntSetExpr = ApComponent::finite([0, 1]).into();
        let r1 = prune_to_window_minimal(&ints(&[0, 1, 2, 3]), &base, &w(0, 3)).unwrap();
        let r2 = prune_to_window_minimal(&r1.kept, &base, &w(0, 3)).unwrap();
        assert_eq!(r1.kept, r2.kept);
    }

    #[test]
    fn removability_record_round_trip() {
        let rec = RemovabilityRecord {
            c0: int(-7),
            removable: false,
            witness: Some(int(13)),
            window: w(-50, 50),
        };
        assert_eq!(RemovabilityRecord::parse_line(&rec.to_line()).unwrap(), rec);
        let rec2 = RemovabilityRecord {
            c0: int(4),
            removable: true,
            witness: None,
            window: w(0, 9),
        };
        assert_eq!(
            rec2.to_line(),
            "c0 4 verdict removable witness - window 0 9"
        );
        assert_eq!(
            RemovabilityRecord::parse_line(&rec2.to_line()).unwrap(),
            rec2
        );
    }
}
