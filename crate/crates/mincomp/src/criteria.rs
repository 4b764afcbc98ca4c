//! Gap-structure analysis and the decision ladder.
//!
//! Routes, in ladder order:
//!
//! - `unbounded-both-sides`: a set unbounded in both directions always has a
//!   minimal additive complement.
//! - `finite-base`: a finite nonempty set always has one.
//! - `gap-limsup`: if the gaps of `W` have unbounded supremum, a minimal
//!   complement exists.
//! - `complement-gap-lim`: if the gaps of `W̄ = ℤ⁺∖W` tend to infinity, no
//!   minimal complement exists.
//! - `witness-sequence`: if along some subsequence of `W̄` the gaps diverge
//!   while the counts of `W̄` between consecutive witnesses stay bounded, no
//!   minimal complement exists. Power families certify this in closed form.
//! - `periodic`: eventually periodic sets route through the exact modular
//!   conditions (`modular-sufficiency` / `modular-necessity`) or, for
//!   progression-shaped exceptional parts, through `progression-tail`.
//!
//! Certified statuses come only from closed forms or exhaustive finite
//! checks; every windowed measurement stays evidence.

use crate::complement::normalized_to_min_one;
use crate::periodic::{
    decompose, progression_tail_verdict, search_modular_complements, ExceptionalPart,
    ModularSearch,
};
use crate::setalg::{
    complement_positive, gap_structure, min_gap_beyond, set_to_document, sup_gap_within,
    ExprBound, GapBound, GapStructure, IntSetExpr, PowerIntervalFamily, Window,
};
use crate::verdict::{Certificate, Status, Verdict};
use crate::{Error, Int, Result};
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

/// Positions and consecutive gaps of a set inside a window.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GapProfile {
    pub positions: Vec<Int>,
    pub gaps: Vec<Int>,
    pub window: Window,
}

pub fn gap_profile(s: &IntSetExpr, w: &Window) -> Result<GapProfile> {
    let positions = s.enumerate(w)?;
    let gaps = positions.windows(2).map(|p| &p[1] - &p[0]).collect();
    Ok(GapProfile {
        positions,
        gaps,
        window: w.clone(),
    })
}

/// How witness values are read off a power family.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum WitnessRule {
    /// The last element of each complement block.
    BlockLast,
}

/// The subsequence of `W̄` along which the nonexistence criterion is tested.
#[derive(Clone, Debug)]
pub enum WitnessSequence {
    Explicit {
        values: Vec<Int>,
        bound_k: Option<Int>,
    },
    PowerRule {
        complement: PowerIntervalFamily,
        rule: WitnessRule,
        bound_k: Option<Int>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum WitnessHypothesis {
    /// A witness value is not in `W̄`.
    Membership,
    /// Gaps after the witnesses fail to diverge.
    GapDivergence,
    /// Counts of `W̄` between consecutive witnesses exceed the bound.
    CountBound,
}

impl WitnessHypothesis {
    pub fn name(&self) -> &'static str {
        match self {
            WitnessHypothesis::Membership => "membership",
            WitnessHypothesis::GapDivergence => "gap-divergence",
            WitnessHypothesis::CountBound => "count-bound",
        }
    }
}

#[derive(Clone, Debug)]
pub struct WitnessRow {
    pub t: usize,
    pub value: Int,
    /// Gap from the witness to the next element of `W̄`.
    pub gap: Option<Int>,
    /// `|W̄ ∩ (value_t, value_{t+1})|`.
    pub count: Option<Int>,
}

#[derive(Clone, Debug)]
pub struct WitnessCheck {
    pub verdict: Verdict,
    pub violation: Option<(usize, WitnessHypothesis)>,
    pub rows: Vec<WitnessRow>,
}

const NEXT_ELEMENT_SCAN_BUDGET: u64 = 200_000;

/// Verifies the two witness-sequence hypotheses for `t = 1..=terms`.
///
/// Power-rule witnesses are decided in closed form from the leading
/// coefficients of the complement family's gap and width forms; only those
/// closed forms can certify. Explicit witness lists are checked sample-wise
/// and stay evidence unless a value fails membership outright.
pub fn witness_sequence_check(
    wset: &IntSetExpr,
    witness: &WitnessSequence,
    terms: usize,
) -> Result<WitnessCheck> {
    match witness {
        WitnessSequence::PowerRule {
            complement,
            rule: WitnessRule::BlockLast,
            bound_k,
        } => power_rule_check(wset, complement, bound_k.as_ref(), terms),
        WitnessSequence::Explicit { values, bound_k } => {
            explicit_check(wset, values, bound_k.as_ref(), terms)
        }
    }
}

fn in_complement(wset: &IntSetExpr, v: &Int) -> bool {
    v >= &Int::one() && !wset.member(v)
}

fn power_rule_check(
    wset: &IntSetExpr,
    complement: &PowerIntervalFamily,
    bound_k: Option<&Int>,
    terms: usize,
) -> Result<WitnessCheck> {
    // sanity: the provided family must agree with ℤ⁺ ∖ wset on a window
    let wbar = complement_positive(wset)?;
    let probe = Window::new(1, 4096)?;
    let given: IntSetExpr = complement.clone().into();
    if wbar.enumerate(&probe)? != given.enumerate(&probe)? {
        return Err(Error::Precondition(
            "witness family does not denote the positive complement of the set".into(),
        ));
    }
    let set_doc = set_to_document(wset)?;
    let complement_doc = set_to_document(&given)?;

    let kstar = complement.regular_from()?;
    let mut rows = Vec::new();
    for t in 1..=terms.min(64) {
        let k = kstar + (t as u32 - 1);
        let value = complement.last(k);
        if !in_complement(wset, &value) {
            let verdict = Verdict::certified_no(
                format!("witness value {value} at t = {t} is not in the positive complement"),
                Certificate::WitnessViolation {
                    set_doc,
                    t,
                    hypothesis: WitnessHypothesis::Membership.name().into(),
                    detail: format!("{value} fails membership in W̄"),
                    bound_k: bound_k.cloned(),
                    value: Some(value),
                },
            );
            return Ok(WitnessCheck {
                verdict,
                violation: Some((t, WitnessHypothesis::Membership)),
                rows,
            });
        }
        rows.push(WitnessRow {
            t,
            value,
            gap: Some(complement.gap_after(k)),
            count: Some(complement.width(k + 1)),
        });
    }

    let gap_lead = complement.gap_lead();
    let width_lead = complement.width_lead();
    let width_const = complement.width_const();

    if width_lead > Int::zero() {
        // counts diverge: no finite bound can work
        let (t, count) = first_count_above(complement, kstar, bound_k);
        let detail = match bound_k {
            Some(k) => format!("count {count} at t = {t} exceeds the bound {k}"),
            None => format!("counts grow without bound (e.g. {count} at t = {t})"),
        };
        return Ok(WitnessCheck {
            verdict: Verdict::certified_no(
                format!("count hypothesis fails: {detail}"),
                Certificate::WitnessViolation {
                    set_doc,
                    t,
                    hypothesis: WitnessHypothesis::CountBound.name().into(),
                    detail,
                    bound_k: bound_k.cloned(),
                    value: None,
                },
            ),
            violation: Some((t, WitnessHypothesis::CountBound)),
            rows,
        });
    }

    // counts are eventually the constant width_const
    let bound = match bound_k {
        Some(k) => k.clone(),
        None => width_const.clone(),
    };
    if bound < width_const {
        let detail = format!(
            "counts are eventually {width_const}, above the stated bound {bound}"
        );
        return Ok(WitnessCheck {
            verdict: Verdict::certified_no(
                format!("count hypothesis fails: {detail}"),
                Certificate::WitnessViolation {
                    set_doc,
                    t: 1,
                    hypothesis: WitnessHypothesis::CountBound.name().into(),
                    detail,
                    bound_k: Some(bound),
                    value: None,
                },
            ),
            violation: Some((1, WitnessHypothesis::CountBound)),
            rows,
        });
    }
    if gap_lead <= Int::zero() {
        let detail = format!(
            "gaps after the witnesses are eventually the constant {}",
            complement.gap_const()
        );
        return Ok(WitnessCheck {
            verdict: Verdict::certified_no(
                format!("gap hypothesis fails: {detail}"),
                Certificate::WitnessViolation {
                    set_doc,
                    t: 1,
                    hypothesis: WitnessHypothesis::GapDivergence.name().into(),
                    detail,
                    bound_k: Some(bound),
                    value: None,
                },
            ),
            violation: Some((1, WitnessHypothesis::GapDivergence)),
            rows,
        });
    }
    Ok(WitnessCheck {
        verdict: Verdict::certified_yes(
            format!(
                "witness gaps diverge (lead {gap_lead} > 0) while counts stay at \
                 {width_const} ≤ {bound}: no minimal additive complement exists"
            ),
            Certificate::WitnessSequence {
                set_doc,
                complement_doc,
                base: complement.base.clone(),
                k_from: kstar,
                gap_lead,
                gap_constant: complement.gap_const(),
                count_value: width_const,
                bound_k: bound,
            },
        ),
        violation: None,
        rows,
    })
}

/// First `t` whose inter-witness count exceeds the bound (or 1 when no bound
/// is given).
fn first_count_above(
    f: &PowerIntervalFamily,
    kstar: u32,
    bound: Option<&Int>,
) -> (usize, Int) {
    let Some(bound) = bound else {
        return (1, f.width(kstar + 1));
    };
    let mut t = 1usize;
    loop {
        let count = f.width(kstar + t as u32);
        if &count > bound {
            return (t, count);
        }
        t += 1;
    }
}

fn explicit_check(
    wset: &IntSetExpr,
    values: &[Int],
    bound_k: Option<&Int>,
    terms: usize,
) -> Result<WitnessCheck> {
    if values.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Precondition(
            "witness values must be strictly increasing".into(),
        ));
    }
    let set_doc = set_to_document(wset)?;
    let take = terms.min(values.len());
    let mut rows: Vec<WitnessRow> = Vec::new();
    for (i, v) in values.iter().take(take).enumerate() {
        let t = i + 1;
        if !in_complement(wset, v) {
            return Ok(WitnessCheck {
                verdict: Verdict::certified_no(
                    format!("witness value {v} at t = {t} is not in the positive complement"),
                    Certificate::WitnessViolation {
                        set_doc,
                        t,
                        hypothesis: WitnessHypothesis::Membership.name().into(),
                        detail: format!("{v} fails membership in W̄"),
                        bound_k: bound_k.cloned(),
                        value: Some(v.clone()),
                    },
                ),
                violation: Some((t, WitnessHypothesis::Membership)),
                rows,
            });
        }
        // next element of W̄ after the witness
        let mut next = v + 1;
        let mut steps = 0u64;
        while !in_complement(wset, &next) {
            next += 1;
            steps += 1;
            if steps > NEXT_ELEMENT_SCAN_BUDGET {
                return Err(Error::Budget {
                    what: format!("scanning for the complement element after {v}"),
                    limit: NEXT_ELEMENT_SCAN_BUDGET,
                });
            }
        }
        let gap = &next - v;
        // count of W̄ strictly between this witness and the next
        let count = match values.get(i + 1) {
            Some(nv) => {
                let mut count = Int::zero();
                let mut x = v + 1;
                let mut steps = 0u64;
                while &x < nv {
                    if in_complement(wset, &x) {
                        count += 1;
                    }
                    x += 1;
                    steps += 1;
                    if steps > NEXT_ELEMENT_SCAN_BUDGET {
                        return Err(Error::Budget {
                            what: format!("counting complement elements after {v}"),
                            limit: NEXT_ELEMENT_SCAN_BUDGET,
                        });
                    }
                }
                Some(count)
            }
            None => None,
        };
        rows.push(WitnessRow {
            t,
            value: v.clone(),
            gap: Some(gap),
            count,
        });
    }

    // finite-sample violations are evidence, never certificates
    if let Some(bound) = bound_k {
        for row in &rows {
            if let Some(c) = &row.count {
                if c > bound {
                    return Ok(WitnessCheck {
                        verdict: Verdict::evidence(
                            format!(
                                "count {c} at t = {} exceeds the bound {bound} on this sample",
                                row.t
                            ),
                            None,
                        ),
                        violation: Some((row.t, WitnessHypothesis::CountBound)),
                        rows,
                    });
                }
            }
        }
    }
    // growth proxy: every later gap strictly exceeds the maximum of the
    // first half of the observations
    let gaps: Vec<&Int> = rows.iter().filter_map(|r| r.gap.as_ref()).collect();
    if gaps.len() >= 4 {
        let half = gaps.len() / 2;
        let first_max = gaps[..half].iter().cloned().max().expect("nonempty");
        if let Some(pos) = gaps[half..].iter().position(|g| *g <= first_max) {
            let t = half + pos + 1;
            return Ok(WitnessCheck {
                verdict: Verdict::evidence(
                    format!(
                        "gap growth proxy fails at t = {t}: later gap does not exceed \
                         the first-half maximum {first_max}"
                    ),
                    None,
                ),
                violation: Some((t, WitnessHypothesis::GapDivergence)),
                rows,
            });
        }
    }
    Ok(WitnessCheck {
        verdict: Verdict::evidence(
            format!(
                "hypotheses consistent on {} witness terms (finite evidence only)",
                rows.len()
            ),
            None,
        ),
        violation: None,
        rows,
    })
}

/// Monotone evidence sequence plus a verdict for one gap criterion.
#[derive(Clone, Debug)]
pub struct GapEvidence {
    pub bounds: Vec<Int>,
    pub values: Vec<Option<Int>>,
    pub verdict: Verdict,
}

/// Evidence and verdict for "the gap supremum of `w` is unbounded"
/// (existence criterion).
pub fn gap_limsup_evidence(w: &IntSetExpr, bounds: &[Int]) -> Result<GapEvidence> {
    let mut values = Vec::new();
    for b in bounds {
        values.push(sup_gap_within(w, b)?);
    }
    let verdict = match gap_structure(w)? {
        GapStructure::Infinite(a) => match a.sup {
            GapBound::Unbounded => {
                let f = w.as_family().expect("unbounded sup needs a family");
                Verdict::certified_yes(
                    "inter-block gaps diverge: a minimal additive complement exists",
                    Certificate::GapDivergence {
                        set_doc: set_to_document(&w.coalesced())?,
                        lead: f.gap_lead(),
                        constant: f.gap_const(),
                        base: f.base.clone(),
                        k_from: f.regular_from()?,
                    },
                )
            }
            GapBound::Constant(sup) => Verdict::certified_no(
                format!("gaps are eventually bounded by {sup}: criterion inapplicable"),
                Certificate::GapEventuallyBounded {
                    set_doc: set_to_document(&w.coalesced())?,
                    sup,
                },
            ),
        },
        GapStructure::UpwardFinite => Verdict::evidence(
            "set is eventually finite upward; the gap criterion does not apply",
            None,
        ),
        GapStructure::Opaque => Verdict::evidence(
            "no closed form for this tier; measured suprema only",
            None,
        ),
    };
    Ok(GapEvidence {
        bounds: bounds.to_vec(),
        values,
        verdict,
    })
}

/// Evidence and verdict for "the gaps of `w̄` tend to infinity"
/// (nonexistence criterion). The argument is the complement `W̄`, not `W`.
pub fn complement_gap_lim_evidence(wbar: &IntSetExpr, bounds: &[Int]) -> Result<GapEvidence> {
    let mut values = Vec::new();
    for b in bounds {
        match min_gap_beyond(wbar, b) {
            Ok(v) => values.push(v),
            Err(Error::Unsupported(_)) => {
                // oracle tier: measure on a bounded window
                let probe = Window::new(b.clone(), b + 4096)?;
                let prof = gap_profile(wbar, &probe)?;
                values.push(prof.gaps.iter().min().cloned());
            }
            Err(e) => return Err(e),
        }
    }
    let verdict = match gap_structure(wbar)? {
        GapStructure::Infinite(a) => match a.tail_min {
            GapBound::Unbounded => {
                let f = wbar.as_family().expect("unbounded tail needs a family");
                Verdict::certified_yes(
                    "complement gaps diverge: no minimal additive complement exists",
                    Certificate::GapDivergence {
                        set_doc: set_to_document(&wbar.coalesced())?,
                        lead: f.gap_lead(),
                        constant: f.gap_const(),
                        base: f.base.clone(),
                        k_from: f.regular_from()?,
                    },
                )
            }
            GapBound::Constant(min) => Verdict::certified_no(
                format!("complement gaps recur at {min}: criterion inapplicable"),
                Certificate::TailGapEventuallyBounded {
                    set_doc: set_to_document(&wbar.coalesced())?,
                    min,
                },
            ),
        },
        GapStructure::UpwardFinite => Verdict::evidence(
            "positive complement is finite; the criterion does not apply",
            None,
        ),
        GapStructure::Opaque => Verdict::evidence(
            "no closed form for this tier; measured tail minima only",
            None,
        ),
    };
    Ok(GapEvidence {
        bounds: bounds.to_vec(),
        values,
        verdict,
    })
}

/// Exact closed-form gap data of a power family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyAsymptotics {
    /// Eventual supremum of consecutive gaps; `None` when unbounded.
    pub eventual_max_gap: Option<Int>,
    /// Eventual infimum of tail gaps; `None` when unbounded.
    pub eventual_min_gap: Option<Int>,
    pub inter_block_gap_divergent: bool,
    /// Eventual count of complement elements between consecutive block-end
    /// witnesses, when that count stabilizes.
    pub complement_window_count: Option<Int>,
}

pub fn power_family_asymptotics(f: &PowerIntervalFamily) -> Result<FamilyAsymptotics> {
    f.validate()?;
    let divergent = f.gap_lead() > Int::zero();
    let wide =
        f.width_lead() > Int::zero() || (f.width_lead().is_zero() && f.width_const() >= Int::one());
    let eventual_max_gap = if divergent { None } else { Some(f.gap_const()) };
    let eventual_min_gap = if wide {
        Some(Int::one())
    } else if divergent {
        None
    } else {
        Some(f.gap_const())
    };
    let complement_window_count = match f.complement_positive()? {
        crate::setalg::FamilyComplement::Family(g) if g.width_lead().is_zero() => {
            Some(g.width_const())
        }
        _ => None,
    };
    Ok(FamilyAsymptotics {
        eventual_max_gap,
        eventual_min_gap,
        inter_block_gap_divergent: divergent,
        complement_window_count,
    })
}

/// One evaluated route of the ladder.
#[derive(Clone, Debug)]
pub struct RouteEntry {
    pub route: &'static str,
    pub verdict: Verdict,
    /// What this route's certified verdict means for existence of a minimal
    /// additive complement, when it certifies anything.
    pub existence: Option<bool>,
    pub detail: String,
}

#[derive(Clone, Debug)]
pub struct ClassifyReport {
    /// Shift applied so the analyzed set has minimum 1 (0 when the set was
    /// handled structurally before normalization).
    pub normalization_shift: Int,
    /// Whether the set was replaced by its reflection `−W` first.
    pub reflected: bool,
    pub routes: Vec<RouteEntry>,
    /// Final answer to "does a minimal additive complement exist".
    pub conclusion: Verdict,
}

#[derive(Clone, Debug)]
pub struct ClassifyConfig {
    pub witness_terms: usize,
    pub bound_k: Option<Int>,
    pub m_limit: u64,
    pub evidence_bounds: Vec<Int>,
}

impl Default for ClassifyConfig {
    fn default() -> Self {
        ClassifyConfig {
            witness_terms: 40,
            bound_k: None,
            m_limit: 22,
            evidence_bounds: vec![
                Int::from(100),
                Int::from(10_000),
                Int::from(1_000_000),
            ],
        }
    }
}

/// Runs the full decision ladder.
///
/// The conclusion is `CertifiedYes`/`CertifiedNo` for certified
/// existence/nonexistence of a minimal additive complement and
/// `EvidenceOnly` otherwise. Conflicting certified routes would contradict
/// the underlying theorems and raise [`Error::Inconsistency`].
pub fn classify(w: &IntSetExpr, cfg: &ClassifyConfig) -> Result<ClassifyReport> {
    let mut routes: Vec<RouteEntry> = Vec::new();

    if w.is_empty_set() {
        let conclusion = Verdict::certified_no(
            "the empty set has no additive complement at all",
            Certificate::EmptyBase {
                set_doc: set_to_document(w)?,
            },
        );
        routes.push(RouteEntry {
            route: "degenerate",
            verdict: conclusion.clone(),
            existence: Some(false),
            detail: "empty base set".into(),
        });
        return Ok(ClassifyReport {
            normalization_shift: Int::zero(),
            reflected: false,
            routes,
            conclusion,
        });
    }

    let min = w.min_extent();
    let max = w.max_extent();
    if min == ExprBound::Unbounded && max == ExprBound::Unbounded {
        let v = Verdict::certified_yes(
            "set is unbounded in both directions: a minimal complement exists",
            Certificate::UnboundedBothSides {
                set_doc: set_to_document(w)?,
            },
        );
        routes.push(RouteEntry {
            route: "unbounded-both-sides",
            verdict: v.clone(),
            existence: Some(true),
            detail: "structural extent check".into(),
        });
        return Ok(ClassifyReport {
            normalization_shift: Int::zero(),
            reflected: false,
            routes,
            conclusion: v,
        });
    }

    // bounded above but not below: analyze the reflection instead
    let (base, reflected) = if max != ExprBound::Unbounded && min == ExprBound::Unbounded {
        (w.reflected()?, true)
    } else {
        (w.clone(), false)
    };

    if let (ExprBound::Finite(lo), ExprBound::Finite(hi)) = (base.min_extent(), base.max_extent())
    {
        let count = base.enumerate(&Window { lo, hi })?.len();
        let v = Verdict::certified_yes(
            format!("finite base set of {count} elements: every complement contains a minimal one"),
            Certificate::FiniteBase {
                count,
                set_doc: set_to_document(&base)?,
            },
        );
        routes.push(RouteEntry {
            route: "finite-base",
            verdict: v.clone(),
            existence: Some(true),
            detail: "finite nonempty set".into(),
        });
        return Ok(ClassifyReport {
            normalization_shift: Int::zero(),
            reflected,
            routes,
            conclusion: v,
        });
    }

    let Ok((normalized, shift)) = normalized_to_min_one(&base) else {
        // minimum not structurally available (opaque oracle): evidence only
        return Ok(ClassifyReport {
            normalization_shift: Int::zero(),
            reflected,
            routes: vec![RouteEntry {
                route: "opaque",
                verdict: Verdict::evidence(
                    "minimum of the set is not structurally decidable; no route applies",
                    None,
                ),
                existence: None,
                detail: "oracle wrapper without computable minimum".into(),
            }],
            conclusion: Verdict::evidence("undetermined", None),
        });
    };

    // route: gap-limsup of W
    let ev_a = gap_limsup_evidence(&normalized, &cfg.evidence_bounds)?;
    routes.push(RouteEntry {
        route: "gap-limsup",
        existence: (ev_a.verdict.status == Status::CertifiedYes).then_some(true),
        detail: format_evidence(&ev_a),
        verdict: ev_a.verdict,
    });

    // route: complement-gap-lim of W̄
    let wbar = complement_positive(&normalized)?;
    let ev_b = complement_gap_lim_evidence(&wbar, &cfg.evidence_bounds)?;
    routes.push(RouteEntry {
        route: "complement-gap-lim",
        existence: (ev_b.verdict.status == Status::CertifiedYes).then_some(false),
        detail: format_evidence(&ev_b),
        verdict: ev_b.verdict,
    });

    // route: witness-sequence (auto-derived block-end witnesses)
    match (normalized.as_family(), wbar.as_family()) {
        (Some(_), Some(comp)) => {
            let witness = WitnessSequence::PowerRule {
                complement: comp,
                rule: WitnessRule::BlockLast,
                bound_k: cfg.bound_k.clone(),
            };
            let check = witness_sequence_check(&normalized, &witness, cfg.witness_terms)?;
            routes.push(RouteEntry {
                route: "witness-sequence",
                existence: (check.verdict.status == Status::CertifiedYes).then_some(false),
                detail: format!(
                    "block-end witnesses, {} terms verified{}",
                    check.rows.len(),
                    match &check.violation {
                        Some((t, h)) => format!("; {} hypothesis fails at t = {t}", h.name()),
                        None => String::new(),
                    }
                ),
                verdict: check.verdict,
            });
        }
        _ => routes.push(RouteEntry {
            route: "witness-sequence",
            verdict: Verdict::evidence(
                "no automatic witness rule for this representation tier",
                None,
            ),
            existence: None,
            detail: "requires a power-family set with a power-family complement".into(),
        }),
    }

    // route: periodic decomposition
    if normalized.is_exact() {
        match decompose(&normalized) {
            Ok(profile) => match &profile.y1 {
                ExceptionalPart::Progressions { .. } => {
                    let v = progression_tail_verdict(&profile)?
                        .expect("nonempty progressions are applicable");
                    routes.push(RouteEntry {
                        route: "progression-tail",
                        existence: Some(false),
                        detail: format!("period {}, shift {}", profile.m, profile.shift),
                        verdict: v,
                    });
                }
                ExceptionalPart::FiniteSet(_) => match search_modular_complements(
                    &profile,
                    cfg.m_limit,
                ) {
                    Ok(ModularSearch::SufficiencyWitness { c }) => {
                        let v = Verdict::certified_yes(
                            format!(
                                "residues {{{}}} satisfy the sufficient modular conditions",
                                join_ints(&c)
                            ),
                            Certificate::ModularSufficiency {
                                m: profile.m.clone(),
                                xm: profile.xm.clone(),
                                y1_residues: profile.y1_residues(),
                                c,
                            },
                        );
                        routes.push(RouteEntry {
                            route: "modular-sufficiency",
                            existence: Some(true),
                            detail: format!("period {}, shift {}", profile.m, profile.shift),
                            verdict: v,
                        });
                    }
                    Ok(ModularSearch::NecessityInfeasible { subsets_checked }) => {
                        let v = Verdict::certified_no(
                            format!(
                                "all {subsets_checked} residue subsets fail the necessary \
                                 modular conditions"
                            ),
                            Certificate::ModularInfeasible {
                                m: profile.m.clone(),
                                xm: profile.xm.clone(),
                                y1_residues: profile.y1_residues(),
                                subsets_checked,
                            },
                        );
                        routes.push(RouteEntry {
                            route: "modular-necessity",
                            existence: Some(false),
                            detail: format!("period {}, shift {}", profile.m, profile.shift),
                            verdict: v,
                        });
                    }
                    Ok(ModularSearch::Undetermined { feasible_count, .. }) => {
                        routes.push(RouteEntry {
                            route: "modular-search",
                            verdict: Verdict::evidence(
                                format!(
                                    "{feasible_count} subsets pass necessity but none passes \
                                     sufficiency: undetermined between the two conditions"
                                ),
                                None,
                            ),
                            existence: None,
                            detail: format!("period {}", profile.m),
                        });
                    }
                    Err(Error::Budget { what, limit }) => {
                        routes.push(RouteEntry {
                            route: "modular-search",
                            verdict: Verdict::evidence(
                                format!("subset search skipped: {what} over limit {limit}"),
                                None,
                            ),
                            existence: None,
                            detail: "budget".into(),
                        });
                    }
                    Err(e) => return Err(e),
                },
            },
            Err(Error::Structure(msg)) => routes.push(RouteEntry {
                route: "periodic",
                verdict: Verdict::evidence(format!("not decomposable: {msg}"), None),
                existence: None,
                detail: "structure".into(),
            }),
            Err(e) => return Err(e),
        }
    } else {
        routes.push(RouteEntry {
            route: "periodic",
            verdict: Verdict::evidence(
                "periodic decomposition applies to exact sets only",
                None,
            ),
            existence: None,
            detail: "tier".into(),
        });
    }

    // conclusion: certified routes must agree
    let mut yes: Option<&RouteEntry> = None;
    let mut no: Option<&RouteEntry> = None;
    for r in &routes {
        match r.existence {
            Some(true) if yes.is_none() => yes = Some(r),
            Some(false) if no.is_none() => no = Some(r),
            _ => {}
        }
    }
    let conclusion = match (yes, no) {
        (Some(y), Some(n)) => {
            return Err(Error::Inconsistency(format!(
                "route {} certifies existence while route {} certifies nonexistence",
                y.route, n.route
            )))
        }
        (Some(y), None) => {
            let mut v = y.verdict.clone();
            v.status = Status::CertifiedYes;
            v.note = format!("minimal complement exists [{} route]: {}", y.route, v.note);
            v
        }
        (None, Some(n)) => {
            let mut v = n.verdict.clone();
            v.status = Status::CertifiedNo;
            v.note = format!(
                "no minimal complement exists [{} route]: {}",
                n.route, v.note
            );
            v
        }
        (None, None) => Verdict::evidence(
            "undetermined: no route certifies either direction",
            None,
        ),
    };
    Ok(ClassifyReport {
        normalization_shift: shift,
        reflected,
        routes,
        conclusion,
    })
}

fn format_evidence(e: &GapEvidence) -> String {
    let vals: Vec<String> = e
        .bounds
        .iter()
        .zip(&e.values)
        .map(|(b, v)| {
            format!(
                "[1,{b}]→{}",
                v.as_ref().map_or("-".to_string(), |x| x.to_string())
            )
        })
        .collect();
    vals.join(" ")
}

fn join_ints(v: &[Int]) -> String {
    v.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reference::{decade_band_set, dyadic_band_set};
    use crate::setalg::ApComponent;

    fn int(n: i64) -> Int {
        Int::from(n)
    }

    #[test]
    fn gap_profile_of_dyadic_band() {
        let w = dyadic_band_set();
        let p = gap_profile(&w, &Window::new(1, 64).unwrap()).unwrap();
        // 1 → 25 (gap 24), block 25..31 (gaps 1), 31 → 41 (gap 10), 41..63
        let mut expect = vec![int(24)];
        expect.extend(std::iter::repeat(int(1)).take(6));
        expect.push(int(10));
        expect.extend(std::iter::repeat(int(1)).take(22));
        assert_eq!(p.gaps, expect);
    }

    #[test]
    fn gap_profile_of_dyadic_complement() {
        let wbar = complement_positive(&dyadic_band_set()).unwrap();
        let p = gap_profile(&wbar, &Window::new(2, 40).unwrap()).unwrap();
        assert_eq!(p.gaps.iter().max(), Some(&int(8)));
    }

    #[test]
    fn dyadic_asymptotics() {
        let a = power_family_asymptotics(&crate::reference::dyadic_band_family()).unwrap();
        assert_eq!(a.eventual_max_gap, Some(int(10)));
        assert_eq!(a.eventual_min_gap, Some(int(1)));
        assert!(!a.inter_block_gap_divergent);
        assert_eq!(a.complement_window_count, Some(int(8)));
    }

    #[test]
    fn decade_asymptotics_diverge() {
        let a = power_family_asymptotics(&crate::reference::decade_band_family()).unwrap();
        assert_eq!(a.eventual_max_gap, None);
        assert!(a.inter_block_gap_divergent);
        assert_eq!(a.eventual_min_gap, Some(int(1)));
        assert_eq!(a.complement_window_count, None);
    }

    #[test]
    fn tiling_family_asymptotics() {
        let f = PowerIntervalFamily::new(2, 1, 0, 2, -1, 1, true, vec![]).unwrap();
        let a = power_family_asymptotics(&f).unwrap();
        assert_eq!(a.eventual_max_gap, Some(int(1)));
        assert!(!a.inter_block_gap_divergent);
        assert_eq!(a.complement_window_count, None);
    }

    #[test]
    fn witness_check_certifies_dyadic_band() {
        let w = dyadic_band_set();
        let comp = complement_positive(&w).unwrap().as_family().unwrap();
        let witness = WitnessSequence::PowerRule {
            complement: comp,
            rule: WitnessRule::BlockLast,
            bound_k: Some(int(8)),
        };
        let check = witness_sequence_check(&w, &witness, 40).unwrap();
        assert_eq!(check.verdict.status, Status::CertifiedYes);
        assert!(check.violation.is_none());
        // first witness is 2⁵ + 8 = 40, counts are all 8
        assert_eq!(check.rows[0].value, int(40));
        assert!(check.rows.iter().all(|r| r.count == Some(int(8))));
    }

    #[test]
    fn witness_monotone_in_bound() {
        let w = dyadic_band_set();
        let comp = complement_positive(&w).unwrap().as_family().unwrap();
        for k in [8i64, 9, 100] {
            let witness = WitnessSequence::PowerRule {
                complement: comp.clone(),
                rule: WitnessRule::BlockLast,
                bound_k: Some(int(k)),
            };
            let check = witness_sequence_check(&w, &witness, 10).unwrap();
            assert_eq!(check.verdict.status, Status::CertifiedYes, "K = {k}");
        }
        // and K = 7 < 8 fails the count hypothesis
        let witness = WitnessSequence::PowerRule {
            complement: comp,
            rule: WitnessRule::BlockLast,
            bound_k: Some(int(7)),
        };
        let check = witness_sequence_check(&w, &witness, 10).unwrap();
        assert_eq!(check.verdict.status, Status::CertifiedNo);
        assert_eq!(
            check.violation.map(|v| v.1),
            Some(WitnessHypothesis::CountBound)
        );
    }

    #[test]
    fn witness_check_violates_on_decade_band() {
        let w = decade_band_set();
        let comp = complement_positive(&w).unwrap().as_family().unwrap();
        for k in [8i64, 1000] {
            let witness = WitnessSequence::PowerRule {
                complement: comp.clone(),
                rule: WitnessRule::BlockLast,
                bound_k: Some(int(k)),
            };
            let check = witness_sequence_check(&w, &witness, 10).unwrap();
            assert_eq!(check.verdict.status, Status::CertifiedNo);
            assert_eq!(
                check.violation.map(|v| v.1),
                Some(WitnessHypothesis::CountBound),
                "K = {k}"
            );
        }
    }

    #[test]
    fn explicit_witness_membership_violation() {
        let w: IntSetExpr = ApComponent::finite([1, 2, 7]).into();
        let witness = WitnessSequence::Explicit {
            values: vec![int(3), int(7)],
            bound_k: None,
        };
        let check = witness_sequence_check(&w, &witness, 10).unwrap();
        assert_eq!(check.verdict.status, Status::CertifiedNo);
        assert_eq!(
            check.violation,
            Some((2, WitnessHypothesis::Membership))
        );
    }

    #[test]
    fn classify_line_is_unbounded_both_sides() {
        let r = classify(&ApComponent::line(0, 2).into(), &Default::default()).unwrap();
        assert_eq!(r.conclusion.status, Status::CertifiedYes);
        assert_eq!(r.routes[0].route, "unbounded-both-sides");
    }

    #[test]
    fn classify_dyadic_band_is_certified_nonexistence() {
        let r = classify(&dyadic_band_set(), &Default::default()).unwrap();
        assert_eq!(r.conclusion.status, Status::CertifiedNo);
        assert!(r.conclusion.note.contains("witness-sequence"));
    }

    #[test]
    fn classify_decade_band_is_certified_existence() {
        let r = classify(&decade_band_set(), &Default::default()).unwrap();
        assert_eq!(r.conclusion.status, Status::CertifiedYes);
        assert!(r.conclusion.note.contains("gap-limsup"));
    }

    #[test]
    fn classify_positives_has_no_minimal_complement() {
        let r = classify(&ApComponent::up_ray(1, 1).into(), &Default::default()).unwrap();
        assert_eq!(r.conclusion.status, Status::CertifiedNo);
        assert!(r.conclusion.note.contains("modular-necessity"));
    }

    #[test]
    fn classify_finite_set() {
        let r = classify(&ApComponent::finite([3, 5]).into(), &Default::default()).unwrap();
        assert_eq!(r.conclusion.status, Status::CertifiedYes);
        assert_eq!(r.routes[0].route, "finite-base");
    }

    #[test]
    fn classify_empty_set() {
        let r = classify(&IntSetExpr::empty(), &Default::default()).unwrap();
        assert_eq!(r.conclusion.status, Status::CertifiedNo);
    }
}
