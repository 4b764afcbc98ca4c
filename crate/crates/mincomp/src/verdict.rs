//! Three-valued verdicts and the machine-checkable certificates they carry.
//!
//! The soundness discipline: a verdict is `CertifiedYes`/`CertifiedNo` only
//! when a closed-form or exhaustive argument backs it, and such verdicts
//! always embed a [`Certificate`] that [`crate::verify`] can re-check without
//! trusting the code path that produced it. Finite-window computations are
//! reported as `EvidenceOnly` together with the window that was examined.

use crate::docint::{int_opt, int_str, int_vec};
use crate::setalg::Window;
use crate::Int;
use serde::{Deserialize, Serialize};
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Status {
    CertifiedYes,
    CertifiedNo,
    EvidenceOnly,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Status::CertifiedYes => write!(f, "certified-yes"),
            Status::CertifiedNo => write!(f, "certified-no"),
            Status::EvidenceOnly => write!(f, "evidence-only"),
        }
    }
}

/// Result of a decision operation, with optional certificate and the window
/// that evidence-level answers were computed on.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Verdict {
    pub status: Status,
    pub note: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub window: Option<Window>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub certificate: Option<Certificate>,
}

impl Verdict {
    pub fn certified_yes(note: impl Into<String>, certificate: Certificate) -> Self {
        Verdict {
            status: Status::CertifiedYes,
            note: note.into(),
            window: None,
            certificate: Some(certificate),
        }
    }

    pub fn certified_no(note: impl Into<String>, certificate: Certificate) -> Self {
        Verdict {
            status: Status::CertifiedNo,
            note: note.into(),
            window: None,
            certificate: Some(certificate),
        }
    }

    pub fn evidence(note: impl Into<String>, window: Option<Window>) -> Self {
        Verdict {
            status: Status::EvidenceOnly,
            note: note.into(),
            window,
            certificate: None,
        }
    }

    pub fn is_certified(&self) -> bool {
        matches!(self.status, Status::CertifiedYes | Status::CertifiedNo)
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.status, self.note)
    }
}

/// A single replay of the constructive re-witnessing rule: `n = g + k·n'`
/// was re-expressed as `n = (g − k(t+ℓ)) + k(n' + t + ℓ)`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RewitnessReplay {
    /// Index into the certificate's `set_docs`.
    pub doc_index: usize,
    #[serde(with = "int_str")]
    pub g: Int,
    #[serde(with = "int_str")]
    pub n: Int,
    #[serde(with = "int_str")]
    pub n_prime: Int,
    #[serde(with = "int_str")]
    pub t: Int,
    #[serde(with = "int_str")]
    pub ell: Int,
    #[serde(with = "int_str")]
    pub alternative_g: Int,
}

/// Machine-checkable payload of a certified verdict.
///
/// Set-valued fields carry the serialized set-description document so each
/// certificate is self-contained.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "kebab-case")]
pub enum Certificate {
    /// `n` is representable only through `c0`: removing `c0` uncovers `n`.
    Essentiality {
        #[serde(with = "int_str")]
        n: Int,
        #[serde(with = "int_str")]
        c0: Int,
        #[serde(with = "int_str")]
        w: Int,
        search_window: Window,
        complement_doc: String,
        base_doc: String,
    },
    /// The symbolic sumset of the two sets covers all residues, i.e. all of ℤ.
    FullCoverage {
        complement_doc: String,
        base_doc: String,
        #[serde(with = "int_str")]
        modulus: Int,
    },
    /// `n` has no representation `c + w`; the sumset misses its residue class.
    UncoveredPoint {
        #[serde(with = "int_str")]
        n: Int,
        complement_doc: String,
        base_doc: String,
    },
    /// Consecutive-element gaps of the set grow without bound: the inter-block
    /// gap is `lead · p^k + constant` with `lead > 0`.
    GapDivergence {
        set_doc: String,
        #[serde(with = "int_str")]
        lead: Int,
        #[serde(with = "int_str")]
        constant: Int,
        #[serde(with = "int_str")]
        base: Int,
        k_from: u32,
    },
    /// Gaps of the set are eventually bounded with the stated supremum.
    GapEventuallyBounded {
        set_doc: String,
        #[serde(with = "int_str")]
        sup: Int,
    },
    /// Tail minimum gaps of the set are eventually the stated constant.
    TailGapEventuallyBounded {
        set_doc: String,
        #[serde(with = "int_str")]
        min: Int,
    },
    /// Witness-sequence certificate: along block-end witnesses of the
    /// positive complement, gaps diverge (`gap_lead > 0`) while the counts
    /// between consecutive witnesses are eventually the constant
    /// `count_value ≤ bound_k`.
    WitnessSequence {
        set_doc: String,
        complement_doc: String,
        #[serde(with = "int_str")]
        base: Int,
        k_from: u32,
        #[serde(with = "int_str")]
        gap_lead: Int,
        #[serde(with = "int_str")]
        gap_constant: Int,
        #[serde(with = "int_str")]
        count_value: Int,
        #[serde(with = "int_str")]
        bound_k: Int,
    },
    /// A stated witness hypothesis fails, with the failing index.
    WitnessViolation {
        set_doc: String,
        t: usize,
        hypothesis: String,
        detail: String,
        #[serde(with = "int_opt", default)]
        bound_k: Option<Int>,
        #[serde(with = "int_opt", default)]
        value: Option<Int>,
    },
    /// A residue set satisfying both sufficiency conditions.
    ModularSufficiency {
        #[serde(with = "int_str")]
        m: Int,
        #[serde(with = "int_vec")]
        xm: Vec<Int>,
        #[serde(with = "int_vec")]
        y1_residues: Vec<Int>,
        #[serde(with = "int_vec")]
        c: Vec<Int>,
    },
    /// Every residue subset fails the necessity conditions.
    ModularInfeasible {
        #[serde(with = "int_str")]
        m: Int,
        #[serde(with = "int_vec")]
        xm: Vec<Int>,
        #[serde(with = "int_vec")]
        y1_residues: Vec<Int>,
        subsets_checked: u64,
    },
    /// The exceptional part is a nonempty union of progressions `D + mkℕ`.
    ProgressionTail {
        #[serde(with = "int_str")]
        m: Int,
        #[serde(with = "int_str")]
        k: Int,
        #[serde(with = "int_vec")]
        d: Vec<Int>,
        #[serde(with = "int_vec")]
        xm: Vec<Int>,
    },
    /// Constructive re-witnessing replays for `S = kℕ`, plus symbolic set
    /// equality of `(G∖{g}) + kℕ` and `G + kℕ` for each sample.
    AbsorberRewitness {
        #[serde(with = "int_str")]
        k: Int,
        samples: usize,
        set_docs: Vec<String>,
        replays: Vec<RewitnessReplay>,
    },
    /// Removing `c0` does not change the sumset: `(C∖{c0}) + W = C + W` as
    /// symbolic sets, re-checkable by scanning the recorded window.
    Removability {
        #[serde(with = "int_str")]
        c0: Int,
        complement_doc: String,
        base_doc: String,
        window: Window,
    },
    /// The base set is finite and nonempty, so every complement contains a
    /// minimal one.
    FiniteBase { count: usize, set_doc: String },
    /// The base set is unbounded in both directions.
    UnboundedBothSides { set_doc: String },
    /// Degenerate input (empty base set): no additive complement exists.
    EmptyBase { set_doc: String },
    /// Removing `c0` from the finite complement list uncovers `uncovered`
    /// inside the target window.
    WindowEssential {
        #[serde(with = "int_str")]
        c0: Int,
        #[serde(with = "int_opt")]
        uncovered: Option<Int>,
        target: Window,
        #[serde(with = "int_vec")]
        complement_values: Vec<Int>,
        base_doc: String,
    },
}

impl Certificate {
    /// Short kebab-case identifier used in reports.
    pub fn kind(&self) -> &'static str {
        match self {
            Certificate::Essentiality { .. } => "essentiality",
            Certificate::FullCoverage { .. } => "full-coverage",
            Certificate::UncoveredPoint { .. } => "uncovered-point",
            Certificate::GapDivergence { .. } => "gap-divergence",
            Certificate::GapEventuallyBounded { .. } => "gap-eventually-bounded",
            Certificate::TailGapEventuallyBounded { .. } => "tail-gap-eventually-bounded",
            Certificate::WitnessSequence { .. } => "witness-sequence",
            Certificate::WitnessViolation { .. } => "witness-violation",
            Certificate::ModularSufficiency { .. } => "modular-sufficiency",
            Certificate::ModularInfeasible { .. } => "modular-infeasible",
            Certificate::ProgressionTail { .. } => "progression-tail",
            Certificate::AbsorberRewitness { .. } => "absorber-rewitness",
            Certificate::Removability { .. } => "removability",
            Certificate::FiniteBase { .. } => "finite-base",
            Certificate::UnboundedBothSides { .. } => "unbounded-both-sides",
            Certificate::EmptyBase { .. } => "empty-base",
            Certificate::WindowEssential { .. } => "window-essential",
        }
    }
}
