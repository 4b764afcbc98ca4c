//! Independent re-checking of certificates.
//!
//! The verifier deliberately avoids the symbolic engines that produce
//! certificates: it re-derives every claim from the embedded set documents
//! using only membership tests, window enumeration and plain loops. Closed
//! forms are re-derived from raw family parameters, exhaustive modular
//! claims are replayed with naive triple loops, and coverage claims are
//! spot-checked on deterministic windows.

use crate::setalg::{parse_set_document, IntSetExpr, Window};
use crate::verdict::Certificate;
use crate::{Error, Int, Result};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Outcome of re-checking one certificate.
#[derive(Clone, Debug)]
pub struct VerifyOutcome {
    pub ok: bool,
    pub detail: String,
}

fn ok(detail: impl Into<String>) -> VerifyOutcome {
    VerifyOutcome {
        ok: true,
        detail: detail.into(),
    }
}

fn fail(detail: impl Into<String>) -> VerifyOutcome {
    VerifyOutcome {
        ok: false,
        detail: detail.into(),
    }
}

/// Re-checks a certificate independently of the code that produced it.
pub fn verify_certificate(cert: &Certificate) -> Result<VerifyOutcome> {
    match cert {
        Certificate::Essentiality {
            n,
            c0,
            w,
            search_window,
            complement_doc,
            base_doc,
        } => {
            let c = parse_set_document(complement_doc)?;
            let base = parse_set_document(base_doc)?;
            if n != &(c0 + w) {
                return Ok(fail(format!("{n} ≠ {c0} + {w}")));
            }
            if !c.member(c0) || !base.member(w) {
                return Ok(fail("representation members are not in their sets"));
            }
            for cand in c.enumerate(search_window)? {
                if &cand != c0 && base.member(&(n - &cand)) {
                    return Ok(fail(format!(
                        "alternative representation {n} = {cand} + {}",
                        n - &cand
                    )));
                }
            }
            Ok(ok(format!(
                "no alternative representation of {n} over {search_window}"
            )))
        }

        Certificate::FullCoverage {
            complement_doc,
            base_doc,
            modulus,
        } => {
            let c = parse_set_document(complement_doc)?;
            let base = parse_set_document(base_doc)?;
            // residue coverage, computed naively from window enumerations
            let m = modulus.clone().max(Int::one());
            let span: Int = &m * Int::from(4) + Int::from(60);
            let big = Window::new(-span.clone(), span.clone())?;
            let cs = c.enumerate(&big)?;
            let ws = base.enumerate(&big)?;
            let mut hit = vec![false; to_usize(&m)?];
            for x in &cs {
                for y in &ws {
                    hit[to_usize(&(x + y).mod_floor(&m))?] = true;
                }
            }
            if let Some(r) = hit.iter().position(|h| !h) {
                return Ok(fail(format!("residue {r} mod {m} never covered in sample")));
            }
            // spot coverage: try local elements of either operand against
            // global membership in the other
            for base_pt in [Int::zero(), Int::from(997), Int::from(-1234), Int::from(10_007)] {
                let probe = Window::new(&base_pt - 25, &base_pt + 25)?;
                let mut n = probe.lo.clone();
                while n <= probe.hi {
                    let covered = cs.iter().any(|x| base.member(&(&n - x)))
                        || ws.iter().any(|y| c.member(&(&n - y)));
                    if !covered {
                        return Ok(fail(format!("{n} not covered in spot check")));
                    }
                    n += 1;
                }
            }
            Ok(ok("residue coverage and spot windows check out"))
        }

        Certificate::UncoveredPoint {
            n,
            complement_doc,
            base_doc,
        } => {
            let c = parse_set_document(complement_doc)?;
            let base = parse_set_document(base_doc)?;
            let probe = Window::new(n - 2000, n + 2000)?;
            for cand in c.enumerate(&probe)? {
                if base.member(&(n - &cand)) {
                    return Ok(fail(format!("{n} = {cand} + {}", n - &cand)));
                }
            }
            Ok(ok(format!("no local representation of {n}")))
        }

        Certificate::GapDivergence {
            set_doc,
            lead,
            constant,
            base,
            k_from,
        } => {
            let set = parse_set_document(set_doc)?;
            let Some(f) = set.as_family() else {
                return Ok(fail("set is not family-tier"));
            };
            // re-derive the gap form from raw parameters
            let lead2 = &f.low_coeff * &f.base - &f.high_coeff;
            let const2 = &f.low_offset - &f.high_offset
                + if f.high_closed { Int::zero() } else { Int::one() };
            if &lead2 != lead || &const2 != constant || &f.base != base {
                return Ok(fail("gap form does not match the family parameters"));
            }
            if !lead2.is_positive() {
                return Ok(fail("lead coefficient is not positive"));
            }
            // sample gaps strictly increase and match the form
            let mut prev: Option<Int> = None;
            for k in *k_from..k_from + 8 {
                let gap = f.low(k + 1) - f.last(k);
                if gap != lead * f.pow(k) + constant {
                    return Ok(fail(format!("gap at k = {k} deviates from the form")));
                }
                if let Some(p) = prev {
                    if gap <= p {
                        return Ok(fail(format!("gap at k = {k} is not increasing")));
                    }
                }
                prev = Some(gap);
            }
            Ok(ok("gap form re-derived; sampled gaps strictly increase"))
        }

        Certificate::GapEventuallyBounded { set_doc, sup } => {
            verify_gap_bound(set_doc, sup, true)
        }
        Certificate::TailGapEventuallyBounded { set_doc, min } => {
            verify_gap_bound(set_doc, min, false)
        }

        Certificate::WitnessSequence {
            set_doc,
            complement_doc,
            base,
            k_from,
            gap_lead,
            gap_constant,
            count_value,
            bound_k,
        } => {
            let set = parse_set_document(set_doc)?;
            let comp_set = parse_set_document(complement_doc)?;
            let Some(comp) = comp_set.as_family() else {
                return Ok(fail("complement is not family-tier"));
            };
            if &comp.base != base {
                return Ok(fail("base mismatch"));
            }
            let lead2 = &comp.low_coeff * &comp.base - &comp.high_coeff;
            let wconst = &comp.high_offset
                - &comp.low_offset
                - if comp.high_closed { Int::zero() } else { Int::one() };
            let wlead = &comp.high_coeff - &comp.low_coeff;
            if &lead2 != gap_lead || !wlead.is_zero() || &wconst != count_value {
                return Ok(fail("closed forms do not match the complement family"));
            }
            if !gap_lead.is_positive() || bound_k < count_value {
                return Ok(fail("certificate conditions violated"));
            }
            let gc = &comp.low_offset - &comp.high_offset
                + if comp.high_closed { Int::zero() } else { Int::one() };
            if &gc != gap_constant {
                return Ok(fail("gap constant mismatch"));
            }
            // spot-check small witness intervals by brute enumeration
            for k in *k_from..(*k_from + 6) {
                let v = comp.last(k);
                let v_next = comp.last(k + 1);
                if set.member(&v) || v < Int::one() {
                    return Ok(fail(format!("witness {v} is not in the complement")));
                }
                if &v_next - &v > Int::from(100_000) {
                    break; // keep the brute-force window small
                }
                let mut count = Int::zero();
                let mut x = &v + 1;
                while x < v_next {
                    if x >= Int::one() && !set.member(&x) {
                        count += 1;
                    }
                    x += 1;
                }
                if &count != count_value {
                    return Ok(fail(format!(
                        "brute count {count} at k = {k} differs from {count_value}"
                    )));
                }
            }
            Ok(ok("closed forms re-derived; brute counts agree"))
        }

        Certificate::WitnessViolation {
            set_doc,
            hypothesis,
            bound_k,
            value,
            ..
        } => {
            let set = parse_set_document(set_doc)?;
            match hypothesis.as_str() {
                "membership" => match value {
                    Some(v) => {
                        if v < &Int::one() || set.member(v) {
                            Ok(ok(format!("{v} is indeed outside the positive complement")))
                        } else {
                            Ok(fail(format!("{v} is in the complement after all")))
                        }
                    }
                    None => Ok(fail("membership violation without a value")),
                },
                "count-bound" => {
                    let comp = crate::setalg::complement_positive(&set)?;
                    let Some(f) = comp.as_family() else {
                        return Ok(fail("complement is not family-tier"));
                    };
                    let wlead = &f.high_coeff - &f.low_coeff;
                    let wconst = &f.high_offset
                        - &f.low_offset
                        - if f.high_closed { Int::zero() } else { Int::one() };
                    let okay = wlead.is_positive()
                        || matches!(bound_k, Some(b) if &wconst > b);
                    if okay {
                        Ok(ok("counts indeed exceed the bound eventually"))
                    } else {
                        Ok(fail("count bound is actually satisfiable"))
                    }
                }
                "gap-divergence" => {
                    let comp = crate::setalg::complement_positive(&set)?;
                    let Some(f) = comp.as_family() else {
                        return Ok(fail("complement is not family-tier"));
                    };
                    let lead = &f.low_coeff * &f.base - &f.high_coeff;
                    if lead.is_positive() {
                        Ok(fail("gaps do diverge; violation claim is wrong"))
                    } else {
                        Ok(ok("gap form is indeed non-divergent"))
                    }
                }
                other => Ok(fail(format!("unknown hypothesis {other}"))),
            }
        }

        Certificate::ModularSufficiency {
            m,
            xm,
            y1_residues,
            c,
        } => {
            let m = to_usize(m)?;
            let xm = to_res_vec(xm, m)?;
            let y1 = to_res_vec(y1_residues, m)?;
            let c = to_res_vec(c, m)?;
            // condition (a)
            let mut covered = vec![false; m];
            let mut xy = xm.clone();
            xy.extend(y1.iter().copied());
            for &ci in &c {
                for &v in &xy {
                    covered[(ci + v) % m] = true;
                }
            }
            if covered.iter().any(|&b| !b) {
                return Ok(fail("coverage condition fails"));
            }
            // condition (b), sufficiency form
            for &ci in &c {
                let good = y1.iter().any(|&y| {
                    !c.iter().filter(|&&c2| c2 != ci).any(|&c2| {
                        xy.iter().any(|&x| (ci + y) % m == (c2 + x) % m)
                    })
                });
                if !good {
                    return Ok(fail(format!("exclusion condition fails at c = {ci}")));
                }
            }
            Ok(ok("both sufficiency conditions re-checked"))
        }

        Certificate::ModularInfeasible {
            m,
            xm,
            y1_residues,
            subsets_checked,
        } => {
            let mu = to_usize(m)?;
            if mu > 22 {
                return Ok(fail("period too large to replay exhaustively"));
            }
            let xm = to_res_vec(xm, mu)?;
            let y1 = to_res_vec(y1_residues, mu)?;
            if *subsets_checked != (1u64 << mu) - 1 {
                return Ok(fail("subset count mismatch"));
            }
            for mask in 1u64..(1u64 << mu) {
                let c: Vec<usize> = (0..mu).filter(|&r| mask & (1 << r) != 0).collect();
                let mut covered = vec![false; mu];
                let mut xy = xm.clone();
                xy.extend(y1.iter().copied());
                for &ci in &c {
                    for &v in &xy {
                        covered[(ci + v) % mu] = true;
                    }
                }
                let cond_a = covered.iter().all(|&b| b);
                let cond_b = c.iter().all(|&ci| {
                    y1.iter().any(|&y| {
                        !c.iter()
                            .any(|&c2| xm.iter().any(|&x| (ci + y) % mu == (c2 + x) % mu))
                    })
                });
                if cond_a && cond_b {
                    return Ok(fail(format!(
                        "subset {c:?} satisfies the necessary conditions"
                    )));
                }
            }
            Ok(ok("all subsets re-checked infeasible"))
        }

        Certificate::ProgressionTail { m, k, d, xm } => {
            if d.is_empty() {
                return Ok(fail("progression residue set is empty"));
            }
            if k < &Int::one() || m < &Int::one() {
                return Ok(fail("bad parameters"));
            }
            for r in d {
                if r < &Int::zero() || r >= m {
                    return Ok(fail(format!("residue {r} out of range")));
                }
                if xm.contains(r) {
                    return Ok(fail(format!("residue {r} collides with the periodic core")));
                }
            }
            Ok(ok("progression structure constraints hold"))
        }

        Certificate::AbsorberRewitness {
            k,
            set_docs,
            replays,
            ..
        } => {
            if k < &Int::one() {
                return Ok(fail("k must be ≥ 1"));
            }
            for (i, rep) in replays.iter().enumerate() {
                let Some(doc) = set_docs.get(rep.doc_index) else {
                    return Ok(fail(format!("replay {i} points at a missing set")));
                };
                let g_set = parse_set_document(doc)?;
                let exponent = &rep.n_prime + &rep.t + &rep.ell;
                if rep.t < Int::one()
                    || rep.ell.is_negative()
                    || rep.n_prime.is_negative()
                    || rep.alternative_g == rep.g
                    || !g_set.member(&rep.g)
                    || !g_set.member(&rep.alternative_g)
                    || rep.n != &rep.g + k * &rep.n_prime
                    || rep.n != &rep.alternative_g + k * &exponent
                {
                    return Ok(fail(format!("replay {i} does not re-verify")));
                }
            }
            Ok(ok(format!("{} replays re-verified", replays.len())))
        }

        Certificate::Removability {
            c0,
            complement_doc,
            base_doc,
            window,
        } => {
            let c = parse_set_document(complement_doc)?;
            let base = parse_set_document(base_doc)?;
            let pad = window.width() + 64;
            let scan = Window::new(&window.lo - &pad, &window.hi + &pad)?;
            let cands = c.enumerate(&scan)?;
            let mut n = window.lo.clone();
            while n <= window.hi {
                let with = cands.iter().any(|x| base.member(&(&n - x)));
                let without = cands
                    .iter()
                    .filter(|x| *x != c0)
                    .any(|x| base.member(&(&n - x)));
                if with != without {
                    return Ok(fail(format!("coverage of {n} changes when {c0} is removed")));
                }
                n += 1;
            }
            Ok(ok("coverage unchanged over the recorded window"))
        }

        Certificate::FiniteBase { count, set_doc } => {
            let set = parse_set_document(set_doc)?;
            match (set.min_extent(), set.max_extent()) {
                (
                    crate::setalg::ExprBound::Finite(lo),
                    crate::setalg::ExprBound::Finite(hi),
                ) => {
                    let n = set.enumerate(&Window::new(lo, hi)?)?.len();
                    if n == *count && n > 0 {
                        Ok(ok(format!("finite set of {n} elements")))
                    } else {
                        Ok(fail("element count mismatch"))
                    }
                }
                _ => Ok(fail("set is not finite")),
            }
        }

        Certificate::UnboundedBothSides { set_doc } => {
            let set = parse_set_document(set_doc)?;
            let ok_ext = set.min_extent() == crate::setalg::ExprBound::Unbounded
                && set.max_extent() == crate::setalg::ExprBound::Unbounded;
            if ok_ext {
                Ok(ok("extents re-checked unbounded"))
            } else {
                Ok(fail("set is bounded on a side"))
            }
        }

        Certificate::EmptyBase { set_doc } => {
            let set = parse_set_document(set_doc)?;
            if set.is_empty_set() {
                Ok(ok("set is empty"))
            } else {
                Ok(fail("set is nonempty"))
            }
        }

        Certificate::WindowEssential {
            c0,
            uncovered,
            target,
            complement_values,
            base_doc,
        } => {
            let base = parse_set_document(base_doc)?;
            let Some(n) = uncovered else {
                return Ok(fail("no uncovered witness recorded"));
            };
            if !target.contains(n) {
                return Ok(fail("witness lies outside the target"));
            }
            let covered_without = complement_values
                .iter()
                .filter(|c| *c != c0)
                .any(|c| base.member(&(n - c)));
            let covered_with = base.member(&(n - c0));
            if covered_with && !covered_without {
                Ok(ok(format!("{n} is covered only through {c0}")))
            } else {
                Ok(fail(format!("{n} is not uniquely covered by {c0}")))
            }
        }
    }
}

/// Measures gaps far beyond the transient region and checks consistency
/// with a claimed eventual bound: no gap above a claimed supremum, no gap
/// below a claimed tail minimum.
fn verify_gap_bound(set_doc: &str, bound: &Int, is_sup: bool) -> Result<VerifyOutcome> {
    let set = parse_set_document(set_doc)?;
    let lo = Int::from(100_000);
    let width: Int = (bound * Int::from(8)).max(Int::from(4_000));
    let window = Window::new(lo.clone(), &lo + width)?;
    let els = set.enumerate(&window)?;
    let gaps: Vec<Int> = els.windows(2).map(|p| &p[1] - &p[0]).collect();
    if gaps.is_empty() {
        return Ok(fail("too few elements in the measurement window"));
    }
    if is_sup {
        let max = gaps.iter().max().unwrap();
        if max > bound {
            Ok(fail(format!("measured gap {max} exceeds the claimed supremum {bound}")))
        } else {
            Ok(ok(format!("no gap above {bound} over {window}")))
        }
    } else {
        let min = gaps.iter().min().unwrap();
        if min < bound {
            Ok(fail(format!("measured gap {min} undercuts the claimed minimum {bound}")))
        } else {
            Ok(ok(format!("no gap below {bound} over {window}")))
        }
    }
}

fn to_usize(v: &Int) -> Result<usize> {
    num_traits::ToPrimitive::to_usize(v)
        .ok_or_else(|| Error::Precondition(format!("{v} does not fit in usize")))
}

fn to_res_vec(v: &[Int], m: usize) -> Result<Vec<usize>> {
    v.iter()
        .map(|x| {
            let u = to_usize(x)?;
            if u < m {
                Ok(u)
            } else {
                Err(Error::Precondition(format!("residue {x} out of range")))
            }
        })
        .collect()
}

/// Extracts every certificate embedded in a JSON report document.
pub fn certificates_in_report(value: &serde_json::Value) -> Vec<Certificate> {
    let mut out = Vec::new();
    collect_certs(value, &mut out);
    out
}

fn collect_certs(value: &serde_json::Value, out: &mut Vec<Certificate>) {
    match value {
        serde_json::Value::Object(map) => {
            if map.contains_key("type") {
                if let Ok(cert) = serde_json::from_value::<Certificate>(value.clone()) {
                    out.push(cert);
                    return;
                }
            }
            for v in map.values() {
                collect_certs(v, out);
            }
        }
        serde_json::Value::Array(items) => {
            for v in items {
                collect_certs(v, out);
            }
        }
        _ => {}
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complement::{essential, is_complement};
    use crate::setalg::ApComponent;
    use crate::verdict::Status;

    fn int(n: i64) -> Int {
        Int::from(n)
    }

    #[test]
    fn essentiality_certificates_re_verify() {
        let c: IntSetExpr = ApComponent::line(0, 10).into();
        let base: IntSetExpr =
            ApComponent::finite((0..=9).map(int).collect::<Vec<_>>()).into();
        let v = essential(&int(0), &c, &base, &Window::new(-50, 50).unwrap()).unwrap();
        assert_eq!(v.status, Status::CertifiedYes);
        let out = verify_certificate(&v.certificate.unwrap()).unwrap();
        assert!(out.ok, "{}", out.detail);
    }

    #[test]
    fn coverage_certificates_re_verify() {
        let v = is_complement(
            &ApComponent::down_ray(0, 1).into(),
            &ApComponent::up_ray(1, 1).into(),
            &Window::new(-5, 5).unwrap(),
        )
        .unwrap();
        let out = verify_certificate(&v.certificate.unwrap()).unwrap();
        assert!(out.ok, "{}", out.detail);
    }

    #[test]
    fn tampered_certificates_fail() {
        let c: IntSetExpr = ApComponent::line(0, 10).into();
        let base: IntSetExpr =
            ApComponent::finite((0..=9).map(int).collect::<Vec<_>>()).into();
        let v = essential(&int(0), &c, &base, &Window::new(-50, 50).unwrap()).unwrap();
        let Certificate::Essentiality {
            c0,
            w,
            search_window,
            complement_doc,
            base_doc,
            ..
        } = v.certificate.unwrap()
        else {
            panic!("expected essentiality certificate");
        };
        let tampered = Certificate::Essentiality {
            n: int(5),
            c0,
            w,
            search_window,
            complement_doc,
            base_doc,
        };
        let out = verify_certificate(&tampered).unwrap();
        assert!(!out.ok);
    }
}
