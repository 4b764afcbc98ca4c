//! Independent brute-force oracles for the integration suites.
//!
//! Everything here re-derives set semantics directly from the component
//! definitions, without touching the symbolic engines under test.

#![allow(dead_code)]

use mincomp::setalg::{ApComponent, IntSetExpr, Part, Window};
use mincomp::Int;
use num_integer::Integer;
use num_traits::{Signed, Zero};

/// Membership from first principles.
pub fn brute_member(e: &IntSetExpr, n: &Int) -> bool {
    e.parts().iter().any(|p| match p {
        Part::Ap(ApComponent::Finite(v)) => v.contains(n),
        Part::Ap(ApComponent::UpRay { start, step }) => {
            n >= start && (n - start).mod_floor(step).is_zero()
        }
        Part::Ap(ApComponent::DownRay { start, step }) => {
            n <= start && (start - n).mod_floor(step).is_zero()
        }
        Part::Ap(ApComponent::Line { residue, step }) => {
            (n - residue).mod_floor(step).is_zero()
        }
        Part::Power(f) => {
            if f.extra_finite.contains(n) {
                return true;
            }
            let mut k = f.k0;
            loop {
                let low = &f.low_coeff * f.base.pow(k) + &f.low_offset;
                if &low > n {
                    return false;
                }
                let high = &f.high_coeff * f.base.pow(k) + &f.high_offset;
                let last = if f.high_closed { high } else { high - 1 };
                if last >= low && n >= &low && n <= &last {
                    return true;
                }
                k += 1;
            }
        }
        Part::Complement { inner, shift } => {
            let y = n - shift;
            y.is_positive() && !brute_member(inner, &y)
        }
    })
}

/// Window scan built on [`brute_member`].
pub fn brute_enumerate(e: &IntSetExpr, lo: i64, hi: i64) -> Vec<Int> {
    (lo..=hi)
        .map(Int::from)
        .filter(|n| brute_member(e, n))
        .collect()
}

/// Pairwise sums of padded enumerations, clipped to the window.
pub fn brute_sumset(a: &IntSetExpr, b: &IntSetExpr, w: &Window, pad: i64) -> Vec<Int> {
    let lo = int_i64(&w.lo) - pad;
    let hi = int_i64(&w.hi) + pad;
    let xs = brute_enumerate(a, lo, hi);
    let ys = brute_enumerate(b, lo, hi);
    let mut out: Vec<Int> = Vec::new();
    for x in &xs {
        for y in &ys {
            let s = x + y;
            if w.contains(&s) {
                out.push(s);
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

pub fn int_i64(v: &Int) -> i64 {
    num_traits::ToPrimitive::to_i64(v).expect("fits in i64")
}

pub fn ints(v: &[i64]) -> Vec<Int> {
    v.iter().map(|&x| Int::from(x)).collect()
}

pub fn win(lo: i64, hi: i64) -> Window {
    Window::new(lo, hi).unwrap()
}

/// Coverage multiplicities of `target` under `c + w`, used to decide
/// removability of many elements at once.
pub fn cover_counts(c: &[Int], w: &IntSetExpr, target: &Window) -> Vec<u32> {
    let width = num_traits::ToPrimitive::to_usize(&target.width()).expect("window fits");
    let mut counts = vec![0u32; width];
    for ci in c {
        let wnd = Window {
            lo: &target.lo - ci,
            hi: &target.hi - ci,
        };
        for y in w.enumerate(&wnd).unwrap() {
            let idx = num_traits::ToPrimitive::to_usize(&(ci + &y - &target.lo)).unwrap();
            counts[idx] += 1;
        }
    }
    counts
}

/// Contribution points of one element inside the target.
pub fn contribution(c0: &Int, w: &IntSetExpr, target: &Window) -> Vec<usize> {
    let wnd = Window {
        lo: &target.lo - c0,
        hi: &target.hi - c0,
    };
    w.enumerate(&wnd)
        .unwrap()
        .into_iter()
        .map(|y| num_traits::ToPrimitive::to_usize(&(c0 + &y - &target.lo)).unwrap())
        .collect()
}
