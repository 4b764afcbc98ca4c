//! Generator-backed power-interval families.
//!
//! A family denotes `extra ∪ ⋃_{k ≥ k0} [lowCoeff·pᵏ + lowOffset,
//! highCoeff·pᵏ + highOffset]`, the upper endpoint included iff the family is
//! high-closed. Blocks must be eventually nonempty and eventually pairwise
//! disjoint; both conditions are decided symbolically from the leading
//! coefficients of the width and inter-block gap forms, which are linear in
//! `pᵏ`.

use crate::{Error, Int, Result};
use num_traits::{One, Signed, Zero};

const REGULARITY_SCAN_LIMIT: u32 = 10_000;
const PREFIX_BUDGET: usize = 200_000;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PowerIntervalFamily {
    pub base: Int,
    pub low_coeff: Int,
    pub low_offset: Int,
    pub high_coeff: Int,
    pub high_offset: Int,
    pub k0: u32,
    pub high_closed: bool,
    pub extra_finite: Vec<Int>,
}

/// Positive complement of a family: either a finite remainder or another
/// family whose blocks sit in the gaps of the original.
pub enum FamilyComplement {
    Finite(Vec<Int>),
    Family(PowerIntervalFamily),
}

impl PowerIntervalFamily {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        base: impl Into<Int>,
        low_coeff: impl Into<Int>,
        low_offset: impl Into<Int>,
        high_coeff: impl Into<Int>,
        high_offset: impl Into<Int>,
        k0: u32,
        high_closed: bool,
        extra_finite: Vec<Int>,
    ) -> Result<Self> {
        let mut extra = extra_finite;
        extra.sort();
        extra.dedup();
        let f = PowerIntervalFamily {
            base: base.into(),
            low_coeff: low_coeff.into(),
            low_offset: low_offset.into(),
            high_coeff: high_coeff.into(),
            high_offset: high_offset.into(),
            k0,
            high_closed,
            extra_finite: extra,
        };
        f.validate()?;
        Ok(f)
    }

    fn open_adj(&self) -> Int {
        if self.high_closed {
            Int::zero()
        } else {
            Int::one()
        }
    }

    /// Leading coefficient of the block-width form `last(k) − low(k)`.
    pub fn width_lead(&self) -> Int {
        &self.high_coeff - &self.low_coeff
    }

    /// Constant term of the block-width form.
    pub fn width_const(&self) -> Int {
        &self.high_offset - &self.low_offset - self.open_adj()
    }

    /// Leading coefficient of the inter-block gap form `low(k+1) − last(k)`,
    /// a linear form in `pᵏ`.
    pub fn gap_lead(&self) -> Int {
        &self.low_coeff * &self.base - &self.high_coeff
    }

    /// Constant term of the inter-block gap form.
    pub fn gap_const(&self) -> Int {
        &self.low_offset - &self.high_offset + self.open_adj()
    }

    pub fn validate(&self) -> Result<()> {
        if self.base < Int::from(2) {
            return Err(Error::Invalid(format!(
                "power family base must be ≥ 2, got {}",
                self.base
            )));
        }
        if self.low_coeff < Int::one() {
            return Err(Error::Invalid(
                "power family blocks must advance: lowCoeff must be ≥ 1".into(),
            ));
        }
        if self.extra_finite.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Invalid(
                "extraFinite must be sorted and duplicate-free".into(),
            ));
        }
        // eventually nonempty blocks
        let wl = self.width_lead();
        if wl.is_negative() || (wl.is_zero() && self.width_const().is_negative()) {
            return Err(Error::Invalid(
                "power family blocks are eventually empty (width form eventually negative)".into(),
            ));
        }
        // eventually disjoint, ordered blocks
        let gl = self.gap_lead();
        if gl.is_negative() || (gl.is_zero() && self.gap_const() < Int::one()) {
            return Err(Error::Invalid(
                "power family blocks eventually overlap (gap form eventually < 1)".into(),
            ));
        }
        Ok(())
    }

    pub fn pow(&self, k: u32) -> Int {
        self.base.pow(k)
    }

    pub fn low(&self, k: u32) -> Int {
        &self.low_coeff * self.pow(k) + &self.low_offset
    }

    pub fn high(&self, k: u32) -> Int {
        &self.high_coeff * self.pow(k) + &self.high_offset
    }

    /// Largest element of block `k` (one below `high` for open families).
    pub fn last(&self, k: u32) -> Int {
        self.high(k) - self.open_adj()
    }

    pub fn width(&self, k: u32) -> Int {
        self.last(k) - self.low(k)
    }

    /// `low(k+1) − last(k)`: the gap form evaluated at `k`.
    pub fn gap_after(&self, k: u32) -> Int {
        self.gap_lead() * self.pow(k) + self.gap_const()
    }

    /// First exponent from which every block is nonempty, strictly separated
    /// from its successor, and above both 0 and all extra points.
    pub fn regular_from(&self) -> Result<u32> {
        let zero = Int::zero();
        let one = Int::one();
        let extra_hi = self.extra_finite.last().cloned().unwrap_or_else(Int::zero);
        let floor = if extra_hi > zero { extra_hi } else { zero };
        let mut k = self.k0;
        loop {
            if self.width(k) >= Int::zero() && self.gap_after(k) >= one && self.low(k) > floor {
                return Ok(k);
            }
            k += 1;
            if k - self.k0 > REGULARITY_SCAN_LIMIT {
                return Err(Error::Invalid(
                    "power family never reaches its regular regime".into(),
                ));
            }
        }
    }

    pub fn member(&self, n: &Int) -> bool {
        if self.extra_finite.binary_search(n).is_ok() {
            return true;
        }
        let mut k = self.k0;
        let mut low = self.low(k);
        while &low <= n {
            if self.width(k) >= Int::zero() && *n <= self.last(k) {
                return true;
            }
            k += 1;
            low = self.low(k);
        }
        false
    }

    /// Maximal merged intervals of the family intersected with `[lo, hi]`.
    pub fn pieces(&self, lo: &Int, hi: &Int) -> Vec<(Int, Int)> {
        let mut raw: Vec<(Int, Int)> = Vec::new();
        for x in &self.extra_finite {
            if x >= lo && x <= hi {
                raw.push((x.clone(), x.clone()));
            }
        }
        let mut k = self.k0;
        let mut low = self.low(k);
        while &low <= hi {
            if self.width(k) >= Int::zero() {
                let last = self.last(k);
                if &last >= lo {
                    let a = if &low > lo { low.clone() } else { lo.clone() };
                    let b = if &last < hi { last } else { hi.clone() };
                    raw.push((a, b));
                }
            }
            k += 1;
            low = self.low(k);
        }
        raw.sort();
        let mut merged: Vec<(Int, Int)> = Vec::new();
        for (a, b) in raw {
            match merged.last_mut() {
                Some((_, e)) if a <= &*e + 1 => {
                    if b > *e {
                        *e = b;
                    }
                }
                _ => merged.push((a, b)),
            }
        }
        merged
    }

    pub fn min_element(&self) -> Result<Int> {
        let mut k = self.k0;
        let first_block_low = loop {
            if self.width(k) >= Int::zero() {
                break self.low(k);
            }
            k += 1;
            if k - self.k0 > REGULARITY_SCAN_LIMIT {
                return Err(Error::Invalid("power family has no nonempty block".into()));
            }
        };
        Ok(match self.extra_finite.first() {
            Some(x) if x < &first_block_low => x.clone(),
            _ => first_block_low,
        })
    }

    /// `ℤ⁺ ∖ self`, computed exactly. The finite remainder below the regular
    /// regime becomes either the whole answer (when blocks eventually tile)
    /// or the extra part of the gap family.
    pub fn complement_positive(&self) -> Result<FamilyComplement> {
        let kstar = self.regular_from()?;
        let first_low = self.low(kstar);
        // prefix: [1, low(k*) − 1] ∖ self
        let prefix_hi = &first_low - 1;
        let mut prefix: Vec<Int> = Vec::new();
        if prefix_hi >= Int::one() {
            let span = &prefix_hi - Int::one();
            if span >= Int::from(PREFIX_BUDGET as u64) {
                return Err(Error::Budget {
                    what: "materializing the positive-complement prefix of a power family".into(),
                    limit: PREFIX_BUDGET as u64,
                });
            }
            let covered = self.pieces(&Int::one(), &prefix_hi);
            let mut cursor = Int::one();
            for (a, b) in covered {
                let mut x = cursor.clone();
                while x < a {
                    prefix.push(x.clone());
                    x += 1;
                }
                cursor = &b + 1;
            }
            let mut x = cursor;
            while x <= prefix_hi {
                prefix.push(x.clone());
                x += 1;
            }
        }
        // complement blocks are [last(k)+1, low(k+1)−1]; empty forever iff the
        // original blocks tile exactly
        if self.gap_lead().is_zero() && self.gap_const().is_one() {
            return Ok(FamilyComplement::Finite(prefix));
        }
        let closed_adj = if self.high_closed {
            Int::one()
        } else {
            Int::zero()
        };
        let comp = PowerIntervalFamily::new(
            self.base.clone(),
            self.high_coeff.clone(),
            &self.high_offset + closed_adj,
            &self.low_coeff * &self.base,
            &self.low_offset - 1,
            kstar,
            true,
            prefix,
        )?;
        Ok(FamilyComplement::Family(comp))
    }

    pub fn shifted(&self, by: &Int) -> Self {
        PowerIntervalFamily {
            base: self.base.clone(),
            low_coeff: self.low_coeff.clone(),
            low_offset: &self.low_offset + by,
            high_coeff: self.high_coeff.clone(),
            high_offset: &self.high_offset + by,
            k0: self.k0,
            high_closed: self.high_closed,
            extra_finite: self.extra_finite.iter().map(|x| x + by).collect(),
        }
    }

    /// Union with additional finite points folded into `extra_finite`.
    pub fn with_extra(&self, more: &[Int]) -> Self {
        let mut extra = self.extra_finite.clone();
        extra.extend_from_slice(more);
        extra.sort();
        extra.dedup();
        PowerIntervalFamily {
            extra_finite: extra,
            ..self.clone()
        }
    }
}

impl std::fmt::Display for PowerIntervalFamily {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let hi_bracket = if self.high_closed { "]" } else { ")" };
        if !self.extra_finite.is_empty() {
            write!(f, "{{")?;
            for (i, x) in self.extra_finite.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, "}} ∪ ")?;
        }
        write!(
            f,
            "⋃_{{k≥{}}} [{}·{}^k{:+}, {}·{}^k{:+}{}",
            self.k0,
            self.low_coeff,
            self.base,
            self.low_offset,
            self.high_coeff,
            self.base,
            self.high_offset,
            hi_bracket
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(n: i64) -> Int {
        Int::from(n)
    }

    /// `{1} ∪ ⋃_{k≥4} [2ᵏ+9, 2ᵏ⁺¹)`
    fn dyadic() -> PowerIntervalFamily {
        PowerIntervalFamily::new(2, 1, 9, 2, 0, 4, false, vec![int(1)]).unwrap()
    }

    #[test]
    fn dyadic_membership() {
        let f = dyadic();
        assert!(f.member(&int(1)));
        assert!(f.member(&int(25)));
        assert!(!f.member(&int(24)));
        assert!(f.member(&int(31)));
        assert!(!f.member(&int(32)));
        assert!(f.member(&int(41)));
    }

    #[test]
    fn dyadic_gap_form_is_constant_ten() {
        let f = dyadic();
        assert_eq!(f.gap_lead(), int(0));
        assert_eq!(f.gap_const(), int(10));
        assert_eq!(f.gap_after(7), int(10));
    }

    #[test]
    fn dyadic_complement_blocks() {
        let f = dyadic();
        match f.complement_positive().unwrap() {
            FamilyComplement::Family(c) => {
                // first regular complement block is [2⁵, 2⁵+8]
                assert_eq!(c.low(c.k0), int(32));
                assert_eq!(c.last(c.k0), int(40));
                assert_eq!(c.width_lead(), int(0));
                assert_eq!(c.width_const(), int(8));
                // prefix is [2, 24]
                assert_eq!(c.extra_finite.first().unwrap(), &int(2));
                assert_eq!(c.extra_finite.last().unwrap(), &int(24));
                assert_eq!(c.extra_finite.len(), 23);
            }
            FamilyComplement::Finite(_) => panic!("expected a family complement"),
        }
    }

    #[test]
    fn tiling_family_has_finite_complement() {
        // ⋃ [2ᵏ, 2ᵏ⁺¹−1] tiles [2, ∞)
        let f = PowerIntervalFamily::new(2, 1, 0, 2, -1, 1, true, vec![]).unwrap();
        match f.complement_positive().unwrap() {
            FamilyComplement::Finite(v) => assert_eq!(v, vec![int(1)]),
            FamilyComplement::Family(_) => panic!("expected finite complement"),
        }
    }

    #[test]
    fn overlapping_blocks_are_rejected() {
        assert!(PowerIntervalFamily::new(2, 1, 0, 3, 0, 0, true, vec![]).is_err());
    }
}
