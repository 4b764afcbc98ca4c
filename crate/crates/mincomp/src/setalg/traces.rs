//! Residue-trace engine behind the exact tier.
//!
//! An exact set is analyzed per residue class modulo `M` (the lcm of all
//! component steps). Within one class the union of components collapses to at
//! most one down-ray, at most one up-ray and finitely many loose points, so
//! union, difference and complement reduce to a tiny interval algebra on each
//! class lattice. Converting back to components reduces the modulus to the
//! minimal eventual period per direction, which makes the output a true
//! normal form: two expressions denote the same set iff they normalize to the
//! same component list.

use super::component::{divisors_ascending, step_lcm, ApComponent};
use crate::{Error, Int, Result};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

/// Largest supported common modulus.
const MODULUS_LIMIT: u64 = 1 << 20;
/// Cap on points materialized by ray splitting and modulus reduction.
const MATERIALIZE_BUDGET: u64 = 200_000;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub(crate) struct ClassTrace {
    pub full: bool,
    pub up: Option<Int>,
    pub down: Option<Int>,
    pub pts: Vec<Int>,
}

impl ClassTrace {
    fn is_empty(&self) -> bool {
        !self.full && self.up.is_none() && self.down.is_none() && self.pts.is_empty()
    }

    fn member(&self, n: &Int) -> bool {
        if self.full {
            return true;
        }
        if let Some(u) = &self.up {
            if n >= u {
                return true;
            }
        }
        if let Some(d) = &self.down {
            if n <= d {
                return true;
            }
        }
        self.pts.binary_search(n).is_ok()
    }

    /// Restores the per-class invariants: points adjacent to a ray tip are
    /// absorbed, covered points dropped, and touching rays merged to full.
    fn canonize(&mut self, m: &Int) {
        if self.full {
            self.up = None;
            self.down = None;
            self.pts.clear();
            return;
        }
        self.pts.sort();
        self.pts.dedup();
        loop {
            let mut changed = false;
            if let Some(u) = self.up.clone() {
                let probe = &u - m;
                if let Ok(i) = self.pts.binary_search(&probe) {
                    self.pts.remove(i);
                    self.up = Some(probe);
                    changed = true;
                }
            }
            if let Some(d) = self.down.clone() {
                let probe = &d + m;
                if let Ok(i) = self.pts.binary_search(&probe) {
                    self.pts.remove(i);
                    self.down = Some(probe);
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        let up = self.up.clone();
        let down = self.down.clone();
        self.pts.retain(|p| {
            up.as_ref().map_or(true, |u| p < u) && down.as_ref().map_or(true, |d| p > d)
        });
        if let (Some(u), Some(d)) = (&self.up, &self.down) {
            if *u <= d + m {
                self.full = true;
                self.up = None;
                self.down = None;
                self.pts.clear();
            }
        }
    }

    /// Removes every element `≤ bound` (`bound` lies on this class lattice).
    fn cut_below(&mut self, bound: &Int, m: &Int) -> Result<()> {
        if self.full {
            self.full = false;
            self.up = Some(bound + m);
            self.down = None;
            self.pts.clear();
            return Ok(());
        }
        if let Some(d) = self.down.clone() {
            if &d <= bound {
                self.down = None;
            } else {
                // (bound, d] survives as points
                materialize(bound + m, d, m, &mut self.pts)?;
                self.down = None;
            }
        }
        if let Some(u) = self.up.clone() {
            if &u <= bound {
                self.up = Some(bound + m);
            }
        }
        self.pts.retain(|p| p > bound);
        Ok(())
    }

    fn cut_above(&mut self, bound: &Int, m: &Int) -> Result<()> {
        if self.full {
            self.full = false;
            self.down = Some(bound - m);
            self.up = None;
            self.pts.clear();
            return Ok(());
        }
        if let Some(u) = self.up.clone() {
            if &u >= bound {
                self.up = None;
            } else {
                materialize(u, bound - m, m, &mut self.pts)?;
                self.up = None;
            }
        }
        if let Some(d) = self.down.clone() {
            if &d >= bound {
                self.down = Some(bound - m);
            }
        }
        self.pts.retain(|p| p < bound);
        Ok(())
    }

    /// Removes the single element `p` (on this class lattice), splitting a
    /// ray when `p` sits inside one.
    fn remove_point(&mut self, p: &Int, m: &Int) -> Result<()> {
        if self.full {
            self.full = false;
            self.down = Some(p - m);
            self.up = Some(p + m);
            return Ok(());
        }
        if let Some(u) = self.up.clone() {
            if p >= &u {
                materialize(u, p - m, m, &mut self.pts)?;
                self.up = Some(p + m);
                return Ok(());
            }
        }
        if let Some(d) = self.down.clone() {
            if p <= &d {
                materialize(p + m, d, m, &mut self.pts)?;
                self.down = Some(p - m);
                return Ok(());
            }
        }
        if let Ok(i) = self.pts.binary_search(p) {
            self.pts.remove(i);
        }
        Ok(())
    }
}

fn materialize(from: Int, to: Int, step: &Int, out: &mut Vec<Int>) -> Result<()> {
    if from > to {
        return Ok(());
    }
    let count = ((&to - &from) / step).to_u64().unwrap_or(u64::MAX);
    if count >= MATERIALIZE_BUDGET {
        return Err(Error::Budget {
            what: "splitting a ray into points".into(),
            limit: MATERIALIZE_BUDGET,
        });
    }
    let mut x = from;
    while x <= to {
        out.push(x.clone());
        x += step;
    }
    Ok(())
}

#[derive(Clone, Debug)]
pub(crate) struct Traces {
    pub modulus: Int,
    pub classes: Vec<ClassTrace>,
}

impl Traces {
    fn with_modulus(m: Int) -> Result<Traces> {
        let mu = m.to_u64().filter(|&v| v >= 1 && v <= MODULUS_LIMIT);
        let Some(mu) = mu else {
            return Err(Error::Budget {
                what: format!("common modulus {m} of the component steps"),
                limit: MODULUS_LIMIT,
            });
        };
        Ok(Traces {
            modulus: m,
            classes: vec![ClassTrace::default(); mu as usize],
        })
    }

    fn class_count(&self) -> u64 {
        self.classes.len() as u64
    }

    fn class_of(&self, n: &Int) -> usize {
        n.mod_floor(&self.modulus).to_usize().expect("class index")
    }

    pub fn from_components(comps: &[ApComponent]) -> Result<Traces> {
        let m = step_lcm(comps);
        let mut t = Traces::with_modulus(m)?;
        for c in comps {
            t.add_component(c)?;
        }
        t.canonize();
        Ok(t)
    }

    fn add_component(&mut self, c: &ApComponent) -> Result<()> {
        let m = self.modulus.clone();
        match c {
            ApComponent::Finite(v) => {
                for x in v {
                    let i = self.class_of(x);
                    self.classes[i].pts.push(x.clone());
                }
            }
            ApComponent::Line { residue, step } => {
                let r0 = residue.mod_floor(step);
                let mut r = r0.clone();
                while r < m {
                    let i = r.to_usize().expect("line residue");
                    self.classes[i].full = true;
                    r += step;
                }
            }
            ApComponent::UpRay { start, step } => {
                // first ray element in each congruence class mod `m`
                let ratio = (&m / step).to_u64().expect("step ratio");
                let mut e = start.clone();
                for _ in 0..ratio {
                    let i = self.class_of(&e);
                    let cls = &mut self.classes[i];
                    match &cls.up {
                        Some(u) if u <= &e => {}
                        _ => cls.up = Some(e.clone()),
                    }
                    e += step;
                }
            }
            ApComponent::DownRay { start, step } => {
                let ratio = (&m / step).to_u64().expect("step ratio");
                let mut e = start.clone();
                for _ in 0..ratio {
                    let i = self.class_of(&e);
                    let cls = &mut self.classes[i];
                    match &cls.down {
                        Some(d) if d >= &e => {}
                        _ => cls.down = Some(e.clone()),
                    }
                    e -= step;
                }
            }
        }
        Ok(())
    }

    fn canonize(&mut self) {
        let m = self.modulus.clone();
        for cls in &mut self.classes {
            cls.canonize(&m);
        }
    }

    pub fn member(&self, n: &Int) -> bool {
        self.classes[self.class_of(n)].member(n)
    }

    pub fn is_empty(&self) -> bool {
        self.classes.iter().all(|c| c.is_empty())
    }

    pub fn is_all_integers(&self) -> bool {
        self.classes.iter().all(|c| c.full)
    }

    /// Re-expresses the same set at a multiple of the current modulus.
    fn lift(&self, to: &Int) -> Result<Traces> {
        if *to == self.modulus {
            return Ok(self.clone());
        }
        let mut out = Traces::with_modulus(to.clone())?;
        let m = &self.modulus;
        for (idx, target) in out.classes.iter_mut().enumerate() {
            let c = Int::from(idx as u64);
            let src = &self.classes[c.mod_floor(m).to_usize().expect("lift class")];
            target.full = src.full;
            if let Some(u) = &src.up {
                // least element ≡ c (mod to) that is ≥ u
                target.up = Some(u + (&c - u).mod_floor(to));
            }
            if let Some(d) = &src.down {
                target.down = Some(d - (d - &c).mod_floor(to));
            }
        }
        for cls in &self.classes {
            for p in &cls.pts {
                let i = out.class_of(p);
                out.classes[i].pts.push(p.clone());
            }
        }
        out.canonize();
        Ok(out)
    }

    fn common(&self, other: &Traces) -> Result<(Traces, Traces)> {
        let l = self.modulus.lcm(&other.modulus);
        Ok((self.lift(&l)?, other.lift(&l)?))
    }

    pub fn union(&self, other: &Traces) -> Result<Traces> {
        let (mut a, b) = self.common(other)?;
        let m = a.modulus.clone();
        for (ca, cb) in a.classes.iter_mut().zip(b.classes.iter()) {
            ca.full |= cb.full;
            ca.up = match (ca.up.take(), cb.up.clone()) {
                (Some(x), Some(y)) => Some(x.min(y)),
                (x, y) => x.or(y),
            };
            ca.down = match (ca.down.take(), cb.down.clone()) {
                (Some(x), Some(y)) => Some(x.max(y)),
                (x, y) => x.or(y),
            };
            ca.pts.extend(cb.pts.iter().cloned());
            ca.canonize(&m);
        }
        Ok(a)
    }

    /// Set difference `self ∖ other`.
    pub fn difference(&self, other: &Traces) -> Result<Traces> {
        let (mut a, b) = self.common(other)?;
        let m = a.modulus.clone();
        for (ca, cb) in a.classes.iter_mut().zip(b.classes.iter()) {
            if cb.full {
                *ca = ClassTrace::default();
                continue;
            }
            if let Some(d) = &cb.down {
                ca.cut_below(d, &m)?;
            }
            if let Some(u) = &cb.up {
                ca.cut_above(u, &m)?;
            }
            for p in &cb.pts {
                ca.remove_point(p, &m)?;
            }
            ca.canonize(&m);
        }
        Ok(a)
    }

    /// `ℤ⁺ ∖ self`.
    pub fn complement_in_positives(&self) -> Result<Traces> {
        let m = self.modulus.clone();
        let mut positives = Traces::with_modulus(m.clone())?;
        for (idx, cls) in positives.classes.iter_mut().enumerate() {
            let r = Int::from(idx as u64);
            cls.up = Some(if r.is_zero() { m.clone() } else { r });
        }
        positives.difference(self)
    }

    /// The member closest to zero (ties resolved toward the positive side).
    pub fn nearest_to_zero(&self) -> Option<Int> {
        let m = &self.modulus;
        let mut best: Option<Int> = None;
        let mut consider = |x: Int| match &best {
            Some(b) => {
                let (xa, ba) = (x.magnitude().clone(), b.magnitude().clone());
                if xa < ba || (xa == ba && x > *b) {
                    best = Some(x);
                }
            }
            None => best = Some(x),
        };
        for (idx, cls) in self.classes.iter().enumerate() {
            let r = Int::from(idx as u64);
            let below = &r - m; // class element in [−m, −1] (or −m when r = 0)
            if cls.full {
                consider(r.clone());
                consider(below.clone());
                continue;
            }
            if let Some(u) = &cls.up {
                if u > &r {
                    consider(u.clone());
                } else if u > &below {
                    consider(r.clone());
                } else {
                    consider(r.clone());
                    consider(below.clone());
                }
            }
            if let Some(d) = &cls.down {
                if d < &below {
                    consider(d.clone());
                } else if d < &r {
                    consider(below.clone());
                } else {
                    consider(r.clone());
                    consider(below.clone());
                }
            }
            for p in &cls.pts {
                consider(p.clone());
            }
        }
        best
    }

    /// Converts back to components, reducing each structural part to its
    /// minimal period and tightening every ray start. The result is a normal
    /// form: set equality coincides with component-list equality.
    pub fn to_components(&self) -> Result<Vec<ApComponent>> {
        let m = &self.modulus;
        let mu = self.class_count();

        let full: Vec<u64> = (0..mu)
            .filter(|&r| self.classes[r as usize].full)
            .collect();
        let ups: Vec<u64> = (0..mu)
            .filter(|&r| self.classes[r as usize].up.is_some())
            .collect();
        let downs: Vec<u64> = (0..mu)
            .filter(|&r| self.classes[r as usize].down.is_some())
            .collect();

        let mut loose: Vec<Int> = self
            .classes
            .iter()
            .flat_map(|c| c.pts.iter().cloned())
            .collect();

        let mut lines = Vec::new();
        if !full.is_empty() {
            let period = minimal_period(&full, mu);
            let mut residues: Vec<u64> = full.iter().map(|r| r % period).collect();
            residues.sort_unstable();
            residues.dedup();
            for r in residues {
                lines.push(ApComponent::Line {
                    residue: Int::from(r),
                    step: Int::from(period),
                });
            }
        }

        let mut up_rays = Vec::new();
        if !ups.is_empty() {
            let period = minimal_period(&ups, mu);
            let pint = Int::from(period);
            let mut reps: Vec<u64> = ups.iter().map(|r| r % period).collect();
            reps.sort_unstable();
            reps.dedup();
            for rep in reps {
                let lifts: Vec<u64> = ups.iter().copied().filter(|r| r % period == rep).collect();
                let mut candidate = lifts
                    .iter()
                    .map(|&r| self.classes[r as usize].up.clone().unwrap())
                    .max()
                    .unwrap();
                let mut steps = 0u64;
                loop {
                    let probe = &candidate - &pint;
                    if !self.member(&probe) {
                        break;
                    }
                    candidate = probe;
                    steps += 1;
                    if steps > MATERIALIZE_BUDGET {
                        return Err(Error::Budget {
                            what: "tightening a reduced ray start".into(),
                            limit: MATERIALIZE_BUDGET,
                        });
                    }
                }
                // lift-class ray elements below the reduced start stay finite
                for &r in &lifts {
                    let start = self.classes[r as usize].up.clone().unwrap();
                    if start < candidate {
                        // largest element ≡ r (mod m) strictly below the start
                        let mut top: Int = &candidate - Int::one();
                        let over = (&top - Int::from(r)).mod_floor(m);
                        top -= over;
                        materialize(start, top, m, &mut loose)?;
                    }
                }
                up_rays.push(ApComponent::UpRay {
                    start: candidate,
                    step: pint.clone(),
                });
            }
        }

        let mut down_rays = Vec::new();
        if !downs.is_empty() {
            let period = minimal_period(&downs, mu);
            let pint = Int::from(period);
            let mut reps: Vec<u64> = downs.iter().map(|r| r % period).collect();
            reps.sort_unstable();
            reps.dedup();
            for rep in reps {
                let lifts: Vec<u64> = downs
                    .iter()
                    .copied()
                    .filter(|r| r % period == rep)
                    .collect();
                let mut candidate = lifts
                    .iter()
                    .map(|&r| self.classes[r as usize].down.clone().unwrap())
                    .min()
                    .unwrap();
                let mut steps = 0u64;
                loop {
                    let probe = &candidate + &pint;
                    if !self.member(&probe) {
                        break;
                    }
                    candidate = probe;
                    steps += 1;
                    if steps > MATERIALIZE_BUDGET {
                        return Err(Error::Budget {
                            what: "tightening a reduced ray end".into(),
                            limit: MATERIALIZE_BUDGET,
                        });
                    }
                }
                for &r in &lifts {
                    let end = self.classes[r as usize].down.clone().unwrap();
                    if end > candidate {
                        // smallest element ≡ r (mod m) strictly above the end
                        let mut bottom: Int = &candidate + Int::one();
                        let over = (Int::from(r) - &bottom).mod_floor(m);
                        bottom += over;
                        materialize(bottom, end, m, &mut loose)?;
                    }
                }
                down_rays.push(ApComponent::DownRay {
                    start: candidate,
                    step: pint.clone(),
                });
            }
        }

        // assemble: drop loose points covered by the reduced structure
        let structural: Vec<ApComponent> = lines
            .iter()
            .chain(up_rays.iter())
            .chain(down_rays.iter())
            .cloned()
            .collect();
        loose.sort();
        loose.dedup();
        loose.retain(|p| !structural.iter().any(|c| c.member(p)));

        let mut out = Vec::new();
        if !loose.is_empty() {
            out.push(ApComponent::Finite(loose));
        }
        out.extend(lines);
        up_rays.sort_by(|a, b| ray_start(a).cmp(ray_start(b)));
        out.extend(up_rays);
        down_rays.sort_by(|a, b| ray_start(a).cmp(ray_start(b)));
        out.extend(down_rays);
        Ok(out)
    }
}

fn ray_start(c: &ApComponent) -> &Int {
    match c {
        ApComponent::UpRay { start, .. } | ApComponent::DownRay { start, .. } => start,
        _ => unreachable!("ray expected"),
    }
}

/// Minimal divisor `d` of `m` such that the residue set is invariant under
/// adding `d` (mod `m`). Any period of the set reduces to such a divisor.
fn minimal_period(residues: &[u64], m: u64) -> u64 {
    let set: std::collections::HashSet<u64> = residues.iter().copied().collect();
    for d in divisors_ascending(m) {
        if residues.iter().all(|&r| set.contains(&((r + d) % m))) {
            return d;
        }
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(n: i64) -> Int {
        Int::from(n)
    }

    fn traces(comps: &[ApComponent]) -> Traces {
        Traces::from_components(comps).unwrap()
    }

    #[test]
    fn interleaved_rays_reduce_to_step_one() {
        let t = traces(&[ApComponent::up_ray(0, 2), ApComponent::up_ray(1, 2)]);
        let c = t.to_components().unwrap();
        assert_eq!(c, vec![ApComponent::up_ray(0, 1)]);
    }

    #[test]
    fn contained_ray_is_absorbed() {
        let t = traces(&[ApComponent::up_ray(0, 2), ApComponent::up_ray(0, 4)]);
        let c = t.to_components().unwrap();
        assert_eq!(c, vec![ApComponent::up_ray(0, 2)]);
    }

    #[test]
    fn up_and_down_merge_to_line() {
        let t = traces(&[ApComponent::up_ray(0, 3), ApComponent::down_ray(0, 3)]);
        let c = t.to_components().unwrap();
        assert_eq!(c, vec![ApComponent::line(0, 3)]);
    }

    #[test]
    fn point_removed_from_line_splits() {
        let line = traces(&[ApComponent::line(0, 3)]);
        let pt = traces(&[ApComponent::finite([0])]);
        let c = line.difference(&pt).unwrap().to_components().unwrap();
        assert_eq!(
            c,
            vec![ApComponent::up_ray(3, 3), ApComponent::down_ray(-3, 3)]
        );
    }

    #[test]
    fn point_removed_from_ray_splits() {
        let ray = traces(&[ApComponent::up_ray(5, 5)]);
        let pt = traces(&[ApComponent::finite([10])]);
        let c = ray.difference(&pt).unwrap().to_components().unwrap();
        assert_eq!(
            c,
            vec![
                ApComponent::finite([5]),
                ApComponent::up_ray(15, 5) //
            ]
        );
    }

    #[test]
    fn mixed_step_rays_keep_leftover_points() {
        // {0,4,8,…} ∪ {6,10,…} = {0,4} ∪ {evens ≥ 6}... reduced at period 2
        let t = traces(&[ApComponent::up_ray(0, 4), ApComponent::up_ray(6, 4)]);
        let c = t.to_components().unwrap();
        assert_eq!(
            c,
            vec![ApComponent::finite([0]), ApComponent::up_ray(4, 2)]
        );
    }

    #[test]
    fn complement_of_evens_in_positives() {
        let t = traces(&[ApComponent::up_ray(2, 2)]);
        let c = t
            .complement_in_positives()
            .unwrap()
            .to_components()
            .unwrap();
        assert_eq!(c, vec![ApComponent::up_ray(1, 2)]);
    }

    #[test]
    fn full_line_and_partial_ray_stay_separate() {
        let t = traces(&[
            ApComponent::up_ray(0, 1),
            ApComponent::down_ray(-2, 2), //
        ]);
        let c = t.to_components().unwrap();
        assert_eq!(
            c,
            vec![ApComponent::line(0, 2), ApComponent::up_ray(1, 2)]
        );
    }

    #[test]
    fn nearest_to_zero_prefers_positive() {
        let t = traces(&[ApComponent::finite([-3, 3, 7])]);
        assert_eq!(t.nearest_to_zero(), Some(int(3)));
        let t = traces(&[ApComponent::up_ray(4, 2)]);
        assert_eq!(t.nearest_to_zero(), Some(int(4)));
        let t = traces(&[ApComponent::line(0, 5)]);
        assert_eq!(t.nearest_to_zero(), Some(int(0)));
    }
}
