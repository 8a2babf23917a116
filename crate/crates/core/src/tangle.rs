//! Tangling-edge slides on regular trees and bi-labelled line bijections.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_rational::Ratio;

use crate::error::{Error, Result};

fn check_domain(r: u32, x1: u64, y2: u64) -> Result<()> {
    if r < 3 {
        return Err(Error::Domain("r must be at least 3"));
    }
    if y2 < 1 {
        return Err(Error::Domain("y2 must be at least 1"));
    }
    if x1 < y2 {
        return Err(Error::Domain("x1 must be at least y2"));
    }
    Ok(())
}

/// Least `d` with `(r - 1)^d * y2 >= x1`.
pub fn slide_bound(r: u32, x1: u64, y2: u64) -> Result<u32> {
    check_domain(r, x1, y2)?;
    let mut d = 0;
    let mut reach = y2 as u128;
    while reach < x1 as u128 {
        reach *= (r - 1) as u128;
        d += 1;
    }
    Ok(d)
}

/// Tangling edges that started at `origin_level` and ended at `final_level`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct SlideRecord {
    pub origin_level: u32,
    pub final_level: u32,
    pub count: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LevelStats {
    pub level: u32,
    pub vertices: u64,
    /// Edges kept at vertices of this level.
    pub kept: u64,
    /// Edges passed on to the next level.
    pub passed: u64,
    /// Largest slide among edges kept here.
    pub max_slide: u32,
    /// Over all vertices of the level: least slide of a kept edge minus the
    /// largest slide of a passed edge. `None` when nothing is passed.
    pub rule_margin: Option<i64>,
    /// Every vertex keeps exactly `y2` edges. Always true for the root and
    /// the last level.
    pub saturated: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SlideTrace {
    pub r: u32,
    pub x1: u64,
    pub y2: u64,
    pub depth: u32,
    pub bound: u32,
    pub max_slide: u32,
    pub records: Vec<SlideRecord>,
    pub levels: Vec<LevelStats>,
}

/// Runs the slide algorithm on one rooted `(r - 1)`-ary tree of the given
/// depth in which every non-root vertex starts with `x1` tangling edges and
/// should end with `y2`. The root starts with none. Each vertex keeps the `y2` edges slid furthest and deals
/// the rest, furthest first, round-robin to its children. Vertices on the
/// last level keep everything they receive.
pub fn simulate_slides(r: u32, x1: u64, y2: u64, depth: u32) -> Result<SlideTrace> {
    let bound = slide_bound(r, x1, y2)?;
    if depth < bound + 2 {
        return Err(Error::Domain("depth must be at least slide_bound + 2"));
    }
    let fan = (r - 1) as usize;
    let y2u = usize::try_from(y2).map_err(|_| Error::Domain("y2 too large"))?;
    let own = usize::try_from(x1).map_err(|_| Error::Domain("x1 too large"))?;

    // received origin levels (ascending) -> number of vertices in that state
    let mut states: BTreeMap<Vec<u32>, u64> = BTreeMap::new();
    states.insert(Vec::new(), 1);
    let mut records: BTreeMap<(u32, u32), u64> = BTreeMap::new();
    let mut levels = Vec::with_capacity(depth as usize + 1);

    for level in 0..=depth {
        let leaf = level == depth;
        let mut next: BTreeMap<Vec<u32>, u64> = BTreeMap::new();
        let mut stats = LevelStats {
            level,
            vertices: 0,
            kept: 0,
            passed: 0,
            max_slide: 0,
            rule_margin: None,
            saturated: true,
        };
        for (received, &mult) in &states {
            let mut pool = received.clone();
            let own = if level == 0 { 0 } else { own };
            pool.extend(core::iter::repeat_n(level, own));
            // ascending origin = descending slide
            let keep = if leaf { pool.len() } else { y2u.min(pool.len()) };
            let (kept, surplus) = pool.split_at(keep);
            stats.vertices += mult;
            stats.kept += kept.len() as u64 * mult;
            stats.passed += surplus.len() as u64 * mult;
            stats.saturated &= kept.len() == y2u || leaf || level == 0;
            for &o in kept {
                *records.entry((o, level)).or_insert(0) += mult;
                stats.max_slide = stats.max_slide.max(level - o);
            }
            if let (Some(&least_kept), Some(&most_passed)) = (kept.last(), surplus.first()) {
                let margin = (level - least_kept) as i64 - (level - most_passed) as i64;
                stats.rule_margin = Some(stats.rule_margin.map_or(margin, |m| m.min(margin)));
            }
            if leaf {
                continue;
            }
            let mut children: Vec<Vec<u32>> = (0..fan).map(|_| Vec::new()).collect();
            for (i, &o) in surplus.iter().enumerate() {
                children[i % fan].push(o);
            }
            for child in children {
                let slot = next.entry(child).or_insert(0);
                *slot = slot
                    .checked_add(mult)
                    .ok_or(Error::Domain("tree too large"))?;
            }
        }
        levels.push(stats);
        states = next;
    }

    let records: Vec<SlideRecord> = records
        .into_iter()
        .map(|((origin_level, final_level), count)| SlideRecord {
            origin_level,
            final_level,
            count,
        })
        .collect();
    let max_slide = records
        .iter()
        .map(|r| r.final_level - r.origin_level)
        .max()
        .unwrap_or(0);
    Ok(SlideTrace {
        r,
        x1,
        y2,
        depth,
        bound,
        max_slide,
        records,
        levels,
    })
}

/// Position of the `j`-th tangling edge at `z` on a line with `2m + n`
/// edges per vertex.
pub fn line_bijection(m: u64, n: u64, z: i64, j: u64) -> Result<i64> {
    let w = 2 * m + n;
    if j >= w {
        return Err(Error::Domain("j must be below 2m + n"));
    }
    let (w, j) = (w as i64, j as i64);
    Ok(if z >= 0 { z * w + j } else { (z + 1) * w - j - 1 })
}

/// `(2 m1 + n1) / (2 m2 + n2)`, reduced.
pub fn scaling_factor(m1: u64, n1: u64, m2: u64, n2: u64) -> Result<Ratio<u64>> {
    let den = 2 * m2 + n2;
    if den == 0 {
        return Err(Error::Domain("2 m2 + n2 must be positive"));
    }
    Ok(Ratio::new(2 * m1 + n1, den))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bounds() {
        assert_eq!(slide_bound(3, 8, 1), Ok(3));
        assert_eq!(slide_bound(4, 5, 5), Ok(0));
        assert_eq!(slide_bound(5, 100, 3), Ok(3));
        assert_eq!(slide_bound(4, 7, 2), Ok(2));
        assert!(slide_bound(2, 5, 1).is_err());
        assert!(slide_bound(3, 5, 0).is_err());
        assert!(slide_bound(3, 1, 2).is_err());
    }

    #[test]
    fn simulations() {
        let t = simulate_slides(3, 8, 1, 12).unwrap();
        assert_eq!(t.bound, 3);
        assert!(t.max_slide <= 3);
        let t = simulate_slides(4, 7, 2, 12).unwrap();
        assert!(t.max_slide <= 2);
        let t = simulate_slides(5, 4, 4, 6).unwrap();
        assert_eq!(t.max_slide, 0);
        assert!(simulate_slides(3, 8, 1, 4).is_err());
    }

    #[test]
    fn records_conserve_edges() {
        let t = simulate_slides(3, 5, 2, 8).unwrap();
        let total: u64 = t.records.iter().map(|r| r.count).sum();
        let vertices: u64 = t.levels.iter().map(|l| l.vertices).sum();
        assert_eq!(total, (vertices - 1) * 5);
    }

    #[test]
    fn line_values() {
        assert_eq!(line_bijection(1, 1, 0, 2), Ok(2));
        assert_eq!(line_bijection(1, 1, -1, 0), Ok(-1));
        assert_eq!(line_bijection(2, 0, 5, 3), Ok(23));
        assert!(line_bijection(1, 0, 0, 2).is_err());
    }

    #[test]
    fn scaling() {
        assert_eq!(scaling_factor(1, 0, 2, 0), Ok(Ratio::new(1, 2)));
        assert_eq!(scaling_factor(0, 1, 0, 1), Ok(Ratio::new(1, 1)));
        assert_eq!(scaling_factor(3, 2, 1, 1), Ok(Ratio::new(8, 3)));
        assert!(scaling_factor(1, 1, 0, 0).is_err());
    }
}
