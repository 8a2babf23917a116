//! Checks of the three standing assumptions.

use alloc::vec;
use alloc::vec::Vec;

use crate::cuts::{CutAnalysis, CutCollection};
use crate::graph::DefiningGraph;
use crate::vertex_set::VertexSet;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CheckId {
    NoTriangles = 1,
    NoSeparators = 2,
    HasCutCollection = 3,
    NotACycle = 4,
    CommonAdjacentsSeparated = 5,
}

impl CheckId {
    pub fn number(self) -> u8 {
        self as u8
    }

    pub fn name(self) -> &'static str {
        match self {
            CheckId::NoTriangles => "triangle-free",
            CheckId::NoSeparators => "connected, no separating vertex or closed edge",
            CheckId::HasCutCollection => "has a cut collection",
            CheckId::NotACycle => "not a cycle",
            CheckId::CommonAdjacentsSeparated => {
                "common adjacents of uncrossed collections are separated"
            }
        }
    }

    pub fn code(self) -> &'static str {
        match self {
            CheckId::NoTriangles => "NO_TRIANGLES",
            CheckId::NoSeparators => "NO_SEPARATORS",
            CheckId::HasCutCollection => "HAS_CUT_COLLECTION",
            CheckId::NotACycle => "NOT_A_CYCLE",
            CheckId::CommonAdjacentsSeparated => "COMMON_ADJACENTS_SEPARATED",
        }
    }
}

/// Evidence for a failed check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    Vertices(Vec<usize>),
    /// An uncrossed collection and two of its common adjacents that share a
    /// component once the poles are removed.
    Collection {
        collection: CutCollection,
        pair: (usize, usize),
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub id: CheckId,
    pub passed: bool,
    pub witness: Option<Witness>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AssumptionReport {
    pub level: u8,
    pub passed: bool,
    pub checks: Vec<Check>,
}

impl AssumptionReport {
    pub fn check(&self, id: CheckId) -> Option<&Check> {
        self.checks.iter().find(|c| c.id == id)
    }

    pub fn failed(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

fn check(id: CheckId, witness: Option<Witness>) -> Check {
    Check {
        id,
        passed: witness.is_none(),
        witness,
    }
}

/// Runs every check up to `level` (clamped to 1..=3). All checks are
/// evaluated even when an earlier one fails.
pub fn validate(g: &DefiningGraph, level: u8) -> AssumptionReport {
    let level = level.clamp(1, 3);
    let mut checks = vec![
        check(
            CheckId::NoTriangles,
            g.find_triangle()
                .map(|(u, v, w)| Witness::Vertices(vec![u, v, w])),
        ),
        check(CheckId::NoSeparators, separator_witness(g)),
    ];
    if level >= 2 {
        let analysis = CutAnalysis::new(g);
        let all = || Witness::Vertices(g.all().to_vec());
        checks.push(check(
            CheckId::HasCutCollection,
            analysis.collections.is_empty().then(all),
        ));
        checks.push(check(CheckId::NotACycle, g.is_cycle().then(all)));
        if level >= 3 {
            checks.push(check(
                CheckId::CommonAdjacentsSeparated,
                common_adjacent_witness(g, &analysis),
            ));
        }
    }
    AssumptionReport {
        level,
        passed: checks.iter().all(|c| c.passed),
        checks,
    }
}

fn separator_witness(g: &DefiningGraph) -> Option<Witness> {
    let comps = g.components_after_removal(VertexSet::EMPTY);
    if comps.len() > 1 {
        return Some(Witness::Vertices(comps[1].to_vec()));
    }
    for v in 0..g.vertex_count() {
        if g.separates(VertexSet::singleton(v)) {
            return Some(Witness::Vertices(vec![v]));
        }
    }
    for (u, v) in g.edges() {
        if g.separates(VertexSet::singleton(u).with(v)) {
            return Some(Witness::Vertices(vec![u, v]));
        }
    }
    None
}

fn common_adjacent_witness(g: &DefiningGraph, analysis: &CutAnalysis) -> Option<Witness> {
    for x in analysis.uncrossed() {
        let common = g.common_neighbors(x.a, x.b);
        let comps = g.components_after_removal(x.poles());
        for comp in comps {
            let inside = comp & common;
            if inside.len() >= 2 {
                let mut it = inside.iter();
                let c1 = it.next().unwrap();
                let c2 = it.next().unwrap();
                return Some(Witness::Collection {
                    collection: x,
                    pair: (c1, c2),
                });
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::named;

    #[test]
    fn theta_passes_everything() {
        let r = validate(&named::theta_222(), 3);
        assert!(r.passed, "{r:?}");
        assert_eq!(r.checks.len(), 5);
    }

    #[test]
    fn five_cycle_is_a_cycle() {
        let g = named::cycle(5);
        let r = validate(&g, 2);
        assert!(!r.passed);
        let c = r.check(CheckId::NotACycle).unwrap();
        assert!(!c.passed);
        assert_eq!(c.witness, Some(Witness::Vertices(g.all().to_vec())));
        assert!(r.check(CheckId::NoTriangles).unwrap().passed);
    }

    #[test]
    fn linked_square_fails_check_five() {
        let g = named::linked_square();
        let r = validate(&g, 3);
        assert!(!r.passed);
        assert!(r.failed().all(|c| c.id == CheckId::CommonAdjacentsSeparated));
        match &r.check(CheckId::CommonAdjacentsSeparated).unwrap().witness {
            Some(Witness::Collection { collection, pair }) => {
                assert_eq!(collection.describe(&g), "{x,y}");
                assert_eq!((g.label(pair.0), g.label(pair.1)), ("c", "d"));
            }
            w => panic!("unexpected witness {w:?}"),
        }
    }

    #[test]
    fn triangles_and_separators() {
        let g = DefiningGraph::from_edges([("a", "b"), ("b", "c"), ("c", "a")]).unwrap();
        let r = validate(&g, 1);
        assert_eq!(r.level, 1);
        assert!(!r.check(CheckId::NoTriangles).unwrap().passed);
        let path = DefiningGraph::from_edges([("a", "b"), ("b", "c")]).unwrap();
        let r = validate(&path, 1);
        assert_eq!(
            r.check(CheckId::NoSeparators).unwrap().witness,
            Some(Witness::Vertices(vec![1]))
        );
    }

    #[test]
    fn reference_graphs_pass_level_three() {
        for g in [
            named::square_with_paths(1),
            named::square_with_paths(2),
            named::star_octagon(),
            named::complete_bipartite(2, 3),
        ] {
            let r = validate(&g, 3);
            assert!(r.passed, "{:?}: {r:?}", g.labels());
        }
    }
}
