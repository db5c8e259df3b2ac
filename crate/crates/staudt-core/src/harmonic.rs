//! Harmonic quadruples: predicates, harmonic-point construction, full
//! enumeration, and the distantness consequences.
//!
//! A quadruple (p₀, p₁, p₂, p₃) is harmonic when some basis (g₀, g₁) gives
//! p₀ = Rg₀, p₁ = Rg₁, p₂ = R(g₀+g₁), p₃ = R(g₀−g₁). Admissible generators
//! of a point are exactly the unit multiples of its canonical representative,
//! and rescaling g₀ by a unit u rescales g₀ ± g₁ by the same u, so the
//! two-unit search collapses to a single unit w with g₀ = rep(p₀) and
//! g₁ = w·rep(p₁). That makes the fast predicate O(|R*|) per quadruple.

use std::collections::HashMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::Gl2;
use crate::mat2::{vec_add, vec_scale, vec_sub};
use crate::projline::{DistantGraph, PointId, ProjectiveLine};

/// An ordered quadruple of points on one line; no distinctness is imposed.
#[derive(Debug, Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Quad(pub [PointId; 4]);

impl Quad {
    pub fn key(&self) -> [u32; 4] {
        [self.0[0].0, self.0[1].0, self.0[2].0, self.0[3].0]
    }
}

/// Fast harmonicity predicate by unit search.
pub fn is_harmonic(line: &ProjectiveLine, graph: &DistantGraph, quad: &Quad) -> bool {
    let [p0, p1, p2, p3] = quad.0;
    if !graph.are_adjacent(p0, p1) {
        return false;
    }
    let ring = line.ring();
    let a0 = line.point(p0).rep;
    let a1 = line.point(p1).rep;
    ring.units().iter().any(|&w| {
        let g1 = vec_scale(ring, w, a1);
        line.lookup(vec_add(ring, a0, g1)) == Some(p2)
            && line.lookup(vec_sub(ring, a0, g1)) == Some(p3)
    })
}

/// Slow harmonicity oracle: some G ∈ GL₂ maps the standard harmonic frame
/// (1,0), (1,0)E(0), (1,0)E(1), (1,0)E(−1) onto generators of the quadruple.
pub fn is_harmonic_via_g(line: &ProjectiveLine, gl2: &Gl2, quad: &Quad) -> bool {
    (0..gl2.len()).any(|pos| g_matches(line, gl2, pos, quad))
}

fn g_matches(line: &ProjectiveLine, gl2: &Gl2, pos: usize, quad: &Quad) -> bool {
    let ring = line.ring();
    let g = gl2.matrix(pos);
    let r0 = g.row(0);
    let r1 = g.row(1);
    // (1,0)·G = r0, (1,0)·E(0)·G = r1, (1,0)·E(1)·G = r0 + r1,
    // (1,0)·E(−1)·G = r1 − r0.
    line.lookup(r0) == Some(quad.0[0])
        && line.lookup(r1) == Some(quad.0[1])
        && line.lookup(vec_add(ring, r0, r1)) == Some(quad.0[2])
        && line.lookup(vec_sub(ring, r1, r0)) == Some(quad.0[3])
}

/// The same oracle with a first-row index, for bulk differential testing.
#[derive(Debug)]
pub struct HarmonicOracle<'a> {
    line: &'a ProjectiveLine,
    gl2: &'a Gl2,
    by_first_row: HashMap<u32, Vec<u32>>,
}

impl<'a> HarmonicOracle<'a> {
    pub fn new(line: &'a ProjectiveLine, gl2: &'a Gl2) -> HarmonicOracle<'a> {
        let mut by_first_row: HashMap<u32, Vec<u32>> = HashMap::new();
        for pos in 0..gl2.len() {
            let p = line
                .lookup(gl2.matrix(pos).row(0))
                .expect("rows of invertible matrices are admissible");
            by_first_row.entry(p.0).or_default().push(pos as u32);
        }
        HarmonicOracle {
            line,
            gl2,
            by_first_row,
        }
    }

    pub fn is_harmonic(&self, quad: &Quad) -> bool {
        match self.by_first_row.get(&quad.0[0].0) {
            None => false,
            Some(positions) => positions
                .iter()
                .any(|&pos| g_matches(self.line, self.gl2, pos as usize, quad)),
        }
    }
}

/// The complete list of harmonic quadruples, sorted.
///
/// For a fixed ordered distant pair (p₀, p₁) the unit w determines the
/// quadruple, and distinct w give distinct quadruples (coordinates with
/// respect to a basis are unique), so the sweep hits every harmonic
/// quadruple exactly once.
pub fn enumerate_harmonic_quadruples(line: &ProjectiveLine, graph: &DistantGraph) -> Vec<Quad> {
    let ring = line.ring();
    let mut out = Vec::new();
    for p0 in line.ids() {
        let a0 = line.point(p0).rep;
        for p1 in line.ids() {
            if !graph.are_adjacent(p0, p1) {
                continue;
            }
            let a1 = line.point(p1).rep;
            for &w in ring.units() {
                let g1 = vec_scale(ring, w, a1);
                let p2 = line
                    .lookup(vec_add(ring, a0, g1))
                    .expect("sum over a basis is admissible");
                let p3 = line
                    .lookup(vec_sub(ring, a0, g1))
                    .expect("difference over a basis is admissible");
                out.push(Quad([p0, p1, p2, p3]));
            }
        }
    }
    let before = out.len();
    out.sort_unstable();
    out.dedup();
    debug_assert_eq!(before, out.len(), "w ↦ quadruple must be injective");
    out
}

/// The unique p₃ with Harm(p₀, p₁, p₂, p₃), for mutually distant inputs.
///
/// Scans all points; any completion count other than one falsifies the
/// uniqueness of the fourth harmonic point and aborts loudly.
pub fn fourth_harmonic(
    line: &ProjectiveLine,
    graph: &DistantGraph,
    p0: PointId,
    p1: PointId,
    p2: PointId,
) -> Result<PointId> {
    if !graph.are_adjacent(p0, p1) || !graph.are_adjacent(p0, p2) || !graph.are_adjacent(p1, p2) {
        return Err(Error::InvalidArgument(
            "fourth harmonic point requires three mutually distant points".into(),
        ));
    }
    let mut found = None;
    for p in line.ids() {
        if is_harmonic(line, graph, &Quad([p0, p1, p2, p])) {
            if found.is_some() {
                return Err(Error::Falsified(format!(
                    "two harmonic completions of ({}, {}, {}) over {}",
                    p0.0,
                    p1.0,
                    p2.0,
                    line.ring().label()
                )));
            }
            found = Some(p);
        }
    }
    found.ok_or_else(|| {
        Error::Falsified(format!(
            "no harmonic completion of ({}, {}, {}) over {}",
            p0.0,
            p1.0,
            p2.0,
            line.ring().label()
        ))
    })
}

/// The unique p₂ with Harm(p₀, p₁, p₂, p₃); by the p₂ ↔ p₃ symmetry this is
/// a fourth-harmonic call with swapped arguments.
pub fn third_harmonic(
    line: &ProjectiveLine,
    graph: &DistantGraph,
    p0: PointId,
    p1: PointId,
    p3: PointId,
) -> Result<PointId> {
    fourth_harmonic(line, graph, p0, p1, p3)
}

/// Verdicts for the distantness consequences of harmonicity.
#[derive(Debug, Clone, Serialize)]
pub struct DistantConsequences {
    pub quad_count: usize,
    /// Every harmonic quadruple has p₀ △ p₁ and pᵢ △ pⱼ for i ∈ {0,1},
    /// j ∈ {2,3}.
    pub base_pattern: bool,
    /// p₂ △ p₃ in every quadruple.
    pub p2_p3_distant_always: bool,
    /// 2 ∈ R*; must equal `p2_p3_distant_always`.
    pub two_unit: bool,
    /// p₂ ≠ p₃ in every quadruple.
    pub p2_p3_distinct_always: bool,
    /// −1 ≠ 1; must equal `p2_p3_distinct_always`.
    pub minus_one_distinct: bool,
    /// All four points of each quadruple share a graph component.
    pub same_component: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub violation: Option<[u32; 4]>,
}

impl DistantConsequences {
    pub fn ok(&self) -> bool {
        self.base_pattern
            && self.same_component
            && self.p2_p3_distant_always == self.two_unit
            && self.p2_p3_distinct_always == self.minus_one_distinct
    }
}

pub fn check_distant_consequences(
    line: &ProjectiveLine,
    graph: &DistantGraph,
    components: &[Vec<PointId>],
    quads: &[Quad],
) -> DistantConsequences {
    let ring = line.ring();
    let mut component_of = vec![0u32; line.len()];
    for (ci, comp) in components.iter().enumerate() {
        for &p in comp {
            component_of[p.index()] = ci as u32;
        }
    }
    let mut base_pattern = true;
    let mut p2_p3_distant_always = true;
    let mut p2_p3_distinct_always = true;
    let mut same_component = true;
    let mut violation = None;
    for q in quads {
        let [p0, p1, p2, p3] = q.0;
        let base = graph.are_adjacent(p0, p1)
            && graph.are_adjacent(p0, p2)
            && graph.are_adjacent(p0, p3)
            && graph.are_adjacent(p1, p2)
            && graph.are_adjacent(p1, p3);
        if !base {
            base_pattern = false;
            violation.get_or_insert(q.key());
        }
        if !graph.are_adjacent(p2, p3) {
            p2_p3_distant_always = false;
        }
        if p2 == p3 {
            p2_p3_distinct_always = false;
        }
        let c = component_of[p0.index()];
        if [p1, p2, p3].iter().any(|p| component_of[p.index()] != c) {
            same_component = false;
            violation.get_or_insert(q.key());
        }
    }
    DistantConsequences {
        quad_count: quads.len(),
        base_pattern,
        p2_p3_distant_always,
        two_unit: ring.is_unit(ring.int(2)),
        p2_p3_distinct_always,
        minus_one_distinct: ring.neg(ring.one()) != ring.one(),
        same_component,
        violation,
    }
}
