//! The projective line P(R²): admissible pairs, canonical points, the
//! distant relation and its graph, and connected components both
//! graph-theoretic and word-generated.

use std::collections::HashMap;

use serde::Serialize;

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::group::GeneratedGroup;
use crate::mat2::{Mat2, Word};
use crate::ring::{Elem, Ring, Verdict};

/// Index of a point in its [`ProjectiveLine`].
#[derive(Debug, Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PointId(pub u32);

impl PointId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// A point R·(x₀, x₁), stored as the canonical admissible generator: the
/// lexicographically least element of the left unit orbit.
#[derive(Debug, Copy, Clone, PartialEq, Eq)]
pub struct Point {
    pub rep: [Elem; 2],
}

/// All points of P(R²), ordered lexicographically by representative, with a
/// dense pair → point lookup table.
#[derive(Debug)]
pub struct ProjectiveLine {
    ring: Ring,
    points: Vec<Point>,
    canon: Vec<u32>, // n² entries; NOT_A_POINT where the pair is not admissible
}

const NOT_A_POINT: u32 = u32::MAX;

/// True iff the pair extends to an invertible matrix, decided by scanning
/// all completions.
pub fn is_admissible(ring: &Ring, pair: [Elem; 2]) -> bool {
    let n = ring.size();
    for y0 in 0..n {
        for y1 in 0..n {
            let m = Mat2::new(ring, [pair[0], pair[1], Elem(y0 as u16), Elem(y1 as u16)])
                .expect("entries in range");
            if m.is_invertible() {
                return true;
            }
        }
    }
    false
}

/// The lexicographic minimum of the left unit orbit { u·pair : u ∈ R* }.
pub fn canonical_pair(ring: &Ring, pair: [Elem; 2]) -> [Elem; 2] {
    let mut best = pair;
    for &u in ring.units() {
        let cand = [ring.mul(u, pair[0]), ring.mul(u, pair[1])];
        if cand < best {
            best = cand;
        }
    }
    best
}

/// True iff R² = Ra ⊕ Rb, i.e. the stacked matrix of the representatives is
/// invertible.
pub fn are_distant(ring: &Ring, a: [Elem; 2], b: [Elem; 2]) -> bool {
    Mat2::new(ring, [a[0], a[1], b[0], b[1]])
        .expect("entries in range")
        .is_invertible()
}

impl ProjectiveLine {
    /// Enumerates all points by scanning the |R|² pairs, canonicalizing each
    /// admissible orbit once.
    pub fn build(ring: &Ring) -> Result<ProjectiveLine> {
        let n = ring.size();
        let mut canon = vec![NOT_A_POINT; n * n];
        let mut visited = vec![false; n * n];
        let mut points = Vec::new();
        for x0 in 0..n {
            for x1 in 0..n {
                let key = x0 * n + x1;
                if visited[key] {
                    continue;
                }
                let pair = [Elem(x0 as u16), Elem(x1 as u16)];
                // One admissibility scan per unit orbit.
                let orbit: Vec<usize> = ring
                    .units()
                    .iter()
                    .map(|&u| {
                        let p = [ring.mul(u, pair[0]), ring.mul(u, pair[1])];
                        p[0].index() * n + p[1].index()
                    })
                    .collect();
                if is_admissible(ring, pair) {
                    // The scan runs in lexicographic order, so the first
                    // unvisited orbit member reached is the canonical one.
                    debug_assert_eq!(canonical_pair(ring, pair), pair);
                    let id = points.len() as u32;
                    points.push(Point { rep: pair });
                    for k in orbit {
                        visited[k] = true;
                        canon[k] = id;
                    }
                } else {
                    for k in orbit {
                        visited[k] = true;
                    }
                }
            }
        }
        Ok(ProjectiveLine {
            ring: Ring::clone(ring),
            points,
            canon,
        })
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn point(&self, id: PointId) -> &Point {
        &self.points[id.index()]
    }

    pub fn ids(&self) -> impl Iterator<Item = PointId> {
        (0..self.points.len() as u32).map(PointId)
    }

    /// Point generated by an admissible pair, via the dense lookup table.
    pub fn lookup(&self, pair: [Elem; 2]) -> Option<PointId> {
        let n = self.ring.size();
        match self.canon[pair[0].index() * n + pair[1].index()] {
            NOT_A_POINT => None,
            id => Some(PointId(id)),
        }
    }

    /// Canonicalizes an admissible pair; errors on non-admissible input.
    pub fn canonical_point(&self, pair: [Elem; 2]) -> Result<PointId> {
        self.lookup(pair).ok_or_else(|| {
            Error::InvalidArgument(format!(
                "({}, {}) is not admissible over {}",
                pair[0].0,
                pair[1].0,
                self.ring.label()
            ))
        })
    }
}

/// Symmetric loopless adjacency of the distant relation, stored densely.
#[derive(Debug, Clone)]
pub struct DistantGraph {
    n: usize,
    words_per_row: usize,
    bits: Vec<u64>,
    degrees: Vec<u32>,
}

impl DistantGraph {
    pub fn are_adjacent(&self, p: PointId, q: PointId) -> bool {
        let bit = q.index();
        self.bits[p.index() * self.words_per_row + bit / 64] >> (bit % 64) & 1 == 1
    }

    pub fn degree(&self, p: PointId) -> usize {
        self.degrees[p.index()] as usize
    }

    pub fn neighbors(&self, p: PointId) -> Vec<PointId> {
        (0..self.n as u32)
            .map(PointId)
            .filter(|&q| self.are_adjacent(p, q))
            .collect()
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }
}

/// All-pairs construction of the distant graph.
pub fn build_distant_graph(line: &ProjectiveLine) -> DistantGraph {
    let n = line.len();
    let words_per_row = n.div_ceil(64);
    let mut bits = vec![0u64; n * words_per_row];
    let mut degrees = vec![0u32; n];
    for i in 0..n {
        for j in i + 1..n {
            let a = line.points[i].rep;
            let b = line.points[j].rep;
            if are_distant(&line.ring, a, b) {
                bits[i * words_per_row + j / 64] |= 1 << (j % 64);
                bits[j * words_per_row + i / 64] |= 1 << (i % 64);
                degrees[i] += 1;
                degrees[j] += 1;
            }
        }
    }
    DistantGraph {
        n,
        words_per_row,
        bits,
        degrees,
    }
}

/// Connected components, each sorted ascending, ordered by least member.
pub fn components(graph: &DistantGraph) -> Vec<Vec<PointId>> {
    let n = graph.n;
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut queue = vec![start];
        seen[start] = true;
        let mut comp = Vec::new();
        while let Some(cur) = queue.pop() {
            comp.push(cur as u32);
            for (next, visited) in seen.iter_mut().enumerate() {
                if !*visited && graph.are_adjacent(PointId(cur as u32), PointId(next as u32)) {
                    *visited = true;
                    queue.push(next);
                }
            }
        }
        comp.sort_unstable();
        out.push(comp.into_iter().map(PointId).collect());
    }
    out
}

/// The word component of R·(1, 0): all points (1, 0)·E(T), each with the
/// witness word of the first E₂ element (in discovery order) whose first row
/// generates it.
#[derive(Debug)]
pub struct WordComponent {
    pub base: PointId,
    /// Members in ascending order.
    pub points: Vec<PointId>,
    witness: HashMap<u32, Word>,
}

impl WordComponent {
    pub fn contains(&self, p: PointId) -> bool {
        self.witness.contains_key(&p.0)
    }

    pub fn witness_word(&self, p: PointId) -> Option<&Word> {
        self.witness.get(&p.0)
    }
}

pub fn component_via_words(line: &ProjectiveLine, e2: &GeneratedGroup) -> WordComponent {
    let base = line
        .lookup([line.ring.one(), line.ring.zero()])
        .expect("(1, 0) is admissible");
    let mut witness = HashMap::new();
    for pos in 0..e2.len() {
        let row = e2.matrix(pos).row(0);
        let p = line
            .lookup(row)
            .expect("first row of an invertible matrix is admissible");
        witness
            .entry(p.0)
            .or_insert_with(|| e2.witness_word(pos).expect("E₂ carries witness words"));
    }
    let mut points: Vec<PointId> = witness.keys().map(|&k| PointId(k)).collect();
    points.sort_unstable();
    debug_assert!(witness.contains_key(&base.0));
    WordComponent {
        base,
        points,
        witness,
    }
}

/// Outcome of the geometric condition (i′).
#[derive(Debug, Clone, Serialize)]
pub struct IPrimeOutcome {
    pub verdict: Verdict,
    /// (p₀, (p₁, ..., p₅)) with no point distant to all six, when failing.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<(u32, [u32; 5])>,
}

/// For every point p₀ and every 5-tuple of its neighbors (repetitions
/// allowed) there must be a point distant to p₀ and to all five.
///
/// The existential only depends on the multiset of neighbors, so the scan
/// runs over non-decreasing tuples; feasibility uses the ordered-tuple count
/// Σ deg(p₀)⁵ against the same cap as the ring-level condition.
pub fn check_condition_i_prime(
    line: &ProjectiveLine,
    graph: &DistantGraph,
    caps: &Caps,
) -> IPrimeOutcome {
    let total: u64 = line.ids().map(|p| (graph.degree(p) as u64).pow(5)).sum();
    if total > caps.five_units_exhaustive {
        return IPrimeOutcome {
            verdict: Verdict::Unresolved,
            witness: None,
        };
    }
    let all: Vec<PointId> = line.ids().collect();
    for p0 in line.ids() {
        let neighbors = graph.neighbors(p0);
        let d = neighbors.len();
        if d == 0 {
            continue;
        }
        // Non-decreasing index tuples into the neighbor list.
        let mut idx = [0usize; 5];
        loop {
            let tuple = idx.map(|i| neighbors[i]);
            let found = all.iter().any(|&p| {
                graph.are_adjacent(p, p0) && tuple.iter().all(|&q| graph.are_adjacent(p, q))
            });
            if !found {
                return IPrimeOutcome {
                    verdict: Verdict::Fails,
                    witness: Some((p0.0, tuple.map(|p| p.0))),
                };
            }
            let mut i = 5;
            let advanced = loop {
                if i == 0 {
                    break false;
                }
                i -= 1;
                if idx[i] + 1 < d {
                    let v = idx[i] + 1;
                    for slot in &mut idx[i..] {
                        *slot = v;
                    }
                    break true;
                }
            };
            if !advanced {
                break;
            }
        }
    }
    IPrimeOutcome {
        verdict: Verdict::Holds,
        witness: None,
    }
}

/// Searches for x, y with xy = 1 but yx ≠ 1. Finite rings are
/// Dedekind-finite, so this must come back empty; the scan keeps the caveat
/// executable.
pub fn check_dedekind_witness(ring: &Ring) -> Option<(Elem, Elem)> {
    for x in ring.elems() {
        for y in ring.elems() {
            if ring.mul(x, y) == ring.one() && ring.mul(y, x) != ring.one() {
                return Some((x, y));
            }
        }
    }
    None
}

/// JSON export schema for a line and its distant graph.
#[derive(Debug, Serialize)]
pub struct LineExport {
    pub points: Vec<[u16; 2]>,
    pub edges: Vec<[u32; 2]>,
    pub components: Vec<Vec<u32>>,
}

pub fn export_line(line: &ProjectiveLine, graph: &DistantGraph) -> LineExport {
    let points = line
        .points
        .iter()
        .map(|p| [p.rep[0].0, p.rep[1].0])
        .collect();
    let mut edges = Vec::new();
    for i in 0..line.len() {
        for j in i + 1..line.len() {
            if graph.are_adjacent(PointId(i as u32), PointId(j as u32)) {
                edges.push([i as u32, j as u32]);
            }
        }
    }
    let components = components(graph)
        .into_iter()
        .map(|c| c.into_iter().map(|p| p.0).collect())
        .collect();
    LineExport {
        points,
        edges,
        components,
    }
}

/// DOT rendering: one node per point labeled by its representative, one
/// undirected edge per distant pair.
pub fn to_dot(line: &ProjectiveLine, graph: &DistantGraph) -> String {
    let mut out = String::from("graph distant {\n");
    for (i, p) in line.points.iter().enumerate() {
        out.push_str(&format!(
            "  p{} [label=\"({},{})\"];\n",
            i, p.rep[0].0, p.rep[1].0
        ));
    }
    for i in 0..line.len() {
        for j in i + 1..line.len() {
            if graph.are_adjacent(PointId(i as u32), PointId(j as u32)) {
                out.push_str(&format!("  p{i} -- p{j};\n"));
            }
        }
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::generate_e2;
    use crate::ring::{build_ring, parse_ring_spec};

    fn build(spec: &str) -> Ring {
        build_ring(&parse_ring_spec(spec).unwrap(), &Caps::default()).unwrap()
    }

    fn e(i: u16) -> Elem {
        Elem(i)
    }

    #[test]
    fn admissibility_examples_over_zmod4() {
        let ring = build("Z/4");
        assert!(is_admissible(&ring, [e(1), e(0)]));
        // Both entries annihilated by 2: no completion works.
        assert!(!is_admissible(&ring, [e(2), e(2)]));
        assert!(is_admissible(&ring, [e(2), e(1)]));
    }

    #[test]
    fn canonicalization_examples_over_zmod4() {
        let ring = build("Z/4");
        // Orbit of (0, 3) under units {1, 3} is {(0, 3), (0, 1)}.
        assert_eq!(canonical_pair(&ring, [e(0), e(3)]), [e(0), e(1)]);
        assert_eq!(canonical_pair(&ring, [e(1), e(0)]), [e(1), e(0)]);
        // Orbit mate of (2, 1) is (2, 3), which is larger.
        assert_eq!(canonical_pair(&ring, [e(2), e(1)]), [e(2), e(1)]);
    }

    #[test]
    fn canonicalization_is_idempotent_and_orbit_constant() {
        for spec in ["Z/4", "Z/6", "GF(2,2)", "DUAL(Z/3)"] {
            let ring = build(spec);
            let n = ring.size() as u16;
            for x0 in 0..n {
                for x1 in 0..n {
                    let c = canonical_pair(&ring, [e(x0), e(x1)]);
                    assert_eq!(canonical_pair(&ring, c), c, "{spec}: idempotent");
                    for &u in ring.units() {
                        let scaled = [ring.mul(u, e(x0)), ring.mul(u, e(x1))];
                        assert_eq!(canonical_pair(&ring, scaled), c, "{spec}: orbit constant");
                    }
                }
            }
        }
    }

    /// Brute-force point count using only ring tables: a pair is counted
    /// when it is admissible (some completion gives a bijective row action)
    /// and is the least member of its unit orbit.
    fn oracle_point_count(ring: &Ring) -> usize {
        let n = ring.size();
        let bijective = |m: [usize; 4]| -> bool {
            let mut seen = vec![false; n * n];
            for r0 in 0..n {
                for r1 in 0..n {
                    let i0 = ring
                        .add(
                            ring.mul(e(r0 as u16), e(m[0] as u16)),
                            ring.mul(e(r1 as u16), e(m[2] as u16)),
                        )
                        .index();
                    let i1 = ring
                        .add(
                            ring.mul(e(r0 as u16), e(m[1] as u16)),
                            ring.mul(e(r1 as u16), e(m[3] as u16)),
                        )
                        .index();
                    if seen[i0 * n + i1] {
                        return false;
                    }
                    seen[i0 * n + i1] = true;
                }
            }
            true
        };
        let mut count = 0;
        for x0 in 0..n {
            for x1 in 0..n {
                let admissible = (0..n * n).any(|c| bijective([x0, x1, c / n, c % n]));
                if !admissible {
                    continue;
                }
                let is_min = ring.units().iter().all(|&u| {
                    let o = [
                        ring.mul(u, e(x0 as u16)).index(),
                        ring.mul(u, e(x1 as u16)).index(),
                    ];
                    [x0, x1] <= o
                });
                if is_min {
                    count += 1;
                }
            }
        }
        count
    }

    #[test]
    fn point_counts_match_oracle() {
        for (spec, expected) in [("Z/7", 8), ("Z/4", 6), ("GF(3,2)", 10)] {
            let ring = build(spec);
            assert_eq!(oracle_point_count(&ring), expected, "{spec}: oracle");
            let line = ProjectiveLine::build(&ring).unwrap();
            assert_eq!(line.len(), expected, "{spec}: enumerate_points");
        }
    }

    #[test]
    fn field_line_is_complete_graph() {
        let ring = build("Z/7");
        let line = ProjectiveLine::build(&ring).unwrap();
        let graph = build_distant_graph(&line);
        for p in line.ids() {
            assert_eq!(graph.degree(p), 7);
            assert!(!graph.are_adjacent(p, p));
        }
    }

    #[test]
    fn zmod4_line_is_4_regular() {
        let ring = build("Z/4");
        let line = ProjectiveLine::build(&ring).unwrap();
        let graph = build_distant_graph(&line);
        assert_eq!(line.len(), 6);
        for p in line.ids() {
            assert_eq!(graph.degree(p), 4);
        }
    }

    #[test]
    fn distant_is_symmetric() {
        for spec in ["Z/6", "T2(Z/2)", "DUAL(Z/3)"] {
            let ring = build(spec);
            let line = ProjectiveLine::build(&ring).unwrap();
            for p in line.ids() {
                for q in line.ids() {
                    assert_eq!(
                        are_distant(&ring, line.point(p).rep, line.point(q).rep),
                        are_distant(&ring, line.point(q).rep, line.point(p).rep),
                        "{spec}"
                    );
                }
            }
        }
    }

    #[test]
    fn graph_component_equals_word_component() {
        for spec in ["Z/7", "Z/4", "T2(Z/2)"] {
            let ring = build(spec);
            let line = ProjectiveLine::build(&ring).unwrap();
            let graph = build_distant_graph(&line);
            let e2 = generate_e2(&ring, &Caps::default()).unwrap();
            let wc = component_via_words(&line, &e2);
            let comps = components(&graph);
            let base_comp = comps
                .iter()
                .find(|c| c.contains(&wc.base))
                .expect("base point is in some component");
            assert_eq!(base_comp, &wc.points, "{spec}");
        }
    }

    #[test]
    fn i_prime_verdicts() {
        let caps = Caps::default();
        for (spec, verdict) in [
            ("Z/7", Verdict::Holds),
            ("Z/4", Verdict::Fails),
            ("GF(3,2)", Verdict::Holds),
        ] {
            let ring = build(spec);
            let line = ProjectiveLine::build(&ring).unwrap();
            let graph = build_distant_graph(&line);
            let out = check_condition_i_prime(&line, &graph, &caps);
            assert_eq!(out.verdict, verdict, "{spec}");
            if verdict == Verdict::Fails {
                let (p0, tuple) = out.witness.unwrap();
                // Re-check the witness: all five are neighbors of p0 and no
                // point is distant to all six.
                let p0 = PointId(p0);
                for q in tuple {
                    assert!(graph.are_adjacent(p0, PointId(q)));
                }
                assert!(!line.ids().any(|p| {
                    graph.are_adjacent(p, p0)
                        && tuple.iter().all(|&q| graph.are_adjacent(p, PointId(q)))
                }));
            }
        }
    }

    #[test]
    fn no_dedekind_witness_in_finite_rings() {
        for spec in ["Z/6", "M2(Z/2)", "T2(Z/3)"] {
            assert_eq!(check_dedekind_witness(&build(spec)), None, "{spec}");
        }
    }

    #[test]
    fn export_schema_round_trip() {
        let ring = build("Z/4");
        let line = ProjectiveLine::build(&ring).unwrap();
        let graph = build_distant_graph(&line);
        let export = export_line(&line, &graph);
        assert_eq!(export.points.len(), 6);
        assert_eq!(export.components.len(), 1);
        // 6 points, 4-regular: 12 edges.
        assert_eq!(export.edges.len(), 12);
        let dot = to_dot(&line, &graph);
        assert!(dot.starts_with("graph distant {"));
        assert_eq!(dot.matches(" -- ").count(), 12);
    }
}
