//! Harmonicity preservers: construction from Jordan data, exhaustive
//! classification, and reconstruction of Jordan data from arbitrary
//! preservers.

mod classify;
mod induced;
mod matching;

pub use classify::{
    classify_by_raw_filter, classify_preservers, is_distant_preserving, is_harmonicity_preserver,
    ClassificationResult,
};
pub use induced::{
    bartolone_image, bartolone_sweep, delta_from_antihom, lambda_from_hom, mu_from_jordan,
    verify_mu_well_defined, BartoloneSweep, WellDefinedOutcome,
};
pub use matching::{match_to_jordan, verify_staudt_theorem, MatchRecord, StaudtVerification};

use std::collections::{HashMap, HashSet};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::harmonic::{enumerate_harmonic_quadruples, Quad};
use crate::mat2::Mat2;
use crate::projline::{build_distant_graph, components, DistantGraph, PointId, ProjectiveLine};
use crate::ring::{JordanMap, Ring};

/// Everything the preserver machinery needs about one projective line:
/// the line, its distant graph, components, the full harmonic quadruple
/// list, and the fourth-harmonic closure table.
#[derive(Debug)]
pub struct Geometry {
    pub ring: Ring,
    pub line: Arc<ProjectiveLine>,
    pub graph: DistantGraph,
    pub components: Vec<Vec<PointId>>,
    pub quads: Vec<Quad>,
    quad_set: HashSet<[u32; 4]>,
    fourth: HashMap<[u32; 3], u32>,
}

impl Geometry {
    pub fn build(ring: &Ring) -> Result<Geometry> {
        let line = Arc::new(ProjectiveLine::build(ring)?);
        let graph = build_distant_graph(&line);
        let comps = components(&graph);
        let quads = enumerate_harmonic_quadruples(&line, &graph);
        let quad_set: HashSet<[u32; 4]> = quads.iter().map(|q| q.key()).collect();
        let mut fourth = HashMap::new();
        for q in &quads {
            let [a, b, c, d] = q.key();
            if let Some(&prev) = fourth.get(&[a, b, c]) {
                if prev != d {
                    return Err(Error::Falsified(format!(
                        "two fourth harmonic points for ({a}, {b}, {c}) over {}",
                        ring.label()
                    )));
                }
            } else {
                fourth.insert([a, b, c], d);
            }
        }
        Ok(Geometry {
            ring: Ring::clone(ring),
            line,
            graph,
            components: comps,
            quads,
            quad_set,
            fourth,
        })
    }

    pub fn contains_harmonic(&self, key: [u32; 4]) -> bool {
        self.quad_set.contains(&key)
    }

    /// The unique completion of a mutually distant image triple, from the
    /// precomputed closure table.
    pub fn fourth_of(&self, a: PointId, b: PointId, c: PointId) -> Option<PointId> {
        self.fourth.get(&[a.0, b.0, c.0]).map(|&d| PointId(d))
    }
}

/// A total map between the point sets of two projective lines.
#[derive(Debug, Clone)]
pub struct PointMap {
    source: Arc<ProjectiveLine>,
    target: Arc<ProjectiveLine>,
    image: Vec<PointId>,
}

impl PointMap {
    pub fn new(
        source: Arc<ProjectiveLine>,
        target: Arc<ProjectiveLine>,
        image: Vec<PointId>,
    ) -> Result<PointMap> {
        if image.len() != source.len() {
            return Err(Error::InvalidArgument(format!(
                "image table has {} entries for a line with {} points",
                image.len(),
                source.len()
            )));
        }
        if image.iter().any(|q| q.index() >= target.len()) {
            return Err(Error::InvalidArgument("image point out of range".into()));
        }
        Ok(PointMap {
            source,
            target,
            image,
        })
    }

    pub fn identity(line: &Arc<ProjectiveLine>) -> PointMap {
        PointMap {
            source: Arc::clone(line),
            target: Arc::clone(line),
            image: line.ids().collect(),
        }
    }

    #[inline]
    pub fn apply(&self, p: PointId) -> PointId {
        self.image[p.index()]
    }

    pub fn image(&self) -> &[PointId] {
        &self.image
    }

    pub fn source(&self) -> &Arc<ProjectiveLine> {
        &self.source
    }

    pub fn target(&self) -> &Arc<ProjectiveLine> {
        &self.target
    }
}

impl PartialEq for PointMap {
    fn eq(&self, other: &Self) -> bool {
        self.image == other.image
    }
}

impl Eq for PointMap {}

/// A partial point map defined exactly on one component.
#[derive(Debug, Clone)]
pub struct ComponentMap {
    /// Domain points in ascending order.
    pub domain: Vec<PointId>,
    map: HashMap<u32, PointId>,
}

impl ComponentMap {
    pub(crate) fn new(mut entries: Vec<(PointId, PointId)>) -> ComponentMap {
        entries.sort_unstable_by_key(|(p, _)| *p);
        let domain = entries.iter().map(|(p, _)| *p).collect();
        let map = entries.into_iter().map(|(p, q)| (p.0, q)).collect();
        ComponentMap { domain, map }
    }

    pub fn apply(&self, p: PointId) -> Option<PointId> {
        self.map.get(&p.0).copied()
    }
}

/// The data of a Jordan-induced preserver: a Jordan homomorphism, a source
/// and a target basis (rows of the matrices), and the component the induced
/// map is defined on.
#[derive(Debug, Clone)]
pub struct JordanInducedData {
    pub alpha: JordanMap,
    pub source_basis: Mat2,
    pub target_basis: Mat2,
    pub component: Vec<PointId>,
}

impl JordanInducedData {
    /// Validates invertibility of both bases and that the first basis row
    /// generates a point of the component.
    pub fn new(
        alpha: JordanMap,
        source_basis: Mat2,
        target_basis: Mat2,
        component: Vec<PointId>,
        source_line: &ProjectiveLine,
    ) -> Result<JordanInducedData> {
        if !source_basis.is_invertible() || !target_basis.is_invertible() {
            return Err(Error::InvalidArgument(
                "basis matrix is not invertible".into(),
            ));
        }
        let p0 = source_line.canonical_point(source_basis.row(0))?;
        if !component.contains(&p0) {
            return Err(Error::InvalidArgument(
                "first basis row must generate a point of the component".into(),
            ));
        }
        Ok(JordanInducedData {
            alpha,
            source_basis,
            target_basis,
            component,
        })
    }
}
