//! Exhaustive classification of harmonicity preservers between two lines.
//!
//! The search assigns point images in a fixed order (a harmonic quadruple
//! first, then by decreasing distant-graph degree), prunes on distant
//! preservation, and eagerly forces the image of the fourth harmonic point of
//! any three assigned mutually distant points. Both pruning rules are
//! necessary conditions for harmonicity preservers, so no preserver is ever
//! cut; every leaf is still verified against the full quadruple list before
//! being accepted. Candidate maps are never assumed injective or surjective.

use std::cmp::Reverse;
use std::sync::Arc;

use rayon::prelude::*;

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::projline::{DistantGraph, PointId};

use super::{Geometry, PointMap};

/// Distant preservation: p △ q implies image(p) △ image(q).
pub fn is_distant_preserving(
    map: &PointMap,
    src_graph: &DistantGraph,
    tgt_graph: &DistantGraph,
) -> bool {
    let n = map.source().len() as u32;
    (0..n).all(|i| {
        (i + 1..n).all(|j| {
            let (p, q) = (PointId(i), PointId(j));
            !src_graph.are_adjacent(p, q) || tgt_graph.are_adjacent(map.apply(p), map.apply(q))
        })
    })
}

/// Exact predicate: every harmonic quadruple of the source maps to a
/// harmonic quadruple of the target.
pub fn is_harmonicity_preserver(map: &PointMap, src: &Geometry, tgt: &Geometry) -> bool {
    src.quads.iter().all(|quad| {
        let [a, b, c, d] = quad.0;
        tgt.contains_harmonic([
            map.apply(a).0,
            map.apply(b).0,
            map.apply(c).0,
            map.apply(d).0,
        ])
    })
}

/// The classification output: the complete, image-sorted preserver list
/// plus search metadata.
#[derive(Debug)]
pub struct ClassificationResult {
    pub preservers: Vec<PointMap>,
    pub nodes_visited: u64,
    pub elapsed_ms: u128,
}

struct Search<'a> {
    src: &'a Geometry,
    tgt: &'a Geometry,
    order: Vec<u32>,
    quads_of_point: Vec<Vec<u32>>,
    image: Vec<Option<PointId>>,
    assigned: Vec<u32>,
    nodes: u64,
    budget: u64,
    results: Vec<Vec<PointId>>,
}

impl<'a> Search<'a> {
    fn undo(&mut self, mark: usize) {
        while self.assigned.len() > mark {
            let p = self.assigned.pop().unwrap();
            self.image[p as usize] = None;
        }
    }

    /// Assigns image(p) = v, propagates forced fourth-harmonic images, and
    /// returns the trail mark for undo; `None` signals a conflict (state is
    /// already rolled back).
    fn assign(&mut self, p: u32, v: PointId) -> Option<usize> {
        let mark = self.assigned.len();
        let mut work = vec![(p, v)];
        while let Some((p, v)) = work.pop() {
            if let Some(cur) = self.image[p as usize] {
                if cur != v {
                    self.undo(mark);
                    return None;
                }
                continue;
            }
            // Distant preservation against everything assigned so far.
            for &q in &self.assigned {
                if self.src.graph.are_adjacent(PointId(p), PointId(q)) {
                    let iq = self.image[q as usize].expect("assigned");
                    if !self.tgt.graph.are_adjacent(v, iq) {
                        self.undo(mark);
                        return None;
                    }
                }
            }
            self.image[p as usize] = Some(v);
            self.assigned.push(p);
            self.nodes += 1;
            // Any quadruple whose first three images are now fixed forces
            // the fourth.
            for &qi in &self.quads_of_point[p as usize] {
                let [a, b, c, d] = self.src.quads[qi as usize].0;
                let (ia, ib, ic) = match (
                    self.image[a.index()],
                    self.image[b.index()],
                    self.image[c.index()],
                ) {
                    (Some(ia), Some(ib), Some(ic)) => (ia, ib, ic),
                    _ => continue,
                };
                let forced = self
                    .tgt
                    .fourth_of(ia, ib, ic)
                    .expect("closure table covers mutually distant triples");
                match self.image[d.index()] {
                    Some(id) if id == forced => {}
                    Some(_) => {
                        self.undo(mark);
                        return None;
                    }
                    None => work.push((d.0, forced)),
                }
            }
        }
        Some(mark)
    }

    fn run(&mut self) -> Result<()> {
        if self.nodes >= self.budget {
            return Err(Error::Resource(format!(
                "classification search exceeded node budget {}",
                self.budget
            )));
        }
        let next = self
            .order
            .iter()
            .copied()
            .find(|&p| self.image[p as usize].is_none());
        let Some(p) = next else {
            let image: Vec<PointId> = self
                .image
                .iter()
                .map(|q| q.expect("leaf is total"))
                .collect();
            let map = PointMap {
                source: Arc::clone(&self.src.line),
                target: Arc::clone(&self.tgt.line),
                image,
            };
            if is_harmonicity_preserver(&map, self.src, self.tgt) {
                self.results.push(map.image);
            }
            return Ok(());
        };
        for cand in 0..self.tgt.line.len() as u32 {
            if let Some(mark) = self.assign(p, PointId(cand)) {
                self.run()?;
                self.undo(mark);
            }
        }
        Ok(())
    }
}

/// Backtracking enumeration of all harmonicity preservers from the source
/// line to the target line, sorted by image table.
pub fn classify_preservers(
    src: &Geometry,
    tgt: &Geometry,
    caps: &Caps,
) -> Result<ClassificationResult> {
    let started = std::time::Instant::now();
    let n = src.line.len();

    let mut order: Vec<u32> = Vec::with_capacity(n);
    if let Some(seed_quad) = src.quads.first() {
        for p in seed_quad.0 {
            if !order.contains(&p.0) {
                order.push(p.0);
            }
        }
    }
    let mut rest: Vec<u32> = (0..n as u32).filter(|p| !order.contains(p)).collect();
    rest.sort_by_key(|&p| (Reverse(src.graph.degree(PointId(p))), p));
    order.extend(rest);

    let mut quads_of_point = vec![Vec::new(); n];
    for (qi, quad) in src.quads.iter().enumerate() {
        for p in quad.0 {
            let list = &mut quads_of_point[p.index()];
            if list.last() != Some(&(qi as u32)) {
                list.push(qi as u32);
            }
        }
    }

    let mut search = Search {
        src,
        tgt,
        order,
        quads_of_point,
        image: vec![None; n],
        assigned: Vec::with_capacity(n),
        nodes: 0,
        budget: caps.node_budget,
        results: Vec::new(),
    };
    search.run()?;

    let mut images = std::mem::take(&mut search.results);
    images.sort_unstable();
    let preservers = images
        .into_iter()
        .map(|image| PointMap {
            source: Arc::clone(&src.line),
            target: Arc::clone(&tgt.line),
            image,
        })
        .collect();
    Ok(ClassificationResult {
        preservers,
        nodes_visited: search.nodes,
        elapsed_ms: started.elapsed().as_millis(),
    })
}

/// The raw-filter oracle: every one of the |target|^|source| total maps,
/// filtered by the exact predicate. Feasible only for tiny lines; the
/// classification search must reproduce its output exactly.
pub fn classify_by_raw_filter(
    src: &Geometry,
    tgt: &Geometry,
    caps: &Caps,
) -> Result<Vec<PointMap>> {
    let n = src.line.len();
    let t = tgt.line.len() as u64;
    let total = t
        .checked_pow(n as u32)
        .filter(|&total| total <= caps.oracle_maps)
        .ok_or_else(|| {
            Error::Resource(format!(
                "raw filter over {t}^{n} maps exceeds oracle cap {}",
                caps.oracle_maps
            ))
        })?;
    let images: Vec<Vec<PointId>> = (0..total)
        .into_par_iter()
        .filter_map(|code| {
            let mut image = Vec::with_capacity(n);
            let mut rest = code;
            for _ in 0..n {
                image.push(PointId((rest % t) as u32));
                rest /= t;
            }
            let map = PointMap {
                source: Arc::clone(&src.line),
                target: Arc::clone(&tgt.line),
                image,
            };
            is_harmonicity_preserver(&map, src, tgt).then_some(map.image)
        })
        .collect();
    let mut images = images;
    images.sort_unstable();
    Ok(images
        .into_iter()
        .map(|image| PointMap {
            source: Arc::clone(&src.line),
            target: Arc::clone(&tgt.line),
            image,
        })
        .collect())
}
