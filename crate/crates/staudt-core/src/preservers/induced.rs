//! Harmonicity preservers built from Jordan, homomorphism, and
//! antihomomorphism data.

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::group::{GeneratedGroup, Gl2};
use crate::mat2::{alpha_star, vec_mat, Mat2, Word};
use crate::projline::{PointId, WordComponent};
use crate::ring::{AddUnitalMap, Elem, Ring};
use crate::rng::SplitMix64;

use super::{ComponentMap, Geometry, JordanInducedData, PointMap};

/// `(1, 0)·E(t₁)···E(tₙ)` by folding the row action of each generator.
pub(crate) fn row_of_word(ring: &Ring, word: &Word) -> [Elem; 2] {
    let mut row = [ring.one(), ring.zero()];
    for &t in &word.0 {
        // (r₀, r₁)·E(t) = (r₀t − r₁, r₀).
        row = [ring.sub(ring.mul(row[0], t), row[1]), row[0]];
    }
    row
}

/// The Jordan-induced partial map μ: each component point is written as
/// (1, 0)·E(T) in coordinates with respect to the source basis, the word is
/// pushed through α letterwise, and (1, 0)·E(T^α) is read back through the
/// target basis.
pub fn mu_from_jordan(
    data: &JordanInducedData,
    src: &Geometry,
    tgt: &Geometry,
    src_words: &WordComponent,
) -> Result<ComponentMap> {
    if !data.alpha.source().same_ring(&src.ring) {
        return Err(src.ring.mismatch(data.alpha.source()));
    }
    if !data.alpha.target().same_ring(&tgt.ring) {
        return Err(tgt.ring.mismatch(data.alpha.target()));
    }
    let basis_inv = data
        .source_basis
        .inverse()
        .ok_or_else(|| Error::InvalidArgument("source basis is not invertible".into()))?;

    let mut entries = Vec::new();
    for p in src.line.ids() {
        let coord_pt = src
            .line
            .lookup(vec_mat(&src.ring, src.line.point(p).rep, &basis_inv))
            .expect("coordinates of an admissible pair are admissible");
        if let Some(word) = src_words.witness_word(coord_pt) {
            let image_row = row_of_word(&tgt.ring, &word.map(&data.alpha));
            let std_row = vec_mat(&tgt.ring, image_row, &data.target_basis);
            let q = tgt
                .line
                .lookup(std_row)
                .expect("first rows of E₂ elements stay admissible through a basis");
            entries.push((p, q));
        }
    }
    let map = ComponentMap::new(entries);
    if map.domain != data.component {
        return Err(Error::InvalidArgument(
            "component does not match the word component of the basis".into(),
        ));
    }
    Ok(map)
}

/// Outcome of the well-definedness verification for a Jordan-induced map.
#[derive(Debug, Clone)]
pub struct WellDefinedOutcome {
    pub ok: bool,
    pub word_checks: usize,
    pub random_checks: usize,
    pub quad_checks: usize,
    /// Two words reaching one point whose images disagree, when not ok.
    pub witness: Option<(Word, Word)>,
    /// A component quadruple whose image fails to be harmonic, when not ok.
    pub harmonic_violation: Option<[u32; 4]>,
}

/// Checks that the point image is independent of the witness word (over the
/// whole E₂ element set plus a seeded randomized pass of bounded-length
/// words) and that μ preserves every harmonic quadruple of its component.
pub fn verify_mu_well_defined(
    data: &JordanInducedData,
    src: &Geometry,
    tgt: &Geometry,
    e2: &GeneratedGroup,
    src_words: &WordComponent,
    caps: &Caps,
    seed: u64,
) -> Result<WellDefinedOutcome> {
    let mu = mu_from_jordan(data, src, tgt, src_words)?;
    let mut outcome = WellDefinedOutcome {
        ok: true,
        word_checks: 0,
        random_checks: 0,
        quad_checks: 0,
        witness: None,
        harmonic_violation: None,
    };

    let check_word = |word: &Word, outcome: &mut WellDefinedOutcome| {
        let coord_row = row_of_word(&src.ring, word);
        let coord_pt = src
            .line
            .lookup(coord_row)
            .expect("(1,0)·E(T) is admissible");
        let p = src
            .line
            .lookup(vec_mat(
                &src.ring,
                src.line.point(coord_pt).rep,
                &data.source_basis,
            ))
            .expect("basis transport preserves admissibility");
        let image_row = row_of_word(&tgt.ring, &word.map(&data.alpha));
        let q = tgt
            .line
            .lookup(vec_mat(&tgt.ring, image_row, &data.target_basis))
            .expect("image row stays admissible");
        if mu.apply(p) != Some(q) {
            outcome.ok = false;
            if outcome.witness.is_none() {
                let canonical = src_words
                    .witness_word(coord_pt)
                    .cloned()
                    .unwrap_or_else(Word::empty);
                outcome.witness = Some((canonical, word.clone()));
            }
        }
    };

    // Every E₂ element re-derives the image of its first-row point through
    // its own witness word.
    for pos in 0..e2.len() {
        let word = e2.witness_word(pos).expect("E₂ carries witnesses");
        check_word(&word, &mut outcome);
        outcome.word_checks += 1;
    }

    // Randomized pass over words up to the configured length.
    let mut rng = SplitMix64::new(seed);
    let n = src.ring.size();
    for _ in 0..caps.random_word_count {
        let len = rng.below(caps.random_word_len + 1);
        let word = Word((0..len).map(|_| Elem(rng.below(n) as u16)).collect());
        check_word(&word, &mut outcome);
        outcome.random_checks += 1;
    }

    // Harmonicity preservation on the component, exhaustively.
    for quad in &src.quads {
        let images: Option<Vec<PointId>> = quad.0.iter().map(|&p| mu.apply(p)).collect();
        if let Some(images) = images {
            outcome.quad_checks += 1;
            let key = [images[0].0, images[1].0, images[2].0, images[3].0];
            if !tgt.contains_harmonic(key) {
                outcome.ok = false;
                outcome.harmonic_violation.get_or_insert(quad.key());
            }
        }
    }
    Ok(outcome)
}

/// Total preserver from a ring homomorphism: coordinates are pushed through
/// α entrywise. Restricted to any component this agrees with
/// [`mu_from_jordan`].
pub fn lambda_from_hom(
    alpha: &AddUnitalMap,
    source_basis: &Mat2,
    target_basis: &Mat2,
    src: &Geometry,
    tgt: &Geometry,
) -> Result<PointMap> {
    if !alpha.is_ring_homomorphism() {
        return Err(Error::InvalidArgument(
            "lambda construction requires a ring homomorphism".into(),
        ));
    }
    let basis_inv = source_basis
        .inverse()
        .ok_or_else(|| Error::InvalidArgument("source basis is not invertible".into()))?;
    if !target_basis.is_invertible() {
        return Err(Error::InvalidArgument(
            "target basis is not invertible".into(),
        ));
    }
    let mut image = Vec::with_capacity(src.line.len());
    for p in src.line.ids() {
        let x = vec_mat(&src.ring, src.line.point(p).rep, &basis_inv);
        let mapped = [alpha.apply(x[0]), alpha.apply(x[1])];
        let std_row = vec_mat(&tgt.ring, mapped, target_basis);
        let q = tgt.line.lookup(std_row).ok_or_else(|| {
            Error::Falsified(format!(
                "entrywise image of admissible ({}, {}) is not admissible",
                x[0].0, x[1].0
            ))
        })?;
        image.push(q);
    }
    PointMap::new(src.line.clone(), tgt.line.clone(), image)
}

/// Total preserver from an antihomomorphism via the contragredient lift:
/// the image of a point generated by the first row of X ∈ GL₂ is generated
/// by the first row of X^{α**}. Choice independence over all X per point is
/// verified; a dependence falsifies the construction and aborts.
pub fn delta_from_antihom(
    alpha: &AddUnitalMap,
    source_basis: &Mat2,
    target_basis: &Mat2,
    src: &Geometry,
    tgt: &Geometry,
    gl2: &Gl2,
) -> Result<PointMap> {
    if !alpha.is_antihomomorphism() {
        return Err(Error::InvalidArgument(
            "delta construction requires an antihomomorphism".into(),
        ));
    }
    if !source_basis.is_invertible() || !target_basis.is_invertible() {
        return Err(Error::InvalidArgument(
            "basis matrix is not invertible".into(),
        ));
    }
    let e0 = Mat2::elementary(&tgt.ring, tgt.ring.zero());
    let e0_inv = e0.inverse().expect("E(0) is invertible");

    let mut image: Vec<Option<PointId>> = vec![None; src.line.len()];
    for pos in 0..gl2.len() {
        let x = gl2.matrix(pos);
        let coord_pt = src.line.lookup(x.row(0)).expect("row of invertible matrix");
        let p = src
            .line
            .lookup(vec_mat(
                &src.ring,
                src.line.point(coord_pt).rep,
                source_basis,
            ))
            .expect("basis transport preserves admissibility");
        // α**(X) = E(0)⁻¹·((X⁻¹)ᵀ)^α·E(0), with the precomputed inverse.
        let lifted = alpha_star(alpha, &gl2.inverse_matrix(pos).transpose())?;
        let conj = e0_inv.mul(&lifted)?.mul(&e0)?;
        let q_row = vec_mat(&tgt.ring, conj.row(0), target_basis);
        let q = tgt
            .line
            .lookup(q_row)
            .ok_or_else(|| Error::Falsified("contragredient image row is not admissible".into()))?;
        match image[p.index()] {
            None => image[p.index()] = Some(q),
            Some(prev) if prev == q => {}
            Some(prev) => {
                return Err(Error::Falsified(format!(
                    "delta is choice-dependent at point {}: {} vs {}",
                    p.0, prev.0, q.0
                )));
            }
        }
    }
    let image: Vec<PointId> = image
        .into_iter()
        .map(|q| q.expect("every point is the first row of some invertible matrix"))
        .collect();
    PointMap::new(src.line.clone(), tgt.line.clone(), image)
}

/// One step of the length-two-word description: pairs the source point
/// R((t₁t₂ − 1)a₀ + t₁a₁) with the target point built from the α-images.
/// The source coordinate row is (1, 0)·E(t₁)·E(t₂), hence always admissible.
pub fn bartolone_image(
    data: &JordanInducedData,
    src: &Geometry,
    tgt: &Geometry,
    t1: Elem,
    t2: Elem,
) -> Result<(PointId, PointId)> {
    let r = &src.ring;
    let x = [r.sub(r.mul(t1, t2), r.one()), t1];
    let p = src
        .line
        .lookup(vec_mat(r, x, &data.source_basis))
        .ok_or_else(|| {
            Error::Falsified(format!(
                "source pair for (t₁, t₂) = ({}, {}) is not admissible",
                t1.0, t2.0
            ))
        })?;
    let r2 = &tgt.ring;
    let (s1, s2) = (data.alpha.apply(t1), data.alpha.apply(t2));
    let y = [r2.sub(r2.mul(s1, s2), r2.one()), s1];
    let q = tgt
        .line
        .lookup(vec_mat(r2, y, &data.target_basis))
        .ok_or_else(|| Error::Falsified("target pair is not admissible".into()))?;
    Ok((p, q))
}

/// Coverage and agreement of the (t₁, t₂) sweep against μ.
#[derive(Debug, Clone)]
pub struct BartoloneSweep {
    /// Distinct source points reached, ascending.
    pub covered: Vec<PointId>,
    pub total_points: usize,
    pub agrees_with_mu: bool,
    pub disagreement: Option<(PointId, PointId, PointId)>,
}

impl BartoloneSweep {
    pub fn covers_line(&self) -> bool {
        self.covered.len() == self.total_points
    }
}

pub fn bartolone_sweep(
    data: &JordanInducedData,
    src: &Geometry,
    tgt: &Geometry,
    src_words: &WordComponent,
) -> Result<BartoloneSweep> {
    let mu = mu_from_jordan(data, src, tgt, src_words)?;
    let mut covered = Vec::new();
    let mut agrees = true;
    let mut disagreement = None;
    for t1 in src.ring.elems() {
        for t2 in src.ring.elems() {
            let (p, q) = bartolone_image(data, src, tgt, t1, t2)?;
            covered.push(p);
            match mu.apply(p) {
                Some(expected) if expected == q => {}
                other => {
                    agrees = false;
                    disagreement.get_or_insert((p, q, other.unwrap_or(PointId(u32::MAX))));
                }
            }
        }
    }
    covered.sort_unstable();
    covered.dedup();
    Ok(BartoloneSweep {
        covered,
        total_points: src.line.len(),
        agrees_with_mu: agrees,
        disagreement,
    })
}
