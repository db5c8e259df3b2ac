//! 2×2 matrices over a finite ring, elementary-matrix words, and the
//! entrywise/contragredient lifts of additive maps.
//!
//! Invertibility is decided by bijectivity of the right row action
//! `(r₀, r₁) ↦ (r₀, r₁)·X` on R²; determinants are unsound over
//! noncommutative rings and are never used for this purpose.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::ring::{AddUnitalMap, Elem, Ring};

/// A 2×2 matrix with rows `(a, b)` and `(c, d)` stored row-major.
#[derive(Debug, Clone)]
pub struct Mat2 {
    ring: Ring,
    e: [Elem; 4],
}

impl PartialEq for Mat2 {
    fn eq(&self, other: &Self) -> bool {
        self.e == other.e && self.ring.same_ring(&other.ring)
    }
}

impl Eq for Mat2 {}

impl Mat2 {
    pub fn new(ring: &Ring, entries: [Elem; 4]) -> Result<Mat2> {
        if entries.iter().any(|x| x.index() >= ring.size()) {
            return Err(Error::InvalidArgument("matrix entry out of range".into()));
        }
        Ok(Mat2 {
            ring: Ring::clone(ring),
            e: entries,
        })
    }

    pub fn identity(ring: &Ring) -> Mat2 {
        Mat2 {
            ring: Ring::clone(ring),
            e: [ring.one(), ring.zero(), ring.zero(), ring.one()],
        }
    }

    /// The elementary generator E(t) = ((t, 1), (−1, 0)).
    pub fn elementary(ring: &Ring, t: Elem) -> Mat2 {
        Mat2 {
            ring: Ring::clone(ring),
            e: [t, ring.one(), ring.neg(ring.one()), ring.zero()],
        }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn entries(&self) -> [Elem; 4] {
        self.e
    }

    pub fn row(&self, i: usize) -> [Elem; 2] {
        [self.e[2 * i], self.e[2 * i + 1]]
    }

    pub fn from_rows(ring: &Ring, r0: [Elem; 2], r1: [Elem; 2]) -> Result<Mat2> {
        Mat2::new(ring, [r0[0], r0[1], r1[0], r1[1]])
    }

    /// Row-by-column product; left factors stay on the left, which matters
    /// over noncommutative rings.
    pub fn mul(&self, rhs: &Mat2) -> Result<Mat2> {
        if !self.ring.same_ring(&rhs.ring) {
            return Err(self.ring.mismatch(&rhs.ring));
        }
        let r = &self.ring;
        let a = &self.e;
        let b = &rhs.e;
        Ok(Mat2 {
            ring: Ring::clone(&self.ring),
            e: [
                r.add(r.mul(a[0], b[0]), r.mul(a[1], b[2])),
                r.add(r.mul(a[0], b[1]), r.mul(a[1], b[3])),
                r.add(r.mul(a[2], b[0]), r.mul(a[3], b[2])),
                r.add(r.mul(a[2], b[1]), r.mul(a[3], b[3])),
            ],
        })
    }

    pub fn transpose(&self) -> Mat2 {
        Mat2 {
            ring: Ring::clone(&self.ring),
            e: [self.e[0], self.e[2], self.e[1], self.e[3]],
        }
    }

    pub fn neg(&self) -> Mat2 {
        let r = &self.ring;
        Mat2 {
            ring: Ring::clone(&self.ring),
            e: [
                r.neg(self.e[0]),
                r.neg(self.e[1]),
                r.neg(self.e[2]),
                r.neg(self.e[3]),
            ],
        }
    }

    /// `ad − bc`. Only meaningful over commutative rings.
    pub fn det(&self) -> Elem {
        let r = &self.ring;
        r.sub(r.mul(self.e[0], self.e[3]), r.mul(self.e[1], self.e[2]))
    }

    /// Left scalar multiple `u·X`.
    pub fn scale(&self, u: Elem) -> Mat2 {
        let r = &self.ring;
        Mat2 {
            ring: Ring::clone(&self.ring),
            e: [
                r.mul(u, self.e[0]),
                r.mul(u, self.e[1]),
                r.mul(u, self.e[2]),
                r.mul(u, self.e[3]),
            ],
        }
    }

    /// Returns the two-sided inverse iff the row action `v ↦ v·X` on R² is
    /// bijective. The inverse rows are the preimages of (1, 0) and (0, 1).
    pub fn inverse(&self) -> Option<Mat2> {
        let r = &self.ring;
        let n = r.size();
        let mut seen = vec![false; n * n];
        let mut pre10: Option<[Elem; 2]> = None;
        let mut pre01: Option<[Elem; 2]> = None;
        for i0 in 0..n {
            for i1 in 0..n {
                let v = [Elem(i0 as u16), Elem(i1 as u16)];
                let im = vec_mat(r, v, self);
                let key = im[0].index() * n + im[1].index();
                if seen[key] {
                    return None;
                }
                seen[key] = true;
                if im[0] == r.one() && im[1] == r.zero() {
                    pre10 = Some(v);
                }
                if im[0] == r.zero() && im[1] == r.one() {
                    pre01 = Some(v);
                }
            }
        }
        let y = Mat2::from_rows(&self.ring, pre10?, pre01?).expect("rows in range");
        debug_assert_eq!(self.mul(&y).unwrap(), Mat2::identity(&self.ring));
        Some(y)
    }

    pub fn is_invertible(&self) -> bool {
        self.inverse().is_some()
    }
}

/// Row vector times matrix: `(r₀, r₁)·X`.
pub fn vec_mat(ring: &Ring, v: [Elem; 2], m: &Mat2) -> [Elem; 2] {
    let e = &m.e;
    [
        ring.add(ring.mul(v[0], e[0]), ring.mul(v[1], e[2])),
        ring.add(ring.mul(v[0], e[1]), ring.mul(v[1], e[3])),
    ]
}

pub fn vec_add(ring: &Ring, a: [Elem; 2], b: [Elem; 2]) -> [Elem; 2] {
    [ring.add(a[0], b[0]), ring.add(a[1], b[1])]
}

pub fn vec_sub(ring: &Ring, a: [Elem; 2], b: [Elem; 2]) -> [Elem; 2] {
    [ring.sub(a[0], b[0]), ring.sub(a[1], b[1])]
}

/// Left scalar multiple `u·v`.
pub fn vec_scale(ring: &Ring, u: Elem, v: [Elem; 2]) -> [Elem; 2] {
    [ring.mul(u, v[0]), ring.mul(u, v[1])]
}

/// A finite parameter sequence (t₁, ..., tₙ); evaluates to
/// E(t₁)·E(t₂)···E(tₙ), the empty word to the identity.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Word(pub Vec<Elem>);

impl Word {
    pub fn empty() -> Word {
        Word(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Applies an additive map letterwise, producing a word over the
    /// target ring.
    pub fn map(&self, alpha: &AddUnitalMap) -> Word {
        Word(self.0.iter().map(|&t| alpha.apply(t)).collect())
    }
}

/// Left-to-right product of elementary generators.
pub fn eval_word(ring: &Ring, word: &Word) -> Mat2 {
    let mut acc = Mat2::identity(ring);
    for &t in &word.0 {
        acc = acc.mul(&Mat2::elementary(ring, t)).expect("same ring");
    }
    acc
}

/// Report of the unit criterion for ((x, 1), (y, 1)) and its three-factor
/// triangular/diagonal factorization, checked over all pairs.
#[derive(Debug, Clone, Serialize)]
pub struct GlrStarReport {
    pub pairs_checked: usize,
    pub invertible_pairs: usize,
    pub ok: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failure: Option<(u16, u16)>,
}

/// For all x, y: ((x, 1), (y, 1)) is invertible iff x − y is a unit, and in
/// that case equals ((1,1),(0,1))·((x−y,0),(0,1))·((1,0),(y,1)).
pub fn verify_glrstar_factorization(ring: &Ring) -> GlrStarReport {
    let n = ring.size();
    let mut invertible_pairs = 0;
    for xi in 0..n {
        for yi in 0..n {
            let (x, y) = (Elem(xi as u16), Elem(yi as u16));
            let m = Mat2::new(ring, [x, ring.one(), y, ring.one()]).unwrap();
            let inv = m.is_invertible();
            let unit = ring.is_unit(ring.sub(x, y));
            if inv != unit {
                return GlrStarReport {
                    pairs_checked: xi * n + yi + 1,
                    invertible_pairs,
                    ok: false,
                    failure: Some((xi as u16, yi as u16)),
                };
            }
            if unit {
                invertible_pairs += 1;
                let upper =
                    Mat2::new(ring, [ring.one(), ring.one(), ring.zero(), ring.one()]).unwrap();
                let diag = Mat2::new(ring, [ring.sub(x, y), ring.zero(), ring.zero(), ring.one()])
                    .unwrap();
                let lower = Mat2::new(ring, [ring.one(), ring.zero(), y, ring.one()]).unwrap();
                let product = upper.mul(&diag).unwrap().mul(&lower).unwrap();
                if product != m {
                    return GlrStarReport {
                        pairs_checked: xi * n + yi + 1,
                        invertible_pairs,
                        ok: false,
                        failure: Some((xi as u16, yi as u16)),
                    };
                }
            }
        }
    }
    GlrStarReport {
        pairs_checked: n * n,
        invertible_pairs,
        ok: true,
        failure: None,
    }
}

/// Applies an additive unital map to each entry.
pub fn alpha_star(alpha: &AddUnitalMap, x: &Mat2) -> Result<Mat2> {
    if !x.ring.same_ring(alpha.source()) {
        return Err(x.ring.mismatch(alpha.source()));
    }
    let e = x.entries();
    Mat2::new(
        alpha.target(),
        [
            alpha.apply(e[0]),
            alpha.apply(e[1]),
            alpha.apply(e[2]),
            alpha.apply(e[3]),
        ],
    )
}

/// The contragredient lift E(0)⁻¹·((X⁻¹)ᵀ)^α·E(0); requires X invertible.
/// For an antihomomorphism α this is a group homomorphism GL₂(R) → GL₂(R′).
pub fn alpha_double_star(alpha: &AddUnitalMap, x: &Mat2) -> Result<Mat2> {
    if !x.ring.same_ring(alpha.source()) {
        return Err(x.ring.mismatch(alpha.source()));
    }
    let inv = x
        .inverse()
        .ok_or_else(|| Error::InvalidArgument("matrix is not invertible".into()))?;
    let lifted = alpha_star(alpha, &inv.transpose())?;
    let target = alpha.target();
    let e0 = Mat2::elementary(target, target.zero());
    let e0_inv = e0.inverse().expect("E(0) is invertible");
    e0_inv.mul(&lifted)?.mul(&e0)
}
