//! Additive unital maps between finite rings, Jordan homomorphisms, and
//! their exhaustive enumeration.

use std::ops::Deref;

use rayon::prelude::*;

use crate::caps::Caps;
use crate::error::{Error, Result};

use super::{Elem, FiniteRing, Ring};

/// A total map between two rings that is additive and sends 1 to 1.
#[derive(Debug, Clone)]
pub struct AddUnitalMap {
    source: Ring,
    target: Ring,
    image: Vec<Elem>,
}

impl AddUnitalMap {
    /// Validates additivity and unitality of the given image table.
    pub fn new(source: Ring, target: Ring, image: Vec<Elem>) -> Result<AddUnitalMap> {
        if image.len() != source.size() {
            return Err(Error::InvalidArgument(format!(
                "image table has {} entries for a ring of size {}",
                image.len(),
                source.size()
            )));
        }
        if image.iter().any(|y| y.index() >= target.size()) {
            return Err(Error::InvalidArgument("image element out of range".into()));
        }
        if image[0] != target.zero() {
            return Err(Error::InvalidArgument("map does not send 0 to 0".into()));
        }
        if image[1] != target.one() {
            return Err(Error::InvalidArgument("map does not send 1 to 1".into()));
        }
        for a in source.elems() {
            for b in source.elems() {
                let lhs = image[source.add(a, b).index()];
                let rhs = target.add(image[a.index()], image[b.index()]);
                if lhs != rhs {
                    return Err(Error::InvalidArgument(format!(
                        "map is not additive at ({}, {})",
                        a.0, b.0
                    )));
                }
            }
        }
        Ok(AddUnitalMap {
            source,
            target,
            image,
        })
    }

    pub fn identity(ring: &Ring) -> AddUnitalMap {
        AddUnitalMap {
            source: Ring::clone(ring),
            target: Ring::clone(ring),
            image: ring.elems().collect(),
        }
    }

    #[inline]
    pub fn apply(&self, x: Elem) -> Elem {
        self.image[x.index()]
    }

    pub fn source(&self) -> &Ring {
        &self.source
    }

    pub fn target(&self) -> &Ring {
        &self.target
    }

    pub fn image(&self) -> &[Elem] {
        &self.image
    }

    /// Exact predicate: (ab)^φ = a^φ b^φ for all pairs.
    pub fn is_ring_homomorphism(&self) -> bool {
        self.source.elems().all(|a| {
            self.source.elems().all(|b| {
                self.apply(self.source.mul(a, b)) == self.target.mul(self.apply(a), self.apply(b))
            })
        })
    }

    /// Exact predicate: (ab)^φ = b^φ a^φ for all pairs.
    pub fn is_antihomomorphism(&self) -> bool {
        self.source.elems().all(|a| {
            self.source.elems().all(|b| {
                self.apply(self.source.mul(a, b)) == self.target.mul(self.apply(b), self.apply(a))
            })
        })
    }

    /// Exact predicate: (xyx)^φ = x^φ y^φ x^φ for all pairs.
    pub fn is_jordan(&self) -> bool {
        self.source.elems().all(|x| {
            let fx = self.apply(x);
            self.source.elems().all(|y| {
                let lhs = self.apply(self.source.mul(self.source.mul(x, y), x));
                let rhs = self.target.mul(self.target.mul(fx, self.apply(y)), fx);
                lhs == rhs
            })
        })
    }

    /// The symmetrized-product identity (xy + yx)^φ = x^φ y^φ + y^φ x^φ.
    /// When 2 is a unit on both sides this is equivalent to the Jordan
    /// triple condition for additive unital maps.
    pub fn preserves_symmetrized_products(&self) -> bool {
        self.source.elems().all(|x| {
            let fx = self.apply(x);
            self.source.elems().all(|y| {
                let fy = self.apply(y);
                let lhs = self.apply(
                    self.source
                        .add(self.source.mul(x, y), self.source.mul(y, x)),
                );
                let rhs = self
                    .target
                    .add(self.target.mul(fx, fy), self.target.mul(fy, fx));
                lhs == rhs
            })
        })
    }
}

impl PartialEq for AddUnitalMap {
    fn eq(&self, other: &Self) -> bool {
        self.image == other.image
            && self.source.same_ring(&other.source)
            && self.target.same_ring(&other.target)
    }
}

impl Eq for AddUnitalMap {}

/// An [`AddUnitalMap`] that satisfies the Jordan triple condition
/// (xyx)^α = x^α y^α x^α; validated on construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JordanMap(AddUnitalMap);

impl JordanMap {
    pub fn new(map: AddUnitalMap) -> Result<JordanMap> {
        if !map.is_jordan() {
            return Err(Error::InvalidArgument(
                "map violates the Jordan triple condition".into(),
            ));
        }
        Ok(JordanMap(map))
    }

    pub fn identity(ring: &Ring) -> JordanMap {
        JordanMap(AddUnitalMap::identity(ring))
    }

    pub fn as_add_map(&self) -> &AddUnitalMap {
        &self.0
    }
}

impl Deref for JordanMap {
    type Target = AddUnitalMap;

    fn deref(&self) -> &AddUnitalMap {
        &self.0
    }
}

/// A direct-sum decomposition of the additive group of a ring:
/// every element is uniquely `Σ cᵢ gᵢ` with `0 ≤ cᵢ < orderᵢ`.
/// The first generator is always 1 (its additive order, the characteristic,
/// is maximal because char·x = (char·1)x = 0 for every x).
#[derive(Debug)]
pub struct AdditiveBasis {
    pub gens: Vec<Elem>,
    pub orders: Vec<usize>,
    coords: Vec<Vec<u16>>,
}

impl AdditiveBasis {
    pub fn coords(&self, x: Elem) -> &[u16] {
        &self.coords[x.index()]
    }
}

/// Computes an additive basis by the greedy maximal-order strategy with
/// brute-force representative correction.
pub fn additive_basis(ring: &FiniteRing) -> AdditiveBasis {
    let n = ring.size();
    let mut gens = vec![ring.one()];
    let mut orders = vec![ring.characteristic()];

    // span[x] = coordinate vector of x over the generators chosen so far.
    let mut span: Vec<Option<Vec<u16>>> = vec![None; n];
    let mut acc = ring.zero();
    for c in 0..ring.characteristic() {
        span[acc.index()] = Some(vec![c as u16]);
        acc = ring.add(acc, ring.one());
    }
    let mut span_count = ring.characteristic();

    while span_count < n {
        // Quotient order of g over the current span.
        let quotient_order = |g: Elem, span: &[Option<Vec<u16>>]| -> usize {
            let mut acc = g;
            let mut k = 1;
            while span[acc.index()].is_none() {
                acc = ring.add(acc, g);
                k += 1;
            }
            k
        };
        let mut best: Vec<(Elem, usize)> = Vec::new();
        let mut best_order = 0;
        for i in 0..n {
            let g = Elem(i as u16);
            if span[g.index()].is_some() {
                continue;
            }
            let m = quotient_order(g, &span);
            if m > best_order {
                best_order = m;
                best.clear();
            }
            if m == best_order {
                best.push((g, m));
            }
        }

        // Correct the representative so that m·g' = 0 exactly; this is what
        // makes the sum direct. The basis theorem guarantees a correction
        // exists for some candidate of maximal quotient order.
        let mut chosen = None;
        'candidates: for &(g, m) in &best {
            let mut mg = ring.zero();
            for _ in 0..m {
                mg = ring.add(mg, g);
            }
            for s in 0..n {
                let s = Elem(s as u16);
                if span[s.index()].is_none() {
                    continue;
                }
                let mut ms = ring.zero();
                for _ in 0..m {
                    ms = ring.add(ms, s);
                }
                if ring.add(mg, ms) == ring.zero() {
                    chosen = Some((ring.add(g, s), m));
                    break 'candidates;
                }
            }
        }
        let (g, m) = chosen.expect("finite abelian group admits a basis");

        // Extend the span with multiples of the new generator.
        let old: Vec<(Elem, Vec<u16>)> = (0..n)
            .filter_map(|i| span[i].clone().map(|c| (Elem(i as u16), c)))
            .collect();
        let mut mult = ring.zero();
        for c in 1..m {
            mult = ring.add(mult, g);
            for (base, coords) in &old {
                let x = ring.add(*base, mult);
                let mut cs = coords.clone();
                cs.push(c as u16);
                debug_assert!(span[x.index()].is_none(), "sum is not direct");
                span[x.index()] = Some(cs);
                span_count += 1;
            }
        }
        for (base, _) in &old {
            span[base.index()].as_mut().unwrap().push(0);
        }
        gens.push(g);
        orders.push(m);
    }

    let coords = span
        .into_iter()
        .map(|c| {
            let mut c = c.expect("span covers the ring");
            c.resize(gens.len(), 0);
            c
        })
        .collect();
    AdditiveBasis {
        gens,
        orders,
        coords,
    }
}

/// Enumerates the complete list of Jordan homomorphisms from `source` to
/// `target`, sorted by image table.
///
/// Images of the additive generators determine an additive map; the
/// generator 1 is pinned to 1, the remaining generator images range over the
/// elements annihilated by the generator order, and the Jordan triple
/// condition is the only filter. Raw |R'|^|R| enumeration is never attempted.
pub fn enumerate_jordan_homomorphisms(
    source: &Ring,
    target: &Ring,
    caps: &Caps,
) -> Result<Vec<JordanMap>> {
    let basis = additive_basis(source);
    if basis.gens.len() > caps.jordan_generators {
        return Err(Error::Resource(format!(
            "source additive group needs {} generators, cap is {}",
            basis.gens.len(),
            caps.jordan_generators
        )));
    }
    if target.size() > caps.jordan_target_size {
        return Err(Error::Resource(format!(
            "target has {} elements, cap is {}",
            target.size(),
            caps.jordan_target_size
        )));
    }

    // Additive order of every target element, for the divisibility filter.
    let t_order: Vec<usize> = target
        .elems()
        .map(|y| {
            let mut acc = y;
            let mut k = 1;
            while acc != target.zero() {
                acc = target.add(acc, y);
                k += 1;
            }
            k
        })
        .collect();

    // 1 maps to 1; the map is additive only if char(target) divides char(source).
    if !basis.orders[0].is_multiple_of(t_order[1]) {
        return Ok(Vec::new());
    }

    let free: Vec<Vec<Elem>> = basis.orders[1..]
        .iter()
        .map(|&ord| {
            target
                .elems()
                .filter(|y| ord % t_order[y.index()] == 0)
                .collect()
        })
        .collect();
    let total: u64 = free.iter().map(|c| c.len() as u64).product();

    let candidates: Vec<Vec<Elem>> = (0..total)
        .map(|mut idx| {
            let mut gen_images = vec![target.one()];
            for choices in &free {
                gen_images.push(choices[(idx % choices.len() as u64) as usize]);
                idx /= choices.len() as u64;
            }
            gen_images
        })
        .collect();

    let mut maps: Vec<JordanMap> = candidates
        .into_par_iter()
        .filter_map(|gen_images| {
            // Multiples of each generator image, then φ(x) = Σ cᵢ·yᵢ.
            let mult: Vec<Vec<Elem>> = gen_images
                .iter()
                .zip(&basis.orders)
                .map(|(&y, &ord)| {
                    let mut row = Vec::with_capacity(ord);
                    let mut acc = target.zero();
                    for _ in 0..ord {
                        row.push(acc);
                        acc = target.add(acc, y);
                    }
                    row
                })
                .collect();
            let image: Vec<Elem> = source
                .elems()
                .map(|x| {
                    basis
                        .coords(x)
                        .iter()
                        .enumerate()
                        .fold(target.zero(), |acc, (i, &c)| {
                            target.add(acc, mult[i][c as usize])
                        })
                })
                .collect();
            let map = AddUnitalMap {
                source: Ring::clone(source),
                target: Ring::clone(target),
                image,
            };
            if map.is_jordan() {
                debug_assert!(map.apply(source.one()) == target.one());
                Some(JordanMap(map))
            } else {
                None
            }
        })
        .collect();
    maps.sort_by(|a, b| a.image().cmp(b.image()));
    Ok(maps)
}
