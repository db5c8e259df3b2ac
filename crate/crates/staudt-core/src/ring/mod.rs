//! Table-based finite rings and the additive/Jordan maps between them.

mod axioms;
mod build;
mod conditions;
mod expr;
mod maps;
mod polyarith;

pub use axioms::{check_ring_axioms, AxiomCheck, AxiomReport};
pub use build::{build_ring, catalog, default_irreducible};
pub use conditions::{check_condition_five_units, check_two_unit, ConditionOutcome, Verdict};
pub use expr::{parse_ring_spec, RingExpr};
pub use maps::{
    additive_basis, enumerate_jordan_homomorphisms, AddUnitalMap, AdditiveBasis, JordanMap,
};

use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};

/// An element of a specific [`FiniteRing`], identified by its index.
///
/// Index 0 is the additive zero and index 1 the multiplicative unit element
/// in every ring produced by this module. An index is only meaningful
/// relative to its owning ring.
#[derive(Debug, Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct Elem(pub u16);

impl Elem {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// Shared handle to an immutable finite ring.
pub type Ring = Arc<FiniteRing>;

/// A finite ring given by dense operation tables.
///
/// Construction normalizes indices so that element 0 is the additive zero and
/// element 1 the multiplicative unit, computes negation and (two-sided)
/// inverse tables, and records the unit set. Tables are immutable afterwards
/// and safe to share across threads.
#[derive(Debug)]
pub struct FiniteRing {
    label: String,
    size: usize,
    add: Vec<u16>,
    mul: Vec<u16>,
    neg: Vec<u16>,
    inv: Vec<u16>, // u16::MAX where undefined
    unit: Vec<bool>,
    units: Vec<Elem>,
    characteristic: usize,
}

const NO_INV: u16 = u16::MAX;

impl FiniteRing {
    /// Builds a ring from raw `size × size` addition and multiplication
    /// tables (row-major, `table[a * size + b]`).
    ///
    /// The additive zero and the multiplicative identity are located by
    /// search and moved to indices 0 and 1. Full associativity is not
    /// verified here (that is [`check_ring_axioms`]' job); the cheap
    /// structural requirements are: a unique two-sided additive identity, a
    /// unique two-sided multiplicative identity distinct from zero, and an
    /// additive inverse for every element.
    pub fn from_tables(
        label: impl Into<String>,
        size: usize,
        add: Vec<u16>,
        mul: Vec<u16>,
    ) -> Result<FiniteRing> {
        let label = label.into();
        if size == 0 || size > u16::MAX as usize - 1 {
            return Err(Error::Semantic(format!(
                "ring size {size} out of representable range"
            )));
        }
        if add.len() != size * size || mul.len() != size * size {
            return Err(Error::Semantic(format!(
                "table size mismatch for ring of size {size}"
            )));
        }
        let in_range = |t: &[u16]| t.iter().all(|&v| (v as usize) < size);
        if !in_range(&add) || !in_range(&mul) {
            return Err(Error::Semantic("table entry out of range".into()));
        }

        let zero = find_identity(&add, size)
            .ok_or_else(|| Error::Semantic("no additive identity".into()))?;
        let one = find_identity(&mul, size)
            .ok_or_else(|| Error::Semantic("no multiplicative identity".into()))?;
        if zero == one {
            return Err(Error::Semantic(
                "1 = 0: the trivial ring is excluded".into(),
            ));
        }

        // Reindex so that zero -> 0 and one -> 1, preserving the relative
        // order of the remaining elements.
        let mut perm = vec![0u16; size];
        let mut next = 2u16;
        for (raw, slot) in perm.iter_mut().enumerate() {
            *slot = if raw == zero {
                0
            } else if raw == one {
                1
            } else {
                let p = next;
                next += 1;
                p
            };
        }
        let remap = |t: &[u16]| {
            let mut out = vec![0u16; size * size];
            for a in 0..size {
                for b in 0..size {
                    out[perm[a] as usize * size + perm[b] as usize] =
                        perm[t[a * size + b] as usize];
                }
            }
            out
        };
        let add = remap(&add);
        let mul = remap(&mul);

        let mut neg = vec![NO_INV; size];
        for a in 0..size {
            for b in 0..size {
                if add[a * size + b] == 0 && add[b * size + a] == 0 {
                    neg[a] = b as u16;
                    break;
                }
            }
            if neg[a] == NO_INV {
                return Err(Error::Semantic(format!(
                    "element {a} has no additive inverse"
                )));
            }
        }

        // Units by brute-force two-sided inverse search.
        let mut inv = vec![NO_INV; size];
        let mut unit = vec![false; size];
        let mut units = Vec::new();
        for u in 0..size {
            for v in 0..size {
                if mul[u * size + v] == 1 && mul[v * size + u] == 1 {
                    inv[u] = v as u16;
                    unit[u] = true;
                    units.push(Elem(u as u16));
                    break;
                }
            }
        }

        // Characteristic = additive order of 1.
        let mut characteristic = 1;
        let mut acc = 1u16;
        while acc != 0 {
            acc = add[acc as usize * size + 1];
            characteristic += 1;
            if characteristic > size + 1 {
                return Err(Error::Semantic(
                    "additive order of 1 exceeds ring size".into(),
                ));
            }
        }

        let ring = FiniteRing {
            label,
            size,
            add,
            mul,
            neg,
            inv,
            unit,
            units,
            characteristic,
        };
        ring.validate_units()?;
        Ok(ring)
    }

    fn validate_units(&self) -> Result<()> {
        if !self.unit[1] {
            return Err(Error::Semantic("1 is not a unit".into()));
        }
        for &u in &self.units {
            let iu = self.inv(u).expect("unit has inverse");
            if !self.is_unit(iu) {
                return Err(Error::Semantic(format!(
                    "inverse of unit {} is not a unit",
                    u.0
                )));
            }
            for &v in &self.units {
                if !self.is_unit(self.mul(u, v)) {
                    return Err(Error::Semantic(format!(
                        "unit set not closed under multiplication at ({}, {})",
                        u.0, v.0
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    #[inline]
    pub fn size(&self) -> usize {
        self.size
    }

    #[inline]
    pub fn zero(&self) -> Elem {
        Elem(0)
    }

    #[inline]
    pub fn one(&self) -> Elem {
        Elem(1)
    }

    /// The additive order of 1.
    pub fn characteristic(&self) -> usize {
        self.characteristic
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        Elem(self.add[a.index() * self.size + b.index()])
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        Elem(self.mul[a.index() * self.size + b.index()])
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        Elem(self.neg[a.index()])
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn is_unit(&self, a: Elem) -> bool {
        self.unit[a.index()]
    }

    /// Two-sided inverse, defined exactly on the unit set.
    #[inline]
    pub fn inv(&self, a: Elem) -> Option<Elem> {
        match self.inv[a.index()] {
            NO_INV => None,
            v => Some(Elem(v)),
        }
    }

    /// Units in ascending index order.
    pub fn units(&self) -> &[Elem] {
        &self.units
    }

    pub fn elems(&self) -> impl Iterator<Item = Elem> + '_ {
        (0..self.size as u16).map(Elem)
    }

    /// `n · 1` for a small integer n.
    pub fn int(&self, n: i64) -> Elem {
        let mut acc = Elem(0);
        for _ in 0..n.unsigned_abs() {
            acc = self.add(acc, Elem(1));
        }
        if n < 0 {
            acc = self.neg(acc);
        }
        acc
    }

    pub(crate) fn same_ring(&self, other: &FiniteRing) -> bool {
        std::ptr::eq(self, other) || (self.label == other.label && self.size == other.size)
    }

    pub(crate) fn mismatch(&self, other: &FiniteRing) -> Error {
        Error::RingMismatch {
            left: self.label.clone(),
            right: other.label.clone(),
        }
    }
}

fn find_identity(table: &[u16], size: usize) -> Option<usize> {
    (0..size).find(|&e| {
        (0..size).all(|x| table[e * size + x] == x as u16 && table[x * size + e] == x as u16)
    })
}
