//! Generation of E₂(R), GE₂(R), and GL₂(R) with word certificates.
//!
//! E₂ is grown by breadth-first search from the identity under right
//! multiplication by the generators E(t), recording one shortest witness word
//! per element; ties are broken toward the lexicographically least word.
//! Because the frontier is processed in word order and generators in
//! ascending parameter order, the first discovery of an element carries
//! exactly that witness, and the whole construction is deterministic.

use std::collections::HashMap;

use rayon::prelude::*;

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::mat2::{Mat2, Word};
use crate::ring::{Elem, Ring};

/// Packs matrix entries into a base-|R| integer key.
pub fn pack(n: usize, e: [Elem; 4]) -> u64 {
    let n = n as u64;
    ((e[0].index() as u64 * n + e[1].index() as u64) * n + e[2].index() as u64) * n
        + e[3].index() as u64
}

pub fn unpack(n: usize, key: u64) -> [Elem; 4] {
    let n = n as u64;
    [
        Elem((key / (n * n * n)) as u16),
        Elem((key / (n * n) % n) as u16),
        Elem((key / n % n) as u16),
        Elem((key % n) as u16),
    ]
}

const ROOT: u32 = u32::MAX;

/// A subgroup of GL₂(R) generated by breadth-first closure, with one witness
/// word per element when grown from the elementary generators.
#[derive(Debug)]
pub struct GeneratedGroup {
    ring: Ring,
    /// Packed matrix keys in discovery order; index 0 is the identity.
    elements: Vec<u64>,
    index: HashMap<u64, u32>,
    /// Backpointers (parent position, generator letter); only for E₂.
    parents: Option<Vec<(u32, Elem)>>,
    pub description: &'static str,
}

impl GeneratedGroup {
    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Packed keys in discovery order.
    pub fn keys(&self) -> &[u64] {
        &self.elements
    }

    pub fn contains_key(&self, key: u64) -> bool {
        self.index.contains_key(&key)
    }

    pub fn position(&self, key: u64) -> Option<usize> {
        self.index.get(&key).map(|&i| i as usize)
    }

    pub fn matrix(&self, pos: usize) -> Mat2 {
        Mat2::new(&self.ring, unpack(self.ring.size(), self.elements[pos])).expect("valid key")
    }

    /// The stored shortest witness word of the element at `pos`
    /// (lexicographically least among the shortest).
    pub fn witness_word(&self, pos: usize) -> Option<Word> {
        let parents = self.parents.as_ref()?;
        let mut letters = Vec::new();
        let mut cur = pos as u32;
        while cur != 0 {
            let (parent, letter) = parents[cur as usize];
            letters.push(letter);
            cur = parent;
        }
        letters.reverse();
        Some(Word(letters))
    }
}

fn right_mul_by_elementary(ring: &Ring, e: [Elem; 4], t: Elem) -> [Elem; 4] {
    // Each row (r0, r1) maps to (r0·t − r1, r0) under right multiplication
    // by E(t) = ((t, 1), (−1, 0)).
    [
        ring.sub(ring.mul(e[0], t), e[1]),
        e[0],
        ring.sub(ring.mul(e[2], t), e[3]),
        e[2],
    ]
}

/// E₂(R): closure of the identity under right multiplication by all E(t),
/// with shortest witness words. Consults the cache directory when one is
/// configured; the cache stores the exact discovery-order arrays, so cached
/// and fresh results are identical.
pub fn generate_e2(ring: &Ring, caps: &Caps) -> Result<GeneratedGroup> {
    if let Some(dir) = &caps.cache_dir {
        if let Some(group) = cache::load(dir, ring, "E2") {
            return Ok(group);
        }
        let group = generate_e2_fresh(ring, caps)?;
        cache::store(dir, ring, "E2", &group);
        return Ok(group);
    }
    generate_e2_fresh(ring, caps)
}

fn generate_e2_fresh(ring: &Ring, caps: &Caps) -> Result<GeneratedGroup> {
    let n = ring.size();
    let identity = pack(n, Mat2::identity(ring).entries());
    let mut elements = vec![identity];
    let mut index = HashMap::from([(identity, 0u32)]);
    let mut parents = vec![(ROOT, ring.zero())];
    let mut head = 0usize;
    while head < elements.len() {
        let cur = unpack(n, elements[head]);
        for t in ring.elems() {
            let child = pack(n, right_mul_by_elementary(ring, cur, t));
            if let std::collections::hash_map::Entry::Vacant(slot) = index.entry(child) {
                if elements.len() >= caps.group_size {
                    return Err(Error::Resource(format!(
                        "E₂({}) exceeds group size cap {}",
                        ring.label(),
                        caps.group_size
                    )));
                }
                slot.insert(elements.len() as u32);
                elements.push(child);
                parents.push((head as u32, t));
            }
        }
        head += 1;
    }
    Ok(GeneratedGroup {
        ring: Ring::clone(ring),
        elements,
        index,
        parents: Some(parents),
        description: "E2",
    })
}

/// GE₂(R): closure of the identity under right multiplication by all E(t)
/// and all invertible diagonal matrices diag(u, v).
pub fn generate_ge2(ring: &Ring, caps: &Caps) -> Result<GeneratedGroup> {
    let n = ring.size();
    let identity = pack(n, Mat2::identity(ring).entries());
    let mut elements = vec![identity];
    let mut index = HashMap::from([(identity, 0u32)]);
    let diagonals: Vec<(Elem, Elem)> = ring
        .units()
        .iter()
        .flat_map(|&u| ring.units().iter().map(move |&v| (u, v)))
        .collect();
    let mut head = 0usize;
    while head < elements.len() {
        let cur = unpack(n, elements[head]);
        let push = |child: [Elem; 4],
                    elements: &mut Vec<u64>,
                    index: &mut HashMap<u64, u32>|
         -> Result<()> {
            let key = pack(n, child);
            if let std::collections::hash_map::Entry::Vacant(slot) = index.entry(key) {
                if elements.len() >= caps.group_size {
                    return Err(Error::Resource(format!(
                        "GE₂({}) exceeds group size cap {}",
                        ring.label(),
                        caps.group_size
                    )));
                }
                slot.insert(elements.len() as u32);
                elements.push(key);
            }
            Ok(())
        };
        for t in ring.elems() {
            push(
                right_mul_by_elementary(ring, cur, t),
                &mut elements,
                &mut index,
            )?;
        }
        for &(u, v) in &diagonals {
            // Right multiplication by diag(u, v) scales the columns.
            let child = [
                ring.mul(cur[0], u),
                ring.mul(cur[1], v),
                ring.mul(cur[2], u),
                ring.mul(cur[3], v),
            ];
            push(child, &mut elements, &mut index)?;
        }
        head += 1;
    }
    Ok(GeneratedGroup {
        ring: Ring::clone(ring),
        elements,
        index,
        parents: None,
        description: "GE2",
    })
}

/// The full GL₂(R), enumerated by scanning all |R|⁴ matrices, together with
/// the inverse of each element.
#[derive(Debug)]
pub struct Gl2 {
    ring: Ring,
    /// Packed keys in ascending order.
    pub elements: Vec<u64>,
    /// Packed inverse key for each element, parallel to `elements`.
    pub inverses: Vec<u64>,
    index: HashMap<u64, u32>,
}

impl Gl2 {
    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains_key(&self, key: u64) -> bool {
        self.index.contains_key(&key)
    }

    pub fn matrix(&self, pos: usize) -> Mat2 {
        Mat2::new(&self.ring, unpack(self.ring.size(), self.elements[pos])).expect("valid key")
    }

    pub fn inverse_matrix(&self, pos: usize) -> Mat2 {
        Mat2::new(&self.ring, unpack(self.ring.size(), self.inverses[pos])).expect("valid key")
    }
}

pub fn enumerate_gl2(ring: &Ring, caps: &Caps) -> Result<Gl2> {
    let n = ring.size();
    if n > caps.gl2_ring_size {
        return Err(Error::Resource(format!(
            "GL₂ enumeration over {} ({} elements) exceeds ring size cap {}",
            ring.label(),
            n,
            caps.gl2_ring_size
        )));
    }
    let total = (n as u64).pow(4);
    let pairs: Vec<(u64, u64)> = (0..total)
        .into_par_iter()
        .filter_map(|key| {
            let m = Mat2::new(ring, unpack(n, key)).expect("valid key");
            m.inverse().map(|inv| (key, pack(n, inv.entries())))
        })
        .collect();
    let mut elements = Vec::with_capacity(pairs.len());
    let mut inverses = Vec::with_capacity(pairs.len());
    let mut index = HashMap::with_capacity(pairs.len());
    for (i, (key, inv)) in pairs.into_iter().enumerate() {
        index.insert(key, i as u32);
        elements.push(key);
        inverses.push(inv);
    }
    Ok(Gl2 {
        ring: Ring::clone(ring),
        elements,
        inverses,
        index,
    })
}

/// A GE₂-ring is one with GE₂(R) = GL₂(R).
pub fn is_ge2_ring(ring: &Ring, caps: &Caps) -> Result<bool> {
    let ge2 = generate_ge2(ring, caps)?;
    let gl2 = enumerate_gl2(ring, caps)?;
    debug_assert!(ge2.keys().iter().all(|&k| gl2.contains_key(k)));
    Ok(ge2.len() == gl2.len())
}

mod cache {
    //! Best-effort on-disk cache for generated groups. A corrupt or stale
    //! entry is ignored and regenerated; write failures are ignored.

    use std::collections::HashMap;
    use std::path::Path;

    use serde::{Deserialize, Serialize};

    use crate::mat2::eval_word;
    use crate::ring::{Elem, Ring};

    use super::GeneratedGroup;

    #[derive(Serialize, Deserialize)]
    struct CachedGroup {
        version: String,
        ring: String,
        kind: String,
        elements: Vec<u64>,
        parents: Vec<(u32, u16)>,
    }

    fn file_name(ring: &Ring, kind: &str) -> String {
        // Stable FNV-1a over the label keeps names filesystem-safe.
        let mut hash: u64 = 0xcbf2_9ce4_8422_2325;
        for b in ring.label().bytes() {
            hash ^= b as u64;
            hash = hash.wrapping_mul(0x0000_0100_0000_01b3);
        }
        let safe: String = ring
            .label()
            .chars()
            .map(|c| if c.is_ascii_alphanumeric() { c } else { '_' })
            .collect();
        format!("{kind}-{safe}-{hash:016x}.json")
    }

    pub(super) fn load(dir: &Path, ring: &Ring, kind: &str) -> Option<GeneratedGroup> {
        let path = dir.join(file_name(ring, kind));
        let text = std::fs::read_to_string(path).ok()?;
        let cached: CachedGroup = serde_json::from_str(&text).ok()?;
        if cached.version != env!("CARGO_PKG_VERSION")
            || cached.ring != ring.label()
            || cached.kind != kind
            || cached.elements.is_empty()
            || cached.parents.len() != cached.elements.len()
        {
            return None;
        }
        let n = ring.size() as u64;
        let key_cap = n * n * n * n;
        if cached.elements.iter().any(|&k| k >= key_cap) {
            return None;
        }
        if cached
            .parents
            .iter()
            .enumerate()
            .skip(1)
            .any(|(i, &(p, t))| p as usize >= i || t as usize >= ring.size())
        {
            return None;
        }
        let index: HashMap<u64, u32> = cached
            .elements
            .iter()
            .enumerate()
            .map(|(i, &k)| (k, i as u32))
            .collect();
        if index.len() != cached.elements.len() {
            return None;
        }
        let group = GeneratedGroup {
            ring: Ring::clone(ring),
            elements: cached.elements,
            index,
            parents: Some(
                cached
                    .parents
                    .into_iter()
                    .map(|(p, t)| (p, Elem(t)))
                    .collect(),
            ),
            description: "E2",
        };
        // Spot-check a few witnesses before trusting the entry.
        let step = (group.len() / 8).max(1);
        for pos in (0..group.len()).step_by(step) {
            let word = group.witness_word(pos)?;
            if eval_word(ring, &word) != group.matrix(pos) {
                return None;
            }
        }
        Some(group)
    }

    pub(super) fn store(dir: &Path, ring: &Ring, kind: &str, group: &GeneratedGroup) {
        let Some(parents) = &group.parents else {
            return;
        };
        let cached = CachedGroup {
            version: env!("CARGO_PKG_VERSION").to_string(),
            ring: ring.label().to_string(),
            kind: kind.to_string(),
            elements: group.elements.clone(),
            parents: parents.iter().map(|&(p, t)| (p, t.0)).collect(),
        };
        if std::fs::create_dir_all(dir).is_err() {
            return;
        }
        if let Ok(text) = serde_json::to_string(&cached) {
            let _ = std::fs::write(dir.join(file_name(ring, kind)), text);
        }
    }
}
