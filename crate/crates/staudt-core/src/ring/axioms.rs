//! Exhaustive ring-axiom checking with counterexample reporting.

use serde::Serialize;

use super::{Elem, FiniteRing};

/// One axiom verdict; `witness` holds the first counterexample found.
#[derive(Debug, Clone, Serialize)]
pub struct AxiomCheck {
    pub axiom: String,
    pub ok: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<u16>>,
}

/// Outcome of [`check_ring_axioms`]. Failures are report entries, never
/// errors.
#[derive(Debug, Clone, Serialize)]
pub struct AxiomReport {
    pub entries: Vec<AxiomCheck>,
    /// A pair with `ab ≠ ba`, when one exists. Noncommutativity is not a
    /// failure; it is reported for orientation.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub noncommutative_witness: Option<(u16, u16)>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.entries.iter().all(|e| e.ok)
    }

    pub fn failures(&self) -> impl Iterator<Item = &AxiomCheck> {
        self.entries.iter().filter(|e| !e.ok)
    }
}

/// Verifies every ring axiom by full enumeration (triples for the
/// associative and distributive laws).
pub fn check_ring_axioms(ring: &FiniteRing) -> AxiomReport {
    let mut entries = Vec::new();
    let n = ring.size();
    let e = |i: usize| Elem(i as u16);

    let mut check2 = |axiom: &str, f: &dyn Fn(Elem, Elem) -> bool| {
        let mut witness = None;
        'outer: for a in 0..n {
            for b in 0..n {
                if !f(e(a), e(b)) {
                    witness = Some(vec![a as u16, b as u16]);
                    break 'outer;
                }
            }
        }
        entries.push(AxiomCheck {
            axiom: axiom.to_string(),
            ok: witness.is_none(),
            witness,
        });
    };

    check2("add_commutative", &|a, b| ring.add(a, b) == ring.add(b, a));
    check2("add_inverse", &|a, _| {
        ring.add(a, ring.neg(a)) == ring.zero()
    });
    check2("zero_identity", &|a, _| ring.add(a, ring.zero()) == a);
    check2("one_identity", &|a, _| {
        ring.mul(a, ring.one()) == a && ring.mul(ring.one(), a) == a
    });

    let mut check3 = |axiom: &str, f: &dyn Fn(Elem, Elem, Elem) -> bool| {
        let mut witness = None;
        'outer: for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if !f(e(a), e(b), e(c)) {
                        witness = Some(vec![a as u16, b as u16, c as u16]);
                        break 'outer;
                    }
                }
            }
        }
        entries.push(AxiomCheck {
            axiom: axiom.to_string(),
            ok: witness.is_none(),
            witness,
        });
    };

    check3("add_associative", &|a, b, c| {
        ring.add(ring.add(a, b), c) == ring.add(a, ring.add(b, c))
    });
    check3("mul_associative", &|a, b, c| {
        ring.mul(ring.mul(a, b), c) == ring.mul(a, ring.mul(b, c))
    });
    check3("left_distributive", &|a, b, c| {
        ring.mul(a, ring.add(b, c)) == ring.add(ring.mul(a, b), ring.mul(a, c))
    });
    check3("right_distributive", &|a, b, c| {
        ring.mul(ring.add(a, b), c) == ring.add(ring.mul(a, c), ring.mul(b, c))
    });

    entries.push(AxiomCheck {
        axiom: "one_distinct_from_zero".to_string(),
        ok: ring.one() != ring.zero(),
        witness: None,
    });

    // Unit bookkeeping: membership matches the defining property and the
    // stored inverse really is two-sided.
    let mut unit_witness = None;
    'unit: for a in 0..n {
        let has_inverse = (0..n)
            .any(|v| ring.mul(e(a), e(v)) == ring.one() && ring.mul(e(v), e(a)) == ring.one());
        if has_inverse != ring.is_unit(e(a)) {
            unit_witness = Some(vec![a as u16]);
            break 'unit;
        }
        if let Some(inv) = ring.inv(e(a)) {
            if ring.mul(e(a), inv) != ring.one() || ring.mul(inv, e(a)) != ring.one() {
                unit_witness = Some(vec![a as u16]);
                break 'unit;
            }
        }
    }
    entries.push(AxiomCheck {
        axiom: "unit_set_exact".to_string(),
        ok: unit_witness.is_none(),
        witness: unit_witness,
    });

    let mut noncommutative_witness = None;
    'nc: for a in 0..n {
        for b in 0..n {
            if ring.mul(e(a), e(b)) != ring.mul(e(b), e(a)) {
                noncommutative_witness = Some((a as u16, b as u16));
                break 'nc;
            }
        }
    }

    AxiomReport {
        entries,
        noncommutative_witness,
    }
}
