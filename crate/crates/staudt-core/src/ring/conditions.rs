//! The two ring-theoretic hypotheses of the preserver description: the
//! five-units avoidance condition and invertibility of 2.

use serde::Serialize;

use crate::caps::Caps;
use crate::rng::SplitMix64;

use super::{Elem, FiniteRing};

/// Three-valued outcome for conditions that may exceed their exhaustive cap.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Holds,
    Fails,
    Unresolved,
}

#[derive(Debug, Clone, Serialize)]
pub struct ConditionOutcome {
    pub verdict: Verdict,
    /// A blocking 5-tuple (x₁, ..., x₅) when the condition fails: no x makes
    /// all five differences x − xᵢ units.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<u16>>,
}

impl ConditionOutcome {
    pub fn holds(&self) -> bool {
        self.verdict == Verdict::Holds
    }
}

/// True iff 2 = 1 + 1 is a unit.
pub fn check_two_unit(ring: &FiniteRing) -> bool {
    ring.is_unit(ring.int(2))
}

/// Decides whether for every (x₁, ..., x₅) there is an x with all x − xᵢ
/// units.
///
/// The existence of x depends only on the set of the xᵢ, so the exhaustive
/// scan runs over non-decreasing 5-tuples; that is equivalent to the full
/// |R|⁵ scan and the |R|⁵ ≤ cap feasibility rule is kept. Beyond the cap, a
/// greedy covering search looks for a blocking tuple (the condition fails
/// exactly when five translates of the non-unit set cover R); absence of a
/// cover is not a proof, so the fallback answer is `Unresolved`.
pub fn check_condition_five_units(ring: &FiniteRing, caps: &Caps, seed: u64) -> ConditionOutcome {
    let n = ring.size();
    let exhaustive = (n as u64)
        .checked_pow(5)
        .is_some_and(|t| t <= caps.five_units_exhaustive);
    if exhaustive {
        exhaustive_scan(ring)
    } else {
        covering_search(ring, caps, seed)
    }
}

fn blocks(ring: &FiniteRing, tuple: &[u16]) -> bool {
    let n = ring.size();
    !(0..n).any(|x| {
        tuple
            .iter()
            .all(|&xi| ring.is_unit(ring.sub(Elem(x as u16), Elem(xi))))
    })
}

fn exhaustive_scan(ring: &FiniteRing) -> ConditionOutcome {
    let n = ring.size() as u16;
    let mut tuple = [0u16; 5];
    loop {
        if blocks(ring, &tuple) {
            return ConditionOutcome {
                verdict: Verdict::Fails,
                witness: Some(tuple.to_vec()),
            };
        }
        // Advance to the next non-decreasing tuple.
        let mut i = 5;
        loop {
            if i == 0 {
                return ConditionOutcome {
                    verdict: Verdict::Holds,
                    witness: None,
                };
            }
            i -= 1;
            if tuple[i] + 1 < n {
                let v = tuple[i] + 1;
                for slot in &mut tuple[i..] {
                    *slot = v;
                }
                break;
            }
        }
    }
}

fn covering_search(ring: &FiniteRing, caps: &Caps, seed: u64) -> ConditionOutcome {
    let n = ring.size();
    let nonunits: Vec<usize> = (0..n).filter(|&a| !ring.is_unit(Elem(a as u16))).collect();
    // Five translates of the non-unit set can never cover a larger ring.
    if 5 * nonunits.len() < n {
        return ConditionOutcome {
            verdict: Verdict::Holds,
            witness: None,
        };
    }

    let mut rng = SplitMix64::new(seed);
    for _ in 0..caps.covering_restarts {
        let mut covered = vec![false; n];
        let mut remaining = n;
        let mut picks: Vec<u16> = Vec::with_capacity(5);
        for _ in 0..5 {
            // Greedy: the translate t + N covering the most new elements;
            // ties broken by a seeded random preference for diversity
            // across restarts.
            let mut best: Option<(usize, usize)> = None;
            let jitter = rng.below(n);
            for off in 0..n {
                let t = (off + jitter) % n;
                let gain = nonunits
                    .iter()
                    .filter(|&&nu| !covered[ring.add(Elem(t as u16), Elem(nu as u16)).index()])
                    .count();
                if best.is_none_or(|(_, bg)| gain > bg) {
                    best = Some((t, gain));
                }
            }
            let (t, _) = best.expect("ring is nonempty");
            picks.push(t as u16);
            for &nu in &nonunits {
                let c = ring.add(Elem(t as u16), Elem(nu as u16)).index();
                if !covered[c] {
                    covered[c] = true;
                    remaining -= 1;
                }
            }
            if remaining == 0 {
                break;
            }
        }
        if remaining == 0 {
            while picks.len() < 5 {
                let last = *picks.last().unwrap();
                picks.push(last);
            }
            debug_assert!(blocks(ring, &picks));
            return ConditionOutcome {
                verdict: Verdict::Fails,
                witness: Some(picks),
            };
        }
    }
    ConditionOutcome {
        verdict: Verdict::Unresolved,
        witness: None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{build_ring, parse_ring_spec};

    fn build(spec: &str) -> crate::ring::Ring {
        build_ring(&parse_ring_spec(spec).unwrap(), &Caps::default()).unwrap()
    }

    #[test]
    fn two_unit_verdicts() {
        assert!(check_two_unit(&build("Z/7"))); // 2·4 = 8 ≡ 1
        assert!(!check_two_unit(&build("GF(2,3)"))); // characteristic 2
        assert!(check_two_unit(&build("Z/9"))); // 2·5 = 10 ≡ 1
    }

    #[test]
    fn five_units_field_holds() {
        let out = check_condition_five_units(&build("Z/7"), &Caps::default(), 0);
        assert_eq!(out.verdict, Verdict::Holds);
    }

    #[test]
    fn five_units_zmod4_blocked_across_residues() {
        let out = check_condition_five_units(&build("Z/4"), &Caps::default(), 0);
        assert_eq!(out.verdict, Verdict::Fails);
        let w = out.witness.unwrap();
        // The witness must block: re-check directly, and it must meet both
        // residues mod 2 (translates of the even numbers by a single parity
        // cannot cover Z/4).
        assert!(blocks(&build("Z/4"), &w));
        assert!(w.iter().any(|&x| x % 2 == 0) && w.iter().any(|&x| x % 2 == 1));
    }

    #[test]
    fn five_units_zmod9_blocked() {
        let ring = build("Z/9");
        let out = check_condition_five_units(&ring, &Caps::default(), 0);
        assert_eq!(out.verdict, Verdict::Fails);
        assert!(blocks(&ring, &out.witness.unwrap()));
    }

    #[test]
    fn heuristic_finds_zmod4_blocker_too() {
        // Force the covering path by lowering the exhaustive cap.
        let caps = Caps {
            five_units_exhaustive: 10,
            ..Caps::default()
        };
        let ring = build("Z/4");
        let out = check_condition_five_units(&ring, &caps, 0);
        assert_eq!(out.verdict, Verdict::Fails);
        assert!(blocks(&ring, &out.witness.unwrap()));
    }

    #[test]
    fn heuristic_shortcut_on_fields() {
        let caps = Caps {
            five_units_exhaustive: 10,
            ..Caps::default()
        };
        let out = check_condition_five_units(&build("Z/7"), &caps, 0);
        assert_eq!(out.verdict, Verdict::Holds);
    }
}
