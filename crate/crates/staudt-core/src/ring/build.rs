//! Realizes a [`RingExpr`] as a table-based [`FiniteRing`].

use std::sync::Arc;

use crate::caps::Caps;
use crate::error::{Error, Result};

use super::expr::RingExpr;
use super::polyarith;
use super::{FiniteRing, Ring};

/// Built-in monic irreducible polynomials (constant term first) for
/// GF(p, k) with p ∈ {2, 3, 5, 7} and k ≤ 3.
pub fn default_irreducible(p: u64, k: u32) -> Option<Vec<u64>> {
    Some(match (p, k) {
        (2, 1) => vec![1, 1],       // x + 1
        (2, 2) => vec![1, 1, 1],    // x² + x + 1
        (2, 3) => vec![1, 1, 0, 1], // x³ + x + 1
        (3, 1) => vec![1, 1],
        (3, 2) => vec![1, 0, 1],    // x² + 1
        (3, 3) => vec![1, 2, 0, 1], // x³ + 2x + 1
        (5, 1) => vec![1, 1],
        (5, 2) => vec![2, 0, 1],    // x² + 2
        (5, 3) => vec![1, 1, 0, 1], // x³ + x + 1
        (7, 1) => vec![1, 1],
        (7, 2) => vec![1, 0, 1],    // x² + 1
        (7, 3) => vec![2, 0, 0, 1], // x³ + 2
        _ => return None,
    })
}

/// The ring specs exercised throughout the test and verification suites.
pub fn catalog() -> Vec<&'static str> {
    vec![
        "Z/2",
        "Z/3",
        "Z/4",
        "Z/5",
        "Z/6",
        "Z/7",
        "Z/8",
        "Z/9",
        "GF(2,2)",
        "GF(2,3)",
        "GF(3,2)",
        "M2(Z/2)",
        "T2(Z/2)",
        "T2(Z/3)",
        "DUAL(Z/3)",
        "Z/4xZ/9",
    ]
}

/// Builds the ring denoted by a validated expression.
///
/// Fails with a resource error when the resulting size would exceed
/// `caps.ring_size`.
pub fn build_ring(expr: &RingExpr, caps: &Caps) -> Result<Ring> {
    expr.validate()?;
    let size = expr.size();
    if size > caps.ring_size as u64 {
        return Err(Error::Resource(format!(
            "ring {expr} has {size} elements, cap is {}",
            caps.ring_size
        )));
    }
    Ok(Arc::new(build_rec(expr)?))
}

fn build_rec(expr: &RingExpr) -> Result<FiniteRing> {
    match expr {
        RingExpr::Zmod(n) => {
            let n = *n as usize;
            build_tables(expr.to_string(), n, |a, b| (a + b) % n, |a, b| (a * b) % n)
        }
        RingExpr::Gf { p, k, poly } => {
            let p = *p;
            let k = *k as usize;
            let n = (p as usize).pow(k as u32);
            let monic = polyarith::make_monic(p, poly);
            let to_poly = |idx: usize| -> Vec<u64> {
                let mut digits = Vec::with_capacity(k);
                let mut rest = idx as u64;
                for _ in 0..k {
                    digits.push(rest % p);
                    rest /= p;
                }
                digits
            };
            let from_poly = |c: &[u64]| -> usize {
                let mut idx = 0u64;
                for i in (0..k).rev() {
                    idx = idx * p + c.get(i).copied().unwrap_or(0);
                }
                idx as usize
            };
            build_tables(
                expr.to_string(),
                n,
                |a, b| {
                    let (pa, pb) = (to_poly(a), to_poly(b));
                    let sum: Vec<u64> = pa.iter().zip(&pb).map(|(x, y)| (x + y) % p).collect();
                    from_poly(&sum)
                },
                |a, b| {
                    let prod = polyarith::poly_mul_mod(p, &to_poly(a), &to_poly(b), &monic);
                    from_poly(&prod)
                },
            )
        }
        RingExpr::Mat2Ring(inner) => {
            let s = Arc::new(build_rec(inner)?);
            let m = s.size();
            let dig = |i: usize| [i % m, i / m % m, i / (m * m) % m, i / (m * m * m)];
            let enc = |d: [usize; 4]| d[0] + m * (d[1] + m * (d[2] + m * d[3]));
            let sr = Arc::clone(&s);
            let sm = Arc::clone(&s);
            build_tables(
                expr.to_string(),
                m * m * m * m,
                move |x, y| {
                    let (a, b) = (dig(x), dig(y));
                    enc([
                        sr.add(super::Elem(a[0] as u16), super::Elem(b[0] as u16))
                            .index(),
                        sr.add(super::Elem(a[1] as u16), super::Elem(b[1] as u16))
                            .index(),
                        sr.add(super::Elem(a[2] as u16), super::Elem(b[2] as u16))
                            .index(),
                        sr.add(super::Elem(a[3] as u16), super::Elem(b[3] as u16))
                            .index(),
                    ])
                },
                move |x, y| {
                    // Layout (a, b, c, d) = rows ((a, b), (c, d)).
                    let (a, b) = (dig(x), dig(y));
                    let e = |i: usize| super::Elem(i as u16);
                    let mm = |i: usize, j: usize| sm.mul(e(i), e(j)).index();
                    let ad = |i: usize, j: usize| sm.add(e(i), e(j)).index();
                    enc([
                        ad(mm(a[0], b[0]), mm(a[1], b[2])),
                        ad(mm(a[0], b[1]), mm(a[1], b[3])),
                        ad(mm(a[2], b[0]), mm(a[3], b[2])),
                        ad(mm(a[2], b[1]), mm(a[3], b[3])),
                    ])
                },
            )
        }
        RingExpr::UpperTri2(inner) => {
            let s = Arc::new(build_rec(inner)?);
            let m = s.size();
            let dig = |i: usize| [i % m, i / m % m, i / (m * m)];
            let enc = |d: [usize; 3]| d[0] + m * (d[1] + m * d[2]);
            let sr = Arc::clone(&s);
            let sm = Arc::clone(&s);
            build_tables(
                expr.to_string(),
                m * m * m,
                move |x, y| {
                    let (a, b) = (dig(x), dig(y));
                    let e = |i: usize| super::Elem(i as u16);
                    enc([
                        sr.add(e(a[0]), e(b[0])).index(),
                        sr.add(e(a[1]), e(b[1])).index(),
                        sr.add(e(a[2]), e(b[2])).index(),
                    ])
                },
                move |x, y| {
                    // (a, b, c) = [[a, b], [0, c]]; product is
                    // (aa', ab' + bc', cc').
                    let (a, b) = (dig(x), dig(y));
                    let e = |i: usize| super::Elem(i as u16);
                    enc([
                        sm.mul(e(a[0]), e(b[0])).index(),
                        sm.add(sm.mul(e(a[0]), e(b[1])), sm.mul(e(a[1]), e(b[2])))
                            .index(),
                        sm.mul(e(a[2]), e(b[2])).index(),
                    ])
                },
            )
        }
        RingExpr::Dual(inner) => {
            let s = Arc::new(build_rec(inner)?);
            let m = s.size();
            let sr = Arc::clone(&s);
            let sm = Arc::clone(&s);
            build_tables(
                expr.to_string(),
                m * m,
                move |x, y| {
                    let e = |i: usize| super::Elem(i as u16);
                    let (a0, a1, b0, b1) = (x % m, x / m, y % m, y / m);
                    sr.add(e(a0), e(b0)).index() + m * sr.add(e(a1), e(b1)).index()
                },
                move |x, y| {
                    // (a0 + a1 ε)(b0 + b1 ε) = a0 b0 + (a0 b1 + a1 b0) ε.
                    let e = |i: usize| super::Elem(i as u16);
                    let (a0, a1, b0, b1) = (x % m, x / m, y % m, y / m);
                    sm.mul(e(a0), e(b0)).index()
                        + m * sm.add(sm.mul(e(a0), e(b1)), sm.mul(e(a1), e(b0))).index()
                },
            )
        }
        RingExpr::Product(left, right) => {
            let a = Arc::new(build_rec(left)?);
            let b = Arc::new(build_rec(right)?);
            let m = a.size();
            let (aa, ab) = (Arc::clone(&a), Arc::clone(&b));
            let (ma, mb) = (Arc::clone(&a), Arc::clone(&b));
            build_tables(
                expr.to_string(),
                a.size() * b.size(),
                move |x, y| {
                    let e = |i: usize| super::Elem(i as u16);
                    aa.add(e(x % m), e(y % m)).index() + m * ab.add(e(x / m), e(y / m)).index()
                },
                move |x, y| {
                    let e = |i: usize| super::Elem(i as u16);
                    ma.mul(e(x % m), e(y % m)).index() + m * mb.mul(e(x / m), e(y / m)).index()
                },
            )
        }
    }
}

fn build_tables(
    label: String,
    size: usize,
    add: impl Fn(usize, usize) -> usize,
    mul: impl Fn(usize, usize) -> usize,
) -> Result<FiniteRing> {
    let mut add_t = vec![0u16; size * size];
    let mut mul_t = vec![0u16; size * size];
    for a in 0..size {
        for b in 0..size {
            add_t[a * size + b] = add(a, b) as u16;
            mul_t[a * size + b] = mul(a, b) as u16;
        }
    }
    FiniteRing::from_tables(label, size, add_t, mul_t)
}
