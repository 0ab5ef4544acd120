//! Augmentations: unital algebra maps from a DGA to a finite field that
//! vanish on every differential.
//!
//! An augmentation `ε` to `F_q` sends each `t_i` to a unit, each chord to a
//! field element, and satisfies `ε ∘ d = 0`. For the graded variant with
//! parameter `m ≥ 0`, a chord may only take a nonzero value if its degree is
//! divisible by `2m` (for `m = 0`: if its degree is exactly zero).
//!
//! Enumeration proceeds by backtracking in height order: the differential of
//! a chord only involves strictly lower chords, so `ε(d a)` is fully
//! determined before `ε(a)` is chosen, and dead branches are pruned at the
//! first violated equation.

use crate::arith::{Fq, FqElem, QSqrt};
use crate::dga::{Dga, Letter, NcPoly, Word};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use std::collections::BTreeMap;

/// An augmentation of a DGA over `F_q`, `2m`-graded.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Augmentation {
    pub q: u32,
    pub m: u32,
    /// Value on each chord, indexed like `Dga::generators`.
    pub chord_vals: Vec<FqElem>,
    /// Value on `t_1, …, t_ℓ` (always units).
    pub t_vals: Vec<FqElem>,
}

/// Whether a chord of the given degree may take a nonzero value under a
/// `2m`-graded augmentation.
pub fn degree_allows(m: u32, degree: i64) -> bool {
    if m == 0 {
        degree == 0
    } else {
        degree.rem_euclid(2 * m as i64) == 0
    }
}

/// Whether the augmentation is honestly `Z`-graded: supported on chords of
/// degree exactly zero.
pub fn is_z_graded(dga: &Dga, aug: &Augmentation) -> bool {
    dga.generators.iter().zip(&aug.chord_vals).all(|(g, &v)| v == 0 || g.degree == 0)
}

pub fn eval_letter(fq: &Fq, aug: &Augmentation, l: &Letter) -> FqElem {
    match l {
        Letter::Chord(i) => aug.chord_vals[*i],
        Letter::T { comp, inv } => {
            let t = aug.t_vals[*comp - 1];
            if *inv {
                fq.inv(t)
            } else {
                t
            }
        }
    }
}

pub fn eval_word(fq: &Fq, aug: &Augmentation, w: &Word) -> FqElem {
    let mut acc = fq.one();
    for l in w {
        acc = fq.mul(acc, eval_letter(fq, aug, l));
    }
    acc
}

pub fn eval_poly(fq: &Fq, aug: &Augmentation, p: &NcPoly) -> FqElem {
    let mut acc = fq.zero();
    for (w, c) in p.terms() {
        acc = fq.add(acc, fq.mul(fq.from_int(c), eval_word(fq, aug, w)));
    }
    acc
}

/// All `2m`-graded augmentations of the DGA over the given field, in a
/// deterministic order: lexicographic in the `t` values, then in the chord
/// values taken in height order.
pub fn enumerate_augmentations(dga: &Dga, fq: &Fq, m: u32) -> Vec<Augmentation> {
    let mut out = Vec::new();
    let units: Vec<FqElem> = fq.units().collect();
    let mut t_vals = vec![fq.one(); dga.components];
    let mut chord_vals = vec![fq.zero(); dga.generators.len()];
    fill_t(dga, fq, m, 0, &mut t_vals, &mut chord_vals, &units, &mut out);
    out
}

fn fill_t(
    dga: &Dga,
    fq: &Fq,
    m: u32,
    i: usize,
    t_vals: &mut Vec<FqElem>,
    chord_vals: &mut Vec<FqElem>,
    units: &[FqElem],
    out: &mut Vec<Augmentation>,
) {
    if i == t_vals.len() {
        fill_chords(dga, fq, m, 0, t_vals, chord_vals, out);
        return;
    }
    for &u in units {
        t_vals[i] = u;
        fill_t(dga, fq, m, i + 1, t_vals, chord_vals, units, out);
    }
}

fn fill_chords(
    dga: &Dga,
    fq: &Fq,
    m: u32,
    j: usize,
    t_vals: &mut Vec<FqElem>,
    chord_vals: &mut Vec<FqElem>,
    out: &mut Vec<Augmentation>,
) {
    if j == dga.generators.len() {
        out.push(Augmentation {
            q: fq.q(),
            m,
            chord_vals: chord_vals.clone(),
            t_vals: t_vals.clone(),
        });
        return;
    }
    // The differential of generator j only involves chords of lower height,
    // all of which are already assigned.
    let probe =
        Augmentation { q: fq.q(), m, chord_vals: chord_vals.clone(), t_vals: t_vals.clone() };
    if eval_poly(fq, &probe, &dga.differential[j]) != fq.zero() {
        return;
    }
    if degree_allows(m, dga.generators[j].degree) {
        for v in fq.elements() {
            chord_vals[j] = v;
            fill_chords(dga, fq, m, j + 1, t_vals, chord_vals, out);
        }
        chord_vals[j] = fq.zero();
    } else {
        chord_vals[j] = fq.zero();
        fill_chords(dga, fq, m, j + 1, t_vals, chord_vals, out);
    }
}

/// Verifies `ε ∘ d = 0` on every generator (used by oracles and tests).
pub fn is_augmentation(dga: &Dga, fq: &Fq, aug: &Augmentation) -> bool {
    dga.differential.iter().all(|p| eval_poly(fq, aug, p) == fq.zero())
        && dga
            .generators
            .iter()
            .zip(&aug.chord_vals)
            .all(|(g, &v)| v == 0 || degree_allows(aug.m, g.degree))
        && aug.t_vals.iter().all(|&t| t != 0)
}

/// Chord counts by degree, and the shifted Euler characteristic `χ*`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EulerData {
    pub r_by_degree: BTreeMap<i64, usize>,
    pub chi_star: i64,
}

/// Computes `χ*` for the grading parameter `m`.
///
/// For `m = 0`: `χ* = Σ_{i≥0} (−1)^i r_i + Σ_{i<0} (−1)^{i+1} r_i`, where
/// `r_i` counts chords of degree `i`.
///
/// For `m ≥ 1`: group degrees into blocks of length `2m`; with
/// `s_k = r_{2mk} − r_{2mk+1} + … − r_{2mk+2m−1}`, it is
/// `χ* = Σ_k (2k+1) s_k`.
pub fn euler_data(dga: &Dga, m: u32) -> EulerData {
    let mut r_by_degree: BTreeMap<i64, usize> = BTreeMap::new();
    for g in &dga.generators {
        *r_by_degree.entry(g.degree).or_insert(0) += 1;
    }
    let mut chi = 0i64;
    for (&d, &r) in &r_by_degree {
        let r = r as i64;
        if m == 0 {
            let s = if d >= 0 { pow_sign(d) } else { -pow_sign(d) };
            chi += s * r;
        } else {
            let period = 2 * m as i64;
            let k = d.div_euclid(period);
            let j = d.rem_euclid(period);
            chi += (2 * k + 1) * pow_sign(j) * r;
        }
    }
    EulerData { r_by_degree, chi_star: chi }
}

fn pow_sign(e: i64) -> i64 {
    if e.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// The normalized augmentation count `q^{−χ*/2} (q−1)^{−ℓ} · count`, an
/// exact element of `Q(√q)`.
pub fn normalized_count(q: u32, ell: usize, chi_star: i64, count: usize) -> QSqrt {
    let mut denom = BigInt::one();
    for _ in 0..ell {
        denom *= q as i64 - 1;
    }
    let scale = BigRational::new(BigInt::from(count), denom);
    QSqrt::q_pow_half(q, -chi_star).scale(&scale)
}
