//! The Chekanov–Eliashberg differential graded algebra of the Lagrangian
//! resolution of a plat front.
//!
//! Generators ("chords") are the front crossings plus one chord per right
//! cusp (the crossing of the cusp's resolution loop, which always has degree
//! one). The algebra is free associative over `Z[t_1^{±1},…,t_ℓ^{±1}]` with
//! one invertible generator per component, placed at the component's marked
//! point. The differential counts immersed disks in the resolved diagram
//! with one convex positive corner and convex negative corners.
//!
//! For a plat diagram every such disk sweeps left to right as a single
//! vertical interval between two boundary strands, which yields a complete
//! combinatorial enumeration:
//!
//! * a disk is born at a left cusp (smoothly) or as the small disk of a
//!   resolution loop (the positive corner of the loop's chord);
//! * at a crossing, an interval endpoint arriving on the ascending strand
//!   from below, or the descending strand from above, passes through; an
//!   endpoint arriving on the descending strand from below may instead turn
//!   the corner (a negative corner in the north quadrant), and an endpoint
//!   arriving on the ascending strand from above may turn (south quadrant);
//! * an interval that exactly spans a crossing terminates there with its
//!   unique positive corner (west quadrant), contributing a word to that
//!   chord's differential;
//! * intervals that touch a resolution loop without exactly spanning it can
//!   never close up and are discarded.
//!
//! The boundary word is read counterclockwise from the positive corner: the
//! letters collected on the upper boundary arc in reverse x-order, then the
//! lower-arc letters in x-order. Orientation signs multiply `−1` for every
//! corner of the disk occupying a marked quadrant at a crossing of even
//! degree; the marked quadrants are the two on the left of the ascending
//! strand (north and west). This sign convention is validated by the test
//! battery (vanishing of the squared differential over `Z` on randomized
//! fronts and augmentation counts in odd characteristic).

use crate::front::PlatFront;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt::Write as _;
use thiserror::Error;

/// One letter of a differential word.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Letter {
    /// A chord, by generator index.
    Chord(usize),
    /// `t_comp` (or its inverse) for a marked point, `comp` 1-based.
    T { comp: usize, inv: bool },
}

/// A noncommutative monomial: a sequence of letters (empty = the unit).
pub type Word = Vec<Letter>;

/// A `Z`-linear combination of words, with like terms merged and no zeros.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct NcPoly {
    terms: BTreeMap<Word, i64>,
}

impl NcPoly {
    pub fn zero() -> Self {
        NcPoly::default()
    }
    pub fn one() -> Self {
        let mut p = NcPoly::default();
        p.add_term(Vec::new(), 1);
        p
    }
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    pub fn add_term(&mut self, word: Word, coeff: i64) {
        if coeff == 0 {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(word) {
            Entry::Vacant(v) => {
                v.insert(coeff);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if *o.get() == 0 {
                    o.remove();
                }
            }
        }
    }
    /// Terms in canonical (lexicographic word) order.
    pub fn terms(&self) -> impl Iterator<Item = (&Word, i64)> {
        self.terms.iter().map(|(w, &c)| (w, c))
    }
    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }
    pub fn add(&self, other: &NcPoly) -> NcPoly {
        let mut out = self.clone();
        for (w, c) in other.terms() {
            out.add_term(w.clone(), c);
        }
        out
    }
    /// Adds `coeff · prefix · mid · suffix` for every term of `mid`.
    fn add_sandwich(&mut self, prefix: &[Letter], mid: &NcPoly, suffix: &[Letter], coeff: i64) {
        for (w, c) in mid.terms() {
            let mut word = Vec::with_capacity(prefix.len() + w.len() + suffix.len());
            word.extend_from_slice(prefix);
            word.extend_from_slice(w);
            word.extend_from_slice(suffix);
            self.add_term(word, coeff * c);
        }
    }
}

/// A DGA generator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Generator {
    pub name: String,
    pub degree: i64,
    /// Component of the chord's overcrossing strand.
    pub r: usize,
    /// Component of the chord's undercrossing strand.
    pub c: usize,
    /// Action-order height; differentials only use strictly lower heights.
    pub height: i64,
}

/// One disk of the differential of some chord: an orientation sign and the
/// boundary word at its negative corners and marked-point passages.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Disk {
    pub sign: i64,
    pub word: Word,
}

/// A Chekanov–Eliashberg DGA presentation.
#[derive(Debug, Clone)]
pub struct Dga {
    /// Number of link components `ℓ` (also the number of `t` generators).
    pub components: usize,
    /// Generators in strictly increasing height order.
    pub generators: Vec<Generator>,
    /// Differential of each generator, indexed like `generators`.
    pub differential: Vec<NcPoly>,
    /// The individual disks behind each differential, when built from a
    /// front (`Σ sign·word` over a chord's disks equals its differential).
    pub disks: Option<Vec<Vec<Disk>>>,
    name_index: BTreeMap<String, usize>,
}

impl PartialEq for Dga {
    fn eq(&self, other: &Self) -> bool {
        self.components == other.components
            && self.generators == other.generators
            && self.differential == other.differential
    }
}

/// Errors from loading or validating DGA presentations.
#[derive(Debug, Error)]
pub enum DgaError {
    #[error("malformed DGA JSON: {0}")]
    Syntax(String),
    #[error("there must be at least one component")]
    NoComponents,
    #[error("duplicate generator name {0:?}")]
    DuplicateName(String),
    #[error("generator {name:?}: component label {label} out of range 1..={max}")]
    BadComponent { name: String, label: usize, max: usize },
    #[error("duplicate height {0}")]
    DuplicateHeight(i64),
    #[error("differential of unknown generator {0:?}")]
    UnknownGenerator(String),
    #[error("unknown letter {0:?}")]
    UnknownLetter(String),
    #[error("DGA invariants violated:\n{}", .0.join("\n"))]
    InvariantViolation(Vec<String>),
}

impl Dga {
    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.name_index.get(name).copied()
    }
    pub fn letter_degree(&self, l: &Letter) -> i64 {
        match l {
            Letter::Chord(i) => self.generators[*i].degree,
            Letter::T { .. } => 0,
        }
    }
    pub fn word_degree(&self, w: &Word) -> i64 {
        w.iter().map(|l| self.letter_degree(l)).sum()
    }
    fn letter_name(&self, l: &Letter) -> String {
        match l {
            Letter::Chord(i) => self.generators[*i].name.clone(),
            Letter::T { comp, inv } => format!("{}{}", if *inv { "T" } else { "t" }, comp),
        }
    }
    /// Renders a polynomial with named letters, terms in canonical order
    /// (`1 + b1 - 2*b3*b2*b1`).
    pub fn format_poly(&self, p: &NcPoly) -> String {
        if p.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (w, c)) in p.terms().enumerate() {
            let mag = c.abs();
            if i == 0 {
                if c < 0 {
                    out.push('-');
                }
            } else if c < 0 {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            let body = if w.is_empty() {
                mag.to_string()
            } else {
                let word = w.iter().map(|l| self.letter_name(l)).collect::<Vec<_>>().join("*");
                if mag == 1 {
                    word
                } else {
                    format!("{}*{}", mag, word)
                }
            };
            out.push_str(&body);
        }
        out
    }
    /// The `(r, c)` component labels of a letter (`t_i` counts as `(i, i)`).
    fn letter_rc(&self, l: &Letter) -> (usize, usize) {
        match l {
            Letter::Chord(i) => (self.generators[*i].r, self.generators[*i].c),
            Letter::T { comp, .. } => (*comp, *comp),
        }
    }
}

/// Extends the differential to a word by the graded Leibniz rule
/// (`t` letters are closed).
pub fn differential_of_word(dga: &Dga, w: &Word) -> NcPoly {
    let mut out = NcPoly::zero();
    let mut sign = 1i64;
    for (l, letter) in w.iter().enumerate() {
        if let Letter::Chord(i) = letter {
            out.add_sandwich(&w[..l], &dga.differential[*i], &w[l + 1..], sign);
        }
        if dga.letter_degree(letter).rem_euclid(2) == 1 {
            sign = -sign;
        }
    }
    out
}

/// Extends the differential to a polynomial by linearity.
pub fn differential_of_poly(dga: &Dga, p: &NcPoly) -> NcPoly {
    let mut out = NcPoly::zero();
    for (w, c) in p.terms() {
        for (w2, c2) in differential_of_word(dga, w).terms() {
            out.add_term(w2.clone(), c * c2);
        }
    }
    out
}

// --- construction from a front -------------------------------------------

/// Quadrants at a crossing, for orientation-sign bookkeeping.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Quadrant {
    N,
    E,
    S,
    W,
}

/// Marked-quadrant bitmask (N, E, S, W = bits 0..3) used by the orientation
/// sign rule at even-degree crossings.
#[derive(Debug, Clone, Copy)]
pub(crate) struct SignScheme(pub u8);

/// The convention shipped by the library: the two quadrants to the left of
/// the ascending strand (north and west) are marked.
pub(crate) const DEFAULT_SIGNS: SignScheme = SignScheme(0b1001);

fn corner_sign(scheme: SignScheme, q: Quadrant, degree: i64) -> i64 {
    if degree.rem_euclid(2) != 0 {
        return 1;
    }
    let bit = match q {
        Quadrant::N => 1,
        Quadrant::E => 2,
        Quadrant::S => 4,
        Quadrant::W => 8,
    };
    if scheme.0 & bit != 0 {
        -1
    } else {
        1
    }
}

#[derive(Clone)]
struct SweepState {
    bot: usize,
    top: usize,
    top_letters: Vec<Letter>,
    bot_letters: Vec<Letter>,
    sign: i64,
}

impl SweepState {
    fn word(&self) -> Word {
        let mut w: Word = self.top_letters.iter().rev().cloned().collect();
        w.extend_from_slice(&self.bot_letters);
        w
    }
}

/// Builds the DGA of the resolved front.
pub fn build_dga(front: &PlatFront) -> Dga {
    build_dga_with_scheme(front, DEFAULT_SIGNS)
}

pub(crate) fn build_dga_with_scheme(front: &PlatFront, scheme: SignScheme) -> Dga {
    let k = front.events().len();
    let n = front.n_cusps();

    let mut generators = Vec::with_capacity(k + n);
    for (e, cr) in front.crossings().iter().enumerate() {
        generators.push(Generator {
            name: format!("b{}", e + 1),
            degree: cr.degree,
            r: cr.r_comp,
            c: cr.c_comp,
            height: (e + 1) as i64,
        });
    }
    for cusp in front.cusps() {
        generators.push(Generator {
            name: format!("a{}", cusp.index),
            degree: 1,
            r: cusp.comp,
            c: cusp.comp,
            height: (k + cusp.index) as i64,
        });
    }

    let mut disks: Vec<Vec<Disk>> = vec![Vec::new(); k + n];

    // Left-cusp births: one interval per cusp.
    let mut states: Vec<SweepState> = (0..n)
        .map(|j| SweepState {
            bot: 2 * j + 1,
            top: 2 * j + 2,
            top_letters: Vec::new(),
            bot_letters: Vec::new(),
            sign: 1,
        })
        .collect();

    for (e, &p) in front.events().iter().enumerate() {
        let deg = front.crossing(e).degree;
        let mut next = Vec::new();
        for s in states {
            if s.bot == p && s.top == p + 1 {
                // The interval exactly spans the crossing: forced positive
                // corner in the west quadrant; the disk is complete.
                let sign = s.sign * corner_sign(scheme, Quadrant::W, deg);
                disks[e].push(Disk { sign, word: s.word() });
            } else if s.bot == p {
                // Lower endpoint on the ascending strand: passes through.
                let mut s2 = s;
                s2.bot = p + 1;
                next.push(s2);
            } else if s.bot == p + 1 {
                // Lower endpoint on the descending strand: pass (grow down)
                // or take a negative corner in the north quadrant.
                let mut pass = s.clone();
                pass.bot = p;
                next.push(pass);
                let mut kink = s;
                kink.bot_letters.push(Letter::Chord(e));
                kink.sign *= corner_sign(scheme, Quadrant::N, deg);
                next.push(kink);
            } else if s.top == p + 1 {
                // Upper endpoint on the descending strand: passes through.
                let mut s2 = s;
                s2.top = p;
                next.push(s2);
            } else if s.top == p {
                // Upper endpoint on the ascending strand: pass (grow up) or
                // take a negative corner in the south quadrant.
                let mut pass = s.clone();
                pass.top = p + 1;
                next.push(pass);
                let mut kink = s;
                kink.top_letters.push(Letter::Chord(e));
                kink.sign *= corner_sign(scheme, Quadrant::S, deg);
                next.push(kink);
            } else {
                next.push(s);
            }
        }
        states = next;
    }

    // Right cusps: the loop crossing of cusp j behaves like a crossing at
    // positions (2j−1, 2j) followed by the closing of the eye. Only the
    // exact interval can terminate there; everything else that touches the
    // pair runs into the eye and dies without completing.
    for j in 0..n {
        let (lo, hi) = (2 * j + 1, 2 * j + 2);
        let cusp = front.cusp(j);
        let mut word = Vec::new();
        if cusp.has_basepoint {
            word.push(Letter::T { comp: cusp.comp, inv: cusp.t_inverse });
        }
        // The loop's own disk: positive corner in the east quadrant of the
        // loop crossing (degree 1), traversing the marked point if present.
        disks[k + j].push(Disk { sign: corner_sign(scheme, Quadrant::E, 1), word });

        let mut next = Vec::new();
        for s in states {
            if s.bot == lo && s.top == hi {
                let sign = s.sign * corner_sign(scheme, Quadrant::W, 1);
                disks[k + j].push(Disk { sign, word: s.word() });
            } else if s.bot == lo || s.bot == hi || s.top == lo || s.top == hi {
                // Runs into the eye; no completion.
            } else {
                next.push(s);
            }
        }
        states = next;
    }
    debug_assert!(states.is_empty(), "all intervals end at a crossing or loop");

    let differential: Vec<NcPoly> = disks
        .iter()
        .map(|ds| {
            let mut p = NcPoly::zero();
            for d in ds {
                p.add_term(d.word.clone(), d.sign);
            }
            p
        })
        .collect();

    let name_index = generators.iter().enumerate().map(|(i, g)| (g.name.clone(), i)).collect();
    Dga { components: front.components(), generators, differential, disks: Some(disks), name_index }
}

// --- validation ------------------------------------------------------------

/// Checks every structural invariant; returns human-readable violations
/// (empty means the DGA is well-formed):
///
/// * the differential lowers degree by exactly one on every word;
/// * the differential squares to zero over `Z`;
/// * each differential only uses chords of strictly lower height;
/// * words are compatible with the component labels: for `∂a ∋ b_1…b_s`,
///   `r(a) = r(b_1)`, `c(b_i) = r(b_{i+1})`, `c(b_s) = c(a)` (with
///   `r(t_i) = c(t_i) = i`, so the empty word needs `r(a) = c(a)`).
pub fn check_dga(dga: &Dga) -> Vec<String> {
    let mut bad = Vec::new();
    for (i, g) in dga.generators.iter().enumerate() {
        for (w, _) in dga.differential[i].terms() {
            if dga.word_degree(w) != g.degree - 1 {
                bad.push(format!(
                    "degree: d {} has a word of degree {} (expected {})",
                    g.name,
                    dga.word_degree(w),
                    g.degree - 1
                ));
            }
            for l in w {
                if let Letter::Chord(j) = l {
                    if dga.generators[*j].height >= g.height {
                        bad.push(format!(
                            "height: d {} uses {} of height {} >= {}",
                            g.name, dga.generators[*j].name, dga.generators[*j].height, g.height
                        ));
                    }
                }
            }
            // Component chain.
            let mut cur = g.r;
            let mut ok = true;
            for l in w {
                let (r, c) = dga.letter_rc(l);
                if r != cur {
                    ok = false;
                    break;
                }
                cur = c;
            }
            if ok && cur != g.c {
                ok = false;
            }
            if !ok {
                bad.push(format!(
                    "components: d {} has a word incompatible with (r, c) = ({}, {})",
                    g.name, g.r, g.c
                ));
            }
        }
        let dd = differential_of_poly(dga, &dga.differential[i]);
        if !dd.is_zero() {
            bad.push(format!("d^2: d(d {}) = {} != 0", g.name, dga.format_poly(&dd)));
        }
    }
    if let Some(disks) = &dga.disks {
        for (i, ds) in disks.iter().enumerate() {
            let mut p = NcPoly::zero();
            for d in ds {
                p.add_term(d.word.clone(), d.sign);
            }
            if p != dga.differential[i] {
                bad.push(format!(
                    "disks: disk sum for {} disagrees with its differential",
                    dga.generators[i].name
                ));
            }
        }
    }
    bad
}

// --- interchange format ------------------------------------------------------

#[derive(Serialize, Deserialize)]
struct RawGen {
    name: String,
    degree: i64,
    r: usize,
    c: usize,
    height: i64,
}

#[derive(Serialize, Deserialize)]
struct RawDga {
    components: usize,
    generators: Vec<RawGen>,
    differential: BTreeMap<String, Vec<(i64, Vec<String>)>>,
}

/// Serializes a DGA in the interchange format: generators in height order,
/// differential keys alphabetical, each entry a `[coefficient, [letters]]`
/// list in canonical word order, with `"t3"`/`"T3"` for `t_3^{±1}`.
pub fn save_dga(dga: &Dga) -> String {
    let generators = dga
        .generators
        .iter()
        .map(|g| RawGen {
            name: g.name.clone(),
            degree: g.degree,
            r: g.r,
            c: g.c,
            height: g.height,
        })
        .collect();
    let mut differential = BTreeMap::new();
    for (i, p) in dga.differential.iter().enumerate() {
        if p.is_zero() {
            continue;
        }
        let entry: Vec<(i64, Vec<String>)> =
            p.terms().map(|(w, c)| (c, w.iter().map(|l| dga.letter_name(l)).collect())).collect();
        differential.insert(dga.generators[i].name.clone(), entry);
    }
    let raw = RawDga { components: dga.components, generators, differential };
    let mut out = serde_json::to_string_pretty(&raw).expect("DGA serialization cannot fail");
    out.push('\n');
    out
}

/// Parses and fully validates a DGA from the interchange format. The loaded
/// presentation must pass [`check_dga`].
pub fn load_dga(text: &str) -> Result<Dga, DgaError> {
    let raw: RawDga = serde_json::from_str(text).map_err(|e| DgaError::Syntax(e.to_string()))?;
    if raw.components == 0 {
        return Err(DgaError::NoComponents);
    }
    let mut gens: Vec<Generator> = Vec::with_capacity(raw.generators.len());
    for g in &raw.generators {
        if g.r == 0 || g.r > raw.components {
            return Err(DgaError::BadComponent {
                name: g.name.clone(),
                label: g.r,
                max: raw.components,
            });
        }
        if g.c == 0 || g.c > raw.components {
            return Err(DgaError::BadComponent {
                name: g.name.clone(),
                label: g.c,
                max: raw.components,
            });
        }
        gens.push(Generator {
            name: g.name.clone(),
            degree: g.degree,
            r: g.r,
            c: g.c,
            height: g.height,
        });
    }
    gens.sort_by_key(|g| g.height);
    for w in gens.windows(2) {
        if w[0].height == w[1].height {
            return Err(DgaError::DuplicateHeight(w[0].height));
        }
    }
    let mut name_index: BTreeMap<String, usize> = BTreeMap::new();
    for (i, g) in gens.iter().enumerate() {
        if name_index.insert(g.name.clone(), i).is_some() {
            return Err(DgaError::DuplicateName(g.name.clone()));
        }
    }

    let parse_letter = |s: &str| -> Result<Letter, DgaError> {
        if let Some(i) = name_index.get(s) {
            return Ok(Letter::Chord(*i));
        }
        if let Some(rest) = s.strip_prefix('t').or_else(|| s.strip_prefix('T')) {
            if let Ok(comp) = rest.parse::<usize>() {
                if comp >= 1 && comp <= raw.components {
                    return Ok(Letter::T { comp, inv: s.starts_with('T') });
                }
            }
        }
        Err(DgaError::UnknownLetter(s.to_string()))
    };

    let mut differential = vec![NcPoly::zero(); gens.len()];
    for (name, entry) in &raw.differential {
        let idx = *name_index.get(name).ok_or_else(|| DgaError::UnknownGenerator(name.clone()))?;
        let mut p = NcPoly::zero();
        for (coeff, letters) in entry {
            let mut word = Vec::with_capacity(letters.len());
            for l in letters {
                word.push(parse_letter(l)?);
            }
            p.add_term(word, *coeff);
        }
        differential[idx] = p;
    }

    let dga =
        Dga { components: raw.components, generators: gens, differential, disks: None, name_index };
    let bad = check_dga(&dga);
    if !bad.is_empty() {
        return Err(DgaError::InvariantViolation(bad));
    }
    Ok(dga)
}

/// One-line summary of a DGA's generators, for reports.
pub fn describe_generators(dga: &Dga) -> String {
    let mut s = String::new();
    for g in &dga.generators {
        let _ = writeln!(
            s,
            "  {}  degree {}  r {}  c {}  height {}",
            g.name, g.degree, g.r, g.c, g.height
        );
    }
    s
}
