//! Plat-position front diagrams of Legendrian links.
//!
//! A plat front has `n` left cusps stacked at the far left (cusp `j` creates
//! strand positions `2j−1` and `2j`, numbered from the bottom), a sequence of
//! crossings read left to right (a crossing at position `p` interchanges the
//! strands at positions `p` and `p+1`), and right cusps closing positions
//! `(1,2), (3,4), …` at the far right.
//!
//! Parsing validates the diagram and computes all derived structure eagerly:
//! component tracing (components are numbered by their lowest left cusp),
//! a `Z`-valued Maslov potential per strand (fronts whose components have
//! nonzero rotation number are rejected, since none of the graded theory
//! downstream applies to them), Thurston–Bennequin number, and per-crossing
//! grading/orientation data consumed by the DGA and ruling modules.
//!
//! Conventions fixed here and relied on everywhere else:
//!
//! * at every cusp the upper branch has Maslov potential one greater than
//!   the lower branch;
//! * a crossing's degree is `μ(descending strand) − μ(ascending strand)`,
//!   where the descending strand enters from the upper left;
//! * strands are oriented eastward exactly when their potential is even, so
//!   a crossing's writhe contribution is `(−1)^degree` and
//!   `tb = Σ_crossings (−1)^degree − n`;
//! * each component carries one marked point, placed on the resolution loop
//!   of its lowest-index right cusp (overridable per component).

use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use thiserror::Error;

/// Errors from parsing or validating a plat front.
#[derive(Debug, Error)]
pub enum FrontError {
    #[error("malformed front JSON: {0}")]
    Syntax(String),
    #[error("left_cusps must be at least 1")]
    NoCusps,
    #[error("event {index}: position {pos} is out of range 1..={max}")]
    PositionOutOfRange { index: usize, pos: usize, max: usize },
    #[error("no component numbered {0} (components are 1..={1})")]
    UnknownComponent(usize, usize),
    #[error("right cusp {cusp} is not on component {comp}")]
    BadBasepoint { comp: usize, cusp: usize },
    #[error(
        "component {comp} has rotation number {rot}; fronts must admit a Z-valued Maslov potential"
    )]
    NonzeroRotation { comp: usize, rot: i64 },
    #[error("front too large: {cells} strand-slice cells exceed the supported {max}")]
    TooLarge { cells: usize, max: usize },
}

/// Upper bound on `2 · left_cusps · (events + 1)`, the size of the wire
/// bookkeeping; rejects absurd inputs before any allocation.
const MAX_SLICE_CELLS: usize = 1 << 22;

#[derive(Serialize, Deserialize)]
struct RawFront {
    name: String,
    left_cusps: usize,
    events: Vec<usize>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    maslov_shift: BTreeMap<String, i64>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    basepoint_cusp: BTreeMap<String, usize>,
}

/// Per-crossing derived data, in event order.
#[derive(Debug, Clone)]
pub struct CrossingData {
    /// 1-based lower position of the crossing.
    pub pos: usize,
    /// Wire entering from the lower left (exits upper right).
    pub asc_wire: usize,
    /// Wire entering from the upper left (exits lower right).
    pub desc_wire: usize,
    /// Chord degree `μ(desc) − μ(asc)`.
    pub degree: i64,
    /// Component of the descending strand.
    pub r_comp: usize,
    /// Component of the ascending strand.
    pub c_comp: usize,
}

/// Per-right-cusp derived data, in cusp order.
#[derive(Debug, Clone)]
pub struct CuspData {
    /// 1-based cusp index; the cusp closes final positions `2j−1, 2j`.
    pub index: usize,
    /// Wire arriving at the cusp on the lower branch.
    pub lower_wire: usize,
    /// Wire arriving at the cusp on the upper branch.
    pub upper_wire: usize,
    /// Component containing this cusp.
    pub comp: usize,
    /// Whether this cusp's resolution loop carries the component's marked point.
    pub has_basepoint: bool,
    /// Exponent convention at the marked point: `true` means the loop disk
    /// picks up `t^{-1}` rather than `t`.
    pub t_inverse: bool,
}

/// A validated plat front with all derived structure.
#[derive(Debug, Clone)]
pub struct PlatFront {
    name: String,
    n: usize,
    events: Vec<usize>,
    explicit_shift: BTreeMap<usize, i64>,
    explicit_bp: BTreeMap<usize, usize>,
    ell: usize,
    wire_component: Vec<usize>,
    slices: Vec<Vec<usize>>,
    mu: Vec<i64>,
    bp_cusp: Vec<usize>,
    tb: i64,
    crossings: Vec<CrossingData>,
    cusps: Vec<CuspData>,
}

impl PartialEq for PlatFront {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name
            && self.n == other.n
            && self.events == other.events
            && self.explicit_shift == other.explicit_shift
            && self.explicit_bp == other.explicit_bp
    }
}

/// Classical invariants of the front.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassicalInvariants {
    pub tb: i64,
    /// Rotation number per component. Always zero for validated fronts.
    pub rotation: Vec<i64>,
    pub components: usize,
}

struct Dsu(Vec<usize>);
impl Dsu {
    fn new(n: usize) -> Self {
        Dsu((0..n).collect())
    }
    fn find(&mut self, x: usize) -> usize {
        if self.0[x] != x {
            let r = self.find(self.0[x]);
            self.0[x] = r;
        }
        self.0[x]
    }
    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// Parses and validates a front from JSON text.
pub fn parse_front(text: &str) -> Result<PlatFront, FrontError> {
    let raw: RawFront =
        serde_json::from_str(text).map_err(|e| FrontError::Syntax(e.to_string()))?;
    build_front(raw)
}

/// Builds a validated front from its defining data.
pub fn make_front(
    name: &str,
    left_cusps: usize,
    events: &[usize],
    maslov_shift: &BTreeMap<usize, i64>,
    basepoint_cusp: &BTreeMap<usize, usize>,
) -> Result<PlatFront, FrontError> {
    build_front(RawFront {
        name: name.to_string(),
        left_cusps,
        events: events.to_vec(),
        maslov_shift: maslov_shift.iter().map(|(k, v)| (k.to_string(), *v)).collect(),
        basepoint_cusp: basepoint_cusp.iter().map(|(k, v)| (k.to_string(), *v)).collect(),
    })
}

fn parse_component_keys<T: Copy>(
    map: &BTreeMap<String, T>,
    ell: usize,
) -> Result<BTreeMap<usize, T>, FrontError> {
    let mut out = BTreeMap::new();
    for (k, v) in map {
        let c: usize = k
            .parse()
            .map_err(|_| FrontError::Syntax(format!("component key {:?} is not a number", k)))?;
        if c == 0 || c > ell {
            return Err(FrontError::UnknownComponent(c, ell));
        }
        out.insert(c, *v);
    }
    Ok(out)
}

fn build_front(raw: RawFront) -> Result<PlatFront, FrontError> {
    let n = raw.left_cusps;
    if n == 0 {
        return Err(FrontError::NoCusps);
    }
    let strands = 2 * n;
    let cells = strands.checked_mul(raw.events.len() + 1).unwrap_or(usize::MAX);
    if cells > MAX_SLICE_CELLS {
        return Err(FrontError::TooLarge { cells, max: MAX_SLICE_CELLS });
    }
    for (index, &pos) in raw.events.iter().enumerate() {
        if pos == 0 || pos >= strands {
            return Err(FrontError::PositionOutOfRange { index, pos, max: strands - 1 });
        }
    }

    // Trace wires through the crossings. `slices[s][pos0]` is the wire at
    // 0-based position `pos0` after the first `s` events; wires are named by
    // their initial position.
    let mut slices = Vec::with_capacity(raw.events.len() + 1);
    slices.push((0..strands).collect::<Vec<usize>>());
    for &pos in &raw.events {
        let mut next = slices.last().unwrap().clone();
        next.swap(pos - 1, pos);
        slices.push(next);
    }
    let last = slices.last().unwrap().clone();

    // Components: cusps pair up wire ends.
    let mut dsu = Dsu::new(strands);
    for j in 0..n {
        dsu.union(2 * j, 2 * j + 1);
        dsu.union(last[2 * j], last[2 * j + 1]);
    }
    let mut comp_of_root: BTreeMap<usize, usize> = BTreeMap::new();
    let mut wire_component = vec![0usize; strands];
    for w in 0..strands {
        let r = dsu.find(w);
        let next_id = comp_of_root.len() + 1;
        let id = *comp_of_root.entry(r).or_insert(next_id);
        wire_component[w] = id;
    }
    let ell = comp_of_root.len();

    let explicit_shift = parse_component_keys(&raw.maslov_shift, ell)?;
    let explicit_bp = parse_component_keys(&raw.basepoint_cusp, ell)?;

    // Right cusp j sits on the component of its wires.
    let cusp_comp: Vec<usize> = (0..n).map(|j| wire_component[last[2 * j]]).collect();

    // Resolve the marked cusp per component: lowest-index right cusp unless
    // overridden.
    let mut bp_cusp = vec![0usize; ell + 1];
    for j in 0..n {
        let c = cusp_comp[j];
        if bp_cusp[c] == 0 {
            bp_cusp[c] = j + 1;
        }
    }
    for (&c, &cusp) in &explicit_bp {
        if cusp == 0 || cusp > n || cusp_comp[cusp - 1] != c {
            return Err(FrontError::BadBasepoint { comp: c, cusp });
        }
        bp_cusp[c] = cusp;
    }

    // Maslov potential per wire: at every cusp the upper branch exceeds the
    // lower by one, and the potential is constant through crossings. The
    // lower strand entering the marked cusp of each component is pinned to
    // that component's shift (default 0).
    let mut edges: Vec<Vec<(usize, i64)>> = vec![Vec::new(); strands];
    for j in 0..n {
        edges[2 * j].push((2 * j + 1, 1));
        edges[2 * j + 1].push((2 * j, -1));
        let (lo, hi) = (last[2 * j], last[2 * j + 1]);
        edges[lo].push((hi, 1));
        edges[hi].push((lo, -1));
    }
    let mut mu = vec![i64::MIN; strands];
    for c in 1..=ell {
        let shift = explicit_shift.get(&c).copied().unwrap_or(0);
        let root = last[2 * (bp_cusp[c] - 1)];
        mu[root] = shift;
        let mut stack = vec![root];
        while let Some(w) = stack.pop() {
            for &(v, d) in &edges[w] {
                let val = mu[w] + d;
                if mu[v] == i64::MIN {
                    mu[v] = val;
                    stack.push(v);
                } else if mu[v] != val {
                    let rot = (val - mu[v]) / 2;
                    return Err(FrontError::NonzeroRotation { comp: c, rot: rot.abs() });
                }
            }
        }
    }

    // Per-crossing data and tb.
    let mut crossings = Vec::with_capacity(raw.events.len());
    let mut writhe = 0i64;
    for (e, &pos) in raw.events.iter().enumerate() {
        let asc_wire = slices[e][pos - 1];
        let desc_wire = slices[e][pos];
        let degree = mu[desc_wire] - mu[asc_wire];
        writhe += if degree.rem_euclid(2) == 0 { 1 } else { -1 };
        crossings.push(CrossingData {
            pos,
            asc_wire,
            desc_wire,
            degree,
            r_comp: wire_component[desc_wire],
            c_comp: wire_component[asc_wire],
        });
    }
    let tb = writhe - n as i64;

    let cusps = (0..n)
        .map(|j| {
            let lower_wire = last[2 * j];
            let upper_wire = last[2 * j + 1];
            let comp = cusp_comp[j];
            // After resolving the cusp into a loop, the strand that was upper
            // just west of the loop crossing descends to become the lower arc
            // of the eye; the marked point sits on that arc.
            let t_inverse = mu[upper_wire].rem_euclid(2) == 0;
            CuspData {
                index: j + 1,
                lower_wire,
                upper_wire,
                comp,
                has_basepoint: bp_cusp[comp] == j + 1,
                t_inverse,
            }
        })
        .collect();

    Ok(PlatFront {
        name: raw.name,
        n,
        events: raw.events,
        explicit_shift,
        explicit_bp,
        ell,
        wire_component,
        slices,
        mu,
        bp_cusp: bp_cusp[1..].to_vec(),
        tb,
        crossings,
        cusps,
    })
}

impl PlatFront {
    pub fn name(&self) -> &str {
        &self.name
    }
    /// Number of left cusps (equivalently right cusps).
    pub fn n_cusps(&self) -> usize {
        self.n
    }
    /// Number of strand positions, `2n`.
    pub fn strands(&self) -> usize {
        2 * self.n
    }
    pub fn events(&self) -> &[usize] {
        &self.events
    }
    /// Number of link components.
    pub fn components(&self) -> usize {
        self.ell
    }
    /// Component (1-based) of a wire, where wires are named by initial position (0-based).
    pub fn wire_component(&self, wire: usize) -> usize {
        self.wire_component[wire]
    }
    /// Maslov potential of a wire (shifts applied).
    pub fn wire_mu(&self, wire: usize) -> i64 {
        self.mu[wire]
    }
    /// Wire at 0-based `pos` in slice `s` (after `s` events).
    pub fn wire_at(&self, slice: usize, pos: usize) -> usize {
        self.slices[slice][pos]
    }
    /// Maslov potential at 0-based `pos` in slice `s`.
    pub fn mu_at(&self, slice: usize, pos: usize) -> i64 {
        self.mu[self.slices[slice][pos]]
    }
    pub fn crossing(&self, event: usize) -> &CrossingData {
        &self.crossings[event]
    }
    pub fn crossings(&self) -> &[CrossingData] {
        &self.crossings
    }
    pub fn cusp(&self, j: usize) -> &CuspData {
        &self.cusps[j]
    }
    pub fn cusps(&self) -> &[CuspData] {
        &self.cusps
    }
    /// Marked right cusp (1-based) of each component (index 0 = component 1).
    pub fn basepoint_cusps(&self) -> &[usize] {
        &self.bp_cusp
    }
    /// Canonical JSON form; `parse_front` of the output reproduces the front.
    pub fn to_json_string(&self) -> String {
        let raw = RawFront {
            name: self.name.clone(),
            left_cusps: self.n,
            events: self.events.clone(),
            maslov_shift: self.explicit_shift.iter().map(|(k, v)| (k.to_string(), *v)).collect(),
            basepoint_cusp: self.explicit_bp.iter().map(|(k, v)| (k.to_string(), *v)).collect(),
        };
        serde_json::to_string_pretty(&raw).expect("front serialization cannot fail")
    }
}

/// Thurston–Bennequin number, rotation numbers, and component count.
pub fn classical_invariants(front: &PlatFront) -> ClassicalInvariants {
    ClassicalInvariants { tb: front.tb, rotation: vec![0; front.ell], components: front.ell }
}

/// Maslov potential of every wire, indexed by wire (= initial position, 0-based).
pub fn maslov(front: &PlatFront) -> &[i64] {
    &front.mu
}

const BUILTIN_FRONTS: &[(&str, &str)] = &[
    ("unknot", include_str!("../fronts/unknot.json")),
    ("unlink2", include_str!("../fronts/unlink2.json")),
    ("hopf", include_str!("../fronts/hopf.json")),
    ("trefoil", include_str!("../fronts/trefoil.json")),
    ("m821", include_str!("../fronts/m821.json")),
    ("m945", include_str!("../fronts/m945.json")),
];

/// Names of the built-in example fronts, in canonical order.
pub fn builtin_names() -> Vec<&'static str> {
    BUILTIN_FRONTS.iter().map(|(n, _)| *n).collect()
}

/// Loads a built-in example front by name.
pub fn builtin(name: &str) -> Option<PlatFront> {
    BUILTIN_FRONTS
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, text)| parse_front(text).expect("built-in fronts are valid"))
}

/// A deterministic pseudo-random front sampler for property tests and
/// randomized searches: up to `n_max` left cusps and `k_max` crossings,
/// fully determined by `seed`. Invalid candidates (front crossings that
/// force a half-integer potential somewhere) are skipped, so distinct seeds
/// may yield the same front.
pub fn sample_front(n_max: usize, k_max: usize, seed: u64) -> PlatFront {
    assert!(n_max >= 1);
    let mut state = seed.wrapping_mul(0x9E3779B97F4A7C15).wrapping_add(1);
    let mut next = move || {
        // SplitMix64.
        state = state.wrapping_add(0x9E3779B97F4A7C15);
        let mut z = state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D049BB133111EB);
        z ^ (z >> 31)
    };
    loop {
        let n = 1 + (next() as usize) % n_max;
        let k = (next() as usize) % (k_max + 1);
        let events: Vec<usize> = (0..k).map(|_| 1 + (next() as usize) % (2 * n - 1)).collect();
        if let Ok(front) = make_front("sample", n, &events, &BTreeMap::new(), &BTreeMap::new()) {
            return front;
        }
    }
}
