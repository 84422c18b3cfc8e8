//! Gauss codes of virtual knot diagrams: parsing, classification and
//! transformation.
//!
//! A Gauss code is the cyclic sequence of classical-crossing visits read
//! along the knot, each visit recording the crossing label and whether the
//! strand passes over or under (plus an optional sign). Virtual crossings
//! are not recorded: a code determines a virtual diagram up to virtual
//! moves, and every quantity computed by this crate depends only on the
//! code, so the quotient costs nothing.
//!
//! Text form: `('O'|'U') [1-9][0-9]* ['+'|'-']?` per visit, whitespace
//! optional, e.g. `O1U2O3U1O2U3` for the trefoil.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::rng::SplitMix64;

/// Which strand of a crossing a visit runs on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Pass {
    Over,
    Under,
}

impl Pass {
    pub fn flipped(self) -> Pass {
        match self {
            Pass::Over => Pass::Under,
            Pass::Under => Pass::Over,
        }
    }
}

/// Crossing sign. Parsed and preserved, but ignored by every coloring and
/// determinant computation: the relation `2*over - under - under` does not
/// depend on it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn negated(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

/// One visit to a classical crossing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Visit {
    pub label: u32,
    pub pass: Pass,
    pub sign: Option<Sign>,
}

/// Errors produced while parsing or validating a Gauss code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CodeError {
    /// A token at this byte offset does not match `('O'|'U') [1-9][0-9]* ['+'|'-']?`.
    MalformedToken { position: usize },
    /// A label does not appear exactly once as `O` and once as `U`.
    LabelArity { label: u32 },
    /// The two visits of a label carry different signs.
    SignConflict { label: u32 },
    /// Crossing labels must be >= 1.
    InvalidLabel,
}

impl fmt::Display for CodeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CodeError::MalformedToken { position } => {
                write!(f, "malformed token at byte {position}")
            }
            CodeError::LabelArity { label } => {
                write!(f, "label {label} must appear exactly once as O and once as U")
            }
            CodeError::SignConflict { label } => {
                write!(f, "label {label} carries conflicting signs")
            }
            CodeError::InvalidLabel => write!(f, "crossing labels must be >= 1"),
        }
    }
}

impl core::error::Error for CodeError {}

/// Errors from the random code generator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GenerationError {
    /// Generation needs at least two crossings.
    CrossingCountTooSmall { k: u32 },
    /// Rejection sampling failed this many consecutive times. For k = 2
    /// this is the expected outcome: both alternating 2-chord patterns
    /// contain isolated chords, so no reduced code exists at all.
    Exhausted { attempts: u32 },
}

impl fmt::Display for GenerationError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GenerationError::CrossingCountTooSmall { k } => {
                write!(f, "cannot generate a reduced code with k = {k} < 2")
            }
            GenerationError::Exhausted { attempts } => {
                write!(f, "no reduced alternating code found after {attempts} attempts")
            }
        }
    }
}

impl core::error::Error for GenerationError {}

/// A validated Gauss code: every label occurs exactly once as `O` and once
/// as `U`, and signs (when present) agree between the two visits of a
/// label. The visit sequence is cyclic; the unknot is the empty code.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GaussCode {
    visits: Vec<Visit>,
}

/// Classification of a diagram: alternation, reducedness, and the summand
/// decomposition when the code splits as a connected sum.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiagramClass {
    pub alternating: bool,
    /// No isolated chord and k >= 2. (For k <= 1 the coloring matrix
    /// degenerates, so those codes are classified not reduced.)
    pub reduced: bool,
    pub isolated_chords: BTreeSet<u32>,
    pub summand_split: Option<(GaussCode, GaussCode)>,
}

impl GaussCode {
    /// Validates and wraps a visit sequence.
    pub fn new(visits: Vec<Visit>) -> Result<Self, CodeError> {
        let mut seen: BTreeMap<u32, (u8, u8, Option<Sign>)> = BTreeMap::new();
        for visit in &visits {
            if visit.label == 0 {
                return Err(CodeError::InvalidLabel);
            }
            let entry = seen.entry(visit.label).or_insert((0, 0, None));
            match visit.pass {
                Pass::Over => entry.0 += 1,
                Pass::Under => entry.1 += 1,
            }
            match (entry.2, visit.sign) {
                (Some(a), Some(b)) if a != b => {
                    return Err(CodeError::SignConflict { label: visit.label })
                }
                (None, Some(sign)) => entry.2 = Some(sign),
                _ => {}
            }
        }
        for (&label, &(overs, unders, _)) in &seen {
            if overs != 1 || unders != 1 {
                return Err(CodeError::LabelArity { label });
            }
        }
        Ok(GaussCode { visits })
    }

    /// The empty code (unknot).
    pub fn unknot() -> Self {
        GaussCode { visits: Vec::new() }
    }

    /// Number of classical crossings.
    pub fn crossing_count(&self) -> usize {
        self.visits.len() / 2
    }

    pub fn is_empty(&self) -> bool {
        self.visits.is_empty()
    }

    pub fn visits(&self) -> &[Visit] {
        &self.visits
    }

    /// Crossing labels in ascending order.
    pub fn labels(&self) -> Vec<u32> {
        let mut labels: Vec<u32> = self
            .visits
            .iter()
            .filter(|v| v.pass == Pass::Over)
            .map(|v| v.label)
            .collect();
        labels.sort_unstable();
        labels
    }

    /// Positions of the two visits of every label, keyed by label; the
    /// pair is (over position, under position).
    pub fn chord_positions(&self) -> BTreeMap<u32, (usize, usize)> {
        let mut over = BTreeMap::new();
        let mut under = BTreeMap::new();
        for (i, v) in self.visits.iter().enumerate() {
            match v.pass {
                Pass::Over => over.insert(v.label, i),
                Pass::Under => under.insert(v.label, i),
            };
        }
        over.into_iter().map(|(l, o)| (l, (o, under[&l]))).collect()
    }

    /// True iff over- and under-passes strictly alternate around the
    /// cycle. The unknot counts as alternating.
    pub fn is_alternating(&self) -> bool {
        let n = self.visits.len();
        (0..n).all(|i| self.visits[i].pass != self.visits[(i + 1) % n].pass)
    }

    /// Labels whose chord interleaves with no other chord. Chord `c`
    /// interleaves with `d` iff exactly one visit of `d` lies strictly
    /// between the two visits of `c` along the cycle, i.e. iff the chords
    /// cross when drawn inside the circle.
    pub fn isolated_chords(&self) -> BTreeSet<u32> {
        let chords = self.chord_positions();
        let mut isolated = BTreeSet::new();
        for (&label, &(o, u)) in &chords {
            let (lo, hi) = if o < u { (o, u) } else { (u, o) };
            let interleaves = chords.iter().any(|(&other, &(oo, ou))| {
                other != label && {
                    let a = lo < oo && oo < hi;
                    let b = lo < ou && ou < hi;
                    a != b
                }
            });
            if !interleaves {
                isolated.insert(label);
            }
        }
        isolated
    }

    /// Reduced: no isolated chord and k >= 2.
    pub fn is_reduced(&self) -> bool {
        self.crossing_count() >= 2 && self.isolated_chords().is_empty()
    }

    /// Mirror image: every over-pass becomes an under-pass and vice
    /// versa; signs are negated. This is an involution.
    pub fn mirror(&self) -> GaussCode {
        GaussCode {
            visits: self
                .visits
                .iter()
                .map(|v| Visit {
                    label: v.label,
                    pass: v.pass.flipped(),
                    sign: v.sign.map(Sign::negated),
                })
                .collect(),
        }
    }

    /// The same cyclic sequence read starting from `offset`.
    pub fn rotated(&self, offset: usize) -> GaussCode {
        if self.visits.is_empty() {
            return self.clone();
        }
        let n = self.visits.len();
        let offset = offset % n;
        let mut visits = Vec::with_capacity(n);
        visits.extend_from_slice(&self.visits[offset..]);
        visits.extend_from_slice(&self.visits[..offset]);
        GaussCode { visits }
    }

    /// Renumbers crossings 1..k in order of first appearance.
    pub fn relabeled_by_first_appearance(&self) -> GaussCode {
        let mut map: BTreeMap<u32, u32> = BTreeMap::new();
        let mut next = 1u32;
        let visits = self
            .visits
            .iter()
            .map(|v| {
                let label = *map.entry(v.label).or_insert_with(|| {
                    let l = next;
                    next += 1;
                    l
                });
                Visit { label, ..*v }
            })
            .collect();
        GaussCode { visits }
    }

    /// Connected sum: `self`'s visit sequence followed by `other`'s, with
    /// `other`'s labels shifted past `self`'s largest label.
    pub fn connected_sum(&self, other: &GaussCode) -> GaussCode {
        self.connected_sum_rotated(other, 0)
    }

    /// Connected sum with `other` read from a cyclic offset, which
    /// preserves its chord structure; useful to keep the sum alternating
    /// when the seam would otherwise put two equal pass-kinds together.
    pub fn connected_sum_rotated(&self, other: &GaussCode, offset: usize) -> GaussCode {
        let shift = self.labels().last().copied().unwrap_or(0);
        let rotated = other.rotated(offset);
        let mut visits = self.visits.clone();
        visits.extend(rotated.visits.iter().map(|v| Visit {
            label: v.label + shift,
            ..*v
        }));
        GaussCode { visits }
    }

    /// Splits the cyclic sequence at two cut points into nonempty halves
    /// with no chord spanning both, if possible. Returns the halves
    /// relabeled 1..k each. Among all valid splits the one with the
    /// smallest first cut position, then smallest second, is returned.
    pub fn find_summand_split(&self) -> Option<(GaussCode, GaussCode)> {
        let n = self.visits.len();
        if n == 0 {
            return None;
        }
        let chords = self.chord_positions();
        for i in 0..n {
            for j in (i + 1)..n {
                // first half = positions [i, j), second half = the rest
                let spanning = chords.values().any(|&(o, u)| {
                    let o_in = i <= o && o < j;
                    let u_in = i <= u && u < j;
                    o_in != u_in
                });
                if !spanning {
                    let first: Vec<Visit> = (i..j).map(|p| self.visits[p]).collect();
                    let second: Vec<Visit> =
                        (j..j + n - (j - i)).map(|p| self.visits[p % n]).collect();
                    let first = GaussCode { visits: first }.relabeled_by_first_appearance();
                    let second = GaussCode { visits: second }.relabeled_by_first_appearance();
                    return Some((first, second));
                }
            }
        }
        None
    }

    /// Full classification record.
    pub fn classify(&self) -> DiagramClass {
        let isolated_chords = self.isolated_chords();
        DiagramClass {
            alternating: self.is_alternating(),
            reduced: self.crossing_count() >= 2 && isolated_chords.is_empty(),
            isolated_chords,
            summand_split: self.find_summand_split(),
        }
    }
}

/// Generates a random reduced alternating code with `k` crossings,
/// deterministically in `(k, seed)`.
///
/// Construction: over-passes sit at odd positions (1-indexed) and
/// under-passes at even ones, so the code alternates by construction; a
/// Fisher-Yates permutation drawn from a splitmix64 stream matches each
/// crossing's over slot with an under slot. Candidates are rejected until
/// no isolated chord remains.
///
/// There is no reduced alternating code with k = 2 (both 2-chord
/// alternating patterns are nugatory), so k = 2 always exhausts its
/// rejection budget.
pub fn random_reduced_alternating(k: u32, seed: u64) -> Result<GaussCode, GenerationError> {
    const MAX_ATTEMPTS: u32 = 10_000;
    if k < 2 {
        return Err(GenerationError::CrossingCountTooSmall { k });
    }
    let k = k as usize;
    let mut rng = SplitMix64::new(seed);
    for _ in 0..MAX_ATTEMPTS {
        let perm = rng.permutation(k);
        let mut visits = vec![
            Visit {
                label: 0,
                pass: Pass::Over,
                sign: None
            };
            2 * k
        ];
        for (i, &slot) in perm.iter().enumerate() {
            let label = i as u32 + 1;
            visits[2 * i] = Visit { label, pass: Pass::Over, sign: None };
            visits[2 * slot + 1] = Visit { label, pass: Pass::Under, sign: None };
        }
        let code = GaussCode { visits };
        if code.isolated_chords().is_empty() {
            return Ok(code);
        }
    }
    Err(GenerationError::Exhausted { attempts: MAX_ATTEMPTS })
}

impl fmt::Display for GaussCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for v in &self.visits {
            match v.pass {
                Pass::Over => write!(f, "O")?,
                Pass::Under => write!(f, "U")?,
            }
            write!(f, "{}", v.label)?;
            match v.sign {
                Some(Sign::Plus) => write!(f, "+")?,
                Some(Sign::Minus) => write!(f, "-")?,
                None => {}
            }
        }
        Ok(())
    }
}

impl FromStr for GaussCode {
    type Err = CodeError;

    fn from_str(s: &str) -> Result<Self, CodeError> {
        let bytes = s.as_bytes();
        let mut visits = Vec::new();
        let mut i = 0;
        while i < bytes.len() {
            if bytes[i].is_ascii_whitespace() {
                i += 1;
                continue;
            }
            let start = i;
            let pass = match bytes[i] {
                b'O' => Pass::Over,
                b'U' => Pass::Under,
                _ => return Err(CodeError::MalformedToken { position: start }),
            };
            i += 1;
            if i >= bytes.len() || !bytes[i].is_ascii_digit() || bytes[i] == b'0' {
                return Err(CodeError::MalformedToken { position: start });
            }
            let mut label: u64 = 0;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                label = label * 10 + u64::from(bytes[i] - b'0');
                if label > u64::from(u32::MAX) {
                    return Err(CodeError::MalformedToken { position: start });
                }
                i += 1;
            }
            let sign = if i < bytes.len() && (bytes[i] == b'+' || bytes[i] == b'-') {
                let s = if bytes[i] == b'+' { Sign::Plus } else { Sign::Minus };
                i += 1;
                Some(s)
            } else {
                None
            };
            visits.push(Visit { label: label as u32, pass, sign });
        }
        GaussCode::new(visits)
    }
}
