//! The two path families: Delannoy step words and Kimberling vertex chains.
//!
//! A [`DelannoyPath`] is a word over `{E, N, D}`; a [`KimberlingPath`] is a
//! validated vertex sequence starting at the origin whose steps all have
//! finite nonnegative slope. Both are immutable once built.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// One lattice step. The derived order `D < E < N` is the enumeration order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Step {
    D,
    E,
    N,
}

impl Step {
    pub const ALL: [Step; 3] = [Step::D, Step::E, Step::N];

    /// `(dx, dy)` of the step.
    pub const fn displacement(self) -> (u32, u32) {
        match self {
            Step::E => (1, 0),
            Step::N => (0, 1),
            Step::D => (1, 1),
        }
    }

    pub const fn letter(self) -> char {
        match self {
            Step::E => 'E',
            Step::N => 'N',
            Step::D => 'D',
        }
    }

    pub fn from_char(c: char) -> Option<Step> {
        match c.to_ascii_uppercase() {
            'E' => Some(Step::E),
            'N' => Some(Step::N),
            'D' => Some(Step::D),
            _ => None,
        }
    }
}

#[derive(
    Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize,
)]
#[serde(from = "[u32; 2]", into = "[u32; 2]")]
pub struct LatticePoint {
    pub x: u32,
    pub y: u32,
}

impl LatticePoint {
    pub const ORIGIN: LatticePoint = LatticePoint { x: 0, y: 0 };

    pub const fn new(x: u32, y: u32) -> Self {
        LatticePoint { x, y }
    }

    fn offset(self, step: Step) -> Self {
        let (dx, dy) = step.displacement();
        LatticePoint::new(self.x + dx, self.y + dy)
    }
}

impl From<[u32; 2]> for LatticePoint {
    fn from([x, y]: [u32; 2]) -> Self {
        LatticePoint { x, y }
    }
}

impl From<LatticePoint> for [u32; 2] {
    fn from(p: LatticePoint) -> Self {
        [p.x, p.y]
    }
}

impl From<(u32, u32)> for LatticePoint {
    fn from((x, y): (u32, u32)) -> Self {
        LatticePoint { x, y }
    }
}

impl fmt::Display for LatticePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.x, self.y)
    }
}

/// A Delannoy path, stored as its step word.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct DelannoyPath {
    steps: Vec<Step>,
}

/// Endpoint `(n, n)` and East-step count `k` of a central path.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct CentralIndex {
    pub n: u32,
    pub k: u32,
}

impl DelannoyPath {
    pub fn new(steps: Vec<Step>) -> Self {
        DelannoyPath { steps }
    }

    /// Parses a word over `{E, N, D}`; lowercase is accepted. Error
    /// positions are 1-based.
    pub fn parse(text: &str) -> Result<Self> {
        text.chars()
            .enumerate()
            .map(|(i, c)| Step::from_char(c).ok_or(Error::InvalidCharacter(i + 1, c)))
            .collect::<Result<Vec<_>>>()
            .map(DelannoyPath::new)
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn count(&self, step: Step) -> usize {
        self.steps.iter().filter(|&&s| s == step).count()
    }

    pub fn e_count(&self) -> usize {
        self.count(Step::E)
    }

    pub fn n_count(&self) -> usize {
        self.count(Step::N)
    }

    pub fn d_count(&self) -> usize {
        self.count(Step::D)
    }

    /// Prefix sums of the step displacements, starting at the origin.
    pub fn vertices(&self) -> Vec<LatticePoint> {
        let mut out = Vec::with_capacity(self.steps.len() + 1);
        let mut at = LatticePoint::ORIGIN;
        out.push(at);
        for &s in &self.steps {
            at = at.offset(s);
            out.push(at);
        }
        out
    }

    pub fn endpoint(&self) -> LatticePoint {
        self.steps
            .iter()
            .fold(LatticePoint::ORIGIN, |p, &s| p.offset(s))
    }

    pub fn central_index(&self) -> Result<CentralIndex> {
        let (e, n, d) = self.steps.iter().fold((0, 0, 0), |(e, n, d), s| match s {
            Step::E => (e + 1, n, d),
            Step::N => (e, n + 1, d),
            Step::D => (e, n, d + 1),
        });
        if e != n {
            return Err(Error::NotCentral(e, n));
        }
        Ok(CentralIndex {
            n: (e + d) as u32,
            k: e as u32,
        })
    }

    pub fn is_central(&self) -> bool {
        self.central_index().is_ok()
    }
}

impl fmt::Display for DelannoyPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.steps {
            fmt::Write::write_char(f, s.letter())?;
        }
        Ok(())
    }
}

impl FromStr for DelannoyPath {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        DelannoyPath::parse(s)
    }
}

/// A lattice path from the origin with strictly increasing x and weakly
/// increasing y. Identity is the full vertex sequence.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct KimberlingPath {
    vertices: Vec<LatticePoint>,
}

impl KimberlingPath {
    pub fn new(vertices: Vec<LatticePoint>) -> Result<Self> {
        match vertices.first() {
            None => return Err(Error::EmptyPath),
            Some(&p) if p != LatticePoint::ORIGIN => return Err(Error::BadOrigin),
            Some(_) => {}
        }
        for (i, w) in vertices.windows(2).enumerate() {
            if w[1].x <= w[0].x {
                return Err(Error::NonIncreasingX(i + 1));
            }
            if w[1].y < w[0].y {
                return Err(Error::DecreasingY(i + 1));
            }
        }
        Ok(KimberlingPath { vertices })
    }

    /// Builds `(0,0), interior..., end` without re-validating. Callers must
    /// guarantee the invariants.
    pub(crate) fn from_parts_unchecked(
        interior: impl IntoIterator<Item = LatticePoint>,
        end: LatticePoint,
    ) -> Self {
        let mut vertices = vec![LatticePoint::ORIGIN];
        vertices.extend(interior);
        vertices.push(end);
        debug_assert!(KimberlingPath::new(vertices.clone()).is_ok());
        KimberlingPath { vertices }
    }

    pub fn vertices(&self) -> &[LatticePoint] {
        &self.vertices
    }

    pub fn endpoint(&self) -> LatticePoint {
        *self.vertices.last().expect("nonempty by construction")
    }

    /// All vertices but the first and last.
    pub fn interior_vertices(&self) -> &[LatticePoint] {
        if self.vertices.len() < 2 {
            return &[];
        }
        &self.vertices[1..self.vertices.len() - 1]
    }

    /// Parses either the JSON form `[[0,0],[2,1]]` or the compact form
    /// `(0,0);(2,1)`, then validates.
    pub fn parse(text: &str) -> Result<Self> {
        KimberlingPath::new(parse_vertex_list(text)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.vertices).expect("vertex list serializes")
    }

    pub fn to_compact(&self) -> String {
        let parts: Vec<String> = self.vertices.iter().map(|p| p.to_string()).collect();
        parts.join(";")
    }
}

impl<'de> Deserialize<'de> for KimberlingPath {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let vertices = Vec::<LatticePoint>::deserialize(de)?;
        KimberlingPath::new(vertices).map_err(serde::de::Error::custom)
    }
}

/// Reads a raw vertex list in JSON or compact text form. No path
/// validation is done here.
pub fn parse_vertex_list(text: &str) -> Result<Vec<LatticePoint>> {
    let text = text.trim();
    if text.starts_with('[') {
        return serde_json::from_str::<Vec<LatticePoint>>(text)
            .map_err(|e| Error::VertexSyntax(e.to_string()));
    }
    if text.is_empty() {
        return Ok(Vec::new());
    }
    text.split(';')
        .map(|part| {
            let inner = part
                .trim()
                .strip_prefix('(')
                .and_then(|s| s.strip_suffix(')'))
                .ok_or_else(|| Error::VertexSyntax(format!("expected (x,y), got {part:?}")))?;
            let (x, y) = inner
                .split_once(',')
                .ok_or_else(|| Error::VertexSyntax(format!("expected (x,y), got {part:?}")))?;
            let coord = |s: &str| {
                s.trim()
                    .parse::<u32>()
                    .map_err(|e| Error::VertexSyntax(format!("{s:?}: {e}")))
            };
            Ok(LatticePoint::new(coord(x)?, coord(y)?))
        })
        .collect()
}
