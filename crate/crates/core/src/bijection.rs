//! The map from central Delannoy `n`-paths to Kimberling paths ending at
//! `(n+1, n)`, and its inverse.
//!
//! Forward: label every step with the y-coordinate of its terminal vertex.
//! The i-th interior vertex of the image is (label of the i-th N step,
//! label of the i-th E step).
//!
//! Inverse: with `A` the interior x-coordinates, `B` the interior
//! y-coordinates and `C = {1..n} \ A`, merge the three into one weakly
//! increasing tagged sequence and read it back as a word (`A -> N`,
//! `B -> E`, `C -> D`).

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::{CentralIndex, DelannoyPath, KimberlingPath, LatticePoint, Step};

/// Terminal-y labels of a central path, grouped by step letter in step order.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct StepLabels {
    /// Labels of the N steps (strictly increasing, in `1..=n`).
    pub a_labels: Vec<u32>,
    /// Labels of the E steps (weakly increasing, in `0..=n`).
    pub b_labels: Vec<u32>,
    /// Labels of the D steps (strictly increasing, disjoint from `a_labels`).
    pub c_labels: Vec<u32>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Tag {
    A,
    B,
    C,
}

impl Tag {
    pub fn step(self) -> Step {
        match self {
            Tag::A => Step::N,
            Tag::B => Step::E,
            Tag::C => Step::D,
        }
    }

    /// Position among equal values in the merged sequence: A, then C, then B.
    fn tie_rank(self) -> u8 {
        match self {
            Tag::A => 0,
            Tag::C => 1,
            Tag::B => 2,
        }
    }
}

impl fmt::Display for Tag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Tag::A => "A",
            Tag::B => "B",
            Tag::C => "C",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct TaggedValue {
    pub value: u32,
    pub tag: Tag,
}

impl TaggedValue {
    pub const fn new(value: u32, tag: Tag) -> Self {
        TaggedValue { value, tag }
    }
}

impl fmt::Display for TaggedValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}^{}", self.value, self.tag)
    }
}

/// Labels each step of a central path with the y-coordinate of its end.
///
/// `central` must be the index of `path`; it is only consulted in debug builds.
pub fn step_labels(path: &DelannoyPath, central: CentralIndex) -> StepLabels {
    debug_assert_eq!(path.central_index(), Ok(central));
    let mut labels = StepLabels {
        a_labels: Vec::with_capacity(central.k as usize),
        b_labels: Vec::with_capacity(central.k as usize),
        c_labels: Vec::with_capacity((central.n - central.k) as usize),
    };
    let mut y = 0u32;
    for &s in path.steps() {
        y += s.displacement().1;
        match s {
            Step::N => labels.a_labels.push(y),
            Step::E => labels.b_labels.push(y),
            Step::D => labels.c_labels.push(y),
        }
    }
    labels
}

/// Forward map. Errors with `NotCentral` for non-central input.
pub fn phi(path: &DelannoyPath) -> Result<KimberlingPath> {
    let central = path.central_index()?;
    let labels = step_labels(path, central);
    let interior = labels
        .a_labels
        .iter()
        .zip(&labels.b_labels)
        .map(|(&x, &y)| LatticePoint::new(x, y));
    Ok(KimberlingPath::from_parts_unchecked(
        interior,
        LatticePoint::new(central.n + 1, central.n),
    ))
}

fn check_order(values: &[u32], strict: bool, name: &'static str) -> Result<()> {
    let ordered = values
        .windows(2)
        .all(|w| if strict { w[0] < w[1] } else { w[0] <= w[1] });
    if ordered {
        Ok(())
    } else {
        Err(Error::UnorderedLabels(name))
    }
}

/// Merges `A` (strict), `B` (weak) and `C` (strict) into one weakly
/// increasing tagged sequence. On equal values `A` precedes `B`, and each
/// `C` value sits as far left as possible, i.e. before any equal `B`s.
pub fn merge_tagged(a_set: &[u32], b_multiset: &[u32], c_set: &[u32]) -> Result<Vec<TaggedValue>> {
    check_order(a_set, true, "A")?;
    check_order(b_multiset, false, "B")?;
    check_order(c_set, true, "C")?;
    if a_set.first() == Some(&0) {
        return Err(Error::ZeroLabel("A"));
    }
    if c_set.first() == Some(&0) {
        return Err(Error::ZeroLabel("C"));
    }

    let mut out = Vec::with_capacity(a_set.len() + b_multiset.len() + c_set.len());
    let (mut ia, mut ib, mut ic) = (0, 0, 0);
    loop {
        let heads = [
            a_set.get(ia).map(|&v| TaggedValue::new(v, Tag::A)),
            b_multiset.get(ib).map(|&v| TaggedValue::new(v, Tag::B)),
            c_set.get(ic).map(|&v| TaggedValue::new(v, Tag::C)),
        ];
        if let (Some(a), Some(c)) = (heads[0], heads[2]) {
            if a.value == c.value {
                return Err(Error::OverlappingAC(a.value));
            }
        }
        let Some(next) = heads
            .into_iter()
            .flatten()
            .min_by_key(|t| (t.value, t.tag.tie_rank()))
        else {
            break;
        };
        match next.tag {
            Tag::A => ia += 1,
            Tag::B => ib += 1,
            Tag::C => ic += 1,
        }
        out.push(next);
    }
    Ok(out)
}

/// Intermediate data of the inverse map, kept for inspection.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InverseTrace {
    pub n: u32,
    pub a: Vec<u32>,
    pub b: Vec<u32>,
    pub c: Vec<u32>,
    pub merged: Vec<TaggedValue>,
    pub word: String,
}

/// Runs the inverse map and returns every intermediate.
pub fn phi_inverse_traced(kpath: &KimberlingPath) -> Result<InverseTrace> {
    let end = kpath.endpoint();
    if end.x != end.y + 1 {
        return Err(Error::BadEndpoint(end.x, end.y));
    }
    let n = end.y;
    let interior = kpath.interior_vertices();
    let a: Vec<u32> = interior.iter().map(|p| p.x).collect();
    let b: Vec<u32> = interior.iter().map(|p| p.y).collect();
    // A is a strictly increasing subset of 1..=n, so C is the gaps.
    let mut c = Vec::with_capacity(n as usize - a.len());
    let mut next_a = a.iter().peekable();
    for v in 1..=n {
        if next_a.peek() == Some(&&v) {
            next_a.next();
        } else {
            c.push(v);
        }
    }
    let merged = merge_tagged(&a, &b, &c)?;
    let word = merged.iter().map(|t| t.tag.step().letter()).collect();
    Ok(InverseTrace {
        n,
        a,
        b,
        c,
        merged,
        word,
    })
}

/// Inverse map. Errors with `BadEndpoint` unless the path ends at `(n+1, n)`.
pub fn phi_inverse(kpath: &KimberlingPath) -> Result<DelannoyPath> {
    let trace = phi_inverse_traced(kpath)?;
    Ok(DelannoyPath::new(
        trace.merged.iter().map(|t| t.tag.step()).collect(),
    ))
}
