//! Subdiagonal predicates and the per-East-step diagonal comparisons.
//!
//! All comparisons against a line through the origin are done by integer
//! cross-multiplication.

use serde::Serialize;

use crate::bijection::phi;
use crate::error::{Error, Result};
use crate::lattice::{DelannoyPath, KimberlingPath, LatticePoint, Step};

/// Terminal vertex of the `index`-th (1-based) East step.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct EastEnd {
    pub index: u32,
    pub point: LatticePoint,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct DiagonalFlags {
    /// i-th East step ends weakly above `y = x`.
    pub east_weakly_above: Vec<bool>,
    /// i-th interior vertex of the image lies strictly above `y = n/(n+1) x`.
    pub vertex_strictly_above: Vec<bool>,
}

/// How the i-th N and i-th E steps sit relative to the D steps: `u` Ds
/// precede the i-th N, `v` Ds precede the i-th E.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ProofCase {
    /// `u = v`
    Equal,
    /// `u < v`
    UBelowV,
    /// `u > v`
    UAboveV,
}

impl ProofCase {
    pub const ALL: [ProofCase; 3] = [ProofCase::Equal, ProofCase::UBelowV, ProofCase::UAboveV];

    pub fn as_str(self) -> &'static str {
        match self {
            ProofCase::Equal => "u=v",
            ProofCase::UBelowV => "u<v",
            ProofCase::UAboveV => "u>v",
        }
    }
}

/// `(x, y)` lies weakly below the segment from the origin to `end`.
pub fn weakly_below(p: LatticePoint, end: LatticePoint) -> bool {
    p.y as u64 * end.x as u64 <= p.x as u64 * end.y as u64
}

/// Every vertex satisfies `Y <= X`.
pub fn is_subdiagonal_delannoy(path: &DelannoyPath) -> bool {
    let (mut x, mut y) = (0u32, 0u32);
    path.steps().iter().all(|s| {
        let (dx, dy) = s.displacement();
        x += dx;
        y += dy;
        y <= x
    })
}

/// Every vertex satisfies `y (n+1) <= x n`. The path must end at `(n+1, n)`.
pub fn is_subdiagonal_kimberling(kpath: &KimberlingPath) -> Result<bool> {
    let end = kpath.endpoint();
    if end.x != end.y + 1 {
        return Err(Error::BadEndpoint(end.x, end.y));
    }
    Ok(is_subdiagonal_kimberling_to(kpath))
}

/// Vertex test against the line to the path's own endpoint, for any `K_{i,j}`.
pub fn is_subdiagonal_kimberling_to(kpath: &KimberlingPath) -> bool {
    let end = kpath.endpoint();
    kpath.vertices().iter().all(|&p| weakly_below(p, end))
}

pub fn east_ends(path: &DelannoyPath) -> Vec<EastEnd> {
    let (mut x, mut y, mut index) = (0u32, 0u32, 0u32);
    let mut out = Vec::new();
    for &s in path.steps() {
        let (dx, dy) = s.displacement();
        x += dx;
        y += dy;
        if s == Step::E {
            index += 1;
            out.push(EastEnd {
                index,
                point: LatticePoint::new(x, y),
            });
        }
    }
    out
}

pub fn diagonal_flags(path: &DelannoyPath) -> Result<DiagonalFlags> {
    let image = phi(path)?;
    let n = image.endpoint().y as u64;
    let east_weakly_above = east_ends(path)
        .iter()
        .map(|e| e.point.y >= e.point.x)
        .collect();
    let vertex_strictly_above = image
        .interior_vertices()
        .iter()
        .map(|v| v.y as u64 * (n + 1) > v.x as u64 * n)
        .collect();
    Ok(DiagonalFlags {
        east_weakly_above,
        vertex_strictly_above,
    })
}

/// `(u, v)` for each East index: Ds before the i-th N and before the i-th E.
pub fn d_counts_before(path: &DelannoyPath) -> Vec<(u32, u32)> {
    let mut before_n = Vec::new();
    let mut before_e = Vec::new();
    let mut ds = 0u32;
    for &s in path.steps() {
        match s {
            Step::D => ds += 1,
            Step::N => before_n.push(ds),
            Step::E => before_e.push(ds),
        }
    }
    before_n.into_iter().zip(before_e).collect()
}

pub fn proof_cases(path: &DelannoyPath) -> Vec<ProofCase> {
    d_counts_before(path)
        .into_iter()
        .map(|(u, v)| match u.cmp(&v) {
            std::cmp::Ordering::Equal => ProofCase::Equal,
            std::cmp::Ordering::Less => ProofCase::UBelowV,
            std::cmp::Ordering::Greater => ProofCase::UAboveV,
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn word(w: &str) -> DelannoyPath {
        DelannoyPath::parse(w).unwrap()
    }

    fn kpath(v: &[(u32, u32)]) -> KimberlingPath {
        KimberlingPath::new(v.iter().copied().map(LatticePoint::from).collect()).unwrap()
    }

    #[test]
    fn delannoy_subdiagonal() {
        assert!(is_subdiagonal_delannoy(&word("EN")));
        assert!(!is_subdiagonal_delannoy(&word("NE")));
        assert!(is_subdiagonal_delannoy(&word("")));
        assert!(is_subdiagonal_delannoy(&word("DEN")));
    }

    #[test]
    fn kimberling_subdiagonal() {
        assert_eq!(
            is_subdiagonal_kimberling(&kpath(&[(0, 0), (1, 0), (2, 1)])),
            Ok(true)
        );
        assert_eq!(
            is_subdiagonal_kimberling(&kpath(&[(0, 0), (1, 1), (2, 1)])),
            Ok(false)
        );
        for n in 0..20 {
            assert_eq!(
                is_subdiagonal_kimberling(&kpath(&[(0, 0), (n + 1, n)])),
                Ok(true)
            );
        }
        assert_eq!(
            is_subdiagonal_kimberling(&kpath(&[(0, 0), (3, 1)])),
            Err(Error::BadEndpoint(3, 1))
        );
    }

    #[test]
    fn east_end_points() {
        let pts: Vec<_> = east_ends(&word("NEEDNNNEDDEEN"))
            .into_iter()
            .map(|e| (e.point.x, e.point.y))
            .collect();
        assert_eq!(pts, [(1, 1), (2, 1), (4, 5), (7, 7), (8, 7)]);
        assert_eq!(
            east_ends(&word("EN")),
            [EastEnd {
                index: 1,
                point: LatticePoint::new(1, 0)
            }]
        );
        assert!(east_ends(&word("D")).is_empty());
    }

    #[test]
    fn flags_small() {
        let f = diagonal_flags(&word("NE")).unwrap();
        assert_eq!(
            (f.east_weakly_above, f.vertex_strictly_above),
            (vec![true], vec![true])
        );
        let f = diagonal_flags(&word("EN")).unwrap();
        assert_eq!(
            (f.east_weakly_above, f.vertex_strictly_above),
            (vec![false], vec![false])
        );
        assert_eq!(
            diagonal_flags(&word("D")).unwrap(),
            DiagonalFlags::default()
        );
        assert_eq!(diagonal_flags(&word("EE")), Err(Error::NotCentral(2, 0)));
    }

    #[test]
    fn proof_case_classification() {
        // i-th N and i-th E with no Ds anywhere
        assert_eq!(proof_cases(&word("NE")), [ProofCase::Equal]);
        // N, then D, then E: u = 0, v = 1
        assert_eq!(proof_cases(&word("NDE")), [ProofCase::UBelowV]);
        assert_eq!(proof_cases(&word("EDN")), [ProofCase::UAboveV]);
        assert_eq!(d_counts_before(&word("EDN")), [(1, 0)]);
    }
}
