//! Exact density invariants.
//!
//! For a graph with `v` vertices and `e` edges:
//!
//! * `d  = e / v`
//! * `d1 = e / (v - 1)`, or 0 when edgeless
//! * `d2 = (e - 1) / (v - 2)`, or 0 when edgeless and 1/2 for a single edge
//!
//! `m`, `m1` and `m2` maximise these over subgraphs. Adding edges on a fixed
//! vertex set never lowers any of them, so the maximum is found by scanning the
//! induced subgraph on every vertex subset. All comparisons are exact.

use std::fmt;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Edge, Graph};

pub type Rational = Ratio<i64>;

/// Subset scans refuse graphs with more vertices than this unless overridden.
pub const DEFAULT_VERTEX_CAP: usize = 16;
/// Hard ceiling for overrides; the edge-count table holds `2^cap` entries.
pub const MAX_VERTEX_CAP: usize = 26;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DensityKind {
    /// `d` / `m`
    Density,
    /// `d1` / `m1`
    OneDensity,
    /// `d2` / `m2`
    TwoDensity,
}

impl DensityKind {
    pub fn index(self) -> u8 {
        match self {
            DensityKind::Density => 0,
            DensityKind::OneDensity => 1,
            DensityKind::TwoDensity => 2,
        }
    }

    pub fn from_index(i: u8) -> Option<Self> {
        match i {
            0 => Some(DensityKind::Density),
            1 => Some(DensityKind::OneDensity),
            2 => Some(DensityKind::TwoDensity),
            _ => None,
        }
    }

    /// Value on a graph with the given counts as `(numerator, denominator)`;
    /// `None` for `d` of the empty vertex set.
    #[inline]
    fn fraction(self, v: i64, e: i64) -> Option<(i64, i64)> {
        match self {
            DensityKind::Density => (v > 0).then_some((e, v)),
            DensityKind::OneDensity if e == 0 => Some((0, 1)),
            DensityKind::OneDensity => Some((e, v - 1)),
            DensityKind::TwoDensity if e == 0 => Some((0, 1)),
            DensityKind::TwoDensity if v == 2 => Some((1, 2)),
            DensityKind::TwoDensity => Some((e - 1, v - 2)),
        }
    }
}

/// Always `num/den`, including integers (`2/1`).
pub fn format_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Serde adaptor writing a [`Rational`] in the `num/den` form.
pub fn serialize_rational<S: serde::Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&format_rational(r))
}

/// Density value from raw counts; `None` only for `d` with `v = 0`.
pub fn density_from_counts(v: usize, e: usize, kind: DensityKind) -> Option<Rational> {
    kind.fraction(v as i64, e as i64)
        .map(|(num, den)| Rational::new(num, den))
}

pub fn local_density(g: &Graph, kind: DensityKind) -> Result<Rational> {
    density_from_counts(g.vertex_count(), g.edge_count(), kind)
        .ok_or_else(|| Error::domain("local_density", "d is undefined on the 0-vertex graph"))
}

/// Maximum of a density over subgraphs, with a smallest attaining vertex set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DensityReport {
    pub value: Rational,
    pub witness: Vec<usize>,
    pub kind: DensityKind,
}

impl Serialize for DensityReport {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("DensityReport", 3)?;
        st.serialize_field("value", &format_rational(&self.value))?;
        st.serialize_field("witness", &self.witness)?;
        st.serialize_field("kind", &self.kind)?;
        st.end()
    }
}

impl fmt::Display for DensityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", format_rational(&self.value))
    }
}

#[derive(Clone, Copy)]
struct Candidate {
    num: i64,
    den: i64,
    size: u32,
    mask: u64,
}

impl Candidate {
    /// Larger value, then fewer vertices, then lexicographically smaller vertex list.
    fn beats(&self, other: &Candidate) -> bool {
        let lhs = self.num as i128 * other.den as i128;
        let rhs = other.num as i128 * self.den as i128;
        if lhs != rhs {
            return lhs > rhs;
        }
        if self.size != other.size {
            return self.size < other.size;
        }
        let diff = self.mask ^ other.mask;
        diff != 0 && self.mask & (diff & diff.wrapping_neg()) != 0
    }
}

fn mask_vertices(mask: u64) -> Vec<usize> {
    (0..64).filter(|&v| mask >> v & 1 == 1).collect()
}

/// Edge counts of every induced subgraph, indexed by vertex bitmask.
fn subset_edge_counts(g: &Graph, op: &'static str, cap: usize) -> Result<Vec<u16>> {
    let n = g.vertex_count();
    let cap = cap.min(MAX_VERTEX_CAP);
    if n > cap {
        return Err(Error::budget(
            op,
            format!("{n} vertices exceed the subset-scan cap of {cap}"),
        ));
    }
    let adj = g.adjacency_masks().expect("n is below 64");
    let mut counts = vec![0u16; 1 << n];
    for mask in 1u64..(1 << n) {
        let low = mask.trailing_zeros() as usize;
        let rest = mask & (mask - 1);
        counts[mask as usize] = counts[rest as usize] + (adj[low] & rest).count_ones() as u16;
    }
    Ok(counts)
}

pub fn max_density(g: &Graph, kind: DensityKind) -> Result<DensityReport> {
    max_density_with_cap(g, kind, DEFAULT_VERTEX_CAP)
}

pub fn max_density_with_cap(g: &Graph, kind: DensityKind, cap: usize) -> Result<DensityReport> {
    let counts = subset_edge_counts(g, "max_density", cap)?;
    let mut best: Option<Candidate> = None;
    for (mask, &e) in counts.iter().enumerate().skip(1) {
        let size = (mask as u64).count_ones();
        let (num, den) = kind
            .fraction(size as i64, e as i64)
            .expect("non-empty subsets always have a value");
        let cand = Candidate {
            num,
            den,
            size,
            mask: mask as u64,
        };
        if best.as_ref().is_none_or(|b| cand.beats(b)) {
            best = Some(cand);
        }
    }
    Ok(match best {
        Some(b) => DensityReport {
            value: Rational::new(b.num, b.den),
            witness: mask_vertices(b.mask),
            kind,
        },
        None => DensityReport {
            value: Rational::from_integer(0),
            witness: Vec::new(),
            kind,
        },
    })
}

/// `m2(G)`.
pub fn two_density(g: &Graph) -> Result<Rational> {
    Ok(max_density(g, DensityKind::TwoDensity)?.value)
}

/// A subgraph that breaks (strict) balancedness.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    /// Vertex set of the offending subgraph.
    pub vertices: Vec<usize>,
    /// Set when the subgraph is the whole graph minus this edge.
    pub removed_edge: Option<Edge>,
    #[serde(serialize_with = "serialize_rational")]
    pub density: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BalanceReport {
    pub holds: bool,
    pub counterexample: Option<Counterexample>,
}

/// Balancedness against the graph's own density.
///
/// Non-strict: no subgraph is denser than `G`. Strict: every proper subgraph
/// with an edge is strictly sparser (a lone edge counts, with `d2 = 1/2`).
/// Proper subgraphs are the induced subgraphs on proper vertex subsets plus
/// `G` minus a single edge; removing further edges only lowers the density.
pub fn balance_report(g: &Graph, kind: DensityKind, strict: bool) -> Result<BalanceReport> {
    const OP: &str = "balancedness";
    if g.edge_count() == 0 {
        return Err(Error::domain(OP, "graph has no edges"));
    }
    let n = g.vertex_count();
    let counts = subset_edge_counts(g, OP, DEFAULT_VERTEX_CAP)?;
    let full = (1u64 << n) - 1;
    let (gn, gd) = kind
        .fraction(n as i64, g.edge_count() as i64)
        .expect("graph has vertices");
    let violates = |num: i64, den: i64| {
        let lhs = num as i128 * gd as i128;
        let rhs = gn as i128 * den as i128;
        if strict {
            lhs >= rhs
        } else {
            lhs > rhs
        }
    };
    let mut worst: Option<Candidate> = None;
    for (mask, &e) in counts.iter().enumerate().skip(1) {
        let mask = mask as u64;
        let size = mask.count_ones();
        if mask == full || e == 0 {
            continue;
        }
        let (num, den) = kind.fraction(size as i64, e as i64).expect("non-empty");
        if violates(num, den) {
            let cand = Candidate { num, den, size, mask };
            if worst.as_ref().is_none_or(|w| cand.beats(w)) {
                worst = Some(cand);
            }
        }
    }
    let mut counterexample = worst.map(|w| Counterexample {
        vertices: mask_vertices(w.mask),
        removed_edge: None,
        density: Rational::new(w.num, w.den),
    });
    let deletions_apply = g.edge_count() >= 2;
    if strict && counterexample.is_none() && deletions_apply {
        let (num, den) = kind
            .fraction(n as i64, g.edge_count() as i64 - 1)
            .expect("graph has vertices");
        if violates(num, den) {
            counterexample = Some(Counterexample {
                vertices: (0..n).collect(),
                removed_edge: Some(g.edges()[0]),
                density: Rational::new(num, den),
            });
        }
    }
    Ok(BalanceReport {
        holds: counterexample.is_none(),
        counterexample,
    })
}

pub fn balancedness(g: &Graph, kind: DensityKind, strict: bool) -> Result<bool> {
    Ok(balance_report(g, kind, strict)?.holds)
}

/// Lexicographically first edge `h` with `m2(H - h) < m2(H)`.
pub fn find_m2_decreasing_edge(h: &Graph) -> Result<Option<Edge>> {
    if h.edge_count() == 0 {
        return Err(Error::domain("find_m2_decreasing_edge", "graph has no edges"));
    }
    let whole = two_density(h)?;
    for &e in h.edges() {
        if two_density(&h.without_edge(e))? < whole {
            return Ok(Some(e));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::families::*;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn local_examples() {
        let two = DensityKind::TwoDensity;
        assert_eq!(local_density(&complete(3), two).unwrap(), r(2, 1));
        assert_eq!(local_density(&complete(2), two).unwrap(), r(1, 2));
        assert_eq!(local_density(&cycle(4), two).unwrap(), r(3, 2));
        assert_eq!(local_density(&Graph::empty(5), two).unwrap(), r(0, 1));
        assert_eq!(
            local_density(&Graph::empty(5), DensityKind::OneDensity).unwrap(),
            r(0, 1)
        );
        assert_eq!(local_density(&complete(4), DensityKind::Density).unwrap(), r(3, 2));
        assert!(local_density(&Graph::empty(0), DensityKind::Density).is_err());
    }

    #[test]
    fn max_examples() {
        let rep = max_density(&complete(4), DensityKind::TwoDensity).unwrap();
        assert_eq!(rep.value, r(5, 2));
        assert_eq!(rep.witness, vec![0, 1, 2, 3]);
        let rep = max_density(&triangle_with_pendant(), DensityKind::TwoDensity).unwrap();
        assert_eq!(rep.value, r(2, 1));
        assert_eq!(rep.witness, vec![0, 1, 2]);
        let rep = max_density(&Graph::empty(4), DensityKind::TwoDensity).unwrap();
        assert_eq!(rep.value, r(0, 1));
        assert_eq!(rep.witness, vec![0]);
        assert_eq!(rep.to_string(), "0/1");
    }

    #[test]
    fn witness_ties_prefer_small_then_lexicographic() {
        // Two disjoint triangles: both attain m2 = 2; the first one wins.
        let g = disjoint_union(&complete(3), &complete(3));
        let rep = max_density(&g, DensityKind::TwoDensity).unwrap();
        assert_eq!(rep.witness, vec![0, 1, 2]);
        // A path: every 3-vertex subpath attains d2 = 1.
        let rep = max_density(&path(5), DensityKind::TwoDensity).unwrap();
        assert_eq!((rep.value, rep.witness), (r(1, 1), vec![0, 1, 2]));
    }

    #[test]
    fn balancedness_examples() {
        let two = DensityKind::TwoDensity;
        assert!(balancedness(&complete(3), two, true).unwrap());
        assert!(!balancedness(&triangle_with_pendant(), two, false).unwrap());
        assert!(balancedness(&cycle(4), two, true).unwrap());
        let report = balance_report(&triangle_with_pendant(), two, false).unwrap();
        assert_eq!(report.counterexample.unwrap().vertices, vec![0, 1, 2]);
        assert!(balancedness(&Graph::empty(3), two, false).is_err());
    }

    #[test]
    fn strictness_catches_equal_density_subgraphs() {
        // Two disjoint triangles are balanced but not strictly.
        let g = disjoint_union(&complete(3), &complete(3));
        assert!(balancedness(&g, DensityKind::Density, false).unwrap());
        assert!(!balancedness(&g, DensityKind::Density, true).unwrap());
        // Paths: every 3-vertex subpath has d2 = 1.
        assert!(balancedness(&path(4), DensityKind::TwoDensity, false).unwrap());
        assert!(!balancedness(&path(4), DensityKind::TwoDensity, true).unwrap());
    }

    #[test]
    fn lone_edges_count_for_two_density() {
        // K2 plus an isolated vertex: d2 = 0 while the edge alone has d2 = 1/2.
        let g = Graph::from_edges(3, [(1, 2)]).unwrap();
        assert!(!balancedness(&g, DensityKind::TwoDensity, false).unwrap());
        // A two-edge matching has d2 = 1/2, tied by each edge.
        let m = Graph::from_edges(4, [(0, 1), (2, 3)]).unwrap();
        assert!(balancedness(&m, DensityKind::TwoDensity, false).unwrap());
        assert!(!balancedness(&m, DensityKind::TwoDensity, true).unwrap());
        assert!(balancedness(&complete(2), DensityKind::TwoDensity, true).unwrap());
    }

    #[test]
    fn decreasing_edge_examples() {
        assert_eq!(find_m2_decreasing_edge(&complete(4)).unwrap(), Some((0, 1)));
        assert_eq!(find_m2_decreasing_edge(&complete(2)).unwrap(), Some((0, 1)));
        assert_eq!(find_m2_decreasing_edge(&triangle_with_pendant()).unwrap(), Some((0, 1)));
        let twin = disjoint_union(&complete(3), &complete(3));
        assert_eq!(find_m2_decreasing_edge(&twin).unwrap(), None);
        assert!(find_m2_decreasing_edge(&Graph::empty(3)).is_err());
    }

    #[test]
    fn cap_is_enforced() {
        let err = max_density(&path(17), DensityKind::TwoDensity).unwrap_err();
        assert!(matches!(err, Error::Budget { .. }));
        let rep = max_density_with_cap(&path(17), DensityKind::TwoDensity, 17).unwrap();
        assert_eq!(rep.value, r(1, 1));
    }
}
