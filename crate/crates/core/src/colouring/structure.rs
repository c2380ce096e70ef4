//! Forcing structures: a red graph, a blue graph and a matching `M` whose
//! every red/blue split forces the pattern into one colour.
//!
//! A structure is accepted when
//!
//! * (i) the red and blue vertex sets meet exactly in `V(M)`, and `V(M)` is
//!   independent in both graphs;
//! * (ii) `m2(H) > m2(F_red ∪ F_blue)`;
//! * (iii) `m2(H) >= e(J) / (v(J) - v(M))` for every subgraph `J` of the union
//!   with `V(M) ⊆ V(J)` and `e(J) >= 1`;
//! * (iv) for every split `M = M_red ∪ M_blue`, `H` embeds in
//!   `F_red ∪ M_red` or in `F_blue ∪ M_blue`.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::density::{max_density, max_density_with_cap, serialize_rational, DensityKind, Rational};
use crate::error::{Error, Result};
use crate::graph::{edge, has_copy, Edge, Graph};

/// Vertex cap for the union scan in condition (ii) and the superset scan in (iii).
pub const FORCING_SCAN_CAP: usize = 24;

const MAX_MATCHING: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ForcingStructure {
    red: Graph,
    blue: Graph,
    matching: Vec<Edge>,
    red_vertices: BTreeSet<usize>,
    blue_vertices: BTreeSet<usize>,
}

impl ForcingStructure {
    /// Both graphs share one label space; each side's vertex set is its
    /// non-isolated vertices together with `V(M)`.
    pub fn new(red: Graph, blue: Graph, matching: Vec<Edge>) -> Result<Self> {
        let vm: Vec<usize> = matching.iter().flat_map(|&(a, b)| [a, b]).collect();
        let side = |g: &Graph| -> BTreeSet<usize> {
            g.non_isolated_vertices().into_iter().chain(vm.iter().copied()).collect()
        };
        let (red_vertices, blue_vertices) = (side(&red), side(&blue));
        Self::with_vertex_sets(red, blue, matching, red_vertices, blue_vertices)
    }

    /// Like [`ForcingStructure::new`] with explicit vertex sets, which may
    /// include isolated vertices.
    pub fn with_vertex_sets(
        red: Graph,
        blue: Graph,
        matching: Vec<Edge>,
        red_vertices: BTreeSet<usize>,
        blue_vertices: BTreeSet<usize>,
    ) -> Result<Self> {
        const OP: &str = "forcing structure";
        let n = red.vertex_count();
        if blue.vertex_count() != n {
            return Err(Error::domain(OP, "red and blue graphs must share a vertex count"));
        }
        for &(a, b) in &matching {
            if a == b || a >= n || b >= n {
                return Err(Error::domain(OP, format!("matching pair {{{a},{b}}} is not a pair in 0..{n}")));
            }
        }
        if let Some(&v) = red_vertices.iter().chain(&blue_vertices).find(|&&v| v >= n) {
            return Err(Error::domain(OP, format!("vertex {v} is outside 0..{n}")));
        }
        if matching.len() > MAX_MATCHING {
            return Err(Error::budget(OP, format!("matching larger than {MAX_MATCHING} pairs")));
        }
        let matching = matching.into_iter().map(|(a, b)| edge(a, b)).collect();
        Ok(ForcingStructure {
            red,
            blue,
            matching,
            red_vertices,
            blue_vertices,
        })
    }

    /// Three matching pairs `{u_i, v_i}`; in each colour a cherry `u_i - w_i - v_i`
    /// on every pair, with the three apexes joined pairwise by paths of `len` edges.
    ///
    /// Labels: `u_i = 2i`, `v_i = 2i + 1`; red apexes 6..9, blue apexes 9..12;
    /// internal path vertices follow, red paths first.
    pub fn cherry_triangle(len: usize) -> ForcingStructure {
        assert!(len >= 1, "path length must be positive");
        let internal = len - 1;
        let n = 12 + 6 * internal;
        let mut next = 12;
        let mut build = |apex: usize| -> Vec<Edge> {
            let mut edges = Vec::new();
            for i in 0..3 {
                edges.push((2 * i, apex + i));
                edges.push((2 * i + 1, apex + i));
            }
            for (a, b) in [(0, 1), (1, 2), (0, 2)] {
                let mut chain = vec![apex + a];
                chain.extend(next..next + internal);
                next += internal;
                chain.push(apex + b);
                edges.extend(chain.windows(2).map(|w| (w[0], w[1])));
            }
            edges
        };
        let red = Graph::from_edges(n, build(6)).expect("valid");
        let blue = Graph::from_edges(n, build(9)).expect("valid");
        ForcingStructure::new(red, blue, vec![(0, 1), (2, 3), (4, 5)]).expect("valid")
    }

    pub fn red(&self) -> &Graph {
        &self.red
    }

    pub fn blue(&self) -> &Graph {
        &self.blue
    }

    pub fn matching(&self) -> &[Edge] {
        &self.matching
    }

    /// The same structure with the colours exchanged.
    pub fn swapped(&self) -> ForcingStructure {
        ForcingStructure {
            red: self.blue.clone(),
            blue: self.red.clone(),
            matching: self.matching.clone(),
            red_vertices: self.blue_vertices.clone(),
            blue_vertices: self.red_vertices.clone(),
        }
    }

    fn matching_vertices(&self) -> BTreeSet<usize> {
        self.matching.iter().flat_map(|&(a, b)| [a, b]).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Condition {
    I,
    II,
    III,
    IV,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "condition", rename_all = "lowercase")]
pub enum Violation {
    /// Bad vertex sets or matching; `vertices` are the offending vertices.
    #[serde(rename = "i")]
    Structure { reason: String, vertices: Vec<usize> },
    /// The union is at least as 2-dense as the pattern; `witness` attains its `m2`.
    #[serde(rename = "ii")]
    Density {
        #[serde(serialize_with = "serialize_rational")]
        pattern_m2: Rational,
        #[serde(serialize_with = "serialize_rational")]
        union_m2: Rational,
        witness: Vec<usize>,
    },
    /// An induced subgraph on `vertices ⊇ V(M)` whose ratio exceeds `m2(H)`.
    #[serde(rename = "iii")]
    Ratio {
        vertices: Vec<usize>,
        edges: usize,
        #[serde(serialize_with = "serialize_rational")]
        ratio: Rational,
    },
    /// A split of `M` leaving no copy of the pattern in either colour.
    #[serde(rename = "iv")]
    Partition { red: Vec<Edge>, blue: Vec<Edge> },
}

impl Violation {
    pub fn condition(&self) -> Condition {
        match self {
            Violation::Structure { .. } => Condition::I,
            Violation::Density { .. } => Condition::II,
            Violation::Ratio { .. } => Condition::III,
            Violation::Partition { .. } => Condition::IV,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ForcingReport {
    pub holds: bool,
    pub violation: Option<Violation>,
    #[serde(serialize_with = "serialize_rational")]
    pub pattern_m2: Rational,
    /// Vertex sets `J ⊇ V(M)` meeting the ratio bound with equality.
    pub boundary_cases: usize,
    pub boundary_example: Option<Vec<usize>>,
}

impl ForcingReport {
    pub fn violated_condition(&self) -> Option<Condition> {
        self.violation.as_ref().map(Violation::condition)
    }
}

/// Checks the four conditions in order and reports the first that fails.
pub fn check_forcing_structure(pattern: &Graph, s: &ForcingStructure) -> Result<ForcingReport> {
    let pattern_m2 = max_density(pattern, DensityKind::TwoDensity)?.value;
    let mut report = ForcingReport {
        holds: false,
        violation: None,
        pattern_m2,
        boundary_cases: 0,
        boundary_example: None,
    };
    let verdict = check_structure(s)
        .or_else(|| check_union_density(pattern_m2, s).transpose())
        .or_else(|| check_ratios(pattern_m2, s, &mut report).transpose())
        .or_else(|| check_partitions(pattern, s).map(Ok));
    match verdict {
        Some(Err(e)) => return Err(e),
        Some(Ok(v)) => report.violation = Some(v),
        None => report.holds = true,
    }
    Ok(report)
}

fn check_structure(s: &ForcingStructure) -> Option<Result<Violation>> {
    let fail = |reason: &str, vertices: Vec<usize>| {
        Some(Ok(Violation::Structure {
            reason: reason.to_string(),
            vertices,
        }))
    };
    let mut seen = BTreeSet::new();
    for &(a, b) in &s.matching {
        for v in [a, b] {
            if !seen.insert(v) {
                return fail("matching pairs share a vertex", vec![v]);
            }
        }
    }
    let vm = s.matching_vertices();
    for (g, side) in [(&s.red, &s.red_vertices), (&s.blue, &s.blue_vertices)] {
        let stray: Vec<usize> = g
            .non_isolated_vertices()
            .into_iter()
            .filter(|v| !side.contains(v))
            .collect();
        if !stray.is_empty() {
            return fail("an edge leaves its colour's vertex set", stray);
        }
        if let Some(&(a, b)) = g.edges().iter().find(|&&(a, b)| vm.contains(&a) && vm.contains(&b)) {
            return fail("V(M) is not independent", vec![a, b]);
        }
    }
    let shared: BTreeSet<usize> = s.red_vertices.intersection(&s.blue_vertices).copied().collect();
    if shared != vm {
        let diff = shared.symmetric_difference(&vm).copied().collect();
        return fail("red and blue vertex sets do not meet exactly in V(M)", diff);
    }
    None
}

/// The union graph induced on its vertex set, with the original labels.
fn union_on_vertices(s: &ForcingStructure) -> Result<(Graph, Vec<usize>)> {
    let labels: Vec<usize> = s.red_vertices.union(&s.blue_vertices).copied().collect();
    let union = s.red.union(&s.blue)?;
    Ok((union.induced_subgraph(&labels)?, labels))
}

fn check_union_density(pattern_m2: Rational, s: &ForcingStructure) -> Result<Option<Violation>> {
    let (union, labels) = union_on_vertices(s)?;
    let report = max_density_with_cap(&union, DensityKind::TwoDensity, FORCING_SCAN_CAP)?;
    Ok((report.value >= pattern_m2).then(|| Violation::Density {
        pattern_m2,
        union_m2: report.value,
        witness: report.witness.iter().map(|&i| labels[i]).collect(),
    }))
}

fn check_ratios(
    pattern_m2: Rational,
    s: &ForcingStructure,
    report: &mut ForcingReport,
) -> Result<Option<Violation>> {
    let (union, labels) = union_on_vertices(s)?;
    let vm = s.matching_vertices();
    let extra: Vec<usize> = (0..labels.len()).filter(|&i| !vm.contains(&labels[i])).collect();
    let k = extra.len();
    if k > FORCING_SCAN_CAP {
        return Err(Error::budget(
            "check_forcing_structure",
            format!("{k} vertices outside V(M) exceed the scan cap of {FORCING_SCAN_CAP}"),
        ));
    }
    let in_vm: Vec<bool> = labels.iter().map(|v| vm.contains(v)).collect();
    // adjacency among extra vertices, and degree of each extra vertex into V(M)
    let mut adj = vec![0u32; k];
    let mut into_vm = vec![0u16; k];
    let position: std::collections::HashMap<usize, usize> =
        extra.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    for (i, &v) in extra.iter().enumerate() {
        for &w in union.neighbours(v) {
            match position.get(&w) {
                Some(&j) => adj[i] |= 1 << j,
                None if in_vm[w] => into_vm[i] += 1,
                None => {}
            }
        }
    }
    let mut counts = vec![0u16; 1 << k];
    let mut worst: Option<(Rational, u32, u32)> = None;
    for mask in 1u32..(1 << k) {
        let low = mask.trailing_zeros() as usize;
        let rest = mask & (mask - 1);
        let e = counts[rest as usize] + (adj[low] & rest).count_ones() as u16 + into_vm[low];
        counts[mask as usize] = e;
        if e == 0 {
            continue;
        }
        let size = mask.count_ones();
        let ratio = Rational::new(e as i64, size as i64);
        if ratio == pattern_m2 {
            report.boundary_cases += 1;
            if report.boundary_example.is_none() {
                report.boundary_example = Some(with_matching(&vm, &extra, &labels, mask));
            }
        }
        if ratio > pattern_m2 {
            let better = match worst {
                None => true,
                Some((r, sz, m)) => {
                    ratio > r || (ratio == r && (size < sz || (size == sz && lex_smaller(mask, m))))
                }
            };
            if better {
                worst = Some((ratio, size, mask));
            }
        }
    }
    Ok(worst.map(|(ratio, _, mask)| Violation::Ratio {
        vertices: with_matching(&vm, &extra, &labels, mask),
        edges: counts[mask as usize] as usize,
        ratio,
    }))
}

fn lex_smaller(a: u32, b: u32) -> bool {
    let diff = a ^ b;
    a & (diff & diff.wrapping_neg()) != 0
}

fn with_matching(vm: &BTreeSet<usize>, extra: &[usize], labels: &[usize], mask: u32) -> Vec<usize> {
    let mut out: Vec<usize> = vm.iter().copied().collect();
    out.extend((0..extra.len()).filter(|&i| mask >> i & 1 == 1).map(|i| labels[extra[i]]));
    out.sort_unstable();
    out
}

fn check_partitions(pattern: &Graph, s: &ForcingStructure) -> Option<Violation> {
    let m = s.matching.len();
    for split in 0u32..(1 << m) {
        let (mut red, mut blue) = (Vec::new(), Vec::new());
        for (i, &e) in s.matching.iter().enumerate() {
            if split >> i & 1 == 1 { red.push(e) } else { blue.push(e) }
        }
        let red_graph = s.red.with_edges(red.iter().copied()).expect("matching is in range");
        let blue_graph = s.blue.with_edges(blue.iter().copied()).expect("matching is in range");
        if !has_copy(pattern, &red_graph) && !has_copy(pattern, &blue_graph) {
            return Some(Violation::Partition { red, blue });
        }
    }
    None
}
