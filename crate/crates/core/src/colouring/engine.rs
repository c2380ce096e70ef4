//! Backtracking over edge colourings that avoid a family of forbidden copies.
//!
//! Each constraint is a copy of the pattern restricted to its still-free edges.
//! A constraint is violated when all of its free edges receive the same colour
//! and that colour matches `required` (if set). Edges are assigned in
//! decreasing order of how many constraints they touch, and each constraint is
//! checked only when its last edge in that order is coloured.

#[derive(Debug, Clone)]
pub(crate) struct Constraint {
    pub free: Vec<usize>,
    pub required: Option<u8>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum Outcome {
    /// Colour per free edge, indexed like the input.
    Solution(Vec<u8>),
    Exhausted,
    OutOfBudget,
}

pub(crate) struct Engine {
    pub edge_count: usize,
    pub palette: u8,
    pub constraints: Vec<Constraint>,
    /// Treat colours as interchangeable: only open colour `c` once `c - 1` is in use.
    pub symmetric: bool,
}

impl Engine {
    /// Returns the outcome and the number of search nodes expanded.
    pub fn run(&self, budget: u64) -> (Outcome, u64) {
        let m = self.edge_count;
        if self.constraints.iter().any(|c| c.free.is_empty()) {
            return (Outcome::Exhausted, 0);
        }
        let mut touching = vec![0usize; m];
        for c in &self.constraints {
            for &e in &c.free {
                touching[e] += 1;
            }
        }
        let mut order: Vec<usize> = (0..m).collect();
        order.sort_by(|&a, &b| touching[b].cmp(&touching[a]).then(a.cmp(&b)));
        let mut position = vec![0usize; m];
        for (i, &e) in order.iter().enumerate() {
            position[e] = i;
        }
        let mut closing: Vec<Vec<usize>> = vec![Vec::new(); m];
        for (ci, c) in self.constraints.iter().enumerate() {
            let last = c.free.iter().map(|&e| position[e]).max().expect("non-empty");
            closing[last].push(ci);
        }

        const UNSET: u8 = u8::MAX;
        let mut colour = vec![UNSET; m];
        let mut attempt = vec![0u8; m + 1];
        // highest colour used strictly before each depth, plus one
        let mut opened = vec![0u8; m + 1];
        let mut nodes = 0u64;
        let mut depth = 0usize;
        loop {
            if depth == m {
                return (Outcome::Solution(colour), nodes);
            }
            let limit = if self.symmetric {
                self.palette.min(opened[depth] + 1)
            } else {
                self.palette
            };
            let c = attempt[depth];
            if c >= limit {
                colour[order[depth]] = UNSET;
                if depth == 0 {
                    return (Outcome::Exhausted, nodes);
                }
                depth -= 1;
                attempt[depth] += 1;
                continue;
            }
            if nodes >= budget {
                return (Outcome::OutOfBudget, nodes);
            }
            nodes += 1;
            let e = order[depth];
            colour[e] = c;
            let violated = closing[depth].iter().any(|&ci| {
                let con = &self.constraints[ci];
                con.required.is_none_or(|r| r == c) && con.free.iter().all(|&f| colour[f] == c)
            });
            if violated {
                attempt[depth] += 1;
            } else {
                opened[depth + 1] = opened[depth].max(c + 1);
                depth += 1;
                attempt[depth] = 0;
            }
        }
    }
}
