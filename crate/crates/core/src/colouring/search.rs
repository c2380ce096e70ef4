//! Exhaustive search for an edge colouring with no monochromatic copy of a pattern.

use std::collections::HashMap;

use serde::Serialize;

use super::engine::{Constraint, Engine, Outcome};
use super::{Colour, Colouring};
use crate::error::{Error, Result};
use crate::graph::{find_copies, Edge, Graph};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum SearchVerdict {
    Found { colouring: Colouring },
    NoneExists,
    Unknown,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SearchOutcome {
    #[serde(flatten)]
    pub verdict: SearchVerdict,
    pub nodes: u64,
}

/// Looks for an `r`-colouring of the edges of `host` with no monochromatic
/// copy of `pattern`, expanding at most `budget` search nodes.
///
/// Colours are treated as interchangeable, so a search reporting
/// [`SearchVerdict::NoneExists`] has ruled out every colouring.
pub fn search_h_free_colouring(
    host: &Graph,
    pattern: &Graph,
    palette: usize,
    budget: u64,
) -> Result<SearchOutcome> {
    const OP: &str = "colour_search";
    let colours = Colour::palette(palette)?;
    if pattern.edge_count() < 2 {
        return Err(Error::domain(OP, "pattern needs at least two edges"));
    }
    if budget == 0 {
        return Err(Error::domain(OP, "node budget must be positive"));
    }
    let index: HashMap<Edge, usize> = host
        .edges()
        .iter()
        .enumerate()
        .map(|(i, &e)| (e, i))
        .collect();
    let constraints = find_copies(pattern, host)
        .into_iter()
        .map(|copy| Constraint {
            free: copy.edges.iter().map(|e| index[e]).collect(),
            required: None,
        })
        .collect();
    let engine = Engine {
        edge_count: host.edge_count(),
        palette: colours.len() as u8,
        constraints,
        symmetric: true,
    };
    let (outcome, nodes) = engine.run(budget);
    let verdict = match outcome {
        Outcome::Solution(assign) => SearchVerdict::Found {
            colouring: Colouring::from_assignments(
                host.clone(),
                host.edges()
                    .iter()
                    .zip(assign)
                    .map(|(&e, c)| (e, Colour::from_index(c as usize))),
            )?,
        },
        Outcome::Exhausted => SearchVerdict::NoneExists,
        Outcome::OutOfBudget => SearchVerdict::Unknown,
    };
    Ok(SearchOutcome { verdict, nodes })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::colouring::find_monochromatic_copy;
    use crate::graph::families::*;

    fn verdict(host: &Graph, pattern: &Graph, r: usize) -> SearchVerdict {
        search_h_free_colouring(host, pattern, r, 10_000_000).unwrap().verdict
    }

    #[test]
    fn triangle_ramsey_numbers() {
        assert!(matches!(verdict(&complete(5), &complete(3), 2), SearchVerdict::Found { .. }));
        assert_eq!(verdict(&complete(6), &complete(3), 2), SearchVerdict::NoneExists);
    }

    #[test]
    fn found_colourings_are_valid() {
        let SearchVerdict::Found { colouring } = verdict(&complete(5), &complete(3), 2) else {
            panic!("K5 has a triangle-free 2-colouring");
        };
        assert!(colouring.is_total());
        assert!(find_monochromatic_copy(&colouring, &complete(3)).is_none());
    }

    #[test]
    fn three_colour_triangle_ramsey_bound_from_below() {
        assert!(matches!(verdict(&complete(6), &complete(3), 3), SearchVerdict::Found { .. }));
    }

    #[test]
    fn budget_and_domain_errors() {
        let out = search_h_free_colouring(&complete(6), &complete(3), 2, 3).unwrap();
        assert_eq!(out.verdict, SearchVerdict::Unknown);
        assert!(out.nodes <= 3);
        assert!(search_h_free_colouring(&complete(6), &complete(3), 2, 0).is_err());
        assert!(search_h_free_colouring(&complete(6), &complete(2), 2, 10).is_err());
        assert!(search_h_free_colouring(&complete(6), &complete(3), 4, 10).is_err());
    }

    #[test]
    fn edgeless_host_is_trivially_colourable() {
        assert!(matches!(verdict(&Graph::empty(4), &complete(3), 2), SearchVerdict::Found { .. }));
    }
}
