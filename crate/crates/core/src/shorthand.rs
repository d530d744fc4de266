//! Graph shorthand strings.
//!
//! ```text
//! graph  := family ("+P1" | "+P2")*
//! family := "K(" n ")" | "K(" a "," b ")" | "P(" k ")" | "E(" n ")"
//!         | "GN(" n "," m ")" [":pendant_first" | ":pendant_last"]
//!         | "GS(" n ",[" parts "])"
//! ```
//!
//! A string starting with `{` is read as graph JSON instead.

use crate::error::{Error, Result};
use crate::graph::{LabeledGraph, NetLabeling};
use crate::partition::Partition;

pub fn parse_graph(input: &str) -> Result<LabeledGraph> {
    let input = input.trim();
    if input.starts_with('{') {
        return serde_json::from_str(input).map_err(|e| Error::Parse(format!("graph JSON: {e}")));
    }
    let mut pieces = input.split('+');
    let family = pieces.next().unwrap_or_default().trim();
    let mut g = parse_family(family)?;
    for suffix in pieces {
        g = match suffix.trim() {
            "P1" => g.with_extra_path(1)?,
            "P2" => g.with_extra_path(2)?,
            other => return Err(Error::Parse(format!("unknown suffix +{other}"))),
        };
    }
    Ok(g)
}

fn parse_family(s: &str) -> Result<LabeledGraph> {
    let (head, labeling) = match s.split_once(':') {
        Some((h, l)) => (h, Some(l.trim())),
        None => (s, None),
    };
    let open = head.find('(').ok_or_else(|| Error::Parse(format!("missing '(' in {s:?}")))?;
    if !head.ends_with(')') {
        return Err(Error::Parse(format!("missing ')' in {s:?}")));
    }
    let name = head[..open].trim();
    let args = &head[open + 1..head.len() - 1];
    if labeling.is_some() && name != "GN" {
        return Err(Error::Parse(format!("labeling suffix only applies to GN: {s:?}")));
    }
    let undefined = || Error::InvalidArgument(format!("{s} is not a properly defined graph"));
    match name {
        "K" => match numbers(args)?.as_slice() {
            [n] => Ok(LabeledGraph::complete(checked(*n)?)),
            [a, b] => LabeledGraph::complete_bipartite(*a, *b),
            _ => Err(Error::Parse(format!("K takes one or two arguments: {s:?}"))),
        },
        "P" => match numbers(args)?.as_slice() {
            [k] => Ok(LabeledGraph::path(checked(*k)?)),
            _ => Err(Error::Parse(format!("P takes one argument: {s:?}"))),
        },
        "E" => match numbers(args)?.as_slice() {
            [n] => LabeledGraph::edgeless(*n),
            _ => Err(Error::Parse(format!("E takes one argument: {s:?}"))),
        },
        "GN" => {
            let labeling = match labeling {
                None | Some("pendant_first") => NetLabeling::PendantFirst,
                Some("pendant_last") => NetLabeling::PendantLast,
                Some(other) => return Err(Error::Parse(format!("unknown labeling {other:?}"))),
            };
            match numbers(args)?.as_slice() {
                [n, m] if *n >= 1 => LabeledGraph::generalized_net(*n, *m, labeling).ok_or_else(undefined),
                [_, _] => Err(undefined()),
                _ => Err(Error::Parse(format!("GN takes two arguments: {s:?}"))),
            }
        }
        "GS" => {
            let (n, legs) = args
                .split_once(',')
                .ok_or_else(|| Error::Parse(format!("GS takes (n,[parts]): {s:?}")))?;
            let n: usize = n.trim().parse().map_err(|_| Error::Parse(format!("bad body size in {s:?}")))?;
            let legs = legs.trim();
            let inner = legs
                .strip_prefix('[')
                .and_then(|l| l.strip_suffix(']'))
                .ok_or_else(|| Error::Parse(format!("GS legs must be bracketed: {s:?}")))?;
            let legs = Partition::new(numbers(inner)?)?;
            LabeledGraph::generalized_spider(n, &legs).ok_or_else(undefined)
        }
        other => Err(Error::Parse(format!("unknown graph family {other:?}"))),
    }
}

fn checked(n: usize) -> Result<usize> {
    if n > crate::graph::MAX_VERTICES {
        return Err(Error::InvalidArgument(format!("{n} vertices is too many")));
    }
    Ok(n)
}

/// Comma-separated nonnegative integers; empty input is an empty list.
pub fn numbers(s: &str) -> Result<Vec<usize>> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|x| x.trim().parse::<usize>().map_err(|_| Error::Parse(format!("not an integer: {x:?}"))))
        .collect()
}

/// A partition written as `2,1,1`, `[2,1,1]` or `(2,1,1)`.
pub fn parse_partition(s: &str) -> Result<Partition> {
    let s = s.trim();
    let inner = s
        .strip_prefix('[')
        .and_then(|t| t.strip_suffix(']'))
        .or_else(|| s.strip_prefix('(').and_then(|t| t.strip_suffix(')')))
        .unwrap_or(s);
    Partition::new(numbers(inner)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::VertexRole;

    #[test]
    fn families() {
        assert_eq!(parse_graph("K(4)").unwrap().n_edges(), 6);
        assert!(!parse_graph("K(1,3)").unwrap().is_claw_free());
        assert_eq!(parse_graph("P(4)").unwrap().n_edges(), 3);
        assert_eq!(parse_graph("E(3)").unwrap().n_edges(), 0);
        let g = parse_graph("GN(5,3)").unwrap();
        assert_eq!((g.n_vertices(), g.n_edges()), (8, 13));
        let last = parse_graph("GN(4,2):pendant_last").unwrap();
        assert_eq!(last.role(1), Some(VertexRole::Buoy));
        let s = parse_graph("GS(3,[2,1])").unwrap();
        assert_eq!(s.role(1), Some(VertexRole::SpecialPendant));
        assert_eq!(parse_graph("GS(3,[])").unwrap().n_edges(), 3);
    }

    #[test]
    fn suffixes() {
        let g = parse_graph("GN(4,2)+P1").unwrap();
        assert_eq!(g.n_vertices(), 7);
        assert_eq!(g.role(7), Some(VertexRole::Isolated));
        let g = parse_graph("K(3)+P2+P1").unwrap();
        assert_eq!((g.n_vertices(), g.n_edges()), (6, 4));
    }

    #[test]
    fn json_input() {
        let g = parse_graph(r#"{"n":3,"edges":[[1,2],[2,3]]}"#).unwrap();
        assert_eq!(g.edges(), vec![(1, 2), (2, 3)]);
    }

    #[test]
    fn errors() {
        for bad in ["GN(2,3)", "GN(0,0)", "X(3)", "K(3", "GN(3,1):sideways", "K(3)+P3", "GS(3,2,1)", "P(a)"] {
            assert!(parse_graph(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn partitions() {
        for s in ["2,1,1", "[2,1,1]", "(2,1,1)"] {
            assert_eq!(parse_partition(s).unwrap().parts(), [2, 1, 1]);
        }
        assert!(parse_partition("1,2").is_err());
        assert!(parse_partition("").unwrap().is_empty());
    }
}
