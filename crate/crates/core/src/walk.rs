//! Boundary walk: the attachment rule between edges, and the partition of the
//! `4n` edges into loops and segments.
//!
//! Arriving at the end `y` of an edge, cross the chord at `y` to its other end
//! `z`. If the chord is `(y, z)` continue with the edge leaving `z` that has
//! the same sign; if it is `(z, y)` continue with the opposite sign. A vacant
//! `y` ends the walk.

use crate::diagram::{
    entering, exiting, id_end, id_sign, id_start, Diagram, Dot, EdgeRef, PartialDiagram,
};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WalkStep {
    Next(EdgeRef),
    SegmentEnd(Dot),
}

/// A closed boundary walk.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Loop {
    /// Cyclic edge sequence, starting at the loop's smallest edge in canonical order.
    pub edges: Vec<EdgeRef>,
    /// Number of distinct chords the loop crosses.
    pub size: usize,
}

impl Loop {
    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }
}

/// A maximal walk from a vacant dot to a vacant dot.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Segment {
    pub edges: Vec<EdgeRef>,
    pub start_dot: Dot,
    pub end_dot: Dot,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct WalkDecomposition {
    pub loops: Vec<Loop>,
    pub segments: Vec<Segment>,
}

/// Next edge id after `id`, or `None` when `id` ends at a vacant dot.
#[inline]
pub(crate) fn succ_id(p: &PartialDiagram, id: usize) -> Option<usize> {
    let m = 2 * p.n();
    let y = id_end(m, id);
    let (z, y_is_tail) = p.mate(y)?;
    let sign = id_sign(m, id);
    Some(exiting(m, z, if y_is_tail { sign } else { sign.flip() }))
}

/// Previous edge id before `id`, or `None` when `id` starts at a vacant dot.
#[inline]
pub(crate) fn pred_id(p: &PartialDiagram, id: usize) -> Option<usize> {
    let m = 2 * p.n();
    let s = id_start(m, id);
    let (z, s_is_tail) = p.mate(s)?;
    let sign = id_sign(m, id);
    // The chord is (z, s) when s is its head: same sign across it.
    Some(entering(m, z, if s_is_tail { sign.flip() } else { sign }))
}

pub fn successor(p: &PartialDiagram, e: EdgeRef) -> Result<WalkStep> {
    let n = p.n();
    if !e.belongs_to(n) {
        return Err(Error::EdgeNotOfThisDiagram { edge: e.to_string(), n });
    }
    Ok(match succ_id(p, e.position(n)) {
        Some(next) => WalkStep::Next(EdgeRef::from_id(n, next)),
        None => WalkStep::SegmentEnd(e.end(n)),
    })
}

/// Edge ids of the loops and segments, without materializing `EdgeRef`s.
/// Segments come first, ordered by their first edge; loops follow, each
/// rotated to its smallest edge id and ordered by it.
pub(crate) struct RawWalk {
    pub segments: Vec<Vec<usize>>,
    /// (edge ids, distinct chord count)
    pub loops: Vec<(Vec<usize>, usize)>,
}

pub(crate) fn raw_decompose(p: &PartialDiagram) -> RawWalk {
    let m = 2 * p.n();
    let mut seen = vec![false; 2 * m];
    let mut segments = Vec::new();
    for first in 0..2 * m {
        if !p.vacant_at(id_start(m, first)) {
            continue;
        }
        let mut path = vec![first];
        seen[first] = true;
        let mut cur = first;
        while let Some(next) = succ_id(p, cur) {
            seen[next] = true;
            path.push(next);
            cur = next;
        }
        segments.push(path);
    }
    let mut stamp = vec![usize::MAX; p.k()];
    let mut loops = Vec::new();
    for first in 0..2 * m {
        if seen[first] {
            continue;
        }
        let tag = loops.len();
        let mut edges = Vec::new();
        let mut size = 0;
        let mut cur = first;
        loop {
            seen[cur] = true;
            edges.push(cur);
            let c = p.chord_at(id_end(m, cur)).expect("loop edges end at chord dots");
            if stamp[c] != tag {
                stamp[c] = tag;
                size += 1;
            }
            cur = succ_id(p, cur).expect("loop edges have successors");
            if cur == first {
                break;
            }
        }
        loops.push((edges, size));
    }
    RawWalk { segments, loops }
}

/// `(size, edge count)` of every loop of a full diagram, with no allocation
/// per loop. Used by the samplers.
pub(crate) fn loop_profile(d: &Diagram, seen: &mut Vec<bool>, stamp: &mut Vec<u32>, out: &mut Vec<(usize, usize)>) {
    let p = d.as_partial();
    let m = 2 * p.n();
    seen.clear();
    seen.resize(2 * m, false);
    stamp.clear();
    stamp.resize(p.k(), u32::MAX);
    out.clear();
    for first in 0..2 * m {
        if seen[first] {
            continue;
        }
        let tag = out.len() as u32;
        let (mut size, mut count) = (0, 0);
        let mut cur = first;
        loop {
            seen[cur] = true;
            count += 1;
            let c = p.chord_at(id_end(m, cur)).expect("full diagram");
            if stamp[c] != tag {
                stamp[c] = tag;
                size += 1;
            }
            cur = succ_id(p, cur).expect("full diagram");
            if cur == first {
                break;
            }
        }
        out.push((size, count));
    }
}

pub fn decompose(p: &PartialDiagram) -> WalkDecomposition {
    let n = p.n();
    let m = 2 * n;
    let raw = raw_decompose(p);
    let to_refs = |ids: &[usize]| ids.iter().map(|&id| EdgeRef::from_id(n, id)).collect();
    WalkDecomposition {
        segments: raw
            .segments
            .iter()
            .map(|ids| Segment {
                edges: to_refs(ids),
                start_dot: Dot::from_index(id_start(m, ids[0])),
                end_dot: Dot::from_index(id_end(m, *ids.last().unwrap())),
            })
            .collect(),
        loops: raw
            .loops
            .iter()
            .map(|(ids, size)| Loop { edges: to_refs(ids), size: *size })
            .collect(),
    }
}

/// `d(D)`: the number of boundary components of the surface glued from `d`.
pub fn boundary_count(d: &Diagram) -> usize {
    let p = d.as_partial();
    let m = 2 * p.n();
    let mut seen = vec![false; 2 * m];
    let mut count = 0;
    for first in 0..2 * m {
        if seen[first] {
            continue;
        }
        count += 1;
        let mut cur = first;
        while !seen[cur] {
            seen[cur] = true;
            cur = succ_id(p, cur).expect("full diagram");
        }
    }
    count
}

/// `g(D) = (n + 2 - d(D)) / 2`.
pub fn genus(d: &Diagram) -> usize {
    genus_from_boundary(d.n(), boundary_count(d))
}

pub fn genus_from_boundary(n: usize, d: usize) -> usize {
    debug_assert!(d <= n + 2 && (n + 2 - d).is_multiple_of(2));
    (n + 2 - d) / 2
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{display_edge, Sign};

    fn edge(n: usize, start: i64, sign: Sign) -> EdgeRef {
        EdgeRef::new(Dot::new(start, n).unwrap(), sign)
    }

    #[test]
    fn attachment_examples() {
        let p = PartialDiagram::new(2, &[(1, 3)]).unwrap();
        // [a-1,a] - [b,b+1] with a = 1, b = 3
        assert_eq!(
            successor(&p, edge(2, 4, Sign::Positive)).unwrap(),
            WalkStep::Next(edge(2, 3, Sign::Positive))
        );
        // [b+1,b] - [a,a+1]
        assert_eq!(
            successor(&p, edge(2, 4, Sign::Negative)).unwrap(),
            WalkStep::Next(edge(2, 1, Sign::Positive))
        );
        assert_eq!(
            successor(&p, edge(2, 1, Sign::Positive)).unwrap(),
            WalkStep::SegmentEnd(Dot::new(2, 2).unwrap())
        );
    }

    #[test]
    fn all_four_attachments_of_a_chord() {
        // chord (a,b) = (2,5), n = 4
        let n = 4;
        let p = PartialDiagram::new(n, &[(2, 5)]).unwrap();
        let cases = [
            ((1, Sign::Positive), (5, Sign::Positive)), // [a-1,a] - [b,b+1]
            ((6, Sign::Negative), (2, Sign::Positive)), // [b+1,b] - [a,a+1]
            ((3, Sign::Negative), (5, Sign::Negative)), // [a+1,a] - [b,b-1]
            ((4, Sign::Positive), (2, Sign::Negative)), // [b-1,b] - [a,a-1]
        ];
        for ((s, ss), (t, ts)) in cases {
            assert_eq!(
                successor(&p, edge(n, s, ss)).unwrap(),
                WalkStep::Next(edge(n, t, ts))
            );
        }
    }

    #[test]
    fn foreign_edge_rejected() {
        let p = PartialDiagram::new(1, &[(1, 2)]).unwrap();
        let e = edge(2, 4, Sign::Positive);
        assert!(matches!(successor(&p, e), Err(Error::EdgeNotOfThisDiagram { .. })));
    }

    #[test]
    fn figure_eight_loops() {
        let d = Diagram::new(1, &[(1, 2)]).unwrap();
        let w = decompose(&d);
        assert!(w.segments.is_empty());
        let shown: Vec<Vec<String>> = w
            .loops
            .iter()
            .map(|l| l.edges.iter().map(|&e| display_edge(e, 1)).collect())
            .collect();
        assert_eq!(
            shown,
            vec![vec!["[1,2]+", "[1,2]-"], vec!["[2,1]+"], vec!["[2,1]-"]]
        );
        assert!(w.loops.iter().all(|l| l.size == 1));
    }

    #[test]
    fn small_cases() {
        let d = Diagram::new(2, &[(1, 3), (2, 4)]).unwrap();
        let mut lens: Vec<usize> = decompose(&d).loops.iter().map(Loop::edge_count).collect();
        lens.sort();
        assert_eq!(lens, vec![2, 6]);
        assert_eq!((boundary_count(&d), genus(&d)), (2, 1));

        let d = Diagram::new(2, &[(1, 2), (3, 4)]).unwrap();
        assert_eq!((boundary_count(&d), genus(&d)), (4, 0));

        for chords in [[(1, 2)], [(2, 1)]] {
            let d = Diagram::new(1, &chords).unwrap();
            assert_eq!((boundary_count(&d), genus(&d)), (3, 0));
        }
    }

    #[test]
    fn partial_segments_partition() {
        let p = PartialDiagram::new(2, &[(1, 3)]).unwrap();
        let w = decompose(&p);
        assert_eq!(w.segments.len(), 4);
        let total: usize = w.segments.iter().map(|s| s.edges.len()).sum::<usize>()
            + w.loops.iter().map(Loop::edge_count).sum::<usize>();
        assert_eq!(total, 8);
        for s in &w.segments {
            assert!(p.is_vacant(s.start_dot) && p.is_vacant(s.end_dot));
        }
    }

    #[test]
    fn pred_inverts_succ() {
        let p = PartialDiagram::new(4, &[(1, 5), (6, 2), (3, 8)]).unwrap();
        for id in 0..16 {
            if let Some(next) = succ_id(&p, id) {
                assert_eq!(pred_id(&p, next), Some(id));
            }
        }
    }
}
