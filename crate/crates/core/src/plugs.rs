//! Plugs: segments that leave and re-enter the same vacant dot.
//!
//! A plug is positive when its first and last edges have the same sign,
//! negative otherwise. Two vacant dots are neighbors when some segment runs
//! from one to the other.

use std::collections::BTreeSet;

use crate::diagram::{exiting, id_start, Chord, Dot, EdgeRef, PartialDiagram, Sign};
use crate::error::{Error, Result};
use crate::walk::{decompose, succ_id, Segment};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Plug {
    pub segment: Segment,
    pub entrance: Dot,
    pub sign: Sign,
}

fn plug_of(segment: &Segment) -> Option<Plug> {
    if segment.start_dot != segment.end_dot {
        return None;
    }
    let first = segment.edges[0].sign;
    let last = segment.edges.last().expect("segments are non-empty").sign;
    Some(Plug {
        segment: segment.clone(),
        entrance: segment.start_dot,
        sign: if first == last { Sign::Positive } else { Sign::Negative },
    })
}

pub fn find_plugs(p: &PartialDiagram) -> Vec<Plug> {
    decompose(p).segments.iter().filter_map(plug_of).collect()
}

/// Vacant dots joined to `d` by a segment; `d` itself when it is a plug entrance.
pub fn neighbors(p: &PartialDiagram, d: Dot) -> Result<BTreeSet<Dot>> {
    if d.label() > 2 * p.n() {
        return Err(Error::DotOutOfRange { dot: d.label() as i64, max: 2 * p.n() });
    }
    if !p.is_vacant(d) {
        return Err(Error::NotVacant { dot: d.label() });
    }
    Ok(neighbors_in(&decompose(p).segments, d))
}

fn neighbors_in(segments: &[Segment], d: Dot) -> BTreeSet<Dot> {
    let mut out = BTreeSet::new();
    for s in segments {
        if s.start_dot == d {
            out.insert(s.end_dot);
        }
        if s.end_dot == d {
            out.insert(s.start_dot);
        }
    }
    out
}

/// Outcome of following the walk from an edge `e` entering vacant dot `a`
/// after a chord `q` joins `a` to another vacant dot `b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReturnVerdict {
    /// The walk from `e` in `p + q` reaches an edge leaving `a`.
    pub reaches_exit: bool,
    pub exit_edge: Option<EdgeRef>,
    /// `e` and the exit edge have opposite signs.
    pub opposite_signs: bool,
    pub b_positive_plugs: usize,
    pub b_negative_plugs: usize,
    pub a_is_entrance: bool,
    /// `a` and `b` are neighbors in `p`.
    pub neighbors: bool,
}

impl ReturnVerdict {
    pub fn b_is_entrance(&self) -> bool {
        self.b_positive_plugs + self.b_negative_plugs > 0
    }

    /// Returning to `a` requires `b` to be a plug entrance.
    pub fn entrance_implication_holds(&self) -> bool {
        !self.reaches_exit || self.b_is_entrance()
    }

    /// Returning to `a` with a sign change, when `b` has no positive plug,
    /// requires `a` and `b` to be neighbors or `a` to be a plug entrance.
    pub fn neighbor_implication_holds(&self) -> bool {
        if self.reaches_exit && self.opposite_signs && self.b_positive_plugs == 0 {
            self.neighbors || self.a_is_entrance
        } else {
            true
        }
    }
}

/// Checks where the walk from `e` goes once `q` joins `a` and `b`.
pub fn return_verdict(
    p: &PartialDiagram,
    a: Dot,
    e: EdgeRef,
    b: Dot,
    q: Chord,
) -> Result<ReturnVerdict> {
    let n = p.n();
    let in_range = |d: Dot| d.label() <= 2 * n;
    if !in_range(a) || !in_range(b) || !e.belongs_to(n) {
        return Err(Error::PreconditionViolated("dots and edge must belong to the diagram"));
    }
    if !p.is_vacant(a) || !p.is_vacant(b) {
        return Err(Error::PreconditionViolated("a and b must be vacant"));
    }
    if a == b {
        return Err(Error::PreconditionViolated("a and b must be distinct"));
    }
    if e.end(n) != a {
        return Err(Error::PreconditionViolated("e must enter a"));
    }
    if !(q.contains(a) && q.contains(b)) {
        return Err(Error::PreconditionViolated("q must join a and b"));
    }
    let segments = decompose(p).segments;
    let mut verdict = ReturnVerdict {
        reaches_exit: false,
        exit_edge: None,
        opposite_signs: false,
        b_positive_plugs: 0,
        b_negative_plugs: 0,
        a_is_entrance: false,
        neighbors: neighbors_in(&segments, a).contains(&b),
    };
    for plug in segments.iter().filter_map(plug_of) {
        if plug.entrance == b {
            match plug.sign {
                Sign::Positive => verdict.b_positive_plugs += 1,
                Sign::Negative => verdict.b_negative_plugs += 1,
            }
        }
        if plug.entrance == a {
            verdict.a_is_entrance = true;
        }
    }

    let joined = p.with_chord(q)?;
    let m = 2 * n;
    let start = e.position(n);
    let mut cur = start;
    while let Some(next) = succ_id(&joined, cur) {
        if next == start {
            break;
        }
        if id_start(m, next) == a.index() {
            let exit = EdgeRef::from_id(n, next);
            verdict.reaches_exit = true;
            verdict.opposite_signs = exit.sign != e.sign;
            verdict.exit_edge = Some(exit);
            break;
        }
        cur = next;
    }
    debug_assert!(verdict
        .exit_edge
        .is_none_or(|x| [Sign::Positive, Sign::Negative].iter().any(|&s| x.position(n) == exiting(m, a.index(), s))));
    Ok(verdict)
}

/// Counts of checked configurations and violations of either implication.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct LemmaTally {
    pub cases: u64,
    pub returns: u64,
    pub entrance_violations: u64,
    pub neighbor_violations: u64,
}

impl LemmaTally {
    pub fn record(&mut self, v: &ReturnVerdict) {
        self.cases += 1;
        self.returns += v.reaches_exit as u64;
        self.entrance_violations += !v.entrance_implication_holds() as u64;
        self.neighbor_violations += !v.neighbor_implication_holds() as u64;
    }

    pub fn merge(&mut self, other: LemmaTally) {
        self.cases += other.cases;
        self.returns += other.returns;
        self.entrance_violations += other.entrance_violations;
        self.neighbor_violations += other.neighbor_violations;
    }
}

/// Every `(a, e, b, q)` on `p`: `a != b` vacant, `e` either edge entering `a`,
/// `q` either orientation of the chord `{a, b}`.
pub fn tally_all_configurations(p: &PartialDiagram) -> LemmaTally {
    let n = p.n();
    let vacant = p.vacant_dots();
    let mut tally = LemmaTally::default();
    for &a in &vacant {
        let entering = [EdgeRef::new(a.prev(n), Sign::Positive), EdgeRef::new(a.next(n), Sign::Negative)];
        for e in entering {
            for &b in vacant.iter().filter(|&&b| b != a) {
                for q in [Chord::new(a, b), Chord::new(b, a)] {
                    let v = return_verdict(p, a, e, b, q).expect("configuration is valid");
                    tally.record(&v);
                }
            }
        }
    }
    tally
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::display_edge;

    fn dot(l: i64, n: usize) -> Dot {
        Dot::new(l, n).unwrap()
    }

    fn shown(p: &Plug, n: usize) -> Vec<String> {
        p.segment.edges.iter().map(|&e| display_edge(e, n)).collect()
    }

    #[test]
    fn positive_plug_from_short_chord() {
        let p = PartialDiagram::new(3, &[(1, 3)]).unwrap();
        let plugs = find_plugs(&p);
        assert_eq!(plugs.len(), 1);
        assert_eq!(plugs[0].entrance, dot(2, 3));
        assert_eq!(plugs[0].sign, Sign::Positive);
        assert_eq!(shown(&plugs[0], 3), vec!["[2,1]-", "[3,2]-"]);
    }

    #[test]
    fn negative_plug_from_two_chords() {
        let p = PartialDiagram::new(3, &[(2, 4), (5, 3)]).unwrap();
        let plugs = find_plugs(&p);
        let at1: Vec<&Plug> = plugs.iter().filter(|q| q.entrance == dot(1, 3)).collect();
        assert_eq!(at1.len(), 1);
        assert_eq!(at1[0].sign, Sign::Negative);
        assert_eq!(shown(at1[0], 3), vec!["[1,2]+", "[4,5]+", "[3,4]+", "[2,1]-"]);
    }

    #[test]
    fn empty_diagram_has_no_plugs() {
        assert!(find_plugs(&PartialDiagram::empty(2).unwrap()).is_empty());
    }

    #[test]
    fn neighbor_examples() {
        let p = PartialDiagram::empty(2).unwrap();
        let got: Vec<usize> = neighbors(&p, dot(1, 2)).unwrap().iter().map(|d| d.label()).collect();
        assert_eq!(got, vec![2, 4]);

        let p = PartialDiagram::new(3, &[(1, 3)]).unwrap();
        assert!(neighbors(&p, dot(2, 3)).unwrap().contains(&dot(2, 3)));
        assert_eq!(neighbors(&p, dot(1, 3)), Err(Error::NotVacant { dot: 1 }));
    }

    #[test]
    fn verdict_preconditions() {
        let p = PartialDiagram::new(3, &[(1, 3)]).unwrap();
        let e = EdgeRef::new(dot(4, 3), Sign::Positive); // enters 5
        let a = dot(5, 3);
        let b = dot(2, 3);
        assert!(return_verdict(&p, a, e, b, Chord::new(a, b)).is_ok());
        let bad = |a, e, b, q| return_verdict(&p, a, e, b, q).unwrap_err();
        assert!(matches!(bad(dot(1, 3), e, b, Chord::new(dot(1, 3), b)), Error::PreconditionViolated(_)));
        assert!(matches!(bad(a, e, a, Chord::new(a, dot(6, 3))), Error::PreconditionViolated(_)));
        assert!(matches!(
            bad(a, EdgeRef::new(dot(5, 3), Sign::Positive), b, Chord::new(a, b)),
            Error::PreconditionViolated(_)
        ));
        assert!(matches!(bad(a, e, b, Chord::new(a, dot(6, 3))), Error::PreconditionViolated(_)));
    }

    #[test]
    fn closing_through_a_plug_returns() {
        // Dot 2 is the entrance of the plug made by (1,3). Joining a = 5 to
        // b = 2 sends the walk from [4,5]+ through the plug and back to 5.
        let p = PartialDiagram::new(3, &[(1, 3)]).unwrap();
        let a = dot(5, 3);
        let e = EdgeRef::new(dot(4, 3), Sign::Positive);
        let mut any = false;
        for q in [Chord::new(a, dot(2, 3)), Chord::new(dot(2, 3), a)] {
            let v = return_verdict(&p, a, e, dot(2, 3), q).unwrap();
            assert!(v.b_is_entrance());
            any |= v.reaches_exit;
            assert!(v.entrance_implication_holds() && v.neighbor_implication_holds());
        }
        assert!(any);
    }
}
