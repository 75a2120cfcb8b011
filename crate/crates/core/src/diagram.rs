//! Dots, oriented chords, partial and full diagrams, and the `4n` boundary
//! edges of the annulus.
//!
//! Dots carry their 1-based labels `1..=2n` in the public API. Internally the
//! walk code works on 0-based dot indices and on *edge ids*: the 0-based
//! position of an edge in the canonical edge order.

use std::fmt;
use std::ops::Deref;
use std::str::FromStr;

use num_bigint::BigUint;

use crate::error::{Error, Result};

/// A dot on the circle, labeled `1..=2n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Dot(u32);

impl Dot {
    /// Checked constructor for a diagram of order `n`.
    pub fn new(label: i64, n: usize) -> Result<Dot> {
        if label < 1 || label > 2 * n as i64 {
            return Err(Error::DotOutOfRange { dot: label, max: 2 * n });
        }
        Ok(Dot(label as u32))
    }

    pub fn label(self) -> usize {
        self.0 as usize
    }

    pub(crate) fn from_index(i: usize) -> Dot {
        Dot(i as u32 + 1)
    }

    pub(crate) fn index(self) -> usize {
        self.0 as usize - 1
    }

    /// `self + 1`, wrapping `2n` to `1`.
    pub fn next(self, n: usize) -> Dot {
        Dot::from_index((self.index() + 1) % (2 * n))
    }

    /// `self - 1`, wrapping `1` to `2n`.
    pub fn prev(self, n: usize) -> Dot {
        Dot::from_index((self.index() + 2 * n - 1) % (2 * n))
    }
}

impl fmt::Display for Dot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// An ordered pair of distinct dots.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Chord {
    pub tail: Dot,
    pub head: Dot,
}

impl Chord {
    pub fn new(tail: Dot, head: Dot) -> Chord {
        Chord { tail, head }
    }

    pub fn reversed(self) -> Chord {
        Chord { tail: self.head, head: self.tail }
    }

    pub fn contains(self, d: Dot) -> bool {
        self.tail == d || self.head == d
    }
}

impl fmt::Display for Chord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.tail, self.head)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Role {
    Tail,
    Head,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Positive,
    Negative,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Positive => Sign::Negative,
            Sign::Negative => Sign::Positive,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Positive => "+",
            Sign::Negative => "-",
        })
    }
}

/// One of the `4n` oriented edges on the boundary of the annulus.
///
/// Identity is `(start, sign)`: for `n = 1` the positive edge `[1,2]` and the
/// negative edge `[1,2]` share endpoints but are different edges.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct EdgeRef {
    pub start: Dot,
    pub sign: Sign,
}

impl EdgeRef {
    pub fn new(start: Dot, sign: Sign) -> EdgeRef {
        EdgeRef { start, sign }
    }

    pub fn end(self, n: usize) -> Dot {
        match self.sign {
            Sign::Positive => self.start.next(n),
            Sign::Negative => self.start.prev(n),
        }
    }

    /// 0-based position in [`edge_order`].
    pub fn position(self, n: usize) -> usize {
        edge_id(2 * n, self.start.index(), self.sign)
    }

    pub(crate) fn from_id(n: usize, id: usize) -> EdgeRef {
        EdgeRef { start: Dot::from_index(id_start(2 * n, id)), sign: id_sign(2 * n, id) }
    }

    pub(crate) fn belongs_to(self, n: usize) -> bool {
        self.start.label() <= 2 * n
    }
}

impl fmt::Display for EdgeRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // `[a,b]+` needs n, see `display_edge`.
        write!(f, "{}{}", self.start, self.sign)
    }
}

/// Bracket form `[a,b]+` of an edge.
pub fn display_edge(e: EdgeRef, n: usize) -> String {
    format!("[{},{}]{}", e.start, e.end(n), e.sign)
}

// Edge ids. `m = 2n`. Positive edge [a,a+1] has id a; negative edge [b+1,b]
// has id m + b (0-based dots). This is the canonical order: positives by start
// dot, then negatives by end dot, so e_1 = [1,2]+ and e_{2n+1} = [2,1]-.

#[inline]
pub(crate) fn edge_id(m: usize, start: usize, sign: Sign) -> usize {
    match sign {
        Sign::Positive => start,
        Sign::Negative => m + (start + m - 1) % m,
    }
}

#[inline]
pub(crate) fn id_sign(m: usize, id: usize) -> Sign {
    if id < m {
        Sign::Positive
    } else {
        Sign::Negative
    }
}

#[inline]
pub(crate) fn id_start(m: usize, id: usize) -> usize {
    if id < m {
        id
    } else {
        (id - m + 1) % m
    }
}

#[inline]
pub(crate) fn id_end(m: usize, id: usize) -> usize {
    if id < m {
        (id + 1) % m
    } else {
        id - m
    }
}

/// The edge of the given sign that ends at `dot`.
#[inline]
pub(crate) fn entering(m: usize, dot: usize, sign: Sign) -> usize {
    match sign {
        Sign::Positive => (dot + m - 1) % m,
        Sign::Negative => m + dot,
    }
}

/// The edge of the given sign that starts at `dot`.
#[inline]
pub(crate) fn exiting(m: usize, dot: usize, sign: Sign) -> usize {
    edge_id(m, dot, sign)
}

/// The canonical order `e_1, ..., e_4n`: positive edges `[1,2], ..., [2n,1]`
/// followed by negative edges `[2,1], [3,2], ..., [1,2n]`.
pub fn edge_order(n: usize) -> Vec<EdgeRef> {
    (0..4 * n).map(|id| EdgeRef::from_id(n, id)).collect()
}

/// `|D_n| = (2n)! / n!`, the number of oriented chord diagrams of order `n`.
pub fn diagram_count(n: usize) -> BigUint {
    (n as u64 + 1..=2 * n as u64).fold(BigUint::from(1u32), |acc, f| acc * f)
}

const VACANT: u32 = u32::MAX;

/// A `k`-`n`-diagram: `k <= n` disjoint oriented chords on `2n` dots.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PartialDiagram {
    n: usize,
    chords: Vec<Chord>,
    // Per 0-based dot: VACANT, or 2 * chord index + (0 tail | 1 head).
    slots: Vec<u32>,
}

impl PartialDiagram {
    /// Validates `chords` (1-based labels) as a partial diagram of order `n`.
    pub fn new(n: usize, chords: &[(i64, i64)]) -> Result<PartialDiagram> {
        let mut p = PartialDiagram::empty(n)?;
        if chords.len() > n {
            return Err(Error::TooManyChords { chords: chords.len(), dots: 2 * n });
        }
        for &(a, b) in chords {
            let chord = Chord::new(Dot::new(a, n)?, Dot::new(b, n)?);
            p.try_push(chord)?;
        }
        Ok(p)
    }

    pub fn empty(n: usize) -> Result<PartialDiagram> {
        if n == 0 {
            return Err(Error::ZeroOrder);
        }
        Ok(PartialDiagram { n, chords: Vec::with_capacity(n), slots: vec![VACANT; 2 * n] })
    }

    pub fn from_chords(n: usize, chords: &[Chord]) -> Result<PartialDiagram> {
        let mut p = PartialDiagram::empty(n)?;
        for &c in chords {
            p.try_push(c)?;
        }
        Ok(p)
    }

    /// A copy of this diagram with `chord` added.
    pub fn with_chord(&self, chord: Chord) -> Result<PartialDiagram> {
        let mut p = self.clone();
        p.try_push(chord)?;
        Ok(p)
    }

    fn try_push(&mut self, chord: Chord) -> Result<()> {
        for d in [chord.tail, chord.head] {
            if d.label() > 2 * self.n {
                return Err(Error::DotOutOfRange { dot: d.label() as i64, max: 2 * self.n });
            }
        }
        if chord.tail == chord.head {
            return Err(Error::DuplicateDot { dot: chord.tail.label() });
        }
        for d in [chord.tail, chord.head] {
            if !self.is_vacant(d) {
                return Err(Error::DuplicateDot { dot: d.label() });
            }
        }
        if self.chords.len() == self.n {
            return Err(Error::TooManyChords { chords: self.n + 1, dots: 2 * self.n });
        }
        self.push_unchecked(chord);
        Ok(())
    }

    pub(crate) fn push_unchecked(&mut self, chord: Chord) {
        let c = self.chords.len() as u32;
        self.slots[chord.tail.index()] = 2 * c;
        self.slots[chord.head.index()] = 2 * c + 1;
        self.chords.push(chord);
    }

    pub(crate) fn pop_unchecked(&mut self) {
        if let Some(c) = self.chords.pop() {
            self.slots[c.tail.index()] = VACANT;
            self.slots[c.head.index()] = VACANT;
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of chords placed, the `k` of a `k`-`n`-diagram.
    pub fn k(&self) -> usize {
        self.chords.len()
    }

    pub fn chords(&self) -> &[Chord] {
        &self.chords
    }

    pub fn is_full(&self) -> bool {
        self.chords.len() == self.n
    }

    pub fn is_vacant(&self, d: Dot) -> bool {
        self.slots[d.index()] == VACANT
    }

    /// Chord index and role of the chord end at `d`, if any.
    pub fn occupant(&self, d: Dot) -> Option<(usize, Role)> {
        match self.slots[d.index()] {
            VACANT => None,
            s => Some(((s / 2) as usize, if s % 2 == 0 { Role::Tail } else { Role::Head })),
        }
    }

    pub fn vacant_dots(&self) -> Vec<Dot> {
        (0..2 * self.n).filter(|&i| self.slots[i] == VACANT).map(Dot::from_index).collect()
    }

    /// Chords as 1-based label pairs.
    pub fn pairs(&self) -> Vec<(i64, i64)> {
        self.chords.iter().map(|c| (c.tail.label() as i64, c.head.label() as i64)).collect()
    }

    #[inline]
    pub(crate) fn vacant_at(&self, i: usize) -> bool {
        self.slots[i] == VACANT
    }

    /// Other end of the chord at 0-based dot `i`, and whether `i` is its tail.
    #[inline]
    pub(crate) fn mate(&self, i: usize) -> Option<(usize, bool)> {
        let s = self.slots[i];
        if s == VACANT {
            return None;
        }
        let c = self.chords[(s / 2) as usize];
        if s.is_multiple_of(2) {
            Some((c.head.index(), true))
        } else {
            Some((c.tail.index(), false))
        }
    }

    #[inline]
    pub(crate) fn chord_at(&self, i: usize) -> Option<usize> {
        match self.slots[i] {
            VACANT => None,
            s => Some((s / 2) as usize),
        }
    }
}

impl fmt::Display for PartialDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n={};", self.n)?;
        for (i, c) in self.chords.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl FromStr for PartialDiagram {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_diagram(s)
    }
}

/// A full diagram: `n` chords on `2n` dots, no vacant dots.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Diagram(PartialDiagram);

impl Diagram {
    pub fn new(n: usize, chords: &[(i64, i64)]) -> Result<Diagram> {
        Diagram::try_from(PartialDiagram::new(n, chords)?)
    }

    pub fn as_partial(&self) -> &PartialDiagram {
        &self.0
    }

    pub fn into_partial(self) -> PartialDiagram {
        self.0
    }

    pub(crate) fn from_full_unchecked(p: PartialDiagram) -> Diagram {
        debug_assert!(p.is_full());
        Diagram(p)
    }

    pub(crate) fn partial_mut(&mut self) -> &mut PartialDiagram {
        &mut self.0
    }
}

impl TryFrom<PartialDiagram> for Diagram {
    type Error = Error;

    fn try_from(p: PartialDiagram) -> Result<Diagram> {
        if !p.is_full() {
            return Err(Error::IncompleteDiagram { chords: p.k(), n: p.n() });
        }
        Ok(Diagram(p))
    }
}

impl Deref for Diagram {
    type Target = PartialDiagram;

    fn deref(&self) -> &PartialDiagram {
        &self.0
    }
}

impl fmt::Display for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl FromStr for Diagram {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Diagram::try_from(parse_diagram(s)?)
    }
}

/// Parses `[n=INT;](INT,INT){,(INT,INT)}`. Whitespace is ignored. Without the
/// `n=` prefix the order is the number of pairs, so the result is full.
pub fn parse_diagram(text: &str) -> Result<PartialDiagram> {
    let mut p = Parser { src: text.as_bytes(), pos: 0 };
    p.skip_ws();
    let explicit_n = if p.peek() == Some(b'n') {
        p.pos += 1;
        p.expect(b'=')?;
        let n = p.int()?;
        p.expect(b';')?;
        if n < 0 {
            return Err(Error::Syntax { pos: p.pos, msg: "negative order".into() });
        }
        Some(n as usize)
    } else {
        None
    };
    let mut pairs = Vec::new();
    p.skip_ws();
    if p.peek().is_some() || explicit_n.is_none() {
        loop {
            p.expect(b'(')?;
            let a = p.int()?;
            p.expect(b',')?;
            let b = p.int()?;
            p.expect(b')')?;
            pairs.push((a, b));
            p.skip_ws();
            match p.peek() {
                None => break,
                Some(b',') => p.pos += 1,
                Some(c) => {
                    return Err(Error::Syntax {
                        pos: p.pos,
                        msg: format!("expected ',' or end of input, found {:?}", c as char),
                    })
                }
            }
        }
    }
    let n = explicit_n.unwrap_or(pairs.len());
    PartialDiagram::new(n, &pairs)
}

/// Inverse of [`parse_diagram`]; always emits the `n=` prefix.
pub fn format_diagram(p: &PartialDiagram) -> String {
    p.to_string()
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.src.get(self.pos).is_some_and(|c| c.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expect(&mut self, want: u8) -> Result<()> {
        match self.peek() {
            Some(c) if c == want => {
                self.pos += 1;
                Ok(())
            }
            found => Err(Error::Syntax {
                pos: self.pos,
                msg: match found {
                    Some(c) => format!("expected {:?}, found {:?}", want as char, c as char),
                    None => format!("expected {:?}, found end of input", want as char),
                },
            }),
        }
    }

    fn int(&mut self) -> Result<i64> {
        self.skip_ws();
        let start = self.pos;
        if self.src.get(self.pos) == Some(&b'-') {
            self.pos += 1;
        }
        while self.src.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .ok()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| Error::Syntax { pos: start, msg: "expected an integer".into() })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(l: i64, n: usize) -> Dot {
        Dot::new(l, n).unwrap()
    }

    #[test]
    fn make_partial_examples() {
        let p = PartialDiagram::new(2, &[(1, 3)]).unwrap();
        assert_eq!(p.vacant_dots(), vec![d(2, 2), d(4, 2)]);
        assert_eq!(p.occupant(d(1, 2)), Some((0, Role::Tail)));
        assert_eq!(p.occupant(d(3, 2)), Some((0, Role::Head)));

        assert_eq!(
            PartialDiagram::new(2, &[(1, 3), (2, 3)]),
            Err(Error::DuplicateDot { dot: 3 })
        );
        assert!(PartialDiagram::new(1, &[(1, 2)]).unwrap().is_full());
    }

    #[test]
    fn make_partial_errors() {
        assert_eq!(
            PartialDiagram::new(2, &[(0, 3)]),
            Err(Error::DotOutOfRange { dot: 0, max: 4 })
        );
        assert_eq!(
            PartialDiagram::new(2, &[(1, 5)]),
            Err(Error::DotOutOfRange { dot: 5, max: 4 })
        );
        assert!(matches!(
            PartialDiagram::new(1, &[(1, 2), (2, 1)]),
            Err(Error::TooManyChords { .. })
        ));
        assert_eq!(PartialDiagram::new(0, &[]), Err(Error::ZeroOrder));
        assert_eq!(PartialDiagram::new(2, &[(3, 3)]), Err(Error::DuplicateDot { dot: 3 }));
    }

    #[test]
    fn make_diagram_examples() {
        assert!(Diagram::new(2, &[(1, 3), (2, 4)]).is_ok());
        assert_eq!(
            Diagram::new(2, &[(1, 3)]),
            Err(Error::IncompleteDiagram { chords: 1, n: 2 })
        );
        let d = Diagram::new(1, &[(2, 1)]).unwrap();
        assert_eq!(d.chords()[0].tail.label(), 2);
    }

    #[test]
    fn counts() {
        let got: Vec<u64> =
            (1..=6).map(|n| diagram_count(n).try_into().unwrap()).collect();
        assert_eq!(got, vec![2, 12, 120, 1680, 30240, 665280]);
    }

    #[test]
    fn canonical_edge_order() {
        let n1: Vec<String> = edge_order(1).into_iter().map(|e| display_edge(e, 1)).collect();
        assert_eq!(n1, vec!["[1,2]+", "[2,1]+", "[2,1]-", "[1,2]-"]);

        let n2 = edge_order(2);
        assert_eq!(n2[0], EdgeRef::new(d(1, 2), Sign::Positive));
        assert_eq!(n2[4], EdgeRef::new(d(2, 2), Sign::Negative));
        assert_eq!(display_edge(n2[4], 2), "[2,1]-");
        assert_eq!(display_edge(n2[7], 2), "[1,4]-");
        for (i, e) in n2.iter().enumerate() {
            assert_eq!(e.position(2), i);
        }
    }

    #[test]
    fn edge_id_helpers_agree() {
        for n in 1..5 {
            let m = 2 * n;
            for id in 0..2 * m {
                let e = EdgeRef::from_id(n, id);
                assert_eq!(id_end(m, id), e.end(n).index());
                let s = id_sign(m, id);
                assert_eq!(entering(m, id_end(m, id), s), id);
                assert_eq!(exiting(m, id_start(m, id), s), id);
            }
        }
    }

    #[test]
    fn parse_examples() {
        let p = parse_diagram("(1,3),(2,4)").unwrap();
        assert_eq!((p.n(), p.k()), (2, 2));
        assert!(p.is_full());

        let p = parse_diagram("n=3;(1,3)").unwrap();
        assert_eq!(p.n(), 3);
        let vac: Vec<usize> = p.vacant_dots().iter().map(|d| d.label()).collect();
        assert_eq!(vac, vec![2, 4, 5, 6]);

        assert_eq!(parse_diagram("(1,1)"), Err(Error::DuplicateDot { dot: 1 }));
    }

    #[test]
    fn parse_syntax_errors() {
        for bad in ["", "(1,2", "(1;2)", "(1,2)(3,4)", "n=2(1,2)", "n=;(1,2)", "(a,b)"] {
            assert!(
                matches!(parse_diagram(bad), Err(Error::Syntax { .. })),
                "{bad:?} -> {:?}",
                parse_diagram(bad)
            );
        }
    }

    #[test]
    fn format_then_parse() {
        let p = PartialDiagram::new(4, &[(5, 1), (2, 8)]).unwrap();
        assert_eq!(format_diagram(&p), "n=4;(5,1),(2,8)");
        assert_eq!(parse_diagram(&format_diagram(&p)).unwrap(), p);
        let e = PartialDiagram::empty(3).unwrap();
        assert_eq!(e.to_string(), "n=3;");
        assert_eq!(parse_diagram("n=3;").unwrap(), e);
        assert_eq!(parse_diagram(" n = 2 ; ( 1 , 3 ) ").unwrap().k(), 1);
    }
}
