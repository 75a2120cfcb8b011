//! Boundary count by explicit gluing, independent of the walk in [`crate::walk`].
//!
//! Each boundary edge of the annulus is an arc with a start marker and an end
//! marker. Gluing the squares of a chord `(a,b)` identifies four end markers
//! with four start markers:
//!
//! ```text
//! [a-1,a]+ end ~ [b,b+1]+ start      [b+1,b]- end ~ [a,a+1]+ start
//! [a+1,a]- end ~ [b,b-1]- start      [b-1,b]+ end ~ [a,a-1]- start
//! ```
//!
//! Every marker then has degree two, so the connected components of the
//! marker graph are closed curves: the boundary components.

use crate::diagram::{Diagram, Sign};

struct DisjointSets {
    parent: Vec<usize>,
    rank: Vec<u8>,
}

impl DisjointSets {
    fn new(len: usize) -> Self {
        DisjointSets { parent: (0..len).collect(), rank: vec![0; len] }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return;
        }
        match self.rank[ra].cmp(&self.rank[rb]) {
            std::cmp::Ordering::Less => self.parent[ra] = rb,
            std::cmp::Ordering::Greater => self.parent[rb] = ra,
            std::cmp::Ordering::Equal => {
                self.parent[rb] = ra;
                self.rank[ra] += 1;
            }
        }
    }
}

/// Edges keyed by their endpoint labels and sign, so the table above reads
/// literally. Labels are taken mod `2n` into `0..2n`.
struct Arcs {
    m: usize,
}

impl Arcs {
    fn wrap(&self, label: i64) -> usize {
        label.rem_euclid(self.m as i64) as usize
    }

    /// Arc slot of the edge `[from, to]` with `sign`. Each of the `4n` edges
    /// gets its own slot: positive arcs `0..2n` by `from`, negative arcs
    /// `2n..4n` by `from`.
    fn arc(&self, from: i64, to: i64, sign: Sign) -> usize {
        let (f, t) = (self.wrap(from), self.wrap(to));
        match sign {
            Sign::Positive => {
                debug_assert_eq!(t, (f + 1) % self.m);
                f
            }
            Sign::Negative => {
                debug_assert_eq!(f, (t + 1) % self.m);
                self.m + f
            }
        }
    }

    fn start_marker(&self, arc: usize) -> usize {
        2 * arc
    }

    fn end_marker(&self, arc: usize) -> usize {
        2 * arc + 1
    }
}

/// `d(D)` computed by gluing markers with a union-find structure.
pub fn gluing_oracle_d(d: &Diagram) -> usize {
    let m = 2 * d.n();
    let arcs = Arcs { m };
    let mut sets = DisjointSets::new(4 * m);
    for arc in 0..2 * m {
        sets.union(arcs.start_marker(arc), arcs.end_marker(arc));
    }
    for c in d.chords() {
        let a = c.tail.label() as i64 - 1;
        let b = c.head.label() as i64 - 1;
        use Sign::{Negative as Neg, Positive as Pos};
        let corners = [
            (arcs.arc(a - 1, a, Pos), arcs.arc(b, b + 1, Pos)),
            (arcs.arc(b + 1, b, Neg), arcs.arc(a, a + 1, Pos)),
            (arcs.arc(a + 1, a, Neg), arcs.arc(b, b - 1, Neg)),
            (arcs.arc(b - 1, b, Pos), arcs.arc(a, a - 1, Neg)),
        ];
        for (into, out) in corners {
            sets.union(arcs.end_marker(into), arcs.start_marker(out));
        }
    }
    (0..4 * m).filter(|&x| sets.find(x) == x).count()
}
