//! Chord-by-chord uniform generation of diagrams.
//!
//! The procedure keeps a *pointer* edge, initially `e_1 = [1,2]+`. Each step
//! joins the concluding dot `p` of the pointer's segment to a vacant dot drawn
//! uniformly from the other `2n - 2k + 1` vacant dots, with a uniformly drawn
//! orientation. When the pointer's segment closes into a loop, the pointer
//! moves to the smallest edge (in canonical order) that still lies in a
//! segment.
//!
//! Random draws are pinned for reproducibility: one `random_range` over the
//! sorted eligible dots, then one `bool`, `true` meaning the new chord is
//! oriented from `p` to the drawn dot. The stream is `ChaCha8Rng` seeded with
//! `seed_from_u64`.
//!
//! Segments are tracked by their end edges only (`last_of[first]`,
//! `first_of[last]`), so adding a chord costs four splices plus the length of
//! any loop it closes.

use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::diagram::{
    entering, exiting, id_end, id_sign, id_start, Chord, Diagram, Dot, EdgeRef, PartialDiagram,
    Sign,
};
use crate::error::{Error, Result};
use crate::fenwick::Fenwick;
use crate::walk::{pred_id, succ_id, Loop, Segment};

/// Name of the random generator, as recorded in report metadata.
pub const GENERATOR: &str = "ChaCha8Rng (rand_chacha 0.10, seed_from_u64)";

/// The pointer's segment closed into a loop at `step` (1-based).
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub struct Closure {
    pub step: usize,
    pub size: usize,
    pub edges: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StepEvent {
    pub chord: Chord,
    /// The loop the pointer's segment closed into, if it did.
    pub closed_loop: Option<Loop>,
    /// The reassigned pointer; present iff the pointer closed and chords remain.
    pub new_pointer: Option<EdgeRef>,
    /// All loops closed by this chord, including the pointer's.
    pub loops_closed: usize,
}

/// One branch of the choice tree: the drawn dot and whether the chord leaves `p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Choice {
    pub dot: Dot,
    pub from_pointer_dot: bool,
}

/// Running plug bookkeeping: counts per entrance and totals by sign.
#[derive(Debug, Clone)]
struct PlugLedger {
    positive: Vec<u8>,
    negative: Vec<u8>,
    total_positive: usize,
    total_negative: usize,
}

impl PlugLedger {
    fn new(m: usize) -> Self {
        PlugLedger { positive: vec![0; m], negative: vec![0; m], total_positive: 0, total_negative: 0 }
    }

    /// Sign of the plug formed by segment `first..last`, if it is one.
    fn classify(m: usize, first: usize, last: usize) -> Option<(usize, Sign)> {
        let entrance = id_start(m, first);
        (entrance == id_end(m, last)).then(|| {
            let sign = if id_sign(m, first) == id_sign(m, last) {
                Sign::Positive
            } else {
                Sign::Negative
            };
            (entrance, sign)
        })
    }

    fn add(&mut self, m: usize, first: usize, last: usize) -> Option<Sign> {
        let (dot, sign) = Self::classify(m, first, last)?;
        match sign {
            Sign::Positive => {
                self.positive[dot] += 1;
                self.total_positive += 1;
            }
            Sign::Negative => {
                self.negative[dot] += 1;
                self.total_negative += 1;
            }
        }
        Some(sign)
    }

    fn remove(&mut self, m: usize, first: usize, last: usize) {
        if let Some((dot, sign)) = Self::classify(m, first, last) {
            match sign {
                Sign::Positive => {
                    self.positive[dot] -= 1;
                    self.total_positive -= 1;
                }
                Sign::Negative => {
                    self.negative[dot] -= 1;
                    self.total_negative -= 1;
                }
            }
        }
    }
}

#[derive(Debug, Clone)]
pub struct ProcedureState {
    partial: PartialDiagram,
    seed: u64,
    rng: ChaCha8Rng,
    pointer: Option<usize>,
    pointer_first: usize,
    closures: Vec<Closure>,
    last_of: Vec<u32>,
    first_of: Vec<u32>,
    in_loop: Vec<bool>,
    cursor: usize,
    vacant: Fenwick,
    stamp: Vec<u32>,
    loop_tag: u32,
    plugs: PlugLedger,
    completed: (usize, usize),
}

impl ProcedureState {
    /// Empty diagram of order `n`, pointer `e_1 = [1,2]+`.
    pub fn new(n: usize, seed: u64) -> Result<ProcedureState> {
        let partial = PartialDiagram::empty(n)?;
        let m = 2 * n;
        let ids: Vec<u32> = (0..2 * m as u32).collect();
        Ok(ProcedureState {
            partial,
            seed,
            rng: ChaCha8Rng::seed_from_u64(seed),
            pointer: Some(0),
            pointer_first: 0,
            closures: Vec::new(),
            last_of: ids.clone(),
            first_of: ids,
            in_loop: vec![false; 2 * m],
            cursor: 0,
            vacant: Fenwick::filled(m),
            stamp: vec![u32::MAX; n],
            loop_tag: 0,
            plugs: PlugLedger::new(m),
            completed: (0, 0),
        })
    }

    pub fn n(&self) -> usize {
        self.partial.n()
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Chords placed so far.
    pub fn step_index(&self) -> usize {
        self.partial.k()
    }

    pub fn is_complete(&self) -> bool {
        self.partial.is_full()
    }

    pub fn partial(&self) -> &PartialDiagram {
        &self.partial
    }

    pub fn closures(&self) -> &[Closure] {
        &self.closures
    }

    /// `None` once every chord is placed.
    pub fn pointer(&self) -> Option<EdgeRef> {
        self.pointer.map(|id| EdgeRef::from_id(self.n(), id))
    }

    fn m(&self) -> usize {
        2 * self.n()
    }

    fn require_pointer(&self) -> Result<usize> {
        if self.is_complete() {
            return Err(Error::ProcedureComplete { n: self.n() });
        }
        self.pointer.ok_or(Error::PointerInLoop)
    }

    /// Initial dot `q` of the pointer's segment.
    pub fn initial_dot(&self) -> Result<Dot> {
        self.require_pointer()?;
        Ok(Dot::from_index(id_start(self.m(), self.pointer_first)))
    }

    /// Concluding dot `p` of the pointer's segment.
    pub fn concluding_dot(&self) -> Result<Dot> {
        self.require_pointer()?;
        Ok(Dot::from_index(self.concluding_index()))
    }

    fn concluding_index(&self) -> usize {
        id_end(self.m(), self.last_of[self.pointer_first] as usize)
    }

    /// The segment containing the pointer.
    pub fn pointer_segment(&self) -> Result<Segment> {
        let ptr = self.require_pointer()?;
        if self.in_loop[ptr] {
            return Err(Error::PointerInLoop);
        }
        let n = self.n();
        let mut ids = vec![self.pointer_first];
        while let Some(next) = succ_id(&self.partial, *ids.last().unwrap()) {
            ids.push(next);
        }
        debug_assert_eq!(*ids.last().unwrap(), self.last_of[self.pointer_first] as usize);
        if !ids.contains(&ptr) {
            return Err(Error::PointerInLoop);
        }
        Ok(Segment {
            start_dot: Dot::from_index(id_start(2 * n, ids[0])),
            end_dot: Dot::from_index(id_end(2 * n, *ids.last().unwrap())),
            edges: ids.into_iter().map(|id| EdgeRef::from_id(n, id)).collect(),
        })
    }

    /// Plugs present in the current partial diagram, as `(positive, negative)`.
    pub fn plug_counts(&self) -> (usize, usize) {
        (self.plugs.total_positive, self.plugs.total_negative)
    }

    /// Plugs completed by the most recent step, as `(positive, negative)`.
    pub fn plugs_completed_last_step(&self) -> (usize, usize) {
        self.completed
    }

    /// Number of positive and negative plugs, other than the pointer's own
    /// segment, whose entrance is the concluding dot `p`.
    pub fn plugs_at_concluding_dot(&self) -> Result<(usize, usize)> {
        self.require_pointer()?;
        let p = self.concluding_index();
        let (mut pos, mut neg) = (self.plugs.positive[p] as usize, self.plugs.negative[p] as usize);
        let m = self.m();
        match PlugLedger::classify(m, self.pointer_first, self.last_of[self.pointer_first] as usize)
        {
            Some((_, Sign::Positive)) => pos -= 1,
            Some((_, Sign::Negative)) => neg -= 1,
            None => {}
        }
        Ok((pos, neg))
    }

    /// Vacant dots other than `p`, ascending: the candidates for the next chord.
    pub fn eligible_dots(&self) -> Result<Vec<Dot>> {
        self.require_pointer()?;
        let p = Dot::from_index(self.concluding_index());
        Ok(self.partial.vacant_dots().into_iter().filter(|&d| d != p).collect())
    }

    /// Draws the next chord and adds it.
    pub fn step(&mut self) -> Result<StepEvent> {
        self.require_pointer()?;
        let p = self.concluding_index();
        let vacant = self.m() - 2 * self.partial.k();
        let mut rank = self.rng.random_range(0..vacant - 1);
        if rank >= self.vacant.below(p) {
            rank += 1;
        }
        let other = self.vacant.select(rank);
        let from_pointer_dot: bool = self.rng.random();
        Ok(self.place(p, other, from_pointer_dot))
    }

    /// Adds the chord between `p` and `choice.dot` without consuming randomness.
    pub fn apply_choice(&mut self, choice: Choice) -> Result<StepEvent> {
        self.require_pointer()?;
        let p = self.concluding_index();
        let other = choice.dot.index();
        if choice.dot.label() > self.m() || other == p || !self.partial.vacant_at(other) {
            return Err(Error::PreconditionViolated("choice must be a vacant dot other than p"));
        }
        Ok(self.place(p, other, choice.from_pointer_dot))
    }

    fn place(&mut self, p: usize, other: usize, from_pointer_dot: bool) -> StepEvent {
        let m = self.m();
        let (t, h) = if from_pointer_dot { (p, other) } else { (other, p) };
        let chord = Chord::new(Dot::from_index(t), Dot::from_index(h));

        // Retire every segment with an end at t or h.
        let mut touched = [usize::MAX; 8];
        let mut len = 0;
        for dot in [t, h] {
            for s in [Sign::Positive, Sign::Negative] {
                for f in [exiting(m, dot, s), self.first_of[entering(m, dot, s)] as usize] {
                    if !touched[..len].contains(&f) {
                        touched[len] = f;
                        len += 1;
                    }
                }
            }
        }
        for &f in &touched[..len] {
            self.plugs.remove(m, f, self.last_of[f] as usize);
        }

        self.partial.push_unchecked(chord);
        self.vacant.remove(t);
        self.vacant.remove(h);

        let attachments = [
            (entering(m, t, Sign::Positive), exiting(m, h, Sign::Positive)),
            (entering(m, h, Sign::Negative), exiting(m, t, Sign::Positive)),
            (entering(m, t, Sign::Negative), exiting(m, h, Sign::Negative)),
            (entering(m, h, Sign::Positive), exiting(m, t, Sign::Negative)),
        ];
        let mut created = [usize::MAX; 4];
        let mut n_created = 0;
        let mut pointer_loop = None;
        let mut loops_closed = 0;
        for (into, out) in attachments {
            let first = self.first_of[into] as usize;
            let last = self.last_of[out] as usize;
            if first == out {
                loops_closed += 1;
                let closes_pointer = self.pointer.is_some() && first == self.pointer_first;
                let (ids, size) = self.seal_loop(out);
                if closes_pointer {
                    pointer_loop = Some((ids, size));
                }
            } else {
                self.last_of[first] = last as u32;
                self.first_of[last] = first as u32;
                if out == self.pointer_first {
                    self.pointer_first = first;
                }
                created[n_created] = first;
                n_created += 1;
            }
        }

        self.completed = (0, 0);
        for i in 0..n_created {
            let f = created[i];
            if created[..i].contains(&f) || !self.partial.vacant_at(id_start(m, f)) {
                continue;
            }
            match self.plugs.add(m, f, self.last_of[f] as usize) {
                Some(Sign::Positive) => self.completed.0 += 1,
                Some(Sign::Negative) => self.completed.1 += 1,
                None => {}
            }
        }

        let n = self.n();
        let k = self.partial.k();
        let mut event = StepEvent { chord, closed_loop: None, new_pointer: None, loops_closed };
        if let Some((ids, size)) = pointer_loop {
            self.closures.push(Closure { step: k, size, edges: ids.len() });
            event.closed_loop =
                Some(Loop { edges: ids.into_iter().map(|id| EdgeRef::from_id(n, id)).collect(), size });
            if k < n {
                while self.in_loop[self.cursor] {
                    self.cursor += 1;
                }
                let ptr = self.cursor;
                let mut first = ptr;
                while let Some(prev) = pred_id(&self.partial, first) {
                    first = prev;
                }
                self.pointer = Some(ptr);
                self.pointer_first = first;
                event.new_pointer = Some(EdgeRef::from_id(n, ptr));
            } else {
                self.pointer = None;
            }
        }
        debug_assert!(k < n || self.pointer.is_none());
        event
    }

    /// Marks the loop through `start` and returns its edge ids (rotated to the
    /// smallest id) and its distinct chord count.
    fn seal_loop(&mut self, start: usize) -> (Vec<usize>, usize) {
        let m = self.m();
        self.loop_tag = self.loop_tag.wrapping_add(1);
        let tag = self.loop_tag;
        let mut ids = Vec::new();
        let mut size = 0;
        let mut cur = start;
        loop {
            self.in_loop[cur] = true;
            ids.push(cur);
            let c = self.partial.chord_at(id_end(m, cur)).expect("closed loop");
            if self.stamp[c] != tag {
                self.stamp[c] = tag;
                size += 1;
            }
            cur = succ_id(&self.partial, cur).expect("closed loop");
            if cur == start {
                break;
            }
        }
        let lo = ids.iter().enumerate().min_by_key(|&(_, &id)| id).map(|(i, _)| i).unwrap();
        ids.rotate_left(lo);
        (ids, size)
    }

    /// The finished diagram; `None` until all `n` chords are placed.
    pub fn into_diagram(self) -> Option<Diagram> {
        self.partial.is_full().then(|| Diagram::from_full_unchecked(self.partial))
    }

    /// Runs the remaining steps.
    pub fn finish(mut self) -> (Diagram, Vec<Closure>) {
        while !self.is_complete() {
            self.step().expect("steps remain");
        }
        let closures = std::mem::take(&mut self.closures);
        (self.into_diagram().expect("complete"), closures)
    }
}

/// Runs all `n` steps from seed `seed`.
pub fn run_procedure(n: usize, seed: u64) -> Result<(Diagram, Vec<Closure>)> {
    Ok(ProcedureState::new(n, seed)?.finish())
}

pub const CHOICE_TREE_MAX_N: usize = 4;

/// Every sequence of choices the procedure can make, with its leaf diagram.
pub fn choice_tree(n: usize) -> Result<Vec<(Vec<Choice>, Diagram)>> {
    if n > CHOICE_TREE_MAX_N {
        return Err(Error::TooLarge { what: "choice tree", n, max: CHOICE_TREE_MAX_N });
    }
    let mut leaves = Vec::new();
    let mut path = Vec::with_capacity(n);
    descend(ProcedureState::new(n, 0)?, &mut path, &mut leaves);
    Ok(leaves)
}

fn descend(state: ProcedureState, path: &mut Vec<Choice>, leaves: &mut Vec<(Vec<Choice>, Diagram)>) {
    if state.is_complete() {
        leaves.push((path.clone(), state.into_diagram().expect("complete")));
        return;
    }
    for dot in state.eligible_dots().expect("pointer present") {
        for from_pointer_dot in [true, false] {
            let choice = Choice { dot, from_pointer_dot };
            let mut next = state.clone();
            next.apply_choice(choice).expect("eligible choice");
            path.push(choice);
            descend(next, path, leaves);
            path.pop();
        }
    }
}
