/// Counts over `0..len` with prefix sums and order-statistic selection.
#[derive(Debug, Clone)]
pub(crate) struct Fenwick {
    tree: Vec<u32>,
    top: usize,
}

impl Fenwick {
    pub fn filled(len: usize) -> Fenwick {
        let mut tree = vec![0u32; len + 1];
        for i in 1..=len {
            tree[i] += 1;
            let parent = i + (i & i.wrapping_neg());
            if parent <= len {
                tree[parent] += tree[i];
            }
        }
        let top = if len == 0 { 0 } else { 1 << (usize::BITS - 1 - len.leading_zeros()) };
        Fenwick { tree, top }
    }

    pub fn remove(&mut self, i: usize) {
        let mut j = i + 1;
        while j < self.tree.len() {
            self.tree[j] -= 1;
            j += j & j.wrapping_neg();
        }
    }

    /// Number of members strictly below `i`.
    pub fn below(&self, i: usize) -> usize {
        let mut sum = 0;
        let mut j = i;
        while j > 0 {
            sum += self.tree[j] as usize;
            j -= j & j.wrapping_neg();
        }
        sum
    }

    /// The member of 0-based rank `rank`.
    pub fn select(&self, rank: usize) -> usize {
        let mut pos = 0;
        let mut rest = rank as u32;
        let mut step = self.top;
        while step > 0 {
            let next = pos + step;
            if next < self.tree.len() && self.tree[next] <= rest {
                pos = next;
                rest -= self.tree[next];
            }
            step >>= 1;
        }
        pos
    }
}
