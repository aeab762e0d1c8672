//! Capacitated bipartite assignment by augmenting paths.
//!
//! Left vertices are processed in index order and right vertices are scanned
//! in index order, so the result is a deterministic function of the input.

use fixedbitset::FixedBitSet;

/// Maximum assignment of left vertices to adjacent right vertices where each
/// right vertex accepts at most `capacity` left vertices. `rows[u]` lists the
/// right neighbours of left vertex `u` over `n_right` positions.
pub(crate) fn max_assignment(
    rows: &[FixedBitSet],
    n_right: usize,
    capacity: usize,
) -> Vec<Option<usize>> {
    let mut state = State {
        rows,
        capacity,
        holders: vec![Vec::new(); n_right],
        assigned: vec![None; rows.len()],
        seen: FixedBitSet::with_capacity(n_right),
    };
    if capacity == 0 {
        return state.assigned;
    }
    for u in 0..rows.len() {
        state.seen.clear();
        state.augment(u);
    }
    state.assigned
}

struct State<'a> {
    rows: &'a [FixedBitSet],
    capacity: usize,
    holders: Vec<Vec<usize>>,
    assigned: Vec<Option<usize>>,
    seen: FixedBitSet,
}

impl State<'_> {
    fn augment(&mut self, u: usize) -> bool {
        let rows = self.rows;
        for v in rows[u].ones() {
            if self.seen.put(v) {
                continue;
            }
            if self.holders[v].len() < self.capacity {
                self.holders[v].push(u);
                self.assigned[u] = Some(v);
                return true;
            }
            for slot in 0..self.holders[v].len() {
                let w = self.holders[v][slot];
                if self.augment(w) {
                    self.holders[v][slot] = u;
                    self.assigned[u] = Some(v);
                    return true;
                }
            }
        }
        false
    }
}
