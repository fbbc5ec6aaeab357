//! Linear systems over the two-element field, bit-packed into `u64` words.

/// Augmented system `A x = b` over GF(2).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Gf2System {
    vars: usize,
    words: usize,
    // Each row: coefficient bits followed by the right-hand side at bit `vars`.
    rows: Vec<Vec<u64>>,
}

impl Gf2System {
    pub fn new(vars: usize) -> Self {
        Gf2System { vars, words: (vars + 1).div_ceil(64), rows: Vec::new() }
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn equations(&self) -> usize {
        self.rows.len()
    }

    /// Adds `Σ_{v ∈ support} x_v = rhs`. Repeated indices cancel.
    pub fn push_equation(&mut self, support: &[usize], rhs: bool) {
        let mut row = vec![0u64; self.words];
        for &v in support {
            assert!(v < self.vars, "variable {v} out of range");
            row[v / 64] ^= 1 << (v % 64);
        }
        if rhs {
            row[self.vars / 64] |= 1 << (self.vars % 64);
        }
        self.rows.push(row);
    }

    fn bit(row: &[u64], i: usize) -> bool {
        row[i / 64] >> (i % 64) & 1 == 1
    }

    /// Gauss–Jordan elimination. Free variables are set to zero, so the
    /// returned solution is deterministic. `None` when inconsistent.
    pub fn solve(&self) -> Option<Vec<bool>> {
        let mut rows = self.rows.clone();
        let mut pivots = Vec::new();
        let mut rank = 0;
        for col in 0..self.vars {
            let Some(p) = (rank..rows.len()).find(|&r| Self::bit(&rows[r], col)) else {
                continue;
            };
            rows.swap(rank, p);
            let pivot_row = rows[rank].clone();
            for (r, row) in rows.iter_mut().enumerate() {
                if r != rank && Self::bit(row, col) {
                    for (w, pw) in row.iter_mut().zip(&pivot_row) {
                        *w ^= pw;
                    }
                }
            }
            pivots.push(col);
            rank += 1;
        }
        if rows[rank..].iter().any(|row| Self::bit(row, self.vars)) {
            return None;
        }
        let mut x = vec![false; self.vars];
        for (r, &col) in pivots.iter().enumerate() {
            x[col] = Self::bit(&rows[r], self.vars);
        }
        Some(x)
    }

    /// Whether `x` satisfies every equation.
    pub fn check(&self, x: &[bool]) -> bool {
        self.rows.iter().all(|row| {
            let lhs = (0..self.vars).filter(|&v| Self::bit(row, v) && x[v]).count() % 2 == 1;
            lhs == Self::bit(row, self.vars)
        })
    }
}
