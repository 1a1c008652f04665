//! Exact feasibility of systems of strict linear inequalities by
//! Fourier-Motzkin elimination, with witness reconstruction.

use num_traits::{Signed, Zero};

use crate::rat::Rat;

/// One strict constraint `coeffs · x + constant > 0`.
#[derive(Debug, Clone)]
pub struct StrictRow {
    pub coeffs: Vec<Rat>,
    pub constant: Rat,
}

impl StrictRow {
    pub fn homogeneous(coeffs: Vec<Rat>) -> Self {
        StrictRow {
            coeffs,
            constant: Rat::zero(),
        }
    }

    fn eval(&self, x: &[Rat]) -> Rat {
        let mut acc = self.constant.clone();
        for (c, v) in self.coeffs.iter().zip(x) {
            if !c.is_zero() {
                acc += c * v;
            }
        }
        acc
    }
}

/// A conjunction of strict inequalities over `nvars` real variables.
#[derive(Debug, Clone)]
pub struct StrictSystem {
    pub nvars: usize,
    pub rows: Vec<StrictRow>,
}

impl StrictSystem {
    pub fn new(nvars: usize, rows: Vec<StrictRow>) -> Self {
        for r in &rows {
            assert_eq!(r.coeffs.len(), nvars);
        }
        StrictSystem { nvars, rows }
    }

    pub fn is_satisfied_by(&self, x: &[Rat]) -> bool {
        self.rows.iter().all(|r| r.eval(x).is_positive())
    }

    /// Exact feasibility over the reals; returns a rational witness.
    ///
    /// Strict rows combine to strict rows, so elimination is exact: the
    /// system is feasible iff every fully eliminated row has a positive
    /// constant term.
    pub fn feasible(&self) -> Option<Vec<Rat>> {
        // levels[k] = system in variables k..nvars (before eliminating k)
        let mut levels: Vec<Vec<StrictRow>> = Vec::with_capacity(self.nvars + 1);
        levels.push(self.rows.clone());
        for k in 0..self.nvars {
            let cur = levels.last().unwrap();
            let mut next: Vec<StrictRow> = Vec::new();
            let mut pos: Vec<&StrictRow> = Vec::new();
            let mut neg: Vec<&StrictRow> = Vec::new();
            for row in cur {
                let c = &row.coeffs[k];
                if c.is_zero() {
                    next.push(row.clone());
                } else if c.is_positive() {
                    pos.push(row);
                } else {
                    neg.push(row);
                }
            }
            for p in &pos {
                for n in &neg {
                    let a = p.coeffs[k].clone(); // > 0
                    let b = -n.coeffs[k].clone(); // > 0
                    let coeffs: Vec<Rat> = (0..self.nvars)
                        .map(|j| &b * &p.coeffs[j] + &a * &n.coeffs[j])
                        .collect();
                    let constant = &b * &p.constant + &a * &n.constant;
                    debug_assert!(coeffs[k].is_zero());
                    next.push(StrictRow { coeffs, constant });
                }
            }
            levels.push(next);
        }
        for row in levels.last().unwrap() {
            debug_assert!(row.coeffs.iter().all(|c| c.is_zero()));
            if !row.constant.is_positive() {
                return None;
            }
        }
        // Back-substitution: at level k every row only involves x_k, x_{k+1}, ...
        let mut x = vec![Rat::zero(); self.nvars];
        for k in (0..self.nvars).rev() {
            let mut lower: Option<Rat> = None;
            let mut upper: Option<Rat> = None;
            for row in &levels[k] {
                let c = &row.coeffs[k];
                if c.is_zero() {
                    continue;
                }
                // c x_k + rest > 0 with rest evaluated at the chosen tail
                let mut rest = row.constant.clone();
                for j in k + 1..self.nvars {
                    if !row.coeffs[j].is_zero() {
                        rest += &row.coeffs[j] * &x[j];
                    }
                }
                let bound = -rest / c.clone();
                if c.is_positive() {
                    lower = Some(match lower {
                        None => bound,
                        Some(l) => l.max(bound),
                    });
                } else {
                    upper = Some(match upper {
                        None => bound,
                        Some(u) => u.min(bound),
                    });
                }
            }
            x[k] = match (lower, upper) {
                (None, None) => Rat::zero(),
                (Some(l), None) => l + Rat::from_integer(1.into()),
                (None, Some(u)) => u - Rat::from_integer(1.into()),
                (Some(l), Some(u)) => {
                    debug_assert!(l < u, "elimination guarantees an open interval");
                    (l + u) / Rat::from_integer(2.into())
                }
            };
        }
        debug_assert!(self.is_satisfied_by(&x));
        Some(x)
    }
}
