//! Shared fixtures and independent oracles for the integration suites.
//!
//! The oracles here deliberately avoid the code paths they check: semigroup
//! membership is re-decided by a breadth-first closure, and strict
//! feasibility by exact vertex enumeration of the dual polytope.

#![allow(dead_code)]

use std::collections::HashSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;

use dtoric::cone::{build_toric, ToricData};
use dtoric::matrix::IntMatrix;
use dtoric::semigroup::Engine;

pub type Rat = BigRational;

pub fn bi(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

pub fn rv(s: &str) -> Vec<Rat> {
    dtoric::rat::parse_rat_vec(s).unwrap()
}

/// Columns (1,1),(1,2),(2,0),(2,1): two facets, odd holes along the first
/// axis.
pub fn plane_curve_matrix() -> IntMatrix {
    IntMatrix::from_i64(2, 4, &[1, 1, 2, 2, 1, 2, 0, 1])
}

/// Six-column scored example in dimension 3 with a facet relation.
pub fn scored_3d_matrix() -> IntMatrix {
    IntMatrix::from_i64(
        3,
        6,
        &[1, 1, 1, 1, 1, 1, 0, 2, 3, 0, 2, 3, 0, 0, 0, 1, 1, 1],
    )
}

/// Smooth four-column example in dimension 3 whose strata need not be face
/// spans.
pub fn smooth_3d_matrix() -> IntMatrix {
    IntMatrix::from_i64(3, 4, &[1, 0, 0, 1, 0, 1, 0, 1, 0, 0, 1, -1])
}

pub fn plane_curve_engine() -> Engine {
    Engine::new(build_toric(plane_curve_matrix()).unwrap()).unwrap()
}

pub fn scored_3d_engine() -> Engine {
    Engine::new(build_toric(scored_3d_matrix()).unwrap()).unwrap()
}

pub fn smooth_3d_engine() -> Engine {
    Engine::new(build_toric(smooth_3d_matrix()).unwrap()).unwrap()
}

/// Find the facet whose primitive support function equals `normal`.
pub fn facet_by_normal(t: &ToricData, normal: &[i64]) -> usize {
    t.facets
        .iter()
        .position(|f| {
            f.normal.len() == normal.len()
                && f.normal
                    .iter()
                    .zip(normal)
                    .all(|(a, &b)| *a == BigInt::from(b))
        })
        .unwrap_or_else(|| panic!("no facet with normal {normal:?}"))
}

/// Independent membership oracle: breadth-first closure from the origin by
/// repeatedly adding matrix columns, restricted to the facet-value box.
pub struct BfsOracle {
    members: HashSet<Vec<BigInt>>,
}

impl BfsOracle {
    pub fn build(t: &ToricData, bound: i64) -> Self {
        let bound = BigInt::from(bound);
        let d = t.dim();
        let inside = |p: &[BigInt]| -> bool {
            t.facets.iter().all(|f| {
                let v = t.facet_value(f.id, p);
                !v.is_negative() && v <= bound
            })
        };
        let mut members = HashSet::new();
        let origin = vec![BigInt::zero(); d];
        let mut queue = vec![origin.clone()];
        members.insert(origin);
        while let Some(p) = queue.pop() {
            for j in 0..t.ncols() {
                let col = t.column(j);
                if col.iter().all(|x| x.is_zero()) {
                    continue;
                }
                let q: Vec<BigInt> = p.iter().zip(&col).map(|(a, b)| a + b).collect();
                if inside(&q) && !members.contains(&q) {
                    members.insert(q.clone());
                    queue.push(q);
                }
            }
        }
        BfsOracle { members }
    }

    pub fn contains(&self, p: &[BigInt]) -> bool {
        self.members.contains(p)
    }
}

/// All lattice points with every facet value in `[0, bound]`, by brute force
/// over a coordinate box large enough to contain the region.
pub fn saturation_points(t: &ToricData, bound: i64) -> Vec<Vec<BigInt>> {
    let d = t.dim();
    // coarse coordinate bound: facet values are linear with unit lattice
    // steps, so +-(bound * d * max|coef|) certainly covers the region
    let mut coef_max: i64 = 1;
    for f in &t.facets {
        for c in &f.normal {
            let a: i64 = c.to_string().parse().unwrap();
            coef_max = coef_max.max(a.abs());
        }
    }
    let reach = bound * (d as i64) * coef_max;
    let mut out = Vec::new();
    let mut point = vec![0i64; d];
    fn rec(
        t: &ToricData,
        bound: i64,
        reach: i64,
        axis: usize,
        point: &mut Vec<i64>,
        out: &mut Vec<Vec<BigInt>>,
    ) {
        if axis == point.len() {
            let p: Vec<BigInt> = point.iter().map(|&x| BigInt::from(x)).collect();
            let ok = t.facets.iter().all(|f| {
                let v = t.facet_value(f.id, &p);
                !v.is_negative() && v <= BigInt::from(bound)
            });
            if ok {
                out.push(p);
            }
            return;
        }
        for x in -reach..=reach {
            point[axis] = x;
            rec(t, bound, reach, axis + 1, point, out);
        }
    }
    rec(t, bound, reach, 0, &mut point, &mut out);
    out.sort();
    out
}

/// Exact rational Gaussian elimination, independent of the library solvers.
/// Returns the unique solution of `m x = rhs` or None (no solution or not
/// unique).
fn unique_solution(m: &[Vec<Rat>], rhs: &[Rat]) -> Option<Vec<Rat>> {
    let rows = m.len();
    if rows == 0 {
        return None;
    }
    let cols = m[0].len();
    let mut a: Vec<Vec<Rat>> = m.to_vec();
    let mut b: Vec<Rat> = rhs.to_vec();
    let mut pivot_of_col = vec![usize::MAX; cols];
    let mut r = 0usize;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let piv = (r..rows).find(|&i| !a[i][c].is_zero());
        let piv = match piv {
            None => continue,
            Some(p) => p,
        };
        a.swap(r, piv);
        b.swap(r, piv);
        let inv = a[r][c].recip();
        for entry in a[r].iter_mut() {
            let v = &*entry * &inv;
            *entry = v;
        }
        let v = &b[r] * &inv;
        b[r] = v;
        for i in 0..rows {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                let pivot_row = a[r].clone();
                for (entry, pv) in a[i].iter_mut().zip(&pivot_row) {
                    let v = &*entry - &f * pv;
                    *entry = v;
                }
                let v = &b[i] - &f * &b[r];
                b[i] = v;
            }
        }
        pivot_of_col[c] = r;
        r += 1;
    }
    // unique iff every column has a pivot
    if pivot_of_col.contains(&usize::MAX) {
        return None;
    }
    if b.iter().skip(r).any(|v| !v.is_zero()) {
        return None;
    }
    let mut x = vec![Rat::zero(); cols];
    for (c, &p) in pivot_of_col.iter().enumerate() {
        x[c] = b[p].clone();
    }
    Some(x)
}

/// Independent strict-feasibility oracle via the dual polytope: the system
/// `C x > 0` is infeasible exactly when some nonnegative, nonzero combination
/// of the rows vanishes. Vertices of `{ y >= 0, sum y = 1, C^T y = 0 }` have
/// supports with a unique subsystem solution, so enumerating all supports is
/// exhaustive at this scale.
pub fn strict_feasible_oracle(rows: &[Vec<Rat>], nvars: usize) -> bool {
    let m = rows.len();
    if m == 0 {
        return true;
    }
    for mask in 1u32..(1 << m) {
        let support: Vec<usize> = (0..m).filter(|i| (mask >> i) & 1 == 1).collect();
        // equations: for each variable v: sum_{i in support} y_i rows[i][v] = 0
        // plus sum y_i = 1
        let mut sys: Vec<Vec<Rat>> = (0..nvars)
            .map(|v| support.iter().map(|&i| rows[i][v].clone()).collect())
            .collect();
        let mut rhs: Vec<Rat> = vec![Rat::zero(); nvars];
        sys.push(vec![Rat::one(); support.len()]);
        rhs.push(Rat::one());
        let (sys, rhs) = (sys, rhs);
        if let Some(y) = unique_solution(&sys, &rhs) {
            if y.iter().all(|v| !v.is_negative()) {
                return false; // dual certificate found
            }
        }
    }
    true
}

/// Random matrices passing the build preconditions.
pub fn random_toric<R: Rng>(rng: &mut R, d: usize, n: usize) -> ToricData {
    loop {
        let entries: Vec<i64> = (0..d * n).map(|_| rng.gen_range(0..=3)).collect();
        if let Ok(t) = build_toric(IntMatrix::from_i64(d, n, &entries)) {
            return t;
        }
    }
}
