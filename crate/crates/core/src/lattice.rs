//! Sublattices of Z^d: membership, saturation, indices, cosets and quotients.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::matrix::{Hnf, IntMatrix, Snf};
use crate::rat::{cmp_int_vec, rat_floor, Rat};

/// A sublattice of Z^d given by a basis of independent integer row vectors.
///
/// The basis kept internally is the canonical Hermite basis of the row span,
/// so two constructions of the same lattice compare equal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lattice {
    ambient: usize,
    basis: Vec<Vec<BigInt>>,
}

impl Lattice {
    pub fn empty(ambient: usize) -> Self {
        Lattice {
            ambient,
            basis: Vec::new(),
        }
    }

    pub fn standard(ambient: usize) -> Self {
        let rows = (0..ambient)
            .map(|i| {
                let mut e = vec![BigInt::zero(); ambient];
                e[i] = BigInt::one();
                e
            })
            .collect();
        Lattice {
            ambient,
            basis: rows,
        }
    }

    /// Build from an arbitrary generating set; dependent generators are
    /// reduced away via Hermite elimination.
    pub fn from_generators(ambient: usize, gens: Vec<Vec<BigInt>>) -> Self {
        if gens.is_empty() {
            return Lattice::empty(ambient);
        }
        let m = IntMatrix::from_rows(ambient, gens);
        let Hnf { h, .. } = m.hnf();
        let basis: Vec<Vec<BigInt>> = (0..h.rows())
            .filter(|&i| !h.row(i).iter().all(|x| x.is_zero()))
            .map(|i| h.row_vec(i))
            .collect();
        Lattice { ambient, basis }
    }

    /// Build from rows that are required to be independent.
    pub fn from_rows(ambient: usize, rows: Vec<Vec<BigInt>>) -> Result<Self> {
        let n = rows.len();
        let lat = Lattice::from_generators(ambient, rows);
        if lat.rank() != n {
            return Err(Error::InvalidInput(
                "lattice basis vectors are linearly dependent".into(),
            ));
        }
        Ok(lat)
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<BigInt>] {
        &self.basis
    }

    pub fn basis_matrix(&self) -> IntMatrix {
        IntMatrix::from_rows(self.ambient, self.basis.clone())
    }

    /// Membership of an integer vector.
    pub fn contains(&self, v: &[BigInt]) -> bool {
        assert_eq!(v.len(), self.ambient);
        if v.iter().all(|x| x.is_zero()) {
            return true;
        }
        if self.basis.is_empty() {
            return false;
        }
        // Solve y * B = v, i.e. B^T y = v over the integers.
        self.basis_matrix().transpose().solve_integer(v).is_some()
    }

    /// Coordinates of `v` in this basis over the integers, when they exist.
    pub fn coordinates(&self, v: &[BigInt]) -> Option<Vec<BigInt>> {
        if self.basis.is_empty() {
            return if v.iter().all(|x| x.is_zero()) {
                Some(Vec::new())
            } else {
                None
            };
        }
        self.basis_matrix()
            .transpose()
            .solve_integer(v)
            .map(|(x, _)| x)
    }

    /// The saturation `QL ∩ Z^d`, a lattice of the same rank.
    pub fn saturate(&self) -> Lattice {
        if self.basis.is_empty() {
            return Lattice::empty(self.ambient);
        }
        // Double integer kernel: the kernel of the kernel matrix recovers the
        // saturated row span.
        let b = self.basis_matrix();
        let k = b.integer_kernel();
        if k.is_empty() {
            return Lattice::standard(self.ambient);
        }
        let kmat = IntMatrix::from_rows(self.ambient, k);
        let sat = kmat.integer_kernel();
        Lattice::from_generators(self.ambient, sat)
    }

    /// Basis of the integer kernel `{ x : B x = 0 }` of the basis matrix;
    /// the rows span the rational orthogonal complement of the lattice.
    pub fn orthogonal_complement(&self) -> Vec<Vec<BigInt>> {
        if self.basis.is_empty() {
            return Lattice::standard(self.ambient).basis.clone();
        }
        self.basis_matrix().integer_kernel()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LatticeIndex {
    Finite(BigUint),
    Infinite,
}

impl LatticeIndex {
    pub fn is_one(&self) -> bool {
        matches!(self, LatticeIndex::Finite(n) if n.is_one())
    }

    pub fn finite(&self) -> Option<&BigUint> {
        match self {
            LatticeIndex::Finite(n) => Some(n),
            LatticeIndex::Infinite => None,
        }
    }
}

/// Coordinates of every `sub` basis vector in the `sup` basis.
/// Errors when `sub` is not contained in `sup`.
fn sub_in_sup_coords(sub: &Lattice, sup: &Lattice) -> Result<IntMatrix> {
    let mut bad = Vec::new();
    let mut rows = Vec::new();
    for v in sub.basis() {
        match sup.coordinates(v) {
            Some(c) => rows.push(c),
            None => bad.push(crate::rat::format_int_vec(v)),
        }
    }
    if !bad.is_empty() {
        return Err(Error::NotSublattice(bad));
    }
    Ok(IntMatrix::from_rows(sup.rank(), rows))
}

/// `[sup : sub]`, infinite when the ranks differ.
pub fn lattice_index(sub: &Lattice, sup: &Lattice) -> Result<LatticeIndex> {
    let coords = sub_in_sup_coords(sub, sup)?;
    if sub.rank() < sup.rank() {
        return Ok(LatticeIndex::Infinite);
    }
    let d = coords.det().abs();
    Ok(LatticeIndex::Finite(d.to_biguint().expect("abs is nonneg")))
}

/// Canonical coset representatives of `sup / sub` for a finite index pair.
///
/// Representatives are reduced to the fundamental domain of the Smith normal
/// form of `sub` inside `sup`: in adapted coordinates every entry lies in
/// `[0, d_i)`.
pub fn coset_reps(sub: &Lattice, sup: &Lattice) -> Result<Vec<Vec<BigInt>>> {
    let coords = sub_in_sup_coords(sub, sup)?;
    if sub.rank() < sup.rank() {
        return Err(Error::InfiniteIndex);
    }
    let r = sup.rank();
    if r == 0 {
        return Ok(vec![vec![BigInt::zero(); sub.ambient_dim()]]);
    }
    let Snf { s, v, .. } = coords.snf();
    let v_inv = invert_unimodular(&v);
    let diag: Vec<BigInt> = (0..r).map(|i| s.get(i, i).clone()).collect();
    let total: BigUint = diag
        .iter()
        .fold(BigUint::one(), |acc, d| acc * d.to_biguint().unwrap());
    let cap = total.to_usize().ok_or_else(|| {
        Error::LimitExceeded("coset index too large to enumerate".into())
    })?;
    let sup_mat = sup.basis_matrix();
    let mut reps = Vec::with_capacity(cap);
    let mut z = vec![BigInt::zero(); r];
    loop {
        // y = z * V^{-1}; representative = y * sup_basis
        let y = v_inv.vec_mul(&z);
        reps.push(sup_mat.vec_mul(&y));
        // increment the mixed-radix counter
        let mut carry = true;
        for i in 0..r {
            if !carry {
                break;
            }
            z[i] += 1;
            if z[i] == diag[i] {
                z[i] = BigInt::zero();
            } else {
                carry = false;
            }
        }
        if carry {
            break;
        }
    }
    reps.sort_by(|a, b| cmp_int_vec(a, b));
    Ok(reps)
}

/// Exact inverse of a unimodular integer matrix.
pub fn invert_unimodular(m: &IntMatrix) -> IntMatrix {
    let inv = m
        .rational_inverse()
        .expect("unimodular matrix is invertible");
    let n = m.rows();
    let mut out = IntMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            debug_assert!(inv[i][j].denom().is_one());
            *out.get_mut(i, j) = inv[i][j].numer().clone();
        }
    }
    out
}

/// Cached data for canonical reduction of points modulo a lattice.
///
/// If `U B V = D` is the Smith form of the basis, the map `x -> x V` carries
/// the lattice onto `⊕ d_i Z e_i`, so reducing each adapted coordinate into
/// `[0, d_i)` picks one canonical point per coset.
#[derive(Debug, Clone)]
pub struct CosetReducer {
    rank: usize,
    diag: Vec<BigInt>,
    v: IntMatrix,
    v_inv: IntMatrix,
}

impl CosetReducer {
    pub fn new(lattice: &Lattice) -> Self {
        let d = lattice.ambient_dim();
        let r = lattice.rank();
        if r == 0 {
            return CosetReducer {
                rank: 0,
                diag: Vec::new(),
                v: IntMatrix::identity(d),
                v_inv: IntMatrix::identity(d),
            };
        }
        let Snf { s, v, .. } = lattice.basis_matrix().snf();
        let diag = (0..r).map(|i| s.get(i, i).clone()).collect();
        let v_inv = invert_unimodular(&v);
        CosetReducer {
            rank: r,
            diag,
            v,
            v_inv,
        }
    }

    /// Canonical representative of `p + L` for a rational point `p`.
    pub fn reduce(&self, p: &[Rat]) -> Vec<Rat> {
        if self.rank == 0 {
            return p.to_vec();
        }
        let mut adapted = self.v.vec_mul_rat(p);
        for i in 0..self.rank {
            let d = &self.diag[i];
            debug_assert!(d.is_positive());
            let q = rat_floor(&(&adapted[i] / Rat::from_integer(d.clone())));
            let val = &adapted[i] - Rat::from_integer(q * d);
            adapted[i] = val;
        }
        self.v_inv.vec_mul_rat(&adapted)
    }

    /// Canonical representative of `p + L` for an integer point.
    pub fn reduce_int(&self, p: &[BigInt]) -> Vec<BigInt> {
        if self.rank == 0 {
            return p.to_vec();
        }
        let mut adapted = self.v.vec_mul(p);
        for i in 0..self.rank {
            let d = &self.diag[i];
            let q = adapted[i].div_floor(d);
            let val = &adapted[i] - q * d;
            adapted[i] = val;
        }
        self.v_inv.vec_mul(&adapted)
    }
}

/// Canonical representative of `p` modulo the rational span of the given
/// basis rows: the unique point of `p + span` whose pivot coordinates (in the
/// Hermite basis of the span) vanish. Two points reduce equally exactly when
/// they differ by a span vector.
pub fn reduce_mod_span(p: &[Rat], span_rows: &[Vec<BigInt>]) -> Vec<Rat> {
    if span_rows.is_empty() {
        return p.to_vec();
    }
    let ambient = p.len();
    let lat = Lattice::from_generators(ambient, span_rows.to_vec());
    let basis = lat.basis();
    if basis.is_empty() {
        return p.to_vec();
    }
    let b = lat.basis_matrix();
    let Hnf { h, pivots, .. } = b.hnf();
    let r = pivots.len();
    debug_assert_eq!(r, basis.len());
    // Solve y * B_piv = p_piv for the pivot coordinates.
    let mut bp = IntMatrix::zeros(r, r);
    for i in 0..r {
        for (jj, &c) in pivots.iter().enumerate() {
            *bp.get_mut(i, jj) = h.get(i, c).clone();
        }
    }
    let p_piv: Vec<Rat> = pivots.iter().map(|&c| p[c].clone()).collect();
    let y = bp
        .transpose()
        .solve_rational(&p_piv)
        .expect("pivot block is invertible");
    let mut out = p.to_vec();
    for i in 0..r {
        if y[i].is_zero() {
            continue;
        }
        for j in 0..ambient {
            let hij = h.get(i, j);
            if !hij.is_zero() {
                let val = &out[j] - &y[i] * crate::rat::rat_from_int(hij);
                out[j] = val;
            }
        }
    }
    out
}

/// The quotient of `sup` by `sub` presented by invariant factors.
#[derive(Debug, Clone)]
pub struct QuotientGroup {
    pub free_rank: usize,
    /// Invariant factors >= 2 forming a divisibility chain.
    pub torsion_invariants: Vec<BigUint>,
    sup: Lattice,
    diag: Vec<BigInt>,
    v_inv: IntMatrix,
    rank_sub: usize,
}

impl QuotientGroup {
    pub fn new(sub: &Lattice, sup: &Lattice) -> Result<Self> {
        let coords = sub_in_sup_coords(sub, sup)?;
        let r_sup = sup.rank();
        let r_sub = sub.rank();
        if r_sup == 0 {
            return Ok(QuotientGroup {
                free_rank: 0,
                torsion_invariants: Vec::new(),
                sup: sup.clone(),
                diag: Vec::new(),
                v_inv: IntMatrix::identity(0),
                rank_sub: 0,
            });
        }
        let Snf { s, v, .. } = coords.snf();
        let v_inv = invert_unimodular(&v);
        let diag: Vec<BigInt> = (0..r_sub.min(r_sup)).map(|i| s.get(i, i).clone()).collect();
        let torsion = diag
            .iter()
            .filter(|d| **d >= BigInt::from(2))
            .map(|d| d.to_biguint().unwrap())
            .collect();
        Ok(QuotientGroup {
            free_rank: r_sup - r_sub,
            torsion_invariants: torsion,
            sup: sup.clone(),
            diag,
            v_inv: v_inv.transpose(), // keep transposed for row application
            rank_sub: r_sub,
        })
    }

    /// Image of an element of `sup`: free coordinates followed by torsion
    /// coordinates reduced modulo the invariant factors.
    ///
    /// Errors when `v` is not in `sup`.
    pub fn project(&self, v: &[BigInt]) -> Result<(Vec<BigInt>, Vec<BigInt>)> {
        let y = self
            .sup
            .coordinates(v)
            .ok_or_else(|| Error::NotSublattice(vec![crate::rat::format_int_vec(v)]))?;
        if self.sup.rank() == 0 {
            return Ok((Vec::new(), Vec::new()));
        }
        // adapted coordinates z = y * V (V^{-T} stored; apply accordingly)
        let z = self.v_inv.transpose().vec_mul(&y);
        let mut free = Vec::new();
        let mut torsion = Vec::new();
        for (i, zi) in z.iter().enumerate() {
            if i < self.rank_sub {
                let d = &self.diag[i];
                if *d >= BigInt::from(2) {
                    torsion.push(zi.mod_floor(d));
                }
                // invariant factor 1 contributes nothing
            } else {
                free.push(zi.clone());
            }
        }
        Ok((free, torsion))
    }
}

/// True when the columns of `a` generate all of Z^d.
pub fn check_full_lattice(a: &IntMatrix) -> bool {
    let d = a.rows();
    if a.cols() < d {
        return false;
    }
    let Snf { s, .. } = a.snf();
    (0..d).all(|i| s.get(i, i).is_one())
}
