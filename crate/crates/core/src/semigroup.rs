//! Exact membership in the column semigroup and its face-translates,
//! per-facet numerical semigroups, window scans, holes and scoredness.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::cone::ToricData;
use crate::error::{Error, Result};
use crate::lattice::reduce_mod_span;
use crate::matrix::IntMatrix;
use crate::rat::{cmp_int_vec, int_vec_sub, int_vec_to_rat, rat_vec_to_int, Rat};

/// A numerical semigroup given by generators with gcd 1.
#[derive(Debug, Clone)]
pub struct NumericalSemigroup {
    pub generators: Vec<BigInt>,
    pub gaps: Vec<BigInt>,
    /// Largest gap, or -1 when the semigroup has no gaps.
    pub frobenius: BigInt,
    table: Vec<bool>,
}

impl NumericalSemigroup {
    pub fn from_generators<I: IntoIterator<Item = BigInt>>(values: I) -> Result<Self> {
        let mut gens: Vec<BigInt> = values
            .into_iter()
            .filter(|v| !v.is_zero())
            .collect();
        gens.sort();
        gens.dedup();
        if gens.iter().any(|g| g.is_negative()) {
            return Err(Error::InvalidInput(
                "numerical semigroup generators must be nonnegative".into(),
            ));
        }
        let mut g = BigInt::zero();
        for v in &gens {
            g = num_integer::Integer::gcd(&g, v);
        }
        if !g.is_one() {
            return Err(Error::InvalidInput(
                "numerical semigroup generators must have gcd 1".into(),
            ));
        }
        let small: Vec<usize> = gens
            .iter()
            .map(|v| {
                v.to_usize()
                    .ok_or_else(|| Error::LimitExceeded("semigroup generator too large".into()))
            })
            .collect::<Result<_>>()?;
        let a_min = *small.iter().min().expect("gcd 1 needs a generator");
        // Sieve until a run of `a_min` consecutive members appears; everything
        // past the run is then reachable by adding a_min.
        let mut bound = (small.iter().max().unwrap() * a_min).max(a_min) + 1;
        let table = loop {
            let mut t = vec![false; bound + 1];
            t[0] = true;
            for &g in &small {
                for i in g..=bound {
                    if t[i - g] {
                        t[i] = true;
                    }
                }
            }
            let mut run = 0usize;
            let mut ok = false;
            for &reached in t.iter() {
                if reached {
                    run += 1;
                    if run >= a_min {
                        ok = true;
                        break;
                    }
                } else {
                    run = 0;
                }
            }
            if ok {
                break t;
            }
            bound *= 2;
            if bound > 100_000_000 {
                return Err(Error::LimitExceeded("semigroup sieve bound".into()));
            }
        };
        let gaps: Vec<BigInt> = table
            .iter()
            .enumerate()
            .filter(|(_, &r)| !r)
            .map(|(i, _)| BigInt::from(i))
            .collect();
        let frobenius = gaps.last().cloned().unwrap_or_else(|| BigInt::from(-1));
        Ok(NumericalSemigroup {
            generators: gens,
            gaps,
            frobenius,
            table,
        })
    }

    pub fn contains(&self, m: &BigInt) -> bool {
        if m.is_negative() {
            return false;
        }
        if *m > self.frobenius {
            return true;
        }
        match m.to_usize() {
            Some(i) if i < self.table.len() => self.table[i],
            _ => *m > self.frobenius,
        }
    }
}

/// Finite scan region: lattice points with every facet value in `[0, bound]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Window {
    pub bound: BigInt,
}

impl Window {
    /// Bounds below the largest column facet value are raised to it so the
    /// region always contains every column.
    pub fn with_bound(toric: &ToricData, bound: BigInt) -> Self {
        let min = toric.max_column_facet_value().clone();
        Window {
            bound: bound.max(min),
        }
    }

    pub fn default_for(toric: &ToricData) -> Self {
        let m = toric.max_column_facet_value().clone() * BigInt::from(4);
        Window {
            bound: m.max(BigInt::from(4)),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ObstructionKind {
    NegativeValue,
    GapValue,
}

/// Why a membership query failed, when a single facet already rules it out.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Obstruction {
    pub facet: usize,
    pub value: BigInt,
    pub kind: ObstructionKind,
}

#[derive(Debug, Clone)]
pub struct MembershipCertificate {
    pub verdict: bool,
    /// Nonnegative coefficients over all columns with `A u (+ A_tau c) = b`.
    pub witness: Option<Vec<BigInt>>,
    /// Integer coefficients over the face columns for the mod-face variant.
    pub face_witness: Option<Vec<BigInt>>,
    pub obstruction: Option<Obstruction>,
}

/// One inferred arithmetic component of the hole set.
#[derive(Debug, Clone)]
pub struct HoleComponent {
    pub base: Vec<BigInt>,
    pub face: usize,
    pub window_bound: BigInt,
    /// Lattice basis directions confirmed by a translate pair inside the window.
    pub certified_periods: Vec<Vec<BigInt>>,
    pub members_in_window: Vec<Vec<BigInt>>,
}

#[derive(Debug, Clone)]
pub enum Scoredness {
    /// Certified refutation: the witness satisfies every facet-value
    /// condition yet is not in the semigroup.
    NotScored { witness: Vec<BigInt> },
    ScoredOnWindow { bound: BigInt },
}

#[derive(Debug, Clone)]
pub enum S2Verdict {
    FailsS2 { witness: HoleComponent },
    S2OnWindow { bound: BigInt },
}

/// A piece of an affine variety description: either a facet-value slab or a
/// translate of a rational subspace.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum VarietyComponent {
    Slab { facet: usize, value: BigInt },
    Translate {
        base: Vec<Rat>,
        directions: Vec<Vec<BigInt>>,
        dim: usize,
    },
}

impl VarietyComponent {
    pub fn dim(&self, ambient: usize) -> usize {
        match self {
            VarietyComponent::Slab { .. } => ambient - 1,
            VarietyComponent::Translate { dim, .. } => *dim,
        }
    }

    /// Stable serialization used for sorting and window keys.
    pub fn key(&self) -> String {
        match self {
            VarietyComponent::Slab { facet, value } => format!("slab:{facet}={value}"),
            VarietyComponent::Translate {
                base, directions, ..
            } => {
                let dirs: Vec<String> = directions
                    .iter()
                    .map(|d| crate::rat::format_int_vec(d))
                    .collect();
                format!(
                    "translate:{}+span{{{}}}",
                    crate::rat::format_rat_vec(base),
                    dirs.join(",")
                )
            }
        }
    }

    /// Whether a rational point satisfies the component's defining equations.
    pub fn contains_point(&self, toric: &ToricData, p: &[Rat]) -> bool {
        match self {
            VarietyComponent::Slab { facet, value } => {
                toric.facet_value_rat(*facet, p) == crate::rat::rat_from_int(value)
            }
            VarietyComponent::Translate { base, directions, .. } => {
                let diff: Vec<Rat> = p.iter().zip(base).map(|(a, b)| a - b).collect();
                reduce_mod_span(&diff, directions)
                    .iter()
                    .all(|x| x.is_zero())
            }
        }
    }
}

struct WindowScan {
    points: Vec<Vec<BigInt>>,
    members: HashSet<Vec<BigInt>>,
}

type HoleAnalysis = (Vec<Vec<BigInt>>, Vec<HoleComponent>);

/// Membership engine over an immutable toric context, with memoized verdicts.
pub struct Engine {
    toric: Arc<ToricData>,
    facet_semigroups: Vec<NumericalSemigroup>,
    /// Verdicts keyed by (face id, canonical residue mod the face lattice).
    mod_face_cache: Mutex<HashMap<(usize, Vec<BigInt>), bool>>,
    scan_cache: Mutex<HashMap<BigInt, Arc<WindowScan>>>,
    holes_cache: Mutex<HashMap<BigInt, Arc<HoleAnalysis>>>,
}

impl Engine {
    pub fn new(toric: ToricData) -> Result<Self> {
        let toric = Arc::new(toric);
        let mut facet_semigroups = Vec::with_capacity(toric.facets.len());
        for f in &toric.facets {
            let values = (0..toric.ncols()).map(|j| toric.facet_value(f.id, &toric.column(j)));
            facet_semigroups.push(NumericalSemigroup::from_generators(values)?);
        }
        Ok(Engine {
            toric,
            facet_semigroups,
            mod_face_cache: Mutex::new(HashMap::new()),
            scan_cache: Mutex::new(HashMap::new()),
            holes_cache: Mutex::new(HashMap::new()),
        })
    }

    pub fn toric(&self) -> &ToricData {
        &self.toric
    }

    pub fn toric_arc(&self) -> Arc<ToricData> {
        Arc::clone(&self.toric)
    }

    pub fn facet_semigroup(&self, facet_id: usize) -> &NumericalSemigroup {
        &self.facet_semigroups[facet_id]
    }

    /// `b` in the column semigroup, with witness or obstruction.
    pub fn member(&self, b: &[BigInt]) -> MembershipCertificate {
        self.member_mod_face(b, self.toric.minimal_face().id)
    }

    pub fn member_verdict(&self, b: &[BigInt]) -> bool {
        self.member_mod_face_verdict(b, self.toric.minimal_face().id)
    }

    /// Memoized verdict for `b` in (semigroup + face lattice).
    pub fn member_mod_face_verdict(&self, b: &[BigInt], face_id: usize) -> bool {
        let reduced = self.toric.face_lattices(face_id).reducer.reduce_int(b);
        {
            let cache = self.mod_face_cache.lock().unwrap();
            if let Some(&v) = cache.get(&(face_id, reduced.clone())) {
                return v;
            }
        }
        let verdict = self.search(&reduced, face_id).is_some();
        self.mod_face_cache
            .lock()
            .unwrap()
            .insert((face_id, reduced), verdict);
        verdict
    }

    /// `b` in (semigroup + Z(A ∩ tau)), with witnesses.
    pub fn member_mod_face(&self, b: &[BigInt], face_id: usize) -> MembershipCertificate {
        // Quick facet obstructions for the facets containing the face.
        let face = &self.toric.faces[face_id];
        for &fid in &face.containing_facets {
            let v = self.toric.facet_value(fid, b);
            if v.is_negative() {
                return MembershipCertificate {
                    verdict: false,
                    witness: None,
                    face_witness: None,
                    obstruction: Some(Obstruction {
                        facet: fid,
                        value: v,
                        kind: ObstructionKind::NegativeValue,
                    }),
                };
            }
            if !self.facet_semigroups[fid].contains(&v) {
                return MembershipCertificate {
                    verdict: false,
                    witness: None,
                    face_witness: None,
                    obstruction: Some(Obstruction {
                        facet: fid,
                        value: v,
                        kind: ObstructionKind::GapValue,
                    }),
                };
            }
        }
        match self.search(b, face_id) {
            Some((u, c)) => MembershipCertificate {
                verdict: true,
                witness: Some(u),
                face_witness: Some(c),
                obstruction: None,
            },
            None => MembershipCertificate {
                verdict: false,
                witness: None,
                face_witness: None,
                obstruction: None,
            },
        }
    }

    /// Depth-first search for `u >= 0` over the non-face columns with
    /// `b - A u` in the face lattice. Returns coefficients over all columns
    /// and integer coefficients over the face columns.
    fn search(&self, b: &[BigInt], face_id: usize) -> Option<(Vec<BigInt>, Vec<BigInt>)> {
        let t = &*self.toric;
        let face = &t.faces[face_id];
        let n = t.ncols();
        let facet_ids: Vec<usize> = face.containing_facets.iter().cloned().collect();
        // Early negativity reject.
        for &fid in &facet_ids {
            if t.facet_value(fid, b).is_negative() {
                return None;
            }
        }
        let mut cols: Vec<usize> = (0..n)
            .filter(|j| !face.columns.contains(j))
            .filter(|&j| !t.column(j).iter().all(|x| x.is_zero()))
            .collect();
        // Enumerate heaviest columns first; the facet-value equalities then
        // prune hardest at the top of the tree.
        let weight = |j: usize| -> BigInt {
            facet_ids
                .iter()
                .map(|&fid| t.facet_value(fid, &t.column(j)))
                .sum()
        };
        cols.sort_by(|&a, &bcol| weight(bcol).cmp(&weight(a)).then(a.cmp(&bcol)));
        // Per-suffix: does any remaining column have a positive value on the facet?
        let mut suffix_positive: Vec<Vec<bool>> =
            vec![vec![false; facet_ids.len()]; cols.len() + 1];
        for idx in (0..cols.len()).rev() {
            for (k, &fid) in facet_ids.iter().enumerate() {
                suffix_positive[idx][k] = suffix_positive[idx + 1][k]
                    || t.facet_value(fid, &t.column(cols[idx])).is_positive();
            }
        }
        let face_cols: Vec<usize> = face.columns.iter().cloned().collect();
        let face_matrix = IntMatrix::from_rows(
            t.dim(),
            face_cols.iter().map(|&j| t.column(j)).collect(),
        )
        .transpose();
        let mut u = vec![BigInt::zero(); cols.len()];
        let mut residual = b.to_vec();
        let found = self.search_rec(
            &facet_ids,
            &cols,
            &face_matrix,
            0,
            &mut u,
            &mut residual,
            &suffix_positive,
        );
        found.map(|c| {
            let mut full = vec![BigInt::zero(); n];
            for (idx, &j) in cols.iter().enumerate() {
                full[j] = u[idx].clone();
            }
            (full, c)
        })
    }

    #[allow(clippy::too_many_arguments)]
    fn search_rec(
        &self,
        facet_ids: &[usize],
        cols: &[usize],
        face_matrix: &IntMatrix,
        idx: usize,
        u: &mut Vec<BigInt>,
        residual: &mut Vec<BigInt>,
        suffix_positive: &[Vec<bool>],
    ) -> Option<Vec<BigInt>> {
        let t = &*self.toric;
        for (k, &fid) in facet_ids.iter().enumerate() {
            let v = t.facet_value(fid, residual);
            if v.is_negative() {
                return None;
            }
            if v.is_positive() && !suffix_positive[idx][k] {
                return None;
            }
        }
        if idx == cols.len() {
            // Residual must lie in the face lattice; solve over the columns.
            return face_matrix.solve_integer(residual).map(|(c, _)| c);
        }
        let col = t.column(cols[idx]);
        // Bound from the facet equalities.
        let mut bound: Option<BigInt> = None;
        for &fid in facet_ids {
            let cv = t.facet_value(fid, &col);
            if cv.is_positive() {
                let q = t.facet_value(fid, residual) / &cv;
                bound = Some(match bound {
                    None => q,
                    Some(b) => b.min(q),
                });
            }
        }
        let bound = bound.expect("every enumeration column is positive on some facet");
        let mut count = BigInt::zero();
        loop {
            u[idx] = count.clone();
            if let Some(c) = self.search_rec(
                facet_ids,
                cols,
                face_matrix,
                idx + 1,
                u,
                residual,
                suffix_positive,
            ) {
                // restore the residual; u[idx] keeps the successful count
                for (i, ci) in col.iter().enumerate() {
                    residual[i] += ci * &count;
                }
                return Some(c);
            }
            if count == bound {
                break;
            }
            for (i, ci) in col.iter().enumerate() {
                residual[i] -= ci;
            }
            count += 1;
        }
        // restore
        for (i, ci) in col.iter().enumerate() {
            residual[i] += ci * &count;
        }
        u[idx] = BigInt::zero();
        None
    }

    /// Facet partition of the integral support values at `alpha`: values in
    /// the facet's value semigroup vs. integers outside it.
    pub fn fplus_fminus(&self, alpha: &[Rat]) -> (BTreeSet<usize>, BTreeSet<usize>) {
        let mut plus = BTreeSet::new();
        let mut minus = BTreeSet::new();
        for f in &self.toric.facets {
            let v = self.toric.facet_value_rat(f.id, alpha);
            if !v.denom().is_one() {
                continue;
            }
            let m = v.numer().clone();
            if self.facet_semigroups[f.id].contains(&m) {
                plus.insert(f.id);
            } else {
                minus.insert(f.id);
            }
        }
        (plus, minus)
    }

    fn scan(&self, w: &Window) -> Arc<WindowScan> {
        {
            let cache = self.scan_cache.lock().unwrap();
            if let Some(s) = cache.get(&w.bound) {
                return Arc::clone(s);
            }
        }
        let t = &*self.toric;
        let pts_rat = t.points_with_value_bounds(&BigInt::zero(), &w.bound, None);
        let points: Vec<Vec<BigInt>> = pts_rat
            .iter()
            .map(|p| rat_vec_to_int(p).expect("window points are integral"))
            .collect();
        // Closure from the origin by repeatedly adding columns, staying inside
        // the window; facet values only grow, so this reaches exactly the
        // semigroup members of the window.
        let mut members: HashSet<Vec<BigInt>> = HashSet::new();
        let origin = vec![BigInt::zero(); t.dim()];
        let mut queue = vec![origin.clone()];
        members.insert(origin);
        let cols: Vec<Vec<BigInt>> = (0..t.ncols())
            .map(|j| t.column(j))
            .filter(|c| !c.iter().all(|x| x.is_zero()))
            .collect();
        while let Some(p) = queue.pop() {
            for c in &cols {
                let q: Vec<BigInt> = p.iter().zip(c).map(|(a, b)| a + b).collect();
                let inside = t
                    .facets
                    .iter()
                    .all(|f| t.facet_value(f.id, &q) <= w.bound);
                if inside && !members.contains(&q) {
                    members.insert(q.clone());
                    queue.push(q);
                }
            }
        }
        let scan = Arc::new(WindowScan { points, members });
        self.scan_cache
            .lock()
            .unwrap()
            .insert(w.bound.clone(), Arc::clone(&scan));
        scan
    }

    /// Saturation points of the window, sorted.
    pub fn window_points(&self, w: &Window) -> Vec<Vec<BigInt>> {
        self.scan(w).points.clone()
    }

    /// Window points of the semigroup itself.
    pub fn window_members(&self, w: &Window) -> Vec<Vec<BigInt>> {
        let scan = self.scan(w);
        let mut v: Vec<Vec<BigInt>> = scan.members.iter().cloned().collect();
        v.sort_by(|a, b| cmp_int_vec(a, b));
        v
    }

    /// `{ b in NA ∩ window : b + a not in NA }`, exact within the window.
    pub fn omega(&self, a: &[BigInt], w: &Window) -> Vec<Vec<BigInt>> {
        let scan = self.scan(w);
        let mut out = Vec::new();
        for b in &scan.points {
            if !scan.members.contains(b) {
                continue;
            }
            let shifted: Vec<BigInt> = b.iter().zip(a).map(|(x, y)| x + y).collect();
            let member = if self.in_window(&shifted, w) {
                scan.members.contains(&shifted)
            } else {
                self.member_verdict(&shifted)
            };
            if !member {
                out.push(b.clone());
            }
        }
        out
    }

    fn in_window(&self, p: &[BigInt], w: &Window) -> bool {
        self.toric.facets.iter().all(|f| {
            let v = self.toric.facet_value(f.id, p);
            !v.is_negative() && v <= w.bound
        })
    }

    /// Window holes (saturation points outside the semigroup) and their
    /// inferred arithmetic components.
    pub fn holes(&self, w: &Window) -> (Vec<Vec<BigInt>>, Vec<HoleComponent>) {
        {
            let cache = self.holes_cache.lock().unwrap();
            if let Some(h) = cache.get(&w.bound) {
                return (h.0.clone(), h.1.clone());
            }
        }
        let result = self.holes_uncached(w);
        self.holes_cache
            .lock()
            .unwrap()
            .insert(w.bound.clone(), Arc::new(result.clone()));
        result
    }

    fn holes_uncached(&self, w: &Window) -> (Vec<Vec<BigInt>>, Vec<HoleComponent>) {
        let scan = self.scan(w);
        let holes: Vec<Vec<BigInt>> = scan
            .points
            .iter()
            .filter(|p| !scan.members.contains(*p))
            .cloned()
            .collect();

        // Faces from largest to smallest; ties by id.
        let mut order: Vec<usize> = self.toric.faces.iter().map(|f| f.id).collect();
        order.sort_by_key(|&id| (std::cmp::Reverse(self.toric.faces[id].dim), id));
        let mut assigned: HashSet<Vec<BigInt>> = HashSet::new();
        let mut components = Vec::new();
        for face_id in order {
            if assigned.len() == holes.len() {
                break;
            }
            let fl = self.toric.face_lattices(face_id);
            // Bucket all window points by residue modulo the face lattice.
            let mut buckets: HashMap<Vec<BigInt>, (Vec<Vec<BigInt>>, bool)> = HashMap::new();
            for p in &scan.points {
                let r = fl.reducer.reduce_int(p);
                let entry = buckets.entry(r).or_insert_with(|| (Vec::new(), true));
                entry.0.push(p.clone());
                if scan.members.contains(p) {
                    entry.1 = false;
                }
            }
            for h in &holes {
                if assigned.contains(h) {
                    continue;
                }
                let r = fl.reducer.reduce_int(h);
                let (pts, all_holes) = &buckets[&r];
                if !*all_holes {
                    continue;
                }
                let mut members = pts.clone();
                members.sort_by(|a, b| cmp_int_vec(a, b));
                for p in &members {
                    assigned.insert(p.clone());
                }
                let member_set: HashSet<&Vec<BigInt>> = members.iter().collect();
                let mut certified = Vec::new();
                for g in fl.lattice.basis() {
                    let confirmed = members.iter().any(|p| {
                        let q: Vec<BigInt> = p.iter().zip(g).map(|(a, b)| a + b).collect();
                        member_set.contains(&q)
                    });
                    if confirmed {
                        certified.push(g.clone());
                    }
                }
                components.push(HoleComponent {
                    base: members[0].clone(),
                    face: face_id,
                    window_bound: w.bound.clone(),
                    certified_periods: certified,
                    members_in_window: members,
                });
            }
        }
        components.sort_by(|a, b| cmp_int_vec(&a.base, &b.base));
        (holes, components)
    }

    /// Scoredness on the window: a certified witness refutes, otherwise the
    /// verdict is limited to the scanned region.
    pub fn is_scored(&self, w: &Window) -> Scoredness {
        let scan = self.scan(w);
        for p in &scan.points {
            if scan.members.contains(p) {
                continue;
            }
            let all_in = self.toric.facets.iter().all(|f| {
                let v = self.toric.facet_value(f.id, p);
                self.facet_semigroups[f.id].contains(&v)
            });
            if all_in {
                return Scoredness::NotScored { witness: p.clone() };
            }
        }
        Scoredness::ScoredOnWindow {
            bound: w.bound.clone(),
        }
    }

    /// Serre (S2) on the window: fails exactly when some window hole lies in
    /// every facet translate of the semigroup.
    pub fn satisfies_s2(&self, w: &Window) -> S2Verdict {
        let (holes, components) = self.holes(w);
        for h in &holes {
            let in_all = self
                .toric
                .facets
                .iter()
                .all(|f| self.member_mod_face_verdict(h, f.face_id));
            if in_all {
                let witness = components
                    .iter()
                    .find(|c| c.members_in_window.contains(h))
                    .cloned()
                    .unwrap_or_else(|| HoleComponent {
                        base: h.clone(),
                        face: self.toric.minimal_face().id,
                        window_bound: w.bound.clone(),
                        certified_periods: Vec::new(),
                        members_in_window: vec![h.clone()],
                    });
                return S2Verdict::FailsS2 { witness };
            }
        }
        S2Verdict::S2OnWindow {
            bound: w.bound.clone(),
        }
    }

    /// Exact: every face lattice equals its saturation.
    pub fn check_c0(&self) -> bool {
        self.toric
            .faces
            .iter()
            .all(|f| self.toric.face_lattices(f.id).capacity.is_one())
    }

    /// Affine components covering `omega(a)` within the window: facet-value
    /// slabs forced by negative values of `a`, plus shifted hole components.
    pub fn omega_closure(&self, a: &[BigInt], w: &Window) -> Vec<VarietyComponent> {
        let t = &*self.toric;
        let mut comps = Vec::new();
        for f in &t.facets {
            let va = t.facet_value(f.id, a);
            if va.is_negative() {
                let sg = &self.facet_semigroups[f.id];
                let mut m = BigInt::zero();
                let top = -va;
                while m < top {
                    if sg.contains(&m) {
                        comps.push(VarietyComponent::Slab {
                            facet: f.id,
                            value: m.clone(),
                        });
                    }
                    m += 1;
                }
            }
        }
        let (_, components) = self.holes(w);
        for hc in &components {
            let shifted = int_vec_sub(&hc.base, a);
            if self.member_mod_face_verdict(&shifted, hc.face) {
                let fl = t.face_lattices(hc.face);
                let directions: Vec<Vec<BigInt>> = fl.saturation.basis().to_vec();
                let base_rat = int_vec_to_rat(&shifted);
                let base = reduce_mod_span(&base_rat, &directions);
                comps.push(VarietyComponent::Translate {
                    base,
                    directions,
                    dim: t.faces[hc.face].dim,
                });
            }
        }
        comps.sort_by_key(|c| c.key());
        comps.dedup();
        comps
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cone::build_toric;
    use crate::matrix::IntMatrix;

    fn plane_curve_engine() -> Engine {
        let t = build_toric(IntMatrix::from_i64(2, 4, &[1, 1, 2, 2, 1, 2, 0, 1])).unwrap();
        Engine::new(t).unwrap()
    }

    fn scored_3d_engine() -> Engine {
        let t = build_toric(IntMatrix::from_i64(
            3,
            6,
            &[1, 1, 1, 1, 1, 1, 0, 2, 3, 0, 2, 3, 0, 0, 0, 1, 1, 1],
        ))
        .unwrap();
        Engine::new(t).unwrap()
    }

    fn bi(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn numerical_semigroup_two_three() {
        let sg = NumericalSemigroup::from_generators(bi(&[0, 2, 3, 0, 2, 3])).unwrap();
        assert_eq!(sg.gaps, bi(&[1]));
        assert_eq!(sg.frobenius, BigInt::one());
        assert!(sg.contains(&BigInt::from(2)));
        assert!(!sg.contains(&BigInt::from(1)));
        assert!(!sg.contains(&BigInt::from(-2)));
    }

    #[test]
    fn numerical_semigroup_with_unit() {
        let sg = NumericalSemigroup::from_generators(bi(&[1, 2, 0, 1])).unwrap();
        assert!(sg.gaps.is_empty());
        assert_eq!(sg.frobenius, BigInt::from(-1));
        let sg = NumericalSemigroup::from_generators(bi(&[1, 0, 4, 3])).unwrap();
        assert!(sg.gaps.is_empty());
    }

    #[test]
    fn numerical_semigroup_five_seven() {
        let sg = NumericalSemigroup::from_generators(bi(&[5, 7])).unwrap();
        // Frobenius(5,7) = 23
        assert_eq!(sg.frobenius, BigInt::from(23));
        assert_eq!(sg.gaps.len(), 12);
    }

    #[test]
    fn membership_on_plane_curve() {
        let e = plane_curve_engine();
        // (1,0) is a hole; every column is a member.
        let c = e.member(&bi(&[1, 0]));
        assert!(!c.verdict);
        for j in 0..4 {
            let col = e.toric().column(j);
            let c = e.member(&col);
            assert!(c.verdict);
            let u = c.witness.unwrap();
            let recomputed = e.toric().matrix().mul_vec(&u);
            assert_eq!(recomputed, col);
        }
        // negative facet value gives an obstruction certificate
        let c = e.member(&bi(&[0, -1]));
        assert!(!c.verdict);
        let ob = c.obstruction.unwrap();
        assert_eq!(ob.kind, ObstructionKind::NegativeValue);
    }

    #[test]
    fn membership_gap_obstruction_on_scored_example() {
        let e = scored_3d_engine();
        let c = e.member(&bi(&[1, 1, 0]));
        assert!(!c.verdict);
        let ob = c.obstruction.unwrap();
        assert_eq!(ob.kind, ObstructionKind::GapValue);
        assert_eq!(ob.value, BigInt::one());
    }

    #[test]
    fn mod_face_membership_parity() {
        let e = plane_curve_engine();
        let t = e.toric();
        // facet through column 3 (the ray of (2,0))
        let s3 = t
            .facets
            .iter()
            .find(|f| f.column_set.contains(&2))
            .unwrap()
            .face_id;
        assert!(!e.member_mod_face_verdict(&bi(&[-1, 0]), s3));
        assert!(!e.member_mod_face_verdict(&bi(&[1, 0]), s3));
        assert!(e.member_mod_face_verdict(&bi(&[2, 0]), s3));
        assert!(e.member_mod_face_verdict(&bi(&[0, 0]), s3));
        // full cone face accepts every integer vector
        let cone_face = t.full_cone_face().id;
        assert!(e.member_mod_face_verdict(&bi(&[-7, 3]), cone_face));
        // witnesses re-evaluate exactly
        let cert = e.member_mod_face(&bi(&[2, 0]), s3);
        assert!(cert.verdict);
        let u = cert.witness.unwrap();
        let c = cert.face_witness.unwrap();
        let face_cols: Vec<usize> = t.faces[s3].columns.iter().cloned().collect();
        let mut total = t.matrix().mul_vec(&u);
        for (k, &j) in face_cols.iter().enumerate() {
            let col = t.column(j);
            for i in 0..2 {
                total[i] += &c[k] * &col[i];
            }
        }
        assert_eq!(total, bi(&[2, 0]));
    }

    #[test]
    fn omega_examples() {
        let e = plane_curve_engine();
        let w = Window::default_for(e.toric());
        // a equal to a column: omega is empty on any window
        let a1 = e.toric().column(0);
        assert!(e.omega(&a1, &w).is_empty());
        // a = (1,0): the origin is an omega point
        let om = e.omega(&bi(&[1, 0]), &w);
        assert!(om.contains(&bi(&[0, 0])));
        // strongly negative a: omega covers all window members
        let om = e.omega(&bi(&[-1000, 0]), &w);
        let members = e.window_members(&w);
        assert_eq!(om, members);
    }

    #[test]
    fn holes_of_plane_curve() {
        let e = plane_curve_engine();
        let w = Window::default_for(e.toric());
        let (holes, comps) = e.holes(&w);
        // odd points on the first axis
        assert!(holes.contains(&bi(&[1, 0])));
        assert!(holes.contains(&bi(&[3, 0])));
        assert!(holes.iter().all(|h| h[1].is_zero() && h[0].is_positive()));
        assert_eq!(comps.len(), 1);
        let c = &comps[0];
        assert_eq!(c.base, bi(&[1, 0]));
        let face = &e.toric().faces[c.face];
        assert_eq!(face.dim, 1);
        assert!(face.columns.contains(&2));
        assert_eq!(c.certified_periods, vec![bi(&[2, 0])]);
    }

    #[test]
    fn holes_of_scored_example() {
        let e = scored_3d_engine();
        let w = Window::with_bound(e.toric(), BigInt::from(9));
        let (holes, comps) = e.holes(&w);
        // the slab where the first facet value is 1
        let s14 = e
            .toric()
            .facets
            .iter()
            .find(|f| f.normal == bi(&[0, 1, 0]))
            .unwrap()
            .id;
        assert!(!holes.is_empty());
        for h in &holes {
            assert_eq!(e.toric().facet_value(s14, h), BigInt::one());
        }
        assert_eq!(comps.len(), 1);
        let c = &comps[0];
        assert_eq!(
            e.toric().facet_value(s14, &c.base),
            BigInt::one(),
            "component base lies in the slab"
        );
        assert_eq!(e.toric().faces[c.face].dim, 2);
    }

    #[test]
    fn saturated_semigroup_has_no_holes() {
        let t = build_toric(IntMatrix::from_i64(2, 3, &[1, 0, 1, 0, 1, 1])).unwrap();
        let e = Engine::new(t).unwrap();
        let w = Window::default_for(e.toric());
        let (holes, comps) = e.holes(&w);
        assert!(holes.is_empty());
        assert!(comps.is_empty());
        assert!(matches!(e.is_scored(&w), Scoredness::ScoredOnWindow { .. }));
    }

    #[test]
    fn scoredness_verdicts() {
        let e = plane_curve_engine();
        let w = Window::default_for(e.toric());
        match e.is_scored(&w) {
            Scoredness::NotScored { witness } => assert_eq!(witness, bi(&[1, 0])),
            _ => panic!("plane curve is not scored"),
        }
        let e = scored_3d_engine();
        let w = Window::with_bound(e.toric(), BigInt::from(20));
        assert!(matches!(e.is_scored(&w), Scoredness::ScoredOnWindow { .. }));
    }

    #[test]
    fn s2_verdicts() {
        let e = plane_curve_engine();
        let w = Window::default_for(e.toric());
        assert!(matches!(e.satisfies_s2(&w), S2Verdict::S2OnWindow { .. }));
        let e = scored_3d_engine();
        let w = Window::with_bound(e.toric(), BigInt::from(12));
        assert!(matches!(e.satisfies_s2(&w), S2Verdict::S2OnWindow { .. }));
    }

    #[test]
    fn s2_fails_on_isolated_hole() {
        // Numerical-semigroup style plane example with an isolated hole:
        // columns (1,0),(0,1),(1,1) generate the full quadrant except for
        // nothing... instead use (2,0),(3,0),(0,1),(1,1)-style: the quadrant
        // with first axis values in <2,3>; the hole (1,0) lies in both facet
        // translates, so (S2) fails.
        let t = build_toric(IntMatrix::from_i64(2, 4, &[2, 3, 0, 1, 0, 0, 1, 1])).unwrap();
        let e = Engine::new(t).unwrap();
        let w = Window::default_for(e.toric());
        match e.satisfies_s2(&w) {
            S2Verdict::FailsS2 { witness } => {
                assert!(e.toric().faces[witness.face].dim < e.toric().dim() - 1);
            }
            _ => panic!("isolated hole must refute (S2)"),
        }
    }

    #[test]
    fn c0_checks() {
        let e = plane_curve_engine();
        assert!(!e.check_c0());
        let e = scored_3d_engine();
        assert!(e.check_c0());
    }

    #[test]
    fn omega_closure_basics() {
        let e = plane_curve_engine();
        let w = Window::default_for(e.toric());
        // a in the semigroup: no components
        assert!(e.omega_closure(&e.toric().column(0), &w).is_empty());
        assert!(e.omega_closure(&bi(&[0, 0]), &w).is_empty());
        // a = (-2, 0): slabs and shifted hole translates, all of dim < 2
        let comps = e.omega_closure(&bi(&[-2, 0]), &w);
        assert!(!comps.is_empty());
        for c in &comps {
            assert!(c.dim(2) < 2);
        }
        // coverage: every omega point within the window lies on a component
        let om = e.omega(&bi(&[-2, 0]), &w);
        for b in &om {
            let p = int_vec_to_rat(b);
            assert!(
                comps.iter().any(|c| c.contains_point(e.toric(), &p)),
                "omega point {:?} not covered",
                b
            );
        }
    }

    #[test]
    fn facet_partition_examples() {
        use crate::rat::parse_rat_vec;
        let e = scored_3d_engine();
        let t = e.toric();
        let find = |normal: &[i64]| {
            t.facets
                .iter()
                .position(|f| {
                    f.normal
                        .iter()
                        .zip(normal)
                        .all(|(a, &b)| *a == BigInt::from(b))
                })
                .unwrap()
        };
        let (plus, minus) = e.fplus_fminus(&parse_rat_vec("0,1,0").unwrap());
        let expect_plus: BTreeSet<usize> =
            [find(&[0, 0, 1]), find(&[1, 0, -1])].into_iter().collect();
        let expect_minus: BTreeSet<usize> =
            [find(&[0, 1, 0]), find(&[3, -1, 0])].into_iter().collect();
        assert_eq!(plus, expect_plus);
        assert_eq!(minus, expect_minus);

        // zero lies in every facet semigroup
        let (plus, minus) = e.fplus_fminus(&parse_rat_vec("0,0,0").unwrap());
        assert_eq!(plus.len(), t.facets.len());
        assert!(minus.is_empty());

        // a negative value is never in the facet semigroup
        let e = plane_curve_engine();
        let (_, minus) = e.fplus_fminus(&parse_rat_vec("0,-1").unwrap());
        let axis = e
            .toric()
            .facets
            .iter()
            .position(|f| f.normal == bi(&[0, 1]))
            .unwrap();
        assert!(minus.contains(&axis));
    }

    #[test]
    fn membership_matches_window_closure() {
        for e in [plane_curve_engine(), scored_3d_engine()] {
            let w = Window::with_bound(e.toric(), BigInt::from(8));
            let scan_members: HashSet<Vec<BigInt>> =
                e.window_members(&w).into_iter().collect();
            for p in e.window_points(&w) {
                assert_eq!(
                    e.member_verdict(&p),
                    scan_members.contains(&p),
                    "window scan and search disagree at {:?}",
                    p
                );
            }
        }
    }

    #[test]
    fn membership_additivity() {
        let e = plane_curve_engine();
        let w = Window::with_bound(e.toric(), BigInt::from(8));
        let members = e.window_members(&w);
        for a in members.iter().take(12) {
            for b in members.iter().take(12) {
                let sum: Vec<BigInt> = a.iter().zip(b).map(|(x, y)| x + y).collect();
                assert!(e.member_verdict(&sum));
            }
        }
    }
}
