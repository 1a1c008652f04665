//! Vanishing of annihilators, graded annihilator descriptions, enumeration of
//! the homogeneous primitive ideals, and the simplicity decision.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::classify::{Classifier, Parameter};
use crate::cone::ToricData;
use crate::error::{Error, Result};
use crate::fm::{StrictRow, StrictSystem};
use crate::lattice::{coset_reps, reduce_mod_span, Lattice};
use crate::matrix::IntMatrix;
use crate::rat::{
    cmp_rat_vec, format_rat_vec, is_integer_vec, max_abs, rat_from_int, rat_vec_add, Rat,
};
use crate::semigroup::{Engine, Scoredness, VarietyComponent, Window};

/// The strict sign system attached to a parameter: positive on the facets
/// whose value lies in the facet semigroup, negative on the integral rest.
pub fn rpos_system(engine: &Engine, alpha: &[Rat]) -> StrictSystem {
    let t = engine.toric();
    let (plus, minus) = engine.fplus_fminus(alpha);
    sign_system(t, &plus, &minus)
}

fn sign_system(t: &ToricData, plus: &BTreeSet<usize>, minus: &BTreeSet<usize>) -> StrictSystem {
    let mut rows = Vec::new();
    for &fid in plus {
        rows.push(StrictRow::homogeneous(
            t.facets[fid].normal.iter().map(rat_from_int).collect(),
        ));
    }
    for &fid in minus {
        rows.push(StrictRow::homogeneous(
            t.facets[fid]
                .normal
                .iter()
                .map(|c| -rat_from_int(c))
                .collect(),
        ));
    }
    StrictSystem::new(t.dim(), rows)
}

/// Exact feasibility of the strict sign system at `alpha`.
pub fn rpos_nonempty(engine: &Engine, alpha: &[Rat]) -> bool {
    rpos_system(engine, alpha).feasible().is_some()
}

/// The annihilator of the simple module at `alpha` vanishes iff the class is
/// extreme and its sign system is feasible.
pub fn ann_is_zero(classifier: &Classifier, alpha: &[Rat]) -> bool {
    classifier.is_extreme(alpha) && rpos_nonempty(classifier.engine(), alpha)
}

/// Description of one graded piece of the annihilator: affine components
/// covering the window points of `omega(a)` and of the equivalence constraint
/// set, or a density flag when the piece vanishes.
#[derive(Debug, Clone)]
pub struct AnnReport {
    pub degree: Vec<BigInt>,
    pub zero: bool,
    pub components: Vec<VarietyComponent>,
    pub window_bound: BigInt,
}

impl AnnReport {
    pub fn key(&self) -> String {
        if self.zero {
            return "zero".to_string();
        }
        let parts: Vec<String> = self.components.iter().map(|c| c.key()).collect();
        parts.join("|")
    }
}

/// Group the window points of the equivalence constraint set into affine
/// translates: a candidate subspace claims a cluster only when the observed
/// differences span it exactly.
fn cluster_components(t: &ToricData, points: &[Parameter]) -> Vec<VarietyComponent> {
    let mut comps = Vec::new();
    if points.is_empty() {
        return comps;
    }
    let d = t.dim();
    let mut unassigned: Vec<&Parameter> = points.iter().collect();
    unassigned.sort_by(|a, b| cmp_rat_vec(a, b));
    for subspace in t.direction_subspaces() {
        if unassigned.is_empty() {
            break;
        }
        let mut taken: Vec<Vec<&Parameter>> = Vec::new();
        'outer: for &p in &unassigned {
            for cluster in taken.iter_mut() {
                let diff: Vec<Rat> = p.iter().zip(cluster[0]).map(|(a, b)| a - b).collect();
                if reduce_mod_span(&diff, subspace)
                    .iter()
                    .all(|x| x.is_zero())
                {
                    cluster.push(p);
                    continue 'outer;
                }
            }
            taken.push(vec![p]);
        }
        let mut leftovers = Vec::new();
        for cluster in taken {
            // accept only when the differences genuinely span the subspace
            let diffs: Vec<Vec<BigInt>> = cluster
                .iter()
                .skip(1)
                .map(|p| {
                    let diff: Vec<Rat> =
                        p.iter().zip(cluster[0]).map(|(a, b)| a - b).collect();
                    diff.iter().map(|r| r.numer().clone()).collect()
                })
                .collect();
            let rank = if diffs.is_empty() {
                0
            } else {
                IntMatrix::from_rows(d, diffs).rank()
            };
            if rank == subspace.len() {
                let base = reduce_mod_span(cluster[0], subspace);
                comps.push(VarietyComponent::Translate {
                    base,
                    directions: subspace.clone(),
                    dim: subspace.len(),
                });
            } else {
                leftovers.extend(cluster);
            }
        }
        unassigned = leftovers;
        unassigned.sort_by(|a, b| cmp_rat_vec(a, b));
    }
    for p in unassigned {
        comps.push(VarietyComponent::Translate {
            base: p.clone(),
            directions: Vec::new(),
            dim: 0,
        });
    }
    comps.sort_by_key(|c| c.key());
    comps.dedup();
    comps
}

/// The graded piece of the annihilator at degree `a`.
pub fn ann_graded_component(
    classifier: &Classifier,
    alpha: &[Rat],
    a: &[BigInt],
    w: &Window,
) -> AnnReport {
    let engine = classifier.engine();
    let t = engine.toric();
    if ann_is_zero(classifier, alpha) {
        return AnnReport {
            degree: a.to_vec(),
            zero: true,
            components: Vec::new(),
            window_bound: w.bound.clone(),
        };
    }
    let mut components = engine.omega_closure(a, w);
    let lambda = classifier.lambda_set(alpha, a, w);
    components.extend(cluster_components(t, &lambda));
    components.sort_by_key(|c| c.key());
    components.dedup();
    AnnReport {
        degree: a.to_vec(),
        zero: false,
        components,
        window_bound: w.bound.clone(),
    }
}

/// Window fingerprint of the annihilator: the reports at degree zero and at
/// plus/minus every column.
pub fn annihilator_key(classifier: &Classifier, alpha: &[Rat], w: &Window) -> String {
    let t = classifier.engine().toric();
    let mut degrees: Vec<Vec<BigInt>> = vec![vec![BigInt::zero(); t.dim()]];
    for j in 0..t.ncols() {
        let c = t.column(j);
        degrees.push(c.iter().map(|x| -x).collect());
        degrees.push(c);
    }
    degrees.sort();
    degrees.dedup();
    let parts: Vec<String> = degrees
        .iter()
        .map(|a| {
            let rep = ann_graded_component(classifier, alpha, a, w);
            format!("[{}]{}", crate::rat::format_int_vec(a), rep.key())
        })
        .collect();
    parts.join(";")
}

/// One stratum of parameters: the facet subset required to be integral, and
/// coset representatives for the finite quotient.
#[derive(Debug, Clone)]
pub struct Stratum {
    pub fprime: BTreeSet<usize>,
    /// Representatives; the integral facet set of a representative can be
    /// strictly larger when dependent facets pin integral values.
    pub representatives: Vec<Parameter>,
}

/// Representatives of the parameters whose integral facet set contains
/// `fprime`, modulo integer shifts and the stratum subspace; representatives
/// whose integral set is exactly `fprime` are preferred.
pub fn strata_representatives(engine: &Engine) -> Result<Vec<Stratum>> {
    let t = engine.toric();
    let d = t.dim();
    let nf = t.facets.len();
    let mut masks: Vec<u64> = (0..(1u64 << nf)).collect();
    masks.sort_by_key(|m| (m.count_ones(), *m));
    let mut out = Vec::new();
    for mask in masks {
        let fprime: BTreeSet<usize> = (0..nf).filter(|i| (mask >> i) & 1 == 1).collect();
        let mut reps = Vec::new();
        if fprime.is_empty() {
            reps.push(perturb_off_stratum(engine, vec![Rat::zero(); d], &fprime)?);
        } else {
            let k = fprime.len();
            let sel_rows: Vec<Vec<BigInt>> = fprime
                .iter()
                .map(|&fid| t.facets[fid].normal.clone())
                .collect();
            let sel = IntMatrix::from_rows(d, sel_rows);
            // Values attained by integer parameters, inside all integral
            // value vectors of the functional span.
            let gens: Vec<Vec<BigInt>> = (0..d).map(|i| sel.col_vec(i)).collect();
            let image = Lattice::from_generators(k, gens);
            let saturated = image.saturate();
            let reps_t = coset_reps(&image, &saturated)?;
            for tvec in reps_t {
                let rhs: Vec<Rat> = tvec.iter().map(rat_from_int).collect();
                let alpha0 = sel
                    .solve_rational(&rhs)
                    .expect("saturated values are attainable");
                reps.push(perturb_off_stratum(engine, alpha0, &fprime)?);
            }
        }
        out.push(Stratum {
            fprime,
            representatives: reps,
        });
    }
    Ok(out)
}

/// Add a stratum-subspace vector with a prime denominator so that every facet
/// functional not pinned by the stratum takes a non-integral value.
fn perturb_off_stratum(
    engine: &Engine,
    alpha0: Parameter,
    fprime: &BTreeSet<usize>,
) -> Result<Parameter> {
    let t = engine.toric();
    let d = t.dim();
    let v_basis = t.stratum_subspace(fprime);
    if v_basis.is_empty() {
        return Ok(alpha0);
    }
    let movable: Vec<usize> = t
        .facets
        .iter()
        .map(|f| f.id)
        .filter(|id| !fprime.contains(id))
        .filter(|&id| {
            v_basis
                .iter()
                .any(|w| !crate::rat::dot_int_int(&t.facets[id].normal, w).is_zero())
        })
        .collect();
    if movable.is_empty() {
        return Ok(alpha0);
    }
    // Integer combination of the basis with a nonzero value on every movable
    // facet; geometric coefficient vectors escape the finitely many bad
    // hyperplanes.
    let mut u: Option<Vec<BigInt>> = None;
    't_loop: for tpow in 1i64..200 {
        let mut cand = vec![BigInt::zero(); d];
        let mut factor = BigInt::one();
        for w in &v_basis {
            for i in 0..d {
                cand[i] += &factor * &w[i];
            }
            factor *= BigInt::from(tpow);
        }
        for &fid in &movable {
            if crate::rat::dot_int_int(&t.facets[fid].normal, &cand).is_zero() {
                continue 't_loop;
            }
        }
        u = Some(cand);
        break;
    }
    let u = u.ok_or_else(|| Error::LimitExceeded("stratum perturbation search".into()))?;
    // A prime denominator larger than every existing denominator and every
    // |F(u)| makes each movable value an irreducible fraction.
    let mut needed = BigInt::from(2);
    for &fid in &movable {
        let g = crate::rat::dot_int_int(&t.facets[fid].normal, &u).abs();
        needed = needed.max(g);
        let r = t.facet_value_rat(fid, &alpha0);
        needed = needed.max(r.denom().clone());
    }
    let q = next_prime_above(&needed);
    let shift: Vec<Rat> = u.iter().map(|x| Rat::new(x.clone(), q.clone())).collect();
    let alpha = rat_vec_add(&alpha0, &shift);
    for &fid in &movable {
        debug_assert!(!t.facet_value_rat(fid, &alpha).denom().is_one());
    }
    Ok(alpha)
}

fn next_prime_above(n: &BigInt) -> BigInt {
    let mut c = n.clone() + 1;
    loop {
        if is_small_prime(&c) {
            return c;
        }
        c += 1;
    }
}

fn is_small_prime(n: &BigInt) -> bool {
    if *n < BigInt::from(2) {
        return false;
    }
    let mut d = BigInt::from(2);
    while &d * &d <= *n {
        if (n % &d).is_zero() {
            return false;
        }
        d += 1;
    }
    true
}

/// How two entries were identified.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MergeKind {
    ZeroIdeal,
    SameClass,
    Translation,
    WindowKey,
}

/// One entry of the finite set of homogeneous primitive ideals.
#[derive(Debug, Clone)]
pub struct PrimEntry {
    pub representative: Parameter,
    pub stratum: BTreeSet<usize>,
    pub extreme: bool,
    pub ann_zero: bool,
    pub signature_key: Option<String>,
    pub window_bound: BigInt,
    /// True when the entry absorbed another one on window-key evidence alone.
    pub window_merged: bool,
    /// Number of equivalence classes merged into this entry.
    pub class_count: usize,
}

#[derive(Debug, Clone)]
pub struct PrimResult {
    pub entries: Vec<PrimEntry>,
    pub window_bound: BigInt,
    pub stabilized: bool,
}

struct RawEntry {
    representative: Parameter,
    stratum: BTreeSet<usize>,
    extreme: bool,
    ann_zero: bool,
    key: Option<String>,
}

fn norm_key(p: &[Rat], t: &ToricData) -> (Rat, Parameter) {
    let values: Vec<Rat> = t
        .facets
        .iter()
        .map(|f| t.facet_value_rat(f.id, p))
        .collect();
    (max_abs(&values), p.to_vec())
}

/// Exact merge via the translation rule: a shift in the stratum subspace with
/// unchanged integral facets carries the class of `alpha` onto that of `beta`.
fn translation_related(classifier: &Classifier, alpha: &[Rat], beta: &[Rat]) -> bool {
    let t = classifier.engine().toric();
    let f_alpha = t.integral_facets(alpha);
    if t.integral_facets(beta) != f_alpha {
        return false;
    }
    let delta: Vec<Rat> = beta.iter().zip(alpha).map(|(b, a)| b - a).collect();
    let d = t.dim();
    let mu = if f_alpha.is_empty() {
        delta
    } else {
        let sel_rows: Vec<Vec<BigInt>> = f_alpha
            .iter()
            .map(|&fid| t.facets[fid].normal.clone())
            .collect();
        let sel = IntMatrix::from_rows(d, sel_rows);
        let tval = sel.mul_vec_rat(&delta);
        if !is_integer_vec(&tval) {
            return false;
        }
        let t_int: Vec<BigInt> = tval.iter().map(|r| r.numer().clone()).collect();
        match sel.solve_integer(&t_int) {
            None => return false,
            Some((z, _)) => delta
                .iter()
                .zip(&z)
                .map(|(x, zi)| x - rat_from_int(zi))
                .collect(),
        }
    };
    let shifted = rat_vec_add(alpha, &mu);
    if t.integral_facets(&shifted) != f_alpha {
        return false;
    }
    classifier.equivalent(&shifted, beta)
}

fn find(parent: &mut Vec<usize>, i: usize) -> usize {
    if parent[i] != i {
        let r = find(parent, parent[i]);
        parent[i] = r;
    }
    parent[i]
}

/// Enumerate the homogeneous primitive ideals within a window: classify every
/// stratum coset, then merge annihilators by the exact rules (zero test,
/// class identity, stratum translation) and by window-key agreement.
pub fn enumerate_prim(classifier: &Classifier, w: &Window) -> Result<PrimResult> {
    let engine = classifier.engine();
    let t = engine.toric();
    let mut raw: Vec<RawEntry> = Vec::new();
    let mut stabilized = true;
    for stratum in strata_representatives(engine)? {
        for rep in &stratum.representatives {
            let res = classifier.classify_coset(rep, w);
            stabilized &= res.stabilized;
            for class in &res.classes {
                let ann_zero =
                    class.extreme && rpos_nonempty(engine, &class.representative);
                let key = if ann_zero {
                    None
                } else {
                    Some(annihilator_key(classifier, &class.representative, w))
                };
                raw.push(RawEntry {
                    representative: class.representative.clone(),
                    stratum: t.integral_facets(&class.representative),
                    extreme: class.extreme,
                    ann_zero,
                    key,
                });
            }
        }
    }
    let n = raw.len();
    let mut parent: Vec<usize> = (0..n).collect();
    let mut union_kind: HashMap<usize, MergeKind> = HashMap::new();
    let union = |parent: &mut Vec<usize>,
                     union_kind: &mut HashMap<usize, MergeKind>,
                     i: usize,
                     j: usize,
                     kind: MergeKind| {
        let ri = find(parent, i);
        let rj = find(parent, j);
        if ri != rj {
            let (keep, drop) = if ri < rj { (ri, rj) } else { (rj, ri) };
            parent[drop] = keep;
            let prev_keep = union_kind.get(&keep).copied();
            let prev_drop = union_kind.get(&drop).copied();
            let mut worst = kind;
            for p in [prev_keep, prev_drop].into_iter().flatten() {
                if p == MergeKind::WindowKey {
                    worst = MergeKind::WindowKey;
                }
            }
            if worst == MergeKind::WindowKey || kind == MergeKind::WindowKey {
                worst = MergeKind::WindowKey;
            }
            union_kind.insert(keep, worst);
        }
    };
    let zero_ids: Vec<usize> = (0..n).filter(|&i| raw[i].ann_zero).collect();
    for wpair in zero_ids.windows(2) {
        union(
            &mut parent,
            &mut union_kind,
            wpair[0],
            wpair[1],
            MergeKind::ZeroIdeal,
        );
    }
    let nonzero_ids: Vec<usize> = (0..n).filter(|&i| !raw[i].ann_zero).collect();
    for (pos, &i) in nonzero_ids.iter().enumerate() {
        for &j in nonzero_ids.iter().skip(pos + 1) {
            if find(&mut parent, i) == find(&mut parent, j) {
                continue;
            }
            let a = raw[i].representative.clone();
            let b = raw[j].representative.clone();
            if crate::classify::integer_difference(&a, &b).is_some()
                && classifier.equivalent(&a, &b)
            {
                union(&mut parent, &mut union_kind, i, j, MergeKind::SameClass);
            } else if translation_related(classifier, &a, &b)
                || translation_related(classifier, &b, &a)
            {
                union(&mut parent, &mut union_kind, i, j, MergeKind::Translation);
            } else if raw[i].key == raw[j].key {
                union(&mut parent, &mut union_kind, i, j, MergeKind::WindowKey);
            }
        }
    }
    let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for i in 0..n {
        let r = find(&mut parent, i);
        groups.entry(r).or_default().push(i);
    }
    let mut entries: Vec<PrimEntry> = groups
        .into_iter()
        .map(|(root, ids)| {
            let best = ids
                .iter()
                .min_by(|&&a, &&b| {
                    let ka = norm_key(&raw[a].representative, t);
                    let kb = norm_key(&raw[b].representative, t);
                    ka.0.cmp(&kb.0).then(cmp_rat_vec(&ka.1, &kb.1))
                })
                .copied()
                .unwrap();
            let window_merged = matches!(union_kind.get(&root), Some(MergeKind::WindowKey));
            PrimEntry {
                representative: raw[best].representative.clone(),
                stratum: raw[best].stratum.clone(),
                extreme: raw[best].extreme,
                ann_zero: raw[best].ann_zero,
                signature_key: raw[best].key.clone(),
                window_bound: w.bound.clone(),
                window_merged,
                class_count: ids.len(),
            }
        })
        .collect();
    entries.sort_by(|a, b| {
        b.ann_zero.cmp(&a.ann_zero).then_with(|| {
            let ka = norm_key(&a.representative, t);
            let kb = norm_key(&b.representative, t);
            ka.0.cmp(&kb.0).then(cmp_rat_vec(&ka.1, &kb.1))
        })
    });
    Ok(PrimResult {
        entries,
        window_bound: w.bound.clone(),
        stabilized,
    })
}

#[derive(Debug, Clone)]
pub enum C1Verdict {
    AllExtremeOnWindow { bound: BigInt },
    Counterexample { alpha: Parameter },
}

/// Every class over every stratum representative must be extreme.
pub fn check_c1(classifier: &Classifier, w: &Window) -> Result<C1Verdict> {
    let engine = classifier.engine();
    let t = engine.toric();
    let mut counterexamples: Vec<Parameter> = Vec::new();
    for stratum in strata_representatives(engine)? {
        for rep in &stratum.representatives {
            let res = classifier.classify_coset(rep, w);
            for class in &res.classes {
                if !class.extreme {
                    let best = class
                        .members_in_window
                        .iter()
                        .min_by(|a, b| {
                            let ka = norm_key(a, t);
                            let kb = norm_key(b, t);
                            ka.0.cmp(&kb.0).then(cmp_rat_vec(&ka.1, &kb.1))
                        })
                        .cloned()
                        .unwrap_or_else(|| class.representative.clone());
                    counterexamples.push(best);
                }
            }
        }
    }
    match counterexamples.into_iter().min_by(|a, b| {
        let ka = norm_key(a, t);
        let kb = norm_key(b, t);
        ka.0.cmp(&kb.0).then(cmp_rat_vec(&ka.1, &kb.1))
    }) {
        Some(alpha) => Ok(C1Verdict::Counterexample { alpha }),
        None => Ok(C1Verdict::AllExtremeOnWindow {
            bound: w.bound.clone(),
        }),
    }
}

/// A facet sign pattern: facets required positive and facets required
/// negative.
pub type SignPattern = (BTreeSet<usize>, BTreeSet<usize>);

#[derive(Debug, Clone)]
pub enum C2Verdict {
    Holds {
        /// Sign-infeasible patterns that no parameter realized within the
        /// search bound; reported, never silently dropped.
        unrealized: Vec<SignPattern>,
    },
    Fails {
        pattern: SignPattern,
        witness: Parameter,
    },
}

/// Search bound for realizing facet value patterns.
pub fn default_c2_bound(engine: &Engine) -> BigInt {
    let t = engine.toric();
    let mut frob = BigInt::zero();
    for f in &t.facets {
        frob = frob.max(engine.facet_semigroup(f.id).frobenius.clone());
    }
    frob * BigInt::from(2) + BigInt::from(2)
}

/// Decide the strict-feasibility condition over all realizable sign patterns.
pub fn check_c2(engine: &Engine, bound: &BigInt) -> Result<C2Verdict> {
    let t = engine.toric();
    let nf = t.facets.len();
    let mut unrealized = Vec::new();
    // ternary masks: each facet is positive, negative, or unconstrained
    let total = 3u64.pow(nf as u32);
    for code in 0..total {
        let mut c = code;
        let mut plus = BTreeSet::new();
        let mut minus = BTreeSet::new();
        for fid in 0..nf {
            match c % 3 {
                1 => {
                    plus.insert(fid);
                }
                2 => {
                    minus.insert(fid);
                }
                _ => {}
            }
            c /= 3;
        }
        if plus.is_empty() && minus.is_empty() {
            continue;
        }
        if sign_system(t, &plus, &minus).feasible().is_some() {
            continue;
        }
        match realize_pattern(engine, &plus, &minus, bound)? {
            Some(alpha) => {
                return Ok(C2Verdict::Fails {
                    pattern: (plus, minus),
                    witness: alpha,
                })
            }
            None => unrealized.push((plus, minus)),
        }
    }
    Ok(C2Verdict::Holds { unrealized })
}

/// Search for a rational parameter whose facet values match the pattern:
/// semigroup values on the positive part, negative integers or gaps on the
/// negative part, non-integral elsewhere.
fn realize_pattern(
    engine: &Engine,
    plus: &BTreeSet<usize>,
    minus: &BTreeSet<usize>,
    bound: &BigInt,
) -> Result<Option<Parameter>> {
    let t = engine.toric();
    let d = t.dim();
    let mut chosen: Vec<usize> = plus.iter().chain(minus.iter()).cloned().collect();
    chosen.sort();
    let sel_rows: Vec<Vec<BigInt>> = chosen
        .iter()
        .map(|&fid| t.facets[fid].normal.clone())
        .collect();
    let sel = IntMatrix::from_rows(d, sel_rows);
    // Relations among the chosen functionals constrain the value vectors.
    let relations = sel.transpose().integer_kernel();
    // Candidate values per chosen facet, by increasing magnitude.
    let candidates: Vec<Vec<BigInt>> = chosen
        .iter()
        .map(|&fid| {
            let sg = engine.facet_semigroup(fid);
            let mut vals = Vec::new();
            if plus.contains(&fid) {
                let mut m = BigInt::zero();
                while m <= *bound {
                    if sg.contains(&m) {
                        vals.push(m.clone());
                    }
                    m += 1;
                }
            } else {
                for g in &sg.gaps {
                    if g <= bound {
                        vals.push(g.clone());
                    }
                }
                let mut m = BigInt::from(-1);
                while -m.clone() <= *bound {
                    vals.push(m.clone());
                    m -= 1;
                }
                vals.sort_by(|a, b| a.abs().cmp(&b.abs()).then(b.cmp(a)));
            }
            vals
        })
        .collect();
    if candidates.iter().any(|v| v.is_empty()) {
        return Ok(None);
    }
    let mut idx = vec![0usize; chosen.len()];
    let mut tried: u64 = 0;
    loop {
        tried += 1;
        if tried > 2_000_000 {
            return Err(Error::LimitExceeded("pattern realization search".into()));
        }
        let tvec: Vec<BigInt> = idx
            .iter()
            .enumerate()
            .map(|(k, &i)| candidates[k][i].clone())
            .collect();
        let consistent = relations.iter().all(|c| {
            let mut acc = BigInt::zero();
            for (ci, ti) in c.iter().zip(&tvec) {
                acc += ci * ti;
            }
            acc.is_zero()
        });
        if consistent {
            if let Some(alpha) = finish_realization(engine, &chosen, &tvec, plus, minus)? {
                return Ok(Some(alpha));
            }
        }
        // odometer
        let mut k = 0;
        loop {
            if k == idx.len() {
                return Ok(None);
            }
            idx[k] += 1;
            if idx[k] < candidates[k].len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}

/// Solve for the chosen values and push the remaining facets off the integers
/// when possible.
fn finish_realization(
    engine: &Engine,
    chosen: &[usize],
    tvec: &[BigInt],
    plus: &BTreeSet<usize>,
    minus: &BTreeSet<usize>,
) -> Result<Option<Parameter>> {
    let t = engine.toric();
    let d = t.dim();
    let sel_rows: Vec<Vec<BigInt>> = chosen
        .iter()
        .map(|&fid| t.facets[fid].normal.clone())
        .collect();
    let sel = IntMatrix::from_rows(d, sel_rows);
    let rhs: Vec<Rat> = tvec.iter().map(rat_from_int).collect();
    let alpha0 = match sel.solve_rational(&rhs) {
        None => return Ok(None),
        Some(a) => a,
    };
    let fprime: BTreeSet<usize> = chosen.iter().cloned().collect();
    let alpha = perturb_off_stratum(engine, alpha0, &fprime)?;
    // Pinned outside facets may still take integral values; reject then.
    let (p2, m2) = engine.fplus_fminus(&alpha);
    if p2 == *plus && m2 == *minus {
        Ok(Some(alpha))
    } else {
        Ok(None)
    }
}

#[derive(Debug, Clone)]
pub enum SimplicityReason {
    NotScored {
        witness: Vec<BigInt>,
    },
    C2Fails {
        pattern: SignPattern,
        witness: Parameter,
    },
}

#[derive(Debug, Clone)]
pub enum SimplicityVerdict {
    SimpleOnWindow {
        bound: BigInt,
        c2_unrealized: Vec<SignPattern>,
    },
    NotSimple {
        reason: SimplicityReason,
    },
}

/// Simplicity of the ring of differential operators: refuted by a certified
/// scoredness witness or a realized infeasible sign pattern; affirmed on the
/// window otherwise. Simplicial cones skip the sign-pattern check.
pub fn is_simple(engine: &Engine, w: &Window, c2_bound: &BigInt) -> Result<SimplicityVerdict> {
    if let Scoredness::NotScored { witness } = engine.is_scored(w) {
        return Ok(SimplicityVerdict::NotSimple {
            reason: SimplicityReason::NotScored { witness },
        });
    }
    let unrealized = if engine.toric().simplicial {
        Vec::new()
    } else {
        match check_c2(engine, c2_bound)? {
            C2Verdict::Fails { pattern, witness } => {
                return Ok(SimplicityVerdict::NotSimple {
                    reason: SimplicityReason::C2Fails { pattern, witness },
                })
            }
            C2Verdict::Holds { unrealized } => unrealized,
        }
    };
    Ok(SimplicityVerdict::SimpleOnWindow {
        bound: w.bound.clone(),
        c2_unrealized: unrealized,
    })
}

/// Facet labels for a sign pattern.
pub fn pattern_labels(t: &ToricData, pattern: &SignPattern) -> (Vec<String>, Vec<String>) {
    let name = |fid: &usize| t.faces[t.facets[*fid].face_id].label.clone();
    (
        pattern.0.iter().map(name).collect(),
        pattern.1.iter().map(name).collect(),
    )
}

pub fn format_pattern(t: &ToricData, pattern: &SignPattern) -> String {
    let (p, m) = pattern_labels(t, pattern);
    format!("plus={{{}}} minus={{{}}}", p.join(","), m.join(","))
}

pub fn format_parameter(p: &[Rat]) -> String {
    format_rat_vec(p)
}
