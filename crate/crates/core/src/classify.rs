//! Classification of parameters: the sets `E_tau(alpha)`, signatures, the
//! order and equivalence they induce, extremeness, and coset classification.

use std::collections::{BTreeSet, HashMap};
use std::hash::{Hash, Hasher};
use std::sync::{Arc, Mutex};

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::fm::{StrictRow, StrictSystem};
use crate::rat::{
    cmp_rat_vec, is_integer_vec, rat_from_int, rat_vec_add, rat_vec_sub, rat_vec_to_int, Rat,
};
use crate::semigroup::{Engine, Window};

/// A parameter vector with exact rational entries.
pub type Parameter = Vec<Rat>;

/// The coset data attached to one face: which translates of the face lattice
/// reach the parameter through the semigroup.
#[derive(Debug, Clone)]
pub struct ESet {
    pub face: usize,
    /// Whether the parameter lies in (face span + Z^d) at all.
    pub defined: bool,
    /// Upper bound for the member count: the index of the face lattice in its
    /// saturation.
    pub capacity: BigUint,
    /// Canonical coset representatives, sorted.
    pub members: Vec<Parameter>,
}

impl ESet {
    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn is_full(&self) -> bool {
        BigUint::from(self.members.len()) == self.capacity
    }

    fn members_subset_of(&self, other: &ESet) -> bool {
        self.members.iter().all(|m| other.members.contains(m))
    }
}

/// The family of all E-sets, one per face. Two signatures compare equal when
/// the member sets agree on every face; definedness with no members is the
/// same as undefinedness.
#[derive(Debug, Clone)]
pub struct Signature {
    pub esets: Vec<ESet>,
}

impl PartialEq for Signature {
    fn eq(&self, other: &Self) -> bool {
        self.esets.len() == other.esets.len()
            && self
                .esets
                .iter()
                .zip(&other.esets)
                .all(|(a, b)| a.members == b.members)
    }
}

impl Eq for Signature {}

impl Hash for Signature {
    fn hash<H: Hasher>(&self, state: &mut H) {
        for e in &self.esets {
            e.members.hash(state);
        }
    }
}

impl Signature {
    pub fn preceq(&self, other: &Signature) -> bool {
        self.esets
            .iter()
            .zip(&other.esets)
            .all(|(a, b)| a.members_subset_of(b))
    }
}

/// One equivalence class discovered inside a window.
#[derive(Debug, Clone)]
pub struct EquivClass {
    /// Lexicographically smallest member found.
    pub representative: Parameter,
    pub signature: Arc<Signature>,
    pub extreme: bool,
    pub members_in_window: Vec<Parameter>,
    /// Observed facet-value ranges over the window members: (facet, min, max).
    pub observed: Vec<(usize, Rat, Rat)>,
}

#[derive(Debug, Clone)]
pub struct ClassifyResult {
    pub classes: Vec<EquivClass>,
    pub window_bound: BigInt,
    /// Whether ring expansion and deep-chamber probes both stabilized inside
    /// the window.
    pub stabilized: bool,
}

type SignatureCache = Mutex<HashMap<Parameter, Arc<Signature>>>;
type BoxCache = Mutex<HashMap<(BigInt, Parameter), Arc<Vec<Parameter>>>>;

/// Classifier over an engine, with signature and point-box caches.
pub struct Classifier<'a> {
    engine: &'a Engine,
    sig_cache: SignatureCache,
    box_cache: BoxCache,
}

impl<'a> Classifier<'a> {
    pub fn new(engine: &'a Engine) -> Self {
        Classifier {
            engine,
            sig_cache: Mutex::new(HashMap::new()),
            box_cache: Mutex::new(HashMap::new()),
        }
    }

    /// Points of `alpha + Z^d` with every |facet value| at most `bound`,
    /// cached per coset.
    fn symmetric_box(&self, alpha: &[Rat], bound: &BigInt) -> Arc<Vec<Parameter>> {
        let fracs: Vec<Rat> = alpha
            .iter()
            .map(|a| a - rat_from_int(&crate::rat::rat_floor(a)))
            .collect();
        let key = (bound.clone(), fracs.clone());
        {
            let cache = self.box_cache.lock().unwrap();
            if let Some(b) = cache.get(&key) {
                return Arc::clone(b);
            }
        }
        let t = self.engine.toric();
        let pts = Arc::new(t.points_with_value_bounds(&-bound.clone(), bound, Some(&fracs)));
        self.box_cache.lock().unwrap().insert(key, Arc::clone(&pts));
        pts
    }

    pub fn engine(&self) -> &Engine {
        self.engine
    }

    /// The E-set of one face at `alpha`.
    pub fn e_tau(&self, alpha: &[Rat], face_id: usize) -> ESet {
        let t = self.engine.toric();
        let fl = t.face_lattices(face_id);
        let k = &fl.complement;
        // alpha lies in span + Z^d iff the complement functionals are integral.
        let kv = k.mul_vec_rat(alpha);
        if !is_integer_vec(&kv) {
            return ESet {
                face: face_id,
                defined: false,
                capacity: fl.capacity.clone(),
                members: Vec::new(),
            };
        }
        let t_int: Vec<BigInt> = kv.iter().map(|r| r.numer().clone()).collect();
        let z = fl
            .complement_solver
            .solve(&t_int)
            .expect("complement rows are primitive, so the system is solvable");
        // lambda0 = alpha - z lies in the face span.
        let lambda0: Vec<Rat> = alpha
            .iter()
            .zip(&z)
            .map(|(a, zi)| a - rat_from_int(zi))
            .collect();
        let mut members = Vec::new();
        for r in &fl.coset_labels {
            let zr: Vec<BigInt> = z.iter().zip(r).map(|(a, b)| a - b).collect();
            if self.engine.member_mod_face_verdict(&zr, face_id) {
                let lam: Vec<Rat> = lambda0
                    .iter()
                    .zip(r)
                    .map(|(l, ri)| l + rat_from_int(ri))
                    .collect();
                members.push(fl.reducer.reduce(&lam));
            }
        }
        members.sort_by(|a, b| cmp_rat_vec(a, b));
        ESet {
            face: face_id,
            defined: true,
            capacity: fl.capacity.clone(),
            members,
        }
    }

    pub fn signature(&self, alpha: &[Rat]) -> Arc<Signature> {
        {
            let cache = self.sig_cache.lock().unwrap();
            if let Some(s) = cache.get(alpha) {
                return Arc::clone(s);
            }
        }
        let t = self.engine.toric();
        let esets: Vec<ESet> = t.faces.iter().map(|f| self.e_tau(alpha, f.id)).collect();
        let sig = Arc::new(Signature { esets });
        self.sig_cache
            .lock()
            .unwrap()
            .insert(alpha.to_vec(), Arc::clone(&sig));
        sig
    }

    /// `E_tau(alpha) ⊆ E_tau(beta)` for every face.
    pub fn preceq(&self, alpha: &[Rat], beta: &[Rat]) -> bool {
        self.signature(alpha).preceq(&self.signature(beta))
    }

    /// Equality of all E-sets; the classifying equivalence.
    pub fn equivalent(&self, alpha: &[Rat], beta: &[Rat]) -> bool {
        self.signature(alpha) == self.signature(beta)
    }

    /// Faces whose E-set is defined and whose containing facets all carry
    /// values in their facet semigroups.
    pub fn face_set(&self, alpha: &[Rat]) -> BTreeSet<usize> {
        let t = self.engine.toric();
        let (plus, _) = self.engine.fplus_fminus(alpha);
        let sig = self.signature(alpha);
        t.faces
            .iter()
            .filter(|f| sig.esets[f.id].defined)
            .filter(|f| f.containing_facets.iter().all(|s| plus.contains(s)))
            .map(|f| f.id)
            .collect()
    }

    /// Full E-sets exactly on the face set, empty elsewhere.
    pub fn is_extreme(&self, alpha: &[Rat]) -> bool {
        let fs = self.face_set(alpha);
        let sig = self.signature(alpha);
        sig.esets.iter().all(|e| {
            if fs.contains(&e.face) {
                e.is_full()
            } else {
                e.is_empty()
            }
        })
    }

    /// Quiet-run length before the classification is considered stable: new
    /// signatures along a congruence line appear within one column step or
    /// one facet-semigroup conductor of the previous one.
    fn quiet_run_length(&self) -> BigInt {
        let t = self.engine.toric();
        let mut q = BigInt::from(2).max(t.max_column_facet_value().clone());
        for f in &t.facets {
            let c = self.engine.facet_semigroup(f.id).frobenius.clone() + BigInt::from(2);
            q = q.max(c);
        }
        q
    }

    /// All equivalence classes meeting `alpha + Z^d`, discovered by expanding
    /// facet-value rings and deep-chamber probes.
    pub fn classify_coset(&self, alpha: &[Rat], w: &Window) -> ClassifyResult {
        let t = self.engine.toric();
        let cap = w.bound.clone();
        let mut by_sig: Vec<(Arc<Signature>, Vec<Parameter>, Vec<Parameter>)> = Vec::new();
        let mut known: HashMap<Arc<Signature>, usize> = HashMap::new();
        let mut record = |sig: Arc<Signature>, point: Parameter, probe: bool| -> bool {
            match known.get(&sig) {
                Some(&i) => {
                    if probe {
                        by_sig[i].2.push(point);
                    } else {
                        by_sig[i].1.push(point);
                    }
                    false
                }
                None => {
                    known.insert(Arc::clone(&sig), by_sig.len());
                    if probe {
                        by_sig.push((sig, Vec::new(), vec![point]));
                    } else {
                        by_sig.push((sig, vec![point], Vec::new()));
                    }
                    true
                }
            }
        };
        // Enumerate the whole box once and bucket points by the ring index
        // max_sigma |F_sigma|, rounded up.
        let pts = self.symmetric_box(alpha, &cap);
        let mut rings: HashMap<BigInt, Vec<Parameter>> = HashMap::new();
        for p in pts.iter().cloned() {
            let mut r = BigInt::zero();
            for f in &t.facets {
                let v = t.facet_value_rat(f.id, &p).abs();
                let ceil = -crate::rat::rat_floor(&-v);
                r = r.max(ceil);
            }
            rings.entry(r).or_default().push(p);
        }
        let quiet_needed = self.quiet_run_length();
        let mut quiet = BigInt::zero();
        let mut stabilized = false;
        let mut m = BigInt::zero();
        while m <= cap {
            let mut ring_added_new_sig = false;
            if let Some(pts) = rings.remove(&m) {
                for p in pts {
                    let sig = self.signature(&p);
                    if record(sig, p, false) {
                        ring_added_new_sig = true;
                    }
                }
            }
            if ring_added_new_sig {
                quiet = BigInt::zero();
            } else {
                quiet += 1;
            }
            if quiet >= quiet_needed {
                let mut probe_added = false;
                for probe in self.deep_probes(alpha, &cap) {
                    let sig = self.signature(&probe);
                    if record(sig, probe, true) {
                        probe_added = true;
                    }
                }
                if !probe_added {
                    stabilized = true;
                    break;
                }
                quiet = BigInt::zero();
            }
            m += 1;
        }
        let mut classes: Vec<EquivClass> = by_sig
            .into_iter()
            .map(|(sig, mut members, mut probes)| {
                members.sort_by(|a, b| cmp_rat_vec(a, b));
                members.dedup();
                probes.sort_by(|a, b| cmp_rat_vec(a, b));
                probes.dedup();
                let representative = members
                    .first()
                    .or_else(|| probes.first())
                    .expect("class has a witness point")
                    .clone();
                let extreme = self.is_extreme(&representative);
                let observed = t
                    .facets
                    .iter()
                    .map(|f| {
                        let vals: Vec<Rat> = members
                            .iter()
                            .chain(&probes)
                            .map(|p| t.facet_value_rat(f.id, p))
                            .collect();
                        let min = vals.iter().min().unwrap().clone();
                        let max = vals.iter().max().unwrap().clone();
                        (f.id, min, max)
                    })
                    .collect();
                EquivClass {
                    representative,
                    signature: sig,
                    extreme,
                    members_in_window: members,
                    observed,
                }
            })
            .collect();
        classes.sort_by(|a, b| cmp_rat_vec(&a.representative, &b.representative));
        ClassifyResult {
            classes,
            window_bound: cap,
            stabilized,
        }
    }

    /// One integral point per feasible facet sign pattern, pushed beyond the
    /// window bound.
    fn deep_probes(&self, alpha: &[Rat], bound: &BigInt) -> Vec<Parameter> {
        let t = self.engine.toric();
        let d = t.dim();
        let nf = t.facets.len();
        let target = rat_from_int(&(bound + t.max_column_facet_value() + BigInt::one()));
        let mut probes = Vec::new();
        for mask in 0..(1u64 << nf) {
            let mut rows = Vec::new();
            for f in &t.facets {
                let sign_pos = (mask >> f.id) & 1 == 1;
                // margin absorbs the rounding of the rational witness
                let margin: BigInt = f.normal.iter().map(|c| c.abs()).sum();
                let mut coeffs: Vec<Rat> = f.normal.iter().map(rat_from_int).collect();
                if !sign_pos {
                    for c in coeffs.iter_mut() {
                        let v = -c.clone();
                        *c = v;
                    }
                }
                rows.push(StrictRow {
                    coeffs,
                    constant: -(&target + rat_from_int(&margin)),
                });
            }
            let sys = StrictSystem::new(d, rows);
            if let Some(gamma) = sys.feasible() {
                // round to the coset of alpha
                let z: Vec<BigInt> = gamma
                    .iter()
                    .zip(alpha)
                    .map(|(g, a)| {
                        let diff = g - a;
                        crate::rat::rat_floor(&(diff + Rat::new(BigInt::one(), BigInt::from(2))))
                    })
                    .collect();
                let beta: Vec<Rat> = alpha
                    .iter()
                    .zip(&z)
                    .map(|(a, zi)| a + rat_from_int(zi))
                    .collect();
                let deep = t.facets.iter().all(|f| {
                    let v = t.facet_value_rat(f.id, &beta);
                    let sign_pos = (mask >> f.id) & 1 == 1;
                    if sign_pos {
                        v >= target
                    } else {
                        v <= -target.clone()
                    }
                });
                if deep {
                    probes.push(beta);
                }
            }
        }
        probes
    }

    /// Window members of `{ beta ~ alpha : beta + a ~ alpha }`.
    pub fn lambda_set(&self, alpha: &[Rat], a: &[BigInt], w: &Window) -> Vec<Parameter> {
        let pts = self.symmetric_box(alpha, &w.bound);
        let a_rat: Vec<Rat> = a.iter().map(rat_from_int).collect();
        let mut out = Vec::new();
        for beta in pts.iter().cloned() {
            if !self.equivalent(&beta, alpha) {
                continue;
            }
            let shifted = rat_vec_add(&beta, &a_rat);
            if self.equivalent(&shifted, alpha) {
                out.push(beta);
            }
        }
        out.sort_by(|a, b| cmp_rat_vec(a, b));
        out
    }

    /// Verify the translate identity `E_tau(alpha + mu) = mu + E_tau(alpha)`
    /// on every face, for `mu` in the integral-facet stratum of `alpha`.
    pub fn translate_check(&self, alpha: &[Rat], mu: &[Rat]) -> Result<bool> {
        let t = self.engine.toric();
        let f_alpha = t.integral_facets(alpha);
        for &fid in &f_alpha {
            if !t.facet_value_rat(fid, mu).is_zero() {
                return Err(Error::PreconditionViolated(format!(
                    "mu is not in the stratum subspace: facet {fid} value is nonzero"
                )));
            }
        }
        let shifted = rat_vec_add(alpha, mu);
        if t.integral_facets(&shifted) != f_alpha {
            return Err(Error::PreconditionViolated(
                "integral facet set changes under the shift".into(),
            ));
        }
        for face in &t.faces {
            let left = self.e_tau(&shifted, face.id);
            let right = self.e_tau(alpha, face.id);
            let fl = t.face_lattices(face.id);
            let mut shifted_members: Vec<Parameter> = right
                .members
                .iter()
                .map(|mem| fl.reducer.reduce(&rat_vec_add(mem, mu)))
                .collect();
            shifted_members.sort_by(|a, b| cmp_rat_vec(a, b));
            if left.members != shifted_members {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// A nonnegative semigroup element whose addition makes every defined
    /// E-set full (constructed column by column).
    pub fn saturating_shift(&self, alpha: &[Rat]) -> Option<Vec<BigInt>> {
        let t = self.engine.toric();
        let a_mat = t.matrix();
        let mut shift = vec![BigInt::zero(); t.dim()];
        for face in &t.faces {
            let e = self.e_tau(alpha, face.id);
            if !e.defined {
                continue;
            }
            let fl = t.face_lattices(face.id);
            for label in &fl.coset_labels {
                let neg: Vec<BigInt> = label.iter().map(|x| -x).collect();
                let (coeffs, _) = a_mat.solve_integer(&neg)?;
                for (j, c) in coeffs.iter().enumerate() {
                    if c.is_negative() {
                        let col = t.column(j);
                        for i in 0..t.dim() {
                            shift[i] += -c.clone() * &col[i];
                        }
                    }
                }
            }
        }
        Some(shift)
    }
}

/// Convenience: subtraction of parameters.
pub fn parameter_sub(a: &[Rat], b: &[Rat]) -> Parameter {
    rat_vec_sub(a, b)
}

/// Integer difference of parameters when it exists.
pub fn integer_difference(a: &[Rat], b: &[Rat]) -> Option<Vec<BigInt>> {
    rat_vec_to_int(&rat_vec_sub(a, b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cone::build_toric;
    use crate::matrix::IntMatrix;
    use crate::rat::parse_rat_vec;

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

    fn sigma3_face(e: &Engine) -> usize {
        // the ray through (2,0): the facet containing column index 2
        e.toric()
            .facets
            .iter()
            .find(|f| f.column_set.contains(&2))
            .unwrap()
            .face_id
    }

    fn member_strings(e: &ESet) -> Vec<String> {
        e.members.iter().map(|m| crate::rat::format_rat_vec(m)).collect()
    }

    #[test]
    fn e_sets_on_the_axis_ray() {
        let engine = plane_curve_engine();
        let cl = Classifier::new(&engine);
        let s3 = sigma3_face(&engine);
        // alpha = 0: singleton zero coset on every face
        let zero = parse_rat_vec("0,0").unwrap();
        for f in &engine.toric().faces {
            let e = cl.e_tau(&zero, f.id);
            assert_eq!(member_strings(&e), vec!["0".to_string()], "face {}", f.label);
        }
        // alpha = (1,1): full on the axis facet
        let a = parse_rat_vec("1,1").unwrap();
        let e = cl.e_tau(&a, s3);
        assert!(e.is_full());
        assert_eq!(member_strings(&e), vec!["0".to_string(), "(1,0)".to_string()]);
        // alpha = (1,0): only the shifted coset
        let a = parse_rat_vec("1,0").unwrap();
        let e = cl.e_tau(&a, s3);
        assert_eq!(member_strings(&e), vec!["(1,0)".to_string()]);
        // alpha = (0,-1): empty below the axis
        let a = parse_rat_vec("0,-1").unwrap();
        let e = cl.e_tau(&a, s3);
        assert!(e.is_empty());
    }

    #[test]
    fn e_set_undefined_off_the_span() {
        let engine = plane_curve_engine();
        let cl = Classifier::new(&engine);
        let s3 = sigma3_face(&engine);
        // (x, 1/3) is not in (axis span) + Z^2
        let a = parse_rat_vec("0,1/3").unwrap();
        let e = cl.e_tau(&a, s3);
        assert!(!e.defined);
        assert!(e.is_empty());
        // but (1/3, 0) is in the span itself
        let a = parse_rat_vec("1/3,0").unwrap();
        let e = cl.e_tau(&a, s3);
        assert!(e.defined);
        assert_eq!(e.members.len(), 1);
    }

    #[test]
    fn signature_equivalence_on_examples() {
        let engine = plane_curve_engine();
        let cl = Classifier::new(&engine);
        let p = |s: &str| parse_rat_vec(s).unwrap();
        assert!(cl.equivalent(&p("1,1"), &p("3,1")));
        assert!(!cl.equivalent(&p("0,0"), &p("1,0")));
        assert!(!cl.equivalent(&p("0,0"), &p("1/2,0")));
        // order: the zero class sits below the full class
        assert!(cl.preceq(&p("0,0"), &p("1,1")));
        assert!(!cl.preceq(&p("1,1"), &p("0,0")));
        assert!(cl.preceq(&p("1,1"), &p("1,1")));
    }

    #[test]
    fn face_set_and_extremeness() {
        let engine = plane_curve_engine();
        let cl = Classifier::new(&engine);
        let p = |s: &str| parse_rat_vec(s).unwrap();
        assert!(cl.is_extreme(&p("1,1")));
        assert!(!cl.is_extreme(&p("0,0")));
        assert!(!cl.is_extreme(&p("1,0")));
        assert!(cl.is_extreme(&p("0,-1")));

        let engine = scored_3d_engine();
        let cl = Classifier::new(&engine);
        let alpha = p("0,1,0");
        let fs = cl.face_set(&alpha);
        let t = engine.toric();
        // the two slab facets qualify, the gap/negative facets do not
        let labels: BTreeSet<String> = fs.iter().map(|&id| t.faces[id].label.clone()).collect();
        assert!(labels.contains("sigma123"));
        assert!(labels.contains("sigma456"));
        assert!(labels.contains("cone"));
        assert!(!labels.contains("sigma14"));
        assert!(!labels.contains("sigma36"));
        assert!(cl.is_extreme(&alpha));
    }

    #[test]
    fn classify_integer_coset_of_plane_curve() {
        let engine = plane_curve_engine();
        let cl = Classifier::new(&engine);
        let w = Window::with_bound(engine.toric(), BigInt::from(12));
        let res = cl.classify_coset(&parse_rat_vec("0,0").unwrap(), &w);
        assert!(res.stabilized);
        assert_eq!(res.classes.len(), 8);
    }

    #[test]
    fn classify_half_integer_coset_of_plane_curve() {
        let engine = plane_curve_engine();
        let cl = Classifier::new(&engine);
        let w = Window::with_bound(engine.toric(), BigInt::from(12));
        let res = cl.classify_coset(&parse_rat_vec("1/2,0").unwrap(), &w);
        assert!(res.stabilized);
        assert_eq!(res.classes.len(), 8);
    }

    #[test]
    fn non_integral_difference_never_precedes() {
        let engine = plane_curve_engine();
        let cl = Classifier::new(&engine);
        let p = |s: &str| parse_rat_vec(s).unwrap();
        assert!(!cl.preceq(&p("0,0"), &p("1/2,0")));
        assert!(!cl.preceq(&p("1/2,0"), &p("0,0")));
    }

    #[test]
    fn saturated_simplicial_classes_follow_sign_patterns() {
        let t = build_toric(IntMatrix::from_i64(2, 3, &[1, 0, 1, 0, 1, 1])).unwrap();
        let engine = Engine::new(t).unwrap();
        let cl = Classifier::new(&engine);
        let w = Window::with_bound(engine.toric(), BigInt::from(10));
        let res = cl.classify_coset(&parse_rat_vec("0,0").unwrap(), &w);
        assert!(res.stabilized);
        assert_eq!(res.classes.len(), 4, "one class per facet sign pattern");
        for c in &res.classes {
            assert!(c.extreme);
            // all members share the facet sign pattern of the representative
            let t = engine.toric();
            for f in &t.facets {
                let rep_sign = !t.facet_value_rat(f.id, &c.representative).is_negative();
                for m in &c.members_in_window {
                    assert_eq!(!t.facet_value_rat(f.id, m).is_negative(), rep_sign);
                }
            }
        }
    }

    #[test]
    fn lambda_sets_on_plane_curve() {
        let engine = plane_curve_engine();
        let cl = Classifier::new(&engine);
        let w = Window::with_bound(engine.toric(), BigInt::from(10));
        let zero = parse_rat_vec("0,0").unwrap();
        let lam = cl.lambda_set(&zero, &[BigInt::from(2), BigInt::zero()], &w);
        assert!(!lam.is_empty());
        for b in &lam {
            assert!(b[1].is_zero());
            assert!(b[0].denom().is_one());
            assert!(!b[0].numer().is_negative());
            assert!((b[0].numer().clone() % BigInt::from(2)).is_zero());
        }
        let lam = cl.lambda_set(&zero, &[BigInt::from(1), BigInt::zero()], &w);
        assert!(lam.is_empty());
        // a = 0 returns the class itself
        let lam = cl.lambda_set(&zero, &[BigInt::zero(), BigInt::zero()], &w);
        for b in &lam {
            assert!(cl.equivalent(b, &zero));
        }
    }

    #[test]
    fn translate_check_preconditions() {
        let engine = plane_curve_engine();
        let cl = Classifier::new(&engine);
        let zero = parse_rat_vec("0,0").unwrap();
        // mu = 0 passes trivially
        assert!(cl.translate_check(&zero, &zero).unwrap());
        // any nonzero mu violates the stratum condition at alpha = 0
        let mu = parse_rat_vec("1,0").unwrap();
        assert!(matches!(
            cl.translate_check(&zero, &mu),
            Err(Error::PreconditionViolated(_))
        ));
    }

    #[test]
    fn translate_check_on_smooth_stratum() {
        let t = build_toric(IntMatrix::from_i64(
            3,
            4,
            &[1, 0, 0, 1, 0, 1, 0, 1, 0, 0, 1, -1],
        ))
        .unwrap();
        let engine = Engine::new(t).unwrap();
        let cl = Classifier::new(&engine);
        // alpha with integral values exactly on the facets s2 and s1+s3
        let alpha = parse_rat_vec("1/3,0,-1/3").unwrap();
        let mu = parse_rat_vec("1,0,-1").unwrap();
        assert!(cl.translate_check(&alpha, &mu).unwrap());
        let mu2 = parse_rat_vec("2,0,-2").unwrap();
        assert!(cl.translate_check(&alpha, &mu2).unwrap());
    }

    #[test]
    fn zero_in_all_esets_iff_member() {
        let engine = plane_curve_engine();
        let cl = Classifier::new(&engine);
        let t = engine.toric();
        let w = Window::with_bound(t, BigInt::from(6));
        let zero_vec = vec![Rat::zero(); 2];
        for p in engine.window_points(&w) {
            let alpha: Vec<Rat> = p.iter().map(rat_from_int).collect();
            let sig = cl.signature(&alpha);
            let zero_in_all = sig.esets.iter().all(|e| e.members.contains(&zero_vec));
            assert_eq!(zero_in_all, engine.member_verdict(&p), "at {:?}", p);
        }
    }
}
