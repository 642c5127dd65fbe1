//! Certified spectral cycles: prime components with integer multiplicities,
//! local cycles at a point, Weyl verdicts, and push-forwards of cycles
//! under polynomial maps.
//!
//! Every prime carries a certificate of how its primality was established;
//! multiplicities over positive-dimensional components are computed at two
//! deterministically chosen generic rational samples and must agree.

use std::fmt;

use crate::defaults::{DEFAULT_MAX_K, DEFAULT_SAMPLE_BUDGET};
use crate::error::{Error, Result};
use crate::fpmodule::{local_dim_at_point, FPModule, MODULE_ORDER};
use crate::groebner::{
    dimension, eliminate, ideal_groebner, ideal_intersect, in_radical, k_subsets, GroebnerBasis,
};
use crate::matrix::{rational_joint_spectrum, QMatrix};
use crate::poly::{format_point, Monomial, Poly, RingSpec};
use crate::scalar::Scalar;
use crate::spectral::{chi_prime, stalk_homology, support_data, OperatorModel, SupportReport};

/// How the primality of a component was established.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PrimeKind {
    /// Generated by a set of distinct variables (or empty: the zero ideal).
    MonomialVars,
    /// Generated by affine-linear polynomials.
    Linear,
    /// A single generator, irreducible because it is linear in some
    /// variable with a constant coefficient or a nonzero constant remainder.
    PrincipalIrreducible,
    /// Primality asserted by the user; the note records the provenance.
    UserTrusted,
}

impl fmt::Display for PrimeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            PrimeKind::MonomialVars => "monomial-variables",
            PrimeKind::Linear => "linear",
            PrimeKind::PrincipalIrreducible => "principal-irreducible",
            PrimeKind::UserTrusted => "user-trusted",
        };
        f.write_str(s)
    }
}

/// A prime ideal with a primality certificate, held as its reduced basis.
#[derive(Clone, Debug)]
pub struct PrimeCandidate {
    ring: RingSpec,
    generators: Vec<Poly>,
    gb: GroebnerBasis,
    kind: PrimeKind,
    dimension: i64,
    note: Option<String>,
}

impl PartialEq for PrimeCandidate {
    fn eq(&self, other: &Self) -> bool {
        self.ring.vars() == other.ring.vars() && self.generators == other.generators
    }
}

impl Eq for PrimeCandidate {}

impl PrimeCandidate {
    /// Certifies a prime from generators, rejecting visibly non-prime
    /// ideals and anything it cannot certify structurally.
    pub fn new(ring: &RingSpec, gens: &[Poly]) -> Result<Self> {
        Self::build(ring, gens, None)
    }

    /// Accepts generators on the user's authority when structural
    /// certification fails; the note records why they are trusted.
    pub fn trusted(ring: &RingSpec, gens: &[Poly], note: &str) -> Result<Self> {
        Self::build(ring, gens, Some(note.to_string()))
    }

    fn build(ring: &RingSpec, gens: &[Poly], note: Option<String>) -> Result<Self> {
        for g in gens {
            ring.check_same(g.ring())?;
        }
        let nonzero: Vec<Poly> = gens.iter().filter(|g| !g.is_zero()).cloned().collect();
        let gb = ideal_groebner(ring, &nonzero, MODULE_ORDER)?;
        if gb.contains_one() {
            return Err(Error::BadCandidate("the unit ideal is not prime".into()));
        }
        let basis = gb.polys();
        // A reduced basis containing a non-variable monomial proves the
        // ideal is not prime, so this rejection applies even when trusted.
        for p in &basis {
            if p.num_terms() == 1 && p.total_degree().unwrap_or(0) >= 2 {
                return Err(Error::BadCandidate(format!(
                    "{} generates a visibly non-prime ideal",
                    p
                )));
            }
        }
        let dim = dimension(&gb);
        let kind = if basis.iter().all(|p| p.num_terms() <= 1) {
            PrimeKind::MonomialVars
        } else if basis.iter().all(|p| p.total_degree().unwrap_or(0) <= 1) {
            PrimeKind::Linear
        } else if basis.len() == 1 && principal_irreducible_var(&basis[0]).is_some() {
            PrimeKind::PrincipalIrreducible
        } else if note.is_some() {
            PrimeKind::UserTrusted
        } else {
            return Err(Error::BadCandidate(format!(
                "cannot certify ({}) as prime; mark it trusted to assert it",
                join_polys(&basis)
            )));
        };
        Ok(PrimeCandidate {
            ring: ring.clone(),
            generators: basis,
            gb,
            kind,
            dimension: dim,
            note,
        })
    }

    pub fn ring(&self) -> &RingSpec {
        &self.ring
    }

    /// The reduced basis of the ideal.
    pub fn generators(&self) -> &[Poly] {
        &self.generators
    }

    pub fn kind(&self) -> PrimeKind {
        self.kind
    }

    /// Dimension of the component's variety.
    pub fn dimension(&self) -> i64 {
        self.dimension
    }

    pub fn note(&self) -> Option<&str> {
        self.note.as_deref()
    }

    /// Whether the point lies on this component.
    pub fn contains_point(&self, point: &[Scalar]) -> Result<bool> {
        for g in &self.generators {
            if !g.eval(point)?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Whether the polynomial lies in the ideal.
    pub fn contains_poly(&self, p: &Poly) -> bool {
        self.gb.poly_normal_form(p).is_zero()
    }

    /// Whether every generator of `other` lies in this ideal.
    pub fn contains_ideal_of(&self, other: &PrimeCandidate) -> bool {
        other.generators.iter().all(|g| self.contains_poly(g))
    }

    fn sort_key(&self) -> (i64, String) {
        (-self.dimension, self.to_string())
    }
}

impl fmt::Display for PrimeCandidate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.generators.is_empty() {
            return f.write_str("(0)");
        }
        write!(f, "({})", join_polys(&self.generators))
    }
}

fn join_polys(polys: &[Poly]) -> String {
    polys
        .iter()
        .map(|p| p.to_string())
        .collect::<Vec<_>>()
        .join(", ")
}

/// The variable making a single generator visibly irreducible: the
/// generator is linear in it with either a constant coefficient or a
/// nonzero constant remainder.
fn principal_irreducible_var(p: &Poly) -> Option<usize> {
    let n = p.ring().num_vars();
    for v in 0..n {
        if p.degree_in(v) != 1 {
            continue;
        }
        if let Some((coeff, rest)) = p.split_linear_in(v) {
            if coeff.is_constant() {
                return Some(v);
            }
            if rest.is_constant() && !rest.is_zero() {
                return Some(v);
            }
        }
    }
    None
}

/// One component of a cycle: a certified prime with an integer coefficient.
#[derive(Clone, Debug, PartialEq)]
pub struct CycleTerm {
    pub prime: PrimeCandidate,
    pub coefficient: i64,
}

/// A formal integer combination of certified primes, kept in canonical
/// order (dimension descending, then display order) with nonzero
/// coefficients.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct Cycle {
    pub terms: Vec<CycleTerm>,
}

impl Cycle {
    pub fn empty() -> Self {
        Cycle { terms: Vec::new() }
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Adds a multiple of a prime, merging with an existing term.
    pub fn add(&mut self, prime: PrimeCandidate, coefficient: i64) {
        if coefficient == 0 {
            return;
        }
        if let Some(term) = self.terms.iter_mut().find(|t| t.prime == prime) {
            term.coefficient += coefficient;
        } else {
            self.terms.push(CycleTerm { prime, coefficient });
        }
        self.terms.retain(|t| t.coefficient != 0);
        self.sort();
    }

    fn sort(&mut self) {
        self.terms.sort_by_key(|t| t.prime.sort_key());
    }

    /// The part of the cycle in the highest dimension present.
    pub fn top_dimensional(&self) -> Cycle {
        let Some(top) = self.terms.iter().map(|t| t.prime.dimension()).max() else {
            return Cycle::empty();
        };
        Cycle {
            terms: self
                .terms
                .iter()
                .filter(|t| t.prime.dimension() == top)
                .cloned()
                .collect(),
        }
    }

    /// Terms whose component passes through the point.
    pub fn through_point(&self, point: &[Scalar]) -> Result<Cycle> {
        let mut terms = Vec::new();
        for t in &self.terms {
            if t.prime.contains_point(point)? {
                terms.push(t.clone());
            }
        }
        Ok(Cycle { terms })
    }
}

impl fmt::Display for Cycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let joined = self
            .terms
            .iter()
            .map(|t| format!("{}*{}", t.coefficient, t.prime))
            .collect::<Vec<_>>()
            .join(" + ");
        f.write_str(&joined)
    }
}

/// Budget and determinism knobs for generic sampling and stabilization.
#[derive(Clone, Debug)]
pub struct SampleConfig {
    /// How many stream indices to try before giving up.
    pub budget: usize,
    /// Starting offset into the deterministic sample stream.
    pub offset: usize,
    /// Thickening budget for stabilized local dimensions.
    pub max_k: usize,
}

impl Default for SampleConfig {
    fn default() -> Self {
        SampleConfig {
            budget: DEFAULT_SAMPLE_BUDGET,
            offset: 0,
            max_k: DEFAULT_MAX_K,
        }
    }
}

/// The i-th rational in a fixed enumeration of Q: zero first, then for each
/// weight |p|+q ascending, the reduced fractions p/q with p descending,
/// positive before negative.
pub fn rational_by_index(i: usize) -> Scalar {
    if i == 0 {
        return Scalar::zero();
    }
    let mut remaining = i - 1;
    let mut w = 2usize;
    loop {
        for p in (1..w).rev() {
            let q = w - p;
            if num_integer::gcd(p, q) != 1 {
                continue;
            }
            if remaining == 0 {
                return Scalar::from_ratio(p as i64, q as i64);
            }
            remaining -= 1;
            if remaining == 0 {
                return Scalar::from_ratio(-(p as i64), q as i64);
            }
            remaining -= 1;
        }
        w += 1;
    }
}

fn visit_compositions(
    parts: usize,
    total: usize,
    prefix: &mut Vec<usize>,
    visit: &mut dyn FnMut(&[usize]) -> bool,
) -> bool {
    if parts == 1 {
        prefix.push(total);
        let stop = visit(prefix);
        prefix.pop();
        return stop;
    }
    for first in 0..=total {
        prefix.push(first);
        let stop = visit_compositions(parts - 1, total - first, prefix, visit);
        prefix.pop();
        if stop {
            return true;
        }
    }
    false
}

/// The idx-th tuple of m rationals, enumerated by total stream weight and
/// lexicographically within a weight. For m = 0 only index 0 exists.
pub fn rational_tuple(m: usize, idx: usize) -> Option<Vec<Scalar>> {
    if m == 0 {
        return (idx == 0).then(Vec::new);
    }
    let mut seen = 0usize;
    let mut found: Option<Vec<Scalar>> = None;
    for total in 0..=idx {
        let mut prefix = Vec::new();
        let stop = visit_compositions(m, total, &mut prefix, &mut |indices| {
            if seen == idx {
                found = Some(indices.iter().map(|&i| rational_by_index(i)).collect());
                true
            } else {
                seen += 1;
                false
            }
        });
        if stop {
            break;
        }
    }
    found
}

/// Rational points on the component produced by stream index `idx`; an
/// empty list means the index yields nothing for this component.
fn candidate_points(prime: &PrimeCandidate, idx: usize) -> Result<Vec<Vec<Scalar>>> {
    let ring = prime.ring();
    let n = ring.num_vars();
    match prime.kind() {
        PrimeKind::MonomialVars => {
            let fixed: Vec<usize> = prime
                .generators()
                .iter()
                .map(|g| {
                    let (m, _) = g.terms().next().expect("nonzero generator");
                    m.support()[0]
                })
                .collect();
            let free: Vec<usize> = (0..n).filter(|v| !fixed.contains(v)).collect();
            let Some(values) = rational_tuple(free.len(), idx) else {
                return Ok(Vec::new());
            };
            let mut pt = vec![Scalar::zero(); n];
            for (v, val) in free.iter().zip(values) {
                pt[*v] = val;
            }
            Ok(vec![pt])
        }
        PrimeKind::Linear => {
            let rows = prime.generators().len();
            let mut a = QMatrix::zero(rows, n);
            let mut b = vec![Scalar::zero(); rows];
            for (i, g) in prime.generators().iter().enumerate() {
                for v in 0..n {
                    a.set(i, v, g.coeff(&Monomial::var(n, v)));
                }
                b[i] = -g.constant_term();
            }
            let particular = a.solve(&b)?.ok_or_else(|| {
                Error::BadCandidate("inconsistent linear component".into())
            })?;
            let kernel = a.kernel_basis();
            let Some(params) = rational_tuple(kernel.dim(), idx) else {
                return Ok(Vec::new());
            };
            let mut pt = particular;
            for (t, vec) in params.iter().zip(kernel.basis()) {
                for c in 0..n {
                    pt[c] = &pt[c] + &(t * &vec[c]);
                }
            }
            Ok(vec![pt])
        }
        PrimeKind::PrincipalIrreducible => {
            let g = &prime.generators()[0];
            let v = principal_irreducible_var(g).expect("certified principal generator");
            let (coeff, rest) = g.split_linear_in(v).expect("linear in the split variable");
            let others: Vec<usize> = (0..n).filter(|&i| i != v).collect();
            let Some(values) = rational_tuple(others.len(), idx) else {
                return Ok(Vec::new());
            };
            let mut pt = vec![Scalar::zero(); n];
            for (i, val) in others.iter().zip(values) {
                pt[*i] = val;
            }
            let c = coeff.eval(&pt)?;
            if c.is_zero() {
                return Ok(Vec::new());
            }
            let r = rest.eval(&pt)?;
            pt[v] = -(r / c);
            Ok(vec![pt])
        }
        PrimeKind::UserTrusted => {
            let r = prime.dimension().max(0) as usize;
            if r == 0 {
                if idx != 0 {
                    return Ok(Vec::new());
                }
                return rational_points_of_zero_dim(ring, prime.generators());
            }
            let Some(values) = rational_tuple(r, idx) else {
                return Ok(Vec::new());
            };
            for subset in k_subsets(n, r) {
                let mut gens = prime.generators().to_vec();
                for (v, val) in subset.iter().zip(&values) {
                    gens.push(
                        Poly::var(ring, *v).sub(&Poly::constant(ring, val.clone())),
                    );
                }
                let gb = ideal_groebner(ring, &gens, MODULE_ORDER)?;
                if gb.contains_one() || dimension(&gb) != 0 {
                    continue;
                }
                match rational_points_of_zero_dim(ring, &gb.polys()) {
                    Ok(pts) if !pts.is_empty() => return Ok(pts),
                    Ok(_) => continue,
                    Err(Error::IrrationalSpectrum(_)) => continue,
                    Err(e) => return Err(e),
                }
            }
            Ok(Vec::new())
        }
    }
}

/// All rational points of a zero-dimensional ideal, sorted.
fn rational_points_of_zero_dim(ring: &RingSpec, gens: &[Poly]) -> Result<Vec<Vec<Scalar>>> {
    let m = FPModule::quotient_ring(ring, gens)?;
    let real = m.realization()?;
    if real.dim() == 0 {
        return Ok(Vec::new());
    }
    let spec = rational_joint_spectrum(real.actions())?;
    Ok(spec.into_iter().map(|(pt, _)| pt).collect())
}

/// The unique rational point of a zero-dimensional prime.
pub fn point_of_zero_dim_prime(prime: &PrimeCandidate) -> Result<Vec<Scalar>> {
    let pts = rational_points_of_zero_dim(prime.ring(), prime.generators())?;
    match pts.len() {
        1 => Ok(pts.into_iter().next().expect("one point")),
        0 => Err(Error::IrrationalSpectrum(
            "zero-dimensional component has no rational point".into(),
        )),
        _ => Err(Error::BadCandidate(
            "zero-dimensional component has several points and is not prime".into(),
        )),
    }
}

/// The maximal ideal of a rational point, as a certified linear prime.
pub fn point_prime(ring: &RingSpec, point: &[Scalar]) -> Result<PrimeCandidate> {
    let gens: Vec<Poly> = (0..ring.num_vars())
        .map(|i| Poly::var(ring, i).sub(&Poly::constant(ring, point[i].clone())))
        .collect();
    PrimeCandidate::new(ring, &gens)
}

/// Distinct generic rational samples on a component, skipping points the
/// rejection predicate refuses.
pub fn generic_samples(
    prime: &PrimeCandidate,
    count: usize,
    cfg: &SampleConfig,
    reject: &mut dyn FnMut(&[Scalar]) -> Result<bool>,
) -> Result<Vec<Vec<Scalar>>> {
    let mut out: Vec<Vec<Scalar>> = Vec::new();
    for step in 0..cfg.budget {
        for pt in candidate_points(prime, cfg.offset + step)? {
            if out.contains(&pt) || reject(&pt)? {
                continue;
            }
            out.push(pt);
            if out.len() == count {
                return Ok(out);
            }
        }
    }
    Err(Error::NotGeneric(format!(
        "sample budget {} exhausted on component {}",
        cfg.budget, prime
    )))
}

/// The support of a model together with its certified components: derived
/// structurally when possible, otherwise validated against the declared
/// candidates.
pub fn components_with_support(
    model: &OperatorModel,
    candidates: &[PrimeCandidate],
) -> Result<(SupportReport, Vec<PrimeCandidate>)> {
    let support = support_data(model)?;
    let ring = model.ring().clone();
    if !candidates.is_empty() {
        let comps = validate_candidates(&ring, &support.annihilator, candidates)?;
        return Ok((support, comps));
    }
    if support.dimension < 0 {
        return Ok((support, Vec::new()));
    }
    if support.dimension == 0 {
        let pts = rational_points_of_zero_dim(&ring, &support.annihilator)?;
        let mut comps = Vec::with_capacity(pts.len());
        for pt in &pts {
            comps.push(point_prime(&ring, pt)?);
        }
        return Ok((support, comps));
    }
    if let Some(var_comps) = &support.monomial_components {
        let mut comps = Vec::with_capacity(var_comps.len());
        for gens in var_comps {
            comps.push(PrimeCandidate::new(&ring, gens)?);
        }
        return Ok((support, comps));
    }
    let basis = &support.annihilator;
    let single_certifiable =
        basis.len() == 1 || basis.iter().all(|p| p.total_degree().unwrap_or(0) <= 1);
    if single_certifiable {
        if let Ok(p) = PrimeCandidate::new(&ring, basis) {
            return Ok((support, vec![p]));
        }
    }
    Err(Error::ComponentsUnknown(format!(
        "the support ({}) is not visibly a union of certified primes; declare candidate components",
        join_polys(basis)
    )))
}

/// The certified component primes of a model's support, either derived
/// structurally or validated from user candidates (which must contain the
/// annihilator, be minimal, and jointly cover the support).
pub fn support_components(
    model: &OperatorModel,
    candidates: &[PrimeCandidate],
) -> Result<Vec<PrimeCandidate>> {
    components_with_support(model, candidates).map(|(_, c)| c)
}

fn validate_candidates(
    ring: &RingSpec,
    annihilator: &[Poly],
    candidates: &[PrimeCandidate],
) -> Result<Vec<PrimeCandidate>> {
    for cand in candidates {
        ring.check_same(cand.ring())?;
        for g in annihilator {
            if !cand.contains_poly(g) {
                return Err(Error::BadCandidate(format!(
                    "candidate {} does not lie inside the support",
                    cand
                )));
            }
        }
    }
    // Keep one copy of each, and only ideal-minimal candidates.
    let mut minimal: Vec<PrimeCandidate> = Vec::new();
    for cand in candidates {
        if minimal.contains(cand) {
            continue;
        }
        let redundant = candidates
            .iter()
            .any(|other| other != cand && cand.contains_ideal_of(other));
        if !redundant {
            minimal.push(cand.clone());
        }
    }
    // The kept candidates must jointly cover the support.
    let mut inter: Option<Vec<Poly>> = None;
    for cand in &minimal {
        inter = Some(match inter {
            None => cand.generators().to_vec(),
            Some(acc) => ideal_intersect(ring, &acc, cand.generators())?,
        });
    }
    for g in inter.unwrap_or_default() {
        if !in_radical(ring, annihilator, &g)? {
            return Err(Error::BadCandidate(
                "candidates do not cover the whole support".into(),
            ));
        }
    }
    minimal.sort_by_key(|p| p.sort_key());
    Ok(minimal)
}

/// A coordinate frame of the given size that is transversal at the point:
/// cutting those coordinates leaves finite length locally.
pub fn find_frame(
    ring: &RingSpec,
    annihilator: &[Poly],
    point: &[Scalar],
    size: usize,
    max_k: usize,
) -> Result<Vec<usize>> {
    for subset in k_subsets(ring.num_vars(), size) {
        let mut cut = annihilator.to_vec();
        for &v in &subset {
            cut.push(Poly::var(ring, v).sub(&Poly::constant(ring, point[v].clone())));
        }
        let m = FPModule::quotient_ring(ring, &cut)?;
        match local_dim_at_point(&m, point, max_k) {
            Ok(_) => return Ok(subset),
            Err(Error::InfiniteDimensional(_))
            | Err(Error::NotCofinite(_))
            | Err(Error::NoStabilization(_)) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(Error::NotACoordinateSystem(format!(
        "no transversal coordinate frame of size {} at {}",
        size,
        format_point(point)
    )))
}

/// The local index of a component from one sample on it: the exact ratio
/// of the model's local Euler characteristic to the reduced component's
/// own, over a shared transversal coordinate frame.
pub fn l_via_multiplicity(
    model: &OperatorModel,
    prime: &PrimeCandidate,
    sample: &[Scalar],
    frame: &[usize],
    max_k: usize,
) -> Result<i64> {
    if !prime.contains_point(sample)? {
        return Err(Error::NotOnComponent(format!(
            "{} does not vanish at {}",
            prime,
            format_point(sample)
        )));
    }
    let chi_model = chi_prime(model, sample, frame, max_k)?;
    let comp_module = FPModule::quotient_ring(model.ring(), prime.generators())?;
    let comp_model = OperatorModel::module_tuple(comp_module);
    let chi_comp = chi_prime(&comp_model, sample, frame, max_k)?;
    if chi_comp <= 0 {
        return Err(Error::NotGeneric(format!(
            "component multiplicity {} at {} is not positive",
            chi_comp,
            format_point(sample)
        )));
    }
    if chi_model % chi_comp != 0 {
        return Err(Error::NotGeneric(format!(
            "length ratio {}/{} at {} is not integral",
            chi_model,
            chi_comp,
            format_point(sample)
        )));
    }
    Ok(chi_model / chi_comp)
}

/// Local index at one generic sample, finding a transversal frame first.
fn coefficient_at_sample(
    model: &OperatorModel,
    annihilator: &[Poly],
    prime: &PrimeCandidate,
    sample: &[Scalar],
    cfg: &SampleConfig,
) -> Result<i64> {
    let ring = model.ring();
    let size = prime.dimension().max(0) as usize;
    let frame = find_frame(ring, annihilator, sample, size, cfg.max_k)?;
    l_via_multiplicity(model, prime, sample, &frame, cfg.max_k)
}

/// Generic multiplicity along a positive-dimensional component, computed at
/// two distinct generic samples that must agree; returns the samples used.
fn generic_coefficient(
    model: &OperatorModel,
    annihilator: &[Poly],
    prime: &PrimeCandidate,
    all_components: &[PrimeCandidate],
    cfg: &SampleConfig,
) -> Result<(i64, Vec<Vec<Scalar>>)> {
    let others: Vec<&PrimeCandidate> = all_components.iter().filter(|q| *q != prime).collect();
    let mut got: Vec<(Vec<Scalar>, i64)> = Vec::new();
    for step in 0..cfg.budget {
        for pt in candidate_points(prime, cfg.offset + step)? {
            if got.iter().any(|(p, _)| p == &pt) {
                continue;
            }
            let mut off_others = true;
            for q in &others {
                if q.contains_point(&pt)? {
                    off_others = false;
                    break;
                }
            }
            if !off_others {
                continue;
            }
            match coefficient_at_sample(model, annihilator, prime, &pt, cfg) {
                Ok(l) => {
                    got.push((pt, l));
                    if got.len() == 2 {
                        let (p0, l0) = &got[0];
                        let (p1, l1) = &got[1];
                        if l0 != l1 {
                            return Err(Error::GenericSampleDisagreement(format!(
                                "component {}: {} at {} vs {} at {}",
                                prime,
                                l0,
                                format_point(p0),
                                l1,
                                format_point(p1)
                            )));
                        }
                        let samples = vec![p0.clone(), p1.clone()];
                        return Ok((*l0, samples));
                    }
                }
                Err(Error::NotGeneric(_)) | Err(Error::NotACoordinateSystem(_)) => continue,
                Err(e) => return Err(e),
            }
        }
    }
    Err(Error::NotGeneric(format!(
        "sample budget {} exhausted on component {}",
        cfg.budget, prime
    )))
}

/// Multiplicity of the model at an isolated spectrum point: the
/// alternating sum of the local stalk dimensions there.
fn isolated_coefficient(model: &OperatorModel, point: &[Scalar], max_k: usize) -> Result<i64> {
    let stalks = stalk_homology(model, point)?;
    let mut l = 0i64;
    for (j, h) in stalks.iter().enumerate() {
        let d = local_dim_at_point(h, point, max_k)? as i64;
        if j % 2 == 0 {
            l += d;
        } else {
            l -= d;
        }
    }
    Ok(l)
}

/// The local cycle of a model at a point: component primes through the
/// point with their multiplicities. The flag is false when the point is
/// off the spectrum (and the cycle is then empty).
pub fn local_cycle(
    model: &OperatorModel,
    point: &[Scalar],
    candidates: &[PrimeCandidate],
    cfg: &SampleConfig,
) -> Result<(Cycle, bool)> {
    let (support, comps) = components_with_support(model, candidates)?;
    let mut through = Vec::new();
    for p in &comps {
        if p.contains_point(point)? {
            through.push(p.clone());
        }
    }
    if through.is_empty() {
        return Ok((Cycle::empty(), false));
    }
    let mut cycle = Cycle::empty();
    for p in &through {
        let l = if p.dimension() <= 0 {
            isolated_coefficient(model, point, cfg.max_k)?
        } else {
            generic_coefficient(model, &support.annihilator, p, &comps, cfg)?.0
        };
        cycle.add(p.clone(), l);
    }
    Ok((cycle, true))
}

/// One component of the global spectral picture, with the samples that
/// certified its coefficient.
#[derive(Clone, Debug)]
pub struct PictureTerm {
    pub prime: PrimeCandidate,
    pub coefficient: i64,
    pub samples: Vec<Vec<Scalar>>,
}

/// The global cycle of a model, with sampling provenance per component
/// (zero coefficients are kept here as records; `cycle` drops them).
#[derive(Clone, Debug)]
pub struct SpectralPicture {
    pub terms: Vec<PictureTerm>,
}

impl SpectralPicture {
    pub fn cycle(&self) -> Cycle {
        let mut c = Cycle::empty();
        for t in &self.terms {
            c.add(t.prime.clone(), t.coefficient);
        }
        c
    }
}

/// Computes the full spectral picture: every component of the support with
/// its generic multiplicity.
pub fn spectral_picture(
    model: &OperatorModel,
    candidates: &[PrimeCandidate],
    cfg: &SampleConfig,
) -> Result<SpectralPicture> {
    let (support, comps) = components_with_support(model, candidates)?;
    let mut terms = Vec::with_capacity(comps.len());
    for p in &comps {
        let (coefficient, samples) = if p.dimension() <= 0 {
            let pt = point_of_zero_dim_prime(p)?;
            let l = isolated_coefficient(model, &pt, cfg.max_k)?;
            (l, vec![pt])
        } else {
            generic_coefficient(model, &support.annihilator, p, &comps, cfg)?
        };
        terms.push(PictureTerm {
            prime: p.clone(),
            coefficient,
            samples,
        });
    }
    terms.sort_by_key(|t| t.prime.sort_key());
    Ok(SpectralPicture { terms })
}

/// Verdict on whether a point is a Weyl point — a spectrum point whose
/// local indexes all vanish — with per-component witnesses.
#[derive(Clone, Debug)]
pub struct WeylReport {
    pub on_spectrum: bool,
    /// A zero-dimensional component passes through the point. Isolated
    /// spectrum points are never Weyl points; their witness carries the
    /// dimension of the local cokernel stalk (the spectral subspace).
    pub isolated: bool,
    /// All local indexes at the point vanish (and the point is on the
    /// spectrum).
    pub is_weyl_point: bool,
    /// On the spectrum with some nonvanishing local index: the point
    /// survives in the Weyl part of the spectrum.
    pub in_weyl_spectrum: bool,
    /// Component primes through the point with their local indexes.
    pub witnesses: Vec<(PrimeCandidate, i64)>,
}

/// Tests whether a point is a Weyl point: on the spectrum with every
/// per-component local index zero. Isolated spectrum points are never
/// Weyl points; off-spectrum points are neither Weyl points nor in the
/// Weyl part of the spectrum.
pub fn weyl_test(
    model: &OperatorModel,
    point: &[Scalar],
    candidates: &[PrimeCandidate],
    cfg: &SampleConfig,
) -> Result<WeylReport> {
    let (support, comps) = components_with_support(model, candidates)?;
    let mut through = Vec::new();
    for p in &comps {
        if p.contains_point(point)? {
            through.push(p.clone());
        }
    }
    if through.is_empty() {
        return Ok(WeylReport {
            on_spectrum: false,
            isolated: false,
            is_weyl_point: false,
            in_weyl_spectrum: false,
            witnesses: Vec::new(),
        });
    }
    if let Some(p) = through.iter().find(|p| p.dimension() <= 0) {
        let stalks = stalk_homology(model, point)?;
        let l = local_dim_at_point(&stalks[0], point, cfg.max_k)? as i64;
        return Ok(WeylReport {
            on_spectrum: true,
            isolated: true,
            is_weyl_point: false,
            in_weyl_spectrum: true,
            witnesses: vec![(p.clone(), l)],
        });
    }
    let mut witnesses = Vec::with_capacity(through.len());
    let mut all_zero = true;
    for p in &through {
        let l = generic_coefficient(model, &support.annihilator, p, &comps, cfg)?.0;
        if l != 0 {
            all_zero = false;
        }
        witnesses.push((p.clone(), l));
    }
    Ok(WeylReport {
        on_spectrum: true,
        isolated: false,
        is_weyl_point: all_zero,
        in_weyl_spectrum: !all_zero,
        witnesses,
    })
}

/// The ring Q[w] or Q[w1..wk] that push-forwards land in.
pub fn pushforward_target_ring(k: usize) -> RingSpec {
    if k == 1 {
        RingSpec::new(vec!["w".to_string()])
    } else {
        RingSpec::new((1..=k).map(|i| format!("w{}", i)).collect::<Vec<_>>())
    }
}

/// Push-forward of one source component: its image prime and the generic
/// degree of the map over it, with the samples that certified the degree.
#[derive(Clone, Debug)]
pub struct PushTerm {
    pub source: PrimeCandidate,
    pub image: PrimeCandidate,
    pub degree: i64,
    pub samples: Vec<Vec<Scalar>>,
}

/// A pushed cycle together with per-component provenance.
#[derive(Clone, Debug)]
pub struct PushforwardReport {
    pub target: RingSpec,
    pub cycle: Cycle,
    pub terms: Vec<PushTerm>,
}

/// The closure of the image of a component under the map, certified
/// structurally when possible and otherwise carried as the image of a
/// certified prime.
pub fn image_prime(prime: &PrimeCandidate, f: &[Poly], target: &RingSpec) -> Result<PrimeCandidate> {
    let ring = prime.ring();
    let n = ring.num_vars();
    let k = f.len();
    let ext = ring.extend(target.vars().to_vec());
    let mut gens: Vec<Poly> = prime
        .generators()
        .iter()
        .map(|p| p.promote(&ext))
        .collect::<Result<_>>()?;
    for (j, fj) in f.iter().enumerate() {
        gens.push(Poly::var(&ext, n + j).sub(&fj.promote(&ext)?));
    }
    let elim = eliminate(&ext, &gens, n)?;
    let back: Vec<usize> = (n..n + k).collect();
    let image_gens: Vec<Poly> = elim
        .iter()
        .map(|p| p.project(&back))
        .collect::<Result<_>>()?;
    match PrimeCandidate::new(target, &image_gens) {
        Ok(p) => Ok(p),
        Err(Error::BadCandidate(_)) => PrimeCandidate::trusted(
            target,
            &image_gens,
            "closure of the image of a certified component",
        ),
        Err(e) => Err(e),
    }
}

fn push_prime(
    prime: &PrimeCandidate,
    f: &[Poly],
    target: &RingSpec,
    cfg: &SampleConfig,
) -> Result<(PrimeCandidate, i64, Vec<Vec<Scalar>>)> {
    let ring = prime.ring();
    let image = image_prime(prime, f, target)?;
    if image.dimension() < prime.dimension() {
        return Ok((image, 0, Vec::new()));
    }
    if image.dimension() <= 0 {
        // Count the fiber over the whole zero-dimensional image and
        // normalize by the image point's field degree; no sampling needed.
        let mut gens = prime.generators().to_vec();
        for q in image.generators() {
            gens.push(q.substitute(f, ring)?);
        }
        let fiber = FPModule::quotient_ring(ring, &gens)?;
        let d_fiber = fiber.vector_space_dim().map_err(|e| match e {
            Error::InfiniteStaircase(_) => {
                Error::NotFinite(format!("positive-dimensional fiber over the image of {}", prime))
            }
            other => other,
        })? as i64;
        let image_mod = FPModule::quotient_ring(target, image.generators())?;
        let d_point = image_mod.vector_space_dim()? as i64;
        if d_point == 0 || d_fiber % d_point != 0 {
            return Err(Error::NotGeneric(format!(
                "fiber count {} over {} does not divide by the point degree {}",
                d_fiber, image, d_point
            )));
        }
        return Ok((image, d_fiber / d_point, Vec::new()));
    }
    // Positive-dimensional image of the same dimension: the degree is the
    // fiber length over two agreeing generic samples.
    let mut got: Vec<(Vec<Scalar>, i64)> = Vec::new();
    for step in 0..cfg.budget {
        for mu in candidate_points(&image, cfg.offset + step)? {
            if got.iter().any(|(p, _)| p == &mu) {
                continue;
            }
            let mut gens = prime.generators().to_vec();
            for (j, fj) in f.iter().enumerate() {
                gens.push(fj.sub(&Poly::constant(ring, mu[j].clone())));
            }
            let fiber = FPModule::quotient_ring(ring, &gens)?;
            match fiber.vector_space_dim() {
                Ok(0) => continue,
                Ok(d) => {
                    got.push((mu, d as i64));
                    if got.len() == 2 {
                        let (p0, d0) = &got[0];
                        let (p1, d1) = &got[1];
                        if d0 != d1 {
                            return Err(Error::GenericSampleDisagreement(format!(
                                "push-forward of {}: degree {} at {} vs {} at {}",
                                prime,
                                d0,
                                format_point(p0),
                                d1,
                                format_point(p1)
                            )));
                        }
                        let samples = vec![p0.clone(), p1.clone()];
                        return Ok((image, *d0, samples));
                    }
                }
                Err(Error::InfiniteStaircase(_)) => continue,
                Err(e) => return Err(e),
            }
        }
    }
    Err(Error::NotGeneric(format!(
        "sample budget {} exhausted pushing component {}",
        cfg.budget, prime
    )))
}

/// Push-forward of a cycle under a polynomial map into Q[w1..wk], term by
/// term: image primes weighted by the generic fiber degree, with
/// dimension-dropping components contributing zero.
pub fn pushforward_cycle(cycle: &Cycle, f: &[Poly], cfg: &SampleConfig) -> Result<PushforwardReport> {
    if f.is_empty() {
        return Err(Error::ShapeMismatch("push-forward needs at least one map component".into()));
    }
    let ring = f[0].ring().clone();
    for fj in f {
        ring.check_same(fj.ring())?;
    }
    let target = pushforward_target_ring(f.len());
    for name in target.vars() {
        if ring.var_index(name).is_some() {
            return Err(Error::Unsupported(format!(
                "source ring already uses the target variable name {}",
                name
            )));
        }
    }
    let mut out = Cycle::empty();
    let mut terms = Vec::with_capacity(cycle.terms.len());
    for term in &cycle.terms {
        ring.check_same(term.prime.ring())?;
        let (image, degree, samples) = push_prime(&term.prime, f, &target, cfg)?;
        if degree != 0 {
            out.add(image.clone(), term.coefficient * degree);
        }
        terms.push(PushTerm {
            source: term.prime.clone(),
            image,
            degree,
            samples,
        });
    }
    Ok(PushforwardReport {
        target,
        cycle: out,
        terms,
    })
}

/// Both sides of the local push-forward identity at a target point.
#[derive(Clone, Debug)]
pub struct FunctorialityReport {
    /// Rational preimages of the target point inside the support.
    pub preimages: Vec<Vec<Scalar>>,
    /// Top part at the target point of the pushed global cycle.
    pub pushed_side: Cycle,
    /// Sum over preimages of the pushed top part of the local cycle.
    pub local_side: Cycle,
    pub matches: bool,
}

/// Verifies, at one target point, that pushing the global cycle and then
/// localizing agrees with localizing at every preimage point and pushing
/// with local fiber multiplicities.
pub fn functoriality_check(
    model: &OperatorModel,
    f: &[Poly],
    mu0: &[Scalar],
    candidates: &[PrimeCandidate],
    cfg: &SampleConfig,
) -> Result<FunctorialityReport> {
    let m = model.tuple_module()?;
    let ring = m.ring().clone();
    if f.is_empty() || f.len() != mu0.len() {
        return Err(Error::ShapeMismatch(format!(
            "{} map components for {} target coordinates",
            f.len(),
            mu0.len()
        )));
    }
    for fj in f {
        ring.check_same(fj.ring())?;
    }
    let target = pushforward_target_ring(f.len());
    let fiber_exprs: Vec<Poly> = f
        .iter()
        .zip(mu0)
        .map(|(fj, v)| fj.sub(&Poly::constant(&ring, v.clone())))
        .collect();
    // The fiber of the support over the target point must be finite.
    let fiber_mod = m.quotient_by_ideal(&fiber_exprs)?;
    let real = fiber_mod.realization().map_err(|e| match e {
        Error::InfiniteStaircase(_) => Error::NotFinite(format!(
            "the fiber over {} is not finite",
            format_point(mu0)
        )),
        other => other,
    })?;
    let preimages: Vec<Vec<Scalar>> = if real.dim() == 0 {
        Vec::new()
    } else {
        rational_joint_spectrum(real.actions())
            .map_err(|e| match e {
                Error::IrrationalSpectrum(msg) => Error::IrrationalPreimage(msg),
                other => other,
            })?
            .into_iter()
            .map(|(pt, _)| pt)
            .collect()
    };
    // Pushed side: global picture, pushed, localized at the target point.
    let picture = spectral_picture(model, candidates, cfg)?;
    let pushed = pushforward_cycle(&picture.cycle(), f, cfg)?;
    let pushed_side = pushed.cycle.through_point(mu0)?.top_dimensional();
    // Local side: local top cycles at every preimage, pushed with local
    // fiber multiplicities.
    let mut local_side = Cycle::empty();
    for lambda in &preimages {
        let (local, _) = local_cycle(model, lambda, candidates, cfg)?;
        for term in local.top_dimensional().terms {
            let image = image_prime(&term.prime, f, &target)?;
            if image.dimension() != term.prime.dimension() {
                return Err(Error::NotFinite(format!(
                    "component {} collapses under the map near {}",
                    term.prime,
                    format_point(lambda)
                )));
            }
            let mut gens = term.prime.generators().to_vec();
            gens.extend(fiber_exprs.iter().cloned());
            let local_fiber = FPModule::quotient_ring(&ring, &gens)?;
            let freal = local_fiber.realization().map_err(|e| match e {
                Error::InfiniteStaircase(_) => Error::NotFinite(format!(
                    "the fiber of {} over {} is not finite",
                    term.prime,
                    format_point(mu0)
                )),
                other => other,
            })?;
            let d_local = if freal.dim() == 0 {
                0
            } else {
                freal.root_space(lambda)?.dim()
            } as i64;
            local_side.add(image, term.coefficient * d_local);
        }
    }
    let local_side = local_side.top_dimensional();
    let matches = pushed_side == local_side;
    Ok(FunctorialityReport {
        preimages,
        pushed_side,
        local_side,
        matches,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fpmodule::FPModule;

    fn r2() -> RingSpec {
        RingSpec::standard(2)
    }

    fn p(ring: &RingSpec, s: &str) -> Poly {
        Poly::parse(ring, s).unwrap()
    }

    fn s(n: i64) -> Scalar {
        Scalar::from_int(n)
    }

    fn module_model(gens: &[&str]) -> OperatorModel {
        let r = r2();
        let polys: Vec<Poly> = gens.iter().map(|g| p(&r, g)).collect();
        OperatorModel::module_tuple(FPModule::quotient_ring(&r, &polys).unwrap())
    }

    fn cfg() -> SampleConfig {
        SampleConfig::default()
    }

    #[test]
    fn certification_kinds() {
        let r = r2();
        assert_eq!(
            PrimeCandidate::new(&r, &[p(&r, "z1")]).unwrap().kind(),
            PrimeKind::MonomialVars
        );
        assert_eq!(
            PrimeCandidate::new(&r, &[p(&r, "z1"), p(&r, "z2 - 1")]).unwrap().kind(),
            PrimeKind::Linear
        );
        assert_eq!(
            PrimeCandidate::new(&r, &[p(&r, "z2 - z1^2")]).unwrap().kind(),
            PrimeKind::PrincipalIrreducible
        );
        assert_eq!(
            PrimeCandidate::new(&r, &[p(&r, "z1*z2 + 1")]).unwrap().kind(),
            PrimeKind::PrincipalIrreducible
        );
        let zero = PrimeCandidate::new(&r, &[]).unwrap();
        assert_eq!(zero.kind(), PrimeKind::MonomialVars);
        assert_eq!(zero.dimension(), 2);
        assert_eq!(zero.to_string(), "(0)");
    }

    #[test]
    fn certification_rejections() {
        let r = r2();
        // Visibly non-prime ideals are rejected even with a trust note.
        assert!(matches!(
            PrimeCandidate::new(&r, &[p(&r, "z1^2")]),
            Err(Error::BadCandidate(_))
        ));
        assert!(matches!(
            PrimeCandidate::trusted(&r, &[p(&r, "z1^2")], "claimed"),
            Err(Error::BadCandidate(_))
        ));
        assert!(matches!(
            PrimeCandidate::trusted(&r, &[p(&r, "z1*z2")], "claimed"),
            Err(Error::BadCandidate(_))
        ));
        // A genuinely hard ideal needs trust and records it.
        assert!(matches!(
            PrimeCandidate::new(&r, &[p(&r, "z1^2 + z2^2 - 1")]),
            Err(Error::BadCandidate(_))
        ));
        let circle =
            PrimeCandidate::trusted(&r, &[p(&r, "z1^2 + z2^2 - 1")], "irreducible conic").unwrap();
        assert_eq!(circle.kind(), PrimeKind::UserTrusted);
        assert_eq!(circle.note(), Some("irreducible conic"));
        // The unit ideal is never accepted.
        assert!(matches!(
            PrimeCandidate::trusted(&r, &[p(&r, "1")], "claimed"),
            Err(Error::BadCandidate(_))
        ));
    }

    #[test]
    fn rational_stream_is_frozen() {
        let expected = ["0", "1", "-1", "2", "-2", "1/2", "-1/2", "3", "-3", "1/3", "-1/3"];
        for (i, e) in expected.iter().enumerate() {
            assert_eq!(rational_by_index(i).to_string(), *e);
        }
    }

    #[test]
    fn tuple_stream_spot_checks() {
        assert_eq!(rational_tuple(0, 0), Some(vec![]));
        assert_eq!(rational_tuple(0, 1), None);
        let expect = [
            vec![s(0), s(0)],
            vec![s(0), s(1)],
            vec![s(1), s(0)],
            vec![s(0), s(-1)],
            vec![s(1), s(1)],
            vec![s(-1), s(0)],
        ];
        for (i, e) in expect.iter().enumerate() {
            assert_eq!(rational_tuple(2, i).unwrap(), *e);
        }
    }

    #[test]
    fn samples_follow_components() {
        let r = r2();
        let parabola = PrimeCandidate::new(&r, &[p(&r, "z2 - z1^2")]).unwrap();
        let mut no_reject = |_: &[Scalar]| Ok(false);
        let samples = generic_samples(&parabola, 3, &cfg(), &mut no_reject).unwrap();
        assert_eq!(samples.len(), 3);
        for pt in &samples {
            assert!(p(&r, "z2 - z1^2").eval(pt).unwrap().is_zero());
        }
        assert_ne!(samples[0], samples[1]);
        let line = PrimeCandidate::new(&r, &[p(&r, "z1 + z2 - 1")]).unwrap();
        let samples = generic_samples(&line, 3, &cfg(), &mut no_reject).unwrap();
        for pt in &samples {
            assert!(p(&r, "z1 + z2 - 1").eval(pt).unwrap().is_zero());
        }
        // Offsets shift the deterministic stream.
        let shifted_cfg = SampleConfig {
            offset: 5,
            ..cfg()
        };
        let shifted = generic_samples(&parabola, 1, &shifted_cfg, &mut no_reject).unwrap();
        let base = generic_samples(&parabola, 1, &cfg(), &mut no_reject).unwrap();
        assert_ne!(shifted[0], base[0]);
    }

    #[test]
    fn trusted_components_sample_through_slices() {
        let r = r2();
        let circle =
            PrimeCandidate::trusted(&r, &[p(&r, "z1^2 + z2^2 - 1")], "irreducible conic").unwrap();
        let mut no_reject = |_: &[Scalar]| Ok(false);
        let samples = generic_samples(&circle, 2, &cfg(), &mut no_reject).unwrap();
        for pt in &samples {
            assert!(p(&r, "z1^2 + z2^2 - 1").eval(pt).unwrap().is_zero());
        }
        assert_ne!(samples[0], samples[1]);
    }

    #[test]
    fn local_cycle_of_cross() {
        let model = module_model(&["z1*z2"]);
        let (cycle, on) = local_cycle(&model, &[s(0), s(0)], &[], &cfg()).unwrap();
        assert!(on);
        assert_eq!(cycle.to_string(), "1*(z1) + 1*(z2)");
        // At a smooth point only one branch passes through.
        let (cycle, on) = local_cycle(&model, &[s(0), s(3)], &[], &cfg()).unwrap();
        assert!(on);
        assert_eq!(cycle.to_string(), "1*(z1)");
        // Off the spectrum the cycle is empty.
        let (cycle, on) = local_cycle(&model, &[s(1), s(1)], &[], &cfg()).unwrap();
        assert!(!on);
        assert!(cycle.is_empty());
    }

    #[test]
    fn local_cycle_of_double_line() {
        let model = module_model(&["z1^2"]);
        let (cycle, on) = local_cycle(&model, &[s(0), s(0)], &[], &cfg()).unwrap();
        assert!(on);
        assert_eq!(cycle.to_string(), "2*(z1)");
        let (cycle, _) = local_cycle(&model, &[s(0), s(7)], &[], &cfg()).unwrap();
        assert_eq!(cycle.to_string(), "2*(z1)");
    }

    #[test]
    fn local_cycle_at_isolated_point() {
        let model = OperatorModel::matrix_tuple(
            r2(),
            vec![
                QMatrix::from_int_rows(&[vec![0, 1], vec![0, 0]]),
                QMatrix::zero(2, 2),
            ],
        )
        .unwrap();
        let (cycle, on) = local_cycle(&model, &[s(0), s(0)], &[], &cfg()).unwrap();
        assert!(on);
        assert_eq!(cycle.to_string(), "2*(z1, z2)");
    }

    #[test]
    fn candidates_validated_and_used() {
        let model = module_model(&["z1^2 - z2^2"]);
        // Without candidates the components cannot be certified.
        assert!(matches!(
            local_cycle(&model, &[s(1), s(1)], &[], &cfg()),
            Err(Error::ComponentsUnknown(_))
        ));
        let r = r2();
        let a = PrimeCandidate::new(&r, &[p(&r, "z1 - z2")]).unwrap();
        let b = PrimeCandidate::new(&r, &[p(&r, "z1 + z2")]).unwrap();
        let (cycle, on) =
            local_cycle(&model, &[s(1), s(1)], &[a.clone(), b.clone()], &cfg()).unwrap();
        assert!(on);
        assert_eq!(cycle.to_string(), "1*(z1 - z2)");
        // A single candidate fails the covering check.
        assert!(matches!(
            local_cycle(&model, &[s(1), s(1)], std::slice::from_ref(&a), &cfg()),
            Err(Error::BadCandidate(_))
        ));
        // A candidate off the support is rejected.
        let off = PrimeCandidate::new(&r, &[p(&r, "z1 - 1")]).unwrap();
        assert!(matches!(
            local_cycle(&model, &[s(1), s(1)], &[a, b, off], &cfg()),
            Err(Error::BadCandidate(_))
        ));
    }

    #[test]
    fn weyl_verdicts() {
        // A nonzero local index keeps a module line in the Weyl part.
        let line = module_model(&["z1"]);
        let report = weyl_test(&line, &[s(0), s(2)], &[], &cfg()).unwrap();
        assert!(report.on_spectrum && !report.isolated);
        assert!(!report.is_weyl_point && report.in_weyl_spectrum);
        assert_eq!(report.witnesses.len(), 1);
        assert_eq!(report.witnesses[0].1, 1);
        // Off the spectrum: neither a Weyl point nor in the Weyl part.
        let report = weyl_test(&line, &[s(1), s(0)], &[], &cfg()).unwrap();
        assert!(!report.on_spectrum && !report.is_weyl_point && !report.in_weyl_spectrum);
        // An isolated joint eigenvalue is never a Weyl point; its witness
        // is the spectral-subspace dimension.
        let model = OperatorModel::matrix_tuple(
            r2(),
            vec![
                QMatrix::from_int_rows(&[vec![0, 1], vec![0, 0]]),
                QMatrix::zero(2, 2),
            ],
        )
        .unwrap();
        let report = weyl_test(&model, &[s(0), s(0)], &[], &cfg()).unwrap();
        assert!(report.on_spectrum && report.isolated);
        assert!(!report.is_weyl_point && report.in_weyl_spectrum);
        assert_eq!(report.witnesses[0].1, 2);
        // Declared homology that cancels makes every point of the line a
        // Weyl point.
        let r = r2();
        let h = FPModule::quotient_ring(&r, &[p(&r, "z1")]).unwrap();
        let cancel = OperatorModel::explicit(r.clone(), vec![h.clone(), h]).unwrap();
        let report = weyl_test(&cancel, &[s(0), s(2)], &[], &cfg()).unwrap();
        assert!(report.on_spectrum && !report.isolated);
        assert!(report.is_weyl_point && !report.in_weyl_spectrum);
        assert_eq!(report.witnesses.len(), 1);
        assert_eq!(report.witnesses[0].1, 0);
        // Even fully cancelling homology at an isolated point stays
        // not-Weyl: the cokernel stalk is what the witness reports.
        let pt_mod = FPModule::quotient_ring(&r, &[p(&r, "z1"), p(&r, "z2")]).unwrap();
        let iso_cancel =
            OperatorModel::explicit(r.clone(), vec![pt_mod.clone(), pt_mod]).unwrap();
        let report = weyl_test(&iso_cancel, &[s(0), s(0)], &[], &cfg()).unwrap();
        assert!(report.on_spectrum && report.isolated);
        assert!(!report.is_weyl_point && report.in_weyl_spectrum);
        assert_eq!(report.witnesses[0].1, 1);
    }

    #[test]
    fn local_index_from_one_sample() {
        // Double line with the transversal frame cutting the second
        // variable (index 1).
        let model = module_model(&["z1^2"]);
        let r = r2();
        let prime = PrimeCandidate::new(&r, &[p(&r, "z1")]).unwrap();
        let l =
            l_via_multiplicity(&model, &prime, &[s(0), s(1)], &[1], DEFAULT_MAX_K).unwrap();
        assert_eq!(l, 2);
        // The parabola carries itself with index 1; the frame cuts the
        // first variable and localization picks one fiber point.
        let parabola = module_model(&["z1 - z2^2"]);
        let prime = PrimeCandidate::new(&r, &[p(&r, "z1 - z2^2")]).unwrap();
        let l = l_via_multiplicity(&parabola, &prime, &[s(1), s(1)], &[0], DEFAULT_MAX_K)
            .unwrap();
        assert_eq!(l, 1);
        // A sample off the component is refused.
        let cross = module_model(&["z1*z2"]);
        let prime = PrimeCandidate::new(&r, &[p(&r, "z1")]).unwrap();
        assert!(matches!(
            l_via_multiplicity(&cross, &prime, &[s(1), s(0)], &[1], DEFAULT_MAX_K),
            Err(Error::NotOnComponent(_))
        ));
    }

    #[test]
    fn pushforward_of_a_line_under_a_square() {
        let r = r2();
        let mut cycle = Cycle::empty();
        cycle.add(PrimeCandidate::new(&r, &[p(&r, "z1")]).unwrap(), 1);
        let report = pushforward_cycle(&cycle, &[p(&r, "z2^2")], &cfg()).unwrap();
        assert_eq!(report.cycle.to_string(), "2*(0)");
        assert_eq!(report.terms.len(), 1);
        assert_eq!(report.terms[0].degree, 2);
        assert_eq!(report.terms[0].samples.len(), 2);
    }

    #[test]
    fn pushforward_of_points() {
        let r = r2();
        let mut cycle = Cycle::empty();
        cycle.add(PrimeCandidate::new(&r, &[p(&r, "z1"), p(&r, "z2 - 1")]).unwrap(), 1);
        cycle.add(PrimeCandidate::new(&r, &[p(&r, "z1"), p(&r, "z2 + 1")]).unwrap(), 1);
        let report = pushforward_cycle(&cycle, &[p(&r, "z2^2")], &cfg()).unwrap();
        assert_eq!(report.cycle.to_string(), "2*(w - 1)");
    }

    #[test]
    fn pushforward_kills_dimension_drops() {
        let r = r2();
        let mut cycle = Cycle::empty();
        cycle.add(PrimeCandidate::new(&r, &[p(&r, "z1")]).unwrap(), 1);
        // Projecting the z2-axis to its first coordinate collapses it.
        let report = pushforward_cycle(&cycle, &[p(&r, "z1")], &cfg()).unwrap();
        assert!(report.cycle.is_empty());
        assert_eq!(report.terms[0].degree, 0);
        assert_eq!(report.terms[0].image.to_string(), "(w)");
    }

    #[test]
    fn functoriality_on_a_line() {
        let model = module_model(&["z1"]);
        let r = r2();
        let report =
            functoriality_check(&model, &[p(&r, "z2^2")], &[s(1)], &[], &cfg()).unwrap();
        assert_eq!(report.preimages.len(), 2);
        assert!(report.matches);
        assert_eq!(report.pushed_side.to_string(), "2*(0)");
        assert_eq!(report.local_side.to_string(), "2*(0)");
    }

    #[test]
    fn functoriality_on_two_points() {
        let model = module_model(&["z1", "z2^2 - 1"]);
        let r = r2();
        let report =
            functoriality_check(&model, &[p(&r, "z2^2")], &[s(1)], &[], &cfg()).unwrap();
        assert_eq!(report.preimages.len(), 2);
        assert!(report.matches);
        assert_eq!(report.pushed_side.to_string(), "2*(w - 1)");
        assert_eq!(report.local_side.to_string(), "2*(w - 1)");
    }

    #[test]
    fn functoriality_detects_nonproper_maps() {
        // The hyperbola projects onto the punctured line: over 0 the fiber
        // escapes, so the two sides genuinely differ there.
        let model = module_model(&["z1*z2 - 1"]);
        let r = r2();
        let report =
            functoriality_check(&model, &[p(&r, "z1")], &[s(0)], &[], &cfg()).unwrap();
        assert!(report.preimages.is_empty());
        assert!(!report.matches);
        assert_eq!(report.pushed_side.to_string(), "1*(0)");
        assert!(report.local_side.is_empty());
    }

    #[test]
    fn picture_records_sampling() {
        let model = module_model(&["z1*z2"]);
        let picture = spectral_picture(&model, &[], &cfg()).unwrap();
        assert_eq!(picture.terms.len(), 2);
        for term in &picture.terms {
            assert_eq!(term.coefficient, 1);
            assert_eq!(term.samples.len(), 2);
        }
        assert_eq!(picture.cycle().to_string(), "1*(z1) + 1*(z2)");
        // Zero-dimensional support records the spectrum points themselves.
        let model = module_model(&["z1", "z2^2 - 1"]);
        let picture = spectral_picture(&model, &[], &cfg()).unwrap();
        assert_eq!(picture.terms.len(), 2);
        assert_eq!(
            picture.cycle().to_string(),
            "1*(z1, z2 + 1) + 1*(z1, z2 - 1)"
        );
    }
}
