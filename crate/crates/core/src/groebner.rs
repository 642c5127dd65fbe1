//! Gröbner bases for submodules of free modules, with certificates and
//! syzygies.
//!
//! A single engine runs Buchberger's algorithm on generators augmented with
//! tag components, so one computation yields the reduced basis, an exact
//! expression of every basis element in the original generators, and a
//! generating set of the syzygy module. Positions are ordered
//! position-over-term with lower component index greater, which gives the
//! elimination property the syzygy extraction relies on.

use std::cmp::Ordering;
use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::poly::{Monomial, Poly, RingSpec, TermOrder};
use crate::scalar::Scalar;

/// An element of a free module R^s: one polynomial per component.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FreeElem {
    ring: RingSpec,
    comps: Vec<Poly>,
}

impl FreeElem {
    pub fn new(ring: &RingSpec, comps: Vec<Poly>) -> Result<Self> {
        for p in &comps {
            ring.check_same(p.ring())?;
        }
        Ok(FreeElem {
            ring: ring.clone(),
            comps,
        })
    }

    pub fn zero(ring: &RingSpec, rank: usize) -> Self {
        FreeElem {
            ring: ring.clone(),
            comps: vec![Poly::zero(ring); rank],
        }
    }

    /// Rank-1 element from a single polynomial.
    pub fn from_poly(p: Poly) -> Self {
        FreeElem {
            ring: p.ring().clone(),
            comps: vec![p],
        }
    }

    /// The standard basis vector e_i of R^rank.
    pub fn unit(ring: &RingSpec, rank: usize, i: usize) -> Self {
        let mut e = FreeElem::zero(ring, rank);
        e.comps[i] = Poly::one(ring);
        e
    }

    pub fn ring(&self) -> &RingSpec {
        &self.ring
    }

    pub fn rank(&self) -> usize {
        self.comps.len()
    }

    pub fn comps(&self) -> &[Poly] {
        &self.comps
    }

    pub fn comp(&self, i: usize) -> &Poly {
        &self.comps[i]
    }

    pub fn comp_mut(&mut self, i: usize) -> &mut Poly {
        &mut self.comps[i]
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(Poly::is_zero)
    }

    pub fn add(&self, other: &FreeElem) -> FreeElem {
        assert_eq!(self.rank(), other.rank(), "rank mismatch");
        FreeElem {
            ring: self.ring.clone(),
            comps: self
                .comps
                .iter()
                .zip(&other.comps)
                .map(|(a, b)| a.add(b))
                .collect(),
        }
    }

    pub fn sub(&self, other: &FreeElem) -> FreeElem {
        assert_eq!(self.rank(), other.rank(), "rank mismatch");
        FreeElem {
            ring: self.ring.clone(),
            comps: self
                .comps
                .iter()
                .zip(&other.comps)
                .map(|(a, b)| a.sub(b))
                .collect(),
        }
    }

    pub fn neg(&self) -> FreeElem {
        FreeElem {
            ring: self.ring.clone(),
            comps: self.comps.iter().map(Poly::neg).collect(),
        }
    }

    pub fn scale(&self, s: &Scalar) -> FreeElem {
        FreeElem {
            ring: self.ring.clone(),
            comps: self.comps.iter().map(|p| p.scale(s)).collect(),
        }
    }

    pub fn mul_poly(&self, p: &Poly) -> FreeElem {
        FreeElem {
            ring: self.ring.clone(),
            comps: self.comps.iter().map(|c| c.mul(p)).collect(),
        }
    }

    pub fn mul_term(&self, m: &Monomial, s: &Scalar) -> FreeElem {
        FreeElem {
            ring: self.ring.clone(),
            comps: self.comps.iter().map(|c| c.mul_term(m, s)).collect(),
        }
    }

    /// Leading (component, monomial, coefficient) under position-over-term.
    pub fn leading(&self, order: TermOrder) -> Option<(usize, Monomial, Scalar)> {
        let mut best: Option<(usize, Monomial, Scalar)> = None;
        for (c, p) in self.comps.iter().enumerate() {
            if let Some((m, s)) = p.leading_term(order) {
                let replace = match &best {
                    None => true,
                    Some((bc, bm, _)) => {
                        pot_cmp(order, (c, m), (*bc, bm)) == Ordering::Greater
                    }
                };
                if replace {
                    best = Some((c, m.clone(), s.clone()));
                }
            }
        }
        best
    }

    /// Promotes every component into a larger ring.
    pub fn promote(&self, target: &RingSpec) -> Result<FreeElem> {
        Ok(FreeElem {
            ring: target.clone(),
            comps: self
                .comps
                .iter()
                .map(|p| p.promote(target))
                .collect::<Result<_>>()?,
        })
    }
}

/// Position-over-term comparison: lower component index is greater; ties
/// break by the ring term order.
pub fn pot_cmp(
    order: TermOrder,
    a: (usize, &Monomial),
    b: (usize, &Monomial),
) -> Ordering {
    b.0.cmp(&a.0).then_with(|| order.cmp(a.1, b.1))
}

/// A reduced Gröbner basis of a submodule of R^rank, carrying certificates
/// (each basis element expressed in the original generators) and a
/// generating set of the syzygy module of those generators.
#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    ring: RingSpec,
    rank: usize,
    order: TermOrder,
    inputs: Vec<FreeElem>,
    elems: Vec<FreeElem>,
    certificates: Vec<Vec<Poly>>,
    syzygies: Vec<Vec<Poly>>,
}

/// Computes the reduced Gröbner basis of the submodule of R^rank generated
/// by `inputs`, with certificates and syzygies.
pub fn module_groebner(
    ring: &RingSpec,
    rank: usize,
    inputs: &[FreeElem],
    order: TermOrder,
) -> Result<GroebnerBasis> {
    for f in inputs {
        ring.check_same(f.ring())?;
        if f.rank() != rank {
            return Err(Error::ShapeMismatch(format!(
                "generator of rank {} in module of rank {}",
                f.rank(),
                rank
            )));
        }
    }
    let g = inputs.len();
    // Augment each generator with its tag component: the invariant
    // "module part = Σ tag_i · input_i" is preserved by every reduction.
    let mut basis: Vec<FreeElem> = Vec::new();
    for (i, f) in inputs.iter().enumerate() {
        let mut comps = f.comps().to_vec();
        comps.extend((0..g).map(|j| {
            if i == j {
                Poly::one(ring)
            } else {
                Poly::zero(ring)
            }
        }));
        let h = FreeElem {
            ring: ring.clone(),
            comps,
        };
        basis.push(make_monic(h, order));
    }
    let mut leads: Vec<(usize, Monomial, Scalar)> = basis
        .iter()
        .map(|b| b.leading(order).expect("augmented generator is nonzero"))
        .collect();

    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for i in 0..basis.len() {
        for j in i + 1..basis.len() {
            if leads[i].0 == leads[j].0 {
                pairs.push((i, j));
            }
        }
    }
    let mut reduced_pairs: HashSet<(usize, usize)> = HashSet::new();

    while !pairs.is_empty() {
        // Normal selection: smallest lcm first, then smallest indices.
        let mut best = 0;
        let mut best_lcm = leads[pairs[0].0].1.lcm(&leads[pairs[0].1].1);
        for (idx, &(i, j)) in pairs.iter().enumerate().skip(1) {
            let lcm = leads[i].1.lcm(&leads[j].1);
            let better = match order.cmp(&lcm, &best_lcm) {
                Ordering::Less => true,
                Ordering::Greater => false,
                Ordering::Equal => (pairs[idx].0, pairs[idx].1) < (pairs[best].0, pairs[best].1),
            };
            if better {
                best = idx;
                best_lcm = lcm;
            }
        }
        let (i, j) = pairs.remove(best);
        let comp = leads[i].0;
        let lcm = leads[i].1.lcm(&leads[j].1);
        // Chain criterion, conservative form: skip only when both bridging
        // pairs were actually reduced.
        let chained = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && leads[k].0 == comp
                && leads[k].1.divides(&lcm)
                && reduced_pairs.contains(&pair_key(i, k))
                && reduced_pairs.contains(&pair_key(j, k))
        });
        if chained {
            continue;
        }
        let s = spair(&basis[i], &leads[i], &basis[j], &leads[j], order);
        let (nf, _) = normal_form_impl(&s, &basis, &leads, order, false);
        reduced_pairs.insert(pair_key(i, j));
        if nf.is_zero() {
            continue;
        }
        let nf = make_monic(nf, order);
        let lead = nf.leading(order).expect("nonzero normal form");
        let t = basis.len();
        for (k, l) in leads.iter().enumerate() {
            if l.0 == lead.0 {
                pairs.push((k, t));
            }
        }
        basis.push(nf);
        leads.push(lead);
    }

    // Minimalize: drop elements whose leading term another element divides.
    let mut idx: Vec<usize> = (0..basis.len()).collect();
    idx.sort_by(|&a, &b| pot_cmp(order, (leads[a].0, &leads[a].1), (leads[b].0, &leads[b].1)));
    let mut kept: Vec<usize> = Vec::new();
    for &i in &idx {
        let divisible = kept.iter().any(|&k| {
            leads[k].0 == leads[i].0 && leads[k].1.divides(&leads[i].1)
        });
        if !divisible {
            kept.push(i);
        }
    }
    let mut reduced: Vec<FreeElem> = kept.iter().map(|&i| basis[i].clone()).collect();
    // Tail-reduce to the unique reduced basis.
    for i in 0..reduced.len() {
        let elem = reduced[i].clone();
        let others: Vec<FreeElem> = reduced
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, e)| e.clone())
            .collect();
        let other_leads: Vec<(usize, Monomial, Scalar)> = others
            .iter()
            .map(|e| e.leading(order).expect("nonzero basis element"))
            .collect();
        let (nf, _) = normal_form_impl(&elem, &others, &other_leads, order, false);
        reduced[i] = nf;
    }
    reduced.sort_by(|a, b| {
        let la = a.leading(order).expect("nonzero");
        let lb = b.leading(order).expect("nonzero");
        pot_cmp(order, (lb.0, &lb.1), (la.0, &la.1))
    });

    // Split into module-part elements (with certificates) and syzygies.
    let mut elems = Vec::new();
    let mut certificates = Vec::new();
    let mut syzygies = Vec::new();
    for e in reduced {
        let module_part: Vec<Poly> = e.comps[..rank].to_vec();
        let tag_part: Vec<Poly> = e.comps[rank..].to_vec();
        if module_part.iter().all(Poly::is_zero) {
            syzygies.push(tag_part);
        } else {
            elems.push(FreeElem {
                ring: ring.clone(),
                comps: module_part,
            });
            certificates.push(tag_part);
        }
    }

    Ok(GroebnerBasis {
        ring: ring.clone(),
        rank,
        order,
        inputs: inputs.to_vec(),
        elems,
        certificates,
        syzygies,
    })
}

/// Gröbner basis of the ideal generated by `polys` (rank-1 case).
pub fn ideal_groebner(ring: &RingSpec, polys: &[Poly], order: TermOrder) -> Result<GroebnerBasis> {
    let inputs: Vec<FreeElem> = polys.iter().cloned().map(FreeElem::from_poly).collect();
    module_groebner(ring, 1, &inputs, order)
}

fn pair_key(i: usize, j: usize) -> (usize, usize) {
    (i.min(j), i.max(j))
}

fn make_monic(e: FreeElem, order: TermOrder) -> FreeElem {
    match e.leading(order) {
        None => e,
        Some((_, _, c)) => {
            let inv = c.inv();
            e.scale(&inv)
        }
    }
}

fn spair(
    a: &FreeElem,
    la: &(usize, Monomial, Scalar),
    b: &FreeElem,
    lb: &(usize, Monomial, Scalar),
    _order: TermOrder,
) -> FreeElem {
    let lcm = la.1.lcm(&lb.1);
    let qa = la.1.quotient_into(&lcm);
    let qb = lb.1.quotient_into(&lcm);
    let fa = la.2.inv();
    let fb = lb.2.inv();
    a.mul_term(&qa, &fa).sub(&b.mul_term(&qb, &fb))
}

/// Full normal form; optionally also returns quotients against the basis,
/// so that `v = Σ q_i · basis_i + remainder`.
fn normal_form_impl(
    v: &FreeElem,
    basis: &[FreeElem],
    leads: &[(usize, Monomial, Scalar)],
    order: TermOrder,
    want_quotients: bool,
) -> (FreeElem, Vec<Poly>) {
    let ring = v.ring().clone();
    let mut quotients = if want_quotients {
        vec![Poly::zero(&ring); basis.len()]
    } else {
        Vec::new()
    };
    let mut rem = FreeElem::zero(&ring, v.rank());
    let mut cur = v.clone();
    'outer: while let Some((c, m, s)) = cur.leading(order) {
        for (bi, b) in basis.iter().enumerate() {
            let (bc, bm, bs) = &leads[bi];
            if *bc == c && bm.divides(&m) {
                let q = bm.quotient_into(&m);
                let factor = s.clone() / bs.clone();
                cur = cur.sub(&b.mul_term(&q, &factor));
                if want_quotients {
                    quotients[bi].add_term(q, factor);
                }
                continue 'outer;
            }
        }
        rem.comp_mut(c).add_term(m.clone(), s.clone());
        cur.comp_mut(c).add_term(m, -s);
    }
    (rem, quotients)
}

impl GroebnerBasis {
    pub fn ring(&self) -> &RingSpec {
        &self.ring
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn order(&self) -> TermOrder {
        self.order
    }

    pub fn elems(&self) -> &[FreeElem] {
        &self.elems
    }

    pub fn inputs(&self) -> &[FreeElem] {
        &self.inputs
    }

    /// Certificates: `elems[i] = Σ_j certificates[i][j] · inputs[j]`.
    pub fn certificates(&self) -> &[Vec<Poly>] {
        &self.certificates
    }

    /// Generators of the syzygy module of the inputs.
    pub fn syzygies(&self) -> &[Vec<Poly>] {
        &self.syzygies
    }

    /// Basis elements of a rank-1 module, as polynomials.
    pub fn polys(&self) -> Vec<Poly> {
        assert_eq!(self.rank, 1, "polys() requires a rank-1 module");
        self.elems.iter().map(|e| e.comp(0).clone()).collect()
    }

    /// Leading (component, monomial) of every basis element.
    pub fn leading_terms(&self) -> Vec<(usize, Monomial)> {
        self.elems
            .iter()
            .map(|e| {
                let (c, m, _) = e.leading(self.order).expect("nonzero basis element");
                (c, m)
            })
            .collect()
    }

    /// True when the module is all of R^rank is not tested here; for ideals
    /// this reports whether 1 lies in the ideal.
    pub fn contains_one(&self) -> bool {
        self.rank == 1 && self.elems.len() == 1 && self.elems[0].comp(0).is_unit()
    }

    pub fn normal_form(&self, v: &FreeElem) -> FreeElem {
        assert_eq!(v.rank(), self.rank, "rank mismatch in normal form");
        let leads: Vec<_> = self
            .elems
            .iter()
            .map(|e| e.leading(self.order).expect("nonzero basis element"))
            .collect();
        normal_form_impl(v, &self.elems, &leads, self.order, false).0
    }

    /// Normal form with quotients against the basis elements.
    pub fn normal_form_with_quotients(&self, v: &FreeElem) -> (FreeElem, Vec<Poly>) {
        assert_eq!(v.rank(), self.rank, "rank mismatch in normal form");
        let leads: Vec<_> = self
            .elems
            .iter()
            .map(|e| e.leading(self.order).expect("nonzero basis element"))
            .collect();
        normal_form_impl(v, &self.elems, &leads, self.order, true)
    }

    pub fn poly_normal_form(&self, p: &Poly) -> Poly {
        assert_eq!(self.rank, 1, "poly_normal_form requires rank 1");
        self.normal_form(&FreeElem::from_poly(p.clone()))
            .comp(0)
            .clone()
    }

    pub fn contains(&self, v: &FreeElem) -> bool {
        self.normal_form(v).is_zero()
    }

    /// Expresses `v` in the original generators, if it lies in the module:
    /// returns `a` with `v = Σ_i a[i] · inputs[i]`.
    pub fn lift(&self, v: &FreeElem) -> Option<Vec<Poly>> {
        let (rem, quotients) = self.normal_form_with_quotients(v);
        if !rem.is_zero() {
            return None;
        }
        let mut coords = vec![Poly::zero(&self.ring); self.inputs.len()];
        for (q, cert) in quotients.iter().zip(&self.certificates) {
            if q.is_zero() {
                continue;
            }
            for (i, c) in cert.iter().enumerate() {
                coords[i] = coords[i].add(&q.mul(c));
            }
        }
        Some(coords)
    }

    /// Re-verifies that every same-component S-pair reduces to zero.
    pub fn verify_spairs(&self) -> bool {
        let leads: Vec<_> = self
            .elems
            .iter()
            .map(|e| e.leading(self.order).expect("nonzero basis element"))
            .collect();
        for i in 0..self.elems.len() {
            for j in i + 1..self.elems.len() {
                if leads[i].0 != leads[j].0 {
                    continue;
                }
                let s = spair(&self.elems[i], &leads[i], &self.elems[j], &leads[j], self.order);
                if !self.normal_form(&s).is_zero() {
                    return false;
                }
            }
        }
        true
    }

    /// Re-verifies every certificate identity `elem = Σ cert_j · input_j`.
    pub fn verify_certificates(&self) -> bool {
        self.elems.iter().zip(&self.certificates).all(|(e, cert)| {
            let mut acc = FreeElem::zero(&self.ring, self.rank);
            for (c, f) in cert.iter().zip(&self.inputs) {
                acc = acc.add(&f.mul_poly(c));
            }
            acc == *e
        })
    }

    /// Re-verifies every syzygy: `Σ syz_j · input_j = 0`.
    pub fn verify_syzygies(&self) -> bool {
        self.syzygies.iter().all(|syz| {
            let mut acc = FreeElem::zero(&self.ring, self.rank);
            for (c, f) in syz.iter().zip(&self.inputs) {
                acc = acc.add(&f.mul_poly(c));
            }
            acc.is_zero()
        })
    }
}

/// The standard monomials of R^rank modulo the module: pairs
/// (component, monomial) outside the leading-term module. Errors when the
/// quotient is infinite-dimensional, naming a witness.
pub fn std_monomials(gb: &GroebnerBasis) -> Result<Vec<(usize, Monomial)>> {
    let n = gb.ring().num_vars();
    let leads = gb.leading_terms();
    let mut out = Vec::new();
    for comp in 0..gb.rank() {
        let comp_leads: Vec<&Monomial> = leads
            .iter()
            .filter(|(c, _)| *c == comp)
            .map(|(_, m)| m)
            .collect();
        if comp_leads.iter().any(|m| m.is_one()) {
            continue; // the whole component lies in the module
        }
        // Finiteness: every variable must have a pure power among the leads.
        for v in 0..n {
            let has_pure = comp_leads
                .iter()
                .any(|m| m.support() == [v]);
            if !has_pure {
                return Err(Error::InfiniteStaircase(format!(
                    "component {} has no leading pure power of {}",
                    comp,
                    gb.ring().vars()[v]
                )));
            }
        }
        // Breadth-first walk of the (finite, downward-closed) staircase.
        let mut visited: HashSet<Monomial> = HashSet::new();
        let mut queue = vec![Monomial::one(n)];
        while let Some(m) = queue.pop() {
            if visited.contains(&m) {
                continue;
            }
            if comp_leads.iter().any(|l| l.divides(&m)) {
                continue;
            }
            visited.insert(m.clone());
            for v in 0..n {
                let mut e = m.0.clone();
                e[v] += 1;
                queue.push(Monomial(e));
            }
        }
        let mut comp_std: Vec<Monomial> = visited.into_iter().collect();
        comp_std.sort_by(|a, b| gb.order().cmp(a, b));
        out.extend(comp_std.into_iter().map(|m| (comp, m)));
    }
    Ok(out)
}

/// Vector-space dimension of R^rank modulo the module, if finite.
pub fn quotient_dimension(gb: &GroebnerBasis) -> Result<usize> {
    Ok(std_monomials(gb)?.len())
}

/// Krull dimension of R^rank modulo the module, computed from leading
/// terms: the largest size of a variable subset that contains the support
/// of no leading monomial. The zero quotient reports -1.
pub fn dimension(gb: &GroebnerBasis) -> i64 {
    let n = gb.ring().num_vars();
    let leads = gb.leading_terms();
    let mut best: i64 = -1;
    for comp in 0..gb.rank() {
        let supports: Vec<Vec<usize>> = leads
            .iter()
            .filter(|(c, _)| *c == comp)
            .map(|(_, m)| m.support())
            .collect();
        if supports.iter().any(|s| s.is_empty()) {
            continue; // component is entirely inside the module
        }
        // Try subset sizes from n down; stop at the first that works.
        'sizes: for size in (0..=n as i64).rev() {
            if size <= best {
                break;
            }
            for subset in subsets_of_size(n, size as usize) {
                let ok = supports
                    .iter()
                    .all(|s| !s.iter().all(|v| subset.contains(v)));
                if ok {
                    best = size;
                    break 'sizes;
                }
            }
        }
    }
    best
}

fn subsets_of_size(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for v in start..n {
            cur.push(v);
            rec(v + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// All k-element subsets of {0, …, n-1} in lexicographic order.
pub fn k_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    subsets_of_size(n, k)
}

/// Generators of the ideal `I ∩ Q[remaining vars]`, where the first `k`
/// ring variables are eliminated. Output stays in the full ring; every
/// returned polynomial is free of the first `k` variables.
pub fn eliminate(ring: &RingSpec, polys: &[Poly], k: usize) -> Result<Vec<Poly>> {
    let gb = ideal_groebner(ring, polys, TermOrder::Block(k))?;
    Ok(gb
        .polys()
        .into_iter()
        .filter(|p| p.terms().all(|(m, _)| m.0[..k].iter().all(|&e| e == 0)))
        .collect())
}

/// A variable name not already used by the ring.
pub fn fresh_var_name(ring: &RingSpec, base: &str) -> String {
    let mut name = base.to_string();
    while ring.var_index(&name).is_some() {
        name.push('_');
    }
    name
}

/// Generators of the intersection of two ideals, via a tag variable.
pub fn ideal_intersect(ring: &RingSpec, a: &[Poly], b: &[Poly]) -> Result<Vec<Poly>> {
    if a.is_empty() || b.is_empty() {
        return Ok(Vec::new());
    }
    let t_name = fresh_var_name(ring, "t");
    let big = RingSpec::new(
        std::iter::once(t_name.clone())
            .chain(ring.vars().iter().cloned())
            .collect::<Vec<_>>(),
    );
    let t = Poly::var(&big, 0);
    let one_minus_t = Poly::one(&big).sub(&t);
    let mut gens = Vec::new();
    for p in a {
        gens.push(t.mul(&p.promote(&big)?));
    }
    for p in b {
        gens.push(one_minus_t.mul(&p.promote(&big)?));
    }
    let eliminated = eliminate(&big, &gens, 1)?;
    let back: Vec<usize> = (1..big.num_vars()).collect();
    eliminated.iter().map(|p| p.project(&back)).collect()
}

/// Exact polynomial division: `p / g` when the remainder vanishes.
pub fn exact_divide(p: &Poly, g: &Poly) -> Option<Poly> {
    if g.is_zero() {
        return p.is_zero().then(|| Poly::zero(p.ring()));
    }
    let order = TermOrder::DegRevLex;
    let (gm, gc) = g.leading_term(order)?;
    let gm = gm.clone();
    let gc = gc.clone();
    let mut q = Poly::zero(p.ring());
    let mut r = p.clone();
    while let Some((m, c)) = r.leading_term(order) {
        if !gm.divides(m) {
            return None;
        }
        let qm = gm.quotient_into(m);
        let qc = c.clone() / gc.clone();
        r = r.sub(&g.mul_term(&qm, &qc));
        q.add_term(qm, qc);
    }
    Some(q)
}

/// Generators of the colon ideal (I : g) = { p : p·g ∈ I }.
pub fn ideal_colon(ring: &RingSpec, a: &[Poly], g: &Poly) -> Result<Vec<Poly>> {
    if g.is_zero() {
        return Ok(vec![Poly::one(ring)]);
    }
    let inter = ideal_intersect(ring, a, std::slice::from_ref(g))?;
    inter
        .iter()
        .map(|p| {
            exact_divide(p, g).ok_or_else(|| {
                Error::ShapeMismatch("colon ideal: inexact division".into())
            })
        })
        .collect()
}

/// Exact radical membership: whether some power of `g` lies in the ideal,
/// decided by saturating with a fresh inverse variable.
pub fn in_radical(ring: &RingSpec, ideal: &[Poly], g: &Poly) -> Result<bool> {
    if g.is_zero() {
        return Ok(true);
    }
    let t_name = fresh_var_name(ring, "t");
    let big = ring.extend(vec![t_name]);
    let t = Poly::var(&big, big.num_vars() - 1);
    let mut gens: Vec<Poly> = ideal
        .iter()
        .map(|p| p.promote(&big))
        .collect::<Result<_>>()?;
    gens.push(Poly::one(&big).sub(&t.mul(&g.promote(&big)?)));
    let gb = ideal_groebner(&big, &gens, TermOrder::DegRevLex)?;
    Ok(gb.contains_one())
}

/// Minimal primes of a monomial ideal, each given as the sorted list of
/// variable indices generating it. The unit ideal has none; the zero ideal
/// has the single prime (0).
pub fn minimal_primes_monomial(gb: &GroebnerBasis) -> Result<Vec<Vec<usize>>> {
    if gb.rank() != 1 {
        return Err(Error::ShapeMismatch(
            "minimal primes require an ideal".into(),
        ));
    }
    if gb.contains_one() {
        return Ok(Vec::new());
    }
    let mut supports = Vec::new();
    for e in gb.elems() {
        let p = e.comp(0);
        if p.num_terms() != 1 {
            return Err(Error::NotMonomial(format!(
                "basis element {} is not a monomial",
                p
            )));
        }
        let (m, _) = p.terms().next().expect("nonzero");
        supports.push(m.support());
    }
    if supports.is_empty() {
        return Ok(vec![Vec::new()]);
    }
    // Minimal hitting sets of the supports, by exhaustive search over the
    // variables that occur.
    let mut used: Vec<usize> = supports.iter().flatten().copied().collect();
    used.sort_unstable();
    used.dedup();
    let mut hitting: Vec<Vec<usize>> = Vec::new();
    for size in 0..=used.len() {
        for subset in subsets_of_size(used.len(), size) {
            let candidate: Vec<usize> = subset.iter().map(|&i| used[i]).collect();
            let hits_all = supports
                .iter()
                .all(|s| s.iter().any(|v| candidate.contains(v)));
            if !hits_all {
                continue;
            }
            let redundant = hitting.iter().any(|h| h.iter().all(|v| candidate.contains(v)));
            if !redundant {
                hitting.push(candidate);
            }
        }
    }
    hitting.sort();
    Ok(hitting)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Scalar;
    use proptest::prelude::*;

    fn ring_xy() -> RingSpec {
        RingSpec::new(vec!["x", "y"])
    }

    fn p(ring: &RingSpec, s: &str) -> Poly {
        Poly::parse(ring, s).unwrap()
    }

    #[test]
    fn lex_basis_of_hyperbola_pair() {
        let r = ring_xy();
        let gb = ideal_groebner(&r, &[p(&r, "x*y - 1"), p(&r, "y^2 - 1")], TermOrder::Lex)
            .unwrap();
        let polys = gb.polys();
        assert_eq!(polys, vec![p(&r, "x - y"), p(&r, "y^2 - 1")]);
    }

    #[test]
    fn lex_basis_with_monomial_leader() {
        let r = ring_xy();
        let gb = ideal_groebner(&r, &[p(&r, "x*y"), p(&r, "x - y")], TermOrder::Lex).unwrap();
        assert_eq!(gb.polys(), vec![p(&r, "x - y"), p(&r, "y^2")]);
    }

    #[test]
    fn syzygy_of_two_variables() {
        let r = ring_xy();
        let gb = ideal_groebner(&r, &[p(&r, "x"), p(&r, "y")], TermOrder::DegRevLex).unwrap();
        assert_eq!(gb.syzygies().len(), 1);
        assert_eq!(gb.syzygies()[0], vec![p(&r, "y"), p(&r, "-x")]);
        assert!(gb.verify_syzygies());
    }

    #[test]
    fn certificates_reconstruct_basis() {
        let r = ring_xy();
        let gb = ideal_groebner(&r, &[p(&r, "x*y - 1"), p(&r, "y^2 - 1")], TermOrder::Lex)
            .unwrap();
        assert!(gb.verify_certificates());
        assert!(gb.verify_spairs());
    }

    #[test]
    fn membership_and_lift() {
        let r = ring_xy();
        let f1 = p(&r, "x*y - 1");
        let f2 = p(&r, "y^2 - 1");
        let gb = ideal_groebner(&r, &[f1.clone(), f2.clone()], TermOrder::Lex).unwrap();
        let target = p(&r, "x^2 - 1");
        let v = FreeElem::from_poly(target.clone());
        assert!(gb.contains(&v));
        let coords = gb.lift(&v).unwrap();
        let recon = coords[0].mul(&f1).add(&coords[1].mul(&f2));
        assert_eq!(recon, target);
        assert!(!gb.contains(&FreeElem::from_poly(p(&r, "x"))));
    }

    #[test]
    fn unit_ideal_detected() {
        let r = ring_xy();
        let gb = ideal_groebner(&r, &[p(&r, "x"), p(&r, "x - 1")], TermOrder::DegRevLex)
            .unwrap();
        assert!(gb.contains_one());
    }

    #[test]
    fn std_monomials_of_square_ideal() {
        let r = ring_xy();
        let gb = ideal_groebner(
            &r,
            &[p(&r, "x^2"), p(&r, "x*y"), p(&r, "y^2")],
            TermOrder::DegRevLex,
        )
        .unwrap();
        let std = std_monomials(&gb).unwrap();
        let mons: Vec<Monomial> = std.into_iter().map(|(_, m)| m).collect();
        // Ascending under degrevlex, where x > y.
        assert_eq!(
            mons,
            vec![
                Monomial(vec![0, 0]),
                Monomial(vec![0, 1]),
                Monomial(vec![1, 0])
            ]
        );
    }

    #[test]
    fn infinite_staircase_reported() {
        let r = ring_xy();
        let gb = ideal_groebner(&r, &[p(&r, "x^2")], TermOrder::DegRevLex).unwrap();
        assert!(matches!(
            std_monomials(&gb),
            Err(Error::InfiniteStaircase(_))
        ));
    }

    #[test]
    fn krull_dimension_examples() {
        let r = ring_xy();
        let gb = ideal_groebner(&r, &[p(&r, "x*y")], TermOrder::DegRevLex).unwrap();
        assert_eq!(dimension(&gb), 1);
        let gb = ideal_groebner(&r, &[], TermOrder::DegRevLex).unwrap();
        assert_eq!(dimension(&gb), 2);
        let gb = ideal_groebner(&r, &[p(&r, "1")], TermOrder::DegRevLex).unwrap();
        assert_eq!(dimension(&gb), -1);
        let gb = ideal_groebner(&r, &[p(&r, "x^2"), p(&r, "x*y"), p(&r, "y^2")], TermOrder::DegRevLex)
            .unwrap();
        assert_eq!(dimension(&gb), 0);
    }

    #[test]
    fn module_basis_and_dimension() {
        // Submodule of R^2 generated by (x, 0), (0, y), (y^2, 0):
        // quotient has an infinite staircase in neither component? The first
        // component leaves {1, y, ...} infinite, so only Krull dimension is
        // meaningful here.
        let r = ring_xy();
        let gens = vec![
            FreeElem::new(&r, vec![p(&r, "x"), p(&r, "0")]).unwrap(),
            FreeElem::new(&r, vec![p(&r, "0"), p(&r, "y")]).unwrap(),
        ];
        let gb = module_groebner(&r, 2, &gens, TermOrder::DegRevLex).unwrap();
        assert_eq!(gb.elems().len(), 2);
        assert_eq!(dimension(&gb), 1);
    }

    #[test]
    fn eliminate_tag_variable() {
        let big = RingSpec::new(vec!["t", "x", "y"]);
        let gens = vec![p(&big, "t - x"), p(&big, "t - y")];
        let elim = eliminate(&big, &gens, 1).unwrap();
        assert_eq!(elim.len(), 1);
        assert_eq!(elim[0], p(&big, "x - y"));
    }

    #[test]
    fn intersect_coordinate_ideals() {
        let r = ring_xy();
        let inter = ideal_intersect(&r, &[p(&r, "x")], &[p(&r, "y")]).unwrap();
        assert_eq!(inter, vec![p(&r, "x*y")]);
    }

    #[test]
    fn colon_ideal_strips_a_factor() {
        let r = ring_xy();
        let colon = ideal_colon(&r, &[p(&r, "x^2")], &p(&r, "x")).unwrap();
        let gb = ideal_groebner(&r, &colon, TermOrder::DegRevLex).unwrap();
        assert_eq!(gb.polys(), vec![p(&r, "x")]);
    }

    #[test]
    fn radical_membership() {
        let r = ring_xy();
        assert!(in_radical(&r, &[p(&r, "x^2")], &p(&r, "x")).unwrap());
        assert!(!in_radical(&r, &[p(&r, "x^2")], &p(&r, "y")).unwrap());
        assert!(in_radical(&r, &[p(&r, "x*y"), p(&r, "x^2")], &p(&r, "x")).unwrap());
        assert!(!in_radical(&r, &[p(&r, "x*y")], &p(&r, "x")).unwrap());
        assert!(in_radical(&r, &[p(&r, "x^2 + y"), p(&r, "y")], &p(&r, "x")).unwrap());
    }

    #[test]
    fn exact_division() {
        let r = ring_xy();
        let prod = p(&r, "(x + y)(x - y)");
        assert_eq!(exact_divide(&prod, &p(&r, "x + y")).unwrap(), p(&r, "x - y"));
        assert!(exact_divide(&p(&r, "x^2 + 1"), &p(&r, "x + y")).is_none());
    }

    #[test]
    fn minimal_primes_of_monomial_ideals() {
        let r = ring_xy();
        let gb = ideal_groebner(&r, &[p(&r, "x*y")], TermOrder::DegRevLex).unwrap();
        assert_eq!(minimal_primes_monomial(&gb).unwrap(), vec![vec![0], vec![1]]);
        let gb = ideal_groebner(&r, &[p(&r, "x^2"), p(&r, "x*y")], TermOrder::DegRevLex)
            .unwrap();
        assert_eq!(minimal_primes_monomial(&gb).unwrap(), vec![vec![0]]);
        let gb = ideal_groebner(&r, &[], TermOrder::DegRevLex).unwrap();
        assert_eq!(minimal_primes_monomial(&gb).unwrap(), vec![Vec::<usize>::new()]);
        let gb = ideal_groebner(&r, &[p(&r, "2")], TermOrder::DegRevLex).unwrap();
        assert!(minimal_primes_monomial(&gb).unwrap().is_empty());
        let gb = ideal_groebner(&r, &[p(&r, "x + y")], TermOrder::DegRevLex).unwrap();
        assert!(matches!(
            minimal_primes_monomial(&gb),
            Err(Error::NotMonomial(_))
        ));
    }

    #[test]
    fn zero_generators_become_syzygies() {
        let r = ring_xy();
        let gb = ideal_groebner(&r, &[p(&r, "x"), p(&r, "0")], TermOrder::DegRevLex).unwrap();
        assert_eq!(gb.polys(), vec![p(&r, "x")]);
        // e_2 is a syzygy because the second generator is zero.
        assert!(gb
            .syzygies()
            .iter()
            .any(|s| s[0].is_zero() && s[1].is_unit()));
    }

    fn small_poly_strategy(ring: RingSpec) -> impl Strategy<Value = Poly> {
        let term = (0u32..3, 0u32..3, -3i64..4);
        proptest::collection::vec(term, 0..4).prop_map(move |terms| {
            let mut poly = Poly::zero(&ring);
            for (e1, e2, c) in terms {
                poly.add_term(Monomial(vec![e1, e2]), Scalar::from_int(c));
            }
            poly
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn groebner_invariants_hold(
            f in small_poly_strategy(ring_xy()),
            g in small_poly_strategy(ring_xy()),
            a in small_poly_strategy(ring_xy()),
            b in small_poly_strategy(ring_xy()),
        ) {
            let r = ring_xy();
            let gb = ideal_groebner(&r, &[f.clone(), g.clone()], TermOrder::DegRevLex).unwrap();
            prop_assert!(gb.verify_spairs());
            prop_assert!(gb.verify_certificates());
            prop_assert!(gb.verify_syzygies());
            // Any combination of the generators is a member, and its lift
            // reconstructs it.
            let h = a.mul(&f).add(&b.mul(&g));
            let v = FreeElem::from_poly(h.clone());
            prop_assert!(gb.contains(&v));
            // The normal form is idempotent.
            let w = FreeElem::from_poly(a.mul(&a).add(&b));
            let nf = gb.normal_form(&w);
            prop_assert_eq!(gb.normal_form(&nf.clone()), nf);
        }

        #[test]
        fn quotient_identity_holds(
            f in small_poly_strategy(ring_xy()),
            g in small_poly_strategy(ring_xy()),
            v in small_poly_strategy(ring_xy()),
        ) {
            let r = ring_xy();
            let gb = ideal_groebner(&r, &[f, g], TermOrder::DegRevLex).unwrap();
            let elem = FreeElem::from_poly(v.clone());
            let (rem, quot) = gb.normal_form_with_quotients(&elem);
            let mut recon = rem.comp(0).clone();
            for (q, e) in quot.iter().zip(gb.elems()) {
                recon = recon.add(&q.mul(e.comp(0)));
            }
            prop_assert_eq!(recon, v);
        }
    }
}
