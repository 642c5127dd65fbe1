//! Finitely presented modules: homology, realizations, and multiplicities.
//!
//! A module is a free cover R^g modulo explicit relation vectors. Kernels,
//! subquotients, and Koszul homology all reduce to syzygy computations of
//! the Gröbner engine; finite-dimensional quotients are realized as tuples
//! of commuting matrices, which links the module world to the exact linear
//! algebra layer.

use std::collections::HashMap;
use std::sync::OnceLock;

use crate::defaults::CONFIRM_POINTS;
use crate::error::{Error, Result};
use crate::groebner::{
    ideal_groebner, ideal_intersect, k_subsets, module_groebner, std_monomials, FreeElem,
    GroebnerBasis,
};
use crate::matrix::{joint_root_space, QMatrix, Subspace};
use crate::poly::{Monomial, Poly, RingSpec, TermOrder};
use crate::scalar::Scalar;

/// The term order used for module presentations throughout.
pub const MODULE_ORDER: TermOrder = TermOrder::DegRevLex;

/// A finitely presented module R^gens / (relations).
#[derive(Clone, Debug)]
pub struct FPModule {
    ring: RingSpec,
    gens: usize,
    relations: Vec<FreeElem>,
    gb: OnceLock<GroebnerBasis>,
}

impl PartialEq for FPModule {
    /// Presentation equality: same ring, rank, and listed relations.
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.gens == other.gens && self.relations == other.relations
    }
}

impl FPModule {
    pub fn new(ring: &RingSpec, gens: usize, relations: Vec<FreeElem>) -> Result<Self> {
        for r in &relations {
            ring.check_same(r.ring())?;
            if r.rank() != gens {
                return Err(Error::ShapeMismatch(format!(
                    "relation of rank {} in a module with {} generators",
                    r.rank(),
                    gens
                )));
            }
        }
        Ok(FPModule {
            ring: ring.clone(),
            gens,
            relations,
            gb: OnceLock::new(),
        })
    }

    /// The zero module.
    pub fn zero(ring: &RingSpec) -> Self {
        FPModule::new(ring, 0, Vec::new()).expect("zero module")
    }

    /// The free module R^gens.
    pub fn free(ring: &RingSpec, gens: usize) -> Self {
        FPModule::new(ring, gens, Vec::new()).expect("free module")
    }

    /// The cyclic module R/(ideal).
    pub fn quotient_ring(ring: &RingSpec, ideal: &[Poly]) -> Result<Self> {
        let relations = ideal
            .iter()
            .cloned()
            .map(FreeElem::from_poly)
            .collect();
        FPModule::new(ring, 1, relations)
    }

    /// The module presented by commuting matrix actions on Q^k: generators
    /// are the standard basis vectors, relations say each variable acts as
    /// its matrix.
    pub fn from_matrix_actions(ring: &RingSpec, actions: &[QMatrix]) -> Result<Self> {
        if actions.len() != ring.num_vars() {
            return Err(Error::ShapeMismatch(format!(
                "{} action matrices for {} variables",
                actions.len(),
                ring.num_vars()
            )));
        }
        let k = actions.first().map(QMatrix::rows).unwrap_or(0);
        let mut relations = Vec::new();
        for (v, a) in actions.iter().enumerate() {
            if a.rows() != k || a.cols() != k {
                return Err(Error::ShapeMismatch("action matrices must share shape".into()));
            }
            for j in 0..k {
                let mut rel = FreeElem::zero(ring, k);
                *rel.comp_mut(j) = Poly::var(ring, v);
                for l in 0..k {
                    let c = a.get(l, j);
                    if !c.is_zero() {
                        *rel.comp_mut(l) = rel.comp(l).sub(&Poly::constant(ring, c.clone()));
                    }
                }
                relations.push(rel);
            }
        }
        FPModule::new(ring, k, relations)
    }

    pub fn ring(&self) -> &RingSpec {
        &self.ring
    }

    pub fn gens(&self) -> usize {
        self.gens
    }

    pub fn relations(&self) -> &[FreeElem] {
        &self.relations
    }

    /// The Gröbner basis of the relation submodule (computed once).
    pub fn gb(&self) -> &GroebnerBasis {
        self.gb.get_or_init(|| {
            module_groebner(&self.ring, self.gens, &self.relations, MODULE_ORDER)
                .expect("shapes validated at construction")
        })
    }

    /// True when every generator class is zero.
    pub fn is_zero_module(&self) -> bool {
        (0..self.gens).all(|j| {
            self.gb()
                .contains(&FreeElem::unit(&self.ring, self.gens, j))
        })
    }

    /// The standard monomial basis (component, monomial) of the quotient,
    /// when finite-dimensional.
    pub fn standard_basis(&self) -> Result<Vec<(usize, Monomial)>> {
        std_monomials(self.gb())
    }

    /// Vector-space dimension over Q, when finite.
    pub fn vector_space_dim(&self) -> Result<usize> {
        Ok(self.standard_basis()?.len())
    }

    /// Reinterprets the module over a larger ring containing the same
    /// variable names.
    pub fn promote(&self, target: &RingSpec) -> Result<FPModule> {
        let relations = self
            .relations
            .iter()
            .map(|r| r.promote(target))
            .collect::<Result<Vec<_>>>()?;
        FPModule::new(target, self.gens, relations)
    }

    /// The quotient M/(polys)M.
    pub fn quotient_by_ideal(&self, polys: &[Poly]) -> Result<FPModule> {
        let mut relations = self.relations.clone();
        for p in polys {
            self.ring.check_same(p.ring())?;
            for j in 0..self.gens {
                let mut rel = FreeElem::zero(&self.ring, self.gens);
                *rel.comp_mut(j) = p.clone();
                relations.push(rel);
            }
        }
        FPModule::new(&self.ring, self.gens, relations)
    }

    /// Multiplication by a polynomial, as generator images in the free
    /// cover.
    pub fn multiplication_images(&self, p: &Poly) -> Vec<FreeElem> {
        (0..self.gens)
            .map(|j| {
                let mut v = FreeElem::zero(&self.ring, self.gens);
                *v.comp_mut(j) = p.clone();
                v
            })
            .collect()
    }

    /// Coordinates of a free-cover vector's class in the standard basis of
    /// the given realization.
    pub fn coordinates(&self, real: &Realization, v: &FreeElem) -> Vec<Scalar> {
        let nf = self.gb().normal_form(v);
        real.expand(&nf)
    }

    /// Finite realization: the standard basis together with one commuting
    /// action matrix per ring variable.
    pub fn realization(&self) -> Result<Realization> {
        let basis = self.standard_basis()?;
        let mut index = HashMap::new();
        for (i, key) in basis.iter().enumerate() {
            index.insert(key.clone(), i);
        }
        let dim = basis.len();
        let n = self.ring.num_vars();
        let mut actions = Vec::with_capacity(n);
        for v in 0..n {
            let mut mat = QMatrix::zero(dim, dim);
            for (col, (comp, mon)) in basis.iter().enumerate() {
                let shifted = Monomial::var(self.ring.num_vars(), v).mul(mon);
                let mut vec = FreeElem::zero(&self.ring, self.gens);
                vec.comp_mut(*comp).add_term(shifted, Scalar::one());
                let nf = self.gb().normal_form(&vec);
                for (c, p) in nf.comps().iter().enumerate() {
                    for (m, s) in p.terms() {
                        let row = index[&(c, m.clone())];
                        mat.set(row, col, s.clone());
                    }
                }
            }
            actions.push(mat);
        }
        Ok(Realization {
            basis,
            index,
            actions,
        })
    }

    /// Eliminates generators that a relation expresses in terms of the
    /// others, yielding a smaller presentation of the same module.
    pub fn prune(&self) -> FPModule {
        let mut gens = self.gens;
        let mut relations: Vec<FreeElem> = self
            .relations
            .iter()
            .filter(|r| !r.is_zero())
            .cloned()
            .collect();
        loop {
            let mut found = None;
            'scan: for (ri, r) in relations.iter().enumerate() {
                for j in 0..gens {
                    if r.comp(j).is_unit() {
                        found = Some((ri, j));
                        break 'scan;
                    }
                }
            }
            let Some((ri, j)) = found else { break };
            let r = relations.remove(ri);
            let c = r.comp(j).constant_term();
            let keep: Vec<usize> = (0..gens).filter(|&i| i != j).collect();
            relations = relations
                .iter()
                .map(|s| {
                    // Substitute gen_j = -(1/c) Σ_{i≠j} r_i gen_i.
                    let factor = s.comp(j).scale(&(Scalar::one() / c.clone()));
                    let comps: Vec<Poly> = keep
                        .iter()
                        .map(|&i| s.comp(i).sub(&factor.mul(r.comp(i))))
                        .collect();
                    FreeElem::new(&self.ring, comps).expect("same ring")
                })
                .filter(|s| !s.is_zero())
                .collect();
            gens -= 1;
        }
        FPModule::new(&self.ring, gens, relations).expect("same ring")
    }

    /// The annihilator ideal: all p with p·M = 0.
    pub fn annihilator(&self) -> Result<Vec<Poly>> {
        if self.gens == 0 {
            return Ok(vec![Poly::one(&self.ring)]);
        }
        let mut acc: Option<Vec<Poly>> = None;
        for j in 0..self.gens {
            let e_j = FreeElem::unit(&self.ring, self.gens, j);
            let colon: Vec<Poly> = lift_kernel(&self.ring, self.gens, &[e_j], &self.relations)?
                .into_iter()
                .map(|v| v.comp(0).clone())
                .collect();
            acc = Some(match acc {
                None => colon,
                Some(prev) => ideal_intersect(&self.ring, &prev, &colon)?,
            });
        }
        Ok(acc.expect("at least one generator"))
    }

    /// Krull dimension of the module (that of R modulo its annihilator);
    /// the zero module reports -1.
    pub fn module_dimension(&self) -> Result<i64> {
        let ann = self.annihilator()?;
        let gb = ideal_groebner(&self.ring, &ann, MODULE_ORDER)?;
        Ok(crate::groebner::dimension(&gb))
    }
}

/// A finite-dimensional quotient realized on Q^dim: standard basis and the
/// commuting matrices by which the ring variables act.
#[derive(Clone, Debug)]
pub struct Realization {
    basis: Vec<(usize, Monomial)>,
    index: HashMap<(usize, Monomial), usize>,
    actions: Vec<QMatrix>,
}

impl Realization {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[(usize, Monomial)] {
        &self.basis
    }

    pub fn actions(&self) -> &[QMatrix] {
        &self.actions
    }

    /// Expands a normal-form vector (all terms standard) in the basis.
    fn expand(&self, nf: &FreeElem) -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(); self.dim()];
        for (c, p) in nf.comps().iter().enumerate() {
            for (m, s) in p.terms() {
                let i = self.index[&(c, m.clone())];
                out[i] = s.clone();
            }
        }
        out
    }

    /// Evaluates a polynomial at the action matrices.
    pub fn eval_poly(&self, p: &Poly) -> Result<QMatrix> {
        p.eval_matrices(&self.actions)
    }

    /// The joint root space of the action tuple at a rational point.
    pub fn root_space(&self, point: &[Scalar]) -> Result<Subspace> {
        if self.dim() == 0 {
            return Ok(Subspace::trivial(0));
        }
        joint_root_space(&self.actions, point)
    }
}

/// Generators of the kernel of R^s → R^target_rank/(rels), e_i ↦ images[i]:
/// all a with Σ a_i·images_i in the relation submodule.
pub fn lift_kernel(
    ring: &RingSpec,
    target_rank: usize,
    images: &[FreeElem],
    rels: &[FreeElem],
) -> Result<Vec<FreeElem>> {
    let mut inputs = images.to_vec();
    inputs.extend(rels.iter().cloned());
    let gb = module_groebner(ring, target_rank, &inputs, MODULE_ORDER)?;
    let s = images.len();
    let mut out = Vec::new();
    for syz in gb.syzygies() {
        let a = syz[..s].to_vec();
        if a.iter().any(|p| !p.is_zero()) {
            out.push(FreeElem::new(ring, a)?);
        }
    }
    Ok(out)
}

/// A map between finitely presented modules, given by generator images in
/// the target's free cover. Construction verifies well-definedness.
#[derive(Clone, Debug)]
pub struct ModuleMap {
    source: FPModule,
    target: FPModule,
    images: Vec<FreeElem>,
}

impl ModuleMap {
    pub fn new(source: FPModule, target: FPModule, images: Vec<FreeElem>) -> Result<Self> {
        source.ring().check_same(target.ring())?;
        if images.len() != source.gens() {
            return Err(Error::ShapeMismatch(format!(
                "{} images for {} source generators",
                images.len(),
                source.gens()
            )));
        }
        for v in &images {
            if v.rank() != target.gens() {
                return Err(Error::ShapeMismatch(
                    "image rank does not match target generators".into(),
                ));
            }
        }
        let map = ModuleMap {
            source,
            target,
            images,
        };
        for r in map.source.relations() {
            if !map.target.gb().contains(&map.apply(r)) {
                return Err(Error::IllDefinedMap("source relation does not map into the target relations".to_string()));
            }
        }
        Ok(map)
    }

    pub fn source(&self) -> &FPModule {
        &self.source
    }

    pub fn target(&self) -> &FPModule {
        &self.target
    }

    pub fn images(&self) -> &[FreeElem] {
        &self.images
    }

    /// Applies the map to a free-cover vector of the source.
    pub fn apply(&self, v: &FreeElem) -> FreeElem {
        let mut out = FreeElem::zero(self.target.ring(), self.target.gens());
        for (j, img) in self.images.iter().enumerate() {
            if !v.comp(j).is_zero() {
                out = out.add(&img.mul_poly(v.comp(j)));
            }
        }
        out
    }

    /// The kernel: generators inside the source's free cover, plus an
    /// abstract presentation of the kernel module.
    pub fn kernel(&self) -> Result<(Vec<FreeElem>, FPModule)> {
        let gens = lift_kernel(
            self.source.ring(),
            self.target.gens(),
            &self.images,
            self.target.relations(),
        )?;
        let presentation = presentation_of_span(&self.source, &gens)?;
        Ok((gens, presentation))
    }
}

/// Presents the submodule of `ambient` spanned by `gens` abstractly: one
/// generator per spanning vector, relations from their syzygies modulo the
/// ambient relations.
fn presentation_of_span(ambient: &FPModule, gens: &[FreeElem]) -> Result<FPModule> {
    let relations = lift_kernel(
        ambient.ring(),
        ambient.gens(),
        gens,
        ambient.relations(),
    )?;
    FPModule::new(ambient.ring(), gens.len(), relations)
}

/// The subquotient (span(top) + rels)/(span(bottom) + rels) of a module,
/// presented on the `top` vectors. Errors with `NotContained` when the
/// bottom does not lie inside the span of the top.
pub fn subquotient(
    ambient: &FPModule,
    top: &[FreeElem],
    bottom: &[FreeElem],
) -> Result<FPModule> {
    let mut span_inputs = top.to_vec();
    span_inputs.extend(ambient.relations().iter().cloned());
    let span_gb = module_groebner(ambient.ring(), ambient.gens(), &span_inputs, MODULE_ORDER)?;
    for b in bottom {
        if !span_gb.contains(b) {
            return Err(Error::NotContained(
                "subquotient bottom is not inside the top span".into(),
            ));
        }
    }
    let mut modulus = bottom.to_vec();
    modulus.extend(ambient.relations().iter().cloned());
    let relations = lift_kernel(ambient.ring(), ambient.gens(), top, &modulus)?;
    Ok(FPModule::new(ambient.ring(), top.len(), relations)?.prune())
}

/// Koszul homology of commuting module endomorphisms, in homological
/// indexing: H_0 is the cokernel of the last differential, H_r the joint
/// kernel. `maps[i][j]` is the image of generator j under the i-th map.
pub fn koszul_homology_of_maps(
    m: &FPModule,
    maps: &[Vec<FreeElem>],
) -> Result<Vec<FPModule>> {
    let ring = m.ring();
    let g = m.gens();
    let r = maps.len();
    for (i, map) in maps.iter().enumerate() {
        if map.len() != g {
            return Err(Error::ShapeMismatch(format!(
                "map {} has {} images for {} generators",
                i,
                map.len(),
                g
            )));
        }
        for v in map {
            ring.check_same(v.ring())?;
            if v.rank() != g {
                return Err(Error::ShapeMismatch("image rank mismatch".into()));
            }
        }
        for rel in m.relations() {
            if !m.gb().contains(&apply_map(ring, g, map, rel)) {
                return Err(Error::IllDefinedMap(format!(
                    "map {} does not preserve the relations",
                    i
                )));
            }
        }
    }
    for i in 0..r {
        for j in i + 1..r {
            for l in 0..g {
                let e = FreeElem::unit(ring, g, l);
                let ij = apply_map(ring, g, &maps[i], &apply_map(ring, g, &maps[j], &e));
                let ji = apply_map(ring, g, &maps[j], &apply_map(ring, g, &maps[i], &e));
                if !m.gb().contains(&ij.sub(&ji)) {
                    return Err(Error::NonCommuting(format!(
                        "maps {} and {} do not commute on the module",
                        i, j
                    )));
                }
            }
        }
    }

    // Stage k has one block of M per k-subset of maps, in lexicographic
    // subset order.
    let stage_subsets: Vec<Vec<Vec<usize>>> = (0..=r).map(|k| k_subsets(r, k)).collect();
    let stage_module = |k: usize| -> Result<FPModule> {
        let blocks = stage_subsets[k].len();
        let rank = blocks * g;
        let mut relations = Vec::new();
        for b in 0..blocks {
            for rel in m.relations() {
                relations.push(embed_block(ring, rank, b * g, rel));
            }
        }
        FPModule::new(ring, rank, relations)
    };
    // Differential from stage k to stage k-1 as generator images.
    let differential = |k: usize| -> Vec<FreeElem> {
        let source_subsets = &stage_subsets[k];
        let target_subsets = &stage_subsets[k - 1];
        let target_index: HashMap<&Vec<usize>, usize> = target_subsets
            .iter()
            .enumerate()
            .map(|(i, s)| (s, i))
            .collect();
        let target_rank = target_subsets.len() * g;
        let mut images = Vec::new();
        for subset in source_subsets {
            // `j` ranges over generators while the map index varies inside.
            #[allow(clippy::needless_range_loop)]
            for j in 0..g {
                let mut image = FreeElem::zero(ring, target_rank);
                for (t, &s_t) in subset.iter().enumerate() {
                    let mut reduced = subset.clone();
                    reduced.remove(t);
                    let block = target_index[&reduced];
                    let phi = &maps[s_t][j];
                    let embedded = embed_block(ring, target_rank, block * g, phi);
                    if t % 2 == 0 {
                        image = image.add(&embedded);
                    } else {
                        image = image.sub(&embedded);
                    }
                }
                images.push(image);
            }
        }
        images
    };

    let mut homology = Vec::with_capacity(r + 1);
    for k in 0..=r {
        let stage = stage_module(k)?;
        let kernel_gens: Vec<FreeElem> = if k == 0 {
            (0..stage.gens())
                .map(|j| FreeElem::unit(ring, stage.gens(), j))
                .collect()
        } else {
            lift_kernel(
                ring,
                stage_subsets[k - 1].len() * g,
                &differential(k),
                stage_module(k - 1)?.relations(),
            )?
        };
        let image_gens: Vec<FreeElem> = if k == r {
            Vec::new()
        } else {
            differential(k + 1)
        };
        homology.push(subquotient(&stage, &kernel_gens, &image_gens)?);
    }
    Ok(homology)
}

fn apply_map(ring: &RingSpec, g: usize, map: &[FreeElem], v: &FreeElem) -> FreeElem {
    let mut out = FreeElem::zero(ring, g);
    for (mj, vj) in map.iter().zip(v.comps()) {
        if !vj.is_zero() {
            out = out.add(&mj.mul_poly(vj));
        }
    }
    out
}

fn embed_block(ring: &RingSpec, rank: usize, offset: usize, v: &FreeElem) -> FreeElem {
    let mut out = FreeElem::zero(ring, rank);
    for (i, p) in v.comps().iter().enumerate() {
        *out.comp_mut(offset + i) = p.clone();
    }
    out
}

/// Koszul homology of multiplication by the given ring elements.
pub fn koszul_homology(m: &FPModule, elems: &[Poly]) -> Result<Vec<FPModule>> {
    let maps: Vec<Vec<FreeElem>> = elems
        .iter()
        .map(|p| m.multiplication_images(p))
        .collect();
    koszul_homology_of_maps(m, &maps)
}

/// dim M/(q)^k M: the Hilbert–Samuel function of M along the ideal
/// generated by `q`, at argument k.
pub fn hs_function(m: &FPModule, q: &[Poly], k: usize) -> Result<usize> {
    let products = degree_products(m.ring(), q, k);
    let mut relations = m.relations().to_vec();
    for p in &products {
        for j in 0..m.gens() {
            let mut rel = FreeElem::zero(m.ring(), m.gens());
            *rel.comp_mut(j) = p.clone();
            relations.push(rel);
        }
    }
    FPModule::new(m.ring(), m.gens(), relations)?.vector_space_dim()
}

/// All products of exactly k factors drawn from `q` (with repetition).
/// With no factors available and k > 0 there are none; k = 0 yields 1.
fn degree_products(ring: &RingSpec, q: &[Poly], k: usize) -> Vec<Poly> {
    let mut out = Vec::new();
    let mut exponents = vec![0usize; q.len()];
    fn rec(
        ring: &RingSpec,
        q: &[Poly],
        k: usize,
        i: usize,
        exponents: &mut Vec<usize>,
        out: &mut Vec<Poly>,
    ) {
        if i == q.len() {
            if k == 0 {
                let mut p = Poly::one(ring);
                for (j, &e) in exponents.iter().enumerate() {
                    p = p.mul(&q[j].pow(e as u32));
                }
                out.push(p);
            }
            return;
        }
        for e in 0..=k {
            exponents[i] = e;
            rec(ring, q, k - e, i + 1, exponents, out);
        }
        exponents[i] = 0;
    }
    if q.is_empty() {
        if k == 0 {
            out.push(Poly::one(ring));
        }
        return out;
    }
    rec(ring, q, k, 0, &mut exponents, &mut out);
    out
}

/// A polynomial fitted to the tail of an integer sequence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TailFit {
    /// Least index from which the polynomial matches every value.
    pub start: usize,
    /// Degree of the fitted polynomial; -1 when the tail is identically 0.
    pub degree: i64,
    /// Coefficients in ascending powers; empty when the tail is zero.
    pub coeffs: Vec<Scalar>,
    /// degree! times the leading coefficient (0 when the tail is zero).
    pub normalized_leading: Scalar,
}

impl TailFit {
    /// Evaluates the fitted polynomial at k.
    pub fn eval(&self, k: usize) -> Scalar {
        let x = Scalar::from_int(k as i64);
        let mut acc = Scalar::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x.clone() + c.clone();
        }
        acc
    }
}

/// Finds the least start and degree such that a polynomial matches every
/// value from that start on, requiring at least `confirm` entries in the
/// vanishing difference row as evidence.
pub fn fit_polynomial_tail(values: &[usize], confirm: usize) -> Option<TailFit> {
    for s in 0..values.len() {
        let tail: Vec<Scalar> = values[s..]
            .iter()
            .map(|&v| Scalar::from_int(v as i64))
            .collect();
        if tail.len() < confirm {
            break;
        }
        let mut row = tail.clone();
        let mut level = 0usize;
        loop {
            if row.iter().all(Scalar::is_zero) && row.len() >= confirm {
                return Some(build_fit(values, s, level, &tail));
            }
            if row.len() <= confirm {
                break; // next row would be too short to confirm
            }
            row = row.windows(2).map(|w| w[1].clone() - w[0].clone()).collect();
            level += 1;
        }
    }
    None
}

fn build_fit(values: &[usize], s: usize, level: usize, tail: &[Scalar]) -> TailFit {
    // Newton forward expansion from the leading entries of each difference
    // row: P(k) = Σ_i D_i[0] · C(k - s, i) for i < level.
    let mut row = tail.to_vec();
    let mut acc: Vec<Scalar> = Vec::new(); // polynomial coefficients in k
    for i in 0..level {
        let d = row[0].clone();
        if !d.is_zero() {
            let basis = falling_binomial(s, i);
            if acc.len() < basis.len() {
                acc.resize(basis.len(), Scalar::zero());
            }
            for (j, b) in basis.into_iter().enumerate() {
                acc[j] += d.clone() * b;
            }
        }
        row = row.windows(2).map(|w| w[1].clone() - w[0].clone()).collect();
    }
    while acc.last().map(Scalar::is_zero).unwrap_or(false) {
        acc.pop();
    }
    let degree = acc.len() as i64 - 1;
    let normalized_leading = if degree < 0 {
        Scalar::zero()
    } else {
        let mut fact = Scalar::one();
        for i in 1..=degree {
            fact *= Scalar::from_int(i);
        }
        fact * acc.last().expect("nonzero polynomial").clone()
    };
    let fit = TailFit {
        start: s,
        degree,
        coeffs: acc,
        normalized_leading,
    };
    // Shrink the start while earlier values already match.
    let mut start = s;
    while start > 0 && fit.eval(start - 1) == Scalar::from_int(values[start - 1] as i64) {
        start -= 1;
    }
    TailFit { start, ..fit }
}

/// Coefficients (ascending in k) of the binomial C(k - s, i).
fn falling_binomial(s: usize, i: usize) -> Vec<Scalar> {
    let mut poly = vec![Scalar::one()];
    for j in 0..i {
        // Multiply by (k - s - j).
        let shift = -Scalar::from_int(s as i64 + j as i64);
        let mut next = vec![Scalar::zero(); poly.len() + 1];
        for (d, c) in poly.iter().enumerate() {
            next[d] += c.clone() * shift.clone();
            next[d + 1] += c.clone();
        }
        poly = next;
    }
    let mut fact = Scalar::one();
    for j in 1..=i as i64 {
        fact *= Scalar::from_int(j);
    }
    let inv = fact.inv();
    poly.into_iter().map(|c| c * inv.clone()).collect()
}

/// The Hilbert–Samuel record of a module along an ideal: the computed
/// values of dim M/(q)^k M and the polynomial their tail obeys.
#[derive(Clone, Debug)]
pub struct HsRecord {
    pub values: Vec<usize>,
    pub start: usize,
    pub degree: i64,
    pub coeffs: Vec<Scalar>,
    /// degree! times the leading coefficient: the multiplicity.
    pub normalized_leading: Scalar,
}

fn fit_to_record(values: Vec<usize>, fit: TailFit) -> HsRecord {
    HsRecord {
        values,
        start: fit.start,
        degree: fit.degree,
        coeffs: fit.coeffs,
        normalized_leading: fit.normalized_leading,
    }
}

/// Computes Hilbert–Samuel values incrementally until the tail fits a
/// polynomial with the pinned confirmation margin.
pub fn hs_polynomial(m: &FPModule, q: &[Poly], max_k: usize) -> Result<HsRecord> {
    if m.is_zero_module() {
        return Err(Error::ZeroModule(
            "Hilbert–Samuel data of the zero module is empty".into(),
        ));
    }
    hs_polynomial_by(max_k, |k| {
        hs_function(m, q, k).map_err(|e| match e {
            Error::InfiniteStaircase(msg) => Error::NotCofinite(format!(
                "quotient by ideal powers stays infinite-dimensional: {}",
                msg
            )),
            other => other,
        })
    })
}

/// Shared incremental fitting loop over any exact value function.
pub fn hs_polynomial_by<F>(max_k: usize, mut value: F) -> Result<HsRecord>
where
    F: FnMut(usize) -> Result<usize>,
{
    let mut values = Vec::new();
    for k in 0..=max_k {
        values.push(value(k)?);
        if values.len() > CONFIRM_POINTS {
            if let Some(fit) = fit_polynomial_tail(&values, CONFIRM_POINTS) {
                return Ok(fit_to_record(values, fit));
            }
        }
    }
    Err(Error::NoStabilization(format!(
        "no polynomial tail within {} values",
        max_k + 1
    )))
}

/// Local Hilbert–Samuel record at a rational point: values are the
/// dimensions of the root part of M/(q)^k M at the point.
pub fn hs_polynomial_local(
    m: &FPModule,
    q: &[Poly],
    point: &[Scalar],
    max_k: usize,
) -> Result<HsRecord> {
    if m.is_zero_module() {
        return Err(Error::ZeroModule(
            "Hilbert–Samuel data of the zero module is empty".into(),
        ));
    }
    hs_polynomial_by(max_k, |k| {
        let products = degree_products(m.ring(), q, k);
        let quotient = m.quotient_by_ideal(&products)?;
        let real = quotient.realization().map_err(|e| match e {
            Error::InfiniteStaircase(msg) => Error::NotCofinite(format!(
                "quotient by ideal powers stays infinite-dimensional: {}",
                msg
            )),
            other => other,
        })?;
        Ok(real.root_space(point)?.dim())
    })
}

/// Total length of M along the locus cut out by `q`: the stabilized value
/// of dim M/(q)^k M. Errors with `InfiniteDimensional` when that value
/// grows polynomially instead of stabilizing.
pub fn local_dim_along(m: &FPModule, q: &[Poly], max_k: usize) -> Result<usize> {
    if m.is_zero_module() {
        return Ok(0);
    }
    let record = hs_polynomial(m, q, max_k)?;
    if record.degree > 0 {
        return Err(Error::InfiniteDimensional(
            "the module is not finite length along the localizing ideal".into(),
        ));
    }
    if record.degree < 0 {
        return Ok(0);
    }
    record.coeffs[0]
        .to_i64()
        .map(|v| v as usize)
        .ok_or_else(|| Error::NoStabilization("non-integer stabilized dimension".into()))
}

/// Length of the localization of M at a rational point, computed by
/// thickening: the stabilized root-part dimension of M/(z - point)^k M.
pub fn local_dim_at_point(m: &FPModule, point: &[Scalar], max_k: usize) -> Result<usize> {
    let ring = m.ring().clone();
    if point.len() != ring.num_vars() {
        return Err(Error::ShapeMismatch(format!(
            "point has {} coordinates for {} variables",
            point.len(),
            ring.num_vars()
        )));
    }
    let exprs: Vec<Poly> = (0..ring.num_vars())
        .map(|i| Poly::var(&ring, i).sub(&Poly::constant(&ring, point[i].clone())))
        .collect();
    if m.is_zero_module() {
        return Ok(0);
    }
    let record = hs_polynomial_local(m, &exprs, point, max_k)?;
    if record.degree > 0 {
        return Err(Error::InfiniteDimensional(format!(
            "localization at {} is not finite length",
            crate::poly::format_point(point)
        )));
    }
    if record.degree < 0 {
        return Ok(0);
    }
    record.coeffs[0]
        .to_i64()
        .map(|v| v as usize)
        .ok_or_else(|| Error::NoStabilization("non-integer stabilized dimension".into()))
}

/// The Serre multiplicity of a parameter system on a module: the
/// alternating sum of Koszul homology dimensions.
#[derive(Clone, Debug)]
pub struct SerreRecord {
    pub multiplicity: i64,
    pub homology_dims: Vec<usize>,
}

pub fn multiplicity_serre(m: &FPModule, params: &[Poly]) -> Result<SerreRecord> {
    let dim = m.module_dimension()?;
    if dim != params.len() as i64 {
        return Err(Error::DimensionMismatch(format!(
            "module dimension {} differs from parameter count {}",
            dim,
            params.len()
        )));
    }
    match hs_function(m, params, 1) {
        Err(Error::InfiniteStaircase(msg)) => {
            return Err(Error::NotCofinite(format!(
                "module modulo the parameters is infinite-dimensional: {}",
                msg
            )))
        }
        Err(other) => return Err(other),
        Ok(_) => {}
    }
    let homology = koszul_homology(m, params)?;
    let mut dims = Vec::with_capacity(homology.len());
    for h in &homology {
        let d = h.vector_space_dim().map_err(|e| match e {
            Error::InfiniteStaircase(msg) => Error::NotCofinite(format!(
                "Koszul homology is infinite-dimensional: {}",
                msg
            )),
            other => other,
        })?;
        dims.push(d);
    }
    let mut mult = 0i64;
    for (i, d) in dims.iter().enumerate() {
        if i % 2 == 0 {
            mult += *d as i64;
        } else {
            mult -= *d as i64;
        }
    }
    Ok(SerreRecord {
        multiplicity: mult,
        homology_dims: dims,
    })
}
