//! Operator models and their spectral data: fibers, joint spectra, stalks,
//! and local Euler characteristics.
//!
//! A model is a commuting tuple presented one of three ways: square
//! matrices, a finitely presented module acted on by the ring variables, or
//! directly declared homology modules. Throughout, homology is indexed
//! homologically: H_0 is the cokernel of the first differential and H_n the
//! joint kernel.

use crate::error::{Error, Result};
use crate::fpmodule::{koszul_homology, koszul_homology_of_maps, local_dim_along, FPModule};
use crate::groebner::{
    dimension, ideal_groebner, ideal_intersect, k_subsets, minimal_primes_monomial, FreeElem,
};
use crate::matrix::{rational_joint_spectrum, QMatrix};
use crate::poly::{Poly, RingSpec};
use crate::scalar::Scalar;

/// A desk-scale model of a commuting operator tuple over Q[z1..zn].
#[derive(Clone, Debug)]
pub enum OperatorModel {
    /// Commuting square matrices T_1..T_n acting on Q^d.
    MatrixTuple { ring: RingSpec, ops: Vec<QMatrix> },
    /// The ring variables acting by multiplication on a module.
    ModuleTuple { module: FPModule },
    /// Declared homology modules H_0..H_k of an otherwise unspecified
    /// model; missing entries are the zero module.
    ExplicitHomology {
        ring: RingSpec,
        homology: Vec<FPModule>,
    },
}

impl PartialEq for OperatorModel {
    /// Structural equality of the declared data.
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (
                OperatorModel::MatrixTuple { ring: r1, ops: o1 },
                OperatorModel::MatrixTuple { ring: r2, ops: o2 },
            ) => r1 == r2 && o1 == o2,
            (
                OperatorModel::ModuleTuple { module: m1 },
                OperatorModel::ModuleTuple { module: m2 },
            ) => m1 == m2,
            (
                OperatorModel::ExplicitHomology { ring: r1, homology: h1 },
                OperatorModel::ExplicitHomology { ring: r2, homology: h2 },
            ) => r1 == r2 && h1 == h2,
            _ => false,
        }
    }
}

impl OperatorModel {
    pub fn matrix_tuple(ring: RingSpec, ops: Vec<QMatrix>) -> Result<Self> {
        if ops.len() != ring.num_vars() {
            return Err(Error::ShapeMismatch(format!(
                "{} operators for {} variables",
                ops.len(),
                ring.num_vars()
            )));
        }
        let d = ops.first().map(QMatrix::rows).unwrap_or(0);
        for op in &ops {
            if op.rows() != d || op.cols() != d {
                return Err(Error::ShapeMismatch(
                    "operators must be square and share their size".into(),
                ));
            }
        }
        for i in 0..ops.len() {
            for j in i + 1..ops.len() {
                if !ops[i].commutes_with(&ops[j])? {
                    return Err(Error::NonCommuting(format!(
                        "operators {} and {} do not commute",
                        i, j
                    )));
                }
            }
        }
        Ok(OperatorModel::MatrixTuple { ring, ops })
    }

    pub fn module_tuple(module: FPModule) -> Self {
        OperatorModel::ModuleTuple { module }
    }

    pub fn explicit(ring: RingSpec, homology: Vec<FPModule>) -> Result<Self> {
        if homology.len() > ring.num_vars() + 1 {
            return Err(Error::ShapeMismatch(format!(
                "{} homology modules for a tuple of length {}",
                homology.len(),
                ring.num_vars()
            )));
        }
        for h in &homology {
            ring.check_same(h.ring())?;
        }
        Ok(OperatorModel::ExplicitHomology { ring, homology })
    }

    pub fn ring(&self) -> &RingSpec {
        match self {
            OperatorModel::MatrixTuple { ring, .. } => ring,
            OperatorModel::ModuleTuple { module } => module.ring(),
            OperatorModel::ExplicitHomology { ring, .. } => ring,
        }
    }

    /// Length of the tuple (= number of ring variables).
    pub fn tuple_len(&self) -> usize {
        self.ring().num_vars()
    }

    /// The module carrying the tuple, for models that have one: matrices on
    /// Q^d become the module they generate over the polynomial ring.
    pub fn tuple_module(&self) -> Result<FPModule> {
        match self {
            OperatorModel::MatrixTuple { ring, ops } => {
                FPModule::from_matrix_actions(ring, ops)
            }
            OperatorModel::ModuleTuple { module } => Ok(module.clone()),
            OperatorModel::ExplicitHomology { .. } => Err(Error::Unsupported(
                "declared-homology models carry no single module".into(),
            )),
        }
    }

    /// The homology stages of the model as modules: the single carrying
    /// module in degree 0 when one exists, or the declared stages padded
    /// with zero modules.
    pub fn homology_stages(&self) -> Result<Vec<FPModule>> {
        match self {
            OperatorModel::MatrixTuple { .. } | OperatorModel::ModuleTuple { .. } => {
                Ok(vec![self.tuple_module()?])
            }
            OperatorModel::ExplicitHomology { .. } => self.padded_homology(),
        }
    }

    /// Declared homology padded with zero modules to length n+1.
    fn padded_homology(&self) -> Result<Vec<FPModule>> {
        match self {
            OperatorModel::ExplicitHomology { ring, homology } => {
                let mut out = homology.clone();
                while out.len() < ring.num_vars() + 1 {
                    out.push(FPModule::zero(ring));
                }
                Ok(out)
            }
            _ => Err(Error::Unsupported("not a declared-homology model".into())),
        }
    }
}

/// Dimensions of the Koszul homology of a matrix tuple at a point, with the
/// Euler characteristic (the Fredholm index of the fiber complex).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiberHomology {
    pub dims: Vec<usize>,
    pub index: i64,
}

/// Koszul homology of (T - point) on Q^d, by exact rank computations.
pub fn fiber_homology(ops: &[QMatrix], point: &[Scalar]) -> Result<FiberHomology> {
    let n = ops.len();
    if point.len() != n {
        return Err(Error::ShapeMismatch(format!(
            "point has {} coordinates for {} operators",
            point.len(),
            n
        )));
    }
    let d = ops.first().map(QMatrix::rows).unwrap_or(0);
    for (i, op) in ops.iter().enumerate() {
        if op.rows() != d || op.cols() != d {
            return Err(Error::ShapeMismatch(format!("operator {} is not {}x{}", i, d, d)));
        }
        for other in &ops[i + 1..] {
            if !op.commutes_with(other)? {
                return Err(Error::NonCommuting("fiber of a non-commuting tuple".into()));
            }
        }
    }
    let shifted: Vec<QMatrix> = ops
        .iter()
        .zip(point)
        .map(|(op, lambda)| op.shift(lambda))
        .collect::<Result<_>>()?;
    let subsets: Vec<Vec<Vec<usize>>> = (0..=n).map(|k| k_subsets(n, k)).collect();
    // Differential matrices; boundary[k] maps stage k to stage k-1.
    let mut ranks = vec![0usize; n + 2];
    for k in 1..=n {
        let source = &subsets[k];
        let target = &subsets[k - 1];
        let rows = target.len() * d;
        let cols = source.len() * d;
        let mut mat = QMatrix::zero(rows, cols);
        for (si, subset) in source.iter().enumerate() {
            for (t, &s_t) in subset.iter().enumerate() {
                let mut reduced = subset.clone();
                reduced.remove(t);
                let bi = target.iter().position(|s| *s == reduced).expect("subset");
                let a = &shifted[s_t];
                for r in 0..d {
                    for c in 0..d {
                        let v = a.get(r, c);
                        if v.is_zero() {
                            continue;
                        }
                        let signed = if t % 2 == 0 { v.clone() } else { -v.clone() };
                        mat.set(bi * d + r, si * d + c, signed);
                    }
                }
            }
        }
        ranks[k] = mat.rank();
    }
    let mut dims = Vec::with_capacity(n + 1);
    let mut index = 0i64;
    for k in 0..=n {
        let stage_dim = subsets[k].len() * d;
        let h = stage_dim - ranks[k] - ranks[k + 1];
        dims.push(h);
        if k % 2 == 0 {
            index += h as i64;
        } else {
            index -= h as i64;
        }
    }
    Ok(FiberHomology { dims, index })
}

/// The joint spectrum of a model: a finite rational point list when the
/// model is finite-dimensional, otherwise the support variety.
#[derive(Clone, Debug)]
pub enum SpectrumDescription {
    /// All joint eigenvalues with their root-space dimensions.
    FinitePoints(Vec<(Vec<Scalar>, usize)>),
    /// The support: annihilator generators, its Krull dimension, and the
    /// component primes when the annihilator is monomial.
    Variety {
        annihilator: Vec<Poly>,
        dimension: i64,
        monomial_components: Option<Vec<Vec<Poly>>>,
    },
}

pub fn taylor_spectrum(model: &OperatorModel) -> Result<SpectrumDescription> {
    match model {
        OperatorModel::MatrixTuple { ops, .. } => {
            let spec = rational_joint_spectrum(ops)?;
            Ok(SpectrumDescription::FinitePoints(
                spec.into_iter().map(|(p, v)| (p, v.dim())).collect(),
            ))
        }
        OperatorModel::ModuleTuple { module } => match module.realization() {
            Ok(real) => {
                if real.dim() == 0 {
                    return Ok(SpectrumDescription::FinitePoints(Vec::new()));
                }
                let spec = rational_joint_spectrum(real.actions())?;
                Ok(SpectrumDescription::FinitePoints(
                    spec.into_iter().map(|(p, v)| (p, v.dim())).collect(),
                ))
            }
            Err(Error::InfiniteStaircase(_)) => {
                let support = support_data(model)?;
                Ok(SpectrumDescription::Variety {
                    annihilator: support.annihilator,
                    dimension: support.dimension,
                    monomial_components: support.monomial_components,
                })
            }
            Err(other) => Err(other),
        },
        OperatorModel::ExplicitHomology { .. } => {
            let homology = model.padded_homology()?;
            let mut points: Vec<(Vec<Scalar>, usize)> = Vec::new();
            let mut all_finite = true;
            for h in &homology {
                if h.is_zero_module() {
                    continue;
                }
                match h.realization() {
                    Ok(real) => {
                        for (p, v) in rational_joint_spectrum(real.actions())? {
                            match points.iter_mut().find(|(q, _)| *q == p) {
                                Some(entry) => entry.1 += v.dim(),
                                None => points.push((p, v.dim())),
                            }
                        }
                    }
                    Err(Error::InfiniteStaircase(_)) => {
                        all_finite = false;
                        break;
                    }
                    Err(other) => return Err(other),
                }
            }
            if all_finite {
                points.sort_by(|a, b| a.0.cmp(&b.0));
                Ok(SpectrumDescription::FinitePoints(points))
            } else {
                let support = support_data(model)?;
                Ok(SpectrumDescription::Variety {
                    annihilator: support.annihilator,
                    dimension: support.dimension,
                    monomial_components: support.monomial_components,
                })
            }
        }
    }
}

/// Support data of a model: reduced annihilator basis, Krull dimension, and
/// — when the annihilator is monomial — its component primes as variable
/// lists.
#[derive(Clone, Debug)]
pub struct SupportReport {
    pub annihilator: Vec<Poly>,
    pub dimension: i64,
    pub monomial_components: Option<Vec<Vec<Poly>>>,
}

pub fn support_data(model: &OperatorModel) -> Result<SupportReport> {
    let ring = model.ring().clone();
    let ann = match model {
        OperatorModel::MatrixTuple { .. } | OperatorModel::ModuleTuple { .. } => {
            model.tuple_module()?.annihilator()?
        }
        OperatorModel::ExplicitHomology { .. } => {
            let homology = model.padded_homology()?;
            let mut acc = vec![Poly::one(&ring)];
            for h in &homology {
                let ann_h = h.annihilator()?;
                acc = ideal_intersect(&ring, &acc, &ann_h)?;
            }
            acc
        }
    };
    let gb = ideal_groebner(&ring, &ann, crate::fpmodule::MODULE_ORDER)?;
    let basis = gb.polys();
    let dim = dimension(&gb);
    let monomial_components = if basis.iter().all(|p| p.num_terms() <= 1) {
        let primes = minimal_primes_monomial(&gb)?;
        Some(
            primes
                .into_iter()
                .map(|vars| vars.into_iter().map(|v| Poly::var(&ring, v)).collect())
                .collect(),
        )
    } else {
        None
    };
    Ok(SupportReport {
        annihilator: basis,
        dimension: dim,
        monomial_components,
    })
}

/// Localizes a finite-dimensional module at a rational point: restricts the
/// realized actions to the joint root space and re-presents.
pub fn localize_at_point(m: &FPModule, point: &[Scalar]) -> Result<FPModule> {
    let real = m.realization()?;
    if real.dim() == 0 {
        return Ok(FPModule::zero(m.ring()));
    }
    let space = real.root_space(point)?;
    if space.dim() == 0 {
        return Ok(FPModule::zero(m.ring()));
    }
    let restricted: Vec<QMatrix> = real
        .actions()
        .iter()
        .map(|a| space.restrict(a))
        .collect::<Result<_>>()?;
    FPModule::from_matrix_actions(m.ring(), &restricted)
}

/// The stalk homology of a model at a rational point: n+1 local modules in
/// homological indexing.
///
/// Matrix tuples yield honest local root-part modules. For a module tuple
/// the complex is the module itself in degree 0 (its local invariants are
/// read off by the point-local operations downstream); declared homology is
/// returned as declared.
pub fn stalk_homology(model: &OperatorModel, point: &[Scalar]) -> Result<Vec<FPModule>> {
    let ring = model.ring();
    let n = ring.num_vars();
    if point.len() != n {
        return Err(Error::ShapeMismatch(format!(
            "point has {} coordinates for {} variables",
            point.len(),
            n
        )));
    }
    match model {
        OperatorModel::MatrixTuple { ops, .. } => {
            let d = ops.first().map(QMatrix::rows).unwrap_or(0);
            let free = FPModule::free(ring, d);
            // The maps z_i·id - T_i on the free cover.
            let maps: Vec<Vec<FreeElem>> = (0..n)
                .map(|i| {
                    (0..d)
                        .map(|j| {
                            let mut v = FreeElem::zero(ring, d);
                            *v.comp_mut(j) = Poly::var(ring, i);
                            for k in 0..d {
                                let c = ops[i].get(k, j);
                                if !c.is_zero() {
                                    *v.comp_mut(k) =
                                        v.comp(k).sub(&Poly::constant(ring, c.clone()));
                                }
                            }
                            v
                        })
                        .collect()
                })
                .collect();
            let homology = koszul_homology_of_maps(&free, &maps)?;
            homology
                .iter()
                .map(|h| localize_at_point(h, point))
                .collect()
        }
        OperatorModel::ModuleTuple { module } => {
            let mut out = vec![module.clone()];
            out.extend((0..n).map(|_| FPModule::zero(ring)));
            Ok(out)
        }
        OperatorModel::ExplicitHomology { .. } => model.padded_homology(),
    }
}

/// Local Euler characteristic of a module along a transversal frame: the
/// alternating sum, over the Koszul homology of the frame expressions, of
/// the total lengths along the locus where the complement expressions take
/// the values in `comp_point`.
///
/// A frame that fails to be transversal there leaves some homology of
/// positive local dimension, which is reported as `NotACoordinateSystem`.
pub fn chi_prime_general(
    m: &FPModule,
    frame: &[Poly],
    comp: &[Poly],
    comp_point: &[Scalar],
    max_k: usize,
) -> Result<i64> {
    if comp.len() != comp_point.len() {
        return Err(Error::ShapeMismatch(format!(
            "{} complement expressions for {} point coordinates",
            comp.len(),
            comp_point.len()
        )));
    }
    if m.is_zero_module() {
        return Ok(0);
    }
    let ring = m.ring();
    let localizer: Vec<Poly> = comp
        .iter()
        .zip(comp_point)
        .map(|(p, v)| p.sub(&Poly::constant(ring, v.clone())))
        .collect();
    let homology = koszul_homology(m, frame)?;
    let mut chi = 0i64;
    for (j, h) in homology.iter().enumerate() {
        let local_dim = local_dim_along(h, &localizer, max_k).map_err(|e| match e {
            Error::InfiniteDimensional(msg) | Error::NotCofinite(msg) => {
                Error::NotACoordinateSystem(format!(
                    "frame is not transversal at the point: {}",
                    msg
                ))
            }
            other => other,
        })?;
        if j % 2 == 0 {
            chi += local_dim as i64;
        } else {
            chi -= local_dim as i64;
        }
    }
    Ok(chi)
}

/// Local Euler characteristic of a model at a point, with respect to the
/// coordinate frame given by variable indices: the frame directions are cut
/// at the point, the remaining directions are localized there.
pub fn chi_prime(
    model: &OperatorModel,
    point: &[Scalar],
    frame_vars: &[usize],
    max_k: usize,
) -> Result<i64> {
    let ring = model.ring();
    let n = ring.num_vars();
    if point.len() != n {
        return Err(Error::ShapeMismatch(format!(
            "point has {} coordinates for {} variables",
            point.len(),
            n
        )));
    }
    let mut seen = vec![false; n];
    for &v in frame_vars {
        if v >= n {
            return Err(Error::ShapeMismatch(format!(
                "frame variable index {} out of range",
                v
            )));
        }
        if seen[v] {
            return Err(Error::ShapeMismatch("repeated frame variable".into()));
        }
        seen[v] = true;
    }
    let frame: Vec<Poly> = frame_vars
        .iter()
        .map(|&i| Poly::var(ring, i).sub(&Poly::constant(ring, point[i].clone())))
        .collect();
    let comp_vars: Vec<usize> = (0..n).filter(|v| !seen[*v]).collect();
    let comp: Vec<Poly> = comp_vars.iter().map(|&i| Poly::var(ring, i)).collect();
    let comp_point: Vec<Scalar> = comp_vars.iter().map(|&i| point[i].clone()).collect();
    match model {
        OperatorModel::MatrixTuple { .. } | OperatorModel::ModuleTuple { .. } => {
            chi_prime_general(&model.tuple_module()?, &frame, &comp, &comp_point, max_k)
        }
        OperatorModel::ExplicitHomology { .. } => {
            let homology = model.padded_homology()?;
            let mut chi = 0i64;
            for (j, h) in homology.iter().enumerate() {
                let c = chi_prime_general(h, &frame, &comp, &comp_point, max_k)?;
                if j % 2 == 0 {
                    chi += c;
                } else {
                    chi -= c;
                }
            }
            Ok(chi)
        }
    }
}

/// Checks the single-valued extension property: the Koszul complex of
/// (z - u) on the model over the doubled ring must be exact in positive
/// degrees.
pub fn svep_check(model: &OperatorModel) -> Result<bool> {
    match model {
        OperatorModel::MatrixTuple { .. } => Ok(true),
        OperatorModel::ModuleTuple { module } => {
            let ring = module.ring();
            let n = ring.num_vars();
            let mut u_names = Vec::with_capacity(n);
            let mut taken = ring.vars().to_vec();
            for i in 0..n {
                let mut name = format!("u{}", i + 1);
                while taken.contains(&name) {
                    name.push('_');
                }
                taken.push(name.clone());
                u_names.push(name);
            }
            let big = ring.extend(u_names);
            let promoted = module.promote(&big)?;
            let exprs: Vec<Poly> = (0..n)
                .map(|i| Poly::var(&big, i).sub(&Poly::var(&big, n + i)))
                .collect();
            let homology = koszul_homology(&promoted, &exprs)?;
            Ok(homology.iter().skip(1).all(FPModule::is_zero_module))
        }
        OperatorModel::ExplicitHomology { .. } => {
            let homology = model.padded_homology()?;
            Ok(homology.iter().skip(1).all(FPModule::is_zero_module))
        }
    }
}
