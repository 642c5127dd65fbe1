//! Graded modules: exact Hilbert functions by degree, partial-sum rank
//! polynomials, and the comparison of their leading data with the
//! Hilbert–Samuel polynomial at the origin.

use crate::error::{Error, Result};
use crate::fpmodule::{hs_polynomial, hs_polynomial_by, FPModule, HsRecord};
use crate::poly::{Monomial, Poly};
use crate::scalar::Scalar;

/// A finitely presented module whose relations are homogeneous, so that
/// counting by degree is well defined.
#[derive(Clone, Debug)]
pub struct GradedModule {
    module: FPModule,
}

impl GradedModule {
    /// Checks that every relation is homogeneous: each entry homogeneous,
    /// and all nonzero entries of one relation of the same degree.
    pub fn new(module: FPModule) -> Result<Self> {
        for rel in module.relations() {
            let mut degree: Option<u32> = None;
            for p in rel.comps() {
                if p.is_zero() {
                    continue;
                }
                if !p.is_homogeneous() {
                    return Err(Error::NotHomogeneous(format!(
                        "relation entry {} mixes degrees",
                        p
                    )));
                }
                let d = p.total_degree().expect("nonzero entry");
                if let Some(seen) = degree {
                    if seen != d {
                        return Err(Error::NotHomogeneous(format!(
                            "relation entries of degrees {} and {} in one relation",
                            seen, d
                        )));
                    }
                } else {
                    degree = Some(d);
                }
            }
        }
        Ok(GradedModule { module })
    }

    pub fn module(&self) -> &FPModule {
        &self.module
    }

    /// Dimension of the degree-k graded piece: standard monomials of
    /// degree k across all generators.
    pub fn hilbert_function(&self, k: usize) -> usize {
        let leads = self.module.gb().leading_terms();
        let n = self.module.ring().num_vars();
        let mut count = 0;
        for c in 0..self.module.gens() {
            for mono in monomials_of_degree(n, k) {
                let blocked = leads
                    .iter()
                    .any(|(lc, lm)| *lc == c && lm.divides(&mono));
                if !blocked {
                    count += 1;
                }
            }
        }
        count
    }

    /// Dimension of M modulo the k-th power of the origin's maximal ideal:
    /// the sum of the Hilbert function below degree k.
    pub fn phi_kernel_dim(&self, k: usize) -> usize {
        (0..k).map(|j| self.hilbert_function(j)).sum()
    }
}

/// All monomials of total degree k in n variables.
fn monomials_of_degree(n: usize, k: usize) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut exps = vec![0u32; n];
    fill_degrees(&mut exps, 0, k as u32, &mut out);
    out
}

fn fill_degrees(exps: &mut Vec<u32>, pos: usize, remaining: u32, out: &mut Vec<Monomial>) {
    if pos + 1 == exps.len() {
        exps[pos] = remaining;
        out.push(Monomial(exps.clone()));
        return;
    }
    for e in 0..=remaining {
        exps[pos] = e;
        fill_degrees(exps, pos + 1, remaining - e, out);
    }
}

/// Leading data of the graded rank polynomial next to the Hilbert–Samuel
/// polynomial at the origin, with the comparison verdicts.
#[derive(Clone, Debug)]
pub struct DegreeReport {
    /// Fit of k ↦ (dimension below degree k), with its raw values.
    pub rank_record: HsRecord,
    /// Hilbert–Samuel record along the origin's maximal ideal.
    pub hs_record: HsRecord,
    /// Degree of the graded rank polynomial.
    pub degree: i64,
    /// Whether the two leading terms (degree and normalized leading
    /// coefficient) agree.
    pub leading_terms_match: bool,
    /// Whether the rank polynomial's degree is at least the local
    /// dimension of the module at the origin.
    pub degree_dominates_dimension: bool,
}

/// Computes the degree report by fitting the graded partial sums and,
/// independently, the Hilbert–Samuel values, then comparing leading data.
pub fn degree_report(graded: &GradedModule, max_k: usize) -> Result<DegreeReport> {
    let m = graded.module();
    if m.is_zero_module() {
        return Err(Error::ZeroModule(
            "the zero module has no degree data".into(),
        ));
    }
    let rank_record = hs_polynomial_by(max_k, |k| Ok(graded.phi_kernel_dim(k)))?;
    let ring = m.ring().clone();
    let origin: Vec<Poly> = (0..ring.num_vars()).map(|i| Poly::var(&ring, i)).collect();
    let hs_record = hs_polynomial(m, &origin, max_k)?;
    let leading_terms_match = rank_record.degree == hs_record.degree
        && rank_record.normalized_leading == hs_record.normalized_leading;
    let degree_dominates_dimension = rank_record.degree >= hs_record.degree;
    Ok(DegreeReport {
        degree: rank_record.degree,
        leading_terms_match,
        degree_dominates_dimension,
        rank_record,
        hs_record,
    })
}

/// The normalized leading coefficient of the graded rank polynomial.
pub fn rank_multiplicity(report: &DegreeReport) -> Scalar {
    report.rank_record.normalized_leading.clone()
}
