//! Exact matrices over the rationals and joint spectra of commuting tuples.
//!
//! The elimination core is fraction-free (Bareiss pivoting over cleared
//! denominators), so intermediate entries stay bounded; rational entries
//! reappear only in the final reduced echelon normalization. Subspaces are
//! stored by their canonical reduced-echelon basis, which makes equality
//! checks structural.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// A dense matrix over the rationals, row-major.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl QMatrix {
    /// Builds from row-major data. Panics if the shape does not match.
    pub fn new(rows: usize, cols: usize, data: Vec<Scalar>) -> Self {
        assert_eq!(data.len(), rows * cols, "data length mismatch");
        QMatrix { rows, cols, data }
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        QMatrix::new(rows, cols, vec![Scalar::zero(); rows * cols])
    }

    pub fn identity(n: usize) -> Self {
        let mut m = QMatrix::zero(n, n);
        for i in 0..n {
            m.set(i, i, Scalar::one());
        }
        m
    }

    /// Convenience constructor from integer rows (used heavily in tests).
    pub fn from_int_rows(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = if r == 0 { 0 } else { rows[0].len() };
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            data.extend(row.iter().map(|&v| Scalar::from_int(v)));
        }
        QMatrix::new(r, c, data)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn add(&self, other: &QMatrix) -> Result<QMatrix> {
        self.check_same_shape(other)?;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a + b)
            .collect();
        Ok(QMatrix::new(self.rows, self.cols, data))
    }

    pub fn sub(&self, other: &QMatrix) -> Result<QMatrix> {
        self.check_same_shape(other)?;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a - b)
            .collect();
        Ok(QMatrix::new(self.rows, self.cols, data))
    }

    pub fn scale(&self, s: &Scalar) -> QMatrix {
        let data = self.data.iter().map(|a| a * s).collect();
        QMatrix::new(self.rows, self.cols, data)
    }

    pub fn mul(&self, other: &QMatrix) -> Result<QMatrix> {
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} * {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = QMatrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let v = out.get(i, j) + &(a * other.get(k, j));
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    /// Matrix power; requires a square matrix.
    pub fn pow(&self, exp: usize) -> Result<QMatrix> {
        if !self.is_square() {
            return Err(Error::ShapeMismatch("power of non-square matrix".into()));
        }
        let mut acc = QMatrix::identity(self.rows);
        for _ in 0..exp {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// Applies the matrix to a column vector.
    pub fn apply(&self, v: &[Scalar]) -> Result<Vec<Scalar>> {
        if v.len() != self.cols {
            return Err(Error::ShapeMismatch(format!(
                "matrix {}x{} applied to vector of length {}",
                self.rows,
                self.cols,
                v.len()
            )));
        }
        let mut out = vec![Scalar::zero(); self.rows];
        for (i, slot) in out.iter_mut().enumerate() {
            let mut acc = Scalar::zero();
            for (j, vj) in v.iter().enumerate() {
                if !self.get(i, j).is_zero() && !vj.is_zero() {
                    acc += self.get(i, j) * vj;
                }
            }
            *slot = acc;
        }
        Ok(out)
    }

    pub fn commutes_with(&self, other: &QMatrix) -> Result<bool> {
        Ok(self.mul(other)? == other.mul(self)?)
    }

    /// Subtracts `s` from the diagonal (the matrix must be square).
    pub fn shift(&self, s: &Scalar) -> Result<QMatrix> {
        if !self.is_square() {
            return Err(Error::ShapeMismatch("shift of non-square matrix".into()));
        }
        let mut out = self.clone();
        for i in 0..self.rows {
            let v = out.get(i, i) - s;
            out.set(i, i, v);
        }
        Ok(out)
    }

    /// Stacks matrices vertically. All must share the column count.
    pub fn vstack(parts: &[QMatrix]) -> Result<QMatrix> {
        let cols = parts.first().map(|m| m.cols).unwrap_or(0);
        let mut data = Vec::new();
        let mut rows = 0;
        for p in parts {
            if p.cols != cols {
                return Err(Error::ShapeMismatch("vstack column mismatch".into()));
            }
            rows += p.rows;
            data.extend(p.data.iter().cloned());
        }
        Ok(QMatrix::new(rows, cols, data))
    }

    fn check_same_shape(&self, other: &QMatrix) -> Result<()> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }

    /// Clears denominators row by row, returning an integer matrix with the
    /// same row space.
    fn integer_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows)
            .map(|i| {
                let mut lcm = BigInt::one();
                for j in 0..self.cols {
                    lcm = lcm.lcm(self.get(i, j).denom());
                }
                (0..self.cols)
                    .map(|j| {
                        let s = self.get(i, j);
                        s.numer() * (&lcm / s.denom())
                    })
                    .collect()
            })
            .collect()
    }

    /// Rank via fraction-free Bareiss elimination.
    pub fn rank(&self) -> usize {
        let mut m = self.integer_rows();
        bareiss_echelon(&mut m).len()
    }

    /// Reduced row echelon form along with the pivot column indices.
    ///
    /// The forward pass is fraction-free; divisions happen once during the
    /// final normalization.
    pub fn rref(&self) -> (QMatrix, Vec<usize>) {
        let mut m = self.integer_rows();
        let pivots = bareiss_echelon(&mut m);
        // Back-eliminate above each pivot, still over the integers.
        for pi in (0..pivots.len()).rev() {
            let pc = pivots[pi];
            for above in 0..pi {
                if m[above][pc].is_zero() {
                    continue;
                }
                let factor_above = m[above][pc].clone();
                let factor_pivot = m[pi][pc].clone();
                let (top, rest) = m.split_at_mut(pi);
                for (slot, pv) in top[above].iter_mut().zip(&rest[0]) {
                    let v = &*slot * &factor_pivot - pv * &factor_above;
                    *slot = v;
                }
            }
        }
        // Normalize pivots to 1 over the rationals.
        let mut out = QMatrix::zero(self.rows, self.cols);
        for (pi, &pc) in pivots.iter().enumerate() {
            let lead = m[pi][pc].clone();
            for (j, v) in m[pi].iter().enumerate() {
                out.set(pi, j, Scalar::from_big(v.clone(), lead.clone()));
            }
        }
        (out, pivots)
    }

    /// Canonical basis of the right kernel `{v : Mv = 0}`.
    pub fn kernel_basis(&self) -> Subspace {
        let (r, pivots) = self.rref();
        let pivot_set: Vec<Option<usize>> = {
            let mut v = vec![None; self.cols];
            for (pi, &pc) in pivots.iter().enumerate() {
                v[pc] = Some(pi);
            }
            v
        };
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivot_set[free].is_some() {
                continue;
            }
            let mut v = vec![Scalar::zero(); self.cols];
            v[free] = Scalar::one();
            for (pi, &pc) in pivots.iter().enumerate() {
                v[pc] = -r.get(pi, free).clone();
            }
            basis.push(v);
        }
        Subspace::from_vectors(self.cols, basis)
    }

    /// Solves `Mx = b` if consistent, returning one solution.
    pub fn solve(&self, b: &[Scalar]) -> Result<Option<Vec<Scalar>>> {
        if b.len() != self.rows {
            return Err(Error::ShapeMismatch("solve: rhs length".into()));
        }
        let mut aug = QMatrix::zero(self.rows, self.cols + 1);
        for (i, bi) in b.iter().enumerate() {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, self.cols, bi.clone());
        }
        let (r, pivots) = aug.rref();
        if pivots.contains(&self.cols) {
            return Ok(None); // inconsistent
        }
        let mut x = vec![Scalar::zero(); self.cols];
        for (pi, &pc) in pivots.iter().enumerate() {
            x[pc] = r.get(pi, self.cols).clone();
        }
        Ok(Some(x))
    }
}

/// In-place fraction-free row echelon reduction (Bareiss). Returns the pivot
/// column of each nonzero row; the echelon rows end up at the top.
fn bareiss_echelon(m: &mut [Vec<BigInt>]) -> Vec<usize> {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut pivots = Vec::new();
    let mut prev = BigInt::one();
    let mut rank = 0;
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(pivot_row) = (rank..rows).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(rank, pivot_row);
        let pivot = m[rank][col].clone();
        for i in rank + 1..rows {
            let head = m[i][col].clone();
            let (top, rest) = m.split_at_mut(i);
            for (slot, rv) in rest[0].iter_mut().zip(&top[rank]) {
                let v = (&*slot * &pivot - rv * &head) / &prev;
                *slot = v;
            }
        }
        prev = pivot;
        pivots.push(col);
        rank += 1;
    }
    pivots
}

/// A linear subspace of Q^n, stored by its canonical reduced-echelon basis.
///
/// Equality of subspaces is structural equality of the canonical bases.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Subspace {
    ambient: usize,
    basis: Vec<Vec<Scalar>>, // reduced echelon rows, no zero rows
    pivots: Vec<usize>,
}

impl Subspace {
    /// Canonicalizes a spanning set into a reduced-echelon basis.
    pub fn from_vectors(ambient: usize, vectors: Vec<Vec<Scalar>>) -> Self {
        for v in &vectors {
            assert_eq!(v.len(), ambient, "vector length mismatch");
        }
        if vectors.is_empty() {
            return Subspace {
                ambient,
                basis: Vec::new(),
                pivots: Vec::new(),
            };
        }
        let rows = vectors.len();
        let data: Vec<Scalar> = vectors.into_iter().flatten().collect();
        let m = QMatrix::new(rows, ambient, data);
        let (r, pivots) = m.rref();
        let basis = (0..pivots.len()).map(|i| r.row(i).to_vec()).collect();
        Subspace {
            ambient,
            basis,
            pivots,
        }
    }

    pub fn full(ambient: usize) -> Self {
        Subspace::from_vectors(
            ambient,
            (0..ambient)
                .map(|i| {
                    let mut v = vec![Scalar::zero(); ambient];
                    v[i] = Scalar::one();
                    v
                })
                .collect(),
        )
    }

    pub fn trivial(ambient: usize) -> Self {
        Subspace::from_vectors(ambient, Vec::new())
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn basis(&self) -> &[Vec<Scalar>] {
        &self.basis
    }

    /// Expresses `v` in the canonical basis, if it lies in the subspace.
    ///
    /// Because the basis is reduced echelon, the coordinates are just the
    /// entries of `v` at the pivot positions; membership is then verified
    /// exactly.
    pub fn coordinates(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        assert_eq!(v.len(), self.ambient, "vector length mismatch");
        let coords: Vec<Scalar> = self.pivots.iter().map(|&p| v[p].clone()).collect();
        let mut recon = vec![Scalar::zero(); self.ambient];
        for (c, row) in coords.iter().zip(&self.basis) {
            for j in 0..self.ambient {
                recon[j] += c * &row[j];
            }
        }
        if recon.iter().zip(v).all(|(a, b)| a == b) {
            Some(coords)
        } else {
            None
        }
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.coordinates(v).is_some()
    }

    /// Maps basis coordinates back to an ambient vector.
    pub fn from_coordinates(&self, coords: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(coords.len(), self.dim(), "coordinate length mismatch");
        let mut out = vec![Scalar::zero(); self.ambient];
        for (c, row) in coords.iter().zip(&self.basis) {
            for j in 0..self.ambient {
                out[j] += c * &row[j];
            }
        }
        out
    }

    /// Restricts an operator that leaves this subspace invariant to basis
    /// coordinates. Errors if the subspace is not invariant.
    pub fn restrict(&self, op: &QMatrix) -> Result<QMatrix> {
        if op.rows() != self.ambient || op.cols() != self.ambient {
            return Err(Error::ShapeMismatch("restrict: operator shape".into()));
        }
        let k = self.dim();
        let mut out = QMatrix::zero(k, k);
        for (j, row) in self.basis.iter().enumerate() {
            let image = op.apply(row)?;
            let coords = self.coordinates(&image).ok_or_else(|| {
                Error::ShapeMismatch("restrict: subspace is not invariant".into())
            })?;
            for (i, c) in coords.into_iter().enumerate() {
                out.set(i, j, c);
            }
        }
        Ok(out)
    }
}

fn check_commuting_square(ops: &[QMatrix]) -> Result<usize> {
    let Some(first) = ops.first() else {
        return Err(Error::ShapeMismatch("empty operator tuple".into()));
    };
    if !first.is_square() {
        return Err(Error::ShapeMismatch("operators must be square".into()));
    }
    let d = first.rows();
    for (i, op) in ops.iter().enumerate() {
        if op.rows() != d || op.cols() != d {
            return Err(Error::ShapeMismatch(format!(
                "operator {} is {}x{}, expected {}x{}",
                i,
                op.rows(),
                op.cols(),
                d,
                d
            )));
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
    Ok(d)
}

/// Joint root space `∩_i ker (T_i − λ_i)^d` of a commuting tuple at a point.
pub fn joint_root_space(ops: &[QMatrix], point: &[Scalar]) -> Result<Subspace> {
    let d = check_commuting_square(ops)?;
    if point.len() != ops.len() {
        return Err(Error::ShapeMismatch(format!(
            "point has {} coordinates for {} operators",
            point.len(),
            ops.len()
        )));
    }
    if d == 0 {
        return Ok(Subspace::trivial(0));
    }
    let mut powers = Vec::with_capacity(ops.len());
    for (op, lambda) in ops.iter().zip(point) {
        powers.push(op.shift(lambda)?.pow(d)?);
    }
    Ok(QMatrix::vstack(&powers)?.kernel_basis())
}

/// Characteristic polynomial of a square matrix, monic, low degree first:
/// returns `c` with `det(xI − A) = c[0] + c[1]x + … + x^n`.
///
/// Faddeev–LeVerrier recursion; all divisions are by integers and exact.
pub fn char_poly(a: &QMatrix) -> Result<Vec<Scalar>> {
    if !a.is_square() {
        return Err(Error::ShapeMismatch("char_poly of non-square matrix".into()));
    }
    let n = a.rows();
    let mut coeffs = vec![Scalar::zero(); n + 1];
    coeffs[n] = Scalar::one();
    let mut m = QMatrix::identity(n); // M_0
    for k in 1..=n {
        m = a.mul(&m)?;
        let mut tr = Scalar::zero();
        for i in 0..n {
            tr += m.get(i, i).clone();
        }
        let c = -(tr / Scalar::from_int(k as i64));
        coeffs[n - k] = c.clone();
        for i in 0..n {
            let v = m.get(i, i) + &c;
            m.set(i, i, v);
        }
    }
    Ok(coeffs)
}

/// All rational roots of a polynomial (low degree first, rational
/// coefficients), with multiplicities, sorted ascending. Errors with
/// `IrrationalSpectrum` if a nontrivial factor without rational roots
/// remains.
pub fn rational_roots(coeffs: &[Scalar]) -> Result<Vec<(Scalar, usize)>> {
    // Clear denominators to a primitive integer polynomial.
    let mut lcm = BigInt::one();
    for c in coeffs {
        lcm = lcm.lcm(c.denom());
    }
    let mut ic: Vec<BigInt> = coeffs
        .iter()
        .map(|c| c.numer() * (&lcm / c.denom()))
        .collect();
    while ic.last().map(|c| c.is_zero()).unwrap_or(false) {
        ic.pop();
    }
    if ic.len() <= 1 {
        // Constant polynomial: no roots (the zero polynomial does not occur
        // for characteristic polynomials).
        return Ok(Vec::new());
    }
    let mut roots: Vec<(Scalar, usize)> = Vec::new();
    loop {
        // Strip roots at zero.
        let mut zero_mult = 0;
        while ic.len() > 1 && ic[0].is_zero() {
            ic.remove(0);
            zero_mult += 1;
        }
        if zero_mult > 0 {
            push_root(&mut roots, Scalar::zero(), zero_mult);
        }
        if ic.len() <= 1 {
            break;
        }
        let candidates = root_candidates(&ic[0], ic.last().unwrap());
        let mut found = None;
        for cand in candidates {
            if eval_int_poly(&ic, &cand).is_zero() {
                found = Some(cand);
                break;
            }
        }
        match found {
            Some(r) => {
                let mut mult = 0;
                while ic.len() > 1 && eval_int_poly(&ic, &r).is_zero() {
                    ic = deflate(&ic, &r);
                    mult += 1;
                }
                push_root(&mut roots, r, mult);
            }
            None => {
                return Err(Error::IrrationalSpectrum(format!(
                    "irreducible factor of degree {} has no rational root",
                    ic.len() - 1
                )));
            }
        }
    }
    roots.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(roots)
}

fn push_root(roots: &mut Vec<(Scalar, usize)>, r: Scalar, mult: usize) {
    if let Some(entry) = roots.iter_mut().find(|(x, _)| *x == r) {
        entry.1 += mult;
    } else {
        roots.push((r, mult));
    }
}

fn eval_int_poly(coeffs: &[BigInt], at: &Scalar) -> Scalar {
    let mut acc = Scalar::zero();
    for c in coeffs.iter().rev() {
        acc = acc * at.clone() + Scalar::from_big(c.clone(), BigInt::one());
    }
    acc
}

/// Synthetic division of an integer polynomial by (x − r) for a rational
/// root r; the quotient is rescaled back to integer coefficients.
fn deflate(coeffs: &[BigInt], root: &Scalar) -> Vec<BigInt> {
    let n = coeffs.len() - 1;
    let mut q = vec![Scalar::zero(); n];
    let mut carry = Scalar::zero();
    for i in (0..n).rev() {
        let c = Scalar::from_big(coeffs[i + 1].clone(), BigInt::one());
        q[i] = c + carry.clone();
        carry = q[i].clone() * root.clone();
    }
    let mut lcm = BigInt::one();
    for c in &q {
        lcm = lcm.lcm(c.denom());
    }
    q.iter().map(|c| c.numer() * (&lcm / c.denom())).collect()
}

/// All positive divisors of |n| via trial division (desk-scale inputs).
fn divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    if n.is_zero() {
        return vec![BigInt::one()];
    }
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = BigInt::one();
    loop {
        if &d * &d > n {
            break;
        }
        if (&n % &d).is_zero() {
            small.push(d.clone());
            let q = &n / &d;
            if q != d {
                large.push(q);
            }
        }
        d += 1;
    }
    large.reverse();
    small.extend(large);
    small
}

/// Candidate rational roots p/q with p | constant term, q | leading term.
fn root_candidates(constant: &BigInt, leading: &BigInt) -> Vec<Scalar> {
    let ps = divisors(constant);
    let qs = divisors(leading);
    let mut out = Vec::new();
    for p in &ps {
        for q in &qs {
            let pos = Scalar::from_big(p.clone(), q.clone());
            let neg = -pos.clone();
            if !out.contains(&pos) {
                out.push(pos);
            }
            if !out.contains(&neg) {
                out.push(neg);
            }
        }
    }
    out
}

/// The joint spectrum of a commuting tuple together with the joint root
/// space of each point, provided every eigenvalue encountered is rational.
///
/// Points come back sorted lexicographically; the root spaces direct-sum to
/// the whole space.
pub fn rational_joint_spectrum(ops: &[QMatrix]) -> Result<Vec<(Vec<Scalar>, Subspace)>> {
    let d = check_commuting_square(ops)?;
    if d == 0 {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    let full = Subspace::full(d);
    split_spectrum(ops, 0, full, &mut Vec::new(), &mut out)?;
    out.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(out)
}

fn split_spectrum(
    ops: &[QMatrix],
    i: usize,
    space: Subspace,
    prefix: &mut Vec<Scalar>,
    out: &mut Vec<(Vec<Scalar>, Subspace)>,
) -> Result<()> {
    if space.dim() == 0 {
        return Ok(());
    }
    if i == ops.len() {
        out.push((prefix.clone(), space));
        return Ok(());
    }
    let restricted = space.restrict(&ops[i])?;
    let chi = char_poly(&restricted)?;
    let roots = rational_roots(&chi)?;
    let total: usize = roots.iter().map(|(_, m)| m).sum();
    if total != space.dim() {
        return Err(Error::IrrationalSpectrum(format!(
            "operator {} splits only {} of {} dimensions rationally",
            i,
            total,
            space.dim()
        )));
    }
    for (mu, _) in roots {
        // Generalized eigenspace of the restriction, pulled back to ambient
        // coordinates.
        let shifted = restricted.shift(&mu)?.pow(space.dim())?;
        let ker = shifted.kernel_basis();
        let vectors: Vec<Vec<Scalar>> = ker
            .basis()
            .iter()
            .map(|coords| space.from_coordinates(coords))
            .collect();
        let sub = Subspace::from_vectors(space.ambient(), vectors);
        prefix.push(mu);
        split_spectrum(ops, i + 1, sub, prefix, out)?;
        prefix.pop();
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(n: i64) -> Scalar {
        Scalar::from_int(n)
    }

    #[test]
    fn rank_examples() {
        let id3 = QMatrix::identity(3);
        assert_eq!(id3.rank(), 3);
        let m = QMatrix::from_int_rows(&[vec![1, 2], vec![2, 4]]);
        assert_eq!(m.rank(), 1);
        assert_eq!(QMatrix::zero(2, 2).rank(), 0);
        // Rational entries of mixed denominators; the rows are proportional,
        // so the rank is 1.
        let m = QMatrix::new(
            2,
            2,
            vec![
                Scalar::from_ratio(1, 2),
                Scalar::from_ratio(1, 3),
                Scalar::from_ratio(3, 2),
                Scalar::from_int(1),
            ],
        );
        assert_eq!(m.rank(), 1);
        let m = QMatrix::new(
            2,
            2,
            vec![
                Scalar::from_ratio(1, 2),
                Scalar::from_ratio(1, 3),
                Scalar::from_ratio(3, 2),
                Scalar::from_int(2),
            ],
        );
        assert_eq!(m.rank(), 2);
    }

    #[test]
    fn kernel_of_row_of_ones() {
        let m = QMatrix::from_int_rows(&[vec![1, 1]]);
        let k = m.kernel_basis();
        assert_eq!(k.dim(), 1);
        assert_eq!(k.basis()[0], vec![s(1), s(-1)]);
    }

    #[test]
    fn kernel_of_identity_is_trivial() {
        let k = QMatrix::identity(4).kernel_basis();
        assert_eq!(k.dim(), 0);
    }

    #[test]
    fn kernel_dimension_theorem() {
        let m = QMatrix::from_int_rows(&[vec![1, 2, 3], vec![2, 4, 6], vec![0, 1, 1]]);
        assert_eq!(m.rank() + m.kernel_basis().dim(), 3);
        // Kernel vectors are annihilated.
        for v in m.kernel_basis().basis() {
            assert!(m.apply(v).unwrap().iter().all(Scalar::is_zero));
        }
    }

    #[test]
    fn subspace_canonical_equality() {
        let a = Subspace::from_vectors(2, vec![vec![s(2), s(-2)]]);
        let b = Subspace::from_vectors(2, vec![vec![s(-5), s(5)]]);
        assert_eq!(a, b);
        assert_eq!(a.basis()[0], vec![s(1), s(-1)]);
    }

    #[test]
    fn joint_root_space_nilpotent_pair() {
        // T1 = elementary nilpotent, T2 = 0: root space at (0,0) is all of Q^2.
        let t1 = QMatrix::from_int_rows(&[vec![0, 1], vec![0, 0]]);
        let t2 = QMatrix::zero(2, 2);
        let v = joint_root_space(&[t1.clone(), t2.clone()], &[s(0), s(0)]).unwrap();
        assert_eq!(v.dim(), 2);
        // At any other rational point the root space is trivial.
        let v = joint_root_space(&[t1, t2], &[s(1), s(0)]).unwrap();
        assert_eq!(v.dim(), 0);
    }

    #[test]
    fn joint_root_space_rejects_non_commuting() {
        let a = QMatrix::from_int_rows(&[vec![0, 1], vec![0, 0]]);
        let b = QMatrix::from_int_rows(&[vec![0, 0], vec![1, 0]]);
        let err = joint_root_space(&[a, b], &[s(0), s(0)]).unwrap_err();
        assert!(matches!(err, Error::NonCommuting(_)));
    }

    #[test]
    fn char_poly_companion() {
        // Companion matrix of x^2 - x - 1.
        let m = QMatrix::from_int_rows(&[vec![0, 1], vec![1, 1]]);
        let c = char_poly(&m).unwrap();
        assert_eq!(c, vec![s(-1), s(-1), s(1)]);
    }

    #[test]
    fn rational_roots_with_multiplicity() {
        // (x - 1)^2 (x + 2) = x^3 - 3x + 2
        let coeffs = vec![s(2), s(-3), s(0), s(1)];
        let roots = rational_roots(&coeffs).unwrap();
        assert_eq!(roots, vec![(s(-2), 1), (s(1), 2)]);
        // 2x - 1 has the root 1/2.
        let roots = rational_roots(&[s(-1), s(2)]).unwrap();
        assert_eq!(roots, vec![(Scalar::from_ratio(1, 2), 1)]);
    }

    #[test]
    fn irrational_spectrum_detected() {
        // x^2 - 2 has no rational roots.
        let err = rational_roots(&[s(-2), s(0), s(1)]).unwrap_err();
        assert!(matches!(err, Error::IrrationalSpectrum(_)));
    }

    #[test]
    fn joint_spectrum_diagonal_pair() {
        let t1 = QMatrix::from_int_rows(&[vec![1, 0], vec![0, 2]]);
        let t2 = QMatrix::from_int_rows(&[vec![3, 0], vec![0, 4]]);
        let spec = rational_joint_spectrum(&[t1, t2]).unwrap();
        let points: Vec<Vec<Scalar>> = spec.iter().map(|(p, _)| p.clone()).collect();
        assert_eq!(points, vec![vec![s(1), s(3)], vec![s(2), s(4)]]);
        assert!(spec.iter().all(|(_, v)| v.dim() == 1));
    }

    #[test]
    fn joint_spectrum_nilpotent_block() {
        // A single joint eigenvalue (0,0) carrying the full 2-dimensional
        // root space.
        let t1 = QMatrix::from_int_rows(&[vec![0, 1], vec![0, 0]]);
        let t2 = QMatrix::zero(2, 2);
        let spec = rational_joint_spectrum(&[t1, t2]).unwrap();
        assert_eq!(spec.len(), 1);
        assert_eq!(spec[0].0, vec![s(0), s(0)]);
        assert_eq!(spec[0].1.dim(), 2);
    }

    #[test]
    fn joint_spectrum_mixed_shift() {
        // T1 = I + N, T2 = 2I: spectrum {(1, 2)} with full root space.
        let t1 = QMatrix::from_int_rows(&[vec![1, 1], vec![0, 1]]);
        let t2 = QMatrix::from_int_rows(&[vec![2, 0], vec![0, 2]]);
        let spec = rational_joint_spectrum(&[t1, t2]).unwrap();
        assert_eq!(spec.len(), 1);
        assert_eq!(spec[0].0, vec![s(1), s(2)]);
        assert_eq!(spec[0].1.dim(), 2);
    }

    #[test]
    fn solve_consistent_and_inconsistent() {
        let m = QMatrix::from_int_rows(&[vec![1, 1], vec![0, 1]]);
        let x = m.solve(&[s(3), s(1)]).unwrap().unwrap();
        assert_eq!(x, vec![s(2), s(1)]);
        let singular = QMatrix::from_int_rows(&[vec![1, 1], vec![1, 1]]);
        assert!(singular.solve(&[s(0), s(1)]).unwrap().is_none());
    }
}
