//! Multivariate polynomials over the rationals with pluggable term orders.
//!
//! A polynomial stores its terms in a fixed order-independent map keyed by
//! exponent vector; leading terms are computed on demand for whichever term
//! order a caller supplies, so the same polynomial can serve several
//! eliminations without re-normalization.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::matrix::QMatrix;
use crate::scalar::Scalar;

/// The ambient polynomial ring: an ordered list of variable names.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RingSpec {
    vars: Arc<Vec<String>>,
}

impl RingSpec {
    pub fn new<S: Into<String>>(vars: Vec<S>) -> Self {
        RingSpec {
            vars: Arc::new(vars.into_iter().map(Into::into).collect()),
        }
    }

    /// The ring Q[z1, …, zn].
    pub fn standard(n: usize) -> Self {
        RingSpec::new((1..=n).map(|i| format!("z{}", i)).collect::<Vec<_>>())
    }

    pub fn num_vars(&self) -> usize {
        self.vars.len()
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    /// Extends the ring with extra variables appended after the current ones.
    pub fn extend<S: Into<String>>(&self, extra: Vec<S>) -> Self {
        let mut vars: Vec<String> = self.vars.as_ref().clone();
        vars.extend(extra.into_iter().map(Into::into));
        RingSpec::new(vars)
    }

    /// Keeps only the variables at the given indices, in the given order.
    pub fn select(&self, indices: &[usize]) -> Self {
        RingSpec::new(indices.iter().map(|&i| self.vars[i].clone()).collect::<Vec<_>>())
    }

    pub fn same_ring(&self, other: &RingSpec) -> bool {
        self.vars == other.vars || self.vars.as_ref() == other.vars.as_ref()
    }

    pub fn check_same(&self, other: &RingSpec) -> Result<()> {
        if self.same_ring(other) {
            Ok(())
        } else {
            Err(Error::RingMismatch(format!(
                "ring [{}] vs [{}]",
                self.vars.join(", "),
                other.vars.join(", ")
            )))
        }
    }
}

/// An exponent vector; the ring fixes its length.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(n: usize) -> Self {
        Monomial(vec![0; n])
    }

    pub fn var(n: usize, i: usize) -> Self {
        let mut e = vec![0; n];
        e[i] = 1;
        Monomial(e)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// other / self, assuming divisibility.
    pub fn quotient_into(&self, other: &Monomial) -> Monomial {
        Monomial(
            other
                .0
                .iter()
                .zip(&self.0)
                .map(|(b, a)| b - a)
                .collect(),
        )
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| *a.max(b))
                .collect(),
        )
    }

    pub fn gcd_is_one(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Indices of variables appearing with positive exponent.
    pub fn support(&self) -> Vec<usize> {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, _)| i)
            .collect()
    }
}

/// Term orders used for normal forms and elimination.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum TermOrder {
    /// Plain lexicographic.
    Lex,
    /// Degree, then reverse lexicographic tie-break.
    DegRevLex,
    /// Block order eliminating the first `k` variables: degrevlex on the
    /// first block, then degrevlex on the rest.
    Block(usize),
}

impl TermOrder {
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match *self {
            TermOrder::Lex => a.0.cmp(&b.0),
            TermOrder::DegRevLex => degrevlex(&a.0, &b.0),
            TermOrder::Block(k) => {
                degrevlex(&a.0[..k], &b.0[..k]).then_with(|| degrevlex(&a.0[k..], &b.0[k..]))
            }
        }
    }
}

fn degrevlex(a: &[u32], b: &[u32]) -> Ordering {
    let da: u32 = a.iter().sum();
    let db: u32 = b.iter().sum();
    da.cmp(&db).then_with(|| {
        for (x, y) in a.iter().zip(b).rev() {
            match x.cmp(y) {
                Ordering::Less => return Ordering::Greater,
                Ordering::Greater => return Ordering::Less,
                Ordering::Equal => {}
            }
        }
        Ordering::Equal
    })
}

/// A polynomial with rational coefficients.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Poly {
    ring: RingSpec,
    terms: BTreeMap<Monomial, Scalar>,
}

impl Poly {
    pub fn zero(ring: &RingSpec) -> Self {
        Poly {
            ring: ring.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(ring: &RingSpec, c: Scalar) -> Self {
        let mut p = Poly::zero(ring);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(ring.num_vars()), c);
        }
        p
    }

    pub fn one(ring: &RingSpec) -> Self {
        Poly::constant(ring, Scalar::one())
    }

    pub fn var(ring: &RingSpec, i: usize) -> Self {
        let mut p = Poly::zero(ring);
        p.terms
            .insert(Monomial::var(ring.num_vars(), i), Scalar::one());
        p
    }

    pub fn monomial(ring: &RingSpec, m: Monomial, c: Scalar) -> Self {
        let mut p = Poly::zero(ring);
        if !c.is_zero() {
            assert_eq!(m.0.len(), ring.num_vars(), "monomial arity");
            p.terms.insert(m, c);
        }
        p
    }

    pub fn ring(&self) -> &RingSpec {
        &self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    /// True when the polynomial is a nonzero constant.
    pub fn is_unit(&self) -> bool {
        !self.is_zero() && self.is_constant()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn constant_term(&self) -> Scalar {
        self.coeff(&Monomial::one(self.ring.num_vars()))
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// True when every term has the same total degree (zero counts as
    /// homogeneous).
    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(Monomial::degree);
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    /// The sum of the degree-`d` terms.
    pub fn homogeneous_part(&self, d: u32) -> Poly {
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m.degree() == d)
            .map(|(m, c)| (m.clone(), c.clone()))
            .collect();
        Poly {
            ring: self.ring.clone(),
            terms,
        }
    }

    /// Leading monomial under the given term order.
    pub fn leading_monomial(&self, order: TermOrder) -> Option<&Monomial> {
        self.terms
            .keys()
            .max_by(|a, b| order.cmp(a, b))
    }

    /// Leading (monomial, coefficient) pair under the given term order.
    pub fn leading_term(&self, order: TermOrder) -> Option<(&Monomial, &Scalar)> {
        self.leading_monomial(order).map(|m| (m, &self.terms[m]))
    }

    pub fn add_term(&mut self, m: Monomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                *existing += c;
                if existing.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }

    pub fn neg(&self) -> Poly {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| (m.clone(), -c.clone()))
            .collect();
        Poly {
            ring: self.ring.clone(),
            terms,
        }
    }

    pub fn scale(&self, s: &Scalar) -> Poly {
        if s.is_zero() {
            return Poly::zero(&self.ring);
        }
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| (m.clone(), c * s))
            .collect();
        Poly {
            ring: self.ring.clone(),
            terms,
        }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let mut out = Poly::zero(&self.ring);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }

    /// Multiplies by a single term.
    pub fn mul_term(&self, m: &Monomial, c: &Scalar) -> Poly {
        if c.is_zero() {
            return Poly::zero(&self.ring);
        }
        let terms = self
            .terms
            .iter()
            .map(|(mm, cc)| (mm.mul(m), cc * c))
            .collect();
        Poly {
            ring: self.ring.clone(),
            terms,
        }
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one(&self.ring);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Divides by the leading coefficient under `order`.
    pub fn monic(&self, order: TermOrder) -> Poly {
        match self.leading_term(order) {
            None => self.clone(),
            Some((_, c)) => {
                let inv = c.inv();
                self.scale(&inv)
            }
        }
    }

    /// Evaluates at a rational point.
    pub fn eval(&self, point: &[Scalar]) -> Result<Scalar> {
        if point.len() != self.ring.num_vars() {
            return Err(Error::ShapeMismatch(format!(
                "evaluating {}-variable polynomial at {}-coordinate point",
                self.ring.num_vars(),
                point.len()
            )));
        }
        let mut acc = Scalar::zero();
        for (m, c) in &self.terms {
            let mut term = c.clone();
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    term *= point[i].pow(e);
                }
            }
            acc += term;
        }
        Ok(acc)
    }

    /// Substitutes commuting square matrices for the variables. The
    /// constant term becomes a multiple of the identity.
    pub fn eval_matrices(&self, mats: &[QMatrix]) -> Result<QMatrix> {
        if mats.len() != self.ring.num_vars() {
            return Err(Error::ShapeMismatch(format!(
                "evaluating {}-variable polynomial on {} matrices",
                self.ring.num_vars(),
                mats.len()
            )));
        }
        let d = mats
            .first()
            .map(QMatrix::rows)
            .ok_or_else(|| Error::ShapeMismatch("no matrices supplied".into()))?;
        let mut acc = QMatrix::zero(d, d);
        for (m, c) in &self.terms {
            let mut term = QMatrix::identity(d).scale(c);
            for (i, &e) in m.0.iter().enumerate() {
                for _ in 0..e {
                    term = term.mul(&mats[i])?;
                }
            }
            acc = acc.add(&term)?;
        }
        Ok(acc)
    }

    /// Substitutes polynomials (in a possibly different ring) for the
    /// variables.
    pub fn substitute(&self, images: &[Poly], target: &RingSpec) -> Result<Poly> {
        if images.len() != self.ring.num_vars() {
            return Err(Error::ShapeMismatch(format!(
                "substituting {} images into {}-variable polynomial",
                images.len(),
                self.ring.num_vars()
            )));
        }
        for img in images {
            target.check_same(img.ring())?;
        }
        let mut acc = Poly::zero(target);
        for (m, c) in &self.terms {
            let mut term = Poly::constant(target, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    term = term.mul(&images[i].pow(e));
                }
            }
            acc = acc.add(&term);
        }
        Ok(acc)
    }

    /// Reinterprets the polynomial in a larger ring that contains the
    /// current variables by name.
    pub fn promote(&self, target: &RingSpec) -> Result<Poly> {
        let map: Option<Vec<usize>> = self
            .ring
            .vars()
            .iter()
            .map(|v| target.var_index(v))
            .collect();
        let map = map.ok_or_else(|| {
            Error::RingMismatch(format!(
                "target ring [{}] does not contain all of [{}]",
                target.vars().join(", "),
                self.ring.vars().join(", ")
            ))
        })?;
        let mut out = Poly::zero(target);
        for (m, c) in &self.terms {
            let mut e = vec![0u32; target.num_vars()];
            for (i, &exp) in m.0.iter().enumerate() {
                e[map[i]] = exp;
            }
            out.add_term(Monomial(e), c.clone());
        }
        Ok(out)
    }

    /// Drops to a subring, keeping the variables at `indices` (in order).
    /// Errors if the polynomial involves any other variable.
    pub fn project(&self, indices: &[usize]) -> Result<Poly> {
        let target = self.ring.select(indices);
        let mut keep = vec![false; self.ring.num_vars()];
        for &i in indices {
            keep[i] = true;
        }
        let mut out = Poly::zero(&target);
        for (m, c) in &self.terms {
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 && !keep[i] {
                    return Err(Error::RingMismatch(format!(
                        "polynomial involves eliminated variable {}",
                        self.ring.vars()[i]
                    )));
                }
            }
            let e: Vec<u32> = indices.iter().map(|&i| m.0[i]).collect();
            out.add_term(Monomial(e), c.clone());
        }
        Ok(out)
    }

    /// Largest power of `var` appearing in the polynomial.
    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.keys().map(|m| m.0[var]).max().unwrap_or(0)
    }

    /// Writes the polynomial as `c(rest)·var + r(rest)` if it is linear in
    /// `var`, returning (coefficient, remainder).
    pub fn split_linear_in(&self, var: usize) -> Option<(Poly, Poly)> {
        if self.degree_in(var) != 1 {
            return None;
        }
        let mut coeff = Poly::zero(&self.ring);
        let mut rest = Poly::zero(&self.ring);
        for (m, c) in &self.terms {
            if m.0[var] == 1 {
                let mut e = m.0.clone();
                e[var] = 0;
                coeff.add_term(Monomial(e), c.clone());
            } else {
                rest.add_term(m.clone(), c.clone());
            }
        }
        Some((coeff, rest))
    }

    /// Parses a polynomial expression over the given ring.
    ///
    /// Accepts `+ - * ^`, parentheses, rational coefficients like `3/2`, and
    /// implicit multiplication by juxtaposition (`2z1`, `z1 z2`).
    pub fn parse(ring: &RingSpec, input: &str) -> Result<Poly> {
        Parser::new(ring, input).parse_all()
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        // Display in a stable human order: degrevlex descending.
        let mut keys: Vec<&Monomial> = self.terms.keys().collect();
        keys.sort_by(|a, b| TermOrder::DegRevLex.cmp(b, a));
        let mut first = true;
        for m in keys {
            let c = &self.terms[m];
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let show_coeff = !abs.is_one() || m.is_one();
            if show_coeff {
                write!(f, "{}", abs)?;
            }
            let mut wrote_var = false;
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if show_coeff || wrote_var {
                    write!(f, "*")?;
                }
                write!(f, "{}", self.ring.vars()[i])?;
                if e > 1 {
                    write!(f, "^{}", e)?;
                }
                wrote_var = true;
            }
            let _ = wrote_var;
        }
        Ok(())
    }
}

/// A rational point, printed as a tuple.
pub type PointQ = Vec<Scalar>;

/// Renders a point as `(a, b, …)`.
pub fn format_point(p: &[Scalar]) -> String {
    let inner: Vec<String> = p.iter().map(|s| s.to_string()).collect();
    format!("({})", inner.join(", "))
}

struct Parser<'a> {
    ring: &'a RingSpec,
    chars: Vec<char>,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(ring: &'a RingSpec, input: &str) -> Self {
        Parser {
            ring,
            chars: input.chars().collect(),
            pos: 0,
        }
    }

    fn parse_all(&mut self) -> Result<Poly> {
        let p = self.parse_sum()?;
        self.skip_ws();
        if self.pos != self.chars.len() {
            return Err(self.err(&format!(
                "unexpected character '{}'",
                self.chars[self.pos]
            )));
        }
        Ok(p)
    }

    fn err(&self, msg: &str) -> Error {
        Error::Parse {
            line: 0,
            msg: format!("polynomial syntax at column {}: {}", self.pos + 1, msg),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn parse_sum(&mut self) -> Result<Poly> {
        let mut acc = match self.peek() {
            Some('-') => {
                self.pos += 1;
                self.parse_product()?.neg()
            }
            Some('+') => {
                self.pos += 1;
                self.parse_product()?
            }
            _ => self.parse_product()?,
        };
        loop {
            match self.peek() {
                Some('+') => {
                    self.pos += 1;
                    acc = acc.add(&self.parse_product()?);
                }
                Some('-') => {
                    self.pos += 1;
                    acc = acc.sub(&self.parse_product()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn parse_product(&mut self) -> Result<Poly> {
        let mut acc = self.parse_power()?;
        loop {
            match self.peek() {
                Some('*') => {
                    self.pos += 1;
                    acc = acc.mul(&self.parse_power()?);
                }
                // Implicit multiplication: a factor starts right away.
                Some(c) if c.is_alphabetic() || c.is_ascii_digit() || c == '(' => {
                    acc = acc.mul(&self.parse_power()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn parse_power(&mut self) -> Result<Poly> {
        let base = self.parse_atom()?;
        if self.peek() == Some('^') {
            self.pos += 1;
            let e = self.parse_nat()?;
            Ok(base.pow(e))
        } else {
            Ok(base)
        }
    }

    fn parse_atom(&mut self) -> Result<Poly> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let inner = self.parse_sum()?;
                if self.peek() != Some(')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let num = self.parse_nat_big()?;
                if self.peek() == Some('/') {
                    self.pos += 1;
                    let den = self.parse_nat_big()?;
                    if den == num_bigint::BigInt::from(0) {
                        return Err(self.err("division by zero"));
                    }
                    Ok(Poly::constant(self.ring, Scalar::from_big(num, den)))
                } else {
                    Ok(Poly::constant(
                        self.ring,
                        Scalar::from_big(num, num_bigint::BigInt::from(1)),
                    ))
                }
            }
            Some(c) if c.is_alphabetic() || c == '_' => {
                let name = self.parse_ident();
                if let Some(i) = self.ring.var_index(&name) {
                    return Ok(Poly::var(self.ring, i));
                }
                // Juxtaposed variables written without separators ("z1z2"):
                // decompose greedily into known variable names.
                match self.decompose_vars(&name) {
                    Some(vars) => {
                        let mut acc = Poly::one(self.ring);
                        for i in vars {
                            acc = acc.mul(&Poly::var(self.ring, i));
                        }
                        Ok(acc)
                    }
                    None => Err(self.err(&format!(
                        "unknown variable '{}' (ring has {})",
                        name,
                        self.ring.vars().join(", ")
                    ))),
                }
            }
            Some(c) => Err(self.err(&format!("unexpected character '{}'", c))),
            None => Err(self.err("unexpected end of input")),
        }
    }

    /// Splits an identifier into a product of ring variables by repeatedly
    /// taking the longest variable name that prefixes the rest; the whole
    /// identifier must be consumed.
    fn decompose_vars(&self, ident: &str) -> Option<Vec<usize>> {
        let mut rest = ident;
        let mut out = Vec::new();
        while !rest.is_empty() {
            let best = self
                .ring
                .vars()
                .iter()
                .enumerate()
                .filter(|(_, v)| rest.starts_with(v.as_str()))
                .max_by_key(|(_, v)| v.len())?;
            out.push(best.0);
            rest = &rest[best.1.len()..];
        }
        Some(out)
    }

    fn parse_ident(&mut self) -> String {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.chars.len()
            && (self.chars[self.pos].is_alphanumeric() || self.chars[self.pos] == '_')
        {
            self.pos += 1;
        }
        self.chars[start..self.pos].iter().collect()
    }

    fn parse_nat(&mut self) -> Result<u32> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected a number"));
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        s.parse::<u32>()
            .map_err(|_| self.err("exponent out of range"))
    }

    fn parse_nat_big(&mut self) -> Result<num_bigint::BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected a number"));
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        Ok(s.parse::<num_bigint::BigInt>().expect("digit string"))
    }
}
