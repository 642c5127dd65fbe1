//! Line-oriented problem files: a ring, one operator model, optional
//! component candidates, and a list of queries to run against the model.
//!
//! The format is declarative, one directive per line, with full-line `#`
//! comments; `emit_problem` is a canonical writer whose output parses back
//! to an equal problem, which keeps golden files diff-friendly.

use std::fmt::Write as _;

use crate::cycles::PrimeCandidate;
use crate::error::{Error, Result};
use crate::fpmodule::FPModule;
use crate::matrix::QMatrix;
use crate::poly::{format_point, Poly, RingSpec};
use crate::scalar::Scalar;
use crate::spectral::OperatorModel;

/// Suite identifiers accepted by the `verify` query.
pub const VERIFY_SUITES: [&str; 8] = ["2.3", "2.5", "2.6", "2.8", "2.11", "2.14", "2.15", "2.18"];

/// One query against the model, kept in file order.
#[derive(Clone, Debug, PartialEq)]
pub enum Query {
    /// All rational joint-spectrum points.
    Spectrum,
    /// Fiber homology dimensions at a point.
    Fiber(Vec<Scalar>),
    /// Local stalk homology dimensions at a point.
    Stalk(Vec<Scalar>),
    /// Local cycle at a point.
    Cycle(Vec<Scalar>),
    /// Global spectral picture with sampling provenance.
    Picture,
    /// Weyl verdict and witnesses at a point.
    Weyl(Vec<Scalar>),
    /// Hilbert–Samuel record of the module along an ideal.
    Hs(Vec<Poly>),
    /// Multiplicity of the module along a parameter system.
    Mult(Vec<Poly>),
    /// Push-forward of the spectral picture under a polynomial map.
    Pushforward(Vec<Poly>),
    /// Euler characteristic at a point over a variable frame (0-based).
    Chi(Vec<Scalar>, Vec<usize>),
    /// Graded degree report comparing rank growth with ideal-power growth.
    Arveson,
    /// Named verification suites to run.
    Verify(Vec<String>),
}

/// A parsed problem: ring, model, candidate components, and queries.
#[derive(Clone, Debug, PartialEq)]
pub struct ProblemFile {
    pub ring: RingSpec,
    pub model: OperatorModel,
    pub candidates: Vec<PrimeCandidate>,
    pub queries: Vec<Query>,
}

#[derive(Clone, Copy, PartialEq)]
enum ModelKind {
    Module,
    Matrix,
    Explicit,
}

fn perr(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}

/// Re-stamps nested parse errors with the file line they came from.
fn at_line(line: usize) -> impl Fn(Error) -> Error {
    move |e| match e {
        Error::Parse { msg, .. } => Error::Parse { line, msg },
        other => other,
    }
}

fn split_word(s: &str) -> (&str, &str) {
    let s = s.trim();
    match s.find(char::is_whitespace) {
        Some(i) => (&s[..i], s[i..].trim_start()),
        None => (s, ""),
    }
}

fn is_ident(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_alphanumeric() || c == '_')
}

fn parse_polys(ring: &RingSpec, text: &str, line: usize) -> Result<Vec<Poly>> {
    let mut out = Vec::new();
    for piece in text.split(',') {
        let piece = piece.trim();
        if piece.is_empty() {
            return Err(perr(line, "empty polynomial entry"));
        }
        out.push(Poly::parse(ring, piece).map_err(at_line(line))?);
    }
    Ok(out)
}

fn parse_point(ring: &RingSpec, text: &str, line: usize) -> Result<Vec<Scalar>> {
    let t = text.trim();
    let inner = t
        .strip_prefix('(')
        .and_then(|s| s.strip_suffix(')'))
        .ok_or_else(|| perr(line, format!("expected a point like (0, 0), found `{}`", t)))?;
    let parts: Vec<&str> = if inner.trim().is_empty() {
        Vec::new()
    } else {
        inner.split(',').collect()
    };
    if parts.len() != ring.num_vars() {
        return Err(perr(
            line,
            format!(
                "point has {} coordinates for {} variables",
                parts.len(),
                ring.num_vars()
            ),
        ));
    }
    parts
        .iter()
        .map(|p| {
            p.trim()
                .parse::<Scalar>()
                .map_err(|m| perr(line, format!("bad coordinate `{}`: {}", p.trim(), m)))
        })
        .collect()
}

/// Parses `{1, 2}` with 1-based variable indexes into sorted 0-based ones.
fn parse_frame(ring: &RingSpec, text: &str, line: usize) -> Result<Vec<usize>> {
    let t = text.trim();
    let inner = t
        .strip_prefix('{')
        .and_then(|s| s.strip_suffix('}'))
        .ok_or_else(|| {
            perr(
                line,
                format!("expected a variable set like {{1, 2}}, found `{}`", t),
            )
        })?;
    let mut out: Vec<usize> = Vec::new();
    if !inner.trim().is_empty() {
        for part in inner.split(',') {
            let shown = part.trim();
            let k: usize = shown
                .parse()
                .map_err(|_| perr(line, format!("bad variable index `{}`", shown)))?;
            if k == 0 || k > ring.num_vars() {
                return Err(perr(
                    line,
                    format!("variable index {} out of range 1..={}", k, ring.num_vars()),
                ));
            }
            if out.contains(&(k - 1)) {
                return Err(perr(line, format!("variable index {} repeated", k)));
            }
            out.push(k - 1);
        }
    }
    out.sort_unstable();
    Ok(out)
}

fn no_args(name: &str, args: &str, line: usize) -> Result<()> {
    if args.trim().is_empty() {
        Ok(())
    } else {
        Err(perr(line, format!("{} takes no arguments", name)))
    }
}

fn parse_query(ring: &RingSpec, rest: &str, line: usize) -> Result<Query> {
    let (cmd, args) = split_word(rest);
    match cmd {
        "spectrum" => {
            no_args("spectrum", args, line)?;
            Ok(Query::Spectrum)
        }
        "picture" => {
            no_args("picture", args, line)?;
            Ok(Query::Picture)
        }
        "arveson" => {
            no_args("arveson", args, line)?;
            Ok(Query::Arveson)
        }
        "fiber" => Ok(Query::Fiber(parse_point(ring, args, line)?)),
        "stalk" => Ok(Query::Stalk(parse_point(ring, args, line)?)),
        "cycle" => Ok(Query::Cycle(parse_point(ring, args, line)?)),
        "weyl" => Ok(Query::Weyl(parse_point(ring, args, line)?)),
        "hs" => Ok(Query::Hs(parse_polys(ring, args, line)?)),
        "mult" => Ok(Query::Mult(parse_polys(ring, args, line)?)),
        "pushforward" => Ok(Query::Pushforward(parse_polys(ring, args, line)?)),
        "chi" => {
            let brace = args
                .find('{')
                .ok_or_else(|| perr(line, "chi needs a point and a variable set"))?;
            let point = parse_point(ring, &args[..brace], line)?;
            let frame = parse_frame(ring, &args[brace..], line)?;
            Ok(Query::Chi(point, frame))
        }
        "verify" => {
            let tokens: Vec<String> = args.split_whitespace().map(str::to_string).collect();
            if tokens.is_empty() {
                return Err(perr(line, "verify needs at least one suite identifier"));
            }
            for t in &tokens {
                if !VERIFY_SUITES.contains(&t.as_str()) {
                    return Err(perr(
                        line,
                        format!(
                            "unknown verify suite `{}`; known suites: {}",
                            t,
                            VERIFY_SUITES.join(", ")
                        ),
                    ));
                }
            }
            Ok(Query::Verify(tokens))
        }
        "" => Err(perr(line, "query needs a command")),
        other => Err(perr(line, format!("unknown query `{}`", other))),
    }
}

/// Parses the problem format; errors carry 1-based line numbers
/// (0 marks whole-file problems found after the last line).
pub fn parse_problem(text: &str) -> Result<ProblemFile> {
    let mut ring: Option<RingSpec> = None;
    let mut kind: Option<ModelKind> = None;
    let mut module_gens: Vec<Poly> = Vec::new();
    let mut size: Option<usize> = None;
    let mut ops: Vec<QMatrix> = Vec::new();
    let mut homology: Vec<FPModule> = Vec::new();
    let mut candidates: Vec<PrimeCandidate> = Vec::new();
    let mut queries: Vec<Query> = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let t = raw.trim();
        if t.is_empty() || t.starts_with('#') {
            continue;
        }
        let (key, rest) = split_word(t);
        match key {
            "ring" => {
                if ring.is_some() {
                    return Err(perr(line, "duplicate ring declaration"));
                }
                let names: Vec<&str> = rest.split_whitespace().collect();
                if names.is_empty() {
                    return Err(perr(line, "ring needs at least one variable name"));
                }
                for (i, n) in names.iter().enumerate() {
                    if !is_ident(n) {
                        return Err(perr(line, format!("bad variable name `{}`", n)));
                    }
                    if names[..i].contains(n) {
                        return Err(perr(line, format!("variable `{}` repeated", n)));
                    }
                }
                ring = Some(RingSpec::new(names));
            }
            "model" => {
                if kind.is_some() {
                    return Err(perr(line, "duplicate model declaration"));
                }
                kind = Some(match rest {
                    "module" => ModelKind::Module,
                    "matrix-tuple" => ModelKind::Matrix,
                    "explicit-homology" => ModelKind::Explicit,
                    other => {
                        return Err(perr(
                            line,
                            format!(
                                "unknown model kind `{}`; expected module, matrix-tuple, \
                                 or explicit-homology",
                                other
                            ),
                        ))
                    }
                });
            }
            "generators" => {
                if kind != Some(ModelKind::Module) {
                    return Err(perr(line, "generators lines belong to a module model"));
                }
                let r = ring
                    .as_ref()
                    .ok_or_else(|| perr(line, "generators requires a ring declaration first"))?;
                let polys = parse_polys(r, rest, line)?;
                module_gens.extend(polys.into_iter().filter(|p| !p.is_zero()));
            }
            "size" => {
                if kind != Some(ModelKind::Matrix) {
                    return Err(perr(line, "size lines belong to a matrix-tuple model"));
                }
                if size.is_some() {
                    return Err(perr(line, "duplicate size declaration"));
                }
                let d: usize = rest
                    .trim()
                    .parse()
                    .map_err(|_| perr(line, format!("bad size `{}`", rest.trim())))?;
                size = Some(d);
            }
            "op" => {
                if kind != Some(ModelKind::Matrix) {
                    return Err(perr(line, "op lines belong to a matrix-tuple model"));
                }
                let d = size.ok_or_else(|| perr(line, "op requires a size declaration first"))?;
                let rows: Vec<&str> = rest.split('/').collect();
                if rows.len() != d {
                    return Err(perr(line, format!("op has {} rows, expected {}", rows.len(), d)));
                }
                let mut data = Vec::with_capacity(d * d);
                for row in &rows {
                    let entries: Vec<&str> = row.split_whitespace().collect();
                    if entries.len() != d {
                        return Err(perr(
                            line,
                            format!(
                                "op row `{}` has {} entries, expected {}",
                                row.trim(),
                                entries.len(),
                                d
                            ),
                        ));
                    }
                    for e in entries {
                        data.push(
                            e.parse::<Scalar>()
                                .map_err(|m| perr(line, format!("bad entry `{}`: {}", e, m)))?,
                        );
                    }
                }
                ops.push(QMatrix::new(d, d, data));
            }
            "homology" => {
                if kind != Some(ModelKind::Explicit) {
                    return Err(perr(
                        line,
                        "homology lines belong to an explicit-homology model",
                    ));
                }
                let r = ring
                    .as_ref()
                    .ok_or_else(|| perr(line, "homology requires a ring declaration first"))?;
                let stage = if rest == "zero" {
                    FPModule::zero(r)
                } else {
                    let gens: Vec<Poly> = parse_polys(r, rest, line)?
                        .into_iter()
                        .filter(|p| !p.is_zero())
                        .collect();
                    FPModule::quotient_ring(r, &gens)?
                };
                homology.push(stage);
            }
            "candidate" => {
                let r = ring
                    .as_ref()
                    .ok_or_else(|| perr(line, "candidate requires a ring declaration first"))?;
                let trusted_tail = rest
                    .strip_prefix("trusted")
                    .filter(|t| t.is_empty() || t.starts_with(|c: char| c.is_whitespace() || c == '"'));
                let (note, gens_text) = match trusted_tail {
                    Some(tail) => {
                        let body = tail.trim_start().strip_prefix('"').ok_or_else(|| {
                            perr(line, "trusted needs a double-quoted note")
                        })?;
                        let end = body
                            .find('"')
                            .ok_or_else(|| perr(line, "unterminated note"))?;
                        (Some(&body[..end]), body[end + 1..].trim_start())
                    }
                    None => (None, rest),
                };
                let gens = parse_polys(r, gens_text, line)?;
                let cand = match note {
                    Some(n) => PrimeCandidate::trusted(r, &gens, n),
                    None => PrimeCandidate::new(r, &gens),
                }?;
                candidates.push(cand);
            }
            "query" => {
                let r = ring
                    .as_ref()
                    .ok_or_else(|| perr(line, "query requires a ring declaration first"))?;
                queries.push(parse_query(r, rest, line)?);
            }
            other => return Err(perr(line, format!("unknown directive `{}`", other))),
        }
    }

    let ring = ring.ok_or_else(|| perr(0, "problem declares no ring"))?;
    let model = match kind {
        None => return Err(perr(0, "problem declares no model")),
        Some(ModelKind::Module) => {
            OperatorModel::module_tuple(FPModule::quotient_ring(&ring, &module_gens)?)
        }
        Some(ModelKind::Matrix) => {
            if size.is_none() {
                return Err(perr(0, "matrix-tuple model needs a size declaration"));
            }
            if ops.len() != ring.num_vars() {
                return Err(perr(
                    0,
                    format!("{} op lines for {} variables", ops.len(), ring.num_vars()),
                ));
            }
            OperatorModel::matrix_tuple(ring.clone(), ops)?
        }
        Some(ModelKind::Explicit) => OperatorModel::explicit(ring.clone(), homology)?,
    };
    Ok(ProblemFile {
        ring,
        model,
        candidates,
        queries,
    })
}

fn join_polys(polys: &[Poly]) -> String {
    let shown: Vec<String> = polys.iter().map(Poly::to_string).collect();
    shown.join(", ")
}

/// Renders one query line in canonical form.
pub fn render_query(q: &Query) -> String {
    match q {
        Query::Spectrum => "query spectrum".into(),
        Query::Fiber(p) => format!("query fiber {}", format_point(p)),
        Query::Stalk(p) => format!("query stalk {}", format_point(p)),
        Query::Cycle(p) => format!("query cycle {}", format_point(p)),
        Query::Picture => "query picture".into(),
        Query::Weyl(p) => format!("query weyl {}", format_point(p)),
        Query::Hs(polys) => format!("query hs {}", join_polys(polys)),
        Query::Mult(polys) => format!("query mult {}", join_polys(polys)),
        Query::Pushforward(polys) => format!("query pushforward {}", join_polys(polys)),
        Query::Chi(p, frame) => {
            let shown: Vec<String> = frame.iter().map(|i| (i + 1).to_string()).collect();
            format!("query chi {} {{{}}}", format_point(p), shown.join(", "))
        }
        Query::Arveson => "query arveson".into(),
        Query::Verify(tokens) => format!("query verify {}", tokens.join(" ")),
    }
}

/// Canonical writer: the output parses back to an equal problem.
///
/// Models that the file format cannot express (non-cyclic module
/// presentations) are reported as unsupported rather than approximated.
pub fn emit_problem(p: &ProblemFile) -> Result<String> {
    let mut out = String::new();
    let _ = writeln!(out, "ring {}", p.ring.vars().join(" "));
    match &p.model {
        OperatorModel::ModuleTuple { module } => {
            out.push_str("model module\n");
            if module.gens() != 1 {
                return Err(Error::Unsupported(
                    "only cyclic module models have a file form".into(),
                ));
            }
            let gens: Vec<String> = module
                .relations()
                .iter()
                .map(|rel| rel.comp(0).to_string())
                .collect();
            if !gens.is_empty() {
                let _ = writeln!(out, "generators {}", gens.join(", "));
            }
        }
        OperatorModel::MatrixTuple { ops, .. } => {
            out.push_str("model matrix-tuple\n");
            let d = ops.first().map(QMatrix::rows).unwrap_or(0);
            let _ = writeln!(out, "size {}", d);
            for op in ops {
                let rows: Vec<String> = (0..d)
                    .map(|i| {
                        let entries: Vec<String> =
                            (0..d).map(|j| op.get(i, j).to_string()).collect();
                        entries.join(" ")
                    })
                    .collect();
                let _ = writeln!(out, "op {}", rows.join(" / "));
            }
        }
        OperatorModel::ExplicitHomology { homology, .. } => {
            out.push_str("model explicit-homology\n");
            for h in homology {
                if h.gens() == 0 {
                    out.push_str("homology zero\n");
                } else if h.gens() == 1 {
                    if h.relations().is_empty() {
                        out.push_str("homology 0\n");
                    } else {
                        let gens: Vec<String> = h
                            .relations()
                            .iter()
                            .map(|rel| rel.comp(0).to_string())
                            .collect();
                        let _ = writeln!(out, "homology {}", gens.join(", "));
                    }
                } else {
                    return Err(Error::Unsupported(
                        "only cyclic homology stages have a file form".into(),
                    ));
                }
            }
        }
    }
    for c in &p.candidates {
        let gens = join_polys(c.generators());
        match c.note() {
            Some(n) => {
                let _ = writeln!(out, "candidate trusted \"{}\" {}", n, gens);
            }
            None => {
                let _ = writeln!(out, "candidate {}", gens);
            }
        }
    }
    for q in &p.queries {
        let _ = writeln!(out, "{}", render_query(q));
    }
    Ok(out)
}
