//! Executes parsed problems: query dispatch, verification suites, and the
//! exit-status rules for the command-line front end.
//!
//! Per-query failures are recorded in the report instead of aborting the
//! run, so one bad query never hides the results of the others.

use std::time::Instant;

use serde_json::{json, Value};

use crate::arveson::{degree_report, GradedModule};
use crate::cycles::{
    components_with_support, local_cycle, pushforward_cycle, spectral_picture, weyl_test,
    SampleConfig,
};
use crate::defaults::{DEFAULT_MAX_K, DEFAULT_SAMPLE_BUDGET};
use crate::error::{Error, Result};
use crate::fpmodule::{
    hs_function, hs_polynomial, hs_polynomial_local, koszul_homology, local_dim_at_point,
    multiplicity_serre, FPModule,
};
use crate::groebner::k_subsets;
use crate::poly::{Poly, RingSpec};
use crate::problem::{render_query, ProblemFile, Query};
use crate::report::{
    cycle_value, degree_report_value, describe_model, hs_value, picture_value, point_value,
    pushforward_value, serre_value, spectrum_value, weyl_value, QueryReport, Report,
    CONVENTION_NOTE,
};
use crate::scalar::Scalar;
use crate::spectral::{
    chi_prime, fiber_homology, stalk_homology, svep_check, taylor_spectrum, FiberHomology,
    OperatorModel, SpectrumDescription,
};

/// Knobs for a run, mapped one-to-one from command-line flags.
#[derive(Clone, Debug)]
pub struct RunOptions {
    /// Sample-stream budget per component.
    pub sample_budget: usize,
    /// Thickening budget for stabilized local dimensions.
    pub max_k: usize,
    /// Starting offset into the deterministic sample stream.
    pub seed: usize,
    /// Execute only the `verify` queries.
    pub verify_only: bool,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions {
            sample_budget: DEFAULT_SAMPLE_BUDGET,
            max_k: DEFAULT_MAX_K,
            seed: 0,
            verify_only: false,
        }
    }
}

impl RunOptions {
    fn sample_config(&self) -> SampleConfig {
        SampleConfig {
            budget: self.sample_budget,
            offset: self.seed,
            max_k: self.max_k,
        }
    }
}

/// Runs every query in file order and assembles the report.
pub fn run(file: &ProblemFile, opts: &RunOptions) -> Report {
    let start = Instant::now();
    let mut queries = Vec::new();
    for q in &file.queries {
        if opts.verify_only && !matches!(q, Query::Verify(_)) {
            continue;
        }
        queries.push(run_query(file, q, opts));
    }
    Report {
        model: describe_model(&file.model),
        convention: CONVENTION_NOTE.into(),
        queries,
        timing_ms: start.elapsed().as_millis(),
    }
}

/// Exit status for a finished run: 1 when some query could not be executed
/// (the input asked for something the model cannot answer), 2 when every
/// query ran but a verification suite failed, 0 otherwise.
pub fn exit_status(report: &Report) -> i32 {
    if report.has_error() {
        1
    } else if report.has_failure() {
        2
    } else {
        0
    }
}

fn query_label(q: &Query) -> (String, String) {
    let line = render_query(q);
    let rest = line.strip_prefix("query ").unwrap_or(&line);
    match rest.find(' ') {
        Some(i) => (rest[..i].to_string(), rest[i + 1..].to_string()),
        None => (rest.to_string(), String::new()),
    }
}

fn run_query(file: &ProblemFile, q: &Query, opts: &RunOptions) -> QueryReport {
    let (name, inputs) = query_label(q);
    let (result, verdict) = match execute(file, q, opts) {
        Ok((value, verdict)) => (value, verdict),
        Err(e) => (json!({ "error": e.to_string() }), None),
    };
    QueryReport {
        name,
        inputs,
        result,
        verdict,
    }
}

fn alternating(dims: &[usize]) -> i64 {
    let mut total = 0i64;
    for (j, d) in dims.iter().enumerate() {
        if j % 2 == 0 {
            total += *d as i64;
        } else {
            total -= *d as i64;
        }
    }
    total
}

fn shifted_vars(ring: &RingSpec, point: &[Scalar]) -> Vec<Poly> {
    (0..ring.num_vars())
        .map(|i| Poly::var(ring, i).sub(&Poly::constant(ring, point[i].clone())))
        .collect()
}

fn fiber_dims(model: &OperatorModel, point: &[Scalar]) -> Result<FiberHomology> {
    match model {
        OperatorModel::MatrixTuple { ops, .. } => fiber_homology(ops, point),
        _ => {
            let m = model.tuple_module()?;
            let ring = m.ring().clone();
            if point.len() != ring.num_vars() {
                return Err(Error::ShapeMismatch(format!(
                    "point has {} coordinates for {} variables",
                    point.len(),
                    ring.num_vars()
                )));
            }
            let homology = koszul_homology(&m, &shifted_vars(&ring, point))?;
            let mut dims = Vec::with_capacity(homology.len());
            for h in &homology {
                dims.push(h.vector_space_dim()?);
            }
            let index = alternating(&dims);
            Ok(FiberHomology { dims, index })
        }
    }
}

fn execute(file: &ProblemFile, q: &Query, opts: &RunOptions) -> Result<(Value, Option<String>)> {
    let model = &file.model;
    let cfg = opts.sample_config();
    match q {
        Query::Spectrum => Ok((spectrum_value(&taylor_spectrum(model)?), None)),
        Query::Fiber(pt) => {
            let fh = fiber_dims(model, pt)?;
            Ok((json!({ "dims": fh.dims, "index": fh.index }), None))
        }
        Query::Stalk(pt) => {
            let stages = stalk_homology(model, pt)?;
            let mut shown = Vec::with_capacity(stages.len());
            let mut lengths = Vec::with_capacity(stages.len());
            for h in &stages {
                // A stalk of positive local dimension has no finite length;
                // report the dimension and leave the length open.
                match local_dim_at_point(h, pt, opts.max_k) {
                    Ok(len) => {
                        shown.push(json!({ "length": len }));
                        lengths.push(len);
                    }
                    Err(Error::InfiniteDimensional(_)) | Err(Error::NotCofinite(_)) => {
                        shown.push(json!({ "length": Value::Null }));
                    }
                    Err(e) => return Err(e),
                }
            }
            let euler = if lengths.len() == stages.len() {
                Some(alternating(&lengths))
            } else {
                None
            };
            Ok((json!({ "stages": shown, "euler": euler }), None))
        }
        Query::Cycle(pt) => {
            let (cycle, on_spectrum) = local_cycle(model, pt, &file.candidates, &cfg)?;
            Ok((
                json!({ "on_spectrum": on_spectrum, "cycle": cycle_value(&cycle) }),
                None,
            ))
        }
        Query::Picture => {
            let pic = spectral_picture(model, &file.candidates, &cfg)?;
            Ok((picture_value(&pic), None))
        }
        Query::Weyl(pt) => {
            let w = weyl_test(model, pt, &file.candidates, &cfg)?;
            Ok((weyl_value(&w), None))
        }
        Query::Hs(polys) => {
            let m = model.tuple_module()?;
            Ok((hs_value(&hs_polynomial(&m, polys, opts.max_k)?), None))
        }
        Query::Mult(polys) => {
            let m = model.tuple_module()?;
            let serre = multiplicity_serre(&m, polys)?;
            let hs = hs_polynomial(&m, polys, opts.max_k)?;
            let agree = Scalar::from_int(serre.multiplicity) == hs.normalized_leading;
            Ok((
                json!({ "serre": serre_value(&serre), "hs": hs_value(&hs), "agree": agree }),
                None,
            ))
        }
        Query::Pushforward(f) => {
            let pic = spectral_picture(model, &file.candidates, &cfg)?;
            let report = pushforward_cycle(&pic.cycle(), f, &cfg)?;
            Ok((pushforward_value(&report), None))
        }
        Query::Chi(pt, frame) => {
            let value = chi_prime(model, pt, frame, opts.max_k)?;
            Ok((json!({ "value": value }), None))
        }
        Query::Arveson => {
            let graded = GradedModule::new(model.tuple_module()?)?;
            Ok((
                degree_report_value(&degree_report(&graded, opts.max_k)?),
                None,
            ))
        }
        Query::Verify(tokens) => run_suites(file, tokens, opts),
    }
}

struct SuiteOutcome {
    verdict: &'static str,
    detail: Value,
}

fn pass(detail: Value) -> SuiteOutcome {
    SuiteOutcome {
        verdict: "pass",
        detail,
    }
}

fn fail(detail: Value) -> SuiteOutcome {
    SuiteOutcome {
        verdict: "fail",
        detail,
    }
}

fn skip(reason: &str) -> SuiteOutcome {
    SuiteOutcome {
        verdict: "skip",
        detail: json!({ "reason": reason }),
    }
}

fn run_suites(
    file: &ProblemFile,
    tokens: &[String],
    opts: &RunOptions,
) -> Result<(Value, Option<String>)> {
    let mut entries = Vec::new();
    let mut any_fail = false;
    let mut any_pass = false;
    for token in tokens {
        let outcome = run_suite(file, token, opts);
        any_fail |= outcome.verdict == "fail";
        any_pass |= outcome.verdict == "pass";
        let mut entry = json!({
            "suite": token,
            "verdict": outcome.verdict,
            "detail": outcome.detail,
        });
        if token == "2.15" {
            // The splitting criterion exercised here has no suite token of
            // its own; callers looking for it by number will not find one.
            entry["note"] = json!(
                "also covers the unnumbered splitting criterion for removable \
                 points; its checks carry no separate suite token and are \
                 folded into this verdict"
            );
        }
        entries.push(entry);
    }
    let verdict = if any_fail {
        "fail"
    } else if any_pass {
        "pass"
    } else {
        "skip"
    };
    Ok((json!({ "suites": entries }), Some(verdict.into())))
}

fn run_suite(file: &ProblemFile, token: &str, opts: &RunOptions) -> SuiteOutcome {
    let result = match token {
        "2.3" => suite_functoriality(file, opts),
        "2.5" => suite_chi_multiplicity(file, opts),
        "2.6" => suite_isolated_stalks(file, opts),
        "2.8" => suite_hs_polynomiality(file, opts),
        "2.11" => suite_rank_polynomial(file, opts),
        "2.14" => suite_leading_terms(file, opts),
        "2.15" => suite_weyl_consistency(file, opts),
        "2.18" => suite_weyl_pushforward(file, opts),
        other => return skip(&format!("unknown suite {}", other)),
    };
    result.unwrap_or_else(|e| match e {
        Error::ComponentsUnknown(msg) => skip(&format!(
            "components unavailable; declare candidate lines: {}",
            msg
        )),
        Error::Unsupported(msg) => skip(&msg),
        other => fail(json!({ "error": other.to_string() })),
    })
}

/// Deterministic on-spectrum points for the suites: the rational spectrum
/// when finite, otherwise the picture's component samples.
fn suite_points(file: &ProblemFile, opts: &RunOptions) -> Result<Vec<Vec<Scalar>>> {
    match taylor_spectrum(&file.model)? {
        SpectrumDescription::FinitePoints(points) => {
            Ok(points.into_iter().map(|(p, _)| p).take(4).collect())
        }
        SpectrumDescription::Variety { .. } => {
            let pic = spectral_picture(&file.model, &file.candidates, &opts.sample_config())?;
            let mut out = Vec::new();
            for term in pic.terms {
                for s in term.samples.into_iter().take(2) {
                    out.push(s);
                }
            }
            Ok(out)
        }
    }
}

/// Smallest variable frame at which the local Euler characteristic is
/// defined at the point, together with its value.
fn find_chi_frame(
    model: &OperatorModel,
    point: &[Scalar],
    max_k: usize,
) -> Result<Option<(Vec<usize>, i64)>> {
    let n = model.ring().num_vars();
    for size in 1..=n {
        for frame in k_subsets(n, size) {
            match chi_prime(model, point, &frame, max_k) {
                Ok(chi) => return Ok(Some((frame, chi))),
                Err(Error::NotACoordinateSystem(_))
                | Err(Error::InfiniteDimensional(_))
                | Err(Error::NotCofinite(_))
                | Err(Error::NoStabilization(_)) => continue,
                Err(other) => return Err(other),
            }
        }
    }
    Ok(None)
}

fn frame_1based(frame: &[usize]) -> Vec<usize> {
    frame.iter().map(|i| i + 1).collect()
}

/// Multiplicity along the frame ideal at the point, graded by stage: the
/// alternating sum over the model's homology stages of the leading
/// Hilbert–Samuel coefficients in frame degree.
fn alternating_multiplicity(
    stages: &[FPModule],
    ring: &RingSpec,
    point: &[Scalar],
    frame: &[usize],
    max_k: usize,
) -> Result<i64> {
    let q: Vec<Poly> = frame
        .iter()
        .map(|&i| Poly::var(ring, i).sub(&Poly::constant(ring, point[i].clone())))
        .collect();
    let want = frame.len() as i64;
    let mut total = 0i64;
    for (j, stage) in stages.iter().enumerate() {
        let e = match hs_polynomial_local(stage, &q, point, max_k) {
            Ok(record) => {
                if record.degree > want {
                    return Err(Error::NotACoordinateSystem(format!(
                        "stage {} grows in degree {} over a frame of size {}",
                        j, record.degree, want
                    )));
                }
                if record.degree < want {
                    0
                } else {
                    record.normalized_leading.to_i64().ok_or_else(|| {
                        Error::NoStabilization("non-integer leading multiplicity".into())
                    })?
                }
            }
            Err(Error::ZeroModule(_)) => 0,
            Err(other) => return Err(other),
        };
        if j % 2 == 0 {
            total += e;
        } else {
            total -= e;
        }
    }
    Ok(total)
}

/// Local Euler characteristics agree with alternating frame multiplicities
/// of the homology stages, at deterministically chosen points and frames.
fn suite_chi_multiplicity(file: &ProblemFile, opts: &RunOptions) -> Result<SuiteOutcome> {
    let model = &file.model;
    let stages = model.homology_stages()?;
    let points = suite_points(file, opts)?;
    if points.is_empty() {
        return Ok(skip("the spectrum holds no rational points to test at"));
    }
    let mut checks = Vec::new();
    for pt in points.iter().take(2) {
        let Some((frame, chi)) = find_chi_frame(model, pt, opts.max_k)? else {
            continue;
        };
        let rhs = alternating_multiplicity(&stages, model.ring(), pt, &frame, opts.max_k)?;
        let entry = json!({
            "point": point_value(pt),
            "frame": frame_1based(&frame),
            "chi": chi,
            "alternating_multiplicity": rhs,
        });
        if chi != rhs {
            return Ok(fail(entry));
        }
        checks.push(entry);
    }
    if checks.is_empty() {
        return Ok(skip("no variable frame is transversal at the sampled points"));
    }
    Ok(pass(json!({ "checks": checks })))
}

/// Canonical test maps for the push-forward suites, in trial order.
fn suite_maps(ring: &RingSpec) -> Vec<Vec<Poly>> {
    let square = Poly::var(ring, 0).mul(&Poly::var(ring, 0));
    let mut sum = Poly::var(ring, 0);
    for i in 1..ring.num_vars() {
        sum = sum.add(&Poly::var(ring, i));
    }
    vec![vec![square], vec![sum]]
}

/// Push-forwards of top cycles through a point agree with preimage-local
/// computations for the canonical test maps.
fn suite_functoriality(file: &ProblemFile, opts: &RunOptions) -> Result<SuiteOutcome> {
    let model = &file.model;
    let cfg = opts.sample_config();
    let points = suite_points(file, opts)?;
    if points.is_empty() {
        return Ok(skip("the spectrum holds no rational points to test at"));
    }
    let mut checks = Vec::new();
    for f in suite_maps(model.ring()) {
        for pt in points.iter().take(2) {
            let mut image = Vec::with_capacity(f.len());
            for fj in &f {
                image.push(fj.eval(pt)?);
            }
            let report = match crate::cycles::functoriality_check(model, &f, &image, &file.candidates, &cfg)
            {
                Ok(r) => r,
                Err(Error::NotFinite(_))
                | Err(Error::IrrationalSpectrum(_))
                | Err(Error::IrrationalPreimage(_))
                | Err(Error::NotGeneric(_)) => continue,
                Err(other) => return Err(other),
            };
            let entry = json!({
                "map": f.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
                "target_point": point_value(&image),
                "pushed": cycle_value(&report.pushed_side),
                "local": cycle_value(&report.local_side),
                "matches": report.matches,
            });
            if !report.matches {
                return Ok(fail(entry));
            }
            checks.push(entry);
        }
        if !checks.is_empty() {
            break;
        }
    }
    if checks.is_empty() {
        return Ok(skip("no canonical map is proper over the sampled points"));
    }
    Ok(pass(json!({ "checks": checks })))
}

/// Finite spectra split into root spaces: positive stalk stages vanish and
/// the degree-0 stalks partition the ambient dimension.
fn suite_isolated_stalks(file: &ProblemFile, opts: &RunOptions) -> Result<SuiteOutcome> {
    let model = &file.model;
    let points = match taylor_spectrum(model)? {
        SpectrumDescription::FinitePoints(points) => points,
        SpectrumDescription::Variety { .. } => {
            return Ok(skip("the spectrum is positive-dimensional"))
        }
    };
    let ambient = model.tuple_module()?.vector_space_dim()?;
    let mut total = 0usize;
    let mut checks = Vec::new();
    for (pt, root_dim) in &points {
        let stages = stalk_homology(model, pt)?;
        let mut dims = Vec::with_capacity(stages.len());
        for h in &stages {
            dims.push(local_dim_at_point(h, pt, opts.max_k)?);
        }
        let positive_vanish = dims.iter().skip(1).all(|d| *d == 0);
        let entry = json!({
            "point": point_value(pt),
            "stalk_dims": dims,
            "root_dim": root_dim,
        });
        if !positive_vanish || dims.first() != Some(root_dim) {
            return Ok(fail(entry));
        }
        total += root_dim;
        checks.push(entry);
    }
    if total != ambient {
        return Ok(fail(json!({
            "reason": "root spaces do not fill the ambient space",
            "total_root_dim": total,
            "ambient_dim": ambient,
        })));
    }
    Ok(pass(json!({ "checks": checks, "ambient_dim": ambient })))
}

/// Thickening dimensions become a polynomial whose degree is the local
/// dimension of the support, with a positive integer normalized leading
/// coefficient.
fn suite_hs_polynomiality(file: &ProblemFile, opts: &RunOptions) -> Result<SuiteOutcome> {
    let model = &file.model;
    let m = model.tuple_module()?;
    let points = suite_points(file, opts)?;
    let Some(pt) = points.first() else {
        return Ok(skip("the spectrum holds no rational points to test at"));
    };
    let (_, comps) = components_with_support(model, &file.candidates)?;
    let mut local_dim = -1i64;
    for c in &comps {
        if c.contains_point(pt)? {
            local_dim = local_dim.max(c.dimension());
        }
    }
    let ring = m.ring().clone();
    let record = hs_polynomial_local(&m, &shifted_vars(&ring, pt), pt, opts.max_k)?;
    let leading_is_positive_integer = record
        .normalized_leading
        .to_i64()
        .map(|v| v >= 1)
        .unwrap_or(false);
    let entry = json!({
        "point": point_value(pt),
        "record": hs_value(&record),
        "local_dimension": local_dim,
    });
    if record.degree != local_dim || !leading_is_positive_integer {
        return Ok(fail(entry));
    }
    Ok(pass(entry))
}

/// Graded rank counts are eventually polynomial and agree with the
/// ideal-power quotients at every step.
fn suite_rank_polynomial(file: &ProblemFile, opts: &RunOptions) -> Result<SuiteOutcome> {
    let model = &file.model;
    let graded = match GradedModule::new(model.tuple_module()?) {
        Ok(g) => g,
        Err(Error::NotHomogeneous(msg)) => return Ok(skip(&msg)),
        Err(e) => return Err(e),
    };
    let m = model.tuple_module()?;
    let ring = m.ring().clone();
    let origin: Vec<Poly> = (0..ring.num_vars()).map(|i| Poly::var(&ring, i)).collect();
    let bound = opts.max_k.min(10);
    let mut values = Vec::with_capacity(bound + 1);
    for k in 0..=bound {
        let by_grading = graded.phi_kernel_dim(k);
        let by_powers = hs_function(&m, &origin, k)?;
        if by_grading != by_powers {
            return Ok(fail(json!({
                "k": k,
                "graded_count": by_grading,
                "ideal_power_count": by_powers,
            })));
        }
        values.push(by_grading);
    }
    let report = degree_report(&graded, opts.max_k)?;
    Ok(pass(json!({
        "values": values,
        "degree": report.degree,
    })))
}

/// The graded rank polynomial and the Hilbert–Samuel polynomial share their
/// leading term, and the rank degree dominates the local dimension.
fn suite_leading_terms(file: &ProblemFile, opts: &RunOptions) -> Result<SuiteOutcome> {
    let model = &file.model;
    let graded = match GradedModule::new(model.tuple_module()?) {
        Ok(g) => g,
        Err(Error::NotHomogeneous(msg)) => return Ok(skip(&msg)),
        Err(e) => return Err(e),
    };
    let report = degree_report(&graded, opts.max_k)?;
    let entry = degree_report_value(&report);
    if !report.leading_terms_match || !report.degree_dominates_dimension {
        return Ok(fail(entry));
    }
    Ok(pass(entry))
}

/// Weyl verdicts are internally consistent: off-spectrum points carry no
/// flags, on-spectrum points split between Weyl points and the Weyl
/// spectrum, and models with the single-valued extension property have no
/// Weyl points at all.
fn suite_weyl_consistency(file: &ProblemFile, opts: &RunOptions) -> Result<SuiteOutcome> {
    let model = &file.model;
    let cfg = opts.sample_config();
    let mut points = suite_points(file, opts)?;
    points.truncate(3);
    let far = vec![Scalar::from_int(7919); model.ring().num_vars()];
    points.push(far);
    let svep = svep_check(model)?;
    let mut checks = Vec::new();
    for pt in &points {
        let w = weyl_test(model, pt, &file.candidates, &cfg)?;
        let consistent = if !w.on_spectrum {
            !w.is_weyl_point && !w.in_weyl_spectrum && w.witnesses.is_empty()
        } else {
            let split = w.in_weyl_spectrum == !w.is_weyl_point;
            let isolated_ok = !w.isolated
                || (!w.is_weyl_point && w.witnesses.iter().all(|(_, l)| *l >= 1));
            let svep_ok = !svep || !w.is_weyl_point;
            split && isolated_ok && svep_ok
        };
        let entry = json!({
            "point": point_value(pt),
            "report": weyl_value(&w),
            "svep": svep,
        });
        if !consistent {
            return Ok(fail(entry));
        }
        checks.push(entry);
    }
    Ok(pass(json!({ "checks": checks })))
}

/// Nonzero components of a pushed cycle come from nonzero components of the
/// picture, and for models with the single-valued extension property every
/// component of the image is reached.
fn suite_weyl_pushforward(file: &ProblemFile, opts: &RunOptions) -> Result<SuiteOutcome> {
    let model = &file.model;
    let cfg = opts.sample_config();
    let pic = spectral_picture(model, &file.candidates, &cfg)?;
    if pic.terms.is_empty() {
        return Ok(skip("the spectrum is empty"));
    }
    let svep = svep_check(model)?;
    let mut checks = Vec::new();
    for f in suite_maps(model.ring()) {
        let report = match pushforward_cycle(&pic.cycle(), &f, &cfg) {
            Ok(r) => r,
            Err(Error::NotFinite(_))
            | Err(Error::IrrationalSpectrum(_))
            | Err(Error::IrrationalPreimage(_)) => continue,
            Err(other) => return Err(other),
        };
        // Inclusion: a nonzero image coefficient needs a nonzero source.
        for term in &report.cycle.terms {
            if term.coefficient == 0 {
                continue;
            }
            let fed = report.terms.iter().any(|t| {
                t.image == term.prime
                    && t.degree != 0
                    && pic
                        .terms
                        .iter()
                        .any(|p| p.prime == t.source && p.coefficient != 0)
            });
            if !fed {
                return Ok(fail(json!({
                    "map": f.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
                    "image": term.prime.to_string(),
                    "reason": "image component has no nonzero source",
                })));
            }
        }
        // With the extension property no cancellation can empty an image
        // component reached with positive degree.
        if svep {
            for t in &report.terms {
                if t.degree == 0 {
                    continue;
                }
                let pushed = report
                    .cycle
                    .terms
                    .iter()
                    .find(|c| c.prime == t.image)
                    .map(|c| c.coefficient)
                    .unwrap_or(0);
                if pushed == 0 {
                    return Ok(fail(json!({
                        "map": f.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
                        "image": t.image.to_string(),
                        "reason": "image component vanished despite the extension property",
                    })));
                }
            }
        }
        checks.push(json!({
            "map": f.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
            "pushed": cycle_value(&report.cycle),
        }));
    }
    if checks.is_empty() {
        return Ok(skip("no canonical map has finite fibers over the support"));
    }
    Ok(pass(json!({ "checks": checks, "svep": svep })))
}
