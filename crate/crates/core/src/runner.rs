//! Runs the verification suites for one flag manifold and collects a report whose
//! content depends only on the configuration.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;
use std::time::Instant;

use num_rational::BigRational;
use num_traits::{One, Signed};
use rayon::prelude::*;
use serde::Serialize;

use crate::braiding::{
    dual_braidings, solve_braiding, solve_braiding_dense, verify_conjugation, verify_intertwiner, yang_baxter,
    BraidFamily, DualityReport,
};
use crate::error::{Error, Result};
use crate::hkcalc::{
    identity_degree_bound, t_invertible, tbraid, verify_del_delbar, verify_idt1, verify_idt2,
    verify_projector_conjugation, verify_t_bimodule, CalcSlice, Calculus, IdentityReport, Side,
};
use crate::kahlercert::{
    build_phi_complex, classical_limit, compute_i1, evaluate_point, integrality_diagnostic, kappa_bidegree,
    kappa_coeffs, lefschetz_matrices, phi_kappa, point_value, star_reality_check, CertField, ClosednessWitness,
    KahlerCertificate, LefschetzEntry, PhiComplex,
};
use crate::quantalg::{
    dimension_table, verify_central, verify_projection_identities, verify_star_exact, verify_star_numeric, CheckLine,
    CoordAlgebra,
};
use crate::rootdata::{Capabilities, RootSystem, Series, Weight, CONVENTION};
use crate::scalars::{Field, Numeric, Radical, Sample, Scalar, Surd};
use crate::uqrep::{build_irrep, contravariant_form, specialize_surd, ModuleRep};

/// Degree of the coordinate algebra used by the algebra and calculus suites.
const ALGEBRA_DEGREE: usize = 4;
/// Largest `N` for which the dense solver is cross-checked.
const DENSE_LIMIT: usize = 4;
/// Largest `N` for which the rank of `T` is computed.
const T_RANK_LIMIT: usize = 5;
/// Largest `N` for which sampled runs also solve symbolically to bound degrees.
const BOUND_LIMIT: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Symbolic,
    Sampled,
}

impl FromStr for Mode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "symbolic" => Ok(Mode::Symbolic),
            "sampled" => Ok(Mode::Sampled),
            other => Err(Error::UsageError(format!("unknown mode {other:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Suite {
    #[serde(rename = "appendixA")]
    AppendixA,
    #[serde(rename = "appendixB")]
    AppendixB,
    #[serde(rename = "algebra")]
    Algebra,
    #[serde(rename = "calculus")]
    Calculus,
    #[serde(rename = "kahler")]
    Kahler,
}

impl Suite {
    pub const ALL: [Suite; 5] = [Suite::AppendixA, Suite::AppendixB, Suite::Algebra, Suite::Calculus, Suite::Kahler];

    pub fn name(self) -> &'static str {
        match self {
            Suite::AppendixA => "appendixA",
            Suite::AppendixB => "appendixB",
            Suite::Algebra => "algebra",
            Suite::Calculus => "calculus",
            Suite::Kahler => "kahler",
        }
    }

    /// Comma list of suite names; `all` selects every suite.
    pub fn parse_list(s: &str) -> Result<Vec<Suite>> {
        let mut out = Vec::new();
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            if part == "all" {
                out.extend(Suite::ALL);
                continue;
            }
            let suite = Suite::ALL
                .into_iter()
                .find(|x| x.name().eq_ignore_ascii_case(part))
                .ok_or_else(|| Error::UsageError(format!("unknown suite {part:?}")))?;
            out.push(suite);
        }
        out.sort();
        out.dedup();
        if out.is_empty() {
            return Err(Error::UsageError("no suites selected".into()));
        }
        Ok(out)
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub series: Series,
    pub rank: usize,
    pub node: usize,
    pub mode: Mode,
    pub q_points: Vec<BigRational>,
    pub tol: f64,
    pub suites: Vec<Suite>,
    pub exceptional: bool,
}

impl RunConfig {
    pub fn new(series: Series, rank: usize, node: usize) -> Self {
        Self {
            series,
            rank,
            node,
            mode: Mode::Symbolic,
            q_points: vec![BigRational::new(1.into(), 2.into())],
            tol: 1e-9,
            suites: Suite::ALL.to_vec(),
            exceptional: false,
        }
    }

    /// Comma list of rationals `p/r`.
    pub fn parse_q_list(s: &str) -> Result<Vec<BigRational>> {
        let mut out = Vec::new();
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let q: BigRational =
                part.parse().map_err(|_| Error::UsageError(format!("q must be a rational p/r, got {part:?}")))?;
            if !out.contains(&q) {
                out.push(q);
            }
        }
        Ok(out)
    }

    /// Checks the configuration and returns the root system.
    pub fn validate(&self) -> Result<RootSystem> {
        let caps = Capabilities { exceptional: self.exceptional };
        let rs = RootSystem::with_capabilities(self.series, self.rank, caps)?;
        if !rs.irreducible_nodes().contains(&self.node) {
            return Err(Error::UsageError(format!(
                "node {} of {} does not give an irreducible flag manifold (valid: {:?})",
                self.node,
                rs.name(),
                rs.irreducible_nodes()
            )));
        }
        if self.q_points.is_empty() {
            return Err(Error::UsageError("at least one q point is required".into()));
        }
        for q in &self.q_points {
            if !q.is_positive() || *q > BigRational::one() {
                return Err(Error::UsageError(format!("q = {q} is outside (0, 1]")));
            }
        }
        if !(self.tol.is_finite() && self.tol > 0.0) {
            return Err(Error::UsageError(format!("tolerance {} must be positive", self.tol)));
        }
        if self.suites.is_empty() {
            return Err(Error::UsageError("no suites selected".into()));
        }
        Ok(rs)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub point: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub deviation: Option<f64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub pass: bool,
    pub checks: Vec<Check>,
    pub facts: BTreeMap<String, String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CaseSummary {
    pub name: String,
    pub series: Series,
    pub rank: usize,
    pub node: usize,
    #[serde(rename = "N")]
    pub n: usize,
    #[serde(rename = "M")]
    pub big_m: usize,
    pub m: u32,
    pub weights: Vec<Weight>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ConfigEcho {
    pub mode: Mode,
    pub q_points: Vec<String>,
    pub tol: f64,
    pub suites: Vec<Suite>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub convention_stamp: String,
    pub case: CaseSummary,
    pub config: ConfigEcho,
    pub suites: Vec<SuiteReport>,
    pub certificate: Option<KahlerCertificate>,
    pub pass: bool,
    /// Wall-clock seconds; the only part of the report that varies between runs.
    pub timings: BTreeMap<String, f64>,
}

impl Report {
    pub fn failing_checks(&self) -> impl Iterator<Item = (&Suite, &Check)> {
        self.suites.iter().flat_map(|s| s.checks.iter().filter(|c| !c.pass).map(move |c| (&s.suite, c)))
    }
}

#[derive(Default)]
struct Sink {
    checks: BTreeMap<Suite, Vec<Check>>,
    facts: BTreeMap<Suite, BTreeMap<String, String>>,
}

impl Sink {
    fn push(&mut self, suite: Suite, name: impl Into<String>, point: &str, pass: bool, detail: Option<String>) {
        self.checks.entry(suite).or_default().push(Check {
            name: name.into(),
            point: point.to_string(),
            pass,
            detail,
            deviation: None,
        });
    }

    fn numeric(&mut self, suite: Suite, name: &str, point: &str, dev: f64, pass: bool) {
        self.checks.entry(suite).or_default().push(Check {
            name: name.to_string(),
            point: point.to_string(),
            pass,
            detail: None,
            deviation: Some(dev),
        });
    }

    fn lines(&mut self, suite: Suite, point: &str, lines: Vec<CheckLine>) {
        for l in lines {
            self.push(suite, l.name, point, l.pass, None);
        }
    }

    fn identity(&mut self, suite: Suite, name: &str, point: &str, r: &IdentityReport) {
        let detail = (!r.pass).then(|| r.failures.join("; "));
        self.push(suite, format!("{name} ({} index tuples)", r.checked), point, r.pass, detail);
    }

    fn fact(&mut self, suite: Suite, key: String, value: String) {
        self.facts.entry(suite).or_default().insert(key, value);
    }

    fn absorb(&mut self, other: Sink) {
        for (s, c) in other.checks {
            self.checks.entry(s).or_default().extend(c);
        }
        for (s, f) in other.facts {
            self.facts.entry(s).or_default().extend(f);
        }
    }
}

/// Maps verification errors to a failed check and passes other errors through.
fn soft<T>(r: Result<T>) -> Result<std::result::Result<T, String>> {
    match r {
        Ok(x) => Ok(Ok(x)),
        Err(e) if e.exit_code() == 1 => Ok(Err(e.to_string())),
        Err(e) => Err(e),
    }
}

fn label(q: &BigRational) -> String {
    format!("q={q}")
}

/// Every object the suites share at one evaluation point.
struct Case<F> {
    point: String,
    rs: RootSystem,
    s: usize,
    v: ModuleRep<F>,
    vd: ModuleRep<F>,
    norms: Vec<F>,
    fam: BraidFamily<F>,
    duality: DualityReport,
    calc: Calculus<F>,
    alg: Option<CoordAlgebra<F>>,
    idt: Option<(IdentityReport, IdentityReport)>,
    del_delbar: Option<Vec<CheckLine>>,
}

impl<F: Field + Numeric + CertField> Case<F> {
    fn new(point: String, rs: &RootSystem, s: usize, v: ModuleRep<F>) -> Result<Self> {
        let vd = v.dual();
        let norms = contravariant_form(&v)?;
        let vv = solve_braiding(rs, &v, &v)?;
        let (fam, duality) = dual_braidings(rs, &v, &vd, &vv)?;
        let calc = Calculus::new(rs, &v, s, &fam);
        Ok(Self {
            point,
            rs: rs.clone(),
            s,
            v,
            vd,
            norms,
            fam,
            duality,
            calc,
            alg: None,
            idt: None,
            del_delbar: None,
        })
    }

    fn ensure_alg(&mut self) -> Result<()> {
        if self.alg.is_none() {
            self.alg = Some(CoordAlgebra::new(&self.rs, &self.v, &self.fam, ALGEBRA_DEGREE)?);
        }
        Ok(())
    }

    fn idt(&mut self) -> &(IdentityReport, IdentityReport) {
        if self.idt.is_none() {
            let r1 = verify_idt1(&self.calc.t);
            let r2 = verify_idt2(&self.calc.t, &self.v, &self.calc.ex);
            self.idt = Some((r1, r2));
        }
        self.idt.as_ref().expect("just computed")
    }

    /// Runs the slice checks; the del-delbar families are kept for the witness.
    fn slices(&mut self) -> Result<Vec<CheckLine>> {
        self.ensure_alg()?;
        let alg = self.alg.as_ref().expect("built above");
        let mut holo = CalcSlice::new(alg, &self.fam, &self.calc, Side::Holomorphic);
        let mut anti = CalcSlice::new(alg, &self.fam, &self.calc, Side::Antiholomorphic);
        let mut out = vec![
            CheckLine { name: "right action well defined (del)".into(), pass: holo.right_action_well_defined()? },
            CheckLine { name: "right action well defined (delbar)".into(), pass: anti.right_action_well_defined()? },
        ];
        let dd = verify_del_delbar(alg, &mut holo, &mut anti)?;
        out.extend(dd.clone());
        out.extend(verify_t_bimodule(alg, &self.calc, &mut holo, &mut anti)?);
        self.del_delbar = Some(dd);
        Ok(out)
    }

    fn witness(&mut self) -> Result<ClosednessWitness> {
        let (id_t1, id_t2) = {
            let (a, b) = self.idt();
            (a.pass, b.pass)
        };
        if self.del_delbar.is_none() {
            self.ensure_alg()?;
            let alg = self.alg.as_ref().expect("built above");
            let mut holo = CalcSlice::new(alg, &self.fam, &self.calc, Side::Holomorphic);
            let mut anti = CalcSlice::new(alg, &self.fam, &self.calc, Side::Antiholomorphic);
            self.del_delbar = Some(verify_del_delbar(alg, &mut holo, &mut anti)?);
        }
        let del_delbar = self.del_delbar.as_ref().expect("computed").iter().all(|l| l.pass);
        Ok(ClosednessWitness { id_t1, id_t2, del_delbar })
    }

    fn appendix_a(&self, samples: &[Sample], tol: f64, sink: &mut Sink) -> Result<()> {
        let (p, su) = (self.point.as_str(), Suite::AppendixA);
        let vv = &self.fam.vv;
        let rel = self.v.verify_relations(&self.rs);
        sink.push(su, "U_q(g) relations on V", p, rel.is_ok(), rel.err().map(|e| e.to_string()));
        let it = soft(verify_intertwiner(&self.v, &self.v, vv))?;
        sink.push(su, "R_VV intertwines the action", p, it.is_ok(), it.err());
        sink.push(su, "Yang-Baxter equation for R_VV", p, yang_baxter(vv), None);
        let hw = self.v.hw;
        let norm = vv.get(hw, hw, hw, hw) == self.v.tpow(self.calc.ex.omega_sq);
        sink.push(su, "R_VV on highest weight vectors is q^(w,w)", p, norm, None);
        if self.v.dim() <= DENSE_LIMIT {
            let dense = solve_braiding_dense(&self.rs, &self.v, &self.v)?;
            sink.push(su, "weight-block solve agrees with dense solve", p, dense == *vv, None);
        }
        let d = &self.duality;
        for (name, ok) in [
            ("R_{V*,V} from duality equals direct solve", d.dual_first),
            ("R_{V,V*} from duality equals direct solve", d.dual_second),
            ("R_{V*,V*} from duality equals direct solve", d.dual_both),
            ("R_{V**,V} equals rescaled R_VV", d.double_dual),
            ("inverse braidings", d.inverses),
        ] {
            sink.push(su, name, p, ok, None);
        }
        for sample in samples {
            let r = verify_conjugation(&self.rs, &self.v, &self.norms, &self.fam, sample, tol)?;
            sink.numeric(su, "braiding conjugation identities", &label(&sample.q0), r.max_deviation, r.pass);
        }
        Ok(())
    }

    fn appendix_b(&mut self, sink: &mut Sink) -> Result<()> {
        let su = Suite::AppendixB;
        let p = self.point.clone();
        sink.push(su, "PQ commutes with the braiding", &p, self.calc.proj.commute_with_braiding(&self.fam), None);
        let two = self.calc.proj.minimal_polynomial_quadratic();
        sink.fact(su, format!("{p}: R_VV eigenvalues"), if two { "two" } else { "more than two" }.into());
        let (r1, r2) = self.idt().clone();
        sink.identity(su, "idT1", &p, &r1);
        sink.identity(su, "idT2", &p, &r2);
        if self.v.dim() <= T_RANK_LIMIT {
            sink.push(su, "T is invertible", &p, t_invertible(&self.calc.t)?, None);
        }
        let tb = tbraid(&self.v, &self.vd, &self.fam, &self.calc.ex);
        sink.push(su, "R^-1_{V*,V} I = c J with c a nonzero constant", &p, tb.pass(), (!tb.pass()).then(|| format!("{tb:?}")));
        if let Some(c) = &tb.constant {
            sink.fact(su, format!("{p}: c"), c.clone());
        }
        Ok(())
    }

    fn algebra(&mut self, samples: &[Sample], tol: f64, sink: &mut Sink) -> Result<()> {
        let su = Suite::Algebra;
        self.ensure_alg()?;
        let alg = self.alg.as_ref().expect("built above");
        let p = self.point.as_str();
        for row in dimension_table(&self.rs, &self.v, alg) {
            let detail = (!row.pass).then(|| format!("{row:?}"));
            sink.push(su, format!("graded dimensions in degree {}", row.degree), p, row.pass, detail);
        }
        sink.lines(su, p, verify_central(alg)?);
        sink.lines(su, p, verify_projection_identities(alg)?);
        sink.lines(su, p, verify_star_exact(alg, &self.norms)?);
        for sample in samples {
            let (dev, ok) = verify_star_numeric(alg, &self.norms, sample, tol)?;
            sink.numeric(su, "star maps the relations to themselves", &label(&sample.q0), dev, ok);
        }
        Ok(())
    }

    fn calculus(&mut self, samples: &[Sample], tol: f64, sink: &mut Sink) -> Result<()> {
        let su = Suite::Calculus;
        let lines = self.slices()?;
        sink.lines(su, &self.point, lines);
        for sample in samples {
            let (dev, ok) = verify_projector_conjugation(&self.v, &self.norms, &self.calc.proj, sample, tol)?;
            sink.numeric(su, "projector conjugation identities", &label(&sample.q0), dev, ok);
        }
        Ok(())
    }

    fn kahler(&self) -> Result<std::result::Result<KahlerPiece<F>, String>> {
        let i1 = match soft(compute_i1(&self.rs, &self.v, self.s))? {
            Ok(x) => x,
            Err(e) => return Ok(Err(e)),
        };
        let phi = match soft(build_phi_complex(&self.v, &self.calc, &i1))? {
            Ok(x) => x,
            Err(e) => return Ok(Err(e)),
        };
        KahlerPiece::new(phi, &self.v, &self.calc.ex.two_rho).map(Ok)
    }
}

/// Everything the certificate needs from the complex at one point.
struct KahlerPiece<F> {
    i1: Vec<usize>,
    dims: Vec<usize>,
    escalated: bool,
    bidegree: bool,
    reality: bool,
    x_squares: Vec<usize>,
    anticommutative: bool,
    graded: bool,
    real_relations: bool,
    power_consistency: bool,
    sizes: Vec<usize>,
    dets: Vec<F>,
    integrality: Option<bool>,
}

impl<F: Field + CertField> KahlerPiece<F> {
    fn new(phi: PhiComplex<F>, v: &ModuleRep<F>, two_rho: &[i64]) -> Result<Self> {
        let kappa = phi_kappa(&phi, v, two_rho)?;
        let (mats, power_consistency) = lefschetz_matrices(&phi, &kappa)?;
        let sizes = mats.iter().map(|m| m.rows()).collect();
        let dets = mats.par_iter().map(|m| m.determinant()).collect::<Result<Vec<_>>>()?;
        let (graded, real_relations) = phi.relations_graded_and_real()?;
        Ok(Self {
            bidegree: kappa_bidegree(&phi, &kappa),
            reality: star_reality_check(&phi, &kappa)?,
            x_squares: phi.nonzero_x_squares()?.into_iter().map(|a| phi.i1[a] + 1).collect(),
            anticommutative: phi.anticommutative()?,
            integrality: integrality_diagnostic(&phi),
            graded,
            real_relations,
            power_consistency,
            sizes,
            dets,
            i1: phi.i1.clone(),
            dims: phi.dims.clone(),
            escalated: phi.escalated,
        })
    }

    fn record(&self, sink: &mut Sink, point: &str) {
        let su = Suite::Kahler;
        sink.push(su, "dim of degree k is binom(2M, k)", point, true, Some(format!("{:?}", self.dims)));
        sink.push(su, "relations are bidegree homogeneous", point, self.graded, None);
        sink.push(su, "relations are star stable", point, self.real_relations, None);
        sink.push(su, "kappa has bidegree (1,1)", point, self.bidegree, None);
        sink.push(su, "kappa is real", point, self.reality, None);
        sink.push(su, "powers of L agree with iterated wedges", point, self.power_consistency, None);
    }
}

fn cert_points(q_points: &[BigRational]) -> Vec<BigRational> {
    let mut pts = q_points.to_vec();
    if !pts.iter().any(|q| q.is_one()) {
        pts.push(BigRational::one());
    }
    pts
}

fn surd_case(rs: &RootSystem, s: usize, sym: &ModuleRep<Scalar>, q: &BigRational) -> Result<(Case<Surd>, Sample)> {
    let sample = Sample::new(q.clone(), rs.m as u32)?;
    let ext = Arc::new(Radical::for_sample(&sample));
    let v = specialize_surd(sym, &ext)?;
    Ok((Case::new(label(q), rs, s, v)?, sample))
}

struct Assembled {
    sink: Sink,
    certificate: Option<KahlerCertificate>,
    timings: BTreeMap<String, f64>,
}

pub fn run(config: &RunConfig) -> Result<Report> {
    let start = Instant::now();
    let rs = config.validate()?;
    let s = config.node;
    let sym = build_irrep(&rs, s)?;
    let mut out = match config.mode {
        Mode::Symbolic => run_symbolic(config, &rs, &sym)?,
        Mode::Sampled => run_sampled(config, &rs, &sym)?,
    };
    out.timings.insert("total".into(), start.elapsed().as_secs_f64());

    let suites: Vec<SuiteReport> = config
        .suites
        .iter()
        .map(|&su| {
            let checks = out.sink.checks.remove(&su).unwrap_or_default();
            let facts = out.sink.facts.remove(&su).unwrap_or_default();
            let mut pass = checks.iter().all(|c| c.pass) && !checks.is_empty();
            if su == Suite::Kahler {
                pass &= out.certificate.as_ref().is_some_and(|c| c.all_checks());
            }
            SuiteReport { suite: su, pass, checks, facts }
        })
        .collect();
    let pass = suites.iter().all(|s| s.pass);
    Ok(Report {
        convention_stamp: CONVENTION.to_string(),
        case: CaseSummary {
            name: format!("{} node {}", rs.name(), s),
            series: rs.series,
            rank: rs.rank,
            node: s,
            n: sym.dim(),
            big_m: rs.flag_dimension(s),
            m: rs.m as u32,
            weights: sym.weights.clone(),
        },
        config: ConfigEcho {
            mode: config.mode,
            q_points: config.q_points.iter().map(|q| q.to_string()).collect(),
            tol: config.tol,
            suites: config.suites.clone(),
        },
        suites,
        certificate: out.certificate,
        pass,
        timings: out.timings,
    })
}

fn timed<T>(timings: &mut BTreeMap<String, f64>, key: &str, f: impl FnOnce() -> Result<T>) -> Result<T> {
    let t0 = Instant::now();
    let r = f();
    *timings.entry(key.to_string()).or_default() += t0.elapsed().as_secs_f64();
    r
}

fn run_symbolic(config: &RunConfig, rs: &RootSystem, sym: &ModuleRep<Scalar>) -> Result<Assembled> {
    let s = config.node;
    let samples = config.q_points.iter().map(|q| Sample::new(q.clone(), rs.m as u32)).collect::<Result<Vec<_>>>()?;
    let mut timings = BTreeMap::new();
    let mut sink = Sink::default();
    let mut case = timed(&mut timings, "setup", || Case::new("symbolic".into(), rs, s, sym.clone()))?;
    let tol = config.tol;
    let mut certificate = None;
    for &su in &config.suites {
        match su {
            Suite::AppendixA => timed(&mut timings, su.name(), || case.appendix_a(&samples, tol, &mut sink))?,
            Suite::AppendixB => timed(&mut timings, su.name(), || case.appendix_b(&mut sink))?,
            Suite::Algebra => timed(&mut timings, su.name(), || case.algebra(&samples, tol, &mut sink))?,
            Suite::Calculus => timed(&mut timings, su.name(), || case.calculus(&samples, tol, &mut sink))?,
            Suite::Kahler => {
                certificate = timed(&mut timings, su.name(), || {
                    let piece = match case.kahler()? {
                        Ok(p) => p,
                        Err(e) => {
                            sink.push(su, "dim of degree k is binom(2M, k)", "symbolic", false, Some(e));
                            return Ok(None);
                        }
                    };
                    piece.record(&mut sink, "symbolic");
                    let pts = cert_points(&config.q_points);
                    let lefschetz = piece
                        .dets
                        .iter()
                        .enumerate()
                        .map(|(k, det)| {
                            let values =
                                pts.iter().map(|q| evaluate_point(det, q, rs.m as u32)).collect::<Result<Vec<_>>>()?;
                            Ok(LefschetzEntry {
                                k,
                                size: piece.sizes[k],
                                det_poly: Some(det.to_string()),
                                laurent: Some(det.is_laurent()),
                                values,
                            })
                        })
                        .collect::<Result<Vec<_>>>()?;
                    let (one, _) = surd_case(rs, s, sym, &BigRational::one())?;
                    let classical = classical_limit(&one.kahler_phi(), piece.i1.len())?;
                    let witness = case.witness()?;
                    let cert = certificate_from(rs, s, sym, &piece, lefschetz, witness, classical);
                    certificate_checks(&mut sink, &cert);
                    Ok(Some(cert))
                })?;
            }
        }
    }
    Ok(Assembled { sink, certificate, timings })
}

impl Case<Surd> {
    fn kahler_phi(&self) -> Result<PhiComplex<Surd>> {
        let i1 = compute_i1(&self.rs, &self.v, self.s)?;
        build_phi_complex(&self.v, &self.calc, &i1)
    }
}

struct PointResult {
    sink: Sink,
    piece: Option<std::result::Result<KahlerPiece<Surd>, String>>,
    witness: Option<ClosednessWitness>,
    seconds: f64,
}

fn run_point(config: &RunConfig, rs: &RootSystem, sym: &ModuleRep<Scalar>, q: &BigRational, requested: bool) -> Result<PointResult> {
    let t0 = Instant::now();
    let (mut case, sample) = surd_case(rs, config.node, sym, q)?;
    let samples = [sample];
    let mut sink = Sink::default();
    let kahler = config.suites.contains(&Suite::Kahler);
    if requested {
        for &su in &config.suites {
            match su {
                Suite::AppendixA => case.appendix_a(&samples, config.tol, &mut sink)?,
                Suite::AppendixB => case.appendix_b(&mut sink)?,
                Suite::Algebra => case.algebra(&samples, config.tol, &mut sink)?,
                Suite::Calculus => case.calculus(&samples, config.tol, &mut sink)?,
                Suite::Kahler => {}
            }
        }
    }
    let piece = if kahler { Some(case.kahler()?) } else { None };
    let witness = if kahler && requested { Some(case.witness()?) } else { None };
    Ok(PointResult { sink, piece, witness, seconds: t0.elapsed().as_secs_f64() })
}

fn run_sampled(config: &RunConfig, rs: &RootSystem, sym: &ModuleRep<Scalar>) -> Result<Assembled> {
    let kahler = config.suites.contains(&Suite::Kahler);
    let pts = if kahler { cert_points(&config.q_points) } else { config.q_points.clone() };
    let results = pts
        .par_iter()
        .map(|q| run_point(config, rs, sym, q, config.q_points.contains(q)))
        .collect::<Result<Vec<_>>>()?;

    let mut sink = Sink::default();
    let mut timings = BTreeMap::new();
    if config.suites.contains(&Suite::AppendixB) {
        let su = Suite::AppendixB;
        let samples = config.q_points.len();
        sink.fact(su, "samples".into(), samples.to_string());
        let bound = if sym.dim() <= BOUND_LIMIT {
            let vv = solve_braiding(rs, sym, sym)?;
            let (fam, _) = dual_braidings(rs, sym, &sym.dual(), &vv)?;
            let ex = crate::hkcalc::Exponents::new(rs, sym, config.node);
            identity_degree_bound(&fam, &ex)
        } else {
            None
        };
        match bound {
            Some(b) => {
                sink.fact(su, "degree_bound".into(), b.to_string());
                let grade = if samples as i64 > b { "proof" } else { "probabilistic" };
                sink.fact(su, "identity_testing".into(), grade.into());
            }
            None => {
                sink.fact(su, "degree_bound".into(), "unavailable".into());
                sink.fact(su, "identity_testing".into(), "probabilistic".into());
            }
        }
    }
    let mut pieces = Vec::new();
    let mut witness = ClosednessWitness { id_t1: true, id_t2: true, del_delbar: true };
    for (q, r) in pts.iter().zip(results) {
        timings.insert(label(q), r.seconds);
        sink.absorb(r.sink);
        if let Some(w) = r.witness {
            witness.id_t1 &= w.id_t1;
            witness.id_t2 &= w.id_t2;
            witness.del_delbar &= w.del_delbar;
        }
        if let Some(p) = r.piece {
            pieces.push((q.clone(), p));
        }
    }
    let mut certificate = None;
    if kahler {
        let su = Suite::Kahler;
        let mut ok_pieces = Vec::new();
        for (q, p) in pieces {
            match p {
                Ok(piece) => {
                    piece.record(&mut sink, &label(&q));
                    ok_pieces.push((q, piece));
                }
                Err(e) => sink.push(su, "dim of degree k is binom(2M, k)", &label(&q), false, Some(e)),
            }
        }
        if ok_pieces.len() == pts.len() {
            let first = &ok_pieces[0].1;
            let same = ok_pieces.iter().all(|(_, p)| p.dims == first.dims && p.sizes == first.sizes);
            sink.push(su, "complex has the same shape at every point", "all", same, None);
            let lefschetz = (0..first.dets.len())
                .map(|k| LefschetzEntry {
                    k,
                    size: first.sizes[k],
                    det_poly: None,
                    laurent: None,
                    values: ok_pieces.iter().map(|(q, p)| point_value(&p.dets[k], q)).collect(),
                })
                .collect();
            let one = &ok_pieces.iter().find(|(q, _)| q.is_one()).expect("1 is always a point").1;
            let classical = crate::kahlercert::ClassicalLimit {
                dims: one.dims.clone(),
                binomial: true,
                anticommutative: one.anticommutative,
                x_squares_vanish: one.x_squares.is_empty(),
            };
            let requested: Vec<&KahlerPiece<Surd>> =
                ok_pieces.iter().filter(|(q, _)| config.q_points.contains(q)).map(|(_, p)| p).collect();
            let mut cert = certificate_from(rs, config.node, sym, first, lefschetz, witness, classical);
            cert.reality = requested.iter().all(|p| p.reality);
            cert.bidegree = requested.iter().all(|p| p.bidegree);
            let mut nonzero: Vec<usize> = requested.iter().flat_map(|p| p.x_squares.iter().copied()).collect();
            nonzero.sort();
            nonzero.dedup();
            cert.x_squares_nonzero = nonzero;
            cert.power_consistency = requested.iter().all(|p| p.power_consistency);
            certificate_checks(&mut sink, &cert);
            certificate = Some(cert);
        }
    }
    Ok(Assembled { sink, certificate, timings })
}

fn certificate_checks(sink: &mut Sink, cert: &KahlerCertificate) {
    let su = Suite::Kahler;
    for e in &cert.lefschetz {
        let name = format!("det of L^{} on degree {} is nonzero", cert.big_m - e.k, e.k);
        let detail = e.det_poly.clone();
        sink.push(su, name, "all", e.pass(), detail);
    }
    let w = &cert.closedness_witness;
    sink.push(su, "closedness witness (idT1, idT2, del-delbar)", "all", w.pass(), None);
    let c = &cert.classical_limit;
    let detail = format!("dims {:?}", c.dims);
    sink.push(su, "q = 1 complex is an exterior algebra", "q=1", c.pass(), Some(detail));
}

fn certificate_from<F: Field + CertField>(
    rs: &RootSystem,
    s: usize,
    sym: &ModuleRep<Scalar>,
    piece: &KahlerPiece<F>,
    lefschetz: Vec<LefschetzEntry>,
    witness: ClosednessWitness,
    classical: crate::kahlercert::ClassicalLimit,
) -> KahlerCertificate {
    let two_rho: Vec<i64> = sym.weights.iter().map(|w| rs.pair_t(&rs.two_rho(), w)).collect();
    let verdict = if KahlerCertificate::verdict_pass(&lefschetz) { "pass" } else { "fail" };
    KahlerCertificate {
        case: format!("{} node {}", rs.name(), s),
        m: rs.m as u32,
        n: sym.dim(),
        big_m: piece.i1.len(),
        i1: piece.i1.iter().map(|i| i + 1).collect(),
        dims: piece.dims.clone(),
        escalated: piece.escalated,
        kappa_coeffs: kappa_coeffs(&piece.i1, &two_rho),
        lefschetz,
        power_consistency: piece.power_consistency,
        reality: piece.reality,
        bidegree: piece.bidegree,
        x_squares_nonzero: piece.x_squares.clone(),
        closedness_witness: witness,
        classical_limit: classical,
        integrality_diagnostic: piece.integrality,
        verdict: verdict.into(),
        convention_stamp: CONVENTION.to_string(),
    }
}
