//! One pass/fail line per acceptance criterion.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use qflag_core::rootdata::Series;
use qflag_core::runner::{run, Check, Mode, Report, RunConfig, Suite};
use qflag_core::scalars::{Field, Scalar};
use serde_json::Value;

const POINTS: &str = "1/3,1/2,2/3";

fn report(series: Series, rank: usize, mode: Mode, q: &str, suites: &[Suite]) -> Result<Report, String> {
    let mut cfg = RunConfig::new(series, rank, 1);
    cfg.mode = mode;
    cfg.q_points = RunConfig::parse_q_list(q).map_err(|e| e.to_string())?;
    cfg.suites = suites.to_vec();
    run(&cfg).map_err(|e| format!("{series}{rank}: {e}"))
}

fn checks(r: &Report, suite: Suite) -> impl Iterator<Item = &Check> {
    r.suites.iter().filter(move |s| s.suite == suite).flat_map(|s| s.checks.iter())
}

fn require(ok: bool, what: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(what())
    }
}

fn all_pass<'a>(mut it: impl Iterator<Item = &'a Check>, what: &str) -> Result<usize, String> {
    let mut n = 0;
    it.try_for_each(|c| {
        n += 1;
        require(c.pass, || format!("{what}: {} [{}] failed", c.name, c.point))
    })?;
    require(n > 0, || format!("{what}: no checks ran"))?;
    Ok(n)
}

fn appendix_a() -> Result<String, String> {
    let mut total = 0;
    for (s, r) in [(Series::A, 1), (Series::A, 2), (Series::B, 2)] {
        let rep = report(s, r, Mode::Symbolic, "1/2", &[Suite::AppendixA])?;
        let exact = checks(&rep, Suite::AppendixA).filter(|c| c.point == "symbolic");
        total += all_pass(exact, &format!("{s}{r}"))?;
        let dual = checks(&rep, Suite::AppendixA).filter(|c| c.name.contains("from duality") || c.name.contains("R_{V**,V}"));
        require(dual.count() == 4, || format!("{s}{r}: duality checks missing"))?;
    }
    Ok(format!("{total} exact checks on A1, A2, B2"))
}

fn conjugation() -> Result<String, String> {
    let mut worst: f64 = 0.0;
    for r in [1, 2] {
        let rep = report(Series::A, r, Mode::Symbolic, POINTS, &[Suite::AppendixA, Suite::Calculus])?;
        let numeric: Vec<&Check> = checks(&rep, Suite::AppendixA)
            .chain(checks(&rep, Suite::Calculus))
            .filter(|c| c.name.contains("conjugation"))
            .collect();
        require(numeric.len() == 6, || format!("A{r}: expected 6 conjugation checks, got {}", numeric.len()))?;
        for c in numeric {
            let d = c.deviation.ok_or_else(|| format!("A{r}: {} has no deviation", c.name))?;
            require(c.pass && d <= 1e-9, || format!("A{r}: {} [{}] deviation {d:e}", c.name, c.point))?;
            worst = worst.max(d);
        }
    }
    Ok(format!("max deviation {worst:.1e}"))
}

fn tbraid_ok(rep: &Report) -> Result<(), String> {
    let c = checks(rep, Suite::AppendixB).filter(|c| c.name.starts_with("R^-1_{V*,V} I = c J")).collect::<Vec<_>>();
    require(!c.is_empty() && c.iter().all(|c| c.pass), || format!("{}: invariant pairing check failed", rep.case.name))
}

fn identities(rep: &Report) -> Result<usize, String> {
    let ids = checks(rep, Suite::AppendixB).filter(|c| c.name.starts_with("idT1") || c.name.starts_with("idT2"));
    all_pass(ids, &rep.case.name)
}

fn appendix_b() -> Result<String, String> {
    let mut n = 0;
    for r in [1, 2] {
        let rep = report(Series::A, r, Mode::Symbolic, "1/2", &[Suite::AppendixB])?;
        n += identities(&rep)?;
        tbraid_ok(&rep)?;
    }
    let rep = report(Series::B, 2, Mode::Sampled, POINTS, &[Suite::AppendixB])?;
    let points = identities(&rep)?;
    require(points == 6, || format!("B2: expected idT1 and idT2 at 3 points, got {points}"))?;
    tbraid_ok(&rep)?;
    Ok(format!("{} identity checks, c constant on all cases", n + points))
}

fn algebra() -> Result<String, String> {
    let mut n = 0;
    for r in [1, 2] {
        let rep = report(Series::A, r, Mode::Symbolic, "1/2", &[Suite::Algebra])?;
        let central = checks(&rep, Suite::Algebra).filter(|c| c.name.starts_with("[c,"));
        let proj = checks(&rep, Suite::Algebra).filter(|c| c.name.starts_with("sum_k z("));
        let star = checks(&rep, Suite::Algebra).filter(|c| c.name.starts_with("star maps"));
        n += all_pass(central, &format!("A{r} centrality"))?;
        n += all_pass(proj, &format!("A{r} projection"))?;
        n += all_pass(star, &format!("A{r} star closure"))?;
        let numeric = checks(&rep, Suite::Algebra).find(|c| c.deviation.is_some() && c.point == "q=1/2");
        require(numeric.is_some_and(|c| c.pass && c.deviation.unwrap() <= 1e-9), || format!("A{r}: star numeric at 1/2"))?;
        all_pass(checks(&rep, Suite::Algebra), &format!("A{r}"))?;
    }
    Ok(format!("{n} checks"))
}

fn calculus() -> Result<String, String> {
    let families = [
        "sum_k z^ik del z^kj = 0",
        "sum_k del z^ik z^kj = del z^ij",
        "sum_k z^ik delbar z^kj = delbar z^ij",
        "sum_k delbar z^ik z^kj = 0",
    ];
    for r in [1, 2] {
        let rep = report(Series::A, r, Mode::Symbolic, "1/2", &[Suite::Calculus])?;
        for f in families {
            let hit = checks(&rep, Suite::Calculus).filter(|c| c.name == f && c.point == "symbolic");
            all_pass(hit, &format!("A{r} {f}"))?;
        }
        all_pass(checks(&rep, Suite::Calculus), &format!("A{r}"))?;
    }
    Ok("four families exact on A1, A2".into())
}

fn phi_dims() -> Result<String, String> {
    let cases: [(Series, usize, Mode, &[usize]); 3] = [
        (Series::A, 1, Mode::Symbolic, &[1, 2, 1]),
        (Series::A, 2, Mode::Symbolic, &[1, 4, 6, 4, 1]),
        (Series::B, 2, Mode::Sampled, &[1, 6, 15, 20, 15, 6, 1]),
    ];
    for (s, r, mode, want) in cases {
        let q = if mode == Mode::Sampled { POINTS } else { "1/2" };
        let rep = report(s, r, mode, q, &[Suite::Kahler])?;
        let cert = rep.certificate.as_ref().ok_or_else(|| format!("{s}{r}: no certificate"))?;
        let got = &cert.dims[..want.len().min(cert.dims.len())];
        require(got == want && cert.dims[want.len()..].iter().all(|&d| d == 0), || format!("{s}{r}: dims {:?}", cert.dims))?;
    }
    Ok("A1, A2, B2 binomial".into())
}

fn kahler() -> Result<String, String> {
    let mut dets = 0;
    for r in [1, 2] {
        let rep = report(Series::A, r, Mode::Symbolic, "1/2", &[Suite::Kahler])?;
        let cert = rep.certificate.as_ref().ok_or_else(|| format!("A{r}: no certificate"))?;
        require(cert.lefschetz.len() == cert.big_m, || format!("A{r}: expected {} determinants", cert.big_m))?;
        for e in &cert.lefschetz {
            let poly = e.det_poly.as_deref().ok_or_else(|| format!("A{r} k={}: no symbolic det", e.k))?;
            require(poly != "0" && e.laurent == Some(true), || format!("A{r} k={}: det {poly}", e.k))?;
            for q in ["1/2", "1"] {
                let v = e.values.iter().find(|v| v.q == q).ok_or_else(|| format!("A{r} k={}: no value at {q}", e.k))?;
                require(v.nonzero, || format!("A{r} k={}: vanishes at {q}", e.k))?;
            }
            dets += 1;
        }
        require(cert.reality && cert.bidegree, || format!("A{r}: reality or bidegree failed"))?;
        let w = &cert.closedness_witness;
        require(w.id_t1 && w.id_t2 && w.del_delbar, || format!("A{r}: witness {w:?}"))?;
        require(cert.verdict == "pass", || format!("A{r}: verdict {}", cert.verdict))?;
        if r == 1 {
            let det: Scalar = cert.lefschetz[0].det_poly.as_deref().unwrap().parse().map_err(|e| format!("{e}"))?;
            // q^-1 = t^-2; the quotient must be a signed monomial
            let unit = det.mul(&Scalar::t_pow(2));
            let p = unit.as_laurent().ok_or("A1 det is not a polynomial")?;
            let c = p.leading();
            require(p.is_monomial() && (c.is_one() || c.neg().is_one()), || format!("A1 det {det} is not a unit times q^-1"))?;
        }
    }
    Ok(format!("{dets} determinants nonzero, A1 det a unit times q^-1"))
}

fn stripped(args: &[&str]) -> Result<Value, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_qflag")).args(args).output().map_err(|e| e.to_string())?;
    require(out.status.success(), || format!("{args:?} exited {:?}", out.status.code()))?;
    let mut v: Value = serde_json::from_slice(&out.stdout).map_err(|e| e.to_string())?;
    v.as_object_mut().ok_or("report is not an object")?.remove("timings");
    Ok(v)
}

fn determinism() -> Result<String, String> {
    let cases: [&[&str]; 3] = [
        &["--type", "A", "--rank", "1", "--node", "1", "--q", POINTS],
        &["--type", "A", "--rank", "2", "--node", "1", "--q", POINTS],
        &["--type", "B", "--rank", "2", "--node", "1", "--mode", "sampled", "--q", POINTS],
    ];
    for base in cases {
        let runs = ["1", "4", "4"]
            .iter()
            .map(|j| stripped(&[base, &["--jobs", j]].concat()))
            .collect::<Result<Vec<_>, _>>()?;
        let bytes: Vec<String> = runs.iter().map(|v| serde_json::to_string_pretty(v).unwrap()).collect();
        require(bytes.windows(2).all(|w| w[0] == w[1]), || format!("{base:?}: reports differ"))?;
    }
    Ok("identical across --jobs 1 and 4".into())
}

type Criterion = (&'static str, Duration, fn() -> Result<String, String>);

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("dual braidings (A1, A2, B2)", Duration::from_secs(120), appendix_a),
        ("conjugation identities at 1/3, 1/2, 2/3", Duration::from_secs(60), conjugation),
        ("idT1, idT2 and the invariant pairing", Duration::from_secs(600), appendix_b),
        ("algebra: centrality, projection, star", Duration::from_secs(180), algebra),
        ("calculus: del-delbar families", Duration::from_secs(300), calculus),
        ("Phi complex dimensions", Duration::from_secs(300), phi_dims),
        ("Kahler certificate", Duration::from_secs(180), kahler),
        ("determinism", Duration::from_secs(600), determinism),
    ];
    let mut failed = 0;
    for (i, (name, budget, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let res = f();
        let took = start.elapsed();
        let res = res.and_then(|msg| {
            require(took <= *budget, || format!("took {took:.1?}, budget {budget:?}")).map(|_| msg)
        });
        match res {
            Ok(msg) => println!("criterion {}: PASS  {name} ({msg}; {took:.2?})", i + 1),
            Err(msg) => {
                failed += 1;
                println!("criterion {}: FAIL  {name} ({msg}; {took:.2?})", i + 1)
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
