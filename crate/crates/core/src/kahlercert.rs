//! The quotient complex on the generators `x_i`, `y_i`, the class of the Kähler form
//! and the Lefschetz determinants.

use std::fmt;
use std::sync::Arc;

use num_rational::BigRational;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::hkcalc::Calculus;
use crate::quantalg::QuadraticAlgebra;
use crate::rootdata::{classical_flag_dimension, RootSystem};
use crate::scalars::{add_entry, axpy, Echelon, Field, Matrix, Numeric, Radical, Sample, Scalar, SparseVec, Surd};
use crate::uqrep::{contravariant_form, ModuleRep};

/// Indices `i` with `(w_s, w_s - a_s - wt v_i) = 0`, in basis order.
pub fn compute_i1<F: Field>(rs: &RootSystem, v: &ModuleRep<F>, s: usize) -> Result<Vec<usize>> {
    let w = rs.fundamental(s);
    let a = rs.simple_root(s - 1);
    let i1: Vec<usize> = (0..v.dim())
        .filter(|&i| {
            let mu: Vec<i64> = (0..rs.rank).map(|k| w[k] - a[k] - v.weights[i][k]).collect();
            rs.pair(&w, &mu) == 0.into()
        })
        .collect();
    let m = i1.len();
    if i1.contains(&v.hw) {
        return Err(Error::InternalConsistency("highest weight index lies in I_(1)".into()));
    }
    let roots = rs.flag_dimension(s);
    let table = classical_flag_dimension(rs.series, rs.rank, s);
    if m != roots || table.is_some_and(|d| d != m) {
        return Err(Error::DimensionMismatch(format!(
            "#I_(1) = {m}, positive roots with a_s: {roots}, table: {table:?}"
        )));
    }
    Ok(i1)
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1usize, |acc, j| acc * (n - j) / (j + 1))
}

/// `Phi(Omega)` as the quadratic algebra on `x_a` (generator `a`) and `y_a`
/// (generator `M + a`), `a` running over `I_(1)`.
#[derive(Clone, Debug)]
pub struct PhiComplex<F> {
    pub i1: Vec<usize>,
    pub m: usize,
    pub alg: QuadraticAlgebra<F>,
    pub dims: Vec<usize>,
    /// Whether the relations had to be closed under `*` and bidegree to pass the gate.
    pub escalated: bool,
    /// `g^* = star_scale[g] g'` with `g'` the partner generator; the weight basis is
    /// orthogonal but not orthonormal, so `x_a^* = (n_N / n_a) y_a`.
    pub star_scale: Vec<F>,
}

/// Quadratic relations obtained by differentiating the degree-one relation families,
/// pushing to `Phi` and eliminating the second-derivative classes.
fn prolonged_relations<F: Field>(v: &ModuleRep<F>, calc: &Calculus<F>, i1: &[usize]) -> Result<Vec<SparseVec<F>>> {
    let n = v.dim();
    let mm = i1.len();
    let g = 2 * mm;
    let hw = v.hw;
    let mut pos = vec![None; n];
    for (a, &i) in i1.iter().enumerate() {
        pos[i] = Some(a);
    }
    // classes of del z^{ij} and delbar z^{ij}
    let del = |i: usize, j: usize| if j == hw { pos[i] } else { None };
    let delbar = |i: usize, j: usize| if i == hw { pos[j].map(|a| mm + a) } else { None };
    let both = |i: usize, j: usize| del(i, j).into_iter().chain(delbar(i, j)).collect::<Vec<_>>();
    let eps = |i: usize, j: usize| i == hw && j == hw;
    // [delbar del z^{ij}]; [del delbar z^{ij}] is its negative
    let u = |i: usize, j: usize| g * g + i * n + j;
    let wedge = |row: &mut SparseVec<F>, xs: &[usize], ys: &[usize], c: &F| {
        for &x in xs {
            for &y in ys {
                add_entry(row, x * g + y, c.clone());
            }
        }
    };
    let one = F::one();
    let mone = one.neg();
    let opt = |x: Option<usize>| x.into_iter().collect::<Vec<_>>();

    let mut ech = Echelon::new();
    let mut push = |row: SparseVec<F>| -> Result<()> {
        if !row.is_empty() {
            ech.insert(row)?;
        }
        Ok(())
    };
    for i in 0..n {
        for j in 0..n {
            let (mut r1, mut r2, mut r3, mut r4) = (SparseVec::new(), SparseVec::new(), SparseVec::new(), SparseVec::new());
            add_entry(&mut r2, u(i, j), mone.clone());
            add_entry(&mut r3, u(i, j), one.clone());
            for k in 0..n {
                // d(sum z^{ik} del z^{kj})
                wedge(&mut r1, &both(i, k), &opt(del(k, j)), &one);
                if eps(i, k) {
                    add_entry(&mut r1, u(k, j), one.clone());
                }
                // d(sum del z^{ik} z^{kj} - del z^{ij})
                if eps(k, j) {
                    add_entry(&mut r2, u(i, k), one.clone());
                }
                wedge(&mut r2, &opt(del(i, k)), &both(k, j), &mone);
                // d(sum z^{ik} delbar z^{kj} - delbar z^{ij})
                wedge(&mut r3, &both(i, k), &opt(delbar(k, j)), &one);
                if eps(i, k) {
                    add_entry(&mut r3, u(k, j), mone.clone());
                }
                // d(sum delbar z^{ik} z^{kj})
                if eps(k, j) {
                    add_entry(&mut r4, u(i, k), mone.clone());
                }
                wedge(&mut r4, &opt(delbar(i, k)), &both(k, j), &mone);
            }
            for r in [r1, r2, r3, r4] {
                push(r)?;
            }
        }
    }
    let qa = v.tpow(calc.ex.alpha_sq);
    let qa_inv = v.tpow(-calc.ex.alpha_sq);
    for (upper, terms) in calc.t.by_upper().into_iter().enumerate() {
        let (i, j, k, l) = (upper / (n * n * n), (upper / (n * n)) % n, (upper / n) % n, upper % n);
        let (mut h, mut a) = (SparseVec::new(), SparseVec::new());
        if eps(k, l) {
            add_entry(&mut h, u(i, j), one.clone());
            add_entry(&mut a, u(i, j), mone.clone());
        }
        wedge(&mut h, &opt(del(i, j)), &both(k, l), &mone);
        wedge(&mut a, &opt(delbar(i, j)), &both(k, l), &mone);
        for (lower, x) in terms {
            let (pa, pb, pc, pd) = (lower / (n * n * n), (lower / (n * n)) % n, (lower / n) % n, lower % n);
            let ch = qa.mul(&x).neg();
            let ca = qa_inv.mul(&x).neg();
            wedge(&mut h, &both(pa, pb), &opt(del(pc, pd)), &ch);
            wedge(&mut a, &both(pa, pb), &opt(delbar(pc, pd)), &ca);
            if eps(pa, pb) {
                add_entry(&mut h, u(pc, pd), ch);
                add_entry(&mut a, u(pc, pd), ca.neg());
            }
        }
        push(h)?;
        push(a)?;
    }
    // pivots are the largest column, so rows pivoting below the auxiliary block are
    // free of auxiliary classes and span every such combination
    Ok(ech.rows().filter(|(p, _)| *p < g * g).map(|(_, r)| r.clone()).collect())
}

fn star_gen(m: usize, a: usize) -> usize {
    (a + m) % (2 * m)
}

fn star_scales<F: Field>(v: &ModuleRep<F>, i1: &[usize]) -> Result<Vec<F>> {
    let norms = contravariant_form(v)?;
    let top = &norms[v.hw];
    let xs: Vec<F> = i1.iter().map(|&i| top.div(&norms[i])).collect::<Result<_>>()?;
    let ys: Vec<F> = xs.iter().map(|x| x.inv()).collect::<Result<_>>()?;
    Ok(xs.into_iter().chain(ys).collect())
}

fn bidegree(m: usize, w: &[u16]) -> (usize, usize) {
    let x = w.iter().filter(|&&a| (a as usize) < m).count();
    (x, w.len() - x)
}

/// Splits quadratic rows into bidegree components and adds their `*`-images.
fn close_relations<F: Field>(m: usize, rows: &[SparseVec<F>], scale: &[F]) -> Vec<SparseVec<F>> {
    let g = 2 * m;
    let mut out = Vec::new();
    for r in rows {
        let mut parts: std::collections::BTreeMap<(usize, usize), SparseVec<F>> = Default::default();
        for (&ab, c) in r {
            let w = [(ab / g) as u16, (ab % g) as u16];
            add_entry(parts.entry(bidegree(m, &w)).or_default(), ab, c.clone());
        }
        for p in parts.into_values() {
            let mut s = SparseVec::new();
            for (&ab, c) in &p {
                let (a, b) = (ab / g, ab % g);
                let c = c.conj().neg().mul(&scale[a]).mul(&scale[b]);
                add_entry(&mut s, star_gen(m, b) * g + star_gen(m, a), c);
            }
            out.push(p);
            out.push(s);
        }
    }
    out
}

fn build_alg<F: Field>(m: usize, rows: Vec<SparseVec<F>>) -> Result<(QuadraticAlgebra<F>, Vec<usize>)> {
    let mut alg = QuadraticAlgebra::new(2 * m, rows);
    alg.build_to(2 * m + 1)?;
    let dims = (0..=2 * m + 1).map(|k| alg.dim(k)).collect();
    Ok((alg, dims))
}

fn gate(m: usize, dims: &[usize]) -> bool {
    dims.iter().enumerate().all(|(k, &d)| d == binomial(2 * m, k))
}

/// Builds `Phi(Omega)` and enforces `dim Phi(Omega^k) = binom(2M, k)`.
pub fn build_phi_complex<F: Field>(v: &ModuleRep<F>, calc: &Calculus<F>, i1: &[usize]) -> Result<PhiComplex<F>> {
    let m = i1.len();
    let star_scale = star_scales(v, i1)?;
    let rows = prolonged_relations(v, calc, i1)?;
    let (alg, dims) = build_alg(m, rows.clone())?;
    if gate(m, &dims) {
        return Ok(PhiComplex { i1: i1.to_vec(), m, alg, dims, escalated: false, star_scale });
    }
    let (alg, dims2) = build_alg(m, close_relations(m, &rows, &star_scale))?;
    if gate(m, &dims2) {
        return Ok(PhiComplex { i1: i1.to_vec(), m, alg, dims: dims2, escalated: true, star_scale });
    }
    Err(Error::ProlongationIncomplete(format!("dims {dims:?}, after closing {dims2:?}, expected binom(2M, k) with M = {m}")))
}

impl<F: Field> PhiComplex<F> {
    pub fn gens(&self) -> usize {
        2 * self.m
    }

    /// Coordinates of `x (wedge) y` for coordinate vectors of degrees `dx`, `dy`.
    pub fn wedge(&self, x: &SparseVec<F>, dx: usize, y: &SparseVec<F>, dy: usize) -> Result<SparseVec<F>> {
        let mut out = SparseVec::new();
        for (&a, c) in x {
            for (&b, e) in y {
                let mut w = self.alg.basis_word(dx, a).clone();
                w.extend(self.alg.basis_word(dy, b));
                axpy(&mut out, &c.mul(e), &self.alg.project_word(&w)?);
            }
        }
        Ok(out)
    }

    /// `*` on a degree-`d` coordinate vector: conjugate-linear, reverses words,
    /// swaps `x` and `y`, sign `(-1)^{d(d-1)/2}`.
    pub fn star(&self, x: &SparseVec<F>, d: usize) -> Result<SparseVec<F>> {
        let sign = if (d * d.saturating_sub(1) / 2) % 2 == 1 { F::one().neg() } else { F::one() };
        let mut out = SparseVec::new();
        for (&e, c) in x {
            let (w, f) = self.star_word(self.alg.basis_word(d, e));
            axpy(&mut out, &c.conj().mul(&sign).mul(&f), &self.alg.project_word(&w)?);
        }
        Ok(out)
    }

    /// Reversed partner word and the product of the scale factors.
    fn star_word(&self, w: &[u16]) -> (Vec<u16>, F) {
        let mut f = F::one();
        for &a in w {
            f = f.mul(&self.star_scale[a as usize]);
        }
        (w.iter().rev().map(|&a| star_gen(self.m, a as usize) as u16).collect(), f)
    }

    /// Each relation is `*`-stable and every bidegree component of a relation is
    /// again a relation.
    pub fn relations_graded_and_real(&self) -> Result<(bool, bool)> {
        let g = self.gens();
        let mut graded = true;
        let mut real = true;
        for r in &self.alg.relations {
            let mut parts: std::collections::BTreeMap<(usize, usize), Vec<(Vec<u16>, F)>> = Default::default();
            let mut starred = SparseVec::new();
            for (&ab, c) in r {
                let w = vec![(ab / g) as u16, (ab % g) as u16];
                parts.entry(bidegree(self.m, &w)).or_default().push((w.clone(), c.clone()));
                let (sw, f) = self.star_word(&[(ab / g) as u16, (ab % g) as u16]);
                axpy(&mut starred, &c.conj().neg().mul(&f), &self.alg.project_word(&sw)?);
            }
            real &= starred.is_empty();
            for terms in parts.values() {
                let mut acc = SparseVec::new();
                for (w, c) in terms {
                    axpy(&mut acc, c, &self.alg.project_word(w)?);
                }
                graded &= acc.is_empty();
            }
        }
        Ok((graded, real))
    }

    /// `g (wedge) g = 0` for every `x` generator.
    pub fn x_squares_vanish(&self) -> Result<bool> {
        Ok(self.nonzero_x_squares()?.is_empty())
    }

    /// Positions `a` in `I_(1)` with `x_a (wedge) x_a != 0`.
    pub fn nonzero_x_squares(&self) -> Result<Vec<usize>> {
        let mut out = Vec::new();
        for a in 0..self.m {
            if !self.alg.project_word(&[a as u16, a as u16])?.is_empty() {
                out.push(a);
            }
        }
        Ok(out)
    }

    /// All generator pairs anticommute.
    pub fn anticommutative(&self) -> Result<bool> {
        let g = self.gens() as u16;
        for a in 0..g {
            for b in a..g {
                let mut s = self.alg.project_word(&[a, b])?;
                axpy(&mut s, &F::one(), &self.alg.project_word(&[b, a])?);
                if !s.is_empty() {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

/// The dephased form `sum q^{(2rho, wt_i)} y_i x_i`; the class of the Kähler form is
/// `i` times this.
pub fn phi_kappa<F: Field>(phi: &PhiComplex<F>, v: &ModuleRep<F>, two_rho: &[i64]) -> Result<SparseVec<F>> {
    let mut out = SparseVec::new();
    for (a, &i) in phi.i1.iter().enumerate() {
        let w = [(phi.m + a) as u16, a as u16];
        axpy(&mut out, &v.tpow(two_rho[i]), &phi.alg.project_word(&w)?);
    }
    Ok(out)
}

/// Every basis element of `Phi(Omega^2)` in the support has bidegree (1,1).
pub fn kappa_bidegree<F: Field>(phi: &PhiComplex<F>, kappa: &SparseVec<F>) -> bool {
    kappa.keys().all(|&e| bidegree(phi.m, phi.alg.basis_word(2, e)) == (1, 1))
}

/// `Phi(kappa)^* = Phi(kappa)` with the imaginary unit reinstated.
pub fn star_reality_check<F: Field>(phi: &PhiComplex<F>, kappa: &SparseVec<F>) -> Result<bool> {
    let i = F::imag_unit();
    let form: SparseVec<F> = kappa.iter().map(|(&e, c)| (e, c.mul(&i))).collect();
    let (_, real) = phi.relations_graded_and_real()?;
    Ok(real && phi.star(&form, 2)? == form)
}

/// Matrices of `L^{M-k}: Phi(Omega^k) -> Phi(Omega^{2M-k})`, `L` = left wedge with
/// the dephased form, for `k = 0..M-1`. Also reports whether one `(M-k)`-fold power
/// agrees with iterated single wedges.
pub fn lefschetz_matrices<F: Field>(phi: &PhiComplex<F>, kappa: &SparseVec<F>) -> Result<(Vec<Matrix<F>>, bool)> {
    let m = phi.m;
    let results: Vec<Result<(Matrix<F>, bool)>> = (0..m)
        .into_par_iter()
        .map(|k| {
            let p = m - k;
            let mut power = [(0usize, F::one())].into_iter().collect::<SparseVec<F>>();
            for step in 0..p {
                power = phi.wedge(kappa, 2, &power, 2 * step)?;
            }
            let rows = phi.alg.dim(2 * m - k);
            let cols = phi.alg.dim(k);
            let mut mat = Matrix::zeros(rows, cols);
            let mut consistent = true;
            for e in 0..cols {
                let unit: SparseVec<F> = [(e, F::one())].into();
                let once = phi.wedge(&power, 2 * p, &unit, k)?;
                let mut iter = unit.clone();
                for step in 0..p {
                    iter = phi.wedge(kappa, 2, &iter, k + 2 * step)?;
                }
                consistent &= once == iter;
                for (&r, x) in &once {
                    mat.set(r, e, x.clone());
                }
            }
            Ok((mat, consistent))
        })
        .collect();
    let mut mats = Vec::with_capacity(m);
    let mut ok = true;
    for r in results {
        let (mat, c) = r?;
        ok &= c;
        mats.push(mat);
    }
    Ok((mats, ok))
}

/// Scalars that can report a determinant symbolically and at sample points.
pub trait CertField: Numeric + fmt::Display {
    /// Whether the element is a Laurent polynomial with integer coefficients, when
    /// that is meaningful.
    fn integral_laurent(&self) -> Option<bool>;
    /// Symbolic form, when available.
    fn symbolic(&self) -> Option<String>;
    fn is_laurent(&self) -> Option<bool>;
}

impl CertField for Scalar {
    fn integral_laurent(&self) -> Option<bool> {
        Some(self.as_laurent().is_some_and(|p| p.has_integer_coeffs()))
    }
    fn symbolic(&self) -> Option<String> {
        Some(self.to_string())
    }
    fn is_laurent(&self) -> Option<bool> {
        Some(Scalar::is_laurent(self))
    }
}

impl CertField for Surd {
    fn integral_laurent(&self) -> Option<bool> {
        None
    }
    fn symbolic(&self) -> Option<String> {
        None
    }
    fn is_laurent(&self) -> Option<bool> {
        None
    }
}

/// Whether every structure constant of the multiplication tables is an integral
/// Laurent polynomial; `None` when the field cannot tell.
pub fn integrality_diagnostic<F: Field + CertField>(phi: &PhiComplex<F>) -> Option<bool> {
    let g = phi.gens();
    let mut all = true;
    for d in 0..2 * phi.m {
        for e in 0..phi.alg.dim(d) {
            for a in 0..g {
                for x in phi.alg.rmul(d, e, a).values() {
                    all &= x.integral_laurent()?;
                }
            }
        }
    }
    Some(all)
}

/// Value of a determinant at one sample point.
#[derive(Clone, Debug, Serialize)]
pub struct PointValue {
    pub q: String,
    pub value: String,
    pub nonzero: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct LefschetzEntry {
    pub k: usize,
    pub size: usize,
    /// Symbolic determinant; present in symbolic mode.
    pub det_poly: Option<String>,
    pub laurent: Option<bool>,
    pub values: Vec<PointValue>,
}

impl LefschetzEntry {
    pub fn pass(&self) -> bool {
        self.det_poly.as_deref() != Some("0") && self.laurent != Some(false) && self.values.iter().all(|v| v.nonzero)
    }
}

/// Evaluates a symbolic determinant exactly at `q`.
pub fn evaluate_point(det: &Scalar, q: &BigRational, m: u32) -> Result<PointValue> {
    let sample = Sample::new(q.clone(), m)?;
    let ext = Arc::new(Radical::for_sample(&sample));
    let x = Surd::from_scalar(det, &ext)?;
    Ok(point_value(&x, q))
}

pub fn point_value(x: &Surd, q: &BigRational) -> PointValue {
    let c = x.to_complex64();
    PointValue {
        q: q.to_string(),
        value: format!("{:.12e}{:+.12e}i", c.re, c.im),
        nonzero: !x.is_zero(),
    }
}

/// One term `coeff * y_i (wedge) x_i` of the class of the Kähler form.
#[derive(Clone, Debug, Serialize)]
pub struct KappaCoeff {
    pub index: usize,
    pub coeff: String,
}

pub fn kappa_coeffs(i1: &[usize], two_rho: &[i64]) -> Vec<KappaCoeff> {
    i1.iter().map(|&i| KappaCoeff { index: i + 1, coeff: format!("i t^{}", two_rho[i]) }).collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct ClosednessWitness {
    #[serde(rename = "idT1")]
    pub id_t1: bool,
    #[serde(rename = "idT2")]
    pub id_t2: bool,
    pub del_delbar: bool,
}

impl ClosednessWitness {
    pub fn pass(&self) -> bool {
        self.id_t1 && self.id_t2 && self.del_delbar
    }
}

/// The complex at `q = 1` against the exterior algebra.
#[derive(Clone, Debug, Serialize)]
pub struct ClassicalLimit {
    pub dims: Vec<usize>,
    pub binomial: bool,
    pub anticommutative: bool,
    pub x_squares_vanish: bool,
}

impl ClassicalLimit {
    pub fn pass(&self) -> bool {
        self.binomial && self.anticommutative && self.x_squares_vanish
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct KahlerCertificate {
    pub case: String,
    pub m: u32,
    #[serde(rename = "N")]
    pub n: usize,
    #[serde(rename = "M")]
    pub big_m: usize,
    /// 1-based.
    #[serde(rename = "I1")]
    pub i1: Vec<usize>,
    pub dims: Vec<usize>,
    pub escalated: bool,
    pub kappa_coeffs: Vec<KappaCoeff>,
    pub lefschetz: Vec<LefschetzEntry>,
    pub power_consistency: bool,
    pub reality: bool,
    pub bidegree: bool,
    /// Indices in `I_(1)` (1-based module indices) whose `x` squares to a nonzero
    /// class away from `q = 1`.
    pub x_squares_nonzero: Vec<usize>,
    pub closedness_witness: ClosednessWitness,
    pub classical_limit: ClassicalLimit,
    pub integrality_diagnostic: Option<bool>,
    pub verdict: String,
    pub convention_stamp: String,
}

impl KahlerCertificate {
    /// Every determinant nonzero at the requested points; the dims gate passed when
    /// the certificate was built.
    pub fn verdict_pass(lefschetz: &[LefschetzEntry]) -> bool {
        lefschetz.iter().all(|e| e.values.iter().all(|v| v.nonzero) && e.det_poly.as_deref() != Some("0"))
    }

    pub fn all_checks(&self) -> bool {
        self.verdict == "pass"
            && self.lefschetz.iter().all(LefschetzEntry::pass)
            && self.power_consistency
            && self.reality
            && self.bidegree
            && self.closedness_witness.pass()
            && self.classical_limit.pass()
    }
}

/// Dims gate at `q = 1` without escalation failures counting as errors.
pub fn classical_limit(phi: &Result<PhiComplex<Surd>>, m: usize) -> Result<ClassicalLimit> {
    match phi {
        Ok(p) => Ok(ClassicalLimit {
            dims: p.dims.clone(),
            binomial: gate(m, &p.dims),
            anticommutative: p.anticommutative()?,
            x_squares_vanish: p.x_squares_vanish()?,
        }),
        Err(Error::ProlongationIncomplete(_)) => {
            Ok(ClassicalLimit { dims: Vec::new(), binomial: false, anticommutative: false, x_squares_vanish: false })
        }
        Err(e) => Err(e.clone()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braiding::{dual_braidings_checked, solve_braiding};
    use crate::rootdata::Series;
    use crate::uqrep::build_irrep;

    fn phi(series: Series, rank: usize, node: usize) -> (ModuleRep<Scalar>, Calculus<Scalar>, PhiComplex<Scalar>) {
        let rs = RootSystem::new(series, rank).unwrap();
        let v = build_irrep(&rs, node).unwrap();
        let vv = solve_braiding(&rs, &v, &v).unwrap();
        let fam = dual_braidings_checked(&rs, &v, &v.dual(), &vv).unwrap();
        let calc = Calculus::new(&rs, &v, node, &fam);
        let i1 = compute_i1(&rs, &v, node).unwrap();
        let phi = build_phi_complex(&v, &calc, &i1).unwrap();
        (v, calc, phi)
    }

    #[test]
    fn i1_examples() {
        for (s, r, m) in [(Series::A, 1, 1), (Series::A, 2, 2), (Series::B, 2, 3)] {
            let rs = RootSystem::new(s, r).unwrap();
            let v = build_irrep(&rs, 1).unwrap();
            let i1 = compute_i1(&rs, &v, 1).unwrap();
            assert_eq!(i1.len(), m);
        }
        let rs = RootSystem::new(Series::A, 1).unwrap();
        let v = build_irrep(&rs, 1).unwrap();
        assert_eq!(compute_i1(&rs, &v, 1).unwrap(), vec![0]);
    }

    #[test]
    fn a1_certificate_pieces() {
        let (v, calc, phi) = phi(Series::A, 1, 1);
        assert_eq!(phi.dims, vec![1, 2, 1, 0]);
        let kappa = phi_kappa(&phi, &v, &calc.ex.two_rho).unwrap();
        assert!(kappa_bidegree(&phi, &kappa));
        assert!(star_reality_check(&phi, &kappa).unwrap());
        let (mats, ok) = lefschetz_matrices(&phi, &kappa).unwrap();
        assert!(ok);
        let det = mats[0].determinant().unwrap();
        let p = det.as_laurent().expect("laurent");
        assert!(p.is_monomial(), "{det}");
        assert!(phi.x_squares_vanish().unwrap());
    }

    #[test]
    fn a2_dims() {
        let (v, calc, phi) = phi(Series::A, 2, 1);
        assert_eq!(phi.dims, vec![1, 4, 6, 4, 1, 0]);
        let kappa = phi_kappa(&phi, &v, &calc.ex.two_rho).unwrap();
        assert!(star_reality_check(&phi, &kappa).unwrap());
        let (mats, ok) = lefschetz_matrices(&phi, &kappa).unwrap();
        assert!(ok);
        for m in mats {
            let d = m.determinant().unwrap();
            assert!(!d.is_zero());
            eprintln!("det {d}");
        }
    }
}
