//! Braidings between fundamental modules and their duals.

use std::collections::{BTreeMap, HashMap, VecDeque};

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::rootdata::{RootSystem, Weight};
use crate::scalars::{add_entry, axpy, Echelon, Field, Insert, Matrix, Numeric, Sample, SparseVec};
use crate::uqrep::ModuleRep;

/// Linear map `A (x) B -> B (x) A` stored by input.
///
/// `comps[i * n2 + j]` maps `k * n1 + l` to the component of `b_k (x) a_l` in the
/// image of `a_i (x) b_j`, where `n1 = dim A` and `n2 = dim B`.
#[derive(Clone, Debug, PartialEq)]
pub struct BraidTensor<F> {
    pub n1: usize,
    pub n2: usize,
    pub comps: Vec<SparseVec<F>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Gen {
    E,
    F,
}

/// Action of `E_i` or `F_i` on `A (x) B` through the coproduct.
pub fn act_pair<F: Field>(a: &ModuleRep<F>, b: &ModuleRep<F>, gen: Gen, i: usize, x: &SparseVec<F>) -> SparseVec<F> {
    let nb = b.dim();
    let mut out = SparseVec::new();
    for (&idx, c) in x {
        let (p, q) = (idx / nb, idx % nb);
        match gen {
            // E v (x) K w + v (x) E w
            Gen::E => {
                if let Some((p2, e)) = a.e[i].apply(p) {
                    add_entry(&mut out, p2 * nb + q, c.mul(e).mul(&a.tpow(b.k_exp[i][q])));
                }
                if let Some((q2, e)) = b.e[i].apply(q) {
                    add_entry(&mut out, p * nb + q2, c.mul(e));
                }
            }
            // F v (x) 1 + K^-1 v (x) F w
            Gen::F => {
                if let Some((p2, f)) = a.f[i].apply(p) {
                    add_entry(&mut out, p2 * nb + q, c.mul(f));
                }
                if let Some((q2, f)) = b.f[i].apply(q) {
                    add_entry(&mut out, p * nb + q2, c.mul(f).mul(&a.tpow(-a.k_exp[i][p])));
                }
            }
        }
    }
    out
}

impl<F: Field> BraidTensor<F> {
    pub fn zero(n1: usize, n2: usize) -> Self {
        Self { n1, n2, comps: vec![SparseVec::new(); n1 * n2] }
    }

    /// Component `(i, j) -> (k, l)`.
    pub fn get(&self, i: usize, j: usize, k: usize, l: usize) -> F {
        self.comps[i * self.n2 + j].get(&(k * self.n1 + l)).cloned().unwrap_or_else(F::zero)
    }

    pub fn set(&mut self, i: usize, j: usize, k: usize, l: usize, v: F) {
        let out = k * self.n1 + l;
        let slot = &mut self.comps[i * self.n2 + j];
        if v.is_zero() {
            slot.remove(&out);
        } else {
            slot.insert(out, v);
        }
    }

    pub fn nnz(&self) -> usize {
        self.comps.iter().map(|c| c.len()).sum()
    }

    /// Nonzero components as `(i, j, k, l, value)`.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, usize, usize, &F)> {
        self.comps.iter().enumerate().flat_map(move |(inp, row)| {
            row.iter().map(move |(&out, v)| {
                (inp / self.n2, inp % self.n2, out / self.n1, out % self.n1, v)
            })
        })
    }

    pub fn apply(&self, x: &SparseVec<F>) -> SparseVec<F> {
        let mut out = SparseVec::new();
        for (&k, c) in x {
            axpy(&mut out, c, &self.comps[k]);
        }
        out
    }

    /// Components grouped by output index.
    pub fn by_output(&self) -> Vec<SparseVec<F>> {
        let mut out = vec![SparseVec::new(); self.n1 * self.n2];
        for (inp, row) in self.comps.iter().enumerate() {
            for (&o, v) in row {
                out[o].insert(inp, v.clone());
            }
        }
        out
    }

    pub fn to_matrix(&self) -> Matrix<F> {
        let n = self.n1 * self.n2;
        let mut m = Matrix::zeros(n, n);
        for (inp, row) in self.comps.iter().enumerate() {
            for (&o, v) in row {
                m.set(o, inp, v.clone());
            }
        }
        m
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> Result<G>) -> Result<BraidTensor<G>> {
        let comps = self
            .comps
            .iter()
            .map(|row| {
                let mut r = SparseVec::new();
                for (&k, v) in row {
                    let x = f(v)?;
                    if !x.is_zero() {
                        r.insert(k, x);
                    }
                }
                Ok(r)
            })
            .collect::<Result<_>>()?;
        Ok(BraidTensor { n1: self.n1, n2: self.n2, comps })
    }

    /// Inverse map `B (x) A -> A (x) B`, by inverting each connected block.
    pub fn inverse(&self) -> Result<Self> {
        let n = self.n1 * self.n2;
        // union inputs and outputs that share a component
        let mut parent: Vec<usize> = (0..2 * n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for (inp, row) in self.comps.iter().enumerate() {
            for &o in row.keys() {
                let (a, b) = (find(&mut parent, inp), find(&mut parent, n + o));
                if a != b {
                    parent[a] = b;
                }
            }
        }
        let mut groups: BTreeMap<usize, (Vec<usize>, Vec<usize>)> = BTreeMap::new();
        for x in 0..2 * n {
            let r = find(&mut parent, x);
            let g = groups.entry(r).or_default();
            if x < n {
                g.0.push(x);
            } else {
                g.1.push(x - n);
            }
        }
        let mut inv = Self::zero(self.n2, self.n1);
        for (ins, outs) in groups.values() {
            if ins.len() != outs.len() {
                return Err(Error::DivisionByZero);
            }
            let opos: HashMap<usize, usize> = outs.iter().enumerate().map(|(p, &o)| (o, p)).collect();
            let block = Matrix::from_fn(outs.len(), ins.len(), |r, c| {
                self.comps[ins[c]].get(&outs[r]).cloned().unwrap_or_else(F::zero)
            });
            let binv = block.inverse()?;
            // binv maps output coordinates back to inputs
            for (r, &inp) in ins.iter().enumerate() {
                for (&o, &c) in &opos {
                    let v = binv.get(r, c);
                    if !v.is_zero() {
                        inv.comps[o].insert(inp, v.clone());
                    }
                }
            }
        }
        Ok(inv)
    }

    /// `T'[(i,j) -> (k,l)] = T[(j,l) -> (i,k)]`, the index shuffle relating a braiding
    /// with a dual factor to the (inverse) braiding without it.
    pub fn dual_shuffle(&self) -> Self {
        // T: X (x) Y -> Y (x) X with n1 = dim X, n2 = dim Y; result: Y* (x) X -> X (x) Y*
        // with dim Y* = n2, i.e. first input factor of size n2 and second of size n1
        let mut out = Self::zero(self.n2, self.n1);
        for (j, l, i, k, v) in self.entries() {
            out.set(i, j, k, l, v.clone());
        }
        out
    }

    /// Composition `self . other` for `other: A (x) B -> B (x) A` and
    /// `self: B (x) A -> A (x) B`; returns a matrix on `A (x) B` in input indexing.
    pub fn compose(&self, other: &Self) -> Vec<SparseVec<F>> {
        other.comps.iter().map(|row| self.apply(row)).collect()
    }

    pub fn is_inverse_of(&self, other: &Self) -> bool {
        self.compose(other)
            .iter()
            .enumerate()
            .all(|(k, row)| row.len() == 1 && row.get(&k).is_some_and(|v| v.is_one()))
    }
}

fn pair_weight(v: &[i64], w: &[i64]) -> Weight {
    v.iter().zip(w).map(|(a, b)| a + b).collect()
}

/// Solves for `R: V (x) W -> W (x) V`, the module map with
/// `R(v_hw (x) w_lw) = q^(wt v_hw, wt w_lw) w_lw (x) v_hw`.
///
/// The images of everything generated from `v_hw (x) w_lw` are propagated weight
/// block by weight block; each block is then read off from its echelon basis.
pub fn solve_braiding<F: Field>(rs: &RootSystem, v: &ModuleRep<F>, w: &ModuleRep<F>) -> Result<BraidTensor<F>> {
    let (nv, nw) = (v.dim(), w.dim());
    let r = v.rank();
    let alphas: Vec<Weight> = (0..r).map(|i| rs.simple_root(i)).collect();
    let mut blocks: BTreeMap<Weight, Echelon<F>> = BTreeMap::new();
    let x0: SparseVec<F> = [(v.hw * nw + w.lw, F::one())].into();
    let norm = v.tpow(rs.pair_t(&v.weights[v.hw], &w.weights[w.lw]));
    let y0: SparseVec<F> = [(w.lw * nv + v.hw, norm)].into();
    let wt0 = pair_weight(&v.weights[v.hw], &w.weights[w.lw]);
    let mut queue = VecDeque::new();
    blocks.entry(wt0.clone()).or_default().insert_with(x0.clone(), y0.clone())?;
    queue.push_back((x0, y0, wt0));
    while let Some((x, y, wt)) = queue.pop_front() {
        for i in 0..r {
            for (gen, sign) in [(Gen::E, 1), (Gen::F, -1)] {
                let x2 = act_pair(v, w, gen, i, &x);
                let y2 = act_pair(w, v, gen, i, &y);
                if x2.is_empty() {
                    if !y2.is_empty() {
                        return Err(Error::InternalConsistency(
                            "normalization is incompatible with the module structure".into(),
                        ));
                    }
                    continue;
                }
                let wt2: Weight = wt.iter().zip(&alphas[i]).map(|(a, b)| a + sign * b).collect();
                match blocks.entry(wt2.clone()).or_default().insert_with(x2.clone(), y2.clone())? {
                    Insert::Added(_) => queue.push_back((x2, y2, wt2)),
                    Insert::Dependent(rem) => {
                        if !rem.is_empty() {
                            return Err(Error::InternalConsistency(
                                "no module map satisfies the normalization".into(),
                            ));
                        }
                    }
                }
            }
        }
    }
    let mut sizes: BTreeMap<Weight, usize> = BTreeMap::new();
    for a in 0..nv {
        for b in 0..nw {
            *sizes.entry(pair_weight(&v.weights[a], &w.weights[b])).or_default() += 1;
        }
    }
    let mut out = BraidTensor::zero(nv, nw);
    for (wt, size) in &sizes {
        let Some(block) = blocks.get(wt).filter(|b| b.rank() == *size) else {
            return Err(Error::NormalizationInsufficient(format!(
                "weight block {wt:?} is not determined by the normalization"
            )));
        };
        // rows have leading 1 at their largest coordinate: solve upwards
        for p in block.pivots() {
            let (row, comp) = block.row(p).unwrap();
            let mut img = comp.clone();
            for (&c, coef) in row.range(..p) {
                let prev = out.comps[c].clone();
                axpy(&mut img, &coef.neg(), &prev);
            }
            out.comps[p] = img;
        }
    }
    verify_intertwiner(v, w, &out)?;
    Ok(out)
}

/// Checks `R . X = X . R` on `V (x) W` for every generator.
pub fn verify_intertwiner<F: Field>(v: &ModuleRep<F>, w: &ModuleRep<F>, r: &BraidTensor<F>) -> Result<()> {
    let nw = w.dim();
    for inp in 0..v.dim() * nw {
        let x: SparseVec<F> = [(inp, F::one())].into();
        let rx = r.apply(&x);
        // weight conservation covers the K_i
        let wt_in = pair_weight(&v.weights[inp / nw], &w.weights[inp % nw]);
        for &o in rx.keys() {
            let nv = v.dim();
            if pair_weight(&w.weights[o / nv], &v.weights[o % nv]) != wt_in {
                return Err(Error::InternalConsistency("braiding does not preserve weights".into()));
            }
        }
        for i in 0..v.rank() {
            for gen in [Gen::E, Gen::F] {
                let lhs = r.apply(&act_pair(v, w, gen, i, &x));
                let rhs = act_pair(w, v, gen, i, &rx);
                if lhs != rhs {
                    return Err(Error::InternalConsistency(format!(
                        "braiding fails to commute with {gen:?}_{}",
                        i + 1
                    )));
                }
            }
        }
    }
    Ok(())
}

/// Oracle: solves the full intertwiner system with every component unknown.
pub fn solve_braiding_dense<F: Field>(rs: &RootSystem, v: &ModuleRep<F>, w: &ModuleRep<F>) -> Result<BraidTensor<F>> {
    let (nv, nw) = (v.dim(), w.dim());
    let n = nv * nw;
    let unknowns = n * n;
    // unknown (out, inp) at out * n + inp; matrices of generators on both sides
    let gens: Vec<(Matrix<F>, Matrix<F>)> = (0..v.rank())
        .flat_map(|i| [Gen::E, Gen::F].map(|g| (i, g)))
        .map(|(i, g)| {
            let mk = |a: &ModuleRep<F>, b: &ModuleRep<F>| {
                let mut m = Matrix::zeros(n, n);
                for c in 0..n {
                    for (&rr, val) in &act_pair(a, b, g, i, &[(c, F::one())].into()) {
                        m.set(rr, c, val.clone());
                    }
                }
                m
            };
            (mk(v, w), mk(w, v))
        })
        .chain((0..v.rank()).map(|i| {
            let k = |a: &ModuleRep<F>, b: &ModuleRep<F>| {
                let nb = b.dim();
                Matrix::from_fn(n, n, |r, c| {
                    if r == c {
                        a.tpow(a.k_exp[i][c / nb] + b.k_exp[i][c % nb])
                    } else {
                        F::zero()
                    }
                })
            };
            (k(v, w), k(w, v))
        }))
        .collect();
    let mut rows: Vec<Vec<F>> = Vec::new();
    let mut rhs: Vec<F> = Vec::new();
    for (xv, xw) in &gens {
        // (R X_vw - X_wv R)[o, c] = sum_p R[o,p] X_vw[p,c] - X_wv[o,p] R[p,c]
        for o in 0..n {
            for c in 0..n {
                let mut row = vec![F::zero(); unknowns];
                let mut any = false;
                for p in 0..n {
                    let a = xv.get(p, c);
                    if !a.is_zero() {
                        row[o * n + p] = row[o * n + p].add(a);
                        any = true;
                    }
                    let b = xw.get(o, p);
                    if !b.is_zero() {
                        row[p * n + c] = row[p * n + c].sub(b);
                        any = true;
                    }
                }
                if any {
                    rows.push(row);
                    rhs.push(F::zero());
                }
            }
        }
    }
    // R(v_hw (x) w_lw) = q^(..) w_lw (x) v_hw, every other component zero
    let (c0, target) = (v.hw * nw + w.lw, w.lw * nv + v.hw);
    for o in 0..n {
        let mut norm_row = vec![F::zero(); unknowns];
        norm_row[o * n + c0] = F::one();
        rows.push(norm_row);
        rhs.push(if o == target { v.tpow(rs.pair_t(&v.weights[v.hw], &w.weights[w.lw])) } else { F::zero() });
    }
    let a = Matrix::from_rows(rows)?;
    if a.rank()? < unknowns {
        return Err(Error::NormalizationInsufficient("dense system is underdetermined".into()));
    }
    let x = a
        .solve(&rhs)?
        .ok_or_else(|| Error::InternalConsistency("dense system is inconsistent".into()))?;
    let mut out = BraidTensor::zero(nv, nw);
    for o in 0..n {
        for c in 0..n {
            let val = &x[o * n + c];
            if !val.is_zero() {
                out.comps[c].insert(o, val.clone());
            }
        }
    }
    Ok(out)
}

/// The braidings among `V` and `V*` used by the coordinate algebras and calculi.
///
/// Naming: `vd` is `R_{V,V*}`, `dv` is `R_{V*,V}`, `dd` is `R_{V*,V*}`; `_inv` marks
/// inverses, which run in the opposite direction.
#[derive(Clone, Debug)]
pub struct BraidFamily<F> {
    pub vv: BraidTensor<F>,
    pub vv_inv: BraidTensor<F>,
    pub vd: BraidTensor<F>,
    pub vd_inv: BraidTensor<F>,
    pub dv: BraidTensor<F>,
    pub dv_inv: BraidTensor<F>,
    pub dd: BraidTensor<F>,
    pub dd_inv: BraidTensor<F>,
}

impl<F: Field> BraidFamily<F> {
    pub fn map<G: Field>(&self, f: impl Fn(&F) -> Result<G>) -> Result<BraidFamily<G>> {
        Ok(BraidFamily {
            vv: self.vv.map(&f)?,
            vv_inv: self.vv_inv.map(&f)?,
            vd: self.vd.map(&f)?,
            vd_inv: self.vd_inv.map(&f)?,
            dv: self.dv.map(&f)?,
            dv_inv: self.dv_inv.map(&f)?,
            dd: self.dd.map(&f)?,
            dd_inv: self.dd_inv.map(&f)?,
        })
    }
}

/// Outcome of comparing derived braidings with direct solves.
#[derive(Clone, Debug, Serialize)]
pub struct DualityReport {
    pub dual_first: bool,
    pub dual_second: bool,
    pub dual_both: bool,
    pub double_dual: bool,
    pub inverses: bool,
}

impl DualityReport {
    pub fn all(&self) -> bool {
        self.dual_first && self.dual_second && self.dual_both && self.double_dual && self.inverses
    }
}

/// Derives the braidings with dual factors from `R_{V,V}` through the duality
/// shuffles, and checks each against an independent solve.
pub fn dual_braidings<F: Field>(
    rs: &RootSystem,
    v: &ModuleRep<F>,
    vd: &ModuleRep<F>,
    vv: &BraidTensor<F>,
) -> Result<(BraidFamily<F>, DualityReport)> {
    let vv_inv = vv.inverse()?;
    let dv = vv_inv.dual_shuffle();
    let vd_inv = vv.dual_shuffle();
    let dd = vd_inv.dual_shuffle();
    let fam = BraidFamily {
        dv_inv: dv.inverse()?,
        vd: vd_inv.inverse()?,
        dd_inv: dd.inverse()?,
        vv: vv.clone(),
        vv_inv,
        vd_inv,
        dv,
        dd,
    };
    let direct_dv = solve_braiding(rs, vd, v)?;
    let direct_vd = solve_braiding(rs, v, vd)?;
    let direct_dd = solve_braiding(rs, vd, vd)?;
    let vdd = vd.dual();
    let direct_ddv = solve_braiding(rs, &vdd, v)?;
    let mut scaled = vv.clone();
    for (i, j, k, l, x) in vv.entries() {
        let e = rs.pair_t(&rs.two_rho(), &v.weights[l]) - rs.pair_t(&rs.two_rho(), &v.weights[i]);
        scaled.set(i, j, k, l, x.mul(&v.tpow(e)));
    }
    let report = DualityReport {
        dual_first: direct_dv == fam.dv,
        dual_second: direct_vd == fam.vd,
        dual_both: direct_dd == fam.dd,
        double_dual: direct_ddv == scaled,
        inverses: fam.vv_inv.is_inverse_of(&fam.vv)
            && fam.vd_inv.is_inverse_of(&fam.vd)
            && fam.dv_inv.is_inverse_of(&fam.dv)
            && fam.dd_inv.is_inverse_of(&fam.dd),
    };
    Ok((fam, report))
}

/// Like [`dual_braidings`] but fails on any mismatch.
pub fn dual_braidings_checked<F: Field>(
    rs: &RootSystem,
    v: &ModuleRep<F>,
    vd: &ModuleRep<F>,
    vv: &BraidTensor<F>,
) -> Result<BraidFamily<F>> {
    let (fam, rep) = dual_braidings(rs, v, vd, vv)?;
    if !rep.all() {
        return Err(Error::DualityCheckFailed(format!("{rep:?}")));
    }
    Ok(fam)
}

/// Yang-Baxter equation for `R: V (x) V -> V (x) V` on `V (x) V (x) V`.
pub fn yang_baxter<F: Field>(r: &BraidTensor<F>) -> bool {
    let n = r.n1;
    let on12 = |x: &SparseVec<F>| -> SparseVec<F> {
        let mut out = SparseVec::new();
        for (&idx, c) in x {
            let (ab, z) = (idx / n, idx % n);
            for (&o, v) in &r.comps[ab] {
                add_entry(&mut out, o * n + z, c.mul(v));
            }
        }
        out
    };
    let on23 = |x: &SparseVec<F>| -> SparseVec<F> {
        let mut out = SparseVec::new();
        for (&idx, c) in x {
            let (a, bc) = (idx / (n * n), idx % (n * n));
            for (&o, v) in &r.comps[bc] {
                add_entry(&mut out, a * n * n + o, c.mul(v));
            }
        }
        out
    };
    (0..n * n * n).all(|b| {
        let x: SparseVec<F> = [(b, F::one())].into();
        on12(&on23(&on12(&x))) == on23(&on12(&on23(&x)))
    })
}

/// Result of the numeric conjugation identities at one sample point.
#[derive(Clone, Debug, Serialize)]
pub struct ConjugationReport {
    pub q: String,
    pub vv_vs_dual: f64,
    pub vd_self: f64,
    pub vd_inv_self: f64,
    pub adjoint_vv: f64,
    pub adjoint_vd: f64,
    pub max_deviation: f64,
    pub pass: bool,
}

pub(crate) fn numeric<F: Numeric>(t: &BraidTensor<F>, s: &Sample) -> Result<BTreeMap<(usize, usize, usize, usize), Complex64>> {
    t.entries().map(|(i, j, k, l, x)| Ok(((i, j, k, l), x.to_c64(s)?))).collect()
}

/// Rescales `(i,j) -> (k,l)` components to new bases `a'_i = sa_i a_i`, `b'_j = sb_j b_j`.
pub(crate) fn rescale(
    t: &BTreeMap<(usize, usize, usize, usize), Complex64>,
    sa: &[f64],
    sb: &[f64],
) -> BTreeMap<(usize, usize, usize, usize), Complex64> {
    t.iter()
        .map(|(&(i, j, k, l), &x)| ((i, j, k, l), x * (sa[i] * sb[j] / (sb[k] * sa[l]))))
        .collect()
}

/// `max |conj(A[(i,j)->(k,l)]) - B[idx(i,j,k,l)]|` over the union of supports.
pub(crate) fn deviation(
    a: &BTreeMap<(usize, usize, usize, usize), Complex64>,
    b: &BTreeMap<(usize, usize, usize, usize), Complex64>,
    idx: impl Fn((usize, usize, usize, usize)) -> (usize, usize, usize, usize),
) -> f64 {
    let zero = Complex64::new(0.0, 0.0);
    let mut worst: f64 = 0.0;
    for (&key, x) in a {
        let y = b.get(&idx(key)).copied().unwrap_or(zero);
        worst = worst.max((x.conj() - y).norm());
    }
    // entries of b with no partner in a
    let partners: std::collections::BTreeSet<_> = a.keys().map(|&k| idx(k)).collect();
    for (key, y) in b {
        if !partners.contains(key) {
            worst = worst.max(y.norm());
        }
    }
    worst
}

/// Checks the conjugation identities in orthonormal bases at `sample`.
///
/// `V` uses `u_i = v_i / sqrt(n_i)`. For the component identities `V*` uses the dual
/// basis of `u`; for the adjoint property it uses the orthonormal basis
/// `q^{-(rho, wt v_i)}` times that dual basis.
pub fn verify_conjugation<F: Numeric>(
    rs: &RootSystem,
    v: &ModuleRep<F>,
    norms: &[F],
    fam: &BraidFamily<F>,
    sample: &Sample,
    tol: f64,
) -> Result<ConjugationReport> {
    let n = v.dim();
    let mut sv = Vec::with_capacity(n);
    for x in norms {
        let c = x.to_c64(sample)?;
        if c.re <= 0.0 || c.im.abs() > tol {
            return Err(Error::InternalConsistency(format!("norm {c} is not positive at the sample")));
        }
        sv.push(1.0 / c.re.sqrt());
    }
    // dual basis of u_i is sqrt(n_i) f_i
    let sd: Vec<f64> = sv.iter().map(|x| 1.0 / x).collect();
    let qrho: Vec<f64> = (0..n)
        .map(|i| {
            let e = rs.pair_t(&rs.rho(), &v.weights[i]);
            v.tpow(-e).to_c64(sample).map(|c| c.re)
        })
        .collect::<Result<_>>()?;
    let sdo: Vec<f64> = sd.iter().zip(&qrho).map(|(a, b)| a * b).collect();

    let vv = rescale(&numeric(&fam.vv, sample)?, &sv, &sv);
    let dd = rescale(&numeric(&fam.dd, sample)?, &sd, &sd);
    let vd = rescale(&numeric(&fam.vd, sample)?, &sv, &sd);
    let vd_inv = rescale(&numeric(&fam.vd_inv, sample)?, &sd, &sv);
    let flip = |(i, j, k, l): (usize, usize, usize, usize)| (j, i, l, k);
    let adj = |(i, j, k, l): (usize, usize, usize, usize)| (k, l, i, j);
    let vv_vs_dual = deviation(&vv, &dd, flip);
    let vd_self = deviation(&vd, &vd, flip);
    let vd_inv_self = deviation(&vd_inv, &vd_inv, flip);
    let adjoint_vv = deviation(&vv, &vv, adj);
    let vd_o = rescale(&numeric(&fam.vd, sample)?, &sv, &sdo);
    let dv_o = rescale(&numeric(&fam.dv, sample)?, &sdo, &sv);
    let adjoint_vd = deviation(&vd_o, &dv_o, adj);
    let max_deviation = [vv_vs_dual, vd_self, vd_inv_self, adjoint_vv, adjoint_vd]
        .into_iter()
        .fold(0.0, f64::max);
    Ok(ConjugationReport {
        q: sample.q0.to_string(),
        vv_vs_dual,
        vd_self,
        vd_inv_self,
        adjoint_vv,
        adjoint_vd,
        max_deviation,
        pass: max_deviation <= tol,
    })
}

/// JSON-friendly listing `(i, j, k, l, value)` with 1-based indices.
pub fn export<F: Field + std::fmt::Display>(t: &BraidTensor<F>) -> Vec<(usize, usize, usize, usize, String)> {
    t.entries().map(|(i, j, k, l, x)| (i + 1, j + 1, k + 1, l + 1, x.to_string())).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::Series;
    use crate::scalars::Scalar;
    use crate::uqrep::build_irrep;

    #[test]
    fn a1_hw_component() {
        let rs = RootSystem::new(Series::A, 1).unwrap();
        let v = build_irrep(&rs, 1).unwrap();
        let r = solve_braiding(&rs, &v, &v).unwrap();
        assert_eq!(r.get(1, 1, 1, 1), Scalar::t_pow(1));
        assert_eq!(r.get(1, 0, 0, 1), Scalar::t_pow(-1));
        assert!(yang_baxter(&r));
    }

    #[test]
    fn inverse_round_trip() {
        let rs = RootSystem::new(Series::A, 2).unwrap();
        let v = build_irrep(&rs, 1).unwrap();
        let r = solve_braiding(&rs, &v, &v).unwrap();
        assert!(r.inverse().unwrap().is_inverse_of(&r));
    }

    fn family(series: Series, rank: usize, node: usize) -> (RootSystem, ModuleRep<Scalar>, Vec<Scalar>, BraidFamily<Scalar>, DualityReport) {
        let rs = RootSystem::new(series, rank).unwrap();
        let v = build_irrep(&rs, node).unwrap();
        let norms = crate::uqrep::contravariant_form(&v).unwrap();
        let vv = solve_braiding(&rs, &v, &v).unwrap();
        let (fam, rep) = dual_braidings(&rs, &v, &v.dual(), &vv).unwrap();
        (rs, v, norms, fam, rep)
    }

    #[test]
    fn duality_and_conjugation() {
        for (s, r, n) in [(Series::A, 1, 1), (Series::A, 2, 1), (Series::B, 2, 1), (Series::A, 3, 2)] {
            let (rs, v, norms, fam, rep) = family(s, r, n);
            assert!(rep.all(), "{s}{r}: {rep:?}");
            let sample = Sample::new(crate::scalars::rat(1, 2), rs.m as u32).unwrap();
            let c = verify_conjugation(&rs, &v, &norms, &fam, &sample, 1e-9).unwrap();
            assert!(c.pass, "{s}{r}: {c:?}");
        }
    }
}
