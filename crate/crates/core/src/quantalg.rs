//! Graded quadratic algebras: the homogeneous coordinate rings A_+, A_-, their
//! crossed product A_C, and the quotient by c - 1.

use std::collections::BTreeMap;

use num_complex::Complex64;
use serde::Serialize;

use crate::braiding::{BraidFamily, BraidTensor};
use crate::error::{Error, Result};
use crate::rootdata::RootSystem;
use crate::scalars::{add_entry, axpy, Echelon, Field, Numeric, Sample, SparseVec};
use crate::uqrep::ModuleRep;

/// Word in the generators.
pub type Word = Vec<u16>;

/// Formal linear combination of words.
pub type Element<F> = BTreeMap<Word, F>;

pub fn add_term<F: Field>(x: &mut Element<F>, w: Word, c: F) {
    if c.is_zero() {
        return;
    }
    match x.get_mut(&w) {
        Some(slot) => {
            let s = slot.add(&c);
            if s.is_zero() {
                x.remove(&w);
            } else {
                *slot = s;
            }
        }
        None => {
            x.insert(w, c);
        }
    }
}

pub fn mul_elements<F: Field>(a: &Element<F>, b: &Element<F>) -> Element<F> {
    let mut out = Element::new();
    for (u, x) in a {
        for (w, y) in b {
            let mut uw = u.clone();
            uw.extend_from_slice(w);
            add_term(&mut out, uw, x.mul(y));
        }
    }
    out
}

pub fn sub_elements<F: Field>(a: &Element<F>, b: &Element<F>) -> Element<F> {
    let mut out = a.clone();
    for (w, y) in b {
        add_term(&mut out, w.clone(), y.neg());
    }
    out
}

pub fn scale_element<F: Field>(a: &Element<F>, c: &F) -> Element<F> {
    let mut out = Element::new();
    for (w, x) in a {
        add_term(&mut out, w.clone(), x.mul(c));
    }
    out
}

#[derive(Clone, Debug)]
struct Level<F> {
    /// Representative word of each basis element.
    words: Vec<Word>,
    /// `rmul[e][a]`: basis element `e` times generator `a`, in the next level.
    rmul: Vec<Vec<SparseVec<F>>>,
}

/// Quadratic algebra `T(G) / (R)` with graded components computed on demand.
///
/// Degree `k` is built as `(A_{k-1} (x) G) / (A_{k-2} (x) R)`; its basis consists of
/// the pairs (basis element, generator) left free by the echelon form, so every
/// basis element has a representative word.
#[derive(Clone, Debug)]
pub struct QuadraticAlgebra<F> {
    pub gens: usize,
    /// Relation vectors over `a * gens + b`.
    pub relations: Vec<SparseVec<F>>,
    levels: Vec<Level<F>>,
}

impl<F: Field> QuadraticAlgebra<F> {
    pub fn new(gens: usize, relations: Vec<SparseVec<F>>) -> Self {
        let level0 = Level { words: vec![Vec::new()], rmul: Vec::new() };
        Self { gens, relations, levels: vec![level0] }
    }

    pub fn built_degree(&self) -> usize {
        self.levels.len() - 1
    }

    /// Builds all components up to degree `d`.
    pub fn build_to(&mut self, d: usize) -> Result<()> {
        while self.built_degree() < d {
            self.extend()?;
        }
        Ok(())
    }

    fn extend(&mut self) -> Result<()> {
        let g = self.gens;
        let k = self.levels.len();
        let prev_dim = self.levels[k - 1].words.len();
        let mut ech: Echelon<F> = Echelon::new();
        if k >= 2 {
            let pp = &self.levels[k - 2];
            for h in 0..pp.words.len() {
                for r in &self.relations {
                    let mut vec = SparseVec::new();
                    for (&ab, c) in r {
                        let (a, b) = (ab / g, ab % g);
                        for (&e, x) in &pp.rmul[h][a] {
                            add_entry(&mut vec, e * g + b, c.mul(x));
                        }
                    }
                    if !vec.is_empty() {
                        ech.insert(vec)?;
                    }
                }
            }
        }
        let prev_words = self.levels[k - 1].words.clone();
        let mut index = BTreeMap::new();
        let mut words = Vec::new();
        for e in 0..prev_dim {
            for a in 0..g {
                let coord = e * g + a;
                if !ech.is_pivot(coord) {
                    index.insert(coord, words.len());
                    let mut w = prev_words[e].clone();
                    w.push(a as u16);
                    words.push(w);
                }
            }
        }
        let mut rmul = Vec::with_capacity(prev_dim);
        for e in 0..prev_dim {
            let mut row = Vec::with_capacity(g);
            for a in 0..g {
                let unit: SparseVec<F> = [(e * g + a, F::one())].into();
                let red = ech.reduce(&unit);
                row.push(red.into_iter().map(|(c, x)| (index[&c], x)).collect());
            }
            rmul.push(row);
        }
        self.levels[k - 1].rmul = rmul;
        self.levels.push(Level { words, rmul: Vec::new() });
        Ok(())
    }

    pub fn dim(&self, d: usize) -> usize {
        self.levels[d].words.len()
    }

    pub fn basis_word(&self, d: usize, e: usize) -> &Word {
        &self.levels[d].words[e]
    }

    /// Basis element `e` of degree `d` times generator `a`, in degree `d + 1`.
    pub fn rmul(&self, d: usize, e: usize, a: usize) -> &SparseVec<F> {
        &self.levels[d].rmul[e][a]
    }

    /// Coordinates of a word in the basis of its component.
    pub fn project_word(&self, w: &[u16]) -> Result<SparseVec<F>> {
        if w.len() > self.built_degree() {
            return Err(Error::DegreeLimit(format!(
                "word of length {} exceeds built degree {}",
                w.len(),
                self.built_degree()
            )));
        }
        let mut cur: SparseVec<F> = [(0, F::one())].into();
        for (pos, &a) in w.iter().enumerate() {
            let lvl = &self.levels[pos];
            let mut next = SparseVec::new();
            for (&e, c) in &cur {
                axpy(&mut next, c, &lvl.rmul[e][a as usize]);
            }
            cur = next;
        }
        Ok(cur)
    }

    /// Projects an element whose words all have length `d`.
    pub fn project(&self, x: &Element<F>, d: usize) -> Result<SparseVec<F>> {
        let mut out = SparseVec::new();
        for (w, c) in x {
            if w.len() != d {
                return Err(Error::ShapeError(format!("word of length {} in degree {d}", w.len())));
            }
            axpy(&mut out, c, &self.project_word(w)?);
        }
        Ok(out)
    }

    /// Whether a homogeneous element lies in the relation ideal.
    pub fn is_zero(&self, x: &Element<F>) -> Result<bool> {
        let Some(d) = x.keys().next().map(|w| w.len()) else { return Ok(true) };
        Ok(self.project(x, d)?.is_empty())
    }

    /// Representative words of a coordinate vector.
    pub fn lift(&self, d: usize, v: &SparseVec<F>) -> Element<F> {
        v.iter().map(|(&e, c)| (self.levels[d].words[e].clone(), c.clone())).collect()
    }
}

/// Relation rows `x^i x^j - s * sum_{k,l} T[(k,l) -> (i,j)] x^k x^l` over `n` letters
/// placed at `offset`, inside an algebra with `g` generators.
fn braid_relations<F: Field>(t: &BraidTensor<F>, s: &F, n: usize, offset: usize, g: usize) -> Vec<SparseVec<F>> {
    let by_out = t.by_output();
    let mut rows = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let mut row = SparseVec::new();
            add_entry(&mut row, (offset + i) * g + offset + j, F::one());
            for (&inp, c) in &by_out[i * n + j] {
                let (k, l) = (inp / n, inp % n);
                add_entry(&mut row, (offset + k) * g + offset + l, s.mul(c).neg());
            }
            if !row.is_empty() {
                rows.push(row);
            }
        }
    }
    rows
}

/// The algebras A_+, A_- and A_C for one flag manifold.
///
/// Letters `0..n` are `f^1..f^n`, letters `n..2n` are `v^1..v^n`.
#[derive(Clone, Debug)]
pub struct CoordAlgebra<F> {
    pub n: usize,
    pub max_degree: usize,
    /// `t`-exponent of `q^{(lambda,lambda)}`.
    pub lambda_sq: i64,
    pub plus: QuadraticAlgebra<F>,
    pub minus: QuadraticAlgebra<F>,
    pub full: QuadraticAlgebra<F>,
    /// `v^i f^j` rewritten as a combination of `f^k v^l`, keyed by `i * n + j`.
    exchange: Vec<SparseVec<F>>,
    t: F,
}

impl<F: Field> CoordAlgebra<F> {
    pub fn new(rs: &RootSystem, v: &ModuleRep<F>, fam: &BraidFamily<F>, max_degree: usize) -> Result<Self> {
        let n = v.dim();
        let lam = &v.weights[v.hw];
        let lambda_sq = rs.pair_t(lam, lam);
        let qm = v.tpow(-lambda_sq);
        let qp = v.tpow(lambda_sq);
        let plus = QuadraticAlgebra::new(n, braid_relations(&fam.vv, &qm, n, 0, n));
        let minus = QuadraticAlgebra::new(n, braid_relations(&fam.dd, &qm, n, 0, n));
        let g = 2 * n;
        let mut rels = braid_relations(&fam.vv, &qm, n, 0, g);
        rels.extend(braid_relations(&fam.dd, &qm, n, n, g));
        // v^i f^j = q^{(lambda,lambda)} sum (R_{V,V*})^{ij}_{kl} f^k v^l
        let by_out = fam.vd.by_output();
        let mut exchange = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let mut ex = SparseVec::new();
                let mut row = SparseVec::new();
                add_entry(&mut row, (n + i) * g + j, F::one());
                for (&inp, c) in &by_out[i * n + j] {
                    let (k, l) = (inp / n, inp % n);
                    let coef = qp.mul(c);
                    add_entry(&mut ex, k * n + l, coef.clone());
                    add_entry(&mut row, k * g + n + l, coef.neg());
                }
                exchange.push(ex);
                rels.push(row);
            }
        }
        let full = QuadraticAlgebra::new(g, rels);
        let mut alg = Self { n, max_degree, lambda_sq, plus, minus, full, exchange, t: v.t.clone() };
        alg.plus.build_to(max_degree)?;
        alg.minus.build_to(max_degree)?;
        alg.full.build_to(max_degree)?;
        Ok(alg)
    }

    pub fn f(&self, i: usize) -> u16 {
        i as u16
    }

    pub fn v(&self, i: usize) -> u16 {
        (self.n + i) as u16
    }

    fn is_v(&self, a: u16) -> bool {
        a as usize >= self.n
    }

    pub fn letter(&self, a: u16) -> String {
        if self.is_v(a) {
            format!("v{}", a as usize - self.n + 1)
        } else {
            format!("f{}", a + 1)
        }
    }

    /// `c = sum_i v^i f^i`.
    pub fn c(&self) -> Element<F> {
        (0..self.n).map(|i| (vec![self.v(i), self.f(i)], F::one())).collect()
    }

    pub fn gen(&self, a: u16) -> Element<F> {
        [(vec![a], F::one())].into()
    }

    /// `z^{ij} = f^i v^j`.
    pub fn z(&self, i: usize, j: usize) -> Element<F> {
        [(vec![self.f(i), self.v(j)], F::one())].into()
    }

    /// Rewrites into words with every `f` left of every `v`, each block reduced to
    /// the basis of A_+ or A_-.
    pub fn normal_form(&self, x: &Element<F>) -> Result<Element<F>> {
        let mut todo: Vec<(Word, F)> = x.iter().map(|(w, c)| (w.clone(), c.clone())).collect();
        let mut sorted: Element<F> = Element::new();
        while let Some((w, c)) = todo.pop() {
            if w.len() > self.max_degree {
                return Err(Error::DegreeLimit(format!("word of length {} > {}", w.len(), self.max_degree)));
            }
            let pos = (0..w.len().saturating_sub(1)).find(|&p| self.is_v(w[p]) && !self.is_v(w[p + 1]));
            match pos {
                None => add_term(&mut sorted, w, c),
                Some(p) => {
                    let i = w[p] as usize - self.n;
                    let j = w[p + 1] as usize;
                    for (&kl, coef) in &self.exchange[i * self.n + j] {
                        let mut w2 = w.clone();
                        w2[p] = self.f(kl / self.n);
                        w2[p + 1] = self.v(kl % self.n);
                        todo.push((w2, c.mul(coef)));
                    }
                }
            }
        }
        let mut out = Element::new();
        for (w, c) in sorted {
            let split = w.iter().position(|&a| self.is_v(a)).unwrap_or(w.len());
            let fpart: Word = w[..split].to_vec();
            let vpart: Word = w[split..].iter().map(|&a| a - self.n as u16).collect();
            let pf = self.plus.project_word(&fpart)?;
            let pv = self.minus.project_word(&vpart)?;
            for (&a, x) in &pf {
                for (&b, y) in &pv {
                    let mut nw = self.plus.basis_word(fpart.len(), a).clone();
                    nw.extend(self.minus.basis_word(vpart.len(), b).iter().map(|&l| l + self.n as u16));
                    add_term(&mut out, nw, c.mul(x).mul(y));
                }
            }
        }
        Ok(out)
    }

    /// Zero test in A_C by the slice oracle.
    pub fn is_zero(&self, x: &Element<F>) -> Result<bool> {
        let mut by_len: BTreeMap<usize, Element<F>> = BTreeMap::new();
        for (w, c) in x {
            if w.len() > self.max_degree {
                return Err(Error::DegreeLimit(format!("word of length {} > {}", w.len(), self.max_degree)));
            }
            add_term(by_len.entry(w.len()).or_default(), w.clone(), c.clone());
        }
        for part in by_len.values() {
            if !self.full.is_zero(part)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Zero test in A = A_C / <c - 1>: pads shorter words with powers of the central
    /// element `c` and tests the resulting homogeneous element.
    pub fn is_zero_mod_c(&self, x: &Element<F>) -> Result<bool> {
        let Some(top) = x.keys().map(|w| w.len()).max() else { return Ok(true) };
        let c = self.c();
        let mut hom = Element::new();
        for (w, coef) in x {
            let gap = top - w.len();
            if gap % 2 != 0 {
                return Err(Error::ShapeError("element mixes word lengths of both parities".into()));
            }
            let mut term: Element<F> = [(w.clone(), coef.clone())].into();
            for _ in 0..gap / 2 {
                term = mul_elements(&c, &term);
            }
            for (w2, c2) in term {
                add_term(&mut hom, w2, c2);
            }
        }
        self.is_zero(&hom)
    }

    pub fn t(&self) -> &F {
        &self.t
    }
}

/// Dimensions of graded components against the expected `dim V(d lambda)`.
#[derive(Clone, Debug, Serialize)]
pub struct DimensionRow {
    pub degree: usize,
    pub plus: usize,
    pub minus: usize,
    pub full: usize,
    pub expected_plus: u64,
    pub expected_full: u64,
    pub pass: bool,
}

pub fn dimension_table<F: Field>(rs: &RootSystem, v: &ModuleRep<F>, alg: &CoordAlgebra<F>) -> Vec<DimensionRow> {
    let lam = &v.weights[v.hw];
    let expect = |d: usize| -> u64 {
        let w: Vec<i64> = lam.iter().map(|x| x * d as i64).collect();
        rs.weyl_dimension(&w)
    };
    (0..=alg.max_degree)
        .map(|d| {
            let expected_full: u64 = (0..=d).map(|a| expect(a) * expect(d - a)).sum();
            let row = DimensionRow {
                degree: d,
                plus: alg.plus.dim(d),
                minus: alg.minus.dim(d),
                full: alg.full.dim(d),
                expected_plus: expect(d),
                expected_full,
                pass: false,
            };
            DimensionRow {
                pass: row.plus as u64 == row.expected_plus
                    && row.minus as u64 == row.expected_plus
                    && row.full as u64 == expected_full,
                ..row
            }
        })
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckLine {
    pub name: String,
    pub pass: bool,
}

/// `c g - g c = 0` in A_C for every generator `g`.
pub fn verify_central<F: Field>(alg: &CoordAlgebra<F>) -> Result<Vec<CheckLine>> {
    let c = alg.c();
    let mut out = Vec::new();
    for a in 0..(2 * alg.n) as u16 {
        let g = alg.gen(a);
        let comm = sub_elements(&mul_elements(&c, &g), &mul_elements(&g, &c));
        out.push(CheckLine { name: format!("[c, {}]", alg.letter(a)), pass: alg.is_zero(&comm)? });
    }
    Ok(out)
}

pub fn require_central<F: Field>(alg: &CoordAlgebra<F>) -> Result<Vec<CheckLine>> {
    let lines = verify_central(alg)?;
    if let Some(bad) = lines.iter().find(|l| !l.pass) {
        return Err(Error::CentralityFailed(bad.name.clone()));
    }
    Ok(lines)
}

/// `sum_k z^{ik} z^{kj} = z^{ij}` in A for all `i, j`.
pub fn verify_projection_identities<F: Field>(alg: &CoordAlgebra<F>) -> Result<Vec<CheckLine>> {
    let n = alg.n;
    let mut out = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let mut x = Element::new();
            for k in 0..n {
                for (w, c) in mul_elements(&alg.z(i, k), &alg.z(k, j)) {
                    add_term(&mut x, w, c);
                }
            }
            let x = sub_elements(&x, &alg.z(i, j));
            out.push(CheckLine {
                name: format!("sum_k z({},k) z(k,{}) = z({},{})", i + 1, j + 1, i + 1, j + 1),
                pass: alg.is_zero_mod_c(&x)?,
            });
        }
    }
    Ok(out)
}

/// Applies the antilinear anti-automorphism with `f^i -> a_i v^i`, `v^i -> b_i f^i`.
fn star_element<F: Field>(alg: &CoordAlgebra<F>, x: &Element<F>, a: &[F], b: &[F]) -> Element<F> {
    let n = alg.n;
    let mut out = Element::new();
    for (w, c) in x {
        let mut coef = c.conj();
        let mut nw = Word::with_capacity(w.len());
        for &l in w.iter().rev() {
            if (l as usize) < n {
                coef = coef.mul(&a[l as usize]);
                nw.push(alg.v(l as usize));
            } else {
                let i = l as usize - n;
                coef = coef.mul(&b[i]);
                nw.push(alg.f(i));
            }
        }
        add_term(&mut out, nw, coef);
    }
    out
}

/// Exact form of the star check: in the weight basis the star reads
/// `f^i* = v^i / n_i` and `v^i* = n_i f^i`, which is the orthonormal-basis rule
/// `f'^i* = v'^i` rewritten. Every defining relation must map into the ideal.
pub fn verify_star_exact<F: Field>(alg: &CoordAlgebra<F>, norms: &[F]) -> Result<Vec<CheckLine>> {
    let n = alg.n;
    let a: Vec<F> = norms.iter().map(|x| x.inv()).collect::<Result<_>>()?;
    let b: Vec<F> = norms.to_vec();
    let g = 2 * n;
    let mut families: BTreeMap<&str, bool> = BTreeMap::new();
    for rel in &alg.full.relations {
        let x: Element<F> = rel.iter().map(|(&ab, c)| (vec![(ab / g) as u16, (ab % g) as u16], c.clone())).collect();
        let fam = match rel.keys().next_back().map(|&ab| ((ab / g) >= n, (ab % g) >= n)) {
            Some((false, false)) => "f-f relations",
            Some((true, true)) => "v-v relations",
            _ => "exchange relations",
        };
        let ok = alg.is_zero(&star_element(alg, &x, &a, &b))?;
        let e = families.entry(fam).or_insert(true);
        *e &= ok;
    }
    let c = alg.c();
    let cstar = star_element(alg, &c, &a, &b);
    let mut out: Vec<CheckLine> =
        families.into_iter().map(|(k, v)| CheckLine { name: format!("star maps {k} into the ideal"), pass: v }).collect();
    out.push(CheckLine { name: "c* = c".into(), pass: alg.is_zero(&sub_elements(&cstar, &c))? });
    // (z^{ij})^* = (n_j / n_i) z^{ji} in the weight basis, i.e. z'^{ji} in the orthonormal one
    let mut zok = true;
    for i in 0..n {
        for j in 0..n {
            let lhs = star_element(alg, &alg.z(i, j), &a, &b);
            let rhs = scale_element(&alg.z(j, i), &norms[j].div(&norms[i])?);
            zok &= lhs == rhs;
        }
    }
    out.push(CheckLine { name: "(z^ij)* = z^ji in orthonormal generators".into(), pass: zok });
    Ok(out)
}

/// Numeric star check at a sample point in orthonormal generators.
///
/// Relation rows are rewritten in `f'^i = sqrt(n_i) f^i`, `v'^i = v^i / sqrt(n_i)`,
/// mapped by `f'^i -> v'^i`, `v'^i -> f'^i` with conjugated coefficients, and each
/// image is projected onto the span of the rewritten rows; the largest residual is
/// reported.
pub fn verify_star_numeric<F: Numeric>(alg: &CoordAlgebra<F>, norms: &[F], sample: &Sample, tol: f64) -> Result<(f64, bool)> {
    let n = alg.n;
    let g = 2 * n;
    let mut sq = Vec::with_capacity(n);
    for x in norms {
        let c = x.to_c64(sample)?;
        sq.push(c.re.sqrt());
    }
    // coefficient of a word in new letters: old f^i = f'^i / sqrt(n_i), old v^i = sqrt(n_i) v'^i
    let factor = |l: usize| if l < n { 1.0 / sq[l] } else { sq[l - n] };
    let rows: Vec<Vec<Complex64>> = alg
        .full
        .relations
        .iter()
        .map(|r| {
            let mut dense = vec![Complex64::new(0.0, 0.0); g * g];
            for (&ab, c) in r {
                let (x, y) = (ab / g, ab % g);
                dense[ab] = c.to_c64(sample)? * (factor(x) * factor(y));
            }
            Ok(dense)
        })
        .collect::<Result<_>>()?;
    let swap = |l: usize| if l < n { l + n } else { l - n };
    let mut basis: Vec<Vec<Complex64>> = Vec::new();
    for r in &rows {
        let mut v = r.clone();
        for b in &basis {
            let p: Complex64 = b.iter().zip(&v).map(|(x, y)| x.conj() * y).sum();
            for (vi, bi) in v.iter_mut().zip(b) {
                *vi -= p * bi;
            }
        }
        let norm = v.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
        if norm > 1e-10 {
            basis.push(v.into_iter().map(|x| x / norm).collect());
        }
    }
    let mut worst: f64 = 0.0;
    for r in &rows {
        let mut img = vec![Complex64::new(0.0, 0.0); g * g];
        for (ab, c) in r.iter().enumerate() {
            if c.norm() == 0.0 {
                continue;
            }
            let (x, y) = (ab / g, ab % g);
            // (xy)* = y* x*
            img[swap(y) * g + swap(x)] += c.conj();
        }
        let scale = img.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt().max(1.0);
        for b in &basis {
            let p: Complex64 = b.iter().zip(&img).map(|(x, y)| x.conj() * y).sum();
            for (vi, bi) in img.iter_mut().zip(b) {
                *vi -= p * bi;
            }
        }
        let res = img.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt() / scale;
        worst = worst.max(res);
    }
    Ok((worst, worst <= tol))
}

/// Checks that products of `k` generators `z^{ij}` span the (k, k) component of A_C.
pub fn z_monomials_span<F: Field>(alg: &CoordAlgebra<F>, k: usize) -> Result<bool> {
    let n = alg.n;
    let d = 2 * k;
    if d > alg.max_degree {
        return Err(Error::DegreeLimit(format!("degree {d} > {}", alg.max_degree)));
    }
    let mut ech: Echelon<F> = Echelon::new();
    let mut target = 0usize;
    for e in 0..alg.full.dim(d) {
        let w = alg.full.basis_word(d, e);
        if w.iter().filter(|&&l| (l as usize) < n).count() == k {
            target += 1;
        }
    }
    let mut idx = vec![0usize; k];
    'outer: loop {
        let mut w = Word::new();
        for &p in &idx {
            w.push(alg.f(p / n));
            w.push(alg.v(p % n));
        }
        ech.insert(alg.full.project_word(&w)?)?;
        for pos in (0..k).rev() {
            idx[pos] += 1;
            if idx[pos] < n * n {
                continue 'outer;
            }
            idx[pos] = 0;
        }
        break;
    }
    Ok(ech.rank() == target)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braiding::{dual_braidings_checked, solve_braiding};
    use crate::rootdata::Series;
    use crate::scalars::Scalar;
    use crate::uqrep::{build_irrep, contravariant_form};

    fn setup(series: Series, rank: usize, node: usize, deg: usize) -> (RootSystem, ModuleRep<Scalar>, CoordAlgebra<Scalar>) {
        let rs = RootSystem::new(series, rank).unwrap();
        let v = build_irrep(&rs, node).unwrap();
        let vv = solve_braiding(&rs, &v, &v).unwrap();
        let fam = dual_braidings_checked(&rs, &v, &v.dual(), &vv).unwrap();
        let alg = CoordAlgebra::new(&rs, &v, &fam, deg).unwrap();
        (rs, v, alg)
    }

    #[test]
    fn a1_dimensions_and_centrality() {
        let (rs, v, alg) = setup(Series::A, 1, 1, 4);
        for row in dimension_table(&rs, &v, &alg) {
            assert!(row.pass, "{row:?}");
        }
        assert!(verify_central(&alg).unwrap().iter().all(|l| l.pass));
        assert!(verify_projection_identities(&alg).unwrap().iter().all(|l| l.pass));
        let norms = contravariant_form(&v).unwrap();
        let star = verify_star_exact(&alg, &norms).unwrap();
        assert!(star.iter().all(|l| l.pass), "{star:?}");
    }

    #[test]
    fn a2_dimensions_and_centrality() {
        let (rs, v, alg) = setup(Series::A, 2, 1, 3);
        for row in dimension_table(&rs, &v, &alg) {
            assert!(row.pass, "{row:?}");
        }
        assert!(verify_central(&alg).unwrap().iter().all(|l| l.pass));
        let norms = contravariant_form(&v).unwrap();
        assert!(verify_star_exact(&alg, &norms).unwrap().iter().all(|l| l.pass));
        let s = Sample::new(crate::scalars::rat(1, 2), rs.m as u32).unwrap();
        let (dev, ok) = verify_star_numeric(&alg, &norms, &s, 1e-9).unwrap();
        assert!(ok, "{dev}");
    }
}
