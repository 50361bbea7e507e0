//! Fundamental modules V(w_s) in a weight basis, their duals, and invariant forms.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use num_rational::BigRational;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::rootdata::{RootSystem, Weight};
use crate::scalars::{Field, GaussRational, Matrix, Radical, Scalar, Surd};

/// Operator sending each basis vector to a multiple of at most one basis vector.
///
/// `cols[j] = Some((k, c))` means `X v_j = c v_k`.
#[derive(Clone, Debug, PartialEq)]
pub struct WeightOp<F> {
    pub cols: Vec<Option<(usize, F)>>,
}

impl<F: Field> WeightOp<F> {
    pub fn to_matrix(&self) -> Matrix<F> {
        let n = self.cols.len();
        let mut m = Matrix::zeros(n, n);
        for (j, c) in self.cols.iter().enumerate() {
            if let Some((k, v)) = c {
                m.set(*k, j, v.clone());
            }
        }
        m
    }

    pub fn apply(&self, j: usize) -> Option<(usize, &F)> {
        self.cols[j].as_ref().map(|(k, c)| (*k, c))
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> Result<G>) -> Result<WeightOp<G>> {
        let cols = self
            .cols
            .iter()
            .map(|c| match c {
                Some((k, v)) => Ok(Some((*k, f(v)?))),
                None => Ok(None),
            })
            .collect::<Result<_>>()?;
        Ok(WeightOp { cols })
    }
}

/// Module over U_q(g) with all weight multiplicities one.
#[derive(Clone, Debug)]
pub struct ModuleRep<F> {
    pub weights: Vec<Weight>,
    /// Index of the highest weight vector.
    pub hw: usize,
    /// Index of the lowest weight vector.
    pub lw: usize,
    pub e: Vec<WeightOp<F>>,
    pub f: Vec<WeightOp<F>>,
    /// `K_i v_j = t^{k_exp[i][j]} v_j`.
    pub k_exp: Vec<Vec<i64>>,
    /// The value of `t = q^(1/m)`.
    pub t: F,
    pub m: i64,
}

impl<F: Field> ModuleRep<F> {
    pub fn dim(&self) -> usize {
        self.weights.len()
    }

    pub fn rank(&self) -> usize {
        self.e.len()
    }

    pub fn tpow(&self, e: i64) -> F {
        self.t.powi(e).expect("t is invertible")
    }

    pub fn k_matrix(&self, i: usize, sign: i64) -> Matrix<F> {
        let n = self.dim();
        let mut m = Matrix::zeros(n, n);
        for j in 0..n {
            m.set(j, j, self.tpow(sign * self.k_exp[i][j]));
        }
        m
    }

    pub fn index_of(&self, w: &[i64]) -> Option<usize> {
        self.weights.iter().position(|x| x.as_slice() == w)
    }

    /// Dual module on the dual basis `f_j`: `X` acts by the transpose of `S(X)`.
    pub fn dual(&self) -> Self {
        let n = self.dim();
        let r = self.rank();
        let mut e = Vec::with_capacity(r);
        let mut f = Vec::with_capacity(r);
        for i in 0..r {
            // S(E) = -E K^{-1}, S(F) = -K F
            let mut ec = vec![None; n];
            let mut fc = vec![None; n];
            for j in 0..n {
                if let Some((k, c)) = self.e[i].apply(j) {
                    ec[k] = Some((j, c.mul(&self.tpow(-self.k_exp[i][j])).neg()));
                }
                if let Some((k, c)) = self.f[i].apply(j) {
                    fc[k] = Some((j, c.mul(&self.tpow(self.k_exp[i][k])).neg()));
                }
            }
            e.push(WeightOp { cols: ec });
            f.push(WeightOp { cols: fc });
        }
        Self {
            weights: self.weights.iter().map(|w| w.iter().map(|x| -x).collect()).collect(),
            hw: self.lw,
            lw: self.hw,
            e,
            f,
            k_exp: self.k_exp.iter().map(|row| row.iter().map(|x| -x).collect()).collect(),
            t: self.t.clone(),
            m: self.m,
        }
    }

    pub fn map_field<G: Field>(&self, t: G, f: impl Fn(&F) -> Result<G>) -> Result<ModuleRep<G>> {
        Ok(ModuleRep {
            weights: self.weights.clone(),
            hw: self.hw,
            lw: self.lw,
            e: self.e.iter().map(|x| x.map(&f)).collect::<Result<_>>()?,
            f: self.f.iter().map(|x| x.map(&f)).collect::<Result<_>>()?,
            k_exp: self.k_exp.clone(),
            t,
            m: self.m,
        })
    }

    /// Checks the defining relations of U_q(g) on the generator matrices.
    pub fn verify_relations(&self, rs: &RootSystem) -> Result<()> {
        let r = self.rank();
        let n = self.dim();
        let fail = |what: String| Err(Error::InternalConsistency(what));
        for i in 0..r {
            let alpha = rs.simple_root(i);
            for j in 0..n {
                let expect = rs.m * rs.pair_simple(i, &self.weights[j]);
                if self.k_exp[i][j] != expect {
                    return fail(format!("K_{} eigenvalue on v_{}", i + 1, j + 1));
                }
                // E_i raises by a_i, F_i lowers by a_i
                for (op, sign) in [(&self.e[i], 1), (&self.f[i], -1)] {
                    if let Some((k, _)) = op.apply(j) {
                        let shifted: Weight =
                            self.weights[j].iter().zip(&alpha).map(|(a, b)| a + sign * b).collect();
                        if self.weights[k] != shifted {
                            return fail(format!("generator {} does not shift weights by a root", i + 1));
                        }
                    }
                }
            }
            if self.e[i].apply(self.hw).is_some() {
                return fail(format!("E_{} does not kill the highest weight vector", i + 1));
            }
        }
        let em: Vec<Matrix<F>> = self.e.iter().map(|x| x.to_matrix()).collect();
        let fm: Vec<Matrix<F>> = self.f.iter().map(|x| x.to_matrix()).collect();
        for i in 0..r {
            let qi = rs.m * rs.d[i];
            let k = self.k_matrix(i, 1);
            let kinv = self.k_matrix(i, -1);
            let denom = self.tpow(qi).sub(&self.tpow(-qi));
            let cartan_part = k.sub(&kinv)?.scale(&denom.inv()?);
            for j in 0..r {
                let comm = em[i].mul(&fm[j])?.sub(&fm[j].mul(&em[i])?)?;
                let expect = if i == j { cartan_part.clone() } else { Matrix::zeros(n, n) };
                if comm != expect {
                    return fail(format!("[E_{}, F_{}] relation", i + 1, j + 1));
                }
                if i != j {
                    let a = -rs.cartan[i][j];
                    if !serre(&em[i], &em[j], a, &self.tpow(qi))?.is_zero()
                        || !serre(&fm[i], &fm[j], a, &self.tpow(qi))?.is_zero()
                    {
                        return fail(format!("Serre relation for ({}, {})", i + 1, j + 1));
                    }
                }
            }
        }
        Ok(())
    }
}

/// `sum_k (-1)^k [1+a choose k]_{qi} X^{1+a-k} Y X^k`.
fn serre<F: Field>(x: &Matrix<F>, y: &Matrix<F>, a: i64, qi: &F) -> Result<Matrix<F>> {
    let n = x.rows();
    let top = (1 + a) as usize;
    let mut powers = vec![Matrix::identity(n)];
    for _ in 0..top {
        let next = powers.last().unwrap().mul(x)?;
        powers.push(next);
    }
    let qint = |k: i64| -> Result<F> {
        let num = qi.powi(k)?.sub(&qi.powi(-k)?);
        let den = qi.sub(&qi.inv()?);
        num.div(&den)
    };
    let binom = |n: usize, k: usize| -> Result<F> {
        let mut acc = F::one();
        for j in 0..k {
            acc = acc.mul(&qint((n - j) as i64)?).div(&qint((j + 1) as i64)?)?;
        }
        Ok(acc)
    };
    let mut acc = Matrix::zeros(n, n);
    for k in 0..=top {
        let mut term = powers[top - k].mul(y)?.mul(&powers[k])?.scale(&binom(top, k)?);
        if k % 2 == 1 {
            term = term.scale(&F::one().neg());
        }
        acc = acc.add(&term)?;
    }
    Ok(acc)
}

struct Node {
    weight: Weight,
    depth: usize,
    /// `E_i` of this vector: `(target node, coefficient)`.
    e: Vec<Option<(usize, Scalar)>>,
}

/// Builds V(w_s) over the symbolic scalars.
///
/// Basis vectors are F-monomials applied to the highest weight vector; new
/// candidates are compared through their images under all `E_i`, which is injective
/// below the highest weight in an irreducible module.
pub fn build_irrep(rs: &RootSystem, s: usize) -> Result<ModuleRep<Scalar>> {
    if s == 0 || s > rs.rank {
        return Err(Error::UnsupportedType(format!("node {s} out of range for {}", rs.name())));
    }
    if !rs.irreducible_nodes().contains(&s) {
        return Err(Error::UnsupportedType(format!(
            "node {s} of {} does not define an irreducible flag manifold",
            rs.name()
        )));
    }
    build_highest_weight(rs, &rs.fundamental(s))
}

/// Builds the irreducible module of the given dominant weight, provided it has all
/// weight multiplicities one.
pub fn build_highest_weight(rs: &RootSystem, lambda: &[i64]) -> Result<ModuleRep<Scalar>> {
    let r = rs.rank;
    let mut nodes: Vec<Node> = vec![Node { weight: lambda.to_vec(), depth: 0, e: vec![None; r] }];
    let mut index: HashMap<Weight, usize> = HashMap::from([(lambda.to_vec(), 0)]);
    // F_j on node p: Some((target, coeff)), None when the image vanishes
    let mut fmap: HashMap<(usize, usize), Option<(usize, Scalar)>> = HashMap::new();
    let alphas: Vec<Weight> = (0..r).map(|i| rs.simple_root(i)).collect();
    let qint = |n: i64, i: usize| Scalar::quantum_int(n, rs.m * rs.d[i]);
    let mut layer = vec![0usize];
    let mut depth = 0;
    while !layer.is_empty() {
        depth += 1;
        let mut cands: BTreeMap<Weight, Vec<(usize, usize)>> = BTreeMap::new();
        for &mu in &layer {
            for j in 0..r {
                let nu: Weight = nodes[mu].weight.iter().zip(&alphas[j]).map(|(a, b)| a - b).collect();
                cands.entry(nu).or_default().push((j, mu));
            }
        }
        let mut next = Vec::new();
        for (nu, list) in cands {
            // E_i F_j r_mu = F_j E_i r_mu + delta_ij [mu_i]_{q_i} r_mu
            let images: Vec<Vec<Scalar>> = list
                .iter()
                .map(|&(j, mu)| {
                    (0..r)
                        .map(|i| {
                            let mut acc = Scalar::zero();
                            if let Some((p, a)) = &nodes[mu].e[i] {
                                if let Some(Some((_, b))) = fmap.get(&(*p, j)) {
                                    acc = acc.add(&a.mul(b));
                                }
                            }
                            if i == j {
                                acc = acc.add(&qint(nodes[mu].weight[i], i));
                            }
                            acc
                        })
                        .collect()
                })
                .collect();
            let rank = Matrix::from_rows(images.clone())?.rank()?;
            if rank == 0 {
                for &(j, mu) in &list {
                    fmap.insert((mu, j), None);
                }
                continue;
            }
            if rank > 1 {
                return Err(Error::MultiplicityUnsupported(format!(
                    "weight {nu:?} has multiplicity {rank} in V({lambda:?}) of {}",
                    rs.name()
                )));
            }
            let lead = images.iter().position(|v| v.iter().any(|x| !x.is_zero())).unwrap();
            let id = nodes.len();
            let pivot = images[lead].iter().position(|x| !x.is_zero()).unwrap();
            for (c, &(j, mu)) in list.iter().enumerate() {
                let ratio = images[c][pivot].div(&images[lead][pivot])?;
                if ratio.is_zero() {
                    fmap.insert((mu, j), None);
                } else {
                    fmap.insert((mu, j), Some((id, ratio)));
                }
            }
            let e = (0..r)
                .map(|i| {
                    let x = &images[lead][i];
                    if x.is_zero() {
                        return Ok(None);
                    }
                    let up: Weight = nu.iter().zip(&alphas[i]).map(|(a, b)| a + b).collect();
                    let target = *index.get(&up).ok_or_else(|| {
                        Error::InternalConsistency(format!("E_{} leaves the weight set", i + 1))
                    })?;
                    Ok(Some((target, x.clone())))
                })
                .collect::<Result<Vec<_>>>()?;
            index.insert(nu.clone(), id);
            nodes.push(Node { weight: nu, depth, e });
            next.push(id);
        }
        layer = next;
    }
    // deepest first, highest weight last
    let mut order: Vec<usize> = (0..nodes.len()).collect();
    order.sort_by(|&a, &b| {
        nodes[b].depth.cmp(&nodes[a].depth).then_with(|| nodes[a].weight.cmp(&nodes[b].weight))
    });
    let mut pos = vec![0; nodes.len()];
    for (p, &id) in order.iter().enumerate() {
        pos[id] = p;
    }
    let n = nodes.len();
    let mut e = vec![WeightOp { cols: vec![None; n] }; r];
    let mut f = vec![WeightOp { cols: vec![None; n] }; r];
    for (id, node) in nodes.iter().enumerate() {
        for i in 0..r {
            if let Some((t, c)) = &node.e[i] {
                e[i].cols[pos[id]] = Some((pos[*t], c.clone()));
            }
            if let Some(Some((t, c))) = fmap.get(&(id, i)) {
                f[i].cols[pos[id]] = Some((pos[*t], c.clone()));
            }
        }
    }
    let weights: Vec<Weight> = order.iter().map(|&id| nodes[id].weight.clone()).collect();
    let k_exp = (0..r)
        .map(|i| weights.iter().map(|w| rs.m * rs.pair_simple(i, w)).collect())
        .collect();
    let module = ModuleRep { weights, hw: n - 1, lw: 0, e, f, k_exp, t: Scalar::t_pow(1), m: rs.m };
    module.verify_relations(rs)?;
    Ok(module)
}

/// Diagonal norms of the invariant inner product, `(E_i v, w) = (v, F_i K_i w)`,
/// normalized to one on the highest weight vector.
pub fn contravariant_form<F: Field>(v: &ModuleRep<F>) -> Result<Vec<F>> {
    let n = v.dim();
    let mut norms: Vec<Option<F>> = vec![None; n];
    norms[v.hw] = Some(F::one());
    // walk down from the highest weight; each vector is reached by some F_j
    let mut stack = vec![v.hw];
    while let Some(p) = stack.pop() {
        let np = norms[p].clone().unwrap();
        for j in 0..v.rank() {
            let Some((c, fc)) = v.f[j].apply(p) else { continue };
            if norms[c].is_some() {
                continue;
            }
            // (E_j v_c, v_p) = (v_c, F_j K_j v_p): conj(e) n_p = t^{k} fc n_c
            let (back, ec) = v.e[j]
                .apply(c)
                .ok_or_else(|| Error::InternalConsistency("E does not invert F".into()))?;
            if back != p {
                return Err(Error::InternalConsistency("E does not invert F".into()));
            }
            let nc = ec.conj().mul(&np).div(&fc.mul(&v.tpow(v.k_exp[j][p])))?;
            norms[c] = Some(nc);
            stack.push(c);
        }
    }
    let norms: Vec<F> = norms
        .into_iter()
        .map(|x| x.ok_or_else(|| Error::InternalConsistency("module not generated by hw vector".into())))
        .collect::<Result<_>>()?;
    // exact invariance: E^dagger N = N F K
    let nm = Matrix::from_fn(n, n, |i, j| if i == j { norms[i].clone() } else { F::zero() });
    for i in 0..v.rank() {
        let e = v.e[i].to_matrix();
        let edag = e.transpose().map(|x| x.conj());
        let lhs = edag.mul(&nm)?;
        let rhs = nm.mul(&v.f[i].to_matrix())?.mul(&v.k_matrix(i, 1))?;
        if lhs != rhs {
            return Err(Error::MultiplicityUnsupported(format!(
                "invariant form is not diagonal (generator {})",
                i + 1
            )));
        }
    }
    Ok(norms)
}

/// Specializes a symbolic module at an exact value of `t`.
pub fn specialize(v: &ModuleRep<Scalar>, t: &BigRational) -> Result<ModuleRep<GaussRational>> {
    v.map_field(GaussRational::real(t.clone()), |x| x.eval_at(t))
}

/// Specializes a symbolic module at `t = s` inside a radical extension.
pub fn specialize_surd(v: &ModuleRep<Scalar>, ext: &Arc<Radical>) -> Result<ModuleRep<Surd>> {
    v.map_field(Surd::root_pow(ext, 1), |x| Surd::from_scalar(x, ext))
}

/// Summary of a module for reports; indices are 1-based.
#[derive(Clone, Debug, Serialize)]
pub struct ModuleSummary {
    pub dim: usize,
    pub hw_index: usize,
    pub weights: Vec<Weight>,
    pub norms: Vec<String>,
}

pub fn summarize(v: &ModuleRep<Scalar>, norms: &[Scalar]) -> ModuleSummary {
    ModuleSummary {
        dim: v.dim(),
        hw_index: v.hw + 1,
        weights: v.weights.clone(),
        norms: norms.iter().map(|x| x.to_string()).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::Series;

    #[test]
    fn a1_fundamental() {
        let rs = RootSystem::new(Series::A, 1).unwrap();
        let v = build_irrep(&rs, 1).unwrap();
        assert_eq!(v.dim(), 2);
        assert_eq!(v.weights, vec![vec![-1], vec![1]]);
        assert_eq!(v.hw, 1);
        let n = contravariant_form(&v).unwrap();
        assert!(n[1].is_one());
        assert_eq!(n[0].at_one(), Some(GaussRational::one()));
    }

    #[test]
    fn a2_fundamental() {
        let rs = RootSystem::new(Series::A, 2).unwrap();
        let v = build_irrep(&rs, 1).unwrap();
        assert_eq!(v.dim(), 3);
        assert_eq!(v.weights[2], vec![1, 0]);
        assert_eq!(v.weights[1], vec![-1, 1]);
        assert_eq!(v.weights[0], vec![0, -1]);
    }

    #[test]
    fn b2_vector() {
        let rs = RootSystem::new(Series::B, 2).unwrap();
        let v = build_irrep(&rs, 1).unwrap();
        assert_eq!(v.dim(), 5);
        assert!(v.weights.contains(&vec![0, 0]));
    }

    #[test]
    fn c4_spin_has_multiplicity() {
        let rs = RootSystem::new(Series::C, 4).unwrap();
        assert!(matches!(build_irrep(&rs, 4), Err(Error::MultiplicityUnsupported(_))));
    }

    #[test]
    fn dual_is_a_module() {
        let rs = RootSystem::new(Series::A, 2).unwrap();
        let v = build_irrep(&rs, 1).unwrap();
        let d = v.dual();
        d.verify_relations(&rs).unwrap();
        assert_eq!(d.hw, 0);
        assert_eq!(d.weights[0], vec![0, 1]);
        d.dual().verify_relations(&rs).unwrap();
    }
}
