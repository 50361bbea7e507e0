//! Cartan data, weight-lattice pairings and the catalog of irreducible flag manifolds.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use num_rational::Rational64;
use serde::Serialize;

use crate::error::{Error, Result};

/// Weight in fundamental-weight coordinates.
pub type Weight = Vec<i64>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Series {
    A,
    B,
    C,
    D,
    E,
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self {
            Series::A => "A",
            Series::B => "B",
            Series::C => "C",
            Series::D => "D",
            Series::E => "E",
        };
        f.write_str(c)
    }
}

impl FromStr for Series {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "A" => Ok(Series::A),
            "B" => Ok(Series::B),
            "C" => Ok(Series::C),
            "D" => Ok(Series::D),
            "E" => Ok(Series::E),
            other => Err(Error::UnsupportedType(format!("unknown series {other:?}"))),
        }
    }
}

/// Runtime switches for optional data tables.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Capabilities {
    pub exceptional: bool,
}

/// Human-readable statement of the normalization in force; copied into every report.
pub const CONVENTION: &str = "Bourbaki node numbering; (a,a)=2 for roots of simply-laced types; \
B_n: (a_i,a_i)=4 for i<n, (a_n,a_n)=2; C_n: (a_i,a_i)=2 for i<n, (a_n,a_n)=4; d_i=(a_i,a_i)/2; \
K_i v = q^(a_i,wt v) v; [E_i,F_j]=delta_ij (K_i-K_i^-1)/(q_i-q_i^-1), q_i=q^d_i; \
Delta(E_i)=E_i(x)K_i+1(x)E_i, Delta(F_i)=F_i(x)1+K_i^-1(x)F_i; E_i^*=F_i K_i; t=q^(1/m)";

#[derive(Clone, Debug)]
pub struct RootSystem {
    pub series: Series,
    pub rank: usize,
    /// `cartan[i][j] = 2(a_i,a_j)/(a_i,a_i)`.
    pub cartan: Vec<Vec<i64>>,
    /// `d[i] = (a_i,a_i)/2`.
    pub d: Vec<i64>,
    /// `(a_i, a_j)`.
    pub sym: Vec<Vec<i64>>,
    /// `(w_i, w_j)`.
    pub gram: Vec<Vec<Rational64>>,
    pub m: i64,
    /// Positive roots in simple-root coordinates, sorted by height.
    pub positive_roots: Vec<Vec<i64>>,
}

fn chain(n: usize) -> Vec<(usize, usize)> {
    (1..n).map(|i| (i - 1, i)).collect()
}

impl RootSystem {
    pub fn new(series: Series, rank: usize) -> Result<Self> {
        Self::with_capabilities(series, rank, Capabilities::default())
    }

    pub fn with_capabilities(series: Series, rank: usize, caps: Capabilities) -> Result<Self> {
        let n = rank;
        let bad = || Error::UnsupportedType(format!("{series}{rank}"));
        // squared lengths and edges of the Dynkin diagram (0-based)
        let (lens, edges): (Vec<i64>, Vec<(usize, usize)>) = match series {
            Series::A if n >= 1 => (vec![2; n], chain(n)),
            Series::B if n >= 2 => {
                let mut l = vec![4; n];
                l[n - 1] = 2;
                (l, chain(n))
            }
            Series::C if n >= 2 => {
                let mut l = vec![2; n];
                l[n - 1] = 4;
                (l, chain(n))
            }
            Series::D if n >= 4 => {
                let mut e = chain(n - 1);
                e.push((n - 3, n - 1));
                (vec![2; n], e)
            }
            Series::E if caps.exceptional && (n == 6 || n == 7) => {
                let mut e = vec![(0, 2), (1, 3), (2, 3)];
                e.extend((3..n - 1).map(|i| (i, i + 1)));
                (vec![2; n], e)
            }
            _ => return Err(bad()),
        };
        let mut sym = vec![vec![0i64; n]; n];
        for i in 0..n {
            sym[i][i] = lens[i];
        }
        for &(i, j) in &edges {
            let v = -lens[i].max(lens[j]) / 2;
            sym[i][j] = v;
            sym[j][i] = v;
        }
        let d: Vec<i64> = lens.iter().map(|l| l / 2).collect();
        let cartan: Vec<Vec<i64>> =
            (0..n).map(|i| (0..n).map(|j| 2 * sym[i][j] / lens[i]).collect()).collect();
        let gram = gram_matrix(&cartan, &d)?;
        let m = gram.iter().flatten().fold(1i64, |acc, x| acc.lcm(x.denom()));
        let mut rs = Self { series, rank, cartan, d, sym, gram, m, positive_roots: Vec::new() };
        rs.positive_roots = rs.compute_positive_roots();
        Ok(rs)
    }

    pub fn name(&self) -> String {
        format!("{}{}", self.series, self.rank)
    }

    pub fn rho(&self) -> Weight {
        vec![1; self.rank]
    }

    pub fn two_rho(&self) -> Weight {
        vec![2; self.rank]
    }

    pub fn fundamental(&self, s: usize) -> Weight {
        let mut w = vec![0; self.rank];
        w[s - 1] = 1;
        w
    }

    /// Simple root `a_j` (0-based) in fundamental-weight coordinates.
    pub fn simple_root(&self, j: usize) -> Weight {
        (0..self.rank).map(|k| self.cartan[k][j]).collect()
    }

    /// Weight of `sum c_j a_j`.
    pub fn root_to_weight(&self, coeffs: &[i64]) -> Weight {
        (0..self.rank)
            .map(|k| (0..self.rank).map(|j| self.cartan[k][j] * coeffs[j]).sum())
            .collect()
    }

    pub fn pair(&self, mu: &[i64], nu: &[i64]) -> Rational64 {
        let mut acc = Rational64::from_integer(0);
        for (i, &a) in mu.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in nu.iter().enumerate() {
                if b != 0 {
                    acc += self.gram[i][j] * (a * b);
                }
            }
        }
        acc
    }

    /// `m (mu, nu)`, the exponent of `t` representing `q^(mu,nu)`.
    pub fn pair_t(&self, mu: &[i64], nu: &[i64]) -> i64 {
        let p = self.pair(mu, nu) * self.m;
        debug_assert!(p.is_integer());
        p.to_integer()
    }

    /// `(a_i, mu)` (0-based `i`), always an integer.
    pub fn pair_simple(&self, i: usize, mu: &[i64]) -> i64 {
        self.d[i] * mu[i]
    }

    fn compute_positive_roots(&self) -> Vec<Vec<i64>> {
        let n = self.rank;
        let mut roots: Vec<Vec<i64>> = (0..n)
            .map(|i| {
                let mut r = vec![0; n];
                r[i] = 1;
                r
            })
            .collect();
        let mut layer = roots.clone();
        while !layer.is_empty() {
            let mut next: Vec<Vec<i64>> = Vec::new();
            for beta in &layer {
                for i in 0..n {
                    // p = largest k with beta - k a_i a root
                    let mut p = 0;
                    loop {
                        let mut g = beta.clone();
                        g[i] -= p + 1;
                        if g.iter().all(|&x| x >= 0) && roots.contains(&g) {
                            p += 1;
                        } else {
                            break;
                        }
                    }
                    let pairing: i64 = (0..n).map(|j| self.cartan[i][j] * beta[j]).sum();
                    if p - pairing > 0 {
                        let mut g = beta.clone();
                        g[i] += 1;
                        if !next.contains(&g) && !roots.contains(&g) {
                            next.push(g);
                        }
                    }
                }
            }
            next.sort();
            roots.extend(next.iter().cloned());
            layer = next;
        }
        roots.sort_by_key(|r| (r.iter().sum::<i64>(), r.clone()));
        roots
    }

    pub fn highest_root(&self) -> &[i64] {
        self.positive_roots.last().expect("nonempty root system")
    }

    /// 1-based nodes whose simple root has coefficient 1 in the highest root.
    pub fn irreducible_nodes(&self) -> Vec<usize> {
        self.highest_root()
            .iter()
            .enumerate()
            .filter(|(_, &c)| c == 1)
            .map(|(i, _)| i + 1)
            .collect()
    }

    /// Weyl dimension formula.
    pub fn weyl_dimension(&self, lambda: &[i64]) -> u64 {
        let rho = self.rho();
        let lr: Weight = lambda.iter().zip(&rho).map(|(a, b)| a + b).collect();
        let mut num = Rational64::from_integer(1);
        for beta in &self.positive_roots {
            let bw = self.root_to_weight(beta);
            num *= self.pair(&lr, &bw) / self.pair(&rho, &bw);
        }
        debug_assert!(num.is_integer());
        num.to_integer() as u64
    }

    /// Complex dimension of the flag manifold for node `s` (1-based): the number of
    /// positive roots involving `a_s`.
    pub fn flag_dimension(&self, s: usize) -> usize {
        self.positive_roots.iter().filter(|r| r[s - 1] > 0).count()
    }
}

/// `(w_i, w_j) = (D A^{-1})_{ij}` by exact Gauss-Jordan over the rationals.
fn gram_matrix(cartan: &[Vec<i64>], d: &[i64]) -> Result<Vec<Vec<Rational64>>> {
    let n = cartan.len();
    let mut a: Vec<Vec<Rational64>> = (0..n)
        .map(|i| {
            let mut row: Vec<Rational64> = cartan[i].iter().map(|&x| Rational64::from_integer(x)).collect();
            row.extend((0..n).map(|j| Rational64::from_integer(i64::from(i == j))));
            row
        })
        .collect();
    for c in 0..n {
        let p = (c..n)
            .find(|&r| a[r][c] != Rational64::from_integer(0))
            .ok_or_else(|| Error::InternalConsistency("singular Cartan matrix".into()))?;
        a.swap(p, c);
        let inv = Rational64::from_integer(1) / a[c][c];
        for x in a[c].iter_mut() {
            *x *= inv;
        }
        for r in 0..n {
            if r != c {
                let f = a[r][c];
                if f != Rational64::from_integer(0) {
                    for k in 0..2 * n {
                        let v = a[c][k];
                        a[r][k] -= f * v;
                    }
                }
            }
        }
    }
    // A^{-1} is the right half; (w_i, w_j) = d_i (A^{-1})_{ij}
    Ok((0..n).map(|i| (0..n).map(|j| a[i][n + j] * d[i]).collect()).collect())
}

/// One irreducible flag manifold: root system and a node of coefficient one.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CatalogEntry {
    pub series: Series,
    pub rank: usize,
    pub node: usize,
}

impl fmt::Display for CatalogEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}/{}", self.series, self.rank, self.node)
    }
}

/// Known complex dimension of the flag manifold, where tabulated.
pub fn classical_flag_dimension(series: Series, rank: usize, node: usize) -> Option<usize> {
    let n = rank;
    match (series, node) {
        (Series::A, s) if (1..=n).contains(&s) => Some(s * (n + 1 - s)),
        (Series::B, 1) => Some(2 * n - 1),
        (Series::C, s) if s == n => Some(n * (n + 1) / 2),
        (Series::D, 1) => Some(2 * n - 2),
        (Series::D, s) if s + 1 == n || s == n => Some(n * (n - 1) / 2),
        (Series::E, 1) | (Series::E, 6) if n == 6 => Some(16),
        (Series::E, 7) if n == 7 => Some(27),
        _ => None,
    }
}

/// All (series, rank, node) with rank up to `max_rank`.
pub fn catalog(max_rank: usize, caps: Capabilities) -> Vec<CatalogEntry> {
    let mut out = Vec::new();
    let mut series = vec![Series::A, Series::B, Series::C, Series::D];
    if caps.exceptional {
        series.push(Series::E);
    }
    for s in series {
        for rank in 1..=max_rank {
            let Ok(rs) = RootSystem::with_capabilities(s, rank, caps) else { continue };
            for node in rs.irreducible_nodes() {
                out.push(CatalogEntry { series: s, rank, node });
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rational64 {
        Rational64::new(n, d)
    }

    #[test]
    fn a1_data() {
        let rs = RootSystem::new(Series::A, 1).unwrap();
        assert_eq!(rs.sym[0][0], 2);
        assert_eq!(rs.pair(&[1], &[1]), r(1, 2));
        assert_eq!(rs.m, 2);
        assert_eq!(rs.pair(&rs.two_rho(), &rs.fundamental(1)), r(1, 1));
    }

    #[test]
    fn a2_data() {
        let rs = RootSystem::new(Series::A, 2).unwrap();
        assert_eq!(rs.pair(&[1, 0], &[1, 0]), r(2, 3));
        assert_eq!(rs.m, 3);
        assert_eq!(rs.pair(&rs.two_rho(), &rs.fundamental(1)), r(2, 1));
        assert_eq!(rs.pair(&[1, 0], &[0, 0]), r(0, 1));
    }

    #[test]
    fn b2_lengths() {
        let rs = RootSystem::new(Series::B, 2).unwrap();
        assert_eq!(rs.sym[0][0], 4);
        assert_eq!(rs.sym[1][1], 2);
        assert_eq!(rs.m, 1);
    }

    #[test]
    fn nodes() {
        let c3 = RootSystem::new(Series::C, 3).unwrap();
        assert_eq!(c3.highest_root(), &[2, 2, 1]);
        assert_eq!(c3.irreducible_nodes(), vec![3]);
        let d4 = RootSystem::new(Series::D, 4).unwrap();
        assert_eq!(d4.irreducible_nodes(), vec![1, 3, 4]);
        let a3 = RootSystem::new(Series::A, 3).unwrap();
        assert_eq!(a3.irreducible_nodes(), vec![1, 2, 3]);
    }

    #[test]
    fn rejects_bad_ranks() {
        assert!(RootSystem::new(Series::B, 1).is_err());
        assert!(RootSystem::new(Series::D, 3).is_err());
        assert!(RootSystem::new(Series::E, 6).is_err());
        let caps = Capabilities { exceptional: true };
        assert!(RootSystem::with_capabilities(Series::E, 6, caps).is_ok());
        assert!(RootSystem::with_capabilities(Series::E, 8, caps).is_err());
    }

    #[test]
    fn exceptional_highest_roots() {
        let caps = Capabilities { exceptional: true };
        let e6 = RootSystem::with_capabilities(Series::E, 6, caps).unwrap();
        assert_eq!(e6.positive_roots.len(), 36);
        assert_eq!(e6.irreducible_nodes(), vec![1, 6]);
        let e7 = RootSystem::with_capabilities(Series::E, 7, caps).unwrap();
        assert_eq!(e7.positive_roots.len(), 63);
        assert_eq!(e7.irreducible_nodes(), vec![7]);
    }
}
