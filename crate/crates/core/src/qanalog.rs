//! q-Kostant partition function, Lusztig q-analogs of weight multiplicities and
//! graded multiplicities in functions on the nilpotent cone.
//!
//! The variable `q` counts half the cohomological degree: `q^k` sits in degree `2k`.

use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_traits::One;
use rustc_hash::FxHashMap;

use crate::error::{Error, Result};
use crate::rootdata::{RootDatum, Weight};
use crate::QPolynomial;

/// q-analog computations over one root datum, with pure memo tables.
#[derive(Debug)]
pub struct QAnalogs {
    datum: Arc<RootDatum>,
    /// Positive-root indices: non-simple roots first, then the simple roots.
    order: Vec<usize>,
    non_simple: usize,
    partitions: Mutex<FxHashMap<(Weight, usize), QPolynomial>>,
    analogs: Mutex<FxHashMap<(Weight, Weight), QPolynomial>>,
}

impl QAnalogs {
    pub fn new(datum: RootDatum) -> Self {
        Self::from_arc(Arc::new(datum))
    }

    pub fn from_arc(datum: Arc<RootDatum>) -> Self {
        let roots = datum.positive_roots();
        let mut order: Vec<usize> = (0..roots.len()).filter(|&i| roots[i].height() > 1).collect();
        let non_simple = order.len();
        order.extend((0..roots.len()).filter(|&i| roots[i].height() == 1));
        QAnalogs {
            datum,
            order,
            non_simple,
            partitions: Mutex::new(FxHashMap::default()),
            analogs: Mutex::new(FxHashMap::default()),
        }
    }

    pub fn datum(&self) -> &RootDatum {
        &self.datum
    }

    /// `Σ q^{Σ n_α}` over expressions `ν = Σ_{α>0} n_α α`; zero off the root lattice.
    pub fn q_kostant(&self, nu: &Weight) -> QPolynomial {
        match self.datum.root_coords(nu) {
            Some(c) => self.partition(Weight::new(&c), 0),
            None => QPolynomial::zero(),
        }
    }

    /// Partitions of `v` (simple-root coordinates) using roots `order[idx..]`.
    fn partition(&self, v: Weight, idx: usize) -> QPolynomial {
        if v.coords().iter().any(|&x| x < 0) {
            return QPolynomial::zero();
        }
        if idx == self.non_simple {
            // only simple roots remain: the expression is forced
            return QPolynomial::monomial(BigInt::one(), v.coords().iter().sum());
        }
        if let Some(p) = self.partitions.lock().unwrap().get(&(v, idx)) {
            return p.clone();
        }
        let beta = Weight::new(&self.datum.positive_roots()[self.order[idx]].simple_coords);
        let mut out = QPolynomial::zero();
        let mut rest = v;
        let mut n = 0;
        while rest.coords().iter().all(|&x| x >= 0) {
            out += &self.partition(rest, idx + 1).shift(n);
            rest -= beta;
            n += 1;
        }
        self.partitions
            .lock()
            .unwrap()
            .insert((v, idx), out.clone());
        out
    }

    /// `m^λ_μ(q) = Σ_w (−1)^{ℓ(w)} P_q(w(λ+ρ) − (μ+ρ))`.
    pub fn lusztig_q_analog(&self, lambda: &Weight, mu: &Weight) -> Result<QPolynomial> {
        let d = &*self.datum;
        d.check_weight(lambda)?;
        d.check_weight(mu)?;
        if !d.is_dominant(lambda) {
            return Err(Error::domain(format!("weight ({lambda}) is not dominant for {}", d.name)));
        }
        if let Some(p) = self.analogs.lock().unwrap().get(&(*lambda, *mu)) {
            return Ok(p.clone());
        }
        let mut out = QPolynomial::zero();
        if d.in_root_lattice(&(*lambda - *mu)) {
            for w in d.weyl_group() {
                let v = w.apply(lambda) + d.w_rho_minus_rho(w) - *mu;
                let p = self.q_kostant(&v);
                if w.sign() > 0 {
                    out += &p;
                } else {
                    out = &out - &p;
                }
            }
        }
        self.analogs
            .lock()
            .unwrap()
            .insert((*lambda, *mu), out.clone());
        Ok(out)
    }

    /// `q^{⟨w(λ)−λ, ρ̌⟩} · m^ν_{w(λ)}(q)` with `w(λ)` the dominant conjugate of `λ`.
    pub fn p_bk_polynomial(&self, nu: &Weight, lambda: &Weight) -> Result<QPolynomial> {
        let d = &*self.datum;
        d.check_weight(lambda)?;
        let (_, dom) = d.dominant_conjugate(lambda);
        let m = self.lusztig_q_analog(nu, &dom)?;
        if m.is_zero() {
            return Ok(m);
        }
        Ok(m.shift(d.pair_rho_check(&(dom - *lambda))))
    }

    /// Graded multiplicity `m^λ_0(q)` of `V_λ` in `C[N]`.
    pub fn graded_mult_in_nilcone(&self, lambda: &Weight) -> Result<QPolynomial> {
        self.lusztig_q_analog(lambda, &self.datum.zero())
    }

    /// Dominant weights of the root lattice that can contribute to `C[N]` below `q^{n+1}`:
    /// `V_λ` occurs in degree `k` only if `⟨λ, 2ρ̌⟩ ≤ k ⟨θ, 2ρ̌⟩`.
    pub fn nilcone_candidates(&self, n: u32) -> Result<Vec<Weight>> {
        let d = &*self.datum;
        let theta = d
            .highest_root()
            .ok_or_else(|| Error::domain("the nilpotent cone of a torus is a point"))?;
        let bound = i64::from(n) * d.pair_2rho_check(&theta);
        // ⟨ϖ_i, 2ρ̌⟩ is the sum of the α̌_i-coordinates of the positive coroots
        let fundamental_heights: Vec<i64> = (0..d.rank)
            .map(|i| d.positive_roots().iter().map(|r| r.coroot_coords[i]).sum())
            .collect();
        let mut out = Vec::new();
        let mut labels = vec![0i64; d.rank];
        enumerate_labels(&fundamental_heights, bound, 0, &mut labels, &mut |l| {
            if let Ok(lambda) = d.from_dynkin(l) {
                if d.in_root_lattice(&lambda) {
                    out.push(lambda);
                }
            }
        });
        out.sort_by(|a, b| d.basis_order(a, b));
        Ok(out)
    }

    /// Hilbert series of `C[N]` through `q^n` as `Σ_λ dim V_λ · m^λ_0(q)`.
    pub fn hilbert_series_nilcone(&self, n: u32) -> Result<QPolynomial> {
        let d = &*self.datum;
        let theta_height = d.pair_2rho_check(&d.highest_root().expect("checked by candidates"));
        let mut total = QPolynomial::zero();
        for lambda in self.nilcone_candidates(n)? {
            let m = self.graded_mult_in_nilcone(&lambda)?;
            if let Some(lo) = m.min_exp() {
                if lo * theta_height < d.pair_2rho_check(&lambda) {
                    return Err(Error::domain(format!(
                        "degree bound violated: m^({lambda})_0 starts at q^{lo}"
                    )));
                }
            }
            let dim = BigInt::from(d.weyl_dimension(&lambda));
            total += &m.truncate(i64::from(n)).scale(&dim);
        }
        Ok(total)
    }
}

/// Label vectors `l ≥ 0` with `Σ l_i h_i ≤ bound`.
fn enumerate_labels(heights: &[i64], bound: i64, i: usize, labels: &mut Vec<i64>, f: &mut impl FnMut(&[i64])) {
    if i == heights.len() {
        f(labels);
        return;
    }
    let mut k = 0;
    while k * heights[i] <= bound {
        labels[i] = k;
        enumerate_labels(heights, bound - k * heights[i], i + 1, labels, f);
        k += 1;
    }
    labels[i] = 0;
}

/// `Π_i (1 − q^{m_i+1}) / (1 − q)^{dim}` through `q^n`.
pub fn complete_intersection_series(exponents: &[u32], dim: usize, n: u32) -> QPolynomial {
    let mut p = QPolynomial::one();
    for &m in exponents {
        let factor = &QPolynomial::one() - &QPolynomial::monomial(BigInt::one(), i64::from(m) + 1);
        p = (&p * &factor).truncate(i64::from(n));
    }
    for _ in 0..dim {
        p = p.div_one_minus_power(1, i64::from(n));
    }
    p
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::repring::RepRing;
    use crate::rootdata::PRESETS;
    use std::collections::BTreeMap;

    fn qa(name: &str) -> QAnalogs {
        QAnalogs::new(RootDatum::preset(name).unwrap())
    }

    fn poly(terms: &[(i64, i64)]) -> QPolynomial {
        QPolynomial::from_terms(terms.iter().map(|&(e, c)| (e, BigInt::from(c))))
    }

    fn w(c: &[i64]) -> Weight {
        Weight::new(c)
    }

    /// Partition function by exhaustive enumeration of multiplicity vectors.
    fn kostant_oracle(d: &RootDatum, v: &[i64]) -> QPolynomial {
        let roots: Vec<Vec<i64>> = d.positive_roots().iter().map(|r| r.simple_coords.clone()).collect();
        let mut out = QPolynomial::zero();
        fn go(roots: &[Vec<i64>], i: usize, rest: Vec<i64>, used: i64, out: &mut QPolynomial) {
            if rest.iter().any(|&x| x < 0) {
                return;
            }
            if i == roots.len() {
                if rest.iter().all(|&x| x == 0) {
                    out.add_term(used, BigInt::one());
                }
                return;
            }
            let mut r = rest;
            let mut n = 0;
            while r.iter().all(|&x| x >= 0) {
                go(roots, i + 1, r.clone(), used + n, out);
                for (a, b) in r.iter_mut().zip(&roots[i]) {
                    *a -= b;
                }
                n += 1;
            }
        }
        go(&roots, 0, v.to_vec(), 0, &mut out);
        out
    }

    /// Exponents from the dual partition of the positive-root height counts.
    fn exponents_from_heights(d: &RootDatum) -> Vec<u32> {
        let mut count: BTreeMap<i64, usize> = BTreeMap::new();
        for r in d.positive_roots() {
            *count.entry(r.height()).or_insert(0) += 1;
        }
        let mut out = Vec::new();
        let max = *count.keys().last().unwrap();
        for h in 1..=max {
            let here = count.get(&h).copied().unwrap_or(0);
            let next = count.get(&(h + 1)).copied().unwrap_or(0);
            out.extend(std::iter::repeat(h as u32).take(here - next));
        }
        out
    }

    #[test]
    fn q_kostant_examples() {
        let a2 = qa("A2-sc");
        assert_eq!(a2.q_kostant(&w(&[0, 0])), QPolynomial::one());
        let theta = a2.datum().highest_root().unwrap();
        assert_eq!(a2.q_kostant(&theta), poly(&[(1, 1), (2, 1)]));
        let a1 = qa("A1-sc");
        assert_eq!(a1.q_kostant(&w(&[2])), QPolynomial::q());
        assert!(a1.q_kostant(&w(&[1])).is_zero());
    }

    #[test]
    fn q_kostant_matches_enumeration() {
        for name in ["A2-sc", "B2-sc", "G2", "A3-sc"] {
            let q = qa(name);
            let d = q.datum();
            for a in 0..5 {
                for b in 0..5 {
                    let mut c = vec![a, b];
                    c.resize(d.rank, 2);
                    let mut v = d.zero();
                    for (s, k) in d.simple_roots.iter().zip(&c) {
                        v += s.scale(*k);
                    }
                    assert_eq!(q.q_kostant(&v), kostant_oracle(d, &c), "{name} {c:?}");
                }
            }
        }
    }

    #[test]
    fn lusztig_examples() {
        let a1 = qa("A1-adj");
        let alpha = a1.datum().simple_roots[0];
        assert_eq!(a1.lusztig_q_analog(&alpha, &a1.datum().zero()).unwrap(), QPolynomial::q());
        let a2 = qa("A2-sc");
        assert_eq!(a2.lusztig_q_analog(&w(&[1, 1]), &w(&[0, 0])).unwrap(), poly(&[(1, 1), (2, 1)]));
        assert_eq!(a2.lusztig_q_analog(&w(&[3, 1]), &w(&[3, 1])).unwrap(), QPolynomial::one());
        assert!(a2.lusztig_q_analog(&w(&[-1, 0]), &w(&[0, 0])).is_err());
    }

    #[test]
    fn p_bk_examples() {
        let a1 = qa("A1-adj");
        let alpha = a1.datum().simple_roots[0];
        assert_eq!(a1.p_bk_polynomial(&alpha, &-alpha).unwrap(), poly(&[(2, 1)]));
        assert_eq!(a1.p_bk_polynomial(&alpha, &alpha).unwrap(), QPolynomial::one());
        let a2 = qa("A2-sc");
        assert_eq!(a2.p_bk_polynomial(&w(&[1, 1]), &w(&[-1, -1])).unwrap(), poly(&[(4, 1)]));
    }

    #[test]
    fn p_bk_shift_identity() {
        let q = qa("B2-sc");
        let d = q.datum();
        let nu = w(&[1, 2]);
        let ring = RepRing::new(d.clone());
        for (x, _) in &ring.character(&nu).unwrap().full {
            let (_, dom) = d.dominant_conjugate(x);
            let lhs = q.p_bk_polynomial(&nu, x).unwrap();
            let rhs = q.p_bk_polynomial(&nu, &dom).unwrap().shift(d.pair_rho_check(&(dom - *x)));
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn specialization_and_positivity() {
        for name in PRESETS {
            let q = qa(name);
            let d = q.datum();
            let ring = RepRing::new(d.clone());
            for a in 0..3 {
                for b in 0..3 {
                    let mut labels = vec![a, b];
                    labels.resize(d.rank, 1);
                    labels.truncate(d.rank);
                    let Ok(lambda) = d.from_dynkin(&labels) else { continue };
                    let ch = ring.character(&lambda).unwrap();
                    for (mu, m) in &ch.dominant {
                        let p = q.lusztig_q_analog(&lambda, mu).unwrap();
                        assert_eq!(p.eval_one(), BigInt::from(*m), "{name} {lambda} {mu}");
                        assert!(p.has_nonnegative_coeffs());
                    }
                }
            }
        }
    }

    #[test]
    fn generalized_exponents_of_adjoint() {
        let a2 = qa("A2-adj");
        let theta = a2.datum().highest_root().unwrap();
        assert_eq!(a2.graded_mult_in_nilcone(&theta).unwrap(), poly(&[(1, 1), (2, 1)]));
        assert_eq!(a2.graded_mult_in_nilcone(&a2.datum().zero()).unwrap(), QPolynomial::one());
        let b2 = qa("B2-adj");
        let theta = b2.datum().highest_root().unwrap();
        assert_eq!(b2.graded_mult_in_nilcone(&theta).unwrap(), poly(&[(1, 1), (3, 1)]));
    }

    #[test]
    fn hilbert_series_routes() {
        let a1 = qa("A1-adj");
        assert_eq!(
            a1.hilbert_series_nilcone(5).unwrap(),
            poly(&[(0, 1), (1, 3), (2, 5), (3, 7), (4, 9), (5, 11)])
        );
        for name in ["A2-adj", "B2-adj", "G2"] {
            let q = qa(name);
            let d = q.datum();
            let dim = d.rank + 2 * d.positive_roots().len();
            let ci = complete_intersection_series(&exponents_from_heights(d), dim, 8);
            assert_eq!(q.hilbert_series_nilcone(8).unwrap(), ci, "{name}");
            assert_eq!(ci.coeff(0), BigInt::one());
        }
    }
}
