//! Root data for the supported presets, their Levi subdata, and Weyl groups.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::ops::{Add, AddAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::linalg::Matrix;

/// Largest lattice dimension of any preset.
pub const MAX_DIM: usize = 4;

/// Supported preset identifiers.
pub const PRESETS: &[&str] = &[
    "A1-sc", "A1-adj", "A2-sc", "A2-adj", "B2-sc", "B2-adj", "G2", "A3-sc",
];

/// A lattice vector. Coordinates beyond `len` are always zero, so the derived
/// orderings and hashes are those of the coordinate slice.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Weight {
    len: u8,
    c: [i64; MAX_DIM],
}

impl Weight {
    pub fn new(coords: &[i64]) -> Self {
        assert!(coords.len() <= MAX_DIM, "weight dimension exceeds {MAX_DIM}");
        let mut c = [0; MAX_DIM];
        c[..coords.len()].copy_from_slice(coords);
        Weight {
            len: coords.len() as u8,
            c,
        }
    }

    pub fn zero(dim: usize) -> Self {
        Self::new(&vec![0; dim])
    }

    /// The `i`-th standard basis vector.
    pub fn unit(dim: usize, i: usize) -> Self {
        let mut w = Self::zero(dim);
        w.c[i] = 1;
        w
    }

    pub fn coords(&self) -> &[i64] {
        &self.c[..self.len as usize]
    }

    pub fn dim(&self) -> usize {
        self.len as usize
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|&x| x == 0)
    }

    pub fn dot(&self, other: &Weight) -> i64 {
        debug_assert_eq!(self.len, other.len);
        self.c.iter().zip(&other.c).map(|(a, b)| a * b).sum()
    }

    pub fn scale(&self, k: i64) -> Weight {
        let mut w = *self;
        w.c.iter_mut().for_each(|x| *x *= k);
        w
    }

    /// Exact division of every coordinate; panics if not divisible.
    pub fn div_exact(&self, k: i64) -> Weight {
        let mut w = *self;
        for x in w.c.iter_mut() {
            assert!(*x % k == 0, "coordinate {x} not divisible by {k}");
            *x /= k;
        }
        w
    }
}

impl Add for Weight {
    type Output = Weight;

    fn add(mut self, rhs: Weight) -> Weight {
        self += rhs;
        self
    }
}

impl AddAssign for Weight {
    fn add_assign(&mut self, rhs: Weight) {
        debug_assert_eq!(self.len, rhs.len);
        for (a, b) in self.c.iter_mut().zip(rhs.c) {
            *a += b;
        }
    }
}

impl Sub for Weight {
    type Output = Weight;

    fn sub(mut self, rhs: Weight) -> Weight {
        self -= rhs;
        self
    }
}

impl SubAssign for Weight {
    fn sub_assign(&mut self, rhs: Weight) {
        debug_assert_eq!(self.len, rhs.len);
        for (a, b) in self.c.iter_mut().zip(rhs.c) {
            *a -= b;
        }
    }
}

impl Neg for Weight {
    type Output = Weight;

    fn neg(self) -> Weight {
        self.scale(-1)
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords().iter().map(|x| x.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl fmt::Debug for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({self})")
    }
}

impl Serialize for Weight {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.dim()))?;
        for x in self.coords() {
            seq.serialize_element(x)?;
        }
        seq.end()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum LatticeKind {
    SimplyConnected,
    Adjoint,
    TorusFactor,
}

/// A positive root together with its coroot.
#[derive(Clone, Debug)]
pub struct Root {
    pub root: Weight,
    pub coroot: Weight,
    /// Coordinates of the root in the simple roots.
    pub simple_coords: Vec<i64>,
    /// Coordinates of the coroot in the simple coroots.
    pub coroot_coords: Vec<i64>,
}

impl Root {
    pub fn height(&self) -> i64 {
        self.simple_coords.iter().sum()
    }

    /// `⟨ρ, β̌⟩`, the height of the coroot.
    pub fn coroot_height(&self) -> i64 {
        self.coroot_coords.iter().sum()
    }
}

/// A Weyl group element: a reduced word `s_{i1} ... s_{ik}` and its matrix on
/// lattice coordinates (acting on column vectors).
#[derive(Clone, Debug)]
pub struct WeylElement {
    pub word: Vec<usize>,
    matrix: Vec<i64>,
    dim: usize,
}

impl WeylElement {
    pub fn length(&self) -> usize {
        self.word.len()
    }

    pub fn sign(&self) -> i64 {
        if self.word.len() % 2 == 0 {
            1
        } else {
            -1
        }
    }

    pub fn is_identity(&self) -> bool {
        self.word.is_empty()
    }

    pub fn apply(&self, x: &Weight) -> Weight {
        let n = self.dim;
        let mut out = [0i64; MAX_DIM];
        for (r, o) in out.iter_mut().enumerate().take(n) {
            *o = (0..n).map(|c| self.matrix[r * n + c] * x.c[c]).sum();
        }
        Weight { len: n as u8, c: out }
    }

    pub fn matrix(&self) -> Matrix<i64> {
        Matrix::from_fn(self.dim, self.dim, |r, c| self.matrix[r * self.dim + c])
    }
}

/// Integer solver for `Σ c_i v_i = x` with linearly independent `v_i`.
#[derive(Clone, Debug)]
struct LatticeSolver {
    vectors: Vec<Weight>,
    pivots: Vec<usize>,
    /// `det · inverse` of the pivot-row submatrix.
    adjugate: Vec<Vec<i64>>,
    det: i64,
}

impl LatticeSolver {
    fn new(vectors: &[Weight], dim: usize) -> Self {
        let k = vectors.len();
        let rat = |x: i64| BigRational::from_integer(BigInt::from(x));
        let transposed = Matrix::from_fn(k, dim, |i, j| rat(vectors[i].c[j]));
        let pivots = transposed.echelon().pivots;
        assert_eq!(pivots.len(), k, "vectors are not linearly independent");
        let square = Matrix::from_fn(k, k, |r, c| rat(vectors[c].c[pivots[r]]));
        let mut aug = Matrix::zeros(k, 2 * k);
        for r in 0..k {
            for c in 0..k {
                aug[(r, c)] = square[(r, c)].clone();
            }
            aug[(r, k + r)] = BigRational::one();
        }
        let inverse = aug.echelon().reduced.block(0, k, k, k);
        let det = Matrix::from_fn(k, k, |r, c| vectors[c].c[pivots[r]]).determinant_fraction_free();
        let det = if k == 0 { 1 } else { det };
        let adjugate = (0..k)
            .map(|r| {
                (0..k)
                    .map(|c| {
                        let v = &inverse[(r, c)] * rat(det);
                        assert!(v.is_integer());
                        v.to_integer().to_i64().expect("adjugate entry fits i64")
                    })
                    .collect()
            })
            .collect();
        LatticeSolver {
            vectors: vectors.to_vec(),
            pivots,
            adjugate,
            det,
        }
    }

    fn solve(&self, x: &Weight) -> Option<Vec<i64>> {
        let k = self.vectors.len();
        let mut coeffs = Vec::with_capacity(k);
        for r in 0..k {
            let num: i64 = (0..k).map(|c| self.adjugate[r][c] * x.c[self.pivots[c]]).sum();
            if num % self.det != 0 {
                return None;
            }
            coeffs.push(num / self.det);
        }
        let mut back = Weight::zero(x.dim());
        for (v, &c) in self.vectors.iter().zip(&coeffs) {
            back += v.scale(c);
        }
        (back == *x).then_some(coeffs)
    }
}

/// A root datum with its positive system and Weyl group materialized.
/// The pairing between weights and coweights is the coordinate dot product.
#[derive(Clone, Debug)]
pub struct RootDatum {
    pub name: String,
    pub rank: usize,
    pub weight_dim: usize,
    pub simple_roots: Vec<Weight>,
    pub simple_coroots: Vec<Weight>,
    pub lattice_kind: LatticeKind,
    cartan: Vec<Vec<i64>>,
    positive: Vec<Root>,
    weyl: Vec<WeylElement>,
    two_rho: Weight,
    two_rho_check: Weight,
    root_solver: LatticeSolver,
    dynkin_solver: Option<LatticeSolver>,
}

struct PresetData {
    cartan: Vec<Vec<i64>>,
    kind: LatticeKind,
    positive_roots: usize,
    weyl_order: usize,
}

fn preset_data(name: &str) -> Option<PresetData> {
    let a1 = vec![vec![2]];
    let a2 = vec![vec![2, -1], vec![-1, 2]];
    let b2 = vec![vec![2, -2], vec![-1, 2]];
    let g2 = vec![vec![2, -1], vec![-3, 2]];
    let a3 = vec![vec![2, -1, 0], vec![-1, 2, -1], vec![0, -1, 2]];
    let sc = LatticeKind::SimplyConnected;
    let adj = LatticeKind::Adjoint;
    let (cartan, kind, positive_roots, weyl_order) = match name {
        "A1-sc" => (a1, sc, 1, 2),
        "A1-adj" => (a1, adj, 1, 2),
        "A2-sc" => (a2, sc, 3, 6),
        "A2-adj" => (a2, adj, 3, 6),
        "B2-sc" => (b2, sc, 4, 8),
        "B2-adj" => (b2, adj, 4, 8),
        "G2" => (g2, sc, 6, 12),
        "A3-sc" => (a3, sc, 6, 24),
        _ => return None,
    };
    Some(PresetData {
        cartan,
        kind,
        positive_roots,
        weyl_order,
    })
}

/// Generous bound on root-system size; exceeding it means the Cartan matrix is not of finite type.
const ROOT_CAP: usize = 512;

impl RootDatum {
    /// Build and validate a preset.
    pub fn preset(name: &str) -> Result<RootDatum> {
        let data = preset_data(name).ok_or_else(|| {
            Error::Config(format!(
                "unknown preset '{name}'; supported presets: {}",
                PRESETS.join(", ")
            ))
        })?;
        let n = data.cartan.len();
        let (roots, coroots): (Vec<Weight>, Vec<Weight>) = match data.kind {
            LatticeKind::SimplyConnected => (
                (0..n).map(|i| Weight::new(&data.cartan[i])).collect(),
                (0..n).map(|j| Weight::unit(n, j)).collect(),
            ),
            _ => (
                (0..n).map(|i| Weight::unit(n, i)).collect(),
                (0..n)
                    .map(|j| Weight::new(&(0..n).map(|i| data.cartan[i][j]).collect::<Vec<_>>()))
                    .collect(),
            ),
        };
        let d = Self::from_simple(name.to_string(), n, roots, coroots, data.kind)?;
        if d.positive.len() != data.positive_roots || d.weyl.len() != data.weyl_order {
            return Err(Error::Config(format!(
                "preset {name}: found {} positive roots and |W| = {}, expected {} and {}",
                d.positive.len(),
                d.weyl.len(),
                data.positive_roots,
                data.weyl_order
            )));
        }
        Ok(d)
    }

    fn from_simple(
        name: String,
        weight_dim: usize,
        simple_roots: Vec<Weight>,
        simple_coroots: Vec<Weight>,
        lattice_kind: LatticeKind,
    ) -> Result<RootDatum> {
        let rank = simple_roots.len();
        let cartan: Vec<Vec<i64>> = (0..rank)
            .map(|i| (0..rank).map(|j| simple_roots[i].dot(&simple_coroots[j])).collect())
            .collect();
        validate_cartan(&cartan)?;
        let positive = positive_system(&cartan, &simple_roots, &simple_coroots, weight_dim)?;
        let mut two_rho = Weight::zero(weight_dim);
        let mut two_rho_check = Weight::zero(weight_dim);
        for r in &positive {
            two_rho += r.root;
            two_rho_check += r.coroot;
        }
        let weyl = weyl_group(&simple_roots, &simple_coroots, weight_dim);
        let root_solver = LatticeSolver::new(&simple_roots, weight_dim);
        let dynkin_solver = (rank == weight_dim).then(|| {
            let fundamental_dual: Vec<Weight> = (0..rank)
                .map(|j| Weight::new(&(0..rank).map(|i| simple_coroots[i].c[j]).collect::<Vec<_>>()))
                .collect();
            LatticeSolver::new(&fundamental_dual, weight_dim)
        });
        let d = RootDatum {
            name,
            rank,
            weight_dim,
            simple_roots,
            simple_coroots,
            lattice_kind,
            cartan,
            positive,
            weyl,
            two_rho,
            two_rho_check,
            root_solver,
            dynkin_solver,
        };
        d.check_gram()?;
        Ok(d)
    }

    /// The W-invariant form on simple roots must be positive definite.
    fn check_gram(&self) -> Result<()> {
        let gram = Matrix::from_fn(self.rank, self.rank, |i, j| {
            self.invariant_form(&self.simple_roots[i], &self.simple_roots[j])
        });
        for k in 1..=self.rank {
            if gram.block(0, 0, k, k).determinant_fraction_free() <= 0 {
                return Err(Error::Config(format!("{}: Cartan matrix is not of finite type", self.name)));
            }
        }
        Ok(())
    }

    /// The Levi subdatum on the given simple-root indices (0-based), on the same lattice.
    pub fn levi(&self, subset: &[usize]) -> Result<RootDatum> {
        let mut idx = subset.to_vec();
        idx.sort_unstable();
        idx.dedup();
        if let Some(&bad) = idx.iter().find(|&&i| i >= self.rank) {
            return Err(Error::domain(format!(
                "simple-root index {} out of range 1..={}",
                bad + 1,
                self.rank
            )));
        }
        let kind = if idx.len() == self.rank {
            self.lattice_kind
        } else {
            LatticeKind::TorusFactor
        };
        let labels: Vec<String> = idx.iter().map(|i| (i + 1).to_string()).collect();
        Self::from_simple(
            format!("{}[{}]", self.name, labels.join(",")),
            self.weight_dim,
            idx.iter().map(|&i| self.simple_roots[i]).collect(),
            idx.iter().map(|&i| self.simple_coroots[i]).collect(),
            kind,
        )
    }

    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    /// Positive roots ordered by height, then by simple-root coordinates descending.
    pub fn positive_roots(&self) -> &[Root] {
        &self.positive
    }

    /// Weyl group elements in breadth-first (length-nondecreasing) order.
    pub fn weyl_group(&self) -> &[WeylElement] {
        &self.weyl
    }

    pub fn longest_element(&self) -> &WeylElement {
        self.weyl.last().expect("Weyl group is nonempty")
    }

    pub fn two_rho(&self) -> Weight {
        self.two_rho
    }

    pub fn two_rho_check(&self) -> Weight {
        self.two_rho_check
    }

    pub fn zero(&self) -> Weight {
        Weight::zero(self.weight_dim)
    }

    pub fn check_weight(&self, x: &Weight) -> Result<()> {
        if x.dim() != self.weight_dim {
            return Err(Error::domain(format!(
                "weight {x} has {} coordinates, {} expects {}",
                x.dim(),
                self.name,
                self.weight_dim
            )));
        }
        Ok(())
    }

    /// `⟨λ, α̌_i⟩`.
    pub fn pair_simple(&self, x: &Weight, i: usize) -> i64 {
        x.dot(&self.simple_coroots[i])
    }

    /// Dynkin labels `(⟨λ, α̌_i⟩)_i`.
    pub fn dynkin(&self, x: &Weight) -> Vec<i64> {
        (0..self.rank).map(|i| self.pair_simple(x, i)).collect()
    }

    /// The lattice weight with the given Dynkin labels. Requires a semisimple
    /// datum; fails when the weight is not in the lattice.
    pub fn from_dynkin(&self, labels: &[i64]) -> Result<Weight> {
        let solver = self
            .dynkin_solver
            .as_ref()
            .ok_or_else(|| Error::domain(format!("{} has a central torus; Dynkin labels do not determine weights", self.name)))?;
        if labels.len() != self.rank {
            return Err(Error::domain(format!(
                "expected {} Dynkin labels for {}, got {}",
                self.rank,
                self.name,
                labels.len()
            )));
        }
        let target = Weight::new(labels);
        solver
            .solve(&target)
            .map(|c| Weight::new(&c))
            .ok_or_else(|| Error::domain(format!("Dynkin labels ({target}) are not in the weight lattice of {}", self.name)))
    }

    pub fn is_dominant(&self, x: &Weight) -> bool {
        (0..self.rank).all(|i| self.pair_simple(x, i) >= 0)
    }

    /// `⟨λ, 2ρ̌⟩ = Σ_{α>0} ⟨λ, α̌⟩`.
    pub fn pair_2rho_check(&self, x: &Weight) -> i64 {
        x.dot(&self.two_rho_check)
    }

    /// `⟨λ, ρ̌⟩` for `λ` in the root lattice.
    pub fn pair_rho_check(&self, x: &Weight) -> i64 {
        let v = self.pair_2rho_check(x);
        assert!(v % 2 == 0, "⟨{x}, 2ρ̌⟩ = {v} is odd");
        v / 2
    }

    /// Coordinates in the simple roots, or `None` outside the root lattice.
    pub fn root_coords(&self, x: &Weight) -> Option<Vec<i64>> {
        self.root_solver.solve(x)
    }

    pub fn in_root_lattice(&self, x: &Weight) -> bool {
        self.root_coords(x).is_some()
    }

    /// `s_i(x) = x − ⟨x, α̌_i⟩ α_i`.
    pub fn reflect(&self, x: &Weight, i: usize) -> Weight {
        *x - self.simple_roots[i].scale(self.pair_simple(x, i))
    }

    /// Dominant image by iterated simple reflections, with the parity of the
    /// number of reflections used.
    pub fn to_dominant(&self, x: &Weight) -> (Weight, i64) {
        let mut y = *x;
        let mut sign = 1;
        'outer: loop {
            for i in 0..self.rank {
                if self.pair_simple(&y, i) < 0 {
                    y = self.reflect(&y, i);
                    sign = -sign;
                    continue 'outer;
                }
            }
            return (y, sign);
        }
    }

    /// The element of minimal length (first in breadth-first order) carrying
    /// `x` to a dominant weight, and that weight.
    pub fn dominant_conjugate(&self, x: &Weight) -> (&WeylElement, Weight) {
        self.weyl
            .iter()
            .find_map(|w| {
                let y = w.apply(x);
                self.is_dominant(&y).then_some((w, y))
            })
            .expect("every W-orbit meets the dominant chamber")
    }

    /// `w(ρ) − ρ`, always a lattice vector.
    pub fn w_rho_minus_rho(&self, w: &WeylElement) -> Weight {
        (w.apply(&self.two_rho) - self.two_rho).div_exact(2)
    }

    /// The W-orbit of `x`, sorted.
    pub fn orbit(&self, x: &Weight) -> Vec<Weight> {
        let mut out: Vec<Weight> = self.weyl.iter().map(|w| w.apply(x)).collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    /// `B(x, y) = Σ_{β̌>0} ⟨x, β̌⟩⟨y, β̌⟩`, a W-invariant form on weights.
    pub fn invariant_form(&self, x: &Weight, y: &Weight) -> i64 {
        self.positive
            .iter()
            .map(|r| x.dot(&r.coroot) * y.dot(&r.coroot))
            .sum()
    }

    /// Weyl dimension formula `Π_{β>0} ⟨λ+ρ, β̌⟩ / ⟨ρ, β̌⟩`.
    pub fn weyl_dimension(&self, lambda: &Weight) -> u128 {
        let mut num = BigInt::one();
        let mut den = BigInt::one();
        for r in &self.positive {
            let h = r.coroot_height();
            num *= BigInt::from(lambda.dot(&r.coroot) + h);
            den *= BigInt::from(h);
        }
        assert!((&num % &den).is_zero());
        (num / den).to_u128().expect("dimension is positive and fits u128")
    }

    /// The highest root of an irreducible datum (last in the positive-root order).
    pub fn highest_root(&self) -> Option<Weight> {
        self.positive.last().map(|r| r.root)
    }

    /// `−w_0(λ)`, the highest weight of the dual representation.
    pub fn dual_weight(&self, lambda: &Weight) -> Weight {
        -self.longest_element().apply(lambda)
    }

    /// Order on weights used for bases: `⟨·, 2ρ̌⟩` descending, then coordinates ascending.
    pub fn basis_order(&self, a: &Weight, b: &Weight) -> std::cmp::Ordering {
        self.pair_2rho_check(b)
            .cmp(&self.pair_2rho_check(a))
            .then_with(|| a.cmp(b))
    }
}

fn validate_cartan(c: &[Vec<i64>]) -> Result<()> {
    let n = c.len();
    for i in 0..n {
        if c[i][i] != 2 {
            return Err(Error::Config("Cartan diagonal must be 2".into()));
        }
        for j in 0..n {
            if i != j && (c[i][j] > 0 || (c[i][j] == 0) != (c[j][i] == 0)) {
                return Err(Error::Config("invalid off-diagonal Cartan entries".into()));
            }
        }
    }
    Ok(())
}

/// Closure of the simple (root, coroot) pairs under simple reflections,
/// computed in simple coordinates.
fn positive_system(
    cartan: &[Vec<i64>],
    simple_roots: &[Weight],
    simple_coroots: &[Weight],
    dim: usize,
) -> Result<Vec<Root>> {
    let n = cartan.len();
    let unit = |i: usize| {
        let mut v = vec![0i64; n];
        v[i] = 1;
        v
    };
    let mut seen: HashMap<Vec<i64>, Vec<i64>> = HashMap::new();
    let mut queue = VecDeque::new();
    for i in 0..n {
        seen.insert(unit(i), unit(i));
        queue.push_back((unit(i), unit(i)));
    }
    while let Some((b, c)) = queue.pop_front() {
        for j in 0..n {
            let pair_b: i64 = (0..n).map(|k| b[k] * cartan[k][j]).sum();
            let pair_c: i64 = (0..n).map(|k| cartan[j][k] * c[k]).sum();
            let mut b2 = b.clone();
            b2[j] -= pair_b;
            let mut c2 = c.clone();
            c2[j] -= pair_c;
            if !seen.contains_key(&b2) {
                if seen.len() >= ROOT_CAP {
                    return Err(Error::Config("Cartan matrix is not of finite type".into()));
                }
                seen.insert(b2.clone(), c2.clone());
                queue.push_back((b2, c2));
            }
        }
    }
    let mut positive: Vec<(Vec<i64>, Vec<i64>)> = seen
        .into_iter()
        .filter(|(b, _)| b.iter().all(|&x| x >= 0))
        .collect();
    positive.sort_by(|(a, _), (b, _)| {
        let ha: i64 = a.iter().sum();
        let hb: i64 = b.iter().sum();
        ha.cmp(&hb).then_with(|| b.cmp(a))
    });
    let combine = |basis: &[Weight], coeffs: &[i64]| {
        let mut w = Weight::zero(dim);
        for (v, &k) in basis.iter().zip(coeffs) {
            w += v.scale(k);
        }
        w
    };
    Ok(positive
        .into_iter()
        .map(|(b, c)| Root {
            root: combine(simple_roots, &b),
            coroot: combine(simple_coroots, &c),
            simple_coords: b,
            coroot_coords: c,
        })
        .collect())
}

fn weyl_group(simple_roots: &[Weight], simple_coroots: &[Weight], dim: usize) -> Vec<WeylElement> {
    let reflection = |i: usize| -> Vec<i64> {
        let mut m = vec![0i64; dim * dim];
        for r in 0..dim {
            for c in 0..dim {
                m[r * dim + c] = i64::from(r == c) - simple_roots[i].c[r] * simple_coroots[i].c[c];
            }
        }
        m
    };
    let gens: Vec<Vec<i64>> = (0..simple_roots.len()).map(reflection).collect();
    let identity = WeylElement {
        word: vec![],
        matrix: (0..dim * dim).map(|k| i64::from(k / dim == k % dim)).collect(),
        dim,
    };
    let mut seen: HashMap<Vec<i64>, usize> = HashMap::new();
    seen.insert(identity.matrix.clone(), 0);
    let mut elements = vec![identity];
    let mut head = 0;
    while head < elements.len() {
        let current = elements[head].clone();
        head += 1;
        for (i, g) in gens.iter().enumerate() {
            let mut m = vec![0i64; dim * dim];
            for r in 0..dim {
                for c in 0..dim {
                    m[r * dim + c] = (0..dim).map(|k| current.matrix[r * dim + k] * g[k * dim + c]).sum();
                }
            }
            if !seen.contains_key(&m) {
                seen.insert(m.clone(), elements.len());
                let mut word = current.word.clone();
                word.push(i);
                elements.push(WeylElement { word, matrix: m, dim });
            }
        }
    }
    elements
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    fn all() -> Vec<RootDatum> {
        PRESETS.iter().map(|p| RootDatum::preset(p).unwrap()).collect()
    }

    /// Weyl group as the permutation group generated by simple reflections on the full root set.
    fn weyl_order_by_permutations(d: &RootDatum) -> usize {
        let mut roots: Vec<Weight> = d.positive_roots().iter().map(|r| r.root).collect();
        roots.extend(d.positive_roots().iter().map(|r| -r.root));
        roots.sort();
        let index = |x: &Weight| roots.binary_search(x).unwrap();
        let gens: Vec<Vec<usize>> = (0..d.rank)
            .map(|i| roots.iter().map(|x| index(&d.reflect(x, i))).collect())
            .collect();
        let id: Vec<usize> = (0..roots.len()).collect();
        let mut seen = BTreeSet::from([id.clone()]);
        let mut frontier = vec![id];
        while let Some(p) = frontier.pop() {
            for g in &gens {
                let q: Vec<usize> = p.iter().map(|&k| g[k]).collect();
                if seen.insert(q.clone()) {
                    frontier.push(q);
                }
            }
        }
        seen.len()
    }

    #[test]
    fn unknown_preset_names_supported_ones() {
        let err = RootDatum::preset("E8").unwrap_err();
        assert!(matches!(err, Error::Config(ref m) if m.contains("A1-sc") && m.contains("G2")));
    }

    #[test]
    fn a1_presets() {
        let sc = RootDatum::preset("A1-sc").unwrap();
        assert_eq!(sc.positive_roots().len(), 1);
        let a = &sc.positive_roots()[0];
        assert_eq!(a.root.dot(&a.coroot), 2);
        let adj = RootDatum::preset("A1-adj").unwrap();
        assert!(adj.from_dynkin(&[1]).is_err());
        assert_eq!(adj.from_dynkin(&[2]).unwrap(), adj.simple_roots[0]);
        assert_eq!(adj.lattice_kind, LatticeKind::Adjoint);
    }

    #[test]
    fn positive_root_orders() {
        let a2 = RootDatum::preset("A2-sc").unwrap();
        let coords: Vec<Vec<i64>> = a2.positive_roots().iter().map(|r| r.simple_coords.clone()).collect();
        assert_eq!(coords, vec![vec![1, 0], vec![0, 1], vec![1, 1]]);
        let b2 = RootDatum::preset("B2-sc").unwrap();
        assert_eq!(b2.positive_roots().len(), 4);
        let g2 = RootDatum::preset("G2").unwrap();
        assert_eq!(g2.highest_root().map(|h| g2.root_coords(&h).unwrap()), Some(vec![3, 2]));
    }

    #[test]
    fn weyl_orders_match_permutation_oracle() {
        for d in all() {
            assert_eq!(d.weyl_group().len(), weyl_order_by_permutations(&d), "{}", d.name);
        }
    }

    #[test]
    fn longest_element_is_an_involution() {
        for d in all() {
            let w0 = d.longest_element();
            let m = w0.matrix();
            assert_eq!(m.mul(&m), Matrix::identity(d.weight_dim), "{}", d.name);
            assert_eq!(w0.length(), d.positive_roots().len());
        }
    }

    #[test]
    fn weyl_matrices_permute_roots() {
        for d in all() {
            let mut roots: BTreeSet<Weight> = d.positive_roots().iter().map(|r| r.root).collect();
            roots.extend(d.positive_roots().iter().map(|r| -r.root));
            for w in d.weyl_group() {
                let image: BTreeSet<Weight> = roots.iter().map(|x| w.apply(x)).collect();
                assert_eq!(image, roots);
            }
        }
    }

    #[test]
    fn dominant_conjugate_examples() {
        let a1 = RootDatum::preset("A1-sc").unwrap();
        let (w, y) = a1.dominant_conjugate(&Weight::new(&[-3]));
        assert_eq!((w.word.clone(), y), (vec![0], Weight::new(&[3])));
        let a2 = RootDatum::preset("A2-sc").unwrap();
        let (w, y) = a2.dominant_conjugate(&Weight::new(&[2, 1]));
        assert!(w.is_identity());
        assert_eq!(y, Weight::new(&[2, 1]));
        let (w, y) = a2.dominant_conjugate(&Weight::new(&[-1, -1]));
        assert_eq!(w.length(), a2.longest_element().length());
        assert_eq!(y, Weight::new(&[1, 1]));
    }

    #[test]
    fn dominant_conjugate_is_idempotent_and_minimal() {
        for d in all() {
            for w in d.weyl_group() {
                let x = w.apply(&d.two_rho());
                let (u, y) = d.dominant_conjugate(&x);
                assert_eq!(y, d.two_rho());
                // the stabilizer of 2ρ is trivial, so u is the inverse of w
                assert_eq!(u.length(), w.length());
                let (again, z) = d.dominant_conjugate(&y);
                assert!(again.is_identity());
                assert_eq!(z, y);
                assert_eq!(d.to_dominant(&x).0, y);
            }
        }
    }

    #[test]
    fn pair_two_rho_check_values() {
        let a1 = RootDatum::preset("A1-sc").unwrap();
        assert_eq!(a1.pair_2rho_check(&Weight::new(&[1])), 1);
        assert_eq!(a1.pair_2rho_check(&Weight::new(&[0])), 0);
        let a2 = RootDatum::preset("A2-sc").unwrap();
        let rho = a2.two_rho().div_exact(2);
        let oracle: i64 = a2.positive_roots().iter().map(|r| rho.dot(&r.coroot)).sum();
        assert_eq!(a2.pair_2rho_check(&rho), oracle);
        assert_eq!(oracle, 4);
    }

    #[test]
    fn parity_is_weyl_invariant() {
        for d in all() {
            for x in [-3i64, -1, 0, 2, 5] {
                let lambda = Weight::new(&vec![x; d.weight_dim]) + Weight::unit(d.weight_dim, 0);
                let base = d.pair_2rho_check(&lambda).rem_euclid(2);
                for w in d.weyl_group() {
                    assert_eq!(d.pair_2rho_check(&w.apply(&lambda)).rem_euclid(2), base);
                }
            }
        }
    }

    #[test]
    fn dimensions_and_lattices() {
        let b2 = RootDatum::preset("B2-sc").unwrap();
        // α1 long: ϖ1 is the vector representation, ϖ2 the spin representation
        assert_eq!(b2.weyl_dimension(&Weight::new(&[1, 0])), 5);
        assert_eq!(b2.weyl_dimension(&Weight::new(&[0, 1])), 4);
        let g2 = RootDatum::preset("G2").unwrap();
        assert_eq!(g2.weyl_dimension(&Weight::new(&[1, 0])), 7);
        assert_eq!(g2.weyl_dimension(&g2.highest_root().unwrap()), 14);
        let a2 = RootDatum::preset("A2-sc").unwrap();
        assert!(!a2.in_root_lattice(&Weight::new(&[1, 0])));
        assert_eq!(a2.root_coords(&Weight::new(&[1, 1])), Some(vec![1, 1]));
        assert_eq!(a2.dual_weight(&Weight::new(&[2, 1])), Weight::new(&[1, 2]));
    }

    #[test]
    fn levi_subdata() {
        let a2 = RootDatum::preset("A2-sc").unwrap();
        let t = a2.levi(&[]).unwrap();
        assert_eq!((t.rank, t.weyl_group().len()), (0, 1));
        assert!(t.in_root_lattice(&a2.zero()));
        assert!(!t.in_root_lattice(&a2.simple_roots[0]));
        let l = a2.levi(&[0]).unwrap();
        assert_eq!(l.positive_roots().len(), 1);
        assert_eq!(l.lattice_kind, LatticeKind::TorusFactor);
        assert_eq!(l.two_rho_check(), Weight::new(&[1, 0]));
        assert!(a2.levi(&[5]).is_err());
    }
}
