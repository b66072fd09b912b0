//! Free `G × G_m`-equivariant objects `V_λ ⊗ O_N⟨i⟩` on the nilpotent cone and their
//! graded morphism spaces.
//!
//! A morphism `V_λ⟨i⟩ → V_μ⟨j⟩` of cohomological degree `2k` is recorded under the key
//! `(j − i, 2k)`. Morphisms in the Orlov category itself are the entries with `2k = i − j`.
//!
//! Two routes compute the same tables:
//! * through the graded multiplicities `m^ν_0(q)` of `C[N]`;
//! * through maps `V_λ → V_μ` commuting with the centralizer `g^e` of the principal
//!   nilpotent, graded by `ad(2ρ̌)`. A morphism is determined by its value at `e`.

use std::collections::BTreeMap;
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use rustc_hash::FxHashMap;
use serde::ser::{SerializeMap, SerializeSeq};
use serde::{Serialize, Serializer};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::modular;
use crate::nilpotent::{build_irrep, MatrixRep, SliceGenerators, WeightOp};
use crate::qanalog::QAnalogs;
use crate::repring::{DecompositionList, RepRing};
use crate::rootdata::{RootDatum, Weight};
use crate::scalar::Field;
use crate::{QMatrix, QPolynomial, Rational};

/// Finite multiset of summands `V_λ ⊗ O⟨i⟩`, kept in insertion order.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct FreeObject {
    summands: Vec<(Weight, i64)>,
}

impl FreeObject {
    pub fn new() -> Self {
        Self::default()
    }

    /// The structure sheaf `O` in internal degree 0.
    pub fn unit(d: &RootDatum) -> Self {
        Self::indecomposable(d.zero(), 0)
    }

    pub fn indecomposable(lambda: Weight, degree: i64) -> Self {
        FreeObject {
            summands: vec![(lambda, degree)],
        }
    }

    pub fn from_summands(summands: impl IntoIterator<Item = (Weight, i64)>) -> Self {
        FreeObject {
            summands: summands.into_iter().collect(),
        }
    }

    /// `⊕_ν V_ν^{m_ν} ⊗ O⟨i⟩`.
    pub fn from_list(list: &DecompositionList, degree: i64) -> Self {
        let mut out = Self::new();
        for (w, &m) in list.entries() {
            for _ in 0..m {
                out.push(*w, degree);
            }
        }
        out
    }

    pub fn push(&mut self, lambda: Weight, degree: i64) {
        self.summands.push((lambda, degree));
    }

    pub fn summands(&self) -> &[(Weight, i64)] {
        &self.summands
    }

    pub fn len(&self) -> usize {
        self.summands.len()
    }

    pub fn is_empty(&self) -> bool {
        self.summands.is_empty()
    }

    /// `A⟨n⟩`: every internal degree raised by `n`.
    pub fn shift(&self, n: i64) -> Self {
        FreeObject {
            summands: self.summands.iter().map(|&(w, i)| (w, i + n)).collect(),
        }
    }
}

impl Serialize for FreeObject {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.summands.len()))?;
        for (w, i) in &self.summands {
            seq.serialize_element(&json!({"weight": w, "degree": i}))?;
        }
        seq.end()
    }
}

/// `A⟨n⟩` together with the cohomological shift `[n]` that accompanies it on the mixed side.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MixedShift {
    pub object: FreeObject,
    pub internal: i64,
    pub cohomological: i64,
}

impl MixedShift {
    /// Compose with a further shift `⟨m⟩[m]`.
    pub fn then(&self, m: i64) -> MixedShift {
        MixedShift {
            object: self.object.shift(m),
            internal: self.internal + m,
            cohomological: self.cohomological + m,
        }
    }
}

pub fn mixed_shift(a: &FreeObject, n: i64) -> MixedShift {
    MixedShift {
        object: a.shift(n),
        internal: n,
        cohomological: n,
    }
}

/// Dimensions of graded morphism spaces keyed by `(internal difference, cohomological degree)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomProfile {
    pub source: FreeObject,
    pub target: FreeObject,
    table: BTreeMap<(i64, i64), u64>,
}

impl HomProfile {
    pub fn empty(source: FreeObject, target: FreeObject) -> Self {
        HomProfile {
            source,
            target,
            table: BTreeMap::new(),
        }
    }

    pub fn add(&mut self, internal: i64, cohomological: i64, dim: u64) {
        if dim == 0 {
            return;
        }
        *self.table.entry((internal, cohomological)).or_insert(0) += dim;
    }

    pub fn get(&self, internal: i64, cohomological: i64) -> u64 {
        self.table.get(&(internal, cohomological)).copied().unwrap_or(0)
    }

    pub fn table(&self) -> &BTreeMap<(i64, i64), u64> {
        &self.table
    }

    pub fn is_zero(&self) -> bool {
        self.table.is_empty()
    }

    /// Sum of all entries.
    pub fn total(&self) -> u64 {
        self.table.values().sum()
    }

    /// `dim Hom(A, B)` in the Orlov category: entries with `2k = i − j`.
    pub fn morphisms(&self) -> u64 {
        self.table
            .iter()
            .filter(|((d, k), _)| d + k == 0)
            .map(|(_, n)| n)
            .sum()
    }

    /// Entries summed over the internal difference, as a polynomial in `q` of half-degrees.
    pub fn series(&self) -> QPolynomial {
        let mut p = QPolynomial::zero();
        for (&(_, k), &n) in &self.table {
            debug_assert!(k % 2 == 0);
            p.add_term(k / 2, BigInt::from(n));
        }
        p
    }
}

impl Serialize for HomProfile {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let entries: Vec<Value> = self
            .table
            .iter()
            .map(|(&(d, k), &n)| json!({"internal": d, "cohomological": k, "dim": n}))
            .collect();
        let mut m = s.serialize_map(Some(3))?;
        m.serialize_entry("source", &self.source)?;
        m.serialize_entry("target", &self.target)?;
        m.serialize_entry("entries", &entries)?;
        m.end()
    }
}

/// A homogeneous morphism given by its value at `e`: block `(s, t)` maps summand `s` of the
/// source to summand `t` of the target.
#[derive(Clone, Debug, PartialEq)]
pub struct HomElement {
    pub source: FreeObject,
    pub target: FreeObject,
    /// Cohomological degree, equal to the `ad(2ρ̌)`-weight of every block.
    pub degree: i64,
    blocks: BTreeMap<(usize, usize), QMatrix>,
}

impl HomElement {
    pub fn new(source: FreeObject, target: FreeObject, degree: i64) -> Self {
        HomElement {
            source,
            target,
            degree,
            blocks: BTreeMap::new(),
        }
    }

    pub fn set_block(&mut self, s: usize, t: usize, m: QMatrix) {
        if m.is_zero() {
            self.blocks.remove(&(s, t));
        } else {
            self.blocks.insert((s, t), m);
        }
    }

    pub fn block(&self, s: usize, t: usize) -> Option<&QMatrix> {
        self.blocks.get(&(s, t))
    }

    pub fn blocks(&self) -> impl Iterator<Item = (usize, usize, &QMatrix)> {
        self.blocks.iter().map(|(&(s, t), m)| (s, t, m))
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn scale(&self, c: &Rational) -> HomElement {
        let mut out = HomElement::new(self.source.clone(), self.target.clone(), self.degree);
        for (&(s, t), m) in &self.blocks {
            out.set_block(s, t, m.scale(c));
        }
        out
    }
}

/// `g ∘ f`. Degrees add.
pub fn compose(f: &HomElement, g: &HomElement) -> Result<HomElement> {
    if f.target != g.source {
        return Err(Error::domain("cannot compose: target of the first map is not the source of the second"));
    }
    let mut out = HomElement::new(f.source.clone(), g.target.clone(), f.degree + g.degree);
    let mut acc: BTreeMap<(usize, usize), QMatrix> = BTreeMap::new();
    for (&(s, m), a) in &f.blocks {
        for (&(m2, t), b) in &g.blocks {
            if m2 != m {
                continue;
            }
            let p = b.mul(a);
            match acc.get_mut(&(s, t)) {
                Some(x) => x.add_assign(&p),
                None => {
                    acc.insert((s, t), p);
                }
            }
        }
    }
    for ((s, t), m) in acc {
        out.set_block(s, t, m);
    }
    Ok(out)
}

/// `V_λ` as a graded module over `S = C[x_1, …, x_r]`, `x_s` the basis of `g^e` of degree
/// `2 m_s`. Level index `k` holds the weights with `⟨μ, 2ρ̌⟩ = bottom + 2k`.
///
/// The working basis of each level is a Jordan basis for the principal `e`: string `c`
/// occupies levels `strings[c].0 ..= strings[c].1` and `e` moves each of its vectors one
/// level up. Levels are symmetric about the middle, so a string starting at level `k` of
/// `n` ends at `n − 1 − k`.
#[derive(Debug)]
struct GradedModule {
    bottom: i64,
    dims: Vec<usize>,
    /// Global basis position of each level-local coordinate.
    globals: Vec<Vec<usize>>,
    steps: Vec<usize>,
    /// `act[s][k]`: level `k` → level `k + steps[s]` in Jordan coordinates; `None` when zero.
    act: Vec<Vec<Option<QMatrix>>>,
    /// Columns of `to_rep[k]` are the Jordan basis of level `k` in representation coordinates.
    to_rep: Vec<QMatrix>,
    strings: Vec<(usize, usize)>,
    /// `members[k][i]`: string of the `i`-th basis vector of level `k`.
    members: Vec<Vec<usize>>,
    /// `slot[c][j]`: position of string `c` inside level `strings[c].0 + j`.
    slot: Vec<Vec<usize>>,
    /// Weight multiplicities.
    weights: FxHashMap<Weight, usize>,
}

impl Matrix<Rational> {
    /// Kernel basis; every unit vector when there are no rows.
    fn kernel_or_all(&self) -> Vec<Vec<Rational>> {
        if self.rows() == 0 {
            (0..self.cols())
                .map(|i| {
                    let mut u = vec![Rational::zero(); self.cols()];
                    u[i] = Rational::from_int(1);
                    u
                })
                .collect()
        } else {
            self.kernel()
        }
    }
}

/// Level blocks of a homogeneous operator moving the level index by `step`.
fn level_blocks(op: &WeightOp<Rational>, step: i64, dims: &[usize], place: &[(usize, usize)]) -> Vec<Option<QMatrix>> {
    let n = dims.len() as i64;
    let mut per: Vec<Option<QMatrix>> = (0..n)
        .map(|li| {
            let t = li + step;
            (0 <= t && t < n && dims[t as usize] > 0 && dims[li as usize] > 0)
                .then(|| Matrix::zeros(dims[t as usize], dims[li as usize]))
        })
        .collect();
    for (s, t, b) in op.blocks() {
        let (ls, os) = place[s];
        let (lt, ot) = place[t];
        debug_assert_eq!(lt as i64, ls as i64 + step, "operator is not homogeneous");
        if let Some(m) = per[ls].as_mut() {
            for r in 0..b.rows() {
                for c in 0..b.cols() {
                    m[(ot + r, os + c)] = b[(r, c)].clone();
                }
            }
        }
    }
    for m in per.iter_mut() {
        if m.as_ref().is_some_and(|x| x.is_zero()) {
            *m = None;
        }
    }
    per
}

impl GradedModule {
    /// `ef` is the principal `(e, f)`, `None` only without roots; every vector is then a
    /// string of length one.
    fn new(rep: &MatrixRep<Rational>, e: Option<(&WeightOp<Rational>, &WeightOp<Rational>)>, gens: &[WeightOp<Rational>], steps: &[usize]) -> Result<Self> {
        let nw = rep.weights().len();
        let levels: Vec<i64> = (0..nw).map(|k| rep.level(k)).collect();
        let bottom = levels.iter().copied().min().unwrap_or(0);
        let top = levels.iter().copied().max().unwrap_or(0);
        let n = ((top - bottom) / 2 + 1) as usize;
        let mut dims = vec![0usize; n];
        let mut globals = vec![Vec::new(); n];
        // (level index, offset inside the level) of each weight space
        let mut place = Vec::with_capacity(nw);
        for k in 0..nw {
            debug_assert_eq!((levels[k] - bottom) % 2, 0);
            let li = ((levels[k] - bottom) / 2) as usize;
            place.push((li, dims[li]));
            for x in 0..rep.weight_dim(k) {
                globals[li].push(rep.offset(k) + x);
            }
            dims[li] += rep.weight_dim(k);
        }
        let mut strings: Vec<(usize, usize)> = Vec::new();
        let mut members: Vec<Vec<usize>> = Vec::with_capacity(n);
        let mut to_rep: Vec<QMatrix> = Vec::with_capacity(n);
        let e_levels = e.map(|(e, _)| level_blocks(e, 1, &dims, &place));
        let f_levels = e.map(|(_, f)| level_blocks(f, -1, &dims, &place));
        for k in 0..n {
            let mut cols: Vec<Vec<Rational>> = Vec::new();
            let mut mem = Vec::new();
            let mut last = k;
            if let Some(e_levels) = &e_levels {
                if let (true, Some(x)) = (k > 0, e_levels[k.saturating_sub(1)].as_ref()) {
                    for (i, &c) in members[k - 1].iter().enumerate() {
                        if strings[c].1 >= k {
                            cols.push(x.mul_vec(&to_rep[k - 1].column(i)));
                            mem.push(c);
                        }
                    }
                }
                if 2 * k + 1 > n {
                    last = usize::MAX;
                } else {
                    last = n - 1 - k;
                }
            }
            if last != usize::MAX {
                // new strings start at the lowest weight vectors `ker f`, a complement of `e V_{k−1}`
                let starts = match &f_levels {
                    Some(f_levels) if k > 0 => match f_levels[k].as_ref() {
                        Some(x) => x.kernel(),
                        None => Matrix::<Rational>::zeros(0, dims[k]).kernel_or_all(),
                    },
                    _ => Matrix::<Rational>::zeros(0, dims[k]).kernel_or_all(),
                };
                for u in starts {
                    cols.push(u);
                    mem.push(strings.len());
                    strings.push((k, last));
                }
            }
            if cols.len() != dims[k] {
                return Err(Error::domain("level dimensions are not symmetric under e"));
            }
            to_rep.push(Matrix::from_columns(dims[k], &cols));
            members.push(mem);
        }
        let inverse: Vec<QMatrix> = to_rep
            .iter()
            .map(|b| b.inverse().ok_or_else(|| Error::domain("e-strings are not independent")))
            .collect::<Result<_>>()?;
        let act = gens
            .iter()
            .zip(steps)
            .map(|(op, &step)| {
                level_blocks(op, step as i64, &dims, &place)
                    .into_iter()
                    .enumerate()
                    .map(|(k, m)| {
                        m.and_then(|x| {
                            let y = inverse[k + step].mul(&x).mul(&to_rep[k]);
                            (!y.is_zero()).then_some(y)
                        })
                    })
                    .collect()
            })
            .collect();
        let mut slot: Vec<Vec<usize>> = strings.iter().map(|&(a, b)| Vec::with_capacity(b - a + 1)).collect();
        for mem in &members {
            for (i, &c) in mem.iter().enumerate() {
                slot[c].push(i);
            }
        }
        let mut weights = FxHashMap::default();
        for (k, mu) in rep.weights().iter().enumerate() {
            *weights.entry(*mu).or_insert(0) += rep.weight_dim(k);
        }
        Ok(GradedModule {
            weights,
            bottom,
            dims,
            globals,
            steps: steps.to_vec(),
            act,
            to_rep,
            strings,
            members,
            slot,
        })
    }

    fn top(&self) -> i64 {
        self.bottom + 2 * (self.dims.len() as i64 - 1)
    }

    fn dim_at(&self, k: i64) -> usize {
        if k < 0 || k as usize >= self.dims.len() {
            0
        } else {
            self.dims[k as usize]
        }
    }
}

/// The linear system for `Hom_S(V, W)` in `ad(2ρ̌)`-degree `d`, fed entry by entry to `put`
/// as `(row, column, value, negate)`; returns `(rows, columns)`.
///
/// A `C[e]`-linear map is fixed by the images of the string starts, and string `c` may go
/// to any vector of a string `u` at the shifted level that `e` kills at least as soon,
/// `end(u) ≤ end(c) + shift`. Those choices are the unknowns; the equations are
/// `x_s φ = φ x_s` on the string starts for the generators other than `e`.
fn hom_system(
    v: &GradedModule,
    w: &GradedModule,
    d: i64,
    active: &[bool],
    mut put: impl FnMut(usize, usize, &Rational, bool),
) -> (usize, usize) {
    debug_assert_eq!((v.bottom + d - w.bottom) % 2, 0);
    let shift = (v.bottom + d - w.bottom) / 2;
    let at = |k: usize| -> Option<usize> {
        let t = k as i64 + shift;
        (t >= 0 && (t as usize) < w.dims.len()).then_some(t as usize)
    };
    // per source string: (target string, unknown index)
    let mut images: Vec<Vec<(usize, usize)>> = vec![Vec::new(); v.strings.len()];
    let mut cols = 0;
    for (c, &(start, end)) in v.strings.iter().enumerate() {
        let Some(t) = at(start) else { continue };
        for &u in &w.members[t] {
            if w.strings[u].1 as i64 <= end as i64 + shift {
                images[c].push((u, cols));
                cols += 1;
            }
        }
    }
    if cols == 0 {
        return (0, 0);
    }
    let mut rows = 0;
    for (s, &step) in v.steps.iter().enumerate() {
        if !active[s] {
            continue;
        }
        for (c, &(start, _)) in v.strings.iter().enumerate() {
            let live = v.act[s][start].is_some() || at(start).is_some_and(|t| w.act[s][t].is_some());
            let Some(t_up) = at(start + step).filter(|_| live) else {
                continue;
            };
            let r0 = rows;
            rows += w.dims[t_up];
            // x_s φ(c)
            if let Some((t, x)) = at(start).and_then(|t| w.act[s][t].as_ref().map(|x| (t, x))) {
                for &(u, col) in &images[c] {
                    let pos = w.slot[u][t - w.strings[u].0];
                    for r in 0..x.rows() {
                        let a = &x[(r, pos)];
                        if !a.is_zero() {
                            put(r0 + r, col, a, false);
                        }
                    }
                }
            }
            // φ(x_s c), with φ(e^i c') = e^i φ(c')
            if let Some(x) = v.act[s][start].as_ref() {
                let pos = v.slot[c][0];
                for (i, &c2) in v.members[start + step].iter().enumerate() {
                    let a = &x[(i, pos)];
                    if a.is_zero() {
                        continue;
                    }
                    for &(u, col) in &images[c2] {
                        if t_up > w.strings[u].1 {
                            continue;
                        }
                        put(r0 + w.slot[u][t_up - w.strings[u].0], col, a, true);
                    }
                }
            }
        }
    }
    (rows, cols)
}

/// `dim Hom_S(V, W)` in degree `d` by exact rank over `Q`.
fn hom_dim_exact(v: &GradedModule, w: &GradedModule, d: i64, active: &[bool]) -> usize {
    let mut entries = Vec::new();
    let (rows, cols) = hom_system(v, w, d, active, |r, c, a, neg| entries.push((r, c, if neg { -a.clone() } else { a.clone() })));
    let mut system = Matrix::<Rational>::zeros(rows, cols);
    for (r, c, a) in entries {
        system[(r, c)] += a;
    }
    cols - crate::modular::rank(&system)
}

/// `dim Hom_S(V, W)` in degree `d` from the rank modulo `p`, an upper bound for the true
/// dimension; `None` when `p` divides a denominator.
fn hom_dim_mod(v: &GradedModule, w: &GradedModule, d: i64, active: &[bool], p: u64) -> Option<usize> {
    let mut entries = Vec::new();
    let mut ok = true;
    let (rows, cols) = hom_system(v, w, d, active, |r, c, a, neg| match modular::residue_of(a, p) {
        Some(x) => entries.push((r, c, if neg { (p - x) % p } else { x })),
        None => ok = false,
    });
    if !ok {
        return None;
    }
    let mut system = vec![vec![0u64; cols]; rows];
    for (r, c, x) in entries {
        system[r][c] = (system[r][c] + x) % p;
    }
    Some(cols - modular::rank_mod(system, cols, p))
}

/// Basis of `g^e` with exponents; `active[s]` unless `x_s` is a multiple of `e`.
struct Slice {
    steps: Vec<usize>,
    gens: Option<SliceGenerators<Rational>>,
    active: Vec<bool>,
}

/// Graded Hom spaces between free objects over one root datum, with memoized
/// representations and Jordan-string modules.
pub struct OrlovCategory {
    ring: RepRing,
    qa: QAnalogs,
    cap: usize,
    slice: Mutex<Option<Arc<Slice>>>,
    modules: Mutex<FxHashMap<Weight, Arc<GradedModule>>>,
    kostant: Mutex<FxHashMap<(Weight, Weight), QPolynomial>>,
}

impl OrlovCategory {
    pub fn new(datum: RootDatum, cap: usize) -> Self {
        let arc = Arc::new(datum);
        OrlovCategory {
            ring: RepRing::from_arc(arc.clone()),
            qa: QAnalogs::from_arc(arc),
            cap,
            slice: Mutex::new(None),
            modules: Mutex::new(FxHashMap::default()),
            kostant: Mutex::new(FxHashMap::default()),
        }
    }

    pub fn datum(&self) -> &RootDatum {
        self.ring.datum()
    }

    pub fn ring(&self) -> &RepRing {
        &self.ring
    }

    pub fn qanalogs(&self) -> &QAnalogs {
        &self.qa
    }

    /// `V_λ* ≅ V_{−w_0 λ}`.
    fn dual(&self, lambda: &Weight) -> Weight {
        self.datum().dual_weight(lambda)
    }

    /// `Σ_ν [V_μ ⊗ V_λ* : V_ν] · m^ν_0(q)`.
    pub fn pair_series_kostant(&self, lambda: &Weight, mu: &Weight) -> Result<QPolynomial> {
        let d = self.datum();
        d.check_weight(lambda)?;
        d.check_weight(mu)?;
        if let Some(p) = self.kostant.lock().unwrap().get(&(*lambda, *mu)) {
            return Ok(p.clone());
        }
        let mut out = QPolynomial::zero();
        if d.in_root_lattice(&(*mu - *lambda)) {
            let dual = self.dual(lambda);
            // the Klimyk sum runs over the weights of its first argument
            let list = if self.ring.dimension(&dual)? <= self.ring.dimension(mu)? {
                self.ring.tensor_decompose_klimyk(&dual, mu)?
            } else {
                self.ring.tensor_decompose_klimyk(mu, &dual)?
            };
            for (nu, &m) in list.entries() {
                let p = self.qa.graded_mult_in_nilcone(nu)?;
                out += &p.scale(&BigInt::from(m));
            }
        }
        self.kostant
            .lock()
            .unwrap()
            .insert((*lambda, *mu), out.clone());
        Ok(out)
    }

    pub fn hom_profile_kostant(&self, a: &FreeObject, b: &FreeObject) -> Result<HomProfile> {
        let mut prof = HomProfile::empty(a.clone(), b.clone());
        for &(lambda, i) in a.summands() {
            for &(mu, j) in b.summands() {
                let p = self.pair_series_kostant(&lambda, &mu)?;
                for (k, c) in p.terms() {
                    let n = c.to_u64().ok_or_else(|| Error::domain("negative graded multiplicity"))?;
                    prof.add(j - i, 2 * k, n);
                }
            }
        }
        Ok(prof)
    }

    fn slice(&self) -> Result<Arc<Slice>> {
        if let Some(s) = self.slice.lock().unwrap().as_ref() {
            return Ok(s.clone());
        }
        let d = self.datum();
        let s = if d.positive_roots().is_empty() {
            Slice {
                steps: Vec::new(),
                gens: None,
                active: Vec::new(),
            }
        } else {
            let g = SliceGenerators::<Rational>::new(&self.ring, self.cap.max(1))?;
            let roots = d.positive_roots();
            // a generator proportional to e imposes nothing beyond C[e]-linearity
            let active = g
                .generators
                .iter()
                .map(|(_, combo)| {
                    let simple = combo.len() == d.rank && combo.iter().all(|(k, _)| roots[*k].height() == 1);
                    !(simple && combo.iter().all(|(_, c)| *c == combo[0].1))
                })
                .collect();
            Slice {
                steps: g.exponents().iter().map(|&m| m as usize).collect(),
                gens: Some(g),
                active,
            }
        };
        let s = Arc::new(s);
        *self.slice.lock().unwrap() = Some(s.clone());
        Ok(s)
    }

    pub fn build(&self, lambda: &Weight) -> Result<MatrixRep<Rational>> {
        build_irrep(&self.ring, lambda, self.cap)
    }

    fn module(&self, lambda: &Weight) -> Result<Arc<GradedModule>> {
        if let Some(m) = self.modules.lock().unwrap().get(lambda) {
            return Ok(m.clone());
        }
        let slice = self.slice()?;
        let rep = self.build(lambda)?;
        let (e, gens) = match &slice.gens {
            Some(g) => (Some((rep.principal_e(), rep.principal_f())), g.act(&rep)),
            None => (None, Vec::new()),
        };
        let m = Arc::new(GradedModule::new(&rep, e.as_ref().map(|(e, f)| (e, f)), &gens, &slice.steps)?);
        self.modules.lock().unwrap().insert(*lambda, m.clone());
        Ok(m)
    }

    /// `dim Hom_{g^e}(V_λ, V_μ)` by `ad(2ρ̌)`-degree: `C[e]`-linear maps between Jordan
    /// strings, cut out by commutation with the other generators of `g^e`. Zero unless
    /// `μ − λ` is in the root lattice (the center acts on `V_λ* ⊗ V_μ` through that coset).
    pub fn pair_series_slice(&self, lambda: &Weight, mu: &Weight) -> Result<BTreeMap<i64, u64>> {
        let d = self.datum();
        d.check_weight(lambda)?;
        d.check_weight(mu)?;
        let mut out = BTreeMap::new();
        if !d.in_root_lattice(&(*mu - *lambda)) {
            return Ok(out);
        }
        let slice = self.slice()?;
        let v = self.module(lambda)?;
        let w = self.module(mu)?;
        let degrees: Vec<i64> = (w.bottom - v.top()..=w.top() - v.bottom).step_by(2).collect();
        // Ranks modulo p never exceed ranks over Q, so each degree is at worst overcounted.
        // The invariants of g^e in V* ⊗ W have total dimension dim (V* ⊗ W)_0 on this coset,
        // so dimensions summing to that total are exact.
        let total: usize = v.weights.iter().map(|(nu, n)| n * w.weights.get(nu).copied().unwrap_or(0)).sum();
        let mut dims = None;
        for p in modular::small_primes().take(2) {
            let found: Option<Vec<usize>> = degrees.iter().map(|&deg| hom_dim_mod(&v, &w, deg, &slice.active, p)).collect();
            if let Some(found) = found.filter(|f| f.iter().sum::<usize>() == total) {
                dims = Some(found);
                break;
            }
        }
        let dims = dims.unwrap_or_else(|| degrees.iter().map(|&deg| hom_dim_exact(&v, &w, deg, &slice.active)).collect());
        for (deg, n) in degrees.into_iter().zip(dims) {
            if n > 0 {
                out.insert(deg, n as u64);
            }
        }
        Ok(out)
    }

    pub fn hom_profile_slice(&self, a: &FreeObject, b: &FreeObject) -> Result<HomProfile> {
        let mut prof = HomProfile::empty(a.clone(), b.clone());
        for &(lambda, i) in a.summands() {
            for &(mu, j) in b.summands() {
                for (deg, n) in self.pair_series_slice(&lambda, &mu)? {
                    prof.add(j - i, deg, n);
                }
            }
        }
        Ok(prof)
    }

    /// Basis of the maps `V_λ → V_μ` of `ad(2ρ̌)`-weight `degree` commuting with `g^e`,
    /// solved directly on all matrix entries. Each map is `dim V_μ × dim V_λ` in the basis
    /// of the explicit representations.
    pub fn commutant_basis(&self, lambda: &Weight, mu: &Weight, degree: i64) -> Result<Vec<QMatrix>> {
        let d = self.datum();
        if !d.in_root_lattice(&(*mu - *lambda)) {
            return Ok(Vec::new());
        }
        let v = self.module(lambda)?;
        let w = self.module(mu)?;
        let nv = v.dims.len();
        let shift = |k: usize| -> i64 { (v.bottom + 2 * k as i64 + degree - w.bottom) / 2 };
        // unknown block φ_k : V_k → W_{shift(k)}, row-major
        let mut off = vec![0usize; nv + 1];
        for k in 0..nv {
            off[k + 1] = off[k] + v.dims[k] * w.dim_at(shift(k));
        }
        let unknowns = off[nv];
        if unknowns == 0 {
            return Ok(Vec::new());
        }
        let mut eqs: Vec<Vec<Rational>> = Vec::new();
        for s in 0..v.steps.len() {
            let step = v.steps[s];
            for k in 0..nv {
                // x'_s φ_k − φ_{k+step} x_s = 0 on V_k
                let t = shift(k);
                let t_up = t + step as i64;
                let rows = w.dim_at(t_up);
                if rows == 0 || v.dims[k] == 0 {
                    continue;
                }
                for i in 0..rows {
                    for j in 0..v.dims[k] {
                        let mut eq = vec![Rational::zero(); unknowns];
                        if w.dim_at(t) > 0 {
                            if let Some(x) = w.act[s][t as usize].as_ref() {
                                let nt = w.dims[t as usize];
                                for l in 0..nt {
                                    let c = &x[(i, l)];
                                    if !c.is_zero() {
                                        eq[off[k] + l * v.dims[k] + j] += c.clone();
                                    }
                                }
                            }
                        }
                        if k + step < nv && w.dim_at(t_up) > 0 {
                            if let Some(x) = v.act[s][k].as_ref() {
                                let up = k + step;
                                for l in 0..v.dims[up] {
                                    let c = &x[(l, j)];
                                    if !c.is_zero() {
                                        eq[off[up] + i * v.dims[up] + l] -= c.clone();
                                    }
                                }
                            }
                        }
                        if eq.iter().any(|c| !c.is_zero()) {
                            eqs.push(eq);
                        }
                    }
                }
            }
        }
        let kernel = if eqs.is_empty() {
            (0..unknowns)
                .map(|i| {
                    let mut u = vec![Rational::zero(); unknowns];
                    u[i] = Rational::from_int(1);
                    u
                })
                .collect()
        } else {
            Matrix::from_rows(eqs).kernel()
        };
        let dim_v: usize = v.dims.iter().sum();
        let dim_w: usize = w.dims.iter().sum();
        Ok(kernel
            .into_iter()
            .map(|vec| {
                let mut m = Matrix::zeros(dim_w, dim_v);
                for k in 0..nv {
                    let t = shift(k);
                    let nt = w.dim_at(t);
                    if nt == 0 || v.dims[k] == 0 {
                        continue;
                    }
                    let local = Matrix::from_fn(nt, v.dims[k], |i, j| vec[off[k] + i * v.dims[k] + j].clone());
                    let back = v.to_rep[k].inverse().expect("level basis is invertible");
                    let block = w.to_rep[t as usize].mul(&local).mul(&back);
                    for i in 0..nt {
                        for j in 0..v.dims[k] {
                            m[(w.globals[t as usize][i], v.globals[k][j])] = block[(i, j)].clone();
                        }
                    }
                }
                m
            })
            .collect())
    }

    /// Graded dimensions from `commutant_basis`; a third route for small representations.
    pub fn pair_series_dense(&self, lambda: &Weight, mu: &Weight) -> Result<BTreeMap<i64, u64>> {
        let mut out = BTreeMap::new();
        if !self.datum().in_root_lattice(&(*mu - *lambda)) {
            return Ok(out);
        }
        let v = self.module(lambda)?;
        let w = self.module(mu)?;
        let mut deg = w.bottom - v.top();
        while deg <= w.top() - v.bottom {
            let n = self.commutant_basis(lambda, mu, deg)?.len();
            if n > 0 {
                out.insert(deg, n as u64);
            }
            deg += 2;
        }
        Ok(out)
    }

    /// Morphisms `V_λ⟨i⟩ → V_μ⟨j⟩` of cohomological degree `degree`, as values at `e`.
    pub fn hom_basis(&self, (lambda, i): (Weight, i64), (mu, j): (Weight, i64), degree: i64) -> Result<Vec<HomElement>> {
        let a = FreeObject::indecomposable(lambda, i);
        let b = FreeObject::indecomposable(mu, j);
        Ok(self
            .commutant_basis(&lambda, &mu, degree)?
            .into_iter()
            .map(|m| {
                let mut h = HomElement::new(a.clone(), b.clone(), degree);
                h.set_block(0, 0, m);
                h
            })
            .collect())
    }

    pub fn identity(&self, a: &FreeObject) -> Result<HomElement> {
        let mut h = HomElement::new(a.clone(), a.clone(), 0);
        for (s, (lambda, _)) in a.summands().iter().enumerate() {
            let n = self.ring.dimension(lambda)? as usize;
            h.set_block(s, s, Matrix::identity(n));
        }
        Ok(h)
    }

    /// Whether every block of `h` intertwines the `g^e`-actions and has the stated degree.
    pub fn is_equivariant(&self, h: &HomElement) -> Result<bool> {
        let slice = self.slice()?;
        for (s, t, m) in h.blocks() {
            let (lambda, _) = h.source.summands()[s];
            let (mu, _) = h.target.summands()[t];
            let rv = self.build(&lambda)?;
            let rw = self.build(&mu)?;
            let d = self.datum();
            // nonzero entries connect levels differing by `degree`
            let bv = rv.basis();
            let bw = rw.basis();
            for r in 0..m.rows() {
                for c in 0..m.cols() {
                    if !m[(r, c)].is_zero() && d.pair_2rho_check(&bw[r].0) - d.pair_2rho_check(&bv[c].0) != h.degree {
                        return Ok(false);
                    }
                }
            }
            if let Some(g) = &slice.gens {
                for (xv, xw) in g.act(&rv).iter().zip(g.act(&rw).iter()) {
                    if rw.dense(xw).mul(m) != m.mul(&rv.dense(xv)) {
                        return Ok(false);
                    }
                }
            }
        }
        Ok(true)
    }

    /// `Hom(V_1 ⊗ O, V_2 ⊗ O)` agrees with `Hom(O, (V_1* ⊗ V_2) ⊗ O)`.
    pub fn adjunction_check(&self, v1: &Weight, v2: &Weight) -> Result<bool> {
        let d = self.datum();
        let lhs = self.hom_profile_kostant(&FreeObject::indecomposable(*v1, 0), &FreeObject::indecomposable(*v2, 0))?;
        let expansion = self.ring.tensor_decompose(&self.dual(v1), v2)?;
        let rhs = self.hom_profile_kostant(&FreeObject::unit(d), &FreeObject::from_list(&expansion, 0))?;
        Ok(lhs.table() == rhs.table())
    }

    /// `Hom(V_λ⟨i⟩, V_μ⟨j⟩)` vanishes unless `j − i ∈ 2Z_{<0}`, or `j = i` and `λ = μ`,
    /// where it is a line.
    pub fn orlov_axiom_check(&self, lambda: &Weight, mu: &Weight, i: i64, j: i64) -> Result<bool> {
        let prof = self.hom_profile_kostant(&FreeObject::indecomposable(*lambda, i), &FreeObject::indecomposable(*mu, j))?;
        let n = prof.morphisms();
        Ok(if j == i && lambda == mu {
            n == 1
        } else if j < i && (i - j) % 2 == 0 {
            true
        } else {
            n == 0
        })
    }

    /// `Res^G_L` on every summand, internal degrees unchanged. `subset` holds 0-based
    /// simple-root indices.
    pub fn levi_pullback(&self, subset: &[usize], a: &FreeObject) -> Result<(OrlovCategory, FreeObject)> {
        let levi = OrlovCategory::new(self.datum().levi(subset)?, self.cap);
        let obj = self.pullback_into(&levi, a)?;
        Ok((levi, obj))
    }

    pub fn pullback_into(&self, levi: &OrlovCategory, a: &FreeObject) -> Result<FreeObject> {
        let mut out = FreeObject::new();
        for &(lambda, i) in a.summands() {
            let list = self.ring.restrict_to_levi(&levi.ring, &lambda)?;
            for (w, m) in list.ordered(levi.datum()) {
                for _ in 0..m {
                    out.push(w, i);
                }
            }
        }
        Ok(out)
    }

    /// Compare `Hom_G(A, B)` with `Hom_L` of the pulled-back objects.
    pub fn levi_comparison(&self, subset: &[usize], a: &FreeObject, b: &FreeObject) -> Result<LeviComparison> {
        let (levi, la) = self.levi_pullback(subset, a)?;
        let lb = self.pullback_into(&levi, b)?;
        let group = self.hom_profile_kostant(a, b)?;
        let restricted = levi.hom_profile_kostant(&la, &lb)?;
        Ok(LeviComparison { group, levi: restricted })
    }
}

/// Hom profiles of a pair of objects over `G` and of their pullbacks over a Levi `L`.
#[derive(Clone, Debug)]
pub struct LeviComparison {
    pub group: HomProfile,
    pub levi: HomProfile,
}

impl LeviComparison {
    /// Both sides specialize at `q = 1` to `dim (V* ⊗ V')(0)`.
    pub fn totals_agree(&self) -> bool {
        self.group.total() == self.levi.total()
    }

    /// Per internal difference, the `L`-side dimensions through cohomological degree `k`
    /// are at least the `G`-side ones, for every `k`.
    pub fn levi_dominates_cumulatively(&self) -> bool {
        let internals: std::collections::BTreeSet<i64> = self
            .group
            .table()
            .keys()
            .chain(self.levi.table().keys())
            .map(|&(d, _)| d)
            .collect();
        internals.into_iter().all(|d| {
            let degrees: std::collections::BTreeSet<i64> = self
                .group
                .table()
                .keys()
                .chain(self.levi.table().keys())
                .filter(|(x, _)| *x == d)
                .map(|&(_, k)| k)
                .collect();
            let (mut g, mut l) = (0u64, 0u64);
            degrees.into_iter().all(|k| {
                g += self.group.get(d, k);
                l += self.levi.get(d, k);
                l >= g
            })
        })
    }

    pub fn entrywise_equal(&self) -> bool {
        self.group.table() == self.levi.table()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn cat(name: &str) -> OrlovCategory {
        OrlovCategory::new(RootDatum::preset(name).unwrap(), 400)
    }

    fn w(c: &OrlovCategory, labels: &[i64]) -> Weight {
        c.datum().from_dynkin(labels).unwrap()
    }

    fn irrep(lambda: Weight) -> FreeObject {
        FreeObject::indecomposable(lambda, 0)
    }

    /// Irreducibles of dimension at most `cap` with Dynkin labels below `top`.
    fn pool(c: &OrlovCategory, cap: u128, top: i64) -> Vec<Weight> {
        let d = c.datum();
        let mut labels = vec![vec![]];
        for _ in 0..d.rank {
            labels = labels
                .into_iter()
                .flat_map(|l: Vec<i64>| {
                    (0..top).map(move |a| {
                        let mut l = l.clone();
                        l.push(a);
                        l
                    })
                })
                .collect();
        }
        labels
            .into_iter()
            .filter_map(|l| d.from_dynkin(&l).ok())
            .filter(|x| d.weyl_dimension(x) <= cap)
            .collect()
    }

    fn table(entries: &[((i64, i64), u64)]) -> BTreeMap<(i64, i64), u64> {
        entries.iter().copied().collect()
    }

    #[test]
    fn structure_sheaf_has_only_constants() {
        for name in ["A1-adj", "A2-sc", "B2-sc"] {
            let c = cat(name);
            let o = FreeObject::unit(c.datum());
            assert_eq!(c.hom_profile_kostant(&o, &o).unwrap().table(), &table(&[((0, 0), 1)]));
            assert_eq!(c.hom_profile_slice(&o, &o).unwrap().table(), &table(&[((0, 0), 1)]));
        }
    }

    #[test]
    fn adjoint_endomorphisms_of_a1() {
        let c = cat("A1-adj");
        let v = irrep(w(&c, &[2]));
        let expect = table(&[((0, 0), 1), ((0, 2), 1), ((0, 4), 1)]);
        assert_eq!(c.hom_profile_kostant(&v, &v).unwrap().table(), &expect);
        assert_eq!(c.hom_profile_slice(&v, &v).unwrap().table(), &expect);
        let o = FreeObject::unit(c.datum());
        assert_eq!(c.hom_profile_slice(&o, &v).unwrap().table(), &table(&[((0, 2), 1)]));
    }

    #[test]
    fn central_character_mismatch_kills_homs() {
        let c = cat("A1-sc");
        let (v, o) = (irrep(w(&c, &[1])), irrep(w(&c, &[0])));
        assert!(c.hom_profile_kostant(&v, &o).unwrap().is_zero());
        assert!(c.hom_profile_slice(&v, &o).unwrap().is_zero());
        assert!(c.hom_profile_slice(&o, &v).unwrap().is_zero());
    }

    #[test]
    fn internal_shifts_key_the_profile() {
        let c = cat("A1-adj");
        let lam = w(&c, &[2]);
        let a = FreeObject::indecomposable(lam, 1);
        let b = FreeObject::indecomposable(lam, -1);
        let prof = c.hom_profile_kostant(&a, &b).unwrap();
        assert_eq!(prof.table(), &table(&[((-2, 0), 1), ((-2, 2), 1), ((-2, 4), 1)]));
        // only `2k = i − j = 2` is a morphism of the category
        assert_eq!(prof.morphisms(), 1);
    }

    #[test]
    fn three_routes_agree_on_small_irreps() {
        for name in ["A1-sc", "A1-adj", "A2-sc", "B2-sc", "G2"] {
            let c = cat(name);
            let p = pool(&c, 27, 8);
            for a in &p {
                for b in &p {
                    let k: BTreeMap<i64, u64> = c
                        .pair_series_kostant(a, b)
                        .unwrap()
                        .terms()
                        .map(|(e, n)| (2 * e, n.to_u64().unwrap()))
                        .collect();
                    assert_eq!(c.pair_series_slice(a, b).unwrap(), k, "{name} {a} {b}");
                    assert_eq!(c.pair_series_dense(a, b).unwrap(), k, "{name} {a} {b}");
                }
            }
        }
    }

    #[test]
    fn exact_and_modular_ranks_agree() {
        let c = cat("A2-sc");
        let slice = c.slice().unwrap();
        for (l, m) in [([1, 1], [1, 1]), ([2, 2], [1, 1]), ([3, 0], [0, 3]), ([2, 1], [3, 2])] {
            let (l, m) = (w(&c, &l), w(&c, &m));
            if !c.datum().in_root_lattice(&(m - l)) {
                continue;
            }
            let (v, x) = (c.module(&l).unwrap(), c.module(&m).unwrap());
            for deg in (x.bottom - v.top()..=x.top() - v.bottom).step_by(2) {
                let p = modular::small_primes().next().unwrap();
                assert_eq!(
                    hom_dim_mod(&v, &x, deg, &slice.active, p),
                    Some(hom_dim_exact(&v, &x, deg, &slice.active))
                );
            }
        }
    }

    #[test]
    fn jordan_strings_are_symmetric() {
        let c = cat("B2-sc");
        let m = c.module(&w(&c, &[1, 1])).unwrap();
        let n = m.dims.len();
        for &(start, end) in &m.strings {
            assert_eq!(start + end, n - 1);
        }
        let total: usize = m.strings.iter().map(|&(a, b)| b - a + 1).sum();
        assert_eq!(total, m.dims.iter().sum::<usize>());
    }

    #[test]
    fn hom_basis_elements_compose_with_additive_degrees() {
        let c = cat("A1-adj");
        let lam = w(&c, &[2]);
        let basis = c.hom_basis((lam, 0), (lam, 0), 2).unwrap();
        assert_eq!(basis.len(), 1);
        let e = &basis[0];
        assert!(c.is_equivariant(e).unwrap());
        let ee = compose(e, e).unwrap();
        assert_eq!(ee.degree, 4);
        assert!(!ee.is_zero());
        assert!(c.is_equivariant(&ee).unwrap());
        // e³ vanishes on a three-dimensional representation
        assert!(compose(&ee, e).unwrap().is_zero());
        let id = c.identity(&irrep(lam)).unwrap();
        assert_eq!(compose(&id, e).unwrap(), *e);
        assert_eq!(compose(e, &id).unwrap(), *e);
    }

    #[test]
    fn composition_checks_shapes() {
        let c = cat("A1-adj");
        let lam = w(&c, &[2]);
        let f = c.identity(&irrep(lam)).unwrap();
        let g = c.identity(&FreeObject::unit(c.datum())).unwrap();
        assert!(matches!(compose(&f, &g), Err(Error::Domain(_))));
    }

    #[test]
    fn composition_is_associative() {
        let c = cat("A2-sc");
        let lam = w(&c, &[1, 1]);
        let b2 = c.hom_basis((lam, 0), (lam, 0), 2).unwrap();
        let b0 = c.hom_basis((lam, 0), (lam, 0), 0).unwrap();
        assert!(!b2.is_empty() && !b0.is_empty());
        let (f, g, h) = (&b2[0], &b0[0], &b2[b2.len() - 1]);
        let left = compose(&compose(f, g).unwrap(), h).unwrap();
        let right = compose(f, &compose(g, h).unwrap()).unwrap();
        assert_eq!(left, right);
        assert_eq!(left.degree, 4);
    }

    #[test]
    fn non_equivariant_maps_are_rejected() {
        let c = cat("A1-adj");
        let lam = w(&c, &[2]);
        let mut h = HomElement::new(irrep(lam), irrep(lam), 0);
        let mut m = Matrix::zeros(3, 3);
        m[(0, 0)] = Rational::from_int(1);
        h.set_block(0, 0, m);
        assert!(!c.is_equivariant(&h).unwrap());
    }

    #[test]
    fn mixed_shifts_compose() {
        let c = cat("A2-sc");
        let a = FreeObject::from_summands([(w(&c, &[1, 0]), 0), (w(&c, &[0, 0]), 2)]);
        let s = mixed_shift(&a, 3).then(-1);
        assert_eq!(s, mixed_shift(&a, 2));
        assert_eq!(s.object.summands()[1].1, 4);
        assert_eq!(a.shift(3).shift(-3), a);
    }

    #[test]
    fn levi_pullback_of_the_standard_representation() {
        let c = cat("A2-sc");
        let a = FreeObject::indecomposable(w(&c, &[1, 0]), 3);
        let (levi, obj) = c.levi_pullback(&[0], &a).unwrap();
        let mut dims: Vec<u128> = obj.summands().iter().map(|(x, _)| levi.datum().weyl_dimension(x)).collect();
        dims.sort();
        assert_eq!(dims, vec![1, 2]);
        assert!(obj.summands().iter().all(|&(_, i)| i == 3));
        // pullback commutes with internal shifts
        assert_eq!(c.pullback_into(&levi, &a.shift(2)).unwrap(), obj.shift(2));
        let o = FreeObject::unit(c.datum());
        assert_eq!(c.pullback_into(&levi, &o).unwrap(), FreeObject::unit(levi.datum()));
    }

    #[test]
    fn levi_profiles_keep_totals_and_shift_down() {
        let c = cat("A2-sc");
        let p = pool(&c, 15, 4);
        for subset in [vec![], vec![0], vec![1]] {
            for a in &p {
                for b in &p {
                    let cmp = c.levi_comparison(&subset, &irrep(*a), &irrep(*b)).unwrap();
                    assert!(cmp.totals_agree(), "{subset:?} {a} {b}");
                    assert!(cmp.levi_dominates_cumulatively(), "{subset:?} {a} {b}");
                }
            }
        }
    }

    #[test]
    fn torus_side_sits_in_degree_zero() {
        let c = cat("A2-sc");
        let v = irrep(w(&c, &[1, 1]));
        let cmp = c.levi_comparison(&[], &v, &v).unwrap();
        assert!(cmp.levi.table().keys().all(|&(_, k)| k == 0));
        // six roots of multiplicity one and a two-dimensional zero weight
        assert_eq!(cmp.levi.total(), 10);
        assert!(!cmp.entrywise_equal());
    }

    #[test]
    fn levi_slice_route_matches_kostant() {
        let c = cat("B2-sc");
        for subset in [vec![], vec![0], vec![1]] {
            let v = FreeObject::from_summands([(w(&c, &[1, 0]), 0), (w(&c, &[0, 1]), 1)]);
            let (levi, obj) = c.levi_pullback(&subset, &v).unwrap();
            assert_eq!(
                levi.hom_profile_slice(&obj, &obj).unwrap(),
                levi.hom_profile_kostant(&obj, &obj).unwrap()
            );
        }
    }

    #[test]
    fn adjunction_on_small_pools() {
        for name in ["A1-adj", "A2-sc", "B2-sc"] {
            let c = cat(name);
            let p = pool(&c, 20, 6);
            for a in &p {
                for b in &p {
                    assert!(c.adjunction_check(a, b).unwrap(), "{name} {a} {b}");
                }
            }
        }
    }

    #[test]
    fn profiles_serialize_with_keys() {
        let c = cat("A1-adj");
        let v = irrep(w(&c, &[2]));
        let o = FreeObject::unit(c.datum());
        let json = serde_json::to_value(c.hom_profile_kostant(&o, &v).unwrap()).unwrap();
        assert_eq!(json["entries"], serde_json::json!([{"internal": 0, "cohomological": 2, "dim": 1}]));
        assert_eq!(json["source"][0]["degree"], 0);
        assert_eq!(json["target"].as_array().unwrap().len(), 1);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn orlov_axioms_hold(a in 0i64..4, b in 0i64..4, x in 0i64..4, y in 0i64..4, i in -4i64..5, j in -4i64..5) {
            let c = cat("A2-sc");
            let (l, m) = (w(&c, &[a, b]), w(&c, &[x, y]));
            prop_assert!(c.orlov_axiom_check(&l, &m, i, j).unwrap());
        }

        #[test]
        fn diagonal_morphisms_are_lines(a in 0i64..12, i in -5i64..5) {
            let c = cat("A1-sc");
            let l = w(&c, &[a]);
            let prof = c.hom_profile_kostant(&FreeObject::indecomposable(l, i), &FreeObject::indecomposable(l, i)).unwrap();
            prop_assert_eq!(prof.morphisms(), 1);
        }
    }
}
