//! Characters of irreducible representations, tensor products and branching to Levi subgroups.

use std::collections::{BTreeMap, VecDeque};
use std::sync::{Arc, Mutex};

use rustc_hash::{FxHashMap, FxHashSet};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::rootdata::{RootDatum, Weight};

/// A finite formal Z-linear combination of weights.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CharacterElement {
    terms: BTreeMap<Weight, i64>,
}

impl CharacterElement {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Weight, i64)>) -> Self {
        let mut c = Self::new();
        for (w, m) in terms {
            c.add_term(w, m);
        }
        c
    }

    pub fn add_term(&mut self, w: Weight, m: i64) {
        if m == 0 {
            return;
        }
        let entry = self.terms.entry(w).or_insert(0);
        *entry += m;
        if *entry == 0 {
            self.terms.remove(&w);
        }
    }

    pub fn terms(&self) -> &BTreeMap<Weight, i64> {
        &self.terms
    }

    pub fn get(&self, w: &Weight) -> i64 {
        self.terms.get(w).copied().unwrap_or(0)
    }

    /// Sum of multiplicities.
    pub fn dimension(&self) -> i64 {
        self.terms.values().sum()
    }

    pub fn mul(&self, other: &CharacterElement) -> CharacterElement {
        let mut out = FxHashMap::default();
        for (a, m) in &self.terms {
            for (b, n) in &other.terms {
                *out.entry(*a + *b).or_insert(0) += m * n;
            }
        }
        Self::from_terms(out)
    }

    /// Equal multiplicities on W-conjugate weights.
    pub fn is_weyl_invariant(&self, d: &RootDatum) -> bool {
        self.terms
            .iter()
            .all(|(w, m)| d.weyl_group().iter().all(|s| self.get(&s.apply(w)) == *m))
    }
}

/// Multiplicities of irreducible constituents, keyed by dominant highest weight.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DecompositionList {
    entries: BTreeMap<Weight, u64>,
}

impl DecompositionList {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn singleton(w: Weight) -> Self {
        let mut d = Self::new();
        d.add(w, 1);
        d
    }

    pub fn add(&mut self, w: Weight, m: u64) {
        if m > 0 {
            *self.entries.entry(w).or_insert(0) += m;
        }
    }

    pub fn get(&self, w: &Weight) -> u64 {
        self.entries.get(w).copied().unwrap_or(0)
    }

    pub fn entries(&self) -> &BTreeMap<Weight, u64> {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Entries by `⟨·, 2ρ̌⟩` descending, then coordinates descending.
    pub fn ordered(&self, d: &RootDatum) -> Vec<(Weight, u64)> {
        let mut v: Vec<(Weight, u64)> = self.entries.iter().map(|(w, m)| (*w, *m)).collect();
        v.sort_by(|(a, _), (b, _)| {
            d.pair_2rho_check(b)
                .cmp(&d.pair_2rho_check(a))
                .then_with(|| b.cmp(a))
        });
        v
    }
}

impl Serialize for DecompositionList {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.entries.iter())
    }
}

/// Character data of one irreducible representation.
#[derive(Debug)]
pub struct IrrepCharacter {
    pub highest_weight: Weight,
    /// Dominant weights with multiplicities, `⟨·, 2ρ̌⟩` descending.
    pub dominant: Vec<(Weight, i64)>,
    /// All weights with multiplicities, sorted by coordinates.
    pub full: Vec<(Weight, i64)>,
    lookup: FxHashMap<Weight, i64>,
}

impl IrrepCharacter {
    pub fn dominant_multiplicity(&self, w: &Weight) -> i64 {
        self.lookup.get(w).copied().unwrap_or(0)
    }

    pub fn dimension(&self) -> i64 {
        self.full.iter().map(|(_, m)| m).sum()
    }
}

/// The representation ring of one root datum, with a memo table of irreducible characters.
/// The table is a pure cache: results never depend on its contents.
#[derive(Debug)]
pub struct RepRing {
    datum: Arc<RootDatum>,
    cache: Mutex<FxHashMap<Weight, Arc<IrrepCharacter>>>,
}

impl RepRing {
    pub fn new(datum: RootDatum) -> Self {
        Self::from_arc(Arc::new(datum))
    }

    pub fn from_arc(datum: Arc<RootDatum>) -> Self {
        RepRing {
            datum,
            cache: Mutex::new(FxHashMap::default()),
        }
    }

    pub fn datum(&self) -> &RootDatum {
        &self.datum
    }

    pub fn datum_arc(&self) -> Arc<RootDatum> {
        Arc::clone(&self.datum)
    }

    fn check_dominant(&self, lambda: &Weight) -> Result<()> {
        self.datum.check_weight(lambda)?;
        if !self.datum.is_dominant(lambda) {
            return Err(Error::domain(format!(
                "weight ({lambda}) is not dominant for {}",
                self.datum.name
            )));
        }
        Ok(())
    }

    pub fn character(&self, lambda: &Weight) -> Result<Arc<IrrepCharacter>> {
        self.check_dominant(lambda)?;
        if let Some(c) = self.cache.lock().unwrap().get(lambda) {
            return Ok(Arc::clone(c));
        }
        let computed = Arc::new(freudenthal(&self.datum, lambda));
        self.cache
            .lock()
            .unwrap()
            .insert(*lambda, Arc::clone(&computed));
        Ok(computed)
    }

    /// `dim V_λ(μ)`.
    pub fn weight_multiplicity(&self, lambda: &Weight, mu: &Weight) -> Result<u64> {
        self.datum.check_weight(mu)?;
        let ch = self.character(lambda)?;
        let (dom, _) = self.datum.to_dominant(mu);
        Ok(ch.dominant_multiplicity(&dom) as u64)
    }

    pub fn irreducible_character(&self, lambda: &Weight) -> Result<CharacterElement> {
        let ch = self.character(lambda)?;
        Ok(CharacterElement::from_terms(ch.full.iter().copied()))
    }

    pub fn dimension(&self, lambda: &Weight) -> Result<u128> {
        self.check_dominant(lambda)?;
        Ok(self.datum.weyl_dimension(lambda))
    }

    /// Decompose a W-invariant character given by its dominant part.
    /// Fails if the input is not a nonnegative combination of irreducible characters.
    pub fn decompose_dominant(&self, dominant: FxHashMap<Weight, i64>) -> Result<DecompositionList> {
        let d = &*self.datum;
        let mut remaining = dominant;
        remaining.retain(|_, m| *m != 0);
        let mut order: Vec<Weight> = remaining.keys().copied().collect();
        order.sort_by(|a, b| d.basis_order(a, b));
        let mut out = DecompositionList::new();
        for nu in order {
            let c = remaining.get(&nu).copied().unwrap_or(0);
            if c == 0 {
                continue;
            }
            if c < 0 {
                return Err(Error::domain(format!("negative multiplicity {c} at ({nu})")));
            }
            let ch = self.character(&nu)?;
            for (w, m) in &ch.dominant {
                let slot = remaining.entry(*w).or_insert(0);
                *slot -= c * m;
            }
            out.add(nu, c as u64);
        }
        if remaining.values().any(|&m| m != 0) {
            return Err(Error::domain("character is not a sum of irreducible characters"));
        }
        Ok(out)
    }

    /// `V_λ ⊗ V_μ` by multiplying characters and peeling dominant leading terms.
    pub fn tensor_decompose(&self, lambda: &Weight, mu: &Weight) -> Result<DecompositionList> {
        let a = self.character(lambda)?;
        let b = self.character(mu)?;
        let (small, large) = if a.full.len() <= b.full.len() { (a, b) } else { (b, a) };
        let d = &*self.datum;
        let mut dominant: FxHashMap<Weight, i64> = FxHashMap::default();
        for (x, m) in &small.full {
            for (y, n) in &large.full {
                let s = *x + *y;
                if d.is_dominant(&s) {
                    *dominant.entry(s).or_insert(0) += m * n;
                }
            }
        }
        self.decompose_dominant(dominant)
    }

    /// `V_λ ⊗ V_μ` by the Racah–Speiser reflection rule applied to the weights of `V_λ`.
    pub fn tensor_decompose_klimyk(&self, lambda: &Weight, mu: &Weight) -> Result<DecompositionList> {
        self.check_dominant(mu)?;
        let a = self.character(lambda)?;
        let d = &*self.datum;
        let two_rho = d.two_rho();
        let mut acc: FxHashMap<Weight, i64> = FxHashMap::default();
        for (x, m) in &a.full {
            // doubled coordinates keep ρ integral
            let shifted = (*x + *mu).scale(2) + two_rho;
            let (dom, sign) = d.to_dominant(&shifted);
            if (0..d.rank).any(|i| d.pair_simple(&dom, i) == 0) {
                continue;
            }
            *acc.entry((dom - two_rho).div_exact(2)).or_insert(0) += sign * m;
        }
        let mut out = DecompositionList::new();
        for (w, m) in acc {
            if m < 0 {
                return Err(Error::domain(format!("negative multiplicity at ({w})")));
            }
            out.add(w, m as u64);
        }
        Ok(out)
    }

    /// Tensor product of two decompositions, distributing over summands.
    pub fn tensor_lists(&self, a: &DecompositionList, b: &DecompositionList) -> Result<DecompositionList> {
        let mut out = DecompositionList::new();
        for (x, m) in a.entries() {
            for (y, n) in b.entries() {
                for (z, k) in self.tensor_decompose(x, y)?.entries() {
                    out.add(*z, m * n * k);
                }
            }
        }
        Ok(out)
    }

    /// Restriction of `V_λ` to the Levi whose representation ring is `levi`.
    pub fn restrict_to_levi(&self, levi: &RepRing, lambda: &Weight) -> Result<DecompositionList> {
        let ch = self.character(lambda)?;
        let l = levi.datum();
        if l.weight_dim != self.datum.weight_dim {
            return Err(Error::domain("Levi datum lives on a different lattice"));
        }
        let dominant: FxHashMap<Weight, i64> = ch
            .full
            .iter()
            .filter(|(w, _)| l.is_dominant(w))
            .copied()
            .collect();
        levi.decompose_dominant(dominant)
    }

    /// Restriction of a whole decomposition.
    pub fn restrict_list(&self, levi: &RepRing, list: &DecompositionList) -> Result<DecompositionList> {
        let mut out = DecompositionList::new();
        for (w, m) in list.entries() {
            for (z, k) in self.restrict_to_levi(levi, w)?.entries() {
                out.add(*z, m * k);
            }
        }
        Ok(out)
    }
}

/// `⟨χ, 2ρ̌_G − 2ρ̌_L⟩` for `χ` orthogonal to the coroots of the Levi on `subset`.
pub fn levi_degree_shift(d: &RootDatum, subset: &[usize], chi: &Weight) -> Result<i64> {
    let l = d.levi(subset)?;
    d.check_weight(chi)?;
    if (0..l.rank).any(|i| l.pair_simple(chi, i) != 0) {
        return Err(Error::domain(format!(
            "weight ({chi}) is not central for the Levi {}",
            l.name
        )));
    }
    Ok(chi.dot(&(d.two_rho_check() - l.two_rho_check())))
}

/// Dominant weights `μ ≤ λ` via chains of positive-root subtractions that stay dominant.
fn dominant_weights_below(d: &RootDatum, lambda: &Weight) -> Vec<Weight> {
    let mut seen: FxHashSet<Weight> = FxHashSet::default();
    seen.insert(*lambda);
    let mut queue = VecDeque::from([*lambda]);
    while let Some(x) = queue.pop_front() {
        for r in d.positive_roots() {
            let y = x - r.root;
            if d.is_dominant(&y) && seen.insert(y) {
                queue.push_back(y);
            }
        }
    }
    let mut out: Vec<Weight> = seen.into_iter().collect();
    out.sort_by(|a, b| d.basis_order(a, b));
    out
}

/// Freudenthal's recursion over the dominant weights, with the invariant form
/// `B` of the datum. All quantities are integers and each division is exact.
fn freudenthal(d: &RootDatum, lambda: &Weight) -> IrrepCharacter {
    let two_rho = d.two_rho();
    let order = dominant_weights_below(d, lambda);
    let mut lookup: FxHashMap<Weight, i64> = FxHashMap::default();
    lookup.insert(*lambda, 1);
    let mut dominant = vec![(*lambda, 1)];
    for mu in order.iter().skip(1) {
        let lhs = d.invariant_form(&(*lambda - *mu), &(*lambda + *mu + two_rho));
        let mut rhs: i64 = 0;
        for r in d.positive_roots() {
            let mut k = 1;
            loop {
                let y = *mu + r.root.scale(k);
                let (dom, _) = d.to_dominant(&y);
                match lookup.get(&dom) {
                    Some(&m) => rhs += m * d.invariant_form(&y, &r.root),
                    None => break,
                }
                k += 1;
            }
        }
        rhs *= 2;
        assert!(lhs > 0 && rhs % lhs == 0, "Freudenthal division is not exact at ({mu})");
        let m = rhs / lhs;
        assert!(m > 0, "dominant weight ({mu}) below ({lambda}) has multiplicity {m}");
        lookup.insert(*mu, m);
        dominant.push((*mu, m));
    }
    let mut full = Vec::new();
    for (w, m) in &dominant {
        for x in d.orbit(w) {
            full.push((x, *m));
        }
    }
    full.sort_unstable();
    IrrepCharacter {
        highest_weight: *lambda,
        dominant,
        full,
        lookup,
    }
}
