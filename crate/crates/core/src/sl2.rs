//! Iwahori-equivariant perverse sheaves on the affine Grassmannian of `SL(2)`, in
//! Grothendieck-group form.
//!
//! Orbits `X_n` are labelled by even integers. Their closures form a chain
//! `X_0 ⊂ X̄_{−2} ⊂ X̄_2 ⊂ X̄_{−4} ⊂ …`, and the position of `X_n` in the chain is its
//! dimension. Every table below is generated from that chain.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

fn check_even(n: i64) -> Result<()> {
    if n % 2 != 0 {
        return Err(Error::domain(format!("orbit label {n} is odd")));
    }
    Ok(())
}

/// `dim X_n`: `n` for `n ≥ 0`, `−n − 1` for `n < 0`.
pub fn orbit_dim(n: i64) -> Result<u64> {
    check_even(n)?;
    Ok(if n >= 0 { n as u64 } else { (-n - 1) as u64 })
}

/// The label of the orbit of dimension `d`.
pub fn label_of_dim(d: u64) -> i64 {
    let d = d as i64;
    if d % 2 == 0 {
        d
    } else {
        -d - 1
    }
}

/// Open orbit of the boundary `X̄_n ∖ X_n`, if any.
fn below(n: i64) -> Option<i64> {
    let d = orbit_dim(n).ok()?;
    (d > 0).then(|| label_of_dim(d - 1))
}

/// The orbit whose closure is the next one up the chain.
fn above(n: i64) -> i64 {
    label_of_dim(orbit_dim(n).expect("even label") + 1)
}

/// Finite formal sum `Σ c_n [IC_n]` with `c_n ≥ 0`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PerverseClass {
    terms: BTreeMap<i64, u64>,
}

impl PerverseClass {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn ic(n: i64) -> Self {
        let mut c = Self::new();
        c.add(n, 1);
        c
    }

    /// `IC_a ⊕ IC_{a+2} ⊕ … ⊕ IC_b`, empty when `a > b`.
    pub fn range(a: i64, b: i64) -> Self {
        let mut c = Self::new();
        let mut n = a;
        while n <= b {
            c.add(n, 1);
            n += 2;
        }
        c
    }

    pub fn add(&mut self, n: i64, m: u64) {
        debug_assert!(n % 2 == 0);
        if m > 0 {
            *self.terms.entry(n).or_insert(0) += m;
        }
    }

    pub fn add_class(&mut self, other: &PerverseClass, times: u64) {
        for (&n, &m) in &other.terms {
            self.add(n, m * times);
        }
    }

    /// `self − other`, or `None` if a multiplicity would go negative.
    pub fn checked_sub(&self, other: &PerverseClass) -> Option<PerverseClass> {
        let mut out = self.clone();
        for (&n, &m) in &other.terms {
            let cur = out.terms.get(&n).copied().unwrap_or(0);
            let left = cur.checked_sub(m)?;
            if left == 0 {
                out.terms.remove(&n);
            } else {
                out.terms.insert(n, left);
            }
        }
        Some(out)
    }

    pub fn get(&self, n: i64) -> u64 {
        self.terms.get(&n).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> &BTreeMap<i64, u64> {
        &self.terms
    }

    pub fn len(&self) -> u64 {
        self.terms.values().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
}

impl fmt::Display for PerverseClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .rev()
            .map(|(n, m)| if *m == 1 { format!("IC_{n}") } else { format!("{m}·IC_{n}") })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl Serialize for PerverseClass {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_map(self.terms.iter().map(|(n, m)| (n.to_string(), m)))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum FlagKind {
    #[serde(rename = "standard")]
    Standard,
    #[serde(rename = "costandard")]
    Costandard,
    #[serde(rename = "projective")]
    Projective,
}

impl fmt::Display for FlagKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FlagKind::Standard => "Delta",
            FlagKind::Costandard => "Nabla",
            FlagKind::Projective => "P",
        })
    }
}

/// Loewy layers of an object, top first; for projectives also its standard flag, top first.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FlagTable {
    pub kind: FlagKind,
    pub label: i64,
    pub layers: Vec<PerverseClass>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub standard_flag: Option<Vec<i64>>,
}

impl FlagTable {
    /// Jordan–Hölder multiset: the sum of all layers.
    pub fn composition_factors(&self) -> PerverseClass {
        let mut c = PerverseClass::new();
        for l in &self.layers {
            c.add_class(l, 1);
        }
        c
    }

    /// `(layer index, IC label, multiplicity)` rows.
    pub fn rows(&self) -> Vec<(usize, i64, u64)> {
        self.layers
            .iter()
            .enumerate()
            .flat_map(|(i, l)| l.terms().iter().rev().map(move |(&n, &m)| (i, n, m)))
            .collect()
    }
}

/// `Δ_n = (j_n)_! C[dim X_n]`: head `IC_n` over the boundary orbit.
pub fn standard_class(n: i64) -> Result<FlagTable> {
    check_even(n)?;
    let mut layers = vec![PerverseClass::ic(n)];
    if let Some(b) = below(n) {
        layers.push(PerverseClass::ic(b));
    }
    Ok(FlagTable {
        kind: FlagKind::Standard,
        label: n,
        layers,
        standard_flag: None,
    })
}

/// `∇_n`: the layers of `Δ_n` in reverse order.
pub fn costandard_class(n: i64) -> Result<FlagTable> {
    let mut t = standard_class(n)?;
    t.layers.reverse();
    t.kind = FlagKind::Costandard;
    Ok(t)
}

/// `P_n` from reciprocity `[P_n : Δ_m] = [∇_m : IC_n]`: the standard flag is
/// `Δ_n` over `Δ_{n'}` with `X_{n'}` the next orbit up.
pub fn projective_class(n: i64) -> Result<FlagTable> {
    check_even(n)?;
    let next = above(n);
    let top = standard_class(n)?;
    let bottom = standard_class(next)?;
    let mut middle = PerverseClass::new();
    for l in top.layers.iter().skip(1) {
        middle.add_class(l, 1);
    }
    middle.add_class(&bottom.layers[0], 1);
    let mut layers = vec![top.layers[0].clone(), middle];
    for l in bottom.layers.iter().skip(1) {
        layers.push(l.clone());
    }
    Ok(FlagTable {
        kind: FlagKind::Projective,
        label: n,
        layers,
        standard_flag: Some(vec![n, next]),
    })
}

/// `[P_n : Δ_m]`, read from the standard flag.
pub fn projective_standard_multiplicity(n: i64, m: i64) -> Result<u64> {
    check_even(m)?;
    let p = projective_class(n)?;
    Ok(p.standard_flag.unwrap_or_default().iter().filter(|&&x| x == m).count() as u64)
}

/// `IC_m ⋆ IC_k` (`k ≥ 0`, spherical) from the closed formula.
pub fn convolve_ic(m: i64, k: i64) -> Result<PerverseClass> {
    check_even(m)?;
    check_even(k)?;
    if k < 0 {
        return Err(Error::domain(format!("right factor IC_{k} must have k ≥ 0")));
    }
    Ok(if m >= 0 {
        // spherical: Clebsch–Gordan, symmetric in the two factors
        PerverseClass::range((m - k).abs(), m + k)
    } else {
        let n = -m;
        if n > k {
            PerverseClass::range(-n - k, -n + k)
        } else {
            PerverseClass::range(-n - k, n - k - 2)
        }
    })
}

/// `IC_m ⋆ IC_k` by induction on `−m`, starting from `IC_{−2} ⋆ IC_j` and using
/// `IC_{−n−2} ⋆ IC_k = IC_{−2} ⋆ (IC_n ⋆ IC_k) − IC_{−n} ⋆ IC_k`.
pub fn convolve_ic_recursive(m: i64, k: i64) -> Result<PerverseClass> {
    check_even(m)?;
    check_even(k)?;
    if k < 0 {
        return Err(Error::domain(format!("right factor IC_{k} must have k ≥ 0")));
    }
    if m >= 0 {
        return Ok(PerverseClass::range((m - k).abs(), m + k));
    }
    // IC_{−2} ⋆ IC_j: the boundary computation of the rank-one resolution
    let minus_two = |j: i64| -> PerverseClass {
        if j == 0 {
            PerverseClass::ic(-2)
        } else {
            PerverseClass::range(-j - 2, -j)
        }
    };
    // cur = IC_{−n−2} ⋆ IC_k; IC_{−2} ⋆ IC_N = IC_{−N−2} ⊕ IC_{−N} with N = n + 2
    let mut cur = minus_two(k);
    let mut n = 0;
    while -n - 2 > m {
        let mut lhs = PerverseClass::new();
        for (&j, &c) in PerverseClass::range((n + 2 - k).abs(), n + 2 + k).terms() {
            lhs.add_class(&minus_two(j), c);
        }
        cur = lhs.checked_sub(&cur).ok_or_else(|| {
            Error::domain(format!("recursion for IC_{} ⋆ IC_{k} left the effective cone", -n - 4))
        })?;
        n += 2;
    }
    Ok(cur)
}

/// `[M ⋆ IC_k]` for `M` with the given composition factors; convolution with a spherical
/// object is exact, so it acts on classes factor by factor.
pub fn convolve_class(c: &PerverseClass, k: i64) -> Result<PerverseClass> {
    let mut out = PerverseClass::new();
    for (&n, &m) in c.terms() {
        out.add_class(&convolve_ic(n, k)?, m);
    }
    Ok(out)
}

/// Label of the `j`-th term (`j ≤ 0`) of the minimal projective resolution of `IC_0`:
/// the orbit of dimension `−j`.
pub fn resolution_term(j: i64) -> Result<i64> {
    if j > 0 {
        return Err(Error::domain(format!("resolution index {j} is positive")));
    }
    Ok(label_of_dim((-j) as u64))
}

/// `dim Hom(P_a, P_b) = [P_b : IC_a]`.
pub fn hom_dim_proj(a: i64, b: i64) -> Result<u64> {
    check_even(a)?;
    Ok(projective_class(b)?.composition_factors().get(a))
}

/// Per-index dimensions of `Hom^•(P^•, P^• ⋆ IC_k)`: the piece at index `i ≤ 0` collects
/// `Hom(P^i, P^{i+n} ⋆ IC_k)` in degree `n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomComplexProfile {
    pub k: i64,
    /// Degree window `[lo, hi]` outside which every piece vanishes.
    pub window: (i64, i64),
    /// `index → dims over the window`.
    pub pieces: BTreeMap<i64, Vec<u64>>,
}

impl HomComplexProfile {
    /// The piece at the lowest computed index, which repeats for all lower indices.
    pub fn pattern(&self) -> &[u64] {
        self.pieces.values().next().map(Vec::as_slice).unwrap_or(&[])
    }

    /// Indices whose piece differs from the pattern.
    pub fn exceptions(&self) -> BTreeMap<i64, Vec<u64>> {
        let pat = self.pattern();
        self.pieces
            .iter()
            .filter(|(_, v)| v.as_slice() != pat)
            .map(|(&i, v)| (i, v.clone()))
            .collect()
    }

    /// `Σ_n (−1)^n dim` of the piece at index `i`.
    pub fn euler_characteristic(&self, i: i64) -> Option<i64> {
        let v = self.pieces.get(&i)?;
        Some(
            v.iter()
                .enumerate()
                .map(|(t, &d)| {
                    let n = self.window.0 + t as i64;
                    if n % 2 == 0 {
                        d as i64
                    } else {
                        -(d as i64)
                    }
                })
                .sum(),
        )
    }

    /// Drop zero entries at both ends of a piece, returning its degree range and dims.
    pub fn trimmed(&self, i: i64) -> Option<(i64, Vec<u64>)> {
        let v = self.pieces.get(&i)?;
        let first = v.iter().position(|&d| d > 0)?;
        let last = v.iter().rposition(|&d| d > 0)?;
        Some((self.window.0 + first as i64, v[first..=last].to_vec()))
    }
}

/// `[P^{j} ⋆ IC_k : IC_a]`.
fn convolved_multiplicity(j: i64, k: i64, a: i64) -> Result<u64> {
    let p = projective_class(resolution_term(j)?)?;
    Ok(convolve_class(&p.composition_factors(), k)?.get(a))
}

/// Pieces at indices `lowest ≤ i ≤ 0`; the window is `[−k−1, k+1]`, which is verified to
/// contain every nonzero entry.
pub fn hom_complex_profile(k: i64, lowest: i64) -> Result<HomComplexProfile> {
    check_even(k)?;
    if k < 0 {
        return Err(Error::domain(format!("k = {k} must be nonnegative")));
    }
    if lowest > 0 {
        return Err(Error::domain(format!("lowest index {lowest} is positive")));
    }
    let (lo, hi) = (-k - 1, k + 1);
    let mut pieces = BTreeMap::new();
    for i in lowest..=0 {
        let a = resolution_term(i)?;
        let mut dims = Vec::with_capacity((hi - lo + 1) as usize);
        for n in lo..=hi {
            dims.push(if i + n > 0 { 0 } else { convolved_multiplicity(i + n, k, a)? });
        }
        // one degree beyond each end of the window must vanish
        for n in [lo - 1, lo - 2, hi + 1, hi + 2] {
            if i + n <= 0 && convolved_multiplicity(i + n, k, a)? != 0 {
                return Err(Error::domain(format!("piece {i} leaves the window at degree {n}")));
            }
        }
        pieces.insert(i, dims);
    }
    Ok(HomComplexProfile {
        k,
        window: (lo, hi),
        pieces,
    })
}
