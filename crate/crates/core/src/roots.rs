//! Root data of `B_n` and `D_n`, weights in doubled coordinates, Weyl groups,
//! and the simple-object sets of the categories `B^k_n` and `D^k_n`.
//!
//! A weight `lambda = (lambda_1, ..., lambda_n)` is stored through its doubled
//! coordinates `d_i = 2 lambda_i`, so integer partitions have all `d_i` even
//! (grade 0) and spinor weights have all `d_i` odd (grade 1). For the `D`
//! family the last coordinate carries a separate sign.

use std::cmp::Ordering;
use std::collections::{HashMap, HashSet};
use std::fmt;
use std::sync::Arc;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::cyclo::{Coefficient, CyclotomicField};
use crate::error::{Error, Result};

pub const MAX_RANK: usize = 8;
pub const MAX_SIMPLES: usize = 20_000;

/// `v` is `zeta^4` in both families.
pub const V_IN_ZETA: i64 = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    B,
    D,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::B => "B",
            Family::D => "D",
        })
    }
}

impl std::str::FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "B" | "b" => Ok(Family::B),
            "D" | "d" => Ok(Family::D),
            _ => Err(Error::InvalidSpec(format!("unknown family {s:?}, expected B or D"))),
        }
    }
}

/// Family, rank and level of a category.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "SpecRepr")]
pub struct CatSpec {
    family: Family,
    n: usize,
    k: usize,
    /// Order of `q = v^2`.
    q_order: u64,
    /// Order `N` of the ambient root of unity `zeta`.
    zeta_order: u64,
}

#[derive(Deserialize)]
struct SpecRepr {
    family: Family,
    n: usize,
    k: usize,
    q_order: u64,
    zeta_order: u64,
}

impl TryFrom<SpecRepr> for CatSpec {
    type Error = Error;

    fn try_from(r: SpecRepr) -> Result<Self> {
        let spec = CatSpec::new(r.family, r.n, r.k)?;
        if spec.q_order != r.q_order || spec.zeta_order != r.zeta_order {
            return Err(Error::InvalidSpec("root orders do not match family formula".into()));
        }
        Ok(spec)
    }
}

impl CatSpec {
    pub fn new(family: Family, n: usize, k: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidSpec("rank must be at least 1".into()));
        }
        if k == 0 {
            return Err(Error::InvalidSpec("level parameter must be at least 1".into()));
        }
        if n > MAX_RANK {
            return Err(Error::RankTooLarge { n, max: MAX_RANK });
        }
        let (q_order, zeta_order) = match family {
            Family::B => (4 * (n + k) as u64, 32 * (n + k) as u64),
            Family::D => {
                if n < 2 {
                    return Err(Error::InvalidSpec("D family needs rank at least 2".into()));
                }
                (2 * (n + k) as u64 - 2, 16 * (n + k - 1) as u64)
            }
        };
        Ok(CatSpec { family, n, k, q_order, zeta_order })
    }

    pub fn b(n: usize, k: usize) -> Result<Self> {
        Self::new(Family::B, n, k)
    }

    pub fn d(n: usize, k: usize) -> Result<Self> {
        Self::new(Family::D, n, k)
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn q_order(&self) -> u64 {
        self.q_order
    }

    pub fn zeta_order(&self) -> u64 {
        self.zeta_order
    }

    pub fn field(&self) -> Arc<CyclotomicField> {
        CyclotomicField::get(self.zeta_order)
    }

    /// The level-rank partner: `D` with rank and level exchanged.
    pub fn level_rank_dual(&self) -> Result<Self> {
        match self.family {
            Family::D => CatSpec::d(self.k, self.n),
            Family::B => Err(Error::WrongFamily(Family::D)),
        }
    }

    /// `4 (x|y)` for doubled coordinate vectors, i.e. the `zeta`-exponent of `v^{(x|y)}`.
    pub fn zeta_inner(&self, x: &[i64], y: &[i64]) -> i64 {
        let dot: i64 = x.iter().zip(y).map(|(a, b)| a * b).sum();
        match self.family {
            Family::B => 2 * dot,
            Family::D => dot,
        }
    }
}

impl fmt::Display for CatSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}(n={}, k={})", self.family, self.n, self.k)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Sign {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn as_i64(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

/// A dominant weight in doubled coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "WeightRepr")]
pub struct Weight {
    d: Vec<i64>,
    sign: Sign,
    grade: u8,
}

#[derive(Deserialize)]
struct WeightRepr {
    d: Vec<i64>,
    sign: Sign,
    grade: u8,
}

impl TryFrom<WeightRepr> for Weight {
    type Error = Error;

    fn try_from(r: WeightRepr) -> Result<Self> {
        let w = Weight::new(r.d, r.sign)?;
        if w.grade != r.grade {
            return Err(Error::InvalidWeight("grade does not match coordinate parity".into()));
        }
        Ok(w)
    }
}

impl Weight {
    /// `d` holds nonincreasing nonnegative doubled magnitudes of one parity.
    pub fn new(d: Vec<i64>, sign: Sign) -> Result<Self> {
        if d.is_empty() {
            return Err(Error::InvalidWeight("empty coordinate vector".into()));
        }
        let parity = d[0].rem_euclid(2);
        if d.iter().any(|x| x.rem_euclid(2) != parity) {
            return Err(Error::InvalidWeight(format!("mixed parity {d:?}")));
        }
        if d.iter().any(|&x| x < 0) || d.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidWeight(format!("not dominant {d:?}")));
        }
        if sign == Sign::Minus && *d.last().unwrap() == 0 {
            return Err(Error::InvalidWeight("negative sign on a zero last coordinate".into()));
        }
        Ok(Weight { d, sign, grade: parity as u8 })
    }

    /// From signed doubled coordinates; only the last entry may be negative.
    pub fn from_signed(signed: &[i64]) -> Result<Self> {
        let mut d = signed.to_vec();
        let last = d.last_mut().ok_or_else(|| Error::InvalidWeight("empty".into()))?;
        let sign = if *last < 0 { Sign::Minus } else { Sign::Plus };
        *last = last.abs();
        Weight::new(d, sign)
    }

    /// From the (integer) parts of a partition, padded to `n` rows.
    pub fn from_parts(parts: &[i64], n: usize) -> Result<Self> {
        if parts.iter().filter(|&&p| p != 0).count() > n {
            return Err(Error::InvalidWeight(format!("partition {parts:?} has more than {n} rows")));
        }
        let mut d: Vec<i64> = parts.iter().filter(|&&p| p != 0).map(|p| 2 * p).collect();
        d.resize(n, 0);
        Weight::new(d, Sign::Plus)
    }

    pub fn empty(n: usize) -> Self {
        Weight { d: vec![0; n], sign: Sign::Plus, grade: 0 }
    }

    /// The spinor `(1/2, ..., +-1/2)`.
    pub fn spinor(n: usize, sign: Sign) -> Self {
        Weight { d: vec![1; n], sign, grade: 1 }
    }

    pub fn d(&self) -> &[i64] {
        &self.d
    }

    pub fn sign(&self) -> Sign {
        self.sign
    }

    pub fn grade(&self) -> u8 {
        self.grade
    }

    pub fn n(&self) -> usize {
        self.d.len()
    }

    pub fn is_empty_partition(&self) -> bool {
        self.d.iter().all(|&x| x == 0)
    }

    /// Doubled coordinates with the sign applied to the last entry.
    pub fn signed(&self) -> Vec<i64> {
        let mut s = self.d.clone();
        if self.sign == Sign::Minus {
            *s.last_mut().unwrap() *= -1;
        }
        s
    }

    /// Number of nonzero rows.
    pub fn rows(&self) -> usize {
        self.d.iter().filter(|&&x| x != 0).count()
    }

    /// `lambda_1 + lambda_2` in doubled units (`d_1` when `n = 1`).
    pub fn top_two(&self) -> i64 {
        self.d[0] + self.d.get(1).copied().unwrap_or(0)
    }
}

impl Ord for Weight {
    /// Grade ascending, doubled coordinates lexicographically descending, `+` before `-`.
    fn cmp(&self, other: &Self) -> Ordering {
        self.grade.cmp(&other.grade).then_with(|| other.d.cmp(&self.d)).then_with(|| self.sign.cmp(&other.sign))
    }
}

impl PartialOrd for Weight {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

pub(crate) fn fmt_half(x: i64) -> String {
    if x % 2 == 0 {
        (x / 2).to_string()
    } else {
        format!("{x}/2")
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts = self.signed().iter().map(|&x| fmt_half(x)).join(",");
        write!(f, "({parts})")
    }
}

/// The half sum of positive roots, doubled.
pub fn rho_doubled(spec: &CatSpec) -> Vec<i64> {
    let n = spec.n() as i64;
    match spec.family() {
        Family::B => (1..=n).map(|i| 2 * n - 2 * i + 1).collect(),
        Family::D => (1..=n).map(|i| 2 * (n - i)).collect(),
    }
}

/// The half sum of positive roots in any coefficient field.
pub fn rho<T: Coefficient>(spec: &CatSpec) -> Vec<T> {
    rho_doubled(spec).into_iter().map(|x| T::from_i64(x) / T::from_i64(2)).collect()
}

/// The invariant form: `(e_i|e_j) = 2 delta_ij` for `B`, `delta_ij` for `D`.
pub fn inner<T: Coefficient>(spec: &CatSpec, x: &[T], y: &[T]) -> Result<T> {
    let n = spec.n();
    for v in [x, y] {
        if v.len() != n {
            return Err(Error::LengthMismatch { expected: n, got: v.len() });
        }
    }
    let dot = x.iter().zip(y).fold(T::zero(), |acc, (a, b)| acc + a.clone() * b.clone());
    Ok(match spec.family() {
        Family::B => dot.clone() + dot,
        Family::D => dot,
    })
}

/// Positive roots as integer vectors: `e_i` (B only) and `e_i +- e_j` for `i < j`.
pub fn positive_roots(spec: &CatSpec) -> Vec<Vec<i64>> {
    let n = spec.n();
    let mut roots = Vec::new();
    let unit = |i: usize| {
        let mut v = vec![0; n];
        v[i] = 1;
        v
    };
    if spec.family() == Family::B {
        roots.extend((0..n).map(unit));
    }
    for i in 0..n {
        for j in i + 1..n {
            let mut minus = unit(i);
            minus[j] = -1;
            let mut plus = unit(i);
            plus[j] = 1;
            roots.push(minus);
            roots.push(plus);
        }
    }
    roots
}

/// A signed permutation `x -> (signs[i] * x[perm[i]])_i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeylElement {
    perm: Vec<usize>,
    signs: Vec<i8>,
    sn: i8,
}

impl WeylElement {
    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn signs(&self) -> &[i8] {
        &self.signs
    }

    /// Determinant of the signed permutation.
    pub fn sn(&self) -> i8 {
        self.sn
    }

    pub fn apply(&self, x: &[i64]) -> Vec<i64> {
        self.perm.iter().zip(&self.signs).map(|(&p, &s)| i64::from(s) * x[p]).collect()
    }
}

fn perm_sign(p: &[usize]) -> i8 {
    let mut inversions = 0;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                inversions += 1;
            }
        }
    }
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

/// All elements of the Weyl group: signed permutations, with an even number
/// of sign changes for `D`.
pub fn weyl_group(spec: &CatSpec) -> Result<Vec<WeylElement>> {
    let n = spec.n();
    if n > MAX_RANK {
        return Err(Error::RankTooLarge { n, max: MAX_RANK });
    }
    let mut out = Vec::new();
    for perm in (0..n).permutations(n) {
        let ps = perm_sign(&perm);
        for mask in 0u32..(1 << n) {
            let flips = mask.count_ones();
            if spec.family() == Family::D && flips % 2 == 1 {
                continue;
            }
            let signs: Vec<i8> = (0..n).map(|i| if mask >> i & 1 == 1 { -1 } else { 1 }).collect();
            let sn = if flips % 2 == 0 { ps } else { -ps };
            out.push(WeylElement { perm: perm.clone(), signs, sn });
        }
    }
    Ok(out)
}

/// The ordered simple set of a category together with its lookup index.
#[derive(Clone, Debug)]
pub struct SimpleSet {
    spec: CatSpec,
    items: Vec<Weight>,
    index: HashMap<Weight, usize>,
    gamma1: Vec<usize>,
}

impl SimpleSet {
    pub fn spec(&self) -> &CatSpec {
        &self.spec
    }

    pub fn items(&self) -> &[Weight] {
        &self.items
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn get(&self, i: usize) -> &Weight {
        &self.items[i]
    }

    pub fn position(&self, w: &Weight) -> Option<usize> {
        self.index.get(w).copied()
    }

    /// Position of `w`, or a `NotInSet` error.
    pub fn require(&self, w: &Weight) -> Result<usize> {
        self.position(w).ok_or_else(|| Error::NotInSet(w.to_string()))
    }

    pub fn contains(&self, w: &Weight) -> bool {
        self.index.contains_key(w)
    }

    /// Indices of the objects fixed by tensoring with `J`.
    pub fn gamma1(&self) -> &[usize] {
        &self.gamma1
    }

    pub fn empty_index(&self) -> usize {
        self.index[&Weight::empty(self.spec.n())]
    }
}

/// Nonincreasing sequences of length `n`, entries of the given parity,
/// bounded by `d_1 <= max_first` and `d_1 + d_2 <= max_top`.
fn dominant_sequences(n: usize, parity: i64, max_first: i64, max_top: i64) -> Vec<Vec<i64>> {
    fn rec(prefix: &mut Vec<i64>, n: usize, parity: i64, upper: i64, max_top: i64, out: &mut Vec<Vec<i64>>) {
        if prefix.len() == n {
            out.push(prefix.clone());
            return;
        }
        let mut upper = upper;
        if prefix.len() == 1 {
            upper = upper.min(max_top - prefix[0]);
        }
        let mut x = parity;
        while x <= upper {
            prefix.push(x);
            rec(prefix, n, parity, x, max_top, out);
            prefix.pop();
            x += 2;
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::with_capacity(n), n, parity, max_first, max_top, &mut out);
    out
}

/// `Gamma`: `lambda_1 + lambda_2 <= 2k + 1` for `B`, `<= 2k` for `D` (both
/// signs of a nonzero last coordinate for `D`), in canonical order.
pub fn enumerate_simples(spec: &CatSpec) -> Result<SimpleSet> {
    let n = spec.n();
    let k = spec.k() as i64;
    let bound = match spec.family() {
        Family::B => 4 * k + 2,
        Family::D => 4 * k,
    };
    let mut items = Vec::new();
    for parity in [0, 1] {
        for d in dominant_sequences(n, parity, bound, bound) {
            let last_nonzero = *d.last().unwrap() != 0;
            items.push(Weight::new(d.clone(), Sign::Plus)?);
            if spec.family() == Family::D && last_nonzero {
                items.push(Weight::new(d, Sign::Minus)?);
            }
            if items.len() > MAX_SIMPLES {
                return Err(Error::TooManySimples { max: MAX_SIMPLES });
            }
        }
    }
    items.sort();
    let index: HashMap<Weight, usize> = items.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect();
    let gamma1 = items
        .iter()
        .enumerate()
        .filter(|(_, w)| match spec.family() {
            Family::B => w.d[0] == 2 * k + 1,
            Family::D => w.d[0] == 2 * k && w.rows() < n,
        })
        .map(|(i, _)| i)
        .collect();
    Ok(SimpleSet { spec: *spec, items, index, gamma1 })
}

/// Action of the invertible object `J` on `Gamma`:
/// `(2k+1-lambda_1, lambda_2, ...)` for `B`, `(2k-lambda_1, lambda_2, ..., -lambda_n)` for `D`.
pub fn j_tensor(set: &SimpleSet, lambda: &Weight) -> Result<Weight> {
    set.require(lambda)?;
    let spec = set.spec();
    let k = spec.k() as i64;
    let mut s = lambda.signed();
    match spec.family() {
        Family::B => s[0] = 4 * k + 2 - s[0],
        Family::D => {
            let last = s.len() - 1;
            s[last] = -s[last];
            s[0] = 4 * k - s[0];
        }
    }
    let image = Weight::from_signed(&s)?;
    set.require(&image)?;
    Ok(image)
}

/// Parts of the conjugate Young diagram of a grade-0 weight.
pub fn transpose(lambda: &Weight) -> Result<Vec<i64>> {
    if lambda.grade() != 0 {
        return Err(Error::WrongGrade { weight: lambda.to_string(), expected: 0 });
    }
    let parts: Vec<i64> = lambda.d().iter().map(|x| x / 2).collect();
    let width = parts.first().copied().unwrap_or(0);
    Ok((1..=width).map(|c| parts.iter().filter(|&&p| p >= c).count() as i64).collect())
}

/// The set `C_L = {x dominant : (x|beta_0) <= d L}` of the quantum group at a
/// root of unity of order `r`, checked against [`enumerate_simples`].
///
/// Here `d = 2, h = 2n - 1, L = r/2 - h` for `B` and `d = 1, h = 2n - 2,
/// L = r - h` for `D`. For `D_2 = A_1 x A_1` both highest roots `e_1 +- e_2`
/// bound the alcove.
pub fn quantum_group_levelset(spec: &CatSpec) -> Result<Vec<Weight>> {
    use num_rational::BigRational as Q;

    let n = spec.n();
    let r = spec.q_order() as i64;
    let (d, dual_coxeter) = match spec.family() {
        Family::B => (2, 2 * n as i64 - 1),
        Family::D => (1, 2 * n as i64 - 2),
    };
    let level = r / d - dual_coxeter;
    let bound = Q::from_i64(d * level);

    let mut highest_roots = Vec::new();
    let root = |second: i64| -> Vec<Q> {
        let mut v = vec![Q::from_i64(0); n];
        v[0] = Q::from_i64(1);
        if n > 1 {
            v[1] = Q::from_i64(second);
        }
        v
    };
    highest_roots.push(root(1));
    if spec.family() == Family::D && n == 2 {
        highest_roots.push(root(-1));
    }

    // Every coordinate is bounded by the level: (x|beta_0) >= c * x_1 with c = d.
    let max_doubled = 2 * level;
    let half = Q::new(1.into(), 2.into());
    let mut found = Vec::new();
    for parity in [0, 1] {
        for mags in dominant_sequences(n, parity, max_doubled, 2 * max_doubled) {
            let mut candidates = vec![mags.clone()];
            if spec.family() == Family::D && mags[n - 1] != 0 {
                let mut neg = mags.clone();
                neg[n - 1] = -neg[n - 1];
                candidates.push(neg);
            }
            for x in candidates {
                let xq: Vec<Q> = x.iter().map(|&c| Q::from_i64(c) * half.clone()).collect();
                let mut ok = true;
                for beta in &highest_roots {
                    if inner(spec, &xq, beta)? > bound {
                        ok = false;
                    }
                }
                if ok {
                    found.push(Weight::from_signed(&x)?);
                }
            }
        }
    }
    found.sort();

    let simples = enumerate_simples(spec)?;
    let lhs: HashSet<&Weight> = found.iter().collect();
    let rhs: HashSet<&Weight> = simples.items().iter().collect();
    if lhs != rhs {
        let extra = lhs.difference(&rhs).map(|w| w.to_string()).join(" ");
        let missing = rhs.difference(&lhs).map(|w| w.to_string()).join(" ");
        return Err(Error::LevelSetMismatch(format!("extra [{extra}] missing [{missing}]")));
    }
    Ok(found)
}
