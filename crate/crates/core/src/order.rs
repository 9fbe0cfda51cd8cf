//! Order types of tuples over ℚ.
//!
//! A [`WeakOrder`] is the canonical surjective rank vector of a tuple: entry
//! `p` holds the number of distinct values strictly below `t[p]`. Two tuples
//! have the same order type exactly when their rank vectors coincide.
//!
//! Weak orders of a fixed arity are enumerated in lexicographic order of their
//! rank vectors; [`OrderSpace`] caches that enumeration together with a
//! reverse index, and cost tables are stored in the same order.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::hash::Hash;
use std::sync::OnceLock;

use crate::config::Caps;
use crate::error::{Error, Result};

/// Canonical order type of a tuple.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeakOrder(Vec<u8>);

impl WeakOrder {
    /// Wraps a rank vector, checking that it is canonical.
    pub fn new(ranks: Vec<u32>) -> Result<WeakOrder> {
        if ranks.is_empty() {
            return Err(Error::Empty("rank vector"));
        }
        if !is_canonical(&ranks) || ranks.len() > u8::MAX as usize {
            return Err(Error::NonCanonical(ranks));
        }
        Ok(WeakOrder(ranks.into_iter().map(|r| r as u8).collect()))
    }

    pub(crate) fn from_canonical(ranks: Vec<u8>) -> WeakOrder {
        debug_assert!(is_canonical(&ranks));
        WeakOrder(ranks)
    }

    /// The all-equal order type of arity `k`.
    pub fn constant(k: usize) -> WeakOrder {
        WeakOrder(vec![0; k])
    }

    /// The increasing injective order type `⟨0, 1, …, k-1⟩`.
    pub fn chain(k: usize) -> WeakOrder {
        WeakOrder((0..k as u8).collect())
    }

    pub fn ranks(&self) -> &[u8] {
        &self.0
    }

    pub fn arity(&self) -> usize {
        self.0.len()
    }

    /// Number of distinct values (equivalence classes).
    pub fn blocks(&self) -> usize {
        self.0.iter().copied().max().map_or(0, |m| m as usize + 1)
    }

    pub fn is_injective(&self) -> bool {
        self.blocks() == self.arity()
    }

    pub fn is_constant(&self) -> bool {
        self.blocks() == 1
    }

    /// Order type of the negated tuple.
    pub fn reversed(&self) -> WeakOrder {
        let top = self.blocks() as u8 - 1;
        WeakOrder(self.0.iter().map(|&r| top - r).collect())
    }

    /// The partition of positions into equal-value classes, as a canonical
    /// weak order whose blocks are numbered by first occurrence.
    pub fn partition(&self) -> WeakOrder {
        let mut label = vec![u8::MAX; self.blocks()];
        let mut next = 0u8;
        let ranks = self
            .0
            .iter()
            .map(|&r| {
                if label[r as usize] == u8::MAX {
                    label[r as usize] = next;
                    next += 1;
                }
                label[r as usize]
            })
            .collect();
        WeakOrder(ranks)
    }

    /// Expands this order type, defined on the blocks of `sigma`, to the
    /// positions of a larger tuple: position `p` gets the rank of block
    /// `sigma[p]`.
    pub fn expand(&self, sigma: &[usize]) -> WeakOrder {
        WeakOrder::from_canonical(sigma.iter().map(|&b| self.0[b]).collect())
    }

    /// Canonical order type of the sub-tuple at `positions`.
    pub fn restrict(&self, positions: &[usize]) -> WeakOrder {
        let vals: Vec<u8> = positions.iter().map(|&p| self.0[p]).collect();
        WeakOrder(canonicalize_small(&vals))
    }
}

impl fmt::Debug for WeakOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for WeakOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("⟨")?;
        for (i, r) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{r}")?;
        }
        f.write_str("⟩")
    }
}

fn is_canonical<T: Copy + Into<u64>>(ranks: &[T]) -> bool {
    let k = ranks.len();
    let mut seen = vec![false; k];
    for &r in ranks {
        let r: u64 = r.into();
        if r as usize >= k {
            return false;
        }
        seen[r as usize] = true;
    }
    let used = seen.iter().filter(|&&b| b).count();
    seen[..used].iter().all(|&b| b)
}

/// Canonical order type of a tuple of comparable values.
pub fn canonical_weak_order<T: Ord>(values: &[T]) -> Result<WeakOrder> {
    if values.is_empty() {
        return Err(Error::Empty("tuple"));
    }
    let mut sorted: Vec<&T> = values.iter().collect();
    sorted.sort();
    sorted.dedup();
    Ok(WeakOrder(
        values
            .iter()
            .map(|v| sorted.binary_search(&v).expect("value present") as u8)
            .collect(),
    ))
}

/// Canonicalises a short vector of small integers.
pub(crate) fn canonicalize_small(vals: &[u8]) -> Vec<u8> {
    let mut out = Vec::with_capacity(vals.len());
    canonicalize_into(vals, &mut out);
    out
}

pub(crate) fn canonicalize_into(vals: &[u8], out: &mut Vec<u8>) {
    let mut present = [false; 256];
    for &v in vals {
        present[v as usize] = true;
    }
    let mut rank = [0u8; 256];
    let mut next = 0u8;
    for (v, &p) in present.iter().enumerate() {
        if p {
            rank[v] = next;
            next += 1;
        }
    }
    out.clear();
    out.extend(vals.iter().map(|&v| rank[v as usize]));
}

/// Calls `f` on every canonical rank vector of length `k`, in lexicographic
/// order. No cap is applied; callers check their own limits.
pub fn for_each_weak_order(k: usize, mut f: impl FnMut(&[u8])) {
    if k == 0 {
        return;
    }
    let mut buf = vec![0u8; k];
    let mut count = vec![0u8; k];
    rec(0, k, &mut buf, &mut count, 0, 0, &mut f);

    fn rec(
        pos: usize,
        k: usize,
        buf: &mut [u8],
        count: &mut [u8],
        distinct: usize,
        top: usize,
        f: &mut impl FnMut(&[u8]),
    ) {
        if pos == k {
            if distinct == top {
                f(buf);
            }
            return;
        }
        let remaining = k - pos - 1;
        for v in 0..k {
            let new_top = top.max(v + 1);
            let new_distinct = distinct + usize::from(count[v] == 0);
            if new_top - new_distinct > remaining {
                continue;
            }
            buf[pos] = v as u8;
            count[v] += 1;
            rec(pos + 1, k, buf, count, new_distinct, new_top, f);
            count[v] -= 1;
        }
    }
}

/// All weak orders on `k` positions, in deterministic (lexicographic) order.
///
/// The count is the ordered Bell number of `k`.
pub fn enumerate_weak_orders(k: usize, caps: &Caps) -> Result<Vec<WeakOrder>> {
    if k == 0 {
        return Err(Error::Empty("arity"));
    }
    if k > caps.arity {
        return Err(Error::capacity("arity", k, caps.arity));
    }
    Ok(space(k).orders.clone())
}

/// Ordered Bell (Fubini) numbers, by the recurrence
/// `a(n) = Σ_{i=1..n} C(n, i) a(n - i)`.
pub fn ordered_bell(n: usize) -> u128 {
    let mut a = vec![1u128; n + 1];
    for m in 1..=n {
        let mut binom = 1u128;
        let mut acc = 0u128;
        for i in 1..=m {
            binom = binom * (m - i + 1) as u128 / i as u128;
            acc += binom * a[m - i];
        }
        a[m] = acc;
    }
    a[n]
}

/// The enumeration of weak orders of one arity with a reverse index.
pub struct OrderSpace {
    arity: usize,
    orders: Vec<WeakOrder>,
    index: SpaceIndex,
}

enum SpaceIndex {
    Dense(Vec<u32>),
    Hashed(HashMap<Vec<u8>, u32>),
}

const DENSE_LIMIT: usize = 7;

/// Largest arity for which an [`OrderSpace`] can be built.
pub const MAX_SPACE_ARITY: usize = 9;

impl OrderSpace {
    fn build(k: usize) -> OrderSpace {
        let mut orders = Vec::new();
        for_each_weak_order(k, |r| orders.push(WeakOrder(r.to_vec())));
        let index = if k <= DENSE_LIMIT {
            let mut dense = vec![u32::MAX; k.pow(k as u32)];
            for (i, w) in orders.iter().enumerate() {
                dense[code(&w.0, k)] = i as u32;
            }
            SpaceIndex::Dense(dense)
        } else {
            SpaceIndex::Hashed(
                orders
                    .iter()
                    .enumerate()
                    .map(|(i, w)| (w.0.clone(), i as u32))
                    .collect(),
            )
        };
        OrderSpace { arity: k, orders, index }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn len(&self) -> usize {
        self.orders.len()
    }

    pub fn is_empty(&self) -> bool {
        self.orders.is_empty()
    }

    pub fn orders(&self) -> &[WeakOrder] {
        &self.orders
    }

    pub fn get(&self, i: usize) -> &WeakOrder {
        &self.orders[i]
    }

    /// Position of a canonical rank vector in the enumeration.
    #[inline]
    pub fn index_of(&self, ranks: &[u8]) -> usize {
        debug_assert_eq!(ranks.len(), self.arity);
        match &self.index {
            SpaceIndex::Dense(d) => d[code(ranks, self.arity)] as usize,
            SpaceIndex::Hashed(h) => h[ranks] as usize,
        }
    }

    /// Position of the order type of an arbitrary tuple of small values.
    #[inline]
    pub fn index_of_values(&self, vals: &[u8]) -> usize {
        let mut buf = [0u8; 16];
        let k = vals.len();
        if k <= 16 {
            let mut present = 0u32;
            let mut wide = false;
            for &v in vals {
                if v >= 32 {
                    wide = true;
                    break;
                }
                present |= 1 << v;
            }
            if !wide {
                for (b, &v) in buf.iter_mut().zip(vals) {
                    *b = (present & ((1u32 << v) - 1)).count_ones() as u8;
                }
                return self.index_of(&buf[..k]);
            }
        }
        self.index_of(&canonicalize_small(vals))
    }
}

#[inline]
fn code(ranks: &[u8], k: usize) -> usize {
    ranks.iter().fold(0usize, |acc, &r| acc * k + r as usize)
}

/// The cached [`OrderSpace`] of arity `k` (`1 ≤ k ≤ MAX_SPACE_ARITY`).
pub fn space(k: usize) -> &'static OrderSpace {
    static SPACES: [OnceLock<OrderSpace>; MAX_SPACE_ARITY + 1] =
        [const { OnceLock::new() }; MAX_SPACE_ARITY + 1];
    assert!(
        (1..=MAX_SPACE_ARITY).contains(&k),
        "no order space for arity {k}"
    );
    SPACES[k].get_or_init(|| OrderSpace::build(k))
}

/// Order type induced on `args` by an assignment of ranks to variables.
///
/// Variables may repeat in `args`.
pub fn induced_order_type<K: Eq + Hash + fmt::Display>(
    assignment: &HashMap<K, u32>,
    args: &[K],
) -> Result<WeakOrder> {
    let vals = args
        .iter()
        .map(|v| {
            assignment
                .get(v)
                .copied()
                .ok_or_else(|| Error::Unassigned(v.to_string()))
        })
        .collect::<Result<Vec<u32>>>()?;
    canonical_weak_order(&vals)
}

/// The sets `E_t`, `N_t` and `O_t` of a tuple with a given order type.
///
/// Positions are zero-based. `eq` contains the diagonal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairClasses {
    pub eq: BTreeSet<(usize, usize)>,
    pub neq: BTreeSet<(usize, usize)>,
    pub lt: BTreeSet<(usize, usize)>,
}

pub fn pair_classes(w: &WeakOrder) -> PairClasses {
    let r = w.ranks();
    let mut classes = PairClasses {
        eq: BTreeSet::new(),
        neq: BTreeSet::new(),
        lt: BTreeSet::new(),
    };
    for p in 0..r.len() {
        for q in 0..r.len() {
            if r[p] == r[q] {
                classes.eq.insert((p, q));
            } else {
                classes.neq.insert((p, q));
                if r[p] < r[q] {
                    classes.lt.insert((p, q));
                }
            }
        }
    }
    classes
}

/// A joint order type of two `k`-tuples `s` and `t`, optionally together
/// with the constant `0`.
///
/// All ranks live on one canonical scale covering the `2k` (or `2k + 1`)
/// points.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct JointConfig {
    pub s: Vec<u8>,
    pub t: Vec<u8>,
    pub zero: Option<u8>,
}

impl JointConfig {
    /// Builds a configuration from explicit joint ranks, checking that the
    /// ranks used form an initial segment.
    pub fn new(s: Vec<u8>, t: Vec<u8>, zero: Option<u8>) -> Result<JointConfig> {
        if s.len() != t.len() || s.is_empty() {
            return Err(Error::Precondition(
                "joint configuration needs two tuples of equal positive length".into(),
            ));
        }
        let mut all: Vec<u32> = s.iter().chain(&t).map(|&r| r as u32).collect();
        all.extend(zero.map(u32::from));
        let mut used: Vec<u32> = all.clone();
        used.sort_unstable();
        used.dedup();
        if used.iter().enumerate().any(|(i, &r)| r != i as u32) {
            return Err(Error::NonCanonical(all));
        }
        Ok(JointConfig { s, t, zero })
    }

    /// Joint configuration of concrete values.
    pub fn from_values<T: Ord + Clone>(s: &[T], t: &[T], zero: Option<T>) -> Result<JointConfig> {
        let mut all: Vec<T> = s.iter().chain(t).cloned().collect();
        let has_zero = zero.is_some();
        all.extend(zero);
        let w = canonical_weak_order(&all)?;
        let r = w.ranks();
        let k = s.len();
        JointConfig::new(
            r[..k].to_vec(),
            r[k..2 * k].to_vec(),
            has_zero.then(|| r[2 * k]),
        )
    }

    pub fn arity(&self) -> usize {
        self.s.len()
    }

    pub fn s_marginal(&self) -> WeakOrder {
        WeakOrder(canonicalize_small(&self.s))
    }

    pub fn t_marginal(&self) -> WeakOrder {
        WeakOrder(canonicalize_small(&self.t))
    }

    fn top(&self) -> u8 {
        self.s
            .iter()
            .chain(&self.t)
            .chain(self.zero.as_ref())
            .copied()
            .max()
            .unwrap_or(0)
    }

    /// The configuration of the negated tuples (`0` stays fixed).
    pub fn reversed(&self) -> JointConfig {
        let top = self.top();
        JointConfig {
            s: self.s.iter().map(|&r| top - r).collect(),
            t: self.t.iter().map(|&r| top - r).collect(),
            zero: self.zero.map(|z| top - z),
        }
    }
}

/// Calls `f` with every joint configuration whose marginals are `s` and `t`
/// (with the constant 0 placed in every possible way when `with_zero`).
///
/// Configurations are generated as interleavings of the block sequences of
/// the two marginals, in a fixed deterministic order. Returns early with the
/// first `Some` produced by `f`.
pub fn find_interleaving<R>(
    s: &WeakOrder,
    t: &WeakOrder,
    with_zero: bool,
    mut f: impl FnMut(&JointConfig) -> Option<R>,
) -> Option<R> {
    let (ms, mt) = (s.blocks(), t.blocks());
    // joint rank of each s block / t block along the current path
    let mut s_at = vec![0u8; ms];
    let mut t_at = vec![0u8; mt];
    let mut cfg = JointConfig {
        s: vec![0; s.arity()],
        t: vec![0; t.arity()],
        zero: None,
    };
    walk(0, 0, 0, s, t, with_zero, &mut s_at, &mut t_at, &mut cfg, &mut f)
}

#[allow(clippy::too_many_arguments)]
fn walk<R>(
    i: usize,
    j: usize,
    len: u8,
    s: &WeakOrder,
    t: &WeakOrder,
    with_zero: bool,
    s_at: &mut [u8],
    t_at: &mut [u8],
    cfg: &mut JointConfig,
    f: &mut impl FnMut(&JointConfig) -> Option<R>,
) -> Option<R> {
    let (ms, mt) = (s_at.len(), t_at.len());
    if i == ms && j == mt {
        return emit(len, s, t, with_zero, s_at, t_at, cfg, f);
    }
    if i < ms && j < mt {
        s_at[i] = len;
        t_at[j] = len;
        if let Some(r) = walk(i + 1, j + 1, len + 1, s, t, with_zero, s_at, t_at, cfg, f) {
            return Some(r);
        }
    }
    if i < ms {
        s_at[i] = len;
        if let Some(r) = walk(i + 1, j, len + 1, s, t, with_zero, s_at, t_at, cfg, f) {
            return Some(r);
        }
    }
    if j < mt {
        t_at[j] = len;
        if let Some(r) = walk(i, j + 1, len + 1, s, t, with_zero, s_at, t_at, cfg, f) {
            return Some(r);
        }
    }
    None
}

#[allow(clippy::too_many_arguments)]
fn emit<R>(
    len: u8,
    s: &WeakOrder,
    t: &WeakOrder,
    with_zero: bool,
    s_at: &[u8],
    t_at: &[u8],
    cfg: &mut JointConfig,
    f: &mut impl FnMut(&JointConfig) -> Option<R>,
) -> Option<R> {
    if !with_zero {
        for (o, &b) in cfg.s.iter_mut().zip(s.ranks()) {
            *o = s_at[b as usize];
        }
        for (o, &b) in cfg.t.iter_mut().zip(t.ranks()) {
            *o = t_at[b as usize];
        }
        cfg.zero = None;
        return f(cfg);
    }
    // slot 2g: zero alone just below merged block g; slot 2g+1: zero inside block g
    for slot in 0..=(2 * len as usize) {
        let g = (slot / 2) as u8;
        let alone = slot % 2 == 0;
        let shift = |r: u8| if alone && r >= g { r + 1 } else { r };
        for (o, &b) in cfg.s.iter_mut().zip(s.ranks()) {
            *o = shift(s_at[b as usize]);
        }
        for (o, &b) in cfg.t.iter_mut().zip(t.ranks()) {
            *o = shift(t_at[b as usize]);
        }
        cfg.zero = Some(g);
        if let Some(r) = f(cfg) {
            return Some(r);
        }
    }
    None
}

/// Every joint configuration on `k`-tuples, marginal pairs in enumeration
/// order. Used by tests and small exhaustive checks.
pub fn all_joint_configs(k: usize, with_zero: bool) -> Vec<JointConfig> {
    let sp = space(k);
    let mut out = Vec::new();
    for s in sp.orders() {
        for t in sp.orders() {
            find_interleaving(s, t, with_zero, |c| {
                out.push(c.clone());
                None::<()>
            });
        }
    }
    out
}
