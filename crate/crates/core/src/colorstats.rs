//! Colour statistics of vertex colourings of uniform hypergraphs.
//!
//! For a colouring `C` of `0..n` with class sizes `n_j`, a uniformly random
//! `a`-subset has colour multiset `T` with probability
//! `p(T) = prod_j C(n_j, I_T(j)) / C(n, a)`, where `I_T(j)` is the
//! multiplicity of colour `j` in `T`. The checkers here compare the
//! hyperedge counts of a hypergraph against `p(T) * m`.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use num_bigint::BigInt;
pub use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graphcore::{OrientedHypergraph, UniformHypergraph};
use crate::hypergen::binomial;
use crate::rng::Rng;

/// Largest colouring space searched exhaustively.
pub const EXHAUSTIVE_CAP: u128 = 10_000_000;

const CHUNK: u64 = 1 << 12;

/// A colouring `0..n -> 0..b` together with its class sizes.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Coloring {
    b: usize,
    colors: Vec<usize>,
    census: Vec<usize>,
}

impl Coloring {
    pub fn new(b: usize, colors: Vec<usize>) -> Result<Self> {
        if b == 0 {
            return Err(Error::InvalidParameter("need at least one colour".into()));
        }
        if let Some(&c) = colors.iter().find(|&&c| c >= b) {
            return Err(Error::InvalidParameter(format!(
                "colour {c} is not below {b}"
            )));
        }
        let mut census = vec![0; b];
        for &c in &colors {
            census[c] += 1;
        }
        Ok(Coloring { b, colors, census })
    }

    /// The `index`-th colouring in base-`b` order with vertex 0 as the most
    /// significant digit.
    pub fn from_index(n: usize, b: usize, mut index: u64) -> Self {
        let mut colors = vec![0; n];
        for c in colors.iter_mut().rev() {
            *c = (index % b as u64) as usize;
            index /= b as u64;
        }
        Coloring::new(b, colors).expect("digits are below b")
    }

    pub fn b(&self) -> usize {
        self.b
    }

    pub fn n(&self) -> usize {
        self.colors.len()
    }

    pub fn colors(&self) -> &[usize] {
        &self.colors
    }

    pub fn color(&self, v: usize) -> usize {
        self.colors[v]
    }

    /// Class sizes `n_j`, indexed by colour.
    pub fn census(&self) -> &[usize] {
        &self.census
    }

    fn check_len(&self, n: usize) -> Result<()> {
        if self.colors.len() != n {
            return Err(Error::InvalidParameter(format!(
                "colouring has {} vertices, hypergraph has {n}",
                self.colors.len()
            )));
        }
        Ok(())
    }
}

impl fmt::Display for Coloring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.colors {
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

/// A multiset of colours, stored as multiplicities `I_T(j)`.
///
/// Ordered like the ascending lists of its elements, so `{0,0} < {0,1} <
/// {1,1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ColorMultiset(Vec<usize>);

impl Ord for ColorMultiset {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        other.0.cmp(&self.0)
    }
}

impl PartialOrd for ColorMultiset {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl ColorMultiset {
    pub fn from_multiplicities(mult: Vec<usize>) -> Self {
        ColorMultiset(mult)
    }

    pub fn from_colors(b: usize, colors: &[usize]) -> Result<Self> {
        let mut mult = vec![0; b];
        for &c in colors {
            if c >= b {
                return Err(Error::InvalidParameter(format!(
                    "colour {c} is not below {b}"
                )));
            }
            mult[c] += 1;
        }
        Ok(ColorMultiset(mult))
    }

    pub fn multiplicities(&self) -> &[usize] {
        &self.0
    }

    pub fn multiplicity(&self, color: usize) -> usize {
        self.0[color]
    }

    /// Number of elements.
    pub fn a(&self) -> usize {
        self.0.iter().sum()
    }

    /// Number of colours available.
    pub fn b(&self) -> usize {
        self.0.len()
    }

    pub fn is_monochromatic(&self) -> bool {
        self.0.iter().filter(|&&k| k > 0).count() <= 1
    }

    pub fn is_rainbow(&self) -> bool {
        self.0.iter().all(|&k| k <= 1)
    }

    /// Every `a`-element multiset over `b` colours, ascending.
    pub fn all(a: usize, b: usize) -> Vec<ColorMultiset> {
        let mut out = Vec::new();
        compositions(a, b, &mut |c| out.push(ColorMultiset(c.to_vec())));
        out.sort();
        out
    }
}

impl fmt::Display for ColorMultiset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> = self
            .0
            .iter()
            .enumerate()
            .flat_map(|(c, &k)| std::iter::repeat_n(c.to_string(), k))
            .collect();
        write!(f, "{{{}}}", items.join(","))
    }
}

/// An ordered colour sequence `(s_1, .., s_a)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ColorSequence(pub Vec<usize>);

impl ColorSequence {
    pub fn reversed(&self) -> ColorSequence {
        ColorSequence(self.0.iter().rev().copied().collect())
    }
}

impl fmt::Display for ColorSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> = self.0.iter().map(usize::to_string).collect();
        write!(f, "({})", items.join(","))
    }
}

/// A set of `a`-element colour multisets over `b` colours.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultisetFamily {
    a: usize,
    b: usize,
    members: BTreeSet<ColorMultiset>,
}

impl MultisetFamily {
    pub fn from_members<I: IntoIterator<Item = ColorMultiset>>(
        a: usize,
        b: usize,
        members: I,
    ) -> Result<Self> {
        let members: BTreeSet<_> = members.into_iter().collect();
        if let Some(t) = members.iter().find(|t| t.a() != a || t.b() != b) {
            return Err(Error::InvalidParameter(format!(
                "multiset {t} is not an {a}-multiset over {b} colours"
            )));
        }
        Ok(MultisetFamily { a, b, members })
    }

    pub fn all(a: usize, b: usize) -> Self {
        Self::filtered(a, b, |_| true)
    }

    pub fn non_monochromatic(a: usize, b: usize) -> Self {
        Self::filtered(a, b, |t| !t.is_monochromatic())
    }

    /// All-distinct multisets.
    pub fn rainbow(a: usize, b: usize) -> Self {
        Self::filtered(a, b, ColorMultiset::is_rainbow)
    }

    fn filtered(a: usize, b: usize, keep: impl Fn(&ColorMultiset) -> bool) -> Self {
        MultisetFamily {
            a,
            b,
            members: ColorMultiset::all(a, b)
                .into_iter()
                .filter(|t| keep(t))
                .collect(),
        }
    }

    pub fn a(&self) -> usize {
        self.a
    }

    pub fn b(&self) -> usize {
        self.b
    }

    pub fn contains(&self, t: &ColorMultiset) -> bool {
        self.members.contains(t)
    }

    pub fn members(&self) -> impl Iterator<Item = &ColorMultiset> {
        self.members.iter()
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

/// Calls `f` on every vector of `parts` non-negative integers summing to
/// `total`, in lexicographic order.
fn compositions(total: usize, parts: usize, f: &mut impl FnMut(&[usize])) {
    fn go(rest: usize, buf: &mut Vec<usize>, parts: usize, f: &mut impl FnMut(&[usize])) {
        if buf.len() + 1 == parts {
            buf.push(rest);
            f(buf);
            buf.pop();
            return;
        }
        for k in 0..=rest {
            buf.push(k);
            go(rest - k, buf, parts, f);
            buf.pop();
        }
    }
    if parts == 0 {
        if total == 0 {
            f(&[]);
        }
        return;
    }
    go(total, &mut Vec::with_capacity(parts), parts, f);
}

fn big(x: u128) -> BigInt {
    BigInt::from(x)
}

fn census_numerator(census: &[usize], t: &ColorMultiset) -> u128 {
    census
        .iter()
        .zip(t.multiplicities())
        .map(|(&nj, &k)| binomial(nj, k))
        .product()
}

/// `p(T)` for a colouring with the given class sizes, exactly. Zero when
/// there are fewer than `a` vertices.
pub fn p_multiset_census(census: &[usize], t: &ColorMultiset) -> BigRational {
    let n: usize = census.iter().sum();
    let den = binomial(n, t.a());
    if den == 0 {
        return BigRational::zero();
    }
    BigRational::new(big(census_numerator(census, t)), big(den))
}

pub fn p_multiset_exact(cl: &Coloring, t: &ColorMultiset) -> BigRational {
    p_multiset_census(cl.census(), t)
}

/// Large-`n` approximation `a!/prod I_T(j)! * prod (n_j/n)^{I_T(j)}`, for
/// display next to the exact value.
pub fn p_multiset_asymptotic(census: &[usize], t: &ColorMultiset) -> f64 {
    let n: usize = census.iter().sum();
    let fact = |k: usize| (1..=k).map(|i| i as f64).product::<f64>();
    let mut p = fact(t.a());
    for (&nj, &k) in census.iter().zip(t.multiplicities()) {
        p *= (nj as f64 / n as f64).powi(k as i32) / fact(k);
    }
    p
}

/// `sum_{T in family} p(T)` for the given class sizes.
pub fn p_family_census(census: &[usize], family: &MultisetFamily) -> BigRational {
    let n: usize = census.iter().sum();
    let den = binomial(n, family.a());
    if den == 0 {
        return BigRational::zero();
    }
    let num: BigInt = family
        .members()
        .map(|t| big(census_numerator(census, t)))
        .sum();
    BigRational::new(num, big(den))
}

/// Census maximising `p(family)` over all colourings of `n` vertices with
/// `b` colours, first in lexicographic order, and the maximum.
pub fn max_multiset_probability(
    n: usize,
    b: usize,
    family: &MultisetFamily,
) -> Result<(Vec<usize>, BigRational)> {
    if b != family.b() || b == 0 {
        return Err(Error::InvalidParameter(format!(
            "family is over {} colours, asked for {b}",
            family.b()
        )));
    }
    let mut best: Option<(Vec<usize>, BigRational)> = None;
    compositions(n, b, &mut |c| {
        let p = p_family_census(c, family);
        if best.as_ref().is_none_or(|(_, q)| p > *q) {
            best = Some((c.to_vec(), p));
        }
    });
    Ok(best.expect("at least one composition"))
}

/// `C(b, a) a! / b^a`, the probability that a uniform colouring of an
/// `a`-set with `b` colours is rainbow.
pub fn rainbow_bound(a: usize, b: usize) -> Result<BigRational> {
    if a < 2 || a > b {
        return Err(Error::InvalidParameter(format!(
            "need 2 <= a <= b, got a={a} b={b}"
        )));
    }
    let falling: BigInt = (b - a + 1..=b).map(BigInt::from).product();
    let power = num_traits::pow(BigInt::from(b), a);
    Ok(BigRational::new(falling, power))
}

/// Maps an edge's colours to a dense multiset index.
struct Keyer {
    weights: Vec<u64>,
    dense: Option<Vec<u32>>,
    sparse: HashMap<u64, u32>,
    multisets: Vec<ColorMultiset>,
}

impl Keyer {
    fn new(a: usize, b: usize) -> Result<Self> {
        let mut weights = Vec::with_capacity(b);
        let mut w: u64 = 1;
        for i in 0..b {
            weights.push(w);
            if i + 1 < b {
                w = w.checked_mul(a as u64 + 1).ok_or_else(|| {
                    Error::InvalidParameter(format!("{b} colours is too many for {a}-sets"))
                })?;
            }
        }
        let span = w.checked_mul(a as u64 + 1);
        let multisets = ColorMultiset::all(a, b);
        let key_of = |t: &ColorMultiset| -> u64 {
            t.0.iter().zip(&weights).map(|(&k, &w)| k as u64 * w).sum()
        };
        let mut dense = None;
        let mut sparse = HashMap::new();
        match span {
            Some(s) if s <= 1 << 22 => {
                let mut d = vec![u32::MAX; s as usize];
                for (i, t) in multisets.iter().enumerate() {
                    d[key_of(t) as usize] = i as u32;
                }
                dense = Some(d);
            }
            _ => {
                for (i, t) in multisets.iter().enumerate() {
                    sparse.insert(key_of(t), i as u32);
                }
            }
        }
        Ok(Keyer {
            weights,
            dense,
            sparse,
            multisets,
        })
    }

    fn index(&self, colors: &[usize], edge: &[usize]) -> usize {
        let key: u64 = edge.iter().map(|&v| self.weights[colors[v]]).sum();
        match &self.dense {
            Some(d) => d[key as usize] as usize,
            None => self.sparse[&key] as usize,
        }
    }
}

/// `b^n` if it does not exceed [`EXHAUSTIVE_CAP`].
fn coloring_space(n: usize, b: usize) -> Result<u64> {
    let mut size: u128 = 1;
    for _ in 0..n {
        size = size.saturating_mul(b as u128);
        if size > EXHAUSTIVE_CAP {
            return Err(Error::StateSpaceTooLarge {
                size: (b as u128).checked_pow(n as u32).unwrap_or(u128::MAX),
                cap: EXHAUSTIVE_CAP,
            });
        }
    }
    Ok(size as u64)
}

/// How colourings are visited by the checkers.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckMode {
    /// All `b^n` colourings (at most [`EXHAUSTIVE_CAP`]).
    Exhaustive,
    /// `count` colourings with independent uniform colours.
    Sampled { seed: u64, count: u64 },
}

/// Largest scaled deviation seen for one colouring: `(diff, target, count)`.
type Local = (u128, usize, usize);

/// Best `(score, colouring)` so far, ties to the earlier colouring.
#[derive(Clone)]
struct Best {
    score: u128,
    order: u64,
    colors: Vec<usize>,
    target: usize,
    count: usize,
}

fn better(x: Option<Best>, y: Option<Best>) -> Option<Best> {
    match (x, y) {
        (Some(p), Some(q)) => {
            if q.score > p.score || (q.score == p.score && q.order < p.order) {
                Some(q)
            } else {
                Some(p)
            }
        }
        (p, None) => p,
        (None, q) => q,
    }
}

/// Visits colourings according to `mode` and keeps the one maximising the
/// score returned by `eval`.
fn scan<F>(n: usize, b: usize, mode: CheckMode, eval: F) -> Result<(u64, Option<Best>)>
where
    F: Fn(&[usize], &[usize]) -> Local + Sync,
{
    match mode {
        CheckMode::Exhaustive => {
            let total = coloring_space(n, b)?;
            let chunks = total.div_ceil(CHUNK);
            let best = (0..chunks)
                .into_par_iter()
                .map(|c| {
                    let start = c * CHUNK;
                    let end = (start + CHUNK).min(total);
                    let first = Coloring::from_index(n, b, start);
                    let mut colors = first.colors;
                    let mut census = first.census;
                    let mut best: Option<Best> = None;
                    for order in start..end {
                        let (score, target, count) = eval(&colors, &census);
                        if best.as_ref().is_none_or(|p| score > p.score) {
                            best = Some(Best {
                                score,
                                order,
                                colors: colors.clone(),
                                target,
                                count,
                            });
                        }
                        // odometer step, last vertex least significant
                        for v in (0..n).rev() {
                            census[colors[v]] -= 1;
                            colors[v] = (colors[v] + 1) % b;
                            census[colors[v]] += 1;
                            if colors[v] != 0 {
                                break;
                            }
                        }
                    }
                    best
                })
                .reduce(|| None, better);
            Ok((total, best))
        }
        CheckMode::Sampled { seed, count } => {
            let mut rng = Rng::seed_from(seed);
            let mut best: Option<Best> = None;
            for order in 0..count {
                let colors: Vec<usize> = (0..n).map(|_| rng.index(b)).collect();
                let mut census = vec![0; b];
                for &c in &colors {
                    census[c] += 1;
                }
                let (score, target, cnt) = eval(&colors, &census);
                best = better(
                    best,
                    Some(Best {
                        score,
                        order,
                        colors,
                        target,
                        count: cnt,
                    }),
                );
            }
            Ok((count, best))
        }
    }
}

/// The colouring and target with the largest deviation found by a checker.
#[derive(Debug, Clone, PartialEq)]
pub struct Witness<K> {
    pub coloring: Coloring,
    pub target: K,
    pub count: usize,
    /// `p * m` for the target.
    pub expected: BigRational,
    /// `|count - expected|`.
    pub deviation: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RandomlikeReport<K> {
    /// Every visited colouring satisfies `|count - p m| <= eps m` for every
    /// target.
    pub pass: bool,
    pub exhaustive: bool,
    pub colorings_checked: u64,
    pub eps: f64,
    pub m: usize,
    /// Largest deviation; `None` only when no colouring was visited.
    pub worst: Option<Witness<K>>,
}

fn within(diff: u128, eps: f64, m: usize, den: u128) -> bool {
    // diff / den <= eps * m, with a relative slack for the float product
    diff as f64 <= eps * m as f64 * den as f64 * (1.0 + 1e-12)
}

fn validate_eps(eps: f64) -> Result<()> {
    if eps.is_nan() || eps < 0.0 {
        return Err(Error::InvalidParameter(format!(
            "eps must be non-negative, got {eps}"
        )));
    }
    Ok(())
}

struct MultisetTable {
    keyer: Keyer,
    den: u128,
    pascal: Vec<Vec<u128>>,
}

impl MultisetTable {
    fn new(n: usize, a: usize, b: usize, m: usize) -> Result<Self> {
        let den = binomial(n, a);
        if den.checked_mul(m as u128).is_none() || den == u128::MAX {
            return Err(Error::InvalidParameter(
                "C(n, a) * m overflows 128 bits".into(),
            ));
        }
        let pascal = (0..=n)
            .map(|nj| (0..=a).map(|k| binomial(nj, k)).collect())
            .collect();
        Ok(MultisetTable {
            keyer: Keyer::new(a, b)?,
            den,
            pascal,
        })
    }

    fn numerator(&self, census: &[usize], t: usize) -> u128 {
        census
            .iter()
            .zip(&self.keyer.multisets[t].0)
            .map(|(&nj, &k)| self.pascal[nj][k])
            .product()
    }

    /// Largest `|count * den - num * m|` over all multisets.
    fn worst(&self, h: &UniformHypergraph, colors: &[usize], census: &[usize]) -> Local {
        let mut counts = vec![0usize; self.keyer.multisets.len()];
        for e in h.edges() {
            counts[self.keyer.index(colors, e)] += 1;
        }
        let m = h.edge_count() as u128;
        let mut best = (0, 0, counts[0]);
        for (t, &c) in counts.iter().enumerate() {
            let diff = (c as u128 * self.den).abs_diff(self.numerator(census, t) * m);
            if diff > best.0 {
                best = (diff, t, c);
            }
        }
        best
    }
}

/// Number of hyperedges of each colour multiset (absent multisets omitted).
pub fn count_by_multiset(
    h: &UniformHypergraph,
    cl: &Coloring,
) -> Result<BTreeMap<ColorMultiset, usize>> {
    cl.check_len(h.n())?;
    let mut out = BTreeMap::new();
    for e in h.edges() {
        let colors: Vec<usize> = e.iter().map(|&v| cl.color(v)).collect();
        *out.entry(ColorMultiset::from_colors(cl.b(), &colors)?)
            .or_insert(0) += 1;
    }
    Ok(out)
}

/// Largest deviation `|count(T) - p(T) m|` of a single colouring.
pub fn multiset_deviation(h: &UniformHypergraph, cl: &Coloring) -> Result<Witness<ColorMultiset>> {
    cl.check_len(h.n())?;
    let table = MultisetTable::new(h.n(), h.a(), cl.b(), h.edge_count())?;
    let local = table.worst(h, cl.colors(), cl.census());
    Ok(multiset_witness(&table, h.edge_count(), cl.clone(), local))
}

fn multiset_witness(
    table: &MultisetTable,
    m: usize,
    coloring: Coloring,
    (diff, t, count): Local,
) -> Witness<ColorMultiset> {
    let num = table.numerator(coloring.census(), t);
    let (expected, deviation) = if table.den == 0 {
        (BigRational::zero(), 0.0)
    } else {
        let e = BigRational::new(big(num * m as u128), big(table.den));
        (
            e,
            BigRational::new(big(diff), big(table.den))
                .to_f64()
                .unwrap_or(f64::INFINITY),
        )
    };
    Witness {
        target: table.keyer.multisets[t].clone(),
        coloring,
        count,
        expected,
        deviation,
    }
}

/// Checks `count(T) = (p(T) +- eps) m` for every visited colouring and every
/// multiset `T`.
pub fn check_randomlike(
    h: &UniformHypergraph,
    b: usize,
    eps: f64,
    mode: CheckMode,
) -> Result<RandomlikeReport<ColorMultiset>> {
    validate_eps(eps)?;
    if b == 0 {
        return Err(Error::InvalidParameter("need at least one colour".into()));
    }
    let m = h.edge_count();
    let table = MultisetTable::new(h.n(), h.a(), b, m)?;
    let (checked, best) = scan(h.n(), b, mode, |colors, census| {
        table.worst(h, colors, census)
    })?;
    let pass = best
        .as_ref()
        .is_none_or(|w| within(w.score, eps, m, table.den));
    let worst = best.map(|w| {
        let cl = Coloring::new(b, w.colors).expect("valid colours");
        multiset_witness(&table, m, cl, (w.score, w.target, w.count))
    });
    Ok(RandomlikeReport {
        pass,
        exhaustive: mode == CheckMode::Exhaustive,
        colorings_checked: checked,
        eps,
        m,
        worst,
    })
}

/// Number of oriented hyperedges of each colour sequence (absent sequences
/// omitted).
pub fn count_by_sequence(
    o: &OrientedHypergraph,
    cl: &Coloring,
) -> Result<BTreeMap<ColorSequence, usize>> {
    cl.check_len(o.n())?;
    let mut out = BTreeMap::new();
    for e in o.edges() {
        let s = ColorSequence(e.iter().map(|&v| cl.color(v)).collect());
        *out.entry(s).or_insert(0) += 1;
    }
    Ok(out)
}

struct SequenceTable {
    a: usize,
    b: usize,
    den: u128,
}

impl SequenceTable {
    fn new(n: usize, a: usize, b: usize, m: usize) -> Result<Self> {
        let too_big = || Error::InvalidParameter("sequence space or n^a * m overflows".into());
        let den = (n as u128).checked_pow(a as u32).ok_or_else(too_big)?;
        den.checked_mul(m as u128).ok_or_else(too_big)?;
        let seqs = (b as u128).checked_pow(a as u32).ok_or_else(too_big)?;
        if seqs > 1 << 24 {
            return Err(too_big());
        }
        Ok(SequenceTable { a, b, den })
    }

    fn sequence(&self, mut index: usize) -> ColorSequence {
        let mut s = vec![0; self.a];
        for c in s.iter_mut().rev() {
            *c = index % self.b;
            index /= self.b;
        }
        ColorSequence(s)
    }

    fn worst(&self, o: &OrientedHypergraph, colors: &[usize], census: &[usize]) -> Local {
        let total = self.b.pow(self.a as u32);
        let mut counts = vec![0usize; total];
        for e in o.edges() {
            counts[e.iter().fold(0, |acc, &v| acc * self.b + colors[v])] += 1;
        }
        let m = o.edge_count() as u128;
        let mut best = (0, 0, counts[0]);
        for (s, &c) in counts.iter().enumerate() {
            let num: u128 = self
                .sequence(s)
                .0
                .iter()
                .map(|&j| census[j] as u128)
                .product();
            let diff = (c as u128 * self.den).abs_diff(num * m);
            if diff > best.0 {
                best = (diff, s, c);
            }
        }
        best
    }
}

/// Oriented version of [`check_randomlike`] with target
/// `prod_i n_{s_i} / n` per sequence `s`.
pub fn check_randomlike_oriented(
    o: &OrientedHypergraph,
    b: usize,
    eps: f64,
    mode: CheckMode,
) -> Result<RandomlikeReport<ColorSequence>> {
    validate_eps(eps)?;
    if b == 0 {
        return Err(Error::InvalidParameter("need at least one colour".into()));
    }
    let m = o.edge_count();
    let table = SequenceTable::new(o.n(), o.a(), b, m)?;
    let (checked, best) = scan(o.n(), b, mode, |colors, census| {
        table.worst(o, colors, census)
    })?;
    let pass = best
        .as_ref()
        .is_none_or(|w| within(w.score, eps, m, table.den));
    let worst = best.map(|w| {
        let coloring = Coloring::new(b, w.colors).expect("valid colours");
        let target = table.sequence(w.target);
        let num: u128 = target
            .0
            .iter()
            .map(|&j| coloring.census()[j] as u128)
            .product();
        let (expected, deviation) = if table.den == 0 {
            (BigRational::zero(), 0.0)
        } else {
            (
                BigRational::new(big(num * m as u128), big(table.den)),
                BigRational::new(big(w.score), big(table.den))
                    .to_f64()
                    .unwrap_or(f64::INFINITY),
            )
        };
        Witness {
            coloring,
            target,
            count: w.count,
            expected,
            deviation,
        }
    });
    Ok(RandomlikeReport {
        pass,
        exhaustive: mode == CheckMode::Exhaustive,
        colorings_checked: checked,
        eps,
        m,
        worst,
    })
}

/// Result of [`derandomized_coloring`].
#[derive(Debug, Clone)]
pub struct Derandomized {
    pub coloring: Coloring,
    /// The hyperedges that are not monochromatic under `coloring`.
    pub kept: UniformHypergraph,
    pub monochromatic: usize,
    /// Conditional expectation of the monochromatic count before any vertex
    /// is fixed, then after fixing each vertex in turn.
    pub trace: Vec<BigRational>,
}

#[derive(Clone, Copy)]
enum EdgeState {
    Open { fixed: Option<usize>, free: usize },
    Mixed,
}

impl EdgeState {
    /// `P(monochromatic) * b^a`.
    fn scaled(self, pow: &[u128], a: usize) -> u128 {
        match self {
            EdgeState::Mixed => 0,
            EdgeState::Open { fixed: None, free } => pow[a + 1 - free],
            EdgeState::Open {
                fixed: Some(_),
                free,
            } => pow[a - free],
        }
    }

    fn with(self, c: usize) -> EdgeState {
        match self {
            EdgeState::Mixed => EdgeState::Mixed,
            EdgeState::Open { fixed, free } => match fixed {
                Some(f) if f != c => EdgeState::Mixed,
                _ => EdgeState::Open {
                    fixed: Some(c),
                    free: free - 1,
                },
            },
        }
    }
}

/// Method of conditional expectations for a `b`-colouring with few
/// monochromatic hyperedges: vertices are fixed in index order, each to the
/// lowest colour minimising the conditional expectation.
pub fn derandomized_coloring(h: &UniformHypergraph, b: usize) -> Result<Derandomized> {
    if b < 2 {
        return Err(Error::InvalidParameter("need at least two colours".into()));
    }
    let a = h.a();
    let mut pow = vec![1u128];
    for i in 0..=a {
        let next = pow[i]
            .checked_mul(b as u128)
            .ok_or_else(|| Error::InvalidParameter(format!("{b}^{a} overflows")))?;
        pow.push(next);
    }
    let scale = big(pow[a]);
    let mut incident = vec![Vec::new(); h.n()];
    for (i, e) in h.edges().iter().enumerate() {
        for &v in e {
            incident[v].push(i);
        }
    }
    let mut state = vec![
        EdgeState::Open {
            fixed: None,
            free: a
        };
        h.edge_count()
    ];
    let mut total: u128 = state.iter().map(|s| s.scaled(&pow, a)).sum();
    let mut trace = vec![BigRational::new(big(total), scale.clone())];
    let mut colors = vec![0; h.n()];
    for v in 0..h.n() {
        let before: u128 = incident[v].iter().map(|&i| state[i].scaled(&pow, a)).sum();
        let (c, after) = (0..b)
            .map(|c| {
                (
                    c,
                    incident[v]
                        .iter()
                        .map(|&i| state[i].with(c).scaled(&pow, a))
                        .sum::<u128>(),
                )
            })
            .min_by_key(|&(c, s)| (s, c))
            .unwrap();
        colors[v] = c;
        for &i in &incident[v] {
            state[i] = state[i].with(c);
        }
        total = total - before + after;
        trace.push(BigRational::new(big(total), scale.clone()));
    }
    let coloring = Coloring::new(b, colors)?;
    let keep: Vec<usize> = (0..h.edge_count())
        .filter(|&i| {
            let c0 = coloring.color(h.edges()[i][0]);
            h.edges()[i].iter().any(|&v| coloring.color(v) != c0)
        })
        .collect();
    Ok(Derandomized {
        monochromatic: h.edge_count() - keep.len(),
        kept: h.retain_indices(&keep),
        coloring,
        trace,
    })
}

/// A colouring maximising the number of hyperedges whose multiset lies in a
/// family.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BestColoring {
    pub q: usize,
    pub coloring: Coloring,
    /// False when produced by the local-search heuristic.
    pub exact: bool,
    pub colorings_checked: u64,
}

/// Exhaustive maximum over all `b^n` colourings, ties to the lowest
/// colouring index.
pub fn best_subhypergraph(
    h: &UniformHypergraph,
    b: usize,
    family: &MultisetFamily,
) -> Result<BestColoring> {
    let member = membership(h, b, family)?;
    let keyer = Keyer::new(h.a(), b)?;
    let (checked, best) = scan(h.n(), b, CheckMode::Exhaustive, |colors, _| {
        let q = h
            .edges()
            .iter()
            .filter(|e| member[keyer.index(colors, e)])
            .count();
        (q as u128, 0, q)
    })?;
    let best = best.expect("at least one colouring");
    Ok(BestColoring {
        q: best.count,
        coloring: Coloring::new(b, best.colors)?,
        exact: true,
        colorings_checked: checked,
    })
}

fn membership(h: &UniformHypergraph, b: usize, family: &MultisetFamily) -> Result<Vec<bool>> {
    if family.a() != h.a() || family.b() != b {
        return Err(Error::InvalidParameter(format!(
            "family is over {}-multisets of {} colours, expected {}-multisets of {b}",
            family.a(),
            family.b(),
            h.a()
        )));
    }
    Ok(ColorMultiset::all(h.a(), b)
        .iter()
        .map(|t| family.contains(t))
        .collect())
}

/// Local search from `restarts` random colourings: recolour single
/// vertices while that strictly increases the count. Not guaranteed
/// optimal.
pub fn best_subhypergraph_heuristic(
    h: &UniformHypergraph,
    b: usize,
    family: &MultisetFamily,
    seed: u64,
    restarts: usize,
) -> Result<BestColoring> {
    let member = membership(h, b, family)?;
    let keyer = Keyer::new(h.a(), b)?;
    let mut incident = vec![Vec::new(); h.n()];
    for (i, e) in h.edges().iter().enumerate() {
        for &v in e {
            incident[v].push(i);
        }
    }
    let good = |colors: &[usize], edges: &[usize]| {
        edges
            .iter()
            .filter(|&&i| member[keyer.index(colors, &h.edges()[i])])
            .count()
    };
    let mut rng = Rng::seed_from(seed);
    let mut best: Option<(usize, Vec<usize>)> = None;
    for _ in 0..restarts.max(1) {
        let mut colors: Vec<usize> = (0..h.n()).map(|_| rng.index(b)).collect();
        let mut improved = true;
        while improved {
            improved = false;
            for v in 0..h.n() {
                let old = colors[v];
                let base = good(&colors, &incident[v]);
                for c in 0..b {
                    if c == old {
                        continue;
                    }
                    colors[v] = c;
                    if good(&colors, &incident[v]) > base {
                        improved = true;
                        break;
                    }
                    colors[v] = old;
                }
            }
        }
        let all: Vec<usize> = (0..h.edge_count()).collect();
        let q = good(&colors, &all);
        if best.as_ref().is_none_or(|(bq, _)| q > *bq) {
            best = Some((q, colors));
        }
    }
    let (q, colors) = best.expect("at least one restart");
    Ok(BestColoring {
        q,
        coloring: Coloring::new(b, colors)?,
        exact: false,
        colorings_checked: restarts.max(1) as u64,
    })
}

/// `1 / b^{a-1}` as an exact fraction.
pub fn monochromatic_fraction(a: usize, b: usize) -> BigRational {
    BigRational::new(
        BigInt::one(),
        num_traits::pow(BigInt::from(b), a.saturating_sub(1)),
    )
}
