//! Reproducible experiment pipelines with CSV reports.
//!
//! Each experiment runs `count` instances with seeds `seed, seed + 1, ..`
//! and emits one row per instance. A row records every count, the relevant
//! bound and the verification flags; any failed hard guarantee is also
//! listed in [`Report::violations`].

use std::fmt;
use std::io::Write;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use rayon::prelude::*;

use crate::budget::SearchBudget;
use crate::colorstats::{
    best_subhypergraph, check_randomlike, derandomized_coloring, max_multiset_probability,
    monochromatic_fraction, CheckMode, MultisetFamily, EXHAUSTIVE_CAP,
};
use crate::constructions::{
    bipartite_blowup, claim_one_thin_between_fat, clique_blowup, fat_edges_disjoint, paste_doubled,
    paste_hyperdouble, verify_pasted,
};
use crate::error::{Error, Result};
use crate::graphcore::{girth, is_connected, BipartiteGraph, UniformHypergraph};
use crate::hypergen::{
    high_girth_bipartite, random_c2k_free_bipartite, random_hypergraph, random_oriented,
    repair_girth, repair_girth_oriented, GenConfig,
};
use crate::kuhn_osthus::extract_c4free;
use crate::oracles::{certify_c2k_free, max_bipartite_girth_subgraph, max_c4free_subgraph};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExperimentKind {
    /// Clique blowups of high-girth `(2k-1)`-uniform hypergraphs.
    Thm3,
    /// Bipartite blowups of high-girth oriented hypergraphs.
    Thm4,
    /// Derandomised colourings with few monochromatic hyperedges.
    Prop1,
    /// Random-likeness versus the best colourable subhypergraph.
    Lemma4,
    /// Doubled bipartite base joined by connector paths.
    Paste1,
    /// Hypergraph doubling into fat and thin edges.
    Paste2,
    /// C4-free extraction from C2k-free bipartite graphs.
    KuhnOsthus,
}

impl ExperimentKind {
    pub const ALL: [ExperimentKind; 7] = [
        ExperimentKind::Thm3,
        ExperimentKind::Thm4,
        ExperimentKind::Prop1,
        ExperimentKind::Lemma4,
        ExperimentKind::Paste1,
        ExperimentKind::Paste2,
        ExperimentKind::KuhnOsthus,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ExperimentKind::Thm3 => "thm3",
            ExperimentKind::Thm4 => "thm4",
            ExperimentKind::Prop1 => "prop1",
            ExperimentKind::Lemma4 => "lemma4",
            ExperimentKind::Paste1 => "paste1",
            ExperimentKind::Paste2 => "paste2",
            ExperimentKind::KuhnOsthus => "kuhn-osthus",
        }
    }

    /// Fixed CSV header.
    pub fn header(self) -> &'static [&'static str] {
        match self {
            ExperimentKind::Thm3 => &[
                "seed",
                "k",
                "n",
                "m_generated",
                "m",
                "edges",
                "c2k_free",
                "best_bipartite",
                "ratio",
                "bound",
                "decomposition_ok",
            ],
            ExperimentKind::Thm4 => &[
                "seed",
                "k",
                "l",
                "n",
                "m_generated",
                "m",
                "edges",
                "c2k_free",
                "best_bipartite_c4free",
                "ratio",
                "bound",
            ],
            ExperimentKind::Prop1 => &[
                "seed",
                "n",
                "m",
                "a",
                "b",
                "monochromatic",
                "kept",
                "guarantee",
                "q",
                "ratio",
                "bound",
            ],
            ExperimentKind::Lemma4 => &[
                "seed",
                "n",
                "m",
                "a",
                "b",
                "eps",
                "randomlike",
                "worst_deviation",
                "q",
                "p_max",
                "bound",
                "holds",
            ],
            ExperimentKind::Paste1 => &[
                "seed",
                "k",
                "l",
                "base_vertices",
                "base_edges",
                "base_girth",
                "vertices",
                "edges",
                "edge_formula_ok",
                "c2k_free",
                "pasted",
                "average_degree",
            ],
            ExperimentKind::Paste2 => &[
                "seed",
                "n",
                "m_generated",
                "m",
                "covered",
                "vertices",
                "edges",
                "edge_formula_ok",
                "fat_disjoint",
                "one_thin_ok",
                "c8_free",
                "pasted",
                "average_degree",
            ],
            ExperimentKind::KuhnOsthus => &[
                "seed",
                "k",
                "vertices",
                "edges",
                "c2k_free",
                "layers",
                "extracted",
                "c4free",
                "bound",
                "bound_ok",
                "optimum",
            ],
        }
    }
}

impl FromStr for ExperimentKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ExperimentKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown experiment {s:?}")))
    }
}

impl fmt::Display for ExperimentKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Verify {
    /// Run the exact oracles and cycle certifications.
    #[default]
    Deep,
    /// Skip expensive certification; the affected columns read `skipped`.
    Fast,
}

impl FromStr for Verify {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "deep" => Ok(Verify::Deep),
            "fast" => Ok(Verify::Fast),
            _ => Err(Error::InvalidParameter(format!(
                "verify must be deep or fast, got {s:?}"
            ))),
        }
    }
}

#[derive(Debug, Clone)]
pub struct ExperimentSpec {
    pub kind: ExperimentKind,
    pub k: usize,
    pub l: usize,
    pub a: usize,
    pub b: usize,
    /// Vertices (per side for `paste1` and `kuhn-osthus`).
    pub n: usize,
    /// Hyperedges generated, or the edge cap for `kuhn-osthus`.
    pub m: usize,
    pub eps: f64,
    pub seed: u64,
    pub count: usize,
    pub budget: SearchBudget,
    pub verify: Verify,
    /// Explicit input for `kuhn-osthus`, replacing the generator.
    pub graph: Option<BipartiteGraph>,
}

impl ExperimentSpec {
    /// Defaults small enough to run in seconds.
    pub fn new(kind: ExperimentKind) -> Self {
        let base = ExperimentSpec {
            kind,
            k: 2,
            l: 3,
            a: 3,
            b: 2,
            n: 30,
            m: 5,
            eps: 0.5,
            seed: 0,
            count: 1,
            budget: SearchBudget::default(),
            verify: Verify::Deep,
            graph: None,
        };
        match kind {
            ExperimentKind::Thm3 => base,
            ExperimentKind::Thm4 => ExperimentSpec {
                k: 3,
                l: 3,
                n: 40,
                m: 6,
                ..base
            },
            ExperimentKind::Prop1 => ExperimentSpec {
                n: 50,
                m: 100,
                ..base
            },
            ExperimentKind::Lemma4 => ExperimentSpec {
                a: 2,
                n: 10,
                m: 20,
                ..base
            },
            ExperimentKind::Paste1 => ExperimentSpec {
                k: 4,
                l: 3,
                n: 100,
                ..base
            },
            ExperimentKind::Paste2 => ExperimentSpec {
                n: 60,
                m: 120,
                ..base
            },
            ExperimentKind::KuhnOsthus => ExperimentSpec {
                k: 3,
                n: 8,
                m: 64,
                ..base
            },
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidParameter(msg));
        if self.count == 0 {
            return bad("count must be positive".into());
        }
        if self.k < 2 {
            return bad(format!("k must be at least 2, got {}", self.k));
        }
        match self.kind {
            ExperimentKind::Thm4 | ExperimentKind::Paste1 if self.l < 2 => {
                bad(format!("l must be at least 2, got {}", self.l))
            }
            ExperimentKind::Paste1 if self.l < 3 || self.k <= self.l => {
                bad(format!("need k > l >= 3, got k={} l={}", self.k, self.l))
            }
            ExperimentKind::Prop1 | ExperimentKind::Lemma4 if self.a < 2 || self.b < 2 => {
                bad(format!("need a, b >= 2, got a={} b={}", self.a, self.b))
            }
            ExperimentKind::Lemma4 if self.eps.is_nan() || self.eps <= 0.0 => {
                bad("eps must be positive".into())
            }
            _ => Ok(()),
        }
    }
}

/// Rows of one experiment plus the hard guarantees that failed.
#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub kind: ExperimentKind,
    pub rows: Vec<Vec<String>>,
    pub violations: Vec<String>,
}

impl Report {
    pub fn header(&self) -> &'static [&'static str] {
        self.kind.header()
    }

    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(self.header())?;
        for row in &self.rows {
            w.write_record(row)?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn to_csv(&self) -> String {
        let mut buf = Vec::new();
        self.write_csv(&mut buf).expect("writing to memory");
        String::from_utf8(buf).expect("csv is utf-8")
    }

    /// Value of `column` in row `row`.
    pub fn cell(&self, row: usize, column: &str) -> Option<&str> {
        let i = self.header().iter().position(|&c| c == column)?;
        self.rows.get(row).map(|r| r[i].as_str())
    }
}

/// Six significant digits.
pub fn fmt_float(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let magnitude = x.abs().log10().floor() as i32;
    if (-5..15).contains(&magnitude) {
        format!("{:.*}", (5 - magnitude).max(0) as usize, x)
    } else {
        format!("{x:.5e}")
    }
}

fn ratio(num: usize, den: usize) -> BigRational {
    if den == 0 {
        return BigRational::from_integer(BigInt::from(0));
    }
    BigRational::new(num.into(), den.into())
}

fn flag(b: bool) -> String {
    b.to_string()
}

/// An instance row and its violated guarantees.
type Outcome = (Vec<String>, Vec<String>);

pub fn run_experiment(spec: &ExperimentSpec) -> Result<Report> {
    spec.validate()?;
    let outcomes: Vec<Result<Outcome>> = (0..spec.count as u64)
        .into_par_iter()
        .map(|i| {
            let seed = spec.seed + i;
            match spec.kind {
                ExperimentKind::Thm3 => thm3(spec, seed),
                ExperimentKind::Thm4 => thm4(spec, seed),
                ExperimentKind::Prop1 => prop1(spec, seed),
                ExperimentKind::Lemma4 => lemma4(spec, seed),
                ExperimentKind::Paste1 => paste1(spec, seed),
                ExperimentKind::Paste2 => paste2(spec, seed),
                ExperimentKind::KuhnOsthus => kuhn_osthus(spec, seed),
            }
        })
        .collect();
    let mut rows = Vec::new();
    let mut violations = Vec::new();
    for o in outcomes {
        let (row, v) = o?;
        rows.push(row);
        violations.extend(v);
    }
    Ok(Report {
        kind: spec.kind,
        rows,
        violations,
    })
}

/// Runs an exact search; a budget or time abort becomes the cell `aborted`.
fn bounded<T>(r: Result<T>) -> Result<Option<T>> {
    match r {
        Ok(x) => Ok(Some(x)),
        Err(Error::BudgetExceeded { .. } | Error::TimeLimitExceeded) => Ok(None),
        Err(e) => Err(e),
    }
}

fn deep<T>(spec: &ExperimentSpec, f: impl FnOnce() -> Result<T>) -> Result<Option<Option<T>>> {
    match spec.verify {
        Verify::Fast => Ok(None),
        Verify::Deep => bounded(f()).map(Some),
    }
}

/// `skipped` under fast verification, `aborted` when the budget ran out.
fn cell<T>(v: &Option<Option<T>>, show: impl FnOnce(&T) -> String) -> String {
    match v {
        None => "skipped".into(),
        Some(None) => "aborted".into(),
        Some(Some(x)) => show(x),
    }
}

fn enough_vertices(n: usize, a: usize, m: usize) -> usize {
    let mut n = n.max(a);
    while crate::hypergen::binomial(n, a) / 2 < m as u128 {
        n += 1;
    }
    n
}

fn thm3(spec: &ExperimentSpec, seed: u64) -> Result<Outcome> {
    let k = spec.k;
    let a = 2 * k - 1;
    let n = enough_vertices(spec.n, a, spec.m);
    let h = random_hypergraph(&GenConfig {
        a,
        n,
        m: spec.m,
        k: 2 * k,
        seed,
    })?;
    let h = repair_girth(&h, 2 * k)?.hypergraph;
    let g = clique_blowup(&h)?.graph;
    let mut bad = Vec::new();
    let expected = crate::hypergen::binomial(a, 2) as usize * h.edge_count();
    if g.edge_count() != expected {
        bad.push(format!(
            "thm3 seed {seed}: {} edges, expected {expected}",
            g.edge_count()
        ));
    }
    let free = deep(spec, || certify_c2k_free(&g, k, &spec.budget))?;
    if let Some(Some(false)) = free {
        bad.push(format!("thm3 seed {seed}: blowup contains C{}", 2 * k));
    }
    let best = deep(spec, || {
        max_bipartite_girth_subgraph(&g, 2 * k, &spec.budget)
    })?;
    let decomposition = best.as_ref().map(|o| {
        o.as_ref().map(|r| {
            let nonmono = h
                .edges()
                .iter()
                .filter(|e| e.iter().any(|&v| r.sides[v] != r.sides[e[0]]))
                .count();
            r.size <= (2 * k - 2) * nonmono
        })
    });
    if let Some(Some(false)) = decomposition {
        bad.push(format!("thm3 seed {seed}: decomposition inequality fails"));
    }
    let bound = (1.0 - 1.0 / 2f64.powi(2 * k as i32 - 2)) * 2.0 / (2 * k - 1) as f64;
    let row = vec![
        seed.to_string(),
        k.to_string(),
        n.to_string(),
        spec.m.to_string(),
        h.edge_count().to_string(),
        g.edge_count().to_string(),
        cell(&free, |b| flag(*b)),
        cell(&best, |r| r.size.to_string()),
        cell(&best, |r| ratio(r.size, g.edge_count()).to_string()),
        fmt_float(bound),
        cell(&decomposition, |b| flag(*b)),
    ];
    Ok((row, bad))
}

fn thm4(spec: &ExperimentSpec, seed: u64) -> Result<Outcome> {
    let (k, l) = (spec.k, spec.l);
    let a = k - 1 + l;
    let n = enough_vertices(spec.n, a, spec.m);
    let o = random_oriented(&GenConfig {
        a,
        n,
        m: spec.m,
        k: 2 * k,
        seed,
    })?;
    let (o, _) = repair_girth_oriented(&o, 2 * k)?;
    let g = bipartite_blowup(&o, k, l)?.graph;
    let mut bad = Vec::new();
    if g.edge_count() != o.edge_count() * (k - 1) * l {
        bad.push(format!("thm4 seed {seed}: edge count formula fails"));
    }
    let free = deep(spec, || certify_c2k_free(&g, k, &spec.budget))?;
    if let Some(Some(false)) = free {
        bad.push(format!("thm4 seed {seed}: blowup contains C{}", 2 * k));
    }
    let best = deep(spec, || max_bipartite_girth_subgraph(&g, 4, &spec.budget))?;
    let bound = (1.0 - 1.0 / 2f64.powi(k as i32 - 1)) / (k - 1) as f64;
    let row = vec![
        seed.to_string(),
        k.to_string(),
        l.to_string(),
        n.to_string(),
        spec.m.to_string(),
        o.edge_count().to_string(),
        g.edge_count().to_string(),
        cell(&free, |b| flag(*b)),
        cell(&best, |r| r.size.to_string()),
        cell(&best, |r| ratio(r.size, g.edge_count()).to_string()),
        fmt_float(bound),
    ];
    Ok((row, bad))
}

fn prop1(spec: &ExperimentSpec, seed: u64) -> Result<Outcome> {
    let (a, b) = (spec.a, spec.b);
    let n = enough_vertices(spec.n, a, spec.m);
    let h = random_hypergraph(&GenConfig {
        a,
        n,
        m: spec.m,
        k: 2,
        seed,
    })?;
    let d = derandomized_coloring(&h, b)?;
    let m = h.edge_count();
    let guarantee = m - m / b.pow(a as u32 - 1);
    let mut bad = Vec::new();
    if d.kept.edge_count() < guarantee {
        bad.push(format!(
            "prop1 seed {seed}: kept {} < {guarantee}",
            d.kept.edge_count()
        ));
    }
    let exact = (b as u128)
        .checked_pow(n as u32)
        .is_some_and(|s| s <= EXHAUSTIVE_CAP);
    let q = if exact {
        deep(spec, || {
            best_subhypergraph(&h, b, &MultisetFamily::non_monochromatic(a, b))
        })?
    } else {
        None
    };
    let bound = BigRational::one() - monochromatic_fraction(a, b);
    let row = vec![
        seed.to_string(),
        n.to_string(),
        m.to_string(),
        a.to_string(),
        b.to_string(),
        d.monochromatic.to_string(),
        d.kept.edge_count().to_string(),
        guarantee.to_string(),
        cell(&q, |r| r.q.to_string()),
        ratio(d.kept.edge_count(), m).to_string(),
        bound.to_string(),
    ];
    Ok((row, bad))
}

fn lemma4(spec: &ExperimentSpec, seed: u64) -> Result<Outcome> {
    let (a, b, n) = (spec.a, spec.b, spec.n);
    let h = random_hypergraph(&GenConfig {
        a,
        n,
        m: spec.m,
        k: 2,
        seed,
    })?;
    let family = MultisetFamily::non_monochromatic(a, b);
    let eps_check = spec.eps / (2.0 * (b as f64).powi(a as i32));
    let report = check_randomlike(&h, b, eps_check, CheckMode::Exhaustive)?;
    let best = best_subhypergraph(&h, b, &family)?;
    let (_, p_max) = max_multiset_probability(n, b, &family)?;
    let bound = p_max.to_f64().unwrap_or(f64::NAN) * h.edge_count() as f64 * (1.0 + spec.eps);
    let holds = !report.pass || best.q as f64 <= bound + 1e-9;
    let mut bad = Vec::new();
    if !holds {
        bad.push(format!(
            "lemma4 seed {seed}: q = {} exceeds {bound}",
            best.q
        ));
    }
    let row = vec![
        seed.to_string(),
        n.to_string(),
        h.edge_count().to_string(),
        a.to_string(),
        b.to_string(),
        fmt_float(spec.eps),
        flag(report.pass),
        report.worst.map_or("".into(), |w| fmt_float(w.deviation)),
        best.q.to_string(),
        p_max.to_string(),
        fmt_float(bound),
        flag(holds),
    ];
    Ok((row, bad))
}

fn paste1(spec: &ExperimentSpec, seed: u64) -> Result<Outcome> {
    let (k, l) = (spec.k, spec.l);
    let base = high_girth_bipartite(spec.n, 2 * k + 2, 2, seed)?;
    let pg = paste_doubled(&base, l)?;
    let g = &pg.graph;
    let (e1, nb) = (base.graph().edge_count(), base.class_b().len());
    let formula = g.edge_count() == 2 * e1 + (l - 2) * nb;
    let mut bad = Vec::new();
    if !formula {
        bad.push(format!("paste1 seed {seed}: edge count formula fails"));
    }
    let free = deep(spec, || certify_c2k_free(g, k, &spec.budget))?;
    // connector paths close a C_{2k} through a base path of length k - l + 2
    // whenever k - l is even, so freeness is only required for odd k - l
    if (k - l) % 2 == 1 {
        if let Some(Some(false)) = free {
            bad.push(format!("paste1 seed {seed}: pasting contains C{}", 2 * k));
        }
    }
    let pasted = deep(spec, || verify_pasted(g, l, &spec.budget))?;
    if let Some(Some(c)) = &pasted {
        if !c.holds {
            bad.push(format!("paste1 seed {seed}: not a pasting of C{}s", 2 * l));
        }
    }
    let row = vec![
        seed.to_string(),
        k.to_string(),
        l.to_string(),
        base.graph().n().to_string(),
        e1.to_string(),
        girth(base.graph()).to_string(),
        g.n().to_string(),
        g.edge_count().to_string(),
        flag(formula),
        cell(&free, |b| flag(*b)),
        cell(&pasted, |c| flag(c.holds)),
        fmt_float(2.0 * g.edge_count() as f64 / g.n() as f64),
    ];
    Ok((row, bad))
}

/// Random linear 3-uniform hypergraph with Berge-girth at least 9, reduced
/// to its largest connected component.
pub fn girth9_triples(n: usize, m: usize, seed: u64) -> Result<UniformHypergraph> {
    let h = random_hypergraph(&GenConfig {
        a: 3,
        n,
        m,
        k: 8,
        seed,
    })?;
    Ok(repair_girth(&h, 8)?.hypergraph.largest_component())
}

fn paste2(spec: &ExperimentSpec, seed: u64) -> Result<Outcome> {
    let h = girth9_triples(spec.n, spec.m, seed)?;
    debug_assert!(is_connected(&h));
    let pg = paste_hyperdouble(&h)?;
    let g = &pg.graph;
    let covered = h.covered_count();
    let formula = g.edge_count() == 3 * h.edge_count() + covered;
    let disjoint = fat_edges_disjoint(&pg);
    let one_thin = claim_one_thin_between_fat(&pg);
    let mut bad = Vec::new();
    for (ok, what) in [
        (formula, "edge count formula"),
        (disjoint, "fat edge disjointness"),
        (one_thin, "one thin edge between fat edges"),
    ] {
        if !ok {
            bad.push(format!("paste2 seed {seed}: {what} fails"));
        }
    }
    let free = deep(spec, || certify_c2k_free(g, 4, &spec.budget))?;
    if let Some(Some(false)) = free {
        bad.push(format!("paste2 seed {seed}: pasting contains C8"));
    }
    let pasted = deep(spec, || verify_pasted(g, 3, &spec.budget))?;
    if let Some(Some(c)) = &pasted {
        if !c.holds && h.edge_count() > 0 {
            bad.push(format!("paste2 seed {seed}: not a pasting of C6s"));
        }
    }
    let covered_vertices = 2 * covered;
    let row = vec![
        seed.to_string(),
        spec.n.to_string(),
        spec.m.to_string(),
        h.edge_count().to_string(),
        covered.to_string(),
        g.n().to_string(),
        g.edge_count().to_string(),
        flag(formula),
        flag(disjoint),
        flag(one_thin),
        cell(&free, |b| flag(*b)),
        cell(&pasted, |c| flag(c.holds)),
        fmt_float(if covered_vertices == 0 {
            0.0
        } else {
            2.0 * g.edge_count() as f64 / covered_vertices as f64
        }),
    ];
    Ok((row, bad))
}

fn kuhn_osthus(spec: &ExperimentSpec, seed: u64) -> Result<Outcome> {
    let k = spec.k;
    let g = match &spec.graph {
        Some(g) => g.clone(),
        None => random_c2k_free_bipartite(spec.n, spec.n, k, spec.m, seed)?,
    };
    let e = g.graph().edge_count();
    let mut bad = Vec::new();
    let free = certify_c2k_free(g.graph(), k, &spec.budget)?;
    let x = extract_c4free(&g);
    let c4free = certify_c2k_free(&x.subgraph, 2, &spec.budget)?;
    let bound = ratio(e, k - 1);
    let bound_ok = BigRational::from_integer(x.edges.len().into()) >= bound;
    if !c4free {
        bad.push(format!("kuhn-osthus seed {seed}: extraction contains C4"));
    }
    if free && !bound_ok {
        bad.push(format!(
            "kuhn-osthus seed {seed}: {} edges < e/(k-1)",
            x.edges.len()
        ));
    }
    let small = e <= 24;
    let optimum = if small {
        deep(spec, || max_c4free_subgraph(g.graph(), &spec.budget))?
    } else {
        None
    };
    if let Some(Some(o)) = &optimum {
        if o.size < x.edges.len() {
            bad.push(format!(
                "kuhn-osthus seed {seed}: extraction beats the optimum"
            ));
        }
    }
    let row = vec![
        seed.to_string(),
        k.to_string(),
        g.graph().n().to_string(),
        e.to_string(),
        flag(free),
        x.layer_count.to_string(),
        x.edges.len().to_string(),
        flag(c4free),
        bound.to_string(),
        flag(bound_ok),
        cell(&optimum, |o| o.size.to_string()),
    ];
    Ok((row, bad))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn float_format() {
        assert_eq!(fmt_float(0.4), "0.400000");
        assert_eq!(fmt_float(123.456789), "123.457");
        assert_eq!(fmt_float(0.0), "0");
        assert_eq!(fmt_float(1.5e-9), "1.50000e-9");
    }

    #[test]
    fn names_round_trip() {
        for k in ExperimentKind::ALL {
            assert_eq!(k.name().parse::<ExperimentKind>().unwrap(), k);
            assert_eq!(k.header()[0], "seed");
        }
        assert!("thm9".parse::<ExperimentKind>().is_err());
    }

    #[test]
    fn thm3_small() {
        let spec = ExperimentSpec {
            n: 40,
            ..ExperimentSpec::new(ExperimentKind::Thm3)
        };
        let r = run_experiment(&spec).unwrap();
        assert!(r.violations.is_empty(), "{:?}", r.violations);
        assert_eq!(r.cell(0, "m"), Some("5"));
        assert_eq!(r.cell(0, "edges"), Some("15"));
        assert_eq!(r.cell(0, "decomposition_ok"), Some("true"));
        assert_eq!(r.cell(0, "bound"), Some("0.500000"));
    }

    #[test]
    fn kuhn_osthus_on_k25() {
        let spec = ExperimentSpec {
            graph: Some(BipartiteGraph::complete(2, 5)),
            ..ExperimentSpec::new(ExperimentKind::KuhnOsthus)
        };
        let r = run_experiment(&spec).unwrap();
        assert!(r.violations.is_empty());
        assert_eq!(r.cell(0, "edges"), Some("10"));
        assert_eq!(r.cell(0, "layers"), Some("2"));
        assert_eq!(r.cell(0, "extracted"), Some("6"));
        assert_eq!(r.cell(0, "c4free"), Some("true"));
        assert_eq!(r.cell(0, "bound"), Some("5"));
        assert_eq!(r.cell(0, "bound_ok"), Some("true"));
        assert_eq!(r.cell(0, "optimum"), Some("6"));
    }

    #[test]
    fn prop1_guarantee() {
        let r = run_experiment(&ExperimentSpec::new(ExperimentKind::Prop1)).unwrap();
        assert!(r.violations.is_empty());
        let kept: usize = r.cell(0, "kept").unwrap().parse().unwrap();
        assert!(kept >= 75);
        assert_eq!(r.cell(0, "guarantee"), Some("75"));
        assert_eq!(r.cell(0, "bound"), Some("3/4"));
    }

    #[test]
    fn reports_are_reproducible() {
        for kind in ExperimentKind::ALL {
            let spec = ExperimentSpec {
                count: 2,
                verify: Verify::Fast,
                ..ExperimentSpec::new(kind)
            };
            let a = run_experiment(&spec).unwrap().to_csv();
            let b = run_experiment(&spec).unwrap().to_csv();
            assert_eq!(a, b, "{kind}");
            assert_eq!(a.lines().count(), 3, "{kind}");
        }
    }

    #[test]
    fn fast_mode_skips() {
        let spec = ExperimentSpec {
            verify: Verify::Fast,
            ..ExperimentSpec::new(ExperimentKind::Thm3)
        };
        let r = run_experiment(&spec).unwrap();
        assert_eq!(r.cell(0, "best_bipartite"), Some("skipped"));
    }

    #[test]
    fn invalid_specs() {
        let spec = ExperimentSpec {
            k: 3,
            l: 3,
            ..ExperimentSpec::new(ExperimentKind::Paste1)
        };
        assert!(run_experiment(&spec).is_err());
        let spec = ExperimentSpec {
            count: 0,
            ..ExperimentSpec::new(ExperimentKind::Thm3)
        };
        assert!(run_experiment(&spec).is_err());
    }
}
