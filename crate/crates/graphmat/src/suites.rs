//! Named verification suites with machine-readable reports.
//!
//! Each suite runs a generator and a predicate and records every failing
//! case with its graph. Every suite also has a mutant mode that weakens a
//! hypothesis or shifts a threshold by one; a mutant run that finds nothing
//! means the suite is not exercising its claim.

use std::time::{Duration, Instant};

use graphmat_core::cofactor::{self, extract_three_connected, kn_rank, peel_lower_bound};
use graphmat_core::connectivity::{edge_connectivity, is_k_connected, vertex_connectivity};
use graphmat_core::construct::{cofactor_packing, Family};
use graphmat_core::count::{self, is_redundant, is_rigid, rank_pairs, CountMatroid, CountParams};
use graphmat_core::enumerate::{for_each_multigraph, multigraph_from_multiplicities, simple_graphs};
use graphmat_core::iso::isomorphic;
use graphmat_core::matroid::{components, union_partition, union_rank, vertical_connectivity, GraphicMatroid, RankOracle};
use graphmat_core::oracle::{count_rank_greedy, separator_components};
use graphmat_core::reconstruct::{agrees_on_samples, labeled_from_graph, reconstruct, FamilyTag, StarSearch};
use graphmat_core::{EdgeSet, MultiGraph};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::io::GraphJson;
use crate::sample;

pub const SCHEMA: &str = "graphmat-report/1";
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

/// Violations kept in a report; the total is always counted.
pub const KEPT_VIOLATIONS: usize = 50;

const COUNT_PARAMS: [(usize, i64); 9] = [(1, 1), (1, 0), (2, 3), (2, 2), (2, 1), (2, 0), (2, -1), (3, 4), (3, 5)];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct SuiteConfig {
    pub seed: u64,
    pub samples: Option<usize>,
    pub max_n: Option<usize>,
    pub mutant: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Violation {
    pub case: String,
    pub params: Value,
    pub graph: Option<GraphJson>,
    pub expected: String,
    pub actual: String,
}

/// Outcome of one suite run. Wall time is kept out of the JSON so that
/// reports are reproducible byte for byte.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteReport {
    pub schema: &'static str,
    pub tool_version: &'static str,
    pub suite: &'static str,
    pub seed: u64,
    pub mutant: bool,
    pub samples: usize,
    pub max_n: usize,
    pub cases: usize,
    pub violation_count: usize,
    pub violations: Vec<Violation>,
    #[serde(skip)]
    pub wall: Duration,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.violation_count == 0
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Reports of several suites in one document.
pub fn reports_json(reports: &[SuiteReport]) -> String {
    let doc = json!({ "schema": SCHEMA, "tool_version": TOOL_VERSION, "reports": reports });
    let mut s = serde_json::to_string_pretty(&doc).expect("reports serialize");
    s.push('\n');
    s
}

pub struct Suite {
    pub name: &'static str,
    pub about: &'static str,
    pub default_samples: usize,
    pub default_max_n: usize,
    /// Largest `max_n` the suite accepts.
    pub limit_n: usize,
    run: fn(&mut Ctx) -> Result<()>,
}

pub static SUITES: &[Suite] = &[
    Suite {
        name: "oracle-equivalence",
        about: "fast count rank equals the definition-based rank on every small multigraph",
        default_samples: 0,
        default_max_n: 5,
        limit_n: 6,
        run: oracle_equivalence,
    },
    Suite {
        name: "clique-redundancy",
        about: "K_{2l+1} is (k,l)-redundant for (2,3), (3,4), (3,5)",
        default_samples: 0,
        default_max_n: 0,
        limit_n: 0,
        run: clique_redundancy,
    },
    Suite {
        name: "ly-construction",
        about: "Lovasz-Yemini graphs are exactly (2l-1)-connected and not (k,l)-rigid",
        default_samples: 0,
        default_max_n: 0,
        limit_n: 0,
        run: ly_construction,
    },
    Suite {
        name: "tree-packing",
        about: "2k-edge-connected graphs keep k disjoint spanning trees after deleting any k edges",
        default_samples: 50,
        default_max_n: 12,
        limit_n: 16,
        run: tree_packing,
    },
    Suite {
        name: "kriesell-f1",
        about: "4-connected graphs have a spanning tree whose complement is connected",
        default_samples: 50,
        default_max_n: 12,
        limit_n: 16,
        run: kriesell_f1,
    },
    Suite {
        name: "degree-rigidity",
        about: "for l <= 0, minimum degree 2k - 2l/|V| gives rigidity and 2k - (2l-2)/|V| redundancy",
        default_samples: 100,
        default_max_n: 10,
        limit_n: 16,
        run: degree_rigidity,
    },
    Suite {
        name: "edge-connected-redundancy",
        about: "for 0 < l <= k, 2k-edge-connected graphs are (k,l)-redundant",
        default_samples: 100,
        default_max_n: 10,
        limit_n: 16,
        run: edge_connected_redundancy,
    },
    Suite {
        name: "vertex-connected-redundancy",
        about: "for k < l <= 2k-1, 2l-connected graphs are (k,l)-redundant",
        default_samples: 100,
        default_max_n: 10,
        limit_n: 16,
        run: vertex_connected_redundancy,
    },
    Suite {
        name: "union-identity",
        about: "M_{kt,lt} is the t-fold union of M_{k,l} for (2,3,2) and (1,1,3)",
        default_samples: 100,
        default_max_n: 8,
        limit_n: 12,
        run: union_identity,
    },
    Suite {
        name: "cofactor-rank",
        about: "r_1(K_n) = 3n-6 by exhaustive search, packings and extraction certify 3n-6 per part",
        default_samples: 0,
        default_max_n: 8,
        limit_n: 8,
        run: cofactor_rank,
    },
    Suite {
        name: "reconstruction",
        about: "graphs are recovered from their count and cofactor matroids; ambiguous inputs are refused",
        default_samples: 0,
        default_max_n: 7,
        limit_n: 7,
        run: reconstruction,
    },
    Suite {
        name: "matroid-core",
        about: "link-graph components equal separator components; vertical separations verify",
        default_samples: 0,
        default_max_n: 5,
        limit_n: 5,
        run: matroid_core,
    },
];

pub fn find(name: &str) -> Result<&'static Suite> {
    SUITES.iter().find(|s| s.name == name).ok_or_else(|| {
        let names: Vec<&str> = SUITES.iter().map(|s| s.name).collect();
        Error::Usage(format!("unknown suite {name:?}; known: {}", names.join(", ")))
    })
}

pub fn run(name: &str, cfg: SuiteConfig) -> Result<SuiteReport> {
    find(name)?.run(cfg)
}

/// Runs every suite; `max_n` is clamped to each suite's limit.
pub fn run_all(cfg: SuiteConfig) -> Result<Vec<SuiteReport>> {
    SUITES
        .iter()
        .map(|s| {
            let max_n = cfg.max_n.map(|m| m.min(s.limit_n));
            s.run(SuiteConfig { max_n, ..cfg })
        })
        .collect()
}

impl Suite {
    pub fn run(&self, cfg: SuiteConfig) -> Result<SuiteReport> {
        // Suites over fixed graphs take no size.
        let max_n = if self.limit_n == 0 { 0 } else { cfg.max_n.unwrap_or(self.default_max_n) };
        if max_n > self.limit_n {
            return Err(Error::Usage(format!(
                "suite {} accepts --max-n up to {}, got {max_n}",
                self.name, self.limit_n
            )));
        }
        let samples = cfg.samples.unwrap_or(self.default_samples);
        let mut ctx = Ctx {
            rng: ChaCha8Rng::seed_from_u64(cfg.seed),
            seed: cfg.seed,
            mutant: cfg.mutant,
            samples,
            max_n,
            cases: 0,
            violation_count: 0,
            violations: Vec::new(),
        };
        let start = Instant::now();
        (self.run)(&mut ctx)?;
        Ok(SuiteReport {
            schema: SCHEMA,
            tool_version: TOOL_VERSION,
            suite: self.name,
            seed: cfg.seed,
            mutant: cfg.mutant,
            samples,
            max_n,
            cases: ctx.cases,
            violation_count: ctx.violation_count,
            violations: ctx.violations,
            wall: start.elapsed(),
        })
    }
}

struct Ctx {
    rng: ChaCha8Rng,
    seed: u64,
    mutant: bool,
    samples: usize,
    max_n: usize,
    cases: usize,
    violation_count: usize,
    violations: Vec<Violation>,
}

impl Ctx {
    /// Counts one case and records it when `ok` is false.
    fn check(&mut self, ok: bool, case: &str, params: Value, g: Option<&MultiGraph>, expected: impl ToString, actual: impl ToString) {
        self.cases += 1;
        if ok {
            return;
        }
        self.violation_count += 1;
        if self.violations.len() < KEPT_VIOLATIONS {
            self.violations.push(Violation {
                case: case.to_string(),
                params,
                graph: g.map(GraphJson::from_graph),
                expected: expected.to_string(),
                actual: actual.to_string(),
            });
        }
    }

    /// Vertex count drawn from `lo..=max_n`.
    fn size(&mut self, lo: usize) -> Result<usize> {
        if self.max_n < lo {
            return Err(Error::Usage(format!("--max-n must be at least {lo}")));
        }
        Ok(self.rng.gen_range(lo..=self.max_n))
    }
}

fn cp(k: usize, l: i64) -> CountParams {
    CountParams::new(k, l).expect("listed parameters are valid")
}

fn kl(p: CountParams) -> Value {
    json!({"k": p.k, "l": p.l})
}

fn oracle_equivalence(ctx: &mut Ctx) -> Result<()> {
    let n = ctx.max_n;
    for (k, l) in COUNT_PARAMS {
        let p = cp(k, l);
        // The mutant checks against the definition with l shifted by one.
        let brute_p = if ctx.mutant { cp(k, l - 1) } else { p };
        let mult = (2 * k as i64 - l).max(1) as u8;
        let mut bad: Vec<(Vec<u8>, usize, usize)> = Vec::new();
        let mut cases = 0;
        for_each_multigraph(n, mult, |m| {
            let g = multigraph_from_multiplicities(n, m);
            let pairs = g.pairs();
            let fast = rank_pairs(n, &pairs, p);
            let brute = count_rank_greedy(n, &pairs, brute_p);
            cases += 1;
            if fast != brute {
                bad.push((m.to_vec(), brute, fast));
            }
        });
        ctx.cases += cases - bad.len();
        for (m, brute, fast) in bad {
            let g = multigraph_from_multiplicities(n, &m);
            ctx.check(false, "rank", kl(p), Some(&g), brute, fast);
        }
    }
    Ok(())
}

fn clique_redundancy(ctx: &mut Ctx) -> Result<()> {
    for (k, l) in [(2usize, 3i64), (3, 4), (3, 5)] {
        let p = cp(k, l);
        // The mutant claims the same for the smaller clique K_l.
        let n = if ctx.mutant { l as usize } else { 2 * l as usize + 1 };
        let g = Family::Complete(n).build()?;
        let ok = is_redundant(&g, p);
        ctx.check(ok, &format!("K_{n} redundant"), kl(p), Some(&g), true, ok);
    }
    Ok(())
}

fn ly_construction(ctx: &mut Ctx) -> Result<()> {
    for (k, l) in [(2usize, 3usize), (3, 4), (3, 5)] {
        let p = cp(k, l as i64);
        let g = Family::LovaszYemini { k, l }.build()?;
        let n = g.vertex_count();
        let want = if ctx.mutant { 2 * l } else { 2 * l - 1 };
        let kappa = vertex_connectivity(&g)?;
        ctx.check(kappa == want, "vertex connectivity", kl(p), None, want, kappa);
        let r = count::rank(&g, p, &g.all_edges());
        let cap = k * n - l - 1;
        ctx.check(r <= cap, "rank bound", kl(p), None, format!("<= {cap}"), r);
        ctx.check(!is_rigid(&g, p), "not rigid", kl(p), None, false, is_rigid(&g, p));
        if (k, l) == (2, 3) {
            let size = (n, g.edge_count());
            ctx.check(size == (40, 100), "size", kl(p), None, "(40, 100)", format!("{size:?}"));
        }
    }
    Ok(())
}

/// Deletes random edges, never below edge connectivity `target`, until the
/// connectivity is exactly `target`.
fn weaken_to<R: Rng>(g: &MultiGraph, target: usize, rng: &mut R) -> Result<MultiGraph> {
    let mut pairs = g.pairs();
    let n = g.vertex_count();
    loop {
        let cur = MultiGraph::from_pairs(n, &pairs)?;
        if edge_connectivity(&cur)? == target {
            return Ok(cur);
        }
        let i = rng.gen_range(0..pairs.len());
        let mut fewer = pairs.clone();
        fewer.remove(i);
        if edge_connectivity(&MultiGraph::from_pairs(n, &fewer)?)? >= target {
            pairs = fewer;
        }
    }
}

fn tree_packing(ctx: &mut Ctx) -> Result<()> {
    for k in [1usize, 2] {
        let p = cp(k, k as i64);
        for _ in 0..ctx.samples {
            let n = ctx.size(2 * k + 1)?;
            let mut g = sample::k_edge_connected(n, 2 * k, &mut ctx.rng)?;
            if ctx.mutant {
                // One below the connectivity the claim needs.
                g = weaken_to(&g, 2 * k - 1, &mut ctx.rng)?;
            }
            let all = g.all_edges();
            let target = k * (n - 1);
            let mut worst: Option<Vec<String>> = None;
            let mut deletions = vec![EdgeSet::new(g.edge_count())];
            for a in 0..g.edge_count() {
                deletions.push(EdgeSet::from_indices(g.edge_count(), [a]));
                if k >= 2 {
                    for b in a + 1..g.edge_count() {
                        deletions.push(EdgeSet::from_indices(g.edge_count(), [a, b]));
                    }
                }
            }
            for d in &deletions {
                if count::rank(&g, p, &all.difference(d)) != target {
                    worst = Some(g.edge_ids_of(d));
                    break;
                }
            }
            let params = json!({"k": k, "n": n});
            let shown = worst.as_ref().map_or("none".to_string(), |w| format!("{w:?}"));
            ctx.check(worst.is_none(), "k trees after deleting any k edges", params, Some(&g), "none", shown);
        }
    }
    Ok(())
}

/// Spanning tree `T` with `G - E(T)` connected, from two disjoint spanning
/// trees found by matroid union.
fn tree_with_connected_complement(g: &MultiGraph) -> Option<EdgeSet> {
    let n = g.vertex_count();
    let graphic = GraphicMatroid::new(g);
    let two: [&dyn RankOracle; 2] = [&graphic, &graphic];
    let parts = union_partition(&two, &g.all_edges());
    let t = parts[0].clone();
    let ok = t.len() + 1 == n && graphic.rank(&t) + 1 == n && graphic.rank(&t.complement()) + 1 == n;
    ok.then_some(t)
}

fn kriesell_f1(ctx: &mut Ctx) -> Result<()> {
    for _ in 0..ctx.samples {
        let g = if ctx.mutant {
            // Cubic 3-connected graphs have fewer than 2|V| - 2 edges.
            let n = ctx.size(6)? & !1;
            loop {
                let g = sample::regular(n, 3, &mut ctx.rng)?;
                if is_k_connected(&g, 3) {
                    break g;
                }
            }
        } else {
            let n = ctx.size(5)?;
            sample::k_connected(n, 4, &mut ctx.rng)?
        };
        let found = tree_with_connected_complement(&g);
        let shown = found.as_ref().map_or("none".to_string(), |t| format!("{:?}", g.edge_ids_of(t)));
        let params = json!({"n": g.vertex_count(), "m": g.edge_count()});
        ctx.check(found.is_some(), "tree with connected complement", params, Some(&g), "a tree", shown);
    }
    Ok(())
}

/// `ceil(a / b)` for `b > 0`.
fn ceil_div(a: i64, b: i64) -> i64 {
    a.div_euclid(b) + i64::from(a.rem_euclid(b) != 0)
}

/// Random (2k-1)-regular graph on an even number of vertices.
fn below_threshold(ctx: &mut Ctx, k: usize) -> Result<MultiGraph> {
    let n = ctx.size((2 * k).max(4) + 1)? & !1;
    sample::regular(n, 2 * k - 1, &mut ctx.rng)
}

fn degree_rigidity(ctx: &mut Ctx) -> Result<()> {
    let params = [cp(1, 0), cp(2, 0), cp(2, -1)];
    for i in 0..ctx.samples {
        let p = params[i % params.len()];
        let (k, l) = (p.k as i64, p.l);
        if ctx.mutant {
            let g = below_threshold(ctx, p.k)?;
            ctx.check(is_rigid(&g, p), "rigid", kl(p), Some(&g), true, false);
            continue;
        }
        // Smallest n with room for the redundancy degree bound.
        let lo = (2..).find(|&n: &i64| ceil_div(2 * k * n - 2 * l + 2, n) < n).expect("some n fits") as usize;
        let n = ctx.size(lo)?;
        let ni = n as i64;
        let rigid_deg = ceil_div(2 * k * ni - 2 * l, ni) as usize;
        let red_deg = ceil_div(2 * k * ni - 2 * l + 2, ni) as usize;
        let g = sample::min_degree(n, rigid_deg, &mut ctx.rng)?;
        let ok = is_rigid(&g, p);
        ctx.check(ok, "rigid", json!({"k": k, "l": l, "min_degree": rigid_deg}), Some(&g), true, ok);
        let g = sample::min_degree(n, red_deg, &mut ctx.rng)?;
        let ok = is_redundant(&g, p);
        ctx.check(ok, "redundant", json!({"k": k, "l": l, "min_degree": red_deg}), Some(&g), true, ok);
    }
    Ok(())
}

fn edge_connected_redundancy(ctx: &mut Ctx) -> Result<()> {
    let params = [cp(1, 1), cp(2, 2), cp(2, 1)];
    for i in 0..ctx.samples {
        let p = params[i % params.len()];
        let g = if ctx.mutant {
            below_threshold(ctx, p.k)?
        } else {
            let n = ctx.size(2 * p.k + 1)?;
            sample::k_edge_connected(n, 2 * p.k, &mut ctx.rng)?
        };
        let ok = is_redundant(&g, p);
        ctx.check(ok, "redundant", kl(p), Some(&g), true, ok);
    }
    Ok(())
}

fn vertex_connected_redundancy(ctx: &mut Ctx) -> Result<()> {
    // (3,5) needs 10-connected graphs, so at least 11 vertices.
    let params: Vec<CountParams> = [cp(2, 3), cp(3, 4), cp(3, 5)]
        .into_iter()
        .filter(|p| 2 * (p.l as usize) < ctx.max_n)
        .collect();
    if params.is_empty() {
        return Err(Error::Usage("--max-n must be at least 7".into()));
    }
    for i in 0..ctx.samples {
        let p = params[i % params.len()];
        let need = 2 * p.l as usize;
        let g = if ctx.mutant {
            // (2l-1)-connected and not even rigid.
            let ly = Family::LovaszYemini { k: p.k, l: p.l as usize }.build()?;
            sample::shuffled(&ly, &mut ctx.rng)
        } else {
            let n = ctx.size(need + 1)?;
            sample::k_connected(n, need, &mut ctx.rng)?
        };
        let ok = is_redundant(&g, p);
        let shown = if ctx.mutant { None } else { Some(&g) };
        ctx.check(ok, "redundant", kl(p), shown, true, ok);
    }
    Ok(())
}

fn union_identity(ctx: &mut Ctx) -> Result<()> {
    let cases = [((2usize, 3i64), 2usize), ((1, 1), 3)];
    for i in 0..ctx.samples {
        let ((k, l), t) = cases[i % cases.len()];
        let p = cp(k, l);
        let n = ctx.size(2)?;
        let g = sample::multigraph(n, 2, &mut ctx.rng);
        let copies = if ctx.mutant { t - 1 } else { t };
        let oracle = CountMatroid::new(&g, p);
        let refs: Vec<&dyn RankOracle> = vec![&oracle; copies];
        let all = g.all_edges();
        let scaled = count::rank(&g, p.scaled(t), &all);
        let union = union_rank(&refs, &all);
        ctx.check(scaled == union, "scaled rank vs union rank", json!({"k": k, "l": l, "t": t}), Some(&g), scaled, union);
    }
    Ok(())
}

fn cofactor_rank(ctx: &mut Ctx) -> Result<()> {
    let shift = usize::from(ctx.mutant);
    for n in 6..=ctx.max_n.max(6) {
        let g = Family::Complete(n).build()?;
        let all = g.all_edges();
        let (r, cert) = cofactor::r1(&g, &all)?;
        let want = 3 * n - 6 + shift;
        ctx.check(r == want, &format!("r_1(K_{n})"), json!({"t": 1}), None, want, r);
        let verified = cert.verify(&g, &all);
        ctx.check(verified.is_ok(), "certificate", json!({"t": 1, "n": n}), None, "valid", format!("{verified:?}"));
        let closed = kn_rank(n, 1)?;
        ctx.check(closed == r, "closed form", json!({"t": 1, "n": n}), None, r, closed);
    }
    for (n, t) in [(12usize, 2usize), (18, 3)] {
        let pack = cofactor_packing(n, t)?;
        let g = &pack.graph;
        let params = json!({"n": n, "t": t});
        for (i, (part, block)) in pack.parts.iter().zip(&pack.blocks).enumerate() {
            let order: Vec<usize> = (0..n).filter(|v| !block.contains(v)).chain(block[..2].iter().copied()).collect();
            let bound = peel_lower_bound(g, part, 1, &order)?;
            let want = 3 * n - 6 + shift;
            ctx.check(bound == want, &format!("part {i} peel rank"), params.clone(), None, want, bound);
            let kappa = vertex_connectivity(&g.edge_subgraph(part))?;
            ctx.check(kappa >= 3, &format!("part {i} connectivity"), params.clone(), None, ">= 3", kappa);
        }
        let disjoint = pack.parts.iter().enumerate().all(|(i, a)| pack.parts[i + 1..].iter().all(|b| a.is_disjoint(b)));
        ctx.check(disjoint, "parts disjoint", params, None, true, disjoint);
    }
    let k12 = Family::Complete(12).build()?;
    let parts = extract_three_connected(&k12, 2, ctx.seed)?;
    for (i, part) in parts.iter().enumerate() {
        let want = 30 + shift;
        let bound = peel_lower_bound(&k12, &part.edges, 1, &part.peel)?;
        let ok = bound == want && part.connectivity >= 3;
        ctx.check(ok, &format!("extracted part {i}"), json!({"n": 12, "t": 2}), None, format!("rank {want}, connectivity >= 3"), format!("rank {bound}, connectivity {}", part.connectivity));
    }
    Ok(())
}

fn family_json(f: FamilyTag) -> Value {
    match f {
        FamilyTag::Count(p) => json!({"count": {"k": p.k, "l": p.l}}),
        FamilyTag::Cofactor { t } => json!({"cofactor": {"t": t}}),
    }
}

fn sorted_degrees(g: &MultiGraph) -> Vec<usize> {
    let mut d: Vec<usize> = g.degrees().into_iter().filter(|&d| d > 0).collect();
    d.sort_unstable();
    d
}

/// Reconstructs from the oracle alone, then compares with the hidden graph.
fn roundtrip(ctx: &mut Ctx, g: &MultiGraph, family: FamilyTag) -> Result<()> {
    let m = labeled_from_graph(g, family)?;
    let params = family_json(family);
    let out = match reconstruct(&m, StarSearch::default()) {
        Ok(out) => out,
        Err(e) => {
            ctx.check(false, "roundtrip", params, Some(g), "a graph", e);
            return Ok(());
        }
    };
    let (want, got) = (sorted_degrees(g), sorted_degrees(&out));
    if want != got {
        ctx.check(false, "degree sequence", params, Some(g), format!("{want:?}"), format!("{got:?}"));
        return Ok(());
    }
    let iso = isomorphic(g, &out).is_some();
    let agrees = agrees_on_samples(&m.oracle, &out, family, ctx.seed)?;
    let ok = iso && agrees;
    ctx.check(ok, "roundtrip", params, Some(g), "isomorphic, same rank on samples", format!("isomorphic {iso}, same rank on samples {agrees}"));
    Ok(())
}

/// Inputs that must be refused. The mutant expects a graph back.
fn refusal(ctx: &mut Ctx, case: &str, g: &MultiGraph, family: FamilyTag) -> Result<()> {
    let m = labeled_from_graph(g, family)?;
    let got = reconstruct(&m, StarSearch::default());
    let refused = got.is_err();
    let (ok, expected) = if ctx.mutant { (!refused, "a graph") } else { (refused, "refusal") };
    let actual = match got {
        Ok(h) => format!("graph with {} vertices", h.vertex_count()),
        Err(e) => e.to_string(),
    };
    ctx.check(ok, case, family_json(family), Some(g), expected, actual);
    Ok(())
}

fn three_connected(lo: usize, hi: usize) -> Vec<MultiGraph> {
    (lo..=hi).flat_map(simple_graphs).filter(|g| is_k_connected(g, 3)).collect()
}

fn reconstruction(ctx: &mut Ctx) -> Result<()> {
    let graphic = FamilyTag::Count(cp(1, 1));
    let bicircular = FamilyTag::Count(cp(1, 0));
    let rigidity = FamilyTag::Count(cp(2, 3));
    let cof = FamilyTag::Cofactor { t: 1 };
    for g in three_connected(4, ctx.max_n) {
        roundtrip(ctx, &g, graphic)?;
    }
    let mut bic = three_connected(5, ctx.max_n);
    for n in 5..=7 {
        let w = Family::Wheel(n).build()?;
        if !bic.iter().any(|g| isomorphic(g, &w).is_some()) {
            bic.push(w);
        }
    }
    for g in bic {
        roundtrip(ctx, &g, bicircular)?;
    }
    for n in [8, 9] {
        roundtrip(ctx, &Family::Complete(n).build()?, rigidity)?;
    }
    for n in [6, 7] {
        roundtrip(ctx, &Family::Complete(n).build()?, cof)?;
    }
    // Cycle and path have the same free bicircular matroid.
    refusal(ctx, "bicircular cycle", &Family::Cycle(6).build()?, bicircular)?;
    refusal(ctx, "bicircular path", &Family::Path(7).build()?, bicircular)?;
    let c4 = Family::Cycle(4).build()?;
    refusal(ctx, "disjoint cycles", &c4.disjoint_union(&c4), graphic)?;
    let k4 = Family::Complete(4).build()?;
    refusal(ctx, "disjoint K_4", &k4.disjoint_union(&k4), rigidity)?;
    let k6 = Family::Complete(6).build()?;
    refusal(ctx, "disjoint K_6", &k6.disjoint_union(&k6), cof)?;
    Ok(())
}

/// Edge classes of the connected components of the graph.
fn graph_components(g: &MultiGraph) -> Vec<EdgeSet> {
    let all = g.all_edges();
    let mut out: Vec<EdgeSet> = g
        .components_of(&all)
        .iter()
        .map(|vs| g.induced_edges(vs, &all))
        .filter(|c| !c.is_empty())
        .collect();
    out.sort_by_key(|c| c.first());
    out
}

fn matroid_core(ctx: &mut Ctx) -> Result<()> {
    for (k, l) in COUNT_PARAMS {
        let p = cp(k, l);
        for n in 2..=ctx.max_n {
            for g in simple_graphs(n) {
                let o = CountMatroid::new(&g, p);
                let mut fast = components(&o);
                fast.sort_by_key(|c| c.first());
                let brute = if ctx.mutant { graph_components(&g) } else { separator_components(&o)? };
                let show = |cs: &[EdgeSet]| format!("{:?}", cs.iter().map(|c| g.edge_ids_of(c)).collect::<Vec<_>>());
                ctx.check(fast == brute, "components", kl(p), Some(&g), show(&brute), show(&fast));
                if g.edge_count() == 0 {
                    continue;
                }
                let (v, sep) = vertical_connectivity(&o)?;
                if let Some(s) = sep {
                    let ok = s.order == v && s.verify(&o);
                    ctx.check(ok, "separation witness", kl(p), Some(&g), v, s.order);
                }
                if g.edge_count() >= 2 && o.full_rank() >= 2 {
                    let single = fast.len() == 1;
                    ctx.check((v >= 2) == single, "connected iff vertically 2-connected", kl(p), Some(&g), single, v);
                }
            }
        }
    }
    Ok(())
}
