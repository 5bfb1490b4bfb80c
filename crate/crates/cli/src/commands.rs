use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use anyhow::{bail, ensure, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use weilmono_core::acceptance;
use weilmono_core::filtration::{check_monodromy_properties, monodromy_filtration, mw_check, weight_filtration};
use weilmono_core::homalg::{actionphi_split, ext_dims, is_splittable, scindage_criterion};
use weilmono_core::semistable::{
    apartment, apartment_check, bn_betti, e1_page, e2_page, mumford_from_graph, nnonnul_check, E1Page, E2Page,
    Multigraph, NnonnulReport,
};
use weilmono_core::wd::{decompose, ext_ladder_to_wd, is_isomorphic, make_tau, SubsetI};
use weilmono_core::{QMonomial, SemistableConfig, WDRep};

use crate::codec::*;
use crate::render::{Format, Report};

#[derive(Debug, Parser)]
#[command(name = "weilmono", version, about = "Exact Weil–Deligne, monodromy and weight computations")]
pub struct Cli {
    /// Output format; both carry the same values.
    #[arg(long, value_enum, default_value = "json", global = true)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Weil–Deligne representations.
    #[command(subcommand)]
    Wd(WdCmd),
    /// Monodromy and weight filtrations.
    #[command(subcommand)]
    Filt(FiltCmd),
    /// Ext groups and splitting of complexes.
    #[command(subcommand)]
    Homalg(HomalgCmd),
    /// Weight spectral sequences of semistable configurations.
    #[command(subcommand)]
    Rz(RzCmd),
    /// The apartment modulo the coroot lattice.
    #[command(subcommand)]
    Building(BuildingCmd),
    /// Scripted test batteries.
    #[command(subcommand)]
    Suite(SuiteCmd),
}

#[derive(Debug, Subcommand)]
pub enum WdCmd {
    /// `τ_I` and its decomposition.
    Tau {
        #[arg(long)]
        d: u32,
        /// Comma-separated members of `I ⊆ {1, …, d-1}`.
        #[arg(long = "I", default_value = "")]
        i: String,
    },
    /// The Ext-ladder module for `I`, checked against `τ_I ⊗ |.|^{d-1}`.
    Ladder {
        #[arg(long)]
        d: u32,
        #[arg(long = "I", default_value = "")]
        i: String,
    },
    /// Apply an operation to one or two representations.
    Op {
        #[arg(long, value_enum)]
        op: WdOp,
        /// One file (dual, twist) or two (tensor, sum).
        #[arg(long = "in", num_args = 1..=2, required = true)]
        inputs: Vec<PathBuf>,
        /// Twisting tag `c,m` for `--op twist` (or pass a tag file as the
        /// second input).
        #[arg(long, allow_hyphen_values = true)]
        tag: Option<String>,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum WdOp {
    Tensor,
    Dual,
    Twist,
    Sum,
}

#[derive(Debug, Subcommand)]
pub enum FiltCmd {
    /// Monodromy filtration of `N`.
    Monodromy {
        #[arg(long = "in")]
        input: PathBuf,
        /// Include bases of every filtration step.
        #[arg(long)]
        bases: bool,
    },
    /// Monodromy-weight test in degree `j`.
    Mw {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        j: i64,
    },
}

#[derive(Debug, Subcommand)]
pub enum HomalgCmd {
    /// `dim Ext^k(M, N)` for `k ≤ kmax`.
    Ext {
        #[arg(long)]
        algebra: PathBuf,
        #[arg(long)]
        from: PathBuf,
        #[arg(long)]
        to: PathBuf,
        #[arg(long)]
        kmax: usize,
    },
    /// Splitting criterion, splitting search and, with `--phi`, the
    /// diagonalization of an endomorphism.
    Split {
        #[arg(long)]
        complex: PathBuf,
        #[arg(long, requires = "polys")]
        phi: Option<PathBuf>,
        #[arg(long, requires = "phi")]
        polys: Option<PathBuf>,
    },
}

#[derive(Debug, Subcommand)]
pub enum RzCmd {
    /// First page (and the second where it is computable).
    E1 {
        #[arg(long)]
        config: PathBuf,
    },
    /// Nonvanishing of `N^n` and its equivalent forms.
    Nnonnul {
        #[arg(long)]
        config: PathBuf,
    },
    /// Betti data of the iterated blow-up `B^n`.
    Bn {
        #[arg(long)]
        n: usize,
    },
    /// Mumford curve with the given dual graph.
    Graph {
        /// Edges as `a-b` pairs, comma separated.
        #[arg(long)]
        edges: String,
        /// Number of vertices (default: one more than the largest used).
        #[arg(long)]
        vertices: Option<usize>,
    },
}

#[derive(Debug, Subcommand)]
pub enum BuildingCmd {
    Apartment {
        #[arg(long)]
        d: usize,
        /// Run the kernel and pairing check.
        #[arg(long)]
        check: bool,
    },
}

#[derive(Debug, Subcommand)]
pub enum SuiteCmd {
    /// Run all acceptance criteria.
    Acceptance {
        /// Restrict to these criterion numbers.
        #[arg(long, value_delimiter = ',')]
        only: Vec<u8>,
    },
}

fn read_json(path: &Path) -> Result<Value> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("{} is not valid JSON", path.display()))
}

fn read<T: for<'de> serde::Deserialize<'de>>(path: &Path, what: &str) -> Result<T> {
    from_value(read_json(path)?, &format!("{what} {}", path.display()))
}

fn read_rep(path: &Path) -> Result<WDRep> {
    read::<WdRepJson>(path, "representation")?.decode().with_context(|| format!("representation {}", path.display()))
}

fn read_config(path: &Path) -> Result<SemistableConfig> {
    read::<ConfigJson>(path, "configuration")?.decode().with_context(|| format!("configuration {}", path.display()))
}

fn parse_tag(s: &str) -> Result<QMonomial> {
    let (c, m) = s.split_once(',').with_context(|| format!("tag must be \"c,m\", got {s:?}"))?;
    let tag = TagJson { c: ScalarJson::Text(c.trim().into()), m: m.trim().parse().with_context(|| format!("tag exponent {m:?}"))? };
    tag.decode()
}

fn rep_value(rep: &WDRep) -> Value {
    json!({
        "rep": to_value(&WdRepJson::encode(rep)),
        "decomposition": decompose(rep).iter().map(|s| to_value(&SummandJson::encode(s))).collect::<Vec<_>>(),
    })
}

fn e1_value(e1: &E1Page) -> Value {
    let entries: Vec<Value> = e1
        .entries
        .values()
        .map(|e| {
            json!({
                "p": e.p, "s": e.s, "weight": e.weight, "dim": to_value(&QPolyJson::encode(&e.dim)),
                "pieces": e.pieces.iter().map(|pc| json!({"m": pc.m, "degree": pc.degree, "twist": pc.twist})).collect::<Vec<_>>(),
            })
        })
        .collect();
    Value::from(entries)
}

fn e2_value(e2: &E2Page) -> Value {
    let entries: Vec<Value> = e2.entries.iter().map(|(&(p, s), &dim)| json!({"p": p, "s": s, "dim": dim})).collect();
    let abutment = e2.abutment().map(|a| {
        a.iter()
            .map(|(k, ws)| json!({"degree": k, "weights": ws.iter().map(|(w, d)| json!({"weight": w, "dim": d})).collect::<Vec<_>>()}))
            .collect::<Vec<_>>()
    });
    json!({"complete": e2.complete, "entries": entries, "abutment": abutment})
}

fn nnonnul_value(r: &NnonnulReport) -> Value {
    json!({
        "ker_dim": r.ker_dim, "grw_top_dim": r.grw_top_dim, "n_power_rank": r.n_power_rank,
        "n_power_nonzero": r.n_power_nonzero, "equivalences_ok": r.equivalences_ok,
    })
}

fn parse_edges(s: &str) -> Result<Vec<(usize, usize)>> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| {
            let (a, b) = t.split_once('-').with_context(|| format!("edge must be \"a-b\", got {t:?}"))?;
            Ok((a.trim().parse().with_context(|| format!("vertex {a:?}"))?, b.trim().parse().with_context(|| format!("vertex {b:?}"))?))
        })
        .collect()
}

pub fn run(cli: &Cli, argv: Vec<String>) -> Result<Report> {
    let r = |v: Value| Report::new(argv.clone(), v);
    Ok(match &cli.command {
        Command::Wd(WdCmd::Tau { d, i }) => {
            let set = SubsetI::parse(*d, i)?;
            let rep = make_tau(&set);
            let monod = rep.check_monod();
            let mut v = rep_value(&rep);
            v["I"] = json!(set.members());
            v["d"] = json!(d);
            r(v).check("monod", monod.is_ok())
        }
        Command::Wd(WdCmd::Ladder { d, i }) => {
            let set = SubsetI::parse(*d, i)?;
            let ladder = ext_ladder_to_wd(&set)?;
            let target = make_tau(&set).twist(&QMonomial::norm_power(2 * (*d as i64 - 1)));
            let iso = is_isomorphic(&ladder, &target);
            let mut v = rep_value(&ladder);
            v["target"] = to_value(&WdRepJson::encode(&target));
            r(v).check("isomorphic", iso)
        }
        Command::Wd(WdCmd::Op { op, inputs, tag }) => {
            let a = read_rep(&inputs[0])?;
            let second = |what: &str| -> Result<WDRep> {
                ensure!(inputs.len() == 2, "--op {what} needs two inputs");
                read_rep(&inputs[1])
            };
            let out = match op {
                WdOp::Dual => {
                    ensure!(inputs.len() == 1, "--op dual takes one input");
                    a.dual()
                }
                WdOp::Tensor => a.tensor(&second("tensor")?),
                WdOp::Sum => a.direct_sum(&second("sum")?),
                WdOp::Twist => {
                    let t = match (tag, inputs.get(1)) {
                        (Some(s), None) => parse_tag(s)?,
                        (None, Some(p)) => read::<TagJson>(p, "tag")?.decode()?,
                        _ => bail!("--op twist needs exactly one of --tag and a second input"),
                    };
                    a.twist(&t)
                }
            };
            r(rep_value(&out))
        }
        Command::Filt(FiltCmd::Monodromy { input, bases }) => {
            let rep = read_rep(input)?;
            let m = monodromy_filtration(rep.n())?;
            let props = check_monodromy_properties(rep.n(), &m, 0);
            r(json!({"filtration": to_value(&FiltrationJson::encode(&m, *bases))}))
                .check("lowers_by_two", props.lowers_by_two)
                .check("hard_lefschetz", props.hard_lefschetz)
        }
        Command::Filt(FiltCmd::Mw { input, j }) => {
            let rep = read_rep(input)?;
            let report = mw_check(&rep, *j)?;
            let w = weight_filtration(&rep)?;
            let m = monodromy_filtration(rep.n())?;
            r(json!({
                "j": j, "holds": report.holds, "via_equality": report.via_equality, "via_iso": report.via_iso,
                "weight": to_value(&FiltrationJson::encode(&w, false)),
                "monodromy": to_value(&FiltrationJson::encode(&m, false)),
            }))
            .check("forms_agree", report.via_equality == report.via_iso)
        }
        Command::Homalg(HomalgCmd::Ext { algebra, from, to, kmax }) => {
            let alg = read::<AlgebraJson>(algebra, "algebra")?.decode()?;
            let m = read::<ModuleJson>(from, "module")?.decode(&alg).context("--from module")?;
            let n = read::<ModuleJson>(to, "module")?.decode(&alg).context("--to module")?;
            r(json!({"dims": ext_dims(&m, &n, *kmax)?}))
        }
        Command::Homalg(HomalgCmd::Split { complex, phi, polys }) => {
            let x = read::<ComplexJson>(complex, "complex")?.decode()?;
            let crit = scindage_criterion(&x)?;
            let split = is_splittable(&x)?;
            let mut v = json!({
                "criterion": crit,
                "splittable": split.splittable,
                "obstruction_degree": split.obstruction_degree,
                "witness": split.witness.as_ref().map(|w| to_value(&encode_chain_map(w))),
            });
            let mut report_checks = vec![("criterion_implies_splittable", !crit || split.splittable)];
            if let (Some(phi), Some(polys)) = (phi, polys) {
                let f = decode_chain_map(&read(phi, "chain map")?, &x)?;
                let pj: BTreeMap<String, PolyJson> = read(polys, "polynomials")?;
                let ps = pj
                    .iter()
                    .map(|(k, p)| Ok((k.parse::<i64>().with_context(|| format!("degree key {k:?}"))?, decode_poly(p, x.field())?)))
                    .collect::<Result<BTreeMap<_, _>>>()?;
                let a = actionphi_split(&x, &f, &ps)?;
                v["actionphi"] = json!({
                    "annihilation": a.annihilation,
                    "homotopy": a.homotopy.iter().map(ScalarJson::encode).map(|s| to_value(&s)).collect::<Vec<_>>(),
                    "comaximal": a.comaximal,
                    "splitting": a.splitting.as_ref().map(|s| json!({"alpha": to_value(&encode_chain_map(&s.alpha)), "unique": s.unique})),
                });
                report_checks.push(("annihilation", a.annihilation));
            }
            report_checks.into_iter().fold(r(v), |rep, (k, ok)| rep.check(k, ok))
        }
        Command::Rz(RzCmd::E1 { config }) => {
            let cfg = read_config(config)?;
            let e2 = if cfg.n() >= 1 { Some(e2_page(&cfg)?) } else { None };
            r(json!({"n": cfg.n(), "e1": e1_value(&e1_page(&cfg)), "e2": e2.as_ref().map(e2_value)}))
        }
        Command::Rz(RzCmd::Nnonnul { config }) => {
            let rep = nnonnul_check(&read_config(config)?)?;
            r(nnonnul_value(&rep)).check("equivalences", rep.equivalences_ok)
        }
        Command::Rz(RzCmd::Bn { n }) => r(to_value(&BettiJson::encode(&bn_betti(*n)))),
        Command::Rz(RzCmd::Graph { edges, vertices }) => {
            let edges = parse_edges(edges)?;
            let used = edges.iter().map(|&(a, b)| a.max(b) + 1).max().unwrap_or(1);
            let g = Multigraph::new(vertices.unwrap_or(used), edges)?;
            let cfg = mumford_from_graph(&g)?;
            let mut v = json!({"vertices": g.vertices, "genus": g.first_betti(), "e1": e1_value(&e1_page(&cfg))});
            let mut rep = r(Value::Null);
            if !g.edges.is_empty() {
                let nn = nnonnul_check(&cfg)?;
                v["e2"] = e2_value(&e2_page(&cfg)?);
                v["nnonnul"] = nnonnul_value(&nn);
                rep = rep.check("equivalences", nn.equivalences_ok).check("monodromy_iff_cycle", nn.n_power_nonzero == (g.first_betti() > 0));
            }
            rep.result = v;
            rep
        }
        Command::Building(BuildingCmd::Apartment { d, check }) => {
            if *check {
                let c = apartment_check(*d)?;
                let fact: usize = (1..=*d).product();
                r(json!({"in_kernel": c.in_kernel, "self_pairing": c.self_pairing}))
                    .check("in_kernel", c.in_kernel)
                    .check("self_pairing_is_factorial", c.self_pairing == fact as i64)
                    .check("alcoves_is_factorial", c.alcoves == fact)
                    .check("bipartite", c.bipartite)
                    .check("parity_is_sign", c.parity_is_sign)
            } else {
                let ap = apartment(*d)?;
                r(json!({"d": d, "alcoves": ap.alcove_count(), "faces": (1..=*d).map(|m| ap.face_count(m)).collect::<Vec<_>>()}))
            }
        }
        Command::Suite(SuiteCmd::Acceptance { only }) => {
            let outcomes: Vec<_> =
                acceptance::criteria().iter().filter(|c| only.is_empty() || only.contains(&c.id)).map(|c| c.run()).collect();
            for o in &outcomes {
                eprintln!("{}", o.line());
            }
            let rows: Vec<Value> = outcomes
                .iter()
                .map(|o| {
                    json!({"id": o.id, "name": o.name, "passed": o.passed, "elapsed_ms": o.elapsed.as_millis() as u64,
                           "limit_s": o.limit.as_secs(), "detail": o.detail})
                })
                .collect();
            let passed = outcomes.iter().filter(|o| o.passed).count();
            let rep = r(json!({"criteria": rows, "passed": passed, "total": outcomes.len()}));
            outcomes.iter().fold(rep, |rep, o| rep.check(&format!("criterion_{}", o.id), o.passed))
        }
    })
}
