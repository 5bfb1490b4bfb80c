//! JSON wire formats. Scalars are canonical fraction strings (`"3"`,
//! `"-1/2"`); matrices are row lists whose shape comes from context.

use std::collections::BTreeMap;
use std::sync::Arc;

use anyhow::{bail, ensure, Context, Result};
use serde::{Deserialize, Serialize};
use serde_json::Value;
use weilmono_core::exactnum::{format_rational, parse_rational, Poly, Scalar};
use weilmono_core::filtration::Filtration;
use weilmono_core::homalg::{Arrow, ChainMap, ModMap};
use weilmono_core::semistable::{BettiPoly, QPoly, StratumCell};
use weilmono_core::wd::IndecompSummand;
use weilmono_core::{AModule, BoundedComplex, FieldSpec, Matrix, PresentedAlgebra, QMonomial, SemistableConfig, Subspace, WDRep};

/// A rational written as a string, or as a bare JSON integer on input.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ScalarJson {
    Text(String),
    Int(i64),
}

impl ScalarJson {
    pub fn encode(x: &Scalar) -> Self {
        ScalarJson::Text(format_rational(x))
    }

    pub fn decode(&self, field: FieldSpec) -> Result<Scalar> {
        let x = match self {
            ScalarJson::Text(s) => parse_rational(s)?,
            ScalarJson::Int(n) => Scalar::from_integer((*n).into()),
        };
        Ok(field.try_reduce(x)?)
    }
}

pub type MatrixJson = Vec<Vec<ScalarJson>>;

pub fn encode_matrix(m: &Matrix) -> MatrixJson {
    m.to_rows().iter().map(|r| r.iter().map(ScalarJson::encode).collect()).collect()
}

/// Rows of length `cols`; a `rows × 0` matrix may be written as `[]`.
pub fn decode_matrix(rows_json: &MatrixJson, field: FieldSpec, rows: usize, cols: usize) -> Result<Matrix> {
    if cols == 0 && rows_json.is_empty() {
        return Ok(Matrix::zeros(field, rows, 0));
    }
    ensure!(rows_json.len() == rows, "expected {rows} rows, got {}", rows_json.len());
    let data = rows_json
        .iter()
        .map(|r| {
            ensure!(r.len() == cols, "expected rows of length {cols}, got {}", r.len());
            r.iter().map(|x| x.decode(field)).collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Matrix::from_rows_with_cols(field, data, cols)?)
}

pub fn encode_field(f: FieldSpec) -> String {
    match f {
        FieldSpec::Rationals => "Q".into(),
        FieldSpec::Prime(p) => format!("F_{p}"),
    }
}

pub fn decode_field(s: &str) -> Result<FieldSpec> {
    if s == "Q" {
        return Ok(FieldSpec::Rationals);
    }
    let p = s
        .strip_prefix("F_")
        .and_then(|p| p.parse::<u64>().ok())
        .with_context(|| format!("field must be \"Q\" or \"F_p\", got {s:?}"))?;
    Ok(FieldSpec::prime(p)?)
}

fn default_field() -> String {
    "Q".into()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TagJson {
    pub c: ScalarJson,
    pub m: i64,
}

impl TagJson {
    pub fn encode(t: &QMonomial) -> Self {
        TagJson { c: ScalarJson::encode(t.c()), m: t.m() }
    }

    pub fn decode(&self) -> Result<QMonomial> {
        Ok(QMonomial::new(self.c.decode(FieldSpec::Rationals)?, self.m)?)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BlockJson {
    pub c: ScalarJson,
    pub m: i64,
    pub dim: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NBlockJson {
    pub from_tag: TagJson,
    pub matrix: MatrixJson,
}

/// Eigenspace blocks and the nonzero blocks of `N`, keyed by source tag.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WdRepJson {
    pub blocks: Vec<BlockJson>,
    #[serde(rename = "N", default)]
    pub n: Vec<NBlockJson>,
}

impl WdRepJson {
    pub fn encode(rep: &WDRep) -> Self {
        let blocks = rep.blocks().iter().map(|(t, &dim)| BlockJson { c: ScalarJson::encode(t.c()), m: t.m(), dim }).collect();
        let n = rep
            .n_blocks()
            .iter()
            .map(|(t, m)| NBlockJson { from_tag: TagJson::encode(t), matrix: encode_matrix(m) })
            .collect();
        WdRepJson { blocks, n }
    }

    pub fn decode(&self) -> Result<WDRep> {
        let mut blocks = BTreeMap::new();
        for b in &self.blocks {
            let t = QMonomial::new(b.c.decode(FieldSpec::Rationals)?, b.m)?;
            ensure!(blocks.insert(t.clone(), b.dim).is_none(), "tag {t} listed twice");
        }
        let mut n_blocks = BTreeMap::new();
        for nb in &self.n {
            let src = nb.from_tag.decode()?;
            let cols = blocks.get(&src).copied().unwrap_or(0);
            let rows = blocks.get(&src.shift_q(-1)).copied().unwrap_or(0);
            let m = decode_matrix(&nb.matrix, FieldSpec::Rationals, rows, cols)
                .with_context(|| format!("N block from tag {src}"))?;
            ensure!(n_blocks.insert(src.clone(), m).is_none(), "N block from {src} listed twice");
        }
        Ok(WDRep::from_blocks(&blocks, &n_blocks)?)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SummandJson {
    pub start_tag: TagJson,
    pub length: usize,
}

impl SummandJson {
    pub fn encode(s: &IndecompSummand) -> Self {
        SummandJson { start_tag: TagJson::encode(&s.start_tag), length: s.length }
    }

    pub fn decode(&self) -> Result<IndecompSummand> {
        ensure!(self.length > 0, "summand length must be positive");
        Ok(IndecompSummand { start_tag: self.start_tag.decode()?, length: self.length })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JumpJson {
    pub k: i64,
    pub dim: usize,
}

/// Jumps carry `dim Gr_k`; `spaces` holds a basis (as rows) of each `F_k`
/// from `lo` upwards.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FiltrationJson {
    #[serde(default = "default_field")]
    pub field: String,
    pub ambient: usize,
    pub jumps: Vec<JumpJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lo: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub spaces: Option<Vec<MatrixJson>>,
}

impl FiltrationJson {
    pub fn encode(f: &Filtration, with_bases: bool) -> Self {
        let jumps = f.jumps().into_iter().map(|(k, dim)| JumpJson { k, dim }).collect();
        let (lo, spaces) = if with_bases {
            let spaces = (f.min_index()..=f.max_index())
                .map(|k| f.get(k).basis().iter().map(|v| v.iter().map(ScalarJson::encode).collect()).collect())
                .collect();
            (Some(f.min_index()), Some(spaces))
        } else {
            (None, None)
        };
        FiltrationJson { field: encode_field(f.field()), ambient: f.ambient(), jumps, lo, spaces }
    }

    pub fn decode(&self) -> Result<Filtration> {
        let (Some(lo), Some(spaces)) = (self.lo, &self.spaces) else {
            bail!("a filtration needs \"lo\" and \"spaces\" to be reconstructed");
        };
        let field = decode_field(&self.field)?;
        let subs = spaces
            .iter()
            .map(|rows| {
                let m = decode_matrix(rows, field, rows.len(), self.ambient)?;
                Ok(Subspace::span(field, self.ambient, &m.to_rows()))
            })
            .collect::<Result<Vec<_>>>()?;
        let f = Filtration::new(field, self.ambient, lo, subs)?;
        let jumps: Vec<(i64, usize)> = self.jumps.iter().map(|j| (j.k, j.dim)).collect();
        ensure!(f.jumps() == jumps, "jumps {jumps:?} disagree with the given spaces");
        Ok(f)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArrowJson {
    pub name: String,
    pub source: usize,
    pub target: usize,
}

/// A quiver with monomial relations, or a named preset.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum AlgebraJson {
    Quiver(QuiverJson),
    Preset(PresetJson),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuiverJson {
    #[serde(default = "default_field")]
    pub field: String,
    pub vertices: usize,
    pub arrows: Vec<ArrowJson>,
    #[serde(default)]
    pub relations: Vec<Vec<usize>>,
    #[serde(default)]
    pub gl_dim: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PresetJson {
    #[serde(default = "default_field")]
    pub field: String,
    /// `"ladder"` (needs `d`), `"dual_numbers"` or `"semisimple"` (needs `d`).
    pub preset: String,
    #[serde(default)]
    pub d: Option<usize>,
}

impl AlgebraJson {
    pub fn encode(a: &PresentedAlgebra) -> Self {
        AlgebraJson::Quiver(QuiverJson {
            field: encode_field(a.field()),
            vertices: a.n_vertices(),
            arrows: a
                .arrows()
                .iter()
                .map(|x| ArrowJson { name: x.name.clone(), source: x.source, target: x.target })
                .collect(),
            relations: a.relations().to_vec(),
            gl_dim: a.gl_dim_bound(),
        })
    }

    pub fn decode(&self) -> Result<Arc<PresentedAlgebra>> {
        let alg = match self {
            AlgebraJson::Quiver(q) => PresentedAlgebra::new(
                decode_field(&q.field)?,
                q.vertices,
                q.arrows.iter().map(|a| Arrow { name: a.name.clone(), source: a.source, target: a.target }).collect(),
                q.relations.clone(),
                q.gl_dim,
            )?,
            AlgebraJson::Preset(p) => {
                let field = decode_field(&p.field)?;
                let need_d = || p.d.with_context(|| format!("preset {:?} needs \"d\"", p.preset));
                match p.preset.as_str() {
                    "ladder" => PresentedAlgebra::koszul_ladder(field, need_d()?)?,
                    "dual_numbers" => PresentedAlgebra::dual_numbers(field)?,
                    "semisimple" => PresentedAlgebra::semisimple(field, need_d()?)?,
                    other => bail!("unknown algebra preset {other:?}"),
                }
            }
        };
        Ok(Arc::new(alg))
    }
}

/// Dimension vector and one matrix per arrow (`dims[target] × dims[source]`).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleJson {
    pub dims: Vec<usize>,
    #[serde(default)]
    pub maps: Vec<MatrixJson>,
}

impl ModuleJson {
    pub fn encode(m: &AModule) -> Self {
        ModuleJson { dims: m.dims().to_vec(), maps: m.maps().iter().map(encode_matrix).collect() }
    }

    pub fn decode(&self, alg: &Arc<PresentedAlgebra>) -> Result<AModule> {
        ensure!(self.dims.len() == alg.n_vertices(), "{} dimensions for {} vertices", self.dims.len(), alg.n_vertices());
        ensure!(self.maps.len() == alg.arrows().len(), "{} matrices for {} arrows", self.maps.len(), alg.arrows().len());
        let maps = alg
            .arrows()
            .iter()
            .zip(&self.maps)
            .map(|(a, m)| {
                decode_matrix(m, alg.field(), self.dims[a.target], self.dims[a.source])
                    .with_context(|| format!("arrow {}", a.name))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(AModule::new(alg.clone(), self.dims.clone(), maps)?)
    }
}

/// One matrix per vertex.
pub type ModMapJson = Vec<MatrixJson>;

pub fn encode_modmap(f: &ModMap) -> ModMapJson {
    f.comps.iter().map(encode_matrix).collect()
}

pub fn decode_modmap(j: &ModMapJson, src: &AModule, tgt: &AModule) -> Result<ModMap> {
    ensure!(j.len() == src.dims().len(), "{} components for {} vertices", j.len(), src.dims().len());
    let comps = j
        .iter()
        .enumerate()
        .map(|(v, m)| decode_matrix(m, src.field(), tgt.dim_at(v), src.dim_at(v)).with_context(|| format!("vertex {v}")))
        .collect::<Result<Vec<_>>>()?;
    let f = ModMap { comps };
    ensure!(f.is_hom(src, tgt), "map does not commute with the arrows");
    Ok(f)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexJson {
    pub algebra: AlgebraJson,
    pub lo: i64,
    pub terms: Vec<ModuleJson>,
    #[serde(default)]
    pub diffs: Vec<ModMapJson>,
}

impl ComplexJson {
    pub fn encode(x: &BoundedComplex) -> Self {
        let terms = x.terms().iter().map(ModuleJson::encode).collect();
        let diffs = (x.lo()..x.hi()).map(|k| encode_modmap(&x.diff(k))).collect();
        ComplexJson { algebra: AlgebraJson::encode(x.algebra()), lo: x.lo(), terms, diffs }
    }

    pub fn decode(&self) -> Result<BoundedComplex> {
        let alg = self.algebra.decode()?;
        let terms =
            self.terms.iter().enumerate().map(|(i, t)| t.decode(&alg).with_context(|| format!("term {i}"))).collect::<Result<Vec<_>>>()?;
        ensure!(self.diffs.len() + 1 == terms.len() || terms.is_empty(), "{} terms need {} differentials", terms.len(), terms.len().saturating_sub(1));
        let diffs = self
            .diffs
            .iter()
            .enumerate()
            .map(|(i, d)| decode_modmap(d, &terms[i], &terms[i + 1]).with_context(|| format!("differential {i}")))
            .collect::<Result<Vec<_>>>()?;
        Ok(BoundedComplex::new(alg, self.lo, terms, diffs)?)
    }
}

/// Degree-keyed components of a chain endomorphism.
pub type ChainMapJson = BTreeMap<String, ModMapJson>;

pub fn encode_chain_map(f: &ChainMap) -> ChainMapJson {
    f.iter().map(|(k, m)| (k.to_string(), encode_modmap(m))).collect()
}

pub fn decode_chain_map(j: &ChainMapJson, x: &BoundedComplex) -> Result<ChainMap> {
    j.iter()
        .map(|(k, m)| {
            let deg: i64 = k.parse().with_context(|| format!("degree key {k:?}"))?;
            let t = x.term(deg);
            Ok((deg, decode_modmap(m, &t, &t).with_context(|| format!("degree {deg}"))?))
        })
        .collect()
}

/// Coefficients lowest degree first.
pub type PolyJson = Vec<ScalarJson>;

pub fn encode_poly(p: &Poly) -> PolyJson {
    p.coeffs().iter().map(ScalarJson::encode).collect()
}

pub fn decode_poly(j: &PolyJson, field: FieldSpec) -> Result<Poly> {
    Ok(Poly::new(field, j.iter().map(|c| c.decode(field)).collect::<Result<_>>()?))
}

/// An integer when constant, otherwise coefficients lowest first.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum QPolyJson {
    Constant(i64),
    Coeffs(Vec<i64>),
}

impl QPolyJson {
    pub fn encode(p: &QPoly) -> Self {
        match p.as_constant() {
            Some(c) => QPolyJson::Constant(c),
            None => QPolyJson::Coeffs(p.coeffs().to_vec()),
        }
    }

    pub fn decode(&self) -> QPoly {
        match self {
            QPolyJson::Constant(c) => QPoly::constant(*c),
            QPolyJson::Coeffs(v) => QPoly::new(v.clone()),
        }
    }
}

/// Betti data `h^0, h^1, …, h^{2d}`, odd entries zero.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BettiJson {
    pub h: Vec<QPolyJson>,
}

impl BettiJson {
    pub fn encode(b: &BettiPoly) -> Self {
        BettiJson { h: b.full().iter().map(QPolyJson::encode).collect() }
    }

    pub fn decode(&self) -> Result<BettiPoly> {
        ensure!(self.h.len() % 2 == 1, "Betti data needs an odd number of entries h^0..h^2d");
        let mut even = Vec::new();
        for (k, p) in self.h.iter().enumerate() {
            let p = p.decode();
            if k % 2 == 1 {
                ensure!(p.is_zero(), "odd cohomology h^{k} must vanish for Tate-type strata");
            } else {
                even.push(p);
            }
        }
        Ok(BettiPoly { h: even })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CellJson {
    pub support: Vec<usize>,
    #[serde(default)]
    pub faces: Vec<(usize, i8)>,
    pub betti: BettiJson,
}

/// Either explicit cells (`cells[m-1]` = components of `Y^(m)`) or a
/// simplicial complex whose strata are projective spaces.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigJson {
    pub n: usize,
    pub components: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cells: Option<Vec<Vec<CellJson>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub simplices: Option<Vec<Vec<usize>>>,
}

impl ConfigJson {
    pub fn encode(cfg: &SemistableConfig) -> Self {
        let cells = cfg
            .levels()
            .iter()
            .map(|lvl| {
                lvl.iter()
                    .map(|c| CellJson { support: c.support.clone(), faces: c.faces.clone(), betti: BettiJson::encode(&c.betti) })
                    .collect()
            })
            .collect();
        ConfigJson { n: cfg.n(), components: cfg.components(), cells: Some(cells), simplices: None }
    }

    pub fn decode(&self) -> Result<SemistableConfig> {
        match (&self.cells, &self.simplices) {
            (Some(cells), None) => {
                let cells = cells
                    .iter()
                    .map(|lvl| {
                        lvl.iter()
                            .map(|c| {
                                Ok(StratumCell { support: c.support.clone(), faces: c.faces.clone(), betti: c.betti.decode()? })
                            })
                            .collect::<Result<Vec<_>>>()
                    })
                    .collect::<Result<Vec<_>>>()?;
                Ok(SemistableConfig::new(self.n, self.components, cells)?)
            }
            (None, Some(simplices)) => {
                let n = self.n;
                Ok(SemistableConfig::from_simplices(n, self.components, simplices, |s| {
                    BettiPoly::projective_space(n + 1 - s.len())
                })?)
            }
            _ => bail!("a configuration needs exactly one of \"cells\" and \"simplices\""),
        }
    }
}

pub fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("wire types serialize")
}

pub fn from_value<T: for<'de> Deserialize<'de>>(v: Value, what: &str) -> Result<T> {
    serde_json::from_value(v).with_context(|| format!("{what} does not match its schema"))
}
