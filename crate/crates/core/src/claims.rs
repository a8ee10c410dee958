//! Closed-form claims about Sombor indices and energies of transformed
//! regular graphs, each paired with a direct evaluator built only from graph
//! construction and the invariants in [`crate::invariants`].
//!
//! A claim is checked on an [`Instance`]: a graph spec, plus `m` and a shadow
//! convention when the claim depends on them. The formula side sees only the
//! parameters `(n, k, m)` and, for energy claims, the graph energy `ε(G)`; the
//! direct side builds the transformed graph and measures it. A mismatch is a
//! result, not an error.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::sync::OnceLock;

use rayon::prelude::*;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::constructors::{
    m_shadow, m_splitting, ConstructError, Family, GraphSpec, ShadowConvention,
};
use crate::eigen::DEFAULT_EIGEN_TOL;
use crate::format::{round_sig, REPORT_DIGITS};
use crate::graph::Graph;
use crate::invariants::{
    graph_energy, rank2_spectrum, reduced_matrix, sombor_energy, sombor_index, ReducedKind,
};
use crate::matrix::MatrixError;

/// Default relative tolerance for index and regularity claims.
pub const INDEX_TOL: f64 = 1e-9;
/// Default relative tolerance for energy claims.
pub const ENERGY_TOL: f64 = 1e-8;

const SQRT2: f64 = std::f64::consts::SQRT_2;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ClaimError {
    #[error("unknown claim {0:?}")]
    UnknownClaim(String),

    #[error("claim {0} needs the graph energy as auxiliary input")]
    MissingAux(String),

    #[error("claim {claim} on {instance}: {message}")]
    Instance {
        claim: String,
        instance: String,
        message: String,
    },

    #[error(transparent)]
    Construct(#[from] ConstructError),

    #[error(transparent)]
    Matrix(#[from] MatrixError),
}

/// Families with a dedicated row in the reference table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TableFamily {
    Cycle,
    Complete,
    Hypercube,
    CompleteBipartite,
}

impl TableFamily {
    const ALL: [TableFamily; 4] = [
        TableFamily::Cycle,
        TableFamily::Complete,
        TableFamily::Hypercube,
        TableFamily::CompleteBipartite,
    ];

    fn tag(self) -> &'static str {
        match self {
            TableFamily::Cycle => "Cn",
            TableFamily::Complete => "Kn",
            TableFamily::Hypercube => "Qn",
            TableFamily::CompleteBipartite => "Knn",
        }
    }

    fn symbol(self) -> &'static str {
        match self {
            TableFamily::Cycle => "C_n",
            TableFamily::Complete => "K_n",
            TableFamily::Hypercube => "Q_n",
            TableFamily::CompleteBipartite => "K_{n,n}",
        }
    }

    /// The row parameter `n` when `family` belongs to this row.
    fn parameter(self, family: &Family) -> Option<usize> {
        match (self, *family) {
            (TableFamily::Cycle, Family::Cycle(n)) => Some(n),
            (TableFamily::Complete, Family::Complete(n)) => Some(n),
            (TableFamily::Hypercube, Family::Hypercube(d)) => Some(d as usize),
            (TableFamily::CompleteBipartite, Family::CompleteBipartite(a, b)) if a == b => Some(a),
            _ => None,
        }
    }

    /// The table-row spec for parameter `n`.
    pub fn spec(self, n: usize) -> GraphSpec {
        GraphSpec::new(match self {
            TableFamily::Cycle => Family::Cycle(n),
            TableFamily::Complete => Family::Complete(n),
            TableFamily::Hypercube => Family::Hypercube(n as u32),
            TableFamily::CompleteBipartite => Family::CompleteBipartite(n, n),
        })
    }

    pub fn all_specs(n: usize) -> Vec<GraphSpec> {
        TableFamily::ALL.iter().map(|f| f.spec(n)).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TableColumn {
    Index,
    SplittingIndex,
    ShadowIndex,
    SplittingEnergy,
    ShadowEnergy,
}

impl TableColumn {
    const ALL: [TableColumn; 5] = [
        TableColumn::Index,
        TableColumn::SplittingIndex,
        TableColumn::ShadowIndex,
        TableColumn::SplittingEnergy,
        TableColumn::ShadowEnergy,
    ];

    fn tag(self) -> &'static str {
        match self {
            TableColumn::Index => "SO",
            TableColumn::SplittingIndex => "SO-SPL",
            TableColumn::ShadowIndex => "SO-SHD",
            TableColumn::SplittingEnergy => "SE-SPL",
            TableColumn::ShadowEnergy => "SE-SHD",
        }
    }
}

/// How to read the `⌈n/n⌉` factor in the hypercube energy cells.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CeilReading {
    /// `⌈n/n⌉ = 1`, as printed.
    AsPrinted,
    /// `⌈n/2⌉`, which makes the factor match the hypercube's energy.
    Half,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ClaimKind {
    /// `SO(G) = nk²/√2`.
    RegularIndex,
    /// `SO(Spl_m(G)) = SO(G)(m√(2m²+4m+4) + (m+1))`.
    SplittingIndex,
    /// `SO(D_m(G)) = SO(G)(m³+m²)`.
    ShadowIndex,
    /// `D_m(G)` is `mk`-regular.
    ShadowRegularity,
    /// `ES(Spl_m(G)) = k(m+1)√2 ε(G)`.
    SplittingEnergy,
    /// Root spread of the reduced splitting matrix is `k√(4m³+10m²+10m+2)`.
    SplittingDiscriminant,
    /// `ES(D_m(G)) = mk√(8m+2) ε(G)`.
    ShadowEnergy,
    /// `ES(Spl_m(G)) = (|μ₁|+|μ₂|) ε(G)` from the reduced matrix spectrum.
    SplittingStructure,
    Table {
        family: TableFamily,
        column: TableColumn,
        reading: Option<CeilReading>,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct Claim {
    pub id: String,
    pub description: String,
    /// The closed form being checked.
    pub statement: String,
    pub kind: ClaimKind,
}

impl Claim {
    fn new(kind: ClaimKind, description: &str, statement: &str) -> Self {
        Claim {
            id: claim_id(kind),
            description: description.to_string(),
            statement: statement.to_string(),
            kind,
        }
    }

    pub fn uses_m(&self) -> bool {
        !matches!(
            self.kind,
            ClaimKind::RegularIndex
                | ClaimKind::Table {
                    column: TableColumn::Index,
                    ..
                }
        )
    }

    /// Shadow conventions this claim is evaluated under; empty when the
    /// claim involves no shadow graph.
    pub fn conventions(&self) -> &'static [ShadowConvention] {
        match self.kind {
            ClaimKind::ShadowIndex
            | ClaimKind::ShadowEnergy
            | ClaimKind::Table {
                column: TableColumn::ShadowIndex | TableColumn::ShadowEnergy,
                ..
            } => &ShadowConvention::ALL,
            ClaimKind::ShadowRegularity => &[ShadowConvention::Definition],
            _ => &[],
        }
    }

    pub fn is_energy_claim(&self) -> bool {
        matches!(
            self.kind,
            ClaimKind::SplittingEnergy
                | ClaimKind::ShadowEnergy
                | ClaimKind::SplittingStructure
                | ClaimKind::Table {
                    column: TableColumn::SplittingEnergy | TableColumn::ShadowEnergy,
                    ..
                }
        )
    }

    pub fn default_tolerance(&self) -> f64 {
        if self.is_energy_claim() {
            ENERGY_TOL
        } else {
            INDEX_TOL
        }
    }

    /// Whether the formula needs `ε(G)` as auxiliary input.
    pub fn needs_aux(&self) -> bool {
        matches!(
            self.kind,
            ClaimKind::SplittingEnergy
                | ClaimKind::ShadowEnergy
                | ClaimKind::SplittingStructure
                | ClaimKind::Table {
                    family: TableFamily::Cycle,
                    column: TableColumn::SplittingEnergy | TableColumn::ShadowEnergy,
                    ..
                }
        )
    }

    /// Whether the claim is instantiated at all for `spec`. Table claims only
    /// apply to their own untransformed family.
    pub fn in_scope(&self, spec: &GraphSpec) -> bool {
        match self.kind {
            ClaimKind::Table { family, .. } => {
                spec.pipeline.is_empty() && family.parameter(&spec.family).is_some()
            }
            _ => true,
        }
    }

    /// Evaluates the closed form. For table claims `n` is the row parameter
    /// (cycle length, order, dimension, or part size) and `k` is unused.
    pub fn formula(
        &self,
        n: usize,
        k: usize,
        m: usize,
        aux: Option<f64>,
    ) -> Result<f64, ClaimError> {
        let aux = || aux.ok_or_else(|| ClaimError::MissingAux(self.id.clone()));
        let (nf, kf, mf) = (n as f64, k as f64, m as f64);
        let regular_index = nf * kf * kf / SQRT2;
        Ok(match self.kind {
            ClaimKind::RegularIndex => regular_index,
            ClaimKind::SplittingIndex => regular_index * splitting_factor(m),
            ClaimKind::ShadowIndex => regular_index * shadow_factor(m),
            ClaimKind::ShadowRegularity => mf * kf,
            ClaimKind::SplittingEnergy => kf * (mf + 1.0) * SQRT2 * aux()?,
            ClaimKind::SplittingDiscriminant => {
                kf * (4.0 * mf.powi(3) + 10.0 * mf * mf + 10.0 * mf + 2.0).sqrt()
            }
            ClaimKind::ShadowEnergy => mf * kf * (8.0 * mf + 2.0).sqrt() * aux()?,
            ClaimKind::SplittingStructure => {
                let r = reduced_matrix(ReducedKind::Splitting, k, m)?;
                rank2_spectrum(r.get(0, 0), r.get(0, 1), m).energy() * aux()?
            }
            ClaimKind::Table {
                family,
                column,
                reading,
            } => table_formula(family, column, reading, n, m, aux)?,
        })
    }
}

fn splitting_factor(m: usize) -> f64 {
    let mf = m as f64;
    mf * (2.0 * mf * mf + 4.0 * mf + 4.0).sqrt() + (mf + 1.0)
}

fn shadow_factor(m: usize) -> f64 {
    let mf = m as f64;
    mf.powi(3) + mf * mf
}

fn binomial(n: usize, r: usize) -> f64 {
    if r > n {
        return 0.0;
    }
    let r = r.min(n - r);
    (0..r).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

fn table_formula(
    family: TableFamily,
    column: TableColumn,
    reading: Option<CeilReading>,
    n: usize,
    m: usize,
    aux: impl Fn() -> Result<f64, ClaimError>,
) -> Result<f64, ClaimError> {
    let (nf, mf) = (n as f64, m as f64);
    let shadow_energy_factor = mf * (8.0 * mf + 2.0).sqrt();
    let index = match family {
        TableFamily::Cycle => 2.0 * SQRT2 * nf,
        TableFamily::Complete => nf * (nf - 1.0).powi(2) / SQRT2,
        TableFamily::Hypercube => 2f64.powf(nf - 0.5) * nf * nf,
        TableFamily::CompleteBipartite => SQRT2 * nf.powi(3),
    };
    Ok(match (family, column) {
        (_, TableColumn::Index) => index,
        (_, TableColumn::SplittingIndex) => index * splitting_factor(m),
        // This cell is printed with /2 rather than /√2.
        (TableFamily::Complete, TableColumn::ShadowIndex) => {
            nf * (nf - 1.0).powi(2) / 2.0 * shadow_factor(m)
        }
        (_, TableColumn::ShadowIndex) => index * shadow_factor(m),
        (TableFamily::Cycle, TableColumn::SplittingEnergy) => 2.0 * SQRT2 * (mf + 1.0) * aux()?,
        (TableFamily::Cycle, TableColumn::ShadowEnergy) => 2.0 * shadow_energy_factor * aux()?,
        (TableFamily::Complete, TableColumn::SplittingEnergy) => {
            2.0 * SQRT2 * (nf - 1.0).powi(2) * (mf + 1.0)
        }
        (TableFamily::Complete, TableColumn::ShadowEnergy) => {
            2.0 * (nf - 1.0).powi(2) * shadow_energy_factor
        }
        (TableFamily::CompleteBipartite, TableColumn::SplittingEnergy) => {
            2.0 * SQRT2 * nf * nf * (mf + 1.0)
        }
        (TableFamily::CompleteBipartite, TableColumn::ShadowEnergy) => {
            2.0 * nf * nf * shadow_energy_factor
        }
        (TableFamily::Hypercube, TableColumn::SplittingEnergy | TableColumn::ShadowEnergy) => {
            let c = match reading.unwrap_or(CeilReading::AsPrinted) {
                CeilReading::AsPrinted => n.div_ceil(n.max(1)),
                CeilReading::Half => n.div_ceil(2),
            };
            let tail = c as f64 * binomial(n, c);
            if column == TableColumn::SplittingEnergy {
                2.0 * SQRT2 * nf * (mf + 1.0) * tail
            } else {
                2.0 * mf * nf * (8.0 * mf + 2.0).sqrt() * tail
            }
        }
    })
}

fn claim_id(kind: ClaimKind) -> String {
    match kind {
        ClaimKind::RegularIndex => "T1a".into(),
        ClaimKind::SplittingIndex => "T1b".into(),
        ClaimKind::ShadowIndex => "T2".into(),
        ClaimKind::ShadowRegularity => "P1".into(),
        ClaimKind::SplittingEnergy => "T3".into(),
        ClaimKind::SplittingDiscriminant => "T3-disc".into(),
        ClaimKind::ShadowEnergy => "T4".into(),
        ClaimKind::SplittingStructure => "SPLIT-STRUCT".into(),
        ClaimKind::Table {
            family,
            column,
            reading,
        } => {
            let suffix = match reading {
                Some(CeilReading::Half) => "-CEIL2",
                _ => "",
            };
            format!("TBL1-{}-{}{}", family.tag(), column.tag(), suffix)
        }
    }
}

fn table_claims() -> Vec<Claim> {
    let mut claims = Vec::new();
    for family in TableFamily::ALL {
        for column in TableColumn::ALL {
            let energy_column = matches!(
                column,
                TableColumn::SplittingEnergy | TableColumn::ShadowEnergy
            );
            let readings: &[Option<CeilReading>] =
                if family == TableFamily::Hypercube && energy_column {
                    &[Some(CeilReading::AsPrinted), Some(CeilReading::Half)]
                } else {
                    &[None]
                };
            for &reading in readings {
                let subject = match column {
                    TableColumn::Index => format!("SO({})", family.symbol()),
                    TableColumn::SplittingIndex => format!("SO(Spl_m({}))", family.symbol()),
                    TableColumn::ShadowIndex => format!("SO(D_m({}))", family.symbol()),
                    TableColumn::SplittingEnergy => format!("ES(Spl_m({}))", family.symbol()),
                    TableColumn::ShadowEnergy => format!("ES(D_m({}))", family.symbol()),
                };
                let description = match reading {
                    Some(CeilReading::Half) => {
                        format!("table cell {subject}, reading ceil(n/n) as ceil(n/2)")
                    }
                    _ => format!("table cell {subject}"),
                };
                let kind = ClaimKind::Table {
                    family,
                    column,
                    reading,
                };
                claims.push(Claim::new(
                    kind,
                    &description,
                    &table_statement(family, column, reading),
                ));
            }
        }
    }
    claims
}

fn table_statement(
    family: TableFamily,
    column: TableColumn,
    reading: Option<CeilReading>,
) -> String {
    let spl = "(m√(2m²+4m+4)+(m+1))";
    let shd = "(m³+m²)";
    let index = match family {
        TableFamily::Cycle => "2√2·n",
        TableFamily::Complete => "n(n−1)²/√2",
        TableFamily::Hypercube => "2^(n−1/2)·n²",
        TableFamily::CompleteBipartite => "√2·n³",
    };
    let ceil = match reading {
        Some(CeilReading::Half) => "⌈n/2⌉·C(n,⌈n/2⌉)",
        _ => "⌈n/n⌉·C(n,⌈n/n⌉)",
    };
    match (family, column) {
        (_, TableColumn::Index) => index.to_string(),
        (_, TableColumn::SplittingIndex) => format!("{index}·{spl}"),
        (TableFamily::Complete, TableColumn::ShadowIndex) => format!("n(n−1)²/2·{shd}"),
        (_, TableColumn::ShadowIndex) => format!("{index}·{shd}"),
        (TableFamily::Cycle, TableColumn::SplittingEnergy) => "2√2(m+1)·ε(C_n)".into(),
        (TableFamily::Cycle, TableColumn::ShadowEnergy) => "2m√(8m+2)·ε(C_n)".into(),
        (TableFamily::Complete, TableColumn::SplittingEnergy) => "2√2(n−1)²(m+1)".into(),
        (TableFamily::Complete, TableColumn::ShadowEnergy) => "2(n−1)²·m√(8m+2)".into(),
        (TableFamily::Hypercube, TableColumn::SplittingEnergy) => format!("2√2·n(m+1)·{ceil}"),
        (TableFamily::Hypercube, TableColumn::ShadowEnergy) => format!("2mn√(8m+2)·{ceil}"),
        (TableFamily::CompleteBipartite, TableColumn::SplittingEnergy) => "2√2·n²(m+1)".into(),
        (TableFamily::CompleteBipartite, TableColumn::ShadowEnergy) => "2mn²√(8m+2)".into(),
    }
}

/// Every claim, ordered by id.
pub fn builtin_claims() -> &'static [Claim] {
    static REGISTRY: OnceLock<Vec<Claim>> = OnceLock::new();
    REGISTRY.get_or_init(|| {
        let mut claims = vec![
            Claim::new(
                ClaimKind::RegularIndex,
                "Sombor index of a k-regular graph on n vertices",
                "SO(G) = nk²/√2",
            ),
            Claim::new(
                ClaimKind::SplittingIndex,
                "Sombor index of the m-splitting graph",
                "SO(Spl_m(G)) = SO(G)·(m√(2m²+4m+4) + (m+1))",
            ),
            Claim::new(
                ClaimKind::ShadowIndex,
                "Sombor index of the m-shadow graph",
                "SO(D_m(G)) = SO(G)·(m³+m²)",
            ),
            Claim::new(
                ClaimKind::ShadowRegularity,
                "the m-shadow graph is mk-regular",
                "D_m(G) is mk-regular",
            ),
            Claim::new(
                ClaimKind::SplittingEnergy,
                "Sombor energy of the m-splitting graph",
                "ES(Spl_m(G)) = k(m+1)√2·ε(G)",
            ),
            Claim::new(
                ClaimKind::SplittingDiscriminant,
                "root spread of the reduced splitting matrix",
                "μ₁ − μ₂ = k√(4m³+10m²+10m+2)",
            ),
            Claim::new(
                ClaimKind::ShadowEnergy,
                "Sombor energy of the m-shadow graph",
                "ES(D_m(G)) = mk√(8m+2)·ε(G)",
            ),
            Claim::new(
                ClaimKind::SplittingStructure,
                "Sombor energy of Spl_m(G) from the reduced-matrix spectrum",
                "ES(Spl_m(G)) = (|μ₁|+|μ₂|)·ε(G)",
            ),
        ];
        claims.extend(table_claims());
        claims.sort_by(|a, b| a.id.cmp(&b.id));
        claims
    })
}

pub fn find_claim(id: &str) -> Result<&'static Claim, ClaimError> {
    builtin_claims()
        .iter()
        .find(|c| c.id == id)
        .ok_or_else(|| ClaimError::UnknownClaim(id.to_string()))
}

/// Closed-form value of claim `id` at `(n, k, m)`; `aux` is `ε(G)`.
pub fn evaluate_formula(
    id: &str,
    n: usize,
    k: usize,
    m: usize,
    aux: Option<f64>,
) -> Result<f64, ClaimError> {
    find_claim(id)?.formula(n, k, m, aux)
}

/// What a claim is checked on.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Instance {
    pub spec: GraphSpec,
    pub m: Option<usize>,
    pub convention: Option<ShadowConvention>,
}

impl Instance {
    pub fn new(spec: GraphSpec, m: Option<usize>, convention: Option<ShadowConvention>) -> Self {
        Instance {
            spec,
            m,
            convention,
        }
    }

    fn sort_key(&self) -> (String, Option<usize>, Option<ShadowConvention>) {
        (self.spec.to_string(), self.m, self.convention)
    }
}

impl fmt::Display for Instance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.spec)?;
        if let Some(m) = self.m {
            write!(f, " m={m}")?;
        }
        if let Some(c) = self.convention {
            write!(f, " convention={c}")?;
        }
        Ok(())
    }
}

impl Serialize for Instance {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("Instance", 3)?;
        st.serialize_field("spec", &self.spec.to_string())?;
        st.serialize_field("m", &self.m)?;
        st.serialize_field("convention", &self.convention)?;
        st.end()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Match,
    Mismatch,
    Inapplicable,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Match => "match",
            Verdict::Mismatch => "mismatch",
            Verdict::Inapplicable => "inapplicable",
        })
    }
}

fn sig_digits<S: Serializer>(x: &Option<f64>, s: S) -> Result<S::Ok, S::Error> {
    match x {
        Some(v) if v.is_finite() => s.serialize_f64(round_sig(*v, REPORT_DIGITS)),
        _ => s.serialize_none(),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClaimResult {
    pub claim_id: String,
    pub instance: Instance,
    #[serde(serialize_with = "sig_digits")]
    pub formula_value: Option<f64>,
    #[serde(serialize_with = "sig_digits")]
    pub direct_value: Option<f64>,
    #[serde(serialize_with = "sig_digits")]
    pub abs_dev: Option<f64>,
    #[serde(serialize_with = "sig_digits")]
    pub rel_dev: Option<f64>,
    pub verdict: Verdict,
}

impl ClaimResult {
    /// Builds a result from the two sides. `rel_dev` is
    /// `|formula - direct| / max(|direct|, 1)`; a missing or non-finite side
    /// is a mismatch.
    pub fn compare(
        claim_id: &str,
        instance: Instance,
        formula: f64,
        direct: Option<f64>,
        tol: f64,
    ) -> Self {
        let (abs_dev, rel_dev) = match direct {
            Some(d) => {
                let abs = (formula - d).abs();
                (Some(abs), Some(abs / d.abs().max(1.0)))
            }
            None => (None, None),
        };
        let verdict = match rel_dev {
            Some(r) if r <= tol => Verdict::Match,
            _ => Verdict::Mismatch,
        };
        ClaimResult {
            claim_id: claim_id.to_string(),
            instance,
            formula_value: Some(formula),
            direct_value: direct,
            abs_dev,
            rel_dev,
            verdict,
        }
    }

    pub fn inapplicable(claim_id: &str, instance: Instance) -> Self {
        ClaimResult {
            claim_id: claim_id.to_string(),
            instance,
            formula_value: None,
            direct_value: None,
            abs_dev: None,
            rel_dev: None,
            verdict: Verdict::Inapplicable,
        }
    }

    fn order(&self, other: &Self) -> Ordering {
        (&self.claim_id, self.instance.sort_key())
            .cmp(&(&other.claim_id, other.instance.sort_key()))
    }
}

/// A generated base graph with its regularity and lazily computed energy,
/// shared by every claim checked on the same spec.
struct Subject {
    spec: GraphSpec,
    graph: Graph,
    degree: Option<usize>,
    energy: OnceLock<Result<f64, MatrixError>>,
}

impl Subject {
    fn new(spec: &GraphSpec) -> Result<Self, ConstructError> {
        let graph = spec.generate()?;
        // n = 0 has no regularity; treat it like an irregular graph.
        let degree = graph.is_k_regular().ok().flatten();
        Ok(Subject {
            spec: spec.clone(),
            graph,
            degree,
            energy: OnceLock::new(),
        })
    }

    fn energy(&self) -> Result<f64, MatrixError> {
        self.energy
            .get_or_init(|| graph_energy(&self.graph, DEFAULT_EIGEN_TOL))
            .clone()
    }
}

/// Evaluates one claim on one instance.
pub fn check_claim(
    claim: &Claim,
    instance: &Instance,
    tol: f64,
) -> Result<ClaimResult, ClaimError> {
    let subject = Subject::new(&instance.spec)?;
    check_on_subject(claim, instance, &subject, tol)
}

fn check_on_subject(
    claim: &Claim,
    instance: &Instance,
    subject: &Subject,
    tol: f64,
) -> Result<ClaimResult, ClaimError> {
    let instance_err = |message: &str| ClaimError::Instance {
        claim: claim.id.clone(),
        instance: instance.to_string(),
        message: message.to_string(),
    };
    if !claim.in_scope(&subject.spec) {
        return Ok(ClaimResult::inapplicable(&claim.id, instance.clone()));
    }
    let k = match subject.degree {
        Some(k) if k >= 1 => k,
        _ => return Ok(ClaimResult::inapplicable(&claim.id, instance.clone())),
    };
    let m = match (claim.uses_m(), instance.m) {
        (true, Some(0)) => return Err(instance_err("m must be at least 1")),
        (true, Some(m)) => m,
        (true, None) => return Err(instance_err("claim needs m")),
        (false, _) => 0,
    };
    let convention = match (claim.conventions(), instance.convention) {
        ([], _) => ShadowConvention::Definition,
        (allowed, Some(c)) if allowed.contains(&c) => c,
        (_, Some(_)) => return Err(instance_err("claim does not apply under this convention")),
        (allowed, None) => allowed[0],
    };

    let g = &subject.graph;
    let n = match claim.kind {
        ClaimKind::Table { family, .. } => family
            .parameter(&subject.spec.family)
            .expect("in-scope table claim has a row parameter"),
        _ => g.vertex_count(),
    };
    let aux = if claim.needs_aux() {
        Some(subject.energy()?)
    } else {
        None
    };
    let formula = claim.formula(n, k, m, aux)?;

    let split = || m_splitting(g, m);
    let shadow = || m_shadow(g, m, convention);
    let direct = match claim.kind {
        ClaimKind::RegularIndex
        | ClaimKind::Table {
            column: TableColumn::Index,
            ..
        } => Some(sombor_index(g)),
        ClaimKind::SplittingIndex
        | ClaimKind::Table {
            column: TableColumn::SplittingIndex,
            ..
        } => Some(sombor_index(&split()?)),
        ClaimKind::ShadowIndex
        | ClaimKind::Table {
            column: TableColumn::ShadowIndex,
            ..
        } => Some(sombor_index(&shadow()?)),
        ClaimKind::ShadowRegularity => shadow()?.is_k_regular().ok().flatten().map(|d| d as f64),
        ClaimKind::SplittingEnergy
        | ClaimKind::SplittingStructure
        | ClaimKind::Table {
            column: TableColumn::SplittingEnergy,
            ..
        } => Some(sombor_energy(&split()?, DEFAULT_EIGEN_TOL)?),
        ClaimKind::ShadowEnergy
        | ClaimKind::Table {
            column: TableColumn::ShadowEnergy,
            ..
        } => Some(sombor_energy(&shadow()?, DEFAULT_EIGEN_TOL)?),
        ClaimKind::SplittingDiscriminant => {
            let r = reduced_matrix(ReducedKind::Splitting, k, m)?;
            let roots = rank2_spectrum(r.get(0, 0), r.get(0, 1), m);
            let values = roots.values();
            Some(values[0] - values[values.len() - 1])
        }
    };
    Ok(ClaimResult::compare(
        &claim.id,
        instance.clone(),
        formula,
        direct,
        tol,
    ))
}

/// An instance that could not be evaluated.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteError {
    pub spec: String,
    pub claim_id: Option<String>,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct SuiteReport {
    pub results: Vec<ClaimResult>,
    pub errors: Vec<SuiteError>,
}

impl SuiteReport {
    pub fn count(&self, verdict: Verdict) -> usize {
        self.results.iter().filter(|r| r.verdict == verdict).count()
    }

    pub fn all_match(&self) -> bool {
        self.count(Verdict::Mismatch) == 0
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteOptions {
    /// Overrides every claim's default tolerance when set.
    pub tolerance: Option<f64>,
    pub conventions: Vec<ShadowConvention>,
    /// Only claims whose id starts with this prefix.
    pub claim_prefix: Option<String>,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions {
            tolerance: None,
            conventions: ShadowConvention::ALL.to_vec(),
            claim_prefix: None,
        }
    }
}

/// Checks every in-scope claim on every `(spec, m, convention)` combination.
///
/// Duplicate specs, m values and conventions are evaluated once. Instances
/// run in parallel; results are sorted by `(claim id, spec, m, convention)`
/// and errors are collected rather than aborting the run.
pub fn run_suite(specs: &[GraphSpec], m_values: &[usize], options: &SuiteOptions) -> SuiteReport {
    let mut seen = BTreeSet::new();
    let specs: Vec<&GraphSpec> = specs
        .iter()
        .filter(|s| seen.insert(s.to_string()))
        .collect();
    let m_values: BTreeSet<usize> = m_values.iter().copied().collect();
    let conventions: BTreeSet<ShadowConvention> = options.conventions.iter().copied().collect();
    let claims: Vec<&Claim> = builtin_claims()
        .iter()
        .filter(|c| {
            options
                .claim_prefix
                .as_deref()
                .is_none_or(|p| c.id.starts_with(p))
        })
        .collect();

    let mut report = SuiteReport::default();
    let mut subjects = Vec::new();
    for spec in specs {
        match Subject::new(spec) {
            Ok(subject) => subjects.push(subject),
            Err(e) => report.errors.push(SuiteError {
                spec: spec.to_string(),
                claim_id: None,
                message: e.to_string(),
            }),
        }
    }

    let mut tasks = Vec::new();
    for subject in &subjects {
        for &claim in &claims {
            if !claim.in_scope(&subject.spec) {
                continue;
            }
            let ms: Vec<Option<usize>> = if claim.uses_m() {
                m_values.iter().map(|&m| Some(m)).collect()
            } else {
                vec![None]
            };
            let convs: Vec<Option<ShadowConvention>> = if claim.conventions().is_empty() {
                vec![None]
            } else {
                claim
                    .conventions()
                    .iter()
                    .filter(|c| conventions.contains(c))
                    .map(|&c| Some(c))
                    .collect()
            };
            for &m in &ms {
                for &convention in &convs {
                    tasks.push((
                        subject,
                        claim,
                        Instance::new(subject.spec.clone(), m, convention),
                    ));
                }
            }
        }
    }

    let outcomes: Vec<Result<ClaimResult, SuiteError>> = tasks
        .into_par_iter()
        .map(|(subject, claim, instance)| {
            let tol = options
                .tolerance
                .unwrap_or_else(|| claim.default_tolerance());
            check_on_subject(claim, &instance, subject, tol).map_err(|e| SuiteError {
                spec: instance.spec.to_string(),
                claim_id: Some(claim.id.clone()),
                message: e.to_string(),
            })
        })
        .collect();
    for outcome in outcomes {
        match outcome {
            Ok(result) => report.results.push(result),
            Err(e) => report.errors.push(e),
        }
    }
    report.results.sort_by(ClaimResult::order);
    report.errors.sort_by(|a, b| {
        (&a.spec, &a.claim_id, &a.message).cmp(&(&b.spec, &b.claim_id, &b.message))
    });
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructors::Transform;

    const SQRT2: f64 = std::f64::consts::SQRT_2;

    fn spec(s: &str) -> GraphSpec {
        s.parse().unwrap()
    }

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs().max(1.0)
    }

    #[test]
    fn registry_contents() {
        let claims = builtin_claims();
        assert!(claims.len() >= 9);
        for id in [
            "T1a",
            "T1b",
            "T2",
            "P1",
            "T3",
            "T3-disc",
            "T4",
            "SPLIT-STRUCT",
            "TBL1-Cn-SO",
        ] {
            assert!(find_claim(id).is_ok(), "missing {id}");
        }
        let ids: BTreeSet<&str> = claims.iter().map(|c| c.id.as_str()).collect();
        assert_eq!(ids.len(), claims.len(), "ids must be unique");
        // 4 families x 5 columns, plus two alternate hypercube energy readings.
        assert_eq!(
            claims.iter().filter(|c| c.id.starts_with("TBL1")).count(),
            22
        );
        assert!(matches!(find_claim("T9"), Err(ClaimError::UnknownClaim(_))));
    }

    #[test]
    fn formula_examples() {
        assert!(
            rel(
                evaluate_formula("T1a", 6, 2, 0, None).unwrap(),
                12.0 * SQRT2
            ) < 1e-15
        );
        assert!(rel(evaluate_formula("T2", 6, 2, 1, None).unwrap(), 24.0 * SQRT2) < 1e-15);
        assert!(
            rel(
                evaluate_formula("T3", 4, 2, 1, Some(4.0)).unwrap(),
                16.0 * SQRT2
            ) < 1e-15
        );
        assert_eq!(
            evaluate_formula("T3", 4, 2, 1, None),
            Err(ClaimError::MissingAux("T3".into()))
        );
        assert!(matches!(
            evaluate_formula("nope", 1, 1, 1, None),
            Err(ClaimError::UnknownClaim(_))
        ));
        // 27√2(√10 + 2) = 54(√5 + √2)
        let t1b = evaluate_formula("T1b", 6, 3, 1, None).unwrap();
        assert!(rel(t1b, 54.0 * (5f64.sqrt() + SQRT2)) < 1e-14);
    }

    #[test]
    fn table_formulas_agree_with_general_forms_where_they_should() {
        // Table index cells are the regular-graph index for each family.
        for n in 3..8 {
            let c = evaluate_formula("TBL1-Cn-SO", n, 0, 0, None).unwrap();
            assert!(rel(c, evaluate_formula("T1a", n, 2, 0, None).unwrap()) < 1e-14);
            let k = evaluate_formula("TBL1-Kn-SO", n, 0, 0, None).unwrap();
            assert!(rel(k, evaluate_formula("T1a", n, n - 1, 0, None).unwrap()) < 1e-14);
            let q = evaluate_formula("TBL1-Qn-SO", n, 0, 0, None).unwrap();
            assert!(rel(q, evaluate_formula("T1a", 1 << n, n, 0, None).unwrap()) < 1e-14);
            let b = evaluate_formula("TBL1-Knn-SO", n, 0, 0, None).unwrap();
            assert!(rel(b, evaluate_formula("T1a", 2 * n, n, 0, None).unwrap()) < 1e-14);
        }
        // Q_3 energy is 12 = 2·⌈3/2⌉·C(3,2), so the ceil(n/2) reading equals
        // the general splitting-energy formula with ε = 12.
        let half = evaluate_formula("TBL1-Qn-SE-SPL-CEIL2", 3, 0, 1, None).unwrap();
        let general = evaluate_formula("T3", 8, 3, 1, Some(12.0)).unwrap();
        assert!(rel(half, general) < 1e-14);
        let printed = evaluate_formula("TBL1-Qn-SE-SPL", 3, 0, 1, None).unwrap();
        assert!(rel(printed, 2.0 * SQRT2 * 3.0 * 2.0 * 3.0) < 1e-14);
    }

    #[test]
    fn splitting_index_matches_on_prism() {
        let claim = find_claim("T1b").unwrap();
        let r = check_claim(claim, &Instance::new(spec("prism(3)"), Some(1), None), 1e-9).unwrap();
        assert_eq!(r.verdict, Verdict::Match);
        let expected = 54.0 * (5f64.sqrt() + SQRT2);
        assert!(rel(r.direct_value.unwrap(), expected) < 1e-12);
        assert!(rel(r.formula_value.unwrap(), expected) < 1e-12);
    }

    #[test]
    fn shadow_index_mismatch_on_c6() {
        let claim = find_claim("T2").unwrap();
        let inst = Instance::new(
            spec("cycle(6)"),
            Some(1),
            Some(ShadowConvention::Definition),
        );
        let r = check_claim(claim, &inst, 1e-9).unwrap();
        assert_eq!(r.verdict, Verdict::Mismatch);
        assert!(rel(r.formula_value.unwrap(), 24.0 * SQRT2) < 1e-14);
        assert!(rel(r.direct_value.unwrap(), 12.0 * SQRT2) < 1e-14);
        assert!((r.rel_dev.unwrap() - 1.0).abs() < 1e-12);
        assert!((r.abs_dev.unwrap() / r.formula_value.unwrap() - 0.5).abs() < 1e-12);
    }

    #[test]
    fn splitting_energy_mismatch_on_c4() {
        let claim = find_claim("T3").unwrap();
        let r = check_claim(claim, &Instance::new(spec("cycle(4)"), Some(1), None), 1e-9).unwrap();
        assert_eq!(r.verdict, Verdict::Mismatch);
        assert!(rel(r.formula_value.unwrap(), 16.0 * SQRT2) < 1e-12);
        assert!(rel(r.direct_value.unwrap(), 16.0 * 7f64.sqrt()) < 1e-10);
    }

    #[test]
    fn non_regular_is_inapplicable() {
        // A path: split a single edge once.
        let path = spec("complete(2)|splitting(m=1)");
        let r = check_claim(
            find_claim("T2").unwrap(),
            &Instance::new(path, Some(1), Some(ShadowConvention::Definition)),
            1e-9,
        )
        .unwrap();
        assert_eq!(r.verdict, Verdict::Inapplicable);
        assert_eq!(r.formula_value, None);
    }

    #[test]
    fn instance_errors() {
        let t1b = find_claim("T1b").unwrap();
        assert!(matches!(
            check_claim(t1b, &Instance::new(spec("cycle(6)"), None, None), 1e-9),
            Err(ClaimError::Instance { .. })
        ));
        let p1 = find_claim("P1").unwrap();
        assert!(matches!(
            check_claim(
                p1,
                &Instance::new(spec("cycle(6)"), Some(1), Some(ShadowConvention::Example)),
                1e-9
            ),
            Err(ClaimError::Instance { .. })
        ));
        let bad = GraphSpec::new(Family::Cycle(2));
        assert!(matches!(
            check_claim(t1b, &Instance::new(bad, Some(1), None), 1e-9),
            Err(ClaimError::Construct(_))
        ));
    }

    #[test]
    fn table_claim_out_of_scope() {
        let claim = find_claim("TBL1-Kn-SO").unwrap();
        assert!(!claim.in_scope(&spec("cycle(5)")));
        assert!(!claim.in_scope(&spec("complete(5)|splitting(m=1)")));
        assert!(claim.in_scope(&spec("complete(5)")));
        let r = check_claim(claim, &Instance::new(spec("cycle(5)"), None, None), 1e-9).unwrap();
        assert_eq!(r.verdict, Verdict::Inapplicable);
        assert!(!find_claim("TBL1-Knn-SO")
            .unwrap()
            .in_scope(&spec("complete_bipartite(2,3)")));
    }

    #[test]
    fn suite_basics() {
        let report = run_suite(&[], &[1], &SuiteOptions::default());
        assert!(report.results.is_empty() && report.errors.is_empty());

        let report = run_suite(&[spec("cycle(6)")], &[1], &SuiteOptions::default());
        let t1a = report.results.iter().find(|r| r.claim_id == "T1a").unwrap();
        assert_eq!(t1a.verdict, Verdict::Match);
        assert_eq!(t1a.instance.m, None);
    }

    #[test]
    fn suite_row_count() {
        // Per spec: T1a once; T1b, P1, T3, T3-disc, SPLIT-STRUCT per m;
        // T2, T4 per m and convention; 13 table rows for the matching family
        // (SO once, two splitting columns per m, two shadow columns per m and
        // convention).
        let per_spec = 1 + 5 * 2 + 2 * 2 * 2 + (1 + 2 * 2 + 2 * 2 * 2);
        let report = run_suite(
            &[spec("cycle(4)"), spec("complete(4)")],
            &[1, 2],
            &SuiteOptions::default(),
        );
        assert!(report.errors.is_empty());
        assert_eq!(report.results.len(), 2 * per_spec);
        assert_eq!(report.count(Verdict::Inapplicable), 0);
    }

    #[test]
    fn suite_deduplicates_and_collects_errors() {
        let specs = [
            spec("cycle(4)"),
            spec("cycle(4)"),
            GraphSpec::new(Family::Cycle(1)),
        ];
        let once = run_suite(&specs[..1], &[1], &SuiteOptions::default());
        let report = run_suite(&specs, &[1, 1], &SuiteOptions::default());
        assert_eq!(report.results, once.results);
        assert_eq!(report.errors.len(), 1);
        assert_eq!(report.errors[0].spec, "cycle(1)");
    }

    #[test]
    fn suite_is_sorted() {
        let report = run_suite(
            &[spec("hypercube(2)"), spec("cycle(5)")],
            &[2, 1],
            &SuiteOptions::default(),
        );
        assert!(report
            .results
            .windows(2)
            .all(|w| w[0].order(&w[1]) == Ordering::Less));
    }

    #[test]
    fn suite_filters() {
        let options = SuiteOptions {
            conventions: vec![ShadowConvention::Example],
            claim_prefix: Some("T".into()),
            tolerance: Some(1e-6),
        };
        let report = run_suite(
            &[GraphSpec::new(Family::Prism(3)).then(Transform::Splitting { m: 1 })],
            &[1],
            &options,
        );
        // Non-regular base graph: every non-table claim is inapplicable; P1
        // is skipped because only the example convention is requested.
        assert!(report
            .results
            .iter()
            .all(|r| r.verdict == Verdict::Inapplicable));
        assert!(report.results.iter().all(|r| r.claim_id.starts_with('T')));
        assert!(!report.results.iter().any(|r| r.claim_id == "P1"));
    }
}
