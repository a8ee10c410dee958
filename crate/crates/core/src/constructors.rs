//! Regular graph families and the m-splitting / m-shadow transforms.
//!
//! Both transforms lay out new vertices copy-major: vertex `i` of copy `t`
//! gets index `t * n + i`, with copy 0 holding the original vertices. Under
//! this layout the adjacency and Sombor matrices of a transformed regular
//! graph are block matrices whose blocks are multiples of `A(G)`.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Graph, GraphError};

/// Upper bound on the number of pairing-model attempts for `random_regular`.
pub const RANDOM_REGULAR_MAX_ATTEMPTS: usize = 1000;

/// Largest hypercube dimension `generate` will build.
pub const MAX_HYPERCUBE_DIM: u32 = 20;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConstructError {
    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("no {k}-regular graph on {n} vertices exists")]
    Infeasible { n: usize, k: usize },

    #[error("pairing model gave up after {0} attempts")]
    RetryLimit(usize),

    #[error("cannot parse graph spec {input:?}: {message}")]
    Parse { input: String, message: String },

    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// How many copies of the base graph an m-shadow uses.
#[derive(
    Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize,
)]
#[serde(rename_all = "lowercase")]
pub enum ShadowConvention {
    /// `m` copies.
    #[default]
    Definition,
    /// `m + 1` copies, as in the two-copy drawing for `m = 1`.
    Example,
}

impl ShadowConvention {
    pub const ALL: [ShadowConvention; 2] =
        [ShadowConvention::Definition, ShadowConvention::Example];

    pub fn copies(self, m: usize) -> usize {
        match self {
            ShadowConvention::Definition => m,
            ShadowConvention::Example => m + 1,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            ShadowConvention::Definition => "definition",
            ShadowConvention::Example => "example",
        }
    }
}

impl fmt::Display for ShadowConvention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ShadowConvention {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "definition" => Ok(ShadowConvention::Definition),
            "example" => Ok(ShadowConvention::Example),
            other => Err(format!("unknown shadow convention {other:?}")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    Cycle(usize),
    Complete(usize),
    CompleteBipartite(usize, usize),
    Hypercube(u32),
    /// Circular ladder on `2n` vertices.
    Prism(usize),
    RandomRegular {
        n: usize,
        k: usize,
        seed: u64,
    },
}

impl Family {
    pub fn generate(&self) -> Result<Graph, ConstructError> {
        match *self {
            Family::Cycle(n) => cycle(n),
            Family::Complete(n) => complete(n),
            Family::CompleteBipartite(a, b) => complete_bipartite(a, b),
            Family::Hypercube(d) => hypercube(d),
            Family::Prism(n) => prism(n),
            Family::RandomRegular { n, k, seed } => random_regular(n, k, seed),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Cycle(n) => write!(f, "cycle({n})"),
            Family::Complete(n) => write!(f, "complete({n})"),
            Family::CompleteBipartite(a, b) => write!(f, "complete_bipartite({a},{b})"),
            Family::Hypercube(d) => write!(f, "hypercube({d})"),
            Family::Prism(n) => write!(f, "prism({n})"),
            Family::RandomRegular { n, k, seed } => write!(f, "random_regular({n},{k},{seed})"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Transform {
    Splitting {
        m: usize,
    },
    Shadow {
        m: usize,
        convention: ShadowConvention,
    },
}

impl Transform {
    pub fn apply(&self, g: &Graph) -> Result<Graph, ConstructError> {
        match *self {
            Transform::Splitting { m } => m_splitting(g, m),
            Transform::Shadow { m, convention } => m_shadow(g, m, convention),
        }
    }
}

impl fmt::Display for Transform {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Transform::Splitting { m } => write!(f, "splitting(m={m})"),
            Transform::Shadow { m, convention } => {
                write!(f, "shadow(m={m},convention={convention})")
            }
        }
    }
}

/// A base family followed by transforms applied left to right.
///
/// The textual form is `family(args)` with optional `|transform(args)`
/// suffixes, e.g. `complete(4)|shadow(m=2,convention=definition)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GraphSpec {
    pub family: Family,
    pub pipeline: Vec<Transform>,
}

impl GraphSpec {
    pub fn new(family: Family) -> Self {
        GraphSpec {
            family,
            pipeline: Vec::new(),
        }
    }

    pub fn then(mut self, transform: Transform) -> Self {
        self.pipeline.push(transform);
        self
    }

    pub fn generate(&self) -> Result<Graph, ConstructError> {
        let base = self.family.generate()?;
        self.pipeline
            .iter()
            .try_fold(base, |g, transform| transform.apply(&g))
    }
}

impl From<Family> for GraphSpec {
    fn from(family: Family) -> Self {
        GraphSpec::new(family)
    }
}

impl fmt::Display for GraphSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.family)?;
        for transform in &self.pipeline {
            write!(f, "|{transform}")?;
        }
        Ok(())
    }
}

impl FromStr for GraphSpec {
    type Err = ConstructError;

    fn from_str(input: &str) -> Result<Self, Self::Err> {
        let err = |message: String| ConstructError::Parse {
            input: input.to_string(),
            message,
        };
        let mut stages = input.split('|');
        let (name, args) = split_call(stages.next().unwrap_or_default()).map_err(err)?;
        let ints = |args: &[Arg], want: usize| -> Result<Vec<u64>, String> {
            if args.len() != want {
                return Err(format!(
                    "{name} takes {want} argument(s), got {}",
                    args.len()
                ));
            }
            args.iter().map(|a| a.positional_int()).collect()
        };
        let family = match name.as_str() {
            "cycle" => Family::Cycle(ints(&args, 1).map_err(err)?[0] as usize),
            "complete" => Family::Complete(ints(&args, 1).map_err(err)?[0] as usize),
            "complete_bipartite" => {
                let v = ints(&args, 2).map_err(err)?;
                Family::CompleteBipartite(v[0] as usize, v[1] as usize)
            }
            "hypercube" => {
                let d = ints(&args, 1).map_err(err)?[0];
                Family::Hypercube(u32::try_from(d).map_err(|_| err("dimension too large".into()))?)
            }
            "prism" => Family::Prism(ints(&args, 1).map_err(err)?[0] as usize),
            "random_regular" => {
                let v = ints(&args, 3).map_err(err)?;
                Family::RandomRegular {
                    n: v[0] as usize,
                    k: v[1] as usize,
                    seed: v[2],
                }
            }
            other => return Err(err(format!("unknown graph family {other:?}"))),
        };

        let mut spec = GraphSpec::new(family);
        for stage in stages {
            let transform = parse_transform(stage).map_err(err)?;
            spec.pipeline.push(transform);
        }
        Ok(spec)
    }
}

#[derive(Debug)]
struct Arg {
    key: Option<String>,
    value: String,
}

impl Arg {
    fn positional_int(&self) -> Result<u64, String> {
        if let Some(key) = &self.key {
            return Err(format!("unexpected keyword argument {key:?}"));
        }
        parse_int(&self.value)
    }
}

fn parse_int(s: &str) -> Result<u64, String> {
    s.parse()
        .map_err(|_| format!("expected a nonnegative integer, got {s:?}"))
}

/// Splits `name(a, k=v, ...)` into a lowercase name and its arguments.
fn split_call(stage: &str) -> Result<(String, Vec<Arg>), String> {
    let stage = stage.trim();
    let open = stage
        .find('(')
        .ok_or_else(|| format!("expected '(' in {stage:?}"))?;
    let inner = stage[open + 1..]
        .strip_suffix(')')
        .ok_or_else(|| format!("expected ')' at end of {stage:?}"))?;
    let name = stage[..open].trim().to_ascii_lowercase();
    if name.is_empty() {
        return Err("missing name before '('".into());
    }
    let args = if inner.trim().is_empty() {
        Vec::new()
    } else {
        inner
            .split(',')
            .map(|part| match part.split_once('=') {
                Some((k, v)) => Arg {
                    key: Some(k.trim().to_ascii_lowercase()),
                    value: v.trim().to_string(),
                },
                None => Arg {
                    key: None,
                    value: part.trim().to_string(),
                },
            })
            .collect()
    };
    Ok((name, args))
}

fn parse_transform(stage: &str) -> Result<Transform, String> {
    let (name, args) = split_call(stage)?;
    let mut m = None;
    let mut convention = None;
    for (pos, arg) in args.iter().enumerate() {
        let key = arg.key.as_deref().unwrap_or(match pos {
            0 => "m",
            _ => "convention",
        });
        match key {
            "m" => m = Some(parse_int(&arg.value)? as usize),
            "convention" if name == "shadow" => convention = Some(arg.value.parse()?),
            other => return Err(format!("unexpected argument {other:?} for {name}")),
        }
    }
    let m = m.ok_or_else(|| format!("{name} requires m"))?;
    if m == 0 {
        return Err(format!("{name} requires m >= 1"));
    }
    match name.as_str() {
        "splitting" => Ok(Transform::Splitting { m }),
        "shadow" => Ok(Transform::Shadow {
            m,
            convention: convention.unwrap_or_default(),
        }),
        other => Err(format!("unknown transform {other:?}")),
    }
}

fn param(message: impl Into<String>) -> ConstructError {
    ConstructError::Parameter(message.into())
}

pub fn cycle(n: usize) -> Result<Graph, ConstructError> {
    if n < 3 {
        return Err(param(format!("cycle needs n >= 3, got {n}")));
    }
    Ok(Graph::new(n, (0..n).map(|i| (i, (i + 1) % n)))?)
}

pub fn complete(n: usize) -> Result<Graph, ConstructError> {
    if n == 0 {
        return Err(param("complete graph needs n >= 1"));
    }
    let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
    Ok(Graph::new(n, edges)?)
}

/// Parts are `0..a` and `a..a + b`.
pub fn complete_bipartite(a: usize, b: usize) -> Result<Graph, ConstructError> {
    if a == 0 || b == 0 {
        return Err(param(format!(
            "complete_bipartite needs positive parts, got ({a},{b})"
        )));
    }
    let edges = (0..a).flat_map(|u| (a..a + b).map(move |v| (u, v)));
    Ok(Graph::new(a + b, edges)?)
}

/// Vertices are `0..2^d`, adjacent when their labels differ in one bit.
pub fn hypercube(d: u32) -> Result<Graph, ConstructError> {
    if d == 0 || d > MAX_HYPERCUBE_DIM {
        return Err(param(format!(
            "hypercube dimension must be in 1..={MAX_HYPERCUBE_DIM}, got {d}"
        )));
    }
    let n = 1usize << d;
    let edges = (0..n).flat_map(|u| {
        (0..d)
            .map(move |bit| u ^ (1 << bit))
            .filter(move |&v| u < v)
            .map(move |v| (u, v))
    });
    Ok(Graph::new(n, edges)?)
}

/// Outer cycle `0..n`, inner cycle `n..2n`, spokes `i -- n + i`.
pub fn prism(n: usize) -> Result<Graph, ConstructError> {
    if n < 3 {
        return Err(param(format!("prism needs n >= 3, got {n}")));
    }
    let edges = (0..n).flat_map(|i| {
        let j = (i + 1) % n;
        [(i, j), (n + i, n + j), (i, n + i)]
    });
    Ok(Graph::new(2 * n, edges)?)
}

/// Samples a `k`-regular graph on `n` vertices with the pairing model.
///
/// Each attempt shuffles the `n * k` degree stubs and pairs neighbours; an
/// attempt producing a loop or a repeated edge is discarded. The generator is
/// a ChaCha8 stream seeded from `seed`, so the result depends only on
/// `(n, k, seed)`.
pub fn random_regular(n: usize, k: usize, seed: u64) -> Result<Graph, ConstructError> {
    if n == 0 || k == 0 {
        return Err(param(format!(
            "random_regular needs positive n and k, got ({n},{k})"
        )));
    }
    if k >= n || (n * k) % 2 == 1 {
        return Err(ConstructError::Infeasible { n, k });
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut stubs: Vec<usize> = (0..n).flat_map(|v| std::iter::repeat_n(v, k)).collect();
    let mut adjacency: Vec<Vec<usize>> = vec![Vec::with_capacity(k); n];

    'attempt: for _ in 0..RANDOM_REGULAR_MAX_ATTEMPTS {
        stubs.shuffle(&mut rng);
        adjacency.iter_mut().for_each(Vec::clear);
        for pair in stubs.chunks_exact(2) {
            let (u, v) = (pair[0], pair[1]);
            if u == v || adjacency[u].contains(&v) {
                continue 'attempt;
            }
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        let edges = adjacency
            .iter()
            .enumerate()
            .flat_map(|(u, ns)| ns.iter().filter(move |&&v| u < v).map(move |&v| (u, v)));
        return Ok(Graph::new(n, edges)?);
    }
    Err(ConstructError::RetryLimit(RANDOM_REGULAR_MAX_ATTEMPTS))
}

/// Adds `m` clones of every vertex; clone `(i, j)` for `j` in `1..=m` has
/// index `j * n + i` and is joined to every neighbour of `i` in `g`.
pub fn m_splitting(g: &Graph, m: usize) -> Result<Graph, ConstructError> {
    if m == 0 {
        return Err(param("splitting requires m >= 1"));
    }
    let n = g.vertex_count();
    let mut edges: Vec<(usize, usize)> = g.edges().map(|e| (e.u, e.v)).collect();
    for j in 1..=m {
        for e in g.edges() {
            edges.push((j * n + e.u, e.v));
            edges.push((j * n + e.v, e.u));
        }
    }
    Ok(Graph::new((m + 1) * n, edges)?)
}

/// Takes `convention.copies(m)` copies of `g` and joins vertex `(t, i)` to
/// `(s, j)` whenever `ij` is an edge of `g`, for every ordered pair of copies
/// including `t == s`.
pub fn m_shadow(
    g: &Graph,
    m: usize,
    convention: ShadowConvention,
) -> Result<Graph, ConstructError> {
    if m == 0 {
        return Err(param("shadow requires m >= 1"));
    }
    let n = g.vertex_count();
    let copies = convention.copies(m);
    let mut edges = Vec::with_capacity(copies * copies * g.edge_count());
    for e in g.edges() {
        for t in 0..copies {
            for s in 0..copies {
                edges.push((t * n + e.u, s * n + e.v));
            }
        }
    }
    Ok(Graph::new(copies * n, edges)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(s: &str) -> GraphSpec {
        s.parse().unwrap()
    }

    #[test]
    fn families() {
        let c6 = spec("cycle(6)").generate().unwrap();
        assert_eq!((c6.vertex_count(), c6.edge_count()), (6, 6));
        assert_eq!(c6.is_k_regular(), Ok(Some(2)));

        let q3 = spec("hypercube(3)").generate().unwrap();
        assert_eq!((q3.vertex_count(), q3.edge_count()), (8, 12));
        assert_eq!(q3.is_k_regular(), Ok(Some(3)));

        let k33 = spec("complete_bipartite(3,3)").generate().unwrap();
        assert_eq!((k33.vertex_count(), k33.edge_count()), (6, 9));
        assert_eq!(k33.is_k_regular(), Ok(Some(3)));

        let k5 = complete(5).unwrap();
        assert_eq!(k5.is_k_regular(), Ok(Some(4)));

        let p3 = prism(3).unwrap();
        assert_eq!((p3.vertex_count(), p3.edge_count()), (6, 9));
        assert_eq!(p3.is_k_regular(), Ok(Some(3)));
    }

    #[test]
    fn family_parameter_errors() {
        assert!(matches!(cycle(2), Err(ConstructError::Parameter(_))));
        assert!(matches!(complete(0), Err(ConstructError::Parameter(_))));
        assert!(matches!(hypercube(0), Err(ConstructError::Parameter(_))));
        assert!(matches!(
            complete_bipartite(0, 3),
            Err(ConstructError::Parameter(_))
        ));
        assert_eq!(
            random_regular(5, 3, 1),
            Err(ConstructError::Infeasible { n: 5, k: 3 })
        );
        assert_eq!(
            random_regular(4, 4, 1),
            Err(ConstructError::Infeasible { n: 4, k: 4 })
        );
    }

    #[test]
    fn random_regular_is_seed_deterministic() {
        let a = random_regular(20, 3, 7).unwrap();
        let b = random_regular(20, 3, 7).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.is_k_regular(), Ok(Some(3)));
        let c = random_regular(20, 3, 8).unwrap();
        assert_eq!(c.is_k_regular(), Ok(Some(3)));
    }

    #[test]
    fn random_regular_exhausts_retries() {
        // Almost every pairing of K_40's stubs collides.
        assert_eq!(
            random_regular(40, 38, 0),
            Err(ConstructError::RetryLimit(RANDOM_REGULAR_MAX_ATTEMPTS))
        );
    }

    #[test]
    fn splitting_of_single_edge() {
        let k2 = complete(2).unwrap();
        let s = m_splitting(&k2, 1).unwrap();
        let edges: Vec<_> = s.edges().map(|e| (e.u, e.v)).collect();
        assert_eq!(edges, vec![(0, 1), (0, 3), (1, 2)]);
        assert_eq!(s.degrees(), vec![2, 2, 1, 1]);
    }

    #[test]
    fn splitting_of_c6() {
        let s = m_splitting(&cycle(6).unwrap(), 1).unwrap();
        assert_eq!((s.vertex_count(), s.edge_count()), (12, 18));
        assert!((0..6).all(|v| s.degree(v) == Ok(4)));
        assert!((6..12).all(|v| s.degree(v) == Ok(2)));
    }

    #[test]
    fn splitting_of_prism() {
        let s = m_splitting(&prism(3).unwrap(), 1).unwrap();
        assert_eq!((s.vertex_count(), s.edge_count()), (12, 27));
    }

    #[test]
    fn transforms_reject_zero_m() {
        let c = cycle(4).unwrap();
        assert!(matches!(
            m_splitting(&c, 0),
            Err(ConstructError::Parameter(_))
        ));
        assert!(matches!(
            m_shadow(&c, 0, ShadowConvention::Definition),
            Err(ConstructError::Parameter(_))
        ));
    }

    #[test]
    fn shadow_conventions() {
        let c6 = cycle(6).unwrap();
        assert_eq!(m_shadow(&c6, 1, ShadowConvention::Definition).unwrap(), c6);

        let d = m_shadow(&c6, 1, ShadowConvention::Example).unwrap();
        assert_eq!((d.vertex_count(), d.edge_count()), (12, 24));
        assert_eq!(d.is_k_regular(), Ok(Some(4)));

        let d = m_shadow(&cycle(4).unwrap(), 2, ShadowConvention::Definition).unwrap();
        assert_eq!((d.vertex_count(), d.edge_count()), (8, 16));
        assert_eq!(d.is_k_regular(), Ok(Some(4)));
    }

    #[test]
    fn spec_round_trip() {
        for text in [
            "cycle(6)",
            "cycle(6)|splitting(m=1)",
            "complete(4)|shadow(m=2,convention=definition)",
            "complete_bipartite(3,3)|shadow(m=1,convention=example)|splitting(m=2)",
            "hypercube(3)",
            "prism(3)",
            "random_regular(10,3,42)",
        ] {
            assert_eq!(spec(text).to_string(), text);
        }
    }

    #[test]
    fn spec_parsing_is_lenient_about_case_and_keywords() {
        assert_eq!(
            spec("CYCLE( 6 ) | Splitting(1)"),
            spec("cycle(6)|splitting(m=1)")
        );
        assert_eq!(
            spec("complete(4)|shadow(m=2)"),
            spec("complete(4)|shadow(m=2,convention=definition)")
        );
        assert_eq!(
            spec("complete(4)|shadow(2, Example)"),
            spec("complete(4)|shadow(m=2,convention=example)")
        );
    }

    #[test]
    fn spec_parse_errors() {
        for bad in [
            "",
            "cycle",
            "cycle(6",
            "wheel(6)",
            "cycle(6,7)",
            "cycle(-1)",
            "cycle(6)|splitting(m=0)",
            "cycle(6)|splitting()",
            "cycle(6)|shadow(m=1,convention=sideways)",
            "cycle(6)|splitting(m=1,convention=example)",
            "cycle(6)|twist(m=1)",
        ] {
            assert!(
                matches!(bad.parse::<GraphSpec>(), Err(ConstructError::Parse { .. })),
                "{bad:?} should not parse"
            );
        }
    }

    #[test]
    fn pipeline_applies_left_to_right() {
        let g = spec("cycle(4)|shadow(m=2)|splitting(m=1)")
            .generate()
            .unwrap();
        assert_eq!(g.vertex_count(), 16);
        let g = spec("cycle(4)|splitting(m=1)|shadow(m=2)")
            .generate()
            .unwrap();
        assert_eq!(g.vertex_count(), 16);
        assert!(spec("cycle(2)|splitting(m=1)").generate().is_err());
    }
}
