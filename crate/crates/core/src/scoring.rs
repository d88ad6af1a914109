//! Similarity metrics, embedding providers and axiom scoring strategies.

use core::fmt;
use core::str::FromStr;

use crate::explanation::ConflictSet;
use crate::ontology::{signature_of, AxiomId, EntityId, Ontology};
use crate::prelude::*;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ScoringError {
    #[error("no vector for axiom {0}")]
    MissingVector(String),
    #[error("no similarity for axiom pair {0} | {1}")]
    MissingPair(String, String),
    #[error("vector for {id} has dimension {got}, expected {expected}")]
    Dimension { id: String, got: usize, expected: usize },
    #[error("vector for {0} has a non-finite component")]
    NonFinite(String),
    #[error("strategy {0} needs a similarity source")]
    NoSimilarity(Strategy),
    #[error("strategy {0} does not score axioms")]
    NotScored(Strategy),
    #[error("strategy {0} needs at least one conflict set")]
    EmptyFamily(Strategy),
    #[error("unknown strategy {0:?}")]
    UnknownStrategy(String),
    #[error("unknown similarity metric {0:?}")]
    UnknownMetric(String),
    #[error("invalid parameters: {0}")]
    Params(&'static str),
}

/// Dense embedding vector.
#[derive(Debug, Clone, PartialEq)]
pub struct Vector(Vec<f64>);

impl Vector {
    pub fn new(components: Vec<f64>) -> Self {
        Vector(components)
    }

    pub fn zeros(d: usize) -> Self {
        Vector(vec![0.0; d])
    }

    pub fn dimension(&self) -> usize {
        self.0.len()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn norm(&self) -> f64 {
        libm::sqrt(self.0.iter().map(|x| x * x).sum())
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|x| x.is_finite())
    }

    pub fn scaled(&self, c: f64) -> Vector {
        Vector(self.0.iter().map(|x| x * c).collect())
    }
}

impl From<Vec<f64>> for Vector {
    fn from(v: Vec<f64>) -> Self {
        Vector(v)
    }
}

/// `½(1 + cos θ)`; 0.5 when either vector has zero norm.
pub fn sim_cos(v1: &Vector, v2: &Vector) -> f64 {
    assert_eq!(v1.dimension(), v2.dimension(), "dimension mismatch");
    let dot: f64 = v1.0.iter().zip(&v2.0).map(|(a, b)| a * b).sum();
    let denom = v1.norm() * v2.norm();
    if denom == 0.0 {
        return 0.5;
    }
    let cos = (dot / denom).clamp(-1.0, 1.0);
    0.5 * (1.0 + cos)
}

/// `k / (k + ‖v1 − v2‖)`.
pub fn sim_euc(v1: &Vector, v2: &Vector, k: u32) -> f64 {
    assert_eq!(v1.dimension(), v2.dimension(), "dimension mismatch");
    let d2: f64 = v1.0.iter().zip(&v2.0).map(|(a, b)| (a - b) * (a - b)).sum();
    let k = f64::from(k);
    k / (k + libm::sqrt(d2))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Metric {
    Cos,
    Euc,
}

impl fmt::Display for Metric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Metric::Cos => "cos",
            Metric::Euc => "euc",
        })
    }
}

impl FromStr for Metric {
    type Err = ScoringError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "cos" => Ok(Metric::Cos),
            "euc" => Ok(Metric::Euc),
            other => Err(ScoringError::UnknownMetric(other.into())),
        }
    }
}

/// Produces a vector for an axiom.
pub trait EmbeddingProvider {
    fn dimension(&self) -> usize;
    fn embed(&self, id: &AxiomId, sentence: &str) -> Result<Vector, ScoringError>;
}

/// Precomputed vectors keyed by axiom id. Unknown ids are errors.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct VectorStore {
    dimension: usize,
    vectors: BTreeMap<AxiomId, Vector>,
}

impl VectorStore {
    pub fn new(dimension: usize) -> Self {
        VectorStore { dimension, vectors: BTreeMap::new() }
    }

    pub fn insert(&mut self, id: AxiomId, v: Vector) -> Result<(), ScoringError> {
        if v.dimension() != self.dimension {
            return Err(ScoringError::Dimension { id: id.to_string(), got: v.dimension(), expected: self.dimension });
        }
        if !v.is_finite() {
            return Err(ScoringError::NonFinite(id.to_string()));
        }
        self.vectors.insert(id, v);
        Ok(())
    }

    /// Embeds every sentence with `provider`.
    pub fn build<'a, P, I>(provider: &P, sentences: I) -> Result<Self, ScoringError>
    where
        P: EmbeddingProvider + ?Sized,
        I: IntoIterator<Item = (&'a AxiomId, &'a String)>,
    {
        let mut store = VectorStore::new(provider.dimension());
        for (id, s) in sentences {
            store.insert(id.clone(), provider.embed(id, s)?)?;
        }
        Ok(store)
    }

    pub fn get(&self, id: &AxiomId) -> Result<&Vector, ScoringError> {
        self.vectors.get(id).ok_or_else(|| ScoringError::MissingVector(id.to_string()))
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&AxiomId, &Vector)> {
        self.vectors.iter()
    }
}

impl EmbeddingProvider for VectorStore {
    fn dimension(&self) -> usize {
        self.dimension
    }

    fn embed(&self, id: &AxiomId, _sentence: &str) -> Result<Vector, ScoringError> {
        self.get(id).cloned()
    }
}

const FNV_OFFSET: u64 = 0xcbf2_9ce4_8422_2325;
const FNV_PRIME: u64 = 0x0000_0100_0000_01b3;

fn fnv1a(seed: u64, bytes: &[u8]) -> u64 {
    let mut h = FNV_OFFSET;
    for &b in seed.to_le_bytes().iter().chain(bytes) {
        h ^= u64::from(b);
        h = h.wrapping_mul(FNV_PRIME);
    }
    h
}

/// Deterministic hashed bag of words and character trigrams.
///
/// Tokens are the lower-cased alphanumeric words of the sentence plus every
/// three-character window of each word. Each token hashes (FNV-1a, 64-bit,
/// over the little-endian seed bytes followed by the token's UTF-8 bytes)
/// to index `h mod d` and adds `+1` if bit 63 is set, `-1` otherwise. The
/// result is L2-normalized; a sentence without tokens gives the zero vector.
pub fn fallback_embed(sentence: &str, d: usize, seed: u64) -> Vector {
    assert!(d >= 8, "fallback dimension must be at least 8");
    let mut v = vec![0.0f64; d];
    let lower = sentence.to_lowercase();
    let mut add = |token: &str| {
        let h = fnv1a(seed, token.as_bytes());
        let sign = if h >> 63 == 1 { 1.0 } else { -1.0 };
        v[(h % d as u64) as usize] += sign;
    };
    for word in lower.split(|c: char| !c.is_alphanumeric()).filter(|w| !w.is_empty()) {
        add(word);
        let chars: Vec<char> = word.chars().collect();
        for w in chars.windows(3) {
            let tri: String = w.iter().collect();
            add(&tri);
        }
    }
    let norm = libm::sqrt(v.iter().map(|x| x * x).sum());
    if norm > 0.0 {
        v.iter_mut().for_each(|x| *x /= norm);
    }
    Vector(v)
}

/// [`fallback_embed`] as a provider.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FallbackEmbedder {
    pub dimension: usize,
    pub seed: u64,
}

impl EmbeddingProvider for FallbackEmbedder {
    fn dimension(&self) -> usize {
        self.dimension
    }

    fn embed(&self, _id: &AxiomId, sentence: &str) -> Result<Vector, ScoringError> {
        Ok(fallback_embed(sentence, self.dimension, self.seed))
    }
}

/// Pairwise axiom similarity.
pub trait SimilaritySource {
    fn similarity(&self, a: &AxiomId, b: &AxiomId) -> Result<f64, ScoringError>;

    /// The metric behind the values, if known.
    fn metric(&self) -> Option<Metric> {
        None
    }
}

/// Similarities computed from stored vectors.
#[derive(Debug, Clone, Copy)]
pub struct VectorSimilarity<'a> {
    pub store: &'a VectorStore,
    pub metric: Metric,
    pub euclid_k: u32,
}

impl SimilaritySource for VectorSimilarity<'_> {
    fn similarity(&self, a: &AxiomId, b: &AxiomId) -> Result<f64, ScoringError> {
        let (va, vb) = (self.store.get(a)?, self.store.get(b)?);
        Ok(match self.metric {
            Metric::Cos => sim_cos(va, vb),
            Metric::Euc => sim_euc(va, vb, self.euclid_k),
        })
    }

    fn metric(&self) -> Option<Metric> {
        Some(self.metric)
    }
}

/// Injected symmetric pairwise similarities. Identical ids have similarity 1.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct PairTable {
    pairs: BTreeMap<(AxiomId, AxiomId), f64>,
    metric: Option<Metric>,
}

impl PairTable {
    pub fn new(metric: Option<Metric>) -> Self {
        PairTable { pairs: BTreeMap::new(), metric }
    }

    pub fn insert(&mut self, a: AxiomId, b: AxiomId, s: f64) {
        let key = if a <= b { (a, b) } else { (b, a) };
        self.pairs.insert(key, s);
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }
}

impl SimilaritySource for PairTable {
    fn similarity(&self, a: &AxiomId, b: &AxiomId) -> Result<f64, ScoringError> {
        if a == b {
            return Ok(1.0);
        }
        let key = if a <= b { (a.clone(), b.clone()) } else { (b.clone(), a.clone()) };
        self.pairs.get(&key).copied().ok_or_else(|| ScoringError::MissingPair(key.0.to_string(), key.1.to_string()))
    }

    fn metric(&self) -> Option<Metric> {
        self.metric
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimilarityParams {
    pub threshold: f64,
    pub euclid_k: u32,
    /// Leave `α` out of the set it is compared against.
    pub exclude_self: bool,
}

impl SimilarityParams {
    pub fn validate(&self) -> Result<(), ScoringError> {
        if !(0.0..=1.0).contains(&self.threshold) {
            return Err(ScoringError::Params("threshold must lie in [0, 1]"));
        }
        if self.euclid_k == 0 {
            return Err(ScoringError::Params("euclid_k must be at least 1"));
        }
        Ok(())
    }
}

impl Default for SimilarityParams {
    fn default() -> Self {
        SimilarityParams { threshold: 0.5, euclid_k: 15, exclude_self: false }
    }
}

/// Smoothed thresholded mean similarity between `alpha` and the members of
/// `set`: with `S'` the members at similarity `>= t`, returns
/// `Σ_{β∈S'} sim(α, β) / (|S'| + 1)`.
pub fn set_axiom_similarity<'a, I>(
    set: I,
    alpha: &AxiomId,
    params: &SimilarityParams,
    source: &dyn SimilaritySource,
) -> Result<f64, ScoringError>
where
    I: IntoIterator<Item = &'a AxiomId>,
{
    let mut sum = 0.0;
    let mut count = 0usize;
    for beta in set {
        if params.exclude_self && beta == alpha {
            continue;
        }
        let s = source.similarity(alpha, beta)?;
        if s >= params.threshold {
            sum += s;
            count += 1;
        }
    }
    Ok(sum / (count as f64 + 1.0))
}

/// Axiom selection strategy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Strategy {
    /// Hitting set over whole conflict sets; no scoring.
    ExBase,
    /// Number of conflict sets containing the axiom.
    ExScore,
    /// `Σ 1/|M|` over conflict sets `M` containing the axiom.
    ExShapley,
    /// Reference counts of the axiom's entities in the reliable ontology.
    ExSig,
    MipsUnion,
    Mips,
    RebuttalOnt,
    ReliableOnt,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    PickMax,
    PickMin,
}

impl Strategy {
    pub const ALL: [Strategy; 8] = [
        Strategy::ExBase,
        Strategy::ExScore,
        Strategy::ExShapley,
        Strategy::ExSig,
        Strategy::MipsUnion,
        Strategy::Mips,
        Strategy::RebuttalOnt,
        Strategy::ReliableOnt,
    ];

    pub fn direction(self) -> Direction {
        match self {
            Strategy::ReliableOnt | Strategy::ExSig => Direction::PickMin,
            _ => Direction::PickMax,
        }
    }

    pub fn uses_similarity(self) -> bool {
        matches!(self, Strategy::MipsUnion | Strategy::Mips | Strategy::RebuttalOnt | Strategy::ReliableOnt)
    }

    pub fn name(self) -> &'static str {
        match self {
            Strategy::ExBase => "ex-base",
            Strategy::ExScore => "ex-score",
            Strategy::ExShapley => "ex-shapley",
            Strategy::ExSig => "ex-sig",
            Strategy::MipsUnion => "mipsUnion",
            Strategy::Mips => "mips",
            Strategy::RebuttalOnt => "rebuttalOnt",
            Strategy::ReliableOnt => "reliableOnt",
        }
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Strategy {
    type Err = ScoringError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Strategy::ALL.into_iter().find(|st| st.name() == s).ok_or_else(|| ScoringError::UnknownStrategy(s.into()))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScoreTable {
    pub entries: BTreeMap<AxiomId, f64>,
    pub strategy: Strategy,
    pub similarity: Option<Metric>,
    pub direction: Direction,
}

impl ScoreTable {
    pub fn get(&self, id: &AxiomId) -> Option<f64> {
        self.entries.get(id).copied()
    }
}

/// Strategy plus whatever it needs to score.
#[derive(Clone, Copy)]
pub struct ScoringConfig<'a> {
    pub strategy: Strategy,
    pub similarity: Option<&'a dyn SimilaritySource>,
    pub params: SimilarityParams,
}

impl<'a> ScoringConfig<'a> {
    pub fn counting(strategy: Strategy) -> Self {
        ScoringConfig { strategy, similarity: None, params: SimilarityParams::default() }
    }

    pub fn with_similarity(strategy: Strategy, source: &'a dyn SimilaritySource, params: SimilarityParams) -> Self {
        ScoringConfig { strategy, similarity: Some(source), params }
    }
}

impl fmt::Debug for ScoringConfig<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ScoringConfig")
            .field("strategy", &self.strategy)
            .field("metric", &self.similarity.and_then(|s| s.metric()))
            .field("params", &self.params)
            .finish()
    }
}

/// Scores every axiom in the union of `mips`.
pub fn score_axioms(
    rebuttal: &Ontology,
    reliable: &Ontology,
    mips: &[ConflictSet],
    cfg: &ScoringConfig<'_>,
) -> Result<ScoreTable, ScoringError> {
    let strategy = cfg.strategy;
    if strategy == Strategy::ExBase {
        return Err(ScoringError::NotScored(strategy));
    }
    if mips.is_empty() && matches!(strategy, Strategy::Mips | Strategy::MipsUnion) {
        return Err(ScoringError::EmptyFamily(strategy));
    }
    let union: BTreeSet<AxiomId> = mips.iter().flat_map(|m| m.axioms.iter().cloned()).collect();
    let mut entries = BTreeMap::new();

    if strategy.uses_similarity() {
        let source = cfg.similarity.ok_or(ScoringError::NoSimilarity(strategy))?;
        cfg.params.validate()?;
        let p = &cfg.params;
        let rebuttal_ids = rebuttal.ids();
        let reliable_ids = reliable.ids();
        for alpha in &union {
            let s = match strategy {
                Strategy::MipsUnion => set_axiom_similarity(&union, alpha, p, source)?,
                Strategy::Mips => {
                    let mut total = 0.0;
                    for m in mips {
                        total += set_axiom_similarity(&m.axioms, alpha, p, source)?;
                    }
                    total / mips.len() as f64
                }
                Strategy::RebuttalOnt => set_axiom_similarity(&rebuttal_ids, alpha, p, source)?,
                Strategy::ReliableOnt => set_axiom_similarity(&reliable_ids, alpha, p, source)?,
                _ => unreachable!(),
            };
            entries.insert(alpha.clone(), s);
        }
    } else {
        let ref_counts: BTreeMap<EntityId, usize> = match strategy {
            Strategy::ExSig => {
                let mut counts = BTreeMap::new();
                for beta in reliable {
                    for e in signature_of(beta) {
                        *counts.entry(e).or_insert(0) += 1;
                    }
                }
                counts
            }
            _ => BTreeMap::new(),
        };
        for alpha in &union {
            let s = match strategy {
                Strategy::ExScore => mips.iter().filter(|m| m.contains(alpha)).count() as f64,
                Strategy::ExShapley => mips.iter().filter(|m| m.contains(alpha)).map(|m| 1.0 / m.len() as f64).sum(),
                Strategy::ExSig => {
                    // Rebuttal axioms outside `rebuttal` (e.g. fixtures) are
                    // looked up nowhere; their signature is unknown.
                    match rebuttal.get(alpha.as_str()) {
                        Some(a) => {
                            signature_of(a).iter().map(|e| ref_counts.get(e).copied().unwrap_or(0)).sum::<usize>()
                                as f64
                        }
                        None => 0.0,
                    }
                }
                _ => unreachable!(),
            };
            entries.insert(alpha.clone(), s);
        }
    }

    Ok(ScoreTable {
        entries,
        strategy,
        similarity: if strategy.uses_similarity() { cfg.similarity.and_then(|s| s.metric()) } else { None },
        direction: strategy.direction(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(x: &[f64]) -> Vector {
        Vector::new(x.to_vec())
    }

    fn id(s: &str) -> AxiomId {
        crate::syntax::parse_axiom(s).unwrap().id().clone()
    }

    #[test]
    fn cosine_values() {
        assert_eq!(sim_cos(&v(&[0.3, -2.0, 5.0]), &v(&[0.3, -2.0, 5.0])), 1.0);
        assert_eq!(sim_cos(&v(&[1.0, 0.0]), &v(&[0.0, 1.0])), 0.5);
        assert_eq!(sim_cos(&v(&[1.0, 0.0]), &v(&[-1.0, 0.0])), 0.0);
        assert_eq!(sim_cos(&v(&[0.0, 0.0]), &v(&[1.0, 0.0])), 0.5);
    }

    #[test]
    fn euclidean_values() {
        assert_eq!(sim_euc(&v(&[1.0, 2.0]), &v(&[1.0, 2.0]), 15), 1.0);
        assert_eq!(sim_euc(&v(&[3.0, 4.0]), &v(&[0.0, 0.0]), 15), 0.75);
        let (a, b) = (v(&[1.0, 2.0]), v(&[-1.0, 0.5]));
        assert!(sim_euc(&a, &b, 30) > sim_euc(&a, &b, 15));
    }

    #[test]
    fn set_similarity_smoothing() {
        let alpha = id("SubClassOf(X Y)");
        let others = [id("SubClassOf(A B)"), id("SubClassOf(C D)"), id("SubClassOf(E F)")];
        let mut t = PairTable::new(Some(Metric::Cos));
        for (o, s) in others.iter().zip([0.81, 0.78, 0.74]) {
            t.insert(alpha.clone(), o.clone(), s);
        }
        let p = SimilarityParams::default();
        let got = set_axiom_similarity(&others, &alpha, &p, &t).unwrap();
        assert!((got - 0.5825).abs() < 1e-12);

        let strict = SimilarityParams { threshold: 0.9, ..p };
        assert_eq!(set_axiom_similarity(&others, &alpha, &strict, &t).unwrap(), 0.0);
    }

    #[test]
    fn missing_pair_is_named() {
        let t = PairTable::new(None);
        let err = t.similarity(&id("SubClassOf(A B)"), &id("SubClassOf(C D)")).unwrap_err();
        assert!(matches!(err, ScoringError::MissingPair(..)));
    }

    #[test]
    fn strategy_names_round_trip() {
        for s in Strategy::ALL {
            assert_eq!(s.name().parse::<Strategy>().unwrap(), s);
        }
        assert!("bogus".parse::<Strategy>().is_err());
        assert_eq!(Strategy::ReliableOnt.direction(), Direction::PickMin);
        assert_eq!(Strategy::ExSig.direction(), Direction::PickMin);
        assert_eq!(Strategy::Mips.direction(), Direction::PickMax);
    }

    #[test]
    fn counting_strategies() {
        let (a, b, c) = (id("SubClassOf(A B)"), id("SubClassOf(B C)"), id("SubClassOf(C D)"));
        let k: Ontology = ["SubClassOf(A B)", "SubClassOf(B C)", "SubClassOf(C D)"]
            .iter()
            .map(|s| crate::syntax::parse_axiom(s).unwrap())
            .collect();
        let fam = [ConflictSet::new([a.clone(), b.clone()], None), ConflictSet::new([a.clone(), c.clone()], None)];
        let t = score_axioms(&k, &Ontology::new(), &fam, &ScoringConfig::counting(Strategy::ExScore)).unwrap();
        assert_eq!((t.get(&a), t.get(&b), t.get(&c)), (Some(2.0), Some(1.0), Some(1.0)));

        let fam =
            [ConflictSet::new([a.clone(), b.clone()], None), ConflictSet::new([a.clone(), b.clone(), c.clone()], None)];
        let t = score_axioms(&k, &Ontology::new(), &fam, &ScoringConfig::counting(Strategy::ExShapley)).unwrap();
        assert!((t.get(&a).unwrap() - 5.0 / 6.0).abs() < 1e-15);
        assert!((t.get(&b).unwrap() - 5.0 / 6.0).abs() < 1e-15);
        assert!((t.get(&c).unwrap() - 1.0 / 3.0).abs() < 1e-15);

        let k0: Ontology = ["SubClassOf(B E)", "SubClassOf(E B)", "DisjointClasses(A Z)"]
            .iter()
            .map(|s| crate::syntax::parse_axiom(s).unwrap())
            .collect();
        let t = score_axioms(&k, &k0, &fam, &ScoringConfig::counting(Strategy::ExSig)).unwrap();
        // A: 1 (DisjointClasses), B: 2 → 3; B: 2, C: 0 → 2; C, D: 0.
        assert_eq!((t.get(&a), t.get(&b), t.get(&c)), (Some(3.0), Some(2.0), Some(0.0)));
        assert_eq!(t.direction, Direction::PickMin);
    }

    #[test]
    fn ex_base_is_not_scored() {
        let err = score_axioms(&Ontology::new(), &Ontology::new(), &[], &ScoringConfig::counting(Strategy::ExBase));
        assert_eq!(err.unwrap_err(), ScoringError::NotScored(Strategy::ExBase));
    }

    #[test]
    fn fallback_embedding_basics() {
        let a = fallback_embed("every master student is a student", 64, 7);
        assert_eq!(a, fallback_embed("every master student is a student", 64, 7));
        assert!((a.norm() - 1.0).abs() < 1e-12);
        assert_eq!(fallback_embed("", 64, 7), Vector::zeros(64));
        assert_eq!(fallback_embed(" ,; ", 16, 0), Vector::zeros(16));
        assert_ne!(a, fallback_embed("every master student is a student", 64, 8));
    }

    #[test]
    fn fnv_reference_value() {
        // FNV-1a 64 of the empty string is the offset basis; one zero seed
        // block perturbs it deterministically.
        let mut h = FNV_OFFSET;
        for _ in 0..8 {
            h = h.wrapping_mul(FNV_PRIME);
        }
        assert_eq!(fnv1a(0, b""), h);
    }
}
