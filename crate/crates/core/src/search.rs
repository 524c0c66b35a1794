//! Seeded randomized search over first rows (and λ, x, y, X, c) of the
//! constructions.
//!
//! Trial `i` draws its candidate from ChaCha8 (`rand_chacha` 0.3) seeded with
//! the configured seed and switched to stream `i`. Streams are disjoint, so a
//! trial's candidate does not depend on how trials are spread over workers,
//! and outcomes are merged in trial order. Candidates go through a reject
//! ladder: construction hypotheses, then generator-row weights, then a
//! truncated enumeration. Only persisted hits get a full enumeration.

use std::collections::BTreeSet;
use std::io::Write;
use std::path::PathBuf;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::circulant::{build, CirculantSpec, RingMatrix};
use crate::codec::{parse_element, read_records, serialize_record};
use crate::constructions::{
    bordered_four_circulant, extend, four_circulant_classic, gram_sum, modified_blocks,
    modified_four_circulant, Analysis, CodeRecord, Construction,
};
use crate::error::{Error, Result};
use crate::rings::{Alphabet, RingElement, RingVector};
use crate::weightdist::{
    classify, distance_bound, Enumerator, EnumeratorClass, Family, WeightProfile, MAX_DIMENSION,
};

/// Units λ may be drawn from: the keyword `"all"` or a list of elements.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum LambdaPool {
    Keyword(String),
    Units(Vec<String>),
}

impl Default for LambdaPool {
    fn default() -> Self {
        LambdaPool::Keyword("all".into())
    }
}

impl LambdaPool {
    pub fn resolve(&self, alphabet: Alphabet) -> Result<Vec<RingElement>> {
        let units = match self {
            LambdaPool::Keyword(k) if k == "all" => alphabet.units().collect(),
            LambdaPool::Keyword(k) => {
                return Err(Error::ConfigInvalid(format!(
                    "lambda_pool must be \"all\" or a list, got {k:?}"
                )))
            }
            LambdaPool::Units(list) => list
                .iter()
                .map(|s| {
                    let e = parse_element(alphabet, s)?;
                    if e.is_unit() {
                        Ok(e)
                    } else {
                        Err(Error::NonUnitLambda(e.to_string()))
                    }
                })
                .collect::<Result<Vec<_>>>()?,
        };
        if units.is_empty() {
            return Err(Error::ConfigInvalid("lambda_pool is empty".into()));
        }
        Ok(units)
    }
}

/// Parameters a hit must have. Empty β or γ sets accept any value.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Target {
    pub family: Family,
    #[serde(default)]
    pub beta: BTreeSet<i64>,
    #[serde(default)]
    pub gamma: BTreeSet<i64>,
}

impl Target {
    pub fn matches(&self, class: &EnumeratorClass) -> bool {
        let in_set = |set: &BTreeSet<i64>, v: Option<i64>| {
            set.is_empty() || v.is_some_and(|v| set.contains(&v))
        };
        class.family == self.family
            && !class.ambiguous
            && in_set(&self.beta, class.beta)
            && in_set(&self.gamma, class.gamma)
    }
}

fn one() -> usize {
    1
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SearchConfig {
    pub alphabet: Alphabet,
    pub construction: Construction,
    /// Block order; for extensions, the length of the parent over the
    /// alphabet.
    pub n: usize,
    #[serde(default)]
    pub lambda_pool: LambdaPool,
    pub trials: u64,
    pub seed: u64,
    #[serde(default)]
    pub target: Option<Target>,
    /// Enumeration cutoff for classification; defaults to the distance bound
    /// plus two.
    #[serde(default)]
    pub w_max: Option<usize>,
    #[serde(default = "one")]
    pub workers: usize,
    /// Record file whose first record is the parent of an extension search.
    #[serde(default)]
    pub parent: Option<PathBuf>,
}

impl SearchConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::ConfigInvalid(e.to_string()))
    }

    /// Binary length and dimension of the codes this search produces.
    fn binary_shape(&self) -> (usize, usize) {
        let ring_len = match self.construction {
            Construction::Bordered => 4 * self.n + 4,
            Construction::Extension => self.n + 2,
            _ => 4 * self.n,
        };
        let n = ring_len * self.alphabet.width();
        (n, n / 2)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::ConfigInvalid(m));
        if self.trials == 0 {
            return bad("trials must be at least 1".into());
        }
        if self.workers == 0 {
            return bad("workers must be at least 1".into());
        }
        if self.n == 0 {
            return bad("n must be at least 1".into());
        }
        match self.construction {
            Construction::FourCirculant | Construction::Modified => {}
            Construction::Bordered => {
                if self.n.is_multiple_of(2) {
                    return bad(format!("bordered search needs odd n, got {}", self.n));
                }
            }
            Construction::Extension => {
                if self.parent.is_none() {
                    return bad("extension search needs a parent record file".into());
                }
            }
            other => return bad(format!("{other} is not a search construction")),
        }
        let (n, k) = self.binary_shape();
        if k > MAX_DIMENSION {
            return bad(format!(
                "binary dimension {k} (length {n}) exceeds {MAX_DIMENSION}"
            ));
        }
        if self.w_max.is_some_and(|w| w < distance_bound(n)) {
            return bad(format!(
                "w_max below the distance bound {}",
                distance_bound(n)
            ));
        }
        self.lambda_pool.resolve(self.alphabet)?;
        Ok(())
    }

    fn cutoff(&self) -> usize {
        let (n, _) = self.binary_shape();
        self.w_max.unwrap_or(distance_bound(n) + 2)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SearchReport {
    pub attempted: u64,
    pub condition_passed: u64,
    pub self_dual_built: u64,
    pub extremal_found: u64,
    /// Distinct (class, truncated histogram) pairs among extremal codes.
    pub distinct_profiles: u64,
    pub hits: Vec<CodeRecord>,
}

enum Outcome {
    Rejected,
    ConditionOnly,
    Built,
    Extremal {
        record: Box<CodeRecord>,
        profile: WeightProfile,
        class: Option<EnumeratorClass>,
    },
}

struct Searcher {
    config: SearchConfig,
    lambdas: Vec<RingElement>,
    parent: Option<CodeRecord>,
    bound: usize,
    cutoff: usize,
}

fn random_element(rng: &mut ChaCha8Rng, pool: &[RingElement]) -> RingElement {
    pool[rng.gen_range(0..pool.len())]
}

fn random_row(rng: &mut ChaCha8Rng, alphabet: Alphabet, len: usize) -> RingVector {
    let nibbles: Vec<u8> = (0..len)
        .map(|_| rng.gen_range(0..alphabet.size()))
        .collect();
    RingVector::from_nibbles(alphabet, &nibbles)
}

impl Searcher {
    fn new(config: &SearchConfig) -> Result<Self> {
        config.validate()?;
        let parent = match &config.parent {
            Some(path) if config.construction == Construction::Extension => {
                let text = std::fs::read_to_string(path).map_err(|e| {
                    Error::ConfigInvalid(format!("cannot read {}: {e}", path.display()))
                })?;
                let parent = read_records(&text)?.into_iter().next().ok_or_else(|| {
                    Error::ConfigInvalid(format!("{} holds no record", path.display()))
                })?;
                if parent.alphabet() != config.alphabet || parent.length() != config.n {
                    return Err(Error::ConfigInvalid(format!(
                        "parent is a length-{} {} code, config says length {} over {}",
                        parent.length(),
                        parent.alphabet(),
                        config.n,
                        config.alphabet
                    )));
                }
                Some(parent)
            }
            _ => None,
        };
        let (n, _) = config.binary_shape();
        Ok(Self {
            lambdas: config.lambda_pool.resolve(config.alphabet)?,
            parent,
            bound: distance_bound(n),
            cutoff: config.cutoff(),
            config: config.clone(),
        })
    }

    /// Draws the candidate of one trial and checks the construction
    /// hypotheses. `Ok(None)` when the hypotheses fail.
    fn candidate(&self, trial: u64) -> Result<Option<CodeRecord>> {
        let mut rng = ChaCha8Rng::seed_from_u64(self.config.seed);
        rng.set_stream(trial);
        let a = self.config.alphabet;
        let n = self.config.n;
        let units: Vec<RingElement> = a.units().collect();
        let non_units: Vec<RingElement> = a.elements().filter(|e| !e.is_unit()).collect();
        let built = match self.config.construction {
            Construction::FourCirculant => {
                let (r_a, r_b) = (random_row(&mut rng, a, n), random_row(&mut rng, a, n));
                let one = a.one();
                let ca = build(&CirculantSpec::circulant(r_a.clone(), one))?;
                let cb = build(&CirculantSpec::circulant(r_b.clone(), one))?;
                if gram_sum(&ca, &cb)? != RingMatrix::identity(a, n) {
                    return Ok(None);
                }
                four_circulant_classic(&r_a, &r_b)
            }
            Construction::Modified => {
                let lambda = random_element(&mut rng, &self.lambdas);
                let (r_a, r_b) = (random_row(&mut rng, a, n), random_row(&mut rng, a, n));
                let (ba, bb) = modified_blocks(&r_a, &r_b, lambda)?;
                if gram_sum(&ba, &bb)? != RingMatrix::identity(a, n) {
                    return Ok(None);
                }
                modified_four_circulant(&r_a, &r_b, lambda)
            }
            Construction::Bordered => {
                let x = random_element(&mut rng, &units);
                let y = random_element(&mut rng, &non_units);
                let (r_a, r_b) = (random_row(&mut rng, a, n), random_row(&mut rng, a, n));
                if r_a.sum() != r_b.sum() || !r_a.sum().is_unit() {
                    return Ok(None);
                }
                match bordered_four_circulant(&r_a, &r_b, x, y) {
                    Err(Error::ConditionFailed(_)) => return Ok(None),
                    other => other,
                }
            }
            Construction::Extension => {
                let parent = self.parent.as_ref().expect("validated extension parent");
                let involutions: Vec<RingElement> = units
                    .iter()
                    .copied()
                    .filter(|c| c.square() == a.one())
                    .collect();
                let c = random_element(&mut rng, &involutions);
                let x = random_row(&mut rng, a, n);
                if x.inner_product(&x)? != a.one() {
                    return Ok(None);
                }
                extend(parent, &x, c)
            }
            other => unreachable!("{other} rejected by validate"),
        };
        built.map(Some)
    }

    fn run_trial(&self, trial: u64) -> Result<Outcome> {
        let record = match self.candidate(trial)? {
            None => return Ok(Outcome::Rejected),
            Some(r) => r,
        };
        let g = record.binary_generator();
        if !g.is_self_dual()? {
            return Ok(Outcome::ConditionOnly);
        }
        if g.row_vectors().iter().any(|r| r.weight() < self.bound) {
            return Ok(Outcome::Built);
        }
        let profile = Enumerator::new(&g)?.truncated(self.cutoff, 1);
        if profile.histogram[1..self.bound].iter().any(|&c| c != 0) {
            return Ok(Outcome::Built);
        }
        let class = match classify(&profile) {
            Ok(c) => Some(c),
            Err(Error::UnsupportedLength(_)) | Err(Error::MissingWeights(_)) => None,
            Err(e) => return Err(e),
        };
        Ok(Outcome::Extremal {
            record: Box::new(record.with_seed(self.config.seed, trial)),
            profile,
            class,
        })
    }
}

const BATCH_PER_WORKER: u64 = 64;

/// Runs the search, writing each new hit to `store` as one JSON line.
pub fn run_search<W: Write>(config: &SearchConfig, store: &mut W) -> Result<SearchReport> {
    let searcher = Searcher::new(config)?;
    let workers = config.workers;
    let mut report = SearchReport::default();
    let mut seen_profiles = BTreeSet::new();
    let mut seen_hits = BTreeSet::new();
    let batch = BATCH_PER_WORKER * workers as u64;
    let mut start = 0;
    while start < config.trials {
        let end = (start + batch).min(config.trials);
        let mut outcomes: Vec<(u64, Result<Outcome>)> = if workers == 1 {
            (start..end).map(|t| (t, searcher.run_trial(t))).collect()
        } else {
            std::thread::scope(|s| {
                let handles: Vec<_> = (0..workers as u64)
                    .map(|w| {
                        let searcher = &searcher;
                        s.spawn(move || {
                            (start + w..end)
                                .step_by(workers)
                                .map(|t| (t, searcher.run_trial(t)))
                                .collect::<Vec<_>>()
                        })
                    })
                    .collect();
                handles
                    .into_iter()
                    .flat_map(|h| h.join().expect("search worker panicked"))
                    .collect()
            })
        };
        outcomes.sort_by_key(|(t, _)| *t);
        for (_, outcome) in outcomes {
            report.attempted += 1;
            let (mut record, profile, class) = match outcome? {
                Outcome::Rejected => continue,
                Outcome::ConditionOnly => {
                    report.condition_passed += 1;
                    continue;
                }
                Outcome::Built => {
                    report.condition_passed += 1;
                    report.self_dual_built += 1;
                    continue;
                }
                Outcome::Extremal {
                    record,
                    profile,
                    class,
                } => (record, profile, class),
            };
            report.condition_passed += 1;
            report.self_dual_built += 1;
            report.extremal_found += 1;
            if seen_profiles.insert((class, profile.histogram.clone())) {
                report.distinct_profiles += 1;
            }
            let wanted = match (&config.target, &class) {
                (Some(t), Some(c)) => t.matches(c),
                (Some(_), None) => false,
                (None, _) => true,
            };
            if !wanted {
                continue;
            }
            let g = record.binary_generator();
            let full = Enumerator::new(&g)?.full(workers);
            let key = (
                g.cols(),
                class.map(|c| (c.family, c.beta, c.gamma)),
                full.histogram.clone(),
            );
            if !seen_hits.insert(key) {
                continue;
            }
            record.analysis = Some(Analysis {
                n: g.cols(),
                k: g.rows(),
                d: full.min_nonzero_weight(),
                class,
                profile: Some(full),
            });
            writeln!(store, "{}", serialize_record(&record, None))
                .map_err(|e| Error::ConfigInvalid(format!("cannot write record store: {e}")))?;
            report.hits.push(*record);
        }
        start = end;
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codec::parse_record;

    fn config(json: &str) -> SearchConfig {
        SearchConfig::from_json(json).unwrap()
    }

    #[test]
    fn zero_trials_rejected() {
        let c = config(r#"{"alphabet":"f2","construction":"modified","n":4,"trials":0,"seed":1}"#);
        assert!(matches!(c.validate(), Err(Error::ConfigInvalid(_))));
        assert!(matches!(
            run_search(&c, &mut Vec::new()),
            Err(Error::ConfigInvalid(_))
        ));
    }

    #[test]
    fn bad_configs_rejected() {
        for json in [
            r#"{"alphabet":"f2","construction":"bordered","n":4,"trials":1,"seed":1}"#,
            r#"{"alphabet":"f2","construction":"extension","n":4,"trials":1,"seed":1}"#,
            r#"{"alphabet":"f2","construction":"gray","n":4,"trials":1,"seed":1}"#,
            r#"{"alphabet":"r2","construction":"modified","n":8,"trials":1,"seed":1}"#,
            r#"{"alphabet":"f2","construction":"modified","n":4,"trials":1,"seed":1,"workers":0}"#,
            r#"{"alphabet":"f2","construction":"modified","n":4,"trials":1,"seed":1,"lambda_pool":"some"}"#,
        ] {
            assert!(
                matches!(config(json).validate(), Err(Error::ConfigInvalid(_))),
                "{json}"
            );
        }
        let c = config(
            r#"{"alphabet":"r1","construction":"modified","n":4,"trials":1,"seed":1,"lambda_pool":["u"]}"#,
        );
        assert!(matches!(c.validate(), Err(Error::NonUnitLambda(_))));
        assert!(SearchConfig::from_json(r#"{"alphabet":"f2"}"#).is_err());
    }

    #[test]
    fn same_seed_same_report() {
        let c =
            config(r#"{"alphabet":"r1","construction":"modified","n":4,"trials":300,"seed":11}"#);
        let (mut s1, mut s2) = (Vec::new(), Vec::new());
        let r1 = run_search(&c, &mut s1).unwrap();
        let r2 = run_search(&c, &mut s2).unwrap();
        assert_eq!(r1, r2);
        assert_eq!(s1, s2);
        assert!(r1.condition_passed > 0);
        assert!(r1.attempted == 300);
    }

    #[test]
    fn worker_count_does_not_change_results() {
        let json = r#"{"alphabet":"f2","construction":"modified","n":8,"trials":400,"seed":5}"#;
        let mut c = config(json);
        let mut s1 = Vec::new();
        let r1 = run_search(&c, &mut s1).unwrap();
        c.workers = 3;
        let mut s3 = Vec::new();
        let r3 = run_search(&c, &mut s3).unwrap();
        assert_eq!(r1, r3);
        assert_eq!(s1, s3);
    }

    #[test]
    fn counters_are_ordered_and_hits_replay() {
        let c =
            config(r#"{"alphabet":"f2","construction":"modified","n":8,"trials":2000,"seed":3}"#);
        let mut store = Vec::new();
        let r = run_search(&c, &mut store).unwrap();
        assert!(r.attempted >= r.condition_passed);
        assert!(r.condition_passed >= r.self_dual_built);
        assert!(r.self_dual_built >= r.extremal_found);
        assert!(r.extremal_found >= r.distinct_profiles);
        assert!(r.distinct_profiles >= 1, "{r:?}");
        let text = String::from_utf8(store).unwrap();
        assert_eq!(text.lines().count(), r.hits.len());
        for (line, hit) in text.lines().zip(&r.hits) {
            let back = parse_record(line).unwrap();
            assert_eq!(back.generator, hit.generator);
            assert_eq!(back.analysis, hit.analysis);
            let d = hit.analysis.as_ref().unwrap().d.unwrap();
            assert_eq!(d, distance_bound(32));
        }
    }

    #[test]
    fn bordered_search_runs() {
        let c =
            config(r#"{"alphabet":"r1","construction":"bordered","n":3,"trials":500,"seed":2}"#);
        let r = run_search(&c, &mut Vec::new()).unwrap();
        assert!(r.self_dual_built > 0, "{r:?}");
    }

    #[test]
    fn extension_search_runs() {
        let r1 = |s: &str| crate::codec::parse_row(Alphabet::R1, s).unwrap();
        let parent = bordered_four_circulant(
            &r1("u011u1u"),
            &r1("0001uuu"),
            Alphabet::R1.one(),
            RingElement::new(Alphabet::R1, 2),
        )
        .unwrap();
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("parent.jsonl");
        std::fs::write(&path, serialize_record(&parent, None)).unwrap();
        let json = format!(
            r#"{{"alphabet":"r1","construction":"extension","n":32,"trials":24,"seed":2,"parent":{:?}}}"#,
            path
        );
        let mut out = Vec::new();
        let r = run_search(&config(&json), &mut out).unwrap();
        assert!(r.self_dual_built > 0, "{r:?}");
        for hit in &r.hits {
            assert_eq!(hit.length(), 34);
            assert_eq!(hit.analysis.as_ref().unwrap().d, Some(12));
        }
        let mut wrong = config(&json);
        wrong.n = 16;
        assert!(matches!(
            run_search(&wrong, &mut Vec::new()),
            Err(Error::ConfigInvalid(_))
        ));
    }
}
