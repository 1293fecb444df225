//! Evaluation pipeline: sample queries, search each query under every
//! parameter combination, map found communities back onto the multigraph,
//! measure them and average.
//!
//! Searches for distinct jobs run on the rayon pool. Identical member sets
//! are measured once. Output order depends only on the plan and dataset.

use std::borrow::Cow;
use std::collections::HashMap;
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::decay::{DecaySpec, TIME_UNIT};
use crate::dynamics::ExcitationConfig;
use crate::error::{Error, Result};
use crate::graph::{
    induce, largest_weak_component, Community, SelfLoopDegree, TemporalMultigraph, Timestamp, UserId,
    DENSITY_CONVENTION,
};
use crate::ingest::read_edge_file;
use crate::psych::{self, PsychConfig, Window};
use crate::search::{Algorithm, GraphViews, NotFoundReason, Params, SearchOutcome, SearchRequest};
use crate::structural::{self, StructScores};

pub const DEFAULT_N_QUERIES: usize = 100;
pub const DEFAULT_TIME_BUDGET_SECS: u64 = 600;

#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum HitMode {
    /// A query hits when at least one combination returns a community.
    #[default]
    Any,
    /// A query hits only when every combination does.
    All,
}

#[derive(Copy, Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExcitationSection {
    pub lambda0: f64,
}

impl Default for ExcitationSection {
    fn default() -> Self {
        ExcitationSection { lambda0: 1.0 }
    }
}

/// One harness run. Loaded from TOML:
///
/// ```toml
/// dataset = "edges.csv"          # relative to the plan file
/// algorithm = "kl-core"          # max-core | kl-core | truss | st-truss
/// param_grid = [{ k = 1, l = 1 }, { k = 2, l = 2 }]
/// n_queries = 100
/// rng_seed = 42
/// t_cur = 1700000000             # optional, default: latest event
/// hit_mode = "any"               # any | all
/// largest_component = false
/// time_budget_secs = 600
///
/// [decay]
/// kind = "exponential"           # exponential | polynomial
/// rate = 0.0001
///
/// [excitation]
/// lambda0 = 1.0
///
/// [window]                       # optional; GID per window unit
/// start = 1690000000
/// unit = 86400.0
/// ```
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EvalPlan {
    pub dataset: PathBuf,
    pub algorithm: Algorithm,
    pub param_grid: Vec<Params>,
    #[serde(default = "default_n_queries")]
    pub n_queries: usize,
    pub rng_seed: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t_cur: Option<Timestamp>,
    #[serde(default)]
    pub hit_mode: HitMode,
    #[serde(default)]
    pub largest_component: bool,
    #[serde(default = "default_time_budget")]
    pub time_budget_secs: u64,
    #[serde(default)]
    pub decay: DecaySpec,
    #[serde(default)]
    pub excitation: ExcitationSection,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub window: Option<Window>,
}

fn default_n_queries() -> usize {
    DEFAULT_N_QUERIES
}

fn default_time_budget() -> u64 {
    DEFAULT_TIME_BUDGET_SECS
}

impl EvalPlan {
    pub fn new(dataset: impl Into<PathBuf>, algorithm: Algorithm, param_grid: Vec<Params>, rng_seed: u64) -> Self {
        EvalPlan {
            dataset: dataset.into(),
            algorithm,
            param_grid,
            n_queries: DEFAULT_N_QUERIES,
            rng_seed,
            t_cur: None,
            hit_mode: HitMode::Any,
            largest_component: false,
            time_budget_secs: DEFAULT_TIME_BUDGET_SECS,
            decay: DecaySpec::default(),
            excitation: ExcitationSection::default(),
            window: None,
        }
    }

    /// Parses and validates a plan. The dataset path is kept as written.
    pub fn from_toml_str(text: &str) -> Result<Self> {
        let plan: EvalPlan = toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        plan.validate()?;
        Ok(plan)
    }

    /// Reads a plan file. A relative dataset path is resolved against the
    /// plan's directory and must exist.
    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let mut plan: EvalPlan = toml::from_str(&text).map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
        if plan.dataset.is_relative() {
            if let Some(dir) = path.parent() {
                plan.dataset = dir.join(&plan.dataset);
            }
        }
        plan.validate()?;
        if !plan.dataset.exists() {
            return Err(Error::io(
                &plan.dataset,
                std::io::Error::from(std::io::ErrorKind::NotFound),
            ));
        }
        Ok(plan)
    }

    pub fn to_toml_string(&self) -> Result<String> {
        toml::to_string(self).map_err(|e| Error::Config(e.to_string()))
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_queries == 0 {
            return Err(Error::Config("n_queries must be at least 1".into()));
        }
        if self.param_grid.is_empty() {
            return Err(Error::Config("param_grid is empty".into()));
        }
        if self.time_budget_secs == 0 {
            return Err(Error::Config("time_budget_secs must be positive".into()));
        }
        for params in &self.param_grid {
            self.algorithm.validate_params(params)?;
        }
        if let Some(w) = self.window {
            if !(w.unit > 0.0 && w.unit.is_finite()) {
                return Err(Error::Config(format!("window unit must be positive, got {}", w.unit)));
            }
        }
        self.excitation_config().map(|_| ())
    }

    pub fn excitation_config(&self) -> Result<ExcitationConfig> {
        ExcitationConfig::new(self.excitation.lambda0, self.decay)
    }

    pub fn psych_config(&self) -> Result<PsychConfig> {
        Ok(PsychConfig {
            excitation: self.excitation_config()?,
            window: self.window,
        })
    }
}

/// Sampled query users.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuerySet {
    /// Ascending.
    pub queries: Vec<UserId>,
    /// Set when the candidate pool was smaller than the request.
    pub with_replacement: bool,
}

/// Users whose incidence degree reaches the top half (rounded up); every
/// user tied with the boundary degree is admitted.
pub fn query_pool(g: &TemporalMultigraph) -> Vec<UserId> {
    if g.is_empty() {
        return Vec::new();
    }
    let degree = |u| g.degree(u, SelfLoopDegree::Once);
    let mut sorted: Vec<usize> = g.users().map(degree).collect();
    sorted.sort_unstable_by(|a, b| b.cmp(a));
    let threshold = sorted[sorted.len().div_ceil(2) - 1];
    g.users().filter(|&u| degree(u) >= threshold).collect()
}

pub fn generate_queries(g: &TemporalMultigraph, n: usize, seed: u64) -> Result<QuerySet> {
    if g.is_empty() {
        return Err(Error::EmptyGraph);
    }
    let pool = query_pool(g);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let with_replacement = pool.len() < n;
    let mut queries: Vec<UserId> = if with_replacement {
        (0..n).map(|_| pool[rng.random_range(0..pool.len())]).collect()
    } else {
        index::sample(&mut rng, pool.len(), n).into_iter().map(|i| pool[i]).collect()
    };
    queries.sort_unstable();
    Ok(QuerySet {
        queries,
        with_replacement,
    })
}

/// Scores of one found community.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Measured {
    pub structural: StructScores,
    pub ei: f64,
    pub sit: f64,
    pub ced: f64,
    pub gip: f64,
    pub gid: Option<f64>,
    pub gip_empty: bool,
    pub n_members: usize,
    /// Community events with `t <= t_cur`.
    pub n_events: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum ComboOutcome {
    Found {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        note: Option<String>,
        scores: Measured,
    },
    NotFound {
        reason: NotFoundReason,
    },
}

impl ComboOutcome {
    pub fn scores(&self) -> Option<&Measured> {
        match self {
            ComboOutcome::Found { scores, .. } => Some(scores),
            ComboOutcome::NotFound { .. } => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComboRecord {
    pub params: Params,
    pub outcome: ComboOutcome,
}

/// Averaged scores. `d` is infinite when any averaged community was
/// disconnected.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Means {
    #[serde(with = "inf_f64")]
    pub d: f64,
    pub size: f64,
    pub deg_min: f64,
    pub core: f64,
    pub truss: f64,
    pub ei: f64,
    pub sit: f64,
    pub ced: f64,
    pub gip: f64,
    /// Over the averaged items where it is defined.
    pub gid: Option<f64>,
}

impl Means {
    fn average<'a>(items: impl Iterator<Item = &'a Means> + Clone) -> Option<Means> {
        let n = items.clone().count();
        if n == 0 {
            return None;
        }
        let avg = |f: fn(&Means) -> f64| items.clone().map(f).sum::<f64>() / n as f64;
        let gids: Vec<f64> = items.clone().filter_map(|m| m.gid).collect();
        Some(Means {
            d: avg(|m| m.d),
            size: avg(|m| m.size),
            deg_min: avg(|m| m.deg_min),
            core: avg(|m| m.core),
            truss: avg(|m| m.truss),
            ei: avg(|m| m.ei),
            sit: avg(|m| m.sit),
            ced: avg(|m| m.ced),
            gip: avg(|m| m.gip),
            gid: (!gids.is_empty()).then(|| gids.iter().sum::<f64>() / gids.len() as f64),
        })
    }
}

impl From<&Measured> for Means {
    fn from(m: &Measured) -> Self {
        let s = &m.structural;
        Means {
            d: s.diameter.as_f64(),
            size: s.size as f64,
            deg_min: s.deg_min as f64,
            core: s.core as f64,
            truss: s.truss as f64,
            ei: m.ei,
            sit: m.sit,
            ced: m.ced,
            gip: m.gip,
            gid: m.gid,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct QueryRecord {
    pub query: UserId,
    pub query_ext: u64,
    /// In plan grid order.
    pub combos: Vec<ComboRecord>,
    /// Over successful combinations only.
    pub mean: Option<Means>,
    pub hit: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunMetadata {
    pub n_users: usize,
    pub n_events: usize,
    pub t_cur: Timestamp,
    pub time_unit: String,
    pub density_convention: String,
    /// Set for searchers that approximate an exact method.
    pub heuristic_search: bool,
    pub queries_with_replacement: bool,
    pub version: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub plan: EvalPlan,
    pub metadata: RunMetadata,
    pub records: Vec<QueryRecord>,
    /// Mean of the per-query means over queries with a success.
    pub aggregate: Option<Means>,
    pub q_hit: f64,
    pub timed_out: bool,
}

/// Percentage of records flagged as hits; 0 for no records.
pub fn q_hit(records: &[QueryRecord]) -> f64 {
    if records.is_empty() {
        return 0.0;
    }
    100.0 * records.iter().filter(|r| r.hit).count() as f64 / records.len() as f64
}

/// Reads the plan's dataset.
pub fn load_dataset(plan: &EvalPlan) -> Result<TemporalMultigraph> {
    read_edge_file(&plan.dataset)
}

pub fn run(plan: &EvalPlan) -> Result<RunReport> {
    run_on_graph(plan, &load_dataset(plan)?)
}

/// As [`run`] on an already loaded graph; `plan.dataset` is only echoed.
pub fn run_on_graph(plan: &EvalPlan, g: &TemporalMultigraph) -> Result<RunReport> {
    let mut reports = evaluate(plan, g, &[plan.decay])?;
    Ok(reports.pop().expect("one decay in, one report out"))
}

/// One report per rate with the plan's decay kind. Queries, searches and
/// structural scores are shared; only the sentiment measures are redone.
pub fn sweep_decay(plan: &EvalPlan, rates: &[f64]) -> Result<Vec<RunReport>> {
    sweep_decay_on_graph(plan, &load_dataset(plan)?, rates)
}

pub fn sweep_decay_on_graph(plan: &EvalPlan, g: &TemporalMultigraph, rates: &[f64]) -> Result<Vec<RunReport>> {
    if rates.is_empty() {
        return Err(Error::Config("no decay rates to sweep".into()));
    }
    let decays = rates
        .iter()
        .map(|&rate| {
            DecaySpec {
                kind: plan.decay.kind,
                rate,
            }
            .validated()
        })
        .collect::<Result<Vec<_>>>()?;
    evaluate(plan, g, &decays)
}

fn evaluate(plan: &EvalPlan, g: &TemporalMultigraph, decays: &[DecaySpec]) -> Result<Vec<RunReport>> {
    plan.validate()?;
    let started = Instant::now();
    let deadline = started + Duration::from_secs(plan.time_budget_secs);
    let expired = || Instant::now() >= deadline;

    let g: Cow<TemporalMultigraph> = if plan.largest_component {
        Cow::Owned(largest_weak_component(g))
    } else {
        Cow::Borrowed(g)
    };
    let g = g.as_ref();
    if g.is_empty() {
        return Err(Error::EmptyGraph);
    }
    let t_cur = plan
        .t_cur
        .or_else(|| g.max_timestamp())
        .expect("non-empty graph has events");
    if let Some(w) = plan.window {
        w.length(t_cur)?;
    }
    let configs = decays
        .iter()
        .map(|&decay| {
            Ok(PsychConfig {
                excitation: ExcitationConfig::new(plan.excitation.lambda0, decay)?,
                window: plan.window,
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let qs = generate_queries(g, plan.n_queries, plan.rng_seed)?;
    if qs.with_replacement {
        log::warn!(
            "query pool smaller than {} queries; sampling with replacement",
            plan.n_queries
        );
    }

    let views = GraphViews::new(g);
    let n_combos = plan.param_grid.len();
    let outcomes: Vec<SearchOutcome> = (0..qs.queries.len() * n_combos)
        .into_par_iter()
        .map(|job| {
            if expired() {
                return Ok(SearchOutcome::NotFound(NotFoundReason::TimedOut));
            }
            views.search(&SearchRequest {
                query: qs.queries[job / n_combos],
                algorithm: plan.algorithm,
                params: plan.param_grid[job % n_combos].clone(),
            })
        })
        .collect::<Result<_>>()?;
    log::info!("searched {} jobs in {:?}", outcomes.len(), started.elapsed());

    // identical member sets are induced and measured once
    let mut slot_of: HashMap<&[UserId], usize> = HashMap::new();
    let mut unique: Vec<&[UserId]> = Vec::new();
    let job_slot: Vec<Option<usize>> = outcomes
        .iter()
        .map(|o| {
            o.members().map(|m| {
                *slot_of.entry(m).or_insert_with(|| {
                    unique.push(m);
                    unique.len() - 1
                })
            })
        })
        .collect();
    let communities: Vec<Community> = unique
        .par_iter()
        .map(|m| induce(g, m.iter().copied()))
        .collect::<Result<_>>()?;
    let structural: Vec<Option<(StructScores, usize)>> = communities
        .par_iter()
        .map(|c| {
            if expired() {
                return Ok(None);
            }
            let n_events = c.events(g).filter(|e| e.t <= t_cur).count();
            Ok(Some((structural::measure(g, c)?, n_events)))
        })
        .collect::<Result<_>>()?;

    let metadata = RunMetadata {
        n_users: g.n_users(),
        n_events: g.n_events(),
        t_cur,
        time_unit: TIME_UNIT.to_string(),
        density_convention: DENSITY_CONVENTION.to_string(),
        heuristic_search: plan.algorithm.is_heuristic(),
        queries_with_replacement: qs.with_replacement,
        version: env!("CARGO_PKG_VERSION").to_string(),
    };

    let mut reports = Vec::with_capacity(configs.len());
    for cfg in &configs {
        let measured: Vec<Option<Measured>> = communities
            .par_iter()
            .zip(&structural)
            .map(|(c, st)| {
                let Some((st, n_events)) = st else {
                    return Ok(None);
                };
                if expired() {
                    return Ok(None);
                }
                let p = psych::measure(g, c, t_cur, cfg)?;
                Ok(Some(Measured {
                    structural: st.clone(),
                    ei: p.ei,
                    sit: p.sit,
                    ced: p.ced,
                    gip: p.gip,
                    gid: p.gid,
                    gip_empty: p.gip_empty,
                    n_members: c.size(),
                    n_events: *n_events,
                }))
            })
            .collect::<Result<_>>()?;

        let mut timed_out = false;
        let records: Vec<QueryRecord> = qs
            .queries
            .iter()
            .enumerate()
            .map(|(qi, &query)| {
                let combos: Vec<ComboRecord> = (0..n_combos)
                    .map(|ci| {
                        let job = qi * n_combos + ci;
                        let outcome = match (&outcomes[job], job_slot[job]) {
                            (SearchOutcome::Found { note, .. }, Some(slot)) => match &measured[slot] {
                                Some(scores) => ComboOutcome::Found {
                                    note: note.map(str::to_string),
                                    scores: scores.clone(),
                                },
                                None => ComboOutcome::NotFound {
                                    reason: NotFoundReason::TimedOut,
                                },
                            },
                            (SearchOutcome::NotFound(reason), _) => ComboOutcome::NotFound { reason: *reason },
                            (SearchOutcome::Found { .. }, None) => unreachable!("found outcomes have a slot"),
                        };
                        timed_out |= outcome
                            == ComboOutcome::NotFound {
                                reason: NotFoundReason::TimedOut,
                            };
                        ComboRecord {
                            params: plan.param_grid[ci].clone(),
                            outcome,
                        }
                    })
                    .collect();
                let found: Vec<Means> = combos.iter().filter_map(|c| c.outcome.scores()).map(Means::from).collect();
                let hit = match plan.hit_mode {
                    HitMode::Any => !found.is_empty(),
                    HitMode::All => found.len() == combos.len(),
                };
                QueryRecord {
                    query,
                    query_ext: g.external_id(query),
                    combos,
                    mean: Means::average(found.iter()),
                    hit,
                }
            })
            .collect();

        if timed_out {
            log::warn!("time budget of {}s exhausted", plan.time_budget_secs);
        }
        let aggregate = Means::average(records.iter().filter_map(|r| r.mean.as_ref()));
        reports.push(RunReport {
            plan: EvalPlan {
                decay: cfg.excitation.decay,
                ..plan.clone()
            },
            metadata: metadata.clone(),
            q_hit: q_hit(&records),
            records,
            aggregate,
            timed_out,
        });
    }
    log::info!("run finished in {:?}", started.elapsed());
    Ok(reports)
}

/// `f64` that serializes infinity as the string `"INF"`.
mod inf_f64 {
    use serde::{Deserialize, Deserializer, Serializer};

    use crate::structural::INF;

    pub fn serialize<S: Serializer>(v: &f64, s: S) -> Result<S::Ok, S::Error> {
        if v.is_infinite() && *v > 0.0 {
            s.serialize_str(INF)
        } else {
            s.serialize_f64(*v)
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<f64, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(f64),
            Str(String),
        }
        match Raw::deserialize(d)? {
            Raw::Num(x) => Ok(x),
            Raw::Str(s) if s == INF => Ok(f64::INFINITY),
            Raw::Str(s) => Err(serde::de::Error::custom(format!("expected a number or {INF:?}, got {s:?}"))),
        }
    }
}
