//! Seeded planted-community generator.
//!
//! Users `c * community_size .. (c + 1) * community_size` form community
//! `c`. Event counts are Poisson with the configured means; endpoints are
//! uniform within their class, timestamps uniform over
//! `[start, start + time_span)` and sentiments drawn from the mix.

use std::collections::BTreeMap;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::Poisson;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{EdgeRecord, Sentiment, TemporalMultigraph, Timestamp, UserId};
use crate::ingest::{self, EdgeFormat};

#[derive(Copy, Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SentimentMix {
    pub positive: f64,
    pub neutral: f64,
    pub negative: f64,
}

impl SentimentMix {
    pub const ALL_POSITIVE: SentimentMix = SentimentMix {
        positive: 1.0,
        neutral: 0.0,
        negative: 0.0,
    };
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FixtureSpec {
    pub n_communities: usize,
    pub community_size: usize,
    /// Expected events per ordered pair of distinct users in one community.
    pub intra_event_rate: f64,
    /// Expected events per ordered pair of users in different communities.
    pub inter_event_rate: f64,
    /// Expected self-loops per user.
    pub self_loop_rate: f64,
    pub sentiment_mix: SentimentMix,
    /// Seconds.
    pub time_span: i64,
    #[serde(default)]
    pub start: Timestamp,
    pub rng_seed: u64,
}

impl FixtureSpec {
    /// Small planted graph: 4 communities of 8 users over 30 days.
    pub fn planted(rng_seed: u64) -> Self {
        FixtureSpec {
            n_communities: 4,
            community_size: 8,
            intra_event_rate: 1.5,
            inter_event_rate: 0.02,
            self_loop_rate: 1.0,
            sentiment_mix: SentimentMix {
                positive: 0.5,
                neutral: 0.3,
                negative: 0.2,
            },
            time_span: 30 * 86_400,
            start: 1_700_000_000,
            rng_seed,
        }
    }

    /// 2,000 users in 100 communities, about 51,700 expected events.
    pub fn desk_scale(rng_seed: u64) -> Self {
        FixtureSpec {
            n_communities: 100,
            community_size: 20,
            intra_event_rate: 1.25,
            inter_event_rate: 0.0008,
            self_loop_rate: 0.5,
            time_span: 90 * 86_400,
            ..FixtureSpec::planted(rng_seed)
        }
    }

    pub fn n_users(&self) -> usize {
        self.n_communities * self.community_size
    }

    pub fn from_toml_str(text: &str) -> Result<Self> {
        let spec: FixtureSpec = toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        spec.validate()?;
        Ok(spec)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_toml_str(&text).map_err(|e| Error::Config(format!("{}: {e}", path.display())))
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::Config(msg));
        if self.n_communities == 0 || self.community_size == 0 {
            return bad("fixture needs at least one community of one user".into());
        }
        for (name, r) in [
            ("intra_event_rate", self.intra_event_rate),
            ("inter_event_rate", self.inter_event_rate),
            ("self_loop_rate", self.self_loop_rate),
        ] {
            if !(r >= 0.0 && r.is_finite()) {
                return bad(format!("{name} must be a non-negative number, got {r}"));
            }
        }
        if self.community_size < 2 && self.intra_event_rate > 0.0 {
            return bad("intra-community events need communities of at least 2 users".into());
        }
        if self.n_communities < 2 && self.inter_event_rate > 0.0 {
            return bad("inter-community events need at least 2 communities".into());
        }
        let m = self.sentiment_mix;
        let parts = [m.positive, m.neutral, m.negative];
        if parts.iter().any(|p| !(*p >= 0.0)) || ((parts.iter().sum::<f64>()) - 1.0).abs() > 1e-9 {
            return bad(format!("sentiment_mix must be non-negative and sum to 1, got {parts:?}"));
        }
        if self.time_span < 1 {
            return bad(format!("time_span must be positive, got {}", self.time_span));
        }
        Ok(())
    }
}

pub struct Fixture {
    pub graph: TemporalMultigraph,
    /// External user id to planted community.
    pub membership: BTreeMap<u64, usize>,
}

impl Fixture {
    /// Members of community `c` that appear in the graph.
    pub fn community(&self, c: usize) -> Vec<UserId> {
        self.membership
            .iter()
            .filter(|&(_, &cc)| cc == c)
            .filter_map(|(&ext, _)| self.graph.user_by_external(ext))
            .collect()
    }

    pub fn write_membership(&self, writer: impl Write) -> Result<()> {
        let mut w = csv::Writer::from_writer(writer);
        w.write_record(["user", "community"])?;
        for (user, community) in &self.membership {
            w.write_record([user.to_string(), community.to_string()])?;
        }
        w.flush().map_err(csv::Error::from)?;
        Ok(())
    }
}

fn poisson(rng: &mut ChaCha8Rng, mean: f64) -> u64 {
    if mean <= 0.0 {
        return 0;
    }
    Poisson::new(mean).expect("positive finite mean").sample(rng) as u64
}

pub fn generate(spec: &FixtureSpec) -> Result<Fixture> {
    spec.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.rng_seed);
    let size = spec.community_size as u64;
    let n = spec.n_users() as u64;
    let m = spec.sentiment_mix;
    let mix = WeightedIndex::new([m.positive, m.neutral, m.negative]).map_err(|e| Error::Config(e.to_string()))?;
    const CLASSES: [Sentiment; 3] = [Sentiment::Positive, Sentiment::Neutral, Sentiment::Negative];

    let mut pairs: Vec<(u64, u64)> = Vec::new();
    let intra_pairs = (size * (size - 1)) as f64;
    for c in 0..spec.n_communities as u64 {
        for _ in 0..poisson(&mut rng, spec.intra_event_rate * intra_pairs) {
            let a = rng.random_range(0..size);
            let mut b = rng.random_range(0..size - 1);
            if b >= a {
                b += 1;
            }
            pairs.push((c * size + a, c * size + b));
        }
    }
    let cross_pairs = (n * (n - 1)) as f64 - spec.n_communities as f64 * intra_pairs;
    for _ in 0..poisson(&mut rng, spec.inter_event_rate * cross_pairs) {
        loop {
            let (a, b) = (rng.random_range(0..n), rng.random_range(0..n));
            if a / size != b / size {
                pairs.push((a, b));
                break;
            }
        }
    }
    for _ in 0..poisson(&mut rng, spec.self_loop_rate * n as f64) {
        let u = rng.random_range(0..n);
        pairs.push((u, u));
    }

    let records: Vec<EdgeRecord> = pairs
        .into_iter()
        .map(|(src, dst)| EdgeRecord {
            src,
            dst,
            timestamp: spec.start + rng.random_range(0..spec.time_span),
            sentiment: CLASSES[mix.sample(&mut rng)],
        })
        .collect();
    let membership = (0..n).map(|u| (u, (u / size) as usize)).collect();
    Ok(Fixture {
        graph: TemporalMultigraph::from_records(records),
        membership,
    })
}

pub fn export(g: &TemporalMultigraph, path: impl AsRef<Path>, format: EdgeFormat) -> Result<()> {
    ingest::export(g, path, format)
}

/// Path of the membership file written next to an edge file:
/// `edges.csv` gives `edges.membership.csv`.
pub fn membership_path(edges: &Path) -> PathBuf {
    let stem = edges.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    edges.with_file_name(format!("{stem}.membership.csv"))
}

/// Writes the edge file and its membership file; returns the latter's path.
pub fn write_fixture(fixture: &Fixture, path: impl AsRef<Path>, format: EdgeFormat) -> Result<PathBuf> {
    let path = path.as_ref();
    export(&fixture.graph, path, format)?;
    let members = membership_path(path);
    let file = File::create(&members).map_err(|e| Error::io(&members, e))?;
    let mut out = BufWriter::new(file);
    fixture.write_membership(&mut out)?;
    out.flush().map_err(|e| Error::io(&members, e))?;
    Ok(members)
}
