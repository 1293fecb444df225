//! Psychology-informed cohesiveness measures of a community.
//!
//! Three measures are scored per member and averaged over all members
//! (inactive members contribute zero):
//!
//! * **EI**, enjoyment index: decayed elicited sentiment of a member's
//!   interactions with other members.
//! * **SIT**, sentimental interaction tendency: accumulated pair sentiment
//!   summed over the partners the member interacts with in both directions.
//! * **CED**, comparative enjoyment degree: EI minus the same quantity over
//!   the member's interactions with non-members.
//!
//! Two are group-level counts:
//!
//! * **GIP**, interaction preference: share of community events that are
//!   interactions rather than self-loops.
//! * **GID**, interaction density: interactions per ordered member pair,
//!   optionally per observation-window unit.
//!
//! Only events with `t <= t_cur` are considered.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::decay::DecaySpec;
use crate::dynamics::{decayed_elicited_sum, scope_events, ExcitationConfig, Scope};
use crate::error::{Error, Result};
use crate::graph::{Community, Event, TemporalMultigraph, Timestamp, UserId};

/// Observation window: `W = (t_cur - start) / unit`.
#[derive(Copy, Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Window {
    pub start: Timestamp,
    /// Length of one time unit in seconds.
    pub unit: f64,
}

impl Window {
    pub fn length(&self, t_cur: Timestamp) -> Result<f64> {
        let w = (t_cur - self.start) as f64 / self.unit;
        if w > 0.0 && w.is_finite() {
            Ok(w)
        } else {
            Err(Error::Config(format!(
                "observation window must be positive (start {}, unit {}, t_cur {t_cur})",
                self.start, self.unit
            )))
        }
    }
}

#[derive(Copy, Clone, Debug, Default, PartialEq)]
pub struct PsychConfig {
    pub excitation: ExcitationConfig,
    pub window: Option<Window>,
}

#[derive(Copy, Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct UserScores {
    pub user: UserId,
    pub ei: f64,
    pub sit: f64,
    pub ced: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PsychScores {
    pub ei: f64,
    pub sit: f64,
    pub ced: f64,
    pub gip: f64,
    /// `None` for single-member communities.
    pub gid: Option<f64>,
    /// Set when the community has no events by `t_cur` and `gip` was
    /// defined as 0.
    pub gip_empty: bool,
    pub per_user: Vec<UserScores>,
    pub t_cur: Timestamp,
    pub lambda0: f64,
    pub decay: DecaySpec,
    pub window: Option<Window>,
}

fn mean(values: impl Iterator<Item = f64>, n: usize) -> f64 {
    if n == 0 {
        return 0.0;
    }
    values.sum::<f64>() / n as f64
}

pub fn ei_user(
    g: &TemporalMultigraph,
    community: &Community,
    i: UserId,
    t_cur: Timestamp,
    cfg: &ExcitationConfig,
) -> Result<f64> {
    let events = scope_events(g, community, Scope::UserInside(i), t_cur)?;
    Ok(decayed_elicited_sum(cfg, events.iter().copied(), t_cur))
}

pub fn ei(g: &TemporalMultigraph, community: &Community, t_cur: Timestamp, cfg: &ExcitationConfig) -> Result<f64> {
    let per_user = community
        .members()
        .iter()
        .map(|&i| ei_user(g, community, i, t_cur, cfg))
        .collect::<Result<Vec<_>>>()?;
    Ok(mean(per_user.into_iter(), community.size()))
}

/// Inside-scope events of `i`, grouped by partner, keeping partners that
/// sent and received at least one event.
fn mutual_partners<'g>(i: UserId, inside: &[&'g Event]) -> BTreeMap<UserId, Vec<&'g Event>> {
    let mut by_partner: BTreeMap<UserId, (Vec<&Event>, bool, bool)> = BTreeMap::new();
    for &e in inside {
        let j = e.partner_of(i).expect("inside scope excludes self-loops");
        let slot = by_partner.entry(j).or_default();
        slot.0.push(e);
        if e.src == i {
            slot.1 = true;
        } else {
            slot.2 = true;
        }
    }
    by_partner
        .into_iter()
        .filter(|(_, (_, sent, received))| *sent && *received)
        .map(|(j, (events, _, _))| (j, events))
        .collect()
}

pub fn sit_user(
    g: &TemporalMultigraph,
    community: &Community,
    i: UserId,
    t_cur: Timestamp,
    cfg: &ExcitationConfig,
) -> Result<f64> {
    let inside = scope_events(g, community, Scope::UserInside(i), t_cur)?;
    Ok(mutual_partners(i, &inside)
        .values()
        .map(|pair| decayed_elicited_sum(cfg, pair.iter().copied(), t_cur))
        .sum())
}

pub fn sit(g: &TemporalMultigraph, community: &Community, t_cur: Timestamp, cfg: &ExcitationConfig) -> Result<f64> {
    let per_user = community
        .members()
        .iter()
        .map(|&i| sit_user(g, community, i, t_cur, cfg))
        .collect::<Result<Vec<_>>>()?;
    Ok(mean(per_user.into_iter(), community.size()))
}

pub fn ced_user(
    g: &TemporalMultigraph,
    community: &Community,
    i: UserId,
    t_cur: Timestamp,
    cfg: &ExcitationConfig,
) -> Result<f64> {
    let inside = ei_user(g, community, i, t_cur, cfg)?;
    let outside = scope_events(g, community, Scope::UserOutside(i), t_cur)?;
    Ok(inside - decayed_elicited_sum(cfg, outside.iter().copied(), t_cur))
}

pub fn ced(g: &TemporalMultigraph, community: &Community, t_cur: Timestamp, cfg: &ExcitationConfig) -> Result<f64> {
    let per_user = community
        .members()
        .iter()
        .map(|&i| ced_user(g, community, i, t_cur, cfg))
        .collect::<Result<Vec<_>>>()?;
    Ok(mean(per_user.into_iter(), community.size()))
}

fn event_counts(g: &TemporalMultigraph, community: &Community, t_cur: Timestamp) -> (usize, usize) {
    community
        .events(g)
        .filter(|e| e.t <= t_cur)
        .fold((0, 0), |(all, inter), e| (all + 1, inter + usize::from(!e.is_self_loop())))
}

/// Interaction share of all community events; 0 when there are none.
pub fn gip(g: &TemporalMultigraph, community: &Community, t_cur: Timestamp) -> Result<f64> {
    community.check_parent(g)?;
    let (all, inter) = event_counts(g, community, t_cur);
    Ok(if all == 0 { 0.0 } else { inter as f64 / all as f64 })
}

/// Interactions per ordered member pair (per window unit when `window` is
/// given). `None` for communities with fewer than two members.
pub fn gid(
    g: &TemporalMultigraph,
    community: &Community,
    t_cur: Timestamp,
    window: Option<Window>,
) -> Result<Option<f64>> {
    community.check_parent(g)?;
    let n = community.size();
    if n < 2 {
        return Ok(None);
    }
    let (_, inter) = event_counts(g, community, t_cur);
    let w = match window {
        Some(w) => w.length(t_cur)?,
        None => 1.0,
    };
    Ok(Some(inter as f64 / (n as f64 * (n as f64 - 1.0) * w)))
}

/// All five measures with per-member breakdowns, in one pass over each
/// member's incident events.
pub fn measure(
    g: &TemporalMultigraph,
    community: &Community,
    t_cur: Timestamp,
    cfg: &PsychConfig,
) -> Result<PsychScores> {
    community.check_parent(g)?;
    let ex = &cfg.excitation;
    let mut per_user = Vec::with_capacity(community.size());
    let mut inside: Vec<&Event> = Vec::new();
    let mut outside: Vec<&Event> = Vec::new();
    for &i in community.members() {
        inside.clear();
        outside.clear();
        for e in g.incident_events(i).filter(|e| e.t <= t_cur) {
            match e.partner_of(i) {
                Some(j) if community.contains(j) => inside.push(e),
                Some(_) => outside.push(e),
                None => {}
            }
        }
        let ei_i = decayed_elicited_sum(ex, inside.iter().copied(), t_cur);
        let sit_i: f64 = mutual_partners(i, &inside)
            .values()
            .map(|pair| decayed_elicited_sum(ex, pair.iter().copied(), t_cur))
            .sum();
        let ced_i = ei_i - decayed_elicited_sum(ex, outside.iter().copied(), t_cur);
        per_user.push(UserScores {
            user: i,
            ei: ei_i,
            sit: sit_i,
            ced: ced_i,
        });
    }
    let n = community.size();
    let (all, _) = event_counts(g, community, t_cur);
    Ok(PsychScores {
        ei: mean(per_user.iter().map(|u| u.ei), n),
        sit: mean(per_user.iter().map(|u| u.sit), n),
        ced: mean(per_user.iter().map(|u| u.ced), n),
        gip: gip(g, community, t_cur)?,
        gid: gid(g, community, t_cur, cfg.window)?,
        gip_empty: all == 0,
        per_user,
        t_cur,
        lambda0: ex.lambda0,
        decay: ex.decay,
        window: cfg.window,
    })
}
