//! Sentiment-aware excitation and elicited sentiment.
//!
//! Every prior event in a scope shifts the excitation of the current event
//! by `s_prev * s_cur * phi(t_cur_event - t_prev)`, starting from the base
//! level `lambda0` and clamped at zero. The elicited sentiment is the
//! current polarity times that excitation. Scoped sums weight each elicited
//! sentiment by its own age at the evaluation time.
//!
//! Events are sequenced by `(t, id)`: an event with the same timestamp but
//! a smaller id counts as history (at age zero).

use crate::decay::{DecayKind, DecaySpec};
use crate::error::{Error, Result};
use crate::graph::{Community, Event, TemporalMultigraph, Timestamp, UserId};

#[derive(Copy, Clone, Debug, PartialEq)]
pub struct ExcitationConfig {
    pub lambda0: f64,
    pub decay: DecaySpec,
}

impl Default for ExcitationConfig {
    fn default() -> Self {
        ExcitationConfig {
            lambda0: 1.0,
            decay: DecaySpec::default(),
        }
    }
}

impl ExcitationConfig {
    pub fn new(lambda0: f64, decay: DecaySpec) -> Result<Self> {
        if !(lambda0 > 0.0 && lambda0.is_finite()) {
            return Err(Error::Config(format!("lambda0 must be positive, got {lambda0}")));
        }
        Ok(ExcitationConfig {
            lambda0,
            decay: decay.validated()?,
        })
    }

    pub fn with_decay(decay: DecaySpec) -> Self {
        ExcitationConfig {
            decay,
            ..Default::default()
        }
    }
}

/// Which event set a history (and a scoped sum) ranges over.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Scope {
    /// A member's interactions with other members.
    UserInside(UserId),
    /// All interactions between two members, both directions.
    Pair(UserId, UserId),
    /// A member's interactions with non-members.
    UserOutside(UserId),
}

fn check_history(current: &Event, history: &[Event]) -> Result<()> {
    match history.iter().find(|h| !h.precedes(current)) {
        Some(h) => Err(Error::Contract(format!(
            "history event {} at t={} does not precede event {} at t={}",
            h.id, h.t, current.id, current.t
        ))),
        None => Ok(()),
    }
}

/// Excitation degree of `current` given its scoped history.
pub fn excitation(cfg: &ExcitationConfig, current: &Event, history: &[Event]) -> Result<f64> {
    check_history(current, history)?;
    let s = current.sentiment.value();
    let shift: f64 = history
        .iter()
        .map(|h| h.sentiment.value() * s * cfg.decay.phi_unchecked((current.t - h.t) as f64))
        .sum();
    Ok((cfg.lambda0 + shift).max(0.0))
}

pub fn elicited_sentiment(cfg: &ExcitationConfig, current: &Event, history: &[Event]) -> Result<f64> {
    Ok(current.sentiment.value() * excitation(cfg, current, history)?)
}

/// Scope events up to `t_cur`, in `(t, id)` order.
pub fn scope_events<'g>(
    g: &'g TemporalMultigraph,
    community: &Community,
    scope: Scope,
    t_cur: Timestamp,
) -> Result<Vec<&'g Event>> {
    community.check_parent(g)?;
    let (user, keep): (UserId, Box<dyn Fn(UserId) -> bool + '_>) = match scope {
        Scope::UserInside(i) => {
            community.check_member(i)?;
            (i, Box::new(|p| community.contains(p)))
        }
        Scope::UserOutside(i) => {
            community.check_member(i)?;
            (i, Box::new(|p| !community.contains(p)))
        }
        Scope::Pair(i, j) => {
            if i == j {
                return Err(Error::Contract(format!("pair scope needs two distinct users, got {i} twice")));
            }
            community.check_member(i)?;
            community.check_member(j)?;
            (i, Box::new(move |p| p == j))
        }
    };
    Ok(g.incident_events(user)
        .filter(|e| e.t <= t_cur)
        .filter(|e| e.partner_of(user).is_some_and(&keep))
        .collect())
}

/// Sum over `scope` of each event's elicited sentiment (history = the
/// preceding scope events) weighted by `phi(t_cur - t)`.
///
/// `scope` must be in `(t, id)` order with every `t <= t_cur`. The
/// exponential kernel runs in linear time by carrying the decayed history
/// sum forward; the polynomial kernel sums pairwise.
pub fn decayed_elicited_sum<'a, I>(cfg: &ExcitationConfig, scope: I, t_cur: Timestamp) -> f64
where
    I: IntoIterator<Item = &'a Event>,
    I::IntoIter: Clone,
{
    let events = scope.into_iter();
    match cfg.decay.kind {
        DecayKind::Exponential => exponential_sum(cfg, events, t_cur),
        DecayKind::Polynomial => pairwise_sum(cfg, events, t_cur),
    }
}

fn exponential_sum<'a>(cfg: &ExcitationConfig, events: impl Iterator<Item = &'a Event>, t_cur: Timestamp) -> f64 {
    let rate = cfg.decay.rate;
    let mut total = 0.0;
    // carry = sum over earlier events of s_prev * exp(-rate * (t - t_prev))
    let mut carry = 0.0;
    let mut prev: Option<(Timestamp, f64)> = None;
    for e in events {
        debug_assert!(e.t <= t_cur);
        if let Some((t_prev, s_prev)) = prev {
            carry = (-rate * (e.t - t_prev) as f64).exp() * (carry + s_prev);
        }
        let s = e.sentiment.value();
        let excitation = (cfg.lambda0 + s * carry).max(0.0);
        total += s * excitation * (-rate * (t_cur - e.t) as f64).exp();
        prev = Some((e.t, s));
    }
    total
}

fn pairwise_sum<'a>(
    cfg: &ExcitationConfig,
    events: impl Iterator<Item = &'a Event> + Clone,
    t_cur: Timestamp,
) -> f64 {
    let mut total = 0.0;
    for (k, e) in events.clone().enumerate() {
        let s = e.sentiment.value();
        let mut shift = 0.0;
        for h in events.clone().take(k) {
            shift += h.sentiment.value() * s * cfg.decay.phi_unchecked((e.t - h.t) as f64);
        }
        let excitation = (cfg.lambda0 + shift).max(0.0);
        total += s * excitation * cfg.decay.phi_unchecked((t_cur - e.t) as f64);
    }
    total
}

/// Accumulated elicited sentiment between two members, symmetric in the pair.
pub fn accumulate_pair(
    cfg: &ExcitationConfig,
    g: &TemporalMultigraph,
    community: &Community,
    i: UserId,
    j: UserId,
    t_cur: Timestamp,
) -> Result<f64> {
    let events = scope_events(g, community, Scope::Pair(i, j), t_cur)?;
    Ok(decayed_elicited_sum(cfg, events.iter().copied(), t_cur))
}
