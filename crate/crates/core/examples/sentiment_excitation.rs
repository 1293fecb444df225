//! Excitation and elicited sentiment along one conversation.
//!
//! Agreement raises excitation, disagreement lowers it.

use cohesion::decay::DecaySpec;
use cohesion::dynamics::{elicited_sentiment, excitation, ExcitationConfig};
use cohesion::graph::{Event, Sentiment, UserId};

fn main() -> cohesion::Result<()> {
    let cfg = ExcitationConfig::new(1.0, DecaySpec::exponential(0.1)?)?;
    let (a, b) = (UserId(0), UserId(1));
    let script = [
        (a, b, 0, Sentiment::Positive),
        (b, a, 2, Sentiment::Positive),
        (a, b, 3, Sentiment::Positive),
        (b, a, 5, Sentiment::Negative),
        (a, b, 30, Sentiment::Negative),
    ];
    let events: Vec<Event> = script
        .iter()
        .enumerate()
        .map(|(id, &(src, dst, t, sentiment))| Event {
            id: id as u32,
            src,
            dst,
            t,
            sentiment,
        })
        .collect();
    for (k, e) in events.iter().enumerate() {
        let history = &events[..k];
        println!(
            "t={:>3} {:>2}  excitation {:.4}  elicited {:+.4}",
            e.t,
            e.sentiment.polarity(),
            excitation(&cfg, e, history)?,
            elicited_sentiment(&cfg, e, history)?
        );
    }
    Ok(())
}
