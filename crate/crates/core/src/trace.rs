//! Distributed traces and their happened-before partial orders.
//!
//! A trace file is JSON lines. An optional first line `{"processes": P}`
//! declares the process count; every other line is an event:
//!
//! ```text
//! {"process":0,"seq":1,"kind":"send","msg":"m","id":"a1"}
//! ```
//!
//! `id` names the event and defaults to `p{process}.{seq}`. A receive may come
//! before its send in the file; causality is checked on the closed relation.

use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::build::{build_minimal_partial_rp_mu, BuildMode, BuildReport};
use crate::error::{Error, Result};
use crate::relation::{GroundSet, Relation};
use crate::verify::verify_partial_rp_mu;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EventKind {
    Local,
    Send,
    Receive,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Event {
    pub process: usize,
    pub seq: u64,
    pub kind: EventKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub msg: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub id: Option<String>,
}

impl Event {
    pub fn label(&self) -> String {
        self.id.clone().unwrap_or_else(|| format!("p{}.{}", self.process, self.seq))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Trace {
    pub processes: usize,
    /// File order.
    pub events: Vec<Event>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct Header {
    #[serde(default)]
    schema: Option<String>,
    processes: usize,
}

impl Trace {
    /// Parses and validates everything except causal cycles, which need the closure.
    pub fn parse(text: &str) -> Result<Trace> {
        let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty()).peekable();
        let mut declared = None;
        if let Some((_, first)) = lines.peek() {
            let v: serde_json::Value = serde_json::from_str(first).map_err(|e| Error::Parse(format!("line 1: {e}")))?;
            if v.get("kind").is_none() {
                let h: Header = serde_json::from_value(v).map_err(|e| Error::Parse(format!("header: {e}")))?;
                crate::json::check_schema(h.schema.as_deref())?;
                declared = Some(h.processes);
                lines.next();
            }
        }
        let events = lines
            .map(|(i, l)| serde_json::from_str::<Event>(l).map_err(|e| Error::Parse(format!("line {}: {e}", i + 1))))
            .collect::<Result<Vec<_>>>()?;
        let processes = declared.unwrap_or_else(|| events.iter().map(|e| e.process + 1).max().unwrap_or(0));
        let t = Trace { processes, events };
        t.validate()?;
        Ok(t)
    }

    pub fn to_jsonl(&self) -> String {
        let mut out = format!("{{\"schema\":\"{}\",\"processes\":{}}}\n", crate::json::SCHEMA, self.processes);
        for e in &self.events {
            out.push_str(&serde_json::to_string(e).expect("events serialise"));
            out.push('\n');
        }
        out
    }

    fn validate(&self) -> Result<()> {
        if self.events.is_empty() {
            return Err(Error::Parse("trace has no events".into()));
        }
        let mut last: HashMap<usize, u64> = HashMap::new();
        let mut sends: HashMap<&str, usize> = HashMap::new();
        let mut receives: HashMap<&str, usize> = HashMap::new();
        for (i, e) in self.events.iter().enumerate() {
            if e.process >= self.processes {
                return Err(Error::UnknownProcess { process: e.process, processes: self.processes });
            }
            if let Some(&prev) = last.get(&e.process) {
                if e.seq <= prev {
                    return Err(Error::NonMonotonicSequence { process: e.process, seq: e.seq });
                }
            }
            last.insert(e.process, e.seq);
            let table = match e.kind {
                EventKind::Local => {
                    if e.msg.is_some() {
                        return Err(Error::Parse(format!("local event `{}` carries a message id", e.label())));
                    }
                    continue;
                }
                EventKind::Send => &mut sends,
                EventKind::Receive => &mut receives,
            };
            let m = e.msg.as_deref().ok_or_else(|| Error::Parse(format!("event `{}` needs a message id", e.label())))?;
            if table.insert(m, i).is_some() {
                return Err(Error::DuplicateMessageId(m.to_string()));
            }
        }
        let mut pending: Vec<&&str> = receives.keys().filter(|m| !sends.contains_key(**m)).collect();
        pending.sort();
        if let Some(m) = pending.first() {
            return Err(Error::DanglingReceive(m.to_string()));
        }
        Ok(())
    }

    /// Events sorted by process, then sequence number.
    fn ordered(&self) -> Vec<&Event> {
        let mut evs: Vec<&Event> = self.events.iter().collect();
        evs.sort_by_key(|e| (e.process, e.seq));
        evs
    }
}

/// Program order plus send-before-receive, closed reflexively and transitively.
/// Elements are listed by process, then sequence number.
pub fn happened_before(t: &Trace) -> Result<Relation> {
    t.validate()?;
    let evs = t.ordered();
    let g = GroundSet::new(evs.iter().map(|e| e.label()))?;
    let mut pairs = Vec::new();
    let mut send_at: HashMap<&str, usize> = HashMap::new();
    for (i, e) in evs.iter().enumerate() {
        if i > 0 && evs[i - 1].process == e.process {
            pairs.push((i - 1, i));
        }
        if e.kind == EventKind::Send {
            send_at.insert(e.msg.as_deref().expect("validated"), i);
        }
    }
    for (i, e) in evs.iter().enumerate() {
        if e.kind == EventKind::Receive {
            pairs.push((send_at[e.msg.as_deref().expect("validated")], i));
        }
    }
    let r = Relation::from_pairs(g, &pairs)?.reflexive_closure().transitive_closure();
    if let Some(x) = (0..r.len()).find(|&x| (0..r.len()).any(|y| y != x && r.indifferent(x, y))) {
        return Err(Error::CausalCycle(r.name(x).to_string()));
    }
    Ok(r)
}

/// Random trace: at each step a uniformly chosen process receives its oldest
/// pending message (with probability 1/2 when one is waiting), else sends to
/// another process with probability `msg_prob`, else does local work.
pub fn generate_trace(procs: usize, events: usize, msg_prob: f64, seed: u64) -> Result<Trace> {
    if procs == 0 || events == 0 {
        return Err(Error::InvalidParams("need at least one process and one event".into()));
    }
    if !(0.0..=1.0).contains(&msg_prob) {
        return Err(Error::InvalidParams(format!("message probability {msg_prob} is outside [0, 1]")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut inbox: Vec<std::collections::VecDeque<String>> = vec![Default::default(); procs];
    let mut seq = vec![0u64; procs];
    let mut next_msg = 0usize;
    let mut out = Vec::with_capacity(events);
    for _ in 0..events {
        let p = rng.gen_range(0..procs);
        seq[p] += 1;
        let (kind, msg) = if !inbox[p].is_empty() && rng.gen_bool(0.5) {
            (EventKind::Receive, inbox[p].pop_front())
        } else if procs > 1 && rng.gen_bool(msg_prob) {
            let to = (p + rng.gen_range(1..procs)) % procs;
            let m = format!("m{next_msg}");
            next_msg += 1;
            inbox[to].push_back(m.clone());
            (EventKind::Send, Some(m))
        } else {
            (EventKind::Local, None)
        };
        out.push(Event { process: p, seq: seq[p], kind, msg, id: None });
    }
    Ok(Trace { processes: procs, events: out })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClockReport {
    pub events: usize,
    pub processes: usize,
    pub vector_clock_components: usize,
    pub partial_functions: usize,
    pub width: usize,
    pub mode: String,
    pub optimal: bool,
    pub verified: bool,
}

/// Partial clocks (one function per chain of a chain cover) against vector clocks.
pub fn clock_report(t: &Trace, mode: BuildMode) -> Result<(ClockReport, BuildReport)> {
    let hb = happened_before(t)?;
    let build = build_minimal_partial_rp_mu(&hb, mode)?;
    let verified = verify_partial_rp_mu(&hb, build.family.functions())?.ok;
    let report = ClockReport {
        events: hb.len(),
        processes: t.processes,
        vector_clock_components: t.processes,
        partial_functions: build.family.len(),
        width: hb.width()?.width,
        mode: mode.to_string(),
        optimal: build.optimal,
        verified,
    };
    Ok((report, build))
}
