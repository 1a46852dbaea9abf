//! Text and JSON formats.
//!
//! Text: statements separated by `;` or newlines, `#` starts a comment.
//! `L i`, `X i`, `R i` are events, `B i` puts a basepoint on strand `i` of the
//! current gap (`B i <` pins that strand as leftward), and an optional first
//! statement `pattern n: m1,...,mn` makes the front an annulus pattern.
//!
//! A maximal run of consecutive cusps of one kind may be written with all
//! indices referring to a single layout: right cusps to the layout before the
//! run, left cusps to the layout after it. That reading is used whenever it
//! yields disjoint adjacent pairs; otherwise indices are read one event at a
//! time. `|` ends a run without doing anything else.

use super::{AnnulusPattern, Basepoint, Event, EventKind, PlatFront};
use crate::error::{Error, Result};
use serde_json::{json, Value};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Diagram {
    Plat(PlatFront),
    Pattern(AnnulusPattern),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Stmt {
    Ev(EventKind, usize),
    Base(usize, bool),
    Sep,
}

fn perr(at: usize, msg: impl Into<String>) -> Error {
    Error::Parse { at, msg: msg.into() }
}

fn parse_header(s: &str) -> Result<(usize, Vec<i64>)> {
    let rest = s["pattern".len()..].trim();
    let (n, ms) = match rest.split_once(':') {
        Some((n, ms)) => (n.trim(), Some(ms.trim())),
        None => (rest, None),
    };
    let n: usize = n.parse().map_err(|_| perr(0, format!("bad strand count `{n}`")))?;
    let maslov = match ms {
        Some(ms) if !ms.is_empty() => ms
            .split(',')
            .map(|m| m.trim().parse::<i64>().map_err(|_| perr(0, format!("bad Maslov value `{m}`"))))
            .collect::<Result<Vec<_>>>()?,
        _ => vec![0; n],
    };
    if maslov.len() != n {
        return Err(perr(0, format!("{} Maslov values for {n} strands", maslov.len())));
    }
    Ok((n, maslov))
}

fn parse_stmt(at: usize, s: &str) -> Result<Stmt> {
    if s == "|" {
        return Ok(Stmt::Sep);
    }
    let mut chars = s.chars();
    let head = chars.next().unwrap().to_ascii_uppercase();
    let mut rest = chars.as_str().trim();
    let mut rightward = true;
    if head == 'B' {
        if let Some(r) = rest.strip_suffix('<') {
            rightward = false;
            rest = r.trim();
        } else if let Some(r) = rest.strip_suffix('>') {
            rest = r.trim();
        }
    }
    let idx: usize = rest.parse().map_err(|_| perr(at, format!("malformed statement `{s}`")))?;
    if idx == 0 {
        return Err(perr(at, "strand positions start at 1"));
    }
    Ok(match head {
        'L' => Stmt::Ev(EventKind::Left, idx),
        'X' => Stmt::Ev(EventKind::Cross, idx),
        'R' => Stmt::Ev(EventKind::Right, idx),
        'B' => Stmt::Base(idx, rightward),
        _ => return Err(perr(at, format!("malformed statement `{s}`"))),
    })
}

/// Convert a run of cusp indices (0-based) to sequential positions using the
/// single-layout reading, if it is valid.
fn simultaneous(kind: EventKind, idx: &[usize], count: usize) -> Option<Vec<usize>> {
    let layout = if kind == EventKind::Left { count + 2 * idx.len() } else { count };
    let mut sorted = idx.to_vec();
    sorted.sort_unstable();
    if sorted.last().is_some_and(|&p| p + 1 >= layout) || sorted.windows(2).any(|w| w[1] < w[0] + 2) {
        return None;
    }
    Some(
        idx.iter()
            .enumerate()
            .map(|(k, &p)| {
                let others: Box<dyn Iterator<Item = &usize>> =
                    if kind == EventKind::Left { Box::new(idx[k + 1..].iter()) } else { Box::new(idx[..k].iter()) };
                p - 2 * others.filter(|&&q| q < p).count()
            })
            .collect(),
    )
}

struct Parsed {
    header: Option<(usize, Vec<i64>)>,
    events: Vec<Event>,
    basepoints: Vec<Basepoint>,
}

fn parse_raw(text: &str) -> Result<Parsed> {
    let mut stmts: Vec<(usize, &str)> = Vec::new();
    for line in text.lines() {
        let line = line.split('#').next().unwrap_or("");
        for piece in line.split(';') {
            for (k, s) in piece.split('|').enumerate() {
                if k > 0 {
                    stmts.push((stmts.len() + 1, "|"));
                }
                let s = s.trim();
                if !s.is_empty() {
                    stmts.push((stmts.len() + 1, s));
                }
            }
        }
    }
    let mut header = None;
    if let Some(&(_, s)) = stmts.first() {
        if s.to_ascii_lowercase().starts_with("pattern") {
            header = Some(parse_header(s)?);
            stmts.remove(0);
        }
    }
    let parsed: Vec<(usize, Stmt)> =
        stmts.iter().map(|&(at, s)| parse_stmt(at, s).map(|st| (at, st))).collect::<Result<_>>()?;

    let mut count = header.as_ref().map_or(0, |h| h.0);
    let mut events = Vec::new();
    let mut basepoints = Vec::new();
    let mut i = 0;
    while i < parsed.len() {
        let (at, st) = parsed[i];
        match st {
            Stmt::Sep => i += 1,
            Stmt::Base(k, rightward) => {
                if header.is_some() {
                    return Err(perr(at, "basepoints are not allowed in patterns"));
                }
                if k > count {
                    return Err(perr(at, format!("basepoint strand {k} exceeds strand count {count}")));
                }
                basepoints.push(Basepoint { gap: events.len(), pos: k - 1, rightward });
                i += 1;
            }
            Stmt::Ev(EventKind::Cross, k) => {
                let e = Event::cross(k - 1);
                count = e.count_after(count).ok_or(Error::BadIndex { event: at, index: k, count })?;
                events.push(e);
                i += 1;
            }
            Stmt::Ev(kind, _) => {
                let mut j = i;
                let mut idx = Vec::new();
                while let Some(&(_, Stmt::Ev(k2, n))) = parsed.get(j) {
                    if k2 != kind {
                        break;
                    }
                    idx.push(n - 1);
                    j += 1;
                }
                let seq = simultaneous(kind, &idx, count).unwrap_or(idx);
                for (off, p) in seq.into_iter().enumerate() {
                    let e = Event { kind, pos: p };
                    let at = parsed[i + off].0;
                    count = e.count_after(count).ok_or(Error::BadIndex { event: at, index: p + 1, count })?;
                    events.push(e);
                }
                i = j;
            }
        }
    }
    Ok(Parsed { header, events, basepoints })
}

pub fn parse(text: &str) -> Result<Diagram> {
    let p = parse_raw(text)?;
    match p.header {
        Some((n, maslov)) => Ok(Diagram::Pattern(AnnulusPattern::new(n, maslov, p.events)?)),
        None => Ok(Diagram::Plat(PlatFront::new(p.events, p.basepoints)?)),
    }
}

pub fn parse_front(text: &str) -> Result<PlatFront> {
    match parse(text)? {
        Diagram::Plat(f) => Ok(f),
        Diagram::Pattern(_) => Err(perr(0, "expected a front in the plane, got a pattern")),
    }
}

pub fn parse_pattern(text: &str) -> Result<AnnulusPattern> {
    match parse(text)? {
        Diagram::Pattern(p) => Ok(p),
        Diagram::Plat(_) => Err(perr(0, "expected a pattern (missing `pattern n:` header)")),
    }
}

fn letter(k: EventKind) -> char {
    match k {
        EventKind::Left => 'L',
        EventKind::Cross => 'X',
        EventKind::Right => 'R',
    }
}

/// Single-layout indices for a run, when every pair is adjacent in that layout.
fn run_indices(kind: EventKind, run: &[Event], count: usize) -> Option<Vec<usize>> {
    let mut layout: Vec<usize> = (0..count).collect();
    let mut next = count;
    let mut pairs = Vec::new();
    for e in run {
        if kind == EventKind::Left {
            layout.splice(e.pos..e.pos, [next, next + 1]);
            pairs.push((next, next + 1));
            next += 2;
        } else {
            pairs.push((layout[e.pos], layout[e.pos + 1]));
            layout.drain(e.pos..e.pos + 2);
        }
    }
    let reference: Vec<usize> = if kind == EventKind::Left { layout } else { (0..count).collect() };
    let at = |s: usize| reference.iter().position(|&x| x == s).unwrap();
    pairs.iter().map(|&(a, b)| (at(a) + 1 == at(b)).then_some(at(a))).collect()
}

fn events_to_text(start: usize, events: &[Event], basepoints: &[Basepoint]) -> Vec<String> {
    let mut out = Vec::new();
    let mut count = start;
    let mut i = 0;
    let bps_at = |g: usize| basepoints.iter().filter(move |b| b.gap == g);
    let base_text = |b: &Basepoint| format!("B{}{}", b.pos + 1, if b.rightward { "" } else { " <" });
    while i < events.len() {
        out.extend(bps_at(i).map(base_text));
        let kind = events[i].kind;
        let mut j = i + 1;
        if kind != EventKind::Cross {
            while j < events.len() && events[j].kind == kind && bps_at(j).next().is_none() {
                j += 1;
            }
        }
        let run = &events[i..j];
        match run_indices(kind, run, count).filter(|_| run.len() > 1) {
            Some(idx) => out.extend(idx.iter().map(|p| format!("{}{}", letter(kind), p + 1))),
            None => {
                for (k, e) in run.iter().enumerate() {
                    if k > 0 {
                        out.push("|".into());
                    }
                    out.push(format!("{}{}", letter(kind), e.pos + 1));
                }
            }
        }
        for e in run {
            count = e.count_after(count).unwrap();
        }
        i = j;
    }
    out.extend(bps_at(events.len()).map(base_text));
    out
}

fn join(parts: &[String]) -> String {
    let mut s = String::new();
    for (i, p) in parts.iter().enumerate() {
        if p == "|" {
            s.push_str(" | ");
        } else {
            if i > 0 && parts[i - 1] != "|" {
                s.push_str("; ");
            }
            s.push_str(p);
        }
    }
    s
}

pub fn front_to_text(f: &PlatFront) -> String {
    join(&events_to_text(0, f.events(), f.basepoints()))
}

pub fn pattern_to_text(p: &AnnulusPattern) -> String {
    let ms: Vec<String> = p.maslov().iter().map(|m| m.to_string()).collect();
    let mut parts = vec![format!("pattern {}: {}", p.strands(), ms.join(","))];
    parts.extend(events_to_text(p.strands(), p.events(), &[]));
    join(&parts)
}

pub fn diagram_to_text(d: &Diagram) -> String {
    match d {
        Diagram::Plat(f) => front_to_text(f),
        Diagram::Pattern(p) => pattern_to_text(p),
    }
}

fn events_json(events: &[Event]) -> Value {
    Value::Array(events.iter().map(|e| json!([letter(e.kind).to_string(), e.pos + 1])).collect())
}

pub fn front_to_json(f: &PlatFront) -> Value {
    let bps: Vec<Value> = f
        .basepoints()
        .iter()
        .map(|b| if b.rightward { json!([b.gap, b.pos + 1]) } else { json!([b.gap, b.pos + 1, "<"]) })
        .collect();
    json!({"kind": "plat", "strands": 0, "maslov": [], "events": events_json(f.events()), "basepoints": bps})
}

pub fn pattern_to_json(p: &AnnulusPattern) -> Value {
    json!({"kind": "pattern", "strands": p.strands(), "maslov": p.maslov(),
           "events": events_json(p.events()), "basepoints": []})
}

/// JSON events are sequential: each index refers to the layout just before it.
pub fn from_json(v: &Value) -> Result<Diagram> {
    let bad = |m: &str| perr(0, format!("json: {m}"));
    let kind = v["kind"].as_str().ok_or_else(|| bad("missing kind"))?;
    let mut events = Vec::new();
    for e in v["events"].as_array().ok_or_else(|| bad("missing events"))? {
        let k = match e[0].as_str() {
            Some("L") => EventKind::Left,
            Some("X") => EventKind::Cross,
            Some("R") => EventKind::Right,
            _ => return Err(bad("bad event kind")),
        };
        let i = e[1].as_u64().filter(|&i| i >= 1).ok_or_else(|| bad("bad event index"))?;
        events.push(Event { kind: k, pos: i as usize - 1 });
    }
    match kind {
        "plat" => {
            let mut bps = Vec::new();
            for b in v["basepoints"].as_array().map(|a| a.as_slice()).unwrap_or(&[]) {
                let gap = b[0].as_u64().ok_or_else(|| bad("bad basepoint"))? as usize;
                let pos = b[1].as_u64().filter(|&i| i >= 1).ok_or_else(|| bad("bad basepoint"))? as usize;
                bps.push(Basepoint { gap, pos: pos - 1, rightward: b.get(2).and_then(|d| d.as_str()) != Some("<") });
            }
            Ok(Diagram::Plat(PlatFront::new(events, bps)?))
        }
        "pattern" => {
            let n = v["strands"].as_u64().ok_or_else(|| bad("missing strands"))? as usize;
            let maslov = v["maslov"]
                .as_array()
                .ok_or_else(|| bad("missing maslov"))?
                .iter()
                .map(|m| m.as_i64().ok_or_else(|| bad("bad maslov value")))
                .collect::<Result<Vec<_>>>()?;
            Ok(Diagram::Pattern(AnnulusPattern::new(n, maslov, events)?))
        }
        _ => Err(bad("kind must be plat or pattern")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknot_and_trefoil() {
        let u = parse_front("L1; R1").unwrap();
        assert_eq!(u.events(), &[Event::left(0), Event::right(0)]);
        let t = parse_front("L1; L3; X2; X2; X2; R1; R3").unwrap();
        assert_eq!(t.events().len(), 7);
        assert_eq!(t.events()[6], Event::right(0));
        assert_eq!(front_to_text(&t), "L1; L3; X2; X2; X2; R1; R3");
    }

    #[test]
    fn rejects_bad_index() {
        assert!(matches!(parse_front("L1; X5; R1"), Err(Error::BadIndex { index: 5, count: 2, .. })));
        assert!(matches!(parse_front("L1"), Err(Error::Unclosed(2))));
        assert!(parse_front("L1; Q2; R1").is_err());
        assert!(parse_front("L1; B3; R1").is_err());
    }

    #[test]
    fn nested_right_cusps_fall_back_to_sequential() {
        // L1; L2 nests the second cusp inside the first; R2; R1 closes them in order.
        let f = parse_front("L1; L2; R2; R1").unwrap();
        assert_eq!(f.events(), &[Event::left(0), Event::left(1), Event::right(1), Event::right(0)]);
        assert_eq!(front_to_text(&f), "L1 | L2; R2 | R1");
        let again = parse_front(&front_to_text(&f)).unwrap();
        assert_eq!(again, f);
    }

    #[test]
    fn pattern_header_and_json() {
        let p = parse_pattern("pattern 3: 0,0,1; X1").unwrap();
        assert_eq!(p.strands(), 3);
        assert_eq!(p.maslov(), &[0, 0, 1]);
        let back = from_json(&pattern_to_json(&p)).unwrap();
        assert_eq!(back, Diagram::Pattern(p.clone()));
        let g = parse_front("L1; L3; B2; X2; R1; R1").unwrap();
        assert_eq!(from_json(&front_to_json(&g)).unwrap(), Diagram::Plat(g.clone()));
        assert_eq!(parse_front(&front_to_text(&g)).unwrap(), g);
    }
}
