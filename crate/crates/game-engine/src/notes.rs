//! The annotation grammar embedded in transcript notes. White moves carry
//! `warmup | align ... | dodge(gen_lo..gen_hi) ... | free(case=A|B) | done`,
//! optionally prefixed by a dovetail slot marker `s<k>|`. The index snapshot
//! `N=..,n0=..,n1=..,m=..,M=..` rides along where meaningful.

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndexSnapshot {
    pub anchor: usize,
    pub n0: usize,
    pub n1: Option<usize>,
    pub m: Option<usize>,
    pub m_ext: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MoveNote {
    Warmup,
    Align { snapshot: IndexSnapshot },
    Dodge { gen_lo: usize, gen_hi: usize, case: Option<char>, snapshot: IndexSnapshot },
    Free { case: char },
    Done,
    Other(String),
}

/// Split a possible `s<k>|` dovetail prefix off a note.
pub fn split_slot(note: &str) -> (Option<usize>, &str) {
    if let Some(rest) = note.strip_prefix('s') {
        if let Some(bar) = rest.find('|') {
            if let Ok(k) = rest[..bar].parse::<usize>() {
                return (Some(k), &rest[bar + 1..]);
            }
        }
    }
    (None, note)
}

fn fmt_opt(v: Option<usize>) -> String {
    v.map(|x| x.to_string()).unwrap_or_else(|| "-".into())
}

fn parse_opt(s: &str) -> Option<usize> {
    if s == "-" {
        None
    } else {
        s.parse().ok()
    }
}

impl MoveNote {
    pub fn render(&self) -> String {
        match self {
            MoveNote::Warmup => "warmup".into(),
            MoveNote::Align { snapshot } => {
                format!("align N={},n0={}", snapshot.anchor, snapshot.n0)
            }
            MoveNote::Dodge { gen_lo, gen_hi, case, snapshot } => format!(
                "dodge({}..{}) N={},n0={},n1={},m={},M={},case={}",
                gen_lo,
                gen_hi,
                snapshot.anchor,
                snapshot.n0,
                fmt_opt(snapshot.n1),
                fmt_opt(snapshot.m),
                fmt_opt(snapshot.m_ext),
                case.map(String::from).unwrap_or_else(|| "-".into()),
            ),
            MoveNote::Free { case } => format!("free(case={case})"),
            MoveNote::Done => "done".into(),
            MoveNote::Other(s) => s.clone(),
        }
    }

    pub fn parse(note: &str) -> MoveNote {
        if note == "warmup" {
            return MoveNote::Warmup;
        }
        if note == "done" {
            return MoveNote::Done;
        }
        if let Some(rest) = note.strip_prefix("free(case=") {
            if let Some(c) = rest.strip_suffix(')').and_then(|s| s.chars().next()) {
                return MoveNote::Free { case: c };
            }
        }
        if let Some(rest) = note.strip_prefix("align ") {
            if let Some(snap) = parse_snapshot(rest) {
                return MoveNote::Align { snapshot: snap };
            }
        }
        if let Some(rest) = note.strip_prefix("dodge(") {
            if let Some(close) = rest.find(") ") {
                let range = &rest[..close];
                let tail = &rest[close + 2..];
                if let Some((lo, hi)) = range.split_once("..") {
                    if let (Ok(lo), Ok(hi)) = (lo.parse(), hi.parse()) {
                        if let Some(snap) = parse_snapshot(tail) {
                            let case = tail
                                .split(',')
                                .find_map(|kv| kv.strip_prefix("case="))
                                .and_then(|v| if v == "-" { None } else { v.chars().next() });
                            return MoveNote::Dodge { gen_lo: lo, gen_hi: hi, case, snapshot: snap };
                        }
                    }
                }
            }
        }
        MoveNote::Other(note.to_string())
    }
}

fn parse_snapshot(s: &str) -> Option<IndexSnapshot> {
    let mut anchor = None;
    let mut n0 = None;
    let mut n1 = None;
    let mut m = None;
    let mut m_ext = None;
    for kv in s.split(',') {
        let (k, v) = kv.split_once('=')?;
        match k {
            "N" => anchor = v.parse().ok(),
            "n0" => n0 = v.parse().ok(),
            "n1" => n1 = Some(parse_opt(v)),
            "m" => m = Some(parse_opt(v)),
            "M" => m_ext = Some(parse_opt(v)),
            "case" => {}
            _ => return None,
        }
    }
    Some(IndexSnapshot {
        anchor: anchor?,
        n0: n0?,
        n1: n1.flatten(),
        m: m.flatten(),
        m_ext: m_ext.flatten(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn render_parse_round_trip() {
        let snap = IndexSnapshot { anchor: 7, n0: 3, n1: Some(2), m: Some(1), m_ext: Some(4) };
        let notes = [
            MoveNote::Warmup,
            MoveNote::Align { snapshot: IndexSnapshot { n1: None, m: None, m_ext: None, ..snap.clone() } },
            MoveNote::Dodge { gen_lo: 8, gen_hi: 13, case: Some('B'), snapshot: snap.clone() },
            MoveNote::Free { case: 'A' },
            MoveNote::Done,
        ];
        for n in notes {
            assert_eq!(MoveNote::parse(&n.render()), n);
        }
    }

    #[test]
    fn slot_prefix() {
        assert_eq!(split_slot("s1|done"), (Some(1), "done"));
        assert_eq!(split_slot("warmup"), (None, "warmup"));
    }
}
