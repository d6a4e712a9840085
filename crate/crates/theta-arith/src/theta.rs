use std::fmt;
use std::sync::{Arc, RwLock};

use num::{BigInt, BigRational, BigUint, One, Zero};

use crate::{Error, Result};

/// An irrational `theta` in (0,1), presented by its partial-quotient stream
/// `[0; a1, a2, ...]`. Either a finite prefix with a hard depth (operations
/// needing deeper quotients fail loudly, naming the depth required, so a
/// caller can retry with a deeper stream) or an eventually periodic stream,
/// which is infinite.
///
/// Rational theta has no representation here on purpose: for rational theta
/// the orbit `{theta*q}` is finite, the badly-approximable set is the whole
/// circle minus finitely many points, and no game machinery is needed. A
/// finite list always means "an irrational known to this depth".
///
/// Cheap to clone; the convergent cache is shared. Concurrent readers observe
/// a consistent prefix.
#[derive(Clone)]
pub struct ThetaSpec {
    inner: Arc<Inner>,
}

struct Inner {
    quotients: Quotients,
    /// (p_i, q_i) for i = 0, 1, ...; seeded with (p_0, q_0) = (0, 1).
    cache: RwLock<Vec<(BigInt, BigInt)>>,
}

enum Quotients {
    Finite(Vec<BigUint>),
    Periodic { pre: Vec<BigUint>, period: Vec<BigUint> },
}

impl ThetaSpec {
    pub fn finite(quotients: Vec<BigUint>) -> Result<Self> {
        if quotients.is_empty() {
            return Err(Error::InvalidTheta("empty quotient list".into()));
        }
        check_positive(&quotients)?;
        Ok(Self::new(Quotients::Finite(quotients)))
    }

    pub fn periodic(pre: Vec<BigUint>, period: Vec<BigUint>) -> Result<Self> {
        if period.is_empty() {
            return Err(Error::InvalidTheta("empty period".into()));
        }
        check_positive(&pre)?;
        check_positive(&period)?;
        Ok(Self::new(Quotients::Periodic { pre, period }))
    }

    pub fn finite_u64(quotients: &[u64]) -> Result<Self> {
        Self::finite(quotients.iter().map(|&a| BigUint::from(a)).collect())
    }

    pub fn periodic_u64(pre: &[u64], period: &[u64]) -> Result<Self> {
        Self::periodic(
            pre.iter().map(|&a| BigUint::from(a)).collect(),
            period.iter().map(|&a| BigUint::from(a)).collect(),
        )
    }

    fn new(quotients: Quotients) -> Self {
        let cache = RwLock::new(vec![(BigInt::zero(), BigInt::one())]);
        ThetaSpec { inner: Arc::new(Inner { quotients, cache }) }
    }

    /// Hard depth of a finite stream, `None` for periodic (infinite) streams.
    pub fn depth(&self) -> Option<usize> {
        match &self.inner.quotients {
            Quotients::Finite(v) => Some(v.len()),
            Quotients::Periodic { .. } => None,
        }
    }

    /// Partial quotient `a_i`, 1-based.
    pub fn quotient(&self, i: usize) -> Result<BigUint> {
        assert!(i >= 1, "quotients are 1-based");
        match &self.inner.quotients {
            Quotients::Finite(v) => v
                .get(i - 1)
                .cloned()
                .ok_or(Error::StreamExhausted { needed: i, depth: v.len() }),
            Quotients::Periodic { pre, period } => {
                if i <= pre.len() {
                    Ok(pre[i - 1].clone())
                } else {
                    Ok(period[(i - 1 - pre.len()) % period.len()].clone())
                }
            }
        }
    }

    /// Convergent pair `(p_i, q_i)`, with `(p_0, q_0) = (0, 1)`.
    pub fn convergent_pair(&self, i: usize) -> Result<(BigInt, BigInt)> {
        {
            let cache = self.inner.cache.read().unwrap();
            if let Some(pq) = cache.get(i) {
                return Ok(pq.clone());
            }
        }
        let mut cache = self.inner.cache.write().unwrap();
        while cache.len() <= i {
            let k = cache.len(); // computing (p_k, q_k)
            let a = BigInt::from(self.quotient(k)?);
            let (pm1, qm1) = cache[k - 1].clone();
            let (pm2, qm2) = if k >= 2 { cache[k - 2].clone() } else { (BigInt::one(), BigInt::zero()) };
            cache.push((&a * &pm1 + pm2, &a * &qm1 + qm2));
        }
        Ok(cache[i].clone())
    }

    /// Largest index `i` such that both `(p_i, q_i)` and `(p_{i+1}, q_{i+1})`
    /// are available, or an error if not even `(p_1, q_1)` is.
    fn deepest_bracket_index(&self) -> Result<usize> {
        match self.depth() {
            None => unreachable!("periodic streams have no deepest index"),
            Some(d) => {
                if d < 2 {
                    return Err(Error::StreamExhausted { needed: 2, depth: d });
                }
                Ok(d - 1)
            }
        }
    }

    /// Rational bracket `(lo, hi)` with `lo < theta < hi`, taken from the
    /// consecutive convergents `p_i/q_i` and `p_{i+1}/q_{i+1}`.
    pub fn bracket(&self, i: usize) -> Result<(BigRational, BigRational)> {
        let (p0, q0) = self.convergent_pair(i)?;
        let (p1, q1) = self.convergent_pair(i + 1)?;
        let a = BigRational::new(p0, q0);
        let b = BigRational::new(p1, q1);
        if a < b {
            Ok((a, b))
        } else {
            Ok((b, a))
        }
    }

    /// Rational enclosure of `theta` with width below `2^-bits`.
    ///
    /// For a finite stream that is too shallow the deepest available bracket
    /// is returned instead; the width is whatever `1/(q_i q_{i+1})` gives.
    /// Callers that need a guaranteed width must use exact comparisons.
    pub fn enclosure(&self, bits: u32) -> Result<(BigRational, BigRational)> {
        let target: BigInt = BigInt::one() << bits;
        let mut i = 1usize;
        loop {
            match (self.convergent_pair(i), self.convergent_pair(i + 1)) {
                (Ok((_, qi)), Ok((_, qi1))) => {
                    if &qi * &qi1 >= target {
                        return self.bracket(i);
                    }
                    i += 1;
                }
                _ => {
                    // Finite stream ended: deepest bracket we have.
                    return self.bracket(self.deepest_bracket_index()?);
                }
            }
        }
    }

    /// Parse the textual format: `cf:[a1,a2,...]` or `cfper:[pre|period]`,
    /// e.g. `cfper:[|1]` for 1/phi and `cfper:[|2]` for sqrt(2)-1.
    pub fn parse(s: &str) -> Result<Self> {
        if let Some(body) = s.strip_prefix("cf:") {
            let list = parse_bracketed(body, 3)?;
            let quots = parse_list(&list, 4)?;
            ThetaSpec::finite(quots)
        } else if let Some(body) = s.strip_prefix("cfper:") {
            let list = parse_bracketed(body, 6)?;
            let Some(bar) = list.find('|') else {
                return Err(Error::ParseTheta { pos: 6, msg: "missing '|' separator".into() });
            };
            let pre = parse_list(&list[..bar], 7)?;
            let period = parse_list(&list[bar + 1..], 7 + bar + 1)?;
            ThetaSpec::periodic(pre, period)
        } else {
            Err(Error::ParseTheta { pos: 0, msg: "expected 'cf:' or 'cfper:' prefix".into() })
        }
    }
}

fn check_positive(quots: &[BigUint]) -> Result<()> {
    for (idx, a) in quots.iter().enumerate() {
        if a.is_zero() {
            return Err(Error::InvalidTheta(format!("partial quotient #{} is zero", idx + 1)));
        }
    }
    Ok(())
}

fn parse_bracketed(body: &str, offset: usize) -> Result<String> {
    let b = body.trim();
    if !b.starts_with('[') || !b.ends_with(']') {
        return Err(Error::ParseTheta { pos: offset, msg: "expected [...]".into() });
    }
    Ok(b[1..b.len() - 1].to_string())
}

fn parse_list(s: &str, offset: usize) -> Result<Vec<BigUint>> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(vec![]);
    }
    let mut out = Vec::new();
    let mut pos = offset;
    for item in s.split(',') {
        let t = item.trim();
        let v: BigUint = t
            .parse()
            .map_err(|_| Error::ParseTheta { pos, msg: format!("bad quotient '{t}'") })?;
        out.push(v);
        pos += item.len() + 1;
    }
    Ok(out)
}

impl fmt::Display for ThetaSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn join(v: &[BigUint]) -> String {
            v.iter().map(|a| a.to_string()).collect::<Vec<_>>().join(",")
        }
        match &self.inner.quotients {
            Quotients::Finite(v) => write!(f, "cf:[{}]", join(v)),
            Quotients::Periodic { pre, period } => {
                write!(f, "cfper:[{}|{}]", join(pre), join(period))
            }
        }
    }
}

impl fmt::Debug for ThetaSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ThetaSpec({self})")
    }
}

impl PartialEq for ThetaSpec {
    fn eq(&self, other: &Self) -> bool {
        self.to_string() == other.to_string()
    }
}
impl Eq for ThetaSpec {}
