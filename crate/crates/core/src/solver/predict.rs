//! Closed-form values and bounds for weak saturation of complete hosts.

use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HostDescriptor {
    /// K_n.
    Kn(usize),
    /// K_{n,l}.
    Knl(usize, usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PatternDescriptor {
    Ks(usize),
    Kst(usize, usize),
    Star(usize),
    Barbell(usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Condition {
    pub name: String,
    pub met: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Prediction {
    pub lower: u64,
    pub upper: u64,
    pub exact: bool,
    pub source: String,
    pub conditions_met: Vec<Condition>,
}

fn c2(n: u64) -> u64 {
    n * n.saturating_sub(1) / 2
}

fn cond(name: impl Into<String>, met: bool) -> Condition {
    Condition { name: name.into(), met }
}

struct Collector {
    lower: u64,
    upper: u64,
    sources: Vec<&'static str>,
    conditions: Vec<Condition>,
    any: bool,
}

impl Collector {
    fn new(trivial_upper: u64) -> Self {
        Collector {
            lower: 0,
            upper: trivial_upper,
            sources: Vec::new(),
            conditions: Vec::new(),
            any: false,
        }
    }

    fn exact(&mut self, source: &'static str, value: u64) {
        self.lower(source, value);
        self.upper(source, value);
    }

    fn lower(&mut self, source: &'static str, value: u64) {
        self.lower = self.lower.max(value);
        self.note(source);
    }

    fn upper(&mut self, source: &'static str, value: u64) {
        self.upper = self.upper.min(value);
        self.note(source);
    }

    fn note(&mut self, source: &'static str) {
        self.any = true;
        if !self.sources.contains(&source) {
            self.sources.push(source);
        }
    }

    fn check(&mut self, name: impl Into<String>, met: bool) -> bool {
        self.conditions.push(cond(name, met));
        met
    }

    fn finish(self) -> Option<Prediction> {
        self.any.then(|| Prediction {
            lower: self.lower,
            upper: self.upper,
            exact: self.lower == self.upper,
            source: self.sources.join("+"),
            conditions_met: self.conditions,
        })
    }
}

/// Registry lookup. `None` means no formula covers the combination.
pub fn predict(host: HostDescriptor, pattern: PatternDescriptor, bisaturation: bool) -> Option<Prediction> {
    let pattern = match pattern {
        PatternDescriptor::Kst(1, t) | PatternDescriptor::Kst(t, 1) => PatternDescriptor::Star(t),
        PatternDescriptor::Kst(a, b) => PatternDescriptor::Kst(a.min(b), a.max(b)),
        other => other,
    };
    match (host, bisaturation) {
        (HostDescriptor::Kn(n), false) => predict_complete(n as u64, pattern),
        (HostDescriptor::Knl(n, l), false) => predict_bipartite(n as u64, l as u64, pattern),
        (HostDescriptor::Knl(n, l), true) => predict_bisat(n as u64, l as u64, pattern),
        (HostDescriptor::Kn(_), true) => None,
    }
}

fn predict_complete(n: u64, pattern: PatternDescriptor) -> Option<Prediction> {
    let mut c = Collector::new(c2(n));
    match pattern {
        PatternDescriptor::Ks(s) => {
            let s = s as u64;
            if c.check("n >= s >= 2", n >= s && s >= 2) {
                c.exact("lovasz", c2(n) - c2(n - s + 2));
            }
        }
        PatternDescriptor::Star(t) => {
            let t = t as u64;
            if c.check("n >= t", n >= t) {
                c.exact("star", c2(t));
            }
        }
        PatternDescriptor::Barbell(t) => {
            let t = t as u64;
            if t >= 2 {
                c.note("barbell");
                if c.check("t divides n", n.is_multiple_of(t)) {
                    c.upper("barbell", c2(t) * (n / t));
                }
            }
        }
        PatternDescriptor::Kst(s, t) => {
            let (s, t) = (s as u64, t as u64);
            if s == t && c.check("t >= 2 and n >= 3t-3", t >= 2 && n + 3 >= 3 * t) {
                c.exact("kronenberg-martins-morrison", (t - 1) * (2 * n + 2 - t) / 2);
            }
            if t == s + 1 && c.check("t >= 2 and n >= 3t-3 (for K_{t,t+1})", s >= 2 && n + 3 >= 3 * s) {
                c.exact("kronenberg-martins-morrison", (s - 1) * (2 * n + 2 - s) / 2 + 1);
            }
            if t > s && s >= 2 {
                if c.check("t > s >= 2 and n >= 2(s+t)-3", n + 3 >= 2 * (s + t)) {
                    c.upper("kmm-upper", (s - 1) * (n - s) + c2(t));
                }
                if c.check("t > s >= 2 and n >= 3t-3", n + 3 >= 3 * t) {
                    c.lower("kmm-lower", (s - 1) * (n - t + 1) + c2(t));
                }
            }
        }
    }
    c.finish()
}

fn predict_bipartite(n: u64, l: u64, pattern: PatternDescriptor) -> Option<Prediction> {
    let PatternDescriptor::Kst(s, t) = pattern else {
        return None;
    };
    let (s, t) = (s as u64, t as u64);
    let (n, l) = (n.min(l), n.max(l));
    let mut c = Collector::new(n * l);
    if n == l && c.check("2 <= s <= t <= n", 2 <= s && t <= n) {
        c.exact("moshkovitz-shapira", n * n - (n - s + 1) * (n - s + 1) + (t - s) * (t - s));
    }
    if c.check("2 <= s <= t and n <= l", 2 <= s) {
        let value = (n + l + 1).checked_sub(s).map(|a| a * (s - 1) + (t - s) * (t - s));
        if let Some(v) = value {
            c.exact("bipartite-generalized", v);
        }
    }
    c.finish()
}

fn predict_bisat(n: u64, l: u64, pattern: PatternDescriptor) -> Option<Prediction> {
    let PatternDescriptor::Kst(s, t) = pattern else {
        return None;
    };
    let (s, t) = (s as u64, t as u64);
    let mut c = Collector::new(n * l);
    if c.check("2 <= s <= t and 2 <= n <= l", 2 <= s && 2 <= n && n <= l && s <= n && t <= l) {
        c.exact("alon", n * l - (n - s + 1) * (l - t + 1));
    }
    c.finish()
}

#[cfg(test)]
mod tests {
    use super::*;
    use HostDescriptor::*;
    use PatternDescriptor::*;

    fn exact(p: Option<Prediction>) -> u64 {
        let p = p.expect("prediction");
        assert!(p.exact, "{p:?}");
        p.lower
    }

    #[test]
    fn registry_examples() {
        assert_eq!(exact(predict(Kn(9), Kst(3, 3), false)), 17);
        let p = predict(Kn(12), Kst(2, 3), false).unwrap();
        assert_eq!((p.lower, p.upper, p.exact), (13, 13, true));
        assert_eq!(exact(predict(Knl(3, 4), Kst(2, 2), true)), 6);
        let b = predict(Kn(9), Barbell(3), false).unwrap();
        assert_eq!((b.lower, b.upper, b.exact), (0, 9, false));
        assert_eq!(exact(predict(Kn(5), Ks(3), false)), 4);
        assert_eq!(exact(predict(Kn(4), Ks(4), false)), 5);
        assert_eq!(exact(predict(Kn(7), Star(3), false)), 3);
        assert_eq!(exact(predict(Kn(7), Kst(1, 3), false)), 3);
        assert_eq!(exact(predict(Kn(5), Kst(2, 2), false)), 5);
        assert_eq!(exact(predict(Kn(4), Kst(2, 2), false)), 4);
    }

    #[test]
    fn bipartite_hosts() {
        // n^2 - (n-s+1)^2 + (t-s)^2 and its generalization agree on square hosts.
        let p = predict(Knl(5, 5), Kst(2, 3), false).unwrap();
        assert_eq!(p.lower, 25 - 16 + 1);
        assert!(p.exact);
        assert_eq!(exact(predict(Knl(3, 5), Kst(2, 2), false)), 7);
        assert_eq!(exact(predict(Knl(2, 3), Kst(2, 2), true)), 4);
        assert_eq!(exact(predict(Knl(3, 3), Kst(2, 2), true)), 5);
    }

    #[test]
    fn conditions_and_gaps() {
        assert!(predict(Kn(5), Ks(3), true).is_none());
        assert!(predict(Kn(3), Ks(5), false).is_none());
        assert!(predict(Kn(4), Kst(3, 3), false).is_none());
        let wide = predict(Kn(20), Kst(2, 5), false).unwrap();
        assert!(wide.lower <= wide.upper);
        assert!(wide.conditions_met.iter().all(|c| c.met));
        let b = predict(Kn(10), Barbell(3), false).unwrap();
        assert_eq!((b.lower, b.upper), (0, 45));
        assert!(!b.conditions_met[0].met);
    }
}
