use std::fmt::Write as _;

use super::{Elem, FiniteCircleAlgebra};

/// What a law quantifies over.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Shape {
    /// `k` elements of the carrier.
    Elements(usize),
    /// One nonempty unit-normalized subset plus `extra` elements.
    Subset { extra: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    pub elements: Vec<Elem>,
    pub subset: Option<Vec<Elem>>,
}

impl Instance {
    pub fn describe(&self, alg: &FiniteCircleAlgebra) -> String {
        let mut parts: Vec<String> = Vec::new();
        if let Some(s) = &self.subset {
            let names: Vec<&str> = s.iter().map(|&e| alg.name_of(e)).collect();
            parts.push(format!("E={{{}}}", names.join(",")));
        }
        let vars = ["x", "y", "z", "u", "v", "w"];
        for (i, &e) in self.elements.iter().enumerate() {
            let var = vars.get(i).copied().unwrap_or("t");
            parts.push(format!("{var}={}", alg.name_of(e)));
        }
        parts.join(" ")
    }
}

pub type LawFn = dyn Fn(&FiniteCircleAlgebra, &Instance) -> Option<bool> + Send + Sync;

/// A universally quantified property. `holds` returns `None` when the
/// instance touches an undefined shuffle entry; such instances are counted
/// but never reported as failures.
pub struct Law {
    pub name: String,
    pub shape: Shape,
    pub holds: Box<LawFn>,
}

impl Law {
    pub fn new(
        name: impl Into<String>,
        shape: Shape,
        holds: impl Fn(&FiniteCircleAlgebra, &Instance) -> Option<bool> + Send + Sync + 'static,
    ) -> Self {
        Law {
            name: name.into(),
            shape,
            holds: Box::new(holds),
        }
    }

    pub fn check(&self, alg: &FiniteCircleAlgebra, config: &CheckConfig) -> CheckResult {
        let n = alg.len() as u64;
        let (k, subsets) = match self.shape {
            Shape::Elements(k) => (k, None),
            Shape::Subset { extra } => match alg.normalized_subsets(config.instance_budget) {
                Ok(s) => (extra, Some(s)),
                Err(e) => return self.skipped(e.to_string()),
            },
        };
        let total = n
            .checked_pow(k as u32)
            .and_then(|t| t.checked_mul(subsets.as_ref().map_or(1, |s| s.len() as u64)));
        match total {
            Some(t) if t <= config.instance_budget => {}
            _ => return self.skipped(format!("more than {} instances", config.instance_budget)),
        }
        let mut instances = 0;
        let mut undefined = 0;
        let subset_iter: Vec<Option<Vec<Elem>>> = match subsets {
            Some(s) => s.into_iter().map(Some).collect(),
            None => vec![None],
        };
        for subset in subset_iter {
            let mut elements = vec![0; k];
            loop {
                let inst = Instance {
                    elements: elements.clone(),
                    subset: subset.clone(),
                };
                instances += 1;
                match (self.holds)(alg, &inst) {
                    Some(true) => {}
                    Some(false) => {
                        return CheckResult {
                            law: self.name.clone(),
                            outcome: Outcome::Fail(inst),
                            instances,
                            undefined,
                        }
                    }
                    None => undefined += 1,
                }
                if !advance(&mut elements, alg.len()) {
                    break;
                }
            }
        }
        CheckResult {
            law: self.name.clone(),
            outcome: Outcome::Pass,
            instances,
            undefined,
        }
    }

    fn skipped(&self, reason: String) -> CheckResult {
        CheckResult {
            law: self.name.clone(),
            outcome: Outcome::Skipped(reason),
            instances: 0,
            undefined: 0,
        }
    }
}

fn advance(digits: &mut [usize], base: usize) -> bool {
    for d in digits.iter_mut().rev() {
        *d += 1;
        if *d < base {
            return true;
        }
        *d = 0;
    }
    false
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Fail(Instance),
    Skipped(String),
}

#[derive(Clone, Debug)]
pub struct CheckResult {
    pub law: String,
    pub outcome: Outcome,
    pub instances: u64,
    pub undefined: u64,
}

#[derive(Clone, Copy, Debug)]
pub struct CheckConfig {
    /// Upper bound on instances enumerated per law.
    pub instance_budget: u64,
}

impl Default for CheckConfig {
    fn default() -> Self {
        CheckConfig {
            instance_budget: 1 << 22,
        }
    }
}

/// Per-law outcomes of checking a list of laws against one algebra.
#[derive(Clone, Debug)]
pub struct PropertyReport {
    pub subject: String,
    pub results: Vec<CheckResult>,
}

impl PropertyReport {
    pub fn run(alg: &FiniteCircleAlgebra, laws: &[Law], config: &CheckConfig) -> Self {
        PropertyReport {
            subject: alg.name().to_string(),
            results: laws.iter().map(|l| l.check(alg, config)).collect(),
        }
    }

    /// Every law passed.
    pub fn passed(&self) -> bool {
        self.results.iter().all(|r| r.outcome == Outcome::Pass)
    }

    /// `Some(true)` if all laws pass, `Some(false)` on any failure, `None` if
    /// there is no failure but some law was skipped.
    pub fn verdict(&self) -> Option<bool> {
        if self.first_failure().is_some() {
            Some(false)
        } else if self.passed() {
            Some(true)
        } else {
            None
        }
    }

    pub fn first_failure(&self) -> Option<(&str, &Instance)> {
        self.results.iter().find_map(|r| match &r.outcome {
            Outcome::Fail(i) => Some((r.law.as_str(), i)),
            _ => None,
        })
    }

    pub fn result(&self, law: &str) -> Option<&CheckResult> {
        self.results.iter().find(|r| r.law == law)
    }

    /// One tab-separated line per law: name, status, detail.
    pub fn render(&self, alg: &FiniteCircleAlgebra) -> String {
        let mut out = String::new();
        for r in &self.results {
            let (status, detail) = match &r.outcome {
                Outcome::Pass => ("pass", format!("{} instances", r.instances)),
                Outcome::Fail(i) => ("fail", i.describe(alg)),
                Outcome::Skipped(why) => ("skipped", why.clone()),
            };
            let _ = writeln!(out, "{}\t{}\t{}", r.law, status, detail);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::builtin;

    #[test]
    fn odometer_covers_all_tuples() {
        let mut d = vec![0, 0];
        let mut count = 1;
        while advance(&mut d, 3) {
            count += 1;
        }
        assert_eq!(count, 9);
    }

    #[test]
    fn budget_skips() {
        let alg = builtin::gap();
        let law = Law::new("assoc", Shape::Elements(3), |a, i| {
            let [x, y, z] = [i.elements[0], i.elements[1], i.elements[2]];
            Some(a.mul(a.mul(x, y), z) == a.mul(x, a.mul(y, z)))
        });
        let small = CheckConfig { instance_budget: 100 };
        assert!(matches!(law.check(&alg, &small).outcome, Outcome::Skipped(_)));
        let r = law.check(&alg, &CheckConfig::default());
        assert_eq!(r.outcome, Outcome::Pass);
        assert_eq!(r.instances, 216);
    }

    #[test]
    fn failure_is_first_in_enumeration_order() {
        let alg = builtin::delta(2);
        let law = Law::new("never-two", Shape::Elements(1), |a, i| Some(a.name_of(i.elements[0]) != "2"));
        let r = law.check(&alg, &CheckConfig::default());
        match r.outcome {
            Outcome::Fail(i) => assert_eq!(alg.name_of(i.elements[0]), "2"),
            other => panic!("unexpected {other:?}"),
        }
    }
}
