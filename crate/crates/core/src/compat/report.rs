use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Term {
    pub name: String,
    pub order: u64,
}

/// Exactness at one term: the image of the incoming map against the kernel
/// of the outgoing one.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Junction {
    pub at: String,
    pub exact: bool,
    pub kernel_size: u64,
    pub image_size: u64,
}

/// An auxiliary verification attached to a sequence (well-definedness,
/// homomorphism laws, order identities).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub ok: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SequenceReport {
    #[serde(default)]
    pub title: String,
    pub terms: Vec<Term>,
    pub junctions: Vec<Junction>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub checks: Vec<Check>,
    /// Kernel and image element lists backing the verdicts.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witnesses: Option<BTreeMap<String, Vec<usize>>>,
}

impl SequenceReport {
    pub fn new(title: &str) -> Self {
        SequenceReport {
            title: title.to_string(),
            ..Default::default()
        }
    }

    pub fn term(&mut self, name: &str, order: usize) {
        self.terms.push(Term {
            name: name.to_string(),
            order: order as u64,
        });
    }

    /// Records a junction whose kernel and image are given as sorted sets.
    pub fn junction(&mut self, at: &str, kernel: &[usize], image: &[usize]) {
        self.junctions.push(Junction {
            at: at.to_string(),
            exact: kernel == image,
            kernel_size: kernel.len() as u64,
            image_size: image.len() as u64,
        });
        let w = self.witnesses.get_or_insert_with(BTreeMap::new);
        w.insert(format!("ker@{at}"), kernel.to_vec());
        w.insert(format!("im@{at}"), image.to_vec());
    }

    pub fn check(&mut self, name: &str, ok: bool) {
        self.checks.push(Check {
            name: name.to_string(),
            ok,
        });
    }

    pub fn order_of(&self, name: &str) -> Option<u64> {
        self.terms.iter().find(|t| t.name == name).map(|t| t.order)
    }

    /// All junctions exact and all checks passed.
    pub fn is_exact(&self) -> bool {
        self.junctions.iter().all(|j| j.exact) && self.checks.iter().all(|c| c.ok)
    }

    pub fn failures(&self) -> Vec<String> {
        let mut out: Vec<String> = self
            .junctions
            .iter()
            .filter(|j| !j.exact)
            .map(|j| format!("not exact at {}", j.at))
            .collect();
        out.extend(self.checks.iter().filter(|c| !c.ok).map(|c| format!("check failed: {}", c.name)));
        out
    }
}

impl std::fmt::Display for SequenceReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "{}", self.title)?;
        let terms: Vec<String> = self.terms.iter().map(|t| format!("{}[{}]", t.name, t.order)).collect();
        writeln!(f, "  {}", terms.join(" -> "))?;
        for j in &self.junctions {
            writeln!(
                f,
                "  at {:<14} kernel {:>5}  image {:>5}  {}",
                j.at,
                j.kernel_size,
                j.image_size,
                if j.exact { "exact" } else { "NOT EXACT" }
            )?;
        }
        for c in &self.checks {
            writeln!(f, "  {:<40} {}", c.name, if c.ok { "ok" } else { "FAILED" })?;
        }
        Ok(())
    }
}
