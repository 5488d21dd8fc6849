//! JSON and plain-text formats for groups, extensions, factor systems,
//! cochains and reports.

use std::path::Path;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::cohomology::Cochain;
use crate::corpus::{self, ExampleDescriptor};
use crate::error::{Error, Result};
use crate::extensions::{factor_system, make_extension, Extension, FactorSystem};
use crate::groups::Group;
use crate::perm::Automorphism;

/// `{"label": str, "order": n, "table": [[...], ...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupRecord {
    #[serde(default)]
    pub label: String,
    pub order: usize,
    pub table: Vec<Vec<usize>>,
}

impl From<&Group> for GroupRecord {
    fn from(g: &Group) -> Self {
        GroupRecord {
            label: g.label().to_string(),
            order: g.order(),
            table: g.rows(),
        }
    }
}

fn parse_error(location: impl Into<String>, message: impl Into<String>) -> Error {
    Error::Parse {
        location: location.into(),
        message: message.into(),
    }
}

impl GroupRecord {
    /// Checks shape and the Latin-square property, naming the offending row
    /// or column, then validates the group axioms.
    pub fn to_group(&self) -> Result<Group> {
        let n = self.order;
        if n == 0 {
            return Err(parse_error("order", "order must be positive"));
        }
        if self.table.len() != n {
            return Err(parse_error(
                "table",
                format!("{} rows for order {n}", self.table.len()),
            ));
        }
        for (r, row) in self.table.iter().enumerate() {
            if row.len() != n {
                return Err(parse_error(format!("row {r}"), format!("length {} instead of {n}", row.len())));
            }
            let mut seen = vec![false; n];
            for &x in row {
                if x >= n || std::mem::replace(&mut seen[x], true) {
                    return Err(parse_error(format!("row {r}"), format!("not a permutation of 0..{n} (entry {x})")));
                }
            }
        }
        for c in 0..n {
            let mut seen = vec![false; n];
            for row in &self.table {
                if std::mem::replace(&mut seen[row[c]], true) {
                    return Err(parse_error(format!("column {c}"), format!("repeated entry {}", row[c])));
                }
            }
        }
        Group::from_cayley_table(self.table.clone(), &self.label)
    }
}

fn json_error(e: serde_json::Error) -> Error {
    parse_error(format!("line {}, column {}", e.line(), e.column()), e.to_string())
}

pub fn to_json<T: Serialize>(x: &T) -> Result<String> {
    serde_json::to_string_pretty(x).map_err(|e| Error::InvalidInput(e.to_string()))
}

pub fn from_json<T: DeserializeOwned>(s: &str) -> Result<T> {
    serde_json::from_str(s).map_err(json_error)
}

pub fn group_to_json(g: &Group) -> Result<String> {
    to_json(&GroupRecord::from(g))
}

pub fn group_from_json(s: &str) -> Result<Group> {
    from_json::<GroupRecord>(s)?.to_group()
}

/// `n` on the first line, then `n` whitespace-separated rows.
pub fn group_to_text(g: &Group) -> String {
    let mut out = format!("{}\n", g.order());
    for row in g.rows() {
        let cells: Vec<String> = row.iter().map(|x| x.to_string()).collect();
        out.push_str(&cells.join(" "));
        out.push('\n');
    }
    out
}

pub fn group_from_text(s: &str, label: &str) -> Result<Group> {
    let mut lines = s.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
    let (_, first) = lines.next().ok_or_else(|| parse_error("line 1", "empty input"))?;
    let order: usize = first
        .trim()
        .parse()
        .map_err(|_| parse_error("line 1", format!("expected the order, found `{}`", first.trim())))?;
    let mut table = Vec::with_capacity(order);
    for (r, (_, line)) in lines.enumerate() {
        let row = line
            .split_whitespace()
            .map(|t| t.parse::<usize>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|e| parse_error(format!("row {r}"), e.to_string()))?;
        table.push(row);
    }
    GroupRecord {
        label: label.to_string(),
        order,
        table,
    }
    .to_group()
}

/// Reads a group file, choosing the format by its first non-blank character.
pub fn read_group(path: &Path) -> Result<Group> {
    let s = std::fs::read_to_string(path).map_err(|e| Error::InvalidInput(format!("{}: {e}", path.display())))?;
    let label = path.file_stem().and_then(|s| s.to_str()).unwrap_or("G");
    if s.trim_start().starts_with('{') {
        group_from_json(&s)
    } else {
        group_from_text(&s, label)
    }
}

/// `{"H": group, "Q": group, "phi": [{"images": [...]}, ...], "f": [...]}`
/// with `f` row-major over `Q × Q`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorSystemRecord {
    #[serde(rename = "H")]
    pub h: GroupRecord,
    #[serde(rename = "Q")]
    pub q: GroupRecord,
    pub phi: Vec<Automorphism>,
    pub f: Vec<usize>,
}

impl From<&FactorSystem> for FactorSystemRecord {
    fn from(fs: &FactorSystem) -> Self {
        FactorSystemRecord {
            h: fs.h().into(),
            q: fs.q().into(),
            phi: fs.phis().to_vec(),
            f: fs.f_values().to_vec(),
        }
    }
}

impl FactorSystemRecord {
    pub fn to_factor_system(&self) -> Result<FactorSystem> {
        FactorSystem::new(self.h.to_group()?, self.q.to_group()?, self.phi.clone(), self.f.clone())
    }
}

/// `{"G": group, "H": [members], "section": [...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtensionRecord {
    #[serde(rename = "G")]
    pub g: GroupRecord,
    #[serde(rename = "H")]
    pub h: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub section: Option<Vec<usize>>,
}

impl From<&Extension> for ExtensionRecord {
    fn from(e: &Extension) -> Self {
        ExtensionRecord {
            g: e.g().into(),
            h: e.h().members().to_vec(),
            section: Some(e.section().to_vec()),
        }
    }
}

impl ExtensionRecord {
    pub fn to_extension(&self) -> Result<Extension> {
        let g = self.g.to_group()?;
        let h = g.subgroup(&self.h)?;
        let e = make_extension(&g, &h)?;
        match &self.section {
            Some(s) => e.with_section(s.clone()),
            None => Ok(e),
        }
    }
}

/// A normalized cochain as a flat array: length `|Q|` in degree 1,
/// `|Q|²` row-major in degree 2.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CochainRecord {
    pub degree: usize,
    pub values: Cochain,
}

/// One saved catalog entry.
#[derive(Clone, Debug, Serialize)]
pub struct CorpusEntry {
    pub example: ExampleDescriptor,
    pub extension: ExtensionRecord,
    pub factor_system: FactorSystemRecord,
}

/// Writes one JSON file per catalog entry into `dir`; returns the paths.
pub fn write_corpus(dir: &Path) -> Result<Vec<std::path::PathBuf>> {
    std::fs::create_dir_all(dir).map_err(|e| Error::InvalidInput(format!("{}: {e}", dir.display())))?;
    let mut written = Vec::new();
    for d in corpus::catalog() {
        let e = corpus::example(d.name)?;
        let entry = CorpusEntry {
            extension: (&e).into(),
            factor_system: (&factor_system(&e)).into(),
            example: d,
        };
        let path = dir.join(format!("{}.json", entry.example.name));
        std::fs::write(&path, to_json(&entry)?).map_err(|e| Error::InvalidInput(format!("{}: {e}", path.display())))?;
        written.push(path);
    }
    Ok(written)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::caps::Caps;
    use crate::extensions::are_equivalent;
    use crate::groups::{standard_group, GroupSpec};

    fn d4() -> Group {
        standard_group(&GroupSpec::Dihedral(8)).unwrap()
    }

    #[test]
    fn group_formats_round_trip() {
        let g = d4();
        assert!(group_from_json(&group_to_json(&g).unwrap()).unwrap().same_table(&g));
        assert!(group_from_text(&group_to_text(&g), "D4").unwrap().same_table(&g));
    }

    #[test]
    fn bad_row_is_named() {
        let err = group_from_text("2\n0 1\n1 1\n", "bad").unwrap_err();
        match err {
            Error::Parse { location, .. } => assert_eq!(location, "row 1"),
            other => panic!("unexpected {other:?}"),
        }
        let err = group_from_json(r#"{"label":"x","order":2,"table":[[0,1],[1]]}"#).unwrap_err();
        assert!(matches!(err, Error::Parse { ref location, .. } if location == "row 1"));
        assert!(matches!(group_from_json("{"), Err(Error::Parse { .. })));
    }

    #[test]
    fn factor_system_round_trip_keeps_class() {
        let e = corpus::example("q8_center").unwrap();
        let fs = factor_system(&e);
        let back: FactorSystemRecord = from_json(&to_json(&FactorSystemRecord::from(&fs)).unwrap()).unwrap();
        let fs2 = back.to_factor_system().unwrap();
        assert!(are_equivalent(&fs, &fs2, &Caps::default()).unwrap());
        let rec: ExtensionRecord = from_json(&to_json(&ExtensionRecord::from(&e)).unwrap()).unwrap();
        assert_eq!(rec.to_extension().unwrap().section(), e.section());
    }
}
