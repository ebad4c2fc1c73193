use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use sha2::{Digest, Sha256};

use super::cocycle::{apply_cocycle_deform, chevalley_flip, Cocycle};
use super::expectation::{compare_pmap, flip_expectation, LemmaExpectation};
use super::FamilyError;
use crate::pstruct::verify_restricted;
use crate::report::{CheckRecord, Report};
use crate::superalg::SuperAlgebra;

/// `<dir>/algebra.json`, `<dir>/cocycle_<k>.json`, `<dir>/expect.json`, validated on load.
#[derive(Clone, Debug)]
pub struct FixtureBundle {
    pub name: String,
    pub dir: PathBuf,
    pub algebra: SuperAlgebra,
    pub cocycles: BTreeMap<String, Cocycle>,
    pub expectations: Vec<LemmaExpectation>,
    pub digests: BTreeMap<String, String>,
}

fn invalid(path: &Path, e: impl std::fmt::Display) -> FamilyError {
    FamilyError::FixtureInvalid(format!("{}: {e}", path.display()))
}

fn read(path: &Path) -> Result<String, FamilyError> {
    fs::read_to_string(path).map_err(|e| invalid(path, e))
}

/// Hex sha256 of each file, keyed by the path as given.
pub fn fixture_digests(paths: &[PathBuf]) -> Result<BTreeMap<String, String>, FamilyError> {
    paths
        .iter()
        .map(|p| {
            let bytes = fs::read(p).map_err(|e| invalid(p, e))?;
            Ok((p.display().to_string(), hex::encode(Sha256::digest(&bytes))))
        })
        .collect()
}

/// Brackets whose terms are not of weight wt(a) + wt(b), when weights are declared.
pub fn weight_violations(g: &SuperAlgebra) -> Vec<String> {
    let basis = g.basis();
    let mut out = Vec::new();
    for (&(i, j), terms) in g.stored() {
        let (Some(wi), Some(wj)) = (&basis[i].weight, &basis[j].weight) else {
            continue;
        };
        let sum: Vec<i64> = wi.iter().zip(wj).map(|(a, b)| a + b).collect();
        for (k, _) in terms {
            if basis[*k].weight.as_ref().is_some_and(|w| *w != sum) {
                out.push(format!(
                    "[{}, {}] -> {}",
                    basis[i].name, basis[j].name, basis[*k].name
                ));
            }
        }
    }
    out
}

fn load_algebra(path: &Path) -> Result<SuperAlgebra, FamilyError> {
    let g = SuperAlgebra::from_json(&read(path)?).map_err(|e| invalid(path, e))?;
    let report = g.check_super_identities();
    if !report.is_empty() {
        return Err(invalid(path, report));
    }
    let bad = weight_violations(&g);
    if !bad.is_empty() {
        return Err(invalid(
            path,
            format!("not weight graded: {}", bad.join("; ")),
        ));
    }
    Ok(g)
}

fn load_expectations(path: &Path) -> Result<Vec<LemmaExpectation>, FamilyError> {
    let text = read(path)?;
    if let Ok(list) = serde_json::from_str::<Vec<LemmaExpectation>>(&text) {
        return Ok(list);
    }
    LemmaExpectation::from_json(&text)
        .map(|e| vec![e])
        .map_err(|e| invalid(path, e))
}

impl FixtureBundle {
    pub fn load(dir: &Path) -> Result<Self, FamilyError> {
        let name = dir
            .file_name()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_default();
        let algebra_path = dir.join("algebra.json");
        let expect_path = dir.join("expect.json");
        let algebra = load_algebra(&algebra_path)?;
        let mut files = vec![algebra_path, expect_path.clone()];
        let mut cocycles = BTreeMap::new();
        let mut entries: Vec<PathBuf> = fs::read_dir(dir)
            .map_err(|e| invalid(dir, e))?
            .filter_map(|e| e.ok().map(|e| e.path()))
            .collect();
        entries.sort();
        for path in entries {
            let Some(file) = path.file_name().and_then(|s| s.to_str()) else {
                continue;
            };
            let Some(key) = file
                .strip_prefix("cocycle_")
                .and_then(|s| s.strip_suffix(".json"))
            else {
                continue;
            };
            let c = Cocycle::from_json(&algebra, &read(&path)?).map_err(|e| invalid(&path, e))?;
            cocycles.insert(key.to_string(), c);
            files.push(path);
        }
        let expectations = load_expectations(&expect_path)?;
        let digests = fixture_digests(&files)?;
        Ok(FixtureBundle {
            name,
            dir: dir.to_path_buf(),
            algebra,
            cocycles,
            expectations,
            digests,
        })
    }

    /// Names of the subdirectories of `root` holding an `algebra.json`.
    pub fn discover(root: &Path) -> Vec<String> {
        let Ok(rd) = fs::read_dir(root) else {
            return Vec::new();
        };
        let mut out: Vec<String> = rd
            .filter_map(|e| e.ok())
            .filter(|e| e.path().join("algebra.json").is_file())
            .map(|e| e.file_name().to_string_lossy().into_owned())
            .collect();
        out.sort();
        out
    }

    pub fn expectation_for(&self, key: &str) -> Option<&LemmaExpectation> {
        self.expectations
            .iter()
            .find(|e| e.cocycle.as_deref() == Some(key))
    }
}

fn deform(g: &SuperAlgebra, c: Option<&Cocycle>) -> Result<SuperAlgebra, FamilyError> {
    match c {
        None => Ok(g.clone()),
        Some(c) => {
            apply_cocycle_deform(g, c).map_err(|e| FamilyError::FixtureInvalid(e.to_string()))
        }
    }
}

fn check_deform(
    g: &SuperAlgebra,
    c: Option<&Cocycle>,
    expect: &LemmaExpectation,
    prefix: &str,
) -> Result<Vec<CheckRecord>, FamilyError> {
    let h = deform(g, c)?;
    let r = verify_restricted(&h);
    let mut out = vec![CheckRecord::flag(
        format!("{prefix}restricted"),
        r.is_restricted(),
        r.failures
            .iter()
            .map(|f| format!("{}: {}", f.element, f.reason))
            .collect::<Vec<_>>()
            .join("; "),
    )];
    out.extend(compare_pmap(&h, &r, expect, None, prefix)?);
    Ok(out)
}

fn run(
    g: &SuperAlgebra,
    c: Option<&Cocycle>,
    expect: &LemmaExpectation,
    report: &mut Report,
) -> Result<(), FamilyError> {
    report.extend(check_deform(g, c, expect, "")?);
    if expect.flip {
        let zero;
        let c_ref = match c {
            Some(c) => c,
            None => {
                zero = Cocycle::zero("lambda", crate::scalars::Parity::Even);
                &zero
            }
        };
        let (fg, fc) = chevalley_flip(g, c_ref)?;
        report.extend(check_deform(
            &fg,
            Some(&fc),
            &flip_expectation(expect),
            "flipped: ",
        )?);
    }
    Ok(())
}

/// Deforms the fixture algebra by `cocycle_<key>.json`, computes its p|2p-map and
/// compares it with the matching entry of `expect.json`. Always conditional.
pub fn verify_lemma_fixture(dir: &Path, key: &str) -> Result<Report, FamilyError> {
    let start = Instant::now();
    let bundle = FixtureBundle::load(dir)?;
    let c = bundle.cocycles.get(key).ok_or_else(|| {
        FamilyError::FixtureInvalid(format!("{}: no cocycle_{key}.json", dir.display()))
    })?;
    let expect = bundle.expectation_for(key).ok_or_else(|| {
        FamilyError::FixtureInvalid(format!("{}: no expectation for {key}", dir.display()))
    })?;
    let mut report = Report::new(format!("fixture:{}:{key}", bundle.name));
    report.conditional = true;
    report.digests = bundle.digests.clone();
    if let Some(d) = c.degree {
        report.notes.push(format!("cocycle degree {d}"));
    }
    run(&bundle.algebra, Some(c), expect, &mut report)?;
    Ok(report.finish(start.elapsed()))
}

/// Runs a standalone expectation file naming its algebra (and optional cocycle) file.
pub fn verify_expectation_file(path: &Path) -> Result<Report, FamilyError> {
    let start = Instant::now();
    let expect = LemmaExpectation::from_json(&read(path)?)?;
    let base = path.parent().unwrap_or(Path::new("."));
    let algebra_file = expect
        .algebra_file
        .as_ref()
        .ok_or_else(|| FamilyError::Expectation("algebra_file is required".into()))?;
    let algebra_path = base.join(algebra_file);
    let g = load_algebra(&algebra_path)?;
    let mut files = vec![path.to_path_buf(), algebra_path];
    let cocycle = match &expect.cocycle {
        None => None,
        Some(k) => {
            let p = if k.ends_with(".json") {
                base.join(k)
            } else {
                base.join(format!("cocycle_{k}.json"))
            };
            let c = Cocycle::from_json(&g, &read(&p)?)?;
            files.push(p);
            Some(c)
        }
    };
    let mut report = Report::new(format!("file:{}", path.display()));
    report.conditional = true;
    report.digests = fixture_digests(&files)?;
    run(&g, cocycle.as_ref(), &expect, &mut report)?;
    Ok(report.finish(start.elapsed()))
}
