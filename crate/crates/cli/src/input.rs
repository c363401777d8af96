use ainfhull::algebras::{
    catalog, group_algebra, AlgebraJson, AugmentedAlgebra, CatalogItem, FiniteGroupData, GroupJson,
};
use serde_json::Value;

use crate::{CliError, Source};

fn bad(msg: impl std::fmt::Display) -> CliError {
    CliError::Input(msg.to_string())
}

enum Parsed {
    Algebra(AugmentedAlgebra),
    Group(FiniteGroupData, u32),
}

fn read_file(source: &Source) -> Result<(String, Parsed), CliError> {
    let path = source.input.as_ref().expect("caller checked");
    let text = std::fs::read_to_string(path).map_err(|e| bad(format!("{}: {e}", path.display())))?;
    let value: Value = serde_json::from_str(&text).map_err(|e| bad(format!("{}: {e}", path.display())))?;
    let file_p = value.get("p").and_then(Value::as_u64).ok_or_else(|| bad("input has no prime \"p\""))? as u32;
    if let Some(p) = source.p {
        if p != file_p {
            return Err(bad(format!("--p {p} disagrees with p = {file_p} in the input")));
        }
    }
    let label = path.display().to_string();
    if value.get("mult").is_some() {
        let j: GroupJson = serde_json::from_value(value).map_err(bad)?;
        let g = FiniteGroupData::from_json(&j).map_err(bad)?;
        Ok((label, Parsed::Group(g, file_p)))
    } else {
        let j: AlgebraJson = serde_json::from_value(value).map_err(bad)?;
        Ok((label, Parsed::Algebra(AugmentedAlgebra::from_json(&j).map_err(bad)?)))
    }
}

fn catalog_entry(source: &Source) -> Result<(String, CatalogItem, u32), CliError> {
    let name = source.catalog.as_ref().ok_or_else(|| bad("one of --catalog or --input is required"))?;
    let p = source.p.ok_or_else(|| bad("--p is required with --catalog"))?;
    let item = catalog(name, p).map_err(bad)?;
    Ok((name.clone(), item, p))
}

/// The algebra named by `--catalog`/`--p` or read from `--input`.
pub fn load_algebra(source: &Source) -> Result<(String, AugmentedAlgebra), CliError> {
    if source.input.is_some() {
        let (label, parsed) = read_file(source)?;
        let a = match parsed {
            Parsed::Algebra(a) => a,
            Parsed::Group(g, p) => group_algebra(&g, p).map_err(bad)?,
        };
        return Ok((label, a));
    }
    let (name, item, p) = catalog_entry(source)?;
    Ok((name, item.algebra(p).map_err(bad)?))
}

/// A finite group and the prime.
pub fn load_group(source: &Source) -> Result<(String, FiniteGroupData, u32), CliError> {
    if source.input.is_some() {
        return match read_file(source)? {
            (label, Parsed::Group(g, p)) => Ok((label, g, p)),
            (label, Parsed::Algebra(_)) => Err(bad(format!("{label} is an algebra, not a group"))),
        };
    }
    match catalog_entry(source)? {
        (name, CatalogItem::Group(g), p) => Ok((name, g, p)),
        (name, CatalogItem::Algebra(_), _) => Err(bad(format!("{name} is not a group"))),
    }
}
