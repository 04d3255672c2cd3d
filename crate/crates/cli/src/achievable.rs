//! `achievable`: closed-form families and their lower hull.

use pirtrade_core::{
    cyclic_transform_point, gmds_points, lower_hull, mds_points, prop3_points, sun_jafar_point,
    uncoded_points, EnvelopeCurve, SystemParams, TradeoffPoint,
};
use serde_json::json;

use crate::report::{json_string, Format, ReportSpec, Table};
use crate::{Error, Outcome, Result};

/// A point family, possibly spread round-robin from fewer servers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Family {
    Mds,
    Uncoded,
    Gmds,
    Prop3,
    SunJafar,
    /// `base` evaluated on `base_n` servers, then spread over all `N`.
    Cyclic { base: Box<Family>, base_n: u32 },
}

/// Splits on commas outside `<...>`.
fn split_top(s: &str) -> Result<Vec<&str>> {
    let mut parts = Vec::new();
    let (mut depth, mut start) = (0i32, 0);
    for (i, ch) in s.char_indices() {
        match ch {
            '<' => depth += 1,
            '>' => depth -= 1,
            ',' if depth == 0 => {
                parts.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
        if depth < 0 {
            return Err(Error::Usage(format!("unbalanced '>' in {s:?}")));
        }
    }
    if depth != 0 {
        return Err(Error::Usage(format!("unbalanced '<' in {s:?}")));
    }
    parts.push(&s[start..]);
    Ok(parts)
}

fn parse_one(s: &str) -> Result<Family> {
    let s = s.trim();
    Ok(match s {
        "mds" => Family::Mds,
        "uncoded" => Family::Uncoded,
        "gmds" => Family::Gmds,
        "prop3" => Family::Prop3,
        "sunjafar" => Family::SunJafar,
        _ => {
            let inner = s
                .strip_prefix("cyclic:<")
                .and_then(|r| r.strip_suffix('>'))
                .ok_or_else(|| Error::Usage(format!("unknown family {s:?}")))?;
            let parts = split_top(inner)?;
            let [base, n0] = parts.as_slice() else {
                return Err(Error::Usage(format!("expected cyclic:<base,N0>, got {s:?}")));
            };
            let base_n = n0
                .trim()
                .parse()
                .map_err(|_| Error::Usage(format!("bad server count in {s:?}")))?;
            Family::Cyclic {
                base: Box::new(parse_one(base)?),
                base_n,
            }
        }
    })
}

pub fn parse_families(s: &str) -> Result<Vec<Family>> {
    if s.trim().is_empty() {
        return Err(Error::Usage("no families requested".to_string()));
    }
    split_top(s)?.into_iter().map(parse_one).collect()
}

pub fn family_points(f: &Family, n: u32, k: u32) -> Result<Vec<TradeoffPoint>> {
    let p = SystemParams::new(n, k)?;
    Ok(match f {
        Family::Mds => mds_points(&p)?,
        Family::Uncoded => uncoded_points(&p)?,
        Family::Gmds => gmds_points(&p)?,
        Family::Prop3 => prop3_points(&p)?,
        Family::SunJafar => vec![sun_jafar_point(&p)],
        Family::Cyclic { base, base_n } => {
            if *base_n < 2 || *base_n > n {
                return Err(Error::Usage(format!(
                    "cyclic base needs 2 <= N0 <= N = {n}, got N0 = {base_n}"
                )));
            }
            family_points(base, *base_n, k)?
                .iter()
                .map(|pt| cyclic_transform_point(pt, *base_n, n))
                .collect::<pirtrade_core::Result<_>>()?
        }
    })
}

fn on_hull(hull: &EnvelopeCurve, pt: &TradeoffPoint) -> bool {
    hull.vertices.iter().any(|v| v.alpha == pt.alpha && v.beta == pt.beta)
}

pub(crate) fn run(n: u32, k: u32, families: &[Family], spec: &ReportSpec) -> Result<Outcome> {
    let mut points = Vec::new();
    for f in families {
        points.extend(family_points(f, n, k)?);
    }
    let hull = lower_hull(&points)?;
    let body = match spec.format {
        Format::Json => json_string(&json!({
            "n": n,
            "k": k,
            "points": points.iter().map(|p| json!({
                "family": p.label.family,
                "label": p.label.to_string(),
                "alpha": spec.value(&p.alpha),
                "beta": spec.value(&p.beta),
                "on_hull": on_hull(&hull, p),
            })).collect::<Vec<_>>(),
            "hull": hull.vertices.iter().map(|v| json!({
                "alpha": spec.value(&v.alpha),
                "beta": spec.value(&v.beta),
                "sources": v.sources,
            })).collect::<Vec<_>>(),
        }))?,
        Format::Csv | Format::Text => {
            let mut t = Table::new(&["family", "label", "alpha", "beta", "alpha_exact", "beta_exact", "on_hull"]);
            for p in &points {
                t.push(vec![
                    p.label.family.clone(),
                    p.label.to_string(),
                    spec.decimal(&p.alpha),
                    spec.decimal(&p.beta),
                    p.alpha.to_string(),
                    p.beta.to_string(),
                    on_hull(&hull, p).to_string(),
                ]);
            }
            if spec.format == Format::Csv {
                t.to_csv()?
            } else {
                t.to_text()
            }
        }
    };
    Ok(Outcome::pass(body))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_nested_families() {
        let f = parse_families("mds, cyclic:<gmds,3>,cyclic:<cyclic:<mds,2>,3>").unwrap();
        assert_eq!(f.len(), 3);
        assert_eq!(
            f[1],
            Family::Cyclic {
                base: Box::new(Family::Gmds),
                base_n: 3
            }
        );
        assert!(parse_families("").is_err());
        assert!(parse_families("mds,bogus").is_err());
        assert!(parse_families("cyclic:<mds,3").is_err());
        assert!(parse_families("cyclic:<mds>").is_err());
    }

    #[test]
    fn mds_has_n_points() {
        assert_eq!(family_points(&Family::Mds, 5, 3).unwrap().len(), 5);
        let spread = family_points(&parse_families("cyclic:<uncoded,2>").unwrap()[0], 4, 3).unwrap();
        assert_eq!(spread.len(), 2);
        assert!(family_points(&parse_families("cyclic:<mds,6>").unwrap()[0], 4, 3).is_err());
    }
}
