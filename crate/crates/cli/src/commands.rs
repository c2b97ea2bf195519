use std::path::{Path, PathBuf};

use clap::ValueEnum;
use serde_json::{json, Value};
use ucpoly::census::{self, CensusOptions};
use ucpoly::ehrhart::{mahler_report, unconditional_h_star};
use ucpoly::groebner::{chain_ehrhart, chain_groebner, uc_groebner, verify_groebner_basis, verify_toric};
use ucpoly::lattice::{gale_pair, is_gorenstein_stable, orthant_piece_is_compressed, stable_set_polytope};
use ucpoly::polytope::{dual_description, is_reflexive, polar_dual};
use ucpoly::triangulate::{
    is_flag, is_unimodular, lift_heights, lift_unconditional, pulling_heights, pulling_triangulation_lex, total_volume,
};
use ucpoly::{birkhoff, Budget, Error, Graph, Poset, Result};

use crate::Format;

pub struct Context {
    pub budget: Budget,
    pub format: Format,
    pub stretch: bool,
}

pub struct Report {
    pub json: Value,
    pub csv: Option<String>,
    /// False when a check the command performs did not hold.
    pub verified: bool,
    /// Some section hit a size limit and was skipped.
    pub incomplete: bool,
}

impl Report {
    pub fn render(&self, format: Format) -> Result<String> {
        match format {
            Format::Json => Ok(self.json.to_string()),
            Format::Pretty => Ok(serde_json::to_string_pretty(&self.json).expect("values serialize")),
            Format::Csv => self
                .csv
                .clone()
                .ok_or_else(|| Error::InvalidArgument("csv output is not available for this command".into())),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum BasisFamily {
    Chain,
    Uc,
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn read_graph(path: &Path) -> Result<Graph> {
    Graph::parse(&read(path)?)
}

/// Size limits inside a report become explicit "skipped" markers.
fn or_skipped(r: Result<Value>) -> Result<Value> {
    match r {
        Err(Error::SizeLimit(msg)) => Ok(json!({ "skipped": msg })),
        other => other,
    }
}

fn reflexivity(g: &Graph) -> Result<Value> {
    let up = stable_set_polytope(g)?.unconditional();
    let h = dual_description(&up.vrep()?)?;
    let reflexive = is_reflexive(&h)?;
    let polar = polar_dual(&h)?;
    let co = stable_set_polytope(&g.complement())?.unconditional().vrep()?;
    Ok(json!({
        "reflexive": reflexive,
        "facets": h.rows.len(),
        "polar_is_complement_lift": polar.same_point_set(&co),
    }))
}

pub fn analyze_graph(ctx: &Context, file: &Path) -> Result<Report> {
    let g = read_graph(file)?;
    let perfect = g.is_perfect()?;
    let mut out = json!({
        "n": g.n(),
        "edges": g.edge_count(),
        "perfect": perfect,
        "cis": g.is_cis(),
        "well_covered": g.is_well_covered(),
        "co_well_covered": g.is_co_well_covered(),
    });
    // every orthant piece is a sign image of the nonnegative one
    out["orthant_compressed"] = or_skipped(orthant_piece_is_compressed(&g).map(Value::Bool))?;
    let mut verified = true;
    if !perfect {
        for key in ["gorenstein", "reflexivity", "h_star", "volume", "mahler"] {
            out[key] = json!("inapplicable");
        }
        let incomplete = out["orthant_compressed"].get("skipped").is_some();
        return Ok(Report { json: out, csv: None, verified, incomplete });
    }
    out["gorenstein"] = json!(is_gorenstein_stable(&g)?);
    let refl = or_skipped(reflexivity(&g))?;
    if refl.get("reflexive") == Some(&json!(false)) || refl.get("polar_is_complement_lift") == Some(&json!(false)) {
        verified = false;
    }
    out["reflexivity"] = refl;
    let h = unconditional_h_star(&g, ctx.budget);
    let hc = unconditional_h_star(&g.complement(), ctx.budget);
    out["h_star"] = or_skipped(h.as_ref().map(|h| h.to_json()).map_err(Clone::clone))?;
    out["volume"] = or_skipped(h.as_ref().map(|h| json!(h.normalized_volume().to_string())).map_err(Clone::clone))?;
    out["mahler"] = or_skipped(match (&h, &hc) {
        (Ok(a), Ok(b)) => {
            let m = mahler_report(g.n(), a.normalized_volume() * b.normalized_volume());
            Ok(json!({
                "product": m.product.to_string(),
                "bound": m.bound.to_string(),
                "holds": m.ok,
                "equality": m.equality,
            }))
        }
        (Err(e), _) | (_, Err(e)) => Err(e.clone()),
    })?;
    if out["mahler"].get("holds") == Some(&json!(false)) {
        verified = false;
    }
    let incomplete = out.as_object().expect("report is an object").values().any(|v| v.get("skipped").is_some());
    Ok(Report { json: out, csv: None, verified, incomplete })
}

pub fn tables(ctx: &Context, which: u8, n_max: usize) -> Result<Report> {
    let rows = birkhoff::reproduce_table(which, n_max, ctx.budget, ctx.stretch)?;
    let mut csv = String::from("n,vol,h*");
    for r in &rows {
        csv.push('\n');
        csv.push_str(&r.to_csv());
    }
    Ok(Report {
        json: json!({ "table": which, "rows": rows.iter().map(|r| r.to_json()).collect::<Vec<_>>() }),
        csv: Some(csv),
        verified: true,
        incomplete: false,
    })
}

pub fn census(ctx: &Context, n: usize, hstar: bool, cache: Option<PathBuf>) -> Result<Report> {
    if n >= census::MAX_CENSUS_VERTICES && !ctx.stretch {
        return Err(Error::SizeLimit(format!("census at n = {n} needs --stretch")));
    }
    let records = census::census(n, &CensusOptions { with_hstar: hstar, budget: ctx.budget, cache })?;
    let perfect = records.iter().filter(|r| r.perfect).count();
    let summary = format!("p({n}) = {perfect}");
    let mut csv = summary.clone();
    if hstar {
        csv.push_str("\ncode,perfect,h*");
        for r in &records {
            csv.push_str(&format!(
                "\n{},{},{}",
                r.code,
                r.perfect as u8,
                r.hstar.as_ref().map(|h| h.to_csv()).unwrap_or_default()
            ));
        }
    }
    let mut json = json!({ "n": n, "classes": records.len(), "perfect": perfect, "summary": summary });
    if hstar {
        json["records"] = records.iter().map(|r| r.to_json()).collect();
    }
    Ok(Report { json, csv: Some(csv), verified: true, incomplete: false })
}

pub fn santalo(ctx: &Context, n: usize, cache: Option<PathBuf>) -> Result<Report> {
    let r = census::santalo_experiment(n, ctx.budget, cache)?;
    let mut csv = String::from("n,product,vol,vol_complement,code,code_complement");
    for (a, b) in &r.argmax {
        csv.push_str(&format!("\n{},{},{},{},{a},{b}", r.n, r.product, r.volumes.0, r.volumes.1));
    }
    Ok(Report { json: r.to_json(), csv: Some(csv), verified: true, incomplete: false })
}

pub fn groebner(
    ctx: &Context,
    poset: &Path,
    family: BasisFamily,
    pretty: bool,
    verify: bool,
    step_cap: u64,
) -> Result<Report> {
    let p = Poset::parse(&read(poset)?)?;
    let basis = match family {
        BasisFamily::Chain => chain_groebner(&p)?,
        BasisFamily::Uc => uc_groebner(&p)?,
    };
    let points = basis.points();
    let mut verified = basis.binomials.iter().all(|b| verify_toric(b, &points));
    let mut json = basis.to_json(pretty);
    json["count"] = json!(basis.binomials.len());
    if verify {
        let ehr = chain_ehrhart(&p, 3, family == BasisFamily::Uc, ctx.budget)?;
        let ok = verify_groebner_basis(&basis, &ehr, step_cap)?;
        json["groebner_verified"] = json!(ok);
        verified &= ok;
    }
    Ok(Report { json, csv: None, verified, incomplete: false })
}

pub fn gale(graph: &Path) -> Result<Report> {
    let g = read_graph(graph)?;
    let pair = gale_pair(&g)?;
    Ok(Report {
        json: json!({ "p": pair.p.to_json(), "q": pair.q.to_json(), "verified": pair.verified }),
        csv: None,
        verified: pair.verified,
        incomplete: false,
    })
}

pub fn triangulate(graph: &Path, base: bool, emit_heights: bool) -> Result<Report> {
    let g = read_graph(graph)?;
    let p = stable_set_polytope(&g)?;
    let t = pulling_triangulation_lex(&p.vrep(), &p.hrep())?;
    let out = if base { t.clone() } else { lift_unconditional(&t)? };
    let heights =
        if emit_heights { Some(lift_heights(&out, &t, &pulling_heights(t.vertex_table.len()))?) } else { None };
    let unimodular = is_unimodular(&out)?;
    let mut json = out.to_json(heights.as_deref());
    json["summary"] = json!({
        "simplices": out.len(),
        "vertices": out.vertex_table.len(),
        "volume": total_volume(&out)?.to_string(),
        "unimodular": unimodular,
        "flag": is_flag(&out),
    });
    Ok(Report { json, csv: None, verified: unimodular, incomplete: false })
}
