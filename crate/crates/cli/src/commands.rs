//! One function per subcommand; each returns the rendered output.

use std::fmt;
use std::path::{Path, PathBuf};

use serde::Serialize;

use qfano_core::basket::{parse_basket_spec, BasketPoint, IndexBasket};
use qfano_core::ratmod::{fmt_rational, parse_rational, serde_rational, Rational};
use qfano_core::sarkisov::{expand, library, primary_candidates, replay, LinkScenario, LinkSolution};
use qfano_core::search::{resolve_pairing, search_q, SearchConfig, SearchResult};
use qfano_core::wps::{classify_x10, degree_a3, del_pezzo_table, equivariant_series, fano_index, find_surface, hilbert_series, Polynomial};
use qfano_core::{Basket, FanoCandidate, WeightedHypersurface};

use crate::render::{grid, json, strings, Format};

#[derive(Debug)]
pub enum CliError {
    /// Bad flags or unreadable input files.
    Usage(String),
    Domain(qfano_core::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Domain(qfano_core::Error::ParseRational(_)) => 2,
            CliError::Domain(_) => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => f.write_str(m),
            CliError::Domain(e) => write!(f, "{e}"),
        }
    }
}

impl From<qfano_core::Error> for CliError {
    fn from(e: qfano_core::Error) -> Self {
        CliError::Domain(e)
    }
}

type Out = Result<String, CliError>;

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::Usage(format!("invalid JSON in {}: {e}", path.display())))
}

/// Basket from the command-line shorthand. Pairing units are either all
/// given or all resolved from integrality.
fn basket_from_spec(q: u32, a3: &Rational, spec: &str) -> Result<Basket, CliError> {
    let parsed = parse_basket_spec(spec)?;
    let given = parsed.iter().filter(|(_, b, _)| b.is_some()).count();
    if given == parsed.len() {
        let points = parsed.iter().map(|&(r, b, k)| BasketPoint::new(r, b.unwrap_or(1), k)).collect::<Result<Vec<_>, _>>()?;
        return Ok(Basket::new(points));
    }
    if given > 0 {
        return Err(CliError::Usage(format!("basket {spec:?}: give pairing units r:b for every point or for none")));
    }
    let indices: IndexBasket = spec.parse()?;
    Ok(resolve_pairing(q, a3, &indices)?)
}

#[derive(Serialize)]
struct HilbertOut<'a> {
    q: u32,
    #[serde(rename = "A3", with = "serde_rational")]
    a3: Rational,
    basket: &'a Basket,
    hilbert_row: Vec<i64>,
}

pub fn hilbert(q: u32, a3: &str, basket: &str, to: Option<u32>, format: Format) -> Out {
    let a3 = parse_rational(a3)?;
    let basket = basket_from_spec(q, &a3, basket)?;
    let to = to.unwrap_or(q + 3);
    let c = FanoCandidate::new(q, basket.clone(), a3.clone(), 1, Some(to))?;
    let row: Vec<i64> = c.hilbert_row[..=to as usize].to_vec();
    Ok(match format {
        Format::Table => strings(&row).join(" "),
        Format::Json => json(&HilbertOut { q, a3, basket: &basket, hilbert_row: row }),
        Format::Csv => grid(format, &strings(["m", "h0"]), &row.iter().enumerate().map(|(m, h)| strings([m as i64, *h])).collect::<Vec<_>>()),
    })
}

pub struct SearchFlags {
    pub q: Option<u32>,
    pub dim3: Option<i64>,
    pub torsion: Option<u32>,
    pub jobs: Option<usize>,
    pub config: Option<PathBuf>,
}

pub fn search(flags: SearchFlags, format: Format) -> Out {
    let mut cfg: SearchConfig = match &flags.config {
        Some(path) => read_json(path)?,
        None => {
            let q = flags.q.ok_or_else(|| CliError::Usage("search needs --q or --config".into()))?;
            SearchConfig::for_index(q)
        }
    };
    if let Some(q) = flags.q {
        cfg.q = q;
    }
    if flags.dim3.is_some() {
        cfg.require_dim3a_le = flags.dim3;
    }
    if flags.torsion.is_some() {
        cfg.torsion = flags.torsion;
    }
    if flags.jobs.is_some() {
        cfg.jobs = flags.jobs;
    }
    if cfg.jobs == Some(0) {
        return Err(CliError::Usage("--jobs must be at least 1, got 0".into()));
    }
    let result = search_q(&cfg)?;
    Ok(render_search(&cfg, &result, format))
}

/// Columns `A3, B, g, dim|kA|` for `k < q`, plus the pairing.
pub fn render_search(cfg: &SearchConfig, result: &SearchResult, format: Format) -> String {
    if format == Format::Json {
        return json(result);
    }
    let top = cfg.q.saturating_sub(1).max(1) as usize;
    let mut header = strings(["A3", "B", "g"]);
    header.extend((1..=top).map(|k| k.to_string()));
    header.push("pairing".into());
    let rows: Vec<Vec<String>> = result
        .rows
        .iter()
        .map(|c| {
            let mut row = vec![fmt_rational(&c.a3), c.basket.indices().to_string(), c.genus.to_string()];
            let dims = c.dims();
            row.extend((1..=top).map(|k| dims.get(k).map_or(String::new(), |d| d.to_string())));
            row.push(c.basket.to_string());
            row
        })
        .collect();
    grid(format, &header, &rows)
}

#[derive(Serialize)]
struct WpsOut {
    weights: Vec<u32>,
    degree: u32,
    q: u32,
    #[serde(rename = "A3", with = "serde_rational")]
    a3: Rational,
    hilbert_series: Vec<i64>,
}

pub fn wps(weights: &str, degree: u32, to: u32, format: Format) -> Out {
    let wh: WeightedHypersurface = format!("{weights} : {degree}").parse()?;
    let out = WpsOut {
        weights: wh.weights.clone(),
        degree,
        q: fano_index(&wh)?,
        a3: degree_a3(&wh),
        hilbert_series: hilbert_series(&wh, to),
    };
    Ok(match format {
        Format::Json => json(&out),
        _ => {
            let mut header = strings(["q", "A3"]);
            header.extend((0..=to).map(|m| format!("h{m}")));
            let mut row = vec![out.q.to_string(), fmt_rational(&out.a3)];
            row.extend(strings(&out.hilbert_series));
            grid(format, &header, &[row])
        }
    })
}

pub fn equivariant(model: &str, to: u32, format: Format) -> Out {
    let wh: WeightedHypersurface = model.parse()?;
    if wh.action.is_none() {
        return Err(CliError::Usage(format!("model {model:?} has no group action; use the wps command")));
    }
    let series = equivariant_series(&wh, to)?;
    Ok(match format {
        Format::Json => json(&series),
        Format::Table => format!("q = {}\nh(t,s) = {} + ...", fano_index(&wh)?, series.render()),
        Format::Csv => {
            let mut header = strings(["m"]);
            header.extend((0..series.order).map(|j| format!("j{j}")));
            let rows: Vec<Vec<String>> = series
                .coefficients
                .iter()
                .enumerate()
                .map(|(m, r)| std::iter::once(m.to_string()).chain(strings(r)).collect())
                .collect();
            grid(format, &header, &rows)
        }
    })
}

pub fn classify(poly: &str, format: Format) -> Out {
    let c = classify_x10(&Polynomial::parse(poly)?)?;
    Ok(match format {
        Format::Json => json(&c),
        _ => {
            let case = serde_json::to_value(c.case).expect("enum serializes");
            let lambda = c.lambda.as_ref().map_or(String::new(), fmt_rational);
            let row = strings([case.as_str().unwrap_or_default().to_string(), lambda, c.rational.to_string()]);
            grid(format, &strings(["case", "lambda", "rational"]), &[row])
        }
    })
}

pub fn link_solve(path: &Path, trace: bool, format: Format) -> Out {
    let scen: LinkScenario = read_json(path)?;
    let mut lines: Vec<(LinkSolution, Option<String>)> = Vec::new();
    for (sol, kill) in primary_candidates(&scen)? {
        match kill {
            Some(_) => lines.push((sol, kill)),
            None => lines.extend(expand(&scen, &sol)),
        }
    }
    let survivors: Vec<&LinkSolution> = lines.iter().filter(|(_, k)| k.is_none()).map(|(s, _)| s).collect();
    Ok(match format {
        Format::Json => json(&survivors),
        _ => {
            let mut out: Vec<String> = if trace {
                lines
                    .iter()
                    .map(|(s, k)| match k {
                        Some(id) => format!("{s} KILLED {id}"),
                        None => format!("{s} SURVIVES"),
                    })
                    .collect()
            } else {
                survivors.iter().map(|s| s.to_string()).collect()
            };
            out.push(format!("SURVIVORS: {}", survivors.len()));
            out.join("\n")
        }
    })
}

#[derive(Serialize)]
struct ReplayOut<'a> {
    id: &'a str,
    summary: &'a str,
    kills: std::collections::BTreeMap<String, usize>,
    survivors: &'a [LinkSolution],
}

pub fn link_replay(id: &str, trace: bool, format: Format) -> Out {
    let t = replay(id)?;
    Ok(match format {
        Format::Json => json(&ReplayOut { id: t.id, summary: t.summary, kills: t.kill_counts(), survivors: &t.survivors }),
        _ if trace => t.to_string(),
        _ => {
            let mut out = vec![format!("# replay {}: {}", t.id, t.summary)];
            out.extend(t.survivors.iter().map(|s| format!("{s} SURVIVES")));
            out.push(format!("SURVIVORS: {}", t.survivors.len()));
            out.join("\n")
        }
    })
}

pub fn link_list() -> String {
    library().iter().map(|c| format!("{}  {}", c.id, c.summary)).collect::<Vec<_>>().join("\n")
}

pub fn dp(surface: Option<&str>, to: u32, format: Format) -> Out {
    if to == 0 {
        return Err(CliError::Usage("--to must be at least 1, got 0".into()));
    }
    let surfaces = match surface {
        Some(name) => vec![find_surface(name)?],
        None => del_pezzo_table(),
    };
    let mut rows = Vec::new();
    for s in &surfaces {
        let mut row = vec![s.name.to_string(), s.k2.to_string(), s.q_w.to_string(), fmt_rational(&s.a2), s.singularities.to_string()];
        for k in 1..=to {
            row.push(qfano_core::wps::dp_dims(s.name, k)?.to_string());
        }
        rows.push(row);
    }
    Ok(match format {
        Format::Json => json(&surfaces),
        _ => {
            let mut header = strings(["S", "K2", "qW", "A2", "Sing"]);
            header.extend((1..=to).map(|k| k.to_string()));
            grid(format, &header, &rows)
        }
    })
}

