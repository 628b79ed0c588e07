//! Text and CSV rendering. Text tables are fixed-width with a header
//! row; CSV is RFC-4180 through the csv crate.

use crate::report::{AnalyzeReport, BoundRow, Maybe};
use anyhow::Result;
use leecode::bounds::TableBlock;
use leecode::density::{Census, MonteCarloEstimate};

pub fn text_table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.len()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.len());
        }
    }
    let mut out = String::new();
    let fmt_row = |cells: &[String], widths: &[usize]| -> String {
        cells
            .iter()
            .zip(widths)
            .map(|(c, w)| format!("{c:<w$}"))
            .collect::<Vec<_>>()
            .join("  ")
            .trim_end()
            .to_string()
    };
    let header_cells: Vec<String> = header.iter().map(|h| h.to_string()).collect();
    out.push_str(&fmt_row(&header_cells, &widths));
    out.push('\n');
    for row in rows {
        out.push_str(&fmt_row(row, &widths));
        out.push('\n');
    }
    out
}

pub fn csv_table(header: &[&str], rows: &[Vec<String>]) -> Result<String> {
    let mut writer = csv::Writer::from_writer(Vec::new());
    writer.write_record(header)?;
    for row in rows {
        writer.write_record(row)?;
    }
    Ok(String::from_utf8(writer.into_inner()?)?)
}

fn maybe_str<T: ToString>(m: &Maybe<T>) -> String {
    match (&m.value, &m.error) {
        (Some(v), _) => v.to_string(),
        (None, Some(e)) => format!("unavailable ({e})"),
        (None, None) => "unavailable".into(),
    }
}

fn maybe_list(m: &Maybe<Vec<u64>>) -> String {
    match (&m.value, &m.error) {
        (Some(v), _) => v
            .iter()
            .map(u64::to_string)
            .collect::<Vec<_>>()
            .join(" "),
        (None, Some(e)) => format!("unavailable ({e})"),
        (None, None) => "unavailable".into(),
    }
}

fn list(v: &[usize]) -> String {
    v.iter().map(usize::to_string).collect::<Vec<_>>().join(" ")
}

pub fn analyze_fields(report: &AnalyzeReport) -> Vec<(String, String)> {
    let mut out = vec![
        ("ring".into(), format!("Z/{} (p={}, s={})", report.q, report.p, report.s)),
        ("n".into(), report.n.to_string()),
        ("subtype".into(), list(&report.subtype)),
        ("rank".into(), report.rank.to_string()),
        ("dimension".into(), report.dimension.clone()),
        ("free".into(), report.free.to_string()),
        ("support_subtype".into(), list(&report.support_subtype)),
        ("degenerate".into(), report.degenerate.to_string()),
        ("codewords".into(), report.codewords.clone()),
        ("d_lee".into(), maybe_str(&report.d_lee)),
        ("d_hamming".into(), maybe_str(&report.d_hamming)),
        ("wt_join".into(), report.wt_join.to_string()),
        ("wt_meet".into(), report.wt_meet.to_string()),
        ("join_hierarchy".into(), maybe_list(&report.join_hierarchy)),
        ("meet_hierarchy".into(), maybe_list(&report.meet_hierarchy)),
        ("column_hierarchy".into(), maybe_list(&report.column_hierarchy)),
        ("filtration_hierarchy".into(), maybe_list(&report.filtration_hierarchy)),
    ];
    match (&report.profile.value, &report.profile.error) {
        (Some(p), _) => {
            out.push(("sigma".into(), p.sigma.to_string()));
            out.push((
                "ell_per_row".into(),
                p.ell_per_row.iter().map(u32::to_string).collect::<Vec<_>>().join(" "),
            ));
            out.push(("nprime_per_row".into(), list(&p.nprime_per_row)));
            out.push(("ell".into(), p.ell.to_string()));
            out.push(("nprime".into(), p.nprime.to_string()));
            out.push(("N'".into(), p.nprime_big.to_string()));
        }
        (None, e) => out.push((
            "profile".into(),
            e.clone().unwrap_or_else(|| "unavailable".into()),
        )),
    }
    out
}

pub fn bounds_rows_cells(rows: &[BoundRow]) -> Vec<Vec<String>> {
    rows.iter()
        .map(|r| {
            vec![
                r.name.to_string(),
                match r.metric {
                    leecode::bounds::Metric::Lee => "Lee".into(),
                    leecode::bounds::Metric::Hamming => "Hamming".into(),
                },
                r.value.map_or("-".into(), |v| v.to_string()),
                r.applicable.to_string(),
                r.attained.map_or("-".into(), |a| a.to_string()),
                r.reason.clone().unwrap_or_default(),
            ]
        })
        .collect()
}

pub fn table_block_cells(block: &TableBlock) -> Vec<Vec<String>> {
    let params = format!("({}, {}, {}, {})", block.n, block.k_rank, block.q, block.sigma);
    let alderson = if block.alderson.is_empty() {
        "not existing".to_string()
    } else {
        block
            .alderson
            .iter()
            .map(|(subtype, v)| format!("{v} (subtype {})", list(subtype)))
            .collect::<Vec<_>>()
            .join("; ")
    };
    block
        .filtration
        .iter()
        .enumerate()
        .map(|(i, cell)| {
            let pair = match cell.nprime {
                Some(np) => format!("({}, {})", cell.ell, np),
                None => format!("({}, *)", cell.ell),
            };
            // Repeat the block-level columns on the first row only.
            if i == 0 {
                vec![
                    params.clone(),
                    alderson.clone(),
                    block.shiromoto.to_string(),
                    block.join.to_string(),
                    pair,
                    cell.value.to_string(),
                ]
            } else {
                vec![
                    String::new(),
                    String::new(),
                    String::new(),
                    String::new(),
                    pair,
                    cell.value.to_string(),
                ]
            }
        })
        .collect()
}

/// Flat CSV rows for a table block: every row carries the block params.
pub fn table_block_csv_rows(block: &TableBlock) -> Vec<Vec<String>> {
    let alderson = if block.alderson.is_empty() {
        "not existing".to_string()
    } else {
        block
            .alderson
            .iter()
            .map(|(subtype, v)| format!("{v} (subtype {})", list(subtype)))
            .collect::<Vec<_>>()
            .join("; ")
    };
    block
        .filtration
        .iter()
        .map(|cell| {
            vec![
                block.n.to_string(),
                block.k_rank.to_string(),
                block.q.to_string(),
                block.sigma.to_string(),
                alderson.clone(),
                block.shiromoto.to_string(),
                block.join.to_string(),
                cell.ell.to_string(),
                cell.nprime.map_or("*".into(), |np| np.to_string()),
                cell.value.to_string(),
            ]
        })
        .collect()
}

pub fn monte_carlo_cells(label: &str, params: &str, mc: &MonteCarloEstimate) -> Vec<String> {
    vec![
        label.to_string(),
        params.to_string(),
        mc.exact.clone().unwrap_or_else(|| "-".into()),
        format!("{:.6}", mc.estimate),
        format!("{:.6}", mc.stderr),
        mc.trials.to_string(),
        mc.seed.to_string(),
    ]
}

pub fn census_cells(params: &str, census: &Census) -> Vec<String> {
    vec![
        census.bound.to_string(),
        params.to_string(),
        census.total.to_string(),
        census.attaining.to_string(),
        format!("{}/{}", census.attaining, census.total),
    ]
}
