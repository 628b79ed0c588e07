//! Report documents assembled from the library, shaped for stable JSON
//! emission and round-tripping.

use leecode::bounds::{self, BoundReport};
use leecode::weights::{self, Limits};
use leecode::LinearCode;
use serde::{Deserialize, Serialize};

/// A per-field result: distances and hierarchies that exceed the
/// enumeration cap or search budget report their error without failing
/// the whole analysis.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct Maybe<T> {
    pub value: Option<T>,
    pub error: Option<String>,
}

impl<T> Maybe<T> {
    fn from_result(r: leecode::Result<T>) -> Self {
        match r {
            Ok(value) => Maybe {
                value: Some(value),
                error: None,
            },
            Err(e) => Maybe {
                value: None,
                error: Some(e.to_string()),
            },
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct ProfileDoc {
    pub sigma: u32,
    pub ell_per_row: Vec<u32>,
    pub nprime_per_row: Vec<usize>,
    pub ell: u32,
    pub nprime: usize,
    pub nprime_big: usize,
}

/// Full structural analysis of one code.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct AnalyzeReport {
    pub p: u64,
    pub s: u32,
    pub q: u64,
    pub n: usize,
    pub subtype: Vec<usize>,
    pub rank: usize,
    /// Exact rational dimension, printed as "a" or "a/b".
    pub dimension: String,
    pub free: bool,
    pub support_subtype: Vec<usize>,
    pub degenerate: bool,
    pub codewords: String,
    pub d_lee: Maybe<u64>,
    pub d_hamming: Maybe<u64>,
    pub wt_join: u64,
    pub wt_meet: u64,
    pub join_hierarchy: Maybe<Vec<u64>>,
    pub meet_hierarchy: Maybe<Vec<u64>>,
    pub column_hierarchy: Maybe<Vec<u64>>,
    pub filtration_hierarchy: Maybe<Vec<u64>>,
    pub profile: Maybe<ProfileDoc>,
}

fn hierarchy<T>(upper: usize, mut f: impl FnMut(usize) -> leecode::Result<T>) -> Maybe<Vec<T>> {
    let mut out = Vec::with_capacity(upper);
    for r in 1..=upper {
        match f(r) {
            Ok(v) => out.push(v),
            Err(e) => {
                return Maybe {
                    value: None,
                    error: Some(format!("at r = {r}: {e}")),
                }
            }
        }
    }
    Maybe {
        value: Some(out),
        error: None,
    }
}

pub fn analyze(code: &LinearCode, limits: &Limits) -> AnalyzeReport {
    let modulus = code.modulus();
    let k = code.z_dimension();
    let dimension = if k.is_integer() {
        k.to_integer().to_string()
    } else {
        format!("{}/{}", k.numer(), k.denom())
    };
    let rank = code.rank();
    let s = modulus.s() as usize;
    AnalyzeReport {
        p: modulus.p(),
        s: modulus.s(),
        q: modulus.q(),
        n: code.n(),
        subtype: code.subtype(),
        rank,
        dimension,
        free: code.is_free(),
        support_subtype: code.support_subtype().to_vec(),
        degenerate: code.is_degenerate(),
        codewords: code.codeword_count().to_string(),
        d_lee: Maybe::from_result(weights::min_lee_distance(code, limits)),
        d_hamming: Maybe::from_result(weights::min_hamming_distance(code, limits)),
        wt_join: weights::join_weight(code),
        wt_meet: weights::meet_weight(code),
        join_hierarchy: hierarchy(rank, |r| weights::generalized_join_lee_weight(code, r, limits)),
        meet_hierarchy: hierarchy(rank, |r| weights::generalized_meet_lee_weight(code, r, limits)),
        column_hierarchy: hierarchy(rank, |r| {
            weights::generalized_column_lee_weight(code, r, limits)
        }),
        filtration_hierarchy: hierarchy(s, |r| {
            weights::generalized_filtration_distance(code, r as u32, limits)
        }),
        profile: Maybe::from_result(bounds::filtration_profile(code).map(|p| ProfileDoc {
            sigma: p.sigma,
            ell_per_row: p.rows.iter().map(|r| r.ell).collect(),
            nprime_per_row: p.rows.iter().map(|r| r.nprime).collect(),
            ell: p.ell,
            nprime: p.nprime,
            nprime_big: p.nprime_big,
        })),
    }
}

/// One row of the bounds table.
#[derive(Clone, Debug, Serialize)]
pub struct BoundRow {
    pub name: &'static str,
    pub metric: bounds::Metric,
    pub value: Option<u64>,
    pub applicable: bool,
    pub attained: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    pub params: std::collections::BTreeMap<String, String>,
}

pub fn bounds_rows(code: &LinearCode, limits: &Limits) -> Vec<BoundRow> {
    let d_lee = weights::min_lee_distance(code, limits).ok();
    let d_ham = weights::min_hamming_distance(code, limits).ok();
    bounds::all_bounds(code, limits)
        .into_iter()
        .map(|report: BoundReport| {
            let oracle = match report.metric {
                bounds::Metric::Lee => d_lee,
                bounds::Metric::Hamming => d_ham,
            };
            let attained = match (report.value, oracle, report.name.starts_with("oracle")) {
                (_, _, true) => None,
                (Some(v), Some(d), _) => Some(v == d),
                _ => None,
            };
            BoundRow {
                name: report.name,
                metric: report.metric,
                value: report.value,
                applicable: report.applicable,
                attained,
                reason: report.reason,
                params: report.params,
            }
        })
        .collect()
}
