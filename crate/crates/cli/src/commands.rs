use std::fmt;

use arcpart::arc::{
    compare_with_j, initial_ideal, sweep, ArcError, IndexDirection, InitialIdealReport, LabConfig,
    Mode, MonomialOrder, TieBreak,
};
use arcpart::colored::{target_count, PartitionCache};
use arcpart::identity::{
    as_counts, series_gl, verify, verify_all, Expectation, IdentityError, IdentityParams,
    IdentityReport, ResolvedParams,
};
use arcpart::monomial::{hilbert_gl_quotient, hilbert_j, Monomial};
use arcpart::partition::{count_a, count_b_total, count_g, PartitionError};
use serde_json::json;

use crate::report::{Item, Output, RunReport, Status, Table};
use crate::{
    ArcsArgs, CountArgs, CountSet, HilbertArgs, Ideal, IndexDirArg, TieBreakArg, VerifyArgs,
};

/// Bad input: reported on stderr with exit code 2.
#[derive(Debug)]
pub struct UsageError(pub String);

impl fmt::Display for UsageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<IdentityError> for UsageError {
    fn from(e: IdentityError) -> Self {
        UsageError(e.to_string())
    }
}

impl From<PartitionError> for UsageError {
    fn from(e: PartitionError) -> Self {
        UsageError(e.to_string())
    }
}

impl From<ArcError> for UsageError {
    fn from(e: ArcError) -> Self {
        match e {
            ArcError::WeightCap { requested, cap } => UsageError(format!(
                "weight {requested} exceeds the cap {cap}; pass --force or raise --weight-cap"
            )),
            other => UsageError(other.to_string()),
        }
    }
}

/// Parses `a..b` or `a..=b` (both inclusive) or a single `n`.
pub fn parse_range(s: &str) -> Result<(u32, u32), String> {
    let num = |t: &str| {
        t.trim()
            .parse::<u32>()
            .map_err(|_| format!("bad range `{s}`"))
    };
    let (lo, hi) = match s.split_once("..") {
        Some((a, b)) => (num(a)?, num(b.strip_prefix('=').unwrap_or(b))?),
        None => {
            let n = num(s)?;
            (n, n)
        }
    };
    if lo > hi {
        return Err(format!("empty range `{s}`"));
    }
    Ok((lo, hi))
}

fn join<T: ToString>(v: &[T]) -> String {
    v.iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(",")
}

fn params_label(p: &ResolvedParams) -> String {
    let mut parts = Vec::new();
    for (k, v) in [("r", p.r), ("i", p.i), ("m", p.m), ("k", p.k), ("l", p.l)] {
        if let Some(v) = v {
            parts.push(format!("{k}={v}"));
        }
    }
    if parts.is_empty() {
        "-".into()
    } else {
        parts.join(" ")
    }
}

fn identity_item(rep: &IdentityReport) -> Item {
    let status = match (rep.expectation, rep.equal) {
        (Expectation::Informational, _) => Status::Info,
        (Expectation::Equal, true) => Status::Pass,
        (Expectation::Equal, false) => Status::Fail,
    };
    Item {
        name: rep.name.clone(),
        params: serde_json::to_value(&rep.params).expect("params serialize"),
        status,
        data: json!({
            "order": rep.order,
            "expectation": rep.expectation,
            "equal": rep.equal,
            "first_divergence": rep.first_divergence,
        }),
    }
}

pub fn verify_cmd(a: &VerifyArgs) -> Result<Output, UsageError> {
    let params = IdentityParams {
        r: a.r,
        i: a.i,
        m: a.m,
        k: a.k,
        l: a.l,
    };
    let reports = if a.identity == "all" {
        verify_all(&params, a.order)?
    } else {
        vec![verify(&a.identity, &params, a.order)?]
    };
    let mut table = Table::new(["identity", "params", "N", "result"]);
    let mut notes = Vec::new();
    for rep in &reports {
        let result = match (&rep.first_divergence, rep.expectation) {
            (None, _) => "equal".to_string(),
            (Some(d), Expectation::Informational) => {
                notes.push(format!(
                    "{}: informational, does not affect the exit status",
                    rep.name
                ));
                format!(
                    "diverges at q^{} ({} vs {}), info",
                    d.exponent, d.lhs, d.rhs
                )
            }
            (Some(d), Expectation::Equal) => {
                format!("DIVERGES at q^{} ({} vs {})", d.exponent, d.lhs, d.rhs)
            }
        };
        table.push(vec![
            rep.name.clone(),
            params_label(&rep.params),
            rep.order.to_string(),
            result,
        ]);
    }
    let items = reports.iter().map(identity_item).collect();
    let report = RunReport::new(
        "verify",
        json!({ "identity": a.identity, "r": a.r, "i": a.i, "m": a.m, "k": a.k, "l": a.l, "order": a.order }),
        items,
    );
    Ok(Output {
        report,
        table,
        notes,
    })
}

pub fn count_cmd(a: &CountArgs) -> Result<Output, UsageError> {
    let (lo, hi) = a.n;
    let ns: Vec<u32> = (lo..=hi).collect();
    let mut headers = vec!["set".to_string(), "r".into(), "i".into(), "l".into()];
    headers.extend(ns.iter().map(|n| n.to_string()));
    let mut table = Table::new(headers);
    let mut items = Vec::new();
    let mut notes = Vec::new();
    let set_name = a.set.name();
    let dash = || "-".to_string();
    let push_row = |table: &mut Table, r: String, i: String, l: String, counts: &[u64]| {
        let mut row = vec![set_name.to_string(), r, i, l];
        row.extend(counts.iter().map(u64::to_string));
        table.push(row);
    };
    match a.set {
        CountSet::F => {
            let cache = PartitionCache::new(hi);
            let mut rows = Vec::new();
            for &r in &a.r {
                let counts = ns
                    .iter()
                    .map(|&n| cache.count_f(r, n))
                    .collect::<Result<Vec<u64>, _>>()?;
                push_row(&mut table, r.to_string(), dash(), dash(), &counts);
                items.push(Item {
                    name: format!("F_{r}"),
                    params: json!({ "r": r }),
                    status: Status::Info,
                    data: json!({ "n": ns, "counts": counts }),
                });
                rows.push(counts);
            }
            let equal = rows.windows(2).all(|w| w[0] == w[1]);
            notes.push(format!(
                "F_r equal across r = {}: {}",
                join(&a.r),
                if equal { "yes" } else { "NO" }
            ));
            items.push(Item {
                name: "cross_r_equality".into(),
                params: json!({ "r": a.r }),
                status: if equal { Status::Pass } else { Status::Fail },
                data: json!({ "equal": equal }),
            });
        }
        CountSet::B | CountSet::A => {
            for &r in &a.r {
                let i = a.i.unwrap_or(r);
                let counts = ns
                    .iter()
                    .map(|&n| {
                        if a.set == CountSet::B {
                            count_b_total(r, i, n)
                        } else {
                            count_a(r, i, n)
                        }
                    })
                    .collect::<Result<Vec<u64>, _>>()?;
                push_row(&mut table, r.to_string(), i.to_string(), dash(), &counts);
                items.push(Item {
                    name: format!("{set_name}_{r},{i}"),
                    params: json!({ "r": r, "i": i }),
                    status: Status::Info,
                    data: json!({ "n": ns, "counts": counts }),
                });
            }
        }
        CountSet::G => {
            for &r in &a.r {
                let counts = ns
                    .iter()
                    .map(|&n| count_g(r, a.l, n))
                    .collect::<Result<Vec<u64>, _>>()?;
                push_row(&mut table, r.to_string(), dash(), a.l.to_string(), &counts);
                items.push(Item {
                    name: format!("G_{r},{}", a.l),
                    params: json!({ "r": r, "l": a.l }),
                    status: Status::Info,
                    data: json!({ "n": ns, "counts": counts }),
                });
            }
        }
        CountSet::Colored => {
            let cache = PartitionCache::new(hi);
            let counts: Vec<u64> = ns.iter().map(|&n| cache.count_colored(n)).collect();
            push_row(&mut table, dash(), dash(), dash(), &counts);
            items.push(Item {
                name: "colored".into(),
                params: json!({}),
                status: Status::Info,
                data: json!({ "n": ns, "counts": counts }),
            });
        }
        CountSet::Target => {
            let tc: Vec<_> = ns.iter().map(|&n| target_count(n)).collect();
            let enumerated: Vec<u64> = tc.iter().map(|t| t.enumerated).collect();
            let series: Vec<u64> = tc.iter().map(|t| t.series).collect();
            let agree = tc.iter().all(|t| t.agree());
            push_row(&mut table, dash(), dash(), dash(), &enumerated);
            notes.push(format!(
                "enumeration vs H^2/(q)_1 coefficients: {}",
                if agree { "agree" } else { "DISAGREE" }
            ));
            items.push(Item {
                name: "target".into(),
                params: json!({}),
                status: if agree { Status::Pass } else { Status::Fail },
                data: json!({ "n": ns, "counts": enumerated, "series": series }),
            });
        }
    }
    let report = RunReport::new(
        "count",
        json!({ "set": set_name, "r": a.r, "i": a.i, "l": a.l, "n": [lo, hi] }),
        items,
    );
    Ok(Output {
        report,
        table,
        notes,
    })
}

pub fn hilbert_cmd(a: &HilbertArgs) -> Result<Output, UsageError> {
    let n = a.order;
    let mut headers = vec!["sequence".to_string()];
    headers.extend((0..=n).map(|w| w.to_string()));
    let mut table = Table::new(headers);
    let row = |name: &str, v: &[u64]| {
        let mut r = vec![name.to_string()];
        r.extend(v.iter().map(u64::to_string));
        r
    };
    let (item, note) = match a.ideal {
        Ideal::Jr => {
            let h = hilbert_j(a.r, n)?;
            let cache = PartitionCache::new(n);
            let f = (0..=n)
                .map(|w| cache.count_f(a.r, w))
                .collect::<Result<Vec<u64>, _>>()?;
            table.push(row("S/J_r", &h));
            table.push(row("F_r", &f));
            let ok = h == f;
            (
                Item {
                    name: format!("hilbert_J_{}", a.r),
                    params: json!({ "r": a.r }),
                    status: if ok { Status::Pass } else { Status::Fail },
                    data: json!({ "counts": h, "count_F": f, "agree": ok }),
                },
                format!(
                    "agreement with count_F: {}",
                    if ok { "pass" } else { "FAIL" }
                ),
            )
        }
        Ideal::Gl => {
            let h = hilbert_gl_quotient(a.r, a.l, n)?;
            let g = (0..=n)
                .map(|w| count_g(a.r, a.l, w))
                .collect::<Result<Vec<u64>, _>>()?;
            let s = as_counts(&series_gl(a.r, a.l, n as usize)?);
            table.push(row("quotient", &h));
            table.push(row("G_r,l", &g));
            table.push(row("series", &s));
            let ok = h == g && g == s;
            (
                Item {
                    name: format!("hilbert_Gl_{},{}", a.r, a.l),
                    params: json!({ "r": a.r, "l": a.l }),
                    status: if ok { Status::Pass } else { Status::Fail },
                    data: json!({ "counts": h, "count_G": g, "series": s, "agree": ok }),
                },
                format!(
                    "agreement with count_G and the G_r,l series: {}",
                    if ok { "pass" } else { "FAIL" }
                ),
            )
        }
    };
    let report = RunReport::new(
        "hilbert",
        json!({ "ideal": a.ideal.name(), "r": a.r, "l": a.l, "order": n }),
        vec![item],
    );
    Ok(Output {
        report,
        table,
        notes: vec![note],
    })
}

fn witnesses(ms: &[Monomial]) -> String {
    const SHOWN: usize = 3;
    let mut s: Vec<String> = ms.iter().take(SHOWN).map(ToString::to_string).collect();
    if ms.len() > SHOWN {
        s.push(format!("(+{})", ms.len() - SHOWN));
    }
    s.join(" ")
}

fn arcs_item(rep: &InitialIdealReport) -> Item {
    Item {
        name: rep.order.label(),
        params: json!({ "r": rep.r, "weight": rep.max_weight, "order": rep.order, "mode": rep.mode }),
        status: if rep.hilbert_ok() {
            Status::Pass
        } else {
            Status::Fail
        },
        data: serde_json::to_value(rep).expect("report serializes"),
    }
}

fn yes_no(b: Option<bool>) -> String {
    match b {
        Some(true) => "yes".into(),
        Some(false) => "no".into(),
        None => "-".into(),
    }
}

pub fn arcs_cmd(a: &ArcsArgs) -> Result<Output, UsageError> {
    let families = MonomialOrder::parse_families(&a.family_order)?;
    let index_dir = match a.index_dir {
        IndexDirArg::Higher => IndexDirection::Higher,
        IndexDirArg::Lower => IndexDirection::Lower,
    };
    let tie_break = match a.tie_break {
        TieBreakArg::Revlex => TieBreak::Revlex,
        TieBreakArg::Lex => TieBreak::Lex,
    };
    let order = MonomialOrder::new(families, index_dir, tie_break)?;
    let mode = if a.adapted {
        Mode::Adapted
    } else {
        Mode::Plain
    };
    let mut cfg = LabConfig::new(a.r, a.weight)
        .with_order(order)
        .with_mode(mode);
    cfg.weight_cap = if a.force { u32::MAX } else { a.weight_cap };
    let params = json!({
        "r": a.r,
        "weight": a.weight,
        "order": order,
        "mode": mode,
        "compare_j": a.compare_j || a.sweep || a.sweep_all,
        "sweep": if a.sweep_all { "all" } else if a.sweep { "tie-break" } else { "none" },
        "weight_cap": cfg.weight_cap,
    });
    let mut notes = Vec::new();
    let (table, items) = if a.sweep || a.sweep_all {
        let orders = if a.sweep_all {
            MonomialOrder::all()
        } else {
            MonomialOrder::builtin(tie_break)
        };
        let reports = sweep(&cfg, &orders, true)?;
        let mut headers = vec!["order".to_string(), "hilbert".into(), "agrees".into()];
        headers.extend((0..=a.weight).map(|w| format!("w{w}")));
        let mut table = Table::new(headers);
        for rep in &reports {
            let mut row = vec![
                rep.order.label(),
                if rep.hilbert_ok() {
                    "ok".into()
                } else {
                    "FAIL".into()
                },
                yes_no(rep.agrees_with_j()),
            ];
            row.extend(rep.weights.iter().map(|w| match w.agrees_with_j {
                Some(true) => "=".to_string(),
                Some(false) => "x".to_string(),
                None => "-".to_string(),
            }));
            table.push(row);
        }
        let agreeing: Vec<String> = reports
            .iter()
            .filter(|r| r.agrees_with_j() == Some(true))
            .map(|r| r.order.label())
            .collect();
        notes.push(format!(
            "orders whose initial ideal equals J_{} through weight {}: {}",
            a.r,
            a.weight,
            if agreeing.is_empty() {
                "none".into()
            } else {
                agreeing.join(", ")
            }
        ));
        (table, reports.iter().map(arcs_item).collect())
    } else {
        let rep = if a.compare_j {
            compare_with_j(&cfg)?
        } else {
            initial_ideal(&cfg)?
        };
        let mut table = Table::new([
            "weight",
            "monomials",
            "generators",
            "ideal",
            "quotient",
            "expected",
            "hilbert",
            "agrees",
            "only_initial",
            "only_J",
        ]);
        for w in &rep.weights {
            table.push(vec![
                w.weight.to_string(),
                w.monomials.to_string(),
                w.generators.to_string(),
                w.ideal_dim.to_string(),
                w.quotient_dim.to_string(),
                w.expected_quotient_dim.to_string(),
                if w.hilbert_ok {
                    "ok".into()
                } else {
                    "FAIL".into()
                },
                yes_no(w.agrees_with_j),
                witnesses(&w.only_initial),
                witnesses(&w.only_j),
            ]);
        }
        notes.push(format!("order {}, {} coordinates", rep.order, rep.mode));
        if a.show_leading {
            for w in &rep.weights {
                let lead: Vec<String> = w.leading.iter().map(ToString::to_string).collect();
                notes.push(format!(
                    "in(a)_{}: {}",
                    w.weight,
                    if lead.is_empty() {
                        "-".into()
                    } else {
                        lead.join(" ")
                    }
                ));
            }
        }
        (table, vec![arcs_item(&rep)])
    };
    notes.push(
        "J_r agreement is evidence only; the exit status follows the Hilbert contract".into(),
    );
    let report = RunReport::new("arcs", params, items);
    Ok(Output {
        report,
        table,
        notes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges() {
        assert_eq!(parse_range("0..12"), Ok((0, 12)));
        assert_eq!(parse_range("3..=5"), Ok((3, 5)));
        assert_eq!(parse_range("4"), Ok((4, 4)));
        assert!(parse_range("5..2").is_err());
        assert!(parse_range("a..2").is_err());
    }

    #[test]
    fn witness_list_is_truncated() {
        let ms: Vec<Monomial> = ["x1", "x2", "x3", "x4", "x5"]
            .iter()
            .map(|s| s.parse().unwrap())
            .collect();
        assert_eq!(witnesses(&ms), "x1 x2 x3 (+2)");
        assert_eq!(witnesses(&[]), "");
    }
}
