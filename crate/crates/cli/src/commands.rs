use serde::Serialize;
use serde_json::{json, Value};
use sheafsym_core::appendix::{AppendixTable, SideMode};
use sheafsym_core::context::{levi_rank, CSign, GroupContext, GroupType, Twist};
use sheafsym_core::induction::{b_d, d_minimal, induce, Candidate, HReading, SubgroupShape};
use sheafsym_core::lagrangian::{enumerate_j, label_specs, make_pair, make_pair_at, SymbolPair};
use sheafsym_core::properties::{all_properties, REFUTED};
use sheafsym_core::sheaf::{char_value, restrict_labels, verify_classes, verify_table, xi_family, CheckStatus, Side};
use sheafsym_core::springer::{class_dimension, delta_map, springer_rank, DeltaBranch, SpringerSymbol};
use sheafsym_core::{Symbol, SymbolError};
use sheafsym_oracle::{check_d_minimal, check_lr, verify_against_symbols, Oracle, MAX_RANK};

use crate::args::{Command, CtxArgs, ModeArg, PairArgs, ReadingArg, SideArg, Suite};
use crate::error::CliError;

fn to_json<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serializable output")
}

fn group(ctx: &CtxArgs) -> Result<GroupType, CliError> {
    let g = ctx.group.as_deref().ok_or_else(|| CliError::Usage("--type is required".into()))?;
    g.parse().map_err(|e: sheafsym_core::ContextError| CliError::Usage(e.to_string()))
}

fn c_sign(ctx: &CtxArgs) -> Result<CSign, CliError> {
    match ctx.d.as_deref() {
        None | Some("4t+1") | Some("plus") | Some("+") => Ok(CSign::Plus),
        Some("4t-1") | Some("4t−1") | Some("minus") | Some("-") => Ok(CSign::Minus),
        Some(other) => Err(CliError::Usage(format!("--d expects 4t+1 or 4t-1, got {other:?}"))),
    }
}

fn twist(ctx: &CtxArgs) -> Result<Twist, CliError> {
    match ctx.twist.as_deref() {
        None => Ok(Twist::Identity),
        Some(t) => t.parse().map_err(|e: sheafsym_core::ContextError| CliError::Usage(e.to_string())),
    }
}

fn symbol_error(e: SymbolError) -> CliError {
    match e {
        SymbolError::Syntax { .. } => CliError::Usage(e.to_string()),
        other => CliError::Domain(other.to_string()),
    }
}

fn is_springer(text: &str) -> bool {
    matches!(text.trim().chars().next(), Some('X') | Some('Y'))
}

fn parse_symbol(text: &str) -> Result<Symbol, CliError> {
    text.parse().map_err(symbol_error)
}

fn parse_springer(text: &str) -> Result<SpringerSymbol, CliError> {
    text.parse().map_err(|e| match e {
        sheafsym_core::SpringerError::Symbol(s) => symbol_error(s),
        other => CliError::Domain(other.to_string()),
    })
}

fn pair_symbols(p: &PairArgs) -> Result<(Symbol, Symbol), CliError> {
    Ok((parse_symbol(&p.pair[0])?, parse_symbol(&p.pair[1])?))
}

/// The pair as labels of the two factors for `group`.
fn labels(p: &PairArgs, group: GroupType) -> Result<(Symbol, Symbol), CliError> {
    let (l, r) = pair_symbols(p)?;
    let (vs, ws) = label_specs(group, l.rank(), r.rank());
    let admit = |spec: &sheafsym_core::LabelSetSpec, s: &Symbol| {
        spec.admit(s).ok_or_else(|| {
            CliError::Domain(format!("{s} is not a label of the {:?} factor for type {group}", spec.family))
        })
    };
    Ok((admit(&vs, &l)?, admit(&ws, &r)?))
}

fn pair_json(p: &SymbolPair, sum: &SpringerSymbol) -> Value {
    json!({
        "case": p.case.to_string(),
        "t": p.t,
        "p": p.p,
        "left": p.left.to_string(),
        "right": p.right.to_string(),
        "symbol": sum.to_string(),
        "entries": sum.entries(),
        "b": sum.b_value(),
        "a_sum": p.a_sum(),
        "conditions": to_json(&p.equality_conditions()),
    })
}

fn candidate_json(c: &Candidate) -> Value {
    json!({ "label": c.label.to_string(), "b": c.b_value, "multiplicity": to_json(&c.multiplicity) })
}

pub fn run(command: Command) -> Result<Value, CliError> {
    match command {
        Command::Normalize { symbol } => {
            if is_springer(&symbol) {
                Ok(json!({ "symbol": parse_springer(&symbol)?.normalize().to_string() }))
            } else {
                Ok(json!({ "symbol": parse_symbol(&symbol)?.canonical().to_string() }))
            }
        }
        Command::Rank { symbol } => {
            let rank =
                if is_springer(&symbol) { parse_springer(&symbol)?.rank() } else { parse_symbol(&symbol)?.rank() };
            Ok(json!({ "rank": rank }))
        }
        Command::Defect { symbol } => {
            let defect =
                if is_springer(&symbol) { parse_springer(&symbol)?.defect() } else { parse_symbol(&symbol)?.defect() };
            Ok(json!({ "defect": defect }))
        }
        Command::Avalue { symbol } => Ok(json!({ "a": parse_symbol(&symbol)?.a_value() })),
        Command::Bvalue { symbol, ctx } => {
            if is_springer(&symbol) {
                return Ok(json!({ "b": parse_springer(&symbol)?.b_value() }));
            }
            let branch = DeltaBranch::new(group(&ctx)?, ctx.t.unwrap_or(0), c_sign(&ctx)?)?;
            Ok(json!({ "b": b_d(&parse_symbol(&symbol)?, branch)? }))
        }
        Command::Springer { symbol, ctx } => {
            let s = parse_springer(&symbol)?;
            let g = group(&ctx)?;
            let n = match ctx.n {
                Some(n) => n,
                None => (0..=s.rank() as u32)
                    .find(|&n| springer_rank(g, n) == s.rank())
                    .ok_or_else(|| CliError::Domain(format!("{s} has no rank for type {g}")))?,
            };
            let (b, dim) = class_dimension(&s, g, n)?;
            Ok(json!({ "n": n, "dim_bu": b, "dim_class": dim }))
        }
        Command::Delta { symbol, ctx } => {
            let branch = DeltaBranch::new(group(&ctx)?, ctx.t.unwrap_or(0), c_sign(&ctx)?)?;
            let s = delta_map(&parse_symbol(&symbol)?, branch)?;
            Ok(json!({ "springer": s.to_string(), "b": s.b_value(), "defect": branch.defect() }))
        }
        Command::Induce { shape, reading, pair } => {
            let shape: SubgroupShape =
                shape.parse().map_err(|e: sheafsym_core::InductionError| CliError::Usage(e.to_string()))?;
            let (l, r) = pair_symbols(&pair)?;
            let (l, r) = match shape {
                SubgroupShape::DxDInD => (l.unordered(), r.unordered()),
                SubgroupShape::DInB | SubgroupShape::DxBInB => (l.unordered(), r),
                SubgroupShape::BxDInB => (l, r.unordered()),
                _ => (l, r),
            };
            let reading = match reading {
                ReadingArg::Printed => HReading::Printed,
                ReadingArg::Alternate => HReading::Alternate,
            };
            let v = induce(shape, &l, &r, reading)?;
            Ok(json!({ "shape": shape.name(), "induced": to_json(&v) }))
        }
        Command::Dminimal { ctx, pair } => dminimal(&ctx, &pair),
        Command::Oplus { ctx, pair, p } => {
            let g = group(&ctx)?;
            let (l, r) = labels(&pair, g)?;
            let sp = make_pair_at(&l, &r, g, p)?;
            Ok(pair_json(&sp, &sp.oplus()?))
        }
        Command::Boxplus { ctx, pair, p } => {
            let g = group(&ctx)?;
            let (l, r) = labels(&pair, g)?;
            let sp = make_pair_at(&l, &r, g, p)?;
            Ok(pair_json(&sp, &sp.boxplus()?))
        }
        Command::Jset { ctx, pair, members } => {
            let g = group(&ctx)?;
            let (l, r) = labels(&pair, g)?;
            if let (Some(t), Ok(sp)) = (ctx.t, make_pair(&l, &r, g)) {
                if sp.t != t {
                    return Err(CliError::Domain(format!("the pair has t = {}, not {t}", sp.t)));
                }
            }
            let j = enumerate_j(&l, &r, g)?;
            let mut out = json!({ "ell": j.ell, "size": j.enumerated_size });
            if members {
                out["members"] =
                    to_json(&j.members.iter().map(|(x, y)| [x.to_string(), y.to_string()]).collect::<Vec<_>>());
                out["formula_size"] = to_json(&j.formula_size);
            }
            Ok(out)
        }
        Command::Charvalue { ctx, pair } => {
            let g = group(&ctx)?;
            let (l, r) = labels(&pair, g)?;
            let (a, b) = (l.rank() as u32, r.rank() as u32);
            if ctx.a.is_some_and(|x| x != a) || ctx.b.is_some_and(|x| x != b) {
                return Err(CliError::Domain(format!("label ranks are ({a},{b})")));
            }
            let n = ctx.n.unwrap_or(a + b);
            let gc =
                GroupContext::new(g, n, a, b, ctx.t.unwrap_or(0))?.with_c_sign(c_sign(&ctx)?)?.with_twist(twist(&ctx)?);
            Ok(to_json(&char_value(&l, &r, &gc)?))
        }
        Command::Restrict { side, pair } => {
            let (l, r) = pair_symbols(&pair)?;
            let side = match side {
                SideArg::First => Side::First,
                SideArg::Second => Side::Second,
            };
            let pairs: Vec<[String; 2]> =
                restrict_labels(&l, &r, side).into_iter().map(|(x, y)| [x.to_string(), y.to_string()]).collect();
            Ok(json!({ "pairs": pairs }))
        }
        Command::Xifamily { ctx, mode } => {
            let mode = match mode {
                ModeArg::BPrime => SideMode::BPrime,
                ModeArg::APrime => SideMode::APrime,
            };
            let f = xi_family(group(&ctx)?, ctx.t.unwrap_or(1), c_sign(&ctx)?, mode)?;
            let out = to_json(&f);
            if f.passed() {
                Ok(out)
            } else {
                Err(CliError::Failed(out))
            }
        }
        Command::Verify { suite, ctx } => match suite {
            Suite::Appendix => verify_appendix(&ctx),
            Suite::Oracle => verify_oracle(&ctx),
            Suite::Properties => verify_properties(&ctx),
        },
    }
}

fn dminimal(ctx: &CtxArgs, pair: &PairArgs) -> Result<Value, CliError> {
    let g = group(ctx)?;
    let t = ctx.t.unwrap_or(0);
    let sign = c_sign(ctx)?;
    let (l, r) = pair_symbols(pair)?;
    let (l, r) = match (g, t) {
        (GroupType::C, 0) => (l.unordered(), r),
        (GroupType::D, 0) => (l.unordered(), r.unordered()),
        _ => (l, r),
    };
    let (a_rel, b_rel) = (l.rank() as u32, r.rank() as u32);
    let n = ctx.n.unwrap_or(levi_rank(g, t, sign) + a_rel + b_rel);
    let b = ctx.b.unwrap_or(b_rel);
    let a = ctx.a.unwrap_or(n.saturating_sub(b));
    let gc = GroupContext::new(g, n, a, b, t)?.with_c_sign(sign)?.with_rel(a_rel, b_rel)?.with_twist(twist(ctx)?);
    let d = d_minimal(&l, &r, &gc)?;
    let certificate = d.certificate.as_ref().map(|c| {
        json!({
            "agrees": c.agrees,
            "induced": to_json(&c.induced),
            "b_values": to_json(&c.b_values),
            "minimal_b": c.minimal_b,
            "minimal": c.minimal.iter().map(|s| s.to_string()).collect::<Vec<_>>(),
            "multiplicities_one": c.multiplicities_one,
        })
    });
    Ok(json!({
        "case": d.case.to_string(),
        "candidates": d.candidates.iter().map(candidate_json).collect::<Vec<_>>(),
        "d_minimal": d.d_minimal.iter().map(candidate_json).collect::<Vec<_>>(),
        "certificate": certificate,
    }))
}

fn status_name(s: CheckStatus) -> &'static str {
    match s {
        CheckStatus::Match => "match",
        CheckStatus::Erratum => "erratum",
        CheckStatus::Mismatch => "mismatch",
    }
}

fn verify_appendix(ctx: &CtxArgs) -> Result<Value, CliError> {
    let tables: Vec<&AppendixTable> = match &ctx.group {
        None => sheafsym_core::appendix::appendix_tables().iter().collect(),
        Some(_) => {
            let g = group(ctx)?;
            let sign = (g == GroupType::C && ctx.d.is_some()).then(|| c_sign(ctx)).transpose()?;
            AppendixTable::select(g, sign)
        }
    };
    let ts: Vec<u32> = match ctx.t {
        Some(0) => return Err(CliError::Domain("the tables start at t = 1".into())),
        Some(t) => vec![t],
        None => vec![1, 2],
    };
    let (mut checks, mut classes, mut errata, mut mismatches) = (Vec::new(), Vec::new(), Vec::new(), Vec::new());
    for table in &tables {
        for &t in &ts {
            for c in verify_table(table, t)? {
                let entry = json!({
                    "table": c.table, "t": c.t, "index": c.index, "kind": "sequence",
                    "expected": c.expected, "got": c.got,
                });
                match c.status {
                    CheckStatus::Match => {}
                    CheckStatus::Erratum => errata.push(entry),
                    CheckStatus::Mismatch => mismatches.push(entry),
                }
                checks.push(json!({
                    "table": c.table, "t": c.t, "index": c.index, "left": c.left, "right": c.right,
                    "expected": c.expected, "got": c.got, "status": status_name(c.status),
                }));
            }
            for c in verify_classes(table, t)? {
                let head = json!({
                    "table": c.table, "t": c.t, "index": c.index, "kind": "grouping",
                    "expected": c.listed_head, "got": c.head,
                });
                match c.head_status() {
                    CheckStatus::Match => {}
                    CheckStatus::Erratum => errata.push(head),
                    CheckStatus::Mismatch => mismatches.push(head),
                }
                if !c.counts_match() {
                    mismatches.push(json!({
                        "table": c.table, "t": c.t, "index": c.index, "kind": "counts",
                        "expected": [c.expected_non_degenerate, c.expected_j_size],
                        "got": [c.non_degenerate, c.j_size],
                    }));
                }
                classes.push(to_json(&c));
            }
        }
    }
    let out = json!({ "checks": checks, "classes": classes, "errata": errata, "mismatches": mismatches });
    if mismatches_empty(&out) {
        Ok(out)
    } else {
        Err(CliError::Failed(out))
    }
}

fn mismatches_empty(v: &Value) -> bool {
    v["mismatches"].as_array().is_some_and(|m| m.is_empty())
}

fn verify_oracle(ctx: &CtxArgs) -> Result<Value, CliError> {
    let max = ctx.n.unwrap_or(4) as usize;
    if max > MAX_RANK {
        return Err(CliError::Usage(format!("--n is capped at {MAX_RANK} for the oracle")));
    }
    let oracle = Oracle::new();
    let mut shapes = Vec::new();
    let mut mismatches = Vec::new();
    for shape in SubgroupShape::ALL {
        for n in 0..=max {
            for a in 0..=n {
                let b = n - a;
                if shape == SubgroupShape::DInB && b != 0 {
                    continue;
                }
                let r = verify_against_symbols(&oracle, shape, a, b)?;
                shapes.push(json!({
                    "shape": shape.name(), "a": a, "b": b,
                    "labels_checked": r.labels_checked, "mismatches": r.mismatches.len(),
                    "resolved_splits": r.resolved_splits.len(),
                }));
                mismatches.extend(r.mismatches.iter().map(to_json));
            }
        }
    }
    let dmin = check_d_minimal(&oracle, max.min(4) as u32, 1)?;
    let dmin_failed: Vec<Value> = dmin.iter().filter(|c| !c.agrees || !c.multiplicity_one).map(to_json).collect();
    mismatches.extend(dmin_failed.iter().cloned());
    let lr = check_lr(max as u32 + 2)?;
    if !lr.passed() {
        mismatches.push(to_json(&lr));
    }
    let out = json!({
        "induction": shapes,
        "d_minimal": { "checked": dmin.len(), "failed": dmin_failed.len() },
        "lr": { "triples": lr.triples, "passed": lr.passed() },
        "mismatches": mismatches,
    });
    if mismatches_empty(&out) {
        Ok(out)
    } else {
        Err(CliError::Failed(out))
    }
}

fn verify_properties(ctx: &CtxArgs) -> Result<Value, CliError> {
    let reports = all_properties(ctx.n.unwrap_or(5) as u64)?;
    let failing = |known: bool| -> Vec<&str> {
        reports
            .iter()
            .filter(|r| !r.holds() && REFUTED.contains(&r.name.as_str()) == known)
            .map(|r| r.name.as_str())
            .collect()
    };
    let out = json!({
        "properties": to_json(&reports),
        "mismatches": failing(false),
        "refuted": failing(true),
    });
    if mismatches_empty(&out) {
        Ok(out)
    } else {
        Err(CliError::Failed(out))
    }
}
