//! Command-line front end. Every command is a pure function from the parsed
//! configuration to an output string and an exit code, so identical
//! invocations produce byte-identical output.

use crate::cycles::{CycleId, ProductStructure};
use crate::error::{Error, Result};
use crate::field::{FactorField, INFINITY};
use crate::graph::{self, build_adjacency};
use crate::joiner::{self, SpanningChoice};
use crate::pairs::PairEngine;
use crate::poly2::{self, Poly2};
use crate::{field, golden};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use std::path::PathBuf;

#[derive(Parser, Debug)]
#[command(
    name = "cyclejoin",
    version,
    about = "De Bruijn sequences from joining the cycles of a two-factor linear register"
)]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,
    /// Write output to this file instead of stdout
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Worker threads for the pair search (0 = all cores)
    #[arg(long, global = true, default_value_t = 0)]
    pub jobs: usize,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Classify a polynomial over GF(2)
    Classify {
        /// Polynomial, hex mask ("0x13") or written form ("x^4+x+1")
        #[arg(long)]
        poly: String,
    },
    /// Dump Zech-logarithm and cyclotomic tables as JSON
    Tables {
        #[arg(long)]
        poly: String,
        /// Cyclotomy parameter; must divide 2^k - 1
        #[arg(long, default_value_t = 1)]
        t: u64,
    },
    /// Dump the cycle structure of the product register
    Cycles {
        #[arg(long)]
        p: String,
        #[arg(long)]
        q: String,
    },
    /// Conjugate-pair reports, all nonzero edges or one cycle pair
    Pairs {
        #[arg(long)]
        p: String,
        #[arg(long)]
        q: String,
        /// First cycle (e.g. "U0", "S1", "MIX:0,0,2", "ZERO")
        #[arg(long)]
        c1: Option<String>,
        #[arg(long)]
        c2: Option<String>,
    },
    /// Adjacency graph with the count matrix
    Graph {
        #[arg(long)]
        p: String,
        #[arg(long)]
        q: String,
        #[arg(long, value_enum, default_value_t = GraphFormat::Json)]
        format: GraphFormat,
    },
    /// Exact number of spanning trees (= constructible sequences)
    Count {
        #[arg(long)]
        p: String,
        #[arg(long)]
        q: String,
    },
    /// Generate de Bruijn sequences by joining spanning trees
    Generate {
        #[arg(long)]
        p: String,
        #[arg(long)]
        q: String,
        /// Enumerate every spanning tree (beware: counts grow fast)
        #[arg(long)]
        all: bool,
        /// Number of sequences to produce
        #[arg(long, default_value_t = 1)]
        count: usize,
        /// Sample trees with a seeded randomized search instead of
        /// enumerating in canonical order (not uniform over trees)
        #[arg(long)]
        sample: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Hard cap on enumeration
        #[arg(long, default_value_t = 1_000_000)]
        cap: usize,
        #[arg(long, value_enum, default_value_t = SeqFormat::Bits)]
        format: SeqFormat,
    },
    /// Check that a sequence is de Bruijn of the given order
    Verify {
        #[arg(long)]
        order: u32,
        /// The sequence as a string of 0s and 1s
        #[arg(long)]
        seq: String,
    },
    /// Re-run the frozen regression corpus and print a pass/fail table
    Reproduce,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GraphFormat {
    Json,
    Dot,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SeqFormat {
    Bits,
    Hex,
}

fn parse_poly(s: &str) -> Result<Poly2> {
    s.parse()
}

fn product(p: &str, q: &str) -> Result<ProductStructure> {
    ProductStructure::new(parse_poly(p)?, parse_poly(q)?)
}

fn poly_json(p: Poly2) -> Value {
    json!({ "hex": format!("{p:x}"), "poly": p.to_string() })
}

fn seq_string(seq: &[u8], format: SeqFormat) -> String {
    match format {
        SeqFormat::Bits => seq.iter().map(|&b| char::from(b'0' + b)).collect(),
        SeqFormat::Hex => {
            // 8 bits per byte, s_0 in the least significant bit of byte 0
            let mut bytes = vec![0u8; seq.len().div_ceil(8)];
            for (i, &b) in seq.iter().enumerate() {
                bytes[i / 8] |= b << (i % 8);
            }
            bytes.iter().map(|b| format!("{b:02x}")).collect()
        }
    }
}

fn choice_json(choice: &SpanningChoice) -> Value {
    Value::Array(
        choice
            .edges
            .iter()
            .map(|(c1, c2, pr)| {
                json!({
                    "c1": c1.to_string(),
                    "c2": c2.to_string(),
                    "pair": format!("{:#x}", pr.v),
                })
            })
            .collect(),
    )
}

/// Executes a command, returning (output text, exit code).
pub fn run(config: &RunConfig) -> Result<(String, i32)> {
    if config.jobs > 0 {
        // a failure here just means a pool already exists
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(config.jobs)
            .build_global();
    }
    match &config.command {
        Command::Classify { poly } => {
            let p = parse_poly(poly)?;
            let class = poly2::classify(p)?;
            let out = json!({
                "poly": p.to_string(),
                "hex": format!("{p:x}"),
                "degree": class.degree,
                "irreducible": class.irreducible,
                "primitive": class.primitive,
                "order": class.order,
                "cofactor_t": class.cofactor_t,
            });
            Ok((pretty(&out), 0))
        }
        Command::Tables { poly, t } => {
            let g = parse_poly(poly)?;
            let ff = FactorField::new(g)?;
            let ft = ff.table();
            let zech: Vec<Value> = (0..ft.order())
                .map(|l| {
                    let z = ft.zech_log(l);
                    if z == INFINITY {
                        Value::Null
                    } else {
                        json!(z)
                    }
                })
                .collect();
            let cyc = field::cyclotomy(ft, *t)?;
            let matrix: Vec<Vec<u64>> = (0..*t)
                .map(|i| {
                    (0..*t)
                        .map(|j| field::cyclotomic_number(ft, *t, i, j).unwrap())
                        .collect()
                })
                .collect();
            let out = json!({
                "k": ft.k(),
                "poly": g.to_string(),
                "modulus": format!("{:x}", ft.modulus()),
                "beta_exp": ff.beta_exp(),
                "beta_step": ff.beta_step(),
                "order": ff.order_e(),
                "classes": ff.classes_t(),
                "zech": zech,
                "cyclotomic": { "t": t, "e": cyc.e, "matrix": matrix },
            });
            Ok((pretty(&out), 0))
        }
        Command::Cycles { p, q } => {
            let ps = product(p, q)?;
            let cycles: Vec<Value> = ps
                .cycles()
                .into_iter()
                .map(|id| {
                    let (bits, width) = ps.rep(id);
                    json!({
                        "id": id.to_string(),
                        "period": ps.period(id),
                        "state": format!("{bits:#x}"),
                        "width": width,
                    })
                })
                .collect();
            let basis_rows: Vec<String> = (0..(ps.m + ps.n) as usize)
                .map(|i| format!("{:#x}", ps.basis.matrix().row(i)))
                .collect();
            let out = json!({
                "p": poly_json(ps.p()),
                "q": poly_json(ps.q()),
                "m": ps.m, "n": ps.n,
                "e1": ps.e1, "e2": ps.e2,
                "t1": ps.t1, "t2": ps.t2,
                "gcd": ps.r, "lcm": ps.lcm,
                "cycle_count": ps.cycle_count(),
                "special": { "a": ps.special.a, "b": ps.special.b, "c": ps.special.c },
                "basis_rows": basis_rows,
                "cycles": cycles,
            });
            Ok((pretty(&out), 0))
        }
        Command::Pairs { p, q, c1, c2 } => {
            let ps = product(p, q)?;
            let report_json = |rep: &crate::pairs::PairCountReport| {
                json!({
                    "c1": rep.c1.to_string(),
                    "c2": rep.c2.to_string(),
                    "count": rep.count,
                    "pairs": rep.pairs.iter().map(|pr| format!("{:#x}", pr.v)).collect::<Vec<_>>(),
                    "closed_form": rep.closed_form.map(|cf| json!({
                        "count": cf.count, "rule": cf.rule,
                    })),
                })
            };
            let out = match (c1, c2) {
                (Some(c1), Some(c2)) => {
                    let rep = crate::pairs::find_conjugate_pairs(
                        &ps,
                        c1.parse::<CycleId>()?,
                        c2.parse::<CycleId>()?,
                    )?;
                    report_json(&rep)
                }
                (None, None) => {
                    let mut engine = PairEngine::new(&ps);
                    engine.prepare_all();
                    let cycles = ps.cycles();
                    let mut reports = Vec::new();
                    for (x, &a) in cycles.iter().enumerate() {
                        for &b in &cycles[x..] {
                            let rep = engine.pairs_cached(a, b)?;
                            if rep.count > 0 {
                                reports.push(report_json(&rep));
                            }
                        }
                    }
                    Value::Array(reports)
                }
                _ => {
                    return Err(Error::Parse(
                        "--c1 and --c2 must be given together".into(),
                    ))
                }
            };
            Ok((pretty(&out), 0))
        }
        Command::Graph { p, q, format } => {
            let ps = product(p, q)?;
            let g = build_adjacency(&ps)?;
            match format {
                GraphFormat::Dot => Ok((g.to_dot(), 0)),
                GraphFormat::Json => {
                    let out = json!({
                        "order": g.order.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
                        "matrix": g.count_matrix(),
                        "loops": g.loops,
                        "connected": g.is_connected(),
                    });
                    Ok((pretty(&out), 0))
                }
            }
        }
        Command::Count { p, q } => {
            let ps = product(p, q)?;
            let g = build_adjacency(&ps)?;
            let tc = graph::best_count(&g);
            let log2_exact = big_log2(&tc.exact);
            // closed form applies to (x^2+x+1) times a primitive factor
            let quad = Poly2::from_mask(0b111);
            let closed = if (ps.p() == quad && poly2::is_primitive(ps.q()) && ps.n >= 3)
                || (ps.q() == quad && poly2::is_primitive(ps.p()) && ps.m >= 3)
            {
                let deg = if ps.p() == quad { ps.n } else { ps.m };
                Some(json!({
                    "per_polynomial": graph::quadratic_factor_count(deg)?.to_string(),
                    "total": graph::quadratic_factor_count_total(deg)?.to_string(),
                }))
            } else {
                None
            };
            let out = json!({
                "p": poly_json(ps.p()),
                "q": poly_json(ps.q()),
                "cycles": ps.cycle_count(),
                "connected": tc.connected,
                "exact": tc.exact.to_string(),
                "log2_exact": log2_exact,
                "chi": tc.chi,
                "estimate": tc.estimate,
                "log2_estimate": tc.estimate_log2,
                "closed_form": closed,
            });
            Ok((pretty(&out), 0))
        }
        Command::Generate {
            p,
            q,
            all,
            count,
            sample,
            seed,
            cap,
            format,
        } => {
            let ps = product(p, q)?;
            let g = build_adjacency(&ps)?;
            let trees = if *sample {
                joiner::sample_trees(&g, *seed, *count)?
            } else if *all {
                joiner::enumerate_trees(&g, *cap)?
            } else {
                joiner::enumerate_trees(&g, (*count).min(*cap))?
            };
            let order = ps.m + ps.n;
            // joins are independent; rayon preserves output order
            use rayon::prelude::*;
            let items: Vec<Value> = trees
                .par_iter()
                .map(|t| {
                    let seq = joiner::join(&ps, t)?;
                    let ok = joiner::verify_debruijn(&seq, order)?;
                    let anf = joiner::feedback_anf(&ps, t)?;
                    Ok(json!({
                        "tree": choice_json(t),
                        "seq": seq_string(&seq, *format),
                        "feedback": anf.to_string(),
                        "verified": ok,
                    }))
                })
                .collect::<Result<_>>()?;
            let out = json!({
                "order": order,
                "count": items.len(),
                "sequences": items,
            });
            Ok((pretty(&out), 0))
        }
        Command::Verify { order, seq } => {
            let bits: Vec<u8> = seq
                .chars()
                .filter(|c| !c.is_whitespace())
                .map(|c| match c {
                    '0' => Ok(0u8),
                    '1' => Ok(1u8),
                    _ => Err(Error::Parse(format!("bad bit {c:?}"))),
                })
                .collect::<Result<_>>()?;
            let ok = joiner::verify_debruijn(&bits, *order)?;
            let out = json!({ "order": order, "debruijn": ok });
            Ok((pretty(&out), if ok { 0 } else { 1 }))
        }
        Command::Reproduce => {
            let checks = golden::run_all();
            let mut lines = Vec::new();
            let mut all_pass = true;
            for c in &checks {
                all_pass &= c.pass;
                lines.push(format!(
                    "{} {:<22} {}",
                    if c.pass { "PASS" } else { "FAIL" },
                    c.name,
                    c.detail
                ));
            }
            lines.push(format!(
                "{}: {} checks",
                if all_pass { "OK" } else { "FAILED" },
                checks.len()
            ));
            Ok((lines.join("\n"), if all_pass { 0 } else { 1 }))
        }
    }
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("serializable")
}

/// log2 of a nonnegative big integer, good to double precision.
fn big_log2(v: &num_bigint::BigInt) -> f64 {
    use num_traits::ToPrimitive;
    if let Some(f) = v.to_f64() {
        if f > 0.0 && f.is_finite() {
            return f.log2();
        }
    }
    let (_, bytes) = v.to_bytes_be();
    let bits = v.bits();
    let head = bytes
        .iter()
        .take(8)
        .fold(0u64, |acc, &b| (acc << 8) | b as u64);
    let head_bits = 8 * bytes.len().min(8) as u64;
    (head as f64).log2() + (bits as f64 - head_bits as f64)
}
