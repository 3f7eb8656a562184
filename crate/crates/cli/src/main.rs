use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use num_bigint::BigInt;
use serde_json::{json, Value};

use cuspcalc::corpus::{Corpus, VerifyOptions};
use cuspcalc::diagram::cycle_svg;
use cuspcalc_core::arith::intmat::BigJson;
use cuspcalc_core::blowup::{toric_model_search, MoveOp, SearchLimits};
use cuspcalc_core::covers::{enumerate_cycles_with_trace, nw_cover, quotient_cycle};
use cuspcalc_core::ia::{cyclic_symmetry, validate_type_iii, IAComplex};
use cuspcalc_core::lci::{classify, pi_cycle, t_cycle, LciClass};
use cuspcalc_core::{AnticanSeq, CuspCycle, CuspError};

/// Exact calculator for cusp cycles and their duals, covers and quotients.
#[derive(Parser)]
#[command(name = "cuspcalc", version)]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Dual cycle.
    Dual {
        #[arg(allow_hyphen_values = true)]
        cycle: String,
    },
    /// Charge 12 + sum(d - 3) of any sequence.
    Charge {
        #[arg(allow_hyphen_values = true)]
        seq: String,
    },
    /// Monodromy matrix, its trace and determinant.
    Monodromy {
        #[arg(allow_hyphen_values = true)]
        seq: String,
    },
    /// Torsion of the link as invariant factors.
    Torsion { cycle: String },
    /// Lci classification of a cycle, or the cycle of a T/Pi equation.
    Lci {
        /// Cycle to classify.
        cycle: Option<String>,
        /// Hypersurface exponents p,q,r.
        #[arg(long = "t", value_name = "P,Q,R", conflicts_with_all = ["cycle", "pi"])]
        t: Option<String>,
        /// Complete-intersection exponents p,q,r,s.
        #[arg(long = "pi", value_name = "P,Q,R,S", conflicts_with = "cycle")]
        pi: Option<String>,
    },
    /// Lci cover by the one-vertex cycle of the same trace.
    Nwcover { cycle: String },
    /// Cycle of the quotient by the order-k subgroup of the link torsion.
    Quotient { cycle: String, k: i64 },
    /// Script of blow-downs and corner moves reaching a toric sequence.
    Toricmodel {
        #[arg(allow_hyphen_values = true)]
        seq: String,
        #[arg(long, default_value_t = SearchLimits::default().max_depth)]
        max_depth: usize,
        #[arg(long, default_value_t = SearchLimits::default().max_corner_ops)]
        max_corner_ops: usize,
    },
    /// All canonical cycles with the given trace.
    Enumerate {
        trace: i64,
        #[arg(long, default_value_t = 8)]
        max_len: usize,
    },
    /// Check a Type III dual complex given as JSON.
    #[command(name = "validate-typeiii")]
    ValidateTypeiii {
        complex: PathBuf,
        /// Expected star of the distinguished vertex.
        #[arg(long)]
        expected_star: String,
        /// Vertex permutation to test as a symmetry, e.g. 0,3,4,1,2,5.
        #[arg(long)]
        symmetry: Option<String>,
        /// Where to write the quotient complex.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the golden-value corpus.
    #[command(name = "verify-paper")]
    VerifyPaper {
        /// Corpus file; the built-in corpus when absent.
        #[arg(long)]
        corpus: Option<PathBuf>,
        /// Compare cycles entry by entry instead of up to rotation.
        #[arg(long)]
        strict_rotation: bool,
    },
    /// Write an SVG drawing of the cycle.
    Diagram {
        cycle: String,
        #[arg(long)]
        out: PathBuf,
    },
}

enum Failure {
    /// Library error, printed with its variant name.
    Domain(CuspError),
    /// Completed but some check failed; the report is already printed.
    Checks(String),
    Io(String),
}

impl From<CuspError> for Failure {
    fn from(e: CuspError) -> Self {
        Failure::Domain(e)
    }
}

type Outcome = Result<(), Failure>;

fn words(v: &[i64]) -> String {
    v.iter().map(i64::to_string).collect::<Vec<_>>().join(",")
}

fn print(json_mode: bool, value: Value, text: impl FnOnce() -> String) {
    if json_mode {
        println!("{value}");
    } else {
        println!("{}", text());
    }
}

fn exponents<const N: usize>(s: &str) -> Result<[i64; N], CuspError> {
    let parts: Vec<i64> = s
        .split(',')
        .map(|p| p.trim().parse::<i64>().map_err(|_| CuspError::Parse(format!("`{p}` is not an integer"))))
        .collect::<Result<_, _>>()?;
    parts
        .try_into()
        .map_err(|_| CuspError::Parse(format!("expected {N} comma-separated exponents")))
}

fn run(cli: Cli) -> Outcome {
    let js = cli.json;
    match cli.cmd {
        Cmd::Dual { cycle } => {
            let c: CuspCycle = cycle.parse()?;
            let d = c.dual();
            print(js, json!({"input": c.entries(), "dual": d.entries()}), || words(&d));
        }
        Cmd::Charge { seq } => {
            let s: AnticanSeq = seq.parse()?;
            let q = BigInt::from(s.charge());
            print(js, json!({"input": s.entries(), "charge": BigJson(&q)}), || q.to_string());
        }
        Cmd::Monodromy { seq } => {
            let s: AnticanSeq = seq.parse()?;
            let m = s.monodromy();
            let (t, det) = (m.trace(), m.det());
            print(
                js,
                json!({"input": s.entries(), "matrix": m, "trace": BigJson(&t), "det": BigJson(&det)}),
                || format!("{m}\ntrace {t}\ndet {det}"),
            );
        }
        Cmd::Torsion { cycle } => {
            let c: CuspCycle = cycle.parse()?;
            let g = c.torsion_group()?;
            print(js, serde_json::to_value(&g).expect("serializable"), || g.to_string());
        }
        Cmd::Lci { cycle, t, pi } => {
            if let Some(t) = t {
                let [p, q, r] = exponents::<3>(&t)?;
                let c = t_cycle(p, q, r)?;
                print(js, json!({"equation": {"type": "T", "p": p, "q": q, "r": r}, "cycle": c.entries()}), || words(&c));
            } else if let Some(pi) = pi {
                let [p, q, r, s] = exponents::<4>(&pi)?;
                let c = pi_cycle(p, q, r, s)?;
                let value = json!({"equation": {"type": "Pi", "p": p, "q": q, "r": r, "s": s}, "cycle": c.as_ref().map(|c| c.entries())});
                print(js, value, || c.map_or_else(|| "unknown".to_string(), |c| words(&c)));
            } else {
                let cycle = cycle.ok_or_else(|| CuspError::Parse("give a cycle, --t or --pi".into()))?;
                let c: CuspCycle = cycle.parse()?;
                let class = classify(&c);
                print(js, serde_json::to_value(&class).expect("serializable"), || match &class {
                    LciClass::Hypersurface { witness: Some(w) } => format!("hypersurface: {w}"),
                    LciClass::Hypersurface { witness: None } => "hypersurface".into(),
                    LciClass::CompleteIntersection { witness: Some(w) } => format!("complete intersection: {w}"),
                    LciClass::CompleteIntersection { witness: None } => "complete intersection".into(),
                    LciClass::NotLci => "not lci".into(),
                });
            }
        }
        Cmd::Nwcover { cycle } => {
            let c: CuspCycle = cycle.parse()?;
            let r = nw_cover(&c)?;
            print(js, serde_json::to_value(&r).expect("serializable"), || {
                format!(
                    "trace {}\ncover {}\ncover dual {}\nsublattice index {}",
                    r.trace, r.cover_cycle, r.cover_dual, r.sublattice_index
                )
            });
        }
        Cmd::Quotient { cycle, k } => {
            let c: CuspCycle = cycle.parse()?;
            let q = quotient_cycle(&c, k)?;
            print(js, json!({"input": c.entries(), "k": k, "quotient": q.entries()}), || words(&q));
        }
        Cmd::Toricmodel { seq, max_depth, max_corner_ops } => {
            let s: AnticanSeq = seq.parse()?;
            let limits = SearchLimits { max_depth, max_corner_ops, ..SearchLimits::default() };
            let script = toric_model_search(&s, limits)?;
            let end = script.replay(&s, Default::default())?;
            let downs = script.count(MoveOp::InternalBlowDown);
            print(
                js,
                json!({"input": s.entries(), "script": script, "result": end.entries(), "internal_blow_downs": downs}),
                || {
                    let mut lines: Vec<String> = script.0.iter().map(|m| m.to_string()).collect();
                    lines.push(format!("toric: {}", words(&end)));
                    lines.join("\n")
                },
            );
        }
        Cmd::Enumerate { trace, max_len } => {
            let found = enumerate_cycles_with_trace(trace, max_len);
            let list: Vec<&[i64]> = found.iter().map(|c| c.entries()).collect();
            print(js, json!(list), || list.iter().map(|c| words(c)).collect::<Vec<_>>().join("\n"));
        }
        Cmd::ValidateTypeiii { complex, expected_star, symmetry, out } => {
            let text = fs::read_to_string(&complex).map_err(|e| Failure::Io(format!("{}: {e}", complex.display())))?;
            let g = IAComplex::from_json(&text)?;
            let expected: CuspCycle = expected_star.parse()?;
            let report = validate_type_iii(&g, &expected)?;
            let sym = match symmetry {
                Some(p) => {
                    let perm: Vec<usize> = p
                        .split(',')
                        .map(|x| x.trim().parse().map_err(|_| CuspError::Parse(format!("`{x}` is not a vertex"))))
                        .collect::<Result<_, _>>()?;
                    Some(cyclic_symmetry(&g, &perm)?)
                }
                None => None,
            };
            if let (Some(path), Some(q)) = (&out, sym.as_ref().and_then(|s| s.quotient.as_ref())) {
                let body = serde_json::to_string_pretty(q).expect("serializable");
                fs::write(path, body + "\n").map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
            }
            let value = json!({"passed": report.passed(), "report": report, "symmetry": sym});
            print(js, value, || {
                let mut t = report.to_string();
                if let Some(s) = &sym {
                    t.push_str(&format!(
                        "symmetry of order {}: fixed vertices {:?}, quotient {}\n",
                        s.order,
                        s.fixed.vertices,
                        match s.quotient_euler_characteristic {
                            Some(chi) => format!("euler characteristic {chi}"),
                            None => "not a triangulation".into(),
                        }
                    ));
                }
                t.trim_end().to_string()
            });
            if !report.passed() {
                let failed: Vec<&str> = report.failed().map(|c| c.check.label()).collect();
                return Err(Failure::Checks(format!("failed checks: {}", failed.join(", "))));
            }
        }
        Cmd::VerifyPaper { corpus, strict_rotation } => {
            let corpus = match corpus {
                Some(path) => {
                    let text = fs::read_to_string(&path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
                    Corpus::from_json(&text).map_err(|e| CuspError::Parse(e.to_string()))?
                }
                None => Corpus::embedded(),
            };
            if corpus.is_empty() {
                eprintln!("warning: corpus has no rows");
            }
            let outcomes = corpus.verify(VerifyOptions { strict_rotation });
            let failed = outcomes.iter().filter(|o| !o.passed).count();
            print(js, json!({"rows": outcomes, "failed": failed}), || {
                let mut t = String::new();
                for o in &outcomes {
                    let status = if o.passed { "PASS" } else { "FAIL" };
                    t.push_str(&format!("{:>3}  {status}  {:<28} {}", o.row, serde_json::to_value(o.kind).unwrap().as_str().unwrap_or(""), o.paper_ref));
                    if !o.passed {
                        t.push_str(&format!("  -- {}", o.detail));
                    }
                    t.push('\n');
                }
                t.push_str(&format!("{} rows, {} failed", outcomes.len(), failed));
                t
            });
            if failed > 0 {
                return Err(Failure::Checks(format!("{failed} corpus row(s) failed")));
            }
        }
        Cmd::Diagram { cycle, out } => {
            let c: CuspCycle = cycle.parse()?;
            fs::write(&out, cycle_svg(c.entries())).map_err(|e| Failure::Io(format!("{}: {e}", out.display())))?;
            print(js, json!({"cycle": c.entries(), "out": out.display().to_string()}), || {
                format!("wrote {}", out.display())
            });
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let verify = matches!(cli.cmd, Cmd::VerifyPaper { .. });
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Domain(e)) => {
            eprintln!("error: {}: {e}", e.name());
            ExitCode::from(2)
        }
        Err(Failure::Checks(msg)) => {
            eprintln!("error: {msg}");
            // A failed corpus row is reported as exit 1; a failed validation
            // is a domain outcome.
            ExitCode::from(if verify { 1 } else { 2 })
        }
        Err(Failure::Io(msg)) => {
            eprintln!("error: Io: {msg}");
            ExitCode::from(2)
        }
    }
}
