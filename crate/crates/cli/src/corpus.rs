//! Golden-value corpus: a JSON array of `{kind, input, expected, paper_ref}`
//! rows, decoded into typed checks up front so schema problems surface with
//! their row number before anything runs.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use cuspcalc_core::arith::{eigen_unit, surd_from_cycle, IntMat2, QuadSurd};
use cuspcalc_core::blowup::{has_rational_dual, is_toric, toric_model_search, MoveOp, SearchLimits, Tri};
use cuspcalc_core::covers::{enumerate_cycles_with_trace, matrix_to_cycle, nw_cover, quotient_cycle};
use cuspcalc_core::lci::{classify, pi_cycle, t_cycle, LciClass};
use cuspcalc_core::{AnticanSeq, CuspCycle, CuspError};

pub const EMBEDDED: &str = include_str!("../corpus/paper_examples.json");

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Kind {
    Dual,
    Charge,
    Monodromy,
    Trace,
    Torsion,
    SurdFromCycle,
    EigenUnit,
    EigenUnitMinusOneNorm,
    TCycle,
    PiCycle,
    LciClass,
    NwCover,
    Quotient,
    IsToric,
    ToricModel,
    Enumerate,
    RationalDual,
    MatrixToCycle,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Row {
    pub kind: Kind,
    pub input: Value,
    pub expected: Value,
    pub paper_ref: String,
    /// Allow a reversed cycle to match.
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub reflection: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorpusError {
    pub row: Option<usize>,
    pub message: String,
}

impl fmt::Display for CorpusError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.row {
            Some(r) => write!(f, "row {r}: {}", self.message),
            None => write!(f, "{}", self.message),
        }
    }
}

impl std::error::Error for CorpusError {}

#[derive(Clone, Debug, PartialEq, Eq)]
struct SurdParts {
    a: BigRational,
    b: BigRational,
    d: BigInt,
}

#[derive(Clone, Debug)]
enum Check {
    Dual(CuspCycle, CuspCycle),
    Charge(AnticanSeq, i64),
    Monodromy(AnticanSeq, [[i64; 2]; 2]),
    Trace(AnticanSeq, BigInt),
    Torsion(CuspCycle, Vec<BigInt>),
    SurdFromCycle(Vec<i64>, SurdParts),
    EigenUnit(BigInt, SurdParts),
    EigenUnitMinusOneNorm(BigInt, BigRational),
    TCycle([i64; 3], CuspCycle),
    PiCycle([i64; 4], CuspCycle),
    LciClass(CuspCycle, String),
    NwCover(CuspCycle, i64, CuspCycle, CuspCycle),
    Quotient(CuspCycle, i64, CuspCycle),
    IsToric(AnticanSeq, bool),
    ToricModel(AnticanSeq, usize),
    Enumerate(i64, usize, BTreeSet<CuspCycle>),
    RationalDual(CuspCycle, Tri),
    MatrixToCycle(IntMat2, CuspCycle),
}

#[derive(Clone, Debug)]
pub struct Corpus {
    rows: Vec<(Row, Check)>,
}

#[derive(Clone, Copy, Debug, Default)]
pub struct VerifyOptions {
    /// Compare cycles entry by entry instead of up to rotation.
    pub strict_rotation: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RowOutcome {
    pub row: usize,
    pub kind: Kind,
    pub paper_ref: String,
    pub passed: bool,
    pub detail: String,
}

fn str_of<'a>(v: &'a Value, what: &str) -> Result<&'a str, String> {
    v.as_str().ok_or_else(|| format!("{what} must be a string"))
}

fn cycle_of(v: &Value, what: &str) -> Result<CuspCycle, String> {
    str_of(v, what)?.parse().map_err(|e: CuspError| format!("{what}: {e}"))
}

fn seq_of(v: &Value, what: &str) -> Result<AnticanSeq, String> {
    str_of(v, what)?.parse().map_err(|e: CuspError| format!("{what}: {e}"))
}

fn int_of(v: &Value, what: &str) -> Result<i64, String> {
    v.as_i64().ok_or_else(|| format!("{what} must be an integer"))
}

fn big_of(v: &Value, what: &str) -> Result<BigInt, String> {
    match v {
        Value::Number(n) => n.to_string().parse().map_err(|_| format!("{what} must be an integer")),
        Value::String(s) => s.parse().map_err(|_| format!("{what} must be an integer")),
        _ => Err(format!("{what} must be an integer")),
    }
}

fn rational_of(v: &Value, what: &str) -> Result<BigRational, String> {
    match v {
        Value::Number(_) => big_of(v, what).map(BigRational::from_integer),
        Value::String(s) => s.parse().map_err(|_| format!("{what} must be a rational like \"1/5\"")),
        _ => Err(format!("{what} must be a rational")),
    }
}

fn field<'a>(v: &'a Value, key: &str) -> Result<&'a Value, String> {
    v.get(key).ok_or_else(|| format!("missing field `{key}`"))
}

fn ints<const N: usize>(v: &Value, what: &str) -> Result<[i64; N], String> {
    let arr = v.as_array().filter(|a| a.len() == N).ok_or_else(|| format!("{what} must be an array of {N} integers"))?;
    let mut out = [0i64; N];
    for (o, x) in out.iter_mut().zip(arr) {
        *o = int_of(x, what)?;
    }
    Ok(out)
}

fn matrix_of(v: &Value, what: &str) -> Result<[[i64; 2]; 2], String> {
    let rows = v.as_array().filter(|a| a.len() == 2).ok_or_else(|| format!("{what} must be a 2x2 array"))?;
    Ok([ints::<2>(&rows[0], what)?, ints::<2>(&rows[1], what)?])
}

fn surd_of(v: &Value) -> Result<SurdParts, String> {
    Ok(SurdParts {
        a: rational_of(field(v, "a")?, "a")?,
        b: rational_of(field(v, "b")?, "b")?,
        d: big_of(field(v, "d")?, "d")?,
    })
}

fn tri_of(v: &Value) -> Result<Tri, String> {
    match v {
        Value::Bool(true) => Ok(Tri::True),
        Value::Bool(false) => Ok(Tri::False),
        Value::String(s) if s == "unknown" => Ok(Tri::Unknown),
        _ => Err("expected must be true, false or \"unknown\"".into()),
    }
}

fn decode(row: &Row) -> Result<Check, String> {
    let (i, e) = (&row.input, &row.expected);
    Ok(match row.kind {
        Kind::Dual => Check::Dual(cycle_of(i, "input")?, cycle_of(e, "expected")?),
        Kind::Charge => Check::Charge(seq_of(i, "input")?, int_of(e, "expected")?),
        Kind::Monodromy => Check::Monodromy(seq_of(i, "input")?, matrix_of(e, "expected")?),
        Kind::Trace => Check::Trace(seq_of(i, "input")?, big_of(e, "expected")?),
        Kind::Torsion => {
            let fs = e.as_array().ok_or("expected must be an array of invariant factors")?;
            Check::Torsion(
                cycle_of(i, "input")?,
                fs.iter().map(|x| big_of(x, "invariant factor")).collect::<Result<_, _>>()?,
            )
        }
        Kind::SurdFromCycle => {
            let w = i.as_array().ok_or("input must be an array of integers")?;
            let w = w.iter().map(|x| int_of(x, "input")).collect::<Result<Vec<_>, _>>()?;
            Check::SurdFromCycle(w, surd_of(e)?)
        }
        Kind::EigenUnit => Check::EigenUnit(big_of(i, "input")?, surd_of(e)?),
        Kind::EigenUnitMinusOneNorm => {
            Check::EigenUnitMinusOneNorm(big_of(i, "input")?, rational_of(e, "expected")?)
        }
        Kind::TCycle => Check::TCycle(ints::<3>(i, "input")?, cycle_of(e, "expected")?),
        Kind::PiCycle => Check::PiCycle(ints::<4>(i, "input")?, cycle_of(e, "expected")?),
        Kind::LciClass => {
            let class = str_of(e, "expected")?;
            if !["hypersurface", "complete_intersection", "not_lci"].contains(&class) {
                return Err(format!("unknown lci class `{class}`"));
            }
            Check::LciClass(cycle_of(i, "input")?, class.to_string())
        }
        Kind::NwCover => Check::NwCover(
            cycle_of(i, "input")?,
            int_of(field(e, "trace")?, "trace")?,
            cycle_of(field(e, "cover")?, "cover")?,
            cycle_of(field(e, "cover_dual")?, "cover_dual")?,
        ),
        Kind::Quotient => Check::Quotient(
            cycle_of(field(i, "cycle")?, "cycle")?,
            int_of(field(i, "k")?, "k")?,
            cycle_of(e, "expected")?,
        ),
        Kind::IsToric => Check::IsToric(
            seq_of(i, "input")?,
            e.as_bool().ok_or("expected must be a boolean")?,
        ),
        Kind::ToricModel => {
            let n = int_of(field(e, "internal_blow_downs")?, "internal_blow_downs")?;
            Check::ToricModel(seq_of(i, "input")?, usize::try_from(n).map_err(|_| "internal_blow_downs must be nonnegative")?)
        }
        Kind::Enumerate => {
            let t = int_of(field(i, "trace")?, "trace")?;
            let n = int_of(field(i, "max_len")?, "max_len")?;
            let n = usize::try_from(n).map_err(|_| "max_len must be nonnegative")?;
            let list = e.as_array().ok_or("expected must be an array of cycles")?;
            let set = list
                .iter()
                .map(|c| cycle_of(c, "expected").map(|c| c.canonical()))
                .collect::<Result<_, _>>()?;
            Check::Enumerate(t, n, set)
        }
        Kind::RationalDual => Check::RationalDual(cycle_of(i, "input")?, tri_of(e)?),
        Kind::MatrixToCycle => {
            let m = matrix_of(i, "input")?;
            Check::MatrixToCycle(
                IntMat2::from_i64(m[0][0], m[0][1], m[1][0], m[1][1]),
                cycle_of(e, "expected")?,
            )
        }
    })
}

fn show(c: &[i64]) -> String {
    c.iter().map(i64::to_string).collect::<Vec<_>>().join(",")
}

impl Corpus {
    pub fn from_json(s: &str) -> Result<Corpus, CorpusError> {
        let raw: Vec<Value> = serde_json::from_str(s)
            .map_err(|e| CorpusError { row: None, message: format!("corpus is not a JSON array: {e}") })?;
        let mut rows = Vec::with_capacity(raw.len());
        for (n, v) in raw.into_iter().enumerate() {
            let err = |message: String| CorpusError { row: Some(n), message };
            let row: Row = serde_json::from_value(v).map_err(|e| err(e.to_string()))?;
            let check = decode(&row).map_err(err)?;
            rows.push((row, check));
        }
        Ok(Corpus { rows })
    }

    pub fn embedded() -> Corpus {
        Corpus::from_json(EMBEDDED).expect("embedded corpus decodes")
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn rows(&self) -> impl Iterator<Item = &Row> {
        self.rows.iter().map(|(r, _)| r)
    }

    pub fn verify(&self, opts: VerifyOptions) -> Vec<RowOutcome> {
        self.rows
            .iter()
            .enumerate()
            .map(|(n, (row, check))| {
                let (passed, detail) = match run(check, row.reflection, opts) {
                    Ok(()) => (true, String::new()),
                    Err(d) => (false, d),
                };
                RowOutcome { row: n, kind: row.kind, paper_ref: row.paper_ref.clone(), passed, detail }
            })
            .collect()
    }
}

fn same(got: &CuspCycle, want: &CuspCycle, reflection: bool, opts: VerifyOptions) -> bool {
    if opts.strict_rotation {
        got.entries() == want.entries()
            || (reflection && got.entries().iter().rev().eq(want.entries().iter()))
    } else {
        got.same_class(want, reflection)
    }
}

fn expect_cycle(got: &CuspCycle, want: &CuspCycle, reflection: bool, opts: VerifyOptions) -> Result<(), String> {
    if same(got, want, reflection, opts) {
        Ok(())
    } else {
        Err(format!("got ({got}), expected ({want})"))
    }
}

fn eq<T: PartialEq + fmt::Debug>(got: T, want: T) -> Result<(), String> {
    if got == want {
        Ok(())
    } else {
        Err(format!("got {got:?}, expected {want:?}"))
    }
}

fn surd_eq(got: &QuadSurd, want: &SurdParts) -> Result<(), String> {
    let w = QuadSurd::from_parts(&want.a, &want.b, &want.d);
    if *got == w {
        Ok(())
    } else {
        Err(format!("got {got}, expected {w}"))
    }
}

fn run(check: &Check, reflection: bool, opts: VerifyOptions) -> Result<(), String> {
    let e = |e: CuspError| format!("{}: {e}", e.name());
    match check {
        Check::Dual(c, want) => expect_cycle(&c.dual(), want, reflection, opts),
        Check::Charge(s, q) => eq(s.charge(), i128::from(*q)),
        Check::Monodromy(s, m) => {
            let got = s.monodromy().to_i64().ok_or("monodromy exceeds i64")?;
            eq(got, [m[0][0], m[0][1], m[1][0], m[1][1]])
        }
        Check::Trace(s, t) => eq(&s.trace(), t),
        Check::Torsion(c, fs) => eq(c.torsion_group().map_err(e)?.factors().to_vec(), fs.clone()),
        Check::SurdFromCycle(w, parts) => surd_eq(&surd_from_cycle(w).map_err(e)?, parts),
        Check::EigenUnit(t, parts) => surd_eq(&eigen_unit(t).map_err(e)?, parts),
        Check::EigenUnitMinusOneNorm(t, n) => {
            let u = eigen_unit(t).map_err(e)?;
            let shifted = u.checked_sub(&QuadSurd::integer(1)).map_err(e)?;
            eq(shifted.norm(), n.clone())
        }
        Check::TCycle([p, q, r], want) => expect_cycle(&t_cycle(*p, *q, *r).map_err(e)?, want, reflection, opts),
        Check::PiCycle([p, q, r, s], want) => match pi_cycle(*p, *q, *r, *s).map_err(e)? {
            Some(got) => expect_cycle(&got, want, reflection, opts),
            None => Err("not tabulated".into()),
        },
        Check::LciClass(c, want) => {
            let got = match classify(c) {
                LciClass::Hypersurface { .. } => "hypersurface",
                LciClass::CompleteIntersection { .. } => "complete_intersection",
                LciClass::NotLci => "not_lci",
            };
            eq(got, want.as_str())
        }
        Check::NwCover(c, t, cover, dual) => {
            let r = nw_cover(c).map_err(e)?;
            eq(r.trace, *t)?;
            expect_cycle(&r.cover_cycle, cover, reflection, opts)?;
            expect_cycle(&r.cover_dual, dual, reflection, opts)
        }
        Check::Quotient(c, k, want) => expect_cycle(&quotient_cycle(c, *k).map_err(e)?, want, reflection, opts),
        Check::IsToric(s, want) => eq(is_toric(s), *want),
        Check::ToricModel(s, n) => {
            let script = toric_model_search(s, SearchLimits::default()).map_err(e)?;
            let end = script.replay(s, Default::default()).map_err(e)?;
            if !is_toric(&end) {
                return Err(format!("script ends at non-toric ({})", show(&end)));
            }
            eq(script.count(MoveOp::InternalBlowDown), *n)
        }
        Check::Enumerate(t, n, want) => {
            let got: BTreeSet<CuspCycle> = enumerate_cycles_with_trace(*t, *n).into_iter().map(|c| c.canonical()).collect();
            if &got == want {
                Ok(())
            } else {
                let list = |s: &BTreeSet<CuspCycle>| s.iter().map(|c| format!("({c})")).collect::<Vec<_>>().join(" ");
                Err(format!("got {}, expected {}", list(&got), list(want)))
            }
        }
        Check::RationalDual(c, want) => eq(has_rational_dual(c), *want),
        Check::MatrixToCycle(m, want) => expect_cycle(&matrix_to_cycle(m).map_err(e)?, want, reflection, opts),
    }
}
