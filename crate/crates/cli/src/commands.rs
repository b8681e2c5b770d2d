//! Command implementations. Each returns its complete output; nothing is
//! written until the whole computation has succeeded.

use std::fmt;

use serde_json::{json, Value as Json};

use profin::construct::is_prime;
use profin::fusion::{alperin_closure_check, g_fusion, subgroup_classes_seeded};
use profin::normal::{invariants_report, tate_check_seeded, NormalLattice, Value};
use profin::towers::{cyclic_tower, fitting_degenerate_tower, ob_table_csv, wreath_tower, TowerLattices};
use profin::{Caps, GroupError};

use crate::spec::{parse_spec, GroupSpec, ParseError};

#[derive(Debug)]
pub enum CliError {
    Parse { argument: &'static str, error: ParseError },
    Group(GroupError),
    Input(String),
    Io { path: String, message: String },
}

impl From<GroupError> for CliError {
    fn from(e: GroupError) -> Self {
        CliError::Group(e)
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Parse { argument, error } => write!(f, "{argument}: {error}"),
            CliError::Group(e) => write!(f, "{e}"),
            CliError::Input(m) => f.write_str(m),
            CliError::Io { path, message } => write!(f, "{path}: {message}"),
        }
    }
}

impl CliError {
    /// 2 for cap violations, 1 for everything else.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Group(e) if e.is_cap() => 2,
            _ => 1,
        }
    }

    /// One-line JSON diagnostic.
    pub fn diagnostic(&self) -> String {
        let mut d = match self {
            CliError::Parse { argument, error } => json!({
                "error": "parse",
                "argument": argument,
                "line": error.line,
                "column": error.column,
                "expected": error.expected,
            }),
            CliError::Group(GroupError::CapExceeded { cap, limit, required }) => json!({
                "error": "cap_exceeded",
                "cap": cap,
                "limit": limit,
                "required": required,
            }),
            CliError::Group(_) | CliError::Input(_) => json!({ "error": "invalid_input" }),
            CliError::Io { path, .. } => json!({ "error": "io", "path": path }),
        };
        d["message"] = Json::String(self.to_string());
        d.to_string()
    }
}

pub type CliResult<T> = Result<T, CliError>;

/// What a command produced: stdout text plus the optional file reports.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Output {
    pub stdout: String,
    pub json: Option<String>,
    pub csv: Option<String>,
}

pub fn parse_arg(argument: &'static str, text: &str) -> CliResult<GroupSpec> {
    parse_spec(text).map_err(|error| CliError::Parse { argument, error })
}

fn pretty(v: &Json) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json value serializes");
    s.push('\n');
    s
}

fn check_prime(p: u64) -> CliResult<()> {
    if !is_prime(p) {
        return Err(CliError::Input(format!("{p} is not prime")));
    }
    Ok(())
}

pub fn invariants(spec: &GroupSpec, caps: &Caps, seed: u64) -> CliResult<Output> {
    let g = spec.build(caps, seed)?;
    let report = invariants_report(&spec.to_string(), &g, caps)?;
    let json = report.to_json();
    let mut csv = String::from("name,value\n");
    for (name, value) in &report.invariants {
        let v = match value {
            Value::Integer(x) => x.to_string(),
            Value::Boolean(b) => b.to_string(),
            Value::Sequence(xs) => xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" "),
        };
        csv.push_str(&format!("{name},{v}\n"));
    }
    Ok(Output {
        stdout: json.clone(),
        json: Some(json),
        csv: Some(csv),
    })
}

pub fn ob_table(spec: &GroupSpec, max_n: u64, star: bool, caps: &Caps, seed: u64) -> CliResult<Output> {
    if max_n == 0 {
        return Err(CliError::Input("--max-n must be positive".into()));
    }
    let g = spec.build(caps, seed)?;
    let lat = NormalLattice::new(&g, caps)?;
    let mut csv = String::from(if star { "n,ob,ob_star\n" } else { "n,ob\n" });
    let mut rows = Vec::new();
    for n in 1..=max_n {
        let ob = lat.ob(n);
        if star {
            let s = lat.ob_star(n, caps)?;
            csv.push_str(&format!("{n},{ob},{s}\n"));
            rows.push(json!({ "n": n, "ob": ob, "ob_star": s }));
        } else {
            csv.push_str(&format!("{n},{ob}\n"));
            rows.push(json!({ "n": n, "ob": ob }));
        }
    }
    let json = pretty(&json!({ "group": spec.to_string(), "order": lat.top_order(), "rows": rows }));
    Ok(Output {
        stdout: csv.clone(),
        json: Some(json),
        csv: Some(csv),
    })
}

/// `k` is `None` for `--K self`.
pub fn tate(spec: &GroupSpec, p: u64, k: Option<&GroupSpec>, caps: &Caps, seed: u64) -> CliResult<Output> {
    check_prime(p)?;
    let g = spec.build(caps, seed)?;
    let kg = match k {
        Some(k) => k.build(caps, seed)?,
        None => g.clone(),
    };
    let r = tate_check_seeded(&g, &kg, p, caps, seed)?;
    let json = pretty(&json!({
        "group": spec.to_string(),
        "K": k.map_or("self".to_string(), |k| k.to_string()),
        "p": p,
        "derived": r.derived,
        "frattini": r.frattini,
        "derived_residual": r.derived_residual,
        "residual": r.residual,
        "all_equal": r.all_equal(),
        "all_true": r.all_true(),
    }));
    let csv = format!(
        "derived,frattini,derived_residual,residual\n{},{},{},{}\n",
        r.derived, r.frattini, r.derived_residual, r.residual
    );
    Ok(Output {
        stdout: json.clone(),
        json: Some(json),
        csv: Some(csv),
    })
}

pub fn fusion(spec: &GroupSpec, p: u64, alperin: bool, caps: &Caps, seed: u64) -> CliResult<Output> {
    check_prime(p)?;
    let g = spec.build(caps, seed)?;
    let mut t = subgroup_classes_seeded(&g, p, caps, seed)?;
    g_fusion(&mut t)?;
    let report = if alperin {
        Some(alperin_closure_check(&t)?)
    } else {
        None
    };
    let json = t.to_json(report.as_ref());
    let mut csv = String::from("class,order,size,g_class\n");
    for c in 0..t.class_count() {
        let fused = t.fusion().map_or(String::new(), |f| f[c].to_string());
        csv.push_str(&format!(
            "{c},{},{},{fused}\n",
            t.subgroup_order(t.representative_id(c)),
            t.class_members(c).len()
        ));
    }
    Ok(Output {
        stdout: json.clone(),
        json: Some(json),
        csv: Some(csv),
    })
}

pub fn tower(family: &str, params: &[u64], max_n: Option<u64>, star: bool, caps: &Caps) -> CliResult<Output> {
    let depth = |x: u64| usize::try_from(x).map_err(|_| CliError::Input(format!("depth {x} is too large")));
    let t = match (family, params) {
        ("cyclic", &[p, d]) => cyclic_tower(p, depth(d)?, caps)?,
        ("wreath", &[p, d]) => wreath_tower(p, depth(d)?, caps)?,
        ("cyclic" | "wreath", _) => {
            return Err(CliError::Input(format!("{family} tower takes --params P,DEPTH")));
        }
        ("fitting_degenerate", [primes @ .., d]) if !primes.is_empty() => {
            fitting_degenerate_tower(primes, depth(*d)?, caps)?
        }
        ("fitting_degenerate", _) => {
            return Err(CliError::Input(
                "fitting_degenerate tower takes --params P1,...,PK,DEPTH".into(),
            ));
        }
        _ => {
            return Err(CliError::Input(format!(
                "unknown tower family `{family}` (expected cyclic, wreath or fitting_degenerate)"
            )));
        }
    };
    if max_n == Some(0) {
        return Err(CliError::Input("--max-n must be positive".into()));
    }
    let lats = TowerLattices::new(&t, caps)?;
    let mut d = t.descriptor();
    d["fitting_sequence"] = json!(lats.fitting_sequence()?);
    let mut csv = None;
    if let Some(max_n) = max_n {
        let rows = lats.ob_table(max_n, star, caps)?;
        let mut ob = Vec::new();
        for n in 1..=max_n {
            let (values, stable) = lats.ob_sequence(n)?;
            let mut e = json!({ "n": n, "values": values, "stable": stable });
            if star {
                e["ob_star"] = json!(lats.ob_star_sequence(n, caps)?);
            }
            ob.push(e);
        }
        d["ob"] = Json::Array(ob);
        csv = Some(ob_table_csv(&rows));
    }
    let json = pretty(&d);
    Ok(Output {
        stdout: json.clone(),
        json: Some(json),
        csv,
    })
}
