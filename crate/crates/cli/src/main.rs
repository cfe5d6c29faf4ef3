//! `cdga-bar`: bar constructions, Tor algebras and formality certificates
//! from a text file of definitions.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use cdga_bar::algebra::cohomology_algebra;
use cdga_bar::bar::{BarTriple, BarWindow};
use cdga_bar::error::Error;
use cdga_bar::formality::formality_certificate;
use cdga_bar::input::{parse_input, Instance};
use cdga_bar::shuffle::check_cdga_structure;
use cdga_bar::tor::{bar_cohomology, compare_windows, koszul_tor_oracle, render_class, tor_algebra, TorResult};
use clap::{Parser, Subcommand};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "cdga-bar", version, about = "Exact bar constructions on CDGAs over Q")]
struct Cli {
    /// File with algebra, morphism, triple and ladder definitions.
    #[arg(short, long, global = true)]
    input: Option<PathBuf>,
    /// Top degree of the window.
    #[arg(long, global = true, default_value_t = 12)]
    max_degree: usize,
    /// Machine-readable output.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Cohomology algebra of one algebra, degrees 0..=max-degree.
    Cohomology {
        #[arg(long)]
        algebra: String,
    },
    /// Word counts of the bar window per bar degree and total degree.
    Bar {
        #[arg(long)]
        triple: String,
        /// Check the commutative DGA axioms on the window.
        #[arg(long)]
        check_cdga: bool,
    },
    /// Cohomology of the bar window with its product.
    Tor {
        #[arg(long)]
        triple: String,
        /// Cross-check dimensions with the Koszul complex.
        #[arg(long)]
        oracle: bool,
    },
    /// Formality certificate for the pull-back of a cohomology triple.
    Formality {
        #[arg(long)]
        triple: String,
        #[arg(long)]
        certificate: PathBuf,
    },
    /// Compare cohomology dimensions of two windows.
    Compare {
        #[arg(long, num_args = 1, required = true)]
        triple: Vec<String>,
        #[arg(long)]
        ladder: Option<String>,
    },
}

/// Exit codes.
const NEGATIVE: u8 = 1;
const INAPPLICABLE: u8 = 2;
const INTERNAL: u8 = 3;
const INPUT: u8 = 4;

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::NotFree(_) | Error::NotPolynomialBase { .. } => INAPPLICABLE,
        Error::VanishingFailed { .. }
        | Error::Consistency(_)
        | Error::SignInconsistency { .. }
        | Error::CompositionNonzero { .. }
        | Error::DependentRepresentatives { .. }
        | Error::DimensionMismatch { .. } => INTERNAL,
        _ => INPUT,
    }
}

struct Out {
    json: bool,
}

impl Out {
    fn emit(&self, text: String, value: Value) {
        let body = if self.json {
            serde_json::to_string_pretty(&value).expect("json") + "\n"
        } else {
            text
        };
        // a closed pipe (`| head`) is not an error worth reporting
        let _ = std::io::stdout().write_all(body.as_bytes());
    }
}

fn table(headers: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = headers.iter().map(|h| h.chars().count()).collect();
    for r in rows {
        for (w, c) in widths.iter_mut().zip(r) {
            *w = (*w).max(c.chars().count());
        }
    }
    let line = |cells: Vec<String>| -> String {
        let padded: Vec<String> = cells
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{}{c}", " ".repeat(w - c.chars().count())))
            .collect();
        padded.join("  ").trim_end().to_string() + "\n"
    };
    let mut out = line(headers.iter().map(|h| h.to_string()).collect());
    for r in rows {
        out += &line(r.clone());
    }
    out
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn load(cli: &Cli, top: usize) -> Result<Instance, Error> {
    let path = cli.input.as_ref().ok_or_else(|| Error::Parse {
        line: 0,
        column: 0,
        message: "no input file given (use --input)".into(),
    })?;
    let text = std::fs::read_to_string(path).map_err(|e| Error::Parse {
        line: 0,
        column: 0,
        message: format!("cannot read {}: {e}", path.display()),
    })?;
    parse_input(&text)?.instantiate(top)
}

fn run(cli: &Cli) -> Result<u8, Error> {
    let n = cli.max_degree;
    let out = Out { json: cli.json };
    // windows of top n need algebras known up to n + 1
    let inst = load(cli, n + 1)?;
    match &cli.command {
        Command::Cohomology { algebra } => cohomology(&out, &inst, algebra),
        Command::Bar { triple, check_cdga } => bar(&out, &inst, triple, n, *check_cdga),
        Command::Tor { triple, oracle } => tor(&out, &inst, triple, n, *oracle),
        Command::Formality { triple, certificate } => formality(&out, &inst, triple, n, certificate),
        Command::Compare { triple, ladder } => compare(&out, &inst, triple, ladder.as_deref(), n),
    }
}

fn cohomology(out: &Out, inst: &Instance, name: &str) -> Result<u8, Error> {
    let h = cohomology_algebra(inst.algebra(name)?)?;
    let a = &h.algebra;
    let rows: Vec<Vec<String>> = (0..=a.top())
        .map(|d| vec![d.to_string(), a.dim(d).to_string(), a.labels(d).join(", ")])
        .collect();
    let mut products = Vec::new();
    for p in 1..=a.top() {
        for q in p..=a.top() - p {
            for i in 0..a.dim(p) {
                for j in 0..a.dim(q) {
                    if p == q && j < i {
                        continue;
                    }
                    let prod = a.basis_product(p, i, q, j).expect("in range");
                    products.push((
                        a.label(p, i).to_string(),
                        a.label(q, j).to_string(),
                        a.render(p + q, prod),
                    ));
                }
            }
        }
    }
    let mut text = format!("H({name}), valid up to degree {}\n", a.top());
    text += &table(&["total_degree", "dim", "basis"], &rows);
    if !products.is_empty() {
        text += "\nproducts\n";
        for (l, r, p) in &products {
            text += &format!("{l} * {r} = {p}\n");
        }
    }
    let value = json!({
        "algebra": name,
        "valid_up_to": a.top(),
        "dims": (0..=a.top()).map(|d| json!({"total_degree": d, "dim": a.dim(d), "basis": a.labels(d)})).collect::<Vec<_>>(),
        "products": products.iter().map(|(l, r, p)| json!({"left": l, "right": r, "product": p})).collect::<Vec<_>>(),
    });
    out.emit(text, value);
    Ok(0)
}

fn window(inst: &Instance, name: &str, n: usize) -> Result<(BarTriple, BarWindow), Error> {
    let t = inst.triple(name)?;
    let w = BarWindow::build(t.clone(), n)?;
    Ok((t, w))
}

fn bar(out: &Out, inst: &Instance, name: &str, n: usize, check: bool) -> Result<u8, Error> {
    let (_, w) = window(inst, name, n)?;
    let dims = w.bigraded_dims();
    let rows: Vec<Vec<String>> = dims
        .iter()
        .map(|(&(k, d), &c)| vec![k.to_string(), d.to_string(), c.to_string()])
        .collect();
    let mut text = format!("bar window of {name}, top degree {n}; d^2, delta^2, d delta + delta d and D^2 vanish\n");
    text += &table(&["bar_degree", "total_degree", "dim"], &rows);
    let mut code = 0;
    let mut cdga = Value::Null;
    if check {
        match check_cdga_structure(&w)? {
            None => {
                text += "CDGA structure: unit, normalization, commutativity, associativity, Leibniz hold\n";
                cdga = json!({"holds": true});
            }
            Some(v) => {
                text += &format!("CDGA structure violated: {v:?}\n");
                cdga = json!({"holds": false, "violation": format!("{v:?}")});
                code = NEGATIVE;
            }
        }
    }
    let value = json!({
        "triple": name,
        "top": n,
        "dims": dims.iter().map(|(&(k, d), &c)| json!({"bar_degree": k, "total_degree": d, "dim": c})).collect::<Vec<_>>(),
        "cdga": cdga,
    });
    out.emit(text, value);
    Ok(code)
}

fn tor_tables(r: &TorResult) -> (String, Value) {
    let mut text = format!("valid up to degree {}\n", r.valid_up_to());
    let total: Vec<Vec<String>> = (0..=r.valid_up_to())
        .map(|d| vec![d.to_string(), r.total_dim(d).to_string()])
        .collect();
    text += &table(&["total_degree", "dim"], &total);
    let mut bigraded = Value::Null;
    if let Some(b) = r.bigraded_dims() {
        let rows: Vec<Vec<String>> = b
            .iter()
            .map(|(&(k, m), &c)| vec![k.to_string(), m.to_string(), (m as i64 + k).to_string(), c.to_string()])
            .collect();
        text += "\n";
        text += &table(&["bar_degree", "tensor_degree", "total_degree", "dim"], &rows);
        bigraded = b
            .iter()
            .map(|(&(k, m), &c)| json!({"bar_degree": k, "tensor_degree": m, "total_degree": m as i64 + k, "dim": c}))
            .collect();
    }
    let mut products = Vec::new();
    for (&(p, i, q, j), v) in r.products() {
        if p == 0 || q == 0 || (p, i) > (q, j) {
            continue;
        }
        products.push((
            r.classes(p)[i].label.clone(),
            r.classes(q)[j].label.clone(),
            render_class(r, p + q, v),
        ));
    }
    if !products.is_empty() {
        text += "\nproducts\n";
        for (l, rr, p) in &products {
            text += &format!("{l} * {rr} = {p}\n");
        }
    }
    let value = json!({
        "valid_up_to": r.valid_up_to(),
        "dims": (0..=r.valid_up_to()).map(|d| json!({"total_degree": d, "dim": r.total_dim(d)})).collect::<Vec<_>>(),
        "bigraded": bigraded,
        "products": products.iter().map(|(l, rr, p)| json!({"left": l, "right": rr, "product": p})).collect::<Vec<_>>(),
    });
    (text, value)
}

fn tor(out: &Out, inst: &Instance, name: &str, n: usize, oracle: bool) -> Result<u8, Error> {
    let t = inst.triple(name)?;
    let r = if t.is_cohomology_triple() {
        tor_algebra(&t, n)?
    } else {
        bar_cohomology(&BarWindow::build(t.clone(), n)?)?
    };
    let (mut text, mut value) = tor_tables(&r);
    text = format!("Tor for {name}, top degree {n}\n{text}");
    value["triple"] = json!(name);
    let mut code = 0;
    if oracle {
        let o = koszul_tor_oracle(&t.f, &t.g, n)?;
        let agree = o.total_dims == r.total_dims() && r.bigraded_dims().is_none_or(|b| *b == o.bigraded);
        text += &format!(
            "\nKoszul oracle: {}\n",
            if agree {
                "agrees".to_string()
            } else {
                format!("DISAGREES, oracle dims {:?}", o.total_dims)
            }
        );
        value["oracle"] = json!({
            "agrees": agree,
            "dims": o.total_dims.iter().enumerate().map(|(d, c)| json!({"total_degree": d, "dim": c})).collect::<Vec<_>>(),
        });
        if !agree {
            code = NEGATIVE;
        }
    }
    out.emit(text, value);
    Ok(code)
}

fn formality(out: &Out, inst: &Instance, name: &str, n: usize, path: &PathBuf) -> Result<u8, Error> {
    let t = inst.triple(name)?;
    match formality_certificate(&t, n) {
        Ok(cert) => {
            std::fs::write(path, cert.to_json())
                .map_err(|e| Error::Consistency(format!("cannot write certificate to {}: {e}", path.display())))?;
            let dims: Vec<usize> = cert.algebra.degrees.iter().map(|d| d.dim).collect();
            let text = format!(
                "certificate issued for {name}: the pull-back is formal\ncohomology dims up to degree {}: {:?}\nwritten to {}\n",
                cert.valid_up_to,
                dims,
                path.display()
            );
            out.emit(
                text,
                json!({"triple": name, "issued": true, "valid_up_to": cert.valid_up_to,
                       "dims": dims.iter().enumerate().map(|(d, c)| json!({"total_degree": d, "dim": c})).collect::<Vec<_>>()}),
            );
            Ok(0)
        }
        Err(Error::NotFree(w)) => {
            let text = format!("criterion inapplicable for {name}: module is not free ({w})\n");
            out.emit(text, json!({"triple": name, "issued": false, "witness": w.to_string()}));
            Ok(INAPPLICABLE)
        }
        Err(e) => Err(e),
    }
}

fn compare(out: &Out, inst: &Instance, names: &[String], ladder: Option<&str>, n: usize) -> Result<u8, Error> {
    let [a, b] = names else {
        return Err(Error::Parse {
            line: 0,
            column: 0,
            message: format!("compare needs exactly two --triple options, got {}", names.len()),
        });
    };
    let (_, w1) = window(inst, a, n)?;
    let (_, w2) = window(inst, b, n)?;
    let ladder = match ladder {
        None => None,
        Some(l) => {
            let (lad, from, to) = inst.ladder(l)?;
            if from != *a || to != *b {
                return Err(Error::Consistency(format!(
                    "ladder `{l}` goes {from} -> {to}, not {a} -> {b}"
                )));
            }
            Some(lad)
        }
    };
    let report = compare_windows(&w1, &w2, ladder.as_ref())?;
    let rows: Vec<Vec<String>> = report
        .rows
        .iter()
        .map(|&(d, x, y)| {
            vec![
                d.to_string(),
                x.to_string(),
                y.to_string(),
                if x == y { "" } else { "*" }.into(),
            ]
        })
        .collect();
    let mut text = format!("{a} vs {b}, valid up to degree {}\n", report.valid_up_to);
    text += &table(&["total_degree", a, b, "diff"], &rows);
    text += if report.equal {
        "dimensions agree\n"
    } else {
        "dimensions differ\n"
    };
    if let Some(iso) = report.induced_isomorphism {
        text += if iso {
            "ladder induces an isomorphism\n"
        } else {
            "ladder does not induce an isomorphism\n"
        };
    }
    let value = json!({
        "valid_up_to": report.valid_up_to,
        "dims": report.rows.iter().map(|&(d, x, y)| json!({"total_degree": d, "dim": [x, y]})).collect::<Vec<_>>(),
        "equal": report.equal,
        "induced_isomorphism": report.induced_isomorphism,
    });
    out.emit(text, value);
    Ok(0)
}
