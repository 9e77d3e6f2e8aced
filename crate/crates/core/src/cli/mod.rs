//! Command-line front end: expression grammar, subcommands and rendering.
//!
//! Grammar, loosest binding first:
//!
//! ```text
//! input  := sum [ "(x)" sum ]
//! sum    := term { ("+" | "-") term }
//! term   := unary { "*" unary }
//! unary  := "-" unary | power
//! power  := atom { "^" integer }
//! atom   := number | number("i"|"j"|"k") | "i" | "j" | "k" | "t"
//!         | "X{" set "}" | "x{" [set] ";" index "}" | "y" r ["@" n] | "z" r
//!         | "(" sum ")"
//! number := digits [ "/" digits ]
//! ```

mod ast;
mod eval;
mod parser;

pub use ast::Expr;
pub use eval::{
    quaternion_list, quaternion_matrix, to_free, to_polynomial, to_quaternion, to_tensor,
};
pub use parser::parse_expression;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::ncpoly::{
    eval_factored, expand_factors, quasidet, vandermonde_qd, vieta, LeftPolynomial, RingMatrix,
    RootSystem,
};
use crate::nogo::{nogo_witness_with_seed, phi, phi_independence_check};
use crate::nsym::{antipode, coproduct, counit, hopf_check};
use crate::qn::{
    dimension_by_rank, enumerate_basis, hilbert_dim, normal_form_with, tensor_normal_form, Limits,
};
use crate::scalars::{to_pq_string, Quaternion};

#[derive(Debug, Parser)]
#[command(
    name = "ncsym",
    version,
    about = "Exact computations with noncommutative polynomials, pseudo-roots and NSym"
)]
pub struct Cli {
    /// Print JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate a polynomial in t at a quaternion (left form unless --right).
    Eval {
        #[arg(allow_hyphen_values = true)]
        poly: String,
        #[arg(long, allow_hyphen_values = true)]
        at: String,
        /// Substitute with powers of x on the left of the coefficients.
        #[arg(long)]
        right: bool,
    },
    /// Divide by (t - x) on the right: quotient and remainder.
    Divide {
        #[arg(allow_hyphen_values = true)]
        poly: String,
        #[arg(long, allow_hyphen_values = true)]
        at: String,
    },
    /// Evaluate the product g*h at x through the conjugation formula.
    Evalfactored {
        #[arg(allow_hyphen_values = true)]
        g: String,
        #[arg(allow_hyphen_values = true)]
        h: String,
        #[arg(long, allow_hyphen_values = true)]
        at: String,
    },
    /// Quasideterminant |M|_pq, rows separated by ';' and entries by ','.
    Quasidet {
        #[arg(long, allow_hyphen_values = true)]
        matrix: String,
        /// Row, from 1.
        #[arg(long)]
        p: usize,
        /// Column, from 1.
        #[arg(long)]
        q: usize,
    },
    /// Vandermonde quasideterminant V(x_1, ..., x_r).
    Vandermonde {
        #[arg(long, allow_hyphen_values = true)]
        roots: String,
    },
    /// Pseudo-roots y_1..y_n of an ordered root list.
    Pseudoroots {
        #[arg(long, allow_hyphen_values = true)]
        roots: String,
    },
    /// Elementary functions of the pseudo-roots and the expanded polynomial.
    Vieta {
        #[arg(long, allow_hyphen_values = true)]
        roots: String,
    },
    /// Normal form in Q_n of an element or of a tensor 'a (x) b'.
    Nf {
        #[arg(allow_hyphen_values = true)]
        expr: String,
        #[arg(long)]
        n: u32,
        /// Largest word length to reduce.
        #[arg(long, default_value_t = Limits::default().max_degree)]
        max_degree: u32,
    },
    /// Admissible strings of weight d in Q_n.
    Basis {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        degree: u32,
    },
    /// dim Q_{n,d} by enumeration and by relation rank.
    Dim {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        degree: u32,
    },
    /// Coproduct of an NSym element.
    NsymCop {
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Counit of an NSym element.
    NsymCounit {
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Antipode of an NSym element.
    NsymAntipode {
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Hopf axioms on every z_gamma up to the given weight.
    HopfCheck {
        #[arg(long, default_value_t = 6)]
        max_degree: u32,
    },
    /// Image of an NSym element in Q_n, or with --degree the rank of all images.
    Phi {
        #[arg(allow_hyphen_values = true)]
        expr: Option<String>,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        degree: Option<u32>,
    },
    /// Forced counit, forced coproduct slices and the obstruction tensor.
    Nogo {
        #[arg(long)]
        n: u32,
        /// Seed for the sampled higher coproduct terms.
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

/// Exit code and captured output of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

struct Rendered {
    text: String,
    json: Value,
    /// Nonzero when the computation succeeded but a check failed.
    code: i32,
}

impl Rendered {
    fn ok(text: impl Into<String>, json: Value) -> Self {
        Rendered {
            text: text.into(),
            json,
            code: 0,
        }
    }
}

fn quaternion_json(q: &Quaternion) -> Value {
    let components: Vec<String> = [&q.w, &q.x, &q.y, &q.z]
        .into_iter()
        .map(to_pq_string)
        .collect();
    json!({ "display": q.to_string(), "components": components })
}

fn polynomial_json(p: &LeftPolynomial<Quaternion>) -> Value {
    json!({
        "display": p.to_string(),
        "coeffs": p.coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>(),
    })
}

fn to_value<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serializable output")
}

fn quaternion_arg(text: &str) -> Result<Quaternion> {
    to_quaternion(&parse_expression(text)?)
}

fn polynomial_arg(text: &str) -> Result<LeftPolynomial<Quaternion>> {
    to_polynomial(&parse_expression(text)?)
}

fn nsym_arg(text: &str) -> Result<crate::freealg::FreeElement> {
    to_free(&parse_expression(text)?, None)
}

fn dispatch(command: Command) -> Result<Rendered> {
    Ok(match command {
        Command::Eval { poly, at, right } => {
            let p = polynomial_arg(&poly)?;
            let x = quaternion_arg(&at)?;
            let v = if right {
                p.eval_right(&x)
            } else {
                p.eval_left(&x)
            };
            Rendered::ok(
                v.to_string(),
                json!({ "value": quaternion_json(&v), "form": if right { "right" } else { "left" } }),
            )
        }
        Command::Divide { poly, at } => {
            let p = polynomial_arg(&poly)?;
            if p.degree().unwrap_or(0) == 0 {
                return Err(Error::Invalid(
                    "division needs a polynomial of degree at least 1".into(),
                ));
            }
            let (quot, rem) = p.right_divide(&quaternion_arg(&at)?);
            Rendered::ok(
                format!("quotient: {quot}\nremainder: {rem}"),
                json!({ "quotient": polynomial_json(&quot), "remainder": quaternion_json(&rem) }),
            )
        }
        Command::Evalfactored { g, h, at } => {
            let (g, h, x) = (
                polynomial_arg(&g)?,
                polynomial_arg(&h)?,
                quaternion_arg(&at)?,
            );
            let v = eval_factored(&g, &h, &x);
            let direct = g.mul(&h).eval_left(&x);
            Rendered::ok(
                format!("{v}\ndirect evaluation agrees: {}", v == direct),
                json!({ "value": quaternion_json(&v), "direct": quaternion_json(&direct), "agree": v == direct }),
            )
        }
        Command::Quasidet { matrix, p, q } => {
            let m = RingMatrix::from_rows(quaternion_matrix(&matrix)?)?;
            if p == 0 || q == 0 || p > m.rows() || q > m.cols() {
                return Err(Error::IndexOutOfRange(format!(
                    "({p},{q}) in a {}x{} matrix",
                    m.rows(),
                    m.cols()
                )));
            }
            let v = quasidet(&m, p - 1, q - 1)?;
            Rendered::ok(v.to_string(), json!({ "value": quaternion_json(&v) }))
        }
        Command::Vandermonde { roots } => {
            let v = vandermonde_qd(&quaternion_list(&roots)?)?;
            Rendered::ok(v.to_string(), json!({ "value": quaternion_json(&v) }))
        }
        Command::Pseudoroots { roots } => {
            let ys = RootSystem::new(quaternion_list(&roots)?).pseudo_roots()?;
            let text: Vec<String> = ys
                .iter()
                .enumerate()
                .map(|(k, y)| format!("y{}={y}", k + 1))
                .collect();
            Rendered::ok(
                text.join(", "),
                json!({ "pseudo_roots": ys.iter().map(quaternion_json).collect::<Vec<_>>() }),
            )
        }
        Command::Vieta { roots } => {
            let ys = RootSystem::new(quaternion_list(&roots)?).pseudo_roots()?;
            let es = vieta(&ys);
            let poly = expand_factors(&ys);
            let text: Vec<String> = es
                .iter()
                .enumerate()
                .map(|(k, e)| format!("e{}={e}", k + 1))
                .collect();
            Rendered::ok(
                format!("{}\npolynomial: {poly}", text.join(", ")),
                json!({
                    "elementary": es.iter().map(quaternion_json).collect::<Vec<_>>(),
                    "polynomial": polynomial_json(&poly),
                }),
            )
        }
        Command::Nf {
            expr,
            n,
            max_degree,
        } => {
            let limits = Limits {
                max_degree,
                ..Limits::default()
            };
            let ast = parse_expression(&expr)?;
            if ast.is_tensor() {
                let t = to_tensor(&ast, Some(n))?;
                // check limits on each leg before reducing
                for ([u, v], _) in t.iter() {
                    let leg = |w: &crate::freealg::Word| {
                        crate::freealg::FreeElement::monomial(w.clone(), num_traits::One::one())
                    };
                    normal_form_with(&leg(u), n, &limits)?;
                    normal_form_with(&leg(v), n, &limits)?;
                }
                let nf = tensor_normal_form(&t, n)?;
                Rendered::ok(nf.to_string(), to_value(&nf))
            } else {
                let nf = normal_form_with(&to_free(&ast, Some(n))?, n, &limits)?;
                Rendered::ok(nf.to_string(), to_value(&nf))
            }
        }
        Command::Basis { n, degree } => {
            let limits = Limits::default();
            if n == 0 || n > limits.max_n {
                return Err(Error::LimitExceeded(format!(
                    "n = {n} (allowed 1..={})",
                    limits.max_n
                )));
            }
            let strings = enumerate_basis(n, degree);
            let lines: Vec<String> = strings
                .iter()
                .map(|s| {
                    format!(
                        "{s}  {}",
                        crate::freealg::FreeElement::monomial(s.word(), num_traits::One::one())
                    )
                })
                .collect();
            Rendered::ok(
                format!("{}\n{} strings", lines.join("\n"), strings.len()),
                json!({ "n": n, "degree": degree, "strings": to_value(&strings) }),
            )
        }
        Command::Dim { n, degree } => {
            let by_rank = dimension_by_rank(n, degree, &Limits::default())?;
            let counted = hilbert_dim(n, degree);
            let agree = by_rank == counted;
            Rendered {
                text: format!(
                    "dim Q_{{{n},{degree}}} = {counted} (admissible strings {counted}, words minus relation rank {by_rank}){}",
                    if agree { "" } else { "\nMISMATCH" }
                ),
                json: json!({ "n": n, "degree": degree, "enumeration": counted, "relation_rank": by_rank, "agree": agree }),
                code: if agree { 0 } else { 1 },
            }
        }
        Command::NsymCop { expr } => {
            let t = coproduct(&nsym_arg(&expr)?)?;
            Rendered::ok(t.to_string(), to_value(&t))
        }
        Command::NsymCounit { expr } => {
            let c = counit(&nsym_arg(&expr)?)?;
            Rendered::ok(c.to_string(), json!({ "value": to_pq_string(&c) }))
        }
        Command::NsymAntipode { expr } => {
            let s = antipode(&nsym_arg(&expr)?)?;
            Rendered::ok(s.to_string(), to_value(&s))
        }
        Command::HopfCheck { max_degree } => {
            let report = hopf_check(max_degree)?;
            Rendered {
                code: if report.passed() { 0 } else { 1 },
                text: report.to_string(),
                json: to_value(&report),
            }
        }
        Command::Phi { expr, n, degree } => match (expr, degree) {
            (Some(expr), None) => {
                let nf = phi(&nsym_arg(&expr)?, n)?;
                Rendered::ok(nf.to_string(), to_value(&nf))
            }
            (None, Some(d)) => {
                let report = phi_independence_check(n, d)?;
                Rendered {
                    code: if report.independent() { 0 } else { 1 },
                    text: format!(
                        "rank {} of {} compositions of weight <= {d}: {}",
                        report.rank,
                        report.compositions,
                        if report.independent() {
                            "independent"
                        } else {
                            "DEPENDENT"
                        }
                    ),
                    json: to_value(&report),
                }
            }
            _ => {
                return Err(Error::Invalid(
                    "phi takes either an expression or --degree".into(),
                ))
            }
        },
        Command::Nogo { n, seed } => {
            let report = nogo_witness_with_seed(n, seed)?;
            Rendered {
                code: if report.verified() { 0 } else { 1 },
                text: report.transcript(),
                json: to_value(&report),
            }
        }
    })
}

/// Runs one invocation; `args` includes the program name.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            } else {
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            };
        }
    };
    let json = cli.json;
    match dispatch(cli.command) {
        Ok(r) => {
            let mut stdout = if json {
                serde_json::to_string_pretty(&r.json).expect("json output")
            } else {
                r.text
            };
            stdout.push('\n');
            Outcome {
                code: r.code,
                stdout,
                stderr: String::new(),
            }
        }
        Err(e) => {
            let stderr = if json {
                let mut v = json!({ "error": e.to_string() });
                if let Error::Parse {
                    offset, expected, ..
                } = &e
                {
                    v["offset"] = json!(offset);
                    v["expected"] = json!(expected);
                }
                format!("{v}\n")
            } else {
                format!("error: {e}\n")
            };
            Outcome {
                code: e.exit_code(),
                stdout: String::new(),
                stderr,
            }
        }
    }
}
