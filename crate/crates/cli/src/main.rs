//! `dshuffle`: batch front end for the double shuffle workbench.
//!
//! Exit status: 0 when every verdict holds, 1 when some check fails, 2 on
//! usage or input errors.

mod expr;
mod report;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use dshuffle::battery::{harmonic_battery, random_group_alg, random_series, rng};
use dshuffle::betti_side::{delta_m_b, delta_v_b, delta_w_b, ga_word, mb_class, to_wb_generators};
use dshuffle::braids::diagrams::{check_prop, group_words, Diagram, PropInput};
use dshuffle::braids::fixtures;
use dshuffle::dmr::{
    check_theorem_3_2, is_associator, is_dmr, is_dmr_b, parse_assoc, solve_associator_with, torsor_difference,
    write_assoc, AssociatorSolution, GDRPoint, MembershipReport,
};
use dshuffle::dr_side::{m_class, to_y_basis};
use dshuffle::mzv::{self, Composition};
use dshuffle::ncalg::{render_lin, words_of_len, Series};
use dshuffle::Q;
use report::{Check, Report};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser, Debug)]
#[command(name = "dshuffle", version, about = "Double shuffle workbench: coproducts, associators, MZV numerics")]
struct Cli {
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Seed for every random battery.
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,
    /// Binary precision for numerical commands.
    #[arg(long = "prec", global = true, env = "DSHUFFLE_PREC", default_value_t = 128)]
    prec: u32,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Print the coproduct of an element.
    Coproduct {
        #[arg(long, value_enum)]
        which: Coprod,
        /// Element in the expression syntax, e.g. "e0e1 - 2 e1" or "X1^-1 Y2+".
        #[arg(long)]
        elem: String,
        /// Truncation degree for de Rham elements.
        #[arg(long, default_value_t = 4)]
        deg: usize,
    },
    /// Check the diagram propositions on a battery of inputs.
    Verify {
        #[command(subcommand)]
        what: VerifyCmd,
    },
    /// Solve the pentagon degree by degree and print an assoc.v1 file.
    SolveAssociator {
        #[arg(long, default_value = "1")]
        mu: Q,
        #[arg(long)]
        deg: usize,
        /// Value given to every free coordinate.
        #[arg(long, default_value = "0")]
        free: Q,
    },
    /// Membership of a stored associator in DMR_mu and in the associator set.
    DmrCheck {
        #[arg(long)]
        input: PathBuf,
    },
    /// Pentagon residual of a stored or freshly solved associator.
    PentagonCheck {
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long, default_value = "1")]
        mu: Q,
        #[arg(long, default_value_t = 4)]
        deg: usize,
    },
    /// Compatibility of the twisted comparison maps with the harmonic coproducts.
    Theorem32 {
        #[arg(long, default_value_t = 4)]
        deg: usize,
        #[arg(long, default_value = "1")]
        mu: Q,
        /// Random harmonic inputs added to the four fixed ones.
        #[arg(long, default_value_t = 20)]
        random: usize,
    },
    /// Torsor difference p^-1 * q of two associators and its Betti membership.
    #[command(name = "dmrB-difference")]
    DmrBDifference {
        /// Two assoc.v1 files; without them two solver outputs are used.
        #[arg(long, num_args = 2)]
        input: Vec<PathBuf>,
        #[arg(long, default_value_t = 5)]
        deg: usize,
    },
    /// Multiple zeta values as CSV.
    Mzv {
        /// Composition such as 2,1; may be repeated.
        #[arg(long)]
        comp: Vec<String>,
        /// Every admissible composition up to this weight.
        #[arg(long)]
        table: Option<usize>,
    },
    /// Numerical DMR conditions for the KZ associator.
    KzCheck {
        #[arg(long)]
        weight: usize,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
    },
    /// Braid fixture file maintenance.
    Fixtures {
        #[command(subcommand)]
        what: FixturesCmd,
    },
}

#[derive(Subcommand, Debug)]
enum VerifyCmd {
    /// One of the four diagram propositions.
    Prop(PropArgs),
}

#[derive(Args, Debug)]
struct PropArgs {
    #[arg(long, value_parser = ["2.1", "2.2", "2.3", "2.4"])]
    which: String,
    /// Word degree (de Rham) or group-word length (Betti) of the exhaustive part.
    #[arg(long, default_value_t = 3)]
    max_deg: usize,
    /// Seeded random inputs added to the exhaustive part.
    #[arg(long, default_value_t = 0)]
    random: usize,
    /// Check this single element instead of a battery.
    #[arg(long)]
    elem: Option<String>,
}

#[derive(Subcommand, Debug)]
enum FixturesCmd {
    /// Rewrite the braid fixture file from the oracles.
    Regen {
        #[arg(long)]
        path: Option<PathBuf>,
        /// Compare instead of writing; fails when the file is stale.
        #[arg(long)]
        check: bool,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Coprod {
    #[value(name = "v-dr")]
    VDr,
    #[value(name = "w-dr")]
    WDr,
    #[value(name = "m-dr")]
    MDr,
    #[value(name = "v-b")]
    VB,
    #[value(name = "w-b")]
    WB,
    #[value(name = "m-b")]
    MB,
}

/// What a subcommand produces: a JSON report or raw text (assoc.v1, CSV).
enum Output {
    Report(Report),
    Text(String, bool),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(&cli) {
        Ok(out) => {
            let (text, pass) = match out {
                Output::Report(r) => (r.to_json(), r.verdict),
                Output::Text(t, pass) => (t, pass),
            };
            if let Err(e) = emit(&cli.out, &text) {
                eprintln!("error: {:#}", e);
                return ExitCode::from(2);
            }
            if pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {:#}", e);
            ExitCode::from(2)
        }
    }
}

fn emit(path: &Option<PathBuf>, text: &str) -> Result<()> {
    match path {
        Some(p) => std::fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{}", text);
            Ok(())
        }
    }
}

fn dispatch(cli: &Cli) -> Result<Output> {
    match &cli.cmd {
        Cmd::Coproduct { which, elem, deg } => coproduct(*which, elem, *deg),
        Cmd::Verify { what: VerifyCmd::Prop(a) } => verify_prop(a, cli.seed),
        Cmd::SolveAssociator { mu, deg, free } => {
            let s = solve(mu, *deg, free)?;
            Ok(Output::Text(write_assoc(&s), true))
        }
        Cmd::DmrCheck { input } => dmr_check(input),
        Cmd::PentagonCheck { input, mu, deg } => pentagon_check(input.as_ref(), mu, *deg),
        Cmd::Theorem32 { deg, mu, random } => theorem32(*deg, mu, *random, cli.seed),
        Cmd::DmrBDifference { input, deg } => dmr_b_difference(input, *deg),
        Cmd::Mzv { comp, table } => zeta_csv(comp, *table, cli.prec),
        Cmd::KzCheck { weight, tol } => kz_check(*weight, cli.prec, *tol),
        Cmd::Fixtures { what: FixturesCmd::Regen { path, check } } => fixtures_regen(path.clone(), *check),
    }
}

fn coproduct(which: Coprod, elem: &str, n: usize) -> Result<Output> {
    let v = expr::parse(elem, n)?;
    let rendered = match which {
        Coprod::VDr => v.into_de_rham(n)?.delta().render(),
        Coprod::WDr => {
            let d = to_y_basis(&v.into_de_rham(n)?)?.delta();
            render_lin(&d.terms, |(a, b)| format!("{}(x){}", a, b))
        }
        Coprod::MDr => {
            let d = m_class(&v.into_de_rham(n)?).delta();
            render_lin(&d, |(a, b)| format!("{}(x){}", a, b))
        }
        Coprod::VB => render_lin(&delta_v_b(&v.into_betti()?), |(a, b)| format!("{}(x){}", a, b)),
        Coprod::WB => {
            let d = delta_w_b(&to_wb_generators(&v.into_betti()?)?);
            render_lin(&d, |(a, b)| format!("{}(x){}", a, b))
        }
        Coprod::MB => {
            let d = delta_m_b(&mb_class(&v.into_betti()?))?;
            render_lin(&d, |(a, b)| format!("{}(x){}", a, b))
        }
    };
    let mut r = Report::new("coproduct");
    r.config("which", which.to_possible_value().expect("named variant").get_name());
    r.config("elem", elem);
    r.config("deg", n);
    r.value("coproduct", rendered);
    Ok(Output::Report(r))
}

fn verify_prop(a: &PropArgs, seed: u64) -> Result<Output> {
    let d = Diagram::parse(&a.which)?;
    let mut inputs = Vec::new();
    let betti = matches!(d, Diagram::WB | Diagram::MB);
    match (&a.elem, betti) {
        (Some(e), true) => inputs.push(PropInput::Betti(expr::parse(e, 0)?.into_betti()?)),
        (Some(e), false) => inputs.push(PropInput::DeRham(expr::parse(e, a.max_deg)?.into_de_rham(a.max_deg)?)),
        (None, true) => {
            inputs.extend(group_words(a.max_deg).into_iter().map(|w| PropInput::Betti(ga_word(w))));
            let mut r = rng(seed);
            inputs.extend((0..a.random).map(|_| PropInput::Betti(random_group_alg(&mut r, a.max_deg))));
        }
        (None, false) => {
            for deg in 0..=a.max_deg {
                inputs.extend(words_of_len(2, deg).into_iter().map(|w| PropInput::DeRham(Series::word(w, deg))));
            }
            let mut r = rng(seed);
            let n = a.max_deg;
            inputs.extend((0..a.random).map(|_| PropInput::DeRham(random_series(&mut r, n, n))));
        }
    }
    let results = dshuffle::par::map(&inputs, |x| check_prop(d, x));
    let mut r = Report::new("verify prop");
    r.config("which", &a.which);
    r.config("max_deg", a.max_deg);
    r.config("random", a.random);
    r.config("seed", seed);
    for res in results {
        let p = res?;
        let detail = (!p.equal).then(|| format!("lhs {} ; rhs {}", p.lhs, p.rhs));
        r.check(Check::new(format!("prop {}", p.diagram), p.input, p.equal).detail(detail));
    }
    Ok(Output::Report(r))
}

fn solve(mu: &Q, n: usize, free: &Q) -> Result<AssociatorSolution> {
    Ok(solve_associator_with(mu, n, |_, _| free.clone())?)
}

fn membership_checks(r: &mut Report, name: &str, m: &MembershipReport) {
    let mut c = Check::new(name, "", m.verdict);
    if !m.verdict {
        c = c.detail(Some(m.to_string().trim_end().to_string()));
    }
    r.check(c);
}

fn read_assoc(p: &PathBuf) -> Result<AssociatorSolution> {
    let text = std::fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?;
    Ok(parse_assoc(&text)?)
}

fn dmr_check(input: &PathBuf) -> Result<Output> {
    let s = read_assoc(input)?;
    let mut r = Report::new("dmr-check");
    r.config("input", input.display());
    r.config("mu", &s.point.mu);
    r.config("trunc", s.point.trunc());
    membership_checks(&mut r, "DMR_mu", &is_dmr(&s.point)?);
    membership_checks(&mut r, "associator", &is_associator(&s.point)?);
    Ok(Output::Report(r))
}

fn pentagon_check(input: Option<&PathBuf>, mu: &Q, n: usize) -> Result<Output> {
    let s = match input {
        Some(p) => read_assoc(p)?,
        None => solve(mu, n, &Q::from_integer(0.into()))?,
    };
    let res = dshuffle::dmr::pentagon_residual(&s.point.g)?;
    let mut r = Report::new("pentagon-check");
    r.config("mu", &s.point.mu);
    r.config("trunc", s.point.trunc());
    let detail = (!res.is_zero()).then(|| res.render());
    r.check(Check::new("pentagon", "", res.is_zero()).detail(detail));
    Ok(Output::Report(r))
}

fn theorem32(n: usize, mu: &Q, random: usize, seed: u64) -> Result<Output> {
    let s = solve(mu, n, &Q::from_integer(0.into()))?;
    let inputs = harmonic_battery(seed, random);
    let checks = check_theorem_3_2(&s.point, &inputs)?;
    let mut r = Report::new("theorem32");
    r.config("deg", n);
    r.config("mu", mu);
    r.config("random", random);
    r.config("seed", seed);
    for c in checks {
        let detail = c.residual.as_ref().map(|x| format!("degree {} at {}", x.degree, x.witness));
        r.check(Check::new(format!("diagram {}", c.diagram), c.input, c.equal).detail(detail));
    }
    Ok(Output::Report(r))
}

fn dmr_b_difference(input: &[PathBuf], n: usize) -> Result<Output> {
    let (p, q): (GDRPoint, GDRPoint) = match input {
        [a, b] => (read_assoc(a)?.point, read_assoc(b)?.point),
        [] => {
            let one = Q::from_integer(1.into());
            (solve(&one, n, &Q::from_integer(0.into()))?.point, solve(&one, n, &one)?.point)
        }
        _ => bail!("--input takes exactly two files"),
    };
    let d = torsor_difference(&p, &q)?;
    let mut r = Report::new("dmrB-difference");
    r.config("trunc", d.trunc());
    r.value("mu", d.mu.to_string());
    r.value("difference", d.g.render());
    membership_checks(&mut r, "DMR_B", &is_dmr_b(&d)?);
    Ok(Output::Report(r))
}

fn zeta_csv(comps: &[String], table: Option<usize>, bits: u32) -> Result<Output> {
    let mut list = Vec::new();
    for c in comps {
        list.push(Composition::parse(c)?);
    }
    if let Some(w) = table {
        list.extend(mzv::admissible_compositions(w));
    }
    if list.is_empty() {
        bail!("give --comp or --table");
    }
    let values = dshuffle::par::map(&list, |c| mzv::zeta(c, bits));
    let digits = mzv::digits_for(bits).saturating_sub(2);
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["composition", "weight", "value", "error_bound"])?;
    for (c, v) in list.iter().zip(values) {
        let v = v?;
        let parts: Vec<String> = c.0.iter().map(|k| k.to_string()).collect();
        w.write_record([
            parts.join(","),
            c.weight().to_string(),
            v.value.to_decimal(digits),
            format!("{:.3e}", v.error),
        ])?;
    }
    Ok(Output::Text(String::from_utf8(w.into_inner()?)?, true))
}

fn kz_check(weight: usize, bits: u32, tol: f64) -> Result<Output> {
    if weight > 5 {
        bail!("kz-check supports weight at most 5");
    }
    let rep = mzv::numeric_dmr_check(weight, bits, tol)?;
    let mut r = Report::new("kz-check");
    r.config("weight", weight);
    r.config("prec", bits);
    r.config("tol", format!("{:e}", tol));
    for (cond, res) in &rep.max_residual {
        r.check(Check::new(cond.clone(), "phi_KZ", *res <= tol).detail(Some(format!("max residual {:.3e}", res))));
    }
    Ok(Output::Report(r))
}

fn default_fixture_path() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../dshuffle/fixtures/braid_fixtures.v1")
}

fn fixtures_regen(path: Option<PathBuf>, check: bool) -> Result<Output> {
    let path = path.unwrap_or_else(default_fixture_path);
    let fresh = fixtures::regenerate();
    let mut r = Report::new("fixtures regen");
    r.config("path", path.display());
    if check {
        let old = std::fs::read_to_string(&path).with_context(|| format!("reading {}", path.display()))?;
        r.check(Check::new("fixtures up to date", path.display().to_string(), old == fresh));
    } else {
        std::fs::write(&path, &fresh).with_context(|| format!("writing {}", path.display()))?;
        r.value("lines", fresh.lines().count().to_string());
    }
    Ok(Output::Report(r))
}
