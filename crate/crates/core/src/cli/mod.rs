//! Command-line front end. [`run_command`] does all the work so that it can
//! be driven from tests; the binary only prints its output.

pub mod dot;
pub mod format;

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::action::{
    coproduct, enumerate_equivariant_maps, product, validate_biaction, EquivariantMap,
    FiniteBiAction, DEFAULT_FUNCSET_LIMIT,
};
use crate::attractor::{attractor_decomposition_with, ReachMode};
use crate::burnside::{burnside_add, burnside_class, burnside_mul, BurnsideElement};
use crate::error::{Error, Result, Side};
use crate::homotopy::{factorize_weq, find_isomorphism, is_weak_equivalence, pullback, pushout};
use crate::inverse::{evaluate, inv_total, invert, reversible_core, InvertedAction};
use crate::monoid::{transition_monoid, MonoidKind, MonoidPresentation};

pub use dot::export_dot;
pub use format::{load_action, load_map, parse_action, serialize_action, serialize_map};

/// Environment variable overriding the function-set size bound.
pub const FUNCSET_ENV: &str = "REVCORE_MAX_FUNCSET";

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SideArg {
    L,
    R,
}

impl From<SideArg> for Side {
    fn from(s: SideArg) -> Side {
        match s {
            SideArg::L => Side::Left,
            SideArg::R => Side::Right,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ReachArg {
    All,
    Any,
}

#[derive(Parser, Debug)]
#[command(name = "revcore", about = "Reversible cores and weak equivalences of finite monoid actions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum BurnsideCommand {
    /// Class of a free commutative action.
    Class { action: PathBuf },
    Mul { x: String, y: String },
    Add { x: String, y: String },
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check an action file and report its invertibility flags.
    Validate { action: PathBuf },
    /// Transition monoid of one side.
    Tmon {
        action: PathBuf,
        #[arg(long, value_enum, default_value = "l")]
        side: SideArg,
    },
    /// Reversible core.
    Core {
        action: PathBuf,
        #[arg(long, value_enum, default_value = "l")]
        side: SideArg,
    },
    /// Inverse action on the reversible core.
    Invert {
        action: PathBuf,
        #[arg(long, value_enum, default_value = "l")]
        side: SideArg,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Inv of a one-sided action.
    Inv {
        action: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Evaluation map Inv(M) -> M.
    Ev { action: PathBuf },
    /// Check that a map file is equivariant.
    Equivariant { map: PathBuf },
    /// Enumerate all equivariant maps.
    Maps { source: PathBuf, target: PathBuf },
    /// Decide whether a map is a weak equivalence.
    Weq { map: PathBuf },
    /// Search for an equivariant isomorphism.
    Iso { source: PathBuf, target: PathBuf },
    Product {
        a: PathBuf,
        b: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
    Coproduct {
        a: PathBuf,
        b: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Pushout of two maps with a common source.
    Pushout {
        u: PathBuf,
        f: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Pullback of two maps with a common target.
    Pullback {
        g: PathBuf,
        v: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Factor a weak equivalence as an injective then a surjective one.
    Factorize {
        map: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
    #[command(subcommand)]
    Burnside(BurnsideCommand),
    /// Attractor components and basin.
    Attractors {
        action: PathBuf,
        #[arg(long, value_enum, default_value = "all")]
        reach: ReachArg,
    },
    /// Graphviz rendering.
    Dot {
        action: PathBuf,
        #[arg(long, value_enum)]
        side: Option<SideArg>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

/// Exit code and captured output of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

struct Report {
    holds: bool,
    text: String,
}

impl Report {
    fn ok(text: String) -> Self {
        Report { holds: true, text }
    }

    fn verdict(holds: bool, text: String) -> Self {
        Report { holds, text }
    }
}

/// Runs `revcore` with `argv` (including the program name). Exit codes:
/// 0 success or property true, 1 property false, 2 invalid input.
pub fn run_command<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome { code: 2, stdout: String::new(), stderr: text }
            } else {
                Outcome { code: 0, stdout: text, stderr: String::new() }
            };
        }
    };
    match dispatch(cli.command) {
        Ok(r) => Outcome {
            code: if r.holds { 0 } else { 1 },
            stdout: r.text,
            stderr: String::new(),
        },
        Err(e) => Outcome {
            code: 2,
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}

fn funcset_limit() -> Result<usize> {
    match std::env::var(FUNCSET_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("{FUNCSET_ENV}: expected a non-negative integer, found `{v}`"))),
        Err(_) => Ok(DEFAULT_FUNCSET_LIMIT),
    }
}

fn state_list(a: &FiniteBiAction, xs: &[usize]) -> String {
    xs.iter().map(|&x| a.states()[x].as_str()).collect::<Vec<_>>().join(" ")
}

fn map_line(f: &EquivariantMap) -> String {
    f.map()
        .iter()
        .enumerate()
        .map(|(x, &y)| format!("{}->{}", f.source().states()[x], f.target().states()[y]))
        .collect::<Vec<_>>()
        .join(" ")
}

fn labeled(label: &str, body: &str) -> String {
    if body.is_empty() {
        format!("{label}:\n")
    } else {
        format!("{label}: {body}\n")
    }
}

fn describe(a: &FiniteBiAction) -> String {
    let mut out = labeled("carrier", &a.states().join(" "));
    if a.is_side_trivial(Side::Left) && a.is_side_trivial(Side::Right) {
        out.push_str("action: trivial\n");
        return out;
    }
    for side in [Side::Left, Side::Right] {
        if a.is_side_trivial(side) {
            continue;
        }
        for (g, t) in a.monoid().generators().iter().zip(a.family(side)) {
            let body = t
                .images()
                .iter()
                .enumerate()
                .map(|(x, &y)| format!("{}->{}", a.states()[x], a.states()[y]))
                .collect::<Vec<_>>()
                .join(" ");
            out.push_str(&labeled(&format!("{side} {g}"), &body));
        }
    }
    out
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    if let Some(dir) = path.parent() {
        if !dir.as_os_str().is_empty() {
            fs::create_dir_all(dir).map_err(|e| Error::Parse(format!("{}: {e}", dir.display())))?;
        }
    }
    fs::write(path, text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

fn inverted_report(inv: &InvertedAction, output: Option<&Path>) -> Result<Report> {
    let base = inv.base();
    let mut text = labeled("core", &state_list(base, inv.core()));
    text.push_str(&describe(inv.action()));
    match find_isomorphism(base, inv.action())? {
        Some(w) => text.push_str(&labeled("isomorphic to base", &map_line(&w))),
        None => text.push_str("isomorphic to base: no\n"),
    }
    if let Some(path) = output {
        write_file(path, &serialize_action(inv.action()))?;
    }
    Ok(Report::ok(text))
}

/// The free monoid on one generator and `N` coincide; accept either.
fn as_free_commutative(a: FiniteBiAction) -> Result<FiniteBiAction> {
    let m = a.monoid();
    if m.kind() == MonoidKind::Free && m.rank() == 1 && m.has_unit() {
        let p = MonoidPresentation::free_commutative(m.generators().to_vec())?;
        return a.with_monoid(p);
    }
    Ok(a)
}

fn dispatch(command: Command) -> Result<Report> {
    match command {
        Command::Validate { action } => {
            let a = load_action(&action)?;
            let flags = validate_biaction(&a)?;
            Ok(Report::ok(format!(
                "states: {}\ngenerators: {}\nsemi-invertible: {}\ninvertible left: {}\ninvertible right: {}\n",
                a.len(),
                a.monoid().rank(),
                flags.semi_invertible,
                flags.invertible_left,
                flags.invertible_right
            )))
        }
        Command::Tmon { action, side } => {
            let a = load_action(&action)?;
            let side = Side::from(side);
            let tm = transition_monoid(a.family(side), a.len(), a.monoid().has_unit())?;
            let mut text = format!("size: {}\n", tm.len());
            for (k, t) in tm.elements().iter().enumerate() {
                let images: Vec<usize> = t.images().to_vec();
                text.push_str(&labeled(&format!("t{k}"), &state_list(&a, &images)));
            }
            Ok(Report::ok(text))
        }
        Command::Core { action, side } => {
            let a = load_action(&action)?;
            let core = reversible_core(&a, side.into())?;
            Ok(Report::ok(labeled("core", &state_list(&a, &core))))
        }
        Command::Invert { action, side, output } => {
            let a = load_action(&action)?;
            inverted_report(&invert(&a, side.into())?, output.as_deref())
        }
        Command::Inv { action, output } => {
            let a = load_action(&action)?;
            inverted_report(&inv_total(&a)?, output.as_deref())
        }
        Command::Ev { action } => {
            let a = load_action(&action)?;
            if !a.monoid().has_unit() {
                return Ok(Report::ok("ev: n/a\n".into()));
            }
            let ev = evaluate(&inv_total(&a)?)?;
            Ok(Report::ok(labeled("ev", &map_line(&ev))))
        }
        Command::Equivariant { map } => match load_map(&map) {
            Ok(_) => Ok(Report::ok("equivariant: true\n".into())),
            Err(Error::NotEquivariant) => Ok(Report::verdict(false, "equivariant: false\n".into())),
            Err(e) => Err(e),
        },
        Command::Maps { source, target } => {
            let (a, b) = (load_action(&source)?, load_action(&target)?);
            let maps = enumerate_equivariant_maps(&a, &b, funcset_limit()?)?;
            let mut text = format!("count: {}\n", maps.len());
            for f in &maps {
                text.push_str(&map_line(f));
                text.push('\n');
            }
            Ok(Report::ok(text))
        }
        Command::Weq { map } => {
            let f = load_map(&map)?;
            let cert = is_weak_equivalence(&f)?;
            let text = format!(
                "weak equivalence: {}\n{}",
                cert.verdict,
                labeled("core map", &map_line(&cert.core_restriction))
            );
            Ok(Report::verdict(cert.verdict, text))
        }
        Command::Iso { source, target } => {
            let (a, b) = (load_action(&source)?, load_action(&target)?);
            Ok(match find_isomorphism(&a, &b)? {
                Some(w) => Report::ok(labeled("isomorphism", &map_line(&w))),
                None => Report::verdict(false, "isomorphism: none\n".into()),
            })
        }
        Command::Product { a, b, output } => {
            let c = product(&load_action(&a)?, &load_action(&b)?)?;
            write_file(&output, &serialize_action(&c))?;
            Ok(Report::ok(format!("wrote {} ({} states)\n", output.display(), c.len())))
        }
        Command::Coproduct { a, b, output } => {
            let c = coproduct(&load_action(&a)?, &load_action(&b)?)?;
            write_file(&output, &serialize_action(&c))?;
            Ok(Report::ok(format!("wrote {} ({} states)\n", output.display(), c.len())))
        }
        Command::Pushout { u, f, output } => {
            let (mu, mf) = (load_map(&u)?, load_map(&f)?);
            let po = pushout(&mu, &mf)?;
            let object = output.join("object.json");
            write_file(&object, &serialize_action(&po.object))?;
            let f_prime = output.join("f_prime.json");
            let u_prime = output.join("u_prime.json");
            write_file(&f_prime, &serialize_map(&po.f_prime, &map_side(&u, true)?, &object, &f_prime))?;
            write_file(&u_prime, &serialize_map(&po.u_prime, &map_side(&f, true)?, &object, &u_prime))?;
            Ok(Report::ok(format!(
                "{}{}{}",
                describe(&po.object),
                labeled("f'", &map_line(&po.f_prime)),
                labeled("u'", &map_line(&po.u_prime))
            )))
        }
        Command::Pullback { g, v, output } => {
            let (mg, mv) = (load_map(&g)?, load_map(&v)?);
            let pb = pullback(&mg, &mv)?;
            let object = output.join("object.json");
            write_file(&object, &serialize_action(&pb.object))?;
            let g_prime = output.join("g_prime.json");
            let v_prime = output.join("v_prime.json");
            write_file(&g_prime, &serialize_map(&pb.g_prime, &object, &map_side(&v, false)?, &g_prime))?;
            write_file(&v_prime, &serialize_map(&pb.v_prime, &object, &map_side(&g, false)?, &v_prime))?;
            Ok(Report::ok(format!(
                "{}{}{}",
                describe(&pb.object),
                labeled("g'", &map_line(&pb.g_prime)),
                labeled("v'", &map_line(&pb.v_prime))
            )))
        }
        Command::Factorize { map, output } => {
            let w = load_map(&map)?;
            let cert = factorize_weq(&w)?;
            let fz = &cert.factorization;
            let middle = output.join("middle.json");
            write_file(&middle, &serialize_action(fz.u.target()))?;
            let (src, dst) = (map_side(&map, false)?, map_side(&map, true)?);
            let u = output.join("u.json");
            let v = output.join("v.json");
            let u_tilde = output.join("u_tilde.json");
            write_file(&u, &serialize_map(&fz.u, &src, &middle, &u))?;
            write_file(&v, &serialize_map(&fz.v, &middle, &dst, &v))?;
            write_file(&u_tilde, &serialize_map(&cert.u_tilde, &dst, &middle, &u_tilde))?;
            let text = format!(
                "{}{}{}u injective: {}\nu weak equivalence: {}\nv surjective: {}\nv weak equivalence: {}\nv∘u = w: {}\n",
                describe(fz.u.target()),
                labeled("u", &map_line(&fz.u)),
                labeled("v", &map_line(&fz.v)),
                cert.u_injective,
                cert.u_weak_equivalence,
                cert.v_surjective,
                cert.v_weak_equivalence,
                fz.composite_equals
            );
            Ok(Report::verdict(cert.holds(), text))
        }
        Command::Burnside(cmd) => {
            let parse = |s: &str| s.parse::<BurnsideElement>();
            let x = match cmd {
                BurnsideCommand::Class { action } => {
                    burnside_class(&as_free_commutative(load_action(&action)?)?)?
                }
                BurnsideCommand::Mul { x, y } => burnside_mul(&parse(&x)?, &parse(&y)?)?,
                BurnsideCommand::Add { x, y } => burnside_add(&parse(&x)?, &parse(&y)?)?,
            };
            Ok(Report::ok(format!("{x}\n")))
        }
        Command::Attractors { action, reach } => {
            let a = load_action(&action)?;
            let mode = match reach {
                ReachArg::All => ReachMode::All,
                ReachArg::Any => ReachMode::Any,
            };
            let d = attractor_decomposition_with(&a, mode)?;
            let mut text = String::new();
            for (k, c) in d.components.iter().enumerate() {
                let tag = if d.periodic_flags[k] { "periodic" } else { "not periodic" };
                text.push_str(&format!("attractor {}: {} [{tag}]\n", k + 1, state_list(&a, c)));
            }
            text.push_str(&labeled("basin", &state_list(&a, &d.basin)));
            Ok(Report::ok(text))
        }
        Command::Dot { action, side, output } => {
            let a = load_action(&action)?;
            let dot = export_dot(&a, side.map(Side::from))?;
            match output {
                Some(path) => {
                    write_file(&path, &dot)?;
                    Ok(Report::ok(format!("wrote {}\n", path.display())))
                }
                None => Ok(Report::ok(dot)),
            }
        }
    }
}

/// Path of the source (`target = false`) or target action named in a map file.
fn map_side(map: &Path, target: bool) -> Result<PathBuf> {
    let text = fs::read_to_string(map).map_err(|e| Error::Parse(format!("{}: {e}", map.display())))?;
    let file: format::MapFile =
        serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", map.display())))?;
    let dir = map.parent().unwrap_or(Path::new(""));
    Ok(dir.join(if target { file.target } else { file.source }))
}
