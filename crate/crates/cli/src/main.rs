mod output;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use daha::daha::{verify_generators, Corruption, Daha, Relation};
use daha::laurent::{q_rho_power, LaurentPoly, Sign};
use daha::macdonald::{
    class_set_weight, duality_check, evaluation_value, fundamental_orbit_sums, intertwining_check, key_lemma_check,
    l_operator, macdonald_polynomial, shift_action_check, specialization, specialized_evaluation_value, ParamMode,
    ShiftSetting,
};
use daha::verify::{full_verify, Outcome};
use daha::{Error, ParamScalar, RootDatum, Weight};

use output::{verdict, Format, Output, Record, Status};

#[derive(Parser)]
#[command(name = "daha", version, about = "Exact DAHA and Macdonald polynomial computations and identity checks")]
struct Cli {
    #[arg(long, value_enum, default_value = "text", global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct TypeArg {
    /// Root system, e.g. A2, B3, G2.
    #[arg(long = "type")]
    root: String,
}

#[derive(Args)]
struct ModeArgs {
    /// generic or specialized (specialized needs --k).
    #[arg(long, default_value = "generic")]
    mode: String,
    /// One k per root length, long first; implies --mode specialized.
    #[arg(long, value_delimiter = ',', num_args = 1..)]
    k: Vec<u32>,
}

#[derive(Subcommand)]
enum Command {
    /// The Macdonald polynomial p_b.
    ComputeP {
        #[command(flatten)]
        t: TypeArg,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        weight: Vec<i64>,
        #[command(flatten)]
        mode: ModeArgs,
    },
    /// p_b(q^-rho) against the closed evaluation formula.
    Evaluate {
        #[command(flatten)]
        t: TypeArg,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        weight: Vec<i64>,
        #[command(flatten)]
        mode: ModeArgs,
    },
    /// p_b(q^-rho d^c) p_c(q^-rho) = [[p_b, p_c]] = p_c(q^-rho d^b) p_b(q^-rho).
    Duality {
        #[command(flatten)]
        t: TypeArg,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        b: Vec<i64>,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        c: Vec<i64>,
    },
    /// The defining relations on all monomials of coordinate height <= h.
    Relations {
        #[command(flatten)]
        t: TypeArg,
        #[arg(long, default_value_t = 2)]
        height: i64,
        /// Deliberately break one generator: drop-delta-t0, flip-t:J, pi-without-delta:R.
        #[arg(long)]
        corrupt: Option<String>,
    },
    /// Shift operator intertwining, its action on p_b, and the key lemma.
    Shift {
        #[command(flatten)]
        t: TypeArg,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        weight: Vec<i64>,
        /// Root lengths in the shift: long, short, or all.
        #[arg(long, value_delimiter = ',', default_value = "all")]
        v: Vec<String>,
        /// Set q = 1 for the lengths outside v.
        #[arg(long)]
        restrict: bool,
    },
    /// The Harish-Chandra image of L_f for each fundamental orbit sum.
    Chi {
        #[command(flatten)]
        t: TypeArg,
    },
    /// Every acceptance check for the datum.
    FullVerify {
        #[command(flatten)]
        t: TypeArg,
    },
}

enum Failure {
    Usage(String),
    Compute(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidRootSystem { .. }
            | Error::DimensionMismatch { .. }
            | Error::NotAntidominant(_)
            | Error::NotMinuscule(_)
            | Error::RequiresTypeA(_)
            | Error::EmptyClassSet
            | Error::UnknownLengthClass(_)
            | Error::ShiftOutOfRange(_)
            | Error::Parse(_) => Failure::Usage(e.to_string()),
            e => Failure::Compute(e),
        }
    }
}

type Res<T> = std::result::Result<T, Failure>;

fn datum(t: &TypeArg) -> Res<RootDatum> {
    Ok(t.root.parse()?)
}

fn weight(d: &RootDatum, name: &str, c: &[i64]) -> Res<Weight> {
    if c.len() != d.rank() {
        return Err(Failure::Usage(format!("--{name} needs {} coordinates for {}", d.rank(), d.name())));
    }
    Ok(Weight::from_slice(c))
}

fn antidominant(d: &RootDatum, name: &str, c: &[i64]) -> Res<Weight> {
    let b = weight(d, name, c)?;
    if !b.is_antidominant() {
        return Err(Failure::Usage(format!("--{name} {b} must have non-positive coordinates")));
    }
    Ok(b)
}

fn mode(d: &RootDatum, m: &ModeArgs) -> Res<ParamMode> {
    match (m.mode.as_str(), m.k.is_empty()) {
        ("generic", true) => Ok(ParamMode::Generic),
        ("generic" | "specialized", false) => {
            let n = d.length_classes().len();
            if m.k.len() != n {
                return Err(Failure::Usage(format!("--k needs {n} entries for {}", d.name())));
            }
            Ok(ParamMode::Specialized(m.k.clone()))
        }
        ("specialized", true) => Err(Failure::Usage("--mode specialized needs --k".into())),
        (other, _) => Err(Failure::Usage(format!("unknown mode '{other}'"))),
    }
}

fn corruption(d: &RootDatum, s: &str) -> Res<Corruption> {
    let bad = || Failure::Usage(format!("unknown corruption '{s}'"));
    let (name, arg) = match s.split_once(':') {
        Some((n, a)) => (n, Some(a.parse::<usize>().map_err(|_| bad())?)),
        None => (s, None),
    };
    let c = match (name, arg) {
        ("drop-delta-t0", None) => Corruption::DropDeltaT0,
        ("flip-t", Some(j)) if j <= d.rank() => Corruption::FlipT(j),
        ("pi-without-delta", Some(r)) => Corruption::PiWithoutDelta(r),
        _ => return Err(bad()),
    };
    Ok(c)
}

fn classes(d: &RootDatum, v: &[String]) -> Res<Vec<daha::root_datum::Rat>> {
    let all = d.length_classes();
    let mut out = Vec::new();
    for name in v {
        match name.as_str() {
            "all" => out.extend_from_slice(all),
            "long" => out.push(all[0]),
            "short" if all.len() > 1 => out.push(all[1]),
            _ => return Err(Failure::Usage(format!("{} has no root length '{name}'", d.name()))),
        }
    }
    Ok(out)
}

fn compute_p(out: &mut Output, d: &RootDatum, b: &Weight, mode: &ParamMode) -> Res<()> {
    let p = macdonald_polynomial(d, b, mode)?;
    let mut r = Record::new("macdonald").field("type", d.name()).field("b", b).field("mode", mode).field("p", &p.poly);
    for (c, v) in p.monomial_coefficients(d)? {
        r.set(format!("m{c}"), v);
    }
    out.emit(r);
    Ok(())
}

fn evaluate(out: &mut Output, d: &RootDatum, b: &Weight, mode: &ParamMode) -> Res<()> {
    let zero = Weight::zero(d.rank());
    let generic = macdonald_polynomial(d, b, &ParamMode::Generic)?;
    let at = generic.poly.evaluate_at_rho_point(d, &zero, Sign::Minus);
    let (value, closed) = match mode {
        ParamMode::Generic => (at, evaluation_value(d, b)?),
        ParamMode::Specialized(k) => (at.substitute(&specialization(d, k)?)?, specialized_evaluation_value(d, b, k)?),
    };
    let ok = value == closed;
    out.check(ok);
    out.emit(
        Record::new("evaluation")
            .field("type", d.name())
            .field("b", b)
            .field("mode", mode)
            .field("value", &value)
            .field("closed_form", &closed)
            .field("status", verdict(ok)),
    );
    Ok(())
}

fn duality(out: &mut Output, d: &RootDatum, b: &Weight, c: &Weight) -> Res<()> {
    let r = duality_check(d, b, c)?;
    out.check(r.holds());
    out.emit(
        Record::new("duality")
            .field("type", d.name())
            .field("b", b)
            .field("c", c)
            .field("lhs", &r.lhs)
            .field("pairing", &r.pairing)
            .field("rhs", &r.rhs)
            .field("status", verdict(r.holds())),
    );
    Ok(())
}

fn relations(out: &mut Output, d: &RootDatum, height: i64, corrupt: Option<&str>) -> Res<()> {
    if height < 0 {
        return Err(Failure::Usage("--height must be non-negative".into()));
    }
    let h = match corrupt {
        Some(c) => Daha::corrupted(d, corruption(d, c)?)?,
        None => Daha::new(d),
    };
    let rep = verify_generators(&h, height);
    for rel in Relation::ALL {
        let r = rep.get(rel);
        out.check(r.passed());
        let mut rec = Record::new("relation")
            .field("type", d.name())
            .field("height", height)
            .field("relation", rel.label())
            .field("checks", r.checks)
            .field("status", verdict(r.passed()));
        if let Some(why) = &r.failure {
            rec.set("first_failure", why);
        }
        out.emit(rec);
    }
    Ok(())
}

fn shift(out: &mut Output, d: &RootDatum, b: &Weight, v: &[String], restrict: bool) -> Res<()> {
    let s = ShiftSetting::new(d, &classes(d, v)?, restrict)?;
    let all = d.length_classes();
    let label: Vec<&str> = s.v.iter().map(|&nu| if nu == all[0] { "long" } else { "short" }).collect();
    let label = label.join(",");
    for (i, f) in fundamental_orbit_sums(d).iter().enumerate() {
        let ok = intertwining_check(d, f, &s)?;
        out.check(ok);
        out.emit(
            Record::new("intertwining")
                .field("type", d.name())
                .field("v", &label)
                .field("restrict", restrict)
                .field("f", format!("m{}", Weight::basis(d.rank(), i).neg()))
                .field("status", verdict(ok)),
        );
    }
    let ok = shift_action_check(d, b, &s)?;
    out.check(ok);
    out.emit(
        Record::new("shift_action")
            .field("type", d.name())
            .field("v", &label)
            .field("b", b)
            .field("status", verdict(ok)),
    );
    let c = b.add(&class_set_weight(d, &s.v));
    let mut rec = Record::new("key_lemma").field("type", d.name()).field("v", &label).field("b", b);
    if c.is_antidominant() {
        let r = key_lemma_check(d, b, &s)?;
        out.check(r.holds());
        rec.set("lhs", &r.lhs);
        rec.set("rhs", &r.rhs);
        rec.set("sign", r.sign.map_or("none".to_string(), |x| x.to_string()));
        rec.set("d_is_monomial", r.d_is_monomial);
        rec.set("status", verdict(r.holds()));
    } else {
        rec.set("status", format!("skipped (b + r_v = {c} is not antidominant)"));
    }
    out.emit(rec);
    Ok(())
}

fn chi(out: &mut Output, d: &RootDatum) -> Res<()> {
    let h = Daha::new(d);
    for (i, f) in fundamental_orbit_sums(d).iter().enumerate() {
        let got = h.harish_chandra_chi(&l_operator(&h, f)?)?;
        let expected = LaurentPoly::from_terms(
            f.terms().map(|(b, g)| (b.clone(), g * &ParamScalar::monomial(q_rho_power(d, b, 1)))),
        );
        let ok = got == expected;
        out.check(ok);
        out.emit(
            Record::new("chi")
                .field("type", d.name())
                .field("f", format!("m{}", Weight::basis(d.rank(), i).neg()))
                .field("chi", &got)
                .field("expected", &expected)
                .field("status", verdict(ok)),
        );
    }
    Ok(())
}

fn verify_all(out: &mut Output, d: &RootDatum) {
    for rep in full_verify(d) {
        if rep.has_error() {
            out.note(Status::ComputationError);
        }
        out.check(rep.passed());
        let mut rec = Record::new("criterion")
            .field("id", rep.id)
            .field("title", rep.title)
            .field("type", &rep.datum)
            .field("checks", rep.checks.len())
            .field("status", verdict(rep.passed()));
        for c in rep.failures() {
            match &c.outcome {
                Outcome::Fail(why) => rec.set("fail", format!("{}: {why}", c.label)),
                Outcome::Error(why) => rec.set("error", format!("{}: {why}", c.label)),
                Outcome::Pass => {}
            }
        }
        out.emit(rec);
    }
}

fn run(cli: &Cli, out: &mut Output) -> Res<()> {
    match &cli.command {
        Command::ComputeP { t, weight: w, mode: m } => {
            let d = datum(t)?;
            compute_p(out, &d, &antidominant(&d, "weight", w)?, &mode(&d, m)?)
        }
        Command::Evaluate { t, weight: w, mode: m } => {
            let d = datum(t)?;
            evaluate(out, &d, &antidominant(&d, "weight", w)?, &mode(&d, m)?)
        }
        Command::Duality { t, b, c } => {
            let d = datum(t)?;
            duality(out, &d, &antidominant(&d, "b", b)?, &antidominant(&d, "c", c)?)
        }
        Command::Relations { t, height, corrupt } => relations(out, &datum(t)?, *height, corrupt.as_deref()),
        Command::Shift { t, weight: w, v, restrict } => {
            let d = datum(t)?;
            shift(out, &d, &antidominant(&d, "weight", w)?, v, *restrict)
        }
        Command::Chi { t } => chi(out, &datum(t)?),
        Command::FullVerify { t } => {
            verify_all(out, &datum(t)?);
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) if !e.use_stderr() => e.exit(),
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(1);
        }
    };
    let mut out = Output::new(cli.format);
    let res = run(&cli, &mut out);
    let (text, status) = out.finish();
    print!("{text}");
    match res {
        Ok(()) => ExitCode::from(status.exit_code() as u8),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Compute(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(Status::ComputationError.exit_code() as u8)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn error_classes() {
        for e in [Error::SpecializationPole, Error::EigenvalueCollision("a".into(), "b".into()), Error::NotTriangular] {
            assert!(matches!(Failure::from(e), Failure::Compute(_)));
        }
        for e in [Error::NotAntidominant("[1]".into()), Error::Parse("x".into()), Error::EmptyClassSet] {
            assert!(matches!(Failure::from(e), Failure::Usage(_)));
        }
        assert_eq!(Status::ComputationError.exit_code(), 3);
        assert!(Status::ComputationError > Status::IdentityFailure);
    }
}
