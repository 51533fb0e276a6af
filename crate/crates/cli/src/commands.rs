use std::fmt::Write;

use anyhow::{bail, Result};
use serde_json::{json, Value};

use modinv::algebra::{
    class_to_json, parse_class, render_class, Config, ExtClass, Poly, WeightVector,
};
use modinv::chern::{
    divisibility_profile, image_generator, obstruction_table, power_of_regular,
    regular_representation, total_chern, ImageCase, WeightMultiset,
};
use modinv::invariants::{
    dickson_classes, group_generators, invariant_dimension, is_invariant, moore_class, orbit_size,
    predicted_dimension, DicksonRing, GroupKind, InvariantRing, Membership,
};
use modinv::steenrod::{apply_word, milnor_q, OpWord};
use modinv::torus::e8_adjoint_check;

/// A rendered result. `ok` is false when an asserted check failed.
pub struct Report {
    pub text: String,
    pub json: Value,
    pub ok: bool,
}

impl Report {
    fn new(text: String, json: Value) -> Self {
        Report {
            text,
            json,
            ok: true,
        }
    }

    fn checked(text: String, json: Value, ok: bool) -> Self {
        Report { text, json, ok }
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn poly_json(f: &Poly) -> Value {
    class_to_json(&ExtClass::from(f.clone()))
}

fn poly_text(f: &Poly) -> String {
    render_class(&ExtClass::from(f.clone()))
}

/// The `c_{n,i}` are stored highest `i` first.
fn c_index(n: usize, k: usize) -> usize {
    n - 1 - k
}

pub fn dickson(p: u32, n: usize) -> Result<Report> {
    let cfg = Config::new(p, n)?;
    let d = dickson_classes(cfg)?;
    let mut text = format!("Dickson classes for {cfg}\n");
    writeln!(text, "e{n} [deg {}] = {}", d.e_degree(), poly_text(d.e()))?;
    for (k, c) in d.cs().iter().enumerate() {
        let i = c_index(n, k);
        writeln!(text, "c{n}_{i} [deg {}] = {}", d.c_degree(i), poly_text(c))?;
    }
    Ok(Report::new(text, d.to_json()))
}

pub fn moore(p: u32, n: usize) -> Result<Report> {
    let cfg = Config::new(p, n)?;
    let e = moore_class(cfg);
    let word = OpWord::milnor_prefix(n as u32);
    let via_word = apply_word(&word, &ExtClass::top_exterior(cfg));
    let sign: i64 = if (n * (n - 1) / 2).is_multiple_of(2) {
        1
    } else {
        -1
    };
    let expected = ExtClass::from(e.clone()).scale(cfg.reduce(sign));
    let ok = via_word == expected;
    let degree = ExtClass::from(e.clone()).degree().unwrap_or(0);
    let text = format!(
        "e{n} = det(t_j^(p^i)) [deg {degree}] = {}\n{word}(dt1...dt{n}) = {}e{n}: {}\n",
        poly_text(&e),
        if sign == 1 { "" } else { "-" },
        yes_no(ok)
    );
    let json = json!({
        "p": p,
        "n": n,
        "degree": degree,
        "class": poly_json(&e),
        "word": word.to_string(),
        "word_sign": sign,
        "agrees": ok,
    });
    Ok(Report::checked(text, json, ok))
}

pub fn apply(p: u32, n: usize, ops: &str, expr: &str) -> Result<Report> {
    let cfg = Config::new(p, n)?;
    let word: OpWord = ops.parse()?;
    let x = parse_class(expr, cfg)?;
    let y = apply_word(&word, &x);
    Ok(Report::new(
        format!("{}\n", render_class(&y)),
        class_to_json(&y),
    ))
}

pub fn invariance(p: u32, n: usize, group: &str, expr: &str) -> Result<Report> {
    let cfg = Config::new(p, n)?;
    let kind: GroupKind = group.parse()?;
    let x = parse_class(expr, cfg)?;
    let gens = group_generators(cfg, kind);
    let inv = is_invariant(&x, &gens);
    let text = format!("{kind}-invariant: {}\n", yes_no(inv));
    let json = json!({"p": p, "n": n, "group": kind.to_string(), "invariant": inv});
    Ok(Report::new(text, json))
}

pub fn membership(p: u32, n: usize, ring: &str, expr: &str) -> Result<Report> {
    let cfg = Config::new(p, n)?;
    let ring: DicksonRing = ring.parse()?;
    let x = parse_class(expr, cfg)?;
    if !x.is_polynomial() {
        bail!(modinv::Error::Invalid(
            "membership takes a polynomial class".into()
        ));
    }
    let f = x.polynomial_part();
    let d = dickson_classes(cfg)?;
    let result = d.membership(&f, ring)?;
    let kind = match ring {
        DicksonRing::D => GroupKind::GL,
        DicksonRing::SD => GroupKind::SL,
    };
    let inv = is_invariant(&x, &group_generators(cfg, kind));
    let agrees = result.is_member() == inv;
    let (text, json) = match &result {
        Membership::Member(dec) => (
            format!("member of {ring}: {dec}\n"),
            json!({"ring": ring.to_string(), "member": true, "decomposition": dec, "invariant": inv}),
        ),
        Membership::NotMember => (
            format!("not a member of {ring}\n"),
            json!({"ring": ring.to_string(), "member": false, "invariant": inv}),
        ),
    };
    let mut text = text;
    if !agrees {
        writeln!(text, "disagrees with {kind}-invariance")?;
    }
    Ok(Report::checked(text, json, agrees))
}

fn parse_vector(cfg: &Config, s: &str) -> Result<WeightVector> {
    let coords = s
        .split(',')
        .map(|c| c.trim().parse::<i64>())
        .collect::<std::result::Result<Vec<_>, _>>()
        .map_err(|e| modinv::Error::Invalid(format!("bad vector {s:?}: {e}")))?;
    Ok(WeightVector::new(cfg, &coords)?)
}

pub fn orbit(p: u32, n: usize, group: &str, start: &str) -> Result<Report> {
    let cfg = Config::new(p, n)?;
    let kind: GroupKind = group.parse()?;
    let v = parse_vector(&cfg, start)?;
    let size = orbit_size(cfg, &group_generators(cfg, kind), &v)?;
    let nonzero = (p as usize).pow(n as u32) - 1;
    let transitive = size == nonzero;
    // transitivity on V_n - 0 holds for n >= 2, and for GL_1
    let expected = n >= 2 || kind == GroupKind::GL;
    let ok = transitive == expected;
    let text = format!(
        "orbit of {v} under {kind}: {size} of {nonzero} nonzero vectors\ntransitive: {}\n",
        yes_no(transitive)
    );
    let json = json!({"p": p, "n": n, "group": kind.to_string(), "start": v.to_string(), "size": size, "transitive": transitive});
    Ok(Report::checked(text, json, ok))
}

pub fn hilbert(p: u32, n: usize, group: &str, max_degree: u64, basis: bool) -> Result<Report> {
    let cfg = Config::new(p, n)?;
    let kind: GroupKind = group.parse()?;
    let ring = match kind {
        GroupKind::SL => InvariantRing::SM,
        GroupKind::GL => InvariantRing::M,
    };
    let gens = group_generators(cfg, kind);
    let mut text = format!("degree  computed  predicted({ring})\n");
    let mut rows = Vec::new();
    let mut ok = true;
    for d in 0..=max_degree {
        let space = invariant_dimension(cfg, d, &gens)?;
        let predicted = predicted_dimension(&cfg, d, ring);
        let agrees = space.dim() as u64 == predicted;
        ok &= agrees;
        writeln!(
            text,
            "{d:>6}  {:>8}  {predicted:>9}{}",
            space.dim(),
            if agrees { "" } else { "  MISMATCH" }
        )?;
        if basis {
            for b in &space.basis {
                writeln!(text, "        {}", render_class(b))?;
            }
        }
        let mut row = json!({"degree": d, "computed": space.dim(), "predicted": predicted});
        if basis {
            row["basis"] = Value::Array(space.basis.iter().map(class_to_json).collect());
        }
        rows.push(row);
    }
    let json =
        json!({"p": p, "n": n, "group": kind.to_string(), "ring": ring.to_string(), "rows": rows});
    Ok(Report::checked(text, json, ok))
}

pub fn theorem_main(p: u32, n: usize, case: Option<&str>, a_max: Option<u64>) -> Result<Report> {
    let cfg = Config::new(p, n)?;
    let case = match case {
        Some(c) => c.parse()?,
        None => ImageCase::for_rank(n).ok_or_else(|| {
            modinv::Error::Invalid(format!("no case for n = {n}; use n = 2 or 3"))
        })?,
    };
    let a_max = a_max.unwrap_or(2 * (p as u64 - 1));
    let x = image_generator(cfg, case)?;
    let rows = obstruction_table(cfg, case, a_max)?;
    let ok = rows.iter().all(|r| r.in_d == (r.a % (p as u64 - 1) == 0));
    let mut text = format!(
        "case {case}, x = {} [deg {}]\n a  in D{n}\n",
        render_class(&x),
        x.degree().unwrap_or(0)
    );
    for r in &rows {
        writeln!(text, "{:>2}  {}", r.a, yes_no(r.in_d))?;
    }
    Ok(Report::checked(text, serde_json::to_value(&rows)?, ok))
}

pub fn chern_reg(p: u32, n: usize) -> Result<Report> {
    let cfg = Config::new(p, n)?;
    let c = total_chern(&regular_representation(cfg)?);
    let d = dickson_classes(cfg)?;
    let ok = c == d.alternating_sum();
    let mut text = format!("c(reg) for {cfg}\n");
    let mut classes = Vec::new();
    for deg in chern_degrees(&c) {
        let part = ExtClass::from(c.clone()).homogeneous_part(deg);
        writeln!(text, "c_{} = {}", deg / 2, render_class(&part))?;
        classes.push(json!({"i": deg / 2, "class": class_to_json(&part)}));
    }
    writeln!(
        text,
        "equals 1 - c{n}_{} + ... + (-1)^{n} c{n}_0: {}",
        n - 1,
        yes_no(ok)
    )?;
    let json = json!({"p": p, "n": n, "classes": classes, "matches_dickson": ok});
    Ok(Report::checked(text, json, ok))
}

/// Degrees carrying a nonzero homogeneous part.
fn chern_degrees(c: &Poly) -> Vec<u64> {
    let mut degs: Vec<u64> = c.terms().map(|(m, _)| 2 * m.degree()).collect();
    degs.sort_unstable();
    degs.dedup();
    degs
}

pub fn chern_rep(p: u32, n: usize, weights: &str) -> Result<Report> {
    let cfg = Config::new(p, n)?;
    let rho = WeightMultiset::parse(weights, cfg)?;
    let c = total_chern(&rho);
    let mut text = format!("dimension {}\n", rho.dimension());
    let mut classes = Vec::new();
    for deg in chern_degrees(&c) {
        let part = ExtClass::from(c.clone()).homogeneous_part(deg);
        writeln!(text, "c_{} = {}", deg / 2, render_class(&part))?;
        classes.push(json!({"i": deg / 2, "class": class_to_json(&part)}));
    }
    let power = power_of_regular(&c, cfg)?;
    match power {
        Some(a) => writeln!(text, "c(rho) = c(reg)^{a}")?,
        None => writeln!(text, "c(rho) is not a power of c(reg)")?,
    }
    let json = json!({"p": p, "n": n, "dimension": rho.dimension(), "classes": classes, "power_of_reg": power});
    Ok(Report::new(text, json))
}

pub fn mu(p: u32, n: usize, weights: &str) -> Result<Report> {
    let cfg = Config::new(p, n)?;
    let rho = WeightMultiset::parse(weights, cfg)?;
    let profile = divisibility_profile(&total_chern(&rho), cfg)?;
    let mut ok = true;
    let mut text = String::new();
    let mut rows = Vec::new();
    for (v, m) in &profile {
        let expected = rho.multiplicity(v);
        ok &= *m == expected;
        if *m > 0 || expected > 0 {
            writeln!(
                text,
                "mu{v} = {m}{}",
                if *m == expected { "" } else { "  MISMATCH" }
            )?;
        }
        rows.push(json!({"v": v.to_string(), "mu": m, "multiplicity": expected}));
    }
    let constant = profile.values().min() == profile.values().max();
    writeln!(text, "constant on nonzero vectors: {}", yes_no(constant))?;
    let json = json!({"p": p, "n": n, "profile": rows, "constant": constant});
    Ok(Report::checked(text, json, ok))
}

pub fn prop_iso(p: u32, n: usize) -> Result<Report> {
    let cfg = Config::new(p, n)?;
    let top = ExtClass::top_exterior(cfg);
    let (d, expected) = match n {
        2 => (2, top),
        3 => (4, milnor_q(0, &top)),
        _ => bail!(modinv::Error::Invalid(format!(
            "prop-iso needs n = 2 or 3, got {n}"
        ))),
    };
    let space = invariant_dimension(cfg, d, &group_generators(cfg, GroupKind::SL))?;
    let ok = space.dim() == 1 && (space.basis[0] == expected || space.basis[0] == -&expected);
    let mut text = format!(
        "SL-invariants of degree {d} for {cfg}: dim {}\n",
        space.dim()
    );
    for b in &space.basis {
        writeln!(text, "  {}", render_class(b))?;
    }
    writeln!(
        text,
        "spanned by {}: {}",
        render_class(&expected),
        yes_no(ok)
    )?;
    let json = json!({
        "p": p,
        "n": n,
        "degree": d,
        "dim": space.dim(),
        "basis": space.basis.iter().map(class_to_json).collect::<Vec<_>>(),
        "expected": class_to_json(&expected),
        "matches": ok,
    });
    Ok(Report::checked(text, json, ok))
}

pub fn e8_adjoint(p: u32, trunc: usize) -> Result<Report> {
    let r = e8_adjoint_check(p, trunc)?;
    let series: Vec<String> = r.series.coeffs().iter().map(|c| c.to_string()).collect();
    let text = format!(
        "series: {}\nc2 = {}\nv_{p}(c2) = {}\ngamma = c2/{p} = {} = {} mod {p}\nlambda2 dim {} (zero weights of the Cartan part omitted), spin dim {}\n",
        series.join(", "),
        r.c2,
        r.valuation,
        r.gamma,
        r.gamma_mod_p,
        r.lambda2_dim,
        r.spin_dim
    );
    Ok(Report::new(text, r.to_json()))
}
