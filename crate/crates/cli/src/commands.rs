use std::collections::BTreeSet;
use std::fmt::Write as _;

use clap::ValueEnum;
use serde_json::{json, Value};

use profinite::closure::{
    canonical_generators, find_group_certificate, g_pointlike, inevitable_loop,
    inevitable_two_vertex, kernel_g, kernel_via_closure, pro_g_closure,
    separable_by_group_language,
};
use profinite::kappa::{eval_term, lookup, member as pv_member, parse_term, Assignment};
use profinite::language::{parse_regex, syntactic_semigroup};
use profinite::metric::{distance_of, separation_rank, Rank};
use profinite::semigroup::{
    enumerate_semigroups_with_threads, green_relations, monogenic_profile, structural_predicates,
};
use profinite::symbolic::{
    complexity_probe, entropy as shift_entropy, is_irreducible, is_primitive as subst_primitive,
    primitivity_exponent, sofic_from_regex, substitution_blocks, Substitution,
};
use profinite::{Alphabet, Element, Error, FiniteSemigroup, GroupWord, Regex, Result};

use crate::Outcome;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum InevitableKind {
    Loop,
    TwoVertex,
}

fn outcome(data: Value, text: String) -> Outcome {
    Outcome {
        data,
        text,
        diagnostics: Vec::new(),
    }
}

fn load_table(path: &str) -> Result<FiniteSemigroup> {
    let text =
        std::fs::read_to_string(path).map_err(|e| Error::NotFound(format!("{path}: {e}")))?;
    FiniteSemigroup::from_json_str(&text).map_err(|e| match e {
        Error::MalformedTable(m) => Error::MalformedTable(format!("{path}: {m}")),
        other => other,
    })
}

fn alphabet_for(regex: &str, given: Option<&str>) -> Result<Alphabet> {
    let alphabet = match given {
        Some(letters) => Alphabet::parse(letters)?,
        None => Alphabet::new(regex.chars().filter(char::is_ascii_alphanumeric))?,
    };
    if alphabet.is_empty() {
        return Err(Error::Domain(
            "the alphabet is empty; pass --alphabet".into(),
        ));
    }
    Ok(alphabet)
}

fn parse_language(regex: &str, given: Option<&str>) -> Result<(Alphabet, Regex)> {
    let alphabet = alphabet_for(regex, given)?;
    let r = parse_regex(regex, &alphabet)?;
    Ok((alphabet, r))
}

fn parse_elements(text: &str, s: &FiniteSemigroup) -> Result<BTreeSet<Element>> {
    text.split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| {
            let e: Element = t
                .trim()
                .parse()
                .map_err(|_| Error::Domain(format!("not an element index: {t:?}")))?;
            if e >= s.order() {
                return Err(Error::Domain(format!("element {e} out of range")));
            }
            Ok(e)
        })
        .collect()
}

fn rows_text(s: &FiniteSemigroup) -> String {
    s.rows()
        .iter()
        .map(|row| {
            row.iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>()
                .join(" ")
        })
        .collect::<Vec<_>>()
        .join("\n")
}

pub fn syntactic(regex: &str, alphabet: Option<&str>) -> Result<Outcome> {
    let (alphabet, r) = parse_language(regex, alphabet)?;
    let syn = syntactic_semigroup(&r, &alphabet);
    let s = &syn.semigroup;
    let predicates = structural_predicates(s);
    let green = green_relations(s);
    let labels: Vec<String> = s.elements().map(|e| s.label(e)).collect();
    let accepting: Vec<Element> = syn.accepting.iter().copied().collect();
    let data = json!({
        "regex": r.to_string(),
        "alphabet": alphabet.letters().iter().collect::<String>(),
        "contains_empty": syn.contains_empty,
        "is_monoid": syn.contains_empty,
        "order": s.order(),
        "semigroup": s.to_json(),
        "letter_image": alphabet.letters().iter().zip(&syn.morphism.letter_image)
            .map(|(c, e)| (c.to_string(), json!(e))).collect::<serde_json::Map<_, _>>(),
        "accepting": accepting,
        "minimal_dfa_states": syn.dfa.num_states(),
        "j_classes": green.j.classes,
        "predicates": predicates,
    });
    let mut text = format!(
        "{} of {} over {{{}}}: {} elements\n",
        if syn.contains_empty {
            "syntactic monoid"
        } else {
            "syntactic semigroup"
        },
        r,
        alphabet.letters().iter().collect::<String>(),
        s.order()
    );
    let _ = writeln!(text, "elements: {}", labels.join(" "));
    let _ = writeln!(text, "{}", rows_text(s));
    let _ = writeln!(
        text,
        "aperiodic: {}  J-trivial: {}  group: {}",
        predicates.is_aperiodic, predicates.is_j_trivial, predicates.is_group
    );
    Ok(outcome(data, text))
}

pub fn member(table: &str, pv: &str) -> Result<Outcome> {
    let s = load_table(table)?;
    let def = lookup(pv)?;
    let m = pv_member(&s, &def);
    let mut diagnostics = Vec::new();
    if let Some(structural) = def.structural_member(&s) {
        if structural != m.member {
            diagnostics.push(format!("structural check disagrees: {structural}"));
        }
    } else {
        diagnostics.push(format!("{pv} has no structural cross-check"));
    }
    let witness = m.failed.as_ref().map(|f| {
        json!({
            "identity": f.identity,
            "assignment": f.assignment.iter().map(|(c, e)| (c.to_string(), json!(e))).collect::<serde_json::Map<_, _>>(),
        })
    });
    let data = json!({ "pseudovariety": def.name, "member": m.member, "witness": witness });
    let text = match &m.failed {
        None => format!("member of {}: yes\n", def.name),
        Some(f) => format!(
            "member of {}: no\nfails {} at {}\n",
            def.name,
            f.identity,
            f.assignment
                .iter()
                .map(|(c, e)| format!("{c}={e}"))
                .collect::<Vec<_>>()
                .join(", ")
        ),
    };
    Ok(Outcome {
        data,
        text,
        diagnostics,
    })
}

pub fn metric(u: &str, v: &str, pv: &str, max_order: usize) -> Result<Outcome> {
    let def = lookup(pv)?;
    let r = separation_rank(u, v, &def, max_order)?;
    let d = distance_of(r.rank);
    let witness = r.witness.as_ref().map(|w| {
        json!({
            "table": w.semigroup.rows(),
            "letter_image": w.letter_image.iter().map(|(c, e)| (c.to_string(), json!(e))).collect::<serde_json::Map<_, _>>(),
            "images": [w.image(u), w.image(v)],
        })
    });
    let data = json!({
        "u": u,
        "v": v,
        "pseudovariety": def.name,
        "max_order": max_order,
        "rank": r.rank,
        "distance": d,
        "witness": witness,
    });
    let rank_text = match r.rank {
        Rank::Exact(n) => format!("{n}"),
        Rank::Infinite => "infinite".into(),
        Rank::ExceedsBound(n) => format!("> {n}"),
    };
    let distance_text = match d {
        profinite::metric::Distance::Exact { value } => format!("{value}"),
        profinite::metric::Distance::Interval { lower, upper } => format!("in [{lower}, {upper}]"),
    };
    let mut text = format!(
        "rank over {}: {rank_text}\ndistance: {distance_text}\n",
        def.name
    );
    if let Some(w) = &r.witness {
        let _ = writeln!(text, "witness:\n{}", rows_text(&w.semigroup));
        let _ = writeln!(
            text,
            "letters: {}",
            w.letter_image
                .iter()
                .map(|(c, e)| format!("{c}->{e}"))
                .collect::<Vec<_>>()
                .join(", ")
        );
    }
    Ok(outcome(data, text))
}

pub fn closure(regex: &str, alphabet: Option<&str>, words: &[String]) -> Result<Outcome> {
    let (alphabet, r) = parse_language(regex, alphabet)?;
    let c = pro_g_closure(&r);
    let mut queries = Vec::new();
    let mut text = format!(
        "closure of {r}: {} states, {} edges\n",
        c.automaton.num_states(),
        c.automaton.num_edges()
    );
    for w in words {
        let g: GroupWord = w.parse()?;
        if let Some(x) = g
            .letters()
            .iter()
            .find(|x| alphabet.index(x.letter).is_none())
        {
            return Err(Error::ForeignLetter(x.letter));
        }
        let inside = c.contains(&g);
        let _ = writeln!(
            text,
            "{g}: {}",
            if inside {
                "in closure"
            } else {
                "not in closure"
            }
        );
        queries.push(json!({ "word": g.to_string(), "member": inside }));
    }
    let positive = c.positive_regex(&alphabet);
    let _ = writeln!(text, "positive words: {positive}");
    let data = json!({
        "regex": r.to_string(),
        "states": c.automaton.num_states(),
        "edges": c.automaton.num_edges(),
        "positive_regex": positive.to_string(),
        "queries": queries,
    });
    Ok(outcome(data, text))
}

pub fn separate(
    word: &str,
    regex: &str,
    alphabet: Option<&str>,
    certificate_order: usize,
) -> Result<Outcome> {
    if word.is_empty() {
        return Err(Error::Domain("the word must be nonempty".into()));
    }
    let alphabet = alphabet_for(&format!("{regex}{word}"), alphabet)?;
    let r = parse_regex(regex, &alphabet)?;
    alphabet.encode(word)?;
    let separable = separable_by_group_language(word, &r);
    let mut diagnostics = Vec::new();
    let certificate = if separable && certificate_order > 0 {
        let c = find_group_certificate(word, &r, &alphabet, certificate_order)?;
        if c.is_none() {
            diagnostics.push(format!(
                "separable (no certificate among groups of order <= {certificate_order})"
            ));
        }
        c
    } else {
        None
    };
    let text = match &certificate {
        Some(c) => format!(
            "separable: {separable}\ncertificate: {} with {}\n",
            c.group,
            c.letter_image
                .iter()
                .map(|(l, e)| format!("{l}->{e}"))
                .collect::<Vec<_>>()
                .join(", ")
        ),
        None => format!("separable: {separable}\n"),
    };
    let data = json!({ "word": word, "regex": r.to_string(), "separable": separable, "certificate": certificate });
    Ok(Outcome {
        data,
        text,
        diagnostics,
    })
}

pub fn kernel(table: &str, adjoin_identity: bool, check: bool) -> Result<Outcome> {
    let mut m = load_table(table)?;
    if adjoin_identity {
        m = m.adjoin_identity();
    }
    let k = kernel_g(&m)?;
    let kernel: Vec<Element> = k.kernel.iter().copied().collect();
    let mut data = json!({
        "order": m.order(),
        "identity": m.identity(),
        "kernel": kernel,
        "trace": k.trace,
    });
    let mut text = format!(
        "kernel: {{{}}}\n",
        kernel
            .iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
            .join(", ")
    );
    let mut diagnostics = Vec::new();
    if check {
        let via = kernel_via_closure(&canonical_generators(&m)?)?;
        let agrees = via == k.kernel;
        data["via_closure"] = json!(via);
        data["agrees"] = json!(agrees);
        let _ = writeln!(text, "closure computation agrees: {agrees}");
        if !agrees {
            diagnostics.push("the two kernel computations disagree".into());
        }
    }
    Ok(Outcome {
        data,
        text,
        diagnostics,
    })
}

pub fn pointlike(table: &str, subset: &str) -> Result<Outcome> {
    let m = load_table(table)?;
    let x = parse_elements(subset, &m)?;
    let phi = canonical_generators(&m)?;
    let p = g_pointlike(&phi, &x)?;
    let text = match &p.witness {
        Some(w) => format!("pointlike: true\nwitness: {w}\n"),
        None => "pointlike: false\n".to_string(),
    };
    let data = json!({ "subset": x, "pointlike": p.pointlike, "witness": p.witness.as_ref().map(ToString::to_string) });
    Ok(outcome(data, text))
}

pub fn inevitable(
    table: &str,
    kind: InevitableKind,
    x: Option<usize>,
    y: Option<usize>,
    others: Option<&str>,
) -> Result<Outcome> {
    let m = load_table(table)?;
    match kind {
        InevitableKind::Loop => {
            let y =
                y.ok_or_else(|| Error::Domain("--y is required for the loop equation".into()))?;
            let answer = inevitable_loop(&m, y)?;
            let data = json!({ "kind": "loop", "y": y, "inevitable": answer });
            Ok(outcome(data, format!("inevitable: {answer}\n")))
        }
        InevitableKind::TwoVertex => {
            let one = m
                .identity()
                .ok_or_else(|| Error::Domain("a monoid is required".into()))?;
            let x = x.unwrap_or(one);
            let others = parse_elements(
                others.ok_or_else(|| {
                    Error::Domain("--others is required for the two-vertex system".into())
                })?,
                &m,
            )?;
            let p = inevitable_two_vertex(&canonical_generators(&m)?, x, &others)?;
            let data = json!({
                "kind": "two-vertex",
                "x": x,
                "others": others,
                "inevitable": p.pointlike,
                "witness": p.witness.as_ref().map(ToString::to_string),
            });
            Ok(outcome(data, format!("inevitable: {}\n", p.pointlike)))
        }
    }
}

fn parse_assignment(text: &str, s: &FiniteSemigroup) -> Result<Assignment> {
    let mut out = Assignment::new();
    for part in text.split(',').filter(|p| !p.trim().is_empty()) {
        let (var, value) = part
            .split_once('=')
            .ok_or_else(|| Error::Domain(format!("expected `var=element`, got {part:?}")))?;
        let mut chars = var.trim().chars();
        let c = match (chars.next(), chars.next()) {
            (Some(c), None) => c,
            _ => return Err(Error::Domain(format!("bad variable {var:?}"))),
        };
        let e: Element = value
            .trim()
            .parse()
            .map_err(|_| Error::Domain(format!("bad element {value:?}")))?;
        if e >= s.order() {
            return Err(Error::Domain(format!("element {e} out of range")));
        }
        out.insert(c, e);
    }
    Ok(out)
}

pub fn omega(
    table: &str,
    element: Option<usize>,
    term: Option<&str>,
    assign: Option<&str>,
) -> Result<Outcome> {
    let s = load_table(table)?;
    if let Some(term) = term {
        let t = parse_term(term)?;
        let assignment = parse_assignment(assign.unwrap_or(""), &s)?;
        let value = eval_term(&t, &s, &assignment)?;
        let data = json!({ "term": t.to_string(), "value": value });
        return Ok(outcome(data, format!("{t} = {value}\n")));
    }
    let elements: Vec<Element> = match element {
        Some(e) if e >= s.order() => {
            return Err(Error::Domain(format!("element {e} out of range")))
        }
        Some(e) => vec![e],
        None => s.elements().collect(),
    };
    let profiles: Vec<_> = elements.iter().map(|&e| monogenic_profile(&s, e)).collect();
    let mut text = String::new();
    for p in &profiles {
        let _ = writeln!(
            text,
            "{}: index {} period {} omega {} omega-1 {}",
            p.element, p.index, p.period, p.omega, p.omega_minus_one
        );
    }
    Ok(outcome(json!({ "profiles": profiles }), text))
}

pub fn enumerate(
    order: usize,
    count_only: bool,
    labelled: bool,
    threads: usize,
) -> Result<Outcome> {
    let all = enumerate_semigroups_with_threads(order, !labelled, threads)?;
    let mut data = json!({ "order": order, "up_to_isomorphism": !labelled, "count": all.len() });
    let mut text = format!("{} semigroups of order {order}\n", all.len());
    if !count_only {
        data["semigroups"] = json!(all.iter().map(FiniteSemigroup::rows).collect::<Vec<_>>());
        for s in &all {
            let _ = writeln!(text, "{:?}", s.rows());
        }
    }
    Ok(outcome(data, text))
}

pub fn entropy(regex: &str, alphabet: Option<&str>) -> Result<Outcome> {
    let (alphabet, r) = parse_language(regex, alphabet)?;
    let x = sofic_from_regex(&r, &alphabet)?;
    let h = shift_entropy(&x);
    let irreducible = is_irreducible(&x);
    let counts: Vec<(usize, f64)> = [10, 20, 40]
        .iter()
        .map(|&n| (n, x.block_count(n)))
        .collect();
    let data = json!({
        "regex": r.to_string(),
        "entropy": h,
        "irreducible": irreducible,
        "block_automaton_states": x.block_dfa.num_states(),
        "block_counts": counts.iter().map(|(n, c)| json!({ "length": n, "count": c })).collect::<Vec<_>>(),
    });
    let text = format!("entropy: {h:.12}\nirreducible: {irreducible}\n");
    Ok(outcome(data, text))
}

pub fn primitive(subst: &str, blocks: Option<usize>) -> Result<Outcome> {
    let s: Substitution = subst.parse()?;
    let primitive = subst_primitive(&s);
    let mut data = json!({
        "substitution": s.to_string(),
        "primitive": primitive,
        "exponent": primitivity_exponent(&s),
        "incidence": s.incidence_matrix(),
    });
    let mut text = format!("{s}\nprimitive: {primitive}\n");
    if let Some(n) = blocks {
        let list: Vec<String> = substitution_blocks(&s, n)?
            .iter()
            .map(|w| s.alphabet().decode(w))
            .collect();
        let _ = writeln!(text, "blocks of length {n}: {}", list.join(" "));
        data["blocks"] = json!(list);
        let probe = complexity_probe(&s, n..=n + 3)?;
        data["complexity_probe"] = json!(probe);
    }
    Ok(outcome(data, text))
}
