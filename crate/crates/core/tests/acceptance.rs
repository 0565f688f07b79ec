//! Acceptance checks. Each criterion prints one `PASS`/`FAIL` line; the
//! process exits nonzero if any fails. `--seed N` shifts every random
//! stream; the default is 0.

use std::collections::{BTreeSet, HashSet};
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use profinite::closure::{
    find_group_certificate, kernel_g, kernel_via_closure, pro_g_closure,
    separable_by_group_language,
};
use profinite::freegroup::{
    stallings_graph, subgroup_contains, GroupAutomaton, GroupWord, Label, SignedLetter,
};
use profinite::kappa::{lookup, member};
use profinite::language::{
    parse_regex, syntactic_semigroup, transition_semigroup, Alphabet, Dfa, Regex,
};
use profinite::metric::{separation_rank, Rank};
use profinite::semigroup::{
    count_associative_tables_naive, enumerate_semigroups, monogenic_profile, structural_predicates,
};
use profinite::symbolic::{entropy, factorial_trim, is_irreducible, sofic_from_regex};

type Check = Result<String, String>;
type Criterion = (&'static str, fn(u64) -> Check);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn kernel_duality(seed: u64) -> Check {
    let mut monoids = Vec::new();
    for n in 1..=3 {
        for s in enumerate_semigroups(n, true).unwrap() {
            monoids.push(s.adjoin_identity());
        }
    }
    let from_tables = monoids.len();
    for s in &monoids {
        let k = kernel_g(s).unwrap().kernel;
        let phi = profinite::closure::canonical_generators(s).unwrap();
        let c = kernel_via_closure(&phi).unwrap();
        ensure(k == c, || format!("{:?}: {k:?} vs {c:?}", s.rows()))?;
    }
    let ab = Alphabet::parse("ab").unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(1));
    let mut sizes = BTreeSet::new();
    for _ in 0..30 {
        let n = rng.gen_range(1..=3);
        let dfa = Dfa {
            alphabet: ab.clone(),
            transitions: (0..n)
                .map(|_| (0..2).map(|_| rng.gen_range(0..n)).collect())
                .collect(),
            initial: 0,
            finals: (0..n).map(|_| rng.gen_bool(0.5)).collect(),
        };
        let (m, phi) = transition_semigroup(&dfa, true);
        sizes.insert(m.order());
        let k = kernel_g(&m).unwrap().kernel;
        let c = kernel_via_closure(&phi).unwrap();
        ensure(k == c, || {
            format!("transition monoid {:?}: {k:?} vs {c:?}", dfa.transitions)
        })?;
    }
    Ok(format!(
        "{from_tables} monoids with identity adjoined, 30 transition monoids of sizes {sizes:?}"
    ))
}

fn membership_vs_structure(_seed: u64) -> Check {
    let mut checked = 0;
    for name in ["G", "A", "J", "Sl", "N", "CR"] {
        let v = lookup(name).unwrap();
        for n in 1..=4 {
            for s in enumerate_semigroups(n, true).unwrap() {
                let equational = member(&s, &v).member;
                let structural = v.structural_member(&s).expect("registered check");
                ensure(equational == structural, || {
                    format!(
                        "{name} on {:?}: equations {equational}, structure {structural}",
                        s.rows()
                    )
                })?;
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} (semigroup, pseudovariety) pairs agree"))
}

fn enumeration_regression(_seed: u64) -> Check {
    let mut counts = Vec::new();
    for n in 1..=3 {
        let pruned = enumerate_semigroups(n, true).unwrap().len();
        let naive = count_associative_tables_naive(n, true);
        ensure(pruned == naive, || {
            format!("order {n}: pruned {pruned}, naive {naive}")
        })?;
        counts.push(pruned);
    }
    ensure(counts == [1, 5, 24], || format!("counts {counts:?}"))?;
    // frozen from the first run of the pruned search
    let four = enumerate_semigroups(4, true).unwrap().len();
    ensure(four == 188, || format!("order 4: {four}, frozen value 188"))?;
    Ok(format!("orders 1..3: {counts:?}, order 4: {four}"))
}

fn random_regex(rng: &mut ChaCha8Rng, budget: usize) -> Regex {
    if budget <= 1 {
        return match rng.gen_range(0..10) {
            0 => Regex::Epsilon,
            1..=5 => Regex::Letter('a'),
            _ => Regex::Letter('b'),
        };
    }
    let choice = if budget < 3 {
        rng.gen_range(0..2)
    } else {
        rng.gen_range(0..6)
    };
    match choice {
        0 => Regex::star(random_regex(rng, budget - 1)),
        1 => Regex::plus(random_regex(rng, budget - 1)),
        2 | 3 => {
            let left = rng.gen_range(1..budget - 1);
            Regex::concat(
                random_regex(rng, left),
                random_regex(rng, budget - 1 - left),
            )
        }
        4 => {
            let left = rng.gen_range(1..budget - 1);
            Regex::union(
                random_regex(rng, left),
                random_regex(rng, budget - 1 - left),
            )
        }
        _ => Regex::Letter(if rng.gen_bool(0.5) { 'a' } else { 'b' }),
    }
}

fn pin_reutenauer(seed: u64) -> Check {
    let ab = Alphabet::parse("ab").unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(4));
    let positive: Vec<String> = (1..=6)
        .flat_map(|n| ab.words_of_length(n))
        .map(|w| ab.decode(&w))
        .collect();
    let group_words = GroupWord::all_up_to(&['a', 'b'], 4);
    let (mut group_languages, mut certificates, mut separable_words) = (0, 0, 0);
    let mut corpus = 0;
    while corpus < 200 {
        let budget = rng.gen_range(1..=8);
        let r = random_regex(&mut rng, budget);
        if r.size() > 8 {
            continue;
        }
        corpus += 1;
        let syn = syntactic_semigroup(&r, &ab);
        let c = pro_g_closure(&r);
        for w in &positive {
            let inside = syn.recognizes(w).unwrap();
            ensure(!inside || c.contains_word(w), || {
                format!("{r}: {w} in L but not in the closure")
            })?;
        }
        let again = pro_g_closure(&c.positive_regex(&ab));
        for g in &group_words {
            ensure(again.contains(g) == c.contains(g), || {
                format!("{r}: closure not idempotent at {g}")
            })?;
        }
        for w in &positive {
            ensure(again.contains_word(w) == c.contains_word(w), || {
                format!("{r}: closure not idempotent at {w}")
            })?;
        }
        if structural_predicates(&syn.semigroup).is_group {
            group_languages += 1;
            for w in &positive {
                ensure(c.contains_word(w) == syn.recognizes(w).unwrap(), || {
                    format!("{r}: group language but closure differs at {w}")
                })?;
            }
        }
        for w in positive.iter().filter(|w| w.len() <= 4) {
            let separable = separable_by_group_language(w, &r);
            separable_words += usize::from(separable);
            if let Some(cert) = find_group_certificate(w, &r, &ab, 6).unwrap() {
                certificates += 1;
                ensure(separable, || {
                    format!("{r}: {w} reported inseparable but {} separates", cert.group)
                })?;
            }
        }
    }
    // the random corpus rarely produces group languages, so add a few
    for text in [
        "((a|b)(a|b))*",
        "(b|ab*a)*",
        "((a|b)(a|b)(a|b))*",
        "(ab*a|b)*ab*",
        "(aa|bb|(ab|ba)(aa|bb)*(ab|ba))*",
    ] {
        let r = parse_regex(text, &ab).unwrap();
        let syn = syntactic_semigroup(&r, &ab);
        ensure(structural_predicates(&syn.semigroup).is_group, || {
            format!("{text} should be a group language")
        })?;
        group_languages += 1;
        let c = pro_g_closure(&r);
        for w in &positive {
            ensure(c.contains_word(w) == syn.recognizes(w).unwrap(), || {
                format!("{r}: group language but closure differs at {w}")
            })?;
        }
    }
    Ok(format!(
        "200 random expressions plus 5 fixed, {group_languages} group languages, {certificates} certificates for {separable_words} separable words"
    ))
}

fn random_word(rng: &mut ChaCha8Rng) -> String {
    let n = rng.gen_range(1..=6);
    (0..n)
        .map(|_| if rng.gen_bool(0.5) { 'a' } else { 'b' })
        .collect()
}

fn metric_axioms(seed: u64) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(5));
    let names = ["S", "A", "G", "J", "Sl"];
    let mut exact_triples = 0;
    for t in 0..1000 {
        let v = lookup(names[t % names.len()]).unwrap();
        let (x, y, z) = (
            random_word(&mut rng),
            random_word(&mut rng),
            random_word(&mut rng),
        );
        let mut ranks = Vec::new();
        for (u, w) in [(&x, &y), (&y, &z), (&x, &z)] {
            let r = separation_rank(u, w, &v, 3).unwrap();
            let back = separation_rank(w, u, &v, 3).unwrap();
            ensure(r.rank == back.rank, || {
                format!("{}: rank({u},{w}) is not symmetric", v.name)
            })?;
            if let Some(wit) = &r.witness {
                ensure(wit.separates(u, w), || {
                    format!("{}: witness for ({u},{w}) does not replay", v.name)
                })?;
                ensure(member(&wit.semigroup, &v).member, || {
                    format!("witness outside {}", v.name)
                })?;
                ensure(r.rank == Rank::Exact(wit.semigroup.order()), || {
                    "witness order differs".into()
                })?;
            }
            ranks.push(r.rank);
        }
        let d = |r: Rank| match r {
            Rank::Exact(n) => Some(2f64.powi(-(n as i32))),
            Rank::Infinite => Some(0.0),
            Rank::ExceedsBound(_) => None,
        };
        if let (Some(xy), Some(yz), Some(xz)) = (d(ranks[0]), d(ranks[1]), d(ranks[2])) {
            exact_triples += 1;
            ensure(xz <= xy.max(yz), || {
                format!("{}: ultrametric fails on ({x},{y},{z})", v.name)
            })?;
        }
    }
    Ok(format!(
        "1000 triples, {exact_triples} with all ranks exact"
    ))
}

fn omega_laws(_seed: u64) -> Check {
    let mut elements = 0;
    for n in 1..=4 {
        for s in enumerate_semigroups(n, true).unwrap() {
            for x in s.elements() {
                let p = monogenic_profile(&s, x);
                // oracle: the only idempotent among the first n powers
                let powers: Vec<usize> = (1..=n).map(|k| s.pow(x, k)).collect();
                let idem: BTreeSet<usize> = powers
                    .iter()
                    .copied()
                    .filter(|&e| s.is_idempotent(e))
                    .collect();
                ensure(idem.len() == 1 && idem.contains(&p.omega), || {
                    format!(
                        "{:?}, {x}: omega {} vs idempotent powers {idem:?}",
                        s.rows(),
                        p.omega
                    )
                })?;
                let w = p.omega;
                let plus = s.mul(w, x);
                ensure(s.mul(w, w) == w, || "(s^w)^2 != s^w".into())?;
                ensure(s.mul(p.omega_minus_one, plus) == w, || {
                    "s^(w-1) s^(w+1) != s^w".into()
                })?;
                ensure(s.mul(p.omega_minus_one, x) == w, || {
                    "s^(w-1) s != s^w".into()
                })?;
                elements += 1;
            }
        }
    }
    Ok(format!("{elements} elements"))
}

fn entropy_checks(seed: u64) -> Check {
    let ab = Alphabet::parse("ab").unwrap();
    let full = sofic_from_regex(&parse_regex("(a|b)*", &ab).unwrap(), &ab).unwrap();
    let h_full = entropy(&full);
    ensure((h_full - 1.0).abs() <= 1e-9, || {
        format!("full shift entropy {h_full}")
    })?;
    let golden = sofic_from_regex(&parse_regex("(a|ba)*(b|~)", &ab).unwrap(), &ab).unwrap();
    let h_golden = entropy(&golden);
    let phi = ((1.0 + 5f64.sqrt()) / 2.0).log2();
    ensure((h_golden - phi).abs() <= 1e-6, || {
        format!("golden mean entropy {h_golden}")
    })?;

    let abc = Alphabet::parse("abc").unwrap();
    let bases = [
        ("(a|b)*", &ab),
        ("(a|ba)*(b|~)", &ab),
        ("(a|bb)*", &ab),
        ("(a|b|c)*", &abc),
        ("(ab|c)*", &abc),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(7));
    let mut cases = 0;
    while cases < 20 {
        let (text, alphabet) = bases[cases % bases.len()];
        let x = sofic_from_regex(&parse_regex(text, alphabet).unwrap(), alphabet).unwrap();
        ensure(is_irreducible(&x), || {
            format!("{text} should be irreducible")
        })?;
        let len = rng.gen_range(2..=5);
        let factor = x
            .blocks(len)
            .choose(&mut rng)
            .cloned()
            .expect("blocks exist");
        let restricted = x
            .presentation
            .product(&Dfa::avoiding(alphabet, &factor), |p, q| p && q);
        let h = entropy(&x);
        let h_sub = factorial_trim(&restricted)
            .map(|y| entropy(&y))
            .unwrap_or(0.0);
        ensure(h_sub < h - 1e-9, || {
            format!(
                "forbidding {} in {text}: {h_sub} is not below {h}",
                alphabet.decode(&factor)
            )
        })?;
        cases += 1;
    }
    Ok(format!(
        "full {h_full:.12}, golden mean {h_golden:.12}, {cases} refinements decrease"
    ))
}

fn syntactic_examples(_seed: u64) -> Check {
    let ab = Alphabet::parse("ab").unwrap();
    let b21 = syntactic_semigroup(&parse_regex("(ab)*", &ab).unwrap(), &ab).semigroup;
    let p = structural_predicates(&b21);
    ensure(b21.order() == 6, || {
        format!("(ab)* has {} elements", b21.order())
    })?;
    ensure(p.is_aperiodic && !p.is_j_trivial, || {
        "(ab)* should be aperiodic, not J-trivial".into()
    })?;
    let plus = syntactic_semigroup(&parse_regex("(a|b)+", &ab).unwrap(), &ab).semigroup;
    ensure(plus.order() == 1, || {
        format!("A+ has {} elements", plus.order())
    })?;
    Ok("(ab)*: 6 elements, aperiodic, not J-trivial; A+: trivial".into())
}

fn random_group_word(rng: &mut ChaCha8Rng, max_len: usize) -> GroupWord {
    let letters = [
        SignedLetter::pos('a'),
        SignedLetter::neg('a'),
        SignedLetter::pos('b'),
        SignedLetter::neg('b'),
    ];
    let n = rng.gen_range(1..=max_len);
    profinite::freegroup::reduce((0..n).map(|_| letters[rng.gen_range(0..4)]))
}

/// A reduced word over `a, a', b, b'` packed two bits per letter (`a`=0,
/// `a'`=1, `b`=2, `b'`=3) with the length in the high bits.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
struct Packed(u64);

impl Packed {
    const ONE: Packed = Packed(0);

    fn len(self) -> usize {
        (self.0 >> 40) as usize
    }

    fn push(self, x: u64) -> Packed {
        let (n, bits) = (self.len(), self.0 & ((1 << 40) - 1));
        if n > 0 && (bits >> (2 * (n - 1))) & 3 == x ^ 1 {
            Packed((bits & !(3 << (2 * (n - 1)))) | ((n as u64 - 1) << 40))
        } else {
            Packed(bits | (x << (2 * n)) | ((n as u64 + 1) << 40))
        }
    }

    fn times(self, letters: &[u64]) -> Packed {
        letters.iter().fold(self, |w, &x| w.push(x))
    }

    fn code(l: SignedLetter) -> u64 {
        (if l.letter == 'a' { 0 } else { 2 }) | u64::from(l.inverse)
    }

    fn of(w: &GroupWord) -> Packed {
        Packed::ONE.times(
            &w.letters()
                .iter()
                .map(|&l| Packed::code(l))
                .collect::<Vec<_>>(),
        )
    }
}

/// Subgroup elements reachable by multiplying generators while every
/// intermediate reduced word has length at most `bound + slack`.
fn subgroup_ball(gens: &[GroupWord], bound: usize, slack: usize) -> HashSet<Packed> {
    let steps: Vec<Vec<u64>> = gens
        .iter()
        .flat_map(|g| [g.clone(), g.inverse()])
        .filter(|g| !g.is_empty())
        .map(|g| g.letters().iter().map(|&l| Packed::code(l)).collect())
        .collect();
    let mut seen = HashSet::from([Packed::ONE]);
    let mut frontier = vec![Packed::ONE];
    while let Some(x) = frontier.pop() {
        for s in &steps {
            let y = x.times(s);
            if y.len() <= bound + slack && seen.insert(y) {
                frontier.push(y);
            }
        }
    }
    seen.retain(|g| g.len() <= bound);
    seen
}

/// Reduced words readable from an initial to a final state, with every
/// intermediate reduced prefix of length at most `bound + slack`.
fn rational_ball(m: &GroupAutomaton, bound: usize, slack: usize) -> HashSet<Packed> {
    let mut seen: HashSet<(usize, Packed)> =
        m.initial().iter().map(|&q| (q, Packed::ONE)).collect();
    let mut frontier: Vec<(usize, Packed)> = seen.iter().copied().collect();
    while let Some((p, x)) = frontier.pop() {
        for &(label, q) in m.out_edges(p) {
            let y = label.map_or(x, |l| x.push(Packed::code(l)));
            if y.len() <= bound + slack && seen.insert((q, y)) {
                frontier.push((q, y));
            }
        }
    }
    seen.into_iter()
        .filter(|&(q, x)| m.finals().contains(&q) && x.len() <= bound)
        .map(|(_, x)| x)
        .collect()
}

fn free_group_oracles(seed: u64) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(9));
    let start = Instant::now();
    let ball8 = GroupWord::all_up_to(&['a', 'b'], 8);
    for _ in 0..50 {
        let k = rng.gen_range(1..=3);
        let gens: Vec<GroupWord> = (0..k).map(|_| random_group_word(&mut rng, 4)).collect();
        let g = stallings_graph(&gens);
        let oracle = subgroup_ball(&gens, 8, 4);
        for w in &ball8 {
            let inside = subgroup_contains(&g, w).unwrap();
            ensure(inside == oracle.contains(&Packed::of(w)), || {
                let gs: Vec<String> = gens.iter().map(ToString::to_string).collect();
                format!("<{}>: {w} graph says {inside}", gs.join(", "))
            })?;
        }
    }
    let subgroup_secs = start.elapsed().as_secs_f64();
    let ball10 = GroupWord::all_up_to(&['a', 'b'], 10);
    let labels: [Label; 5] = [
        Some(SignedLetter::pos('a')),
        Some(SignedLetter::neg('a')),
        Some(SignedLetter::pos('b')),
        Some(SignedLetter::neg('b')),
        None,
    ];
    let mut nonempty = 0;
    for _ in 0..50 {
        let n = rng.gen_range(1..=4);
        let e = rng.gen_range(1..=6);
        let edges: Vec<(usize, Label, usize)> = (0..e)
            .map(|_| {
                (
                    rng.gen_range(0..n),
                    labels[rng.gen_range(0..5)],
                    rng.gen_range(0..n),
                )
            })
            .collect();
        let finals: Vec<usize> = (0..n).filter(|_| rng.gen_bool(0.5)).collect();
        let m = GroupAutomaton::from_parts(n, edges.clone(), [0], finals).saturate();
        let raw = GroupAutomaton::from_parts(n, edges.clone(), [0], m.finals().iter().copied());
        let oracle = rational_ball(&raw, 10, 4);
        nonempty += usize::from(!oracle.is_empty());
        for w in &ball10 {
            let inside = m.contains(w);
            ensure(inside == oracle.contains(&Packed::of(w)), || {
                format!("automaton {edges:?}: {w} automaton says {inside}")
            })?;
        }
    }
    Ok(format!(
        "50 subgroups on {} words ({subgroup_secs:.1}s), 50 rational subsets ({nonempty} nonempty) on {} words",
        ball8.len(),
        ball10.len()
    ))
}

fn seed_from_args() -> u64 {
    // other arguments (such as libtest flags forwarded by cargo) are ignored
    let args: Vec<String> = std::env::args().collect();
    args.iter()
        .position(|a| a == "--seed")
        .and_then(|i| args.get(i + 1))
        .map(|v| v.parse().expect("--seed takes an unsigned integer"))
        .unwrap_or(0)
}

fn main() {
    let seed = seed_from_args();
    let criteria: [Criterion; 9] = [
        ("kernel duality", kernel_duality),
        (
            "equational vs structural membership",
            membership_vs_structure,
        ),
        ("enumeration regression", enumeration_regression),
        ("pro-group closure properties", pin_reutenauer),
        ("metric axioms", metric_axioms),
        ("omega-power laws", omega_laws),
        ("entropy", entropy_checks),
        ("syntactic construction", syntactic_examples),
        ("free-group oracles", free_group_oracles),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = check(seed);
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(detail) => println!("PASS {}. {name} ({secs:.1}s): {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {}. {name} ({secs:.1}s): {detail}", i + 1);
            }
        }
    }
    if seed != 0 {
        println!("seed {seed}");
    }
    if failed > 0 {
        println!("{failed} of {} criteria failed", criteria.len());
        std::process::exit(1);
    }
}
