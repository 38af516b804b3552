//! Acceptance suite. Each criterion prints one `PASS`/`FAIL` line; the target
//! fails if any criterion does.

use std::panic::{self, AssertUnwindSafe};
use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::{Duration, Instant};

use oddsig::cert;
use oddsig::formats::{parse_dimacs, parse_edge_list, parse_graph, write_dimacs, write_edge_list};
use oddsig_core::freesig::{abelianize_mod2, check_certificate, derive_witness_from_mycielski};
use oddsig_core::homposet::{
    chain_poset, d_rho_plus, enumerate_z2_maps, g_plus, hom_complex, induced_hat, is_dismantlable,
    q_poset, rho_plus, strict_order_indicator, v_poset, verify_odd_degree, z2_crown, z2_map_search,
    Comparabilities, MapSearch, DEFAULT_ELEMENT_CAP,
};
use oddsig_core::mycielski::{class_member, mycielskian, Homomorphism};
use oddsig_core::oracle::{chromatic_number, exhaustive_detect, graphs_up_to_isomorphism};
use oddsig_core::sig2::{
    build_quotient, detect, detect_with, enumerate_relators, sigma2_raw, verify_certificate,
    DetectOptions, Sigma2Certificate,
};
use oddsig_core::{freesig, Gf2Vector, Graph};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, limit: Duration, what: &str) -> Result<(), String> {
    let took = start.elapsed();
    ensure(took < limit, || {
        format!("{what} took {took:?}, limit {limit:?}")
    })
}

fn gnp(rng: &mut StdRng, n: usize, p: f64) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::simple(n, edges).expect("simple graph")
}

fn groetzsch() -> Graph {
    class_member(4, &[2, 2]).expect("Grötzsch graph")
}

fn certificate(g: &Graph, decompose: bool) -> Sigma2Certificate {
    detect_with(g, DetectOptions { decompose })
        .expect("loopless graph")
        .certificate()
        .cloned()
        .expect("detector finds a certificate")
}

fn oracle_equivalence() -> Outcome {
    let start = Instant::now();
    let mut checked = 0;
    for n in 1..=6 {
        for g in graphs_up_to_isomorphism(n) {
            if !g.is_connected() || g.is_bipartite() {
                continue;
            }
            let ours = detect(&g).map_err(|e| e.to_string())?.is_yes();
            let truth = exhaustive_detect(&g).map_err(|e| e.to_string())?.is_yes();
            ensure(ours == truth, || format!("disagreement on {:?}", g.edges()))?;
            checked += 1;
        }
    }
    within(start, Duration::from_secs(300), "enumeration")?;
    Ok(format!(
        "{checked} connected non-bipartite graphs on <= 6 vertices agree"
    ))
}

fn certificate_soundness() -> Outcome {
    let mut rng = StdRng::seed_from_u64(2);
    let mut graphs = vec![Graph::complete(4), Graph::complete(5), groetzsch()];
    for q in 1..=3 {
        for r in 1..=3 {
            graphs.push(class_member(4, &[q, r]).map_err(|e| e.to_string())?);
        }
    }
    for _ in 0..300 {
        let n = rng.gen_range(4..=14);
        let p = rng.gen_range(0.2..0.8);
        graphs.push(gnp(&mut rng, n, p));
    }
    let mut emitted = 0;
    for g in &graphs {
        for decompose in [false, true] {
            if let Some(c) = detect_with(g, DetectOptions { decompose })
                .map_err(|e| e.to_string())?
                .certificate()
            {
                ensure(verify_certificate(g, c), || {
                    format!("bad certificate on {:?}", g.edges())
                })?;
                ensure(c.walk.is_odd() && g.validate_closed_walk(&c.walk), || {
                    "walk".into()
                })?;
                emitted += 1;
            }
        }
    }
    ensure(emitted > 100, || {
        format!("only {emitted} certificates emitted")
    })?;
    Ok(format!("{emitted} certificates verified"))
}

fn chromatic_consistency() -> Outcome {
    let start = Instant::now();
    let mut rng = StdRng::seed_from_u64(3);
    let mut corpus = vec![Graph::complete(4), groetzsch()];
    let mut random_yes = 0;
    let mut tries = 0;
    while random_yes < 40 && tries < 5000 {
        tries += 1;
        let n = rng.gen_range(5..=11);
        let p = rng.gen_range(0.3..0.7);
        let g = gnp(&mut rng, n, p);
        if detect(&g).map_err(|e| e.to_string())?.is_yes() {
            corpus.push(g);
            random_yes += 1;
        }
    }
    for g in &corpus {
        ensure(detect(g).map_err(|e| e.to_string())?.is_yes(), || {
            "corpus member is NO".into()
        })?;
        let chi = chromatic_number(g, 11).ok_or("chromatic number not found")?;
        ensure(chi >= 4, || {
            format!("chromatic number {chi} on {:?}", g.edges())
        })?;
    }
    within(start, Duration::from_secs(120), "chromatic checks")?;
    Ok(format!(
        "{} YES graphs, all with chromatic number >= 4",
        corpus.len()
    ))
}

fn fixture_verdicts() -> Outcome {
    let start = Instant::now();
    let yes = |g: &Graph| detect(g).map(|d| d.is_yes()).map_err(|e| e.to_string());
    for n in (3..=11).step_by(2) {
        ensure(!yes(&Graph::cycle(n))?, || format!("C_{n} is YES"))?;
    }
    for g in [
        Graph::cycle(6),
        Graph::complete_bipartite(3, 4),
        Graph::empty(3),
    ] {
        ensure(!yes(&g)?, || "bipartite graph is YES".into())?;
    }
    ensure(yes(&Graph::complete(4))?, || "K_4 is NO".into())?;
    let m2c5 = mycielskian(&Graph::cycle(5), 2)
        .map_err(|e| e.to_string())?
        .graph;
    ensure(yes(&m2c5)?, || "M_2(C_5) is NO".into())?;
    for q in 1..=3 {
        for r in 1..=3 {
            let g = class_member(4, &[r, q]).map_err(|e| e.to_string())?;
            ensure(yes(&g)?, || format!("M_{q}(M_{r}(K_2)) is NO"))?;
        }
    }
    within(start, Duration::from_secs(60), "fixtures")?;
    Ok("odd cycles and bipartite NO; K_4, M_2(C_5), 9 cones YES".into())
}

fn polynomial_time() -> Outcome {
    let mut rng = StdRng::seed_from_u64(5);
    let mut worst_small = Duration::ZERO;
    for _ in 0..20 {
        let g = gnp(&mut rng, 60, 0.3);
        let t = Instant::now();
        let d = detect(&g).map_err(|e| e.to_string())?;
        let took = t.elapsed();
        if let Some(c) = d.certificate() {
            ensure(verify_certificate(&g, c), || "certificate".into())?;
        }
        ensure(took < Duration::from_secs(5), || {
            format!("G(60,0.3) took {took:?}")
        })?;
        worst_small = worst_small.max(took);
    }
    let g = gnp(&mut rng, 120, 0.2);
    let t = Instant::now();
    detect(&g).map_err(|e| e.to_string())?;
    let big = t.elapsed();
    ensure(big < Duration::from_secs(60), || {
        format!("G(120,0.2) took {big:?}")
    })?;
    Ok(format!(
        "worst G(60,0.3) {worst_small:?}; G(120,0.2) {big:?}"
    ))
}

fn odd_degree() -> Outcome {
    let q1 = q_poset(1);
    let mut maps = 0;
    for n in 1..=8 {
        let crown = z2_crown(n);
        let MapSearch::Found(f) = z2_map_search(&crown, &q1, 1_000_000) else {
            return Err(format!("no map from crown({n}) found"));
        };
        ensure(verify_odd_degree(&crown, &f) == Ok(true), || {
            format!("crown({n}) search map")
        })?;
        let all = enumerate_z2_maps(&crown, &q1, 400, 10_000_000);
        for f in &all.maps {
            ensure(verify_odd_degree(&crown, f) == Ok(true), || {
                format!("crown({n}) map {f:?}")
            })?;
        }
        maps += all.maps.len() + 1;
    }
    ensure(maps >= 1000, || format!("only {maps} maps"))?;
    Ok(format!("{maps} maps from crowns n <= 8, all of odd degree"))
}

fn dismantlability() -> Outcome {
    let start = Instant::now();
    let mut quads = 0;
    for g in [Graph::complete(4), groetzsch()] {
        let n = g.vertex_count();
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    for d in 0..n {
                        let quad = [a, b, c, d];
                        if !freesig::is_valid_quad(&g, quad) {
                            continue;
                        }
                        let rho = rho_plus(&g, quad).map_err(|e| e.to_string())?;
                        let drho = d_rho_plus(&g, quad).map_err(|e| e.to_string())?;
                        ensure(!is_dismantlable(&rho.poset), || format!("rho+ {quad:?}"))?;
                        ensure(is_dismantlable(&drho.poset), || format!("D(rho+) {quad:?}"))?;
                        let (s, _) =
                            chain_poset(&drho.poset, 100_000).map_err(|e| e.to_string())?;
                        ensure(is_dismantlable(&s), || format!("S(D(rho+)) {quad:?}"))?;
                        quads += 1;
                    }
                }
            }
        }
    }
    ensure(quads > 0, || "no quads".into())?;
    within(start, Duration::from_secs(60), "dismantling")?;
    Ok(format!("{quads} quads of K_4 and Grötzsch"))
}

fn map_nonexistence() -> Outcome {
    let start = Instant::now();
    let q1 = q_poset(1);
    let k4 = hom_complex(&Graph::complete(4), DEFAULT_ELEMENT_CAP).map_err(|e| e.to_string())?;
    let verdict = z2_map_search(k4.z2(), &q1, u64::MAX);
    ensure(matches!(verdict, MapSearch::NoneFound), || {
        format!("K_4: {verdict:?}")
    })?;
    within(start, Duration::from_secs(60), "K_4 search")?;
    let c5 = hom_complex(&Graph::cycle(5), DEFAULT_ELEMENT_CAP).map_err(|e| e.to_string())?;
    let verdict = z2_map_search(c5.z2(), &q1, 1_000_000);
    ensure(matches!(verdict, MapSearch::Found(_)), || {
        format!("C_5: {verdict:?}")
    })?;
    Ok(format!(
        "K_4 none-found (exhaustive) in {:?}; C_5 found",
        start.elapsed()
    ))
}

fn signature_sum_identity() -> Outcome {
    let mut sizes = Vec::new();
    for g in [Graph::complete(4), groetzsch()] {
        let c = certificate(&g, true);
        let relators = c.relators.clone().ok_or("no decomposition")?;
        let target = hom_complex(&g, DEFAULT_ELEMENT_CAP).map_err(|e| e.to_string())?;
        let source = hom_complex(&Graph::cycle(c.walk.len()), DEFAULT_ELEMENT_CAP)
            .map_err(|e| e.to_string())?;
        let f = g_plus(&c.walk, &source, &target).map_err(|e| e.to_string())?;
        let hat = induced_hat(source.poset(), target.poset(), &f).map_err(|e| e.to_string())?;
        let lhs = hat.apply(&strict_order_indicator(source.poset()));

        let comps = Comparabilities::of(target.poset());
        let mut rhs = Gf2Vector::zeros(comps.len());
        for r in &relators {
            let rho = rho_plus(&g, r.quad()).map_err(|e| e.to_string())?;
            rhs.xor_assign(
                &target
                    .embed_soi(&comps, &rho.elements)
                    .ok_or("rho+ outside")?,
            );
        }
        ensure(lhs == rhs, || {
            format!("identity fails on {} vertices", g.vertex_count())
        })?;

        // The same vector through the arcs of odd multiplicity.
        let odd = sigma2_raw(&g, &c.walk).map_err(|e| e.to_string())?;
        let mut via_arcs = Gf2Vector::zeros(comps.len());
        for i in odd.ones() {
            let a = g.arc(i);
            let v = v_poset(&g, a.tail, a.head).map_err(|e| e.to_string())?;
            via_arcs.xor_assign(&target.embed_soi(&comps, &v.elements).ok_or("V outside")?);
        }
        ensure(lhs == via_arcs, || "arc-wise form disagrees".into())?;
        sizes.push(format!("{} relators", relators.len()));
    }
    Ok(format!("K_4 ({}) and Grötzsch ({})", sizes[0], sizes[1]))
}

fn witness_pipeline() -> Outcome {
    for (n, q) in [(3, 1), (5, 2)] {
        let cone = mycielskian(&Graph::cycle(n), q).map_err(|e| e.to_string())?;
        let hom = Homomorphism::identity(&cone.graph);
        let c = derive_witness_from_mycielski(&cone, &hom).map_err(|e| format!("{e:?}"))?;
        ensure(check_certificate(&cone.graph, &c), || {
            format!("M_{q}(C_{n}) rejected")
        })?;
        let span = build_quotient(&cone.graph);
        let ab = abelianize_mod2(&cone.graph, &c.start);
        ensure(span.basis().contains(&ab) == Ok(true), || {
            "start word outside span".into()
        })?;
        ensure(!enumerate_relators(&cone.graph).is_empty(), || {
            "no relators".into()
        })?;
    }
    Ok("M_1(C_3) and M_2(C_5) witnesses accepted".into())
}

fn fixtures_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures")
}

fn run_cli(args: &[&str]) -> (i32, Vec<u8>, Vec<u8>) {
    let out = Command::new(env!("CARGO_BIN_EXE_oddsig"))
        .args(args)
        .output()
        .expect("spawn oddsig");
    (out.status.code().unwrap_or(-1), out.stdout, out.stderr)
}

fn round_trip_and_determinism() -> Outcome {
    let dir = fixtures_dir();
    let mut fixtures = 0;
    for entry in std::fs::read_dir(&dir).map_err(|e| e.to_string())? {
        let path = entry.map_err(|e| e.to_string())?.path();
        let text = std::fs::read_to_string(&path).map_err(|e| e.to_string())?;
        let Ok(g) = parse_graph(&text) else {
            continue;
        };
        let dimacs = write_dimacs(&g, &[]);
        ensure(parse_dimacs(&dimacs).as_ref() == Ok(&g), || {
            format!("{path:?} dimacs")
        })?;
        ensure(
            write_dimacs(&parse_dimacs(&dimacs).unwrap(), &[]) == dimacs,
            || "dimacs bytes".into(),
        )?;
        ensure(
            parse_edge_list(&write_edge_list(&g)).as_ref() == Ok(&g),
            || format!("{path:?} edges"),
        )?;
        if let Some(c) = detect(&g).map_err(|e| e.to_string())?.certificate() {
            let json = cert::to_json(&cert::sigma2_json(&g, c));
            let back = cert::from_json(&json).map_err(|e| e.to_string())?;
            ensure(cert::to_json(&back) == json, || "certificate bytes".into())?;
        }
        fixtures += 1;
    }
    ensure(fixtures >= 3, || {
        format!("only {fixtures} parseable fixtures")
    })?;

    let tmp = tempfile::tempdir().map_err(|e| e.to_string())?;
    let f = |name: &str| dir.join(name).to_string_lossy().into_owned();
    let t = |name: &str| tmp.path().join(name).to_string_lossy().into_owned();
    let (k4, c5, gr) = (f("k4.col"), f("c5.col"), f("groetzsch.col"));
    let commands: Vec<(Vec<String>, Option<String>)> = vec![
        (
            vec![
                "detect".into(),
                gr.clone(),
                "--certificate".into(),
                t("d.json"),
                "--decompose".into(),
            ],
            Some(t("d.json")),
        ),
        (
            vec![
                "detect".into(),
                gr.clone(),
                "--jobs".into(),
                "4".into(),
                "--oracle".into(),
            ],
            None,
        ),
        (
            vec![
                "detect".into(),
                k4.clone(),
                "--format".into(),
                "text".into(),
                "--certificate".into(),
                t("d.txt"),
            ],
            Some(t("d.txt")),
        ),
        (vec!["detect".into(), c5.clone()], None),
        (vec!["verify".into(), gr.clone(), t("d.json")], None),
        (
            vec![
                "generate".into(),
                "mycielski".into(),
                "4".into(),
                "2".into(),
                "3".into(),
            ],
            None,
        ),
        (
            vec![
                "generate".into(),
                "cycle".into(),
                "7".into(),
                "--output".into(),
                t("c7.col"),
            ],
            Some(t("c7.col")),
        ),
        (
            vec![
                "witness".into(),
                gr.clone(),
                "--certificate".into(),
                t("w.json"),
            ],
            Some(t("w.json")),
        ),
        (
            vec![
                "homposet".into(),
                k4.clone(),
                "build".into(),
                "--dot".into(),
                t("k4.dot"),
            ],
            Some(t("k4.dot")),
        ),
        (vec!["homposet".into(), k4.clone(), "z2map".into()], None),
        (vec!["homposet".into(), c5.clone(), "z2map".into()], None),
        (
            vec!["homposet".into(), c5.clone(), "dismantle".into()],
            None,
        ),
        (
            vec![
                "homposet".into(),
                c5.clone(),
                "subdivide".into(),
                "2".into(),
            ],
            None,
        ),
        (
            vec![
                "homposet".into(),
                k4.clone(),
                "subdivide".into(),
                "3".into(),
            ],
            None,
        ),
    ];
    for (args, file) in &commands {
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        let first = run_cli(&args);
        let first_file = file.as_ref().map(|p| std::fs::read(p).unwrap_or_default());
        let second = run_cli(&args);
        let second_file = file.as_ref().map(|p| std::fs::read(p).unwrap_or_default());
        ensure(first == second, || {
            format!("{} differs between runs", args.join(" "))
        })?;
        ensure(first_file == second_file, || {
            format!("{} output file differs", args.join(" "))
        })?;
        ensure(first.0 != 2 || args[0] == "homposet", || {
            format!("{} errored", args.join(" "))
        })?;
    }
    Ok(format!(
        "{fixtures} fixtures round-trip; {} commands byte-identical twice",
        commands.len()
    ))
}

fn main() {
    let criteria: [Criterion; 11] = [
        ("oracle equivalence", oracle_equivalence),
        ("certificate soundness", certificate_soundness),
        ("chromatic consistency", chromatic_consistency),
        ("fixture verdicts", fixture_verdicts),
        ("polynomial-time behaviour", polynomial_time),
        ("odd-degree maps", odd_degree),
        ("dismantlability", dismantlability),
        ("Z2-map nonexistence", map_nonexistence),
        ("signature sum identity", signature_sum_identity),
        ("rewriting witnesses", witness_pipeline),
        ("round-trip and determinism", round_trip_and_determinism),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = panic::catch_unwind(AssertUnwindSafe(check))
            .unwrap_or_else(|_| Err("panicked".to_string()));
        let took = start.elapsed();
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail} [{took:.2?}]", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {why} [{took:.2?}]", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} of {} criteria pass",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
