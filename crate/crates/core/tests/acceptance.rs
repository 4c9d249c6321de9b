//! Acceptance suite: one PASS/FAIL line per criterion, each with a wall-clock
//! limit. Every comparison is exact equality.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use macdyson::identities;
use macdyson::macroutes::{
    jack_hyperdet, jack_via_lowering, mac_filtration, mac_rect_comb, mac_rect_lowering, mac_vertex, rect_norm_formula,
    RectSource,
};
use macdyson::partitions::{exact_complement, partitions, partitions_bounded, rect_filtration, Partition, Rect};
use macdyson::qdyson;
use macdyson::symfunc::{macdonald_gs, norm_closed, scalar, schur_jt};
use macdyson::verify::beta_tuples;

type Check = std::result::Result<usize, String>;

fn ensure(ok: bool, what: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(what())
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn ct_product() -> Check {
    let mut tuples: Vec<Vec<u32>> = beta_tuples(4, 2);
    tuples.extend(beta_tuples(3, 3).into_iter().filter(|b| b.contains(&3)));
    for b in &tuples {
        let want = qdyson::ct_product(b);
        ensure(qdyson::ct_brute(b) == want, || format!("brute ct {b:?}"))?;
        ensure(qdyson::ct_f1(b) == want, || format!("ct of F[s;1] {b:?}"))?;
        ensure(qdyson::ct_via_splitting(b) == want, || format!("splitting ct {b:?}"))?;
        ensure(qdyson::ct_telescoped(b) == want, || format!("telescoped ct {b:?}"))?;
    }
    Ok(tuples.len())
}

fn splitting() -> Check {
    let tuples = beta_tuples(3, 3);
    for b in &tuples {
        ensure(identities::splitting_cleared(b), || format!("cleared splitting {b:?}"))?;
    }
    Ok(tuples.len())
}

fn kadell() -> Check {
    let mut n_checks = 0;
    for b in beta_tuples(3, 2) {
        let r = qdyson::vanishing_scan(&b, 1, 3, None).map_err(err)?;
        ensure(r.ok(), || format!("vanishing {b:?}: {:?}", r.violations.first()))?;
        n_checks += r.checked_monomials;
        for a in 1..=b.len() {
            for n in 1..=3 {
                let f = qdyson::kadell_coeff(&b, a, n).map_err(err)?;
                ensure(f == qdyson::kadell_brute(&b, a, n), || format!("coefficient {b:?} a={a} n={n}"))?;
                n_checks += 1;
            }
        }
    }
    Ok(n_checks)
}

fn vanishing_and_cla() -> Check {
    let mut n_checks = 0;
    for b in beta_tuples(3, 2) {
        for t in 1..=2 {
            let r = qdyson::vanishing_scan(&b, t, 4, None).map_err(err)?;
            ensure(r.ok(), || format!("scan {b:?} t={t}: {:?}", r.violations.first()))?;
            n_checks += r.checked_monomials;
        }
    }
    for n in 1..=4 {
        for lam in partitions(n) {
            for beta in 1..=2 {
                ensure(qdyson::cla(&lam, beta) == qdyson::cla_brute(&lam, beta), || format!("cla {lam} beta={beta}"))?;
                n_checks += 1;
            }
        }
    }
    Ok(n_checks)
}

fn route_agreement() -> Check {
    let mut n = 0;
    for beta in 1..=2 {
        for k in 1..=6u32 {
            for s in 1..=6 / k {
                let gs = macdonald_gs(&Partition::rect(k, s), beta).map_err(err)?;
                ensure(mac_rect_lowering(k, s, 0, beta).map_err(err)?.value == gs, || format!("lowering ({k}^{s}) beta={beta}"))?;
                ensure(mac_rect_comb(k, s, beta).map_err(err)?.value == gs, || format!("comb ({k}^{s}) beta={beta}"))?;
                ensure(mac_vertex(k, s, 0, beta).map_err(err)?.value == gs, || format!("vertex ({k}^{s}) beta={beta}"))?;
                n += 1;
            }
        }
        for (k, s, t) in [(1, 1, 1), (1, 2, 1), (2, 1, 2)] {
            let rho = Partition::almost_rect(k, s, t);
            let gs = macdonald_gs(&rho, beta).map_err(err)?;
            ensure(mac_rect_lowering(k, s, t, beta).map_err(err)?.value == gs, || format!("lowering {rho} beta={beta}"))?;
            ensure(mac_vertex(k, s, t, beta).map_err(err)?.value == gs, || format!("vertex {rho} beta={beta}"))?;
            n += 1;
        }
    }
    Ok(n)
}

fn norms() -> Check {
    let mut n = 0;
    for beta in 1..=2 {
        for w in 1..=5 {
            for lam in partitions(w) {
                let q = macdonald_gs(&lam, beta).map_err(err)?;
                let closed = norm_closed(&lam, beta);
                ensure(scalar(&q, &q, beta) == closed, || format!("norm {lam} beta={beta}"))?;
                if let Some((k, s, t)) = lam.as_almost_rect() {
                    ensure(rect_norm_formula(k, s, t, beta) == closed, || format!("almost-rectangle norm {lam} beta={beta}"))?;
                }
                n += 1;
            }
        }
    }
    Ok(n)
}

fn schur() -> Check {
    let mut n = 0;
    for w in 1..=5 {
        for lam in partitions(w) {
            ensure(macdonald_gs(&lam, 1).map_err(err)? == schur_jt(&lam), || format!("schur {lam}"))?;
            n += 1;
        }
    }
    Ok(n)
}

fn hyperdet() -> Check {
    let cases = [
        (1, 2, 0, 1),
        (2, 2, 0, 1),
        (1, 1, 1, 1),
        (2, 3, 0, 1),
        (1, 2, 1, 1),
        (1, 2, 0, 2),
        (2, 2, 0, 2),
    ];
    for (k, s, t, beta) in cases {
        let h = jack_hyperdet(k, s, t, beta).map_err(err)?;
        ensure(h.value == jack_via_lowering(k, s, t, beta).map_err(err)?, || format!("hyperdet {} beta={beta}", h.shape))?;
    }
    Ok(cases.len())
}

fn filtration() -> Check {
    let mut n = 0;
    for lam in ["2,1", "3,1", "2,2,1", "3,2", "3,3,1"] {
        let lam: Partition = lam.parse().map_err(err)?;
        for beta in 1..=2 {
            let r = mac_filtration(&lam, beta, RectSource::Lowering).map_err(err)?;
            ensure(!r.scalars["c_lambda"].is_zero(), || format!("zero c_lambda {lam} beta={beta}"))?;
            ensure(r.value == macdonald_gs(&lam, beta).map_err(err)?, || format!("filtration {lam} beta={beta}"))?;
            n += 1;
        }
    }
    Ok(n)
}

fn pochhammer_identities() -> Check {
    let mut n = 0;
    for beta in 0..=4 {
        for m in 0..=6 {
            ensure(identities::inv_poch_agree(m, beta), || format!("coefficient m={m} beta={beta}"))?;
            n += 1;
        }
    }
    for beta in 1..=6 {
        ensure(identities::zw_identity(beta), || format!("partial fractions beta={beta}"))?;
    }
    for m in 0..=6 {
        ensure(identities::an_identity(m), || format!("summation m={m}"))?;
    }
    for b in 0..=4 {
        for k in -3..=3 {
            for l in -3..=3 {
                ensure(identities::interchange(b, k, l), || format!("interchange b={b} k={k} l={l}"))?;
            }
        }
    }
    Ok(n)
}

fn worked_examples() -> Check {
    let lam: Partition = "6,6,3,2,2".parse().map_err(err)?;
    let want = vec![Rect { k: 6, s: 5 }, Rect { k: 4, s: 3 }, Rect { k: 1, s: 1 }];
    ensure(rect_filtration(&lam).map_err(err)? == want, || "filtration of 6,6,3,2,2".into())?;
    let lam: Partition = "8,8,2,2,2".parse().map_err(err)?;
    ensure(exact_complement(&lam) == "6,6,6".parse().map_err(err)?, || "complement of 8,8,2,2,2".into())?;
    ensure(partitions_bounded(0, None, None).len() == 1, || "empty partition".into())?;
    Ok(2)
}

fn main() -> ExitCode {
    let criteria: Vec<(u32, &str, u64, fn() -> Check)> = vec![
        (1, "q-Dyson constant term equals the product formula", 60, ct_product),
        (2, "splitting formula with w_1 denominators cleared", 30, splitting),
        (3, "Kadell vanishing and coefficient formula", 60, kadell),
        (4, "dominance vanishing scans and diagonal coefficient", 120, vanishing_and_cla),
        (5, "route agreement for rectangles and almost-rectangles", 120, route_agreement),
        (6, "norm formula", 60, norms),
        (7, "Schur degeneration at beta = 1", 30, schur),
        (8, "Jack hyperdeterminant equals the q -> 1 limit", 120, hyperdet),
        (9, "filtration construction equals Gram-Schmidt", 120, filtration),
        (10, "reciprocal Pochhammer coefficients and auxiliary identities", 10, pochhammer_identities),
        (11, "worked filtration and complement examples", 1, worked_examples),
    ];
    let filter: Option<u32> = std::env::args().skip(1).find_map(|a| a.parse().ok());
    let mut failed = 0;
    for (id, name, limit, f) in criteria {
        if filter.is_some_and(|x| x != id) {
            continue;
        }
        let start = Instant::now();
        let res = f();
        let took = start.elapsed();
        let over = took > Duration::from_secs(limit);
        match (&res, over) {
            (Ok(n), false) => println!("PASS {id:>2} {name}: {n} checks in {took:.2?} (limit {limit}s)"),
            (Ok(n), true) => {
                failed += 1;
                println!("FAIL {id:>2} {name}: {n} checks passed but took {took:.2?} (limit {limit}s)");
            }
            (Err(m), _) => {
                failed += 1;
                println!("FAIL {id:>2} {name}: {m} ({took:.2?})");
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
