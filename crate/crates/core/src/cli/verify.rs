//! Verification suites reachable from `hallcomb verify`.

use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rayon::prelude::*;

use crate::fugacity::{u_lower_general, u_upper, u_via_3phi1, vertex_fugacity, VertexLabels};
use crate::hlalgebra::{c_cyclic, oracle_structure_constant, pieri_multiply, PVector};
use crate::honeycomb::{
    enumerate, pieri_honeycomb, product_expansion, structure_constant, HoneycombGrid,
};
use crate::partition::{enumerate_pkn, Partition};
use crate::polyring::TPoly;
use crate::sl4net::{
    check_double_puzzle_raw, check_double_puzzle_tuple, check_double_puzzles, check_dual_tetra,
    check_octa, check_tetra, tetra_special, Report, Sl4Error,
};

pub use crate::sl4net::Report as SuiteReport;

const APPENDIX_A: &str = include_str!("../../data/appendix_a.tsv");

/// Default seed of the sampled sweeps.
pub const SEED: u64 = 0x5eed;

fn collect<I>(items: I) -> Report
where
    I: IntoIterator<Item = Option<String>>,
{
    let mut r = Report::default();
    for failure in items {
        r.checked += 1;
        if let Some(msg) = failure {
            r.failed += 1;
            if r.first_failures.len() < 10 {
                r.first_failures.push(msg);
            }
        }
    }
    r
}

fn merge(mut a: Report, b: Report) -> Report {
    a.checked += b.checked;
    a.failed += b.failed;
    a.secondary_failed += b.secondary_failed;
    for (dst, src) in [
        (&mut a.first_failures, b.first_failures),
        (&mut a.secondary_failures, b.secondary_failures),
    ] {
        dst.extend(src);
        dst.truncate(10);
    }
    a
}

fn p(parts: &[usize], k: usize, n: usize) -> Partition {
    Partition::new(parts, k, n).expect("valid fixed partition")
}

/// Golden `(labels, fugacity)` rows of the small fugacity table.
pub fn appendix_a_table() -> Vec<(VertexLabels, TPoly)> {
    APPENDIX_A
        .lines()
        .filter(|l| !l.starts_with('#') && !l.trim().is_empty())
        .map(|line| {
            let (labels, coeffs) = line.split_once('\t').expect("two columns");
            let coeffs: Vec<i64> = coeffs
                .split_whitespace()
                .map(|c| c.parse().expect("integer coefficient"))
                .collect();
            (
                labels.parse().expect("labels"),
                TPoly::from_t_coeffs(&coeffs),
            )
        })
        .collect()
}

pub fn appendix_a() -> Report {
    collect(appendix_a_table().into_iter().map(|(labels, expected)| {
        match vertex_fugacity(&labels) {
            Ok(f) if f == expected => None,
            Ok(f) => Some(format!("{labels}: {f} != {expected}")),
            Err(e) => Some(format!("{labels}: {e}")),
        }
    }))
}

/// The three honeycombs of the worked example.
pub fn main_example() -> Report {
    let (k, n) = (5, 5);
    let lam = p(&[3, 2, 1, 1], k, n);
    let mu = p(&[3, 1], k, n);
    let nu = p(&[4, 3, 2, 1, 1], k, n);
    let grids = enumerate(&lam, &mu, Some(&nu));
    let mut fugs: Vec<TPoly> = grids.iter().map(|g| g.fugacity().expect("valid")).collect();
    fugs.sort();
    let poly = TPoly::from_t_coeffs;
    let mut expected = vec![
        TPoly::one(),
        poly(&[1, 1]) * poly(&[1, -1]),
        poly(&[1, 1, -1]) * poly(&[1, 1]),
    ];
    expected.sort();
    let sum: TPoly = fugs.iter().cloned().sum();
    collect([
        (grids.len() != 3).then(|| format!("{} honeycombs instead of 3", grids.len())),
        (fugs != expected).then(|| format!("fugacities {fugs:?}")),
        (sum != poly(&[3, 2, -1, -1])).then(|| format!("sum {sum}")),
        (structure_constant(&lam, &mu, &nu) != sum)
            .then(|| "structure constant differs".to_string()),
    ])
}

/// Honeycomb Pieri products against the Pieri rule for all `k, n <= max`,
/// plus the two figure honeycombs.
pub fn pieri(max: usize) -> Report {
    let cases: Vec<(Partition, usize)> = (1..=max)
        .flat_map(|k| (2..=max).map(move |n| (k, n)))
        .flat_map(|(k, n)| {
            enumerate_pkn(k, n)
                .into_iter()
                .flat_map(move |lam| (1..n).map(move |r| (lam.clone(), r)))
        })
        .collect();
    let sweep = collect(
        cases
            .par_iter()
            .map(|(lam, r)| pieri_case(lam, *r))
            .collect::<Vec<_>>(),
    );
    let poly = TPoly::from_t_coeffs;
    let figures = [
        ([5, 3, 1, 1, 0], [5, 5, 2, 1, 0], poly(&[1, 0, -1])),
        ([3, 2, 1, 1, 0], [4, 3, 1, 1, 1], poly(&[1, 0, 0, -1])),
    ];
    let figures = collect(figures.iter().map(|(lam, nu, expected)| {
        let (lam, nu) = (p(lam, 5, 6), p(nu, 5, 6));
        let r = nu.size() - lam.size();
        let row = Partition::row(r, 5, 6).expect("r < n");
        let g = match pieri_honeycomb(&lam, r, &nu) {
            Ok(g) => g,
            Err(e) => return Some(format!("{lam} ({r}) {nu}: {e}")),
        };
        if enumerate(&lam, &row, Some(&nu)) != [g.clone()] {
            return Some(format!(
                "{lam} ({r}) {nu}: construction is not the only honeycomb"
            ));
        }
        match g.fugacity() {
            Ok(f) if &f == expected => None,
            Ok(f) => Some(format!("{lam} ({r}) {nu}: fugacity {f} != {expected}")),
            Err(e) => Some(format!("{lam} ({r}) {nu}: {e}")),
        }
    }));
    merge(sweep, figures)
}

fn pieri_case(lam: &Partition, r: usize) -> Option<String> {
    let row = Partition::row(r, lam.k(), lam.n()).ok()?;
    let honey = product_expansion(lam, &row);
    let rule = pieri_multiply(&PVector::unit(lam), r).to_polys();
    if rule.as_ref() != Some(&honey) {
        return Some(format!(
            "{lam} * ({r}): honeycombs {honey:?} != rule {rule:?}"
        ));
    }
    for nu in honey.keys() {
        let grids = enumerate(lam, &row, Some(nu));
        let built = pieri_honeycomb(lam, r, nu);
        match (grids.as_slice(), built) {
            ([only], Ok(g)) if *only == g => {}
            (grids, built) => {
                return Some(format!(
                    "{lam} ({r}) {nu}: {} honeycombs, construction {:?}",
                    grids.len(),
                    built.map(|g: HoneycombGrid| g.to_text())
                ))
            }
        }
    }
    None
}

fn triples(all: &[Partition]) -> Vec<[Partition; 3]> {
    all.iter()
        .flat_map(|a| all.iter().map(move |b| (a, b)))
        .flat_map(|(a, b)| all.iter().map(move |c| [a.clone(), b.clone(), c.clone()]))
        .collect()
}

fn sample<T: Clone>(all: &[T], size: usize, count: usize, seed: u64) -> Vec<Vec<T>> {
    let mut rng = StdRng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            (0..size)
                .map(|_| all.choose(&mut rng).expect("nonempty").clone())
                .collect()
        })
        .collect()
}

fn oracle_case(t: &[Partition]) -> Option<String> {
    let honey = structure_constant(&t[0], &t[1], &t[2]);
    match oracle_structure_constant(&t[0], &t[1], &t[2]) {
        Ok(o) if o == honey.clone().into() => None,
        Ok(o) => Some(format!(
            "{} {} {}: honeycombs {honey} != oracle {o}",
            t[0], t[1], t[2]
        )),
        Err(e) => Some(format!("{} {} {}: {e}", t[0], t[1], t[2])),
    }
}

/// Honeycomb structure constants against the symmetrization formula: every
/// triple of `P_{k,n}` plus `samples` random triples of `P_{k+1,n+1}`.
pub fn oracle(k: usize, n: usize, samples: usize, seed: u64) -> Report {
    let all: Vec<Vec<Partition>> = triples(&enumerate_pkn(k, n))
        .into_iter()
        .map(Vec::from)
        .collect();
    let big = sample(&enumerate_pkn(k + 1, n + 1), 3, samples, seed);
    collect(
        all.par_iter()
            .chain(big.par_iter())
            .map(|t| oracle_case(t))
            .collect::<Vec<_>>(),
    )
}

fn assoc_case(t: &[Partition]) -> Option<String> {
    let (lam, mu, nu, rho) = (&t[0], &t[1], &t[2], &t[3]);
    let all = enumerate_pkn(lam.k(), lam.n());
    let left: TPoly = all
        .iter()
        .map(|s| structure_constant(lam, mu, s) * structure_constant(s, nu, rho))
        .sum();
    let right: TPoly = all
        .iter()
        .map(|s| structure_constant(lam, s, rho) * structure_constant(mu, nu, s))
        .sum();
    (left != right).then(|| format!("{lam} {mu} {nu} {rho}: {left} != {right}"))
}

/// Associativity over every 4-tuple of `P_{k,n}`, `samples` random 4-tuples
/// of `P_{k+1,n+1}`, and the three-factor example at `k = n = 3`.
pub fn assoc(k: usize, n: usize, samples: usize, seed: u64) -> Report {
    let all = enumerate_pkn(k, n);
    let tuples: Vec<Vec<Partition>> = triples(&all)
        .into_iter()
        .flat_map(|t| {
            all.iter()
                .map(move |d| vec![t[0].clone(), t[1].clone(), t[2].clone(), d.clone()])
        })
        .collect();
    let big = sample(&enumerate_pkn(k + 1, n + 1), 4, samples, seed);
    let sweep = collect(
        tuples
            .par_iter()
            .chain(big.par_iter())
            .map(|t| assoc_case(t))
            .collect::<Vec<_>>(),
    );
    let q = |parts: &[usize]| p(parts, 3, 3);
    let (l, m, v, r) = (q(&[1]), q(&[1]), q(&[1, 1]), q(&[2, 1, 1]));
    let expected = TPoly::from_t_coeffs(&[2, 2, 1]);
    let all3 = enumerate_pkn(3, 3);
    let left: TPoly = all3
        .iter()
        .map(|s| structure_constant(&l, &m, s) * structure_constant(s, &v, &r))
        .sum();
    let right: TPoly = all3
        .iter()
        .map(|s| structure_constant(&l, s, &r) * structure_constant(&m, &v, s))
        .sum();
    let example = collect([
        (left != expected).then(|| format!("((1)(1))(1,1) -> {left}")),
        (right != expected).then(|| format!("(1)((1)(1,1)) -> {right}")),
    ]);
    merge(sweep, example)
}

/// `c(t=0)` equals the number of honeycombs, over `P_{k,n}`.
pub fn t_zero(k: usize, n: usize) -> Report {
    let all = triples(&enumerate_pkn(k, n));
    collect(
        all.par_iter()
            .map(|[l, m, v]| {
                let c = structure_constant(l, m, v).at_zero();
                let count = enumerate(l, m, Some(v)).len();
                (c != count.into()).then(|| format!("{l} {m} {v}: c(0) = {c}, {count} honeycombs"))
            })
            .collect::<Vec<_>>(),
    )
}

/// Cyclic invariance of `c^{lam,mu,nu}` over `P_{k,n}`.
pub fn z3(k: usize, n: usize) -> Report {
    let all = triples(&enumerate_pkn(k, n));
    collect(
        all.par_iter()
            .map(|[l, m, v]| {
                let a = c_cyclic(l, m, v);
                let b = c_cyclic(m, v, l);
                (a != b).then(|| format!("{l} {m} {v}: {a} != {b}"))
            })
            .collect::<Vec<_>>(),
    )
}

/// Recurrence `u_{i''+1} = t^i (1 - t^{j'}) u_{j'-1} + (1 - t^i) u_{j+1,i-1}`
/// at `v`; `None` when a shifted argument would be negative.
pub fn recurrence_holds(v: &VertexLabels) -> Option<bool> {
    if v.i == 0 || v.jp == 0 {
        return None;
    }
    let u = u_lower_general;
    let lhs = u(v.j, v.i, v.jp, v.ip, v.ipp + 1);
    let rhs = TPoly::t_pow(v.i) * TPoly::one_minus_t_pow(v.jp) * u(v.j, v.i, v.jp - 1, v.ip, v.ipp)
        + TPoly::one_minus_t_pow(v.i) * u(v.j + 1, v.i - 1, v.jp, v.ip, v.ipp);
    Some(lhs == rhs)
}

/// Dihedral invariance of `u^`, the recurrence for `u_`, and the `3phi1`
/// form, over balanced labels with entries at most `bound`.
pub fn d6(bound: usize) -> Report {
    let labels = VertexLabels::all_balanced(bound);
    collect(
        labels
            .par_iter()
            .map(|v| {
                let base = u_upper(v).expect("balanced");
                if let Some(w) = v
                    .d6_orbit()
                    .iter()
                    .find(|w| u_upper(w).ok().as_ref() != Some(&base))
                {
                    return Some(format!("{v}: u^ differs at {w}"));
                }
                if recurrence_holds(v) == Some(false) {
                    return Some(format!("{v}: recurrence fails"));
                }
                match u_via_3phi1(v) {
                    Ok(x) if x == base => None,
                    other => Some(format!("{v}: 3phi1 form {other:?} != {base}")),
                }
            })
            .collect::<Vec<_>>(),
    )
}

pub fn sl4_dual_tetra(bound: u32) -> Result<Report, Sl4Error> {
    check_dual_tetra(bound)
}

pub fn sl4_octa(bound: u32) -> Result<Report, Sl4Error> {
    check_octa(bound)
}

/// Tetrahedron sweep together with the all-ones special case
/// `(1-t)^2 (1-t+t^2)`.
pub fn sl4_tetra(bound: u32) -> Result<Report, Sl4Error> {
    let sweep = check_tetra(bound)?;
    let expected = TPoly::from_t_coeffs(&[1, -1]).pow(2) * TPoly::from_t_coeffs(&[1, -1, 1]);
    let got = tetra_special(1, 1, 1, 1);
    Ok(merge(
        sweep,
        collect([
            (got != expected.clone().into()).then(|| format!("all ones: {got} != {expected}"))
        ]),
    ))
}

/// Double puzzles over `P_{k,n}`, the three-factor example at `k = n = 3`,
/// and raw contraction at `n = 2` for `k <= raw_k`.
pub fn double_puzzle(k: usize, n: usize, raw_k: usize) -> Result<Report, Sl4Error> {
    let mut report = check_double_puzzles(k, n);
    let q = |parts: &[usize]| p(parts, 3, 3);
    report = merge(
        report,
        check_double_puzzle_tuple(&q(&[1]), &q(&[1]), &q(&[1, 1]), &q(&[2, 1, 1])),
    );
    for rk in 1..=raw_k {
        report = merge(report, check_double_puzzle_raw(rk, 2)?);
    }
    Ok(report)
}

/// Suite names accepted by `hallcomb verify`, with a one-line summary.
pub const SUITES: &[(&str, &str)] = &[
    ("appendixA", "small fugacity table"),
    ("main-example", "three honeycombs of the worked example"),
    ("pieri", "Pieri rule for k, n <= 5"),
    ("oracle", "honeycombs against the symmetrization formula"),
    ("assoc", "associativity"),
    ("t0", "t = 0 honeycomb counts"),
    ("z3", "cyclic invariance"),
    ("d6", "dihedral symmetry, recurrence and 3phi1 form"),
    ("sl4-dualtetra", "dual tetrahedron identity"),
    ("sl4-octa", "octahedron identity"),
    ("sl4-tetra", "tetrahedron identity"),
    ("double-puzzle", "double puzzles"),
];
