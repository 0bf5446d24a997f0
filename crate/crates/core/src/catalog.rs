//! Built-in geometries, brane phases and closed-form fixtures for them.

use num_traits::{One, Zero};

use std::collections::BTreeSet;

use crate::bmodel::{c_coeff, factorial};
use crate::curve::PrintedTerm;
use crate::error::Result;
use crate::series::ExtExponent;
use crate::toric::{BraneKind, BraneSpec, ToricCY3};
use crate::{rat, Rational};

pub const NAMES: [&str; 7] = ["conifold", "KP2", "KF0", "KdP1", "KdP2", "KdP3", "Ym"];

pub fn conifold() -> ToricCY3 {
    ToricCY3::new(
        "conifold",
        vec![vec![-1, -1, 1, 1]],
        vec![[1, 2, 3], [1, 2, 4]],
        Some(vec![[0, 0, 1], [1, 1, 1], [1, 0, 1], [0, 1, 1]]),
    )
}

pub fn kp2() -> ToricCY3 {
    ToricCY3::new(
        "KP2",
        vec![vec![-3, 1, 1, 1]],
        vec![[1, 2, 3], [1, 3, 4], [1, 2, 4]],
        Some(vec![[0, 0, 1], [1, 0, 1], [0, 1, 1], [-1, -1, 1]]),
    )
}

pub fn kf0() -> ToricCY3 {
    ToricCY3::new(
        "KF0",
        vec![vec![-2, 1, 1, 0, 0], vec![-2, 0, 0, 1, 1]],
        vec![[1, 2, 4], [1, 4, 3], [1, 3, 5], [1, 5, 2]],
        Some(vec![[0, 0, 1], [1, 0, 1], [-1, 0, 1], [0, 1, 1], [0, -1, 1]]),
    )
}

pub fn kdp1() -> ToricCY3 {
    ToricCY3::new(
        "KdP1",
        vec![vec![-2, 1, 1, 0, 0], vec![-1, 0, -1, 1, 1]],
        vec![[1, 2, 4], [1, 4, 3], [1, 3, 5], [1, 5, 2]],
        Some(vec![[0, 0, 1], [-1, 0, 1], [1, 0, 1], [0, 1, 1], [1, -1, 1]]),
    )
}

pub fn kdp2() -> ToricCY3 {
    ToricCY3::new(
        "KdP2",
        vec![
            vec![-2, 1, 1, 0, 0, 0],
            vec![-2, 0, 0, 1, 1, 0],
            vec![-3, 1, 0, 1, 0, 1],
        ],
        vec![[1, 2, 4], [1, 4, 3], [1, 3, 6], [1, 6, 5], [1, 5, 2]],
        Some(vec![[0, 0, 1], [1, 0, 1], [-1, 0, 1], [0, 1, 1], [0, -1, 1], [-1, -1, 1]]),
    )
}

pub fn kdp3() -> ToricCY3 {
    ToricCY3::new(
        "KdP3",
        vec![
            vec![-2, 1, 1, 0, 0, 0, 0],
            vec![-2, 0, 0, 1, 1, 0, 0],
            vec![-3, 1, 0, 1, 0, 1, 0],
            vec![-3, 0, 1, 0, 1, 0, 1],
        ],
        vec![[1, 2, 7], [1, 7, 4], [1, 4, 3], [1, 3, 6], [1, 6, 5], [1, 5, 2]],
        Some(vec![
            [0, 0, 1],
            [1, 0, 1],
            [-1, 0, 1],
            [0, 1, 1],
            [0, -1, 1],
            [-1, -1, 1],
            [1, 1, 1],
        ]),
    )
}

/// Crepant resolution of the `Z_m` quotient of the conifold, `m >= 2`.
pub fn ym(m: usize) -> ToricCY3 {
    assert!(m >= 2, "Y_m needs m >= 2");
    let r = m + 3;
    let mut charge = Vec::with_capacity(m);
    let mut first = vec![0; r];
    first[0] = 1;
    first[1] = 1;
    first[3] = -2;
    charge.push(first);
    for a in 2..=m {
        let mut row = vec![0; r];
        row[a] = 1;
        row[a + 1] = -2;
        row[a + 2] = 1;
        charge.push(row);
    }
    let mut cones = vec![[3, 4, 1], [3, 4, 2]];
    for j in 4..=m + 2 {
        cones.push([j, j + 1, 1]);
        cones.push([j, j + 1, 2]);
    }
    let mut rays = vec![[1, 1, 1], [1, -1, 1]];
    rays.extend((3..=r as i64).map(|j| [j - 3, 0, 1]));
    ToricCY3::new(format!("Y{m}"), charge, cones, Some(rays))
}

/// Brane phases of a catalog geometry, in table order.
pub fn branes(g: &ToricCY3) -> Vec<BraneSpec> {
    use BraneSpec as B;
    match g.name.as_str() {
        "conifold" => vec![B::inner("I", 4, 1, 2, 3), B::outer("II", 1, 2, 4)],
        "KP2" => vec![
            B::inner("I", 2, 3, 1, 4),
            B::inner("II", 3, 1, 2, 4),
            B::outer("III", 1, 2, 3),
        ],
        "KF0" => vec![
            B::inner("I", 3, 1, 4, 2),
            B::inner("II", 4, 3, 1, 5),
            B::outer("III", 1, 4, 3),
        ],
        "KdP1" => vec![
            B::inner("I", 4, 1, 2, 5),
            B::inner("II", 2, 4, 1, 3),
            B::inner("III", 4, 3, 1, 5),
            B::outer("IV", 1, 2, 4),
            B::outer("V", 1, 4, 3),
        ],
        "KdP2" => vec![
            B::inner("I", 5, 1, 2, 4),
            B::inner("II", 2, 5, 1, 6),
            B::inner("III", 5, 6, 1, 3),
            B::outer("IV", 1, 4, 2),
            B::outer("V", 1, 2, 5),
            B::outer("VI", 1, 5, 6),
        ],
        "KdP3" => vec![B::inner("I", 5, 2, 1, 7), B::outer("II", 1, 5, 2)],
        name => match name.strip_prefix('Y').and_then(|m| m.parse::<usize>().ok()) {
            Some(m) => ym_branes(m),
            None => Vec::new(),
        },
    }
}

fn ym_branes(m: usize) -> Vec<BraneSpec> {
    let mut out = vec![BraneSpec::outer("I0", 4, 3, 1)];
    for b in 1..=m {
        let label = format!("I{b}");
        if b < m {
            out.push(BraneSpec::inner(label, b + 2, 1, b + 3, b + 4));
        } else {
            out.push(BraneSpec::outer(label, b + 2, 1, b + 3));
        }
    }
    for b in 1..=m {
        out.push(BraneSpec::inner(format!("II{b}"), 1, b + 3, b + 2, 2));
    }
    out
}

/// Resolves `conifold`, `KP2`, .., `Y5`, or `Ym?m=5` (case-insensitive).
pub fn geometry(name: &str) -> Option<ToricCY3> {
    let lower = name.to_ascii_lowercase();
    if let Some(rest) = lower.strip_prefix("ym") {
        let m = match rest {
            "" => 3,
            _ => rest.strip_prefix("?m=")?.parse().ok()?,
        };
        return (m >= 2).then(|| ym(m));
    }
    match lower.as_str() {
        "conifold" => Some(conifold()),
        "kp2" => Some(kp2()),
        "kf0" => Some(kf0()),
        "kdp1" => Some(kdp1()),
        "kdp2" => Some(kdp2()),
        "kdp3" => Some(kdp3()),
        _ => {
            let m: usize = lower.strip_prefix('y')?.parse().ok()?;
            (m >= 2).then(|| ym(m))
        }
    }
}

/// A catalog geometry with one of its phases.
pub fn phase(geometry_name: &str, label: &str) -> Option<(ToricCY3, BraneSpec)> {
    let g = geometry(geometry_name)?;
    let b = branes(&g).into_iter().find(|b| b.label == label)?;
    Some((g, b))
}

/// The seven catalog geometries, with `Y_m` at the given `m`.
pub fn all_geometries(m: usize) -> Vec<ToricCY3> {
    vec![conifold(), kp2(), kf0(), kdp1(), kdp2(), kdp3(), ym(m)]
}

/// Every phase of every catalog geometry.
pub fn all_phases(m: usize) -> Vec<(ToricCY3, BraneSpec)> {
    all_geometries(m)
        .into_iter()
        .flat_map(|g| branes(&g).into_iter().map(move |b| (g.clone(), b)))
        .collect()
}

/// All integer vectors in `[lo, hi]^k`.
pub fn small_box(k: usize, lo: i64, hi: i64) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::new()];
    for _ in 0..k {
        out = out
            .into_iter()
            .flat_map(|v| {
                (lo..=hi).map(move |x| {
                    let mut v = v.clone();
                    v.push(x);
                    v
                })
            })
            .collect();
    }
    out
}

type Eval = Box<dyn Fn(i64, i64, &[i64]) -> Rational + Send + Sync>;
type Constraint = Box<dyn Fn(i64, &[i64]) -> bool + Send + Sync>;

/// Closed-form disk coefficient of one tabulated phase.
pub struct PhaseFixture {
    pub geometry: String,
    pub phase: String,
    pub brane: BraneSpec,
    eval: Eval,
    constraint: Constraint,
}

impl std::fmt::Debug for PhaseFixture {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "PhaseFixture({} {})", self.geometry, self.phase)
    }
}

impl PhaseFixture {
    pub fn satisfies(&self, w: i64, d: &[i64]) -> bool {
        self.constraint.as_ref()(w, d)
    }
}

/// Evaluates a fixture; 0 off its constraint region or at `w = 0`.
pub fn catalog_n(fixture: &PhaseFixture, f: i64, w: i64, d: &[i64]) -> Rational {
    if w == 0 || !fixture.satisfies(w, d) {
        return Rational::zero();
    }
    fixture.eval.as_ref()(f, w, d)
}

fn sg(n: i64) -> Rational {
    if n.rem_euclid(2) == 0 {
        Rational::one()
    } else {
        -Rational::one()
    }
}

/// `1/n!`, zero for negative `n`.
fn fi(n: i64) -> Rational {
    if n < 0 {
        Rational::zero()
    } else {
        factorial(n).recip()
    }
}

/// `prod_{m=lo}^{hi} (fw+m)`, read as a ratio of gamma functions when `hi < lo - 1`.
fn pr(f: i64, w: i64, lo: i64, hi: i64) -> Rational {
    let a = f * w;
    if hi >= lo - 1 {
        (lo..=hi).fold(Rational::one(), |acc, m| acc * rat(a + m))
    } else {
        let den = (hi + 1..lo).fold(Rational::one(), |acc, m| acc * rat(a + m));
        if den.is_zero() {
            Rational::zero()
        } else {
            den.recip()
        }
    }
}

/// `(-1)^(fw+s) pr(lo, hi) / (w prod dens!)`.
fn n(f: i64, w: i64, s: i64, lo: i64, hi: i64, dens: &[i64]) -> Rational {
    if dens.iter().any(|&x| x < 0) {
        return Rational::zero();
    }
    let den = dens.iter().fold(factorial(0) * rat(w), |acc, &x| acc * factorial(x));
    sg(f * w + s) * pr(f, w, lo, hi) / den
}

fn fixture(g: &ToricCY3, label: &str, eval: Eval, constraint: Constraint) -> PhaseFixture {
    let brane = branes(g)
        .into_iter()
        .find(|b| b.label == label)
        .expect("fixture refers to a known phase");
    PhaseFixture {
        geometry: g.name.clone(),
        phase: label.to_string(),
        brane,
        eval,
        constraint,
    }
}

/// Tabulated closed forms for the phases of `g`.
pub fn fixtures(g: &ToricCY3) -> Vec<PhaseFixture> {
    let mk = |label: &str, eval: Eval, constraint: Constraint| fixture(g, label, eval, constraint);
    match g.name.as_str() {
        "conifold" => vec![
            mk(
                "I",
                Box::new(|f, w, d| n(f, w, d[0], -d[0] + 1, d[0] + w - 1, &[w + d[0], d[0]])),
                Box::new(|w, d| d[0] >= 0 && w + d[0] >= 0),
            ),
            mk(
                "II",
                Box::new(|f, w, d| n(f, w, d[0], -d[0] + 1, -d[0] + w - 1, &[w - d[0], d[0]])),
                Box::new(|w, d| w >= d[0] && d[0] >= 0),
            ),
        ],
        "KP2" => vec![
            mk(
                "I",
                Box::new(|f, w, d| n(f, w, d[0], d[0] + 1, 3 * d[0] + w - 1, &[w + d[0], d[0]])),
                Box::new(|w, d| d[0] >= 0 && w + d[0] >= 0),
            ),
            mk(
                "II",
                Box::new(|f, w, d| n(f, w, d[0], -3 * d[0] + 1, -d[0] + w - 1, &[w + d[0], d[0]])),
                Box::new(|w, d| d[0] >= 0 && w + d[0] >= 0),
            ),
            mk(
                "III",
                Box::new(|f, w, d| n(f, w, d[0], d[0] + 1, -d[0] + w - 1, &[w - 3 * d[0], d[0]])),
                Box::new(|w, d| d[0] >= 0 && w >= 3 * d[0]),
            ),
        ],
        "KF0" => vec![
            mk(
                "I",
                Box::new(|f, w, d| {
                    let (d1, d2) = (d[0], d[1]);
                    n(f, w, d2, -2 * d1 - 2 * d2 + 1, -d2 + w - 1, &[w + d1, d1, d2])
                }),
                Box::new(|w, d| d[0] >= 0 && d[1] >= 0 && w + d[0] >= 0),
            ),
            mk(
                "II",
                Box::new(|f, w, d| {
                    let (d1, d2) = (d[0], d[1]);
                    n(f, w, 0, d1 + 1, 2 * d1 + 2 * d2 + w - 1, &[w + d2, d1, d2])
                }),
                Box::new(|w, d| d[0] >= 0 && d[1] >= 0 && w + d[1] >= 0),
            ),
            mk(
                "III",
                Box::new(|f, w, d| {
                    let (d1, d2) = (d[0], d[1]);
                    n(f, w, d1, d2 + 1, -d1 + w - 1, &[w - 2 * d1 - 2 * d2, d1, d2])
                }),
                Box::new(|w, d| d[0] >= 0 && d[1] >= 0 && w >= 2 * d[0] + 2 * d[1]),
            ),
        ],
        "KdP1" => vec![
            mk(
                "I",
                Box::new(|f, w, d| {
                    let (d1, d2) = (d[0], d[1]);
                    n(f, w, d1, -2 * d1 - d2 + 1, -d1 + w - 1, &[w + d2, d1 - d2, d2])
                }),
                Box::new(|w, d| w + d[1] >= 0 && d[0] >= d[1] && d[1] >= 0),
            ),
            mk(
                "II",
                Box::new(|f, w, d| {
                    let (d1, d2) = (d[0], d[1]);
                    n(f, w, d2, d2 + 1, 2 * d1 + d2 + w - 1, &[w + d1, d1 - d2, d2])
                }),
                Box::new(|w, d| w + d[0] >= 0 && d[0] >= d[1] && d[1] >= 0),
            ),
            mk(
                "III",
                Box::new(|f, w, d| {
                    let (d1, d2) = (d[0], d[1]);
                    n(f, w, d2, d1 - d2 + 1, 2 * d1 + d2 + w - 1, &[w + d2, d1, d2])
                }),
                Box::new(|w, d| d[0] >= 0 && d[1] >= 0 && w + d[1] >= 0),
            ),
            mk(
                "IV",
                Box::new(|f, w, d| {
                    let (d1, d2) = (d[0], d[1]);
                    n(f, w, d2, d1 + 1, -d2 + w - 1, &[w - 2 * d1 - d2, d1 - d2, d2])
                }),
                Box::new(|w, d| d[0] >= d[1] && d[1] >= 0 && w >= 2 * d[0] + d[1]),
            ),
            mk(
                "V",
                Box::new(|f, w, d| {
                    let (d1, d2) = (d[0], d[1]);
                    n(f, w, d1 + d2, d2 + 1, -d1 + d2 + w - 1, &[w - 2 * d1 - d2, d1, d2])
                }),
                Box::new(|w, d| d[0] >= 0 && d[1] >= 0 && w >= 2 * d[0] + d[1]),
            ),
        ],
        "KdP2" => vec![
            mk(
                "I",
                Box::new(|f, w, d| {
                    let (d1, d2, d3) = (d[0], d[1], d[2]);
                    n(
                        f,
                        w,
                        d1 + d3,
                        -2 * d1 - 2 * d2 - 3 * d3 + 1,
                        -d1 - d3 + w - 1,
                        &[w + d2, d1, d3, d2 + d3],
                    )
                }),
                Box::new(|w, d| d[0] >= 0 && d[2] >= 0 && d[1] + d[2] >= 0 && w + d[1] >= 0),
            ),
            mk(
                "II",
                Box::new(|f, w, d| {
                    let (d1, d2, d3) = (d[0], d[1], d[2]);
                    n(
                        f,
                        w,
                        d3,
                        d2 + 1,
                        2 * d1 + 2 * d2 + 3 * d3 + w - 1,
                        &[w + d1 + d3, d1, d3, d2 + d3],
                    )
                }),
                Box::new(|w, d| {
                    d[0] >= 0 && d[2] >= 0 && d[1] + d[2] >= 0 && w + d[0] + d[2] >= 0
                }),
            ),
            mk(
                "III",
                Box::new(|f, w, d| {
                    let (d1, d2, d3) = (d[0], d[1], d[2]);
                    n(
                        f,
                        w,
                        d3,
                        d3 + 1,
                        2 * d1 + 2 * d2 + 3 * d3 + w - 1,
                        &[w + d2, d1, d1 + d3, d2 + d3],
                    )
                }),
                Box::new(|w, d| {
                    d[0] >= 0 && d[0] + d[2] >= 0 && d[1] + d[2] >= 0 && w + d[1] >= 0
                }),
            ),
            mk(
                "IV",
                Box::new(|f, w, d| {
                    let (d1, d2, d3) = (d[0], d[1], d[2]);
                    n(
                        f,
                        w,
                        d1 + d3,
                        d2 + d3 + 1,
                        -d1 - d3 + w - 1,
                        &[w - 2 * d1 - 2 * d2 - 3 * d3, d1, d2, d3],
                    )
                }),
                Box::new(|w, d| {
                    d.iter().all(|&x| x >= 0) && w >= 2 * d[0] + 2 * d[1] + 3 * d[2]
                }),
            ),
            mk(
                "V",
                Box::new(|f, w, d| {
                    let (d1, d2, d3) = (d[0], d[1], d[2]);
                    n(
                        f,
                        w,
                        d2,
                        d1 + d3 + 1,
                        -d2 + w - 1,
                        &[w - 2 * d1 - 2 * d2 - 3 * d3, d1, d2 + d3, d3],
                    )
                }),
                Box::new(|w, d| {
                    d[0] >= 0 && d[2] >= 0 && d[1] + d[2] >= 0 && w >= 2 * d[0] + 2 * d[1] + 3 * d[2]
                }),
            ),
            mk(
                "VI",
                // The printed lower limit d1+d3+1 is corrected to d2+1.
                Box::new(|f, w, d| {
                    let (d1, d2, d3) = (d[0], d[1], d[2]);
                    n(
                        f,
                        w,
                        d3,
                        d2 + 1,
                        -d3 + w - 1,
                        &[w - 2 * d1 - 2 * d2 - 3 * d3, d1, d1 + d3, d2 + d3],
                    )
                }),
                Box::new(|w, d| {
                    d[0] >= 0
                        && d[0] + d[2] >= 0
                        && d[1] + d[2] >= 0
                        && w >= 2 * d[0] + 2 * d[1] + 3 * d[2]
                }),
            ),
        ],
        "KdP3" => vec![
            mk(
                "I",
                Box::new(|f, w, d| {
                    let (d1, d2, d3, d4) = (d[0], d[1], d[2], d[3]);
                    n(
                        f,
                        w,
                        d3 + d4,
                        d1 + d3 + 1,
                        2 * d1 + 2 * d2 + 3 * d3 + 3 * d4 + w - 1,
                        &[w + d2 + d4, d3, d4, d2 + d3, d1 + d4],
                    )
                }),
                Box::new(|w, d| {
                    d[2] >= 0 && d[3] >= 0 && d[0] + d[3] >= 0 && d[1] + d[2] >= 0 && w + d[1] + d[3] >= 0
                }),
            ),
            mk(
                "II",
                // The printed sign exponent fw+d2+d4 is corrected to fw+d1+d3.
                Box::new(|f, w, d| {
                    let (d1, d2, d3, d4) = (d[0], d[1], d[2], d[3]);
                    n(
                        f,
                        w,
                        d1 + d3,
                        d2 + d4 + 1,
                        -d1 - d3 + w - 1,
                        &[w - 2 * d1 - 2 * d2 - 3 * d3 - 3 * d4, d3, d4, d2 + d3, d1 + d4],
                    )
                }),
                Box::new(|w, d| {
                    d[2] >= 0
                        && d[3] >= 0
                        && d[0] + d[3] >= 0
                        && d[1] + d[2] >= 0
                        && w >= 2 * d[0] + 2 * d[1] + 3 * d[2] + 3 * d[3]
                }),
            ),
        ],
        name => match name.strip_prefix('Y').and_then(|m| m.parse::<usize>().ok()) {
            Some(m) => ym_fixtures(g, m),
            None => Vec::new(),
        },
    }
}

/// `d_{j-1} - 2 d_j + d_{j+1}` with 1-based `j`.
fn mid(d: &[i64], j: usize) -> i64 {
    d[j - 2] - 2 * d[j - 1] + d[j]
}

/// The factorial arguments `d1, d2, -2d1-2d2+d3, mid(3..m-1) except skipped, d_{m-1}-2d_m, d_m`.
fn ym_tail(d: &[i64], m: usize, skip: &[usize]) -> Vec<i64> {
    let mut v = vec![d[0], d[1], -2 * d[0] - 2 * d[1] + d[2]];
    v.extend((3..m).filter(|j| !skip.contains(j)).map(|j| mid(d, j)));
    v.push(d[m - 2] - 2 * d[m - 1]);
    v.push(d[m - 1]);
    v
}

fn ym_fixtures(g: &ToricCY3, m: usize) -> Vec<PhaseFixture> {
    let mut out = Vec::new();
    if m >= 3 {
        out.push(fixture(
            g,
            "I0",
            Box::new(move |f, w, d| {
                let mut dens = vec![w - 2 * d[0] - 2 * d[1] + d[2], d[0]];
                dens.extend((3..m).map(|j| mid(d, j)));
                dens.push(d[m - 2] - 2 * d[m - 1]);
                dens.push(d[m - 1]);
                n(f, w, d[0], d[1] + 1, -d[0] + w - 1, &dens)
            }),
            Box::new(move |w, d| {
                w >= 2 * d[0] + 2 * d[1] - d[2]
                    && d[0] >= 0
                    && (3..m).all(|j| mid(d, j) >= 0)
                    && d[m - 2] - 2 * d[m - 1] >= 0
                    && d[m - 1] >= 0
            }),
        ));
    }
    for b in 3..=m.saturating_sub(2) {
        out.push(fixture(
            g,
            &format!("I{b}"),
            Box::new(move |f, w, d| {
                let s = mid(d, b + 1);
                let mut dens = vec![w + mid(d, b)];
                dens.extend(ym_tail(d, m, &[b, b + 1]));
                n(f, w, s, d[0] + 1, -s + w - 1, &dens)
            }),
            Box::new(move |w, d| {
                w + mid(d, b) >= 0 && ym_tail(d, m, &[b, b + 1]).iter().all(|&x| x >= 0)
            }),
        ));
        out.push(fixture(
            g,
            &format!("II{b}"),
            // The printed lower limit d_{b+1}-2d_{b+2}+d_{b+3}+1 is corrected to
            // d_b-2d_{b+1}+d_{b+2}+1.
            Box::new(move |f, w, d| {
                let s = mid(d, b);
                let mut dens = vec![w + d[0]];
                dens.extend(ym_tail(d, m, &[b, b + 1]));
                n(f, w, s, mid(d, b + 1) + 1, -s + w - 1, &dens)
            }),
            Box::new(move |w, d| {
                w + d[0] >= 0 && ym_tail(d, m, &[b, b + 1]).iter().all(|&x| x >= 0)
            }),
        ));
    }
    out
}

/// Tabulated coefficient of `q^d` in the mirror-map series `A_i`, or `None` when the
/// geometry is not in the table.
pub fn table_a(g: &ToricCY3, i: usize, d: &[i64]) -> Option<Rational> {
    let zero = Rational::zero();
    if d.iter().all(|&x| x == 0) {
        return Some(zero);
    }
    let val = match g.name.as_str() {
        "conifold" => zero,
        "KP2" => match i {
            1 if d[0] > 0 => sg(d[0] - 1) * factorial(3 * d[0] - 1) * fi(d[0]).pow(3),
            _ => zero,
        },
        "KF0" => match i {
            1 if d[0] >= 0 && d[1] >= 0 => {
                -factorial(2 * d[0] + 2 * d[1] - 1) * fi(d[0]).pow(2) * fi(d[1]).pow(2)
            }
            _ => zero,
        },
        "KdP1" => match i {
            1 if d[0] >= d[1] && d[1] >= 0 => {
                sg(d[1] - 1) * factorial(2 * d[0] + d[1] - 1) * fi(d[0]) * fi(d[0] - d[1]) * fi(d[1]).pow(2)
            }
            _ => zero,
        },
        "KdP2" => match i {
            1 if d.iter().all(|&x| x >= 0) => {
                let (d1, d2, d3) = (d[0], d[1], d[2]);
                sg(d3 - 1)
                    * factorial(2 * d1 + 2 * d2 + 3 * d3 - 1)
                    * fi(d1)
                    * fi(d2)
                    * fi(d3)
                    * fi(d1 + d3)
                    * fi(d2 + d3)
            }
            _ => zero,
        },
        "KdP3" => {
            let (d1, d2, d3, d4) = (d[0], d[1], d[2], d[3]);
            let ok = [d1 + d3, d1 + d4, d2 + d3, d2 + d4, d3, d4].iter().all(|&x| x >= 0);
            match i {
                1 if ok => {
                    sg(d3 + d4 - 1)
                        * factorial(2 * d1 + 2 * d2 + 3 * d3 + 3 * d4 - 1)
                        * fi(d1 + d3)
                        * fi(d1 + d4)
                        * fi(d2 + d3)
                        * fi(d2 + d4)
                        * fi(d3)
                        * fi(d4)
                }
                _ => zero,
            }
        }
        name => {
            let m: usize = name.strip_prefix('Y')?.parse().ok()?;
            ym_table_a(m, i, d)
        }
    };
    Some(val)
}

/// `(-1)^(-c-1) (-c-1)! / prod others!`, zero unless `c < 0` and all others are `>= 0`.
fn single_pole(c: i64, others: &[i64]) -> Rational {
    if c >= 0 || others.iter().any(|&x| x < 0) {
        return Rational::zero();
    }
    others
        .iter()
        .fold(sg(-c - 1) * factorial(-c - 1), |acc, &x| acc * fi(x))
}

fn ym_table_a(m: usize, i: usize, d: &[i64]) -> Rational {
    let r = m + 3;
    let dm = d[m - 1];
    let dm1 = d[m - 2] - 2 * dm;
    let c4 = -2 * d[0] - 2 * d[1] + d[2];
    // Middle factorial range j = 3..m-1 (the printed range 2..m-2 is shifted by one).
    let mids = |skip: Option<usize>| -> Vec<i64> {
        (3..m).filter(|&j| Some(j) != skip).map(|j| mid(d, j)).collect()
    };
    let head = vec![d[0], d[0], d[1]];
    match i {
        1..=3 => Rational::zero(),
        4 => {
            let mut others = head;
            others.extend([dm1, dm]);
            others.extend(mids(None));
            // (-1)^(2d1+2d2-d3-1) (2d1+2d2-d3-1)! over the rest
            single_pole(c4, &others)
        }
        _ if i >= 5 && i <= r - 2 => {
            let j = i - 2;
            let mut others = head;
            others.extend([c4, dm1, dm]);
            others.extend(mids(Some(j)));
            single_pole(mid(d, j), &others)
        }
        _ if i == r - 1 => {
            let mut others = head;
            others.extend([c4, dm]);
            others.extend(mids(None));
            single_pole(dm1, &others)
        }
        _ if i == r => {
            let mut others = head;
            others.extend([c4, dm1]);
            others.extend(mids(None));
            single_pole(dm, &others)
        }
        _ => Rational::zero(),
    }
}

/// Checks that `b` is a catalog phase of `g` with the expected kind.
pub fn is_catalog_phase(g: &ToricCY3, b: &BraneSpec) -> bool {
    branes(g).iter().any(|c| c == b)
}

#[doc(hidden)]
pub fn inner_phases(m: usize) -> Vec<(ToricCY3, BraneSpec)> {
    all_phases(m)
        .into_iter()
        .filter(|(_, b)| b.kind == BraneKind::Inner)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratio;

    #[test]
    fn every_catalog_phase_validates() {
        for m in 2..=6 {
            for (g, b) in all_phases(m) {
                let report = g.validate(&b);
                assert!(report.is_ok(), "{} {}: {report}", g.name, b.label);
            }
        }
    }

    #[test]
    fn lookup() {
        assert_eq!(geometry("catalog").map(|g| g.name), None);
        assert_eq!(geometry("KP2").map(|g| branes(&g).len()), Some(3));
        assert_eq!(geometry("Ym?m=3").unwrap().charge.len(), 3);
        assert_eq!(geometry("y4").unwrap().name, "Y4");
        assert!(geometry("Ym?m=1").is_none());
    }

    #[test]
    fn ym_charge_rows() {
        let g = ym(3);
        assert_eq!(
            g.charge,
            vec![
                vec![1, 1, 0, -2, 0, 0],
                vec![0, 0, 1, -2, 1, 0],
                vec![0, 0, 0, 1, -2, 1],
            ]
        );
    }

    #[test]
    fn fixture_spot_values() {
        let g = conifold();
        let fx = fixtures(&g);
        assert_eq!(catalog_n(&fx[0], 5, 1, &[0]), rat(-1));
        assert_eq!(catalog_n(&fx[0], 1, 2, &[0]), ratio(3, 4));
        let g = kp2();
        let fx = fixtures(&g);
        for w in 1..6 {
            for d in 0..4 {
                let expected = sg(d) * factorial(w + 3 * d - 1) * fi(w + d) * fi(d).pow(2) / rat(w);
                assert_eq!(catalog_n(&fx[0], 0, w, &[d]), expected);
            }
        }
    }

    #[test]
    fn p2_mirror_table() {
        let g = kp2();
        let values: Vec<Rational> = (1..=3).map(|d| table_a(&g, 1, &[d]).unwrap()).collect();
        assert_eq!(values, vec![rat(2), rat(-15), ratio(560, 3)]);
        assert_eq!(table_a(&kf0(), 1, &[1, 1]).unwrap(), rat(-6));
    }
}

fn pt(coeff: i64, x: i64, y: i64, yf: i64, q: &[i64]) -> PrintedTerm {
    PrintedTerm { coeff, x, y, yf, q: q.to_vec() }
}

/// Printed framed mirror curves, as terms `coeff x^x y^(y + yf f) q^q`.
pub fn curve_table(g: &ToricCY3, label: &str) -> Option<Vec<PrintedTerm>> {
    let k = g.k();
    let z = vec![0; k];
    let mut terms = vec![pt(-1, 1, 0, -1, &z), pt(1, 0, 1, 0, &z), pt(1, 0, 0, 0, &z)];
    let extra = match (g.name.as_str(), label) {
        ("conifold", "I") => vec![pt(-1, 0, 1, 0, &[1])],
        ("conifold", "II") => vec![pt(-1, 1, 1, -1, &[1])],
        ("KP2", "I") => vec![pt(-1, -1, -1, 1, &[1])],
        ("KP2", "II") => vec![pt(-1, -1, 3, 1, &[1])],
        ("KP2", "III") => vec![pt(-1, 3, -1, -3, &[1])],
        ("KF0", "I") => vec![pt(-1, -1, 2, 1, &[1, 0]), pt(1, 0, 2, 0, &[0, 1])],
        ("KF0", "II") => vec![pt(1, 0, -1, 0, &[1, 0]), pt(-1, -1, 0, 1, &[0, 1])],
        ("KF0", "III") => vec![pt(1, 2, 0, -2, &[1, 0]), pt(1, 2, -1, -2, &[0, 1])],
        ("KdP1", "I") => vec![pt(1, 0, 2, 0, &[1, 0]), pt(-1, -1, 3, 1, &[1, 1])],
        ("KdP1", "II") => vec![pt(-1, -1, 0, 1, &[1, 0]), pt(-1, -1, -1, 1, &[1, 1])],
        ("KdP1", "III") => vec![pt(1, 0, -1, 0, &[1, 0]), pt(-1, -1, 1, 1, &[0, 1])],
        ("KdP1", "IV") => vec![pt(1, 2, -1, -2, &[1, 0]), pt(-1, 3, -1, -3, &[1, 1])],
        ("KdP1", "V") => vec![pt(1, 2, 0, -2, &[1, 0]), pt(-1, 1, -1, -1, &[0, 1])],
        ("KdP2", "I") => vec![
            pt(1, 0, 2, 0, &[1, 0, 0]),
            pt(-1, -1, 2, 1, &[0, 1, 0]),
            pt(-1, 1, 1, -1, &[0, -1, 1]),
        ],
        ("KdP2", "II") => vec![
            pt(1, 2, 0, -2, &[1, 0, 0]),
            pt(1, 0, -1, 0, &[0, 1, 0]),
            pt(-1, -1, 1, 1, &[0, -1, 1]),
        ],
        ("KdP2", "III") => vec![
            pt(-1, 1, -1, -1, &[0, -1, 1]),
            pt(-1, 0, 1, 1, &[1, 1, -1]),
            pt(-1, -1, 0, 1, &[0, 1, 0]),
        ],
        ("KdP2", "IV") => vec![
            pt(1, 2, 0, -2, &[1, 0, 0]),
            pt(1, 2, -1, -2, &[0, 1, 0]),
            pt(-1, 3, -1, -3, &[0, 0, 1]),
        ],
        ("KdP2", "V") => vec![
            pt(1, 2, -1, -2, &[1, 0, 0]),
            pt(1, 2, 0, -2, &[0, 1, 0]),
            pt(-1, 1, -1, -1, &[0, -1, 1]),
        ],
        ("KdP2", "VI") => vec![
            pt(-1, 1, 1, -1, &[0, -1, 1]),
            pt(-1, 1, -1, -1, &[1, 1, -1]),
            pt(1, 2, -1, -2, &[0, 1, 0]),
        ],
        ("KdP3", "I") => vec![
            pt(1, 0, -1, 0, &[1, 0, 0, 0]),
            pt(-1, -1, 0, 1, &[0, 1, 0, 0]),
            pt(-1, 1, -1, -1, &[0, -1, 1, 0]),
            pt(-1, -1, 1, 1, &[-1, 0, 0, 1]),
        ],
        ("KdP3", "II") => vec![
            pt(1, 2, 0, -2, &[1, 0, 0, 0]),
            pt(1, 2, -1, -2, &[0, 1, 0, 0]),
            pt(-1, 1, 1, -1, &[0, -1, 1, 0]),
            pt(-1, 1, -1, -1, &[-1, 0, 0, 1]),
        ],
        _ => return None,
    };
    terms.extend(extra);
    Some(terms)
}

/// Points `sum c_j v_j` over the rays `v_j` of the extended cone with `0 <= c_j <= c_max`
/// and `0 < |w| <= w_max`, together with every `w != 0` point of the box
/// `|w| <= box_w`, `|d_a| <= box_d`.
pub fn sweep_points(
    g: &ToricCY3,
    b: &BraneSpec,
    c_max: i64,
    w_max: i64,
    box_w: i64,
    box_d: i64,
) -> Result<Vec<ExtExponent>> {
    let rays = g.extended_cone(b)?.rays();
    let mut out = BTreeSet::new();
    for c in small_box(rays.len(), 0, c_max) {
        let mut x = vec![0; g.k() + 1];
        for (cj, ray) in c.iter().zip(&rays) {
            for (xi, ri) in x.iter_mut().zip(ray) {
                *xi += cj * ri;
            }
        }
        if x[0] != 0 && x[0].abs() <= w_max {
            out.insert(ExtExponent::from_slice(&x));
        }
    }
    for d in small_box(g.k(), -box_d, box_d) {
        for w in (-box_w..=box_w).filter(|&w| w != 0) {
            out.insert(ExtExponent::new(w, d.clone()));
        }
    }
    Ok(out.into_iter().collect())
}

/// First point where the tabulated formula and the superpotential coefficient differ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Divergence {
    pub point: ExtExponent,
    pub framing: i64,
    pub table: Rational,
    pub computed: Rational,
}

/// Compares `catalog_n` (plus `perturb` at the first point) with `c_coeff` over `points`.
pub fn first_divergence(
    g: &ToricCY3,
    fixture: &PhaseFixture,
    f: i64,
    points: &[ExtExponent],
    perturb: bool,
) -> Result<Option<Divergence>> {
    for (n, e) in points.iter().enumerate() {
        let mut table = catalog_n(fixture, f, e.w, &e.d);
        if perturb && n == 0 {
            table += Rational::one();
        }
        let computed = c_coeff(g, &fixture.brane, f, e)?;
        if table != computed {
            return Ok(Some(Divergence { point: e.clone(), framing: f, table, computed }));
        }
    }
    Ok(None)
}
