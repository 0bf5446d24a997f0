//! Toric Calabi-Yau threefolds, framed branes, pairings and cone enumeration.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg;
use crate::series::{ExtExponent, Grading};

/// A smooth toric CY3 given by its charge matrix and fan. Ray indices are 1-based.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ToricCY3 {
    pub name: String,
    /// Rows `l^(1)..l^(k)`, each of length `r`.
    pub charge: Vec<Vec<i64>>,
    pub max_cones: Vec<[usize; 3]>,
    pub rays: Option<Vec<[i64; 3]>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BraneKind {
    Outer,
    Inner,
}

/// Brane on the edge `{i2, i3}` with `{i1, i2, i3}` a maximal cone; inner branes also
/// carry the second cone `{i2, i3, i4}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BraneSpec {
    pub label: String,
    pub kind: BraneKind,
    pub i1: usize,
    pub i2: usize,
    pub i3: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub i4: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    ChargeShape { row: usize, len: usize, expected: usize },
    CalabiYau { row: usize, sum: i64 },
    Rank { rank: usize, expected: usize },
    ConeIndex { cone: usize, index: usize },
    ConeRepeated { cone: usize },
    RayCount { count: usize, expected: usize },
    RayRelation { row: usize },
    ConeDeterminant { cone: usize },
    NoCovector,
    BraneIndex { index: usize },
    BraneRepeated,
    BraneCone { cone: [usize; 3] },
    BraneKind(String),
    BraneMinor,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::ChargeShape { row, len, expected } => {
                write!(f, "charge row {row} has length {len}, expected {expected}")
            }
            Self::CalabiYau { row, sum } => write!(f, "charge row {row} sums to {sum}, not 0"),
            Self::Rank { rank, expected } => {
                write!(f, "charge matrix has rank {rank}, expected {expected}")
            }
            Self::ConeIndex { cone, index } => {
                write!(f, "cone {cone} refers to ray {index}, out of range")
            }
            Self::ConeRepeated { cone } => write!(f, "cone {cone} repeats a ray"),
            Self::RayCount { count, expected } => {
                write!(f, "{count} rays given, expected {expected}")
            }
            Self::RayRelation { row } => {
                write!(f, "charge row {row} is not a relation among the rays")
            }
            Self::ConeDeterminant { cone } => write!(f, "cone {cone} is not unimodular"),
            Self::NoCovector => write!(f, "rays do not lie on a common affine plane"),
            Self::BraneIndex { index } => write!(f, "brane ray index {index} out of range"),
            Self::BraneRepeated => write!(f, "brane ray indices are not distinct"),
            Self::BraneCone { cone } => {
                write!(f, "{{{},{},{}}} is not a maximal cone", cone[0], cone[1], cone[2])
            }
            Self::BraneKind(msg) => write!(f, "{msg}"),
            Self::BraneMinor => write!(f, "charge minor off the brane cone is not unimodular"),
        }
    }
}

/// Itemized validation failures; empty when valid.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_ok() {
            return write!(f, "valid");
        }
        for v in &self.violations {
            writeln!(f, "- {v}")?;
        }
        Ok(())
    }
}

/// Unimodular simplicial cone `{x : rows x >= 0}`, enumerated as `x = inverse c`, `c >= 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialCone {
    rows: Vec<Vec<i64>>,
    inverse: Vec<Vec<i64>>,
}

impl SimplicialCone {
    pub fn new(rows: Vec<Vec<i64>>) -> Result<Self> {
        let inverse = linalg::integer_inverse(&rows)
            .ok_or_else(|| Error::Geometry(format!("cone inequalities {rows:?} are not unimodular")))?;
        Ok(Self { rows, inverse })
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Ray generators (columns of the inverse).
    pub fn rays(&self) -> Vec<Vec<i64>> {
        (0..self.dim())
            .map(|j| self.inverse.iter().map(|row| row[j]).collect())
            .collect()
    }

    pub fn contains(&self, x: &[i64]) -> bool {
        self.rows
            .iter()
            .all(|row| row.iter().zip(x).map(|(a, b)| a * b).sum::<i64>() >= 0)
    }

    /// All lattice points of weighted grade at most `budget`.
    pub fn enumerate(&self, weights: &[i64], budget: i64) -> Result<Vec<Vec<i64>>> {
        let h: Vec<i64> = self
            .rays()
            .iter()
            .map(|ray| ray.iter().zip(weights).map(|(a, b)| a * b).sum())
            .collect();
        if let Some(pos) = h.iter().position(|&x| x <= 0) {
            return Err(Error::Config(format!(
                "grading {weights:?} is not positive on cone ray {:?}",
                self.rays()[pos]
            )));
        }
        let mut out = Vec::new();
        let mut c = vec![0i64; self.dim()];
        self.walk(&h, 0, budget, &mut c, &mut out);
        Ok(out)
    }

    fn walk(&self, h: &[i64], j: usize, budget: i64, c: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if j == h.len() {
            out.push(
                self.inverse
                    .iter()
                    .map(|row| row.iter().zip(c.iter()).map(|(a, b)| a * b).sum())
                    .collect(),
            );
            return;
        }
        let mut n = 0;
        while n * h[j] <= budget {
            c[j] = n;
            self.walk(h, j + 1, budget - n * h[j], c, out);
            n += 1;
        }
        c[j] = 0;
    }
}

impl ToricCY3 {
    pub fn new(
        name: impl Into<String>,
        charge: Vec<Vec<i64>>,
        max_cones: Vec<[usize; 3]>,
        rays: Option<Vec<[i64; 3]>>,
    ) -> Self {
        Self {
            name: name.into(),
            charge,
            max_cones,
            rays,
        }
    }

    pub fn r(&self) -> usize {
        self.charge.first().map_or(0, Vec::len)
    }

    pub fn k(&self) -> usize {
        self.charge.len()
    }

    fn check_index(&self, i: usize) -> Result<()> {
        if i == 0 || i > self.r() {
            return Err(Error::Index { index: i, max: self.r() });
        }
        Ok(())
    }

    /// Column `i` of the charge matrix.
    pub fn column(&self, i: usize) -> Vec<i64> {
        self.charge.iter().map(|row| row[i - 1]).collect()
    }

    /// `<D_i*, beta> = sum_a d_a l_i^(a)`.
    pub fn pairing(&self, beta: &[i64], i: usize) -> Result<i64> {
        self.check_index(i)?;
        Ok(self.pairing_unchecked(beta, i))
    }

    fn pairing_unchecked(&self, beta: &[i64], i: usize) -> i64 {
        self.charge.iter().zip(beta).map(|(row, d)| row[i - 1] * d).sum()
    }

    /// All pairings `<D_i*, beta>` for `i = 1..r`, as a 0-based vector.
    pub fn pairings(&self, beta: &[i64]) -> Vec<i64> {
        (1..=self.r()).map(|i| self.pairing_unchecked(beta, i)).collect()
    }

    /// Whether `set` spans a cone of the fan (a face of some maximal cone).
    pub fn is_cone(&self, set: &[usize]) -> bool {
        set.is_empty() || self.max_cones.iter().any(|c| set.iter().all(|i| c.contains(i)))
    }

    /// Anticone test: the negative support of `beta` must span a cone.
    pub fn is_effective(&self, beta: &[i64]) -> bool {
        let negative: Vec<usize> = self
            .pairings(beta)
            .iter()
            .enumerate()
            .filter(|(_, &c)| c < 0)
            .map(|(i, _)| i + 1)
            .collect();
        self.is_cone(&negative)
    }

    pub fn validate_geometry(&self) -> ValidationReport {
        let mut v = Vec::new();
        let r = self.r();
        let k = self.k();
        for (a, row) in self.charge.iter().enumerate() {
            if row.len() != r {
                v.push(Violation::ChargeShape { row: a + 1, len: row.len(), expected: r });
            }
        }
        if !v.is_empty() {
            return ValidationReport { violations: v };
        }
        for (a, row) in self.charge.iter().enumerate() {
            let sum: i64 = row.iter().sum();
            if sum != 0 {
                v.push(Violation::CalabiYau { row: a + 1, sum });
            }
        }
        let rank = linalg::rank(&self.charge);
        if rank != k || r != k + 3 {
            v.push(Violation::Rank { rank, expected: r.saturating_sub(3) });
        }
        for (n, cone) in self.max_cones.iter().enumerate() {
            for &i in cone {
                if i == 0 || i > r {
                    v.push(Violation::ConeIndex { cone: n + 1, index: i });
                }
            }
            if cone[0] == cone[1] || cone[1] == cone[2] || cone[0] == cone[2] {
                v.push(Violation::ConeRepeated { cone: n + 1 });
            }
        }
        if let Some(rays) = &self.rays {
            if rays.len() != r {
                v.push(Violation::RayCount { count: rays.len(), expected: r });
            } else {
                for (a, row) in self.charge.iter().enumerate() {
                    let ok = (0..3).all(|x| row.iter().zip(rays).map(|(l, v)| l * v[x]).sum::<i64>() == 0);
                    if !ok {
                        v.push(Violation::RayRelation { row: a + 1 });
                    }
                }
                let mut covector = None;
                for (n, cone) in self.max_cones.iter().enumerate() {
                    if cone.iter().any(|&i| i == 0 || i > r) {
                        continue;
                    }
                    let m: Vec<Vec<i64>> = cone.iter().map(|&i| rays[i - 1].to_vec()).collect();
                    if !linalg::is_unimodular(&m) {
                        v.push(Violation::ConeDeterminant { cone: n + 1 });
                    } else if covector.is_none() {
                        covector = linalg::solve(&m, &[1, 1, 1]).and_then(|s| {
                            s.iter().map(linalg::rational_to_i64).collect::<Option<Vec<i64>>>()
                        });
                    }
                }
                let flat = covector.is_some_and(|m| {
                    rays.iter().all(|v| v.iter().zip(&m).map(|(a, b)| a * b).sum::<i64>() == 1)
                });
                if !flat {
                    v.push(Violation::NoCovector);
                }
            }
        }
        ValidationReport { violations: v }
    }

    /// Validates the geometry together with a brane.
    pub fn validate(&self, b: &BraneSpec) -> ValidationReport {
        let mut report = self.validate_geometry();
        if !report.is_ok() {
            return report;
        }
        let v = &mut report.violations;
        let r = self.r();
        let mut idx = vec![b.i1, b.i2, b.i3];
        idx.extend(b.i4);
        for &i in &idx {
            if i == 0 || i > r {
                v.push(Violation::BraneIndex { index: i });
            }
        }
        if !v.is_empty() {
            return report;
        }
        if idx.iter().collect::<BTreeSet<_>>().len() != idx.len() {
            v.push(Violation::BraneRepeated);
            return report;
        }
        if !self.is_max_cone(&[b.i1, b.i2, b.i3]) {
            v.push(Violation::BraneCone { cone: [b.i1, b.i2, b.i3] });
        }
        let edge_cones = self
            .max_cones
            .iter()
            .filter(|c| c.contains(&b.i2) && c.contains(&b.i3))
            .count();
        match (b.kind, b.i4) {
            (BraneKind::Outer, Some(_)) => {
                v.push(Violation::BraneKind("outer brane must not carry i4".into()))
            }
            (BraneKind::Outer, None) if edge_cones != 1 => v.push(Violation::BraneKind(
                "outer brane edge bounds more than one maximal cone".into(),
            )),
            (BraneKind::Inner, None) => {
                v.push(Violation::BraneKind("inner brane needs i4".into()))
            }
            (BraneKind::Inner, Some(i4)) if !self.is_max_cone(&[b.i2, b.i3, i4]) => {
                v.push(Violation::BraneCone { cone: [b.i2, b.i3, i4] })
            }
            _ => {}
        }
        if v.is_empty() && !linalg::is_unimodular(&self.off_brane_minor(b)) {
            v.push(Violation::BraneMinor);
        }
        report
    }

    fn is_max_cone(&self, set: &[usize; 3]) -> bool {
        self.max_cones.iter().any(|c| set.iter().all(|i| c.contains(i)))
    }

    /// Rays not in `{i1, i2, i3}`, ascending.
    pub fn off_brane_rays(&self, b: &BraneSpec) -> Vec<usize> {
        (1..=self.r()).filter(|&i| i != b.i1 && i != b.i2 && i != b.i3).collect()
    }

    /// The k x k minor of the charge matrix on the rays off the brane cone (row per ray).
    pub fn off_brane_minor(&self, b: &BraneSpec) -> Vec<Vec<i64>> {
        self.off_brane_rays(b).into_iter().map(|i| self.column(i)).collect()
    }

    /// Extended pairing `<D_i*, (w, beta)>` for `i = 1..r+2`.
    pub fn extended_pairing(&self, b: &BraneSpec, f: i64, e: &ExtExponent, i: usize) -> Result<i64> {
        let r = self.r();
        match i {
            _ if i == r + 1 => Ok(e.w),
            _ if i == r + 2 => Ok(-e.w),
            _ => {
                self.check_index(i)?;
                Ok(e.w * b.l0(r, f)[i - 1] + self.pairing_unchecked(&e.d, i))
            }
        }
    }

    /// Extended pairings for `i = 1..r` as a 0-based vector.
    pub fn extended_pairings(&self, b: &BraneSpec, f: i64, e: &ExtExponent) -> Vec<i64> {
        let l0 = b.l0(self.r(), f);
        self.pairings(&e.d)
            .into_iter()
            .zip(l0)
            .map(|(c, l)| c + e.w * l)
            .collect()
    }

    /// The curve class `alpha` of an inner brane: coordinates 1 at `i1` and `i4`,
    /// 0 off `{i1, i2, i3, i4}`.
    pub fn curve_class_alpha(&self, b: &BraneSpec) -> Result<Vec<i64>> {
        let i4 = match (b.kind, b.i4) {
            (BraneKind::Inner, Some(i4)) => i4,
            _ => return Err(Error::Geometry(format!("brane {} is not inner", b.label))),
        };
        let rays = self.off_brane_rays(b);
        let minor = self.off_brane_minor(b);
        let target: Vec<i64> = rays.iter().map(|&i| i64::from(i == i4)).collect();
        let alpha = linalg::solve(&minor, &target)
            .and_then(|s| s.iter().map(linalg::rational_to_i64).collect::<Option<Vec<_>>>())
            .ok_or_else(|| Error::Geometry(format!("no integral curve class for brane {}", b.label)))?;
        if self.pairing_unchecked(&alpha, b.i1) != 1 {
            return Err(Error::Geometry(format!(
                "curve class of brane {} does not meet D_{} once",
                b.label, b.i1
            )));
        }
        if !self.is_effective(&alpha) {
            return Err(Error::Geometry(format!(
                "curve class of brane {} is not effective",
                b.label
            )));
        }
        Ok(alpha)
    }

    /// `n = -<D_{i2}*, alpha> - 1`.
    pub fn inner_n(&self, b: &BraneSpec) -> Result<i64> {
        let alpha = self.curve_class_alpha(b)?;
        Ok(-self.pairing_unchecked(&alpha, b.i2) - 1)
    }

    /// The cone `L~_eff(L)` including its `w = 0` face.
    pub fn extended_cone(&self, b: &BraneSpec) -> Result<SimplicialCone> {
        let rows = (1..=self.r())
            .filter(|&i| i != b.i2 && i != b.i3)
            .map(|i| {
                let mut row = vec![i64::from(i == b.i1)];
                row.extend(self.column(i));
                row
            })
            .collect();
        SimplicialCone::new(rows)
    }

    /// The Mori cone as a union of unimodular pieces, one per maximal cone.
    pub fn mori_pieces(&self) -> Result<Vec<SimplicialCone>> {
        self.max_cones
            .iter()
            .map(|cone| {
                let rows = (1..=self.r())
                    .filter(|i| !cone.contains(i))
                    .map(|i| self.column(i))
                    .collect();
                SimplicialCone::new(rows)
            })
            .collect()
    }

    /// Points of `L~_eff(L)` with `w != 0` and grade at most `order`, sorted.
    pub fn enumerate_extended(
        &self,
        b: &BraneSpec,
        grading: &Grading,
        order: i64,
    ) -> Result<Vec<ExtExponent>> {
        let cone = self.extended_cone(b)?;
        let mut pts: Vec<ExtExponent> = cone
            .enumerate(grading.weights(), order)?
            .iter()
            .map(|x| ExtExponent::from_slice(x))
            .filter(|e| e.w != 0)
            .collect();
        pts.sort();
        Ok(pts)
    }

    /// Effective classes (including 0) of closed grade at most `order`, sorted.
    pub fn enumerate_effective(&self, grading: &Grading, order: i64) -> Result<Vec<Vec<i64>>> {
        let mut out = BTreeSet::new();
        for piece in self.mori_pieces()? {
            out.extend(piece.enumerate(&grading.weights()[1..], order)?);
        }
        Ok(out.into_iter().collect())
    }

    /// Exponents that must have positive grade for every enumeration over this brane.
    pub fn grading_requirements(&self, b: Option<&BraneSpec>) -> Result<Vec<ExtExponent>> {
        let mut req = Vec::new();
        for piece in self.mori_pieces()? {
            req.extend(piece.rays().into_iter().map(ExtExponent::closed));
        }
        if let Some(b) = b {
            req.extend(self.extended_cone(b)?.rays().iter().map(|x| ExtExponent::from_slice(x)));
            if b.kind == BraneKind::Inner {
                req.push(ExtExponent::new(-1, self.curve_class_alpha(b)?));
            }
        }
        Ok(req)
    }

    /// Smallest grading positive on the cones attached to `b`.
    pub fn default_grading(&self, b: Option<&BraneSpec>) -> Result<Grading> {
        search_grading(self.k(), &self.grading_requirements(b)?)
    }
}

impl BraneSpec {
    pub fn outer(label: impl Into<String>, i1: usize, i2: usize, i3: usize) -> Self {
        Self { label: label.into(), kind: BraneKind::Outer, i1, i2, i3, i4: None }
    }

    pub fn inner(label: impl Into<String>, i1: usize, i2: usize, i3: usize, i4: usize) -> Self {
        Self { label: label.into(), kind: BraneKind::Inner, i1, i2, i3, i4: Some(i4) }
    }

    /// Open charge vector: 1 at `i1`, `f` at `i2`, `-f-1` at `i3`.
    pub fn l0(&self, r: usize, f: i64) -> Vec<i64> {
        let mut l = vec![0; r];
        l[self.i1 - 1] = 1;
        l[self.i2 - 1] = f;
        l[self.i3 - 1] = -f - 1;
        l
    }

    /// Derivative of the open charge vector in the framing.
    pub fn framing_direction(&self, r: usize) -> Vec<i64> {
        let mut l = vec![0; r];
        l[self.i2 - 1] = 1;
        l[self.i3 - 1] = -1;
        l
    }
}

const MAX_GRADING_SUM_PER_VAR: i64 = 12;

/// Searches weight vectors by increasing sum for one making every `required` exponent
/// positive.
pub fn search_grading(k: usize, required: &[ExtExponent]) -> Result<Grading> {
    let n = k + 1;
    let ok = |w: &[i64]| {
        let g = Grading::new(w.to_vec()).expect("positive weights");
        required.iter().all(|e| g.grade(e) > 0)
    };
    for total in n as i64..=n as i64 * MAX_GRADING_SUM_PER_VAR {
        let mut w = vec![1i64; n];
        if let Some(found) = compositions(&mut w, 0, total - n as i64, &ok) {
            return Grading::new(found);
        }
    }
    Err(Error::Config("no positive grading found within the search bound".into()))
}

fn compositions<F: Fn(&[i64]) -> bool>(w: &mut Vec<i64>, j: usize, left: i64, ok: &F) -> Option<Vec<i64>> {
    if j == w.len() - 1 {
        w[j] = 1 + left;
        let hit = ok(w).then(|| w.clone());
        w[j] = 1;
        return hit;
    }
    for extra in 0..=left {
        w[j] = 1 + extra;
        if let Some(hit) = compositions(w, j + 1, left - extra, ok) {
            return Some(hit);
        }
    }
    w[j] = 1;
    None
}
