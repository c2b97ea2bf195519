//! Exact rational polytopes: vertex and inequality descriptions, conversion
//! between them, polar duality and the lattice-specific tests (reflexivity,
//! facet width, compressedness, simplex volumes).

pub mod dd;
mod lattice_basis;

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{size_limit, Error, Result};

pub use dd::{cone_generators, ConeGenerators};
pub use lattice_basis::{affine_lattice_projection, AffineLatticeProjection};

pub type Rational = BigRational;

/// Dimension cap for the generic hull routines.
pub const MAX_HULL_DIM: usize = 12;
/// Generator/inequality cap for the generic hull routines.
pub const MAX_HULL_GENERATORS: usize = 1024;

/// Integer point.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LatticePoint(pub Vec<i64>);

impl LatticePoint {
    pub fn zero(d: usize) -> Self {
        LatticePoint(vec![0; d])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn add(&self, other: &LatticePoint) -> LatticePoint {
        LatticePoint(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &LatticePoint) -> LatticePoint {
        LatticePoint(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn neg(&self) -> LatticePoint {
        LatticePoint(self.0.iter().map(|a| -a).collect())
    }

    /// Componentwise absolute value.
    pub fn abs(&self) -> LatticePoint {
        LatticePoint(self.0.iter().map(|a| a.abs()).collect())
    }

    pub fn l1_norm(&self) -> i64 {
        self.0.iter().map(|a| a.abs()).sum()
    }

    pub fn support_size(&self) -> usize {
        self.0.iter().filter(|&&a| a != 0).count()
    }

    pub fn to_rational(&self) -> Vec<Rational> {
        self.0.iter().map(|&a| Rational::from_integer(a.into())).collect()
    }
}

impl fmt::Debug for LatticePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

impl From<Vec<i64>> for LatticePoint {
    fn from(v: Vec<i64>) -> Self {
        LatticePoint(v)
    }
}

/// Finite point set whose convex hull is the polytope.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VRep {
    pub dim: usize,
    pub points: Vec<Vec<Rational>>,
}

/// One inequality `<normal, x> <= rhs`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Row {
    pub normal: Vec<Rational>,
    pub rhs: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HRep {
    pub dim: usize,
    pub rows: Vec<Row>,
}

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

fn lcm_of_denominators<'a>(xs: impl Iterator<Item = &'a Rational>) -> BigInt {
    xs.fold(BigInt::one(), |l, x| l.lcm(x.denom()))
}

/// Positive rescaling of `v` to a primitive integer vector.
pub fn primitive_integer(v: &[Rational]) -> (Vec<BigInt>, Rational) {
    let l = lcm_of_denominators(v.iter());
    let mut ints: Vec<BigInt> = v.iter().map(|x| (x * &l).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    if g.is_zero() {
        return (ints, Rational::one());
    }
    for x in ints.iter_mut() {
        *x /= &g;
    }
    // scale factor mapping v to ints
    (ints, Rational::new(l, g))
}

impl Row {
    pub fn new(normal: Vec<Rational>, rhs: Rational) -> Self {
        Row { normal, rhs }
    }

    pub fn from_ints(normal: &[i64], rhs: i64) -> Self {
        Row { normal: normal.iter().map(|&a| rat(a)).collect(), rhs: rat(rhs) }
    }

    /// Rescaled so the normal is a primitive integer vector.
    pub fn canonical(&self) -> Row {
        let (ints, scale) = primitive_integer(&self.normal);
        Row { normal: ints.into_iter().map(Rational::from_integer).collect(), rhs: &self.rhs * scale }
    }

    pub fn integer_normal(&self) -> Vec<BigInt> {
        primitive_integer(&self.normal).0
    }

    pub fn eval(&self, x: &[Rational]) -> Rational {
        self.normal.iter().zip(x).map(|(a, b)| a * b).sum()
    }

    pub fn satisfied_by(&self, x: &[Rational]) -> bool {
        self.eval(x) <= self.rhs
    }

    pub fn tight_at(&self, x: &[Rational]) -> bool {
        self.eval(x) == self.rhs
    }
}

impl VRep {
    pub fn new(dim: usize, points: Vec<Vec<Rational>>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::Empty);
        }
        for p in &points {
            if p.len() != dim {
                return Err(Error::DimensionMismatch { expected: dim, found: p.len() });
            }
        }
        Ok(VRep { dim, points })
    }

    pub fn from_lattice(dim: usize, points: &[LatticePoint]) -> Result<Self> {
        VRep::new(dim, points.iter().map(LatticePoint::to_rational).collect())
    }

    pub fn from_ints(dim: usize, points: &[Vec<i64>]) -> Result<Self> {
        VRep::new(dim, points.iter().map(|p| p.iter().map(|&a| rat(a)).collect()).collect())
    }

    /// Sorted and deduplicated copy.
    pub fn normalized(&self) -> VRep {
        let mut pts = self.points.clone();
        pts.sort();
        pts.dedup();
        VRep { dim: self.dim, points: pts }
    }

    pub fn same_point_set(&self, other: &VRep) -> bool {
        self.dim == other.dim && self.normalized().points == other.normalized().points
    }

    pub fn is_lattice(&self) -> bool {
        self.points.iter().all(|p| p.iter().all(|x| x.is_integer()))
    }

    pub fn lattice_points(&self) -> Result<Vec<LatticePoint>> {
        self.points
            .iter()
            .map(|p| {
                p.iter()
                    .map(|x| {
                        if x.is_integer() {
                            x.to_integer().to_i64().ok_or(Error::NotLattice)
                        } else {
                            Err(Error::NotLattice)
                        }
                    })
                    .collect::<Result<Vec<i64>>>()
                    .map(LatticePoint)
            })
            .collect()
    }

    /// Vertices of the convex hull of the points.
    pub fn vertices(&self) -> Result<VRep> {
        vertex_enumeration(&dual_description(self)?)
    }
}

impl HRep {
    pub fn new(dim: usize, rows: Vec<Row>) -> Result<Self> {
        for r in &rows {
            if r.normal.len() != dim {
                return Err(Error::DimensionMismatch { expected: dim, found: r.normal.len() });
            }
        }
        Ok(HRep { dim, rows })
    }

    /// Primitive integer normals, rows sorted lexicographically, duplicates removed.
    pub fn canonical(&self) -> HRep {
        let mut rows: Vec<Row> = self.rows.iter().map(Row::canonical).collect();
        rows.sort();
        rows.dedup();
        HRep { dim: self.dim, rows }
    }

    pub fn contains(&self, x: &[Rational]) -> bool {
        self.rows.iter().all(|r| r.satisfied_by(x))
    }

    /// The equality `<normal, x> = rhs` as a pair of inequalities.
    pub fn push_equality(&mut self, normal: Vec<Rational>, rhs: Rational) {
        let neg: Vec<Rational> = normal.iter().map(|a| -a).collect();
        self.rows.push(Row::new(normal, rhs.clone()));
        self.rows.push(Row::new(neg, -rhs));
    }
}

fn integer_row(values: &[Rational]) -> Vec<BigInt> {
    primitive_integer(values).0
}

/// Rank of a set of rational vectors (exact Gaussian elimination).
pub fn rank(vectors: &[Vec<Rational>]) -> usize {
    let mut m: Vec<Vec<Rational>> = vectors.to_vec();
    let cols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let pivot = m[r][c].clone();
        for i in r + 1..m.len() {
            if m[i][c].is_zero() {
                continue;
            }
            let f = &m[i][c] / &pivot;
            for j in c..cols {
                let t = &f * &m[r][j];
                m[i][j] -= t;
            }
        }
        r += 1;
        if r == m.len() {
            break;
        }
    }
    r
}

/// Dimension of the affine hull of a point set (-1 encoded as `None` for the empty set).
pub fn affine_dimension(points: &[Vec<Rational>]) -> Option<usize> {
    let first = points.first()?;
    let diffs: Vec<Vec<Rational>> =
        points[1..].iter().map(|p| p.iter().zip(first).map(|(a, b)| a - b).collect()).collect();
    Some(if diffs.is_empty() { 0 } else { rank(&diffs) })
}

fn check_hull_size(dim: usize, count: usize) -> Result<()> {
    if dim > MAX_HULL_DIM || count > MAX_HULL_GENERATORS {
        return Err(size_limit(format!(
            "hull computation limited to dimension {MAX_HULL_DIM} and {MAX_HULL_GENERATORS} generators (got {dim}, {count})"
        )));
    }
    Ok(())
}

/// Irredundant inequality description of a full-dimensional polytope.
pub fn dual_description(v: &VRep) -> Result<HRep> {
    check_hull_size(v.dim, v.points.len())?;
    if v.points.is_empty() {
        return Err(Error::Empty);
    }
    // y = (b, c) with b + <c, x> >= 0 for every generator x.
    let rows: Vec<Vec<BigInt>> = v
        .points
        .iter()
        .map(|p| {
            let mut h = Vec::with_capacity(v.dim + 1);
            h.push(Rational::one());
            h.extend(p.iter().cloned());
            integer_row(&h)
        })
        .collect();
    let cone = cone_generators(v.dim + 1, &rows);
    if !cone.lineality.is_empty() {
        let dim = affine_dimension(&v.points).unwrap_or(0);
        return Err(Error::Degenerate { dim, ambient: v.dim });
    }
    let mut out = Vec::new();
    for ray in cone.rays {
        if ray[1..].iter().all(Zero::is_zero) {
            continue;
        }
        let normal: Vec<Rational> = ray[1..].iter().map(|c| Rational::from_integer(-c)).collect();
        out.push(Row::new(normal, Rational::from_integer(ray[0].clone())).canonical());
    }
    out.sort();
    Ok(HRep { dim: v.dim, rows: out })
}

/// Vertices of a bounded polyhedron; equalities may be given as inequality pairs.
pub fn vertex_enumeration(h: &HRep) -> Result<VRep> {
    check_hull_size(h.dim, h.rows.len())?;
    // y = (lambda, x) with lambda * rhs - <a, x> >= 0 and lambda >= 0.
    let mut rows: Vec<Vec<BigInt>> = h
        .rows
        .iter()
        .map(|r| {
            let mut v = Vec::with_capacity(h.dim + 1);
            v.push(r.rhs.clone());
            v.extend(r.normal.iter().map(|a| -a));
            integer_row(&v)
        })
        .collect();
    let mut lambda = vec![BigInt::zero(); h.dim + 1];
    lambda[0] = BigInt::one();
    rows.push(lambda);
    let cone = cone_generators(h.dim + 1, &rows);
    if !cone.lineality.is_empty() {
        return Err(Error::Unbounded);
    }
    let mut pts = Vec::new();
    for ray in &cone.rays {
        if ray[0].is_zero() {
            return Err(Error::Unbounded);
        }
        let l = Rational::from_integer(ray[0].clone());
        pts.push(ray[1..].iter().map(|x| Rational::from_integer(x.clone()) / &l).collect());
    }
    if pts.is_empty() {
        return Err(Error::Empty);
    }
    let out = VRep { dim: h.dim, points: pts };
    Ok(out.normalized())
}

/// Vertices of the polar dual: the rows `a_i / b_i`.
pub fn polar_dual(h: &HRep) -> Result<VRep> {
    let mut pts = Vec::with_capacity(h.rows.len());
    for r in &h.rows {
        if !r.rhs.is_positive() {
            return Err(Error::OriginNotInterior);
        }
        pts.push(r.normal.iter().map(|a| a / &r.rhs).collect());
    }
    VRep::new(h.dim, pts).map(|v| v.normalized())
}

/// Inequality description from a vertex description of the polar.
pub fn polar_hrep(v: &VRep) -> HRep {
    HRep { dim: v.dim, rows: v.points.iter().map(|p| Row::new(p.clone(), Rational::one())).collect() }
}

/// All facets have integer normals with right-hand side exactly one.
pub fn is_reflexive(h: &HRep) -> Result<bool> {
    let mut ok = true;
    for r in &h.rows {
        if !r.rhs.is_positive() {
            return Err(Error::OriginNotInterior);
        }
        if !r.normal.iter().all(|a| (a / &r.rhs).is_integer()) {
            ok = false;
        }
    }
    Ok(ok)
}

/// `max <a,x> - min <a,x>` over the given points for a primitive integer normal.
pub fn facet_width(points: &[LatticePoint], normal: &[i64]) -> Result<BigInt> {
    let vals: Vec<BigInt> = points
        .iter()
        .map(|p| {
            if p.dim() != normal.len() {
                return Err(Error::DimensionMismatch { expected: normal.len(), found: p.dim() });
            }
            Ok(p.0.iter().zip(normal).map(|(&x, &a)| BigInt::from(x) * a).sum())
        })
        .collect::<Result<_>>()?;
    let max = vals.iter().max().ok_or(Error::Empty)?;
    let min = vals.iter().min().ok_or(Error::Empty)?;
    Ok(max - min)
}

/// Facet width one for every facet.
pub fn is_compressed(v: &VRep, h: &HRep) -> Result<bool> {
    let pts = v.lattice_points()?;
    for r in &h.rows {
        let normal: Vec<i64> = r
            .integer_normal()
            .iter()
            .map(|x| x.to_i64().ok_or_else(|| size_limit("facet normal exceeds 64 bits")))
            .collect::<Result<_>>()?;
        if facet_width(&pts, &normal)? != BigInt::one() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Absolute determinant of a square integer matrix (fraction-free elimination).
pub fn integer_determinant(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a: Vec<Vec<BigInt>> = m.to_vec();
    let mut sign = 1i32;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(p) => {
                    a.swap(k, p);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if sign < 0 {
        -d
    } else {
        d
    }
}

/// `|det|` of the edge vectors of a lattice simplex: its normalized volume.
pub fn simplex_normalized_volume(simplex: &[LatticePoint]) -> Result<BigUint> {
    let d = simplex.first().map_or(0, LatticePoint::dim);
    if simplex.len() != d + 1 {
        return Err(Error::InvalidArgument(format!(
            "a simplex in dimension {d} needs {} vertices, got {}",
            d + 1,
            simplex.len()
        )));
    }
    let m: Vec<Vec<BigInt>> = simplex[1..]
        .iter()
        .map(|p| p.0.iter().zip(&simplex[0].0).map(|(a, b)| BigInt::from(a - b)).collect())
        .collect();
    let det = integer_determinant(&m);
    if det.is_zero() {
        return Err(Error::DegenerateSimplex);
    }
    Ok(det.abs().to_biguint().expect("absolute value is nonnegative"))
}

// JSON forms ----------------------------------------------------------------

#[derive(Serialize, Deserialize)]
struct VRepJson {
    dim: usize,
    points: Vec<Vec<String>>,
}

#[derive(Serialize, Deserialize)]
struct RowJson {
    normal: Vec<String>,
    rhs: String,
}

#[derive(Serialize, Deserialize)]
struct HRepJson {
    dim: usize,
    rows: Vec<RowJson>,
}

fn parse_rational(s: &str) -> Result<Rational> {
    Rational::from_str(s.trim()).map_err(|_| Error::Parse(format!("not a rational: `{s}`")))
}

impl VRep {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(VRepJson {
            dim: self.dim,
            points: self.points.iter().map(|p| p.iter().map(ToString::to_string).collect()).collect(),
        })
        .expect("plain data serializes")
    }

    pub fn from_json(value: &serde_json::Value) -> Result<VRep> {
        let j: VRepJson = serde_json::from_value(value.clone()).map_err(|e| Error::Parse(e.to_string()))?;
        let points = j
            .points
            .iter()
            .map(|p| p.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        VRep::new(j.dim, points)
    }
}

impl HRep {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(HRepJson {
            dim: self.dim,
            rows: self
                .rows
                .iter()
                .map(|r| RowJson { normal: r.normal.iter().map(ToString::to_string).collect(), rhs: r.rhs.to_string() })
                .collect(),
        })
        .expect("plain data serializes")
    }

    pub fn from_json(value: &serde_json::Value) -> Result<HRep> {
        let j: HRepJson = serde_json::from_value(value.clone()).map_err(|e| Error::Parse(e.to_string()))?;
        let rows = j
            .rows
            .iter()
            .map(|r| {
                Ok(Row::new(
                    r.normal.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>>>()?,
                    parse_rational(&r.rhs)?,
                ))
            })
            .collect::<Result<Vec<_>>>()?;
        HRep::new(j.dim, rows)
    }
}
