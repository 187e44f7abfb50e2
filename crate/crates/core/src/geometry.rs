//! Newton polytopes: vertices, facets, recession cones, lattice points and
//! the Ehrhart-based constants entering the doubling-depth bound.

use crate::laurent::LaurentPoly;
use crate::simplex::{solve_lp, LpOutcome};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum GeometryError {
    #[error("zero polynomial has no Newton polytope")]
    ZeroPolynomial,
    #[error("point {0:?} lies outside the polytope")]
    PointOutside(Vec<i64>),
    #[error("operation requires a full-dimensional polytope (dim {dim} < {nvars})")]
    Degenerate { dim: usize, nvars: usize },
}

/// A facet inequality `normal . x <= offset` with primitive integer normal.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Facet {
    pub normal: Vec<i64>,
    pub offset: i64,
}

/// Newton polytope of a Laurent polynomial.
#[derive(Clone, Debug)]
pub struct NewtonPolytope {
    pub nvars: usize,
    pub dim: usize,
    pub vertices: Vec<Vec<i64>>,
    /// Complete facet description when `dim == nvars`; for degenerate
    /// polytopes this lists the affine-hull equalities (as inequality pairs)
    /// and, for segments, the two end cuts.
    pub facets: Vec<Facet>,
    pub lattice_points: Vec<Vec<i64>>,
}

/// Closed recession cone `{x : a . x <= 0 for all listed normals a}`.
#[derive(Clone, Debug)]
pub struct Cone {
    pub inequalities: Vec<Vec<i64>>,
    pub dim: usize,
}

/// Constants for the lopsidedness depth bound.
#[derive(Clone, Debug)]
pub struct PolytopeStats {
    /// Maximum coordinate width of the polytope.
    pub c_f: u64,
    /// max_t E(t)/t^n together with the Ehrhart leading coefficient.
    pub d_f: BigRational,
    /// Normalized volume (Ehrhart leading coefficient).
    pub volume: BigRational,
    /// The interpolated Ehrhart polynomial, constant term first.
    pub ehrhart: Vec<BigRational>,
}

fn to_rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Exact rank of an integer matrix (rows of equal length).
fn rank_rows(rows: &[Vec<i64>]) -> usize {
    let mut m: Vec<Vec<BigRational>> = rows
        .iter()
        .map(|r| r.iter().map(|v| to_rat(*v)).collect())
        .collect();
    let ncols = m.first().map(|r| r.len()).unwrap_or(0);
    let mut rank = 0;
    let mut col = 0;
    while rank < m.len() && col < ncols {
        if let Some(p) = (rank..m.len()).find(|&i| !m[i][col].is_zero()) {
            m.swap(rank, p);
            let pivot = m[rank][col].clone();
            for i in 0..m.len() {
                if i != rank && !m[i][col].is_zero() {
                    let f = &m[i][col] / &pivot;
                    for j in col..ncols {
                        let d = &m[rank][j] * &f;
                        m[i][j] = &m[i][j] - d;
                    }
                }
            }
            rank += 1;
        }
        col += 1;
    }
    rank
}

fn gcd_all(values: impl IntoIterator<Item = i64>) -> i64 {
    let mut g: i64 = 0;
    for v in values {
        g = g.gcd(&v.abs());
    }
    g
}

/// Is `p` a vertex of the point set, i.e. not in the convex hull of the rest?
fn is_vertex_lp(points: &[Vec<i64>], idx: usize) -> bool {
    let n = points[idx].len();
    let others: Vec<&Vec<i64>> = points
        .iter()
        .enumerate()
        .filter(|(i, _)| *i != idx)
        .map(|(_, p)| p)
        .collect();
    if others.is_empty() {
        return true;
    }
    // Feasibility of sum(lambda_j p_j) = p, sum lambda = 1, lambda >= 0.
    let k = others.len();
    let mut a_eq: Vec<Vec<BigRational>> = vec![vec![BigRational::zero(); k]; n + 1];
    for (j, q) in others.iter().enumerate() {
        for i in 0..n {
            a_eq[i][j] = to_rat(q[i]);
        }
        a_eq[n][j] = BigRational::one();
    }
    let mut b_eq: Vec<BigRational> = points[idx].iter().map(|v| to_rat(*v)).collect();
    b_eq.push(BigRational::one());
    let c = vec![BigRational::zero(); k];
    matches!(solve_lp(&c, &[], &[], &a_eq, &b_eq), LpOutcome::Infeasible)
}

/// 2-d convex hull, counterclockwise, via the monotone chain.
fn hull_2d(points: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let mut pts: Vec<(i64, i64)> = points.iter().map(|p| (p[0], p[1])).collect();
    pts.sort();
    pts.dedup();
    if pts.len() <= 2 {
        return pts.into_iter().map(|(a, b)| vec![a, b]).collect();
    }
    let cross = |o: (i64, i64), a: (i64, i64), b: (i64, i64)| -> i128 {
        (a.0 - o.0) as i128 * (b.1 - o.1) as i128 - (a.1 - o.1) as i128 * (b.0 - o.0) as i128
    };
    let mut lower: Vec<(i64, i64)> = Vec::new();
    for &p in &pts {
        while lower.len() >= 2 && cross(lower[lower.len() - 2], lower[lower.len() - 1], p) <= 0 {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<(i64, i64)> = Vec::new();
    for &p in pts.iter().rev() {
        while upper.len() >= 2 && cross(upper[upper.len() - 2], upper[upper.len() - 1], p) <= 0 {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower.into_iter().map(|(a, b)| vec![a, b]).collect()
}

/// Generalized cross product: the (unique up to sign) integer normal to the
/// hyperplane through `pts` (n points in n-space), via cofactor expansion.
fn hyperplane_normal(pts: &[&Vec<i64>]) -> Option<Vec<i64>> {
    let n = pts[0].len();
    debug_assert_eq!(pts.len(), n);
    // Rows: pts[i] - pts[0] for i in 1..n (n-1 rows of n columns).
    let rows: Vec<Vec<BigInt>> = (1..n)
        .map(|i| {
            (0..n)
                .map(|j| BigInt::from(pts[i][j] - pts[0][j]))
                .collect()
        })
        .collect();
    // normal_j = (-1)^j * det(rows without column j)
    let mut normal = Vec::with_capacity(n);
    for j in 0..n {
        let minor: Vec<Vec<BigInt>> = rows
            .iter()
            .map(|r| {
                r.iter()
                    .enumerate()
                    .filter(|(c, _)| *c != j)
                    .map(|(_, v)| v.clone())
                    .collect()
            })
            .collect();
        let d = det_bigint(&minor);
        normal.push(if j % 2 == 0 { d } else { -d });
    }
    if normal.iter().all(|v| v.is_zero()) {
        return None;
    }
    let out: Option<Vec<i64>> = normal.iter().map(|v| v.to_i64()).collect();
    out
}

fn det_bigint(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    if n == 1 {
        return m[0][0].clone();
    }
    if n == 2 {
        return &m[0][0] * &m[1][1] - &m[0][1] * &m[1][0];
    }
    // Fraction-free Gaussian elimination (Bareiss).
    let mut a: Vec<Vec<BigInt>> = m.to_vec();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            if let Some(p) = (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                a.swap(k, p);
                sign = -sign;
            } else {
                return BigInt::zero();
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]).div_floor(&prev);
                a[i][j] = v;
            }
            a[i][k] = BigInt::zero();
        }
        prev = a[k][k].clone();
    }
    sign * a[n - 1][n - 1].clone()
}

/// Convex hull of the support of `f`.
pub fn newton_polytope(f: &LaurentPoly) -> Result<NewtonPolytope, GeometryError> {
    if f.is_zero() {
        return Err(GeometryError::ZeroPolynomial);
    }
    let support = f.support();
    let nvars = f.nvars();
    let base = &support[0];
    let diffs: Vec<Vec<i64>> = support
        .iter()
        .map(|p| p.iter().zip(base.iter()).map(|(a, b)| a - b).collect())
        .collect();
    let dim = rank_rows(&diffs);

    let vertices: Vec<Vec<i64>>;
    let mut facets: Vec<Facet> = Vec::new();

    if nvars == 1 {
        let lo = support.iter().map(|p| p[0]).min().unwrap();
        let hi = support.iter().map(|p| p[0]).max().unwrap();
        vertices = if lo == hi {
            vec![vec![lo]]
        } else {
            vec![vec![lo], vec![hi]]
        };
        facets.push(Facet { normal: vec![1], offset: hi });
        facets.push(Facet { normal: vec![-1], offset: -lo });
    } else if dim == nvars && nvars == 2 {
        let vs = hull_2d(&support);
        // Facets from consecutive ccw edges; outward normal (dy, -dx).
        for i in 0..vs.len() {
            let p = &vs[i];
            let q = &vs[(i + 1) % vs.len()];
            let mut normal = vec![q[1] - p[1], -(q[0] - p[0])];
            let g = gcd_all(normal.iter().copied());
            if g > 1 {
                normal.iter_mut().for_each(|v| *v /= g);
            }
            let offset = normal[0] * p[0] + normal[1] * p[1];
            facets.push(Facet { normal, offset });
        }
        vertices = vs;
    } else if dim == nvars {
        // General full-dimensional hull over a small support: enumerate
        // candidate facет hyperplanes through n-subsets.
        let m = support.len();
        let mut facet_set: std::collections::BTreeSet<(Vec<i64>, i64)> =
            std::collections::BTreeSet::new();
        let mut idx = vec![0usize; nvars];
        enumerate_subsets(m, nvars, &mut idx, 0, 0, &mut |subset| {
            let pts: Vec<&Vec<i64>> = subset.iter().map(|&i| &support[i]).collect();
            if let Some(mut normal) = hyperplane_normal(&pts) {
                let g = gcd_all(normal.iter().copied());
                if g > 1 {
                    normal.iter_mut().for_each(|v| *v /= g);
                }
                let offset: i64 = normal
                    .iter()
                    .zip(pts[0].iter())
                    .map(|(a, b)| a * b)
                    .sum();
                let mut above = false;
                let mut below = false;
                for p in &support {
                    let v: i64 = normal.iter().zip(p.iter()).map(|(a, b)| a * b).sum();
                    if v > offset {
                        above = true;
                    }
                    if v < offset {
                        below = true;
                    }
                }
                if !above {
                    facet_set.insert((normal.clone(), offset));
                }
                if !below {
                    let neg: Vec<i64> = normal.iter().map(|v| -v).collect();
                    facet_set.insert((neg, -offset));
                }
            }
        });
        facets = facet_set
            .into_iter()
            .map(|(normal, offset)| Facet { normal, offset })
            .collect();
        vertices = (0..m)
            .filter(|&i| is_vertex_lp(&support, i))
            .map(|i| support[i].clone())
            .collect();
    } else {
        // Degenerate: vertices via LP; facets only for trivial cases.
        let m = support.len();
        vertices = (0..m)
            .filter(|&i| is_vertex_lp(&support, i))
            .map(|i| support[i].clone())
            .collect();
        if dim == 0 {
            let v = &vertices[0];
            for j in 0..nvars {
                let mut n1 = vec![0; nvars];
                n1[j] = 1;
                facets.push(Facet { normal: n1.clone(), offset: v[j] });
                n1[j] = -1;
                facets.push(Facet { normal: n1, offset: -v[j] });
            }
        } else if dim == 1 {
            let a = &vertices[0];
            let b = &vertices[1];
            let mut d: Vec<i64> = b.iter().zip(a.iter()).map(|(x, y)| x - y).collect();
            let g = gcd_all(d.iter().copied());
            if g > 1 {
                d.iter_mut().for_each(|v| *v /= g);
            }
            let dot = |n: &[i64], p: &[i64]| -> i64 {
                n.iter().zip(p.iter()).map(|(x, y)| x * y).sum()
            };
            let (lo_v, hi_v) = if dot(&d, a) <= dot(&d, b) { (a, b) } else { (b, a) };
            facets.push(Facet { normal: d.clone(), offset: dot(&d, hi_v) });
            let neg: Vec<i64> = d.iter().map(|v| -v).collect();
            facets.push(Facet { normal: neg.clone(), offset: -dot(&d, lo_v) });
        }
        // For 1 < dim < nvars only the vertex list is provided.
    }

    let lattice_points = if dim == nvars {
        lattice_points_scaled(&vertices, &facets, 1)
    } else {
        lattice_points_degenerate(&support, &vertices)
    };

    Ok(NewtonPolytope { nvars, dim, vertices, facets, lattice_points })
}

fn enumerate_subsets(
    m: usize,
    k: usize,
    idx: &mut Vec<usize>,
    depth: usize,
    start: usize,
    f: &mut impl FnMut(&[usize]),
) {
    if depth == k {
        f(idx);
        return;
    }
    for i in start..m {
        idx[depth] = i;
        enumerate_subsets(m, k, idx, depth + 1, i + 1, f);
    }
}

/// Lattice points of `t * P` for a full-dimensional polytope described by
/// vertices and facets.
fn lattice_points_scaled(vertices: &[Vec<i64>], facets: &[Facet], t: i64) -> Vec<Vec<i64>> {
    let n = vertices[0].len();
    let mut lo = vec![i64::MAX; n];
    let mut hi = vec![i64::MIN; n];
    for v in vertices {
        for j in 0..n {
            lo[j] = lo[j].min(v[j] * t);
            hi[j] = hi[j].max(v[j] * t);
        }
    }
    let mut out = Vec::new();
    let mut cur = lo.clone();
    'outer: loop {
        let inside = facets.iter().all(|f| {
            let v: i64 = f.normal.iter().zip(cur.iter()).map(|(a, b)| a * b).sum();
            v <= f.offset * t
        });
        if inside {
            out.push(cur.clone());
        }
        for j in (0..n).rev() {
            if cur[j] < hi[j] {
                cur[j] += 1;
                for (jj, x) in cur.iter_mut().enumerate().skip(j + 1) {
                    *x = lo[jj];
                }
                continue 'outer;
            }
        }
        break;
    }
    out.sort();
    out
}

fn lattice_points_degenerate(support: &[Vec<i64>], vertices: &[Vec<i64>]) -> Vec<Vec<i64>> {
    // Bounding box scan with an LP membership test per candidate.
    let n = support[0].len();
    let mut lo = vec![i64::MAX; n];
    let mut hi = vec![i64::MIN; n];
    for v in vertices {
        for j in 0..n {
            lo[j] = lo[j].min(v[j]);
            hi[j] = hi[j].max(v[j]);
        }
    }
    let mut out = Vec::new();
    let mut cur = lo.clone();
    'outer: loop {
        if point_in_hull(vertices, &cur) {
            out.push(cur.clone());
        }
        for j in (0..n).rev() {
            if cur[j] < hi[j] {
                cur[j] += 1;
                for (jj, x) in cur.iter_mut().enumerate().skip(j + 1) {
                    *x = lo[jj];
                }
                continue 'outer;
            }
        }
        break;
    }
    out.sort();
    out
}

fn point_in_hull(points: &[Vec<i64>], p: &[i64]) -> bool {
    let n = p.len();
    let k = points.len();
    let mut a_eq: Vec<Vec<BigRational>> = vec![vec![BigRational::zero(); k]; n + 1];
    for (j, q) in points.iter().enumerate() {
        for i in 0..n {
            a_eq[i][j] = to_rat(q[i]);
        }
        a_eq[n][j] = BigRational::one();
    }
    let mut b_eq: Vec<BigRational> = p.iter().map(|v| to_rat(*v)).collect();
    b_eq.push(BigRational::one());
    let c = vec![BigRational::zero(); k];
    matches!(solve_lp(&c, &[], &[], &a_eq, &b_eq), LpOutcome::Optimal { .. })
}

impl NewtonPolytope {
    pub fn contains_lattice_point(&self, p: &[i64]) -> bool {
        if self.dim == self.nvars {
            self.facets.iter().all(|f| {
                let v: i64 = f.normal.iter().zip(p.iter()).map(|(a, b)| a * b).sum();
                v <= f.offset
            })
        } else {
            point_in_hull(&self.vertices, p)
        }
    }

    pub fn is_vertex(&self, p: &[i64]) -> bool {
        self.vertices.iter().any(|v| v.as_slice() == p)
    }
}

/// Is `f` full-dimensional ("true" Laurent polynomial)?
pub fn is_true_laurent(f: &LaurentPoly) -> Result<bool, GeometryError> {
    Ok(newton_polytope(f)?.dim == f.nvars())
}

/// Closed recession cone of the complement component with order `alpha`:
/// `{x : <xi - alpha, x> <= 0 for all vertices xi}`.
pub fn recession_cone(delta: &NewtonPolytope, alpha: &[i64]) -> Result<Cone, GeometryError> {
    if !delta.contains_lattice_point(alpha) {
        return Err(GeometryError::PointOutside(alpha.to_vec()));
    }
    let mut seen = std::collections::BTreeSet::new();
    let mut inequalities = Vec::new();
    for v in &delta.vertices {
        let mut d: Vec<i64> = v.iter().zip(alpha.iter()).map(|(a, b)| a - b).collect();
        if d.iter().all(|x| *x == 0) {
            continue;
        }
        let g = gcd_all(d.iter().copied());
        if g > 1 {
            d.iter_mut().for_each(|x| *x /= g);
        }
        if seen.insert(d.clone()) {
            inequalities.push(d);
        }
    }
    let dim = cone_dimension(&inequalities, delta.nvars);
    Ok(Cone { inequalities, dim })
}

/// Dimension of `{x : a.x <= 0}` via implicit-equality detection with exact
/// LPs over the box `|x_j| <= 1`.
fn cone_dimension(inequalities: &[Vec<i64>], n: usize) -> usize {
    if inequalities.is_empty() {
        return n;
    }
    // Variables: x = u - w with u, w >= 0, both bounded by 1.
    let nv = 2 * n;
    let mut a_ub: Vec<Vec<BigRational>> = Vec::new();
    let mut b_ub: Vec<BigRational> = Vec::new();
    for a in inequalities {
        let mut row = vec![BigRational::zero(); nv];
        for j in 0..n {
            row[j] = to_rat(a[j]);
            row[n + j] = to_rat(-a[j]);
        }
        a_ub.push(row);
        b_ub.push(BigRational::zero());
    }
    for j in 0..nv {
        let mut row = vec![BigRational::zero(); nv];
        row[j] = BigRational::one();
        a_ub.push(row);
        b_ub.push(BigRational::one());
    }
    let mut forced: Vec<Vec<i64>> = Vec::new();
    for a in inequalities {
        // maximize -a.x; optimum 0 means a.x = 0 on the whole cone.
        let mut c = vec![BigRational::zero(); nv];
        for j in 0..n {
            c[j] = to_rat(-a[j]);
            c[n + j] = to_rat(a[j]);
        }
        match solve_lp(&c, &a_ub, &b_ub, &[], &[]) {
            LpOutcome::Optimal { value, .. } => {
                if value.is_zero() {
                    forced.push(a.clone());
                }
            }
            _ => {}
        }
    }
    n - rank_rows(&forced)
}

impl Cone {
    /// Does the cone contain the closed negative orthant?
    pub fn contains_negative_orthant(&self) -> bool {
        // Generated by -e_j; check each generator satisfies a.x <= 0.
        let n = self.inequalities.first().map(|a| a.len()).unwrap_or(0);
        if self.inequalities.is_empty() {
            return true;
        }
        (0..n).all(|j| self.inequalities.iter().all(|a| -a[j] <= 0))
    }

    pub fn contains_vector(&self, x: &[i64]) -> bool {
        self.inequalities
            .iter()
            .all(|a| a.iter().zip(x.iter()).map(|(u, v)| u * v).sum::<i64>() <= 0)
    }
}

/// Ehrhart-based stats: `c_F`, `d_F` and the normalized volume.
///
/// The Ehrhart function of a lattice polytope is a degree-n polynomial, so
/// exact counts at t = 0..n determine it; `d_F` is the maximum of E(t)/t^n
/// over t = 1..1000 together with the leading coefficient.
pub fn polytope_stats(delta: &NewtonPolytope) -> Result<PolytopeStats, GeometryError> {
    let n = delta.nvars;
    if delta.dim != n {
        return Err(GeometryError::Degenerate { dim: delta.dim, nvars: n });
    }
    let mut c_f: u64 = 0;
    for j in 0..n {
        let lo = delta.vertices.iter().map(|v| v[j]).min().unwrap();
        let hi = delta.vertices.iter().map(|v| v[j]).max().unwrap();
        c_f = c_f.max((hi - lo) as u64);
    }
    // Counts at t = 0..n.
    let counts: Vec<BigRational> = (0..=n as i64)
        .map(|t| {
            if t == 0 {
                BigRational::one()
            } else {
                to_rat(lattice_points_scaled(&delta.vertices, &delta.facets, t).len() as i64)
            }
        })
        .collect();
    let ehrhart = lagrange_interpolate(&counts);
    let volume = ehrhart.last().cloned().unwrap_or_else(BigRational::zero);
    let mut d_f = volume.clone();
    for t in 1..=1000i64 {
        let val = eval_poly_rational(&ehrhart, &to_rat(t));
        let ratio = val / pow_rat(&to_rat(t), n as u32);
        if ratio > d_f {
            d_f = ratio;
        }
    }
    Ok(PolytopeStats { c_f, d_f, volume, ehrhart })
}

fn pow_rat(x: &BigRational, k: u32) -> BigRational {
    let mut acc = BigRational::one();
    for _ in 0..k {
        acc *= x;
    }
    acc
}

fn eval_poly_rational(coeffs: &[BigRational], x: &BigRational) -> BigRational {
    let mut acc = BigRational::zero();
    for c in coeffs.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

/// Lagrange interpolation through (i, values[i]) for i = 0..deg, returning
/// coefficients constant-first.
fn lagrange_interpolate(values: &[BigRational]) -> Vec<BigRational> {
    let n = values.len();
    let mut coeffs = vec![BigRational::zero(); n];
    for (i, yi) in values.iter().enumerate() {
        // Basis polynomial prod_{j!=i} (x - j)/(i - j)
        let mut basis = vec![BigRational::one()];
        let mut denom = BigRational::one();
        for j in 0..n {
            if j == i {
                continue;
            }
            // multiply basis by (x - j)
            let mut next = vec![BigRational::zero(); basis.len() + 1];
            for (k, b) in basis.iter().enumerate() {
                next[k + 1] += b;
                next[k] -= b * to_rat(j as i64);
            }
            basis = next;
            denom *= to_rat(i as i64) - to_rat(j as i64);
        }
        let scale = yi / denom;
        for (k, b) in basis.iter().enumerate() {
            coeffs[k] += b * &scale;
        }
    }
    coeffs
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laurent::{parse_poly, parse_poly_nvars};

    #[test]
    fn unit_simplex_polytope() {
        let f = parse_poly("3 + X1 + X2").unwrap();
        let p = newton_polytope(&f).unwrap();
        assert_eq!(p.dim, 2);
        let mut vs = p.vertices.clone();
        vs.sort();
        assert_eq!(vs, vec![vec![0, 0], vec![0, 1], vec![1, 0]]);
        assert_eq!(p.lattice_points.len(), 3);
    }

    #[test]
    fn unit_square_polytope() {
        let f = parse_poly("4 - 2*X1 - 2*X2 + X1*X2").unwrap();
        let p = newton_polytope(&f).unwrap();
        assert_eq!(p.dim, 2);
        assert_eq!(p.vertices.len(), 4);
        assert_eq!(p.lattice_points.len(), 4);
    }

    #[test]
    fn degenerate_segment() {
        let f = parse_poly_nvars("1 + X1", 2).unwrap();
        let p = newton_polytope(&f).unwrap();
        assert_eq!(p.dim, 1);
        assert!(!is_true_laurent(&f).unwrap());
        let g = parse_poly("1 + X1*X2").unwrap();
        let q = newton_polytope(&g).unwrap();
        assert_eq!(q.dim, 1);
        assert!(!is_true_laurent(&g).unwrap());
        let h = parse_poly("3 + X1 + X2").unwrap();
        assert!(is_true_laurent(&h).unwrap());
    }

    #[test]
    fn recession_cones_of_simplex() {
        let f = parse_poly("3 + X1 + X2").unwrap();
        let p = newton_polytope(&f).unwrap();
        // alpha = origin: closed negative orthant.
        let c0 = recession_cone(&p, &[0, 0]).unwrap();
        assert_eq!(c0.dim, 2);
        assert!(c0.contains_negative_orthant());
        assert!(c0.contains_vector(&[-3, -5]));
        assert!(!c0.contains_vector(&[1, 0]));
        // alpha = (1,0): {x1 >= 0, x1 >= x2}.
        let c1 = recession_cone(&p, &[1, 0]).unwrap();
        assert_eq!(c1.dim, 2);
        assert!(c1.contains_vector(&[1, 0]));
        assert!(c1.contains_vector(&[2, 1]));
        assert!(!c1.contains_vector(&[-1, 0]));
        assert!(!c1.contains_vector(&[1, 2]));
    }

    #[test]
    fn recession_cone_of_square_corner() {
        let f = parse_poly("4 - 2*X1 - 2*X2 + X1*X2").unwrap();
        let p = newton_polytope(&f).unwrap();
        let c = recession_cone(&p, &[1, 1]).unwrap();
        assert_eq!(c.dim, 2);
        assert!(c.contains_vector(&[1, 1]));
        assert!(c.contains_vector(&[3, 1]));
        assert!(!c.contains_vector(&[-1, -1]));
    }

    #[test]
    fn interior_point_cone_is_origin_only() {
        // 1 + X1^2 + X2^2 + X1*X2-ish: use square with center.
        let f = parse_poly("1 + X1^2 + X2^2 + X1^2*X2^2 + X1*X2").unwrap();
        let p = newton_polytope(&f).unwrap();
        let c = recession_cone(&p, &[1, 1]).unwrap();
        assert_eq!(c.dim, 0);
    }

    #[test]
    fn cone_dim_iff_vertex() {
        let f = parse_poly("3 + X1^2 + X2").unwrap();
        let p = newton_polytope(&f).unwrap();
        for pt in &p.lattice_points {
            let c = recession_cone(&p, pt).unwrap();
            assert_eq!(c.dim == 2, p.is_vertex(pt), "point {pt:?}");
        }
    }

    #[test]
    fn stats_simplex_and_square() {
        let f = parse_poly("3 + X1 + X2").unwrap();
        let s = polytope_stats(&newton_polytope(&f).unwrap()).unwrap();
        assert_eq!(s.c_f, 1);
        assert_eq!(s.d_f, to_rat(3));
        assert_eq!(s.volume, BigRational::new(BigInt::from(1), BigInt::from(2)));

        let g = parse_poly("4 - 2*X1 - 2*X2 + X1*X2").unwrap();
        let s2 = polytope_stats(&newton_polytope(&g).unwrap()).unwrap();
        assert_eq!(s2.c_f, 1);
        assert_eq!(s2.d_f, to_rat(4));
        assert_eq!(s2.volume, to_rat(1));
    }

    #[test]
    fn stats_wider_polytope() {
        let f = parse_poly("3 + X1^2 + X2").unwrap();
        let s = polytope_stats(&newton_polytope(&f).unwrap()).unwrap();
        assert_eq!(s.c_f, 2);
    }

    #[test]
    fn support_satisfies_facets() {
        let f = parse_poly("4 - 2*X1 - 2*X2 + X1*X2 + X1^2*X2").unwrap();
        let p = newton_polytope(&f).unwrap();
        for pt in f.support() {
            assert!(p.contains_lattice_point(&pt));
        }
    }

    #[test]
    fn zero_poly_rejected() {
        let z = crate::laurent::LaurentPoly::zero(2);
        assert!(newton_polytope(&z).is_err());
    }
}
