//! OFF export for 3-D polytopes.
//!
//! Vertices are enumerated exactly as feasible intersections of constraint
//! triples; faces are the incident-vertex cycles of the irredundant
//! inequality rows, ordered counterclockwise as seen from outside. The OFF
//! text renders rounded decimals; the exact rational geometry goes into a
//! JSON sidecar.

use core::cmp::Ordering;
use std::fmt::Write as _;

use anyhow::{bail, Result};
use num_traits::{Signed, Zero};
use serde::Serialize;

use nok_core::lattice::{self, LatticeError};
use nok_core::lp::{self, LpStatus};
use nok_core::polytope::{dot_rational, HPolytope, LinearConstraint};
use nok_core::rational::{format_rational, Int, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OffError {
    NotThreeDimensional { dim: usize },
    Unbounded,
    Empty,
}

impl core::fmt::Display for OffError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            OffError::NotThreeDimensional { dim } => {
                write!(
                    f,
                    "OFF export needs a 3-dimensional polytope (got dimension {dim})"
                )
            }
            OffError::Unbounded => write!(f, "OFF export needs a bounded polytope"),
            OffError::Empty => write!(f, "OFF export needs a nonempty polytope"),
        }
    }
}

/// Exact geometry backing one OFF file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OffGeometry {
    pub vertices: Vec<Vec<Rational>>,
    pub faces: Vec<Vec<usize>>,
}

impl OffGeometry {
    pub fn edge_count(&self) -> usize {
        let mut edges: Vec<(usize, usize)> = Vec::new();
        for face in &self.faces {
            for t in 0..face.len() {
                let a = face[t];
                let b = face[(t + 1) % face.len()];
                edges.push((a.min(b), a.max(b)));
            }
        }
        edges.sort_unstable();
        edges.dedup();
        edges.len()
    }
}

/// 3x3 determinant over exact integers.
fn det3(rows: [&[Int]; 3]) -> Int {
    let m = |r: usize, c: usize| &rows[r][c];
    m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1))
        - m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0))
        + m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0))
}

/// Enumerates the exact vertex set and facet cycles of a bounded 3-D
/// polytope given by its H-representation.
pub fn enumerate_geometry(p: &HPolytope) -> Result<OffGeometry, OffError> {
    if p.dim() != 3 {
        return Err(OffError::NotThreeDimensional { dim: p.dim() });
    }
    match lattice::bounding_box(p) {
        Ok(_) => {}
        Err(LatticeError::Empty) => return Err(OffError::Empty),
        Err(_) => return Err(OffError::Unbounded),
    }

    let rows: Vec<&LinearConstraint> = p.eqs().iter().chain(p.ineqs().iter()).collect();
    let mut vertices: Vec<Vec<Rational>> = Vec::new();
    for i in 0..rows.len() {
        for j in i + 1..rows.len() {
            for k in j + 1..rows.len() {
                let det = det3([&rows[i].coeffs, &rows[j].coeffs, &rows[k].coeffs]);
                if det.is_zero() {
                    continue;
                }
                let solve_col = |col: usize| -> Rational {
                    let mut cols: [Vec<Int>; 3] = [
                        rows[i].coeffs.clone(),
                        rows[j].coeffs.clone(),
                        rows[k].coeffs.clone(),
                    ];
                    cols[0][col] = rows[i].bound.clone();
                    cols[1][col] = rows[j].bound.clone();
                    cols[2][col] = rows[k].bound.clone();
                    Rational::new(det3([&cols[0], &cols[1], &cols[2]]), det.clone())
                };
                let candidate = vec![solve_col(0), solve_col(1), solve_col(2)];
                if p.contains_rational(&candidate) {
                    vertices.push(candidate);
                }
            }
        }
    }
    vertices.sort();
    vertices.dedup();
    if vertices.is_empty() {
        // A bounded nonempty H-polytope always has at least one vertex.
        return Err(OffError::Empty);
    }

    // Facets come from the irredundant inequality rows.
    let reduced = lp::remove_redundant(p).map_err(|_| OffError::Empty)?;
    debug_assert_eq!(lp::feasible(&reduced).status, LpStatus::Feasible);
    let mut faces = Vec::new();
    for row in reduced.ineqs() {
        let bound = Rational::from_integer(row.bound.clone());
        let incident: Vec<usize> = (0..vertices.len())
            .filter(|&v| dot_rational(&row.coeffs, &vertices[v]) == bound)
            .collect();
        if incident.len() < 3 {
            continue;
        }
        faces.push(order_cycle(&vertices, &incident, &row.coeffs));
    }
    Ok(OffGeometry { vertices, faces })
}

/// Orders the incident vertices counterclockwise around the outward normal.
fn order_cycle(vertices: &[Vec<Rational>], incident: &[usize], normal: &[Int]) -> Vec<usize> {
    let dim = 3;
    let count = Rational::from_integer(Int::from(incident.len() as i64));
    let centroid: Vec<Rational> = (0..dim)
        .map(|c| {
            incident
                .iter()
                .map(|&v| vertices[v][c].clone())
                .sum::<Rational>()
                / count.clone()
        })
        .collect();
    // In-plane basis: u from the centroid to the first vertex, v = n x u.
    let u: Vec<Rational> = (0..dim)
        .map(|c| &vertices[incident[0]][c] - &centroid[c])
        .collect();
    let n: Vec<Rational> = normal
        .iter()
        .map(|c| Rational::from_integer(c.clone()))
        .collect();
    let v = cross(&n, &u);

    let plane_coords = |idx: usize| -> (Rational, Rational) {
        let w: Vec<Rational> = (0..dim).map(|c| &vertices[idx][c] - &centroid[c]).collect();
        (dot(&w, &u), dot(&w, &v))
    };

    let mut order: Vec<usize> = incident.to_vec();
    order.sort_by(|&a, &b| {
        let (ax, ay) = plane_coords(a);
        let (bx, by) = plane_coords(b);
        let half = |x: &Rational, y: &Rational| -> u8 {
            u8::from(y.is_negative() || (y.is_zero() && x.is_negative()))
        };
        match half(&ax, &ay).cmp(&half(&bx, &by)) {
            Ordering::Equal => {
                // Counterclockwise when the cross product is positive.
                let cross = &ax * &by - &bx * &ay;
                if cross.is_positive() {
                    Ordering::Less
                } else if cross.is_negative() {
                    Ordering::Greater
                } else {
                    Ordering::Equal
                }
            }
            other => other,
        }
    });
    order
}

fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn cross(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    vec![
        &a[1] * &b[2] - &a[2] * &b[1],
        &a[2] * &b[0] - &a[0] * &b[2],
        &a[0] * &b[1] - &a[1] * &b[0],
    ]
}

/// Exact decimal rendering with `precision` fractional digits, rounding
/// half away from zero.
pub fn decimal_string(value: &Rational, precision: usize) -> String {
    let mut scale = Int::from(1);
    for _ in 0..precision {
        scale *= Int::from(10);
    }
    let scaled = value * Rational::from_integer(scale);
    let half = Rational::new(Int::from(1), Int::from(2));
    let rounded: Int = if scaled.is_negative() {
        -((-scaled + &half).floor().to_integer())
    } else {
        (scaled + &half).floor().to_integer()
    };
    let negative = rounded.is_negative();
    let digits = rounded.abs().to_string();
    let mut out = String::new();
    if negative {
        out.push('-');
    }
    if precision == 0 {
        out.push_str(&digits);
        return out;
    }
    if digits.len() > precision {
        out.push_str(&digits[..digits.len() - precision]);
        out.push('.');
        out.push_str(&digits[digits.len() - precision..]);
    } else {
        out.push_str("0.");
        for _ in digits.len()..precision {
            out.push('0');
        }
        out.push_str(&digits);
    }
    out
}

/// Renders the OFF file body.
pub fn render_off(geom: &OffGeometry, precision: usize) -> String {
    let mut out = String::from("OFF\n");
    let _ = writeln!(
        out,
        "{} {} {}",
        geom.vertices.len(),
        geom.faces.len(),
        geom.edge_count()
    );
    for v in &geom.vertices {
        let line: Vec<String> = v.iter().map(|c| decimal_string(c, precision)).collect();
        let _ = writeln!(out, "{}", line.join(" "));
    }
    for face in &geom.faces {
        let mut line = face.len().to_string();
        for idx in face {
            let _ = write!(line, " {idx}");
        }
        let _ = writeln!(out, "{line}");
    }
    out
}

#[derive(Serialize)]
struct SidecarJson {
    vertices: Vec<Vec<String>>,
    faces: Vec<Vec<usize>>,
}

/// Exact sidecar: vertices as canonical `p/q` strings plus the face cycles.
pub fn render_sidecar(geom: &OffGeometry) -> Result<String> {
    let payload = SidecarJson {
        vertices: geom
            .vertices
            .iter()
            .map(|v| v.iter().map(format_rational).collect())
            .collect(),
        faces: geom.faces.clone(),
    };
    let mut text = serde_json::to_string_pretty(&payload)?;
    text.push('\n');
    Ok(text)
}

/// Convenience wrapper used by the command line.
pub fn emit_off_3d(p: &HPolytope, precision: usize) -> Result<(String, String, OffGeometry)> {
    let geom = match enumerate_geometry(p) {
        Ok(geom) => geom,
        Err(e) => bail!("{e}"),
    };
    let off = render_off(&geom, precision);
    let sidecar = render_sidecar(&geom)?;
    Ok((off, sidecar, geom))
}
