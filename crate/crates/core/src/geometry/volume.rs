//! Exact volume through a placing triangulation.
//!
//! Points are inserted one at a time. Each boundary facet of the current
//! triangulation is a `(d-1)`-simplex with an outward normal; a new point beyond
//! some facets is coned to each of them and the horizon is re-stitched. The
//! volume is the sum of `|det| / d!` over the simplices created along the way.

use std::collections::BTreeMap;

use num_traits::{Signed, Zero};

use super::{affine_rank, linalg, Point, Polytope};
use crate::error::{Error, Result};
use crate::rational::{dot, Rational};

pub const DEFAULT_VOLUME_DIM_CAP: usize = 4;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Volume {
    pub value: Rational,
    /// Set when the vertices do not span the ambient space; `value` is then zero.
    pub degenerate: bool,
}

struct Facet {
    verts: Vec<usize>,
    normal: Vec<Rational>,
    offset: Rational,
}

pub fn volume(p: &Polytope) -> Result<Volume> {
    volume_with_cap(p, DEFAULT_VOLUME_DIM_CAP)
}

pub fn volume_with_cap(p: &Polytope, cap: usize) -> Result<Volume> {
    let d = p.dim();
    if d > cap {
        return Err(Error::VolumeDimensionCap { dim: d, cap });
    }
    if affine_rank(p.vertices()) < d {
        return Ok(Volume { value: Rational::zero(), degenerate: true });
    }
    let pts = p.vertices().points();

    // Greedy initial simplex.
    let mut init: Vec<usize> = vec![0];
    for i in 1..pts.len() {
        if init.len() == d + 1 {
            break;
        }
        let mut trial: Vec<&Point> = init.iter().map(|&j| &pts[j]).collect();
        trial.push(&pts[i]);
        if super::affine_rank_of(&trial) == init.len() {
            init.push(i);
        }
    }

    let mut inner = vec![Rational::zero(); d];
    for &i in &init {
        for (c, v) in inner.iter_mut().zip(pts[i].coords()) {
            *c += v;
        }
    }
    let denom = Rational::from_integer((d as i64 + 1).into());
    for c in inner.iter_mut() {
        *c /= &denom;
    }

    let mut total = simplex_volume(&init.iter().map(|&i| &pts[i]).collect::<Vec<_>>());
    let mut facets: Vec<Facet> = (0..=d)
        .map(|skip| {
            let verts: Vec<usize> = init.iter().enumerate().filter(|(k, _)| *k != skip).map(|(_, &i)| i).collect();
            facet(pts, verts, &inner)
        })
        .collect();

    for (i, p) in pts.iter().enumerate() {
        if init.contains(&i) {
            continue;
        }
        let (visible, hidden): (Vec<Facet>, Vec<Facet>) =
            facets.into_iter().partition(|f| dot(&f.normal, p.coords()) > f.offset);
        facets = hidden;
        if visible.is_empty() {
            continue;
        }
        let mut ridges: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
        for f in &visible {
            let mut cone: Vec<&Point> = f.verts.iter().map(|&j| &pts[j]).collect();
            cone.push(p);
            total += simplex_volume(&cone);
            for skip in 0..f.verts.len() {
                let mut ridge: Vec<usize> = f.verts.iter().enumerate().filter(|(k, _)| *k != skip).map(|(_, &j)| j).collect();
                ridge.sort_unstable();
                *ridges.entry(ridge).or_default() += 1;
            }
        }
        for (mut ridge, count) in ridges {
            if count == 1 {
                ridge.push(i);
                facets.push(facet(pts, ridge, &inner));
            }
        }
    }
    Ok(Volume { value: total, degenerate: false })
}

fn facet(pts: &[Point], verts: Vec<usize>, inner: &[Rational]) -> Facet {
    let d = inner.len();
    let base = &pts[verts[0]];
    let diffs: Vec<Vec<Rational>> = verts[1..].iter().map(|&j| pts[j].sub(base)).collect();
    let mut normal = if diffs.is_empty() {
        let mut e = vec![Rational::zero(); d];
        e[0] = Rational::from_integer(1.into());
        e
    } else {
        linalg::kernel_vector(&diffs, d).expect("facet vertices span a hyperplane")
    };
    let mut offset = dot(&normal, base.coords());
    if dot(&normal, inner) > offset {
        normal.iter_mut().for_each(|v| *v = -v.clone());
        offset = -offset;
    }
    Facet { verts, normal, offset }
}

fn simplex_volume(vs: &[&Point]) -> Rational {
    let d = vs.len() - 1;
    let m: Vec<Vec<Rational>> = vs[1..].iter().map(|v| v.sub(vs[0])).collect();
    let fact: i64 = (1..=d as i64).product();
    linalg::determinant(&m).abs() / Rational::from_integer(fact.into())
}
