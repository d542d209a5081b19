use super::{
    geometric_mean_ideal, geometric_mean_support, minkowski_combine_ideals, minkowski_combine_polygons, BoxIdeal,
    DirectionGrid, SymmetricPolygon2,
};
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// A member of one of the two supported body classes.
///
/// JSON: `{"type":"polygon2","vertices":[[x,y],…]}` or
/// `{"type":"box_ideal","dim":n,"generators":[[…],…]}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "BodyRepr", into = "BodyRepr")]
pub enum Body {
    Polygon(SymmetricPolygon2),
    Ideal(BoxIdeal),
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "type", deny_unknown_fields)]
enum BodyRepr {
    #[serde(rename = "polygon2")]
    Polygon2 { vertices: Vec<[f64; 2]> },
    #[serde(rename = "box_ideal")]
    BoxIdeal { dim: usize, generators: Vec<Vec<f64>> },
}

impl TryFrom<BodyRepr> for Body {
    type Error = Error;

    fn try_from(r: BodyRepr) -> Result<Self> {
        match r {
            BodyRepr::Polygon2 { vertices } if vertices.is_empty() => Ok(Body::Polygon(SymmetricPolygon2::origin())),
            BodyRepr::Polygon2 { vertices } => Ok(Body::Polygon(SymmetricPolygon2::new(vertices)?)),
            BodyRepr::BoxIdeal { dim, generators } => Ok(Body::Ideal(BoxIdeal::new(dim, generators)?)),
        }
    }
}

impl From<Body> for BodyRepr {
    fn from(b: Body) -> Self {
        match b {
            Body::Polygon(p) => BodyRepr::Polygon2 {
                vertices: p.vertices().to_vec(),
            },
            Body::Ideal(i) => BodyRepr::BoxIdeal {
                dim: i.dim(),
                generators: i.generators().to_vec(),
            },
        }
    }
}

/// Which geometric mean to use in log-BM checks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MeanKind {
    /// Support-function mean `⊙^S` (symmetric polygons).
    Support,
    /// Coordinatewise mean of generating boxes `⊙^I` (ideals).
    Ideal,
}

impl Body {
    pub fn dim(&self) -> usize {
        match self {
            Body::Polygon(_) => 2,
            Body::Ideal(i) => i.dim(),
        }
    }

    pub fn class_name(&self) -> &'static str {
        match self {
            Body::Polygon(_) => "polygon2",
            Body::Ideal(_) => "box_ideal",
        }
    }

    pub fn is_origin(&self) -> bool {
        match self {
            Body::Polygon(p) => p.is_origin(),
            Body::Ideal(i) => i.is_origin_only(),
        }
    }

    pub fn scale(&self, t: f64) -> Result<Body> {
        Ok(match self {
            Body::Polygon(p) => Body::Polygon(p.scale(t)?),
            Body::Ideal(i) => Body::Ideal(i.scale(t)?),
        })
    }

    pub fn contains(&self, x: &[f64]) -> bool {
        match self {
            Body::Polygon(p) => x.len() == 2 && p.contains([x[0], x[1]]),
            Body::Ideal(i) => i.contains(x),
        }
    }

    /// `λA + (1-λ)B` within the common class.
    pub fn combine(a: &Body, b: &Body, lambda: f64) -> Result<Body> {
        match (a, b) {
            (Body::Polygon(p), Body::Polygon(q)) => Ok(Body::Polygon(minkowski_combine_polygons(p, q, lambda)?)),
            (Body::Ideal(p), Body::Ideal(q)) => Ok(Body::Ideal(minkowski_combine_ideals(p, q, lambda)?)),
            _ => Err(Error::ClassMismatch(format!(
                "cannot combine {} with {}",
                a.class_name(),
                b.class_name()
            ))),
        }
    }

    /// Geometric mean of the requested kind. For `⊙^S` the returned `κ` is the
    /// certified inner scale of the outer approximation; it is 1 for `⊙^I`.
    pub fn geometric_mean(
        a: &Body,
        b: &Body,
        lambda: f64,
        kind: MeanKind,
        grid: &DirectionGrid,
    ) -> Result<(Body, f64)> {
        match (kind, a, b) {
            (MeanKind::Support, Body::Polygon(p), Body::Polygon(q)) => {
                let m = geometric_mean_support(p, q, lambda, grid)?;
                Ok((Body::Polygon(m.polygon), m.inner_scale))
            }
            (MeanKind::Ideal, Body::Ideal(p), Body::Ideal(q)) => {
                Ok((Body::Ideal(geometric_mean_ideal(p, q, lambda)?), 1.0))
            }
            _ => Err(Error::ClassMismatch(format!(
                "{kind:?} mean is not defined for {} and {}",
                a.class_name(),
                b.class_name()
            ))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_round_trip() {
        let p = Body::Polygon(SymmetricPolygon2::hull_of(&[[0.1, 0.7], [1.0 / 3.0, -0.2]]).unwrap());
        let s = serde_json::to_string(&p).unwrap();
        assert!(s.starts_with("{\"type\":\"polygon2\""));
        let back: Body = serde_json::from_str(&s).unwrap();
        assert_eq!(back, p);

        let i: Body = serde_json::from_str(r#"{"type":"box_ideal","dim":2,"generators":[[1,4],[4,1]]}"#).unwrap();
        assert_eq!(
            serde_json::from_str::<Body>(&serde_json::to_string(&i).unwrap()).unwrap(),
            i
        );
    }

    #[test]
    fn json_rejects_invalid_bodies() {
        assert!(serde_json::from_str::<Body>(r#"{"type":"box_ideal","dim":2,"generators":[[1,-4]]}"#).is_err());
        assert!(serde_json::from_str::<Body>(r#"{"type":"polygon2","vertices":[[0,0],[1,0],[0,1]]}"#).is_err());
        assert!(serde_json::from_str::<Body>(r#"{"type":"sphere"}"#).is_err());
    }

    #[test]
    fn class_mismatch() {
        let p = Body::Polygon(SymmetricPolygon2::square(1.0).unwrap());
        let i = Body::Ideal(BoxIdeal::from_box(vec![1.0, 1.0]).unwrap());
        assert!(Body::combine(&p, &i, 0.5).is_err());
        let g = DirectionGrid::default();
        assert!(Body::geometric_mean(&p, &p, 0.5, MeanKind::Ideal, &g).is_err());
    }
}
