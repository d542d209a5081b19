//! Symmetric polygons, box ideals, Minkowski combinations and the two
//! geometric means.

use bmlab::geometry::{Body, BoxIdeal, DirectionGrid, MeanKind, SymmetricPolygon2};

fn main() -> bmlab::Result<()> {
    let square = SymmetricPolygon2::square(1.0)?;
    let diamond = SymmetricPolygon2::diamond(2.0)?;
    let mix = Body::combine(&Body::Polygon(square.clone()), &Body::Polygon(diamond.clone()), 0.5)?;
    if let Body::Polygon(p) = &mix {
        println!(
            "(square + diamond)/2 has {} vertices and area {:.6}",
            p.vertices().len(),
            p.area()
        );
    }

    let grid = DirectionGrid::default();
    let (mean, kappa) = Body::geometric_mean(
        &Body::Polygon(square),
        &Body::Polygon(diamond),
        0.5,
        MeanKind::Support,
        &grid,
    )?;
    if let Body::Polygon(p) = &mean {
        println!(
            "support geometric mean: area {:.6}, certified inner scale {kappa:.8}",
            p.area()
        );
    }

    // a staircase in the positive quadrant, reflected in every axis
    let a = BoxIdeal::new(2, vec![vec![3.0, 1.0], vec![1.0, 2.0]])?;
    let b = BoxIdeal::from_box(vec![1.0, 4.0])?;
    let sum = Body::combine(&Body::Ideal(a.clone()), &Body::Ideal(b.clone()), 0.5)?;
    let (gm, _) = Body::geometric_mean(&Body::Ideal(a), &Body::Ideal(b), 0.5, MeanKind::Ideal, &grid)?;
    println!(
        "ideal combination: {}",
        serde_json::to_string(&sum).expect("bodies serialize")
    );
    println!(
        "ideal geometric mean: {}",
        serde_json::to_string(&gm).expect("bodies serialize")
    );
    for x in [[1.5, 2.0], [2.0, 2.9]] {
        println!(
            "  {x:?} in mean: {}, in combination: {}",
            gm.contains(&x),
            sum.contains(&x)
        );
    }
    Ok(())
}
