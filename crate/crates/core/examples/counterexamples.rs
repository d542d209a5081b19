//! Two unconditional measures on the plane without the Brunn–Minkowski
//! property: a two-level radial step and a rotated product.

use bmlab::scenarios::{example1_verify, example2_verify};

fn main() -> bmlab::Result<()> {
    for out in [example1_verify()?, example2_verify(0.5, 0.25)?] {
        let h = &out.headline;
        println!(
            "{}: √μ at the midpoint {:.8} < average {:.8} ({:?}); {} oracle checks hold: {}",
            out.name,
            h.lhs,
            h.rhs,
            h.verdict,
            out.supporting.len(),
            out.supporting_hold()
        );
        if let Some(t) = &out.table {
            t.write_csv(std::io::stdout())?;
        }
    }
    Ok(())
}
