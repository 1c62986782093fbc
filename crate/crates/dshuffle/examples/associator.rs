//! Solve the pentagon through degree 5, check double shuffle membership and
//! compare two solutions through their torsor difference.

use dshuffle::dmr::{is_dmr, is_dmr_b, solve_associator, solve_associator_with, torsor_difference, write_assoc};
use dshuffle::scalar::qi;

fn main() -> dshuffle::Result<()> {
    let p = solve_associator(&qi(1), 5)?;
    print!("{}", write_assoc(&p));
    println!("# DMR membership: {}", is_dmr(&p.point)?);

    let q = solve_associator_with(&qi(1), 5, |_, _| qi(1))?;
    let d = torsor_difference(&p.point, &q.point)?;
    println!("# difference of two solutions: {}", d.g.render());
    println!("# Betti membership: {}", is_dmr_b(&d)?);
    Ok(())
}
