//! Jacquet operators on multisegments and on Speh ladders.

use arthur_packets::jacquet::{jac_ladder_sequence, jac_left, jac_right, jac_sequence, FormalSum};
use arthur_packets::segment::{speh_ladder, speh_rows, tableau_cells};
use arthur_packets::{CuspidalLabel, HalfInt, Multisegment, Segment, Sign};

fn main() {
    let rho = CuspidalLabel::trivial("rho");
    let seg = |a, b| Segment::new(rho.clone(), HalfInt::int(a), HalfInt::int(b)).unwrap();

    let m = FormalSum::single(Multisegment::new(vec![seg(0, 2), seg(1, 3), seg(1, 1)]));
    println!("pi          = {m}");
    println!("Jac_1 pi    = {}", jac_left(HalfInt::ONE, &rho, &m));
    println!("Jac^d_3 pi  = {}", jac_right(HalfInt::int(3), &rho, &m));
    let word = [HalfInt::ONE, HalfInt::int(2), HalfInt::ZERO];
    println!("Jac_1,2,0   = {}", jac_sequence(&word, &rho, &m));

    let (a, b) = (HalfInt::int(3), HalfInt::int(1));
    println!("\nS(rho,3,1,+) = {}", speh_rows(&rho, a, b, Sign::Plus).unwrap());
    let ladder = speh_ladder(&rho, a, b, Sign::Plus).unwrap();
    let cells = tableau_cells(Sign::Plus, HalfInt::int(2), HalfInt::ZERO, 1).unwrap();
    match jac_ladder_sequence(&cells, &ladder) {
        Some(l) => println!("after {cells:?}: {}", l.multisegment()),
        None => println!("after {cells:?}: 0"),
    }
}
