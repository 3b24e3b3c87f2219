//! The determinantal expansion of a ladder into standard modules, and the
//! oracle suites built on it.

use arthur_packets::oracle::{expand_ladder, ladder_support_suite, translation_multiplicity, translation_suite};
use arthur_packets::segment::shifted_ladder;
use arthur_packets::{CuspidalLabel, HalfInt, Sign};

fn main() {
    let rho = CuspidalLabel::trivial("rho");
    let ladder = shifted_ladder(Sign::Plus, HalfInt::int(1), HalfInt::ZERO, 2, &rho).unwrap();
    println!("S(+,1,0,2) rows {}", ladder.multisegment());
    println!("expansion      {}", expand_ladder(&ladder));

    let support = ladder_support_suite(3, 3).unwrap();
    println!("\nsupport suite: {} checks, passed {}", support.records.len(), support.passed());

    let translation = translation_suite(2, 2).unwrap();
    println!("translation suite: {} checks, {} failing", translation.records.len(), translation.failures().count());
    for t in 1..=3 {
        let k = translation_multiplicity(HalfInt::int(2), HalfInt::ZERO, t, Sign::Plus).unwrap();
        println!("  A=2 B=0 T={t}: image is {k:?} copies of S(A,B)");
    }
}
