//! Level counts and the two sign formulas for ε on a single block.

use arthur_packets::oracle::tabulate_sign_agreement;
use arthur_packets::packets::{count_params, enumerate_levels};
use arthur_packets::{HalfInt, Sign};

fn main() {
    println!("A    B    levels  eps=+  eps=-");
    for b2 in [0, 1] {
        for gap in 0..=4 {
            let b = HalfInt::from_twice(b2);
            let a = b + gap;
            println!(
                "{:<4} {:<4} {:<7} {:<6} {}",
                a.to_string(),
                b.to_string(),
                count_params(a, b),
                enumerate_levels(a, b, Sign::Plus).len(),
                enumerate_levels(a, b, Sign::Minus).len()
            );
        }
    }

    println!("\nA  B  level  product  closed  ratio");
    for row in tabulate_sign_agreement(3).unwrap() {
        println!(
            "{}  {}  {:<6} {:<8} {:<7} {}",
            row.a, row.b, row.level.to_string(), row.product_form.to_string(), row.closed_form.to_string(), row.ratio
        );
    }
}
