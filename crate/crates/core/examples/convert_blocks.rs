//! Triples (a,b) against quadruples (A,B,ζ), with the parity condition and
//! the centralizer of a small parameter.

use arthur_packets::params::{centralizer, has_parity, quad_to_triple, triple_to_quad, ArthurParam, JordanBlock, LGroupType};
use arthur_packets::{CuspidalLabel, Sign};

fn main() {
    let rho = CuspidalLabel::trivial("rho");
    println!("a  b  A    B    zeta  orth  symp");
    for a in 1..=4 {
        for b in 1..=4 {
            let (upper, lower, zeta) = triple_to_quad(a, b);
            assert_eq!(quad_to_triple(upper, lower, zeta), (a, b));
            let block = JordanBlock::from_triple(rho.clone(), a, b).unwrap();
            println!(
                "{a}  {b}  {:<4} {:<4} {zeta}     {:<5} {}",
                upper.to_string(),
                lower.to_string(),
                has_parity(&block, LGroupType::Orthogonal),
                has_parity(&block, LGroupType::Symplectic)
            );
        }
    }

    let blocks = [(2, 2), (2, 2), (3, 2), (3, 2), (1, 1)]
        .into_iter()
        .map(|(a, b)| JordanBlock::from_triple(rho.clone(), a, b).unwrap())
        .collect();
    let psi = ArthurParam::new(blocks, LGroupType::Orthogonal, Sign::Plus);
    let shape = centralizer(&psi).unwrap();
    let names: Vec<String> = shape.factors.iter().map(|f| format!("{} on {}", f, f.class)).collect();
    println!("\ncentralizer of dimension {} parameter: {}", psi.dimension(), names.join(", "));
}
