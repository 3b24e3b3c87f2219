//! Inducing a Speh factor onto the constituents of a packet, and the
//! factorization of a packet sum through its odd-multiplicity core.

use arthur_packets::induction::{decompose_speh_times, packet_sum_identity, DEFAULT_MARGIN};
use arthur_packets::packets::{enumerate_constituents, ConstituentSymbol};
use arthur_packets::params::{enumerate_epschars, ArthurParam, JordanBlock, LGroupType};
use arthur_packets::{CuspidalLabel, Sign};

fn main() {
    let rho = CuspidalLabel::trivial("rho");
    let blk = |a, b| JordanBlock::from_triple(rho.clone(), a, b).unwrap();

    let psi = ArthurParam::new(vec![blk(1, 1), blk(3, 1)], LGroupType::Orthogonal, Sign::Plus);
    let eps = enumerate_epschars(&psi).remove(0);
    let levels = enumerate_constituents(&psi, &eps).unwrap().remove(0);
    let base = ConstituentSymbol::new(psi, eps, levels).unwrap();
    let speh = blk(9, 3);
    let dec = decompose_speh_times(&speh, &base, DEFAULT_MARGIN).unwrap();
    println!("S{speh} x pi: {} constituents, length at most {}", dec.constituents.len(), dec.length_bound);
    for c in &dec.constituents {
        let labels: Vec<String> = c
            .param
            .occurrences()
            .iter()
            .map(|o| format!("{}{}", o.block, c.levels.get(o.id).unwrap()))
            .collect();
        println!("  {}  {}", labels.join(" "), c.zero_flag);
    }

    let psi = ArthurParam::new(vec![blk(1, 1), blk(3, 3), blk(3, 3), blk(3, 3)], LGroupType::Orthogonal, Sign::Plus);
    let (core, _) = arthur_packets::induction::packet_sum_factorization(&psi).unwrap();
    for eps0 in enumerate_epschars(&core) {
        let check = packet_sum_identity(&psi, &eps0).unwrap();
        println!(
            "\nfactors {:?}: packets {} induced {} identity {}",
            check.factors.iter().map(|(b, c)| format!("{b}^{c}")).collect::<Vec<_>>(),
            check.packet_count,
            check.induced_count,
            check.passed()
        );
    }
}
