//! Characters of a parameter and the (ℓ,η) labels of each packet, with the
//! nonvanishing certificate of every constituent.

use arthur_packets::packets::{enumerate_constituents, ConstituentSymbol};
use arthur_packets::params::{enumerate_epschars, ArthurParam, JordanBlock, LGroupType};
use arthur_packets::{CuspidalLabel, Sign};

fn main() {
    let rho = CuspidalLabel::trivial("rho");
    let blocks = [(1, 1), (4, 2), (2, 2), (2, 2), (2, 2)]
        .into_iter()
        .map(|(a, b)| JordanBlock::from_triple(rho.clone(), a, b).unwrap())
        .collect();
    let psi = ArthurParam::new(blocks, LGroupType::Orthogonal, Sign::Plus);

    for eps in enumerate_epschars(&psi) {
        let shown: Vec<String> = eps.values().iter().map(|(b, s)| format!("{b}={s}")).collect();
        println!("eps {}", shown.join(" "));
        for levels in enumerate_constituents(&psi, &eps).unwrap() {
            let sym = ConstituentSymbol::new(psi.clone(), eps.clone(), levels).unwrap();
            let labels: Vec<String> = psi
                .occurrences()
                .iter()
                .map(|o| format!("{}{}", o.block, sym.levels.get(o.id).unwrap()))
                .collect();
            println!("  {}  {}", labels.join(" "), sym.zero_flag);
        }
    }
}
