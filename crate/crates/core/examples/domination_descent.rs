//! Domination by a discrete-diagonal parameter, and the descent back down
//! through the defining Jacquet steps.

use arthur_packets::packets::{descend, enumerate_constituents, lift_symbol};
use arthur_packets::params::{dominate, enumerate_epschars, is_discrete_diagonal, ArthurParam, JordanBlock, LGroupType};
use arthur_packets::{CuspidalLabel, Sign};

fn main() {
    let rho = CuspidalLabel::trivial("rho");
    let blk = |a, b| JordanBlock::from_triple(rho.clone(), a, b).unwrap();
    let psi = ArthurParam::new(vec![blk(2, 2), blk(2, 2), blk(4, 2), blk(1, 1)], LGroupType::Orthogonal, Sign::Plus);
    println!("psi discrete diagonal: {}", is_discrete_diagonal(&psi));

    let dom = dominate(&psi, 2).unwrap();
    for o in dom.target.occurrences() {
        println!("  {} {} -> {}  T={}", o.id, o.block, dom.source.block(o.id).unwrap(), dom.shift(o.id));
    }
    println!("dominating parameter discrete diagonal: {}", is_discrete_diagonal(&dom.source));

    let eps = enumerate_epschars(&psi).pop().unwrap();
    let levels = enumerate_constituents(&psi, &eps).unwrap().pop().unwrap();
    let lifted = lift_symbol(&dom, &eps, &levels).unwrap();
    for step in &lifted.descent {
        println!("  Jac over {:?} brings {} to {}", step.cells(), step.occurrence, step.target);
    }
    let end = descend(&lifted).unwrap();
    println!("back to psi: {}", end.param.blocks() == psi.blocks());
}
