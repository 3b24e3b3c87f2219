//! Induced representations S(ρ,A,B,ζ)^a × π as lists of constituent symbols,
//! the factorization of a packet sum, and nonvanishing certificates.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::packets::{enumerate_constituents, enumerate_levels, nullity_fiber, ConstituentSymbol, ZeroFlag};
use crate::params::{is_discrete_diagonal, ArthurParam, EpsChar, JordanBlock};
use crate::segment::{CuspidalLabel, Sign};

/// Default separation margin between blocks of the same label.
pub const DEFAULT_MARGIN: u32 = 2;

/// The constituents of ×_i S(ρ,A,B,ζ)^{copies} × π(base).
#[derive(Clone, Debug, Serialize)]
pub struct InducedDecomposition {
    pub factors: Vec<(JordanBlock, u32)>,
    pub base: ConstituentSymbol,
    pub constituents: Vec<ConstituentSymbol>,
    pub length_bound: u32,
}

/// Zero if two consecutive occurrences of a class break the fiber
/// condition; nonzero if the good-parity support, without multiplicities,
/// has discrete diagonal restriction; unknown otherwise.
pub fn nonvanishing_certificate(sym: &ConstituentSymbol) -> ZeroFlag {
    let psi = &sym.param;
    for (block, ids) in psi.good_classes() {
        for w in ids.windows(2) {
            let (Some(l1), Some(l2)) = (sym.levels.get(w[0]), sym.levels.get(w[1])) else {
                continue;
            };
            if !nullity_fiber(&l1, &l2, block.upper(), block.lower()) {
                return ZeroFlag::Zero;
            }
        }
    }
    let support = ArthurParam::new(
        psi.good_classes().into_iter().map(|(b, _)| b).collect(),
        psi.lgroup(),
        psi.eta_g(),
    );
    if is_discrete_diagonal(&support) {
        ZeroFlag::Nonzero
    } else {
        ZeroFlag::Unknown
    }
}

fn inherit(base: ZeroFlag, own: ZeroFlag) -> ZeroFlag {
    if own == ZeroFlag::Zero {
        ZeroFlag::Zero
    } else if base == ZeroFlag::Nonzero {
        ZeroFlag::Nonzero
    } else {
        own
    }
}

fn check_base(base: &ConstituentSymbol) -> Result<()> {
    if base.zero_flag == ZeroFlag::Zero {
        return Err(Error::Precondition("the base symbol is known to be zero".into()));
    }
    if !base.descent.is_empty() {
        return Err(Error::Precondition("the base symbol has a pending descent".into()));
    }
    Ok(())
}

/// Every base block on the same label, other than `block` itself, lies
/// strictly below [B,A] or more than `margin` above it.
fn check_separation(block: &JordanBlock, base: &ArthurParam, margin: u32) -> Result<()> {
    for (other, _) in base.classes() {
        if other.rho() != block.rho() || &other == block {
            continue;
        }
        let below = other.upper() < block.lower();
        let above = (other.lower() - block.upper()).twice() > 2 * i64::from(margin);
        if !(below || above) {
            return Err(Error::Precondition(format!(
                "base block {other} is not separated from {block} (need A' < B or B' - A > {margin})"
            )));
        }
    }
    Ok(())
}

fn check_good(block: &JordanBlock, base: &ConstituentSymbol) -> Result<()> {
    if !base.param.good_parity(block) {
        return Err(Error::Precondition(format!(
            "block {block} lacks the parity condition; the induced representation is irreducible"
        )));
    }
    Ok(())
}

fn decompose(block: &JordanBlock, copies: u32, base: &ConstituentSymbol, margin: Option<u32>) -> Result<InducedDecomposition> {
    if copies == 0 {
        return Err(Error::InvalidInput("the number of copies must be positive".into()));
    }
    check_good(block, base)?;
    check_base(base)?;
    if let Some(m) = margin {
        check_separation(block, &base.param, m)?;
    }
    let alternation = Sign::parity(block.gap());
    let added = vec![block.clone(); 2 * copies as usize];
    let (param, new_ids) = base.param.with_added(added);
    let factors = vec![(block.clone(), copies)];

    if let Some(ids) = base.param.classes().into_iter().find(|(b, _)| b == block).map(|(_, ids)| ids) {
        // the class continues its alternation through the new occurrences
        let first = base.levels.get(ids[0]).expect("good parity");
        let mut levels = base.levels.clone();
        for (j, id) in new_ids.iter().enumerate() {
            levels.set(*id, first.twisted(alternation.pow((ids.len() + j) as i64)));
        }
        let mut sym = ConstituentSymbol::new(param, base.eps.clone(), levels)?;
        sym.zero_flag = inherit(base.zero_flag, sym.zero_flag);
        return Ok(InducedDecomposition { factors, base: base.clone(), constituents: vec![sym], length_bound: 1 });
    }

    let mut constituents = Vec::new();
    for e in Sign::both() {
        for level in enumerate_levels(block.upper(), block.lower(), e) {
            let mut eps = base.eps.clone();
            eps.set(block.clone(), e);
            let mut levels = base.levels.clone();
            for (j, id) in new_ids.iter().enumerate() {
                levels.set(*id, level.twisted(alternation.pow(j as i64)));
            }
            let mut sym = ConstituentSymbol::new(param.clone(), eps, levels)?;
            if copies == 1 {
                sym.zero_flag = inherit(base.zero_flag, sym.zero_flag);
            }
            constituents.push(sym);
        }
    }
    let length_bound = (block.gap() + 2) as u32;
    Ok(InducedDecomposition { factors, base: base.clone(), constituents, length_bound })
}

/// S(ρ,A,B,ζ) × π(base): one constituent per level (ℓ,η) over (A,B), adding
/// two occurrences labelled (ℓ,η) and (ℓ,η(−1)^{A−B}).
pub fn decompose_speh_times(block: &JordanBlock, base: &ConstituentSymbol, margin: u32) -> Result<InducedDecomposition> {
    if base.param.contains(block) {
        return Err(Error::Precondition(format!("block {block} already occurs in the base")));
    }
    decompose(block, 1, base, Some(margin))
}

/// S(ρ,A,B,ζ)^a × π(base). When the block already occurs in the base the
/// result is a single constituent continuing the base's labels.
pub fn decompose_multi(block: &JordanBlock, a: u32, base: &ConstituentSymbol, margin: u32) -> Result<InducedDecomposition> {
    decompose(block, a, base, Some(margin))
}

/// Factorization of a packet sum: ψ₀ keeps the blocks of odd multiplicity
/// once, and each class contributes (mult − mult₀)/2 Speh factors.
pub fn packet_sum_factorization(psi: &ArthurParam) -> Result<(ArthurParam, Vec<(JordanBlock, u32)>)> {
    if let Some(o) = psi.occurrences().iter().find(|o| !psi.good_parity(&o.block)) {
        return Err(Error::Precondition(format!("block {} lacks the parity condition", o.block)));
    }
    let mut core = Vec::new();
    let mut factors = Vec::new();
    for (block, ids) in psi.classes() {
        let mult = ids.len() as u32;
        let mult0 = mult % 2;
        if mult0 == 1 {
            core.push(block.clone());
        }
        let count = (mult - mult0) / 2;
        if count > 0 {
            factors.push((block, count));
        }
    }
    Ok((ArthurParam::new(core, psi.lgroup(), psi.eta_g()), factors))
}

/// Both sides of the packet-sum factorization for one character ε₀ of ψ₀.
#[derive(Clone, Debug, Serialize)]
pub struct PacketSumCheck {
    pub psi0: ArthurParam,
    pub factors: Vec<(JordanBlock, u32)>,
    /// Σ over ε extending ε₀ of the number of constituents of π(ψ,ε).
    pub packet_count: usize,
    /// Number of constituents of ×factors × π(ψ₀,ε₀).
    pub induced_count: usize,
    pub conserved: bool,
    pub same_constituents: bool,
}

impl PacketSumCheck {
    pub fn passed(&self) -> bool {
        self.conserved && self.same_constituents && self.packet_count == self.induced_count
    }
}

/// Compare ⊕_{ε ⊃ ε₀} π(ψ,ε) with ×factors S(ρ,A,B,ζ) × π(ψ₀,ε₀), as sets of
/// (ℓ,η) labels.
pub fn packet_sum_identity(psi: &ArthurParam, eps0: &EpsChar) -> Result<PacketSumCheck> {
    let (psi0, factors) = packet_sum_factorization(psi)?;
    eps0.validate(&psi0)?;
    let conserved = psi.classes().iter().all(|(b, ids)| {
        let count = factors.iter().find(|(f, _)| f == b).map_or(0, |(_, c)| *c) as usize;
        psi0.multiplicity(b) + 2 * count == ids.len()
    });

    let mut packet = BTreeSet::new();
    for eps in crate::params::enumerate_epschars(psi) {
        let extends = psi0.good_classes().iter().all(|(b, _)| eps.get(b) == eps0.get(b));
        if !extends {
            continue;
        }
        for levels in enumerate_constituents(psi, &eps)? {
            packet.insert(ConstituentSymbol::new(psi.clone(), eps.clone(), levels)?.key());
        }
    }

    let mut current: Vec<ConstituentSymbol> = enumerate_constituents(&psi0, eps0)?
        .into_iter()
        .map(|levels| ConstituentSymbol::new(psi0.clone(), eps0.clone(), levels))
        .collect::<Result<_>>()?;
    for (block, count) in &factors {
        let mut next = Vec::new();
        for sym in &current {
            next.extend(decompose(block, *count, sym, None)?.constituents);
        }
        current = next;
    }
    let induced: BTreeSet<_> = current.iter().map(ConstituentSymbol::key).collect();

    Ok(PacketSumCheck {
        psi0,
        factors,
        packet_count: packet.len(),
        induced_count: current.len(),
        conserved,
        same_constituents: packet == induced,
    })
}

fn dual_block(block: &JordanBlock) -> JordanBlock {
    let rho = block.rho();
    if rho.is_self_dual() {
        block.clone()
    } else {
        block.with_rho(CuspidalLabel::non_self_dual(rho.dual_name(), rho.d(), rho.name()))
    }
}

/// ×_{E} S(ρ,A,B,ζ) × π(base) for blocks without the parity condition: an
/// irreducible representation, recorded by adding each block and its dual.
pub fn bad_parity_irreducible(e: &[JordanBlock], base: &ConstituentSymbol) -> Result<ConstituentSymbol> {
    check_base(base)?;
    if let Some(b) = e.iter().find(|b| base.param.good_parity(b)) {
        return Err(Error::Precondition(format!("block {b} has the parity condition")));
    }
    let mut sorted = e.to_vec();
    sorted.sort();
    let added = sorted.iter().flat_map(|b| [b.clone(), dual_block(b)]).collect();
    let (param, _) = base.param.with_added(added);
    let mut sym = ConstituentSymbol::new(param, base.eps.clone(), base.levels.clone())?;
    sym.zero_flag = inherit(base.zero_flag, sym.zero_flag);
    Ok(sym)
}

/// [`bad_parity_irreducible`] as a decomposition of length one.
pub fn bad_parity_decomposition(e: &[JordanBlock], base: &ConstituentSymbol) -> Result<InducedDecomposition> {
    let sym = bad_parity_irreducible(e, base)?;
    let mut factors: Vec<(JordanBlock, u32)> = Vec::new();
    for b in e {
        match factors.iter_mut().find(|(f, _)| f == b) {
            Some((_, c)) => *c += 1,
            None => factors.push((b.clone(), 1)),
        }
    }
    factors.sort();
    Ok(InducedDecomposition { factors, base: base.clone(), constituents: vec![sym], length_bound: 1 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::packets::{ConstituentParam, SignedLevel};
    use crate::params::{LGroupType, OccId};
    use crate::segment::HalfInt;

    fn h(s: &str) -> HalfInt {
        s.parse().unwrap()
    }

    fn rho() -> CuspidalLabel {
        CuspidalLabel::trivial("rho")
    }

    fn blk(a: &str, b: &str) -> JordanBlock {
        JordanBlock::new(rho(), h(a), h(b), Sign::Plus).unwrap()
    }

    fn empty_base() -> ConstituentSymbol {
        let psi = ArthurParam::new(vec![], LGroupType::Orthogonal, Sign::Plus);
        ConstituentSymbol::new(psi, EpsChar::default(), ConstituentParam::default()).unwrap()
    }

    fn one_block_base(b: JordanBlock, e: Sign, level: SignedLevel) -> ConstituentSymbol {
        let psi = ArthurParam::new(vec![b.clone()], LGroupType::Orthogonal, e);
        ConstituentSymbol::new(psi, EpsChar::new([(b, e)].into()), ConstituentParam::new([(OccId(0), level)].into())).unwrap()
    }

    fn levels_of(d: &InducedDecomposition, b: &JordanBlock) -> Vec<Vec<Option<SignedLevel>>> {
        d.constituents
            .iter()
            .map(|c| c.levels.by_class(&c.param).into_iter().find(|(x, _)| x == b).unwrap().1)
            .collect()
    }

    #[test]
    fn speh_times_counts() {
        let d = decompose_speh_times(&blk("1", "1"), &empty_base(), 2).unwrap();
        assert_eq!(d.constituents.len(), 2);
        assert_eq!(d.length_bound, 2);
        let d = decompose_speh_times(&blk("2", "1"), &empty_base(), 2).unwrap();
        assert_eq!(d.constituents.len(), 3);
        let first: Vec<_> = levels_of(&d, &blk("2", "1")).into_iter().map(|v| v[0].unwrap()).collect();
        assert!(first.contains(&SignedLevel::new(1, None)));
        assert!(d.constituents.iter().all(|c| c.zero_flag == ZeroFlag::Nonzero));
    }

    #[test]
    fn speh_times_separation() {
        let base = one_block_base(blk("2", "2"), Sign::Plus, SignedLevel::new(0, Some(Sign::Plus)));
        assert!(matches!(decompose_speh_times(&blk("3", "1"), &base, 2), Err(Error::Precondition(_))));
        assert!(decompose_speh_times(&blk("6", "5"), &base, 2).is_ok());
        // B' - A must exceed the margin
        let base = one_block_base(blk("4", "4"), Sign::Plus, SignedLevel::new(0, Some(Sign::Plus)));
        assert!(decompose_speh_times(&blk("2", "1"), &base, 2).is_err());
        assert!(decompose_speh_times(&blk("2", "1"), &base, 1).is_ok());
    }

    #[test]
    fn multi_copies() {
        let d = decompose_multi(&blk("1", "1"), 2, &empty_base(), 2).unwrap();
        assert_eq!(d.constituents.len(), 2);
        let pats = levels_of(&d, &blk("1", "1"));
        for p in pats {
            assert_eq!(p.len(), 4);
            assert!(p.iter().all(|l| *l == p[0]));
        }
        let one = decompose_multi(&blk("2", "1"), 1, &empty_base(), 2).unwrap();
        let speh = decompose_speh_times(&blk("2", "1"), &empty_base(), 2).unwrap();
        let k = |d: &InducedDecomposition| d.constituents.iter().map(ConstituentSymbol::key).collect::<Vec<_>>();
        assert_eq!(k(&one), k(&speh));

        let base = one_block_base(blk("2", "1"), Sign::Minus, SignedLevel::new(0, Some(Sign::Plus)));
        let d = decompose_multi(&blk("2", "1"), 1, &base, 2).unwrap();
        assert_eq!(d.constituents.len(), 1);
        assert_eq!(d.length_bound, 1);
        let p = &levels_of(&d, &blk("2", "1"))[0];
        let etas: Vec<_> = p.iter().map(|l| l.unwrap().eta.unwrap()).collect();
        assert_eq!(etas, vec![Sign::Plus, Sign::Minus, Sign::Plus]);
    }

    #[test]
    fn factorization() {
        let b = blk("1", "1");
        let psi = ArthurParam::new(vec![b.clone(); 3], LGroupType::Orthogonal, Sign::Plus);
        let (psi0, f) = packet_sum_factorization(&psi).unwrap();
        assert_eq!(psi0.multiplicity(&b), 1);
        assert_eq!(f, vec![(b.clone(), 1)]);
        let psi = ArthurParam::new(vec![b.clone(); 2], LGroupType::Orthogonal, Sign::Plus);
        let (psi0, f) = packet_sum_factorization(&psi).unwrap();
        assert!(psi0.is_empty());
        assert_eq!(f, vec![(b.clone(), 1)]);
        let psi = ArthurParam::new(vec![b.clone(), blk("2", "2")], LGroupType::Orthogonal, Sign::Plus);
        let (psi0, f) = packet_sum_factorization(&psi).unwrap();
        assert_eq!(psi0.blocks(), psi.blocks());
        assert!(f.is_empty());
    }

    #[test]
    fn factorization_identity() {
        let b = blk("2", "1");
        let psi = ArthurParam::new(vec![b.clone(); 3], LGroupType::Orthogonal, Sign::Minus);
        let eps0 = EpsChar::new([(b, Sign::Minus)].into());
        let check = packet_sum_identity(&psi, &eps0).unwrap();
        assert!(check.passed(), "{check:?}");
        assert_eq!(check.packet_count, 2);
    }

    #[test]
    fn bad_parity() {
        let bad = JordanBlock::from_triple(rho(), 2, 1).unwrap();
        let sym = bad_parity_irreducible(std::slice::from_ref(&bad), &empty_base()).unwrap();
        assert_eq!(sym.param.multiplicity(&bad), 2);
        let same = bad_parity_irreducible(&[], &empty_base()).unwrap();
        assert_eq!(same, empty_base());
        assert!(bad_parity_irreducible(&[blk("1", "1")], &empty_base()).is_err());
        let other = JordanBlock::from_triple(rho(), 4, 1).unwrap();
        let x = bad_parity_irreducible(&[bad.clone(), other.clone()], &empty_base()).unwrap();
        let y = bad_parity_irreducible(&[other, bad], &empty_base()).unwrap();
        assert_eq!(x.key(), y.key());
    }

    #[test]
    fn certificates() {
        let b = blk("1", "0");
        let psi = ArthurParam::new(vec![b.clone(), b.clone()], LGroupType::Orthogonal, Sign::Plus);
        let eps = EpsChar::new([(b, Sign::Minus)].into());
        let mk = |l1: SignedLevel, l2: SignedLevel| {
            ConstituentSymbol::new(psi.clone(), eps.clone(), ConstituentParam::new([(OccId(0), l1), (OccId(1), l2)].into()))
                .unwrap()
        };
        let p = SignedLevel::new(0, Some(Sign::Plus));
        let m = SignedLevel::new(0, Some(Sign::Minus));
        assert_eq!(mk(p, m).zero_flag, ZeroFlag::Nonzero);
        assert_eq!(mk(p, p).zero_flag, ZeroFlag::Zero);
        let psi = ArthurParam::new(vec![blk("1", "0"), blk("1", "1")], LGroupType::Orthogonal, Sign::Minus);
        let eps = EpsChar::new([(blk("1", "0"), Sign::Minus), (blk("1", "1"), Sign::Plus)].into());
        let levels = ConstituentParam::new([(OccId(0), p), (OccId(1), p)].into());
        assert_eq!(ConstituentSymbol::new(psi, eps, levels).unwrap().zero_flag, ZeroFlag::Unknown);
    }
}
