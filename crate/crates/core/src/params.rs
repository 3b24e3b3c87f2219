//! Jordan blocks, Arthur parameters, centralizers, characters, the block
//! order and domination by a parameter of discrete diagonal restriction.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::segment::{CuspidalLabel, HalfInt, Sign};

/// Type of the dual group ^LG.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LGroupType {
    Orthogonal,
    Symplectic,
}

/// The classical group G.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GroupType {
    Symplectic,
    OrthogonalOdd,
    OrthogonalEven,
}

impl GroupType {
    pub fn dual_type(self) -> LGroupType {
        match self {
            GroupType::Symplectic | GroupType::OrthogonalEven => LGroupType::Orthogonal,
            GroupType::OrthogonalOdd => LGroupType::Symplectic,
        }
    }

    /// η_G: + for symplectic groups, the Hasse invariant otherwise.
    pub fn eta_g(self, hasse: Sign) -> Sign {
        match self {
            GroupType::Symplectic => Sign::Plus,
            _ => hasse,
        }
    }
}

/// A Jordan block (ρ,A,B,ζ), equivalently ρ ⊗ [a] ⊗ [b].
///
/// `upper` is A and `lower` is B. ζ is forced to + when B = 0.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct JordanBlock {
    rho: CuspidalLabel,
    upper: HalfInt,
    lower: HalfInt,
    zeta: Sign,
}

impl JordanBlock {
    pub fn new(rho: CuspidalLabel, upper: HalfInt, lower: HalfInt, zeta: Sign) -> Result<Self> {
        if lower < HalfInt::ZERO || upper < lower || !(upper - lower).is_integral() {
            return Err(Error::InvalidBlock(format!(
                "({rho},{upper},{lower},{zeta}): need A >= B >= 0 with A - B integral"
            )));
        }
        let zeta = if lower == HalfInt::ZERO { Sign::Plus } else { zeta };
        Ok(JordanBlock { rho, upper, lower, zeta })
    }

    pub fn from_triple(rho: CuspidalLabel, a: u32, b: u32) -> Result<Self> {
        if a == 0 || b == 0 {
            return Err(Error::InvalidBlock(format!("({rho},{a},{b}): a and b must be positive")));
        }
        let (upper, lower, zeta) = triple_to_quad(a, b);
        JordanBlock::new(rho, upper, lower, zeta)
    }

    pub fn rho(&self) -> &CuspidalLabel {
        &self.rho
    }

    /// A.
    pub fn upper(&self) -> HalfInt {
        self.upper
    }

    /// B.
    pub fn lower(&self) -> HalfInt {
        self.lower
    }

    pub fn zeta(&self) -> Sign {
        self.zeta
    }

    /// ζB, the exponent at the top-left of the tableau.
    pub fn zeta_b(&self) -> HalfInt {
        self.lower * self.zeta
    }

    /// A − B as an integer.
    pub fn gap(&self) -> i64 {
        (self.upper - self.lower).twice() / 2
    }

    pub fn triple(&self) -> (u32, u32) {
        quad_to_triple(self.upper, self.lower, self.zeta)
    }

    pub fn dimension(&self) -> u64 {
        let (a, b) = self.triple();
        u64::from(self.rho.d()) * u64::from(a) * u64::from(b)
    }

    pub fn is_elementary(&self) -> bool {
        self.upper == self.lower
    }

    /// (ρ, A+T, B+T, ζ).
    pub fn shifted(&self, t: u32) -> JordanBlock {
        let t = i64::from(t);
        JordanBlock { rho: self.rho.clone(), upper: self.upper + t, lower: self.lower + t, zeta: self.zeta }
    }

    /// The block with the same shape on another label.
    pub fn with_rho(&self, rho: CuspidalLabel) -> JordanBlock {
        JordanBlock { rho, ..self.clone() }
    }

    /// Whether [B,A] and [B',A'] meet, on the same label.
    pub fn overlaps(&self, other: &JordanBlock) -> bool {
        self.rho == other.rho && self.lower <= other.upper && other.lower <= self.upper
    }
}

impl Ord for JordanBlock {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.lower, self.upper, self.zeta, &self.rho).cmp(&(other.lower, other.upper, other.zeta, &other.rho))
    }
}

impl PartialOrd for JordanBlock {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for JordanBlock {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{},{})", self.rho, self.upper, self.lower, self.zeta)
    }
}

impl fmt::Display for JordanBlock {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl Serialize for JordanBlock {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr<'a> {
            rho: &'a str,
            a: u32,
            b: u32,
            #[serde(rename = "A")]
            upper: HalfInt,
            #[serde(rename = "B")]
            lower: HalfInt,
            zeta: Sign,
        }
        let (a, b) = self.triple();
        Repr { rho: self.rho.name(), a, b, upper: self.upper, lower: self.lower, zeta: self.zeta }.serialize(serializer)
    }
}

/// (a,b) ↦ (A,B,ζ).
pub fn triple_to_quad(a: u32, b: u32) -> (HalfInt, HalfInt, Sign) {
    let (a, b) = (i64::from(a), i64::from(b));
    let upper = HalfInt::from_twice(a + b - 2);
    let lower = HalfInt::from_twice((a - b).abs());
    let zeta = if a >= b { Sign::Plus } else { Sign::Minus };
    (upper, lower, zeta)
}

/// (A,B,ζ) ↦ (a,b).
pub fn quad_to_triple(upper: HalfInt, lower: HalfInt, zeta: Sign) -> (u32, u32) {
    let big = ((upper + lower).twice() / 2 + 1) as u32;
    let small = ((upper - lower).twice() / 2 + 1) as u32;
    match zeta {
        Sign::Plus => (big, small),
        Sign::Minus => (small, big),
    }
}

/// Whether ρ ⊗ [a] ⊗ [b] factors through a group of the type of ^LG.
pub fn has_parity(block: &JordanBlock, lgroup: LGroupType) -> bool {
    let Some(eta) = block.rho.eta() else {
        return false;
    };
    let (a, b) = block.triple();
    let sign = eta * Sign::parity(i64::from(a + b));
    match lgroup {
        LGroupType::Orthogonal => sign == Sign::Plus,
        LGroupType::Symplectic => sign == Sign::Minus,
    }
}

/// Stable identifier of one occurrence of a block in a parameter.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct OccId(pub u32);

impl fmt::Display for OccId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

/// One occurrence of a block.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Occurrence {
    pub id: OccId,
    pub block: JordanBlock,
}

/// An Arthur parameter: the multiset Jord(ψ) with stable occurrence ids,
/// kept in increasing block order, plus the type of ^LG and η_G.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ArthurParam {
    occurrences: Vec<Occurrence>,
    lgroup: LGroupType,
    eta_g: Sign,
    next_id: u32,
}

impl ArthurParam {
    pub fn new(blocks: Vec<JordanBlock>, lgroup: LGroupType, eta_g: Sign) -> Self {
        let mut psi = ArthurParam { occurrences: Vec::new(), lgroup, eta_g, next_id: 0 };
        psi.push_blocks(blocks);
        psi
    }

    fn push_blocks(&mut self, blocks: Vec<JordanBlock>) -> Vec<OccId> {
        let ids: Vec<OccId> = blocks
            .into_iter()
            .map(|block| {
                let id = OccId(self.next_id);
                self.next_id += 1;
                self.occurrences.push(Occurrence { id, block });
                id
            })
            .collect();
        self.occurrences.sort_by(|x, y| (&x.block, x.id).cmp(&(&y.block, y.id)));
        ids
    }

    /// A copy with further blocks, and the ids they received.
    pub fn with_added(&self, blocks: Vec<JordanBlock>) -> (ArthurParam, Vec<OccId>) {
        let mut psi = self.clone();
        let ids = psi.push_blocks(blocks);
        (psi, ids)
    }

    /// A copy with the occurrence `id` replaced by `block`, or removed on `None`.
    pub fn with_replaced(&self, id: OccId, block: Option<JordanBlock>) -> ArthurParam {
        let mut psi = self.clone();
        match block {
            Some(b) => {
                for o in psi.occurrences.iter_mut().filter(|o| o.id == id) {
                    o.block = b.clone();
                }
            }
            None => psi.occurrences.retain(|o| o.id != id),
        }
        psi.occurrences.sort_by(|x, y| (&x.block, x.id).cmp(&(&y.block, y.id)));
        psi
    }

    pub fn lgroup(&self) -> LGroupType {
        self.lgroup
    }

    pub fn eta_g(&self) -> Sign {
        self.eta_g
    }

    /// Occurrences in increasing order.
    pub fn occurrences(&self) -> &[Occurrence] {
        &self.occurrences
    }

    pub fn block(&self, id: OccId) -> Option<&JordanBlock> {
        self.occurrences.iter().find(|o| o.id == id).map(|o| &o.block)
    }

    pub fn len(&self) -> usize {
        self.occurrences.len()
    }

    pub fn is_empty(&self) -> bool {
        self.occurrences.is_empty()
    }

    pub fn multiplicity(&self, block: &JordanBlock) -> usize {
        self.occurrences.iter().filter(|o| &o.block == block).count()
    }

    pub fn contains(&self, block: &JordanBlock) -> bool {
        self.multiplicity(block) > 0
    }

    /// Distinct blocks in increasing order, each with its occurrences in order.
    pub fn classes(&self) -> Vec<(JordanBlock, Vec<OccId>)> {
        let mut out: Vec<(JordanBlock, Vec<OccId>)> = Vec::new();
        for o in &self.occurrences {
            match out.last_mut() {
                Some((b, ids)) if *b == o.block => ids.push(o.id),
                _ => out.push((o.block.clone(), vec![o.id])),
            }
        }
        out
    }

    pub fn good_parity(&self, block: &JordanBlock) -> bool {
        has_parity(block, self.lgroup)
    }

    /// Classes with the parity condition.
    pub fn good_classes(&self) -> Vec<(JordanBlock, Vec<OccId>)> {
        self.classes().into_iter().filter(|(b, _)| self.good_parity(b)).collect()
    }

    pub fn all_good_parity(&self) -> bool {
        self.occurrences.iter().all(|o| self.good_parity(&o.block))
    }

    /// Σ d_ρ·a·b.
    pub fn dimension(&self) -> u64 {
        self.occurrences.iter().map(|o| o.block.dimension()).sum()
    }

    /// The blocks, forgetting ids.
    pub fn blocks(&self) -> Vec<JordanBlock> {
        self.occurrences.iter().map(|o| o.block.clone()).collect()
    }
}

impl Serialize for ArthurParam {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.blocks().serialize(serializer)
    }
}

/// Kind of a centralizer factor.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum FactorKind {
    #[serde(rename = "O")]
    Orthogonal,
    #[serde(rename = "Sp")]
    Symplectic,
    #[serde(rename = "GL")]
    Linear,
}

/// One factor O(m), Sp(2m) or GL(m) of the centralizer, with `m` as in the name.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CentralizerFactor {
    pub class: JordanBlock,
    pub kind: FactorKind,
    pub m: usize,
}

impl fmt::Display for CentralizerFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            FactorKind::Orthogonal => write!(f, "O({})", self.m),
            FactorKind::Symplectic => write!(f, "Sp({})", 2 * self.m),
            FactorKind::Linear => write!(f, "GL({})", self.m),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CentralizerShape {
    pub factors: Vec<CentralizerFactor>,
}

/// The centralizer of ψ, one factor per class. A non-self-dual class is
/// paired with its dual class, which must carry the same multiplicity.
pub fn centralizer(psi: &ArthurParam) -> Result<CentralizerShape> {
    let mut factors = Vec::new();
    let classes = psi.classes();
    for (block, ids) in &classes {
        let m = ids.len();
        if psi.good_parity(block) {
            factors.push(CentralizerFactor { class: block.clone(), kind: FactorKind::Orthogonal, m });
        } else if block.rho().is_self_dual() {
            if m % 2 != 0 {
                return Err(Error::InvalidParameter(format!(
                    "self-dual block {block} without the parity condition has odd multiplicity {m}"
                )));
            }
            factors.push(CentralizerFactor { class: block.clone(), kind: FactorKind::Symplectic, m: m / 2 });
        } else {
            let dual = classes.iter().find(|(b, _)| {
                b.rho().name() == block.rho().dual_name() && (b.upper(), b.lower(), b.zeta()) == (block.upper(), block.lower(), block.zeta())
            });
            match dual {
                Some((_, dual_ids)) if dual_ids.len() == m => {
                    if block.rho().name() < block.rho().dual_name() {
                        factors.push(CentralizerFactor { class: block.clone(), kind: FactorKind::Linear, m });
                    }
                }
                _ => {
                    return Err(Error::InvalidParameter(format!(
                        "block {block} is not matched by its dual {} at the same multiplicity",
                        block.rho().dual_name()
                    )))
                }
            }
        }
    }
    Ok(CentralizerShape { factors })
}

/// A character ε of the centralizer: a sign per good-parity class.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EpsChar {
    values: BTreeMap<JordanBlock, Sign>,
}

impl EpsChar {
    pub fn new(values: BTreeMap<JordanBlock, Sign>) -> Self {
        EpsChar { values }
    }

    pub fn get(&self, block: &JordanBlock) -> Option<Sign> {
        self.values.get(block).copied()
    }

    pub fn values(&self) -> &BTreeMap<JordanBlock, Sign> {
        &self.values
    }

    pub fn set(&mut self, block: JordanBlock, s: Sign) {
        self.values.insert(block, s);
    }

    pub fn remove(&mut self, block: &JordanBlock) {
        self.values.remove(block);
    }

    /// Check that ε is defined exactly on the good-parity classes of ψ and
    /// that Π ε(block) over Jord(ψ), with multiplicity, is η_G.
    pub fn validate(&self, psi: &ArthurParam) -> Result<()> {
        let good: BTreeSet<JordanBlock> = psi.good_classes().into_iter().map(|(b, _)| b).collect();
        let keys: BTreeSet<JordanBlock> = self.values.keys().cloned().collect();
        if let Some(b) = good.difference(&keys).next() {
            return Err(Error::InvalidCharacter(format!("no value on good-parity block {b}")));
        }
        if let Some(b) = keys.difference(&good).next() {
            return Err(Error::InvalidCharacter(format!("value on {b}, which is not a good-parity block of the parameter")));
        }
        let product = psi
            .good_classes()
            .iter()
            .fold(Sign::Plus, |acc, (b, ids)| acc * self.values[b].pow(ids.len() as i64));
        if product != psi.eta_g() {
            return Err(Error::InvalidCharacter(format!(
                "product of eps over Jord with multiplicity is {product}, but eta_G is {}",
                psi.eta_g()
            )));
        }
        Ok(())
    }
}

impl Serialize for EpsChar {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Entry<'a> {
            block: &'a JordanBlock,
            eps: Sign,
        }
        let entries: Vec<Entry> = self.values.iter().map(|(block, &eps)| Entry { block, eps }).collect();
        entries.serialize(serializer)
    }
}

/// All characters of ψ, in binary order over the good classes with + first.
pub fn enumerate_epschars(psi: &ArthurParam) -> Vec<EpsChar> {
    let classes = psi.good_classes();
    let n = classes.len();
    (0..1u64 << n)
        .map(|code| {
            let values = classes
                .iter()
                .enumerate()
                .map(|(i, (b, _))| {
                    let bit = (code >> (n - 1 - i)) & 1;
                    (b.clone(), if bit == 0 { Sign::Plus } else { Sign::Minus })
                })
                .collect();
            EpsChar { values }
        })
        .filter(|e| e.validate(psi).is_ok())
        .collect()
}

/// Occurrences in increasing block order.
pub fn order_blocks(psi: &ArthurParam) -> Vec<Occurrence> {
    psi.occurrences().to_vec()
}

/// Restriction to the diagonal SL(2): each block contributes (ρ, 2C+1) for
/// C from B to A. Sorted.
pub fn restriction_diagonal(psi: &ArthurParam) -> Vec<(CuspidalLabel, u32)> {
    let mut out: Vec<(CuspidalLabel, u32)> = psi
        .occurrences()
        .iter()
        .flat_map(|o| {
            let b = &o.block;
            (0..=b.gap()).map(move |k| (b.rho().clone(), ((b.lower() + k).twice() + 1) as u32))
        })
        .collect();
    out.sort();
    out
}

pub fn is_discrete_diagonal(psi: &ArthurParam) -> bool {
    restriction_diagonal(psi).windows(2).all(|w| w[0] != w[1])
}

pub fn is_elementary(psi: &ArthurParam) -> bool {
    psi.occurrences().iter().all(|o| o.block.is_elementary())
}

/// ψ̃ dominating ψ: `source` is ψ̃, `target` is ψ, and occurrence ids agree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DominationMap {
    pub source: ArthurParam,
    pub target: ArthurParam,
    pub shifts: BTreeMap<OccId, u32>,
}

impl DominationMap {
    pub fn shift(&self, id: OccId) -> u32 {
        self.shifts.get(&id).copied().unwrap_or(0)
    }
}

/// Shift blocks up so that, label by label, the intervals [B+T, A+T] are
/// pairwise separated by more than `margin`. Occurrences are visited in
/// increasing order and each takes the least admissible T.
pub fn dominate(psi: &ArthurParam, margin: u32) -> Result<DominationMap> {
    if let Some(o) = psi.occurrences().iter().find(|o| !psi.good_parity(&o.block)) {
        return Err(Error::UnsupportedParameter(format!(
            "domination needs the parity condition, block {} lacks it",
            o.block
        )));
    }
    let mut top: BTreeMap<&str, HalfInt> = BTreeMap::new();
    let mut shifts = BTreeMap::new();
    let mut source = psi.clone();
    for o in psi.occurrences() {
        let b = &o.block;
        let t = match top.get(b.rho().name()) {
            None => 0,
            Some(&prev) => {
                let floor = prev + i64::from(margin);
                if b.lower() > floor {
                    0
                } else {
                    ((floor - b.lower()).twice() / 2 + 1) as u32
                }
            }
        };
        let shifted = b.shifted(t);
        top.insert(b.rho().name(), shifted.upper());
        shifts.insert(o.id, t);
        if t > 0 {
            source = source.with_replaced(o.id, Some(shifted));
        }
    }
    Ok(DominationMap { source, target: psi.clone(), shifts })
}
