//! The (ℓ,η) parametrization of the constituents of a packet, and a partial
//! symbolic evaluator for Jacquet operators on constituent symbols.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::induction::nonvanishing_certificate;
use crate::params::{is_discrete_diagonal, is_elementary, ArthurParam, DominationMap, EpsChar, JordanBlock, OccId};
use crate::segment::{tableau_cells, CuspidalLabel, HalfInt, Sign};

/// ℓ̲ and η̲ at one occurrence. η is absent exactly when 2ℓ = A−B+1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct SignedLevel {
    pub ell: u32,
    pub eta: Option<Sign>,
}

impl SignedLevel {
    pub fn new(ell: u32, eta: Option<Sign>) -> Self {
        SignedLevel { ell, eta }
    }

    pub fn validate(&self, a: HalfInt, b: HalfInt) -> Result<()> {
        let width = (a - b).twice() / 2 + 1;
        let ell = i64::from(self.ell);
        let ok = 2 * ell <= width && (self.eta.is_none() == (2 * ell == width));
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidParameter(format!("level {self} is not valid for A={a}, B={b}")))
        }
    }

    /// The same ℓ with η multiplied by `s`.
    pub fn twisted(&self, s: Sign) -> SignedLevel {
        SignedLevel { ell: self.ell, eta: self.eta.map(|e| e * s) }
    }
}

impl fmt::Display for SignedLevel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.eta {
            Some(e) => write!(f, "({},{e})", self.ell),
            None => write!(f, "({},~)", self.ell),
        }
    }
}

/// ε = η^{A−B+1}(−1)^{⌊(A−B+1)/2⌋+ℓ}, with η = + when absent.
pub fn eps_closed_form(a: HalfInt, b: HalfInt, level: &SignedLevel) -> Sign {
    let width = (a - b).twice() / 2 + 1;
    let eta = level.eta.unwrap_or(Sign::Plus);
    eta.pow(width) * Sign::parity(width.div_euclid(2) + i64::from(level.ell))
}

/// Π_{C=B+ℓ}^{A−ℓ} η(−1)^C, for integral A and B only.
pub fn eps_product_form(a: HalfInt, b: HalfInt, level: &SignedLevel) -> Result<Sign> {
    let (Some(ai), Some(bi)) = (a.to_int(), b.to_int()) else {
        return Err(Error::UnsupportedInput(format!(
            "the product form needs integral A and B, got A={a}, B={b}"
        )));
    };
    let eta = level.eta.unwrap_or(Sign::Plus);
    let ell = i64::from(level.ell);
    Ok((bi + ell..=ai - ell).fold(Sign::Plus, |acc, c| acc * eta * Sign::parity(c)))
}

/// A−B+2, the number of levels of a block, which is inf(a,b)+1.
pub fn count_params(a: HalfInt, b: HalfInt) -> u32 {
    ((a - b).twice() / 2 + 2) as u32
}

/// All levels over (A,B) whose closed-form sign is `eps`.
pub fn enumerate_levels(a: HalfInt, b: HalfInt, eps: Sign) -> Vec<SignedLevel> {
    let width = (a - b).twice() / 2 + 1;
    let mut out = Vec::new();
    for ell in 0..=(width / 2) as u32 {
        if 2 * i64::from(ell) == width {
            out.push(SignedLevel::new(ell, None));
        } else {
            out.push(SignedLevel::new(ell, Some(Sign::Plus)));
            out.push(SignedLevel::new(ell, Some(Sign::Minus)));
        }
    }
    out.retain(|l| eps_closed_form(a, b, l) == eps);
    out
}

/// Levels attached to the good-parity occurrences of a parameter.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ConstituentParam {
    labels: BTreeMap<OccId, SignedLevel>,
}

impl ConstituentParam {
    pub fn new(labels: BTreeMap<OccId, SignedLevel>) -> Self {
        ConstituentParam { labels }
    }

    pub fn get(&self, id: OccId) -> Option<SignedLevel> {
        self.labels.get(&id).copied()
    }

    pub fn set(&mut self, id: OccId, level: SignedLevel) {
        self.labels.insert(id, level);
    }

    pub fn remove(&mut self, id: OccId) {
        self.labels.remove(&id);
    }

    pub fn labels(&self) -> &BTreeMap<OccId, SignedLevel> {
        &self.labels
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    /// Per class of ψ, the levels along its occurrences in order.
    pub fn by_class(&self, psi: &ArthurParam) -> Vec<(JordanBlock, Vec<Option<SignedLevel>>)> {
        psi.classes()
            .into_iter()
            .map(|(b, ids)| (b, ids.iter().map(|id| self.get(*id)).collect()))
            .collect()
    }
}

/// Whether π(ψ,ε,ℓ̲,η̲) is known to be nonzero, known to be zero, or neither.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ZeroFlag {
    Nonzero,
    Zero,
    Unknown,
}

impl fmt::Display for ZeroFlag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ZeroFlag::Nonzero => "nonzero",
            ZeroFlag::Zero => "zero",
            ZeroFlag::Unknown => "unknown",
        })
    }
}

/// A pending step of the defining descent from a dominating parameter:
/// Jac over C(ζ,A,B,T) takes the occurrence from (A+T,B+T) down to `target`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct DescentStep {
    pub occurrence: OccId,
    pub target: JordanBlock,
    pub shift: u32,
    pub target_eps: Sign,
}

impl DescentStep {
    pub fn cells(&self) -> Vec<HalfInt> {
        tableau_cells(self.target.zeta(), self.target.upper(), self.target.lower(), self.shift)
            .expect("target blocks are valid")
    }
}

/// Levels by class, then ε.
pub type SymbolKey = (Vec<(JordanBlock, Vec<Option<SignedLevel>>)>, EpsChar);

/// The formal constituent π(ψ,ε,ℓ̲,η̲).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ConstituentSymbol {
    pub param: ArthurParam,
    pub eps: EpsChar,
    pub levels: ConstituentParam,
    pub zero_flag: ZeroFlag,
    pub descent: Vec<DescentStep>,
}

impl ConstituentSymbol {
    /// Validate and certify a symbol. Every good-parity occurrence needs a
    /// valid level and the first occurrence of each class must match ε.
    pub fn new(param: ArthurParam, eps: EpsChar, levels: ConstituentParam) -> Result<Self> {
        eps.validate(&param)?;
        for (block, ids) in param.classes() {
            let good = param.good_parity(&block);
            for (i, id) in ids.iter().enumerate() {
                match (good, levels.get(*id)) {
                    (true, None) => {
                        return Err(Error::InvalidParameter(format!("no level on good-parity block {block} {id}")))
                    }
                    (false, Some(_)) => {
                        return Err(Error::InvalidParameter(format!("level on bad-parity block {block} {id}")))
                    }
                    (true, Some(level)) => {
                        level.validate(block.upper(), block.lower())?;
                        let e = eps.get(&block).expect("validated");
                        if i == 0 && eps_closed_form(block.upper(), block.lower(), &level) != e {
                            return Err(Error::InvalidCharacter(format!(
                                "level {level} on {block} gives eps {}, but eps is {e}",
                                eps_closed_form(block.upper(), block.lower(), &level)
                            )));
                        }
                    }
                    (false, None) => {}
                }
            }
        }
        if levels.labels().keys().any(|id| param.block(*id).is_none()) {
            return Err(Error::InvalidParameter("level on an occurrence not in the parameter".into()));
        }
        let mut sym = ConstituentSymbol { param, eps, levels, zero_flag: ZeroFlag::Unknown, descent: Vec::new() };
        sym.zero_flag = nonvanishing_certificate(&sym);
        Ok(sym)
    }

    /// Canonical data independent of occurrence ids.
    pub fn key(&self) -> SymbolKey {
        (self.levels.by_class(&self.param), self.eps.clone())
    }
}

impl Serialize for ConstituentSymbol {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Row<'a> {
            block: &'a JordanBlock,
            parity: bool,
            #[serde(skip_serializing_if = "Option::is_none")]
            eps: Option<Sign>,
            #[serde(skip_serializing_if = "Option::is_none")]
            level: Option<SignedLevel>,
        }
        #[derive(Serialize)]
        struct Repr<'a> {
            blocks: Vec<Row<'a>>,
            zero_flag: ZeroFlag,
            #[serde(skip_serializing_if = "Vec::is_empty")]
            descent: &'a Vec<DescentStep>,
        }
        let blocks = self
            .param
            .occurrences()
            .iter()
            .map(|o| Row {
                block: &o.block,
                parity: self.param.good_parity(&o.block),
                eps: self.eps.get(&o.block),
                level: self.levels.get(o.id),
            })
            .collect();
        Repr { blocks, zero_flag: self.zero_flag, descent: &self.descent }.serialize(serializer)
    }
}

/// All constituents of π(ψ,ε): one level per good class, compatible with ε,
/// with η alternating by (−1)^{A−B} along the occurrences of the class.
pub fn enumerate_constituents(psi: &ArthurParam, eps: &EpsChar) -> Result<Vec<ConstituentParam>> {
    eps.validate(psi)?;
    let mut out = vec![ConstituentParam::default()];
    for (block, ids) in psi.good_classes() {
        let e = eps.get(&block).expect("validated");
        let levels = enumerate_levels(block.upper(), block.lower(), e);
        let alternation = Sign::parity(block.gap());
        out = out
            .into_iter()
            .flat_map(|base| {
                let ids = ids.clone();
                levels.iter().map(move |level| {
                    let mut p = base.clone();
                    for (i, id) in ids.iter().enumerate() {
                        p.set(*id, level.twisted(alternation.pow(i as i64)));
                    }
                    p
                })
            })
            .collect();
    }
    Ok(out)
}

/// Transport levels from ψ to the dominating ψ̃. ℓ is copied; along the
/// occurrences of a class η is read off the first occurrence and multiplied
/// by (−1)^{(i−1)(A−B)} at the i-th.
pub fn lift_params(dom: &DominationMap, levels: &ConstituentParam) -> ConstituentParam {
    let mut out = ConstituentParam::default();
    for (block, ids) in dom.target.good_classes() {
        let Some(first) = ids.first().and_then(|id| levels.get(*id)) else {
            continue;
        };
        let alternation = Sign::parity(block.gap());
        for (i, id) in ids.iter().enumerate() {
            out.set(*id, first.twisted(alternation.pow(i as i64)));
        }
    }
    out
}

/// Levels of two occurrences of the same block may give a nonzero
/// representation only if ℓ₁ = ℓ₂ and η₁η₂ = (−1)^{A−B}.
pub fn nullity_fiber(l1: &SignedLevel, l2: &SignedLevel, a: HalfInt, b: HalfInt) -> bool {
    if l1.ell != l2.ell {
        return false;
    }
    match (l1.eta, l2.eta) {
        (Some(e1), Some(e2)) => e1 * e2 == Sign::parity((a - b).twice() / 2),
        _ => true,
    }
}

/// The symbol on ψ̃ from which π(ψ,ε,ℓ̲,η̲) is defined, with its descent
/// steps in increasing order of the target blocks.
pub fn lift_symbol(dom: &DominationMap, eps: &EpsChar, levels: &ConstituentParam) -> Result<ConstituentSymbol> {
    let mut eps_t = EpsChar::default();
    for o in dom.source.occurrences() {
        let target = dom.target.block(o.id).expect("same ids");
        if let Some(e) = eps.get(target) {
            eps_t.set(o.block.clone(), e);
        }
    }
    let lifted = lift_params(dom, levels);
    let mut sym = ConstituentSymbol::new(dom.source.clone(), eps_t, lifted)?;
    sym.descent = dom
        .target
        .occurrences()
        .iter()
        .filter(|o| dom.shift(o.id) > 0)
        .map(|o| DescentStep {
            occurrence: o.id,
            target: o.block.clone(),
            shift: dom.shift(o.id),
            target_eps: eps.get(&o.block).expect("good parity"),
        })
        .collect();
    Ok(sym)
}

/// Outcome of a symbolic Jacquet evaluation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "result", content = "symbol", rename_all = "snake_case")]
pub enum JacOutcome {
    Symbol(Box<ConstituentSymbol>),
    Zero,
    Unknown,
}

/// Which rule produced a [`JacOutcome`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Rule {
    R1,
    R2,
    R3,
    R4,
    R5,
}

fn certify(mut sym: ConstituentSymbol) -> ConstituentSymbol {
    sym.zero_flag = nonvanishing_certificate(&sym);
    sym
}

/// Replace or drop one occurrence, keeping ε keyed by the blocks present.
fn move_occurrence(sym: &ConstituentSymbol, id: OccId, to: Option<JordanBlock>, eps: Option<Sign>) -> ConstituentSymbol {
    let from = sym.param.block(id).expect("occurrence present").clone();
    let param = sym.param.with_replaced(id, to.clone());
    let mut eps_char = sym.eps.clone();
    if !param.contains(&from) {
        eps_char.remove(&from);
    }
    let mut levels = sym.levels.clone();
    match (&to, eps) {
        (Some(b), Some(e)) if param.good_parity(b) => eps_char.set(b.clone(), e),
        _ => {}
    }
    if to.is_none() {
        levels.remove(id);
    }
    ConstituentSymbol { param, eps: eps_char, levels, zero_flag: sym.zero_flag, descent: sym.descent.clone() }
}

/// Good-parity support without multiplicities.
fn support(psi: &ArthurParam) -> ArthurParam {
    let blocks = psi.good_classes().into_iter().map(|(b, _)| b).collect();
    ArthurParam::new(blocks, psi.lgroup(), psi.eta_g())
}

/// Apply the first matching rule for Jac over `cells`. Returns the outcome
/// and the rule used, or `None` as the rule when nothing applies.
pub fn jac_symbol_traced(
    cells: &[HalfInt],
    rho: &CuspidalLabel,
    sym: &ConstituentSymbol,
) -> Result<(JacOutcome, Option<Rule>)> {
    if sym.zero_flag == ZeroFlag::Zero {
        return Err(Error::Precondition("Jacquet evaluation on a symbol known to be zero".into()));
    }
    let Some(&x0) = cells.first() else {
        return Err(Error::InvalidInput("empty cell list".into()));
    };
    if cells.iter().any(|c| !c.same_class(x0)) {
        return Err(Error::InvalidInput(format!("cells {cells:?} mix integral and half-integral exponents")));
    }

    // R1: next step of the defining descent
    if let Some(step) = sym.descent.first() {
        if step.target.rho() == rho && step.cells() == cells {
            let mut next = move_occurrence(sym, step.occurrence, Some(step.target.clone()), Some(step.target_eps));
            next.descent.remove(0);
            return Ok((JacOutcome::Symbol(Box::new(next)), Some(Rule::R1)));
        }
    }

    let occs: Vec<_> = sym.param.occurrences().iter().filter(|o| o.block.rho() == rho).collect();

    // R2: a leading run of x longer than the number of blocks with ζB = x
    let run = cells.iter().take_while(|&&c| c == x0).count();
    let m = occs.iter().filter(|o| o.block.zeta_b() == x0).count();
    if run > m {
        return Ok((JacOutcome::Zero, Some(Rule::R2)));
    }

    if !sym.descent.is_empty() {
        return Ok((JacOutcome::Unknown, None));
    }
    let psi = &sym.param;

    if is_elementary(psi) {
        // R3: lower the unique block with ζB = x
        if cells.len() == 1 {
            let hits: Vec<_> = occs.iter().filter(|o| o.block.zeta_b() == x0 && o.block.lower() > HalfInt::ZERO).collect();
            if let [o] = hits.as_slice() {
                let b = &o.block;
                let lowered = if b.lower() >= HalfInt::ONE {
                    Some(JordanBlock::new(rho.clone(), b.upper() - 1, b.lower() - 1, b.zeta())?)
                } else {
                    None
                };
                let unique = psi.multiplicity(b) == 1;
                let free = lowered.as_ref().is_none_or(|l| !psi.contains(l));
                if unique && free {
                    let e = sym.eps.get(b);
                    if lowered.is_none() && e != Some(Sign::Plus) {
                        return Ok((JacOutcome::Unknown, None));
                    }
                    let next = move_occurrence(sym, o.id, lowered, e);
                    return Ok((JacOutcome::Symbol(Box::new(certify(next))), Some(Rule::R3)));
                }
            }
        }
        // R4: remove the pair (B',B') and (B'−1,B'−1) along ζ'B', …, −ζ'(B'−1)
        for upper in occs.iter().filter(|o| o.block.zeta_b() == x0 && o.block.lower() >= HalfInt::ONE) {
            let b = &upper.block;
            let Ok(lower_block) = JordanBlock::new(rho.clone(), b.lower() - 1, b.lower() - 1, b.zeta()) else {
                continue;
            };
            let z = b.zeta();
            let word: Vec<HalfInt> = (0..b.lower().twice()).map(|k| (b.lower() - k) * z).collect();
            if word != cells {
                continue;
            }
            let (Some(e1), Some(e2)) = (sym.eps.get(b), sym.eps.get(&lower_block)) else {
                continue;
            };
            if e1 != e2 || psi.multiplicity(b) != 1 || psi.multiplicity(&lower_block) != 1 {
                continue;
            }
            let lower_id = occs.iter().find(|o| o.block == lower_block).expect("present").id;
            let next = move_occurrence(sym, upper.id, None, None);
            let next = move_occurrence(&next, lower_id, None, None);
            return Ok((JacOutcome::Symbol(Box::new(certify(next))), Some(Rule::R4)));
        }
    }

    // R5: lower every copy of an isolated block along [ζB, …, −ζA] repeated
    for (block, ids) in psi.good_classes() {
        if block.rho() != rho || block.zeta_b() != x0 {
            continue;
        }
        let z = block.zeta();
        let len = (block.upper() + block.lower()).twice() / 2 + 1;
        let word: Vec<HalfInt> = (0..len).map(|k| (block.lower() - k) * z).collect();
        let repeated: Vec<HalfInt> = word.iter().copied().cycle().take(word.len() * ids.len()).collect();
        if repeated != cells {
            continue;
        }
        let Some(level) = sym.levels.get(ids[0]) else { continue };
        if level.ell == 0 {
            continue;
        }
        let isolated = psi.good_classes().iter().filter(|(b, _)| b.rho() == rho && *b != block).all(|(b, _)| {
            b.lower() > block.upper() + 1 || b.upper() < block.lower() - 1
        });
        if !isolated || !is_discrete_diagonal(&support(psi)) {
            continue;
        }
        let target = if block.gap() >= 2 {
            Some(JordanBlock::new(rho.clone(), block.upper() - 1, block.lower() + 1, z)?)
        } else {
            None
        };
        let e = sym.eps.get(&block);
        let mut next = sym.clone();
        for id in &ids {
            let lvl = next.levels.get(*id).expect("good parity");
            next = move_occurrence(&next, *id, target.clone(), e);
            if target.is_some() {
                next.levels.set(*id, SignedLevel::new(lvl.ell - 1, lvl.eta));
            }
        }
        return Ok((JacOutcome::Symbol(Box::new(certify(next))), Some(Rule::R5)));
    }

    Ok((JacOutcome::Unknown, None))
}

/// Jac over `cells` of a constituent symbol, by the first matching rule.
pub fn jac_symbol(cells: &[HalfInt], rho: &CuspidalLabel, sym: &ConstituentSymbol) -> Result<JacOutcome> {
    jac_symbol_traced(cells, rho, sym).map(|(o, _)| o)
}

/// Run the whole defining descent of a lifted symbol through R1.
pub fn descend(sym: &ConstituentSymbol) -> Result<ConstituentSymbol> {
    let mut cur = sym.clone();
    while let Some(step) = cur.descent.first().cloned() {
        match jac_symbol_traced(&step.cells(), step.target.rho(), &cur)? {
            (JacOutcome::Symbol(next), Some(Rule::R1)) => cur = *next,
            other => {
                return Err(Error::Precondition(format!("descent step {step:?} did not apply: {other:?}")));
            }
        }
    }
    Ok(cur)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::{dominate, enumerate_epschars, LGroupType};

    fn h(s: &str) -> HalfInt {
        s.parse().unwrap()
    }

    fn rho() -> CuspidalLabel {
        CuspidalLabel::trivial("rho")
    }

    fn blk(a: &str, b: &str) -> JordanBlock {
        JordanBlock::new(rho(), h(a), h(b), Sign::Plus).unwrap()
    }

    fn lv(ell: u32, eta: Option<Sign>) -> SignedLevel {
        SignedLevel::new(ell, eta)
    }

    const P: Option<Sign> = Some(Sign::Plus);
    const M: Option<Sign> = Some(Sign::Minus);

    #[test]
    fn closed_form_examples() {
        assert_eq!(eps_closed_form(h("1"), h("1"), &lv(0, P)), Sign::Plus);
        assert_eq!(eps_closed_form(h("1"), h("1"), &lv(0, M)), Sign::Minus);
        assert_eq!(eps_closed_form(h("2"), h("1"), &lv(0, P)), Sign::Minus);
        assert_eq!(eps_closed_form(h("2"), h("1"), &lv(0, M)), Sign::Minus);
        assert_eq!(eps_closed_form(h("2"), h("1"), &lv(1, None)), Sign::Plus);
    }

    #[test]
    fn product_form_examples() {
        assert_eq!(eps_product_form(h("1"), h("0"), &lv(1, None)).unwrap(), Sign::Plus);
        assert_eq!(eps_product_form(h("0"), h("0"), &lv(0, M)).unwrap(), Sign::Minus);
        assert_eq!(eps_product_form(h("2"), h("0"), &lv(0, P)).unwrap(), Sign::Minus);
        assert!(matches!(eps_product_form(h("3/2"), h("1/2"), &lv(0, P)), Err(Error::UnsupportedInput(_))));
    }

    #[test]
    fn counts_and_levels() {
        assert_eq!(count_params(h("1"), h("1")), 2);
        assert_eq!(count_params(h("2"), h("1")), 3);
        assert_eq!(count_params(h("3/2"), h("1/2")), 3);
        assert_eq!(enumerate_levels(h("2"), h("1"), Sign::Minus), vec![lv(0, P), lv(0, M)]);
        assert_eq!(enumerate_levels(h("2"), h("1"), Sign::Plus), vec![lv(1, None)]);
        assert_eq!(enumerate_levels(h("1"), h("1"), Sign::Plus), vec![lv(0, P)]);
        assert!(lv(1, P).validate(h("2"), h("1")).is_err());
        assert!(lv(2, P).validate(h("2"), h("0")).is_err());
    }

    #[test]
    fn constituents() {
        let psi = ArthurParam::new(vec![blk("1", "0")], LGroupType::Orthogonal, Sign::Plus);
        let mut total = 0;
        for e in [Sign::Plus, Sign::Minus] {
            let eps = EpsChar::new([(blk("1", "0"), e)].into());
            let psi_e = ArthurParam::new(vec![blk("1", "0")], LGroupType::Orthogonal, e);
            total += enumerate_constituents(&psi_e, &eps).unwrap().len();
        }
        assert_eq!(total, 3);
        let bad_eps = EpsChar::new([(blk("1", "0"), Sign::Minus)].into());
        assert!(matches!(enumerate_constituents(&psi, &bad_eps), Err(Error::InvalidCharacter(_))));

        let psi = ArthurParam::new(vec![blk("2", "1"), blk("2", "1")], LGroupType::Orthogonal, Sign::Plus);
        let eps = EpsChar::new([(blk("2", "1"), Sign::Minus)].into());
        for c in enumerate_constituents(&psi, &eps).unwrap() {
            let v: Vec<_> = c.labels().values().copied().collect();
            assert_eq!(v[1], v[0].twisted(Sign::Minus));
        }

        let bad = JordanBlock::from_triple(rho(), 2, 1).unwrap();
        let psi = ArthurParam::new(vec![bad.clone(), bad], LGroupType::Orthogonal, Sign::Plus);
        let c = enumerate_constituents(&psi, &EpsChar::default()).unwrap();
        assert_eq!(c.len(), 1);
        assert!(c[0].is_empty());
    }

    #[test]
    fn lifting() {
        let cases = [("1", "1", vec![P]), ("2", "1", vec![P, M]), ("2", "0", vec![P, P])];
        for (a, b, want) in cases {
            let block = blk(a, b);
            let n = want.len();
            let psi = ArthurParam::new(vec![block.clone(); n], LGroupType::Orthogonal, Sign::Plus);
            let dom = dominate(&psi, 2).unwrap();
            let mut levels = ConstituentParam::default();
            for o in psi.occurrences() {
                levels.set(o.id, lv(0, P));
            }
            let lifted = lift_params(&dom, &levels);
            let got: Vec<_> = lifted.labels().values().map(|l| l.eta).collect();
            assert_eq!(got, want);
        }
    }

    #[test]
    fn nullity() {
        assert!(nullity_fiber(&lv(1, P), &lv(1, P), h("2"), h("0")));
        assert!(!nullity_fiber(&lv(0, P), &lv(1, P), h("2"), h("0")));
        assert!(!nullity_fiber(&lv(1, P), &lv(1, M), h("2"), h("0")));
        assert!(nullity_fiber(&lv(0, P), &lv(0, M), h("2"), h("1")));
    }

    fn symbol(blocks: Vec<JordanBlock>, eta_g: Sign, eps: &[(JordanBlock, Sign)], levels: &[SignedLevel]) -> ConstituentSymbol {
        let psi = ArthurParam::new(blocks, LGroupType::Orthogonal, eta_g);
        let mut cp = ConstituentParam::default();
        for (o, l) in psi.occurrences().iter().zip(levels) {
            cp.set(o.id, *l);
        }
        ConstituentSymbol::new(psi, EpsChar::new(eps.iter().cloned().collect()), cp).unwrap()
    }

    #[test]
    fn rule_r1() {
        let psi = ArthurParam::new(vec![blk("1", "0"), blk("1", "0")], LGroupType::Orthogonal, Sign::Plus);
        let eps = EpsChar::new([(blk("1", "0"), Sign::Minus)].into());
        let levels = enumerate_constituents(&psi, &eps).unwrap().remove(0);
        let dom = dominate(&psi, 2).unwrap();
        let lifted = lift_symbol(&dom, &eps, &levels).unwrap();
        assert_eq!(lifted.descent.len(), 1);
        let step = &lifted.descent[0];
        assert_eq!(step.cells(), tableau_cells(Sign::Plus, h("1"), h("0"), 4).unwrap());
        let down = descend(&lifted).unwrap();
        assert_eq!(down.param.blocks(), psi.blocks());
        assert_eq!(down.levels, levels);
        assert_eq!(down.eps, eps);

        // the rule example: C(+,1,0,2) takes (3,2) to (1,0)
        let psi = ArthurParam::new(vec![blk("1", "0")], LGroupType::Orthogonal, Sign::Plus);
        let eps = EpsChar::new([(blk("1", "0"), Sign::Plus)].into());
        let lv1 = ConstituentParam::new([(OccId(0), lv(1, None))].into());
        let dom = DominationMap {
            source: psi.with_replaced(OccId(0), Some(blk("3", "2"))),
            target: psi.clone(),
            shifts: [(OccId(0), 2)].into(),
        };
        let lifted = lift_symbol(&dom, &eps, &lv1).unwrap();
        let cells = tableau_cells(Sign::Plus, h("1"), h("0"), 2).unwrap();
        let (out, rule) = jac_symbol_traced(&cells, &rho(), &lifted).unwrap();
        assert_eq!(rule, Some(Rule::R1));
        let JacOutcome::Symbol(s) = out else { panic!() };
        assert_eq!(s.param.blocks(), vec![blk("1", "0")]);
    }

    #[test]
    fn rule_r2() {
        let s = symbol(vec![blk("1", "1")], Sign::Plus, &[(blk("1", "1"), Sign::Plus)], &[lv(0, P)]);
        assert_eq!(jac_symbol(&[h("1"), h("1")], &rho(), &s).unwrap(), JacOutcome::Zero);
        assert_eq!(jac_symbol(&[h("3")], &rho(), &s).unwrap(), JacOutcome::Zero);
        assert!(jac_symbol(&[], &rho(), &s).is_err());
    }

    #[test]
    fn rule_r3() {
        let s = symbol(vec![blk("2", "2")], Sign::Minus, &[(blk("2", "2"), Sign::Minus)], &[lv(0, M)]);
        let JacOutcome::Symbol(t) = jac_symbol(&[h("2")], &rho(), &s).unwrap() else { panic!() };
        assert_eq!(t.param.blocks(), vec![blk("1", "1")]);
        assert_eq!(t.eps.get(&blk("1", "1")), Some(Sign::Minus));
        // blocked when the lowered block is already present
        let s = symbol(
            vec![blk("1", "1"), blk("2", "2")],
            Sign::Plus,
            &[(blk("1", "1"), Sign::Minus), (blk("2", "2"), Sign::Minus)],
            &[lv(0, M), lv(0, M)],
        );
        assert_eq!(jac_symbol(&[h("2")], &rho(), &s).unwrap(), JacOutcome::Unknown);
    }

    #[test]
    fn rule_r4() {
        let s = symbol(
            vec![blk("1", "1"), blk("2", "2")],
            Sign::Plus,
            &[(blk("1", "1"), Sign::Minus), (blk("2", "2"), Sign::Minus)],
            &[lv(0, M), lv(0, M)],
        );
        let cells: Vec<HalfInt> = ["2", "1", "0", "-1"].iter().map(|x| h(x)).collect();
        let (out, rule) = jac_symbol_traced(&cells, &rho(), &s).unwrap();
        assert_eq!(rule, Some(Rule::R4));
        let JacOutcome::Symbol(t) = out else { panic!() };
        assert!(t.param.is_empty());
    }

    #[test]
    fn rule_r5() {
        let s = symbol(vec![blk("2", "1")], Sign::Plus, &[(blk("2", "1"), Sign::Plus)], &[lv(1, None)]);
        let cells: Vec<HalfInt> = ["1", "0", "-1", "-2"].iter().map(|x| h(x)).collect();
        let (out, rule) = jac_symbol_traced(&cells, &rho(), &s).unwrap();
        assert_eq!(rule, Some(Rule::R5));
        let JacOutcome::Symbol(t) = out else { panic!() };
        assert!(t.param.is_empty());

        let s = symbol(vec![blk("3", "1")], Sign::Plus, &[(blk("3", "1"), Sign::Plus)], &[lv(1, P)]);
        let cells: Vec<HalfInt> = ["1", "0", "-1", "-2", "-3"].iter().map(|x| h(x)).collect();
        let JacOutcome::Symbol(t) = jac_symbol(&cells, &rho(), &s).unwrap() else { panic!() };
        assert_eq!(t.param.blocks(), vec![blk("2", "2")]);
        assert_eq!(t.levels.get(t.param.occurrences()[0].id), Some(lv(0, P)));
        assert_eq!(t.eps.get(&blk("2", "2")), Some(Sign::Plus));
    }

    #[test]
    fn epschar_roundtrip_with_constituents() {
        let psi = ArthurParam::new(vec![blk("1", "0"), blk("2", "2")], LGroupType::Orthogonal, Sign::Plus);
        for eps in enumerate_epschars(&psi) {
            for c in enumerate_constituents(&psi, &eps).unwrap() {
                let s = ConstituentSymbol::new(psi.clone(), eps.clone(), c).unwrap();
                assert_eq!(s.zero_flag, ZeroFlag::Nonzero);
            }
        }
    }
}
