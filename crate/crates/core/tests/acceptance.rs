//! One PASS/FAIL line per acceptance criterion. Runs without the test
//! harness so the lines always reach the output.

mod support;

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use arthur_packets::induction::{packet_sum_factorization, packet_sum_identity, DEFAULT_MARGIN};
use arthur_packets::oracle::{
    check_counts, check_signs, ladder_support_suite, translation_multiplicity, translation_suite,
};
use arthur_packets::packets::{
    descend, enumerate_constituents, enumerate_levels, eps_closed_form, lift_params, lift_symbol,
    nullity_fiber, ConstituentParam, SignedLevel,
};
use arthur_packets::params::{
    dominate, enumerate_epschars, has_parity, is_discrete_diagonal, ArthurParam, JordanBlock, LGroupType,
};
use arthur_packets::{CuspidalLabel, HalfInt, Sign};

type Outcome = Result<(), String>;
type Criterion = (&'static str, fn() -> Outcome);

fn rho() -> CuspidalLabel {
    CuspidalLabel::trivial("rho")
}

fn all_levels(a: HalfInt, b: HalfInt) -> Vec<SignedLevel> {
    Sign::both().into_iter().flat_map(|e| enumerate_levels(a, b, e)).collect()
}

/// The L-group type for which a block over the trivial label has parity.
fn parity_group(block: &JordanBlock) -> LGroupType {
    if has_parity(block, LGroupType::Orthogonal) {
        LGroupType::Orthogonal
    } else {
        LGroupType::Symplectic
    }
}

fn criterion_1() -> Outcome {
    let r = check_counts(8);
    match r.first_failure() {
        None => Ok(()),
        Some(f) => Err(format!("{} {:?}", f.params, f.counterexample)),
    }
}

fn criterion_2() -> Outcome {
    for gap in (0..=8).step_by(2) {
        for b2 in 0..4 {
            let b = HalfInt::from_twice(b2);
            let a = b + gap;
            let plus = enumerate_levels(a, b, Sign::Plus).len() as i64;
            let minus = enumerate_levels(a, b, Sign::Minus).len() as i64;
            let allowed = [gap / 2, gap / 2 + 1];
            if !allowed.contains(&plus) || !allowed.contains(&minus) || plus + minus != gap + 2 {
                return Err(format!("A={a} B={b}: {plus} + {minus}"));
            }
        }
    }
    Ok(())
}

fn criterion_3() -> Outcome {
    let r = check_signs(8).map_err(|e| e.to_string())?;
    match r.first_failure() {
        None => Ok(()),
        Some(f) => Err(format!("{} {:?}", f.params, f.counterexample)),
    }
}

/// Every level assignment on a fiber of `m` copies is enumerated exactly when
/// the first copy matches ε and consecutive copies pass the nullity test.
fn fiber_exact(block: &JordanBlock, m: usize) -> Outcome {
    let (a, b) = (block.upper(), block.lower());
    let lgroup = parity_group(block);
    for eps in Sign::both() {
        let psi = ArthurParam::new(vec![block.clone(); m], lgroup, eps.pow(m as i64));
        let ids: Vec<_> = psi.occurrences().iter().map(|o| o.id).collect();
        let epschar = enumerate_epschars(&psi).into_iter().find(|e| e.get(block) == Some(eps)).ok_or("no eps")?;
        let got: BTreeSet<ConstituentParam> =
            enumerate_constituents(&psi, &epschar).map_err(|e| e.to_string())?.into_iter().collect();

        let levels = all_levels(a, b);
        let mut assignments = vec![Vec::new()];
        for _ in 0..m {
            assignments = assignments
                .into_iter()
                .flat_map(|p: Vec<SignedLevel>| {
                    levels.iter().map(move |l| {
                        let mut q = p.clone();
                        q.push(*l);
                        q
                    })
                })
                .collect();
        }
        for asg in assignments {
            let admissible = eps_closed_form(a, b, &asg[0]) == eps
                && asg.windows(2).all(|w| nullity_fiber(&w[0], &w[1], a, b));
            let param = ConstituentParam::new(ids.iter().copied().zip(asg.iter().copied()).collect());
            if admissible != got.contains(&param) {
                return Err(format!("{block} x{m} eps {eps}: {asg:?} admissible={admissible}"));
            }
        }
    }
    Ok(())
}

fn criterion_4() -> Outcome {
    for gap in 0..=5 {
        for b2 in 0..4 {
            let b = HalfInt::from_twice(b2);
            let block = JordanBlock::new(rho(), b + gap, b, Sign::Plus).map_err(|e| e.to_string())?;
            for m in 1..=4 {
                // the exhaustive product grows as (gap+2)^m
                if (gap + 2).pow(m as u32) <= 2500 {
                    fiber_exact(&block, m)?;
                }
                lift_on_fiber(&block, m)?;
            }
        }
    }
    Ok(())
}

/// lift_params from a fiber, next to an overlapping neighbour, satisfies the
/// nullity test on every consecutive pair of each class of ψ̃.
fn lift_on_fiber(block: &JordanBlock, m: usize) -> Outcome {
    let lgroup = parity_group(block);
    let neighbour = JordanBlock::new(rho(), block.upper() + 1, block.lower() + 1, Sign::Plus).unwrap();
    let mut blocks = vec![block.clone(); m];
    blocks.push(neighbour);
    for eta_g in Sign::both() {
        let psi = ArthurParam::new(blocks.clone(), lgroup, eta_g);
        let dom = dominate(&psi, DEFAULT_MARGIN).map_err(|e| e.to_string())?;
        for eps in enumerate_epschars(&psi) {
            for levels in enumerate_constituents(&psi, &eps).map_err(|e| e.to_string())? {
                let lifted = lift_params(&dom, &levels);
                for (cls, ids) in dom.target.good_classes() {
                    for w in ids.windows(2) {
                        let (l1, l2) = (lifted.get(w[0]).unwrap(), lifted.get(w[1]).unwrap());
                        if !nullity_fiber(&l1, &l2, cls.upper(), cls.lower()) {
                            return Err(format!("lift on {cls} x{m}: {l1} {l2}"));
                        }
                    }
                }
            }
        }
    }
    Ok(())
}

fn report_outcome(r: arthur_packets::Result<arthur_packets::oracle::Report>) -> Outcome {
    let r = r.map_err(|e| e.to_string())?;
    match r.first_failure() {
        None => Ok(()),
        Some(f) => Err(format!("{} {} ({} of {} failing)", f.params, f.counterexample.clone().unwrap_or_default(),
            r.failures().count(), r.records.len())),
    }
}

fn criterion_5() -> Outcome {
    report_outcome(ladder_support_suite(4, 4))
}

fn criterion_6() -> Outcome {
    report_outcome(translation_suite(3, 3))
}

/// What does hold: the image is 2^{min(T, A−B+1)} copies of S(ρ,A,B,ζ).
fn translation_multiplicity_law() -> Outcome {
    for b2 in 0..5 {
        let b = HalfInt::from_twice(b2);
        for gap in 0..=3i64 {
            for t in 1..=3u32 {
                for zeta in Sign::both() {
                    let k = translation_multiplicity(b + gap, b, t, zeta).map_err(|e| e.to_string())?;
                    let want = 1i64 << i64::from(t).min(gap + 1);
                    if k != Some(want) {
                        return Err(format!("A={} B={b} T={t} {zeta}: {k:?} vs {want}", b + gap));
                    }
                }
            }
        }
    }
    Ok(())
}

fn random_psi(rng: &mut ChaCha8Rng) -> ArthurParam {
    let labels = [rho(), CuspidalLabel::self_dual("tau", 2, Sign::Minus)];
    let half = rng.gen_bool(0.5);
    let lgroup = if half { LGroupType::Symplectic } else { LGroupType::Orthogonal };
    let n = rng.gen_range(1..=6);
    let mut blocks = Vec::new();
    while blocks.len() < n {
        let label = labels[rng.gen_range(0..2)].clone();
        let b = HalfInt::from_twice(2 * rng.gen_range(0..3) + i64::from(half));
        let a = b + rng.gen_range(0..3);
        let zeta = if rng.gen_bool(0.5) { Sign::Plus } else { Sign::Minus };
        let block = JordanBlock::new(label, a, b, zeta).unwrap();
        if has_parity(&block, lgroup) {
            blocks.push(block);
        }
    }
    ArthurParam::new(blocks, lgroup, if rng.gen_bool(0.5) { Sign::Plus } else { Sign::Minus })
}

fn criterion_7() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let (mut done, mut steps) = (0, 0);
    while done < 100 {
        let psi = random_psi(&mut rng);
        let chars = enumerate_epschars(&psi);
        if chars.is_empty() {
            continue;
        }
        let eps = chars[rng.gen_range(0..chars.len())].clone();
        let all = enumerate_constituents(&psi, &eps).map_err(|e| e.to_string())?;
        let levels = all[rng.gen_range(0..all.len())].clone();
        let dom = dominate(&psi, DEFAULT_MARGIN).map_err(|e| e.to_string())?;
        if !is_discrete_diagonal(&dom.source) {
            return Err(format!("not discrete diagonal: {:?}", dom.source.blocks()));
        }
        let sym = lift_symbol(&dom, &eps, &levels).map_err(|e| format!("lift: {e}"))?;
        steps += sym.descent.len();
        let end = descend(&sym).map_err(|e| format!("{:?}: {e}", psi.blocks()))?;
        let (mut got, mut want) = (end.param.blocks(), psi.blocks());
        got.sort();
        want.sort();
        if got != want || end.eps != eps {
            return Err(format!("{want:?} came back as {got:?}"));
        }
        done += 1;
    }
    if steps < 100 {
        return Err(format!("only {steps} descent steps in 100 parameters"));
    }
    Ok(())
}

fn criterion_8() -> Outcome {
    let pool: Vec<JordanBlock> = [(0, 0), (1, 0), (1, 1), (2, 1)]
        .iter()
        .map(|&(a, b)| JordanBlock::new(rho(), HalfInt::int(a), HalfInt::int(b), Sign::Plus).unwrap())
        .collect();
    let mut checked = 0;
    for mask in 1u32..16 {
        let chosen: Vec<&JordanBlock> = pool.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, b)| b).collect();
        if chosen.len() > 3 {
            continue;
        }
        let combos = 4usize.pow(chosen.len() as u32);
        for code in 0..combos {
            let mults: Vec<usize> = (0..chosen.len()).map(|i| code / 4usize.pow(i as u32) % 4 + 1).collect();
            let blocks: Vec<JordanBlock> =
                chosen.iter().zip(&mults).flat_map(|(b, &m)| vec![(*b).clone(); m]).collect();
            for eta_g in Sign::both() {
                let psi = ArthurParam::new(blocks.clone(), LGroupType::Orthogonal, eta_g);
                let (psi0, factors) = packet_sum_factorization(&psi).map_err(|e| e.to_string())?;
                for (cls, ids) in psi.classes() {
                    let count = factors.iter().find(|(f, _)| *f == cls).map_or(0, |(_, c)| *c) as usize;
                    if psi0.multiplicity(&cls) + 2 * count != ids.len() {
                        return Err(format!("conservation fails on {cls}"));
                    }
                }
                let chars0 = enumerate_epschars(&psi0);
                if chars0.is_empty() != enumerate_epschars(&psi).is_empty() {
                    return Err(format!("character sets disagree for {mults:?}"));
                }
                for eps0 in chars0 {
                    let check = packet_sum_identity(&psi, &eps0).map_err(|e| e.to_string())?;
                    if !check.passed() {
                        return Err(format!("{mults:?} on {chosen:?}: {} vs {}", check.packet_count, check.induced_count));
                    }
                    checked += 1;
                }
            }
        }
    }
    if checked < 100 {
        return Err(format!("only {checked} cases"));
    }
    Ok(())
}

fn criterion_9() -> Outcome {
    let bad = support::compare_all();
    if bad.is_empty() {
        Ok(())
    } else {
        Err(format!("mismatches: {bad:?}"))
    }
}

/// Criteria that cannot be met as stated. Each still has to fail, so an
/// unexpected pass is reported too.
const KNOWN_FAILURES: &[usize] = &[6];

fn main() {
    let criteria: [Criterion; 9] = [
        ("constituent count A-B+2 for A-B <= 8", criterion_1),
        ("split by eps for even A-B <= 8", criterion_2),
        ("sign discrepancy law for A <= 8", criterion_3),
        ("nullity and lift on fibers <= 4, A-B <= 5", criterion_4),
        ("ladder Jacquet support for A-B <= 4, T <= 4", criterion_5),
        ("translation identity with factor 2 for A-B <= 3, T <= 3", criterion_6),
        ("domination round trip on 100 random parameters", criterion_7),
        ("packet sum conservation and count identity", criterion_8),
        ("CLI golden files", criterion_9),
    ];
    let mut unexpected = Vec::new();
    for (i, (name, f)) in criteria.iter().enumerate() {
        let n = i + 1;
        let outcome = f();
        match &outcome {
            Ok(()) => println!("PASS {n} {name}"),
            Err(why) => println!("FAIL {n} {name}: {why}"),
        }
        if outcome.is_ok() == KNOWN_FAILURES.contains(&n) {
            unexpected.push(n);
        }
    }
    let law = translation_multiplicity_law();
    match &law {
        Ok(()) => println!("PASS 6' translation image is 2^min(T,A-B+1) copies of S(A,B)"),
        Err(why) => println!("FAIL 6' translation multiplicity law: {why}"),
    }
    if law.is_err() || !unexpected.is_empty() {
        eprintln!("criteria with unexpected outcome: {unexpected:?}");
        std::process::exit(1);
    }
}
