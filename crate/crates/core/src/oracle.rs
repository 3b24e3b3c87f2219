//! Brute-force checks, independent of the rule-based modules.
//!
//! Irreducible ladder representations are expanded into standard modules by
//! the determinantal formula, after which Jacquet operators act literally.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::jacquet::{jac_ladder, jac_ladder_right, jac_left, jac_right, FormalSum};
use crate::packets::{count_params, enumerate_levels, eps_closed_form, eps_product_form, SignedLevel};
use crate::params::quad_to_triple;
use crate::segment::{
    shifted_ladder, speh_ladder, tableau_cells, CuspidalLabel, HalfInt, Ladder, Multisegment, Reading, Segment,
    Sign,
};

/// A ladder together with its signed expansion into standard modules.
#[derive(Clone, Debug, Serialize)]
pub struct LadderExpansion {
    pub ladder: Multisegment,
    pub expansion: FormalSum,
}

fn permutations(k: usize) -> Vec<(Vec<usize>, i64)> {
    if k == 0 {
        return vec![(vec![], 1)];
    }
    let mut out = Vec::new();
    for (p, s) in permutations(k - 1) {
        // insert k-1 at each position; moving it left past j entries costs (-1)^j
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, k - 1);
            let sign = if (p.len() - pos) % 2 == 0 { s } else { -s };
            out.push((q, sign));
        }
    }
    out
}

/// ⟨b, e⟩ in the given reading: `Ok(None)` for the empty segment, `Err` when
/// the pair is not a segment at all.
fn oriented(rho: &CuspidalLabel, b: HalfInt, e: HalfInt, reading: Reading) -> std::result::Result<Option<Segment>, ()> {
    let step = reading.step();
    let empty_at = b - step;
    if e == empty_at {
        return Ok(None);
    }
    let valid = match reading {
        Reading::Zelevinsky => e >= b,
        Reading::Langlands => e <= b,
    };
    if !valid {
        return Err(());
    }
    Segment::new(rho.clone(), b, e).map(Some).map_err(|_| ())
}

/// Σ_w sgn(w) ∏_i ⟨b_i, e_w(i)⟩ over permutations of the rows.
pub fn expand_ladder(ladder: &Ladder) -> FormalSum {
    let rows = ladder.rows();
    let Some(rho) = ladder.rho() else {
        return FormalSum::one();
    };
    let mut out = FormalSum::zero();
    'perm: for (w, sign) in permutations(rows.len()) {
        let mut segs = Vec::with_capacity(rows.len());
        for (i, &j) in w.iter().enumerate() {
            match oriented(rho, rows[i].first(), rows[j].last(), ladder.reading()) {
                Ok(Some(s)) => segs.push(s),
                Ok(None) => {}
                Err(()) => continue 'perm,
            }
        }
        out.add_term(Multisegment::new(segs), sign);
    }
    out
}

/// Expansion of a multisegment read as a ladder.
pub fn expand_rows(rows: &Multisegment) -> Result<LadderExpansion> {
    let ladder = Ladder::infer(rows).map_err(|e| Error::InvalidInput(format!("not a ladder: {e}")))?;
    Ok(LadderExpansion { ladder: rows.clone(), expansion: expand_ladder(&ladder) })
}

/// One line of an oracle report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckRecord {
    pub check: String,
    pub params: String,
    pub pass: bool,
    pub counterexample: Option<String>,
}

impl CheckRecord {
    fn new(check: &str, params: String, counterexample: Option<String>) -> Self {
        CheckRecord { check: check.to_string(), params, pass: counterexample.is_none(), counterexample }
    }
}

/// A list of check records in a fixed order.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Report {
    pub records: Vec<CheckRecord>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.records.iter().all(|r| r.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckRecord> {
        self.records.iter().filter(|r| !r.pass)
    }

    pub fn push(&mut self, r: CheckRecord) {
        self.records.push(r);
    }

    pub fn extend(&mut self, other: Report) {
        self.records.extend(other.records);
    }

    /// First failing record, if any.
    pub fn first_failure(&self) -> Option<&CheckRecord> {
        self.failures().next()
    }
}

fn probe_rho() -> CuspidalLabel {
    CuspidalLabel::trivial("rho")
}

/// Exponents on the lattice of `anchor` within [-bound, bound].
fn lattice(anchor: HalfInt, bound: HalfInt) -> Vec<HalfInt> {
    let mut x = anchor;
    while x >= -bound {
        x = x - 1;
    }
    let mut v = Vec::new();
    while x <= bound {
        if x >= -bound {
            v.push(x);
        }
        x = x + 1;
    }
    v
}

fn shape(a: HalfInt, b: HalfInt, t: u32, zeta: Sign) -> String {
    format!("A={a} B={b} T={t} zeta={zeta}")
}

/// Jac^d_x S(ζ,A,B,T) vanishes except at x = ζ(A+1), where it does not.
pub fn check_ladder_jac_support(a: HalfInt, b: HalfInt, t: u32, zeta: Sign) -> Result<CheckRecord> {
    let rho = probe_rho();
    let ladder = shifted_ladder(zeta, a, b, t, &rho)?;
    let expansion = expand_ladder(&ladder);
    let special = (a + 1) * zeta;
    let mut bad = None;
    for x in lattice(a, a + i64::from(t) + 1) {
        let nonzero = !jac_right(x, &rho, &expansion).is_zero();
        if nonzero != (x == special) {
            bad = Some(format!("x={x}: Jac^d is {}", if nonzero { "nonzero" } else { "zero" }));
            break;
        }
    }
    Ok(CheckRecord::new("ladder-jac-support", shape(a, b, t, zeta), bad))
}

/// The shape rules of [`jac_ladder`] and [`jac_ladder_right`] agree with the
/// expansion at every exponent.
pub fn check_ladder_rule(ladder: &Ladder) -> Option<String> {
    let rho = ladder.rho().cloned()?;
    let expansion = expand_ladder(ladder);
    let bound = ladder.rows().iter().map(|r| r.first().abs().max(r.last().abs())).max().unwrap_or_default() + 1;
    for x in lattice(ladder.rows()[0].first(), bound) {
        let by_rule = jac_ladder(x, ladder).map(|l| expand_ladder(&l)).unwrap_or_default();
        if by_rule != jac_left(x, &rho, &expansion) {
            return Some(format!("Jac_{x} on {:?}", ladder.multisegment()));
        }
        let by_rule = jac_ladder_right(x, ladder).map(|l| expand_ladder(&l)).unwrap_or_default();
        if by_rule != jac_right(x, &rho, &expansion) {
            return Some(format!("Jac^d_{x} on {:?}", ladder.multisegment()));
        }
    }
    None
}

/// Image of S(ρ,A+T,B+T,ζ) under Jac_x + Jac^d_{−x} applied along the cells
/// of C(ζ,A,B,T) twice, together with the expansion of S(ρ,A,B,ζ).
pub fn translation_image(a: HalfInt, b: HalfInt, t: u32, zeta: Sign) -> Result<(FormalSum, FormalSum)> {
    let rho = probe_rho();
    let shift = i64::from(t);
    let mut state = expand_ladder(&speh_ladder(&rho, a + shift, b + shift, zeta)?);
    let cells = tableau_cells(zeta, a, b, t)?;
    for &x in cells.iter().chain(cells.iter()) {
        state = jac_left(x, &rho, &state) + jac_right(-x, &rho, &state);
    }
    Ok((state, expand_ladder(&speh_ladder(&rho, a, b, zeta)?)))
}

/// The k with image = k·S(ρ,A,B,ζ), if the image is such a multiple.
pub fn translation_multiplicity(a: HalfInt, b: HalfInt, t: u32, zeta: Sign) -> Result<Option<i64>> {
    let (image, target) = translation_image(a, b, t, zeta)?;
    let (m, c) = target.iter().next().expect("nonempty tableau");
    let k = image.coefficient(m) / c;
    Ok((image == target * k).then_some(k))
}

/// GL shadow of the translation identity: the image should be 2·S(ρ,A,B,ζ).
pub fn check_translation_identity(a: HalfInt, b: HalfInt, t: u32, zeta: Sign) -> Result<CheckRecord> {
    let bad = match translation_multiplicity(a, b, t, zeta)? {
        Some(2) => None,
        Some(k) => Some(format!("got {k}·S(A,B), expected 2·S(A,B)")),
        None => {
            let (image, _) = translation_image(a, b, t, zeta)?;
            Some(format!("not a multiple of S(A,B): {image:?}"))
        }
    };
    Ok(CheckRecord::new("translation-identity", shape(a, b, t, zeta), bad))
}

/// One row of the sign comparison table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SignRow {
    pub a: HalfInt,
    pub b: HalfInt,
    pub level: SignedLevel,
    pub product_form: Sign,
    pub closed_form: Sign,
    pub ratio: Sign,
    pub predicted_ratio: Sign,
}

/// (−1)^{n(A+B)/2 − ⌊(A−B+1)/2⌋ − ℓ} with n = A−B+1−2ℓ, for integral A, B.
pub fn predicted_sign_ratio(a: HalfInt, b: HalfInt, ell: u32) -> Sign {
    let (a, b) = (a.to_int().expect("integral"), b.to_int().expect("integral"));
    let n = a - b + 1 - 2 * i64::from(ell);
    // n(A+B) is even whenever n is odd, since then A+B ≡ A−B ≡ 0 mod 2
    Sign::parity(n * (a + b) / 2 - (a - b + 1).div_euclid(2) - i64::from(ell))
}

/// Compare the two sign formulas on all integral 0 ≤ B ≤ A ≤ max_a.
pub fn tabulate_sign_agreement(max_a: i64) -> Result<Vec<SignRow>> {
    let mut rows = Vec::new();
    for a in 0..=max_a {
        for b in 0..=a {
            let (ah, bh) = (HalfInt::int(a), HalfInt::int(b));
            for level in all_levels(ah, bh) {
                let product_form = eps_product_form(ah, bh, &level)?;
                let closed_form = eps_closed_form(ah, bh, &level);
                rows.push(SignRow {
                    a: ah,
                    b: bh,
                    predicted_ratio: predicted_sign_ratio(ah, bh, level.ell),
                    ratio: product_form * closed_form,
                    level,
                    product_form,
                    closed_form,
                });
            }
        }
    }
    Ok(rows)
}

fn all_levels(a: HalfInt, b: HalfInt) -> Vec<SignedLevel> {
    Sign::both().into_iter().flat_map(|e| enumerate_levels(a, b, e)).collect()
}

/// Sign table as a report: one record per (A,B).
pub fn check_signs(max_a: i64) -> Result<Report> {
    let table = tabulate_sign_agreement(max_a)?;
    let mut report = Report::default();
    for a in 0..=max_a {
        for b in 0..=a {
            let (ah, bh) = (HalfInt::int(a), HalfInt::int(b));
            let bad = table
                .iter()
                .filter(|r| r.a == ah && r.b == bh)
                .find(|r| r.ratio != r.predicted_ratio)
                .map(|r| format!("level {:?}: ratio {} predicted {}", r.level, r.ratio, r.predicted_ratio));
            report.push(CheckRecord::new("sign-agreement", format!("A={a} B={b}"), bad));
        }
    }
    Ok(report)
}

/// Level counts match A−B+2 = inf(a,b)+1 for every gap up to `max_gap`, for
/// integral and half-integral B.
pub fn check_counts(max_gap: i64) -> Report {
    let mut report = Report::default();
    for gap in 0..=max_gap {
        for b2 in [0, 1, 2, 3] {
            let b = HalfInt::from_twice(b2);
            let a = b + gap;
            let total = all_levels(a, b).len() as i64;
            let (ta, tb) = quad_to_triple(a, b, Sign::Plus);
            let expected = count_params(a, b) as i64;
            let bad = (total != expected || expected != i64::from(ta.min(tb)) + 1 || expected != gap + 2)
                .then(|| format!("{total} levels, count {expected}, inf(a,b)+1 = {}", ta.min(tb) + 1));
            report.push(CheckRecord::new("counts", format!("A={a} B={b}"), bad));
        }
    }
    report
}

/// Ladder Jacquet support check over all shapes with A−B ≤ max_gap and T ≤ max_t.
pub fn ladder_support_suite(max_gap: i64, max_t: u32) -> Result<Report> {
    let mut report = Report::default();
    for b2 in [0, 1, 2, 3] {
        let b = HalfInt::from_twice(b2);
        for gap in 0..=max_gap {
            for t in 1..=max_t {
                for zeta in Sign::both() {
                    report.push(check_ladder_jac_support(b + gap, b, t, zeta)?);
                }
            }
        }
    }
    Ok(report)
}

/// Translation identity over all shapes with A−B ≤ max_gap, T ≤ max_t.
pub fn translation_suite(max_gap: i64, max_t: u32) -> Result<Report> {
    let mut report = Report::default();
    for b2 in [0, 1, 2, 3, 4] {
        let b = HalfInt::from_twice(b2);
        for gap in 0..=max_gap {
            for t in 1..=max_t {
                for zeta in Sign::both() {
                    report.push(check_translation_identity(b + gap, b, t, zeta)?);
                }
            }
        }
    }
    Ok(report)
}
