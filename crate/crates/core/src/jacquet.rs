//! Jacquet operators on the general linear side, computed in the Grothendieck
//! group on products of segment representations.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::segment::{CuspidalLabel, HalfInt, Ladder, Multisegment, Segment};

/// An integer combination of multisegments. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct FormalSum {
    terms: BTreeMap<Multisegment, i64>,
}

impl FormalSum {
    pub fn zero() -> Self {
        FormalSum::default()
    }

    pub fn single(m: Multisegment) -> Self {
        FormalSum::monomial(m, 1)
    }

    pub fn monomial(m: Multisegment, coefficient: i64) -> Self {
        let mut fs = FormalSum::zero();
        fs.add_term(m, coefficient);
        fs
    }

    /// The class of the trivial representation of GL(0).
    pub fn one() -> Self {
        FormalSum::single(Multisegment::empty())
    }

    pub fn add_term(&mut self, m: Multisegment, coefficient: i64) {
        if coefficient == 0 {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(coefficient);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += coefficient;
                if *o.get() == 0 {
                    o.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &Multisegment) -> i64 {
        self.terms.get(m).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Multisegment, i64)> {
        self.terms.iter().map(|(m, c)| (m, *c))
    }

    /// Apply a term-wise linear map.
    pub fn map_linear<F>(&self, mut f: F) -> FormalSum
    where
        F: FnMut(&Multisegment) -> FormalSum,
    {
        let mut out = FormalSum::zero();
        for (m, c) in self.iter() {
            out += f(m) * c;
        }
        out
    }

    /// Product in the Grothendieck group: union of multisegments.
    pub fn product(&self, other: &FormalSum) -> FormalSum {
        let mut out = FormalSum::zero();
        for (m1, c1) in self.iter() {
            for (m2, c2) in other.iter() {
                out.add_term(m1.union(m2), c1 * c2);
            }
        }
        out
    }
}

impl AddAssign for FormalSum {
    fn add_assign(&mut self, rhs: FormalSum) {
        for (m, c) in rhs.terms {
            self.add_term(m, c);
        }
    }
}

impl Add for FormalSum {
    type Output = FormalSum;
    fn add(mut self, rhs: FormalSum) -> FormalSum {
        self += rhs;
        self
    }
}

impl Neg for FormalSum {
    type Output = FormalSum;
    fn neg(self) -> FormalSum {
        self * -1
    }
}

impl Sub for FormalSum {
    type Output = FormalSum;
    fn sub(self, rhs: FormalSum) -> FormalSum {
        self + (-rhs)
    }
}

impl Mul<i64> for FormalSum {
    type Output = FormalSum;
    fn mul(self, k: i64) -> FormalSum {
        if k == 0 {
            return FormalSum::zero();
        }
        FormalSum { terms: self.terms.into_iter().map(|(m, c)| (m, c * k)).collect() }
    }
}

impl FromIterator<(Multisegment, i64)> for FormalSum {
    fn from_iter<I: IntoIterator<Item = (Multisegment, i64)>>(iter: I) -> Self {
        let mut fs = FormalSum::zero();
        for (m, c) in iter {
            fs.add_term(m, c);
        }
        fs
    }
}

impl fmt::Debug for FormalSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.iter().enumerate() {
            match (i, c) {
                (0, 1) => write!(f, "{m:?}")?,
                (0, -1) => write!(f, "-{m:?}")?,
                (0, _) => write!(f, "{c}{m:?}")?,
                (_, 1) => write!(f, " + {m:?}")?,
                (_, -1) => write!(f, " - {m:?}")?,
                (_, c) if c < 0 => write!(f, " - {}{m:?}", -c)?,
                (_, c) => write!(f, " + {c}{m:?}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Display for FormalSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl Serialize for FormalSum {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Term<'a> {
            coefficient: i64,
            segments: &'a Multisegment,
        }
        let mut seq = serializer.serialize_seq(Some(self.len()))?;
        for (m, c) in self.iter() {
            seq.serialize_element(&Term { coefficient: c, segments: m })?;
        }
        seq.end()
    }
}

/// Left Jacquet operator Jac_x on one standard module: strip the first entry
/// of each segment starting at x, one term per such segment.
fn jac_left_term(x: HalfInt, rho: &CuspidalLabel, m: &Multisegment) -> FormalSum {
    m.segments()
        .iter()
        .enumerate()
        .filter(|(_, s)| s.first() == x && s.rho() == rho)
        .map(|(i, s)| (m.replace(i, s.strip_first()), 1))
        .collect()
}

fn jac_right_term(x: HalfInt, rho: &CuspidalLabel, m: &Multisegment) -> FormalSum {
    m.segments()
        .iter()
        .enumerate()
        .filter(|(_, s)| s.last() == x && s.rho() == rho)
        .map(|(i, s)| (m.replace(i, s.strip_last()), 1))
        .collect()
}

/// Jac_x on a formal sum of standard modules.
pub fn jac_left(x: HalfInt, rho: &CuspidalLabel, fs: &FormalSum) -> FormalSum {
    fs.map_linear(|m| jac_left_term(x, rho, m))
}

/// Jac^d_x: strips x from the last end of segments.
pub fn jac_right(x: HalfInt, rho: &CuspidalLabel, fs: &FormalSum) -> FormalSum {
    fs.map_linear(|m| jac_right_term(x, rho, m))
}

/// Jac_{x1,…,xn} = Jac_xn ∘ … ∘ Jac_x1.
pub fn jac_sequence(xs: &[HalfInt], rho: &CuspidalLabel, fs: &FormalSum) -> FormalSum {
    xs.iter().fold(fs.clone(), |acc, &x| jac_left(x, rho, &acc))
}

/// Jac^d over an ordered list. The last listed element is stripped first, so
/// that Jac^d_{y1,…,yn} peels a decreasing-to-the-right word off the right end.
pub fn jac_right_sequence(ys: &[HalfInt], rho: &CuspidalLabel, fs: &FormalSum) -> FormalSum {
    ys.iter().rev().fold(fs.clone(), |acc, &y| jac_right(y, rho, &acc))
}

/// One splitting of an ordered list into three ordered parts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Split {
    pub e1: Vec<HalfInt>,
    pub e2: Vec<HalfInt>,
    pub e3: Vec<HalfInt>,
}

impl Split {
    /// −ᵗE2: E2 negated and order-reversed.
    pub fn e2_dual(&self) -> Vec<HalfInt> {
        self.e2.iter().rev().map(|&x| -x).collect()
    }
}

/// All 3^n assignments of the elements of `xs` to three parts, each part
/// keeping the induced order.
pub fn split_three(xs: &[HalfInt]) -> Vec<Split> {
    let n = xs.len();
    let total = 3usize.pow(n as u32);
    (0..total)
        .map(|mut code| {
            let mut split = Split { e1: vec![], e2: vec![], e3: vec![] };
            for &x in xs {
                match code % 3 {
                    0 => split.e1.push(x),
                    1 => split.e2.push(x),
                    _ => split.e3.push(x),
                }
                code /= 3;
            }
            split
        })
        .collect()
}

/// The general linear shadow of Jac_{x∈E}(δ × π): the sum over all splittings
/// of Jac_{E1} Jac^d_{−ᵗE2}(δ) paired with Jac_{E3}(π). Returned as a list of
/// (δ-part, π-part) formal sums, one per splitting with a nonzero product.
pub fn split_formula(
    xs: &[HalfInt],
    rho: &CuspidalLabel,
    delta: &FormalSum,
    pi: &FormalSum,
) -> Vec<(Split, FormalSum, FormalSum)> {
    split_three(xs)
        .into_iter()
        .filter_map(|sp| {
            let d = jac_sequence(&sp.e1, rho, &jac_right_sequence(&sp.e2_dual(), rho, delta));
            if d.is_zero() {
                return None;
            }
            let p = jac_sequence(&sp.e3, rho, pi);
            (!p.is_zero()).then_some((sp, d, p))
        })
        .collect()
}

/// Jac_x of an irreducible ladder representation. The result is the unique
/// irreducible constituent when it exists, `None` when Jac_x vanishes.
///
/// Stripping moves the first entry of the row starting at x one step along the
/// reading. The rows must keep strictly decreasing first entries; a row that
/// becomes empty keeps its shifted first entry for this test.
pub fn jac_ladder(x: HalfInt, ladder: &Ladder) -> Option<Ladder> {
    let rows = ladder.rows();
    let i = rows.iter().position(|r| r.first() == x)?;
    let step = ladder.reading().step();
    let mut ends: Vec<(HalfInt, HalfInt)> = rows.iter().map(|r| (r.first(), r.last())).collect();
    ends[i].0 = x + step;
    let firsts_ok = ends.windows(2).all(|w| w[0].0 > w[1].0);
    if !firsts_ok {
        return None;
    }
    rebuild(ladder, i, rows[i].strip_first())
}

/// Jac^d_x of an irreducible ladder representation, mirror of [`jac_ladder`]
/// on last entries.
pub fn jac_ladder_right(x: HalfInt, ladder: &Ladder) -> Option<Ladder> {
    let rows = ladder.rows();
    let i = rows.iter().position(|r| r.last() == x)?;
    let step = ladder.reading().step();
    let mut ends: Vec<(HalfInt, HalfInt)> = rows.iter().map(|r| (r.first(), r.last())).collect();
    ends[i].1 = x - step;
    let lasts_ok = ends.windows(2).all(|w| w[0].1 > w[1].1);
    if !lasts_ok {
        return None;
    }
    rebuild(ladder, i, rows[i].strip_last())
}

fn rebuild(ladder: &Ladder, i: usize, replacement: Option<Segment>) -> Option<Ladder> {
    let mut rows = ladder.rows().to_vec();
    match replacement {
        Some(s) => rows[i] = s,
        None => {
            rows.remove(i);
        }
    }
    Ladder::new(&Multisegment::new(rows), ladder.reading()).ok()
}

/// Jac_x of a ladder given by its rows; the reading is inferred.
pub fn jac_ladder_rows(x: HalfInt, rows: &Multisegment) -> Result<Option<Multisegment>> {
    let ladder = Ladder::infer(rows).map_err(|e| Error::InvalidInput(format!("not a ladder: {e}")))?;
    Ok(jac_ladder(x, &ladder).map(|l| l.multisegment()))
}

/// Apply [`jac_ladder`] along a word, first element first.
pub fn jac_ladder_sequence(xs: &[HalfInt], ladder: &Ladder) -> Option<Ladder> {
    xs.iter().try_fold(ladder.clone(), |l, &x| jac_ladder(x, &l))
}
