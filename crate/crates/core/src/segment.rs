//! Exact half-integers, cuspidal labels, segments, multisegments and the two
//! tableau families (Speh tableaux and shifted tableaux).

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// An element of ½ℤ stored as twice its value.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct HalfInt(i64);

impl HalfInt {
    pub const ZERO: HalfInt = HalfInt(0);
    pub const ONE: HalfInt = HalfInt(2);
    pub const HALF: HalfInt = HalfInt(1);

    pub const fn from_twice(twice: i64) -> Self {
        HalfInt(twice)
    }

    pub const fn int(n: i64) -> Self {
        HalfInt(2 * n)
    }

    pub const fn twice(self) -> i64 {
        self.0
    }

    pub const fn is_integral(self) -> bool {
        self.0 % 2 == 0
    }

    /// Whether `self - other` is an integer.
    pub const fn same_class(self, other: HalfInt) -> bool {
        (self.0 - other.0) % 2 == 0
    }

    /// The integer value, if integral.
    pub fn to_int(self) -> Option<i64> {
        self.is_integral().then_some(self.0 / 2)
    }

    pub fn abs(self) -> Self {
        HalfInt(self.0.abs())
    }

    pub fn signum(self) -> i64 {
        self.0.signum()
    }
}

impl Add for HalfInt {
    type Output = HalfInt;
    fn add(self, rhs: HalfInt) -> HalfInt {
        HalfInt(self.0 + rhs.0)
    }
}

impl AddAssign for HalfInt {
    fn add_assign(&mut self, rhs: HalfInt) {
        self.0 += rhs.0;
    }
}

impl Sub for HalfInt {
    type Output = HalfInt;
    fn sub(self, rhs: HalfInt) -> HalfInt {
        HalfInt(self.0 - rhs.0)
    }
}

impl Neg for HalfInt {
    type Output = HalfInt;
    fn neg(self) -> HalfInt {
        HalfInt(-self.0)
    }
}

impl Add<i64> for HalfInt {
    type Output = HalfInt;
    fn add(self, rhs: i64) -> HalfInt {
        HalfInt(self.0 + 2 * rhs)
    }
}

impl Sub<i64> for HalfInt {
    type Output = HalfInt;
    fn sub(self, rhs: i64) -> HalfInt {
        HalfInt(self.0 - 2 * rhs)
    }
}

impl Mul<Sign> for HalfInt {
    type Output = HalfInt;
    fn mul(self, rhs: Sign) -> HalfInt {
        match rhs {
            Sign::Plus => self,
            Sign::Minus => -self,
        }
    }
}

impl From<i64> for HalfInt {
    fn from(n: i64) -> Self {
        HalfInt::int(n)
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integral() {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

impl fmt::Debug for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for HalfInt {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::InvalidInput(format!("not a half-integer: {s:?}"));
        match s.split_once('/') {
            None => s.parse::<i64>().map(HalfInt::int).map_err(|_| bad()),
            Some((num, den)) => {
                let num: i64 = num.trim().parse().map_err(|_| bad())?;
                match den.trim() {
                    "1" => Ok(HalfInt::int(num)),
                    "2" => Ok(HalfInt(num)),
                    _ => Err(bad()),
                }
            }
        }
    }
}

impl Serialize for HalfInt {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self.to_int() {
            Some(n) => serializer.serialize_i64(n),
            None => serializer.serialize_str(&self.to_string()),
        }
    }
}

impl<'de> Deserialize<'de> for HalfInt {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Int(i64),
            Str(String),
        }
        match Repr::deserialize(deserializer)? {
            Repr::Int(n) => Ok(HalfInt::int(n)),
            Repr::Str(s) => s.parse().map_err(serde::de::Error::custom),
        }
    }
}

/// A sign ±1.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    /// `(-1)^n`.
    pub fn parity(n: i64) -> Sign {
        if n.rem_euclid(2) == 0 {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }

    pub fn pow(self, n: i64) -> Sign {
        match self {
            Sign::Plus => Sign::Plus,
            Sign::Minus => Sign::parity(n),
        }
    }

    pub fn value(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn from_value(v: i64) -> Option<Sign> {
        match v {
            1 => Some(Sign::Plus),
            -1 => Some(Sign::Minus),
            _ => None,
        }
    }

    pub fn both() -> [Sign; 2] {
        [Sign::Plus, Sign::Minus]
    }
}

// − sorts before +, matching the block order where ζ = + is the larger.
impl Ord for Sign {
    fn cmp(&self, other: &Self) -> Ordering {
        self.value().cmp(&other.value())
    }
}

impl PartialOrd for Sign {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Mul for Sign {
    type Output = Sign;
    fn mul(self, rhs: Sign) -> Sign {
        if self == rhs {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

impl Neg for Sign {
    type Output = Sign;
    fn neg(self) -> Sign {
        self * Sign::Minus
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}

impl fmt::Debug for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Sign {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "+" | "+1" | "1" => Ok(Sign::Plus),
            "-" | "-1" => Ok(Sign::Minus),
            other => Err(Error::InvalidInput(format!("not a sign: {other:?}"))),
        }
    }
}

impl Serialize for Sign {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Sign {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Int(i64),
            Str(String),
        }
        match Repr::deserialize(deserializer)? {
            Repr::Int(v) => {
                Sign::from_value(v).ok_or_else(|| serde::de::Error::custom(format!("not a sign: {v}")))
            }
            Repr::Str(s) => s.parse().map_err(serde::de::Error::custom),
        }
    }
}

/// A formal cuspidal symbol ρ: a name, the rank d_ρ, and for self-dual
/// labels the sign η_ρ (+ orthogonal, − symplectic). Non-self-dual labels
/// may name their dual label.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CuspidalLabel {
    name: Arc<str>,
    d: u32,
    eta: Option<Sign>,
    dual: Option<Arc<str>>,
}

impl CuspidalLabel {
    pub fn self_dual(name: &str, d: u32, eta: Sign) -> Self {
        CuspidalLabel { name: name.into(), d, eta: Some(eta), dual: None }
    }

    pub fn non_self_dual(name: &str, d: u32, dual: &str) -> Self {
        CuspidalLabel { name: name.into(), d, eta: None, dual: Some(dual.into()) }
    }

    /// Shorthand for a self-dual orthogonal-type label of rank 1.
    pub fn trivial(name: &str) -> Self {
        CuspidalLabel::self_dual(name, 1, Sign::Plus)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn is_self_dual(&self) -> bool {
        self.eta.is_some()
    }

    pub fn eta(&self) -> Option<Sign> {
        self.eta
    }

    /// Name of ρ*: the label itself when self-dual.
    pub fn dual_name(&self) -> &str {
        match &self.dual {
            Some(d) => d,
            None => &self.name,
        }
    }
}

impl fmt::Debug for CuspidalLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}

impl fmt::Display for CuspidalLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}

/// Direction of a segment read from its first to its last entry.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Direction {
    Increasing,
    Decreasing,
    Singleton,
}

/// The segment ⟨ρ|·|^first, …, ρ|·|^last⟩: an arithmetic progression of
/// step ±1 from `first` to `last`. Jacquet operators strip from `first`
/// (left) or from `last` (right).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Segment {
    rho: CuspidalLabel,
    first: HalfInt,
    last: HalfInt,
}

impl Segment {
    pub fn new(rho: CuspidalLabel, first: HalfInt, last: HalfInt) -> Result<Self> {
        if !first.same_class(last) {
            return Err(Error::InvalidInput(format!(
                "segment [{first},{last}] has a non-integral length"
            )));
        }
        Ok(Segment { rho, first, last })
    }

    pub fn rho(&self) -> &CuspidalLabel {
        &self.rho
    }

    pub fn first(&self) -> HalfInt {
        self.first
    }

    pub fn last(&self) -> HalfInt {
        self.last
    }

    pub fn len(&self) -> usize {
        ((self.last - self.first).abs().twice() / 2 + 1) as usize
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn direction(&self) -> Direction {
        match self.first.cmp(&self.last) {
            Ordering::Less => Direction::Increasing,
            Ordering::Greater => Direction::Decreasing,
            Ordering::Equal => Direction::Singleton,
        }
    }

    fn step(&self) -> i64 {
        if self.first <= self.last {
            1
        } else {
            -1
        }
    }

    /// Entries from first to last.
    pub fn entries(&self) -> impl Iterator<Item = HalfInt> + '_ {
        let step = self.step();
        (0..self.len() as i64).map(move |k| self.first + k * step)
    }

    pub fn contains(&self, x: HalfInt) -> bool {
        let (lo, hi) = self.bounds();
        x.same_class(self.first) && lo <= x && x <= hi
    }

    /// (min, max) of the entries.
    pub fn bounds(&self) -> (HalfInt, HalfInt) {
        (self.first.min(self.last), self.first.max(self.last))
    }

    /// The segment without its first entry, `None` if nothing remains.
    pub fn strip_first(&self) -> Option<Segment> {
        (self.first != self.last).then(|| Segment {
            rho: self.rho.clone(),
            first: self.first + self.step(),
            last: self.last,
        })
    }

    /// The segment without its last entry, `None` if nothing remains.
    pub fn strip_last(&self) -> Option<Segment> {
        (self.first != self.last).then(|| Segment {
            rho: self.rho.clone(),
            first: self.first,
            last: self.last - self.step(),
        })
    }

    pub fn negated(&self) -> Segment {
        Segment { rho: self.rho.clone(), first: -self.first, last: -self.last }
    }
}

impl fmt::Debug for Segment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}]", self.first, self.last)
    }
}

impl fmt::Display for Segment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{},{}]", self.rho, self.first, self.last)
    }
}

impl Serialize for Segment {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        (self.rho.name(), self.first, self.last).serialize(serializer)
    }
}

/// True iff neither segment contains the other and their union is a segment.
pub fn linked(s1: &Segment, s2: &Segment) -> bool {
    if s1.rho != s2.rho || !s1.first.same_class(s2.first) {
        return false;
    }
    let (d1, d2) = (s1.direction(), s2.direction());
    if d1 != Direction::Singleton && d2 != Direction::Singleton && d1 != d2 {
        return false;
    }
    let (lo1, hi1) = s1.bounds();
    let (lo2, hi2) = s2.bounds();
    let contains = |lo: HalfInt, hi: HalfInt, lo_: HalfInt, hi_: HalfInt| lo <= lo_ && hi_ <= hi;
    if contains(lo1, hi1, lo2, hi2) || contains(lo2, hi2, lo1, hi1) {
        return false;
    }
    // union is an interval iff the gap between them is at most one step
    lo2 <= hi1 + 1 && lo1 <= hi2 + 1
}

/// A multiset of segments, stored sorted so that equality is multiset equality.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Multisegment(Vec<Segment>);

impl Multisegment {
    pub fn new(mut segments: Vec<Segment>) -> Self {
        segments.sort();
        Multisegment(segments)
    }

    pub fn empty() -> Self {
        Multisegment(Vec::new())
    }

    pub fn segments(&self) -> &[Segment] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Total number of cuspidal entries.
    pub fn degree(&self) -> usize {
        self.0.iter().map(Segment::len).sum()
    }

    /// Multiset of all entries, sorted.
    pub fn cells(&self) -> Vec<HalfInt> {
        let mut v: Vec<HalfInt> = self.0.iter().flat_map(|s| s.entries().collect::<Vec<_>>()).collect();
        v.sort();
        v
    }

    /// Replace the segment at `index` by `replacement` (deleting it on `None`).
    pub fn replace(&self, index: usize, replacement: Option<Segment>) -> Multisegment {
        let mut segs = self.0.clone();
        match replacement {
            Some(s) => segs[index] = s,
            None => {
                segs.remove(index);
            }
        }
        Multisegment::new(segs)
    }

    pub fn union(&self, other: &Multisegment) -> Multisegment {
        Multisegment::new(self.0.iter().chain(other.0.iter()).cloned().collect())
    }
}

impl FromIterator<Segment> for Multisegment {
    fn from_iter<I: IntoIterator<Item = Segment>>(iter: I) -> Self {
        Multisegment::new(iter.into_iter().collect())
    }
}

impl fmt::Debug for Multisegment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, s) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{s:?}")?;
        }
        f.write_str("}")
    }
}

impl fmt::Display for Multisegment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl Serialize for Multisegment {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.serialize(serializer)
    }
}

/// How a ladder of rows is read as an irreducible representation: in the
/// Zelevinsky classification (rows are increasing segments) or the Langlands
/// classification (rows are decreasing segments). Singleton rows fit either,
/// so the reading has to be carried alongside the rows.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Reading {
    Zelevinsky,
    Langlands,
}

impl Reading {
    /// Step from one entry of a row to the next.
    pub fn step(self) -> i64 {
        match self {
            Reading::Zelevinsky => 1,
            Reading::Langlands => -1,
        }
    }
}

/// A ladder: rows over one cuspidal label whose first entries and last
/// entries are both strictly decreasing once rows are sorted by first entry.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Ladder {
    rows: Vec<Segment>,
    reading: Reading,
}

impl Ladder {
    pub fn new(rows: &Multisegment, reading: Reading) -> Result<Self> {
        let mut rows = rows.segments().to_vec();
        rows.sort_by_key(|r| std::cmp::Reverse(r.first));
        if let Some(s) = rows.first() {
            if rows.iter().any(|r| r.rho != s.rho) {
                return Err(Error::InvalidInput("ladder rows use different cuspidal labels".into()));
            }
            if rows.iter().any(|r| !r.first.same_class(s.first)) {
                return Err(Error::InvalidInput("ladder rows lie on different lattices".into()));
            }
        }
        for r in &rows {
            let ok = matches!(
                (r.direction(), reading),
                (Direction::Singleton, _)
                    | (Direction::Increasing, Reading::Zelevinsky)
                    | (Direction::Decreasing, Reading::Langlands)
            );
            if !ok {
                return Err(Error::InvalidInput(format!(
                    "row {r:?} is not oriented for the {reading:?} reading"
                )));
            }
        }
        for w in rows.windows(2) {
            if !(w[0].first > w[1].first && w[0].last > w[1].last) {
                return Err(Error::InvalidInput(format!(
                    "rows {:?} and {:?} break the ladder condition",
                    w[0], w[1]
                )));
            }
        }
        Ok(Ladder { rows, reading })
    }

    /// Build a ladder, reading it from the orientation of its non-singleton
    /// rows. A ladder made only of singletons is read in the Zelevinsky
    /// classification.
    pub fn infer(rows: &Multisegment) -> Result<Self> {
        let mut reading = None;
        for r in rows.segments() {
            let this = match r.direction() {
                Direction::Increasing => Reading::Zelevinsky,
                Direction::Decreasing => Reading::Langlands,
                Direction::Singleton => continue,
            };
            match reading {
                None => reading = Some(this),
                Some(prev) if prev != this => {
                    return Err(Error::InvalidInput("ladder mixes row orientations".into()))
                }
                _ => {}
            }
        }
        Ladder::new(rows, reading.unwrap_or(Reading::Zelevinsky))
    }

    /// Rows sorted by decreasing first entry.
    pub fn rows(&self) -> &[Segment] {
        &self.rows
    }

    pub fn reading(&self) -> Reading {
        self.reading
    }

    pub fn multisegment(&self) -> Multisegment {
        Multisegment::new(self.rows.clone())
    }

    pub fn rho(&self) -> Option<&CuspidalLabel> {
        self.rows.first().map(Segment::rho)
    }
}

fn check_shape(a: HalfInt, b: HalfInt) -> Result<()> {
    if b < HalfInt::ZERO || a < b || !(a - b).is_integral() {
        return Err(Error::InvalidBlock(format!(
            "need A >= B >= 0 with A - B integral, got A={a}, B={b}"
        )));
    }
    Ok(())
}

/// Rows of the Speh tableau S(ρ,A,B,ζ): row ℓ is [ζ(B+ℓ−1), −ζ(A−ℓ+1)].
pub fn speh_rows(rho: &CuspidalLabel, a: HalfInt, b: HalfInt, zeta: Sign) -> Result<Multisegment> {
    check_shape(a, b)?;
    let n = (a - b).twice() / 2 + 1;
    (1..=n)
        .map(|l| Segment::new(rho.clone(), (b + (l - 1)) * zeta, -((a - (l - 1)) * zeta)))
        .collect::<Result<Vec<_>>>()
        .map(Multisegment::new)
}

/// The Speh tableau as a ladder. For ζ = + the rows decrease and the ladder is
/// read in the Langlands classification; for ζ = − in the Zelevinsky one.
pub fn speh_ladder(rho: &CuspidalLabel, a: HalfInt, b: HalfInt, zeta: Sign) -> Result<Ladder> {
    let reading = match zeta {
        Sign::Plus => Reading::Langlands,
        Sign::Minus => Reading::Zelevinsky,
    };
    Ladder::new(&speh_rows(rho, a, b, zeta)?, reading)
}

/// Rows of the shifted tableau C(ζ,A,B,T): row k from the top is
/// [ζ(B+T−k+1), ζ(A+T−k+1)]. `t = 0` gives the empty multisegment.
pub fn shifted_rows(zeta: Sign, a: HalfInt, b: HalfInt, t: u32, rho: &CuspidalLabel) -> Result<Multisegment> {
    check_shape(a, b)?;
    let t = t as i64;
    (1..=t)
        .map(|k| Segment::new(rho.clone(), (b + (t - k + 1)) * zeta, (a + (t - k + 1)) * zeta))
        .collect::<Result<Vec<_>>>()
        .map(Multisegment::new)
}

/// The representation S(ζ,A,B,T) as a ladder: rows increase for ζ = + and
/// are read in the Zelevinsky classification, and symmetrically for ζ = −.
pub fn shifted_ladder(zeta: Sign, a: HalfInt, b: HalfInt, t: u32, rho: &CuspidalLabel) -> Result<Ladder> {
    let reading = match zeta {
        Sign::Plus => Reading::Zelevinsky,
        Sign::Minus => Reading::Langlands,
    };
    Ladder::new(&shifted_rows(zeta, a, b, t, rho)?, reading)
}

/// Cells of C(ζ,A,B,T) in row-major order: top row first, each row left to right.
pub fn tableau_cells(zeta: Sign, a: HalfInt, b: HalfInt, t: u32) -> Result<Vec<HalfInt>> {
    check_shape(a, b)?;
    let width = (a - b).twice() / 2;
    let t = t as i64;
    Ok((1..=t)
        .flat_map(|k| (0..=width).map(move |j| (b + (t - k + 1) + j) * zeta))
        .collect())
}
