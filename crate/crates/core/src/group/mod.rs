//! The order-120 permutation group acting on the ten parameters `c_jl`.

mod relation;

pub use relation::{
    detect_relation, lll_reduce, minimal_slack, probe_denominators, probe_vectors,
    DenominatorProbe, RelationOutcome,
};

use std::collections::{HashMap, VecDeque};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::arith::{ser_rat, BigRat, QuarterInt};
use crate::error::{Error, Result};
use crate::hyper::{gamma_exact_rat, h_value, EvalMode, GammaExact, HpReal, Method};

/// Index of a parameter `c_jl`, in the order `00, 11, 12, 13, 21, 22, 23, 31, 32, 33`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Label {
    C00,
    C11,
    C12,
    C13,
    C21,
    C22,
    C23,
    C31,
    C32,
    C33,
}

impl Label {
    pub const ALL: [Label; 10] = [
        Label::C00,
        Label::C11,
        Label::C12,
        Label::C13,
        Label::C21,
        Label::C22,
        Label::C23,
        Label::C31,
        Label::C32,
        Label::C33,
    ];

    /// `(c00, c21, c22, c33, c31)`.
    pub const PRIMED: [Label; 5] = [Label::C00, Label::C21, Label::C22, Label::C33, Label::C31];

    /// `(c11, c23, c13, c12, c32)`.
    pub const DOUBLE_PRIMED: [Label; 5] =
        [Label::C11, Label::C23, Label::C13, Label::C12, Label::C32];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        ["00", "11", "12", "13", "21", "22", "23", "31", "32", "33"][self.index()]
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "c{}", self.name())
    }
}

/// The ten parameters, stored redundantly and checked against their five
/// defining linear relations on construction.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CVector {
    entries: [BigRat; 10],
}

impl Serialize for CVector {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        let mut m = s.serialize_map(Some(10))?;
        for l in Label::ALL {
            m.serialize_entry(l.name(), &self.get(l).to_string())?;
        }
        m.end()
    }
}

impl CVector {
    /// Builds the full set from `c' = (c00, c21, c22, c33, c31)`.
    pub fn from_primed(p: [BigRat; 5]) -> Self {
        let [c00, c21, c22, c33, c31] = p;
        let c11 = &c22 + &c33 - &c00;
        let c12 = &c21 + &c00 - &c33;
        let c13 = &c31 + &c00 - &c22;
        let c23 = &c33 + &c31 - &c21;
        let c32 = &c22 + &c21 - &c31;
        CVector {
            entries: [c00, c11, c12, c13, c21, c22, c23, c31, c32, c33],
        }
    }

    /// Accepts all ten entries and rejects sets violating the linear relations.
    pub fn from_entries(entries: [BigRat; 10]) -> Result<Self> {
        let c = CVector { entries };
        let rebuilt = CVector::from_primed(c.primed());
        for l in Label::DOUBLE_PRIMED {
            if rebuilt.get(l) != c.get(l) {
                return Err(Error::IllFormed(format!(
                    "{l} = {} but the relations give {}",
                    c.get(l),
                    rebuilt.get(l)
                )));
            }
        }
        Ok(c)
    }

    pub fn get(&self, l: Label) -> &BigRat {
        &self.entries[l.index()]
    }

    pub fn entries(&self) -> &[BigRat; 10] {
        &self.entries
    }

    pub fn primed(&self) -> [BigRat; 5] {
        Label::PRIMED.map(|l| self.get(l).clone())
    }

    pub fn double_primed(&self) -> [BigRat; 5] {
        Label::DOUBLE_PRIMED.map(|l| self.get(l).clone())
    }

    /// First entry `≤ -1`, if any.
    pub fn inadmissible_entry(&self) -> Option<Label> {
        let m1 = -BigRat::one();
        Label::ALL.into_iter().find(|&l| *self.get(l) <= m1)
    }

    pub fn is_admissible(&self) -> bool {
        self.inadmissible_entry().is_none()
    }

    pub fn check_admissible(&self) -> Result<()> {
        match self.inadmissible_entry() {
            None => Ok(()),
            Some(l) => Err(Error::Inadmissible {
                label: l.name().into(),
                value: self.get(l).to_string(),
            }),
        }
    }

    pub fn check_positive(&self) -> Result<()> {
        match Label::ALL.into_iter().find(|&l| !self.get(l).is_positive()) {
            None => Ok(()),
            Some(l) => Err(Error::Inadmissible {
                label: l.name().into(),
                value: self.get(l).to_string(),
            }),
        }
    }

    /// Demi-integrality: `c00, c21, c33 ∈ Z + 1/2` and `c22, c31 ∈ Z`. The
    /// equivalent typing of `c''` is checked as well and must agree.
    pub fn is_demi_integral(&self) -> Result<bool> {
        let half_odd = |l: Label| is_half_odd(self.get(l));
        let integer = |l: Label| self.get(l).is_integer();
        let primed = half_odd(Label::C00)
            && half_odd(Label::C21)
            && half_odd(Label::C33)
            && integer(Label::C22)
            && integer(Label::C31);
        let double_primed = half_odd(Label::C13)
            && half_odd(Label::C12)
            && half_odd(Label::C32)
            && integer(Label::C11)
            && integer(Label::C23);
        if primed != double_primed {
            return Err(Error::IllFormed(format!(
                "c' typing ({primed}) and c'' typing ({double_primed}) disagree"
            )));
        }
        Ok(primed)
    }

    pub fn act(&self, sigma: &Permutation10) -> CVector {
        sigma.act(self)
    }
}

impl fmt::Display for CVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p: Vec<String> = self.primed().iter().map(|x| x.to_string()).collect();
        let q: Vec<String> = self.double_primed().iter().map(|x| x.to_string()).collect();
        write!(f, "c'=({}) c''=({})", p.join(", "), q.join(", "))
    }
}

fn is_half_odd(x: &BigRat) -> bool {
    *x.denom() == BigInt::from(2)
}

/// A permutation of the ten labels; `image[i]` is where label `i` goes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation10 {
    image: [u8; 10],
}

impl Permutation10 {
    pub fn identity() -> Self {
        Permutation10 {
            image: [0, 1, 2, 3, 4, 5, 6, 7, 8, 9],
        }
    }

    pub fn from_image(image: [u8; 10]) -> Result<Self> {
        let mut seen = [false; 10];
        for &i in &image {
            if i >= 10 || std::mem::replace(&mut seen[i as usize], true) {
                return Err(Error::Domain(format!("{image:?} is not a permutation")));
            }
        }
        Ok(Permutation10 { image })
    }

    /// Product of disjoint transpositions.
    pub fn from_swaps(swaps: &[(Label, Label)]) -> Self {
        let mut p = Permutation10::identity();
        for &(a, b) in swaps {
            p.image.swap(a.index(), b.index());
        }
        p
    }

    pub fn image(&self, l: Label) -> Label {
        Label::ALL[self.image[l.index()] as usize]
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Permutation10) -> Permutation10 {
        let mut image = [0u8; 10];
        for (i, slot) in image.iter_mut().enumerate() {
            *slot = self.image[other.image[i] as usize];
        }
        Permutation10 { image }
    }

    pub fn inverse(&self) -> Permutation10 {
        let mut image = [0u8; 10];
        for (i, &j) in self.image.iter().enumerate() {
            image[j as usize] = i as u8;
        }
        Permutation10 { image }
    }

    pub fn is_identity(&self) -> bool {
        *self == Permutation10::identity()
    }

    pub fn order(&self) -> usize {
        let mut p = *self;
        let mut k = 1;
        while !p.is_identity() {
            p = p.compose(self);
            k += 1;
        }
        k
    }

    /// `(σc)[σ(i)] = c[i]`.
    pub fn act(&self, c: &CVector) -> CVector {
        let mut entries = c.entries.clone();
        for (i, e) in c.entries.iter().enumerate() {
            entries[self.image[i] as usize] = e.clone();
        }
        CVector { entries }
    }

    /// Cycle notation over labels, e.g. `(c11 c31)(c12 c32)`.
    pub fn cycles(&self) -> String {
        let mut seen = [false; 10];
        let mut out = String::new();
        for start in 0..10 {
            if seen[start] || self.image[start] as usize == start {
                continue;
            }
            let mut cycle = Vec::new();
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                cycle.push(Label::ALL[i].to_string());
                i = self.image[i] as usize;
            }
            out.push_str(&format!("({})", cycle.join(" ")));
        }
        if out.is_empty() {
            out.push_str("id");
        }
        out
    }
}

impl fmt::Display for Permutation10 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.cycles())
    }
}

/// The four generators, in the order `a1, a2, b, h`.
pub fn generators() -> [(&'static str, Permutation10); 4] {
    use Label::*;
    [
        (
            "a1",
            Permutation10::from_swaps(&[(C11, C31), (C12, C32), (C13, C33)]),
        ),
        (
            "a2",
            Permutation10::from_swaps(&[(C21, C31), (C22, C32), (C23, C33)]),
        ),
        (
            "b",
            Permutation10::from_swaps(&[(C12, C13), (C22, C23), (C32, C33)]),
        ),
        (
            "h",
            Permutation10::from_swaps(&[(C00, C22), (C11, C33), (C13, C31)]),
        ),
    ]
}

/// Safety cap on the closure, `10!`.
pub const CLOSURE_CAP: usize = 3_628_800;

#[derive(Clone, Debug)]
pub struct GroupElement {
    pub perm: Permutation10,
    /// Shortest generator word, rightmost letter applied first.
    pub word: Vec<&'static str>,
}

#[derive(Clone, Debug)]
pub struct Group {
    pub elements: Vec<GroupElement>,
}

impl Group {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn max_word_length(&self) -> usize {
        self.elements
            .iter()
            .map(|e| e.word.len())
            .max()
            .unwrap_or(0)
    }

    pub fn contains(&self, p: &Permutation10) -> bool {
        self.elements.iter().any(|e| e.perm == *p)
    }
}

/// Breadth-first closure of the generators, recording shortest words.
pub fn generate_group() -> Result<Group> {
    generate_group_capped(CLOSURE_CAP)
}

pub fn generate_group_capped(cap: usize) -> Result<Group> {
    let gens = generators();
    let mut index: HashMap<Permutation10, usize> = HashMap::new();
    let mut elements = vec![GroupElement {
        perm: Permutation10::identity(),
        word: Vec::new(),
    }];
    index.insert(Permutation10::identity(), 0);
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        for (name, g) in &gens {
            let p = g.compose(&elements[i].perm);
            if index.contains_key(&p) {
                continue;
            }
            if elements.len() >= cap {
                return Err(Error::ClosureOverflow(cap));
            }
            let mut word = vec![*name];
            word.extend(&elements[i].word);
            index.insert(p, elements.len());
            queue.push_back(elements.len());
            elements.push(GroupElement { perm: p, word });
        }
    }
    Ok(Group { elements })
}

#[derive(Clone, Debug, Serialize)]
pub struct OrbitElement {
    pub c: CVector,
    pub sigma: String,
    pub word: String,
    pub admissible: bool,
    pub demi_integral: bool,
}

/// `{σc : σ ∈ G}` in breadth-first order of the group, without repeats.
pub fn orbit(c: &CVector, group: &Group) -> Result<Vec<OrbitElement>> {
    let mut seen = std::collections::HashSet::new();
    let mut out = Vec::new();
    for e in &group.elements {
        let image = e.perm.act(c);
        if !seen.insert(image.clone()) {
            continue;
        }
        let demi_integral = image.is_demi_integral()?;
        out.push(OrbitElement {
            admissible: image.is_admissible(),
            demi_integral,
            sigma: e.perm.cycles(),
            word: if e.word.is_empty() {
                "id".into()
            } else {
                e.word.join("·")
            },
            c: image,
        });
    }
    Ok(out)
}

/// The parameters `h0, …, h4`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HParams {
    pub h: [QuarterInt; 5],
}

impl HParams {
    pub fn new(h: [QuarterInt; 5]) -> Result<Self> {
        if let Some(x) = h.iter().find(|x| !x.is_half_integral()) {
            return Err(Error::Domain(format!(
                "h parameter {x} is not a half-integer"
            )));
        }
        Ok(HParams { h })
    }

    /// The family `(3n+1, n+1/2, n+1/2, n+1/2, n+1)`.
    pub fn family(n: i64) -> Self {
        HParams {
            h: crate::hyper::whipple_family(n),
        }
    }

    /// `h0, h4 ∈ Z` and `h1, h2, h3 ∈ Z + 1/2`.
    pub fn is_typed(&self) -> bool {
        self.h[0].is_integer()
            && self.h[4].is_integer()
            && self.h[1..4].iter().all(QuarterInt::is_half_odd)
    }

    /// `h_j > 0` and `1 + h0 − h_j − h_l > 0` for distinct `j, l ∈ {1..4}`.
    pub fn is_positive(&self) -> bool {
        let h: Vec<BigRat> = self.h.iter().map(QuarterInt::to_rat).collect();
        let one = BigRat::one();
        (1..5).all(|j| h[j].is_positive())
            && (1..5).all(|j| (j + 1..5).all(|l| (&one + &h[0] - &h[j] - &h[l]).is_positive()))
    }
}

/// `a1 = 1+h0−h1−h2, a2 = h3, a3 = h4, b2 = 1+h0−h1, b3 = 1+h0−h2`, then
/// `c00 = b2+b3−a1−a2−a3−1`, `c_j1 = a_j − 1`, `c_jl = b_l − a_j − 1`.
pub fn c_from_h(h: &HParams) -> CVector {
    let [h0, h1, h2, h3, h4] = h.h.clone().map(|x| x.to_rat());
    let one = BigRat::one();
    let a = [&one + &h0 - &h1 - &h2, h3, h4];
    let b2 = &one + &h0 - &h1;
    let b3 = &one + &h0 - &h2;
    let c00 = &b2 + &b3 - &a[0] - &a[1] - &a[2] - &one;
    let cj = |j: usize, l: usize| match l {
        1 => &a[j] - &one,
        2 => &b2 - &a[j] - &one,
        _ => &b3 - &a[j] - &one,
    };
    CVector::from_entries([
        c00,
        cj(0, 1),
        cj(0, 2),
        cj(0, 3),
        cj(1, 1),
        cj(1, 2),
        cj(1, 3),
        cj(2, 1),
        cj(2, 2),
        cj(2, 3),
    ])
    .expect("the construction satisfies the linear relations")
}

/// `Π(c) = Γ(c00)Γ(c21)Γ(c22)Γ(c33)Γ(c31)`.
pub fn pi_product(c: &CVector) -> Result<GammaExact> {
    let mut acc = GammaExact::one();
    for l in Label::PRIMED {
        let g = gamma_exact_rat(c.get(l)).map_err(|e| match e {
            Error::GammaPole(_) => Error::GammaPole(format!("{l} = {}", c.get(l))),
            other => other,
        })?;
        acc = &acc * &g;
    }
    Ok(acc)
}

#[derive(Clone, Debug, Serialize)]
pub struct StabilityCheck {
    pub sigma: String,
    pub image: CVector,
    /// `√π` exponent of `Π(σc)/Π(c)`.
    pub sqrt_pi_difference: i32,
    #[serde(serialize_with = "ser_rat")]
    pub residual: BigRat,
    #[serde(serialize_with = "ser_rat")]
    pub error: BigRat,
    pub method: Method,
}

/// `|H(c)/Π(c) − H(σc)/Π(σc)|`. All entries of `c` and `σc` must be positive.
pub fn stability_check(
    c: &CVector,
    sigma: &Permutation10,
    bits: u32,
    mode: &EvalMode,
) -> Result<StabilityCheck> {
    let image = sigma.act(c);
    c.check_positive()?;
    image.check_positive()?;
    let quotient = |v: &CVector| -> Result<(HpReal, BigRat, Method, i32)> {
        let h = h_value(v, bits + 16, mode)?;
        let pi = pi_product(v)?;
        let ratio = &h.prefactor / &pi;
        let r = ratio.to_real(bits + 16);
        let err = &h.series.error * (r.to_rat().abs() + BigRat::one());
        Ok(((&r * &h.series.value), err, h.method(), pi.sqrt_pi_power))
    };
    let (q0, e0, method, s0) = quotient(c)?;
    let (q1, e1, s1) = if sigma.is_identity() {
        (q0.clone(), e0.clone(), s0)
    } else {
        let (q, e, _, s) = quotient(&image)?;
        (q, e, s)
    };
    Ok(StabilityCheck {
        sigma: sigma.cycles(),
        image,
        sqrt_pi_difference: s1 - s0,
        residual: (&q0 - &q1).to_rat().abs(),
        error: e0 + e1,
        method,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MParams {
    /// `c22 + c31`.
    pub m: i64,
    pub m1: i64,
    pub m2: i64,
}

/// `M` and the two largest values of `2c`.
pub fn m_params(c: &CVector) -> Result<MParams> {
    if !c.is_demi_integral()? {
        return Err(Error::Domain(
            "m_params needs a demi-integral parameter set".into(),
        ));
    }
    use num_traits::ToPrimitive;
    let small = |x: BigRat| {
        x.to_integer()
            .to_i64()
            .ok_or_else(|| Error::Domain(format!("parameter {x} too large")))
    };
    let m = small(c.get(Label::C22) + c.get(Label::C31))?;
    let two = BigRat::from_integer(BigInt::from(2));
    let mut doubled = c
        .entries
        .iter()
        .map(|x| small(x * &two))
        .collect::<Result<Vec<i64>>>()?;
    doubled.sort_unstable_by(|a, b| b.cmp(a));
    Ok(MParams {
        m,
        m1: doubled[0],
        m2: doubled[1],
    })
}

impl MParams {
    /// `2^(2M + slack) · D_{m1} · D_{m2}`.
    pub fn denominator_bound(&self, slack: u32) -> BigInt {
        let d = crate::arith::lcm_upto_or_one;
        let e = (2 * self.m + slack as i64).max(0) as u64;
        (BigInt::one() << e) * d(self.m1) * d(self.m2)
    }
}

/// The primed tuple `(1/2, 1/2, 1, 1/2, 1)` of the family at `n = 1`.
pub fn reference_primed() -> CVector {
    let h = BigRat::new(BigInt::one(), BigInt::from(2));
    CVector::from_primed([h.clone(), h.clone(), BigRat::one(), h, BigRat::one()])
}

impl CVector {
    pub fn all_equal(x: BigRat) -> Self {
        CVector {
            entries: std::array::from_fn(|_| x.clone()),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }
}
