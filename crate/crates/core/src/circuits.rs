//! Filter catalog: exact transfer functions of ideal-op-amp filter circuits
//! from their component values.
//!
//! Every formula is written in terms of the named components and evaluated
//! in exact rational arithmetic, then normalized to a monic denominator.
//! Topologies (node `A` is the internal junction, `B` the op-amp inverting
//! input where one exists):
//!
//! | kind | network |
//! |------|---------|
//! | `SeriesRLC` | R, L in series from the input, C to ground; output across C |
//! | `RCLowPass` | R from the input, C to ground |
//! | `AllPass1` | R-C lag into the non-inverting input, matched unity-gain inverting resistors |
//! | `AllPass2` | MFB band-pass (R1, R2, C1, C2) subtracted twice from the input |
//! | `SallenKeyLP` | R1 in to A, R2 A to +, C1 A to out, C2 + to ground, gain `(R3 + R4) / R4` |
//! | `SallenKeyHP` | C1 in to A, C2 A to +, R1 A to out, R2 + to ground, same gain network |
//! | `MFBLowPass` | R1 in to A, R2 A to out, R3 A to B, C1 A to ground, C2 B to out |
//! | `MFBHighPass` | C1 in to A, C2 A to out, C3 A to B, R1 A to ground, R2 B to out |
//! | `MFBBandPass` | R1 in to A, C1 A to B, C2 A to out, R2 B to out |
//! | `BoctorNotchLP` | band-pass core of `MFBBandPass`, C3 in to A, + driven by a trimmed divider |
//! | `BoctorNotchHP` | same core, C3 A to ground |
//!
//! The notch variants trim the non-inverting divider to
//! `beta = C1 R2 / (C1 R2 + R1 (C1 + C2 + C3))`, which cancels the
//! first-order numerator term and places the transmission zero on the
//! imaginary axis.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::exactnum::{format_numeral, ExactScalar};
use crate::laplace::{tf_to_ode, LaplaceError, LinearOde};
use crate::poly::{Poly, PolyError, TransferFunction};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CircuitError {
    #[error("{kind} requires component {name}")]
    MissingComponent { kind: FilterKind, name: &'static str },
    #[error("component {name} must be strictly positive, got {value}")]
    NonPositiveComponent { name: String, value: String },
    #[error("unknown component name {0:?}; expected R*, C* or L* (RL for the load)")]
    UnknownComponent(String),
    #[error("unknown filter kind {0:?}")]
    UnknownKind(String),
    #[error("notch is not realizable: need C1*R2*C2 > C3*R1*(C1 + C2 + C3)")]
    UnrealizableNotch,
    #[error("transfer function has a pole at s = 0")]
    PoleAtZero,
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Laplace(#[from] LaplaceError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FilterKind {
    SeriesRLC,
    RCLowPass,
    AllPass1,
    AllPass2,
    SallenKeyLP,
    SallenKeyHP,
    MFBLowPass,
    MFBHighPass,
    MFBBandPass,
    BoctorNotchLP,
    BoctorNotchHP,
}

impl FilterKind {
    pub const ALL: [FilterKind; 11] = [
        FilterKind::SeriesRLC,
        FilterKind::RCLowPass,
        FilterKind::AllPass1,
        FilterKind::AllPass2,
        FilterKind::SallenKeyLP,
        FilterKind::SallenKeyHP,
        FilterKind::MFBLowPass,
        FilterKind::MFBHighPass,
        FilterKind::MFBBandPass,
        FilterKind::BoctorNotchLP,
        FilterKind::BoctorNotchHP,
    ];

    /// Command-line spelling.
    pub fn name(&self) -> &'static str {
        match self {
            Self::SeriesRLC => "series-rlc",
            Self::RCLowPass => "rc-low-pass",
            Self::AllPass1 => "all-pass-1",
            Self::AllPass2 => "all-pass-2",
            Self::SallenKeyLP => "sallen-key-lp",
            Self::SallenKeyHP => "sallen-key-hp",
            Self::MFBLowPass => "mfb-low-pass",
            Self::MFBHighPass => "mfb-high-pass",
            Self::MFBBandPass => "mfb-band-pass",
            Self::BoctorNotchLP => "boctor-notch-lp",
            Self::BoctorNotchHP => "boctor-notch-hp",
        }
    }

    /// Identifier used for generated definitions.
    pub fn default_model_name(&self) -> &'static str {
        match self {
            Self::SeriesRLC => "RLC_circuit",
            Self::RCLowPass => "RCLP_filter",
            Self::AllPass1 => "AP1_filter",
            Self::AllPass2 => "AP2_filter",
            Self::SallenKeyLP => "SKLP_filter",
            Self::SallenKeyHP => "SKHP_filter",
            Self::MFBLowPass => "MFBLP_filter",
            Self::MFBHighPass => "MFBHP_filter",
            Self::MFBBandPass => "MFBBP_filter",
            Self::BoctorNotchLP => "BNLP_filter",
            Self::BoctorNotchHP => "BNHP_filter",
        }
    }

    /// Components the formula reads.
    pub fn required_components(&self) -> &'static [&'static str] {
        match self {
            Self::SeriesRLC => &["R", "L", "C"],
            Self::RCLowPass | Self::AllPass1 => &["R", "C"],
            Self::AllPass2 | Self::MFBBandPass => &["R1", "R2", "C1", "C2"],
            Self::SallenKeyLP | Self::SallenKeyHP => &["R1", "R2", "R3", "R4", "C1", "C2"],
            Self::MFBLowPass => &["R1", "R2", "R3", "C1", "C2"],
            Self::MFBHighPass | Self::BoctorNotchLP | Self::BoctorNotchHP => {
                &["R1", "R2", "C1", "C2", "C3"]
            }
        }
    }
}

impl fmt::Display for FilterKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FilterKind {
    type Err = CircuitError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let wanted = s.to_ascii_lowercase().replace('_', "-");
        Self::ALL
            .into_iter()
            .find(|k| k.name() == wanted)
            .ok_or_else(|| CircuitError::UnknownKind(s.to_string()))
    }
}

/// Component values in ohms, farads and henries.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ComponentValues {
    pub resistors: BTreeMap<String, ExactScalar>,
    pub capacitors: BTreeMap<String, ExactScalar>,
    pub inductors: BTreeMap<String, ExactScalar>,
    /// Output load; accepted but ignored by the ideal-op-amp formulas.
    pub load: Option<ExactScalar>,
}

impl ComponentValues {
    pub fn new() -> Self {
        Self::default()
    }

    /// Stores a value by name: `RL` is the load, otherwise the first letter
    /// (`R`, `C`, `L`) selects the map.
    pub fn set(&mut self, name: &str, value: ExactScalar) -> Result<(), CircuitError> {
        let map = match name.chars().next() {
            _ if name == "RL" || name == "R_L" => {
                self.load = Some(value);
                return Ok(());
            }
            Some('R') => &mut self.resistors,
            Some('C') => &mut self.capacitors,
            Some('L') => &mut self.inductors,
            _ => return Err(CircuitError::UnknownComponent(name.to_string())),
        };
        map.insert(name.to_string(), value);
        Ok(())
    }

    pub fn with(mut self, name: &str, value: ExactScalar) -> Self {
        self.set(name, value).expect("component name starts with R, C or L");
        self
    }

    fn lookup(&self, name: &str) -> Option<&ExactScalar> {
        match name.chars().next() {
            Some('R') => self.resistors.get(name),
            Some('C') => self.capacitors.get(name),
            Some('L') => self.inductors.get(name),
            _ => None,
        }
    }

    fn validate(&self) -> Result<(), CircuitError> {
        let all = self
            .resistors
            .iter()
            .chain(&self.capacitors)
            .chain(&self.inductors)
            .map(|(n, v)| (n.as_str(), v))
            .chain(self.load.as_ref().map(|v| ("RL", v)));
        for (name, value) in all {
            if *value <= ExactScalar::zero() {
                return Err(CircuitError::NonPositiveComponent {
                    name: name.to_string(),
                    value: format_numeral(value),
                });
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CircuitModel {
    pub kind: FilterKind,
    /// Monic denominator.
    pub tf: TransferFunction<ExactScalar>,
    pub ode: LinearOde<ExactScalar>,
    pub notes: Vec<String>,
}

struct Parts<'a> {
    kind: FilterKind,
    values: &'a ComponentValues,
}

impl Parts<'_> {
    fn get(&self, name: &'static str) -> Result<ExactScalar, CircuitError> {
        self.values
            .lookup(name)
            .cloned()
            .ok_or(CircuitError::MissingComponent { kind: self.kind, name })
    }
}

fn poly(ascending: Vec<ExactScalar>) -> Poly<ExactScalar> {
    Poly::new(ascending)
}

fn one() -> ExactScalar {
    ExactScalar::one()
}

/// Numerator and denominator (ascending) before normalization.
fn raw_tf(kind: FilterKind, parts: &Parts) -> Result<(Vec<ExactScalar>, Vec<ExactScalar>), CircuitError> {
    use FilterKind::*;
    let zero = ExactScalar::zero;
    Ok(match kind {
        SeriesRLC => {
            let (r, l, c) = (parts.get("R")?, parts.get("L")?, parts.get("C")?);
            (vec![one()], vec![one(), r * c.clone(), l * c])
        }
        RCLowPass => {
            let (r, c) = (parts.get("R")?, parts.get("C")?);
            (vec![one()], vec![one(), r * c])
        }
        AllPass1 => {
            let (r, c) = (parts.get("R")?, parts.get("C")?);
            let p = one() / (r * c);
            (vec![p.clone(), -one()], vec![p, one()])
        }
        AllPass2 => {
            let (r1, r2, c1, c2) = (parts.get("R1")?, parts.get("R2")?, parts.get("C1")?, parts.get("C2")?);
            let b = (c1.clone() + c2.clone()) / (r2.clone() * c1.clone() * c2.clone());
            let w2 = one() / (r1 * r2 * c1 * c2);
            (vec![w2.clone(), -b.clone(), one()], vec![w2, b, one()])
        }
        SallenKeyLP => {
            let (r1, r2, r3, r4) = (parts.get("R1")?, parts.get("R2")?, parts.get("R3")?, parts.get("R4")?);
            let (c1, c2) = (parts.get("C1")?, parts.get("C2")?);
            let k = (r3 + r4.clone()) / r4;
            let w2 = one() / (r1.clone() * r2.clone() * c1.clone() * c2.clone());
            let b1 = one() / (r1 * c1.clone()) + one() / (r2.clone() * c1) + (one() - k.clone()) / (r2 * c2);
            (vec![k * w2.clone()], vec![w2, b1, one()])
        }
        SallenKeyHP => {
            let (r1, r2, r3, r4) = (parts.get("R1")?, parts.get("R2")?, parts.get("R3")?, parts.get("R4")?);
            let (c1, c2) = (parts.get("C1")?, parts.get("C2")?);
            let k = (r3 + r4.clone()) / r4;
            let w2 = one() / (r1.clone() * r2.clone() * c1.clone() * c2.clone());
            let b1 = one() / (r2.clone() * c2) + one() / (r2 * c1.clone()) + (one() - k.clone()) / (r1 * c1);
            (vec![zero(), zero(), k], vec![w2, b1, one()])
        }
        MFBLowPass => {
            let (r1, r2, r3) = (parts.get("R1")?, parts.get("R2")?, parts.get("R3")?);
            let (c1, c2) = (parts.get("C1")?, parts.get("C2")?);
            let gain = one() / (r1.clone() * r3.clone() * c1.clone() * c2.clone());
            let b1 = (one() / r1 + one() / r2.clone() + one() / r3.clone()) / c1.clone();
            let w2 = one() / (r2 * r3 * c1 * c2);
            (vec![-gain], vec![w2, b1, one()])
        }
        MFBHighPass => {
            let (r1, r2) = (parts.get("R1")?, parts.get("R2")?);
            let (c1, c2, c3) = (parts.get("C1")?, parts.get("C2")?, parts.get("C3")?);
            let gain = c1.clone() / c2.clone();
            let b1 = (c1 + c2.clone() + c3.clone()) / (r2.clone() * c2.clone() * c3.clone());
            let w2 = one() / (r1 * r2 * c2 * c3);
            (vec![zero(), zero(), -gain], vec![w2, b1, one()])
        }
        MFBBandPass => {
            let (r1, r2, c1, c2) = (parts.get("R1")?, parts.get("R2")?, parts.get("C1")?, parts.get("C2")?);
            let gain = one() / (r1.clone() * c2.clone());
            let b1 = (c1.clone() + c2.clone()) / (r2.clone() * c1.clone() * c2.clone());
            let w2 = one() / (r1 * r2 * c1 * c2);
            (vec![zero(), -gain], vec![w2, b1, one()])
        }
        BoctorNotchLP | BoctorNotchHP => {
            let (r1, r2) = (parts.get("R1")?, parts.get("R2")?);
            let (c1, c2, c3) = (parts.get("C1")?, parts.get("C2")?, parts.get("C3")?);
            let csum = c1.clone() + c2.clone() + c3.clone();
            let beta = c1.clone() * r2.clone() / (c1.clone() * r2.clone() + r1.clone() * csum.clone());
            let den = vec![one() / r1.clone(), csum, c1.clone() * c2.clone() * r2.clone()];
            let n2 = if kind == BoctorNotchLP {
                c1 * r2 * (beta.clone() * (c2 + c3.clone()) - c3)
            } else {
                beta.clone() * c1 * r2 * (c2 + c3)
            };
            if n2 <= zero() {
                return Err(CircuitError::UnrealizableNotch);
            }
            (vec![beta / r1, zero(), n2], den)
        }
    })
}

/// Exact transfer function (monic denominator) and the matching ODE.
pub fn build_tf(kind: FilterKind, values: &ComponentValues) -> Result<CircuitModel, CircuitError> {
    values.validate()?;
    let (num, den) = raw_tf(kind, &Parts { kind, values })?;
    let tf = TransferFunction::new(poly(num), poly(den))?.monic();
    let (ode, _) = tf_to_ode(&tf)?;
    let mut notes = Vec::new();
    if values.load.is_some() {
        notes.push("load RL is ignored by the ideal op-amp model".to_string());
    }
    let extra: Vec<&String> = values
        .resistors
        .keys()
        .chain(values.capacitors.keys())
        .chain(values.inductors.keys())
        .filter(|n| !kind.required_components().contains(&n.as_str()))
        .collect();
    if !extra.is_empty() {
        let names: Vec<&str> = extra.iter().map(|s| s.as_str()).collect();
        notes.push(format!("unused components: {}", names.join(", ")));
    }
    Ok(CircuitModel { kind, tf, ode, notes })
}

/// `H(0)` as an exact ratio of constant terms.
pub fn dc_gain(kind: FilterKind, values: &ComponentValues) -> Result<ExactScalar, CircuitError> {
    let model = build_tf(kind, values)?;
    tf_dc_gain(&model.tf)
}

pub fn tf_dc_gain(tf: &TransferFunction<ExactScalar>) -> Result<ExactScalar, CircuitError> {
    let d0 = tf.den().coeff(0);
    if d0.is_zero() {
        return Err(CircuitError::PoleAtZero);
    }
    Ok(tf.num().coeff(0) / d0)
}

/// Component values of the reference Sallen-Key low-pass example.
pub fn sallen_key_example() -> ComponentValues {
    use crate::exactnum::int;
    ComponentValues::new()
        .with("R1", int(16_000))
        .with("R2", int(16_000))
        .with("R3", int(30_000))
        .with("R4", int(30_000))
        .with("C1", int(1) / int(1_000_000_000))
        .with("C2", int(1) / int(1_000_000_000))
        .with("RL", int(10_000))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::{freq_response, is_stable};
    use crate::exactnum::{int, parse_decimal, ratio};
    use crate::laplace::{check_equivalence, ObligationStatus, ALGEBRAIC_ID};
    use crate::scalar::Scalar;
    use num_traits::Signed;
    use proptest::prelude::*;

    /// Exact nodal analysis at a rational frequency. Node 0 is ground,
    /// node 1 the unit input source; every op-amp is ideal and its output
    /// row is replaced by the constraint `V+ = V-`.
    #[derive(Default)]
    struct Netlist {
        nodes: usize,
        elements: Vec<(Elem, usize, usize, ExactScalar)>,
        opamps: Vec<(usize, usize, usize)>,
    }

    #[derive(Clone, Copy)]
    enum Elem {
        R,
        C,
        L,
    }

    impl Netlist {
        fn new(nodes: usize) -> Self {
            Self { nodes, ..Self::default() }
        }
        fn add(&mut self, e: Elem, a: usize, b: usize, v: &ExactScalar) -> &mut Self {
            self.elements.push((e, a, b, v.clone()));
            self
        }
        fn opamp(&mut self, plus: usize, minus: usize, out: usize) -> &mut Self {
            self.opamps.push((plus, minus, out));
            self
        }

        /// `V(out) / V(in)` at `s`, or `None` if the system is singular there.
        fn gain(&self, s: &ExactScalar, out: usize) -> Option<ExactScalar> {
            let u = self.nodes - 2;
            let mut m = vec![vec![ExactScalar::zero(); u + 1]; u];
            let idx = |n: usize| n.checked_sub(2);
            let stamp = |row: usize, col: usize, y: &ExactScalar, m: &mut Vec<Vec<ExactScalar>>| {
                if let Some(r) = idx(row) {
                    match col {
                        0 => {}
                        1 => m[r][u] = m[r][u].clone() - y.clone(),
                        c => m[r][c - 2] = m[r][c - 2].clone() + y.clone(),
                    }
                }
            };
            for (e, a, b, v) in &self.elements {
                let y = match e {
                    Elem::R => one() / v.clone(),
                    Elem::C => s.clone() * v.clone(),
                    Elem::L => one() / (s.clone() * v.clone()),
                };
                stamp(*a, *a, &y, &mut m);
                stamp(*a, *b, &-y.clone(), &mut m);
                stamp(*b, *b, &y, &mut m);
                stamp(*b, *a, &-y.clone(), &mut m);
            }
            for &(plus, minus, out) in &self.opamps {
                let r = idx(out).unwrap();
                m[r] = vec![ExactScalar::zero(); u + 1];
                stamp(out, plus, &one(), &mut m);
                stamp(out, minus, &-one(), &mut m);
            }
            // Gauss-Jordan on [A | rhs] where rhs already holds -A_known.
            for col in 0..u {
                let pivot = (col..u).find(|&r| !m[r][col].is_zero())?;
                m.swap(col, pivot);
                let p = m[col][col].clone();
                for j in 0..=u {
                    m[col][j] = m[col][j].clone() / p.clone();
                }
                for r in 0..u {
                    if r != col && !m[r][col].is_zero() {
                        let f = m[r][col].clone();
                        for j in 0..=u {
                            m[r][j] = m[r][j].clone() - f.clone() * m[col][j].clone();
                        }
                    }
                }
            }
            Some(m[idx(out).unwrap()][u].clone())
        }
    }

    fn netlist(kind: FilterKind, v: &ComponentValues) -> (Netlist, usize) {
        use Elem::*;
        use FilterKind::*;
        let g = |n: &str| v.lookup(n).unwrap().clone();
        match kind {
            SeriesRLC => {
                let mut n = Netlist::new(4);
                n.add(R, 1, 2, &g("R")).add(L, 2, 3, &g("L")).add(C, 3, 0, &g("C"));
                (n, 3)
            }
            RCLowPass => {
                let mut n = Netlist::new(3);
                n.add(R, 1, 2, &g("R")).add(C, 2, 0, &g("C"));
                (n, 2)
            }
            AllPass1 => {
                // nodes: 2 lag, 3 inverting input, 4 out
                let rg = int(7);
                let mut n = Netlist::new(5);
                n.add(R, 1, 2, &g("R")).add(C, 2, 0, &g("C"));
                n.add(R, 1, 3, &rg).add(R, 3, 4, &rg).opamp(2, 3, 4);
                (n, 4)
            }
            AllPass2 => {
                // MFB band-pass into an inverting summer, then an inverter.
                // nodes: 2 A, 3 B, 4 bp out, 5 summer -, 6 summer out, 7 inv -, 8 out
                let (r1, r2, c1, c2) = (g("R1"), g("R2"), g("C1"), g("C2"));
                let weight = int(2) * (c1.clone() + c2.clone()) * r1.clone() / (r2.clone() * c1.clone());
                let rf = int(3);
                let mut n = Netlist::new(9);
                n.add(R, 1, 2, &r1).add(C, 2, 3, &c1).add(C, 2, 4, &c2).add(R, 3, 4, &r2).opamp(0, 3, 4);
                n.add(R, 1, 5, &rf).add(R, 4, 5, &(rf.clone() / weight)).add(R, 5, 6, &rf).opamp(0, 5, 6);
                n.add(R, 6, 7, &rf).add(R, 7, 8, &rf).opamp(0, 7, 8);
                (n, 8)
            }
            SallenKeyLP | SallenKeyHP => {
                // nodes: 2 A, 3 +, 4 -, 5 out
                let (e1, e2) = if kind == SallenKeyLP { (R, C) } else { (C, R) };
                let mut n = Netlist::new(6);
                n.add(e1, 1, 2, &g(if kind == SallenKeyLP { "R1" } else { "C1" }));
                n.add(e1, 2, 3, &g(if kind == SallenKeyLP { "R2" } else { "C2" }));
                n.add(e2, 2, 5, &g(if kind == SallenKeyLP { "C1" } else { "R1" }));
                n.add(e2, 3, 0, &g(if kind == SallenKeyLP { "C2" } else { "R2" }));
                n.add(R, 5, 4, &g("R3")).add(R, 4, 0, &g("R4")).opamp(3, 4, 5);
                (n, 5)
            }
            MFBLowPass => {
                let mut n = Netlist::new(5);
                n.add(R, 1, 2, &g("R1")).add(R, 2, 4, &g("R2")).add(R, 2, 3, &g("R3"));
                n.add(C, 2, 0, &g("C1")).add(C, 3, 4, &g("C2")).opamp(0, 3, 4);
                (n, 4)
            }
            MFBHighPass => {
                let mut n = Netlist::new(5);
                n.add(C, 1, 2, &g("C1")).add(C, 2, 4, &g("C2")).add(C, 2, 3, &g("C3"));
                n.add(R, 2, 0, &g("R1")).add(R, 3, 4, &g("R2")).opamp(0, 3, 4);
                (n, 4)
            }
            MFBBandPass => {
                let mut n = Netlist::new(5);
                n.add(R, 1, 2, &g("R1")).add(C, 2, 3, &g("C1")).add(C, 2, 4, &g("C2"));
                n.add(R, 3, 4, &g("R2")).opamp(0, 3, 4);
                (n, 4)
            }
            BoctorNotchLP | BoctorNotchHP => {
                // nodes: 2 A, 3 B, 4 out, 5 divider tap
                let (r1, r2, c1, c2, c3) = (g("R1"), g("R2"), g("C1"), g("C2"), g("C3"));
                let beta = c1.clone() * r2.clone() / (c1.clone() * r2.clone() + r1.clone() * (c1.clone() + c2.clone() + c3.clone()));
                let mut n = Netlist::new(6);
                n.add(R, 1, 2, &r1).add(C, 2, 3, &c1).add(C, 2, 4, &c2).add(R, 3, 4, &r2);
                if kind == BoctorNotchLP {
                    n.add(C, 1, 2, &c3);
                } else {
                    n.add(C, 2, 0, &c3);
                }
                n.add(R, 1, 5, &((one() - beta.clone()) / beta)).add(R, 5, 0, &one());
                n.opamp(5, 3, 4);
                (n, 4)
            }
        }
    }

    fn values_from(kind: FilterKind, raw: &[(i64, i64)]) -> ComponentValues {
        let mut v = ComponentValues::new();
        for (name, (p, q)) in kind.required_components().iter().zip(raw) {
            v.set(name, ratio(*p, *q)).unwrap();
        }
        v
    }

    fn assert_matches_nodal_analysis(kind: FilterKind, v: &ComponentValues) {
        let model = build_tf(kind, v).unwrap();
        let (net, out) = netlist(kind, v);
        let mut checked = 0;
        for k in 1..=9 {
            let s = ratio(k, 3);
            let Some(want) = net.gain(&s, out) else { continue };
            let got = model.tf.num().eval(&s) / model.tf.den().eval(&s);
            assert_eq!(got, want, "{kind} at s = {k}/3");
            checked += 1;
        }
        assert!(checked >= 6, "{kind}: too few regular sample points");
    }

    fn positive() -> impl Strategy<Value = (i64, i64)> {
        (1i64..60, 1i64..12)
    }

    #[test]
    fn sallen_key_example_coefficients() {
        let model = build_tf(FilterKind::SallenKeyLP, &sallen_key_example()).unwrap();
        assert_eq!(model.tf.num().coeffs(), &[int(7_812_500_000)]);
        assert_eq!(model.tf.den().coeffs(), &[int(3_906_250_000), int(62500), int(1)]);
        assert_eq!(model.ode.out_coeffs(), model.tf.den().coeffs());
        assert!(model.notes[0].contains("load"));
        assert_eq!(dc_gain(FilterKind::SallenKeyLP, &sallen_key_example()).unwrap(), int(2));
    }

    #[test]
    fn workspace_lists_agree_to_1e_9() {
        let model = build_tf(FilterKind::SallenKeyLP, &sallen_key_example()).unwrap();
        let d = |t: &str| parse_decimal(t).unwrap();
        let pairs = [
            (model.tf.num().coeff(0), d("7812500000.48828")),
            (model.tf.den().coeff(1), d("62500.0000039063")),
            (model.tf.den().coeff(0), d("3906249999.75586")),
        ];
        for (exact, listed) in pairs {
            let rel = ((exact.clone() - listed) / exact).abs();
            assert!(rel < ratio(1, 1_000_000_000));
        }
    }

    #[test]
    fn series_rlc_matches_textbook_form() {
        let v = ComponentValues::new().with("R", int(3)).with("L", ratio(1, 2)).with("C", ratio(2, 5));
        let model = build_tf(FilterKind::SeriesRLC, &v).unwrap();
        // 1 / (s^2 LC + s RC + 1)
        let textbook = TransferFunction::new(Poly::one(), Poly::new(vec![int(1), ratio(6, 5), ratio(1, 5)])).unwrap();
        assert!(model.tf.same_function(&textbook));
        assert!(model.tf.num().equal_up_to_scale(textbook.num()).is_some());
        assert_eq!(dc_gain(FilterKind::SeriesRLC, &v).unwrap(), int(1));
    }

    #[test]
    fn rc_low_pass_unit_values() {
        let v = ComponentValues::new().with("R", int(1)).with("C", int(1));
        let model = build_tf(FilterKind::RCLowPass, &v).unwrap();
        assert_eq!(model.tf, TransferFunction::new(Poly::one(), Poly::new(vec![int(1), int(1)])).unwrap());
    }

    #[test]
    fn band_pass_has_zero_dc_gain() {
        let v = values_from(FilterKind::MFBBandPass, &[(1, 1), (2, 1), (1, 3), (1, 5)]);
        assert_eq!(dc_gain(FilterKind::MFBBandPass, &v).unwrap(), int(0));
    }

    #[test]
    fn validation_errors() {
        let v = ComponentValues::new().with("R", int(1));
        assert!(matches!(
            build_tf(FilterKind::RCLowPass, &v),
            Err(CircuitError::MissingComponent { name: "C", .. })
        ));
        let v = ComponentValues::new().with("R", int(-1)).with("C", int(1));
        assert!(matches!(build_tf(FilterKind::RCLowPass, &v), Err(CircuitError::NonPositiveComponent { .. })));
        assert!(ComponentValues::new().set("X1", int(1)).is_err());
        // C3 too large for the low-pass notch.
        let v = values_from(FilterKind::BoctorNotchLP, &[(1, 1), (1, 1), (1, 1), (1, 1), (1, 1)]);
        assert_eq!(build_tf(FilterKind::BoctorNotchLP, &v), Err(CircuitError::UnrealizableNotch));
    }

    #[test]
    fn kind_names_round_trip() {
        for kind in FilterKind::ALL {
            assert_eq!(kind.name().parse::<FilterKind>().unwrap(), kind);
        }
        assert_eq!("SALLEN_KEY_LP".parse::<FilterKind>().unwrap(), FilterKind::SallenKeyLP);
        assert!("bessel".parse::<FilterKind>().is_err());
    }

    #[test]
    fn every_formula_matches_nodal_analysis() {
        let raw = [(3, 2), (5, 1), (2, 3), (7, 4), (1, 9), (4, 1)];
        for kind in FilterKind::ALL {
            let v = if matches!(kind, FilterKind::BoctorNotchLP) {
                values_from(kind, &[(1, 1), (4, 1), (3, 1), (2, 1), (1, 10)])
            } else {
                values_from(kind, &raw)
            };
            assert_matches_nodal_analysis(kind, &v);
        }
    }

    fn realizable_values(kind: FilterKind, raw: &[(i64, i64)]) -> Option<ComponentValues> {
        let v = values_from(kind, raw);
        build_tf(kind, &v).ok().map(|_| v)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn catalog_matches_nodal_analysis(k in 0usize..11, raw in prop::collection::vec(positive(), 6)) {
            let kind = FilterKind::ALL[k];
            if let Some(v) = realizable_values(kind, &raw) {
                assert_matches_nodal_analysis(kind, &v);
            }
        }

        #[test]
        fn catalog_structural_properties(k in 0usize..11, raw in prop::collection::vec(positive(), 6)) {
            let kind = FilterKind::ALL[k];
            let Some(v) = realizable_values(kind, &raw) else { return Ok(()) };
            let model = build_tf(kind, &v).unwrap();
            prop_assert!(model.tf.is_proper());
            prop_assert!(model.tf.den().coeff(0) > ExactScalar::zero());
            let report = check_equivalence(&model.ode, &model.tf);
            prop_assert_eq!(report.status(ALGEBRAIC_ID), Some(ObligationStatus::VerifiedExact));

            let w0 = model.tf.den().coeff(0).to_binary64().unwrap().sqrt();
            use FilterKind::*;
            match kind {
                SeriesRLC | RCLowPass | SallenKeyLP | MFBLowPass => {
                    let far = freq_response(&model.tf, 1e9 * w0).unwrap();
                    prop_assert!(far.magnitude < 1e-3);
                }
                SallenKeyHP | MFBHighPass => {
                    prop_assert!(model.tf.num().coeff(0).is_zero());
                    prop_assert_eq!(freq_response(&model.tf, 0.0).unwrap().magnitude, 0.0);
                }
                BoctorNotchLP | BoctorNotchHP => {
                    let wn = (model.tf.num().coeff(0) / model.tf.num().coeff(2)).to_binary64().unwrap().sqrt();
                    let at_notch = freq_response(&model.tf, wn).unwrap().magnitude;
                    let dc = freq_response(&model.tf, 0.0).unwrap().magnitude;
                    prop_assert!(at_notch < 1e-6 * dc, "{} vs {}", at_notch, dc);
                }
                AllPass1 | AllPass2 => {
                    let mid = freq_response(&model.tf, w0).unwrap();
                    prop_assert!((mid.magnitude - 1.0).abs() < 1e-12);
                }
                MFBBandPass => {
                    prop_assert!(model.tf.num().coeff(0).is_zero());
                }
            }
        }

        #[test]
        fn sallen_key_stable_below_gain_three(r in positive(), c in positive(), r4 in 1i64..100, r3_frac in 0i64..199) {
            // R3 / R4 in [0, 2) keeps K = 1 + R3/R4 below 3.
            let r3 = ratio(r3_frac * r4, 100);
            prop_assume!(r3 > ExactScalar::zero());
            let v = ComponentValues::new()
                .with("R1", ratio(r.0, r.1)).with("R2", ratio(r.0, r.1))
                .with("C1", ratio(c.0, c.1)).with("C2", ratio(c.0, c.1))
                .with("R3", r3).with("R4", int(r4));
            let model = build_tf(FilterKind::SallenKeyLP, &v).unwrap();
            prop_assert!(model.tf.den().coeff(1) > ExactScalar::zero());
            prop_assert!(is_stable(&model.tf).unwrap());
        }
    }
}
