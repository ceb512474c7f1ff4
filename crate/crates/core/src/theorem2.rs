//! Constructive representations in the five mixed forms
//!
//! ```text
//! x² + 3y² + t_z,  x² + 3t_y + t_z,  x² + 6t_y + t_z,  3x² + 2t_y + t_z,  4x² + 2t_y + t_z
//! ```
//!
//! Each construction writes an auxiliary number as a sum of three squares,
//! normalizes signs and order until a set of congruences holds, and then
//! reads the witness off with exact divisions:
//!
//! | form          | three-square target | normalization                          |
//! |---------------|---------------------|----------------------------------------|
//! | `4x²+2t+t`    | `8n + 3`            | all ≡ 1 (mod 4), pair ≡ (mod 8)        |
//! | `x²+3t+t`     | `48n + 24`          | aligned mod 3, `x ≡ 0`, `y ≡ z ≡ 2 (mod 4)` |
//! | `x²+3y²+t`    | `24n + 3`           | aligned mod 3, all odd, `x ≡ y (mod 4)` |
//! | `3x²+2t+t`    | `24n + 9`           | aligned mod 3, `x, y` even, `z` odd      |
//! | `x²+6t+t`     | `24n + 21`          | aligned mod 3, `x ≡ 2`, `y ≡ 0 (mod 4)`, `z` odd |
//!
//! Every congruence the argument relies on is re-checked at run time and a
//! failure surfaces as [`Error::ProofStep`]; so is every division. The
//! intermediate state is kept in a [`Derivation`] so callers can audit it.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::arith::check_ceiling;
use crate::jacobi::{align_mod3, jacobi_transform, SignedTriple};
use crate::oracle::FormSpec;
use crate::three_squares::{three_squares, ThreeSquareRep};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "&'static str", try_from = "String")]
pub enum MixedFormId {
    /// `x² + 3y² + t_z`
    X2ThreeY2T,
    /// `x² + 3t_y + t_z`
    X2ThreeTT,
    /// `x² + 6t_y + t_z`
    X2SixTT,
    /// `3x² + 2t_y + t_z`
    ThreeX2TwoTT,
    /// `4x² + 2t_y + t_z`
    FourX2TwoTT,
}

impl MixedFormId {
    pub const ALL: [MixedFormId; 5] = [
        MixedFormId::X2ThreeY2T,
        MixedFormId::X2ThreeTT,
        MixedFormId::X2SixTT,
        MixedFormId::ThreeX2TwoTT,
        MixedFormId::FourX2TwoTT,
    ];

    /// Shell-safe ASCII name, e.g. `4x2+2t+t`.
    pub const fn name(self) -> &'static str {
        match self {
            MixedFormId::X2ThreeY2T => "x2+3y2+t",
            MixedFormId::X2ThreeTT => "x2+3t+t",
            MixedFormId::X2SixTT => "x2+6t+t",
            MixedFormId::ThreeX2TwoTT => "3x2+2t+t",
            MixedFormId::FourX2TwoTT => "4x2+2t+t",
        }
    }

    pub fn spec(self) -> FormSpec {
        let f = match self {
            MixedFormId::X2ThreeY2T => FormSpec::sq_sq_tri(1, 3, 1),
            MixedFormId::X2ThreeTT => FormSpec::sq_tri_tri(1, 3, 1),
            MixedFormId::X2SixTT => FormSpec::sq_tri_tri(1, 6, 1),
            MixedFormId::ThreeX2TwoTT => FormSpec::sq_tri_tri(3, 2, 1),
            MixedFormId::FourX2TwoTT => FormSpec::sq_tri_tri(4, 2, 1),
        };
        f.expect("coefficients are positive")
    }

    pub fn evaluate(self, x: i64, y: i64, z: i64) -> Result<u64> {
        self.spec().evaluate(x, y, z)
    }
}

impl fmt::Display for MixedFormId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for MixedFormId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        MixedFormId::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| {
                let names: Vec<_> = MixedFormId::ALL.iter().map(|f| f.name()).collect();
                Error::Domain(format!("unknown form {s:?}; expected one of {}", names.join(", ")))
            })
    }
}

impl From<MixedFormId> for &'static str {
    fn from(f: MixedFormId) -> Self {
        f.name()
    }
}

impl TryFrom<String> for MixedFormId {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

/// `n = form(x, y, z)`, checkable with one evaluation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Certificate {
    pub form: MixedFormId,
    pub n: u64,
    pub x: i64,
    pub y: i64,
    pub z: i64,
}

impl Certificate {
    pub fn verify(&self) -> Result<bool> {
        verify(self)
    }
}

pub fn verify(c: &Certificate) -> Result<bool> {
    Ok(c.form.evaluate(c.x, c.y, c.z)? == c.n)
}

/// Selects which of the three `24n + 3 + 6ε` constructions to run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Epsilon {
    Zero,
    One,
    Three,
}

impl Epsilon {
    pub const fn value(self) -> u8 {
        match self {
            Epsilon::Zero => 0,
            Epsilon::One => 1,
            Epsilon::Three => 3,
        }
    }

    pub const fn form(self) -> MixedFormId {
        match self {
            Epsilon::Zero => MixedFormId::X2ThreeY2T,
            Epsilon::One => MixedFormId::ThreeX2TwoTT,
            Epsilon::Three => MixedFormId::X2SixTT,
        }
    }
}

impl TryFrom<u8> for Epsilon {
    type Error = Error;

    fn try_from(v: u8) -> Result<Self> {
        match v {
            0 => Ok(Epsilon::Zero),
            1 => Ok(Epsilon::One),
            3 => Ok(Epsilon::Three),
            _ => Err(Error::Domain(format!("epsilon must be 0, 1 or 3, got {v}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ParityPattern {
    AllOdd,
    TwoOddOneEven,
    TwoEvenOneOdd,
    AllEven,
}

impl ParityPattern {
    fn of(t: &[i64; 3]) -> Self {
        match t.iter().filter(|v| *v % 2 != 0).count() {
            3 => ParityPattern::AllOdd,
            2 => ParityPattern::TwoOddOneEven,
            1 => ParityPattern::TwoEvenOneOdd,
            _ => ParityPattern::AllEven,
        }
    }
}

/// The signed, relabelled triple a construction divides down, together
/// with the congruence facts established for it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct NormalizedTriple {
    pub x: i64,
    pub y: i64,
    pub z: i64,
    /// Common residue mod 3 (0 or 1) once signs are aligned; `None` for the
    /// `4x²+2t+t` construction, which does not use alignment.
    pub mod3_residue: Option<u8>,
    pub parity: ParityPattern,
    pub eps: Option<Epsilon>,
}

/// Full audit trail of one construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Derivation {
    pub form: MixedFormId,
    pub n: u64,
    /// The number written as a sum of three squares.
    pub target: u64,
    pub squares: ThreeSquareRep,
    pub normalized: NormalizedTriple,
    pub certificate: Certificate,
}

struct Steps {
    n: u64,
}

impl Steps {
    fn ensure(&self, ok: bool, what: impl FnOnce() -> String) -> Result<()> {
        if ok {
            Ok(())
        } else {
            Err(Error::ProofStep { n: self.n, what: what() })
        }
    }

    fn residue(&self, value: i64, modulus: i64, want: i64, label: &str) -> Result<()> {
        let got = value.rem_euclid(modulus);
        self.ensure(got == want, || {
            format!("{label} = {value} ≡ {got} (mod {modulus}), expected {want}")
        })
    }

    fn div(&self, num: i64, den: i64, label: &str) -> Result<i64> {
        self.ensure(num % den == 0, || format!("{label}: {num} is not divisible by {den}"))?;
        Ok(num / den)
    }

    fn squares(&self, target: u64) -> Result<ThreeSquareRep> {
        three_squares(target).map_err(|e| Error::ProofStep {
            n: self.n,
            what: format!("three-square decomposition of {target}: {e}"),
        })
    }

    fn aligned(&self, rep: &ThreeSquareRep) -> Result<[i64; 3]> {
        let t = SignedTriple::new(rep.x as i64, rep.y as i64, rep.z as i64);
        let a = align_mod3(t).map_err(|e| Error::ProofStep { n: self.n, what: e.to_string() })?;
        Ok(a.as_array())
    }

    /// Re-checks `3·target = s² + 2u² + 6v²` for the arranged triple.
    fn jacobi(&self, t: [i64; 3], target: u64) -> Result<()> {
        let img = jacobi_transform(t.into())
            .map_err(|e| Error::ProofStep { n: self.n, what: e.to_string() })?;
        self.ensure(img.weighted_norm() == 3 * i128::from(target), || {
            format!("Jacobi identity fails for {t:?}")
        })
    }

    fn finish(&self, cert: Certificate) -> Result<Certificate> {
        let value = cert.form.evaluate(cert.x, cert.y, cert.z)?;
        self.ensure(value == cert.n, || format!("certificate {cert:?} evaluates to {value}"))?;
        Ok(cert)
    }
}

/// First pair of positions (in the order (0,1), (0,2), (1,2)) whose values
/// agree modulo `modulus`, returned as `[i, j, remaining]`.
fn congruent_pair(t: &[i64; 3], modulus: i64) -> Option<[usize; 3]> {
    [[0, 1, 2], [0, 2, 1], [1, 2, 0]]
        .into_iter()
        .find(|&[i, j, _]| (t[i] - t[j]).rem_euclid(modulus) == 0)
}

/// Moves the element at `idx` to position `to`, keeping the others in their
/// original relative order.
fn place(t: [i64; 3], idx: usize, to: usize) -> [i64; 3] {
    let mut rest = t.iter().enumerate().filter(|&(i, _)| i != idx).map(|(_, &v)| v);
    let mut out = [0; 3];
    for (pos, slot) in out.iter_mut().enumerate() {
        *slot = if pos == to { t[idx] } else { rest.next().expect("two remaining") };
    }
    out
}

fn derive_four_x2(n: u64) -> Result<Derivation> {
    let steps = Steps { n };
    let target = 8 * n + 3;
    let squares = steps.squares(target)?;

    // 8n+3 ≡ 3 (mod 8) forces every component odd; flip to ≡ 1 (mod 4)
    let mut c = [squares.x, squares.y, squares.z].map(|v| {
        let v = v as i64;
        if v.rem_euclid(4) == 3 {
            -v
        } else {
            v
        }
    });
    for v in c {
        steps.residue(v, 4, 1, "component")?;
    }
    c.sort_unstable();
    let [i, j, k] = congruent_pair(&c, 8).ok_or_else(|| Error::ProofStep {
        n,
        what: format!("no pair of {c:?} is congruent mod 8"),
    })?;
    let (x, y, z) = (c[i], c[j], c[k]);
    steps.residue(x - y, 8, 0, "x - y")?;

    let x0 = steps.div(x - y, 8, "(x-y)/8")?;
    let y0 = steps.div(x + y - 2, 4, "(x+y-2)/4")?;
    let z0 = steps.div(z - 1, 2, "(z-1)/2")?;
    let certificate = steps.finish(Certificate { form: MixedFormId::FourX2TwoTT, n, x: x0, y: y0, z: z0 })?;
    Ok(Derivation {
        form: MixedFormId::FourX2TwoTT,
        n,
        target,
        squares,
        normalized: NormalizedTriple {
            x,
            y,
            z,
            mod3_residue: None,
            parity: ParityPattern::AllOdd,
            eps: None,
        },
        certificate,
    })
}

fn derive_x2_3t_t(n: u64) -> Result<Derivation> {
    let steps = Steps { n };
    let target = 48 * n + 24;
    let squares = steps.squares(target)?;
    let aligned = steps.aligned(&squares)?;

    // sum ≡ 8 (mod 16): all even, exactly one divisible by 4
    for v in aligned {
        steps.residue(v, 2, 0, "component")?;
    }
    let quads: Vec<usize> = (0..3).filter(|&i| aligned[i].rem_euclid(4) == 0).collect();
    steps.ensure(quads.len() == 1, || format!("{aligned:?} must have exactly one multiple of 4"))?;
    let t = place(aligned, quads[0], 0);
    let [x, y, z] = t;
    steps.residue(y, 4, 2, "y")?;
    steps.residue(z, 4, 2, "z")?;

    steps.residue(x + y + z, 12, 0, "x+y+z")?;
    steps.residue(x + y - 2 * z, 12, 6, "x+y-2z")?;
    steps.residue(x - y, 12, 6, "x-y")?;
    steps.jacobi(t, target)?;

    let x0 = steps.div(x + y + z, 12, "(x+y+z)/12")?;
    let y0 = steps.div(x + y - 2 * z - 6, 12, "(x+y-2z-6)/12")?;
    let z0 = steps.div(x - y - 6, 12, "(x-y-6)/12")?;
    // n = x0² + t_{y0} + 3t_{z0}; the form's 3t slot comes second
    let certificate = steps.finish(Certificate { form: MixedFormId::X2ThreeTT, n, x: x0, y: z0, z: y0 })?;
    Ok(Derivation {
        form: MixedFormId::X2ThreeTT,
        n,
        target,
        squares,
        normalized: NormalizedTriple {
            x,
            y,
            z,
            mod3_residue: Some(x.rem_euclid(3) as u8),
            parity: ParityPattern::AllEven,
            eps: None,
        },
        certificate,
    })
}

fn derive_eps(n: u64, eps: Epsilon) -> Result<Derivation> {
    let steps = Steps { n };
    let target = 24 * n + 3 + 6 * u64::from(eps.value());
    let squares = steps.squares(target)?;
    let aligned = steps.aligned(&squares)?;
    let parity = ParityPattern::of(&aligned);
    let odd: Vec<usize> = (0..3).filter(|&i| aligned[i] % 2 != 0).collect();

    let t = match eps {
        Epsilon::Zero => {
            steps.ensure(odd.len() == 3, || format!("{aligned:?} must be all odd"))?;
            let [i, j, k] = congruent_pair(&aligned, 4).ok_or_else(|| Error::ProofStep {
                n,
                what: format!("no pair of {aligned:?} is congruent mod 4"),
            })?;
            [aligned[i], aligned[j], aligned[k]]
        }
        Epsilon::One => {
            steps.ensure(odd.len() == 1, || format!("{aligned:?} must have exactly one odd entry"))?;
            let t = place(aligned, odd[0], 2);
            steps.residue(t[0] - t[1], 4, 0, "x-y")?;
            t
        }
        Epsilon::Three => {
            steps.ensure(odd.len() == 1, || format!("{aligned:?} must have exactly one odd entry"))?;
            let t = place(aligned, odd[0], 2);
            let t = if t[0].rem_euclid(4) == 0 { [t[1], t[0], t[2]] } else { t };
            steps.residue(t[0], 4, 2, "x")?;
            steps.residue(t[1], 4, 0, "y")?;
            t
        }
    };
    let [x, y, z] = t;

    let (diag, diff) = match eps {
        Epsilon::Zero => (0, 0),
        Epsilon::One => (6, 0),
        Epsilon::Three => (0, 6),
    };
    steps.residue(x + y + z, 6, 3, "x+y+z")?;
    steps.residue(x + y - 2 * z, 12, diag, "x+y-2z")?;
    steps.residue(x - y, 12, diff, "x-y")?;
    steps.jacobi(t, target)?;

    let (x0, y0) = match eps {
        Epsilon::Zero => (
            steps.div(x + y - 2 * z, 12, "(x+y-2z)/12")?,
            steps.div(x - y, 12, "(x-y)/12")?,
        ),
        Epsilon::One => (
            steps.div(x - y, 12, "(x-y)/12")?,
            steps.div(x + y - 2 * z - 6, 12, "(x+y-2z-6)/12")?,
        ),
        Epsilon::Three => (
            steps.div(x + y - 2 * z, 12, "(x+y-2z)/12")?,
            steps.div(x - y - 6, 12, "(x-y-6)/12")?,
        ),
    };
    let z0 = steps.div(x + y + z - 3, 6, "(x+y+z-3)/6")?;
    let certificate = steps.finish(Certificate { form: eps.form(), n, x: x0, y: y0, z: z0 })?;
    Ok(Derivation {
        form: eps.form(),
        n,
        target,
        squares,
        normalized: NormalizedTriple {
            x,
            y,
            z,
            mod3_residue: Some(x.rem_euclid(3) as u8),
            parity,
            eps: Some(eps),
        },
        certificate,
    })
}

/// Runs the construction for `form` and returns its full trail.
pub fn derive(form: MixedFormId, n: u64) -> Result<Derivation> {
    check_ceiling(n)?;
    match form {
        MixedFormId::FourX2TwoTT => derive_four_x2(n),
        MixedFormId::X2ThreeTT => derive_x2_3t_t(n),
        MixedFormId::X2ThreeY2T => derive_eps(n, Epsilon::Zero),
        MixedFormId::ThreeX2TwoTT => derive_eps(n, Epsilon::One),
        MixedFormId::X2SixTT => derive_eps(n, Epsilon::Three),
    }
}

pub fn represent(form: MixedFormId, n: u64) -> Result<Certificate> {
    derive(form, n).map(|d| d.certificate)
}

/// `n = 4x² + 2t_y + t_z` from `8n + 3 = x² + y² + z²`.
pub fn rep_4x2_2t_t(n: u64) -> Result<Certificate> {
    represent(MixedFormId::FourX2TwoTT, n)
}

/// `n = x² + 3t_y + t_z` from `12(4n + 2) = x² + y² + z²`.
pub fn rep_x2_3t_t(n: u64) -> Result<Certificate> {
    represent(MixedFormId::X2ThreeTT, n)
}

/// The `24n + 3 + 6ε` family: ε = 0, 1, 3 give `x²+3y²+t_z`,
/// `3x²+2t_y+t_z` and `x²+6t_y+t_z` respectively.
pub fn rep_eps(n: u64, eps: u8) -> Result<Certificate> {
    let eps = Epsilon::try_from(eps)?;
    represent(eps.form(), n)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xyz(c: Certificate) -> (i64, i64, i64) {
        (c.x, c.y, c.z)
    }

    #[test]
    fn names_round_trip() {
        for f in MixedFormId::ALL {
            assert_eq!(f.name().parse::<MixedFormId>().unwrap(), f);
        }
        assert!(matches!("bogus".parse::<MixedFormId>(), Err(Error::Domain(_))));
    }

    #[test]
    fn four_x2_examples() {
        assert_eq!(xyz(rep_4x2_2t_t(0).unwrap()), (0, 0, 0));

        let d = derive(MixedFormId::FourX2TwoTT, 2).unwrap();
        assert_eq!(d.target, 19);
        assert_eq!((d.normalized.x, d.normalized.y), (-3, -3));
        assert_eq!(xyz(d.certificate), (0, -2, 0));

        let d = derive(MixedFormId::FourX2TwoTT, 1).unwrap();
        assert_eq!([d.squares.x, d.squares.y, d.squares.z], [3, 1, 1]);
        assert_eq!((d.normalized.x, d.normalized.y, d.normalized.z), (1, 1, -3));
        assert_eq!(xyz(d.certificate), (0, 0, -2));
    }

    #[test]
    fn x2_3t_t_examples() {
        let d = derive(MixedFormId::X2ThreeTT, 0).unwrap();
        assert_eq!((d.normalized.x, d.normalized.y, d.normalized.z), (4, -2, -2));
        assert_eq!(xyz(d.certificate), (0, 0, 0));

        let d = derive(MixedFormId::X2ThreeTT, 1).unwrap();
        assert_eq!(d.target, 72);
        assert_eq!((d.normalized.x, d.normalized.y, d.normalized.z), (-8, -2, -2));
        assert_eq!(xyz(d.certificate), (-1, -1, -1));

        let c = rep_x2_3t_t(25).unwrap();
        assert_eq!(derive(MixedFormId::X2ThreeTT, 25).unwrap().target, 1224);
        assert!(c.verify().unwrap());
    }

    #[test]
    fn eps_examples() {
        assert_eq!(xyz(rep_eps(0, 0).unwrap()), (0, 0, 0));

        let d = derive(MixedFormId::ThreeX2TwoTT, 1).unwrap();
        assert_eq!(d.target, 33);
        assert_eq!((d.normalized.x, d.normalized.y, d.normalized.z), (-2, -2, -5));
        assert_eq!(xyz(d.certificate), (0, 0, -2));
        assert_eq!(rep_eps(1, 1).unwrap(), d.certificate);

        let d = derive(MixedFormId::X2SixTT, 1).unwrap();
        assert_eq!(d.target, 45);
        assert_eq!((d.normalized.x, d.normalized.y, d.normalized.z), (6, 0, 3));
        assert_eq!(xyz(d.certificate), (0, 0, 1));

        assert!(matches!(rep_eps(1, 2), Err(Error::Domain(_))));
    }

    #[test]
    fn represent_examples() {
        let c = represent(MixedFormId::FourX2TwoTT, 0).unwrap();
        assert_eq!(c.form.evaluate(c.x, c.y, c.z).unwrap(), 0);
        let c = represent(MixedFormId::X2ThreeY2T, 1).unwrap();
        assert!(c.verify().unwrap());
        let c = represent(MixedFormId::X2SixTT, 10_000).unwrap();
        assert_eq!(c.n, 10_000);
        assert!(c.verify().unwrap());
    }

    #[test]
    fn verify_examples() {
        let c = Certificate { form: MixedFormId::FourX2TwoTT, n: 2, x: 0, y: -2, z: 0 };
        assert_eq!(verify(&c), Ok(true));
        let c = Certificate { form: MixedFormId::X2ThreeY2T, n: 1, x: 1, y: 0, z: 0 };
        assert_eq!(verify(&c), Ok(true));
        let c = Certificate { form: MixedFormId::X2ThreeY2T, n: 2, x: 1, y: 0, z: 0 };
        assert_eq!(verify(&c), Ok(false));
        let c = Certificate { form: MixedFormId::X2SixTT, n: 2, x: i64::MAX, y: 0, z: 0 };
        assert!(matches!(verify(&c), Err(Error::Width(_))));
    }

    #[test]
    fn width_ceiling() {
        for f in MixedFormId::ALL {
            assert!(matches!(represent(f, crate::MAX_N + 1), Err(Error::Width(_))));
            let c = represent(f, crate::MAX_N).unwrap();
            assert!(c.verify().unwrap());
        }
    }

    #[test]
    fn all_forms_small_range() {
        for n in 0..=20_000 {
            for f in MixedFormId::ALL {
                let c = represent(f, n).unwrap();
                assert!(c.verify().unwrap(), "{c:?}");
            }
        }
    }

    #[test]
    fn place_keeps_relative_order() {
        assert_eq!(place([1, 2, 3], 2, 0), [3, 1, 2]);
        assert_eq!(place([1, 2, 3], 0, 2), [2, 3, 1]);
        assert_eq!(place([1, 2, 3], 1, 1), [1, 2, 3]);
    }

    #[test]
    fn certificate_json_shape() {
        let c = rep_4x2_2t_t(2).unwrap();
        let s = serde_json::to_string(&c).unwrap();
        assert_eq!(s, r#"{"form":"4x2+2t+t","n":2,"x":0,"y":-2,"z":0}"#);
        let back: Certificate = serde_json::from_str(&s).unwrap();
        assert_eq!(back, c);
        assert!(serde_json::from_str::<Certificate>(r#"{"form":"nope","n":2,"x":0,"y":-2,"z":0}"#).is_err());
    }
}
