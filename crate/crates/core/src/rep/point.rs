//! Points of `g × E` and the action of the extended group on them.

use std::fmt;

use serde::de::{self, Deserializer};
use serde::{Deserialize, Serialize, Serializer};

use super::group::{Group, Kind};
use crate::error::{Error, Result};
use crate::linalg::scalar::common_radicand;
use crate::linalg::{dot, Mat, Scalar};

/// A point `(X, u)`, or `(X, u, v)` for the general linear group.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EnhancedPoint {
    group: Group,
    x: Mat,
    u: Vec<Scalar>,
    v: Option<Vec<Scalar>>,
}

impl EnhancedPoint {
    pub fn new(
        group: Group,
        x: Mat,
        u: Vec<Scalar>,
        v: Option<Vec<Scalar>>,
    ) -> Result<EnhancedPoint> {
        let m = group.size();
        if u.len() != m {
            return Err(Error::Shape(format!(
                "u has length {}, expected {m}",
                u.len()
            )));
        }
        match (&v, group.kind()) {
            (None, Kind::Gl) => return Err(Error::Shape("GL points need a row vector v".into())),
            (Some(v), Kind::Gl) if v.len() != m => {
                return Err(Error::Shape(format!(
                    "v has length {}, expected {m}",
                    v.len()
                )))
            }
            (Some(_), k) if k != Kind::Gl => {
                return Err(Error::Shape("v is only present for GL".into()))
            }
            _ => {}
        }
        if !group.in_lie_algebra(&x)? {
            return Err(Error::NotInLieAlgebra);
        }
        common_radicand(x.entries().iter().chain(&u).chain(v.iter().flatten()))?;
        Ok(EnhancedPoint { group, x, u, v })
    }

    pub(crate) fn new_unchecked(
        group: Group,
        x: Mat,
        u: Vec<Scalar>,
        v: Option<Vec<Scalar>>,
    ) -> EnhancedPoint {
        EnhancedPoint { group, x, u, v }
    }

    /// The origin `(0, 0[, 0])`.
    pub fn zero(group: &Group) -> EnhancedPoint {
        let m = group.size();
        let v = (group.kind() == Kind::Gl).then(|| vec![Scalar::zero(); m]);
        EnhancedPoint {
            group: group.clone(),
            x: Mat::zeros(m, m),
            u: vec![Scalar::zero(); m],
            v,
        }
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn x(&self) -> &Mat {
        &self.x
    }

    pub fn u(&self) -> &[Scalar] {
        &self.u
    }

    pub fn v(&self) -> Option<&[Scalar]> {
        self.v.as_deref()
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero()
            && self.u.iter().all(Scalar::is_zero)
            && self.v.iter().flatten().all(Scalar::is_zero)
    }

    /// Whether `X` is nilpotent.
    pub fn is_nilpotent(&self) -> bool {
        self.x.pow(self.group.size()).is_zero()
    }
}

impl fmt::Display for EnhancedPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "group: {}", self.group)?;
        write!(f, "X =\n{}", self.x)?;
        let join = |v: &[Scalar]| {
            v.iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>()
                .join(", ")
        };
        writeln!(f, "u = ({})^t", join(&self.u))?;
        if let Some(v) = &self.v {
            writeln!(f, "v = ({})", join(v))?;
        }
        Ok(())
    }
}

/// Sign of an element of the extended group.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn times(self, other: Sign) -> Sign {
        if self == other {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

impl Serialize for Sign {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_i64(self.value())
    }
}

impl<'de> Deserialize<'de> for Sign {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Sign, D::Error> {
        match i64::deserialize(deserializer)? {
            1 => Ok(Sign::Plus),
            -1 => Ok(Sign::Minus),
            other => Err(de::Error::custom(format!(
                "delta must be 1 or -1, got {other}"
            ))),
        }
    }
}

/// An element `(g, δ)` of the extended group.
///
/// For groups with a form, `δ = -1` means `⟨gv, gw⟩ = ⟨w, v⟩`, i.e.
/// `gᵗBg = Bᵗ`; such elements act by `(X, u) ↦ (-gXg⁻¹, -gu)`.
/// For the general linear group `g` is any invertible matrix and
/// `(g, -1)` acts by `(X, u, v) ↦ (gXᵗg⁻¹, -gvᵗ, -uᵗg⁻¹)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MvwElement {
    pub g: Mat,
    pub delta: Sign,
}

impl MvwElement {
    pub fn new(g: Mat, delta: Sign) -> MvwElement {
        MvwElement { g, delta }
    }

    pub fn identity(group: &Group) -> MvwElement {
        MvwElement {
            g: Mat::identity(group.size()),
            delta: Sign::Plus,
        }
    }

    /// Group law: semidirect for GL, where `-1` acts by `g ↦ g⁻ᵗ`; the plain
    /// product of pairs otherwise.
    pub fn compose(&self, other: &MvwElement, group: &Group) -> Result<MvwElement> {
        let right = if group.kind() == Kind::Gl && self.delta == Sign::Minus {
            other.g.inverse()?.transpose()
        } else {
            other.g.clone()
        };
        Ok(MvwElement {
            g: &self.g * &right,
            delta: self.delta.times(other.delta),
        })
    }
}

/// Membership in the extended group.
pub fn in_group(e: &MvwElement, group: &Group) -> Result<bool> {
    let m = group.size();
    if e.g.rows() != m || e.g.cols() != m {
        return Err(Error::Shape(format!(
            "expected {m}x{m}, got {}x{}",
            e.g.rows(),
            e.g.cols()
        )));
    }
    let Ok(b) = group.form() else {
        return Ok(e.g.rank() == m);
    };
    let pulled = &(&e.g.transpose() * b) * &e.g;
    Ok(match e.delta {
        Sign::Plus => &pulled == b,
        Sign::Minus => pulled == b.transpose(),
    })
}

/// The action of `e` on `p`.
pub fn act(e: &MvwElement, p: &EnhancedPoint) -> Result<EnhancedPoint> {
    let group = &p.group;
    if !in_group(e, group)? {
        return Err(Error::NotInGroup);
    }
    let g = &e.g;
    let g_inv = g.inverse()?;
    let neg = |v: Vec<Scalar>| v.into_iter().map(|x| -x).collect::<Vec<_>>();
    let (x, u, v) = match (group.kind(), e.delta) {
        (Kind::Gl, Sign::Plus) => {
            let v = p.v.as_ref().expect("GL point carries v");
            (
                &(g * &p.x) * &g_inv,
                g.mul_vec(&p.u),
                Some(g_inv.vec_mul(v)),
            )
        }
        (Kind::Gl, Sign::Minus) => {
            let v = p.v.as_ref().expect("GL point carries v");
            let x = &(g * &p.x.transpose()) * &g_inv;
            (x, neg(g.mul_vec(v)), Some(neg(g_inv.vec_mul(&p.u))))
        }
        (_, Sign::Plus) => (&(g * &p.x) * &g_inv, g.mul_vec(&p.u), None),
        (_, Sign::Minus) => (-&(&(g * &p.x) * &g_inv), neg(g.mul_vec(&p.u)), None),
    };
    Ok(EnhancedPoint::new_unchecked(group.clone(), x, u, v))
}

/// `aᵗBb`.
pub fn form_pairing(group: &Group, a: &[Scalar], b: &[Scalar]) -> Result<Scalar> {
    let form = group.form()?;
    let m = group.size();
    if a.len() != m || b.len() != m {
        return Err(Error::Shape(format!("vectors must have length {m}")));
    }
    Ok(dot(a, &form.mul_vec(b)))
}

#[derive(Serialize, Deserialize)]
pub(crate) struct PointWire {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub group: Option<Group>,
    #[serde(rename = "X")]
    pub x: Mat,
    pub u: Vec<Scalar>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub v: Option<Vec<Scalar>>,
}

/// Point JSON whose group may be supplied separately.
#[derive(Clone, Debug, Deserialize)]
pub struct PointData {
    #[serde(default)]
    pub group: Option<Group>,
    #[serde(rename = "X")]
    pub x: Mat,
    pub u: Vec<Scalar>,
    #[serde(default)]
    pub v: Option<Vec<Scalar>>,
}

impl PointData {
    /// Validates the point against its embedded group, or `fallback` when absent.
    /// A group given both ways must agree.
    pub fn into_point(self, fallback: Option<&Group>) -> Result<EnhancedPoint> {
        let group = match (self.group, fallback) {
            (Some(g), Some(f)) if &g != f => {
                return Err(Error::DescriptorMismatch(format!(
                    "point is for {g}, flags say {f}"
                )))
            }
            (Some(g), _) => g,
            (None, Some(f)) => f.clone(),
            (None, None) => return Err(Error::Parse("point has no group".into())),
        };
        EnhancedPoint::new(group, self.x, self.u, self.v)
    }
}

impl Serialize for EnhancedPoint {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        PointWire {
            group: Some(self.group.clone()),
            x: self.x.clone(),
            u: self.u.clone(),
            v: self.v.clone(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for EnhancedPoint {
    fn deserialize<D: Deserializer<'de>>(
        deserializer: D,
    ) -> std::result::Result<EnhancedPoint, D::Error> {
        PointData::deserialize(deserializer)?
            .into_point(None)
            .map_err(de::Error::custom)
    }
}
