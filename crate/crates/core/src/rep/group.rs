//! Group descriptors, standard forms and Lie algebra bases.

use std::fmt;

use serde::de::{self, Deserializer};
use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::linalg::{Mat, Scalar};

/// Which classical group.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Gl,
    Sp,
    Oodd,
    Oeven,
    Gram,
}

impl Kind {
    pub fn name(self) -> &'static str {
        match self {
            Kind::Gl => "gl",
            Kind::Sp => "sp",
            Kind::Oodd => "oodd",
            Kind::Oeven => "oeven",
            Kind::Gram => "gram",
        }
    }

    pub fn parse(s: &str) -> Result<Kind> {
        match s.to_ascii_lowercase().as_str() {
            "gl" => Ok(Kind::Gl),
            "sp" => Ok(Kind::Sp),
            "oodd" => Ok(Kind::Oodd),
            "oeven" => Ok(Kind::Oeven),
            "gram" => Ok(Kind::Gram),
            other => Err(Error::Parse(format!("unknown group kind {other:?}"))),
        }
    }

    /// The four standard kinds.
    pub const STANDARD: [Kind; 4] = [Kind::Gl, Kind::Sp, Kind::Oodd, Kind::Oeven];
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Type of the invariant theory attached to a descriptor.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    Linear,
    Symplectic,
    OddOrthogonal,
    EvenOrthogonal,
}

impl Family {
    /// The standard kind with the same invariant theory.
    pub fn kind(self) -> Kind {
        match self {
            Family::Linear => Kind::Gl,
            Family::Symplectic => Kind::Sp,
            Family::OddOrthogonal => Kind::Oodd,
            Family::EvenOrthogonal => Kind::Oeven,
        }
    }
}

/// Whether a Gram matrix is symmetric or alternating.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Symmetry {
    Symmetric,
    Antisymmetric,
}

/// A classical group, or the isometry group of an explicit Gram matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Group {
    kind: Kind,
    rank: usize,
    form: Option<Mat>,
    form_inv: Option<Mat>,
    symmetry: Option<Symmetry>,
}

impl Group {
    pub fn gl(n: usize) -> Group {
        Group {
            kind: Kind::Gl,
            rank: n,
            form: None,
            form_inv: None,
            symmetry: None,
        }
    }

    pub fn sp(n: usize) -> Group {
        Group::standard(Kind::Sp, n)
    }

    pub fn oodd(n: usize) -> Group {
        Group::standard(Kind::Oodd, n)
    }

    pub fn oeven(n: usize) -> Group {
        Group::standard(Kind::Oeven, n)
    }

    /// Standard group of a given kind; panics for `Kind::Gram`.
    pub fn standard(kind: Kind, n: usize) -> Group {
        let (form, symmetry) = match kind {
            Kind::Gl => return Group::gl(n),
            Kind::Sp => (beta(n), Symmetry::Antisymmetric),
            Kind::Oodd => (alpha(2 * n + 1), Symmetry::Symmetric),
            Kind::Oeven => (alpha(2 * n), Symmetry::Symmetric),
            Kind::Gram => panic!("Gram descriptors need an explicit matrix"),
        };
        // alpha and beta are their own inverses up to sign
        let form_inv = match symmetry {
            Symmetry::Symmetric => form.clone(),
            Symmetry::Antisymmetric => -&form,
        };
        Group {
            kind,
            rank: n,
            form: Some(form),
            form_inv: Some(form_inv),
            symmetry: Some(symmetry),
        }
    }

    /// Isometry group of an invertible symmetric or antisymmetric Gram matrix.
    pub fn gram(b: Mat, symmetry: Symmetry) -> Result<Group> {
        if !b.is_square() {
            return Err(Error::Shape("Gram matrix must be square".into()));
        }
        if b.radicand()?.is_some() {
            return Err(Error::Unsupported("Gram matrix must be rational".into()));
        }
        let t = b.transpose();
        let ok = match symmetry {
            Symmetry::Symmetric => t == b,
            Symmetry::Antisymmetric => t == -&b,
        };
        if !ok {
            return Err(Error::Parse(
                format!("Gram matrix is not {symmetry:?}").to_lowercase(),
            ));
        }
        let inv = b.inverse()?;
        let m = b.rows();
        Ok(Group {
            kind: Kind::Gram,
            rank: m / 2,
            form: Some(b),
            form_inv: Some(inv),
            symmetry: Some(symmetry),
        })
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn symmetry(&self) -> Option<Symmetry> {
        self.symmetry
    }

    /// Matrix size `m` of the natural module.
    pub fn size(&self) -> usize {
        match self.kind {
            Kind::Gl => self.rank,
            Kind::Sp | Kind::Oeven => 2 * self.rank,
            Kind::Oodd => 2 * self.rank + 1,
            Kind::Gram => self.form.as_ref().map_or(0, Mat::rows),
        }
    }

    pub fn family(&self) -> Family {
        match (self.kind, self.symmetry) {
            (Kind::Gl, _) => Family::Linear,
            (_, Some(Symmetry::Antisymmetric)) => Family::Symplectic,
            _ if self.size() % 2 == 1 => Family::OddOrthogonal,
            _ => Family::EvenOrthogonal,
        }
    }

    pub fn is_orthogonal(&self) -> bool {
        self.symmetry == Some(Symmetry::Symmetric)
    }

    /// Dimension of the group.
    pub fn dim(&self) -> usize {
        let m = self.size();
        match self.symmetry {
            None => m * m,
            Some(Symmetry::Symmetric) => m * m.saturating_sub(1) / 2,
            Some(Symmetry::Antisymmetric) => m * (m + 1) / 2,
        }
    }

    /// Dimension of the module `E`.
    pub fn module_dim(&self) -> usize {
        match self.kind {
            Kind::Gl => 2 * self.rank,
            _ => self.size(),
        }
    }

    /// The Gram matrix of the invariant form.
    pub fn form(&self) -> Result<&Mat> {
        self.form.as_ref().ok_or(Error::NoForm)
    }

    pub fn form_inverse(&self) -> Result<&Mat> {
        self.form_inv.as_ref().ok_or(Error::NoForm)
    }

    pub fn in_lie_algebra(&self, x: &Mat) -> Result<bool> {
        let m = self.size();
        if x.rows() != m || x.cols() != m {
            return Err(Error::Shape(format!(
                "expected {m}x{m}, got {}x{}",
                x.rows(),
                x.cols()
            )));
        }
        let Some(b) = &self.form else {
            return Ok(true);
        };
        Ok((&(&x.transpose() * b) + &(b * x)).is_zero())
    }

    /// A basis of the Lie algebra: unit matrices for `gl`, `B⁻¹S` otherwise
    /// with `S` running over a basis of the complementary symmetry class.
    pub fn lie_algebra_basis(&self) -> Vec<Mat> {
        let m = self.size();
        let (Some(inv), Some(sym)) = (&self.form_inv, self.symmetry) else {
            let mut out = Vec::with_capacity(m * m);
            for i in 0..m {
                for j in 0..m {
                    out.push(Mat::unit(i, j, m));
                }
            }
            return out;
        };
        let mut out = Vec::with_capacity(self.dim());
        for i in 0..m {
            for j in i..m {
                let mut s = Mat::zeros(m, m);
                match sym {
                    Symmetry::Symmetric => {
                        if i == j {
                            continue;
                        }
                        s[(i, j)] = Scalar::one();
                        s[(j, i)] = Scalar::from_int(-1);
                    }
                    Symmetry::Antisymmetric => {
                        s[(i, j)] = Scalar::one();
                        s[(j, i)] = Scalar::one();
                    }
                }
                out.push(inv * &s);
            }
        }
        out
    }
}

impl fmt::Display for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.rank;
        match self.kind {
            Kind::Gl => write!(f, "GL_{n}"),
            Kind::Sp => write!(f, "Sp_{}", 2 * n),
            Kind::Oodd => write!(f, "O_{}", 2 * n + 1),
            Kind::Oeven => write!(f, "O_{}", 2 * n),
            Kind::Gram => write!(
                f,
                "Isom({}x{} {:?} form)",
                self.size(),
                self.size(),
                self.symmetry.unwrap()
            ),
        }
    }
}

/// The split symmetric form: hyperbolic pairs, plus a leading `1` in odd size.
pub fn alpha(m: usize) -> Mat {
    let mut b = Mat::zeros(m, m);
    let off = m % 2;
    let h = m / 2;
    if off == 1 {
        b[(0, 0)] = Scalar::one();
    }
    for i in 0..h {
        b[(off + i, off + h + i)] = Scalar::one();
        b[(off + h + i, off + i)] = Scalar::one();
    }
    b
}

/// The standard alternating form `[[0, I], [-I, 0]]`.
pub fn beta(n: usize) -> Mat {
    let mut b = Mat::zeros(2 * n, 2 * n);
    for i in 0..n {
        b[(i, n + i)] = Scalar::one();
        b[(n + i, i)] = Scalar::from_int(-1);
    }
    b
}

/// `diag(I_n, -I_n)`, the twisting element for the symplectic extension.
pub fn twist(n: usize) -> Mat {
    let mut d = vec![Scalar::one(); n];
    d.extend(vec![Scalar::from_int(-1); n]);
    Mat::diag(&d)
}

/// The Gram matrix of the invariant form; fails for `gl`.
pub fn standard_form(group: &Group) -> Result<Mat> {
    group.form().cloned()
}

#[derive(Serialize, Deserialize)]
struct GroupWire {
    kind: Kind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    rank: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    gram: Option<Mat>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    symmetry: Option<Symmetry>,
}

impl Serialize for Group {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let wire = match self.kind {
            Kind::Gram => GroupWire {
                kind: Kind::Gram,
                rank: None,
                gram: self.form.clone(),
                symmetry: self.symmetry,
            },
            kind => GroupWire {
                kind,
                rank: Some(self.rank),
                gram: None,
                symmetry: None,
            },
        };
        wire.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Group {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Group, D::Error> {
        let wire = GroupWire::deserialize(deserializer)?;
        match wire.kind {
            Kind::Gram => {
                let b = wire.gram.ok_or_else(|| de::Error::missing_field("gram"))?;
                let sym = wire
                    .symmetry
                    .ok_or_else(|| de::Error::missing_field("symmetry"))?;
                Group::gram(b, sym).map_err(de::Error::custom)
            }
            kind => {
                let n = wire.rank.ok_or_else(|| de::Error::missing_field("rank"))?;
                Ok(Group::standard(kind, n))
            }
        }
    }
}
