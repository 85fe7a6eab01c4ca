//! Exact JSON forms for scalars, tabloids and matrices.

use qweb::combinat::Composition;
use qweb::psi::MorphismMatrix;
use qweb::scalar::GaussianRational;
use qweb::tabloid::OmegaTabloid;
use serde::{Deserialize, Serialize};

/// `p/q` for real scalars, `p/q+s/t i` otherwise.
pub fn scalar_to_string(c: &GaussianRational) -> String {
    if c.is_real() {
        return c.re.to_string();
    }
    let im = &c.im;
    if c.re == 0 {
        format!("{im} i")
    } else if *im > 0 {
        format!("{}+{im} i", c.re)
    } else {
        format!("{}{im} i", c.re)
    }
}

pub fn scalar_from_string(s: &str) -> Result<GaussianRational, qweb::Error> {
    s.parse()
}

/// Rows of signed letters; negative entries are primed.
pub fn tabloid_rows(t: &OmegaTabloid) -> Vec<Vec<i32>> {
    t.to_supertabloid().signed_rows()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub domain: Vec<usize>,
    pub codomain: Vec<usize>,
    pub domain_basis: Vec<Vec<Vec<i32>>>,
    pub codomain_basis: Vec<Vec<Vec<i32>>>,
    /// `[row, col, scalar]` with rows indexing `codomain_basis`.
    pub entries: Vec<(usize, usize, String)>,
    pub parity: Option<String>,
}

impl MatrixJson {
    pub fn from_matrix(m: &MorphismMatrix) -> Self {
        Self {
            domain: m.domain().parts.clone(),
            codomain: m.codomain().parts.clone(),
            domain_basis: m.domain_basis().tabloids.iter().map(tabloid_rows).collect(),
            codomain_basis: m.codomain_basis().tabloids.iter().map(tabloid_rows).collect(),
            entries: m.triplets().into_iter().map(|(r, c, x)| (r, c, scalar_to_string(&x))).collect(),
            parity: m.parity().map(|p| p.to_string()),
        }
    }

    /// Rebuilds the matrix. The stored bases must agree with the canonical ones.
    pub fn to_matrix(&self) -> Result<MorphismMatrix, qweb::Error> {
        let dom = Composition::new(self.domain.clone());
        let cod = Composition::new(self.codomain.clone());
        let entries = self
            .entries
            .iter()
            .map(|(r, c, x)| Ok((*r, *c, scalar_from_string(x)?)))
            .collect::<Result<Vec<_>, qweb::Error>>()?;
        let m = MorphismMatrix::from_triplets(&dom, &cod, &entries)?;
        let same = |stored: &[Vec<Vec<i32>>], basis: &[OmegaTabloid]| {
            stored.len() == basis.len() && stored.iter().zip(basis).all(|(s, t)| *s == tabloid_rows(t))
        };
        if !same(&self.domain_basis, &m.domain_basis().tabloids) || !same(&self.codomain_basis, &m.codomain_basis().tabloids)
        {
            return Err(qweb::Error::Parse("stored basis order differs from the canonical one".into()));
        }
        Ok(m)
    }
}

/// One hom-space basis element as written by `basis --json`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BasisItemJson {
    pub tabloid: Vec<Vec<i32>>,
    pub word: String,
    pub parity: String,
    pub script: String,
    pub matrix: MatrixJson,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BasisJson {
    pub lambda: Vec<usize>,
    pub mu: Vec<usize>,
    pub size: usize,
    pub items: Vec<BasisItemJson>,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scalar_forms() {
        let cases = [
            (GaussianRational::ratio(-3, 4), "-3/4"),
            (GaussianRational::from_int(2), "2"),
            (GaussianRational::i(), "1 i"),
            (GaussianRational::gaussian(1, -2), "1-2 i"),
            (GaussianRational::new(GaussianRational::ratio(1, 2).re, GaussianRational::ratio(5, 3).re), "1/2+5/3 i"),
        ];
        for (c, s) in cases {
            assert_eq!(scalar_to_string(&c), s);
            assert_eq!(scalar_from_string(s).unwrap(), c);
        }
    }
}
