//! The hyperbolic plane, E8 twists, the Nikulin lattice, `Λ_g` and the
//! index-2 overlattices of `Z·C̃ ⊕ E8(-2)`.

use serde::{Deserialize, Serialize};

use super::{coordinate_gcd, determinant, DivisorClass, IntegralLattice};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum StandardLattice {
    U,
    E8Minus1,
    E8Minus2,
    Nikulin,
    LambdaG(usize),
}

impl std::str::FromStr for StandardLattice {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let lower = s.to_ascii_lowercase();
        match lower.as_str() {
            "u" => Ok(Self::U),
            "e8(-1)" | "e8-1" | "e8" => Ok(Self::E8Minus1),
            "e8(-2)" | "e8-2" => Ok(Self::E8Minus2),
            "nikulin" => Ok(Self::Nikulin),
            _ => lower
                .strip_prefix("lambda_")
                .or_else(|| lower.strip_prefix("lambda"))
                .and_then(|g| g.parse().ok())
                .map(Self::LambdaG)
                .ok_or_else(|| Error::InvalidLattice(format!("unknown lattice {s}"))),
        }
    }
}

/// Edges of the E8 Dynkin diagram on simple roots `a1..a8` (0-based):
/// the chain a1-a3-a4-a5-a6-a7-a8 with a2 attached to a4.
pub fn e8_cartan_edges() -> [(usize, usize); 7] {
    [(0, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7), (1, 3)]
}

fn e8_minus_one_gram() -> Vec<Vec<i64>> {
    let mut g = vec![vec![0i64; 8]; 8];
    for (i, row) in g.iter_mut().enumerate() {
        row[i] = -2;
    }
    for (i, j) in e8_cartan_edges() {
        g[i][j] = 1;
        g[j][i] = 1;
    }
    g
}

pub fn standard_lattice(which: StandardLattice) -> Result<IntegralLattice> {
    match which {
        StandardLattice::U => IntegralLattice::new("U", vec![vec![0, 1], vec![1, 0]], vec!["u1".into(), "u2".into()]),
        StandardLattice::E8Minus1 => {
            IntegralLattice::new("E8(-1)", e8_minus_one_gram(), IntegralLattice::numbered_labels("a", 8))
        }
        StandardLattice::E8Minus2 => {
            let l = standard_lattice(StandardLattice::E8Minus1)?.rescale(2)?;
            IntegralLattice::new("E8(-2)", l.gram().to_vec(), l.labels().to_vec())
        }
        StandardLattice::Nikulin => {
            // basis n1..n7, e with e = (n1 + ... + n8)/2
            let mut g = vec![vec![0i64; 8]; 8];
            for i in 0..7 {
                g[i][i] = -2;
                g[i][7] = -1;
                g[7][i] = -1;
            }
            g[7][7] = -4;
            let mut labels = IntegralLattice::numbered_labels("n", 7);
            labels.push("e".into());
            IntegralLattice::new("Nikulin", g, labels)
        }
        StandardLattice::LambdaG(g) => {
            if g < 2 {
                return Err(Error::InvalidLattice(format!("Lambda_g needs g >= 2, got {g}")));
            }
            let c = IntegralLattice::new("<2g-2>", vec![vec![2 * g as i64 - 2]], vec!["c".into()])?;
            let l = c.direct_sum(&standard_lattice(StandardLattice::Nikulin)?);
            IntegralLattice::new(format!("Lambda_{g}"), l.gram().to_vec(), l.labels().to_vec())
        }
    }
}

/// Both readings of the gluing condition for `(C̃ + v)/2`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GlueParity {
    /// `C̃²/2 + v²/4`, as written.
    pub literal_value: i64,
    pub literal_holds: bool,
    /// `((C̃ + v)/2)² = (C̃² + v²)/4`: the overlattice is even iff this is.
    pub glue_square: i64,
    pub glue_even: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NikulinOverlattice {
    pub g: usize,
    /// Basis `(D, e1..e8)`, `e_i` the simple roots of `E8(-2)`.
    pub lattice: IntegralLattice,
    pub c_tilde: DivisorClass,
    pub d: DivisorClass,
    /// The glue vector `v` in the `E8(-2)` basis.
    pub v: Vec<i64>,
    pub v_square: i64,
    pub c_tilde_square: i64,
    pub parity: GlueParity,
    pub even: bool,
    pub c_tilde_primitive: bool,
    pub determinant: i128,
    /// `|det(Z·C̃ ⊕ E8(-2))| / 4`.
    pub expected_abs_determinant: i128,
}

/// The rank-9 overlattice of `Z·C̃ ⊕ E8(-2)`, `C̃² = 4(g-1)`, obtained by
/// adjoining `D = (C̃ + v)/2`. For odd `g`, `v = a1 + a2` (two orthogonal
/// roots, `v² = -8`); for even `g`, `v = a1` (`v² = -4`).
pub fn nikulin_quotient_picard(g: usize) -> Result<NikulinOverlattice> {
    if g < 2 {
        return Err(Error::InvalidLattice(format!("genus must be >= 2, got {g}")));
    }
    let e8 = standard_lattice(StandardLattice::E8Minus2)?;
    let mut v = vec![0i64; 8];
    v[0] = 1;
    if g % 2 == 1 {
        v[1] = 1;
    }
    let v_class = DivisorClass(v.clone());
    let v_square = e8.self_intersection(&v_class)?;
    let c_square = 4 * (g as i64 - 1);

    let numerator = c_square + v_square;
    if numerator % 4 != 0 {
        return Err(Error::InvalidLattice("(C̃ + v)/2 has non-integral square".into()));
    }
    let glue_square = numerator / 4;
    let ev = e8.apply(&v_class)?;
    if ev.iter().any(|x| x % 2 != 0) {
        return Err(Error::InvalidLattice(
            "(C̃ + v)/2 pairs non-integrally with E8(-2)".into(),
        ));
    }

    let mut gram = vec![vec![0i64; 9]; 9];
    gram[0][0] = glue_square;
    for i in 0..8 {
        gram[0][i + 1] = ev[i] / 2;
        gram[i + 1][0] = ev[i] / 2;
        gram[i + 1][1..].copy_from_slice(&e8.gram()[i]);
    }
    let mut labels = vec!["D".to_string()];
    labels.extend(IntegralLattice::numbered_labels("e", 8));
    let lattice = IntegralLattice::new(format!("Pic(Y), g={g}"), gram, labels)?;

    // C̃ = 2D - v
    let mut c = vec![2i64];
    c.extend(v.iter().map(|x| -x));
    let c_tilde = DivisorClass(c);
    let d = lattice.basis_vector(0);
    let check_c = lattice.self_intersection(&c_tilde)?;
    if check_c != c_square {
        return Err(Error::InvalidLattice(format!("C̃² = {check_c}, expected {c_square}")));
    }
    let literal_value = c_square / 2 + v_square / 4;
    let sublattice_det = c_square as i128 * determinant(e8.gram()).abs();
    Ok(NikulinOverlattice {
        g,
        even: lattice.is_even(),
        c_tilde_primitive: coordinate_gcd(&c_tilde.0) == 1,
        determinant: lattice.determinant(),
        expected_abs_determinant: sublattice_det / 4,
        lattice,
        c_tilde,
        d,
        v,
        v_square,
        c_tilde_square: c_square,
        parity: GlueParity {
            literal_value,
            literal_holds: literal_value.rem_euclid(2) == 0,
            glue_square,
            glue_even: glue_square.rem_euclid(2) == 0,
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_determinants() {
        assert_eq!(standard_lattice(StandardLattice::U).unwrap().determinant(), -1);
        assert_eq!(standard_lattice(StandardLattice::E8Minus1).unwrap().determinant(), 1);
        let e82 = standard_lattice(StandardLattice::E8Minus2).unwrap();
        assert_eq!(e82.determinant(), 256);
        let n = standard_lattice(StandardLattice::Nikulin).unwrap();
        assert_eq!((n.rank(), n.determinant(), n.is_even()), (8, 64, true));
        assert_eq!(n.self_intersection(&n.basis_vector(7)).unwrap(), -4);
        assert!(standard_lattice(StandardLattice::LambdaG(1)).is_err());
        assert_eq!(
            "lambda_7".parse::<StandardLattice>().unwrap(),
            StandardLattice::LambdaG(7)
        );
        assert!("foo".parse::<StandardLattice>().is_err());
    }

    #[test]
    fn overlattice_examples() {
        let o = nikulin_quotient_picard(11).unwrap();
        let l = &o.lattice;
        assert_eq!(l.inner(&o.d, &o.c_tilde).unwrap(), 20);
        assert_eq!(l.self_intersection(&o.d).unwrap(), 8);
        assert!(o.even && o.c_tilde_primitive && o.parity.glue_even && o.parity.literal_holds);
        assert_eq!(o.determinant.abs(), o.expected_abs_determinant);

        let o = nikulin_quotient_picard(10).unwrap();
        let cliff = o.lattice.inner(&o.d, &o.c_tilde).unwrap() - o.lattice.self_intersection(&o.d).unwrap() - 2;
        assert_eq!(cliff, 8);
        assert!(o.even && o.c_tilde_primitive && o.parity.glue_even);
        assert!(!o.parity.literal_holds);
    }
}
