//! The diagrammatic basis of `Hom_H(M^λ, M^μ)` and a brute-force dimension
//! oracle that solves the equivariance equations directly.

use rustc_hash::FxHashMap;

use crate::combinat::{all_permutations, young_subgroup, Composition};
use crate::error::{Error, Result};
use crate::linalg::{certified_rank, nullity};
use crate::permod::{act_c_basis, act_s_basis};
use crate::psi::{eval_stack, eval_stacks, module_basis, MorphismMatrix};
use crate::scalar::{GaussianRational, Parity};
use crate::sergeev::{SergeevBasisWord, SergeevElement};
use crate::tabloid::{enumerate_tabloids_filtered, OmegaTabloid, Supertabloid};
use crate::web::{beta_stack, build_theta_t, xi_stacks, WebStack};

/// `T_*(λ, μ)`: supertabloids of shape `λ` and type `μ` with no row holding
/// two primed copies of a letter.
pub fn enumerate_tstar(lambda: &Composition, mu: &Composition) -> Result<Vec<Supertabloid>> {
    enumerate_tabloids_filtered(lambda, mu, true)
}

/// One basis element: the tabloid, its web and its matrix.
#[derive(Clone, Debug)]
pub struct HomBasisItem {
    pub tabloid: Supertabloid,
    pub word: SergeevBasisWord,
    pub web: WebStack,
    pub matrix: MorphismMatrix,
}

impl HomBasisItem {
    /// Parity of the basis map: the number of primed entries.
    pub fn parity(&self) -> Parity {
        self.tabloid.parity()
    }
}

#[derive(Clone, Debug)]
pub struct HomBasis {
    pub lambda: Composition,
    pub mu: Composition,
    pub items: Vec<HomBasisItem>,
}

impl HomBasis {
    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn rank(&self) -> usize {
        rank_of_family(self.items.iter().map(|it| &it.matrix))
    }
}

fn check_pair(lambda: &Composition, mu: &Composition) -> Result<()> {
    if lambda.total() != mu.total() {
        return Err(Error::SizeMismatch(format!("|{lambda}| != |{mu}|")));
    }
    for c in [lambda, mu] {
        if c.total() == 0 || !c.has_trailing_zeros_only() {
            return Err(Error::InvalidComposition(format!("{c} is not in Λ′(r)")));
        }
    }
    Ok(())
}

/// The maps `ψ(θ_T)` for `T ∈ T_*(λ, μ)`.
pub fn hom_basis(lambda: &Composition, mu: &Composition) -> Result<HomBasis> {
    check_pair(lambda, mu)?;
    let items = enumerate_tstar(lambda, mu)?
        .into_iter()
        .map(|t| {
            let th = build_theta_t(&t, mu)?;
            let matrix = eval_stack(&th.web)?;
            Ok(HomBasisItem { tabloid: t, word: th.word, web: th.web, matrix })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(HomBasis { lambda: lambda.clone(), mu: mu.clone(), items })
}

/// Rank of a family of matrices with a common boundary.
pub fn rank_of_family<'a>(ms: impl IntoIterator<Item = &'a MorphismMatrix>) -> usize {
    certified_rank(ms.into_iter().map(|m| m.flattened()).collect())
}

/// Matrix of one generator on `M^λ`: for each basis tabloid, the image
/// `(coefficient, tabloid)`.
fn generator_images(basis: &[OmegaTabloid], gen: Gen) -> Vec<(GaussianRational, OmegaTabloid)> {
    basis
        .iter()
        .map(|t| match gen {
            Gen::S(i) => {
                let (neg, u) = act_s_basis(i, t);
                (GaussianRational::one().signed(neg), u)
            }
            Gen::C(j) => {
                let (neg, u) = act_c_basis(j, t);
                (GaussianRational::i().signed(neg), u)
            }
        })
        .collect()
}

#[derive(Clone, Copy)]
enum Gen {
    S(usize),
    C(usize),
}

/// Dimensions of the even and odd parts of `Hom_H(M^λ, M^μ)`, found by
/// solving `X·A(h) = ε·B(h)·X` over all generators `h` with unknowns confined to
/// the matching parity blocks.
pub fn hom_dim_oracle(lambda: &Composition, mu: &Composition) -> Result<(usize, usize)> {
    check_pair(lambda, mu)?;
    let dom = module_basis(&lambda.strip_zeros())?;
    let cod = module_basis(&mu.strip_zeros())?;
    let r = lambda.total();
    let mut gens: Vec<Gen> = (0..r.saturating_sub(1)).map(Gen::S).collect();
    gens.extend((0..r).map(Gen::C));
    let a: Vec<_> = gens.iter().map(|&g| generator_images(&dom.tabloids, g)).collect();
    let b: Vec<_> = gens.iter().map(|&g| generator_images(&cod.tabloids, g)).collect();
    // B is monomial: row p of B has its single entry in column binv[p]
    let binv: Vec<Vec<(usize, GaussianRational)>> = b
        .iter()
        .map(|imgs| {
            let mut rows = vec![(usize::MAX, GaussianRational::zero()); cod.len()];
            for (k, (c, u)) in imgs.iter().enumerate() {
                let p = cod.index_of(u).expect("basis tabloid");
                rows[p] = (k, c.clone());
            }
            rows
        })
        .collect();
    let mut dims = [0usize; 2];
    for (slot, odd) in [(0, false), (1, true)] {
        let mut index: FxHashMap<(usize, usize), usize> = FxHashMap::default();
        for (p, tp) in cod.tabloids.iter().enumerate() {
            for (q, tq) in dom.tabloids.iter().enumerate() {
                if (tp.parity() + tq.parity()).is_odd() == odd {
                    let n = index.len();
                    index.insert((p, q), n);
                }
            }
        }
        let unknowns = index.len();
        let mut rows = Vec::new();
        for (g, gen) in gens.iter().enumerate() {
            let eps_neg = odd && matches!(gen, Gen::C(_));
            for (p, (kk, bc)) in binv[g].iter().enumerate() {
                for (q, (aq, tk)) in a[g].iter().enumerate() {
                    // (X A)[p,q] = a_q · X[p, k] where A e_q = a_q e_k
                    let k = dom.index_of(tk).expect("basis tabloid");
                    // (B X)[p,q] = b · X[k', q] where B e_{k'} = b e_p
                    let mut row = Vec::with_capacity(2);
                    if let Some(&u) = index.get(&(p, k)) {
                        row.push((u, aq.clone()));
                    }
                    if let Some(&u) = index.get(&(*kk, q)) {
                        row.push((u, bc.clone().signed(!eps_neg)));
                    }
                    if !row.is_empty() {
                        rows.push(row);
                    }
                }
            }
        }
        dims[slot] = nullity(unknowns, rows);
    }
    Ok((dims[0], dims[1]))
}

/// Checks `ψ(β(θ_T)) = ψξ(Σ_{ρ∈S_μ} ρ) ∘ ψξ(w_T) ∘ ψξ(Σ_{σ∈S_λ} σ)`.
pub fn check_beta_identity(t: &Supertabloid, mu: &Composition) -> Result<bool> {
    let th = build_theta_t(t, mu)?;
    let r = mu.total();
    let lhs = eval_stack(&beta_stack(th.web)?)?;
    let omega = Composition::omega(r);
    let sym = |group: Vec<crate::combinat::Permutation>| -> Result<MorphismMatrix> {
        let mut x = SergeevElement::zero(r);
        for p in group {
            x = x.add(&SergeevElement::from_word(SergeevBasisWord::new(0, p)));
        }
        eval_stacks(&omega, &omega, &xi_stacks(&x)?)
    };
    let left = sym(young_subgroup(&mu.strip_zeros()))?;
    let right = sym(young_subgroup(&t.shape().strip_zeros()))?;
    let mid = eval_stacks(&omega, &omega, &xi_stacks(&SergeevElement::from_word(th.word))?)?;
    Ok(lhs == left.compose(&mid)?.compose(&right)?)
}

/// `2^r · r!`, the dimension of `H_c(r)`.
pub fn sergeev_dimension(r: usize) -> usize {
    (1usize << r) * all_permutations(r).len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinat::lambda_prime;
    use crate::psi::check_equivariance;

    fn c(p: &[usize]) -> Composition {
        Composition::from(p)
    }

    #[test]
    fn tstar_small_counts() {
        assert_eq!(enumerate_tstar(&c(&[1]), &c(&[1])).unwrap().len(), 2);
        assert_eq!(enumerate_tstar(&c(&[2, 0]), &c(&[1, 1])).unwrap().len(), 4);
        assert_eq!(enumerate_tstar(&c(&[2, 1, 2]), &c(&[1, 3, 1])).unwrap().len(), 160);
    }

    #[test]
    fn oracle_small() {
        assert_eq!(hom_dim_oracle(&c(&[1]), &c(&[1])).unwrap(), (1, 1));
        assert_eq!(hom_dim_oracle(&c(&[1, 1]), &c(&[1, 1])).unwrap(), (4, 4));
        let (e, o) = hom_dim_oracle(&c(&[2, 0]), &c(&[1, 1])).unwrap();
        assert_eq!(e + o, 4);
    }

    #[test]
    fn basis_matches_oracle_up_to_r2() {
        for r in 1..=2 {
            for l in lambda_prime(r) {
                for m in lambda_prime(r) {
                    let b = hom_basis(&l, &m).unwrap();
                    let (e, o) = hom_dim_oracle(&l, &m).unwrap();
                    assert_eq!(b.len(), e + o, "{l} {m}");
                    assert_eq!(b.rank(), b.len(), "{l} {m}");
                    for it in &b.items {
                        assert_eq!(it.matrix.parity(), Some(it.parity()));
                        assert!(check_equivariance(&it.matrix).is_ok());
                    }
                }
            }
        }
    }

    #[test]
    fn beta_identity_small() {
        for (l, m) in [(c(&[2, 0]), c(&[1, 1])), (c(&[2, 1, 0]), c(&[1, 2, 0])), (c(&[1, 1]), c(&[2, 0]))] {
            for t in enumerate_tstar(&l, &m).unwrap() {
                assert!(check_beta_identity(&t, &m).unwrap(), "{t}");
            }
        }
    }

    #[test]
    fn regular_module_dimension() {
        for r in 1..=2 {
            let w = Composition::omega(r);
            let (e, o) = hom_dim_oracle(&w, &w).unwrap();
            assert_eq!(e + o, sergeev_dimension(r));
        }
    }
}
