//! The diagonal state-morphism algebra `D(X) = (X × X, (x, y) ↦ (x, x))`
//! and instance checks of its structural properties.

use serde::Serialize;

use crate::algebra::{
    decode_pair, direct_product, encode_pair, homomorphism_witness, is_subalgebra, restrict,
    CayleyAlgebra,
};
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::map::UnaryMap;
use crate::set::ElementSet;
use crate::states::{certify_state, StateAlgebra, StateKind};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiagonalAlgebra {
    pub base: CayleyAlgebra,
    pub product: CayleyAlgebra,
    pub mu: UnaryMap,
}

impl DiagonalAlgebra {
    pub fn state_algebra(&self) -> StateAlgebra {
        certify_state(&self.product, &self.mu, StateKind::StateMorphism)
            .expect("diagonal operator was certified on construction")
    }

    /// `(x, y)` as an element of the product.
    pub fn encode(&self, x: usize, y: usize) -> usize {
        encode_pair(self.base.order(), x, y)
    }

    pub fn decode(&self, k: usize) -> (usize, usize) {
        decode_pair(self.base.order(), k)
    }

    /// `{(0, y)}`
    pub fn kernel(&self) -> ElementSet {
        self.mu.kernel()
    }

    /// `{(x, x)}`
    pub fn image(&self) -> ElementSet {
        self.mu.image(self.product.order())
    }
}

fn diagonal_map(n: usize, first: bool) -> UnaryMap {
    UnaryMap::new(
        (0..n * n)
            .map(|k| {
                let (x, y) = decode_pair(n, k);
                let v = if first { x } else { y };
                encode_pair(n, v, v)
            })
            .collect(),
    )
}

/// Builds `D(X)`, certifying `μ_X` and checking that the swap variant
/// `(x, y) ↦ (y, y)` is isomorphic to it via `(x, y) ↦ (y, x)`.
pub fn diagonal(a: &CayleyAlgebra, limits: &Limits) -> Result<DiagonalAlgebra> {
    let n = a.order();
    let product = direct_product(a, a, limits)?;
    let mu = diagonal_map(n, true);
    certify_state(&product, &mu, StateKind::StateMorphism)
        .map_err(|e| Error::Inconsistent(format!("diagonal operator: {e}")))?;
    let d = DiagonalAlgebra {
        base: a.clone(),
        product,
        mu,
    };
    check_swap_variant(&d)?;
    Ok(d)
}

/// `ν(x, y) = (y, y)` is a state-morphism and `h(x, y) = (y, x)` is an
/// isomorphism with `h ∘ μ = ν ∘ h`.
pub fn check_swap_variant(d: &DiagonalAlgebra) -> Result<()> {
    let n = d.base.order();
    let nu = diagonal_map(n, false);
    certify_state(&d.product, &nu, StateKind::StateMorphism)
        .map_err(|e| Error::Inconsistent(format!("swapped diagonal operator: {e}")))?;
    let h = UnaryMap::new(
        (0..n * n)
            .map(|k| {
                let (x, y) = decode_pair(n, k);
                encode_pair(n, y, x)
            })
            .collect(),
    );
    if !h.is_injective() || homomorphism_witness(&d.product, &d.product, &h)?.is_some() {
        return Err(Error::Inconsistent("swap is not an automorphism".into()));
    }
    if h.after(&d.mu) != nu.after(&h) {
        return Err(Error::Inconsistent(
            "swap does not intertwine the operators".into(),
        ));
    }
    Ok(())
}

/// `Φ(a) = (μ(a), a)` into `D(X)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Embedding {
    pub diagonal: DiagonalAlgebra,
    pub map: UnaryMap,
}

pub fn canonical_embedding(sa: &StateAlgebra, limits: &Limits) -> Result<Embedding> {
    if !sa.is(StateKind::StateMorphism) {
        return Err(Error::domain("operator is not a state-morphism"));
    }
    let a = sa.algebra();
    let d = diagonal(a, limits)?;
    let n = a.order();
    let phi = UnaryMap::new(
        a.elements()
            .map(|x| encode_pair(n, sa.apply(x), x))
            .collect(),
    );
    if !phi.is_injective() {
        return Err(Error::Inconsistent(format!(
            "embedding {phi} is not injective"
        )));
    }
    if let Some((x, y)) = homomorphism_witness(a, &d.product, &phi)? {
        return Err(Error::Inconsistent(format!(
            "embedding does not preserve {x}*{y}"
        )));
    }
    if phi.after(sa.mu()) != d.mu.after(&phi) {
        return Err(Error::Inconsistent(
            "embedding does not commute with the operators".into(),
        ));
    }
    Ok(Embedding {
        diagonal: d,
        map: phi,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LiftedHomomorphism {
    /// `h*(a, b) = (h(a), h(b))` from `D(X)` to `D(C)`.
    pub map: UnaryMap,
}

/// For a surjective homomorphism `h: X -> C`, checks that `h*` is a
/// surjective homomorphism `D(X) -> D(C)` commuting with the operators.
pub fn check_homomorphic_image(
    x: &CayleyAlgebra,
    c: &CayleyAlgebra,
    h: &UnaryMap,
    limits: &Limits,
) -> Result<LiftedHomomorphism> {
    if let Some((p, q)) = homomorphism_witness(x, c, h)? {
        return Err(Error::domain(format!(
            "map is not a homomorphism at ({p}, {q})"
        )));
    }
    if !h.image(c.order()).is_full() {
        return Err(Error::domain("map is not surjective"));
    }
    let dx = diagonal(x, limits)?;
    let dc = diagonal(c, limits)?;
    let (nx, nc) = (x.order(), c.order());
    let lifted = UnaryMap::new(
        (0..nx * nx)
            .map(|k| {
                let (a, b) = decode_pair(nx, k);
                encode_pair(nc, h.apply(a), h.apply(b))
            })
            .collect(),
    );
    if homomorphism_witness(&dx.product, &dc.product, &lifted)?.is_some() {
        return Err(Error::Inconsistent(
            "lifted map is not a homomorphism".into(),
        ));
    }
    if !lifted.image(nc * nc).is_full() {
        return Err(Error::Inconsistent("lifted map is not surjective".into()));
    }
    if lifted.after(&dx.mu) != dc.mu.after(&lifted) {
        return Err(Error::Inconsistent(
            "lifted map does not commute with the operators".into(),
        ));
    }
    Ok(LiftedHomomorphism { map: lifted })
}

/// `Φ((a1, a2), (b1, b2)) = ((a1, b1), (a2, b2))` from `D(X × Y)` onto
/// `D(X) × D(Y)`, checked to be an isomorphism commuting with the
/// operators. Returns `Φ`.
pub fn check_product_decomposition(
    x: &CayleyAlgebra,
    y: &CayleyAlgebra,
    limits: &Limits,
) -> Result<UnaryMap> {
    let (nx, ny) = (x.order(), y.order());
    let xy = direct_product(x, y, limits)?;
    let dxy = diagonal(&xy, limits)?;
    let dx = diagonal(x, limits)?;
    let dy = diagonal(y, limits)?;
    let target = direct_product(&dx.product, &dy.product, limits)?;
    let m = nx * ny;
    let phi = UnaryMap::new(
        (0..m * m)
            .map(|k| {
                let (u, v) = decode_pair(m, k);
                let (a1, a2) = decode_pair(ny, u);
                let (b1, b2) = decode_pair(ny, v);
                encode_pair(ny * ny, encode_pair(nx, a1, b1), encode_pair(ny, a2, b2))
            })
            .collect(),
    );
    let mu_star = UnaryMap::new(
        (0..m * m)
            .map(|k| {
                let (s, t) = decode_pair(ny * ny, k);
                encode_pair(ny * ny, dx.mu.apply(s), dy.mu.apply(t))
            })
            .collect(),
    );
    if !phi.is_injective() {
        return Err(Error::Inconsistent("product map is not a bijection".into()));
    }
    if let Some((p, q)) = homomorphism_witness(&dxy.product, &target, &phi)? {
        return Err(Error::Inconsistent(format!(
            "product map does not preserve {p}*{q}"
        )));
    }
    if phi.after(&dxy.mu) != mu_star.after(&phi) {
        return Err(Error::Inconsistent(
            "product map does not commute with the operators".into(),
        ));
    }
    Ok(phi)
}

/// For a subalgebra `S`, `S × S` is a `μ_X`-closed subalgebra of `D(X)` and
/// the restricted operator is `μ_S` under the inclusion.
pub fn check_subalgebra_restriction(
    x: &CayleyAlgebra,
    s: &ElementSet,
    limits: &Limits,
) -> Result<()> {
    let (sub, inclusion) = restrict(x, s)?;
    let dx = diagonal(x, limits)?;
    let ds = diagonal(&sub, limits)?;
    let (n, k) = (x.order(), sub.order());
    let lift = UnaryMap::new(
        (0..k * k)
            .map(|p| {
                let (a, b) = decode_pair(k, p);
                encode_pair(n, inclusion.apply(a), inclusion.apply(b))
            })
            .collect(),
    );
    let square = lift.image(n * n);
    if !is_subalgebra(&dx.product, &square) {
        return Err(Error::Inconsistent("S × S is not a subalgebra".into()));
    }
    if square.iter().any(|p| !square.contains(dx.mu.apply(p))) {
        return Err(Error::Inconsistent("S × S is not closed under μ".into()));
    }
    if homomorphism_witness(&ds.product, &dx.product, &lift)?.is_some()
        || lift.after(&ds.mu) != dx.mu.after(&lift)
    {
        return Err(Error::Inconsistent(
            "D(S) does not embed into D(X) compatibly".into(),
        ));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{classify, isomorphic};
    use crate::fixtures::{b2, c4, t1};
    use crate::ideals::{generated_ideal, quotient};
    use crate::states::right_translation_morphism;

    fn lim() -> Limits {
        Limits::default()
    }

    #[test]
    fn diagonals() {
        let d = diagonal(&b2(), &lim()).unwrap();
        assert_eq!(d.product.order(), 4);
        assert_eq!(d.kernel().to_vec(), vec![d.encode(0, 0), d.encode(0, 1)]);
        assert_eq!(d.image().to_vec(), vec![d.encode(0, 0), d.encode(1, 1)]);
        let c = classify(&d.product);
        assert!(c.commutative && !c.linear);

        let dt = diagonal(&t1(), &lim()).unwrap();
        assert_eq!(dt.product, t1());
        let dc = diagonal(&c4(), &lim()).unwrap();
        assert_eq!(dc.product.order(), 16);
        assert!(dc.state_algebra().is(StateKind::StateMorphism));
        let span = generated_ideal(&dc.product, &dc.kernel().union(&dc.image()));
        assert!(span.is_full());
    }

    #[test]
    fn embeddings() {
        let a = c4();
        let a2 = right_translation_morphism(&a, 2).unwrap();
        let e = canonical_embedding(&a2, &lim()).unwrap();
        assert_eq!(e.map.image(16).len(), 4);

        let b = b2();
        let id = certify_state(&b, &b.identity_map(), StateKind::StateMorphism).unwrap();
        let e = canonical_embedding(&id, &lim()).unwrap();
        assert_eq!(e.map.values(), &[0, 3]);
        let z = certify_state(&b, &b.zero_map(), StateKind::StateMorphism).unwrap();
        assert_eq!(
            canonical_embedding(&z, &lim()).unwrap().map.values(),
            &[0, 1]
        );
    }

    #[test]
    fn structural_checks() {
        let a = c4();
        let i = ElementSet::from_elements(4, [0, 1]);
        let (q, pi) = quotient(&a, &i).unwrap();
        let lifted = check_homomorphic_image(&a, &q, &pi, &lim()).unwrap();
        assert_eq!(lifted.map.domain_order(), 16);

        let phi = check_product_decomposition(&b2(), &b2(), &lim()).unwrap();
        assert_eq!(phi.domain_order(), 16);
        check_product_decomposition(&t1(), &b2(), &lim()).unwrap();
        check_product_decomposition(&b2(), &c4(), &lim()).unwrap();

        check_subalgebra_restriction(&a, &ElementSet::from_elements(4, [0, 2, 3]), &lim()).unwrap();
        assert!(check_homomorphic_image(&a, &a, &crate::fixtures::pm(), &lim()).is_err());
    }

    #[test]
    fn product_association() {
        let lim = lim();
        let (x, y, z) = (b2(), c4(), b2());
        let left = direct_product(&direct_product(&x, &y, &lim).unwrap(), &z, &lim).unwrap();
        let right = direct_product(&x, &direct_product(&y, &z, &lim).unwrap(), &lim).unwrap();
        // row-major encoding makes the two folds literally equal
        assert_eq!(left, right);
        assert!(isomorphic(&left, &right).is_some());
    }
}
