use num_integer::Integer;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Rule, StructureError, Violation};
use crate::exactnum::{root_of_unity, Scalar, ScalarField};

/// Number of pseudo-random triples used when sampling biadditivity.
pub const BIADDITIVITY_SAMPLES: usize = 200;

/// Z_{n_1} × ... × Z_{n_r}; elements are residue tuples.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteAbelianGroup {
    orders: Vec<u32>,
}

pub type GroupElement = Vec<u32>;

impl FiniteAbelianGroup {
    pub fn new(orders: Vec<u32>) -> Result<Self, StructureError> {
        if orders.iter().any(|&n| n == 0) {
            return Err(StructureError::Shape("cyclic orders must be at least 1".into()));
        }
        Ok(FiniteAbelianGroup { orders })
    }

    /// The trivial group Z_1.
    pub fn trivial() -> Self {
        FiniteAbelianGroup { orders: vec![1] }
    }

    pub fn orders(&self) -> &[u32] {
        &self.orders
    }

    pub fn rank(&self) -> usize {
        self.orders.len()
    }

    /// lcm of the cyclic orders.
    pub fn exponent(&self) -> u32 {
        self.orders.iter().fold(1, |acc, &n| acc.lcm(&n))
    }

    pub fn identity(&self) -> GroupElement {
        vec![0; self.rank()]
    }

    pub fn is_identity(&self, a: &[u32]) -> bool {
        a.iter().all(|&x| x == 0)
    }

    pub fn contains(&self, a: &[u32]) -> bool {
        a.len() == self.rank() && a.iter().zip(&self.orders).all(|(x, n)| x < n)
    }

    pub fn add(&self, a: &[u32], b: &[u32]) -> GroupElement {
        a.iter()
            .zip(b)
            .zip(&self.orders)
            .map(|((x, y), n)| (x + y) % n)
            .collect()
    }

    pub fn generators(&self) -> Vec<GroupElement> {
        (0..self.rank())
            .map(|i| {
                let mut g = self.identity();
                if self.orders[i] > 1 {
                    g[i] = 1;
                }
                g
            })
            .collect()
    }

    pub fn random_element(&self, rng: &mut impl Rng) -> GroupElement {
        self.orders.iter().map(|&n| rng.gen_range(0..n)).collect()
    }
}

pub fn format_element(a: &[u32]) -> String {
    let parts: Vec<String> = a.iter().map(ToString::to_string).collect();
    format!("({})", parts.join(","))
}

/// Bicharacter θ(a, b) = ζ_e^{Σ a_i t[i][j] b_j} with e the group exponent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColorFunction {
    group: FiniteAbelianGroup,
    exponents: Vec<Vec<i64>>,
}

impl ColorFunction {
    pub fn new(group: FiniteAbelianGroup, exponents: Vec<Vec<i64>>) -> Result<Self, StructureError> {
        let r = group.rank();
        if exponents.len() != r || exponents.iter().any(|row| row.len() != r) {
            return Err(StructureError::Shape(format!(
                "theta exponent matrix must be {r}×{r}"
            )));
        }
        Ok(ColorFunction { group, exponents })
    }

    /// θ ≡ 1 on the trivial group.
    pub fn trivial() -> Self {
        ColorFunction {
            group: FiniteAbelianGroup::trivial(),
            exponents: vec![vec![0]],
        }
    }

    /// The sign bicharacter (−1)^{ab} on Z_2.
    pub fn sign() -> Self {
        ColorFunction {
            group: FiniteAbelianGroup { orders: vec![2] },
            exponents: vec![vec![1]],
        }
    }

    pub fn group(&self) -> &FiniteAbelianGroup {
        &self.group
    }

    pub fn exponent_matrix(&self) -> &[Vec<i64>] {
        &self.exponents
    }

    /// k with θ(a, b) = ζ_e^k, reduced into [0, e).
    pub fn exponent(&self, a: &[u32], b: &[u32]) -> u32 {
        let e = self.group.exponent() as i64;
        let mut acc = 0i64;
        for (i, &ai) in a.iter().enumerate() {
            for (j, &bj) in b.iter().enumerate() {
                acc += ai as i64 * self.exponents[i][j] * bj as i64;
            }
        }
        acc.rem_euclid(e) as u32
    }

    pub fn is_one(&self, a: &[u32], b: &[u32]) -> bool {
        self.exponent(a, b) == 0
    }

    /// θ(a, b) as an element of `field`.
    ///
    /// In ℚ(ζ_m) this needs e | m; elsewhere only the values ±1 are representable.
    pub fn value(&self, field: &ScalarField, a: &[u32], b: &[u32]) -> Result<Scalar, StructureError> {
        let e = self.group.exponent() as u64;
        let k = self.exponent(a, b) as u64;
        match field {
            ScalarField::Cyclotomic(c) if c.order() % e == 0 => {
                Ok(root_of_unity(field, (k * (c.order() / e)) as i64)?)
            }
            _ if k == 0 => Ok(field.one()),
            _ if 2 * k == e => Ok(Scalar::from_integer(field, -1)),
            _ => Err(StructureError::UnrepresentableTheta {
                field: field.to_string(),
                a: format_element(a),
                b: format_element(b),
            }),
        }
    }

    /// Biadditivity on generator triples plus seeded random triples, and the
    /// skew law θ(a,b)θ(b,a) = 1 on generator pairs and the sampled pairs.
    pub fn validate(&self, seed: u64) -> Vec<Violation> {
        let g = &self.group;
        let e = g.exponent();
        let mut out = Vec::new();
        let gens = g.generators();
        let mut triples: Vec<[GroupElement; 3]> = Vec::new();
        for a in &gens {
            for b in &gens {
                for c in &gens {
                    triples.push([a.clone(), b.clone(), c.clone()]);
                }
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..BIADDITIVITY_SAMPLES {
            triples.push([g.random_element(&mut rng), g.random_element(&mut rng), g.random_element(&mut rng)]);
        }
        let names = |xs: &[&[u32]]| xs.iter().map(|x| format_element(x)).collect::<Vec<_>>();
        for [a, b, c] in &triples {
            let left = self.exponent(&g.add(a, b), c);
            let right = (self.exponent(a, c) + self.exponent(b, c)) % e;
            if left != right {
                out.push(Violation::new(Rule::Biadditivity, names(&[a, b, c]), vec![], "θ(a+b,c) ≠ θ(a,c)θ(b,c)"));
                break;
            }
            let left = self.exponent(a, &g.add(b, c));
            let right = (self.exponent(a, b) + self.exponent(a, c)) % e;
            if left != right {
                out.push(Violation::new(Rule::Biadditivity, names(&[a, b, c]), vec![], "θ(a,b+c) ≠ θ(a,b)θ(a,c)"));
                break;
            }
        }
        let mut pairs: Vec<(GroupElement, GroupElement)> = Vec::new();
        for a in &gens {
            for b in &gens {
                pairs.push((a.clone(), b.clone()));
            }
        }
        pairs.extend(triples[gens.len().pow(3)..].iter().map(|[a, b, _]| (a.clone(), b.clone())));
        for (a, b) in &pairs {
            if (self.exponent(a, b) + self.exponent(b, a)) % e != 0 {
                out.push(Violation::new(Rule::Skew, names(&[a, b]), vec![], "θ(a,b)θ(b,a) ≠ 1"));
                break;
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z4z4() -> ColorFunction {
        let g = FiniteAbelianGroup::new(vec![4, 4]).unwrap();
        ColorFunction::new(g, vec![vec![0, 1], vec![-1, 0]]).unwrap()
    }

    #[test]
    fn exponent_and_lcm() {
        assert_eq!(FiniteAbelianGroup::new(vec![4, 6]).unwrap().exponent(), 12);
        assert_eq!(FiniteAbelianGroup::trivial().exponent(), 1);
    }

    #[test]
    fn symplectic_color_on_z4z4() {
        let th = z4z4();
        assert!(th.validate(0).is_empty());
        let f = ScalarField::cyclotomic(4).unwrap();
        assert_eq!(th.value(&f, &[1, 0], &[0, 1]).unwrap(), root_of_unity(&f, 1).unwrap());
        assert_eq!(th.value(&f, &[0, 1], &[1, 0]).unwrap(), root_of_unity(&f, 3).unwrap());
        assert!(th.value(&f, &[1, 0], &[3, 0]).unwrap().is_one());
        assert!(th.value(&ScalarField::Rationals, &[1, 0], &[0, 1]).is_err());
        assert_eq!(
            th.value(&ScalarField::Rationals, &[2, 0], &[0, 1]).unwrap(),
            Scalar::from_integer(&ScalarField::Rationals, -1)
        );
    }

    #[test]
    fn cubic_character_is_not_skew() {
        let g = FiniteAbelianGroup::new(vec![3]).unwrap();
        let th = ColorFunction::new(g, vec![vec![1]]).unwrap();
        let v = th.validate(0);
        assert_eq!(v.len(), 1);
        assert_eq!(v[0].rule, Rule::Skew);
        assert_eq!(v[0].witness, vec!["(1)".to_string(), "(1)".to_string()]);
    }

    #[test]
    fn sign_character_is_valid() {
        assert!(ColorFunction::sign().validate(7).is_empty());
        assert!(ColorFunction::trivial().validate(7).is_empty());
    }

    #[test]
    fn ill_defined_exponents_break_biadditivity() {
        // Exponent 1 on Z_2 × Z_4 between the factors is not well defined mod 2 in
        // the first slot once the exponent is 4.
        let g = FiniteAbelianGroup::new(vec![2, 4]).unwrap();
        let th = ColorFunction::new(g, vec![vec![0, 1], vec![-1, 0]]).unwrap();
        let v = th.validate(0);
        assert!(v.iter().any(|x| x.rule == Rule::Biadditivity));
    }
}
