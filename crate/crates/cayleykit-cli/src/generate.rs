//! Deterministic corpus generation.
//!
//! A corpus is described by a list of [`CorpusSpec`] jobs. Deterministic
//! generators (simplices, dilates, cubes, boxes, the reflexive polygons,
//! pyramids over any of those) emit exactly one document each; the random
//! generators emit `count` documents drawn from a stream seeded once for
//! the whole expansion, so identical specs and seed reproduce identical
//! documents byte for byte. Every document carries an expect block with
//! its Ehrhart data so later runs can detect regressions (or deliberate
//! corruption).

use anyhow::{bail, Result};
use cayleykit::ehrhart::h_star;
use cayleykit::gorenstein::reflexive_polygons;
use cayleykit::io::{Expectations, PolytopeDocument};
use cayleykit::polytope::{cayley_sum, LatticePolytope};
use cayleykit::vector::LatticeVector;
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Largest ambient dimension in the default corpus.
const MAX_DIM: usize = 5;
/// Largest h* degree in the default corpus.
const MAX_DEGREE: usize = 3;

/// One polytope construction recipe.
#[derive(Clone, Debug)]
pub enum Generator {
    /// The standard simplex Δ_dim.
    Simplex { dim: usize },
    /// The dilate k·Δ_dim.
    DilatedSimplex { dim: usize, dilation: u32 },
    /// The unit cube [0,1]^dim.
    Cube { dim: usize },
    /// The box with the given edge lengths.
    Box { widths: Vec<i64> },
    /// One of the sixteen reflexive polygons, by name.
    Reflexive { name: String },
    /// The lattice pyramid over another recipe's polytope.
    Pyramid { base: Box<Generator> },
    /// Cayley sums of random factors: q is drawn up to `max_q`, the number
    /// of factors up to `max_s + 1` within the dimension limit, and each
    /// factor is a hull of a few points in [0, width]^q.
    Cayley { max_q: usize, max_s: usize, width: i64 },
    /// Hulls of a few random points in a box, discarded unless they are
    /// full-dimensional and within the degree limit.
    RandomBox { min_dim: usize, max_dim: usize, max_width: i64, max_points: usize },
}

impl Generator {
    fn label(&self) -> String {
        match self {
            Generator::Simplex { dim } => format!("simplex_{dim}"),
            Generator::DilatedSimplex { dim, dilation } => {
                format!("dilated_{dilation}_simplex_{dim}")
            }
            Generator::Cube { dim } => format!("cube_{dim}"),
            Generator::Box { widths } => format!(
                "box_{}",
                widths.iter().map(|w| w.to_string()).collect::<Vec<_>>().join("x")
            ),
            Generator::Reflexive { name } => format!("reflexive_{name}"),
            Generator::Pyramid { base } => format!("pyramid_{}", base.label()),
            Generator::Cayley { .. } => "cayley".to_owned(),
            Generator::RandomBox { .. } => "random_box".to_owned(),
        }
    }

    fn build(&self) -> Result<LatticePolytope> {
        Ok(match self {
            Generator::Simplex { dim } => simplex(*dim),
            Generator::DilatedSimplex { dim, dilation } => simplex(*dim).dilate_u32(*dilation),
            Generator::Cube { dim } => boxed(&vec![1; *dim]),
            Generator::Box { widths } => boxed(widths),
            Generator::Reflexive { name } => reflexive_polygons()
                .into_iter()
                .find(|p| p.name() == Some(name.as_str()))
                .ok_or_else(|| anyhow::anyhow!("unknown reflexive polygon {name:?}"))?,
            Generator::Pyramid { base } => pyramid(&base.build()?),
            Generator::Cayley { .. } | Generator::RandomBox { .. } => {
                bail!("random generators need the sampling path")
            }
        })
    }
}

/// One corpus generation job: a recipe and how many documents it emits.
#[derive(Clone, Debug)]
pub struct CorpusSpec {
    pub generator: Generator,
    pub count: usize,
}

impl CorpusSpec {
    pub fn one(generator: Generator) -> Self {
        CorpusSpec { generator, count: 1 }
    }
}

fn simplex(n: usize) -> LatticePolytope {
    let mut pts = vec![LatticeVector::zero(n)];
    for i in 0..n {
        let mut e = vec![BigInt::from(0); n];
        e[i] = BigInt::from(1);
        pts.push(LatticeVector::new(e));
    }
    LatticePolytope::new(pts).expect("simplex vertices")
}

fn boxed(widths: &[i64]) -> LatticePolytope {
    let n = widths.len();
    let mut pts = Vec::with_capacity(1 << n);
    for mask in 0..(1u32 << n) {
        let coords: Vec<BigInt> = (0..n)
            .map(|i| {
                if mask >> i & 1 == 1 {
                    BigInt::from(widths[i])
                } else {
                    BigInt::from(0)
                }
            })
            .collect();
        pts.push(LatticeVector::new(coords));
    }
    LatticePolytope::new(pts).expect("box corners")
}

fn pyramid(base: &LatticePolytope) -> LatticePolytope {
    let apex = LatticePolytope::new(vec![LatticeVector::zero(base.ambient_dim())])
        .expect("apex point");
    cayley_sum(&[base.clone(), apex]).expect("pyramid construction")
}

fn random_hull(rng: &mut ChaCha8Rng, dim: usize, width: i64, points: usize) -> LatticePolytope {
    let pts: Vec<LatticeVector> = (0..points)
        .map(|_| {
            LatticeVector::new((0..dim).map(|_| BigInt::from(rng.gen_range(0..=width))).collect())
        })
        .collect();
    LatticePolytope::new(pts).expect("random points share a dimension")
}

fn document(name: &str, polytope: LatticePolytope) -> Result<PolytopeDocument> {
    let hs = h_star(&polytope)?;
    if hs.degree() > MAX_DEGREE {
        bail!("{name}: degree {} exceeds the corpus limit", hs.degree());
    }
    if polytope.ambient_dim() > MAX_DIM {
        bail!(
            "{name}: dimension {} exceeds the corpus limit",
            polytope.ambient_dim()
        );
    }
    let expect = Expectations {
        h_star: Some(hs.coefficients().to_vec()),
        degree: Some(hs.degree()),
        normalized_volume: Some(hs.normalized_volume()),
        gorenstein: Some(hs.is_palindromic()),
    };
    Ok(PolytopeDocument {
        name: Some(name.to_string()),
        polytope: polytope.with_name(name),
        expect,
    })
}

/// Expand a spec list against a single random stream. Deterministic
/// recipes must request exactly one document; random recipes draw `count`
/// samples from the stream in spec order, so the whole expansion is a
/// function of the specs and the seed alone.
pub fn expand(specs: &[CorpusSpec], seed: u64) -> Result<Vec<PolytopeDocument>> {
    let mut docs = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for spec in specs {
        match &spec.generator {
            Generator::Cayley { max_q, max_s, width } => {
                for i in 0..spec.count {
                    let q = rng.gen_range(1..=*max_q);
                    let s = rng.gen_range(1..=(MAX_DIM - q).min(*max_s));
                    let factors: Vec<LatticePolytope> = (0..=s)
                        .map(|_| {
                            let points = rng.gen_range(2..=q + 2);
                            random_hull(&mut rng, q, *width, points)
                        })
                        .collect();
                    let p = cayley_sum(&factors)?;
                    docs.push(document(&format!("cayley_q{q}_s{s}_{i:03}"), p)?);
                }
            }
            Generator::RandomBox { min_dim, max_dim, max_width, max_points } => {
                let mut made = 0;
                let mut attempts = 0;
                while made < spec.count {
                    attempts += 1;
                    if attempts > 100 * spec.count.max(1) {
                        bail!("random box family failed to fill after {attempts} attempts");
                    }
                    let dim = rng.gen_range(*min_dim..=*max_dim);
                    // Degree-3 members are scarce at dimension 4 and wide
                    // boxes there are slow to count, so cap the width.
                    let width = if dim == 4 {
                        rng.gen_range(1..=(*max_width).min(3))
                    } else {
                        rng.gen_range(1..=*max_width)
                    };
                    let points = rng.gen_range(dim + 1..=*max_points);
                    let p = random_hull(&mut rng, dim, width, points);
                    if p.affine_dim() != dim {
                        continue;
                    }
                    let hs = h_star(&p)?;
                    if hs.degree() > MAX_DEGREE {
                        continue;
                    }
                    docs.push(document(
                        &format!("random_box_d{dim}_w{width}_{made:03}"),
                        p,
                    )?);
                    made += 1;
                }
            }
            deterministic => {
                if spec.count != 1 {
                    bail!(
                        "{} is deterministic and must have count 1, got {}",
                        deterministic.label(),
                        spec.count
                    );
                }
                docs.push(document(&deterministic.label(), deterministic.build()?)?);
            }
        }
    }
    Ok(docs)
}

/// The spec list behind the shipped corpus: at least 300 polytopes of
/// dimension at most five and degree at most three.
pub fn default_specs() -> Vec<CorpusSpec> {
    let mut specs = Vec::new();

    for dim in 1..=5 {
        specs.push(CorpusSpec::one(Generator::Simplex { dim }));
    }

    // dilations kΔ_n whose degree n + 1 − ⌈(n+1)/k⌉ stays within the limit
    for (dilation, dim) in [
        (2, 1),
        (3, 1),
        (4, 1),
        (5, 1),
        (2, 2),
        (3, 2),
        (4, 2),
        (2, 3),
        (3, 3),
        (4, 3),
        (2, 4),
        (3, 4),
        (2, 5),
    ] {
        specs.push(CorpusSpec::one(Generator::DilatedSimplex { dim, dilation }));
    }

    for dim in 1..=4 {
        specs.push(CorpusSpec::one(Generator::Cube { dim }));
    }

    for widths in [
        vec![2, 1],
        vec![3, 1],
        vec![2, 2],
        vec![3, 2],
        vec![4, 1],
        vec![2, 1, 1],
        vec![3, 1, 1],
        vec![2, 2, 1],
        vec![2, 1, 1, 1],
        vec![2, 2, 1, 1],
    ] {
        specs.push(CorpusSpec::one(Generator::Box { widths }));
    }

    for p in reflexive_polygons() {
        let name = p.name().expect("polygons are named").to_owned();
        specs.push(CorpusSpec::one(Generator::Reflexive { name }));
    }

    // lattice pyramids preserve h*, so these stay within the degree limit
    let pyramid_bases = [
        Generator::Cube { dim: 2 },
        Generator::Cube { dim: 3 },
        Generator::Box { widths: vec![2, 1] },
        Generator::DilatedSimplex { dim: 1, dilation: 2 },
        Generator::DilatedSimplex { dim: 2, dilation: 2 },
        Generator::DilatedSimplex { dim: 3, dilation: 2 },
        Generator::Reflexive { name: "p2".to_owned() },
        Generator::Reflexive { name: "hexagon".to_owned() },
    ];
    for base in &pyramid_bases {
        specs.push(CorpusSpec::one(Generator::Pyramid {
            base: Box::new(base.clone()),
        }));
    }
    for base in pyramid_bases.iter().take(4) {
        specs.push(CorpusSpec::one(Generator::Pyramid {
            base: Box::new(Generator::Pyramid {
                base: Box::new(base.clone()),
            }),
        }));
    }

    specs.push(CorpusSpec {
        generator: Generator::Cayley { max_q: 3, max_s: 3, width: 3 },
        count: 60,
    });
    specs.push(CorpusSpec {
        generator: Generator::RandomBox {
            min_dim: 2,
            max_dim: 4,
            max_width: 4,
            max_points: 8,
        },
        count: 200,
    });

    specs
}

/// The default corpus for a seed.
pub fn default_corpus(seed: u64) -> Result<Vec<PolytopeDocument>> {
    expand(&default_specs(), seed)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_is_deterministic_and_large_enough() {
        let a = default_corpus(7).unwrap();
        let b = default_corpus(7).unwrap();
        assert!(a.len() >= 300, "only {} corpus members", a.len());
        assert_eq!(a.len(), b.len());
        for (x, y) in a.iter().zip(&b) {
            assert_eq!(x.name, y.name);
            assert_eq!(x.polytope, y.polytope);
            assert_eq!(x.expect, y.expect);
        }
        let c = default_corpus(8).unwrap();
        assert!(a.iter().zip(&c).any(|(x, y)| x.polytope != y.polytope));
    }

    #[test]
    fn corpus_names_are_unique() {
        let docs = default_corpus(7).unwrap();
        let mut names: Vec<_> = docs.iter().map(|d| d.name.clone().unwrap()).collect();
        names.sort();
        names.dedup();
        assert_eq!(names.len(), docs.len());
    }

    #[test]
    fn deterministic_specs_refuse_multiplicity() {
        let spec = CorpusSpec { generator: Generator::Cube { dim: 2 }, count: 2 };
        assert!(expand(&[spec], 0).is_err());
    }

    #[test]
    fn random_specs_depend_only_on_specs_and_seed() {
        let specs = [CorpusSpec {
            generator: Generator::Cayley { max_q: 2, max_s: 2, width: 2 },
            count: 5,
        }];
        let a = expand(&specs, 3).unwrap();
        let b = expand(&specs, 3).unwrap();
        assert_eq!(a.len(), 5);
        for (x, y) in a.iter().zip(&b) {
            assert_eq!(x.polytope, y.polytope);
        }
    }
}
