//! Schur coefficients of chromatic symmetric functions.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{LabeledGraph, NetLabeling};
use crate::partition::Partition;
use crate::symfunc::{factorial, monomial_to_schur, Basis, CoefficientVector};
use crate::tabloid::{signed_count, srh_tabloids};

/// The three routes to `[s_λ] X_G`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    /// Signed count of special rim hook G-tabloids.
    Tabloid,
    /// Signed sum over special rim hook tabloids, each weighted by the
    /// number of semi-ordered stable partitions of its content type.
    Grouped,
    /// Monomial expansion followed by Kostka inversion.
    Oracle,
}

impl Method {
    pub const ALL: [Method; 3] = [Method::Tabloid, Method::Grouped, Method::Oracle];
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Method::Tabloid => "tabloid",
            Method::Grouped => "grouped",
            Method::Oracle => "oracle",
        };
        f.write_str(name)
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "tabloid" => Ok(Method::Tabloid),
            "grouped" => Ok(Method::Grouped),
            "oracle" => Ok(Method::Oracle),
            other => Err(Error::Parse(format!("unknown method {other:?}"))),
        }
    }
}

type GraphKey = (usize, Vec<(usize, usize)>);
type CoefficientCache = RwLock<HashMap<(GraphKey, Partition, Method), BigInt>>;

fn coefficient_cache() -> &'static CoefficientCache {
    static CACHE: OnceLock<CoefficientCache> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

fn oracle_cache() -> &'static RwLock<HashMap<GraphKey, Arc<CoefficientVector>>> {
    static CACHE: OnceLock<RwLock<HashMap<GraphKey, Arc<CoefficientVector>>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// `X_G` in the monomial basis: the coefficient of `m_μ` is the number of
/// semi-ordered stable partitions of type μ.
pub fn chromatic_monomial_expansion(g: &LabeledGraph) -> CoefficientVector {
    let mut v = CoefficientVector::new(Basis::Monomial);
    for (mu, unordered) in g.stable_partition_type_counts() {
        let weight: BigInt = mu.multiplicities().iter().map(|&r| factorial(r)).product();
        v.add(mu, BigInt::from(unordered) * weight).expect("homogeneous by construction");
    }
    v
}

fn oracle_expansion(g: &LabeledGraph) -> Result<Arc<CoefficientVector>> {
    let key = g.canonical_key();
    if let Some(found) = oracle_cache().read().expect("oracle cache poisoned").get(&key) {
        return Ok(Arc::clone(found));
    }
    let built = Arc::new(monomial_to_schur(&chromatic_monomial_expansion(g))?);
    let mut guard = oracle_cache().write().expect("oracle cache poisoned");
    Ok(Arc::clone(guard.entry(key).or_insert(built)))
}

fn grouped_coefficient(g: &LabeledGraph, lambda: &Partition) -> BigInt {
    let types = g.stable_partition_type_counts();
    let mut total = BigInt::zero();
    for t in srh_tabloids(lambda).iter() {
        let kind = t.content().sort_to_partition();
        let Some(&unordered) = types.get(&kind) else { continue };
        let weight: BigInt = kind.multiplicities().iter().map(|&r| factorial(r)).product();
        total += BigInt::from(t.sign() * unordered as i64) * weight;
    }
    total
}

/// `[s_λ] X_G` by the chosen method.
pub fn schur_coefficient(g: &LabeledGraph, lambda: &Partition, method: Method) -> Result<BigInt> {
    if lambda.size() != g.n_vertices() {
        return Err(Error::SizeMismatch { partition: lambda.size(), vertices: g.n_vertices() });
    }
    if method == Method::Oracle {
        return Ok(oracle_expansion(g)?.get(lambda));
    }
    let key = (g.canonical_key(), lambda.clone(), method);
    if let Some(found) = coefficient_cache().read().expect("coefficient cache poisoned").get(&key) {
        return Ok(found.clone());
    }
    let value = match method {
        Method::Tabloid => BigInt::from(signed_count(lambda, g)),
        Method::Grouped => grouped_coefficient(g, lambda),
        Method::Oracle => unreachable!(),
    };
    let mut guard = coefficient_cache().write().expect("coefficient cache poisoned");
    Ok(guard.entry(key).or_insert(value).clone())
}

/// The Schur expansion of `X_G`, zeros omitted.
pub fn schur_expansion(g: &LabeledGraph, method: Method) -> Result<CoefficientVector> {
    if method == Method::Oracle {
        return Ok(oracle_expansion(g)?.as_ref().clone());
    }
    let parts = Partition::all(g.n_vertices());
    let values = parts
        .par_iter()
        .map(|lambda| schur_coefficient(g, lambda, method))
        .collect::<Result<Vec<_>>>()?;
    CoefficientVector::from_entries(Basis::Schur, parts.into_iter().zip(values))
}

/// `[s_λ] X_G`, extended by zero when either argument is undefined or
/// their sizes disagree.
pub fn xi(lambda: Option<&Partition>, g: Option<&LabeledGraph>) -> BigInt {
    match (lambda, g) {
        (Some(lambda), Some(g)) if lambda.size() == g.n_vertices() => {
            schur_coefficient(g, lambda, Method::Tabloid).expect("sizes checked")
        }
        _ => BigInt::zero(),
    }
}

/// `f(C, D) = [s_{(2^C,1^D)}] X_{GN_{C+D,C}}`, zero for negative arguments.
/// Always computed by enumeration on a pendant-last net.
pub fn f_coefficient(c: i64, d: i64) -> BigInt {
    if c < 0 || d < 0 {
        return BigInt::zero();
    }
    let (c, d) = (c as usize, d as usize);
    let g = LabeledGraph::generalized_net(c + d, c, NetLabeling::PendantLast);
    xi(Some(&Partition::twos_and_ones(c, d)), g.as_ref())
}

/// Whether every Schur coefficient is nonnegative; on failure, the first
/// partition in canonical order with a negative coefficient.
pub fn is_schur_positive(g: &LabeledGraph) -> Result<(bool, Option<Partition>)> {
    let expansion = schur_expansion(g, Method::Tabloid)?;
    let witness = expansion.first_negative().cloned();
    Ok((witness.is_none(), witness))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    fn vector(basis: Basis, entries: &[(&[usize], i64)]) -> CoefficientVector {
        CoefficientVector::from_entries(basis, entries.iter().map(|(q, v)| (p(q), *v))).unwrap()
    }

    #[test]
    fn monomial_expansions() {
        assert_eq!(
            chromatic_monomial_expansion(&LabeledGraph::complete(2)),
            vector(Basis::Monomial, &[(&[1, 1], 2)])
        );
        assert_eq!(
            chromatic_monomial_expansion(&LabeledGraph::path(3)),
            vector(Basis::Monomial, &[(&[1, 1, 1], 6), (&[2, 1], 1)])
        );
        assert_eq!(
            chromatic_monomial_expansion(&LabeledGraph::claw()),
            vector(Basis::Monomial, &[(&[3, 1], 1), (&[2, 1, 1], 6), (&[1, 1, 1, 1], 24)])
        );
    }

    #[test]
    fn coefficient_examples_all_methods() {
        for method in Method::ALL {
            for n in 1..=5 {
                assert_eq!(
                    schur_coefficient(&LabeledGraph::complete(n), &Partition::rectangle(1, n), method).unwrap(),
                    factorial(n)
                );
            }
            assert_eq!(schur_coefficient(&LabeledGraph::claw(), &p(&[2, 2]), method).unwrap(), BigInt::from(-1));
            assert_eq!(schur_coefficient(&LabeledGraph::path(3), &p(&[2, 1]), method).unwrap(), BigInt::from(1));
            assert_eq!(schur_coefficient(&LabeledGraph::path(3), &p(&[1, 1, 1]), method).unwrap(), BigInt::from(4));
            assert!(schur_coefficient(&LabeledGraph::path(3), &p(&[2]), method).is_err());
        }
    }

    #[test]
    fn expansion_examples() {
        for method in Method::ALL {
            assert_eq!(
                schur_expansion(&LabeledGraph::complete(3), method).unwrap(),
                vector(Basis::Schur, &[(&[1, 1, 1], 6)])
            );
            assert_eq!(
                schur_expansion(&LabeledGraph::claw(), method).unwrap(),
                vector(Basis::Schur, &[(&[3, 1], 1), (&[2, 2], -1), (&[2, 1, 1], 5), (&[1, 1, 1, 1], 8)])
            );
            assert_eq!(
                schur_expansion(&LabeledGraph::edgeless(2).unwrap(), method).unwrap(),
                vector(Basis::Schur, &[(&[2], 1), (&[1, 1], 1)])
            );
        }
    }

    #[test]
    fn xi_examples() {
        let k2 = LabeledGraph::complete(2);
        assert_eq!(xi(None, Some(&k2)), BigInt::zero());
        assert_eq!(xi(Some(&p(&[1, 1])), None), BigInt::zero());
        assert_eq!(xi(Some(&p(&[1])), Some(&k2)), BigInt::zero());
        assert_eq!(xi(Some(&p(&[1])), Some(&LabeledGraph::complete(1))), BigInt::from(1));
        let net = LabeledGraph::generalized_net(2, 2, NetLabeling::PendantFirst).unwrap();
        assert_eq!(xi(Some(&p(&[2, 2])), Some(&net)), BigInt::from(2));
        assert_eq!(xi(Some(&Partition::empty()), Some(&LabeledGraph::edgeless(0).unwrap())), BigInt::from(1));
    }

    #[test]
    fn f_examples() {
        assert_eq!(f_coefficient(0, 3), BigInt::from(6));
        assert_eq!(f_coefficient(2, 0), BigInt::from(2));
        assert_eq!(f_coefficient(3, 0), BigInt::from(0));
        assert_eq!(f_coefficient(4, 0), BigInt::from(24));
        assert_eq!(f_coefficient(1, 1), BigInt::from(1));
        assert_eq!(f_coefficient(-1, 2), BigInt::zero());
        // f(1,1) on GN_{2,1} by the independent route
        let g = LabeledGraph::generalized_net(2, 1, NetLabeling::PendantLast).unwrap();
        assert_eq!(schur_coefficient(&g, &p(&[2, 1]), Method::Oracle).unwrap(), BigInt::from(1));
    }

    #[test]
    fn positivity_examples() {
        assert_eq!(is_schur_positive(&LabeledGraph::claw()).unwrap(), (false, Some(p(&[2, 2]))));
        let g33 = LabeledGraph::generalized_net(3, 3, NetLabeling::PendantFirst).unwrap();
        assert_eq!(is_schur_positive(&g33).unwrap(), (true, None));
        assert_eq!(is_schur_positive(&LabeledGraph::complete(4)).unwrap(), (true, None));
    }

    #[test]
    fn method_parsing() {
        for m in Method::ALL {
            assert_eq!(m.to_string().parse::<Method>().unwrap(), m);
        }
        assert!("bogus".parse::<Method>().is_err());
    }
}
