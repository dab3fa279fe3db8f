use serde::{Deserialize, Serialize};

use super::{CyclicTag, HomSpec, RealizeError};

/// `ℤ_{m_1} × … × ℤ_{m_r}` with a distinguished element.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CyclicGroup {
    pub factors: Vec<CyclicTag>,
    pub unit: Vec<i64>,
}

/// The component `η_{i,j}: G_{t,i} → G_{t+1,j}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComponentPlan {
    pub source: usize,
    pub target: usize,
    pub spec: HomSpec,
    pub case: u8,
    /// `η_{i,j}(u_{t,i})`, reduced.
    pub class: i64,
    /// The class is zero, so the corner module is replaced by `P ⊕ P_i`
    /// with `[P]` the neutral element; the class does not change.
    pub adjusted: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChainStep {
    pub step: usize,
    /// Field over which the target algebras live.
    pub field: String,
    pub components: Vec<ComponentPlan>,
    /// `Σ_i η_{i,j}(u_{t,i})` for each target component `j`.
    pub sums: Vec<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChainPlan {
    pub groups: Vec<CyclicGroup>,
    pub steps: Vec<ChainStep>,
}

fn field_name(t: usize) -> String {
    match t {
        0 => "k".into(),
        1 => "k(t1)".into(),
        _ => format!("k(t1..t{t})"),
    }
}

impl ChainPlan {
    /// The integer matrix of step `t` rebuilt from the component specs.
    pub fn transition(&self, t: usize) -> Vec<Vec<i64>> {
        let step = &self.steps[t];
        let rows = self.groups[t + 1].factors.len();
        let cols = self.groups[t].factors.len();
        let mut m = vec![vec![0; cols]; rows];
        for c in &step.components {
            m[c.target][c.source] = c.spec.mult;
        }
        m
    }

    /// Whether [`ChainPlan::transition`] agrees with `maps` modulo the
    /// target orders.
    pub fn reproduces(&self, maps: &[Vec<Vec<i64>>]) -> bool {
        maps.len() == self.steps.len()
            && maps.iter().enumerate().all(|(t, given)| {
                let rebuilt = self.transition(t);
                let tags = &self.groups[t + 1].factors;
                given.iter().zip(&rebuilt).zip(tags).all(|((g, r), tag)| {
                    g.iter()
                        .zip(r)
                        .all(|(a, b)| tag.reduce(*a) == tag.reduce(*b))
                })
            })
    }

    pub fn specs(&self) -> impl Iterator<Item = &HomSpec> {
        self.steps
            .iter()
            .flat_map(|s| s.components.iter().map(|c| &c.spec))
    }
}

fn chain_err(msg: String) -> RealizeError {
    RealizeError::Chain(msg)
}

/// Splits each map `G_t → G_{t+1}` (matrix rows index target factors) into
/// its cyclic components and checks that the distinguished elements match.
pub fn plan_chain(
    groups: &[CyclicGroup],
    maps: &[Vec<Vec<i64>>],
) -> Result<ChainPlan, RealizeError> {
    if groups.is_empty() {
        return Err(chain_err("no groups".into()));
    }
    if maps.len() + 1 != groups.len() {
        return Err(chain_err(format!(
            "{} groups need {} maps, got {}",
            groups.len(),
            groups.len() - 1,
            maps.len()
        )));
    }
    let groups: Vec<CyclicGroup> = groups
        .iter()
        .enumerate()
        .map(|(t, g)| {
            if g.factors.is_empty() {
                return Err(chain_err(format!("group {t} is trivial")));
            }
            if g.unit.len() != g.factors.len() {
                return Err(chain_err(format!("group {t}: unit has wrong length")));
            }
            Ok(CyclicGroup {
                factors: g.factors.clone(),
                unit: g
                    .unit
                    .iter()
                    .zip(&g.factors)
                    .map(|(u, f)| f.reduce(*u))
                    .collect(),
            })
        })
        .collect::<Result<_, _>>()?;
    let mut steps = Vec::new();
    for (t, map) in maps.iter().enumerate() {
        let (src, dst) = (&groups[t], &groups[t + 1]);
        if map.len() != dst.factors.len() || map.iter().any(|r| r.len() != src.factors.len()) {
            return Err(chain_err(format!("map {t} has the wrong shape")));
        }
        let mut components = Vec::new();
        let mut sums = Vec::new();
        for (j, row) in map.iter().enumerate() {
            let target = dst.factors[j];
            let mut sum = 0i64;
            for (i, &mult) in row.iter().enumerate() {
                let spec = HomSpec::canonical(src.factors[i], target, mult).map_err(|_| {
                    chain_err(format!(
                        "map {t}: {mult} is not a homomorphism {} -> {}",
                        src.factors[i], target
                    ))
                })?;
                let class = target.reduce(spec.mult * src.unit[i]);
                sum = target.reduce(sum + class);
                components.push(ComponentPlan {
                    source: i,
                    target: j,
                    spec,
                    case: spec.case(),
                    class,
                    adjusted: class == 0,
                });
            }
            if sum != dst.unit[j] {
                return Err(chain_err(format!(
                    "map {t} sends the unit to {sum} in factor {j}, expected {}",
                    dst.unit[j]
                )));
            }
            sums.push(sum);
        }
        steps.push(ChainStep {
            step: t,
            field: field_name(t + 1),
            components,
            sums,
        });
    }
    Ok(ChainPlan { groups, steps })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn group(tags: &[u64], unit: &[i64]) -> CyclicGroup {
        CyclicGroup {
            factors: tags.iter().map(|&m| CyclicTag::new(m).unwrap()).collect(),
            unit: unit.to_vec(),
        }
    }

    #[test]
    fn constant_z2_chain() {
        let g = group(&[2], &[1]);
        let plan = plan_chain(&[g.clone(), g.clone(), g], &[vec![vec![1]], vec![vec![1]]]).unwrap();
        assert!(plan.specs().all(|s| s.case() == 1 && s.mult == 1));
    }

    #[test]
    fn z2_times_z() {
        let g = group(&[2, 0], &[1, 1]);
        let id = vec![vec![1, 0], vec![0, 1]];
        let plan = plan_chain(&[g.clone(), g.clone(), g], &[id.clone(), id.clone()]).unwrap();
        let step = &plan.steps[0];
        let cases: Vec<(usize, usize, u8, i64)> = step
            .components
            .iter()
            .map(|c| (c.source, c.target, c.case, c.spec.mult))
            .collect();
        assert_eq!(
            cases,
            vec![(0, 0, 1, 1), (1, 0, 2, 2), (0, 1, 4, 0), (1, 1, 2, 1)]
        );
        assert!(plan.reproduces(&[id.clone(), id]));
        assert_eq!(step.field, "k(t1)");
    }

    #[test]
    fn z2_into_z4() {
        let plan = plan_chain(&[group(&[2], &[1]), group(&[4], &[2])], &[vec![vec![2]]]).unwrap();
        assert_eq!(plan.steps[0].components[0].spec.h(), Some(1));
    }

    #[test]
    fn rejects_mismatched_units() {
        assert!(plan_chain(&[group(&[2], &[1]), group(&[4], &[1])], &[vec![vec![2]]]).is_err());
        assert!(plan_chain(&[group(&[2], &[1]), group(&[0], &[1])], &[vec![vec![1]]]).is_err());
        assert!(CyclicTag::new(1).is_err());
    }
}
