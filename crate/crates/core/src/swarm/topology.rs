//! Forward ring topology with contiguous sub-neighbourhood blocks.

use crate::error::{Error, Result};

/// Static neighbourhood structure: who informs whom, and which coefficient
/// set governs each particle.
#[derive(Debug, Clone)]
pub struct Topology {
    neighbourhoods: Vec<Vec<usize>>,
    subgroup_of: Vec<usize>,
    n_subgroups: usize,
}

/// Builds the forward topology: particles on a directed ring where particle
/// `i` is informed by itself and the next `links_per_particle` particles.
/// Subgroup membership assigns contiguous blocks of `ceil(N / n_subgroups)`
/// particles to coefficient sets in order.
pub fn build_forward_topology(
    n_particles: usize,
    n_subgroups: usize,
    links_per_particle: usize,
) -> Result<Topology> {
    if n_particles == 0 {
        return Err(Error::InvalidTopology("at least one particle"));
    }
    if n_subgroups == 0 || n_subgroups > n_particles {
        return Err(Error::InvalidTopology(
            "between 1 and n_particles subgroups",
        ));
    }
    if links_per_particle == 0 {
        return Err(Error::InvalidTopology("at least one forward link"));
    }

    let neighbourhoods = (0..n_particles)
        .map(|i| {
            let mut members: Vec<usize> = (0..=links_per_particle)
                .map(|k| (i + k) % n_particles)
                .collect();
            members.sort_unstable();
            members.dedup();
            members
        })
        .collect();

    let block = n_particles.div_ceil(n_subgroups);
    let subgroup_of = (0..n_particles).map(|i| i / block).collect();

    Ok(Topology {
        neighbourhoods,
        subgroup_of,
        n_subgroups,
    })
}

impl Topology {
    pub fn n_particles(&self) -> usize {
        self.neighbourhoods.len()
    }

    pub fn n_subgroups(&self) -> usize {
        self.n_subgroups
    }

    /// Informer indices of particle `i` (always includes `i`), ascending.
    pub fn neighbourhood(&self, i: usize) -> &[usize] {
        &self.neighbourhoods[i]
    }

    /// Index into the coefficient-set list for particle `i`.
    pub fn subgroup_of(&self, i: usize) -> usize {
        self.subgroup_of[i]
    }

    /// The neighbourhood member with the lowest penalized best experience;
    /// ties resolve to the lowest particle index.
    pub fn lbest_index(&self, i: usize, pbest_penalized: &[f64]) -> usize {
        let mut best = self.neighbourhoods[i][0];
        for &j in &self.neighbourhoods[i][1..] {
            if pbest_penalized[j] < pbest_penalized[best]
                || (pbest_penalized[j] == pbest_penalized[best] && j < best)
            {
                best = j;
            }
        }
        best
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::collections::VecDeque;

    #[test]
    fn six_particle_example() {
        let t = build_forward_topology(6, 3, 2).unwrap();
        assert_eq!(t.neighbourhood(0), &[0, 1, 2]);
        assert_eq!(t.neighbourhood(4), &[0, 4, 5]);
        let groups: Vec<usize> = (0..6).map(|i| t.subgroup_of(i)).collect();
        assert_eq!(groups, vec![0, 0, 1, 1, 2, 2]);
    }

    #[test]
    fn degenerate_single_particle() {
        let t = build_forward_topology(1, 1, 2).unwrap();
        assert_eq!(t.neighbourhood(0), &[0]);
        assert_eq!(t.subgroup_of(0), 0);
    }

    #[test]
    fn invalid_parameters_rejected() {
        assert!(build_forward_topology(0, 1, 2).is_err());
        assert!(build_forward_topology(5, 6, 2).is_err());
        assert!(build_forward_topology(5, 0, 2).is_err());
        assert!(build_forward_topology(5, 2, 0).is_err());
    }

    #[test]
    fn lbest_prefers_lowest_index_on_ties() {
        let t = build_forward_topology(4, 1, 2).unwrap();
        // neighbourhood of 0 is {0,1,2}; 1 and 2 tie below 0
        let penalized = [5.0, 1.0, 1.0, 0.0];
        assert_eq!(t.lbest_index(0, &penalized), 1);
    }

    fn is_connected(t: &Topology) -> bool {
        // treat "j informs i" as an edge i -> j and check reachability both
        // ways through the union (information propagates around the ring)
        let n = t.n_particles();
        let mut adj = vec![Vec::new(); n];
        for i in 0..n {
            for &j in t.neighbourhood(i) {
                if i != j {
                    adj[i].push(j);
                    adj[j].push(i);
                }
            }
        }
        let mut seen = vec![false; n];
        let mut queue = VecDeque::from([0usize]);
        seen[0] = true;
        while let Some(i) = queue.pop_front() {
            for &j in &adj[i] {
                if !seen[j] {
                    seen[j] = true;
                    queue.push_back(j);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    proptest! {
        #[test]
        fn ring_is_connected(n in 1usize..40, links in 1usize..6) {
            let t = build_forward_topology(n, 1, links).unwrap();
            prop_assert!(is_connected(&t));
            for i in 0..n {
                prop_assert!(t.neighbourhood(i).contains(&i));
            }
        }
    }
}
