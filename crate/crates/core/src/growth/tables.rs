//! Static classification data for torsion over the rationals, quadratic
//! fields and the maximal elementary abelian 2-extension.

use crate::torsion::GroupStructure;

const fn c(m: u32) -> GroupStructure {
    GroupStructure::cyclic(m)
}

const fn cc(n: u32, m: u32) -> GroupStructure {
    GroupStructure::of(n, m)
}

/// Torsion groups of rational elliptic curves.
pub const PHI1: [GroupStructure; 15] = [
    c(1), c(2), c(3), c(4), c(5), c(6), c(7), c(8), c(9), c(10), c(12),
    cc(2, 2), cc(2, 4), cc(2, 6), cc(2, 8),
];

/// Torsion groups of elliptic curves over quadratic fields.
pub const PHI2: [GroupStructure; 26] = [
    c(1), c(2), c(3), c(4), c(5), c(6), c(7), c(8), c(9), c(10), c(11), c(12), c(13), c(14),
    c(15), c(16), c(18),
    cc(2, 2), cc(2, 4), cc(2, 6), cc(2, 8), cc(2, 10), cc(2, 12),
    cc(3, 3), cc(3, 6), cc(4, 4),
];

/// Torsion groups over quadratic fields of curves defined over the rationals.
pub const PHI_Q2: [GroupStructure; 22] = [
    c(1), c(2), c(3), c(4), c(5), c(6), c(7), c(8), c(9), c(10), c(12), c(15), c(16),
    cc(2, 2), cc(2, 4), cc(2, 6), cc(2, 8), cc(2, 10), cc(2, 12),
    cc(3, 3), cc(3, 6), cc(4, 4),
];

/// Torsion groups over the maximal elementary abelian 2-extension.
pub const PHI_Q_2INF: [GroupStructure; 20] = [
    c(1), c(3), c(5), c(7), c(9), c(15),
    cc(2, 2), cc(2, 4), cc(2, 6), cc(2, 8), cc(2, 10), cc(2, 12), cc(2, 16),
    cc(3, 3),
    cc(4, 4), cc(4, 8), cc(4, 12), cc(4, 16),
    cc(6, 6), cc(8, 8),
];

struct GrowthEntry {
    g: GroupStructure,
    phi: &'static [GroupStructure],
    counts: &'static [(GroupStructure, &'static [u32])],
    sets: &'static [&'static [GroupStructure]],
}

const GROWTH: [GrowthEntry; 15] = [
    GrowthEntry {
        g: c(1),
        phi: &[c(1), c(3), c(5), c(7), c(9)],
        counts: &[(c(3), &[1, 2]), (c(5), &[1]), (c(7), &[1]), (c(9), &[1])],
        sets: &[&[c(3)], &[c(5)], &[c(7)], &[c(9)], &[c(3), c(3)], &[c(3), c(5)]],
    },
    GrowthEntry {
        g: c(2),
        phi: &[c(2), c(4), c(6), c(8), c(10), c(12), c(16), cc(2, 2), cc(2, 6), cc(2, 10)],
        counts: &[
            (c(4), &[1, 2]),
            (c(6), &[1, 2]),
            (c(8), &[1, 2]),
            (c(10), &[1]),
            (c(12), &[1]),
            (c(16), &[1]),
            (cc(2, 2), &[1]),
            (cc(2, 6), &[1]),
            (cc(2, 10), &[1]),
        ],
        sets: &[
            &[cc(2, 2)],
            &[cc(2, 6)],
            &[cc(2, 10)],
            &[cc(2, 2), c(6)],
            &[cc(2, 2), c(10)],
            &[cc(2, 6), c(6)],
            &[cc(2, 2), c(4), c(4)],
            &[cc(2, 2), c(6), c(6)],
            &[cc(2, 2), c(8), c(8)],
            &[cc(2, 2), c(4), c(8)],
            &[cc(2, 2), c(4), c(12)],
            &[cc(2, 2), c(4), c(16)],
            &[cc(2, 6), c(4), c(4)],
            &[cc(2, 2), c(4), c(4), c(6)],
        ],
    },
    GrowthEntry {
        g: c(3),
        phi: &[c(3), c(15), cc(3, 3)],
        counts: &[(c(15), &[1]), (cc(3, 3), &[1])],
        sets: &[&[c(15)], &[cc(3, 3)]],
    },
    GrowthEntry {
        g: c(4),
        phi: &[c(4), c(8), c(12), cc(2, 4), cc(2, 8), cc(2, 12), cc(4, 4)],
        counts: &[
            (c(8), &[2]),
            (c(12), &[1]),
            (cc(2, 4), &[1]),
            (cc(2, 8), &[1]),
            (cc(2, 12), &[1]),
            (cc(4, 4), &[1]),
        ],
        sets: &[
            &[cc(2, 4)],
            &[cc(2, 8)],
            &[cc(2, 12)],
            &[cc(4, 4)],
            &[cc(2, 4), c(12)],
            &[cc(2, 4), c(8), c(8)],
            &[cc(2, 8), c(8), c(8)],
        ],
    },
    GrowthEntry {
        g: c(5),
        phi: &[c(5), c(15)],
        counts: &[(c(15), &[1])],
        sets: &[&[c(15)]],
    },
    GrowthEntry {
        g: c(6),
        phi: &[c(6), c(12), cc(2, 6), cc(3, 6)],
        counts: &[(c(12), &[2]), (cc(2, 6), &[1]), (cc(3, 6), &[1])],
        sets: &[&[cc(2, 6)], &[cc(2, 6), cc(3, 6)], &[cc(2, 6), c(12), c(12)]],
    },
    GrowthEntry { g: c(7), phi: &[c(7)], counts: &[], sets: &[] },
    GrowthEntry {
        g: c(8),
        phi: &[c(8), c(16), cc(2, 8)],
        counts: &[(c(16), &[2]), (cc(2, 8), &[1])],
        sets: &[&[cc(2, 8)], &[cc(2, 8), c(16), c(16)]],
    },
    GrowthEntry { g: c(9), phi: &[c(9)], counts: &[], sets: &[] },
    GrowthEntry {
        g: c(10),
        phi: &[c(10), cc(2, 10)],
        counts: &[(cc(2, 10), &[1])],
        sets: &[&[cc(2, 10)]],
    },
    GrowthEntry {
        g: c(12),
        phi: &[c(12), cc(2, 12)],
        counts: &[(cc(2, 12), &[1])],
        sets: &[&[cc(2, 12)]],
    },
    GrowthEntry {
        g: cc(2, 2),
        phi: &[cc(2, 2), cc(2, 4), cc(2, 6), cc(2, 8), cc(2, 12)],
        counts: &[(cc(2, 4), &[1, 2, 3]), (cc(2, 6), &[1]), (cc(2, 8), &[1]), (cc(2, 12), &[1])],
        sets: &[
            &[cc(2, 4)],
            &[cc(2, 6)],
            &[cc(2, 8)],
            &[cc(2, 12)],
            &[cc(2, 4), cc(2, 4)],
            &[cc(2, 4), cc(2, 6)],
            &[cc(2, 4), cc(2, 8)],
            &[cc(2, 4), cc(2, 4), cc(2, 4)],
            &[cc(2, 4), cc(2, 4), cc(2, 8)],
        ],
    },
    GrowthEntry {
        g: cc(2, 4),
        phi: &[cc(2, 4), cc(2, 8), cc(4, 4)],
        counts: &[(cc(2, 8), &[1, 2]), (cc(4, 4), &[1])],
        sets: &[
            &[cc(2, 8)],
            &[cc(4, 4)],
            &[cc(2, 8), cc(4, 4)],
            &[cc(2, 8), cc(2, 8)],
            &[cc(2, 8), cc(2, 8), cc(4, 4)],
        ],
    },
    GrowthEntry {
        g: cc(2, 6),
        phi: &[cc(2, 6), cc(2, 12)],
        counts: &[(cc(2, 12), &[1])],
        sets: &[&[cc(2, 12)]],
    },
    GrowthEntry { g: cc(2, 8), phi: &[cc(2, 8)], counts: &[], sets: &[] },
];

/// Read-only access to the classification tables.
#[derive(Clone, Copy, Debug, Default)]
pub struct ClassificationTables;

impl ClassificationTables {
    pub fn phi1(&self) -> &'static [GroupStructure] {
        &PHI1
    }

    pub fn phi2(&self) -> &'static [GroupStructure] {
        &PHI2
    }

    pub fn phi_q2(&self) -> &'static [GroupStructure] {
        &PHI_Q2
    }

    pub fn phi_q_2inf(&self) -> &'static [GroupStructure] {
        &PHI_Q_2INF
    }

    fn entry(&self, g: &GroupStructure) -> Option<&'static GrowthEntry> {
        GROWTH.iter().find(|e| e.g == *g)
    }

    /// Possible torsion over quadratic fields for rational torsion `g`.
    pub fn phi_q2_of(&self, g: &GroupStructure) -> &'static [GroupStructure] {
        self.entry(g).map_or(&[], |e| e.phi)
    }

    /// Allowed numbers of quadratic fields with torsion exactly `h`.
    pub fn h_counts(&self, g: &GroupStructure, h: &GroupStructure) -> &'static [u32] {
        self.entry(g)
            .and_then(|e| e.counts.iter().find(|(k, _)| k == h))
            .map_or(&[], |(_, v)| v)
    }

    /// Growth pairs `(H, allowed counts)` for `g`.
    pub fn h_table(&self, g: &GroupStructure) -> &'static [(GroupStructure, &'static [u32])] {
        self.entry(g).map_or(&[], |e| e.counts)
    }

    /// Whether rational torsion `g` can see no growth at all.
    ///
    /// Cyclic groups of even order always gain full 2-torsion over the
    /// field of the discriminant. `C2xC2` need not grow: `y^2 = x(x-3)(x-6)`.
    pub fn allows_empty(&self, g: &GroupStructure) -> bool {
        !(g.is_cyclic() && g.order().is_multiple_of(2))
    }

    /// Every realizable growth multiset, each sorted ascending.
    pub fn h_sets(&self, g: &GroupStructure) -> Vec<Vec<GroupStructure>> {
        let mut out: Vec<Vec<GroupStructure>> = Vec::new();
        if self.allows_empty(g) {
            out.push(Vec::new());
        }
        if let Some(e) = self.entry(g) {
            for s in e.sets {
                let mut v = s.to_vec();
                v.sort();
                out.push(v);
            }
        }
        out
    }

    /// Membership of a multiset, in any order.
    pub fn is_h_set(&self, g: &GroupStructure, s: &[GroupStructure]) -> bool {
        let mut v = s.to_vec();
        v.sort();
        self.h_sets(g).contains(&v)
    }

    /// Whether `h` is a subgroup of one of the twenty groups.
    pub fn embeds_in_phi_q_2inf(&self, h: &GroupStructure) -> bool {
        PHI_Q_2INF.iter().any(|k| h.embeds_in(k))
    }

    /// The two growth shapes known to realize more than one tower torsion.
    pub fn is_exceptional_shape(&self, g: &GroupStructure, s: &[GroupStructure]) -> bool {
        let mut v = s.to_vec();
        v.sort();
        (*g == c(2) && v == [c(4), c(4), cc(2, 2)]) || (*g == cc(2, 2) && v == [cc(2, 4), cc(2, 4)])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const T: ClassificationTables = ClassificationTables;

    #[test]
    fn table_lookups() {
        assert_eq!(T.phi_q2_of(&c(7)), &[c(7)]);
        assert_eq!(T.h_counts(&cc(2, 2), &cc(2, 4)), &[1, 2, 3]);
        assert_eq!(T.h_counts(&c(1), &c(3)), &[1, 2]);
        let mut want = vec![vec![cc(2, 8)], vec![c(16), c(16), cc(2, 8)]];
        for v in &mut want {
            v.sort();
        }
        assert_eq!(T.h_sets(&c(8)), want);
        assert!(!T.is_h_set(&c(3), &[c(15), cc(3, 3)]));
        assert!(T.is_h_set(&c(1), &[]));
        assert!(!T.is_h_set(&c(2), &[]));
    }

    #[test]
    fn tables_are_coherent() {
        for g in PHI1 {
            let phi = T.phi_q2_of(&g);
            assert!(phi.contains(&g), "{g:?}");
            for h in phi {
                assert!(PHI_Q2.contains(h));
                assert!(PHI2.contains(h));
                assert!(g.embeds_in(h));
            }
            for (h, counts) in T.h_table(&g) {
                assert!(*h != g && phi.contains(h));
                assert!(!counts.is_empty());
            }
            for s in T.h_sets(&g) {
                assert!(s.len() <= 4);
                for h in &s {
                    assert!(*h != g && phi.contains(h));
                    let k = s.iter().filter(|x| *x == h).count() as u32;
                    assert!(T.h_counts(&g, h).contains(&k), "{g:?} {s:?}");
                }
            }
        }
        assert_eq!(T.h_sets(&c(2)).iter().map(Vec::len).max(), Some(4));
    }
}
