//! Box-kite candidates: enumeration, viability classification, sails,
//! vizier identities, and the hide/fill bit probe.
//!
//! A candidate box-kite is the orbit of an L-trip avoiding `S` under
//! pairwise XOR with `S`: four trips sharing six L-indices, one trip per
//! sail. Viability is all-or-nothing: either all 12 non-strut vertex pairs
//! are DMZs or none are. Viable kites come in two flavours (0 or 2 struts
//! with reversed orientation); candidates with an odd reversal count carry
//! no DMZs at all and are *hidden*.

use std::collections::{BTreeMap, BTreeSet};

use crate::algebra::{basis_product, is_cpo, trip_cpo, Sign, Trip};
use crate::error::{Error, Result};
use crate::zd::{dmz_test, Assessor, EdgeSign, StrutContext};

/// Classification of a candidate box-kite.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    TypeI,
    TypeII,
    /// No DMZ edges; payload is the raw strut-reversal count (1 or 3)
    /// measured against the recorded zigzag designation.
    Hidden(u8),
}

impl Kind {
    pub fn is_viable(&self) -> bool {
        matches!(self, Kind::TypeI | Kind::TypeII)
    }
}

impl std::fmt::Display for Kind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Kind::TypeI => write!(f, "type-I"),
            Kind::TypeII => write!(f, "type-II"),
            Kind::Hidden(k) => write!(f, "hidden({k})"),
        }
    }
}

/// Six assessors on octahedral vertices. The zigzag trip carries the letter
/// assignment: A, B, C are the zigzag vertices (smallest L-index first, CPO
/// order) and F, E, D their strut-opposites.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BoxKite {
    strut: StrutContext,
    /// Zigzag L-trip (a, b, c). For viable kites this is the unique sail all
    /// of whose edges carry negative edge-sign; for hidden kites it is the
    /// orbit's generating trip and no DMZ claims attach.
    zigzag: (u32, u32, u32),
    kind: Kind,
}

impl BoxKite {
    pub fn strut_context(&self) -> &StrutContext {
        &self.strut
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn zigzag(&self) -> (u32, u32, u32) {
        self.zigzag
    }

    /// L-indices in letter order a, b, c, d, e, f (d = c^S, e = b^S, f = a^S).
    pub fn letters(&self) -> [u32; 6] {
        let (a, b, c) = self.zigzag;
        let s = self.strut.strut();
        [a, b, c, c ^ s, b ^ s, a ^ s]
    }

    /// Vertex assessors in letter order A, B, C, D, E, F.
    pub fn vertices(&self) -> [Assessor; 6] {
        self.letters()
            .map(|u| self.strut.assessor(u).expect("letters are valid L-indices"))
    }

    /// Strut pairs (A,F), (B,E), (C,D) as L-index pairs.
    pub fn strut_pairs(&self) -> [(u32, u32); 3] {
        let [a, b, c, d, e, f] = self.letters();
        [(a, f), (b, e), (c, d)]
    }

    /// The twelve non-strut vertex pairs as L-index pairs: zigzag face, vent
    /// face, then the two outer edges of each trefoil.
    pub fn edges(&self) -> [(u32, u32); 12] {
        let [a, b, c, d, e, f] = self.letters();
        [
            (a, b), (b, c), (c, a), // zigzag face
            (d, e), (e, f), (f, d), // vent face
            (a, d), (a, e),         // trefoil (a, d, e)
            (f, c), (c, e),         // trefoil (f, c, e)
            (f, b), (b, d),         // trefoil (f, d, b)
        ]
    }

    /// The four sail L-trips (zigzag first) as canonical trips.
    pub fn sail_trips(&self) -> Result<[Trip; 4]> {
        let [a, b, c, d, e, f] = self.letters();
        Ok([
            Trip::new(a, b, c)?,
            Trip::new(a, d, e)?,
            Trip::new(f, c, e)?,
            Trip::new(f, d, b)?,
        ])
    }
}

/// Sails of a box-kite: the zigzag plus the three trefoils in conventional
/// letter order (a,d,e), (f,c,e), (f,d,b). For functional kites those letter
/// tuples are CPO cycles; when a leading letter is not the smallest index of
/// its trip the sail is *precessed*.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SailSet {
    pub zigzag: (u32, u32, u32),
    pub ade: (u32, u32, u32),
    pub fce: (u32, u32, u32),
    pub fdb: (u32, u32, u32),
    pub precessed: bool,
    /// False for hidden kites: the zigzag designation comes from the
    /// generating orbit only and no DMZ claims attach.
    pub functional: bool,
}

/// Zigzag and trefoil L-trips in letter order.
pub fn sails(bk: &BoxKite) -> Result<SailSet> {
    let [a, b, c, d, e, f] = bk.letters();
    let ade = (a, d, e);
    let fce = (f, c, e);
    let fdb = (f, d, b);
    let functional = bk.kind().is_viable();
    if functional {
        for t in [ade, fce, fdb] {
            if !is_cpo(t.0, t.1, t.2)? {
                return Err(Error::Invariant(format!(
                    "trefoil letter cycle {t:?} of kite {:?} is not CPO",
                    bk.zigzag
                )));
            }
        }
    }
    let min3 = |t: (u32, u32, u32)| t.0.min(t.1).min(t.2);
    let precessed = [ade, fce, fdb].iter().any(|t| t.0 != min3(*t));
    Ok(SailSet { zigzag: bk.zigzag, ade, fce, fdb, precessed, functional })
}

/// Per-strut vizier data. The index checks are the unsigned statements
/// (expected to hold universally); signs record the orientation found.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VizierStrut {
    pub zigzag_l: u32,
    pub vent_l: u32,
    /// v·z and V·Z land on index S.
    pub vz1_index_ok: bool,
    pub vz1_sign: Sign,
    pub vz1_sign_upper: Sign,
    /// Z·v = V·z = +G holds signed at every level.
    pub vz2_ok: bool,
    /// V·v and z·Z land on index X.
    pub vz3_index_ok: bool,
    pub vz3_sign_vv: Sign,
    pub vz3_sign_zz: Sign,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ViziersReport {
    pub struts: [VizierStrut; 3],
}

impl ViziersReport {
    pub fn unsigned_ok(&self) -> bool {
        self.struts.iter().all(|s| s.vz1_index_ok && s.vz3_index_ok)
    }

    pub fn vz2_ok(&self) -> bool {
        self.struts.iter().all(|s| s.vz2_ok)
    }

    /// Struts whose signed first-vizier orientation is reversed.
    pub fn reversal_count(&self) -> u8 {
        self.struts.iter().filter(|s| s.vz1_sign == Sign::Minus).count() as u8
    }

    pub fn all_plus(&self) -> bool {
        self.struts.iter().all(|s| {
            s.vz1_sign == Sign::Plus
                && s.vz1_sign_upper == Sign::Plus
                && s.vz3_sign_vv == Sign::Plus
                && s.vz3_sign_zz == Sign::Plus
        })
    }
}

/// Verifies the three vizier identities on every strut of a candidate.
pub fn viziers_check(bk: &BoxKite) -> Result<ViziersReport> {
    let strut = *bk.strut_context();
    let ctx = strut.ctx();
    let s = strut.strut();
    let g = strut.generator();
    let x = strut.x();
    let mut out = Vec::with_capacity(3);
    for (z, v) in bk.strut_pairs() {
        let az = strut.assessor(z)?;
        let av = strut.assessor(v)?;
        let (zz, vv) = (az.high, av.high);
        let p_vz = basis_product(ctx, v, z)?;
        let p_vz_upper = basis_product(ctx, vv, zz)?;
        let p_zv = basis_product(ctx, zz, v)?;
        let p_vzl = basis_product(ctx, vv, z)?;
        let p_vvl = basis_product(ctx, vv, v)?;
        let p_zzu = basis_product(ctx, z, zz)?;
        out.push(VizierStrut {
            zigzag_l: z,
            vent_l: v,
            vz1_index_ok: p_vz.index == s && p_vz_upper.index == s,
            vz1_sign: p_vz.sign,
            vz1_sign_upper: p_vz_upper.sign,
            vz2_ok: p_zv.index == g
                && p_zv.sign == Sign::Plus
                && p_vzl.index == g
                && p_vzl.sign == Sign::Plus,
            vz3_index_ok: p_vvl.index == x && p_zzu.index == x,
            vz3_sign_vv: p_vvl.sign,
            vz3_sign_zz: p_zzu.sign,
        });
    }
    Ok(ViziersReport { struts: [out[0], out[1], out[2]] })
}

fn orbit_sorted(t: [u32; 3], s: u32) -> [[u32; 3]; 4] {
    let sort3 = |mut v: [u32; 3]| {
        v.sort_unstable();
        v
    };
    let [x, y, z] = t;
    let mut orbit = [
        sort3([x, y, z]),
        sort3([x, y ^ s, z ^ s]),
        sort3([x ^ s, y, z ^ s]),
        sort3([x ^ s, y ^ s, z]),
    ];
    orbit.sort_unstable();
    orbit
}

fn strut_reversals(strut: &StrutContext, zigzag: (u32, u32, u32)) -> Result<u8> {
    let s = strut.strut();
    let mut reversed = 0;
    for z in [zigzag.0, zigzag.1, zigzag.2] {
        let v = z ^ s;
        let p = basis_product(strut.ctx(), v, z)?;
        if p.index != s {
            return Err(Error::Invariant(format!("strut product {v}x{z} missed index {s}")));
        }
        if p.sign == Sign::Minus {
            reversed += 1;
        }
    }
    Ok(reversed)
}

/// Builds and classifies the candidate generated by `generating`, which must
/// be the canonical (lexicographically smallest) trip of its orbit.
fn build_candidate(strut: &StrutContext, generating: Trip) -> Result<BoxKite> {
    let s = strut.strut();
    let provisional = BoxKite { strut: *strut, zigzag: generating.as_tuple(), kind: Kind::TypeI };

    // Edge-sign survey over the 12 non-strut pairs.
    let mut signs: BTreeMap<(u32, u32), Option<EdgeSign>> = BTreeMap::new();
    let mut dmz_edges = 0usize;
    for (u, v) in provisional.edges() {
        let w = dmz_test(strut, &strut.assessor(u)?, &strut.assessor(v)?)?;
        if w.is_some() {
            dmz_edges += 1;
        }
        let key = (u.min(v), u.max(v));
        signs.insert(key, w.map(|w| w.edge_sign));
    }

    match dmz_edges {
        0 => {
            let k = strut_reversals(strut, generating.as_tuple())?;
            if k % 2 == 0 {
                return Err(Error::Invariant(format!(
                    "hidden candidate {generating} has even reversal count {k}"
                )));
            }
            Ok(BoxKite { strut: *strut, zigzag: generating.as_tuple(), kind: Kind::Hidden(k) })
        }
        12 => {
            // The zigzag is the unique sail whose three edges are all negative.
            let orbit = orbit_sorted(generating.sorted(), s);
            let mut zigzag = None;
            for t in orbit {
                let pairs = [(t[0], t[1]), (t[1], t[2]), (t[0], t[2])];
                let all_negative = pairs
                    .iter()
                    .all(|p| matches!(signs.get(p), Some(Some(EdgeSign::Negative))));
                if all_negative {
                    if zigzag.is_some() {
                        return Err(Error::Invariant(format!(
                            "candidate {generating} has two all-negative sails"
                        )));
                    }
                    zigzag = Some(trip_cpo(t[0], t[1], t[2])?);
                }
            }
            let zigzag = zigzag.ok_or_else(|| {
                Error::Invariant(format!("viable candidate {generating} has no all-negative sail"))
            })?;
            let k = strut_reversals(strut, zigzag)?;
            let kind = match k {
                0 => Kind::TypeI,
                2 => Kind::TypeII,
                _ => {
                    return Err(Error::Invariant(format!(
                        "viable candidate {generating} has reversal count {k}"
                    )))
                }
            };
            Ok(BoxKite { strut: *strut, zigzag, kind })
        }
        partial => Err(Error::Invariant(format!(
            "candidate {generating} has {partial} of 12 DMZ edges"
        ))),
    }
}

/// All candidate box-kites for a strut context: one per six-index orbit,
/// classified. Count is always Trip_(N-2) = (2^(N-2)-1)(2^(N-2)-2)/6.
pub fn enumerate_candidates(strut: &StrutContext) -> Result<Vec<BoxKite>> {
    let g = strut.generator();
    let s = strut.strut();
    let mut seen: BTreeSet<[u32; 3]> = BTreeSet::new();
    let mut out = Vec::new();
    for a in 1..g {
        if a == s {
            continue;
        }
        for b in (a + 1)..g {
            if b == s {
                continue;
            }
            let c = a ^ b;
            if c <= b || c >= g || c == s {
                continue;
            }
            let orbit = orbit_sorted([a, b, c], s);
            if !seen.insert(orbit[0]) {
                continue;
            }
            let generating = Trip::new(orbit[0][0], orbit[0][1], orbit[0][2])?;
            out.push(build_candidate(strut, generating)?);
        }
    }
    Ok(out)
}

/// Recomputes the classification of a candidate from scratch.
pub fn classify_boxkite(bk: &BoxKite) -> Result<Kind> {
    let strut = bk.strut_context();
    let generating = {
        let (a, b, c) = bk.zigzag();
        let orbit = orbit_sorted([a, b, c], strut.strut());
        Trip::new(orbit[0][0], orbit[0][1], orbit[0][2])?
    };
    Ok(build_candidate(strut, generating)?.kind())
}

/// DMZ status of the assessor pair (u, v) as the strut constant is augmented
/// by each prefix of `added_bits`. Index 0 of the result is the base status.
///
/// Bits must be fresh powers of two strictly above every bit already in the
/// (accumulated) strut constant. The context is enlarged when an augmented
/// constant no longer fits below G.
pub fn hidefill_probe(
    strut: &StrutContext,
    u: u32,
    v: u32,
    added_bits: &[u32],
) -> Result<Vec<bool>> {
    let mut s_acc = strut.strut();
    let mut statuses = Vec::with_capacity(added_bits.len() + 1);
    statuses.push(probe_status(strut.n(), s_acc, u, v)?);
    for &bit in added_bits {
        if bit == 0 || !bit.is_power_of_two() || bit <= s_acc {
            return Err(Error::BitCollision { bit, s: s_acc });
        }
        s_acc |= bit;
        statuses.push(probe_status(strut.n(), s_acc, u, v)?);
    }
    Ok(statuses)
}

fn probe_status(n: u32, s: u32, u: u32, v: u32) -> Result<bool> {
    let needed = 32 - s.leading_zeros() + 2; // top bit position + 2
    let n_eff = n.max(needed);
    let strut = StrutContext::new(n_eff, s)?;
    let a = strut.assessor(u)?;
    let b = strut.assessor(v)?;
    Ok(dmz_test(&strut, &a, &b)?.is_some())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn strut(n: u32, s: u32) -> StrutContext {
        StrutContext::new(n, s).unwrap()
    }

    #[test]
    fn candidate_counts_match_trip_formula() {
        for s in 1..8 {
            assert_eq!(enumerate_candidates(&strut(4, s)).unwrap().len(), 1);
        }
        assert_eq!(enumerate_candidates(&strut(5, 9)).unwrap().len(), 7);
        assert_eq!(enumerate_candidates(&strut(6, 25)).unwrap().len(), 35);
        assert_eq!(enumerate_candidates(&strut(7, 57)).unwrap().len(), 155);
    }

    #[test]
    fn sedenion_kite_is_type_i_with_expected_letters() {
        let kites = enumerate_candidates(&strut(4, 1)).unwrap();
        assert_eq!(kites.len(), 1);
        let bk = &kites[0];
        assert_eq!(bk.kind(), Kind::TypeI);
        assert_eq!(bk.zigzag(), (3, 6, 5));
        assert_eq!(bk.letters(), [3, 6, 5, 4, 7, 2]);
        let verts = bk.vertices();
        assert_eq!((verts[0].low, verts[0].high), (3, 10));
        assert_eq!((verts[1].low, verts[1].high), (6, 15));
    }

    #[test]
    fn sedenion_viziers_hold_with_plus_signs() {
        let kites = enumerate_candidates(&strut(4, 1)).unwrap();
        let rep = viziers_check(&kites[0]).unwrap();
        assert!(rep.unsigned_ok());
        assert!(rep.vz2_ok());
        assert!(rep.all_plus());
        assert_eq!(rep.reversal_count(), 0);
    }

    #[test]
    fn pathion_sand_mandala_splits_three_viable_four_hidden() {
        let kites = enumerate_candidates(&strut(5, 9)).unwrap();
        let viable: Vec<_> = kites.iter().filter(|k| k.kind().is_viable()).collect();
        let hidden: Vec<_> = kites.iter().filter(|k| !k.kind().is_viable()).collect();
        assert_eq!(viable.len(), 3);
        assert_eq!(hidden.len(), 4);
        // Three trefoil-derived hidden kites show one reversal, the
        // zigzag-derived one shows three.
        let mut ks: Vec<u8> = hidden
            .iter()
            .map(|k| match k.kind() {
                Kind::Hidden(k) => k,
                _ => unreachable!(),
            })
            .collect();
        ks.sort_unstable();
        assert_eq!(ks, vec![1, 1, 1, 3]);
        // The triple-reversal orbit is generated by the sedenion S=1 zigzag.
        let triple = hidden
            .iter()
            .find(|k| matches!(k.kind(), Kind::Hidden(3)))
            .unwrap();
        let mut z = [triple.zigzag().0, triple.zigzag().1, triple.zigzag().2];
        z.sort_unstable();
        assert_eq!(z, [3, 5, 6]);
        // Unsigned viziers hold even for hidden candidates.
        for k in &kites {
            let rep = viziers_check(k).unwrap();
            assert!(rep.unsigned_ok());
            assert!(rep.vz2_ok());
        }
    }

    #[test]
    fn pathion_low_strut_type_ii_kites_come_from_sedenion_zigzags() {
        for s in 1..8 {
            let sed = enumerate_candidates(&strut(4, s)).unwrap();
            let (za, zb, zc) = sed[0].zigzag();
            // Rule 2 sides of the sedenion zigzag placed around an excluded 8.
            let sides: Vec<[u32; 3]> = [
                [za, zb ^ 8, zc ^ 8],
                [za ^ 8, zb, zc ^ 8],
                [za ^ 8, zb ^ 8, zc],
            ]
            .iter()
            .map(|t| {
                let mut t = *t;
                t.sort_unstable();
                t
            })
            .collect();

            let kites = enumerate_candidates(&strut(5, s)).unwrap();
            assert_eq!(kites.len(), 7);
            let mut type_i = 0;
            let mut type_ii = 0;
            for k in &kites {
                assert!(k.kind().is_viable(), "S={s} kite {:?}", k.zigzag());
                let has_eight = k.letters().contains(&8);
                let mut zset = [k.zigzag().0, k.zigzag().1, k.zigzag().2];
                zset.sort_unstable();
                match k.kind() {
                    Kind::TypeI => {
                        type_i += 1;
                        // Strongboxes (8 among the L-indices) are always
                        // type-I; the one low kite is the zero-padded
                        // sedenion kite itself.
                        if !has_eight {
                            let mut sed_z = [za, zb, zc];
                            sed_z.sort_unstable();
                            assert_eq!(zset, sed_z, "S={s}");
                        }
                    }
                    Kind::TypeII => {
                        type_ii += 1;
                        assert!(!has_eight, "type-II kite with 8 at S={s}");
                        assert!(sides.contains(&zset), "S={s} zigzag {zset:?}");
                    }
                    Kind::Hidden(_) => unreachable!(),
                }
            }
            assert_eq!((type_i, type_ii), (4, 3), "S={s}");
        }
    }

    #[test]
    fn chingon_payload_sails_are_precessed() {
        let kites = enumerate_candidates(&strut(6, 17)).unwrap();
        let bk = kites
            .iter()
            .find(|k| {
                let mut z = [k.zigzag().0, k.zigzag().1, k.zigzag().2];
                z.sort_unstable();
                z == [2, 16, 18]
            })
            .expect("zigzag (2,16,18) kite exists");
        assert!(bk.kind().is_viable());
        let s = sails(bk).unwrap();
        assert_eq!(s.zigzag, (2, 16, 18));
        assert_eq!(s.ade, (2, 3, 1));
        assert_eq!(s.fce, (19, 18, 1));
        assert_eq!(s.fdb, (19, 3, 16));
        assert!(s.precessed);
        assert!(s.functional);
    }

    #[test]
    fn sedenion_sails_not_precessed() {
        let kites = enumerate_candidates(&strut(4, 1)).unwrap();
        let s = sails(&kites[0]).unwrap();
        assert_eq!(s.ade, (3, 4, 7));
        assert_eq!(s.fce, (2, 5, 7));
        assert_eq!(s.fdb, (2, 4, 6));
        assert!(!s.precessed);
    }

    #[test]
    fn hidefill_probe_toggles_and_restores() {
        let base = strut(6, 1);
        assert_eq!(hidefill_probe(&base, 3, 6, &[]).unwrap(), vec![true]);
        assert_eq!(hidefill_probe(&base, 3, 6, &[16]).unwrap(), vec![true, false]);
        assert_eq!(
            hidefill_probe(&base, 3, 6, &[8, 16]).unwrap(),
            vec![true, false, true]
        );
    }

    #[test]
    fn hidefill_probe_rejects_colliding_bits() {
        let base = strut(6, 9);
        assert!(hidefill_probe(&base, 3, 6, &[8]).is_err());
        assert!(hidefill_probe(&base, 3, 6, &[4]).is_err());
        assert!(hidefill_probe(&base, 3, 6, &[16, 16]).is_err());
        assert!(hidefill_probe(&base, 3, 6, &[12]).is_err());
    }

    #[test]
    fn classify_recomputation_is_stable() {
        for s in [1, 9, 12] {
            for bk in enumerate_candidates(&strut(5, s)).unwrap() {
                assert_eq!(classify_boxkite(&bk).unwrap(), bk.kind());
            }
        }
    }
}
