mod common;

use common::{elem, histogram, NaiveField};
use powermap_spectra::poly::irreducible_polynomials;
use powermap_spectra::spectra::{
    bct_oracle_entry, bct_oracle_row, boomerang_histogram, boomerang_row, boomerang_spectrum,
    boomerang_uniformity, ddt_entry_in_row, ddt_oracle_entry, derivative_histogram,
    differential_spectrum, differential_uniformity, locally_apn,
};
use powermap_spectra::{FieldCtx, FieldElem, PowerMapSpec, SpectrumKind};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

type Case = ((u32, u32, u64), &'static [(u64, u64)]);

fn setup(p: u32, m: u32, k: u64) -> (FieldCtx, PowerMapSpec) {
    (
        FieldCtx::build(p, m).unwrap(),
        PowerMapSpec::new(p, m, k).unwrap(),
    )
}

/// Differential spectrum by schoolbook arithmetic, sharing no code with
/// the library beyond the modulus.
fn naive_differential(ctx: &FieldCtx, d: u64) -> Vec<(u64, u64)> {
    let naive = NaiveField::like(ctx);
    let table = naive.power_table(d);
    histogram(&naive.derivative_row(&table))
}

/// Boomerang spectrum by schoolbook arithmetic and an O(N^2) pair loop.
fn naive_boomerang(ctx: &FieldCtx, d: u64) -> Vec<(u64, u64)> {
    let naive = NaiveField::like(ctx);
    let table = naive.power_table(d);
    let order = naive.order;
    let mut row = vec![0u64; order as usize - 1];
    for x in 0..order {
        for y in 0..order {
            let b = naive.sub(table[x as usize], table[y as usize]);
            let b2 = naive.sub(
                table[naive.add(x, 1) as usize],
                table[naive.add(y, 1) as usize],
            );
            if b != 0 && b == b2 {
                row[b as usize - 1] += 1;
            }
        }
    }
    histogram(&row)
}

#[test]
fn differential_spectra_match_frozen_oracle_values() {
    // frozen from naive_differential; re-derived below
    let cases: &[Case] = &[
        ((2, 3, 1), &[(0, 35), (2, 27), (4, 1), (6, 1)]),
        ((7, 1, 1), &[(0, 16), (1, 20), (2, 12), (5, 1)]),
        ((11, 1, 1), &[(0, 50), (1, 30), (2, 38), (3, 2), (9, 1)]),
    ];
    for &((p, m, k), expected) in cases {
        let (ctx, map) = setup(p, m, k);
        assert_eq!(
            naive_differential(&ctx, map.exponent()),
            expected,
            "oracle ({p},{m},{k})"
        );
        assert_eq!(
            differential_spectrum(&ctx, &map).unwrap().pairs(),
            expected,
            "({p},{m},{k})"
        );
    }
}

#[test]
fn boomerang_spectra_match_frozen_oracle_values() {
    let cases: &[Case] = &[
        ((2, 3, 1), &[(0, 33), (2, 27), (4, 3)]),
        ((2, 4, 3), &[(0, 134), (2, 121)]),
        ((11, 1, 1), &[(0, 76), (2, 44)]),
    ];
    for &((p, m, k), expected) in cases {
        let (ctx, map) = setup(p, m, k);
        assert_eq!(
            naive_boomerang(&ctx, map.exponent()),
            expected,
            "oracle ({p},{m},{k})"
        );
        assert_eq!(
            boomerang_spectrum(&ctx, &map).unwrap().pairs(),
            expected,
            "({p},{m},{k})"
        );
    }
}

#[test]
fn uniformities_and_locally_apn() {
    let (ctx, map) = setup(2, 3, 1);
    assert_eq!(
        differential_uniformity(&differential_spectrum(&ctx, &map).unwrap()).unwrap(),
        6
    );
    assert_eq!(
        boomerang_uniformity(&boomerang_spectrum(&ctx, &map).unwrap()).unwrap(),
        4
    );
    assert!(locally_apn(&ctx, &map).unwrap());

    let (ctx, map) = setup(2, 4, 3);
    assert_eq!(map.exponent(), 45);
    assert_eq!(
        boomerang_uniformity(&boomerang_spectrum(&ctx, &map).unwrap()).unwrap(),
        2
    );
    assert!(locally_apn(&ctx, &map).unwrap());

    let (ctx, map) = setup(11, 1, 1);
    assert!(locally_apn(&ctx, &map).unwrap());
}

#[test]
fn grouped_boomerang_matches_pair_oracle() {
    for (p, m, k) in [
        (2, 1, 1),
        (2, 2, 1),
        (2, 2, 2),
        (2, 3, 1),
        (2, 3, 4),
        (3, 1, 1),
        (3, 1, 3),
        (5, 1, 1),
        (3, 2, 3),
    ] {
        let (ctx, map) = setup(p, m, k);
        let table = map.value_table(&ctx).unwrap();
        let fast = boomerang_histogram(&ctx, &map).unwrap();
        let slow = bct_oracle_row(&ctx, &table, FieldElem::ONE).unwrap();
        assert_eq!(fast, slow, "({p},{m},{k})");
        if ctx.order() <= 81 {
            for b in ctx.nonzero_elements() {
                let entry = bct_oracle_entry(&ctx, &table, FieldElem::ONE, b).unwrap();
                assert_eq!(entry, fast[b.idx() as usize - 1]);
            }
        }
    }
}

#[test]
fn grouped_boomerang_handles_arbitrary_functions_and_directions() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for (p, m) in [(2, 2), (3, 1), (2, 3)] {
        let ctx = FieldCtx::build(p, m).unwrap();
        for _ in 0..4 {
            let table: Vec<FieldElem> = (0..ctx.order())
                .map(|_| ctx.element(rng.gen_range(0..ctx.order())).unwrap())
                .collect();
            let a = ctx.element(rng.gen_range(1..ctx.order())).unwrap();
            assert_eq!(
                boomerang_row(&ctx, &table, a).unwrap(),
                bct_oracle_row(&ctx, &table, a).unwrap()
            );
        }
    }
}

#[test]
fn ddt_entry_matches_direct_enumeration() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for (p, m, k) in [(2, 2, 1), (2, 4, 3), (3, 1, 1), (5, 2, 7), (7, 1, 3)] {
        let (ctx, map) = setup(p, m, k);
        let table = map.value_table(&ctx).unwrap();
        let row = derivative_histogram(&ctx, &map).unwrap();
        for _ in 0..100 {
            let a = elem(&ctx, rng.gen_range(1..ctx.order() as u64));
            let b = elem(&ctx, rng.gen_range(0..ctx.order() as u64));
            assert_eq!(
                ddt_entry_in_row(&ctx, &map, &row, a, b).unwrap(),
                ddt_oracle_entry(&ctx, &table, a, b).unwrap()
            );
        }
    }
}

#[test]
fn derivative_row_parity_and_symmetry() {
    for (p, m, k) in [
        (2, 2, 1),
        (2, 3, 2),
        (2, 5, 1),
        (3, 2, 3),
        (5, 1, 1),
        (7, 2, 3),
        (13, 1, 5),
    ] {
        let (ctx, map) = setup(p, m, k);
        let row = derivative_histogram(&ctx, &map).unwrap();
        if p == 2 {
            assert!(row.iter().all(|v| v % 2 == 0));
            let brow = boomerang_histogram(&ctx, &map).unwrap();
            for b in ctx.nonzero_elements() {
                assert!(brow[b.idx() as usize - 1] >= row[b.idx() as usize]);
            }
        } else {
            for b in ctx.nonzero_elements() {
                assert_eq!(row[b.idx() as usize], row[ctx.neg(b).idx() as usize]);
            }
        }
    }
}

#[test]
fn cube_root_fibres_in_characteristic_two() {
    // Empty for m odd and m = 0 mod 4. For m = 2 mod 4, w lies in F_q with
    // Tr(w^{-2}) = 1, so the quadratic has two circle roots and both lift.
    for m in 1..=7 {
        let q1 = (1u64 << m) + 1;
        let ctx = FieldCtx::build(2, m).unwrap();
        for k in (1..q1).filter(|&k| gcd(k, q1) == 1) {
            let map = PowerMapSpec::new(2, m, k).unwrap();
            let row = derivative_histogram(&ctx, &map).unwrap();
            let w = ctx.primitive_cube_root().unwrap();
            let expected = if m % 4 == 2 { 2 } else { 0 };
            assert_eq!(row[w.idx() as usize], expected, "m={m} k={k}");
            assert_eq!(row[ctx.mul(w, w).idx() as usize], expected, "m={m} k={k}");
        }
    }
}

#[test]
fn spectra_do_not_depend_on_modulus() {
    for (p, m, k) in [(2, 2, 1), (2, 3, 1), (2, 3, 2), (3, 1, 1), (5, 1, 1)] {
        let moduli: Vec<_> = irreducible_polynomials(p as u64, 2 * m).take(2).collect();
        assert_eq!(moduli.len(), 2);
        let map = PowerMapSpec::new(p, m, k).unwrap();
        let spectra: Vec<_> = moduli
            .iter()
            .map(|f| {
                let ctx = FieldCtx::with_modulus(p, m, f).unwrap();
                (
                    differential_spectrum(&ctx, &map).unwrap(),
                    boomerang_spectrum(&ctx, &map).unwrap(),
                )
            })
            .collect();
        assert_eq!(spectra[0], spectra[1], "({p},{m},{k})");
    }
}

#[test]
fn spectra_satisfy_table_invariants() {
    for (p, m, k) in [(2, 1, 2), (2, 4, 1), (3, 1, 1), (5, 2, 1), (11, 1, 5)] {
        let (ctx, map) = setup(p, m, k);
        let ds = differential_spectrum(&ctx, &map).unwrap();
        let bs = boomerang_spectrum(&ctx, &map).unwrap();
        assert_eq!(ds.kind(), SpectrumKind::Differential);
        assert_eq!(bs.kind(), SpectrumKind::Boomerang);
        ds.validate(ctx.order() as u64).unwrap();
        bs.validate(ctx.order() as u64).unwrap();
    }
}
