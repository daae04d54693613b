//! Adaptive Gauss–Kronrod (7/15-point) integration.
//!
//! Used to check matrix elements and normalization against direct
//! integration of the basis functions.

use alloc::vec::Vec;

const MAX_INTERVALS: usize = 4000;

// Kronrod abscissae on [0, 1]; odd entries (1, 3, 5) are the Gauss nodes.
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];

const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];

const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

/// Integral value with its estimated absolute error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Integral {
    pub value: f64,
    pub error: f64,
}

fn kronrod<F: FnMut(f64) -> f64>(f: &mut F, a: f64, b: f64) -> Integral {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut kronrod = WGK[7] * fc;
    let mut gauss = WG[3] * fc;
    for j in 0..7 {
        let dx = half * XGK[j];
        let pair = f(center - dx) + f(center + dx);
        kronrod += WGK[j] * pair;
        if j % 2 == 1 {
            gauss += WG[j / 2] * pair;
        }
    }
    Integral {
        value: kronrod * half,
        error: ((kronrod - gauss) * half).abs(),
    }
}

/// `∫_a^b f`, bisecting the worst interval until the summed error estimate is
/// below `max(abs_tol, rel_tol·|I|)`.
pub fn integrate<F: FnMut(f64) -> f64>(
    mut f: F,
    a: f64,
    b: f64,
    abs_tol: f64,
    rel_tol: f64,
) -> Integral {
    let mut pieces: Vec<(f64, f64, Integral)> = Vec::new();
    pieces.push((a, b, kronrod(&mut f, a, b)));
    loop {
        let value: f64 = pieces.iter().map(|p| p.2.value).sum();
        let error: f64 = pieces.iter().map(|p| p.2.error).sum();
        if error <= libm::fmax(abs_tol, rel_tol * value.abs()) || pieces.len() >= MAX_INTERVALS {
            return Integral { value, error };
        }
        let worst = pieces
            .iter()
            .enumerate()
            .max_by(|x, y| x.1 .2.error.total_cmp(&y.1 .2.error))
            .map(|(i, _)| i)
            .unwrap_or(0);
        let (lo, hi, _) = pieces.swap_remove(worst);
        let mid = 0.5 * (lo + hi);
        if !(mid > lo && mid < hi) {
            return Integral { value, error };
        }
        pieces.push((lo, mid, kronrod(&mut f, lo, mid)));
        pieces.push((mid, hi, kronrod(&mut f, mid, hi)));
    }
}

/// `∫_0^b f` for integrands behaving like `x^s` at the origin (`s > -1`).
///
/// Substitutes `x = y^{1/(s+1)}`, which makes the leading power linear in `y`.
pub fn integrate_origin_power<F: FnMut(f64) -> f64>(
    mut f: F,
    s: f64,
    b: f64,
    abs_tol: f64,
    rel_tol: f64,
) -> Integral {
    let p = s + 1.0;
    let ymax = libm::pow(b, p);
    integrate(
        |y| {
            if y <= 0.0 {
                return 0.0;
            }
            let x = libm::pow(y, 1.0 / p);
            f(x) * libm::pow(x, -s) / p
        },
        0.0,
        ymax,
        abs_tol,
        rel_tol,
    )
}
