//! Reference values computed ahead of time with PySCF (RHF/FCI, geometry
//! given in bohr using 1 angstrom = 1.8897259886 bohr), plus helpers shared by
//! the integration tests.
#![allow(dead_code)]

/// STO-3G integrals at 0.7414 angstrom.
pub const REF_S_0_7414: [[f64; 2]; 2] = [[1.0, 0.658_957_155_173_108_6], [0.658_957_155_173_108_6, 1.0]];
pub const REF_T_0_7414: [[f64; 2]; 2] = [
    [0.760_031_883_566_609_1, 0.236_125_998_286_858_9],
    [0.236_125_998_286_858_9, 0.760_031_883_566_609_1],
];
pub const REF_V_0_7414: [[f64; 2]; 2] = [
    [-1.880_083_059_987_793_1, -1.193_858_282_286_775_2],
    [-1.193_858_282_286_775_2, -1.880_083_059_987_793_3],
];
/// (pq|rs) in row-major p, q, r, s order.
pub const REF_ERI_0_7414: [f64; 16] = [
    0.774_605_943_919_897_8,
    0.443_793_183_953_184_9,
    0.443_793_183_953_184_9,
    0.569_468_426_809_472_1,
    0.443_793_183_953_185,
    0.296_663_207_599_133_2,
    0.296_663_207_599_133_2,
    0.443_793_183_953_185,
    0.443_793_183_953_185,
    0.296_663_207_599_133_2,
    0.296_663_207_599_133_2,
    0.443_793_183_953_185,
    0.569_468_426_809_472_1,
    0.443_793_183_953_184_9,
    0.443_793_183_953_184_9,
    0.774_605_943_919_897_8,
];
pub const REF_ENN_0_7414: f64 = 0.713_754_045_041_944_8;

/// (angstrom, RHF total, FCI total) for STO-3G.
pub const REF_STO3G_ENERGIES: [(f64, f64, f64); 4] = [
    (0.5, -1.042_996_242_395_842_8, -1.055_159_761_364_399),
    (0.7414, -1.116_684_390_004_224_7, -1.137_270_175_242_571),
    (1.0, -1.066_108_669_518_478_7, -1.101_150_345_414_061_9),
    (2.0, -0.783_792_683_871_356_9, -0.948_641_119_264_595_8),
];
/// (angstrom, RHF total, FCI total) for 6-31G.
pub const REF_631G_ENERGIES: [(f64, f64, f64); 2] = [
    (0.7414, -1.126_733_967_981_213_4, -1.151_682_731_771_978_7),
    (2.0, -0.916_271_267_820_878_4, -1.014_310_281_514_007_3),
];
/// Minimum of the STO-3G FCI curve, angstrom.
pub const REF_STO3G_EQUILIBRIUM: f64 = 0.734_865_279_058_099_4;
pub const REF_E_H_STO3G: f64 = -0.466_581_849_557_275_33;
pub const REF_E_H_631G: f64 = -0.498_232_910_729_070_1;
