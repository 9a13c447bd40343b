// Generated by scripts/gen_lanczos.py; do not edit by hand.
// g = 607/128, 15 terms, worst binary64 relative error on |s| <= 31: 2.71e-14

pub(crate) const LANCZOS_G: f64 = 4.742_187_5;

pub(crate) const LANCZOS_COEFFS: [f64; 15] = [
    9.9999999999999966052e-1,
    5.7156235665862863685e+1,
    -5.9597960355463923915e+1,
    1.413609797423703175e+1,
    -4.9191380713479992262e-1,
    3.3912553465366102965e-5,
    4.6960062136330830073e-5,
    -9.9800396423804395222e-5,
    1.6098324766578762166e-4,
    -2.1371474337630199823e-4,
    2.1920548433665593717e-4,
    -1.6339063571344623362e-4,
    8.2427737283355168033e-5,
    -2.5026818776304315814e-5,
    3.4419197991142708783e-6,
];
