//! Printed detection-function tables for a = 1/3, b = 1/2.

/// `(h, cu, cv)` of the λ₂ table.
pub const TABLE2: [(f64, f64, f64); 20] = [
    (0.01, -0.001875, -0.001876),
    (0.11, -0.020732, -0.02083),
    (0.21, -0.039766, -0.0401393),
    (0.31, -0.058969, -0.059813),
    (0.41, -0.078305, -0.079837),
    (0.51, -0.097701, -0.10015),
    (0.61, -0.117021, -0.120612),
    (0.71, -0.136046, -0.140967),
    (0.81, -0.154444, -0.160774),
    (0.91, -0.171734, -0.179321),
    (1.01, -0.187236, -0.195488),
    (1.11, -0.200019, -0.207541),
    (1.21, -0.208827, -0.212808),
    (1.31, -0.211988, -0.207141),
    (1.41, -0.207302, -0.184002),
    (1.51, -0.19189, -0.132774),
    (1.61, -0.162016, -0.0354102),
    (1.71, -0.11285, 0.141107),
    (1.81, -0.038213, 0.465149),
    (1.91, 0.069632, 1.1178),
];

/// `(h, ρ, ω)` of the λ₁ table, coefficients scaled by 10⁻⁴.
pub const TABLE1: [(f64, f64, f64); 41] = [
    (-2.0, 4.933, 1.373),
    (-1.9, 4.862, 1.352),
    (-1.8, 4.792, 1.332),
    (-1.7, 4.722, 1.311),
    (-1.6, 4.653, 1.291),
    (-1.5, 4.584, 1.271),
    (-1.4, 4.516, 1.251),
    (-1.3, 4.448, 1.231),
    (-1.2, 4.381, 1.212),
    (-1.1, 4.315, 1.192),
    (-1., 4.249, 1.173),
    (-0.9, 4.183, 1.154),
    (-0.8, 4.118, 1.135),
    (-0.7, 4.054, 1.116),
    (-0.6, 3.990, 1.098),
    (-0.5, 3.926, 1.079),
    (-0.4, 3.863, 1.061),
    (-0.3, 3.801, 1.043),
    (-0.2, 3.739, 1.025),
    (-0.1, 3.678, 1.008),
    (0.0, 3.618, 0.9906),
    (0.1, 3.558, 0.9733),
    (0.2, 3.498, 0.9562),
    (0.3, 3.439, 0.9392),
    (0.4, 3.381, 0.9224),
    (0.5, 3.323, 0.9058),
    (0.6, 3.266, 0.8895),
    (0.7, 3.210, 0.8733),
    (0.8, 3.154, 0.8573),
    (0.9, 3.099, 0.8415),
    (1., 3.044, 0.8259),
    (1.1, 2.990, 0.8105),
    (1.2, 2.937, 0.7954),
    (1.3, 2.885, 0.7805),
    (1.4, 2.834, 0.7658),
    (1.5, 2.783, 0.7514),
    (1.6, 2.734, 0.7373),
    (1.7, 2.685, 0.7235),
    (1.8, 2.638, 0.7102),
    (1.9, 2.593, 0.6974),
    (2., 2.553, 0.6859),
];

/// `(h, ρ, ω)` of the λ₃ table, coefficients scaled by 10⁻⁴.
pub const TABLE3: [(f64, f64, f64); 51] = [
    (2.0, 3.0408, 0.8167),
    (2.02, 3.0446, 0.8175),
    (2.04, 3.0459, 0.8177),
    (2.06, 3.0463, 0.8177),
    (2.08, 3.0462, 0.8175),
    (2.1, 3.0457, 0.8172),
    (2.12, 3.0449, 0.8168),
    (2.14, 3.0438, 0.8164),
    (2.16, 3.0425, 0.8159),
    (2.18, 3.0411, 0.8154),
    (2.2, 3.0396, 0.8148),
    (2.22, 3.0379, 0.8142),
    (2.24, 3.0361, 0.8136),
    (2.26, 3.0342, 0.8130),
    (2.28, 3.0323, 0.8123),
    (2.3, 3.0303, 0.8116),
    (2.32, 3.0283, 0.8110),
    (2.34, 3.0262, 0.8103),
    (2.36, 3.0240, 0.8096),
    (2.38, 3.0219, 0.8089),
    (2.4, 3.0197, 0.8082),
    (2.42, 3.0176, 0.8075),
    (2.44, 3.0154, 0.8068),
    (2.46, 3.0132, 0.8061),
    (2.48, 3.0110, 0.8054),
    (2.5, 3.0089, 0.8047),
    (2.52, 3.0068, 0.8040),
    (2.54, 3.0047, 0.8033),
    (2.56, 3.0026, 0.8027),
    (2.58, 3.0006, 0.8020),
    (2.6, 2.9986, 0.8014),
    (2.62, 2.9967, 0.8008),
    (2.64, 2.9949, 0.8002),
    (2.66, 2.9931, 0.7996),
    (2.68, 2.9915, 0.7991),
    (2.7, 2.9899, 0.7986),
    (2.72, 2.9884, 0.7981),
    (2.74, 2.9871, 0.7976),
    (2.76, 2.9859, 0.7972),
    (2.78, 2.9848, 0.7968),
    (2.8, 2.9839, 0.7965),
    (2.82, 2.9833, 0.7963),
    (2.84, 2.9828, 0.7961),
    (2.86, 2.9826, 0.7959),
    (2.88, 2.9827, 0.7959),
    (2.9, 2.9831, 0.7959),
    (2.92, 2.9840, 0.7961),
    (2.94, 2.9854, 0.7964),
    (2.96, 2.9876, 0.7970),
    (2.98, 2.9909, 0.7978),
    (3., 2.9973, 0.7995),
];

/// `(h, ρ, ω)` of the λ₄ table, coefficients scaled by 10⁻⁴.
pub const TABLE4: [(f64, f64, f64); 47] = [
    (3.0, 2.9973, 0.7995),
    (3.04, 3.0074, 0.8022),
    (3.08, 3.0118, 0.8032),
    (3.12, 3.0140, 0.8037),
    (3.16, 3.0149, 0.8037),
    (3.2, 3.0147, 0.8035),
    (3.24, 3.0138, 0.8030),
    (3.28, 3.0121, 0.8024),
    (3.32, 3.0098, 0.8016),
    (3.36, 3.0070, 0.8006),
    (3.4, 3.0038, 0.7995),
    (3.44, 3.0001, 0.7982),
    (3.48, 2.9960, 0.7969),
    (3.52, 2.9915, 0.7954),
    (3.56, 2.9867, 0.7939),
    (3.6, 2.9816, 0.7922),
    (3.64, 2.9762, 0.7905),
    (3.68, 2.9706, 0.7887),
    (3.72, 2.9646, 0.7868),
    (3.76, 2.9584, 0.7849),
    (3.8, 2.9520, 0.7829),
    (3.84, 2.9453, 0.7808),
    (3.88, 2.9384, 0.7787),
    (3.92, 2.9313, 0.7765),
    (3.96, 2.9240, 0.7742),
    (4., 2.9165, 0.7719),
    (4.2, 2.8764, 0.7596),
    (4.4, 2.8322, 0.7461),
    (4.6, 2.7847, 0.7317),
    (4.8, 2.7341, 0.7165),
    (5., 2.6808, 0.7005),
    (5.2, 2.6250, 0.6838),
    (5.4, 2.5671, 0.6665),
    (5.6, 2.5072, 0.6487),
    (5.8, 2.4455, 0.6304),
    (6., 2.3820, 0.6116),
    (6.2, 2.3171, 0.5924),
    (6.4, 2.2507, 0.5729),
    (6.6, 2.1830, 0.5530),
    (6.8, 2.1141, 0.5327),
    (7., 2.0440, 0.5122),
    (7.2, 1.9729, 0.4914),
    (7.4, 1.9008, 0.4704),
    (7.6, 1.8278, 0.4491),
    (7.8, 1.7540, 0.4277),
    (8., 1.6794, 0.4060),
    (8.2, 1.6041, 0.3842),
];
