//! Published reference ordinates and deficit tables used by the acceptance suite.

pub const RIEMANN_ZEROS_BELOW_200: [f64; 79] = [
    14.134725142, 21.022039639, 25.010857580, 30.424876126,
    32.935061588, 37.586178159, 40.918719012, 43.327073281,
    48.005150881, 49.773832478, 52.970321478, 56.446247697,
    59.347044003, 60.831778525, 65.112544048, 67.079810529,
    69.546401711, 72.067157674, 75.704690699, 77.144840069,
    79.337375020, 82.910380854, 84.735492981, 87.425274613,
    88.809111208, 92.491899271, 94.651344041, 95.870634228,
    98.831194218, 101.317851006, 103.725538040, 105.446623052,
    107.168611184, 111.029535543, 111.874659177, 114.320220915,
    116.226680321, 118.790782866, 121.370125002, 122.946829294,
    124.256818554, 127.516683880, 129.578704200, 131.087688531,
    133.497737203, 134.756509753, 138.116042055, 139.736208952,
    141.123707404, 143.111845808, 146.000982487, 147.422765343,
    150.053520421, 150.925257612, 153.024693811, 156.112909294,
    157.597591818, 158.849988171, 161.188964138, 163.030709687,
    165.537069188, 167.184439978, 169.094515416, 169.911976479,
    173.411536520, 174.754191523, 176.441434298, 178.377407776,
    179.916484020, 182.207078484, 184.874467848, 185.598783678,
    187.228922584, 189.416158656, 192.026656361, 193.079726604,
    195.265396680, 196.876481841, 198.015309676,
];

pub const CHI3_ZEROS: [f64; 18] = [
    8.039737156, 11.24920621, 15.70461918, 18.2619975,
    20.45577081, 24.05941486, 26.57786874, 28.21816451,
    30.74504026, 33.89738893, 35.60841265, 37.55179656,
    39.48520726, 42.61637923, 44.12057291, 46.27411802,
    47.51410451, 50.37513865,
];

pub const CHI7_POS_ZEROS: [f64; 24] = [
    4.356402, 8.785555, 10.736120, 12.532548,
    15.937448, 17.616053, 20.030559, 21.314647,
    23.203672, 26.169945, 27.873375, 28.599794,
    30.919561, 32.610089, 34.792503, 36.344756,
    38.206755, 39.338483, 40.476472, 43.539481,
    44.595772, 46.096099, 47.491559, 49.126475,
];

pub const CHI7_NEG_ZEROS: [f64; 24] = [
    6.201230, 7.927431, 11.010445, 13.829868,
    16.013727, 18.044858, 19.113886, 22.756406,
    23.955938, 25.723104, 27.455596, 29.338505,
    31.284265, 33.672299, 34.774195, 35.973150,
    37.786921, 40.224566, 41.909138, 42.712631,
    44.977200, 46.086774, 47.348801, 50.017326,
];

pub const CHI12_ZEROS: [f64; 28] = [
    3.8046276331, 6.6922233205, 8.8905929587, 11.188392745,
    12.966178808, 15.181480876, 16.632633275, 18.884369457,
    20.103928191, 22.285839107, 23.561319713, 25.411633892,
    27.013943986, 28.442203258, 30.204006556, 31.648077615,
    33.03713288, 35.027378485, 35.778044577, 37.926816821,
    38.973998822, 40.484154751, 42.235143018, 43.192847103,
    44.948822502, 46.243369979, 47.646400501, 48.943728012,
];

pub const STATS_A_DEFICIT_BINS: [usize; 115] = [
    1, 2, 3, 4, 5, 139, 140, 141, 142, 143, 208, 209,
    210, 211, 212, 248, 249, 250, 251, 252, 302, 303, 304, 305,
    306, 327, 328, 329, 330, 374, 375, 376, 377, 407, 408, 409,
    410, 431, 432, 433, 434, 478, 479, 480, 481, 496, 497, 498,
    499, 528, 529, 530, 531, 563, 564, 565, 566, 592, 593, 594,
    606, 607, 608, 609, 649, 650, 651, 652, 669, 670, 671, 694,
    695, 696, 718, 719, 720, 721, 722, 755, 756, 757, 758, 770,
    771, 772, 792, 793, 794, 827, 828, 829, 830, 846, 847, 848,
    873, 874, 875, 886, 887, 888, 889, 923, 924, 925, 945, 946,
    947, 957, 958, 959, 987, 988, 989,
];

pub const GROUP_AVERAGE_TABLE: [(f64, f64); 29] = [
    (14.134725142, 14.1),
    (21.022039639, 21.0),
    (25.010857580, 25.0),
    (30.424876126, 30.4),
    (32.935061588, 32.9),
    (37.586178159, 37.6),
    (40.918719012, 40.9),
    (43.327073281, 43.3),
    (48.005150881, 48.0),
    (49.773832478, 49.8),
    (52.970321478, 53.0),
    (56.446247697, 56.5),
    (59.347044003, 59.3),
    (60.831778525, 60.8),
    (65.112544048, 65.1),
    (67.079810529, 67.0),
    (69.546401711, 69.5),
    (72.067157674, 72.0),
    (75.704690699, 75.7),
    (77.144840069, 77.1),
    (79.337375020, 79.3),
    (82.910380854, 82.9),
    (84.735492981, 84.7),
    (87.425274613, 87.4),
    (88.809111208, 88.8),
    (92.491899271, 92.4),
    (94.651344041, 94.6),
    (95.870634228, 95.8),
    (98.831194218, 98.8),
];
