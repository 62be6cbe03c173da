#pragma once

// Filter coefficients, embedded as constants.
//
// Bior 6.8: the biorthogonal spline pair (6 / 8 vanishing moments), stored
// centered and without the zero padding some libraries add. Analysis lowpass
// has 17 taps, analysis highpass 11 taps; both are whole-sample symmetric.
// Values match the published tables (e.g. PyWavelets "bior6.8").
//
// DTCWT: Kingsbury's near_sym_b level-1 biorthogonal pair (13/19 taps) and the
// 14-tap qshift_b quarter-shift orthonormal filters for deeper levels, as
// distributed with the reference dtcwt toolbox.

#include <array>

namespace glaucad::filters {

inline constexpr std::array<double, 17> bior68_dec_lo{
    0.0019088317364812906, -0.0019142861290887667, -0.016990639867602342,
    0.01193456527972926, 0.04973290349094079, -0.07726317316720414,
    -0.09405920349573646, 0.4207962846098268, 0.8259229974584023,
    0.4207962846098268, -0.09405920349573646, -0.07726317316720414,
    0.04973290349094079, 0.01193456527972926, -0.016990639867602342,
    -0.0019142861290887667, 0.0019088317364812906,
};
inline constexpr std::array<double, 11> bior68_dec_hi{
    0.014426282505624435, -0.014467504896790148, -0.07872200106262882,
    0.04036797903033992, 0.41784910915027457, -0.7589077294536541,
    0.41784910915027457, 0.04036797903033992, -0.07872200106262882,
    -0.014467504896790148, 0.014426282505624435,
};
inline constexpr std::array<double, 11> bior68_rec_lo{
    0.014426282505624435, 0.014467504896790148, -0.07872200106262882,
    -0.04036797903033992, 0.41784910915027457, 0.7589077294536541,
    0.41784910915027457, -0.04036797903033992, -0.07872200106262882,
    0.014467504896790148, 0.014426282505624435,
};
inline constexpr std::array<double, 17> bior68_rec_hi{
    -0.0019088317364812906, -0.0019142861290887667, 0.016990639867602342,
    0.01193456527972926, -0.04973290349094079, -0.07726317316720414,
    0.09405920349573646, 0.4207962846098268, -0.8259229974584023,
    0.4207962846098268, 0.09405920349573646, -0.07726317316720414,
    -0.04973290349094079, 0.01193456527972926, 0.016990639867602342,
    -0.0019142861290887667, -0.0019088317364812906,
};

inline constexpr std::array<double, 13> near_sym_b_h0o{
    -0.0017578125, 0.0, 0.022265625,
    -0.046875, -0.0482421875, 0.296875,
    0.55546875, 0.296875, -0.0482421875,
    -0.046875, 0.022265625, 0.0,
    -0.0017578125,
};
inline constexpr std::array<double, 19> near_sym_b_g0o{
    7.062639508928571e-05, 0.0, -0.0013419015066964285,
    -0.0018833705357142855, 0.007156808035714285, 0.023856026785714284,
    -0.05564313616071428, -0.05168805803571428, 0.29975760323660716,
    0.5594308035714286, 0.29975760323660716, -0.05168805803571428,
    -0.05564313616071428, 0.023856026785714284, 0.007156808035714285,
    -0.0018833705357142855, -0.0013419015066964285, 0.0,
    7.062639508928571e-05,
};
inline constexpr std::array<double, 19> near_sym_b_h1o{
    -7.062639508928571e-05, 0.0, 0.0013419015066964285,
    -0.0018833705357142855, -0.007156808035714285, 0.023856026785714284,
    0.05564313616071428, -0.05168805803571428, -0.29975760323660716,
    0.5594308035714286, -0.29975760323660716, -0.05168805803571428,
    0.05564313616071428, 0.023856026785714284, -0.007156808035714285,
    -0.0018833705357142855, 0.0013419015066964285, 0.0,
    -7.062639508928571e-05,
};
inline constexpr std::array<double, 13> near_sym_b_g1o{
    -0.0017578125, -0.0, 0.022265625,
    0.046875, -0.0482421875, -0.296875,
    0.55546875, -0.296875, -0.0482421875,
    0.046875, 0.022265625, -0.0,
    -0.0017578125,
};
inline constexpr std::array<double, 14> qshift_b_h0a{
    0.003253142763653182, -0.00388321199915849, 0.03466034684485349,
    -0.03887280126882779, -0.11720388769911527, 0.27529538466888204,
    0.7561456438925225, 0.5688104207121227, 0.011866092033797,
    -0.1067118046866654, 0.023825384794920298, 0.01702522388155399,
    -0.005439475937274115, -0.004556895628475491,
};
inline constexpr std::array<double, 14> qshift_b_h0b{
    -0.004556895628475491, -0.005439475937274115, 0.01702522388155399,
    0.023825384794920298, -0.1067118046866654, 0.011866092033797,
    0.5688104207121227, 0.7561456438925225, 0.27529538466888204,
    -0.11720388769911527, -0.03887280126882779, 0.03466034684485349,
    -0.00388321199915849, 0.003253142763653182,
};
inline constexpr std::array<double, 14> qshift_b_g0a{
    -0.004556895628475491, -0.005439475937274115, 0.01702522388155399,
    0.023825384794920298, -0.1067118046866654, 0.011866092033797,
    0.5688104207121227, 0.7561456438925225, 0.27529538466888204,
    -0.11720388769911527, -0.03887280126882779, 0.03466034684485349,
    -0.00388321199915849, 0.003253142763653182,
};
inline constexpr std::array<double, 14> qshift_b_g0b{
    0.003253142763653182, -0.00388321199915849, 0.03466034684485349,
    -0.03887280126882779, -0.11720388769911527, 0.27529538466888204,
    0.7561456438925225, 0.5688104207121227, 0.011866092033797,
    -0.1067118046866654, 0.023825384794920298, 0.01702522388155399,
    -0.005439475937274115, -0.004556895628475491,
};
inline constexpr std::array<double, 14> qshift_b_h1a{
    -0.004556895628475491, 0.005439475937274115, 0.01702522388155399,
    -0.023825384794920298, -0.1067118046866654, -0.011866092033797,
    0.5688104207121227, -0.7561456438925225, 0.27529538466888204,
    0.11720388769911527, -0.03887280126882779, -0.03466034684485349,
    -0.00388321199915849, -0.003253142763653182,
};
inline constexpr std::array<double, 14> qshift_b_h1b{
    -0.003253142763653182, -0.00388321199915849, -0.03466034684485349,
    -0.03887280126882779, 0.11720388769911527, 0.27529538466888204,
    -0.7561456438925225, 0.5688104207121227, -0.011866092033797,
    -0.1067118046866654, -0.023825384794920298, 0.01702522388155399,
    0.005439475937274115, -0.004556895628475491,
};
inline constexpr std::array<double, 14> qshift_b_g1a{
    -0.003253142763653182, -0.00388321199915849, -0.03466034684485349,
    -0.03887280126882779, 0.11720388769911527, 0.27529538466888204,
    -0.7561456438925225, 0.5688104207121227, -0.011866092033797,
    -0.1067118046866654, -0.023825384794920298, 0.01702522388155399,
    0.005439475937274115, -0.004556895628475491,
};
inline constexpr std::array<double, 14> qshift_b_g1b{
    -0.004556895628475491, 0.005439475937274115, 0.01702522388155399,
    -0.023825384794920298, -0.1067118046866654, -0.011866092033797,
    0.5688104207121227, -0.7561456438925225, 0.27529538466888204,
    0.11720388769911527, -0.03887280126882779, -0.03466034684485349,
    -0.00388321199915849, -0.003253142763653182,
};

}  // namespace glaucad::filters
