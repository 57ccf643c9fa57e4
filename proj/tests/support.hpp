#pragma once

// Shared fixtures for the test suite: the two benchmark engagements, a
// third regression engagement, and frozen solver outputs for them
// (computed once with independent tooling and pinned here).

#include <random>

#include "pegame/core.hpp"

namespace testsupport {

using pegame::GameParams;
using pegame::GameState;

// Benchmark engagement 1: slow start under a generous speed cap; the optimal
// solution lies on the pre-saturation branch.
inline GameState s1_state() { return {0.0, 0.0, 0.0, 1.0, 1.0, 1.0}; }
inline GameParams s1_params() {
    GameParams p;
    p.a_P_max = 1.0;
    p.v_P_max = 10.0;
    p.v_E_max = 0.5;
    return p;
}
// Frozen reference outputs for engagement 1.
inline constexpr double kS1TF = 2.4367498279637463;
inline constexpr double kS1ThetaP = -0.9627496025307324;  // pre-wrap
inline constexpr double kS1CosTheta = 0.57126536970706;
inline constexpr double kS1SinTheta = -0.8207654216482644;
inline constexpr double kS1TTheta = 10.80443488118935;
inline constexpr double kS1TangencyX = 1.696015395677662;
inline constexpr double kS1TangencyY = 0.0;

// Benchmark engagement 2: tight speed cap with a distant evader; the optimal
// solution lies on the post-saturation branch.
inline GameState s2_state() { return {0.0, 0.0, 0.0, 1.0, 5.0, 5.0}; }
inline GameParams s2_params() {
    GameParams p;
    p.a_P_max = 1.0;
    p.v_P_max = 2.0;
    p.v_E_max = 0.5;
    return p;
}
// Frozen reference outputs for engagement 2.
inline constexpr double kS2TF = 5.407293701261469;
inline constexpr double kS2ThetaP = 0.150343472048997;  // flat optimum: loose tolerance
inline constexpr double kS2TTheta = 1.588736963693242;
inline constexpr double kS2CaptureX = 7.246054532239434;
inline constexpr double kS2CaptureY = 6.504973531704862;
inline constexpr double kS2Phase1Root = 3.749321937945008;   // rejected candidate
inline constexpr double kS2Phase1RootTTheta = 1.506306995762708;
inline constexpr double kS2W0 = 12.14580249197701;     // feasibility at heading 0
inline constexpr double kS2WHalfPi = -86.1875;         // exact by hand arithmetic

// Regression engagement 3: nonzero initial velocity misaligned with the
// line of sight, post-saturation branch.
inline GameState s3_state() { return {0.0, 0.0, 0.3, 1.0, -6.0, -4.0}; }
inline GameParams s3_params() {
    GameParams p;
    p.a_P_max = 1.2;
    p.v_P_max = 2.0;
    p.v_E_max = 0.6;
    return p;
}
inline constexpr double kS3TF = 7.623905230900698;
inline constexpr double kS3ThetaP = 4.042706615442592;
inline constexpr double kS3TTheta = 2.443941343276121;
inline constexpr double kS3CaptureX = -9.367254151683531;
inline constexpr double kS3CaptureY = -7.096161272783095;

inline std::mt19937_64 seeded_rng(std::uint64_t seed = 20260814ull) {
    return std::mt19937_64(seed);
}

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

}  // namespace testsupport
