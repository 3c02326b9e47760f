#pragma once

#include "urnvote/landmarks.hpp"
#include "urnvote/model.hpp"

#include <vector>

namespace urnvote {

/// Distribution of the level t in {0..T}, T = ceil(log3 C) + 1,
/// Pr[t = i] = 3^(i-T) / alpha with alpha = sum_{i=0..T} 3^(-i).
struct CtLevelDistribution {
    int T;
    Rat alpha;
    std::vector<Rat> level_probs;  // index t = 0..T
};

CtLevelDistribution ct_level_distribution(int colors);

/// Step-3 marking pass for one color at level t. Starts from w_1 = 0,
/// repeatedly promotes the smallest unmarked probability and marks everything
/// strictly within 3^(-t)*eps of it, then appends 1 if missing.
std::vector<Rat> marking_algorithm(const std::vector<Rat>& probs_for_color, int t, const Rat& eps);

/// One (color, level) bichromatic instance: marking, ninth-point padding when
/// fewer than 10 marks, thirds insertion, then the two gap-fill sweeps.
struct CtInstance {
    int color;  // 0-based
    int level;
    LandmarkSet landmark_set;
    Rat eps_ct;
    int n_ct;
};

CtInstance build_ct_landmarks(const MulticolorInstance& inst, int c, int t);

/// Which levels enter the kernel average. Geometric includes t = 0 with the
/// level distribution above; UniformPositive weighs t = 1..T equally.
enum class LevelMixture { Geometric, UniformPositive };

/// E[i][j] = Pr[vote j | true urn i], averaged exactly over (c, t).
std::vector<std::vector<Rat>> multicolor_vote_kernel(const MulticolorInstance& inst,
                                                     LevelMixture mix = LevelMixture::Geometric);

/// eps / (26730 * C * T * n^2), the guaranteed off-diagonal margin.
Rat multicolor_margin_bound(const MulticolorInstance& inst);

/// ceil(scale * 7e12 * C^2 T^2 n^3 / eps^2 * ln(n/eta)).
long long multicolor_budget(const MulticolorInstance& inst, double eta, double scale = 1.0);

}  // namespace urnvote
