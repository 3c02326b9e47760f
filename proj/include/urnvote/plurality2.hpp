#pragma once

#include "urnvote/model.hpp"

#include <cstdint>
#include <vector>

namespace urnvote {

/// Two-signal plurality strategy. blue_votes / red_votes are the vote
/// distributions conditioned on the drawn color; b_weights / r_weights the
/// unnormalized per-urn weights; m_norm the normalizer M = max(sum r, sum b).
struct PluralityScheme {
    std::vector<Rat> b_weights;
    std::vector<Rat> r_weights;
    Rat sum_b;
    Rat sum_r;
    Rat m_norm;
    std::vector<Rat> blue_votes;
    std::vector<Rat> red_votes;

    int size() const { return static_cast<int>(blue_votes.size()); }
};

/// Requires a strict instance with n >= 2.
PluralityScheme build_plurality_scheme(const BichromaticInstance& inst);

/// E_i(j) = p_i * B_j + (1-p_i) * R_j for all j; true_urn is 1-based.
std::vector<Rat> expected_shares(const PluralityScheme& s, const BichromaticInstance& inst,
                                 int true_urn);

/// Delta_i(j) = E_i(i) - E_i(j). Requires i != j (both 1-based).
Rat margin(const PluralityScheme& s, const BichromaticInstance& inst, int i, int j);

struct PluralityBudget {
    long long voters;  // ceil(108 * M * (n-1) / eps * ln(4/eta)) (times scale)
    long long cap;     // ceil(216 * (n-1)^2 * n / eps^2)
};

PluralityBudget plurality_budget(const BichromaticInstance& inst, double eta, double scale = 1.0);

std::string plurality_scheme_to_json(const PluralityScheme& s);

}  // namespace urnvote
