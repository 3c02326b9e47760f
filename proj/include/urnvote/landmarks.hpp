#pragma once

#include "urnvote/model.hpp"

#include <utility>
#include <vector>

namespace urnvote {

/// A strictly increasing grid p'_1..p'_{n'} in [0,1] with n' >= 10.
/// Construction enforces:
///   (a) the first K and last K gaps are each at most 2*eps_lm, and
///   (b) p'_{K+1} <= (2K+1)*eps_lm and p'_{n'-K} >= 1 - (2K+1)*eps_lm,
/// where K = ceil((n'-1)/3) and eps_lm is the minimum gap.
struct LandmarkSet {
    std::vector<Rat> points;
    Rat eps_lm;
    int K;

    int size() const { return static_cast<int>(points.size()); }
    const Rat& at(int k) const { return points.at(k - 1); }  // 1-based
};

/// Throws std::invalid_argument naming the violated condition and indices.
LandmarkSet validate_landmarks(std::vector<Rat> points);

/// Bichromatic scheme over an arbitrary urn list (duplicates allowed),
/// voting through a landmark grid. phi maps each urn to a landmark index;
/// urns with equal probability get identical vote probabilities.
struct FlexibleScheme {
    std::vector<int> phi;  // 1-based landmark index per urn
    std::vector<Rat> b_weights;  // per landmark, 0-based storage
    std::vector<Rat> r_weights;
    Rat m_norm;  // max of multiplicity-weighted sums, weights (|phi^-1(k)|+1)
    std::vector<Rat> blue_votes;  // per urn
    std::vector<Rat> red_votes;

    int urns() const { return static_cast<int>(blue_votes.size()); }
};

FlexibleScheme build_flexible_scheme(const std::vector<Rat>& probs, const LandmarkSet& lms);

std::vector<Rat> flexible_expected_shares(const FlexibleScheme& s, const std::vector<Rat>& probs,
                                          int true_urn);

/// [lower, upper] bracket for the constructed scheme's m_norm:
/// (n'-1)(n+n')/(81 eps) <= M <= 2 (n'-1)(n+n') / eps.
std::pair<Rat, Rat> m_bounds(const LandmarkSet& lms, int n);

std::string landmark_set_to_json(const LandmarkSet& lms);
LandmarkSet load_landmarks_json(const std::string& json_text);
std::string flexible_scheme_to_json(const FlexibleScheme& s);

}  // namespace urnvote
