#pragma once

#include "urnvote/plurality2.hpp"

#include <utility>

namespace urnvote {

/// Cumulative voting reuses the plurality vote distributions as weight
/// vectors: the whole ballot is B or R depending on the drawn color.
struct CumulativeScheme {
    std::vector<Rat> blue_ballot;
    std::vector<Rat> red_ballot;

    int size() const { return static_cast<int>(blue_ballot.size()); }
};

CumulativeScheme cumulative_ballots(const PluralityScheme& s);

/// m = ceil(150 * eps^-2 * ln(2/eta)), independent of n.
long long cumulative_budget(const BichromaticInstance& inst, double eta);

/// Exact margin Delta_i(j) and ballot span S = |B_i-B_j| + |R_i-R_j|;
/// S <= 4|i-j| / (eps * M).
std::pair<Rat, Rat> cumulative_margin_span(const PluralityScheme& s,
                                           const BichromaticInstance& inst, int i, int j);

}  // namespace urnvote
