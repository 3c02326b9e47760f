#include "urnvote/cumulative.hpp"

#include <cmath>
#include <stdexcept>

namespace urnvote {

CumulativeScheme cumulative_ballots(const PluralityScheme& s) {
    if (s.size() < 2) throw std::invalid_argument("scheme has fewer than 2 urns");
    return {s.blue_votes, s.red_votes};
}

long long cumulative_budget(const BichromaticInstance& inst, double eta) {
    if (!(eta > 0.0 && eta < 1.0)) throw std::invalid_argument("eta must lie in (0,1)");
    if (!inst.strict || inst.size() < 2) throw std::invalid_argument("need a strict instance");
    double eps = to_double(inst.eps);
    double m = std::ceil(150.0 / (eps * eps) * std::log(2.0 / eta));
    if (m >= 9e18) throw std::overflow_error("budget exceeds 64-bit range");
    return static_cast<long long>(m);
}

std::pair<Rat, Rat> cumulative_margin_span(const PluralityScheme& s,
                                           const BichromaticInstance& inst, int i, int j) {
    Rat delta = margin(s, inst, i, j);
    Rat span = rat_abs(s.blue_votes[i - 1] - s.blue_votes[j - 1]) +
               rat_abs(s.red_votes[i - 1] - s.red_votes[j - 1]);
    return {delta, span};
}

}  // namespace urnvote
