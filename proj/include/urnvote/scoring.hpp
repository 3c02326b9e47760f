#pragma once

#include "urnvote/model.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace urnvote {

/// A proper scoring rule pair: z*f0(x) + (1-z)*f1(x) is maximized at x = z.
struct ScoringRulePair {
    std::function<Rat(const Rat&)> f0;
    std::function<Rat(const Rat&)> f1;
};

/// Quadratic (Brier) rule: f0(x) = 2x - x^2, f1(x) = 1 - x^2.
ScoringRulePair brier_pair();

/// Strategy induced by a scoring rule: vote for urn i with probability
/// f0(p_i)/q* + (q*-q0)/(q* n) on blue, the f1/q1 analogue on red.
struct InducedScheme {
    Rat q0;
    Rat q1;
    Rat q_star;
    std::vector<Rat> blue_votes;
    std::vector<Rat> red_votes;

    int size() const { return static_cast<int>(blue_votes.size()); }
};

InducedScheme induced_strategy(const BichromaticInstance& inst, const ScoringRulePair& pair);

std::vector<Rat> induced_expected_shares(const InducedScheme& s, const BichromaticInstance& inst,
                                         int true_urn);

/// Closed form for the expected votes urn j receives from k voters when the
/// true urn is t: (k/q*) g_{p_t}(p_j) plus a j-independent constant.
Rat eq4_expected_votes(const InducedScheme& s, const BichromaticInstance& inst,
                       const ScoringRulePair& pair, int true_urn, int j, long long k);

struct EfficiencyRow {
    double eps;
    long long m_scoring;
    long long m_plurality;
    double ratio;
};

/// Smallest m whose worst-case Monte Carlo success rate reaches the target,
/// found by doubling then bisection at a fixed trial count per probe.
long long minimal_electorate(const std::vector<std::vector<Rat>>& kernel, double target_success,
                             int trials, std::uint64_t seed);

/// Minimal electorate size reaching target worst-case success for the induced
/// scheme and the two-signal plurality scheme on I(n, eps), per eps value.
/// Search by doubling then bisection, Monte Carlo with `trials` per probe.
std::vector<EfficiencyRow> efficiency_experiment(int n, const std::vector<double>& eps_list,
                                                 double target_success, int trials,
                                                 std::uint64_t seed);

std::string efficiency_table_csv(const std::vector<EfficiencyRow>& rows);

}  // namespace urnvote
