#pragma once

#include "urnvote/condorcet.hpp"
#include "urnvote/cumulative.hpp"
#include "urnvote/model.hpp"
#include "urnvote/rng.hpp"

#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace urnvote {

/// winner is 1-based, -1 when the election has no strict winner. A trial
/// succeeds only when the winner's vote distribution matches the true urn's,
/// so duplicate urns in the flexible pipeline can stand in for each other.
struct TrialOutcome {
    int winner = -1;
    int true_urn = 0;
    bool success = false;
};

/// One multinomial draw via a chain of conditional binomials.
std::vector<long long> multinomial_draw(const std::vector<double>& probs, long long m,
                                        SplitRng& rng);

/// Plurality tally of m voters following kernel_row; success iff the unique
/// argmax lies in `accept` (1-based urns equivalent to the true one).
TrialOutcome run_trial_plurality(const std::vector<double>& kernel_row, int true_urn,
                                 const std::vector<int>& accept, long long m, SplitRng& rng);

/// Cumulative election: m_b ~ Binomial(m, p_true) blue ballots, rest red;
/// exact rational score comparison, ties lose.
TrialOutcome run_trial_cumulative(const CumulativeScheme& scheme, double p_true, int true_urn,
                                  long long m, SplitRng& rng);

/// Condorcet election: each voter draws a color and a ranking; the winner
/// must beat every other urn in strictly more than m/2 ballots.
TrialOutcome run_trial_condorcet(const CondorcetScheme& scheme, double p_true, int true_urn,
                                 long long m, SplitRng& rng);

struct TrialStats {
    std::string system;
    long long m = 0;
    long long trials = 0;
    long long failures = 0;
    double rate = 0.0;
    double ci_lo = 0.0;
    double ci_hi = 0.0;
    std::uint64_t seed = 0;
    int worst_urn = 0;  // true urn realizing the reported failure rate
};

/// Wilson 95% score interval for failures/trials.
std::pair<double, double> wilson_interval(long long failures, long long trials);

std::string trial_stats_to_json(const TrialStats& stats);

/// Generic parallel runner. Sweeps the listed true urns, runs `trials`
/// independent trials per urn, and reports the worst failure rate. Each trial
/// gets its own RNG stream keyed by (urn, trial index), so results do not
/// depend on the worker count (capped by URNVOTE_THREADS).
TrialStats estimate_failure(const std::string& system,
                            const std::function<bool(int true_urn, SplitRng&)>& trial_fails,
                            const std::vector<int>& true_urns, long long m, long long trials,
                            std::uint64_t seed);

/// Worst-case simulation of any plurality-style kernel (rows = true urn).
/// Urns with identical rows are treated as interchangeable winners.
TrialStats simulate_kernel_plurality(const std::string& system,
                                     const std::vector<std::vector<Rat>>& kernel, long long m,
                                     long long trials, std::uint64_t seed);

TrialStats simulate_cumulative(const BichromaticInstance& inst, long long m, long long trials,
                               std::uint64_t seed);

TrialStats simulate_condorcet(const BichromaticInstance& inst, long long m, long long trials,
                              std::uint64_t seed);

/// Worker cap: URNVOTE_THREADS if set and positive, else hardware concurrency.
int engine_thread_count();

}  // namespace urnvote
