#include "urnvote/engine.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <random>
#include <stdexcept>
#include <thread>

namespace urnvote {

std::vector<long long> multinomial_draw(const std::vector<double>& probs, long long m,
                                        SplitRng& rng) {
    int n = static_cast<int>(probs.size());
    std::vector<long long> counts(n, 0);
    long long remaining = m;
    double rest = 1.0;
    for (int j = 0; j < n && remaining > 0; ++j) {
        if (j == n - 1) {
            counts[j] = remaining;
            break;
        }
        double cond = (rest > 0.0) ? std::min(1.0, std::max(0.0, probs[j] / rest)) : 1.0;
        std::binomial_distribution<long long> bin(remaining, cond);
        long long c = bin(rng);
        counts[j] = c;
        remaining -= c;
        rest -= probs[j];
    }
    return counts;
}

namespace {

// unique argmax index (0-based) or -1 on tie
template <typename T>
int strict_argmax(const std::vector<T>& v) {
    int best = 0;
    bool tied = false;
    for (int i = 1; i < static_cast<int>(v.size()); ++i) {
        if (v[i] > v[best]) {
            best = i;
            tied = false;
        } else if (v[i] == v[best]) {
            tied = true;
        }
    }
    return tied ? -1 : best;
}

}  // namespace

TrialOutcome run_trial_plurality(const std::vector<double>& kernel_row, int true_urn,
                                 const std::vector<int>& accept, long long m, SplitRng& rng) {
    auto counts = multinomial_draw(kernel_row, m, rng);
    TrialOutcome out;
    out.true_urn = true_urn;
    int w = strict_argmax(counts);
    if (w >= 0) {
        out.winner = w + 1;
        out.success = std::find(accept.begin(), accept.end(), out.winner) != accept.end();
    }
    return out;
}

TrialOutcome run_trial_cumulative(const CumulativeScheme& scheme, double p_true, int true_urn,
                                  long long m, SplitRng& rng) {
    std::binomial_distribution<long long> bin(m, p_true);
    long long m_b = bin(rng);
    long long m_r = m - m_b;
    int n = scheme.size();
    std::vector<Rat> scores(n);
    for (int j = 0; j < n; ++j) {
        scores[j] = Rat(m_b) * scheme.blue_ballot[j] + Rat(m_r) * scheme.red_ballot[j];
    }
    TrialOutcome out;
    out.true_urn = true_urn;
    int w = strict_argmax(scores);
    if (w >= 0) {
        out.winner = w + 1;
        out.success = (out.winner == true_urn);
    }
    return out;
}

TrialOutcome run_trial_condorcet(const CondorcetScheme& scheme, double p_true, int true_urn,
                                 long long m, SplitRng& rng) {
    int n = scheme.size();
    std::binomial_distribution<long long> bin(m, p_true);
    long long m_b = bin(rng);
    std::vector<std::vector<long long>> beats(n, std::vector<long long>(n, 0));
    for (long long v = 0; v < m; ++v) {
        PermutationBallot ballot = condorcet_ballot(scheme, v < m_b, rng);
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                if (i != j && ballot.beats(i, j)) ++beats[i][j];
            }
        }
    }
    TrialOutcome out;
    out.true_urn = true_urn;
    for (int i = 0; i < n; ++i) {
        bool wins_all = true;
        for (int j = 0; j < n && wins_all; ++j) {
            if (i != j && 2 * beats[i][j] <= m) wins_all = false;
        }
        if (wins_all) {
            out.winner = i + 1;
            out.success = (out.winner == true_urn);
            break;
        }
    }
    return out;
}

std::pair<double, double> wilson_interval(long long failures, long long trials) {
    if (trials < 1) throw std::invalid_argument("need at least one trial");
    const double z = 1.959963984540054;
    double nt = static_cast<double>(trials);
    double f = static_cast<double>(failures);
    double phat = f / nt;
    double denom = nt + z * z;
    double center = (f + z * z / 2.0) / denom;
    double half = z * std::sqrt(phat * (1.0 - phat) * nt + z * z / 4.0) / denom;
    return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

int engine_thread_count() {
    if (const char* env = std::getenv("URNVOTE_THREADS")) {
        int v = std::atoi(env);
        if (v > 0) return v;
    }
    unsigned hc = std::thread::hardware_concurrency();
    return hc > 0 ? static_cast<int>(hc) : 1;
}

TrialStats estimate_failure(const std::string& system,
                            const std::function<bool(int true_urn, SplitRng&)>& trial_fails,
                            const std::vector<int>& true_urns, long long m, long long trials,
                            std::uint64_t seed) {
    if (trials < 1) throw std::invalid_argument("need at least one trial");
    if (true_urns.empty()) throw std::invalid_argument("need at least one true urn");

    int n_urns = static_cast<int>(true_urns.size());
    std::vector<std::atomic<long long>> failures(n_urns);
    for (auto& f : failures) f.store(0);

    int workers = std::min<long long>(engine_thread_count(), trials);
    auto worker = [&](int w) {
        long long lo = trials * w / workers;
        long long hi = trials * (w + 1) / workers;
        std::vector<long long> local(n_urns, 0);
        for (long long t = lo; t < hi; ++t) {
            for (int u = 0; u < n_urns; ++u) {
                // stream keyed by (urn, trial), not by worker
                std::uint64_t stream =
                    (static_cast<std::uint64_t>(true_urns[u]) << 48) | static_cast<std::uint64_t>(t);
                SplitRng rng(seed, stream);
                if (trial_fails(true_urns[u], rng)) ++local[u];
            }
        }
        for (int u = 0; u < n_urns; ++u) failures[u].fetch_add(local[u]);
    };
    std::vector<std::thread> pool;
    for (int w = 1; w < workers; ++w) pool.emplace_back(worker, w);
    worker(0);
    for (auto& th : pool) th.join();

    int worst = 0;
    for (int u = 1; u < n_urns; ++u) {
        if (failures[u].load() > failures[worst].load()) worst = u;
    }

    TrialStats stats;
    stats.system = system;
    stats.m = m;
    stats.trials = trials;
    stats.failures = failures[worst].load();
    stats.rate = static_cast<double>(stats.failures) / static_cast<double>(trials);
    auto ci = wilson_interval(stats.failures, trials);
    stats.ci_lo = ci.first;
    stats.ci_hi = ci.second;
    stats.seed = seed;
    stats.worst_urn = true_urns[worst];
    return stats;
}

TrialStats simulate_kernel_plurality(const std::string& system,
                                     const std::vector<std::vector<Rat>>& kernel, long long m,
                                     long long trials, std::uint64_t seed) {
    int n = static_cast<int>(kernel.size());
    if (n < 1) throw std::invalid_argument("empty kernel");
    std::vector<std::vector<double>> rows(n);
    std::vector<std::vector<int>> accept(n);
    for (int i = 0; i < n; ++i) {
        rows[i] = to_doubles(kernel[i]);
        for (int j = 0; j < n; ++j) {
            if (kernel[j] == kernel[i]) accept[i].push_back(j + 1);
        }
    }
    std::vector<int> urns(n);
    for (int i = 0; i < n; ++i) urns[i] = i + 1;
    auto fails = [&](int true_urn, SplitRng& rng) {
        return !run_trial_plurality(rows[true_urn - 1], true_urn, accept[true_urn - 1], m, rng)
                    .success;
    };
    return estimate_failure(system, fails, urns, m, trials, seed);
}

TrialStats simulate_cumulative(const BichromaticInstance& inst, long long m, long long trials,
                               std::uint64_t seed) {
    auto scheme = cumulative_ballots(build_plurality_scheme(inst));
    std::vector<int> urns(inst.size());
    for (int i = 0; i < inst.size(); ++i) urns[i] = i + 1;
    auto fails = [&](int true_urn, SplitRng& rng) {
        return !run_trial_cumulative(scheme, to_double(inst.p(true_urn)), true_urn, m, rng)
                    .success;
    };
    return estimate_failure("cumulative", fails, urns, m, trials, seed);
}

TrialStats simulate_condorcet(const BichromaticInstance& inst, long long m, long long trials,
                              std::uint64_t seed) {
    auto scheme = build_condorcet_scheme(inst);
    std::vector<int> urns(inst.size());
    for (int i = 0; i < inst.size(); ++i) urns[i] = i + 1;
    auto fails = [&](int true_urn, SplitRng& rng) {
        return !run_trial_condorcet(scheme, to_double(inst.p(true_urn)), true_urn, m, rng)
                    .success;
    };
    return estimate_failure("condorcet", fails, urns, m, trials, seed);
}

std::string trial_stats_to_json(const TrialStats& stats) {
    nlohmann::ordered_json j;
    j["schema"] = 1;
    j["system"] = stats.system;
    j["m"] = stats.m;
    j["trials"] = stats.trials;
    j["failures"] = stats.failures;
    j["rate"] = stats.rate;
    j["ci95"] = {stats.ci_lo, stats.ci_hi};
    j["seed"] = stats.seed;
    j["worst_urn"] = stats.worst_urn;
    return j.dump(2);
}

}  // namespace urnvote
