#include "urnvote/scoring.hpp"

#include "urnvote/engine.hpp"
#include "urnvote/plurality2.hpp"

#include <sstream>
#include <stdexcept>

namespace urnvote {

ScoringRulePair brier_pair() {
    ScoringRulePair pair;
    pair.f0 = [](const Rat& x) { return 2 * x - x * x; };
    pair.f1 = [](const Rat& x) { return 1 - x * x; };
    return pair;
}

InducedScheme induced_strategy(const BichromaticInstance& inst, const ScoringRulePair& pair) {
    if (!inst.strict || inst.size() < 2) {
        throw std::invalid_argument("induced strategy needs a strict instance");
    }
    int n = inst.size();
    InducedScheme s;
    s.q0 = 0;
    s.q1 = 0;
    std::vector<Rat> f0v(n), f1v(n);
    for (int i = 0; i < n; ++i) {
        f0v[i] = pair.f0(inst.probs[i]);
        f1v[i] = pair.f1(inst.probs[i]);
        if (f0v[i] < 0 || f1v[i] < 0) throw std::invalid_argument("scoring rule must be non-negative");
        s.q0 += f0v[i];
        s.q1 += f1v[i];
    }
    s.q_star = std::max(s.q0, s.q1);
    if (s.q_star == 0) throw std::invalid_argument("degenerate scoring rule");
    s.blue_votes.resize(n);
    s.red_votes.resize(n);
    Rat blue_fill = (s.q_star - s.q0) / (s.q_star * n);
    Rat red_fill = (s.q_star - s.q1) / (s.q_star * n);
    for (int i = 0; i < n; ++i) {
        s.blue_votes[i] = f0v[i] / s.q_star + blue_fill;
        s.red_votes[i] = f1v[i] / s.q_star + red_fill;
    }
    return s;
}

std::vector<Rat> induced_expected_shares(const InducedScheme& s, const BichromaticInstance& inst,
                                         int true_urn) {
    if (true_urn < 1 || true_urn > s.size()) throw std::out_of_range("true_urn out of range");
    const Rat& p = inst.p(true_urn);
    std::vector<Rat> shares(s.size());
    for (int j = 0; j < s.size(); ++j) {
        shares[j] = p * s.blue_votes[j] + (1 - p) * s.red_votes[j];
    }
    return shares;
}

Rat eq4_expected_votes(const InducedScheme& s, const BichromaticInstance& inst,
                       const ScoringRulePair& pair, int true_urn, int j, long long k) {
    const Rat& pt = inst.p(true_urn);
    const Rat& pj = inst.p(j);
    int n = inst.size();
    Rat g = pt * pair.f0(pj) + (1 - pt) * pair.f1(pj);
    // the constant term carries a p_t (or 1-p_t) factor depending on which of
    // q0, q1 attains the max
    Rat weight = (s.q_star == s.q1) ? pt : 1 - pt;
    Rat constant = weight * rat_abs(s.q1 - s.q0) / (s.q_star * n);
    return Rat(k) * (g / s.q_star + constant);
}

long long minimal_electorate(const std::vector<std::vector<Rat>>& kernel, double target,
                             int trials, std::uint64_t seed) {
    auto success_rate = [&](long long m) {
        TrialStats st = simulate_kernel_plurality("search", kernel, m, trials, seed);
        return 1.0 - st.rate;
    };
    long long hi = 1;
    while (success_rate(hi) < target) {
        if (hi > (1LL << 40)) throw std::runtime_error("minimal-m search diverged");
        hi *= 2;
    }
    long long lo = hi / 2;  // lo = 0 when hi == 1
    while (hi - lo > 1) {
        long long mid = lo + (hi - lo) / 2;
        if (success_rate(mid) >= target) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    return hi;
}

std::vector<EfficiencyRow> efficiency_experiment(int n, const std::vector<double>& eps_list,
                                                 double target_success, int trials,
                                                 std::uint64_t seed) {
    if (!(target_success > 0.0 && target_success < 1.0)) {
        throw std::invalid_argument("target success must lie in (0,1)");
    }
    ScoringRulePair pair = brier_pair();
    std::vector<EfficiencyRow> rows;
    for (double eps : eps_list) {
        BichromaticInstance inst = lower_bound_instance(n, rat_from_double(eps));
        auto induced = induced_strategy(inst, pair);
        auto plur = build_plurality_scheme(inst);
        std::vector<std::vector<Rat>> k_scoring(n), k_plur(n);
        for (int i = 1; i <= n; ++i) {
            k_scoring[i - 1] = induced_expected_shares(induced, inst, i);
            k_plur[i - 1] = expected_shares(plur, inst, i);
        }
        EfficiencyRow row;
        row.eps = eps;
        row.m_scoring = minimal_electorate(k_scoring, target_success, trials, seed);
        row.m_plurality = minimal_electorate(k_plur, target_success, trials, seed);
        row.ratio = static_cast<double>(row.m_scoring) / static_cast<double>(row.m_plurality);
        rows.push_back(row);
    }
    return rows;
}

std::string efficiency_table_csv(const std::vector<EfficiencyRow>& rows) {
    std::ostringstream out;
    out.precision(12);
    out << "eps,m_scoring,m_plurality,ratio\n";
    for (const auto& r : rows) {
        out << r.eps << ',' << r.m_scoring << ',' << r.m_plurality << ',' << r.ratio << '\n';
    }
    return out.str();
}

}  // namespace urnvote
