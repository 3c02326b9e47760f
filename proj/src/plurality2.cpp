#include "urnvote/plurality2.hpp"

#include <json.hpp>

#include <cmath>
#include <stdexcept>

namespace urnvote {

PluralityScheme build_plurality_scheme(const BichromaticInstance& inst) {
    if (!inst.strict) throw std::invalid_argument("plurality scheme needs a strict instance");
    int n = inst.size();
    if (n < 2) throw std::invalid_argument("need n >= 2 urns");

    PluralityScheme s;
    s.b_weights.assign(n, Rat(0));
    s.r_weights.assign(n, Rat(0));
    // b_k = sum_{l=1}^{k-1} (2 - (p_{l+1}+p_l)) / (p_{l+1}-p_l), prefix sums
    Rat acc = 0;
    for (int k = 1; k <= n; ++k) {
        if (k > 1) {
            const Rat& lo = inst.p(k - 1);
            const Rat& hi = inst.p(k);
            acc += (2 - (hi + lo)) / (hi - lo);
        }
        s.b_weights[k - 1] = acc;
    }
    // r_k = sum_{l=k}^{n-1} (p_{l+1}+p_l) / (p_{l+1}-p_l), suffix sums
    acc = 0;
    for (int k = n; k >= 1; --k) {
        if (k < n) {
            const Rat& lo = inst.p(k);
            const Rat& hi = inst.p(k + 1);
            acc += (hi + lo) / (hi - lo);
        }
        s.r_weights[k - 1] = acc;
    }
    s.sum_b = 0;
    s.sum_r = 0;
    for (int k = 0; k < n; ++k) {
        s.sum_b += s.b_weights[k];
        s.sum_r += s.r_weights[k];
    }
    s.m_norm = std::max(s.sum_b, s.sum_r);

    s.blue_votes.resize(n);
    s.red_votes.resize(n);
    Rat blue_fill = (s.m_norm - s.sum_b) / n;
    Rat red_fill = (s.m_norm - s.sum_r) / n;
    for (int k = 0; k < n; ++k) {
        s.blue_votes[k] = (s.b_weights[k] + blue_fill) / s.m_norm;
        s.red_votes[k] = (s.r_weights[k] + red_fill) / s.m_norm;
    }
    return s;
}

std::vector<Rat> expected_shares(const PluralityScheme& s, const BichromaticInstance& inst,
                                 int true_urn) {
    if (true_urn < 1 || true_urn > inst.size()) throw std::out_of_range("true_urn out of range");
    const Rat& p = inst.p(true_urn);
    std::vector<Rat> shares(s.size());
    for (int j = 0; j < s.size(); ++j) {
        shares[j] = p * s.blue_votes[j] + (1 - p) * s.red_votes[j];
    }
    return shares;
}

Rat margin(const PluralityScheme& s, const BichromaticInstance& inst, int i, int j) {
    if (i == j) throw std::domain_error("margin requires i != j");
    auto shares = expected_shares(s, inst, i);
    return shares[i - 1] - shares[j - 1];
}

PluralityBudget plurality_budget(const BichromaticInstance& inst, double eta, double scale) {
    if (!(eta > 0.0 && eta < 1.0)) throw std::invalid_argument("eta must lie in (0,1)");
    if (!(scale > 0.0)) throw std::invalid_argument("scale must be positive");
    auto s = build_plurality_scheme(inst);
    int n = inst.size();
    double m_norm = to_double(s.m_norm);
    double eps = to_double(inst.eps);
    double m = std::ceil(scale * 108.0 * m_norm * (n - 1) / eps * std::log(4.0 / eta));
    double cap = std::ceil(216.0 * double(n - 1) * (n - 1) * n / (eps * eps));
    if (m >= 9e18 || cap >= 9e18) throw std::overflow_error("budget exceeds 64-bit range");
    return {static_cast<long long>(m), static_cast<long long>(cap)};
}

std::string plurality_scheme_to_json(const PluralityScheme& s) {
    nlohmann::ordered_json j;
    j["schema"] = 1;
    auto emit = [](const std::vector<Rat>& v) {
        nlohmann::ordered_json arr = nlohmann::json::array();
        for (const auto& r : v) arr.push_back(rat_to_string(r));
        return arr;
    };
    j["b"] = emit(s.b_weights);
    j["r"] = emit(s.r_weights);
    j["M"] = rat_to_string(s.m_norm);
    j["blue_votes"] = emit(s.blue_votes);
    j["red_votes"] = emit(s.red_votes);
    return j.dump(2);
}

}  // namespace urnvote
