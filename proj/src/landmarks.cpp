#include "urnvote/landmarks.hpp"

#include <json.hpp>

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

namespace urnvote {

LandmarkSet validate_landmarks(std::vector<Rat> points) {
    int np = static_cast<int>(points.size());
    if (np < 10) {
        throw std::invalid_argument("landmark set needs at least 10 points, got " +
                                    std::to_string(np));
    }
    for (int i = 0; i < np; ++i) {
        if (points[i] < 0 || points[i] > 1) {
            throw std::invalid_argument("landmark outside [0,1] at index " + std::to_string(i + 1));
        }
        if (i > 0 && points[i] <= points[i - 1]) {
            throw std::invalid_argument("landmarks not strictly increasing at index " +
                                        std::to_string(i + 1));
        }
    }
    LandmarkSet lms;
    lms.points = std::move(points);
    Rat min_gap = 2;
    for (int i = 0; i + 1 < np; ++i) {
        min_gap = std::min(min_gap, Rat(lms.points[i + 1] - lms.points[i]));
    }
    lms.eps_lm = min_gap;
    lms.K = static_cast<int>((np - 1 + 2) / 3);  // ceil((n'-1)/3)

    std::vector<int> bad_a;
    for (int k = 1; k <= lms.K; ++k) {
        if (lms.at(k + 1) - lms.at(k) > 2 * lms.eps_lm) bad_a.push_back(k);
        if (lms.at(np - k + 1) - lms.at(np - k) > 2 * lms.eps_lm) bad_a.push_back(np - k);
    }
    if (!bad_a.empty()) {
        std::ostringstream msg;
        msg << "condition (a) violated: gap above 2*eps at index";
        for (int k : bad_a) msg << ' ' << k;
        throw std::invalid_argument(msg.str());
    }
    Rat edge = Rat(2 * lms.K + 1) * lms.eps_lm;
    if (lms.at(lms.K + 1) > edge) {
        throw std::invalid_argument("condition (b) violated at lower end: p'_{K+1} > (2K+1)*eps");
    }
    if (lms.at(np - lms.K) < 1 - edge) {
        throw std::invalid_argument("condition (b) violated at upper end: p'_{n'-K} < 1-(2K+1)*eps");
    }
    return lms;
}

FlexibleScheme build_flexible_scheme(const std::vector<Rat>& probs, const LandmarkSet& lms) {
    int n = static_cast<int>(probs.size());
    if (n < 1) throw std::invalid_argument("need at least one urn");
    for (const auto& p : probs) {
        if (p < 0 || p > 1) throw std::invalid_argument("urn probability outside [0,1]");
    }
    int np = lms.size();

    FlexibleScheme s;
    s.b_weights.assign(np, Rat(0));
    s.r_weights.assign(np, Rat(0));
    Rat acc = 0;
    for (int k = 1; k <= np; ++k) {
        if (k > 1) acc += (2 - (lms.at(k) + lms.at(k - 1))) / (lms.at(k) - lms.at(k - 1));
        s.b_weights[k - 1] = acc;
    }
    acc = 0;
    for (int k = np; k >= 1; --k) {
        if (k < np) acc += (lms.at(k + 1) + lms.at(k)) / (lms.at(k + 1) - lms.at(k));
        s.r_weights[k - 1] = acc;
    }

    // phi: argmax_k of p*b_k + (1-p)*r_k, ties to the smaller index
    s.phi.resize(n);
    std::map<Rat, int> memo;  // equal probabilities share the same image
    for (int i = 0; i < n; ++i) {
        auto it = memo.find(probs[i]);
        if (it != memo.end()) {
            s.phi[i] = it->second;
            continue;
        }
        const Rat& p = probs[i];
        int best = 1;
        Rat best_val = p * s.b_weights[0] + (1 - p) * s.r_weights[0];
        for (int k = 2; k <= np; ++k) {
            Rat val = p * s.b_weights[k - 1] + (1 - p) * s.r_weights[k - 1];
            if (val > best_val) {
                best_val = val;
                best = k;
            }
        }
        s.phi[i] = best;
        memo.emplace(p, best);
    }

    std::vector<int> mult(np, 0);
    for (int i = 0; i < n; ++i) ++mult[s.phi[i] - 1];
    Rat weighted_b = 0, weighted_r = 0;  // multiplicity-weighted normalizer
    Rat hit_b = 0, hit_r = 0;            // sum over urns of their landmark weights
    for (int k = 0; k < np; ++k) {
        weighted_b += Rat(mult[k] + 1) * s.b_weights[k];
        weighted_r += Rat(mult[k] + 1) * s.r_weights[k];
        hit_b += Rat(mult[k]) * s.b_weights[k];
        hit_r += Rat(mult[k]) * s.r_weights[k];
    }
    s.m_norm = std::max(weighted_b, weighted_r);

    s.blue_votes.resize(n);
    s.red_votes.resize(n);
    Rat blue_fill = (s.m_norm - hit_b) / n;
    Rat red_fill = (s.m_norm - hit_r) / n;
    for (int i = 0; i < n; ++i) {
        s.blue_votes[i] = (s.b_weights[s.phi[i] - 1] + blue_fill) / s.m_norm;
        s.red_votes[i] = (s.r_weights[s.phi[i] - 1] + red_fill) / s.m_norm;
    }
    return s;
}

std::vector<Rat> flexible_expected_shares(const FlexibleScheme& s, const std::vector<Rat>& probs,
                                          int true_urn) {
    if (true_urn < 1 || true_urn > s.urns()) throw std::out_of_range("true_urn out of range");
    const Rat& p = probs.at(true_urn - 1);
    std::vector<Rat> shares(s.urns());
    for (int j = 0; j < s.urns(); ++j) {
        shares[j] = p * s.blue_votes[j] + (1 - p) * s.red_votes[j];
    }
    return shares;
}

std::pair<Rat, Rat> m_bounds(const LandmarkSet& lms, int n) {
    Rat base = Rat(lms.size() - 1) * Rat(n + lms.size()) / lms.eps_lm;
    return {base / 81, 2 * base};
}

std::string landmark_set_to_json(const LandmarkSet& lms) {
    nlohmann::ordered_json j;
    j["schema"] = 1;
    auto& arr = j["points"] = nlohmann::json::array();
    for (const auto& p : lms.points) arr.push_back(rat_to_string(p));
    j["eps"] = rat_to_string(lms.eps_lm);
    j["K"] = lms.K;
    return j.dump(2);
}

LandmarkSet load_landmarks_json(const std::string& json_text) {
    auto j = nlohmann::json::parse(json_text);
    if (!j.contains("points")) throw std::invalid_argument("missing \"points\" field");
    std::vector<Rat> points;
    for (const auto& v : j["points"]) {
        if (v.is_string()) {
            points.push_back(rat_from_string(v.get<std::string>()));
        } else {
            points.push_back(rat_from_double(v.get<double>()));
        }
    }
    return validate_landmarks(std::move(points));
}

std::string flexible_scheme_to_json(const FlexibleScheme& s) {
    nlohmann::ordered_json j;
    j["schema"] = 1;
    j["phi"] = s.phi;
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
