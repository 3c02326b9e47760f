#include "urnvote/model.hpp"

#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <sstream>

namespace urnvote {

namespace {

Rat rat_from_json(const nlohmann::json& v) {
    if (v.is_string()) return rat_from_string(v.get<std::string>());
    if (v.is_number_integer()) return Rat(v.get<long long>());
    if (v.is_number()) return rat_from_double(v.get<double>());
    throw std::invalid_argument("expected number or rational string");
}

constexpr double kStochasticTol = 1e-12;

}  // namespace

BichromaticInstance make_bichromatic(std::vector<Rat> probs) {
    if (probs.empty()) throw std::invalid_argument("empty probability list");
    for (const auto& p : probs) {
        if (p < 0 || p > 1) {
            throw std::invalid_argument("probability outside [0,1]: " + rat_to_string(p));
        }
    }
    std::sort(probs.begin(), probs.end());
    BichromaticInstance inst;
    inst.probs = std::move(probs);
    if (inst.probs.size() == 1) {
        inst.eps = 0;
        inst.strict = true;
        return inst;
    }
    inst.strict = true;
    Rat min_gap = 2;  // above any possible gap
    for (size_t i = 0; i + 1 < inst.probs.size(); ++i) {
        Rat gap = inst.probs[i + 1] - inst.probs[i];
        if (gap == 0) inst.strict = false;
        min_gap = std::min(min_gap, gap);
    }
    inst.eps = min_gap;
    return inst;
}

BichromaticInstance lower_bound_instance(int n, const Rat& eps) {
    if (n < 2) throw std::invalid_argument("need n >= 2");
    if (eps <= 0 || eps > Rat(1, n - 1)) {
        throw std::invalid_argument("eps must lie in (0, 1/(n-1)]");
    }
    std::vector<Rat> probs;
    probs.reserve(n);
    Rat base = (1 - eps * (n - 1)) / 2;
    for (int i = 1; i <= n; ++i) probs.push_back(base + (i - 1) * eps);
    return make_bichromatic(std::move(probs));
}

MulticolorInstance make_multicolor(std::vector<std::vector<Rat>> rows) {
    if (rows.size() < 2) throw std::invalid_argument("need at least 2 urns");
    size_t colors = rows[0].size();
    if (colors < 2) throw std::invalid_argument("need at least 2 colors");
    for (const auto& row : rows) {
        if (row.size() != colors) throw std::invalid_argument("ragged row matrix");
        Rat sum = 0;
        for (const auto& v : row) {
            if (v < 0) throw std::invalid_argument("negative row entry");
            sum += v;
        }
        if (to_double(rat_abs(sum - 1)) > kStochasticTol) {
            throw std::invalid_argument("row does not sum to 1: " + rat_to_string(sum));
        }
    }
    MulticolorInstance inst;
    inst.rows = std::move(rows);
    int n = inst.size();
    Rat min_l1 = -1;
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            Rat d = 0;
            for (size_t c = 0; c < colors; ++c) d += rat_abs(inst.rows[i][c] - inst.rows[j][c]);
            if (d == 0) throw std::invalid_argument("duplicate urn rows");
            if (min_l1 < 0 || d < min_l1) min_l1 = d;
        }
    }
    inst.eps_l1 = min_l1;
    return inst;
}

BichromaticInstance load_bichromatic_json(const std::string& json_text) {
    auto j = nlohmann::json::parse(json_text);
    if (!j.contains("probs")) throw std::invalid_argument("missing \"probs\" field");
    std::vector<Rat> probs;
    for (const auto& v : j["probs"]) probs.push_back(rat_from_json(v));
    return make_bichromatic(std::move(probs));
}

MulticolorInstance load_multicolor_json(const std::string& json_text) {
    auto j = nlohmann::json::parse(json_text);
    if (!j.contains("rows")) throw std::invalid_argument("missing \"rows\" field");
    std::vector<std::vector<Rat>> rows;
    for (const auto& row : j["rows"]) {
        std::vector<Rat> r;
        for (const auto& v : row) r.push_back(rat_from_json(v));
        rows.push_back(std::move(r));
    }
    return make_multicolor(std::move(rows));
}

std::string bichromatic_to_json(const BichromaticInstance& inst) {
    nlohmann::ordered_json j;
    j["schema"] = 1;
    auto& arr = j["probs"] = nlohmann::json::array();
    for (const auto& p : inst.probs) arr.push_back(rat_to_string(p));
    j["eps"] = rat_to_string(inst.eps);
    j["strict"] = inst.strict;
    return j.dump(2);
}

std::string multicolor_to_json(const MulticolorInstance& inst) {
    nlohmann::ordered_json j;
    j["schema"] = 1;
    auto& rows = j["rows"] = nlohmann::json::array();
    for (const auto& row : inst.rows) {
        nlohmann::ordered_json r = nlohmann::json::array();
        for (const auto& v : row) r.push_back(rat_to_string(v));
        rows.push_back(std::move(r));
    }
    j["eps_l1"] = rat_to_string(inst.eps_l1);
    return j.dump(2);
}

namespace {
std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}
}  // namespace

BichromaticInstance load_bichromatic_file(const std::string& path) {
    return load_bichromatic_json(slurp(path));
}

MulticolorInstance load_multicolor_file(const std::string& path) {
    return load_multicolor_json(slurp(path));
}

}  // namespace urnvote
