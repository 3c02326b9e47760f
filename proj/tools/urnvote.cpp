#include "urnvote/engine.hpp"
#include "urnvote/multicolor.hpp"
#include "urnvote/scoring.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using namespace urnvote;

void write_output(const std::string& path, const std::string& text) {
    if (path.empty()) {
        std::cout << text;
        if (!text.empty() && text.back() != '\n') std::cout << '\n';
        return;
    }
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << text;
}

std::vector<Rat> load_probs_raw(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    nlohmann::json j = nlohmann::json::parse(in);
    if (!j.contains("probs")) throw std::runtime_error("missing \"probs\" field in " + path);
    std::vector<Rat> probs;
    for (const auto& v : j["probs"]) {
        if (v.is_string()) {
            probs.push_back(rat_from_string(v.get<std::string>()));
        } else {
            probs.push_back(rat_from_double(v.get<double>()));
        }
    }
    return probs;
}

std::vector<double> parse_range(const std::string& range) {
    // "a:b:step" inclusive grid, or a comma list
    std::vector<double> out;
    if (range.find(':') != std::string::npos) {
        double a, b, step;
        char c1, c2;
        std::istringstream ss(range);
        if (!(ss >> a >> c1 >> b >> c2 >> step) || c1 != ':' || c2 != ':' || step <= 0) {
            throw std::runtime_error("bad range: " + range);
        }
        for (double v = a; v <= b + 1e-12; v += step) out.push_back(v);
        return out;
    }
    std::istringstream ss(range);
    std::string tok;
    while (std::getline(ss, tok, ',')) out.push_back(std::stod(tok));
    return out;
}

std::string kernel_csv(const std::vector<std::vector<Rat>>& kernel) {
    std::ostringstream out;
    out.precision(17);
    int n = static_cast<int>(kernel.size());
    out << "true_urn";
    for (int j = 1; j <= n; ++j) out << ",vote_" << j;
    out << '\n';
    for (int i = 0; i < n; ++i) {
        out << (i + 1);
        for (int j = 0; j < n; ++j) out << ',' << to_double(kernel[i][j]);
        out << '\n';
    }
    return out.str();
}

std::vector<std::vector<Rat>> kernel_for_system(const std::string& system,
                                                const std::string& instance_path,
                                                LevelMixture mix) {
    if (system == "multicolor") {
        return multicolor_vote_kernel(load_multicolor_file(instance_path), mix);
    }
    BichromaticInstance inst = load_bichromatic_file(instance_path);
    int n = inst.size();
    std::vector<std::vector<Rat>> kernel(n);
    if (system == "plurality") {
        auto s = build_plurality_scheme(inst);
        for (int i = 1; i <= n; ++i) kernel[i - 1] = expected_shares(s, inst, i);
    } else if (system == "scoring") {
        auto s = induced_strategy(inst, brier_pair());
        for (int i = 1; i <= n; ++i) kernel[i - 1] = induced_expected_shares(s, inst, i);
    } else {
        throw std::runtime_error("no vote kernel for system " + system);
    }
    return kernel;
}

int run(int argc, char** argv) {
    CLI::App app{"voting strategies for unknown urns: schemes, budgets, simulations"};
    app.require_subcommand(1);

    std::string instance_path, landmarks_path, probs_path, out_path, system, format = "csv";
    std::string mixture = "geometric", p_range = "0.55:0.95:0.05", eps_list_str = "0.2,0.1,0.05";
    std::string n_list_str = "3,4,5,6";
    long long m = -1;
    double eta = -1.0, scale = 1.0, target = 0.9;
    long long trials = 1000;
    std::uint64_t seed = 1;
    int max_k = 5, max_l = 5, terms = 200, resolution = 4001;

    auto* scheme = app.add_subcommand("scheme", "construct a voting scheme and print it as JSON");
    scheme->require_subcommand(1);
    auto* sch_pl = scheme->add_subcommand("plurality", "two-signal plurality scheme");
    sch_pl->add_option("--instance", instance_path, "bichromatic instance JSON")->required();
    sch_pl->add_option("--out", out_path, "output file (stdout if omitted)");
    auto* sch_fl = scheme->add_subcommand("flexible", "landmark-based flexible scheme");
    sch_fl->add_option("--landmarks", landmarks_path, "landmark set JSON")->required();
    sch_fl->add_option("--probs", probs_path, "urn probabilities JSON")->required();
    sch_fl->add_option("--out", out_path, "output file");
    auto* sch_sc = scheme->add_subcommand("scoring", "Brier-rule induced scheme");
    sch_sc->add_option("--instance", instance_path, "bichromatic instance JSON")->required();
    sch_sc->add_option("--out", out_path, "output file");

    auto* kernel_cmd = app.add_subcommand("kernel", "expected-share matrix as CSV");
    kernel_cmd->add_option("--instance", instance_path, "instance JSON")->required();
    kernel_cmd->add_option("--system", system, "plurality|scoring|multicolor")
        ->default_val("multicolor");
    kernel_cmd->add_option("--mixture", mixture, "geometric|uniform level mixture");
    kernel_cmd->add_option("--out", out_path, "output CSV file");

    auto* sim = app.add_subcommand("simulate", "run seeded election trials");
    sim->add_option("--system", system, "plurality|cumulative|condorcet|scoring|multicolor")
        ->required();
    sim->add_option("--instance", instance_path, "instance JSON")->required();
    auto* sim_m = sim->add_option("--m", m, "electorate size");
    auto* sim_eta = sim->add_option("--eta", eta, "failure target; m from the theorem budget");
    sim->add_option("--trials", trials, "trial count")->default_val(1000);
    sim->add_option("--seed", seed, "master seed")->required();
    sim->add_option("--scale", scale, "budget scale factor (multicolor)");
    sim->add_option("--out", out_path, "stats JSON file");
    sim_m->excludes(sim_eta);
    sim_eta->excludes(sim_m);

    auto* coeffs = app.add_subcommand("coeffs", "exact b and a coefficient tables");
    coeffs->add_option("--max-k", max_k, "largest k");
    coeffs->add_option("--max-l", max_l, "largest l");
    coeffs->add_option("--format", format, "csv|json");
    coeffs->add_option("--out", out_path, "output file");

    auto* scan = app.add_subcommand("conjecture-scan", "numeric series evidence scan");
    scan->add_option("--p", p_range, "p grid, a:b:step or comma list");
    scan->add_option("--terms", terms, "series truncation");
    scan->add_option("--resolution", resolution, "x grid points for quadrature");
    scan->add_option("--out", out_path, "output CSV file");

    auto* sexp = app.add_subcommand("scoring-experiment", "minimal-m ratio scoring vs plurality");
    sexp->add_option("--n", max_k, "urn count")->default_val(4);
    sexp->add_option("--eps", eps_list_str, "comma list of eps values");
    sexp->add_option("--target", target, "target success probability");
    sexp->add_option("--trials", trials, "Monte Carlo trials per probe")->default_val(400);
    sexp->add_option("--seed", seed, "master seed")->required();
    sexp->add_option("--out", out_path, "output CSV file");

    auto* scal = app.add_subcommand("scaling-study", "minimal m on I(n, 1/n) per n");
    scal->add_option("--n", n_list_str, "comma list of urn counts");
    scal->add_option("--target", target, "target success probability");
    scal->add_option("--trials", trials, "Monte Carlo trials per probe")->default_val(400);
    scal->add_option("--seed", seed, "master seed")->required();
    scal->add_option("--out", out_path, "output CSV file");

    auto* bud = app.add_subcommand("budget", "theorem electorate budgets");
    bud->add_option("--system", system, "plurality|cumulative|condorcet|multicolor")->required();
    bud->add_option("--instance", instance_path, "instance JSON")->required();
    bud->add_option("--eta", eta, "failure target")->required();
    bud->add_option("--scale", scale, "scale factor");
    bud->add_option("--out", out_path, "output JSON file");

    CLI11_PARSE(app, argc, argv);

    if (sch_pl->parsed()) {
        auto inst = load_bichromatic_file(instance_path);
        write_output(out_path, plurality_scheme_to_json(build_plurality_scheme(inst)));
    } else if (sch_fl->parsed()) {
        std::ifstream in(landmarks_path);
        if (!in) throw std::runtime_error("cannot open " + landmarks_path);
        std::ostringstream ss;
        ss << in.rdbuf();
        auto lms = load_landmarks_json(ss.str());
        auto probs = load_probs_raw(probs_path);
        write_output(out_path, flexible_scheme_to_json(build_flexible_scheme(probs, lms)));
    } else if (sch_sc->parsed()) {
        auto inst = load_bichromatic_file(instance_path);
        auto s = induced_strategy(inst, brier_pair());
        nlohmann::ordered_json j;
        j["schema"] = 1;
        j["q0"] = rat_to_string(s.q0);
        j["q1"] = rat_to_string(s.q1);
        j["q_star"] = rat_to_string(s.q_star);
        auto emit = [](const std::vector<Rat>& v) {
            nlohmann::ordered_json arr = nlohmann::json::array();
            for (const auto& r : v) arr.push_back(rat_to_string(r));
            return arr;
        };
        j["blue_votes"] = emit(s.blue_votes);
        j["red_votes"] = emit(s.red_votes);
        write_output(out_path, j.dump(2));
    } else if (kernel_cmd->parsed()) {
        LevelMixture mix =
            (mixture == "uniform") ? LevelMixture::UniformPositive : LevelMixture::Geometric;
        write_output(out_path, kernel_csv(kernel_for_system(system, instance_path, mix)));
    } else if (sim->parsed()) {
        TrialStats stats;
        if (system == "cumulative") {
            auto inst = load_bichromatic_file(instance_path);
            if (m < 0) m = cumulative_budget(inst, eta);
            stats = simulate_cumulative(inst, m, trials, seed);
        } else if (system == "condorcet") {
            auto inst = load_bichromatic_file(instance_path);
            if (m < 0) m = condorcet_budget(inst, eta);
            stats = simulate_condorcet(inst, m, trials, seed);
        } else {
            auto kernel = kernel_for_system(system, instance_path, LevelMixture::Geometric);
            if (m < 0) {
                if (system == "plurality") {
                    m = plurality_budget(load_bichromatic_file(instance_path), eta).voters;
                } else if (system == "multicolor") {
                    m = multicolor_budget(load_multicolor_file(instance_path), eta, scale);
                } else {
                    throw std::runtime_error("system " + system + " has no eta budget, pass --m");
                }
            }
            stats = simulate_kernel_plurality(system, kernel, m, trials, seed);
        }
        write_output(out_path, trial_stats_to_json(stats));
    } else if (coeffs->parsed()) {
        CoeffTable table(max_k, max_l);
        if (format == "json") {
            nlohmann::ordered_json j;
            j["schema"] = 1;
            j["max_k"] = max_k;
            j["max_l"] = max_l;
            nlohmann::ordered_json bj = nlohmann::json::array(), aj = nlohmann::json::array();
            for (int k = 0; k <= max_k; ++k) {
                nlohmann::ordered_json brow = nlohmann::json::array(),
                                       arow = nlohmann::json::array();
                for (int l = 0; l <= max_l; ++l) {
                    brow.push_back(rat_to_string(table.b(k, l)));
                    arow.push_back(rat_to_string(table.a(k, l)));
                }
                bj.push_back(std::move(brow));
                aj.push_back(std::move(arow));
            }
            j["b"] = std::move(bj);
            j["a"] = std::move(aj);
            write_output(out_path, j.dump(2));
        } else {
            std::ostringstream out;
            out << "k,l,b,a\n";
            for (int k = 0; k <= max_k; ++k) {
                for (int l = 0; l <= max_l; ++l) {
                    out << k << ',' << l << ',' << rat_to_string(table.b(k, l)) << ','
                        << rat_to_string(table.a(k, l)) << '\n';
                }
            }
            write_output(out_path, out.str());
        }
    } else if (scan->parsed()) {
        auto rows = conjecture_scan(parse_range(p_range), resolution, terms);
        write_output(out_path, conjecture_scan_csv(rows));
    } else if (sexp->parsed()) {
        auto rows = efficiency_experiment(max_k, parse_range(eps_list_str), target,
                                          static_cast<int>(trials), seed);
        write_output(out_path, efficiency_table_csv(rows));
    } else if (scal->parsed()) {
        std::vector<int> ns;
        for (double v : parse_range(n_list_str)) ns.push_back(static_cast<int>(v));
        std::vector<long long> ms;
        for (int n : ns) {
            BichromaticInstance inst = lower_bound_instance(n, Rat(1, n));
            auto s = build_plurality_scheme(inst);
            std::vector<std::vector<Rat>> kernel(n);
            for (int i = 1; i <= n; ++i) kernel[i - 1] = expected_shares(s, inst, i);
            ms.push_back(minimal_electorate(kernel, target, static_cast<int>(trials), seed));
        }
        // least-squares slope of ln m against ln n
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        for (size_t i = 0; i < ns.size(); ++i) {
            double x = std::log(static_cast<double>(ns[i]));
            double y = std::log(static_cast<double>(ms[i]));
            sx += x;
            sy += y;
            sxx += x * x;
            sxy += x * y;
        }
        double nn = static_cast<double>(ns.size());
        double slope = (nn * sxy - sx * sy) / (nn * sxx - sx * sx);
        std::ostringstream out;
        out.precision(12);
        out << "n,eps,m_min,loglog_slope\n";
        for (size_t i = 0; i < ns.size(); ++i) {
            out << ns[i] << ',' << (1.0 / ns[i]) << ',' << ms[i] << ',' << slope << '\n';
        }
        write_output(out_path, out.str());
    } else if (bud->parsed()) {
        nlohmann::ordered_json j;
        j["schema"] = 1;
        j["system"] = system;
        j["eta"] = eta;
        if (system == "plurality") {
            auto inst = load_bichromatic_file(instance_path);
            auto b = plurality_budget(inst, eta, scale);
            j["m"] = b.voters;
            j["cap"] = b.cap;
        } else if (system == "cumulative") {
            j["m"] = cumulative_budget(load_bichromatic_file(instance_path), eta);
        } else if (system == "condorcet") {
            j["m"] = condorcet_budget(load_bichromatic_file(instance_path), eta);
        } else if (system == "multicolor") {
            j["m"] = multicolor_budget(load_multicolor_file(instance_path), eta, scale);
        } else {
            throw std::runtime_error("unknown system " + system);
        }
        write_output(out_path, j.dump(2));
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
