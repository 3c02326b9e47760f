#include "urnvote/multicolor.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace urnvote {

CtLevelDistribution ct_level_distribution(int colors) {
    if (colors < 2) throw std::invalid_argument("need at least 2 colors");
    int T = 1;
    {
        // ceil(log3 C) without floating point
        long long pow3 = 1;
        int e = 0;
        while (pow3 < colors) {
            pow3 *= 3;
            ++e;
        }
        T = e + 1;
    }
    CtLevelDistribution d;
    d.T = T;
    d.alpha = 0;
    Rat pw = 1;
    for (int i = 0; i <= T; ++i) {
        d.alpha += pw;
        pw /= 3;
    }
    d.level_probs.resize(T + 1);
    pw = 1;
    for (int i = T; i >= 0; --i) {
        d.level_probs[i] = pw / d.alpha;
        pw /= 3;
    }
    return d;
}

std::vector<Rat> marking_algorithm(const std::vector<Rat>& probs_for_color, int t,
                                   const Rat& eps) {
    if (t < 0) throw std::invalid_argument("level t must be non-negative");
    if (eps <= 0) throw std::invalid_argument("eps must be positive");
    Rat thr = eps;
    for (int i = 0; i < t; ++i) thr /= 3;

    std::vector<Rat> unmarked(probs_for_color);
    std::sort(unmarked.begin(), unmarked.end());
    unmarked.erase(std::unique(unmarked.begin(), unmarked.end()), unmarked.end());

    std::vector<Rat> w{Rat(0)};
    // everything strictly within thr of the last pick gets marked
    auto sweep = [&](const Rat& center) {
        std::vector<Rat> keep;
        for (const auto& p : unmarked) {
            if (rat_abs(p - center) >= thr) keep.push_back(p);
        }
        unmarked.swap(keep);
    };
    sweep(0);
    while (!unmarked.empty()) {
        Rat wi = unmarked.front();
        w.push_back(wi);
        sweep(wi);
    }
    if (w.back() != 1) w.push_back(Rat(1));
    return w;
}

CtInstance build_ct_landmarks(const MulticolorInstance& inst, int c, int t) {
    if (c < 0 || c >= inst.colors()) throw std::out_of_range("color out of range");
    int n = inst.size();
    std::vector<Rat> probs(n);
    for (int i = 0; i < n; ++i) probs[i] = inst.rows[i][c];

    std::vector<Rat> w = marking_algorithm(probs, t, inst.eps_l1);
    int istar = static_cast<int>(w.size());
    if (istar < 10) {
        // pad with ninth-points of the widest gap
        int gi = 0;
        for (int i = 1; i + 1 < istar; ++i) {
            if (w[i + 1] - w[i] > w[gi + 1] - w[gi]) gi = i;
        }
        Rat lo = w[gi], hi = w[gi + 1];
        int need = 10 - istar;
        for (int k = 1; k <= need; ++k) w.push_back(lo + Rat(k, 9) * (hi - lo));
        std::sort(w.begin(), w.end());
        istar = static_cast<int>(w.size());
    }

    // thirds of every gap
    std::vector<Rat> y;
    y.reserve(3 * istar);
    for (int i = 0; i + 1 < istar; ++i) {
        y.push_back(w[i]);
        y.push_back((2 * w[i] + w[i + 1]) / 3);
        y.push_back((w[i] + 2 * w[i + 1]) / 3);
    }
    y.push_back(w.back());

    Rat eps_ct = 2;
    for (size_t i = 0; i + 1 < y.size(); ++i) eps_ct = std::min(eps_ct, Rat(y[i + 1] - y[i]));

    // Gap-fill sweeps 6.1 (left-to-right, first third of indices) and 6.2
    // (right-to-left, last third). Insertions at the top grow n' and with it
    // the prefix the first sweep must cover, so alternate the two sweeps
    // until neither fires.
    bool changed = true;
    while (changed) {
        changed = false;
        for (;;) {
            int np = static_cast<int>(y.size());
            int klim = (np + 2) / 3;  // ceil(n'/3)
            int idx = -1;
            for (int i = 0; i < std::min(klim, np - 1); ++i) {
                if (y[i + 1] - y[i] > 2 * eps_ct) {
                    idx = i;
                    break;
                }
            }
            if (idx < 0) break;
            y.insert(y.begin() + idx + 1, y[idx] + eps_ct);
            changed = true;
        }
        for (;;) {
            int np = static_cast<int>(y.size());
            int lo = (2 * np) / 3;
            int idx = -1;
            for (int i1 = np - 1; i1 >= std::max(lo, 1); --i1) {
                if (y[i1] - y[i1 - 1] > 2 * eps_ct) {
                    idx = i1;
                    break;
                }
            }
            if (idx < 0) break;
            y.insert(y.begin() + idx, y[idx] - eps_ct);
            changed = true;
        }
    }

    CtInstance ct;
    ct.color = c;
    ct.level = t;
    ct.landmark_set = validate_landmarks(std::move(y));
    ct.eps_ct = eps_ct;
    ct.n_ct = ct.landmark_set.size();
    return ct;
}

std::vector<std::vector<Rat>> multicolor_vote_kernel(const MulticolorInstance& inst,
                                                     LevelMixture mix) {
    int n = inst.size();
    int C = inst.colors();
    CtLevelDistribution lv = ct_level_distribution(C);
    Rat color_wt(1, C);

    std::vector<std::vector<Rat>> E(n, std::vector<Rat>(n, Rat(0)));
    int t_lo = (mix == LevelMixture::Geometric) ? 0 : 1;
    for (int c = 0; c < C; ++c) {
        for (int t = t_lo; t <= lv.T; ++t) {
            Rat wt = (mix == LevelMixture::Geometric) ? Rat(color_wt * lv.level_probs[t])
                                                      : Rat(color_wt / lv.T);
            CtInstance ct = build_ct_landmarks(inst, c, t);
            std::vector<Rat> probs(n);
            for (int i = 0; i < n; ++i) probs[i] = inst.rows[i][c];
            FlexibleScheme s = build_flexible_scheme(probs, ct.landmark_set);
            for (int i = 0; i < n; ++i) {
                const Rat& pi = probs[i];
                for (int j = 0; j < n; ++j) {
                    E[i][j] += wt * (pi * s.blue_votes[j] + (1 - pi) * s.red_votes[j]);
                }
            }
        }
    }
    return E;
}

Rat multicolor_margin_bound(const MulticolorInstance& inst) {
    int n = inst.size();
    int C = inst.colors();
    int T = ct_level_distribution(C).T;
    return inst.eps_l1 / (Rat(26730) * C * T * n * n);
}

long long multicolor_budget(const MulticolorInstance& inst, double eta, double scale) {
    if (!(eta > 0.0 && eta < 1.0)) throw std::invalid_argument("eta must lie in (0,1)");
    if (!(scale > 0.0)) throw std::invalid_argument("scale must be positive");
    double n = inst.size();
    double C = inst.colors();
    double T = ct_level_distribution(inst.colors()).T;
    double eps = to_double(inst.eps_l1);
    double m =
        std::ceil(scale * 7e12 * C * C * T * T * n * n * n / (eps * eps) * std::log(n / eta));
    if (m >= 9e18) throw std::overflow_error("budget exceeds 64-bit range");
    return static_cast<long long>(m);
}

}  // namespace urnvote
