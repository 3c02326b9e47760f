#include "urnvote/condorcet.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <sstream>
#include <stdexcept>

namespace urnvote {

Rat coeff_c(int k, int l) {
    if (k < 0 || l < 0) throw std::domain_error("coeff_c needs k, l >= 0");
    BigInt binom_kl = binomial(k + l, k);
    int sgn_kl = ((k + l) % 2 == 0) ? 1 : -1;
    int sgn_l = (l % 2 == 0) ? 1 : -1;
    Rat first(sgn_kl * binom_kl);
    Rat second(sgn_l * binom_kl + sgn_kl * BigInt(l + 1), BigInt(k + l + 2));
    return first - second;
}

CoeffTable::CoeffTable(int max_k, int max_l) : max_k_(max_k), max_l_(max_l) {
    if (max_k < 0 || max_l < 0) throw std::invalid_argument("table extent must be non-negative");
    // x_{k-1,l} reaches second index k-1, so the stored rectangle is widened
    // to cover it and trimmed views are exposed through max_k/max_l.
    int width = std::max(max_l_, max_k_ - 1);
    b_.assign(max_k_ + 1, std::vector<Rat>(width + 1, Rat(0)));
    for (int n = 0; n <= max_k_ + width; ++n) {
        for (int k = std::max(0, n - width); k <= std::min(n, max_k_); ++k) {
            int l = n - k;
            Rat x = 0, y = 0;
            int kk = k - 1;
            for (int i = 0; i <= kk; ++i) {
                for (int j = 0; j + i <= kk; ++j) {
                    x += b_or_zero(i, kk - i - j) * b_or_zero(j, l) /
                         Rat((i + 1) * (i + j + 2));
                }
                Rat term = b_or_zero(i, l) / Rat(i + 1);
                y += ((kk - i) % 2 == 0) ? term : -term;
            }
            b_[k][l] = Rat(k + 1) * (x + y - coeff_c(k + 1, l));
        }
    }
}

Rat CoeffTable::b_or_zero(int k, int l) const {
    if (k < 0 || l < 0) return Rat(0);
    return b_[k][l];
}

const Rat& CoeffTable::b(int k, int l) const {
    if (k < 0 || k > max_k_ || l < 0 || l > max_l_) throw std::out_of_range("b index");
    return b_[k][l];
}

Rat CoeffTable::a(int k, int l) const {
    if (k < 0 || k > max_k_ || l < 0 || l > max_l_) throw std::out_of_range("a index");
    Rat sum = 0;
    for (int i = 0; i <= l; ++i) sum += Rat(binomial(k + 2, i)) * b_[k][l - i];
    return sum;
}

BigInt catalan_rhs(int n) {
    if (n < 0) throw std::domain_error("catalan_rhs needs n >= 0");
    int h = n / 2;
    BigInt sign = (n % 2 == 0) ? 1 : -1;
    BigInt lead = (n % 2 == 0) ? -1 : 2;  // (1 - 3(-1)^n) / 2
    return lead * binomial(2 * h, h) + sign;
}

SeriesTableF64::SeriesTableF64(int terms) : K_(terms) {
    if (terms < 1) throw std::invalid_argument("need at least one series term");
    // c values use exact binomials first; doubles stay accurate to ~1e-13
    // relative on the range the sampler touches.
    b_.assign(K_ + 1, std::vector<double>(K_ + 1, 0.0));
    for (int n = 0; n <= 2 * K_; ++n) {
        for (int k = std::max(0, n - K_); k <= std::min(n, K_); ++k) {
            int l = n - k;
            double x = 0.0, y = 0.0;
            int kk = k - 1;
            for (int i = 0; i <= kk; ++i) {
                for (int j = 0; j + i <= kk; ++j) {
                    x += b_[i][kk - i - j] * b_[j][l] / double((i + 1) * (i + j + 2));
                }
                double term = b_[i][l] / double(i + 1);
                y += ((kk - i) % 2 == 0) ? term : -term;
            }
            b_[k][l] = double(k + 1) * (x + y - to_double(coeff_c(k + 1, l)));
        }
    }
}

std::vector<double> SeriesTableF64::beta_coeffs(double p) const {
    double P = p - 0.5;
    std::vector<double> coef(K_ + 1, 0.0);
    for (int k = 0; k <= K_; ++k) {
        double pl = 1.0;
        double acc = 0.0;
        for (int l = 0; l <= K_; ++l) {
            acc += b_[k][l] * pl;
            pl *= P;
        }
        coef[k] = acc;
    }
    return coef;
}

double SeriesTableF64::beta(double x, double p) const {
    auto coef = beta_coeffs(p);
    double X = x - 0.5, xk = 1.0, acc = 0.0;
    for (int k = 0; k <= K_; ++k) {
        acc += coef[k] * xk;
        xk *= X;
    }
    return acc;
}

const SeriesTableF64& shared_series_table() {
    static const SeriesTableF64 table(200);
    return table;
}

std::vector<ConjectureRow> conjecture_scan(const std::vector<double>& p_grid, int x_resolution,
                                           int terms) {
    if (x_resolution < 2) throw std::invalid_argument("need at least 2 grid points");
    if (terms < 50) throw std::invalid_argument("need at least 50 series terms");
    std::optional<SeriesTableF64> owned;
    const SeriesTableF64* table;
    if (terms == shared_series_table().terms()) {
        table = &shared_series_table();
    } else {
        owned.emplace(terms);
        table = &*owned;
    }

    std::vector<ConjectureRow> rows;
    for (double p : p_grid) {
        if (!(p > 0.5 && p < 1.0)) throw std::invalid_argument("scan needs p in (1/2, 1)");
        auto coef = table->beta_coeffs(p);
        ConjectureRow row;
        row.p = p;
        double gamma = std::sqrt(1.0 / p - 1.0);
        double mass_alpha = (2.0 * p - 1.0) / (2.0 * p + 1.0);
        // trapezoid over [1/2, p]
        double lo = 0.5, hi = p;
        double h = (hi - lo) / (x_resolution - 1);
        double integral = 0.0, min_beta = 0.0;
        bool first = true;
        double prev = 0.0;
        for (int g = 0; g < x_resolution; ++g) {
            double X = lo + g * h - 0.5;
            double xk = 1.0, val = 0.0;
            for (int k = 0; k <= table->terms(); ++k) {
                val += coef[k] * xk;
                xk *= X;
            }
            if (first || val < min_beta) min_beta = val;
            if (!first) integral += 0.5 * (prev + val) * h;
            prev = val;
            first = false;
        }
        row.min_beta = min_beta;
        row.mass_residual = std::fabs(gamma + mass_alpha + integral - 1.0);
        row.tail_at_k =
            std::fabs(coef[table->terms()]) * std::pow(p - 0.5, table->terms());
        rows.push_back(row);
    }
    return rows;
}

std::string conjecture_scan_csv(const std::vector<ConjectureRow>& rows) {
    std::ostringstream out;
    out.precision(12);
    out << "p,min_beta,mass_residual,tail_at_k\n";
    for (const auto& r : rows) {
        out << r.p << ',' << r.min_beta << ',' << r.mass_residual << ',' << r.tail_at_k << '\n';
    }
    return out.str();
}

XpSampler::XpSampler(double p, const SeriesTableF64& table, double grid_step) : p_(p) {
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("p outside [0,1]");
    if (p <= 0.5) {
        gamma_ = 1.0;
        mass_alpha_ = 0.0;
        mass_beta_ = 0.0;
        return;
    }
    gamma_ = std::sqrt(1.0 / p - 1.0);
    mass_alpha_ = (2.0 * p - 1.0) / (2.0 * p + 1.0);
    mass_beta_ = 2.0 / (2.0 * p + 1.0) - gamma_;

    auto coef = table.beta_coeffs(p);
    int K = table.terms();
    int ngrid = std::max(2, static_cast<int>(std::lround((p - 0.5) / grid_step)) + 1);
    xs_.resize(ngrid);
    cdf_.resize(ngrid);
    for (int g = 0; g < ngrid; ++g) {
        double x = 0.5 + (p - 0.5) * g / (ngrid - 1);
        xs_[g] = x;
        // antiderivative of the series, sum coef[k]/(k+1) (x-1/2)^(k+1)
        double X = x - 0.5, xk = X, acc = 0.0;
        for (int k = 0; k <= K; ++k) {
            acc += coef[k] / (k + 1) * xk;
            xk *= X;
        }
        cdf_[g] = acc;
    }
    double total = cdf_.back();
    if (!(total > 0.0)) throw std::runtime_error("beta segment has non-positive mass");
    for (auto& v : cdf_) v /= total;
    // enforce monotonicity against float wiggles in the far tail
    for (int g = 1; g < ngrid; ++g) cdf_[g] = std::max(cdf_[g], cdf_[g - 1]);
}

double XpSampler::sample(SplitRng& rng) const {
    if (p_ <= 0.5) return p_;
    double u = rng.uniform();
    if (u < mass_alpha_) {
        // unnormalized CDF F(y) = (y-1+p)/(y+p) on [1-p, 1/2] hits mass_alpha_
        // at y = 1/2, so u itself is the CDF value to invert
        return (1.0 - p_ + u * p_) / (1.0 - u);
    }
    u -= mass_alpha_;
    if (u < mass_beta_) {
        double f = u / mass_beta_;
        auto it = std::lower_bound(cdf_.begin(), cdf_.end(), f);
        if (it == cdf_.begin()) return xs_.front();
        if (it == cdf_.end()) return xs_.back();
        size_t i = static_cast<size_t>(it - cdf_.begin());
        double c0 = cdf_[i - 1], c1 = cdf_[i];
        double span = std::max(c1 - c0, 1e-300);
        return xs_[i - 1] + (xs_[i] - xs_[i - 1]) * (f - c0) / span;
    }
    return p_;  // point mass
}

PermutationBallot sample_permutation(const std::vector<XpSampler>& samplers, SplitRng& rng) {
    int n = static_cast<int>(samplers.size());
    std::vector<double> draws(n);
    for (int i = 0; i < n; ++i) draws[i] = samplers[i].sample(rng);
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        if (draws[a] != draws[b]) return draws[a] < draws[b];
        return a < b;
    });
    PermutationBallot ballot;
    ballot.rank.resize(n);
    for (int pos = 0; pos < n; ++pos) ballot.rank[order[pos]] = pos + 1;
    return ballot;
}

CondorcetScheme build_condorcet_scheme(const BichromaticInstance& inst) {
    if (!inst.strict || inst.size() < 2) {
        throw std::invalid_argument("condorcet scheme needs a strict instance");
    }
    const SeriesTableF64& table = shared_series_table();
    CondorcetScheme scheme;
    scheme.blue.reserve(inst.size());
    scheme.red.reserve(inst.size());
    for (const auto& p : inst.probs) {
        double pd = to_double(p);
        scheme.blue.emplace_back(pd, table);
        scheme.red.emplace_back(1.0 - pd, table);
    }
    return scheme;
}

PermutationBallot condorcet_ballot(const CondorcetScheme& scheme, bool blue_draw, SplitRng& rng) {
    return sample_permutation(blue_draw ? scheme.blue : scheme.red, rng);
}

long long condorcet_budget(const BichromaticInstance& inst, double eta) {
    if (!(eta > 0.0 && eta < 1.0)) throw std::invalid_argument("eta must lie in (0,1)");
    if (!inst.strict || inst.size() < 2) throw std::invalid_argument("need a strict instance");
    double eps = to_double(inst.eps);
    double m = std::ceil(150.0 / (eps * eps) * std::log(3.0 / eta));
    if (m >= 9e18) throw std::overflow_error("budget exceeds 64-bit range");
    return static_cast<long long>(m);
}

}  // namespace urnvote
