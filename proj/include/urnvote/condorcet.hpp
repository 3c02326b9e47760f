#pragma once

#include "urnvote/model.hpp"
#include "urnvote/rng.hpp"

#include <string>
#include <vector>

namespace urnvote {

/// c_{k,l} = (-1)^(k+l) C(k+l,k) - [(-1)^l C(k+l,k) + (-1)^(k+l)(l+1)] / (k+l+2).
Rat coeff_c(int k, int l);

/// Exact rational b_{k,l} and a_{k,l} tables, filled in diagonal order
/// n = k+l via b_{k,l} = (k+1)(x_{k-1,l} + y_{k-1,l} - c_{k+1,l}), with
/// negative-index b's equal to 0.
class CoeffTable {
public:
    CoeffTable(int max_k, int max_l);

    int max_k() const { return max_k_; }
    int max_l() const { return max_l_; }

    const Rat& b(int k, int l) const;
    Rat a(int k, int l) const;  // sum_{i=0..l} C(k+2, i) * b_{k, l-i}

private:
    Rat b_or_zero(int k, int l) const;
    int max_k_;
    int max_l_;
    std::vector<std::vector<Rat>> b_;
};

/// C_n = (1 - 3(-1)^n)/2 * C(2 floor(n/2), floor(n/2)) + (-1)^n; the conjecture
/// identity is sum_{k=0..n} b_{k,n-k}/(k+1) = C_{n+1}.
BigInt catalan_rhs(int n);

/// Double-precision b table for evaluating the truncated series
/// beta_p(x) = sum_{k,l <= K} b_{k,l} (x-1/2)^k (p-1/2)^l.
class SeriesTableF64 {
public:
    explicit SeriesTableF64(int terms);

    int terms() const { return K_; }
    double b(int k, int l) const { return b_[k][l]; }

    /// coef[k] = sum_l b_{k,l} (p-1/2)^l, so beta(x) = sum coef[k] (x-1/2)^k.
    std::vector<double> beta_coeffs(double p) const;
    double beta(double x, double p) const;

private:
    int K_;
    std::vector<std::vector<double>> b_;
};

/// Process-wide table with K = 200 terms, built on first use.
const SeriesTableF64& shared_series_table();

struct ConjectureRow {
    double p;
    double min_beta;       // minimum of the truncated series on the x grid
    double mass_residual;  // |gamma_p + alpha mass + integral(beta_hat) - 1|
    double tail_at_k;      // magnitude of the last retained series term at x=p
};

/// Numeric evidence scan; reports, asserts nothing (the conjecture is open).
std::vector<ConjectureRow> conjecture_scan(const std::vector<double>& p_grid, int x_resolution,
                                           int terms);
std::string conjecture_scan_csv(const std::vector<ConjectureRow>& rows);

/// X_p ranking mixture: for p <= 1/2 the constant p; otherwise a point mass
/// gamma_p = sqrt(1/p - 1) at p, density alpha_p(x) = (p+x)^-2 on [1-p, 1/2]
/// (sampled by closed-form CDF inversion) and density beta_p on (1/2, p)
/// (sampled through a piecewise-linear inverse-CDF table).
class XpSampler {
public:
    XpSampler(double p, const SeriesTableF64& table, double grid_step = 1e-3);

    double p() const { return p_; }
    double point_mass() const { return gamma_; }
    double alpha_mass() const { return mass_alpha_; }
    double beta_mass() const { return mass_beta_; }

    double sample(SplitRng& rng) const;

private:
    double p_;
    double gamma_;
    double mass_alpha_;
    double mass_beta_;
    std::vector<double> xs_;
    std::vector<double> cdf_;
};

/// rank[i] in 1..n, higher = preferred; i beats j iff rank[i] > rank[j].
struct PermutationBallot {
    std::vector<int> rank;

    bool beats(int i, int j) const { return rank[i] > rank[j]; }  // 0-based urns
};

/// Ranks urns by ascending X_p draw (float ties broken by urn index), giving
/// pairwise marginals Pr[i below j] = min(1, 1/(p_i+p_j)) for p_i < p_j.
PermutationBallot sample_permutation(const std::vector<XpSampler>& samplers, SplitRng& rng);

/// Blue draw -> permutation from the p_i samplers, red draw -> from the
/// q_i = 1-p_i samplers; requires a strict instance.
struct CondorcetScheme {
    std::vector<XpSampler> blue;
    std::vector<XpSampler> red;

    int size() const { return static_cast<int>(blue.size()); }
};

CondorcetScheme build_condorcet_scheme(const BichromaticInstance& inst);

PermutationBallot condorcet_ballot(const CondorcetScheme& scheme, bool blue_draw, SplitRng& rng);

/// m = ceil(150 * eps^-2 * ln(3/eta)), independent of n.
long long condorcet_budget(const BichromaticInstance& inst, double eta);

}  // namespace urnvote
