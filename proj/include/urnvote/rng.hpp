#pragma once

#include <cstdint>

namespace urnvote {

/// Counter-based splittable generator (splitmix64 core). A (master seed,
/// stream) pair fully determines the sequence, so per-trial streams give
/// identical results for any worker count.
class SplitRng {
public:
    using result_type = std::uint64_t;

    explicit SplitRng(std::uint64_t master_seed, std::uint64_t stream = 0);

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return ~static_cast<result_type>(0); }

    result_type operator()();

    /// Uniform double in [0, 1), 53 random bits.
    double uniform();

private:
    std::uint64_t state_;
};

}  // namespace urnvote
