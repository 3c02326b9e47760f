#include "urnvote/rng.hpp"

namespace urnvote {

namespace {

std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ull;

}  // namespace

SplitRng::SplitRng(std::uint64_t master_seed, std::uint64_t stream)
    : state_(mix64(master_seed + kGamma) ^ mix64(stream * 0xda942042e4dd58b5ull + kGamma)) {}

SplitRng::result_type SplitRng::operator()() {
    state_ += kGamma;
    return mix64(state_);
}

double SplitRng::uniform() {
    return static_cast<double>((*this)() >> 11) * 0x1.0p-53;
}

}  // namespace urnvote
