#pragma once

#include "urnvote/rational.hpp"

#include <string>
#include <vector>

namespace urnvote {

/// A collection of bichromatic urns, sorted by blue-ball fraction.
/// eps is the smallest gap between consecutive fractions; the instance is
/// "strict" when all fractions are distinct (eps > 0).
struct BichromaticInstance {
    std::vector<Rat> probs;  // sorted non-decreasing, in [0,1]
    Rat eps;
    bool strict = false;

    int size() const { return static_cast<int>(probs.size()); }
    const Rat& p(int i) const { return probs.at(i - 1); }  // 1-based
};

/// An urn collection over C >= 2 colors; row i is urn i's distribution.
/// eps_l1 is the minimum pairwise l1 distance between rows.
struct MulticolorInstance {
    std::vector<std::vector<Rat>> rows;
    Rat eps_l1;

    int size() const { return static_cast<int>(rows.size()); }
    int colors() const { return rows.empty() ? 0 : static_cast<int>(rows[0].size()); }
};

BichromaticInstance make_bichromatic(std::vector<Rat> probs);

/// The hard family: p_i = (1 - eps*(n-1))/2 + (i-1)*eps, symmetric about 1/2.
BichromaticInstance lower_bound_instance(int n, const Rat& eps);

MulticolorInstance make_multicolor(std::vector<std::vector<Rat>> rows);

// JSON file formats: {"probs": [...]} / {"rows": [[...]]}, entries given as
// numbers or exact "a/b" strings.
BichromaticInstance load_bichromatic_json(const std::string& json_text);
MulticolorInstance load_multicolor_json(const std::string& json_text);
std::string bichromatic_to_json(const BichromaticInstance& inst);
std::string multicolor_to_json(const MulticolorInstance& inst);

BichromaticInstance load_bichromatic_file(const std::string& path);
MulticolorInstance load_multicolor_file(const std::string& path);

}  // namespace urnvote
