#include "urnvote/rational.hpp"

#include <cmath>
#include <cstdint>

namespace urnvote {

Rat rat_from_double(double x) {
    if (!std::isfinite(x)) throw std::invalid_argument("non-finite value");
    if (x == 0.0) return Rat(0);
    int exp = 0;
    double mant = std::frexp(x, &exp);  // x = mant * 2^exp, |mant| in [0.5, 1)
    // 53 doublings make the mantissa integral
    auto scaled = static_cast<int64_t>(std::ldexp(mant, 53));
    exp -= 53;
    Rat r(scaled);
    if (exp >= 0) {
        r *= Rat(BigInt(1) << exp);
    } else {
        r /= Rat(BigInt(1) << (-exp));
    }
    return r;
}

namespace {

// always base 10; a raw BigInt(string) would read a leading zero as octal
BigInt parse_decimal_int(std::string s) {
    if (s.empty()) throw std::invalid_argument("empty integer literal");
    std::string sign;
    if (s[0] == '+' || s[0] == '-') {
        if (s[0] == '-') sign = "-";
        s.erase(0, 1);
    }
    size_t nz = s.find_first_not_of('0');
    s = (nz == std::string::npos) ? "0" : s.substr(nz);
    return BigInt(sign + s);
}

}  // namespace

Rat rat_from_string(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("empty rational literal");
    auto slash = s.find('/');
    if (slash != std::string::npos) {
        BigInt num = parse_decimal_int(s.substr(0, slash));
        BigInt den = parse_decimal_int(s.substr(slash + 1));
        if (den == 0) throw std::invalid_argument("zero denominator: " + s);
        return Rat(num, den);
    }
    auto dot = s.find('.');
    if (dot == std::string::npos) return Rat(parse_decimal_int(s));
    std::string digits = s.substr(0, dot) + s.substr(dot + 1);
    size_t frac_len = s.size() - dot - 1;
    BigInt num = parse_decimal_int(digits);
    BigInt den = 1;
    for (size_t i = 0; i < frac_len; ++i) den *= 10;
    return Rat(num, den);
}

std::string rat_to_string(const Rat& r) {
    std::string num = numerator(r).str();
    if (denominator(r) == 1) return num;
    return num + "/" + denominator(r).str();
}

BigInt binomial(unsigned n, unsigned k) {
    if (k > n) return 0;
    if (k > n - k) k = n - k;
    BigInt result = 1;
    for (unsigned i = 1; i <= k; ++i) {
        result *= n - k + i;
        result /= i;
    }
    return result;
}

std::vector<double> to_doubles(const std::vector<Rat>& v) {
    std::vector<double> out;
    out.reserve(v.size());
    for (const auto& r : v) out.push_back(to_double(r));
    return out;
}

}  // namespace urnvote
