#include "bibcouple/jaro_winkler.hpp"

#include <algorithm>
#include <cstddef>
#include <vector>

namespace bibcouple {

double jaro(std::string_view a, std::string_view b) {
    if (a == b) return 1.0;
    const std::size_t la = a.size(), lb = b.size();
    if (la == 0 || lb == 0) return 0.0;

    const std::size_t max_len = std::max(la, lb);
    const std::size_t window = max_len / 2 > 0 ? max_len / 2 - 1 : 0;

    std::vector<char> a_matched(la, 0), b_matched(lb, 0);
    std::size_t matches = 0;
    for (std::size_t i = 0; i < la; ++i) {
        const std::size_t lo = i > window ? i - window : 0;
        const std::size_t hi = std::min(lb, i + window + 1);
        for (std::size_t j = lo; j < hi; ++j) {
            if (!b_matched[j] && a[i] == b[j]) {
                a_matched[i] = 1;
                b_matched[j] = 1;
                ++matches;
                break;
            }
        }
    }
    if (matches == 0) return 0.0;

    std::size_t transposed = 0;
    std::size_t k = 0;
    for (std::size_t i = 0; i < la; ++i) {
        if (!a_matched[i]) continue;
        while (!b_matched[k]) ++k;
        if (a[i] != b[k]) ++transposed;
        ++k;
    }
    const double m = static_cast<double>(matches);
    const double t = static_cast<double>(transposed) / 2.0;
    return (m / static_cast<double>(la) + m / static_cast<double>(lb) + (m - t) / m) / 3.0;
}

double jaro_winkler(std::string_view a, std::string_view b) {
    constexpr double kPrefixScale = 0.1;
    constexpr std::size_t kMaxPrefix = 4;
    constexpr double kBoostThreshold = 0.7;

    double j = jaro(a, b);
    if (j < kBoostThreshold) return j;
    std::size_t prefix = 0;
    const std::size_t limit = std::min({a.size(), b.size(), kMaxPrefix});
    while (prefix < limit && a[prefix] == b[prefix]) ++prefix;
    return j + static_cast<double>(prefix) * kPrefixScale * (1.0 - j);
}

}  // namespace bibcouple
