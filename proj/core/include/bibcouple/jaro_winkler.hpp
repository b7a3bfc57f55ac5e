#pragma once

#include <string_view>

namespace bibcouple {

// Jaro similarity in [0,1]. Equal strings score 1 (including two empties);
// if exactly one string is empty the score is 0.
double jaro(std::string_view a, std::string_view b);

// Jaro-Winkler: Jaro plus a prefix adjustment with scale 0.1 over at most
// 4 leading characters, applied only when the Jaro score is >= 0.7.
double jaro_winkler(std::string_view a, std::string_view b);

}  // namespace bibcouple
