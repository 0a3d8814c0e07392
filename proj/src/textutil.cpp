#include "mtsim/textutil.hpp"

#include <cctype>
#include <charconv>
#include <cmath>

namespace mtsim {

std::string format_double(double value) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, ptr);
}

bool parse_double(std::string_view token, double& out) {
    if (token.empty()) return false;
    double value = 0.0;
    const char* first = token.data();
    const char* last = token.data() + token.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last) return false;
    if (!std::isfinite(value)) return false;
    out = value;
    return true;
}

std::string to_upper(std::string_view s) {
    std::string out(s);
    for (char& c : out) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    return out;
}

}  // namespace mtsim
