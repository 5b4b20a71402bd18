#include "tsmom/month.hpp"

#include <algorithm>
#include <cstdio>
#include <stdexcept>

namespace tsmom {

std::string MonthStamp::str() const {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%04d-%02d", year, month);
    return buf;
}

MonthStamp MonthStamp::parse(std::string_view text) {
    // Expected form: YYYY-MM (4 digits, dash, 2 digits).
    if (text.size() != 7 || text[4] != '-') {
        throw std::invalid_argument("bad month '" + std::string(text) + "', expected YYYY-MM");
    }
    auto digits = [&](std::string_view s) {
        return std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
    };
    if (!digits(text.substr(0, 4)) || !digits(text.substr(5, 2))) {
        throw std::invalid_argument("bad month '" + std::string(text) + "', expected YYYY-MM");
    }
    int y = (text[0] - '0') * 1000 + (text[1] - '0') * 100 + (text[2] - '0') * 10 + (text[3] - '0');
    int m = (text[5] - '0') * 10 + (text[6] - '0');
    MonthStamp out{y, m};
    if (!out.is_valid()) {
        throw std::invalid_argument("month out of range in '" + std::string(text) + "'");
    }
    return out;
}

MonthSpan MonthSpan::intersect(const MonthSpan& other) const {
    if (empty() || other.empty()) return MonthSpan{};
    MonthStamp lo = std::max(start, other.start);
    MonthStamp hi = std::min(last(), other.last());
    if (hi < lo) return MonthSpan{};
    return MonthSpan{lo, hi - lo + 1};
}

}  // namespace tsmom
