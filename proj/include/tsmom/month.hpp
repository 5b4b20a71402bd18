#pragma once

#include <compare>
#include <string>
#include <string_view>

namespace tsmom {

/// Calendar month, the time index of every series in the engine.
/// Totally ordered by (year, month); December rolls over to January.
struct MonthStamp {
    int year = 0;
    int month = 1;  // 1..12

    bool is_valid() const { return month >= 1 && month <= 12; }

    /// Serial month count since year 0; the arithmetic backbone.
    int serial() const { return year * 12 + (month - 1); }

    MonthStamp next() const { return plus(1); }

    MonthStamp plus(int n) const {
        int s = serial() + n;
        int y = s / 12;
        int m = s % 12;
        if (m < 0) {
            m += 12;
            y -= 1;
        }
        return MonthStamp{y, m + 1};
    }

    /// Months from `rhs` to `lhs` (positive when lhs is later).
    friend int operator-(MonthStamp lhs, MonthStamp rhs) { return lhs.serial() - rhs.serial(); }

    auto operator<=>(const MonthStamp&) const = default;

    std::string str() const;

    /// Parses "YYYY-MM". Throws ParseError-free std::invalid_argument on bad input;
    /// file loaders wrap this with file/line context.
    static MonthStamp parse(std::string_view text);
};

/// Contiguous month interval [start, start + months). months == 0 means empty.
struct MonthSpan {
    MonthStamp start{};
    int months = 0;

    bool empty() const { return months <= 0; }
    int size() const { return months < 0 ? 0 : months; }
    MonthStamp last() const { return start.plus(months - 1); }
    bool contains(MonthStamp m) const { return !empty() && m >= start && m <= last(); }

    /// Intersection of two spans; may be empty.
    MonthSpan intersect(const MonthSpan& other) const;

    bool operator==(const MonthSpan& other) const {
        if (empty() && other.empty()) return true;
        return months == other.months && start == other.start;
    }
};

}  // namespace tsmom
