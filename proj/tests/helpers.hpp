#pragma once

#include <random>
#include <vector>

#include "tsmom/series.hpp"

namespace tsmom::testing {

inline MonthStamp month0() { return MonthStamp{2000, 1}; }

inline ReturnSeries make_returns(std::vector<double> values, MonthStamp start = month0(),
                                 std::string asset = "A") {
    return ReturnSeries(std::move(asset), start, std::move(values));
}

inline RiskFreeSeries zero_rf(const ReturnSeries& series) {
    return RiskFreeSeries::zero(series.span());
}

/// Uniform returns in [-0.1, 0.1]; zero windows are measure-zero.
inline ReturnSeries random_returns(std::mt19937_64& rng, int months,
                                   MonthStamp start = month0(), std::string asset = "A") {
    std::uniform_real_distribution<double> dist(-0.1, 0.1);
    std::vector<double> values(months);
    for (auto& v : values) v = dist(rng);
    return ReturnSeries(std::move(asset), start, std::move(values));
}

inline RiskFreeSeries random_rf(std::mt19937_64& rng, MonthSpan span) {
    std::uniform_real_distribution<double> dist(0.0, 0.005);
    std::vector<double> values(span.size());
    for (auto& v : values) v = dist(rng);
    return RiskFreeSeries(span.start, std::move(values));
}

}  // namespace tsmom::testing
