#include "tsmom/market_data.hpp"

#include <cmath>

#include "tsmom/errors.hpp"

namespace tsmom {

ReturnSeries log_returns(const PriceSeries& prices, bool use_adjusted) {
    if (prices.size() < 2) {
        throw InsufficientHistory("log returns need at least 2 price points for " +
                                  prices.asset());
    }
    std::vector<double> out;
    out.reserve(prices.size() - 1);
    auto level = [&](int i) {
        return use_adjusted ? prices[i].adj_close : prices[i].close;
    };
    for (int i = 1; i < prices.size(); ++i) {
        out.push_back(std::log(level(i)) - std::log(level(i - 1)));
    }
    return ReturnSeries(prices.asset(), prices.span().start.next(), std::move(out));
}

ReturnSeries excess_returns(const ReturnSeries& returns, const RiskFreeSeries& rf) {
    if (!rf.covers(returns.span())) {
        MonthStamp missing = rf.covers(returns.start()) ? rf.span().last().next()
                                                        : returns.start();
        throw MissingRiskFree("risk-free series does not cover " + missing.str());
    }
    std::vector<double> out;
    out.reserve(returns.size());
    for (int i = 0; i < returns.size(); ++i) {
        out.push_back(returns[i] - rf.at(returns.month(i)));
    }
    return ReturnSeries(returns.asset(), returns.start(), std::move(out));
}

MonthSpan align(std::span<const ReturnSeries> series) {
    if (series.empty()) throw Error("align requires at least one series");
    MonthSpan common = series.front().span();
    for (const auto& s : series.subspan(1)) {
        common = common.intersect(s.span());
    }
    return common;
}

MonthSpan align(const std::vector<ReturnSeries>& series) {
    return align(std::span<const ReturnSeries>(series.data(), series.size()));
}

double monthly_rate_from_annual_pct(double annual_pct) {
    return std::log(1.0 + annual_pct / 100.0) / 12.0;
}

}  // namespace tsmom
