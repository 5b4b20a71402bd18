#pragma once

#include <span>
#include <vector>

#include "tsmom/series.hpp"

namespace tsmom {

/// Monthly log returns r_m = ln(P_m / P_{m-1}) from a price series.
/// `use_adjusted` picks the dividend/split-adjusted column (the default for
/// individual stocks); raw closes are the usual choice for indices.
ReturnSeries log_returns(const PriceSeries& prices, bool use_adjusted);

/// Subtracts the monthly risk-free rate month by month.
/// The risk-free series must cover the full return span.
ReturnSeries excess_returns(const ReturnSeries& returns, const RiskFreeSeries& rf);

/// Maximal month interval contained in every series' span.
/// Empty input is rejected; an empty intersection is a valid result.
MonthSpan align(std::span<const ReturnSeries> series);
MonthSpan align(const std::vector<ReturnSeries>& series);

/// Converts an annualized percent quote to the engine's monthly log-rate
/// convention: ln(1 + annual/100) / 12. Applied at ingestion behind a flag.
double monthly_rate_from_annual_pct(double annual_pct);

}  // namespace tsmom
