#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "tsmom/backtest.hpp"
#include "tsmom/cross_section.hpp"
#include "tsmom/series.hpp"

namespace tsmom {

/// Loads a monthly price panel. Expected CSV (UTF-8, header mandatory):
///   asset,month,close,adj_close
/// with month as YYYY-MM and one row per (asset, month). Rows may arrive in
/// any order; each asset's months must form a gap-free span.
std::vector<PriceSeries> load_prices(const std::filesystem::path& path);

/// Loads the monthly risk-free series. Header: month,rate_monthly.
/// With annual_pct set, values are read as annualized percents and converted
/// to the monthly log convention via ln(1 + annual/100) / 12.
RiskFreeSeries load_riskfree(const std::filesystem::path& path, bool annual_pct = false);

/// Loads factor cells. Header: asset,month,factor,value; factor names must
/// come from the six-member set. Returns one panel per factor present.
std::map<Factor, FactorPanel> load_factors(const std::filesystem::path& path);

/// Loads the asset -> sector map. Header: asset,sector; sector names must
/// come from the ten-member set.
SectorMap load_sectors(const std::filesystem::path& path);

/// Writes a price panel in load_prices format at full double precision, so
/// load -> emit -> load round-trips losslessly.
std::string emit_prices(const std::vector<PriceSeries>& prices);

enum class TableFormat { AlignedText, Csv };

/// Renders a grid. Aligned text mirrors the published layout: J rows, K
/// columns, annualized ER at two decimals (half away from zero) with * / **
/// significance stars and -- for error cells; the method and lag policy are
/// echoed on the first line. CSV is long form, one row per cell, with raw
/// statistics at full precision.
std::string emit_grid_table(const GridResult& grid, TableFormat format);

/// Renders the four-way TSMOM/TSCON proportion summary.
std::string emit_classification(const ClassificationSummary& summary, SignificanceLevel level);

/// One summary line per sector/group: the four proportions side by side.
std::string emit_classification_table(
    const std::map<std::string, ClassificationSummary>& by_group, SignificanceLevel level);

/// Renders a profitability-regression row: coefficients with parenthesized
/// t-statistics and significance stars, plus fit diagnostics.
std::string emit_regression(const std::string& row_label, const RegressionFit& fit,
                            SignificanceLevels levels = {});

/// Two-decimal, half-away-from-zero display rounding used by the tables.
double round_half_away(double value, int decimals);

}  // namespace tsmom
