#pragma once

#include <map>
#include <string>
#include <vector>

#include "tsmom/backtest.hpp"
#include "tsmom/series.hpp"

namespace tsmom {

/// Month-by-month asset -> group-label map, either factor quintiles
/// (labels G1..G5, G1 = highest value) or the ten industrial sectors.
struct GroupAssignment {
    enum class Scheme { FactorQuintiles, Sectors };

    Scheme scheme = Scheme::FactorQuintiles;
    Factor factor = Factor::ClosingPrice;  // meaningful for quintiles only
    std::map<MonthStamp, std::map<std::string, std::string>> memberships;
};

inline constexpr int kQuintileCount = 5;

/// Quintile labels "G1".."G5".
std::string quintile_label(int index);

/// Ranks assets by their latest factor value at or before `month`
/// (descending) and splits them into five contiguous blocks whose sizes
/// differ by at most one, larger blocks first (so G1 gets the extras).
/// Ties break by ascending asset identifier. Throws TooFewAssets when
/// fewer than five assets have a value yet.
std::map<std::string, std::string> form_quintiles(const FactorPanel& panel, MonthStamp month);

/// Quintile assignment re-formed at the beginning of every month in `span`.
GroupAssignment form_quintiles_monthly(const FactorPanel& panel, MonthSpan span);

/// Constant sector assignment over every month in `span`.
GroupAssignment sector_assignment(const SectorMap& sectors, MonthSpan span);

/// Equally-weighted average member return per group and month. Members with
/// no return that month are dropped from that month's average; months where
/// a group is empty shrink the span at the edges and are an error in the
/// interior (series must stay gap-free).
std::map<std::string, ReturnSeries> group_returns(const GroupAssignment& assignment,
                                                  const std::vector<ReturnSeries>& returns);

/// Per-group grids sharing one GridSpec.
struct GroupGridSet {
    GridSpec spec;
    std::map<std::string, GridResult> grids;
};

/// One observation of the profitability regression: the annualized ER of a
/// (group, J, K) cell plus the dummy encoding of its group.
struct RegressionDataset {
    struct Row {
        double er = 0.0;
        int lookback_j = 0;
        int holding_k = 0;
        std::string group;
    };

    std::vector<Row> rows;

    /// Design matrix with columns (1, J, K, D2, D3, D4, D5); G1 is the base.
    Matrix design() const;
    std::vector<double> response() const;
};

/// Flattens five quintile grids into the regression dataset. Requires groups
/// G1..G5 under a common spec; cells without a defined mean are skipped.
RegressionDataset build_regression_dataset(const GroupGridSet& grids);

/// Fits the profitability regression over the dataset.
RegressionFit fit_profitability_regression(const RegressionDataset& dataset);

/// Builds per-group grids (quintiles or sectors) by running the grid on each
/// group's equally-weighted return series.
GroupGridSet group_grids(const GroupAssignment& assignment,
                         const std::vector<ReturnSeries>& returns, const RiskFreeSeries& rf,
                         const GridSpec& spec, int workers = 1);

/// Sector protocol A: each sector trades as one index. The sector's
/// equally-weighted return series gets its own signals and one grid.
std::map<std::string, GridResult> sector_index_grid(const SectorMap& sectors,
                                                    const std::vector<ReturnSeries>& returns,
                                                    const RiskFreeSeries& rf,
                                                    const GridSpec& spec, int workers = 1);

/// Sector protocol B: each member stock trades on its own signal; per (J, K)
/// the member strategy streams are averaged cross-sectionally month by month
/// (over members valid that month) and the Newey-West test runs on the
/// averaged stream.
std::map<std::string, GridResult> sector_within_grid(const SectorMap& sectors,
                                                     const std::vector<ReturnSeries>& returns,
                                                     const RiskFreeSeries& rf,
                                                     const GridSpec& spec, int workers = 1);

}  // namespace tsmom
