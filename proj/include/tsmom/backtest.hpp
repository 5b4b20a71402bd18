#pragma once

#include <vector>

#include "tsmom/signal.hpp"
#include "tsmom/stats.hpp"

namespace tsmom {

/// The J x K strategy grid to evaluate. Defaults reproduce the canonical
/// 9 x 9 = 81-strategy layout with J, K in {1,3,6,9,12,24,36,48,60}.
struct GridSpec {
    std::vector<int> lookbacks{1, 3, 6, 9, 12, 24, 36, 48, 60};
    std::vector<int> holdings{1, 3, 6, 9, 12, 24, 36, 48, 60};
    SignalMethod method = SignalMethod::MOP;
    LagPolicy nw_lag = LagPolicy::holding_linked();
    SignificanceLevels levels{};
    SignalOptions signal_options{};

    /// Throws on empty or non-strictly-increasing J/K lists or values < 1.
    void validate() const;

    bool operator==(const GridSpec&) const = default;
};

enum class StrategyClass { TSMOM, TSCON };

/// Why a grid cell carries no t-statistic.
enum class CellError {
    None,
    InsufficientHistory,  // stream empty or too short for the lag policy
    ZeroVariance,         // degenerate constant stream
};

/// Full-sample statistics of one (J, K) strategy.
struct StrategyStats {
    int lookback_j = 0;
    int holding_k = 0;
    double mean_monthly = 0.0;
    double annualized_er = 0.0;  // 12 x mean_monthly
    double t_stat = 0.0;
    int n_months = 0;
    Significance significance = Significance::None;
    StrategyClass strategy_class = StrategyClass::TSCON;
    bool zero_mean = false;  // mean exactly 0: classed TSCON by convention, flagged
    CellError error = CellError::None;

    bool valid() const { return error == CellError::None; }
};

/// J x K matrix of per-strategy statistics.
class GridResult {
public:
    GridResult(GridSpec spec, std::vector<StrategyStats> cells);

    const GridSpec& spec() const { return spec_; }
    int j_count() const { return static_cast<int>(spec_.lookbacks.size()); }
    int k_count() const { return static_cast<int>(spec_.holdings.size()); }
    int cell_count() const { return j_count() * k_count(); }

    const StrategyStats& cell(int j_index, int k_index) const {
        return cells_[static_cast<std::size_t>(j_index) * k_count() + k_index];
    }
    const std::vector<StrategyStats>& cells() const { return cells_; }

private:
    GridSpec spec_;
    std::vector<StrategyStats> cells_;  // row-major, J outer
};

/// Fractions of valid grid cells in the four sign x significance buckets.
struct ClassificationSummary {
    double pos_sig = 0.0;
    double pos_insig = 0.0;
    double neg_sig = 0.0;
    double neg_insig = 0.0;
    int valid_cells = 0;
};

enum class SignificanceLevel { Pct5, Pct1 };

/// Month-t strategy excess return: the average of the K signals in force at
/// month t, times the month-t excess return,
///   [ (1/K) sum over the K most recent signals ] * (r_t - r_{f,t}).
/// The K signals in force are the vintages whose look-back windows end at
/// months t-1 .. t-K (no month is skipped between look-back and holding), so
/// the signal series must cover months t-K+1 .. t. `excess` must already be
/// the excess-return series and cover t.
double strategy_return(const SignalSeries& signals, const ReturnSeries& excess, int holding_k,
                       MonthStamp t);

/// A strategy's month-by-month excess return stream with its calendar anchor.
struct StrategyStream {
    MonthStamp start{};
    std::vector<double> values;

    int size() const { return static_cast<int>(values.size()); }
    MonthStamp month(int i) const { return start.plus(i); }
};

/// The raw strategy-return stream behind run_strategy: one value per month
/// from input month J + K (1-based) onward, the first month where the oldest
/// in-force vintage still has a full look-back window. Throws
/// InsufficientHistory when the input span is <= J + K months.
StrategyStream strategy_return_stream(const ReturnSeries& input, const RiskFreeSeries& rf,
                                      int lookback_j, int holding_k, SignalMethod method,
                                      SignalOptions opts = {});

/// Full-sample statistics of a prepared stream: arithmetic mean, x12
/// annualization, Newey-West t at the given lag, and the significance /
/// TSMOM-TSCON classification. Streams that cannot support the t-test come
/// back as error-marked cells rather than throwing.
StrategyStats summarize_stream(std::span<const double> stream, int lookback_j, int holding_k,
                               int lag, SignificanceLevels levels = {});

/// Runs one (J, K) strategy end to end on a raw return series. The strategy
/// stream starts at the first month with a full signal history (input month
/// J + K); the mean is arithmetic and annualized x12; the t-statistic is
/// Newey-West with the lag given by `lag_policy`. Throws InsufficientHistory
/// when the input span is <= J + K months; a stream too short for inference
/// or with zero variance comes back as an error-marked cell.
StrategyStats run_strategy(const ReturnSeries& input, const RiskFreeSeries& rf, int lookback_j,
                           int holding_k, SignalMethod method, LagPolicy lag_policy,
                           SignificanceLevels levels = {}, SignalOptions opts = {});

/// Evaluates every (J, K) cell of the grid. Cells are independent pure
/// computations; `workers` > 1 evaluates them concurrently with output
/// identical to the single-threaded run (0 means hardware concurrency).
/// Per-cell failures become error markers; only an empty input is fatal.
GridResult run_grid(const ReturnSeries& input, const RiskFreeSeries& rf, const GridSpec& spec,
                    int workers = 1);

/// Partitions valid cells into positive/negative x significant/insignificant
/// at the chosen level. Proportions sum to 1; throws NoValidCells when the
/// grid has no valid cell.
ClassificationSummary classify(const GridResult& grid, SignificanceLevel level);

}  // namespace tsmom
