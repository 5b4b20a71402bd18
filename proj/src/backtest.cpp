#include "tsmom/backtest.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "parallel.hpp"
#include "tsmom/errors.hpp"
#include "tsmom/market_data.hpp"

namespace tsmom {

void GridSpec::validate() const {
    auto check = [](const std::vector<int>& xs, const char* what) {
        if (xs.empty()) throw Error(std::string(what) + " list is empty");
        for (std::size_t i = 0; i < xs.size(); ++i) {
            if (xs[i] < 1) throw Error(std::string(what) + " values must be >= 1");
            if (i > 0 && xs[i] <= xs[i - 1]) {
                throw Error(std::string(what) + " list must be strictly increasing");
            }
        }
    };
    check(lookbacks, "look-back");
    check(holdings, "holding");
    if (nw_lag.kind() == LagPolicy::Kind::Fixed && nw_lag.fixed_lag() < 0) {
        throw Error("fixed Newey-West lag must be >= 0");
    }
}

GridResult::GridResult(GridSpec spec, std::vector<StrategyStats> cells)
    : spec_(std::move(spec)), cells_(std::move(cells)) {
    if (cells_.size() != spec_.lookbacks.size() * spec_.holdings.size()) {
        throw Error("grid cell count does not match spec");
    }
}

double strategy_return(const SignalSeries& signals, const ReturnSeries& excess, int holding_k,
                       MonthStamp t) {
    if (holding_k < 1) throw Error("holding period must be >= 1");
    // The signal at month s keys on returns through s-1, so the K vintages
    // with look-back windows ending t-1 .. t-K are the signals at t .. t-K+1.
    double acc = 0.0;
    for (int m = 0; m < holding_k; ++m) {
        acc += signals.at(t.plus(-m));
    }
    return acc / holding_k * excess.at(t);
}

StrategyStats summarize_stream(std::span<const double> stream, int lookback_j, int holding_k,
                               int lag, SignificanceLevels levels) {
    if (stream.empty()) {
        throw InsufficientHistory("empty strategy-return stream");
    }
    StrategyStats out;
    out.lookback_j = lookback_j;
    out.holding_k = holding_k;
    out.n_months = static_cast<int>(stream.size());

    double acc = 0.0;
    for (double x : stream) acc += x;
    out.mean_monthly = acc / static_cast<double>(stream.size());
    out.annualized_er = annualize(out.mean_monthly);
    out.strategy_class = out.mean_monthly > 0.0 ? StrategyClass::TSMOM : StrategyClass::TSCON;
    out.zero_mean = out.mean_monthly == 0.0;

    try {
        out.t_stat = nw_tstat(stream, lag);
        out.significance = out.zero_mean ? Significance::None : levels.classify(out.t_stat);
    } catch (const ZeroVariance&) {
        out.error = CellError::ZeroVariance;
        out.t_stat = std::numeric_limits<double>::quiet_NaN();
    } catch (const LagTooLarge&) {
        out.error = CellError::InsufficientHistory;
        out.t_stat = std::numeric_limits<double>::quiet_NaN();
    } catch (const InsufficientData&) {
        out.error = CellError::InsufficientHistory;
        out.t_stat = std::numeric_limits<double>::quiet_NaN();
    }
    return out;
}

StrategyStream strategy_return_stream(const ReturnSeries& input, const RiskFreeSeries& rf,
                                      int lookback_j, int holding_k, SignalMethod method,
                                      SignalOptions opts) {
    if (lookback_j < 1 || holding_k < 1) throw Error("J and K must be >= 1");
    const int t_count = input.size();
    if (t_count <= lookback_j + holding_k) {
        throw InsufficientHistory("series " + input.asset() + " has " + std::to_string(t_count) +
                                  " months, need > " + std::to_string(lookback_j + holding_k));
    }
    const SignalSeries signals = signal_series(input, rf, lookback_j, method, opts);
    const ReturnSeries excess = excess_returns(input, rf);

    // First strategy month: input month J + K (1-based), the earliest month
    // where all K in-force vintages have full look-back windows.
    StrategyStream stream;
    stream.start = input.month(lookback_j + holding_k - 1);
    stream.values.reserve(t_count - lookback_j - holding_k + 1);
    for (int i = lookback_j + holding_k - 1; i < t_count; ++i) {
        stream.values.push_back(strategy_return(signals, excess, holding_k, input.month(i)));
    }
    return stream;
}

StrategyStats run_strategy(const ReturnSeries& input, const RiskFreeSeries& rf, int lookback_j,
                           int holding_k, SignalMethod method, LagPolicy lag_policy,
                           SignificanceLevels levels, SignalOptions opts) {
    const StrategyStream stream =
        strategy_return_stream(input, rf, lookback_j, holding_k, method, opts);
    return summarize_stream(stream.values, lookback_j, holding_k,
                            lag_policy.lag_for(holding_k), levels);
}

GridResult run_grid(const ReturnSeries& input, const RiskFreeSeries& rf, const GridSpec& spec,
                    int workers) {
    spec.validate();
    if (input.empty()) throw InsufficientHistory("empty input series");

    const int jn = static_cast<int>(spec.lookbacks.size());
    const int kn = static_cast<int>(spec.holdings.size());
    std::vector<StrategyStats> cells(static_cast<std::size_t>(jn) * kn);

    auto eval_cell = [&](int index) {
        const int j = spec.lookbacks[index / kn];
        const int k = spec.holdings[index % kn];
        try {
            cells[index] =
                run_strategy(input, rf, j, k, spec.method, spec.nw_lag, spec.levels,
                             spec.signal_options);
        } catch (const Error&) {
            StrategyStats failed;
            failed.lookback_j = j;
            failed.holding_k = k;
            failed.error = CellError::InsufficientHistory;
            failed.t_stat = std::numeric_limits<double>::quiet_NaN();
            failed.mean_monthly = std::numeric_limits<double>::quiet_NaN();
            failed.annualized_er = std::numeric_limits<double>::quiet_NaN();
            cells[index] = failed;
        }
    };

    detail::parallel_for(jn * kn, workers, eval_cell);
    return GridResult(spec, std::move(cells));
}

ClassificationSummary classify(const GridResult& grid, SignificanceLevel level) {
    int pos_sig = 0, pos_insig = 0, neg_sig = 0, neg_insig = 0, valid = 0;
    for (const auto& cell : grid.cells()) {
        if (!cell.valid()) continue;
        ++valid;
        const bool positive = cell.strategy_class == StrategyClass::TSMOM;
        const bool significant = level == SignificanceLevel::Pct5
                                     ? cell.significance != Significance::None
                                     : cell.significance == Significance::Sig1;
        if (positive && significant) ++pos_sig;
        else if (positive) ++pos_insig;
        else if (significant) ++neg_sig;
        else ++neg_insig;
    }
    if (valid == 0) throw NoValidCells("grid has no valid cells to classify");

    ClassificationSummary out;
    out.valid_cells = valid;
    out.pos_sig = static_cast<double>(pos_sig) / valid;
    out.pos_insig = static_cast<double>(pos_insig) / valid;
    out.neg_sig = static_cast<double>(neg_sig) / valid;
    out.neg_insig = static_cast<double>(neg_insig) / valid;
    return out;
}

}  // namespace tsmom
