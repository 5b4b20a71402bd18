#include "tsmom/cross_section.hpp"

#include <algorithm>
#include <limits>

#include "parallel.hpp"
#include "tsmom/errors.hpp"
#include "tsmom/market_data.hpp"

namespace tsmom {

std::string quintile_label(int index) {
    if (index < 0 || index >= kQuintileCount) throw Error("quintile index out of range");
    return "G" + std::to_string(index + 1);
}

std::map<std::string, std::string> form_quintiles(const FactorPanel& panel, MonthStamp month) {
    // Latest value per asset at or before the formation month; assets with
    // no history yet are excluded this month.
    std::vector<std::pair<std::string, double>> ranked;
    for (const auto& [asset, by_month] : panel.cells()) {
        double value = 0.0;
        if (panel.latest(asset, month, &value)) {
            ranked.emplace_back(asset, value);
        }
    }
    const int n = static_cast<int>(ranked.size());
    if (n < kQuintileCount) {
        throw TooFewAssets("only " + std::to_string(n) + " assets have " +
                           factor_name(panel.factor()) + " data at " + month.str() +
                           ", need >= 5");
    }
    // Descending by value, ascending by identifier on ties.
    std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });

    // Contiguous rank blocks with sizes differing by at most one; the larger
    // blocks go to G1 downward.
    const int base = n / kQuintileCount;
    const int extra = n % kQuintileCount;
    std::map<std::string, std::string> out;
    int cursor = 0;
    for (int g = 0; g < kQuintileCount; ++g) {
        const int size = base + (g < extra ? 1 : 0);
        for (int i = 0; i < size; ++i) {
            out[ranked[cursor++].first] = quintile_label(g);
        }
    }
    return out;
}

GroupAssignment form_quintiles_monthly(const FactorPanel& panel, MonthSpan span) {
    GroupAssignment out;
    out.scheme = GroupAssignment::Scheme::FactorQuintiles;
    out.factor = panel.factor();
    for (int i = 0; i < span.size(); ++i) {
        const MonthStamp m = span.start.plus(i);
        try {
            out.memberships[m] = form_quintiles(panel, m);
        } catch (const TooFewAssets&) {
            // Eligibility is monotone in time, so only leading months can
            // fail; they simply stay unformed.
        }
    }
    if (out.memberships.empty()) {
        throw TooFewAssets("no month in the span has 5 assets with factor data");
    }
    return out;
}

GroupAssignment sector_assignment(const SectorMap& sectors, MonthSpan span) {
    if (sectors.entries().empty()) throw Error("sector map is empty");
    std::map<std::string, std::string> labels;
    for (const auto& [asset, sector] : sectors.entries()) {
        labels[asset] = sector_name(sector);
    }
    GroupAssignment out;
    out.scheme = GroupAssignment::Scheme::Sectors;
    for (int i = 0; i < span.size(); ++i) {
        out.memberships[span.start.plus(i)] = labels;
    }
    return out;
}

std::map<std::string, ReturnSeries> group_returns(const GroupAssignment& assignment,
                                                  const std::vector<ReturnSeries>& returns) {
    std::map<std::string, const ReturnSeries*> by_asset;
    for (const auto& series : returns) by_asset[series.asset()] = &series;

    // Per-group month -> mean member return, built in month order.
    std::map<std::string, std::vector<std::pair<MonthStamp, double>>> samples;
    for (const auto& [month, members] : assignment.memberships) {
        std::map<std::string, std::pair<double, int>> sums;  // label -> (sum, count)
        for (const auto& [asset, label] : members) {
            auto it = by_asset.find(asset);
            if (it == by_asset.end() || !it->second->covers(month)) continue;
            auto& [sum, count] = sums[label];
            sum += it->second->at(month);
            ++count;
        }
        for (const auto& [label, sc] : sums) {
            samples[label].emplace_back(month, sc.first / sc.second);
        }
    }

    std::map<std::string, ReturnSeries> out;
    for (auto& [label, points] : samples) {
        // Leading/trailing empty months have already shrunk the span; any
        // interior hole would fabricate a gap, which we refuse to fill in.
        for (std::size_t i = 1; i < points.size(); ++i) {
            if (points[i].first - points[i - 1].first != 1) {
                throw EmptyGroupMonth("group " + label + " has no members with data at " +
                                      points[i - 1].first.next().str());
            }
        }
        std::vector<double> values;
        values.reserve(points.size());
        for (const auto& [m, v] : points) values.push_back(v);
        out.emplace(label, ReturnSeries(label, points.front().first, std::move(values)));
    }
    return out;
}

Matrix RegressionDataset::design() const {
    const int n = static_cast<int>(rows.size());
    Matrix x(n, 7);
    for (int i = 0; i < n; ++i) {
        const Row& row = rows[i];
        x(i, 0) = 1.0;
        x(i, 1) = row.lookback_j;
        x(i, 2) = row.holding_k;
        for (int g = 2; g <= 5; ++g) {
            x(i, 2 + g - 1) = row.group == quintile_label(g - 1) ? 1.0 : 0.0;
        }
    }
    return x;
}

std::vector<double> RegressionDataset::response() const {
    std::vector<double> y;
    y.reserve(rows.size());
    for (const auto& row : rows) y.push_back(row.er);
    return y;
}

RegressionDataset build_regression_dataset(const GroupGridSet& grids) {
    for (int g = 0; g < kQuintileCount; ++g) {
        if (grids.grids.count(quintile_label(g)) == 0) {
            throw MissingGroup("regression dataset needs group " + quintile_label(g));
        }
    }
    if (grids.grids.size() != kQuintileCount) {
        throw MissingGroup("regression dataset expects exactly groups G1..G5");
    }

    RegressionDataset out;
    for (int g = 0; g < kQuintileCount; ++g) {
        const std::string label = quintile_label(g);
        const GridResult& grid = grids.grids.at(label);
        if (!(grid.spec() == grids.spec)) {
            throw SpecMismatch("group " + label + " grid was run under a different spec");
        }
        for (const auto& cell : grid.cells()) {
            // ZeroVariance cells still carry a defined mean; only cells with
            // no stream at all drop out.
            if (cell.error == CellError::InsufficientHistory) continue;
            out.rows.push_back({cell.annualized_er, cell.lookback_j, cell.holding_k, label});
        }
    }
    return out;
}

RegressionFit fit_profitability_regression(const RegressionDataset& dataset) {
    const std::vector<double> y = dataset.response();
    return RegressionFit::from_ols(ols_fit(dataset.design(), y));
}

GroupGridSet group_grids(const GroupAssignment& assignment,
                         const std::vector<ReturnSeries>& returns, const RiskFreeSeries& rf,
                         const GridSpec& spec, int workers) {
    GroupGridSet out;
    out.spec = spec;
    for (const auto& [label, series] : group_returns(assignment, returns)) {
        out.grids.emplace(label, run_grid(series, rf, spec, workers));
    }
    return out;
}

namespace {

std::map<std::string, std::vector<const ReturnSeries*>> sector_members(
    const SectorMap& sectors, const std::vector<ReturnSeries>& returns) {
    std::map<std::string, std::vector<const ReturnSeries*>> out;
    // Every sector present in the map is reported; one with no return data
    // is an input error.
    for (const auto& [asset, sector] : sectors.entries()) {
        out[sector_name(sector)];
    }
    for (const auto& series : returns) {
        if (!sectors.contains(series.asset())) continue;
        out[sector_name(sectors.at(series.asset()))].push_back(&series);
    }
    for (const auto& [label, members] : out) {
        if (members.empty()) {
            throw EmptySector("sector " + label + " has no member with return data");
        }
    }
    return out;
}

}  // namespace

std::map<std::string, GridResult> sector_index_grid(const SectorMap& sectors,
                                                    const std::vector<ReturnSeries>& returns,
                                                    const RiskFreeSeries& rf,
                                                    const GridSpec& spec, int workers) {
    spec.validate();
    const auto members = sector_members(sectors, returns);

    // The sector behaves as one index: equally-weighted member returns, one
    // shared signal. The assignment spans the union of member spans; months
    // without any member shrink each sector's series at the edges.
    MonthStamp lo{};
    MonthStamp hi{};
    bool first = true;
    for (const auto& [label, series_ptrs] : members) {
        for (const auto* s : series_ptrs) {
            lo = first ? s->start() : std::min(lo, s->start());
            hi = first ? s->span().last() : std::max(hi, s->span().last());
            first = false;
        }
    }
    const GroupAssignment assignment = sector_assignment(sectors, MonthSpan{lo, hi - lo + 1});
    const auto series = group_returns(assignment, returns);

    std::map<std::string, GridResult> out;
    for (const auto& [label, series_ptrs] : members) {
        out.emplace(label, run_grid(series.at(label), rf, spec, workers));
    }
    return out;
}

std::map<std::string, GridResult> sector_within_grid(const SectorMap& sectors,
                                                     const std::vector<ReturnSeries>& returns,
                                                     const RiskFreeSeries& rf,
                                                     const GridSpec& spec, int workers) {
    spec.validate();
    const auto members = sector_members(sectors, returns);
    const int jn = static_cast<int>(spec.lookbacks.size());
    const int kn = static_cast<int>(spec.holdings.size());

    std::map<std::string, GridResult> out;
    for (const auto& [label, series_ptrs] : members) {
        std::vector<StrategyStats> cells(static_cast<std::size_t>(jn) * kn);
        const auto& series_list = series_ptrs;
        auto eval_cell = [&](int index) {
            const int j = spec.lookbacks[index / kn];
            const int k = spec.holdings[index % kn];

            // Each member trades on its own signal; the cell statistic comes
            // from the month-by-month cross-sectional average of the member
            // strategy streams, over members valid that month.
            std::map<MonthStamp, std::pair<double, int>> pooled;
            for (const auto* series : series_list) {
                try {
                    const StrategyStream stream =
                        strategy_return_stream(*series, rf, j, k, spec.method,
                                               spec.signal_options);
                    for (int i = 0; i < stream.size(); ++i) {
                        auto& [sum, count] = pooled[stream.month(i)];
                        sum += stream.values[i];
                        ++count;
                    }
                } catch (const Error&) {
                    // Member too short for this (J, K); it joins no months.
                }
            }
            if (pooled.empty()) {
                StrategyStats failed;
                failed.lookback_j = j;
                failed.holding_k = k;
                failed.error = CellError::InsufficientHistory;
                failed.t_stat = std::numeric_limits<double>::quiet_NaN();
                failed.mean_monthly = std::numeric_limits<double>::quiet_NaN();
                failed.annualized_er = std::numeric_limits<double>::quiet_NaN();
                cells[index] = failed;
                return;
            }
            std::vector<double> averaged;
            averaged.reserve(pooled.size());
            for (const auto& [m, sc] : pooled) averaged.push_back(sc.first / sc.second);
            cells[index] = summarize_stream(averaged, j, k, spec.nw_lag.lag_for(k),
                                            spec.levels);
        };
        detail::parallel_for(jn * kn, workers, eval_cell);
        out.emplace(label, GridResult(spec, std::move(cells)));
    }
    return out;
}

}  // namespace tsmom
