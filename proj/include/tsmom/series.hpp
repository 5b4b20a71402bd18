#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "tsmom/month.hpp"

namespace tsmom {

/// One price observation. `close` is the raw index/stock level, `adj_close`
/// the dividend/split-adjusted level.
struct PricePoint {
    double close = 0.0;
    double adj_close = 0.0;
};

/// Monthly close prices for one asset over a gap-free month span.
/// Immutable after construction; construction validates positivity.
class PriceSeries {
public:
    PriceSeries(std::string asset, MonthStamp start, std::vector<PricePoint> points);

    const std::string& asset() const { return asset_; }
    MonthSpan span() const { return MonthSpan{start_, static_cast<int>(points_.size())}; }
    int size() const { return static_cast<int>(points_.size()); }
    MonthStamp month(int i) const { return start_.plus(i); }
    const PricePoint& operator[](int i) const { return points_[i]; }
    const std::vector<PricePoint>& points() const { return points_; }

private:
    std::string asset_;
    MonthStamp start_;
    std::vector<PricePoint> points_;
};

/// Monthly log returns for one asset over a gap-free month span.
/// Also used for excess returns and for group/sector aggregate series.
class ReturnSeries {
public:
    ReturnSeries(std::string asset, MonthStamp start, std::vector<double> values);

    const std::string& asset() const { return asset_; }
    MonthSpan span() const { return MonthSpan{start_, static_cast<int>(values_.size())}; }
    int size() const { return static_cast<int>(values_.size()); }
    bool empty() const { return values_.empty(); }
    MonthStamp start() const { return start_; }
    MonthStamp month(int i) const { return start_.plus(i); }
    bool covers(MonthStamp m) const { return span().contains(m); }

    double operator[](int i) const { return values_[i]; }
    /// Value at calendar month m; throws InsufficientHistory when uncovered.
    double at(MonthStamp m) const;

    std::span<const double> values() const { return values_; }

private:
    std::string asset_;
    MonthStamp start_;
    std::vector<double> values_;
};

/// Monthly risk-free rate (log-return convention) over a gap-free span.
class RiskFreeSeries {
public:
    RiskFreeSeries(MonthStamp start, std::vector<double> values);

    /// All-zero risk-free series covering `span`; handy for tests and for
    /// running raw (non-excess) experiments.
    static RiskFreeSeries zero(MonthSpan span);

    MonthSpan span() const { return MonthSpan{start_, static_cast<int>(values_.size())}; }
    int size() const { return static_cast<int>(values_.size()); }
    MonthStamp month(int i) const { return start_.plus(i); }
    bool covers(MonthStamp m) const { return span().contains(m); }
    bool covers(MonthSpan s) const { return s.empty() || (covers(s.start) && covers(s.last())); }

    double operator[](int i) const { return values_[i]; }
    /// Rate at month m; throws MissingRiskFree when uncovered.
    double at(MonthStamp m) const;

    std::span<const double> values() const { return values_; }

private:
    MonthStamp start_;
    std::vector<double> values_;
};

/// Firm characteristics used for the quintile sorts.
enum class Factor {
    ClosingPrice,
    AdjustedPrice,
    MarketValueOutstanding,
    MarketValueAll,
    TurnoverRate,
    TradingVolume,
};

const char* factor_name(Factor f);
/// Throws UnknownFactor for names outside the six-member set.
Factor factor_from_name(const std::string& name);

/// Sparse (asset, month) -> value panel for one factor. Values need not be
/// contiguous in time; quintile formation uses each asset's latest value.
class FactorPanel {
public:
    explicit FactorPanel(Factor factor) : factor_(factor) {}

    Factor factor() const { return factor_; }

    /// Inserts one cell; throws DuplicateRow on a repeated (asset, month)
    /// and Error on non-finite or (for price/value/volume factors) non-positive values.
    void insert(const std::string& asset, MonthStamp month, double value);

    /// Latest value at or before `month`, or nullopt-style pair {false, 0}.
    bool latest(const std::string& asset, MonthStamp month, double* value_out) const;

    const std::map<std::string, std::map<MonthStamp, double>>& cells() const { return cells_; }
    std::size_t size() const;

private:
    Factor factor_;
    std::map<std::string, std::map<MonthStamp, double>> cells_;  // asset -> month -> value
};

/// The ten industrial sector categories.
enum class Sector {
    Energy,
    Materials,
    Industry,
    DiscretionaryConsumption,
    EssentialConsumption,
    MedicalAndHealth,
    FinanceAndEstate,
    Technology,
    Telecommunications,
    PublicUtilities,
};

inline constexpr int kSectorCount = 10;

const char* sector_name(Sector s);
/// Throws UnknownSector for names outside the ten-member set.
Sector sector_from_name(const std::string& name);

/// asset -> sector assignment; each asset belongs to exactly one sector.
class SectorMap {
public:
    /// Throws DuplicateRow if the asset is already mapped.
    void insert(const std::string& asset, Sector sector);

    bool contains(const std::string& asset) const { return entries_.count(asset) > 0; }
    Sector at(const std::string& asset) const;
    const std::map<std::string, Sector>& entries() const { return entries_; }

private:
    std::map<std::string, Sector> entries_;
};

}  // namespace tsmom
