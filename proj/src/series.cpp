#include "tsmom/series.hpp"

#include <array>
#include <cmath>

#include "tsmom/errors.hpp"

namespace tsmom {

PriceSeries::PriceSeries(std::string asset, MonthStamp start, std::vector<PricePoint> points)
    : asset_(std::move(asset)), start_(start), points_(std::move(points)) {
    if (!start_.is_valid()) throw Error("invalid start month for price series " + asset_);
    for (std::size_t i = 0; i < points_.size(); ++i) {
        const auto& p = points_[i];
        if (!(p.close > 0.0) || !(p.adj_close > 0.0) || !std::isfinite(p.close) ||
            !std::isfinite(p.adj_close)) {
            throw NonPositivePrice("non-positive price for " + asset_ + " at " +
                                   start_.plus(static_cast<int>(i)).str());
        }
    }
}

ReturnSeries::ReturnSeries(std::string asset, MonthStamp start, std::vector<double> values)
    : asset_(std::move(asset)), start_(start), values_(std::move(values)) {
    if (!start_.is_valid()) throw Error("invalid start month for return series " + asset_);
    for (std::size_t i = 0; i < values_.size(); ++i) {
        if (!std::isfinite(values_[i])) {
            throw Error("non-finite return for " + asset_ + " at " +
                        start_.plus(static_cast<int>(i)).str());
        }
    }
}

double ReturnSeries::at(MonthStamp m) const {
    if (!covers(m)) {
        throw InsufficientHistory("return series " + asset_ + " does not cover " + m.str());
    }
    return values_[m - start_];
}

RiskFreeSeries::RiskFreeSeries(MonthStamp start, std::vector<double> values)
    : start_(start), values_(std::move(values)) {
    if (!start_.is_valid()) throw Error("invalid start month for risk-free series");
    for (double v : values_) {
        if (!std::isfinite(v)) throw Error("non-finite risk-free rate");
    }
}

RiskFreeSeries RiskFreeSeries::zero(MonthSpan span) {
    return RiskFreeSeries(span.empty() ? MonthStamp{1900, 1} : span.start,
                          std::vector<double>(span.size(), 0.0));
}

double RiskFreeSeries::at(MonthStamp m) const {
    if (!covers(m)) {
        throw MissingRiskFree("risk-free series does not cover " + m.str());
    }
    return values_[m - start_];
}

namespace {

constexpr std::array<const char*, 6> kFactorNames = {
    "ClosingPrice",    "AdjustedPrice", "MarketValueOutstanding",
    "MarketValueAll",  "TurnoverRate",  "TradingVolume",
};

constexpr std::array<const char*, kSectorCount> kSectorNames = {
    "Energy",
    "Materials",
    "Industry",
    "Discretionary Consumption",
    "Essential Consumption",
    "Medical and Health",
    "Finance and Estate",
    "Technology",
    "Telecommunications",
    "Public Utilities",
};

}  // namespace

const char* factor_name(Factor f) { return kFactorNames[static_cast<int>(f)]; }

Factor factor_from_name(const std::string& name) {
    for (std::size_t i = 0; i < kFactorNames.size(); ++i) {
        if (name == kFactorNames[i]) return static_cast<Factor>(i);
    }
    throw UnknownFactor("unknown factor '" + name + "'");
}

void FactorPanel::insert(const std::string& asset, MonthStamp month, double value) {
    if (!std::isfinite(value)) {
        throw Error("non-finite factor value for " + asset + " at " + month.str());
    }
    // Turnover rate may legitimately be zero; prices, values, and volumes may not.
    if (factor_ != Factor::TurnoverRate && !(value > 0.0)) {
        throw Error(std::string("non-positive ") + factor_name(factor_) + " for " + asset +
                    " at " + month.str());
    }
    auto [it, inserted] = cells_[asset].emplace(month, value);
    if (!inserted) {
        throw DuplicateRow("duplicate factor cell (" + asset + ", " + month.str() + ")");
    }
}

bool FactorPanel::latest(const std::string& asset, MonthStamp month, double* value_out) const {
    auto it = cells_.find(asset);
    if (it == cells_.end()) return false;
    const auto& by_month = it->second;
    auto ub = by_month.upper_bound(month);
    if (ub == by_month.begin()) return false;
    --ub;
    if (value_out != nullptr) *value_out = ub->second;
    return true;
}

std::size_t FactorPanel::size() const {
    std::size_t n = 0;
    for (const auto& [asset, by_month] : cells_) n += by_month.size();
    return n;
}

const char* sector_name(Sector s) { return kSectorNames[static_cast<int>(s)]; }

Sector sector_from_name(const std::string& name) {
    for (int i = 0; i < kSectorCount; ++i) {
        if (name == kSectorNames[i]) return static_cast<Sector>(i);
    }
    throw UnknownSector("unknown sector '" + name + "'");
}

void SectorMap::insert(const std::string& asset, Sector sector) {
    auto [it, inserted] = entries_.emplace(asset, sector);
    if (!inserted) throw DuplicateRow("asset " + asset + " already has a sector");
}

Sector SectorMap::at(const std::string& asset) const {
    auto it = entries_.find(asset);
    if (it == entries_.end()) throw Error("asset " + asset + " has no sector");
    return it->second;
}

}  // namespace tsmom
