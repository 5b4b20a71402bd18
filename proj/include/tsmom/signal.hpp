#pragma once

#include <cstdint>
#include <vector>

#include "tsmom/series.hpp"

namespace tsmom {

/// The two trading signal rules. MOP keys on the sign of the mean past
/// excess return; HL on the sign of a linearly decaying weighted average
/// of past raw returns.
enum class SignalMethod { MOP, HL };

const char* method_name(SignalMethod m);
SignalMethod method_from_name(const std::string& name);

struct SignalOptions {
    /// Feed excess rather than raw returns into HL (sensitivity analysis only;
    /// the rule as published consumes raw returns).
    bool hl_use_excess = false;

    bool operator==(const SignalOptions&) const = default;
};

/// Monthly positions in {-1, 0, +1} for one (asset, method, J) combination.
/// The first signal month is the (J+1)-th month of the underlying series.
class SignalSeries {
public:
    SignalSeries(std::string asset, SignalMethod method, int lookback_j, MonthStamp start,
                 std::vector<int> values);

    const std::string& asset() const { return asset_; }
    SignalMethod method() const { return method_; }
    int lookback_j() const { return lookback_j_; }
    MonthSpan span() const { return MonthSpan{start_, static_cast<int>(values_.size())}; }
    int size() const { return static_cast<int>(values_.size()); }
    MonthStamp month(int i) const { return start_.plus(i); }
    bool covers(MonthStamp m) const { return span().contains(m); }

    int operator[](int i) const { return values_[i]; }
    /// Signal at month m; throws InsufficientHistory when uncovered.
    int at(MonthStamp m) const;

private:
    std::string asset_;
    SignalMethod method_;
    int lookback_j_;
    MonthStamp start_;
    std::vector<int> values_;
};

/// MOP signal at month t: sign of the mean excess return over t-1 .. t-J,
/// with sign(0) = 0 (flat; hold the risk-free asset).
int signal_mop(const ReturnSeries& excess, int lookback_j, MonthStamp t);

/// HL signal at month t: sign of (1/J)[J r_{t-1} + (J-1) r_{t-2} + ... + r_{t-J}].
/// The 1/J prefactor never changes the sign; it is kept to match the
/// published formula.
int signal_hl(const ReturnSeries& returns, int lookback_j, MonthStamp t);

/// Vectorizes the chosen rule over every month with a full look-back window.
/// `input` holds raw returns; MOP subtracts the risk-free rate internally,
/// HL consumes the raw series (unless opts.hl_use_excess).
SignalSeries signal_series(const ReturnSeries& input, const RiskFreeSeries& rf, int lookback_j,
                           SignalMethod method, SignalOptions opts = {});

}  // namespace tsmom
