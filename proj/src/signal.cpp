#include "tsmom/signal.hpp"

#include "tsmom/errors.hpp"
#include "tsmom/market_data.hpp"

namespace tsmom {

const char* method_name(SignalMethod m) { return m == SignalMethod::MOP ? "MOP" : "HL"; }

SignalMethod method_from_name(const std::string& name) {
    if (name == "MOP" || name == "mop") return SignalMethod::MOP;
    if (name == "HL" || name == "hl") return SignalMethod::HL;
    throw Error("unknown signal method '" + name + "' (expected hl or mop)");
}

SignalSeries::SignalSeries(std::string asset, SignalMethod method, int lookback_j,
                           MonthStamp start, std::vector<int> values)
    : asset_(std::move(asset)),
      method_(method),
      lookback_j_(lookback_j),
      start_(start),
      values_(std::move(values)) {
    if (lookback_j_ < 1) throw Error("signal look-back must be >= 1");
    for (int v : values_) {
        if (v < -1 || v > 1) throw Error("signal outside {-1, 0, +1}");
    }
}

int SignalSeries::at(MonthStamp m) const {
    if (!covers(m)) {
        throw InsufficientHistory("signal series " + asset_ + " does not cover " + m.str());
    }
    return values_[m - start_];
}

namespace {

int sign_of(double x) { return x > 0.0 ? 1 : (x < 0.0 ? -1 : 0); }

void require_window(const ReturnSeries& series, int lookback_j, MonthStamp t) {
    if (lookback_j < 1) throw Error("signal look-back must be >= 1");
    if (!series.covers(t.plus(-lookback_j)) || !series.covers(t.plus(-1))) {
        throw InsufficientHistory("look-back window t-1..t-" + std::to_string(lookback_j) +
                                  " not covered at " + t.str());
    }
}

}  // namespace

int signal_mop(const ReturnSeries& excess, int lookback_j, MonthStamp t) {
    require_window(excess, lookback_j, t);
    double acc = 0.0;
    for (int j = 1; j <= lookback_j; ++j) {
        acc += excess.at(t.plus(-j));
    }
    return sign_of(acc / lookback_j);
}

int signal_hl(const ReturnSeries& returns, int lookback_j, MonthStamp t) {
    require_window(returns, lookback_j, t);
    double acc = 0.0;
    for (int j = 1; j <= lookback_j; ++j) {
        acc += static_cast<double>(lookback_j - j + 1) * returns.at(t.plus(-j));
    }
    return sign_of(acc / lookback_j);
}

SignalSeries signal_series(const ReturnSeries& input, const RiskFreeSeries& rf, int lookback_j,
                           SignalMethod method, SignalOptions opts) {
    if (lookback_j < 1) throw Error("signal look-back must be >= 1");
    if (input.size() <= lookback_j) {
        throw InsufficientHistory("series " + input.asset() + " has " +
                                  std::to_string(input.size()) + " months, need > " +
                                  std::to_string(lookback_j));
    }
    const bool use_excess = method == SignalMethod::MOP || opts.hl_use_excess;
    const ReturnSeries source = use_excess ? excess_returns(input, rf) : input;

    std::vector<int> out;
    out.reserve(input.size() - lookback_j);
    for (int i = lookback_j; i < input.size(); ++i) {
        const MonthStamp t = input.month(i);
        out.push_back(method == SignalMethod::MOP ? signal_mop(source, lookback_j, t)
                                                  : signal_hl(source, lookback_j, t));
    }
    return SignalSeries(input.asset(), method, lookback_j, input.month(lookback_j),
                        std::move(out));
}

}  // namespace tsmom
