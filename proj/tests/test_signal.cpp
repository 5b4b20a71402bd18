#include <random>

#include "doctest.h"
#include "helpers.hpp"
#include "tsmom/errors.hpp"
#include "tsmom/signal.hpp"

using namespace tsmom;
using namespace tsmom::testing;

TEST_CASE("mop signal follows the sign of the mean past excess return") {
    // Window values listed oldest first; t is the month after the window.
    const ReturnSeries all_pos = make_returns({0.03, 0.01, 0.02});
    const MonthStamp t = month0().plus(3);
    CHECK(signal_mop(all_pos, 3, t) == 1);

    const ReturnSeries zeros = make_returns({0.0, 0.0, 0.0});
    CHECK(signal_mop(zeros, 3, t) == 0);

    // mean = (-0.010 + 0.005 + 0.004) / 3 = -1/3000
    const ReturnSeries mixed = make_returns({0.004, 0.005, -0.010});
    CHECK(signal_mop(mixed, 3, t) == -1);
}

TEST_CASE("hl signal weights recent months more") {
    CHECK(signal_hl(make_returns({0.05}), 1, month0().plus(1)) == 1);

    // (2 * 0.01 + 1 * (-0.03)) / 2 = -0.005
    CHECK(signal_hl(make_returns({-0.03, 0.01}), 2, month0().plus(2)) == -1);

    const ReturnSeries equal = make_returns({0.007, 0.007, 0.007});
    CHECK(signal_hl(equal, 3, month0().plus(3)) == 1);
}

TEST_CASE("signals demand a full look-back window") {
    const ReturnSeries r = make_returns({0.01, 0.02});
    CHECK_THROWS_AS(signal_mop(r, 3, month0().plus(2)), InsufficientHistory);
    CHECK_THROWS_AS(signal_hl(r, 1, month0()), InsufficientHistory);
    CHECK_THROWS_AS(signal_series(r, zero_rf(r), 2, SignalMethod::HL), InsufficientHistory);
}

TEST_CASE("signal series starts at the (J+1)-th month") {
    std::mt19937_64 rng(1);
    const ReturnSeries r = random_returns(rng, 13);
    const SignalSeries s = signal_series(r, zero_rf(r), 12, SignalMethod::MOP);
    CHECK(s.size() == 1);
    CHECK(s.month(0) == r.month(12));
    CHECK(s.lookback_j() == 12);
}

TEST_CASE("J=1 with zero risk-free rate makes HL and MOP coincide") {
    std::mt19937_64 rng(2);
    for (int rep = 0; rep < 100; ++rep) {
        const ReturnSeries r = random_returns(rng, 24);
        const RiskFreeSeries rf = zero_rf(r);
        const SignalSeries hl = signal_series(r, rf, 1, SignalMethod::HL);
        const SignalSeries mop = signal_series(r, rf, 1, SignalMethod::MOP);
        REQUIRE(hl.size() == mop.size());
        for (int i = 0; i < hl.size(); ++i) CHECK(hl[i] == mop[i]);
    }
}

TEST_CASE("signals are invariant under positive scaling") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> lambda_dist(0.1, 10.0);
    for (int rep = 0; rep < 100; ++rep) {
        const ReturnSeries r = random_returns(rng, 30);
        const double lambda = lambda_dist(rng);
        std::vector<double> scaled(r.values().begin(), r.values().end());
        for (auto& v : scaled) v *= lambda;
        const ReturnSeries rs = make_returns(scaled);

        for (int j : {1, 3, 6}) {
            const SignalSeries a = signal_series(r, zero_rf(r), j, SignalMethod::HL);
            const SignalSeries b = signal_series(rs, zero_rf(rs), j, SignalMethod::HL);
            for (int i = 0; i < a.size(); ++i) CHECK(a[i] == b[i]);
            const SignalSeries c = signal_series(r, zero_rf(r), j, SignalMethod::MOP);
            const SignalSeries d = signal_series(rs, zero_rf(rs), j, SignalMethod::MOP);
            for (int i = 0; i < c.size(); ++i) CHECK(c[i] == d[i]);
        }
    }
}

TEST_CASE("negating returns negates the signals") {
    std::mt19937_64 rng(4);
    for (int rep = 0; rep < 100; ++rep) {
        const ReturnSeries r = random_returns(rng, 30);
        std::vector<double> neg(r.values().begin(), r.values().end());
        for (auto& v : neg) v = -v;
        const ReturnSeries rn = make_returns(neg);

        for (int j : {1, 2, 6}) {
            const SignalSeries a = signal_series(r, zero_rf(r), j, SignalMethod::HL);
            const SignalSeries b = signal_series(rn, zero_rf(rn), j, SignalMethod::HL);
            for (int i = 0; i < a.size(); ++i) CHECK(a[i] == -b[i]);
        }
    }
}

TEST_CASE("signals never look ahead") {
    std::mt19937_64 rng(5);
    const ReturnSeries r = random_returns(rng, 40);
    const SignalSeries full = signal_series(r, zero_rf(r), 6, SignalMethod::HL);

    // Perturb every return from month index 20 onward; signals before and at
    // month 20 must not move.
    std::vector<double> bumped(r.values().begin(), r.values().end());
    for (std::size_t i = 20; i < bumped.size(); ++i) bumped[i] += 0.5;
    const ReturnSeries rb = make_returns(bumped);
    const SignalSeries after = signal_series(rb, zero_rf(rb), 6, SignalMethod::HL);

    for (int i = 0; i < full.size(); ++i) {
        if (full.month(i) <= r.month(20)) {
            CHECK(full[i] == after.at(full.month(i)));
        }
    }
}

TEST_CASE("mop uses excess returns while hl uses raw returns") {
    // Raw returns are slightly positive but the risk-free rate eats them.
    const ReturnSeries r = make_returns({0.002, 0.002, 0.002, 0.002});
    const RiskFreeSeries rf(month0(), {0.003, 0.003, 0.003, 0.003});
    const SignalSeries mop = signal_series(r, rf, 3, SignalMethod::MOP);
    const SignalSeries hl = signal_series(r, rf, 3, SignalMethod::HL);
    CHECK(mop[0] == -1);  // mean excess negative
    CHECK(hl[0] == 1);    // raw returns positive

    SignalOptions opts;
    opts.hl_use_excess = true;
    const SignalSeries hl_excess = signal_series(r, rf, 3, SignalMethod::HL, opts);
    CHECK(hl_excess[0] == -1);
}

TEST_CASE("signal series values stay in the allowed set") {
    CHECK_THROWS_AS(SignalSeries("A", SignalMethod::HL, 1, month0(), {2}), Error);
    CHECK_THROWS_AS(SignalSeries("A", SignalMethod::HL, 0, month0(), {1}), Error);
}
