#include "farch/error.hpp"
#include "farch/ingest.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <sstream>

using namespace farch;

namespace {

// Random-walk ticks every `step` seconds from 0 to `session` for each day.
std::string random_walk_ticks(const std::vector<std::string>& days, std::int64_t session, std::int64_t step,
                              std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 0.001);
    std::ostringstream out;
    out << "date,time,price\n";
    for (const auto& d : days) {
        double log_p = std::log(100.0);
        for (std::int64_t t = 0; t <= session; t += step) {
            out << d << "," << t << "," << format_double(std::exp(log_p)) << "\n";
            log_p += normal(rng);
        }
    }
    return out.str();
}

}  // namespace

TEST(LoadTicks, HeaderOnlyIsEmpty) {
    const auto t = parse_ticks("date,time,price\n");
    EXPECT_EQ(t.size(), 0U);
    EXPECT_TRUE(t.days().empty());
}

TEST(LoadTicks, OneDay) {
    const auto t = parse_ticks("date,time,price\n2000-04-11,0,100\n2000-04-11,300,101\n2000-04-11,600,102\n");
    EXPECT_EQ(t.size(), 3U);
    EXPECT_EQ(t.days(), std::vector<std::string>{"2000-04-11"});
}

TEST(LoadTicks, SortsDaysKeepingIntradayOrder) {
    const auto t = parse_ticks("date,time,price\n2000-04-12,0,5\n2000-04-12,10,6\n2000-04-11,0,7\n");
    EXPECT_EQ(t.days(), (std::vector<std::string>{"2000-04-11", "2000-04-12"}));
    EXPECT_EQ(t.rows()[1].time, 0);
    EXPECT_EQ(t.rows()[2].price, 6.0);
}

TEST(LoadTicks, Errors) {
    try {
        (void)parse_ticks("date,time,price\n2000-04-11,0,100\n2000-04-11,300,0\n");
        FAIL();
    } catch (const InvalidPrice& e) {
        EXPECT_EQ(e.line(), 3U);
    }
    EXPECT_THROW((void)parse_ticks("date,time,price\n2000-04-11,0,-1\n"), InvalidPrice);
    try {
        (void)parse_ticks("date,time,price\n2000-04-11,0,100\n2000-04-11,abc,101\n");
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line(), 3U);
    }
    EXPECT_THROW((void)parse_ticks("date,time,price\n11/04/2000,0,100\n"), ParseError);
    EXPECT_THROW((void)parse_ticks("date,time,price\n2000-04-11,0\n"), ParseError);
    EXPECT_THROW((void)parse_ticks("when,time,price\n"), ParseError);
    try {
        (void)parse_ticks("date,time,price\n2000-04-11,300,100\n2000-04-11,300,101\n");
        FAIL();
    } catch (const NonMonotoneTime& e) {
        EXPECT_EQ(e.day(), "2000-04-11");
    }
}

TEST(BuildReturns, DirectFormula) {
    const auto t = parse_ticks("date,time,price\n2000-04-11,0,100\n2000-04-11,300,101\n2000-04-11,600,102\n");
    const auto r = build_returns(t, 300, 600);
    ASSERT_EQ(r.panel.size(), 1U);
    EXPECT_EQ(r.panel.grid().size(), 2U);
    EXPECT_DOUBLE_EQ(r.panel.curves()[0][0], std::log(101.0) - std::log(100.0));
    EXPECT_DOUBLE_EQ(r.panel.curves()[0][1], std::log(102.0) - std::log(101.0));
    EXPECT_NEAR(r.panel.curves()[0][0], std::log(1.01), 1e-15);
    EXPECT_TRUE(r.dropped.empty());
}

TEST(BuildReturns, ConstantPricesGiveZeroCurve) {
    std::ostringstream s;
    s << "date,time,price\n";
    for (int t = 0; t <= 23400; t += 60) s << "2001-01-02," << t << ",50.5\n";
    const auto r = build_returns(parse_ticks(s.str()), 300, 23400);
    EXPECT_EQ(r.panel.grid().size(), 78U);
    EXPECT_EQ(sup_norm(r.panel.curves()[0]), 0.0);
}

TEST(BuildReturns, RandomWalkSessionHas78Points) {
    const auto r = build_returns(parse_ticks(random_walk_ticks({"2001-01-02", "2001-01-03"}, 23400, 30, 1)), 300, 23400);
    EXPECT_EQ(r.panel.size(), 2U);
    EXPECT_EQ(r.panel.grid().size(), 78U);
}

TEST(BuildReturns, DropsDayMissingAfternoon) {
    std::string text = random_walk_ticks({"2001-01-02", "2001-01-03"}, 23400, 60, 2);
    std::ostringstream half;
    for (int t = 0; t <= 11700; t += 60) half << "2001-01-04," << t << ",42\n";
    text += half.str();
    const auto r = build_returns(parse_ticks(text), 300, 23400);
    EXPECT_EQ(r.panel.days(), (std::vector<std::string>{"2001-01-02", "2001-01-03"}));
    ASSERT_EQ(r.dropped.size(), 1U);
    EXPECT_EQ(r.dropped[0].day, "2001-01-04");
    EXPECT_NE(drop_report_csv(r.dropped).find("2001-01-04,"), std::string::npos);
}

TEST(BuildReturns, DropsDayWithoutOpeningPrice) {
    const auto t = parse_ticks("date,time,price\n2000-04-11,10,100\n2000-04-11,300,101\n2000-04-11,600,102\n");
    EXPECT_THROW((void)build_returns(t, 300, 600), NoUsableDays);
}

TEST(BuildReturns, Preconditions) {
    const auto t = parse_ticks("date,time,price\n2000-04-11,0,100\n2000-04-11,300,101\n2000-04-11,600,102\n");
    EXPECT_THROW((void)build_returns(t, 250, 600), InvalidInput);
    EXPECT_THROW((void)build_returns(t, 0, 600), InvalidInput);
    EXPECT_THROW((void)build_returns(parse_ticks("date,time,price\n"), 300, 600), NoUsableDays);
}

TEST(BuildReturnsProperty, InvariantToTicksThatKeepSampledPrices) {
    std::mt19937_64 rng(4);
    std::uniform_int_distribution<int> offset(1, 299);
    const std::string base_text = random_walk_ticks({"2002-05-01", "2002-05-02", "2002-05-03"}, 23400, 300, 9);
    const auto base = build_returns(parse_ticks(base_text), 300, 23400);

    // Inject, inside each sampling interval, a burst that ends at the price
    // already in force at the next sample time.
    auto ticks = parse_ticks(base_text).rows();
    std::vector<Tick> extra = ticks;
    for (std::size_t i = 0; i + 1 < ticks.size(); ++i) {
        if (ticks[i].day != ticks[i + 1].day) continue;
        const auto mid = ticks[i].time + offset(rng);
        if (mid >= ticks[i + 1].time) continue;
        extra.push_back({ticks[i].day, mid, ticks[i].price * 1.05});
        if (mid + 1 < ticks[i + 1].time) extra.push_back({ticks[i].day, mid + 1, ticks[i + 1].price});
    }
    std::sort(extra.begin(), extra.end(), [](const Tick& a, const Tick& b) {
        return a.day != b.day ? a.day < b.day : a.time < b.time;
    });
    const auto perturbed = build_returns(TickTable(extra), 300, 23400);
    ASSERT_EQ(perturbed.panel.size(), base.panel.size());
    for (std::size_t d = 0; d < base.panel.size(); ++d) {
        EXPECT_EQ(perturbed.panel.curves()[d].values(), base.panel.curves()[d].values());
    }
}

TEST(ReturnPanel, RoundTripThroughCsv) {
    const auto r = build_returns(parse_ticks(random_walk_ticks({"2003-03-03", "2003-03-04"}, 3600, 20, 3)), 300, 3600);
    const auto back = parse_panel_csv(panel_csv(r.panel));
    EXPECT_EQ(back.days(), r.panel.days());
    for (std::size_t d = 0; d < back.size(); ++d) EXPECT_EQ(back.curves()[d].values(), r.panel.curves()[d].values());
}
