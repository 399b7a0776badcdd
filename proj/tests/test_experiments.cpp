#include "support.hpp"

#include "starcx/csv.hpp"
#include "starcx/experiments.hpp"
#include "starcx/stats.hpp"
#include "starcx/svg.hpp"

#include <doctest.h>

#include <cmath>
#include <sstream>

using namespace starcx;

TEST_CASE("fit of an exact line") {
  const std::vector<double> x{0, 1, 2, 3, 4, 5};
  std::vector<double> y;
  for (double v : x) y.push_back(2 * v + 1);
  const FitResult f = fit(x, y);
  CHECK(f.rho == doctest::Approx(1.0));
  CHECK(f.spearman == doctest::Approx(1.0));
  CHECK(f.slope == doctest::Approx(2.0));
  CHECK(f.intercept == doctest::Approx(1.0));
  CHECK(f.count == 6);
}

TEST_CASE("zero variance is an error, not NaN") {
  const std::vector<double> x{1, 2, 3};
  const std::vector<double> c{4, 4, 4};
  CHECK_THROWS_AS(fit(x, c), UndefinedCorrelation);
  CHECK_THROWS_AS(pearson(c, x), UndefinedCorrelation);
  CHECK_THROWS_AS(pearson(std::vector<double>{1}, std::vector<double>{2}), UndefinedCorrelation);
}

TEST_CASE("correlation properties") {
  Xoshiro256 rng(21);
  for (int t = 0; t < 100; ++t) {
    std::vector<double> x;
    std::vector<double> y;
    const int n = 3 + static_cast<int>(rng.next() % 200);
    for (int i = 0; i < n; ++i) {
      x.push_back(std::floor(rng.next_unit() * 10));  // ties on purpose
      y.push_back(x.back() + rng.next_unit() * 5);
    }
    if (std::all_of(x.begin(), x.end(), [&](double v) { return v == x[0]; })) continue;
    const double r = pearson(x, y);
    CHECK(r >= -1.0);
    CHECK(r <= 1.0);
    std::vector<double> x2;
    for (double v : x) x2.push_back(3.5 * v - 100.0);
    CHECK(std::fabs(pearson(x2, y) - r) <= 1e-9);
    CHECK(spearman(x, y) == doctest::Approx(pearson(ranks(x), ranks(y))));
  }
  CHECK(ranks(std::vector<double>{10, 20, 10, 30}) == std::vector<double>{1.5, 3, 1.5, 4});
}

TEST_CASE("binned means") {
  const std::vector<double> x{0, 1, 2, 3, 4, 5, 6, 7};
  const std::vector<double> y{0, 0, 1, 1, 2, 2, 3, 3};
  const auto bins = binned_means(x, y, 4);
  REQUIRE(bins.size() == 4);
  CHECK(bins[0].mean_y == 0.0);
  CHECK(bins[3].mean_y == 3.0);
  CHECK(bins[3].count == 2);
  CHECK(nondecreasing(bins));
  const std::vector<double> down{3, 3, 2, 2, 1, 1, 0, 0};
  CHECK_FALSE(nondecreasing(binned_means(x, down, 4)));
}

TEST_CASE("csv round trip and errors") {
  const std::vector<std::vector<std::string>> rows{
      {"a", "b,c", "d\"e"}, {"", "multi\nline", "x"}, {"1", "2", "3"}};
  std::ostringstream os;
  for (const auto& r : rows) write_csv_row(os, r);
  const CsvTable t = parse_csv(os.str());
  CHECK(t.header == rows[0]);
  REQUIRE(t.rows.size() == 2);
  CHECK(t.rows[0] == rows[1]);
  CHECK(t.rows[1] == rows[2]);
  CHECK(t.column("b,c") == 1);
  CHECK_THROWS_AS(t.column("zz"), std::out_of_range);
  CHECK_THROWS_AS(parse_csv("a,b\n1\n"), ParseError);
  CHECK_THROWS_AS(parse_csv("a\n\"open\n"), ParseError);
  CHECK(parse_csv("").header.empty());
  CHECK(parse_csv("a,b\r\n1,2\r\n").rows[0][1] == "2");
}

TEST_CASE("real formatting") {
  CHECK(format_real(1.0 / 3.0) == "0.333333333333");
  CHECK(format_real(2.0) == "2");
  CHECK(format_real(1e-20) == "1e-20");
  CHECK(format_real(-4.5) == "-4.5");
}

TEST_CASE("svg scatter is deterministic") {
  const std::vector<double> x{1, 2, 3, 4};
  const std::vector<double> y{2, 4, 5, 8};
  const FitResult f = fit(x, y);
  const std::string a = scatter_svg(x, y, f, {"x", "y<1>", true});
  CHECK(a == scatter_svg(x, y, f, {"x", "y<1>", true}));
  CHECK(a.find("viewBox=\"0 0 800 600\"") != std::string::npos);
  CHECK(a.find("stroke=\"red\"") != std::string::npos);
  CHECK(a.find("stroke=\"green\"") != std::string::npos);
  CHECK(a.find("y&lt;1&gt;") != std::string::npos);
  std::size_t circles = 0;
  for (std::size_t p = a.find("<circle"); p != std::string::npos; p = a.find("<circle", p + 1)) ++circles;
  CHECK(circles == 4);
  CHECK(scatter_svg(x, y, std::nullopt, {}).find("stroke=\"red\"") == std::string::npos);
}

TEST_CASE("walk csv") {
  const WalkTable t = enumerate(3, 2);
  std::ostringstream one;
  std::ostringstream four;
  write_walk_csv(one, t, 1);
  write_walk_csv(four, t, 4);
  CHECK(one.str() == four.str());
  const CsvTable back = parse_csv(one.str());
  CHECK(back.header == walk_csv_header());
  CHECK(back.rows.size() == 4);
  const Contingency c = contingency(back, "star", "starbar");
  CHECK(c.total == 4);
  CHECK(c.at(0, 0) == 1);
  CHECK(c.at(1, 1) == 1);
  CHECK(c.at(1, 2) == 1);
  CHECK(c.at(2, 2) == 1);
}

TEST_CASE("contingency tables") {
  CHECK(contingency(parse_csv(""), "a", "b").total == 0);
  const CsvTable t = parse_csv("a,b\n1,1\n1,2\n2,2\n1,1\n,3\n");
  const Contingency c = contingency(t, "a", "b");
  CHECK(c.total == 4);
  CHECK(c.at(1, 1) == 2);
  CHECK(c.row_totals.at(1) == 3);
  CHECK(c.column_totals.at(2) == 2);
  CHECK_THROWS_AS(contingency(parse_csv("a,b\n1.5,2\n"), "a", "b"), ParseError);

  std::ostringstream os;
  write_contingency_csv(os, c, "a", "b");
  const Contingency again = read_expected_counts(parse_csv(os.str()));
  CHECK(compare_contingency(again, c).empty());

  const Contingency expected = read_expected_counts(parse_csv("r,c,count\n1,1,2\n1,2,2\n3,3,1\n"));
  const auto dev = compare_contingency(c, expected);
  REQUIRE(dev.size() == 3);
  CHECK(dev[0].row == 1);
  CHECK(dev[0].column == 2);
  CHECK(dev[0].expected == 2);
  CHECK(dev[0].actual == 1);
  CHECK(dev[1].row == 2);
  CHECK(dev[2].row == 3);
  CHECK(format_contingency(c, "a", "b").find("total 4") != std::string::npos);
}

TEST_CASE("ER sampling rows") {
  ErConfig cfg;
  cfg.n = 20;
  cfg.count = 5;
  cfg.p_mode = PMode::Fixed;
  cfg.p = 0.0;
  for (const ErRow& r : run_er(cfg)) {
    CHECK(r.status == "ok");
    CHECK(r.edges == 0);
    CHECK(*r.c_linkstring_bits == 190.0);
    CHECK(r.starbar_min_complement == 2);
  }
  cfg.p = 1.0;
  for (const ErRow& r : run_er(cfg)) {
    CHECK(r.starbar == 19);
    CHECK(r.starbar_min_complement == 2);
  }

  ErConfig uni;
  uni.n = 30;
  uni.count = 12;
  uni.seed = 5;
  const auto rows = run_er(uni);
  uni.threads = 4;
  const auto rows4 = run_er(uni);
  std::ostringstream a;
  std::ostringstream b;
  write_er_csv(a, rows);
  write_er_csv(b, rows4);
  CHECK(a.str() == b.str());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(rows[i].id == static_cast<int>(i));
    CHECK(rows[i].status == "ok");
    CHECK(rows[i].p == er_probability(uni, static_cast<int>(i)));
    CHECK(parse_graph6(rows[i].graph6) == er_random(30, rows[i].p, er_graph_seed(5, static_cast<int>(i))));
  }
  const CsvTable back = parse_csv(a.str());
  CHECK(back.header == er_csv_header());
  CHECK(back.rows.size() == 12);
  const Columns cols = numeric_columns(back, "c_linkstring_bits", "star");
  CHECK(cols.x.empty());
  CHECK(cols.skipped == 12);
}

TEST_CASE("ER budget exhaustion flags the row") {
  ErConfig cfg;
  cfg.n = 30;
  cfg.count = 3;
  cfg.p_mode = PMode::Fixed;
  cfg.p = 0.5;
  cfg.canon.node_budget = 0;
  for (const ErRow& r : run_er(cfg)) {
    CHECK(r.status == "budget_exhausted");
    CHECK_FALSE(r.c_linkstring_bits.has_value());
  }
}
