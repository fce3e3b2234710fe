#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "conceptrealm/errors.hpp"
#include "conceptrealm/hash.hpp"
#include "conceptrealm/rng.hpp"
#include "conceptrealm/stats.hpp"
#include "conceptrealm/timeutil.hpp"

using namespace conceptrealm;

TEST_CASE("mean and variances") {
  std::vector<double> xs = {1, 2, 3, 4, 5};
  CHECK(mean(xs) == doctest::Approx(3.0));
  CHECK(population_variance(xs) == doctest::Approx(2.0));
  CHECK(sample_std(xs) == doctest::Approx(std::sqrt(2.5)));
  CHECK(population_variance(std::vector<double>{0.6, -0.6}) == doctest::Approx(0.36));
}

TEST_CASE("percentile uses linear interpolation between closest ranks") {
  CHECK(percentile({0.0, 0.36}, 0.75) == doctest::Approx(0.27));
  CHECK(percentile({1, 2, 3, 4}, 0.5) == doctest::Approx(2.5));
  CHECK(percentile({5}, 0.75) == 5.0);
  CHECK(percentile({3, 1, 2}, 0.0) == 1.0);
  CHECK(percentile({3, 1, 2}, 1.0) == 3.0);
  CHECK(median({1, 2, 3, 4}) == doctest::Approx(2.5));
  CHECK(median({7}) == 7.0);
  CHECK_THROWS_AS(percentile({}, 0.5), DataError);
}

TEST_CASE("regularized incomplete beta against reference values") {
  // scipy.special.betainc
  CHECK(regularized_incomplete_beta(2.0, 0.5, 4.0 / 22.0) ==
        doctest::Approx(0.013235599563682685).epsilon(1e-10));
  CHECK(regularized_incomplete_beta(0.5, 0.5, 0.5) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(regularized_incomplete_beta(2.0, 3.0, 0.0) == 0.0);
  CHECK(regularized_incomplete_beta(2.0, 3.0, 1.0) == 1.0);
}

TEST_CASE("paired t-test reference values") {
  std::vector<double> a = {1, 2, 3, 4, 5};
  std::vector<double> zero(5, 0.0);
  TTestResult r = paired_t_test(a, zero);
  CHECK(r.t == doctest::Approx(4.242640687119285).epsilon(1e-12));
  CHECK(r.df == 4);
  // scipy.stats.ttest_rel two-tailed p
  CHECK(r.p_value == doctest::Approx(0.013235599563682695).epsilon(1e-9));
  CHECK_FALSE(r.degenerate_variance);

  // t=2.5 df=7 and t=0.5 df=9 cross-checks
  {
    double t = 2.5;
    double df = 7;
    CHECK(regularized_incomplete_beta(df / 2, 0.5, df / (df + t * t)) ==
          doctest::Approx(0.04099221858575289).epsilon(1e-10));
  }
  {
    double t = 0.5;
    double df = 9;
    CHECK(regularized_incomplete_beta(df / 2, 0.5, df / (df + t * t)) ==
          doctest::Approx(0.6290712998260265).epsilon(1e-10));
  }
}

TEST_CASE("paired t-test edge cases") {
  std::vector<double> a = {2, 2, 2};
  TTestResult zero = paired_t_test(a, a);
  CHECK(zero.t == 0.0);
  CHECK(zero.p_value == 1.0);
  CHECK_FALSE(zero.degenerate_variance);

  std::vector<double> b = {1, 1, 1};
  TTestResult degenerate = paired_t_test(a, b);
  CHECK(degenerate.p_value == 0.0);
  CHECK(degenerate.degenerate_variance);

  CHECK_THROWS_AS(paired_t_test(std::vector<double>{1.0}, std::vector<double>{2.0}), DataError);
  CHECK_THROWS_AS(paired_t_test(std::vector<double>{1, 2}, std::vector<double>{1}), DataError);
}

TEST_CASE("paired t-test antisymmetry and p monotonicity") {
  std::vector<double> a = {1.2, 0.8, 2.5, 3.1, 0.3, 1.9};
  std::vector<double> b = {0.6, 1.1, 2.0, 2.2, 0.9, 1.4};
  TTestResult ab = paired_t_test(a, b);
  TTestResult ba = paired_t_test(b, a);
  CHECK(ab.t == doctest::Approx(-ba.t).epsilon(1e-12));
  CHECK(ab.p_value == doctest::Approx(ba.p_value).epsilon(1e-12));

  double df = 6;
  double prev = 1.0;
  for (double t = 0.5; t < 6.0; t += 0.5) {
    double p = regularized_incomplete_beta(df / 2, 0.5, df / (df + t * t));
    CHECK(p < prev);
    prev = p;
  }
}

TEST_CASE("normalized top entropy") {
  CHECK(normalized_top_entropy({1, 1, 1, 1, 1}, 5, 5) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(normalized_top_entropy({0.5, 0.5, 0, 0, 0}, 5, 5) ==
        doctest::Approx(std::log(2) / std::log(5)).epsilon(1e-12));
  CHECK(normalized_top_entropy({42.0}, 1, 5) == 0.0);
  // scale invariance
  CHECK(normalized_top_entropy({2, 1, 1}, 3, 5) ==
        doctest::Approx(normalized_top_entropy({200, 100, 100}, 3, 5)).epsilon(1e-12));
  // permutation invariance
  CHECK(normalized_top_entropy({3, 1, 2}, 3, 5) ==
        doctest::Approx(normalized_top_entropy({1, 2, 3}, 3, 5)).epsilon(1e-12));
  // only top-k shares participate
  CHECK(normalized_top_entropy({1, 1, 1, 1, 1, 1, 1}, 7, 5) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("sha256 test vectors") {
  CHECK(sha256_hex("") == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  CHECK(sha256_hex("abcdbcdecdefdefgefghfghighijhijkijkljklmklmnlmnomnopnopq") ==
        "248d6a61d20638b8e5c026930c3e6039a33ce45964ff2167f6ecedd419db06c1");
  std::string million(1000000, 'a');
  CHECK(sha256_hex(million) == "cdc76e5c9914fb9281a1c7e284d73e67f1809a48a497200e046d39ccc7112cd0");
}

TEST_CASE("splitmix64 streams are deterministic and key-dependent") {
  SplitMix64 a = stream_for(42, "doc-1");
  SplitMix64 b = stream_for(42, "doc-1");
  SplitMix64 c = stream_for(42, "doc-2");
  CHECK(a.next() == b.next());
  CHECK(a.next() == b.next());
  CHECK(stream_for(42, "doc-1").next() != c.next());
  CHECK(derive_seed(1, 2) != derive_seed(2, 1));

  SplitMix64 u(123);
  for (int i = 0; i < 1000; ++i) {
    double x = u.next_double();
    CHECK(x >= 0.0);
    CHECK(x < 1.0);
    auto below = u.next_below(7);
    CHECK(below < 7);
  }
}

TEST_CASE("iso8601 parsing and formatting") {
  auto t = parse_iso8601("2016-03-07T12:34:56Z");
  REQUIRE(t.has_value());
  CHECK(format_iso8601(*t) == "2016-03-07T12:34:56Z");
  CHECK(year_of(*t) == 2016);
  CHECK(quarter_of(*t) == 1);

  CHECK(parse_iso8601("2016-03-07") == parse_iso8601("2016-03-07T00:00:00Z"));
  CHECK(parse_iso8601("2016-03-07T12:34:56+02:00")->sec ==
        parse_iso8601("2016-03-07T10:34:56Z")->sec);
  CHECK(parse_iso8601("2016-03-07T12:34:56.789Z")->sec ==
        parse_iso8601("2016-03-07T12:34:56Z")->sec);
  CHECK(parse_iso8601("2016-03-07 12:34:56")->sec == parse_iso8601("2016-03-07T12:34:56Z")->sec);

  CHECK_FALSE(parse_iso8601("garbage").has_value());
  CHECK_FALSE(parse_iso8601("2016-13-01").has_value());
  CHECK_FALSE(parse_iso8601("2016-02-30").has_value());
  CHECK_FALSE(parse_iso8601("2016-02-01T25:00:00Z").has_value());
  CHECK_FALSE(parse_iso8601("2016-02-01Tgarbage").has_value());
  CHECK(parse_iso8601("2016-02-29").has_value());   // leap year
  CHECK_FALSE(parse_iso8601("2015-02-29").has_value());
}

TEST_CASE("civil day arithmetic round-trips") {
  CHECK(days_from_civil(1970, 1, 1) == 0);
  SplitMix64 rng(7);
  for (int i = 0; i < 2000; ++i) {
    auto z = static_cast<std::int64_t>(rng.next_below(200000)) - 100000;
    int y;
    unsigned m, d;
    civil_from_days(z, y, m, d);
    CHECK(days_from_civil(y, m, d) == z);
  }
}

TEST_CASE("quarters and spans") {
  UtcTime t = *parse_iso8601("2019-08-15T00:00:00Z");
  CHECK(quarter_of(t) == 3);
  CHECK(quarter_index(t) == 2019 * 4 + 2);
  CHECK(quarter_label(quarter_index(t)) == "2019Q3");

  TimeSpan q = quarter_span(quarter_index(t));
  CHECK(q.contains(*parse_iso8601("2019-07-01T00:00:00Z")));
  CHECK(q.contains(*parse_iso8601("2019-09-30T23:59:59Z")));
  CHECK_FALSE(q.contains(*parse_iso8601("2019-10-01T00:00:00Z")));

  TimeSpan y = year_span(2019);
  CHECK(y.contains(*parse_iso8601("2019-01-01T00:00:00Z")));
  CHECK_FALSE(y.contains(*parse_iso8601("2020-01-01T00:00:00Z")));

  TimeSpan h1 = half_year_span(2019, 1);
  TimeSpan h2 = half_year_span(2019, 2);
  CHECK(h1.end == h2.begin);
  CHECK(h1.begin == y.begin);
  CHECK(h2.end == y.end);

  TimeSpan range = quarter_range_span(2019 * 4, 4);
  CHECK(range.begin == year_span(2019).begin);
  CHECK(range.end == year_span(2019).end);
}

TEST_CASE("every timestamp falls in exactly one window per scheme") {
  SplitMix64 rng(99);
  for (int i = 0; i < 500; ++i) {
    UtcTime t{static_cast<std::int64_t>(rng.next() % 4000000000ULL)};
    int hits = 0;
    for (int y = 1969; y <= 2100; ++y) {
      if (year_span(y).contains(t)) ++hits;
    }
    CHECK(hits == 1);
    hits = 0;
    std::int64_t q = quarter_index(t);
    for (std::int64_t qq = q - 2; qq <= q + 2; ++qq) {
      if (quarter_span(qq).contains(t)) ++hits;
    }
    CHECK(hits == 1);
  }
}

TEST_CASE("whole years between timestamps") {
  CHECK(whole_years_between(*parse_iso8601("2015-03-01"), *parse_iso8601("2018-07-10")) == 3);
  CHECK(whole_years_between(*parse_iso8601("2015-03-01"), *parse_iso8601("2018-02-28")) == 2);
  CHECK(whole_years_between(*parse_iso8601("2015-03-01"), *parse_iso8601("2018-03-01")) == 3);
  CHECK(whole_years_between(*parse_iso8601("2015-03-01"), *parse_iso8601("2015-04-01")) == 0);
  CHECK(whole_years_between(*parse_iso8601("2018-01-01"), *parse_iso8601("2015-01-01")) == 0);
}
