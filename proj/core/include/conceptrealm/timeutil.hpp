#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace conceptrealm {

// Seconds since the Unix epoch, always UTC.
struct UtcTime {
  std::int64_t sec = 0;
  auto operator<=>(const UtcTime&) const = default;
};

// Proleptic Gregorian day arithmetic (Howard Hinnant's algorithms); no
// dependence on the C locale or the TZ database.
std::int64_t days_from_civil(int y, unsigned m, unsigned d);
void civil_from_days(std::int64_t z, int& y, unsigned& m, unsigned& d);

// Accepts YYYY-MM-DD followed by an optional 'T'/' ' time, optional
// fractional seconds (truncated) and an optional zone ('Z' or +-HH[:]MM).
// No zone means UTC. Returns nullopt on anything malformed.
std::optional<UtcTime> parse_iso8601(std::string_view text);
std::string format_iso8601(UtcTime t);  // YYYY-MM-DDTHH:MM:SSZ

int year_of(UtcTime t);
int quarter_of(UtcTime t);  // 1..4

// Consecutive quarter counter: year*4 + (quarter-1). Subtraction of two
// indices is a distance in quarters.
std::int64_t quarter_index(UtcTime t);
std::string quarter_label(std::int64_t qindex);  // e.g. "2016Q3"

// Half-open interval [begin, end) in epoch seconds.
struct TimeSpan {
  std::int64_t begin = 0;
  std::int64_t end = 0;
  bool contains(UtcTime t) const { return t.sec >= begin && t.sec < end; }
};

TimeSpan year_span(int year);
TimeSpan quarter_span(std::int64_t qindex);
TimeSpan quarter_range_span(std::int64_t first_qindex, int n_quarters);
TimeSpan half_year_span(int year, int half);  // half 1 = Jan-Jun, 2 = Jul-Dec
TimeSpan all_time();

// Whole calendar years from a to b (anniversary counting), 0 if b < a.
int whole_years_between(UtcTime a, UtcTime b);

}  // namespace conceptrealm
