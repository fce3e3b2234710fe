#include "conceptrealm/timeutil.hpp"

#include <cstdio>
#include <limits>

namespace conceptrealm {

namespace {

constexpr std::int64_t kSecondsPerDay = 86400;

bool is_digit(char c) { return c >= '0' && c <= '9'; }

bool parse_int(std::string_view s, std::size_t pos, std::size_t len, int& out) {
  if (pos + len > s.size()) return false;
  int v = 0;
  for (std::size_t i = pos; i < pos + len; ++i) {
    if (!is_digit(s[i])) return false;
    v = v * 10 + (s[i] - '0');
  }
  out = v;
  return true;
}

unsigned days_in_month(int y, unsigned m) {
  static constexpr unsigned kDays[] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
  if (m == 2) {
    bool leap = (y % 4 == 0 && y % 100 != 0) || y % 400 == 0;
    return leap ? 29 : 28;
  }
  return kDays[m - 1];
}

}  // namespace

std::int64_t days_from_civil(int y, unsigned m, unsigned d) {
  y -= m <= 2;
  const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
  const unsigned yoe = static_cast<unsigned>(y - era * 400);
  const unsigned doy = (153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
  const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
  return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

void civil_from_days(std::int64_t z, int& y, unsigned& m, unsigned& d) {
  z += 719468;
  const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
  const unsigned doe = static_cast<unsigned>(z - era * 146097);
  const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
  const std::int64_t yy = static_cast<std::int64_t>(yoe) + era * 400;
  const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
  const unsigned mp = (5 * doy + 2) / 153;
  d = doy - (153 * mp + 2) / 5 + 1;
  m = mp + (mp < 10 ? 3 : -9);
  y = static_cast<int>(yy + (m <= 2));
}

std::optional<UtcTime> parse_iso8601(std::string_view s) {
  int year, month, day;
  if (!parse_int(s, 0, 4, year)) return std::nullopt;
  if (s.size() < 10 || s[4] != '-' || s[7] != '-') return std::nullopt;
  if (!parse_int(s, 5, 2, month) || !parse_int(s, 8, 2, day)) return std::nullopt;
  if (month < 1 || month > 12) return std::nullopt;
  if (day < 1 || static_cast<unsigned>(day) > days_in_month(year, month)) return std::nullopt;

  int hour = 0, minute = 0, second = 0;
  std::size_t pos = 10;
  if (pos < s.size()) {
    if (s[pos] != 'T' && s[pos] != ' ') return std::nullopt;
    ++pos;
    if (!parse_int(s, pos, 2, hour)) return std::nullopt;
    if (pos + 2 >= s.size() || s[pos + 2] != ':') return std::nullopt;
    if (!parse_int(s, pos + 3, 2, minute)) return std::nullopt;
    pos += 5;
    if (pos < s.size() && s[pos] == ':') {
      if (!parse_int(s, pos + 1, 2, second)) return std::nullopt;
      pos += 3;
    }
    if (hour > 23 || minute > 59 || second > 60) return std::nullopt;
    if (second == 60) second = 59;  // fold leap seconds
    if (pos < s.size() && s[pos] == '.') {
      ++pos;
      if (pos >= s.size() || !is_digit(s[pos])) return std::nullopt;
      while (pos < s.size() && is_digit(s[pos])) ++pos;  // truncate fraction
    }
  }

  std::int64_t offset = 0;
  if (pos < s.size()) {
    char zc = s[pos];
    if (zc == 'Z') {
      ++pos;
    } else if (zc == '+' || zc == '-') {
      int oh, om = 0;
      if (!parse_int(s, pos + 1, 2, oh)) return std::nullopt;
      std::size_t opos = pos + 3;
      if (opos < s.size() && s[opos] == ':') ++opos;
      if (opos < s.size()) {
        if (!parse_int(s, opos, 2, om)) return std::nullopt;
        opos += 2;
      }
      if (oh > 23 || om > 59) return std::nullopt;
      offset = static_cast<std::int64_t>(oh) * 3600 + om * 60;
      if (zc == '-') offset = -offset;
      pos = opos;
    } else {
      return std::nullopt;
    }
  }
  if (pos != s.size()) return std::nullopt;

  std::int64_t days = days_from_civil(year, static_cast<unsigned>(month), static_cast<unsigned>(day));
  std::int64_t sec = days * kSecondsPerDay + hour * 3600 + minute * 60 + second - offset;
  return UtcTime{sec};
}

std::string format_iso8601(UtcTime t) {
  std::int64_t days = t.sec / kSecondsPerDay;
  std::int64_t rem = t.sec % kSecondsPerDay;
  if (rem < 0) {
    rem += kSecondsPerDay;
    --days;
  }
  int y;
  unsigned m, d;
  civil_from_days(days, y, m, d);
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%04d-%02u-%02uT%02lld:%02lld:%02lldZ", y, m, d,
                static_cast<long long>(rem / 3600), static_cast<long long>(rem / 60 % 60),
                static_cast<long long>(rem % 60));
  return buf;
}

namespace {

void civil_of(UtcTime t, int& y, unsigned& m, unsigned& d) {
  std::int64_t days = t.sec / kSecondsPerDay;
  if (t.sec % kSecondsPerDay < 0) --days;
  civil_from_days(days, y, m, d);
}

}  // namespace

int year_of(UtcTime t) {
  int y;
  unsigned m, d;
  civil_of(t, y, m, d);
  return y;
}

int quarter_of(UtcTime t) {
  int y;
  unsigned m, d;
  civil_of(t, y, m, d);
  return static_cast<int>((m - 1) / 3) + 1;
}

std::int64_t quarter_index(UtcTime t) {
  return static_cast<std::int64_t>(year_of(t)) * 4 + (quarter_of(t) - 1);
}

std::string quarter_label(std::int64_t qindex) {
  std::int64_t y = qindex >= 0 ? qindex / 4 : (qindex - 3) / 4;
  int q = static_cast<int>(qindex - y * 4) + 1;
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%04lldQ%d", static_cast<long long>(y), q);
  return buf;
}

TimeSpan year_span(int year) {
  return {days_from_civil(year, 1, 1) * kSecondsPerDay,
          days_from_civil(year + 1, 1, 1) * kSecondsPerDay};
}

TimeSpan quarter_span(std::int64_t qindex) {
  std::int64_t y = qindex >= 0 ? qindex / 4 : (qindex - 3) / 4;
  int q = static_cast<int>(qindex - y * 4);
  unsigned first_month = static_cast<unsigned>(q * 3 + 1);
  int end_year = static_cast<int>(y) + (q == 3 ? 1 : 0);
  unsigned end_month = q == 3 ? 1 : first_month + 3;
  return {days_from_civil(static_cast<int>(y), first_month, 1) * kSecondsPerDay,
          days_from_civil(end_year, end_month, 1) * kSecondsPerDay};
}

TimeSpan quarter_range_span(std::int64_t first_qindex, int n_quarters) {
  return {quarter_span(first_qindex).begin, quarter_span(first_qindex + n_quarters - 1).end};
}

TimeSpan half_year_span(int year, int half) {
  if (half == 1) {
    return {days_from_civil(year, 1, 1) * kSecondsPerDay,
            days_from_civil(year, 7, 1) * kSecondsPerDay};
  }
  return {days_from_civil(year, 7, 1) * kSecondsPerDay,
          days_from_civil(year + 1, 1, 1) * kSecondsPerDay};
}

TimeSpan all_time() {
  return {std::numeric_limits<std::int64_t>::min() / 4,
          std::numeric_limits<std::int64_t>::max() / 4};
}

int whole_years_between(UtcTime a, UtcTime b) {
  if (b.sec < a.sec) return 0;
  int ya, yb;
  unsigned ma, da, mb, db;
  civil_of(a, ya, ma, da);
  civil_of(b, yb, mb, db);
  int years = yb - ya;
  if (mb < ma || (mb == ma && db < da)) --years;
  return years < 0 ? 0 : years;
}

}  // namespace conceptrealm
