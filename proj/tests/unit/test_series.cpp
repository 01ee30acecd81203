#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <string>

#include "dispatchkit/errors.hpp"
#include "dispatchkit/series.hpp"
#include "dispatchkit/synthetic.hpp"

using namespace dispatchkit;
namespace fs = std::filesystem;

namespace {

fs::path temp_file(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "dispatchkit_test_series";
  fs::create_directories(dir);
  return dir / name;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Full valid file text with an optional edit applied to one data row.
std::string year_csv(int skip_day = 0, int skip_slot = -1, const std::string& replace_value = "",
                     int value_day = 0, int value_slot = -1) {
  std::string out = "day,slot,kw\n";
  for (int d = 1; d <= kDaysPerYear; ++d) {
    for (int s = 0; s < kSlotsPerDay; ++s) {
      if (d == skip_day && s == skip_slot) continue;
      std::string v = "0.500000";
      if (d == value_day && s == value_slot) v = replace_value;
      out += std::to_string(d) + "," + std::to_string(s) + "," + v + "\n";
    }
  }
  return out;
}

template <class F>
std::string error_of(F&& f) {
  try {
    f();
  } catch (const std::exception& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("TimeSlot linear index is a bijection over the year") {
  std::set<std::size_t> seen;
  for (int d = 1; d <= kDaysPerYear; ++d) {
    for (int s = 0; s < kSlotsPerDay; ++s) {
      const TimeSlot slot{d, s};
      const std::size_t i = slot.index();
      CHECK(i == static_cast<std::size_t>((d - 1) * 48 + s));
      CHECK(TimeSlot::from_index(i) == slot);
      seen.insert(i);
    }
  }
  CHECK(seen.size() == kSlotsPerYear);
  CHECK(*seen.rbegin() == 17519);
  CHECK_THROWS_AS(TimeSlot::from_index(17520), std::out_of_range);
  CHECK_THROWS_AS((TimeSlot{0, 0}.index()), std::out_of_range);
  CHECK_THROWS_AS((TimeSlot{1, 48}.index()), std::out_of_range);
}

TEST_CASE("YearSeries rejects wrong sizes and invalid samples") {
  CHECK_THROWS_AS(YearSeries(SeriesKind::Load, std::vector<double>(100, 0.0)), Error);
  std::vector<double> v(kSlotsPerYear, 0.1);
  v[5] = -1.0;
  CHECK_THROWS_AS(YearSeries(SeriesKind::Load, v), Error);
  v[5] = std::nan("");
  CHECK_THROWS_AS(YearSeries(SeriesKind::Load, v), Error);
}

TEST_CASE("load_series reads a schema-complete file") {
  const YearSeries s = parse_series(year_csv(), SeriesKind::Load);
  CHECK(s.size() == 17520);
  CHECK(s[TimeSlot{200, 13}] == 0.5);
  CHECK(s.kind() == SeriesKind::Load);
}

TEST_CASE("load_series reports malformed rows with their row number") {
  SUBCASE("missing slot names day and slot") {
    const std::string msg = error_of([] { parse_series(year_csv(3, 17), SeriesKind::Load); });
    CHECK(msg.find("missing day 3, slot 17") != std::string::npos);
    // header is row 1, day 1..2 occupy rows 2..97, day 3 slot 0..16 rows 98..114
    CHECK(msg.find("row 115") != std::string::npos);
  }
  SUBCASE("negative value") {
    const std::string msg =
        error_of([] { parse_series(year_csv(0, -1, "-0.1", 10, 4), SeriesKind::Load); });
    CHECK(msg.find("negative value") != std::string::npos);
    CHECK(msg.find("row 438") != std::string::npos);
  }
  SUBCASE("non-numeric field") {
    const std::string msg =
        error_of([] { parse_series(year_csv(0, -1, "abc", 1, 0), SeriesKind::Load); });
    CHECK(msg.find("non-numeric") != std::string::npos);
    CHECK(msg.find("row 2") != std::string::npos);
  }
  SUBCASE("duplicate slot") {
    std::string text = year_csv();
    text.insert(text.find("1,1,"), "1,0,0.5\n");
    const std::string msg = error_of([&] { parse_series(text, SeriesKind::Load); });
    CHECK(msg.find("duplicate") != std::string::npos);
    CHECK(msg.find("row 3") != std::string::npos);
  }
  SUBCASE("wrong row count") {
    std::string text = year_csv();
    text.resize(text.rfind("365,47"));
    const std::string msg = error_of([&] { parse_series(text, SeriesKind::Load); });
    CHECK(msg.find("wrong row count") != std::string::npos);
    CHECK(msg.find("day 365, slot 47") != std::string::npos);
  }
  SUBCASE("header") {
    CHECK_THROWS_AS(parse_series("d,s,v\n", SeriesKind::Load), ParseError);
    CHECK_THROWS_AS(parse_series("", SeriesKind::Load), ParseError);
  }
  SUBCASE("ParseError exposes the row") {
    try {
      parse_series(year_csv(0, -1, "x", 1, 5), SeriesKind::Load);
      FAIL("expected a parse error");
    } catch (const ParseError& e) {
      CHECK(e.row() == 7);
    }
  }
  SUBCASE("missing file") {
    CHECK_THROWS_AS(load_series(temp_file("does_not_exist.csv"), SeriesKind::Load), IoError);
  }
}

TEST_CASE("synthetic series are deterministic per seed") {
  const YearSeries a = generate_synthetic(42, SyntheticProfile::Load);
  const YearSeries b = generate_synthetic(42, SyntheticProfile::Load);
  CHECK(a == b);
  CHECK_FALSE(a == generate_synthetic(43, SyntheticProfile::Load));
  CHECK(generate_synthetic(9, SyntheticProfile::Pv) == generate_synthetic(9, SyntheticProfile::Pv));
}

TEST_CASE("synthetic load stays within the household bounds") {
  for (std::uint64_t seed : {0ULL, 1ULL, 42ULL, 1234ULL, 99999ULL, 0xFFFFFFFFFFFFFFFFULL}) {
    const YearSeries s = generate_synthetic(seed, SyntheticProfile::Load);
    const auto [lo, hi] = std::minmax_element(s.values().begin(), s.values().end());
    CHECK(*lo >= 0.213);
    CHECK(*hi <= 0.95);
  }
}

TEST_CASE("synthetic PV is dark at night and shaped by season") {
  const YearSeries pv = generate_synthetic(7, SyntheticProfile::Pv);
  for (int d = 1; d <= kDaysPerYear; ++d) {
    for (int s = 0; s < 8; ++s) CHECK(pv[TimeSlot{d, s}] == 0.0);  // 00:00-04:00
    CHECK(pv[TimeSlot{d, 47}] == 0.0);
  }
  double winter = 0.0;
  double summer = 0.0;
  for (double v : pv.days(1, 30)) winter += v;
  for (double v : pv.days(170, 30)) summer += v;
  CHECK(summer > 2.0 * winter);
}

TEST_CASE("synthetic sinusoid repeats the same day") {
  const YearSeries s = generate_synthetic(0, SyntheticProfile::Sinusoid);
  for (int d = 2; d <= kDaysPerYear; ++d) {
    const auto day = s.day(d);
    CHECK(std::equal(day.begin(), day.end(), s.day(1).begin()));
  }
  CHECK(s[TimeSlot{1, 11}] > s[TimeSlot{1, 35}]);
}

TEST_CASE("generator rejects invalid parameters") {
  GeneratorParams p;
  p.pv.peak_kw = 0.0;
  CHECK_THROWS_AS(generate_synthetic(1, SyntheticProfile::Pv, p), Error);
  p = {};
  p.load.morning_kw = -1.0;
  CHECK_THROWS_AS(generate_synthetic(1, SyntheticProfile::Load, p), Error);
  CHECK_THROWS_AS(parse_synthetic_profile("wind"), Error);
}

TEST_CASE("write then load is the identity, and rewriting is byte-stable") {
  for (auto [seed, profile] : {std::pair{3ULL, SyntheticProfile::Load},
                               std::pair{5ULL, SyntheticProfile::Pv},
                               std::pair{0ULL, SyntheticProfile::Sinusoid}}) {
    const YearSeries s = generate_synthetic(seed, profile);
    const fs::path first = temp_file("first.csv");
    const fs::path second = temp_file("second.csv");
    write_series(s, first);
    const YearSeries back = load_series(first, s.kind());
    CHECK(back == s);
    write_series(back, second);
    CHECK(slurp(first) == slurp(second));
  }
}

TEST_CASE("canonical formatting") {
  std::vector<double> v(kSlotsPerYear, 0.0);
  v[1] = 1.5;
  v[2] = 0.0000004;
  const std::string text = format_series(YearSeries(SeriesKind::Pv, v));
  CHECK(text.rfind("day,slot,kw\n1,0,0.000000\n1,1,1.500000\n1,2,0.000000\n", 0) == 0);
  CHECK(text.find('\r') == std::string::npos);
  CHECK(std::count(text.begin(), text.end(), '\n') == 17521);
}

TEST_CASE("write_series to an empty path is an I/O error") {
  const YearSeries s(SeriesKind::Load, std::vector<double>(kSlotsPerYear, 0.3));
  CHECK_THROWS_AS(write_series(s, ""), IoError);
  CHECK_THROWS_AS(write_series(s, "/nonexistent-dir/x/y.csv"), IoError);
}

TEST_CASE("day blocks accept any number of consecutive whole days") {
  std::string text = "day,slot,kw\n";
  for (int d = 40; d < 43; ++d) {
    for (int s = 0; s < 48; ++s) text += std::to_string(d) + "," + std::to_string(s) + ",0.25\n";
  }
  const DayBlock block = parse_day_block(text);
  CHECK(block.first_day == 40);
  CHECK(block.day_count() == 3);

  CHECK_THROWS_AS(parse_day_block("day,slot,kw\n1,0,0.1\n1,2,0.1\n"), ParseError);
  CHECK_THROWS_AS(parse_day_block("day,slot,kw\n1,0,0.1\n"), ParseError);
}

TEST_CASE("quantize_kw snaps to micro-kW and survives formatting") {
  CHECK(quantize_kw(0.1234564) == 0.123456);
  CHECK(quantize_kw(0.1234566) == 0.123457);
  CHECK_FALSE(std::signbit(quantize_kw(-1e-9)));
}
