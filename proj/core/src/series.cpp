#include "dispatchkit/series.hpp"

#include <cmath>
#include <string>

#include "dispatchkit/errors.hpp"
#include "text_util.hpp"

namespace dispatchkit {

namespace {

constexpr std::string_view kHeader = "day,slot,kw";

struct Row {
  int day = 0;
  int slot = 0;
  double kw = 0.0;
};

Row parse_row(std::string_view line, std::size_t row) {
  const auto fields = detail::split(line, ',');
  if (fields.size() != 3) {
    throw ParseError(row, "expected 3 fields, got " + std::to_string(fields.size()));
  }
  Row r;
  if (!detail::parse_number(fields[0], r.day)) {
    throw ParseError(row, "non-numeric day '" + std::string(fields[0]) + "'");
  }
  if (!detail::parse_number(fields[1], r.slot)) {
    throw ParseError(row, "non-numeric slot '" + std::string(fields[1]) + "'");
  }
  if (!detail::parse_number(fields[2], r.kw)) {
    throw ParseError(row, "non-numeric value '" + std::string(fields[2]) + "'");
  }
  if (r.day < 1 || r.day > kDaysPerYear) {
    throw ParseError(row, "day " + std::to_string(r.day) + " outside 1..365");
  }
  if (r.slot < 0 || r.slot >= kSlotsPerDay) {
    throw ParseError(row, "slot " + std::to_string(r.slot) + " outside 0..47");
  }
  if (!std::isfinite(r.kw)) throw ParseError(row, "non-finite value");
  if (r.kw < 0.0) throw ParseError(row, "negative value " + std::string(fields[2]));
  r.kw += 0.0;  // -0.0 -> +0.0
  return r;
}

std::string describe(TimeSlot s) {
  return "day " + std::to_string(s.day) + ", slot " + std::to_string(s.slot);
}

void check_header(const std::vector<std::string_view>& lines) {
  if (lines.empty()) throw ParseError(0, "empty file");
  if (lines.front() != kHeader) {
    throw ParseError(1, "expected header '" + std::string(kHeader) + "'");
  }
}

}  // namespace

std::string_view to_string(SeriesKind kind) noexcept {
  return kind == SeriesKind::Load ? "load" : "pv";
}

YearSeries::YearSeries(SeriesKind kind, std::vector<double> samples)
    : kind_(kind), samples_(std::move(samples)) {
  if (samples_.size() != kSlotsPerYear) {
    throw Error("a year series needs " + std::to_string(kSlotsPerYear) + " samples, got " +
                std::to_string(samples_.size()));
  }
  for (std::size_t i = 0; i < samples_.size(); ++i) {
    if (!std::isfinite(samples_[i]) || samples_[i] < 0.0) {
      throw Error("invalid sample at " + describe(TimeSlot::from_index(i)));
    }
  }
}

std::span<const double> YearSeries::day(int day) const { return days(day, 1); }

std::span<const double> YearSeries::days(int first_day, int count) const {
  if (count < 0 || first_day < 1 || first_day + count - 1 > kDaysPerYear) {
    throw std::out_of_range("day range outside 1..365");
  }
  return std::span<const double>(samples_).subspan(
      static_cast<std::size_t>(first_day - 1) * kSlotsPerDay,
      static_cast<std::size_t>(count) * kSlotsPerDay);
}

YearSeries parse_series(std::string_view text, SeriesKind kind) {
  const auto lines = detail::split_lines(text);
  check_header(lines);

  std::vector<double> samples(kSlotsPerYear, 0.0);
  std::size_t expected = 0;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const std::size_t row = i + 1;
    const Row r = parse_row(lines[i], row);
    const TimeSlot slot{r.day, r.slot};
    const std::size_t index = slot.index();
    if (index < expected) {
      throw ParseError(row, "duplicate or out-of-order " + describe(slot));
    }
    if (index > expected) {
      throw ParseError(row, "missing " + describe(TimeSlot::from_index(expected)));
    }
    samples[index] = r.kw;
    ++expected;
  }
  if (expected != kSlotsPerYear) {
    throw ParseError(0, "wrong row count: " + std::to_string(expected) + " data rows, missing " +
                            describe(TimeSlot::from_index(expected)));
  }
  return YearSeries(kind, std::move(samples));
}

YearSeries load_series(const std::filesystem::path& path, SeriesKind kind) {
  try {
    return parse_series(detail::read_file(path), kind);
  } catch (const ParseError& e) {
    throw e.in_file(path.string());
  }
}

std::string format_series(const YearSeries& series) {
  std::string out;
  out.reserve(series.size() * 18 + 16);
  out.append(kHeader);
  out.push_back('\n');
  for (std::size_t i = 0; i < series.size(); ++i) {
    const TimeSlot s = TimeSlot::from_index(i);
    out.append(std::to_string(s.day));
    out.push_back(',');
    out.append(std::to_string(s.slot));
    out.push_back(',');
    detail::append_fixed(out, series.at(i), 6);
    out.push_back('\n');
  }
  return out;
}

void write_series(const YearSeries& series, const std::filesystem::path& path) {
  detail::write_file(path, format_series(series));
}

DayBlock parse_day_block(std::string_view text) {
  const auto lines = detail::split_lines(text);
  check_header(lines);
  DayBlock block;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const std::size_t row = i + 1;
    const Row r = parse_row(lines[i], row);
    const std::size_t n = block.samples.size();
    if (n == 0) {
      if (r.slot != 0) throw ParseError(row, "history must start at slot 0");
      block.first_day = r.day;
    }
    const int expected_day = block.first_day + static_cast<int>(n / kSlotsPerDay);
    const int expected_slot = static_cast<int>(n % kSlotsPerDay);
    if (r.day != expected_day || r.slot != expected_slot) {
      throw ParseError(row, "expected day " + std::to_string(expected_day) + ", slot " +
                                std::to_string(expected_slot));
    }
    block.samples.push_back(r.kw);
  }
  if (block.samples.size() % kSlotsPerDay != 0) {
    throw ParseError(0, "history ends in the middle of a day");
  }
  return block;
}

DayBlock load_day_block(const std::filesystem::path& path) {
  try {
    return parse_day_block(detail::read_file(path));
  } catch (const ParseError& e) {
    throw e.in_file(path.string());
  }
}

double quantize_kw(double kw) noexcept { return std::round(kw * 1e6) / 1e6 + 0.0; }

}  // namespace dispatchkit
