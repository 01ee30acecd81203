#include "dispatchkit/tariff.hpp"

#include <cmath>

#include "dispatchkit/config_file.hpp"
#include "dispatchkit/errors.hpp"
#include "text_util.hpp"

namespace dispatchkit {

void TariffSchedule::validate() const {
  for (double r : {rate_peak, rate_offpeak, rate_export}) {
    if (!std::isfinite(r) || r < 0.0) throw Error("tariff rates must be finite and >= 0");
  }
  if (rate_offpeak > rate_peak) throw Error("rate_offpeak must not exceed rate_peak");
  if (offpeak_start_slot < 0 || offpeak_end_slot > kSlotsPerDay ||
      offpeak_start_slot >= offpeak_end_slot) {
    throw Error("off-peak window must be a non-empty range within [0, 48)");
  }
}

TariffSchedule TariffSchedule::scaled(double k) const {
  TariffSchedule t = *this;
  t.rate_peak *= k;
  t.rate_offpeak *= k;
  t.rate_export *= k;
  return t;
}

TariffSchedule parse_tariff(std::string_view text) {
  const auto file = KeyValueFile::parse(text);
  TariffSchedule t;
  file.read("rate_peak", t.rate_peak);
  file.read("rate_offpeak", t.rate_offpeak);
  file.read("rate_export", t.rate_export);
  file.read("offpeak_start_slot", t.offpeak_start_slot);
  file.read("offpeak_end_slot", t.offpeak_end_slot);
  file.reject_unknown();
  t.validate();
  return t;
}

TariffSchedule load_tariff(const std::filesystem::path& path) {
  try {
    return parse_tariff(detail::read_file(path));
  } catch (const ParseError& e) {
    throw e.in_file(path.string());
  } catch (const IoError&) {
    throw;
  } catch (const Error& e) {
    throw Error(path.string() + ": " + e.what());
  }
}

std::string format_tariff(const TariffSchedule& t) {
  std::string out;
  out += "rate_peak=" + detail::fixed(t.rate_peak, 6) + "\n";
  out += "rate_offpeak=" + detail::fixed(t.rate_offpeak, 6) + "\n";
  out += "rate_export=" + detail::fixed(t.rate_export, 6) + "\n";
  out += "offpeak_start_slot=" + std::to_string(t.offpeak_start_slot) + "\n";
  out += "offpeak_end_slot=" + std::to_string(t.offpeak_end_slot) + "\n";
  return out;
}

}  // namespace dispatchkit
