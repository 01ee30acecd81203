#include "dispatchkit/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "dispatchkit/errors.hpp"
#include "dispatchkit/rng.hpp"

namespace dispatchkit {

namespace {

constexpr double kPi = std::numbers::pi;

// +1 in mid-January, -1 in mid-July.
double winterness(int day) { return std::cos(2.0 * kPi * (day - 15) / kDaysPerYear); }

double slot_mid_hour(int slot) { return (slot + 0.5) * kSlotHours; }

double bump(double hour, double centre, double width) {
  const double z = (hour - centre) / width;
  return std::exp(-0.5 * z * z);
}

std::vector<double> load_profile(std::uint64_t seed, const LoadProfileParams& p) {
  Rng rng(seed);
  std::vector<double> out;
  out.reserve(kSlotsPerYear);
  double ar = 0.0;
  for (int day = 1; day <= kDaysPerYear; ++day) {
    const double winter = 0.5 * (1.0 + winterness(day));
    const double day_level = p.day_noise_kw * rng.normal();
    for (int slot = 0; slot < kSlotsPerDay; ++slot) {
      const double h = slot_mid_hour(slot);
      ar = 0.7 * ar + std::sqrt(1.0 - 0.49) * rng.normal();
      double kw = p.base_kw + p.winter_kw * winter + p.morning_kw * bump(h, 7.5, 1.2) +
                  p.evening_kw * (0.8 + 0.2 * winter) * bump(h, 19.0, 2.0) + day_level +
                  p.slot_noise_kw * ar;
      kw = quantize_kw(std::clamp(kw, p.min_kw, p.max_kw));
      out.push_back(std::clamp(kw, p.min_kw, p.max_kw));
    }
  }
  return out;
}

std::vector<double> pv_profile(std::uint64_t seed, const PvProfileParams& p) {
  Rng rng(seed);
  std::vector<double> out;
  out.reserve(kSlotsPerYear);
  double cloud = 0.0;
  for (int day = 1; day <= kDaysPerYear; ++day) {
    const double summer = 0.5 * (1.0 - winterness(day));
    // Daylight spans 8 h in mid-winter and 16 h in mid-summer around 12:30.
    const double half_length = 4.0 + 4.0 * summer;
    const double sunrise = 12.5 - half_length;
    const double sunset = 12.5 + half_length;
    const double amplitude = p.peak_kw * (p.winter_fraction + (1.0 - p.winter_fraction) * summer);
    const double clearness = rng.uniform(p.min_clearness, 1.0);
    for (int slot = 0; slot < kSlotsPerDay; ++slot) {
      cloud = 0.8 * cloud + 0.6 * rng.normal();
      const double h = slot_mid_hour(slot);
      double kw = 0.0;
      if (h > sunrise && h < sunset) {
        const double s = std::sin(kPi * (h - sunrise) / (sunset - sunrise));
        const double attenuation = std::clamp(clearness + p.cloud_noise * cloud, 0.0, 1.0);
        kw = quantize_kw(amplitude * s * s * attenuation);
      }
      out.push_back(kw);
    }
  }
  return out;
}

std::vector<double> sinusoid_profile(const SinusoidParams& p) {
  std::vector<double> out;
  out.reserve(kSlotsPerYear);
  for (int day = 1; day <= kDaysPerYear; ++day) {
    for (int slot = 0; slot < kSlotsPerDay; ++slot) {
      const double phase = 2.0 * kPi * (slot + 0.5) / kSlotsPerDay;
      out.push_back(quantize_kw(std::max(0.0, p.offset_kw + p.amplitude_kw * std::sin(phase))));
    }
  }
  return out;
}

void require(bool ok, const char* what) {
  if (!ok) throw Error(std::string("invalid generator parameter: ") + what);
}

}  // namespace

SyntheticProfile parse_synthetic_profile(std::string_view name) {
  if (name == "load") return SyntheticProfile::Load;
  if (name == "pv") return SyntheticProfile::Pv;
  if (name == "sinusoid") return SyntheticProfile::Sinusoid;
  throw Error("unknown series kind '" + std::string(name) + "' (expected load, pv or sinusoid)");
}

void GeneratorParams::validate() const {
  require(load.min_kw >= 0.0 && load.min_kw < load.max_kw, "load bounds");
  require(load.base_kw > 0.0, "load.base_kw");
  require(load.winter_kw >= 0.0 && load.morning_kw > 0.0 && load.evening_kw > 0.0,
          "load amplitudes");
  require(load.day_noise_kw >= 0.0 && load.slot_noise_kw >= 0.0, "load noise");
  require(pv.peak_kw > 0.0, "pv.peak_kw");
  require(pv.winter_fraction > 0.0 && pv.winter_fraction <= 1.0, "pv.winter_fraction");
  require(pv.min_clearness >= 0.0 && pv.min_clearness <= 1.0, "pv.min_clearness");
  require(pv.cloud_noise >= 0.0, "pv.cloud_noise");
  require(sinusoid.amplitude_kw > 0.0 && sinusoid.offset_kw >= sinusoid.amplitude_kw,
          "sinusoid must stay non-negative");
}

YearSeries generate_synthetic(std::uint64_t seed, SyntheticProfile profile,
                              const GeneratorParams& params) {
  params.validate();
  switch (profile) {
    case SyntheticProfile::Load:
      return YearSeries(SeriesKind::Load, load_profile(seed, params.load));
    case SyntheticProfile::Pv:
      return YearSeries(SeriesKind::Pv, pv_profile(seed, params.pv));
    case SyntheticProfile::Sinusoid:
      return YearSeries(SeriesKind::Load, sinusoid_profile(params.sinusoid));
  }
  throw Error("unknown synthetic profile");
}

}  // namespace dispatchkit
