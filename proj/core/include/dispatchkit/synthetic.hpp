#pragma once

#include <cstdint>
#include <string_view>

#include "dispatchkit/series.hpp"

namespace dispatchkit {

enum class SyntheticProfile { Load, Pv, Sinusoid };

SyntheticProfile parse_synthetic_profile(std::string_view name);

struct LoadProfileParams {
  double min_kw = 0.213;
  double max_kw = 0.95;
  double base_kw = 0.30;
  double winter_kw = 0.08;   // extra base load at mid-winter
  double morning_kw = 0.25;  // peak around 07:30
  double evening_kw = 0.40;  // peak around 19:00
  double day_noise_kw = 0.03;
  double slot_noise_kw = 0.04;
};

struct PvProfileParams {
  double peak_kw = 1.6;
  double winter_fraction = 0.25;  // clear-sky peak in mid-winter relative to mid-summer
  double min_clearness = 0.3;     // daily clearness drawn from [min_clearness, 1]
  double cloud_noise = 0.15;
};

struct SinusoidParams {
  double offset_kw = 0.5;
  double amplitude_kw = 0.3;
};

struct GeneratorParams {
  LoadProfileParams load;
  PvProfileParams pv;
  SinusoidParams sinusoid;

  void validate() const;
};

/// Seeded stand-in for metered data.
///  - Load: morning and evening peaks on a seasonal base with day-level and
///    slot-level AR(1) noise, clamped to [min_kw, max_kw].
///  - Pv: zero outside a seasonal daylight window (never before 04:30), a
///    sin^2 bell inside it, seasonal amplitude, seeded cloud attenuation.
///  - Sinusoid: the same noiseless sine every day; the seed is unused.
/// Samples are quantized to 1e-6 kW so the CSV round-trip is exact.
YearSeries generate_synthetic(std::uint64_t seed, SyntheticProfile profile,
                              const GeneratorParams& params = {});

}  // namespace dispatchkit
