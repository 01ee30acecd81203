#include "dispatchkit/battery.hpp"

#include <algorithm>
#include <cmath>

#include "dispatchkit/config_file.hpp"
#include "dispatchkit/errors.hpp"
#include "text_util.hpp"

namespace dispatchkit {

namespace {

// Slack for floating-point round-off when checking caller-supplied flows
// against the limits computed by max_*_power.
constexpr double kLimitTolerance = 1e-9;

}  // namespace

void BatterySpec::validate() const {
  auto fail = [](const char* what) { throw Error(std::string("invalid battery: ") + what); };
  if (!(capacity_kwh > 0.0) || !std::isfinite(capacity_kwh)) fail("capacity must be > 0");
  if (!(p_charge_max_kw >= 0.0) || !(p_discharge_max_kw >= 0.0)) fail("power limits must be >= 0");
  if (!(eta_charge > 0.0 && eta_charge <= 1.0)) fail("eta_charge must be in (0, 1]");
  if (!(eta_discharge > 0.0 && eta_discharge <= 1.0)) fail("eta_discharge must be in (0, 1]");
  if (!(soc_min_frac >= 0.0 && soc_min_frac < 1.0)) fail("soc_min_frac must be in [0, 1)");
  if (!(soc_max_frac > 0.0 && soc_max_frac <= 1.0)) fail("soc_max_frac must be in (0, 1]");
  if (!(soc_min_frac < soc_max_frac)) fail("soc_min_frac must be below soc_max_frac");
  if (!(soc_init_frac >= soc_min_frac && soc_init_frac <= soc_max_frac)) {
    fail("soc_init_frac must lie within [soc_min_frac, soc_max_frac]");
  }
}

double max_charge_power(const BatterySpec& spec, BatteryState state) {
  const double headroom = std::max(0.0, spec.soc_max_kwh() - state.soc_kwh);
  return std::min(spec.p_charge_max_kw, headroom / (spec.eta_charge * kSlotHours));
}

double max_discharge_power(const BatterySpec& spec, BatteryState state) {
  const double available = std::max(0.0, state.soc_kwh - spec.soc_min_kwh());
  return std::min(spec.p_discharge_max_kw, available * spec.eta_discharge / kSlotHours);
}

BatteryState apply(const BatterySpec& spec, BatteryState state, double charge_kw,
                   double discharge_kw) {
  if (charge_kw < 0.0 || discharge_kw < 0.0) {
    throw ContractViolation("battery flows must be non-negative");
  }
  if (charge_kw > 0.0 && discharge_kw > 0.0) {
    throw ContractViolation("battery cannot charge and discharge in the same slot");
  }
  if (charge_kw > max_charge_power(spec, state) + kLimitTolerance) {
    throw ContractViolation("charge power exceeds the available limit");
  }
  if (discharge_kw > max_discharge_power(spec, state) + kLimitTolerance) {
    throw ContractViolation("discharge power exceeds the available limit");
  }
  if (charge_kw == 0.0 && discharge_kw == 0.0) return state;

  const double soc = state.soc_kwh + spec.eta_charge * charge_kw * kSlotHours -
                     discharge_kw * kSlotHours / spec.eta_discharge;
  return {std::clamp(soc, spec.soc_min_kwh(), spec.soc_max_kwh())};
}

BatterySpec parse_battery(std::string_view text) {
  const auto file = KeyValueFile::parse(text);
  BatterySpec b;
  file.read("capacity", b.capacity_kwh);
  file.read("p_charge_max", b.p_charge_max_kw);
  file.read("p_discharge_max", b.p_discharge_max_kw);
  file.read("eta_charge", b.eta_charge);
  file.read("eta_discharge", b.eta_discharge);
  file.read("soc_min_frac", b.soc_min_frac);
  file.read("soc_max_frac", b.soc_max_frac);
  file.read("soc_init_frac", b.soc_init_frac);
  file.reject_unknown();
  b.validate();
  return b;
}

BatterySpec load_battery(const std::filesystem::path& path) {
  try {
    return parse_battery(detail::read_file(path));
  } catch (const ParseError& e) {
    throw e.in_file(path.string());
  } catch (const IoError&) {
    throw;
  } catch (const Error& e) {
    throw Error(path.string() + ": " + e.what());
  }
}

std::string format_battery(const BatterySpec& b) {
  std::string out;
  auto line = [&out](const char* key, double v) {
    out += key;
    out += '=';
    out += detail::fixed(v, 6);
    out += '\n';
  };
  line("capacity", b.capacity_kwh);
  line("p_charge_max", b.p_charge_max_kw);
  line("p_discharge_max", b.p_discharge_max_kw);
  line("eta_charge", b.eta_charge);
  line("eta_discharge", b.eta_discharge);
  line("soc_min_frac", b.soc_min_frac);
  line("soc_max_frac", b.soc_max_frac);
  line("soc_init_frac", b.soc_init_frac);
  return out;
}

}  // namespace dispatchkit
