#include "czlab/config.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <sstream>
#include <variant>
#include <vector>

#include "czlab/errors.hpp"

namespace czlab {

std::string to_string(FPattern pattern) {
  switch (pattern) {
    case FPattern::Zero: return "zero";
    case FPattern::Smooth: return "smooth";
    case FPattern::SparseSpikes: return "sparse-spikes";
  }
  return "?";
}

FPattern parse_f_pattern(const std::string& name) {
  if (name == "zero") return FPattern::Zero;
  if (name == "smooth") return FPattern::Smooth;
  if (name == "sparse-spikes") return FPattern::SparseSpikes;
  throw ValidationError("unknown f_pattern '" + name + "'");
}

namespace {

using Slot = std::variant<double*, int*, std::uint64_t*, std::string*, FluxFamily*, FPattern*>;

std::vector<std::pair<const char*, Slot>> slots(ExperimentConfig& c) {
  return {
      {"R", &c.macro_radius},
      {"spacing", &c.spacing},
      {"Lambda", &c.lambda_ellipticity},
      {"family", &c.family},
      {"perturbation_weight", &c.perturbation_weight},
      {"p", &c.p},
      {"q", &c.q},
      {"m_norm", &c.m_norm},
      {"s", &c.s},
      {"margin", &c.margin},
      {"f_pattern", &c.f_pattern},
      {"spike_amplitude", &c.spike_amplitude},
      {"spike_density", &c.spike_density},
      {"smooth_amplitude", &c.smooth_amplitude},
      {"smooth_width", &c.smooth_width},
      {"ensemble_size", &c.ensemble_size},
      {"base_seed", &c.base_seed},
      {"calibration_seed", &c.calibration_seed},
      {"calibration_size", &c.calibration_size},
      {"solver_tolerance", &c.solver_tolerance},
      {"C_lip", &c.C_lip},
      {"C_Y", &c.C_Y},
      {"C_gate", &c.C_gate},
      {"C_climb", &c.C_climb},
      {"C_0", &c.C_0},
      {"c_0", &c.c_0},
      {"C_tail", &c.C_tail},
      {"C_good", &c.C_good},
      {"sigma", &c.sigma},
      {"c_rhs", &c.c_rhs},
      {"exit_epsilon", &c.exit_epsilon},
      {"exit_cap_fraction", &c.exit_cap_fraction},
      {"candidate_stride", &c.candidate_stride},
      {"probe_spacing", &c.probe_spacing},
      {"probe_radius", &c.probe_radius},
      {"probe_stride", &c.probe_stride},
      {"probe_tolerance", &c.probe_tolerance},
      {"max_censored_fraction", &c.max_censored_fraction},
      {"ladder_min", &c.ladder_min},
      {"ladder_max", &c.ladder_max},
      {"fit_lo", &c.fit_lo},
      {"fit_hi", &c.fit_hi},
      {"output_dir", &c.output_dir},
  };
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

template <class T>
T parse_number(const std::string& key, const std::string& text) {
  T value{};
  const char* first = text.data();
  const char* last = first + text.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) {
    throw ValidationError("config key '" + key + "': cannot parse '" + text + "'");
  }
  return value;
}

std::string format_real(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void require(bool ok, const std::string& key, const std::string& what) {
  if (!ok) throw ValidationError("config key '" + key + "': " + what);
}

}  // namespace

void set_config_value(ExperimentConfig& config, const std::string& key, const std::string& value) {
  for (auto& [name, slot] : slots(config)) {
    if (key != name) continue;
    std::visit(
        [&](auto* target) {
          using T = std::remove_pointer_t<decltype(target)>;
          if constexpr (std::is_same_v<T, std::string>) {
            *target = value;
          } else if constexpr (std::is_same_v<T, FluxFamily>) {
            *target = parse_flux_family(value);
          } else if constexpr (std::is_same_v<T, FPattern>) {
            *target = parse_f_pattern(value);
          } else {
            *target = parse_number<T>(key, value);
          }
        },
        slot);
    return;
  }
  throw ValidationError("unknown config key '" + key + "'");
}

ExperimentConfig parse_config(std::istream& in) {
  ExperimentConfig config;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ValidationError("config line " + std::to_string(line_no) + ": expected key = value");
    }
    set_config_value(config, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  config.validate();
  return config;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config '" + path + "'");
  return parse_config(in);
}

std::string canonical_text(const ExperimentConfig& config) {
  ExperimentConfig copy = config;
  std::ostringstream out;
  for (auto& [name, slot] : slots(copy)) {
    out << name << " = ";
    std::visit(
        [&](auto* target) {
          using T = std::remove_pointer_t<decltype(target)>;
          if constexpr (std::is_same_v<T, double>) {
            out << format_real(*target);
          } else if constexpr (std::is_same_v<T, FluxFamily> || std::is_same_v<T, FPattern>) {
            out << to_string(*target);
          } else {
            out << *target;
          }
        },
        slot);
    out << '\n';
  }
  return out.str();
}

std::uint64_t fnv1a64(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string config_hash(const ExperimentConfig& config) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(fnv1a64(canonical_text(config))));
  return buf;
}

void ExperimentConfig::validate() const {
  require(macro_radius >= 10.0, "R", "must be >= 10");
  try {
    Grid grid(macro_radius, spacing);
    Grid probe_grid(macro_radius, probe_spacing);
  } catch (const ValidationError& e) {
    throw ValidationError(std::string("config keys 'R'/'spacing'/'probe_spacing': ") + e.what());
  }
  try {
    flux().validate();
    exponents();
  } catch (const ValidationError& e) {
    throw ValidationError(std::string("config: ") + e.what());
  }
  require(spike_amplitude >= 0.0, "spike_amplitude", "must be >= 0");
  require(spike_density > 0.0 && spike_density <= 1.0, "spike_density", "must lie in (0, 1]");
  require(smooth_amplitude >= 0.0, "smooth_amplitude", "must be >= 0");
  require(smooth_width > 0.0, "smooth_width", "must be positive");
  require(ensemble_size >= 1, "ensemble_size", "must be >= 1");
  require(calibration_size >= 0, "calibration_size", "must be >= 0");
  require(solver_tolerance > 0.0, "solver_tolerance", "must be positive");
  require(C_lip > 0.0, "C_lip", "must be positive");
  require(C_Y > 0.0, "C_Y", "must be positive");
  require(C_gate > 1.0, "C_gate", "must exceed 1");
  require(C_climb > 0.0, "C_climb", "must be positive");
  require(C_0 > 0.0, "C_0", "must be positive");
  require(c_0 > 0.0 && c_0 <= 0.5, "c_0", "must lie in (0, 1/2]");
  require(C_tail > 0.0, "C_tail", "must be positive");
  require(C_good >= 0.0, "C_good", "must be >= 0 (0 means not calibrated)");
  require(sigma > 0.0 && sigma <= 1.0, "sigma", "must lie in (0, 1]");
  require(c_rhs > 0.0, "c_rhs", "must be positive");
  require(exit_epsilon > 0.0, "exit_epsilon", "must be positive");
  require(exit_cap_fraction > 0.0 && exit_cap_fraction <= 0.125, "exit_cap_fraction",
          "must lie in (0, 1/8]");
  require(candidate_stride >= 1, "candidate_stride", "must be >= 1");
  require(probe_radius >= 2.0 && probe_radius <= macro_radius / 2.0, "probe_radius",
          "must lie in [2, R/2]");
  require(probe_stride >= 1, "probe_stride", "must be >= 1");
  require(probe_tolerance > 0.0, "probe_tolerance", "must be positive");
  require(max_censored_fraction >= 0.0 && max_censored_fraction < 1.0, "max_censored_fraction",
          "must lie in [0, 1)");
  require(ladder_min >= 0 && ladder_max > ladder_min, "ladder_min/ladder_max",
          "need 0 <= ladder_min < ladder_max");
  require(fit_lo > 0.0 && fit_hi > fit_lo, "fit_lo/fit_hi", "need 0 < fit_lo < fit_hi");
  require(!output_dir.empty(), "output_dir", "must not be empty");
}

FluxParams ExperimentConfig::flux() const {
  FluxParams f;
  f.lambda_ellipticity = lambda_ellipticity;
  f.family = family;
  f.perturbation_weight = perturbation_weight;
  return f;
}

ExponentSet ExperimentConfig::exponents() const { return derive_exponents(p, q, m_norm, s, margin); }

ProbeConfig ExperimentConfig::probes() const {
  ProbeConfig c;
  c.spacing = probe_spacing;
  c.probe_radius = probe_radius;
  c.stride = probe_stride;
  c.C_lip = C_lip;
  c.tolerance = probe_tolerance;
  c.max_censored_fraction = max_censored_fraction;
  return c;
}

GoodLambdaParams ExperimentConfig::good_lambda(double t) const {
  GoodLambdaParams g;
  g.sigma = sigma;
  g.C_gate = C_gate;
  g.omega = gate_omega(sigma, C_gate, exponents());
  g.t = t;
  g.C_climb = C_climb;
  g.c_rhs = c_rhs;
  return g;
}

GoodLambdaOptions ExperimentConfig::good_lambda_options() const {
  GoodLambdaOptions o;
  o.exit.epsilon = exit_epsilon;
  o.exit.radius_cap = exit_cap_fraction * macro_radius;
  o.candidate_stride = candidate_stride;
  return o;
}

ScheduleConstants ExperimentConfig::schedule() const {
  ScheduleConstants s;
  s.c_0 = c_0;
  s.C_0 = C_0;
  s.C_gate = C_gate;
  s.C_tail = C_tail;
  return s;
}

}  // namespace czlab
