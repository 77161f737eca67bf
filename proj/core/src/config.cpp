#include "altpol/config.hpp"

#include <charconv>
#include <cmath>
#include <functional>
#include <map>
#include <sstream>

#include "altpol/scan.hpp"

namespace altpol {

ConfigError::ConfigError(std::string key, int line, const std::string& message)
    : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + key + ": " + message
                                  : key + ": " + message),
      key_(std::move(key)),
      line_(line),
      detail_(message) {}

std::vector<double> GridSpec::points() const { return make_grid(lo, hi, step); }

double ExperimentConfig::effective_delta_b_mhz() const {
  return b_field_gauss ? ZeemanConfig{ground_lande, *b_field_gauss}.shift().mhz() : delta_b_mhz;
}

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

/// Shortest text that parses back to the same double.
std::string format_double(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

double to_double(const std::string& v) {
  double out = 0.0;
  const char* end = v.data() + v.size();
  auto [ptr, ec] = std::from_chars(v.data(), end, out);
  if (ec != std::errc() || ptr != end || !std::isfinite(out))
    throw std::invalid_argument("expected a finite number, got '" + v + "'");
  return out;
}

int to_int(const std::string& v) {
  int out = 0;
  const char* end = v.data() + v.size();
  auto [ptr, ec] = std::from_chars(v.data(), end, out);
  if (ec != std::errc() || ptr != end) throw std::invalid_argument("expected an integer, got '" + v + "'");
  return out;
}

template <typename E>
E to_enum(const std::string& v, std::initializer_list<std::pair<const char*, E>> options) {
  std::string allowed;
  for (const auto& [name, value] : options) {
    if (v == name) return value;
    allowed += allowed.empty() ? name : std::string(", ") + name;
  }
  throw std::invalid_argument("expected one of {" + allowed + "}, got '" + v + "'");
}

const char* pulse_name(PulseKind k) {
  switch (k) {
    case PulseKind::sin_squared: return "sin_squared";
    case PulseKind::constant: return "constant";
    case PulseKind::tabulated: return "tabulated";
  }
  return "";
}

struct Field {
  const char* section;
  const char* key;
  std::function<void(ExperimentConfig&, const std::string&)> set;
  /// Empty result: key omitted from the serialized form.
  std::function<std::optional<std::string>(const ExperimentConfig&)> get;
};

Field number(const char* section, const char* key, double ExperimentConfig::*member) {
  return {section, key, [member](ExperimentConfig& c, const std::string& v) { c.*member = to_double(v); },
          [member](const ExperimentConfig& c) -> std::optional<std::string> { return format_double(c.*member); }};
}

Field integer(const char* section, const char* key, int ExperimentConfig::*member) {
  return {section, key, [member](ExperimentConfig& c, const std::string& v) { c.*member = to_int(v); },
          [member](const ExperimentConfig& c) -> std::optional<std::string> { return std::to_string(c.*member); }};
}

Field grid(const char* section, const char* key, GridSpec ExperimentConfig::*g, double GridSpec::*member) {
  return {section, key, [g, member](ExperimentConfig& c, const std::string& v) { (c.*g).*member = to_double(v); },
          [g, member](const ExperimentConfig& c) -> std::optional<std::string> {
            return format_double((c.*g).*member);
          }};
}

const std::vector<Field>& fields() {
  using C = ExperimentConfig;
  static const std::vector<Field> table = {
      {"model", "kind",
       [](C& c, const std::string& v) {
         c.model = to_enum<ModelKind>(v, {{"ideal", ModelKind::ideal}, {"rubidium", ModelKind::rubidium}});
       },
       [](const C& c) -> std::optional<std::string> { return to_string(c.model); }},
      integer("model", "photon_cutoff", &C::photon_cutoff),
      {"model", "initial_state",
       [](C& c, const std::string& v) {
         c.initial_state = to_enum<Ground>(v, {{"plus", Ground::plus}, {"minus", Ground::minus}});
       },
       [](const C& c) -> std::optional<std::string> { return to_string(c.initial_state); }},
      {"model", "m0_mode",
       [](C& c, const std::string& v) {
         c.m0_mode = to_enum<M0Mode>(v, {{"sink", M0Mode::sink}, {"coherent", M0Mode::coherent}});
       },
       [](const C& c) -> std::optional<std::string> {
         return c.m0_mode == M0Mode::sink ? "sink" : "coherent";
       }},

      number("physics", "g_mhz", &C::g_mhz),
      number("physics", "kappa_mhz", &C::kappa_mhz),
      number("physics", "delta_b_mhz", &C::delta_b_mhz),
      number("physics", "omega_mhz", &C::omega_mhz),
      number("physics", "gamma_mhz", &C::gamma_mhz),
      number("physics", "hyperfine_mhz", &C::hyperfine_mhz),
      number("physics", "ground_lande", &C::ground_lande),
      number("physics", "excited_lande_f0", &C::excited_lande_f0),
      number("physics", "excited_lande_f1", &C::excited_lande_f1),
      {"physics", "b_field_gauss", [](C& c, const std::string& v) { c.b_field_gauss = to_double(v); },
       [](const C& c) -> std::optional<std::string> {
         if (!c.b_field_gauss) return std::nullopt;
         return format_double(*c.b_field_gauss);
       }},

      number("detuning", "delta_ca_mhz", &C::delta_ca_mhz),
      {"detuning", "delta_cp_mhz",
       [](C& c, const std::string& v) {
         if (v == "raman")
           c.delta_cp_mhz.reset();
         else
           c.delta_cp_mhz = to_double(v);
       },
       [](const C& c) -> std::optional<std::string> {
         return c.delta_cp_mhz ? format_double(*c.delta_cp_mhz) : "raman";
       }},

      {"pulse", "shape",
       [](C& c, const std::string& v) {
         c.pulse_shape = to_enum<PulseKind>(v, {{"sin_squared", PulseKind::sin_squared},
                                                {"constant", PulseKind::constant}});
       },
       [](const C& c) -> std::optional<std::string> { return pulse_name(c.pulse_shape); }},
      number("pulse", "duration_us", &C::pulse_duration_us),

      number("numerics", "dt_us", &C::dt_us),
      number("numerics", "dt_max_us", &C::dt_max_us),
      number("numerics", "tail_us", &C::tail_us),
      integer("numerics", "store_every", &C::store_every),

      grid("scan", "cavity_min_mhz", &C::cavity_grid, &GridSpec::lo),
      grid("scan", "cavity_max_mhz", &C::cavity_grid, &GridSpec::hi),
      grid("scan", "cavity_step_mhz", &C::cavity_grid, &GridSpec::step),
      grid("scan", "pump_min_mhz", &C::pump_grid, &GridSpec::lo),
      grid("scan", "pump_max_mhz", &C::pump_grid, &GridSpec::hi),
      grid("scan", "pump_step_mhz", &C::pump_grid, &GridSpec::step),
      number("scan", "crossing_resolution_mhz", &C::crossing_resolution_mhz),
      number("scan", "crossing_tolerance", &C::crossing_tolerance),
      integer("scan", "threads", &C::threads),

      {"output", "dir", [](C& c, const std::string& v) { c.out_dir = v; },
       [](const C& c) -> std::optional<std::string> { return c.out_dir; }},
  };
  return table;
}

const Field* find_field(const std::string& key) {
  for (const auto& f : fields())
    if (key == f.key) return &f;
  return nullptr;
}

bool known_section(const std::string& s) {
  for (const auto& f : fields())
    if (s == f.section) return true;
  return false;
}

void require(bool ok, const char* key, const std::string& message) {
  if (!ok) throw ConfigError(key, 0, message);
}

void check_grid(const GridSpec& g, const char* lo_key, const char* step_key) {
  require(g.step > 0.0, step_key, "grid step must be > 0");
  require(g.hi >= g.lo, lo_key, "grid minimum exceeds maximum");
  require((g.hi - g.lo) / g.step < 1e6, step_key, "grid has too many points");
}

}  // namespace

std::vector<std::string> preset_names() { return {"ideal-paper", "rb87-paper"}; }

ExperimentConfig preset(std::string_view name) {
  ExperimentConfig c;
  if (name == "ideal-paper") return c;
  if (name == "rb87-paper") {
    c.model = ModelKind::rubidium;
    c.g_mhz = 6.7;
    c.omega_mhz = 14.7;
    c.delta_ca_mhz = 63.2;
    c.cavity_grid = {-30.0, 100.0, 1.0};
    return c;
  }
  throw ConfigError("preset", 0, "unknown preset '" + std::string(name) + "'");
}

void validate(const ExperimentConfig& c) {
  require(c.photon_cutoff >= 1, "photon_cutoff", "must be >= 1");
  require(c.photon_cutoff <= 4, "photon_cutoff", "must be <= 4");
  require(c.g_mhz > 0.0, "g_mhz", "must be > 0");
  require(c.kappa_mhz > 0.0, "kappa_mhz", "must be > 0");
  require(c.delta_b_mhz >= 0.0, "delta_b_mhz", "must be >= 0");
  require(c.omega_mhz >= 0.0, "omega_mhz", "must be >= 0");
  require(c.gamma_mhz >= 0.0, "gamma_mhz", "must be >= 0");
  require(c.hyperfine_mhz >= 0.0, "hyperfine_mhz", "must be >= 0");
  require(c.ground_lande > 0.0, "ground_lande", "must be > 0");
  require(!c.b_field_gauss || *c.b_field_gauss >= 0.0, "b_field_gauss", "must be >= 0");
  require(c.model == ModelKind::rubidium || c.m0_mode == M0Mode::sink, "m0_mode",
          "coherent m_F=0 handling needs model = rubidium");
  require(c.pulse_duration_us > 0.0, "duration_us", "must be > 0");
  require(c.dt_us > 0.0, "dt_us", "must be > 0");
  require(c.dt_max_us > 0.0, "dt_max_us", "must be > 0");
  require(c.dt_us <= c.dt_max_us, "dt_us", "exceeds dt_max_us");
  require(c.store_every >= 1, "store_every", "must be >= 1");
  check_grid(c.cavity_grid, "cavity_min_mhz", "cavity_step_mhz");
  check_grid(c.pump_grid, "pump_min_mhz", "pump_step_mhz");
  require(c.crossing_resolution_mhz > 0.0, "crossing_resolution_mhz", "must be > 0");
  require(c.crossing_tolerance > 0.0, "crossing_tolerance", "must be > 0");
  require(c.threads >= 0, "threads", "must be >= 0");
  require(!c.out_dir.empty(), "dir", "must not be empty");
}

ExperimentConfig parse_config(std::string_view text, const ExperimentConfig& base) {
  ExperimentConfig c = base;
  std::map<std::string, int> seen;
  std::string section;
  std::istringstream in{std::string(text)};
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto comment = raw.find_first_of("#;");
    const std::string line = trim(std::string_view(raw).substr(0, comment));
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError("[section]", line_no, "malformed section header");
      section = trim(std::string_view(line).substr(1, line.size() - 2));
      if (!known_section(section)) throw ConfigError(section, line_no, "unknown section");
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError(line, line_no, "expected 'key = value'");
    const std::string key = trim(std::string_view(line).substr(0, eq));
    const std::string value = trim(std::string_view(line).substr(eq + 1));
    const Field* f = find_field(key);
    if (!f) throw ConfigError(key, line_no, "unknown key");
    if (!section.empty() && section != f->section)
      throw ConfigError(key, line_no, "belongs to section [" + std::string(f->section) + "], not [" + section + "]");
    if (value.empty()) throw ConfigError(key, line_no, "missing value");
    if (!seen.emplace(key, line_no).second) throw ConfigError(key, line_no, "repeated key");
    try {
      f->set(c, value);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(key, line_no, e.what());
    }
  }
  try {
    validate(c);
  } catch (const ConfigError& e) {
    const auto it = seen.find(e.key());
    if (it == seen.end()) throw;
    throw ConfigError(e.key(), it->second, e.detail());
  }
  return c;
}

std::string serialize(const ExperimentConfig& c) {
  std::string out;
  std::string section;
  for (const auto& f : fields()) {
    if (section != f.section) {
      out += (section.empty() ? "[" : "\n[") + std::string(f.section) + "]\n";
      section = f.section;
    }
    if (auto v = f.get(c)) out += std::string(f.key) + " = " + *v + "\n";
  }
  return out;
}

SimulationSetup to_setup(const ExperimentConfig& c) {
  validate(c);
  SimulationSetup s;
  ModelSpec& m = s.model;
  m.kind = c.model;
  m.photon_cutoff = c.photon_cutoff;
  const Frequency kappa = Frequency::from_mhz(c.kappa_mhz);
  const Frequency delta_b = Frequency::from_mhz(c.effective_delta_b_mhz());

  m.ideal.g = Frequency::from_mhz(c.g_mhz);
  m.ideal.kappa = kappa;
  m.ideal.delta_b = delta_b;
  m.ideal.omega_peak = Frequency::from_mhz(c.omega_mhz);
  m.ideal.initial_state = c.initial_state;

  m.rubidium.g0 = Frequency::from_mhz(c.g_mhz);
  m.rubidium.omega0 = Frequency::from_mhz(c.omega_mhz);
  m.rubidium.kappa = kappa;
  m.rubidium.delta_b = delta_b;
  m.rubidium.gamma_total = Frequency::from_mhz(c.gamma_mhz);
  m.rubidium.hyperfine_f0_f1 = Frequency::from_mhz(c.hyperfine_mhz);
  m.rubidium.ground_lande = c.ground_lande;
  m.rubidium.excited_lande_f0 = c.excited_lande_f0;
  m.rubidium.excited_lande_f1 = c.excited_lande_f1;
  m.rubidium.m0_mode = c.m0_mode;
  m.rubidium.initial_state = c.initial_state;

  const Frequency delta_cp =
      c.delta_cp_mhz ? Frequency::from_mhz(*c.delta_cp_mhz) : raman_delta_cp(m, c.initial_state);
  m = m.with_detunings(Frequency::from_mhz(c.delta_ca_mhz), delta_cp);

  s.pulse = c.pulse_shape == PulseKind::constant ? PulseShape::constant(c.pulse_duration_us)
                                                 : PulseShape::sin_squared(c.pulse_duration_us);
  s.numerics = {c.dt_us, c.dt_max_us, c.tail_us, c.store_every};
  return s;
}

}  // namespace altpol
