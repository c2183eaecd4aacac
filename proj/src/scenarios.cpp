#include "sta/scenarios.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

#include <json.hpp>

#include "sta/spinor.hpp"

namespace sta {

using namespace basis;
using Json = nlohmann::ordered_json;

double Series::value(double t) const {
  double acc = 0.0;
  for (auto it = poly.rbegin(); it != poly.rend(); ++it) acc = acc * t + *it;
  for (const auto& [a, f] : sin) acc += a * std::sin(f * t);
  for (const auto& [a, f] : cos) acc += a * std::cos(f * t);
  return acc;
}

double Series::rate(double t) const {
  double acc = 0.0;
  for (std::size_t k = poly.size(); k-- > 1;) acc = acc * t + static_cast<double>(k) * poly[k];
  for (const auto& [a, f] : sin) acc += a * f * std::cos(f * t);
  for (const auto& [a, f] : cos) acc -= a * f * std::sin(f * t);
  return acc;
}

EulerTrajectory::EulerTrajectory(EulerSeries series, double duration)
    : series_(std::move(series)), duration_(duration) {}

std::optional<FrameSample> EulerTrajectory::frame(double t) const {
  const EulerSeries& s = series_;
  FrameSample f;
  f.rho = s.rho.value(t);
  f.rho_dot = s.rho.rate(t);
  f.beta = s.beta.value(t);
  f.beta_dot = s.beta.rate(t);
  f.boost = {s.b1.value(t), s.b2.value(t), s.b3.value(t)};
  f.boost_rate = {s.b1.rate(t), s.b2.rate(t), s.b3.rate(t)};
  f.angles = {s.phi.value(t), s.theta.value(t), s.chi.value(t)};
  f.angle_rates = {s.phi.rate(t), s.theta.rate(t), s.chi.rate(t)};
  return f;
}

Multivector EulerTrajectory::psi(double t) const { return spinor_from_frame(*frame(t)).psi; }

std::optional<Multivector> EulerTrajectory::psi_dot(double t) const {
  return spinor_from_frame(*frame(t)).psi_dot;
}

namespace {

template <class... F>
struct Overload : F... {
  using F::operator()...;
};
template <class... F>
Overload(F...) -> Overload<F...>;

double plane_wave_v0(const BoostParams& b) { return std::cosh(std::sqrt(b.b1 * b.b1 + b.b2 * b.b2 + b.b3 * b.b3)); }

double loop_omega(double omega, double duration) {
  return omega != 0.0 ? omega : 2.0 * std::numbers::pi / duration;
}

void require(bool ok, const std::string& what, const std::string& field) {
  if (!ok) throw ScenarioError(what, field);
}

void require_finite(double x, const std::string& field) {
  require(std::isfinite(x), "value must be finite", field);
}

void require_theta(double theta0) {
  require_finite(theta0, "/params/theta0");
  require(theta0 >= 0.0 && theta0 <= std::numbers::pi, "theta0 must lie in [0, pi]", "/params/theta0");
}

void validate_series(const Series& s, const std::string& field) {
  for (double c : s.poly) require_finite(c, field);
  for (const auto& [a, f] : s.sin) {
    require_finite(a, field);
    require_finite(f, field);
  }
  for (const auto& [a, f] : s.cos) {
    require_finite(a, field);
    require_finite(f, field);
  }
}

}  // namespace

std::string kind_name(const ScenarioParams& p) {
  return std::visit(Overload{
                        [](const RestPlaneWave&) { return std::string("rest_plane_wave"); },
                        [](const BoostedPlaneWave&) { return std::string("boosted_plane_wave"); },
                        [](const PrecessionLoop&) { return std::string("precession_loop"); },
                        [](const BoostedPrecession&) { return std::string("boosted_precession"); },
                        [](const BetaRamp&) { return std::string("beta_ramp"); },
                        [](const CustomEuler&) { return std::string("custom_euler"); },
                    },
                    p);
}

void validate(const ScenarioSpec& spec) {
  require(std::isfinite(spec.duration) && spec.duration > 0.0, "duration must be positive", "/duration");
  require(spec.steps >= 2, "steps must be at least 2", "/steps");
  std::visit(Overload{
                 [](const RestPlaneWave& p) {
                   require(std::isfinite(p.mass) && p.mass > 0.0, "mass must be positive", "/params/mass");
                   require_finite(p.charge, "/params/charge");
                 },
                 [](const BoostedPlaneWave& p) {
                   require(std::isfinite(p.mass) && p.mass > 0.0, "mass must be positive", "/params/mass");
                   require_finite(p.charge, "/params/charge");
                   require_finite(p.boost.b1, "/params/boost/0");
                   require_finite(p.boost.b2, "/params/boost/1");
                   require_finite(p.boost.b3, "/params/boost/2");
                 },
                 [](const PrecessionLoop& p) {
                   require_theta(p.theta0);
                   require_finite(p.omega, "/params/omega");
                   require_finite(p.chi_rate, "/params/chi_rate");
                 },
                 [](const BoostedPrecession& p) {
                   require_theta(p.theta0);
                   require(std::isfinite(p.rapidity) && std::abs(p.rapidity) <= 5.0,
                           "rapidity must satisfy |b| <= 5", "/params/rapidity");
                   require_finite(p.omega, "/params/omega");
                   require_finite(p.chi_rate, "/params/chi_rate");
                 },
                 [](const BetaRamp& p) {
                   require_theta(p.theta0);
                   require_finite(p.beta_rate, "/params/beta_rate");
                   require(std::isfinite(p.rapidity) && std::abs(p.rapidity) <= 5.0,
                           "rapidity must satisfy |b| <= 5", "/params/rapidity");
                   require_finite(p.omega, "/params/omega");
                 },
                 [](const CustomEuler& p) {
                   const EulerSeries& s = p.series;
                   validate_series(s.rho, "/params/rho");
                   validate_series(s.beta, "/params/beta");
                   validate_series(s.phi, "/params/phi");
                   validate_series(s.theta, "/params/theta");
                   validate_series(s.chi, "/params/chi");
                   validate_series(s.b1, "/params/b1");
                   validate_series(s.b2, "/params/b2");
                   validate_series(s.b3, "/params/b3");
                 },
             },
             spec.params);
}

EulerSeries euler_series(const ScenarioSpec& spec) {
  const double T = spec.duration;
  return std::visit(
      Overload{
          [](const RestPlaneWave& p) {
            EulerSeries s;
            if (p.particle == Particle::electron) {
              s.chi = Series::linear(0.0, 2.0 * p.mass);
            } else {
              s.beta = Series::constant(std::numbers::pi);
              s.chi = Series::linear(0.0, -2.0 * p.mass);
            }
            return s;
          },
          [](const BoostedPlaneWave& p) {
            // Along the streamline x = v tau the phase argument is tau = t / v0.
            EulerSeries s;
            const double rate = 2.0 * p.mass / plane_wave_v0(p.boost);
            if (p.particle == Particle::electron) {
              s.chi = Series::linear(0.0, rate);
            } else {
              s.beta = Series::constant(std::numbers::pi);
              s.chi = Series::linear(0.0, -rate);
            }
            s.b1 = Series::constant(p.boost.b1);
            s.b2 = Series::constant(p.boost.b2);
            s.b3 = Series::constant(p.boost.b3);
            return s;
          },
          [T](const PrecessionLoop& p) {
            EulerSeries s;
            const double w = loop_omega(p.omega, T);
            s.phi = p.traversal == Traversal::linear ? Series::linear(0.0, w) : Series{{0.0, 0.0, w / T}, {}, {}};
            s.theta = Series::constant(p.theta0);
            s.chi = Series::linear(0.0, p.chi_rate);
            return s;
          },
          [T](const BoostedPrecession& p) {
            EulerSeries s;
            s.phi = Series::linear(0.0, loop_omega(p.omega, T));
            s.theta = Series::constant(p.theta0);
            s.chi = Series::linear(0.0, p.chi_rate);
            s.b3 = Series::constant(p.rapidity);
            return s;
          },
          [](const BetaRamp& p) {
            EulerSeries s;
            s.beta = Series::linear(0.0, p.beta_rate);
            s.phi = Series::linear(0.0, p.omega);
            s.theta = Series::constant(p.theta0);
            s.b3 = Series::constant(p.rapidity);
            return s;
          },
          [](const CustomEuler& p) { return p.series; },
      },
      spec.params);
}

std::unique_ptr<EulerTrajectory> make_trajectory(const ScenarioSpec& spec) {
  validate(spec);
  return std::make_unique<EulerTrajectory>(euler_series(spec), spec.duration);
}

// ---------------------------------------------------------------- JSON

namespace {

int line_of(const std::string& text, std::size_t byte) {
  byte = std::min(byte, text.size());
  int line = 1;
  for (std::size_t i = 0; i < byte; ++i) {
    if (text[i] == '\n') ++line;
  }
  return line;
}

void reject_unknown(const Json& obj, const std::set<std::string>& allowed, const std::string& path) {
  for (const auto& [key, _] : obj.items()) {
    if (!allowed.count(key)) throw ScenarioError("unknown field '" + key + "'", path + "/" + key);
  }
}

const Json* find(const Json& obj, const std::string& key) {
  auto it = obj.find(key);
  return it == obj.end() ? nullptr : &*it;
}

double number(const Json& obj, const std::string& key, const std::string& path, std::optional<double> fallback) {
  const Json* v = find(obj, key);
  if (!v) {
    if (fallback) return *fallback;
    throw ScenarioError("missing required field '" + key + "'", path + "/" + key);
  }
  if (!v->is_number()) throw ScenarioError("expected a number", path + "/" + key);
  return v->get<double>();
}

std::string text_field(const Json& obj, const std::string& key, const std::string& path,
                       const std::set<std::string>& choices, const std::string& fallback) {
  const Json* v = find(obj, key);
  if (!v) return fallback;
  if (!v->is_string()) throw ScenarioError("expected a string", path + "/" + key);
  const auto s = v->get<std::string>();
  if (!choices.count(s)) throw ScenarioError("unsupported value '" + s + "'", path + "/" + key);
  return s;
}

Particle particle_field(const Json& obj, const std::string& path) {
  return text_field(obj, "particle", path, {"electron", "positron"}, "electron") == "electron"
             ? Particle::electron
             : Particle::positron;
}

std::vector<std::array<double, 2>> trig_terms(const Json& v, const std::string& path) {
  if (!v.is_array()) throw ScenarioError("expected an array of [amplitude, frequency] pairs", path);
  std::vector<std::array<double, 2>> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const Json& pair = v[i];
    const std::string p = path + "/" + std::to_string(i);
    if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number() || !pair[1].is_number()) {
      throw ScenarioError("expected [amplitude, frequency]", p);
    }
    out.push_back({pair[0].get<double>(), pair[1].get<double>()});
  }
  return out;
}

Series series_field(const Json& obj, const std::string& key, const std::string& path, const Series& fallback) {
  const Json* v = find(obj, key);
  const std::string p = path + "/" + key;
  if (!v) return fallback;
  if (v->is_number()) return Series::constant(v->get<double>());
  if (!v->is_object()) throw ScenarioError("expected a number or a series object", p);
  reject_unknown(*v, {"poly", "sin", "cos"}, p);
  Series s;
  if (const Json* poly = find(*v, "poly")) {
    if (!poly->is_array()) throw ScenarioError("expected an array of coefficients", p + "/poly");
    for (std::size_t i = 0; i < poly->size(); ++i) {
      if (!(*poly)[i].is_number()) throw ScenarioError("expected a number", p + "/poly/" + std::to_string(i));
      s.poly.push_back((*poly)[i].get<double>());
    }
  }
  if (const Json* sin = find(*v, "sin")) s.sin = trig_terms(*sin, p + "/sin");
  if (const Json* cos = find(*v, "cos")) s.cos = trig_terms(*cos, p + "/cos");
  return s;
}

BoostParams boost_field(const Json& obj, const std::string& path) {
  const Json* v = find(obj, "boost");
  if (!v) return {};
  const std::string p = path + "/boost";
  if (!v->is_array() || v->size() != 3) throw ScenarioError("expected [b1, b2, b3]", p);
  for (std::size_t i = 0; i < 3; ++i) {
    if (!(*v)[i].is_number()) throw ScenarioError("expected a number", p + "/" + std::to_string(i));
  }
  return {(*v)[0].get<double>(), (*v)[1].get<double>(), (*v)[2].get<double>()};
}

ScenarioParams parse_params(const std::string& kind, const Json& params) {
  const std::string path = "/params";
  if (kind == "rest_plane_wave") {
    reject_unknown(params, {"mass", "particle", "charge"}, path);
    return RestPlaneWave{number(params, "mass", path, std::nullopt), particle_field(params, path),
                         number(params, "charge", path, 0.0)};
  }
  if (kind == "boosted_plane_wave") {
    reject_unknown(params, {"mass", "particle", "boost", "charge"}, path);
    return BoostedPlaneWave{number(params, "mass", path, std::nullopt), particle_field(params, path),
                            boost_field(params, path), number(params, "charge", path, 0.0)};
  }
  if (kind == "precession_loop") {
    reject_unknown(params, {"theta0", "omega", "traversal", "chi_rate"}, path);
    PrecessionLoop p;
    p.theta0 = number(params, "theta0", path, std::nullopt);
    p.omega = number(params, "omega", path, 0.0);
    p.traversal = text_field(params, "traversal", path, {"linear", "quadratic"}, "linear") == "linear"
                      ? Traversal::linear
                      : Traversal::quadratic;
    p.chi_rate = number(params, "chi_rate", path, 0.0);
    return p;
  }
  if (kind == "boosted_precession") {
    reject_unknown(params, {"rapidity", "theta0", "omega", "chi_rate"}, path);
    return BoostedPrecession{number(params, "rapidity", path, std::nullopt),
                             number(params, "theta0", path, std::nullopt), number(params, "omega", path, 0.0),
                             number(params, "chi_rate", path, 0.0)};
  }
  if (kind == "beta_ramp") {
    reject_unknown(params, {"beta_rate", "rapidity", "theta0", "omega"}, path);
    const BetaRamp d;
    return BetaRamp{number(params, "beta_rate", path, std::nullopt), number(params, "rapidity", path, d.rapidity),
                    number(params, "theta0", path, d.theta0), number(params, "omega", path, d.omega)};
  }
  if (kind == "custom_euler") {
    reject_unknown(params, {"rho", "beta", "phi", "theta", "chi", "b1", "b2", "b3"}, path);
    const EulerSeries d;
    CustomEuler c;
    c.series.rho = series_field(params, "rho", path, d.rho);
    c.series.beta = series_field(params, "beta", path, d.beta);
    c.series.phi = series_field(params, "phi", path, d.phi);
    c.series.theta = series_field(params, "theta", path, d.theta);
    c.series.chi = series_field(params, "chi", path, d.chi);
    c.series.b1 = series_field(params, "b1", path, d.b1);
    c.series.b2 = series_field(params, "b2", path, d.b2);
    c.series.b3 = series_field(params, "b3", path, d.b3);
    return c;
  }
  throw ScenarioError("unknown scenario kind '" + kind + "'", "/kind");
}

Json series_json(const Series& s) {
  if (s.sin.empty() && s.cos.empty() && s.poly.size() <= 1) return s.poly.empty() ? 0.0 : s.poly[0];
  Json j = Json::object();
  if (!s.poly.empty()) j["poly"] = s.poly;
  if (!s.sin.empty()) j["sin"] = s.sin;
  if (!s.cos.empty()) j["cos"] = s.cos;
  return j;
}

const char* particle_name(Particle p) { return p == Particle::electron ? "electron" : "positron"; }

}  // namespace

constexpr long long kMaxSteps = 100000000;

ScenarioSpec parse_scenario(const std::string& text) {
  Json root;
  try {
    root = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ScenarioError(std::string("malformed JSON: ") + e.what(), "", line_of(text, e.byte));
  }
  if (!root.is_object()) throw ScenarioError("scenario must be a JSON object", "");
  reject_unknown(root, {"kind", "params", "duration", "steps"}, "");

  const Json* kind = find(root, "kind");
  if (!kind) throw ScenarioError("missing required field 'kind'", "/kind");
  if (!kind->is_string()) throw ScenarioError("expected a string", "/kind");

  Json params = Json::object();
  if (const Json* p = find(root, "params")) {
    if (!p->is_object()) throw ScenarioError("expected an object", "/params");
    params = *p;
  }

  ScenarioSpec spec;
  spec.params = parse_params(kind->get<std::string>(), params);
  spec.duration = number(root, "duration", "", std::nullopt);
  if (const Json* steps = find(root, "steps")) {
    if (!steps->is_number_integer()) throw ScenarioError("expected an integer", "/steps");
    const long long n = steps->get<long long>();
    if (n < 2 || n > kMaxSteps) throw ScenarioError("steps must be in [2, 100000000]", "/steps");
    spec.steps = static_cast<int>(n);
  }
  validate(spec);
  return spec;
}

ScenarioSpec load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ScenarioError("cannot open scenario file " + path, "");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str());
}

std::string scenario_to_json(const ScenarioSpec& spec) {
  Json params = std::visit(
      Overload{
          [](const RestPlaneWave& p) {
            return Json{{"mass", p.mass}, {"particle", particle_name(p.particle)}, {"charge", p.charge}};
          },
          [](const BoostedPlaneWave& p) {
            return Json{{"mass", p.mass},
                        {"particle", particle_name(p.particle)},
                        {"boost", {p.boost.b1, p.boost.b2, p.boost.b3}},
                        {"charge", p.charge}};
          },
          [](const PrecessionLoop& p) {
            return Json{{"theta0", p.theta0},
                        {"omega", p.omega},
                        {"traversal", p.traversal == Traversal::linear ? "linear" : "quadratic"},
                        {"chi_rate", p.chi_rate}};
          },
          [](const BoostedPrecession& p) {
            return Json{{"rapidity", p.rapidity}, {"theta0", p.theta0}, {"omega", p.omega}, {"chi_rate", p.chi_rate}};
          },
          [](const BetaRamp& p) {
            return Json{{"beta_rate", p.beta_rate}, {"rapidity", p.rapidity}, {"theta0", p.theta0}, {"omega", p.omega}};
          },
          [](const CustomEuler& p) {
            const EulerSeries& s = p.series;
            return Json{{"rho", series_json(s.rho)}, {"beta", series_json(s.beta)}, {"phi", series_json(s.phi)},
                        {"theta", series_json(s.theta)}, {"chi", series_json(s.chi)}, {"b1", series_json(s.b1)},
                        {"b2", series_json(s.b2)}, {"b3", series_json(s.b3)}};
          },
      },
      spec.params);
  Json root{{"kind", kind_name(spec.params)}, {"params", params}, {"duration", spec.duration}, {"steps", spec.steps}};
  return root.dump();
}

// ---------------------------------------------------------------- plane waves

PlaneWaveField::PlaneWaveField(double mass, Particle particle, const BoostParams& boost)
    : PlaneWaveField(mass, particle, boost, mass) {}

PlaneWaveField::PlaneWaveField(double mass, Particle particle, const BoostParams& boost, double frequency)
    : mass_(mass), frequency_(frequency), particle_(particle), boost_(boost_rotor(boost).value()) {
  const Multivector v = boost_ * g0 * reversion(boost_);
  for (int mu = 0; mu < 4; ++mu) v_lower_[mu] = metric(mu) * v[1 << mu];
}

double PlaneWaveField::proper_time(const SpacetimePoint& x) const {
  double tau = 0.0;
  for (int mu = 0; mu < 4; ++mu) tau += v_lower_[mu] * x[mu];
  return tau;
}

Multivector PlaneWaveField::base(double tau) const {
  const double c = std::cos(frequency_ * tau);
  const double s = std::sin(frequency_ * tau);
  if (particle_ == Particle::electron) return c * one - s * Isigma3;
  return I * (c * one + s * Isigma3);
}

Multivector PlaneWaveField::value(const SpacetimePoint& x) const { return boost_ * base(proper_time(x)); }

Multivector PlaneWaveField::partial(int mu, const SpacetimePoint& x) const {
  const double w = frequency_;
  const double tau = proper_time(x);
  const double c = std::cos(w * tau);
  const double s = std::sin(w * tau);
  const Multivector d = particle_ == Particle::electron ? w * (-s * one - c * Isigma3) : w * (I * (-s * one + c * Isigma3));
  return v_lower_[mu] * (boost_ * d);
}

}  // namespace sta
