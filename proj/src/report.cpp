#include "sta/report.hpp"

#include <cstdio>
#include <sstream>

#include <json.hpp>

namespace sta {

using Json = nlohmann::ordered_json;

namespace {

constexpr const char* kColumns[] = {"t",    "delta_dot_L", "gamma_dot_L", "delta_hat_dot_L", "gamma_hat_dot_L",
                                    "beta", "v0",          "consistency_residual"};

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string fmt(const std::optional<double>& x) { return x ? fmt(*x) : std::string(); }

Json opt(const std::optional<double>& x) { return x ? Json(*x) : Json(nullptr); }

Json rotor_json(const Rotor& r) {
  const PauliCoords p = pauli_view(r.value());
  return Json{{"1", p.scalar},
              {"sigma1", p.vector[0]},
              {"sigma2", p.vector[1]},
              {"sigma3", p.vector[2]},
              {"Isigma1", p.bivector[0]},
              {"Isigma2", p.bivector[1]},
              {"Isigma3", p.bivector[2]},
              {"I", p.trivector}};
}

}  // namespace

std::string report_to_csv(const PhaseReport& report) {
  std::ostringstream out;
  for (std::size_t i = 0; i < std::size(kColumns); ++i) out << (i ? "," : "") << kColumns[i];
  out << '\n';
  for (const PhaseRow& r : report.series) {
    out << fmt(r.t) << ',' << fmt(r.delta_dot) << ',' << fmt(r.gamma_dot) << ',' << fmt(r.delta_hat_dot) << ','
        << fmt(r.gamma_hat_dot) << ',' << fmt(r.beta) << ',' << fmt(r.v0) << ',' << fmt(r.consistency_residual)
        << '\n';
  }
  const PhaseFinals& f = report.finals;
  out << "# delta_G," << fmt(f.delta_G) << '\n';
  out << "# gamma_G," << fmt(f.gamma_G) << '\n';
  out << "# delta_hat_G," << fmt(f.delta_hat_G) << '\n';
  out << "# gamma_hat_G," << fmt(f.gamma_hat_G) << '\n';
  out << "# total," << fmt(f.total) << '\n';
  out << "# steps," << report.options.steps << '\n';
  out << "# integrator,rk4\n";
  out << "# formula," << formula_name(report.options.formula) << '\n';
  out << "# time," << (report.options.proper_time ? "proper" : "observer") << '\n';
  out << "# version," << kVersion << '\n';
  return out.str();
}

std::string report_to_json(const PhaseReport& report) {
  Json series = Json::array();
  for (const PhaseRow& r : report.series) {
    series.push_back(Json{{"t", r.t},
                          {"delta_dot_L", opt(r.delta_dot)},
                          {"gamma_dot_L", opt(r.gamma_dot)},
                          {"delta_hat_dot_L", opt(r.delta_hat_dot)},
                          {"gamma_hat_dot_L", opt(r.gamma_hat_dot)},
                          {"beta", r.beta},
                          {"v0", r.v0},
                          {"consistency_residual", r.consistency_residual}});
  }
  const PhaseFinals& f = report.finals;
  Json root;
  root["scenario"] = report.scenario.empty() ? Json(nullptr) : Json::parse(report.scenario);
  root["meta"] = Json{{"steps", report.options.steps},
                      {"integrator", "rk4"},
                      {"formula", formula_name(report.options.formula)},
                      {"time", report.options.proper_time ? "proper" : "observer"},
                      {"tolerance", kIntegratorTolerance},
                      {"max_consistency_residual", report.max_consistency_residual},
                      {"version", kVersion}};
  root["series"] = std::move(series);
  root["finals"] = Json{{"delta_G", opt(f.delta_G)},
                        {"gamma_G", opt(f.gamma_G)},
                        {"delta_hat_G", opt(f.delta_hat_G)},
                        {"gamma_hat_G", opt(f.gamma_hat_G)},
                        {"total", f.total}};
  root["final_rotor"] = rotor_json(report.final_rotor);
  return root.dump(2) + "\n";
}

}  // namespace sta
