#include "sta/kernels.hpp"

#include <omp.h>

#include <string>

#include "sta/errors.hpp"
#include "sta/spinor.hpp"

namespace sta::kernels {

namespace {

void check_sizes(std::size_t a, std::size_t b, std::size_t out) {
  if (a != b || a != out) throw DomainError("kernels: batch sizes differ");
}

Observables observe(const Rotor& r) { return {velocity(r), spin_vector(r), spin_bivector(r)}; }

[[noreturn]] void rethrow_at(double t, const std::string& what) {
  throw IntegrationError("t = " + std::to_string(t) + ": " + what, t);
}

}  // namespace

void geometric_product_serial(std::span<const Multivector> a, std::span<const Multivector> b,
                              std::span<Multivector> out) {
  check_sizes(a.size(), b.size(), out.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] * b[i];
}

void geometric_product_parallel(std::span<const Multivector> a, std::span<const Multivector> b,
                                std::span<Multivector> out) {
  check_sizes(a.size(), b.size(), out.size());
  const auto n = static_cast<std::ptrdiff_t>(a.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) out[i] = a[i] * b[i];
}

std::vector<RateSample> sample_rates_serial(const Trajectory& traj, std::span<const double> times) {
  std::vector<RateSample> out(times.size());
  for (std::size_t i = 0; i < times.size(); ++i) {
    try {
      out[i] = rate_sample(traj, times[i]);
    } catch (const std::exception& e) {
      rethrow_at(times[i], e.what());
    }
  }
  return out;
}

std::vector<RateSample> sample_rates_parallel(const Trajectory& traj, std::span<const double> times) {
  std::vector<RateSample> out(times.size());
  std::vector<std::string> errors(times.size());
  std::vector<char> failed(times.size(), 0);
  const auto n = static_cast<std::ptrdiff_t>(times.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    try {
      out[i] = rate_sample(traj, times[i]);
    } catch (const std::exception& e) {
      failed[i] = 1;
      errors[i] = e.what();
    }
  }
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (failed[i]) rethrow_at(times[i], errors[i]);
  }
  return out;
}

void observables_serial(std::span<const Rotor> rotors, std::span<Observables> out) {
  check_sizes(rotors.size(), rotors.size(), out.size());
  for (std::size_t i = 0; i < rotors.size(); ++i) out[i] = observe(rotors[i]);
}

void observables_parallel(std::span<const Rotor> rotors, std::span<Observables> out) {
  check_sizes(rotors.size(), rotors.size(), out.size());
  const auto n = static_cast<std::ptrdiff_t>(rotors.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) out[i] = observe(rotors[i]);
}

int max_threads() { return omp_get_max_threads(); }

}  // namespace sta::kernels
