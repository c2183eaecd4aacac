#pragma once

// Batch kernels with a serial reference and an OpenMP version of each.
// The parallel versions must agree with the serial ones bit for bit.

#include <span>
#include <vector>

#include "sta/multivector.hpp"
#include "sta/phase.hpp"
#include "sta/rotor.hpp"

namespace sta::kernels {

void geometric_product_serial(std::span<const Multivector> a, std::span<const Multivector> b,
                              std::span<Multivector> out);
void geometric_product_parallel(std::span<const Multivector> a, std::span<const Multivector> b,
                                std::span<Multivector> out);

// Rate samples at the given times. A failure at any time is reported as an
// IntegrationError carrying the earliest failing time.
std::vector<RateSample> sample_rates_serial(const Trajectory& traj, std::span<const double> times);
std::vector<RateSample> sample_rates_parallel(const Trajectory& traj, std::span<const double> times);

struct Observables {
  Multivector v;
  Multivector s;
  Multivector S;
};

void observables_serial(std::span<const Rotor> rotors, std::span<Observables> out);
void observables_parallel(std::span<const Rotor> rotors, std::span<Observables> out);

int max_threads();

}  // namespace sta::kernels
